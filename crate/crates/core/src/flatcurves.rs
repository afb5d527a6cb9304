//! Polyline curves on the plane, the torus and the Klein bottle, and their
//! lifts to the unit tangent bundle.
//!
//! Torus and Klein bottle curves are given in the universal cover, tiled by
//! unit squares. The deck group of the torus is generated by the
//! translations `(x, y) -> (x + 1, y)` (the class `a1`) and
//! `(x, y) -> (x, y + 1)` (the class `b1`). For the Klein bottle the deck
//! group is generated by `A(x, y) = (x + 1, -y)`, which reverses
//! orientation and represents `h = c2^-1`, and `B(x, y) = (x, y + 1)`,
//! which represents `g = c1 c2`. The element `g^m h^n` acts as
//! `(x, y) -> (x + n, (-1)^n y + m)`.
//!
//! Coordinates are exact decimals with at most nine fractional digits;
//! all geometric predicates are evaluated in integer arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::stbundle::StWord;
use crate::surfaces::{Regime, Surface};
use crate::words::{torus_letters, KleinCoordinates};

/// Number of fixed-point units per unit length.
pub const SCALE: i128 = 1_000_000_000;
const FRACTION_DIGITS: usize = 9;

/// A point with coordinates in units of `1 / SCALE`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i128,
    pub y: i128,
}

impl Point {
    /// The point `(x / SCALE, y / SCALE)`.
    pub const fn from_units(x: i128, y: i128) -> Self {
        Point { x, y }
    }

    /// Rounds to the nearest representable point.
    pub fn new(x: f64, y: f64) -> Self {
        let s = SCALE as f64;
        Point {
            x: (x * s).round() as i128,
            y: (y * s).round() as i128,
        }
    }

    pub fn integer(x: i64, y: i64) -> Self {
        Point {
            x: i128::from(x) * SCALE,
            y: i128::from(y) * SCALE,
        }
    }

    fn sub(self, o: Point) -> Point {
        Point {
            x: self.x - o.x,
            y: self.y - o.y,
        }
    }

    fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", format_fixed(self.x), format_fixed(self.y))
    }
}

fn format_fixed(v: i128) -> String {
    let sign = if v < 0 { "-" } else { "" };
    let a = v.unsigned_abs();
    let (int, frac) = (a / SCALE as u128, a % SCALE as u128);
    if frac == 0 {
        format!("{sign}{int}")
    } else {
        let frac = format!("{frac:09}");
        format!("{sign}{int}.{}", frac.trim_end_matches('0'))
    }
}

fn cross(u: Point, v: Point) -> i128 {
    u.x * v.y - u.y * v.x
}

fn dot(u: Point, v: Point) -> i128 {
    u.x * v.x + u.y * v.y
}

/// 0 for directions with principal angle in `[0, pi)`, 1 for `[pi, 2 pi)`.
fn half(d: Point) -> u8 {
    if d.y > 0 || (d.y == 0 && d.x > 0) {
        0
    } else {
        1
    }
}

/// Compares principal angles in `[0, 2 pi)` of two nonzero vectors.
fn angle_cmp(u: Point, v: Point) -> Ordering {
    half(u).cmp(&half(v)).then_with(|| 0.cmp(&cross(u, v)))
}

/// Signed number of times the direction passes angle `0 (mod 2 pi)` when
/// turning from `u` to `v` through the exterior angle, counting arrival at
/// angle 0 from below and departure from it going down.
fn wraps(u: Point, v: Point) -> i64 {
    match cross(u, v).cmp(&0) {
        Ordering::Greater => i64::from(angle_cmp(v, u) == Ordering::Less),
        Ordering::Less => -i64::from(angle_cmp(v, u) == Ordering::Greater),
        Ordering::Equal => 0,
    }
}

/// Which flat model a curve is drawn in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveModel {
    Plane,
    Torus,
    Klein,
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveModel::Plane => "plane",
            CurveModel::Torus => "torus",
            CurveModel::Klein => "klein",
        })
    }
}

impl FromStr for CurveModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plane" => Ok(CurveModel::Plane),
            "torus" => Ok(CurveModel::Torus),
            "klein" => Ok(CurveModel::Klein),
            other => Err(Error::parse(1, 7, format!("unknown model `{other}`"))),
        }
    }
}

/// Deck transformation closing a curve: `B^m A^n` (Klein) or the
/// translation by `(n, m)` (torus). The plane uses the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Deck {
    /// Horizontal component.
    pub n: i64,
    /// Vertical component.
    pub m: i64,
}

impl Deck {
    fn reflects(self, model: CurveModel) -> bool {
        model == CurveModel::Klein && self.n.rem_euclid(2) == 1
    }

    fn apply(self, model: CurveModel, p: Point) -> Point {
        let y = if self.reflects(model) { -p.y } else { p.y };
        Point {
            x: p.x + i128::from(self.n) * SCALE,
            y: y + i128::from(self.m) * SCALE,
        }
    }

    fn apply_vector(self, model: CurveModel, v: Point) -> Point {
        if self.reflects(model) {
            Point { x: v.x, y: -v.y }
        } else {
            v
        }
    }

    /// The deck element taking `from` to `to`, if there is one.
    fn between(model: CurveModel, from: Point, to: Point) -> Option<Deck> {
        if model == CurveModel::Plane {
            return (from == to).then_some(Deck::default());
        }
        let dx = to.x - from.x;
        if dx % SCALE != 0 {
            return None;
        }
        let n = dx / SCALE;
        let deck = Deck { n: n as i64, m: 0 };
        let moved = deck.apply(model, from);
        let dy = to.y - moved.y;
        if dy % SCALE != 0 {
            return None;
        }
        Some(Deck {
            n: n as i64,
            m: (dy / SCALE) as i64,
        })
    }
}

/// A closed regular polyline in the plane: consecutive vertices, the last
/// joined back to the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    /// Checks regularity: at least three vertices, no zero-length edge and
    /// no reversal of direction at a vertex.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let p = Polyline { vertices };
        p.directions(CurveModel::Plane, Deck::default())?;
        Ok(p)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Edge vectors of the curve closed by `deck`, followed by the first
    /// edge transported by `deck`.
    fn directions(&self, model: CurveModel, deck: Deck) -> Result<Vec<Point>> {
        let v = &self.vertices;
        if v.len() < 3 {
            return Err(Error::IrregularPolyline(format!(
                "need at least 3 vertices, got {}",
                v.len()
            )));
        }
        let end = deck.apply(model, v[0]);
        let mut dirs: Vec<Point> = v.windows(2).map(|w| w[1].sub(w[0])).collect();
        dirs.push(end.sub(v[v.len() - 1]));
        if let Some(i) = dirs.iter().position(|d| d.is_zero()) {
            return Err(Error::IrregularPolyline(format!(
                "edge {i} has zero length"
            )));
        }
        dirs.push(deck.apply_vector(model, dirs[0]));
        for (i, w) in dirs.windows(2).enumerate() {
            if cross(w[0], w[1]) == 0 && dot(w[0], w[1]) < 0 {
                return Err(Error::IrregularPolyline(format!(
                    "exterior angle at vertex {} is a half turn",
                    (i + 1) % v.len()
                )));
            }
        }
        Ok(dirs)
    }

    #[must_use]
    pub fn reversed(&self) -> Polyline {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Polyline { vertices }
    }

    #[must_use]
    pub fn rotated(&self, k: usize) -> Polyline {
        let mut vertices = self.vertices.clone();
        let len = vertices.len().max(1);
        vertices.rotate_left(k % len);
        Polyline { vertices }
    }
}

/// Total turning of a closed plane polyline in full turns.
pub fn turning_number(p: &Polyline) -> Result<i64> {
    let dirs = p.directions(CurveModel::Plane, Deck::default())?;
    Ok(dirs.windows(2).map(|w| wraps(w[0], w[1])).sum())
}

/// A grid line crossed by an edge in the universal cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Bottom => "bottom",
            Side::Top => "top",
        })
    }
}

/// An edge leaving the unit cell `cell` through `side`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edge: usize,
    pub side: Side,
    pub cell: (i64, i64),
}

/// A curve in one of the flat models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveOnSurface {
    model: CurveModel,
    polyline: Polyline,
    closing: Deck,
}

fn floor_div(a: i128) -> i128 {
    a.div_euclid(SCALE)
}

impl CurveOnSurface {
    /// Builds a curve from universal-cover vertices. If the last vertex is
    /// a deck translate of the first (possibly equal to it) it is dropped
    /// and the curve closes through that deck element; otherwise the last
    /// vertex is joined to the first by a straight edge.
    pub fn new(model: CurveModel, mut vertices: Vec<Point>) -> Result<Self> {
        let closing = match (vertices.first(), vertices.last()) {
            (Some(&first), Some(&last)) if vertices.len() > 1 => {
                match Deck::between(model, first, last) {
                    Some(deck) => {
                        vertices.pop();
                        deck
                    }
                    None => Deck::default(),
                }
            }
            _ => Deck::default(),
        };
        let curve = CurveOnSurface {
            model,
            polyline: Polyline { vertices },
            closing,
        };
        curve.polyline.directions(model, closing)?;
        if model != CurveModel::Plane {
            curve.crossing_log()?;
        }
        Ok(curve)
    }

    pub fn model(&self) -> CurveModel {
        self.model
    }

    pub fn polyline(&self) -> &Polyline {
        &self.polyline
    }

    pub fn closing(&self) -> Deck {
        self.closing
    }

    fn edges(&self) -> Vec<(Point, Point)> {
        let v = &self.polyline.vertices;
        let end = self.closing.apply(self.model, v[0]);
        let mut out: Vec<(Point, Point)> = v.windows(2).map(|w| (w[0], w[1])).collect();
        out.push((v[v.len() - 1], end));
        out
    }

    /// Cell transitions of every edge, in order along the curve. Cells are
    /// half-open unit squares `[i, i+1) x [j, j+1)`. Edges running along a
    /// grid line or through a lattice point are rejected.
    pub fn crossing_log(&self) -> Result<Vec<Crossing>> {
        let mut log = Vec::new();
        for (i, (p, q)) in self.edges().into_iter().enumerate() {
            check_edge(i, p, q)?;
            // (t numerator, t denominator, side, cell before)
            let mut events: Vec<(i128, i128, Side)> = Vec::new();
            for (a, b, lo, hi) in [
                (p.x, q.x, Side::Left, Side::Right),
                (p.y, q.y, Side::Bottom, Side::Top),
            ] {
                let (fa, fb) = (floor_div(a), floor_div(b));
                if fb > fa {
                    for k in fa + 1..=fb {
                        events.push((k * SCALE - a, b - a, hi));
                    }
                } else if fb < fa {
                    for k in (fb + 1..=fa).rev() {
                        events.push((a - k * SCALE, a - b, lo));
                    }
                }
            }
            events.sort_by(|l, r| (l.0 * r.1).cmp(&(r.0 * l.1)));
            let mut cell = (floor_div(p.x) as i64, floor_div(p.y) as i64);
            for (_, _, side) in events {
                log.push(Crossing {
                    edge: i,
                    side,
                    cell,
                });
                match side {
                    Side::Left => cell.0 -= 1,
                    Side::Right => cell.0 += 1,
                    Side::Bottom => cell.1 -= 1,
                    Side::Top => cell.1 += 1,
                }
            }
        }
        Ok(log)
    }

    /// Total turning in full turns, measured in the chart: the number of
    /// times the tangent direction passes angle 0 between the first edge
    /// and its transport by the closing deck element.
    pub fn winding(&self) -> Result<i64> {
        let dirs = self.polyline.directions(self.model, self.closing)?;
        Ok(dirs.windows(2).map(|w| wraps(w[0], w[1])).sum())
    }

    /// The loop in the unit tangent bundle traced by the direction of the
    /// velocity.
    ///
    /// Plane curves live in an embedded disk, so only their turning number
    /// survives. On the torus the base is the closing translation and the
    /// fiber is the turning number. On the Klein bottle the closing deck
    /// element `g^m h^n` fixes the base; lifting the direction angle to the
    /// universal cover, `h` acts on it by `theta -> -theta`, so for odd `n`
    /// the fiber is `-W - [theta_0 != 0]`, where `W` counts passes through
    /// angle 0 and `theta_0` is the angle of the first edge in `[0, 2 pi)`.
    pub fn lift(&self, surface: &Surface) -> Result<StWord> {
        let w = self.winding()?;
        let mismatch = || Error::ModelMismatch {
            model: self.model.to_string(),
            surface: surface.spec(),
        };
        match self.model {
            CurveModel::Plane => surface.st_element(&[], w),
            CurveModel::Torus => {
                if surface.regime() != Regime::Torus {
                    return Err(mismatch());
                }
                let Deck { n, m } = self.closing;
                surface.st_element(&torus_letters(n, m), w)
            }
            CurveModel::Klein => {
                if surface.regime() != Regime::Klein {
                    return Err(mismatch());
                }
                let Deck { n, m } = self.closing;
                let l = if n.rem_euclid(2) == 0 {
                    w
                } else {
                    let first = self.polyline.vertices[1].sub(self.polyline.vertices[0]);
                    let theta0_positive = !(first.y == 0 && first.x > 0);
                    -w - i64::from(theta0_positive)
                };
                let c = KleinCoordinates::new(m, n, 0);
                surface.st_element(&c.base_letters(), l)
            }
        }
    }
}

fn check_edge(i: usize, p: Point, q: Point) -> Result<()> {
    if (p.x == q.x && p.x % SCALE == 0) || (p.y == q.y && p.y % SCALE == 0) {
        return Err(Error::DegenerateCrossing(format!(
            "edge {i} from {p} to {q} runs along a grid line"
        )));
    }
    // lattice points on the closed segment
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    let on_lattice = |x: i128, y: i128| x % SCALE == 0 && y % SCALE == 0;
    if on_lattice(p.x, p.y) || on_lattice(q.x, q.y) {
        return Err(Error::DegenerateCrossing(format!(
            "edge {i} from {p} to {q} meets a corner of the grid"
        )));
    }
    if dx != 0 {
        let (lo, hi) = (p.x.min(q.x), p.x.max(q.x));
        let mut k = lo.div_euclid(SCALE) + 1;
        while k * SCALE < hi {
            // y = p.y + (kS - p.x) dy / dx
            let num = p.y * dx + (k * SCALE - p.x) * dy;
            if num % (SCALE * dx) == 0 {
                return Err(Error::DegenerateCrossing(format!(
                    "edge {i} from {p} to {q} passes through a corner of the grid"
                )));
            }
            k += 1;
        }
    }
    Ok(())
}

fn parse_fixed(text: &str, line: usize, column: usize) -> Result<i128> {
    let bad = |msg: &str| Error::parse(line, column, format!("{msg}: `{text}`"));
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad("empty coordinate"));
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad("not a decimal number"));
    }
    if frac.len() > FRACTION_DIGITS {
        return Err(bad("more than 9 fractional digits"));
    }
    let int: i128 = if int.is_empty() {
        0
    } else {
        int.parse().map_err(|_| bad("coordinate out of range"))?
    };
    let frac_value: i128 = if frac.is_empty() {
        0
    } else {
        frac.parse::<i128>().map_err(|_| bad("bad fraction"))?
            * 10_i128.pow((FRACTION_DIGITS - frac.len()) as u32)
    };
    if int > 1_000_000_000_000 {
        return Err(bad("coordinate out of range"));
    }
    let v = int * SCALE + frac_value;
    Ok(if neg { -v } else { v })
}

/// Parses a curve file: `model=plane|torus|klein` on the first content line,
/// then one `x,y` vertex per line. `#` starts a comment; blank lines are
/// ignored.
pub fn parse_curve(text: &str) -> Result<CurveOnSurface> {
    let mut model = None;
    let mut vertices = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if model.is_none() {
            let value = trimmed.strip_prefix("model=").ok_or_else(|| {
                Error::parse(line_no, indent + 1, "expected `model=plane|torus|klein`")
            })?;
            model = Some(value.trim().parse::<CurveModel>().map_err(|_| {
                Error::parse(
                    line_no,
                    indent + 7,
                    format!("unknown model `{}`", value.trim()),
                )
            })?);
            continue;
        }
        let (xs, ys) = trimmed
            .split_once(',')
            .ok_or_else(|| Error::parse(line_no, indent + 1, "expected `x,y`"))?;
        let x = parse_fixed(xs.trim(), line_no, indent + 1)?;
        let y_col = indent + xs.len() + 2;
        let y = parse_fixed(ys.trim(), line_no, y_col)?;
        vertices.push(Point { x, y });
    }
    let model = model.ok_or_else(|| Error::parse(1, 1, "missing `model=` line"))?;
    CurveOnSurface::new(model, vertices)
}

/// Renders a curve in the file format accepted by [`parse_curve`].
pub fn render_curve(curve: &CurveOnSurface) -> String {
    let mut out = format!("model={}\n", curve.model);
    for v in &curve.polyline.vertices {
        out.push_str(&format!("{v}\n"));
    }
    if curve.closing != Deck::default() || curve.model != CurveModel::Plane {
        let end = curve.closing.apply(curve.model, curve.polyline.vertices[0]);
        out.push_str(&format!("{end}\n"));
    }
    out
}
