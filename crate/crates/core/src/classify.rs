//! Homotopy groups of the space of immersed curves.
//!
//! By the h-principle the component of a curve `xi` is the free homotopy
//! class of its lift in the unit tangent bundle, and its fundamental group
//! is the centralizer of the lift in `pi_1(ST(F))`. This module evaluates
//! the resulting case analysis and names generators of the centralizer.

use std::fmt;

use crate::error::{Error, Result};
use crate::stbundle::{LiftDecomposition, StWord};
use crate::surfaces::{Generator, Orientation, Presentation, Regime, Surface, SurfaceSpec};
use crate::words::{Decision, KleinCoordinates, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Z2,
    Z4,
    Z,
    ZxZ,
    ZxZxZ,
    KleinBottleGroup,
    /// All of `pi_1(ST(F))`.
    FullSTGroup,
    /// The index-two subgroup of `pi_1(ST(F))` projecting to orientation
    /// preserving loops.
    OrientationPreservingSubgroup,
    /// `pi_n(S^2) + pi_(n+1)(S^2)`.
    SymbolicSphereSum(u32),
    TrivialGroup,
}

impl GroupKind {
    /// Number of witnesses the kind calls for, when fixed.
    pub fn rank(self) -> Option<usize> {
        match self {
            GroupKind::Z2 | GroupKind::Z4 | GroupKind::Z => Some(1),
            GroupKind::ZxZ | GroupKind::KleinBottleGroup => Some(2),
            GroupKind::ZxZxZ => Some(3),
            GroupKind::SymbolicSphereSum(_) | GroupKind::TrivialGroup => Some(0),
            GroupKind::FullSTGroup | GroupKind::OrientationPreservingSubgroup => None,
        }
    }

    /// Kinds whose witnesses generate an abelian group.
    pub fn is_abelian(self) -> bool {
        matches!(
            self,
            GroupKind::Z2 | GroupKind::Z4 | GroupKind::Z | GroupKind::ZxZ | GroupKind::ZxZxZ
        )
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Z2 => f.write_str("Z2"),
            GroupKind::Z4 => f.write_str("Z4"),
            GroupKind::Z => f.write_str("Z"),
            GroupKind::ZxZ => f.write_str("ZxZ"),
            GroupKind::ZxZxZ => f.write_str("ZxZxZ"),
            GroupKind::KleinBottleGroup => f.write_str("KleinBottleGroup"),
            GroupKind::FullSTGroup => f.write_str("FullSTGroup"),
            GroupKind::OrientationPreservingSubgroup => {
                f.write_str("OrientationPreservingSubgroup")
            }
            GroupKind::SymbolicSphereSum(n) => write!(f, "SymbolicSphereSum({n})"),
            GroupKind::TrivialGroup => f.write_str("TrivialGroup"),
        }
    }
}

/// A named group together with generators inside `pi_1(ST(F))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescription {
    pub kind: GroupKind,
    pub witnesses: Vec<StWord>,
    /// Set for the full bundle group, the orientation preserving subgroup
    /// (the ambient presentation) and the Klein bottle group.
    pub presentation: Option<Presentation>,
}

impl GroupDescription {
    fn new(kind: GroupKind, witnesses: Vec<StWord>) -> Self {
        GroupDescription {
            kind,
            witnesses,
            presentation: None,
        }
    }

    /// Human-readable form of the abstract group.
    pub fn summary(&self) -> String {
        match self.kind {
            GroupKind::Z2 => "Z/2".into(),
            GroupKind::Z4 => "Z/4".into(),
            GroupKind::Z => "Z".into(),
            GroupKind::ZxZ => "Z + Z".into(),
            GroupKind::ZxZxZ => "Z + Z + Z".into(),
            GroupKind::KleinBottleGroup => "pi_1(Klein bottle) = < x, y | x y X y >".into(),
            GroupKind::FullSTGroup => "pi_1(ST F)".into(),
            GroupKind::OrientationPreservingSubgroup => {
                "{ x in pi_1(ST F) : x projects to an orientation preserving loop }".into()
            }
            GroupKind::SymbolicSphereSum(3) => "pi_3(S^2) + pi_4(S^2) = Z + pi_4(S^2)".into(),
            GroupKind::SymbolicSphereSum(n) => format!("pi_{n}(S^2) + pi_{}(S^2)", n + 1),
            GroupKind::TrivialGroup => "0".into(),
        }
    }
}

/// The outcome of [`classify_pi1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub surface: SurfaceSpec,
    /// The input as the user gave it (word text or curve file name).
    pub input: String,
    pub xi: StWord,
    pub decomposition: Option<LiftDecomposition>,
    /// Which case of the classification applies, e.g. `Thm 6 II a`.
    pub case: &'static str,
    pub group: GroupDescription,
}

impl ClassificationReport {
    /// Multi-line text report.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("surface: {}\n", self.surface));
        out.push_str(&format!("input: {}\n", self.input));
        out.push_str(&format!("lift: {}\n", self.xi));
        if let Some(d) = &self.decomposition {
            out.push_str(&format!(
                "decomposition: root={} k={} l={}\n",
                d.root_lift, d.exponent, d.fiber
            ));
        }
        out.push_str(&format!("case: {}\n", self.case));
        out.push_str(&format!(
            "group: {} ({})\n",
            self.group.kind,
            self.group.summary()
        ));
        if let Some(p) = &self.group.presentation {
            out.push_str(&format!("presentation: {p}\n"));
        }
        if self.group.kind == GroupKind::OrientationPreservingSubgroup {
            out.push_str("membership: eps(base) = +1\n");
        }
        for (i, w) in self.group.witnesses.iter().enumerate() {
            out.push_str(&format!("witness {}: {w}\n", i + 1));
        }
        out
    }

    /// `key=value` lines: `case`, `kind` and one `witness.i` per witness.
    pub fn render_structured(&self) -> String {
        let mut out = format!("case={}\nkind={}\n", self.case, self.group.kind);
        for (i, w) in self.group.witnesses.iter().enumerate() {
            out.push_str(&format!("witness.{}={w}\n", i + 1));
        }
        out
    }
}

fn all_generators(surface: &Surface) -> Result<Vec<StWord>> {
    (0..=surface.rank())
        .map(|i| surface.st_generator(i))
        .collect()
}

/// Generators of the orientation preserving subgroup from the coset
/// representatives `{1, c1}`.
pub fn orientation_preserving_generators(surface: &Surface) -> Result<Vec<StWord>> {
    let t = (0..surface.rank())
        .find(|&i| surface.generator_character(i) == Orientation::Reversing)
        .ok_or(Error::UnsupportedRegime {
            operation: "orientation_preserving_generators",
            regime: surface.regime(),
        })?;
    let t_word = surface.st_generator(t)?;
    let t_inv = surface.st_invert(&t_word)?;
    let mut out: Vec<StWord> = Vec::new();
    for x in all_generators(surface)? {
        let candidates = if x.orientation_character().is_preserving() {
            // x and c1 x c1^-1
            vec![
                x.clone(),
                surface.st_multiply(&surface.st_multiply(&t_word, &x)?, &t_inv)?,
            ]
        } else {
            // x c1^-1 and c1 x
            vec![
                surface.st_multiply(&x, &t_inv)?,
                surface.st_multiply(&t_word, &x)?,
            ]
        };
        for c in candidates {
            if !c.is_trivial() && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn klein_group_presentation() -> Presentation {
    let x = Letter::new(0, false);
    let y = Letter::new(1, false);
    Presentation {
        generators: vec![
            Generator {
                name: "x".into(),
                character: Orientation::Preserving,
            },
            Generator {
                name: "y".into(),
                character: Orientation::Preserving,
            },
        ],
        relators: vec![vec![x, y, x.inverse(), y]],
    }
}

/// Classifies `pi_1` of the space of curves at a curve with lift `xi`.
pub fn classify_pi1(surface: &Surface, xi: &StWord) -> Result<ClassificationReport> {
    if xi.surface() != surface.spec() {
        return Err(Error::AmbientMismatch {
            left: surface.spec(),
            right: xi.surface(),
        });
    }
    let (case, group, decomposition) = decide(surface, xi)?;
    Ok(ClassificationReport {
        surface: surface.spec(),
        input: xi.to_string(),
        xi: xi.clone(),
        decomposition,
        case,
        group,
    })
}

type Decided = (&'static str, GroupDescription, Option<LiftDecomposition>);

fn decide(s: &Surface, xi: &StWord) -> Result<Decided> {
    let f = s.fiber_class();
    match s.regime() {
        Regime::Sphere => Ok(("Thm 1", GroupDescription::new(GroupKind::Z2, vec![f]), None)),
        Regime::ProjectivePlane => Ok((
            "Thm 4",
            GroupDescription::new(GroupKind::Z4, vec![s.st_generator(0)?]),
            None,
        )),
        Regime::Torus => {
            let w = vec![s.st_generator(0)?, s.st_generator(1)?, f];
            let d = if xi.base().is_trivial() {
                None
            } else {
                Some(s.decompose(xi)?)
            };
            Ok(("Thm 2", GroupDescription::new(GroupKind::ZxZxZ, w), d))
        }
        Regime::Klein => decide_klein(s, xi),
        _ if s.spec().is_orientable() => {
            if xi.base().is_trivial() {
                return Ok(("Thm 3 II", full_group(s)?, None));
            }
            let d = s.decompose(xi)?;
            let w = vec![d.root_lift.clone(), f];
            Ok(("Thm 3 I", GroupDescription::new(GroupKind::ZxZ, w), Some(d)))
        }
        _ => decide_nonorientable(s, xi),
    }
}

fn full_group(s: &Surface) -> Result<GroupDescription> {
    Ok(GroupDescription {
        kind: GroupKind::FullSTGroup,
        witnesses: all_generators(s)?,
        presentation: Some(s.st_presentation().clone()),
    })
}

fn klein_word(s: &Surface, c: KleinCoordinates) -> Result<StWord> {
    s.st_element(&c.base().base_letters(), c.l)
}

fn decide_klein(s: &Surface, xi: &StWord) -> Result<Decided> {
    let c = KleinCoordinates::from_letters(xi.base().letters()).multiply(KleinCoordinates::new(
        0,
        0,
        xi.fiber(),
    ));
    let d = if xi.base().is_trivial() {
        None
    } else {
        Some(s.decompose(xi)?)
    };
    if c.n.rem_euclid(2) == 1 {
        // alpha = g^m h f^l, alpha^2 = h^2, xi = alpha^n
        let alpha = klein_word(s, KleinCoordinates::new(c.m, 1, c.l))?;
        return Ok((
            "Thm 5 II",
            GroupDescription::new(GroupKind::Z, vec![alpha]),
            d,
        ));
    }
    if c.m == 0 && c.l == 0 {
        return Ok(("Thm 5 I a", full_group(s)?, d));
    }
    let w = vec![
        klein_word(s, KleinCoordinates::g())?,
        klein_word(s, KleinCoordinates::h().power(2))?,
        s.fiber_class(),
    ];
    Ok(("Thm 5 I b", GroupDescription::new(GroupKind::ZxZxZ, w), d))
}

fn decide_nonorientable(s: &Surface, xi: &StWord) -> Result<Decided> {
    let f = s.fiber_class();
    if xi.base().is_trivial() {
        if xi.fiber() == 0 {
            return Ok(("Thm 6 III b", full_group(s)?, None));
        }
        return Ok((
            "Thm 6 III a",
            GroupDescription {
                kind: GroupKind::OrientationPreservingSubgroup,
                witnesses: orientation_preserving_generators(s)?,
                presentation: Some(s.st_presentation().clone()),
            },
            None,
        ));
    }
    let d = s.decompose(xi)?;
    let g = d.root_lift.clone();
    if !xi.orientation_character().is_preserving() {
        let w = s.st_multiply(&g, &s.st_power(&f, d.fiber)?)?;
        return Ok((
            "Thm 6 I",
            GroupDescription::new(GroupKind::Z, vec![w]),
            Some(d),
        ));
    }
    if g.orientation_character().is_preserving() {
        return Ok((
            "Thm 6 II a",
            GroupDescription::new(GroupKind::ZxZ, vec![g, f]),
            Some(d),
        ));
    }
    if d.fiber != 0 {
        let g2 = s.st_power(&g, 2)?;
        return Ok((
            "Thm 6 II a",
            GroupDescription::new(GroupKind::ZxZ, vec![g2, f]),
            Some(d),
        ));
    }
    Ok((
        "Thm 6 II b",
        GroupDescription {
            kind: GroupKind::KleinBottleGroup,
            witnesses: vec![g, f],
            presentation: Some(klein_group_presentation()),
        },
        Some(d),
    ))
}

/// `pi_n` of the space of curves for `n >= 2`.
pub fn classify_pin(spec: SurfaceSpec, n: u32) -> Result<GroupDescription> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let kind = match spec.regime() {
        Regime::Sphere | Regime::ProjectivePlane if n == 2 => GroupKind::Z,
        Regime::Sphere | Regime::ProjectivePlane => GroupKind::SymbolicSphereSum(n),
        _ => GroupKind::TrivialGroup,
    };
    Ok(GroupDescription::new(kind, Vec::new()))
}

/// Whether two curves with lifts `u` and `v` are regularly homotopic, i.e.
/// whether the lifts are conjugate.
pub fn regular_homotopy_equivalent(surface: &Surface, u: &StWord, v: &StWord) -> Result<Decision> {
    surface.st_is_conjugate(u, v)
}
