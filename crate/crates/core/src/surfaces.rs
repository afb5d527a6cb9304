//! Surfaces, their presentation regimes, and the standard presentations of
//! the fundamental group of the surface and of its unit tangent bundle.
//!
//! Every generator carries an orientation character. The fiber class of the
//! tangent bundle is always the last generator of the bundle presentation
//! and is named `f`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::dehn::RewriteSystem;
use crate::words::Letter;

/// Orientation character of a loop: the value of the homomorphism
/// `pi_1(F) -> {+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Preserving => 1,
            Orientation::Reversing => -1,
        }
    }

    pub fn is_preserving(self) -> bool {
        self == Orientation::Preserving
    }
}

impl std::ops::Mul for Orientation {
    type Output = Orientation;

    fn mul(self, rhs: Orientation) -> Orientation {
        if self == rhs {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Preserving => "+1",
            Orientation::Reversing => "-1",
        })
    }
}

/// A surface up to diffeomorphism: orientability, genus and number of
/// punctures. For nonorientable surfaces the genus counts crosscaps, so the
/// projective plane has genus 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceSpec {
    orientable: bool,
    genus: u32,
    punctures: u32,
}

impl SurfaceSpec {
    pub const SPHERE: SurfaceSpec = SurfaceSpec::orientable(0, 0);
    pub const TORUS: SurfaceSpec = SurfaceSpec::orientable(1, 0);
    pub const PROJECTIVE_PLANE: SurfaceSpec = SurfaceSpec {
        orientable: false,
        genus: 1,
        punctures: 0,
    };
    pub const KLEIN_BOTTLE: SurfaceSpec = SurfaceSpec {
        orientable: false,
        genus: 2,
        punctures: 0,
    };

    pub fn new(orientable: bool, genus: u32, punctures: u32) -> Result<Self> {
        if !orientable && genus == 0 {
            return Err(Error::InvalidSurface(
                "a nonorientable surface needs at least one crosscap".into(),
            ));
        }
        Ok(SurfaceSpec {
            orientable,
            genus,
            punctures,
        })
    }

    pub const fn orientable(genus: u32, punctures: u32) -> Self {
        SurfaceSpec {
            orientable: true,
            genus,
            punctures,
        }
    }

    pub fn nonorientable(crosscaps: u32, punctures: u32) -> Result<Self> {
        SurfaceSpec::new(false, crosscaps, punctures)
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn punctures(&self) -> u32 {
        self.punctures
    }

    pub fn is_closed(&self) -> bool {
        self.punctures == 0
    }

    pub fn euler_characteristic(&self) -> i64 {
        let g = i64::from(self.genus);
        let p = i64::from(self.punctures);
        if self.orientable {
            2 - 2 * g - p
        } else {
            2 - g - p
        }
    }

    pub fn regime(&self) -> Regime {
        if self.punctures > 0 {
            return Regime::Punctured;
        }
        match (self.orientable, self.genus) {
            (true, 0) => Regime::Sphere,
            (true, 1) => Regime::Torus,
            (true, _) => Regime::ClosedOrientableHyperbolic,
            (false, 1) => Regime::ProjectivePlane,
            (false, 2) => Regime::Klein,
            (false, _) => Regime::ClosedNonorientableHyperbolic,
        }
    }

    /// Number of generators of the standard surface-group presentation.
    pub fn rank(&self) -> usize {
        let g = self.genus as usize;
        let handles = if self.orientable { 2 * g } else { g };
        handles + (self.punctures as usize).saturating_sub(1)
    }

    /// Name of generator `index`; index `rank()` is the fiber class `f`.
    pub fn generator_name(&self, index: usize) -> String {
        let g = self.genus as usize;
        let handles = if self.orientable { 2 * g } else { g };
        if index == self.rank() {
            "f".to_string()
        } else if index >= handles {
            format!("p{}", index - handles + 1)
        } else if self.orientable {
            let letter = if index.is_multiple_of(2) { 'a' } else { 'b' };
            format!("{letter}{}", index / 2 + 1)
        } else {
            format!("c{}", index + 1)
        }
    }

    /// Orientation character of generator `index` (the fiber preserves
    /// orientation).
    pub fn generator_character(&self, index: usize) -> Orientation {
        if !self.orientable && index < self.genus as usize {
            Orientation::Reversing
        } else {
            Orientation::Preserving
        }
    }

    pub fn presentation(&self) -> Presentation {
        presentation(*self)
    }

    pub fn st_presentation(&self) -> Presentation {
        st_presentation(*self)
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.orientable {
            "orientable"
        } else {
            "nonorientable"
        };
        write!(f, "{kind}:{}:{}", self.genus, self.punctures)
    }
}

impl FromStr for SurfaceSpec {
    type Err = Error;

    /// Accepts `orientable:2:0` or `surface=orientable:2:0`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix("surface=").unwrap_or(body);
        let parts: Vec<&str> = body.split(':').collect();
        let bad = |msg: &str| Error::InvalidSurface(format!("`{s}`: {msg}"));
        if parts.len() != 3 {
            return Err(bad(
                "expected <orientable|nonorientable>:<genus>:<punctures>",
            ));
        }
        let orientable = match parts[0] {
            "orientable" => true,
            "nonorientable" => false,
            other => return Err(bad(&format!("unknown orientability `{other}`"))),
        };
        let genus = parts[1]
            .parse::<u32>()
            .map_err(|_| bad("genus must be a nonnegative integer"))?;
        let punctures = parts[2]
            .parse::<u32>()
            .map_err(|_| bad("puncture count must be a nonnegative integer"))?;
        SurfaceSpec::new(orientable, genus, punctures)
    }
}

/// Which algorithms apply to a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Sphere,
    Torus,
    ProjectivePlane,
    Klein,
    /// Closed orientable, genus at least 2.
    ClosedOrientableHyperbolic,
    /// Closed nonorientable, at least 3 crosscaps.
    ClosedNonorientableHyperbolic,
    /// At least one puncture; the fundamental group is free.
    Punctured,
}

impl Regime {
    pub fn is_finite(self) -> bool {
        matches!(self, Regime::Sphere | Regime::ProjectivePlane)
    }

    pub fn is_closed_hyperbolic(self) -> bool {
        matches!(
            self,
            Regime::ClosedOrientableHyperbolic | Regime::ClosedNonorientableHyperbolic
        )
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Sphere => "sphere",
            Regime::Torus => "torus",
            Regime::ProjectivePlane => "projective-plane",
            Regime::Klein => "klein-bottle",
            Regime::ClosedOrientableHyperbolic => "closed-orientable-hyperbolic",
            Regime::ClosedNonorientableHyperbolic => "closed-nonorientable-hyperbolic",
            Regime::Punctured => "punctured",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub character: Orientation,
}

/// A finite presentation whose generators carry orientation characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn character_of(&self, letters: &[Letter]) -> Orientation {
        letters
            .iter()
            .map(|l| self.generators[l.generator()].character)
            .fold(Orientation::Preserving, |a, b| a * b)
    }

    /// Renders a letter sequence with this presentation's generator names.
    pub fn spell(&self, letters: &[Letter]) -> String {
        crate::words::render_letters(letters, |i| self.generators[i].name.as_str())
    }

    /// Integer relation matrix: one row per relator, one column per
    /// generator, entries are exponent sums.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.rank()];
                for l in r {
                    row[l.generator()] += l.exponent();
                }
                row
            })
            .collect()
    }

    pub fn abelianization(&self) -> Abelianization {
        let matrix = self.relation_matrix();
        let diagonal = smith_diagonal(matrix, self.rank());
        let torsion = diagonal
            .iter()
            .map(|d| d.unsigned_abs())
            .filter(|&d| d > 1)
            .collect();
        Abelianization {
            free_rank: self.rank() - diagonal.len(),
            torsion,
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| self.spell(r)).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// Finitely generated abelian group `Z^free_rank + Z/t1 + Z/t2 + ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Nonzero diagonal entries of the Smith normal form of an integer matrix.
pub fn smith_diagonal(mut m: Vec<Vec<i64>>, cols: usize) -> Vec<i64> {
    let rows = m.len();
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return diagonal;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // The pivot must divide the remaining block.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % p != 0);
            match offender {
                Some((i, _)) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => {
                    diagonal.push(p.abs());
                    break;
                }
            }
        }
    }
    diagonal
}

/// Standard presentation of the surface group.
pub fn presentation(spec: SurfaceSpec) -> Presentation {
    let g = spec.genus as usize;
    let generators = (0..spec.rank())
        .map(|i| Generator {
            name: spec.generator_name(i),
            character: spec.generator_character(i),
        })
        .collect();
    let mut relators = Vec::new();
    if spec.punctures == 0 && g > 0 {
        let mut r = Vec::new();
        if spec.orientable {
            for i in 0..g {
                let (a, b) = (2 * i, 2 * i + 1);
                r.extend([
                    Letter::new(a, false),
                    Letter::new(b, false),
                    Letter::new(a, true),
                    Letter::new(b, true),
                ]);
            }
        } else {
            for i in 0..g {
                r.extend([Letter::new(i, false), Letter::new(i, false)]);
            }
        }
        relators.push(r);
    }
    Presentation {
        generators,
        relators,
    }
}

/// Presentation of the fundamental group of the unit tangent bundle: the
/// surface generators, the fiber class `f`, the surface relator lifted to
/// `f^chi`, and the twisting relations `x f x^-1 = f^(eps(x))`.
pub fn st_presentation(spec: SurfaceSpec) -> Presentation {
    let base = presentation(spec);
    let fiber = base.rank();
    let mut generators = base.generators.clone();
    generators.push(Generator {
        name: "f".into(),
        character: Orientation::Preserving,
    });
    let f = Letter::new(fiber, false);
    let f_inv = Letter::new(fiber, true);
    let chi = spec.euler_characteristic();

    let mut relators = Vec::new();
    if spec.regime() == Regime::Sphere {
        relators.push(vec![f, f]);
    }
    for r in &base.relators {
        let mut lifted = r.clone();
        let correction = if chi > 0 { f_inv } else { f };
        lifted.extend(std::iter::repeat_n(correction, chi.unsigned_abs() as usize));
        relators.push(lifted);
    }
    for (i, g) in base.generators.iter().enumerate() {
        let x = Letter::new(i, false);
        let twisted = match g.character {
            Orientation::Preserving => f_inv,
            Orientation::Reversing => f,
        };
        relators.push(vec![x, f, x.inverse(), twisted]);
    }
    Presentation {
        generators,
        relators,
    }
}

/// A surface together with the precomputed data its algorithms need.
#[derive(Clone, Debug)]
pub struct Surface {
    spec: SurfaceSpec,
    regime: Regime,
    presentation: Presentation,
    st_presentation: Presentation,
    pub(crate) rewriting: Option<RewriteSystem>,
}

impl Surface {
    pub fn new(spec: SurfaceSpec) -> Self {
        let regime = spec.regime();
        let presentation = presentation(spec);
        let rewriting = match regime {
            Regime::ClosedOrientableHyperbolic
            | Regime::ClosedNonorientableHyperbolic
            | Regime::Punctured => Some(RewriteSystem::new(
                &presentation,
                spec.euler_characteristic(),
            )),
            _ => None,
        };
        Surface {
            spec,
            regime,
            st_presentation: st_presentation(spec),
            presentation,
            rewriting,
        }
    }

    pub fn spec(&self) -> SurfaceSpec {
        self.spec
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn st_presentation(&self) -> &Presentation {
        &self.st_presentation
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.spec.euler_characteristic()
    }

    pub fn rank(&self) -> usize {
        self.presentation.rank()
    }

    pub fn generator_character(&self, index: usize) -> Orientation {
        self.presentation.generators[index].character
    }

    pub(crate) fn rewriting(&self) -> &RewriteSystem {
        self.rewriting
            .as_ref()
            .expect("rewriting system exists for free and hyperbolic regimes")
    }
}
