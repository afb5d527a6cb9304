//! The fundamental group of the unit tangent bundle `ST(F)`.
//!
//! Elements are written `w f^n` with `w` a surface-group normal form and `f`
//! the fiber class. Moving `f` past a letter `x` gives `f x = x f^eps(x)`,
//! and the surface relator lifts to `f^chi`. In the finite regimes the
//! representation is reduced further: on the sphere `n` is taken mod 2, and
//! on the projective plane (where `c1^2 = f` and the group is cyclic of
//! order 4) `w` is `c1^0` or `c1^1` and `n` is 0 or 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::surfaces::{Orientation, Regime, Surface, SurfaceSpec};
use crate::words::{
    invert_letters, parse_powers, render_letters, ConjugatorSearch, Decision, KleinCoordinates,
    Letter, Word, DEFAULT_CONJUGATOR_FALLBACK,
};

/// An element `base f^fiber` of `pi_1(ST(F))` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StWord {
    base: Word,
    fiber: i64,
}

impl StWord {
    /// Projection to the surface group.
    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn fiber(&self) -> i64 {
        self.fiber
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.base.surface()
    }

    pub fn is_trivial(&self) -> bool {
        self.base.is_trivial() && self.fiber == 0
    }

    pub fn orientation_character(&self) -> Orientation {
        self.base.orientation_character()
    }
}

impl fmt::Display for StWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = self.surface();
        let fiber = Letter::new(spec.rank(), self.fiber < 0);
        let mut letters = self.base.letters().to_vec();
        letters.extend(std::iter::repeat_n(
            fiber,
            self.fiber.unsigned_abs() as usize,
        ));
        let names: Vec<String> = (0..=spec.rank()).map(|i| spec.generator_name(i)).collect();
        f.write_str(&render_letters(&letters, |i| names[i].as_str()))
    }
}

/// `xi = root_lift^exponent f^fiber`, where `root_lift` is the primitive
/// root of the base with fiber coordinate zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftDecomposition {
    pub root_lift: StWord,
    pub exponent: u64,
    pub fiber: i64,
}

impl fmt::Display for LiftDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root={} k={} l={}",
            self.root_lift, self.exponent, self.fiber
        )
    }
}

impl Surface {
    /// The element `letters f^fiber`, where `letters` are surface generators.
    pub fn st_element(&self, letters: &[Letter], fiber: i64) -> Result<StWord> {
        if let Some(l) = letters.iter().find(|l| l.generator() >= self.rank()) {
            return Err(Error::parse(
                1,
                1,
                format!(
                    "generator index {} does not exist on {}",
                    l.generator(),
                    self.spec()
                ),
            ));
        }
        Ok(self.st_normalize(letters, fiber))
    }

    fn st_normalize(&self, letters: &[Letter], fiber: i64) -> StWord {
        let wrap = |base: Vec<Letter>, fiber: i64| StWord {
            base: self.wrap(base),
            fiber,
        };
        match self.regime() {
            Regime::Sphere => wrap(Vec::new(), fiber.rem_euclid(2)),
            Regime::ProjectivePlane => {
                let e: i64 = letters.iter().map(|l| l.exponent()).sum();
                let r = (e + 2 * fiber).rem_euclid(4);
                let base = if r % 2 == 1 {
                    vec![Letter::new(0, false)]
                } else {
                    Vec::new()
                };
                wrap(base, r / 2)
            }
            Regime::Torus => wrap(self.normal_letters(letters), fiber),
            Regime::Klein => {
                let c = KleinCoordinates::from_letters(letters)
                    .multiply(KleinCoordinates::new(0, 0, fiber));
                wrap(c.base_letters(), c.l)
            }
            Regime::ClosedOrientableHyperbolic
            | Regime::ClosedNonorientableHyperbolic
            | Regime::Punctured => {
                let (nf, extra) = self.rewriting().canonical(letters);
                wrap(nf, fiber + extra)
            }
        }
    }

    /// Normalizes a sequence over the bundle generators (index `rank()` is
    /// `f`).
    pub fn st_from_bundle_letters(&self, letters: &[Letter]) -> Result<StWord> {
        let f = self.rank();
        if let Some(l) = letters.iter().find(|l| l.generator() > f) {
            return Err(Error::parse(
                1,
                1,
                format!(
                    "generator index {} does not exist on {}",
                    l.generator(),
                    self.spec()
                ),
            ));
        }
        let mut base = Vec::with_capacity(letters.len());
        let mut fiber = 0;
        // scanning from the right, eps(tail) tells how f moves to the end
        let mut tail_sign = 1;
        for l in letters.iter().rev() {
            if l.generator() == f {
                fiber += l.exponent() * tail_sign;
            } else {
                tail_sign *= self.generator_character(l.generator()).sign();
                base.push(*l);
            }
        }
        base.reverse();
        Ok(self.st_normalize(&base, fiber))
    }

    pub fn st_identity(&self) -> StWord {
        self.st_normalize(&[], 0)
    }

    /// The fiber class `f`.
    pub fn fiber_class(&self) -> StWord {
        self.st_normalize(&[], 1)
    }

    /// Generator `index` of the bundle presentation; `rank()` is `f`.
    pub fn st_generator(&self, index: usize) -> Result<StWord> {
        if index == self.rank() {
            Ok(self.fiber_class())
        } else {
            self.st_element(&[Letter::new(index, false)], 0)
        }
    }

    /// The lift `(w, 0)`.
    pub fn lift_word(&self, w: &Word) -> Result<StWord> {
        self.check_word(w)?;
        Ok(self.st_normalize(w.letters(), 0))
    }

    /// Parses the word grammar with `f` allowed: `a1 b1 f^-2`.
    pub fn parse_st_word(&self, text: &str) -> Result<StWord> {
        let spec = self.spec();
        let powers = parse_powers(text, 1, |name| {
            (0..=spec.rank()).find(|&i| spec.generator_name(i) == name)
        })?;
        let mut letters = Vec::new();
        for (g, e) in powers {
            letters.extend(std::iter::repeat_n(
                Letter::new(g, e < 0),
                e.unsigned_abs() as usize,
            ));
        }
        self.st_from_bundle_letters(&letters)
    }

    /// `u f^shift`, renormalized.
    pub(crate) fn shift_fiber(&self, u: &StWord, shift: i64) -> StWord {
        match self.regime() {
            Regime::Sphere | Regime::ProjectivePlane => {
                self.st_normalize(u.base.letters(), u.fiber + shift)
            }
            _ => StWord {
                base: u.base.clone(),
                fiber: u.fiber + shift,
            },
        }
    }

    fn check_st(&self, u: &StWord) -> Result<()> {
        self.check_word(&u.base)
    }

    pub(crate) fn check_word(&self, w: &Word) -> Result<()> {
        if w.surface() != self.spec() {
            return Err(Error::AmbientMismatch {
                left: self.spec(),
                right: w.surface(),
            });
        }
        Ok(())
    }

    /// Letters over the bundle generators spelling `u`.
    pub fn st_letters(&self, u: &StWord) -> Vec<Letter> {
        let mut letters = u.base.letters().to_vec();
        let f = Letter::new(self.rank(), u.fiber < 0);
        letters.extend(std::iter::repeat_n(f, u.fiber.unsigned_abs() as usize));
        letters
    }

    pub fn st_multiply(&self, u: &StWord, v: &StWord) -> Result<StWord> {
        self.check_st(u)?;
        self.check_st(v)?;
        // (u, a)(v, b) = u v f^(a eps(v) + b)
        let mut letters = u.base.letters().to_vec();
        letters.extend_from_slice(v.base.letters());
        let fiber = u.fiber * v.orientation_character().sign() + v.fiber;
        Ok(self.st_normalize(&letters, fiber))
    }

    pub fn st_invert(&self, u: &StWord) -> Result<StWord> {
        self.check_st(u)?;
        // (u, a)^-1 = f^-a u^-1 = u^-1 f^(-a eps(u))
        let letters = invert_letters(u.base.letters());
        let fiber = -u.fiber * u.orientation_character().sign();
        Ok(self.st_normalize(&letters, fiber))
    }

    pub fn st_power(&self, u: &StWord, exponent: i64) -> Result<StWord> {
        self.check_st(u)?;
        let unit = if exponent < 0 {
            self.st_invert(u)?
        } else {
            u.clone()
        };
        // square and multiply
        let mut result = self.st_identity();
        let mut base = unit;
        let mut k = exponent.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = self.st_multiply(&result, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.st_multiply(&base, &base)?;
            }
        }
        Ok(result)
    }

    pub fn st_is_trivial(&self, u: &StWord) -> Result<bool> {
        self.check_st(u)?;
        Ok(u.is_trivial())
    }

    /// `c u c^-1`.
    pub fn st_conjugate(&self, u: &StWord, c: &StWord) -> Result<StWord> {
        let cu = self.st_multiply(c, u)?;
        self.st_multiply(&cu, &self.st_invert(c)?)
    }

    pub fn st_is_conjugate(&self, u: &StWord, v: &StWord) -> Result<Decision> {
        Ok(match self.st_find_conjugator(u, v)? {
            ConjugatorSearch::Found(_) => Decision::Yes,
            ConjugatorSearch::NotConjugate => Decision::No,
            ConjugatorSearch::Exhausted => Decision::Undecided,
        })
    }

    /// Looks for `c` with `c u c^-1 = v` in the bundle group.
    ///
    /// A base conjugator `c0` is found first. What remains is the action of
    /// the stabilizer of the base of `v` on the fiber coordinate: `f`
    /// shifts it by `-2` when `v` reverses orientation, and a primitive root
    /// of the base reflects it when the root reverses orientation.
    pub fn st_find_conjugator(&self, u: &StWord, v: &StWord) -> Result<ConjugatorSearch<StWord>> {
        self.check_st(u)?;
        self.check_st(v)?;
        if u == v {
            return Ok(ConjugatorSearch::Found(self.st_identity()));
        }
        match self.regime() {
            Regime::Sphere | Regime::ProjectivePlane | Regime::Torus => {
                return Ok(ConjugatorSearch::NotConjugate)
            }
            Regime::Klein => {
                let a = KleinCoordinates::from_letters(u.base.letters())
                    .multiply(KleinCoordinates::new(0, 0, u.fiber));
                let b = KleinCoordinates::from_letters(v.base.letters())
                    .multiply(KleinCoordinates::new(0, 0, v.fiber));
                return Ok(match a.conjugator_to(b) {
                    Some(c) => ConjugatorSearch::Found(self.st_normalize(&c.base_letters(), c.l)),
                    None => ConjugatorSearch::NotConjugate,
                });
            }
            _ => {}
        }
        let c0 = match self.find_conjugator(&u.base, &v.base, DEFAULT_CONJUGATOR_FALLBACK)? {
            ConjugatorSearch::Found(c) => self.lift_word(&c)?,
            ConjugatorSearch::NotConjugate => return Ok(ConjugatorSearch::NotConjugate),
            ConjugatorSearch::Exhausted => return Ok(ConjugatorSearch::Exhausted),
        };
        let moved = self.st_conjugate(u, &c0)?;
        debug_assert_eq!(moved.base, v.base);
        let compose = |c: &StWord| self.st_multiply(c, &c0);
        if moved.fiber == v.fiber {
            return Ok(ConjugatorSearch::Found(c0));
        }
        if v.base.is_trivial() {
            // x f^n x^-1 = f^(eps(x) n)
            if moved.fiber == -v.fiber {
                if let Some(i) =
                    (0..self.rank()).find(|&i| !self.generator_character(i).is_preserving())
                {
                    let x = self.st_element(&[Letter::new(i, false)], 0)?;
                    return Ok(ConjugatorSearch::Found(compose(&x)?));
                }
            }
            return Ok(ConjugatorSearch::NotConjugate);
        }
        if !v.orientation_character().is_preserving() {
            let d = moved.fiber - v.fiber;
            if d % 2 == 0 {
                let c = self.st_normalize(&[], d / 2);
                return Ok(ConjugatorSearch::Found(compose(&c)?));
            }
            return Ok(ConjugatorSearch::NotConjugate);
        }
        let (root, _) = self.primitive_root(&v.base)?;
        if root.orientation_character().is_preserving() {
            return Ok(ConjugatorSearch::NotConjugate);
        }
        let r = self.lift_word(&root)?;
        let reflected = self.st_conjugate(&moved, &r)?;
        if reflected.fiber == v.fiber {
            return Ok(ConjugatorSearch::Found(compose(&r)?));
        }
        Ok(ConjugatorSearch::NotConjugate)
    }

    /// Writes `xi = (root, 0)^k f^l` with `root` primitive in `pi_1(F)`.
    /// Fails with [`Error::TrivialElement`] when the base of `xi` is trivial.
    pub fn decompose(&self, xi: &StWord) -> Result<LiftDecomposition> {
        self.check_st(xi)?;
        if matches!(self.regime(), Regime::Sphere | Regime::ProjectivePlane) {
            return Err(Error::UnsupportedRegime {
                operation: "decompose",
                regime: self.regime(),
            });
        }
        let (root, k) = self.primitive_root(&xi.base)?;
        let root_lift = self.lift_word(&root)?;
        let lifted = self.st_power(&root_lift, k as i64)?;
        debug_assert_eq!(lifted.base, xi.base);
        Ok(LiftDecomposition {
            root_lift,
            exponent: k,
            fiber: xi.fiber - lifted.fiber,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(s: &str) -> Surface {
        Surface::new(s.parse().unwrap())
    }

    #[test]
    fn bundle_relators_hold() {
        for s in [
            "orientable:0:0",
            "orientable:1:0",
            "orientable:2:0",
            "orientable:3:0",
            "orientable:1:2",
            "nonorientable:1:0",
            "nonorientable:2:0",
            "nonorientable:3:0",
            "nonorientable:4:0",
            "nonorientable:2:1",
        ] {
            let s = surface(s);
            for r in &s.st_presentation().relators {
                let w = s.st_from_bundle_letters(r).unwrap();
                assert!(w.is_trivial(), "{}: relator {r:?} gave {w}", s.spec());
            }
        }
    }

    #[test]
    fn projective_plane_is_cyclic_of_order_four() {
        let s = surface("nonorientable:1:0");
        let c1 = s.parse_st_word("c1").unwrap();
        let rendered: Vec<String> = (0..5)
            .map(|k| s.st_power(&c1, k).unwrap().to_string())
            .collect();
        assert_eq!(rendered, ["1", "c1", "f", "c1 f", "1"]);
        assert_eq!(s.parse_st_word("f^2").unwrap(), s.st_identity());
    }

    #[test]
    fn sphere_fiber_has_order_two() {
        let s = surface("orientable:0:0");
        assert_eq!(s.parse_st_word("f^3").unwrap(), s.fiber_class());
        assert!(s.parse_st_word("f^-2").unwrap().is_trivial());
    }

    #[test]
    fn twisting() {
        let k = surface("nonorientable:2:0");
        let c1 = k.parse_st_word("c1").unwrap();
        let f = k.fiber_class();
        let g = k.st_conjugate(&f, &c1).unwrap();
        assert_eq!(g, k.st_invert(&f).unwrap());
        let g2 = surface("orientable:2:0");
        let r = g2.parse_st_word("a1 b1 A1 B1 a2 b2 A2 B2").unwrap();
        assert_eq!(r, g2.parse_st_word("f^-2").unwrap());
    }

    #[test]
    fn conjugacy_in_the_bundle() {
        let g2 = surface("orientable:2:0");
        let a = g2.parse_st_word("a1 f^3").unwrap();
        let b = g2.parse_st_word("B1 a1 b1 f^3").unwrap();
        let c = g2.parse_st_word("B1 a1 b1 f^2").unwrap();
        assert_eq!(g2.st_is_conjugate(&a, &b).unwrap(), Decision::Yes);
        assert_eq!(g2.st_is_conjugate(&a, &c).unwrap(), Decision::No);

        let n3 = surface("nonorientable:3:0");
        let u = n3.parse_st_word("c1 f^3").unwrap();
        let v = n3.parse_st_word("c1 f").unwrap();
        let w = n3.parse_st_word("c1 f^2").unwrap();
        assert_eq!(n3.st_is_conjugate(&u, &v).unwrap(), Decision::Yes);
        assert_eq!(n3.st_is_conjugate(&u, &w).unwrap(), Decision::No);

        // c1^2 preserves orientation; conjugating by c1 reflects the fiber
        let x = n3.parse_st_word("c1^2 f^3").unwrap();
        let reflected = n3
            .st_conjugate(&x, &n3.parse_st_word("c1").unwrap())
            .unwrap();
        assert_eq!(reflected.base(), x.base());
        assert_ne!(reflected, x);
        assert_eq!(n3.st_is_conjugate(&x, &reflected).unwrap(), Decision::Yes);
    }

    #[test]
    fn decomposition() {
        let g2 = surface("orientable:2:0");
        let xi = g2.parse_st_word("a1 b1 a1 b1 f^5").unwrap();
        let d = g2.decompose(&xi).unwrap();
        assert_eq!(d.root_lift, g2.parse_st_word("a1 b1").unwrap());
        assert_eq!(d.exponent, 2);
        assert_eq!(d.fiber, 5);
        let rp2 = surface("nonorientable:1:0");
        assert!(rp2.decompose(&rp2.fiber_class()).is_err());
        assert_eq!(g2.decompose(&g2.fiber_class()), Err(Error::TrivialElement));

        let t = surface("orientable:1:0");
        let d = t.decompose(&t.parse_st_word("a1^2 f^3").unwrap()).unwrap();
        assert_eq!(
            (d.root_lift, d.exponent, d.fiber),
            (t.parse_st_word("a1").unwrap(), 2, 3)
        );
        let k = surface("nonorientable:2:0");
        let d = k
            .decompose(&k.parse_st_word("c1 c2 c1 c2").unwrap())
            .unwrap();
        assert_eq!(
            (d.root_lift, d.exponent, d.fiber),
            (k.parse_st_word("c1 c2").unwrap(), 2, 0)
        );
    }
}
