//! Exact arithmetic in the surface group `pi_1(F)`.
//!
//! Every [`Word`] is kept in the normal form of its regime:
//!
//! * sphere: the empty word;
//! * projective plane: `c1^e` with `e` in `{0, 1}`;
//! * torus: `a1^p b1^q`;
//! * Klein bottle: `g^m h^n` with `g = c1 c2` and `h = c2^-1`, spelled in
//!   the `c` generators and freely reduced;
//! * punctured surfaces: the freely reduced word;
//! * closed hyperbolic surfaces: the shortlex-least word among the
//!   Dehn-reduced words reachable by half-relator exchanges.

pub(crate) mod dehn;
pub(crate) mod klein;
mod parse;

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::invariants;
use crate::surfaces::{Orientation, Regime, Surface, SurfaceSpec};

pub use klein::KleinCoordinates;
pub(crate) use parse::{parse_powers, render_letters};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u16,
    inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter {
            generator: u16::try_from(generator).expect("generator index fits in u16"),
            inverse,
        }
    }

    pub fn generator(self) -> usize {
        usize::from(self.generator)
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    #[must_use]
    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Three-valued answer for procedures that may give up at a search bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "true",
            Decision::No => "false",
            Decision::Undecided => "undecided",
        })
    }
}

/// An element of `pi_1(F)` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    surface: SurfaceSpec,
    letters: Vec<Letter>,
}

impl Word {
    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True iff the element is the identity. Normal forms of the identity
    /// are empty in every regime.
    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn orientation_character(&self) -> Orientation {
        character_of(self.surface, &self.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = self.surface;
        let names: Vec<String> = (0..=spec.rank()).map(|i| spec.generator_name(i)).collect();
        f.write_str(&render_letters(&self.letters, |i| names[i].as_str()))
    }
}

/// A cyclically reduced word, up to rotation. The stored rotation is the
/// lexicographically least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    surface: SurfaceSpec,
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = self.surface;
        let names: Vec<String> = (0..=spec.rank()).map(|i| spec.generator_name(i)).collect();
        write!(
            f,
            "({})",
            render_letters(&self.letters, |i| names[i].as_str())
        )
    }
}

pub(crate) fn character_of(spec: SurfaceSpec, letters: &[Letter]) -> Orientation {
    letters
        .iter()
        .map(|l| spec.generator_character(l.generator()))
        .fold(Orientation::Preserving, |a, b| a * b)
}

pub(crate) fn character_of_table(table: &[Orientation], letters: &[Letter]) -> Orientation {
    letters
        .iter()
        .map(|l| table[l.generator()])
        .fold(Orientation::Preserving, |a, b| a * b)
}

pub(crate) fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

pub(crate) fn free_reduce(letters: &mut Vec<Letter>) {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters.iter() {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    *letters = out;
}

pub(crate) fn concat(parts: &[&[Letter]]) -> Vec<Letter> {
    let mut out: Vec<Letter> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    free_reduce(&mut out);
    out
}

pub(crate) fn power_letters(letters: &[Letter], exponent: i64) -> Vec<Letter> {
    let unit = if exponent >= 0 {
        letters.to_vec()
    } else {
        invert_letters(letters)
    };
    let mut out = Vec::with_capacity(unit.len() * exponent.unsigned_abs() as usize);
    for _ in 0..exponent.unsigned_abs() {
        out.extend_from_slice(&unit);
    }
    free_reduce(&mut out);
    out
}

/// Rotation `s[i..] s[..i]`, which equals `x^-1 s x` with `x = s[..i]`.
pub(crate) fn rotate(letters: &[Letter], i: usize) -> Vec<Letter> {
    let mut out = letters[i..].to_vec();
    out.extend_from_slice(&letters[..i]);
    out
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    (0..letters.len().max(1))
        .map(|i| rotate(letters, i.min(letters.len())))
        .min()
        .unwrap_or_default()
}

/// Smallest `p` dividing `len` with `letters = (letters[..p])^(len/p)`.
fn shortest_period(letters: &[Letter]) -> usize {
    let n = letters.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (p..n).all(|i| letters[i] == letters[i - p]))
        .unwrap_or(n)
}

fn cyclically_free_reduce(letters: &[Letter]) -> (Vec<Letter>, Vec<Letter>) {
    let mut core = letters.to_vec();
    free_reduce(&mut core);
    let mut conj = Vec::new();
    while core.len() >= 2 && core[0] == core[core.len() - 1].inverse() {
        conj.push(core[0]);
        core.pop();
        core.remove(0);
    }
    (core, conj)
}

impl Surface {
    fn check(&self, w: &Word) -> Result<()> {
        if w.surface != self.spec() {
            return Err(Error::AmbientMismatch {
                left: self.spec(),
                right: w.surface,
            });
        }
        Ok(())
    }

    fn check_letters(&self, letters: &[Letter]) -> Result<()> {
        match letters.iter().find(|l| l.generator() >= self.rank()) {
            Some(l) => Err(Error::parse(
                1,
                1,
                format!(
                    "generator index {} does not exist on {}",
                    l.generator(),
                    self.spec()
                ),
            )),
            None => Ok(()),
        }
    }

    /// Normal form of a letter sequence over the surface generators.
    pub(crate) fn normal_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        match self.regime() {
            Regime::Sphere => Vec::new(),
            Regime::ProjectivePlane => {
                let e: i64 = letters.iter().map(|l| l.exponent()).sum();
                if e.rem_euclid(2) == 1 {
                    vec![Letter::new(0, false)]
                } else {
                    Vec::new()
                }
            }
            Regime::Torus => {
                let (p, q) = torus_exponents(letters);
                torus_letters(p, q)
            }
            Regime::Klein => KleinCoordinates::from_letters(letters).base_letters(),
            Regime::ClosedOrientableHyperbolic
            | Regime::ClosedNonorientableHyperbolic
            | Regime::Punctured => self.rewriting().canonical(letters).0,
        }
    }

    pub(crate) fn wrap(&self, letters: Vec<Letter>) -> Word {
        Word {
            surface: self.spec(),
            letters,
        }
    }

    pub fn identity(&self) -> Word {
        self.wrap(Vec::new())
    }

    /// The word built from `letters`, put into normal form.
    pub fn word(&self, letters: &[Letter]) -> Result<Word> {
        self.check_letters(letters)?;
        Ok(self.wrap(self.normal_letters(letters)))
    }

    pub fn generator(&self, index: usize) -> Result<Word> {
        self.word(&[Letter::new(index, false)])
    }

    /// Parses the word grammar: `a1 B1 c2^3 1`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let spec = self.spec();
        let powers = parse_powers(text, 1, |name| {
            (0..spec.rank()).find(|&i| spec.generator_name(i) == name)
        })?;
        let mut letters = Vec::new();
        for (g, e) in powers {
            letters.extend(std::iter::repeat_n(
                Letter::new(g, e < 0),
                e.unsigned_abs() as usize,
            ));
        }
        self.word(&letters)
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.wrap(self.normal_letters(&concat(&[&u.letters, &v.letters]))))
    }

    pub fn invert(&self, u: &Word) -> Result<Word> {
        self.check(u)?;
        Ok(self.wrap(self.normal_letters(&invert_letters(&u.letters))))
    }

    pub fn power(&self, u: &Word, exponent: i64) -> Result<Word> {
        self.check(u)?;
        Ok(self.wrap(self.normal_letters(&power_letters(&u.letters, exponent))))
    }

    pub fn is_trivial(&self, u: &Word) -> Result<bool> {
        self.check(u)?;
        Ok(u.is_trivial())
    }

    pub fn orientation_character(&self, u: &Word) -> Result<Orientation> {
        self.check(u)?;
        Ok(u.orientation_character())
    }

    /// The conjugacy class representative of `u`: cyclically reduced, up to
    /// rotation.
    pub fn cyclic_word(&self, u: &Word) -> Result<CyclicWord> {
        self.check(u)?;
        let core = match self.regime() {
            Regime::ClosedOrientableHyperbolic
            | Regime::ClosedNonorientableHyperbolic
            | Regime::Punctured => self.rewriting().cyclic_reduce(&u.letters).0,
            _ => cyclically_free_reduce(&u.letters).0,
        };
        Ok(CyclicWord {
            surface: self.spec(),
            letters: least_rotation(&core),
        })
    }

    /// Decides whether `u` and `v` are conjugate.
    ///
    /// Exact in every regime except the closed hyperbolic ones, where a
    /// conjugator is searched among rotations and relator subwords (and, as
    /// a fallback, among all words up to `fallback_length`). When none is
    /// found and no homomorphism to an abelian or free quotient separates
    /// the two classes the answer is [`Decision::Undecided`].
    pub fn is_conjugate(&self, u: &Word, v: &Word) -> Result<Decision> {
        Ok(
            match self.find_conjugator(u, v, DEFAULT_CONJUGATOR_FALLBACK)? {
                ConjugatorSearch::Found(_) => Decision::Yes,
                ConjugatorSearch::NotConjugate => Decision::No,
                ConjugatorSearch::Exhausted => Decision::Undecided,
            },
        )
    }

    /// Looks for `c` with `c u c^-1 = v`.
    pub fn find_conjugator(
        &self,
        u: &Word,
        v: &Word,
        fallback_length: usize,
    ) -> Result<ConjugatorSearch> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Ok(ConjugatorSearch::Found(self.identity()));
        }
        match self.regime() {
            Regime::Sphere | Regime::ProjectivePlane | Regime::Torus => {
                Ok(ConjugatorSearch::NotConjugate)
            }
            Regime::Klein => Ok(self.klein_conjugator(u, v)),
            Regime::Punctured => Ok(self.free_conjugator(u, v)),
            Regime::ClosedOrientableHyperbolic | Regime::ClosedNonorientableHyperbolic => {
                Ok(self.hyperbolic_conjugator(u, v, fallback_length))
            }
        }
    }

    fn klein_conjugator(&self, u: &Word, v: &Word) -> ConjugatorSearch {
        let a = KleinCoordinates::from_letters(&u.letters);
        let b = KleinCoordinates::from_letters(&v.letters);
        match a.base_conjugator_to(&b) {
            Some(c) => ConjugatorSearch::Found(self.wrap(c.base_letters())),
            None => ConjugatorSearch::NotConjugate,
        }
    }

    fn free_conjugator(&self, u: &Word, v: &Word) -> ConjugatorSearch {
        let (su, cu) = cyclically_free_reduce(&u.letters);
        let (sv, cv) = cyclically_free_reduce(&v.letters);
        if su.len() != sv.len() {
            return ConjugatorSearch::NotConjugate;
        }
        for j in 0..sv.len().max(1) {
            if su == rotate(&sv, j.min(sv.len())) {
                // su = x^-1 sv x with x = sv[..j]
                let x = &sv[..j.min(sv.len())];
                let c = concat(&[&cv, x, &invert_letters(&cu)]);
                return ConjugatorSearch::Found(self.wrap(self.normal_letters(&c)));
            }
        }
        ConjugatorSearch::NotConjugate
    }

    fn hyperbolic_conjugator(&self, u: &Word, v: &Word, fallback: usize) -> ConjugatorSearch {
        let rw = self.rewriting();
        let (su, cu) = rw.cyclic_reduce(&u.letters);
        let (sv, cv) = rw.cyclic_reduce(&v.letters);
        if su.is_empty() || sv.is_empty() {
            return if su.is_empty() && sv.is_empty() {
                ConjugatorSearch::Found(self.identity())
            } else {
                ConjugatorSearch::NotConjugate
            };
        }
        if !invariants::may_be_conjugate(self, &u.letters, &v.letters) {
            return ConjugatorSearch::NotConjugate;
        }
        // Every rotation of sv, keyed by normal form.
        let targets: std::collections::HashMap<Vec<Letter>, usize> = (0..sv.len())
            .map(|j| (rw.canonical(&rotate(&sv, j)).0, j))
            .collect();
        let assemble = |i: usize, t: &[Letter], j: usize| {
            // t rot(su, i) t^-1 = rot(sv, j), rot(s, i) = x^-1 s x with x = s[..i]
            let c = concat(&[
                &cv,
                &sv[..j],
                t,
                &invert_letters(&su[..i]),
                &invert_letters(&cu),
            ]);
            self.wrap(self.normal_letters(&c))
        };
        let try_with = |conjugators: &mut dyn Iterator<Item = Vec<Letter>>| {
            for t in conjugators {
                let t_inv = invert_letters(&t);
                for i in 0..su.len() {
                    let candidate = rw.canonical(&concat(&[&t, &rotate(&su, i), &t_inv])).0;
                    if let Some(&j) = targets.get(&candidate) {
                        return Some(assemble(i, &t, j));
                    }
                }
            }
            None
        };
        let mut relator_subwords = rw.relator_subwords().into_iter();
        if let Some(c) = try_with(&mut relator_subwords) {
            return ConjugatorSearch::Found(c);
        }
        let mut all_short = dehn::reduced_words(self.rank(), fallback).into_iter();
        if let Some(c) = try_with(&mut all_short) {
            return ConjugatorSearch::Found(c);
        }
        ConjugatorSearch::Exhausted
    }

    /// Returns `(root, exponent)` with `root^exponent = u`, `exponent >= 1`
    /// maximal and `root` not a proper power.
    ///
    /// Defined for every regime with torsion-free infinite fundamental
    /// group. On the Klein bottle the maximal cyclic subgroup containing `u`
    /// need not be unique; the root returned there is the one described in
    /// [`KleinCoordinates::primitive_root`].
    pub fn primitive_root(&self, u: &Word) -> Result<(Word, u64)> {
        self.check(u)?;
        if u.is_trivial() {
            return Err(Error::TrivialElement);
        }
        match self.regime() {
            Regime::Sphere | Regime::ProjectivePlane => Err(Error::UnsupportedRegime {
                operation: "primitive_root",
                regime: self.regime(),
            }),
            Regime::Torus => {
                let (p, q) = torus_exponents(&u.letters);
                let d = p.gcd(&q);
                Ok((self.wrap(torus_letters(p / d, q / d)), d as u64))
            }
            Regime::Klein => {
                let (root, e) = KleinCoordinates::from_letters(&u.letters).primitive_root();
                Ok((self.wrap(root.base_letters()), e))
            }
            Regime::Punctured => {
                let (core, conj) = cyclically_free_reduce(&u.letters);
                let p = shortest_period(&core);
                let root = concat(&[&conj, &core[..p], &invert_letters(&conj)]);
                Ok((
                    self.wrap(self.normal_letters(&root)),
                    (core.len() / p) as u64,
                ))
            }
            Regime::ClosedOrientableHyperbolic | Regime::ClosedNonorientableHyperbolic => {
                Ok(self.hyperbolic_root(u))
            }
        }
    }

    fn hyperbolic_root(&self, u: &Word) -> (Word, u64) {
        let rw = self.rewriting();
        let (core, conj) = rw.cyclic_reduce(&u.letters);
        let mut best: Option<(Vec<Letter>, u64)> = None;
        for (variant, d) in rw.cyclic_variants(&core) {
            let p = shortest_period(&variant);
            let e = (variant.len() / p) as u64;
            if best.as_ref().is_some_and(|(_, be)| *be >= e) {
                continue;
            }
            // u = conj d variant d^-1 conj^-1
            let outer = concat(&[&conj, &d]);
            let root = concat(&[&outer, &variant[..p], &invert_letters(&outer)]);
            let root = rw.canonical(&root).0;
            let check = rw.canonical(&power_letters(&root, e as i64)).0;
            if check == u.letters {
                best = Some((root, e));
            }
        }
        let (root, e) = best.unwrap_or_else(|| (u.letters.clone(), 1));
        (self.wrap(root), e)
    }
}

/// Default length of the brute-force conjugator fallback in closed
/// hyperbolic regimes.
pub const DEFAULT_CONJUGATOR_FALLBACK: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugatorSearch<T = Word> {
    /// `c` with `c u c^-1 = v`.
    Found(T),
    NotConjugate,
    Exhausted,
}

pub(crate) fn torus_exponents(letters: &[Letter]) -> (i64, i64) {
    letters
        .iter()
        .fold((0, 0), |(p, q), l| match l.generator() {
            0 => (p + l.exponent(), q),
            _ => (p, q + l.exponent()),
        })
}

pub(crate) fn torus_letters(p: i64, q: i64) -> Vec<Letter> {
    let mut out = Vec::new();
    out.extend(std::iter::repeat_n(
        Letter::new(0, p < 0),
        p.unsigned_abs() as usize,
    ));
    out.extend(std::iter::repeat_n(
        Letter::new(1, q < 0),
        q.unsigned_abs() as usize,
    ));
    out
}
