//! Coordinates on the Klein bottle group and its unit tangent bundle group.
//!
//! With `g = c1 c2` (orientation preserving) and `h = c2^-1` (orientation
//! reversing) every element of the bundle group is uniquely `g^m h^n f^l`,
//! and
//!
//! ```text
//! (m, n, l) (m', n', l') = (m + (-1)^n m', n + n', (-1)^n' l + l')
//! ```
//!
//! The surface group is the quotient `l = 0`.

use num_integer::Integer;

use crate::words::{free_reduce, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct KleinCoordinates {
    pub m: i64,
    pub n: i64,
    pub l: i64,
}

const C1: usize = 0;
const C2: usize = 1;
const F: usize = 2;

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl KleinCoordinates {
    pub const IDENTITY: KleinCoordinates = KleinCoordinates { m: 0, n: 0, l: 0 };

    pub fn new(m: i64, n: i64, l: i64) -> Self {
        KleinCoordinates { m, n, l }
    }

    pub fn g() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn h() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn f() -> Self {
        Self::new(0, 0, 1)
    }

    /// Image of a single letter; index 2 is the fiber generator.
    pub fn of_letter(letter: Letter) -> Self {
        let c = match letter.generator() {
            C1 => Self::new(1, 1, 0),
            C2 => Self::new(0, -1, 0),
            F => Self::f(),
            other => panic!("Klein bottle has no generator {other}"),
        };
        if letter.is_inverse() {
            c.inverse()
        } else {
            c
        }
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        letters
            .iter()
            .fold(Self::IDENTITY, |acc, &l| acc.multiply(Self::of_letter(l)))
    }

    #[must_use]
    pub fn multiply(self, o: Self) -> Self {
        Self::new(
            self.m + sign(self.n) * o.m,
            self.n + o.n,
            sign(o.n) * self.l + o.l,
        )
    }

    #[must_use]
    pub fn inverse(self) -> Self {
        // (m, n, l)^-1 = (-(-1)^n m, -n, -(-1)^n l)
        let s = sign(self.n);
        Self::new(-s * self.m, -self.n, -s * self.l)
    }

    #[must_use]
    pub fn power(self, k: i64) -> Self {
        let (base, k) = if k < 0 {
            (self.inverse(), -k)
        } else {
            (self, k)
        };
        (0..k).fold(Self::IDENTITY, |acc, _| acc.multiply(base))
    }

    #[must_use]
    pub fn base(self) -> Self {
        Self::new(self.m, self.n, 0)
    }

    pub fn is_orientation_preserving(self) -> bool {
        self.n.rem_euclid(2) == 0
    }

    /// `g^m h^n` spelled as `(c1 c2)^m c2^-n`, freely reduced.
    pub fn base_letters(self) -> Vec<Letter> {
        let mut out = Vec::new();
        let g = if self.m >= 0 {
            [Letter::new(C1, false), Letter::new(C2, false)]
        } else {
            [Letter::new(C2, true), Letter::new(C1, true)]
        };
        for _ in 0..self.m.unsigned_abs() {
            out.extend_from_slice(&g);
        }
        let h = Letter::new(C2, self.n >= 0);
        out.extend(std::iter::repeat_n(h, self.n.unsigned_abs() as usize));
        free_reduce(&mut out);
        out
    }

    /// Some `c` with `c self c^-1 = other`, computed in the bundle group.
    /// Projecting to `l = 0` gives the answer for the surface group.
    pub fn conjugator_to(self, other: Self) -> Option<Self> {
        if self.n != other.n {
            return None;
        }
        if self.is_orientation_preserving() {
            if self == other {
                Some(Self::IDENTITY)
            } else if (-self.m, -self.l) == (other.m, other.l) {
                Some(Self::h())
            } else {
                None
            }
        } else {
            // g shifts m by 2, f shifts l by -2
            let dm = other.m - self.m;
            let dl = self.l - other.l;
            if dm.is_even() && dl.is_even() {
                Some(Self::new(dm / 2, 0, dl / 2))
            } else {
                None
            }
        }
    }

    /// Conjugacy in the surface group, ignoring `l`.
    pub fn base_conjugator_to(self, other: &Self) -> Option<Self> {
        let (a, b) = (self.base(), other.base());
        if a.n != b.n {
            return None;
        }
        if a.is_orientation_preserving() {
            if a.m == b.m {
                Some(Self::IDENTITY)
            } else if a.m == -b.m {
                Some(Self::h())
            } else {
                None
            }
        } else if (b.m - a.m).is_even() {
            Some(Self::new((b.m - a.m) / 2, 0, 0))
        } else {
            None
        }
    }

    /// Root and exponent in the surface group.
    ///
    /// Elements `g^m h^n` with `n` odd are the `n`-th power of `g^m h^sgn(n)`.
    /// Otherwise the element is `(g^(m/e) h^(n/e))^e` for the largest `e`
    /// keeping `n/e` even (or `e = |n|` when `m = 0`).
    pub fn primitive_root(self) -> (Self, u64) {
        let (m, n) = (self.m, self.n);
        assert!((m, n) != (0, 0), "identity has no root");
        if !n.is_even() {
            return (Self::new(m, n.signum(), 0), n.unsigned_abs());
        }
        if m == 0 {
            return (Self::new(0, n.signum(), 0), n.unsigned_abs());
        }
        let e = m.abs().gcd(&(n.abs() / 2));
        (Self::new(m / e, n / e, 0), e as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn coords() -> impl Strategy<Value = KleinCoordinates> {
        (-6i64..=6, -6i64..=6, -6i64..=6).prop_map(|(m, n, l)| KleinCoordinates::new(m, n, l))
    }

    #[test]
    fn generators_satisfy_bundle_relations() {
        let c1 = KleinCoordinates::of_letter(Letter::new(0, false));
        let c2 = KleinCoordinates::of_letter(Letter::new(1, false));
        let f = KleinCoordinates::f();
        let rel = c1.power(2).multiply(c2.power(2));
        assert_eq!(rel, KleinCoordinates::IDENTITY);
        assert_eq!(c1.multiply(f).multiply(c1.inverse()), f.inverse());
        assert_eq!(c2.multiply(f).multiply(c2.inverse()), f.inverse());
        assert_eq!(c1.multiply(c2), KleinCoordinates::g());
        assert_eq!(c2.inverse(), KleinCoordinates::h());
    }

    #[test]
    fn base_letters_spell_the_element() {
        for m in -4..=4 {
            for n in -4..=4 {
                let c = KleinCoordinates::new(m, n, 0);
                assert_eq!(KleinCoordinates::from_letters(&c.base_letters()), c);
            }
        }
    }

    #[test]
    fn roots() {
        let r = |m, n| KleinCoordinates::new(m, n, 0).primitive_root();
        assert_eq!(r(4, 0), (KleinCoordinates::new(1, 0, 0), 4));
        assert_eq!(r(3, 5), (KleinCoordinates::new(3, 1, 0), 5));
        assert_eq!(r(0, -4), (KleinCoordinates::new(0, -1, 0), 4));
        assert_eq!(r(2, 4), (KleinCoordinates::new(1, 2, 0), 2));
        assert_eq!(r(3, 2), (KleinCoordinates::new(3, 2, 0), 1));
    }

    proptest! {
        #[test]
        fn group_axioms(a in coords(), b in coords(), c in coords()) {
            prop_assert_eq!(a.multiply(b).multiply(c), a.multiply(b.multiply(c)));
            prop_assert_eq!(a.multiply(a.inverse()), KleinCoordinates::IDENTITY);
            prop_assert_eq!(a.inverse().multiply(a), KleinCoordinates::IDENTITY);
        }

        #[test]
        fn conjugators_conjugate(a in coords(), c in coords()) {
            let b = c.multiply(a).multiply(c.inverse());
            let found = a.conjugator_to(b);
            prop_assert!(found.is_some());
            let d = found.unwrap();
            prop_assert_eq!(d.multiply(a).multiply(d.inverse()), b);
            let e = a.base_conjugator_to(&b).unwrap();
            prop_assert_eq!(e.multiply(a.base()).multiply(e.inverse()).base(), b.base());
        }

        #[test]
        fn roots_are_roots(m in -8i64..=8, n in -8i64..=8) {
            prop_assume!((m, n) != (0, 0));
            let x = KleinCoordinates::new(m, n, 0);
            let (r, e) = x.primitive_root();
            prop_assert_eq!(r.power(e as i64).base(), x);
            // no element of the search box has a larger power equal to x
            for a in -8i64..=8 {
                for b in -8i64..=8 {
                    for k in (e as i64 + 1)..=16 {
                        prop_assert_ne!(KleinCoordinates::new(a, b, 0).power(k).base(), x);
                    }
                }
            }
        }
    }
}
