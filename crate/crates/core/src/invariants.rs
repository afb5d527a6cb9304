//! Cheap invariants that certify non-triviality and non-conjugacy.
//!
//! Two kinds of homomorphisms are used: abelianization, and maps onto free
//! groups that kill the surface relator. Conjugate elements have equal
//! abelian images and conjugate free images.

use crate::surfaces::{Regime, Surface};
use crate::words::{concat, free_reduce, invert_letters, Letter};

/// Exponent-sum vector over the surface generators.
pub fn abelian_image(rank: usize, letters: &[Letter]) -> Vec<i64> {
    let mut v = vec![0; rank];
    for l in letters {
        v[l.generator()] += l.exponent();
    }
    v
}

/// True iff `d` lies in the integer span of the relator vectors.
fn in_relator_span(surface: &Surface, d: &[i64]) -> bool {
    let relators: Vec<Vec<i64>> = surface
        .presentation()
        .relators
        .iter()
        .map(|r| abelian_image(surface.rank(), r))
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    match relators.as_slice() {
        [] => d.iter().all(|&x| x == 0),
        [r] => {
            let (i, &ri) = r.iter().enumerate().find(|(_, &x)| x != 0).unwrap();
            if d[i] % ri != 0 {
                return false;
            }
            let t = d[i] / ri;
            d.iter().zip(r).all(|(&a, &b)| a == t * b)
        }
        _ => unreachable!("surface presentations have at most one relator"),
    }
}

/// A homomorphism to a free group, given by the image of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeRetraction {
    pub name: String,
    pub images: Vec<Vec<Letter>>,
}

impl FreeRetraction {
    pub fn apply(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::new();
        for l in letters {
            let img = &self.images[l.generator()];
            if l.is_inverse() {
                out.extend(invert_letters(img));
            } else {
                out.extend_from_slice(img);
            }
        }
        free_reduce(&mut out);
        out
    }
}

fn x(i: usize) -> Letter {
    Letter::new(i, false)
}

fn power(l: Letter, t: i64) -> Vec<Letter> {
    let unit = if t < 0 { l.inverse() } else { l };
    vec![unit; t.unsigned_abs() as usize]
}

/// Retractions onto free groups available for a closed surface.
pub fn free_retractions(surface: &Surface) -> Vec<FreeRetraction> {
    let spec = surface.spec();
    if !spec.is_closed() || spec.genus() == 0 {
        return Vec::new();
    }
    let rank = surface.rank();
    let g = spec.genus() as usize;
    let mut out = Vec::new();
    if spec.is_orientable() {
        for (name, keep) in [("a", 0), ("b", 1)] {
            let images = (0..rank)
                .map(|i| {
                    if i % 2 == keep {
                        vec![x(i / 2)]
                    } else {
                        vec![]
                    }
                })
                .collect();
            out.push(FreeRetraction {
                name: format!("{name}-handles"),
                images,
            });
        }
        for i in 0..g {
            for j in 0..g {
                if i == j {
                    continue;
                }
                for t in -1..=1 {
                    let mut images = vec![Vec::new(); rank];
                    images[2 * i] = vec![x(0)];
                    images[2 * i + 1] = vec![x(1)];
                    images[2 * j] = concat(&[&[x(1)], &power(x(0), t)]);
                    images[2 * j + 1] = vec![x(0)];
                    out.push(FreeRetraction {
                        name: format!("handles {} {} twist {t}", i + 1, j + 1),
                        images,
                    });
                }
            }
        }
    } else {
        // c_i -> w, c_(i+1) -> w^-1 kills c_i^2 c_(i+1)^2
        for i in 0..g {
            let i2 = (i + 1) % g;
            if i2 == i {
                continue;
            }
            out.push(FreeRetraction {
                name: format!("crosscaps {} {}", i + 1, i2 + 1),
                images: images_pair(rank, i, i2),
            });
            for j in 0..g {
                let j2 = (j + 1) % g;
                if [i, i2].contains(&j) || [i, i2].contains(&j2) || j == j2 {
                    continue;
                }
                let mut images = images_pair(rank, i, i2);
                images[j] = vec![x(1)];
                images[j2] = vec![x(1).inverse()];
                out.push(FreeRetraction {
                    name: format!("crosscaps {} {} {} {}", i + 1, i2 + 1, j + 1, j2 + 1),
                    images,
                });
            }
        }
    }
    out
}

fn images_pair(rank: usize, i: usize, i2: usize) -> Vec<Vec<Letter>> {
    let mut images = vec![Vec::new(); rank];
    images[i] = vec![x(0)];
    images[i2] = vec![x(0).inverse()];
    images
}

/// Least rotation of the cyclic reduction; a complete conjugacy invariant
/// in a free group.
fn free_cyclic_key(letters: &[Letter]) -> Vec<Letter> {
    let mut core = letters.to_vec();
    free_reduce(&mut core);
    while core.len() >= 2 && core[0] == core[core.len() - 1].inverse() {
        core.pop();
        core.remove(0);
    }
    (0..core.len().max(1))
        .map(|i| {
            let i = i.min(core.len());
            let mut r = core[i..].to_vec();
            r.extend_from_slice(&core[..i]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// A reason why `u` and `v` cannot be conjugate, if one of the invariants
/// separates them.
pub fn non_conjugacy_certificate(surface: &Surface, u: &[Letter], v: &[Letter]) -> Option<String> {
    if surface.regime() == Regime::Sphere {
        return None;
    }
    let rank = surface.rank();
    let d: Vec<i64> = abelian_image(rank, u)
        .iter()
        .zip(abelian_image(rank, v))
        .map(|(a, b)| a - b)
        .collect();
    if !in_relator_span(surface, &d) {
        return Some("abelianization".to_string());
    }
    for r in free_retractions(surface) {
        if free_cyclic_key(&r.apply(u)) != free_cyclic_key(&r.apply(v)) {
            return Some(format!("free retraction ({})", r.name));
        }
    }
    None
}

pub fn may_be_conjugate(surface: &Surface, u: &[Letter], v: &[Letter]) -> bool {
    non_conjugacy_certificate(surface, u, v).is_none()
}

/// A reason why `w` is not the identity, if one of the invariants sees it.
pub fn nontriviality_certificate(surface: &Surface, w: &[Letter]) -> Option<String> {
    non_conjugacy_certificate(surface, w, &[])
}
