use curvespace::invariants::nontriviality_certificate;
use curvespace::oracle::{
    bounded_centralizer, bounded_is_trivial, bounded_is_trivial_in, OracleVerdict, SearchBound,
};
use curvespace::surfaces::Presentation;
use curvespace::words::Letter;
use curvespace::{Surface, SurfaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_reduced(rank: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..rank {
                for inv in [false, true] {
                    let l = Letter::new(g, inv);
                    if w.last() != Some(&l.inverse()) {
                        let mut v = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn genus_two_identity_agrees_with_search() {
    let s = Surface::new(SurfaceSpec::orientable(2, 0));
    let b = SearchBound::new(8, 0, 3).unwrap();
    let words = all_reduced(4, 8);
    assert_eq!(words.len(), 1 + 8 * (7usize.pow(8) - 1) / 6);
    let mut trivial = 0;
    let mut searched = 0;
    for w in &words {
        let word = s.word(w).unwrap();
        if s.is_trivial(&word).unwrap() {
            trivial += 1;
            assert_eq!(
                bounded_is_trivial(&s, &word, &b),
                OracleVerdict::Trivial,
                "{word}"
            );
        } else if nontriviality_certificate(&s, w).is_none() {
            searched += 1;
            assert!(!bounded_is_trivial(&s, &word, &b).is_trivial(), "{word}");
        }
    }
    // the empty word and the 16 cyclic conjugates of the relator and its inverse
    assert_eq!(trivial, 17);
    println!("{searched} uncertified nontrivial words searched");
}

#[test]
fn inserted_relators_are_trivial_for_both() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let b = SearchBound::new(8, 0, 6).unwrap();
    for spec in [
        SurfaceSpec::orientable(2, 0),
        SurfaceSpec::nonorientable(3, 0).unwrap(),
        SurfaceSpec::KLEIN_BOTTLE,
    ] {
        let s = Surface::new(spec);
        let rel = s.presentation().relators[0].clone();
        for _ in 0..40 {
            // x r x^-1 with a short random x
            let x: Vec<Letter> = (0..rng.gen_range(0..3))
                .map(|_| Letter::new(rng.gen_range(0..s.rank()), rng.gen()))
                .collect();
            let mut w = x.clone();
            let rot = rng.gen_range(0..rel.len());
            w.extend_from_slice(&rel[rot..]);
            w.extend_from_slice(&rel[..rot]);
            w.extend(x.iter().rev().map(|l| l.inverse()));
            let word = s.word(&w).unwrap();
            assert!(s.is_trivial(&word).unwrap());
            assert_eq!(
                bounded_is_trivial(&s, &word, &b),
                OracleVerdict::Trivial,
                "{spec} {word}"
            );
        }
    }
}

#[test]
fn relator_conjugated_by_a1() {
    let s = Surface::new(SurfaceSpec::orientable(2, 0));
    let w = s.parse_word("a1 a1 b1 A1 B1 a2 b2 A2 B2 A1").unwrap();
    assert!(s.is_trivial(&w).unwrap());
    assert!(bounded_is_trivial(&s, &w, &SearchBound::default()).is_trivial());
}

fn spell(p: &Presentation, text: &str) -> Vec<Letter> {
    text.split_whitespace()
        .map(|t| {
            let lower = t.to_lowercase();
            Letter::new(p.generator_index(&lower).unwrap(), t != lower)
        })
        .collect()
}

fn substitute(word: &[Letter], images: &[Vec<Letter>]) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in word {
        let img = &images[l.generator()];
        if l.is_inverse() {
            out.extend(img.iter().rev().map(|x| x.inverse()));
        } else {
            out.extend_from_slice(img);
        }
    }
    out
}

/// The Klein bottle bundle group in coordinates g, h, f with
/// `h g^(+-1) = g^(-+1) h`, `h f^(+-1) = f^(-+1) h`, `g f = f g`.
fn klein_gh() -> Presentation {
    let mut p = Surface::new(SurfaceSpec::KLEIN_BOTTLE)
        .st_presentation()
        .clone();
    for (g, name) in p.generators.iter_mut().zip(["g", "h", "f"]) {
        g.name = name.into();
    }
    let rels = ["h g H g", "h G H G", "h f H f", "h F H F", "g f G F"];
    p.relators = rels.iter().map(|r| spell(&p, r)).collect();
    p
}

#[test]
fn klein_bundle_presentations_agree() {
    let k = Surface::new(SurfaceSpec::KLEIN_BOTTLE);
    let ours = k.st_presentation();
    let theirs = klein_gh();
    let b = SearchBound::default();
    // g -> c1 c2, h -> c2^-1, f -> f
    let forward = vec![spell(ours, "c1 c2"), spell(ours, "C2"), spell(ours, "f")];
    for r in &theirs.relators {
        let image = substitute(r, &forward);
        assert!(
            bounded_is_trivial_in(ours, &image, &b).is_trivial(),
            "{}",
            ours.spell(&image)
        );
    }
    // c1 -> g h, c2 -> h^-1, f -> f
    let backward = vec![
        spell(&theirs, "g h"),
        spell(&theirs, "H"),
        spell(&theirs, "f"),
    ];
    for r in &ours.relators {
        let image = substitute(r, &backward);
        assert!(
            bounded_is_trivial_in(&theirs, &image, &b).is_trivial(),
            "{}",
            theirs.spell(&image)
        );
    }
    // the composites fix every generator
    for (i, img) in forward.iter().enumerate() {
        let there_and_back = substitute(img, &backward);
        let mut w = there_and_back.clone();
        w.push(Letter::new(i, true));
        assert!(bounded_is_trivial_in(&theirs, &w, &b).is_trivial());
    }
}

#[test]
fn bundle_relators_are_trivial_for_the_search() {
    let b = SearchBound::default();
    for spec in [
        "orientable:2:0",
        "nonorientable:3:0",
        "nonorientable:2:0",
        "orientable:1:0",
        "orientable:0:0",
    ] {
        let s = Surface::new(spec.parse().unwrap());
        let p = s.st_presentation();
        for r in &p.relators {
            assert!(
                bounded_is_trivial_in(p, r, &b).is_trivial(),
                "{spec} {}",
                p.spell(r)
            );
            assert!(s.st_from_bundle_letters(r).unwrap().is_trivial());
        }
    }
}

#[test]
fn centralizer_is_closed_under_inversion() {
    let b = SearchBound::new(3, 2, 3).unwrap();
    for (spec, word) in [
        ("orientable:2:0", "a1 b1"),
        ("nonorientable:3:0", "c1 f"),
        ("nonorientable:2:0", "c1 c2 f^2"),
        ("orientable:1:0", "a1"),
        ("orientable:1:1", "a1 b1 f"),
        ("nonorientable:1:0", "c1"),
    ] {
        let s = Surface::new(spec.parse().unwrap());
        let xi = s.parse_st_word(word).unwrap();
        let c = bounded_centralizer(&s, &xi, &b).unwrap();
        assert!(c.contains(&s.st_identity()), "{spec}");
        if xi.base().len() <= 3 && xi.fiber().abs() <= 2 {
            assert!(c.contains(&xi), "{spec} {word}");
        }
        for z in &c {
            let inv = s.st_invert(z).unwrap();
            if inv.base().len() <= 3 && inv.fiber().abs() <= 2 {
                assert!(c.contains(&inv), "{spec} {z}");
            }
        }
        let mut sorted = c.clone();
        sorted.sort_by_key(|z| (z.base().len(), z.base().letters().to_vec(), z.fiber()));
        assert_eq!(sorted, c);
    }
}
