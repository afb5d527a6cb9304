//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use curvespace::classify::{classify_pi1, classify_pin, regular_homotopy_equivalent, GroupKind};
use curvespace::flatcurves::{
    parse_curve, turning_number, CurveModel, CurveOnSurface, Point, Polyline,
};
use curvespace::oracle::{coset_count, finite_elements, verify_classification, SearchBound};
use curvespace::surfaces::Abelianization;
use curvespace::words::{Decision, KleinCoordinates, Letter};
use curvespace::{Error, StWord, Surface, SurfaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Case {
    spec: &'static str,
    word: String,
    case: &'static str,
    kind: GroupKind,
}

fn case(spec: &'static str, word: impl Into<String>, case: &'static str, kind: GroupKind) -> Case {
    Case {
        spec,
        word: word.into(),
        case,
        kind,
    }
}

fn klein(m: i64, n: i64, l: i64) -> String {
    let k = Surface::new(SurfaceSpec::KLEIN_BOTTLE);
    let c = KleinCoordinates::new(m, n, l);
    k.st_element(&c.base().base_letters(), c.l)
        .unwrap()
        .to_string()
}

fn battery() -> Vec<Case> {
    use GroupKind::*;
    let mut out = Vec::new();
    for w in ["f", "1", "f^2", "f^3", "f^-1"] {
        out.push(case("orientable:0:0", w, "Thm 1", Z2));
    }
    for w in ["a1", "b1 f", "a1^2 b1^-3 f^2", "1", "f^5"] {
        out.push(case("orientable:1:0", w, "Thm 2", ZxZxZ));
    }
    for w in ["c1", "f", "c1 f", "1", "c1^3"] {
        out.push(case("nonorientable:1:0", w, "Thm 4", Z4));
    }
    for (m, n, l) in [(0, 1, 0), (1, 1, 2), (0, -1, -1), (2, 3, 0), (-1, 5, 1)] {
        out.push(case("nonorientable:2:0", klein(m, n, l), "Thm 5 II", Z));
    }
    for (m, n, l) in [(1, 0, 0), (0, 2, 1), (2, -2, 0), (0, 0, 3), (-1, 4, -2)] {
        out.push(case(
            "nonorientable:2:0",
            klein(m, n, l),
            "Thm 5 I b",
            ZxZxZ,
        ));
    }
    for (m, n, l) in [(0, 0, 0), (0, 2, 0), (0, -2, 0), (0, 4, 0), (0, -6, 0)] {
        out.push(case(
            "nonorientable:2:0",
            klein(m, n, l),
            "Thm 5 I a",
            FullSTGroup,
        ));
    }
    for (s, w) in [
        ("orientable:2:0", "a1"),
        ("orientable:2:0", "a1 b1 f^2"),
        ("orientable:2:0", "a1 b2 a1 b2 f^-1"),
        ("orientable:3:0", "a3 B2"),
        ("orientable:3:0", "a1 a2 f"),
    ] {
        out.push(case(s, w, "Thm 3 I", ZxZ));
    }
    for (s, w) in [
        ("orientable:2:0", "1"),
        ("orientable:2:0", "f"),
        ("orientable:2:0", "f^-3"),
        ("orientable:3:0", "f^2"),
        ("orientable:4:0", "a1 A1 f"),
    ] {
        out.push(case(s, w, "Thm 3 II", FullSTGroup));
    }
    for (s, w) in [
        ("nonorientable:3:0", "c1"),
        ("nonorientable:3:0", "c1 f^2"),
        ("nonorientable:3:0", "c1 c2 c3"),
        ("nonorientable:3:0", "c2 f^-1"),
        ("nonorientable:4:0", "c1"),
    ] {
        out.push(case(s, w, "Thm 6 I", Z));
    }
    for (s, w) in [
        ("nonorientable:3:0", "c1 c2"),
        ("nonorientable:3:0", "c1 c2 c1 c2 f"),
        ("nonorientable:3:0", "c1 c3 f^-2"),
        ("nonorientable:4:0", "c1 c2 c3 c4"),
        ("nonorientable:3:0", "c1 c2 f^3"),
    ] {
        out.push(case(s, w, "Thm 6 II a", ZxZ));
    }
    for (s, w) in [
        ("nonorientable:3:0", "c1^2 f"),
        ("nonorientable:3:0", "c1^2 f^-1"),
        ("nonorientable:3:0", "c2^4 f^3"),
        ("nonorientable:3:0", "c3^2 f^2"),
        ("nonorientable:4:0", "c1^2 f"),
    ] {
        out.push(case(s, w, "Thm 6 II a", ZxZ));
    }
    for (s, w) in [
        ("nonorientable:3:0", "c1^2"),
        ("nonorientable:3:0", "c2^2"),
        ("nonorientable:3:0", "c1^4"),
        ("nonorientable:3:0", "c1 c2 c3 c1 c2 c3"),
        ("nonorientable:4:0", "c2^2"),
    ] {
        out.push(case(s, w, "Thm 6 II b", KleinBottleGroup));
    }
    for (s, w) in [
        ("nonorientable:3:0", "f"),
        ("nonorientable:3:0", "f^-1"),
        ("nonorientable:3:0", "f^2"),
        ("nonorientable:4:0", "f^3"),
        ("nonorientable:5:0", "f"),
    ] {
        out.push(case(s, w, "Thm 6 III a", OrientationPreservingSubgroup));
    }
    for (s, w) in [
        ("nonorientable:3:0", "1"),
        ("nonorientable:3:0", "c1 C1"),
        ("nonorientable:4:0", "1"),
        ("nonorientable:5:0", "1"),
        ("nonorientable:3:0", "c1 f C1 f"),
    ] {
        out.push(case(s, w, "Thm 6 III b", FullSTGroup));
    }
    out
}

fn parse(c: &Case) -> (Surface, StWord) {
    let s = Surface::new(c.spec.parse().unwrap());
    let xi = s.parse_st_word(&c.word).unwrap();
    (s, xi)
}

fn theorem_table() -> Outcome {
    let cases = battery();
    let mut slowest = Duration::ZERO;
    for c in &cases {
        let (s, xi) = parse(c);
        let start = Instant::now();
        let r = classify_pi1(&s, &xi).map_err(|e| format!("{} {}: {e}", c.spec, c.word))?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure((r.case, r.group.kind) == (c.case, c.kind), || {
            format!(
                "{} {}: got {} / {}, expected {} / {}",
                c.spec, c.word, r.case, r.group.kind, c.case, c.kind
            )
        })?;
        ensure(took < Duration::from_secs(1), || {
            format!("{} {} took {took:?}", c.spec, c.word)
        })?;
    }
    Ok(format!("{} inputs, slowest {slowest:?}", cases.len()))
}

fn oracle_agreement() -> Outcome {
    let b = SearchBound::new(4, 3, 4).unwrap();
    let start = Instant::now();
    let mut elements = 0;
    for c in &battery() {
        let (s, xi) = parse(c);
        let v = verify_classification(&s, &xi, &b).map_err(|e| e.to_string())?;
        ensure(v.passed(), || {
            format!(
                "{} {}: {}",
                c.spec,
                c.word,
                v.counterexample.clone().unwrap()
            )
        })?;
        elements += v.centralizer_size;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!(
        "{elements} centralizer elements checked in {took:?}"
    ))
}

fn higher_homotopy() -> Outcome {
    let round = [SurfaceSpec::SPHERE, SurfaceSpec::PROJECTIVE_PLANE];
    for spec in round {
        ensure(classify_pin(spec, 2).unwrap().kind == GroupKind::Z, || {
            format!("{spec} n=2")
        })?;
        let g3 = classify_pin(spec, 3).unwrap();
        ensure(
            g3.kind == GroupKind::SymbolicSphereSum(3) && g3.summary().ends_with("= Z + pi_4(S^2)"),
            || format!("{spec} n=3: {}", g3.summary()),
        )?;
        for n in 4..=10 {
            let g = classify_pin(spec, n).unwrap();
            ensure(
                g.kind == GroupKind::SymbolicSphereSum(n)
                    && g.summary() == format!("pi_{n}(S^2) + pi_{}(S^2)", n + 1),
                || format!("{spec} n={n}: {}", g.summary()),
            )?;
        }
    }
    let others = [
        "orientable:1:0",
        "nonorientable:2:0",
        "orientable:2:0",
        "orientable:5:0",
        "nonorientable:3:0",
        "nonorientable:6:0",
        "orientable:0:1",
        "orientable:1:2",
        "nonorientable:1:1",
    ];
    for spec in others {
        let spec: SurfaceSpec = spec.parse().unwrap();
        for n in 2..=10 {
            ensure(
                classify_pin(spec, n).unwrap().kind == GroupKind::TrivialGroup,
                || format!("{spec} n={n}"),
            )?;
        }
    }
    for n in [0, 1] {
        ensure(
            classify_pin(SurfaceSpec::SPHERE, n) == Err(Error::DegreeTooSmall(n)),
            || format!("n={n} accepted"),
        )?;
    }
    Ok("S^2, RP^2 and 9 other surfaces, n = 2..10".into())
}

fn random_element(s: &Surface, rng: &mut ChaCha8Rng) -> StWord {
    let len = rng.gen_range(0..=6);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter::new(rng.gen_range(0..s.rank().max(1)), rng.gen()))
        .filter(|l| l.generator() < s.rank())
        .collect();
    s.st_element(&letters, rng.gen_range(-3..=3)).unwrap()
}

fn property_suite() -> Outcome {
    const TRIALS: usize = 10_000;
    let regimes = [
        "orientable:0:0",
        "nonorientable:1:0",
        "orientable:1:0",
        "nonorientable:2:0",
        "orientable:2:0",
        "nonorientable:3:0",
        "orientable:1:1",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for spec in regimes {
        let s = Surface::new(spec.parse().unwrap());
        let f = s.fiber_class();
        for _ in 0..TRIALS {
            let (u, v, w) = (
                random_element(&s, &mut rng),
                random_element(&s, &mut rng),
                random_element(&s, &mut rng),
            );
            let m = |a: &StWord, b: &StWord| s.st_multiply(a, b).unwrap();
            ensure(m(&m(&u, &v), &w) == m(&u, &m(&v, &w)), || {
                format!("{spec}: associativity ({u}) ({v}) ({w})")
            })?;
            let ui = s.st_invert(&u).unwrap();
            ensure(m(&u, &ui).is_trivial() && m(&ui, &u).is_trivial(), || {
                format!("{spec}: inverse of {u}")
            })?;
            let eps = |x: &StWord| x.orientation_character().sign();
            ensure(eps(&m(&u, &v)) == eps(&u) * eps(&v), || {
                format!("{spec}: character of ({u}) ({v})")
            })?;
            let twisted = m(&s.st_power(&f, eps(&u)).unwrap(), &u);
            ensure(m(&u, &f) == twisted, || {
                format!("{spec}: twist law for {u}")
            })?;
            if s.spec().regime().is_finite() || u.base().is_trivial() {
                continue;
            }
            let d = s
                .decompose(&u)
                .map_err(|e| format!("{spec}: decompose {u}: {e}"))?;
            let back = m(
                &s.st_power(&d.root_lift, d.exponent as i64).unwrap(),
                &s.st_power(&f, d.fiber).unwrap(),
            );
            ensure(back == u, || {
                format!("{spec}: decompose round trip for {u} gave {d}")
            })?;
        }
    }
    Ok(format!(
        "{TRIALS} trials in each of {} regimes",
        regimes.len()
    ))
}

fn presentation_sanity() -> Outcome {
    for g in [2u32, 3] {
        let s = Surface::new(SurfaceSpec::orientable(g, 0));
        let ab = s.st_presentation().abelianization();
        let expected = Abelianization {
            free_rank: 2 * g as usize,
            torsion: vec![u64::from(2 * g - 2)],
        };
        ensure(ab == expected, || format!("genus {g}: {ab}"))?;
    }
    for (spec, n) in [(SurfaceSpec::SPHERE, 2), (SurfaceSpec::PROJECTIVE_PLANE, 4)] {
        let s = Surface::new(spec);
        let tc = coset_count(s.st_presentation(), 10_000);
        let listed = finite_elements(&s).map_err(|e| e.to_string())?.len();
        ensure(tc == Some(n) && listed == n, || {
            format!("{spec}: cosets {tc:?}, elements {listed}")
        })?;
    }
    Ok("Z^4 + Z/2, Z^6 + Z/4; orders 2 and 4".into())
}

fn regular_polygon(k: usize, phase: f64, r: f64) -> Vec<Point> {
    (0..k)
        .map(|i| {
            let t = phase + std::f64::consts::TAU * i as f64 / k as f64;
            Point::new(0.3 + r * t.cos(), 0.4 + r * t.sin())
        })
        .collect()
}

fn figure_eight() -> &'static str {
    "model=plane\n0.5,0.5\n1.5,1.5\n2.5,0.5\n1.5,-0.5\n0.5,0.5\n-0.5,1.5\n-1.5,0.5\n-0.5,-0.5\n"
}

fn curve_ingestion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let k = rng.gen_range(3..40);
        let p = Polyline::new(regular_polygon(
            k,
            rng.gen_range(0.0..6.3),
            rng.gen_range(0.1..5.0),
        ))
        .unwrap();
        let (ccw, cw) = (
            turning_number(&p).unwrap(),
            turning_number(&p.reversed()).unwrap(),
        );
        ensure((ccw, cw) == (1, -1), || {
            format!("{k}-gon turned {ccw}, reversed {cw}")
        })?;
    }
    let eight = parse_curve(figure_eight()).map_err(|e| e.to_string())?;
    for (spec, case, kind) in [
        ("orientable:1:0", "Thm 2", GroupKind::ZxZxZ),
        ("orientable:2:0", "Thm 3 II", GroupKind::FullSTGroup),
        ("nonorientable:3:0", "Thm 6 III b", GroupKind::FullSTGroup),
    ] {
        let s = Surface::new(spec.parse().unwrap());
        let lift = eight.lift(&s).unwrap();
        ensure(lift.is_trivial(), || {
            format!("{spec}: figure eight lifts to {lift}")
        })?;
        let r = classify_pi1(&s, &lift).unwrap();
        ensure((r.case, r.group.kind) == (case, kind), || {
            format!("{spec}: {} {}", r.case, r.group.kind)
        })?;
        // on the torus the full bundle group is Z^3; the witnesses must be
        // all of its generators
        let all: Vec<StWord> = (0..=s.rank()).map(|i| s.st_generator(i).unwrap()).collect();
        ensure(r.group.witnesses == all, || {
            format!("{spec}: witnesses are not the whole group")
        })?;
    }
    let t = Surface::new(SurfaceSpec::TORUS);
    let geodesic = CurveOnSurface::new(
        CurveModel::Torus,
        vec![
            Point::new(0.2, 0.5),
            Point::new(0.6, 0.5),
            Point::new(0.9, 0.5),
            Point::new(1.2, 0.5),
        ],
    )
    .map_err(|e| e.to_string())?;
    let lift = geodesic.lift(&t).unwrap();
    ensure(lift == t.parse_st_word("a1").unwrap(), || {
        format!("geodesic lifts to {lift}")
    })?;
    let kind = classify_pi1(&t, &lift).unwrap().group.kind;
    ensure(kind == GroupKind::ZxZxZ, || {
        format!("geodesic classified {kind}")
    })?;
    Ok("200 convex polygons, figure eight, horizontal geodesic".into())
}

fn regular_homotopy() -> Outcome {
    let t = Surface::new(SurfaceSpec::TORUS);
    let mut table = String::new();
    for a in -2..=2 {
        for b in -2..=2 {
            let got = regular_homotopy_equivalent(
                &t,
                &t.st_element(&[], a).unwrap(),
                &t.st_element(&[], b).unwrap(),
            )
            .unwrap();
            ensure(got == Decision::from_bool(a == b), || {
                format!("torus ({a}, {b}): {got}")
            })?;
            table.push(if got.is_yes() { '1' } else { '0' });
        }
    }
    let eight = parse_curve(figure_eight()).unwrap().lift(&t).unwrap();
    ensure(
        regular_homotopy_equivalent(&t, &eight, &t.st_identity()).unwrap() == Decision::Yes,
        || "figure eight not equivalent to (1, 0) on the torus".into(),
    )?;
    let k = Surface::new(SurfaceSpec::KLEIN_BOTTLE);
    let fib = |n| k.st_element(&[], n).unwrap();
    let same = regular_homotopy_equivalent(&k, &fib(1), &fib(-1)).unwrap();
    let apart = regular_homotopy_equivalent(&k, &fib(1), &fib(2)).unwrap();
    ensure(same == Decision::Yes && apart == Decision::No, || {
        format!("Klein: {same}, {apart}")
    })?;
    Ok(format!("torus table {table}, Klein f ~ f^-1, f !~ f^2"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("theorem table reproduction", theorem_table),
        ("oracle agreement", oracle_agreement),
        ("higher homotopy", higher_homotopy),
        ("algebra property suite", property_suite),
        ("presentation sanity", presentation_sanity),
        ("curve ingestion", curve_ingestion),
        ("regular homotopy", regular_homotopy),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  criterion {}  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {}  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
