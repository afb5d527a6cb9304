//! Brute-force checks that do not rely on the rewriting engine.
//!
//! Identity checking searches over relator replacements in the free group,
//! centralizers are enumerated over a box of normal forms, and finite
//! groups are counted by coset enumeration.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::classify::{classify_pi1, ClassificationReport, GroupKind};
use crate::error::{Error, Result};
use crate::invariants::{abelian_image, nontriviality_certificate};
use crate::stbundle::StWord;
use crate::surfaces::{Orientation, Presentation, Regime, Surface};
use crate::words::dehn::reduced_words;
use crate::words::{free_reduce, invert_letters, Letter, Word};

/// Limits for the brute-force searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBound {
    /// Longest base word enumerated.
    pub max_word_length: usize,
    /// Largest `|fiber|` enumerated.
    pub max_fiber: i64,
    /// Relator replacements allowed, and the exponent range of witness
    /// products.
    pub max_depth: usize,
}

impl Default for SearchBound {
    fn default() -> Self {
        SearchBound {
            max_word_length: 8,
            max_fiber: 4,
            max_depth: 6,
        }
    }
}

impl SearchBound {
    pub fn new(max_word_length: usize, max_fiber: i64, max_depth: usize) -> Result<Self> {
        if max_word_length == 0 {
            return Err(Error::InvalidBound("word length must be positive".into()));
        }
        if max_fiber < 0 {
            return Err(Error::InvalidBound(
                "fiber bound must be nonnegative".into(),
            ));
        }
        if max_depth == 0 {
            return Err(Error::InvalidBound("depth must be positive".into()));
        }
        Ok(SearchBound {
            max_word_length,
            max_fiber,
            max_depth,
        })
    }
}

/// Result of a bounded identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    /// A sequence of relator replacements reaches the empty word.
    Trivial,
    /// An invariant separates the word from the identity.
    Nontrivial(String),
    /// Neither happened within the bound.
    Undecided,
}

impl OracleVerdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, OracleVerdict::Trivial)
    }
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleVerdict::Trivial => f.write_str("true"),
            OracleVerdict::Nontrivial(why) => write!(f, "false ({why})"),
            OracleVerdict::Undecided => f.write_str("undecided"),
        }
    }
}

/// Words explored before the identity search gives up.
const STATE_CAP: usize = 200_000;

/// Whether `v` lies in the integer row span of `rows`.
pub fn lattice_contains(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let cols = v.len();
    let mut rows: Vec<Vec<i64>> = rows
        .iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .cloned()
        .collect();
    let mut pivots: Vec<(usize, Vec<i64>)> = Vec::new();
    for c in 0..cols {
        loop {
            let mut live: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if live.len() <= 1 {
                if let Some(&i) = live.first() {
                    pivots.push((c, rows.remove(i)));
                }
                break;
            }
            live.sort_by_key(|&i| rows[i][c].abs());
            let p = live[0];
            let pivot = rows[p].clone();
            for &i in &live[1..] {
                let q = rows[i][c] / pivot[c];
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
            }
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    let mut v = v.to_vec();
    for (c, row) in &pivots {
        if v[*c] % row[*c] != 0 {
            return false;
        }
        let q = v[*c] / row[*c];
        for (x, y) in v.iter_mut().zip(row) {
            *x -= q * y;
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Exponent-sum obstruction: the word's image is outside the relator span.
pub fn abelian_certificate(p: &Presentation, letters: &[Letter]) -> Option<String> {
    let rank = p.rank();
    let rows: Vec<Vec<i64>> = p.relators.iter().map(|r| abelian_image(rank, r)).collect();
    let v = abelian_image(rank, letters);
    (!lattice_contains(&rows, &v)).then(|| format!("abelianization {v:?}"))
}

/// Every rotation of every relator and of its inverse.
fn relator_cycles(p: &Presentation) -> Vec<Vec<Letter>> {
    let mut set = HashSet::new();
    for r in &p.relators {
        let mut r = r.clone();
        free_reduce(&mut r);
        for w in [r.clone(), invert_letters(&r)] {
            for i in 0..w.len() {
                let mut c = w[i..].to_vec();
                c.extend_from_slice(&w[..i]);
                set.insert(c);
            }
        }
    }
    let mut out: Vec<_> = set.into_iter().collect();
    out.sort();
    out
}

/// Searches for a derivation of the identity from `letters` in the group
/// presented by `p`. A move replaces a prefix `u` of a cyclic relator
/// `u v` occurring in the word by `v^-1` (an empty prefix inserts the
/// relator).
pub fn bounded_is_trivial_in(
    p: &Presentation,
    letters: &[Letter],
    b: &SearchBound,
) -> OracleVerdict {
    let mut start = letters.to_vec();
    free_reduce(&mut start);
    if start.is_empty() {
        return OracleVerdict::Trivial;
    }
    if let Some(why) = abelian_certificate(p, &start) {
        return OracleVerdict::Nontrivial(why);
    }
    let cycles = relator_cycles(p);
    let longest = cycles.iter().map(Vec::len).max().unwrap_or(0);
    let cap = start.len().max(b.max_word_length) + longest;

    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut heap = BinaryHeap::new();
    let mut order = 0usize;
    seen.insert(start.clone());
    heap.push(Reverse((start.len(), 0usize, order, start)));
    while let Some(Reverse((_, depth, _, w))) = heap.pop() {
        if depth >= b.max_depth {
            continue;
        }
        for i in 0..=w.len() {
            for c in &cycles {
                for k in 0..=c.len().min(w.len() - i) {
                    if w[i..i + k] != c[..k] {
                        break;
                    }
                    if k == 0 && w.len() + c.len() > cap {
                        continue;
                    }
                    let mut next = w[..i].to_vec();
                    next.extend(invert_letters(&c[k..]));
                    next.extend_from_slice(&w[i + k..]);
                    free_reduce(&mut next);
                    if next.is_empty() {
                        return OracleVerdict::Trivial;
                    }
                    if next.len() > cap || !seen.insert(next.clone()) {
                        continue;
                    }
                    if seen.len() > STATE_CAP {
                        return OracleVerdict::Undecided;
                    }
                    order += 1;
                    heap.push(Reverse((next.len(), depth + 1, order, next)));
                }
            }
        }
    }
    OracleVerdict::Undecided
}

/// Bounded identity check for a surface word. Abelian and free-quotient
/// certificates are consulted before searching.
pub fn bounded_is_trivial(surface: &Surface, u: &Word, b: &SearchBound) -> OracleVerdict {
    if u.letters().is_empty() {
        return OracleVerdict::Trivial;
    }
    if let Some(why) = nontriviality_certificate(surface, u.letters()) {
        return OracleVerdict::Nontrivial(why);
    }
    bounded_is_trivial_in(surface.presentation(), u.letters(), b)
}

/// Bounded identity check for a bundle element over the bundle
/// presentation.
pub fn bounded_st_is_trivial(surface: &Surface, u: &StWord, b: &SearchBound) -> OracleVerdict {
    bounded_is_trivial_in(surface.st_presentation(), &surface.st_letters(u), b)
}

fn st_sort_key(z: &StWord) -> (usize, Vec<Letter>, i64) {
    (z.base().len(), z.base().letters().to_vec(), z.fiber())
}

/// Runs `visit` on every normal form `(w, a)` with `|w| <= L` and
/// `|a| <= F`, passing whether it commutes with `xi`. Results are
/// sorted by base length, base letters, fiber.
fn scan_box<T, V>(surface: &Surface, xi: &StWord, b: &SearchBound, visit: V) -> Result<Vec<T>>
where
    T: Send,
    V: Fn(&StWord, bool) -> Result<Option<T>> + Sync,
{
    let bases: Vec<Vec<Letter>> = reduced_words(surface.rank(), b.max_word_length)
        .into_par_iter()
        .filter(|w| surface.normal_letters(w) == *w)
        .collect();
    let per_base = |w: &Vec<Letter>| -> Result<Vec<(StWord, T)>> {
        let z0 = surface.st_element(w, 0)?;
        let left = surface.multiply(z0.base(), xi.base())?;
        let right = surface.multiply(xi.base(), z0.base())?;
        let bases_commute = left == right;
        let mut elements: Vec<StWord> = Vec::new();
        for a in -b.max_fiber..=b.max_fiber {
            let z = surface.shift_fiber(&z0, a);
            if z.fiber().abs() <= b.max_fiber && !elements.contains(&z) {
                elements.push(z);
            }
        }
        let mut out = Vec::new();
        for z in elements {
            let commutes =
                bases_commute && surface.st_multiply(&z, xi)? == surface.st_multiply(xi, &z)?;
            if let Some(t) = visit(&z, commutes)? {
                out.push((z, t));
            }
        }
        Ok(out)
    };
    let found: Vec<Vec<(StWord, T)>> = bases.par_iter().map(per_base).collect::<Result<_>>()?;
    let mut found: Vec<(StWord, T)> = found.into_iter().flatten().collect();
    found.sort_by_key(|(z, _)| st_sort_key(z));
    found.dedup_by(|x, y| x.0 == y.0);
    Ok(found.into_iter().map(|(_, t)| t).collect())
}

/// All normal forms in the box that commute with `xi`.
pub fn bounded_centralizer(surface: &Surface, xi: &StWord, b: &SearchBound) -> Result<Vec<StWord>> {
    if xi.surface() != surface.spec() {
        return Err(Error::AmbientMismatch {
            left: surface.spec(),
            right: xi.surface(),
        });
    }
    scan_box(
        surface,
        xi,
        b,
        |z, commutes| Ok(commutes.then(|| z.clone())),
    )
}

/// A failed check together with the offending element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub reason: String,
    pub element: StWord,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.reason, self.element)
    }
}

/// Outcome of [`verify_classification`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub report: ClassificationReport,
    pub bound: SearchBound,
    /// Size of the bounded centralizer.
    pub centralizer_size: usize,
    /// Witness products checked for commutation.
    pub products_checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case: {}", self.report.case)?;
        writeln!(f, "kind: {}", self.report.group.kind)?;
        writeln!(
            f,
            "bound: length={} fiber={} depth={}",
            self.bound.max_word_length, self.bound.max_fiber, self.bound.max_depth
        )?;
        writeln!(f, "centralizer elements: {}", self.centralizer_size)?;
        writeln!(f, "witness products: {}", self.products_checked)?;
        match &self.counterexample {
            None => writeln!(f, "verdict: pass"),
            Some(c) => writeln!(f, "verdict: fail\ncounterexample: {c}"),
        }
    }
}

fn fail(reason: impl Into<String>, element: &StWord) -> Counterexample {
    Counterexample {
        reason: reason.into(),
        element: element.clone(),
    }
}

/// All products `w1^e1 ... wr^er` with `|ei| <= e`, deduplicated.
fn witness_products(surface: &Surface, witnesses: &[StWord], e: i64) -> Result<Vec<StWord>> {
    let mut products = vec![surface.st_identity()];
    for w in witnesses {
        let powers: Vec<StWord> = (-e..=e)
            .map(|k| surface.st_power(w, k))
            .collect::<Result<_>>()?;
        let mut next = Vec::with_capacity(products.len() * powers.len());
        let mut seen = HashSet::new();
        for p in &products {
            for q in &powers {
                let r = surface.st_multiply(p, q)?;
                if seen.insert(r.clone()) {
                    next.push(r);
                }
            }
        }
        products = next;
    }
    products.sort_by_key(st_sort_key);
    Ok(products)
}

/// Checks a classification against brute force: every bounded centralizer
/// element must be a product of the witnesses, and every bounded product of
/// witnesses must commute with `xi`.
pub fn verify_classification(
    surface: &Surface,
    xi: &StWord,
    b: &SearchBound,
) -> Result<Verification> {
    let report = classify_pi1(surface, xi)?;
    verify_report(surface, &report, b)
}

/// Checks an arbitrary report; used directly to confirm that wrong answers
/// are caught.
pub fn verify_report(
    surface: &Surface,
    report: &ClassificationReport,
    b: &SearchBound,
) -> Result<Verification> {
    let xi = &report.xi;
    let group = &report.group;
    let mut v = Verification {
        report: report.clone(),
        bound: *b,
        centralizer_size: 0,
        products_checked: 0,
        counterexample: None,
    };
    for w in &group.witnesses {
        if surface.st_multiply(w, xi)? != surface.st_multiply(xi, w)? {
            v.counterexample = Some(fail("witness does not commute", w));
            return Ok(v);
        }
    }
    if let Some(r) = group.kind.rank() {
        if r != group.witnesses.len() {
            v.counterexample = Some(fail(
                format!(
                    "{} witnesses for a group of rank {r}",
                    group.witnesses.len()
                ),
                xi,
            ));
            return Ok(v);
        }
    }
    match group.kind {
        GroupKind::FullSTGroup => verify_full(surface, xi, b, &mut v)?,
        GroupKind::OrientationPreservingSubgroup => {
            verify_orientation_preserving(surface, xi, b, &mut v)?
        }
        _ => verify_box(surface, xi, b, &mut v)?,
    }
    Ok(v)
}

fn verify_box(surface: &Surface, xi: &StWord, b: &SearchBound, v: &mut Verification) -> Result<()> {
    let witnesses = &v.report.group.witnesses;
    let f = surface.fiber_class();
    let depth = b.max_depth as i64;
    let reach = depth.max(b.max_word_length as i64).max(b.max_fiber);

    let products = witness_products(surface, witnesses, depth)?;
    v.products_checked = products.len();
    if let Some(p) = products
        .par_iter()
        .find_first(|p| surface.st_multiply(p, xi).ok() != surface.st_multiply(xi, p).ok())
    {
        v.counterexample = Some(fail("witness product does not commute", p));
        return Ok(());
    }

    let centralizer = bounded_centralizer(surface, xi, b)?;
    v.centralizer_size = centralizer.len();
    let has_fiber = witnesses.last() == Some(&f) && witnesses.len() > 1;
    if has_fiber {
        // match bases with the f-free products, then fix the fiber with f
        let others = witness_products(surface, &witnesses[..witnesses.len() - 1], reach)?;
        let mut by_base: HashMap<&Word, &StWord> = HashMap::new();
        for s in &others {
            by_base.entry(s.base()).or_insert(s);
        }
        for z in &centralizer {
            let Some(s) = by_base.get(z.base()) else {
                v.counterexample = Some(fail("centralizer element outside the witness group", z));
                return Ok(());
            };
            let fixed = surface.st_multiply(s, &surface.st_power(&f, z.fiber() - s.fiber())?)?;
            if &fixed != z {
                v.counterexample = Some(fail("fiber correction failed", z));
                return Ok(());
            }
        }
    } else {
        let all: HashSet<StWord> = witness_products(surface, witnesses, reach)?
            .into_iter()
            .collect();
        if let Some(z) = centralizer.iter().find(|z| !all.contains(z)) {
            v.counterexample = Some(fail("centralizer element outside the witness group", z));
        }
    }
    Ok(())
}

fn verify_full(
    surface: &Surface,
    xi: &StWord,
    b: &SearchBound,
    v: &mut Verification,
) -> Result<()> {
    let seen = AtomicUsize::new(0);
    let failures = scan_box(surface, xi, b, |z, commutes| {
        seen.fetch_add(1, Ordering::Relaxed);
        if !commutes {
            return Ok(Some(fail("box element does not commute", z)));
        }
        // z is spelled by the generators, which are the witnesses
        let spelled = surface.st_from_bundle_letters(&surface.st_letters(z))?;
        if &spelled != z {
            return Ok(Some(fail("spelling does not round-trip", z)));
        }
        Ok(None)
    })?;
    v.centralizer_size = seen.into_inner() - failures.len();
    v.products_checked = v.centralizer_size;
    v.counterexample = failures.into_iter().next();
    Ok(())
}

/// Reidemeister-Schreier generators `r x rep(r x)^-1` for the transversal
/// `{1, t}`, indexed by generator and coset (`false` for `1`).
fn schreier_table(surface: &Surface, t: usize) -> Result<Vec<[StWord; 2]>> {
    let st = surface.st_generator(t)?;
    let st_inv = surface.st_invert(&st)?;
    (0..=surface.rank())
        .map(|g| {
            let x = surface.st_generator(g)?;
            let reversing = x.orientation_character() == Orientation::Reversing;
            let mut entry = [x.clone(), surface.st_multiply(&st, &x)?];
            for (coset, e) in entry.iter_mut().enumerate() {
                if (coset == 1) != reversing {
                    *e = surface.st_multiply(e, &st_inv)?;
                }
            }
            Ok(entry)
        })
        .collect()
}

/// Rewrites an orientation preserving element as a sequence of Schreier
/// generators `(generator, coset, inverted)`.
fn schreier_rewrite(surface: &Surface, z: &StWord) -> Vec<(usize, usize, bool)> {
    let reversing =
        |g: usize| g < surface.rank() && surface.generator_character(g) == Orientation::Reversing;
    let mut coset = false;
    let mut out = Vec::new();
    for l in surface.st_letters(z) {
        let g = l.generator();
        if l.is_inverse() {
            coset ^= reversing(g);
            out.push((g, usize::from(coset), true));
        } else {
            out.push((g, usize::from(coset), false));
            coset ^= reversing(g);
        }
    }
    out
}

fn verify_orientation_preserving(
    surface: &Surface,
    xi: &StWord,
    b: &SearchBound,
    v: &mut Verification,
) -> Result<()> {
    let t = (0..surface.rank())
        .find(|&i| surface.generator_character(i) == Orientation::Reversing)
        .ok_or(Error::UnsupportedRegime {
            operation: "verify_orientation_preserving",
            regime: surface.regime(),
        })?;
    let witnesses: HashSet<StWord> = v.report.group.witnesses.iter().cloned().collect();
    let table = schreier_table(surface, t)?;
    let members = AtomicUsize::new(0);
    let failures = scan_box(surface, xi, b, |z, commutes| {
        let member = z.orientation_character().is_preserving();
        if member != commutes {
            let why = if commutes {
                "orientation reversing element commutes"
            } else {
                "orientation preserving element does not commute"
            };
            return Ok(Some(fail(why, z)));
        }
        if !member {
            return Ok(None);
        }
        members.fetch_add(1, Ordering::Relaxed);
        let mut letters = Vec::new();
        for (g, coset, inverse) in schreier_rewrite(surface, z) {
            let gen = &table[g][coset];
            if !gen.is_trivial() && !witnesses.contains(gen) {
                return Ok(Some(fail("Schreier generator is not a witness", gen)));
            }
            let spelled = surface.st_letters(gen);
            letters.extend(if inverse {
                invert_letters(&spelled)
            } else {
                spelled
            });
        }
        let product = surface.st_from_bundle_letters(&letters)?;
        if &product != z {
            return Ok(Some(fail(
                "Schreier rewriting does not reproduce the element",
                z,
            )));
        }
        Ok(None)
    })?;
    v.centralizer_size = members.into_inner();
    v.products_checked = v.centralizer_size;
    v.counterexample = failures.into_iter().next();
    Ok(())
}

/// Order of a finite group by Todd-Coxeter enumeration of the cosets of the
/// trivial subgroup. `None` if more than `max_cosets` cosets are defined.
pub fn coset_count(p: &Presentation, max_cosets: usize) -> Option<usize> {
    ToddCoxeter::new(p).run(max_cosets)
}

struct ToddCoxeter {
    columns: usize,
    relators: Vec<Vec<usize>>,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
}

fn column(l: Letter) -> usize {
    2 * l.generator() + usize::from(l.is_inverse())
}

impl ToddCoxeter {
    fn new(p: &Presentation) -> Self {
        ToddCoxeter {
            columns: 2 * p.rank(),
            relators: p
                .relators
                .iter()
                .map(|r| r.iter().map(|&l| column(l)).collect())
                .collect(),
            table: Vec::new(),
            parent: Vec::new(),
            queue: Vec::new(),
        }
    }

    fn define(&mut self, c: usize, x: usize) {
        let n = self.table.len();
        self.table.push(vec![None; self.columns]);
        self.parent.push(n);
        self.table[c][x] = Some(n);
        self.table[n][x ^ 1] = Some(c);
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.columns {
                let Some(d) = self.table[g][x] else { continue };
                self.table[d][x ^ 1] = None;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if let Some(t) = self.table[mu][x] {
                    self.merge(nu, t);
                } else if let Some(t) = self.table[nu][x ^ 1] {
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = Some(nu);
                    self.table[nu][x ^ 1] = Some(mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, r: usize) {
        let w = self.relators[r].clone();
        if w.is_empty() {
            return;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j {
                match self.table[f][w[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j > i {
                match self.table[b][w[j - 1] ^ 1] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                self.coincidence(f, b);
                return;
            }
            if j == i + 1 {
                self.table[f][w[i]] = Some(b);
                self.table[b][w[i] ^ 1] = Some(f);
                return;
            }
            self.define(f, w[i]);
        }
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn run(mut self, max_cosets: usize) -> Option<usize> {
        self.table.push(vec![None; self.columns]);
        self.parent.push(0);
        let mut c = 0;
        while c < self.table.len() {
            for r in 0..self.relators.len() {
                if !self.alive(c) {
                    break;
                }
                self.scan_and_fill(c, r);
            }
            for x in 0..self.columns {
                if !self.alive(c) {
                    break;
                }
                if self.table[c][x].is_none() {
                    self.define(c, x);
                }
            }
            if self.table.len() > max_cosets {
                return None;
            }
            c += 1;
        }
        Some((0..self.table.len()).filter(|&c| self.alive(c)).count())
    }
}

/// All elements of a finite bundle group, generated by closing the identity
/// under the generators.
pub fn finite_elements(surface: &Surface) -> Result<Vec<StWord>> {
    if !matches!(surface.regime(), Regime::Sphere | Regime::ProjectivePlane) {
        return Err(Error::UnsupportedRegime {
            operation: "finite_elements",
            regime: surface.regime(),
        });
    }
    let mut gens = Vec::new();
    for i in 0..=surface.rank() {
        let g = surface.st_generator(i)?;
        gens.push(surface.st_invert(&g)?);
        gens.push(g);
    }
    let mut seen = vec![surface.st_identity()];
    let mut i = 0;
    while i < seen.len() {
        for g in &gens {
            let n = surface.st_multiply(&seen[i], g)?;
            if !seen.contains(&n) {
                seen.push(n);
            }
        }
        i += 1;
    }
    seen.sort_by_key(st_sort_key);
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::SurfaceSpec;

    fn small() -> SearchBound {
        SearchBound::new(4, 3, 4).unwrap()
    }

    #[test]
    fn bounds_are_validated() {
        assert!(matches!(
            SearchBound::new(0, 1, 1),
            Err(Error::InvalidBound(_))
        ));
        assert!(matches!(
            SearchBound::new(1, -1, 1),
            Err(Error::InvalidBound(_))
        ));
        assert!(matches!(
            SearchBound::new(1, 0, 0),
            Err(Error::InvalidBound(_))
        ));
        let d = SearchBound::default();
        assert_eq!((d.max_word_length, d.max_fiber, d.max_depth), (8, 4, 6));
    }

    #[test]
    fn lattice_membership() {
        let rows = vec![vec![2, 0, 4], vec![0, 3, 3]];
        assert!(lattice_contains(&rows, &[2, 3, 7]));
        assert!(lattice_contains(&rows, &[4, -3, 5]));
        assert!(!lattice_contains(&rows, &[1, 0, 2]));
        assert!(!lattice_contains(&rows, &[0, 0, 1]));
        assert!(lattice_contains(&[vec![6], vec![4]], &[2]));
    }

    #[test]
    fn identity_search() {
        let s = Surface::new(SurfaceSpec::orientable(2, 0));
        let b = SearchBound::default();
        let rel = s.parse_word("a1 b1 A1 B1 a2 b2 A2 B2").unwrap();
        assert_eq!(bounded_is_trivial(&s, &rel, &b), OracleVerdict::Trivial);
        assert_eq!(
            bounded_is_trivial(&s, &s.identity(), &b),
            OracleVerdict::Trivial
        );
        let a = s.parse_word("a1").unwrap();
        assert!(matches!(
            bounded_is_trivial(&s, &a, &b),
            OracleVerdict::Nontrivial(_)
        ));

        let conj = s.parse_word("a1 a1 b1 A1 B1 a2 b2 A2 B2 A1").unwrap();
        assert_eq!(bounded_is_trivial(&s, &conj, &b), OracleVerdict::Trivial);
    }

    #[test]
    fn coset_enumeration_counts() {
        for (spec, n) in [(SurfaceSpec::SPHERE, 2), (SurfaceSpec::PROJECTIVE_PLANE, 4)] {
            let s = Surface::new(spec);
            assert_eq!(coset_count(s.st_presentation(), 1000), Some(n));
            assert_eq!(finite_elements(&s).unwrap().len(), n);
        }
        let s3 = Presentation {
            generators: SurfaceSpec::TORUS.presentation().generators,
            relators: vec![
                vec![Letter::new(0, false); 3],
                vec![Letter::new(1, false); 2],
                [Letter::new(0, false), Letter::new(1, false)].repeat(2),
            ],
        };
        assert_eq!(coset_count(&s3, 1000), Some(6));
        assert_eq!(coset_count(&SurfaceSpec::TORUS.presentation(), 50), None);
    }

    #[test]
    fn centralizer_examples() {
        let s = Surface::new(SurfaceSpec::SPHERE);
        let c = bounded_centralizer(&s, &s.fiber_class(), &small()).unwrap();
        assert_eq!(c.len(), 2);

        let t = Surface::new(SurfaceSpec::TORUS);
        let xi = t.parse_st_word("a1 b1^-1 f").unwrap();
        let c = bounded_centralizer(&t, &xi, &SearchBound::new(2, 1, 1).unwrap()).unwrap();
        // a1^p b1^q with |p| + |q| <= 2, three fibers
        assert_eq!(c.len(), 13 * 3);
        assert_eq!(c[0], t.st_element(&[], -1).unwrap());
    }

    #[test]
    fn klein_centralizer_is_cyclic() {
        let k = Surface::new(SurfaceSpec::KLEIN_BOTTLE);
        let xi = k.parse_st_word("c1 c2 C2").unwrap();
        let c = bounded_centralizer(&k, &xi, &small()).unwrap();
        let alpha = &classify_pi1(&k, &xi).unwrap().group.witnesses[0];
        let powers: HashSet<StWord> = (-6..=6).map(|e| k.st_power(alpha, e).unwrap()).collect();
        assert!(c.iter().all(|z| powers.contains(z)));
        assert!(c.len() >= 3);
    }

    #[test]
    fn wrong_answers_are_caught() {
        let b = small();
        let s = Surface::new("nonorientable:3:0".parse().unwrap());
        let f = s.fiber_class();
        let c1 = s.parse_st_word("c1").unwrap();

        let xi = s.parse_st_word("c1^2").unwrap();
        let mut r = classify_pi1(&s, &xi).unwrap();
        r.group.kind = GroupKind::ZxZ;
        r.group.witnesses = vec![s.st_power(&c1, 2).unwrap(), f.clone()];
        let v = verify_report(&s, &r, &b).unwrap();
        assert_eq!(v.counterexample.unwrap().element.base(), c1.base());

        let xi = s.parse_st_word("c1 f").unwrap();
        let mut r = classify_pi1(&s, &xi).unwrap();
        r.group.kind = GroupKind::FullSTGroup;
        r.group.witnesses = (0..=s.rank()).map(|i| s.st_generator(i).unwrap()).collect();
        assert!(!verify_report(&s, &r, &b).unwrap().passed());

        let xi = s.parse_st_word("f").unwrap();
        let mut r = classify_pi1(&s, &xi).unwrap();
        assert_eq!(r.group.witnesses[0], s.st_power(&c1, 2).unwrap());
        r.group.witnesses.remove(0);
        assert!(!verify_report(&s, &r, &b).unwrap().passed());

        let t = Surface::new(SurfaceSpec::TORUS);
        let xi = t.parse_st_word("a1").unwrap();
        let mut r = classify_pi1(&t, &xi).unwrap();
        r.group.witnesses[1] = t.parse_st_word("b1^2").unwrap();
        assert!(!verify_report(&t, &r, &b).unwrap().passed());
    }

    #[test]
    fn verification_examples() {
        let b = small();
        for (spec, word) in [
            ("nonorientable:2:0", "c2^-2"),
            ("orientable:1:0", "a1 b1 f^2"),
            ("nonorientable:3:0", "c1^2"),
            ("nonorientable:3:0", "f"),
            ("orientable:0:0", "f"),
            ("nonorientable:1:0", "c1"),
        ] {
            let s = Surface::new(spec.parse().unwrap());
            let xi = s.parse_st_word(word).unwrap();
            let v = verify_classification(&s, &xi, &b).unwrap();
            assert!(v.passed(), "{spec} {word}: {v}");
        }
    }
}
