//! Dehn rewriting for one-relator surface groups.
//!
//! Rules come from splitting cyclic permutations of `R^{±1}` as `u v^-1`.
//! A rule `u -> v` is *long* when `|u| > |R|/2` (it shortens the word) and
//! a *half* rule when `|u| = |R|/2` (it keeps the length). Each rule also
//! records the power of the fiber class it produces in the unit tangent
//! bundle group, where the lift of `R` equals `f^chi`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::surfaces::{Orientation, Presentation};
use crate::words::{character_of_table, concat, free_reduce, invert_letters, rotate, Letter};

#[derive(Clone, Debug)]
struct Rule {
    rhs: Vec<Letter>,
    sigma: i64,
}

#[derive(Clone, Debug)]
pub(crate) struct RewriteSystem {
    characters: Vec<Orientation>,
    relator_len: usize,
    long: HashMap<Vec<Letter>, Rule>,
    half: HashMap<Vec<Letter>, Vec<Rule>>,
    relator_perms: Vec<Vec<Letter>>,
}

/// Closures larger than this stop growing; the shortlex minimum over the
/// explored part is still a valid representative, only uniqueness is lost.
const CLOSURE_LIMIT: usize = 1 << 16;

impl RewriteSystem {
    pub(crate) fn new(presentation: &Presentation, chi: i64) -> Self {
        let characters: Vec<Orientation> = presentation
            .generators
            .iter()
            .map(|g| g.character)
            .collect();
        let mut long = HashMap::new();
        let mut half: HashMap<Vec<Letter>, Vec<Rule>> = HashMap::new();
        let mut relator_perms = Vec::new();
        let mut relator_len = 0;
        for relator in &presentation.relators {
            let len = relator.len();
            relator_len = relator_len.max(len);
            let inverse = invert_letters(relator);
            for (word, sign) in [(relator, 1), (&inverse, -1)] {
                for i in 0..len {
                    // x^-1 R x = f^(chi eps(x))
                    let eps = character_of_table(&characters, &word[..i]).sign();
                    let perm = rotate(word, i);
                    let sigma = sign * chi * eps;
                    for k in 0..=len {
                        let lhs = perm[..k].to_vec();
                        let rhs = invert_letters(&perm[k..]);
                        if 2 * k > len {
                            long.entry(lhs).or_insert(Rule { rhs, sigma });
                        } else if 2 * k == len {
                            let rules = half.entry(lhs).or_default();
                            if !rules.iter().any(|r| r.rhs == rhs) {
                                rules.push(Rule { rhs, sigma });
                            }
                        }
                    }
                    relator_perms.push(perm);
                }
            }
        }
        RewriteSystem {
            characters,
            relator_len,
            long,
            half,
            relator_perms,
        }
    }

    fn eps(&self, letters: &[Letter]) -> i64 {
        character_of_table(&self.characters, letters).sign()
    }

    fn find_long(&self, w: &[Letter]) -> Option<(usize, usize, &Rule)> {
        if self.long.is_empty() {
            return None;
        }
        let min = self.relator_len / 2 + 1;
        for pos in 0..w.len() {
            let max = self.relator_len.min(w.len() - pos);
            for len in (min..=max).rev() {
                if let Some(rule) = self.long.get(&w[pos..pos + len]) {
                    return Some((pos, len, rule));
                }
            }
        }
        None
    }

    /// Applies long rules until none match. Returns `(w', a)` with
    /// `w = w' f^a` in the bundle group.
    pub(crate) fn dehn_reduce(&self, letters: &[Letter]) -> (Vec<Letter>, i64) {
        let mut w = letters.to_vec();
        free_reduce(&mut w);
        let mut fiber = 0;
        while let Some((pos, len, rule)) = self.find_long(&w) {
            let tail = &w[pos + len..];
            fiber += rule.sigma * self.eps(&rule.rhs) * self.eps(tail);
            let next = concat(&[&w[..pos], &rule.rhs, tail]);
            w = next;
        }
        (w, fiber)
    }

    fn half_swaps(&self, w: &[Letter]) -> Vec<(Vec<Letter>, i64)> {
        let mut out = Vec::new();
        let k = self.relator_len / 2;
        if self.half.is_empty() || w.len() < k {
            return out;
        }
        for pos in 0..=w.len() - k {
            if let Some(rules) = self.half.get(&w[pos..pos + k]) {
                let tail = &w[pos + k..];
                for rule in rules {
                    let fiber = rule.sigma * self.eps(&rule.rhs) * self.eps(tail);
                    let mut next = w[..pos].to_vec();
                    next.extend_from_slice(&rule.rhs);
                    next.extend_from_slice(tail);
                    out.push((next, fiber));
                }
            }
        }
        out
    }

    /// Normal form: the shortlex-least word reachable from the Dehn
    /// reduction by half swaps, where any shortening restarts the search.
    /// Returns `(nf, a)` with `w = nf f^a` in the bundle group.
    pub(crate) fn canonical(&self, letters: &[Letter]) -> (Vec<Letter>, i64) {
        let (mut start, mut start_fiber) = self.dehn_reduce(letters);
        if self.half.is_empty() {
            return (start, start_fiber);
        }
        'restart: loop {
            let mut seen: HashMap<Vec<Letter>, i64> = HashMap::new();
            let mut queue = VecDeque::new();
            seen.insert(start.clone(), start_fiber);
            queue.push_back(start.clone());
            while let Some(w) = queue.pop_front() {
                let base = seen[&w];
                for (next, df) in self.half_swaps(&w) {
                    // w = next f^df, so the original is next f^(df + base)
                    let (reduced, extra) = self.dehn_reduce(&next);
                    let fiber = base + df + extra;
                    if reduced.len() < start.len() {
                        start = reduced;
                        start_fiber = fiber;
                        continue 'restart;
                    }
                    if seen.len() < CLOSURE_LIMIT && !seen.contains_key(&reduced) {
                        seen.insert(reduced.clone(), fiber);
                        queue.push_back(reduced);
                    }
                }
            }
            let (w, f) = seen
                .into_iter()
                .min_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)))
                .expect("closure contains the start word");
            return (w, f);
        }
    }

    /// Returns `(core, conj)` with `w = conj core conj^-1` in the surface
    /// group, where no rotation of `core` admits a long rule or a free
    /// cancellation.
    pub(crate) fn cyclic_reduce(&self, letters: &[Letter]) -> (Vec<Letter>, Vec<Letter>) {
        let (mut core, _) = self.dehn_reduce(letters);
        let mut conj: Vec<Letter> = Vec::new();
        'outer: loop {
            while core.len() >= 2 && core[0] == core[core.len() - 1].inverse() {
                conj.push(core[0]);
                core.pop();
                core.remove(0);
            }
            for i in 1..core.len() {
                let r = rotate(&core, i);
                let (reduced, _) = self.dehn_reduce(&r);
                if reduced.len() < core.len() {
                    // core = x r x^-1
                    conj = concat(&[&conj, &core[..i]]);
                    core = reduced;
                    continue 'outer;
                }
            }
            return (core, conj);
        }
    }

    /// Cyclic words conjugate to `core` through rotations and half swaps,
    /// each paired with `d` such that `core = d variant d^-1`.
    pub(crate) fn cyclic_variants(&self, core: &[Letter]) -> Vec<(Vec<Letter>, Vec<Letter>)> {
        let limit = 4096;
        let mut start = core.to_vec();
        let mut offset: Vec<Letter> = Vec::new();
        'restart: loop {
            let mut seen: HashMap<Vec<Letter>, Vec<Letter>> = HashMap::new();
            let mut queue = VecDeque::new();
            seen.insert(start.clone(), Vec::new());
            queue.push_back(start.clone());
            while let Some(s) = queue.pop_front() {
                let d = seen[&s].clone();
                for i in 0..s.len() {
                    let r = rotate(&s, i);
                    // s = x r x^-1
                    for (next, _) in self.half_swaps(&r) {
                        let (next_core, c) = self.cyclic_reduce(&next);
                        let d_next = concat(&[&d, &s[..i], &c]);
                        if next_core.len() < start.len() {
                            offset = concat(&[&offset, &d_next]);
                            start = next_core;
                            continue 'restart;
                        }
                        if seen.len() < limit && !seen.contains_key(&next_core) {
                            seen.insert(next_core.clone(), d_next);
                            queue.push_back(next_core);
                        }
                    }
                }
            }
            return seen
                .into_iter()
                .map(|(v, d)| (v, concat(&[&offset, &d])))
                .collect();
        }
    }

    /// Subwords of length at most `|R|/2` of cyclic permutations of
    /// `R^{±1}`, including the empty word.
    pub(crate) fn relator_subwords(&self) -> Vec<Vec<Letter>> {
        let mut set: HashSet<Vec<Letter>> = HashSet::new();
        set.insert(Vec::new());
        for perm in &self.relator_perms {
            for k in 1..=self.relator_len / 2 {
                set.insert(perm[..k].to_vec());
            }
        }
        let mut out: Vec<_> = set.into_iter().collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }
}

/// All freely reduced words of length at most `max_len`, shortlex ordered.
pub(crate) fn reduced_words(rank: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = (0..rank)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
