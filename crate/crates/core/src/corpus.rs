//! Generation of all small lattices up to isomorphism.
//!
//! Lattices are grown one element at a time in a natural labeling (every
//! element is added after all elements below it), choosing the set of lower
//! covers of each new element as an antichain of the elements placed so far.
//! Every prefix of a natural labeling is a down-set, and down-sets of a
//! lattice are closed under meets, so a candidate is dropped as soon as some
//! pair in the prefix lacks a meet. Survivors are reduced to a canonical form:
//! the lexicographically least sorted cover list over all natural labelings.

use std::collections::BTreeSet;

use crate::error::{LatticeError, Result};
use crate::lattice::FiniteLattice;

/// Hard cap on corpus size.
pub const MAX_CORPUS_SIZE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub max_n: usize,
    pub modular_only: bool,
    pub dedupe_iso: bool,
}

impl CorpusSpec {
    pub fn new(max_n: usize, modular_only: bool, dedupe_iso: bool) -> Result<Self> {
        if max_n > MAX_CORPUS_SIZE {
            return Err(LatticeError::LatticeTooLarge {
                n: max_n,
                max: MAX_CORPUS_SIZE,
            });
        }
        Ok(CorpusSpec {
            max_n,
            modular_only,
            dedupe_iso,
        })
    }

    /// Lattices with `1..=max_n` elements, sorted by size and then by cover
    /// list. With `dedupe_iso` each isomorphism class appears once, in
    /// canonical labeling; otherwise every natural labeling is listed.
    pub fn generate(&self) -> Vec<FiniteLattice> {
        let mut out = Vec::new();
        for n in 1..=self.max_n {
            let mut found: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
            for l in natural_lattices(n) {
                if self.modular_only && !l.is_modular() {
                    continue;
                }
                let covers = if self.dedupe_iso {
                    canonical_covers(&l)
                } else {
                    l.covers().to_vec()
                };
                found.insert(covers);
            }
            out.extend(
                found
                    .into_iter()
                    .map(|c| FiniteLattice::build(n, c).expect("generated lattice")),
            );
        }
        out
    }
}

/// Convenience for `CorpusSpec { max_n, modular_only: true, dedupe_iso: true }`.
pub fn modular_corpus(max_n: usize) -> Result<Vec<FiniteLattice>> {
    Ok(CorpusSpec::new(max_n, true, true)?.generate())
}

/// All naturally labeled lattices on `n` elements (bottom `0`, top `n - 1`).
pub fn natural_lattices(n: usize) -> Vec<FiniteLattice> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut down = vec![1u64];
    let mut covers = Vec::new();
    grow(n, &mut down, &mut covers, &mut out);
    out
}

fn grow(
    n: usize,
    down: &mut Vec<u64>,
    covers: &mut Vec<(usize, usize)>,
    out: &mut Vec<FiniteLattice>,
) {
    let i = down.len();
    if i == n {
        if let Ok(l) = FiniteLattice::build(n, covers.iter().copied()) {
            out.push(l);
        }
        return;
    }
    let maximal: u64 = (0..i)
        .filter(|&x| !(0..i).any(|y| y != x && down[y] & (1 << x) != 0))
        .fold(0, |m, x| m | (1 << x));
    for lower in 1u64..(1 << i) {
        // The last element has to be the top.
        if i == n - 1 && lower != maximal {
            continue;
        }
        let members: Vec<usize> = (0..i).filter(|&x| lower & (1 << x) != 0).collect();
        let antichain = members
            .iter()
            .all(|&a| members.iter().all(|&b| a == b || down[b] & (1 << a) == 0));
        if !antichain {
            continue;
        }
        let mine = members.iter().fold(1u64 << i, |m, &a| m | down[a]);
        let meets_exist = (0..i).all(|j| {
            let common = mine & down[j];
            (0..i).any(|g| common & (1 << g) != 0 && down[g] == common)
        });
        if !meets_exist {
            continue;
        }
        down.push(mine);
        let before = covers.len();
        covers.extend(members.iter().map(|&a| (a, i)));
        grow(n, down, covers, out);
        covers.truncate(before);
        down.pop();
    }
}

/// Lexicographically least sorted cover list over all natural labelings.
/// Enumerates linear extensions, so only suitable for small lattices.
pub fn canonical_covers(l: &FiniteLattice) -> Vec<(usize, usize)> {
    let n = l.n();
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    extensions(l, &mut label, &mut order, &mut |label| {
        let mut c: Vec<(usize, usize)> = l
            .covers()
            .iter()
            .map(|&(x, y)| (label[x], label[y]))
            .collect();
        c.sort_unstable();
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    });
    best.unwrap_or_default()
}

fn extensions(
    l: &FiniteLattice,
    label: &mut Vec<usize>,
    order: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if order.len() == l.n() {
        f(label);
        return;
    }
    for x in l.elements() {
        if label[x] != usize::MAX || l.lower_covers(x).any(|y| label[y] == usize::MAX) {
            continue;
        }
        label[x] = order.len();
        order.push(x);
        extensions(l, label, order, f);
        order.pop();
        label[x] = usize::MAX;
    }
}

/// The same lattice relabeled canonically.
pub fn canonical_form(l: &FiniteLattice) -> FiniteLattice {
    FiniteLattice::build(l.n(), canonical_covers(l)).expect("relabeling preserves the lattice")
}

pub fn isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    a.n() == b.n()
        && a.covers().len() == b.covers().len()
        && canonical_covers(a) == canonical_covers(b)
}
