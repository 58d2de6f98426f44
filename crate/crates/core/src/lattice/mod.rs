//! Finite lattices given by their cover relation.
//!
//! Elements are the indices `0..n`. A [`FiniteLattice`] is built from an
//! irredundant cover relation and derives the order matrix together with the
//! meet and join tables once, at construction time. Everything afterwards is a
//! table lookup.

mod map;
mod partition;
mod sublattice;

pub use map::LatticeMap;
pub use partition::LatticePartition;
pub use sublattice::{zero_one_sublattices, SublatticeEmbedding};

use crate::error::{LatticeError, Result};

/// A finite lattice on the elements `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    covers: Vec<(usize, usize)>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds a lattice from its cover relation. A pair `(x, y)` means
    /// `x` is covered by `y`.
    ///
    /// The cover relation must be irredundant: repeated pairs and pairs
    /// implied by transitivity are rejected.
    pub fn build<I>(n: usize, covers: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut covers: Vec<(usize, usize)> = covers.into_iter().collect();
        for &(x, y) in &covers {
            for e in [x, y] {
                if e >= n {
                    return Err(LatticeError::ElementOutOfRange { elem: e, n });
                }
            }
            if x == y {
                return Err(LatticeError::CycleDetected { x, y });
            }
        }
        covers.sort_unstable();
        if let Some(w) = covers.windows(2).find(|w| w[0] == w[1]) {
            return Err(LatticeError::RedundantCover {
                x: w[0].0,
                y: w[0].1,
            });
        }

        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for &(x, y) in &covers {
            leq[x * n + y] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if leq[x * n + y] && leq[y * n + x] {
                    return Err(LatticeError::CycleDetected { x, y });
                }
            }
        }
        for &(x, y) in &covers {
            let implied = (0..n).any(|z| z != x && z != y && leq[x * n + z] && leq[z * n + y]);
            if implied {
                return Err(LatticeError::RedundantCover { x, y });
            }
        }

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let m = greatest(
                    n,
                    |z| leq[z * n + x] && leq[z * n + y],
                    |a, b| leq[a * n + b],
                )
                .ok_or(LatticeError::NotALattice { x, y, op: "meet" })?;
                let j = greatest(
                    n,
                    |z| leq[x * n + z] && leq[y * n + z],
                    |a, b| leq[b * n + a],
                )
                .ok_or(LatticeError::NotALattice { x, y, op: "join" })?;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
                join[x * n + y] = j;
                join[y * n + x] = j;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        Ok(FiniteLattice {
            n,
            covers,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Builds a lattice from a full order matrix (row-major, `leq[x * n + y]`
    /// meaning `x <= y`). The cover relation is recovered by transitive
    /// reduction.
    pub fn from_order(n: usize, leq: &[bool]) -> Result<Self> {
        if leq.len() != n * n {
            return Err(LatticeError::ShapeMismatch(format!(
                "order matrix has {} entries, expected {}",
                leq.len(),
                n * n
            )));
        }
        let lt = |x: usize, y: usize| x != y && leq[x * n + y];
        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                    covers.push((x, y));
                }
            }
        }
        let l = Self::build(n, covers)?;
        if l.leq != leq {
            return Err(LatticeError::InternalCheckFailed(
                "order matrix is not transitive or not antisymmetric".into(),
            ));
        }
        Ok(l)
    }

    /// The chain `0 < 1 < ... < len - 1`.
    pub fn chain(len: usize) -> Result<Self> {
        Self::build(len, (1..len).map(|i| (i - 1, i)))
    }

    /// The lattice `M_k`: a bottom `0`, atoms `1..=k`, and a top `k + 1`.
    /// `M_2` is the four-element Boolean lattice and `M_3` the diamond.
    pub fn diamond(atoms: usize) -> Result<Self> {
        let top = atoms + 1;
        let covers = (1..=atoms).flat_map(|a| [(0, a), (a, top)]);
        Self::build(atoms + 2, covers)
    }

    /// The two-element lattice.
    pub fn b2() -> Self {
        Self::chain(2).expect("two-element chain")
    }

    /// The pentagon `0 < a < c < 1`, `0 < b < 1` with `a = 1`, `c = 2`,
    /// `b = 3`, top `4`.
    pub fn pentagon() -> Self {
        Self::build(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("pentagon")
    }

    /// Direct product of two lattices, ordered componentwise. The pair
    /// `(a, b)` gets index `a * other.n() + b`.
    pub fn product(&self, other: &FiniteLattice) -> Self {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq(x / n2, y / n2) && other.leq(x % n2, y % n2);
            }
        }
        Self::from_order(n, &leq).expect("product of lattices is a lattice")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The cover relation, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// True iff `y` covers `x`.
    pub fn covered_by(&self, x: usize, y: usize) -> bool {
        self.covers.binary_search(&(x, y)).is_ok()
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Meet of a family; the empty meet is the top element.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a family; the empty join is the bottom element.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn upper_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.0 == x).map(|c| c.1)
    }

    pub fn lower_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.1 == x).map(|c| c.0)
    }

    /// First triple violating the modular law, if any.
    pub fn modularity_witness(&self) -> Option<(usize, usize, usize)> {
        for x in self.elements() {
            for z in self.elements().filter(|&z| self.leq(x, z)) {
                for y in self.elements() {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_witness().is_none()
    }

    pub fn require_modular(&self) -> Result<()> {
        match self.modularity_witness() {
            None => Ok(()),
            Some((x, y, z)) => Err(LatticeError::NotModular { x, y, z }),
        }
    }

    /// The order dual, on the same element indices.
    pub fn dual(&self) -> Self {
        Self::build(self.n, self.covers.iter().map(|&(x, y)| (y, x)))
            .expect("dual of a lattice is a lattice")
    }

    pub fn is_complemented(&self) -> bool {
        self.elements().all(|x| {
            self.elements()
                .any(|y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
        })
    }

    /// A lattice is simple when it has exactly two congruences. It suffices to
    /// look at the congruences generated by single cover pairs: every
    /// nontrivial congruence collapses some cover.
    pub fn is_simple(&self) -> bool {
        self.n >= 2
            && self
                .covers
                .iter()
                .all(|&c| self.congruence_generated([c]).block_count() == 1)
    }

    /// Least congruence relating every seed pair: translate related pairs by
    /// meets and joins, close transitively, repeat to the fixed point.
    pub fn congruence_generated<I>(&self, seed: I) -> LatticePartition
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut uf = UnionFind::new(self.n);
        for (x, y) in seed {
            uf.union(x, y);
        }
        loop {
            let mut changed = false;
            for x in self.elements() {
                let r = uf.find(x);
                if r == x {
                    continue;
                }
                for z in self.elements() {
                    changed |= uf.union(self.meet(x, z), self.meet(r, z));
                    changed |= uf.union(self.join(x, z), self.join(r, z));
                }
            }
            if !changed {
                break;
            }
        }
        LatticePartition::from_class_of((0..self.n).map(|x| uf.find(x)).collect())
    }

    /// All congruences of the lattice, sorted by their normalized class
    /// vectors. Exhaustive closure under joins with principal congruences of
    /// covers.
    pub fn all_congruences(&self) -> Vec<LatticePartition> {
        let mut seen = std::collections::BTreeSet::new();
        let identity = LatticePartition::identity(self.n);
        let mut queue = vec![identity.clone()];
        seen.insert(identity);
        while let Some(c) = queue.pop() {
            for &(a, b) in &self.covers {
                if c.related(a, b) {
                    continue;
                }
                let seed = c.generating_pairs().chain(std::iter::once((a, b)));
                let d = self.congruence_generated(seed);
                if seen.insert(d.clone()) {
                    queue.push(d);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The quotient by a congruence together with the canonical projection.
    /// Blocks are numbered in order of their least element.
    pub fn quotient(&self, p: &LatticePartition) -> Result<(FiniteLattice, LatticeMap)> {
        if p.n() != self.n {
            return Err(LatticeError::NotACongruence(format!(
                "partition covers {} elements, lattice has {}",
                p.n(),
                self.n
            )));
        }
        if let Some(msg) = p.congruence_violation(self) {
            return Err(LatticeError::NotACongruence(msg));
        }
        let k = p.block_count();
        let reps = p.representatives();
        let mut leq = vec![false; k * k];
        for a in 0..k {
            for b in 0..k {
                leq[a * k + b] = p.class_of(self.join(reps[a], reps[b])) == b;
            }
        }
        let q = FiniteLattice::from_order(k, &leq)?;
        let image = self.elements().map(|x| p.class_of(x)).collect();
        let h = LatticeMap::new(self.clone(), q.clone(), image)?;
        Ok((q, h))
    }
}

/// Greatest element among those satisfying `member`, where `le(a, b)` is the
/// ordering to maximize under.
fn greatest(
    n: usize,
    member: impl Fn(usize) -> bool,
    le: impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let cands: Vec<usize> = (0..n).filter(|&z| member(z)).collect();
    cands
        .iter()
        .copied()
        .find(|&g| cands.iter().all(|&z| le(z, g)))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // Smaller index becomes the root so roots stay deterministic.
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> FiniteLattice {
        FiniteLattice::diamond(3).unwrap()
    }

    fn b2sq() -> FiniteLattice {
        FiniteLattice::diamond(2).unwrap()
    }

    #[test]
    fn one_element_lattice() {
        let l = FiniteLattice::build(1, []).unwrap();
        assert_eq!((l.bottom(), l.top()), (0, 0));
        assert_eq!(l.meet_all([]), 0);
        assert_eq!(l.join_all([]), 0);
    }

    #[test]
    fn diamond_shape() {
        let l = FiniteLattice::build(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(l, m3());
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.meet(2, 3), 0);
    }

    #[test]
    fn build_rejects_non_lattice() {
        let err = FiniteLattice::build(4, [(0, 1), (0, 2), (1, 3)]).unwrap_err();
        assert!(
            matches!(err, LatticeError::NotALattice { op: "join", .. }),
            "{err:?}"
        );
    }

    #[test]
    fn build_rejects_cycles_and_redundancy() {
        assert!(matches!(
            FiniteLattice::build(2, [(0, 1), (1, 0)]),
            Err(LatticeError::CycleDetected { .. })
        ));
        assert!(matches!(
            FiniteLattice::build(1, [(0, 0)]),
            Err(LatticeError::CycleDetected { .. })
        ));
        assert_eq!(
            FiniteLattice::build(3, [(0, 1), (1, 2), (0, 2)]),
            Err(LatticeError::RedundantCover { x: 0, y: 2 })
        );
        assert_eq!(
            FiniteLattice::build(2, [(0, 1), (0, 1)]),
            Err(LatticeError::RedundantCover { x: 0, y: 1 })
        );
        assert_eq!(
            FiniteLattice::build(2, [(0, 2)]),
            Err(LatticeError::ElementOutOfRange { elem: 2, n: 2 })
        );
        assert_eq!(FiniteLattice::build(0, []), Err(LatticeError::Empty));
    }

    #[test]
    fn modularity() {
        assert!(m3().is_modular());
        assert!(!FiniteLattice::pentagon().is_modular());
        for k in 1..6 {
            assert!(FiniteLattice::chain(k).unwrap().is_modular());
        }
    }

    #[test]
    fn dual_of_chain_swaps_ends() {
        let c = FiniteLattice::chain(3).unwrap();
        let d = c.dual();
        assert_eq!((d.bottom(), d.top()), (2, 0));
        assert!(d.leq(1, 0));
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn generated_congruences() {
        let l = b2sq();
        assert_eq!(l.congruence_generated([]), LatticePartition::identity(4));
        let p = l.congruence_generated([(2, 3)]);
        assert_eq!(p.blocks(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(m3().congruence_generated([(0, 1)]).block_count(), 1);
    }

    #[test]
    fn quotients() {
        let l = b2sq();
        let (q, h) = l.quotient(&LatticePartition::identity(4)).unwrap();
        assert_eq!(q, l);
        assert_eq!(h.image(), &[0, 1, 2, 3]);
        let (q, _) = l.quotient(&LatticePartition::full(4)).unwrap();
        assert_eq!(q.n(), 1);
        let p = l.congruence_generated([(2, 3)]);
        let (q, h) = l.quotient(&p).unwrap();
        assert_eq!(q, FiniteLattice::b2());
        assert!(h.is_zero_one());
        let bad = LatticePartition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        assert!(matches!(
            l.quotient(&bad),
            Err(LatticeError::NotACongruence(_))
        ));
    }

    #[test]
    fn simple_and_complemented() {
        assert!(m3().is_simple() && m3().is_complemented());
        let c3 = FiniteLattice::chain(3).unwrap();
        assert!(!c3.is_simple() && !c3.is_complemented());
        let b2 = FiniteLattice::b2();
        assert!(b2.is_simple() && b2.is_complemented());
        assert!(!b2sq().is_simple());
        assert!(!FiniteLattice::chain(1).unwrap().is_simple());
    }

    #[test]
    fn congruence_count_of_boolean_square() {
        // Con(B2^2) is itself B2^2.
        assert_eq!(b2sq().all_congruences().len(), 4);
        assert_eq!(m3().all_congruences().len(), 2);
        assert_eq!(FiniteLattice::chain(4).unwrap().all_congruences().len(), 8);
    }

    #[test]
    fn product_of_chains() {
        let b2 = FiniteLattice::b2();
        let p = b2.product(&b2);
        assert_eq!(p, b2sq());
    }
}
