//! Irreducible elements, perspectivity and projectivity of prime intervals,
//! and the invariants built on them.
//!
//! Projectivity is the equivalence on intervals generated by up-perspectivity
//! `[a, b] ↗ [c, d]` (`d = b ∨ c`, `a = b ∧ c`). In a modular lattice a
//! perspectivity maps an interval onto an isomorphic one, so every chain of
//! perspectivities starting at a prime interval stays among prime intervals.
//! [`Projectivity`] relies on that and therefore refuses nonmodular input.

use serde::Serialize;

use crate::error::{LatticeError, Result};
use crate::lattice::{FiniteLattice, LatticeMap, LatticePartition};

/// A pair `lo ≺ hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimeInterval {
    pub lo: usize,
    pub hi: usize,
}

impl PrimeInterval {
    pub fn new(l: &FiniteLattice, lo: usize, hi: usize) -> Result<Self> {
        if lo >= l.n() || hi >= l.n() || !l.covered_by(lo, hi) {
            return Err(LatticeError::NotAPrimeInterval { lo, hi });
        }
        Ok(PrimeInterval { lo, hi })
    }

    /// All prime intervals, in cover order.
    pub fn all(l: &FiniteLattice) -> Vec<PrimeInterval> {
        l.covers()
            .iter()
            .map(|&(lo, hi)| PrimeInterval { lo, hi })
            .collect()
    }
}

/// An element strictly below the meet of all elements strictly above it.
/// The top element never qualifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MeetIrreducible {
    elem: usize,
    succ: usize,
}

impl MeetIrreducible {
    pub fn of(l: &FiniteLattice, x: usize) -> Option<Self> {
        if x == l.top() {
            return None;
        }
        let succ = l.meet_all(l.elements().filter(|&y| l.lt(x, y)));
        (succ != x).then_some(MeetIrreducible { elem: x, succ })
    }

    pub fn elem(&self) -> usize {
        self.elem
    }

    /// The unique upper cover.
    pub fn succ(&self) -> usize {
        self.succ
    }

    pub fn interval(&self) -> PrimeInterval {
        PrimeInterval {
            lo: self.elem,
            hi: self.succ,
        }
    }
}

/// An element strictly above the join of all elements strictly below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct JoinIrreducible {
    elem: usize,
    pred: usize,
}

impl JoinIrreducible {
    pub fn of(l: &FiniteLattice, x: usize) -> Option<Self> {
        if x == l.bottom() {
            return None;
        }
        let pred = l.join_all(l.elements().filter(|&y| l.lt(y, x)));
        (pred != x).then_some(JoinIrreducible { elem: x, pred })
    }

    pub fn elem(&self) -> usize {
        self.elem
    }

    /// The unique lower cover.
    pub fn pred(&self) -> usize {
        self.pred
    }

    pub fn interval(&self) -> PrimeInterval {
        PrimeInterval {
            lo: self.pred,
            hi: self.elem,
        }
    }
}

pub fn meet_irreducibles(l: &FiniteLattice) -> Vec<MeetIrreducible> {
    l.elements()
        .filter_map(|x| MeetIrreducible::of(l, x))
        .collect()
}

pub fn join_irreducibles(l: &FiniteLattice) -> Vec<JoinIrreducible> {
    l.elements()
        .filter_map(|x| JoinIrreducible::of(l, x))
        .collect()
}

/// `i ↗ j`: `j.hi = i.hi ∨ j.lo` and `i.lo = i.hi ∧ j.lo`.
pub fn transposes_up(l: &FiniteLattice, i: PrimeInterval, j: PrimeInterval) -> bool {
    j.hi == l.join(i.hi, j.lo) && i.lo == l.meet(i.hi, j.lo)
}

/// `(delta, epsilon)` with `delta < 1`, `epsilon > 0`, and every element
/// either below `delta` or above `epsilon`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SplittingPair {
    pub delta: usize,
    pub epsilon: usize,
}

impl SplittingPair {
    pub fn new(l: &FiniteLattice, delta: usize, epsilon: usize) -> Result<Self> {
        if is_splitting_pair(l, delta, epsilon) {
            Ok(SplittingPair { delta, epsilon })
        } else {
            Err(LatticeError::NotASplittingPair { delta, epsilon })
        }
    }
}

pub fn is_splitting_pair(l: &FiniteLattice, delta: usize, epsilon: usize) -> bool {
    delta < l.n()
        && epsilon < l.n()
        && delta != l.top()
        && epsilon != l.bottom()
        && l.elements().all(|x| l.leq(x, delta) || l.leq(epsilon, x))
}

/// Every splitting pair, sorted. Empty iff the lattice does not split.
pub fn splitting_pairs(l: &FiniteLattice) -> Vec<SplittingPair> {
    let mut out = Vec::new();
    for delta in l.elements() {
        for epsilon in l.elements() {
            if is_splitting_pair(l, delta, epsilon) {
                out.push(SplittingPair { delta, epsilon });
            }
        }
    }
    out
}

/// Prime intervals grouped into projectivity classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityClasses {
    intervals: Vec<PrimeInterval>,
    class_of: Vec<usize>,
}

impl ProjectivityClasses {
    /// Connected components of the perspectivity graph on prime intervals.
    /// Callers must have checked modularity.
    fn compute(l: &FiniteLattice) -> Self {
        let intervals = PrimeInterval::all(l);
        let k = intervals.len();
        let mut labels: Vec<usize> = (0..k).collect();
        let mut stack = Vec::new();
        let mut seen = vec![false; k];
        for start in 0..k {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            while let Some(a) = stack.pop() {
                labels[a] = start;
                for b in 0..k {
                    if !seen[b]
                        && (transposes_up(l, intervals[a], intervals[b])
                            || transposes_up(l, intervals[b], intervals[a]))
                    {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        let class_of = LatticePartition::from_class_of(labels).classes().to_vec();
        ProjectivityClasses {
            intervals,
            class_of,
        }
    }

    pub fn intervals(&self) -> &[PrimeInterval] {
        &self.intervals
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn class_id(&self, i: PrimeInterval) -> Option<usize> {
        self.intervals
            .binary_search(&i)
            .ok()
            .map(|p| self.class_of[p])
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = PrimeInterval> + '_ {
        self.intervals
            .iter()
            .zip(&self.class_of)
            .filter(move |(_, &c)| c == class)
            .map(|(i, _)| *i)
    }

    pub fn projective(&self, i: PrimeInterval, j: PrimeInterval) -> bool {
        match (self.class_id(i), self.class_id(j)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

/// Projectivity analysis of one modular lattice.
#[derive(Clone, Debug)]
pub struct Projectivity<'a> {
    lattice: &'a FiniteLattice,
    classes: ProjectivityClasses,
    meet_irr: Vec<MeetIrreducible>,
    join_irr: Vec<JoinIrreducible>,
}

impl<'a> Projectivity<'a> {
    pub fn new(lattice: &'a FiniteLattice) -> Result<Self> {
        lattice.require_modular()?;
        Ok(Projectivity {
            lattice,
            classes: ProjectivityClasses::compute(lattice),
            meet_irr: meet_irreducibles(lattice),
            join_irr: join_irreducibles(lattice),
        })
    }

    pub fn lattice(&self) -> &'a FiniteLattice {
        self.lattice
    }

    pub fn classes(&self) -> &ProjectivityClasses {
        &self.classes
    }

    pub fn meet_irreducibles(&self) -> &[MeetIrreducible] {
        &self.meet_irr
    }

    pub fn join_irreducibles(&self) -> &[JoinIrreducible] {
        &self.join_irr
    }

    fn class_of(&self, i: PrimeInterval) -> Result<usize> {
        self.classes
            .class_id(i)
            .ok_or(LatticeError::NotAPrimeInterval { lo: i.lo, hi: i.hi })
    }

    pub fn projective(&self, i: PrimeInterval, j: PrimeInterval) -> bool {
        self.classes.projective(i, j)
    }

    /// True iff some interval projective to `i` lies inside `[lo, hi]`.
    pub fn projects_into(&self, i: PrimeInterval, lo: usize, hi: usize) -> Result<bool> {
        let class = self.class_of(i)?;
        let l = self.lattice;
        Ok(self
            .classes
            .members(class)
            .any(|j| l.leq(lo, j.lo) && l.leq(j.hi, hi)))
    }

    /// Join of the meet irreducibles `η` with `[η, η⁺]` projective to `i`.
    pub fn gamma(&self, i: PrimeInterval) -> Result<usize> {
        let class = self.class_of(i)?;
        Ok(self.lattice.join_all(
            self.meet_irr
                .iter()
                .filter(|m| self.classes.class_id(m.interval()) == Some(class))
                .map(|m| m.elem),
        ))
    }

    /// Join of the join irreducibles `ρ` with `[ρ⁻, ρ]` projective to `i`.
    pub fn delta(&self, i: PrimeInterval) -> Result<usize> {
        let class = self.class_of(i)?;
        Ok(self.lattice.join_all(
            self.join_irr
                .iter()
                .filter(|j| self.classes.class_id(j.interval()) == Some(class))
                .map(|j| j.elem),
        ))
    }

    /// No other meet irreducible has its upper cover interval in the class
    /// of `[η, η⁺]`.
    pub fn is_lonesome_meet(&self, eta: MeetIrreducible) -> bool {
        let class = self.classes.class_id(eta.interval());
        self.meet_irr
            .iter()
            .filter(|m| self.classes.class_id(m.interval()) == class)
            .count()
            == 1
    }

    pub fn is_lonesome_join(&self, rho: JoinIrreducible) -> bool {
        let class = self.classes.class_id(rho.interval());
        self.join_irr
            .iter()
            .filter(|j| self.classes.class_id(j.interval()) == class)
            .count()
            == 1
    }

    /// Whenever a meet of elements lies below `η`, one of them does. For a
    /// finite lattice this amounts to the meet of all elements not below `η`
    /// itself not being below `η`.
    pub fn is_completely_meet_prime(&self, eta: MeetIrreducible) -> bool {
        let l = self.lattice;
        let theta = l.meet_all(l.elements().filter(|&y| !l.leq(y, eta.elem)));
        !l.leq(theta, eta.elem)
    }

    /// The map onto the two-element lattice sending exactly the elements
    /// below `η` to `0`. Only a homomorphism when `η` is completely meet
    /// prime.
    pub fn b2_map(&self, eta: MeetIrreducible) -> Result<LatticeMap> {
        let l = self.lattice;
        let image = l
            .elements()
            .map(|x| usize::from(!l.leq(x, eta.elem)))
            .collect();
        LatticeMap::new(l.clone(), FiniteLattice::b2(), image)
    }

    /// A (0,1)-homomorphism onto `B2`, built from the first lonesome meet
    /// irreducible in index order. `None` iff `B2` is not a homomorphic image.
    pub fn b2_quotient(&self) -> Result<Option<LatticeMap>> {
        let Some(&eta) = self.meet_irr.iter().find(|&&m| self.is_lonesome_meet(m)) else {
            return Ok(None);
        };
        if !self.is_completely_meet_prime(eta) {
            return Err(LatticeError::InternalCheckFailed(format!(
                "lonesome meet irreducible {} is not completely meet prime",
                eta.elem
            )));
        }
        let h = self
            .b2_map(eta)
            .map_err(|e| LatticeError::InternalCheckFailed(format!("b2 quotient map: {e}")))?;
        Ok(Some(h))
    }

    /// The congruence of pairs `(x, y)` such that `i` does not project into
    /// `[x ∧ y, x ∨ y]`. Both the equivalence and the substitution property
    /// are verified before returning.
    pub fn phi_congruence(&self, i: PrimeInterval) -> Result<LatticePartition> {
        let l = self.lattice;
        let n = l.n();
        let mut related = vec![false; n * n];
        for x in l.elements() {
            for y in l.elements() {
                related[x * n + y] = !self.projects_into(i, l.meet(x, y), l.join(x, y))?;
            }
        }
        let labels = (0..n)
            .map(|x| (0..n).find(|&y| related[x * n + y]).unwrap_or(x))
            .collect();
        let p = LatticePartition::from_class_of(labels);
        for x in l.elements() {
            for y in l.elements() {
                if p.related(x, y) != related[x * n + y] {
                    return Err(LatticeError::InternalCheckFailed(format!(
                        "phi relation for [{}, {}] is not an equivalence at ({x}, {y})",
                        i.lo, i.hi
                    )));
                }
            }
        }
        if let Some(msg) = p.congruence_violation(l) {
            return Err(LatticeError::InternalCheckFailed(format!(
                "phi relation for [{}, {}] is not a congruence: {msg}",
                i.lo, i.hi
            )));
        }
        if p.related(i.lo, i.hi) {
            return Err(LatticeError::InternalCheckFailed(format!(
                "phi relation relates its own interval [{}, {}]",
                i.lo, i.hi
            )));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // B2^2 labels: 0, a = 1, b = 2, 1 = 3. M3: 0, atoms 1..=3, top 4.
    fn b2sq() -> FiniteLattice {
        FiniteLattice::diamond(2).unwrap()
    }
    fn m3() -> FiniteLattice {
        FiniteLattice::diamond(3).unwrap()
    }
    fn c3() -> FiniteLattice {
        FiniteLattice::chain(3).unwrap()
    }
    fn pi(lo: usize, hi: usize) -> PrimeInterval {
        PrimeInterval { lo, hi }
    }

    #[test]
    fn irreducibles_of_chain() {
        let l = c3();
        let m: Vec<_> = meet_irreducibles(&l)
            .iter()
            .map(|m| (m.elem(), m.succ()))
            .collect();
        assert_eq!(m, vec![(0, 1), (1, 2)]);
        let j: Vec<_> = join_irreducibles(&l)
            .iter()
            .map(|j| (j.elem(), j.pred()))
            .collect();
        assert_eq!(j, vec![(1, 0), (2, 1)]);
    }

    #[test]
    fn irreducibles_of_m3_and_trivial() {
        let l = m3();
        let m: Vec<_> = meet_irreducibles(&l)
            .iter()
            .map(|m| (m.elem(), m.succ()))
            .collect();
        assert_eq!(m, vec![(1, 4), (2, 4), (3, 4)]);
        let j: Vec<_> = join_irreducibles(&l)
            .iter()
            .map(|j| (j.elem(), j.pred()))
            .collect();
        assert_eq!(j, vec![(1, 0), (2, 0), (3, 0)]);
        let one = FiniteLattice::chain(1).unwrap();
        assert!(meet_irreducibles(&one).is_empty() && join_irreducibles(&one).is_empty());
    }

    #[test]
    fn perspectivity() {
        assert!(transposes_up(&c3(), pi(0, 1), pi(0, 1)));
        assert!(transposes_up(&b2sq(), pi(0, 1), pi(2, 3)));
        assert!(!transposes_up(&c3(), pi(0, 1), pi(1, 2)));
        assert!(PrimeInterval::new(&c3(), 0, 2).is_err());
    }

    #[test]
    fn classes() {
        let l = m3();
        let p = Projectivity::new(&l).unwrap();
        assert_eq!(p.classes().class_count(), 1);
        assert_eq!(p.classes().intervals().len(), 6);

        let l = b2sq();
        let p = Projectivity::new(&l).unwrap();
        assert_eq!(p.classes().class_count(), 2);
        assert!(p.projective(pi(0, 1), pi(2, 3)));
        assert!(p.projective(pi(0, 2), pi(1, 3)));
        assert!(!p.projective(pi(0, 1), pi(0, 2)));

        let l = c3();
        let p = Projectivity::new(&l).unwrap();
        assert_eq!(p.classes().class_count(), 2);
    }

    #[test]
    fn refuses_nonmodular() {
        let n5 = FiniteLattice::pentagon();
        assert!(matches!(
            Projectivity::new(&n5),
            Err(LatticeError::NotModular { .. })
        ));
    }

    #[test]
    fn projects_into_examples() {
        let l = b2sq();
        let p = Projectivity::new(&l).unwrap();
        assert!(p.projects_into(pi(0, 1), 0, 1).unwrap());
        assert!(p.projects_into(pi(0, 1), 2, 3).unwrap());
        assert!(!p.projects_into(pi(0, 1), 0, 2).unwrap());
    }

    #[test]
    fn gamma_delta_examples() {
        let l = m3();
        let p = Projectivity::new(&l).unwrap();
        assert_eq!(
            (p.gamma(pi(0, 1)).unwrap(), p.delta(pi(0, 1)).unwrap()),
            (4, 4)
        );

        let l = b2sq();
        let p = Projectivity::new(&l).unwrap();
        assert_eq!(
            (p.gamma(pi(0, 1)).unwrap(), p.delta(pi(0, 1)).unwrap()),
            (2, 1)
        );

        let l = c3();
        let p = Projectivity::new(&l).unwrap();
        assert_eq!(
            (p.gamma(pi(0, 1)).unwrap(), p.delta(pi(0, 1)).unwrap()),
            (0, 1)
        );
    }

    #[test]
    fn lonesome_examples() {
        let l = b2sq();
        let p = Projectivity::new(&l).unwrap();
        assert!(p.is_lonesome_meet(MeetIrreducible::of(&l, 1).unwrap()));

        let l = m3();
        let p = Projectivity::new(&l).unwrap();
        assert!(!p.is_lonesome_meet(MeetIrreducible::of(&l, 1).unwrap()));

        let l = c3();
        let p = Projectivity::new(&l).unwrap();
        assert!(p.is_lonesome_meet(MeetIrreducible::of(&l, 0).unwrap()));
    }

    #[test]
    fn splitting_pair_examples() {
        let pairs = splitting_pairs(&b2sq());
        assert!(pairs.contains(&SplittingPair {
            delta: 1,
            epsilon: 2
        }));
        assert!(pairs.contains(&SplittingPair {
            delta: 2,
            epsilon: 1
        }));
        assert!(splitting_pairs(&m3()).is_empty());
        assert!(
            splitting_pairs(&FiniteLattice::b2()).contains(&SplittingPair {
                delta: 0,
                epsilon: 1
            })
        );
        assert!(SplittingPair::new(&m3(), 1, 2).is_err());
    }

    #[test]
    fn phi_examples() {
        let l = c3();
        let p = Projectivity::new(&l).unwrap();
        assert_eq!(
            p.phi_congruence(pi(0, 1)).unwrap().blocks(),
            vec![vec![0], vec![1, 2]]
        );

        let l = b2sq();
        let p = Projectivity::new(&l).unwrap();
        assert_eq!(
            p.phi_congruence(pi(0, 1)).unwrap().blocks(),
            vec![vec![0, 2], vec![1, 3]]
        );
    }

    #[test]
    fn b2_quotient_examples() {
        let l = c3();
        let p = Projectivity::new(&l).unwrap();
        assert_eq!(p.b2_quotient().unwrap().unwrap().image(), &[0, 1, 1]);

        let l = m3();
        assert!(Projectivity::new(&l)
            .unwrap()
            .b2_quotient()
            .unwrap()
            .is_none());

        let l = FiniteLattice::b2();
        assert_eq!(
            Projectivity::new(&l)
                .unwrap()
                .b2_quotient()
                .unwrap()
                .unwrap()
                .image(),
            &[0, 1]
        );
    }
}
