//! Commutator multiplications on finite lattices.
//!
//! A commutator multiplication is a binary operation `[x, y]` that is
//! symmetric, bounded by `x ∧ y`, and distributes over joins in each argument.
//! On a finite lattice join distributivity over arbitrary families is
//! equivalent to the binary law `[x ∨ x', y] = [x, y] ∨ [x', y]` together
//! with the empty-family law `[0, y] = 0`, since every finite join is an
//! iterated binary join and the empty join is `0`. Those two laws are what
//! [`CommutatorTable::validate`] checks.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{LatticeError, Result};
use crate::lattice::{FiniteLattice, LatticeMap, LatticePartition, SublatticeEmbedding};
use crate::projectivity::{
    is_splitting_pair, join_irreducibles, PrimeInterval, Projectivity, SplittingPair,
};

/// Largest lattice accepted by [`enumerate_commutators`].
pub const MAX_ENUMERATION_SIZE: usize = 5;

/// An `n × n` table of lattice elements, not necessarily a valid
/// commutator multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorTable {
    lattice: FiniteLattice,
    t: Vec<usize>,
}

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Asymmetric {
        x: usize,
        y: usize,
        xy: usize,
        yx: usize,
    },
    AboveMeet {
        x: usize,
        y: usize,
        value: usize,
        meet: usize,
    },
    JoinDistributivity {
        x: usize,
        x2: usize,
        y: usize,
        lhs: usize,
        rhs: usize,
    },
    NonzeroBottom {
        y: usize,
        value: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Asymmetric { x, y, xy, yx } => {
                write!(f, "[{x},{y}] = {xy} but [{y},{x}] = {yx}")
            }
            Violation::AboveMeet { x, y, value, meet } => {
                write!(f, "[{x},{y}] = {value} is not below {x} ^ {y} = {meet}")
            }
            Violation::JoinDistributivity { x, x2, y, lhs, rhs } => write!(
                f,
                "[{x} v {x2}, {y}] = {lhs} but [{x},{y}] v [{x2},{y}] = {rhs}"
            ),
            Violation::NonzeroBottom { y, value } => write!(f, "[0,{y}] = {value} is not 0"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl CommutatorTable {
    pub fn new(lattice: FiniteLattice, rows: &[Vec<usize>]) -> Result<Self> {
        let n = lattice.n();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(LatticeError::ShapeMismatch(format!(
                "table must be {n} x {n}"
            )));
        }
        let t: Vec<usize> = rows.iter().flatten().copied().collect();
        if let Some(&e) = t.iter().find(|&&e| e >= n) {
            return Err(LatticeError::ElementOutOfRange { elem: e, n });
        }
        Ok(CommutatorTable { lattice, t })
    }

    pub fn from_fn(lattice: &FiniteLattice, f: impl Fn(usize, usize) -> usize) -> Self {
        let n = lattice.n();
        let t = (0..n * n).map(|k| f(k / n, k % n)).collect();
        CommutatorTable {
            lattice: lattice.clone(),
            t,
        }
    }

    /// The constant `0` table.
    pub fn zero(lattice: &FiniteLattice) -> Self {
        Self::from_fn(lattice, |_, _| lattice.bottom())
    }

    /// `[x, y] = x ∧ y`.
    pub fn meet(lattice: &FiniteLattice) -> Self {
        Self::from_fn(lattice, |x, y| lattice.meet(x, y))
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.t[x * self.lattice.n() + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.t
            .chunks(self.lattice.n().max(1))
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn entries(&self) -> &[usize] {
        &self.t
    }

    /// True iff every entry is below the corresponding entry of `other`.
    pub fn pointwise_leq(&self, other: &CommutatorTable) -> bool {
        self.lattice == other.lattice
            && self
                .t
                .iter()
                .zip(&other.t)
                .all(|(&a, &b)| self.lattice.leq(a, b))
    }

    pub fn validate(&self) -> Validation {
        let l = &self.lattice;
        let mut violations = Vec::new();
        for x in l.elements() {
            for y in l.elements() {
                let (xy, yx) = (self.get(x, y), self.get(y, x));
                if x < y && xy != yx {
                    violations.push(Violation::Asymmetric { x, y, xy, yx });
                }
                let meet = l.meet(x, y);
                if !l.leq(xy, meet) {
                    violations.push(Violation::AboveMeet {
                        x,
                        y,
                        value: xy,
                        meet,
                    });
                }
            }
        }
        for y in l.elements() {
            let value = self.get(l.bottom(), y);
            if value != l.bottom() {
                violations.push(Violation::NonzeroBottom { y, value });
            }
            for x in l.elements() {
                for x2 in (x + 1)..l.n() {
                    let lhs = self.get(l.join(x, x2), y);
                    let rhs = l.join(self.get(x, y), self.get(x2, y));
                    if lhs != rhs {
                        violations.push(Violation::JoinDistributivity { x, x2, y, lhs, rhs });
                    }
                }
            }
        }
        Validation { violations }
    }

    pub fn into_commutator(self) -> Result<Commutator> {
        let v = self.validate();
        match v.violations.first() {
            None => Ok(Commutator(self)),
            Some(first) => Err(LatticeError::InvalidTable(format!(
                "{} violation(s), first: {first}",
                v.violations.len()
            ))),
        }
    }
}

/// A table that passed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commutator(CommutatorTable);

impl Deref for Commutator {
    type Target = CommutatorTable;

    fn deref(&self) -> &CommutatorTable {
        &self.0
    }
}

/// Most specific type of a commutator lattice. Abelian implies nilpotent
/// implies solvable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommutatorType {
    Abelian,
    Nilpotent,
    Solvable,
    None,
}

impl CommutatorType {
    pub fn is_solvable(self) -> bool {
        self != CommutatorType::None
    }

    pub fn is_nilpotent(self) -> bool {
        matches!(self, CommutatorType::Abelian | CommutatorType::Nilpotent)
    }

    pub fn is_abelian(self) -> bool {
        self == CommutatorType::Abelian
    }
}

impl fmt::Display for CommutatorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommutatorType::Abelian => "abelian",
            CommutatorType::Nilpotent => "nilpotent",
            CommutatorType::Solvable => "solvable",
            CommutatorType::None => "none",
        })
    }
}

/// Derived series `γ₁ = 1, γₖ₊₁ = [γₖ, γₖ]` and lower central series
/// `λ₁ = 1, λₖ₊₁ = [1, λₖ]`, each listed up to its first repeated term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub derived: Vec<usize>,
    pub lower_central: Vec<usize>,
    #[serde(rename = "type")]
    pub kind: CommutatorType,
}

impl Commutator {
    pub fn into_table(self) -> CommutatorTable {
        self.0
    }

    /// `(x : y)`, the join of all `z` with `[z, y] ≤ x`.
    pub fn residuation(&self, x: usize, y: usize) -> usize {
        let l = self.lattice();
        l.join_all(l.elements().filter(|&z| l.leq(self.get(z, y), x)))
    }

    pub fn series(&self) -> Result<SeriesReport> {
        let l = self.lattice();
        let iterate = |next: &dyn Fn(usize) -> usize| {
            let mut seq = vec![l.top()];
            loop {
                let last = *seq.last().expect("nonempty");
                let v = next(last);
                if v == last {
                    break seq;
                }
                seq.push(v);
            }
        };
        let derived = iterate(&|g| self.get(g, g));
        let lower_central = iterate(&|g| self.get(l.top(), g));
        let bottom = l.bottom();
        let solvable = *derived.last().expect("nonempty") == bottom;
        let nilpotent = *lower_central.last().expect("nonempty") == bottom;
        let kind = if self.get(l.top(), l.top()) == bottom {
            CommutatorType::Abelian
        } else if nilpotent {
            CommutatorType::Nilpotent
        } else if solvable {
            CommutatorType::Solvable
        } else {
            CommutatorType::None
        };

        let idempotent = l.elements().any(|b| b != bottom && self.get(b, b) == b);
        if solvable == idempotent {
            return Err(LatticeError::CrossCheckMismatch(format!(
                "derived series says solvable = {solvable}, but a nonzero b with [b,b] = b {}",
                if idempotent {
                    "exists"
                } else {
                    "does not exist"
                }
            )));
        }
        let absorbing = l
            .elements()
            .any(|b| b != bottom && self.get(l.top(), b) == b);
        if nilpotent == absorbing {
            return Err(LatticeError::CrossCheckMismatch(format!(
                "lower central series says nilpotent = {nilpotent}, but a nonzero b with [1,b] = b {}",
                if absorbing { "exists" } else { "does not exist" }
            )));
        }
        if l.is_modular() {
            let covers_central = l
                .covers()
                .iter()
                .all(|&(a, b)| self.residuation(a, b) == l.top());
            if covers_central != nilpotent {
                return Err(LatticeError::CrossCheckMismatch(format!(
                    "nilpotent = {nilpotent} but (a:b) = 1 on every cover is {covers_central}"
                )));
            }
        }
        Ok(SeriesReport {
            derived,
            lower_central,
            kind,
        })
    }
}

fn certify(table: CommutatorTable, what: &str) -> Result<Commutator> {
    table.into_commutator().map_err(|e| {
        LatticeError::InternalCheckFailed(format!("{what} produced an invalid table: {e}"))
    })
}

/// Restriction to a sublattice followed by closure:
/// `[x, y]_L = c_L([x, y]_K)`. The result lives on
/// [`SublatticeEmbedding::to_lattice`].
pub fn construct_sublattice(k: &Commutator, s: &SublatticeEmbedding) -> Result<Commutator> {
    if s.ambient() != k.lattice() {
        return Err(LatticeError::NotASublattice(
            "sublattice ambient differs from the table's lattice".into(),
        ));
    }
    let sub = s.to_lattice()?;
    let members = s.members();
    let mut rows = vec![vec![0; members.len()]; members.len()];
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate() {
            let c = s.closure(k.get(x, y))?;
            rows[i][j] = s.position(c).expect("closure is a member");
        }
    }
    certify(CommutatorTable::new(sub, &rows)?, "sublattice construction")
}

/// Pullback along a (0,1)-homomorphism `h: L → K`:
/// `[x, y]_L = ⋀{ z : h(z) ≥ [h(x), h(y)]_K }`.
pub fn construct_pullback(h: &LatticeMap, k: &Commutator) -> Result<Commutator> {
    if h.target() != k.lattice() {
        return Err(LatticeError::NotAHomomorphism(
            "map target differs from the table's lattice".into(),
        ));
    }
    if !h.is_zero_one() {
        return Err(LatticeError::NotAHomomorphism(
            "map does not preserve 0 and 1".into(),
        ));
    }
    let src = h.source();
    let tgt = h.target();
    let table = CommutatorTable::from_fn(src, |x, y| {
        let bound = k.get(h.apply(x), h.apply(y));
        src.meet_all(src.elements().filter(|&z| tgt.leq(bound, h.apply(z))))
    });
    certify(table, "pullback construction")
}

/// `s(x)`: the least element of the class of `x`.
pub fn class_floor(l: &FiniteLattice, theta: &LatticePartition) -> Vec<usize> {
    l.elements()
        .map(|x| l.meet_all(l.elements().filter(|&z| theta.related(z, x))))
        .collect()
}

/// The splitting construction: `[x, y] = 0` when both arguments are below
/// `δ`, and `s(x ∧ y)` otherwise, where `s` maps each element to the least
/// element of its `Θ`-class.
pub fn construct_splitting(
    l: &FiniteLattice,
    pair: SplittingPair,
    theta: &LatticePartition,
) -> Result<Commutator> {
    let SplittingPair { delta, epsilon } = pair;
    if !is_splitting_pair(l, delta, epsilon) {
        return Err(LatticeError::NotASplittingPair { delta, epsilon });
    }
    if let Some(msg) = theta.congruence_violation(l) {
        return Err(LatticeError::NotACongruence(msg));
    }
    if !theta.related(epsilon, l.top()) {
        return Err(LatticeError::CongruenceMissingSeed { epsilon });
    }
    let s = class_floor(l, theta);
    let table = CommutatorTable::from_fn(l, |x, y| {
        if l.leq(x, delta) && l.leq(y, delta) {
            l.bottom()
        } else {
            s[l.meet(x, y)]
        }
    });
    certify(table, "splitting construction")
}

/// The pointwise join of all commutator multiplications on `l`.
///
/// Starts from the meet table and repeatedly lowers entries that violate
/// symmetry, monotonicity, binary join distributivity, or `[0, y] = 0`.
/// Every commutator multiplication `c` satisfies `c ≤ t` initially, and each
/// repair replaces `t(x, y)` by its meet with a bound that `c(x, y)` also
/// lies below, so `c ≤ t` is preserved. Entries only decrease, so the loop
/// terminates; at the fixed point `t` satisfies every axiom and is thus a
/// commutator multiplication above all others.
pub fn largest_commutator(l: &FiniteLattice) -> Commutator {
    let n = l.n();
    let mut t: Vec<usize> = (0..n * n).map(|k| l.meet(k / n, k % n)).collect();
    let lower = |t: &mut Vec<usize>, at: usize, bound: usize| -> bool {
        let v = l.meet(t[at], bound);
        let changed = v != t[at];
        t[at] = v;
        changed
    };
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                let yx = t[y * n + x];
                changed |= lower(&mut t, x * n + y, yx);
            }
        }
        for &(x, x2) in l.covers() {
            for y in 0..n {
                let above = t[x2 * n + y];
                changed |= lower(&mut t, x * n + y, above);
            }
        }
        for x in 0..n {
            for x2 in (x + 1)..n {
                let j = l.join(x, x2);
                for y in 0..n {
                    let bound = l.join(t[x * n + y], t[x2 * n + y]);
                    changed |= lower(&mut t, j * n + y, bound);
                }
            }
        }
        for y in 0..n {
            changed |= lower(&mut t, l.bottom() * n + y, l.bottom());
        }
        if !changed {
            break;
        }
    }
    let table = CommutatorTable {
        lattice: l.clone(),
        t,
    };
    certify(table, "largest commutator descent").expect("descent fixed point satisfies the axioms")
}

/// Every commutator multiplication on `l`, sorted by entries, truncated to
/// `cap`. Tables are generated from their values on pairs of join
/// irreducibles; any valid table is determined by those values.
pub fn enumerate_commutators(l: &FiniteLattice, cap: usize) -> Result<Vec<Commutator>> {
    if l.n() > MAX_ENUMERATION_SIZE {
        return Err(LatticeError::LatticeTooLarge {
            n: l.n(),
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let irr: Vec<usize> = join_irreducibles(l).iter().map(|j| j.elem()).collect();
    let pairs: Vec<(usize, usize)> = irr
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| irr[i..].iter().map(move |&b| (a, b)))
        .collect();
    let choices: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(a, b)| l.elements().filter(|&z| l.leq(z, l.meet(a, b))).collect())
        .collect();

    let mut found = BTreeSet::new();
    let mut assignment = vec![0; pairs.len()];
    // Odometer over the choice lists.
    let mut digits = vec![0usize; pairs.len()];
    loop {
        for (k, &d) in digits.iter().enumerate() {
            assignment[k] = choices[k][d];
        }
        let table = CommutatorTable::from_fn(l, |x, y| {
            l.join_all(pairs.iter().zip(&assignment).filter_map(|(&(a, b), &v)| {
                let hit = (l.leq(a, x) && l.leq(b, y)) || (l.leq(b, x) && l.leq(a, y));
                hit.then_some(v)
            }))
        });
        if table.validate().is_valid() {
            found.insert(table.t);
        }
        let mut k = 0;
        while k < digits.len() {
            digits[k] += 1;
            if digits[k] < choices[k].len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == digits.len() {
            break;
        }
    }
    Ok(found
        .into_iter()
        .take(cap)
        .map(|t| {
            Commutator(CommutatorTable {
                lattice: l.clone(),
                t,
            })
        })
        .collect())
}

/// `(lo : hi)` for the largest commutator, checked against `Γ(lo, hi)`.
pub fn largest_residuation_at_cover(l: &FiniteLattice, i: PrimeInterval) -> Result<usize> {
    let proj = Projectivity::new(l)?;
    let gamma = proj.gamma(i)?;
    let r = largest_commutator(l).residuation(i.lo, i.hi);
    if r != gamma {
        return Err(LatticeError::TheoremViolation(format!(
            "residuation of the largest commutator at [{}, {}] is {r}, gamma is {gamma}",
            i.lo, i.hi
        )));
    }
    Ok(r)
}
