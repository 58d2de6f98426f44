//! Forcing of abelian, nilpotent and solvable type.
//!
//! A lattice forces a type when its largest commutator multiplication has
//! that type. Solvable and nilpotent forcing are also decided through lattice
//! conditions (no homomorphism onto `B2`; `Γ = 1` on every cover) and the two
//! routes are compared on every call. Abelian forcing is decided exactly by
//! `⌊1, 1⌋ = 0`; a bounded search for a simple complemented modular
//! (0,1)-sublattice supplies a witness when one is small enough to find.

use serde::Serialize;

use crate::commutator::{largest_commutator, Commutator, SeriesReport};
use crate::error::{LatticeError, Result};
use crate::lattice::{FiniteLattice, SublatticeEmbedding};
use crate::projectivity::{splitting_pairs, PrimeInterval, Projectivity, SplittingPair};

/// Bounds for the abelian-witness sublattice search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    /// Largest sublattice size tried.
    pub max_members: usize,
    /// Number of candidate subsets examined before giving up.
    pub max_candidates: usize,
}

impl Default for WitnessSearch {
    fn default() -> Self {
        WitnessSearch {
            max_members: 12,
            max_candidates: 1 << 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvableVerdict {
    pub forces: bool,
    /// Meet irreducible the `B2` quotient was built from.
    pub lonesome_meet_irreducible: Option<usize>,
    /// Images of the (0,1)-homomorphism onto `B2`, when one exists.
    pub b2_quotient: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverGamma {
    pub lo: usize,
    pub hi: usize,
    pub gamma: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotentVerdict {
    pub forces: bool,
    pub covers: Vec<CoverGamma>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianVerdict {
    pub forces: bool,
    /// `⌊1, 1⌋`.
    pub top_commutator: usize,
    /// Members of a simple complemented modular (0,1)-sublattice with at least
    /// three elements.
    pub witness: Option<Vec<usize>>,
    /// Whether every (0,1)-sublattice was examined.
    pub witness_search_exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingVerdict {
    /// The lattice does not split. For congruence lattices of algebras in a
    /// congruence modular variety this is the lattice-side condition for
    /// supernilpotency.
    pub non_splitting: bool,
    pub splitting_pairs: Vec<SplittingPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcingReport {
    pub n: usize,
    pub top: usize,
    pub modular: bool,
    pub largest_series: SeriesReport,
    pub solvable: SolvableVerdict,
    pub nilpotent: NilpotentVerdict,
    pub abelian: AbelianVerdict,
    pub supernilpotency_shape: SplittingVerdict,
}

impl ForcingReport {
    pub fn summary(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut s = format!("lattice with {} elements (modular)\n", self.n);
        s += &format!("largest commutator type: {}\n", self.largest_series.kind);
        s += &format!(
            "forces abelian type:     {} ([1,1] = {})",
            yn(self.abelian.forces),
            self.abelian.top_commutator
        );
        if let Some(w) = &self.abelian.witness {
            s += &format!(", witness sublattice {w:?}");
        }
        s += "\n";
        s += &format!("forces nilpotent type:   {}", yn(self.nilpotent.forces));
        let low: Vec<String> = self
            .nilpotent
            .covers
            .iter()
            .filter(|c| c.gamma != self.top)
            .take(4)
            .map(|c| format!("Gamma({},{}) = {}", c.lo, c.hi, c.gamma))
            .collect();
        if !self.nilpotent.forces && !low.is_empty() {
            s += &format!(" ({})", low.join(", "));
        }
        s += "\n";
        s += &format!("forces solvable type:    {}", yn(self.solvable.forces));
        if let Some(img) = &self.solvable.b2_quotient {
            s += &format!(" (maps onto B2 via {img:?})");
        }
        s += "\n";
        s += &format!(
            "does not split:          {}",
            yn(self.supernilpotency_shape.non_splitting)
        );
        if let Some(p) = self.supernilpotency_shape.splitting_pairs.first() {
            s += &format!(" (splitting pair ({}, {}))", p.delta, p.epsilon);
        }
        s += "\n";
        s
    }
}

fn series_of_largest(l: &FiniteLattice) -> Result<(Commutator, SeriesReport)> {
    let largest = largest_commutator(l);
    let series = largest.series()?;
    Ok((largest, series))
}

fn solvable_verdict(proj: &Projectivity<'_>, series: &SeriesReport) -> Result<SolvableVerdict> {
    let h = proj.b2_quotient()?;
    let forces = h.is_none();
    if forces != series.kind.is_solvable() {
        return Err(LatticeError::TheoremViolation(format!(
            "B2 quotient {} but largest commutator has type {}",
            if forces { "absent" } else { "present" },
            series.kind
        )));
    }
    let lonesome = proj
        .meet_irreducibles()
        .iter()
        .find(|&&m| proj.is_lonesome_meet(m))
        .map(|m| m.elem());
    Ok(SolvableVerdict {
        forces,
        lonesome_meet_irreducible: lonesome,
        b2_quotient: h.map(|h| h.image().to_vec()),
    })
}

fn nilpotent_verdict(proj: &Projectivity<'_>, series: &SeriesReport) -> Result<NilpotentVerdict> {
    let l = proj.lattice();
    let covers = PrimeInterval::all(l)
        .into_iter()
        .map(|i| {
            Ok(CoverGamma {
                lo: i.lo,
                hi: i.hi,
                gamma: proj.gamma(i)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let forces = covers.iter().all(|c| c.gamma == l.top());
    if forces != series.kind.is_nilpotent() {
        return Err(LatticeError::TheoremViolation(format!(
            "Gamma = 1 on every cover is {forces} but largest commutator has type {}",
            series.kind
        )));
    }
    Ok(NilpotentVerdict { forces, covers })
}

/// Searches (0,1)-sublattices with at least three elements for one that is
/// simple, complemented, and modular. Returns the witness and whether the
/// search covered every (0,1)-sublattice.
pub fn abelian_witness(l: &FiniteLattice, search: WitnessSearch) -> (Option<Vec<usize>>, bool) {
    if l.n() < 3 {
        return (None, true);
    }
    let interior: Vec<usize> = l
        .elements()
        .filter(|&x| x != l.bottom() && x != l.top())
        .collect();
    let max_extra = search.max_members.saturating_sub(2).min(interior.len());
    let mut examined = 0usize;
    let mut idx: Vec<usize> = Vec::new();
    for size in 1..=max_extra {
        idx.clear();
        idx.extend(0..size);
        loop {
            examined += 1;
            if examined > search.max_candidates {
                return (None, false);
            }
            let members: Vec<usize> = [l.bottom(), l.top()]
                .into_iter()
                .chain(idx.iter().map(|&i| interior[i]))
                .collect();
            let closed = members.iter().all(|&x| {
                members
                    .iter()
                    .all(|&y| members.contains(&l.meet(x, y)) && members.contains(&l.join(x, y)))
            });
            if closed {
                let s = SublatticeEmbedding::new(l.clone(), members).expect("closed subset");
                let sub = s.to_lattice().expect("nonempty sublattice");
                if sub.is_modular() && sub.is_complemented() && sub.is_simple() {
                    return (Some(s.members().to_vec()), true);
                }
            }
            if !next_combination(&mut idx, interior.len()) {
                break;
            }
        }
    }
    (None, max_extra == interior.len())
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn abelian_verdict(
    l: &FiniteLattice,
    largest: &Commutator,
    search: WitnessSearch,
) -> Result<AbelianVerdict> {
    let top_commutator = largest.get(l.top(), l.top());
    let forces = top_commutator == l.bottom();
    let (witness, exhaustive) = abelian_witness(l, search);
    if witness.is_some() && !forces {
        return Err(LatticeError::TheoremViolation(format!(
            "simple complemented modular (0,1)-sublattice {witness:?} found but [1,1] = {top_commutator}"
        )));
    }
    Ok(AbelianVerdict {
        forces,
        top_commutator,
        witness,
        witness_search_exhaustive: exhaustive,
    })
}

pub fn forces_solvable_type(l: &FiniteLattice) -> Result<bool> {
    let proj = Projectivity::new(l)?;
    let (_, series) = series_of_largest(l)?;
    Ok(solvable_verdict(&proj, &series)?.forces)
}

pub fn forces_nilpotent_type(l: &FiniteLattice) -> Result<bool> {
    let proj = Projectivity::new(l)?;
    let (_, series) = series_of_largest(l)?;
    Ok(nilpotent_verdict(&proj, &series)?.forces)
}

pub fn forces_abelian_type(l: &FiniteLattice) -> Result<bool> {
    forces_abelian_type_with(l, WitnessSearch::default())
}

pub fn forces_abelian_type_with(l: &FiniteLattice, search: WitnessSearch) -> Result<bool> {
    l.require_modular()?;
    let largest = largest_commutator(l);
    Ok(abelian_verdict(l, &largest, search)?.forces)
}

/// The lattice does not split.
pub fn supernilpotency_shape(l: &FiniteLattice) -> bool {
    splitting_pairs(l).is_empty()
}

pub fn analyze(l: &FiniteLattice) -> Result<ForcingReport> {
    analyze_with(l, WitnessSearch::default())
}

pub fn analyze_with(l: &FiniteLattice, search: WitnessSearch) -> Result<ForcingReport> {
    let proj = Projectivity::new(l)?;
    let (largest, series) = series_of_largest(l)?;
    let solvable = solvable_verdict(&proj, &series)?;
    let nilpotent = nilpotent_verdict(&proj, &series)?;
    let abelian = abelian_verdict(l, &largest, search)?;
    if abelian.forces != series.kind.is_abelian() {
        return Err(LatticeError::InternalCheckFailed(
            "abelian verdict disagrees with the series type".into(),
        ));
    }
    if (abelian.forces && !nilpotent.forces) || (nilpotent.forces && !solvable.forces) {
        return Err(LatticeError::TheoremViolation(format!(
            "type nesting violated: abelian {}, nilpotent {}, solvable {}",
            abelian.forces, nilpotent.forces, solvable.forces
        )));
    }
    let pairs = splitting_pairs(l);
    Ok(ForcingReport {
        n: l.n(),
        top: l.top(),
        modular: true,
        largest_series: series,
        solvable,
        nilpotent,
        abelian,
        supernilpotency_shape: SplittingVerdict {
            non_splitting: pairs.is_empty(),
            splitting_pairs: pairs,
        },
    })
}
