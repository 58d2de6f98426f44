use crate::error::{LatticeError, Result};

use super::FiniteLattice;

/// A subset of an ambient lattice closed under binary meet and join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeEmbedding {
    ambient: FiniteLattice,
    members: Vec<usize>,
}

impl SublatticeEmbedding {
    pub fn new(ambient: FiniteLattice, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&e) = members.iter().find(|&&e| e >= ambient.n()) {
            return Err(LatticeError::ElementOutOfRange {
                elem: e,
                n: ambient.n(),
            });
        }
        let contains = |x: usize| members.binary_search(&x).is_ok();
        for &x in &members {
            for &y in &members {
                if !contains(ambient.meet(x, y)) {
                    return Err(LatticeError::NotASublattice(format!(
                        "meet of {x} and {y} is missing"
                    )));
                }
                if !contains(ambient.join(x, y)) {
                    return Err(LatticeError::NotASublattice(format!(
                        "join of {x} and {y} is missing"
                    )));
                }
            }
        }
        Ok(SublatticeEmbedding { ambient, members })
    }

    pub fn whole(ambient: &FiniteLattice) -> Self {
        SublatticeEmbedding {
            ambient: ambient.clone(),
            members: ambient.elements().collect(),
        }
    }

    pub fn ambient(&self) -> &FiniteLattice {
        &self.ambient
    }

    /// Members in increasing index order; position `i` is element `i` of
    /// [`Self::to_lattice`].
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// Contains the ambient bottom and top.
    pub fn is_zero_one(&self) -> bool {
        self.contains(self.ambient.bottom()) && self.contains(self.ambient.top())
    }

    /// Meet of all members above `x`.
    pub fn closure(&self, x: usize) -> Result<usize> {
        if self.members.is_empty() {
            return Err(LatticeError::EmptySublattice);
        }
        let mut above = self
            .members
            .iter()
            .copied()
            .filter(|&m| self.ambient.leq(x, m))
            .peekable();
        if above.peek().is_none() {
            return Err(LatticeError::NoMemberAbove(x));
        }
        Ok(above.fold(self.ambient.top(), |acc, m| self.ambient.meet(acc, m)))
    }

    /// The members as a standalone lattice, relabeled by position.
    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        if self.members.is_empty() {
            return Err(LatticeError::EmptySublattice);
        }
        let k = self.members.len();
        let mut leq = vec![false; k * k];
        for (i, &x) in self.members.iter().enumerate() {
            for (j, &y) in self.members.iter().enumerate() {
                leq[i * k + j] = self.ambient.leq(x, y);
            }
        }
        FiniteLattice::from_order(k, &leq)
    }
}

/// Every (0,1)-sublattice with at most `max_members` elements, smallest
/// first. Exhaustive over subsets of the interior, so only meant for small
/// lattices.
pub fn zero_one_sublattices(l: &FiniteLattice, max_members: usize) -> Vec<SublatticeEmbedding> {
    let ends: Vec<usize> = if l.n() == 1 {
        vec![0]
    } else {
        vec![l.bottom(), l.top()]
    };
    let interior: Vec<usize> = l.elements().filter(|x| !ends.contains(x)).collect();
    let mut out = Vec::new();
    let max_extra = max_members.saturating_sub(ends.len()).min(interior.len());
    for size in 0..=max_extra {
        for_each_combination(interior.len(), size, &mut |idx| {
            let members = ends.iter().copied().chain(idx.iter().map(|&i| interior[i]));
            if let Ok(s) = SublatticeEmbedding::new(l.clone(), members) {
                out.push(s);
            }
        });
    }
    out
}

pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}
