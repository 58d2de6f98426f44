use crate::error::{LatticeError, Result};

use super::FiniteLattice;

/// A partition of `0..n`, stored as a class index per element. Class indices
/// are normalized so that classes are numbered in order of their least
/// element; two partitions are equal iff they have the same blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePartition {
    class_of: Vec<usize>,
}

impl LatticePartition {
    /// Normalizes an arbitrary labeling into a partition.
    pub fn from_class_of(labels: Vec<usize>) -> Self {
        let mut renumber = std::collections::HashMap::new();
        let class_of = labels
            .iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(*l).or_insert(next)
            })
            .collect();
        LatticePartition { class_of }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n {
                    return Err(LatticeError::ElementOutOfRange { elem: x, n });
                }
                if labels[x] != usize::MAX {
                    return Err(LatticeError::NotACongruence(format!(
                        "element {x} appears in more than one block"
                    )));
                }
                labels[x] = id;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(LatticeError::NotACongruence(format!(
                "element {x} is in no block"
            )));
        }
        Ok(Self::from_class_of(labels))
    }

    pub fn identity(n: usize) -> Self {
        LatticePartition {
            class_of: (0..n).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        LatticePartition {
            class_of: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[usize] {
        &self.class_of
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn block_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (x, &c) in self.class_of.iter().enumerate() {
            blocks[c].push(x);
        }
        blocks
    }

    /// Least element of every block, by block index.
    pub fn representatives(&self) -> Vec<usize> {
        self.blocks().iter().map(|b| b[0]).collect()
    }

    /// Pairs `(x, rep(x))` that generate this equivalence.
    pub fn generating_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let reps = self.representatives();
        self.class_of
            .iter()
            .enumerate()
            .map(move |(x, &c)| (x, reps[c]))
    }

    /// True iff every pair related here is related in `other`.
    pub fn refines(&self, other: &LatticePartition) -> bool {
        self.n() == other.n() && self.generating_pairs().all(|(x, r)| other.related(x, r))
    }

    /// Describes the first failure of the substitution property, if any.
    pub fn congruence_violation(&self, l: &FiniteLattice) -> Option<String> {
        if self.n() != l.n() {
            return Some(format!(
                "partition has {} elements, lattice {}",
                self.n(),
                l.n()
            ));
        }
        for (x, y) in self.generating_pairs() {
            for z in l.elements() {
                if !self.related(l.meet(x, z), l.meet(y, z)) {
                    return Some(format!("{x} ~ {y} but {x} ^ {z} !~ {y} ^ {z}"));
                }
                if !self.related(l.join(x, z), l.join(y, z)) {
                    return Some(format!("{x} ~ {y} but {x} v {z} !~ {y} v {z}"));
                }
            }
        }
        None
    }

    pub fn is_congruence(&self, l: &FiniteLattice) -> bool {
        self.congruence_violation(l).is_none()
    }
}
