use crate::error::{LatticeError, Result};

use super::FiniteLattice;

/// A lattice homomorphism between two finite lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    source: FiniteLattice,
    target: FiniteLattice,
    image: Vec<usize>,
}

impl LatticeMap {
    /// Checks that `image` preserves binary meets and joins.
    pub fn new(source: FiniteLattice, target: FiniteLattice, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.n() {
            return Err(LatticeError::NotAHomomorphism(format!(
                "image has {} entries, source has {} elements",
                image.len(),
                source.n()
            )));
        }
        if let Some(&e) = image.iter().find(|&&e| e >= target.n()) {
            return Err(LatticeError::ElementOutOfRange {
                elem: e,
                n: target.n(),
            });
        }
        for x in source.elements() {
            for y in source.elements() {
                if image[source.meet(x, y)] != target.meet(image[x], image[y]) {
                    return Err(LatticeError::NotAHomomorphism(format!(
                        "meet of {x} and {y} not preserved"
                    )));
                }
                if image[source.join(x, y)] != target.join(image[x], image[y]) {
                    return Err(LatticeError::NotAHomomorphism(format!(
                        "join of {x} and {y} not preserved"
                    )));
                }
            }
        }
        Ok(LatticeMap {
            source,
            target,
            image,
        })
    }

    /// The identity map on `l`.
    pub fn identity(l: &FiniteLattice) -> Self {
        LatticeMap {
            source: l.clone(),
            target: l.clone(),
            image: l.elements().collect(),
        }
    }

    pub fn source(&self) -> &FiniteLattice {
        &self.source
    }

    pub fn target(&self) -> &FiniteLattice {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// Sends bottom to bottom and top to top.
    pub fn is_zero_one(&self) -> bool {
        self.image[self.source.bottom()] == self.target.bottom()
            && self.image[self.source.top()] == self.target.top()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.n()];
        for &e in &self.image {
            hit[e] = true;
        }
        hit.into_iter().all(|h| h)
    }
}
