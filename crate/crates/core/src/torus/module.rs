use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};
use num::{BigInt, BigRational};

/// One weight of a quasitorus module: a character of the ambient group with
/// its multiplicity `dim V(λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    coords: Vec<BigInt>,
    multiplicity: usize,
}

impl Weight {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }
}

/// A quasitorus module as a multiset of characters: pairwise distinct
/// weights with positive multiplicities over `X(T) = Z^r ⊕ ⊕ Z/d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightModule {
    character_group: FgAbelianGroup,
    weights: Vec<Weight>,
}

impl WeightModule {
    pub fn new(
        character_group: FgAbelianGroup,
        weights: Vec<(Vec<BigInt>, usize)>,
    ) -> Result<Self> {
        let mut reduced: Vec<Weight> = Vec::with_capacity(weights.len());
        for (coords, multiplicity) in weights {
            if multiplicity == 0 {
                return Err(Error::ShapeMismatch(
                    "weight multiplicities must be positive".into(),
                ));
            }
            let coords = character_group.reduce(&coords)?;
            if reduced.iter().any(|w| w.coords == coords) {
                return Err(Error::ShapeMismatch(format!(
                    "duplicate weight {coords:?}; merge multiplicities instead"
                )));
            }
            reduced.push(Weight {
                coords,
                multiplicity,
            });
        }
        Ok(WeightModule {
            character_group,
            weights: reduced,
        })
    }

    pub fn character_group(&self) -> &FgAbelianGroup {
        &self.character_group
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Module dimension: the sum of the multiplicities.
    pub fn dim(&self) -> usize {
        self.weights.iter().map(|w| w.multiplicity).sum()
    }

    /// Free part of a weight, as a rational vector; torsion coordinates are
    /// invisible to the convex-geometry predicates.
    pub fn free_part(&self, index: usize) -> Vec<BigRational> {
        let r = self.character_group.free_rank();
        self.weights[index].coords[..r]
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect()
    }

    /// The module `V^{⊕ k}`: same characters, multiplicities scaled by `k`.
    pub fn direct_sum_power(&self, k: usize) -> Result<WeightModule> {
        if k == 0 {
            return Err(Error::ShapeMismatch("direct sum power needs k >= 1".into()));
        }
        Ok(WeightModule {
            character_group: self.character_group.clone(),
            weights: self
                .weights
                .iter()
                .map(|w| Weight {
                    coords: w.coords.clone(),
                    multiplicity: w.multiplicity * k,
                })
                .collect(),
        })
    }
}
