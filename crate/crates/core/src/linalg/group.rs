use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::{invariant_factors, snf};

/// A finitely generated abelian group `Z^generators / rowspace(relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedGroup {
    pub generators: usize,
    pub relations: IntMatrix,
}

/// Isomorphism type `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `t_i | t_{i+1}`, `t_i > 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupInvariants {
    pub free_rank: usize,
    #[serde(with = "crate::json_int::vec")]
    pub torsion: Vec<BigInt>,
}

impl GroupInvariants {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        GroupInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds the invariants from the nonzero invariant factors of a
    /// relation matrix on `generators` generators.
    pub fn from_factors(generators: usize, factors: &[BigInt]) -> Self {
        GroupInvariants {
            free_rank: generators - factors.len(),
            torsion: factors.iter().filter(|f| !f.is_one()).cloned().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Tensoring with the rationals.
    pub fn rational(&self) -> Self {
        Self::free(self.free_rank)
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl PresentedGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.cols(), generators, "relation width mismatch");
        PresentedGroup {
            generators,
            relations,
        }
    }

    pub fn free(generators: usize) -> Self {
        Self::new(generators, IntMatrix::zeros(0, generators))
    }

    pub fn invariants(&self) -> GroupInvariants {
        GroupInvariants::from_factors(self.generators, &invariant_factors(&self.relations))
    }

    pub fn is_zero(&self) -> bool {
        self.invariants().is_zero()
    }

    /// An isomorphic presentation with diagonal relations.
    ///
    /// Returns `(orders, to_new, from_new)`: generator `i` of the reduced
    /// group has order `orders[i]` (zero means infinite); `to_new` maps old
    /// generator coordinates to new ones and `from_new` lifts new generators
    /// back to old coordinates.
    pub fn reduce(&self) -> ReducedGroup {
        let s = snf(&self.relations);
        // relations * right = left^{-1} * diag, so in the coordinates
        // y = x * right the relation lattice is spanned by diagonal rows
        let right = &s.right;
        let right_inv = super::hnf::hnf(right).u;
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..self.generators {
            let order = s.factors.get(i).cloned().unwrap_or_default();
            if !order.is_one() {
                keep.push(i);
                orders.push(order);
            }
        }
        ReducedGroup {
            orders,
            to_new: right.select_cols(&keep),
            from_new: right_inv.select_rows(&keep),
        }
    }
}

/// See [`PresentedGroup::reduce`].
#[derive(Debug, Clone)]
pub struct ReducedGroup {
    pub orders: Vec<BigInt>,
    pub to_new: IntMatrix,
    pub from_new: IntMatrix,
}

impl ReducedGroup {
    pub fn invariants(&self) -> GroupInvariants {
        let mut torsion: Vec<BigInt> = self
            .orders
            .iter()
            .filter(|o| **o != BigInt::from(0))
            .cloned()
            .collect();
        torsion.sort();
        GroupInvariants {
            free_rank: self.orders.iter().filter(|o| **o == BigInt::from(0)).count(),
            torsion,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let g = PresentedGroup::new(3, IntMatrix::from_i64(&[&[2, 0, 0]]));
        assert_eq!(g.invariants().to_string(), "Z^2 + Z/2");
        assert_eq!(GroupInvariants::zero().to_string(), "0");
    }

    #[test]
    fn reduction_round_trip() {
        let g = PresentedGroup::new(3, IntMatrix::from_i64(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]));
        let r = g.reduce();
        assert_eq!(r.orders, vec![BigInt::from(2)]);
        assert_eq!(r.invariants(), g.invariants());
        // lifting then projecting is the identity on new coordinates
        let back = r.from_new.mul(&r.to_new);
        assert!(back.is_identity());
    }
}
