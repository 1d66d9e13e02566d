use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::group::PresentedGroup;
use super::hnf::{hnf, hnf_basis};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A subgroup of `Z^ambient`, stored as its canonical Hermite basis.
///
/// Equal lattices compare equal, so `==` decides lattice equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice(Z^{}, {:?})", self.ambient, self.basis)
    }
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The lattice spanned by the rows of `generators`.
    pub fn span(generators: &IntMatrix) -> Self {
        let (basis, pivots) = hnf_basis(generators);
        Lattice {
            ambient: generators.cols(),
            basis,
            pivots,
        }
    }

    pub fn span_rows(rows: Vec<Vec<BigInt>>, ambient: usize) -> Self {
        Self::span(&IntMatrix::from_rows(rows, ambient))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient && self.basis.is_identity()
    }

    fn check_ambient(&self, other: &Lattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Coordinates of `x` in the Hermite basis, if `x` lies in the lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.ambient, "vector length mismatch");
        let mut rest = x.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        let mut col = 0;
        for (k, &p) in self.pivots.iter().enumerate() {
            if rest[col..p].iter().any(|e| !e.is_zero()) {
                return None;
            }
            let pivot = &self.basis[(k, p)];
            let (q, r) = rest[p].div_rem(pivot);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, e) in self.basis.row(k).iter().enumerate().skip(p) {
                    if !e.is_zero() {
                        rest[j] -= &q * e;
                    }
                }
            }
            coords.push(q);
            col = p + 1;
        }
        if rest[col..].iter().any(|e| !e.is_zero()) {
            return None;
        }
        Some(coords)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis.iter_rows().all(|r| self.contains(r)))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        Ok(Lattice::span(&self.basis.vstack(&other.basis)))
    }

    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Lattice::zero(self.ambient));
        }
        // y * [A; B] = 0 with y = (x, z) gives x * A = -z * B in both lattices
        let stacked = self.basis.vstack(&other.basis);
        let kernel = hnf(&stacked).left_kernel();
        let r = self.rank();
        let coeffs = kernel.select_cols(&(0..r).collect::<Vec<_>>());
        Ok(Lattice::span(&coeffs.mul(&self.basis)))
    }

    /// Image under a linear map (rows of `map` are images of unit vectors).
    pub fn image(&self, map: &IntMatrix) -> Lattice {
        assert_eq!(map.rows(), self.ambient, "map source mismatch");
        Lattice::span(&self.basis.mul(map))
    }

    /// `{ x : x * map = 0 }`.
    pub fn kernel(map: &IntMatrix) -> Lattice {
        let k = hnf(map).left_kernel();
        let mut l = Lattice::span(&k);
        l.ambient = map.rows();
        l
    }

    /// `{ x : x * map ∈ target }`.
    pub fn preimage(map: &IntMatrix, target: &Lattice) -> Result<Lattice> {
        if map.cols() != target.ambient {
            return Err(Error::Dimension {
                expected: map.cols(),
                found: target.ambient,
            });
        }
        let stacked = map.vstack(&target.basis);
        let kernel = hnf(&stacked).left_kernel();
        let coeffs = kernel.select_cols(&(0..map.rows()).collect::<Vec<_>>());
        let mut l = Lattice::span(&coeffs);
        l.ambient = map.rows();
        Ok(l)
    }

    /// `{ x : k x ∈ self for some k ≠ 0 }`; the integer points of the rational span.
    pub fn saturate(&self) -> Lattice {
        if self.is_zero() || self.rank() == self.ambient {
            return if self.is_zero() {
                self.clone()
            } else {
                Lattice::full(self.ambient)
            };
        }
        let orth = hnf(&self.basis.transpose()).left_kernel();
        let k = hnf(&orth.transpose()).left_kernel();
        Lattice::span(&k)
    }

    pub fn is_saturated(&self) -> bool {
        self.saturate() == *self
    }

    /// Presentation of `Z^ambient / self`.
    pub fn quotient(&self) -> PresentedGroup {
        PresentedGroup::new(self.ambient, self.basis.clone())
    }

    /// Presentation of `self / sub`; `sub` must be contained in `self`.
    pub fn quotient_by(&self, sub: &Lattice) -> Result<PresentedGroup> {
        self.check_ambient(sub)?;
        let rows = sub
            .basis
            .iter_rows()
            .map(|r| self.coordinates(r).ok_or(Error::NotContained))
            .collect::<Result<Vec<_>>>()?;
        Ok(PresentedGroup::new(
            self.rank(),
            IntMatrix::from_rows(rows, self.rank()),
        ))
    }

    /// Index `[self : sub]` when finite.
    pub fn index_of(&self, sub: &Lattice) -> Result<Option<BigInt>> {
        let inv = self.quotient_by(sub)?.invariants();
        if inv.free_rank > 0 {
            return Ok(None);
        }
        Ok(Some(inv.torsion.iter().fold(BigInt::from(1), |a, b| a * b)))
    }

    /// Expands basis coordinates back into ambient coordinates.
    pub fn combine(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.basis.apply(coords)
    }

    pub fn content(&self) -> BigInt {
        self.basis
            .iter_rows()
            .flatten()
            .fold(BigInt::zero(), |g, e| g.gcd(&e.abs()))
    }
}
