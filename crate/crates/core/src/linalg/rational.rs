//! Exact rational row reduction.
//!
//! Rational-mode modules are stored as saturated integer lattices; this
//! module provides the field-side view (reduced row echelon form over `Q`)
//! used to cross-check them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lattice::Lattice;
use super::matrix::IntMatrix;

/// A subspace of `Q^ambient` in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rref: Vec<Vec<BigRational>>,
}

/// Reduced row echelon form of the rows; zero rows are dropped.
pub fn rref(rows: &[Vec<BigRational>], ambient: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut r = 0;
    for c in 0..ambient {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for e in a[r].iter_mut() {
            *e *= &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..ambient {
                let delta = &f * &a[r][j];
                a[i][j] -= delta;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    m.iter_rows()
        .map(|r| r.iter().map(|e| BigRational::from_integer(e.clone())).collect())
        .collect()
}

impl Subspace {
    pub fn span(generators: &IntMatrix) -> Self {
        Subspace {
            ambient: generators.cols(),
            rref: rref(&to_rational(generators), generators.cols()),
        }
    }

    pub fn of_lattice(l: &Lattice) -> Self {
        Self::span(l.basis())
    }

    pub fn dim(&self) -> usize {
        self.rref.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        let mut rows = self.rref.clone();
        rows.push(x.iter().map(|e| BigRational::from_integer(e.clone())).collect());
        rref(&rows, self.ambient).len() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rref.clone();
        rows.extend(other.rref.iter().cloned());
        Subspace {
            ambient: self.ambient,
            rref: rref(&rows, self.ambient),
        }
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // dim(A ∩ B) via kernel of [A; B]: solve x*A = y*B
        let n = self.ambient;
        let ra = self.dim();
        let stacked: Vec<Vec<BigRational>> = self.rref.iter().chain(other.rref.iter()).cloned().collect();
        // transpose and row reduce to find the kernel of stacked^T
        let rows = stacked.len();
        let t: Vec<Vec<BigRational>> = (0..n).map(|j| (0..rows).map(|i| stacked[i][j].clone()).collect()).collect();
        let red = rref(&t, rows);
        let pivots: Vec<usize> = red
            .iter()
            .map(|r| r.iter().position(|e| !e.is_zero()).expect("nonzero row"))
            .collect();
        let mut basis = Vec::new();
        for free in (0..rows).filter(|c| !pivots.contains(c)) {
            let mut v = vec![BigRational::zero(); rows];
            v[free] = BigRational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            let mut w = vec![BigRational::zero(); n];
            for (i, coef) in v.iter().enumerate().take(ra) {
                if coef.is_zero() {
                    continue;
                }
                for j in 0..n {
                    w[j] += coef * &self.rref[i][j];
                }
            }
            basis.push(w);
        }
        Subspace {
            ambient: n,
            rref: rref(&basis, n),
        }
    }
}
