//! FB-modules: sequences of symmetric-group representations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

use super::injection::{all_injections, transposition_word};

/// A named representation usable as an FB generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Trivial,
    Sign,
    Regular,
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(Preset::Trivial),
            "sign" => Ok(Preset::Sign),
            "regular" => Ok(Preset::Regular),
            other => Err(Error::Invalid(format!("unknown representation preset {other:?}"))),
        }
    }
}

/// A representation of `S_m` given by the matrices of `t_1, ..., t_{m-1}`
/// acting on row vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    degree: usize,
    rank: usize,
    transpositions: Vec<IntMatrix>,
}

impl Representation {
    /// Checks shapes and the Coxeter relations of `S_degree`.
    pub fn new(degree: usize, rank: usize, transpositions: Vec<IntMatrix>) -> Result<Self> {
        if transpositions.len() != degree.saturating_sub(1) {
            return Err(Error::Coxeter {
                degree,
                relation: format!("expected {} transposition matrices", degree.saturating_sub(1)),
            });
        }
        for (i, t) in transpositions.iter().enumerate() {
            if t.rows() != rank || t.cols() != rank {
                return Err(Error::Coxeter {
                    degree,
                    relation: format!("t_{} is not {rank}x{rank}", i + 1),
                });
            }
        }
        let rep = Representation {
            degree,
            rank,
            transpositions,
        };
        if let Some(relation) = coxeter_violations(&rep.transpositions).into_iter().next() {
            return Err(Error::Coxeter { degree, relation });
        }
        Ok(rep)
    }

    pub fn preset(preset: Preset, degree: usize) -> Self {
        match preset {
            Preset::Trivial => Self::scalar(degree, 1),
            Preset::Sign => Self::scalar(degree, -1),
            Preset::Regular => Self::regular(degree),
        }
    }

    fn scalar(degree: usize, s: i64) -> Self {
        Representation {
            degree,
            rank: 1,
            transpositions: (1..degree).map(|_| IntMatrix::from_i64(&[&[s]])).collect(),
        }
    }

    /// `Z[S_m]` with basis the permutations in lexicographic one-line order
    /// and `e_τ · σ = e_{σ∘τ}`.
    pub fn regular(degree: usize) -> Self {
        let perms: Vec<Vec<usize>> = all_injections(degree, degree)
            .into_iter()
            .map(|f| f.images().to_vec())
            .collect();
        let index: std::collections::HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
        let r = perms.len();
        let transpositions = (1..degree)
            .map(|i| {
                let mut t = IntMatrix::zeros(r, r);
                for (k, p) in perms.iter().enumerate() {
                    // t_i ∘ τ swaps the values i and i+1 in the one-line notation
                    let q: Vec<usize> = p
                        .iter()
                        .map(|&v| if v == i { i + 1 } else if v == i + 1 { i } else { v })
                        .collect();
                    t[(k, index[q.as_slice()])] = 1.into();
                }
                t
            })
            .collect();
        Representation {
            degree,
            rank: r,
            transpositions,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn transpositions(&self) -> &[IntMatrix] {
        &self.transpositions
    }

    /// The matrix of the permutation with one-line notation `perm`.
    pub fn permutation_matrix(&self, perm: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::identity(self.rank);
        for i in transposition_word(perm) {
            m = m.mul(&self.transpositions[i - 1]);
        }
        m
    }

    /// `x · ρ(perm)` without forming the matrix.
    pub fn act(&self, x: &[num_bigint::BigInt], perm: &[usize]) -> Vec<num_bigint::BigInt> {
        transposition_word(perm)
            .into_iter()
            .fold(x.to_vec(), |v, i| self.transpositions[i - 1].apply(&v))
    }
}

/// Names of the violated Coxeter relations among `t_1, ..., t_{m-1}`.
pub fn coxeter_violations(t: &[IntMatrix]) -> Vec<String> {
    let mut out = Vec::new();
    let k = t.len();
    for i in 0..k {
        if !t[i].mul(&t[i]).is_identity() {
            out.push(format!("t_{}^2 = id", i + 1));
        }
        for j in i + 2..k {
            if t[i].mul(&t[j]) != t[j].mul(&t[i]) {
                out.push(format!("t_{} t_{} = t_{} t_{}", i + 1, j + 1, j + 1, i + 1));
            }
        }
        if i + 1 < k {
            let lhs = t[i].mul(&t[i + 1]).mul(&t[i]);
            let rhs = t[i + 1].mul(&t[i]).mul(&t[i + 1]);
            if lhs != rhs {
                out.push(format!("braid t_{} t_{}", i + 1, i + 2));
            }
        }
    }
    out
}

/// An FB-module with finitely many nonzero degrees: a direct sum of
/// representations, grouped by degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FbModule {
    /// Per degree, the block-diagonal sum of the summands in that degree.
    degrees: Vec<Representation>,
}

impl FbModule {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The direct sum of the given summands.
    pub fn from_summands(summands: impl IntoIterator<Item = Representation>) -> Self {
        let mut out = FbModule::zero();
        for s in summands {
            out.add(s);
        }
        out
    }

    pub fn concentrated(rep: Representation) -> Self {
        Self::from_summands([rep])
    }

    pub fn add(&mut self, rep: Representation) {
        let m = rep.degree;
        while self.degrees.len() <= m {
            let d = self.degrees.len();
            self.degrees.push(Representation {
                degree: d,
                rank: 0,
                transpositions: (1..d).map(|_| IntMatrix::zeros(0, 0)).collect(),
            });
        }
        let cur = &mut self.degrees[m];
        let r = cur.rank + rep.rank;
        cur.transpositions = cur
            .transpositions
            .iter()
            .zip(&rep.transpositions)
            .map(|(a, b)| block_diagonal(a, b))
            .collect();
        cur.rank = r;
    }

    /// Largest degree with a nonzero summand, if any.
    pub fn top_degree(&self) -> Option<usize> {
        self.degrees.iter().rposition(|r| r.rank > 0)
    }

    pub fn rank(&self, m: usize) -> usize {
        self.degrees.get(m).map_or(0, |r| r.rank)
    }

    pub fn at(&self, m: usize) -> Option<&Representation> {
        self.degrees.get(m).filter(|r| r.rank > 0)
    }

    pub fn nonzero_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degrees.len()).filter(|&m| self.degrees[m].rank > 0)
    }
}

fn block_diagonal(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.rows() + b.rows();
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            out[(a.rows() + i, a.cols() + j)] = b[(i, j)].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_satisfy_coxeter_relations() {
        for m in 0..=4 {
            for p in [Preset::Trivial, Preset::Sign, Preset::Regular] {
                let r = Representation::preset(p, m);
                assert!(coxeter_violations(r.transpositions()).is_empty(), "{p:?} {m}");
            }
        }
        assert_eq!(Representation::regular(3).rank(), 6);
    }

    #[test]
    fn non_braid_matrices_are_rejected() {
        // t_1 = swap, t_2 = identity on Z^2 is not a representation of S_3
        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let bad = Representation::new(3, 2, vec![swap.clone(), IntMatrix::identity(2)]);
        assert!(matches!(bad, Err(Error::Coxeter { .. })));
        let not_involution = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert!(Representation::new(2, 2, vec![not_involution]).is_err());
    }

    #[test]
    fn regular_action_is_left_multiplication() {
        let r = Representation::regular(3);
        // e_id · (1 2 3 -> 2 3 1) is the basis vector of that permutation
        let perm = [2, 3, 1];
        let m = r.permutation_matrix(&perm);
        let row = m.row(0);
        let index = all_injections(3, 3).iter().position(|f| f.images() == perm).unwrap();
        assert_eq!(row[index], 1.into());
    }

    #[test]
    fn sums_are_block_diagonal() {
        let fb = FbModule::from_summands([
            Representation::preset(Preset::Trivial, 2),
            Representation::preset(Preset::Sign, 2),
            Representation::preset(Preset::Trivial, 0),
        ]);
        assert_eq!(fb.rank(2), 2);
        assert_eq!(fb.rank(1), 0);
        assert_eq!(fb.top_degree(), Some(2));
        assert_eq!(fb.at(2).unwrap().transpositions()[0], IntMatrix::from_i64(&[&[1, 0], &[0, -1]]));
    }
}
