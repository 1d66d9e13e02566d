//! Free FI-modules `M(W)_T = ⊕_{S ⊂ T} W_S` on an FB-module `W`.
//!
//! The basis of `M(W)_n` is labelled by triples `(m, S, j)`: a degree `m`
//! with `W_m ≠ 0`, a sorted `m`-subset `S ⊂ [n]`, and a basis index `j` of
//! `W_m`. Labels are ordered by `m`, then lexicographically by `S`, then by
//! `j`. An injection `g` sends `(S, e_j)` to `(g(S), e_j · ρ(σ))`, where `σ`
//! records how `g` reorders the elements of `S`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

use super::fb::FbModule;
use super::injection::{subsets, transposition_word, Injection};
use super::module::{FiModule, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeBasisLabel {
    /// Generator degree.
    pub m: usize,
    /// Sorted subset of `[n]` of size `m`.
    pub subset: Vec<usize>,
    /// Basis index in `W_m`, 1-based.
    pub j: usize,
}

impl fmt::Display for FreeBasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.subset.iter().map(|v| v.to_string()).collect();
        write!(f, "({{{}}},{})", s.join(","), self.j)
    }
}

/// The labelled basis of one degree of a free module.
#[derive(Debug, Clone)]
pub struct FreeBasis {
    n: usize,
    labels: Vec<FreeBasisLabel>,
    blocks: HashMap<Vec<usize>, usize>,
}

impl FreeBasis {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[FreeBasisLabel] {
        &self.labels
    }

    /// Position of a label, if it belongs to this basis.
    pub fn index_of(&self, label: &FreeBasisLabel) -> Option<usize> {
        if label.j == 0 {
            return None;
        }
        let offset = *self.blocks.get(&label.subset)?;
        let l = self.labels.get(offset + label.j - 1)?;
        (l == label).then_some(offset + label.j - 1)
    }

    fn block_offset(&self, subset: &[usize]) -> usize {
        self.blocks[subset]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    fb: FbModule,
}

impl FreeModule {
    pub fn new(fb: FbModule) -> Self {
        FreeModule { fb }
    }

    pub fn fb(&self) -> &FbModule {
        &self.fb
    }

    /// Largest generator degree.
    pub fn generation_degree(&self) -> Option<usize> {
        self.fb.top_degree()
    }

    pub fn basis(&self, n: usize) -> FreeBasis {
        let mut labels = Vec::new();
        let mut blocks = HashMap::new();
        for m in self.fb.nonzero_degrees().filter(|&m| m <= n) {
            let r = self.fb.rank(m);
            for s in subsets(n, m) {
                blocks.insert(s.clone(), labels.len());
                labels.extend((1..=r).map(|j| FreeBasisLabel {
                    m,
                    subset: s.clone(),
                    j,
                }));
            }
        }
        FreeBasis { n, labels, blocks }
    }

    pub fn rank(&self, n: usize) -> usize {
        self.basis(n).len()
    }

    /// `g_*(x)` by straightening, for `x` in degree `src.degree()`.
    pub fn push(&self, src: &FreeBasis, dst: &FreeBasis, g: &Injection, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(g.source(), src.n);
        assert_eq!(g.target(), dst.n);
        assert_eq!(x.len(), src.len());
        let mut out = vec![BigInt::zero(); dst.len()];
        let mut k = 0;
        while k < src.labels.len() {
            let label = &src.labels[k];
            let rep = self.fb.at(label.m).expect("label degree is nonzero");
            let r = rep.rank();
            let block = &x[k..k + r];
            k += r;
            if block.iter().all(Zero::is_zero) {
                continue;
            }
            let (image, sigma) = straighten(g, &label.subset);
            let moved = rep.act(block, &sigma);
            let offset = dst.block_offset(&image);
            for (j, v) in moved.into_iter().enumerate() {
                out[offset + j] += v;
            }
        }
        out
    }

    /// Matrix of `g_*` on the labelled bases.
    pub fn injection_matrix(&self, g: &Injection) -> IntMatrix {
        let src = self.basis(g.source());
        let dst = self.basis(g.target());
        self.injection_matrix_on(&src, &dst, g)
    }

    pub fn injection_matrix_on(&self, src: &FreeBasis, dst: &FreeBasis, g: &Injection) -> IntMatrix {
        let mut out = IntMatrix::zeros(src.len(), dst.len());
        for (k, label) in src.labels.iter().enumerate() {
            let rep = self.fb.at(label.m).expect("label degree is nonzero");
            let (image, sigma) = straighten(g, &label.subset);
            let offset = dst.block_offset(&image);
            let row = rep.permutation_row(label.j - 1, &sigma);
            for (j, v) in row.into_iter().enumerate() {
                out[(k, offset + j)] = v;
            }
        }
        out
    }

    /// The truncated FI-module `M(W)` up to degree `n_max`.
    pub fn to_module(&self, ring: Ring, n_max: usize) -> FiModule {
        let bases: Vec<FreeBasis> = (0..=n_max).map(|n| self.basis(n)).collect();
        let transpositions = (0..=n_max)
            .map(|n| {
                (1..n)
                    .map(|i| self.injection_matrix_on(&bases[n], &bases[n], &Injection::transposition(n, i)))
                    .collect()
            })
            .collect();
        let inclusions = (0..n_max)
            .map(|n| self.injection_matrix_on(&bases[n], &bases[n + 1], &Injection::standard(n, n + 1)))
            .collect();
        FiModule::based(ring, bases.iter().map(FreeBasis::len).collect(), transpositions, inclusions)
            .expect("free modules are well formed")
    }

    /// Coordinates of a labelled element; rejects labels outside the basis.
    pub fn element(&self, n: usize, terms: &[(FreeBasisLabel, BigInt)]) -> Result<Vec<BigInt>> {
        let basis = self.basis(n);
        let mut x = vec![BigInt::zero(); basis.len()];
        for (label, c) in terms {
            let valid_subset = label.subset.len() == label.m
                && label.subset.windows(2).all(|w| w[0] < w[1])
                && label.subset.iter().all(|&v| v >= 1 && v <= n);
            if !valid_subset {
                return Err(Error::Invalid(format!("label {label} is not a sorted {}-subset of [{n}]", label.m)));
            }
            let k = basis
                .index_of(label)
                .ok_or_else(|| Error::Invalid(format!("label {label} not in the basis of degree {n}")))?;
            x[k] += c;
        }
        Ok(x)
    }
}

/// Image set `g(S)` and the permutation `σ` with `g|_S ∘ ord_S = ord_{g(S)} ∘ σ`.
fn straighten(g: &Injection, subset: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let imgs: Vec<usize> = subset.iter().map(|&s| g.apply(s)).collect();
    let mut image = imgs.clone();
    image.sort_unstable();
    let sigma = imgs
        .iter()
        .map(|v| image.binary_search(v).expect("present") + 1)
        .collect();
    (image, sigma)
}

impl super::fb::Representation {
    /// Row `j` of the matrix of the permutation `perm`.
    pub fn permutation_row(&self, j: usize, perm: &[usize]) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.rank()];
        e[j] = BigInt::from(1);
        if transposition_word(perm).is_empty() {
            return e;
        }
        self.act(&e, perm)
    }
}
