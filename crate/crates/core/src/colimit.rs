//! The colimit of `W_S` over the subsets `S ⊂ T` with `|S| <= N`, and the
//! smallest `N` for which it recovers `W_T`.
//!
//! Every subset of size below `N` sits inside one of size exactly `N` (when
//! `N <= |T|`), and two top subsets are identified through chains of top
//! subsets that pairwise meet in `N - 1` points. So the colimit is
//! `⊕_{|S| = N} W_S` modulo the relations of each summand and, for every
//! `(N-1)`-subset `S'`, the identification of the images of `W_{S'}` in
//! the top subsets containing it.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fi::{subsets, FiModule, Injection};
use crate::linalg::{GroupInvariants, IntMatrix, Lattice, SparseIntMatrix};

/// The colimit as a presented group together with its comparison map.
#[derive(Debug, Clone)]
pub struct ColimitResult {
    pub t_size: usize,
    pub n_cap: usize,
    /// One block of generators per top subset, in lexicographic order.
    pub tops: Vec<Vec<usize>>,
    pub relations: SparseIntMatrix,
    /// Row `i` is the image in `W_T` of generator `i`.
    pub comparison: IntMatrix,
    pub colimit: GroupInvariants,
    pub target: GroupInvariants,
    pub surjective: bool,
    pub isomorphism: bool,
}

impl ColimitResult {
    pub fn generators(&self) -> usize {
        self.relations.ncols()
    }
}

fn rows_of(m: &IntMatrix, offset: usize) -> Vec<Vec<(usize, BigInt)>> {
    m.iter_rows()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| **v != BigInt::from(0))
                .map(|(j, v)| (offset + j, v.clone()))
                .collect()
        })
        .collect()
}

/// The colimit for `T = [t_size]` and cap `n_cap`.
///
/// Isomorphism is decided as surjectivity plus equal invariants, which
/// suffices because a surjection between isomorphic finitely generated
/// abelian groups is injective.
pub fn subset_colimit(w: &FiModule, t_size: usize, n_cap: usize) -> Result<ColimitResult> {
    if t_size > w.truncation() {
        return Err(Error::Truncation {
            degree: t_size,
            truncation: w.truncation(),
        });
    }
    if n_cap > t_size {
        return Err(Error::Invalid(format!("cap {n_cap} exceeds |T| = {t_size}")));
    }
    let ring = w.ring();
    let c = n_cap;
    let r = w.rank(c);
    let tops = subsets(t_size, c);
    let offset = |k: usize| k * r;
    let index_of = |s: &[usize]| tops.binary_search_by(|x| x.as_slice().cmp(s)).expect("top subset");
    let ncols = tops.len() * r;

    let mut relations = SparseIntMatrix::new(ncols);
    for k in 0..tops.len() {
        for row in rows_of(w.relations(c).basis(), offset(k)) {
            relations.push_row(row);
        }
    }
    if c > 0 {
        for lower in subsets(t_size, c - 1) {
            let containing: Vec<(usize, usize)> = (1..=t_size)
                .filter(|x| !lower.contains(x))
                .map(|x| {
                    let mut s = lower.clone();
                    s.push(x);
                    s.sort_unstable();
                    let p = s.iter().position(|&y| y == x).expect("inserted") + 1;
                    (index_of(&s), p)
                })
                .collect();
            let (k0, p0) = containing[0];
            let first = w.face(c - 1, p0);
            for &(k, p) in &containing[1..] {
                let other = w.face(c - 1, p);
                for i in 0..w.rank(c - 1) {
                    let mut row: Vec<(usize, BigInt)> = Vec::new();
                    for j in 0..r {
                        if first[(i, j)] != BigInt::from(0) {
                            row.push((offset(k0) + j, first[(i, j)].clone()));
                        }
                        if other[(i, j)] != BigInt::from(0) {
                            row.push((offset(k) + j, -other[(i, j)].clone()));
                        }
                    }
                    relations.push_row(row);
                }
            }
        }
    }

    let mut comparison = IntMatrix::zeros(0, w.rank(t_size));
    for s in &tops {
        comparison = comparison.vstack(&w.injection_matrix(&Injection::order_preserving(t_size, s))?);
    }
    let target_rel = w.relations(t_size);
    for i in 0..relations.nrows() {
        let mut img = vec![BigInt::from(0); w.rank(t_size)];
        for (j, v) in relations.row(i) {
            for (col, e) in comparison.row(*j).iter().enumerate() {
                if *e != BigInt::from(0) {
                    img[col] += v * e;
                }
            }
        }
        if !target_rel.contains(&img) {
            return Err(Error::Equivariance("colimit relation does not vanish in W_T".into()));
        }
    }
    let image = ring.normalize(Lattice::span(&comparison).sum(target_rel)?);
    let surjective = image.is_full();
    let colimit = ring.invariants(GroupInvariants::from_factors(ncols, &relations.invariant_factors()));
    let target = w.invariants(t_size);
    let isomorphism = surjective && colimit == target;
    Ok(ColimitResult {
        t_size,
        n_cap,
        tops,
        relations,
        comparison,
        colimit,
        target,
        surjective,
        isomorphism,
    })
}

/// Whether the colimit at cap `n_cap` recovers `W_T` for `|T| = t_size`,
/// checking surjectivity first since it is cheap.
pub fn colimit_recovers(w: &FiModule, t_size: usize, n_cap: usize) -> Result<bool> {
    if n_cap >= t_size {
        return Ok(true);
    }
    Ok(subset_colimit(w, t_size, n_cap)?.isomorphism)
}

/// The smallest cap that works for every `|T|` inside the truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalDegree {
    pub n: usize,
    /// The only certified cap is the truncation itself, where the check
    /// is vacuous.
    pub truncation_limited: bool,
    /// `(cap, |T|)` witnessing that the cap `n - 1` fails.
    pub witness: Option<(usize, usize)>,
}

pub fn minimal_degree(w: &FiModule) -> Result<MinimalDegree> {
    let top = w.truncation();
    let mut witness = None;
    for cap in 0..=top {
        let failing = (cap + 1..=top)
            .map(|t| colimit_recovers(w, t, cap).map(|ok| (t, ok)))
            .find(|res| !matches!(res, Ok((_, true))));
        match failing {
            None => {
                return Ok(MinimalDegree {
                    n: cap,
                    truncation_limited: cap == top && top > 0,
                    witness,
                })
            }
            Some(Err(e)) => return Err(e),
            Some(Ok((t, _))) => witness = Some((cap, t)),
        }
    }
    unreachable!("the cap equal to the truncation always works")
}
