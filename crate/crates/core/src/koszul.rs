//! FI-homology through the Koszul-type complex.
//!
//! In degree `n` the `k`-th term is `⊕_{U ⊂ [n], |U| = k} V_{[n] - U}`,
//! each summand identified with `V_{n-k}` by the order-preserving
//! bijection. The `i`-th face deletes the `i`-th smallest element of `U`
//! and pushes the summand forward along the inclusion that re-inserts it.
//!
//! A presented module `F/R` is handled through the mapping cone of the
//! subcomplex built from `R`, which is a complex of free abelian groups
//! quasi-isomorphic to the complex of the quotient.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::degree::{Degree, TruncatedDegree};
use crate::error::{Error, Result};
use crate::fi::injection::{all_injections, subsets};
use crate::fi::ops::{FiMap, Submodule};
use crate::fi::{FbModule, FiModule, FreeModule, Injection, Representation, Ring};
use crate::functors::h0;
use crate::linalg::{GroupInvariants, IntMatrix, SparseIntMatrix};

/// A bounded complex of free abelian groups `C_0 ← C_1 ← ... ← C_top`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    dims: Vec<usize>,
    /// `boundaries[k - 1]` is `∂_k : C_k → C_{k-1}`, one row per basis element of `C_k`.
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `∂_k ∘ ∂_{k+1} = 0`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::Dimension {
                expected: dims.len().saturating_sub(1),
                found: boundaries.len(),
            });
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.nrows() != dims[k + 1] || d.ncols() != dims[k] {
                return Err(Error::Dimension {
                    expected: dims[k + 1],
                    found: d.nrows(),
                });
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k].mul(&boundaries[k - 1]).is_zero() {
                return Err(Error::Invalid(format!("boundary squares to a nonzero map at {}", k + 1)));
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_k` for `1 <= k < len`.
    pub fn boundary(&self, k: usize) -> &SparseIntMatrix {
        &self.boundaries[k - 1]
    }

    /// Homology in every degree, with the complex taken to be zero above its top.
    pub fn homology(&self) -> Vec<GroupInvariants> {
        let factors: Vec<Vec<BigInt>> = self.boundaries.par_iter().map(|d| d.invariant_factors()).collect();
        (0..self.dims.len())
            .map(|p| {
                let incoming = if p + 1 < self.dims.len() { factors[p].as_slice() } else { &[] };
                let outgoing = if p >= 1 { factors[p - 1].len() } else { 0 };
                homology_from(self.dims[p], outgoing, incoming)
            })
            .collect()
    }
}

/// `ker ∂_p / im ∂_{p+1}` from the rank of `∂_p` and the invariant factors
/// of `∂_{p+1}`.
fn homology_from(dim: usize, rank_out: usize, incoming: &[BigInt]) -> GroupInvariants {
    GroupInvariants::from_factors(dim - rank_out, incoming)
}

/// Per-degree data of a module needed to assemble its complexes.
struct Prepared {
    module: FiModule,
    /// Coordinates of `R_m · face(m, p)` in the basis of `R_{m+1}`, per `(m, p)`.
    relation_faces: HashMap<(usize, usize), IntMatrix>,
}

impl Prepared {
    /// The cone needs the identities of FI to hold exactly on generators.
    /// Minimizing keeps that property when no relations survive; otherwise
    /// the given presentation is used as is.
    fn new(v: &FiModule) -> Self {
        let reduced = v.minimized();
        let module = if (0..=reduced.truncation()).all(|n| reduced.relations(n).is_zero()) {
            reduced
        } else {
            assert!(v.is_exact(), "homology needs a presentation on which FI acts exactly");
            v.clone()
        };
        let mut relation_faces = HashMap::new();
        for m in 0..module.truncation() {
            if module.relations(m).is_zero() {
                continue;
            }
            for p in 1..=m + 1 {
                let img = module.relations(m).basis().mul(module.face(m, p));
                let next = module.relations(m + 1);
                let rows = img
                    .iter_rows()
                    .map(|r| next.coordinates(r).expect("relations are stable"))
                    .collect();
                relation_faces.insert((m, p), IntMatrix::from_rows(rows, next.rank()));
            }
        }
        Prepared { module, relation_faces }
    }

    fn gens(&self, m: usize) -> usize {
        self.module.rank(m)
    }

    fn rels(&self, m: usize) -> usize {
        self.module.relations(m).rank()
    }

    /// Rank of the cone term `C_k(F) ⊕ C_{k-1}(R)` in degree `n`.
    fn cone_dim(&self, n: usize, k: usize) -> usize {
        let f = if k <= n { binom(n, k) * self.gens(n - k) } else { 0 };
        let r = if k >= 1 && k - 1 <= n { binom(n, k - 1) * self.rels(n + 1 - k) } else { 0 };
        f + r
    }

    /// `∂_k` of the cone in degree `n`.
    fn cone_boundary(&self, n: usize, k: usize) -> SparseIntMatrix {
        let m = &self.module;
        let cols = self.cone_dim(n, k - 1);
        let mut out = SparseIntMatrix::new(cols);
        // column layout of degree k-1: F block, then R block
        let f_prev = if k - 1 <= n { binom(n, k - 1) * self.gens(n + 1 - k) } else { 0 };
        if k <= n {
            let g = self.gens(n - k);
            let g_prev = self.gens(n + 1 - k);
            let index = subset_index(n, k - 1);
            for u in subsets(n, k) {
                for j in 0..g {
                    let mut row = Vec::new();
                    for (i, &ui) in u.iter().enumerate() {
                        let face = m.face(n - k, ui - i);
                        let block = index[&without(&u, i)] * g_prev;
                        let sign = if i % 2 == 0 { -1 } else { 1 };
                        for (c, e) in face.row(j).iter().enumerate() {
                            if *e != BigInt::from(0) {
                                row.push((block + c, e * sign));
                            }
                        }
                    }
                    out.push_row(row);
                }
            }
        }
        if k - 1 <= n {
            // relation generators of degree n-k+1 sit in C_{k-1}(R)
            let mdeg = n + 1 - k;
            let r_basis = m.relations(mdeg).basis();
            let g_prev = self.gens(mdeg);
            let r_next = if k >= 2 { self.rels(mdeg + 1) } else { 0 };
            let index_r = if k >= 2 { subset_index(n, k - 2) } else { HashMap::new() };
            let f_index = subset_index(n, k - 1);
            for u in subsets(n, k - 1) {
                for (t, rho) in r_basis.iter_rows().enumerate() {
                    let mut row = Vec::new();
                    let block = f_index[&u] * g_prev;
                    for (c, e) in rho.iter().enumerate() {
                        if *e != BigInt::from(0) {
                            row.push((block + c, e.clone()));
                        }
                    }
                    for (i, &ui) in u.iter().enumerate() {
                        let coords = &self.relation_faces[&(mdeg, ui - i)];
                        let block = f_prev + index_r[&without(&u, i)] * r_next;
                        // minus the boundary of the relation complex
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        for (c, e) in coords.row(t).iter().enumerate() {
                            if *e != BigInt::from(0) {
                                row.push((block + c, e * sign));
                            }
                        }
                    }
                    out.push_row(row);
                }
            }
        }
        out
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn without(u: &[usize], i: usize) -> Vec<usize> {
    u.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect()
}

fn subset_index(n: usize, k: usize) -> HashMap<Vec<usize>, usize> {
    subsets(n, k).into_iter().enumerate().map(|(i, s)| (s, i)).collect()
}

/// The complex computing `H_*(V)_n` in homological degrees `0..=k_max`.
pub fn koszul_complex(v: &FiModule, n: usize, k_max: usize) -> Result<ChainComplex> {
    if n > v.truncation() {
        return Err(Error::Truncation {
            degree: n,
            truncation: v.truncation(),
        });
    }
    let prep = Prepared::new(v);
    let top = k_max.min(n + 1);
    let dims = (0..=top).map(|k| prep.cone_dim(n, k)).collect();
    let boundaries = (1..=top).map(|k| prep.cone_boundary(n, k)).collect();
    ChainComplex::new(dims, boundaries)
}

/// `H_p(V)_n` for `p <= p_max` and `n <= N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub ring: Ring,
    pub truncation: usize,
    /// `groups[p][n]`.
    pub groups: Vec<Vec<GroupInvariants>>,
    pub degrees: Vec<TruncatedDegree>,
}

impl HomologyTable {
    pub fn degree(&self, p: usize) -> TruncatedDegree {
        self.degrees[p]
    }

    pub fn p_max(&self) -> usize {
        self.groups.len() - 1
    }
}

pub fn fi_homology(v: &FiModule, p_max: usize) -> HomologyTable {
    let prep = Prepared::new(v);
    let top = v.truncation();
    let cells: Vec<(usize, usize)> = (0..=top)
        .flat_map(|n| (1..=(p_max + 1).min(n + 1)).map(move |k| (n, k)))
        .collect();
    let factors: HashMap<(usize, usize), Vec<BigInt>> = cells
        .par_iter()
        .map(|&(n, k)| ((n, k), prep.cone_boundary(n, k).invariant_factors()))
        .collect();
    let empty = Vec::new();
    let groups: Vec<Vec<GroupInvariants>> = (0..=p_max)
        .map(|p| {
            (0..=top)
                .map(|n| {
                    let incoming = factors.get(&(n, p + 1)).unwrap_or(&empty);
                    let out = if p >= 1 { factors.get(&(n, p)).map_or(0, Vec::len) } else { 0 };
                    v.ring().invariants(homology_from(prep.cone_dim(n, p), out, incoming))
                })
                .collect()
        })
        .collect();
    let degrees = groups
        .iter()
        .map(|row| TruncatedDegree::from_flags(&row.iter().map(|g| !g.is_zero()).collect::<Vec<_>>()))
        .collect();
    HomologyTable {
        ring: v.ring(),
        truncation: top,
        groups,
        degrees,
    }
}

/// Whether the `p = 0` row agrees with the direct `H_0` computation.
pub fn h0_agrees(v: &FiModule, table: &HomologyTable) -> bool {
    let direct = h0(v);
    (0..=v.truncation()).all(|n| direct.invariants(n) == table.groups[0][n])
}

/// One row of a regularity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityRow {
    pub p: usize,
    pub degree: TruncatedDegree,
    pub bound: i64,
    /// `bound - deg H_p` when the degree is certain.
    pub margin: Option<i64>,
    pub violated: bool,
    /// Nonzero at the truncation without exceeding the bound there.
    pub inconclusive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub k: usize,
    pub d: usize,
    /// Whether `deg H_0 <= k` and `deg H_1 <= d` hold within the truncation.
    pub applicable: bool,
    pub rows: Vec<RegularityRow>,
}

impl RegularityReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.violated).count()
    }
}

/// Compares `deg H_p` with `p + k + d - 1` for `1 <= p <= p_max`.
pub fn regularity_check(table: &HomologyTable, k: usize, d: usize) -> RegularityReport {
    let within = |p: usize, bound: usize| {
        let t = table.degree(p);
        !t.truncation_limited && t.degree.at_most(bound as i64)
    };
    let applicable = within(0, k) && table.p_max() >= 1 && within(1, d);
    let rows = (1..=table.p_max())
        .map(|p| {
            let degree = table.degree(p);
            let bound = (p + k + d) as i64 - 1;
            let value = degree.degree.value();
            let violated = value.is_some_and(|v| v > bound);
            RegularityRow {
                p,
                degree,
                bound,
                margin: if degree.truncation_limited { None } else { Some(value.map_or(bound + 1, |v| bound - v)) },
                violated,
                inconclusive: degree.truncation_limited && !violated,
            }
        })
        .collect();
    RegularityReport { k, d, applicable, rows }
}

/// Generation degree of `ker φ` against the bound `k + d + 1`, where `k`
/// bounds the generators of the target and `d` those of the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelGenerationReport {
    pub k: Degree,
    pub d: Degree,
    pub kernel_degree: TruncatedDegree,
    pub holds: bool,
}

pub fn kernel_generation_check(phi: &FiMap<'_>) -> Result<KernelGenerationReport> {
    let kernel = crate::fi::kernel_of_map(phi)?;
    let k = h0(phi.target).degree().degree;
    let d = h0(phi.source).degree().degree;
    let kernel_degree = h0(&kernel).degree();
    let bound = k.add(d).plus(1);
    let holds = kernel_degree.degree <= bound || bound.is_neg_inf() && kernel_degree.degree.is_neg_inf();
    Ok(KernelGenerationReport {
        k,
        d,
        kernel_degree,
        holds,
    })
}

/// The free module on the generators of `X` in degrees `<= m`, with the
/// canonical map onto `X`. `X` must carry honest symmetric-group actions.
pub fn free_cover(x: &FiModule, m: usize) -> Result<(FiModule, Vec<IntMatrix>)> {
    let mut fb = FbModule::zero();
    for j in 0..=m.min(x.truncation()) {
        if x.rank(j) > 0 {
            fb.add(Representation::new(j, x.rank(j), x.transpositions(j).to_vec())?);
        }
    }
    let free = FreeModule::new(fb);
    let cover = free.to_module(x.ring(), x.truncation());
    let maps = (0..=x.truncation())
        .map(|n| {
            let basis = free.basis(n);
            let rows = basis
                .labels()
                .iter()
                .map(|l| {
                    let f = Injection::order_preserving(n, &l.subset);
                    let a = x.injection_matrix(&f).expect("within truncation");
                    a.row(l.j - 1).to_vec()
                })
                .collect();
            IntMatrix::from_rows(rows, x.rank(n))
        })
        .collect();
    Ok((cover, maps))
}

/// `deg H_0(X_p)` along the syzygy chain `X_{p+1} = ker(M(X_p, <= deg H_0) → X_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyzygyReport {
    pub degrees: Vec<TruncatedDegree>,
    /// The bound `N + p` with `N = k + d - 1`, when `k` and `d` are certain.
    pub bounds: Vec<Option<i64>>,
    pub holds: bool,
}

pub fn syzygy_degrees(w: &FiModule, p_max: usize) -> Result<SyzygyReport> {
    let table = fi_homology(w, 1);
    let n_reg = match (table.degree(0).certain(), table.degree(1).certain()) {
        (Some(k), Some(d)) => Some(k.add(d).plus(-1)),
        _ => None,
    };
    let mut degrees = Vec::new();
    let mut x = w.clone();
    for p in 0..=p_max {
        let deg = h0(&x).degree();
        degrees.push(deg);
        if p == p_max {
            break;
        }
        let Some(m) = deg.degree.value() else {
            x = FiModule::zero(w.ring(), w.truncation());
            continue;
        };
        let (cover, maps) = free_cover(&x, m as usize)?;
        let kernel: Submodule = FiMap::new(&cover, &x, maps)?.kernel()?;
        x = kernel.module(&cover)?;
    }
    let bounds: Vec<Option<i64>> = (0..=p_max)
        .map(|p| n_reg.and_then(|n| n.plus(p as i64).value()))
        .collect();
    let holds = degrees.iter().zip(&bounds).all(|(d, b)| match b {
        Some(b) => d.degree.value().is_none_or(|v| v <= *b),
        None => true,
    });
    Ok(SyzygyReport { degrees, bounds, holds })
}

/// The complex `C_•(S, T)`: `C_k` is free on pairs `(U, f)` with
/// `f : S → T` injective and `U ⊂ T - im f` of size `k`; the boundary
/// deletes elements of `U` with alternating signs.
pub fn pointwise_complex(s: usize, t: usize) -> ChainComplex {
    let injections = all_injections(s, t);
    let mut basis: Vec<Vec<(Vec<usize>, usize)>> = vec![Vec::new(); t + 1];
    for (fi, f) in injections.iter().enumerate() {
        let image = f.image_set();
        let free: Vec<usize> = (1..=t).filter(|x| !image.contains(x)).collect();
        for k in 0..=free.len() {
            for c in subsets(free.len(), k) {
                basis[k].push((c.iter().map(|&i| free[i - 1]).collect(), fi));
            }
        }
    }
    let top = basis.iter().rposition(|b| !b.is_empty()).unwrap_or(0);
    basis.truncate(top + 1);
    let index: Vec<HashMap<(Vec<usize>, usize), usize>> = basis
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect())
        .collect();
    let boundaries = (1..basis.len())
        .map(|k| {
            let mut d = SparseIntMatrix::new(basis[k - 1].len());
            for (u, f) in &basis[k] {
                let row = (0..u.len())
                    .map(|i| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (index[k - 1][&(without(u, i), *f)], BigInt::from(sign))
                    })
                    .collect();
                d.push_row(row);
            }
            d
        })
        .collect();
    ChainComplex::new(basis.iter().map(Vec::len).collect(), boundaries).expect("simplicial boundary")
}
