//! Facet sums, ambient intersections and `J̃`-kernels of submodules of free
//! FI-modules.
//!
//! For `V ⊂ M` and `n`, the facet `X_{[n]-{i}}` is the image of `X_{n-1}`
//! under the order-preserving injection missing `i`. The three subgroups
//! compared here are
//!
//! * `Σ_{i ≤ a} V_{[n]-{i}}`,
//! * `V_n ∩ Σ_{i ≤ a} M_{[n]-{i}}`,
//! * `ker J̃_{[a]}` restricted to `V_n`,
//!
//! and each is contained in the next.

use rayon::prelude::*;
use serde::Serialize;

use crate::catalan::{ideal_annihilation_check, jtilde, jtilde_kernel};
use crate::error::{Error, Result};
use crate::fi::{FiModule, FreeModule, Submodule};
use crate::functors::h0;
use crate::linalg::{IntMatrix, Lattice};

/// The three subgroups of `V_n` at one `(n, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationCell {
    pub n: usize,
    pub a: usize,
    pub facet_sum: Lattice,
    pub intersection: Lattice,
    pub jtilde_kernel: Lattice,
}

impl SaturationCell {
    /// `facet_sum ⊂ intersection ⊂ jtilde_kernel`.
    pub fn chain_holds(&self) -> bool {
        self.intersection.contains_lattice(&self.facet_sum).unwrap_or(false)
            && self.jtilde_kernel.contains_lattice(&self.intersection).unwrap_or(false)
    }

    pub fn saturated(&self) -> bool {
        self.facet_sum == self.intersection
    }

    pub fn facets_are_kernel(&self) -> bool {
        self.facet_sum == self.jtilde_kernel
    }

    pub fn summary(&self) -> CellSummary {
        CellSummary {
            n: self.n,
            a: self.a,
            facet_sum_rank: self.facet_sum.rank(),
            intersection_rank: self.intersection.rank(),
            jtilde_kernel_rank: self.jtilde_kernel.rank(),
            chain_holds: self.chain_holds(),
            saturated: self.saturated(),
            facets_are_kernel: self.facets_are_kernel(),
        }
    }
}

/// Serializable digest of a [`SaturationCell`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellSummary {
    pub n: usize,
    pub a: usize,
    pub facet_sum_rank: usize,
    pub intersection_rank: usize,
    pub jtilde_kernel_rank: usize,
    pub chain_holds: bool,
    pub saturated: bool,
    pub facets_are_kernel: bool,
}

/// Sum of the facets `[n]-{1}, ..., [n]-{a}` of a lattice in degree `n-1`.
fn facet_sum(m: &FiModule, lower: &Lattice, n: usize, a: usize) -> Lattice {
    let mut rows = IntMatrix::zeros(0, m.rank(n));
    for i in 1..=a {
        rows = rows.vstack(&lower.basis().mul(m.face(n - 1, i)));
    }
    m.ring().normalize(Lattice::span(&rows))
}

/// `ker J̃_{[a]}` on `M_n`, computed by straightening into degree `n + a`
/// of the free module, which need not lie inside the truncation.
fn free_jtilde_kernel(free: &FreeModule, n: usize, a: usize) -> Result<Lattice> {
    let op = jtilde(n, a)?;
    let src = free.basis(n);
    let dst = free.basis(n + a);
    let mut total = IntMatrix::zeros(src.len(), dst.len());
    for (c, f) in &op.terms {
        let x = free.injection_matrix_on(&src, &dst, f);
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                if x[(i, j)] != 0.into() {
                    total[(i, j)] += &x[(i, j)] * c;
                }
            }
        }
    }
    Ok(Lattice::kernel(&total))
}

/// The three subgroups for `V ⊂ M = M(W)` at `(n, a)`.
pub fn check_saturation(free: &FreeModule, m: &FiModule, v: &Submodule, n: usize, a: usize) -> Result<SaturationCell> {
    if a > n {
        return Err(Error::Invalid(format!("need a <= n, got a = {a}, n = {n}")));
    }
    if n > m.truncation() || v.truncation() != m.truncation() {
        return Err(Error::Truncation {
            degree: n,
            truncation: m.truncation().min(v.truncation()),
        });
    }
    if m.relations(n).rank() > 0 {
        return Err(Error::Inapplicable("the ambient module must be free".into()));
    }
    let vn = &v.lattices[n];
    if a == 0 {
        let zero = Lattice::zero(m.rank(n));
        let kernel = vn.clone();
        return Ok(SaturationCell {
            n,
            a,
            facet_sum: zero.clone(),
            intersection: zero,
            jtilde_kernel: kernel,
        });
    }
    let fv = facet_sum(m, &v.lattices[n - 1], n, a);
    let fm = facet_sum(m, &Lattice::full(m.rank(n - 1)), n, a);
    let intersection = vn.intersection(&fm)?;
    let kernel = vn.intersection(&free_jtilde_kernel(free, n, a)?)?;
    Ok(SaturationCell {
        n,
        a,
        facet_sum: fv,
        intersection,
        jtilde_kernel: kernel,
    })
}

/// Every `(n, a)` with `1 <= a <= n <= N`.
#[derive(Debug, Clone)]
pub struct SaturationReport {
    pub cells: Vec<SaturationCell>,
}

impl SaturationReport {
    /// Smallest `n` above which every cell is saturated, i.e. one more
    /// than the last failing `n` (0 if nothing fails).
    pub fn stable_from(&self) -> usize {
        self.cells.iter().filter(|c| !c.saturated()).map(|c| c.n + 1).max().unwrap_or(0)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.cells.iter().filter(|c| !c.saturated()).map(|c| c.n).min()
    }

    pub fn chain_holds(&self) -> bool {
        self.cells.iter().all(SaturationCell::chain_holds)
    }

    pub fn cell(&self, n: usize, a: usize) -> Option<&SaturationCell> {
        self.cells.iter().find(|c| c.n == n && c.a == a)
    }
}

pub fn saturation_report(free: &FreeModule, m: &FiModule, v: &Submodule) -> Result<SaturationReport> {
    let grid: Vec<(usize, usize)> = (1..=m.truncation()).flat_map(|n| (1..=n).map(move |a| (n, a))).collect();
    let cells = grid
        .par_iter()
        .map(|&(n, a)| check_saturation(free, m, v, n, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(SaturationReport { cells })
}

/// `(k, d)`: the generation degrees of `M` and of `V`, or `None` when
/// either module is zero.
pub fn generation_degrees(free: &FreeModule, v: &FiModule) -> Option<(usize, usize)> {
    let k = free.generation_degree()?;
    let d = h0(v).degree().degree.value()?;
    Some((k, d as usize))
}

/// Facet sum against `ker J̃_{[a]}`, computed inside `V` alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCell {
    pub n: usize,
    pub a: usize,
    pub facet_sum: Lattice,
    pub jtilde_kernel: Lattice,
}

impl PrimeCell {
    pub fn equal(&self) -> bool {
        self.facet_sum == self.jtilde_kernel
    }
}

/// Requires `I_{K+1}` to kill `V` in every degree of the truncation, and
/// `V` to be torsion free.
pub fn check_saturation_prime(v: &FiModule, n: usize, a: usize, cap_k: usize) -> Result<PrimeCell> {
    if a > n || a == 0 {
        return Err(Error::Invalid(format!("need 1 <= a <= n, got a = {a}, n = {n}")));
    }
    if n + a > v.truncation() {
        return Err(Error::Truncation {
            degree: n + a,
            truncation: v.truncation(),
        });
    }
    for deg in 0..=v.truncation() {
        if !ideal_annihilation_check(v, cap_k + 1, deg)? {
            return Err(Error::Inapplicable(format!("I_{} does not kill V in degree {deg}", cap_k + 1)));
        }
    }
    if !torsion_threshold(v).is_torsion_free() {
        return Err(Error::Inapplicable("V has torsion".into()));
    }
    let fv = facet_sum(v, &Lattice::full(v.rank(n - 1)), n, a).sum(v.relations(n))?;
    Ok(PrimeCell {
        n,
        a,
        facet_sum: v.ring().normalize(fv),
        jtilde_kernel: jtilde_kernel(v, n, a)?,
    })
}

/// Smallest degree from which every inclusion `W_n → W_{n+1}` inside the
/// truncation is injective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorsionThreshold {
    pub threshold: usize,
    /// The last visible inclusion is not injective, so nothing is known
    /// about degrees past the truncation.
    pub truncation_limited: bool,
}

impl TorsionThreshold {
    pub fn is_torsion_free(&self) -> bool {
        self.threshold == 0
    }
}

pub fn torsion_threshold(w: &FiModule) -> TorsionThreshold {
    let top = w.truncation();
    let injective: Vec<bool> = (0..top)
        .map(|n| {
            let pre = Lattice::preimage(w.inclusion(n), w.relations(n + 1)).expect("inclusion targets degree n + 1");
            w.ring().normalize(pre) == *w.relations(n)
        })
        .collect();
    let threshold = injective.iter().rposition(|ok| !ok).map_or(0, |n| n + 1);
    TorsionThreshold {
        threshold,
        truncation_limited: top > 0 && threshold == top,
    }
}
