//! Degree bookkeeping for first-quadrant spectral sequences of FI-modules
//! `E²_{pq} ⇒ V_{p+q}`, and the resulting stable-range bounds.
//!
//! Only bounds are manipulated, never actual pages. A bound is a
//! [`Degree`], so `-inf` is absorbing under addition.

use serde::Serialize;

use crate::degree::Degree;
use crate::error::{Error, Result};

/// Bounds for one row `q = k` of the `E²` page.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub k: usize,
    /// Bound for `deg E²_{0k} = deg H_0`.
    pub h0: Degree,
    /// Bound for `deg E²_{1k} = deg H_1`.
    pub h1: Degree,
    /// `max(h0, h1)`: the colimit over `|S| <= cap` recovers the module.
    pub cap: Degree,
    /// The strict form `|S| < threshold` of the same statement.
    pub threshold: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub d: u32,
    pub rows: Vec<BoundRow>,
    /// `n[p][m]` bounds `deg E²_{pm}` for `p >= 2`; entries with `p < 2`
    /// repeat `h0` and `h1`.
    pub n: Vec<Vec<Degree>>,
}

impl BoundTable {
    pub fn row(&self, k: usize) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    pub fn n_bound(&self, p: usize, m: usize) -> Option<Degree> {
        self.n.get(p)?.get(m).copied()
    }
}

fn checked(value: Option<i64>) -> Result<i64> {
    value.ok_or_else(|| Error::Invalid("bound does not fit in 64 bits".into()))
}

/// `2^{k-2}(2d+9)`, the colimit threshold for `k >= 2`.
pub fn stable_threshold(d: u32, k: usize) -> Result<i64> {
    if k < 2 {
        return Err(Error::Invalid(format!("the closed form needs k >= 2, got {k}")));
    }
    let base = 2 * i64::from(d) + 9;
    checked(1i64.checked_shl((k - 2) as u32).filter(|_| k - 2 < 62).and_then(|p| p.checked_mul(base)))
}

/// `N_{p,m} = 2^{m-1}(2d+9) - 4 + p` for `m >= 1`.
pub fn n_closed_form(d: u32, p: usize, m: usize) -> Result<i64> {
    if m == 0 {
        return Err(Error::Invalid("N_{p,m} needs m >= 1".into()));
    }
    let t = stable_threshold(d, m + 1)?;
    checked(t.checked_sub(4).and_then(|x| x.checked_add(p as i64)))
}

fn row(k: usize, h0: Degree, h1: Degree) -> BoundRow {
    let cap = h0.max(h1);
    BoundRow {
        k,
        h0,
        h1,
        cap,
        threshold: cap.value().map_or(0, |c| c + 1),
    }
}

/// The closed-form table for congruence subgroups: row 0 comes from the
/// free module `M(0)`, row 1 from the base case `(d + 2, d + 4)`, and rows
/// `k >= 2` from `2^{k-2}(2d+9) - 2` and `- 1`.
pub fn congruence_bounds(d: u32, k_max: usize, p_max: usize) -> Result<BoundTable> {
    let di = i64::from(d);
    let mut rows = vec![row(0, Degree::Finite(0), Degree::NegInf)];
    if k_max >= 1 {
        rows.push(row(1, Degree::Finite(di + 2), Degree::Finite(di + 4)));
    }
    for k in 2..=k_max {
        let t = stable_threshold(d, k)?;
        rows.push(row(k, Degree::Finite(t - 2), Degree::Finite(t - 1)));
    }
    let mut n = vec![vec![Degree::NegInf; k_max + 1]; p_max.max(1) + 1];
    for (m, r) in rows.iter().enumerate() {
        n[0][m] = r.h0;
        n[1][m] = r.h1;
    }
    for (p, col) in n.iter_mut().enumerate().skip(2) {
        for (m, cell) in col.iter_mut().enumerate().skip(1) {
            *cell = Degree::Finite(n_closed_form(d, p, m)?);
        }
    }
    Ok(BoundTable { d, rows, n })
}

/// Hypotheses of the propagation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSpectralInput {
    pub d: u32,
    /// `abutment[k]` bounds `deg V_k`; defaults to `2k + d`.
    pub abutment: Vec<Degree>,
    /// Optional sharper bounds for `(deg E²_{0q}, deg E²_{1q})`.
    pub declared: Vec<(Option<Degree>, Option<Degree>)>,
    /// `E²_{p0} = 0` for `p > 0`.
    pub bottom_row_vanishes: bool,
    /// `deg E²_{pq} <= deg E²_{0q} + deg E²_{1q} - 1 + p` is granted.
    pub regularity: bool,
}

impl DegreeSpectralInput {
    pub fn standard(d: u32, k_max: usize) -> Self {
        DegreeSpectralInput {
            d,
            abutment: (0..=k_max + 1).map(|k| Degree::Finite(2 * k as i64 + i64::from(d))).collect(),
            declared: Vec::new(),
            bottom_row_vanishes: true,
            regularity: true,
        }
    }
}

/// Runs the induction row by row. Row `k` of `E²_{0k}` is bounded by
/// `deg V_k` and the sources `E²_{r,k-r+1}` of incoming differentials;
/// `E²_{1k}` by `deg V_{k+1}` and the sources `E²_{1+r,k-r+1}`; and the
/// columns `p >= 2` by the regularity hypothesis.
pub fn propagate_claim(input: &DegreeSpectralInput, k_max: usize, p_max: usize) -> Result<BoundTable> {
    if !input.bottom_row_vanishes || !input.regularity {
        return Err(Error::Inapplicable("the vanishing bottom row and the regularity bound are required".into()));
    }
    if input.abutment.len() < k_max + 2 {
        return Err(Error::Inapplicable(format!("abutment bounds are needed up to V_{}", k_max + 1)));
    }
    // every column up to p_max, plus the columns reached by differentials
    let width = (p_max + 1).max(k_max + 3);
    let mut e = vec![vec![Degree::NegInf; k_max + 1]; width];
    let declared = |q: usize| input.declared.get(q).copied().unwrap_or((None, None));
    let tighten = |bound: Degree, given: Option<Degree>| given.map_or(bound, |g| g.min(bound));
    let mut rows = Vec::new();
    for k in 0..=k_max {
        let incoming = |p: usize, e: &Vec<Vec<Degree>>| {
            (2..=k + 1)
                .map(|r| e[p + r][k + 1 - r])
                .max()
                .unwrap_or(Degree::NegInf)
        };
        let (d0, d1) = declared(k);
        let h0 = tighten(input.abutment[k].max(incoming(0, &e)), d0);
        let h1 = if k == 0 {
            Degree::NegInf
        } else {
            tighten(input.abutment[k + 1].max(incoming(1, &e)), d1)
        };
        e[0][k] = h0;
        e[1][k] = h1;
        for (p, col) in e.iter_mut().enumerate().skip(2) {
            col[k] = if k == 0 { Degree::NegInf } else { h0.add(h1).plus(p as i64 - 1) };
        }
        rows.push(row(k, h0, h1));
    }
    e.truncate(p_max.max(1) + 1);
    Ok(BoundTable {
        d: input.d,
        rows,
        n: e,
    })
}
