//! Sparse integer matrices and their invariant factors.
//!
//! Boundary matrices of the complexes built in this crate are large and
//! mostly `±1`. Invariant factors are computed by eliminating unit pivots
//! first (Markowitz order), then handing the small remaining core to the
//! dense Smith kernel.

use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::scalar::{with_fallback, Checked, Scalar};
use super::snf::dense_factors;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseIntMatrix {
    ncols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseIntMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Appends a row given as (column, value) pairs; duplicates are summed.
    pub fn push_row(&mut self, mut entries: Vec<(usize, BigInt)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|e| !Scalar::is_zero(&e.1));
        self.rows.push(row);
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.rows[i]
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m[(i, *j)] = v.clone();
            }
        }
        m
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let mut s = SparseIntMatrix::new(m.cols());
        for row in m.iter_rows() {
            s.push_row(
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !Scalar::is_zero(*v))
                    .map(|(j, v)| (j, v.clone()))
                    .collect(),
            );
        }
        s
    }

    /// Row-vector product `self · other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.ncols, other.nrows(), "inner dimensions differ");
        let mut out = SparseIntMatrix::new(other.ncols);
        for row in &self.rows {
            let mut acc: Vec<(usize, BigInt)> = Vec::new();
            for (k, a) in row {
                acc.extend(other.rows[*k].iter().map(|(j, b)| (*j, a * b)));
            }
            out.push_row(acc);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Nonzero invariant factors in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        with_fallback(|| self.factors_in::<i64>(), || self.factors_in::<BigInt>())
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    fn factors_in<T: Scalar>(&self) -> Checked<Vec<BigInt>> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, v)| Ok((*c, T::from_big(v)?)))
                    .collect::<Checked<Vec<_>>>()
            })
            .collect::<Checked<Vec<_>>>()?;
        let mut e = Eliminator::new(rows, self.ncols);
        let units = e.eliminate_units()?;
        let core = e.core();
        let mut out = vec![BigInt::from(1); units];
        out.extend(dense_factors(core)?.iter().map(Scalar::to_big));
        Ok(out)
    }
}

type Row<T> = Vec<(usize, T)>;

struct Eliminator<T> {
    rows: Vec<Option<Row<T>>>,
    col_rows: Vec<Vec<usize>>,
    col_count: Vec<usize>,
    ncols: usize,
}

/// `a - f * b` for sorted sparse rows.
fn combine<T: Scalar>(a: &Row<T>, f: &T, b: &Row<T>) -> Checked<Row<T>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, T::zero().sub_mul(f, &b[j].1)?));
            j += 1;
        } else {
            let v = a[i].1.sub_mul(f, &b[j].1)?;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

impl<T: Scalar> Eliminator<T> {
    fn new(rows: Vec<Row<T>>, ncols: usize) -> Self {
        let mut col_rows = vec![Vec::new(); ncols];
        let mut col_count = vec![0; ncols];
        for (i, r) in rows.iter().enumerate() {
            for (c, _) in r {
                col_rows[*c].push(i);
                col_count[*c] += 1;
            }
        }
        Eliminator {
            rows: rows.into_iter().map(Some).collect(),
            col_rows,
            col_count,
            ncols,
        }
    }

    fn pick_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let Some(row) = row else { continue };
            let rlen = row.len().saturating_sub(1);
            for (c, v) in row {
                if !v.is_unit() {
                    continue;
                }
                let cost = rlen * (self.col_count[*c] - 1);
                if best.is_none_or(|b| cost < b.2) {
                    best = Some((i, *c, cost));
                    if cost == 0 {
                        return Some((i, *c));
                    }
                }
            }
        }
        best.map(|(i, c, _)| (i, c))
    }

    fn eliminate_units(&mut self) -> Checked<usize> {
        let mut count = 0;
        while let Some((r, c)) = self.pick_pivot() {
            let pivot_row = self.rows[r].take().expect("pivot row alive");
            let p = pivot_row
                .iter()
                .find(|e| e.0 == c)
                .map(|e| e.1.clone())
                .expect("pivot entry");
            for (j, _) in &pivot_row {
                self.col_count[*j] -= 1;
            }
            let others = std::mem::take(&mut self.col_rows[c]);
            for i in others {
                let Some(row) = self.rows[i].as_ref() else { continue };
                let Ok(pos) = row.binary_search_by_key(&c, |e| e.0) else { continue };
                // p is a unit, so p^{-1} = p
                let f = row[pos].1.mul(&p)?;
                let new_row = combine(row, &f, &pivot_row)?;
                for (j, _) in row {
                    self.col_count[*j] -= 1;
                }
                for (j, _) in &new_row {
                    self.col_count[*j] += 1;
                    if row.binary_search_by_key(j, |e| e.0).is_err() {
                        self.col_rows[*j].push(i);
                    }
                }
                self.rows[i] = if new_row.is_empty() { None } else { Some(new_row) };
            }
            count += 1;
        }
        Ok(count)
    }

    fn core(&self) -> Vec<Vec<T>> {
        let mut live: Vec<usize> = (0..self.ncols).filter(|&c| self.col_count[c] > 0).collect();
        live.sort_unstable();
        let mut index = vec![usize::MAX; self.ncols];
        for (k, &c) in live.iter().enumerate() {
            index[c] = k;
        }
        self.rows
            .iter()
            .flatten()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let mut dense = vec![T::zero(); live.len()];
                for (c, v) in r {
                    dense[index[*c]] = v.clone();
                }
                dense
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::snf::invariant_factors;

    #[test]
    fn matches_dense_on_small_example() {
        let m = IntMatrix::from_i64(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let s = SparseIntMatrix::from_dense(&m);
        assert_eq!(s.invariant_factors(), invariant_factors(&m));
        assert_eq!(s.to_dense(), m);
    }

    #[test]
    fn duplicate_entries_are_summed() {
        let mut s = SparseIntMatrix::new(2);
        s.push_row(vec![(0, BigInt::from(1)), (0, BigInt::from(-1)), (1, BigInt::from(2))]);
        assert_eq!(s.row(0), &[(1, BigInt::from(2))]);
    }

    #[test]
    fn core_without_units() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8], &[0, 0]]);
        let s = SparseIntMatrix::from_dense(&m);
        assert_eq!(s.invariant_factors(), invariant_factors(&m));
    }
}
