//! Smith normal form.

use num_bigint::BigInt;

use super::matrix::{IntMatrix, Matrix};
use super::scalar::{abs_lt, with_fallback, Checked, Scalar};

/// `left * m * right` is diagonal with entries `factors` followed by zeros,
/// and `factors[i]` divides `factors[i + 1]`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, f) in self.factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    left: Option<Vec<Vec<T>>>,
    // stored transposed so column operations are row operations
    right_t: Option<Vec<Vec<T>>>,
}

fn axpy<T: Scalar>(target: &mut [T], source: &[T], q: &T) -> Checked<()> {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t = t.sub_mul(q, s)?;
        }
    }
    Ok(())
}

fn row_op<T: Scalar>(rows: &mut [Vec<T>], target: usize, source: usize, q: &T) -> Checked<()> {
    debug_assert_ne!(target, source);
    let (t, s) = if target < source {
        let (head, tail) = rows.split_at_mut(source);
        (&mut head[target], &tail[0])
    } else {
        let (head, tail) = rows.split_at_mut(target);
        (&mut tail[0], &head[source])
    };
    axpy(t, s, q)
}

impl<T: Scalar> Work<T> {
    fn nrows(&self) -> usize {
        self.a.len()
    }

    fn ncols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(l) = self.left.as_mut() {
            l.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(r) = self.right_t.as_mut() {
            r.swap(i, j);
        }
    }

    /// row_target -= q * row_source
    fn sub_row(&mut self, target: usize, source: usize, q: &T) -> Checked<()> {
        row_op(&mut self.a, target, source, q)?;
        if let Some(l) = self.left.as_mut() {
            row_op(l, target, source, q)?;
        }
        Ok(())
    }

    /// col_target -= q * col_source
    fn sub_col(&mut self, target: usize, source: usize, q: &T) -> Checked<()> {
        for row in self.a.iter_mut() {
            if !row[source].is_zero() {
                row[target] = row[target].sub_mul(q, &row[source])?;
            }
        }
        if let Some(r) = self.right_t.as_mut() {
            row_op(r, target, source, q)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Checked<()> {
        for e in self.a[i].iter_mut() {
            *e = e.neg()?;
        }
        if let Some(l) = self.left.as_mut() {
            for e in l[i].iter_mut() {
                *e = e.neg()?;
            }
        }
        Ok(())
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.nrows() {
            for j in t..self.ncols() {
                let e = &self.a[i][j];
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| abs_lt(e, &self.a[bi][bj])) {
                    best = Some((i, j));
                    if e.is_unit() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> Checked<Vec<T>> {
        let mut factors = Vec::new();
        let limit = self.nrows().min(self.ncols());
        for t in 0..limit {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.nrows() {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t])?;
                    self.sub_row(i, t, &q)?;
                    dirty |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.ncols() {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t])?;
                    self.sub_col(j, t, &q)?;
                    dirty |= !self.a[t][j].is_zero();
                }
                if dirty {
                    let mut best = (t, t);
                    for i in t + 1..self.nrows() {
                        if !self.a[i][t].is_zero() && abs_lt(&self.a[i][t], &self.a[best.0][best.1]) {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.ncols() {
                        if !self.a[t][j].is_zero() && abs_lt(&self.a[t][j], &self.a[best.0][best.1]) {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                if self.a[t][t].is_unit() {
                    break;
                }
                let pivot = self.a[t][t].clone();
                let mut offender = None;
                'search: for i in t + 1..self.nrows() {
                    for j in t + 1..self.ncols() {
                        let e = &self.a[i][j];
                        if !e.is_zero() && !e.sub_mul(&e.div_floor(&pivot)?, &pivot)?.is_zero() {
                            offender = Some(i);
                            break 'search;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        let minus_one = T::one().neg()?;
                        self.sub_row(t, i, &minus_one)?;
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            factors.push(self.a[t][t].clone());
        }
        Ok(factors)
    }
}

fn run<T: Scalar>(m: &IntMatrix, track: bool) -> Checked<Snf> {
    let a = m.to_checked::<T>()?.into_rows();
    let mut w = Work {
        a,
        left: track.then(|| Matrix::<T>::identity(m.rows()).into_rows()),
        right_t: track.then(|| Matrix::<T>::identity(m.cols()).into_rows()),
    };
    if m.cols() == 0 {
        w.a = vec![Vec::new(); m.rows()];
    }
    let factors = w.reduce()?;
    let left = match w.left {
        Some(l) => Matrix::from_rows(l, m.rows()).to_bigint(),
        None => IntMatrix::zeros(0, 0),
    };
    let right = match w.right_t {
        Some(r) => Matrix::from_rows(r, m.cols()).to_bigint().transpose(),
        None => IntMatrix::zeros(0, 0),
    };
    Ok(Snf {
        factors: factors.iter().map(Scalar::to_big).collect(),
        left,
        right,
    })
}

/// Smith normal form with unimodular transforms.
pub fn snf(m: &IntMatrix) -> Snf {
    with_fallback(|| run::<i64>(m, true), || run::<BigInt>(m, true))
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of a dense matrix.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    with_fallback(|| run::<i64>(m, false), || run::<BigInt>(m, false)).factors
}

pub(crate) fn dense_factors<T: Scalar>(rows: Vec<Vec<T>>) -> Checked<Vec<T>> {
    let mut w = Work {
        a: rows,
        left: None,
        right_t: None,
    };
    w.reduce()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_vec;

    fn check(m: &IntMatrix, expected: &[i64]) {
        let out = snf(m);
        assert_eq!(out.factors, int_vec(expected));
        assert_eq!(out.left.mul(m).mul(&out.right), out.diagonal());
        assert_eq!(invariant_factors(m), int_vec(expected));
    }

    #[test]
    fn identity() {
        check(&IntMatrix::identity(4), &[1, 1, 1, 1]);
    }

    #[test]
    fn sharpness_relation_matrix() {
        check(&IntMatrix::from_i64(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]), &[1, 1, 2]);
    }

    #[test]
    fn coprime_diagonal() {
        check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]), &[1, 6]);
    }

    #[test]
    fn non_divisible_diagonal_is_fixed() {
        check(&IntMatrix::from_i64(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 0]]), &[2, 12]);
    }

    #[test]
    fn empty_shapes() {
        check(&IntMatrix::zeros(0, 3), &[]);
        check(&IntMatrix::zeros(2, 0), &[]);
    }
}
