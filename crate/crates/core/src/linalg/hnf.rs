//! Row-style Hermite normal form.
//!
//! Canonical convention: nonzero rows only, strictly increasing pivot
//! columns, positive pivots, and every entry above a pivot reduced into
//! `[0, pivot)`. Two matrices with the same row lattice have byte-identical
//! Hermite forms.

use num_bigint::BigInt;

use super::matrix::{IntMatrix, Matrix};
use super::scalar::{abs_lt, with_fallback, Checked, Scalar};

/// Result of [`hnf`]: `u * m` equals `h` followed by `m.rows() - rank` zero
/// rows, and `u` is unimodular.
#[derive(Debug, Clone)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Rows of `u` spanning the left kernel of the input.
    pub fn left_kernel(&self) -> IntMatrix {
        let idx: Vec<usize> = (self.rank()..self.u.rows()).collect();
        self.u.select_rows(&idx)
    }
}

struct Echelon<T> {
    rows: Vec<Vec<T>>,
    transform: Option<Vec<Vec<T>>>,
    pivots: Vec<usize>,
}

/// `target -= q * source`, starting at column `from`.
fn sub_multiple<T: Scalar>(target: &mut [T], source: &[T], q: &T, from: usize) -> Checked<()> {
    for j in from..target.len() {
        if !source[j].is_zero() {
            target[j] = target[j].sub_mul(q, &source[j])?;
        }
    }
    Ok(())
}

fn negate<T: Scalar>(row: &mut [T]) -> Checked<()> {
    for e in row.iter_mut() {
        if !e.is_zero() {
            *e = e.neg()?;
        }
    }
    Ok(())
}

fn echelon<T: Scalar>(m: &Matrix<T>, track: bool) -> Checked<Echelon<T>> {
    let nrows = m.rows();
    let ncols = m.cols();
    let mut a = m.clone().into_rows();
    let mut u: Option<Vec<Vec<T>>> = track.then(|| Matrix::<T>::identity(nrows).into_rows());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let mut found = false;
        loop {
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if !a[i][c].is_zero() && best.is_none_or(|b| abs_lt(&a[i][c], &a[b][c])) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            found = true;
            a.swap(r, p);
            if let Some(u) = u.as_mut() {
                u.swap(r, p);
            }
            let mut clear = true;
            for i in r + 1..nrows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c])?;
                let (head, tail) = a.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[r], &q, c)?;
                if let Some(u) = u.as_mut() {
                    let (head, tail) = u.split_at_mut(i);
                    sub_multiple(&mut tail[0], &head[r], &q, 0)?;
                }
                if !a[i][c].is_zero() {
                    clear = false;
                }
            }
            if clear {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[r][c].is_negative() {
            negate(&mut a[r])?;
            if let Some(u) = u.as_mut() {
                negate(&mut u[r])?;
            }
        }
        for i in 0..r {
            if a[i][c].is_zero() {
                continue;
            }
            let q = a[i][c].div_floor(&a[r][c])?;
            if q.is_zero() {
                continue;
            }
            let (head, tail) = a.split_at_mut(r);
            sub_multiple(&mut head[i], &tail[0], &q, c)?;
            if let Some(u) = u.as_mut() {
                let (head, tail) = u.split_at_mut(r);
                sub_multiple(&mut head[i], &tail[0], &q, 0)?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Ok(Echelon {
        rows: a,
        transform: u,
        pivots,
    })
}

fn run<T: Scalar>(m: &IntMatrix, track: bool) -> Checked<Hnf> {
    let e = echelon(&m.to_checked::<T>()?, track)?;
    let ncols = m.cols();
    let h = Matrix::from_rows(e.rows, ncols).to_bigint();
    let u = match e.transform {
        Some(u) => Matrix::from_rows(u, m.rows()).to_bigint(),
        None => IntMatrix::zeros(0, m.rows()),
    };
    Ok(Hnf {
        h,
        u,
        pivots: e.pivots,
    })
}

/// Hermite normal form together with a unimodular transform.
pub fn hnf(m: &IntMatrix) -> Hnf {
    with_fallback(|| run::<i64>(m, true), || run::<BigInt>(m, true))
}

/// Hermite normal form of the row lattice, without the transform.
pub fn hnf_basis(m: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let out = with_fallback(|| run::<i64>(m, false), || run::<BigInt>(m, false));
    (out.h, out.pivots)
}

/// Basis (in Hermite form) of `{ y : y * m = 0 }`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let k = hnf(m).left_kernel();
    hnf_basis(&k).0
}

pub fn rank(m: &IntMatrix) -> usize {
    hnf_basis(m).1.len()
}
