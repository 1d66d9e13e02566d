//! Brute-force oracles shared by integration tests. Everything here is
//! deliberately naive and independent of the library's algorithms.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub fn to_i128(m: &fihom::linalg::IntMatrix) -> Vec<Vec<i128>> {
    m.iter_rows().map(|r| r.iter().map(|e| e.to_i128().expect("small entry")).collect()).collect()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * det(&minor);
    }
    total
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of all `k × k` minors (the `k`-th determinantal divisor).
pub fn minors_gcd(m: &[Vec<i128>], k: usize) -> i128 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = 0;
    for r in combinations(rows, k) {
        for c in combinations(cols, k) {
            let sub: Vec<Vec<i128>> = r.iter().map(|&i| c.iter().map(|&j| m[i][j]).collect()).collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

/// Nonzero invariant factors as successive quotients of determinantal
/// divisors.
pub fn invariant_factors(m: &[Vec<i128>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=rows.min(cols) {
        let d = minors_gcd(m, k);
        if d == 0 {
            break;
        }
        out.push(BigInt::from(d / prev));
        prev = d;
    }
    out
}

pub fn rank(m: &[Vec<i128>]) -> usize {
    invariant_factors(m).len()
}

/// Whether `h` is in the canonical row Hermite form used by the library.
pub fn is_canonical_hermite(h: &[Vec<i128>]) -> bool {
    let mut last: Option<usize> = None;
    for (i, row) in h.iter().enumerate() {
        let Some(p) = row.iter().position(|&x| x != 0) else { return false };
        if last.is_some_and(|l| p <= l) || row[p] <= 0 {
            return false;
        }
        if h[..i].iter().any(|above| above[p] < 0 || above[p] >= row[p]) {
            return false;
        }
        last = Some(p);
    }
    true
}

/// Membership in the row lattice of a matrix in echelon form, by
/// peeling off pivots from the top.
pub fn in_echelon_lattice(h: &[Vec<i128>], x: &[i128]) -> bool {
    let mut rest = x.to_vec();
    for row in h {
        let p = row.iter().position(|&v| v != 0).expect("nonzero row");
        if rest[..p].iter().any(|&v| v != 0) {
            return false;
        }
        if rest[p] % row[p] != 0 {
            return false;
        }
        let q = rest[p] / row[p];
        for (r, v) in rest.iter_mut().zip(row) {
            *r -= q * v;
        }
    }
    rest.iter().all(|&v| v == 0)
}
