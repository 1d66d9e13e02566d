//! Catalan collections of subsets and the signed operators built from
//! disjoint transpositions.
//!
//! `Σ(b)` consists of the `b`-subsets of `[2b]` whose `i`-th element in
//! increasing order is at most `2i - 1`; `Σ(a, b)` keeps those containing
//! `[a]`. The group algebra elements `J^i_j = id - (i j)` and their
//! products over disjoint pairs act on free FI-modules and on the
//! permutation modules `F = Z[Inj([d], [n])]`.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fi::injection::{all_injections, subsets};
use crate::fi::{FiModule, Injection};
use crate::linalg::{IntMatrix, Lattice, SparseIntMatrix};

/// A member of `Σ(b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CatalanSet {
    pub b: usize,
    pub elements: Vec<usize>,
}

impl CatalanSet {
    pub fn new(elements: Vec<usize>) -> Result<Self> {
        let b = elements.len();
        let in_range = elements.windows(2).all(|w| w[0] < w[1]) && elements.iter().all(|&e| e >= 1 && e <= 2 * b);
        if !in_range || !satisfies_star(&elements) {
            return Err(Error::Invalid(format!("{elements:?} is not in the Catalan collection")));
        }
        Ok(CatalanSet { b, elements })
    }

    /// The complement in `[2b]`, increasing.
    pub fn complement(&self) -> Vec<usize> {
        (1..=2 * self.b).filter(|x| !self.elements.contains(x)).collect()
    }

    /// Compact decimal form such as `1357`, with commas once an element
    /// has two digits.
    pub fn label(&self) -> String {
        subset_label(&self.elements)
    }
}

pub fn subset_label(s: &[usize]) -> String {
    if s.iter().all(|&x| x < 10) {
        s.iter().map(|x| x.to_string()).collect()
    } else {
        s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// The `i`-th smallest element is at most `2i - 1`.
pub fn satisfies_star(sorted: &[usize]) -> bool {
    sorted.iter().enumerate().all(|(i, &s)| s <= 2 * i + 1)
}

/// `Σ(a, b)` in lexicographic order.
pub fn enumerate_sigma(a: usize, b: usize) -> Result<Vec<CatalanSet>> {
    if a == 0 || a > b {
        return Err(Error::Invalid(format!("need 1 <= a <= b, got a = {a}, b = {b}")));
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=a).collect();
    extend_sigma(b, &mut cur, &mut out);
    Ok(out)
}

fn extend_sigma(b: usize, cur: &mut Vec<usize>, out: &mut Vec<CatalanSet>) {
    let i = cur.len();
    if i == b {
        out.push(CatalanSet {
            b,
            elements: cur.clone(),
        });
        return;
    }
    let lo = cur.last().map_or(1, |x| x + 1);
    for s in lo..=(2 * i + 1) {
        cur.push(s);
        extend_sigma(b, cur, out);
        cur.pop();
    }
}

/// The subsets `σ·S` for `σ` in the group generated by `(s_k t_k)`, in the
/// order of the bit masks selecting which pairs are swapped.
pub fn descendants(s: &[usize]) -> Vec<Vec<usize>> {
    let b = s.len();
    let t: Vec<usize> = (1..=2 * b).filter(|x| !s.contains(x)).collect();
    (0u32..(1 << b))
        .map(|mask| {
            let mut d: Vec<usize> = (0..b).map(|k| if mask >> k & 1 == 1 { t[k] } else { s[k] }).collect();
            d.sort_unstable();
            d
        })
        .collect()
}

/// Whether `S` lexicographically precedes all of its descendants.
pub fn is_lex_first(s: &[usize]) -> bool {
    descendants(s).iter().all(|d| s <= d.as_slice())
}

/// A formal sum of injections `[source] → [target]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraOperator {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(i64, Injection)>,
}

impl GroupAlgebraOperator {
    /// `∏_k (id - (i_k j_k))` in `Z[S_n]` for pairwise disjoint pairs.
    pub fn pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for &(i, j) in pairs {
            for x in [i, j] {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::Invalid(format!("pairs {pairs:?} are not disjoint in [{n}]")));
                }
                seen[x] = true;
            }
        }
        let terms = (0u32..(1 << pairs.len()))
            .map(|mask| {
                let mut images: Vec<usize> = (1..=n).collect();
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        images.swap(i - 1, j - 1);
                    }
                }
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                (sign, Injection::new(n, images).expect("permutation"))
            })
            .collect();
        Ok(GroupAlgebraOperator {
            source: n,
            target: n,
            terms,
        })
    }

    /// `id - (i j)`.
    pub fn j(n: usize, i: usize, j: usize) -> Result<Self> {
        Self::pairs(n, &[(i, j)])
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GroupAlgebraOperator) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::Dimension {
                expected: self.source,
                found: other.target,
            });
        }
        let mut acc: HashMap<Vec<usize>, i64> = HashMap::new();
        for (c1, g) in &self.terms {
            for (c2, f) in &other.terms {
                *acc.entry(f.then(g).images().to_vec()).or_default() += c1 * c2;
            }
        }
        let mut terms: Vec<(i64, Injection)> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(im, c)| (c, Injection::new(self.target, im).expect("composite")))
            .collect();
        terms.sort_by(|a, b| a.1.images().cmp(b.1.images()));
        Ok(GroupAlgebraOperator {
            source: other.source,
            target: self.target,
            terms,
        })
    }

    /// Terms combined and sorted, for comparison.
    pub fn normalized(&self) -> Vec<(Vec<usize>, i64)> {
        let mut acc: HashMap<Vec<usize>, i64> = HashMap::new();
        for (c, f) in &self.terms {
            *acc.entry(f.images().to_vec()).or_default() += c;
        }
        let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort();
        v
    }

    /// The matrix of the operator on a module.
    pub fn matrix_on(&self, v: &FiModule) -> Result<IntMatrix> {
        let mut out = IntMatrix::zeros(v.rank(self.source), v.rank(self.target));
        for (c, f) in &self.terms {
            let a = v.injection_matrix(f)?;
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    if a[(i, j)] != BigInt::from(0) {
                        out[(i, j)] += &a[(i, j)] * c;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `J_S = ∏_i J^{t_i}_{s_i}` as an element of `Z[S_n]`.
pub fn j_operator(s: &CatalanSet, n: usize) -> Result<GroupAlgebraOperator> {
    if n < 2 * s.b {
        return Err(Error::Invalid(format!("J_S needs n >= {}, got {n}", 2 * s.b)));
    }
    let pairs: Vec<(usize, usize)> = s.elements.iter().copied().zip(s.complement()).collect();
    GroupAlgebraOperator::pairs(n, &pairs)
}

/// `J̃_{[a]} = Σ_{K ⊂ [a]} (-1)^{|K|} f_K : [n] → [n + a]`, where `f_K`
/// sends `i ∈ K` to the star `n + i` and fixes everything else.
pub fn jtilde(n: usize, a: usize) -> Result<GroupAlgebraOperator> {
    if a > n {
        return Err(Error::Invalid(format!("J̃ needs a <= n, got a = {a}, n = {n}")));
    }
    let terms = (0u32..(1 << a))
        .map(|mask| {
            let images = (1..=n)
                .map(|i| if i <= a && mask >> (i - 1) & 1 == 1 { n + i } else { i })
                .collect();
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            (sign, Injection::new(n + a, images).expect("injective"))
        })
        .collect();
    Ok(GroupAlgebraOperator {
        source: n,
        target: n + a,
        terms,
    })
}

/// `ker J̃_{[a]}` on `V_n`, in generator coordinates (containing `R_n`).
pub fn jtilde_kernel(v: &FiModule, n: usize, a: usize) -> Result<Lattice> {
    if n + a > v.truncation() {
        return Err(Error::Truncation {
            degree: n + a,
            truncation: v.truncation(),
        });
    }
    let op = jtilde(n, a)?.matrix_on(v)?;
    let l = Lattice::preimage(&op, v.relations(n + a))?;
    Ok(v.ring().normalize(l))
}

/// `J_0 = J^1_2 J^3_4 ⋯ J^{2m-1}_{2m}` kills `V_n`. This decides
/// `I_m · V_n = 0`: the generators of `I_m` are the `S_n`-conjugates of
/// `J_0`, and `V_n` is an `S_n`-module.
pub fn ideal_annihilation_check(v: &FiModule, m: usize, n: usize) -> Result<bool> {
    if n > v.truncation() {
        return Err(Error::Truncation {
            degree: n,
            truncation: v.truncation(),
        });
    }
    if 2 * m > n {
        return Ok(true);
    }
    let pairs: Vec<(usize, usize)> = (0..m).map(|k| (2 * k + 1, 2 * k + 2)).collect();
    let op = GroupAlgebraOperator::pairs(n, &pairs)?.matrix_on(v)?;
    let rel = v.relations(n);
    let killed = op.iter_rows().all(|r| rel.contains(r));
    Ok(killed)
}

/// The basis `Inj([d], [n])` of `F`, with lookup by image tuple.
#[derive(Debug, Clone)]
pub struct InjectionBasis {
    pub d: usize,
    pub n: usize,
    pub injections: Vec<Injection>,
    index: HashMap<Vec<usize>, usize>,
}

impl InjectionBasis {
    pub fn new(d: usize, n: usize) -> Self {
        let injections = all_injections(d, n);
        let index = injections.iter().enumerate().map(|(i, f)| (f.images().to_vec(), i)).collect();
        InjectionBasis {
            d,
            n,
            injections,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.injections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.injections.is_empty()
    }

    /// Sparse row of `J · f` for an operator in `Z[S_n]`.
    pub fn apply(&self, op: &GroupAlgebraOperator, f: usize) -> Vec<(usize, BigInt)> {
        let f = &self.injections[f];
        op.terms
            .iter()
            .map(|(c, g)| (self.index[f.then(g).images()], BigInt::from(*c)))
            .collect()
    }

    /// The subgroup spanned by the injections satisfying `pred`.
    pub fn subgroup(&self, pred: impl Fn(&Injection) -> bool) -> InjectionBasisSubgroup {
        let selected = (0..self.len()).filter(|&i| pred(&self.injections[i])).collect();
        InjectionBasisSubgroup {
            d: self.d,
            n: self.n,
            selected,
        }
    }

    /// `F^{a,b}`: no `S ∈ Σ(a, b)` lies in the image.
    pub fn f_upper(&self, a: usize, b: usize) -> InjectionBasisSubgroup {
        let sigma = enumerate_sigma(a, b).expect("a <= b");
        self.subgroup(|f| {
            let im = f.image_set();
            sigma.iter().all(|s| !s.elements.iter().all(|x| im.contains(x)))
        })
    }

    /// `F_{=S}`: the image meets `[2b]` exactly in `S`.
    pub fn f_equal(&self, s: &CatalanSet) -> InjectionBasisSubgroup {
        self.subgroup(|f| {
            let meet: Vec<usize> = f.image_set().into_iter().filter(|&x| x <= 2 * s.b).collect();
            meet == s.elements
        })
    }
}

/// A subgroup of `F` spanned by a subset of the injection basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectionBasisSubgroup {
    pub d: usize,
    pub n: usize,
    pub selected: Vec<usize>,
}

impl InjectionBasisSubgroup {
    pub fn contains_basis(&self, i: usize) -> bool {
        self.selected.binary_search(&i).is_ok()
    }

    pub fn lattice(&self, ambient: usize) -> Lattice {
        let rows = self
            .selected
            .iter()
            .map(|&i| {
                let mut r = vec![BigInt::from(0); ambient];
                r[i] = BigInt::from(1);
                r
            })
            .collect();
        Lattice::span_rows(rows, ambient)
    }
}

/// Outcome of a brute-force check whose hypothesis may fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Holds,
    Fails,
    Unchecked,
}

impl Check {
    fn from_bool(b: bool) -> Self {
        if b {
            Check::Holds
        } else {
            Check::Fails
        }
    }
}

/// All ways of choosing `b` pairwise disjoint unordered pairs in `[n]`.
pub fn disjoint_pairings(n: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(n: usize, b: usize, min_first: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if cur.len() == b {
            out.push(cur.clone());
            return;
        }
        for i in min_first..=n {
            if used[i] {
                continue;
            }
            used[i] = true;
            for j in i + 1..=n {
                if used[j] {
                    continue;
                }
                used[j] = true;
                cur.push((i, j));
                go(n, b, i + 1, used, cur, out);
                cur.pop();
                used[j] = false;
            }
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    go(n, b, 1, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out
}

/// Whether the rows, taken modulo the unit vectors `killed`, span the
/// remaining coordinates over `Z`.
fn spans_complement(rows: Vec<Vec<(usize, BigInt)>>, ncols: usize, killed: &InjectionBasisSubgroup) -> bool {
    let keep: Vec<usize> = (0..ncols).filter(|&i| !killed.contains_basis(i)).collect();
    if keep.is_empty() {
        return true;
    }
    let mut pos = vec![usize::MAX; ncols];
    for (k, &c) in keep.iter().enumerate() {
        pos[c] = k;
    }
    let mut m = SparseIntMatrix::new(keep.len());
    for r in rows {
        m.push_row(r.into_iter().filter(|(c, _)| pos[*c] != usize::MAX).map(|(c, v)| (pos[c], v)).collect());
    }
    let f = m.invariant_factors();
    f.len() == keep.len() && f.iter().all(|x| *x == BigInt::from(1))
}

/// `F = I_b · F + F^b` for `F = Z[Inj([d], [n])]`, when `n >= b + d`.
pub fn verify_bigb(d: usize, n: usize, b: usize) -> Check {
    if n < b + d || b == 0 {
        return Check::Unchecked;
    }
    let basis = InjectionBasis::new(d, n);
    let fb = basis.f_upper(1, b);
    let ops: Vec<GroupAlgebraOperator> = disjoint_pairings(n, b)
        .iter()
        .map(|p| GroupAlgebraOperator::pairs(n, p).expect("disjoint"))
        .collect();
    let basis = &basis;
    let rows: Vec<Vec<(usize, BigInt)>> = ops
        .par_iter()
        .flat_map_iter(|op| (0..basis.len()).map(move |f| basis.apply(op, f)).collect::<Vec<_>>())
        .collect();
    Check::from_bool(spans_complement(rows, basis.len(), &fb))
}

/// `F^{a,b+1} ⊂ F^{a,b} + Σ_{S ∈ Σ(a,b)} J_S F_{=S}`, when `a <= b` and `2b <= n`.
pub fn verify_indb(d: usize, n: usize, a: usize, b: usize) -> Check {
    if a == 0 || a > b || 2 * b > n {
        return Check::Unchecked;
    }
    let basis = InjectionBasis::new(d, n);
    let lower = basis.f_upper(a, b);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let keep: Vec<usize> = (0..basis.len()).filter(|&i| !lower.contains_basis(i)).collect();
    let mut pos = vec![usize::MAX; basis.len()];
    for (k, &c) in keep.iter().enumerate() {
        pos[c] = k;
    }
    let project = |r: Vec<(usize, BigInt)>| {
        let mut out = vec![BigInt::from(0); keep.len()];
        for (c, v) in r {
            if pos[c] != usize::MAX {
                out[pos[c]] += v;
            }
        }
        out
    };
    for s in enumerate_sigma(a, b).expect("a <= b") {
        let j = j_operator(&s, n).expect("n >= 2b");
        for f in basis.f_equal(&s).selected {
            rows.push(project(basis.apply(&j, f)));
        }
    }
    let rhs = Lattice::span_rows(rows, keep.len());
    let upper = basis.f_upper(a, b + 1);
    let holds = upper.selected.iter().all(|&i| {
        let mut e = vec![(i, BigInt::from(1))];
        e.retain(|(c, _)| pos[*c] != usize::MAX);
        rhs.contains(&project(e))
    });
    Check::from_bool(holds)
}

/// All `b`-subsets of `[2b]`, for checking the enumeration against the
/// defining inequality.
pub fn all_half_subsets(b: usize) -> Vec<Vec<usize>> {
    subsets(2 * b, b)
}
