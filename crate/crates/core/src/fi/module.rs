//! Truncated FI-modules.
//!
//! Degree `n` carries a group `Z^{g_n} / R_n` (with `R_n = 0` in the based
//! tier), the matrices of the adjacent transpositions `t_1, ..., t_{n-1}`,
//! and the matrix of the standard inclusion `[n] ⊂ [n+1]`. Matrices act on
//! row vectors, so the matrix of `g ∘ f` is `A_f · A_g`. Every other
//! injection is factored as a permutation after a chain of inclusions.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::degree::TruncatedDegree;
use crate::error::{Error, Result};
use crate::linalg::{GroupInvariants, IntMatrix, Lattice, PresentedGroup, SparseIntMatrix};

use super::fb::coxeter_violations;
use super::injection::{transposition_word, Injection};

/// Coefficient ring. Rational modules are stored as saturated lattices, so
/// a subgroup of `Z^g` stands for its rational span intersected with `Z^g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Q,
}

impl Ring {
    pub fn normalize(self, l: Lattice) -> Lattice {
        match self {
            Ring::Z => l,
            Ring::Q => l.saturate(),
        }
    }

    pub fn invariants(self, g: GroupInvariants) -> GroupInvariants {
        match self {
            Ring::Z => g,
            Ring::Q => g.rational(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
        })
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" | "z" => Ok(Ring::Z),
            "Q" | "q" => Ok(Ring::Q),
            other => Err(Error::Invalid(format!("unknown ring {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tier {
    Based,
    Presented,
}

/// An element of degree `degree`, in generator coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiElement {
    pub degree: usize,
    #[serde(with = "crate::json_int::vec")]
    pub coords: Vec<BigInt>,
}

impl FiElement {
    pub fn new(degree: usize, coords: Vec<BigInt>) -> Self {
        FiElement { degree, coords }
    }
}

/// One violated identity found by [`FiModule::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub degree: usize,
    pub relation: String,
}

#[derive(Debug, Clone)]
pub struct FiModule {
    ring: Ring,
    tier: Tier,
    ranks: Vec<usize>,
    relations: Vec<Lattice>,
    transpositions: Vec<Vec<IntMatrix>>,
    inclusions: Vec<IntMatrix>,
    faces: OnceLock<Vec<Vec<IntMatrix>>>,
    sparse: OnceLock<SparseActions>,
}

/// Sparse copies of the structure maps, for composing long words.
#[derive(Debug, Clone)]
struct SparseActions {
    transpositions: Vec<Vec<SparseIntMatrix>>,
    inclusions: Vec<SparseIntMatrix>,
}

impl FiModule {
    /// A module with free groups in every degree.
    pub fn based(
        ring: Ring,
        ranks: Vec<usize>,
        transpositions: Vec<Vec<IntMatrix>>,
        inclusions: Vec<IntMatrix>,
    ) -> Result<Self> {
        let relations = ranks.iter().map(|&g| Lattice::zero(g)).collect();
        Self::build(ring, Tier::Based, ranks, relations, transpositions, inclusions)
    }

    /// A module given by generators and relation lattices in each degree.
    pub fn presented(
        ring: Ring,
        ranks: Vec<usize>,
        relations: Vec<Lattice>,
        transpositions: Vec<Vec<IntMatrix>>,
        inclusions: Vec<IntMatrix>,
    ) -> Result<Self> {
        Self::build(ring, Tier::Presented, ranks, relations, transpositions, inclusions)
    }

    fn build(
        ring: Ring,
        tier: Tier,
        ranks: Vec<usize>,
        relations: Vec<Lattice>,
        transpositions: Vec<Vec<IntMatrix>>,
        inclusions: Vec<IntMatrix>,
    ) -> Result<Self> {
        let top = ranks.len();
        if top == 0 {
            return Err(Error::Invalid("a module needs at least degree 0".into()));
        }
        let dim = |expected: usize, found: usize| {
            if expected == found {
                Ok(())
            } else {
                Err(Error::Dimension { expected, found })
            }
        };
        dim(top, relations.len())?;
        dim(top, transpositions.len())?;
        dim(top - 1, inclusions.len())?;
        for n in 0..top {
            dim(ranks[n], relations[n].ambient_rank())?;
            dim(n.saturating_sub(1), transpositions[n].len())?;
            for t in &transpositions[n] {
                dim(ranks[n], t.rows())?;
                dim(ranks[n], t.cols())?;
            }
            if n + 1 < top {
                dim(ranks[n], inclusions[n].rows())?;
                dim(ranks[n + 1], inclusions[n].cols())?;
            }
        }
        let relations = relations.into_iter().map(|l| ring.normalize(l)).collect();
        Ok(FiModule {
            ring,
            tier,
            ranks,
            relations,
            transpositions,
            inclusions,
            faces: OnceLock::new(),
            sparse: OnceLock::new(),
        })
    }

    pub fn zero(ring: Ring, truncation: usize) -> Self {
        let ranks = vec![0; truncation + 1];
        let transpositions = (0..=truncation)
            .map(|n| (1..n).map(|_| IntMatrix::zeros(0, 0)).collect())
            .collect();
        let inclusions = (0..truncation).map(|_| IntMatrix::zeros(0, 0)).collect();
        Self::based(ring, ranks, transpositions, inclusions).expect("zero module is well formed")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn tier(&self) -> Tier {
        self.tier
    }

    pub fn truncation(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Number of generators in degree `n`.
    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn relations(&self, n: usize) -> &Lattice {
        &self.relations[n]
    }

    /// Matrix of `t_i = (i i+1)` in degree `n`, `1 <= i < n`.
    pub fn transposition(&self, n: usize, i: usize) -> &IntMatrix {
        &self.transpositions[n][i - 1]
    }

    pub fn transpositions(&self, n: usize) -> &[IntMatrix] {
        &self.transpositions[n]
    }

    /// Matrix of the standard inclusion `[n] ⊂ [n+1]`.
    pub fn inclusion(&self, n: usize) -> &IntMatrix {
        &self.inclusions[n]
    }

    pub fn group(&self, n: usize) -> PresentedGroup {
        PresentedGroup::new(self.ranks[n], self.relations[n].basis().clone())
    }

    /// Isomorphism type of degree `n`; torsion is dropped over `Q`.
    pub fn invariants(&self, n: usize) -> GroupInvariants {
        if self.relations[n].is_zero() {
            return GroupInvariants::free(self.ranks[n]);
        }
        self.ring.invariants(self.group(n).invariants())
    }

    pub fn is_zero_at(&self, n: usize) -> bool {
        let r = &self.relations[n];
        match self.ring {
            Ring::Q => r.rank() == self.ranks[n],
            Ring::Z => r.is_full(),
        }
    }

    pub fn is_zero(&self) -> bool {
        (0..=self.truncation()).all(|n| self.is_zero_at(n))
    }

    /// Largest degree with a nonzero group; flagged when that is the top
    /// represented degree.
    pub fn degree(&self) -> TruncatedDegree {
        let flags: Vec<bool> = (0..=self.truncation()).map(|n| !self.is_zero_at(n)).collect();
        TruncatedDegree::from_flags(&flags)
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.truncation() {
            return Err(Error::Truncation {
                degree: n,
                truncation: self.truncation(),
            });
        }
        Ok(())
    }

    /// Matrix of `f_*` for an injection `f: [m] -> [n]`.
    pub fn injection_matrix(&self, f: &Injection) -> Result<IntMatrix> {
        let (m, n) = (f.source(), f.target());
        self.check_degree(n)?;
        let sparse = self.sparse.get_or_init(|| SparseActions {
            transpositions: self
                .transpositions
                .iter()
                .map(|ts| ts.iter().map(SparseIntMatrix::from_dense).collect())
                .collect(),
            inclusions: self.inclusions.iter().map(SparseIntMatrix::from_dense).collect(),
        });
        let mut a = SparseIntMatrix::from_dense(&IntMatrix::identity(self.ranks[m]));
        for k in m..n {
            a = a.mul(&sparse.inclusions[k]);
        }
        for i in transposition_word(&f.permutation_part()) {
            a = a.mul(&sparse.transpositions[n][i - 1]);
        }
        Ok(a.to_dense())
    }

    /// `f_*(x)`, computed by factoring `f = σ ∘ ι^{n-m}`.
    pub fn apply_injection(&self, f: &Injection, x: &FiElement) -> Result<FiElement> {
        if x.degree != f.source() {
            return Err(Error::Dimension {
                expected: f.source(),
                found: x.degree,
            });
        }
        self.check_degree(f.target())?;
        if x.coords.len() != self.ranks[x.degree] {
            return Err(Error::Dimension {
                expected: self.ranks[x.degree],
                found: x.coords.len(),
            });
        }
        let n = f.target();
        let mut v = x.coords.clone();
        for k in f.source()..n {
            v = self.inclusions[k].apply(&v);
        }
        for i in transposition_word(&f.permutation_part()) {
            v = self.transpositions[n][i - 1].apply(&v);
        }
        Ok(FiElement::new(n, v))
    }

    /// Matrix of the order-preserving injection `[m] -> [m+1]` missing `p`.
    pub fn face(&self, m: usize, p: usize) -> &IntMatrix {
        let faces = self.faces.get_or_init(|| {
            (0..self.truncation())
                .map(|m| {
                    (1..=m + 1)
                        .map(|p| self.injection_matrix(&Injection::face(m, p)).expect("within truncation"))
                        .collect()
                })
                .collect()
        });
        &faces[m][p - 1]
    }

    /// Checks the defining relations of FI on this presentation, modulo the
    /// relation lattices, plus compatibility of relations with every map.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let top = self.truncation();
        for n in 0..=top {
            let rel = &self.relations[n];
            let holds = |d: &IntMatrix| d.iter_rows().all(|r| rel.contains(r));
            let t = &self.transpositions[n];
            let g = self.ranks[n];
            let id = IntMatrix::identity(g);
            let mut push = |relation: String| out.push(Violation { degree: n, relation });
            for i in 0..t.len() {
                if !holds(&diff(&t[i].mul(&t[i]), &id)) {
                    push(format!("R1 t_{}^2 = id", i + 1));
                }
                for j in i + 2..t.len() {
                    if !holds(&diff(&t[i].mul(&t[j]), &t[j].mul(&t[i]))) {
                        push(format!("R2 t_{} t_{} = t_{} t_{}", i + 1, j + 1, j + 1, i + 1));
                    }
                }
                if i + 1 < t.len() {
                    let lhs = t[i].mul(&t[i + 1]).mul(&t[i]);
                    let rhs = t[i + 1].mul(&t[i]).mul(&t[i + 1]);
                    if !holds(&diff(&lhs, &rhs)) {
                        push(format!("R3 braid t_{} t_{}", i + 1, i + 2));
                    }
                }
                if !rel.basis().mul(&t[i]).iter_rows().all(|r| rel.contains(r)) {
                    push(format!("t_{} preserves relations", i + 1));
                }
            }
            if n == top {
                continue;
            }
            let iota = &self.inclusions[n];
            let next = &self.relations[n + 1];
            let holds_next = |d: &IntMatrix| d.iter_rows().all(|r| next.contains(r));
            let tn = &self.transpositions[n + 1];
            for i in 0..t.len() {
                if !holds_next(&diff(&t[i].mul(iota), &iota.mul(&tn[i]))) {
                    push(format!("R4 iota_{n} t_{} = t_{} iota_{n}", i + 1, i + 1));
                }
            }
            if !rel.basis().mul(iota).iter_rows().all(|r| next.contains(r)) {
                push(format!("iota_{n} preserves relations"));
            }
            if n >= 1 {
                // t_n ∘ ι_n ∘ ι_{n-1} = ι_n ∘ ι_{n-1}, checked from degree n-1
                let two = self.inclusions[n - 1].mul(iota);
                if !holds_next(&diff(&two.mul(&tn[n - 1]), &two)) {
                    out.push(Violation {
                        degree: n,
                        relation: format!("R5 t_{n} iota_{n} iota_{} = iota_{n} iota_{}", n - 1, n - 1),
                    });
                }
            }
        }
        out
    }

    /// Coxeter relations on the nose (ignoring relations), i.e. whether the
    /// generator lattices carry honest symmetric-group representations.
    pub fn has_honest_actions(&self) -> bool {
        self.transpositions.iter().all(|t| coxeter_violations(t).is_empty())
    }

    /// Whether the FI identities hold exactly on the generators, not just
    /// modulo the relations.
    pub fn is_exact(&self) -> bool {
        if self.tier == Tier::Based {
            return self.validate().is_empty();
        }
        let mut bare = self.clone();
        bare.relations = self.ranks.iter().map(|&g| Lattice::zero(g)).collect();
        bare.validate().is_empty()
    }

    /// The same module cut off at degree `n`.
    pub fn truncate(&self, n: usize) -> FiModule {
        let n = n.min(self.truncation());
        FiModule {
            ring: self.ring,
            tier: self.tier,
            ranks: self.ranks[..=n].to_vec(),
            relations: self.relations[..=n].to_vec(),
            transpositions: self.transpositions[..=n].to_vec(),
            inclusions: self.inclusions[..n].to_vec(),
            faces: OnceLock::new(),
            sparse: OnceLock::new(),
        }
    }

    /// Quotient by stable lattices `extra[n]` in generator coordinates.
    pub fn quotient_by(&self, extra: &[Lattice]) -> Result<FiModule> {
        if extra.len() != self.ranks.len() {
            return Err(Error::Dimension {
                expected: self.ranks.len(),
                found: extra.len(),
            });
        }
        let relations = self
            .relations
            .iter()
            .zip(extra)
            .map(|(r, e)| r.sum(e))
            .collect::<Result<Vec<_>>>()?;
        Self::presented(
            self.ring,
            self.ranks.clone(),
            relations,
            self.transpositions.clone(),
            self.inclusions.clone(),
        )
    }

    /// The subquotient `P / R`, where each `P_n` contains `R_n` and is
    /// preserved by every map. Generators become the Hermite basis of `P_n`.
    pub fn subquotient(&self, p: &[Lattice]) -> Result<FiModule> {
        let zero: Vec<Lattice> = self.ranks.iter().map(|&g| Lattice::zero(g)).collect();
        self.section(p, &zero)
    }

    /// The section `P / (R + Q)` for stable lattices `Q ⊂ P`, with `P_n`
    /// containing `R_n`. Generators are the Hermite basis of `P_n`.
    pub fn section(&self, upper: &[Lattice], lower: &[Lattice]) -> Result<FiModule> {
        for l in [upper, lower] {
            if l.len() != self.ranks.len() {
                return Err(Error::Dimension {
                    expected: self.ranks.len(),
                    found: l.len(),
                });
            }
        }
        let coords = |l: &Lattice, m: &IntMatrix| -> Result<IntMatrix> {
            let rows = m
                .iter_rows()
                .map(|r| l.coordinates(r).ok_or(Error::NotContained))
                .collect::<Result<Vec<_>>>()?;
            Ok(IntMatrix::from_rows(rows, l.rank()))
        };
        let top = self.truncation();
        let mut ranks = Vec::new();
        let mut relations = Vec::new();
        let mut transpositions = Vec::new();
        let mut inclusions = Vec::new();
        for n in 0..=top {
            let p = &upper[n];
            let b = p.basis();
            ranks.push(p.rank());
            let rel = self.relations[n].sum(&lower[n])?;
            relations.push(Lattice::span(&coords(p, rel.basis())?));
            transpositions.push(
                self.transpositions[n]
                    .iter()
                    .map(|t| coords(p, &b.mul(t)))
                    .collect::<Result<Vec<_>>>()?,
            );
            if n < top {
                inclusions.push(coords(&upper[n + 1], &b.mul(&self.inclusions[n]))?);
            }
        }
        let based = relations.iter().all(Lattice::is_zero);
        let tier = if based { Tier::Based } else { Tier::Presented };
        Self::build(self.ring, tier, ranks, relations, transpositions, inclusions)
    }

    /// An isomorphic module whose relation matrices are diagonal, with
    /// generators of order one removed.
    pub fn minimized(&self) -> FiModule {
        if self.tier == Tier::Based {
            return self.clone();
        }
        let top = self.truncation();
        let reduced: Vec<_> = (0..=top).map(|n| self.group(n).reduce()).collect();
        let mut ranks = Vec::new();
        let mut relations = Vec::new();
        let mut transpositions = Vec::new();
        let mut inclusions = Vec::new();
        for n in 0..=top {
            let r = &reduced[n];
            let g = r.orders.len();
            ranks.push(g);
            let mut rel = IntMatrix::zeros(0, g);
            for (i, o) in r.orders.iter().enumerate() {
                if *o != BigInt::from(0) {
                    let mut row = vec![BigInt::from(0); g];
                    row[i] = o.clone();
                    rel.push_row(row);
                }
            }
            relations.push(Lattice::span(&rel));
            transpositions.push(
                self.transpositions[n]
                    .iter()
                    .map(|t| reduce_entries(&r.from_new.mul(t).mul(&r.to_new), &r.orders))
                    .collect(),
            );
            if n < top {
                let next = &reduced[n + 1];
                inclusions.push(reduce_entries(
                    &r.from_new.mul(&self.inclusions[n]).mul(&next.to_new),
                    &next.orders,
                ));
            }
        }
        Self::build(self.ring, Tier::Presented, ranks, relations, transpositions, inclusions)
            .expect("minimized presentation is well formed")
    }
}

/// Reduces column `j` modulo `orders[j]` when that order is finite.
fn reduce_entries(m: &IntMatrix, orders: &[BigInt]) -> IntMatrix {
    use num_integer::Integer;
    let mut out = m.clone();
    for (j, o) in orders.iter().enumerate() {
        if *o == BigInt::from(0) {
            continue;
        }
        for i in 0..out.rows() {
            out[(i, j)] = out[(i, j)].mod_floor(o);
        }
    }
    out
}

fn diff(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] -= &b[(i, j)];
        }
    }
    out
}
