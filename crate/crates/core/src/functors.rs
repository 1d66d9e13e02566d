//! Shift, derivatives, the torsion kernel, minimal generators and the
//! generation filtration.
//!
//! All functors are computed on the stored presentation. Shifting reads
//! degree `n + 1` as degree `n`, so each shift loses one degree of
//! truncation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::degree::TruncatedDegree;
use crate::error::{Error, Result};
use crate::fi::ops::{generation_lattices, Submodule};
use crate::fi::FiModule;
use crate::linalg::{GroupInvariants, IntMatrix, Lattice};

/// Group invariants per functor and degree, with the degree of each row.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DegreeTable {
    pub groups: BTreeMap<String, Vec<GroupInvariants>>,
    pub degrees: BTreeMap<String, TruncatedDegree>,
}

impl DegreeTable {
    pub fn insert(&mut self, label: impl Into<String>, groups: Vec<GroupInvariants>) {
        let label = label.into();
        let flags: Vec<bool> = groups.iter().map(|g| !g.is_zero()).collect();
        self.degrees.insert(label.clone(), TruncatedDegree::from_flags(&flags));
        self.groups.insert(label, groups);
    }

    pub fn insert_module(&mut self, label: impl Into<String>, m: &FiModule) {
        self.insert(label, (0..=m.truncation()).map(|n| m.invariants(n)).collect());
    }

    pub fn degree(&self, label: &str) -> Option<TruncatedDegree> {
        self.degrees.get(label).copied()
    }
}

fn stacked(rows: impl IntoIterator<Item = IntMatrix>, cols: usize) -> IntMatrix {
    rows.into_iter().fold(IntMatrix::zeros(0, cols), |acc, m| acc.vstack(&m))
}

/// `(SV)_n = V_{n+1}`, with `S_n` acting on the first `n` points. The
/// inclusion of `SV` sends the star `n + 1` to `n + 2`.
pub fn shift(v: &FiModule) -> FiModule {
    shifted(v, 1, |_| Vec::new())
}

/// Generic `a`-fold shift with extra relations `extra(n)` in degree `n`
/// (as rows over the generators of `V_{n+a}`). The inclusion is the
/// order-preserving map missing `n + 1`.
fn shifted(v: &FiModule, a: usize, extra: impl Fn(usize) -> Vec<IntMatrix>) -> FiModule {
    let top = v.truncation().saturating_sub(a);
    if v.truncation() < a {
        return FiModule::zero(v.ring(), 0);
    }
    let mut ranks = Vec::new();
    let mut relations = Vec::new();
    let mut transpositions = Vec::new();
    let mut inclusions = Vec::new();
    for n in 0..=top {
        let g = v.rank(n + a);
        ranks.push(g);
        let rows = stacked(
            std::iter::once(v.relations(n + a).basis().clone()).chain(extra(n)),
            g,
        );
        relations.push(Lattice::span(&rows));
        transpositions.push((1..n).map(|i| v.transposition(n + a, i).clone()).collect());
        if n < top {
            inclusions.push(v.face(n + a, n + 1).clone());
        }
    }
    FiModule::presented(v.ring(), ranks, relations, transpositions, inclusions)
        .expect("shifted presentation is well formed")
}

/// Matrices of the natural map `V → SV`, which is the inclusion in each degree.
pub fn shift_map(v: &FiModule) -> Vec<IntMatrix> {
    (0..v.truncation()).map(|n| v.inclusion(n).clone()).collect()
}

/// `DV = coker(V → SV)`.
pub fn derivative(v: &FiModule) -> FiModule {
    shifted(v, 1, |n| vec![v.inclusion(n).clone()])
}

/// `KV = ker(V → SV)`, truncated one degree lower than `V`.
pub fn torsion_kernel(v: &FiModule) -> FiModule {
    let top = v.truncation();
    if top == 0 {
        return FiModule::zero(v.ring(), 0);
    }
    let w = v.truncate(top - 1);
    let lattices: Vec<Lattice> = (0..top)
        .map(|n| {
            let l = Lattice::preimage(v.inclusion(n), v.relations(n + 1)).expect("shapes agree");
            v.ring().normalize(l)
        })
        .collect();
    w.subquotient(&lattices).expect("kernel contains the relations")
}

pub fn derivative_and_kernel(v: &FiModule) -> (FiModule, FiModule) {
    (derivative(v), torsion_kernel(v))
}

/// `D^a V` in one step: degree `n` is `V_{n+a}` modulo the images of the
/// faces missing `n + 1, ..., n + a`.
pub fn iterated_derivative(v: &FiModule, a: usize) -> Result<FiModule> {
    if a == 0 || a > v.truncation() {
        return Err(Error::Truncation {
            degree: a,
            truncation: v.truncation(),
        });
    }
    Ok(shifted(v, a, |n| (1..=a).map(|j| v.face(n + a - 1, n + j).clone()).collect()))
}

/// `H_0(V)`: degree `n` modulo the images of all faces `[n-1] → [n]`.
pub fn h0(v: &FiModule) -> FiModule {
    let top = v.truncation();
    let relations = (0..=top)
        .map(|n| {
            let rows = stacked(
                std::iter::once(v.relations(n).basis().clone())
                    .chain((1..=n).map(|p| v.face(n - 1, p).clone())),
                v.rank(n),
            );
            Lattice::span(&rows)
        })
        .collect();
    FiModule::presented(
        v.ring(),
        v.ranks().to_vec(),
        relations,
        (0..=top).map(|n| v.transpositions(n).to_vec()).collect(),
        (0..top).map(|n| v.inclusion(n).clone()).collect(),
    )
    .expect("quotient presentation is well formed")
}

/// `H_0` with its degree and a check that the low-degree part generates.
#[derive(Debug, Clone)]
pub struct H0 {
    pub module: FiModule,
    pub degree: TruncatedDegree,
    /// Whether the elements of degree at most `deg H_0` generate `V`
    /// within the truncation.
    pub generates: bool,
}

pub fn h0_with_witness(v: &FiModule) -> H0 {
    let module = h0(v);
    let degree = module.degree();
    let generates = match degree.degree.value() {
        None => v.is_zero(),
        Some(k) => {
            let g = generation_lattices(v, k as usize);
            (0..=v.truncation()).all(|n| g[n] == full_in(v, n))
        }
    };
    H0 {
        module,
        degree,
        generates,
    }
}

fn full_in(v: &FiModule, n: usize) -> Lattice {
    Lattice::full(v.rank(n))
}

/// `V_{<=m}`, the submodule generated by degrees at most `m`.
pub fn generation_filtration(v: &FiModule, m: usize) -> Submodule {
    Submodule {
        lattices: generation_lattices(v, m),
    }
}

/// For `V ⊂ M` with `M` based, the groups `ker(D^a V → D^a M)` for
/// `a = 1..=a_max`. In degree `n` this is `(V ∩ F_M) / F_V`, where `F_X`
/// is the sum of the images of `X_{n+a-1}` under the faces missing the
/// stars `n + 1, ..., n + a`.
pub fn derivative_kernel_degrees(m: &FiModule, v: &Submodule, a_max: usize) -> Result<DegreeTable> {
    if v.lattices.len() != m.truncation() + 1 {
        return Err(Error::NotContained);
    }
    for (n, l) in v.lattices.iter().enumerate() {
        if l.ambient_rank() != m.rank(n) {
            return Err(Error::NotContained);
        }
    }
    let ring = m.ring();
    let mut table = DegreeTable::default();
    for a in 1..=a_max.min(m.truncation()) {
        let groups = (0..=m.truncation() - a)
            .map(|n| {
                let top = n + a;
                let faces: Vec<&IntMatrix> = (1..=a).map(|j| m.face(top - 1, n + j)).collect();
                let fm = ring.normalize(Lattice::span(&stacked(faces.iter().map(|f| (*f).clone()), m.rank(top))));
                let fv = ring.normalize(Lattice::span(&stacked(
                    faces.iter().map(|f| v.lattices[top - 1].basis().mul(f)),
                    m.rank(top),
                )));
                let cap = v.lattices[top].intersection(&fm).expect("same ambient");
                let g = cap.quotient_by(&fv).expect("F_V lies in V ∩ F_M").invariants();
                ring.invariants(g)
            })
            .collect();
        table.insert(format!("ker D^{a}"), groups);
    }
    Ok(table)
}
