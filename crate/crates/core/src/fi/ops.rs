//! Submodules, kernels, and quotients.

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Lattice};

use super::module::{FiElement, FiModule};

/// A sub-FI-module, stored as one lattice per degree in the generator
/// coordinates of its ambient module. Each lattice contains the ambient
/// relations, so the submodule itself is `lattices[n] / R_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    pub lattices: Vec<Lattice>,
}

impl Submodule {
    /// The submodule as a module in its own coordinates.
    pub fn module(&self, ambient: &FiModule) -> Result<FiModule> {
        ambient.subquotient(&self.lattices)
    }

    /// Inclusion matrices into the ambient generators, one per degree.
    pub fn embedding(&self) -> Vec<IntMatrix> {
        self.lattices.iter().map(|l| l.basis().clone()).collect()
    }

    pub fn truncation(&self) -> usize {
        self.lattices.len() - 1
    }

    pub fn whole(ambient: &FiModule) -> Self {
        Submodule {
            lattices: ambient.ranks().iter().map(|&g| Lattice::full(g)).collect(),
        }
    }

    pub fn relations_of(ambient: &FiModule) -> Self {
        Submodule {
            lattices: (0..=ambient.truncation()).map(|n| ambient.relations(n).clone()).collect(),
        }
    }
}

/// Smallest `S_n`-stable lattice containing `l`.
pub fn symmetric_closure(m: &FiModule, n: usize, l: Lattice) -> Lattice {
    let mut cur = l;
    loop {
        let mut rows = cur.basis().clone();
        for t in m.transpositions(n) {
            rows = rows.vstack(&cur.basis().mul(t));
        }
        let next = m.ring().normalize(Lattice::span(&rows));
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Lattices of the submodule generated by `gens` (together with the
/// relations): `V_n` is the `S_n`-closure of `R_n`, the generators of
/// degree `n`, and the image of `V_{n-1}` under the inclusion.
pub fn span_lattices(m: &FiModule, gens: &[FiElement]) -> Result<Vec<Lattice>> {
    for g in gens {
        if g.degree > m.truncation() {
            return Err(Error::Truncation {
                degree: g.degree,
                truncation: m.truncation(),
            });
        }
        if g.coords.len() != m.rank(g.degree) {
            return Err(Error::Dimension {
                expected: m.rank(g.degree),
                found: g.coords.len(),
            });
        }
    }
    let mut out: Vec<Lattice> = Vec::with_capacity(m.truncation() + 1);
    for n in 0..=m.truncation() {
        let mut rows = m.relations(n).basis().clone();
        if n > 0 {
            rows = rows.vstack(&out[n - 1].basis().mul(m.inclusion(n - 1)));
        }
        let mut fresh = false;
        for g in gens.iter().filter(|g| g.degree == n) {
            rows.push_row(g.coords.clone());
            fresh = true;
        }
        let l = m.ring().normalize(Lattice::span(&rows));
        // the inclusion is S_{n-1}-equivariant, so only new generators or
        // the missing transposition t_{n-1} can break stability
        out.push(if fresh || n >= 2 { symmetric_closure(m, n, l) } else { l });
    }
    Ok(out)
}

pub fn span_submodule(m: &FiModule, gens: &[FiElement]) -> Result<Submodule> {
    Ok(Submodule {
        lattices: span_lattices(m, gens)?,
    })
}

/// The generation filtration `V_{<=k}` of a module, as lattices.
pub fn generation_lattices(m: &FiModule, k: usize) -> Vec<Lattice> {
    let gens: Vec<FiElement> = (0..=k.min(m.truncation()))
        .flat_map(|n| {
            let g = m.rank(n);
            (0..g).map(move |j| {
                let mut v = vec![num_bigint::BigInt::from(0); g];
                v[j] = 1.into();
                FiElement::new(n, v)
            })
        })
        .collect();
    span_lattices(m, &gens).expect("basis vectors lie within the truncation")
}

/// A map of FI-modules, given by its matrices on generators.
#[derive(Debug, Clone)]
pub struct FiMap<'a> {
    pub source: &'a FiModule,
    pub target: &'a FiModule,
    pub matrices: Vec<IntMatrix>,
}

impl<'a> FiMap<'a> {
    pub fn new(source: &'a FiModule, target: &'a FiModule, matrices: Vec<IntMatrix>) -> Result<Self> {
        let map = FiMap {
            source,
            target,
            matrices,
        };
        map.check()?;
        Ok(map)
    }

    fn check(&self) -> Result<()> {
        let top = self.source.truncation();
        if self.target.truncation() < top || self.matrices.len() != top + 1 {
            return Err(Error::Dimension {
                expected: top + 1,
                found: self.matrices.len(),
            });
        }
        for (n, phi) in self.matrices.iter().enumerate() {
            if phi.rows() != self.source.rank(n) || phi.cols() != self.target.rank(n) {
                return Err(Error::Dimension {
                    expected: self.target.rank(n),
                    found: phi.cols(),
                });
            }
            let rel = self.target.relations(n);
            let within = |m: &IntMatrix, other: &IntMatrix, rel: &Lattice| {
                m.iter_rows().zip(other.iter_rows()).all(|(a, b)| {
                    let d: Vec<_> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                    rel.contains(&d)
                })
            };
            for i in 1..n {
                let lhs = self.source.transposition(n, i).mul(phi);
                let rhs = phi.mul(self.target.transposition(n, i));
                if !within(&lhs, &rhs, rel) {
                    return Err(Error::Equivariance(format!("t_{i} in degree {n}")));
                }
            }
            if !self.source.relations(n).basis().mul(phi).iter_rows().all(|r| rel.contains(r)) {
                return Err(Error::Equivariance(format!("relations in degree {n}")));
            }
            if n < top {
                let lhs = self.source.inclusion(n).mul(&self.matrices[n + 1]);
                let rhs = phi.mul(self.target.inclusion(n));
                if !within(&lhs, &rhs, self.target.relations(n + 1)) {
                    return Err(Error::Equivariance(format!("inclusion in degree {n}")));
                }
            }
        }
        Ok(())
    }

    /// Kernel lattices `{x : x φ_n ∈ R'_n}` in source coordinates.
    pub fn kernel(&self) -> Result<Submodule> {
        let lattices = self
            .matrices
            .iter()
            .enumerate()
            .map(|(n, phi)| {
                let l = Lattice::preimage(phi, self.target.relations(n))?;
                Ok(self.source.ring().normalize(l))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Submodule { lattices })
    }

    /// Image lattices `R'_n + im φ_n` in target coordinates.
    pub fn image(&self) -> Result<Submodule> {
        let lattices = self
            .matrices
            .iter()
            .enumerate()
            .map(|(n, phi)| {
                let l = self.target.relations(n).sum(&Lattice::span(phi))?;
                Ok(self.target.ring().normalize(l))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Submodule { lattices })
    }
}

/// Kernel of a map, as a module in its own coordinates.
pub fn kernel_of_map(phi: &FiMap<'_>) -> Result<FiModule> {
    phi.kernel()?.module(phi.source)
}

/// `m / v`, presented by the generators of `m`.
pub fn quotient_module(m: &FiModule, v: &Submodule) -> Result<FiModule> {
    if v.lattices.len() != m.truncation() + 1 {
        return Err(Error::Dimension {
            expected: m.truncation() + 1,
            found: v.lattices.len(),
        });
    }
    for (n, l) in v.lattices.iter().enumerate() {
        if l.ambient_rank() != m.rank(n) {
            return Err(Error::NotContained);
        }
    }
    m.quotient_by(&v.lattices)
}

