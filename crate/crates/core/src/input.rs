//! JSON module descriptions.
//!
//! A description names a free module `M(W)` by its FB generators and a list
//! of elements. In quotient mode the described module is `M(W)/⟨elements⟩`,
//! in submodule mode it is the span of the elements inside `M(W)`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fi::ops::{span_submodule, Submodule};
use crate::fi::{
    FbModule, FiElement, FiModule, FreeBasisLabel, FreeModule, Preset, Representation, Ring,
};
use crate::json_int::Int;
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Quotient,
    Submodule,
}

fn default_mode() -> Mode {
    Mode::Quotient
}

/// One summand of the FB-module `W`, either a named representation or
/// explicit matrices for the adjacent transpositions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FbGenerator {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transpositions: Option<Vec<Vec<Vec<Int>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    /// Generator degree of the label.
    pub m: usize,
    pub subset: Vec<usize>,
    /// 1-based index into the generator representation.
    pub j: usize,
    pub coeff: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub degree: usize,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub ring: Ring,
    pub truncation: usize,
    pub fb_generators: Vec<FbGenerator>,
    #[serde(default)]
    pub elements: Vec<ElementFile>,
    #[serde(default = "default_mode")]
    pub mode: Mode,
}

/// A described module, resolved into the free module, its truncation, and
/// the submodule spanned by the elements.
#[derive(Debug, Clone)]
pub struct Instance {
    pub free: FreeModule,
    pub ambient: FiModule,
    pub sub: Submodule,
    pub mode: Mode,
}

impl Instance {
    pub fn quotient(&self) -> FiModule {
        self.ambient.quotient_by(&self.sub.lattices).expect("spanned lattices fit the ambient")
    }

    pub fn submodule(&self) -> FiModule {
        self.sub.module(&self.ambient).expect("spanned lattices are stable")
    }

    /// The module the description denotes.
    pub fn module(&self) -> FiModule {
        match self.mode {
            Mode::Quotient => self.quotient(),
            Mode::Submodule => self.submodule(),
        }
    }

    /// Largest degree of an FB generator of the ambient free module.
    pub fn generator_degree(&self) -> Option<usize> {
        self.free.generation_degree()
    }
}

impl FbGenerator {
    pub fn preset(degree: usize, preset: Preset) -> Self {
        FbGenerator {
            degree,
            rank: None,
            preset: Some(preset),
            transpositions: None,
        }
    }

    fn representation(&self, at: &str) -> Result<Representation> {
        match (&self.preset, &self.transpositions) {
            (Some(p), None) => {
                let rep = Representation::preset(*p, self.degree);
                if let Some(r) = self.rank {
                    if r != rep.rank() {
                        return Err(Error::Invalid(format!(
                            "{at}.rank: {r} does not match the {p:?} representation of rank {}",
                            rep.rank()
                        )));
                    }
                }
                Ok(rep)
            }
            (None, Some(ts)) => {
                let rank = self
                    .rank
                    .ok_or_else(|| Error::Invalid(format!("{at}.rank: required with explicit transpositions")))?;
                let mats = ts
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        if t.len() != rank || t.iter().any(|r| r.len() != rank) {
                            return Err(Error::Invalid(format!("{at}.transpositions[{i}]: expected a {rank}x{rank} matrix")));
                        }
                        let rows = t.iter().map(|r| r.iter().map(|e| e.0.clone()).collect()).collect();
                        Ok(IntMatrix::from_rows(rows, rank))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Representation::new(self.degree, rank, mats).map_err(|e| Error::Invalid(format!("{at}.transpositions: {e}")))
            }
            _ => Err(Error::Invalid(format!(
                "{at}: give exactly one of \"preset\" and \"transpositions\""
            ))),
        }
    }
}

impl ModuleFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("schema: {e}")))
    }

    /// Canonical JSON; parsing it back yields an equal description.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptions serialize")
    }

    pub fn build(&self) -> Result<Instance> {
        let mut fb = FbModule::zero();
        for (i, g) in self.fb_generators.iter().enumerate() {
            let at = format!("fb_generators[{i}]");
            if g.degree > self.truncation {
                return Err(Error::Invalid(format!("{at}.degree: {} exceeds the truncation {}", g.degree, self.truncation)));
            }
            fb.add(g.representation(&at)?);
        }
        let free = FreeModule::new(fb);
        let ambient = free.to_module(self.ring, self.truncation);
        let mut gens = Vec::new();
        for (i, el) in self.elements.iter().enumerate() {
            let at = format!("elements[{i}]");
            if el.degree > self.truncation {
                return Err(Error::Invalid(format!("{at}.degree: {} exceeds the truncation {}", el.degree, self.truncation)));
            }
            let terms: Vec<(FreeBasisLabel, BigInt)> = el
                .terms
                .iter()
                .map(|t| {
                    (
                        FreeBasisLabel {
                            m: t.m,
                            subset: t.subset.clone(),
                            j: t.j,
                        },
                        t.coeff.0.clone(),
                    )
                })
                .collect();
            let coords = free
                .element(el.degree, &terms)
                .map_err(|e| Error::Invalid(format!("{at}.terms: {e}")))?;
            gens.push(FiElement::new(el.degree, coords));
        }
        let sub = span_submodule(&ambient, &gens)?;
        Ok(Instance {
            free,
            ambient,
            sub,
            mode: self.mode,
        })
    }
}
