//! Named example modules and a seeded random corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fi::{subsets, Preset, Representation, Ring};
use crate::input::{ElementFile, FbGenerator, ModuleFile, Mode, Term};
use crate::json_int::Int;

/// `M(m) = M(Z[S_m])`, the free module on one generator of degree `m`.
pub fn principal(m: usize, ring: Ring, truncation: usize) -> ModuleFile {
    ModuleFile {
        ring,
        truncation,
        fb_generators: vec![FbGenerator::preset(m, Preset::Regular)],
        elements: Vec::new(),
        mode: Mode::Quotient,
    }
}

/// `M` spanned by the `k`-subsets, modulo the submodule generated by
/// `v_{[d]} = Σ_{S ⊂ [d], |S| = k} e_S`.
pub fn sharpness(k: usize, d: usize, ring: Ring, truncation: usize) -> ModuleFile {
    let terms = subsets(d, k)
        .into_iter()
        .map(|s| Term {
            m: k,
            subset: s,
            j: 1,
            coeff: Int::from(1),
        })
        .collect();
    ModuleFile {
        ring,
        truncation,
        fb_generators: vec![FbGenerator::preset(k, Preset::Trivial)],
        elements: vec![ElementFile { degree: d, terms }],
        mode: Mode::Quotient,
    }
}

/// Resolves `principal:m` and `sharpness:k,d`.
pub fn preset(name: &str, ring: Ring, truncation: usize) -> Result<ModuleFile> {
    let bad = || Error::Invalid(format!("preset: unknown or malformed name {name:?}"));
    let (family, args) = name.split_once(':').ok_or_else(bad)?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|a| a.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match (family, nums.as_slice()) {
        ("principal", [m]) => Ok(principal(*m, ring, truncation)),
        ("sharpness", [k, d]) => Ok(sharpness(*k, *d, ring, truncation)),
        _ => Err(bad()),
    }
}

/// Shape of the random corpus.
#[derive(Debug, Clone, Copy)]
pub struct CorpusParams {
    pub seed: u64,
    pub size: usize,
    pub truncation: usize,
    pub max_generator_degree: usize,
    pub max_element_degree: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            seed: 20_240_601,
            size: 56,
            truncation: 8,
            max_generator_degree: 2,
            max_element_degree: 3,
        }
    }
}

/// Random descriptions alternating between both rings and both modes.
/// Generators have degree at most 2 and rank at most 2; there are one or
/// two elements of degree at most 3 with small coefficients.
pub fn corpus(p: CorpusParams) -> Vec<ModuleFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    (0..p.size)
        .map(|i| {
            let ring = if i % 2 == 0 { Ring::Z } else { Ring::Q };
            let mode = if (i / 2) % 2 == 0 { Mode::Quotient } else { Mode::Submodule };
            random_member(&mut rng, ring, mode, p)
        })
        .collect()
}

fn random_member(rng: &mut ChaCha8Rng, ring: Ring, mode: Mode, p: CorpusParams) -> ModuleFile {
    let count = rng.gen_range(1..=2);
    let mut fb_generators: Vec<FbGenerator> = (0..count)
        .map(|_| {
            let degree = rng.gen_range(0..=p.max_generator_degree);
            let preset = *[Preset::Trivial, Preset::Sign, Preset::Regular].choose(rng).expect("nonempty");
            FbGenerator::preset(degree, preset)
        })
        .collect();
    fb_generators.sort_by_key(|g| g.degree);
    let lowest = fb_generators[0].degree;
    let labels_at = |n: usize| -> Vec<(usize, Vec<usize>, usize)> {
        fb_generators
            .iter()
            .filter(|g| g.degree <= n)
            .flat_map(|g| {
                let r = Representation::preset(g.preset.expect("preset"), g.degree).rank();
                subsets(n, g.degree)
                    .into_iter()
                    .flat_map(move |s| (1..=r).map(move |j| (g.degree, s.clone(), j)))
            })
            .collect()
    };
    let n_elements = rng.gen_range(1..=2);
    let elements = (0..n_elements)
        .map(|_| {
            let degree = rng.gen_range(lowest..=p.max_element_degree.max(lowest));
            let labels = labels_at(degree);
            let n_terms = rng.gen_range(1..=3.min(labels.len()));
            let terms = labels
                .choose_multiple(rng, n_terms)
                .map(|(m, s, j)| {
                    let c = *[-2i64, -1, 1, 1, 2].choose(rng).expect("nonempty");
                    Term {
                        m: *m,
                        subset: s.clone(),
                        j: *j,
                        coeff: Int::from(c),
                    }
                })
                .collect();
            ElementFile { degree, terms }
        })
        .collect();
    ModuleFile {
        ring,
        truncation: p.truncation,
        fb_generators,
        elements,
        mode,
    }
}
