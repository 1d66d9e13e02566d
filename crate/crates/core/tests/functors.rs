use fihom::families::{corpus, sharpness, CorpusParams};
use fihom::fi::ops::generation_lattices;
use fihom::fi::{FbModule, FiModule, FreeModule, Preset, Representation, Ring, Submodule};
use fihom::functors::{
    derivative, derivative_and_kernel, derivative_kernel_degrees, generation_filtration, h0, h0_with_witness,
    iterated_derivative, shift, torsion_kernel,
};
use fihom::input::Mode;
use fihom::koszul::{fi_homology, free_cover};
use fihom::fi::FiMap;
use fihom::linalg::Lattice;
use fihom::Degree;

fn free(preset: Preset, m: usize, trunc: usize) -> FiModule {
    FreeModule::new(FbModule::concentrated(Representation::preset(preset, m))).to_module(Ring::Z, trunc)
}

fn free_ranks(m: &FiModule) -> Vec<usize> {
    (0..=m.truncation()).map(|n| m.invariants(n).free_rank).collect()
}

fn same_groups(a: &FiModule, b: &FiModule) -> bool {
    a.truncation() == b.truncation() && (0..=a.truncation()).all(|n| a.invariants(n) == b.invariants(n))
}

#[test]
fn shift_examples() {
    let s0 = shift(&free(Preset::Trivial, 0, 5));
    assert_eq!(free_ranks(&s0), vec![1; 5]);
    assert!((0..4).all(|n| s0.inclusion(n).is_identity()));
    let s1 = shift(&free(Preset::Trivial, 1, 5));
    assert_eq!(free_ranks(&s1), (1..=5).collect::<Vec<_>>());
    assert!(shift(&FiModule::zero(Ring::Z, 4)).is_zero());
    assert!(s1.validate().is_empty());
}

#[test]
fn derivative_examples() {
    let (d, k) = derivative_and_kernel(&free(Preset::Regular, 2, 6));
    assert!(k.is_zero());
    assert_eq!(free_ranks(&d), (0..=5).map(|n| 2 * n).collect::<Vec<_>>());
    assert!(d.validate().is_empty());

    // all maps zero: K = V and D_n = V_{n+1}
    let h = h0(&free(Preset::Regular, 2, 5));
    let (d, k) = derivative_and_kernel(&h);
    assert!(same_groups(&k, &h.truncate(4)));
    assert!((0..=4).all(|n| d.invariants(n) == h.invariants(n + 1)));
}

#[test]
fn iterated_derivative_examples() {
    let m2 = free(Preset::Regular, 2, 7);
    assert!(iterated_derivative(&m2, 3).unwrap().is_zero());
    let d2 = iterated_derivative(&m2, 2).unwrap();
    assert_eq!(free_ranks(&d2), vec![2; 6]);
    assert!(same_groups(&iterated_derivative(&m2, 1).unwrap(), &derivative(&m2)));
    assert!(iterated_derivative(&m2, 8).is_err());
}

#[test]
fn h0_examples() {
    for m in 0..=3 {
        let h = h0_with_witness(&free(Preset::Regular, m, 5));
        assert_eq!(h.degree.degree, Degree::Finite(m as i64));
        assert!(h.generates);
        let fact: usize = (1..=m).product();
        assert_eq!(h.module.invariants(m).free_rank, fact);
    }
    let w = sharpness(1, 2, Ring::Q, 6).build().unwrap().quotient();
    assert_eq!(h0(&w).degree().degree, Degree::Finite(1));
    let z = h0_with_witness(&FiModule::zero(Ring::Z, 3));
    assert_eq!(z.degree.degree, Degree::NegInf);
    assert!(z.generates);
}

#[test]
fn generation_filtration_examples() {
    let m2 = free(Preset::Regular, 2, 5);
    assert!(generation_filtration(&m2, 1).lattices.iter().all(Lattice::is_zero));
    assert_eq!(generation_filtration(&m2, 2), Submodule::whole(&m2));
}

#[test]
fn derivative_kernel_examples() {
    let inst = sharpness(1, 2, Ring::Q, 7).build().unwrap();
    let all = Submodule::whole(&inst.ambient);
    let t = derivative_kernel_degrees(&inst.ambient, &all, 3).unwrap();
    assert!(t.degrees.values().all(|d| d.degree.is_neg_inf()));

    let t = derivative_kernel_degrees(&inst.ambient, &inst.sub, 4).unwrap();
    assert!(t.degree("ker D^1").unwrap().degree.at_most(2));
    // a > d kills D^a V
    for a in 3..=4 {
        assert!(t.degree(&format!("ker D^{a}")).unwrap().degree.is_neg_inf());
    }
}

fn small_corpus() -> Vec<fihom::input::ModuleFile> {
    corpus(CorpusParams {
        size: 16,
        truncation: 6,
        ..CorpusParams::default()
    })
}

#[test]
fn exactness_of_kernel_shift_derivative() {
    for f in small_corpus() {
        let mut f = f;
        f.ring = Ring::Q;
        let v = f.build().unwrap().module();
        let (d, k) = derivative_and_kernel(&v);
        let s = shift(&v);
        for n in 0..v.truncation() {
            let alt = k.invariants(n).free_rank as i64 - v.invariants(n).free_rank as i64
                + s.invariants(n).free_rank as i64
                - d.invariants(n).free_rank as i64;
            assert_eq!(alt, 0);
        }
    }
}

#[test]
fn iterated_derivative_matches_composition() {
    for f in small_corpus() {
        let v = f.build().unwrap().module();
        let mut composed = v.clone();
        for a in 1..=3 {
            composed = derivative(&composed).minimized();
            let direct = iterated_derivative(&v, a).unwrap();
            assert!(same_groups(&direct, &composed), "a = {a}");
        }
    }
}

#[test]
fn free_modules_are_derivative_acyclic() {
    for (preset, m) in [(Preset::Trivial, 2), (Preset::Regular, 2), (Preset::Sign, 3)] {
        let v = free(preset, m, 7);
        assert!(torsion_kernel(&v).is_zero());
        for a in 1..=3 {
            let da = iterated_derivative(&v, a).unwrap();
            assert!(torsion_kernel(&da).is_zero(), "{preset:?} {m} a={a}");
        }
    }
}

#[test]
fn derivative_degree_bounds_generation() {
    for f in small_corpus() {
        let v = f.build().unwrap().module();
        let h = h0(&v).degree();
        if let Some(k) = h.certain().and_then(Degree::value) {
            let a = k as usize + 1;
            if a <= v.truncation() {
                assert!(iterated_derivative(&v, a).unwrap().is_zero());
            }
        }
        for a in 1..=3 {
            let da = iterated_derivative(&v, a).unwrap().degree();
            if da.truncation_limited || h.truncation_limited {
                continue;
            }
            if let Some(m) = da.degree.value() {
                assert!(h.degree.at_most(m + a as i64));
            } else {
                assert!(h.degree.at_most(a as i64 - 1));
            }
        }
    }
}

#[test]
fn relation_degree_of_cover_kernel() {
    for f in small_corpus() {
        let inst = f.build().unwrap();
        let v = inst.module();
        let t = fi_homology(&v, 1);
        let (Some(g), Some(r)) = (t.degree(0).certain(), t.degree(1).certain()) else { continue };
        let Some(gv) = g.value() else { continue };
        let (cover, maps) = free_cover(&v, gv as usize).unwrap();
        let kernel = FiMap::new(&cover, &v, maps).unwrap().kernel().unwrap().module(&cover).unwrap();
        let kd = h0(&kernel).degree();
        let bound = if r.is_neg_inf() { g } else { g.max(r) };
        // the cover uses every generator up to deg H_0, so its kernel is
        // related in degree at most max(deg H_0, deg H_1)
        assert!(kd.degree <= bound, "{:?} > {bound:?}", kd.degree);
    }
}

#[test]
fn graded_pieces_of_generation_filtration_are_free() {
    for f in small_corpus().into_iter().filter(|f| f.mode == Mode::Submodule) {
        let v = f.build().unwrap().module();
        let t = fi_homology(&v, 1);
        let Some(d) = t.degree(1).certain() else { continue };
        let Some(top) = t.degree(0).certain().and_then(Degree::value) else { continue };
        let h = h0(&v);
        for m in 0..=top as usize {
            if !d.at_most(m as i64) {
                continue;
            }
            let upper = generation_lattices(&v, m);
            let lower = if m == 0 {
                (0..=v.truncation()).map(|n| Lattice::zero(v.rank(n))).collect()
            } else {
                generation_lattices(&v, m - 1)
            };
            let piece = v.section(&upper, &lower).unwrap();
            // M(H_0(V)_m) has rank C(n, m) · rank H_0(V)_m in degree n
            let g = h.invariants(m);
            for n in 0..=v.truncation() {
                let expected = binom(n, m) * g.free_rank;
                assert_eq!(piece.invariants(n).free_rank, expected, "m={m} n={n}");
                if g.torsion.is_empty() {
                    assert!(piece.invariants(n).torsion.is_empty());
                }
            }
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
    }
}
