use fihom::families::{corpus, sharpness, CorpusParams};
use fihom::fi::{FbModule, FreeModule, Preset, Representation, Ring, Submodule};
use fihom::functors::derivative_kernel_degrees;
use fihom::input::{Mode, ModuleFile};
use fihom::linalg::{int_vec, Lattice};
use fihom::saturation::{
    check_saturation, check_saturation_prime, generation_degrees, saturation_report, torsion_threshold,
};
use fihom::Error;

fn small_corpus() -> Vec<ModuleFile> {
    corpus(CorpusParams {
        size: 16,
        truncation: 6,
        ..CorpusParams::default()
    })
}

fn lat(rows: &[&[i64]]) -> Lattice {
    Lattice::span_rows(rows.iter().map(|r| int_vec(r)).collect(), rows[0].len())
}

#[test]
fn whole_module_is_saturated() {
    let inst = sharpness(1, 2, Ring::Z, 5).build().unwrap();
    let all = Submodule::whole(&inst.ambient);
    let r = saturation_report(&inst.free, &inst.ambient, &all).unwrap();
    assert!(r.cells.iter().all(|c| c.saturated() && c.facets_are_kernel()));
    assert_eq!(r.first_failure(), None);
}

#[test]
fn sharpness_cells_by_hand() {
    for ring in [Ring::Q, Ring::Z] {
        let inst = sharpness(1, 2, ring, 6).build().unwrap();
        // n = 3, a = 1: V_{[3]-{1}} = <e_2 + e_3> while V_3 ∩ M_{[3]-{1}} = <e_2, e_3> (Q)
        let c = check_saturation(&inst.free, &inst.ambient, &inst.sub, 3, 1).unwrap();
        assert_eq!(c.facet_sum, lat(&[&[0, 1, 1]]));
        let expected = match ring {
            Ring::Q => lat(&[&[0, 1, 0], &[0, 0, 1]]),
            // over Z the even-sum vectors: e_2 + e_3 and 2 e_3
            Ring::Z => lat(&[&[0, 1, 1], &[0, 0, 2]]),
        };
        assert_eq!(c.intersection, expected);
        assert!(!c.saturated());
        // n = 2: V_1 = 0 and V_2 meets the facet trivially
        let c = check_saturation(&inst.free, &inst.ambient, &inst.sub, 2, 1).unwrap();
        assert!(c.saturated() && c.facet_sum.is_zero());
    }
}

#[test]
fn sharpness_threshold() {
    for (k, d) in [(1, 2), (1, 3), (2, 3)] {
        let inst = sharpness(k, d, Ring::Q, 7).build().unwrap();
        let r = saturation_report(&inst.free, &inst.ambient, &inst.sub).unwrap();
        assert!(r.chain_holds());
        let bound = k.min(d) + d;
        assert!(r.stable_from() <= bound + 1, "(k, d) = ({k}, {d}): {}", r.stable_from());
        for c in r.cells.iter().filter(|c| c.n > bound) {
            assert!(c.saturated() && c.facets_are_kernel(), "n = {}, a = {}", c.n, c.a);
        }
    }
    let inst = sharpness(1, 2, Ring::Q, 7).build().unwrap();
    let r = saturation_report(&inst.free, &inst.ambient, &inst.sub).unwrap();
    // at n = 2, a = 2 the facets see only V_1 = 0 while V_2 ≠ 0
    assert_eq!(r.first_failure(), Some(2));
    assert!(!r.cell(2, 2).unwrap().saturated());
}

#[test]
fn large_a_gives_everything() {
    let inst = sharpness(1, 2, Ring::Q, 7).build().unwrap();
    for n in 5..=7 {
        for a in 3..=n {
            let c = check_saturation(&inst.free, &inst.ambient, &inst.sub, n, a).unwrap();
            assert_eq!(c.facet_sum, inst.sub.lattices[n]);
            assert_eq!(c.intersection, inst.sub.lattices[n]);
        }
    }
}

#[test]
fn argument_errors() {
    let inst = sharpness(1, 2, Ring::Q, 4).build().unwrap();
    assert!(matches!(check_saturation(&inst.free, &inst.ambient, &inst.sub, 2, 3), Err(Error::Invalid(_))));
    assert!(matches!(check_saturation(&inst.free, &inst.ambient, &inst.sub, 5, 1), Err(Error::Truncation { .. })));
    let v = inst.submodule();
    assert!(matches!(check_saturation_prime(&v, 3, 2, 1), Err(Error::Truncation { .. })));
    assert!(matches!(check_saturation_prime(&v, 2, 1, 0), Err(Error::Inapplicable(_))));
}

#[test]
fn prime_form_on_sharpness() {
    let inst = sharpness(1, 2, Ring::Q, 8).build().unwrap();
    let v = inst.submodule();
    let (k, d) = generation_degrees(&inst.free, &v).unwrap();
    assert_eq!((k, d), (1, 2));
    let cap = k.min(d);
    for n in cap + d + 1..=7 {
        for a in 1..=(8 - n).min(n) {
            let p = check_saturation_prime(&v, n, a, cap).unwrap();
            assert!(p.equal(), "n = {n}, a = {a}");
            let cell = check_saturation(&inst.free, &inst.ambient, &inst.sub, n, a).unwrap();
            let embed = inst.sub.lattices[n].basis();
            assert_eq!(p.jtilde_kernel.image(embed), cell.jtilde_kernel);
        }
    }
    // a = K + 1 already gives all of V_n
    for n in cap + d + 1..=8 - (cap + 1) {
        let p = check_saturation_prime(&v, n, cap + 1, cap).unwrap();
        assert!(p.facet_sum.is_full());
    }
}

#[test]
fn free_module_kernel_is_facet_sum() {
    for k in 1..=2 {
        let free = FreeModule::new(FbModule::concentrated(Representation::preset(Preset::Trivial, k)));
        let m = free.to_module(Ring::Z, 6);
        for n in 2 * k + 1..=6 {
            for a in 1..=(6 - n).min(n) {
                let p = check_saturation_prime(&m, n, a, k).unwrap();
                assert!(p.equal(), "k = {k}, n = {n}, a = {a}");
            }
        }
    }
}

#[test]
fn torsion_thresholds() {
    let inst = sharpness(1, 2, Ring::Q, 6).build().unwrap();
    assert_eq!(torsion_threshold(&inst.ambient).threshold, 0);
    let w = inst.quotient();
    assert!(!w.is_zero_at(2));
    let t = torsion_threshold(&w);
    assert_eq!(t.threshold, 3);
    assert!(!t.truncation_limited);
}

#[test]
fn corpus_properties() {
    for f in small_corpus() {
        let inst = f.build().unwrap();
        let v = inst.submodule();
        let Some((k, d)) = generation_degrees(&inst.free, &v) else { continue };
        let r = saturation_report(&inst.free, &inst.ambient, &inst.sub).unwrap();
        assert!(r.chain_holds());
        let bound = k.min(d) + d;
        assert!(r.cells.iter().filter(|c| c.n > bound).all(|c| c.saturated() && c.facets_are_kernel()));
        if f.mode == Mode::Quotient {
            assert!(torsion_threshold(&inst.quotient()).threshold <= bound);
        }
        let table = derivative_kernel_degrees(&inst.ambient, &inst.sub, inst.ambient.truncation()).unwrap();
        for c in &r.cells {
            let g = &table.groups[&format!("ker D^{}", c.a)][c.n - c.a];
            assert_eq!(c.saturated(), g.is_zero(), "n = {}, a = {}", c.n, c.a);
        }
    }
}
