//! One function per subcommand, each producing a report outcome.

use fihom::catalan::{enumerate_sigma, ideal_annihilation_check, verify_bigb, verify_indb, Check};
use fihom::colimit::minimal_degree;
use fihom::families::{corpus, CorpusParams};
use fihom::fi::{FbModule, FreeModule, Preset, Representation, Ring};
use fihom::functors::{derivative, derivative_kernel_degrees, h0, iterated_derivative, shift, torsion_kernel, DegreeTable};
use fihom::input::{Instance, Mode, ModuleFile};
use fihom::koszul::{fi_homology, regularity_check, HomologyTable};
use fihom::saturation::{generation_degrees, saturation_report, torsion_threshold};
use fihom::stable_range::{congruence_bounds, n_closed_form, propagate_claim, stable_threshold, DegreeSpectralInput};
use fihom::{Degree, TruncatedDegree};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{Outcome, Status, Table};
use crate::{Failure, Suite};

const CATALAN_MAX_B: usize = 12;

fn build(file: &ModuleFile) -> Result<Instance, Failure> {
    Ok(file.build()?)
}

fn limited(t: TruncatedDegree) -> &'static str {
    if t.truncation_limited {
        "yes"
    } else {
        "no"
    }
}

fn degree_table(name: &str, table: &DegreeTable) -> Vec<Table> {
    let mut groups = Table::new(&format!("{name}_groups"), &["functor", "n", "group"]);
    for (label, row) in &table.groups {
        for (n, g) in row.iter().enumerate() {
            groups.push(vec![label.clone(), n.to_string(), g.to_string()]);
        }
    }
    let mut degrees = Table::new(&format!("{name}_degrees"), &["functor", "degree", "truncation_limited"]);
    for (label, d) in &table.degrees {
        degrees.push(vec![label.clone(), d.degree.to_string(), limited(*d).into()]);
    }
    vec![groups, degrees]
}

/// Regularity against the module's own `k = deg H_0` and `d = deg H_1`.
fn regularity_of(table: &HomologyTable) -> Option<fihom::koszul::RegularityReport> {
    if table.p_max() < 1 {
        return None;
    }
    let k = table.degree(0).degree.value()?;
    let d = table.degree(1).degree.value().unwrap_or(0);
    Some(regularity_check(table, k as usize, d as usize))
}

pub fn homology(file: &ModuleFile, pmax: usize) -> Result<Outcome, Failure> {
    let w = build(file)?.module();
    let table = fi_homology(&w, pmax);
    let mut module = DegreeTable::default();
    module.insert_module("W", &w);
    let regularity = regularity_of(&table);

    let mut caveats = Vec::new();
    for (p, d) in table.degrees.iter().enumerate() {
        if d.truncation_limited {
            caveats.push(format!("H_{p} is nonzero at the truncation {}; its degree is a lower bound", table.truncation));
        }
    }
    let mut status = Status::Pass;
    if let Some(r) = &regularity {
        if r.violations() > 0 {
            status = Status::Violation;
        } else if !r.applicable || r.rows.iter().any(|row| row.inconclusive) {
            status = Status::Inconclusive;
        }
    }

    let mut groups = Table::new("homology", &["p", "n", "group"]);
    for (p, row) in table.groups.iter().enumerate() {
        for (n, g) in row.iter().enumerate() {
            groups.push(vec![p.to_string(), n.to_string(), g.to_string()]);
        }
    }
    let mut degrees = Table::new("homology_degrees", &["p", "degree", "truncation_limited", "bound"]);
    for (p, d) in table.degrees.iter().enumerate() {
        let bound = regularity
            .as_ref()
            .and_then(|r| r.rows.iter().find(|row| row.p == p))
            .map_or(String::new(), |row| row.bound.to_string());
        degrees.push(vec![p.to_string(), d.degree.to_string(), limited(*d).into(), bound]);
    }
    let mut tables = degree_table("module", &module);
    tables.push(groups);
    tables.push(degrees);
    Ok(Outcome {
        result: json!({ "module": module, "homology": table, "regularity": regularity }),
        tables,
        caveats,
        status,
    })
}

pub fn degrees(file: &ModuleFile) -> Result<Outcome, Failure> {
    let w = build(file)?.module();
    let mut table = DegreeTable::default();
    table.insert_module("W", &w);
    table.insert_module("S", &shift(&w));
    table.insert_module("D", &derivative(&w));
    table.insert_module("K", &torsion_kernel(&w));
    table.insert_module("H0", &h0(&w));
    for a in 2..=3.min(w.truncation()) {
        table.insert_module(format!("D^{a}"), &iterated_derivative(&w, a)?);
    }
    let torsion = torsion_threshold(&w);
    let mut caveats: Vec<String> = table
        .degrees
        .iter()
        .filter(|(_, d)| d.truncation_limited)
        .map(|(label, _)| format!("{label} is nonzero at its top degree; its degree is a lower bound"))
        .collect();
    caveats.push("S and D^a lose a degree of truncation per shift".into());
    if torsion.truncation_limited {
        caveats.push("the torsion threshold reaches the truncation".into());
    }
    let mut tables = degree_table("degrees", &table);
    let mut t = Table::new("torsion_threshold", &["threshold", "truncation_limited"]);
    t.push(vec![torsion.threshold.to_string(), if torsion.truncation_limited { "yes" } else { "no" }.into()]);
    tables.push(t);
    Ok(Outcome {
        result: json!({ "degrees": table, "torsion_threshold": torsion }),
        tables,
        caveats,
        status: Status::Pass,
    })
}

pub fn saturate(file: &ModuleFile, amax: usize) -> Result<Outcome, Failure> {
    let inst = build(file)?;
    let v = inst.submodule();
    let Some((k, d)) = generation_degrees(&inst.free, &v) else {
        return Ok(Outcome {
            result: json!({ "k": null, "d": null, "cells": [] }),
            tables: Vec::new(),
            caveats: vec!["V or M is zero; nothing to check".into()],
            status: Status::Pass,
        });
    };
    let report = saturation_report(&inst.free, &inst.ambient, &inst.sub)?;
    let threshold = k.min(d) + d;
    let cells: Vec<_> = report.cells.iter().filter(|c| c.a <= amax).map(|c| c.summary()).collect();
    let violations: Vec<(usize, usize)> = cells
        .iter()
        .filter(|c| !c.chain_holds || (c.n > threshold && !(c.saturated && c.facets_are_kernel)))
        .map(|c| (c.n, c.a))
        .collect();
    let kernels = derivative_kernel_degrees(&inst.ambient, &inst.sub, amax)?;
    let kernel_violations: Vec<String> = kernels
        .degrees
        .iter()
        .filter_map(|(label, deg)| {
            let a: i64 = label.trim_start_matches("ker D^").parse().ok()?;
            (!deg.degree.at_most(threshold as i64 - a)).then(|| label.clone())
        })
        .collect();

    let mut caveats = Vec::new();
    let above = inst.ambient.truncation() > threshold;
    if !above {
        caveats.push(format!("the truncation {} does not reach past min(k,d)+d = {threshold}", inst.ambient.truncation()));
    }
    let status = if !violations.is_empty() || !kernel_violations.is_empty() {
        Status::Violation
    } else if !above {
        Status::Inconclusive
    } else {
        Status::Pass
    };

    let mut grid = Table::new(
        "saturation",
        &["n", "a", "facet_sum_rank", "intersection_rank", "jtilde_kernel_rank", "chain", "saturated", "facets_are_kernel"],
    );
    for c in &cells {
        grid.push(vec![
            c.n.to_string(),
            c.a.to_string(),
            c.facet_sum_rank.to_string(),
            c.intersection_rank.to_string(),
            c.jtilde_kernel_rank.to_string(),
            c.chain_holds.to_string(),
            c.saturated.to_string(),
            c.facets_are_kernel.to_string(),
        ]);
    }
    let mut tables = vec![grid];
    tables.extend(degree_table("derivative_kernels", &kernels));
    Ok(Outcome {
        result: json!({
            "k": k,
            "d": d,
            "threshold": threshold,
            "stable_from": report.stable_from(),
            "first_failure": report.first_failure(),
            "cells": cells,
            "violations": violations,
            "derivative_kernels": kernels,
            "derivative_kernel_violations": kernel_violations,
        }),
        tables,
        caveats,
        status,
    })
}

pub fn colimit(file: &ModuleFile) -> Result<Outcome, Failure> {
    let w = build(file)?.module();
    let table = fi_homology(&w, 1);
    let min = minimal_degree(&w)?;
    let (h0d, h1d) = (table.degree(0), table.degree(1));
    let expected = h0d.degree.max(h1d.degree);
    let comparable = !(h0d.truncation_limited || h1d.truncation_limited || min.truncation_limited);
    let agrees = expected.value().unwrap_or(0) == min.n as i64;
    let mut caveats = Vec::new();
    if !comparable {
        caveats.push("a degree reaches the truncation; the comparison is open".into());
    }
    let status = match (comparable, agrees) {
        (true, true) => Status::Pass,
        (true, false) => Status::Violation,
        (false, _) => Status::Inconclusive,
    };
    let mut t = Table::new("colimit", &["minimal_degree", "deg_h0", "deg_h1", "expected", "witness_cap", "witness_size"]);
    t.push(vec![
        min.n.to_string(),
        h0d.to_string(),
        h1d.to_string(),
        expected.to_string(),
        min.witness.map_or(String::new(), |w| w.0.to_string()),
        min.witness.map_or(String::new(), |w| w.1.to_string()),
    ]);
    Ok(Outcome {
        result: json!({
            "minimal_degree": min,
            "deg_h0": h0d,
            "deg_h1": h1d,
            "expected": expected,
            "agrees": agrees,
        }),
        tables: vec![t],
        caveats,
        status,
    })
}

pub fn catalan(a: usize, b: usize) -> Result<Outcome, Failure> {
    if b > CATALAN_MAX_B {
        return Err(Failure::Input(format!("--b {b} exceeds the supported maximum {CATALAN_MAX_B}")));
    }
    let sets = enumerate_sigma(a, b)?;
    let labels: Vec<String> = sets.iter().map(|s| s.label()).collect();
    let mut t = Table::new("sigma", &["index", "set", "complement"]);
    for (i, s) in sets.iter().enumerate() {
        t.push(vec![(i + 1).to_string(), s.label(), fihom::catalan::subset_label(&s.complement())]);
    }
    Ok(Outcome {
        result: json!({
            "a": a,
            "b": b,
            "count": sets.len(),
            "sets": labels,
            "elements": sets.iter().map(|s| s.elements.clone()).collect::<Vec<_>>(),
        }),
        tables: vec![t],
        caveats: Vec::new(),
        status: Status::Pass,
    })
}

pub fn bounds(d: u32, kmax: usize, pmax: usize) -> Result<Outcome, Failure> {
    let table = congruence_bounds(d, kmax, pmax)?;
    let propagated = propagate_claim(&DegreeSpectralInput::standard(d, kmax), kmax, pmax)?;
    let mut mismatches = Vec::new();
    for k in 2..=kmax {
        let closed = stable_threshold(d, k)?;
        let (Some(c), Some(p)) = (table.row(k), propagated.row(k)) else { continue };
        if c.threshold != closed || c.h0 != p.h0 || c.h1 != p.h1 {
            mismatches.push(format!("row k = {k}"));
        }
    }
    for p in 2..=pmax {
        for m in 1..=kmax {
            let closed = n_closed_form(d, p, m)?;
            if propagated.n_bound(p, m) != Some(Degree::Finite(closed)) {
                mismatches.push(format!("N_{{{p},{m}}}"));
            }
        }
    }
    let mut rows = Table::new("bounds", &["k", "h0", "h1", "cap", "threshold", "propagated_h0", "propagated_h1"]);
    for r in &table.rows {
        let p = propagated.row(r.k);
        rows.push(vec![
            r.k.to_string(),
            r.h0.to_string(),
            r.h1.to_string(),
            r.cap.to_string(),
            r.threshold.to_string(),
            p.map_or(String::new(), |p| p.h0.to_string()),
            p.map_or(String::new(), |p| p.h1.to_string()),
        ]);
    }
    let mut n = Table::new("n_bounds", &["p", "m", "bound"]);
    for p in 2..=pmax {
        for m in 1..=kmax {
            n.push(vec![p.to_string(), m.to_string(), propagated.n_bound(p, m).map_or(String::new(), |b| b.to_string())]);
        }
    }
    let thresholds: Vec<i64> = (2..=kmax).filter_map(|k| table.row(k)).map(|r| r.threshold).collect();
    Ok(Outcome {
        result: json!({
            "d": d,
            "thresholds": thresholds,
            "closed_form": table,
            "propagated": propagated,
            "mismatches": mismatches,
        }),
        tables: vec![rows, n],
        caveats: Vec::new(),
        status: if mismatches.is_empty() { Status::Pass } else { Status::Violation },
    })
}

pub fn validate(file: &ModuleFile) -> Result<Outcome, Failure> {
    let inst = build(file)?;
    let w = inst.module();
    let violations = w.validate();
    let mut t = Table::new("ranks", &["n", "generators", "group"]);
    for n in 0..=w.truncation() {
        t.push(vec![n.to_string(), w.rank(n).to_string(), w.invariants(n).to_string()]);
    }
    let mut vt = Table::new("violations", &["degree", "relation"]);
    for v in &violations {
        vt.push(vec![v.degree.to_string(), v.relation.clone()]);
    }
    let canonical: Value = serde_json::from_str(&file.to_json()).expect("canonical description is JSON");
    Ok(Outcome {
        result: json!({
            "ranks": (0..=w.truncation()).map(|n| w.rank(n)).collect::<Vec<_>>(),
            "groups": (0..=w.truncation()).map(|n| w.invariants(n)).collect::<Vec<_>>(),
            "violations": violations,
            "canonical": canonical,
        }),
        tables: vec![t, vt],
        caveats: Vec::new(),
        status: if violations.is_empty() { Status::Pass } else { Status::Violation },
    })
}

/// Tally for one property suite.
struct SuiteResult {
    name: &'static str,
    checked: usize,
    violations: Vec<String>,
    inconclusive: usize,
}

impl SuiteResult {
    fn status(&self) -> Status {
        if !self.violations.is_empty() {
            Status::Violation
        } else if self.checked == 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "suite": self.name,
            "checked": self.checked,
            "violations": self.violations,
            "truncation_limited": self.inconclusive,
            "status": self.status(),
        })
    }
}

fn catalan_number(b: usize) -> usize {
    (0..b).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn suite_catalan() -> SuiteResult {
    let mut r = SuiteResult { name: "catalan", checked: 0, violations: Vec::new(), inconclusive: 0 };
    for b in 1..=9 {
        r.checked += 1;
        let got = enumerate_sigma(1, b).map(|s| s.len()).unwrap_or(0);
        if got != catalan_number(b) {
            r.violations.push(format!("|Σ(1,{b})| = {got}"));
        }
    }
    let mut cases: Vec<(&str, usize, usize, usize, usize)> = Vec::new();
    for d in 0..=2 {
        for b in 1..=2 {
            cases.push(("bigb", d, b + d, 0, b));
            for a in 1..=b {
                cases.push(("indb", d, 2 * b, a, b));
            }
        }
    }
    let outcomes: Vec<(String, Check)> = cases
        .par_iter()
        .map(|&(kind, d, n, a, b)| {
            let c = if kind == "bigb" { verify_bigb(d, n, b) } else { verify_indb(d, n, a, b) };
            (format!("{kind} d={d} n={n} a={a} b={b}"), c)
        })
        .collect();
    for (label, c) in outcomes {
        match c {
            Check::Holds => r.checked += 1,
            Check::Fails => r.violations.push(label),
            Check::Unchecked => r.inconclusive += 1,
        }
    }
    for k in 0..=2 {
        let m = FreeModule::new(FbModule::concentrated(Representation::preset(Preset::Regular, k))).to_module(Ring::Z, 6);
        for n in 0..=6 {
            r.checked += 1;
            if !matches!(ideal_annihilation_check(&m, k + 1, n), Ok(true)) {
                r.violations.push(format!("I_{} on M({k}) in degree {n}", k + 1));
            }
        }
    }
    r
}

struct Member {
    file: ModuleFile,
    inst: Instance,
    table: HomologyTable,
}

fn members(size: usize, seed: u64, ring: Option<Ring>, trunc: Option<usize>) -> Result<Vec<Member>, Failure> {
    let params = CorpusParams {
        seed,
        size,
        truncation: trunc.unwrap_or(CorpusParams::default().truncation),
        ..CorpusParams::default()
    };
    corpus(params)
        .into_par_iter()
        .map(|mut file| {
            if let Some(r) = ring {
                file.ring = r;
            }
            let inst = file.build()?;
            let table = fi_homology(&inst.module(), 3);
            Ok(Member { file, inst, table })
        })
        .collect()
}

fn suite_regularity(corpus: &[Member]) -> SuiteResult {
    let mut r = SuiteResult { name: "regularity", checked: 0, violations: Vec::new(), inconclusive: 0 };
    for (i, m) in corpus.iter().enumerate() {
        let Some(rep) = regularity_of(&m.table) else { continue };
        r.checked += 1;
        for row in &rep.rows {
            if row.violated {
                r.violations.push(format!("member {i}: deg H_{} = {} > {}", row.p, row.degree, row.bound));
            }
            if row.inconclusive {
                r.inconclusive += 1;
            }
        }
    }
    r
}

fn suite_saturation(corpus: &[Member]) -> Result<SuiteResult, Failure> {
    let mut r = SuiteResult { name: "saturation", checked: 0, violations: Vec::new(), inconclusive: 0 };
    let reports: Vec<Option<_>> = corpus
        .par_iter()
        .map(|m| {
            if m.file.mode != Mode::Submodule {
                return Ok(None);
            }
            let Some(kd) = generation_degrees(&m.inst.free, &m.inst.submodule()) else { return Ok(None) };
            Ok(Some((kd, saturation_report(&m.inst.free, &m.inst.ambient, &m.inst.sub)?)))
        })
        .collect::<Result<_, fihom::Error>>()?;
    for (i, rep) in reports.iter().enumerate() {
        let Some(((k, d), rep)) = rep else { continue };
        let threshold = k.min(d) + d;
        for c in &rep.cells {
            r.checked += 1;
            if !c.chain_holds() || (c.n > threshold && !(c.saturated() && c.facets_are_kernel())) {
                r.violations.push(format!("member {i}: n={} a={}", c.n, c.a));
            }
        }
    }
    Ok(r)
}

fn suite_colimit(corpus: &[Member]) -> Result<SuiteResult, Failure> {
    let mut r = SuiteResult { name: "colimit", checked: 0, violations: Vec::new(), inconclusive: 0 };
    let mins = corpus
        .par_iter()
        .map(|m| minimal_degree(&m.inst.module()))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, (m, min)) in corpus.iter().zip(mins).enumerate() {
        let (h0d, h1d) = (m.table.degree(0), m.table.degree(1));
        if h0d.truncation_limited || h1d.truncation_limited || min.truncation_limited {
            r.inconclusive += 1;
            continue;
        }
        r.checked += 1;
        let expected = h0d.degree.max(h1d.degree).value().unwrap_or(0);
        if expected != min.n as i64 {
            r.violations.push(format!("member {i}: colimit degree {} vs {expected}", min.n));
        }
    }
    Ok(r)
}

fn suite_stable_range() -> Result<SuiteResult, Failure> {
    let mut r = SuiteResult { name: "stable-range", checked: 0, violations: Vec::new(), inconclusive: 0 };
    for d in 0..=5u32 {
        let got = propagate_claim(&DegreeSpectralInput::standard(d, 10), 10, 5)?;
        let base = 2 * i64::from(d) + 9;
        for k in 2..=10usize {
            r.checked += 1;
            let x = (1i64 << (k - 2)) * base;
            let row = got.row(k).expect("row within range");
            if row.h0 != Degree::Finite(x - 2) || row.h1 != Degree::Finite(x - 1) || row.threshold != stable_threshold(d, k)? {
                r.violations.push(format!("d={d} k={k}"));
            }
        }
        for p in 2..=5 {
            for m in 1..=10 {
                r.checked += 1;
                if got.n_bound(p, m) != Some(Degree::Finite(n_closed_form(d, p, m)?)) {
                    r.violations.push(format!("d={d} N_{{{p},{m}}}"));
                }
            }
        }
    }
    Ok(r)
}

pub fn verify_props(suite: Suite, size: usize, seed: u64, ring: Option<Ring>, trunc: Option<usize>) -> Result<Outcome, Failure> {
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let needs_corpus = wants(Suite::Regularity) || wants(Suite::Saturation) || wants(Suite::Colimit);
    let corpus = if needs_corpus { members(size, seed, ring, trunc)? } else { Vec::new() };
    let mut results = Vec::new();
    if wants(Suite::Catalan) {
        results.push(suite_catalan());
    }
    if wants(Suite::Regularity) {
        results.push(suite_regularity(&corpus));
    }
    if wants(Suite::Saturation) {
        results.push(suite_saturation(&corpus)?);
    }
    if wants(Suite::Colimit) {
        results.push(suite_colimit(&corpus)?);
    }
    if wants(Suite::StableRange) {
        results.push(suite_stable_range()?);
    }
    let status = results.iter().fold(Status::Pass, |s, r| s.and(r.status()));
    let mut t = Table::new("suites", &["suite", "checked", "violations", "truncation_limited"]);
    for r in &results {
        t.push(vec![r.name.into(), r.checked.to_string(), r.violations.len().to_string(), r.inconclusive.to_string()]);
    }
    let caveats = results
        .iter()
        .filter(|r| r.inconclusive > 0)
        .map(|r| format!("{}: {} checks skipped or limited by the truncation", r.name, r.inconclusive))
        .collect();
    Ok(Outcome {
        result: json!({
            "corpus": if needs_corpus { json!({ "size": size, "seed": seed }) } else { Value::Null },
            "suites": results.iter().map(SuiteResult::to_json).collect::<Vec<_>>(),
        }),
        tables: vec![t],
        caveats,
        status,
    })
}
