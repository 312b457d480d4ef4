//! Ordering claims over all trees of a given order.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::canon::{canonical_form, MAX_CANON_ORDER};
use crate::enumerate::{free_trees, trees_with_max_degree};
use crate::error::{Error, Result};
use crate::families::{build_family, FamilySpec};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::spectra::spectral_radius;
use crate::weights::abc_matrix;

use super::report::{ClaimId, Gate, VerificationReport};
use super::COMPARE_TOL;

/// A graph with its ABC spectral radius.
#[derive(Debug, Clone)]
pub struct Ranked {
    pub graph: Graph,
    pub graph6: String,
    pub rho: f64,
}

fn radius(g: &Graph) -> Result<f64> {
    spectral_radius(&abc_matrix(g)?)
}

/// `graphs` by decreasing radius, ties by graph6.
pub fn rank_graphs(graphs: Vec<Graph>) -> Result<Vec<Ranked>> {
    let mut ranked = graphs
        .into_par_iter()
        .map(|graph| {
            let rho = radius(&graph)?;
            Ok(Ranked { graph6: to_graph6(&graph), graph, rho })
        })
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|a, b| b.rho.total_cmp(&a.rho).then_with(|| a.graph6.cmp(&b.graph6)));
    Ok(ranked)
}

/// All trees of order `n`, by decreasing radius (ties by graph6).
pub fn ranked_trees(n: usize) -> Result<Vec<Ranked>> {
    rank_graphs(free_trees(n)?.collect())
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_CANON_ORDER {
        return Err(Error::Capacity(format!(
            "ordering claims are checked up to n = {MAX_CANON_ORDER}, got n = {n}"
        )));
    }
    Ok(())
}

fn family(spec: FamilySpec) -> Result<Graph> {
    build_family(&spec)
}

fn claim_name(id: ClaimId, n: usize, gate: Gate) -> String {
    match gate {
        Gate::Strict => format!("{id}@n={n}"),
        Gate::Exploratory => format!("{id}@n={n}~explore"),
    }
}

/// Checks that the `expected` graphs are the top entries of the ranked
/// trees, in order, each strictly above the next entry.
fn check_top(
    mut report: VerificationReport,
    n: usize,
    expected: &[(&str, Graph)],
    applicable: bool,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let ranked = ranked_trees(n)?;
    let top = expected.len().min(ranked.len());
    let mut mismatched = Vec::new();
    for (i, (name, g)) in expected.iter().enumerate().take(top) {
        if canonical_form(&ranked[i].graph)? != canonical_form(g)? {
            mismatched.push((i, *name));
        }
    }
    let gaps: Vec<f64> = (0..top)
        .filter(|&i| i + 1 < ranked.len())
        .map(|i| ranked[i].rho - ranked[i + 1].rho)
        .collect();
    let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let observed: Vec<_> = ranked
        .iter()
        .take(top + 1)
        .map(|r| json!({"graph6": r.graph6, "rho": r.rho}))
        .collect();
    report.set_param("n", n);
    report.set_param("trees", ranked.len());
    report.set_param("expected", expected.iter().map(|(name, _)| *name).collect::<Vec<_>>());
    report.set_param("observed_top", observed);
    report.set_param("gaps", gaps.clone());
    if !applicable {
        report.inapplicable(min_gap, "order below the hypothesis range");
        report.witnesses = ranked.iter().take(top).map(|r| r.graph6.clone()).collect();
    } else if !mismatched.is_empty() {
        let witnesses = mismatched.iter().map(|&(i, _)| ranked[i].graph6.clone()).collect();
        report.violate(-1.0, witnesses);
        report.set_param(
            "mismatched_ranks",
            mismatched.iter().map(|(i, name)| json!({"rank": i + 1, "expected": name})).collect::<Vec<_>>(),
        );
    } else {
        report.judge(min_gap);
        let worst = gaps.iter().position(|&g| g == min_gap).unwrap_or(0);
        report.witnesses = vec![ranked[worst].graph6.clone(), ranked[worst + 1].graph6.clone()];
    }
    Ok(report.finish(started))
}

/// Star first and `S_{n-3,1}` second among trees of order `n >= 4`.
pub fn verify_lemma12(n: usize) -> Result<VerificationReport> {
    verify_lemma12_with(n, Gate::Strict)
}

pub fn verify_lemma12_with(n: usize, gate: Gate) -> Result<VerificationReport> {
    check_capacity(n)?;
    if n < 4 {
        return Err(Error::Parameter(format!("the top-two claim needs n >= 4, got n = {n}")));
    }
    let expected = [
        ("S_n", family(FamilySpec::Star(n))?),
        ("S_{n-3,1}", family(FamilySpec::DoubleStar { a: n - 3, b: 1 })?),
    ];
    let report = VerificationReport::new(claim_name(ClaimId::TreeTopTwo, n, gate), COMPARE_TOL);
    check_top(report, n, &expected, true)
}

/// Top five trees `S_n > S_{n-3,1} > T1 > T2 > T3 > rest`, claimed for
/// `n >= 10`.
pub fn verify_theorem31(n: usize) -> Result<VerificationReport> {
    verify_theorem31_with(n, Gate::Strict)
}

pub fn verify_theorem31_with(n: usize, gate: Gate) -> Result<VerificationReport> {
    check_capacity(n)?;
    if n < 6 {
        return Err(Error::Parameter(format!("the top-five trees are defined for n >= 6, got n = {n}")));
    }
    let t = |index| family(FamilySpec::TTree { index, n });
    let expected = [
        ("S_n", family(FamilySpec::Star(n))?),
        ("S_{n-3,1}", family(FamilySpec::DoubleStar { a: n - 3, b: 1 })?),
        ("T1", t(1)?),
        ("T2", t(2)?),
        ("T3", t(3)?),
    ];
    let report = VerificationReport::new(claim_name(ClaimId::TreeTopFive, n, gate), COMPARE_TOL);
    check_top(report, n, &expected, n >= 10 || gate == Gate::Exploratory)
}

/// Sign of `rho(T1) - rho(T2)`: negative for `n <= 8`, positive after.
pub fn verify_lemma34_crossover(range: std::ops::RangeInclusive<usize>) -> Result<VerificationReport> {
    let started = Instant::now();
    let (lo, hi) = (*range.start(), *range.end());
    if lo < 6 || hi > MAX_CANON_ORDER || lo > hi {
        return Err(Error::Capacity(format!(
            "the crossover is checked for orders within 6..={MAX_CANON_ORDER}, got {lo}..={hi}"
        )));
    }
    let mut report = VerificationReport::new(format!("{}@n={lo}..{hi}", ClaimId::T1T2Crossover), COMPARE_TOL);
    let rows = range
        .into_par_iter()
        .map(|n| {
            let t1 = family(FamilySpec::TTree { index: 1, n })?;
            let t2 = family(FamilySpec::TTree { index: 2, n })?;
            let diff = radius(&t1)? - radius(&t2)?;
            let sign = if n <= 8 { -1.0 } else { 1.0 };
            Ok((n, diff, sign * diff, to_graph6(&t1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = rows.iter().min_by(|a, b| a.2.total_cmp(&b.2)).expect("nonempty range");
    report.set_param(
        "differences",
        rows.iter().map(|r| json!({"n": r.0, "t1_minus_t2": r.1})).collect::<Vec<_>>(),
    );
    report.judge(worst.2);
    report.witnesses = vec![worst.3.clone()];
    report.set_param("worst_n", worst.0);
    Ok(report.finish(started))
}

#[derive(Debug, Clone, Serialize)]
struct SubClaim {
    name: &'static str,
    min_n: usize,
    margin: Option<f64>,
    witness: String,
}

/// The square-root gap claims at order `n`: trees with max degree at most
/// `n - 5` stay below `sqrt(n - 5)`, `T3` is above it, and the chains
/// `T10 < T9 < T4`, `T8 < T7 < T6` and `T5` stay below it.
pub fn verify_sqrt_gap_lemmas(n: usize) -> Result<VerificationReport> {
    verify_sqrt_gap_lemmas_with(n, Gate::Strict)
}

pub fn verify_sqrt_gap_lemmas_with(n: usize, gate: Gate) -> Result<VerificationReport> {
    let started = Instant::now();
    check_capacity(n)?;
    if n < 7 {
        return Err(Error::Parameter(format!(
            "the square-root gap claims need n >= 7 to build every tree, got n = {n}"
        )));
    }
    let root = ((n - 5) as f64).sqrt();
    let t: Vec<Graph> = (1..=10)
        .map(|index| family(FamilySpec::TTree { index, n }))
        .collect::<Result<_>>()?;
    let r: Vec<f64> = t.iter().map(radius).collect::<Result<_>>()?;
    let g6 = |i: usize| to_graph6(&t[i - 1]);
    let rho = |i: usize| r[i - 1];

    let mut subs: Vec<SubClaim> = Vec::new();
    let mut push = |name, min_n, margin: f64, witness: String| {
        subs.push(SubClaim { name, min_n, margin: Some(margin), witness });
    };
    if n >= 10 || gate == Gate::Exploratory {
        let capped: Vec<Graph> = (2..=n.saturating_sub(5))
            .map(|d| trees_with_max_degree(n, d).map(|s| s.collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let top = rank_graphs(capped)?;
        if let Some(best) = top.first() {
            push("capped_degree_below_root", 10, root - best.rho, best.graph6.clone());
        }
    }
    push("t3_above_root", 10, rho(3) - root, g6(3));
    push("t9_above_t10", 10, rho(9) - rho(10), g6(10));
    push("t4_above_t9", 10, rho(4) - rho(9), g6(9));
    push("t4_below_root", 10, root - rho(4), g6(4));
    push("t7_above_t8", 8, rho(7) - rho(8), g6(8));
    push("t6_above_t7", 8, rho(6) - rho(7), g6(7));
    push("t6_below_root", 8, root - rho(6), g6(6));
    push("t5_below_root", 7, root - rho(5), g6(5));
    for s in &mut subs {
        if n < s.min_n && gate == Gate::Strict {
            s.margin = None;
        }
    }

    let mut report = VerificationReport::new(claim_name(ClaimId::SqrtGap, n, gate), COMPARE_TOL);
    report.set_param("n", n);
    report.set_param("sqrt_n_minus_5", root);
    report.set_param("radii", (1..=10).map(|i| json!({"tree": format!("T{i}"), "rho": rho(i)})).collect::<Vec<_>>());
    report.set_param("subclaims", serde_json::to_value(&subs).expect("plain data"));
    let checked: Vec<&SubClaim> = subs.iter().filter(|s| s.margin.is_some()).collect();
    match checked.iter().min_by(|a, b| a.margin.unwrap().total_cmp(&b.margin.unwrap())) {
        None => report.inapplicable(0.0, "order below every hypothesis range"),
        Some(worst) => {
            report.judge(worst.margin.unwrap());
            report.witnesses = vec![worst.witness.clone()];
            report.set_param("worst_subclaim", worst.name);
        }
    }
    Ok(report.finish(started))
}

/// Extreme radii over the trees of order `n` with maximum degree `delta`.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalClass {
    pub n: usize,
    pub delta: usize,
    pub class_size: usize,
    pub max_rho: f64,
    pub min_rho: f64,
    /// graph6 of every tree within tolerance of the maximum.
    pub maximizers: Vec<String>,
    pub minimizers: Vec<String>,
    /// Radius of the double star `S_{delta-1, n-delta-1}`, which lies in
    /// the class.
    pub double_star_rho: f64,
    pub double_star_is_maximizer: bool,
}

pub fn extremal_in_class(n: usize, delta: usize) -> Result<ExtremalClass> {
    check_capacity(n)?;
    if n < 3 || delta < n.div_ceil(2) || delta >= n {
        return Err(Error::Parameter(format!(
            "extremal classes need n >= 3 and ceil(n/2) <= delta <= n - 1, got n = {n}, delta = {delta}"
        )));
    }
    let ranked = rank_graphs(trees_with_max_degree(n, delta)?.collect())?;
    let max_rho = ranked.first().expect("class is nonempty").rho;
    let min_rho = ranked.last().expect("class is nonempty").rho;
    let within = |target: f64| -> Vec<String> {
        let mut v: Vec<(String, String)> = ranked
            .iter()
            .filter(|r| (r.rho - target).abs() <= COMPARE_TOL)
            .map(|r| Ok((canonical_form(&r.graph)?.as_str().to_string(), r.graph6.clone())))
            .collect::<Result<_>>()
            .expect("order within canonical capacity");
        v.sort();
        v.into_iter().map(|(_, g)| g).collect()
    };
    let ds = if delta == n - 1 {
        family(FamilySpec::Star(n))?
    } else {
        family(FamilySpec::DoubleStar { a: delta - 1, b: n - delta - 1 })?
    };
    let double_star_rho = radius(&ds)?;
    Ok(ExtremalClass {
        n,
        delta,
        class_size: ranked.len(),
        max_rho,
        min_rho,
        maximizers: within(max_rho),
        minimizers: within(min_rho),
        double_star_rho,
        double_star_is_maximizer: (double_star_rho - max_rho).abs() <= COMPARE_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    #[test]
    fn top_two_small_orders() {
        let r = verify_lemma12(4).unwrap();
        assert!(r.holds(), "{}", r.summary());
        assert_eq!(r.params["trees"], 2);
        let r = verify_lemma12(10).unwrap();
        assert_eq!(r.status, Status::Confirmed, "{}", r.summary());
        assert_eq!(r.claim, "tree-top-two@n=10");
    }

    #[test]
    fn top_five_at_ten() {
        let r = verify_theorem31(10).unwrap();
        assert_eq!(r.status, Status::Confirmed, "{}", r.summary());
        assert_eq!(r.witnesses.len(), 2);
    }

    #[test]
    fn top_five_below_range_is_inapplicable() {
        let r = verify_theorem31(9).unwrap();
        assert_eq!(r.status, Status::Inapplicable);
        assert_eq!(r.witnesses.len(), 5);
        let explored = verify_theorem31_with(9, Gate::Exploratory).unwrap();
        assert!(explored.claim.ends_with("~explore"));
        assert_eq!(explored.status, Status::Confirmed);
        // at eight, T2 outranks T1
        let explored = verify_theorem31_with(8, Gate::Exploratory).unwrap();
        assert_eq!(explored.status, Status::Violated);
        assert!(!explored.witnesses.is_empty());
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(verify_theorem31(17), Err(Error::Capacity(_))));
        assert!(matches!(verify_lemma34_crossover(5..=9), Err(Error::Capacity(_))));
        assert!(matches!(extremal_in_class(12, 5), Err(Error::Parameter(_))));
    }

    #[test]
    fn crossover_small_range() {
        let r = verify_lemma34_crossover(6..=10).unwrap();
        assert_eq!(r.status, Status::Confirmed, "{}", r.summary());
    }

    #[test]
    fn sqrt_gap_at_ten() {
        let r = verify_sqrt_gap_lemmas(10).unwrap();
        assert_eq!(r.status, Status::Confirmed, "{}", r.summary());
        let r = verify_sqrt_gap_lemmas(8).unwrap();
        let subs = r.params["subclaims"].as_array().unwrap();
        assert!(subs.iter().any(|s| s["name"] == "t3_above_root" && s["margin"].is_null()));
        assert!(r.holds());
    }

    #[test]
    fn extremal_singleton_and_t1() {
        let e = extremal_in_class(12, 11).unwrap();
        assert_eq!(e.class_size, 1);
        assert_eq!(e.maximizers, e.minimizers);
        let e = extremal_in_class(10, 7).unwrap();
        let t1 = build_family(&FamilySpec::TTree { index: 1, n: 10 }).unwrap();
        assert_eq!(e.maximizers.len(), 1);
        let max = crate::graph6::from_graph6(&e.maximizers[0]).unwrap();
        assert_eq!(canonical_form(&max).unwrap(), canonical_form(&t1).unwrap());
    }
}
