use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;

use abc_spectra::enumerate::{connected_graphs, free_trees, trees_with_max_degree, MAX_GRAPH_ORDER};
use abc_spectra::graph6::{from_graph6, parse_lines, to_graph6};
use abc_spectra::perturbations::PathShift;
use abc_spectra::spectra::{eigen_spectrum, perron_result, LambdaSamples};
use abc_spectra::verify::{
    bound_row, conjecture41_search_with, extremal_in_class, join_identity_sweep, path_shift_sweep,
    pendant_profile_sweep, rank_graphs, star_radius_check, star_shift_sweep, union_identity_sweep,
    verify_closed_forms, verify_lemma12_with, verify_lemma34_crossover, verify_sqrt_gap_lemmas_with,
    verify_theorem31_with, BoundRow, ClaimId, Gate, Status, VerificationReport, COMPARE_TOL,
};
use abc_spectra::{abc_index, abc_matrix, build_family, r_minus_one, FamilySpec, Graph};
use serde::Serialize;

use crate::output::{to_json, write_csv, Format};
use crate::{BoundsInput, Cli, Command};

type Outcome = Result<(String, bool), String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Spectrum(input) => spectrum(cli, &load(input.graph6.as_deref(), input.file.as_deref(), input.family.as_deref())?),
        Command::Order { n, max_degree, top } => order(cli, *n, *max_degree, *top),
        Command::Verify { claim, n, explore, pairs } => verify(cli, claim, n.clone(), *explore, *pairs),
        Command::Conjecture { max_n } => conjecture(cli, *max_n),
        Command::Extremal { n, max_degree } => extremal(cli, *n, *max_degree),
        Command::Bounds(input) => bounds(cli, input),
    }
}

fn load(graph6: Option<&str>, file: Option<&Path>, family: Option<&str>) -> Result<Vec<Graph>, String> {
    if let Some(text) = graph6 {
        return Ok(vec![from_graph6(text).map_err(err)?]);
    }
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let graphs = parse_lines(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if graphs.is_empty() {
            return Err(format!("{} contains no graphs", path.display()));
        }
        return Ok(graphs);
    }
    let spec: FamilySpec = family.expect("clap requires one input").parse().map_err(err)?;
    Ok(vec![build_family(&spec).map_err(err)?])
}

#[derive(Serialize)]
struct SpectrumReport {
    graph6: String,
    n: usize,
    m: usize,
    max_degree: usize,
    rho: f64,
    abc_index: f64,
    r_minus_one: f64,
    residual: f64,
    sweeps: usize,
    degenerate: bool,
    perron_vector: Vec<f64>,
    eigenvalues: Vec<f64>,
}

#[derive(Serialize)]
struct SpectrumRow<'a> {
    graph6: &'a str,
    n: usize,
    m: usize,
    max_degree: usize,
    rho: f64,
    abc_index: f64,
    r_minus_one: f64,
    residual: f64,
    degenerate: bool,
}

fn spectrum(cli: &Cli, graphs: &[Graph]) -> Outcome {
    let reports = graphs
        .iter()
        .map(|g| {
            let m = abc_matrix(g).map_err(err)?;
            let p = perron_result(&m).map_err(err)?;
            Ok(SpectrumReport {
                graph6: to_graph6(g),
                n: g.order(),
                m: g.size(),
                max_degree: g.max_degree(),
                rho: p.radius,
                abc_index: abc_index(g).map_err(err)?,
                r_minus_one: r_minus_one(g).map_err(err)?,
                residual: p.residual,
                sweeps: p.sweeps,
                degenerate: p.degenerate,
                perron_vector: p.vector,
                eigenvalues: eigen_spectrum(&m).map_err(err)?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    let text = match cli.format {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(&reports),
        Format::Csv => {
            let rows: Vec<_> = reports
                .iter()
                .map(|r| SpectrumRow {
                    graph6: &r.graph6,
                    n: r.n,
                    m: r.m,
                    max_degree: r.max_degree,
                    rho: r.rho,
                    abc_index: r.abc_index,
                    r_minus_one: r.r_minus_one,
                    residual: r.residual,
                    degenerate: r.degenerate,
                })
                .collect();
            csv_string(&rows)?
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(s, "{}  n={} m={} max_degree={}", r.graph6, r.n, r.m, r.max_degree);
                let _ = writeln!(s, "  rho          {}", r.rho);
                let _ = writeln!(s, "  abc index    {}", r.abc_index);
                let _ = writeln!(s, "  R_-1         {}", r.r_minus_one);
                let _ = writeln!(s, "  perron       {}", join(&r.perron_vector));
                let _ = writeln!(s, "  spectrum     {}", join(&r.eigenvalues));
                if r.degenerate {
                    let _ = writeln!(s, "  (matrix is reducible; Perron vector not unique)");
                }
            }
            s
        }
    };
    Ok((text, false))
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(" ")
}

fn csv_string<T: Serialize>(rows: &[T]) -> Result<String, String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).map_err(err)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct OrderRow {
    rank: usize,
    graph6: String,
    n: usize,
    max_degree: usize,
    rho: f64,
}

fn order(cli: &Cli, n: usize, max_degree: Option<usize>, top: Option<usize>) -> Outcome {
    let trees: Vec<Graph> = match max_degree {
        Some(d) => trees_with_max_degree(n, d).map_err(err)?.collect(),
        None => free_trees(n).map_err(err)?.collect(),
    };
    let ranked = rank_graphs(trees).map_err(err)?;
    let rows: Vec<OrderRow> = ranked
        .into_iter()
        .take(top.unwrap_or(usize::MAX))
        .enumerate()
        .map(|(i, r)| OrderRow { rank: i + 1, n: r.graph.order(), max_degree: r.graph.max_degree(), graph6: r.graph6, rho: r.rho })
        .collect();
    let text = match cli.format {
        Format::Json => to_json(&rows),
        Format::Csv => csv_string(&rows)?,
        Format::Text => rows
            .iter()
            .map(|r| format!("{:>6}  {:<12} {:>2}  {:.12}\n", r.rank, r.graph6, r.max_degree, r.rho))
            .collect(),
    };
    Ok((text, false))
}

const CLAIM_ALIASES: &[(&str, &[&str])] = &[
    ("lemma-1.1", &["bound-sandwich"]),
    ("lemma-1.2", &["tree-top-two"]),
    ("lemma-2.1", &["union-identity"]),
    ("lemma-2.2", &["join-identity"]),
    ("theorem-2.3", &["star-shift"]),
    ("theorem-2.4", &["path-shift-balanced", "path-shift-hook", "path-shift-pendant"]),
    ("path-shift", &["path-shift-balanced", "path-shift-hook", "path-shift-pendant"]),
    ("lemma-2.5", &["pendant-path-profile"]),
    ("theorem-3.1", &["tree-top-five"]),
    ("lemma-3.2", &["sqrt-gap"]),
    ("lemma-3.4", &["t1-t2-crossover"]),
    ("lemma-3.5", &["sqrt-gap"]),
    ("lemma-3.6", &["sqrt-gap"]),
    ("lemma-3.7", &["sqrt-gap"]),
    ("conjecture-4.1", &["small-radius-conjecture"]),
];

fn resolve_claim(name: &str) -> Result<Vec<ClaimId>, String> {
    if let Some(id) = ClaimId::parse(name) {
        return Ok(vec![id]);
    }
    if let Some((_, ids)) = CLAIM_ALIASES.iter().find(|(alias, _)| *alias == name) {
        return Ok(ids.iter().map(|s| ClaimId::parse(s).expect("alias targets exist")).collect());
    }
    Err(format!("unknown claim '{name}'; known claims: {}", claim_list()))
}

fn claim_list() -> String {
    ClaimId::ALL.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(", ")
}

fn per_n(
    range: RangeInclusive<usize>,
    f: impl Fn(usize) -> abc_spectra::Result<VerificationReport>,
) -> Result<Vec<VerificationReport>, String> {
    range.map(|n| f(n).map_err(err)).collect()
}

fn verify(cli: &Cli, claim: &str, n: Option<RangeInclusive<usize>>, explore: bool, pairs: usize) -> Outcome {
    if claim == "list" {
        return Ok((ClaimId::ALL.iter().map(|c| format!("{c}\n")).collect(), false));
    }
    let gate = if explore { Gate::Exploratory } else { Gate::Strict };
    let mut reports = Vec::new();
    for id in resolve_claim(claim)? {
        let range = |default: RangeInclusive<usize>| n.clone().unwrap_or(default);
        let no_range = || match &n {
            Some(_) => Err(format!("claim {id} has a fixed parameter grid and takes no --n")),
            None => Ok(()),
        };
        match id {
            ClaimId::StarRadius => reports.push(star_radius_check(range(3..=16), 1e-10).map_err(err)?),
            ClaimId::TreeTopTwo => reports.extend(per_n(range(10..=10), |n| verify_lemma12_with(n, gate))?),
            ClaimId::TreeTopFive => reports.extend(per_n(range(10..=10), |n| verify_theorem31_with(n, gate))?),
            ClaimId::SqrtGap => reports.extend(per_n(range(10..=10), |n| verify_sqrt_gap_lemmas_with(n, gate))?),
            ClaimId::T1T2Crossover => reports.push(verify_lemma34_crossover(range(6..=16)).map_err(err)?),
            ClaimId::ClosedFormCharpolys => {
                let grid = LambdaSamples((0..25).map(|i| -4.0 + i as f64 / 3.0).collect());
                reports.push(verify_closed_forms(range(10..=14), &grid).map_err(err)?);
            }
            ClaimId::StarShift => {
                no_range()?;
                reports.push(star_shift_sweep().map_err(err)?);
            }
            ClaimId::PathShiftBalanced | ClaimId::PathShiftHook | ClaimId::PathShiftPendant => {
                no_range()?;
                let variant = match id {
                    ClaimId::PathShiftBalanced => PathShift::Balanced,
                    ClaimId::PathShiftHook => PathShift::Hook,
                    _ => PathShift::Pendant,
                };
                reports.push(path_shift_sweep(variant).map_err(err)?);
            }
            ClaimId::PendantPathProfile => reports.push(pendant_profile_sweep(*range(12..=12).end()).map_err(err)?),
            ClaimId::UnionIdentity => {
                reports.push(union_identity_sweep(pairs, *range(12..=12).end(), cli.seed).map_err(err)?)
            }
            ClaimId::JoinIdentity => {
                reports.push(join_identity_sweep(pairs, *range(12..=12).end(), cli.seed).map_err(err)?)
            }
            ClaimId::BoundSandwich => {
                let r = range(2..=14);
                let mut graphs = collect_trees(r.clone())?;
                let lo = (*r.start()).max(2);
                let hi = (*r.end()).min(MAX_GRAPH_ORDER);
                if lo <= hi {
                    graphs.extend(collect_connected(lo..=hi)?.into_iter().filter(|g| !g.is_tree()));
                }
                let label = format!("n={}..{}", r.start(), r.end());
                reports.push(abc_spectra::verify::bound_sandwich(&label, &graphs).map_err(err)?);
            }
            ClaimId::SmallRadiusConjecture => {
                let tol = cli.tolerance.unwrap_or(COMPARE_TOL);
                reports.push(conjecture41_search_with(*range(8..=8).end(), tol).map_err(err)?.report);
            }
        }
    }
    if let Some(tol) = cli.tolerance {
        reports = reports.into_iter().map(|r| r.with_tolerance(tol)).collect();
    }
    let violated = reports.iter().any(|r| r.status == Status::Violated);
    Ok((render_reports(cli.format, &reports)?, violated))
}

fn collect_trees(range: RangeInclusive<usize>) -> Result<Vec<Graph>, String> {
    let mut out = Vec::new();
    for n in range {
        if n >= 2 {
            out.extend(free_trees(n).map_err(err)?);
        }
    }
    Ok(out)
}

fn collect_connected(range: RangeInclusive<usize>) -> Result<Vec<Graph>, String> {
    let mut out = Vec::new();
    for n in range {
        if n >= 2 {
            out.extend(connected_graphs(n).map_err(err)?);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct ReportRow<'a> {
    claim: &'a str,
    status: Status,
    margin: f64,
    tolerance: f64,
    witnesses: String,
}

fn render_reports(format: Format, reports: &[VerificationReport]) -> Result<String, String> {
    Ok(match format {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let rows: Vec<_> = reports
                .iter()
                .map(|r| ReportRow {
                    claim: &r.claim,
                    status: r.status,
                    margin: r.margin,
                    tolerance: r.tolerance,
                    witnesses: r.witnesses.join(" "),
                })
                .collect();
            csv_string(&rows)?
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(s, "{}  ({:.2}s)", r.summary(), r.runtime.as_secs_f64());
                if !r.witnesses.is_empty() {
                    let _ = writeln!(s, "  witnesses: {}", r.witnesses.join(" "));
                }
            }
            s
        }
    })
}

fn conjecture(cli: &Cli, max_n: usize) -> Outcome {
    let tol = cli.tolerance.unwrap_or(COMPARE_TOL);
    let out = conjecture41_search_with(max_n, tol).map_err(err)?;
    let violated = out.report.status == Status::Violated;
    let text = match cli.format {
        Format::Json => to_json(&out),
        Format::Csv => csv_string(&out.survivors)?,
        Format::Text => out.survivors.iter().map(|s| format!("{}\n", s.graph6)).collect(),
    };
    Ok((text, violated))
}

fn extremal(cli: &Cli, n: usize, max_degree: usize) -> Outcome {
    let e = extremal_in_class(n, max_degree).map_err(err)?;
    let text = match cli.format {
        Format::Json => to_json(&e),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                kind: &'a str,
                graph6: &'a str,
                rho: f64,
            }
            let rows: Vec<_> = e
                .maximizers
                .iter()
                .map(|g| Row { kind: "max", graph6: g, rho: e.max_rho })
                .chain(e.minimizers.iter().map(|g| Row { kind: "min", graph6: g, rho: e.min_rho }))
                .collect();
            csv_string(&rows)?
        }
        Format::Text => format!(
            "n={} max_degree={} class size {}\nmax rho {}  {}\nmin rho {}  {}\ndouble star rho {} ({})\n",
            e.n,
            e.delta,
            e.class_size,
            e.max_rho,
            e.maximizers.join(" "),
            e.min_rho,
            e.minimizers.join(" "),
            e.double_star_rho,
            if e.double_star_is_maximizer { "a maximizer" } else { "not a maximizer" }
        ),
    };
    Ok((text, false))
}

fn bounds(cli: &Cli, input: &BoundsInput) -> Outcome {
    let graphs = if let Some(r) = &input.trees {
        collect_trees(r.clone())?
    } else if let Some(r) = &input.connected {
        collect_connected(r.clone())?
    } else {
        load(input.graph6.as_deref(), input.file.as_deref(), input.family.as_deref())?
    };
    let rows = graphs.iter().map(|g| bound_row(g).map_err(err)).collect::<Result<Vec<BoundRow>, String>>()?;
    let text = match cli.format {
        Format::Json => to_json(&rows),
        Format::Csv => csv_string(&rows)?,
        Format::Text => rows
            .iter()
            .map(|r| {
                format!(
                    "{}  rho={:.10}  lin<={:.6}  estrada=[{:.6}, {:.6}]  chen>={:.6}\n",
                    r.graph6, r.rho, r.lin_upper, r.estrada_lower, r.estrada_upper, r.chen_lower
                )
            })
            .collect(),
    };
    Ok((text, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_resolve() {
        assert_eq!(resolve_claim("theorem-3.1").unwrap(), vec![ClaimId::TreeTopFive]);
        assert_eq!(resolve_claim("theorem-2.4").unwrap().len(), 3);
        assert!(resolve_claim("lemma-9.9").unwrap_err().contains("tree-top-five"));
    }
}
