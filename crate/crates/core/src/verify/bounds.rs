//! Classical bounds on the ABC spectral radius.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::spectra::spectral_radius;
use crate::weights::{abc_index, abc_matrix, r_minus_one};

use super::report::VerificationReport;
use super::COMPARE_TOL;

fn check_connected(g: &Graph) -> Result<()> {
    if g.order() < 2 || !g.is_connected() {
        return Err(Error::Contract(format!(
            "bounds need a connected graph with n >= 2 (got n = {}, connected = {})",
            g.order(),
            g.is_connected()
        )));
    }
    Ok(())
}

fn rho(g: &Graph) -> Result<f64> {
    spectral_radius(&abc_matrix(g)?)
}

/// `sqrt(Delta + (2m - n + 1) / Delta - 2)` and `bound - rho`.
pub fn bound_upper_lin(g: &Graph) -> Result<(f64, f64)> {
    check_connected(g)?;
    let bound = lin_upper(g);
    Ok((bound, bound - rho(g)?))
}

fn lin_upper(g: &Graph) -> f64 {
    let delta = g.max_degree() as f64;
    let radicand = delta + (2.0 * g.size() as f64 - g.order() as f64 + 1.0) / delta - 2.0;
    radicand.max(0.0).sqrt()
}

/// `sqrt(2 (n - R_{-1}) / n)` and `rho - bound`.
pub fn bound_lower_chen(g: &Graph) -> Result<(f64, f64)> {
    check_connected(g)?;
    let bound = chen_lower(g)?;
    Ok((bound, rho(g)? - bound))
}

fn chen_lower(g: &Graph) -> Result<f64> {
    let n = g.order() as f64;
    Ok((2.0 * (n - r_minus_one(g)?) / n).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstradaBounds {
    /// `(2 / n) ABC(G)`.
    pub lower: f64,
    /// Largest row sum of `M(G)`.
    pub upper: f64,
    /// `rho - lower`.
    pub lower_slack: f64,
    /// `upper - rho`.
    pub upper_slack: f64,
}

pub fn bounds_estrada(g: &Graph) -> Result<EstradaBounds> {
    check_connected(g)?;
    let m = abc_matrix(g)?;
    let rho = spectral_radius(&m)?;
    let lower = 2.0 / g.order() as f64 * abc_index(g)?;
    let upper = m.row_sums().into_iter().fold(0.0, f64::max);
    Ok(EstradaBounds {
        lower,
        upper,
        lower_slack: rho - lower,
        upper_slack: upper - rho,
    })
}

/// Per-graph invariants and bounds, one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub rho: f64,
    pub abc: f64,
    pub r_minus_one: f64,
    pub lin_upper: f64,
    pub chen_lower: f64,
    pub estrada_lower: f64,
    pub estrada_upper: f64,
}

pub fn bound_row(g: &Graph) -> Result<BoundRow> {
    check_connected(g)?;
    let m = abc_matrix(g)?;
    Ok(BoundRow {
        graph6: to_graph6(g),
        n: g.order(),
        m: g.size(),
        delta: g.max_degree(),
        rho: spectral_radius(&m)?,
        abc: abc_index(g)?,
        r_minus_one: r_minus_one(g)?,
        lin_upper: lin_upper(g),
        chen_lower: chen_lower(g)?,
        estrada_lower: 2.0 / g.order() as f64 * abc_index(g)?,
        estrada_upper: m.row_sums().into_iter().fold(0.0, f64::max),
    })
}

/// Checks every lower bound against `rho + tol` and `rho` against every
/// upper bound plus `tol`, over `graphs`.
pub fn bound_sandwich<'a>(
    label: &str,
    graphs: impl IntoIterator<Item = &'a Graph>,
) -> Result<VerificationReport> {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new(format!("bound-sandwich@{label}"), 0.0);
    let mut worst = f64::INFINITY;
    let mut per_bound = [
        ("lin_upper", f64::INFINITY, 0usize),
        ("estrada_upper", f64::INFINITY, 0),
        ("estrada_lower", f64::INFINITY, 0),
        ("chen_lower", f64::INFINITY, 0),
    ];
    let mut count = 0;
    for g in graphs {
        let row = bound_row(g)?;
        count += 1;
        let slacks = [
            row.lin_upper - row.rho,
            row.estrada_upper - row.rho,
            row.rho - row.estrada_lower,
            row.rho - row.chen_lower,
        ];
        let mut violated = false;
        for (entry, slack) in per_bound.iter_mut().zip(slacks) {
            entry.1 = entry.1.min(slack);
            if slack <= -COMPARE_TOL {
                entry.2 += 1;
                violated = true;
            }
        }
        worst = slacks.into_iter().fold(worst, f64::min);
        if violated && report.witnesses.len() < 32 {
            report.witnesses.push(row.graph6);
        }
    }
    for (name, slack, violations) in per_bound {
        report.set_param(&format!("{name}_min_slack"), slack.clamp(f64::MIN, f64::MAX));
        report.set_param(&format!("{name}_violations"), violations);
    }
    report.set_param("graphs", count);
    // bounds may be tight (cycles), so slacks down to -tol are accepted and
    // folded into the margin
    report.set_param("slack_tolerance", COMPARE_TOL);
    report.judge(worst + COMPARE_TOL);
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, FamilySpec};

    fn fam(spec: FamilySpec) -> Graph {
        build_family(&spec).unwrap()
    }

    #[test]
    fn lin_bound_is_tight_on_stars() {
        for n in 3..12usize {
            let (bound, slack) = bound_upper_lin(&fam(FamilySpec::Star(n))).unwrap();
            assert!((bound - ((n - 2) as f64).sqrt()).abs() < 1e-12);
            assert!(slack.abs() < 1e-10);
        }
    }

    #[test]
    fn cycle_bounds() {
        let c6 = fam(FamilySpec::Cycle(6));
        let (bound, slack) = bound_upper_lin(&c6).unwrap();
        assert!((bound - 3.5f64.sqrt()).abs() < 1e-12);
        assert!((slack - (3.5f64.sqrt() - 2f64.sqrt())).abs() < 1e-10);
        for n in 3..10 {
            let c = fam(FamilySpec::Cycle(n));
            let (chen, _) = bound_lower_chen(&c).unwrap();
            assert!((chen - 1.5f64.sqrt()).abs() < 1e-12);
            let e = bounds_estrada(&c).unwrap();
            assert!((e.lower - 2f64.sqrt()).abs() < 1e-12);
            assert!((e.upper - 2f64.sqrt()).abs() < 1e-12);
            assert!(e.lower_slack.abs() < 1e-10 && e.upper_slack.abs() < 1e-10);
        }
    }

    #[test]
    fn single_edge_bounds() {
        let p2 = fam(FamilySpec::Path(2));
        let (lin, _) = bound_upper_lin(&p2).unwrap();
        let e = bounds_estrada(&p2).unwrap();
        assert_eq!((lin, e.lower, e.upper), (0.0, 0.0, 0.0));
        // the Randic-based lower bound is 1 here while rho = 0
        let (chen, slack) = bound_lower_chen(&p2).unwrap();
        assert_eq!(chen, 1.0);
        assert_eq!(slack, -1.0);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(bound_upper_lin(&g), Err(Error::Contract(_))));
        assert!(bound_lower_chen(&g).is_err());
        assert!(bounds_estrada(&g).is_err());
    }
}
