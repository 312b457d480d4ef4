//! Pendant path and pendant star grafting, and the comparisons between
//! neighboring grafts.
//!
//! Vertex labels: for `attach_paths(base, v0, k, l)` with `n = base.order()`,
//! the path `v_1 .. v_k` occupies `n .. n+k` and `v_{-1} .. v_{-l}` occupies
//! `n+k .. n+k+l`, each listed outward from `v0`. For
//! `attach_stars(base, w, k, l)` the first star center `u` is `n`, its
//! leaves `n+1 ..= n+k`, then the second center `v = n+k+1` and its leaves.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectra::{perron_result, spectral_radius};
use crate::weights::abc_matrix;

/// `|rho - sqrt 2|` at or below this uses the linear pendant path profile.
pub const SQRT2_BRANCH_TOL: f64 = 1e-9;

fn rho(g: &Graph) -> Result<f64> {
    spectral_radius(&abc_matrix(g)?)
}

fn check_vertex(base: &Graph, v: usize) -> Result<()> {
    if v >= base.order() {
        return Err(Error::Contract(format!(
            "vertex {v} is outside the base graph of order {}",
            base.order()
        )));
    }
    Ok(())
}

/// `G_{k,l}`: pendant paths of `k` and `l` vertices attached at `v0`.
pub fn attach_paths(base: &Graph, v0: usize, k: usize, l: usize) -> Result<Graph> {
    if base.order() < 2 {
        return Err(Error::Parameter("G_{k,l} needs a base graph of order >= 2".into()));
    }
    check_vertex(base, v0)?;
    if k < l {
        return Err(Error::Parameter(format!("G_{{k,l}} requires k >= l, got k = {k}, l = {l}")));
    }
    let n = base.order();
    let mut edges = Vec::with_capacity(k + l);
    for (start, len) in [(n, k), (n + k, l)] {
        for i in 0..len {
            let prev = if i == 0 { v0 } else { start + i - 1 };
            edges.push((prev, start + i));
        }
    }
    base.extended(k + l, &edges)
}

/// `G^1_{k,l}`: `w` joined to the center of a star with `k` leaves and to
/// the center of a star with `l` leaves.
pub fn attach_stars(base: &Graph, w: usize, k: usize, l: usize) -> Result<Graph> {
    check_vertex(base, w)?;
    let n = base.order();
    let mut edges = Vec::with_capacity(k + l + 2);
    let u = n;
    let v = n + k + 1;
    edges.push((w, u));
    edges.extend((1..=k).map(|i| (u, u + i)));
    edges.push((w, v));
    edges.extend((1..=l).map(|i| (v, v + i)));
    base.extended(k + l + 2, &edges)
}

/// `rho(G^1_{k+1,l-1}) - rho(G^1_{k,l})`, positive when moving a leaf to
/// the larger star raises the radius.
pub fn check_star_shift(base: &Graph, w: usize, k: usize, l: usize) -> Result<f64> {
    if !(k >= l && l >= 1) {
        return Err(Error::Contract(format!(
            "star shift requires k >= l >= 1, got k = {k}, l = {l}"
        )));
    }
    Ok(rho(&attach_stars(base, w, k + 1, l - 1)?)? - rho(&attach_stars(base, w, k, l)?)?)
}

/// The three pendant path comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PathShift {
    /// `rho(G_{k,l}) > rho(G_{k+1,l-1})` for `k >= l >= 3`.
    Balanced,
    /// `rho(G_{k+l-1,1}) > rho(G_{k,l})` for `k >= l >= 2`.
    Hook,
    /// `rho(G_{k,1}) > rho(G_{k+1,0})` for `k >= 1` when every base
    /// neighbor of `v0` has degree at most 2. `l` must be 1.
    Pendant,
}

impl PathShift {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(PathShift::Balanced),
            2 => Some(PathShift::Hook),
            3 => Some(PathShift::Pendant),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            PathShift::Balanced => 1,
            PathShift::Hook => 2,
            PathShift::Pendant => 3,
        }
    }

    /// `(larger, smaller)` parameter pairs the comparison predicts.
    pub fn compared(self, k: usize, l: usize) -> ((usize, usize), (usize, usize)) {
        match self {
            PathShift::Balanced => ((k, l), (k + 1, l - 1)),
            PathShift::Hook => ((k + l - 1, 1), (k, l)),
            PathShift::Pendant => ((k, 1), (k + 1, 0)),
        }
    }

    pub fn check_preconditions(self, base: &Graph, v0: usize, k: usize, l: usize) -> Result<()> {
        check_vertex(base, v0)?;
        let ok = match self {
            PathShift::Balanced => k >= l && l >= 3,
            PathShift::Hook => k >= l && l >= 2,
            PathShift::Pendant => k >= 1 && l == 1,
        };
        if !ok {
            let want = match self {
                PathShift::Balanced => "k >= l >= 3",
                PathShift::Hook => "k >= l >= 2",
                PathShift::Pendant => "k >= 1 and l = 1",
            };
            return Err(Error::Contract(format!(
                "path shift variant {} requires {want}, got k = {k}, l = {l}",
                self.index()
            )));
        }
        if self == PathShift::Pendant {
            if let Some(&u) = base.neighbors(v0).iter().find(|&&u| base.degree(u) > 2) {
                return Err(Error::Contract(format!(
                    "path shift variant 3 requires every neighbor of v0 to have degree 1 or 2, \
                     but neighbor {u} has degree {}",
                    base.degree(u)
                )));
            }
        }
        Ok(())
    }
}

/// Signed margin `rho(larger) - rho(smaller)` for the predicted order.
pub fn check_path_shift(base: &Graph, v0: usize, k: usize, l: usize, variant: PathShift) -> Result<f64> {
    variant.check_preconditions(base, v0, k, l)?;
    let ((ka, la), (kb, lb)) = variant.compared(k, l);
    Ok(rho(&attach_paths(base, v0, ka, la)?)? - rho(&attach_paths(base, v0, kb, lb)?)?)
}

/// Radii along the pendant path split order `G_{s-1,1}, G_{ceil(s/2),floor(s/2)},
/// G_{ceil(s/2)-1,floor(s/2)+1}, ..., G_{s-2,2}, G_{s,0}` for `s = k + l`.
/// The order is only observed, never enforced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitChainObservation {
    pub total: usize,
    /// `(k, l, rho)` in chain order.
    pub radii: Vec<(usize, usize, f64)>,
    /// Indices `i` where `radii[i].2 <= radii[i + 1].2`.
    pub breaks: Vec<usize>,
}

pub fn observe_split_chain(base: &Graph, v0: usize, total: usize) -> Result<SplitChainObservation> {
    if total < 4 {
        return Err(Error::Contract("split chain needs k + l >= 4".into()));
    }
    let mut pairs = vec![(total - 1, 1)];
    pairs.extend((total.div_ceil(2)..=total - 2).map(|k| (k, total - k)));
    pairs.push((total, 0));
    let radii = pairs
        .into_iter()
        .map(|(k, l)| Ok((k, l, rho(&attach_paths(base, v0, k, l)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let breaks = radii
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].2 <= w[1].2)
        .map(|(i, _)| i)
        .collect();
    Ok(SplitChainObservation { total, radii, breaks })
}

/// `gamma = (rho + sqrt(rho^2 - 2)) / sqrt 2`, the larger root of
/// `t^2 - sqrt 2 rho t + 1`.
pub fn gamma(rho: f64) -> f64 {
    (rho + (rho * rho - 2.0).max(0.0).sqrt()) / SQRT_2
}

/// Predicted `x_i / x_0` on a pendant path of length `k` when `gamma > 1`.
pub fn path_ratio(gamma: f64, k: usize, i: usize) -> f64 {
    let two_k2 = (2 * k + 2) as i32;
    gamma.powi(i as i32) * (gamma.powi(two_k2 - 2 * i as i32) - 1.0) / (gamma.powi(two_k2) - 1.0)
}

/// Predicted `x_i / x_0` when `rho = sqrt 2`.
pub fn path_ratio_linear(k: usize, i: usize) -> f64 {
    (k as f64 + 1.0 - i as f64) / (k as f64 + 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PendantPathProfile {
    pub rho: f64,
    pub gamma: f64,
    pub k: usize,
    /// Whether the `rho = sqrt 2` form was used.
    pub linear_branch: bool,
    pub predicted: Vec<f64>,
    pub observed: Vec<f64>,
    pub max_deviation: f64,
    /// `min_{1 <= i <= k} (x_0 / gamma^i - x_i)`; positive when the decay
    /// bound holds strictly.
    pub bound_margin: f64,
}

impl PendantPathProfile {
    pub fn bound_holds(&self) -> bool {
        self.bound_margin > 0.0
    }
}

/// Checks that `path = [v0, ..., vk]` is a pendant path: `d(v0) >= 3`,
/// internal degrees 2, `d(vk) = 1`, `k >= 2`, consecutive vertices adjacent.
pub fn check_pendant_path(g: &Graph, path: &[usize]) -> Result<()> {
    let fail = |msg: String| Err(Error::Contract(format!("not a pendant path: {msg}")));
    if path.len() < 3 {
        return fail(format!("need k >= 2, got {} vertices", path.len()));
    }
    if let Some(&v) = path.iter().find(|&&v| v >= g.order()) {
        return fail(format!("vertex {v} out of range"));
    }
    if g.degree(path[0]) < 3 {
        return fail(format!("d(v0) = {} < 3", g.degree(path[0])));
    }
    let k = path.len() - 1;
    for (i, &v) in path.iter().enumerate().skip(1) {
        let want = if i == k { 1 } else { 2 };
        if g.degree(v) != want {
            return fail(format!("d(v{i}) = {}, expected {want}", g.degree(v)));
        }
        if !g.has_edge(path[i - 1], v) {
            return fail(format!("v{} and v{i} are not adjacent", i - 1));
        }
    }
    Ok(())
}

/// Compares the Perron vector along a pendant path with its closed form.
pub fn pendant_path_profile(g: &Graph, path: &[usize]) -> Result<PendantPathProfile> {
    check_pendant_path(g, path)?;
    let spectral = perron_result(&abc_matrix(g)?)?;
    let rho = spectral.radius;
    if rho < SQRT_2 - SQRT2_BRANCH_TOL {
        return Err(Error::Contract(format!(
            "host radius {rho} is below sqrt 2; the pendant path forms do not apply"
        )));
    }
    let k = path.len() - 1;
    let linear = (rho - SQRT_2).abs() <= SQRT2_BRANCH_TOL;
    let gamma = if linear { 1.0 } else { gamma(rho) };
    let observed: Vec<f64> = path.iter().map(|&v| spectral.vector[v]).collect();
    let x0 = observed[0];
    let predicted: Vec<f64> = (0..=k)
        .map(|i| {
            x0 * if linear {
                path_ratio_linear(k, i)
            } else {
                path_ratio(gamma, k, i)
            }
        })
        .collect();
    let max_deviation = predicted
        .iter()
        .zip(&observed)
        .map(|(p, o)| (p - o).abs())
        .fold(0.0, f64::max);
    let bound_margin = (1..=k)
        .map(|i| x0 / gamma.powi(i as i32) - observed[i])
        .fold(f64::INFINITY, f64::min);
    Ok(PendantPathProfile {
        rho,
        gamma,
        k,
        linear_branch: linear,
        predicted,
        observed,
        max_deviation,
        bound_margin,
    })
}

/// Every pendant path `[v0, ..., vk]` with `d(v0) >= 3` and `k >= 2`,
/// found by walking inward from each leaf.
pub fn pendant_paths(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for leaf in (0..g.order()).filter(|&v| g.degree(v) == 1) {
        let mut walk = vec![leaf];
        let mut prev = leaf;
        let mut cur = g.neighbors(leaf)[0];
        while g.degree(cur) == 2 {
            walk.push(cur);
            let next = g.neighbors(cur).iter().copied().find(|&w| w != prev).expect("degree 2");
            prev = cur;
            cur = next;
            if cur == leaf {
                break;
            }
        }
        if g.degree(cur) >= 3 && walk.len() >= 2 {
            walk.push(cur);
            walk.reverse();
            out.push(walk);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::families::{build_family, FamilySpec};

    fn star(n: usize) -> Graph {
        build_family(&FamilySpec::Star(n)).unwrap()
    }

    fn t(i: usize, n: usize) -> Graph {
        build_family(&FamilySpec::TTree { index: i, n }).unwrap()
    }

    fn same(a: &Graph, b: &Graph) -> bool {
        canonical_form(a).unwrap() == canonical_form(b).unwrap()
    }

    #[test]
    fn paths_on_a_star_leaf_give_t1_and_t2() {
        let base = star(8);
        assert!(same(&attach_paths(&base, 1, 2, 0).unwrap(), &t(1, 10)));
        assert!(same(&attach_paths(&base, 1, 1, 1).unwrap(), &t(2, 10)));
        assert_eq!(attach_paths(&base, 1, 0, 0).unwrap(), base);
        // K_{1,5} leaf, (2, 0) is T_1 of order 8
        assert!(same(&attach_paths(&star(6), 1, 2, 0).unwrap(), &t(1, 8)));
    }

    #[test]
    fn path_labels_follow_the_documented_layout() {
        let g = attach_paths(&star(4), 0, 3, 2).unwrap();
        assert_eq!(g.order(), 9);
        assert!(g.has_edge(0, 4) && g.has_edge(4, 5) && g.has_edge(5, 6));
        assert!(g.has_edge(0, 7) && g.has_edge(7, 8));
        assert_eq!(g.degree(0), 5);
    }

    #[test]
    fn attach_paths_contracts() {
        assert!(matches!(attach_paths(&star(1), 0, 1, 0), Err(Error::Parameter(_))));
        assert!(matches!(attach_paths(&star(3), 3, 1, 0), Err(Error::Contract(_))));
        assert!(matches!(attach_paths(&star(3), 0, 1, 2), Err(Error::Parameter(_))));
    }

    #[test]
    fn paths_attached_is_symmetric_in_k_and_l() {
        // G_{k,l} and the same graph built with the roles of the two paths swapped
        let base = build_family(&FamilySpec::Path(4)).unwrap();
        let a = attach_paths(&base, 1, 3, 2).unwrap();
        let n = base.order();
        let mut edges: Vec<_> = base.edges().collect();
        edges.extend([(1, n), (n, n + 1), (1, n + 2), (n + 2, n + 3), (n + 3, n + 4)]);
        let b = Graph::from_edges(n + 5, &edges).unwrap();
        assert!(same(&a, &b));
    }

    #[test]
    fn stars_on_a_star_center_give_t2_and_t3() {
        let base = star(6);
        assert!(same(&attach_stars(&base, 0, 2, 0).unwrap(), &t(2, 10)));
        assert!(same(&attach_stars(&base, 0, 1, 1).unwrap(), &t(3, 10)));
        let g = attach_stars(&base, 0, 0, 0).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.degree(0), 7);
        assert_eq!(g.degree(6), 1);
        assert_eq!(g.degree(7), 1);
    }

    #[test]
    fn star_shift_examples() {
        assert!(check_star_shift(&star(6), 0, 1, 1).unwrap() > 0.0);
        // T_9 -> T_4 at n = 12
        let base = star(7);
        assert!(same(&attach_stars(&base, 0, 2, 1).unwrap(), &t(9, 12)));
        assert!(same(&attach_stars(&base, 0, 3, 0).unwrap(), &t(4, 12)));
        assert!(check_star_shift(&base, 0, 2, 1).unwrap() > 0.0);
        let p3 = build_family(&FamilySpec::Path(3)).unwrap();
        assert!(check_star_shift(&p3, 1, 3, 2).unwrap() > 0.0);
        assert!(check_star_shift(&p3, 1, 1, 2).is_err());
        assert!(check_star_shift(&p3, 1, 1, 0).is_err());
    }

    #[test]
    fn path_shift_examples() {
        let base = star(6);
        assert!(same(&attach_paths(&base, 0, 4, 1).unwrap(), &t(7, 11)));
        assert!(same(&attach_paths(&base, 0, 3, 2).unwrap(), &t(8, 11)));
        assert!(check_path_shift(&base, 0, 3, 2, PathShift::Hook).unwrap() > 0.0);
        assert!(check_path_shift(&star(5), 0, 3, 3, PathShift::Balanced).unwrap() > 0.0);
        let p4 = build_family(&FamilySpec::Path(4)).unwrap();
        assert!(check_path_shift(&p4, 0, 2, 1, PathShift::Pendant).unwrap() > 0.0);
    }

    #[test]
    fn path_shift_preconditions() {
        let s = star(5);
        let err = check_path_shift(&s, 1, 2, 1, PathShift::Pendant).unwrap_err();
        assert!(err.to_string().contains("variant 3"));
        assert!(check_path_shift(&s, 0, 2, 2, PathShift::Balanced).is_err());
        assert!(check_path_shift(&s, 0, 2, 1, PathShift::Hook).is_err());
        assert!(check_path_shift(&s, 0, 2, 0, PathShift::Pendant).is_err());
    }

    #[test]
    fn gamma_and_closed_forms() {
        // sqrt(rho^2 - 2) amplifies rounding near rho = sqrt 2
        assert!((gamma(SQRT_2) - 1.0).abs() < 1e-7);
        assert!(gamma(2.0) > 1.0);
        let g = gamma(2.3);
        // extended recurrence vanishes at k + 1
        for k in 2..6 {
            assert!(path_ratio(g, k, k + 1).abs() < 1e-12);
            assert!((path_ratio(g, k, 0) - 1.0).abs() < 1e-12);
        }
        // recurrence sqrt2 rho x_i = x_{i-1} + x_{i+1}
        for i in 1..4 {
            let lhs = SQRT_2 * 2.3 * path_ratio(g, 4, i);
            let rhs = path_ratio(g, 4, i - 1) + path_ratio(g, 4, i + 1);
            assert!((lhs - rhs).abs() < 1e-12);
        }
        // x_i grows with k at fixed gamma
        for i in 1..=2 {
            assert!(path_ratio(g, 3, i) > path_ratio(g, 2, i));
            assert!(path_ratio_linear(3, i) > path_ratio_linear(2, i));
        }
    }

    #[test]
    fn profile_on_small_hosts() {
        let host = attach_paths(&star(4), 0, 2, 0).unwrap();
        let p = pendant_path_profile(&host, &[0, 4, 5]).unwrap();
        assert!(p.rho > SQRT_2);
        assert!(p.max_deviation <= 1e-8);
        assert!(p.bound_holds());

        let t1 = t(1, 12);
        let paths = pendant_paths(&t1);
        assert_eq!(paths, vec![vec![0, 1, 2, 3]]);
        let p = pendant_path_profile(&t1, &paths[0]).unwrap();
        assert_eq!(p.k, 3);
        assert!(p.max_deviation <= 1e-8);
    }

    #[test]
    fn profile_rejects_non_pendant_paths() {
        let t1 = t(1, 12);
        assert!(pendant_path_profile(&t1, &[1, 2, 3]).is_err());
        assert!(pendant_path_profile(&t1, &[0, 1]).is_err());
        assert!(pendant_path_profile(&t1, &[0, 2, 3]).is_err());
        let c4 = build_family(&FamilySpec::Cycle(4)).unwrap();
        assert!(pendant_path_profile(&c4, &[0, 1, 2]).is_err());
    }

    #[test]
    fn linear_branch_on_a_radius_sqrt2_host() {
        // spider with legs 1, 1, 2 has rho = sqrt 2 exactly
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let p = pendant_path_profile(&g, &[0, 3, 4]).unwrap();
        assert!(p.linear_branch);
        assert!(p.max_deviation <= 1e-8);
        assert!(p.bound_holds());
    }

    #[test]
    fn split_chain_is_observed() {
        let obs = observe_split_chain(&star(5), 0, 7).unwrap();
        let pairs: Vec<_> = obs.radii.iter().map(|&(k, l, _)| (k, l)).collect();
        assert_eq!(pairs, vec![(6, 1), (4, 3), (5, 2), (7, 0)]);
    }
}
