//! ABC edge weights, the ABC matrix, and the scalar indices.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::WeightedSymmetricMatrix;

/// `f(x, y) = sqrt((x + y - 2) / (x y))` for degrees `x, y >= 1`.
pub fn edge_weight(di: usize, dj: usize) -> Result<f64> {
    if di == 0 || dj == 0 {
        return Err(Error::Domain(format!(
            "edge weight needs positive degrees, got ({di}, {dj})"
        )));
    }
    Ok(weight(di, dj))
}

#[inline]
pub(crate) fn weight(di: usize, dj: usize) -> f64 {
    ((di + dj - 2) as f64 / (di * dj) as f64).sqrt()
}

fn check_no_isolated(g: &Graph) -> Result<()> {
    if g.order() == 1 {
        return Ok(());
    }
    match (0..g.order()).find(|&v| g.degree(v) == 0) {
        Some(v) => Err(Error::Domain(format!("vertex {v} is isolated"))),
        None => Ok(()),
    }
}

/// `M(G)`: `f(d_i, d_j)` on edges, zero elsewhere. The single-vertex graph
/// maps to the 1x1 zero matrix; other isolated vertices are rejected.
pub fn abc_matrix(g: &Graph) -> Result<WeightedSymmetricMatrix> {
    check_no_isolated(g)?;
    Ok(abc_matrix_lenient(g))
}

/// Like [`abc_matrix`] but isolated vertices get zero rows. Used where a
/// disjoint union may contain `K_1` components.
pub(crate) fn abc_matrix_lenient(g: &Graph) -> WeightedSymmetricMatrix {
    let mut m = WeightedSymmetricMatrix::zeros(g.order());
    for (u, v) in g.edges() {
        m.set_symmetric(u, v, weight(g.degree(u), g.degree(v)));
    }
    m
}

/// `ABC(G)`, the sum of edge weights.
pub fn abc_index(g: &Graph) -> Result<f64> {
    check_no_isolated(g)?;
    Ok(g.edges().map(|(u, v)| weight(g.degree(u), g.degree(v))).sum())
}

/// The modified Randić index `R_{-1}(G) = sum 1 / (d_i d_j)` over edges.
pub fn r_minus_one(g: &Graph) -> Result<f64> {
    check_no_isolated(g)?;
    Ok(g
        .edges()
        .map(|(u, v)| 1.0 / (g.degree(u) * g.degree(v)) as f64)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, FamilySpec};
    use proptest::prelude::*;

    fn family(spec: FamilySpec) -> Graph {
        build_family(&spec).unwrap()
    }

    #[test]
    fn edge_weight_values() {
        assert_eq!(edge_weight(1, 1).unwrap(), 0.0);
        assert!((edge_weight(2, 2).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((edge_weight(9, 1).unwrap() - 0.942_809_041_582_063_4).abs() < 1e-15);
        assert_eq!(edge_weight(3, 7).unwrap(), edge_weight(7, 3).unwrap());
        assert!(matches!(edge_weight(0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn small_matrices() {
        let m = abc_matrix(&family(FamilySpec::Path(3))).unwrap();
        let h = 0.5f64.sqrt();
        assert_eq!(m.as_slice(), &[0.0, h, 0.0, h, 0.0, h, 0.0, h, 0.0]);
        let m = abc_matrix(&family(FamilySpec::Path(2))).unwrap();
        assert!(m.as_slice().iter().all(|&x| x == 0.0));
        let m = abc_matrix(&family(FamilySpec::Star(5))).unwrap();
        let w = 0.75f64.sqrt();
        for v in 1..5 {
            assert_eq!(m.get(0, v), w);
            assert_eq!(m.get(v, 0), w);
        }
        assert_eq!(m.as_slice().iter().filter(|&&x| x != 0.0).count(), 8);
    }

    #[test]
    fn isolated_vertex_is_a_domain_error() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let err = abc_matrix(&g).unwrap_err();
        assert!(err.to_string().contains("vertex 2"));
        assert!(abc_index(&g).is_err());
        assert_eq!(abc_matrix(&Graph::empty(1)).unwrap().order(), 1);
    }

    #[test]
    fn abc_index_values() {
        assert_eq!(abc_index(&family(FamilySpec::Path(2))).unwrap(), 0.0);
        for n in 2..20usize {
            let direct = abc_index(&family(FamilySpec::Star(n))).unwrap();
            let closed = (((n - 1) * (n - 2)) as f64).sqrt();
            assert!((direct - closed).abs() < 1e-12, "n={n}");
        }
        assert!((abc_index(&family(FamilySpec::Star(5))).unwrap() - 3.464_101_615_137_754_6).abs() < 1e-12);
        assert!((abc_index(&family(FamilySpec::Cycle(6))).unwrap() - 6.0 * 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn randic_values() {
        assert!((r_minus_one(&family(FamilySpec::Path(3))).unwrap() - 1.0).abs() < 1e-15);
        for n in 2..12 {
            assert!((r_minus_one(&family(FamilySpec::Star(n))).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((r_minus_one(&family(FamilySpec::Cycle(5))).unwrap() - 1.25).abs() < 1e-15);
    }

    #[test]
    fn paths_and_cycles_have_uniform_weights() {
        let h = 0.5f64.sqrt();
        for n in 3..10 {
            for g in [family(FamilySpec::Path(n)), family(FamilySpec::Cycle(n))] {
                let m = abc_matrix(&g).unwrap();
                assert!(m.as_slice().iter().all(|&x| x == 0.0 || (x - h).abs() < 1e-15));
            }
        }
    }

    proptest! {
        #[test]
        fn index_is_half_the_matrix_sum(n in 2usize..12, seed in any::<u64>()) {
            // random tree from a parent array
            let mut s = seed | 1;
            let edges: Vec<_> = (1..n).map(|v| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                ((s >> 33) as usize % v, v)
            }).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let m = abc_matrix(&g).unwrap();
            let half: f64 = m.as_slice().iter().sum::<f64>() / 2.0;
            prop_assert!((abc_index(&g).unwrap() - half).abs() < 1e-12);
            prop_assert_eq!(m.asymmetry(), 0.0);
            prop_assert!((0..n).all(|i| m.get(i, i) == 0.0));

            // relabeling permutes rows and columns together
            let perm: Vec<usize> = (0..n).rev().collect();
            let mp = abc_matrix(&g.relabel(&perm).unwrap()).unwrap();
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(m.get(i, j), mp.get(perm[i], perm[j]));
                }
            }
        }
    }
}
