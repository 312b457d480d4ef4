//! Canonical forms for small graphs.
//!
//! Individualization-refinement: the vertex partition is refined to an
//! equitable one, then the search branches on the vertices of the first
//! smallest non-singleton cell. Each discrete leaf induces a labeling, and
//! the labeling with the largest upper-triangle bit string wins. Branches
//! on a vertex that is a twin (same neighbors apart from each other) of an
//! already explored sibling are skipped; swapping twins is an automorphism.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANON_ORDER: usize = 16;

/// graph6 bytes of the canonically relabeled graph. Equal iff isomorphic,
/// and ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// The canonical representative.
    pub fn to_graph(&self) -> Graph {
        graph6::from_graph6(self.as_str()).expect("canonical form is valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

type Cells = Vec<Vec<usize>>;

struct Search {
    adj: Vec<u32>,
    best: Option<(u128, Vec<usize>)>,
}

impl Search {
    fn refine(&self, cells: &mut Cells) {
        loop {
            let masks: Vec<u32> = cells
                .iter()
                .map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v))
                .collect();
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u8>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let key = masks
                            .iter()
                            .map(|m| (self.adj[v] & m).count_ones() as u8)
                            .collect();
                        (key, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            // cells only ever split, so an unchanged count means stable
            if next.len() == cells.len() {
                return;
            }
            *cells = next;
        }
    }

    fn certificate(&self, order: &[usize]) -> u128 {
        let n = order.len();
        let mut bits = 0u128;
        for j in 1..n {
            for i in 0..j {
                bits = (bits << 1) | ((self.adj[order[i]] >> order[j]) & 1) as u128;
            }
        }
        bits
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        (self.adj[u] & !(1 << v)) == (self.adj[v] & !(1 << u))
    }

    fn run(&mut self, mut cells: Cells) {
        self.refine(&mut cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let cert = self.certificate(&order);
            if self.best.as_ref().map_or(true, |(b, _)| cert > *b) {
                self.best = Some((cert, order));
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[t] {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(vec![v]);
            child.push(cells[t].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[t + 1..]);
            self.run(child);
            tried.push(v);
        }
    }
}

/// Canonical labeling: `order[i]` is the vertex that receives label `i`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(Error::Capacity(format!(
            "canonical forms support at most {MAX_CANON_ORDER} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut search = Search { adj, best: None };
    search.run(vec![(0..n).collect()]);
    Ok(search.best.expect("search reaches a leaf").1)
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let order = canonical_labeling(g)?;
    let mut perm = vec![0; order.len()];
    for (label, &v) in order.iter().enumerate() {
        perm[v] = label;
    }
    let relabeled = g.relabel(&perm)?;
    Ok(CanonicalForm(graph6::encode(&relabeled)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, FamilySpec};
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn prufer_tree(seq: &[usize], n: usize) -> Graph {
        let mut degree = vec![1; n];
        for &s in seq {
            degree[s] += 1;
        }
        let mut edges = Vec::new();
        for &s in seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<_> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn path_reversal_is_invariant() {
        let p4 = build_family(&FamilySpec::Path(4)).unwrap();
        let rev = p4.relabel(&[3, 2, 1, 0]).unwrap();
        assert_eq!(canonical_form(&p4).unwrap(), canonical_form(&rev).unwrap());
        let s4 = build_family(&FamilySpec::Star(4)).unwrap();
        assert_ne!(canonical_form(&s4).unwrap(), canonical_form(&p4).unwrap());
    }

    #[test]
    fn sixteen_labeled_trees_on_four_vertices_give_two_classes() {
        let mut forms = HashSet::new();
        let mut count = 0;
        for a in 0..4 {
            for b in 0..4 {
                forms.insert(canonical_form(&prufer_tree(&[a, b], 4)).unwrap());
                count += 1;
            }
        }
        assert_eq!(count, 16);
        assert_eq!(forms.len(), 2);
    }

    #[test]
    fn rejects_large_orders() {
        assert!(matches!(
            canonical_form(&Graph::empty(17)),
            Err(Error::Capacity(_))
        ));
        assert!(canonical_form(&Graph::empty(16)).is_ok());
    }

    #[test]
    fn regular_graphs_with_same_degrees_are_separated() {
        // C_6 versus two triangles
        let c6 = build_family(&FamilySpec::Cycle(6)).unwrap();
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&two_triangles).unwrap());
    }

    fn shuffle(n: usize, mut seed: u64) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (seed >> 33) as usize % (i + 1));
        }
        perm
    }

    proptest! {
        #[test]
        fn relabeling_preserves_form(n in 1usize..=12, density in 0u64..4, seed in any::<u64>(), pseed in any::<u64>()) {
            let mut edges = Vec::new();
            let mut s = seed | 1;
            for j in 1..n {
                for i in 0..j {
                    s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                    if s % 4 < density { edges.push((i, j)); }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let h = g.relabel(&shuffle(n, pseed)).unwrap();
            prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }
    }
}
