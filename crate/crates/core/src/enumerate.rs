//! Graphs up to isomorphism: free trees and small connected graphs.

use std::collections::HashSet;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

pub const MAX_TREE_ORDER: usize = 20;
pub const MAX_GRAPH_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    Trees,
    Connected,
}

/// A deterministic stream of pairwise non-isomorphic connected graphs of a
/// fixed order.
pub struct EnumerationStream {
    order: usize,
    class: GraphClass,
    max_degree: Option<usize>,
    inner: Box<dyn Iterator<Item = Graph> + Send>,
}

impl EnumerationStream {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn class(&self) -> GraphClass {
        self.class
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.max_degree
    }

    /// Writes one graph6 string per line.
    pub fn write_graph6<W: Write>(self, mut out: W) -> io::Result<usize> {
        let mut count = 0;
        for g in self {
            out.write_all(&graph6::encode(&g))?;
            out.write_all(b"\n")?;
            count += 1;
        }
        Ok(count)
    }
}

impl Iterator for EnumerationStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        self.inner.next()
    }
}

/// All free trees of order `n`, each exactly once, in the order of the
/// level-sequence generator (starting from the path, ending at the star).
pub fn free_trees(n: usize) -> Result<EnumerationStream> {
    if !(1..=MAX_TREE_ORDER).contains(&n) {
        return Err(Error::Capacity(format!(
            "free tree enumeration supports 1 <= n <= {MAX_TREE_ORDER}, got {n}"
        )));
    }
    let inner: Box<dyn Iterator<Item = Graph> + Send> = if n == 1 {
        Box::new(std::iter::once(Graph::empty(1)))
    } else {
        Box::new(FreeTreeLayouts::new(n).map(|layout| layout_to_graph(&layout)))
    };
    Ok(EnumerationStream {
        order: n,
        class: GraphClass::Trees,
        max_degree: None,
        inner,
    })
}

/// Free trees of order `n` with maximum degree exactly `delta`.
pub fn trees_with_max_degree(n: usize, delta: usize) -> Result<EnumerationStream> {
    if delta < 2 || delta + 1 > n {
        return Err(Error::Parameter(format!(
            "maximum degree class needs 2 <= delta <= n - 1, got delta = {delta}, n = {n}"
        )));
    }
    let all = free_trees(n)?;
    Ok(EnumerationStream {
        order: n,
        class: GraphClass::Trees,
        max_degree: Some(delta),
        inner: Box::new(all.filter(move |g| g.max_degree() == delta)),
    })
}

/// All connected graphs of order `n`, sorted by canonical form. Each graph
/// is its canonical representative.
pub fn connected_graphs(n: usize) -> Result<EnumerationStream> {
    if !(1..=MAX_GRAPH_ORDER).contains(&n) {
        return Err(Error::Capacity(format!(
            "connected graph enumeration supports 1 <= n <= {MAX_GRAPH_ORDER}, got {n}"
        )));
    }
    let mut connected: Vec<(CanonicalForm, Graph)> = all_graphs(n)
        .into_iter()
        .filter(|(_, g)| g.is_connected())
        .collect();
    connected.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(EnumerationStream {
        order: n,
        class: GraphClass::Connected,
        max_degree: None,
        inner: Box::new(connected.into_iter().map(|(_, g)| g)),
    })
}

/// Every graph on `n` vertices up to isomorphism, grown edge by edge: each
/// graph with `m` edges is some graph with `m - 1` edges plus one edge, so
/// adding every non-edge to every class at level `m - 1` and keeping one
/// representative per canonical form reaches every class at level `m`.
fn all_graphs(n: usize) -> Vec<(CanonicalForm, Graph)> {
    let start = Graph::empty(n);
    let mut level = vec![(canonical_form(&start).expect("n within canon limit"), start)];
    let mut all = level.clone();
    let max_edges = n * n.saturating_sub(1) / 2;
    for _ in 0..max_edges {
        let mut candidates: Vec<(CanonicalForm, Graph)> = level
            .par_iter()
            .flat_map_iter(|(_, g)| {
                let mut out = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if !g.has_edge(u, v) {
                            let h = g.with_edge(u, v).expect("non-edge");
                            let form = canonical_form(&h).expect("n within canon limit");
                            out.push(form);
                        }
                    }
                }
                out
            })
            .collect::<HashSet<_>>()
            .into_iter()
            .map(|form| {
                let g = form.to_graph();
                (form, g)
            })
            .collect();
        candidates.sort_by(|a, b| a.0.cmp(&b.0));
        all.extend(candidates.iter().cloned());
        level = candidates;
    }
    all
}

/// Level sequence successor over rooted trees, constrained to the
/// canonical center-rooted representatives of free trees (Wright,
/// Richmond, Odlyzko and McKay). Each free tree is produced once.
struct FreeTreeLayouts {
    next: Option<Vec<usize>>,
}

impl FreeTreeLayouts {
    fn new(n: usize) -> Self {
        debug_assert!(n >= 2);
        // the path, rooted at its center
        let layout: Vec<usize> = (0..=n / 2).chain(1..n.div_ceil(2)).collect();
        FreeTreeLayouts { next: Some(layout) }
    }
}

impl Iterator for FreeTreeLayouts {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let candidate = self.next.take()?;
        let valid = next_free_tree(candidate)?;
        self.next = next_rooted_tree(&valid, None);
        Some(valid)
    }
}

/// One step of the rooted-tree successor (Beyer and Hedetniemi). With
/// `p = None` the last vertex above level 1 is advanced.
fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut result = pred.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

/// Splits a layout into the leftmost root subtree (levels shifted down by
/// one) and the remainder rooted at the original root.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &l)| l == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let rest = std::iter::once(0).chain(layout[m..].iter().copied()).collect();
    (left, rest)
}

/// Returns `candidate` if it is a canonical free-tree layout, otherwise the
/// next canonical candidate; `None` once the sequence is exhausted.
fn next_free_tree(mut candidate: Vec<usize>) -> Option<Vec<usize>> {
    loop {
        let (left, rest) = split_tree(&candidate);
        let left_height = left.iter().copied().max().unwrap_or(0);
        let rest_height = rest.iter().copied().max().unwrap_or(0);
        let mut valid = rest_height >= left_height;
        if valid && rest_height == left_height {
            if left.len() > rest.len() || (left.len() == rest.len() && left > rest) {
                valid = false;
            }
        }
        if valid {
            return Some(candidate);
        }
        let p = left.len();
        let mut next = next_rooted_tree(&candidate, Some(p))?;
        if candidate[p] > 2 {
            let (new_left, _) = split_tree(&next);
            let new_left_height = new_left.iter().copied().max().unwrap_or(0);
            let len = next.len();
            let tail = new_left_height + 1;
            for (slot, level) in next[len - tail..].iter_mut().zip(1..) {
                *slot = level;
            }
        }
        candidate = next;
    }
}

/// Builds the tree whose preorder depth sequence is `layout`.
fn layout_to_graph(layout: &[usize]) -> Graph {
    let n = layout.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&top) = stack.last() {
            if layout[top] >= level {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&parent) = stack.last() {
            edges.push((parent, i));
        }
        stack.push(i);
    }
    Graph::from_edges(n, &edges).expect("layouts describe trees")
}

#[cfg(test)]
mod tests {
    use super::*;

    // Number of free trees, n = 1..=20.
    const TREE_COUNTS: [usize; 20] = [
        1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867,
        317955, 823065,
    ];

    #[test]
    fn tree_counts_match_the_known_sequence_to_sixteen() {
        for n in 1..=16 {
            assert_eq!(free_trees(n).unwrap().count(), TREE_COUNTS[n - 1], "n={n}");
        }
    }

    #[test]
    fn every_emitted_tree_is_a_tree_and_distinct() {
        for n in 1..=10 {
            let mut forms = HashSet::new();
            for g in free_trees(n).unwrap() {
                assert_eq!(g.order(), n);
                assert!(g.is_tree());
                assert!(forms.insert(canonical_form(&g).unwrap()));
            }
        }
    }

    #[test]
    fn capacity_limits() {
        assert!(matches!(free_trees(0), Err(Error::Capacity(_))));
        assert!(matches!(free_trees(21), Err(Error::Capacity(_))));
        assert!(matches!(connected_graphs(9), Err(Error::Capacity(_))));
        assert!(trees_with_max_degree(5, 1).is_err());
        assert!(trees_with_max_degree(5, 5).is_err());
    }

    #[test]
    fn small_connected_graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn streams_are_deterministic() {
        let a: Vec<Graph> = free_trees(9).unwrap().collect();
        let b: Vec<Graph> = free_trees(9).unwrap().collect();
        assert_eq!(a, b);
        let a: Vec<Graph> = connected_graphs(5).unwrap().collect();
        let b: Vec<Graph> = connected_graphs(5).unwrap().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn max_degree_classes_partition_the_trees() {
        for n in 3..=12 {
            let total: usize = (2..n).map(|d| trees_with_max_degree(n, d).unwrap().count()).sum();
            assert_eq!(total, TREE_COUNTS[n - 1]);
        }
        assert_eq!(trees_with_max_degree(12, 11).unwrap().count(), 1);
        assert_eq!(trees_with_max_degree(12, 9).unwrap().count(), 3);
        assert_eq!(trees_with_max_degree(12, 8).unwrap().count(), 7);
    }

    #[test]
    fn graph6_lines_output() {
        let mut buf = Vec::new();
        let count = free_trees(5).unwrap().write_graph6(&mut buf).unwrap();
        assert_eq!(count, 3);
        let text = String::from_utf8(buf).unwrap();
        let parsed = graph6::parse_lines(&text).unwrap();
        assert_eq!(parsed.len(), 3);
        assert!(parsed.iter().all(Graph::is_tree));
    }
}
