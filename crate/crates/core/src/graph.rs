//! Simple undirected graphs on vertices `0..n`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected graph with dense integer labels.
///
/// Adjacency lists are kept sorted and the degree sequence is cached; a
/// `Graph` is immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    edge_count: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            degrees: vec![0; n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges
    /// and endpoints outside `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Parameter(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Parameter(format!(
                    "parallel edge between {u} and {}",
                    w[0]
                )));
            }
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let degrees: Vec<usize> = adj.iter().map(Vec::len).collect();
        let edge_count = degrees.iter().sum::<usize>() / 2;
        Graph {
            adj,
            degrees,
            edge_count,
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Maximum degree, zero for graphs without vertices.
    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Connectivity by breadth-first search. The empty graph counts as
    /// connected.
    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.size() + 1 == self.order() && self.is_connected()
    }

    /// Graph with vertex `v` relabeled to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Contract(format!(
                "relabeling must be a permutation of 0..{n}"
            )));
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(n, &edges)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|list| list.iter().map(|&v| v + shift).collect()),
        );
        Graph::from_sorted_adjacency(adj)
    }

    /// `G(u,v)H`: the disjoint union plus the edge joining `u` in `self`
    /// to `v` in `other`.
    pub fn join_at(&self, u: usize, other: &Graph, v: usize) -> Result<Graph> {
        if u >= self.order() || v >= other.order() {
            return Err(Error::Contract(format!(
                "join vertices ({u}, {v}) out of range for orders ({}, {})",
                self.order(),
                other.order()
            )));
        }
        let shift = self.order();
        let mut edges: Vec<_> = self.edges().collect();
        edges.extend(other.edges().map(|(a, b)| (a + shift, b + shift)));
        edges.push((u, v + shift));
        Graph::from_edges(shift + other.order(), &edges)
    }

    /// Adds a single edge, returning a new graph.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut edges: Vec<_> = self.edges().collect();
        edges.push((u, v));
        Graph::from_edges(self.order(), &edges)
    }

    /// Adds `extra` vertices and the given edges, returning a new graph.
    pub fn extended(&self, extra: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut all: Vec<_> = self.edges().collect();
        all.extend_from_slice(edges);
        Graph::from_edges(self.order() + extra, &all)
    }

    /// Induced subgraph on `vertices`, relabeled by position in the slice.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let n = self.order();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::Contract(format!(
                    "vertex subset entry {v} is out of range or repeated"
                )));
            }
            pos[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|(u, v)| (pos[u], pos[v]))
            .collect();
        Graph::from_edges(vertices.len(), &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(matches!(Graph::from_edges(3, &[(1, 1)]), Err(Error::Parameter(_))));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::Parameter(_))
        ));
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn degree_cache_matches_adjacency() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        assert_eq!(g.degrees(), &[3, 1, 1, 2, 1]);
        for v in 0..g.order() {
            assert_eq!(g.degree(v), g.neighbors(v).len());
        }
        assert_eq!(g.size(), 4);
        assert!(g.is_tree());
    }

    #[test]
    fn two_disjoint_edges_are_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn join_adds_one_edge() {
        let a = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let b = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let j = a.join_at(1, &b, 0).unwrap();
        assert_eq!(j.order(), 5);
        assert_eq!(j.size(), 4);
        assert!(j.has_edge(1, 2));
        assert!(j.is_tree());
    }
}
