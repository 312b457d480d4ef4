//! Independent enumeration oracles: Prufer sequences for trees and
//! brute-force labeled graphs, each deduplicated with its own isomorphism key.

#![allow(dead_code)]

use std::collections::HashSet;

use abc_spectra::Graph;
use rayon::prelude::*;

/// AHU encoding of `g` rooted at its center (min over two centers).
pub fn tree_key(g: &Graph) -> String {
    let n = g.order();
    if n <= 2 {
        return "()".repeat(n);
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            removed[leaf] = true;
        }
        for &leaf in &layer {
            for &w in g.neighbors(leaf) {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let centers: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    centers.iter().map(|&c| encode(g, c, usize::MAX)).min().unwrap()
}

fn encode(g: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| encode(g, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn prufer_decode(seq: &[usize], n: usize) -> Graph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((last[0], last[1]));
    Graph::from_edges(n, &edges).unwrap()
}

fn partitions(total: usize, max_part: usize, parts_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    if parts_left == 0 {
        return;
    }
    for p in (1..=max_part.min(total)).rev() {
        prefix.push(p);
        partitions(total - p, p, parts_left - 1, prefix, out);
        prefix.pop();
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Isomorphism classes of trees on `n` vertices, via Prufer sequences.
///
/// Every tree has a labeling whose degrees are non-increasing in the label,
/// so only sequences in which label `i` occurs at least as often as label
/// `i + 1` are decoded.
pub fn prufer_tree_keys(n: usize) -> HashSet<String> {
    if n <= 2 {
        return HashSet::from([tree_key(&Graph::from_edges(n, &(1..n).map(|v| (0, v)).collect::<Vec<_>>()).unwrap())]);
    }
    let mut parts = Vec::new();
    partitions(n - 2, n - 2, n, &mut Vec::new(), &mut parts);
    parts
        .par_iter()
        .flat_map_iter(|counts| {
            let mut seq: Vec<usize> = counts.iter().enumerate().flat_map(|(label, &c)| std::iter::repeat(label).take(c)).collect();
            let mut keys = HashSet::new();
            loop {
                keys.insert(tree_key(&prufer_decode(&seq, n)));
                if !next_permutation(&mut seq) {
                    break;
                }
            }
            keys
        })
        .collect()
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn mask_graph(n: usize, mask: u32) -> Graph {
    let edges: Vec<_> = pair_index(n)
        .into_iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn graph_mask(g: &Graph, perm: &[usize], index: &[Vec<usize>]) -> u32 {
    g.edges().fold(0u32, |m, (u, v)| m | 1 << index[perm[u]][perm[v]])
}

/// Smallest edge mask over relabelings that keep degrees in place.
/// Two graphs with the same non-increasing degree labeling are isomorphic
/// iff their keys agree.
pub fn graph_key(g: &Graph) -> (Vec<usize>, u32) {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let inv = {
        let mut inv = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            inv[v] = pos;
        }
        inv
    };
    let sorted = g.relabel(&inv).unwrap();
    let degrees: Vec<usize> = (0..n).map(|v| sorted.degree(v)).collect();
    let mut index = vec![vec![0usize; n]; n];
    for (b, (i, j)) in pair_index(n).into_iter().enumerate() {
        index[i][j] = b;
        index[j][i] = b;
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for v in 1..=n {
        if v == n || degrees[v] != degrees[start] {
            blocks.push(start..v);
            start = v;
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u32::MAX;
    permute_blocks(&blocks, 0, &mut perm, &mut |p| {
        best = best.min(graph_mask(&sorted, p, &index));
    });
    (degrees, best)
}

fn permute_blocks(blocks: &[std::ops::Range<usize>], at: usize, perm: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    let Some(block) = blocks.get(at) else {
        visit(perm);
        return;
    };
    let mut slice: Vec<usize> = block.clone().collect();
    loop {
        perm[block.clone()].copy_from_slice(&slice);
        permute_blocks(blocks, at + 1, perm, visit);
        if !next_permutation(&mut slice) {
            break;
        }
    }
}

/// Isomorphism classes of connected graphs on `n <= 7` vertices, by
/// scanning every labeled graph whose degrees are non-increasing in the
/// label.
pub fn labeled_connected_keys(n: usize) -> HashSet<(Vec<usize>, u32)> {
    assert!(n <= 7);
    let pairs = n * n.saturating_sub(1) / 2;
    let index = pair_index(n);
    (0u32..1 << pairs)
        .into_par_iter()
        .filter(|&mask| {
            let mut deg = vec![0usize; n];
            for (b, &(i, j)) in index.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    deg[i] += 1;
                    deg[j] += 1;
                }
            }
            deg.windows(2).all(|w| w[0] >= w[1])
        })
        .map(|mask| mask_graph(n, mask))
        .filter(|g| g.is_connected())
        .map(|g| graph_key(&g))
        .collect()
}
