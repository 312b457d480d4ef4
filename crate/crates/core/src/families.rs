//! Named graph families.
//!
//! Labeling conventions, which tests and Perron-vector lookups rely on:
//!
//! * star `S_n`: center `0`, leaves `1..n`.
//! * path `P_n`: `0 - 1 - ... - (n-1)`; cycle `C_n` closes it with `(n-1, 0)`.
//! * double star `S_{a,b}`: centers `0` (with `a` leaves) and `1` (with `b`
//!   leaves); the leaves of `0` come first.
//! * `t_tree(i, n)`: center `0` has maximum degree. The branch vertices are
//!   numbered from `1` in the order listed in [`t_tree_branches`], and the
//!   remaining vertices are leaves of the center.
//! * grafted families follow [`crate::perturbations::attach_paths`] and
//!   [`crate::perturbations::attach_stars`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perturbations::{attach_paths, attach_stars};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Star(usize),
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `S_{a,b}` with `a >= b`, order `a + b + 2`.
    DoubleStar { a: usize, b: usize },
    /// One of the ten trees with maximum degree `n - 3` or `n - 4`.
    TTree { index: usize, n: usize },
    /// `G_{k,l}`: two pendant paths of `k` and `l` vertices at `v0`.
    PathsAttached {
        base: Box<FamilySpec>,
        v0: usize,
        k: usize,
        l: usize,
    },
    /// `G^1_{k,l}`: `w` joined to the centers of stars with `k` and `l` leaves.
    StarsAttached {
        base: Box<FamilySpec>,
        w: usize,
        k: usize,
        l: usize,
    },
}

/// Branches hanging off the center of `T_index`. Each branch lists, for its
/// vertices in order, the parent: `0` is the center, `j >= 1` is the `j`-th
/// vertex of the same branch.
pub fn t_tree_branches(index: usize) -> Option<&'static [&'static [usize]]> {
    const T: [&[&[usize]]; 10] = [
        // pendant path c-u-a-b
        &[&[0, 1, 2]],
        // u with two leaves
        &[&[0, 1, 1]],
        // two pendant 2-paths
        &[&[0, 1], &[0, 1]],
        // u with three leaves
        &[&[0, 1, 1, 1]],
        // u with one leaf and one pendant 2-path
        &[&[0, 1, 1, 3]],
        // c-u-a, a with two leaves
        &[&[0, 1, 2, 2]],
        // pendant path of four vertices
        &[&[0, 1, 2, 3]],
        // pendant 3-path and pendant 2-path
        &[&[0, 1, 2], &[0, 1]],
        // u with two leaves and a pendant 2-path
        &[&[0, 1, 1], &[0, 1]],
        // three pendant 2-paths
        &[&[0, 1], &[0, 1], &[0, 1]],
    ];
    index.checked_sub(1).and_then(|i| T.get(i).copied())
}

/// Smallest order for which `t_tree(index, n)` is defined.
pub fn t_tree_min_order(index: usize) -> usize {
    if index <= 3 {
        6
    } else {
        7
    }
}

fn t_tree(index: usize, n: usize) -> Result<Graph> {
    let branches = t_tree_branches(index).ok_or_else(|| {
        Error::Parameter(format!("t_tree index {index} is outside 1..=10"))
    })?;
    let min = t_tree_min_order(index);
    if n < min {
        return Err(Error::Parameter(format!(
            "t_tree({index}, n) requires n >= {min}, got {n}"
        )));
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for branch in branches {
        let first = next;
        for &parent in branch.iter() {
            let p = if parent == 0 { 0 } else { first + parent - 1 };
            edges.push((p, next));
            next += 1;
        }
    }
    while next < n {
        edges.push((0, next));
        next += 1;
    }
    Graph::from_edges(n, &edges)
}

/// Builds the graph described by `spec`.
pub fn build_family(spec: &FamilySpec) -> Result<Graph> {
    match *spec {
        FamilySpec::Star(n) => {
            if n == 0 {
                return Err(Error::Parameter("star requires n >= 1".into()));
            }
            let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
            Graph::from_edges(n, &edges)
        }
        FamilySpec::Path(n) => {
            if n == 0 {
                return Err(Error::Parameter("path requires n >= 1".into()));
            }
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Graph::from_edges(n, &edges)
        }
        FamilySpec::Cycle(n) => {
            if n < 3 {
                return Err(Error::Parameter(format!("cycle requires n >= 3, got {n}")));
            }
            let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
            Graph::from_edges(n, &edges)
        }
        FamilySpec::Complete(n) => {
            if n == 0 {
                return Err(Error::Parameter("complete graph requires n >= 1".into()));
            }
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            Graph::from_edges(n, &edges)
        }
        FamilySpec::DoubleStar { a, b } => {
            if a < b {
                return Err(Error::Parameter(format!(
                    "double star S_{{a,b}} requires a >= b, got a = {a}, b = {b}"
                )));
            }
            let mut edges = vec![(0, 1)];
            edges.extend((0..a).map(|i| (0, 2 + i)));
            edges.extend((0..b).map(|i| (1, 2 + a + i)));
            Graph::from_edges(a + b + 2, &edges)
        }
        FamilySpec::TTree { index, n } => t_tree(index, n),
        FamilySpec::PathsAttached {
            ref base,
            v0,
            k,
            l,
        } => attach_paths(&build_family(base)?, v0, k, l),
        FamilySpec::StarsAttached { ref base, w, k, l } => {
            attach_stars(&build_family(base)?, w, k, l)
        }
    }
}

/// Grammar accepted by [`FamilySpec::from_str`].
pub const FAMILY_GRAMMAR: &str = "\
family := star:N | path:N | cycle:N | complete:N | dstar:A:B | t:I:N
        | gkl:FAMILY:V0:K:L | g1kl:FAMILY:W:K:L
  star:10          star S_10 (center 0)
  dstar:4:2        double star S_{4,2}, order 8
  t:4:12           tree T_4 of order 12 (I in 1..=10)
  gkl:star:6:1:2:0 star S_6 with pendant paths of 2 and 0 vertices at vertex 1
  g1kl:star:5:0:2:0 star S_5 with stars of 2 and 0 leaves joined at vertex 0";

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split(':').map(str::trim).collect();
        let (spec, used) = parse_tokens(&tokens)?;
        if used != tokens.len() {
            return Err(Error::Parameter(format!(
                "trailing tokens in family spec '{s}'\n{FAMILY_GRAMMAR}"
            )));
        }
        Ok(spec)
    }
}

fn parse_tokens(tokens: &[&str]) -> Result<(FamilySpec, usize)> {
    let number = |i: usize| -> Result<usize> {
        let tok = tokens.get(i).ok_or_else(|| {
            Error::Parameter(format!("family spec is missing arguments\n{FAMILY_GRAMMAR}"))
        })?;
        tok.parse().map_err(|_| {
            Error::Parameter(format!("'{tok}' is not a non-negative integer\n{FAMILY_GRAMMAR}"))
        })
    };
    let tag = tokens.first().copied().unwrap_or("");
    match tag {
        "star" => Ok((FamilySpec::Star(number(1)?), 2)),
        "path" => Ok((FamilySpec::Path(number(1)?), 2)),
        "cycle" => Ok((FamilySpec::Cycle(number(1)?), 2)),
        "complete" => Ok((FamilySpec::Complete(number(1)?), 2)),
        "dstar" => Ok((
            FamilySpec::DoubleStar {
                a: number(1)?,
                b: number(2)?,
            },
            3,
        )),
        "t" => Ok((
            FamilySpec::TTree {
                index: number(1)?,
                n: number(2)?,
            },
            3,
        )),
        "gkl" | "g1kl" => {
            let (base, used) = parse_tokens(&tokens[1..])?;
            let at = 1 + used;
            let (v, k, l) = (
                tokens_number(tokens, at)?,
                tokens_number(tokens, at + 1)?,
                tokens_number(tokens, at + 2)?,
            );
            let base = Box::new(base);
            let spec = if tag == "gkl" {
                FamilySpec::PathsAttached { base, v0: v, k, l }
            } else {
                FamilySpec::StarsAttached { base, w: v, k, l }
            };
            Ok((spec, at + 3))
        }
        _ => Err(Error::Parameter(format!(
            "unknown family tag '{tag}'\n{FAMILY_GRAMMAR}"
        ))),
    }
}

fn tokens_number(tokens: &[&str], i: usize) -> Result<usize> {
    let tok = tokens.get(i).ok_or_else(|| {
        Error::Parameter(format!("family spec is missing arguments\n{FAMILY_GRAMMAR}"))
    })?;
    tok.parse().map_err(|_| {
        Error::Parameter(format!("'{tok}' is not a non-negative integer\n{FAMILY_GRAMMAR}"))
    })
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::DoubleStar { a, b } => write!(f, "dstar:{a}:{b}"),
            FamilySpec::TTree { index, n } => write!(f, "t:{index}:{n}"),
            FamilySpec::PathsAttached { base, v0, k, l } => write!(f, "gkl:{base}:{v0}:{k}:{l}"),
            FamilySpec::StarsAttached { base, w, k, l } => write!(f, "g1kl:{base}:{w}:{k}:{l}"),
        }
    }
}
