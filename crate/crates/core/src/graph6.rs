//! The graph6 text format.
//!
//! Layout: a size header `N(n)` followed by the upper triangle of the
//! adjacency matrix in column order (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed six bits per byte, each byte offset by 63, padded with zero bits.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn size_header(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes `g` as graph6 bytes (no trailing newline).
pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    size_header(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    out
}

pub fn to_graph6(g: &Graph) -> String {
    // every byte is in 63..=126
    String::from_utf8(encode(g)).expect("graph6 output is ASCII")
}

fn data_byte(bytes: &[u8], offset: usize) -> Result<u8> {
    match bytes.get(offset) {
        None => Err(Error::Graph6 {
            offset,
            message: "unexpected end of input".into(),
        }),
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(Error::Graph6 {
            offset,
            message: format!("byte 0x{b:02x} is outside the printable range 63..=126"),
        }),
    }
}

/// Parses one graph6 string. An optional `>>graph6<<` header and trailing
/// whitespace are accepted.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end();
    let (bytes, base) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (trimmed.as_bytes(), 0),
    };
    let err = |offset: usize, message: &str| Error::Graph6 {
        offset: base + offset,
        message: message.into(),
    };
    if bytes.is_empty() {
        return Err(err(0, "empty input"));
    }
    let located = |e: Error| match e {
        Error::Graph6 { offset, message } => Error::Graph6 {
            offset: base + offset,
            message,
        },
        other => other,
    };

    let (n, mut pos) = if bytes[0] != 126 {
        (data_byte(bytes, 0).map_err(located)? as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        let mut n = 0usize;
        for i in 1..4 {
            n = (n << 6) | data_byte(bytes, i).map_err(located)? as usize;
        }
        if n <= 62 {
            return Err(err(0, "long size header used for a small order"));
        }
        (n, 4)
    } else {
        let mut n = 0usize;
        for i in 2..8 {
            n = (n << 6) | data_byte(bytes, i).map_err(located)? as usize;
        }
        if n <= 258_047 {
            return Err(err(0, "extra-long size header used for a small order"));
        }
        (n, 8)
    };

    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pos + pairs.div_ceil(6);
    if bytes.len() < expected {
        return Err(err(
            bytes.len(),
            &format!("truncated bitstream: {} bytes, expected {expected}", bytes.len()),
        ));
    }
    if bytes.len() > expected {
        return Err(err(expected, "trailing bytes after the bitstream"));
    }

    let mut adj = vec![Vec::new(); n];
    let mut bit = 0usize;
    let mut current = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                current = data_byte(bytes, pos).map_err(located)?;
                pos += 1;
            }
            if current & (1 << (5 - bit % 6)) != 0 {
                adj[i].push(j);
                adj[j].push(i);
            }
            bit += 1;
        }
    }
    if bit % 6 != 0 {
        let last = pos - 1;
        let padding = 6 - bit % 6;
        if data_byte(bytes, last).map_err(located)? & ((1 << padding) - 1) != 0 {
            return Err(err(last, "nonzero padding bits"));
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph::from_sorted_adjacency(adj))
}

/// Parses a file body with one graph6 string per line; blank lines are
/// skipped. Errors carry the 1-based line number.
pub fn parse_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            from_graph6(line.trim()).map_err(|e| match e {
                Error::Graph6 { offset, message } => Error::Graph6 {
                    offset,
                    message: format!("line {}: {message}", i + 1),
                },
                other => other,
            })
        })
        .collect()
}
