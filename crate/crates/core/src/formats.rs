//! DOT and graph6 text formats.
//!
//! graph6: the size (one byte `n + 63` for `n <= 62`, otherwise `~` and
//! three bytes of six bits each), then the upper
//! triangle read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed six bits per byte, most significant first, each byte offset by
//! 63, the last group zero-padded.

use std::fmt::Write as _;

use crate::dihedral::format_element;
use crate::error::{Error, Result};
use crate::graph::{CommutingGraph, Graph};

/// Largest order encoded with the one-byte size field.
pub const GRAPH6_SHORT_MAX: usize = 62;

/// Largest order [`to_graph6`] and [`parse_graph6`] handle.
pub const GRAPH6_DECODE_MAX: usize = 4096;

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_DECODE_MAX {
        return Err(Error::SizeGuard {
            what: "graph6 vertex count",
            len: n,
            max: GRAPH6_DECODE_MAX,
        });
    }
    let mut out = String::with_capacity(4 + (n * n).div_ceil(12));
    if n <= GRAPH6_SHORT_MAX {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Decodes one graph6 record. Accepts the optional `>>graph6<<` header,
/// the short and the 4-byte size forms, and surrounding whitespace.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |why: &str| Error::Graph6(why.to_string());
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, ..] => return Err(bad("8-byte size form not supported")),
        [126, rest @ ..] => {
            let [x, y, z, body @ ..] = rest else {
                return Err(bad("truncated size field"));
            };
            let n = ((*x as usize - 63) << 12) | ((*y as usize - 63) << 6) | (*z as usize - 63);
            (n, body)
        }
        [first, body @ ..] => (*first as usize - 63, body),
    };
    if n > GRAPH6_DECODE_MAX {
        return Err(Error::SizeGuard {
            what: "graph6 vertex count",
            len: n,
            max: GRAPH6_DECODE_MAX,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::Graph6(format!(
            "expected {} data bytes for {n} vertices, got {}",
            bits.div_ceil(6),
            body.len()
        )));
    }
    let bit_at = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..body.len() * 6).any(bit_at) {
        return Err(bad("non-zero padding bits"));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit_at(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text with one node per vertex labelled by `labels[v]`.
pub fn dot_with_labels(g: &Graph, labels: &[String]) -> String {
    let mut out = String::from("graph G {\n");
    for (v, label) in labels.iter().enumerate().take(g.order()) {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", dot_escape(label));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

pub fn to_dot(g: &Graph) -> String {
    let labels: Vec<String> = (0..g.order()).map(|v| v.to_string()).collect();
    dot_with_labels(g, &labels)
}

/// DOT text labelled with the element names.
pub fn export_dot(cg: &CommutingGraph) -> String {
    let labels: Vec<String> = cg.labels().iter().map(|&x| format_element(x)).collect();
    dot_with_labels(cg.graph(), &labels)
}

pub fn export_graph6(cg: &CommutingGraph) -> Result<String> {
    to_graph6(cg.graph())
}
