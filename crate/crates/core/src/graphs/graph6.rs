use super::LabeledGraph;
use crate::error::{Result, SyntaxError};

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258048 {
        out.push(126);
        for k in (0..3).rev() {
            out.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for k in (0..6).rev() {
            out.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
    }
}

/// graph6 string (no header, no trailing newline).
pub fn to_graph6(g: &LabeledGraph) -> String {
    let mut out = Vec::new();
    encode_n(g.n(), &mut out);
    let mut bits = Vec::with_capacity(g.n() * g.n().saturating_sub(1) / 2);
    for j in 1..g.n() {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                x |= 1 << (5 - k);
            }
        }
        out.push(x + 63);
    }
    String::from_utf8(out).expect("printable ascii")
}

/// Parses a graph6 string (an optional `>>graph6<<` header is accepted).
pub fn from_graph6(text: &str) -> Result<LabeledGraph> {
    let bad = |m: &str| SyntaxError { line: 1, column: 1, message: format!("graph6: {m}") };
    let s = text.trim().strip_prefix(">>graph6<<").unwrap_or(text.trim()).as_bytes();
    if s.iter().any(|&c| !(63..=126).contains(&c)) {
        return Err(bad("byte outside 63..=126").into());
    }
    let (n, rest) = match s {
        [126, 126, r @ ..] if r.len() >= 6 => (r[..6].iter().fold(0usize, |a, &c| (a << 6) | (c - 63) as usize), &r[6..]),
        [126, r @ ..] if r.len() >= 3 => (r[..3].iter().fold(0usize, |a, &c| (a << 6) | (c - 63) as usize), &r[3..]),
        [c, r @ ..] if *c < 126 => ((*c - 63) as usize, r),
        _ => return Err(bad("truncated size field").into()),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(bad("wrong body length").into());
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    LabeledGraph::new(n, edges, vec![])
}
