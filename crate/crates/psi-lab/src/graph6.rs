//! Bit-exact graph6 encoding and decoding (short form, `n <= 62`).
//!
//! Layout: one header byte `63 + n`, followed by the upper triangle of the
//! adjacency matrix in column-major order — bits (0,1), (0,2), (1,2),
//! (0,3), (1,3), (2,3), ... — zero-padded to a multiple of six, each 6-bit
//! group emitted as `value + 63`. Printable range is 63..=126.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

fn bad(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

/// Decodes one graph6 line.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\r', '\n']).as_bytes();
    if bytes.is_empty() {
        return Err(bad(0, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(bad(i, format!("byte {b:#04x} outside graph6 range 63..=126")));
        }
    }
    if bytes[0] == 126 {
        // Long-form header: the encoded order is at least 63.
        return Err(Error::UnsupportedSize { n: 63, max: MAX_VERTICES });
    }
    let n = (bytes[0] - 63) as usize;
    let num_bits = n * n.saturating_sub(1) / 2;
    let expected = 1 + num_bits.div_ceil(6);
    if bytes.len() < expected {
        return Err(bad(bytes.len(), format!(
            "truncated bit field: expected {expected} bytes for n={n}, got {}",
            bytes.len()
        )));
    }
    if bytes.len() > expected {
        return Err(bad(expected, format!(
            "trailing bytes: expected {expected} bytes for n={n}, got {}",
            bytes.len()
        )));
    }

    let mut adj = vec![0u64; n];
    let mut pos = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + pos / 6] - 63;
            let bit = (byte >> (5 - pos % 6)) & 1;
            if bit != 0 {
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
            pos += 1;
        }
    }
    // Padding bits must be zero, or emit/parse would not round-trip.
    while pos < (expected - 1) * 6 {
        let byte = bytes[1 + pos / 6] - 63;
        if (byte >> (5 - pos % 6)) & 1 != 0 {
            return Err(bad(1 + pos / 6, "nonzero padding bit"));
        }
        pos += 1;
    }
    Ok(Graph::from_adj_unchecked(adj))
}

/// Encodes a graph as one graph6 line.
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize { n, max: MAX_VERTICES });
    }
    let mut out = vec![63 + n as u8];
    let mut acc = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses a multi-line graph6 document. Lines starting with `>>` are format
/// headers and are skipped, as are blank lines.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with(">>"))
        .map(parse_graph6)
        .collect()
}
