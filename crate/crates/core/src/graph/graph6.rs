use std::io::BufRead;

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn bad(message: impl Into<String>) -> Error {
    Error::Graph6 {
        line: 0,
        message: message.into(),
    }
}

fn sextet(b: u8) -> Result<u32> {
    if !(63..=126).contains(&b) {
        return Err(bad(format!("illegal byte {b} (must lie in 63..=126)")));
    }
    Ok(u32::from(b - 63))
}

/// Decodes the vertex count and returns it with the number of bytes used.
fn decode_order(bytes: &[u8]) -> Result<(usize, usize)> {
    let first = *bytes.first().ok_or_else(|| bad("empty encoding"))?;
    if first != 126 {
        return Ok((sextet(first)? as usize, 1));
    }
    let (start, width) = if bytes.get(1) == Some(&126) {
        (2, 6)
    } else {
        (1, 3)
    };
    let chunk = bytes
        .get(start..start + width)
        .ok_or_else(|| bad("truncated vertex count"))?;
    let mut n = 0usize;
    for &b in chunk {
        n = (n << 6) | sextet(b)? as usize;
    }
    Ok((n, start + width))
}

/// Decodes a single graph6 line (no trailing newline).
pub fn decode_graph6(line: &str) -> Result<Graph> {
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let (n, used) = decode_order(bytes)?;
    let body = &bytes[used..];
    let bits = n * n.saturating_sub(1) / 2;
    let expect = bits.div_ceil(6);
    if body.len() != expect {
        return Err(bad(format!(
            "expected {expect} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let word = sextet(body[idx / 6])?;
            if (word >> (5 - idx % 6)) & 1 == 1 {
                g.insert_edge(i, j);
            }
            idx += 1;
        }
    }
    Ok(g)
}

/// Encodes a graph in graph6 format.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
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
    let mut word = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            word = (word << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(word + 63);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Reads one graph per non-blank line. Errors carry the 1-based line number.
pub fn ingest_graph6<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.is_empty() {
            continue;
        }
        let g = decode_graph6(line).map_err(|e| match e {
            Error::Graph6 { message, .. } => Error::Graph6 {
                line: i + 1,
                message,
            },
            other => other,
        })?;
        graphs.push(g);
    }
    Ok(graphs)
}
