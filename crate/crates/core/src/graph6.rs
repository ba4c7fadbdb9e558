//! graph6 encoding as used by the nauty toolchain.
//!
//! `N(n)` is one byte `n + 63` for `n <= 62`, `126` plus three 6-bit groups
//! for `n <= 258047`, and `126 126` plus six groups up to `2^36 - 1`. The
//! upper triangle follows column by column, `(0,1) (0,2) (1,2) (0,3) ...`,
//! packed six bits per byte, big-endian, each byte offset by 63.

use std::io::{self, BufRead, Write};

use crate::error::Graph6Error;
use crate::graph::Graph;

const BIAS: u8 = 63;
const MAX_N: u64 = (1 << 36) - 1;
const HEADER: &[u8] = b">>graph6<<";

fn encode_size(n: u64, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Encodes `g` without a trailing newline.
pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.vertex_count();
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(8 + bits.div_ceil(6));
    encode_size(n as u64, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    out
}

/// Encodes `g` as a `String`.
pub fn encode_string(g: &Graph) -> String {
    String::from_utf8(encode(g)).expect("graph6 output is printable ASCII")
}

fn decode_size(s: &[u8]) -> Result<(u64, usize), Graph6Error> {
    let group = |bytes: &[u8]| -> Result<u64, Graph6Error> {
        bytes.iter().try_fold(0u64, |acc, &b| {
            if !(BIAS..=126).contains(&b) {
                return Err(Graph6Error::MalformedHeader);
            }
            Ok((acc << 6) | u64::from(b - BIAS))
        })
    };
    match s {
        [] => Err(Graph6Error::Empty),
        [126, 126, rest @ ..] => {
            let g = rest.get(..6).ok_or(Graph6Error::MalformedHeader)?;
            let n = group(g)?;
            if n <= 258_047 {
                return Err(Graph6Error::MalformedHeader);
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            let g = rest.get(..3).ok_or(Graph6Error::MalformedHeader)?;
            let n = group(g)?;
            if n <= 62 {
                return Err(Graph6Error::MalformedHeader);
            }
            Ok((n, 4))
        }
        [b, ..] if (BIAS..126).contains(b) => Ok((u64::from(b - BIAS), 1)),
        _ => Err(Graph6Error::MalformedHeader),
    }
}

/// Decodes a single graph6 string. An optional `>>graph6<<` prefix is
/// accepted; any other byte outside the payload is an error.
pub fn decode(s: &[u8]) -> Result<Graph, Graph6Error> {
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let (n, header_len) = decode_size(s)?;
    if n > MAX_N {
        return Err(Graph6Error::TooLarge(n));
    }
    let body = &s[header_len..];
    if let Some(offset) = body.iter().position(|b| !(BIAS..=126).contains(b)) {
        return Err(Graph6Error::InvalidByte {
            byte: body[offset],
            offset: header_len + offset,
        });
    }
    let bits = u128::from(n) * u128::from(n.saturating_sub(1)) / 2;
    let expected = bits.div_ceil(6);
    if expected != body.len() as u128 {
        return Err(Graph6Error::WrongLength {
            expected: usize::try_from(expected).unwrap_or(usize::MAX),
            found: body.len(),
        });
    }
    let n = n as usize;
    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.set(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn decode_str(s: &str) -> Result<Graph, Graph6Error> {
    decode(s.as_bytes())
}

/// Reads one graph per line. Blank lines are skipped; a bad line reports its
/// 1-based line number.
pub fn read_lines<R: BufRead>(reader: R) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    let mut out = Vec::new();
    for (idx, line) in reader.split(b'\n').enumerate() {
        let line = line.map_err(|_| (idx + 1, Graph6Error::Empty))?;
        let line = line.strip_suffix(b"\r").unwrap_or(&line);
        if line.is_empty() {
            continue;
        }
        out.push(decode(line).map_err(|e| (idx + 1, e))?);
    }
    Ok(out)
}

/// Writes each graph on its own newline-terminated line.
pub fn write_lines<'a, W: Write>(mut w: W, graphs: impl IntoIterator<Item = &'a Graph>) -> io::Result<()> {
    for g in graphs {
        w.write_all(&encode(g))?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
