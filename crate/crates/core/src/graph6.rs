//! graph6 encoding of simple undirected graphs (McKay's format).
//!
//! The parser is strict: it accepts exactly the byte strings the encoder
//! produces (plus an optional `>>graph6<<` header and surrounding
//! whitespace), so `encode(decode(s)) == s` for every accepted `s`.

use thiserror::Error;

use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;
const LONG: u8 = 126;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {pos} is outside the printable range 63..=126")]
    InvalidByte { pos: usize, byte: u8 },
    #[error("order field truncated")]
    TruncatedOrder,
    #[error("order {0} uses a longer encoding than necessary")]
    NonCanonicalOrder(u64),
    #[error("expected {expected} adjacency bytes, found {found}")]
    Length { expected: u64, found: usize },
    #[error("padding bits in the final byte are not zero")]
    NonZeroPadding,
}

/// Encodes a graph; the result never contains a header or newline.
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    encode_order(n as u64, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + BIAS);
    }
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn encode_order(n: u64, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(LONG);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(LONG);
        out.push(LONG);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Decodes one graph6 string.
pub fn decode(input: &str) -> Result<Graph, Graph6Error> {
    let s = input.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(pos) = bytes.iter().position(|b| !(BIAS..=LONG).contains(b)) {
        return Err(Graph6Error::InvalidByte {
            pos,
            byte: bytes[pos],
        });
    }
    let (n, body) = decode_order(bytes)?;
    let bits = n as u128 * (n as u128).saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if expected != body.len() as u128 {
        return Err(Graph6Error::Length {
            expected: expected.min(u64::MAX as u128) as u64,
            found: body.len(),
        });
    }
    let n = n as usize;
    let pad = (expected * 6 - bits) as u32;
    if let Some(&last) = body.last() {
        if (last - BIAS) & ((1u8 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }

    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn decode_order(bytes: &[u8]) -> Result<(u64, &[u8]), Graph6Error> {
    let field = |slice: &[u8]| slice.iter().fold(0u64, |acc, &b| (acc << 6) | (b - BIAS) as u64);
    if bytes[0] != LONG {
        return Ok(((bytes[0] - BIAS) as u64, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] == LONG {
        if bytes.len() < 8 {
            return Err(Graph6Error::TruncatedOrder);
        }
        let n = field(&bytes[2..8]);
        if n <= 258_047 {
            return Err(Graph6Error::NonCanonicalOrder(n));
        }
        return Ok((n, &bytes[8..]));
    }
    if bytes.len() < 4 {
        return Err(Graph6Error::TruncatedOrder);
    }
    let n = field(&bytes[1..4]);
    if n <= 62 {
        return Err(Graph6Error::NonCanonicalOrder(n));
    }
    Ok((n, &bytes[4..]))
}

/// Decodes every non-empty line of a graph6 file.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>, Graph6Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(decode)
        .collect()
}
