use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order handled. Orders above 62 use the 4-byte header; the 8-byte
/// header for very large graphs is not supported.
pub const MAX_GRAPH6_N: usize = 258;

const OFFSET: u8 = 63;
const EXTENDED: u8 = 126;

/// Length in bytes of the canonical graph6 encoding of an `n`-vertex graph.
pub fn graph6_len(n: usize) -> usize {
    let header = if n <= 62 { 1 } else { 4 };
    header + (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses a single graph6 line. A trailing newline and the optional
/// `>>graph6<<` marker are accepted.
pub fn parse_graph6(input: &[u8]) -> Result<Graph> {
    let mut bytes = input;
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
    }
    if let Some(pos) = bytes.iter().position(|&b| !(OFFSET..=126).contains(&b)) {
        return Err(Error::MalformedInput(format!(
            "graph6 byte {:#04x} at offset {pos} outside 63..=126",
            bytes[pos]
        )));
    }
    let (n, payload) = match bytes {
        [] => return Err(Error::MalformedInput("empty graph6 string".into())),
        [EXTENDED, EXTENDED, ..] => {
            return Err(Error::SizeLimitExceeded {
                what: "graph6 order (8-byte header)",
                actual: usize::MAX,
                limit: MAX_GRAPH6_N,
            })
        }
        [EXTENDED, a, b, c, rest @ ..] => {
            let n = [a, b, c]
                .iter()
                .fold(0usize, |acc, &&x| (acc << 6) | usize::from(x - OFFSET));
            (n, rest)
        }
        [EXTENDED, ..] => return Err(Error::MalformedInput("truncated graph6 header".into())),
        [h, rest @ ..] => (usize::from(h - OFFSET), rest),
    };
    if n == 0 {
        return Err(Error::MalformedInput("graph6 string encodes zero vertices".into()));
    }
    if n > MAX_GRAPH6_N {
        return Err(Error::SizeLimitExceeded {
            what: "graph6 order",
            actual: n,
            limit: MAX_GRAPH6_N,
        });
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if payload.len() < expected {
        return Err(Error::MalformedInput(format!(
            "graph6 payload has {} bytes, {expected} needed for n={n}",
            payload.len()
        )));
    }
    if payload.len() > expected {
        return Err(Error::MalformedInput(format!(
            "graph6 payload has {} trailing bytes",
            payload.len() - expected
        )));
    }
    let bit = |k: usize| (payload[k / 6] - OFFSET) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(Error::MalformedInput("non-zero graph6 padding bits".into()));
    }

    let mut g = Graph::edgeless(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Canonical graph6 encoding (no trailing newline).
pub fn write_graph6(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > MAX_GRAPH6_N {
        return Err(Error::SizeLimitExceeded {
            what: "graph6 order",
            actual: n,
            limit: MAX_GRAPH6_N,
        });
    }
    let mut out = Vec::with_capacity(graph6_len(n));
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(EXTENDED);
        out.extend([12, 6, 0].map(|s| ((n >> s) & 0x3f) as u8 + OFFSET));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    Ok(out)
}
