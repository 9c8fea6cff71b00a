//! graph6 encoding.
//!
//! The order `n` is written as the byte `63 + n` for `n <= 62`, otherwise as
//! `126` followed by three 6-bit bytes. The upper triangle follows in column
//! order (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per byte, most
//! significant bit first, each byte offset by 63, zero-padded at the end.

use super::{Graph, GraphError, MAX_ORDER};

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(s: &str) -> Result<Graph, GraphError> {
    let bad = |msg: String| GraphError::MalformedGraph6(msg);
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(format!(
            "byte {b:#x} outside the printable graph6 range"
        )));
    }
    let (n, body) = match bytes {
        [] => return Err(bad("empty string".to_string())),
        [126, 126, ..] => return Err(bad("orders above 258047 are not supported".to_string())),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated order".to_string()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    if n > MAX_ORDER {
        return Err(GraphError::TooManyVertices(n));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    if body.len() != expected {
        return Err(bad(format!(
            "expected {expected} data bytes for {n} vertices, got {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if pairs % 6 != 0 {
        let last = body[expected - 1] - 63;
        if last & ((1u8 << (6 - pairs % 6)) - 1) != 0 {
            return Err(bad("nonzero padding bits".to_string()));
        }
    }
    Ok(g)
}
