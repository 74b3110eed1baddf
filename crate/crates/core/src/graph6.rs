//! graph6 text encoding.
//!
//! Header `N(n)` followed by the upper triangle `x(0,1), x(0,2), x(1,2), x(0,3), ...`
//! packed six bits per byte, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(8 + n * n / 12);
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
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
    out
}

fn sextet(b: u8) -> Result<u64> {
    if (63..=126).contains(&b) {
        Ok((b - 63) as u64)
    } else {
        Err(Error::Parse(format!("byte {b:#04x} outside graph6 range")))
    }
}

pub fn decode_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    let (n, body) = if bytes[0] != b'~' {
        (sextet(bytes[0])?, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == b'~' {
        if bytes.len() < 8 {
            return Err(Error::Parse("truncated 8-byte size header".into()));
        }
        let mut n = 0u64;
        for &b in &bytes[2..8] {
            n = (n << 6) | sextet(b)?;
        }
        (n, &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated 4-byte size header".into()));
        }
        let mut n = 0u64;
        for &b in &bytes[1..4] {
            n = (n << 6) | sextet(b)?;
        }
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES as u64 {
        return Err(Error::Parse(format!("graph with {n} vertices exceeds supported size")));
    }
    let n = n as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Parse(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::new(n);
    let mut k = 0usize;
    'outer: for v in 1..n {
        for u in 0..v {
            if k >= bits {
                break 'outer;
            }
            let byte = sextet(body[k / 6])?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    if !bits.is_multiple_of(6) {
        let last = sextet(body[expected - 1])?;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Parse("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_strings() {
        assert_eq!(encode_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(encode_graph6(&Graph::new(3)), "B?");
        assert_eq!(encode_graph6(&Graph::path(3)), "Bg");
        assert_eq!(encode_graph6(&Graph::new(0)), "?");
        // cross-checked against networkx.to_graph6_bytes
        assert_eq!(encode_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(encode_graph6(&Graph::petersen()), "IheA@GUAo");
    }

    #[test]
    fn long_headers() {
        let g = Graph::path(100);
        let s = encode_graph6(&g);
        assert!(s.starts_with("~?@c"));
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("Bw?").is_err());
        assert!(decode_graph6("Bx").is_err()); // padding bit set
        assert!(decode_graph6("B\x10").is_err());
        assert_eq!(decode_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3));
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..80, bits in proptest::collection::vec(any::<bool>(), 3160)) {
            let mut g = Graph::new(n);
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k % bits.len()] { g.add_edge(u, v); }
                    k += 1;
                }
            }
            let s = encode_graph6(&g);
            prop_assert_eq!(decode_graph6(&s).unwrap(), g);
            prop_assert_eq!(encode_graph6(&decode_graph6(&s).unwrap()), s);
        }
    }
}
