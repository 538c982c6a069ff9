//! graph6 encoding for [`SimpleGraph`].
//!
//! Orders up to 62 use a single size byte `n + 63`; larger orders use `~`
//! followed by three 6-bit size bytes. Adjacency bits follow the upper triangle
//! column by column, six bits per byte, most significant first, each byte
//! offset by 63.

use crate::error::ParseError;
use crate::graph::SimpleGraph;

pub fn encode(g: &SimpleGraph) -> String {
    let n = g.order();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }

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

pub fn decode(text: &str) -> Result<SimpleGraph, ParseError> {
    let err = |m: String| ParseError::Graph6(m);
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(format!("byte {b:#04x} outside the printable range 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(err("empty input".into())),
        [126, 126, ..] => return Err(err("orders above 258047 are not supported".into())),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err("truncated size field".into()));
            }
            let n = rest[..3].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(err(format!("expected {need} data bytes for n = {n}, found {}", body.len())));
    }
    let mut g = SimpleGraph::empty(n).map_err(|e| err(e.to_string()))?;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(u, v).expect("indices in range");
            }
            k += 1;
        }
    }
    if bits % 6 != 0 && (body[need - 1] - 63) & ((1 << (6 - bits % 6)) - 1) != 0 {
        return Err(err("nonzero padding bits".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Bits hand-packed: 5 vertices give 10 zero bits -> two zero sextets -> "??".
    #[test]
    fn empty_five() {
        let g = SimpleGraph::empty(5).unwrap();
        assert_eq!(encode(&g), "D??");
        assert_eq!(decode("D??").unwrap(), g);
    }

    // One bit `1`, padded to 100000b = 32, plus 63 = 95 = '_'.
    #[test]
    fn k2() {
        let g = SimpleGraph::complete(2).unwrap();
        assert_eq!(encode(&g), "A_");
        assert_eq!(decode("A_\n").unwrap(), g);
    }

    #[test]
    fn empty_nine() {
        assert_eq!(encode(&SimpleGraph::empty(9).unwrap()), "H??????");
    }

    // Example graph from the reference format description: 0-2, 0-4, 1-3, 3-4.
    #[test]
    fn reference_example() {
        let g = SimpleGraph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn large_order_header() {
        let g = SimpleGraph::complete(100).unwrap();
        let s = encode(&g);
        assert!(s.starts_with("~?@c"));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(decode("").is_err());
        assert!(decode("D?").is_err());
        assert!(decode("D???").is_err());
        assert!(decode("A`").is_err());
        assert!(decode("A\x01").is_err());
        assert!(decode("~??").is_err());
    }
}
