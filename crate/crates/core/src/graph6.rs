//! graph6 text encoding (header-free).
//!
//! The vertex count is written as one byte `n + 63` for `n <= 62`, otherwise
//! as `~` followed by three 6-bit bytes. The upper triangle of the adjacency
//! matrix follows column by column, `x(0,1) x(0,2) x(1,2) x(0,3) ...`, packed
//! big-endian into 6-bit groups offset by 63 and zero-padded at the end.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(2 + (n * n) / 12);
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
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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

pub fn decode(text: &str) -> Result<Graph> {
    let malformed = |reason: &str| Error::Graph6 {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let body = text.trim_end_matches(['\n', '\r']);
    let body = body.strip_prefix(HEADER).unwrap_or(body);
    let bytes = body.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(malformed(&format!("byte {b:#04x} outside 63..=126")));
    }
    let (n, rest) = match bytes {
        [] => return Err(malformed("empty input")),
        [b'~', b'~', ..] => return Err(malformed("vertex count above 258047")),
        [b'~', a, b, c, rest @ ..] => {
            let n = (((a - 63) as usize) << 12) | (((b - 63) as usize) << 6) | (c - 63) as usize;
            (n, rest)
        }
        [b'~', ..] => return Err(malformed("truncated vertex count")),
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity { requested: n });
    }
    let bits = n * n.saturating_sub(1) / 2;
    if rest.len() != bits.div_ceil(6) {
        return Err(malformed(&format!(
            "expected {} edge bytes for {n} vertices, found {}",
            bits.div_ceil(6),
            rest.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                g.add_edge_unchecked(i, j);
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let pad_mask = (1u8 << (6 - k % 6)) - 1;
        if (rest[k / 6] - 63) & pad_mask != 0 {
            return Err(malformed("non-zero padding bits"));
        }
    }
    Ok(g)
}

/// Read a corpus: one graph6 string per line; blank lines and lines starting
/// with `#` are skipped.
pub fn read_corpus<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|e| Error::InvalidParameter(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(decode(line)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        assert_eq!(encode(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        // nauty's documentation example: the 5-vertex graph with edges
        // 0-2, 0-4, 1-3, 3-4 encodes as "DQc".
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
    }

    #[test]
    fn long_vertex_count() {
        let g = Graph::path(64).unwrap();
        let s = encode(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(decode(&s).unwrap(), g);
        let k63 = Graph::complete(63).unwrap();
        assert_eq!(decode(&encode(&k63)).unwrap(), k63);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(decode(""), Err(Error::Graph6 { .. })));
        assert!(matches!(decode("B"), Err(Error::Graph6 { .. })));
        assert!(matches!(decode("Bww"), Err(Error::Graph6 { .. })));
        assert!(matches!(decode("B\u{7f}"), Err(Error::Graph6 { .. })));
        // K3 bits 111 then padding 001
        assert!(matches!(decode("Bx"), Err(Error::Graph6 { .. })));
        assert!(matches!(decode("~?A"), Err(Error::Graph6 { .. })));
        // 65 vertices
        assert!(matches!(decode("~?@@"), Err(Error::Capacity { requested: 65 })));
    }

    #[test]
    fn header_and_newline_tolerated() {
        assert_eq!(decode(">>graph6<<Bw\n").unwrap(), Graph::complete(3).unwrap());
    }

    #[test]
    fn corpus_reader_skips_comments() {
        let text = "# triangles\nBw\n\n@\n";
        let gs = read_corpus(text.as_bytes()).unwrap();
        assert_eq!(gs.len(), 2);
    }
}
