//! The graph6 line format: a size header followed by the upper triangle of
//! the adjacency matrix in column order, six bits per printable character
//! (`char = value + 63`).

use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed size header")]
    MalformedHeader,
    #[error("character {found:?} at byte {position} is outside the graph6 range '?'..='~'")]
    InvalidCharacter { position: usize, found: char },
    #[error("expected {expected} data characters, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} unexpected trailing characters")]
    TrailingGarbage(usize),
    #[error("padding bits in the final character are not zero")]
    NonzeroPadding,
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
}

const BIAS: u8 = 63;

fn sextet(position: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - BIAS)
    } else {
        Err(Graph6Error::InvalidCharacter {
            position,
            found: byte as char,
        })
    }
}

/// Parses one graph6 line (an optional `>>graph6<<` prefix and trailing
/// newline are accepted). All weights of the result are zero.
pub fn parse_graph6(text: &str) -> Result<WeightedGraph, Graph6Error> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Graph6Error::Empty);
    };

    let (n, body_start) = if first == b'~' {
        // 18-bit (`~` + 3) or 36-bit (`~~` + 6) size header
        if bytes.get(1) == Some(&b'~') {
            if bytes.len() < 8 {
                return Err(Graph6Error::MalformedHeader);
            }
            let mut n = 0usize;
            for (i, &b) in bytes[2..8].iter().enumerate() {
                n = n << 6 | sextet(i + 2, b)? as usize;
            }
            (n, 8)
        } else {
            if bytes.len() < 4 {
                return Err(Graph6Error::MalformedHeader);
            }
            let mut n = 0usize;
            for (i, &b) in bytes[1..4].iter().enumerate() {
                n = n << 6 | sextet(i + 1, b)? as usize;
            }
            (n, 4)
        }
    } else {
        (sextet(0, first)? as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }

    let body = &bytes[body_start..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage(body.len() - expected));
    }
    let mut data = Vec::with_capacity(expected);
    for (i, &b) in body.iter().enumerate() {
        data.push(sextet(body_start + i, b)?);
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        if data[expected - 1] & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }

    let mut adjacency = vec![VertexSet::EMPTY; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if data[k / 6] >> (5 - k % 6) & 1 == 1 {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
            k += 1;
        }
    }
    Ok(WeightedGraph::from_adjacency(adjacency).expect("graph6 decoding yields a simple graph"))
}

/// Encodes the graph structure (weights are not part of graph6).
pub fn to_graph6(g: &WeightedGraph) -> String {
    let n = g.order();
    let mut out = String::new();
    // n <= 32 always fits the one-character header
    out.push((n as u8 + BIAS) as char);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push((acc + BIAS) as char);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        acc <<= 6 - k % 6;
        out.push((acc + BIAS) as char);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(k4.order(), 4);
        assert_eq!(k4.edge_count(), 6);

        let p4 = parse_graph6("Ch").unwrap();
        assert_eq!(p4.edges(), vec![(0, 1), (1, 2), (2, 3)]);

        let k1 = parse_graph6("@").unwrap();
        assert_eq!(k1.order(), 1);
        assert_eq!(k1.edge_count(), 0);

        assert_eq!(parse_graph6("?").unwrap().order(), 0);
        assert!(parse_graph6("@").unwrap().weights().iter().all(|&w| w == 0));
    }

    #[test]
    fn encoding_matches_reference_strings() {
        // Outputs of the reference codec for these graphs.
        let c5 =
            WeightedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], vec![0; 5])
                .unwrap();
        assert_eq!(to_graph6(&c5), "Dhc");
        assert_eq!(to_graph6(&parse_graph6("C~").unwrap()), "C~");
        assert_eq!(to_graph6(&parse_graph6("Ch").unwrap()), "Ch");
        assert_eq!(parse_graph6("Dhc").unwrap(), c5);
    }

    #[test]
    fn errors_are_distinct() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6("~?"), Err(Graph6Error::MalformedHeader));
        assert!(matches!(
            parse_graph6("C~ "),
            Err(Graph6Error::TrailingGarbage(1))
        ));
        assert!(matches!(
            parse_graph6("D"),
            Err(Graph6Error::Truncated {
                expected: 2,
                found: 0
            })
        ));
        assert!(matches!(
            parse_graph6("C\u{7f}"),
            Err(Graph6Error::InvalidCharacter { position: 1, .. })
        ));
        assert_eq!(parse_graph6("a"), Err(Graph6Error::TooLarge(34)));
        assert_eq!(parse_graph6("~?@?"), Err(Graph6Error::TooLarge(64)));
        assert!(parse_graph6("B_").is_ok());
        assert_eq!(parse_graph6("B`"), Err(Graph6Error::NonzeroPadding));
    }

    #[test]
    fn long_header_small_graph() {
        // `~??B` is the 18-bit header for n = 3; "w" encodes the triangle.
        assert_eq!(parse_graph6("~??Bw").unwrap().edge_count(), 3);
    }
}
