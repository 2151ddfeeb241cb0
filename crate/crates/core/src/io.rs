//! Plain-text hypergraph format.
//!
//! ```text
//! # optional comments
//! n k
//! v1 v2 .. vk
//! ```
//!
//! One edge per line, vertices ascending. Blank lines and lines starting with
//! `#` are ignored.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing \"n k\" header")]
    MissingHeader,
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: HypergraphError,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn to_text(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", h.n(), h.k()).unwrap();
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn write_text<W: Write>(h: &Hypergraph, mut w: W) -> io::Result<()> {
    w.write_all(to_text(h).as_bytes())
}

pub fn read_text<R: BufRead>(r: R) -> Result<Hypergraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let nums = trimmed
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| ParseError::Syntax {
                    line: lineno,
                    message: format!("not a vertex index: {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(ParseError::Syntax {
                        line: lineno,
                        message: "expected header \"n k\"".into(),
                    });
                }
                header = Some((nums[0], nums[1]));
            }
            Some((n, k)) => {
                if nums.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(ParseError::Syntax {
                        line: lineno,
                        message: "edge vertices must be strictly ascending".into(),
                    });
                }
                // validate eagerly to report the offending line
                Hypergraph::new(n, k, [&nums]).map_err(|source| ParseError::Invalid {
                    line: lineno,
                    source,
                })?;
                edges.push(nums);
            }
        }
    }
    let (n, k) = header.ok_or(ParseError::MissingHeader)?;
    Hypergraph::new(n, k, &edges).map_err(|source| ParseError::Invalid { line: 1, source })
}

pub fn parse_text(text: &str) -> Result<Hypergraph, ParseError> {
    read_text(text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let h = Hypergraph::new(5, 3, [[0, 1, 2], [2, 3, 4], [0, 3, 4]]).unwrap();
        let text = to_text(&h);
        assert!(text.starts_with("5 3\n"));
        assert_eq!(parse_text(&text).unwrap(), h);
    }

    #[test]
    fn comments_and_blank_lines() {
        let h = parse_text("# cycle\n\n4 2\n0 1\n# mid\n1 2\n2 3\n0 3\n").unwrap();
        assert_eq!(h.edge_count(), 4);
    }

    #[test]
    fn header_only_is_empty_graph() {
        let h = parse_text("6 3\n").unwrap();
        assert_eq!((h.n(), h.k(), h.edge_count()), (6, 3, 0));
    }

    #[test]
    fn errors_name_lines() {
        assert!(matches!(parse_text(""), Err(ParseError::MissingHeader)));
        assert!(matches!(
            parse_text("4 2\n0 x\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_text("4 2\n1 0\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_text("4 2\n0 1\n0 9\n"),
            Err(ParseError::Invalid { line: 3, .. })
        ));
        assert!(matches!(
            parse_text("4 2\n0 1 2\n"),
            Err(ParseError::Invalid { line: 2, .. })
        ));
    }
}
