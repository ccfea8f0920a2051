//! Hyperedge-list text format: one hyperedge per line, whitespace-separated
//! decimal node ids, `#` starts a comment line.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::Hypergraph;
use crate::error::{Error, Result};

pub fn parse_hyperedge_str(text: &str) -> Result<Hypergraph> {
    let mut edges = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let members = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: idx + 1,
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        edges.push(members);
    }
    Hypergraph::from_hyperedges(edges)
}

pub fn parse_hyperedge_file(path: impl AsRef<Path>) -> Result<Hypergraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_hyperedge_str(&text)
}

/// Renders `h` in original ids, optionally preceded by `# `-prefixed header lines.
pub fn to_hyperedge_string(h: &Hypergraph, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(header) = header {
        for line in header.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for members in h.edges() {
        let mut first = true;
        for &v in members {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{}", h.original_id(v));
        }
        out.push('\n');
    }
    out
}

pub fn serialize_hyperedge_file(
    h: &Hypergraph,
    path: impl AsRef<Path>,
    header: Option<&str>,
) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_hyperedge_string(h, header)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::h0;
    use proptest::prelude::*;

    #[test]
    fn parses_h0() {
        let h = parse_hyperedge_str("1 2 3\n3 4\n4 5 6\n").unwrap();
        assert_eq!(h, h0());
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let h = parse_hyperedge_str("# comment\n\n1 2\n").unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.labels(), &[1, 2]);
    }

    #[test]
    fn reports_bad_token_with_line() {
        match parse_hyperedge_str("1 two 3") {
            Err(Error::Parse { line, token }) => {
                assert_eq!(line, 1);
                assert_eq!(token, "two");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_hyperedge_str("1 2\n3 -4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn missing_file_names_path() {
        let err = parse_hyperedge_file("/definitely/not/here.txt").unwrap_err();
        assert!(err.to_string().contains("/definitely/not/here.txt"));
    }

    #[test]
    fn file_round_trip_with_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h0.txt");
        serialize_hyperedge_file(&h0(), &path, Some("spec: test")).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# spec: test\n"));
        assert_eq!(parse_hyperedge_file(&path).unwrap(), h0());
    }

    proptest! {
        #[test]
        fn parse_serialize_parse_is_stable(
            edges in prop::collection::vec(prop::collection::vec(0u64..40, 1..6), 1..12)
        ) {
            let text: String = edges
                .iter()
                .map(|e| e.iter().map(u64::to_string).collect::<Vec<_>>().join(" ") + "\n")
                .collect();
            if let Ok(first) = parse_hyperedge_str(&text) {
                let again = parse_hyperedge_str(&to_hyperedge_string(&first, None)).unwrap();
                prop_assert_eq!(again, first);
            }
        }
    }
}
