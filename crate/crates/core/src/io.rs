//! Text formats for edge lists and node degree lists.
//!
//! Edge list:
//!
//! ```text
//! # n=<N> m=<M> seed=<u64>
//! # any further comment lines
//! <u> <v>
//! ```
//!
//! with `u < v` and lines in ascending `(u, v)` order. Degree list: a
//! `# n=<N> dist=<desc> seed=<u64>` header and one degree per line in
//! node-label order. Writing a parsed canonical file reproduces it byte for
//! byte.

use std::fmt::Write as _;

use crate::degree_sequence::DegreeList;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListFile {
    pub graph: Graph,
    pub seed: Option<u64>,
    /// Extra `#` lines after the main header, stored verbatim.
    pub comments: Vec<String>,
}

impl EdgeListFile {
    pub fn new(graph: Graph, seed: Option<u64>) -> EdgeListFile {
        EdgeListFile { graph, seed, comments: Vec::new() }
    }

    pub fn with_comment(mut self, line: impl Into<String>) -> EdgeListFile {
        let line = line.into();
        self.comments.push(if line.starts_with('#') { line } else { format!("# {line}") });
        self
    }

    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = format!("# n={} m={}", g.node_count(), g.edge_count());
        if let Some(seed) = self.seed {
            write!(out, " seed={seed}").unwrap();
        }
        out.push('\n');
        for c in &self.comments {
            out.push_str(c);
            out.push('\n');
        }
        for e in g.edges() {
            writeln!(out, "{} {}", e.u, e.v).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<EdgeListFile> {
        let mut header: Option<(usize, Option<usize>, Option<u64>)> = None;
        let mut comments = Vec::new();
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::Parse { line: line_no, message };
            let line = raw.trim_end();
            if line.starts_with('#') {
                match (header.is_none(), parse_header(line, &["n", "m", "seed"])) {
                    (true, Some(fields)) if fields.contains_key("n") => {
                        let n: usize = num(&fields, "n").map_err(err)?.expect("present");
                        let m = num(&fields, "m").map_err(err)?;
                        let seed = num(&fields, "seed").map_err(err)?;
                        header = Some((n, m, seed));
                        graph = Some(Graph::new(n).map_err(|e| err(e.to_string()))?);
                    }
                    _ => comments.push(line.to_string()),
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let g = graph.as_mut().ok_or_else(|| err("edge before the `# n=...` header".into()))?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = fields.as_slice() else {
                return Err(err(format!("expected two node labels, got {line:?}")));
            };
            let a: usize = a.parse().map_err(|_| err(format!("bad node label {a:?}")))?;
            let b: usize = b.parse().map_err(|_| err(format!("bad node label {b:?}")))?;
            g.add_edge(a, b).map_err(|e| err(e.to_string()))?;
        }
        let (_, m, seed) = header.ok_or(Error::Parse { line: 1, message: "missing `# n=<N>` header".into() })?;
        let graph = graph.expect("set with header");
        if let Some(m) = m {
            if m != graph.edge_count() {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("header says m={m} but {} edges were read", graph.edge_count()),
                });
            }
        }
        Ok(EdgeListFile { graph, seed, comments })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeListFile {
    pub degrees: DegreeList,
    pub dist: String,
    pub seed: Option<u64>,
    pub comments: Vec<String>,
}

impl DegreeListFile {
    pub fn to_text(&self) -> String {
        let mut out = format!("# n={} dist={}", self.degrees.len(), self.dist);
        if let Some(seed) = self.seed {
            write!(out, " seed={seed}").unwrap();
        }
        out.push('\n');
        for c in &self.comments {
            out.push_str(c);
            out.push('\n');
        }
        for d in self.degrees.as_slice() {
            writeln!(out, "{d}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<DegreeListFile> {
        let mut header: Option<(usize, String, Option<u64>)> = None;
        let mut comments = Vec::new();
        let mut degrees = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::Parse { line: line_no, message };
            let line = raw.trim_end();
            if line.starts_with('#') {
                match (header.is_none(), parse_header(line, &["n", "dist", "seed"])) {
                    (true, Some(fields)) if fields.contains_key("n") => {
                        let n = num(&fields, "n").map_err(err)?.expect("present");
                        let seed = num(&fields, "seed").map_err(err)?;
                        let dist = fields.get("dist").cloned().unwrap_or_default();
                        header = Some((n, dist, seed));
                    }
                    _ => comments.push(line.to_string()),
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            degrees.push(line.trim().parse().map_err(|_| err(format!("bad degree {line:?}")))?);
        }
        let (n, dist, seed) = header.ok_or(Error::Parse { line: 1, message: "missing `# n=<N>` header".into() })?;
        if n != degrees.len() {
            return Err(Error::Parse {
                line: 1,
                message: format!("header says n={n} but {} degrees were read", degrees.len()),
            });
        }
        Ok(DegreeListFile { degrees: DegreeList::new(degrees), dist, seed, comments })
    }
}

/// `# k=v k=v ...` with keys drawn from `keys` in that order; anything else
/// is not a header.
fn parse_header(line: &str, keys: &[&str]) -> Option<std::collections::BTreeMap<String, String>> {
    let mut fields = std::collections::BTreeMap::new();
    let mut allowed = keys.iter();
    for token in line.trim_start_matches('#').split_whitespace() {
        let (k, v) = token.split_once('=')?;
        allowed.find(|&&a| a == k)?;
        fields.insert(k.to_string(), v.to_string());
    }
    Some(fields)
}

fn num<T: std::str::FromStr>(
    fields: &std::collections::BTreeMap<String, String>,
    key: &str,
) -> std::result::Result<Option<T>, String> {
    fields.get(key).map(|v| v.parse().map_err(|_| format!("bad value for {key}: {v:?}"))).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::n1;
    use proptest::prelude::*;

    #[test]
    fn edge_list_layout() {
        let text = EdgeListFile::new(n1(), Some(7)).with_comment("stage=gm").to_text();
        assert_eq!(text, "# n=8 m=7 seed=7\n# stage=gm\n0 1\n0 2\n0 3\n0 4\n4 5\n4 6\n4 7\n");
        let parsed = EdgeListFile::parse(&text).unwrap();
        assert_eq!(parsed.graph, n1());
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("# n=3 m=1\n0 1 2\n", 2),
            ("# n=3\n0 x\n", 2),
            ("# n=3\n0 1\n1 1\n", 3),
            ("# n=3\n0 1\n1 0\n", 3),
            ("# n=3\n0 5\n", 2),
            ("0 1\n", 1),
            ("# n=3 m=2\n0 1\n", 1),
        ];
        for (text, line) in cases {
            match EdgeListFile::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn seedless_header_and_reversed_edges() {
        let parsed = EdgeListFile::parse("# n=3\n2 1\n").unwrap();
        assert_eq!(parsed.seed, None);
        assert_eq!(parsed.to_text(), "# n=3 m=1\n1 2\n");
    }

    #[test]
    fn degree_list_layout() {
        let f = DegreeListFile {
            degrees: vec![4, 1, 1, 1, 4, 1, 1, 1].into(),
            dist: "powerlaw:2.6,3".into(),
            seed: Some(3),
            comments: vec!["# deg_min=1".into()],
        };
        let text = f.to_text();
        assert!(text.starts_with("# n=8 dist=powerlaw:2.6,3 seed=3\n# deg_min=1\n4\n1\n"));
        assert_eq!(DegreeListFile::parse(&text).unwrap(), f);
        assert!(matches!(DegreeListFile::parse("# n=2\n1\n"), Err(Error::Parse { .. })));
    }

    proptest! {
        #[test]
        fn canonical_text_round_trips(
            n in 1usize..40,
            pairs in prop::collection::vec((0usize..40, 0usize..40), 0..80),
            seed in any::<Option<u64>>(),
        ) {
            let mut g = Graph::new(n).unwrap();
            for (a, b) in pairs {
                let _ = g.add_edge(a % n, b % n);
            }
            let text = EdgeListFile::new(g.clone(), seed).with_comment("# provenance x=1").to_text();
            let parsed = EdgeListFile::parse(&text).unwrap();
            prop_assert_eq!(&parsed.graph, &g);
            prop_assert_eq!(parsed.to_text(), text);
        }
    }
}
