//! The text graph format shared by the whole toolset.
//!
//! ```text
//! c optional comments
//! p <n> <m>
//! e <u> <v>              (m lines, 1-based endpoints)
//! r <v1> ... <v_{k+1}>   (optional roots; k is inferred)
//! b <new> <c1> ... <ck>  (optional certificate lines, in build order)
//! ```
//!
//! The emitter writes edges ascending and round-trips byte-identically
//! with the parser, modulo comments.

use girthlab_core::graph::GraphError;
use girthlab_core::ktree::{certify_low_treewidth, CertStep, KTreeViolation};
use girthlab_core::{Graph, RootedPartialKTree};
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected}, got `{got}`")]
    Malformed { line: usize, expected: &'static str, got: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: unexpected directive `{directive}`")]
    UnknownDirective { line: usize, directive: String },
    #[error("line {line}: {error}")]
    Graph { line: usize, error: GraphError },
    #[error("missing `p` header line")]
    MissingHeader,
    #[error("declared {declared} edges but found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("certificate invalid: {0}")]
    Certificate(KTreeViolation),
    #[error("roots given without certificate and no width-{k} certificate could be built")]
    Uncertifiable { k: usize },
}

#[derive(Debug, Clone)]
pub enum ParsedGraph {
    Plain(Graph),
    Rooted(RootedPartialKTree),
}

impl ParsedGraph {
    pub fn graph(&self) -> &Graph {
        match self {
            ParsedGraph::Plain(g) => g,
            ParsedGraph::Rooted(t) => t.graph(),
        }
    }

    pub fn rooted(&self) -> Option<&RootedPartialKTree> {
        match self {
            ParsedGraph::Plain(_) => None,
            ParsedGraph::Rooted(t) => Some(t),
        }
    }
}

pub fn parse_graph_file(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut declared_edges = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut roots: Option<Vec<usize>> = None;
    let mut steps: Vec<CertStep> = Vec::new();
    let mut edge_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut parts = trimmed.split_ascii_whitespace();
        let directive = parts.next().unwrap();
        let numbers: Result<Vec<usize>, _> = parts.map(|t| t.parse::<usize>()).collect();
        let numbers = numbers.map_err(|_| ParseError::Malformed {
            line,
            expected: "whitespace-separated numbers",
            got: trimmed.to_string(),
        })?;
        match directive {
            "p" => {
                if numbers.len() != 2 {
                    return Err(ParseError::Malformed {
                        line,
                        expected: "`p <n> <m>`",
                        got: trimmed.to_string(),
                    });
                }
                n = Some(numbers[0]);
                declared_edges = numbers[1];
            }
            "e" => {
                let nn = n.ok_or(ParseError::MissingHeader)?;
                if numbers.len() != 2 {
                    return Err(ParseError::Malformed {
                        line,
                        expected: "`e <u> <v>`",
                        got: trimmed.to_string(),
                    });
                }
                let (u, v) = (numbers[0], numbers[1]);
                for w in [u, v] {
                    if w == 0 || w > nn {
                        return Err(ParseError::VertexRange { line, vertex: w, n: nn });
                    }
                }
                edges.push((u - 1, v - 1));
                edge_line = line;
            }
            "r" => {
                let nn = n.ok_or(ParseError::MissingHeader)?;
                if numbers.is_empty() {
                    return Err(ParseError::Malformed {
                        line,
                        expected: "`r <v1> ... <v_{k+1}>`",
                        got: trimmed.to_string(),
                    });
                }
                for &w in &numbers {
                    if w == 0 || w > nn {
                        return Err(ParseError::VertexRange { line, vertex: w, n: nn });
                    }
                }
                roots = Some(numbers.iter().map(|&w| w - 1).collect());
            }
            "b" => {
                let nn = n.ok_or(ParseError::MissingHeader)?;
                if numbers.is_empty() {
                    return Err(ParseError::Malformed {
                        line,
                        expected: "`b <new> <c1> ... <ck>`",
                        got: trimmed.to_string(),
                    });
                }
                for &w in &numbers {
                    if w == 0 || w > nn {
                        return Err(ParseError::VertexRange { line, vertex: w, n: nn });
                    }
                }
                steps.push(CertStep {
                    vertex: numbers[0] - 1,
                    clique: numbers[1..].iter().map(|&w| w - 1).collect(),
                });
            }
            other => {
                return Err(ParseError::UnknownDirective { line, directive: other.to_string() })
            }
        }
    }

    let n = n.ok_or(ParseError::MissingHeader)?;
    if edges.len() != declared_edges {
        return Err(ParseError::EdgeCountMismatch { declared: declared_edges, found: edges.len() });
    }
    let graph =
        Graph::new(n, &edges).map_err(|error| ParseError::Graph { line: edge_line, error })?;
    match roots {
        None => Ok(ParsedGraph::Plain(graph)),
        Some(roots) => {
            let k = roots.len() - 1;
            if steps.is_empty() && n > k + 1 {
                // No certificate supplied: build one for small widths.
                match certify_low_treewidth(&graph, k, Some(&roots)) {
                    Some(t) => Ok(ParsedGraph::Rooted(t)),
                    None => Err(ParseError::Uncertifiable { k }),
                }
            } else {
                RootedPartialKTree::new(graph, k, roots, steps)
                    .map(ParsedGraph::Rooted)
                    .map_err(ParseError::Certificate)
            }
        }
    }
}

/// Parses a graph file treating the `r` line as a plain marked vertex set
/// (no certification), as the probe corpus wants.
pub fn parse_marked_graph(text: &str) -> Result<(Graph, Vec<usize>), ParseError> {
    // Strip certificate lines and capture the marks before the full parse.
    let without_roots: String = text
        .lines()
        .filter(|l| {
            let t = l.trim();
            !t.starts_with('r') && !t.starts_with('b')
        })
        .map(|l| format!("{l}\n"))
        .collect();
    let graph = match parse_graph_file(&without_roots)? {
        ParsedGraph::Plain(g) => g,
        ParsedGraph::Rooted(t) => t.graph().clone(),
    };
    let mut marked = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if let Some(rest) = t.strip_prefix("r ") {
            for tok in rest.split_ascii_whitespace() {
                let v: usize = tok.parse().map_err(|_| ParseError::Malformed {
                    line: idx + 1,
                    expected: "vertex numbers",
                    got: t.to_string(),
                })?;
                if v == 0 || v > graph.vertex_count() {
                    return Err(ParseError::VertexRange {
                        line: idx + 1,
                        vertex: v,
                        n: graph.vertex_count(),
                    });
                }
                marked.push(v - 1);
            }
        }
    }
    Ok((graph, marked))
}

pub fn emit_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p {} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn emit_rooted(t: &RootedPartialKTree) -> String {
    let mut out = emit_graph(t.graph());
    let roots: Vec<String> = t.roots().iter().map(|&r| (r + 1).to_string()).collect();
    let _ = writeln!(out, "r {}", roots.join(" "));
    for step in t.steps() {
        let clique: Vec<String> = step.clique.iter().map(|&c| (c + 1).to_string()).collect();
        let _ = writeln!(out, "b {} {}", step.vertex + 1, clique.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = parse_graph_file("p 2 1\ne 1 2\n").unwrap();
        assert!(matches!(&g, ParsedGraph::Plain(_)));
        assert_eq!(g.graph().edge_count(), 1);

        let g = parse_graph_file("p 2 1\ne 1 2\nr 1 2\n").unwrap();
        let t = g.rooted().unwrap();
        assert_eq!(t.k(), 1);
        assert_eq!(t.roots(), &[0, 1]);

        let err = parse_graph_file("p 2 1\ne 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 2, .. }));
    }

    #[test]
    fn round_trips() {
        let text = "p 4 3\ne 1 2\ne 2 3\ne 3 4\n";
        let parsed = parse_graph_file(text).unwrap();
        assert_eq!(emit_graph(parsed.graph()), text);

        let rooted = "p 3 2\ne 1 2\ne 2 3\nr 1 2\nb 3 2\n";
        let parsed = parse_graph_file(rooted).unwrap();
        assert_eq!(emit_rooted(parsed.rooted().unwrap()), rooted);

        // Comments are dropped but content survives.
        let noisy = "c hello\np 3 2\nc mid\ne 1 2\ne 2 3\n";
        let parsed = parse_graph_file(noisy).unwrap();
        assert_eq!(emit_graph(parsed.graph()), "p 3 2\ne 1 2\ne 2 3\n");
    }

    #[test]
    fn roots_without_certificate_get_certified() {
        let text = "p 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\nr 1 5 3\n";
        let parsed = parse_graph_file(text).unwrap();
        let t = parsed.rooted().unwrap();
        assert_eq!(t.k(), 2);
        t.validate().unwrap();

        // Uncertifiable roots are rejected.
        let text = "p 4 3\ne 1 2\ne 1 3\ne 1 4\nr 2 3 4\n";
        assert!(matches!(
            parse_graph_file(text),
            Err(ParseError::Uncertifiable { k: 2 })
        ));
    }

    #[test]
    fn bad_counts_and_ranges() {
        assert!(matches!(
            parse_graph_file("p 2 2\ne 1 2\n"),
            Err(ParseError::EdgeCountMismatch { .. })
        ));
        assert!(matches!(
            parse_graph_file("p 2 1\ne 1 7\n"),
            Err(ParseError::VertexRange { .. })
        ));
        assert!(matches!(parse_graph_file("e 1 2\n"), Err(ParseError::MissingHeader)));
    }
}
