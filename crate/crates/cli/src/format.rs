//! Plain-text graph format.
//!
//! A graph file starts with a header line `n m` (vertex count, edge count)
//! followed by exactly `m` lines `u v` with `0 <= u < v < n`. Blank lines
//! and lines starting with `#` are ignored everywhere. Rendering always
//! emits edges in the order the graph stores them, so parse and render
//! round-trip byte for byte.

use adpart::{build_graph, Graph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] adpart::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the text format, reporting the 1-based line of the first problem.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut rows = text.lines().enumerate().filter_map(|(idx, raw)| {
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            None
        } else {
            Some((idx + 1, body))
        }
    });

    let (header_line, header) = rows
        .next()
        .ok_or_else(|| parse_err(1, "missing header line `n m`"))?;
    let mut fields = header.split_whitespace();
    let n: usize = fields
        .next()
        .unwrap()
        .parse()
        .map_err(|_| parse_err(header_line, "vertex count is not an integer"))?;
    let m: usize = fields
        .next()
        .ok_or_else(|| parse_err(header_line, "header needs both a vertex and an edge count"))?
        .parse()
        .map_err(|_| parse_err(header_line, "edge count is not an integer"))?;
    if fields.next().is_some() {
        return Err(parse_err(header_line, "header has trailing fields"));
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, body) = rows
            .next()
            .ok_or_else(|| parse_err(header_line, format!("expected {m} edge lines")))?;
        let mut fields = body.split_whitespace();
        let u: u32 = fields
            .next()
            .unwrap()
            .parse()
            .map_err(|_| parse_err(line, "edge endpoint is not an integer"))?;
        let v: u32 = fields
            .next()
            .ok_or_else(|| parse_err(line, "edge line needs two endpoints"))?
            .parse()
            .map_err(|_| parse_err(line, "edge endpoint is not an integer"))?;
        if fields.next().is_some() {
            return Err(parse_err(line, "edge line has trailing fields"));
        }
        if u > v {
            return Err(parse_err(line, format!("endpoints must satisfy u < v, got {u} {v}")));
        }
        edges.push((u, v));
    }
    if let Some((line, _)) = rows.next() {
        return Err(parse_err(line, format!("more than the declared {m} edges")));
    }

    Ok(build_graph(n, &edges)?)
}

/// Renders a graph in the text format, one edge per line after the header.
pub fn render_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use adpart::complete_graph;

    #[test]
    fn round_trips_through_text() {
        let g = complete_graph(5);
        let text = render_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(render_graph(&back), text);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let text = "# a triangle\n3 3\n\n0 1\n# middle note\n0 2\n1 2\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn reports_the_offending_line() {
        let text = "3 3\n0 1\n1 0\n1 2\n";
        match parse_graph(text) {
            Err(FormatError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn self_loops_and_duplicates_fail_structurally() {
        let loops = "2 1\n1 1\n";
        assert!(matches!(
            parse_graph(loops),
            Err(FormatError::Graph(adpart::Error::SelfLoop(1)))
        ));
        let dup = "3 2\n0 1\n0 1\n";
        assert!(matches!(
            parse_graph(dup),
            Err(FormatError::Graph(adpart::Error::DuplicateEdge(0, 1)))
        ));
    }

    #[test]
    fn wrong_edge_counts_fail() {
        assert!(parse_graph("3 2\n0 1\n").is_err());
        assert!(parse_graph("3 1\n0 1\n1 2\n").is_err());
        assert!(parse_graph("").is_err());
    }
}
