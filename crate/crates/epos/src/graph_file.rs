//! Plain-text graph files: the vertex count on the first line, then one
//! `u v` edge per line. Blank lines and lines starting with `#` are skipped.

use std::path::Path;

use epos_core::graph::Graph;

use crate::CliError;

pub fn parse_graph(text: &str) -> Result<Graph, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let bad = |line, message: String| CliError::GraphFile { line, message };
    let (line, first) = lines.next().ok_or_else(|| bad(1, "missing vertex count".into()))?;
    let n: usize = first.parse().map_err(|_| bad(line, format!("expected a vertex count, found {first:?}")))?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(bad(line, format!("expected \"u v\", found {l:?}")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| bad(line, format!("bad vertex {s:?}")));
        edges.push((parse(u)?, parse(v)?));
    }
    Ok(Graph::new(n, edges)?)
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_triangle() {
        let g = parse_graph("3\n0 1\n1 2\n\n# closing edge\n2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_graph(""), Err(CliError::GraphFile { .. })));
        assert!(matches!(parse_graph("x\n"), Err(CliError::GraphFile { line: 1, .. })));
        assert!(matches!(parse_graph("3\n0 1 2\n"), Err(CliError::GraphFile { line: 2, .. })));
        assert!(matches!(parse_graph("3\n0 a\n"), Err(CliError::GraphFile { line: 2, .. })));
        assert!(matches!(parse_graph("3\n0 3\n"), Err(CliError::Core(_))));
        assert!(matches!(parse_graph("3\n0 1\n1 0\n"), Err(CliError::Core(_))));
    }
}
