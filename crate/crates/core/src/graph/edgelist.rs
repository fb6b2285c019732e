//! Plain-text edge lists: one `u v` pair per line, 0-indexed, undirected.
//! `#` starts a comment. A `# nodes: N` comment fixes the node count so that
//! trailing isolated nodes survive a round trip; otherwise the count is the
//! largest endpoint plus one.

use std::fmt::Write as _;
use std::path::Path;

use super::{Graph, GraphError, NodeId};

const NODES_DIRECTIVE: &str = "nodes:";

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (content, comment) = match raw.find('#') {
            Some(pos) => (&raw[..pos], Some(&raw[pos + 1..])),
            None => (raw, None),
        };
        if let Some(rest) = comment.and_then(|c| c.trim().strip_prefix(NODES_DIRECTIVE)) {
            let n = rest.trim().parse::<usize>().map_err(|e| GraphError::Parse {
                line: line_no,
                message: format!("bad node count directive: {e}"),
            })?;
            declared = Some(n);
        }
        let mut fields = content.split_whitespace();
        let Some(first) = fields.next() else { continue };
        let parse = |tok: &str| {
            tok.parse::<NodeId>().map_err(|e| GraphError::Parse {
                line: line_no,
                message: format!("bad node id {tok:?}: {e}"),
            })
        };
        let u = parse(first)?;
        let v = parse(fields.next().ok_or_else(|| GraphError::Parse {
            line: line_no,
            message: "expected two node ids".into(),
        })?)?;
        if let Some(extra) = fields.next() {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("unexpected token {extra:?}"),
            });
        }
        edges.push((u, v));
    }
    let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = declared.unwrap_or(inferred);
    Graph::from_edge_list(&edges, n)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| GraphError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list(&text)
}

/// Serializes the canonical edge list, preceded by a node-count directive.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {NODES_DIRECTIVE} {}", g.node_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
