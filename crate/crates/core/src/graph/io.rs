use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// JSON graph file: `{ "n": 4, "edges": [[1,2],[2,3]] }` with 1-based endpoints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        GraphFile {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphFile> for Graph {
    type Error = GraphError;

    fn try_from(file: GraphFile) -> Result<Self, GraphError> {
        let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(file.n, &edges)
    }
}

/// Parses either the JSON format or the plain edge-list format (first line
/// `n`, then one `i j` pair per line). Blank lines and `#` comments are
/// ignored in the edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        return Graph::try_from(file);
    }
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| GraphError::Parse("missing vertex count".into()))?
        .parse()
        .map_err(|e| GraphError::Parse(format!("vertex count: {e}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(GraphError::Parse(format!("expected 'i j', got '{line}'")));
        }
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| GraphError::Parse(format!("'{s}': {e}")))
        };
        edges.push((parse(fields[0])?, parse(fields[1])?));
    }
    Graph::from_edges(n, &edges)
}
