//! Input documents: graphs and join specifications, as JSON or edge lists.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use spectral_join::{Graph, JoinPart, JoinSpec, VertexSet};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A vertex given either by index or by label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartDocument {
    pub graph: GraphDocument,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<VertexRef>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JoinDocument {
    #[serde(rename = "H")]
    pub host: GraphDocument,
    pub parts: Vec<PartDocument>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    Json,
    Edges,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDocument {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: None,
        }
    }

    pub fn to_graph(&self, field: &str) -> Result<Graph, CliError> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.n {
                return Err(CliError::parse(format!(
                    "{field}.labels has {} entries but n is {}",
                    labels.len(),
                    self.n
                )));
            }
            let mut seen = HashSet::new();
            if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
                return Err(CliError::parse(format!("{field}.labels repeats {dup:?}")));
            }
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(self.n, &edges)
            .map_err(|e| CliError::parse(format!("{field}.edges: {e}")))
    }

    fn resolve(&self, r: &VertexRef, field: &str) -> Result<usize, CliError> {
        match r {
            VertexRef::Index(i) if *i < self.n => Ok(*i),
            VertexRef::Index(i) => Err(CliError::parse(format!(
                "{field}: vertex {i} is out of range for n = {}",
                self.n
            ))),
            VertexRef::Label(name) => {
                let index: HashMap<&str, usize> = self
                    .labels
                    .iter()
                    .flatten()
                    .enumerate()
                    .map(|(i, l)| (l.as_str(), i))
                    .collect();
                index
                    .get(name.as_str())
                    .copied()
                    .ok_or_else(|| CliError::parse(format!("{field}: unknown vertex label {name:?}")))
            }
        }
    }
}

impl JoinDocument {
    pub fn to_spec(&self) -> Result<JoinSpec, CliError> {
        let host = self.host.to_graph("H")?;
        let parts = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, part)| {
                let field = format!("parts[{i}]");
                let graph = part.graph.to_graph(&format!("{field}.graph"))?;
                let subset = match &part.subset {
                    None => VertexSet::full(graph.order()),
                    Some(refs) => {
                        let indices = refs
                            .iter()
                            .map(|r| part.graph.resolve(r, &format!("{field}.S")))
                            .collect::<Result<Vec<_>, _>>()?;
                        VertexSet::from_indices(graph.order(), &indices)
                            .map_err(|e| CliError::parse(format!("{field}.S: {e}")))?
                    }
                };
                JoinPart::new(graph, subset).map_err(|e| CliError::parse(format!("{field}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        JoinSpec::new(host, parts).map_err(|e| CliError::parse(e.to_string()))
    }

    /// Labels of the joined graph, when every part is labeled.
    pub fn joined_labels(&self) -> Option<Vec<String>> {
        self.parts
            .iter()
            .map(|p| p.graph.labels.clone())
            .collect::<Option<Vec<_>>>()
            .map(|v| v.concat())
    }
}

pub fn parse_graph(text: &str, format: InputFormat) -> Result<GraphDocument, CliError> {
    match format {
        InputFormat::Json => serde_json::from_str(text).map_err(|e| CliError::parse(format!("graph document: {e}"))),
        InputFormat::Edges => parse_edge_list(text),
    }
}

pub fn parse_join(text: &str) -> Result<JoinDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::parse(format!("join document: {e}")))
}

/// `n` on the first line, then one `u v` pair per line. Blank lines and `#`
/// comments are skipped.
fn parse_edge_list(text: &str) -> Result<GraphDocument, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, first) = lines
        .next()
        .ok_or_else(|| CliError::parse("edge list is empty; expected the vertex count"))?;
    let n = first
        .parse()
        .map_err(|_| CliError::parse(format!("line {line}: expected a vertex count, got {first:?}")))?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let nums: Vec<&str> = l.split_whitespace().collect();
        let pair = match nums.as_slice() {
            [u, v] => u.parse().ok().zip(v.parse().ok()),
            _ => None,
        };
        let (u, v) = pair.ok_or_else(|| CliError::parse(format!("line {line}: expected `u v`, got {l:?}")))?;
        edges.push([u, v]);
    }
    Ok(GraphDocument { n, edges, labels: None })
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// DOT with one cluster per join part.
pub fn emit_dot(g: &Graph, spec: &JoinSpec, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph join {\n");
    for (i, (part, start)) in spec.parts().iter().zip(spec.offsets()).enumerate() {
        out.push_str(&format!("  subgraph cluster_{i} {{\n    label=\"part {i}\";\n"));
        for v in start..start + part.graph.order() {
            match labels {
                Some(l) => out.push_str(&format!("    {v} [label=\"{}\"];\n", l[v].replace('"', "\\\""))),
                None => out.push_str(&format!("    {v};\n")),
            }
        }
        out.push_str("  }\n");
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_parsing() {
        let doc = parse_graph("3\n0 1\n# comment\n1 2\n", InputFormat::Edges).unwrap();
        assert_eq!(doc.to_graph("g").unwrap(), Graph::path(3));
        let err = parse_graph("3\n0 1 2\n", InputFormat::Edges).unwrap_err();
        assert!(err.to_string().contains("line 2"));
        assert!(parse_graph("x\n", InputFormat::Edges).is_err());
        assert!(parse_graph("", InputFormat::Edges).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::petersen();
        let text = serde_json::to_string(&GraphDocument::from_graph(&g)).unwrap();
        let back = parse_graph(&text, InputFormat::Json).unwrap().to_graph("g").unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn labels_resolve() {
        let text = r#"{"H": {"n": 2, "edges": [[0, 1]]},
            "parts": [{"graph": {"n": 2, "edges": [], "labels": ["a", "b"]}, "S": ["b"]},
                      {"graph": {"n": 1, "edges": []}, "S": [0]}]}"#;
        let spec = parse_join(text).unwrap().to_spec().unwrap();
        assert_eq!(spec.parts()[0].subset.to_vec(), vec![1]);

        let bad = text.replace(r#""S": ["b"]"#, r#""S": ["z"]"#);
        assert!(parse_join(&bad).unwrap().to_spec().is_err());
        let bad = text.replace(r#"["a", "b"]"#, r#"["a", "a"]"#);
        assert!(parse_join(&bad).unwrap().to_spec().is_err());
    }

    #[test]
    fn invalid_edges_name_the_field() {
        let err = parse_graph(r#"{"n": 2, "edges": [[0, 0]]}"#, InputFormat::Json)
            .unwrap()
            .to_graph("H")
            .unwrap_err();
        assert!(err.to_string().contains("H.edges"));
    }
}
