use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::Error;

/// Interchange form: `{"vertices": N, "edges": [[i, j], ...], "labels": {...}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<usize, String>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self, Error> {
        Graph::from_edges(j.vertices, j.edges.into_iter().map(|[u, v]| (u, v)))?.with_labels(j.labels)
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson { vertices: g.vertex_count(), edges: g.edges().map(|(u, v)| [u, v]).collect(), labels: g.labels }
    }
}

pub(super) fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {name} {{");
    for v in g.vertices() {
        match g.label(v) {
            Some(l) => {
                let _ = writeln!(out, "  {v} [label=\"{}\"];", l.replace('"', "\\\""));
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
