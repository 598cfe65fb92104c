//! Graph file formats.
//!
//! JSON:
//! `{"vertices":[{"id":1,"colour":"v1"},...],"edges":[{"u":1,"v":2,"colour":"e1"},...]}`
//!
//! Plain text: a header line `n d`, then `v <id> <colour>` lines, then
//! `e <u> <v> <colour>` lines. Blank lines and `#` comments are ignored.

use serde::{Deserialize, Serialize};

use super::ColouredGraph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonVertex {
    pub id: usize,
    pub colour: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonEdge {
    pub u: usize,
    pub v: usize,
    pub colour: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<JsonVertex>,
    #[serde(default)]
    pub edges: Vec<JsonEdge>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<ColouredGraph> {
        let n = self.vertices.len();
        let mut labels: Vec<Option<String>> = vec![None; n];
        for vx in &self.vertices {
            if vx.id == 0 || vx.id > n {
                return Err(Error::Validation(format!(
                    "vertex id {} outside 1..={n} (vertex ids must be contiguous)",
                    vx.id
                )));
            }
            if labels[vx.id - 1].replace(vx.colour.clone()).is_some() {
                return Err(Error::Validation(format!(
                    "vertex {} listed (and coloured) twice",
                    vx.id
                )));
            }
        }
        let labels: Vec<String> = labels
            .into_iter()
            .map(|l| l.expect("all ids seen"))
            .collect();
        let edges: Vec<(usize, usize, String)> = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, e.colour.clone()))
            .collect();
        ColouredGraph::new(n, &labels, &edges)
    }
}

impl From<&ColouredGraph> for GraphJson {
    fn from(g: &ColouredGraph) -> Self {
        let dv = g.num_vertex_colours();
        GraphJson {
            vertices: (1..=g.n())
                .map(|v| JsonVertex {
                    id: v,
                    colour: format!("v{}", g.vertex_colour(v)),
                })
                .collect(),
            edges: g
                .edges()
                .map(|(u, v, c)| JsonEdge {
                    u,
                    v,
                    colour: format!("e{}", c - dv),
                })
                .collect(),
        }
    }
}

impl ColouredGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), format!("column {}: {e}", e.column())))?;
        raw.to_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph JSON serializes")
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut vertices: Vec<(usize, String, usize)> = Vec::new();
        let mut edges: Vec<(usize, usize, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str, what: &str| {
                s.parse::<usize>().map_err(|_| {
                    Error::parse(
                        lineno,
                        format!("field `{what}`: expected an integer, got `{s}`"),
                    )
                })
            };
            if header.is_none() {
                if fields.len() != 2 {
                    return Err(Error::parse(lineno, "header must be `n d`"));
                }
                header = Some((num(fields[0], "n")?, num(fields[1], "d")?));
                continue;
            }
            match fields.as_slice() {
                ["v", id, colour] => {
                    if !edges.is_empty() {
                        return Err(Error::parse(lineno, "vertex line after edge lines"));
                    }
                    vertices.push((num(id, "id")?, colour.to_string(), lineno));
                }
                ["e", u, v, colour] => edges.push((num(u, "u")?, num(v, "v")?, colour.to_string())),
                _ => {
                    return Err(Error::parse(
                        lineno,
                        format!("expected `v <id> <colour>` or `e <u> <v> <colour>`, got `{line}`"),
                    ))
                }
            }
        }
        let (n, d) = header.ok_or_else(|| Error::parse(1, "missing header `n d`"))?;
        if vertices.len() != n {
            return Err(Error::Validation(format!(
                "header declares {n} vertices but {} vertex lines given",
                vertices.len()
            )));
        }
        let json = GraphJson {
            vertices: vertices
                .into_iter()
                .map(|(id, colour, _)| JsonVertex { id, colour })
                .collect(),
            edges: edges
                .into_iter()
                .map(|(u, v, colour)| JsonEdge { u, v, colour })
                .collect(),
        };
        let g = json.to_graph()?;
        if g.num_colours() != d {
            return Err(Error::Validation(format!(
                "header declares {d} colours but {} are used",
                g.num_colours()
            )));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let json = GraphJson::from(self);
        let mut out = format!("{} {}\n", self.n(), self.num_colours());
        for v in &json.vertices {
            out.push_str(&format!("v {} {}\n", v.id, v.colour));
        }
        for e in &json.edges {
            out.push_str(&format!("e {} {} {}\n", e.u, e.v, e.colour));
        }
        out
    }

    /// Parses either format, sniffing JSON by a leading `{`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_text(text)
        }
    }
}
