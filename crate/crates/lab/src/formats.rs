//! Reading and writing graphs, coloured graphs, edge colourings and
//! reduction instances.
//!
//! Graphs come either as text (`p <n> <m>` followed by `m` lines `u v` with
//! `u < v`) or as JSON `{"n": .., "edges": [[u, v], ..]}`.

use std::fs;
use std::path::Path;

use fracture_lab_core::fracture::{Fracture, FractureError};
use fracture_lab_core::gadgets::{GadgetError, GadgetKind, InstanceMeta, ReductionInstance};
use fracture_lab_core::graph::{EdgeColoring, GraphError, VertexColoring};
use fracture_lab_core::{Graph, QColoredGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: expected header `p <n> <m>`")]
    Header { line: usize },
    #[error("line {line}: expected an edge `u v`")]
    EdgeLine { line: usize },
    #[error("line {line}: edge endpoints must satisfy u < v")]
    EdgeOrder { line: usize },
    #[error("header announces {expected} edges but {got} were listed")]
    EdgeCount { expected: usize, got: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("edge ({0}, {1}) of the colouring is not a host edge")]
    UnknownEdge(usize, usize),
    #[error("host edge ({0}, {1}) is coloured more than once")]
    EdgeColouredTwice(usize, usize),
    #[error("host edge ({0}, {1}) has no colour")]
    EdgeUncoloured(usize, usize),
    #[error("unknown gadget kind `{0}`")]
    UnknownKind(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("fracture: {0}")]
    Fracture(#[from] FractureError),
    #[error("instance: {0}")]
    Gadget(#[from] GadgetError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn parse_graph_text(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(FormatError::Header { line: 1 })?;
    let h: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match h.as_slice() {
        ["p", n, m] => match (n.parse::<usize>(), m.parse::<usize>()) {
            (Ok(n), Ok(m)) => (n, m),
            _ => return Err(FormatError::Header { line: hline }),
        },
        _ => return Err(FormatError::Header { line: hline }),
    };
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let (u, v) = match parts.as_slice() {
            [u, v] => match (u.parse::<usize>(), v.parse::<usize>()) {
                (Ok(u), Ok(v)) => (u, v),
                _ => return Err(FormatError::EdgeLine { line }),
            },
            _ => return Err(FormatError::EdgeLine { line }),
        };
        if u >= v {
            return Err(FormatError::EdgeOrder { line });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCount {
            expected: m,
            got: edges.len(),
        });
    }
    Ok(Graph::new(n, edges)?)
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut s = format!("p {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDoc {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, FormatError> {
        Ok(Graph::new(self.n, self.edges.iter().copied())?)
    }
}

/// Parses either format, picked by the first non-blank character.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<GraphDoc>(text)?.to_graph()
    } else {
        parse_graph_text(text)
    }
}

pub fn load_graph(path: &Path) -> Result<Graph, FormatError> {
    parse_graph(&read_file(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredDoc {
    pub q: GraphDoc,
    pub host: GraphDoc,
    pub assignment: Vec<usize>,
    #[serde(default)]
    pub surjective: bool,
}

impl ColoredDoc {
    pub fn from_colored(g: &QColoredGraph) -> Self {
        ColoredDoc {
            q: GraphDoc::from_graph(g.q()),
            host: GraphDoc::from_graph(&g.graph),
            assignment: g.coloring.assignment.clone(),
            surjective: g.coloring.surjective,
        }
    }

    pub fn to_colored(&self) -> Result<QColoredGraph, FormatError> {
        let q = self.q.to_graph()?;
        let host = self.host.to_graph()?;
        let coloring =
            VertexColoring::with_flag(&host, q, self.assignment.clone(), self.surjective)?;
        Ok(QColoredGraph {
            graph: host,
            coloring,
        })
    }
}

pub fn load_colored(path: &Path) -> Result<QColoredGraph, FormatError> {
    serde_json::from_str::<ColoredDoc>(&read_file(path)?)?.to_colored()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoringDoc {
    pub palette: usize,
    pub colors: Vec<(usize, usize, usize)>,
}

impl EdgeColoringDoc {
    pub fn from_coloring(host: &Graph, c: &EdgeColoring) -> Self {
        let colors = host
            .edges()
            .iter()
            .zip(&c.colors)
            .map(|(&(u, v), &k)| (u, v, k))
            .collect();
        EdgeColoringDoc {
            palette: c.palette,
            colors,
        }
    }

    /// Matches each listed edge (in either orientation) to a host edge; every
    /// host edge must be listed once.
    pub fn to_coloring(&self, host: &Graph) -> Result<EdgeColoring, FormatError> {
        let mut colors = vec![None; host.m()];
        for &(u, v, k) in &self.colors {
            let e = if u < host.n() && v < host.n() {
                host.edge_index(u, v)
            } else {
                None
            };
            let e = e.ok_or(FormatError::UnknownEdge(u, v))?;
            if colors[e].replace(k).is_some() {
                let (a, b) = host.edge(e);
                return Err(FormatError::EdgeColouredTwice(a, b));
            }
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(e, c)| {
                c.ok_or_else(|| {
                    let (a, b) = host.edge(e);
                    FormatError::EdgeUncoloured(a, b)
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EdgeColoring::new(host, self.palette, colors)?)
    }
}

pub fn load_edge_coloring(path: &Path, host: &Graph) -> Result<EdgeColoring, FormatError> {
    serde_json::from_str::<EdgeColoringDoc>(&read_file(path)?)?.to_coloring(host)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaDoc {
    pub k: usize,
    pub d: usize,
    pub a: usize,
    pub b: usize,
    pub cycle: Vec<usize>,
    pub junctions: Vec<usize>,
    pub source: Option<usize>,
    pub sources: Vec<usize>,
    pub parents: Vec<usize>,
    pub source_images: Vec<usize>,
    pub edge_colors: Vec<u8>,
}

/// A reduction instance. `tau` uses the fracture text encoding over `q`;
/// `gamma_e` is derived on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub kind: String,
    pub pattern: GraphDoc,
    pub delta: GraphDoc,
    pub q: GraphDoc,
    pub tau: String,
    pub gamma: Vec<Option<usize>>,
    #[serde(default)]
    pub meta: MetaDoc,
}

impl InstanceDoc {
    pub fn from_instance(i: &ReductionInstance) -> Self {
        let m = &i.meta;
        InstanceDoc {
            kind: i.kind.name().to_string(),
            pattern: GraphDoc::from_graph(&i.pattern),
            delta: GraphDoc::from_graph(&i.delta),
            q: GraphDoc::from_graph(&i.q),
            tau: i.tau.encode(&i.q),
            gamma: i.gamma.clone(),
            meta: MetaDoc {
                k: m.k,
                d: m.d,
                a: m.a,
                b: m.b,
                cycle: m.cycle.clone(),
                junctions: m.junctions.clone(),
                source: m.source,
                sources: m.sources.clone(),
                parents: m.parents.clone(),
                source_images: m.source_images.clone(),
                edge_colors: m.edge_colors.clone(),
            },
        }
    }

    pub fn to_instance(&self) -> Result<ReductionInstance, FormatError> {
        let kind = GadgetKind::from_name(&self.kind)
            .ok_or_else(|| FormatError::UnknownKind(self.kind.clone()))?;
        let q = self.q.to_graph()?;
        let tau = Fracture::decode(&q, &self.tau)?;
        let m = &self.meta;
        let meta = InstanceMeta {
            k: m.k,
            d: m.d,
            a: m.a,
            b: m.b,
            cycle: m.cycle.clone(),
            junctions: m.junctions.clone(),
            source: m.source,
            sources: m.sources.clone(),
            parents: m.parents.clone(),
            source_images: m.source_images.clone(),
            edge_colors: m.edge_colors.clone(),
        };
        Ok(ReductionInstance::from_parts(
            kind,
            self.pattern.to_graph()?,
            self.delta.to_graph()?,
            q,
            tau,
            self.gamma.clone(),
            meta,
        )?)
    }
}

pub fn load_instance(path: &Path) -> Result<ReductionInstance, FormatError> {
    serde_json::from_str::<InstanceDoc>(&read_file(path)?)?.to_instance()
}
