//! Directed relay networks with exact capacities.
//!
//! [`GraphDoc`] is the unchecked wire form (the JSON graph format);
//! [`Digraph`] is the validated, immutable form every algorithm consumes.
//! Vertices of a `Digraph` are indexed in lexicographic order of their ids,
//! so "smaller index" and "lexicographically smaller id" coincide.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::capacity::Capacity;
use crate::error::{Error, Result};

/// Adjacency access shared by [`Digraph`] and the router's mutable line network.
pub trait Network {
    fn vertex_count(&self) -> usize;
    fn vertex_name(&self, v: usize) -> &str;
    fn successors(&self, v: usize) -> &[(usize, Capacity)];
    fn predecessors(&self, v: usize) -> &[(usize, Capacity)];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub from: String,
    pub to: String,
    pub cap: Capacity,
}

/// JSON graph format. Unknown fields are ignored on input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    pub source: String,
    pub destination: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Capacity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genspec: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SelfLoop(String),
    ParallelEdge(String, String),
    NonPositiveCapacity(String, String),
    UnknownEndpoint(String),
    DuplicateVertex(String),
    MissingTerminal(&'static str, String),
    TerminalsCoincide(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop(v) => write!(f, "self-loop at {v}"),
            Violation::ParallelEdge(a, b) => write!(f, "parallel edge {a}->{b}"),
            Violation::NonPositiveCapacity(a, b) => write!(f, "nonpositive capacity on {a}->{b}"),
            Violation::UnknownEndpoint(v) => write!(f, "edge endpoint {v} is not a declared node"),
            Violation::DuplicateVertex(v) => write!(f, "duplicate node {v}"),
            Violation::MissingTerminal(role, v) => write!(f, "missing terminal: {role} {v} is not a node"),
            Violation::TerminalsCoincide(v) => write!(f, "source and destination are both {v}"),
        }
    }
}

/// Lists every structural problem in `doc`; empty means valid.
pub fn validate(doc: &GraphDoc) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut nodes = BTreeSet::new();
    for n in &doc.nodes {
        if !nodes.insert(n.as_str()) {
            violations.push(Violation::DuplicateVertex(n.clone()));
        }
    }
    if !nodes.contains(doc.source.as_str()) {
        violations.push(Violation::MissingTerminal("source", doc.source.clone()));
    }
    if !nodes.contains(doc.destination.as_str()) {
        violations.push(Violation::MissingTerminal("destination", doc.destination.clone()));
    }
    if doc.source == doc.destination {
        violations.push(Violation::TerminalsCoincide(doc.source.clone()));
    }
    let mut seen = BTreeSet::new();
    for e in &doc.edges {
        for end in [&e.from, &e.to] {
            if !nodes.contains(end.as_str()) {
                violations.push(Violation::UnknownEndpoint(end.clone()));
            }
        }
        if e.from == e.to {
            violations.push(Violation::SelfLoop(e.from.clone()));
        }
        if !seen.insert((e.from.as_str(), e.to.as_str())) {
            violations.push(Violation::ParallelEdge(e.from.clone(), e.to.clone()));
        }
        if !e.cap.is_positive() {
            violations.push(Violation::NonPositiveCapacity(e.from.clone(), e.to.clone()));
        }
    }
    violations
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    out: Vec<Vec<(usize, Capacity)>>,
    inc: Vec<Vec<(usize, Capacity)>>,
    source: usize,
    destination: usize,
    edge_count: usize,
}

impl Digraph {
    pub fn from_doc(doc: &GraphDoc) -> Result<Self> {
        let violations = validate(doc);
        if !violations.is_empty() {
            return Err(Error::InvalidGraph(violations));
        }
        let mut names = doc.nodes.clone();
        names.sort();
        let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut out = vec![Vec::new(); names.len()];
        let mut inc = vec![Vec::new(); names.len()];
        for e in &doc.edges {
            let (u, v) = (index[&e.from], index[&e.to]);
            out[u].push((v, e.cap.clone()));
            inc[v].push((u, e.cap.clone()));
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_by_key(|(w, _)| *w);
        }
        Ok(Digraph {
            source: index[&doc.source],
            destination: index[&doc.destination],
            edge_count: doc.edges.len(),
            names,
            index,
            out,
            inc,
        })
    }

    /// Convenience constructor from borrowed ids.
    pub fn build(nodes: &[&str], edges: &[(&str, &str, Capacity)], source: &str, destination: &str) -> Result<Self> {
        Self::from_doc(&GraphDoc {
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(a, b, c)| EdgeDoc { from: a.to_string(), to: b.to_string(), cap: c.clone() })
                .collect(),
            source: source.to_string(),
            destination: destination.to_string(),
            threshold: None,
            genspec: None,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    /// Canonical document: nodes sorted, edges sorted by (from, to).
    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            nodes: self.names.clone(),
            edges: self
                .edges()
                .map(|(u, v, c)| EdgeDoc { from: self.names[u].clone(), to: self.names[v].clone(), cap: c.clone() })
                .collect(),
            source: self.names[self.source].clone(),
            destination: self.names[self.destination].clone(),
            threshold: None,
            genspec: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn destination(&self) -> usize {
        self.destination
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn out_edges(&self, v: usize) -> &[(usize, Capacity)] {
        &self.out[v]
    }

    pub fn in_edges(&self, v: usize) -> &[(usize, Capacity)] {
        &self.inc[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc[v].len()
    }

    pub fn capacity(&self, u: usize, v: usize) -> Option<&Capacity> {
        let list = &self.out[u];
        list.binary_search_by_key(&v, |(w, _)| *w).ok().map(|i| &list[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.capacity(u, v).is_some()
    }

    /// All edges in (tail, head) index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Capacity)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, list)| list.iter().map(move |(v, c)| (u, *v, c)))
    }

    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path> {
        let vertices = names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| Error::InvalidPath(format!("unknown vertex {}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        let path = Path::new(vertices);
        self.check_path(&path)?;
        Ok(path)
    }

    /// A path needs at least one edge and every step must be an edge.
    pub fn check_path(&self, path: &Path) -> Result<()> {
        let vs = path.vertices();
        if vs.len() < 2 {
            return Err(Error::InvalidPath("a path needs at least one edge".into()));
        }
        if let Some(&bad) = vs.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(Error::InvalidPath(format!("vertex index {bad} out of range")));
        }
        for w in vs.windows(2) {
            if !self.has_edge(w[0], w[1]) {
                return Err(Error::InvalidPath(format!("{} -> {} is not an edge", self.names[w[0]], self.names[w[1]])));
            }
        }
        Ok(())
    }

    /// Capacities of the path's edges, in order.
    pub fn path_capacities(&self, path: &Path) -> Result<Vec<Capacity>> {
        self.check_path(path)?;
        Ok(path.vertices().windows(2).map(|w| self.capacity(w[0], w[1]).unwrap().clone()).collect())
    }
}

impl Network for Digraph {
    fn vertex_count(&self) -> usize {
        self.names.len()
    }
    fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }
    fn successors(&self, v: usize) -> &[(usize, Capacity)] {
        &self.out[v]
    }
    fn predecessors(&self, v: usize) -> &[(usize, Capacity)] {
        &self.inc[v]
    }
}

/// Vertex sequence in some graph. Simplicity is checked, never assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(vertices: Vec<usize>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.0.len());
        self.0.iter().all(|v| seen.insert(*v))
    }

    pub fn names<'a>(&self, graph: &'a Digraph) -> Vec<&'a str> {
        self.0.iter().map(|&v| graph.name(v)).collect()
    }
}

/// Whether a valid path of `graph` visits each vertex once.
pub fn is_simple_path(graph: &Digraph, path: &Path) -> Result<bool> {
    graph.check_path(path)?;
    Ok(path.is_simple())
}
