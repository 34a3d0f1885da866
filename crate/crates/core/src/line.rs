//! Line digraphs of terminal-augmented networks.
//!
//! Each vertex of the line digraph is an edge `i -> j` of the base network
//! (named `i|j`); `i|j -> j|k` is an edge whenever the two base edges are
//! consecutive, and it carries the half-harmonic combination of the two base
//! capacities. The bottleneck of a line path is then exactly the HD
//! capacity of the base path it spells out.

use std::collections::HashMap;

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{Digraph, EdgeDoc, GraphDoc, Path};

/// Separator between tail and head ids in line-vertex names.
pub const LINE_NAME_SEPARATOR: char = '|';

fn fresh_name(graph: &Digraph, base: &str) -> String {
    let mut name = format!("{base}'");
    while graph.index_of(&name).is_some() {
        name.push('\'');
    }
    name
}

/// Adds `S'` and `D'` with unbounded links `S' -> S` and `D -> D'`, making
/// them the new terminals. Colliding names get extra primes.
pub fn augment_terminals(graph: &Digraph) -> Digraph {
    let mut doc = graph.to_doc();
    let s_prime = fresh_name(graph, &doc.source);
    let mut d_prime = fresh_name(graph, &doc.destination);
    while d_prime == s_prime {
        d_prime.push('\'');
    }
    doc.nodes.push(s_prime.clone());
    doc.nodes.push(d_prime.clone());
    doc.edges.push(EdgeDoc { from: s_prime.clone(), to: doc.source.clone(), cap: Capacity::Unbounded });
    doc.edges.push(EdgeDoc { from: doc.destination.clone(), to: d_prime.clone(), cap: Capacity::Unbounded });
    doc.source = s_prime;
    doc.destination = d_prime;
    Digraph::from_doc(&doc).expect("augmentation preserves validity")
}

#[derive(Clone, Debug)]
pub struct LineDigraph {
    base: Digraph,
    graph: Digraph,
    origin: Vec<(usize, usize)>,
    by_edge: HashMap<(usize, usize), usize>,
}

impl LineDigraph {
    pub fn base(&self) -> &Digraph {
        &self.base
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// Base edge `(tail, head)` represented by line vertex `v`.
    pub fn origin(&self, v: usize) -> (usize, usize) {
        self.origin[v]
    }

    pub fn vertex_of_edge(&self, tail: usize, head: usize) -> Option<usize> {
        self.by_edge.get(&(tail, head)).copied()
    }

    /// `v_{S'S}`.
    pub fn source(&self) -> usize {
        self.graph.source()
    }

    /// `v_{DD'}`.
    pub fn destination(&self) -> usize {
        self.graph.destination()
    }
}

pub fn line_vertex_name(tail: &str, head: &str) -> String {
    format!("{tail}{LINE_NAME_SEPARATOR}{head}")
}

pub fn build_line_digraph(base: &Digraph) -> Result<LineDigraph> {
    let (s, d) = (base.source(), base.destination());
    if base.in_degree(s) != 0 || base.out_degree(s) != 1 {
        return Err(Error::NotAugmented(format!("source {} must have exactly one outgoing and no incoming link", base.name(s))));
    }
    if base.out_degree(d) != 0 || base.in_degree(d) != 1 {
        return Err(Error::NotAugmented(format!("destination {} must have exactly one incoming and no outgoing link", base.name(d))));
    }
    let name_of = |(u, v): (usize, usize)| line_vertex_name(base.name(u), base.name(v));
    let nodes: Vec<String> = base.edges().map(|(u, v, _)| name_of((u, v))).collect();
    let mut edges = Vec::new();
    for (i, j, c_ij) in base.edges() {
        for (k, c_jk) in base.out_edges(j) {
            edges.push(EdgeDoc { from: name_of((i, j)), to: name_of((j, *k)), cap: c_ij.half_harmonic(c_jk) });
        }
    }
    let source = name_of((s, base.out_edges(s)[0].0));
    let destination = name_of((base.in_edges(d)[0].0, d));
    let doc = GraphDoc { nodes, edges, source, destination, threshold: None, genspec: None };
    let graph = Digraph::from_doc(&doc).map_err(|e| match e {
        Error::InvalidGraph(v) => Error::InvalidParameter(format!(
            "vertex ids containing '{LINE_NAME_SEPARATOR}' make line-vertex names ambiguous: {}",
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
        )),
        other => other,
    })?;
    let mut origin = vec![(0, 0); graph.vertex_count()];
    let mut by_edge = HashMap::with_capacity(origin.len());
    for (u, v, _) in base.edges() {
        let lv = graph.index_of(&name_of((u, v))).expect("line vertex exists");
        origin[lv] = (u, v);
        by_edge.insert((u, v), lv);
    }
    Ok(LineDigraph { base: base.clone(), graph, origin, by_edge })
}

/// Chains the base edges of a line path back into a base vertex sequence.
pub fn map_line_path_to_base(ldg: &LineDigraph, line_path: &Path) -> Result<Path> {
    ldg.graph.check_path(line_path).or_else(|e| if line_path.len() == 1 { Ok(()) } else { Err(e) })?;
    let vs = line_path.vertices();
    let mut out = Vec::with_capacity(vs.len() + 1);
    out.push(ldg.origin(vs[0]).0);
    out.extend(vs.iter().map(|&v| ldg.origin(v).1));
    Ok(Path::new(out))
}

/// The line path spelling out a base path.
pub fn embed_base_path(ldg: &LineDigraph, base_path: &Path) -> Result<Path> {
    ldg.base.check_path(base_path)?;
    let line: Vec<usize> = base_path
        .vertices()
        .windows(2)
        .map(|w| ldg.vertex_of_edge(w[0], w[1]).expect("checked edge"))
        .collect();
    Ok(Path::new(line))
}

/// An edge joining two non-consecutive vertices of a path.
///
/// `tail`/`head` are graph vertices; `tail_pos`/`head_pos` are their
/// positions along the path the chord was found on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Chord {
    pub tail: usize,
    pub head: usize,
    pub tail_pos: usize,
    pub head_pos: usize,
}

impl Chord {
    pub fn earlier(&self) -> usize {
        self.tail_pos.min(self.head_pos)
    }

    pub fn later(&self) -> usize {
        self.tail_pos.max(self.head_pos)
    }

    /// Runs from the later path vertex back to the earlier one.
    pub fn is_back(&self) -> bool {
        self.tail_pos > self.head_pos
    }

    /// Number of path vertices from `earlier` to `later`, inclusive.
    pub fn span_len(&self) -> usize {
        self.later() - self.earlier() + 1
    }
}

/// Chords of `path` under an arbitrary adjacency test, ordered by
/// (later position, descending earlier position, tail, head).
pub(crate) fn chords_with<F>(path: &[usize], mut adjacent: F) -> Vec<Chord>
where
    F: FnMut(usize, usize) -> bool,
{
    let mut chords = Vec::new();
    for (p, &u) in path.iter().enumerate() {
        for (q, &v) in path.iter().enumerate() {
            if p.abs_diff(q) >= 2 && adjacent(u, v) {
                chords.push(Chord { tail: u, head: v, tail_pos: p, head_pos: q });
            }
        }
    }
    chords.sort_by(|a, b| {
        a.later()
            .cmp(&b.later())
            .then(b.earlier().cmp(&a.earlier()))
            .then(a.tail.cmp(&b.tail))
            .then(a.head.cmp(&b.head))
    });
    chords
}

/// All chords of a simple path in the line digraph, in either orientation.
/// Empty iff the path is chordless.
pub fn find_chords(ldg: &LineDigraph, path: &Path) -> Result<Vec<Chord>> {
    if path.len() > 1 {
        ldg.graph.check_path(path)?;
    }
    if !path.is_simple() {
        return Err(Error::InvalidPath("chord detection needs a simple line path".into()));
    }
    Ok(chords_with(path.vertices(), |u, v| ldg.graph.has_edge(u, v)))
}
