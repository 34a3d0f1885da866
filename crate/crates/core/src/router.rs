//! Best half-duplex simple route by chordal-path elimination.
//!
//! The widest `v_{S'S} -> v_{DD'}` path of the line digraph maximises the
//! HD capacity over all base walks, simple or not. While that path spells a
//! non-simple base walk (it has a chord), the router removes the exact
//! offending span from the line digraph by replicating its intermediate
//! vertices, then repairs only the affected part of the widest-path tree.
//! When the tree path becomes chordless it maps back to the optimal simple
//! route.
//!
//! Chords are judged against the original line digraph through each
//! vertex's origin, so replicas never hide a repeated base vertex.

use std::collections::HashSet;

use serde::Serialize;

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Network, Path};
use crate::line::{augment_terminals, build_line_digraph, chords_with, map_line_path_to_base, Chord, LineDigraph};
use crate::metrics::hd_path_capacity;
use crate::widest::{resume_in_place, widest_path_tree, WidestPathTree};

pub const DEFAULT_ITERATION_BUDGET: u64 = 1_000_000;

/// Line digraph that grows replicas as spans are eliminated.
#[derive(Clone, Debug)]
pub struct LineNetwork {
    names: Vec<String>,
    origin: Vec<usize>,
    out: Vec<Vec<(usize, Capacity)>>,
    inc: Vec<Vec<(usize, Capacity)>>,
    original_count: usize,
    source: usize,
    destination: usize,
}

impl LineNetwork {
    pub fn from_line_digraph(ldg: &LineDigraph) -> Self {
        let g = ldg.graph();
        let n = g.vertex_count();
        LineNetwork {
            names: g.names().to_vec(),
            origin: (0..n).collect(),
            out: (0..n).map(|v| g.out_edges(v).to_vec()).collect(),
            inc: (0..n).map(|v| g.in_edges(v).to_vec()).collect(),
            original_count: n,
            source: ldg.source(),
            destination: ldg.destination(),
        }
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

    /// Vertex of the original line digraph that `v` copies (itself for originals).
    pub fn origin(&self, v: usize) -> usize {
        self.origin[v]
    }

    pub fn is_replica(&self, v: usize) -> bool {
        v >= self.original_count
    }

    pub fn replica_count(&self) -> usize {
        self.names.len() - self.original_count
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn capacity(&self, u: usize, v: usize) -> Option<&Capacity> {
        self.out[u].iter().find(|(w, _)| *w == v).map(|(_, c)| c)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.capacity(u, v).is_some()
    }

    fn add_vertex(&mut self, name: String, origin: usize) -> usize {
        self.names.push(name);
        self.origin.push(origin);
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        self.names.len() - 1
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: Capacity) {
        debug_assert!(!self.has_edge(u, v));
        self.out[u].push((v, cap.clone()));
        self.inc[v].push((u, cap));
    }

    fn remove_edge(&mut self, u: usize, v: usize) -> Option<Capacity> {
        let pos = self.out[u].iter().position(|(w, _)| *w == v)?;
        let (_, cap) = self.out[u].remove(pos);
        self.inc[v].retain(|(w, _)| *w != u);
        Some(cap)
    }

    /// Chords of `path` judged by adjacency of the origins in `line0`.
    pub fn chords(&self, line0: &LineDigraph, path: &[usize]) -> Vec<Chord> {
        let mut chords = chords_with(path, |u, v| line0.graph().has_edge(self.origin[u], self.origin[v]));
        chords.sort_by(|a, b| chord_order(self, a, b));
        chords
    }
}

impl Network for LineNetwork {
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

fn chord_order<N: Network>(net: &N, a: &Chord, b: &Chord) -> std::cmp::Ordering {
    a.later()
        .cmp(&b.later())
        .then(b.earlier().cmp(&a.earlier()))
        .then_with(|| net.vertex_name(a.tail).cmp(net.vertex_name(b.tail)))
        .then_with(|| net.vertex_name(a.head).cmp(net.vertex_name(b.head)))
}

/// The chord whose effect on the path concludes first: earliest later
/// endpoint, then the shortest span, then lexicographic edge id.
pub fn select_first_chord<N: Network>(net: &N, chords: &[Chord]) -> Result<Chord> {
    chords.iter().min_by(|a, b| chord_order(net, a, b)).copied().ok_or(Error::EmptyChordList)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub span: Vec<usize>,
    pub replicas: Vec<usize>,
    pub removed_edge: (usize, usize),
    pub added_edge: Option<(usize, usize)>,
}

impl Elimination {
    /// Later endpoint of the eliminated span.
    pub fn endpoint(&self) -> usize {
        *self.span.last().expect("span is non-empty")
    }
}

/// Makes the exact vertex sequence `path[earlier..=later]` unrealizable
/// while keeping every other route, capacity for capacity.
///
/// Intermediates get replicas chained like the originals; every in-edge of
/// an intermediate from outside the span is copied onto its replica; the
/// last original link into the endpoint is moved onto the last replica.
pub fn eliminate_chordal_subpath(net: &mut LineNetwork, path: &[usize], chord: &Chord, iteration: u64) -> Result<Elimination> {
    if chord.later() >= path.len() {
        return Err(Error::InvalidPath("chord positions lie outside the path".into()));
    }
    let span: Vec<usize> = path[chord.earlier()..=chord.later()].to_vec();
    let m = span.len();
    for w in span.windows(2) {
        if !net.has_edge(w[0], w[1]) {
            return Err(Error::InvalidPath(format!("{} -> {} is not an edge", net.name(w[0]), net.name(w[1]))));
        }
    }
    let endpoint = span[m - 1];
    if m == 2 {
        net.remove_edge(span[0], endpoint);
        return Ok(Elimination { span, replicas: Vec::new(), removed_edge: (path[chord.earlier()], endpoint), added_edge: None });
    }
    let in_span: HashSet<usize> = span.iter().copied().collect();
    let intermediates = &span[1..m - 1];
    let mut replicas = Vec::with_capacity(intermediates.len());
    for &u in intermediates {
        let origin = net.origin(u);
        let name = format!("{}#{}", net.names[origin], iteration);
        replicas.push(net.add_vertex(name, origin));
    }
    for i in 0..intermediates.len() - 1 {
        let cap = net.capacity(intermediates[i], intermediates[i + 1]).expect("span edge").clone();
        net.add_edge(replicas[i], replicas[i + 1], cap);
    }
    for (i, &u) in intermediates.iter().enumerate() {
        let incoming: Vec<(usize, Capacity)> =
            net.inc[u].iter().filter(|(w, _)| !in_span.contains(w)).cloned().collect();
        for (w, cap) in incoming {
            net.add_edge(w, replicas[i], cap);
        }
    }
    let last = intermediates[intermediates.len() - 1];
    let cap = net.remove_edge(last, endpoint).expect("span edge");
    let last_replica = replicas[replicas.len() - 1];
    net.add_edge(last_replica, endpoint, cap);
    Ok(Elimination { span, replicas, removed_edge: (last, endpoint), added_edge: Some((last_replica, endpoint)) })
}

/// Vertices whose tree entries must be recomputed after an elimination:
/// the new replicas, the span endpoint, and the endpoint's descendants.
pub fn compute_redo_set(tree: &WidestPathTree, endpoint: usize, replicas: &[usize]) -> HashSet<usize> {
    let mut redo: HashSet<usize> = tree.subtree(endpoint).into_iter().collect();
    redo.extend(replicas.iter().copied());
    redo
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub iteration: u64,
    /// (tail, head) line-vertex names of the selected chord.
    pub chord: (String, String),
    pub span_length: usize,
    pub replicas_added: usize,
    /// Tree capacity at the destination before this elimination.
    pub tree_capacity_at_destination: Capacity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteResult {
    pub path: Path,
    pub hd_capacity: Capacity,
    pub iterations: u64,
    pub replicas_created: usize,
    pub trace: Vec<TraceRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RouteOptions {
    pub max_iterations: u64,
    pub record_trace: bool,
}

impl Default for RouteOptions {
    fn default() -> Self {
        RouteOptions { max_iterations: DEFAULT_ITERATION_BUDGET, record_trace: false }
    }
}

pub enum Step {
    Done(RouteResult),
    Eliminated(TraceRecord),
}

/// Mutable state of one routing run.
pub struct Router<'g> {
    graph: &'g Digraph,
    line0: LineDigraph,
    net: LineNetwork,
    tree: WidestPathTree,
    iteration: u64,
    options: RouteOptions,
    trace: Vec<TraceRecord>,
}

impl<'g> Router<'g> {
    pub fn new(graph: &'g Digraph, options: RouteOptions) -> Result<Self> {
        let augmented = augment_terminals(graph);
        let line0 = build_line_digraph(&augmented)?;
        let net = LineNetwork::from_line_digraph(&line0);
        let tree = widest_path_tree(&net, net.source());
        Ok(Router { graph, line0, net, tree, iteration: 0, options, trace: Vec::new() })
    }

    pub fn network(&self) -> &LineNetwork {
        &self.net
    }

    pub fn line0(&self) -> &LineDigraph {
        &self.line0
    }

    pub fn tree(&self) -> &WidestPathTree {
        &self.tree
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    /// Tree capacity at `v_{DD'}`: an upper bound on every simple route
    /// still to be found. `None` when no S-D walk remains.
    pub fn destination_capacity(&self) -> Option<&Capacity> {
        self.tree.achieved(self.net.destination())
    }

    /// Current tree path from `v_{S'S}` to `v_{DD'}`.
    pub fn current_path(&self) -> Result<Vec<usize>> {
        Ok(self.tree.path_to(self.net.destination())?.into_vertices())
    }

    pub fn step(&mut self) -> Result<Step> {
        let path = self.current_path()?;
        let chords = self.net.chords(&self.line0, &path);
        if chords.is_empty() {
            return Ok(Step::Done(self.finish(&path)?));
        }
        if self.iteration >= self.options.max_iterations {
            return Err(Error::CycleBudgetExceeded(self.iteration));
        }
        let chord = select_first_chord(&self.net, &chords)?;
        self.iteration += 1;
        let before = self.tree.achieved(self.net.destination()).cloned().expect("destination reachable");
        let elim = eliminate_chordal_subpath(&mut self.net, &path, &chord, self.iteration)?;
        let redo = compute_redo_set(&self.tree, elim.endpoint(), &elim.replicas);
        resume_in_place(&self.net, &mut self.tree, &redo)?;
        let record = TraceRecord {
            iteration: self.iteration,
            chord: (self.net.name(chord.tail).to_string(), self.net.name(chord.head).to_string()),
            span_length: elim.span.len(),
            replicas_added: elim.replicas.len(),
            tree_capacity_at_destination: before,
        };
        if self.options.record_trace {
            self.trace.push(record.clone());
        }
        Ok(Step::Eliminated(record))
    }

    pub fn run(mut self) -> Result<RouteResult> {
        loop {
            if let Step::Done(result) = self.step()? {
                return Ok(result);
            }
        }
    }

    fn finish(&mut self, line_path: &[usize]) -> Result<RouteResult> {
        let collapsed = Path::new(line_path.iter().map(|&v| self.net.origin(v)).collect());
        let base = map_line_path_to_base(&self.line0, &collapsed)?;
        let aug = self.line0.base();
        let vs = base.vertices();
        let vertices = vs[1..vs.len() - 1]
            .iter()
            .map(|&v| self.graph.index_of(aug.name(v)).expect("augmented vertex maps back"))
            .collect();
        let path = Path::new(vertices);
        let hd_capacity = self.tree.achieved(self.net.destination()).cloned().expect("destination reachable");
        debug_assert_eq!(hd_path_capacity(self.graph, &path).ok().as_ref(), Some(&hd_capacity));
        Ok(RouteResult {
            path,
            hd_capacity,
            iterations: self.iteration,
            replicas_created: self.net.replica_count(),
            trace: std::mem::take(&mut self.trace),
        })
    }
}

pub fn best_hd_simple_path(graph: &Digraph) -> Result<RouteResult> {
    best_hd_simple_path_with(graph, RouteOptions::default())
}

pub fn best_hd_simple_path_with(graph: &Digraph, options: RouteOptions) -> Result<RouteResult> {
    Router::new(graph, options)?.run()
}

/// Whether some simple S-D path has HD capacity at least `threshold`.
pub fn hd_path_decide(graph: &Digraph, threshold: &Capacity) -> Result<bool> {
    hd_path_decide_with(graph, threshold, RouteOptions::default())
}

/// Stops as soon as the tree capacity at the destination drops below
/// `threshold`: eliminations never raise it.
pub fn hd_path_decide_with(graph: &Digraph, threshold: &Capacity, options: RouteOptions) -> Result<bool> {
    check_threshold(threshold)?;
    let mut router = Router::new(graph, options)?;
    loop {
        match router.destination_capacity() {
            None => return Ok(false),
            Some(c) if c < threshold => return Ok(false),
            Some(_) => {}
        }
        if let Step::Done(r) = router.step()? {
            return Ok(r.hd_capacity >= *threshold);
        }
    }
}

pub fn check_threshold(threshold: &Capacity) -> Result<()> {
    match threshold {
        Capacity::Finite(_) if threshold.is_positive() => Ok(()),
        Capacity::Finite(_) => Err(Error::InvalidParameter("threshold must be positive".into())),
        Capacity::Unbounded => Err(Error::InvalidParameter("threshold must be finite".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Capacity {
        Capacity::from_integer(n)
    }

    fn diamond() -> Digraph {
        Digraph::build(
            &["S", "a", "b", "D"],
            &[("S", "a", c(30)), ("a", "D", c(20)), ("S", "b", c(15)), ("b", "D", c(210))],
            "S",
            "D",
        )
        .unwrap()
    }

    #[test]
    fn diamond_picks_hd_route() {
        let g = diamond();
        let r = best_hd_simple_path(&g).unwrap();
        assert_eq!(r.path.names(&g), vec!["S", "b", "D"]);
        assert_eq!(r.hd_capacity, c(14));
        assert_eq!(r.iterations, 0);
        assert!(hd_path_decide(&g, &c(14)).unwrap());
        assert!(!hd_path_decide(&g, &"14.0001".parse().unwrap()).unwrap());
    }

    #[test]
    fn threshold_must_be_positive() {
        let g = diamond();
        assert!(matches!(hd_path_decide(&g, &c(0)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn unreachable_destination() {
        let g = Digraph::build(&["S", "a", "D"], &[("S", "a", c(1)), ("D", "a", c(1))], "S", "D").unwrap();
        assert!(matches!(best_hd_simple_path(&g), Err(Error::NoPath)));
        assert!(!hd_path_decide(&g, &c(1)).unwrap());
    }

    #[test]
    fn direct_link_only() {
        let g = Digraph::build(&["S", "D"], &[("S", "D", c(9))], "S", "D").unwrap();
        let r = best_hd_simple_path(&g).unwrap();
        assert_eq!(r.path.names(&g), vec!["S", "D"]);
        assert_eq!(r.hd_capacity, c(9));
    }

    #[test]
    fn select_first_chord_rules() {
        let g = diamond();
        assert!(matches!(select_first_chord(&g, &[]), Err(Error::EmptyChordList)));
        let single = Chord { tail: 0, head: 1, tail_pos: 4, head_pos: 1 };
        assert_eq!(select_first_chord(&g, &[single]).unwrap(), single);
        // same later endpoint, nested spans: the shorter span wins
        let outer = Chord { tail: 0, head: 1, tail_pos: 5, head_pos: 1 };
        let inner = Chord { tail: 2, head: 3, tail_pos: 5, head_pos: 3 };
        assert_eq!(select_first_chord(&g, &[outer, inner]).unwrap(), inner);
        // an earlier-concluding chord beats a shorter one concluding later
        let early = Chord { tail: 0, head: 1, tail_pos: 4, head_pos: 0 };
        let late_short = Chord { tail: 2, head: 3, tail_pos: 6, head_pos: 4 };
        assert_eq!(select_first_chord(&g, &[late_short, early]).unwrap(), early);
    }

    /// The worked example's line path: the back chord 32->21 concludes at
    /// position 6, the chord 42->25 only at position 7.
    #[test]
    fn running_example_chord_choice() {
        let g = Digraph::build(
            &["S", "1", "2", "3", "4", "5", "6", "D"],
            &[
                ("S", "4", c(1)),
                ("4", "2", c(1)),
                ("2", "1", c(1)),
                ("1", "6", c(1)),
                ("6", "3", c(1)),
                ("3", "2", c(1)),
                ("2", "5", c(1)),
                ("5", "D", c(1)),
            ],
            "S",
            "D",
        )
        .unwrap();
        let router = Router::new(&g, RouteOptions::default()).unwrap();
        let l0 = router.line0().graph();
        let names = ["S'|S", "S|4", "4|2", "2|1", "1|6", "6|3", "3|2", "2|5", "5|D", "D|D'"];
        let path: Vec<usize> = names.iter().map(|n| l0.index_of(n).unwrap()).collect();
        let chords = router.network().chords(router.line0(), &path);
        let named: Vec<(&str, &str)> = chords.iter().map(|ch| (l0.name(ch.tail), l0.name(ch.head))).collect();
        assert!(named.contains(&("3|2", "2|1")));
        assert!(named.contains(&("4|2", "2|5")));
        let first = select_first_chord(router.network(), &chords).unwrap();
        assert_eq!((l0.name(first.tail), l0.name(first.head)), ("3|2", "2|1"));
        let span: Vec<&str> = path[first.earlier()..=first.later()].iter().map(|&v| l0.name(v)).collect();
        assert_eq!(span, vec!["2|1", "1|6", "6|3", "3|2"]);
    }

    #[test]
    fn four_vertex_span_elimination_shape() {
        let g = Digraph::build(
            &["S", "1", "2", "3", "4", "5", "6", "D"],
            &[
                ("S", "4", c(1)),
                ("4", "2", c(1)),
                ("2", "1", c(1)),
                ("1", "6", c(1)),
                ("6", "3", c(1)),
                ("3", "2", c(1)),
                ("2", "5", c(1)),
                ("5", "D", c(1)),
            ],
            "S",
            "D",
        )
        .unwrap();
        let router = Router::new(&g, RouteOptions::default()).unwrap();
        let mut net = router.network().clone();
        let l0 = router.line0().graph();
        let names = ["S'|S", "S|4", "4|2", "2|1", "1|6", "6|3", "3|2", "2|5", "5|D", "D|D'"];
        let path: Vec<usize> = names.iter().map(|n| l0.index_of(n).unwrap()).collect();
        let chords = net.chords(router.line0(), &path);
        let first = select_first_chord(&net, &chords).unwrap();
        let edges_before = net.edge_count();
        let elim = eliminate_chordal_subpath(&mut net, &path, &first, 1).unwrap();
        assert_eq!(elim.replicas.len(), 2);
        let r: Vec<&str> = elim.replicas.iter().map(|&v| net.name(v)).collect();
        assert_eq!(r, vec!["1|6#1", "6|3#1"]);
        assert!(net.has_edge(elim.replicas[0], elim.replicas[1]));
        let (u, v) = elim.removed_edge;
        assert_eq!((net.name(u), net.name(v)), ("6|3", "3|2"));
        assert!(!net.has_edge(u, v));
        assert!(net.has_edge(elim.replicas[1], v));
        // no vertex outside the span feeds 1|6 or 6|3, so only the chain and the moved edge change
        assert_eq!(net.edge_count(), edges_before + 1);
        // the eliminated span can no longer be walked
        assert!(!path[first.earlier()..=first.later()].windows(2).all(|w| net.has_edge(w[0], w[1])));
    }

    #[test]
    fn redo_set_sizes() {
        let g = Digraph::build(
            &["S", "a", "b", "c", "d", "D"],
            &[("S", "a", c(9)), ("a", "b", c(8)), ("b", "c", c(7)), ("b", "d", c(7)), ("c", "D", c(6))],
            "S",
            "D",
        )
        .unwrap();
        let t = widest_path_tree(&g, g.source());
        let d = g.destination();
        assert_eq!(compute_redo_set(&t, d, &[100, 101]).len(), 3);
        let a = g.index_of("a").unwrap();
        // a has descendants b, c, d, D
        assert_eq!(compute_redo_set(&t, a, &[]).len(), 5);
    }
}
