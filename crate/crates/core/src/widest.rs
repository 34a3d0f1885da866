//! Max-min (widest path) Dijkstra.
//!
//! Ties between frontier labels of equal capacity go to fewer hops, then to
//! the lexicographically smaller vertex id; a vertex keeps its parent
//! unless a strictly better (capacity, hops, parent id) label arrives.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{Network, Path};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Label {
    cap: Capacity,
    hops: usize,
    parent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidestPathTree {
    root: usize,
    labels: Vec<Option<Label>>,
    order: Vec<usize>,
}

impl WidestPathTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_reachable(&self, v: usize) -> bool {
        self.labels.get(v).is_some_and(Option::is_some)
    }

    /// Best bottleneck capacity from the root; `None` when unreachable.
    pub fn achieved(&self, v: usize) -> Option<&Capacity> {
        self.labels.get(v)?.as_ref().map(|l| &l.cap)
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.labels.get(v)?.as_ref()?.parent
    }

    pub fn hops(&self, v: usize) -> Option<usize> {
        self.labels.get(v)?.as_ref().map(|l| l.hops)
    }

    /// Vertices in the order they were settled.
    pub fn expansion_order(&self) -> &[usize] {
        &self.order
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut kids = vec![Vec::new(); self.labels.len()];
        for v in 0..self.labels.len() {
            if let Some(p) = self.parent(v) {
                kids[p].push(v);
            }
        }
        kids
    }

    /// `v` and everything below it in the tree.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        // descendants settle after their ancestors
        let mut inside = vec![false; self.labels.len()];
        let mut out = vec![v];
        if v >= inside.len() {
            return out;
        }
        inside[v] = true;
        let start = self.order.iter().position(|&w| w == v).map_or(self.order.len(), |i| i + 1);
        for &w in &self.order[start..] {
            if self.parent(w).is_some_and(|p| inside[p]) {
                inside[w] = true;
                out.push(w);
            }
        }
        out
    }

    /// Root-to-`v` path by walking parent links.
    pub fn path_to(&self, v: usize) -> Result<Path> {
        if !self.is_reachable(v) {
            return Err(Error::NoPath);
        }
        let mut rev = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            rev.push(p);
            cur = p;
        }
        rev.reverse();
        Ok(Path::new(rev))
    }
}

pub fn tree_path(tree: &WidestPathTree, v: usize) -> Result<Path> {
    tree.path_to(v)
}

struct Entry {
    cap: Capacity,
    hops: usize,
    name: String,
    vertex: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // max-heap: wider first, then fewer hops, then smaller id
    fn cmp(&self, other: &Self) -> Ordering {
        self.cap
            .cmp(&other.cap)
            .then_with(|| other.hops.cmp(&self.hops))
            .then_with(|| other.name.cmp(&self.name))
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

fn better<N: Network>(g: &N, a: &Label, b: &Label) -> bool {
    match a.cap.cmp(&b.cap) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match a.hops.cmp(&b.hops) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match (a.parent, b.parent) {
                (Some(x), Some(y)) => g.vertex_name(x) < g.vertex_name(y),
                (None, Some(_)) => true,
                _ => false,
            },
        },
    }
}

struct Engine<'a, N: Network> {
    graph: &'a N,
    labels: Vec<Option<Label>>,
    done: Vec<bool>,
    order: Vec<usize>,
    heap: BinaryHeap<Entry>,
}

impl<'a, N: Network> Engine<'a, N> {
    fn new(graph: &'a N) -> Self {
        let n = graph.vertex_count();
        Engine { graph, labels: vec![None; n], done: vec![false; n], order: Vec::new(), heap: BinaryHeap::new() }
    }

    fn offer(&mut self, v: usize, label: Label) {
        let improves = match &self.labels[v] {
            None => true,
            Some(cur) => better(self.graph, &label, cur),
        };
        if improves {
            self.heap.push(Entry {
                cap: label.cap.clone(),
                hops: label.hops,
                name: self.graph.vertex_name(v).to_string(),
                vertex: v,
            });
            self.labels[v] = Some(label);
        }
    }

    fn run(&mut self) {
        while let Some(entry) = self.heap.pop() {
            let v = entry.vertex;
            if self.done[v] {
                continue;
            }
            let label = self.labels[v].clone().expect("queued vertex has a label");
            if label.cap != entry.cap || label.hops != entry.hops {
                continue;
            }
            self.done[v] = true;
            self.order.push(v);
            for (w, c) in self.graph.successors(v) {
                if self.done[*w] {
                    continue;
                }
                let cand = Label { cap: label.cap.min_with(c), hops: label.hops + 1, parent: Some(v) };
                self.offer(*w, cand);
            }
        }
    }

    fn finish(self, root: usize) -> WidestPathTree {
        WidestPathTree { root, labels: self.labels, order: self.order }
    }
}

pub fn widest_path_tree<N: Network>(graph: &N, root: usize) -> WidestPathTree {
    let mut engine = Engine::new(graph);
    engine.offer(root, Label { cap: Capacity::Unbounded, hops: 0, parent: None });
    engine.run();
    engine.finish(root)
}

/// Restarts the search with every vertex outside `redo` already settled at
/// its value in `previous`.
///
/// `graph` may have more vertices than `previous` (new vertices must be in
/// `redo`). Kept vertices must not hang below a redo vertex in `previous`.
pub fn resume_widest_path_tree<N: Network>(
    graph: &N,
    previous: &WidestPathTree,
    redo: &HashSet<usize>,
) -> Result<WidestPathTree> {
    let mut tree = previous.clone();
    resume_in_place(graph, &mut tree, redo)?;
    Ok(tree)
}

/// [`resume_widest_path_tree`] updating `tree` directly.
pub fn resume_in_place<N: Network>(graph: &N, tree: &mut WidestPathTree, redo: &HashSet<usize>) -> Result<()> {
    let n = graph.vertex_count();
    let old_n = tree.vertex_count();
    if old_n > n {
        return Err(Error::ResumePrecondition("previous tree has more vertices than the graph".into()));
    }
    if let Some(&v) = redo.iter().find(|&&v| v >= n) {
        return Err(Error::ResumePrecondition(format!("redo vertex {v} is not in the graph")));
    }
    if let Some(v) = (old_n..n).find(|v| !redo.contains(v)) {
        return Err(Error::ResumePrecondition(format!(
            "vertex {} is new but not scheduled for recomputation",
            graph.vertex_name(v)
        )));
    }
    let mut done = vec![true; n];
    for &v in redo {
        done[v] = false;
    }
    for v in 0..old_n {
        if let Some(p) = tree.parent(v) {
            if done[v] && !done[p] {
                return Err(Error::ResumePrecondition(format!(
                    "kept vertex {} depends on recomputed vertex {}",
                    graph.vertex_name(v),
                    graph.vertex_name(p)
                )));
            }
        }
    }
    let root = tree.root;
    let mut labels = std::mem::take(&mut tree.labels);
    labels.resize(n, None);
    for &v in redo {
        labels[v] = None;
    }
    let mut order = std::mem::take(&mut tree.order);
    order.retain(|v| done[*v]);
    let mut engine = Engine { graph, labels, done, order, heap: BinaryHeap::new() };

    let mut redo_sorted: Vec<usize> = redo.iter().copied().collect();
    redo_sorted.sort_unstable();
    for &v in &redo_sorted {
        if v == root {
            engine.offer(v, Label { cap: Capacity::Unbounded, hops: 0, parent: None });
            continue;
        }
        for (u, c) in graph.predecessors(v) {
            if !engine.done[*u] {
                continue;
            }
            if let Some(lu) = &engine.labels[*u] {
                let label = Label { cap: lu.cap.min_with(c), hops: lu.hops + 1, parent: Some(*u) };
                engine.offer(v, label);
            }
        }
    }
    engine.run();
    *tree = engine.finish(root);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Digraph;
    use crate::metrics::fd_path_capacity;

    fn c(n: i64) -> Capacity {
        Capacity::from_integer(n)
    }

    fn diamond() -> Digraph {
        Digraph::build(
            &["S", "a", "b", "D"],
            &[("S", "a", c(3)), ("a", "D", c(5)), ("S", "b", c(4)), ("b", "D", c(2))],
            "S",
            "D",
        )
        .unwrap()
    }

    #[test]
    fn diamond_prefers_wider_route() {
        let g = diamond();
        let t = widest_path_tree(&g, g.source());
        let d = g.destination();
        assert_eq!(t.achieved(d), Some(&c(3)));
        assert_eq!(tree_path(&t, d).unwrap().names(&g), vec!["S", "a", "D"]);
        assert_eq!(t.achieved(g.source()), Some(&Capacity::Unbounded));
        assert_eq!(t.parent(g.source()), None);
        assert_eq!(tree_path(&t, g.source()).unwrap().len(), 1);
    }

    #[test]
    fn single_path_gives_prefix_minima() {
        let g = Digraph::build(
            &["S", "a", "b", "D"],
            &[("S", "a", c(9)), ("a", "b", c(4)), ("b", "D", c(6))],
            "S",
            "D",
        )
        .unwrap();
        let t = widest_path_tree(&g, g.source());
        let got: Vec<_> = ["a", "b", "D"].iter().map(|n| t.achieved(g.index_of(n).unwrap()).cloned().unwrap()).collect();
        assert_eq!(got, vec![c(9), c(4), c(4)]);
    }

    #[test]
    fn unreachable_vertex_has_no_path() {
        let g = Digraph::build(&["S", "x", "D"], &[("S", "D", c(1)), ("x", "D", c(1))], "S", "D").unwrap();
        let t = widest_path_tree(&g, g.source());
        let x = g.index_of("x").unwrap();
        assert!(!t.is_reachable(x));
        assert!(matches!(tree_path(&t, x), Err(Error::NoPath)));
    }

    #[test]
    fn equal_capacity_ties_prefer_fewer_hops_then_smaller_ids() {
        let g = Digraph::build(
            &["S", "a", "b", "c", "D"],
            &[("S", "b", c(5)), ("b", "D", c(5)), ("S", "a", c(5)), ("a", "D", c(5)), ("S", "c", c(5)), ("c", "a", c(5))],
            "S",
            "D",
        )
        .unwrap();
        let t = widest_path_tree(&g, g.source());
        assert_eq!(tree_path(&t, g.destination()).unwrap().names(&g), vec!["S", "a", "D"]);
        assert_eq!(t, widest_path_tree(&g, g.source()));
    }

    #[test]
    fn tree_path_capacity_matches_achieved() {
        let g = diamond();
        let t = widest_path_tree(&g, g.source());
        for v in 0..g.vertex_count() {
            if v == g.source() {
                continue;
            }
            let p = tree_path(&t, v).unwrap();
            assert_eq!(&fd_path_capacity(&g, &p).unwrap(), t.achieved(v).unwrap());
        }
    }

    #[test]
    fn degenerate_resumes() {
        let g = diamond();
        let full = widest_path_tree(&g, g.source());
        let empty = HashSet::new();
        assert_eq!(resume_widest_path_tree(&g, &full, &empty).unwrap(), full);
        let all_but_root: HashSet<usize> = (0..g.vertex_count()).filter(|&v| v != g.source()).collect();
        let again = resume_widest_path_tree(&g, &full, &all_but_root).unwrap();
        for v in 0..g.vertex_count() {
            assert_eq!(again.achieved(v), full.achieved(v));
            assert_eq!(again.parent(v), full.parent(v));
        }
    }

    #[test]
    fn resume_rejects_orphaned_kept_vertex() {
        let g = diamond();
        let full = widest_path_tree(&g, g.source());
        let a: HashSet<usize> = [g.index_of("a").unwrap()].into_iter().collect();
        // D hangs below a in the tree but is not being recomputed
        assert!(matches!(resume_widest_path_tree(&g, &full, &a), Err(Error::ResumePrecondition(_))));
    }
}
