//! Elementary cycle counting (Johnson's circuit search) with an early-exit limit.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleCount {
    Exact(u64),
    ExceedsLimit,
}

impl CycleCount {
    pub fn exact(self) -> Option<u64> {
        match self {
            CycleCount::Exact(n) => Some(n),
            CycleCount::ExceedsLimit => None,
        }
    }
}

/// Number of vertex-distinct directed cycles of `graph`, or `ExceedsLimit`
/// as soon as more than `limit` have been found.
pub fn count_elementary_cycles(graph: &Digraph, limit: u64) -> Result<CycleCount> {
    if limit == 0 {
        return Err(Error::InvalidParameter("cycle limit must be positive".into()));
    }
    let n = graph.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| graph.out_edges(v).iter().map(|(w, _)| *w).collect()).collect();
    let mut search = Search {
        adj: &adj,
        in_component: vec![false; n],
        blocked: vec![false; n],
        block_map: vec![Vec::new(); n],
        count: 0,
        limit,
    };
    for start in 0..n {
        let component = component_of(&adj, start);
        if component.len() < 2 {
            continue;
        }
        for &v in &component {
            search.in_component[v] = true;
            search.blocked[v] = false;
            search.block_map[v].clear();
        }
        let exceeded = search.circuit(start, start);
        for &v in &component {
            search.in_component[v] = false;
        }
        if exceeded {
            return Ok(CycleCount::ExceedsLimit);
        }
    }
    Ok(CycleCount::Exact(search.count))
}

/// Strongly connected component containing `start` in the subgraph of
/// vertices with index >= `start`.
fn component_of(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let n = adj.len();
    let mut sub = DiGraph::<usize, ()>::with_capacity(n - start, 0);
    for v in start..n {
        sub.add_node(v);
    }
    for (u, succ) in adj.iter().enumerate().skip(start) {
        for &w in succ.iter().filter(|&&w| w >= start) {
            sub.add_edge(NodeIndex::new(u - start), NodeIndex::new(w - start), ());
        }
    }
    tarjan_scc(&sub)
        .into_iter()
        .find(|scc| scc.contains(&NodeIndex::new(0)))
        .map(|scc| scc.into_iter().map(|ix| sub[ix]).collect())
        .unwrap_or_default()
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    in_component: Vec<bool>,
    blocked: Vec<bool>,
    block_map: Vec<Vec<usize>>,
    count: u64,
    limit: u64,
}

impl Search<'_> {
    /// Returns true once the limit is exceeded. `found` bookkeeping is kept
    /// in `closed` so the unblock cascade matches Johnson's formulation.
    fn circuit(&mut self, start: usize, v: usize) -> bool {
        self.circuit_inner(start, v).1
    }

    fn circuit_inner(&mut self, start: usize, v: usize) -> (bool, bool) {
        let mut closed = false;
        self.blocked[v] = true;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if !self.in_component[w] {
                continue;
            }
            if w == start {
                self.count += 1;
                if self.count > self.limit {
                    return (true, true);
                }
                closed = true;
            } else if !self.blocked[w] {
                let (found, exceeded) = self.circuit_inner(start, w);
                if exceeded {
                    return (true, true);
                }
                closed |= found;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if self.in_component[w] && !self.block_map[w].contains(&v) {
                    self.block_map[w].push(v);
                }
            }
        }
        (closed, false)
    }

    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(u) = pending.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            pending.extend(std::mem::take(&mut self.block_map[u]));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::Capacity;

    fn graph(nodes: &[&str], edges: &[(&str, &str)]) -> Digraph {
        let edges: Vec<_> = edges.iter().map(|(a, b)| (*a, *b, Capacity::from_integer(1))).collect();
        Digraph::build(nodes, &edges, nodes[0], nodes[nodes.len() - 1]).unwrap()
    }

    /// Counts cycles by enumerating every vertex subset and every cyclic
    /// ordering of it that starts at the subset's smallest vertex.
    fn subset_oracle(g: &Digraph) -> u64 {
        let n = g.vertex_count();
        let mut total = 0;
        for mask in 1u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if members.len() < 2 {
                continue;
            }
            let first = members[0];
            let mut rest = members[1..].to_vec();
            total += count_orderings(g, first, &mut rest, 0);
        }
        total
    }

    fn count_orderings(g: &Digraph, first: usize, rest: &mut Vec<usize>, k: usize) -> u64 {
        if k == rest.len() {
            let mut cycle = vec![first];
            cycle.extend(rest.iter().copied());
            cycle.push(first);
            return cycle.windows(2).all(|w| g.has_edge(w[0], w[1])) as u64;
        }
        let mut sum = 0;
        for i in k..rest.len() {
            rest.swap(k, i);
            sum += count_orderings(g, first, rest, k + 1);
            rest.swap(k, i);
        }
        sum
    }

    #[test]
    fn dag_has_no_cycles() {
        let g = graph(&["S", "a", "b", "D"], &[("S", "a"), ("a", "b"), ("S", "b"), ("b", "D")]);
        assert_eq!(count_elementary_cycles(&g, 10).unwrap(), CycleCount::Exact(0));
    }

    #[test]
    fn triangle_with_reverse_chord_has_two_cycles() {
        // a-b-c-a and the two-cycle a-c-a
        let g = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")]);
        assert_eq!(subset_oracle(&g), 2);
        assert_eq!(count_elementary_cycles(&g, 10).unwrap(), CycleCount::Exact(2));
    }

    #[test]
    fn two_disjoint_two_cycles() {
        let g = graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")]);
        assert_eq!(subset_oracle(&g), 2);
        assert_eq!(count_elementary_cycles(&g, 10).unwrap(), CycleCount::Exact(2));
    }

    #[test]
    fn limit_stops_early() {
        let names = ["a", "b", "c", "d"];
        let mut edges = Vec::new();
        for x in names {
            for y in names {
                if x != y {
                    edges.push((x, y));
                }
            }
        }
        let g = graph(&names, &edges);
        // complete digraph on 4 vertices: 6 + 8 + 6 = 20 cycles
        assert_eq!(subset_oracle(&g), 20);
        assert_eq!(count_elementary_cycles(&g, 20).unwrap(), CycleCount::Exact(20));
        assert_eq!(count_elementary_cycles(&g, 19).unwrap(), CycleCount::ExceedsLimit);
        assert!(count_elementary_cycles(&g, 0).is_err());
    }

    #[test]
    fn agrees_with_subset_enumeration_on_small_graphs() {
        let mut state = 0x1234_5678_u64;
        for _ in 0..300 {
            let n = 2 + (crate::gen::splitmix_next(&mut state) % 5) as usize;
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j && crate::gen::splitmix_next(&mut state) % 100 < 40 {
                        edges.push((refs[i], refs[j]));
                    }
                }
            }
            let g = graph(&refs, &edges);
            let expected = subset_oracle(&g);
            assert_eq!(count_elementary_cycles(&g, 1_000_000).unwrap(), CycleCount::Exact(expected));
        }
    }
}
