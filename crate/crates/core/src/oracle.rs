//! Exhaustive ground truth over simple S-D paths. Exponential; desk-scale only.

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Path};
use crate::metrics::{fd_of, hd_of};
use crate::router::check_threshold;

pub const DEFAULT_PATH_CAP: u64 = 10_000_000;

/// Lazy depth-first enumeration of simple S-D paths in lexicographic order
/// of their vertex-id sequences. Yields an error once `cap` paths have been
/// produced and more remain.
pub struct PathEnumeration<'g> {
    graph: &'g Digraph,
    stack: Vec<(usize, usize)>,
    on_path: Vec<bool>,
    count: u64,
    cap: u64,
    exhausted: bool,
}

impl<'g> PathEnumeration<'g> {
    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    fn current(&self) -> Path {
        Path::new(self.stack.iter().map(|(v, _)| *v).collect())
    }
}

impl Iterator for PathEnumeration<'_> {
    type Item = Result<Path>;

    fn next(&mut self) -> Option<Self::Item> {
        let dest = self.graph.destination();
        while let Some(&mut (v, ref mut next_edge)) = self.stack.last_mut() {
            let succ = self.graph.out_edges(v);
            if v == dest || *next_edge >= succ.len() {
                self.stack.pop();
                self.on_path[v] = false;
                continue;
            }
            let w = succ[*next_edge].0;
            *next_edge += 1;
            if self.on_path[w] {
                continue;
            }
            self.stack.push((w, 0));
            self.on_path[w] = true;
            if w == dest {
                if self.count >= self.cap {
                    self.stack.clear();
                    return Some(Err(Error::LimitExceeded(format!("more than {} simple paths", self.cap))));
                }
                self.count += 1;
                return Some(Ok(self.current()));
            }
        }
        self.exhausted = true;
        None
    }
}

pub fn enumerate_simple_paths(graph: &Digraph) -> PathEnumeration<'_> {
    enumerate_simple_paths_capped(graph, DEFAULT_PATH_CAP)
}

pub fn enumerate_simple_paths_capped(graph: &Digraph, cap: u64) -> PathEnumeration<'_> {
    let mut on_path = vec![false; graph.vertex_count()];
    on_path[graph.source()] = true;
    PathEnumeration { graph, stack: vec![(graph.source(), 0)], on_path, count: 0, cap, exhausted: false }
}

fn caps_of(graph: &Digraph, path: &Path) -> Vec<Capacity> {
    path.vertices().windows(2).map(|w| graph.capacity(w[0], w[1]).expect("enumerated edge").clone()).collect()
}

fn argmax_by<F>(graph: &Digraph, eval: F) -> Result<(Path, Capacity)>
where
    F: Fn(&[Capacity]) -> Capacity,
{
    let mut best: Option<(Path, Capacity)> = None;
    for path in enumerate_simple_paths(graph) {
        let path = path?;
        let value = eval(&caps_of(graph, &path));
        if best.as_ref().is_none_or(|(_, b)| value > *b) {
            best = Some((path, value));
        }
    }
    best.ok_or(Error::NoPath)
}

/// Simple path with the largest HD capacity; ties go to the
/// lexicographically first path.
pub fn brute_force_best_hd(graph: &Digraph) -> Result<(Path, Capacity)> {
    argmax_by(graph, hd_of)
}

pub fn brute_force_best_fd(graph: &Digraph) -> Result<(Path, Capacity)> {
    argmax_by(graph, fd_of)
}

/// Exhaustive decision: does a simple path reach HD capacity `threshold`?
///
/// Prunes prefixes whose HD value already fell below the threshold (the
/// value never rises as a path grows) and prefixes from which the
/// destination is unreachable without revisiting a vertex, so
/// unsatisfiable gadget instances stay tractable.
pub fn brute_force_decide(graph: &Digraph, threshold: &Capacity) -> Result<bool> {
    check_threshold(threshold)?;
    let mut on_path = vec![false; graph.vertex_count()];
    on_path[graph.source()] = true;
    let mut visited = 0u64;
    let found = decide_from(graph, graph.source(), None, None, threshold, &mut on_path, &mut visited)?;
    Ok(found)
}

fn decide_from(
    graph: &Digraph,
    v: usize,
    last_cap: Option<&Capacity>,
    bound: Option<&Capacity>,
    threshold: &Capacity,
    on_path: &mut [bool],
    visited: &mut u64,
) -> Result<bool> {
    if v == graph.destination() {
        return Ok(true);
    }
    *visited += 1;
    if *visited > DEFAULT_PATH_CAP {
        return Err(Error::LimitExceeded(format!("more than {DEFAULT_PATH_CAP} search nodes")));
    }
    for (w, c) in graph.out_edges(v) {
        if on_path[*w] {
            continue;
        }
        // upper bound on every completion; a pair value never exceeds either link
        let next_bound = match (bound, last_cap) {
            (Some(b), Some(prev)) => b.min_with(&prev.half_harmonic(c)),
            _ => c.clone(),
        };
        if next_bound < *threshold {
            continue;
        }
        on_path[*w] = true;
        if !reaches_destination(graph, *w, on_path) {
            on_path[*w] = false;
            continue;
        }
        let hit = decide_from(graph, *w, Some(c), Some(&next_bound), threshold, on_path, visited)?;
        on_path[*w] = false;
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether the destination is reachable from `from` through vertices not
/// on the current prefix.
fn reaches_destination(graph: &Digraph, from: usize, on_path: &[bool]) -> bool {
    let dest = graph.destination();
    let mut seen = vec![false; graph.vertex_count()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        if v == dest {
            return true;
        }
        for (w, _) in graph.out_edges(v) {
            if !seen[*w] && !on_path[*w] {
                seen[*w] = true;
                stack.push(*w);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn c(n: i64) -> Capacity {
        Capacity::from_integer(n)
    }

    fn names(g: &Digraph, paths: &[Path]) -> Vec<Vec<String>> {
        paths.iter().map(|p| p.names(g).into_iter().map(String::from).collect()).collect()
    }

    fn complete_dag(relays: usize) -> Digraph {
        let mut order = vec!["S".to_string()];
        order.extend((1..=relays).map(|i| format!("v{i}")));
        order.push("D".into());
        let refs: Vec<&str> = order.iter().map(String::as_str).collect();
        let mut edges = Vec::new();
        for i in 0..refs.len() {
            for j in i + 1..refs.len() {
                edges.push((refs[i], refs[j], c(1)));
            }
        }
        Digraph::build(&refs, &edges, "S", "D").unwrap()
    }

    #[test]
    fn diamond_has_two_paths() {
        let g = Digraph::build(
            &["S", "a", "b", "D"],
            &[("S", "a", c(30)), ("a", "D", c(20)), ("S", "b", c(15)), ("b", "D", c(210))],
            "S",
            "D",
        )
        .unwrap();
        let paths: Vec<Path> = enumerate_simple_paths(&g).collect::<Result<_>>().unwrap();
        assert_eq!(names(&g, &paths), vec![vec!["S", "a", "D"], vec!["S", "b", "D"]]);
        let (p, hd) = brute_force_best_hd(&g).unwrap();
        assert_eq!((p.names(&g), hd), (vec!["S", "b", "D"], c(14)));
        let (p, fd) = brute_force_best_fd(&g).unwrap();
        assert_eq!((p.names(&g), fd), (vec!["S", "a", "D"], c(20)));
        assert!(brute_force_decide(&g, &c(14)).unwrap());
        assert!(!brute_force_decide(&g, &Capacity::from_ratio(141, 10)).unwrap());
    }

    #[test]
    fn complete_dag_on_two_relays_has_four_paths() {
        let g = complete_dag(2);
        let paths: Vec<Path> = enumerate_simple_paths(&g).collect::<Result<_>>().unwrap();
        assert_eq!(
            names(&g, &paths),
            vec![vec!["S", "D"], vec!["S", "v1", "D"], vec!["S", "v1", "v2", "D"], vec!["S", "v2", "D"]]
        );
    }

    #[test]
    fn complete_dag_counts_match_closed_form() {
        for n in 0..=5usize {
            let g = complete_dag(n);
            let paths: Vec<Path> = enumerate_simple_paths(&g).collect::<Result<_>>().unwrap();
            // ordered subsets in topological order: sum_k C(n, k)
            let expected: usize = (0..=n).map(|k| binom(n, k)).sum();
            assert_eq!(paths.len(), expected, "n = {n}");
            let unique: HashSet<_> = paths.iter().collect();
            assert_eq!(unique.len(), paths.len());
        }
    }

    #[test]
    fn complete_digraph_counts_match_arrangements() {
        // with every relay pair linked both ways, any ordered subset of relays is a path
        for n in 0..=4usize {
            let mut names = vec!["S".to_string(), "D".to_string()];
            names.extend((1..=n).map(|i| format!("v{i}")));
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut edges = vec![("S", "D", c(1))];
            for &r in &refs[2..] {
                edges.push(("S", r, c(1)));
                edges.push((r, "D", c(1)));
                for &q in &refs[2..] {
                    if q != r {
                        edges.push((r, q, c(1)));
                    }
                }
            }
            let g = Digraph::build(&refs, &edges, "S", "D").unwrap();
            let count = enumerate_simple_paths(&g).count();
            let expected: usize = (0..=n).map(|k| binom(n, k) * (1..=k).product::<usize>()).sum();
            assert_eq!(count, expected);
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn unreachable_destination_yields_nothing() {
        let g = Digraph::build(&["S", "a", "D"], &[("S", "a", c(1)), ("D", "a", c(1))], "S", "D").unwrap();
        let mut it = enumerate_simple_paths(&g);
        assert!(it.next().is_none());
        assert!(it.is_exhausted());
        assert!(matches!(brute_force_best_hd(&g), Err(Error::NoPath)));
        assert!(!brute_force_decide(&g, &c(1)).unwrap());
    }

    #[test]
    fn cap_fails_loudly() {
        let g = complete_dag(4);
        let results: Vec<Result<Path>> = enumerate_simple_paths_capped(&g, 3).collect();
        assert_eq!(results.len(), 4);
        assert!(matches!(results[3], Err(Error::LimitExceeded(_))));
    }
}
