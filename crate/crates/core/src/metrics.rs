//! Full-duplex and half-duplex capacities of a route.
//!
//! The FD capacity of a path is its bottleneck link. The HD approximate
//! capacity of a simple path with at least one relay is the minimum, over
//! consecutive link pairs, of half their harmonic mean; a direct link has
//! HD capacity equal to its own capacity.

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Path};

pub fn half_harmonic(a: &Capacity, b: &Capacity) -> Capacity {
    a.half_harmonic(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathEvaluation {
    pub fd: Capacity,
    pub hd: Capacity,
    /// (tail, head) of the first minimum-capacity edge.
    pub bottleneck_fd_edge: (usize, usize),
    /// Consecutive edges attaining the HD minimum; `None` for a direct link.
    pub bottleneck_hd_pair: Option<((usize, usize), (usize, usize))>,
}

pub fn fd_path_capacity(graph: &Digraph, path: &Path) -> Result<Capacity> {
    let caps = graph.path_capacities(path)?;
    Ok(fd_of(&caps))
}

pub fn hd_path_capacity(graph: &Digraph, path: &Path) -> Result<Capacity> {
    let caps = graph.path_capacities(path)?;
    if !path.is_simple() {
        return Err(Error::NonSimplePath);
    }
    Ok(hd_of(&caps))
}

pub fn evaluate_path(graph: &Digraph, path: &Path) -> Result<PathEvaluation> {
    let caps = graph.path_capacities(path)?;
    if !path.is_simple() {
        return Err(Error::NonSimplePath);
    }
    let vs = path.vertices();
    let edge = |i: usize| (vs[i], vs[i + 1]);
    let fd_idx = argmin(caps.iter().cloned());
    let pair_caps: Vec<Capacity> = caps.windows(2).map(|w| w[0].half_harmonic(&w[1])).collect();
    let (hd, bottleneck_hd_pair) = if pair_caps.is_empty() {
        (caps[0].clone(), None)
    } else {
        let i = argmin(pair_caps.iter().cloned());
        (pair_caps[i].clone(), Some((edge(i), edge(i + 1))))
    };
    Ok(PathEvaluation { fd: caps[fd_idx].clone(), hd, bottleneck_fd_edge: edge(fd_idx), bottleneck_hd_pair })
}

fn argmin(values: impl Iterator<Item = Capacity>) -> usize {
    let mut best: Option<(usize, Capacity)> = None;
    for (i, v) in values.enumerate() {
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i).unwrap_or(0)
}

/// Bottleneck of a non-empty capacity sequence.
pub fn fd_of(caps: &[Capacity]) -> Capacity {
    caps.iter().min().cloned().expect("path has at least one edge")
}

/// Pairwise half-harmonic minimum of a capacity sequence, with the
/// direct-link convention. Does not know about simplicity; callers check that.
pub fn hd_of(caps: &[Capacity]) -> Capacity {
    if caps.len() == 1 {
        return caps[0].clone();
    }
    caps.windows(2).map(|w| w[0].half_harmonic(&w[1])).min().expect("at least one pair")
}

/// Evaluates the HD expression on any valid walk, cyclic or not.
///
/// Only meaningful on simple paths. Exists so the cyclic-path pathology can
/// be demonstrated; routing never calls it.
pub fn hd_formula_unchecked(graph: &Digraph, path: &Path) -> Result<Capacity> {
    Ok(hd_of(&graph.path_capacities(path)?))
}
