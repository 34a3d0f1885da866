//! Seeded instance generators.
//!
//! Randomness comes from SplitMix64 only, so any implementation of the
//! same steps reproduces the same graphs:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output z ^ (z >> 31)
//! ```
//!
//! A stream `k` of seed `s` starts from state `s ^ (k * 0xD1B54A32D192ED03)`
//! (wrapping). Integers in `[lo, hi]` are `lo + next % (hi - lo + 1)`; a
//! Bernoulli draw with probability `p` is `(next >> 11) / 2^53 < p`.

use serde::{Deserialize, Serialize};

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{Digraph, GraphDoc};
use crate::sat::{Literal, SatInstance};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const STREAM_MIX: u64 = 0xD1B5_4A32_D192_ED03;

pub fn splitmix_next(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng::stream(seed, 0)
    }

    pub fn stream(seed: u64, id: u64) -> Self {
        Rng { state: seed ^ id.wrapping_mul(STREAM_MIX) }
    }

    pub fn next_u64(&mut self) -> u64 {
        splitmix_next(&mut self.state)
    }

    /// Uniform-ish in `[0, n)`; modulo bias is accepted.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn int_in(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        ((self.next_u64() >> 11) as f64 / (1u64 << 53) as f64) < p
    }

    /// Fisher-Yates from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    Layered {
        layers: usize,
        width: usize,
        cap_min: u64,
        cap_max: u64,
        seed: u64,
    },
    Random {
        vertices: usize,
        edge_prob: f64,
        back_edges: usize,
        cap_min: u64,
        cap_max: u64,
        seed: u64,
    },
    Gap {
        c: Capacity,
        delta: Capacity,
        m: Capacity,
    },
}

impl GenSpec {
    pub fn build(&self) -> Result<Digraph> {
        match self {
            GenSpec::Layered { layers, width, cap_min, cap_max, seed } => {
                gen_layered(*layers, *width, (*cap_min, *cap_max), *seed)
            }
            GenSpec::Random { vertices, edge_prob, back_edges, cap_min, cap_max, seed } => {
                gen_random_digraph(*vertices, *edge_prob, *back_edges, (*cap_min, *cap_max), *seed)
            }
            GenSpec::Gap { c, delta, m } => gen_fd_hd_gap(c, delta, m),
        }
    }

    /// Canonical JSON document with this spec embedded.
    pub fn generate(&self) -> Result<GraphDoc> {
        let mut doc = self.build()?.to_doc();
        doc.genspec = Some(serde_json::to_value(self)?);
        Ok(doc)
    }
}

fn check_caps((lo, hi): (u64, u64)) -> Result<()> {
    if lo == 0 || lo > hi || hi > i64::MAX as u64 {
        return Err(Error::InvalidParameter(format!("capacity range [{lo}, {hi}] must satisfy 1 <= min <= max")));
    }
    Ok(())
}

fn draw_cap(rng: &mut Rng, (lo, hi): (u64, u64)) -> Capacity {
    Capacity::from_integer(rng.int_in(lo, hi) as i64)
}

/// S, then `layers` layers of `width` relays named `l{layer}.{k}`, then D;
/// consecutive layers are completely connected. Capacities are drawn in
/// edge order: S's edges, each layer pair row by row, then edges into D.
pub fn gen_layered(layers: usize, width: usize, caps: (u64, u64), seed: u64) -> Result<Digraph> {
    if layers == 0 || width == 0 {
        return Err(Error::InvalidParameter("layered networks need at least one layer of one relay".into()));
    }
    check_caps(caps)?;
    let mut rng = Rng::new(seed);
    let layer: Vec<Vec<String>> =
        (1..=layers).map(|l| (1..=width).map(|k| format!("l{l}.{k}")).collect()).collect();
    let mut edges: Vec<(String, String, Capacity)> = Vec::new();
    for v in &layer[0] {
        edges.push(("S".into(), v.clone(), draw_cap(&mut rng, caps)));
    }
    for pair in layer.windows(2) {
        for u in &pair[0] {
            for v in &pair[1] {
                edges.push((u.clone(), v.clone(), draw_cap(&mut rng, caps)));
            }
        }
    }
    for u in &layer[layers - 1] {
        edges.push((u.clone(), "D".into(), draw_cap(&mut rng, caps)));
    }
    let mut names = vec!["S".to_string(), "D".to_string()];
    names.extend(layer.into_iter().flatten());
    assemble(&names, &edges)
}

/// Random DAG over a shuffled relay order (S first, D last), each forward
/// pair linked with probability `edge_prob`, then `back_edges` attempts at
/// a relay-to-earlier-relay edge. Relays are `v1..v{n-2}`.
pub fn gen_random_digraph(n: usize, edge_prob: f64, back_edges: usize, caps: (u64, u64), seed: u64) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidParameter("random digraphs need at least S and D".into()));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidParameter(format!("edge probability {edge_prob} outside [0, 1]")));
    }
    check_caps(caps)?;
    let mut order_rng = Rng::stream(seed, 1);
    let mut edge_rng = Rng::stream(seed, 2);
    let mut back_rng = Rng::stream(seed, 3);

    let mut relays: Vec<String> = (1..=n - 2).map(|k| format!("v{k}")).collect();
    order_rng.shuffle(&mut relays);
    let mut order = vec!["S".to_string()];
    order.extend(relays.iter().cloned());
    order.push("D".into());

    let mut edges: Vec<(String, String, Capacity)> = Vec::new();
    let mut present = std::collections::HashSet::new();
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if edge_rng.chance(edge_prob) {
                edges.push((order[i].clone(), order[j].clone(), draw_cap(&mut edge_rng, caps)));
                present.insert((i, j));
            }
        }
    }
    let r = relays.len() as u64;
    if r >= 2 {
        for _ in 0..back_edges {
            // positions in `order`: relays occupy 1..=r
            let x = 1 + back_rng.below(r) as usize;
            let y = 1 + back_rng.below(r) as usize;
            let (late, early) = (x.max(y), x.min(y));
            let cap = draw_cap(&mut back_rng, caps);
            if late != early && present.insert((late, early)) {
                edges.push((order[late].clone(), order[early].clone(), cap));
            }
        }
    }
    assemble(&order, &edges)
}

/// Two disjoint relays: `S-a-D` with links (2c, 2c) and `S-b-D` with links
/// (2c - delta, m). The widest path takes `a`; the HD-best route takes `b`
/// once `m` is large, and the ratio of their HD capacities tends to 2.
pub fn gen_fd_hd_gap(c: &Capacity, delta: &Capacity, m: &Capacity) -> Result<Digraph> {
    let finite_positive = |x: &Capacity| x.is_positive() && !x.is_unbounded();
    if !finite_positive(c) || !finite_positive(delta) || !finite_positive(m) {
        return Err(Error::InvalidParameter("gap parameters must be positive and finite".into()));
    }
    let two = num_rational::BigRational::from_integer(2.into());
    let two_c = c.scale(&two);
    if *delta >= two_c {
        return Err(Error::InvalidParameter("delta must be below 2c".into()));
    }
    let narrowed = Capacity::from(two_c.as_rational().unwrap() - delta.as_rational().unwrap());
    Digraph::build(
        &["S", "a", "b", "D"],
        &[("S", "a", two_c.clone()), ("a", "D", two_c.clone()), ("S", "b", narrowed), ("b", "D", m.clone())],
        "S",
        "D",
    )
}

fn assemble(names: &[String], edges: &[(String, String, Capacity)]) -> Result<Digraph> {
    let nodes: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str, Capacity)> = edges.iter().map(|(u, v, c)| (u.as_str(), v.as_str(), c.clone())).collect();
    Digraph::build(&nodes, &edges, "S", "D")
}

/// Random 3-CNF without tautological clauses: each literal picks a
/// variable in `1..=vars` and then a sign (low bit set means negated), and
/// is redrawn while it complements an earlier literal of its clause.
pub fn gen_random_3cnf(vars: u32, clauses: usize, seed: u64) -> Result<SatInstance> {
    if vars == 0 && clauses > 0 {
        return Err(Error::InvalidParameter("clauses need at least one variable".into()));
    }
    let mut rng = Rng::stream(seed, 4);
    let mut out = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let mut clause = [Literal::new(1, false); 3];
        for k in 0..3 {
            clause[k] = loop {
                let var = 1 + rng.below(vars as u64) as u32;
                let lit = Literal::new(var, rng.next_u64() & 1 == 1);
                if !clause[..k].iter().any(|l| l.is_complement_of(lit)) {
                    break lit;
                }
            };
        }
        out.push(clause);
    }
    SatInstance::new(vars, out)
}
