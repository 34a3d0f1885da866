//! 3-CNF to HD-path reduction, DIMACS input, exhaustive SAT, and the
//! assignment/path certifiers.
//!
//! The reduction runs in four stages over one naming scheme:
//!
//! * `base`: `S`, `D`, per clause `t{i}`, `v{i}.{j}`, `r{i}`.
//! * `split`: every literal vertex in a forbidden pair becomes a chain of
//!   `v{i}.{j},{k}.{l}`, one per partner, partners in ascending order.
//! * `guard`: each chain vertex is wrapped as `a{i}.{j},{k}.{l}` - vertex - `b{i}.{j},{k}.{l}`.
//! * `merge`: each pair of chain vertices collapses into `f{i}.{j},{k}.{l}` (i < k)
//!   and capacities are assigned.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Path};
use crate::metrics::hd_path_capacity;
use crate::router::check_threshold;

pub const DEFAULT_SAT_VARIABLE_LIMIT: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: u32,
    pub negated: bool,
}

impl Literal {
    pub fn new(var: u32, negated: bool) -> Self {
        Literal { var, negated }
    }

    pub fn from_dimacs(value: i64) -> Self {
        Literal { var: value.unsigned_abs() as u32, negated: value < 0 }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    pub fn is_complement_of(self, other: Literal) -> bool {
        self.var == other.var && self.negated != other.negated
    }

    /// `assignment[k]` is the value of variable k + 1.
    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var as usize - 1] != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatInstance {
    vars: u32,
    clauses: Vec<[Literal; 3]>,
}

impl SatInstance {
    pub fn new(vars: u32, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.var == 0 || lit.var > vars {
                    return Err(Error::Parse(format!(
                        "variable index {} out of range 1..={vars} in clause {}",
                        lit.var,
                        i + 1
                    )));
                }
            }
        }
        Ok(SatInstance { vars, clauses })
    }

    pub fn from_dimacs_clauses(vars: u32, clauses: &[[i64; 3]]) -> Result<Self> {
        let clauses = clauses.iter().map(|c| c.map(Literal::from_dimacs)).collect();
        SatInstance::new(vars, clauses)
    }

    pub fn variable_count(&self) -> u32 {
        self.vars
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Literal at 1-based clause `i`, position `j`.
    pub fn literal(&self, i: usize, j: usize) -> Literal {
        self.clauses[i - 1][j - 1]
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

pub fn parse_dimacs(text: &str) -> Result<SatInstance> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::Parse(format!("line {}: duplicate header", lineno + 1)));
            }
            header = Some(parse_header(line).ok_or_else(|| Error::Parse(format!("line {}: malformed header {line:?}", lineno + 1)))?);
            continue;
        }
        let (vars, _) = header.ok_or_else(|| Error::Parse(format!("line {}: clause before header", lineno + 1)))?;
        for token in line.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| Error::Parse(format!("line {}: bad literal {token:?}", lineno + 1)))?;
            if value == 0 {
                clauses.push(close_clause(&current, clauses.len() + 1)?);
                current.clear();
            } else {
                if value.unsigned_abs() > vars as u64 {
                    return Err(Error::Parse(format!("line {}: variable index {} out of range 1..={vars}", lineno + 1, value.abs())));
                }
                current.push(value);
            }
        }
    }
    let (vars, expected) = header.ok_or_else(|| Error::Parse("missing \"p cnf\" header".into()))?;
    if !current.is_empty() {
        clauses.push(close_clause(&current, clauses.len() + 1)?);
    }
    if clauses.len() != expected {
        return Err(Error::Parse(format!("header declares {expected} clauses, found {}", clauses.len())));
    }
    SatInstance::new(vars, clauses)
}

fn parse_header(line: &str) -> Option<(u32, usize)> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    match parts.as_slice() {
        ["p", "cnf", n, m] => Some((n.parse().ok()?, m.parse().ok()?)),
        _ => None,
    }
}

fn close_clause(lits: &[i64], index: usize) -> Result<[Literal; 3]> {
    match lits {
        [a, b, c] => Ok([Literal::from_dimacs(*a), Literal::from_dimacs(*b), Literal::from_dimacs(*c)]),
        _ => Err(Error::NotThreeCnf(format!("clause {index} has {} literals", lits.len()))),
    }
}

/// Exhaustive satisfiability. Assignments are tried in increasing binary
/// order with x1 as the lowest bit, so the witness is the first one found.
pub fn brute_force_sat(inst: &SatInstance) -> Result<Option<Vec<bool>>> {
    brute_force_sat_with_limit(inst, DEFAULT_SAT_VARIABLE_LIMIT)
}

pub fn brute_force_sat_with_limit(inst: &SatInstance, limit: u32) -> Result<Option<Vec<bool>>> {
    let n = inst.variable_count();
    if n > limit {
        return Err(Error::LimitExceeded(format!("{n} variables exceeds the limit of {limit}")));
    }
    let mut assignment = vec![false; n as usize];
    for mask in 0u64..(1u64 << n) {
        for (k, slot) in assignment.iter_mut().enumerate() {
            *slot = mask >> k & 1 == 1;
        }
        if inst.evaluate(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// A literal occurrence: 1-based clause and position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Occurrence {
    pub clause: usize,
    pub position: usize,
}

impl Occurrence {
    fn tag(self) -> String {
        format!("{}.{}", self.clause, self.position)
    }
}

/// Two complementary literal occurrences in different clauses; `lower`
/// has the smaller clause index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ForbiddenPair {
    pub lower: Occurrence,
    pub upper: Occurrence,
    pub lower_vertex: String,
    pub upper_vertex: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForbiddenPairs {
    pub pairs: Vec<ForbiddenPair>,
}

impl ForbiddenPairs {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Occurrence pairs, without vertex names.
    pub fn occurrences(&self) -> Vec<(Occurrence, Occurrence)> {
        self.pairs.iter().map(|p| (p.lower, p.upper)).collect()
    }

    pub fn vertices(&self) -> BTreeSet<&str> {
        self.pairs.iter().flat_map(|p| [p.lower_vertex.as_str(), p.upper_vertex.as_str()]).collect()
    }

    /// Largest number of pairs any single vertex takes part in.
    pub fn max_multiplicity(&self) -> usize {
        let mut count: HashMap<&str, usize> = HashMap::new();
        for p in &self.pairs {
            *count.entry(&p.lower_vertex).or_default() += 1;
            *count.entry(&p.upper_vertex).or_default() += 1;
        }
        count.into_values().max().unwrap_or(0)
    }

    /// Partners of each occurrence in ascending order.
    fn partners(&self) -> BTreeMap<Occurrence, Vec<Occurrence>> {
        let mut out: BTreeMap<Occurrence, Vec<Occurrence>> = BTreeMap::new();
        for p in &self.pairs {
            out.entry(p.lower).or_default().push(p.upper);
            out.entry(p.upper).or_default().push(p.lower);
        }
        for list in out.values_mut() {
            list.sort();
        }
        out
    }
}

/// Complementary cross-clause occurrence pairs, sorted.
pub fn forbidden_occurrences(inst: &SatInstance) -> Vec<(Occurrence, Occurrence)> {
    let m = inst.clause_count();
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=3 {
            for k in i + 1..=m {
                for l in 1..=3 {
                    if inst.literal(i, j).is_complement_of(inst.literal(k, l)) {
                        out.push((Occurrence { clause: i, position: j }, Occurrence { clause: k, position: l }));
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProvenanceEntry {
    pub stage: &'static str,
    pub role: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
    /// DIMACS-signed literal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub literal: Option<i64>,
    /// Partner occurrence "k.l" for split, guard and merge vertices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<String>,
}

pub type Provenance = BTreeMap<String, ProvenanceEntry>;

/// One construction stage: structural graph (unit capacities), its
/// forbidden pairs, and where each vertex came from.
#[derive(Clone, Debug)]
pub struct StageGraph {
    pub graph: Digraph,
    pub forbidden: ForbiddenPairs,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub graph: Digraph,
    pub threshold: Capacity,
    pub provenance: Provenance,
    pub forbidden: ForbiddenPairs,
}

/// Editable edge list used between stages.
struct Sketch {
    nodes: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
}

impl Sketch {
    fn from_graph(g: &Digraph) -> Self {
        Sketch {
            nodes: g.names().iter().cloned().collect(),
            edges: g.edges().map(|(u, v, _)| (g.name(u).to_string(), g.name(v).to_string())).collect(),
        }
    }

    fn add_edge(&mut self, u: &str, v: &str) {
        self.edges.insert((u.to_string(), v.to_string()));
    }

    /// Replaces `name` by a directed chain; in-edges go to its head and
    /// out-edges leave from its tail.
    fn split(&mut self, name: &str, chain: &[String]) {
        self.nodes.remove(name);
        let (first, last) = (&chain[0], &chain[chain.len() - 1]);
        let old: Vec<(String, String)> = self.edges.iter().filter(|(u, v)| u == name || v == name).cloned().collect();
        for (u, v) in old {
            self.edges.remove(&(u.clone(), v.clone()));
            if v == name {
                self.edges.insert((u, first.clone()));
            } else {
                self.edges.insert((last.clone(), v));
            }
        }
        self.nodes.extend(chain.iter().cloned());
        for w in chain.windows(2) {
            self.add_edge(&w[0], &w[1]);
        }
    }

    fn into_graph(self, caps: impl Fn(&str, &str) -> Capacity) -> Result<Digraph> {
        let nodes: Vec<&str> = self.nodes.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str, Capacity)> =
            self.edges.iter().map(|(u, v)| (u.as_str(), v.as_str(), caps(u, v))).collect();
        Digraph::build(&nodes, &edges, "S", "D")
    }
}

fn literal_vertex(o: Occurrence) -> String {
    format!("v{}", o.tag())
}

fn split_vertex(o: Occurrence, partner: Occurrence) -> String {
    format!("v{},{}", o.tag(), partner.tag())
}

fn guard_vertices(o: Occurrence, partner: Occurrence) -> (String, String) {
    (format!("a{},{}", o.tag(), partner.tag()), format!("b{},{}", o.tag(), partner.tag()))
}

fn merge_vertex(lower: Occurrence, upper: Occurrence) -> String {
    format!("f{},{}", lower.tag(), upper.tag())
}

fn unit() -> Capacity {
    Capacity::from_integer(1)
}

fn entry(stage: &'static str, role: &'static str) -> ProvenanceEntry {
    ProvenanceEntry { stage, role, clause: None, position: None, literal: None, partner: None }
}

/// Clause gadgets chained from S to D, plus the forbidden pairs.
pub fn build_gb(inst: &SatInstance) -> Result<StageGraph> {
    let m = inst.clause_count();
    if m == 0 {
        return Err(Error::InvalidParameter("reduction needs at least one clause".into()));
    }
    let mut sketch = Sketch { nodes: BTreeSet::new(), edges: BTreeSet::new() };
    let mut provenance = Provenance::new();
    sketch.nodes.extend(["S".to_string(), "D".to_string()]);
    provenance.insert("S".into(), entry("base", "source"));
    provenance.insert("D".into(), entry("base", "destination"));
    for i in 1..=m {
        let (t, r) = (format!("t{i}"), format!("r{i}"));
        for (name, role) in [(&t, "t"), (&r, "r")] {
            sketch.nodes.insert(name.clone());
            provenance.insert(name.clone(), ProvenanceEntry { clause: Some(i), ..entry("base", role) });
        }
        for j in 1..=3 {
            let o = Occurrence { clause: i, position: j };
            let v = literal_vertex(o);
            sketch.nodes.insert(v.clone());
            sketch.add_edge(&t, &v);
            sketch.add_edge(&v, &r);
            provenance.insert(
                v,
                ProvenanceEntry {
                    clause: Some(i),
                    position: Some(j),
                    literal: Some(inst.literal(i, j).to_dimacs()),
                    ..entry("base", "literal")
                },
            );
        }
        if i < m {
            sketch.add_edge(&r, &format!("t{}", i + 1));
        }
    }
    sketch.add_edge("S", "t1");
    sketch.add_edge(&format!("r{m}"), "D");
    let pairs = forbidden_occurrences(inst)
        .into_iter()
        .map(|(lower, upper)| ForbiddenPair { lower, upper, lower_vertex: literal_vertex(lower), upper_vertex: literal_vertex(upper) })
        .collect();
    Ok(StageGraph { graph: sketch.into_graph(|_, _| unit())?, forbidden: ForbiddenPairs { pairs }, provenance })
}

/// Splits every paired literal vertex into one vertex per partner, so each
/// vertex takes part in at most one pair.
pub fn build_gb_circ(gb: &StageGraph) -> Result<StageGraph> {
    let mut sketch = Sketch::from_graph(&gb.graph);
    let mut provenance = gb.provenance.clone();
    for (o, partners) in gb.forbidden.partners() {
        let name = literal_vertex(o);
        let origin = provenance.remove(&name).expect("literal vertex has provenance");
        let chain: Vec<String> = partners.iter().map(|&p| split_vertex(o, p)).collect();
        for (v, p) in chain.iter().zip(&partners) {
            provenance.insert(v.clone(), ProvenanceEntry { stage: "split", partner: Some(p.tag()), ..origin.clone() });
        }
        sketch.split(&name, &chain);
    }
    let pairs = gb
        .forbidden
        .pairs
        .iter()
        .map(|p| ForbiddenPair {
            lower: p.lower,
            upper: p.upper,
            lower_vertex: split_vertex(p.lower, p.upper),
            upper_vertex: split_vertex(p.upper, p.lower),
        })
        .collect();
    Ok(StageGraph { graph: sketch.into_graph(|_, _| unit())?, forbidden: ForbiddenPairs { pairs }, provenance })
}

/// Split stage followed by a/b guards around every paired vertex.
pub fn build_gb_star(gb: &StageGraph) -> Result<StageGraph> {
    let circ = build_gb_circ(gb)?;
    let mut sketch = Sketch::from_graph(&circ.graph);
    let mut provenance = circ.provenance.clone();
    for p in &circ.forbidden.pairs {
        for (o, partner, v) in [(p.lower, p.upper, &p.lower_vertex), (p.upper, p.lower, &p.upper_vertex)] {
            let (a, b) = guard_vertices(o, partner);
            let origin = provenance[v.as_str()].clone();
            provenance.insert(a.clone(), ProvenanceEntry { stage: "guard", role: "a-type", ..origin.clone() });
            provenance.insert(b.clone(), ProvenanceEntry { stage: "guard", role: "b-type", ..origin });
            sketch.split(v, &[a, v.clone(), b]);
        }
    }
    Ok(StageGraph { graph: sketch.into_graph(|_, _| unit())?, forbidden: circ.forbidden, provenance })
}

/// Merges each forbidden pair into an f-type vertex and assigns capacities:
/// 1.5Z on the edge entering from the lower clause's a-type vertex and on
/// the edge leaving to the upper clause's b-type vertex, 3Z everywhere else.
pub fn build_gb_bullet(gstar: &StageGraph, z: &Capacity) -> Result<ReductionInstance> {
    check_threshold(z)?;
    let three_z = z.scale(&BigRational::from_integer(3.into()));
    let one_and_half_z = z.scale(&BigRational::new(3.into(), 2.into()));
    let mut sketch = Sketch::from_graph(&gstar.graph);
    let mut provenance = gstar.provenance.clone();
    let mut narrow: BTreeSet<(String, String)> = BTreeSet::new();
    for p in &gstar.forbidden.pairs {
        let f = merge_vertex(p.lower, p.upper);
        let lower_entry = provenance.remove(&p.lower_vertex).expect("paired vertex has provenance");
        provenance.remove(&p.upper_vertex);
        provenance.insert(f.clone(), ProvenanceEntry { stage: "merge", role: "f-type", ..lower_entry });
        let touching: Vec<(String, String)> = sketch
            .edges
            .iter()
            .filter(|(u, v)| [u, v].iter().any(|x| **x == p.lower_vertex || **x == p.upper_vertex))
            .cloned()
            .collect();
        for (u, v) in touching {
            sketch.edges.remove(&(u.clone(), v.clone()));
            let edge = if u == p.lower_vertex || u == p.upper_vertex { (f.clone(), v.clone()) } else { (u.clone(), f.clone()) };
            if v == p.lower_vertex || u == p.upper_vertex {
                narrow.insert(edge.clone());
            }
            sketch.edges.insert(edge);
        }
        sketch.nodes.remove(&p.lower_vertex);
        sketch.nodes.remove(&p.upper_vertex);
        sketch.nodes.insert(f);
    }
    let graph = sketch.into_graph(|u, v| {
        if narrow.contains(&(u.to_string(), v.to_string())) {
            one_and_half_z.clone()
        } else {
            three_z.clone()
        }
    })?;
    Ok(ReductionInstance { graph, threshold: z.clone(), provenance, forbidden: gstar.forbidden.clone() })
}

/// All four stages at once.
pub fn reduce(inst: &SatInstance, z: &Capacity) -> Result<ReductionInstance> {
    let gb = build_gb(inst)?;
    build_gb_bullet(&build_gb_star(&gb)?, z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    /// a and b guard the same occurrence.
    Straight,
    /// Lower clause's a into upper clause's b: both links at 1.5Z.
    NarrowCrossing,
    /// Upper clause's a into lower clause's b: both links at 3Z; only
    /// simplicity rules it out.
    WideCrossing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSubpath {
    pub a: String,
    pub f: String,
    pub b: String,
    pub kind: GadgetKind,
}

/// Every a - f - b subpath of the merged graph, four per f-type vertex.
pub fn gadget_subpaths(red: &ReductionInstance) -> Vec<GadgetSubpath> {
    let mut out = Vec::new();
    for p in &red.forbidden.pairs {
        let f = merge_vertex(p.lower, p.upper);
        let (a_lo, b_lo) = guard_vertices(p.lower, p.upper);
        let (a_hi, b_hi) = guard_vertices(p.upper, p.lower);
        for (a, b, kind) in [
            (&a_lo, &b_lo, GadgetKind::Straight),
            (&a_hi, &b_hi, GadgetKind::Straight),
            (&a_lo, &b_hi, GadgetKind::NarrowCrossing),
            (&a_hi, &b_lo, GadgetKind::WideCrossing),
        ] {
            out.push(GadgetSubpath { a: a.clone(), f: f.clone(), b: b.clone(), kind });
        }
    }
    out
}

/// Reads a satisfying assignment off a threshold-feasible simple path:
/// the literal entered right after each `t{i}` is set true, every other
/// variable false.
pub fn extract_assignment(inst: &SatInstance, red: &ReductionInstance, path: &Path) -> Result<Vec<bool>> {
    let g = &red.graph;
    g.check_path(path).map_err(|e| Error::InvalidCertificate(e.to_string()))?;
    if !path.is_simple() {
        return Err(Error::InvalidCertificate("path is not simple".into()));
    }
    let hd = hd_path_capacity(g, path)?;
    if hd < red.threshold {
        return Err(Error::InvalidCertificate(format!("path capacity {hd} is below the threshold {}", red.threshold)));
    }
    let mut chosen: BTreeMap<usize, usize> = BTreeMap::new();
    for w in path.vertices().windows(2) {
        let here = &red.provenance[g.name(w[0])];
        if here.role != "t" {
            continue;
        }
        let next = &red.provenance[g.name(w[1])];
        match (next.clause, next.position) {
            (Some(c), Some(j)) if Some(c) == here.clause => {
                chosen.insert(c, j);
            }
            _ => return Err(Error::InvalidCertificate(format!("unexpected vertex {} after {}", g.name(w[1]), g.name(w[0])))),
        }
    }
    let mut assignment = vec![false; inst.variable_count() as usize];
    let mut fixed: BTreeMap<u32, bool> = BTreeMap::new();
    for (&i, &j) in &chosen {
        let lit = inst.literal(i, j);
        if fixed.insert(lit.var, !lit.negated).is_some_and(|prev| prev == lit.negated) {
            return Err(Error::InvalidCertificate(format!("variable {} is chosen both ways", lit.var)));
        }
        assignment[lit.var as usize - 1] = !lit.negated;
    }
    if chosen.len() != inst.clause_count() || !inst.evaluate(&assignment) {
        return Err(Error::InvalidCertificate("extracted assignment does not satisfy the formula".into()));
    }
    Ok(assignment)
}

/// Route through the first true literal of every clause.
pub fn path_for_assignment(inst: &SatInstance, red: &ReductionInstance, assignment: &[bool]) -> Result<Path> {
    if assignment.len() != inst.variable_count() as usize {
        return Err(Error::InvalidCertificate(format!(
            "assignment has {} values for {} variables",
            assignment.len(),
            inst.variable_count()
        )));
    }
    let partners = red.forbidden.partners();
    let mut names = vec!["S".to_string()];
    for i in 1..=inst.clause_count() {
        let j = (1..=3)
            .find(|&j| inst.literal(i, j).eval(assignment))
            .ok_or_else(|| Error::InvalidCertificate(format!("assignment falsifies clause {i}")))?;
        let o = Occurrence { clause: i, position: j };
        names.push(format!("t{i}"));
        match partners.get(&o) {
            None => names.push(literal_vertex(o)),
            Some(list) => {
                for &p in list {
                    let (a, b) = guard_vertices(o, p);
                    let f = if o < p { merge_vertex(o, p) } else { merge_vertex(p, o) };
                    names.extend([a, f, b]);
                }
            }
        }
        names.push(format!("r{i}"));
    }
    names.push("D".into());
    red.graph.path_from_names(&names)
}
