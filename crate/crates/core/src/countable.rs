//! Countable hypergraphs presented lazily, and finite evidence about them.
//!
//! A [`LazyHypergraph`] is an edge enumerator `index -> finite edge`. Finite
//! windows are taken with [`truncate`]. Two tools then work on the window:
//!
//! * [`find_omega_witness`] searches for a *staircase*: distinct vertices
//!   `v_0..v_{k-1}` and edges `F_1..F_k` with `F_i ∩ {v_0..v_{k-1}} =
//!   {v_0..v_{i-1}}`. Restricted to those vertices the edges form the first
//!   `k` nonempty levels of the ω hypergraph (all finite initial segments of
//!   the naturals), which is the shape every countable hypergraph without a
//!   minimal cover must contain.
//! * [`local_construction`] runs the vertex-by-vertex cover construction
//!   (fix the least uncovered vertex, cover what only edges through it can
//!   reach, repeat) and records every intermediate set.
//!
//! The empty edge of ω is not part of a staircase: any edge disjoint from
//! the staircase vertices has an empty trace, so that level carries no
//! information. [`witness_subhypergraph`] can append such an edge when one
//! exists.
//!
//! Only finite truncations are ever searched; nothing here tries to build
//! an infinite staircase.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::covers::{ensure_minimal, greedy_minimalize, Cover};
use crate::error::{check_limit, Error, Result};
use crate::hypergraph::{Edge, FiniteHypergraph};
use crate::vertex_set::{Vertex, VertexSet};

/// Largest grid radius accepted by [`gen_lattice_lines`].
pub const DEFAULT_MAX_RADIUS: usize = 10;

type EdgeFn = dyn Fn(usize) -> Edge + Send + Sync;
type LabelFn = dyn Fn(Vertex) -> String + Send + Sync;

/// Known facts about a generated family, each with a note saying why it holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Metadata {
    pub known_point_finite: Option<String>,
    pub known_bounded_width: Option<String>,
    pub known_no_minimal_cover: Option<String>,
}

/// A countable hypergraph given by its edge enumerator.
#[derive(Clone)]
pub struct LazyHypergraph {
    name: String,
    edge_fn: Arc<EdgeFn>,
    len: Option<usize>,
    labeler: Option<Arc<LabelFn>>,
    metadata: Metadata,
}

impl LazyHypergraph {
    /// An infinite family. `edge_fn` must be pure.
    pub fn new(name: impl Into<String>, edge_fn: impl Fn(usize) -> Edge + Send + Sync + 'static) -> Self {
        LazyHypergraph {
            name: name.into(),
            edge_fn: Arc::new(edge_fn),
            len: None,
            labeler: None,
            metadata: Metadata::default(),
        }
    }

    /// A finite family presented through the same interface.
    pub fn from_finite(name: impl Into<String>, edges: Vec<Edge>) -> Self {
        let len = edges.len();
        let edges = Arc::new(edges);
        let mut lazy = LazyHypergraph::new(name, move |i| edges[i].clone());
        lazy.len = Some(len);
        lazy
    }

    pub fn with_labeler(mut self, labeler: impl Fn(Vertex) -> String + Send + Sync + 'static) -> Self {
        self.labeler = Some(Arc::new(labeler));
        self
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    /// Number of edges, or `None` for an infinite family.
    pub fn len(&self) -> Option<usize> {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == Some(0)
    }

    /// Edge `index`, or `None` past the end of a finite family.
    pub fn edge_at(&self, index: usize) -> Option<Edge> {
        match self.len {
            Some(len) if index >= len => None,
            _ => Some((self.edge_fn)(index)),
        }
    }

    pub fn label(&self, v: Vertex) -> String {
        match &self.labeler {
            Some(f) => f(v),
            None => v.to_string(),
        }
    }
}

impl fmt::Debug for LazyHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyHypergraph")
            .field("name", &self.name)
            .field("len", &self.len)
            .field("metadata", &self.metadata)
            .finish()
    }
}

/// The ω hypergraph: edge `n` is `{0, ..., n-1}`.
pub fn gen_omega() -> LazyHypergraph {
    LazyHypergraph::new("omega", |n| VertexSet::initial_segment(n as u32)).with_metadata(Metadata {
        known_no_minimal_cover: Some("any cover of ω contains an edge strictly inside another cover member".into()),
        ..Metadata::default()
    })
}

/// Integer vertex encoding: `0 -> 0`, `k -> 2k`, `-k -> 2k - 1`.
pub fn encode_integer(z: i64) -> Vertex {
    let id = if z >= 0 { 2 * z } else { -2 * z - 1 };
    Vertex::try_from(id).expect("integer vertex out of encodable range")
}

pub fn decode_integer(v: Vertex) -> i64 {
    let v = i64::from(v);
    if v % 2 == 0 {
        v / 2
    } else {
        -(v + 1) / 2
    }
}

/// Dömötör's incomparable family over the integers, for `n >= 2`:
/// `A_n = [-n, 0] ∪ {n}` at index `2(n-2)` and `B_n = {-n} ∪ [0, n]` at
/// index `2(n-2) + 1`. Vertices use [`encode_integer`].
pub fn gen_domotor() -> LazyHypergraph {
    LazyHypergraph::new("domotor", domotor_edge)
        .with_labeler(|v| decode_integer(v).to_string())
        .with_metadata(Metadata {
            known_no_minimal_cover: Some(
                "Dömötör's example: a cover of the integers by pairwise incomparable finite sets with no minimal subcover"
                    .into(),
            ),
            ..Metadata::default()
        })
}

fn domotor_edge(index: usize) -> Edge {
    let n = (index / 2 + 2) as i64;
    let members: Vec<i64> = if index.is_multiple_of(2) {
        (-n..=0).chain([n]).collect()
    } else {
        [-n].into_iter().chain(0..=n).collect()
    };
    members.into_iter().map(encode_integer).collect()
}

/// Grid point of the lattice-lines family.
pub fn lattice_point(radius: usize, v: Vertex) -> (i64, i64) {
    let side = 2 * radius as i64 + 1;
    let v = i64::from(v);
    (v % side - radius as i64, v / side - radius as i64)
}

/// Maximal collinear subsets (two or more points) of the grid `[-r, r]^2`.
///
/// Point `(x, y)` has id `(y + r)(2r + 1) + (x + r)`. Each line is written as
/// `a x + b y = c` with `gcd(a, b) = 1` and `(a, b)` positive in the first
/// nonzero coordinate; edges are ordered by `(a, b, c)`.
pub fn gen_lattice_lines(radius: usize) -> Result<LazyHypergraph> {
    gen_lattice_lines_bounded(radius, DEFAULT_MAX_RADIUS)
}

pub fn gen_lattice_lines_bounded(radius: usize, max_radius: usize) -> Result<LazyHypergraph> {
    if radius == 0 {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    check_limit("grid radius", radius, max_radius)?;
    let r = radius as i64;
    let side = 2 * r + 1;
    let points: Vec<(i64, i64)> = (-r..=r).flat_map(|y| (-r..=r).map(move |x| (x, y))).collect();
    let id = |(x, y): (i64, i64)| ((y + r) * side + (x + r)) as Vertex;

    let mut lines: BTreeMap<(i64, i64, i64), VertexSet> = BTreeMap::new();
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let key = line_through(p, q);
            let line = lines.entry(key).or_default();
            line.insert(id(p));
            line.insert(id(q));
        }
    }
    let edges: Vec<Edge> = lines.into_values().collect();
    Ok(LazyHypergraph::from_finite(format!("lines-r{radius}"), edges)
        .with_labeler(move |v| {
            let (x, y) = lattice_point(radius, v);
            format!("({x},{y})")
        })
        .with_metadata(Metadata {
            known_point_finite: Some("finite family".into()),
            known_bounded_width: Some(format!("every line meets the grid in at most {side} points")),
            known_no_minimal_cover: None,
        }))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn line_through(p: (i64, i64), q: (i64, i64)) -> (i64, i64, i64) {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let g = gcd(dx, dy);
    let (mut a, mut b) = (dy / g, -dx / g);
    if a < 0 || (a == 0 && b < 0) {
        a = -a;
        b = -b;
    }
    (a, b, a * p.0 + b * p.1)
}

/// Finite window onto a lazy family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub hypergraph: FiniteHypergraph,
    /// Lazy index of each finite edge.
    pub lazy_index: Vec<usize>,
}

/// The first `k` edges (fewer if the family is finite and shorter).
pub fn truncate(lazy: &LazyHypergraph, k: usize) -> Truncation {
    let count = lazy.len().map_or(k, |len| len.min(k));
    let edges: Vec<Edge> = (0..count).map(|i| (lazy.edge_fn)(i)).collect();
    let mut hypergraph = FiniteHypergraph::new(edges);
    if lazy.labeler.is_some() {
        let labels = hypergraph.vertex_set().iter().map(|v| (v, lazy.label(v))).collect();
        hypergraph = hypergraph.with_labels(labels);
    }
    Truncation {
        hypergraph,
        lazy_index: (0..count).collect(),
    }
}

/// A finite staircase; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaWitness {
    /// `v_0, ..., v_{k-1}`.
    pub omega: Vec<Vertex>,
    /// `F_1, ..., F_k`.
    pub edge_indices: Vec<usize>,
    pub depth: usize,
}

/// Lexicographically least staircase of the given depth, comparing edge
/// index sequences first and vertex sequences second.
///
/// Once the edges are fixed the admissible choices for `v_j` are exactly
/// `(F_{j+1} ∩ ... ∩ F_k) \ (F_1 ∪ ... ∪ F_j)`, independently for each `j`,
/// so the search runs over edge sequences only and keeps one candidate set
/// per level. A level whose candidates become empty is pruned, as is any
/// candidate vertex lying in too few edges to reach the requested depth.
pub fn find_omega_witness(h: &FiniteHypergraph, depth: usize) -> Result<Option<OmegaWitness>> {
    if depth == 0 {
        return Err(Error::InvalidParameter("staircase depth must be at least 1".into()));
    }
    let vertices = h.vertex_set();
    let mut degree: BTreeMap<Vertex, usize> = vertices.iter().map(|v| (v, 0)).collect();
    for i in h.distinct_indices() {
        for v in h.edge(i) {
            *degree.get_mut(&v).expect("edge vertex in vertex set") += 1;
        }
    }
    // deep[j]: vertices that can serve as v_j, i.e. lie in at least depth - j edges.
    let deep: Vec<VertexSet> = (0..depth)
        .map(|j| vertices.iter().filter(|v| degree[v] >= depth - j).collect())
        .collect();

    let mut search = StaircaseSearch {
        edges: h.edges(),
        depth,
        deep: &deep,
        chosen: Vec::with_capacity(depth),
        candidates: Vec::with_capacity(depth),
    };
    if !search.extend(&VertexSet::new()) {
        return Ok(None);
    }
    let omega = search
        .candidates
        .iter()
        .map(|c| c.first().expect("nonempty candidate set"))
        .collect();
    Ok(Some(OmegaWitness {
        omega,
        edge_indices: search.chosen,
        depth,
    }))
}

struct StaircaseSearch<'a> {
    edges: &'a [Edge],
    depth: usize,
    deep: &'a [VertexSet],
    chosen: Vec<usize>,
    /// candidates[j]: admissible v_j given the edges chosen so far.
    candidates: Vec<VertexSet>,
}

impl StaircaseSearch<'_> {
    fn extend(&mut self, union: &VertexSet) -> bool {
        let level = self.chosen.len();
        if level == self.depth {
            return true;
        }
        for (index, e) in self.edges.iter().enumerate() {
            if !self.candidates.iter().all(|c| c.intersects(e)) {
                continue;
            }
            let mut fresh = e.difference(union);
            fresh.intersect_with(&self.deep[level]);
            if fresh.is_empty() {
                continue;
            }
            let saved = self.candidates.clone();
            for c in &mut self.candidates {
                c.intersect_with(e);
            }
            self.candidates.push(fresh);
            self.chosen.push(index);
            if self.extend(&union.union(e)) {
                return true;
            }
            self.chosen.pop();
            self.candidates = saved;
        }
        false
    }
}

/// Independent check of the staircase condition.
pub fn validate_witness(h: &FiniteHypergraph, w: &OmegaWitness) -> Result<(), String> {
    if w.omega.len() != w.depth || w.edge_indices.len() != w.depth {
        return Err(format!(
            "depth {} but {} vertices and {} edges",
            w.depth,
            w.omega.len(),
            w.edge_indices.len()
        ));
    }
    let omega: VertexSet = w.omega.iter().copied().collect();
    if omega.len() != w.depth {
        return Err("staircase vertices are not distinct".into());
    }
    let mut seen = std::collections::BTreeSet::new();
    for (i, &f) in w.edge_indices.iter().enumerate() {
        if f >= h.len() {
            return Err(format!("edge index {f} out of range"));
        }
        if !seen.insert(f) {
            return Err(format!("edge index {f} repeated"));
        }
        let trace = h.edge(f).intersection(&omega);
        let segment: VertexSet = w.omega[..=i].iter().copied().collect();
        if trace != segment {
            return Err(format!(
                "edge {f} (level {}) has trace {:?} on the staircase, expected {:?}",
                i + 1,
                trace,
                segment
            ));
        }
    }
    Ok(())
}

/// Traces of the staircase edges on the staircase vertices, relabeled so that
/// `v_j` becomes `j`. With `with_empty_level`, an edge of `h` disjoint from the
/// staircase is appended first (returns `None` if there is none).
pub fn witness_subhypergraph(h: &FiniteHypergraph, w: &OmegaWitness, with_empty_level: bool) -> Option<FiniteHypergraph> {
    let omega: VertexSet = w.omega.iter().copied().collect();
    let position: BTreeMap<Vertex, Vertex> = w.omega.iter().enumerate().map(|(j, &v)| (v, j as Vertex)).collect();
    let relabel = |e: &Edge| -> Edge { e.intersection(&omega).iter().map(|v| position[&v]).collect() };
    let mut edges = Vec::new();
    if with_empty_level {
        let empty = h.edges().iter().find(|e| e.is_disjoint(&omega))?;
        edges.push(relabel(empty));
    }
    edges.extend(w.edge_indices.iter().map(|&f| relabel(h.edge(f))));
    Some(FiniteHypergraph::new(edges))
}

/// One round of [`local_construction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionStep {
    pub n: usize,
    /// `V_n`: vertices not yet covered.
    pub remaining: VertexSet,
    /// `v_n = min V_n`.
    pub vertex: Vertex,
    /// `B_{<n} = {v_0, ..., v_{n-1}}`.
    pub earlier: VertexSet,
    /// Host indices of the distinct edges through `v_n` avoiding `B_{<n}`.
    pub local_family: Vec<usize>,
    /// `V_n` minus every edge avoiding `B_{≤n}`.
    pub universe: VertexSet,
    /// Traces of `local_family` on `universe`.
    pub local_hypergraph: FiniteHypergraph,
    /// Minimal cover of `local_hypergraph`, as its own indices.
    pub local_cover: Vec<usize>,
    /// Host indices of the lifted cover edges.
    pub lifted: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub steps: Vec<ConstructionStep>,
}

/// Builds a minimal cover one vertex at a time.
///
/// With `V_0 = V`, each round takes the least uncovered vertex `v_n`, the
/// set `B_{<n}` of earlier round vertices, and the edges through `v_n` that
/// avoid `B_{<n}`. Their traces on the part of `V_n` no edge avoiding
/// `B_{≤n}` can reach get a minimal cover (ascending greedy), and each
/// trace is lifted to its lowest-index preimage. Rounds stop once everything
/// is covered. The inclusion `V_n ⊆ ⋃E_{-B_{<n}}` is asserted every round
/// and the final cover is re-checked for minimality; either failure is an
/// [`Error::InvariantViolation`].
pub fn local_construction(h: &FiniteHypergraph) -> Result<(Cover<'_>, ConstructionTrace)> {
    let distinct = h.distinct_indices();
    let vertices = h.vertex_set();
    let avoiding = |b: &VertexSet| -> Vec<usize> {
        distinct.iter().copied().filter(|&i| h.edge(i).is_disjoint(b)).collect()
    };

    let mut covered = VertexSet::new();
    let mut earlier = VertexSet::new();
    let mut selected = std::collections::BTreeSet::new();
    let mut trace = ConstructionTrace::default();

    for n in 0.. {
        let remaining = vertices.difference(&covered);
        let Some(vertex) = remaining.first() else { break };

        let reachable = h.union_of(&avoiding(&earlier));
        if !remaining.is_subset(&reachable) {
            return Err(Error::InvariantViolation(format!(
                "round {n}: uncovered vertices {:?} are not reachable by edges avoiding {:?}",
                remaining.difference(&reachable),
                earlier
            )));
        }

        let local_family: Vec<usize> = distinct
            .iter()
            .copied()
            .filter(|&i| h.edge(i).contains(vertex) && h.edge(i).is_disjoint(&earlier))
            .collect();
        let mut up_to = earlier.clone();
        up_to.insert(vertex);
        let universe = remaining.difference(&h.union_of(&avoiding(&up_to)));

        let (local_hypergraph, source) = h.restrict_subfamily(&local_family, &universe);
        let local = greedy_minimalize(&Cover::all(&local_hypergraph))?;
        let local_cover = local.indices();
        let lifted: Vec<usize> = local_cover.iter().map(|&j| source[j]).collect();

        for &i in &lifted {
            covered.union_with(h.edge(i));
            selected.insert(i);
        }
        if !covered.contains(vertex) {
            return Err(Error::InvariantViolation(format!("round {n}: vertex {vertex} left uncovered")));
        }

        trace.steps.push(ConstructionStep {
            n,
            remaining,
            vertex,
            earlier: earlier.clone(),
            local_family,
            universe,
            local_hypergraph,
            local_cover,
            lifted,
        });
        earlier.insert(vertex);
    }

    let cover = Cover::from_trusted(h, selected);
    ensure_minimal(&cover, "local_construction")?;
    Ok((cover, trace))
}

/// Checks the bookkeeping of a construction trace: strict descent of the
/// uncovered sets, `v_n = min V_n`, pairwise distinct round vertices, and
/// `V_n ⊆ ⋃E_{-B_{<n}}`.
pub fn validate_trace(h: &FiniteHypergraph, trace: &ConstructionTrace) -> Result<(), String> {
    let mut previous: Option<&VertexSet> = None;
    let mut vertices_seen = VertexSet::new();
    for step in &trace.steps {
        if let Some(prev) = previous {
            if !(step.remaining.is_subset(prev) && step.remaining.len() < prev.len()) {
                return Err(format!("round {}: V_n does not strictly shrink", step.n));
            }
        }
        if step.remaining.first() != Some(step.vertex) {
            return Err(format!("round {}: v_n is not min V_n", step.n));
        }
        if !vertices_seen.insert(step.vertex) {
            return Err(format!("round {}: v_n repeats an earlier round vertex", step.n));
        }
        let reachable = h.union_of(&h.sub_disjoint(&step.earlier));
        if !step.remaining.is_subset(&reachable) {
            return Err(format!("round {}: V_n not covered by edges avoiding B_<n", step.n));
        }
        previous = Some(&step.remaining);
    }
    Ok(())
}
