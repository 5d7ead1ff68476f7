//! Finite hypergraphs and the subfamily selectors used throughout the crate.
//!
//! A hypergraph here is just an ordered list of edges. Its vertex set is the
//! union of the edges, so there are no isolated vertices. Duplicate edges may
//! be stored; everything that reasons about covers collapses a duplicate onto
//! its lowest index first (see [`FiniteHypergraph::representatives`]).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::vertex_set::{Vertex, VertexSet};

/// An edge is a finite vertex set, possibly empty.
pub type Edge = VertexSet;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FiniteHypergraph {
    edges: Vec<Edge>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<Vertex, String>,
}

impl FiniteHypergraph {
    pub fn new(edges: Vec<Edge>) -> Self {
        FiniteHypergraph {
            edges,
            labels: BTreeMap::new(),
        }
    }

    /// Builds a hypergraph from nested vertex lists.
    ///
    /// ```
    /// use hypercover::FiniteHypergraph;
    /// let h = FiniteHypergraph::from_edges([vec![0, 1], vec![1, 2]]);
    /// assert_eq!(h.vertex_set().to_vec(), vec![0, 1, 2]);
    /// ```
    pub fn from_edges<I, E>(edges: I) -> Self
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = Vertex>,
    {
        Self::new(edges.into_iter().map(|e| e.into_iter().collect()).collect())
    }

    /// Attaches external names to vertex ids. Unnamed vertices print as their id.
    pub fn with_labels(mut self, labels: BTreeMap<Vertex, String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> String {
        self.labels
            .get(&v)
            .cloned()
            .unwrap_or_else(|| v.to_string())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Union of all edges.
    pub fn vertex_set(&self) -> VertexSet {
        let mut all = VertexSet::new();
        for e in &self.edges {
            all.union_with(e);
        }
        all
    }

    /// Largest edge cardinality (0 for the empty family).
    pub fn width(&self) -> usize {
        self.edges.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// Union of the edges at `indices`.
    pub fn union_of<'a>(&self, indices: impl IntoIterator<Item = &'a usize>) -> VertexSet {
        let mut all = VertexSet::new();
        for &i in indices {
            all.union_with(&self.edges[i]);
        }
        all
    }

    /// Traces of every edge on `a`, in the original order. The second value
    /// maps each result edge back to its source index.
    pub fn restrict(&self, a: &VertexSet) -> (FiniteHypergraph, Vec<usize>) {
        self.restrict_subfamily(&(0..self.len()).collect::<Vec<_>>(), a)
    }

    /// Traces on `a` of the edges at `indices`, in the given order.
    pub fn restrict_subfamily(&self, indices: &[usize], a: &VertexSet) -> (FiniteHypergraph, Vec<usize>) {
        let edges = indices.iter().map(|&i| self.edges[i].intersection(a)).collect();
        let restricted = FiniteHypergraph {
            edges,
            labels: self.labels.clone(),
        };
        (restricted, indices.to_vec())
    }

    /// Indices of edges containing every vertex of `a`.
    pub fn sub_containing(&self, a: &VertexSet) -> Vec<usize> {
        self.select(|e| a.is_subset(e))
    }

    /// Indices of edges missing every vertex of `b`.
    pub fn sub_disjoint(&self, b: &VertexSet) -> Vec<usize> {
        self.select(|e| e.is_disjoint(b))
    }

    /// Indices of edges containing `a` and missing `b`.
    pub fn sub_cont_disj(&self, a: &VertexSet, b: &VertexSet) -> Vec<usize> {
        self.select(|e| a.is_subset(e) && e.is_disjoint(b))
    }

    fn select(&self, mut keep: impl FnMut(&Edge) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| keep(&self.edges[i])).collect()
    }

    /// Indices of edges not strictly contained in another edge. Every copy of
    /// a duplicated maximal edge is reported.
    pub fn maximal_edges(&self) -> Vec<usize> {
        self.select(|e| {
            !self
                .edges
                .iter()
                .any(|other| e.len() < other.len() && e.is_subset(other))
        })
    }

    /// For each index, the lowest index holding an equal edge.
    pub fn representatives(&self) -> Vec<usize> {
        let mut first: HashMap<&Edge, usize> = HashMap::new();
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| *first.entry(e).or_insert(i))
            .collect()
    }

    /// Indices that are their own representative, ascending.
    pub fn distinct_indices(&self) -> Vec<usize> {
        self.representatives()
            .into_iter()
            .enumerate()
            .filter(|&(i, r)| i == r)
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of distinct edges containing `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.distinct_indices()
            .into_iter()
            .filter(|&i| self.edges[i].contains(v))
            .count()
    }
}
