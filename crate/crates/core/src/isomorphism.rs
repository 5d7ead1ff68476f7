//! Isomorphism of small hypergraphs by backtracking over vertex bijections.
//!
//! Edge families are compared as sets of sets. Candidates for each vertex are
//! restricted to vertices with the same degree signature (the sorted sizes of
//! the distinct edges through it), and an edge is checked as soon as all its
//! vertices are mapped.

use std::collections::{BTreeMap, HashSet};

use crate::error::{check_limit, Result};
use crate::hypergraph::{Edge, FiniteHypergraph};
use crate::vertex_set::{Vertex, VertexSet};

pub const DEFAULT_MAX_VERTICES: usize = 10;

/// `Some(f)` when `f` maps the vertices of `h1` onto those of `h2` and carries
/// the edge set of `h1` onto the edge set of `h2`.
pub fn is_isomorphic(h1: &FiniteHypergraph, h2: &FiniteHypergraph) -> Result<Option<BTreeMap<Vertex, Vertex>>> {
    is_isomorphic_bounded(h1, h2, DEFAULT_MAX_VERTICES)
}

pub fn is_isomorphic_bounded(
    h1: &FiniteHypergraph,
    h2: &FiniteHypergraph,
    max_vertices: usize,
) -> Result<Option<BTreeMap<Vertex, Vertex>>> {
    let v1 = h1.vertex_set();
    let v2 = h2.vertex_set();
    check_limit("vertex count", v1.len().max(v2.len()), max_vertices)?;
    if v1.len() != v2.len() {
        return Ok(None);
    }
    let e1 = distinct_edges(h1);
    let e2 = distinct_edges(h2);
    if e1.len() != e2.len() {
        return Ok(None);
    }
    let mut sizes1: Vec<usize> = e1.iter().map(VertexSet::len).collect();
    let mut sizes2: Vec<usize> = e2.iter().map(VertexSet::len).collect();
    sizes1.sort_unstable();
    sizes2.sort_unstable();
    if sizes1 != sizes2 {
        return Ok(None);
    }

    let signature = |edges: &[Edge], v: Vertex| {
        let mut sig: Vec<usize> = edges.iter().filter(|e| e.contains(v)).map(VertexSet::len).collect();
        sig.sort_unstable();
        sig
    };
    let targets: Vec<Vertex> = v2.to_vec();
    let target_sigs: Vec<Vec<usize>> = targets.iter().map(|&w| signature(&e2, w)).collect();

    let mut order: Vec<(Vertex, Vec<usize>)> = Vec::new();
    for v in &v1 {
        let sig = signature(&e1, v);
        let candidates: Vec<usize> = (0..targets.len()).filter(|&j| target_sigs[j] == sig).collect();
        if candidates.is_empty() {
            return Ok(None);
        }
        order.push((v, candidates));
    }
    order.sort_by_key(|(v, c)| (c.len(), *v));

    // Edges whose last vertex (in search order) is assigned at each depth.
    let position: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, (v, _))| (*v, i)).collect();
    let mut closing: Vec<Vec<&Edge>> = vec![Vec::new(); order.len()];
    for e in &e1 {
        if let Some(last) = e.iter().map(|v| position[&v]).max() {
            closing[last].push(e);
        }
    }

    let target_set: HashSet<&Edge> = e2.iter().collect();
    let mut search = Search {
        order: &order,
        closing: &closing,
        targets: &targets,
        target_set: &target_set,
        assignment: BTreeMap::new(),
        used: vec![false; targets.len()],
    };
    Ok(if search.extend(0) { Some(search.assignment) } else { None })
}

fn distinct_edges(h: &FiniteHypergraph) -> Vec<Edge> {
    h.distinct_indices().into_iter().map(|i| h.edge(i).clone()).collect()
}

struct Search<'a> {
    order: &'a [(Vertex, Vec<usize>)],
    closing: &'a [Vec<&'a Edge>],
    targets: &'a [Vertex],
    target_set: &'a HashSet<&'a Edge>,
    assignment: BTreeMap<Vertex, Vertex>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let (v, candidates) = &self.order[depth];
        for &j in candidates {
            if self.used[j] {
                continue;
            }
            self.used[j] = true;
            self.assignment.insert(*v, self.targets[j]);
            let consistent = self.closing[depth].iter().all(|e| {
                let image: VertexSet = e.iter().map(|u| self.assignment[&u]).collect();
                self.target_set.contains(&image)
            });
            if consistent && self.extend(depth + 1) {
                return true;
            }
            self.assignment.remove(v);
            self.used[j] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    fn hg(edges: &[&[u32]]) -> FiniteHypergraph {
        FiniteHypergraph::from_edges(edges.iter().map(|e| e.iter().copied()))
    }

    fn relabel(h: &FiniteHypergraph, f: &BTreeMap<Vertex, Vertex>) -> FiniteHypergraph {
        FiniteHypergraph::new(h.edges().iter().map(|e| e.iter().map(|v| f[&v]).collect()).collect())
    }

    #[test]
    fn relabeled_edge() {
        let f = is_isomorphic(&hg(&[&[0, 1]]), &hg(&[&[5, 7]])).unwrap().unwrap();
        assert_eq!(f, BTreeMap::from([(0, 5), (1, 7)]));
    }

    #[test]
    fn symmetric_pair() {
        let a = hg(&[&[0], &[0, 1]]);
        let b = hg(&[&[0, 1], &[1]]);
        let f = is_isomorphic(&a, &b).unwrap().unwrap();
        assert_eq!(f, BTreeMap::from([(0, 1), (1, 0)]));
    }

    #[test]
    fn different_edge_counts() {
        assert!(is_isomorphic(&hg(&[&[0, 1]]), &hg(&[&[0], &[1]])).unwrap().is_none());
    }

    #[test]
    fn duplicates_and_empty_edges_use_set_semantics() {
        let a = hg(&[&[0, 1], &[0, 1], &[]]);
        let b = hg(&[&[], &[3, 4]]);
        assert!(is_isomorphic(&a, &b).unwrap().is_some());
        assert!(is_isomorphic(&hg(&[&[0, 1]]), &b).unwrap().is_none());
    }

    #[test]
    fn size_limit() {
        let big = FiniteHypergraph::new(vec![VertexSet::initial_segment(11)]);
        assert!(matches!(is_isomorphic(&big, &big), Err(Error::SizeLimit { .. })));
        assert!(is_isomorphic_bounded(&big, &big, 11).unwrap().is_some());
    }

    fn arb_hypergraph() -> impl Strategy<Value = FiniteHypergraph> {
        prop::collection::vec(prop::collection::btree_set(0u32..7, 0..5), 0..7)
            .prop_map(FiniteHypergraph::from_edges)
    }

    proptest! {
        #[test]
        fn reflexive_and_relabel_invariant(h in arb_hypergraph(), perm in Just((0u32..7).collect::<Vec<_>>()).prop_shuffle()) {
            prop_assert!(is_isomorphic(&h, &h).unwrap().is_some());
            let f: BTreeMap<Vertex, Vertex> = (0u32..7).zip(perm.iter().map(|p| p + 20)).collect();
            let g = relabel(&h, &f);
            let found = is_isomorphic(&h, &g).unwrap();
            prop_assert!(found.is_some());
            let found = found.unwrap();
            let image = relabel(&h, &found);
            let as_set = |x: &FiniteHypergraph| x.edges().iter().cloned().collect::<std::collections::BTreeSet<_>>();
            prop_assert_eq!(as_set(&image), as_set(&g));
        }

        #[test]
        fn symmetric(a in arb_hypergraph(), b in arb_hypergraph()) {
            let ab = is_isomorphic(&a, &b).unwrap().is_some();
            let ba = is_isomorphic(&b, &a).unwrap().is_some();
            prop_assert_eq!(ab, ba);
        }
    }
}
