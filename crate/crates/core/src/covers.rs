//! Cover verification, minimality, greedy extraction and enumeration.
//!
//! A selection `C` of edges is a cover when its union is the whole vertex set,
//! and a minimal cover when no proper subselection still covers. The fast
//! test uses the private-vertex characterization: `C` is minimal exactly when
//! every selected edge owns a vertex that no other selected edge contains.
//! [`is_minimal_cover_def`] checks the definition literally by enumerating
//! subselections and serves as the oracle for the fast test.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{check_limit, Error, Result};
use crate::hypergraph::FiniteHypergraph;
use crate::vertex_set::{Vertex, VertexSet};

/// Largest selection the subset-enumeration oracle will accept.
pub const DEFAULT_MAX_SELECTED: usize = 20;
/// Largest distinct-edge count [`enumerate_minimal_covers`] will accept.
pub const DEFAULT_MAX_EDGES: usize = 20;

/// A selection of edge indices of a host hypergraph.
///
/// Whether the selection actually covers is a property checked by
/// [`is_cover`], not something construction guarantees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover<'a> {
    host: &'a FiniteHypergraph,
    selected: BTreeSet<usize>,
}

impl<'a> Cover<'a> {
    pub fn new(host: &'a FiniteHypergraph, selected: impl IntoIterator<Item = usize>) -> Result<Self> {
        let selected: BTreeSet<usize> = selected.into_iter().collect();
        if let Some(&index) = selected.iter().find(|&&i| i >= host.len()) {
            return Err(Error::IndexOutOfRange { index, len: host.len() });
        }
        Ok(Cover { host, selected })
    }

    /// Every edge of the host.
    pub fn all(host: &'a FiniteHypergraph) -> Self {
        Cover {
            host,
            selected: (0..host.len()).collect(),
        }
    }

    pub(crate) fn from_trusted(host: &'a FiniteHypergraph, selected: BTreeSet<usize>) -> Self {
        debug_assert!(selected.iter().all(|&i| i < host.len()));
        Cover { host, selected }
    }

    pub fn host(&self) -> &'a FiniteHypergraph {
        self.host
    }

    pub fn selected(&self) -> &BTreeSet<usize> {
        &self.selected
    }

    pub fn indices(&self) -> Vec<usize> {
        self.selected.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn union(&self) -> VertexSet {
        self.host.union_of(&self.selected)
    }

    fn uncovered(&self) -> Option<Vertex> {
        self.host.vertex_set().difference(&self.union()).first()
    }

    fn require_cover(&self) -> Result<()> {
        match self.uncovered() {
            None => Ok(()),
            Some(missing) => Err(Error::NotACover { missing }),
        }
    }
}

/// Result of the private-vertex test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub minimal: bool,
    /// Selected edge index to its smallest private vertex, for every selected
    /// edge that has one.
    pub private_vertex: BTreeMap<usize, Vertex>,
    /// Lowest selected index without a private vertex. Dropping it keeps a cover.
    pub violating_edge: Option<usize>,
}

pub fn is_cover(cover: &Cover<'_>) -> bool {
    cover.uncovered().is_none()
}

/// Private-vertex minimality test.
///
/// Two selected copies of the same edge can never both own a private vertex,
/// so a selection with duplicates is reported as not minimal with the lower
/// copy as the violating edge.
pub fn is_minimal_cover(cover: &Cover<'_>) -> Result<MinimalityReport> {
    cover.require_cover()?;
    let host = cover.host;

    // Vertices hit by at least one / at least two selected edges.
    let mut once = VertexSet::new();
    let mut twice = VertexSet::new();
    for &i in &cover.selected {
        let e = host.edge(i);
        twice.union_with(&once.intersection(e));
        once.union_with(e);
    }

    let mut private_vertex = BTreeMap::new();
    let mut violating_edge = None;
    for &i in &cover.selected {
        match host.edge(i).difference(&twice).first() {
            Some(v) => {
                private_vertex.insert(i, v);
            }
            None => {
                violating_edge.get_or_insert(i);
            }
        }
    }
    Ok(MinimalityReport {
        minimal: violating_edge.is_none(),
        private_vertex,
        violating_edge,
    })
}

/// Minimality by definition: no proper subselection is a cover.
pub fn is_minimal_cover_def(cover: &Cover<'_>) -> Result<bool> {
    is_minimal_cover_def_bounded(cover, DEFAULT_MAX_SELECTED)
}

pub fn is_minimal_cover_def_bounded(cover: &Cover<'_>, max_selected: usize) -> Result<bool> {
    cover.require_cover()?;
    check_limit("selection size", cover.len(), max_selected.min(63))?;
    let edges: Vec<&VertexSet> = cover.selected.iter().map(|&i| cover.host.edge(i)).collect();
    let target = cover.host.vertex_set();
    let full: u64 = (1u64 << edges.len()) - 1;
    let mut union = VertexSet::new();
    // Proper submasks in decreasing order, so large subselections come first.
    let mut mask = full;
    while mask != 0 {
        mask = (mask - 1) & full;
        union.clear();
        let mut bits = mask;
        while bits != 0 {
            union.union_with(edges[bits.trailing_zeros() as usize]);
            bits &= bits - 1;
        }
        if union == target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drops duplicated selections onto their lowest selected copy.
fn collapse_duplicates(cover: &Cover<'_>) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    cover
        .selected
        .iter()
        .copied()
        .filter(|&i| seen.insert(cover.host.edge(i).clone()))
        .collect()
}

/// Shrinks a cover to a minimal one.
///
/// Duplicate selections collapse to their lowest index, then indices are
/// scanned in ascending order and each is dropped iff the rest still covers.
pub fn greedy_minimalize<'a>(cover: &Cover<'a>) -> Result<Cover<'a>> {
    cover.require_cover()?;
    let host = cover.host;
    let target = host.vertex_set();
    let mut kept = collapse_duplicates(cover);
    for i in kept.clone() {
        kept.remove(&i);
        if host.union_of(&kept) != target {
            kept.insert(i);
        }
    }
    Ok(Cover::from_trusted(host, kept))
}

/// Every minimal cover of `h` over its distinct edges, by size then
/// lexicographically.
pub fn enumerate_minimal_covers(h: &FiniteHypergraph) -> Result<MinimalCovers<'_>> {
    enumerate_minimal_covers_bounded(h, DEFAULT_MAX_EDGES)
}

pub fn enumerate_minimal_covers_bounded(h: &FiniteHypergraph, max_edges: usize) -> Result<MinimalCovers<'_>> {
    let distinct = h.distinct_indices();
    check_limit("distinct edge count", distinct.len(), max_edges)?;
    let target = h.vertex_set();
    // Each edge of a minimal cover owns a vertex, so no cover is larger than |V|.
    let max_size = distinct.len().min(target.len());
    Ok(MinimalCovers {
        host: h,
        distinct,
        target,
        max_size,
        combo: Vec::new(),
        started: false,
    })
}

/// Iterator over minimal covers; see [`enumerate_minimal_covers`].
pub struct MinimalCovers<'a> {
    host: &'a FiniteHypergraph,
    distinct: Vec<usize>,
    target: VertexSet,
    max_size: usize,
    combo: Vec<usize>,
    started: bool,
}

impl MinimalCovers<'_> {
    /// Next k-combination of positions in lexicographic order, moving to
    /// size k+1 after the last one.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        let n = self.distinct.len();
        let k = self.combo.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.combo[i] < n - k + i {
                self.combo[i] += 1;
                for j in i + 1..k {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return true;
            }
        }
        if k < self.max_size {
            self.combo = (0..k + 1).collect();
            true
        } else {
            false
        }
    }

    fn current_is_minimal_cover(&self) -> bool {
        let edges = self.combo.iter().map(|&p| self.host.edge(self.distinct[p]));
        let mut once = VertexSet::new();
        let mut twice = VertexSet::new();
        for e in edges.clone() {
            twice.union_with(&once.intersection(e));
            once.union_with(e);
        }
        once == self.target && edges.into_iter().all(|e| !e.is_subset(&twice))
    }
}

impl<'a> Iterator for MinimalCovers<'a> {
    type Item = Cover<'a>;

    fn next(&mut self) -> Option<Cover<'a>> {
        while self.advance() {
            if self.current_is_minimal_cover() {
                let selected = self.combo.iter().map(|&p| self.distinct[p]).collect();
                return Some(Cover::from_trusted(self.host, selected));
            }
        }
        None
    }
}

/// Builds a minimal cover through the edge `f`'s complement.
///
/// Takes a minimal cover of the traces on `V \ F`, lifts each trace to its
/// lowest-index preimage, and adds `F` back when the lift alone misses some
/// vertex. Every result is checked with [`is_minimal_cover`].
pub fn delete_and_lift(h: &FiniteHypergraph, f: usize) -> Result<Cover<'_>> {
    if f >= h.len() {
        return Err(Error::IndexOutOfRange { index: f, len: h.len() });
    }
    let vertices = h.vertex_set();
    let rest = vertices.difference(h.edge(f));
    let (traces, source) = h.restrict(&rest);
    // Greedy collapses equal traces onto the lowest index, which is exactly
    // the lowest-index preimage.
    let local = greedy_minimalize(&Cover::all(&traces))?;
    let mut lifted: BTreeSet<usize> = local.selected.iter().map(|&i| source[i]).collect();
    if h.union_of(&lifted) != vertices {
        lifted.insert(f);
    }
    let result = Cover::from_trusted(h, lifted);
    ensure_minimal(&result, "delete_and_lift")?;
    Ok(result)
}

pub(crate) fn ensure_minimal(cover: &Cover<'_>, who: &str) -> Result<()> {
    let report = is_minimal_cover(cover)?;
    if report.minimal {
        Ok(())
    } else {
        Err(Error::InvariantViolation(format!(
            "{who} produced a non-minimal cover {:?} (edge {:?} has no private vertex)",
            cover.indices(),
            report.violating_edge
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(edges: &[&[u32]]) -> FiniteHypergraph {
        FiniteHypergraph::from_edges(edges.iter().map(|e| e.iter().copied()))
    }

    fn cover<'a>(h: &'a FiniteHypergraph, sel: &[usize]) -> Cover<'a> {
        Cover::new(h, sel.iter().copied()).unwrap()
    }

    fn omega(k: u32) -> FiniteHypergraph {
        FiniteHypergraph::new((0..k).map(VertexSet::initial_segment).collect())
    }

    #[test]
    fn is_cover_examples() {
        let h = hg(&[&[0, 1], &[1, 2]]);
        assert!(!is_cover(&cover(&h, &[0])));
        assert!(is_cover(&cover(&h, &[0, 1])));
        let empty = hg(&[&[], &[]]);
        assert!(is_cover(&cover(&empty, &[])));
    }

    #[test]
    fn out_of_range_index() {
        let h = hg(&[&[0]]);
        assert_eq!(Cover::new(&h, [1]), Err(Error::IndexOutOfRange { index: 1, len: 1 }));
    }

    #[test]
    fn minimal_with_witnesses() {
        let h = hg(&[&[0, 1], &[1, 2]]);
        let r = is_minimal_cover(&cover(&h, &[0, 1])).unwrap();
        assert!(r.minimal);
        assert_eq!(r.private_vertex, BTreeMap::from([(0, 0), (1, 2)]));
        assert_eq!(r.violating_edge, None);
    }

    #[test]
    fn not_minimal_reports_lowest_violation() {
        let h = hg(&[&[0, 1], &[0], &[1]]);
        let r = is_minimal_cover(&cover(&h, &[0, 1, 2])).unwrap();
        assert!(!r.minimal);
        assert_eq!(r.violating_edge, Some(0));
        let triangle = hg(&[&[0, 1], &[1, 2], &[0, 2]]);
        let c = cover(&triangle, &[0, 1, 2]);
        assert!(!is_minimal_cover(&c).unwrap().minimal);
        assert!(!is_minimal_cover_def(&c).unwrap());
    }

    #[test]
    fn not_a_cover_is_an_error() {
        let h = hg(&[&[0, 1], &[1, 2]]);
        assert_eq!(is_minimal_cover(&cover(&h, &[0])), Err(Error::NotACover { missing: 2 }));
        assert_eq!(is_minimal_cover_def(&cover(&h, &[0])), Err(Error::NotACover { missing: 2 }));
        assert!(greedy_minimalize(&cover(&h, &[1])).is_err());
    }

    #[test]
    fn duplicates_and_empty_edges() {
        let h = hg(&[&[0, 1], &[0, 1], &[]]);
        let r = is_minimal_cover(&cover(&h, &[0, 1])).unwrap();
        assert!(!r.minimal);
        assert_eq!(r.violating_edge, Some(0));
        assert!(!is_minimal_cover(&cover(&h, &[0, 2])).unwrap().minimal);
        assert_eq!(greedy_minimalize(&cover(&h, &[0, 1, 2])).unwrap().indices(), vec![0]);
        let only_empty = hg(&[&[]]);
        assert!(is_minimal_cover(&cover(&only_empty, &[])).unwrap().minimal);
        assert!(!is_minimal_cover(&cover(&only_empty, &[0])).unwrap().minimal);
    }

    #[test]
    fn definition_examples() {
        let h = hg(&[&[0, 1], &[1, 2]]);
        assert!(is_minimal_cover_def(&cover(&h, &[0, 1])).unwrap());
        let h = hg(&[&[0, 1], &[0], &[1]]);
        assert!(!is_minimal_cover_def(&cover(&h, &[0, 1, 2])).unwrap());
        let h = hg(&[&[]]);
        assert!(is_minimal_cover_def(&cover(&h, &[])).unwrap());
    }

    #[test]
    fn definition_size_limit() {
        let h = FiniteHypergraph::new((0..21).map(VertexSet::singleton).collect());
        assert!(matches!(is_minimal_cover_def(&Cover::all(&h)), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn greedy_examples() {
        let h = hg(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(greedy_minimalize(&cover(&h, &[0, 1, 2])).unwrap().indices(), vec![1, 2]);
        let h = hg(&[&[0, 1, 2], &[0], &[1]]);
        let g = greedy_minimalize(&cover(&h, &[0, 1, 2])).unwrap();
        assert_eq!(g.indices(), vec![0]);
        assert!(is_minimal_cover_def(&g).unwrap());
        let h = hg(&[&[0, 1], &[1, 2]]);
        assert_eq!(greedy_minimalize(&cover(&h, &[0, 1])).unwrap().indices(), vec![0, 1]);
    }

    #[test]
    fn enumeration_examples() {
        let triangle = hg(&[&[0, 1], &[1, 2], &[0, 2]]);
        let covers: Vec<Vec<usize>> = enumerate_minimal_covers(&triangle).unwrap().map(|c| c.indices()).collect();
        assert_eq!(covers, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let single = hg(&[&[0, 1]]);
        let covers: Vec<Vec<usize>> = enumerate_minimal_covers(&single).unwrap().map(|c| c.indices()).collect();
        assert_eq!(covers, vec![vec![0]]);
        let w = omega(6);
        let covers: Vec<Vec<usize>> = enumerate_minimal_covers(&w).unwrap().map(|c| c.indices()).collect();
        assert_eq!(covers, vec![vec![5]]);
        let empty = hg(&[]);
        let covers: Vec<Vec<usize>> = enumerate_minimal_covers(&empty).unwrap().map(|c| c.indices()).collect();
        assert_eq!(covers, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn enumeration_skips_duplicates() {
        let h = hg(&[&[0], &[0], &[1]]);
        let covers: Vec<Vec<usize>> = enumerate_minimal_covers(&h).unwrap().map(|c| c.indices()).collect();
        assert_eq!(covers, vec![vec![0, 2]]);
    }

    #[test]
    fn delete_and_lift_examples() {
        let h = hg(&[&[0, 1], &[1, 2]]);
        assert_eq!(delete_and_lift(&h, 0).unwrap().indices(), vec![0, 1]);
        let h = hg(&[&[0, 1], &[0, 1, 2]]);
        assert_eq!(delete_and_lift(&h, 0).unwrap().indices(), vec![1]);
        let h = hg(&[&[0]]);
        assert_eq!(delete_and_lift(&h, 0).unwrap().indices(), vec![0]);
        assert!(matches!(delete_and_lift(&h, 3), Err(Error::IndexOutOfRange { .. })));
    }
}
