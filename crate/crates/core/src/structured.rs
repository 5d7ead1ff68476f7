//! Structural hypotheses that guarantee minimal covers, and the constructive
//! cover algorithms that go with them.
//!
//! * [`check_nm`]: every `n` distinct edges meet in fewer than `m` vertices.
//! * [`check_finite_support`]: a finite surrogate for "some finite `F` inside
//!   a vertex window is contained in only finitely many edges".
//! * [`point_finite_cover`]: the complement of a maximal family `M` with
//!   `|M_v| < |E_v|` at every vertex.
//! * [`bounded_width_cover`]: induction on edge width through a maximal
//!   disjoint subfamily.
//!
//! Maximal families are built by greedy scans in ascending edge index.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::covers::{ensure_minimal, Cover};
use crate::error::{Error, Result};
use crate::hypergraph::FiniteHypergraph;
use crate::vertex_set::{Vertex, VertexSet};

/// Default cap on the number of subfamilies [`check_nm`] may inspect.
pub const DEFAULT_NM_BUDGET: u64 = 10_000_000;
/// Default cap on subsets inspected by [`check_finite_support`].
pub const DEFAULT_SUPPORT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NmParams {
    /// Size of the subfamilies.
    pub n: usize,
    /// Strict upper bound on their intersection size.
    pub m: usize,
}

impl NmParams {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter(format!("n and m must be positive, got n={n}, m={m}")));
        }
        Ok(NmParams { n, m })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NmViolation {
    /// Edge indices of the offending subfamily, ascending.
    pub edges: Vec<usize>,
    pub intersection: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NmReport {
    pub holds: bool,
    pub counterexample: Option<NmViolation>,
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Checks that every `n` distinct edges share fewer than `m` vertices.
///
/// Subfamilies are scanned in lexicographic order of their index lists and
/// the first violation is returned.
pub fn check_nm(h: &FiniteHypergraph, p: NmParams) -> Result<NmReport> {
    check_nm_bounded(h, p, DEFAULT_NM_BUDGET)
}

pub fn check_nm_bounded(h: &FiniteHypergraph, p: NmParams, budget: u64) -> Result<NmReport> {
    let distinct = h.distinct_indices();
    let work = binomial(distinct.len(), p.n);
    if work > budget {
        return Err(Error::SizeLimit {
            what: "number of n-element subfamilies",
            limit: budget.try_into().unwrap_or(usize::MAX),
            actual: work.try_into().unwrap_or(usize::MAX),
        });
    }
    if p.n > distinct.len() {
        return Ok(NmReport { holds: true, counterexample: None });
    }

    // Depth-first over combinations with running intersections, so shared
    // prefixes are intersected once.
    fn walk(
        h: &FiniteHypergraph,
        distinct: &[usize],
        p: NmParams,
        start: usize,
        chosen: &mut Vec<usize>,
        acc: Option<&VertexSet>,
    ) -> Option<NmViolation> {
        if let Some(acc) = acc {
            if acc.len() < p.m {
                return None;
            }
            if chosen.len() == p.n {
                return Some(NmViolation { edges: chosen.clone(), intersection: acc.clone() });
            }
        }
        let remaining = p.n - chosen.len();
        for pos in start..=distinct.len() - remaining {
            let i = distinct[pos];
            let next = match acc {
                None => h.edge(i).clone(),
                Some(acc) => acc.intersection(h.edge(i)),
            };
            chosen.push(i);
            if let Some(v) = walk(h, distinct, p, pos + 1, chosen, Some(&next)) {
                return Some(v);
            }
            chosen.pop();
        }
        None
    }

    let counterexample = walk(h, &distinct, p, 0, &mut Vec::new(), None);
    Ok(NmReport { holds: counterexample.is_none(), counterexample })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointFiniteReport {
    pub holds: bool,
    /// Vertex of largest degree (lowest id among ties) and its degree.
    pub max_degree: Option<(Vertex, usize)>,
}

/// Degrees over distinct edges, paired with their vertices in ascending order.
fn degrees(h: &FiniteHypergraph, distinct: &[usize]) -> Vec<(Vertex, usize)> {
    h.vertex_set()
        .iter()
        .map(|v| (v, distinct.iter().filter(|&&i| h.edge(i).contains(v)).count()))
        .collect()
}

/// Quantitative point-finiteness: every vertex lies in at most `d` distinct edges.
pub fn check_point_finite(h: &FiniteHypergraph, d: usize) -> PointFiniteReport {
    let distinct = h.distinct_indices();
    let mut best: Option<(Vertex, usize)> = None;
    for (v, deg) in degrees(h, &distinct) {
        if best.is_none_or(|(_, b)| deg > b) {
            best = Some((v, deg));
        }
    }
    PointFiniteReport {
        holds: best.is_none_or(|(_, deg)| deg <= d),
        max_degree: best,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportVerdict {
    HoldsOnInstance,
    FailsWithWitness,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    pub verdict: SupportVerdict,
    /// The finite set `F` the verdict is about.
    pub subset: VertexSet,
    /// Distinct edges containing `subset`.
    pub containing: Vec<usize>,
    pub threshold: usize,
}

/// Looks for a finite `F` inside `window` contained in fewer than
/// `threshold` distinct edges.
///
/// If even the whole window lies in at least `threshold` edges then so does
/// every subset of it, and the report fails with the window as witness.
/// Otherwise the smallest such `F` (by size, then lexicographically) is
/// reported. When `h` is the whole hypergraph (`exhaustive`) that settles the
/// question; on a truncation of a larger family the edge count is only a lower
/// bound and the verdict is `Unknown`.
pub fn check_finite_support(
    h: &FiniteHypergraph,
    window: &VertexSet,
    threshold: usize,
    exhaustive: bool,
) -> Result<SupportReport> {
    check_finite_support_bounded(h, window, threshold, exhaustive, DEFAULT_SUPPORT_BUDGET)
}

pub fn check_finite_support_bounded(
    h: &FiniteHypergraph,
    window: &VertexSet,
    threshold: usize,
    exhaustive: bool,
    budget: u64,
) -> Result<SupportReport> {
    if threshold == 0 {
        return Err(Error::InvalidParameter("threshold must be positive".into()));
    }
    let distinct = h.distinct_indices();
    let containing = |f: &VertexSet| -> Vec<usize> {
        distinct.iter().copied().filter(|&i| f.is_subset(h.edge(i))).collect()
    };
    let whole = containing(window);
    if whole.len() >= threshold {
        return Ok(SupportReport {
            verdict: SupportVerdict::FailsWithWitness,
            subset: window.clone(),
            containing: whole,
            threshold,
        });
    }
    let members = window.to_vec();
    let mut spent: u64 = 0;
    for size in 0..=members.len() {
        spent = spent.saturating_add(binomial(members.len(), size));
        if spent > budget {
            return Err(Error::SizeLimit {
                what: "window subsets to inspect",
                limit: budget.try_into().unwrap_or(usize::MAX),
                actual: spent.try_into().unwrap_or(usize::MAX),
            });
        }
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let f: VertexSet = combo.iter().map(|&p| members[p]).collect();
            let edges = containing(&f);
            if edges.len() < threshold {
                let verdict = if exhaustive { SupportVerdict::HoldsOnInstance } else { SupportVerdict::Unknown };
                return Ok(SupportReport { verdict, subset: f, containing: edges, threshold });
            }
            if !next_combination(&mut combo, members.len()) {
                break;
            }
        }
    }
    Err(Error::InvariantViolation("window itself has small support but no subset was reported".into()))
}

/// Advances to the next k-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The maximal family `M` of distinct edges with `|M_v| < |E_v|` at every
/// vertex, grown in ascending index order.
pub fn point_finite_removed(h: &FiniteHypergraph) -> BTreeSet<usize> {
    let distinct = h.distinct_indices();
    let full: Vec<(Vertex, usize)> = degrees(h, &distinct);
    let max_vertex = full.last().map_or(0, |&(v, _)| v as usize + 1);
    let mut total = vec![0usize; max_vertex];
    for &(v, d) in &full {
        total[v as usize] = d;
    }
    let mut taken = vec![0usize; max_vertex];
    let mut removed = BTreeSet::new();
    for i in distinct {
        let e = h.edge(i);
        if e.iter().all(|v| taken[v as usize] + 1 < total[v as usize]) {
            for v in e {
                taken[v as usize] += 1;
            }
            removed.insert(i);
        }
    }
    removed
}

/// Minimal cover as the distinct edges outside [`point_finite_removed`].
pub fn point_finite_cover(h: &FiniteHypergraph) -> Result<Cover<'_>> {
    let removed = point_finite_removed(h);
    let kept = h.distinct_indices().into_iter().filter(|i| !removed.contains(i)).collect();
    let cover = Cover::from_trusted(h, kept);
    ensure_minimal(&cover, "point_finite_cover")?;
    Ok(cover)
}

/// Greedy maximal family of pairwise disjoint nonempty edges.
pub fn maximal_disjoint_subfamily(h: &FiniteHypergraph) -> Vec<usize> {
    let mut used = VertexSet::new();
    let mut chosen = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        if !e.is_empty() && e.is_disjoint(&used) {
            used.union_with(e);
            chosen.push(i);
        }
    }
    chosen
}

/// Minimal cover by induction on the width.
///
/// Width at most one: every distinct nonempty edge. Otherwise take a maximal
/// disjoint subfamily `D`, cover the traces outside `⋃D` recursively (each
/// nonempty edge meets `⋃D`, so the width drops), lift the traces to their
/// lowest-index preimages `C`, and keep those members of `D` not already inside
/// `⋃C`. The output is always re-checked for minimality.
pub fn bounded_width_cover(h: &FiniteHypergraph) -> Result<Cover<'_>> {
    let family: Vec<(usize, VertexSet)> = h
        .distinct_indices()
        .into_iter()
        .filter(|&i| !h.edge(i).is_empty())
        .map(|i| (i, h.edge(i).clone()))
        .collect();
    let selected = cover_by_width(h, family);
    let cover = Cover::from_trusted(h, selected);
    ensure_minimal(&cover, "bounded_width_cover")?;
    Ok(cover)
}

/// `family` holds (host index, current trace) pairs, ascending by host index.
fn cover_by_width(h: &FiniteHypergraph, family: Vec<(usize, VertexSet)>) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let family: Vec<(usize, VertexSet)> = family
        .into_iter()
        .filter(|(_, e)| !e.is_empty() && seen.insert(e.clone()))
        .collect();
    let width = family.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    if width <= 1 {
        return family.into_iter().map(|(i, _)| i).collect();
    }

    let mut union_d = VertexSet::new();
    let mut disjoint = Vec::new();
    for (i, e) in &family {
        if e.is_disjoint(&union_d) {
            union_d.union_with(e);
            disjoint.push((*i, e.clone()));
        }
    }
    let reduced = family.iter().map(|(i, e)| (*i, e.difference(&union_d))).collect();
    let mut lifted = cover_by_width(h, reduced);
    let lifted_union = h.union_of(&lifted);
    for (i, d) in disjoint {
        if !d.is_subset(&lifted_union) {
            lifted.insert(i);
        }
    }
    lifted
}
