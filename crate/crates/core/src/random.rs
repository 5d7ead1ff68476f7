//! Seeded random hypergraphs for tests and the `gen random` command.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::FiniteHypergraph;
use crate::vertex_set::{Vertex, VertexSet};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomShape {
    pub max_edges: usize,
    pub max_vertices: usize,
    pub max_width: usize,
    /// Cap on how many generated edges may contain a single vertex.
    pub max_degree: Option<usize>,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_edges: 30,
            max_vertices: 20,
            max_width: 6,
            max_degree: None,
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Between 1 and `max_edges` nonempty edges over `0..max_vertices`, each of
/// size at most `max_width`. With a degree cap, vertices that are already
/// saturated are skipped, so edges may come out smaller (never empty).
pub fn random_hypergraph<R: Rng>(rng: &mut R, shape: &RandomShape) -> FiniteHypergraph {
    assert!(shape.max_edges >= 1 && shape.max_vertices >= 1 && shape.max_width >= 1);
    let edge_count = rng.random_range(1..=shape.max_edges);
    let width = shape.max_width.min(shape.max_vertices);
    let mut degree = vec![0usize; shape.max_vertices];
    let mut edges = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let size = rng.random_range(1..=width);
        let mut edge = VertexSet::new();
        for v in sample(rng, shape.max_vertices, size) {
            if shape.max_degree.is_none_or(|cap| degree[v] < cap) {
                degree[v] += 1;
                edge.insert(v as Vertex);
            }
        }
        if !edge.is_empty() {
            edges.push(edge);
        }
    }
    FiniteHypergraph::new(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let shape = RandomShape::default();
        let a = random_hypergraph(&mut rng_from_seed(7), &shape);
        let b = random_hypergraph(&mut rng_from_seed(7), &shape);
        assert_eq!(a, b);
    }

    #[test]
    fn respects_shape() {
        let shape = RandomShape { max_degree: Some(3), ..RandomShape::default() };
        let mut rng = rng_from_seed(1);
        for _ in 0..200 {
            let h = random_hypergraph(&mut rng, &shape);
            assert!(h.len() <= 30 && h.width() <= 6);
            assert!(h.vertex_set().iter().all(|v| v < 20));
            assert!(h.vertex_set().iter().all(|v| h.edges().iter().filter(|e| e.contains(v)).count() <= 3));
            assert!(h.edges().iter().all(|e| !e.is_empty()));
        }
    }
}
