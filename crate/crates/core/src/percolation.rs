//! Dynamic broken-link noise.
//!
//! Each step draws a fresh [`EdgeMask`]: every undirected grid edge breaks
//! independently with probability `p`. Self-loops are never broken. Both
//! arcs of an edge always share the same status.
//!
//! Trajectory `r` draws from a ChaCha8 stream seeded with `seed + r`
//! (wrapping), via `ChaCha8Rng::seed_from_u64`. Edges are visited in edge-index
//! order and each costs one `random_bool(p)` draw, so mask sequences are stable
//! across platforms and thread counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Edge, Lattice, Vertex};

/// The set of edges broken during one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMask {
    lattice: Lattice,
    broken: Vec<bool>,
}

impl EdgeMask {
    pub fn empty(lattice: Lattice) -> Self {
        EdgeMask { lattice, broken: vec![false; lattice.num_edges()] }
    }

    pub fn full(lattice: Lattice) -> Self {
        EdgeMask { lattice, broken: vec![true; lattice.num_edges()] }
    }

    /// Mask breaking the edges between each listed vertex pair. Pairs that are
    /// not adjacent are rejected.
    pub fn from_pairs<I>(lattice: Lattice, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut mask = EdgeMask::empty(lattice);
        for (u, w) in pairs {
            let e = lattice.edge_between(u, w)?;
            mask.insert(e);
        }
        Ok(mask)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn insert(&mut self, edge: Edge) -> bool {
        let i = self.lattice.edge_index(edge);
        !std::mem::replace(&mut self.broken[i], true)
    }

    pub fn contains(&self, edge: Edge) -> bool {
        self.broken[self.lattice.edge_index(edge)]
    }

    #[inline]
    pub(crate) fn is_broken(&self, edge_index: usize) -> bool {
        self.broken[edge_index]
    }

    pub fn clear(&mut self) {
        self.broken.fill(false);
    }

    pub fn len(&self) -> usize {
        self.broken.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.broken.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.broken.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| self.lattice.edge_at(i))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub break_probability: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(break_probability: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&break_probability) {
            return Err(Error::InvalidBreakProbability(break_probability));
        }
        Ok(NoiseSpec { break_probability, seed })
    }

    /// Seed used by trajectory `run_index`.
    pub fn run_seed(&self, run_index: u64) -> u64 {
        self.seed.wrapping_add(run_index)
    }
}

/// Per-trajectory mask generator.
#[derive(Clone, Debug)]
pub struct MaskSampler {
    lattice: Lattice,
    p: f64,
    rng: ChaCha8Rng,
}

impl MaskSampler {
    pub fn new(lattice: Lattice, noise: NoiseSpec, run_index: u64) -> Self {
        MaskSampler { lattice, p: noise.break_probability, rng: ChaCha8Rng::seed_from_u64(noise.run_seed(run_index)) }
    }

    pub fn sample(&mut self) -> EdgeMask {
        let mut mask = EdgeMask::empty(self.lattice);
        self.sample_into(&mut mask);
        mask
    }

    /// Overwrites `mask` with the next step's broken edges.
    pub fn sample_into(&mut self, mask: &mut EdgeMask) {
        debug_assert_eq!(mask.lattice, self.lattice);
        let p = self.p;
        for b in &mut mask.broken {
            *b = self.rng.random_bool(p);
        }
    }
}
