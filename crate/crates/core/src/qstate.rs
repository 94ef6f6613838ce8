//! Walker state over `coin ⊗ position`.
//!
//! Amplitudes are stored coin-major: slot `dir` of vertex `v` lives at
//! `dir.index() * N + lattice.index(v)`. The loop slot is always present,
//! also when `ℓ = 0`.

use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{Direction, Lattice, Vertex};

#[derive(Clone, Debug, PartialEq)]
pub struct WalkState {
    lattice: Lattice,
    amplitudes: Vec<Complex64>,
}

/// Normalized weighted coin vector: `1/√(4+ℓ)` on each cardinal slot and
/// `√ℓ/√(4+ℓ)` on the loop slot.
pub(crate) fn coin_axis(loop_weight: f64) -> [f64; Direction::COUNT] {
    let norm = (4.0 + loop_weight).sqrt();
    let c = 1.0 / norm;
    [c, c, c, c, loop_weight.sqrt() / norm]
}

pub(crate) fn check_loop_weight(loop_weight: f64) -> Result<()> {
    if loop_weight.is_finite() && loop_weight >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidLoopWeight(loop_weight))
    }
}

impl WalkState {
    /// Uniform superposition over vertices, each carrying the weighted coin
    /// state. This is a fixed point of the noiseless, oracle-free step.
    pub fn uniform_initial_state(lattice: Lattice, loop_weight: f64) -> Result<Self> {
        check_loop_weight(loop_weight)?;
        let n = lattice.num_vertices();
        let scale = 1.0 / (n as f64).sqrt();
        let axis = coin_axis(loop_weight);
        let mut amplitudes = Vec::with_capacity(Direction::COUNT * n);
        for w in axis {
            amplitudes.extend(std::iter::repeat_n(Complex64::new(w * scale, 0.0), n));
        }
        Ok(WalkState { lattice, amplitudes })
    }

    /// The basis state `|dir⟩ ⊗ |v⟩`.
    pub fn basis(lattice: Lattice, dir: Direction, v: Vertex) -> Result<Self> {
        lattice.check_vertex(v)?;
        let n = lattice.num_vertices();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); Direction::COUNT * n];
        amplitudes[dir.index() * n + lattice.index(v)] = Complex64::new(1.0, 0.0);
        Ok(WalkState { lattice, amplitudes })
    }

    /// Builds a state from raw coin-major amplitudes, rescaled to unit norm.
    pub fn from_amplitudes(lattice: Lattice, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = Direction::COUNT * lattice.num_vertices();
        if amplitudes.len() != expected {
            return Err(Error::ShapeMismatch(format!("expected {expected} amplitudes, got {}", amplitudes.len())));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(WalkState { lattice, amplitudes })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn amplitude(&self, dir: Direction, v: Vertex) -> Complex64 {
        self.amplitudes[self.slot(dir, v)]
    }

    pub fn set_amplitude(&mut self, dir: Direction, v: Vertex, value: Complex64) {
        let i = self.slot(dir, v);
        self.amplitudes[i] = value;
    }

    #[inline]
    fn slot(&self, dir: Direction, v: Vertex) -> usize {
        assert!(self.lattice.contains(v), "vertex {v} outside lattice");
        dir.index() * self.lattice.num_vertices() + self.lattice.index(v)
    }

    /// Squared 2-norm.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn vertex_probability(&self, v: Vertex) -> f64 {
        let n = self.lattice.num_vertices();
        let i = self.lattice.index(v);
        (0..Direction::COUNT).map(|d| self.amplitudes[d * n + i].norm_sqr()).sum()
    }

    /// Position marginal, indexed row-major.
    pub fn position_distribution(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.lattice.num_vertices()];
        self.add_position_distribution(&mut out);
        out
    }

    /// Adds the position marginal into `acc` without allocating.
    pub(crate) fn add_position_distribution(&self, acc: &mut [f64]) {
        let n = self.lattice.num_vertices();
        for slot in self.amplitudes.chunks_exact(n) {
            for (p, a) in acc.iter_mut().zip(slot) {
                *p += a.norm_sqr();
            }
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &WalkState) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Debug dump: one line `dir x y re im` per amplitude, coin-major order,
    /// `dir` being the slot index 0..5.
    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let n = self.lattice.num_vertices();
        for (k, a) in self.amplitudes.iter().enumerate() {
            let v = self.lattice.vertex(k % n);
            writeln!(out, "{} {} {} {:e} {:e}", k / n, v.x, v.y, a.re, a.im)?;
        }
        Ok(())
    }
}
