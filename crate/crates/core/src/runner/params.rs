use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Vertex};
use crate::percolation::NoiseSpec;

/// Self-loop weight as given on the command line: a literal value or the
/// grid-relative `4/N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LoopWeight {
    Value(f64),
    FourOverN,
}

impl LoopWeight {
    pub fn resolve(self, lattice: &Lattice) -> f64 {
        match self {
            LoopWeight::Value(l) => l,
            LoopWeight::FourOverN => 4.0 / lattice.num_vertices() as f64,
        }
    }
}

impl FromStr for LoopWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("4/n") {
            return Ok(LoopWeight::FourOverN);
        }
        let l: f64 =
            s.parse().map_err(|_| Error::InvalidArgument(format!("loop weight {s:?} is neither a number nor 4/N")))?;
        if !l.is_finite() || l < 0.0 {
            return Err(Error::InvalidLoopWeight(l));
        }
        Ok(LoopWeight::Value(l))
    }
}

impl fmt::Display for LoopWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopWeight::Value(l) => write!(f, "{l}"),
            LoopWeight::FourOverN => f.write_str("4/N"),
        }
    }
}

/// Full description of an experiment. `loop_weight` is always the resolved
/// numeric value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkParams {
    pub side_x: usize,
    pub side_y: usize,
    pub loop_weight: f64,
    pub break_probability: f64,
    pub steps: usize,
    pub runs: usize,
    pub base_seed: u64,
    pub marked: Vertex,
    pub oracle_enabled: bool,
}

impl WalkParams {
    /// Noiseless single run of 1000 steps with `ℓ = 4/N`, marked vertex at
    /// the grid center.
    pub fn new(lattice: Lattice) -> Self {
        WalkParams {
            side_x: lattice.side_x(),
            side_y: lattice.side_y(),
            loop_weight: LoopWeight::FourOverN.resolve(&lattice),
            break_probability: 0.0,
            steps: 1000,
            runs: 1,
            base_seed: 0,
            marked: lattice.center(),
            oracle_enabled: true,
        }
    }

    pub fn with_loop_weight(mut self, loop_weight: f64) -> Self {
        self.loop_weight = loop_weight;
        self
    }

    pub fn with_break_probability(mut self, p: f64) -> Self {
        self.break_probability = p;
        self
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_runs(mut self, runs: usize) -> Self {
        self.runs = runs;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.base_seed = seed;
        self
    }

    pub fn with_marked(mut self, marked: Vertex) -> Self {
        self.marked = marked;
        self
    }

    pub fn with_oracle(mut self, enabled: bool) -> Self {
        self.oracle_enabled = enabled;
        self
    }

    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.side_x, self.side_y)
    }

    pub fn noise(&self) -> Result<NoiseSpec> {
        NoiseSpec::new(self.break_probability, self.base_seed)
    }

    pub fn validate(&self) -> Result<Lattice> {
        let lattice = self.lattice()?;
        if !self.loop_weight.is_finite() || self.loop_weight < 0.0 {
            return Err(Error::InvalidLoopWeight(self.loop_weight));
        }
        self.noise()?;
        if self.steps == 0 {
            return Err(Error::ZeroCount { what: "steps" });
        }
        if self.runs == 0 {
            return Err(Error::ZeroCount { what: "runs" });
        }
        lattice.check_vertex(self.marked)?;
        Ok(lattice)
    }

    /// Seeds of each trajectory, `base_seed + run_index` (wrapping).
    pub fn run_seeds(&self) -> Vec<u64> {
        (0..self.runs as u64).map(|r| self.base_seed.wrapping_add(r)).collect()
    }
}
