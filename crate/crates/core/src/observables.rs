//! Success probability, time-averaged position distribution, and ensemble
//! statistics across trajectories.
//!
//! The success series includes the initial state (`t = 0`). The time average
//! runs over `t = 1..=T` only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Vertex;
use crate::qstate::WalkState;
use crate::runner::WalkParams;

pub fn success_probability(state: &WalkState, marked: Vertex) -> f64 {
    state.vertex_probability(marked)
}

/// Running sum of position distributions, averaged on [`TimeAverage::finish`].
#[derive(Clone, Debug)]
pub struct TimeAverage {
    sum: Vec<f64>,
    count: usize,
}

impl TimeAverage {
    pub fn new(num_vertices: usize) -> Self {
        TimeAverage { sum: vec![0.0; num_vertices], count: 0 }
    }

    pub fn add_state(&mut self, state: &WalkState) {
        state.add_position_distribution(&mut self.sum);
        self.count += 1;
    }

    pub fn add(&mut self, distribution: &[f64]) -> Result<()> {
        if distribution.len() != self.sum.len() {
            return Err(Error::ShapeMismatch(format!(
                "distribution over {} vertices, expected {}",
                distribution.len(),
                self.sum.len()
            )));
        }
        for (s, p) in self.sum.iter_mut().zip(distribution) {
            *s += p;
        }
        self.count += 1;
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn finish(self) -> Result<Vec<f64>> {
        if self.count == 0 {
            return Err(Error::Empty);
        }
        let t = self.count as f64;
        Ok(self.sum.into_iter().map(|s| s / t).collect())
    }
}

/// Entrywise mean of the distributions for steps `1..=T`. The caller passes
/// exactly those `T` distributions (the initial state is not part of it).
pub fn time_averaged_distribution<D: AsRef<[f64]>>(per_step: &[D]) -> Result<Vec<f64>> {
    let first = per_step.first().ok_or(Error::Empty)?;
    let mut avg = TimeAverage::new(first.as_ref().len());
    for d in per_step {
        avg.add(d.as_ref())?;
    }
    avg.finish()
}

/// Output of one trajectory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    /// Probability at the marked vertex for `t = 0..=T`.
    pub success_series: Vec<f64>,
    /// Position distribution averaged over `t = 1..=T`, row-major.
    pub averaged_distribution: Vec<f64>,
}

impl TrajectoryRecord {
    pub fn steps(&self) -> usize {
        self.success_series.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub mean_success: Vec<f64>,
    /// Sample standard deviation (divisor `runs - 1`), zero for a single run.
    pub std_success: Vec<f64>,
    pub mean_averaged_distribution: Vec<f64>,
    pub run_count: usize,
    pub params: WalkParams,
}

impl EnsembleResult {
    /// `1/N`.
    pub fn uniform_baseline(&self) -> f64 {
        1.0 / self.mean_averaged_distribution.len() as f64
    }

    /// Largest mean success probability and the first step where it occurs.
    pub fn peak_mean_success(&self) -> (usize, f64) {
        self.mean_success.iter().copied().enumerate().fold((0, f64::NEG_INFINITY), |best, (t, p)| {
            if p > best.1 {
                (t, p)
            } else {
                best
            }
        })
    }

    /// Time-averaged probability at the marked vertex, ensemble mean.
    pub fn marked_time_average(&self) -> f64 {
        let lattice = self.params.lattice().expect("validated params");
        self.mean_averaged_distribution[lattice.index(self.params.marked)]
    }
}

/// Welford accumulator; returns the exact input when all samples agree.
#[derive(Clone, Copy, Default)]
struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn sample_std(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.m2.max(0.0) / (self.n - 1) as f64).sqrt()
        }
    }
}

/// Per-step mean and sample std of the success series, and the entrywise
/// mean of the time-averaged distributions. Records are folded in order.
pub fn aggregate_ensemble(records: &[TrajectoryRecord], params: WalkParams) -> Result<EnsembleResult> {
    let first = records.first().ok_or(Error::Empty)?;
    let steps = first.success_series.len();
    let vertices = first.averaged_distribution.len();
    for (i, r) in records.iter().enumerate() {
        if r.success_series.len() != steps || r.averaged_distribution.len() != vertices {
            return Err(Error::ShapeMismatch(format!(
                "record {i} has {} steps over {} vertices, record 0 has {} over {}",
                r.success_series.len(),
                r.averaged_distribution.len(),
                steps,
                vertices
            )));
        }
    }

    let mut moments = vec![Moments::default(); steps];
    let mut dist = vec![Moments::default(); vertices];
    for r in records {
        for (m, &x) in moments.iter_mut().zip(&r.success_series) {
            m.push(x);
        }
        for (m, &x) in dist.iter_mut().zip(&r.averaged_distribution) {
            m.push(x);
        }
    }

    Ok(EnsembleResult {
        mean_success: moments.iter().map(|m| m.mean).collect(),
        std_success: moments.iter().map(Moments::sample_std).collect(),
        mean_averaged_distribution: dist.iter().map(|m| m.mean).collect(),
        run_count: records.len(),
        params,
    })
}
