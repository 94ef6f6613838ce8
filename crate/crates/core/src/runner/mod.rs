//! Experiment orchestration: trajectories, ensembles, and file export.

mod cli;
mod output;
mod params;

use rayon::prelude::*;

pub use cli::{cli_main, Cli, Threads};
pub use output::{read_metadata, write_output, ExperimentOutput, Metadata, Summary};
pub use params::{LoopWeight, WalkParams};

use crate::error::Result;
use crate::evolution::SearchOperator;
use crate::observables::{aggregate_ensemble, success_probability, EnsembleResult, TimeAverage, TrajectoryRecord};
use crate::percolation::{EdgeMask, MaskSampler};
use crate::qstate::WalkState;

/// Runs trajectory `run_index`: start from the uniform state, then for each
/// step draw a fresh mask and apply coin, masked shift, oracle.
pub fn run_trajectory(params: &WalkParams, run_index: usize) -> Result<TrajectoryRecord> {
    let lattice = params.validate()?;
    let marked = params.marked;
    let op = SearchOperator::new(&lattice, params.loop_weight, params.oracle_enabled.then_some(marked))?;
    let mut sampler = MaskSampler::new(lattice, params.noise()?, run_index as u64);
    let noisy = params.break_probability > 0.0;

    let mut state = WalkState::uniform_initial_state(lattice, params.loop_weight)?;
    let mut mask = EdgeMask::empty(lattice);
    let mut average = TimeAverage::new(lattice.num_vertices());
    let mut success_series = Vec::with_capacity(params.steps + 1);
    success_series.push(success_probability(&state, marked));

    for _ in 0..params.steps {
        if noisy {
            sampler.sample_into(&mut mask);
        }
        op.step(&mut state, &mask)?;
        success_series.push(success_probability(&state, marked));
        average.add_state(&state);
    }

    Ok(TrajectoryRecord { success_series, averaged_distribution: average.finish()? })
}

/// Runs every trajectory on the current rayon pool and aggregates them in
/// run-index order.
pub fn run_ensemble(params: &WalkParams) -> Result<EnsembleResult> {
    params.validate()?;
    let records = (0..params.runs).into_par_iter().map(|r| run_trajectory(params, r)).collect::<Result<Vec<_>>>()?;
    aggregate_ensemble(&records, params.clone())
}

/// [`run_ensemble`] on a dedicated pool of the given size.
pub fn run_ensemble_with(params: &WalkParams, threads: Threads) -> Result<EnsembleResult> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Threads::Fixed(n) = threads {
        builder = builder.num_threads(n);
    }
    builder.build()?.install(|| run_ensemble(params))
}
