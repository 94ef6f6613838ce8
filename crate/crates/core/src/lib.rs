//! Lackadaisical discrete-time quantum-walk search on a two-dimensional torus,
//! with dynamic broken-link (percolation) noise and Monte Carlo ensembles.
//!
//! The walker lives in `coin ⊗ position`, where the coin has five slots: the
//! four cardinal directions plus a self-loop of weight `ℓ`. One search step is
//! coin, then flip-flop shift over the currently intact edges, then the oracle
//! phase flip at the marked vertex.
//!
//! ```
//! use lqwalk::{Lattice, Vertex, WalkParams, run_trajectory};
//!
//! let lattice = Lattice::new(8, 8).unwrap();
//! let params = WalkParams::new(lattice)
//!     .with_loop_weight(4.0 / 64.0)
//!     .with_steps(20);
//! let record = run_trajectory(&params, 0).unwrap();
//! assert_eq!(record.success_series.len(), 21);
//! ```

pub mod error;
pub mod evolution;
pub mod lattice;
pub mod observables;
pub mod percolation;
pub mod qstate;
pub mod runner;

pub use error::{Error, Result};
pub use evolution::{apply_coin, apply_oracle, apply_shift, search_step, CoinSpec, OracleSpec, SearchOperator};
pub use lattice::{Direction, Edge, Lattice, Vertex};
pub use observables::{
    aggregate_ensemble, success_probability, time_averaged_distribution, EnsembleResult, TimeAverage, TrajectoryRecord,
};
pub use percolation::{EdgeMask, MaskSampler, NoiseSpec};
pub use qstate::WalkState;
pub use runner::{run_ensemble, run_trajectory, write_output, ExperimentOutput, LoopWeight, WalkParams};
