use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Parser;

use super::output::{write_output, Summary};
use super::params::{LoopWeight, WalkParams};
use super::run_ensemble_with;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Vertex};

/// Worker thread count for the ensemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(usize),
}

impl FromStr for Threads {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Threads::Auto);
        }
        match s.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Threads::Fixed(n)),
            _ => Err(Error::InvalidArgument(format!("threads must be a positive integer or 'auto', got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Grid(usize, usize);

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("grid must look like WxH, got {s:?}"));
        let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        Ok(Grid(w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
    }
}

fn parse_vertex(s: &str) -> Result<Vertex> {
    let bad = || Error::InvalidArgument(format!("marked vertex must look like x,y, got {s:?}"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    Ok(Vertex::new(x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
}

fn parse_probability(s: &str) -> Result<f64> {
    let p: f64 = s.parse().map_err(|_| Error::InvalidArgument(format!("not a number: {s:?}")))?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidBreakProbability(p));
    }
    Ok(p)
}

fn parse_positive(s: &str) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::InvalidArgument(format!("expected a positive integer, got {s:?}"))),
    }
}

/// Lackadaisical quantum-walk search on a torus under broken-link noise.
#[derive(Debug, Parser)]
#[command(name = "lqwalk", version)]
pub struct Cli {
    /// Grid size as WxH.
    #[arg(long, default_value = "16x16", value_parser = Grid::from_str)]
    grid: Grid,

    /// Self-loop weight: a non-negative number or 4/N.
    #[arg(long, default_value = "4/N", value_parser = LoopWeight::from_str)]
    loop_weight: LoopWeight,

    /// Per-edge, per-step break probability.
    #[arg(long, default_value_t = 0.01, value_parser = parse_probability)]
    break_prob: f64,

    #[arg(long, default_value_t = 10_000, value_parser = parse_positive)]
    steps: usize,

    #[arg(long, default_value_t = 20, value_parser = parse_positive)]
    runs: usize,

    /// Base seed; run r uses seed + r.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Marked vertex as x,y. Defaults to the grid center.
    #[arg(long, value_parser = parse_vertex)]
    marked: Option<Vertex>,

    /// Disable the oracle (free walk).
    #[arg(long)]
    no_oracle: bool,

    #[arg(long, default_value = "results")]
    out: PathBuf,

    /// Worker threads: a positive integer or auto.
    #[arg(long, default_value = "auto", value_parser = Threads::from_str)]
    threads: Threads,
}

impl Cli {
    pub fn params(&self) -> Result<WalkParams> {
        let lattice = Lattice::new(self.grid.0, self.grid.1)?;
        let params = WalkParams {
            side_x: lattice.side_x(),
            side_y: lattice.side_y(),
            loop_weight: self.loop_weight.resolve(&lattice),
            break_probability: self.break_prob,
            steps: self.steps,
            runs: self.runs,
            base_seed: self.seed,
            marked: self.marked.unwrap_or_else(|| lattice.center()),
            oracle_enabled: !self.no_oracle,
        };
        params.validate()?;
        Ok(params)
    }

    fn run(&self) -> Result<Summary> {
        let params = self.params()?;
        let result = run_ensemble_with(&params, self.threads)?;
        write_output(&result, &self.out)?;
        Ok(Summary::of(&result))
    }
}

/// Parses `argv` (program name first), runs the ensemble, writes the output
/// files and returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match cli.run() {
        Ok(s) => {
            println!(
                "peak mean success {:.6} at step {}; time-averaged marked probability {:.6} ({:.2}x uniform 1/N = {:.6}); outputs in {}",
                s.peak_mean_success,
                s.peak_step,
                s.marked_time_averaged_probability,
                s.marked_time_averaged_probability / s.uniform_baseline,
                s.uniform_baseline,
                cli.out.display()
            );
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("lqwalk").chain(args.iter().copied()))
    }

    #[test]
    fn headline_flags() {
        let cli = parse(&[
            "--grid",
            "16x16",
            "--loop-weight",
            "4/N",
            "--break-prob",
            "0.01",
            "--steps",
            "10000",
            "--runs",
            "20",
            "--seed",
            "7",
            "--out",
            "results/",
        ])
        .unwrap();
        let p = cli.params().unwrap();
        assert_eq!((p.side_x, p.side_y), (16, 16));
        assert_eq!(p.loop_weight, 4.0 / 256.0);
        assert_eq!(p.break_probability, 0.01);
        assert_eq!((p.steps, p.runs, p.base_seed), (10_000, 20, 7));
        assert_eq!(p.marked, Vertex::new(8, 8));
        assert!(p.oracle_enabled);
        assert_eq!(cli.threads, Threads::Auto);
    }

    #[test]
    fn marked_and_oracle_flags() {
        let cli = parse(&["--grid", "5x7", "--marked", "1,6", "--no-oracle", "--threads", "3"]).unwrap();
        let p = cli.params().unwrap();
        assert_eq!(p.marked, Vertex::new(1, 6));
        assert!(!p.oracle_enabled);
        assert_eq!(cli.threads, Threads::Fixed(3));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(parse(&["--break-prob", "1.5"]).is_err());
        assert!(parse(&["--grid", "16"]).is_err());
        assert!(parse(&["--loop-weight", "-2"]).is_err());
        assert!(parse(&["--steps", "0"]).is_err());
        assert!(parse(&["--threads", "0"]).is_err());
        assert!(parse(&["--bogus"]).is_err());
        assert!(parse(&["--grid", "2x8"]).unwrap().params().is_err());
        assert!(parse(&["--grid", "4x4", "--marked", "4,0"]).unwrap().params().is_err());
    }

    #[test]
    fn exit_codes() {
        assert_ne!(cli_main(["lqwalk", "--break-prob", "1.5"]), 0);
        assert_ne!(cli_main(["lqwalk", "--unknown-flag"]), 0);
        assert_ne!(cli_main(["lqwalk", "--grid", "2x2"]), 0);
    }
}
