//! Search-step operators: weighted Grover coin, flip-flop shift over intact
//! edges, and the oracle phase flip. All act in place, `O(N)` per call.
//!
//! A broken edge leaves both of its arc amplitudes where they are. That keeps
//! the masked shift a permutation of basis states; the next coin then mixes the
//! retained amplitude into the other directions.

use crate::error::{Error, Result};
use crate::lattice::{Direction, Lattice, Vertex};
use crate::percolation::EdgeMask;
use crate::qstate::{check_loop_weight, coin_axis, WalkState};

/// Grover coin `2|s_c⟩⟨s_c| − I` about the weighted coin state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinSpec {
    loop_weight: f64,
    axis: [f64; Direction::COUNT],
}

impl CoinSpec {
    pub fn new(loop_weight: f64) -> Result<Self> {
        check_loop_weight(loop_weight)?;
        Ok(CoinSpec { loop_weight, axis: coin_axis(loop_weight) })
    }

    pub fn loop_weight(&self) -> f64 {
        self.loop_weight
    }

    /// Dense 5×5 coin matrix, row `i` column `j`. Only used for inspection.
    pub fn matrix(&self) -> [[f64; Direction::COUNT]; Direction::COUNT] {
        let mut m = [[0.0; Direction::COUNT]; Direction::COUNT];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = 2.0 * self.axis[i] * self.axis[j] - if i == j { 1.0 } else { 0.0 };
            }
        }
        m
    }
}

/// Phase flip on every coin slot of a single marked vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleSpec {
    marked: Vertex,
}

impl OracleSpec {
    pub fn new(lattice: &Lattice, marked: Vertex) -> Result<Self> {
        lattice.check_vertex(marked)?;
        Ok(OracleSpec { marked })
    }

    pub fn marked(&self) -> Vertex {
        self.marked
    }
}

pub fn apply_coin(state: &mut WalkState, coin: &CoinSpec) {
    let n = state.lattice().num_vertices();
    let s = coin.axis;
    let amps = state.amplitudes_mut();
    let (a0, rest) = amps.split_at_mut(n);
    let (a1, rest) = rest.split_at_mut(n);
    let (a2, rest) = rest.split_at_mut(n);
    let (a3, a4) = rest.split_at_mut(n);
    for v in 0..n {
        let proj = (a0[v] * s[0] + a1[v] * s[1] + a2[v] * s[2] + a3[v] * s[3] + a4[v] * s[4]) * 2.0;
        a0[v] = proj * s[0] - a0[v];
        a1[v] = proj * s[1] - a1[v];
        a2[v] = proj * s[2] - a2[v];
        a3[v] = proj * s[3] - a3[v];
        a4[v] = proj * s[4] - a4[v];
    }
}

/// Flip-flop shift: across every intact edge `{v, w = v + dir}`, swap the
/// amplitude at `(dir, v)` with the one at `(reverse(dir), w)`. Arcs of broken
/// edges and the loop slot stay put.
pub fn apply_shift(state: &mut WalkState, mask: &EdgeMask) -> Result<()> {
    let lattice = *state.lattice();
    if *mask.lattice() != lattice {
        return Err(Error::ShapeMismatch(format!(
            "mask built for {}x{} lattice, state lives on {}x{}",
            mask.lattice().side_x(),
            mask.lattice().side_y(),
            lattice.side_x(),
            lattice.side_y()
        )));
    }
    let n = lattice.num_vertices();
    let amps = state.amplitudes_mut();
    let (plus_x, rest) = amps.split_at_mut(n);
    let (minus_x, rest) = rest.split_at_mut(n);
    let (plus_y, rest) = rest.split_at_mut(n);
    let minus_y = &mut rest[..n];
    for v in 0..n {
        if !mask.is_broken(2 * v) {
            let w = lattice.neighbor_index(v, Direction::PlusX);
            std::mem::swap(&mut plus_x[v], &mut minus_x[w]);
        }
        if !mask.is_broken(2 * v + 1) {
            let w = lattice.neighbor_index(v, Direction::PlusY);
            std::mem::swap(&mut plus_y[v], &mut minus_y[w]);
        }
    }
    Ok(())
}

pub fn apply_oracle(state: &mut WalkState, oracle: &OracleSpec) {
    let n = state.lattice().num_vertices();
    let m = state.lattice().index(oracle.marked);
    let amps = state.amplitudes_mut();
    for d in 0..Direction::COUNT {
        amps[d * n + m] = -amps[d * n + m];
    }
}

/// One step `R · S(mask) · (C ⊗ I)`; the oracle is skipped when `None`.
pub fn search_step(state: &mut WalkState, coin: &CoinSpec, oracle: Option<&OracleSpec>, mask: &EdgeMask) -> Result<()> {
    apply_coin(state, coin);
    apply_shift(state, mask)?;
    if let Some(oracle) = oracle {
        apply_oracle(state, oracle);
    }
    Ok(())
}

/// Coin and optional oracle bundled for repeated stepping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOperator {
    pub coin: CoinSpec,
    pub oracle: Option<OracleSpec>,
}

impl SearchOperator {
    pub fn new(lattice: &Lattice, loop_weight: f64, marked: Option<Vertex>) -> Result<Self> {
        let coin = CoinSpec::new(loop_weight)?;
        let oracle = marked.map(|m| OracleSpec::new(lattice, m)).transpose()?;
        Ok(SearchOperator { coin, oracle })
    }

    pub fn step(&self, state: &mut WalkState, mask: &EdgeMask) -> Result<()> {
        search_step(state, &self.coin, self.oracle.as_ref(), mask)
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    use super::*;

    fn state_from_seed(lattice: Lattice, seed: u64) -> WalkState {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let amps = (0..5 * lattice.num_vertices())
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        WalkState::from_amplitudes(lattice, amps).unwrap()
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn loopless_coin_is_grover_plus_minus_one() {
        let m = CoinSpec::new(0.0).unwrap().matrix();
        for i in 0..5 {
            for j in 0..5 {
                let expect = match (i, j) {
                    (4, 4) => -1.0,
                    (4, _) | (_, 4) => 0.0,
                    _ if i == j => -0.5,
                    _ => 0.5,
                };
                assert_abs_diff_eq!(m[i][j], expect, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn coin_matrix_is_orthogonal_involution() {
        for l in [0.0, 4.0 / 256.0, 0.1, 1.0, 3.0] {
            let m = CoinSpec::new(l).unwrap().matrix();
            for i in 0..5 {
                for j in 0..5 {
                    let sq: f64 = (0..5).map(|k| m[i][k] * m[k][j]).sum();
                    assert_abs_diff_eq!(sq, if i == j { 1.0 } else { 0.0 }, epsilon = 1e-12);
                    assert_abs_diff_eq!(m[i][j], m[j][i], epsilon = 0.0);
                }
            }
        }
    }

    #[test]
    fn coin_fixes_its_axis() {
        let lat = Lattice::new(4, 4).unwrap();
        let l = 0.37;
        let mut s = WalkState::uniform_initial_state(lat, l).unwrap();
        let before = s.clone();
        apply_coin(&mut s, &CoinSpec::new(l).unwrap());
        assert!(s.max_abs_diff(&before) < 1e-15);
    }

    #[test]
    fn coin_twice_is_identity() {
        let lat = Lattice::new(5, 4).unwrap();
        let coin = CoinSpec::new(4.0 / 20.0).unwrap();
        let mut s = state_from_seed(lat, 9);
        let before = s.clone();
        apply_coin(&mut s, &coin);
        apply_coin(&mut s, &coin);
        assert!(s.max_abs_diff(&before) < 1e-12);
    }

    #[test]
    fn shift_moves_across_intact_edge() {
        let lat = Lattice::new(4, 4).unwrap();
        let mut s = WalkState::basis(lat, Direction::PlusX, Vertex::new(1, 2)).unwrap();
        apply_shift(&mut s, &EdgeMask::empty(lat)).unwrap();
        assert_eq!(s.amplitude(Direction::MinusX, Vertex::new(2, 2)), Complex64::new(1.0, 0.0));
        assert_abs_diff_eq!(s.norm_sqr(), 1.0);
    }

    #[test]
    fn shift_wraps_around_torus() {
        let lat = Lattice::new(4, 4).unwrap();
        let mut s = WalkState::basis(lat, Direction::MinusY, Vertex::new(3, 0)).unwrap();
        apply_shift(&mut s, &EdgeMask::empty(lat)).unwrap();
        assert_eq!(s.amplitude(Direction::PlusY, Vertex::new(3, 3)), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn broken_edge_arcs_stay_put() {
        let lat = Lattice::new(4, 4).unwrap();
        let (u, w) = (Vertex::new(1, 2), Vertex::new(2, 2));
        let mask = EdgeMask::from_pairs(lat, [(u, w)]).unwrap();
        let amps = (0..80).map(|k| Complex64::new(k as f64, 0.0)).collect();
        let mut s = WalkState::from_amplitudes(lat, amps).unwrap();
        let a = s.amplitude(Direction::PlusX, u);
        let b = s.amplitude(Direction::MinusX, w);
        apply_shift(&mut s, &mask).unwrap();
        assert_eq!(s.amplitude(Direction::PlusX, u), a);
        assert_eq!(s.amplitude(Direction::MinusX, w), b);
    }

    #[test]
    fn shift_twice_is_identity() {
        let lat = Lattice::new(4, 5).unwrap();
        let mut s = state_from_seed(lat, 1);
        let before = s.clone();
        let mask = EdgeMask::empty(lat);
        apply_shift(&mut s, &mask).unwrap();
        apply_shift(&mut s, &mask).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn loop_slot_untouched_by_shift() {
        let lat = Lattice::new(3, 3).unwrap();
        let mut s = state_from_seed(lat, 4);
        let before = s.clone();
        apply_shift(&mut s, &EdgeMask::empty(lat)).unwrap();
        for v in lat.vertices() {
            assert_eq!(s.amplitude(Direction::Loop, v), before.amplitude(Direction::Loop, v));
        }
    }

    #[test]
    fn foreign_mask_rejected() {
        let mut s = WalkState::uniform_initial_state(Lattice::new(4, 4).unwrap(), 0.0).unwrap();
        let mask = EdgeMask::empty(Lattice::new(5, 4).unwrap());
        assert!(matches!(apply_shift(&mut s, &mask), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn oracle_flips_marked_vertex_only() {
        let lat = Lattice::new(4, 4).unwrap();
        let m = Vertex::new(2, 2);
        let oracle = OracleSpec::new(&lat, m).unwrap();
        let mut s = state_from_seed(lat, 3);
        let before = s.clone();
        apply_oracle(&mut s, &oracle);
        for v in lat.vertices() {
            for d in Direction::ALL {
                let expect = if v == m { -before.amplitude(d, v) } else { before.amplitude(d, v) };
                assert_eq!(s.amplitude(d, v), expect);
            }
        }
        assert_eq!(s.vertex_probability(m), before.vertex_probability(m));
        apply_oracle(&mut s, &oracle);
        assert_eq!(s, before);
    }

    #[test]
    fn oracle_ignores_empty_vertex() {
        let lat = Lattice::new(4, 4).unwrap();
        let mut s = WalkState::basis(lat, Direction::Loop, Vertex::new(0, 0)).unwrap();
        let before = s.clone();
        apply_oracle(&mut s, &OracleSpec::new(&lat, Vertex::new(2, 2)).unwrap());
        assert_eq!(s, before);
        let mut t = before.clone();
        apply_oracle(&mut t, &OracleSpec::new(&lat, Vertex::new(0, 0)).unwrap());
        assert_eq!(t.amplitude(Direction::Loop, Vertex::new(0, 0)), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn oracle_off_lattice_rejected() {
        let lat = Lattice::new(4, 4).unwrap();
        assert!(OracleSpec::new(&lat, Vertex::new(4, 0)).is_err());
    }

    #[test]
    fn free_step_fixes_uniform_state() {
        for l in [0.0, 4.0 / 9.0, 0.1, 2.0] {
            let lat = Lattice::new(3, 3).unwrap();
            let mut s = WalkState::uniform_initial_state(lat, l).unwrap();
            let before = s.clone();
            search_step(&mut s, &CoinSpec::new(l).unwrap(), None, &EdgeMask::empty(lat)).unwrap();
            assert!(s.max_abs_diff(&before) < 1e-12, "ℓ = {l}");
        }
    }

    #[test]
    fn oracle_breaks_fixed_point() {
        let lat = Lattice::new(16, 16).unwrap();
        let l = 4.0 / 256.0;
        let op = SearchOperator::new(&lat, l, Some(lat.center())).unwrap();
        let start = WalkState::uniform_initial_state(lat, l).unwrap();
        let mut s = start.clone();
        let empty = EdgeMask::empty(lat);
        // The first two steps only move phases around (every arc keeps modulus
        // 1/√(N(4+ℓ))), so the marginal first departs from 1/N at step 3.
        for _ in 0..2 {
            op.step(&mut s, &empty).unwrap();
            assert!(s.max_abs_diff(&start) > 1e-3);
            assert_abs_diff_eq!(s.vertex_probability(lat.center()), 1.0 / 256.0, epsilon = 1e-15);
        }
        op.step(&mut s, &empty).unwrap();
        assert!((s.vertex_probability(lat.center()) - 1.0 / 256.0).abs() > 1e-4);
    }

    #[test]
    fn loop_slot_stays_zero_without_weight() {
        let lat = Lattice::new(6, 6).unwrap();
        let op = SearchOperator::new(&lat, 0.0, Some(lat.center())).unwrap();
        let mut s = WalkState::uniform_initial_state(lat, 0.0).unwrap();
        for _ in 0..200 {
            op.step(&mut s, &EdgeMask::empty(lat)).unwrap();
            assert!(lat.vertices().all(|v| s.amplitude(Direction::Loop, v) == Complex64::new(0.0, 0.0)));
        }
    }
}
