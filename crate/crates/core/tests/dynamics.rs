mod common;

use common::{c, figure_regime, max_abs, random_density, rng, M4};
use coupled_qubits::{
    analytic_zero_t, computational_to_dressed, diagonalize, generator_apply, integrate,
    lindblad_rates, stationary_state, uniform_grid, BathSpectrum, Basis, DensityMatrix, Frame,
    IntegratorOptions, ModelParams,
};
use proptest::prelude::*;
use rand::Rng;

fn random_params(r: &mut impl Rng) -> ModelParams {
    let w1 = r.random_range(0.5..20.0);
    let w2 = w1 + r.random_range(0.0..10.0);
    let lambda = r.random_range(0.0..5.0);
    let bath = |r: &mut dyn rand::RngCore| {
        BathSpectrum::new(
            r.random_range(0.001..0.05),
            r.random_range(0.001..0.05),
            r.random_range(0.1..30.0),
        )
    };
    let b1 = bath(r);
    let b2 = bath(r);
    ModelParams::new(w1, w2, lambda, b1, b2).unwrap()
}

fn assert_physical(traj: &coupled_qubits::Trajectory) {
    for (t, s) in traj.times.iter().zip(&traj.states) {
        assert!((s.trace().re - 1.0).abs() <= 1e-9, "trace drift at t={t}");
        assert!(s.trace().im.abs() <= 1e-9);
        assert!(s.min_eigenvalue() >= -1e-8, "negative eigenvalue at t={t}");
    }
}

#[test]
fn numeric_matches_analytic_in_figure_regime() {
    let (_, basis, rates) = figure_regime();
    let t_end = 10.0 / rates.c_i;
    let mut r = rng(11);
    for _ in 0..10 {
        let rho0 = computational_to_dressed(
            &basis,
            &DensityMatrix::new(random_density(&mut r), Basis::Computational).unwrap(),
        )
        .unwrap();
        let num = integrate(&basis, &rates, &rho0, t_end, &IntegratorOptions::with_samples(201)).unwrap();
        let ana = analytic_zero_t(&basis, &rates, &rho0, &num.times).unwrap();
        for (a, b) in num.states.iter().zip(&ana.states) {
            assert!(max_abs(&(a.entries() - b.entries())) < 1e-8);
        }
        assert_physical(&num);
    }
}

#[test]
fn lab_and_interaction_frames_agree_off_resonance() {
    let p = ModelParams::new(
        2.0,
        3.0,
        0.8,
        BathSpectrum::new(0.02, 0.03, 1.0),
        BathSpectrum::new(0.01, 0.04, 2.0),
    )
    .unwrap();
    let basis = diagonalize(&p).unwrap();
    let rates = lindblad_rates(&basis, &p.bath1, &p.bath2).unwrap();
    let mut r = rng(12);
    let rho0 = DensityMatrix::new(random_density(&mut r), Basis::Dressed).unwrap();
    let opts = IntegratorOptions::with_samples(51);
    let lab = IntegratorOptions { frame: Frame::Lab, ..opts };
    let a = integrate(&basis, &rates, &rho0, 40.0, &opts).unwrap();
    let b = integrate(&basis, &rates, &rho0, 40.0, &lab).unwrap();
    for (x, y) in a.states.iter().zip(&b.states) {
        assert!(max_abs(&(x.entries() - y.entries())) < 1e-8);
    }
}

#[test]
fn finite_temperature_relaxes_to_stationary_state() {
    let mut r = rng(13);
    for _ in 0..5 {
        let p = random_params(&mut r);
        let basis = diagonalize(&p).unwrap();
        let rates = lindblad_rates(&basis, &p.bath1, &p.bath2).unwrap();
        let slowest = [rates.c_i + rates.cbar_i, rates.c_ii + rates.cbar_ii]
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let rho0 = DensityMatrix::new(random_density(&mut r), Basis::Dressed).unwrap();
        let traj = integrate(&basis, &rates, &rho0, 50.0 / slowest, &IntegratorOptions::with_samples(101)).unwrap();
        assert_physical(&traj);
        let st = stationary_state(&rates).unwrap();
        let (_, last) = traj.last().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { st[i] } else { 0.0 };
                assert!((last.get(i, j) - c(want)).norm() < 1e-6, "entry ({i},{j}) for {p:?}");
            }
        }
    }
}

// Index pairs (i, j), i <= j, of each closed block of the dressed matrix.
const BLOCKS: [&[(usize, usize)]; 5] = [
    &[(0, 0), (1, 1), (2, 2), (3, 3)],
    &[(0, 2), (1, 3)],
    &[(0, 1), (2, 3)],
    &[(0, 3)],
    &[(1, 2)],
];

fn block_perturbation(block: &[(usize, usize)], r: &mut impl Rng) -> M4 {
    let mut m = M4::zeros();
    for &(i, j) in block {
        if i == j {
            // traceless population shift keeps this a difference of states
            m[(i, i)] = c(r.random_range(-0.1..0.1));
        } else {
            let z = num_complex::Complex64::new(r.random_range(-0.1..0.1), r.random_range(-0.1..0.1));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

fn outside(block: &[(usize, usize)], m: &M4) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let key = (i.min(j), i.max(j));
            if !block.contains(&key) {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

#[test]
fn blocks_evolve_independently() {
    let mut r = rng(14);
    for _ in 0..5 {
        let p = random_params(&mut r);
        let basis = diagonalize(&p).unwrap();
        let rates = lindblad_rates(&basis, &p.bath1, &p.bath2).unwrap();
        for block in BLOCKS {
            let delta = block_perturbation(block, &mut r);
            let d = DensityMatrix::from_raw(delta, Basis::Dressed);
            let rhs = generator_apply(&basis, &rates, &d).unwrap();
            assert_eq!(outside(block, &rhs), 0.0);
            let traj = integrate(&basis, &rates, &d, 20.0, &IntegratorOptions::with_samples(21)).unwrap();
            for s in &traj.states {
                assert!(outside(block, s.entries()) <= 1e-12);
            }
        }
    }
}

#[test]
fn analytic_solution_rejects_thermal_rates() {
    let p = ModelParams::new(10.0, 10.0, 1.0, BathSpectrum::flat(0.01, 2.0), BathSpectrum::flat(0.01, 2.0)).unwrap();
    let basis = diagonalize(&p).unwrap();
    let rates = lindblad_rates(&basis, &p.bath1, &p.bath2).unwrap();
    let rho0 = DensityMatrix::maximally_mixed(Basis::Dressed);
    let grid = uniform_grid(1.0, 3).unwrap();
    assert!(analytic_zero_t(&basis, &rates, &rho0, &grid).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stationary_state_is_a_fixed_point(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_params(&mut r);
        let basis = diagonalize(&p).unwrap();
        let rates = lindblad_rates(&basis, &p.bath1, &p.bath2).unwrap();
        let st = stationary_state(&rates).unwrap();
        prop_assert!((st.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        let rho = DensityMatrix::diagonal(st, Basis::Dressed).unwrap();
        let d = generator_apply(&basis, &rates, &rho).unwrap();
        prop_assert!(max_abs(&d) < 1e-12);
    }

    #[test]
    fn trajectories_stay_physical(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_params(&mut r);
        let basis = diagonalize(&p).unwrap();
        let rates = lindblad_rates(&basis, &p.bath1, &p.bath2).unwrap();
        let rho0 = DensityMatrix::new(random_density(&mut r), Basis::Dressed).unwrap();
        let t_end = 3.0 / rates.min_decay_rate().unwrap();
        let traj = integrate(&basis, &rates, &rho0, t_end, &IntegratorOptions::with_samples(31)).unwrap();
        assert_physical(&traj);
        for s in &traj.states {
            prop_assert!(s.hermiticity_defect() <= 1e-12);
        }
    }
}
