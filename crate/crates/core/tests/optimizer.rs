use std::f64::consts::PI;

use tomodiscord::discord::{optimized_discord, tomographic_discord, OptimizerConfig};
use tomodiscord::ensembles::{bell_state, random_two_qubit_state, BellState, Seed};
use tomodiscord::entropy::{tomographic_entropies, LogBase};
use tomodiscord::linalg::DensityMatrix;
use tomodiscord::tomography::rotation_from_angles;

/// Minimum of `H₁₂` over an `n⁴` grid of `(θ₁, φ₁, θ₂, φ₂)`, evaluated through
/// the generic tomogram pipeline.
fn brute_force_min_h12(rho: &DensityMatrix, n: usize) -> f64 {
    let thetas: Vec<f64> = (0..n).map(|i| i as f64 * PI / (n - 1) as f64).collect();
    let phis: Vec<f64> = (0..n).map(|j| j as f64 * 2.0 * PI / n as f64).collect();
    let axes: Vec<_> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| rotation_from_angles(t, p)))
        .collect();
    let mut best = f64::INFINITY;
    for u1 in &axes {
        for u2 in &axes {
            let h = tomographic_entropies(rho, u1, u2, LogBase::BITS).unwrap();
            best = best.min(h.h12);
        }
    }
    best
}

#[test]
fn bell_state_cannot_go_below_one_bit() {
    let rho = bell_state(BellState::PhiPlus);
    let grid_min = brute_force_min_h12(&rho, 24);
    assert!(grid_min >= 1.0 - 1e-12, "{grid_min}");
    assert!((grid_min - 1.0).abs() < 1e-12);

    let r = optimized_discord(&rho, LogBase::BITS, &OptimizerConfig::default()).unwrap();
    let opt = r.optimized.unwrap();
    assert!((opt.discord_opt - 1.0).abs() < 1e-6, "{}", opt.discord_opt);
}

#[test]
fn optimizer_beats_coarse_brute_force() {
    for seed in 0..4 {
        let rho = random_two_qubit_state(Seed(seed)).unwrap();
        let r = optimized_discord(&rho, LogBase::BITS, &OptimizerConfig::default()).unwrap();
        let opt = r.optimized.unwrap();
        let oracle = brute_force_min_h12(&rho, 12) - r.s12;
        assert!(opt.discord_opt <= oracle + 1e-9, "seed {seed}: {} > {oracle}", opt.discord_opt);
        assert!(opt.discord_opt >= -1e-10);
        assert!(opt.discord_opt <= r.discord + 1e-10);
    }
}

#[test]
fn reported_argmin_reproduces_minimum() {
    let rho = random_two_qubit_state(Seed(77)).unwrap();
    let r = optimized_discord(&rho, LogBase::BITS, &OptimizerConfig::default()).unwrap();
    let opt = r.optimized.unwrap();
    let [t1, p1, t2, p2] = opt.argmin_angles;
    assert!((0.0..=PI).contains(&t1) && (0.0..=PI).contains(&t2));
    assert!((0.0..2.0 * PI).contains(&p1) && (0.0..2.0 * PI).contains(&p2));
    let h = tomographic_entropies(&rho, &rotation_from_angles(t1, p1), &rotation_from_angles(t2, p2), LogBase::BITS)
        .unwrap();
    assert!((h.h12 - r.s12 - opt.discord_opt).abs() < 1e-12);
}

#[test]
fn seed_changes_only_random_restarts() {
    let rho = random_two_qubit_state(Seed(9)).unwrap();
    let base = tomographic_discord(&rho, LogBase::BITS).unwrap();
    for seed in [0, 1, 2] {
        let config = OptimizerConfig { seed: Seed(seed), ..Default::default() };
        let opt = optimized_discord(&rho, LogBase::BITS, &config).unwrap().optimized.unwrap();
        assert!(opt.discord_opt <= base.discord + 1e-10);
    }
}
