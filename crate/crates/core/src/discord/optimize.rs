//! Minimization of the joint tomographic entropy `H₁₂(u₁⊗u₂)` over pairs of
//! measurement axes.
//!
//! Right-multiplying a local unitary by a diagonal phase leaves the tomogram
//! unchanged, and a left phase only relabels outcomes, so each local unitary
//! reduces to a Bloch-sphere axis `(θ, φ)`. The search runs a full grid over
//! both spheres, then refines the best grid points (plus the marginal
//! eigenbases and a few seeded random starts) with Nelder–Mead.

use std::f64::consts::PI;

use serde::Serialize;

use crate::ensembles::{Sampler, Seed};
use crate::entropy::{LogBase, ZERO_PROB};
use crate::error::{Error, Result};
use crate::linalg::{Complex, DensityMatrix};
use crate::tomography::Direction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Polar grid points per sphere, `θ = iπ/n` for `i < n`.
    pub grid_theta: usize,
    /// Azimuthal grid points per sphere, `φ = 2πj/n`.
    pub grid_phi: usize,
    /// Number of best grid points refined locally.
    pub refine_top: usize,
    /// Additional uniformly random starting points drawn from `seed`.
    pub random_restarts: usize,
    /// Simplex spread in objective value at which a local search stops.
    pub tolerance: f64,
    /// Evaluation budget shared by all local searches.
    pub max_evaluations: usize,
    pub seed: Seed,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_theta: 16,
            grid_phi: 16,
            refine_top: 4,
            random_restarts: 2,
            tolerance: 1e-9,
            max_evaluations: 20_000,
            seed: Seed(0),
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_theta == 0 || self.grid_phi == 0 {
            return Err(Error::InvalidParameter("grid needs at least one point per axis".into()));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_evaluations == 0 {
            return Err(Error::InvalidParameter("max_evaluations must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of the local-unitary minimization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizedDiscord {
    /// `min H₁₂(u₁⊗u₂) − S₁₂`.
    pub discord_opt: f64,
    /// `(θ₁, φ₁, θ₂, φ₂)` of the best axes found, in canonical ranges.
    pub argmin_angles: [f64; 4],
    /// Objective evaluations across grid and local stages.
    pub evaluations: usize,
}

/// Two-qubit joint tomographic entropy as a function of two measurement axes.
pub(crate) struct JointEntropy {
    rho: [[Complex; 4]; 4],
    ln_base: f64,
}

/// Columns `|n,+½⟩, |n,−½⟩` of the rotation for `(θ, φ)`.
fn axis_basis(theta: f64, phi: f64) -> [[Complex; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = Complex::from_polar(1.0, phi);
    [
        [Complex::new(c, 0.0), e * s],
        [-e.conj() * s, Complex::new(c, 0.0)],
    ]
}

impl JointEntropy {
    pub(crate) fn new(rho: &DensityMatrix, base: LogBase) -> Self {
        let m = rho.matrix();
        let mut a = [[Complex::new(0.0, 0.0); 4]; 4];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z = m[(i, j)];
            }
        }
        Self {
            rho: a,
            ln_base: base.value().ln(),
        }
    }

    fn in_bases(&self, a: &[[Complex; 2]; 2], b: &[[Complex; 2]; 2]) -> f64 {
        let mut nats = 0.0;
        for va in a {
            for vb in b {
                let v = [va[0] * vb[0], va[0] * vb[1], va[1] * vb[0], va[1] * vb[1]];
                let mut p = 0.0;
                for (vi, rho_row) in v.iter().zip(&self.rho) {
                    let row: Complex = rho_row.iter().zip(&v).map(|(r, vj)| r * vj).sum();
                    p += (vi.conj() * row).re;
                }
                if p > ZERO_PROB {
                    nats -= p * p.ln();
                }
            }
        }
        nats / self.ln_base
    }

    pub(crate) fn at(&self, angles: &[f64]) -> f64 {
        let a = axis_basis(angles[0], angles[1]);
        let b = axis_basis(angles[2], angles[3]);
        self.in_bases(&a, &b)
    }
}

/// Bloch angles `(θ, φ)` of a normalized qubit vector.
pub(crate) fn bloch_angles(v: &[Complex]) -> (f64, f64) {
    let theta = 2.0 * v[1].norm().atan2(v[0].norm());
    let phi = if v[0].norm() > 0.0 && v[1].norm() > 0.0 {
        v[1].arg() - v[0].arg()
    } else {
        0.0
    };
    (theta, phi)
}

fn canonical(angles: [f64; 4]) -> [f64; 4] {
    let wrap = |t: f64, p: f64| Direction::wrapped(t, p).map_or((t, p), |d| (d.theta(), d.phi()));
    let (t1, p1) = wrap(angles[0], angles[1]);
    let (t2, p2) = wrap(angles[2], angles[3]);
    [t1, p1, t2, p2]
}

/// Minimizes `H₁₂` over both axes. `anchor` is always evaluated and refined.
pub(crate) fn minimize_joint_entropy(
    objective: &JointEntropy,
    anchor: [f64; 4],
    config: &OptimizerConfig,
) -> Result<(f64, [f64; 4], usize)> {
    config.validate()?;

    let sphere: Vec<(f64, f64)> = (0..config.grid_theta)
        .flat_map(|i| {
            (0..config.grid_phi).map(move |j| {
                (
                    i as f64 * PI / config.grid_theta as f64,
                    j as f64 * 2.0 * PI / config.grid_phi as f64,
                )
            })
        })
        .collect();
    let bases: Vec<_> = sphere.iter().map(|&(t, p)| axis_basis(t, p)).collect();

    let mut grid: Vec<(f64, [f64; 4])> = Vec::with_capacity(sphere.len() * sphere.len());
    for (i, a) in bases.iter().enumerate() {
        for (j, b) in bases.iter().enumerate() {
            let angles = [sphere[i].0, sphere[i].1, sphere[j].0, sphere[j].1];
            grid.push((objective.in_bases(a, b), angles));
        }
    }
    let mut evaluations = grid.len();
    grid.sort_by(|x, y| {
        x.0.total_cmp(&y.0).then_with(|| {
            x.1.iter()
                .zip(&y.1)
                .map(|(a, b)| a.total_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });

    let mut starts: Vec<[f64; 4]> = vec![anchor];
    starts.extend(grid.iter().take(config.refine_top).map(|g| g.1));
    let mut sampler = Sampler::new(config.seed);
    for _ in 0..config.random_restarts {
        let mut p = [0.0; 4];
        for k in 0..2 {
            p[2 * k] = (1.0 - 2.0 * sampler.uniform()).acos();
            p[2 * k + 1] = 2.0 * PI * sampler.uniform();
        }
        starts.push(p);
    }

    let anchor_value = objective.at(&anchor);
    evaluations += 1;
    let (mut best_value, mut best_angles) = (anchor_value, anchor);
    if let Some(g) = grid.first() {
        if g.0 < best_value {
            best_value = g.0;
            best_angles = g.1;
        }
    }

    let step_theta = PI / config.grid_theta as f64;
    let step_phi = 2.0 * PI / config.grid_phi as f64;
    let steps = [step_theta, step_phi, step_theta, step_phi];
    let per_start = (config.max_evaluations / starts.len()).max(1);
    let nm = NelderMead {
        tolerance: config.tolerance,
        max_evaluations: per_start,
    };
    for start in &starts {
        let found = nm.minimize(|x| objective.at(x), start, &steps);
        evaluations += found.evaluations;
        if found.value < best_value {
            best_value = found.value;
            best_angles = [found.point[0], found.point[1], found.point[2], found.point[3]];
        }
    }
    Ok((best_value, canonical(best_angles), evaluations))
}

#[derive(Debug, Clone)]
pub(crate) struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Derivative-free simplex search with the standard coefficients
/// (reflection 1, expansion 2, contraction ½, shrink ½).
pub(crate) struct NelderMead {
    pub tolerance: f64,
    pub max_evaluations: usize,
}

impl NelderMead {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    pub fn minimize(&self, mut f: impl FnMut(&[f64]) -> f64, start: &[f64], steps: &[f64]) -> Minimum {
        let n = start.len();
        let mut evaluations = 0;
        let mut eval = |x: &[f64], count: &mut usize| {
            *count += 1;
            f(x)
        };

        let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
        for (i, step) in steps.iter().enumerate() {
            let mut v = start.to_vec();
            v[i] += step;
            simplex.push(v);
        }
        let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evaluations)).collect();

        loop {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            if values[n] - values[0] <= self.tolerance || evaluations + n + 2 > self.max_evaluations {
                break;
            }

            let centroid: Vec<f64> = (0..n)
                .map(|k| simplex[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n])
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let reflected = along(Self::REFLECT);
            let f_reflected = eval(&reflected, &mut evaluations);

            if f_reflected < values[0] {
                let expanded = along(Self::REFLECT * Self::EXPAND);
                let f_expanded = eval(&expanded, &mut evaluations);
                if f_expanded < f_reflected {
                    simplex[n] = expanded;
                    values[n] = f_expanded;
                } else {
                    simplex[n] = reflected;
                    values[n] = f_reflected;
                }
                continue;
            }
            if f_reflected < values[n - 1] {
                simplex[n] = reflected;
                values[n] = f_reflected;
                continue;
            }

            let (contracted, accept_below) = if f_reflected < values[n] {
                (along(Self::REFLECT * Self::CONTRACT), f_reflected)
            } else {
                (along(-Self::CONTRACT), values[n])
            };
            let f_contracted = eval(&contracted, &mut evaluations);
            if f_contracted <= accept_below {
                simplex[n] = contracted;
                values[n] = f_contracted;
                continue;
            }

            let best = simplex[0].clone();
            for i in 1..=n {
                simplex[i] = best
                    .iter()
                    .zip(&simplex[i])
                    .map(|(b, x)| b + Self::SHRINK * (x - b))
                    .collect();
                values[i] = eval(&simplex[i], &mut evaluations);
            }
        }

        Minimum {
            point: simplex[0].clone(),
            value: values[0],
            evaluations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::tomographic_entropies;
    use crate::ensembles::random_two_qubit_state;
    use crate::tomography::rotation_from_angles;

    #[test]
    fn nelder_mead_finds_quadratic_minimum() {
        let nm = NelderMead {
            tolerance: 1e-14,
            max_evaluations: 5_000,
        };
        let m = nm.minimize(
            |x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2) + 0.5,
            &[0.0, 0.0],
            &[0.5, 0.5],
        );
        assert!((m.point[0] - 1.0).abs() < 1e-5);
        assert!((m.point[1] + 2.0).abs() < 1e-5);
        assert!((m.value - 0.5).abs() < 1e-10);
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let nm = NelderMead {
            tolerance: 1e-16,
            max_evaluations: 10_000,
        };
        let m = nm.minimize(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            &[0.1, 0.1],
        );
        assert!((m.point[0] - 1.0).abs() < 1e-4, "{:?}", m.point);
        assert!((m.point[1] - 1.0).abs() < 1e-4, "{:?}", m.point);
    }

    #[test]
    fn nelder_mead_respects_budget() {
        let nm = NelderMead {
            tolerance: 0.0,
            max_evaluations: 50,
        };
        let m = nm.minimize(|x| x[0].abs() + x[1].abs(), &[3.0, 3.0], &[1.0, 1.0]);
        assert!(m.evaluations <= 50);
    }

    #[test]
    fn fast_objective_matches_generic_pipeline() {
        for seed in 0..20 {
            let rho = random_two_qubit_state(Seed(seed)).unwrap();
            let objective = JointEntropy::new(&rho, LogBase::BITS);
            let angles = [0.3 + seed as f64 * 0.1, 1.7, 2.9 - seed as f64 * 0.1, 5.1];
            let u1 = rotation_from_angles(angles[0], angles[1]);
            let u2 = rotation_from_angles(angles[2], angles[3]);
            let h = tomographic_entropies(&rho, &u1, &u2, LogBase::BITS).unwrap();
            assert!((objective.at(&angles) - h.h12).abs() < 1e-13);
        }
    }

    #[test]
    fn bloch_angles_recover_rotation_column() {
        let (theta, phi) = (1.1, 2.3);
        let u = rotation_from_angles(theta, phi);
        let col = u.as_matrix().column(0);
        let (t, p) = bloch_angles(&col);
        assert!((t - theta).abs() < 1e-14);
        assert!((p - phi).abs() < 1e-14);
    }

    #[test]
    fn config_validation() {
        assert!(OptimizerConfig::default().validate().is_ok());
        let bad = [
            OptimizerConfig { grid_theta: 0, ..Default::default() },
            OptimizerConfig { grid_phi: 0, ..Default::default() },
            OptimizerConfig { tolerance: 0.0, ..Default::default() },
            OptimizerConfig { tolerance: -1.0, ..Default::default() },
            OptimizerConfig { max_evaluations: 0, ..Default::default() },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }
}
