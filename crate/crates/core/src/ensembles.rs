//! Seedable generators for test states.
//!
//! All randomness comes from xoshiro256++ seeded through SplitMix64
//! (`rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64`). Uniform doubles take
//! the top 53 bits of each output; normals use the Box–Muller transform. The
//! whole pipeline is integer-exact up to the final libm calls, so the same
//! seed yields the same state on every platform.

use std::f64::consts::PI;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::discord::XStateParams;
use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix, DensityMatrix, Tolerances, UnitaryMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Self(v)
    }
}

/// Deterministic sampler over the documented generator.
pub struct Sampler {
    rng: Xoshiro256PlusPlus,
    spare_normal: Option<f64>,
}

impl Sampler {
    pub fn new(seed: Seed) -> Self {
        Self {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed.0),
            spare_normal: None,
        }
    }

    /// Uniform on `[0, 1)` with 53 bits of resolution.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box–Muller; the second variate is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * PI * u2).sin_cos();
        self.spare_normal = Some(r * s);
        r * c
    }

    /// Standard complex normal, `E|z|² = 1`.
    pub fn complex_normal(&mut self) -> Complex {
        let re = self.normal();
        let im = self.normal();
        Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Uniform point on the probability simplex with `n` vertices.
    pub fn simplex(&mut self, n: usize) -> Vec<f64> {
        let mut w: Vec<f64> = (0..n).map(|_| -(1.0 - self.uniform()).ln()).collect();
        let total: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= total);
        w
    }

    pub fn ginibre(&mut self, dim: usize) -> ComplexMatrix {
        let data = (0..dim * dim).map(|_| self.complex_normal()).collect();
        ComplexMatrix::from_vec(dim, dim, data).expect("ginibre shape")
    }
}

/// Hilbert–Schmidt random state `GG†/Tr(GG†)` with no subsystem structure.
pub fn random_density_matrix(dim: usize, seed: Seed) -> Result<DensityMatrix> {
    random_state_with_dims(dim, Vec::new(), seed)
}

/// Hilbert–Schmidt random state on a `d1 × d2` bipartite space.
pub fn random_bipartite_state(d1: usize, d2: usize, seed: Seed) -> Result<DensityMatrix> {
    random_state_with_dims(d1 * d2, vec![d1, d2], seed)
}

pub fn random_two_qubit_state(seed: Seed) -> Result<DensityMatrix> {
    random_bipartite_state(2, 2, seed)
}

fn random_state_with_dims(dim: usize, dims: Vec<usize>, seed: Seed) -> Result<DensityMatrix> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let g = Sampler::new(seed).ginibre(dim);
    let w = g.matmul(&g.adjoint())?;
    let tr = w.trace().re;
    let mut rho = w.scale(Complex::new(1.0 / tr, 0.0));
    // Exact Hermiticity; the product is Hermitian only up to rounding.
    for i in 0..dim {
        rho[(i, i)].im = 0.0;
        for j in i + 1..dim {
            rho[(j, i)] = rho[(i, j)].conj();
        }
    }
    DensityMatrix::with_tolerances(rho, dims, &Tolerances::STRICT)
}

/// Haar-random unitary from Gram–Schmidt orthonormalization of a Ginibre
/// matrix.
pub fn random_unitary(dim: usize, seed: Seed) -> Result<UnitaryMatrix> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let g = Sampler::new(seed).ginibre(dim);
    let mut cols: Vec<Vec<Complex>> = (0..dim).map(|j| g.column(j)).collect();
    for j in 0..dim {
        for k in 0..j {
            let proj: Complex = cols[k].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
            let prev = cols[k].clone();
            for (x, p) in cols[j].iter_mut().zip(prev) {
                *x -= proj * p;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    UnitaryMatrix::with_tolerance(m, 1e-12)
}

/// Random X state: diagonal uniform on the simplex, coherence moduli uniform
/// up to their positivity bounds, phases uniform.
pub fn random_xstate(seed: Seed) -> XStateParams {
    let mut s = Sampler::new(seed);
    let d = s.simplex(4);
    let d: [f64; 4] = [d[0], d[1], d[2], d[3]];
    let r14 = s.uniform() * (d[0] * d[3]).sqrt();
    let r23 = s.uniform() * (d[1] * d[2]).sqrt();
    let p14 = 2.0 * PI * s.uniform();
    let p23 = 2.0 * PI * s.uniform();
    XStateParams::new(d, Complex::from_polar(r14, p14), Complex::from_polar(r23, p23))
        .expect("construction satisfies the X-state invariants")
}

/// `p·|Φ⁺⟩⟨Φ⁺| + (1−p)·I/4`.
pub fn werner_state(p: f64) -> Result<DensityMatrix> {
    werner_params(p)?.to_density_matrix()
}

pub fn werner_params(p: f64) -> Result<XStateParams> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("Werner weight {p} outside [0, 1]")));
    }
    let a = (1.0 + p) / 4.0;
    let b = (1.0 - p) / 4.0;
    XStateParams::new([a, b, b, a], Complex::new(p / 2.0, 0.0), Complex::new(0.0, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [Self::PhiPlus, Self::PhiMinus, Self::PsiPlus, Self::PsiMinus];

    pub fn params(self) -> XStateParams {
        let zero = Complex::new(0.0, 0.0);
        let (diag, r14, r23) = match self {
            Self::PhiPlus => ([0.5, 0.0, 0.0, 0.5], Complex::new(0.5, 0.0), zero),
            Self::PhiMinus => ([0.5, 0.0, 0.0, 0.5], Complex::new(-0.5, 0.0), zero),
            Self::PsiPlus => ([0.0, 0.5, 0.5, 0.0], zero, Complex::new(0.5, 0.0)),
            Self::PsiMinus => ([0.0, 0.5, 0.5, 0.0], zero, Complex::new(-0.5, 0.0)),
        };
        XStateParams::new(diag, r14, r23).expect("Bell states are valid X states")
    }
}

pub fn bell_state(which: BellState) -> DensityMatrix {
    which
        .params()
        .to_density_matrix()
        .expect("Bell states are valid density matrices")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_one_is_unit() {
        let rho = random_density_matrix(1, Seed(7)).unwrap();
        assert!((rho.matrix()[(0, 0)] - Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert!(random_density_matrix(0, Seed(7)).is_err());
    }

    #[test]
    fn seeded_state_is_valid_and_reproducible() {
        let a = random_two_qubit_state(Seed(42)).unwrap();
        let b = random_two_qubit_state(Seed(42)).unwrap();
        assert_eq!(a.matrix().as_slice(), b.matrix().as_slice());
        assert_ne!(a, random_two_qubit_state(Seed(43)).unwrap());
        assert_eq!(a.subsystem_dims(), &[2, 2]);
    }

    #[test]
    fn empirical_mean_is_maximally_mixed() {
        let n = 10_000;
        let mut mean = ComplexMatrix::zeros(2, 2);
        for i in 0..n {
            let rho = random_density_matrix(2, Seed(i)).unwrap();
            mean = mean.add(rho.matrix()).unwrap();
        }
        let mean = mean.scale(Complex::new(1.0 / n as f64, 0.0));
        let target = ComplexMatrix::from_real_diagonal(&[0.5, 0.5]);
        assert!(mean.max_abs_diff(&target) < 0.02, "{mean:?}");
    }

    #[test]
    fn normal_moments() {
        let mut s = Sampler::new(Seed(1));
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| s.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01);
        assert!((var - 1.0).abs() < 0.01);
    }

    #[test]
    fn sampler_golden_values() {
        // Reference values from an independent xoshiro256++ / SplitMix64
        // implementation, for cross-language ports.
        let mut s = Sampler::new(Seed(0));
        assert_eq!(s.uniform(), 0.3245752680314067);
        assert_eq!(s.uniform(), 0.38223929651167343);
    }

    #[test]
    fn random_unitary_is_unitary() {
        for dim in [1, 2, 4] {
            let u = random_unitary(dim, Seed(dim as u64)).unwrap();
            assert!(u.as_matrix().unitarity_residual() < 1e-13);
        }
    }

    #[test]
    fn xstate_invariants_and_determinism() {
        for i in 0..200 {
            let x = random_xstate(Seed(i));
            assert_eq!(x, random_xstate(Seed(i)));
            let d = x.diagonal();
            assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(x.rho14().norm_sqr() <= d[0] * d[3] + 1e-15);
            assert!(x.rho23().norm_sqr() <= d[1] * d[2] + 1e-15);
            x.to_density_matrix().unwrap();
        }
    }

    #[test]
    fn werner_family() {
        let w0 = werner_state(0.0).unwrap();
        assert!(w0.matrix().max_abs_diff(DensityMatrix::maximally_mixed(vec![2, 2]).unwrap().matrix()) < 1e-15);
        let w1 = werner_state(1.0).unwrap();
        assert!(w1.matrix().max_abs_diff(bell_state(BellState::PhiPlus).matrix()) < 1e-15);
        let spec = werner_state(0.5).unwrap().eigenvalues().to_vec();
        for (a, b) in spec.iter().zip([0.625, 0.125, 0.125, 0.125]) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(werner_state(1.5).is_err());
        assert!(werner_state(-0.1).is_err());
    }

    #[test]
    fn bell_state_entries() {
        let m = bell_state(BellState::PsiMinus);
        assert_eq!(m.matrix()[(1, 1)].re, 0.5);
        assert_eq!(m.matrix()[(2, 2)].re, 0.5);
        assert_eq!(m.matrix()[(1, 2)].re, -0.5);
        let p = bell_state(BellState::PhiPlus);
        assert_eq!(p.matrix()[(0, 3)].re, 0.5);
        for b in BellState::ALL {
            assert!((bell_state(b).eigenvalues()[0] - 1.0).abs() < 1e-14);
        }
    }
}
