//! Two-qubit X states: density matrices whose only nonzero entries lie on
//! the diagonal and the anti-diagonal.

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix, DensityMatrix, Tolerances};

/// Off-X entries below this modulus count as zero when detecting X structure.
pub const X_STRUCTURE_TOL: f64 = 1e-10;

const PARAM_TOL: f64 = 1e-8;

/// Independent entries of an X state; `ρ₄₁ = conj(ρ₁₄)` and `ρ₃₂ = conj(ρ₂₃)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    diagonal: [f64; 4],
    rho14: Complex,
    rho23: Complex,
}

impl XStateParams {
    pub fn new(diagonal: [f64; 4], rho14: Complex, rho23: Complex) -> Result<Self> {
        let finite = diagonal.iter().all(|x| x.is_finite())
            && rho14.re.is_finite()
            && rho14.im.is_finite()
            && rho23.re.is_finite()
            && rho23.im.is_finite();
        if !finite {
            return Err(Error::InvalidXState("non-finite entry".into()));
        }
        if let Some(d) = diagonal.iter().find(|&&d| !(-PARAM_TOL..=1.0 + PARAM_TOL).contains(&d)) {
            return Err(Error::InvalidXState(format!("diagonal entry {d} outside [0, 1]")));
        }
        let total: f64 = diagonal.iter().sum();
        if (total - 1.0).abs() > PARAM_TOL {
            return Err(Error::InvalidXState(format!("diagonal sums to {total}")));
        }
        let [d1, d2, d3, d4] = diagonal;
        if rho14.norm_sqr() > d1 * d4 + PARAM_TOL {
            return Err(Error::InvalidXState(format!(
                "|rho14|^2 = {} exceeds rho11*rho44 = {}",
                rho14.norm_sqr(),
                d1 * d4
            )));
        }
        if rho23.norm_sqr() > d2 * d3 + PARAM_TOL {
            return Err(Error::InvalidXState(format!(
                "|rho23|^2 = {} exceeds rho22*rho33 = {}",
                rho23.norm_sqr(),
                d2 * d3
            )));
        }
        Ok(Self {
            diagonal,
            rho14,
            rho23,
        })
    }

    /// Reads the X entries of a validated state, or `None` when an off-X
    /// entry exceeds `threshold`.
    pub fn from_density_matrix(rho: &DensityMatrix, threshold: f64) -> Option<Self> {
        if rho.subsystem_dims() != [2, 2] || !is_x_structured(rho.matrix(), threshold) {
            return None;
        }
        let m = rho.matrix();
        Some(Self {
            diagonal: [m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re],
            rho14: m[(0, 3)],
            rho23: m[(1, 2)],
        })
    }

    /// `(ρ₁₁, ρ₂₂, ρ₃₃, ρ₄₄)`.
    pub fn diagonal(&self) -> [f64; 4] {
        self.diagonal
    }

    pub fn rho14(&self) -> Complex {
        self.rho14
    }

    pub fn rho23(&self) -> Complex {
        self.rho23
    }

    /// Closed-form spectrum `(λ₁, λ₂, λ₃, λ₄)` of the two 2×2 blocks, in
    /// block order (not sorted).
    pub fn eigenvalues(&self) -> [f64; 4] {
        let [d1, d2, d3, d4] = self.diagonal;
        let (a1, a2) = block_eigenvalues(d1, d4, self.rho14);
        let (b1, b2) = block_eigenvalues(d2, d3, self.rho23);
        [a1, a2, b1, b2]
    }

    /// Diagonals of the reduced states, `(ρ₁₁+ρ₂₂, ρ₃₃+ρ₄₄)` and
    /// `(ρ₁₁+ρ₃₃, ρ₂₂+ρ₄₄)`.
    pub fn marginal_diagonals(&self) -> ([f64; 2], [f64; 2]) {
        let [d1, d2, d3, d4] = self.diagonal;
        ([d1 + d2, d3 + d4], [d1 + d3, d2 + d4])
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let z = Complex::new(0.0, 0.0);
        let r = |x: f64| Complex::new(x, 0.0);
        let [d1, d2, d3, d4] = self.diagonal;
        ComplexMatrix::from_vec(
            4,
            4,
            vec![
                r(d1), z, z, self.rho14,
                z, r(d2), self.rho23, z,
                z, self.rho23.conj(), r(d3), z,
                self.rho14.conj(), z, z, r(d4),
            ],
        )
        .expect("4x4 layout")
    }

    pub fn to_density_matrix(&self) -> Result<DensityMatrix> {
        DensityMatrix::with_tolerances(self.to_matrix(), vec![2, 2], &Tolerances::uniform(PARAM_TOL))
    }
}

fn block_eigenvalues(a: f64, b: f64, coherence: Complex) -> (f64, f64) {
    let mean = (a + b) / 2.0;
    let half_gap = ((a - b).powi(2) + 4.0 * coherence.norm_sqr()).sqrt() / 2.0;
    (mean + half_gap, mean - half_gap)
}

/// True when every entry off the diagonal and anti-diagonal of a 4×4 matrix
/// is below `threshold` in modulus.
pub fn is_x_structured(m: &ComplexMatrix, threshold: f64) -> bool {
    if m.rows() != 4 || m.cols() != 4 {
        return false;
    }
    (0..4).all(|i| (0..4).all(|j| i == j || i + j == 3 || m[(i, j)].norm() < threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigendecompose;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn closed_form_spectrum_matches_jacobi() {
        let x = XStateParams::new([0.4, 0.2, 0.1, 0.3], c(0.1, 0.2), c(0.05, -0.1)).unwrap();
        let mut closed = x.eigenvalues().to_vec();
        closed.sort_by(|a, b| b.total_cmp(a));
        let numeric = eigendecompose(&x.to_matrix()).unwrap();
        for (a, b) in closed.iter().zip(numeric.eigenvalues()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn werner_half_spectrum() {
        let x = XStateParams::new([0.375, 0.125, 0.125, 0.375], c(0.25, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(x.eigenvalues(), [0.625, 0.125, 0.125, 0.125]);
    }

    #[test]
    fn marginals_match_partial_trace() {
        let x = XStateParams::new([0.4, 0.2, 0.1, 0.3], c(0.1, 0.2), c(0.05, -0.1)).unwrap();
        let rho = x.to_density_matrix().unwrap();
        let (m1, m2) = x.marginal_diagonals();
        assert!(rho.partial_trace(1).unwrap().matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&m1)) < 1e-15);
        assert!(rho.partial_trace(2).unwrap().matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&m2)) < 1e-15);
    }

    #[test]
    fn rejects_invalid_params() {
        let z = c(0.0, 0.0);
        assert!(XStateParams::new([0.5, 0.5, 0.5, 0.0], z, z).is_err());
        assert!(XStateParams::new([1.2, -0.2, 0.0, 0.0], z, z).is_err());
        assert!(XStateParams::new([0.25; 4], c(0.3, 0.0), z).is_err());
        assert!(XStateParams::new([0.25; 4], z, c(0.0, 0.26)).is_err());
        assert!(XStateParams::new([0.25; 4], c(f64::NAN, 0.0), z).is_err());
        assert!(XStateParams::new([0.25; 4], c(0.25, 0.0), c(0.0, 0.25)).is_ok());
    }

    #[test]
    fn structure_detection() {
        let x = XStateParams::new([0.4, 0.2, 0.1, 0.3], c(0.1, 0.2), c(0.05, -0.1)).unwrap();
        let rho = x.to_density_matrix().unwrap();
        assert_eq!(XStateParams::from_density_matrix(&rho, X_STRUCTURE_TOL), Some(x));
        let mut m = x.to_matrix();
        m[(0, 1)] = c(1e-6, 0.0);
        m[(1, 0)] = c(1e-6, 0.0);
        assert!(!is_x_structured(&m, X_STRUCTURE_TOL));
        assert!(is_x_structured(&m, 1e-5));
    }
}
