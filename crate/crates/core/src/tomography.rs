//! Spin tomograms and unitary tomograms of qubit states.
//!
//! Outcomes are indexed with `m = +j` first, so index 0 is spin up along the
//! measurement axis. Bipartite outcomes are ordered lexicographically with
//! `m₁` major, matching the computational basis `|00⟩, |01⟩, |10⟩, |11⟩`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix, DensityMatrix, EigenDecomposition, UnitaryMatrix};

/// Entries in `[-PROB_TOL, 0)` are float noise and reported as zero.
pub const PROB_TOL: f64 = 1e-10;
/// Largest imaginary residual tolerated on the diagonal of `u†ρu`.
pub const IMAG_TOL: f64 = 1e-10;

/// Point on the unit sphere, `n = (sinθ cosφ, sinθ sinφ, cosθ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    /// Requires `θ ∈ [0, π]` and `φ ∈ [0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::InvalidDirection { theta, phi });
        }
        Ok(Self { theta, phi })
    }

    /// Maps arbitrary angles onto the canonical ranges describing the same
    /// axis.
    pub fn wrapped(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidDirection { theta, phi });
        }
        let mut theta = theta.rem_euclid(2.0 * PI);
        let mut phi = phi;
        if theta > PI {
            theta = 2.0 * PI - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(2.0 * PI);
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Self::new(theta, phi)
    }

    pub fn z() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    pub fn x() -> Self {
        Self {
            theta: PI / 2.0,
            phi: 0.0,
        }
    }

    pub fn y() -> Self {
        Self {
            theta: PI / 2.0,
            phi: PI / 2.0,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Probability vector over joint spin-projection outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct Tomogram {
    probabilities: Vec<f64>,
    outcome_dims: Vec<usize>,
    source_unitary: Option<UnitaryMatrix>,
}

impl Tomogram {
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn outcome_dims(&self) -> &[usize] {
        &self.outcome_dims
    }

    /// The unitary `u` the tomogram was taken at. Marginals of a joint
    /// tomogram carry none.
    pub fn source_unitary(&self) -> Option<&UnitaryMatrix> {
        self.source_unitary.as_ref()
    }

    pub fn into_probabilities(self) -> Vec<f64> {
        self.probabilities
    }

    /// Builds a tomogram from raw probabilities, e.g. measured frequencies.
    pub fn from_probabilities(probabilities: Vec<f64>, outcome_dims: Vec<usize>) -> Result<Self> {
        if outcome_dims.iter().product::<usize>() != probabilities.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} outcomes", outcome_dims.iter().product::<usize>()),
                found: format!("{}", probabilities.len()),
            });
        }
        Ok(Self {
            probabilities,
            outcome_dims,
            source_unitary: None,
        })
    }
}

/// The j = 1/2 rotation taking the computational basis to the spin basis
/// along `n`: columns are `|n, +½⟩` and `|n, −½⟩`.
pub fn rotation_unitary(n: Direction) -> UnitaryMatrix {
    rotation_from_angles(n.theta, n.phi)
}

/// [`rotation_unitary`] without range checks on the angles.
pub fn rotation_from_angles(theta: f64, phi: f64) -> UnitaryMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = Complex::from_polar(1.0, phi);
    let m = ComplexMatrix::from_vec(
        2,
        2,
        vec![Complex::new(c, 0.0), -e.conj() * s, e * s, Complex::new(c, 0.0)],
    )
    .expect("2x2 rotation is well formed");
    UnitaryMatrix::from_trusted(m)
}

/// `ω(m, u) = ⟨m| u† ρ u |m⟩`.
pub fn unitary_tomogram(rho: &DensityMatrix, u: &UnitaryMatrix) -> Result<Tomogram> {
    let k = rho.dim();
    if u.dim() != k {
        return Err(Error::DimensionMismatch {
            expected: format!("{k}x{k} unitary"),
            found: format!("{}x{}", u.dim(), u.dim()),
        });
    }
    let rho_m = rho.matrix();
    let u_m = u.as_matrix();
    let mut probabilities = Vec::with_capacity(k);
    for m in 0..k {
        let mut acc = Complex::new(0.0, 0.0);
        for i in 0..k {
            let mut row = Complex::new(0.0, 0.0);
            for j in 0..k {
                row += rho_m[(i, j)] * u_m[(j, m)];
            }
            acc += u_m[(i, m)].conj() * row;
        }
        if acc.im.abs() > IMAG_TOL {
            return Err(Error::ComplexDiagonal { residual: acc.im.abs() });
        }
        probabilities.push(acc.re.clamp(0.0, 1.0));
    }
    Ok(Tomogram {
        probabilities,
        outcome_dims: rho.outcome_dims(),
        source_unitary: Some(u.clone()),
    })
}

/// Tomogram of the eigendecomposed state: `ω_m = Σ_k λ_k |(u₀u)_{km}|²`.
pub fn tomogram_via_eigen(decomp: &EigenDecomposition, u: &UnitaryMatrix) -> Result<Tomogram> {
    let k = decomp.dim();
    if u.dim() != k {
        return Err(Error::DimensionMismatch {
            expected: format!("{k}x{k} unitary"),
            found: format!("{}x{}", u.dim(), u.dim()),
        });
    }
    let weights = decomp.diagonalizer().as_matrix().matmul(u.as_matrix())?.abs_squared();
    let probabilities = (0..k)
        .map(|m| {
            decomp
                .eigenvalues()
                .iter()
                .enumerate()
                .map(|(row, lambda)| lambda * weights[row * k + m])
                .sum::<f64>()
                .clamp(0.0, 1.0)
        })
        .collect();
    Ok(Tomogram {
        probabilities,
        outcome_dims: vec![k],
        source_unitary: Some(u.clone()),
    })
}

/// Spin tomogram `ω(m, n)` of a single qubit along direction `n`.
pub fn spin_tomogram(rho: &DensityMatrix, n: Direction) -> Result<Tomogram> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: "single qubit (dimension 2)".into(),
            found: format!("dimension {}", rho.dim()),
        });
    }
    unitary_tomogram(rho, &rotation_unitary(n))
}

/// Joint spin tomogram of two qubits along `n1` and `n2`.
pub fn bipartite_spin_tomogram(rho: &DensityMatrix, n1: Direction, n2: Direction) -> Result<Tomogram> {
    if rho.subsystem_dims() != [2, 2] {
        return Err(Error::DimensionMismatch {
            expected: "two qubits with subsystem dims [2, 2]".into(),
            found: format!("{:?}", rho.subsystem_dims()),
        });
    }
    let u = rotation_unitary(n1).kron(&rotation_unitary(n2));
    unitary_tomogram(rho, &u)
}

/// Marginal distributions `(Σ_{m₂} ω, Σ_{m₁} ω)` of a bipartite tomogram.
pub fn marginals(t: &Tomogram) -> Result<(Tomogram, Tomogram)> {
    let (d1, d2) = match t.outcome_dims.as_slice() {
        &[a, b] => (a, b),
        dims => return Err(Error::NotBipartite { dims: dims.to_vec() }),
    };
    let mut first = vec![0.0; d1];
    let mut second = vec![0.0; d2];
    for (i, p1) in first.iter_mut().enumerate() {
        for (j, p2) in second.iter_mut().enumerate() {
            let p = t.probabilities[i * d2 + j];
            *p1 += p;
            *p2 += p;
        }
    }
    let wrap = |probabilities, dim| Tomogram {
        probabilities,
        outcome_dims: vec![dim],
        source_unitary: None,
    };
    Ok((wrap(first, d1), wrap(second, d2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Tolerances;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn diag_state(p: &[f64], dims: Vec<usize>) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::from_real_diagonal(p), dims).unwrap()
    }

    fn assert_probs(t: &Tomogram, expected: &[f64], tol: f64) {
        assert_eq!(t.probabilities().len(), expected.len());
        for (a, b) in t.probabilities().iter().zip(expected) {
            assert!((a - b).abs() <= tol, "{:?} vs {:?}", t.probabilities(), expected);
        }
    }

    /// `⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩` via `Tr(ρσ)`.
    fn bloch(rho: &DensityMatrix) -> [f64; 3] {
        let sx = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let sy = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
            .unwrap();
        let sz = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        [sx, sy, sz].map(|s| rho.matrix().matmul(&s).unwrap().trace().re)
    }

    #[test]
    fn identity_measurement_of_diagonal_state() {
        let rho = diag_state(&[0.7, 0.3], vec![]);
        let t = unitary_tomogram(&rho, &UnitaryMatrix::identity(2)).unwrap();
        assert_probs(&t, &[0.7, 0.3], 0.0);
        assert_eq!(t.outcome_dims(), &[2]);
    }

    #[test]
    fn maximally_mixed_is_uniform() {
        let rho = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        let u = rotation_from_angles(0.3, 1.1).kron(&rotation_from_angles(2.0, 4.0));
        assert_probs(&unitary_tomogram(&rho, &u).unwrap(), &[0.25; 4], 1e-15);
        let half = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        assert_probs(&spin_tomogram(&half, Direction::new(1.2, 5.0).unwrap()).unwrap(), &[0.5, 0.5], 1e-15);
    }

    #[test]
    fn spin_tomogram_axes() {
        let up = diag_state(&[1.0, 0.0], vec![]);
        assert_probs(&spin_tomogram(&up, Direction::z()).unwrap(), &[1.0, 0.0], 0.0);
        assert_probs(&spin_tomogram(&up, Direction::x()).unwrap(), &[0.5, 0.5], 1e-15);
        let down_axis = Direction::new(PI, 0.0).unwrap();
        assert_probs(&spin_tomogram(&up, down_axis).unwrap(), &[0.0, 1.0], 1e-15);
    }

    #[test]
    fn x_polarized_state_along_x() {
        let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let rho = DensityMatrix::new(plus, vec![]).unwrap();
        assert_probs(&spin_tomogram(&rho, Direction::x()).unwrap(), &[1.0, 0.0], 1e-15);
    }

    #[test]
    fn rotation_at_north_pole_is_identity() {
        assert_eq!(rotation_unitary(Direction::z()).as_matrix(), &ComplexMatrix::identity(2));
    }

    #[test]
    fn antipodal_direction_swaps_outcomes() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.8, 0.0), c(0.1, 0.3)], vec![c(0.1, -0.3), c(0.2, 0.0)]])
            .unwrap();
        let rho = DensityMatrix::new(m, vec![]).unwrap();
        let a = spin_tomogram(&rho, Direction::new(0.0, 0.0).unwrap()).unwrap();
        let b = spin_tomogram(&rho, Direction::new(PI, 0.0).unwrap()).unwrap();
        assert_probs(&b, &[a.probabilities()[1], a.probabilities()[0]], 1e-15);
    }

    #[test]
    fn matches_projector_probabilities() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.65, 0.0), c(-0.2, 0.35)], vec![c(-0.2, -0.35), c(0.35, 0.0)]])
            .unwrap();
        let rho = DensityMatrix::new(m, vec![]).unwrap();
        let r = bloch(&rho);
        for (theta, phi) in [(0.0, 0.0), (0.4, 0.2), (1.3, 2.9), (2.5, 5.5), (PI, 1.0)] {
            let n = Direction::new(theta, phi).unwrap();
            let v = n.unit_vector();
            let dot = v[0] * r[0] + v[1] * r[1] + v[2] * r[2];
            assert_probs(&spin_tomogram(&rho, n).unwrap(), &[(1.0 + dot) / 2.0, (1.0 - dot) / 2.0], 1e-12);
        }
    }

    #[test]
    fn bell_state_along_z() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)];
        let rho = DensityMatrix::pure(&psi, vec![2, 2]).unwrap();
        let t = bipartite_spin_tomogram(&rho, Direction::z(), Direction::z()).unwrap();
        assert_probs(&t, &[0.5, 0.0, 0.0, 0.5], 1e-15);
        let (m1, m2) = marginals(&t).unwrap();
        assert_probs(&m1, &[0.5, 0.5], 1e-15);
        assert_probs(&m2, &[0.5, 0.5], 1e-15);
    }

    #[test]
    fn bipartite_equals_kron_rotation() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.4, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.1, 0.2)],
            vec![c(0.0, 0.0), c(0.2, 0.0), c(0.05, -0.1), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.05, 0.1), c(0.1, 0.0), c(0.0, 0.0)],
            vec![c(0.1, -0.2), c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)],
        ])
        .unwrap();
        let rho = DensityMatrix::two_qubit(m).unwrap();
        let (n1, n2) = (Direction::new(0.7, 0.3).unwrap(), Direction::new(2.2, 4.4).unwrap());
        let a = bipartite_spin_tomogram(&rho, n1, n2).unwrap();
        let u = rotation_unitary(n1).kron(&rotation_unitary(n2));
        let b = unitary_tomogram(&rho, &u).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn product_state_factorizes() {
        let a = ComplexMatrix::from_rows(&[vec![c(0.7, 0.0), c(0.1, 0.3)], vec![c(0.1, -0.3), c(0.3, 0.0)]])
            .unwrap();
        let b = ComplexMatrix::from_real_rows(&[&[0.25, -0.2], &[-0.2, 0.75]]).unwrap();
        let rho = DensityMatrix::two_qubit(a.kron(&b)).unwrap();
        let (n1, n2) = (Direction::new(1.0, 0.5).unwrap(), Direction::new(0.2, 3.0).unwrap());
        let joint = bipartite_spin_tomogram(&rho, n1, n2).unwrap();
        let ta = spin_tomogram(&DensityMatrix::new(a, vec![]).unwrap(), n1).unwrap();
        let tb = spin_tomogram(&DensityMatrix::new(b, vec![]).unwrap(), n2).unwrap();
        let outer: Vec<f64> = ta
            .probabilities()
            .iter()
            .flat_map(|p| tb.probabilities().iter().map(move |q| p * q))
            .collect();
        assert_probs(&joint, &outer, 1e-15);
    }

    #[test]
    fn marginal_examples() {
        let uniform = Tomogram::from_probabilities(vec![0.25; 4], vec![2, 2]).unwrap();
        let (a, b) = marginals(&uniform).unwrap();
        assert_probs(&a, &[0.5, 0.5], 0.0);
        assert_probs(&b, &[0.5, 0.5], 0.0);
        let sure = Tomogram::from_probabilities(vec![1.0, 0.0, 0.0, 0.0], vec![2, 2]).unwrap();
        let (a, b) = marginals(&sure).unwrap();
        assert_probs(&a, &[1.0, 0.0], 0.0);
        assert_probs(&b, &[1.0, 0.0], 0.0);
        let mono = Tomogram::from_probabilities(vec![0.5, 0.5], vec![2]).unwrap();
        assert!(matches!(marginals(&mono), Err(Error::NotBipartite { .. })));
    }

    #[test]
    fn via_eigen_at_inverse_diagonalizer_is_spectrum() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.65, 0.0), c(-0.2, 0.35)], vec![c(-0.2, -0.35), c(0.35, 0.0)]])
            .unwrap();
        let rho = DensityMatrix::new(m, vec![]).unwrap();
        let d = rho.decomposition();
        let u = d.diagonalizer().adjoint();
        assert_probs(&tomogram_via_eigen(d, &u).unwrap(), d.eigenvalues(), 1e-15);
        assert_probs(&unitary_tomogram(&rho, &u).unwrap(), d.eigenvalues(), 1e-15);
    }

    #[test]
    fn dimension_errors() {
        let rho = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        assert!(unitary_tomogram(&rho, &UnitaryMatrix::identity(2)).is_err());
        assert!(spin_tomogram(&rho, Direction::z()).is_err());
        let q = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        assert!(bipartite_spin_tomogram(&q, Direction::z(), Direction::z()).is_err());
        assert!(tomogram_via_eigen(rho.decomposition(), &UnitaryMatrix::identity(2)).is_err());
    }

    #[test]
    fn direction_ranges() {
        assert!(Direction::new(-0.1, 0.0).is_err());
        assert!(Direction::new(0.0, 2.0 * PI).is_err());
        assert!(Direction::new(PI, 0.0).is_ok());
        let w = Direction::wrapped(-0.5, 0.0).unwrap();
        assert!((w.theta() - 0.5).abs() < 1e-15 && (w.phi() - PI).abs() < 1e-15);
    }

    #[test]
    fn tolerant_state_clamps_noise() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0 + 1e-11, -1e-11]);
        let rho = DensityMatrix::with_tolerances(m, vec![], &Tolerances::USER).unwrap();
        let t = unitary_tomogram(&rho, &UnitaryMatrix::identity(2)).unwrap();
        assert_eq!(t.probabilities(), &[1.0, 0.0]);
    }
}
