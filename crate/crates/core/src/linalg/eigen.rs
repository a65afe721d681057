//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! The result follows the `ρ = u₀† · diag(λ) · u₀` convention: the columns of
//! `u₀†` are the normalized eigenvectors, eigenvalues are sorted descending and
//! every eigenvector carries a fixed phase so the output is reproducible.

use std::cmp::Ordering;

use super::matrix::{Complex, ComplexMatrix};
use super::state::{Tolerances, UnitaryMatrix};
use crate::error::{Error, Result};

/// Convergence threshold on the off-diagonal Frobenius mass (relative to
/// `max(1, ‖h‖_F)`).
pub const CONVERGENCE_TOL: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 100;
/// Components below this modulus are skipped when fixing eigenvector phases.
pub const PHASE_TOL: f64 = 1e-12;
/// Eigenvalues closer than this (relative) are treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    diagonalizer: UnitaryMatrix,
}

impl EigenDecomposition {
    /// Eigenvalues λ₁ ≥ λ₂ ≥ … ≥ λ_k.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// The unitary `u₀` with `ρ = u₀† diag(λ) u₀`.
    pub fn diagonalizer(&self) -> &UnitaryMatrix {
        &self.diagonalizer
    }

    /// `u₀†`, whose k-th column is the eigenvector for λ_k.
    pub fn eigenvectors(&self) -> UnitaryMatrix {
        self.diagonalizer.adjoint()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex> {
        self.diagonalizer.as_matrix().row(k).iter().map(|z| z.conj()).collect()
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `u₀† diag(λ) u₀`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let u0 = self.diagonalizer.as_matrix();
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            for i in 0..n {
                let left = u0[(k, i)].conj() * lambda;
                for j in 0..n {
                    out[(i, j)] += left * u0[(k, j)];
                }
            }
        }
        out
    }

    /// True when two eigenvalues coincide within [`DEGENERACY_TOL`].
    pub fn is_degenerate(&self) -> bool {
        let scale = self.scale();
        self.eigenvalues
            .windows(2)
            .any(|w| (w[0] - w[1]).abs() <= DEGENERACY_TOL * scale)
    }

    fn scale(&self) -> f64 {
        self.eigenvalues.iter().fold(1.0_f64, |m, x| m.max(x.abs()))
    }
}

/// Diagonalizes a Hermitian matrix (Hermiticity checked at the user-input
/// tolerance).
pub fn eigendecompose(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    eigendecompose_with_tolerance(h, Tolerances::USER.hermitian)
}

pub fn eigendecompose_with_tolerance(h: &ComplexMatrix, herm_tol: f64) -> Result<EigenDecomposition> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", h.rows(), h.cols()),
        });
    }
    let residual = h.hermiticity_residual();
    if residual > herm_tol {
        return Err(Error::NotHermitian { residual });
    }

    let n = h.rows();
    let mut a = hermitian_part(h);
    let mut v = ComplexMatrix::identity(n);
    let threshold = CONVERGENCE_TOL * a.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&a);
        if off >= threshold {
            return Err(Error::NotConverged {
                sweeps: MAX_SWEEPS,
                off_diagonal: off,
            });
        }
    }

    let values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let vectors: Vec<Vec<Complex>> = (0..n).map(|j| fix_phase(v.column(j))).collect();
    let order = sorted_order(&values, &vectors);

    let mut u0 = ComplexMatrix::zeros(n, n);
    for (row, &idx) in order.iter().enumerate() {
        for (col, z) in vectors[idx].iter().enumerate() {
            u0[(row, col)] = z.conj();
        }
    }
    Ok(EigenDecomposition {
        eigenvalues: order.iter().map(|&i| values[i]).collect(),
        diagonalizer: UnitaryMatrix::from_trusted(u0),
    })
}

fn hermitian_part(h: &ComplexMatrix) -> ComplexMatrix {
    let n = h.rows();
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = Complex::new(h[(i, i)].re, 0.0);
        for j in i + 1..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    a
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation zeroing `a[p][q]`: `a ← J† a J`, `v ← v J`, where
/// `J = diag(1, e^{-iα}) · [[c, s], [-s, c]]` on the (p, q) plane and
/// `a[p][q] = |a[p][q]| e^{iα}`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase_conj = (apq / r).conj();
    let zeta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let j_pp = Complex::new(c, 0.0);
    let j_pq = Complex::new(s, 0.0);
    let j_qp = phase_conj * -s;
    let j_qq = phase_conj * c;

    let n = a.rows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = Complex::new(0.0, 0.0);
    a[(q, p)] = Complex::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

/// Rescales the vector so its first component with modulus above
/// [`PHASE_TOL`] is real and positive.
fn fix_phase(mut vec: Vec<Complex>) -> Vec<Complex> {
    if let Some(lead) = vec.iter().copied().find(|z| z.norm() > PHASE_TOL) {
        let rot = lead.conj() / lead.norm();
        for z in vec.iter_mut() {
            *z *= rot;
        }
    }
    vec
}

/// Descending eigenvalues; runs of degenerate eigenvalues ordered by
/// descending lexicographic comparison of their eigenvectors.
fn sorted_order(values: &[f64], vectors: &[Vec<Complex>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));

    let scale = values.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len()
            && (values[order[end - 1]] - values[order[end]]).abs() <= DEGENERACY_TOL * scale
        {
            end += 1;
        }
        order[start..end].sort_by(|&i, &j| lexicographic(&vectors[j], &vectors[i]));
        start = end;
    }
    order
}

fn lexicographic(a: &[Complex], b: &[Complex]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        for (u, w) in [(x.re, y.re), (x.im, y.im)] {
            if (u - w).abs() > PHASE_TOL {
                return u.total_cmp(&w);
            }
        }
    }
    Ordering::Equal
}
