//! Dense complex linear algebra for small quantum states.

mod eigen;
mod matrix;
mod state;

pub use eigen::{
    eigendecompose, eigendecompose_with_tolerance, EigenDecomposition, CONVERGENCE_TOL,
    DEGENERACY_TOL, MAX_SWEEPS, PHASE_TOL,
};
pub use matrix::{Complex, ComplexMatrix};
pub use state::{
    partial_trace, DensityMatrix, Diagnostics, Spectrum, Tolerances, UnitaryMatrix,
    CLAMP_REPORT_THRESHOLD,
};

use crate::error::Result;

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}
