use super::eigen::{eigendecompose_with_tolerance, EigenDecomposition};
use super::matrix::{Complex, ComplexMatrix};
use crate::error::{Error, Result};

/// Validation tolerances for density matrices and unitaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub psd: f64,
    pub unitary: f64,
}

impl Tolerances {
    /// Programmatic user input.
    pub const USER: Self = Self::uniform(1e-8);
    /// Hand-edited or experimental state files.
    pub const FILE: Self = Self::uniform(1e-6);
    /// Generated states.
    pub const STRICT: Self = Self::uniform(1e-12);

    pub const fn uniform(eps: f64) -> Self {
        Self {
            hermitian: eps,
            trace: eps,
            psd: eps,
            unitary: eps,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::USER
    }
}

/// Negative eigenvalues below this are reported as repaired noise.
pub const CLAMP_REPORT_THRESHOLD: f64 = 1e-12;

/// Raw quality figures for a candidate density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub hermiticity_residual: f64,
    pub trace_deviation: f64,
    /// Minimum eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
}

impl Diagnostics {
    pub fn of(matrix: &ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                found: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        let hermiticity_residual = matrix.hermiticity_residual();
        let trace_deviation = (matrix.trace() - Complex::new(1.0, 0.0)).norm();
        let decomp = eigendecompose_with_tolerance(matrix, f64::INFINITY)?;
        let min_eigenvalue = decomp.eigenvalues().last().copied().unwrap_or(0.0);
        Ok(Self {
            hermiticity_residual,
            trace_deviation,
            min_eigenvalue,
        })
    }

    pub fn check(&self, tol: &Tolerances) -> Result<()> {
        if self.hermiticity_residual > tol.hermitian {
            return Err(Error::NotHermitian {
                residual: self.hermiticity_residual,
            });
        }
        if self.trace_deviation > tol.trace {
            return Err(Error::TraceDeviation {
                deviation: self.trace_deviation,
            });
        }
        if self.min_eigenvalue < -tol.psd {
            return Err(Error::NotPositive {
                min_eigenvalue: self.min_eigenvalue,
            });
        }
        Ok(())
    }
}

/// Eigenvalue spectrum with float-noise negatives clamped and the total
/// renormalized to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub clamped: bool,
}

/// Hermitian, unit-trace, positive-semidefinite matrix with declared
/// subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    subsystem_dims: Vec<usize>,
    decomposition: EigenDecomposition,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Result<Self> {
        Self::with_tolerances(matrix, subsystem_dims, &Tolerances::USER)
    }

    pub fn with_tolerances(
        matrix: ComplexMatrix,
        subsystem_dims: Vec<usize>,
        tol: &Tolerances,
    ) -> Result<Self> {
        check_subsystem_dims(&matrix, &subsystem_dims)?;
        let diagnostics = Diagnostics::of(&matrix)?;
        diagnostics.check(tol)?;
        let decomposition = eigendecompose_with_tolerance(&matrix, tol.hermitian)?;
        Ok(Self {
            matrix,
            subsystem_dims,
            decomposition,
        })
    }

    /// Two-qubit state with subsystem dims `[2, 2]`.
    pub fn two_qubit(matrix: ComplexMatrix) -> Result<Self> {
        Self::new(matrix, vec![2, 2])
    }

    /// Pure state `|ψ⟩⟨ψ|` of a normalized vector.
    pub fn pure(psi: &[Complex], subsystem_dims: Vec<usize>) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi, psi), subsystem_dims)
    }

    /// Maximally mixed state `I/k`.
    pub fn maximally_mixed(subsystem_dims: Vec<usize>) -> Result<Self> {
        let k: usize = subsystem_dims.iter().product();
        let m = ComplexMatrix::identity(k).scale(Complex::new(1.0 / k as f64, 0.0));
        Self::with_tolerances(m, subsystem_dims, &Tolerances::STRICT)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    /// Outcome dims used for tomograms: the subsystem dims, or `[k]` for a
    /// monopartite state.
    pub fn outcome_dims(&self) -> Vec<usize> {
        if self.subsystem_dims.is_empty() {
            vec![self.dim()]
        } else {
            self.subsystem_dims.clone()
        }
    }

    pub fn decomposition(&self) -> &EigenDecomposition {
        &self.decomposition
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.decomposition.eigenvalues()
    }

    pub fn spectrum(&self) -> Spectrum {
        let raw = self.decomposition.eigenvalues();
        let clamped = raw.iter().any(|&x| x < -CLAMP_REPORT_THRESHOLD);
        let mut values: Vec<f64> = raw.iter().map(|&x| x.max(0.0)).collect();
        let total: f64 = values.iter().sum();
        if total > 0.0 {
            values.iter_mut().for_each(|x| *x /= total);
        }
        Spectrum { values, clamped }
    }

    /// `(v₁⊗v₂) ρ (v₁⊗v₂)†`-style conjugation `v ρ v†` by any unitary.
    pub fn conjugate(&self, v: &UnitaryMatrix) -> Result<Self> {
        let m = v.as_matrix().matmul(&self.matrix)?.matmul(&v.adjoint().matrix)?;
        Self::with_tolerances(m, self.subsystem_dims.clone(), &Tolerances::USER)
    }

    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.subsystem_dims.as_slice() {
            &[a, b] => Ok((a, b)),
            dims => Err(Error::NotBipartite { dims: dims.to_vec() }),
        }
    }

    /// Reduced state of subsystem `keep` (1-based).
    pub fn partial_trace(&self, keep: usize) -> Result<DensityMatrix> {
        let (d1, d2) = self.bipartite_dims()?;
        let kept = match keep {
            1 => d1,
            2 => d2,
            index => return Err(Error::InvalidSubsystem { index }),
        };
        let traced = if keep == 1 { d2 } else { d1 };
        let mut out = ComplexMatrix::zeros(kept, kept);
        for i in 0..kept {
            for j in 0..kept {
                let mut sum = Complex::new(0.0, 0.0);
                for k in 0..traced {
                    sum += if keep == 1 {
                        self.matrix[(i * d2 + k, j * d2 + k)]
                    } else {
                        self.matrix[(k * d2 + i, k * d2 + j)]
                    };
                }
                out[(i, j)] = sum;
            }
        }
        // The partial trace of a valid state is valid; only the noise floor
        // scales with the traced dimension.
        let decomposition = eigendecompose_with_tolerance(&out, f64::INFINITY)?;
        Ok(DensityMatrix {
            matrix: out,
            subsystem_dims: vec![kept],
            decomposition,
        })
    }
}

/// Free-function form of [`DensityMatrix::partial_trace`].
pub fn partial_trace(rho: &DensityMatrix, keep: usize) -> Result<DensityMatrix> {
    rho.partial_trace(keep)
}

fn check_subsystem_dims(matrix: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    if !matrix.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", matrix.rows(), matrix.cols()),
        });
    }
    if !dims.is_empty() && (dims.contains(&0) || dims.iter().product::<usize>() != matrix.rows()) {
        return Err(Error::InvalidSubsystemDims {
            dims: dims.to_vec(),
            dim: matrix.rows(),
        });
    }
    Ok(())
}

/// Square matrix with `u†u = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    matrix: ComplexMatrix,
}

impl UnitaryMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, Tolerances::USER.unitary)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, eps: f64) -> Result<Self> {
        let residual = matrix.unitarity_residual();
        if residual > eps {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { matrix })
    }

    /// For matrices unitary by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.unitarity_residual() < 1e-8);
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.matmul(&other.matrix)?,
        })
    }
}
