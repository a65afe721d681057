//! Tomographic discord of two-qubit states.
//!
//! `D = I(1,2) − 𝓘(u₁₀†⊗u₂₀†) = H₁₂(u₁₀†⊗u₂₀†) − S₁₂`, where `u₁₀†` and
//! `u₂₀†` diagonalize the reduced states. Three routes are provided: the
//! generic eigendecomposition pipeline, the closed form for X states, and a
//! numerical minimum of `H₁₂` over all local measurement axes.

mod optimize;
mod xstate;

use serde::Serialize;

pub use optimize::{OptimizedDiscord, OptimizerConfig};
pub use xstate::{is_x_structured, XStateParams, X_STRUCTURE_TOL};

use crate::entropy::{shannon_entropy, tomographic_entropies, von_neumann_entropy, LogBase};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, UnitaryMatrix, CLAMP_REPORT_THRESHOLD};
use optimize::{bloch_angles, minimize_joint_entropy, JointEntropy};

/// Maximum allowed gap between `I − 𝓘` and `H₁₂ − S₁₂`.
pub const CONSISTENCY_TOL: f64 = 1e-10;

/// Entropies, mutual informations and discord of one state, all in `base`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscordReport {
    pub base: LogBase,
    pub s1: f64,
    pub s2: f64,
    pub s12: f64,
    pub h1: f64,
    pub h2: f64,
    pub h12: f64,
    /// `I(1,2) = S₁ + S₂ − S₁₂`.
    pub vn_mutual: f64,
    /// `𝓘 = H₁ + H₂ − H₁₂` at the marginal diagonalizers.
    pub tomo_mutual: f64,
    /// `H₁₂ − S₁₂`.
    pub discord: f64,
    /// Some eigenvalue below `-CLAMP_REPORT_THRESHOLD` was clamped to zero.
    pub clamped_eigenvalues: bool,
    /// A marginal spectrum is degenerate and the state is not an X state, so
    /// `discord` depends on the tie-broken eigenbasis.
    pub degenerate_marginal: bool,
    pub optimized: Option<OptimizedDiscord>,
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.subsystem_dims() != [2, 2] {
        return Err(Error::DimensionMismatch {
            expected: "two-qubit state with subsystem dims [2, 2]".into(),
            found: format!("dimension {} with subsystem dims {:?}", rho.dim(), rho.subsystem_dims()),
        });
    }
    Ok(())
}

/// `(u₁₀†, u₂₀†)`: measuring in these bases gives the marginal spectra.
pub fn diagonalizing_local_unitaries(rho: &DensityMatrix) -> Result<(UnitaryMatrix, UnitaryMatrix)> {
    require_two_qubits(rho)?;
    let u1 = rho.partial_trace(1)?.decomposition().eigenvectors();
    let u2 = rho.partial_trace(2)?.decomposition().eigenvectors();
    Ok((u1, u2))
}

/// Discord at the marginal diagonalizers, checked against both algebraic
/// forms.
pub fn tomographic_discord(rho: &DensityMatrix, base: LogBase) -> Result<DiscordReport> {
    require_two_qubits(rho)?;
    let rho1 = rho.partial_trace(1)?;
    let rho2 = rho.partial_trace(2)?;
    let u1 = rho1.decomposition().eigenvectors();
    let u2 = rho2.decomposition().eigenvectors();

    let s1 = von_neumann_entropy(&rho1, base)?.value;
    let s2 = von_neumann_entropy(&rho2, base)?.value;
    let s12 = von_neumann_entropy(rho, base)?.value;
    let h = tomographic_entropies(rho, &u1, &u2, base)?;

    let vn_mutual = s1 + s2 - s12;
    let tomo_mutual = h.mutual_information();
    let discord = h.h12 - s12;
    let gap = (vn_mutual - tomo_mutual - discord).abs();
    if gap > CONSISTENCY_TOL {
        return Err(Error::Inconsistent(format!(
            "I - Itomo and H12 - S12 differ by {gap:e}"
        )));
    }

    let degenerate = rho1.decomposition().is_degenerate() || rho2.decomposition().is_degenerate();
    Ok(DiscordReport {
        base,
        s1,
        s2,
        s12,
        h1: h.h1,
        h2: h.h2,
        h12: h.h12,
        vn_mutual,
        tomo_mutual,
        discord,
        clamped_eigenvalues: rho.spectrum().clamped || rho1.spectrum().clamped || rho2.spectrum().clamped,
        degenerate_marginal: degenerate && !is_x_structured(rho.matrix(), X_STRUCTURE_TOL),
        optimized: None,
    })
}

/// Closed-form discord of an X state: `−Σ ρ_kk log ρ_kk + Σ λ_k log λ_k`.
pub fn xstate_discord(x: &XStateParams, base: LogBase) -> Result<DiscordReport> {
    let raw = x.eigenvalues();
    let clamped = raw.iter().any(|&l| l < -CLAMP_REPORT_THRESHOLD);
    let lambdas: Vec<f64> = raw.iter().map(|&l| l.max(0.0)).collect();
    let diagonal: Vec<f64> = x.diagonal().iter().map(|&d| d.max(0.0)).collect();
    let (m1, m2) = x.marginal_diagonals();

    let s1 = shannon_entropy(&m1, base)?.value;
    let s2 = shannon_entropy(&m2, base)?.value;
    let s12 = shannon_entropy(&lambdas, base)?.value;
    let h12 = shannon_entropy(&diagonal, base)?.value;
    Ok(DiscordReport {
        base,
        s1,
        s2,
        s12,
        h1: s1,
        h2: s2,
        h12,
        vn_mutual: s1 + s2 - s12,
        tomo_mutual: s1 + s2 - h12,
        discord: h12 - s12,
        clamped_eigenvalues: clamped,
        degenerate_marginal: false,
        optimized: None,
    })
}

/// [`tomographic_discord`] plus the minimum of `H₁₂(u₁⊗u₂) − S₁₂` over all
/// local measurement axes.
pub fn optimized_discord(rho: &DensityMatrix, base: LogBase, config: &OptimizerConfig) -> Result<DiscordReport> {
    config.validate()?;
    let mut report = tomographic_discord(rho, base)?;

    let v1 = rho.partial_trace(1)?.decomposition().eigenvector(0);
    let v2 = rho.partial_trace(2)?.decomposition().eigenvector(0);
    let (t1, p1) = bloch_angles(&v1);
    let (t2, p2) = bloch_angles(&v2);

    let objective = JointEntropy::new(rho, base);
    let (h12_min, argmin_angles, evaluations) = minimize_joint_entropy(&objective, [t1, p1, t2, p2], config)?;
    report.optimized = Some(OptimizedDiscord {
        discord_opt: h12_min - report.s12,
        argmin_angles,
        evaluations,
    });
    Ok(report)
}
