//! Shannon and von Neumann entropies and the two mutual informations.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, UnitaryMatrix};
use crate::tomography::{marginals, unitary_tomogram, PROB_TOL};

/// Probabilities below this are treated as exact zeros (`0·log 0 = 0`).
pub const ZERO_PROB: f64 = 1e-15;
/// Allowed deviation of a probability vector's sum from one.
pub const SUM_TOL: f64 = 1e-6;

/// Logarithm base shared by every entropy in a computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBase(f64);

impl LogBase {
    pub const BITS: Self = Self(2.0);
    pub const NATS: Self = Self(std::f64::consts::E);

    pub fn new(base: f64) -> Result<Self> {
        if !base.is_finite() || base <= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "log base must be a finite real > 1, got {base}"
            )));
        }
        Ok(Self(base))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    fn ln(self) -> f64 {
        self.0.ln()
    }
}

impl Default for LogBase {
    fn default() -> Self {
        Self::BITS
    }
}

impl FromStr for LogBase {
    type Err = Error;

    /// Accepts a number or `e`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "e" | "E" => Ok(Self::NATS),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("cannot parse log base {other:?}")))
                .and_then(Self::new),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::NATS {
            write!(f, "e")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for LogBase {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyValue {
    pub value: f64,
    pub base: LogBase,
}

/// `−Σ p log p` in the given base.
pub fn shannon_entropy(p: &[f64], base: LogBase) -> Result<EntropyValue> {
    if p.is_empty() {
        return Err(Error::InvalidProbability("empty vector".into()));
    }
    if let Some(x) = p.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidProbability(format!("non-finite entry {x}")));
    }
    if let Some(x) = p.iter().find(|&&x| x < -PROB_TOL) {
        return Err(Error::InvalidProbability(format!("negative entry {x:e}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidProbability(format!("entries sum to {total}")));
    }
    let nats: f64 = p
        .iter()
        .filter(|&&x| x > ZERO_PROB)
        .map(|&x| -x * x.ln())
        .sum();
    Ok(EntropyValue {
        value: nats / base.ln(),
        base,
    })
}

/// `S = −Tr ρ log ρ`, evaluated on the clamped and renormalized spectrum.
pub fn von_neumann_entropy(rho: &DensityMatrix, base: LogBase) -> Result<EntropyValue> {
    shannon_entropy(&rho.spectrum().values, base)
}

/// `I(1,2) = S₁ + S₂ − S₁₂`.
pub fn vn_mutual_information(rho: &DensityMatrix, base: LogBase) -> Result<EntropyValue> {
    let s1 = von_neumann_entropy(&rho.partial_trace(1)?, base)?.value;
    let s2 = von_neumann_entropy(&rho.partial_trace(2)?, base)?.value;
    let s12 = von_neumann_entropy(rho, base)?.value;
    Ok(EntropyValue {
        value: s1 + s2 - s12,
        base,
    })
}

/// Shannon entropies of a joint tomogram at `u₁⊗u₂` and of its marginals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomographicEntropies {
    pub h1: f64,
    pub h2: f64,
    pub h12: f64,
    pub base: LogBase,
}

impl TomographicEntropies {
    /// `𝓘 = H₁ + H₂ − H₁₂`.
    pub fn mutual_information(&self) -> f64 {
        self.h1 + self.h2 - self.h12
    }
}

pub fn tomographic_entropies(
    rho: &DensityMatrix,
    u1: &UnitaryMatrix,
    u2: &UnitaryMatrix,
    base: LogBase,
) -> Result<TomographicEntropies> {
    let (d1, d2) = rho.bipartite_dims()?;
    if u1.dim() != d1 || u2.dim() != d2 {
        return Err(Error::DimensionMismatch {
            expected: format!("local unitaries of dims {d1} and {d2}"),
            found: format!("{} and {}", u1.dim(), u2.dim()),
        });
    }
    let joint = unitary_tomogram(rho, &u1.kron(u2))?;
    let (m1, m2) = marginals(&joint)?;
    Ok(TomographicEntropies {
        h1: shannon_entropy(m1.probabilities(), base)?.value,
        h2: shannon_entropy(m2.probabilities(), base)?.value,
        h12: shannon_entropy(joint.probabilities(), base)?.value,
        base,
    })
}

/// `𝓘(u₁⊗u₂) = H₁ + H₂ − H₁₂` of the joint tomogram.
pub fn tomographic_mutual_information(
    rho: &DensityMatrix,
    u1: &UnitaryMatrix,
    u2: &UnitaryMatrix,
    base: LogBase,
) -> Result<EntropyValue> {
    let h = tomographic_entropies(rho, u1, u2, base)?;
    Ok(EntropyValue {
        value: h.mutual_information(),
        base,
    })
}
