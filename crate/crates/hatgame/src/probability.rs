//! Per-color probability vectors.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One probability per color index, validated to be nonnegative and to sum
/// to 1 (within the scalar's tolerance; exactly for rationals).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector<T: Scalar> {
    entries: Vec<T>,
}

impl<T: Scalar> ProbabilityVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ProbabilityCount {
                expected: 1,
                got: 0,
            });
        }
        for (index, e) in entries.iter().enumerate() {
            if *e < T::zero() {
                return Err(Error::NegativeProbability { index });
            }
        }
        let sum = entries.iter().fold(T::zero(), |acc, e| acc + e.clone());
        if (sum.clone() - T::one()).abs() > T::tie_tolerance() {
            return Err(Error::UnnormalizedProbabilities {
                sum: sum.to_string(),
            });
        }
        Ok(ProbabilityVector { entries })
    }

    /// The uniform distribution over `colors` colors, exact by construction.
    pub fn uniform(colors: usize) -> Self {
        ProbabilityVector {
            entries: vec![T::ratio(1, colors as i64); colors],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, color: usize) -> &T {
        &self.entries[color]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(Scalar::to_f64).collect()
    }

    pub(crate) fn check_colors(&self, colors: usize) -> Result<()> {
        if self.entries.len() != colors {
            return Err(Error::ProbabilityCount {
                expected: colors,
                got: self.entries.len(),
            });
        }
        Ok(())
    }
}

impl ProbabilityVector<f64> {
    pub fn from_slice(probs: &[f64]) -> Result<Self> {
        Self::new(probs.to_vec())
    }
}
