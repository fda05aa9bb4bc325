use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest total Hilbert-space dimension accepted by default.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Ordered subsystem dimensions of a composite Hilbert space.
///
/// Subsystem 0 is the most significant factor of the Kronecker ordering, so a
/// basis index `i` decomposes as `i = sum_k digit_k * stride_k` with
/// `stride_k` the product of the dimensions after `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Dims(Vec<usize>);

impl Dims {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        Self::with_limit(dims, DEFAULT_MAX_DIM)
    }

    pub fn with_limit(dims: impl Into<Vec<usize>>, max_total: usize) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() {
            return Err(Error::InvalidDims {
                dims,
                reason: "at least one subsystem is required",
            });
        }
        if dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidDims {
                dims,
                reason: "every subsystem dimension must be at least 2",
            });
        }
        let mut total = 1usize;
        for &d in &dims {
            total = match total.checked_mul(d) {
                Some(t) if t <= max_total => t,
                _ => {
                    return Err(Error::DimensionOverflow {
                        total: dims.iter().fold(1usize, |a, &b| a.saturating_mul(b)),
                        max: max_total,
                    })
                }
            };
        }
        Ok(Dims(dims))
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Self {
        Dims::new(vec![2; n.max(1)]).expect("qubit register within the default cap")
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn dim(&self, subsystem: usize) -> Result<usize> {
        self.0.get(subsystem).copied().ok_or(Error::InvalidSubsystemIndex {
            index: subsystem,
            count: self.0.len(),
        })
    }

    /// Concatenation `self ⊗ other`, checked against `max_total`.
    pub fn concat(&self, other: &Dims, max_total: usize) -> Result<Dims> {
        let mut dims = self.0.clone();
        dims.extend_from_slice(&other.0);
        Dims::with_limit(dims, max_total)
    }

    /// Dimensions of the listed subsystems, in the listed order.
    pub fn select(&self, subsystems: &[usize]) -> Result<Dims> {
        let mut out = Vec::with_capacity(subsystems.len());
        for &s in subsystems {
            out.push(self.dim(s)?);
        }
        Dims::with_limit(out, usize::MAX)
    }

    pub(crate) fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for k in (0..self.0.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.0[k + 1];
        }
        strides
    }

    /// Validates a set of subsystem indices and returns it sorted.
    pub(crate) fn check_subset(&self, subsystems: &[usize]) -> Result<Vec<usize>> {
        let mut sorted = subsystems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&s| s >= self.0.len()) {
            return Err(Error::InvalidSubsystemIndex {
                index: bad,
                count: self.0.len(),
            });
        }
        Ok(sorted)
    }
}

impl TryFrom<Vec<usize>> for Dims {
    type Error = Error;

    fn try_from(value: Vec<usize>) -> Result<Self> {
        Dims::new(value)
    }
}

impl From<Dims> for Vec<usize> {
    fn from(d: Dims) -> Self {
        d.0
    }
}

impl std::fmt::Display for Dims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(Dims::new(vec![]), Err(Error::InvalidDims { .. })));
        assert!(matches!(Dims::new(vec![2, 1]), Err(Error::InvalidDims { .. })));
        assert!(matches!(
            Dims::new(vec![64, 65]),
            Err(Error::DimensionOverflow { total: 4160, max: 4096 })
        ));
    }

    #[test]
    fn strides_follow_kronecker_order() {
        let d = Dims::new(vec![2, 3, 4]).unwrap();
        assert_eq!(d.strides(), vec![12, 4, 1]);
        assert_eq!(d.total(), 24);
        assert_eq!(d.select(&[2, 0]).unwrap().as_slice(), &[4, 2]);
    }
}
