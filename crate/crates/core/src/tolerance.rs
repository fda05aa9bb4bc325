use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances used by validation and by every law check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub tol_herm: f64,
    pub tol_trace: f64,
    pub tol_psd: f64,
    pub tol_norm: f64,
    pub tol_ortho: f64,
    pub tol_identity: f64,
    pub tol_ineq_slack: f64,
    /// Eigenvalues at or below this contribute nothing to an entropy.
    pub eig_zero_floor: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        tol_herm: 1e-10,
        tol_trace: 1e-10,
        tol_psd: 1e-9,
        tol_norm: 1e-10,
        tol_ortho: 1e-10,
        tol_identity: 1e-10,
        tol_ineq_slack: 1e-9,
        eig_zero_floor: 1e-12,
    };

    pub const KEYS: [&'static str; 8] = [
        "tol_herm",
        "tol_trace",
        "tol_psd",
        "tol_norm",
        "tol_ortho",
        "tol_identity",
        "tol_ineq_slack",
        "eig_zero_floor",
    ];

    pub fn validate(&self) -> Result<()> {
        for key in Self::KEYS {
            let v = self.get(key).expect("known key");
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: key,
                    reason: format!("must be a finite nonnegative number, got {v}"),
                });
            }
        }
        if self.eig_zero_floor > self.tol_psd {
            return Err(Error::InvalidParameter {
                name: "eig_zero_floor",
                reason: format!("must not exceed tol_psd ({} > {})", self.eig_zero_floor, self.tol_psd),
            });
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        Some(match key {
            "tol_herm" => self.tol_herm,
            "tol_trace" => self.tol_trace,
            "tol_psd" => self.tol_psd,
            "tol_norm" => self.tol_norm,
            "tol_ortho" => self.tol_ortho,
            "tol_identity" => self.tol_identity,
            "tol_ineq_slack" => self.tol_ineq_slack,
            "eig_zero_floor" => self.eig_zero_floor,
            _ => return None,
        })
    }

    /// Overrides one field by name. Does not re-validate the whole set.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = match key {
            "tol_herm" => &mut self.tol_herm,
            "tol_trace" => &mut self.tol_trace,
            "tol_psd" => &mut self.tol_psd,
            "tol_norm" => &mut self.tol_norm,
            "tol_ortho" => &mut self.tol_ortho,
            "tol_identity" => &mut self.tol_identity,
            "tol_ineq_slack" => &mut self.tol_ineq_slack,
            "eig_zero_floor" => &mut self.eig_zero_floor,
            _ => {
                return Err(Error::InvalidParameter {
                    name: "tolerance",
                    reason: format!("unknown tolerance key `{key}`"),
                })
            }
        };
        *slot = value;
        Ok(())
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
