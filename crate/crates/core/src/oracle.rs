//! Closed-form coupling and self-Kerr estimates (all energies in GHz).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Typical `φ_ZPF²` of a transmon, used by the corrected quarton limit.
pub const TYPICAL_PHI_ZPF_SQUARED: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleInputs<T> {
    pub e_ca: T,
    pub e_cb: T,
    pub e_ja: T,
    pub e_jb: T,
    pub e_q: T,
    /// Zero for an untilted quarton.
    pub e_q_tilt: T,
}

impl<T: Real> OracleInputs<T> {
    pub fn new(e_ca: T, e_cb: T, e_ja: T, e_jb: T, e_q: T) -> Self {
        Self {
            e_ca,
            e_cb,
            e_ja,
            e_jb,
            e_q,
            e_q_tilt: T::zero(),
        }
    }

    pub fn with_tilt(self, e_q_tilt: T) -> Self {
        Self { e_q_tilt, ..self }
    }

    pub fn with_e_q(self, e_q: T) -> Self {
        Self { e_q, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("e_ca", self.e_ca),
            ("e_cb", self.e_cb),
            ("e_ja", self.e_ja),
            ("e_jb", self.e_jb),
            ("e_q", self.e_q),
            ("e_q_tilt", self.e_q_tilt),
        ];
        for (name, v) in fields {
            if !(v >= T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite and non-negative, got {v}"),
                });
            }
        }
        Ok(())
    }

    fn prefactor(&self) -> T {
        lit::<T>(2.0) * (self.e_ca * self.e_cb).sqrt()
    }
}

/// Linear-coupler (C-shunt SQUID) cross-Kerr; saturates at `2√(E_ca E_cb)`.
pub fn g_nonquarton<T: Real>(i: &OracleInputs<T>) -> T {
    i.prefactor() * i.e_q / ((i.e_q + i.e_ja) * (i.e_q + i.e_jb)).sqrt()
}

/// Ideal quarton cross-Kerr, linear in `E_Q`.
pub fn g_quarton<T: Real>(i: &OracleInputs<T>) -> T {
    i.prefactor() * i.e_q / (i.e_ja * i.e_jb).sqrt()
}

/// Quarton cross-Kerr including the second-order stiffening
/// `E_J → E_J + φ_ZPF² E_Q`; bounded by `20√(E_ca E_cb)`.
pub fn g_quarton_corrected<T: Real>(i: &OracleInputs<T>) -> T {
    let k = lit::<T>(TYPICAL_PHI_ZPF_SQUARED);
    i.prefactor() * i.e_q / ((i.e_ja + k * i.e_q) * (i.e_jb + k * i.e_q)).sqrt()
}

pub fn g_tilted<T: Real>(i: &OracleInputs<T>) -> T {
    i.prefactor() * i.e_q / ((i.e_ja + i.e_q_tilt) * (i.e_jb + i.e_q_tilt)).sqrt()
}

/// Self-Kerr of a transmon coupled through a (tilted) quarton.
pub fn self_kerr<T: Real>(e_c: T, e_j: T, e_q: T, e_q_tilt: T) -> Result<T> {
    let denom = e_j + e_q_tilt;
    if !(denom > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "e_j",
            reason: format!("E_J + E_Q,tilt must be positive, got {denom}"),
        });
    }
    Ok(e_c * (e_q - e_j) / denom)
}
