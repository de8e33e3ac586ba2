//! Unit conversions between circuit values and energies.
//!
//! Energies are frequencies `E/h` in GHz. Capacitances are in fF and
//! inductances in nH. All values derive from the exact SI definitions of
//! `e` and `h`.

use std::f64::consts::PI;

use crate::scalar::{lit, Real};

/// Elementary charge in C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Planck constant in J s.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant in J s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);
/// Reduced flux quantum `ħ/2e` in Wb.
pub const REDUCED_FLUX_QUANTUM: f64 = HBAR / (2.0 * ELEMENTARY_CHARGE);

/// `e²/(2h)` for a 1 fF capacitor, in GHz. `E_C = CHARGING_GHZ_FF / C[fF]`.
pub const CHARGING_GHZ_FF: f64 = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (2.0 * 1e-15 * PLANCK) / 1e9;

/// `φ₀²/h` for a 1 nH inductor, in GHz. `E_L = INDUCTIVE_GHZ_NH / L[nH]`.
pub const INDUCTIVE_GHZ_NH: f64 = REDUCED_FLUX_QUANTUM * REDUCED_FLUX_QUANTUM / (1e-9 * PLANCK) / 1e9;

/// Charging energy `e²/2C` in GHz for a capacitance in fF.
pub fn charging_energy<T: Real>(c_ff: T) -> T {
    lit::<T>(CHARGING_GHZ_FF) / c_ff
}

/// Inductive energy `φ₀²/L` in GHz for an inductance in nH.
pub fn inductive_energy<T: Real>(l_nh: T) -> T {
    lit::<T>(INDUCTIVE_GHZ_NH) / l_nh
}

/// Inductance in nH whose inductive energy `φ₀²/L` equals `e_ghz`.
pub fn inductance_from_energy<T: Real>(e_ghz: T) -> T {
    lit::<T>(INDUCTIVE_GHZ_NH) / e_ghz
}

/// Linear frequency `1/(2π√(LC))` in GHz.
pub fn lc_frequency<T: Real>(l_nh: T, c_ff: T) -> T {
    // ω² = 1/(L C) with L C in nH·fF = 1e-24 s²
    let omega = T::one() / (l_nh * c_ff).sqrt() * lit::<T>(1e12);
    omega / lit::<T>(2.0 * PI * 1e9)
}

/// Inductance in nH that resonates with `c_ff` at `f_ghz`.
pub fn inductance_for_frequency<T: Real>(f_ghz: T, c_ff: T) -> T {
    let omega = f_ghz * lit::<T>(2.0 * PI * 1e9);
    // L = 1/(ω²C), converted to nH with C in fF.
    T::one() / (omega * omega * c_ff * lit::<T>(1e-15)) * lit::<T>(1e9)
}
