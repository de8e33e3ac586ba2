//! Quartic Taylor expansions of inductive element potentials.
//!
//! A centrosymmetric potential `U(φ)` is kept to fourth order as
//! `U ≈ c2·φ²/2 + c4·φ⁴/24`, where `c2 = U''(0)` and `c4 = U''''(0)`. The
//! pair `(c2, c4)` places an element in the linear/nonlinear plane: series
//! chains shrink the vector, a half flux quantum bias negates it, and
//! parallel branches add.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{abs, int, Scalar};

/// Sign of a junction or inductor branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_i8(s: i8) -> Option<Self> {
        match s {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub(crate) fn apply<T: Scalar>(self, x: T) -> T {
        match self {
            Sign::Positive => x,
            Sign::Negative => -x,
        }
    }
}

/// Phase offset of a cosine branch: no bias, or `π` from a `Φ₀/2` flux bias.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhaseOffset {
    Zero,
    Pi,
}

impl PhaseOffset {
    /// Maps an external flux in units of `Φ₀` to a phase offset.
    pub fn from_flux_quanta(flux: f64) -> Result<Self> {
        if flux == 0.0 {
            Ok(PhaseOffset::Zero)
        } else if flux == 0.5 {
            Ok(PhaseOffset::Pi)
        } else {
            Err(Error::UnsupportedFluxBias(flux))
        }
    }

    pub fn flux_quanta(self) -> f64 {
        match self {
            PhaseOffset::Zero => 0.0,
            PhaseOffset::Pi => 0.5,
        }
    }
}

/// `(c2, c4)` coefficients of a one-coordinate potential, in GHz.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorPotential<T> {
    /// `d²U/dφ²` at the origin.
    pub c2: T,
    /// `d⁴U/dφ⁴` at the origin.
    pub c4: T,
}

impl<T: Scalar> TaylorPotential<T> {
    pub fn new(c2: T, c4: T) -> Self {
        Self { c2, c4 }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Purely linear inductive potential with `c2 = e_l`.
    pub fn linear(e_l: T) -> Self {
        Self::new(e_l, T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c2.is_zero() && self.c4.is_zero()
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.c2.clone() * k.clone(), self.c4.clone() * k)
    }

    /// Flips the potential `U → −U`, the effect of a `π` phase shift.
    pub fn flip(&self) -> Self {
        Self::new(-self.c2.clone(), -self.c4.clone())
    }

    /// Evaluates the truncated expansion at `phi`.
    pub fn energy(&self, phi: T) -> T {
        let phi2 = phi.clone() * phi;
        let half = T::one() / int::<T>(2);
        let inv24 = T::one() / int::<T>(24);
        self.c2.clone() * phi2.clone() * half + self.c4.clone() * phi2.clone() * phi2 * inv24
    }
}

impl<T: Scalar> std::ops::Add for TaylorPotential<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        add_parallel(&self, &rhs)
    }
}

/// Expands `−sign·E_J·cos(φ + offset)` to fourth order.
pub fn expand_cosine<T: Scalar>(e_j: T, sign: Sign, offset: PhaseOffset) -> Result<TaylorPotential<T>> {
    if !(e_j > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "e_j",
            reason: format!("Josephson energy must be positive, got {e_j}"),
        });
    }
    let signed = sign.apply(e_j);
    let p = TaylorPotential::new(signed.clone(), -signed);
    Ok(match offset {
        PhaseOffset::Zero => p,
        PhaseOffset::Pi => p.flip(),
    })
}

/// `n` identical copies of `base` in series; the phase divides as `φ/n`.
pub fn series_chain<T: Scalar>(base: &TaylorPotential<T>, n: u32) -> Result<TaylorPotential<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "a series chain needs at least one element".into(),
        });
    }
    let n = int::<T>(n as i64);
    // n copies, each seeing φ/n: c2·n/n², c4·n/n⁴
    Ok(TaylorPotential::new(
        base.c2.clone() / n.clone(),
        base.c4.clone() / (n.clone() * n.clone() * n),
    ))
}

/// Parallel branches share one phase, so their potentials add.
pub fn add_parallel<T: Scalar>(a: &TaylorPotential<T>, b: &TaylorPotential<T>) -> TaylorPotential<T> {
    TaylorPotential::new(a.c2.clone() + b.c2.clone(), a.c4.clone() + b.c4.clone())
}

/// Flux qubit: `n` series junctions of `E_J` in parallel with one junction
/// of `α·E_J`, the latter carrying the external flux bias.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxQubitSpec<T> {
    pub n: u32,
    pub alpha: T,
    pub e_j: T,
    pub flux_bias: PhaseOffset,
}

impl<T: Scalar> FluxQubitSpec<T> {
    /// The quarton: `α = 1/n` at half flux quantum bias.
    pub fn quarton(n: u32, e_j: T) -> Self {
        Self {
            n,
            alpha: T::one() / int::<T>(n as i64),
            e_j,
            flux_bias: PhaseOffset::Pi,
        }
    }
}

/// Taylor expansion of `−n·E_J·cos(φ/n) − α·E_J·cos(φ − bias)` at `φ = 0`.
pub fn flux_qubit_potential<T: Scalar>(spec: &FluxQubitSpec<T>) -> Result<TaylorPotential<T>> {
    if spec.alpha < T::zero() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("junction ratio must be non-negative, got {}", spec.alpha),
        });
    }
    let chain = series_chain(
        &expand_cosine(spec.e_j.clone(), Sign::Positive, PhaseOffset::Zero)?,
        spec.n,
    )?;
    if spec.alpha.is_zero() {
        return Ok(chain);
    }
    let small = expand_cosine(spec.alpha.clone() * spec.e_j.clone(), Sign::Positive, spec.flux_bias)?;
    Ok(add_parallel(&chain, &small))
}

/// Effective Josephson energy `E_J (n²−1)/n³` of an `n`-junction quarton.
pub fn quarton_effective_energy<T: Scalar>(n: u32, e_j: T) -> Result<T> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("a quarton needs at least two series junctions, got {n}"),
        });
    }
    let n = int::<T>(n as i64);
    Ok(e_j * (n.clone() * n.clone() - T::one()) / (n.clone() * n.clone() * n))
}

/// Location of a point in the `(c2, c4)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    Origin,
    /// `c2 > 0`, `c4 > 0`.
    QuadrantI,
    /// `c2 < 0`, `c4 > 0`.
    QuadrantII,
    /// `c2 < 0`, `c4 < 0`.
    QuadrantIII,
    /// `c2 > 0`, `c4 < 0`.
    QuadrantIV,
    PositiveLinearAxis,
    NegativeLinearAxis,
    PositiveQuarticAxis,
    NegativeQuarticAxis,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::Origin => "origin",
            Region::QuadrantI => "I",
            Region::QuadrantII => "II",
            Region::QuadrantIII => "III",
            Region::QuadrantIV => "IV",
            Region::PositiveLinearAxis => "+linear axis",
            Region::NegativeLinearAxis => "-linear axis",
            Region::PositiveQuarticAxis => "+quartic axis",
            Region::NegativeQuarticAxis => "-quartic axis",
        };
        f.write_str(s)
    }
}

/// `|c4/c2|`, the position on the relative nonlinearity scale.
#[derive(Debug, Clone, PartialEq)]
pub enum RelativeNonlinearity<T> {
    Finite(T),
    /// `c2 = 0` with `c4 ≠ 0` (the quarton end of the scale).
    Infinite,
    /// Both coefficients vanish.
    Undefined,
}

impl<T: fmt::Display> fmt::Display for RelativeNonlinearity<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelativeNonlinearity::Finite(x) => write!(f, "{x}"),
            RelativeNonlinearity::Infinite => f.write_str("inf"),
            RelativeNonlinearity::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification<T> {
    pub region: Region,
    pub relative_nonlinearity: RelativeNonlinearity<T>,
    pub stable: bool,
}

/// Places a potential in the linear/nonlinear plane and decides stability.
///
/// The unstable region is everything below the junction line `c4 = −c2` in
/// quadrant IV, all of quadrant III including the negative quartic axis,
/// and the negative linear axis. Points on the junction line are stable.
pub fn classify<T: Scalar>(p: &TaylorPotential<T>) -> Classification<T> {
    let zero = T::zero();
    let (c2, c4) = (p.c2.clone(), p.c4.clone());
    let region = match (c2.partial_cmp(&zero), c4.partial_cmp(&zero)) {
        (Some(std::cmp::Ordering::Equal), Some(std::cmp::Ordering::Equal)) => Region::Origin,
        (Some(std::cmp::Ordering::Equal), _) if c4 > zero => Region::PositiveQuarticAxis,
        (Some(std::cmp::Ordering::Equal), _) => Region::NegativeQuarticAxis,
        (_, Some(std::cmp::Ordering::Equal)) if c2 > zero => Region::PositiveLinearAxis,
        (_, Some(std::cmp::Ordering::Equal)) => Region::NegativeLinearAxis,
        _ if c2 > zero && c4 > zero => Region::QuadrantI,
        _ if c2 < zero && c4 > zero => Region::QuadrantII,
        _ if c2 < zero => Region::QuadrantIII,
        _ => Region::QuadrantIV,
    };
    let relative_nonlinearity = if c2.is_zero() {
        if c4.is_zero() {
            RelativeNonlinearity::Undefined
        } else {
            RelativeNonlinearity::Infinite
        }
    } else {
        RelativeNonlinearity::Finite(abs(c4.clone() / c2.clone()))
    };
    let grey = (c4 < zero && c2 <= zero) || (c2 > zero && c4 < -c2.clone()) || (c4.is_zero() && c2 < zero);
    Classification {
        region,
        relative_nonlinearity,
        stable: !grey,
    }
}
