//! Closed-form dispersion roots over the constant-temperature background.
//!
//! There are five roots: the stationary entropy root, the +/- acoustic pair
//! and the +/- buoyancy pair. The buoyancy branch is evaluated through the
//! difference-of-squares identity
//!   S - sqrt(S^2 - Q) = Q / (S + sqrt(S^2 - Q))
//! which avoids the catastrophic cancellation of the naive form when
//! kx^2 + ky^2 is small against S^2.

use crate::background::AtmosphereParams;
use crate::error::{Error, Result};

/// The five frequencies at one wavevector; the pairs are exact negatives,
/// only the nonnegative member is stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionRoots {
    pub omega0: f64,
    /// Nonnegative acoustic root; the pair is (+omega12, -omega12).
    pub omega12: f64,
    /// Nonnegative buoyancy root; the pair is (+omega34, -omega34).
    pub omega34: f64,
    pub k: [f64; 3],
}

/// Evaluate the dispersion roots at a wavevector. Requires alpha H(0) = 0;
/// no closed dispersion relation exists over all wavelengths otherwise.
pub fn omega_roots(kx: f64, ky: f64, kz: f64, params: &AtmosphereParams) -> Result<DispersionRoots> {
    params.validate()?;
    if !params.is_isothermal() {
        return Err(Error::RequiresIsothermal(params.alpha_h0));
    }
    if ![kx, ky, kz].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidParameter("non-finite wavevector".into()));
    }
    let h = params.h0;
    let g = params.g;
    let gamma = params.gamma;
    let kperp2 = kx * kx + ky * ky;
    let s = kperp2 + kz * kz + 1.0 / (4.0 * h * h);
    let q = 4.0 * (gamma - 1.0) / (gamma * gamma * h * h) * kperp2;
    // radicand S^2 - Q >= 0 for gamma > 1 and real k
    let inner = (s * s - q).max(0.0).sqrt();
    let pref = gamma * g * h / 2.0;
    let omega12 = (pref * (s + inner)).sqrt();
    let omega34 = if q == 0.0 {
        0.0
    } else {
        (pref * q / (s + inner)).sqrt()
    };
    Ok(DispersionRoots {
        omega0: 0.0,
        omega12,
        omega34,
        k: [kx, ky, kz],
    })
}

/// Sound speed sqrt(gamma g H(0)) of the isothermal background, the
/// high-wavenumber limit of the 1-D acoustic group speed.
pub fn sound_speed(params: &AtmosphereParams) -> f64 {
    (params.gamma * params.g * params.h0).sqrt()
}
