//! Per-mode diagnostic links: the entropy-mode Phi from P, the acoustic P
//! from Phi, and the high-wavenumber acoustic velocity reconstruction.

use crate::background::BackgroundProfile;
use crate::error::{Error, Result};
use crate::numerics::{cumtrapz, derivative};

/// Entropy-mode link: Phi_0 = (-(gamma-2)/2 + gamma H(0) eta d/dz) P_0.
pub fn entropy_phi_from_p(p0: &[f64], profile: &BackgroundProfile) -> Vec<f64> {
    let gamma = profile.params.gamma;
    let h0 = profile.params.h0;
    let dp = derivative(p0, profile.grid.dz);
    (0..p0.len())
        .map(|i| -(gamma - 2.0) / 2.0 * p0[i] + gamma * h0 * profile.eta[i] * dp[i])
        .collect()
}

fn require_stable(profile: &BackgroundProfile) -> Result<()> {
    for (&nu, &z) in profile.nu.iter().zip(&profile.grid.z) {
        if nu <= 0.0 {
            return Err(Error::UnstableBackground { min_nu: nu, z });
        }
    }
    Ok(())
}

/// Acoustic link, the bracket acting on (eta/nu) Phi_a:
/// P_a = ((gamma-2)/(2 eta) + gamma H(0) d/dz) [ (eta/nu) Phi_a ].
pub fn acoustic_p_from_phi(phi_a: &[f64], profile: &BackgroundProfile) -> Result<Vec<f64>> {
    require_stable(profile)?;
    let gamma = profile.params.gamma;
    let h0 = profile.params.h0;
    let scaled: Vec<f64> = (0..phi_a.len())
        .map(|i| profile.eta[i] / profile.nu[i] * phi_a[i])
        .collect();
    let ds = derivative(&scaled, profile.grid.dz);
    Ok((0..phi_a.len())
        .map(|i| (gamma - 2.0) / (2.0 * profile.eta[i]) * scaled[i] + gamma * h0 * ds[i])
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcousticBranch {
    Up,
    Down,
}

/// High-wavenumber velocity reconstruction for one acoustic branch over an
/// isothermal background (valid for k_z H(0) >> 1):
/// U_z = -/+ (g gamma^2 / (8 rho0 (gamma-1) (gamma g H0)^{3/2})) int_0^z Phi dz'.
pub fn acoustic_velocity_highk(
    phi_branch: &[f64],
    branch: AcousticBranch,
    profile: &BackgroundProfile,
) -> Result<Vec<f64>> {
    let p = &profile.params;
    if !p.is_isothermal() {
        return Err(Error::RequiresIsothermal(p.alpha_h0));
    }
    let coeff = p.g * p.gamma * p.gamma
        / (8.0 * p.rho0 * (p.gamma - 1.0) * (p.gamma * p.g * p.h0).powf(1.5));
    let sign = match branch {
        AcousticBranch::Up => -1.0,
        AcousticBranch::Down => 1.0,
    };
    Ok(cumtrapz(phi_branch, profile.grid.dz)
        .into_iter()
        .map(|v| sign * coeff * v)
        .collect())
}
