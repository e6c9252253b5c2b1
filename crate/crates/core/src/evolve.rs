//! Linearized 1-D time evolution of the transformed system, used to verify
//! that the decomposition holds instant by instant and that the energy
//! invariant is conserved.
//!
//! The spatial operator is the 4th-order centered stencil with the
//! summation-by-parts boundary closure; the wall condition is imposed
//! strongly on U_z at every integrator stage. The one-sided closure used by
//! the diagnostic modules is eigenvalue-unstable under strong imposition and
//! is not used here.

use crate::background::BackgroundProfile;
use crate::energetics::transformed_energy;
use crate::error::{Error, Result};
use crate::fields::FieldState;
use crate::numerics::sbp_derivative;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// U_z = 0 at both walls.
    Impermeable,
    /// U_z = 0 at the bottom, P = 0 at the top.
    PressureReleaseTop,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveConfig {
    /// Courant factor, 0 < cfl <= 0.9.
    pub cfl: f64,
    pub t_end: f64,
    /// Steps between retained snapshots.
    pub output_every: usize,
    pub boundary: BoundaryKind,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self {
            cfl: 0.4,
            t_end: 10.0,
            output_every: 100,
            boundary: BoundaryKind::Impermeable,
        }
    }
}

impl EvolveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 0.9) {
            return Err(Error::InvalidParameter(format!(
                "cfl = {} out of (0, 0.9]",
                self.cfl
            )));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::InvalidParameter(format!("t_end = {}", self.t_end)));
        }
        if self.output_every == 0 {
            return Err(Error::InvalidParameter("output_every must be >= 1".into()));
        }
        Ok(())
    }
}

/// Fastest signal speed on the grid, max sqrt(gamma g H(z)).
pub fn max_wave_speed(profile: &BackgroundProfile) -> f64 {
    let p = &profile.params;
    profile
        .h_scale
        .iter()
        .map(|&h| (p.gamma * p.g * h).sqrt())
        .fold(0.0f64, f64::max)
}

/// Largest stable time step at the given Courant factor.
pub fn stable_dt(profile: &BackgroundProfile, cfl: f64) -> f64 {
    cfl * profile.grid.dz / max_wave_speed(profile)
}

/// Time derivative of the transformed state (no boundary condition applied).
pub fn rhs(state: &FieldState, profile: &BackgroundProfile) -> Result<FieldState> {
    if !state.grid.same_as(&profile.grid) {
        return Err(Error::GridMismatch);
    }
    for (&nu, &z) in profile.nu.iter().zip(&profile.grid.z) {
        if nu <= 0.0 {
            return Err(Error::UnstableBackground { min_nu: nu, z });
        }
    }
    let p = &profile.params;
    let dz = state.grid.dz;
    let dp = sbp_derivative(&state.p, dz);
    let du = sbp_derivative(&state.uz, dz);
    let n = state.grid.n;
    let mut uz_t = Vec::with_capacity(n);
    let mut p_t = Vec::with_capacity(n);
    let mut phi_t = Vec::with_capacity(n);
    for i in 0..n {
        let eta = profile.eta[i];
        uz_t.push(
            ((p.gamma - 2.0) / (2.0 * p.gamma * p.h0) * state.p[i] - eta * dp[i]) / p.rho0
                + state.phi[i] / (p.gamma * p.h0 * p.rho0),
        );
        p_t.push(
            -p.gamma * p.g * p.h0 * p.rho0 * du[i]
                - p.g * p.rho0 * (p.gamma - 2.0) / (2.0 * eta) * state.uz[i],
        );
        phi_t.push(-profile.nu[i] / eta * p.g * p.rho0 * state.uz[i]);
    }
    FieldState::new(state.grid.clone(), uz_t, p_t, phi_t, state.t)
}

fn impose(state: &mut FieldState, boundary: BoundaryKind) {
    let n = state.grid.n;
    state.uz[0] = 0.0;
    match boundary {
        BoundaryKind::Impermeable => state.uz[n - 1] = 0.0,
        BoundaryKind::PressureReleaseTop => state.p[n - 1] = 0.0,
    }
}

fn axpy(state: &FieldState, k: &FieldState, dt: f64) -> FieldState {
    let n = state.grid.n;
    let mut out = state.clone();
    for i in 0..n {
        out.uz[i] += dt * k.uz[i];
        out.p[i] += dt * k.p[i];
        out.phi[i] += dt * k.phi[i];
    }
    out
}

/// One classical 4-stage explicit step. The wall condition is imposed on
/// every stage state and on the result.
pub fn step(
    state: &FieldState,
    profile: &BackgroundProfile,
    dt: f64,
    boundary: BoundaryKind,
) -> Result<FieldState> {
    let dt_max = stable_dt(profile, 0.9);
    if !(dt > 0.0) || dt > dt_max {
        return Err(Error::CflViolation { dt, dt_max });
    }
    let k1 = rhs(state, profile)?;
    let mut s2 = axpy(state, &k1, 0.5 * dt);
    impose(&mut s2, boundary);
    let k2 = rhs(&s2, profile)?;
    let mut s3 = axpy(state, &k2, 0.5 * dt);
    impose(&mut s3, boundary);
    let k3 = rhs(&s3, profile)?;
    let mut s4 = axpy(state, &k3, dt);
    impose(&mut s4, boundary);
    let k4 = rhs(&s4, profile)?;
    let n = state.grid.n;
    let mut out = state.clone();
    for i in 0..n {
        out.uz[i] += dt / 6.0 * (k1.uz[i] + 2.0 * k2.uz[i] + 2.0 * k3.uz[i] + k4.uz[i]);
        out.p[i] += dt / 6.0 * (k1.p[i] + 2.0 * k2.p[i] + 2.0 * k3.p[i] + k4.p[i]);
        out.phi[i] += dt / 6.0 * (k1.phi[i] + 2.0 * k2.phi[i] + 2.0 * k3.phi[i] + k4.phi[i]);
    }
    impose(&mut out, boundary);
    out.t = state.t + dt;
    Ok(out)
}

/// Snapshot series plus the per-snapshot transformed energy.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub snapshots: Vec<FieldState>,
    /// (t, E) pairs, one per retained snapshot (including t = 0).
    pub energy_log: Vec<(f64, f64)>,
}

/// Integrate to `t_end`, retaining every `output_every`-th state.
pub fn run(
    initial: &FieldState,
    profile: &BackgroundProfile,
    config: &EvolveConfig,
) -> Result<RunResult> {
    config.validate()?;
    initial.check_finite()?;
    let mut dt = stable_dt(profile, config.cfl);
    let nsteps = (config.t_end / dt).ceil().max(1.0) as usize;
    dt = config.t_end / nsteps as f64;
    let mut state = initial.clone();
    impose(&mut state, config.boundary);
    let mut snapshots = vec![state.clone()];
    let mut energy_log = vec![(state.t, transformed_energy(&state, profile)?)];
    for i in 1..=nsteps {
        state = step(&state, profile, dt, config.boundary)?;
        if i % config.output_every == 0 || i == nsteps {
            snapshots.push(state.clone());
            energy_log.push((state.t, transformed_energy(&state, profile)?));
        }
    }
    Ok(RunResult {
        snapshots,
        energy_log,
    })
}
