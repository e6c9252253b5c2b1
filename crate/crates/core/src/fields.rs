//! Perturbation fields on the grid: the transformed triple (U_z, P, Phi),
//! its physical counterpart, the conversion between them, and the Gaussian
//! test pulses.

use std::sync::Arc;

use crate::background::{BackgroundProfile, Grid1D};
use crate::error::{Error, Result};

/// Transformed perturbation triple at one instant.
///
/// P and Phi carry the weight exp(+int dz/2H), U_z the inverse weight.
#[derive(Debug, Clone)]
pub struct FieldState {
    pub grid: Arc<Grid1D>,
    pub uz: Vec<f64>,
    pub p: Vec<f64>,
    pub phi: Vec<f64>,
    pub t: f64,
}

impl FieldState {
    pub fn zero(grid: Arc<Grid1D>) -> Self {
        let n = grid.n;
        Self {
            grid,
            uz: vec![0.0; n],
            p: vec![0.0; n],
            phi: vec![0.0; n],
            t: 0.0,
        }
    }

    pub fn new(grid: Arc<Grid1D>, uz: Vec<f64>, p: Vec<f64>, phi: Vec<f64>, t: f64) -> Result<Self> {
        let n = grid.n;
        if uz.len() != n || p.len() != n || phi.len() != n {
            return Err(Error::GridMismatch);
        }
        let state = Self { grid, uz, p, phi, t };
        state.check_finite()?;
        Ok(state)
    }

    pub fn check_finite(&self) -> Result<()> {
        let ok = self
            .uz
            .iter()
            .chain(&self.p)
            .chain(&self.phi)
            .all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::NumericalFailure("non-finite field sample".into()))
        }
    }
}

/// Physical perturbations: velocity, excess pressure, the entropy-tracking
/// combination phi' = p' - gamma (p_bar/rho_bar) rho', and excess density.
#[derive(Debug, Clone)]
pub struct PhysicalState {
    pub grid: Arc<Grid1D>,
    pub vz: Vec<f64>,
    pub p_prime: Vec<f64>,
    pub phi_prime: Vec<f64>,
    pub rho_prime: Vec<f64>,
    pub t: f64,
}

/// Lift physical perturbations to the transformed variables.
pub fn to_transformed(phys: &PhysicalState, profile: &BackgroundProfile) -> Result<FieldState> {
    if !phys.grid.same_as(&profile.grid) {
        return Err(Error::GridMismatch);
    }
    let n = phys.grid.n;
    let mut uz = Vec::with_capacity(n);
    let mut p = Vec::with_capacity(n);
    let mut phi = Vec::with_capacity(n);
    for i in 0..n {
        let w = profile.w[i];
        uz.push(phys.vz[i] / w);
        p.push(phys.p_prime[i] * w);
        phi.push(phys.phi_prime[i] * w);
    }
    FieldState::new(phys.grid.clone(), uz, p, phi, phys.t)
}

/// Invert the transform and recover rho' = (p' - phi') rho_bar / (gamma p_bar).
pub fn to_physical(state: &FieldState, profile: &BackgroundProfile) -> Result<PhysicalState> {
    if !state.grid.same_as(&profile.grid) {
        return Err(Error::GridMismatch);
    }
    state.check_finite()?;
    let n = state.grid.n;
    let gamma = profile.params.gamma;
    let mut vz = Vec::with_capacity(n);
    let mut p_prime = Vec::with_capacity(n);
    let mut phi_prime = Vec::with_capacity(n);
    let mut rho_prime = Vec::with_capacity(n);
    for i in 0..n {
        let w = profile.w[i];
        let pp = state.p[i] / w;
        let fp = state.phi[i] / w;
        vz.push(state.uz[i] * w);
        p_prime.push(pp);
        phi_prime.push(fp);
        rho_prime.push((pp - fp) * profile.rho_bar[i] / (gamma * profile.p_bar[i]));
    }
    Ok(PhysicalState {
        grid: state.grid.clone(),
        vz,
        p_prime,
        phi_prime,
        rho_prime,
        t: state.t,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseKind {
    Gaussian,
    GaussianDerivative,
}

/// Gaussian test pulse: amplitude, width beta in units of H(0), center z0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    pub kind: PulseKind,
    pub amplitude: f64,
    /// Dimensionless width beta (> 0).
    pub width: f64,
    pub center: f64,
}

impl PulseSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.width > 0.0) || !self.width.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "pulse width beta = {} must be > 0",
                self.width
            )));
        }
        if !self.amplitude.is_finite() || !self.center.is_finite() {
            return Err(Error::InvalidParameter("non-finite pulse parameter".into()));
        }
        Ok(())
    }
}

/// Sample a pulse on the grid. `h0` is the scale height H(0) setting the
/// width unit.
pub fn make_pulse(spec: &PulseSpec, grid: &Grid1D, h0: f64) -> Result<Vec<f64>> {
    spec.validate()?;
    let b2 = (spec.width * h0).powi(2);
    Ok(grid
        .z
        .iter()
        .map(|&z| {
            let d = z - spec.center;
            let g = spec.amplitude * (-d * d / b2).exp();
            match spec.kind {
                PulseKind::Gaussian => g,
                PulseKind::GaussianDerivative => -2.0 * g * d / (h0 * spec.width * spec.width),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::background::AtmosphereParams;
    use crate::numerics::derivative;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn profile(alpha: f64, n: usize) -> BackgroundProfile {
        BackgroundProfile::build(
            &AtmosphereParams {
                alpha_h0: alpha,
                ..Default::default()
            },
            n,
        )
        .unwrap()
    }

    #[test]
    fn zero_round_trips_to_zero() {
        let p = profile(0.1, 64);
        let state = FieldState::zero(p.grid.clone());
        let phys = to_physical(&state, &p).unwrap();
        assert!(phys.vz.iter().all(|&v| v == 0.0));
        assert!(phys.rho_prime.iter().all(|&v| v == 0.0));
        let back = to_transformed(&phys, &p).unwrap();
        assert!(back.p.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn constant_pressure_picks_up_the_weight() {
        // alpha = 0, p' = c  =>  P = c e^{z/2H0}
        let p = profile(0.0, 128);
        let n = p.grid.n;
        let phys = PhysicalState {
            grid: p.grid.clone(),
            vz: vec![0.0; n],
            p_prime: vec![2.5; n],
            phi_prime: vec![0.0; n],
            rho_prime: vec![0.0; n],
            t: 0.0,
        };
        let state = to_transformed(&phys, &p).unwrap();
        for (i, &z) in p.grid.z.iter().enumerate() {
            assert_relative_eq!(state.p[i], 2.5 * (z / 2.0).exp(), max_relative = 1e-13);
        }
    }

    #[test]
    fn equal_p_and_phi_give_zero_density() {
        let p = profile(0.1, 64);
        let n = p.grid.n;
        let f: Vec<f64> = p.grid.z.iter().map(|&z| (z - 3.0).sin()).collect();
        let state =
            FieldState::new(p.grid.clone(), vec![0.0; n], f.clone(), f, 0.0).unwrap();
        let phys = to_physical(&state, &p).unwrap();
        for &r in &phys.rho_prime {
            assert!(r.abs() < 1e-15);
        }
    }

    #[test]
    fn transform_point_check_against_quadrature() {
        // alpha = 0.1: w at a sample vs dense trapezoid of int dz/2H
        let p = profile(0.1, 8192);
        let inv2h: Vec<f64> = p.h_scale.iter().map(|h| 0.5 / h).collect();
        let integral = crate::numerics::cumtrapz(&inv2h, p.grid.dz);
        let i = 5000;
        assert_relative_eq!(p.w[i], integral[i].exp(), max_relative = 1e-7);
    }

    #[test]
    fn grid_mismatch_rejected() {
        let p = profile(0.0, 64);
        let other = profile(0.0, 128);
        let state = FieldState::zero(other.grid.clone());
        assert!(matches!(to_physical(&state, &p), Err(Error::GridMismatch)));
    }

    #[test]
    fn pulse_peak_and_parity() {
        // n = 2049 puts z = 3 exactly on a sample of [0, 6]
        let p = profile(0.0, 2049);
        let spec = PulseSpec {
            kind: PulseKind::Gaussian,
            amplitude: 2.0,
            width: 0.3,
            center: 3.0,
        };
        let g = make_pulse(&spec, &p.grid, 1.0).unwrap();
        let i0 = p.grid.z.iter().position(|&z| (z - 3.0).abs() < 1e-9).unwrap();
        assert_relative_eq!(g[i0], 2.0, epsilon = 1e-14);
        let dspec = PulseSpec {
            kind: PulseKind::GaussianDerivative,
            ..spec
        };
        let d = make_pulse(&dspec, &p.grid, 1.0).unwrap();
        assert!(d[i0].abs() < 1e-12);
        // odd about z0
        assert_relative_eq!(d[i0 - 100], -d[i0 + 100], epsilon = 1e-12);
    }

    #[test]
    fn derivative_kind_matches_numerical_derivative() {
        let p = profile(0.0, 2048);
        let base = PulseSpec {
            kind: PulseKind::Gaussian,
            amplitude: 1.0,
            width: 0.3,
            center: 3.0,
        };
        let g = make_pulse(&base, &p.grid, 1.0).unwrap();
        let d = make_pulse(
            &PulseSpec {
                kind: PulseKind::GaussianDerivative,
                ..base
            },
            &p.grid,
            1.0,
        )
        .unwrap();
        let num = derivative(&g, p.grid.dz);
        for i in 0..p.grid.n {
            assert_relative_eq!(d[i], num[i], epsilon = 1e-7);
        }
    }

    #[test]
    fn rejects_bad_width() {
        let p = profile(0.0, 64);
        let spec = PulseSpec {
            kind: PulseKind::Gaussian,
            amplitude: 1.0,
            width: 0.0,
            center: 3.0,
        };
        assert!(make_pulse(&spec, &p.grid, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn round_trip_is_identity(alpha in -0.15f64..0.15, seed in 0u64..1000) {
            let p = profile(alpha, 96);
            let n = p.grid.n;
            // cheap deterministic pseudo-random smooth-ish fields
            let f = |k: f64, ph: f64| -> Vec<f64> {
                p.grid.z.iter().map(|&z| (k * z + ph + seed as f64).sin()).collect()
            };
            let state = FieldState::new(p.grid.clone(), f(1.3, 0.2), f(2.1, 1.0), f(0.7, 2.0), 0.0).unwrap();
            let back = to_transformed(&to_physical(&state, &p).unwrap(), &p).unwrap();
            for i in 0..n {
                prop_assert!((back.uz[i] - state.uz[i]).abs() <= 1e-14 * (1.0 + state.uz[i].abs()));
                prop_assert!((back.p[i] - state.p[i]).abs() <= 1e-13 * (1.0 + state.p[i].abs()));
                prop_assert!((back.phi[i] - state.phi[i]).abs() <= 1e-13 * (1.0 + state.phi[i].abs()));
            }
        }
    }
}
