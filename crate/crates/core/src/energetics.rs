//! Energy functionals, the scalar product, and the self-adjointness surface
//! check.
//!
//! In transformed variables the weights are taken so that the transformed
//! energy equals the physical one identically under the change of variables:
//! the kinetic weight is rho_bar w^2 = rho0/eta and the pressure weight is
//! p_bar w^2, which for the hydrostatic family is the exact constant
//! gamma g H(0) rho0 (so the constant-temperature weights hold verbatim).

use crate::background::BackgroundProfile;
use crate::error::{Error, Result};
use crate::fields::{FieldState, PhysicalState};
use crate::numerics::{derivative, trapz};

fn require_stable(profile: &BackgroundProfile) -> Result<()> {
    for (&nu, &z) in profile.nu.iter().zip(&profile.grid.z) {
        if nu <= 0.0 {
            return Err(Error::UnstableBackground { min_nu: nu, z });
        }
    }
    Ok(())
}

/// Kinetic, barotropic and thermal parts of the total energy per unit
/// horizontal area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    pub baro: f64,
    pub thermal: f64,
}

impl EnergyBreakdown {
    pub fn total(&self) -> f64 {
        self.kinetic + self.baro + self.thermal
    }
}

/// (1/2) int (rho_bar V^2 + p'^2/(gamma p_bar) + phi'^2/(gamma nu p_bar)) dz.
pub fn physical_energy_breakdown(
    phys: &PhysicalState,
    profile: &BackgroundProfile,
) -> Result<EnergyBreakdown> {
    if !phys.grid.same_as(&profile.grid) {
        return Err(Error::GridMismatch);
    }
    require_stable(profile)?;
    let gamma = profile.params.gamma;
    let n = phys.grid.n;
    let mut kin = Vec::with_capacity(n);
    let mut baro = Vec::with_capacity(n);
    let mut therm = Vec::with_capacity(n);
    for i in 0..n {
        kin.push(profile.rho_bar[i] * phys.vz[i] * phys.vz[i]);
        baro.push(phys.p_prime[i] * phys.p_prime[i] / (gamma * profile.p_bar[i]));
        therm.push(
            phys.phi_prime[i] * phys.phi_prime[i] / (gamma * profile.nu[i] * profile.p_bar[i]),
        );
    }
    let dz = phys.grid.dz;
    Ok(EnergyBreakdown {
        kinetic: 0.5 * trapz(&kin, dz),
        baro: 0.5 * trapz(&baro, dz),
        thermal: 0.5 * trapz(&therm, dz),
    })
}

pub fn physical_energy(phys: &PhysicalState, profile: &BackgroundProfile) -> Result<f64> {
    Ok(physical_energy_breakdown(phys, profile)?.total())
}

/// Scalar product of two transformed states:
/// int ( (rho0/eta) Ua Ub + Pa Pb / (gamma g H0 rho0) + Phia Phib / (nu gamma g H0 rho0) ) dz.
pub fn inner_product(a: &FieldState, b: &FieldState, profile: &BackgroundProfile) -> Result<f64> {
    if !a.grid.same_as(&b.grid) || !a.grid.same_as(&profile.grid) {
        return Err(Error::GridMismatch);
    }
    require_stable(profile)?;
    let p = &profile.params;
    let pw = p.gamma * p.g * p.h0 * p.rho0;
    let n = a.grid.n;
    let mut integrand = Vec::with_capacity(n);
    for i in 0..n {
        integrand.push(
            p.rho0 / profile.eta[i] * a.uz[i] * b.uz[i]
                + a.p[i] * b.p[i] / pw
                + a.phi[i] * b.phi[i] / (profile.nu[i] * pw),
        );
    }
    Ok(trapz(&integrand, a.grid.dz))
}

/// (1/2) <state, state> with the scalar product above.
pub fn transformed_energy(state: &FieldState, profile: &BackgroundProfile) -> Result<f64> {
    Ok(0.5 * inner_product(state, state, profile)?)
}

/// 1-D generator of the linearized dynamics applied with the diagnostic
/// 4th-order derivative; no boundary condition is imposed.
pub fn apply_generator(state: &FieldState, profile: &BackgroundProfile) -> Result<FieldState> {
    if !state.grid.same_as(&profile.grid) {
        return Err(Error::GridMismatch);
    }
    let p = &profile.params;
    let dz = state.grid.dz;
    let dp = derivative(&state.p, dz);
    let du = derivative(&state.uz, dz);
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

/// Discrete surface residual of the self-adjointness identity:
/// <L a, b> + <a, L b>, which vanishes at scheme order for impermeable
/// fields and otherwise equals the boundary flux
/// (Pa Ub + Pb Ua)|_0 - (Pa Ub + Pb Ua)|_h to O(dz^2).
pub fn selfadjointness_residual(
    a: &FieldState,
    b: &FieldState,
    profile: &BackgroundProfile,
) -> Result<f64> {
    let la = apply_generator(a, profile)?;
    let lb = apply_generator(b, profile)?;
    Ok(inner_product(&la, b, profile)? + inner_product(a, &lb, profile)?)
}

/// The explicit boundary-flux expression the residual converges to.
pub fn boundary_flux(a: &FieldState, b: &FieldState) -> f64 {
    let n = a.grid.n;
    let at = |i: usize| a.p[i] * b.uz[i] + b.p[i] * a.uz[i];
    at(0) - at(n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::background::AtmosphereParams;
    use crate::decompose::{decompose, SolveMethod};
    use crate::fields::{make_pulse, to_physical, PulseKind, PulseSpec};
    use crate::modal::entropy_phi_from_p;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

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

    /// Random smooth field: a few Fourier components with seeded coefficients.
    fn random_smooth(profile: &BackgroundProfile, seed: u64, impermeable: bool) -> FieldState {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = profile.params.h;
        let n = profile.grid.n;
        let mut comp = |odd_sine: bool| -> Vec<f64> {
            let coeffs: Vec<(f64, f64)> = (1..=6)
                .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            profile
                .grid
                .z
                .iter()
                .map(|&z| {
                    coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, &(a, b))| {
                            let kk = (k + 1) as f64 * std::f64::consts::PI / h;
                            if odd_sine {
                                a * (kk * z).sin()
                            } else {
                                a * (kk * z).sin() + b * (kk * z).cos()
                            }
                        })
                        .sum()
                })
                .collect()
        };
        let uz = comp(impermeable);
        let p = comp(false);
        let phi = comp(false);
        FieldState::new(profile.grid.clone(), uz, p, phi, 0.0).unwrap()
    }

    #[test]
    fn zero_energy_and_kinetic_closed_form() {
        let p = profile(0.0, 1024);
        let zero = FieldState::zero(p.grid.clone());
        assert_eq!(transformed_energy(&zero, &p).unwrap(), 0.0);
        // V = 1 everywhere: E = (1/2) int rho_bar dz = (1 - e^{-h})/2
        let n = p.grid.n;
        let phys = PhysicalState {
            grid: p.grid.clone(),
            vz: vec![1.0; n],
            p_prime: vec![0.0; n],
            phi_prime: vec![0.0; n],
            rho_prime: vec![0.0; n],
            t: 0.0,
        };
        let e = physical_energy(&phys, &p).unwrap();
        assert_relative_eq!(e, 0.5 * (1.0 - (-6.0f64).exp()), max_relative = 1e-4);
    }

    #[test]
    fn physical_equals_transformed() {
        for alpha in [-0.1, 0.0, 0.1] {
            let p = profile(alpha, 2048);
            for seed in 0..4u64 {
                let state = random_smooth(&p, seed, false);
                let et = transformed_energy(&state, &p).unwrap();
                let ep = physical_energy(&to_physical(&state, &p).unwrap(), &p).unwrap();
                assert_relative_eq!(et, ep, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn constant_temperature_weights_reduce() {
        // alpha = 0: the scalar-product weights are exactly the constants
        // 1/(gamma g H rho0) and 1/(gamma (gamma-1) g H rho0).
        let p = profile(0.0, 512);
        let state = random_smooth(&p, 7, false);
        let ip = inner_product(&state, &state, &p).unwrap();
        let par = &p.params;
        let n = p.grid.n;
        let integrand: Vec<f64> = (0..n)
            .map(|i| {
                par.rho0 * state.uz[i] * state.uz[i]
                    + state.p[i] * state.p[i] / (par.gamma * par.g * par.h0 * par.rho0)
                    + state.phi[i] * state.phi[i]
                        / (par.gamma * (par.gamma - 1.0) * par.g * par.h0 * par.rho0)
            })
            .collect();
        assert_relative_eq!(ip, trapz(&integrand, p.grid.dz), max_relative = 1e-13);
    }

    #[test]
    fn inner_product_symmetry_and_bilinearity() {
        let p = profile(0.1, 512);
        let a = random_smooth(&p, 1, false);
        let b = random_smooth(&p, 2, false);
        let c = random_smooth(&p, 3, false);
        let ab = inner_product(&a, &b, &p).unwrap();
        let ba = inner_product(&b, &a, &p).unwrap();
        assert_relative_eq!(ab, ba, max_relative = 1e-14);
        assert_eq!(
            inner_product(&a, &FieldState::zero(p.grid.clone()), &p).unwrap(),
            0.0
        );
        // <a, 2b + 3c> = 2<a,b> + 3<a,c>
        let n = p.grid.n;
        let combo = FieldState::new(
            p.grid.clone(),
            (0..n).map(|i| 2.0 * b.uz[i] + 3.0 * c.uz[i]).collect(),
            (0..n).map(|i| 2.0 * b.p[i] + 3.0 * c.p[i]).collect(),
            (0..n).map(|i| 2.0 * b.phi[i] + 3.0 * c.phi[i]).collect(),
            0.0,
        )
        .unwrap();
        let lhs = inner_product(&a, &combo, &p).unwrap();
        let rhs = 2.0 * ab + 3.0 * inner_product(&a, &c, &p).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        // positive definiteness on a nonzero field
        assert!(inner_product(&a, &a, &p).unwrap() > 0.0);
    }

    #[test]
    fn decomposed_parts_are_orthogonal_isothermal() {
        let p = profile(0.0, 4096);
        let n = p.grid.n;
        let spec = PulseSpec {
            kind: PulseKind::Gaussian,
            amplitude: 1.0,
            width: 0.3,
            center: 3.0,
        };
        let g = make_pulse(&spec, &p.grid, 1.0).unwrap();
        let phi0 = entropy_phi_from_p(&g, &p);
        let phi_a = make_pulse(
            &PulseSpec {
                kind: PulseKind::GaussianDerivative,
                ..spec
            },
            &p.grid,
            1.0,
        )
        .unwrap();
        let p_a = crate::modal::acoustic_p_from_phi(&phi_a, &p).unwrap();
        let total = FieldState::new(
            p.grid.clone(),
            vec![0.0; n],
            (0..n).map(|i| g[i] + p_a[i]).collect(),
            (0..n).map(|i| phi0[i] + phi_a[i]).collect(),
            0.0,
        )
        .unwrap();
        let split = decompose(&total, &p, SolveMethod::Bvp).unwrap();
        let cross = inner_product(&split.acoustic, &split.entropy, &p).unwrap();
        let na = inner_product(&split.acoustic, &split.acoustic, &p).unwrap().sqrt();
        let n0 = inner_product(&split.entropy, &split.entropy, &p).unwrap().sqrt();
        assert!(
            (cross / (na * n0)).abs() < 1e-6,
            "normalized cross {}",
            cross / (na * n0)
        );
        // energy additivity with the small cross term
        let e_tot = transformed_energy(&total, &p).unwrap();
        let e_a = transformed_energy(&split.acoustic, &p).unwrap();
        let e_0 = transformed_energy(&split.entropy, &p).unwrap();
        assert_relative_eq!(e_tot, e_a + e_0 + cross, max_relative = 1e-10);
    }

    #[test]
    fn selfadjointness_decays_for_impermeable_fields() {
        let mut errs = Vec::new();
        for &n in &[256usize, 512, 1024] {
            let p = profile(0.1, n);
            let a = random_smooth(&p, 11, true);
            let b = random_smooth(&p, 12, true);
            let scale = inner_product(&a, &a, &p).unwrap().sqrt()
                * inner_product(&b, &b, &p).unwrap().sqrt();
            errs.push(selfadjointness_residual(&a, &b, &p).unwrap().abs() / scale);
        }
        let order = (errs[0] / errs[2]).log2() / 2.0;
        assert!(order > 1.7, "order {order}, errs {errs:?}");
        let p = profile(0.1, 256);
        let zero = FieldState::zero(p.grid.clone());
        assert_eq!(selfadjointness_residual(&zero, &zero, &p).unwrap(), 0.0);
    }

    #[test]
    fn selfadjointness_matches_boundary_flux_otherwise() {
        let mut errs = Vec::new();
        for &n in &[512usize, 1024, 2048] {
            let p = profile(0.1, n);
            let a = random_smooth(&p, 21, false);
            let b = random_smooth(&p, 22, false);
            let res = selfadjointness_residual(&a, &b, &p).unwrap();
            let flux = boundary_flux(&a, &b);
            errs.push((res - flux).abs());
        }
        assert!(errs[0] > 1e-8, "flux term should be O(1): {errs:?}");
        let order = (errs[0] / errs[2]).log2() / 2.0;
        assert!(order > 1.7, "order {order}, errs {errs:?}");
    }

    #[test]
    fn unstable_background_rejected() {
        let params = AtmosphereParams {
            alpha_h0: -0.30,
            h: 3.0,
            ..Default::default()
        };
        let p = BackgroundProfile::build(&params, 64).unwrap();
        let s = FieldState::zero(p.grid.clone());
        assert!(matches!(
            transformed_energy(&s, &p),
            Err(Error::UnstableBackground { .. })
        ));
    }
}
