//! Stratified equilibrium state: the linear scale-height law, hydrostatic
//! profiles, stability check, and the transform weights.
//!
//! Internal units are nondimensional: H(0) = 1, g = 1, rho(0) = 1 and time in
//! sqrt(H(0)/g) by default, but every formula below carries the parameters so
//! physical values work too.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Threshold below which the linear law is treated as the constant-H branch.
/// The closed-form exponents 1/(2 alpha H(0)) blow up near alpha = 0.
pub const ALPHA_ZERO_EPS: f64 = 1e-12;

/// Physical constants plus the linear profile law H(z) = H(0)(1 + alpha z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtmosphereParams {
    /// Specific-heats ratio, > 1.
    pub gamma: f64,
    /// Gravity magnitude (z increases upward, d p_bar/dz = -g rho_bar).
    pub g: f64,
    /// Scale height at z = 0.
    pub h0: f64,
    /// Dimensionless slope alpha*H(0) of the linear law.
    pub alpha_h0: f64,
    /// Domain height.
    pub h: f64,
    /// Background density at z = 0.
    pub rho0: f64,
}

impl Default for AtmosphereParams {
    fn default() -> Self {
        Self {
            gamma: 1.4,
            g: 1.0,
            h0: 1.0,
            alpha_h0: 0.0,
            h: 6.0,
            rho0: 1.0,
        }
    }
}

impl AtmosphereParams {
    pub fn validate(&self) -> Result<()> {
        let vals = [
            ("gamma", self.gamma),
            ("g", self.g),
            ("H0", self.h0),
            ("alphaH0", self.alpha_h0),
            ("h", self.h),
            ("rho0", self.rho0),
        ];
        for (name, v) in vals {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} = {v} is not finite")));
            }
        }
        if self.gamma <= 1.0 {
            return Err(Error::InvalidParameter(format!("gamma = {} must be > 1", self.gamma)));
        }
        if self.g <= 0.0 || self.h0 <= 0.0 || self.h <= 0.0 || self.rho0 <= 0.0 {
            return Err(Error::InvalidParameter(
                "g, H0, h and rho0 must be positive".into(),
            ));
        }
        // Profile positivity: eta = 1 + alphaH0 * z/H0 > 0 on [0, h]. With
        // eta(0) = 1 the minimum sits at whichever end alpha points down.
        let eta_top = 1.0 + self.alpha_h0 * self.h / self.h0;
        if eta_top <= 0.0 {
            return Err(Error::ProfilePositivity { z: self.h, eta: eta_top });
        }
        Ok(())
    }

    /// True when the constant-H code branch applies.
    pub fn is_isothermal(&self) -> bool {
        self.alpha_h0.abs() < ALPHA_ZERO_EPS
    }

    /// Static stability nu = gamma - 1 + gamma dH/dz, constant for linear H.
    pub fn nu(&self) -> f64 {
        self.gamma - 1.0 + self.gamma * self.alpha_h0
    }
}

/// Uniform sample positions covering [0, h].
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    pub n: usize,
    pub z: Vec<f64>,
    pub dz: f64,
}

impl Grid1D {
    pub fn new(h: f64, n: usize) -> Result<Self> {
        if n < 16 {
            return Err(Error::InvalidParameter(format!("grid needs n >= 16, got {n}")));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidParameter(format!("grid height h = {h}")));
        }
        let dz = h / (n - 1) as f64;
        let mut z: Vec<f64> = (0..n).map(|i| i as f64 * dz).collect();
        z[n - 1] = h;
        Ok(Self { n, z, dz })
    }

    pub fn same_as(&self, other: &Grid1D) -> bool {
        self.n == other.n && self.dz == other.dz
    }
}

/// Grid-sampled equilibrium fields and the transform weight.
#[derive(Debug, Clone)]
pub struct BackgroundProfile {
    pub params: AtmosphereParams,
    pub grid: Arc<Grid1D>,
    /// Scale height H(z).
    pub h_scale: Vec<f64>,
    /// eta(z) = H(z)/H(0).
    pub eta: Vec<f64>,
    /// Static stability nu(z) = gamma - 1 + gamma dH/dz.
    pub nu: Vec<f64>,
    /// Background density.
    pub rho_bar: Vec<f64>,
    /// Background pressure p_bar = rho_bar g H.
    pub p_bar: Vec<f64>,
    /// Transform weight w = exp(int_0^z dz'/2H).
    pub w: Vec<f64>,
}

impl BackgroundProfile {
    /// Build the equilibrium on a uniform n-point grid over [0, params.h].
    ///
    /// The integral int_0^z dz'/H is evaluated in closed form for the linear
    /// law: log(1 + alpha z)/alpha for alpha != 0, z/H(0) otherwise.
    pub fn build(params: &AtmosphereParams, n: usize) -> Result<Self> {
        params.validate()?;
        let grid = Arc::new(Grid1D::new(params.h, n)?);
        let a = params.alpha_h0;
        let nu_const = params.nu();
        let mut h_scale = Vec::with_capacity(n);
        let mut eta = Vec::with_capacity(n);
        let mut nu = Vec::with_capacity(n);
        let mut rho_bar = Vec::with_capacity(n);
        let mut p_bar = Vec::with_capacity(n);
        let mut w = Vec::with_capacity(n);
        let isothermal = params.is_isothermal();
        for &z in &grid.z {
            let s = z / params.h0;
            let e = 1.0 + a * s;
            if e <= 0.0 {
                return Err(Error::ProfilePositivity { z, eta: e });
            }
            // int_0^z dz'/H(z')
            let integral = if isothermal { s } else { e.ln() / a };
            let h_z = params.h0 * e;
            let rho = params.rho0 / e * (-integral).exp();
            eta.push(e);
            h_scale.push(h_z);
            nu.push(nu_const);
            rho_bar.push(rho);
            p_bar.push(rho * params.g * h_z);
            w.push((0.5 * integral).exp());
        }
        Ok(Self {
            params: *params,
            grid,
            h_scale,
            eta,
            nu,
            rho_bar,
            p_bar,
            w,
        })
    }
}

/// Result of the static-stability check over the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub min_nu: f64,
    pub z_of_min: f64,
    pub pass: bool,
}

/// Pass iff nu(z) > 0 at every sample; carries the minimum and where it sits.
pub fn check_stability(profile: &BackgroundProfile) -> StabilityReport {
    let mut min_nu = f64::INFINITY;
    let mut z_of_min = 0.0;
    for (&nu, &z) in profile.nu.iter().zip(&profile.grid.z) {
        if nu < min_nu {
            min_nu = nu;
            z_of_min = z;
        }
    }
    StabilityReport {
        min_nu,
        z_of_min,
        pass: min_nu > 0.0,
    }
}

/// Non-ideal-fluid correction exponent xi = -(A g H + B) / (2 H (g H - B)).
///
/// A and B are opaque equation-of-state series coefficients; xi vanishes for
/// an ideal gas (A = B = 0).
pub fn nonideal_xi(a: f64, b: f64, g: f64, h_scale: f64) -> Result<f64> {
    if ![a, b, g, h_scale].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidParameter("nonideal_xi: non-finite input".into()));
    }
    let gh = g * h_scale;
    if gh == b {
        return Err(Error::SingularParameter(format!(
            "nonideal_xi: gH = B = {gh} makes the exponent singular"
        )));
    }
    Ok(-(a * gh + b) / (2.0 * h_scale * (gh - b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{cumtrapz, derivative};
    use approx::assert_relative_eq;

    fn params(alpha_h0: f64) -> AtmosphereParams {
        AtmosphereParams {
            alpha_h0,
            ..Default::default()
        }
    }

    #[test]
    fn ground_values_isothermal() {
        let p = BackgroundProfile::build(&params(0.0), 64).unwrap();
        assert_eq!(p.rho_bar[0], 1.0);
        assert_eq!(p.eta[0], 1.0);
        assert_relative_eq!(p.nu[0], 0.4, epsilon = 1e-15);
    }

    #[test]
    fn nu_constant_for_linear_law() {
        let p = BackgroundProfile::build(&params(0.1), 64).unwrap();
        for &nu in &p.nu {
            assert_relative_eq!(nu, 0.54, epsilon = 1e-14);
        }
    }

    #[test]
    fn isothermal_density_and_weight_at_two_scale_heights() {
        // Oracle: dense-grid quadrature of the hydrostatic integral below.
        let p = BackgroundProfile::build(&params(0.0), 4096).unwrap();
        // z = 2 H0 falls on a sample for n = 4096, h = 6 (4095 intervals)
        let i = p.grid.z.iter().position(|&z| (z - 2.0).abs() < 1e-12).unwrap();
        assert_relative_eq!(p.rho_bar[i], (-2.0f64).exp(), max_relative = 1e-12);
        assert_relative_eq!(p.w[i], 1.0f64.exp(), max_relative = 1e-12);
    }

    #[test]
    fn closed_form_matches_quadrature_at_8192() {
        for alpha in [-0.1, 0.07] {
            let p = BackgroundProfile::build(&params(alpha), 8192).unwrap();
            let inv_h: Vec<f64> = p.h_scale.iter().map(|h| 1.0 / h).collect();
            let integral = cumtrapz(&inv_h, p.grid.dz);
            for i in 0..p.grid.n {
                let rho = p.params.rho0 / p.eta[i] * (-integral[i]).exp();
                let w = (0.5 * integral[i]).exp();
                // the oracle itself is trapezoid-limited at this n
                assert_relative_eq!(p.rho_bar[i], rho, max_relative = 1e-6);
                assert_relative_eq!(p.w[i], w, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn alpha_to_zero_continuity() {
        let p0 = BackgroundProfile::build(&params(0.0), 256).unwrap();
        for alpha in [1e-9, -1e-9] {
            let p = BackgroundProfile::build(&params(alpha), 256).unwrap();
            for i in 0..p.grid.n {
                assert_relative_eq!(p.rho_bar[i], p0.rho_bar[i], max_relative = 1e-6);
                assert_relative_eq!(p.w[i], p0.w[i], max_relative = 1e-6);
                assert_relative_eq!(p.p_bar[i], p0.p_bar[i], max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn hydrostatic_residual_converges_at_scheme_order() {
        let mut errs = Vec::new();
        for &n in &[128usize, 256, 512] {
            let p = BackgroundProfile::build(&params(0.1), n).unwrap();
            let dp = derivative(&p.p_bar, p.grid.dz);
            let scale = p
                .rho_bar
                .iter()
                .map(|r| (p.params.g * r).abs())
                .fold(0.0f64, f64::max);
            let res = dp
                .iter()
                .zip(&p.rho_bar)
                .map(|(d, r)| (d + p.params.g * r).abs())
                .fold(0.0f64, f64::max);
            errs.push(res / scale);
        }
        let order = (errs[0] / errs[2]).log2() / 2.0;
        assert!(order > 3.5, "hydrostatic residual order {order}, errs {errs:?}");
    }

    #[test]
    fn rejects_positivity_violation_and_nonfinite() {
        // eta(h) = 1 - 0.2*6 < 0
        assert!(matches!(
            BackgroundProfile::build(&params(-0.2), 64),
            Err(Error::ProfilePositivity { .. })
        ));
        let mut bad = params(0.0);
        bad.gamma = f64::NAN;
        assert!(BackgroundProfile::build(&bad, 64).is_err());
        let mut bad = params(0.0);
        bad.gamma = 1.0;
        assert!(BackgroundProfile::build(&bad, 64).is_err());
        assert!(BackgroundProfile::build(&params(0.0), 8).is_err());
    }

    #[test]
    fn stability_report_cases() {
        let mk = |alpha| check_stability(&BackgroundProfile::build(&params(alpha), 64).unwrap());
        let r = mk(0.1);
        assert!(r.pass);
        assert_relative_eq!(r.min_nu, 0.54, epsilon = 1e-14);
        let r = mk(-0.1);
        assert!(r.pass);
        assert_relative_eq!(r.min_nu, 0.26, epsilon = 1e-14);
        // alphaH0 = -0.30 keeps eta positive on [0, 3] but is statically unstable
        let p = AtmosphereParams {
            alpha_h0: -0.30,
            h: 3.0,
            ..Default::default()
        };
        let r = check_stability(&BackgroundProfile::build(&p, 64).unwrap());
        assert!(!r.pass);
        assert_relative_eq!(r.min_nu, -0.02, epsilon = 1e-14);
    }

    #[test]
    fn xi_cases() {
        assert_eq!(nonideal_xi(0.0, 0.0, 1.0, 1.0).unwrap(), 0.0);
        assert_relative_eq!(nonideal_xi(1.0, 0.0, 1.0, 1.0).unwrap(), -0.5, epsilon = 1e-15);
        // water-like consistency target xi ~ 0.85/(2H)
        assert_relative_eq!(
            nonideal_xi(-0.85, 0.0, 1.0, 1.0).unwrap(),
            0.85 / 2.0,
            epsilon = 1e-15
        );
        assert!(matches!(
            nonideal_xi(1.0, 2.0, 1.0, 2.0),
            Err(Error::SingularParameter(_))
        ));
    }
}
