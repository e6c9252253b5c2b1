//! Unique acoustic/entropy split of a total (U_z, P, Phi) field.
//!
//! The pivot is the auxiliary function R(z,t) = (eta/nu) Phi_a, which solves
//! the second-order ODE
//!
//!   (1 + 2 H(0) eta' - 4 H(0)^2 eta^2 d^2/dz^2) R = -4 H(0)^2 eta^2 D
//!
//! with D the source assembled from the total P and Phi. R is obtained either
//! by a tridiagonal boundary-value solve or by variation of parameters with
//! the closed-form homogeneous pair; both paths use Dirichlet-zero boundary
//! values by default.

use crate::background::BackgroundProfile;
use crate::error::{Error, Result};
use crate::fields::FieldState;
use crate::modal::acoustic_p_from_phi;
use crate::numerics::{cumtrapz_corrected, derivative, solve_tridiagonal};

/// The two homogeneous solutions of the R equation, normalized so that
/// R1(0) = 1 and R2(0) = 0 with unit Wronskian.
#[derive(Debug, Clone)]
pub struct HomogeneousPair {
    pub r1: Vec<f64>,
    pub r2: Vec<f64>,
}

/// Closed forms for the linear scale-height law.
///
/// alpha != 0:  R1 = (1+alpha z)^{-1/2 alpha H0},
///              R2 = H0 R1 (-1 + (1+alpha z)^{1 + 1/alpha H0}) / (1 + alpha H0);
/// alpha  = 0:  R1 = e^{-z/2H0}, R2 = 2 H0 sinh(z/2H0).
pub fn homogeneous_solutions(profile: &BackgroundProfile) -> Result<HomogeneousPair> {
    let p = &profile.params;
    let a = p.alpha_h0;
    let h0 = p.h0;
    if !p.is_isothermal() && (1.0 + a).abs() < 1e-12 {
        return Err(Error::SingularParameter(
            "alpha H(0) = -1 makes the R2 closed form singular".into(),
        ));
    }
    let n = profile.grid.n;
    let mut r1 = Vec::with_capacity(n);
    let mut r2 = Vec::with_capacity(n);
    for &z in &profile.grid.z {
        let s = z / h0;
        if p.is_isothermal() {
            r1.push((-0.5 * s).exp());
            r2.push(2.0 * h0 * (0.5 * s).sinh());
        } else {
            let e = 1.0 + a * s;
            let base = e.powf(-1.0 / (2.0 * a));
            r1.push(base);
            r2.push(h0 * base * (e.powf(1.0 + 1.0 / a) - 1.0) / (1.0 + a));
        }
    }
    Ok(HomogeneousPair { r1, r2 })
}

/// Source term of the R equation:
/// D = -(1 / (2 H0^2 eta gamma^2)) (2 Phi + (gamma - 2 - 2 gamma H0 eta d/dz) P).
pub fn rhs_d(p: &[f64], phi: &[f64], profile: &BackgroundProfile) -> Vec<f64> {
    let gamma = profile.params.gamma;
    let h0 = profile.params.h0;
    let dp = derivative(p, profile.grid.dz);
    (0..p.len())
        .map(|i| {
            let eta = profile.eta[i];
            let bracket = 2.0 * phi[i] + (gamma - 2.0) * p[i] - 2.0 * gamma * h0 * eta * dp[i];
            -bracket / (2.0 * h0 * h0 * eta * gamma * gamma)
        })
        .collect()
}

/// Particular solution by variation of parameters plus the homogeneous
/// combination C1 R1 + C2 R2. The prefix integrals carry an Euler-Maclaurin
/// endpoint correction so the quadrature path matches the corrected BVP
/// path at its accuracy.
pub fn solve_r_quadrature(
    d: &[f64],
    profile: &BackgroundProfile,
    c1: f64,
    c2: f64,
) -> Result<Vec<f64>> {
    let pair = homogeneous_solutions(profile)?;
    let dz = profile.grid.dz;
    let f1: Vec<f64> = pair.r1.iter().zip(d).map(|(r, v)| r * v).collect();
    let f2: Vec<f64> = pair.r2.iter().zip(d).map(|(r, v)| r * v).collect();
    let i1 = cumtrapz_corrected(&f1, dz);
    let i2 = cumtrapz_corrected(&f2, dz);
    Ok((0..d.len())
        .map(|i| pair.r2[i] * i1[i] - pair.r1[i] * i2[i] + c1 * pair.r1[i] + c2 * pair.r2[i])
        .collect())
}

/// Boundary-condition policy for the R solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryValues {
    /// R(0) = R(h) = 0; appropriate for compactly supported perturbations.
    DirichletZero,
    /// Prescribed boundary values.
    MatchValues { r_lo: f64, r_hi: f64 },
}

/// Discrete left-hand operator of the R equation using the three-point
/// second derivative, the same one the BVP base solve inverts. At the two
/// boundary points the interior stencil does not fit and zero is returned.
pub fn apply_r_operator(r: &[f64], profile: &BackgroundProfile) -> Vec<f64> {
    let n = r.len();
    let dz = profile.grid.dz;
    let h0 = profile.params.h0;
    let deta = profile.params.alpha_h0 / h0; // d eta/dz, constant for linear H
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        let eta = profile.eta[i];
        let d2 = (r[i - 1] - 2.0 * r[i] + r[i + 1]) / (dz * dz);
        out[i] = (1.0 + 2.0 * h0 * deta) * r[i] - 4.0 * h0 * h0 * eta * eta * d2;
    }
    out
}

/// Tridiagonal boundary-value solve of the R equation with one deferred
/// correction sweep.
///
/// The base solve is the classic second-order three-point scheme; the sweep
/// re-evaluates the residual with the composed 4th-order second derivative
/// and solves the same tridiagonal system for the correction, which lifts
/// interior accuracy to 4th order while staying O(n).
pub fn solve_r_bvp(
    d: &[f64],
    profile: &BackgroundProfile,
    bc: BoundaryValues,
) -> Result<Vec<f64>> {
    let n = d.len();
    if n != profile.grid.n {
        return Err(Error::GridMismatch);
    }
    let dz = profile.grid.dz;
    let h0 = profile.params.h0;
    let deta = profile.params.alpha_h0 / h0;
    // Normalized form R'' - q R = D with q = (1 + 2 H0 eta')/(4 H0^2 eta^2).
    let q: Vec<f64> = profile
        .eta
        .iter()
        .map(|&eta| (1.0 + 2.0 * h0 * deta) / (4.0 * h0 * h0 * eta * eta))
        .collect();
    let inv_dz2 = 1.0 / (dz * dz);
    let mut sub = vec![inv_dz2; n - 1];
    let mut sup = vec![inv_dz2; n - 1];
    let mut diag: Vec<f64> = q.iter().map(|&qi| -2.0 * inv_dz2 - qi).collect();
    let (r_lo, r_hi) = match bc {
        BoundaryValues::DirichletZero => (0.0, 0.0),
        BoundaryValues::MatchValues { r_lo, r_hi } => (r_lo, r_hi),
    };
    diag[0] = 1.0;
    sup[0] = 0.0;
    diag[n - 1] = 1.0;
    sub[n - 2] = 0.0;
    let mut rhs = d.to_vec();
    rhs[0] = r_lo;
    rhs[n - 1] = r_hi;
    let solve = |b: &[f64]| -> Result<Vec<f64>> {
        solve_tridiagonal(&sub, &diag, &sup, b).map_err(Error::NumericalFailure)
    };
    let base = solve(&rhs)?;
    // Deferred correction against the higher-order operator.
    let d2 = derivative(&derivative(&base, dz), dz);
    let mut resid: Vec<f64> = (0..n).map(|i| d2[i] - q[i] * base[i] - d[i]).collect();
    resid[0] = 0.0;
    resid[n - 1] = 0.0;
    let corr = solve(&resid)?;
    Ok((0..n).map(|i| base[i] - corr[i]).collect())
}

/// Method for obtaining R.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Bvp,
    Quadrature,
}

impl std::str::FromStr for SolveMethod {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bvp" => Ok(Self::Bvp),
            "quadrature" => Ok(Self::Quadrature),
            other => Err(format!("unknown method '{other}' (expected bvp|quadrature)")),
        }
    }
}

/// The acoustic/entropy pair produced by [`decompose`]. The parts sum back
/// to the total: exactly in U (carried over verbatim) and to rounding in P
/// and Phi (the entropy column is the remainder).
#[derive(Debug, Clone)]
pub struct ModeSplit {
    pub acoustic: FieldState,
    pub entropy: FieldState,
}

/// Split a total field into its acoustic and entropy parts.
///
/// All of U_z goes to the acoustic part (the entropy column carries zero
/// velocity); Phi_a = (nu/eta) R, P_a follows from the acoustic link, and the
/// entropy part is the remainder.
pub fn decompose(
    total: &FieldState,
    profile: &BackgroundProfile,
    method: SolveMethod,
) -> Result<ModeSplit> {
    if !total.grid.same_as(&profile.grid) {
        return Err(Error::GridMismatch);
    }
    total.check_finite()?;
    for (&nu, &z) in profile.nu.iter().zip(&profile.grid.z) {
        if nu <= 0.0 {
            return Err(Error::UnstableBackground { min_nu: nu, z });
        }
    }
    let n = total.grid.n;
    let d = rhs_d(&total.p, &total.phi, profile);
    let r = match method {
        SolveMethod::Bvp => solve_r_bvp(&d, profile, BoundaryValues::DirichletZero)?,
        SolveMethod::Quadrature => {
            // Fit C1, C2 to the Dirichlet-zero boundary values used by the
            // BVP path. The particular solution vanishes at z = 0 and
            // R1(0) = 1, R2(0) = 0, so C1 = 0 there.
            let pair = homogeneous_solutions(profile)?;
            let particular = solve_r_quadrature(&d, profile, 0.0, 0.0)?;
            let c1 = -particular[0];
            let c2 = -(particular[n - 1] + c1 * pair.r1[n - 1]) / pair.r2[n - 1];
            solve_r_quadrature(&d, profile, c1, c2)?
        }
    };
    let phi_a: Vec<f64> = (0..n)
        .map(|i| profile.nu[i] / profile.eta[i] * r[i])
        .collect();
    let p_a = acoustic_p_from_phi(&phi_a, profile)?;
    let phi_0: Vec<f64> = total.phi.iter().zip(&phi_a).map(|(t, a)| t - a).collect();
    let p_0: Vec<f64> = total.p.iter().zip(&p_a).map(|(t, a)| t - a).collect();
    let acoustic = FieldState::new(total.grid.clone(), total.uz.clone(), p_a, phi_a, total.t)?;
    let entropy = FieldState::new(total.grid.clone(), vec![0.0; n], p_0, phi_0, total.t)?;
    Ok(ModeSplit { acoustic, entropy })
}
