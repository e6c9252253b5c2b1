//! Shared finite-difference and quadrature kernels on uniform grids.
//!
//! Everything here assumes a uniform spacing `dz` and at least a handful of
//! samples; grid construction enforces `n >= 16` so the stencils below always
//! fit.

/// First derivative, 4th-order centered in the interior with 4th-order
/// one-sided stencils at the two points next to each boundary.
///
/// This is the diagnostic scheme used by the modal relations and the
/// right-hand side of the decomposition ODE.
pub fn derivative(f: &[f64], dz: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 5, "derivative stencil needs at least 5 samples");
    let mut out = vec![0.0; n];
    let c = 1.0 / (12.0 * dz);
    for i in 2..n - 2 {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * c;
    }
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * c;
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * c;
    out[n - 2] =
        (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * c;
    out[n - 1] =
        (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5])
            * c;
    out
}

/// SBP(2-4) boundary rows of the summation-by-parts first-derivative
/// operator (Strand closure, diagonal norm). Interior stencil is the same
/// 4th-order centered one as [`derivative`].
const SBP_BOUNDARY: [[f64; 6]; 4] = [
    [-24.0 / 17.0, 59.0 / 34.0, -4.0 / 17.0, -3.0 / 34.0, 0.0, 0.0],
    [-0.5, 0.0, 0.5, 0.0, 0.0, 0.0],
    [4.0 / 43.0, -59.0 / 86.0, 0.0, 59.0 / 86.0, -4.0 / 43.0, 0.0],
    [3.0 / 98.0, 0.0, -59.0 / 98.0, 0.0, 32.0 / 49.0, -4.0 / 49.0],
];

/// First derivative with summation-by-parts boundary closure.
///
/// Used by the time integrator: together with strong imposition of the wall
/// condition it keeps the semi-discrete spectrum on the imaginary axis,
/// which the one-sided closure of [`derivative`] does not.
pub fn sbp_derivative(f: &[f64], dz: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 12, "sbp stencil needs at least 12 samples");
    let mut out = vec![0.0; n];
    let c = 1.0 / (12.0 * dz);
    for i in 4..n - 4 {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * c;
    }
    for (i, row) in SBP_BOUNDARY.iter().enumerate() {
        let mut lo = 0.0;
        let mut hi = 0.0;
        for (j, &w) in row.iter().enumerate() {
            lo += w * f[j];
            hi -= w * f[n - 1 - j];
        }
        out[i] = lo / dz;
        out[n - 1 - i] = hi / dz;
    }
    out
}

/// Composite trapezoid over the whole grid.
pub fn trapz(f: &[f64], dz: f64) -> f64 {
    let n = f.len();
    let mut s = 0.5 * (f[0] + f[n - 1]);
    for v in &f[1..n - 1] {
        s += v;
    }
    s * dz
}

/// Cumulative trapezoid prefix integral: out[i] = int_0^{z_i} f dz'.
pub fn cumtrapz(f: &[f64], dz: f64) -> Vec<f64> {
    let mut out = vec![0.0; f.len()];
    for i in 1..f.len() {
        out[i] = out[i - 1] + 0.5 * dz * (f[i - 1] + f[i]);
    }
    out
}

/// Cumulative trapezoid with the Euler-Maclaurin endpoint correction
/// `-dz^2/12 (f'(z) - f'(0))`, which lifts the prefix integral to 4th order
/// for smooth integrands.
pub fn cumtrapz_corrected(f: &[f64], dz: f64) -> Vec<f64> {
    let mut out = cumtrapz(f, dz);
    let fp = derivative(f, dz);
    let k = dz * dz / 12.0;
    for i in 0..f.len() {
        out[i] -= k * (fp[i] - fp[0]);
    }
    out
}

/// Thomas algorithm for a general tridiagonal system.
///
/// `sub` and `sup` have length n-1. Fails on a (numerically) singular pivot.
pub fn solve_tridiagonal(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>, String> {
    let n = diag.len();
    if rhs.len() != n || sub.len() + 1 != n || sup.len() + 1 != n {
        return Err("tridiagonal dimension mismatch".into());
    }
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut piv = diag[0];
    if piv == 0.0 || !piv.is_finite() {
        return Err("singular tridiagonal pivot at row 0".into());
    }
    c[0] = sup[0] / piv;
    d[0] = rhs[0] / piv;
    for i in 1..n {
        piv = diag[i] - sub[i - 1] * c[i - 1];
        if piv == 0.0 || !piv.is_finite() {
            return Err(format!("singular tridiagonal pivot at row {i}"));
        }
        if i < n - 1 {
            c[i] = sup[i] / piv;
        }
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / piv;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= c[i] * next;
    }
    Ok(x)
}

/// L2 norm sqrt(int f^2 dz) by trapezoid.
pub fn l2_norm(f: &[f64], dz: f64) -> f64 {
    let sq: Vec<f64> = f.iter().map(|v| v * v).collect();
    trapz(&sq, dz).sqrt()
}
