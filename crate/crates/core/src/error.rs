use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The linear scale-height law went non-positive inside the domain.
    #[error("profile positivity violated: eta(z) = {eta} at z = {z}")]
    ProfilePositivity { z: f64, eta: f64 },

    /// Static stability nu(z) <= 0 somewhere; the operation requires a
    /// stable background.
    #[error("unstable background: min nu = {min_nu} at z = {z}")]
    UnstableBackground { min_nu: f64, z: f64 },

    #[error("fields are defined on different grids")]
    GridMismatch,

    #[error("singular parameter: {0}")]
    SingularParameter(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("time step {dt} exceeds the stability limit {dt_max}")]
    CflViolation { dt: f64, dt_max: f64 },

    /// Operation is only defined over a constant-temperature background.
    #[error("operation requires alpha*H(0) = 0, got {0}")]
    RequiresIsothermal(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
