//! Mode decomposition and linear evolution of small perturbations in a gas
//! column stratified by gravity, with a scale height that varies linearly
//! with altitude.
//!
//! The perturbation (vertical velocity, pressure, and an entropy-tracking
//! combination) is split exactly into an acoustic part and a stationary
//! entropy part by solving a second-order two-point problem for the scaled
//! acoustic potential. The split is diagnostic — it needs one snapshot, not
//! a time series — and is validated here against closed-form backgrounds,
//! conservation of a quadratic energy, and direct time integration.
//!
//! Modules:
//! - [`background`]: stratified profiles, stability check, grids
//! - [`fields`]: transformed/physical state containers and pulse shapes
//! - [`modal`]: per-mode links between pressure and the entropy variable
//! - [`decompose`]: the acoustic/entropy projection itself
//! - [`energetics`]: quadratic invariant, mode-orthogonal inner product
//! - [`dispersion`]: closed-form frequency roots (constant temperature)
//! - [`evolve`]: explicit time integration used for verification
//! - [`io`], [`svg`], [`scenario`]: CSV output, quick-look plots, and the
//!   canned runs exposed by the command-line tool

pub mod background;
pub mod decompose;
pub mod dispersion;
pub mod energetics;
pub mod error;
pub mod evolve;
pub mod fields;
pub mod io;
pub mod modal;
pub mod numerics;
pub mod scenario;
pub mod svg;

pub use background::{AtmosphereParams, BackgroundProfile, Grid1D, StabilityReport};
pub use decompose::{decompose, ModeSplit, SolveMethod};
pub use error::{Error, Result};
pub use fields::{FieldState, PhysicalState, PulseKind, PulseSpec};
