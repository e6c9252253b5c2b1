//! Canned runs behind the command-line tool: the three pulse constructions
//! (entropy-only, sound-only, zero-total-entropy), an evolve-and-verify run,
//! a dispersion sweep, and a profile dump.
//!
//! Every run writes one directory containing `config.resolved` plus CSVs
//! (and optional SVGs); the resolved configuration is also embedded in every
//! CSV as a `# key = value` comment block, so outputs are reproducible and
//! byte-identical across repeat runs.

use std::fs;
use std::path::{Path, PathBuf};

use crate::background::{check_stability, AtmosphereParams, BackgroundProfile};
use crate::decompose::{decompose, ModeSplit, SolveMethod};
use crate::dispersion::omega_roots;
use crate::energetics::{inner_product, transformed_energy};
use crate::error::{Error, Result};
use crate::evolve::{run as evolve_run, BoundaryKind, EvolveConfig, stable_dt};
use crate::fields::{make_pulse, to_physical, FieldState, PulseKind, PulseSpec};
use crate::io::{
    write_dispersion, write_energy_log, write_field, write_modesplit, write_profile, EnergyRow,
    Meta,
};
use crate::modal::{acoustic_p_from_phi, entropy_phi_from_p};
use crate::numerics::l2_norm;
use crate::svg::{Curve, Plot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    EntropyOnly,
    SoundOnly,
    ZeroTotalEntropy,
    EvolveVerify,
    DispersionSweep,
    ProfileDump,
}

impl std::str::FromStr for Scenario {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "entropy_only" => Ok(Self::EntropyOnly),
            "sound_only" => Ok(Self::SoundOnly),
            "zero_total_entropy" => Ok(Self::ZeroTotalEntropy),
            "evolve_verify" => Ok(Self::EvolveVerify),
            "dispersion_sweep" => Ok(Self::DispersionSweep),
            "profile_dump" => Ok(Self::ProfileDump),
            other => Err(format!("unknown scenario '{other}'")),
        }
    }
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Self::EntropyOnly => "entropy_only",
            Self::SoundOnly => "sound_only",
            Self::ZeroTotalEntropy => "zero_total_entropy",
            Self::EvolveVerify => "evolve_verify",
            Self::DispersionSweep => "dispersion_sweep",
            Self::ProfileDump => "profile_dump",
        }
    }
}

/// Fully resolved run configuration. Field names mirror the flag / config
/// keys one to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Option<Scenario>,
    pub gamma: f64,
    pub alpha_h0: Vec<f64>,
    pub n: usize,
    pub h: f64,
    pub z0: f64,
    pub beta: f64,
    pub amplitude: f64,
    /// None runs both pulse shapes.
    pub kind: Option<PulseKind>,
    pub method: SolveMethod,
    pub out: PathBuf,
    pub svg: bool,
    pub cfl: f64,
    pub t_end: f64,
    /// 0 selects an automatic cadence of roughly 20 snapshots.
    pub output_every: usize,
    pub boundary: BoundaryKind,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scenario: None,
            gamma: 1.4,
            alpha_h0: vec![-0.1, 0.0, 0.1],
            n: 4096,
            h: 6.0,
            z0: 3.0,
            beta: 0.3,
            amplitude: 1.0,
            kind: None,
            method: SolveMethod::Bvp,
            out: PathBuf::from("out"),
            svg: false,
            cfl: 0.4,
            t_end: 10.0,
            output_every: 0,
            boundary: BoundaryKind::Impermeable,
        }
    }
}

fn parse_kind(s: &str) -> Result<PulseKind> {
    match s {
        "gaussian" => Ok(PulseKind::Gaussian),
        "derivative" => Ok(PulseKind::GaussianDerivative),
        other => Err(Error::InvalidParameter(format!(
            "kind = '{other}' (expected gaussian|derivative)"
        ))),
    }
}

fn kind_key(kind: PulseKind) -> &'static str {
    match kind {
        PulseKind::Gaussian => "gaussian",
        PulseKind::GaussianDerivative => "derivative",
    }
}

/// Short tag used in file names: kind a is the Gaussian, kind b its
/// derivative.
fn kind_tag(kind: PulseKind) -> &'static str {
    match kind {
        PulseKind::Gaussian => "a",
        PulseKind::GaussianDerivative => "b",
    }
}

impl ScenarioConfig {
    /// Apply one `key = value` pair (from a config file or a CLI flag).
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::InvalidParameter(format!("{key} = '{value}': bad {what}"));
        match key {
            "scenario" => self.scenario = Some(value.parse().map_err(Error::InvalidParameter)?),
            "gamma" => self.gamma = value.parse().map_err(|_| bad("float"))?,
            "alpha-h0" => {
                let vals: std::result::Result<Vec<f64>, _> =
                    value.split(',').map(|v| v.trim().parse()).collect();
                self.alpha_h0 = vals.map_err(|_| bad("float list"))?;
                if self.alpha_h0.is_empty() {
                    return Err(bad("empty list"));
                }
            }
            "n" => self.n = value.parse().map_err(|_| bad("integer"))?,
            "h" => self.h = value.parse().map_err(|_| bad("float"))?,
            "z0" => self.z0 = value.parse().map_err(|_| bad("float"))?,
            "beta" => self.beta = value.parse().map_err(|_| bad("float"))?,
            "amplitude" => self.amplitude = value.parse().map_err(|_| bad("float"))?,
            "kind" => self.kind = Some(parse_kind(value)?),
            "method" => self.method = value.parse().map_err(Error::InvalidParameter)?,
            "out" => self.out = PathBuf::from(value),
            "svg" => {
                self.svg = value
                    .parse()
                    .map_err(|_| bad("bool (true|false)"))?
            }
            "cfl" => self.cfl = value.parse().map_err(|_| bad("float"))?,
            "t-end" => self.t_end = value.parse().map_err(|_| bad("float"))?,
            "output-every" => self.output_every = value.parse().map_err(|_| bad("integer"))?,
            "boundary" => {
                self.boundary = match value {
                    "impermeable" => BoundaryKind::Impermeable,
                    "pressure_release_top" => BoundaryKind::PressureReleaseTop,
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "boundary = '{other}' (expected impermeable|pressure_release_top)"
                        )))
                    }
                }
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown config key '{other}'"
                )))
            }
        }
        Ok(())
    }

    /// The fully resolved configuration as ordered pairs; this is both the
    /// `config.resolved` content and the CSV comment block.
    pub fn resolved(&self, scenario: Scenario) -> Meta {
        let alpha_list = self
            .alpha_h0
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let kind = match self.kind {
            None => "both".to_string(),
            Some(k) => kind_key(k).to_string(),
        };
        let method = match self.method {
            SolveMethod::Bvp => "bvp",
            SolveMethod::Quadrature => "quadrature",
        };
        let boundary = match self.boundary {
            BoundaryKind::Impermeable => "impermeable",
            BoundaryKind::PressureReleaseTop => "pressure_release_top",
        };
        vec![
            ("scenario".into(), scenario.name().into()),
            ("gamma".into(), self.gamma.to_string()),
            ("alpha-h0".into(), alpha_list),
            ("n".into(), self.n.to_string()),
            ("h".into(), self.h.to_string()),
            ("z0".into(), self.z0.to_string()),
            ("beta".into(), self.beta.to_string()),
            ("amplitude".into(), self.amplitude.to_string()),
            ("kind".into(), kind),
            ("method".into(), method.into()),
            ("svg".into(), self.svg.to_string()),
            ("cfl".into(), self.cfl.to_string()),
            ("t-end".into(), self.t_end.to_string()),
            ("output-every".into(), self.output_every.to_string()),
            ("boundary".into(), boundary.into()),
        ]
    }

    fn kinds(&self) -> Vec<PulseKind> {
        match self.kind {
            Some(k) => vec![k],
            None => vec![PulseKind::Gaussian, PulseKind::GaussianDerivative],
        }
    }

    fn pulse(&self, kind: PulseKind) -> PulseSpec {
        PulseSpec {
            kind,
            amplitude: self.amplitude,
            width: self.beta,
            center: self.z0,
        }
    }
}

/// Read a flat `key = value` config file ('#' starts a comment).
pub fn load_config(path: &Path) -> Result<Vec<(String, String)>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("read {}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!(
                "{}:{}: expected key = value",
                path.display(),
                lineno + 1
            ))
        })?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

/// What a run produced, for callers that want to assert on it.
#[derive(Debug, Clone)]
pub struct ScenarioReport {
    pub dir: PathBuf,
    pub files: Vec<PathBuf>,
    /// Named scalar diagnostics (leak norms, drifts, ...).
    pub notes: Vec<(String, f64)>,
}

fn prepare_dir(cfg: &ScenarioConfig, scenario: Scenario) -> Result<(PathBuf, Meta)> {
    let dir = cfg.out.join(scenario.name());
    fs::create_dir_all(&dir)
        .map_err(|e| Error::NumericalFailure(format!("mkdir {}: {e}", dir.display())))?;
    let meta = cfg.resolved(scenario);
    let mut text = String::new();
    for (k, v) in &meta {
        text.push_str(k);
        text.push_str(" = ");
        text.push_str(v);
        text.push('\n');
    }
    fs::write(dir.join("config.resolved"), text)
        .map_err(|e| Error::NumericalFailure(format!("write config.resolved: {e}")))?;
    Ok((dir, meta))
}

/// Build the background for one slope, refusing statically unstable or
/// non-positive profiles with the offending minimum in the message.
fn gated_profile(cfg: &ScenarioConfig, alpha: f64) -> Result<BackgroundProfile> {
    let params = AtmosphereParams {
        gamma: cfg.gamma,
        alpha_h0: alpha,
        h: cfg.h,
        ..Default::default()
    };
    let profile = BackgroundProfile::build(&params, cfg.n)?;
    let report = check_stability(&profile);
    if !report.pass {
        return Err(Error::UnstableBackground {
            min_nu: report.min_nu,
            z: report.z_of_min,
        });
    }
    Ok(profile)
}

fn joint_norm(p: &[f64], phi: &[f64], dz: f64) -> f64 {
    (l2_norm(p, dz).powi(2) + l2_norm(phi, dz).powi(2)).sqrt()
}

fn leak_of(part: &FieldState, total: &FieldState) -> f64 {
    let dz = total.grid.dz;
    joint_norm(&part.p, &part.phi, dz) / joint_norm(&total.p, &total.phi, dz)
}

fn maybe_svg(
    cfg: &ScenarioConfig,
    dir: &Path,
    files: &mut Vec<PathBuf>,
    name: &str,
    y_label: &str,
    curves: Vec<Curve>,
) -> Result<()> {
    if !cfg.svg {
        return Ok(());
    }
    let path = dir.join(name);
    Plot {
        title: name.trim_end_matches(".svg").replace('_', " "),
        x_label: "z / H(0)".into(),
        y_label: y_label.into(),
        curves,
    }
    .save(&path)?;
    files.push(path);
    Ok(())
}

/// Pure entropy-mode construction: P from the pulse, Phi from the
/// entropy link, zero velocity. Emits the curves per slope and pulse shape
/// and records the acoustic leak of a decompose round trip.
pub fn run_entropy_only(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let (dir, meta) = prepare_dir(cfg, Scenario::EntropyOnly)?;
    let mut files = Vec::new();
    let mut notes = Vec::new();
    for kind in cfg.kinds() {
        let mut p_curves = Vec::new();
        let mut phi_curves = Vec::new();
        for &alpha in &cfg.alpha_h0 {
            let profile = gated_profile(cfg, alpha)?;
            let n = profile.grid.n;
            let p0 = make_pulse(&cfg.pulse(kind), &profile.grid, profile.params.h0)?;
            let phi0 = entropy_phi_from_p(&p0, &profile);
            let total = FieldState::new(profile.grid.clone(), vec![0.0; n], p0, phi0, 0.0)?;
            let split = decompose(&total, &profile, cfg.method)?;
            let leak = leak_of(&split.acoustic, &total);
            let mut file_meta = meta.clone();
            file_meta.push(("this-alpha-h0".into(), alpha.to_string()));
            file_meta.push(("this-kind".into(), kind_key(kind).into()));
            file_meta.push(("acoustic-leak".into(), format!("{leak:e}")));
            let path = dir.join(format!("entropy_{}_alpha_{alpha}.csv", kind_tag(kind)));
            write_field(&path, &total, &file_meta)?;
            files.push(path);
            notes.push((format!("acoustic_leak[{}][{alpha}]", kind_tag(kind)), leak));
            p_curves.push(Curve {
                label: format!("alphaH0 = {alpha}"),
                x: profile.grid.z.clone(),
                y: total.p.clone(),
            });
            phi_curves.push(Curve {
                label: format!("alphaH0 = {alpha}"),
                x: profile.grid.z.clone(),
                y: total.phi.clone(),
            });
        }
        maybe_svg(
            cfg,
            &dir,
            &mut files,
            &format!("entropy_{}_P.svg", kind_tag(kind)),
            "P",
            p_curves,
        )?;
        maybe_svg(
            cfg,
            &dir,
            &mut files,
            &format!("entropy_{}_Phi.svg", kind_tag(kind)),
            "Phi",
            phi_curves,
        )?;
    }
    Ok(ScenarioReport { dir, files, notes })
}

/// Pure acoustic construction: Phi from the pulse, P from the acoustic
/// link, zero velocity. Records the entropy leak of a decompose round trip.
pub fn run_sound_only(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let (dir, meta) = prepare_dir(cfg, Scenario::SoundOnly)?;
    let mut files = Vec::new();
    let mut notes = Vec::new();
    for kind in cfg.kinds() {
        let mut p_curves = Vec::new();
        for &alpha in &cfg.alpha_h0 {
            let profile = gated_profile(cfg, alpha)?;
            let n = profile.grid.n;
            let phi_a = make_pulse(&cfg.pulse(kind), &profile.grid, profile.params.h0)?;
            let p_a = acoustic_p_from_phi(&phi_a, &profile)?;
            let total = FieldState::new(profile.grid.clone(), vec![0.0; n], p_a, phi_a, 0.0)?;
            let split = decompose(&total, &profile, cfg.method)?;
            let leak = leak_of(&split.entropy, &total);
            let mut file_meta = meta.clone();
            file_meta.push(("this-alpha-h0".into(), alpha.to_string()));
            file_meta.push(("this-kind".into(), kind_key(kind).into()));
            file_meta.push(("entropy-leak".into(), format!("{leak:e}")));
            let path = dir.join(format!("sound_{}_alpha_{alpha}.csv", kind_tag(kind)));
            write_field(&path, &total, &file_meta)?;
            files.push(path);
            notes.push((format!("entropy_leak[{}][{alpha}]", kind_tag(kind)), leak));
            p_curves.push(Curve {
                label: format!("alphaH0 = {alpha}"),
                x: profile.grid.z.clone(),
                y: total.p.clone(),
            });
        }
        maybe_svg(
            cfg,
            &dir,
            &mut files,
            &format!("sound_{}_P.svg", kind_tag(kind)),
            "P",
            p_curves,
        )?;
    }
    Ok(ScenarioReport { dir, files, notes })
}

/// Cancelling construction: entropy part from the pulse, acoustic part with
/// Phi_a = -Phi_0, so the total carries zero Phi by construction. Emits the
/// constructed split and checks decompose recovers it.
pub fn run_zero_total_entropy(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let (dir, meta) = prepare_dir(cfg, Scenario::ZeroTotalEntropy)?;
    let mut files = Vec::new();
    let mut notes = Vec::new();
    for kind in cfg.kinds() {
        let mut curves = Vec::new();
        for &alpha in &cfg.alpha_h0 {
            let profile = gated_profile(cfg, alpha)?;
            let n = profile.grid.n;
            let p0 = make_pulse(&cfg.pulse(kind), &profile.grid, profile.params.h0)?;
            let phi0 = entropy_phi_from_p(&p0, &profile);
            let phi_a: Vec<f64> = phi0.iter().map(|v| -v).collect();
            let p_a = acoustic_p_from_phi(&phi_a, &profile)?;
            let constructed = ModeSplit {
                acoustic: FieldState::new(
                    profile.grid.clone(),
                    vec![0.0; n],
                    p_a.clone(),
                    phi_a.clone(),
                    0.0,
                )?,
                entropy: FieldState::new(
                    profile.grid.clone(),
                    vec![0.0; n],
                    p0.clone(),
                    phi0.clone(),
                    0.0,
                )?,
            };
            let total = FieldState::new(
                profile.grid.clone(),
                vec![0.0; n],
                (0..n).map(|i| p0[i] + p_a[i]).collect(),
                (0..n).map(|i| phi0[i] + phi_a[i]).collect(),
                0.0,
            )?;
            let max_phi = total.phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if max_phi > 1e-12 {
                return Err(Error::NumericalFailure(format!(
                    "total Phi should cancel, max |Phi| = {max_phi}"
                )));
            }
            let split = decompose(&total, &profile, cfg.method)?;
            let dz = profile.grid.dz;
            let diff_phi: Vec<f64> = (0..n)
                .map(|i| split.acoustic.phi[i] - constructed.acoustic.phi[i])
                .collect();
            let diff_p: Vec<f64> = (0..n)
                .map(|i| split.acoustic.p[i] - constructed.acoustic.p[i])
                .collect();
            let recovery = joint_norm(&diff_p, &diff_phi, dz)
                / joint_norm(&constructed.acoustic.p, &constructed.acoustic.phi, dz);
            let mut file_meta = meta.clone();
            file_meta.push(("this-alpha-h0".into(), alpha.to_string()));
            file_meta.push(("this-kind".into(), kind_key(kind).into()));
            file_meta.push(("recovery-error".into(), format!("{recovery:e}")));
            let path = dir.join(format!("zero_entropy_{}_alpha_{alpha}.csv", kind_tag(kind)));
            write_modesplit(&path, &constructed, &file_meta)?;
            files.push(path);
            notes.push((format!("recovery[{}][{alpha}]", kind_tag(kind)), recovery));
            curves.push(Curve {
                label: format!("P_a, alphaH0 = {alpha}"),
                x: profile.grid.z.clone(),
                y: p_a,
            });
        }
        maybe_svg(
            cfg,
            &dir,
            &mut files,
            &format!("zero_entropy_{}_Pa.svg", kind_tag(kind)),
            "P_a",
            curves,
        )?;
    }
    Ok(ScenarioReport { dir, files, notes })
}

/// Evolve mixed initial data, decompose every retained snapshot, and log the
/// per-time energy split and the entropy-part drift.
pub fn run_evolve_verify(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let (dir, meta) = prepare_dir(cfg, Scenario::EvolveVerify)?;
    let mut files = Vec::new();
    let mut notes = Vec::new();
    let alpha = cfg.alpha_h0[0];
    let profile = gated_profile(cfg, alpha)?;
    let n = profile.grid.n;
    let kind = cfg.kind.unwrap_or(PulseKind::Gaussian);
    // mixed data: an entropy pulse plus a right-running acoustic pulse
    let p0 = make_pulse(&cfg.pulse(kind), &profile.grid, profile.params.h0)?;
    let phi0 = entropy_phi_from_p(&p0, &profile);
    let ac = make_pulse(
        &PulseSpec {
            amplitude: 0.5 * cfg.amplitude,
            ..cfg.pulse(PulseKind::Gaussian)
        },
        &profile.grid,
        profile.params.h0,
    )?;
    let c0 = (profile.params.gamma * profile.params.g * profile.params.h0).sqrt();
    let initial = FieldState::new(
        profile.grid.clone(),
        ac.iter().map(|v| v / c0).collect(),
        (0..n).map(|i| p0[i] + ac[i]).collect(),
        phi0,
        0.0,
    )?;
    let output_every = if cfg.output_every > 0 {
        cfg.output_every
    } else {
        let nsteps = (cfg.t_end / stable_dt(&profile, cfg.cfl)).ceil() as usize;
        (nsteps / 20).max(1)
    };
    let evolve_cfg = EvolveConfig {
        cfl: cfg.cfl,
        t_end: cfg.t_end,
        output_every,
        boundary: cfg.boundary,
    };
    let out = evolve_run(&initial, &profile, &evolve_cfg)?;
    let split0 = decompose(&out.snapshots[0], &profile, cfg.method)?;
    let norm0 = joint_norm(&split0.entropy.p, &split0.entropy.phi, profile.grid.dz);
    let e0 = out.energy_log[0].1;
    let mut rows = Vec::new();
    let mut drift_lines = vec!["t,entropy_drift,energy_drift".to_string()];
    let mut max_entropy_drift = 0.0f64;
    let mut max_energy_drift = 0.0f64;
    for (idx, snap) in out.snapshots.iter().enumerate() {
        let split = decompose(snap, &profile, cfg.method)?;
        let phys = to_physical(snap, &profile)?;
        let breakdown = crate::energetics::physical_energy_breakdown(&phys, &profile)?;
        let cross = inner_product(&split.acoustic, &split.entropy, &profile)?;
        rows.push(EnergyRow {
            t: snap.t,
            e_total: out.energy_log[idx].1,
            e_kinetic: breakdown.kinetic,
            e_baro: breakdown.baro,
            e_thermal: breakdown.thermal,
            e_acoustic: transformed_energy(&split.acoustic, &profile)?,
            e_entropy: transformed_energy(&split.entropy, &profile)?,
            cross,
        });
        let dp: Vec<f64> = (0..n)
            .map(|i| split.entropy.p[i] - split0.entropy.p[i])
            .collect();
        let dphi: Vec<f64> = (0..n)
            .map(|i| split.entropy.phi[i] - split0.entropy.phi[i])
            .collect();
        let entropy_drift = joint_norm(&dp, &dphi, profile.grid.dz) / norm0;
        let energy_drift = ((out.energy_log[idx].1 - e0) / e0).abs();
        max_entropy_drift = max_entropy_drift.max(entropy_drift);
        max_energy_drift = max_energy_drift.max(energy_drift);
        drift_lines.push(format!("{},{entropy_drift},{energy_drift}", snap.t));
        let path = dir.join(format!("snapshot_{idx:04}.csv"));
        let mut file_meta = meta.clone();
        file_meta.push(("this-alpha-h0".into(), alpha.to_string()));
        file_meta.push(("t".into(), snap.t.to_string()));
        write_field(&path, snap, &file_meta)?;
        files.push(path);
    }
    let energy_path = dir.join("energy_log.csv");
    write_energy_log(&energy_path, &rows, &meta)?;
    files.push(energy_path);
    let drift_path = dir.join("drift.csv");
    fs::write(&drift_path, drift_lines.join("\n") + "\n")
        .map_err(|e| Error::NumericalFailure(format!("write drift.csv: {e}")))?;
    files.push(drift_path);
    notes.push(("max_entropy_drift".into(), max_entropy_drift));
    notes.push(("max_energy_drift".into(), max_energy_drift));
    notes.push(("snapshots".into(), out.snapshots.len() as f64));
    Ok(ScenarioReport { dir, files, notes })
}

/// Frequency roots over a fixed wavevector sweep: a vertical leg
/// (kx = ky = 0) then a horizontal leg (ky = kz = 0), 201 samples each on
/// [0, 20] in units of 1/H(0). Constant-temperature backgrounds only.
pub fn run_dispersion_sweep(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let (dir, meta) = prepare_dir(cfg, Scenario::DispersionSweep)?;
    let params = AtmosphereParams {
        gamma: cfg.gamma,
        alpha_h0: cfg.alpha_h0[0],
        h: cfg.h,
        ..Default::default()
    };
    let mut rows = Vec::new();
    let samples = 201;
    for i in 0..samples {
        let k = 20.0 * i as f64 / (samples - 1) as f64;
        rows.push(omega_roots(0.0, 0.0, k, &params)?);
    }
    for i in 0..samples {
        let k = 20.0 * i as f64 / (samples - 1) as f64;
        rows.push(omega_roots(k, 0.0, 0.0, &params)?);
    }
    let path = dir.join("dispersion.csv");
    write_dispersion(&path, &rows, &meta)?;
    let mut files = vec![path];
    if cfg.svg {
        let leg = |lo: usize, label: &str, pick: &dyn Fn(&crate::dispersion::DispersionRoots) -> f64,
                   which: usize| Curve {
            label: label.into(),
            x: rows[lo..lo + samples].iter().map(|r| r.k[which]).collect(),
            y: rows[lo..lo + samples].iter().map(pick).collect(),
        };
        let path = dir.join("dispersion.svg");
        Plot {
            title: "dispersion roots".into(),
            x_label: "k H(0)".into(),
            y_label: "omega".into(),
            curves: vec![
                leg(0, "omega1 (kz)", &|r| r.omega12, 2),
                leg(samples, "omega1 (kx)", &|r| r.omega12, 0),
                leg(samples, "omega3 (kx)", &|r| r.omega34, 0),
            ],
        }
        .save(&path)?;
        files.push(path);
    }
    Ok(ScenarioReport {
        dir,
        files,
        notes: Vec::new(),
    })
}

/// Equilibrium profile tables, one per slope.
pub fn run_profile_dump(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let (dir, meta) = prepare_dir(cfg, Scenario::ProfileDump)?;
    let mut files = Vec::new();
    let mut notes = Vec::new();
    for &alpha in &cfg.alpha_h0 {
        let profile = gated_profile(cfg, alpha)?;
        let mut file_meta = meta.clone();
        file_meta.push(("this-alpha-h0".into(), alpha.to_string()));
        let path = dir.join(format!("profile_alpha_{alpha}.csv"));
        write_profile(&path, &profile, &file_meta)?;
        files.push(path);
        notes.push((format!("nu[{alpha}]"), profile.params.nu()));
    }
    Ok(ScenarioReport { dir, files, notes })
}

/// Dispatch on the configured scenario.
pub fn run(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    match cfg.scenario {
        Some(Scenario::EntropyOnly) => run_entropy_only(cfg),
        Some(Scenario::SoundOnly) => run_sound_only(cfg),
        Some(Scenario::ZeroTotalEntropy) => run_zero_total_entropy(cfg),
        Some(Scenario::EvolveVerify) => run_evolve_verify(cfg),
        Some(Scenario::DispersionSweep) => run_dispersion_sweep(cfg),
        Some(Scenario::ProfileDump) => run_profile_dump(cfg),
        None => Err(Error::InvalidParameter("no scenario selected".into())),
    }
}
