use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use stratwave::decompose::decompose;
use stratwave::io::{field_from_table, read_table, write_modesplit};
use stratwave::scenario::{
    load_config, run_dispersion_sweep, run_entropy_only, run_evolve_verify, run_profile_dump,
    run_sound_only, run_zero_total_entropy, Scenario, ScenarioConfig, ScenarioReport,
};
use stratwave::{AtmosphereParams, BackgroundProfile, Error};

/// Acoustic/entropy mode decomposition over a stratified gas column:
/// reproducible pulse scenarios, verification runs, and CSV/SVG output.
#[derive(Parser)]
#[command(name = "stratwave", version, disable_help_subcommand = true)]
struct Cli {
    /// Flat key = value config file; flags override file keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Specific-heats ratio (> 1).
    #[arg(long, global = true)]
    gamma: Option<String>,

    /// Scale-height slope alpha H(0); comma list runs each value.
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha_h0: Option<String>,

    /// Grid points.
    #[arg(long, global = true)]
    n: Option<String>,

    /// Domain height in units of H(0).
    #[arg(long, global = true)]
    h: Option<String>,

    /// Pulse center in units of H(0).
    #[arg(long, global = true, allow_hyphen_values = true)]
    z0: Option<String>,

    /// Pulse width beta in units of H(0).
    #[arg(long, global = true)]
    beta: Option<String>,

    /// Pulse amplitude.
    #[arg(long, global = true, allow_hyphen_values = true)]
    amplitude: Option<String>,

    /// Pulse shape: gaussian | derivative (default: both).
    #[arg(long, global = true)]
    kind: Option<String>,

    /// Decomposition solver: bvp | quadrature.
    #[arg(long, global = true)]
    method: Option<String>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Also write SVG quick-look plots.
    #[arg(long, global = true)]
    svg: bool,

    /// Courant factor for evolution runs.
    #[arg(long, global = true)]
    cfl: Option<String>,

    /// Evolution end time in units of sqrt(H(0)/g).
    #[arg(long, global = true)]
    t_end: Option<String>,

    /// Steps between retained snapshots (0 = automatic).
    #[arg(long, global = true)]
    output_every: Option<String>,

    /// Wall condition: impermeable | pressure_release_top.
    #[arg(long, global = true)]
    boundary: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the equilibrium profile tables.
    Profile,
    /// Sweep the closed-form frequency roots (constant temperature only).
    Dispersion,
    /// Pure entropy-mode pulse construction and round-trip check.
    EntropyOnly,
    /// Pure acoustic pulse construction and round-trip check.
    SoundOnly,
    /// Cancelling construction with zero total entropy variable.
    ZeroEntropy,
    /// Evolve mixed initial data and verify the split at every snapshot.
    Evolve,
    /// Split a stored field table (z,Uz,P,Phi) into its two parts.
    Decompose {
        /// Input CSV in the field format.
        field: PathBuf,
    },
}

fn build_config(cli: &Cli) -> Result<ScenarioConfig, Error> {
    let mut cfg = ScenarioConfig::default();
    if let Some(path) = &cli.config {
        for (k, v) in load_config(path)? {
            cfg.apply(&k, &v)?;
        }
    }
    let overrides: [(&str, &Option<String>); 13] = [
        ("gamma", &cli.gamma),
        ("alpha-h0", &cli.alpha_h0),
        ("n", &cli.n),
        ("h", &cli.h),
        ("z0", &cli.z0),
        ("beta", &cli.beta),
        ("amplitude", &cli.amplitude),
        ("kind", &cli.kind),
        ("method", &cli.method),
        ("out", &cli.out),
        ("cfl", &cli.cfl),
        ("t-end", &cli.t_end),
        ("output-every", &cli.output_every),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.apply(key, v)?;
        }
    }
    if let Some(b) = &cli.boundary {
        cfg.apply("boundary", b)?;
    }
    if cli.svg {
        cfg.apply("svg", "true")?;
    }
    Ok(cfg)
}

fn report_lines(report: &ScenarioReport) {
    println!("wrote {} file(s) under {}", report.files.len(), report.dir.display());
    for (name, value) in &report.notes {
        println!("{name} = {value:e}");
    }
}

fn run_decompose(cfg: &ScenarioConfig, field: &PathBuf) -> Result<(), Error> {
    let table = read_table(field)?;
    let state = field_from_table(&table)?;
    let params = AtmosphereParams {
        gamma: cfg.gamma,
        alpha_h0: cfg.alpha_h0[0],
        h: state.grid.z[state.grid.n - 1],
        ..Default::default()
    };
    let profile = BackgroundProfile::build(&params, state.grid.n)?;
    let split = decompose(&state, &profile, cfg.method)?;
    std::fs::create_dir_all(&cfg.out)
        .map_err(|e| Error::NumericalFailure(format!("mkdir {}: {e}", cfg.out.display())))?;
    let out = cfg.out.join("modesplit.csv");
    let meta = cfg.resolved(Scenario::ProfileDump)
        .into_iter()
        .filter(|(k, _)| k != "scenario")
        .collect::<Vec<_>>();
    write_modesplit(&out, &split, &meta)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn real_main() -> Result<(), Error> {
    let cli = Cli::parse();
    let cfg = build_config(&cli)?;
    match &cli.command {
        Command::Profile => report_lines(&run_profile_dump(&cfg)?),
        Command::Dispersion => report_lines(&run_dispersion_sweep(&cfg)?),
        Command::EntropyOnly => report_lines(&run_entropy_only(&cfg)?),
        Command::SoundOnly => report_lines(&run_sound_only(&cfg)?),
        Command::ZeroEntropy => report_lines(&run_zero_total_entropy(&cfg)?),
        Command::Evolve => report_lines(&run_evolve_verify(&cfg)?),
        Command::Decompose { field } => run_decompose(&cfg, field)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // one line, greppable: "error: <message>"
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
