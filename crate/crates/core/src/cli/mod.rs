//! Command-line front end.
//!
//! Subcommands read a JSON [`RunConfig`](config::RunConfig) and print
//! `key=value` lines or write CSV tables. Exit codes: 0 on success, 1 for
//! configuration or usage errors, 2 for numerical failures.

pub mod config;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::constants::Constants;
use crate::formulary::{
    delay_displacement, gravity_shifts, photon_stream_ledger, planck_length, FormulaError,
};
use crate::model::{LegMode, Scenario};
use crate::solver::{phase_trace, traverse, SolverError};
use crate::spectrum::{
    bessel_line_weights, line_spectrum, modulation_index, synthesize_baseband, SpectrumError,
};
use crate::sweep::{omega_grid, sweep_signal_ratio_par, tau_over_period, SweepError};

use config::{load_config, ConfigError};
use table::{format_float, write_csv, write_csv_to, CsvTable, TableError};

pub use config::RunConfig;

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "MIRRORPAIR_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mirrorpair",
    version,
    about = "Retarded-time phase of a photon crossing a moving, rigidly connected mirror pair"
)]
struct Cli {
    /// Worker threads for sweeps. Output does not depend on this.
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one wavecrest's transit and print the leg times and phase.
    Traverse {
        #[command(flatten)]
        input: ScenarioArgs,
        /// Emission time of the wavecrest, s.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t_emit: f64,
    },
    /// Phase perturbation over the emission grid of the `trace` block (CSV).
    Trace {
        #[command(flatten)]
        input: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Signal Ratio over the frequency grid of the `sweep` block (CSV).
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Mirror-to-mirror leg equation. `both` writes one file per mode.
        #[arg(long, value_enum)]
        mode: Option<SweepMode>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sideband spectrum of the transmitted photon against the Bessel weights (CSV).
    Spectrum {
        #[command(flatten)]
        input: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Gravitational frequency shifts, delay displacement and Planck ratio.
    Gravity {
        #[arg(long)]
        config: PathBuf,
    },
    /// Center-of-mass ledger for a stream of photons.
    Ledger {
        #[arg(long)]
        config: PathBuf,
    },
    /// Physical constants in use.
    Constants,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the scenario's leg mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Geometric,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepMode {
    Geometric,
    Literal,
    Both,
}

impl From<ModeArg> for LegMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Geometric => LegMode::Geometric,
            ModeArg::Literal => LegMode::Literal,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("output: {0}")]
    Output(#[from] TableError),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Threads(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Output(_) | CliError::Io(_) | CliError::Threads(_) => {
                EXIT_CONFIG
            }
            CliError::Solver(_)
            | CliError::Sweep(_)
            | CliError::Spectrum(_)
            | CliError::Formula(_) => EXIT_NUMERICAL,
        }
    }
}

/// Run the command line `argv` (program name first) against the process's
/// standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Traverse { input, t_emit } => {
            let (_, s) = load_scenario(&input)?;
            let r = traverse(&s, t_emit)?;
            let kv = [
                ("t_emit", t_emit),
                ("t1", r.t1),
                ("t2", r.t2),
                ("t3", r.t3),
                ("dt1", r.dt1),
                ("dt2", r.dt2),
                ("dt3", r.dt3),
                ("phase", r.phase),
                ("phase_perturbation", r.phase_perturbation),
            ];
            print_kv(out, &kv)?;
        }
        Command::Trace { input, output } => {
            let (cfg, s) = load_scenario(&input)?;
            let block = cfg.require_trace()?;
            let grid = linspace(block.t_start, block.t_end, block.n_samples);
            let trace = phase_trace(&s, &grid)?;
            let mut table = CsvTable::new(["t_emit", "phase_perturbation"]);
            for (&t, &p) in trace.t_emit().iter().zip(trace.phase_perturbation()) {
                table.push_row(vec![t, p])?;
            }
            emit(&table, output.out.as_deref(), out)?;
        }
        Command::Sweep {
            config,
            mode,
            output,
        } => {
            let cfg = load_config(&config)?;
            let block = *cfg.require_sweep()?;
            let grid = omega_grid(
                block.omega_min,
                block.omega_max,
                block.n_points,
                block.scale,
            );
            let modes: Vec<LegMode> = match mode {
                None => vec![cfg.scenario.mode()],
                Some(SweepMode::Geometric) => vec![LegMode::Geometric],
                Some(SweepMode::Literal) => vec![LegMode::Literal],
                Some(SweepMode::Both) => vec![LegMode::Geometric, LegMode::Literal],
            };
            let pool = thread_pool(cli.threads)?;
            for m in &modes {
                let s = cfg.scenario.with_mode(*m);
                let points =
                    pool.install(|| sweep_signal_ratio_par(&s, &grid, block.samples_per_period))?;
                let mut table =
                    CsvTable::new(["Omega", "tau_over_T", "pair_amp", "single_amp", "ratio"]);
                for (&w, p) in grid.iter().zip(&points) {
                    match p {
                        Ok(p) => table.push_row(vec![
                            p.omega,
                            p.tau_over_t,
                            p.pair_amp,
                            p.single_amp,
                            p.ratio,
                        ])?,
                        Err(e) => {
                            writeln!(err, "warning: Omega={} skipped: {e}", format_float(w))?;
                            let nan = f64::NAN;
                            table.push_row(vec![
                                w,
                                tau_over_period(s.separation(), w),
                                nan,
                                nan,
                                nan,
                            ])?;
                        }
                    }
                }
                let path = match (&output.out, modes.len()) {
                    (Some(p), 1) => Some(p.clone()),
                    (Some(p), _) => Some(with_mode_suffix(p, *m)),
                    (None, _) => None,
                };
                emit(&table, path.as_deref(), out)?;
            }
        }
        Command::Spectrum { input, output } => {
            let (cfg, s) = load_scenario(&input)?;
            let block = *cfg.require_spectrum()?;
            let period = s.trajectory().period().ok_or(SweepError::NotHarmonic)?;
            let grid: Vec<f64> = (0..=block.n_samples)
                .map(|j| period * j as f64 / block.n_samples as f64)
                .collect();
            let trace = phase_trace(&s, &grid)?;
            let beta = modulation_index(&trace)?;
            let field = synthesize_baseband(&trace, block.n_samples)?;
            let lines = line_spectrum(&field, block.n_max)?;
            let weights = bessel_line_weights(beta, block.n_max)?;
            let mut table =
                CsvTable::new(["n", "freq_offset", "power", "bessel_weight", "deviation"]);
            for (l, &w) in lines.iter().zip(&weights) {
                table.push_row(vec![l.n as f64, l.freq_offset, l.power, w, l.power - w])?;
            }
            emit(&table, output.out.as_deref(), out)?;
        }
        Command::Gravity { config } => {
            let cfg = load_config(&config)?;
            let block = *cfg.require_gravity()?;
            let s = &cfg.scenario;
            let shifts = gravity_shifts(s.omega0(), block.g, s.separation(), block.span, s.mass())?;
            let dx = delay_displacement(s.separation(), s.omega0(), s.mass())?;
            let lp = planck_length();
            let kv = [
                ("d_omega_EP", shifts.d_omega_ep),
                ("d_omega_displaced", shifts.d_omega_displaced),
                ("d_omega_L", shifts.d_omega_l),
                ("residual", shifts.residual),
                (
                    "d_omega_displaced_via_mass",
                    shifts.d_omega_displaced_via_mass,
                ),
                (
                    "d_omega_displaced_over_omega0",
                    shifts.d_omega_displaced / s.omega0(),
                ),
                ("delay_displacement", dx),
                ("planck_length", lp),
                ("delay_displacement_over_planck_length", dx / lp),
            ];
            print_kv(out, &kv)?;
        }
        Command::Ledger { config } => {
            let cfg = load_config(&config)?;
            let block = *cfg.require_ledger()?;
            let s = &cfg.scenario;
            let r = photon_stream_ledger(
                block.n_photons,
                s.omega0(),
                s.separation(),
                s.mass(),
                block.frame_mass,
                block.epsilon,
            )?;
            writeln!(out, "n_photons={}", r.n_photons)?;
            let kv = [
                ("platform_disp", r.platform_disp),
                ("frame_disp", r.frame_disp),
                ("cm_residual", r.cm_residual),
                ("classical_platform_disp", r.classical_platform_disp),
                ("quantum_classical_gap", r.quantum_classical_gap),
                ("absorbed_recoil_equiv_time", r.absorbed_recoil_equiv_time),
            ];
            print_kv(out, &kv)?;
        }
        Command::Constants => {
            let k = Constants::default();
            let kv = [
                ("c", k.c),
                ("hbar", k.hbar),
                ("G", k.big_g),
                ("g0", k.g0),
                ("planck_length", planck_length()),
            ];
            print_kv(out, &kv)?;
        }
    }
    Ok(())
}

fn load_scenario(input: &ScenarioArgs) -> Result<(RunConfig, Scenario), CliError> {
    let cfg = load_config(&input.config)?;
    let s = match input.mode {
        Some(m) => cfg.scenario.with_mode(m.into()),
        None => cfg.scenario,
    };
    Ok((cfg, s))
}

fn print_kv(out: &mut dyn Write, kv: &[(&str, f64)]) -> std::io::Result<()> {
    for (k, v) in kv {
        writeln!(out, "{k}={}", format_float(*v))?;
    }
    Ok(())
}

fn emit(table: &CsvTable, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => write_csv(table, p)?,
        None => write_csv_to(table, out)?,
    }
    Ok(())
}

fn with_mode_suffix(path: &Path, mode: LegMode) -> PathBuf {
    let suffix = match mode {
        LegMode::Geometric => "geometric",
        LegMode::Literal => "literal",
    };
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}

fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| start + (end - start) * (i as f64 / last))
        .collect()
}

fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Threads("--threads must be at least 1".into()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Threads(e.to_string()))
}
