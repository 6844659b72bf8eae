//! `catdecay`: data files for squeezing, photon statistics, Wigner functions
//! and the interference decay factor of a damped cat state, plus the oracle
//! verification battery.

mod output;
mod parse;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use catdecay::battery::{run_battery, BatteryConfig, CheckGroup};
use catdecay::format::sig17;
use catdecay::observables::DEFAULT_DECOHERENCE_EPSILON;
use catdecay::{
    decoherence_threshold_alpha, grid_integral, interference_decay_factor, negativity_volume,
    photon_number_distribution, squeezing_factors, wigner_grid, CatState, Complex64, DecayedCat, GridSpec,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{json_string, write_atomic, Cell, Table};

const NMAX_ENV: &str = "CATDECAY_NMAX_OVERRIDE";

const SWEEP_HELP: &str = "START:STOP:STEPS (inclusive endpoints, STEPS counts points; X:X:1 is a single point), \
                          a comma-separated list, or a single number";

#[derive(Parser)]
#[command(name = "catdecay", version, about = "Decoherence of Schrödinger-cat states in a lossy cavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Squeezing factors S1, S2 against tau (CSV `tau,s1,s2`).
    Squeeze {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_parser = sweep, allow_hyphen_values = true, help = SWEEP_HELP)]
        tau: Sweep,
        /// Put every amplitude in one table with suffixed columns instead of
        /// one file per amplitude.
        #[arg(long)]
        wide: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Photon-number distribution (CSV `n,p`; one `p_tau...` column per tau
    /// when several are given).
    Pnd {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_parser = sweep, allow_hyphen_values = true, help = SWEEP_HELP)]
        tau: Sweep,
        /// Largest photon number listed [default: cutoff rule, or $CATDECAY_NMAX_OVERRIDE]
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Wigner function on a grid (CSV `x,y,w` or JSON) plus a summary line.
    Wigner {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        /// XMIN:XMAX:NX[,YMIN:YMAX:NY]; y copies x when omitted
        #[arg(long, value_parser = parse::parse_grid, allow_hyphen_values = true, default_value = "-4:4:129")]
        grid: GridSpec,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Interference decay factor f(alpha) = exp(-2 alpha^2 (1 - e^-tau)).
    Falpha {
        /// Amplitude sweep
        #[arg(long, value_parser = sweep, allow_hyphen_values = true, default_value = "0:5:501")]
        alphas: Sweep,
        #[arg(long, value_parser = sweep, allow_hyphen_values = true, default_value = "0.1,0.3,0.8,1.2",
              help = SWEEP_HELP)]
        tau: Sweep,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Smallest integer amplitude with f <= epsilon (exit 4 when none).
    Threshold {
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = DEFAULT_DECOHERENCE_EPSILON)]
        epsilon: f64,
        /// Largest amplitude on the integer grid 1..=ALPHA_MAX
        #[arg(long, default_value_t = 10)]
        alpha_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the oracle battery (exit 1 if any check fails).
    Verify {
        /// Restrict to a group: specfun, dynamics, observables, wigner
        #[arg(long, value_parser = |s: &str| s.parse::<CheckGroup>())]
        only: Vec<CheckGroup>,
        /// Force the number-basis cutoff [default: $CATDECAY_NMAX_OVERRIDE, else the cutoff rule]
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Args)]
struct StateArgs {
    #[arg(long, value_enum, default_value_t = StateKind::Ecs)]
    state: StateKind,
    /// RE[,IM]; repeat for several amplitudes
    #[arg(long, required = true, value_parser = parse::parse_alpha, allow_hyphen_values = true)]
    alpha: Vec<Complex64>,
    /// Relative phase in radians (only with --state custom)
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
}

#[derive(Args)]
struct OutArgs {
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StateKind {
    Ecs,
    Ocs,
    Yss,
    Custom,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone)]
struct Sweep(Vec<f64>);

fn sweep(s: &str) -> Result<Sweep, String> {
    parse::parse_sweep(s).map(Sweep)
}

enum Failure {
    Config(String),
    Io(String),
    ChecksFailed,
    NoThreshold,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::ChecksFailed => 1,
            Failure::Config(_) => 2,
            Failure::Io(_) => 3,
            Failure::NoThreshold => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "invalid configuration: {m}"),
            Failure::Io(m) => write!(f, "i/o failure: {m}"),
            Failure::ChecksFailed => f.write_str("verification failed"),
            Failure::NoThreshold => f.write_str("no grid amplitude reaches the threshold"),
        }
    }
}

impl From<catdecay::Error> for Failure {
    fn from(e: catdecay::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    // the verify report already carries per-check truncation diagnostics
    let level = if matches!(cli.command, Command::Verify { .. }) { "error" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !matches!(failure, Failure::ChecksFailed | Failure::NoThreshold) {
                eprintln!("catdecay: {failure}");
            }
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Squeeze { state, tau, wide, out } => cmd_squeeze(&state, &tau.0, wide, &out),
        Command::Pnd {
            state,
            tau,
            n_max,
            out,
        } => cmd_pnd(&state, &tau.0, n_max, &out),
        Command::Wigner { state, tau, grid, out } => cmd_wigner(&state, tau, &grid, &out),
        Command::Falpha { alphas, tau, out } => cmd_falpha(&alphas.0, &tau.0, &out),
        Command::Threshold {
            tau,
            epsilon,
            alpha_max,
            format,
        } => cmd_threshold(tau, epsilon, alpha_max, format),
        Command::Verify { only, nmax, format } => cmd_verify(only, nmax, format),
    }
}

fn build_cat(args: &StateArgs, alpha: Complex64) -> Result<CatState, Failure> {
    if args.phi.is_some() && args.state != StateKind::Custom {
        return Err(Failure::Config("--phi is only meaningful with --state custom".into()));
    }
    let cat = match args.state {
        StateKind::Ecs => CatState::even(alpha)?,
        StateKind::Ocs => CatState::odd(alpha)?,
        StateKind::Yss => CatState::yurke_stoler(alpha)?,
        StateKind::Custom => {
            let phi = args
                .phi
                .ok_or_else(|| Failure::Config("--state custom needs --phi".into()))?;
            if !phi.is_finite() {
                return Err(Failure::Config("--phi must be finite".into()));
            }
            CatState::new(alpha, phi)?
        }
    };
    Ok(cat)
}

fn single_alpha(args: &StateArgs) -> Result<Complex64, Failure> {
    match args.alpha.as_slice() {
        [a] => Ok(*a),
        _ => Err(Failure::Config("this command takes exactly one --alpha".into())),
    }
}

fn alpha_label(a: Complex64) -> String {
    if a.im == 0.0 {
        format!("{}", a.re)
    } else {
        format!("{}{:+}i", a.re, a.im)
    }
}

fn check_taus(taus: &[f64]) -> Outcome {
    match taus.iter().find(|t| !(**t >= 0.0)) {
        Some(t) => Err(Failure::Config(format!("tau must be non-negative, got {t}"))),
        None => Ok(()),
    }
}

fn env_nmax() -> Result<Option<usize>, Failure> {
    match std::env::var(NMAX_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Config(format!("{NMAX_ENV}='{v}' is not a non-negative integer"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Failure::Config(format!("{NMAX_ENV}: {e}"))),
    }
}

fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn emit(path: Option<&Path>, contents: &str) -> Outcome {
    match path {
        Some(p) => write_atomic(p, contents).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => print_stdout(contents),
    }
}

fn print_stdout(contents: &str) -> Outcome {
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(contents.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| Failure::Io(format!("stdout: {e}")))
}

/// `dir/name.ext` → `dir/name_alpha<label>.ext`.
fn suffixed_path(path: &Path, label: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_alpha{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}_alpha{label}"),
    };
    path.with_file_name(name)
}

fn cmd_squeeze(state: &StateArgs, taus: &[f64], wide: bool, out: &OutArgs) -> Outcome {
    check_taus(taus)?;
    let mut series = Vec::new();
    for &alpha in &state.alpha {
        let cat = build_cat(state, alpha)?;
        let mut rows = Vec::with_capacity(taus.len());
        for &tau in taus {
            let s = squeezing_factors(&DecayedCat::new(cat, tau)?);
            rows.push((s.s1, s.s2));
        }
        series.push((alpha_label(alpha), rows));
    }

    let table_for = |rows: &[(f64, f64)]| {
        let mut t = Table::new(["tau", "s1", "s2"]);
        for (&tau, &(s1, s2)) in taus.iter().zip(rows) {
            t.rows.push(vec![Cell::Num(tau), Cell::Num(s1), Cell::Num(s2)]);
        }
        t
    };

    if series.len() == 1 {
        return emit(out.out.as_deref(), &render(&table_for(&series[0].1), out.format));
    }
    if wide {
        let mut columns = vec!["tau".to_string()];
        for (label, _) in &series {
            columns.push(format!("s1_alpha{label}"));
            columns.push(format!("s2_alpha{label}"));
        }
        let mut t = Table::new(columns);
        for (i, &tau) in taus.iter().enumerate() {
            let mut row = vec![Cell::Num(tau)];
            for (_, rows) in &series {
                row.push(Cell::Num(rows[i].0));
                row.push(Cell::Num(rows[i].1));
            }
            t.rows.push(row);
        }
        return emit(out.out.as_deref(), &render(&t, out.format));
    }
    let Some(path) = out.out.as_deref() else {
        return Err(Failure::Config("several --alpha values need --wide or --out".into()));
    };
    // render everything before touching the filesystem
    let files: Vec<(PathBuf, String)> = series
        .iter()
        .map(|(label, rows)| (suffixed_path(path, label), render(&table_for(rows), out.format)))
        .collect();
    for (p, contents) in &files {
        emit(Some(p), contents)?;
    }
    Ok(())
}

fn cmd_pnd(state: &StateArgs, taus: &[f64], n_max: Option<usize>, out: &OutArgs) -> Outcome {
    check_taus(taus)?;
    let cat = build_cat(state, single_alpha(state)?)?;
    let n_max = match n_max {
        Some(n) => n,
        None => env_nmax()?.unwrap_or_else(|| catdecay::truncation_n_max(cat.alpha().norm())),
    };
    let mut columns = vec!["n".to_string()];
    let mut dists = Vec::new();
    for &tau in taus {
        dists.push(photon_number_distribution(&DecayedCat::new(cat, tau)?, n_max)?);
        columns.push(if taus.len() == 1 { "p".to_string() } else { format!("p_tau{tau}") });
    }
    let mut t = Table::new(columns);
    for n in 0..=n_max {
        let mut row = vec![Cell::Int(n as u64)];
        row.extend(dists.iter().map(|d| Cell::Num(d.get(n))));
        t.rows.push(row);
    }
    emit(out.out.as_deref(), &render(&t, out.format))
}

fn cmd_wigner(state: &StateArgs, tau: f64, grid: &GridSpec, out: &OutArgs) -> Outcome {
    check_taus(&[tau])?;
    let cat = build_cat(state, single_alpha(state)?)?;
    let g = wigner_grid(&DecayedCat::new(cat, tau)?, grid)?;
    let data = match out.format {
        Format::Csv => g.to_csv(),
        Format::Json => {
            let mut s = g.to_json();
            s.push('\n');
            s
        }
    };
    let peaks: Vec<String> = g
        .local_maxima(0.5)
        .iter()
        .map(|p| format!("({},{})", sig17(p.x), sig17(p.y)))
        .collect();
    let summary = format!(
        "integral={} min={} max={} negativity_volume={} peaks=[{}]\n",
        sig17(grid_integral(&g)),
        sig17(g.min()),
        sig17(g.max()),
        sig17(negativity_volume(&g)),
        peaks.join(";")
    );
    emit(out.out.as_deref(), &data)?;
    if out.out.is_some() {
        print_stdout(&summary)
    } else {
        // keep stdout a clean data stream
        eprint!("{summary}");
        Ok(())
    }
}

fn cmd_falpha(alphas: &[f64], taus: &[f64], out: &OutArgs) -> Outcome {
    check_taus(taus)?;
    let mut columns = vec!["alpha".to_string()];
    for &tau in taus {
        columns.push(if taus.len() == 1 { "f".to_string() } else { format!("f_tau{tau}") });
    }
    let mut t = Table::new(columns);
    for &a in alphas {
        let mut row = vec![Cell::Num(a)];
        row.extend(taus.iter().map(|&tau| Cell::Num(interference_decay_factor(a.abs(), tau))));
        t.rows.push(row);
    }
    emit(out.out.as_deref(), &render(&t, out.format))
}

fn cmd_threshold(tau: f64, epsilon: f64, alpha_max: u32, format: Format) -> Outcome {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Failure::Config(format!("--tau must be positive, got {tau}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Failure::Config(format!("--epsilon must lie in (0, 1), got {epsilon}")));
    }
    if alpha_max == 0 {
        return Err(Failure::Config("--alpha-max must be at least 1".into()));
    }
    let grid: Vec<f64> = (1..=alpha_max).map(f64::from).collect();
    let found = decoherence_threshold_alpha(tau, epsilon, &grid);
    match format {
        Format::Json => {
            let (alpha, f) = match found {
                Some(a) => ((a as u64).to_string(), sig17(interference_decay_factor(a, tau))),
                None => ("null".to_string(), "null".to_string()),
            };
            print_stdout(&format!(
                "{{\"tau\":{},\"epsilon\":{},\"alpha_max\":{alpha_max},\"alpha\":{alpha},\"f\":{f}}}\n",
                sig17(tau),
                sig17(epsilon)
            ))?;
        }
        Format::Csv => match found {
            Some(a) => print_stdout(&format!("{}\n", a as u64))?,
            None => eprintln!("catdecay: no alpha in 1..={alpha_max} has f <= {epsilon} at tau = {tau}"),
        },
    }
    found.map(|_| ()).ok_or(Failure::NoThreshold)
}

fn cmd_verify(only: Vec<CheckGroup>, nmax: Option<usize>, format: Format) -> Outcome {
    let n_max_override = match nmax {
        Some(n) => Some(n),
        None => env_nmax()?,
    };
    let report = run_battery(&BatteryConfig {
        groups: only,
        n_max_override,
    });
    let text = match format {
        Format::Csv => {
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!(
                    "{} {}/{}: max_error={} tolerance={} {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.group,
                    c.name,
                    sig17(c.max_error),
                    sig17(c.tolerance),
                    c.detail
                ));
            }
            let failed = report.failures().count();
            s.push_str(&format!("{} checks, {} failed\n", report.checks.len(), failed));
            s
        }
        Format::Json => {
            let checks: Vec<String> = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "{{\"group\":{},\"name\":{},\"max_error\":{},\"tolerance\":{},\"passed\":{},\"detail\":{}}}",
                        json_string(&c.group.to_string()),
                        json_string(&c.name),
                        json_number(c.max_error),
                        sig17(c.tolerance),
                        c.passed,
                        json_string(&c.detail)
                    )
                })
                .collect();
            format!("{{\"passed\":{},\"checks\":[{}]}}\n", report.all_passed(), checks.join(","))
        }
    };
    print_stdout(&text)?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

/// Non-finite errors (a blown-up check) have no JSON number form.
fn json_number(v: f64) -> String {
    if v.is_finite() {
        sig17(v)
    } else {
        json_string(&v.to_string())
    }
}
