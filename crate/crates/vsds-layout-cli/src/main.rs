//! Command-line front end: run a batch, sweep occupation rates, or validate
//! a catalog file. Artifacts (convergence CSV per seed, best-layout SVG,
//! summary JSON) are byte-reproducible for a fixed configuration and seed.
//!
//! Exit codes: 0 success, 1 configuration error, 2 runtime failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use vsds_layout::catalog::{Catalog, GeneLayout, Parameterization};
use vsds_layout::evolution::{
    constraint_dominance_cmp, ConstraintStrategy, EncodingMethod, GaConfig,
};
use vsds_layout::experiments::{
    run_batch, satellite_case, satellite_case_with, seed_range, toy_case, toy_ga_config,
    satellite_ga_config, BatchResult, BudgetPreset,
};
use vsds_layout::problem::ProblemInstance;
use vsds_layout::report::{summary_doc, write_convergence_csv, write_layout_svg, write_summary_json};

#[derive(Parser)]
#[command(name = "vsds-layout", version, about = "Variable-size design space layout optimizer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one batch and write its artifacts.
    Run(RunArgs),
    /// Run one batch per occupation rate and print a comparison table.
    Sweep(SweepArgs),
    /// Check a catalog file and print its derived quantities.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemKind {
    Toy,
    Satellite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Tags,
    #[value(name = "dv-int")]
    DvInt,
    #[value(name = "dv-num")]
    DvNum,
    #[value(name = "dv-bin")]
    DvBin,
}

impl MethodArg {
    fn to_method(self) -> EncodingMethod {
        match self {
            MethodArg::Tags => EncodingMethod::Tags,
            MethodArg::DvInt => EncodingMethod::IntegerDv,
            MethodArg::DvNum => EncodingMethod::NumericIndexDv,
            MethodArg::DvBin => EncodingMethod::BinaryDv,
        }
    }
}

fn parse_method(name: &str) -> Result<MethodArg, CliError> {
    match name {
        "tags" => Ok(MethodArg::Tags),
        "dv-int" => Ok(MethodArg::DvInt),
        "dv-num" => Ok(MethodArg::DvNum),
        "dv-bin" => Ok(MethodArg::DvBin),
        other => Err(CliError::Config(format!(
            "unknown method {other:?} (expected tags, dv-int, dv-num or dv-bin)"
        ))),
    }
}

/// Flags shared by `run` and `sweep`. Precedence: built-in defaults, then
/// the `--config` file, then explicit flags.
#[derive(Args)]
struct CommonArgs {
    /// JSON configuration file supplying defaults for the other flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Problem to solve.
    #[arg(long, value_enum)]
    problem: Option<ProblemKind>,
    /// Activation encoding.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Population size.
    #[arg(long)]
    pop: Option<usize>,
    /// Generation count.
    #[arg(long)]
    gens: Option<usize>,
    /// Number of runs (consecutive seeds starting at --seed).
    #[arg(long)]
    runs: Option<usize>,
    /// Base RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Switch constraint handling to stochastic ranking with this P_f.
    #[arg(long)]
    pf: Option<f64>,
    /// Custom component catalog (satellite problem only).
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Output directory for artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Occupation rate (satellite problem only).
    #[arg(long)]
    or: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Occupation rates to sweep; repeat the flag for each rate.
    #[arg(long = "or")]
    ors: Vec<f64>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Catalog file to check.
    catalog: PathBuf,
}

/// Optional fields of the `--config` JSON file; flags override them.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    problem: Option<String>,
    method: Option<String>,
    or: Option<f64>,
    pop: Option<usize>,
    gens: Option<usize>,
    runs: Option<usize>,
    seed: Option<u64>,
    pf: Option<f64>,
    catalog: Option<PathBuf>,
    out: Option<PathBuf>,
}

enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    fn report(self) -> ExitCode {
        match self {
            CliError::Config(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            CliError::Runtime(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

/// Fully resolved settings for a batch.
struct Resolved {
    problem: ProblemKind,
    method: EncodingMethod,
    method_label: &'static str,
    or: Option<f64>,
    pop: Option<usize>,
    gens: Option<usize>,
    runs: usize,
    seed: u64,
    pf: Option<f64>,
    catalog: Option<PathBuf>,
    out: PathBuf,
}

fn load_file_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
}

fn resolve(common: &CommonArgs, or_flag: Option<f64>) -> Result<Resolved, CliError> {
    let file = match &common.config {
        Some(path) => load_file_config(path)?,
        None => FileConfig::default(),
    };
    let problem = match (&common.problem, &file.problem) {
        (Some(p), _) => *p,
        (None, Some(name)) => match name.as_str() {
            "toy" => ProblemKind::Toy,
            "satellite" => ProblemKind::Satellite,
            other => {
                return Err(CliError::Config(format!(
                    "unknown problem {other:?} (expected toy or satellite)"
                )))
            }
        },
        (None, None) => ProblemKind::Toy,
    };
    let method_arg = match (&common.method, &file.method) {
        (Some(m), _) => *m,
        (None, Some(name)) => parse_method(name)?,
        (None, None) => MethodArg::Tags,
    };
    let method = method_arg.to_method();
    let or = or_flag.or(file.or);
    let catalog = common.catalog.clone().or(file.catalog);
    if problem == ProblemKind::Toy {
        if or.is_some() {
            return Err(CliError::Config(
                "--or applies only to the satellite problem".into(),
            ));
        }
        if catalog.is_some() {
            return Err(CliError::Config(
                "--catalog applies only to the satellite problem".into(),
            ));
        }
    }
    if let Some(v) = or {
        if !(v > 0.0 && v < 1.0) {
            return Err(CliError::Config(format!(
                "occupation rate must lie in (0, 1), got {v}"
            )));
        }
    }
    let runs = common.runs.or(file.runs).unwrap_or(1);
    if runs == 0 {
        return Err(CliError::Config("--runs must be at least 1".into()));
    }
    if let Some(pf) = common.pf.or(file.pf) {
        if !(0.0..=1.0).contains(&pf) {
            return Err(CliError::Config(format!("--pf must lie in [0, 1], got {pf}")));
        }
    }
    Ok(Resolved {
        problem,
        method,
        method_label: method.label(),
        or,
        pop: common.pop.or(file.pop),
        gens: common.gens.or(file.gens),
        runs,
        seed: common.seed.or(file.seed).unwrap_or(1),
        pf: common.pf.or(file.pf),
        catalog,
        out: common
            .out
            .clone()
            .or(file.out)
            .unwrap_or_else(|| PathBuf::from("vsds-out")),
    })
}

fn build_problem(r: &Resolved, or: Option<f64>) -> Result<ProblemInstance<f64>, CliError> {
    match r.problem {
        ProblemKind::Toy => toy_case().map_err(|e| CliError::Runtime(e.to_string())),
        ProblemKind::Satellite => {
            let or = or.unwrap_or(0.3);
            match &r.catalog {
                Some(path) => {
                    let catalog = Catalog::from_path(path)
                        .map_err(|e| CliError::Config(format!("catalog: {e}")))?;
                    satellite_case_with(
                        catalog,
                        or,
                        vsds_layout::experiments::SATELLITE_CONTAINER_RADIUS,
                    )
                    .map_err(|e| CliError::Config(e.to_string()))
                }
                None => satellite_case(or).map_err(|e| CliError::Config(e.to_string())),
            }
        }
    }
}

fn build_ga_config(r: &Resolved) -> GaConfig<f64> {
    let mut cfg = match r.problem {
        ProblemKind::Toy => toy_ga_config(r.method, r.seed),
        ProblemKind::Satellite => satellite_ga_config(BudgetPreset::Desk, r.seed),
    };
    if let Some(pop) = r.pop {
        cfg.population_size = pop;
    }
    if let Some(gens) = r.gens {
        cfg.generations = gens;
    }
    if let Some(pf) = r.pf {
        cfg.strategy = ConstraintStrategy::StochasticRanking { pf };
    }
    cfg
}

fn problem_name(r: &Resolved) -> &'static str {
    match r.problem {
        ProblemKind::Toy => "toy",
        ProblemKind::Satellite => "satellite",
    }
}

/// Runs one batch and writes its artifacts into `dir`.
fn run_into(r: &Resolved, or: Option<f64>, dir: &Path) -> Result<BatchResult<f64>, CliError> {
    let problem = build_problem(r, or)?;
    let cfg = build_ga_config(r);
    cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
    let seeds = seed_range(r.seed, r.runs);
    let batch =
        run_batch(&problem, r.method, &cfg, &seeds).map_err(|e| CliError::Runtime(e.to_string()))?;

    fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))?;
    let io_err =
        |path: &Path, e: std::io::Error| CliError::Runtime(format!("{}: {e}", path.display()));

    for run in &batch.runs {
        let path = dir.join(format!("convergence_seed{}.csv", run.seed));
        let mut buf = Vec::new();
        write_convergence_csv(&mut buf, &run.history).map_err(|e| io_err(&path, e))?;
        fs::write(&path, buf).map_err(|e| io_err(&path, e))?;
    }

    // Best layout across runs: feasibility first, then objective.
    let best_run = batch
        .runs
        .iter()
        .min_by(|a, b| constraint_dominance_cmp(&a.best.evaluation, &b.best.evaluation))
        .expect("batches contain at least one run");
    let svg_path = dir.join("best_layout.svg");
    let mut svg = Vec::new();
    write_layout_svg(
        &mut svg,
        &best_run.best_layout,
        &problem.container,
        &problem.constraints.exclusion_zones,
    )
    .map_err(|e| io_err(&svg_path, e))?;
    fs::write(&svg_path, svg).map_err(|e| io_err(&svg_path, e))?;

    let doc = summary_doc(
        problem_name(r),
        r.method_label,
        cfg.population_size,
        cfg.generations,
        or,
        &batch.runs,
        &batch.stats,
    );
    let json_path = dir.join("summary.json");
    let mut json = Vec::new();
    write_summary_json(&mut json, &doc).map_err(|e| io_err(&json_path, e))?;
    fs::write(&json_path, json).map_err(|e| io_err(&json_path, e))?;

    Ok(batch)
}

fn cmd_run(args: &RunArgs) -> Result<(), CliError> {
    let r = resolve(&args.common, args.or)?;
    let or = match r.problem {
        ProblemKind::Satellite => Some(r.or.unwrap_or(0.3)),
        ProblemKind::Toy => None,
    };
    let batch = run_into(&r, or, &r.out)?;
    let stats = &batch.stats;
    println!(
        "{} / {}: {} run(s), {} feasible, best {}, artifacts in {}",
        problem_name(&r),
        r.method_label,
        stats.run_count,
        stats.success_count,
        stats
            .best_final_objective
            .map_or_else(|| "-".to_string(), |v| format!("{v:.3}")),
        r.out.display()
    );
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let r = resolve(&args.common, None)?;
    if r.problem != ProblemKind::Satellite {
        return Err(CliError::Config("sweep applies to the satellite problem".into()));
    }
    if args.ors.is_empty() {
        return Err(CliError::Config(
            "sweep needs at least one --or occupation rate".into(),
        ));
    }
    let mut columns = Vec::new();
    for &or in &args.ors {
        let dir = r.out.join(format!("or_{or:.2}"));
        let batch = run_into(&r, Some(or), &dir)?;
        let stats = &batch.stats;
        let censor = build_ga_config(&r).generations + 1;
        columns.push((
            or,
            stats.success_count,
            *stats.median_best_curve.last().expect("non-empty history"),
            *stats.iqr_best_curve.last().expect("non-empty history"),
            stats.mean_first_feasible,
            stats.median_first_feasible_censored(censor),
        ));
    }

    let mut table = String::new();
    let _ = write!(table, "{:<28}", "metric");
    for (or, ..) in &columns {
        let _ = write!(table, "{:>14}", format!("or={or:.2}"));
    }
    let _ = writeln!(table);
    let fmt_opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.1}"));
    let rows: Vec<(&str, Vec<String>)> = vec![
        (
            "success_count",
            columns.iter().map(|c| format!("{}/{}", c.1, r.runs)).collect(),
        ),
        (
            "final_median_objective",
            columns.iter().map(|c| format!("{:.1}", c.2)).collect(),
        ),
        (
            "final_iqr",
            columns.iter().map(|c| format!("{:.1}", c.3)).collect(),
        ),
        (
            "mean_first_feasible",
            columns.iter().map(|c| fmt_opt(c.4)).collect(),
        ),
        (
            "median_first_feasible",
            columns.iter().map(|c| format!("{:.1}", c.5)).collect(),
        ),
    ];
    for (label, cells) in &rows {
        let _ = write!(table, "{label:<28}");
        for cell in cells {
            let _ = write!(table, "{cell:>14}");
        }
        let _ = writeln!(table);
    }
    print!("{table}");

    let csv_path = r.out.join("sweep_summary.csv");
    let mut csv = String::new();
    let _ = writeln!(
        csv,
        "or,success_count,run_count,final_median_objective,final_iqr,mean_first_feasible,median_first_feasible"
    );
    for (or, success, median, iqr, mean_ff, median_ff) in &columns {
        let _ = writeln!(
            csv,
            "{or},{success},{},{median},{iqr},{},{median_ff}",
            r.runs,
            mean_ff.map_or_else(String::new, |v| v.to_string()),
        );
    }
    fs::write(&csv_path, csv)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", csv_path.display())))?;
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), CliError> {
    let catalog: Catalog<f64> =
        Catalog::from_path(&args.catalog).map_err(|e| CliError::Config(format!("{e}")))?;
    let space = catalog.configuration_space();
    // The container only sets gene bounds; gene COUNT is what validation
    // reports, so any radius works.
    let container = vsds_layout::geometry::ContainerDisk::centered(1.0);
    let layout = GeneLayout::build(&catalog, Parameterization::Cartesian, &container)
        .map_err(|e| CliError::Config(e.to_string()))?;
    println!("components: {}", catalog.len());
    println!("configurations: {}", space.cardinality());
    println!("genes: {}", layout.len());
    println!("total area: {:.3}", catalog.total_area());
    println!("total mass: {:.3}", catalog.total_mass());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    let _ = e.print();
                    ExitCode::from(1)
                }
            }
        }
    };
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Validate(args) => cmd_validate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}
