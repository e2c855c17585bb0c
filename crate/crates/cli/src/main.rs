//! `bestmove`: command-line front end for the experiment runner.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bestmove_core::analysis::ValidatorRow;
use bestmove_core::experiment::{
    fit_aggregates, read_aggregates, run_best_move, run_converge, run_validate, write_aggregates,
    write_converge, write_fits, write_trials, write_validation, CsvOptions, Distribution,
    ExperimentPlan, ValidateOptions,
};
use bestmove_core::{Algorithm, Error, Instance, Result, SearchVariant, Tour};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bestmove",
    version,
    about = "Best 2-OPT move search experiments"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance snapshot (`u,v,cost` CSV) and optionally a random tour.
    Gen(GenArgs),
    /// Count move evaluations of each search on random tours.
    BestMove(BestMoveArgs),
    /// Run local search to convergence, pure CE against the hybrid switch.
    Converge(ConvergeArgs),
    /// Run the probabilistic validators and emit pass/fail rows.
    Validate(ValidateArgs),
    /// Fit `mean = a n^b` to an aggregate CSV from `best-move`.
    Fit(FitArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the `# generated ...` first line so reruns are byte-identical.
    #[arg(long)]
    no_header_timestamp: bool,
}

impl OutputArgs {
    fn csv(&self) -> CsvOptions {
        CsvOptions {
            timestamp_header: !self.no_header_timestamp,
        }
    }
}

#[derive(Args)]
struct PlanArgs {
    /// uniform, euclidean or tsplib:<path>.
    #[arg(long, default_value = "uniform")]
    dist: Distribution,
    /// TSPLIB file; same as `--dist tsplib:<file>`.
    #[arg(long)]
    tsplib: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000,8000")]
    sizes: Vec<usize>,
    /// Instances per size.
    #[arg(long, default_value_t = 10)]
    instances: usize,
    /// Random tours per instance.
    #[arg(long, default_value_t = 10)]
    tours: usize,
    /// Threshold schedule parameter (default: 1.89 uniform, 2.5 euclidean).
    #[arg(long)]
    alpha: Option<f64>,
    /// Absolute fixed-search threshold, overriding the schedule.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Pivot-search refinements: basic, or a comma list of strong, dedup.
    #[arg(long, default_value = "basic")]
    variant: SearchVariant,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl PlanArgs {
    fn plan(&self) -> ExperimentPlan {
        let distribution = match &self.tsplib {
            Some(p) => Distribution::Tsplib(p.clone()),
            None => self.dist.clone(),
        };
        ExperimentPlan {
            distribution,
            sizes: self.sizes.clone(),
            instances_per_size: self.instances,
            tours_per_instance: self.tours,
            alpha: self.alpha,
            delta: self.delta,
            variant: self.variant,
            seed: self.seed,
            ..ExperimentPlan::default()
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// uniform or euclidean.
    #[arg(long, default_value = "uniform")]
    dist: Distribution,
    /// Convert a TSPLIB file instead of generating.
    #[arg(long)]
    tsplib: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Snapshot file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a random tour, one 0-based node per line.
    #[arg(long)]
    tour_out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    tour_seed: u64,
}

#[derive(Args)]
struct BestMoveArgs {
    #[command(flatten)]
    plan: PlanArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_delimiter = ',', default_value = "ce,greedy,blind,fixed")]
    algorithms: Vec<Algorithm>,
    /// Per-size aggregates. Defaults to `<out>.summary.csv` when `--out` is
    /// given; without `--out` only the aggregates are printed.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Monte-Carlo samples for the euclidean evaluation oracle.
    #[arg(long, default_value_t = 10_000_000)]
    oracle_samples: u64,
    /// Add a wall-clock `micros` column (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    plan: PlanArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Switch thresholds β for the hybrid runs.
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.4,0.5")]
    beta: Vec<f64>,
    /// Directory for per-iteration traces (`iter,algo,gain,evals,length`).
    #[arg(long)]
    traces: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    plan: PlanArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Samples per tail-bound distance; 0 skips the tail checks.
    #[arg(long, default_value_t = 10_000_000)]
    tail_samples: u64,
    /// α of the long-short move check (default gives a limiting failure rate of 0.1).
    #[arg(long)]
    ls_alpha: Option<f64>,
    /// λ of the D-uncrossing check.
    #[arg(long, default_value_t = 1.1)]
    lambda: f64,
    /// Exit with status 1 if any check fails.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct FitArgs {
    /// Aggregate CSV written by `best-move`.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io_error(path, e))
}

fn io_error(path: &Path, source: io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_error(path: Option<&Path>, source: bestmove_core::experiment::CsvError) -> Error {
    Error::Csv {
        path: path.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf),
        source,
    }
}

/// Runs `write` against the file, or stdout when no path is given.
fn emit<F>(path: Option<&Path>, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::result::Result<(), bestmove_core::experiment::CsvError>,
{
    match path {
        Some(p) => {
            let mut f = create(p)?;
            write(&mut f).map_err(|e| csv_error(path, e))?;
            f.flush().map_err(|e| io_error(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).map_err(|e| csv_error(None, e))
        }
    }
}

fn cmd_gen(args: &GenArgs) -> Result<()> {
    let inst = match &args.tsplib {
        Some(p) => bestmove_core::tsplib::read_tsplib(p)?,
        None => match args.dist {
            Distribution::Uniform => Instance::uniform(args.n, args.seed)?,
            Distribution::Euclidean => Instance::euclidean(args.n, args.seed)?,
            Distribution::Tsplib(ref p) => bestmove_core::tsplib::read_tsplib(p)?,
        },
    };
    emit(args.out.as_deref(), |w| inst.write_snapshot(w))?;
    if let Some(p) = &args.tour_out {
        Tour::random(inst.n(), args.tour_seed)?.save(p)?;
    }
    Ok(())
}

fn cmd_best_move(args: &BestMoveArgs) -> Result<()> {
    let plan = ExperimentPlan {
        algorithms: args.algorithms.clone(),
        oracle_samples: args.oracle_samples,
        timing: args.timing,
        ..args.plan.plan()
    };
    let report = run_best_move(&plan)?;
    let opts = args.output.csv();
    let summary = match (&args.summary, &args.output.out) {
        (Some(s), _) => Some(s.clone()),
        (None, Some(out)) => Some(out.with_extension("summary.csv")),
        (None, None) => None,
    };
    if let Some(out) = &args.output.out {
        emit(Some(out), |w| write_trials(w, opts, &report.trials))?;
    }
    emit(summary.as_deref(), |w| {
        write_aggregates(w, opts, &report.aggregates)
    })
}

fn cmd_converge(args: &ConvergeArgs) -> Result<()> {
    let plan = ExperimentPlan {
        betas: args.beta.clone(),
        ..args.plan.plan()
    };
    let report = run_converge(&plan, args.traces.is_some())?;
    if let Some(dir) = &args.traces {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        for (row, trace) in &report.traces {
            let mode = match row.beta {
                Some(b) => format!("hybrid-{b}"),
                None => "ce".to_string(),
            };
            let name = format!(
                "trace_n{}_i{}_t{}_{mode}.csv",
                row.n, row.instance, row.tour
            );
            trace.save_csv(&dir.join(name))?;
        }
    }
    emit(args.output.out.as_deref(), |w| {
        write_converge(w, args.output.csv(), &report.rows)
    })
}

fn cmd_validate(args: &ValidateArgs) -> Result<bool> {
    let plan = args.plan.plan();
    let defaults = ValidateOptions::default();
    let opts = ValidateOptions {
        tail_distances: if args.tail_samples == 0 {
            Vec::new()
        } else {
            defaults.tail_distances.clone()
        },
        tail_samples: args.tail_samples,
        ls_alpha: args.ls_alpha.unwrap_or(defaults.ls_alpha),
        lambda: args.lambda,
        ..defaults
    };
    let rows = run_validate(&plan, &opts)?;
    emit(args.output.out.as_deref(), |w| {
        write_validation(w, args.output.csv(), &rows)
    })?;
    let failed: Vec<&ValidatorRow> = rows.iter().filter(|r| !r.pass).collect();
    eprintln!(
        "validate: {} of {} checks passed",
        rows.len() - failed.len(),
        rows.len()
    );
    for r in &failed {
        eprintln!(
            "  failed: {} n={} ({}/{})",
            r.check, r.n, r.successes, r.trials
        );
    }
    Ok(failed.is_empty())
}

fn cmd_fit(args: &FitArgs) -> Result<()> {
    let file = File::open(&args.input).map_err(|e| io_error(&args.input, e))?;
    let rows = read_aggregates(file)?;
    let fits = fit_aggregates(&rows)?;
    emit(args.output.out.as_deref(), |w| {
        write_fits(w, args.output.csv(), &fits)
    })
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Gen(a) => cmd_gen(a).map(|_| true),
        Command::BestMove(a) => cmd_best_move(a).map(|_| true),
        Command::Converge(a) => cmd_converge(a).map(|_| true),
        Command::Validate(a) => cmd_validate(a).map(|ok| ok || !a.strict),
        Command::Fit(a) => cmd_fit(a).map(|_| true),
    }
}

fn error_line(kind: &str, message: &str) -> String {
    format!("error,{kind},{}", message.replace('\n', " ").trim())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or_default();
            eprintln!(
                "{}",
                error_line("usage", first.trim_start_matches("error: "))
            );
            eprintln!("{rendered}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", error_line(e.kind(), &e.to_string()));
            ExitCode::from(if matches!(e, Error::Usage(_)) { 2 } else { 1 })
        }
    }
}
