use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use mppc::assumptions::{validate_assumptions, AssumptionOptions, AssumptionParams};
use mppc::eval::{evaluate, render_table, reports_to_json, EvaluationReport};
use mppc::generator::{generate_instance, GeneratorSpec};
use mppc::geojson::export_geojson;
use mppc::metric::import_directions_cache;
use mppc::orienteering::{Strategy, DEFAULT_CROSSOVER};
use mppc::pipeline::{solve, Algorithm, SolverConfig};
use mppc::wspd::{build_split_tree, compute_wspd, render_pairs};
use mppc::{check_feasibility, load_instance, Error, Point, Problem, SolutionFile};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(name = "mppc", version, about = "Profit-maximising pickup routing with time windows and capacity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Generate(GenerateArgs),
    /// Solve an instance with one of the three pipelines.
    Solve(SolveArgs),
    /// Check an instance, and a solution against it if given.
    Validate(ValidateArgs),
    /// Report profit, upper bound and ratio for a solution.
    Evaluate(EvaluateArgs),
    /// Solve every instance in a directory and print a table.
    Bench(BenchArgs),
    /// Write an instance and solution as GeoJSON.
    ExportGeojson(ExportArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Offline directions cache replacing the instance metric.
    #[arg(long, value_name = "FILE", env = "MPPC_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct AssumptionArgs {
    #[arg(long, default_value_t = 0.5, env = "MPPC_EPSILON")]
    epsilon: f64,
    #[arg(long, default_value_t = 6.0, env = "MPPC_P")]
    p: f64,
    #[arg(long, default_value_t = 1.0, env = "MPPC_ALPHA")]
    alpha: f64,
}

impl AssumptionArgs {
    fn params(&self) -> AssumptionParams {
        AssumptionParams {
            epsilon: self.epsilon,
            p: self.p,
            alpha: self.alpha,
        }
    }
}

#[derive(Args)]
struct SolverArgs {
    /// 1, 2 or 3.
    #[arg(long, default_value = "2", env = "MPPC_ALGORITHM")]
    algorithm: Algorithm,
    #[command(flatten)]
    assumptions: AssumptionArgs,
    /// WSPD separation for algorithm 3; calibrated when omitted.
    #[arg(long, env = "MPPC_S")]
    s: Option<f64>,
    /// exact, insertion or bucketed.
    #[arg(long, default_value = "bucketed", env = "MPPC_STRATEGY")]
    strategy: Strategy,
    /// Largest subset routed by the exact DP.
    #[arg(long, default_value_t = DEFAULT_CROSSOVER, env = "MPPC_CROSSOVER")]
    crossover: usize,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            algorithm: self.algorithm,
            params: self.assumptions.params(),
            strategy: self.strategy,
            crossover: self.crossover,
            separation: self.s,
            ..Default::default()
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 10, env = "MPPC_N")]
    n: usize,
    #[arg(long, default_value_t = 15, env = "MPPC_HORIZON")]
    horizon: u32,
    /// Side of the square site box in km.
    #[arg(long, default_value_t = 20.0, env = "MPPC_BOX_KM")]
    box_km: f64,
    #[arg(long, default_value_t = 20.0, env = "MPPC_Q_LO")]
    q_lo: f64,
    #[arg(long, default_value_t = 200.0, env = "MPPC_Q_HI")]
    q_hi: f64,
    #[arg(long, default_value_t = 450.0, env = "MPPC_CAPACITY")]
    capacity: f64,
    #[arg(long, default_value_t = 4.0, env = "MPPC_SPEED")]
    speed: f64,
    #[arg(long, default_value_t = 0, env = "MPPC_SEED")]
    seed: u64,
    /// Epsilon used for the cheap-edge warning.
    #[arg(long, default_value_t = 0.5, env = "MPPC_EPSILON")]
    epsilon: f64,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Solution file; standard output when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Also write the evaluation report as JSON.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Write the WSPD used by algorithm 3 as text.
    #[arg(long, value_name = "FILE")]
    dump_wspd: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_name = "FILE")]
    solution: Option<PathBuf>,
    #[command(flatten)]
    assumptions: AssumptionArgs,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_name = "FILE")]
    solution: PathBuf,
    /// Also write the report as JSON.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of instance files (*.json).
    #[arg(long, value_name = "DIR")]
    suite: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    /// Parallel workers.
    #[arg(long, default_value_t = 1, env = "MPPC_JOBS")]
    jobs: usize,
    /// Also write the reports as JSON.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_name = "FILE")]
    solution: PathBuf,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parameter(_) => EXIT_USAGE,
            e if e.is_input_error() => EXIT_VALIDATION,
            _ => EXIT_SOLVER,
        };
        let mut message = e.to_string();
        if let Error::Infeasible(violations) = &e {
            for v in violations {
                message.push_str(&format!("\n  {v:?}"));
            }
        }
        Failure { code, message }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::from(e).into()
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Validate(a) => validate(a),
        Command::Evaluate(a) => evaluate_cmd(a),
        Command::Bench(a) => bench(a),
        Command::ExportGeojson(a) => export(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Failure {
        code: EXIT_VALIDATION,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn load_problem(args: &InstanceArgs) -> CliResult<Problem> {
    let inst = load_instance(open(&args.input)?)?;
    let problem = match &args.cache {
        Some(cache) => {
            let metric = import_directions_cache(open(cache)?, &inst)?;
            Problem::with_metric(inst, metric)?
        }
        None => Problem::new(inst)?,
    };
    Ok(problem)
}

fn load_solution(problem: &Problem, path: &Path) -> CliResult<(SolutionFile, mppc::Solution)> {
    let file = SolutionFile::from_reader(open(path)?)?;
    let sol = file.to_solution(problem)?;
    Ok((file, sol))
}

fn generate(a: GenerateArgs) -> CliResult {
    let spec = GeneratorSpec {
        n: a.n,
        horizon: a.horizon,
        box_km: a.box_km,
        q_lo: a.q_lo,
        q_hi: a.q_hi,
        capacity: a.capacity,
        speed: a.speed,
        seed: a.seed,
    };
    let inst = generate_instance(&spec)?;
    let problem = Problem::new(inst.clone())?;
    let params = AssumptionParams {
        epsilon: a.epsilon,
        ..Default::default()
    };
    params.validate()?;
    let report = validate_assumptions(&problem, &params, &AssumptionOptions::default());
    if !report.cheap_edges.holds() {
        eprintln!(
            "warning: {} edges are too costly for epsilon = {} ({:?})",
            report.cheap_edge_violations, a.epsilon, report.cheap_edges
        );
    }
    write_out(a.out.as_deref(), &inst.to_json_string())
}

struct Solved {
    file: SolutionFile,
    report: EvaluationReport,
    separation: Option<f64>,
}

fn run_solver(problem: &Problem, cfg: &SolverConfig) -> CliResult<Solved> {
    let start = Instant::now();
    let outcome = solve(problem, cfg)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let name = cfg.algorithm.to_string();
    let mut file = SolutionFile::from_solution(problem, &name, &outcome.solution);
    file.flags = outcome.flags.clone();
    file.elapsed_ms = Some(ms);
    let report = evaluate(problem, &outcome.solution, &name, ms, outcome.flags).map_err(|e| Failure {
        code: EXIT_SOLVER,
        message: format!("solver produced an invalid solution: {e}"),
    })?;
    Ok(Solved {
        file,
        report,
        separation: outcome.separation.map(|c| c.s),
    })
}

fn solve_cmd(a: SolveArgs) -> CliResult {
    let problem = load_problem(&a.instance)?;
    let cfg = a.solver.config();
    let Solved {
        file,
        report,
        separation,
    } = run_solver(&problem, &cfg)?;
    if let Some(path) = &a.dump_wspd {
        let Some(s) = separation else {
            return Err(Failure {
                code: EXIT_USAGE,
                message: "--dump-wspd needs --algorithm 3".into(),
            });
        };
        let points: Vec<Point> = problem.instance().sites.iter().map(|s| Point::new(s.x, s.y)).collect();
        let pairs = if points.is_empty() {
            Vec::new()
        } else {
            compute_wspd(&build_split_tree(&points)?, s)?
        };
        fs::write(path, render_pairs(&pairs, s))?;
    }
    for flag in &file.flags {
        eprintln!("note: {flag}");
    }
    eprintln!(
        "{}: profit {:.3}, {} vehicles, {:.1} ms",
        cfg.algorithm,
        file.profit,
        file.routes.len(),
        report.time_ms
    );
    if let Some(path) = &a.report {
        fs::write(path, reports_to_json(std::slice::from_ref(&report)))?;
    }
    write_out(a.out.as_deref(), &file.to_json_string())
}

fn validate(a: ValidateArgs) -> CliResult {
    let problem = load_problem(&a.instance)?;
    let params = a.assumptions.params();
    params.validate()?;
    let report = validate_assumptions(&problem, &params, &AssumptionOptions::default());
    println!(
        "instance {}: {} sites, capacity {}, horizon {}",
        problem.instance().name,
        problem.n(),
        problem.capacity(),
        problem.instance().horizon
    );
    println!("  bounded supply: {:?}", report.bounded_supply);
    println!("  cheap edges:    {:?} ({} violations)", report.cheap_edges, report.cheap_edge_violations);
    println!("  enough vehicles: {:?}", report.enough_vehicles);
    if let Some(path) = &a.solution {
        let (_, sol) = load_solution(&problem, path)?;
        let violations = check_feasibility(&problem, &sol)?;
        if !violations.is_empty() {
            return Err(Error::Infeasible(violations).into());
        }
        println!("solution {}: feasible, {} routes", path.display(), sol.routes.len());
    }
    Ok(())
}

fn evaluate_cmd(a: EvaluateArgs) -> CliResult {
    let problem = load_problem(&a.instance)?;
    let (file, sol) = load_solution(&problem, &a.solution)?;
    let report = evaluate(&problem, &sol, &file.algorithm, file.elapsed_ms.unwrap_or(0.0), file.flags)?;
    print!("{}", render_table(std::slice::from_ref(&report)));
    if let Some(path) = &a.report {
        fs::write(path, reports_to_json(&[report]))?;
    }
    Ok(())
}

fn bench(a: BenchArgs) -> CliResult {
    let mut paths: Vec<PathBuf> = fs::read_dir(&a.suite)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let cfg = a.solver.config();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        })?;
    let results: Vec<CliResult<EvaluationReport>> = pool.install(|| {
        paths
            .par_iter()
            .map(|path| {
                let problem = load_problem(&InstanceArgs {
                    input: path.clone(),
                    cache: None,
                })?;
                run_solver(&problem, &cfg).map(|s| s.report)
            })
            .collect()
    });
    let mut reports = Vec::new();
    let mut worst = None;
    for (path, r) in paths.iter().zip(results) {
        match r {
            Ok(report) => reports.push(report),
            Err(f) => {
                eprintln!("error: {}: {}", path.display(), f.message);
                worst = worst.max(Some(f.code));
            }
        }
    }
    print!("{}", render_table(&reports));
    if let Some(path) = &a.report {
        fs::write(path, reports_to_json(&reports))?;
    }
    match worst {
        None => Ok(()),
        Some(code) => Err(Failure {
            code,
            message: "some instances failed".into(),
        }),
    }
}

fn export(a: ExportArgs) -> CliResult {
    let problem = load_problem(&a.instance)?;
    let (_, sol) = load_solution(&problem, &a.solution)?;
    write_out(a.out.as_deref(), &export_geojson(&problem, &sol)?)
}
