//! `mixedcake`: solve, verify, degree, check and plot from the shell.
//!
//! Exit codes: 0 ok, 1 usage or configuration error, 2 conjecture gap,
//! 3 resource cap, 4 a check or verification failed. `CAKE_CELL_CAP` and
//! `CAKE_INDUCED_CAP` override the cell and induced-labeling caps.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use mixedcake::cake::{agent_envy, load_profile, max_envy, Agent, Division, ValueDensity};
use mixedcake::degree::degree_report;
use mixedcake::lab::{self, CheckReport};
use mixedcake::labeling::{
    owner_labeling, random_single_labeling, random_sperner_labeling, LabelMode, Labeling,
    DEFAULT_INDUCED_CAP,
};
use mixedcake::rational::{self, Rational};
use mixedcake::solver::{self, select_induced_labeling, Method, SolveOptions, TriangulationKind};
use mixedcake::svg;
use mixedcake::triangulation::{
    barycentric_triangulation, check_barycentric_cap, equilateral_friendly_n3, EquilateralOutcome,
    Ownership, Triangulation, DEFAULT_CELL_CAP,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] mixedcake::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Engine(mixedcake::Error::ConjectureGap { .. }) => 2,
            CliError::Engine(mixedcake::Error::ResourceCap { .. }) => 3,
            CliError::Engine(_) => 1,
            CliError::Failed(_) => 4,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "mixedcake",
    version,
    about = "Envy-free division of mixed cakes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find an approximately envy-free connected division.
    Solve(SolveArgs),
    /// Evaluate the envy of a given division exactly.
    Verify(VerifyArgs),
    /// Interior and boundary degree of a labeling on a barycentric triangulation.
    Degree(DegreeArgs),
    /// Run one of the degree-theory checks on random instances.
    Check(CheckArgs),
    /// Render a labeled triangulation of the triangle as SVG.
    Plot(PlotArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Agent profile (JSON).
    #[arg(long)]
    agents: PathBuf,
    /// Expected number of agents; must match the profile.
    #[arg(long)]
    n: Option<usize>,
    /// Target cell diameter, e.g. 1/64.
    #[arg(long, value_parser = rational::parse)]
    delta: Rational,
    #[arg(long, default_value = "scan", value_parser = Method::from_str)]
    method: Method,
    #[arg(long, default_value = "barycentric", value_parser = TriangulationKind::from_str)]
    triangulation: TriangulationKind,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    agents: PathBuf,
    /// Interior cut points in order, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = rational::parse)]
    cuts: Vec<Rational>,
    /// 1-based piece of each agent, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    assignment: Vec<usize>,
    /// Largest envy still accepted.
    #[arg(long, default_value = "0", value_parser = rational::parse)]
    tolerance: Rational,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DegreeArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Barycentric depth; 0 is the simplex itself.
    #[arg(long, default_value_t = 1)]
    depth: usize,
    /// Labeling file with `vertex: label` lines; random when omitted.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Draw the random labeling under the boundary condition.
    #[arg(long)]
    sperner: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// degree, residues, sperner, sumreplace, prime, appendix or conjecture.
    #[arg(long)]
    lemma: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multi-labeled vertices per labeling (sumreplace).
    #[arg(long, default_value_t = 2)]
    multi: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Barycentric depth, or segments per side for the equilateral grid.
    #[arg(long, default_value_t = 1)]
    depth: usize,
    #[arg(long, default_value = "barycentric", value_parser = TriangulationKind::from_str)]
    triangulation: TriangulationKind,
    /// none, sperner or random; ignored when --agents is given.
    #[arg(long, default_value = "sperner")]
    labels: String,
    /// Label through these agents' preferences instead.
    #[arg(long)]
    agents: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn env_cap(var: &str, default: u64) -> CliResult<u64> {
    match std::env::var(var) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!("{var} must be a non-negative integer, got {v:?}"))
        }),
        Err(_) => Ok(default),
    }
}

fn cell_cap() -> CliResult<u64> {
    env_cap("CAKE_CELL_CAP", DEFAULT_CELL_CAP)
}

fn induced_cap() -> CliResult<u64> {
    env_cap("CAKE_INDUCED_CAP", DEFAULT_INDUCED_CAP)
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn load_agents(path: &Path) -> CliResult<Vec<ValueDensity>> {
    Ok(load_profile(&read(path)?)?)
}

fn cmd_solve(args: SolveArgs) -> CliResult<()> {
    let densities = load_agents(&args.agents)?;
    if let Some(n) = args.n {
        if n != densities.len() {
            return Err(CliError::Usage(format!(
                "--n {n} but the profile lists {} agents",
                densities.len()
            )));
        }
    }
    let agents: Vec<Agent> = densities.into_iter().map(Agent::from).collect();
    let mut options = SolveOptions::new(args.delta);
    options.method = args.method;
    options.triangulation = args.triangulation;
    options.cell_cap = cell_cap()?;
    options.induced_cap = induced_cap()?;
    let report = solver::solve(&agents, &options)?;
    emit(args.out.as_deref(), &pretty(&report))
}

fn cmd_verify(args: VerifyArgs) -> CliResult<()> {
    let agents = load_agents(&args.agents)?;
    let division = Division::new(args.cuts, args.assignment)?;
    let worst = max_envy(&division, &agents)?;
    let envy: Vec<String> = (0..agents.len())
        .map(|i| rational::format(&agent_envy(&division, &agents, i)))
        .collect();
    let values: Vec<Vec<String>> = agents
        .iter()
        .map(|a| {
            division
                .pieces()
                .iter()
                .map(|p| rational::format(&a.interval_value(p)))
                .collect()
        })
        .collect();
    let accepted = worst <= args.tolerance;
    let report = json!({
        "cuts": division.cuts().iter().map(rational::format).collect::<Vec<_>>(),
        "assignment": division.assignment(),
        "piece_values": values,
        "envy": envy,
        "max_envy": rational::format(&worst),
        "tolerance": rational::format(&args.tolerance),
        "envy_free": accepted,
    });
    emit(args.out.as_deref(), &pretty(&report))?;
    if accepted {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "max envy {} exceeds tolerance",
            rational::format(&worst)
        )))
    }
}

fn triangulation_at(n: usize, depth: usize) -> CliResult<(Triangulation, Option<Ownership>)> {
    if depth == 0 {
        return Ok((Triangulation::trivial(n)?, None));
    }
    let (tri, own) = barycentric_triangulation(n, depth, cell_cap()?)?;
    Ok((tri, Some(own)))
}

fn cmd_degree(args: DegreeArgs) -> CliResult<()> {
    let (tri, _) = triangulation_at(args.n, args.depth)?;
    let ell = match &args.labels {
        Some(path) => {
            let labeling = Labeling::parse_dump(args.n, LabelMode::Set, &read(path)?)?;
            if labeling.len() != tri.vertices().len() {
                return Err(CliError::Usage(format!(
                    "{} labels for {} vertices",
                    labeling.len(),
                    tri.vertices().len()
                )));
            }
            labeling
                .as_single()
                .ok_or_else(|| CliError::Usage("degrees need one label per vertex".into()))?
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            if args.sperner {
                random_sperner_labeling(&tri, &mut rng)
            } else {
                random_single_labeling(&tri, &mut rng)
            }
        }
    };
    emit(args.out.as_deref(), &pretty(&degree_report(&tri, &ell)))
}

fn cmd_check(args: CheckArgs) -> CliResult<()> {
    let n = args
        .n
        .unwrap_or(if args.lemma == "conjecture" { 4 } else { 3 });
    let depth = args.depth.unwrap_or(if n == 3 { 2 } else { 1 });
    let (t, s) = (args.trials, args.seed);
    if args.lemma != "appendix" {
        check_barycentric_cap(n, depth, cell_cap()?)?;
    }
    let report: CheckReport = match args.lemma.as_str() {
        "degree" => lab::check_degree_lemma(n, depth, t, s)?,
        "residues" => {
            if n != 3 {
                return Err(CliError::Usage("residues is the three-agent case: --n must be 3".into()));
            }
            lab::check_three_agent_residues(depth, t, s)?
        }
        "sperner" => lab::check_sperner_degree(n, depth, t, s)?,
        "sumreplace" => lab::check_sumreplace(n, depth, t, s, args.multi)?,
        "prime" => lab::check_prime(n, depth, t, s)?,
        "appendix" => lab::appendix_fixture_check()?,
        "conjecture" => lab::conjecture_search(n, depth, t, s)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown lemma {other:?}; expected degree, residues, sperner, sumreplace, prime, appendix or conjecture"
            )))
        }
    };
    emit(args.out.as_deref(), &report.to_json_lines())?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "{} of {} trials failed",
            report.summary.failed, report.summary.trials
        )))
    }
}

fn cmd_plot(args: PlotArgs) -> CliResult<()> {
    if args.n != 3 {
        return Err(CliError::Usage("plots are planar: --n must be 3".into()));
    }
    let (tri, own) = match args.triangulation {
        TriangulationKind::Barycentric => triangulation_at(3, args.depth)?,
        TriangulationKind::Equilateral => match equilateral_friendly_n3(args.depth, cell_cap()?)? {
            EquilateralOutcome::Feasible {
                triangulation,
                ownership,
                ..
            } => (triangulation, Some(ownership)),
            EquilateralOutcome::Infeasible { rejections } => {
                return Err(CliError::Usage(format!(
                    "no friendly diverse grid with {} segments: {}",
                    args.depth,
                    rejections
                        .iter()
                        .map(|r| r.reason.as_str())
                        .collect::<Vec<_>>()
                        .join("; ")
                )))
            }
        },
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let labels = match (&args.agents, args.labels.as_str()) {
        (Some(path), _) => {
            let own = own.as_ref().ok_or_else(|| {
                CliError::Usage("labeling through agents needs --depth >= 1".into())
            })?;
            let agents: Vec<Agent> = load_agents(path)?.into_iter().map(Agent::from).collect();
            if agents.len() != 3 {
                return Err(CliError::Usage("plots need exactly three agents".into()));
            }
            let (combined, _) = owner_labeling(&tri, own, &agents)?;
            Some(select_induced_labeling(&tri, &combined, induced_cap()?)?.0)
        }
        (None, "none") => None,
        (None, "sperner") => Some(random_sperner_labeling(&tri, &mut rng)),
        (None, "random") => Some(random_single_labeling(&tri, &mut rng)),
        (None, other) => {
            return Err(CliError::Usage(format!(
                "unknown labels {other:?}; expected none, sperner or random"
            )))
        }
    };
    emit(
        args.out.as_deref(),
        &svg::render(&tri, labels.as_deref(), own.as_ref())?,
    )
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Degree(a) => cmd_degree(a),
        Command::Check(a) => cmd_check(a),
        Command::Plot(a) => cmd_plot(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
