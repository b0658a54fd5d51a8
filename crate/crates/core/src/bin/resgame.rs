use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use resgame::dynamics::{
    h2_closed_form, h2_energy_oracle, lyapunov_residual, ControlLaw, H2Result, LyapunovCheck,
    OracleOptions, Scenario,
};
use resgame::game::{
    build_matrix, refine_switch, response_sweep, solve, sweep_gain, Sweep, DEFAULT_ENUM_CAP,
};
use resgame::io::{self, GraphSource, ReportFormat, Requirements, RunConfig};
use resgame::verify::{run_verify, Fault, VerifyOptions};
use resgame::{Error, Graph};

const EXIT_VALIDATION: u8 = 1;
const EXIT_COMPUTATION: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "resgame",
    version,
    about = "Attacker-defender games on second-order networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degrees, hop and resistance centralities.
    Centrality {
        #[command(flatten)]
        run: RunArgs,
        /// Also report effective eccentricities and the effective center.
        #[arg(long)]
        effective: bool,
    },
    /// Squared H₂ norm from the attack channels to the velocities.
    H2 {
        #[command(flatten)]
        run: RunArgs,
        /// Cross-check against numerical integration of the impulse response.
        #[arg(long)]
        oracle: bool,
    },
    /// Full payoff matrix over all budget-sized defense and attack sets.
    Matrix {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Nash equilibrium if one exists, else the defender-led Stackelberg solution.
    Solve {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Stackelberg solutions, or best responses to a fixed --defense, over a gain grid.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated gains.
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "grid",
            allow_negative_numbers = true
        )]
        gains: Option<Vec<f64>>,
        /// `lo:hi:count`, evenly spaced and inclusive.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Randomized invariant suites; exits with 3 if any fails.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated node counts to draw from.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, value_enum)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    WrongSignLaplacian,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args, Default)]
struct RunArgs {
    /// Run configuration (JSON); explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_parser = parse_law)]
    law: Option<ControlLaw>,
    #[arg(long, allow_negative_numbers = true)]
    gain: Option<f64>,
    /// Budget: size of the defense and attack sets.
    #[arg(long)]
    f: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    defense: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    attack: Option<Vec<usize>>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_law(s: &str) -> Result<ControlLaw, String> {
    match s {
        "1" => Ok(ControlLaw::AbsVelocity),
        "2" => Ok(ControlLaw::RelVelocity),
        _ => Err(format!("control law must be 1 or 2, got `{s}`")),
    }
}

enum Failure {
    Lib(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

struct Ctx {
    cfg: RunConfig,
    graph: Option<Graph>,
    out: Option<PathBuf>,
    format: Option<ReportFormat>,
}

impl Ctx {
    /// Merges the config file with the flags, loads the graph and checks
    /// every requirement before anything is computed.
    fn load(run: RunArgs, req: Requirements, needs_graph: bool) -> Result<Self, Error> {
        Self::load_with_gains(run, None, req, needs_graph)
    }

    fn load_with_gains(
        run: RunArgs,
        gains: Option<Vec<f64>>,
        req: Requirements,
        needs_graph: bool,
    ) -> Result<Self, Error> {
        let (mut cfg, base) = match &run.config {
            Some(p) => (RunConfig::load(p)?, p.parent().map(Path::to_path_buf)),
            None => (RunConfig::default(), None),
        };
        if let Some(g) = run.graph {
            cfg.graph = Some(GraphSource::Path(g));
        }
        cfg.law = run.law.or(cfg.law);
        cfg.gain = run.gain.or(cfg.gain);
        cfg.f = run.f.or(cfg.f);
        cfg.defense = run.defense.or(cfg.defense);
        cfg.attack = run.attack.or(cfg.attack);
        cfg.seed = run.seed.or(cfg.seed);
        cfg.gains = gains.or(cfg.gains);

        let mut problems = Vec::new();
        let graph = match &cfg.graph {
            Some(src) => Some(src.load(base.as_deref())?),
            None => {
                if needs_graph {
                    problems.push("graph (--graph) is required".to_string());
                }
                None
            }
        };
        problems.extend(cfg.violations(graph.as_ref(), req));
        if !problems.is_empty() {
            return Err(Error::Config(problems));
        }
        Ok(Ctx {
            cfg,
            graph,
            out: run.out,
            format: run.format.map(|f| match f {
                FormatArg::Json => ReportFormat::Json,
                FormatArg::Csv => ReportFormat::Csv,
            }),
        })
    }

    fn graph(&self) -> &Graph {
        self.graph.as_ref().expect("validated")
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(p) => io::write_text(text, p),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<(), Error> {
        self.emit(&(serde_json::to_string_pretty(value).expect("serializable") + "\n"))
    }

    fn json_only(&self, command: &str) -> Result<(), Error> {
        if self.format == Some(ReportFormat::Csv) {
            return Err(Error::Config(vec![format!(
                "{command} has no CSV output; use --format json"
            )]));
        }
        Ok(())
    }
}

fn enum_cap() -> Result<usize, Error> {
    match std::env::var("RESGAME_ENUM_CAP") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            Error::Config(vec![format!(
                "RESGAME_ENUM_CAP must be a positive integer, got `{v}`"
            )])
        }),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn parse_grid(s: &str) -> Result<Vec<f64>, Error> {
    let bad = || Error::Config(vec![format!("--grid must be lo:hi:count, got `{s}`")]);
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if count == 0 || hi < lo || (count == 1 && hi != lo) {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_VALIDATION)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                ExitCode::from(EXIT_VALIDATION)
            } else {
                ExitCode::from(EXIT_COMPUTATION)
            }
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Centrality { run, effective } => centrality(run, effective),
        Command::H2 { run, oracle } => h2(run, oracle),
        Command::Matrix { run } => matrix(run),
        Command::Solve { run } => solve_cmd(run),
        Command::Sweep { run, gains, grid } => sweep(run, gains, grid),
        Command::Verify {
            run,
            sizes,
            trials,
            inject_fault,
        } => verify(run, sizes, trials, inject_fault),
    }
}

fn centrality(run: RunArgs, effective: bool) -> CmdResult {
    let ctx = Ctx::load(run, Requirements::default(), true)?;
    let report = io::centrality_report(ctx.graph(), effective);
    match ctx.format.unwrap_or(ReportFormat::Json) {
        ReportFormat::Json => ctx.emit_json(&report)?,
        ReportFormat::Csv => {
            let mut text = String::from("node,degree,eccentricity");
            if effective {
                text.push_str(",effective_eccentricity");
            }
            text.push('\n');
            for v in 0..report.n {
                text.push_str(&format!(
                    "{v},{},{}",
                    report.degrees[v], report.eccentricities[v]
                ));
                if let Some(e) = &report.effective_eccentricities {
                    text.push_str(&format!(",{}", e[v]));
                }
                text.push('\n');
            }
            ctx.emit(&text)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct H2Report {
    law: ControlLaw,
    gain: f64,
    defense: Vec<usize>,
    attack: Vec<usize>,
    norm: f64,
    closed_form: H2Result,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<H2Result>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relative_error: Option<f64>,
    /// Relative error within `1e-6`.
    #[serde(skip_serializing_if = "Option::is_none")]
    agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lyapunov: Option<LyapunovCheck>,
}

fn h2(run: RunArgs, oracle: bool) -> CmdResult {
    let req = Requirements {
        law: true,
        gain: true,
        attack: true,
        ..Requirements::default()
    };
    let ctx = Ctx::load(run, req, true)?;
    ctx.json_only("h2")?;
    let cfg = &ctx.cfg;
    let law = cfg.law.expect("validated");
    let defense = cfg.defense.clone().unwrap_or_default();
    let attack = cfg.attack.clone().expect("validated");
    let s = Scenario::new(
        ctx.graph(),
        law,
        cfg.gain.expect("validated"),
        &defense,
        &attack,
    )?;
    let closed = h2_closed_form(&s)?;
    let mut report = H2Report {
        law,
        gain: s.gain(),
        defense: s.defense().to_vec(),
        attack: s.attack().to_vec(),
        norm: closed.value_sq.sqrt(),
        closed_form: closed,
        oracle: None,
        relative_error: None,
        agrees: None,
        lyapunov: None,
    };
    if oracle {
        let o = h2_energy_oracle(&s, &OracleOptions::default())?;
        let rel = (report.closed_form.value_sq - o.value_sq).abs() / o.value_sq.abs();
        report.relative_error = Some(rel);
        report.agrees = Some(rel < 1e-6);
        report.oracle = Some(o);
        if law == ControlLaw::AbsVelocity {
            report.lyapunov = Some(lyapunov_residual(&s)?);
        }
    }
    ctx.emit_json(&report)?;
    Ok(())
}

fn game_requirements() -> Requirements {
    Requirements {
        law: true,
        gain: true,
        budget: true,
        ..Requirements::default()
    }
}

#[derive(Serialize)]
struct MatrixReport {
    law: ControlLaw,
    gain: f64,
    budget: usize,
    /// Subsets in rank order; row `r` is the defense `subsets[r]`, column `c`
    /// the attack `subsets[c]`.
    subsets: Vec<Vec<usize>>,
    values: Vec<Vec<f64>>,
}

fn matrix(run: RunArgs) -> CmdResult {
    let ctx = Ctx::load(run, game_requirements(), true)?;
    let cap = enum_cap()?;
    let cfg = &ctx.cfg;
    let m = build_matrix(
        ctx.graph(),
        cfg.gain.unwrap(),
        cfg.f.unwrap(),
        cfg.law.unwrap(),
        cap,
    )?;
    match ctx.format.unwrap_or(ReportFormat::Json) {
        ReportFormat::Csv => ctx.emit(&io::matrix_to_csv(&m))?,
        ReportFormat::Json => ctx.emit_json(&MatrixReport {
            law: m.law,
            gain: m.gain,
            budget: m.budget(),
            subsets: (0..m.size()).map(|r| m.subset(r)).collect(),
            values: (0..m.size())
                .map(|r| (0..m.size()).map(|c| m.get(r, c)).collect())
                .collect(),
        })?,
    }
    Ok(())
}

fn solve_cmd(run: RunArgs) -> CmdResult {
    let ctx = Ctx::load(run, game_requirements(), true)?;
    ctx.json_only("solve")?;
    let cap = enum_cap()?;
    let cfg = &ctx.cfg;
    let r = solve(
        ctx.graph(),
        cfg.gain.unwrap(),
        cfg.f.unwrap(),
        cfg.law.unwrap(),
        cap,
    )?;
    ctx.emit_json(&r)?;
    Ok(())
}

#[derive(Serialize)]
struct Crossover {
    lo: f64,
    hi: f64,
    from: Vec<usize>,
    to: Vec<usize>,
    kappa: f64,
}

#[derive(Serialize)]
struct SweepReport {
    law: ControlLaw,
    budget: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    defense: Option<Vec<usize>>,
    #[serde(flatten)]
    sweep: Sweep,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    crossovers: Vec<Crossover>,
}

fn sweep(run: RunArgs, gains: Option<Vec<f64>>, grid: Option<String>) -> CmdResult {
    let grid = match grid {
        Some(g) => Some(parse_grid(&g)?),
        None => gains,
    };
    let req = Requirements {
        law: true,
        budget: true,
        gains: true,
        equal_budgets: true,
        ..Requirements::default()
    };
    let ctx = Ctx::load_with_gains(run, grid, req, true)?;
    let cap = enum_cap()?;
    let cfg = &ctx.cfg;
    let (g, f, law) = (ctx.graph(), cfg.f.unwrap(), cfg.law.unwrap());
    let grid = cfg.gains.clone().unwrap();
    let (sweep, crossovers) = match &cfg.defense {
        Some(defense) => {
            let s = response_sweep(g, f, law, defense, &grid, cap)?;
            let mut cross = Vec::new();
            for sw in &s.switches {
                let kappa = refine_switch(g, f, law, defense, sw.lo, sw.hi, cap)?;
                cross.push(Crossover {
                    lo: sw.lo,
                    hi: sw.hi,
                    from: sw.from.clone(),
                    to: sw.to.clone(),
                    kappa,
                });
            }
            (s, cross)
        }
        None => (sweep_gain(g, f, law, &grid, cap)?, Vec::new()),
    };
    match ctx.format.unwrap_or(ReportFormat::Csv) {
        ReportFormat::Csv => ctx.emit(&io::sweep_to_csv(&sweep))?,
        ReportFormat::Json => ctx.emit_json(&SweepReport {
            law,
            budget: f,
            defense: cfg.defense.clone(),
            sweep,
            crossovers,
        })?,
    }
    Ok(())
}

fn verify(
    run: RunArgs,
    sizes: Option<Vec<usize>>,
    trials: usize,
    fault: Option<FaultArg>,
) -> CmdResult {
    let ctx = Ctx::load(run, Requirements::default(), false)?;
    ctx.json_only("verify")?;
    let mut opts = VerifyOptions {
        seed: ctx.cfg.seed.unwrap_or(0),
        trials,
        fault: fault.map(|f| match f {
            FaultArg::WrongSignLaplacian => Fault::WrongSignLaplacian,
        }),
        ..VerifyOptions::default()
    };
    if let Some(s) = sizes {
        opts.sizes = s;
    }
    let report = run_verify(&opts);
    for s in &report.suites {
        let status = if s.passed { "PASS" } else { "FAIL" };
        eprintln!(
            "{status} {:<30} {}/{}",
            s.name,
            s.trials - s.failures,
            s.trials
        );
        if let Some(msg) = &s.first_failure {
            eprintln!("     {msg}");
        }
    }
    ctx.emit_json(&report)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
