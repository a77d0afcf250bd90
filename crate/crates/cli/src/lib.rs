//! The `topogame` command line.
//!
//! Exit codes: 0 on success, 1 when a checked property fails (a report is
//! written), 2 for usage and input errors, 3 when an enumeration would exceed
//! its resource cap.

pub mod census;
pub mod play;
pub mod server;
pub mod session;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use topogame_core::checks::{self, run_transductions, TransductionOutcome};
use topogame_core::dualities::Construction;
use topogame_core::game::{minimal_winning_horizon, SolveOptions, SolvedGame};
use topogame_core::spacegen::{self, space_id};
use topogame_core::{
    space_from_json, space_to_json, Error, FiniteSpace, GameKind, InvariantReport, Mode, Player,
    PointSet,
};

#[derive(Debug, Parser)]
#[command(
    name = "topogame",
    version,
    about = "Selection games on finite topological spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a space document: a named space, a random one, or a catalog.
    Gen(GenArgs),
    /// Print the cardinal invariants of a space.
    Invariants(InvariantsArgs),
    /// Solve a game at a fixed horizon.
    Solve(SolveArgs),
    /// Least horizon at which a player wins.
    Horizon(HorizonArgs),
    /// Run the strategy transductions and referee every result.
    DualityVerify(DualityArgs),
    /// Tabulate invariants and minimal horizons over every n-point space.
    Census(CensusArgs),
    /// Run the full property suite.
    Check(CheckArgs),
    /// Start the local JSON service.
    Serve(ServeArgs),
    /// Play against the engine in the terminal.
    Play(PlayArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// A named space such as `sierpinski`, `discrete:3`, `fan:2` or
    /// `partition:0,1|2`.
    #[arg(long, conflicts_with_all = ["random", "enumerate"])]
    pub space: Option<String>,
    /// Draw a random space on `--n` points.
    #[arg(long, conflicts_with = "enumerate")]
    pub random: bool,
    /// Write every space on `--n` points as JSON lines.
    #[arg(long)]
    pub enumerate: bool,
    /// With `--enumerate`, keep one space per isomorphism class.
    #[arg(long, requires = "enumerate")]
    pub iso: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Probability of each extra relation edge for `--random`.
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    /// A space file, `-` for standard input, or a named space.
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub kind: GameKind,
    #[arg(long)]
    pub horizon: usize,
    #[arg(long, default_value = "full")]
    pub mode: Mode,
    /// Also print the winner for every (innings left, accumulated) entry.
    #[arg(long)]
    pub table: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HorizonArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub kind: GameKind,
    #[arg(long)]
    pub player: Player,
    #[arg(long = "max-h", visible_alias = "max", default_value_t = 4)]
    pub max_h: usize,
    #[arg(long, default_value = "full")]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct DualityArgs {
    /// Run on every space with this many points.
    #[arg(long, default_value_t = 3, conflicts_with = "space")]
    pub n: usize,
    /// Run on a single space instead.
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long = "max-h", visible_alias = "max", default_value_t = 3)]
    pub max_h: usize,
    /// Restrict to these constructions (repeatable).
    #[arg(long)]
    pub construction: Vec<Construction>,
    /// Include the two identity adapters between the cellular and dense
    /// selection games.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CensusFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "max-h", visible_alias = "max", default_value_t = 4)]
    pub max_h: usize,
    #[arg(long, default_value = "full")]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = CensusFormat::Csv)]
    pub format: CensusFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the assertion report; standard error by default.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Include the 6-point enumeration.
    #[arg(long)]
    pub stretch: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 7878)]
    pub port: u16,
    /// Append each finished game's transcript to this JSON-lines file.
    #[arg(long)]
    pub record: Option<PathBuf>,
    #[arg(long, default_value = "full")]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub kind: GameKind,
    #[arg(long)]
    pub horizon: usize,
    /// The seat you take; the engine plays the other one.
    #[arg(long, default_value = "one")]
    pub player: Player,
    #[arg(long, default_value = "full")]
    pub mode: Mode,
    #[arg(long)]
    pub record: Option<PathBuf>,
}

/// A failure that ends the command with `code`.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::ResourceCap { .. }) {
            3
        } else {
            2
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

pub type CliResult<T = u8> = Result<T, CliError>;

/// Runs one command and returns its exit code (0, or 1 for a property
/// violation).
pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Invariants(a) => invariants(a),
        Command::Solve(a) => solve(a),
        Command::Horizon(a) => horizon(a),
        Command::DualityVerify(a) => duality_verify(a),
        Command::Census(a) => census::run(a),
        Command::Check(a) => check(a),
        Command::Serve(a) => serve(a),
        Command::Play(a) => play::run(a),
    }
}

/// Reads a space from a file, from standard input (`-`), or from a name
/// understood by the generators.
pub fn load_space(spec: &str) -> CliResult<FiniteSpace> {
    if spec == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(space_from_json(&text)?);
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return space_from_json(&text).map_err(|e| CliError::usage(format!("{spec}: {e}")));
    }
    spacegen::named(spec).map_err(|e| {
        CliError::usage(format!(
            "{spec:?} is neither a readable space file nor a named space ({e})"
        ))
    })
}

pub(crate) fn output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

pub(crate) fn options(mode: Mode) -> SolveOptions {
    SolveOptions {
        mode,
        ..SolveOptions::default()
    }
}

fn gen(a: GenArgs) -> CliResult {
    let mut out = output(a.out.as_deref())?;
    let need_n = |what: &str| {
        a.n.ok_or_else(|| CliError::usage(format!("{what} needs --n")))
    };
    if a.enumerate {
        let n = need_n("--enumerate")?;
        for entry in spacegen::enumerate_topologies(n, a.iso)? {
            writeln!(out, "{}", serde_json::to_string(&entry.to_line())?)?;
        }
    } else if a.random {
        let n = need_n("--random")?;
        let space = spacegen::random_space(n, a.density, a.seed)?;
        eprintln!(
            "algorithm={} seed={} density={} n={n}",
            spacegen::RANDOM_SPACE_ALGORITHM,
            a.seed,
            a.density
        );
        writeln!(out, "{}", space_to_json(&space))?;
    } else {
        let name = a
            .space
            .ok_or_else(|| CliError::usage("give --space NAME, --random or --enumerate"))?;
        writeln!(out, "{}", space_to_json(&spacegen::named(&name)?))?;
    }
    out.flush()?;
    Ok(0)
}

fn invariants(a: InvariantsArgs) -> CliResult {
    let space = load_space(&a.space)?;
    let report = InvariantReport::compute(&space);
    let mut out = output(a.out.as_deref())?;
    let doc = json!({ "space_id": space_id(&space), "n": space.n(), "invariants": report });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    out.flush()?;
    Ok(0)
}

#[derive(Serialize)]
struct TableRow {
    remaining: usize,
    accumulated: PointSet,
    winner: Player,
    #[serde(skip_serializing_if = "Option::is_none")]
    one_move: Option<topogame_core::Move>,
}

fn solve(a: SolveArgs) -> CliResult {
    if a.horizon == 0 {
        return Err(CliError::usage("--horizon must be at least 1"));
    }
    let space = load_space(&a.space)?;
    let game = SolvedGame::new(&space, a.kind, a.horizon, options(a.mode))?;
    let winner = game.winner(a.horizon)?;
    let table = if a.table {
        game.table(a.horizon)?
            .into_iter()
            .map(|(remaining, accumulated, winner)| {
                // one's winning move, when there is one to show
                let one_move = (remaining > 0 && winner == Player::One)
                    .then(|| {
                        let at = topogame_core::Position {
                            inning: a.horizon - remaining,
                            accumulated,
                            pending: None,
                        };
                        game.choose(&at, a.horizon, Player::One)
                    })
                    .transpose()?;
                Ok(TableRow {
                    remaining,
                    accumulated,
                    winner,
                    one_move,
                })
            })
            .collect::<CliResult<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let mut out = output(a.out.as_deref())?;
    if a.json {
        let mut doc = json!({
            "space_id": space_id(&space),
            "kind": a.kind,
            "horizon": a.horizon,
            "mode": a.mode,
            "winner": winner,
        });
        if a.table {
            doc["table"] = serde_json::to_value(&table)?;
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        writeln!(out, "winner: {winner}")?;
        if a.table {
            writeln!(out, "remaining\taccumulated\twinner\tone's move")?;
            for row in &table {
                let mv = row
                    .one_move
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                writeln!(
                    out,
                    "{}\t{}\t{}\t{mv}",
                    row.remaining, row.accumulated, row.winner
                )?;
            }
        }
    }
    out.flush()?;
    Ok(0)
}

/// `h` as a number, or `none@max_h` when no horizon up to `max_h` works.
pub fn format_horizon(h: Option<usize>, max_h: usize) -> String {
    match h {
        Some(h) => h.to_string(),
        None => format!("none@{max_h}"),
    }
}

fn horizon(a: HorizonArgs) -> CliResult {
    if a.max_h == 0 {
        return Err(CliError::usage("--max-h must be at least 1"));
    }
    let space = load_space(&a.space)?;
    let h = minimal_winning_horizon(&space, a.kind, a.player, a.max_h, options(a.mode))?;
    println!("{}", format_horizon(h, a.max_h));
    Ok(0)
}

#[derive(Serialize)]
struct DualityReport {
    spaces: usize,
    triples: usize,
    verified: usize,
    failed: usize,
    outcomes: Vec<TransductionOutcome>,
}

fn duality_verify(a: DualityArgs) -> CliResult {
    if a.max_h == 0 {
        return Err(CliError::usage("--max-h must be at least 1"));
    }
    let spaces = match &a.space {
        Some(spec) => vec![load_space(spec)?],
        None => spacegen::labeled_preorders(a.n)?,
    };
    let constructions: Vec<Construction> = if !a.construction.is_empty() {
        a.construction.clone()
    } else if a.all {
        Construction::ALL.to_vec()
    } else {
        Construction::SEVEN.to_vec()
    };
    let outcomes: Vec<TransductionOutcome> = spaces
        .par_iter()
        .flat_map_iter(|s| run_transductions(s, &constructions, a.max_h))
        .collect();
    let verified = outcomes.iter().filter(|o| o.verified).count();
    let report = DualityReport {
        spaces: spaces.len(),
        triples: outcomes.len(),
        verified,
        failed: outcomes.len() - verified,
        outcomes,
    };
    let mut out = output(a.out.as_deref())?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    out.flush()?;
    eprintln!(
        "duality-verify: {} of {} triples verified over {} spaces",
        report.verified, report.triples, report.spaces
    );
    Ok(u8::from(report.failed > 0))
}

fn check(a: CheckArgs) -> CliResult {
    let reports = checks::run_all(a.stretch);
    let mut out = output(a.out.as_deref())?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    } else {
        for r in &reports {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            writeln!(out, "[{mark}] {}: {} ({})", r.id, r.title, r.detail)?;
            for f in &r.failures {
                writeln!(out, "       {f}")?;
            }
        }
    }
    out.flush()?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    eprintln!(
        "check: {} of {} criteria passed",
        reports.len() - failed,
        reports.len()
    );
    Ok(u8::from(failed > 0))
}

fn serve(a: ServeArgs) -> CliResult {
    let state = server::AppState::new(options(a.mode), a.record.as_deref())?;
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()?;
    runtime.block_on(server::serve(state, a.port))?;
    Ok(0)
}
