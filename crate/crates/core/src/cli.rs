//! Command-line front end. The binary forwards its arguments to [`run`].

use crate::auctions::{make_auction, AuctionKind, Prior};
use crate::bayes::{self, load_bayesian, rm_bayes_iterate, BayesianGame, TypedSpace};
use crate::concepts::{compare, iterate_operator, operator_trace_to_json, pure_nash, Operator, StepMeta};
use crate::game::Game;
use crate::gamefile::load_game;
use crate::generators::{CentipedePayoffs, Example};
use crate::rational::{parse_rational, to_text_with_decimal, Rational};
use crate::regret_mixed::{
    self, cap_from_env, min_mixed_regret, rm_mixed_iterate, MixedError, MixedSpace, DEFAULT_ROUND_LIMIT,
};
use crate::regret_pure::{self, regret_report, rm_iterate};
use crate::reproduce::{self, brute_rm_rounds, grid_sandwich, Options};
use crate::space::{IterateError, PureSpace};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "regretlab", version, about = "Iterated regret minimization and rival solution concepts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Iterate a solution concept to its fixed point.
    Solve(SolveArgs),
    /// Maximum regret of every action (or minimax regret over mixtures) against the full space.
    Regret(RegretArgs),
    /// Fixed points of RM, WD, SD and JUST side by side, plus pure Nash equilibria.
    Compare(CompareArgs),
    /// Expected-regret deletion on a Bayesian game or auction.
    Bayes(BayesArgs),
    /// Recompute the reproduction manifest.
    Reproduce(ReproduceArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Concept {
    RmPure,
    RmMixed,
    Wd,
    Sd,
    Just,
    Nash,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PayoffMode {
    Linear,
    Exponential,
}

/// Game source: a file or a named generator with its parameters.
#[derive(Args, Debug, Clone, Default)]
pub struct GameArgs {
    /// JSON game file.
    #[arg(long, value_name = "FILE")]
    pub game: Option<String>,
    /// Generator name (see `--gen help`).
    #[arg(long = "gen", value_name = "NAME")]
    pub generator: Option<String>,
    /// Traveler's dilemma reward/penalty, or the linear centipede step.
    #[arg(long)]
    pub p: Option<String>,
    /// Lowest claim (traveler's dilemma).
    #[arg(long)]
    pub low: Option<i64>,
    /// Highest claim (traveler's dilemma).
    #[arg(long)]
    pub high: Option<i64>,
    /// Centipede length, or the coordination payoff.
    #[arg(long)]
    pub k: Option<String>,
    /// Centipede payoff mode.
    #[arg(long, value_enum)]
    pub payoffs: Option<PayoffMode>,
    /// Hawk-dove payoffs.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    /// Prisoner's dilemma payoffs.
    #[arg(long)]
    pub u1: Option<String>,
    #[arg(long)]
    pub u2: Option<String>,
    #[arg(long)]
    pub u3: Option<String>,
    /// Size parameter (staircase, mixed-multiround).
    #[arg(long)]
    pub n: Option<usize>,
    /// Payoff base (mixed-multiround).
    #[arg(long)]
    pub base: Option<String>,
    /// Number of rounds (repeated-pd).
    #[arg(long)]
    pub rounds: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Dimension cap for mixed-mode vertex enumeration (default: REGRETLAB_CAP or 12).
    #[arg(long)]
    pub cap: Option<usize>,
    /// Maximum number of changing rounds in mixed mode.
    #[arg(long, default_value_t = DEFAULT_ROUND_LIMIT)]
    pub rounds_limit: usize,
    /// Cross-check results against brute-force or grid oracles.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: GameArgs,
    #[arg(long, value_enum, default_value = "rm-pure")]
    pub concept: Concept,
    /// Shorthand for `--concept rm-mixed`.
    #[arg(long)]
    pub mixed: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct RegretArgs {
    #[command(flatten)]
    pub source: GameArgs,
    /// Minimax regret over mixed strategies instead of pure max regrets.
    #[arg(long)]
    pub mixed: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: GameArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Equilibria listed before truncation in text output.
    #[arg(long, default_value_t = 8)]
    pub max_profiles: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AuctionArg {
    FirstPrice,
    SecondPrice,
}

#[derive(Args, Debug)]
pub struct BayesArgs {
    /// Bayesian game file.
    #[arg(long, value_name = "FILE", conflicts_with = "auction")]
    pub game: Option<String>,
    /// Generate a two-bidder auction instead.
    #[arg(long, value_enum)]
    pub auction: Option<AuctionArg>,
    /// Comma-separated even valuations shared by both bidders.
    #[arg(long, default_value = "2,4,6,8,10")]
    pub values: String,
    /// Highest allowed bid.
    #[arg(long)]
    pub max_bid: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Run every claim group (the default).
    #[arg(long)]
    pub all: bool,
    /// Run a single group by name.
    #[arg(long, conflicts_with = "all")]
    pub group: Option<String>,
    /// Write the computed manifest to FILE.
    #[arg(long, value_name = "FILE")]
    pub record: Option<String>,
    /// Compare computed values with a manifest recorded earlier.
    #[arg(long, value_name = "FILE", conflicts_with = "record")]
    pub check: Option<String>,
    /// Run the brute-force and grid cross-checks.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Outcome of a command: exit status plus the document for stdout.
#[derive(Debug)]
pub struct Report {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn ok(stdout: String) -> Report {
        Report { status: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(status: i32, stderr: impl Into<String>) -> Report {
        Report { status, stdout: String::new(), stderr: stderr.into() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Report::ok(text),
                _ => Report::fail(EXIT_USAGE, text),
            }
        }
    }
}

/// Entry point for the binary: runs and writes the report.
pub fn main_with_env() -> i32 {
    let report = run(std::env::args_os());
    let _ = std::io::stdout().write_all(report.stdout.as_bytes());
    let _ = std::io::stderr().write_all(report.stderr.as_bytes());
    report.status
}

pub fn execute(cli: Cli) -> Report {
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Regret(a) => regret(a),
        Command::Compare(a) => compare_cmd(a),
        Command::Bayes(a) => bayes_cmd(a),
        Command::Reproduce(a) => reproduce_cmd(a),
    };
    result.unwrap_or_else(|r| r)
}

type CmdResult = Result<Report, Report>;

fn usage(msg: impl std::fmt::Display) -> Report {
    Report::fail(EXIT_USAGE, format!("error: {}\n", msg))
}

fn limit(msg: impl std::fmt::Display) -> Report {
    Report::fail(EXIT_LIMIT, format!("error: {}\n", msg))
}

fn rational_arg(name: &str, v: &Option<String>, default: i64) -> Result<Rational, Report> {
    match v {
        None => Ok(crate::rational::int(default)),
        Some(s) => parse_rational(s).map_err(|e| usage(format!("--{}: {}", name, e))),
    }
}

/// Parameters each generator accepts; anything else is a usage error.
fn accepted(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "travelers-dilemma" => &["p", "low", "high"],
        "centipede" => &["k", "payoffs", "p"],
        "coordination" => &["k"],
        "hawk-dove" => &["a", "b", "c"],
        "pd" => &["u1", "u2", "u3"],
        "staircase" => &["n"],
        "mixed-multiround" => &["n", "base"],
        "repeated-pd" => &["rounds", "u1", "u2", "u3"],
        "bertrand" | "bargaining" | "matching-pennies" | "asym-matching-pennies" | "rps" | "sd-vs-rm"
        | "gencoord" | "differ" => &[],
        _ => return None,
    })
}

fn given(a: &GameArgs) -> Vec<&'static str> {
    let mut out = Vec::new();
    let mut add = |set: bool, n: &'static str| {
        if set {
            out.push(n)
        }
    };
    add(a.p.is_some(), "p");
    add(a.low.is_some(), "low");
    add(a.high.is_some(), "high");
    add(a.k.is_some(), "k");
    add(a.payoffs.is_some(), "payoffs");
    add(a.a.is_some(), "a");
    add(a.b.is_some(), "b");
    add(a.c.is_some(), "c");
    add(a.u1.is_some(), "u1");
    add(a.u2.is_some(), "u2");
    add(a.u3.is_some(), "u3");
    add(a.n.is_some(), "n");
    add(a.base.is_some(), "base");
    add(a.rounds.is_some(), "rounds");
    out
}

/// Turns generator arguments into an [`Example`], validating them first.
pub fn example_from_args(a: &GameArgs) -> Result<Example, Report> {
    let name = a.generator.as_deref().unwrap_or_default();
    let allowed = accepted(name).ok_or_else(|| {
        usage(format!("unknown generator {:?}; choose one of: {}", name, Example::NAMES.join(", ")))
    })?;
    if let Some(bad) = given(a).into_iter().find(|p| !allowed.contains(p)) {
        return Err(usage(format!("--{} does not apply to generator {}", bad, name)));
    }
    let int_p = |default: i64| -> Result<i64, Report> {
        let r = rational_arg("p", &a.p, default)?;
        if !r.is_integer() {
            return Err(usage("--p must be an integer here"));
        }
        Ok(r.to_integer().try_into().map_err(|_| usage("--p out of range"))?)
    };
    Ok(match name {
        "travelers-dilemma" => Example::TravelersDilemma {
            p: int_p(2)?,
            low: a.low.unwrap_or(2),
            high: a.high.unwrap_or(100),
        },
        "centipede" => {
            let k = match &a.k {
                None => 10,
                Some(s) => s.parse::<u32>().map_err(|_| usage("--k must be a round count for centipede"))?,
            };
            let payoffs = match a.payoffs.unwrap_or(PayoffMode::Exponential) {
                PayoffMode::Exponential => {
                    if a.p.is_some() {
                        return Err(usage("--p applies only to --payoffs linear"));
                    }
                    CentipedePayoffs::Exponential
                }
                PayoffMode::Linear => CentipedePayoffs::Linear(rational_arg("p", &a.p, 2)?),
            };
            Example::Centipede { k, payoffs }
        }
        "bertrand" => Example::Bertrand,
        "bargaining" => Example::Bargaining,
        "matching-pennies" => Example::MatchingPennies,
        "asym-matching-pennies" => Example::AsymMatchingPennies,
        "coordination" => Example::Coordination { k: rational_arg("k", &a.k, 3)? },
        "hawk-dove" => Example::HawkDove {
            a: rational_arg("a", &a.a, 2)?,
            b: rational_arg("b", &a.b, 3)?,
            c: rational_arg("c", &a.c, 4)?,
        },
        "rps" => Example::Rps,
        "pd" => Example::Pd {
            u1: rational_arg("u1", &a.u1, 1)?,
            u2: rational_arg("u2", &a.u2, 3)?,
            u3: rational_arg("u3", &a.u3, 4)?,
        },
        "sd-vs-rm" => Example::SdVsRm,
        "staircase" => Example::Staircase { n: a.n.unwrap_or(5) },
        "gencoord" => Example::Gencoord,
        "differ" => Example::Differ,
        "mixed-multiround" => Example::MixedMultiround {
            n: a.n.unwrap_or(3),
            base: rational_arg("base", &a.base, 3)?,
        },
        "repeated-pd" => Example::RepeatedPd {
            rounds: a.rounds.unwrap_or(2),
            u1: rational_arg("u1", &a.u1, 1)?,
            u2: rational_arg("u2", &a.u2, 3)?,
            u3: rational_arg("u3", &a.u3, 4)?,
        },
        _ => unreachable!("checked by accepted()"),
    })
}

/// Loads or generates the game named by `a`, with a short description.
pub fn load(a: &GameArgs) -> Result<(Game, String), Report> {
    match (&a.game, &a.generator) {
        (Some(_), Some(_)) => Err(usage("give either --game or --gen, not both")),
        (None, None) => Err(usage("a game is required: --game FILE or --gen NAME")),
        (Some(path), None) => {
            if !given(a).is_empty() {
                return Err(usage("generator parameters need --gen"));
            }
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {}", path, e)))?;
            let g = load_game(&text).map_err(|e| usage(format!("{}: {}", path, e)))?;
            Ok((g, path.clone()))
        }
        (None, Some(name)) => {
            let ex = example_from_args(a)?;
            let g = ex.build().map_err(|e| match e {
                crate::game::GameError::TooLarge(_) => limit(&e),
                _ => usage(&e),
            })?;
            Ok((g, name.clone()))
        }
    }
}

fn header(g: &Game, name: &str) -> String {
    let sizes: Vec<String> = g.action_counts().iter().map(|c| c.to_string()).collect();
    format!("game: {} ({} actions)\n", name, sizes.join(" x "))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cap_of(c: &CommonArgs) -> usize {
    c.cap.unwrap_or_else(cap_from_env)
}

fn solve(a: SolveArgs) -> CmdResult {
    let concept = if a.mixed {
        if a.concept != Concept::RmPure && a.concept != Concept::RmMixed {
            return Err(usage("--mixed conflicts with the chosen --concept"));
        }
        Concept::RmMixed
    } else {
        a.concept
    };
    let (g, name) = load(&a.source)?;
    let common = &a.common;
    match concept {
        Concept::RmPure => solve_pure(&g, &name, common),
        Concept::RmMixed => solve_mixed(&g, &name, common),
        Concept::Nash => {
            let eq = pure_nash(&g);
            let mut status = EXIT_OK;
            let mut stderr = String::new();
            if common.oracle && !nash_oracle(&g, &eq) {
                status = EXIT_ORACLE;
                stderr.push_str("oracle: equilibrium enumeration disagrees with the deviation check\n");
            }
            let stdout = match common.format {
                Format::Json => pretty(&json!({
                    "concept": "Nash",
                    "equilibria": eq.iter().map(|p| g.profile_labels(p)).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let mut s = header(&g, &name);
                    s.push_str(&format!("pure Nash equilibria: {}\n", eq.len()));
                    for p in &eq {
                        s.push_str(&format!("  ({})\n", g.profile_labels(p).join(",")));
                    }
                    s
                }
            };
            Ok(Report { status, stdout, stderr })
        }
        Concept::Wd | Concept::Sd | Concept::Just => {
            let op = match concept {
                Concept::Wd => Operator::Wd,
                Concept::Sd => Operator::Sd,
                _ => Operator::Just,
            };
            let full = PureSpace::full(&g);
            let t = iterate_operator(&g, &full, op);
            let mut status = EXIT_OK;
            let mut stderr = String::new();
            if common.oracle {
                let verified = t.rounds.iter().enumerate().all(|(k, r)| {
                    let input = t.space(k);
                    match &r.meta {
                        StepMeta::Dominance(ws) => ws.iter().all(|w| w.verify(&g, input)),
                        StepMeta::Justifiability(j) => {
                            j.certificates.iter().all(|c| c.belief.is_none() || c.verify(&g, input))
                        }
                        StepMeta::Regrets(_) => true,
                    }
                });
                if !verified {
                    status = EXIT_ORACLE;
                    stderr.push_str("oracle: a witness or certificate failed verification\n");
                }
            }
            let stdout = match common.format {
                Format::Json => pretty(&operator_trace_to_json(&g, &t)),
                Format::Text => {
                    let mut s = header(&g, &name);
                    s.push_str(&format!("concept: {}\n", op));
                    for (k, r) in t.rounds.iter().enumerate().filter(|(_, r)| r.changed) {
                        s.push_str(&format!("round {}: {}\n", k + 1, r.space.describe(&g)));
                    }
                    s.push_str(&format!(
                        "fixed point after {} round(s) of change: {}\n",
                        t.rounds_of_change(),
                        t.fixed_point.describe(&g)
                    ));
                    s
                }
            };
            Ok(Report { status, stdout, stderr })
        }
    }
}

fn nash_oracle(g: &Game, eq: &[Vec<usize>]) -> bool {
    let mut expected = Vec::new();
    for p in g.profiles() {
        let stable = (0..g.players()).all(|i| {
            let mut q = p.clone();
            (0..g.num_actions(i)).all(|b| {
                q[i] = b;
                g.payoff(&q, i) <= g.payoff(&p, i)
            })
        });
        if stable {
            expected.push(p);
        }
    }
    expected == eq
}

fn solve_pure(g: &Game, name: &str, common: &CommonArgs) -> CmdResult {
    let t = rm_iterate(g, &PureSpace::full(g));
    let mut status = EXIT_OK;
    let mut stderr = String::new();
    if common.oracle {
        let rounds = brute_rm_rounds(g);
        if rounds.last().map(|s| s.as_slice()) != Some(t.fixed_point.sets()) {
            status = EXIT_ORACLE;
            stderr.push_str("oracle: brute-force RM reaches a different fixed point\n");
        }
    }
    let stdout = match common.format {
        Format::Json => pretty(&regret_pure::trace_to_json(g, &t)),
        Format::Text => {
            let mut s = header(g, name);
            s.push_str("concept: RM (pure)\n");
            for (k, r) in t.rounds.iter().enumerate().filter(|(_, r)| r.changed) {
                let mins: Vec<String> = r.meta.iter().map(|m| to_text_with_decimal(&m.minregret)).collect();
                s.push_str(&format!(
                    "round {}: {}  (minimum regret {})\n",
                    k + 1,
                    r.space.describe(g),
                    mins.join(", ")
                ));
            }
            s.push_str(&format!(
                "fixed point after {} round(s) of change: {}\n",
                t.rounds_of_change(),
                t.fixed_point.describe(g)
            ));
            s
        }
    };
    Ok(Report { status, stdout, stderr })
}

fn mixed_failure(e: &IterateError<MixedSpace, Vec<Rational>, MixedError>) -> Report {
    match e {
        IterateError::Step { error: MixedError::CapExceeded { .. }, .. } | IterateError::RoundLimit { .. } => limit(e),
        IterateError::Step { error: MixedError::Lp(_), .. } => limit(e),
        _ => usage(e),
    }
}

fn solve_mixed(g: &Game, name: &str, common: &CommonArgs) -> CmdResult {
    let cap = cap_of(common);
    let t = rm_mixed_iterate(g, &MixedSpace::full(g), cap, common.rounds_limit).map_err(|e| mixed_failure(&e))?;
    let mut status = EXIT_OK;
    let mut stderr = String::new();
    if common.oracle {
        let first = &t.rounds[0].meta;
        for (i, v) in first.iter().enumerate() {
            if g.num_actions(i) <= 4 && !grid_sandwich(g, i, v, 48) {
                status = EXIT_ORACLE;
                stderr.push_str(&format!("oracle: grid value for player {} contradicts the LP value\n", i));
            }
        }
    }
    let stdout = match common.format {
        Format::Json => pretty(&regret_mixed::trace_to_json(g, &t)),
        Format::Text => {
            let mut s = header(g, name);
            s.push_str("concept: RM (mixed)\n");
            for (k, r) in t.rounds.iter().enumerate().filter(|(_, r)| r.changed) {
                let mins: Vec<String> = r.meta.iter().map(to_text_with_decimal).collect();
                s.push_str(&format!(
                    "round {}: {}  (minimum regret {})\n",
                    k + 1,
                    r.space.describe(g),
                    mins.join(", ")
                ));
            }
            s.push_str(&format!(
                "fixed point after {} round(s) of change: {}\n",
                t.rounds_of_change(),
                t.fixed_point.describe(g)
            ));
            s
        }
    };
    Ok(Report { status, stdout, stderr })
}

fn regret(a: RegretArgs) -> CmdResult {
    let (g, name) = load(&a.source)?;
    let common = &a.common;
    let mut status = EXIT_OK;
    let mut stderr = String::new();
    if a.mixed {
        let full = MixedSpace::full(&g);
        let mut rows = Vec::new();
        for i in 0..g.players() {
            let (v, sigma) = min_mixed_regret(&g, &full, i).map_err(|e| limit(&e))?;
            if common.oracle && g.num_actions(i) <= 4 && !grid_sandwich(&g, i, &v, 48) {
                status = EXIT_ORACLE;
                stderr.push_str(&format!("oracle: grid value for player {} contradicts the LP value\n", i));
            }
            rows.push((v, sigma));
        }
        let stdout = match common.format {
            Format::Json => pretty(&Value::Array(
                rows.iter()
                    .enumerate()
                    .map(|(i, (v, s))| {
                        json!({
                            "player": i,
                            "minregret": v.to_string(),
                            "witness": s.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            )),
            Format::Text => {
                let mut s = header(&g, &name);
                for (i, (v, sigma)) in rows.iter().enumerate() {
                    s.push_str(&format!(
                        "player {}: minimax regret {} at {}\n",
                        i + 1,
                        to_text_with_decimal(v),
                        sigma.describe(&g)
                    ));
                }
                s
            }
        };
        return Ok(Report { status, stdout, stderr });
    }
    let full = PureSpace::full(&g);
    let reports: Vec<_> = (0..g.players()).map(|i| regret_report(&g, &full, i)).collect();
    if common.oracle {
        for (i, r) in reports.iter().enumerate() {
            let brute = reproduce::brute_regrets(&g, full.sets(), i);
            if r.regrets.iter().map(|(_, x)| x.clone()).collect::<Vec<_>>() != brute {
                status = EXIT_ORACLE;
                stderr.push_str(&format!("oracle: brute-force regrets differ for player {}\n", i));
            }
        }
    }
    let stdout = match common.format {
        Format::Json => pretty(&Value::Array(reports.iter().map(|r| r.to_json(&g)).collect())),
        Format::Text => {
            let mut s = header(&g, &name);
            for r in &reports {
                s.push_str(&format!("player {}:\n", r.player + 1));
                for (act, x) in &r.regrets {
                    let mark = if r.argmin.contains(act) { " *" } else { "" };
                    s.push_str(&format!("  {:<12} {}{}\n", g.label(r.player, *act), to_text_with_decimal(x), mark));
                }
            }
            s
        }
    };
    Ok(Report { status, stdout, stderr })
}

fn compare_cmd(a: CompareArgs) -> CmdResult {
    let (g, name) = load(&a.source)?;
    let c = compare(&g);
    Ok(Report::ok(match a.format {
        Format::Json => pretty(&c.to_json(&g)),
        Format::Text => format!("{}{}", header(&g, &name), c.to_text(&g, a.max_profiles)),
    }))
}

fn bayes_cmd(a: BayesArgs) -> CmdResult {
    let bg: BayesianGame = match (&a.game, a.auction) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {}", path, e)))?;
            load_bayesian(&text).map_err(|e| usage(format!("{}: {}", path, e)))?
        }
        (None, Some(kind)) => {
            let values: Vec<i64> = a
                .values
                .split(',')
                .map(|v| v.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| usage("--values must be comma-separated integers"))?;
            let max_bid = a.max_bid.unwrap_or_else(|| values.iter().copied().max().unwrap_or(0));
            let kind = match kind {
                AuctionArg::FirstPrice => AuctionKind::FirstPrice,
                AuctionArg::SecondPrice => AuctionKind::SecondPrice,
            };
            make_auction(kind, &[values.clone(), values], Prior::Uniform, max_bid).map_err(|e| usage(&e))?
        }
        _ => return Err(usage("give exactly one of --game FILE or --auction KIND")),
    };
    let t = rm_bayes_iterate(&bg, &TypedSpace::full(&bg));
    Ok(Report::ok(match a.format {
        Format::Json => pretty(&bayes::trace_to_json(&bg, &t)),
        Format::Text => {
            let g = bg.actions();
            let mut s = String::new();
            for (k, r) in t.rounds.iter().enumerate() {
                s.push_str(&format!("round {}{}:\n", k + 1, if r.changed { "" } else { " (fixed point)" }));
                for rep in &r.meta {
                    let acts: Vec<&str> = rep.argmin.iter().map(|&x| g.label(rep.player, x)).collect();
                    s.push_str(&format!(
                        "  player {} type {:<6} keeps {{{}}}  minimum expected regret {}\n",
                        rep.player + 1,
                        bg.types(rep.player)[rep.type_index],
                        acts.join(","),
                        to_text_with_decimal(&rep.minregret)
                    ));
                }
            }
            s
        }
    }))
}

fn reproduce_cmd(a: ReproduceArgs) -> CmdResult {
    let opts = Options { oracle: a.oracle };
    let claims = match &a.group {
        None => reproduce::manifest(&opts),
        Some(name) => {
            let groups = reproduce::groups();
            let g = groups.iter().find(|g| g.name == name).ok_or_else(|| {
                let names: Vec<&str> = groups.iter().map(|g| g.name).collect();
                usage(format!("unknown group {:?}; choose one of: {}", name, names.join(", ")))
            })?;
            (g.run)(&opts)
        }
    };
    let doc = reproduce::manifest_to_json(&claims);
    let mut status = EXIT_OK;
    let mut stderr = String::new();
    if let Some(path) = &a.record {
        std::fs::write(path, pretty(&doc)).map_err(|e| usage(format!("{}: {}", path, e)))?;
    }
    if let Some(path) = &a.check {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {}", path, e)))?;
        let recorded: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {}", path, e)))?;
        let problems = reproduce::check_against(&claims, &recorded).map_err(|e| usage(format!("{}: {}", path, e)))?;
        if !problems.is_empty() {
            status = EXIT_ORACLE;
            for p in problems {
                stderr.push_str(&format!("check: {}\n", p));
            }
        }
    }
    if claims.iter().any(|c| c.oracle == Some(false)) {
        status = EXIT_ORACLE;
        stderr.push_str("oracle: at least one cross-check disagrees\n");
    }
    let stdout = match a.format {
        Format::Json => pretty(&doc),
        Format::Text => reproduce::manifest_to_text(&claims),
    };
    Ok(Report { status, stdout, stderr })
}
