mod human;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ramsey_core::acceptance::{self, AcceptanceOptions, Budget, Status};
use ramsey_core::bounds;
use ramsey_core::game::play_match;
use ramsey_core::solver::{self, SolveOptions, VerifyOptions, VerifyOutcome};
use ramsey_core::strategies::{by_name, Strategy};
use ramsey_core::{GameConfig, MatchTranscript, Mode, Player, SolverError, TargetGraph};

use human::Human;
use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "ramsey", version, about = "Biased Ramsey achievement games on complete graphs")]
struct Cli {
    /// Worker threads for solves and verifications.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the report to FILE (.csv for the table, JSON otherwise).
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Exact game value on one board.
    Solve {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        game: GameArgs,
        /// Node budget.
        #[arg(long, default_value_t = SolveOptions::default().budget)]
        budget: u64,
    },
    /// Smallest board on which Alice wins, scanning N = 2..=max.
    Anum {
        #[arg(long)]
        max: usize,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = SolveOptions::default().budget)]
        budget: u64,
    },
    /// Exhaustively checks a strategy against every opponent reply.
    Verify {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        strategy: String,
        #[arg(long, value_enum, default_value_t = Side::Alice)]
        side: Side,
        #[command(flatten)]
        extra: StrategyArgs,
        #[arg(long, default_value_t = VerifyOptions::default().budget)]
        budget: u64,
    },
    /// Plays one match between two named strategies ("human" reads stdin).
    Play {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        alice: String,
        #[arg(long)]
        bob: String,
        #[command(flatten)]
        extra: StrategyArgs,
        /// Transcript file; printed to stdout when absent.
        #[arg(long, value_name = "FILE")]
        transcript: Option<PathBuf>,
    },
    /// Replays a transcript file and checks its recorded outcome.
    Replay { file: PathBuf },
    /// Closed-form bounds.
    Bounds {
        #[command(subcommand)]
        which: BoundsCmd,
    },
    /// Runs the acceptance criteria and prints a pass/fail table.
    Reproduce {
        /// Criterion id; repeat to run several.
        #[arg(long)]
        only: Vec<String>,
        #[arg(long, value_enum, default_value_t = BudgetArg::Full)]
        budget: BudgetArg,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// `n <= a(p,q;T) <= n + q*floor((n-2)/p)` for trees of order n.
    Tree {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        q: u64,
    },
    /// Star bounds for K1,n-1; with --eps also the biased lower bound for K1,n.
    Star {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Discrepancy draw certificate for K1,n-1 at both roundings of N.
    Discrepancy {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Args, Debug, Clone)]
struct GameArgs {
    /// Graph file, inline edge list ("4; 1-2 2-3 3-4"), or P<n>, K1,<k>, S<k>, C<n>, K<n>.
    #[arg(long)]
    target: String,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    q: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Strong)]
    mode: ModeArg,
}

#[derive(Args, Debug, Clone)]
struct StrategyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Star blocker slack.
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    /// Star size the blocker guards against; defaults to the target's max degree.
    #[arg(long)]
    star: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Strong,
    Weak,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Side {
    Alice,
    Bob,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BudgetArg {
    Low,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strong => Mode::Strong,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

impl From<Side> for Player {
    fn from(s: Side) -> Player {
        match s {
            Side::Alice => Player::Alice,
            Side::Bob => Player::Bob,
        }
    }
}

/// Exit status beyond plain success or error.
enum Verdict {
    Done,
    Unsolved,
    Failed,
}

fn shorthand(spec: &str) -> Option<TargetGraph> {
    let s = spec.trim();
    let num = |t: &str| t.parse::<usize>().ok();
    if let Some(k) = s.strip_prefix("K1,").and_then(num) {
        return (k >= 1).then(|| TargetGraph::star(k));
    }
    let (head, rest) = s.split_at(s.find(|c: char| c.is_ascii_digit())?);
    let n = num(rest)?;
    match head {
        "P" if n >= 2 => Some(TargetGraph::path(n)),
        "S" if n >= 1 => Some(TargetGraph::star(n)),
        "C" if n >= 3 => Some(TargetGraph::cycle(n)),
        "K" if n >= 2 => Some(TargetGraph::complete(n)),
        _ => None,
    }
}

fn load_target(spec: &str) -> Result<TargetGraph> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let body: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join(" ");
        return TargetGraph::parse(&body).with_context(|| format!("parsing {spec}"));
    }
    if let Some(g) = shorthand(spec) {
        return Ok(g);
    }
    TargetGraph::parse(spec).map_err(|e| anyhow!("target {spec:?} is neither a file, a shorthand nor an edge list: {e}"))
}

fn echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("ramsey {}", args.join(" "))
}

fn game_inputs(report: &mut RunReport, g: &GameArgs, target: &TargetGraph) {
    report.input("target", target.to_text());
    report.input("p", g.p);
    report.input("q", g.q);
    report.input("mode", Mode::from(g.mode));
}

fn make_strategy(name: &str, g: &GameArgs, target: &TargetGraph, extra: &StrategyArgs) -> Result<Box<dyn Strategy>> {
    if name == "human" {
        return Ok(Box::new(Human));
    }
    let star = extra.star.unwrap_or_else(|| target.max_degree());
    by_name(name, g.p, g.q, extra.eps, star, extra.seed).map_err(|e| anyhow!("{e}"))
}

fn cmd_solve(cli: &Cli, n: usize, g: &GameArgs, budget: u64, report: &mut RunReport) -> Result<Verdict> {
    let target = load_target(&g.target)?;
    game_inputs(report, g, &target);
    report.input("n", n);
    let opts = SolveOptions { budget, threads: cli.threads.max(1), ..SolveOptions::default() };
    match solver::solve(n, g.p, g.q, &target, g.mode.into(), &opts) {
        Ok(r) => {
            report.add_nodes(r.nodes_expanded);
            let pv: Vec<String> = r.pv.iter().map(|(e, c)| format!("{e}{}", c.letter())).collect();
            report.row(vec![n.to_string(), r.outcome.to_string(), r.nodes_expanded.to_string(), pv.join(" ")]);
            Ok(Verdict::Done)
        }
        Err(SolverError::Unsolved { budget }) => {
            report.row(vec![n.to_string(), format!("unsolved ({budget} nodes)"), budget.to_string(), String::new()]);
            Ok(Verdict::Unsolved)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_anum(cli: &Cli, max: usize, g: &GameArgs, budget: u64, report: &mut RunReport) -> Result<Verdict> {
    let target = load_target(&g.target)?;
    game_inputs(report, g, &target);
    report.input("max", max);
    let opts = SolveOptions { budget, threads: cli.threads.max(1), ..SolveOptions::default() };
    let r = solver::achievement_number(&target, g.p, g.q, g.mode.into(), max, &opts)?;
    report.add_nodes(r.nodes);
    for (n, o) in &r.per_n {
        let o = o.map_or_else(|| "unsolved".to_string(), |o| o.to_string());
        report.row(vec![n.to_string(), o]);
    }
    let value = match r.value {
        Some(v) => v.to_string(),
        None if r.per_n.iter().any(|(_, o)| o.is_none()) => "unknown".to_string(),
        None => format!(">{max}"),
    };
    report.row(vec!["value".into(), value]);
    Ok(if r.value.is_none() && r.per_n.iter().any(|(_, o)| o.is_none()) { Verdict::Unsolved } else { Verdict::Done })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    n: usize,
    g: &GameArgs,
    name: &str,
    side: Side,
    extra: &StrategyArgs,
    budget: u64,
    report: &mut RunReport,
) -> Result<Verdict> {
    let target = load_target(&g.target)?;
    game_inputs(report, g, &target);
    report.input("n", n);
    report.input("strategy", name);
    report.input("side", format!("{side:?}"));
    if name == "human" {
        bail!("a human cannot be verified exhaustively");
    }
    let strat = make_strategy(name, g, &target, extra)?;
    let config = GameConfig::new(n, g.p, g.q, target, g.mode.into())?;
    let opts = VerifyOptions { budget, threads: cli.threads.max(1) };
    match solver::verify_strategy(strat.as_ref(), side.into(), config, &opts) {
        Ok(VerifyOutcome::Verified { leaves, nodes }) => {
            report.add_nodes(nodes);
            report.row(vec!["verified".into(), format!("{leaves} complete lines")]);
            Ok(Verdict::Done)
        }
        Ok(VerifyOutcome::Counterexample(t)) => {
            report.row(vec!["counterexample".into(), t.to_text().trim_end().replace('\n', " | ")]);
            Ok(Verdict::Failed)
        }
        Err(SolverError::Unsolved { budget }) => {
            report.row(vec!["unsolved".into(), format!("budget of {budget} positions exhausted")]);
            Ok(Verdict::Unsolved)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_play(
    n: usize,
    g: &GameArgs,
    names: (&str, &str),
    extra: &StrategyArgs,
    transcript: Option<&Path>,
    report: &mut RunReport,
) -> Result<Verdict> {
    let target = load_target(&g.target)?;
    game_inputs(report, g, &target);
    report.input("n", n);
    report.input("alice", names.0);
    report.input("bob", names.1);
    report.input("seed", extra.seed);
    let mut alice = make_strategy(names.0, g, &target, extra)?;
    let mut bob = make_strategy(names.1, g, &target, extra)?;
    let config = GameConfig::new(n, g.p, g.q, target, g.mode.into())?;
    let t = play_match(alice.as_mut(), bob.as_mut(), config);
    let text = t.to_text();
    match transcript {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    let at = t.outcome.winning_move_index.map_or_else(String::new, |i| (i + 1).to_string());
    let forfeit = t.forfeit.as_ref().map_or_else(String::new, |f| format!("{:?}: {}", f.player, f.reason));
    report.row(vec![t.outcome.value.to_string(), t.moves.len().to_string(), at, forfeit]);
    Ok(Verdict::Done)
}

fn cmd_replay(file: &Path, report: &mut RunReport) -> Result<Verdict> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let t = MatchTranscript::from_text(&text)?;
    report.input("file", file.display());
    let state = t.replay()?;
    let replayed = if t.forfeit.is_some() { t.outcome.value } else { state.outcome().value };
    let agrees = replayed == t.outcome.value;
    report.row(vec![t.outcome.value.to_string(), replayed.to_string(), t.moves.len().to_string(), agrees.to_string()]);
    if !agrees {
        bail!("recorded outcome {} but replay gives {replayed}", t.outcome.value);
    }
    Ok(Verdict::Done)
}

fn cmd_bounds(which: &BoundsCmd, report: &mut RunReport) -> Result<Verdict> {
    match which {
        BoundsCmd::Tree { n, p, q } => {
            report.input("n", n);
            report.input("p", p);
            report.input("q", q);
            let (lo, hi) = bounds::tree_bounds(*n, *p, *q)?;
            report.row(vec!["tree lower".into(), lo.to_string()]);
            report.row(vec!["tree upper".into(), hi.to_string()]);
        }
        BoundsCmd::Star { n, p, q, eps } => {
            report.input("n", n);
            let (lo, hi) = bounds::star_bounds_classical(*n)?;
            report.row(vec![format!("K1,{} lower", n - 1), format!("{lo:.12}")]);
            report.row(vec![format!("K1,{} upper", n - 1), format!("{hi}")]);
            if let Some(eps) = eps {
                report.input("p", p);
                report.input("q", q);
                report.input("eps", eps);
                let b = bounds::star_lower_bound_biased(*n, *p, *q, *eps)?;
                report.row(vec![format!("K1,{n} biased lower"), format!("{:.12}", b.value)]);
                report.row(vec!["alpha".into(), format!("{:.12}", b.alpha)]);
                report.row(vec!["n0".into(), b.n0.to_string()]);
                report.row(vec!["applies".into(), b.applicable.to_string()]);
            }
        }
        BoundsCmd::Discrepancy { n } => {
            report.input("n", n);
            let r = bounds::star_draw_report(*n)?;
            report.row(vec!["N".into(), format!("{:.6}", r.board.exact)]);
            for (label, order, cert, bal) in [
                ("floor", r.board.floor, &r.floor, &r.balancer_floor),
                ("ceil", r.board.ceil, &r.ceil, &r.balancer_ceil),
            ] {
                let cell = match (cert, bal) {
                    (Some(c), Some(b)) => format!(
                        "N={order} certified={} worst={:.6} balancer_sum={:.12}",
                        c.certified, c.worst, b.sum
                    ),
                    _ => format!("N={order} no instance"),
                };
                report.row(vec![label.into(), cell]);
            }
        }
    }
    Ok(Verdict::Done)
}

fn cmd_reproduce(cli: &Cli, only: &[String], budget: BudgetArg, report: &mut RunReport) -> Result<Verdict> {
    let budget = match budget {
        BudgetArg::Low => Budget::Low,
        BudgetArg::Full => Budget::Full,
    };
    report.input("budget", format!("{budget:?}"));
    let opts = AcceptanceOptions { budget, threads: cli.threads.max(1) };
    let ids: Vec<String> =
        if only.is_empty() { acceptance::CRITERIA.iter().map(|s| s.to_string()).collect() } else { only.to_vec() };
    let mut failed = Vec::new();
    let mut skipped = false;
    for id in &ids {
        let r = acceptance::run_criterion(id, &opts).ok_or_else(|| anyhow!("unknown criterion {id:?}"))?;
        eprintln!("{}  [{:.1}s]", r.line(), r.elapsed_secs);
        match r.status {
            Status::Fail => failed.push(r.id.clone()),
            Status::Skipped => skipped = true,
            Status::Pass => {}
        }
        report.row(vec![r.id, r.status.to_string(), r.title, r.detail]);
    }
    if !failed.is_empty() {
        eprintln!("failed: {}", failed.join(", "));
        return Ok(Verdict::Failed);
    }
    Ok(if skipped { Verdict::Unsolved } else { Verdict::Done })
}

fn run(cli: &Cli) -> Result<Verdict> {
    let start = Instant::now();
    let columns: &[&str] = match &cli.cmd {
        Cmd::Solve { .. } => &["N", "outcome", "nodes", "principal variation"],
        Cmd::Anum { .. } => &["N", "outcome"],
        Cmd::Verify { .. } => &["verdict", "detail"],
        Cmd::Play { .. } => &["outcome", "moves", "winning move", "forfeit"],
        Cmd::Replay { .. } => &["recorded", "replayed", "moves", "agrees"],
        Cmd::Bounds { .. } => &["quantity", "value"],
        Cmd::Reproduce { .. } => &["id", "status", "criterion", "detail"],
    };
    let mut report = RunReport::new(echo(), columns);
    let verdict = match &cli.cmd {
        Cmd::Solve { n, game, budget } => cmd_solve(cli, *n, game, *budget, &mut report)?,
        Cmd::Anum { max, game, budget } => cmd_anum(cli, *max, game, *budget, &mut report)?,
        Cmd::Verify { n, game, strategy, side, extra, budget } => {
            cmd_verify(cli, *n, game, strategy, *side, extra, *budget, &mut report)?
        }
        Cmd::Play { n, game, alice, bob, extra, transcript } => {
            cmd_play(*n, game, (alice, bob), extra, transcript.as_deref(), &mut report)?
        }
        Cmd::Replay { file } => cmd_replay(file, &mut report)?,
        Cmd::Bounds { which } => cmd_bounds(which, &mut report)?,
        Cmd::Reproduce { only, budget } => cmd_reproduce(cli, only, *budget, &mut report)?,
    };
    report.wall_clock_secs = start.elapsed().as_secs_f64();
    if matches!(cli.cmd, Cmd::Play { transcript: None, .. }) {
        eprint!("{}", report.table());
    } else {
        print!("{}", report.table());
    }
    if let Some(path) = &cli.out {
        report.write_to(path)?;
    }
    Ok(verdict)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Verdict::Done) => ExitCode::SUCCESS,
        Ok(Verdict::Unsolved) => ExitCode::from(2),
        Ok(Verdict::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ramsey_core::Outcome;

    #[test]
    fn target_shorthands() {
        assert_eq!(shorthand("P4").unwrap(), TargetGraph::path(4));
        assert_eq!(shorthand("K1,3").unwrap(), TargetGraph::star(3));
        assert_eq!(shorthand("S3").unwrap(), TargetGraph::star(3));
        assert_eq!(shorthand("K4").unwrap(), TargetGraph::complete(4));
        assert!(shorthand("P1").is_none());
        assert!(shorthand("Q4").is_none());
        assert_eq!(load_target("3; 1-2 2-3").unwrap(), TargetGraph::path(3));
    }

    #[test]
    fn outcome_names_parse() {
        assert_eq!("AliceWin".parse::<Outcome>().unwrap(), Outcome::AliceWin);
    }
}
