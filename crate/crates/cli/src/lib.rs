//! `mbox` command line: solve, play, sweep, criteria, verify and cache.
//!
//! Exit codes: 0 on success, 2 when a result is unsolved within the node
//! budget (or a verification check fails), 1 on any other error.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mbox_core::criteria::{
    enforcer_gcd_condition, gcd_avoider_witness, n_mono_avoider, n_mono_enforcer, n_strict,
    potential_criterion, strict_last_mover,
};
use mbox_core::hypergames::{
    find_matching, play_hyper_match, GraphSpec, HyperState, HyperStrategy, Hypergraph,
    IsolateVertexAvoider, MatchingEnforcer, Objective, RandomHyperPlayer, SpreadEnforcer,
};
use mbox_core::solver::DEFAULT_NODE_BUDGET;
use mbox_core::{
    play_match, uniform_game, Bias, GameDescription, LargestBoxEnforcer, MonoAvoider,
    MonoEnforcer, OptimalStrategy, Position, RandomStrategy, Rules, Side, SolveError, Solver,
    Strategy, StrategyS, StrictAvoider,
};
use rayon::prelude::*;

pub mod verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNSOLVED: i32 = 2;

/// Environment variable overriding the solver's node budget.
pub const BUDGET_VAR: &str = "MBOX_NODE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "mbox", version, about = "Misère box games: solver, strategies and thresholds")]
pub struct Cli {
    /// Solver cache to load before the command and save after it.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a game file and print the winner with an optimal line.
    Solve { gamefile: PathBuf },
    /// Play two named strategies against each other.
    Play {
        gamefile: PathBuf,
        #[arg(long)]
        avoider: String,
        #[arg(long)]
        enforcer: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Play on this target hypergraph instead of the boxes.
        #[arg(long, conflicts_with = "graph")]
        hypergraph: Option<PathBuf>,
        /// Play the isolate-a-vertex game on this graph instead of the boxes.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Tabulate winners over a parameter grid as CSV.
    Sweep {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        k: String,
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value_t = RulesArg::Both)]
        rules: RulesArg,
        #[arg(long, value_enum, default_value_t = FirstArg::Both)]
        first: FirstArg,
        #[arg(long, value_enum, default_value_t = Source::Solver)]
        source: Source,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the closed-form criteria and thresholds for a game file.
    Criteria { gamefile: PathBuf },
    /// Run the acceptance checks.
    Verify {
        /// Run only this check.
        #[arg(long)]
        only: Option<u8>,
    },
    /// Inspect or build a solver cache file.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Validate a cache file and report its size.
    Load { file: PathBuf },
    /// Solve the given game files and write the memo to `file`.
    Save { file: PathBuf, gamefiles: Vec<PathBuf> },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RulesArg {
    Strict,
    Monotone,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FirstArg {
    Avoider,
    Enforcer,
    Both,
}

/// Where a sweep row's winner comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Exact search.
    Solver,
    /// The constructive strategy for the applicable side, checked against
    /// an optimal opponent. Rows it does not settle are `unsolved`.
    Strategy,
    /// Closed-form criteria only. Rows they do not settle are `unsolved`.
    Criterion,
}

impl Source {
    fn label(self) -> &'static str {
        match self {
            Source::Solver => "solver",
            Source::Strategy => "strategy",
            Source::Criterion => "criterion",
        }
    }
}

/// Parses and runs one command line, writing to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_ERROR;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

/// Node budget from the environment, or the default.
pub fn node_budget() -> Result<u64> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_VAR} must be a positive integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let solver = Arc::new(Solver::with_budget(node_budget()?));
    if let Some(path) = &cli.cache {
        if path.exists() {
            load_cache(&solver, path)?;
        }
    }
    let code = match cli.command {
        Command::Solve { gamefile } => solve(&solver, &gamefile, out)?,
        Command::Play {
            gamefile,
            avoider,
            enforcer,
            seed,
            hypergraph,
            graph,
        } => {
            let desc = read_game(&gamefile)?;
            match (hypergraph, graph) {
                (Some(h), _) => {
                    let h = Hypergraph::parse(&read(&h)?).context("parsing hypergraph")?;
                    play_hyper(Objective::AvoidTargets(h), &desc, &avoider, &enforcer, seed, out)?
                }
                (None, Some(g)) => {
                    let g = GraphSpec::parse(&read(&g)?).context("parsing graph")?;
                    play_hyper(Objective::IsolateVertex(g), &desc, &avoider, &enforcer, seed, out)?
                }
                (None, None) => play(&solver, &desc, &avoider, &enforcer, seed, out)?,
            }
        }
        Command::Sweep {
            p,
            q,
            k,
            n,
            rules,
            first,
            source,
            out: path,
        } => {
            let grid = SweepGrid {
                p: parse_range(&p).context("--p")?,
                q: parse_range(&q).context("--q")?,
                k: parse_range(&k).context("--k")?,
                n: parse_range(&n).context("--n")?,
                rules: match rules {
                    RulesArg::Strict => vec![Rules::Strict],
                    RulesArg::Monotone => vec![Rules::Monotone],
                    RulesArg::Both => vec![Rules::Strict, Rules::Monotone],
                },
                first: match first {
                    FirstArg::Avoider => vec![Side::Avoider],
                    FirstArg::Enforcer => vec![Side::Enforcer],
                    FirstArg::Both => vec![Side::Avoider, Side::Enforcer],
                },
            };
            let rows = sweep(&solver, &grid, source);
            write_sweep_csv(&rows, &path)?;
            let unsolved = rows.iter().filter(|r| r.winner.is_none()).count();
            writeln!(out, "wrote {} rows to {} ({unsolved} unsolved)", rows.len(), path.display())?;
            if source == Source::Solver && unsolved > 0 {
                EXIT_UNSOLVED
            } else {
                EXIT_OK
            }
        }
        Command::Criteria { gamefile } => {
            criteria(&read_game(&gamefile)?, out)?;
            EXIT_OK
        }
        Command::Verify { only } => {
            let reports = match only {
                Some(id) => vec![verify::run(id, &solver)],
                None => verify::run_all(&solver),
            };
            for r in &reports {
                writeln!(out, "{}", r.line())?;
            }
            if reports.iter().all(|r| r.passed) {
                EXIT_OK
            } else {
                EXIT_UNSOLVED
            }
        }
        Command::Cache { action } => match action {
            CacheAction::Load { file } => {
                let n = load_cache(&solver, &file)?;
                writeln!(out, "{n} records in {}", file.display())?;
                EXIT_OK
            }
            CacheAction::Save { file, gamefiles } => {
                let mut code = EXIT_OK;
                for g in &gamefiles {
                    let pos = read_game(g)?.to_position()?;
                    if let Err(e) = solver.solve(&pos) {
                        writeln!(out, "{}: {e}", g.display())?;
                        code = EXIT_UNSOLVED;
                    }
                }
                save_cache(&solver, &file)?;
                writeln!(out, "{} records written to {}", solver.memo_len(), file.display())?;
                code
            }
        },
    };
    if let Some(path) = &cli.cache {
        save_cache(&solver, path)?;
    }
    Ok(code)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_game(path: &Path) -> Result<GameDescription> {
    GameDescription::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_cache(solver: &Solver, path: &Path) -> Result<usize> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    solver
        .load_cache(BufReader::new(f))
        .with_context(|| format!("loading cache {}", path.display()))
}

fn save_cache(solver: &Solver, path: &Path) -> Result<()> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(f);
    solver.save_cache(&mut w)?;
    w.flush()?;
    Ok(())
}

fn solve(solver: &Solver, gamefile: &Path, out: &mut dyn Write) -> Result<i32> {
    let mut pos = read_game(gamefile)?.to_position()?;
    let root = match solver.solve(&pos) {
        Ok(r) => r,
        Err(SolveError::BudgetExceeded(b)) => {
            writeln!(out, "winner: unsolved (node budget {b} exceeded)")?;
            return Ok(EXIT_UNSOLVED);
        }
    };
    writeln!(out, "winner: {}", root.winner)?;
    writeln!(out, "nodes: {}", root.node_count)?;
    writeln!(out, "optimal line:")?;
    writeln!(out, "  {pos}")?;
    while !pos.is_over() {
        let r = solver.solve(&pos)?;
        let mv = r.optimal_move.context("solver returned no move for a live position")?;
        let mover = pos.to_move();
        pos = pos.apply_move(&mv)?;
        writeln!(out, "  {} {mv} -> {pos}", mover.letter())?;
    }
    Ok(EXIT_OK)
}

/// Strategy by name. `optimal` needs the solver; `random` uses `seed`.
pub fn strategy_by_name(name: &str, solver: &Arc<Solver>, seed: u64) -> Result<Box<dyn Strategy>> {
    Ok(match name {
        "optimal" => Box::new(OptimalStrategy::new(solver.clone())),
        "random" => Box::new(RandomStrategy::new(seed)),
        "strict-avoider" => Box::new(StrictAvoider::new()),
        "strategy-s" => Box::new(StrategyS),
        "mono-avoider" => Box::new(MonoAvoider::new()),
        "mono-enforcer" => Box::new(MonoEnforcer),
        "largest-box" => Box::new(LargestBoxEnforcer),
        other => bail!(
            "unknown strategy `{other}` (expected optimal, random, strict-avoider, strategy-s, \
             mono-avoider, mono-enforcer or largest-box)"
        ),
    })
}

fn play(
    solver: &Arc<Solver>,
    desc: &GameDescription,
    avoider: &str,
    enforcer: &str,
    seed: u64,
    out: &mut dyn Write,
) -> Result<i32> {
    let pos = desc.to_position()?;
    let mut a = strategy_by_name(avoider, solver, seed)?;
    let mut e = strategy_by_name(enforcer, solver, seed.wrapping_add(1))?;
    let v = play_match(&pos, a.as_mut(), e.as_mut());
    writeln!(out, "  {pos}")?;
    for ((side, mv), after) in v.transcript.iter().zip(v.positions.iter().skip(1)) {
        writeln!(out, "  {} {mv} -> {after}", side.letter())?;
    }
    if let Some((side, why)) = &v.forfeit {
        writeln!(out, "{side} forfeits: {why}")?;
    }
    if let Some(id) = v.losing_box {
        writeln!(out, "Avoider completed box {id}")?;
    }
    writeln!(out, "winner: {}", v.winner)?;
    Ok(EXIT_OK)
}

fn hyper_strategy(name: &str, objective: &Objective, seed: u64) -> Result<Box<dyn HyperStrategy>> {
    Ok(match name {
        "random" => Box::new(RandomHyperPlayer::new(seed)),
        "spread" => Box::new(SpreadEnforcer),
        "isolate-vertex" => Box::new(IsolateVertexAvoider::new()),
        "matching-enforcer" => {
            let Objective::AvoidTargets(h) = objective else {
                bail!("matching-enforcer needs --hypergraph");
            };
            let max = h.edges().iter().map(Vec::len).max().unwrap_or(0);
            let matching = (1..=h.edges().len())
                .rev()
                .find_map(|want| find_matching(h, max, want))
                .context("hypergraph has no edges to match")?;
            Box::new(MatchingEnforcer::new(matching))
        }
        other => bail!(
            "unknown hypergraph strategy `{other}` (expected random, spread, isolate-vertex or \
             matching-enforcer)"
        ),
    })
}

fn play_hyper(
    objective: Objective,
    desc: &GameDescription,
    avoider: &str,
    enforcer: &str,
    seed: u64,
    out: &mut dyn Write,
) -> Result<i32> {
    let mut a = hyper_strategy(avoider, &objective, seed)?;
    let mut e = hyper_strategy(enforcer, &objective, seed.wrapping_add(1))?;
    let state = HyperState::new(objective, desc.bias, desc.rules, desc.first);
    let v = play_hyper_match(&state, a.as_mut(), e.as_mut());
    for (side, claim) in &v.transcript {
        writeln!(out, "  {} {claim:?}", side.letter())?;
    }
    if let Some((side, why)) = &v.forfeit {
        writeln!(out, "{side} forfeits: {why}")?;
    }
    writeln!(out, "winner: {}", v.winner)?;
    Ok(EXIT_OK)
}

fn criteria(desc: &GameDescription, out: &mut dyn Write) -> Result<()> {
    let (p, q) = (desc.bias.p(), desc.bias.q());
    let smallest = *desc.sizes.iter().min().context("no boxes")?;
    let largest = *desc.sizes.iter().max().context("no boxes")?;
    let total: u64 = desc.sizes.iter().map(|&s| u64::from(s)).sum();
    let n = desc.sizes.len() as u64;
    writeln!(out, "game: {desc}")?;
    let fmt_n = |r: Result<u64, _>| match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("n/a ({e})"),
    };
    match desc.rules {
        Rules::Strict => {
            match gcd_avoider_witness(p, q, smallest) {
                Some(l) => writeln!(out, "gcd witness: l={l} divides the smallest box; Avoider wins")?,
                None => writeln!(out, "gcd witness: none for smallest box {smallest}")?,
            }
            let cond = enforcer_gcd_condition(p, q, largest);
            writeln!(out, "enforcer gcd condition (k={largest}): {}", if cond { "holds" } else { "fails" })?;
            let bound = n_strict(p, q, largest);
            writeln!(out, "strict threshold N({p},{q},{largest}): {}", fmt_n(bound.clone()))?;
            if cond && desc.sizes.iter().all(|&s| s == largest) {
                if let Ok(b) = bound {
                    if n >= b {
                        writeln!(out, "uniform boxes at or above the threshold: Enforcer wins")?;
                    }
                }
            }
            let last = strict_last_mover(total, desc.bias, desc.first);
            writeln!(out, "last mover: {last}")?;
            let pc = potential_criterion(&desc.sizes, p, last == Side::Avoider);
            writeln!(out, "potential criterion: {}", if pc { "holds; Avoider wins" } else { "fails" })?;
        }
        Rules::Monotone => {
            let av = n_mono_avoider(p, q, smallest);
            writeln!(out, "monotone Avoider threshold N({p},{q},{smallest}): {}", fmt_n(av.clone()))?;
            if let Ok(b) = av {
                if smallest > p && q >= smallest * p && n <= b {
                    writeln!(out, "box count within the Avoider threshold: Avoider wins")?;
                }
            }
            let en = n_mono_enforcer(p, q, largest);
            writeln!(out, "monotone Enforcer threshold N({p},{q},{largest}): {}", fmt_n(en.clone()))?;
            if let Ok(b) = en {
                if n >= b && desc.sizes.iter().all(|&s| s == largest) {
                    writeln!(out, "uniform boxes at or above the threshold: Enforcer wins")?;
                }
            }
            let pc = potential_criterion(&desc.sizes, p, true);
            writeln!(
                out,
                "potential criterion (Avoider assumed last): {}",
                if pc { "holds; Avoider wins" } else { "fails" }
            )?;
        }
    }
    Ok(())
}

/// `a..b` (inclusive), `a,b,c` or a single value.
pub fn parse_range(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let mut out: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().with_context(|| format!("bad range start in `{s}`"))?;
        let b: u32 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .with_context(|| format!("bad range end in `{s}`"))?;
        if a > b {
            bail!("empty range `{s}`");
        }
        (a..=b).collect()
    } else {
        s.split(',')
            .map(|x| x.trim().parse().with_context(|| format!("bad value `{x}`")))
            .collect::<Result<_>>()?
    };
    if out.contains(&0) {
        bail!("values must be positive in `{s}`");
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub p: Vec<u32>,
    pub q: Vec<u32>,
    pub k: Vec<u32>,
    pub n: Vec<u32>,
    pub rules: Vec<Rules>,
    pub first: Vec<Side>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SweepRow {
    pub p: u32,
    pub q: u32,
    pub k: u32,
    pub n: u32,
    pub rules: Rules,
    pub first: Side,
    pub winner: Option<Side>,
    pub source: &'static str,
}

/// Every grid point, solved in parallel, sorted by `(p, q, k, n, rules, first)`.
pub fn sweep(solver: &Arc<Solver>, grid: &SweepGrid, source: Source) -> Vec<SweepRow> {
    let mut points = Vec::new();
    for &p in &grid.p {
        for &q in &grid.q {
            for &k in &grid.k {
                for &n in &grid.n {
                    for &rules in &grid.rules {
                        for &first in &grid.first {
                            points.push((p, q, k, n, rules, first));
                        }
                    }
                }
            }
        }
    }
    let mut rows: Vec<SweepRow> = points
        .into_par_iter()
        .map(|(p, q, k, n, rules, first)| {
            let bias = Bias::new(p, q).expect("positive");
            let pos = uniform_game(n, k, bias, rules, first).expect("positive");
            let winner = match source {
                Source::Solver => solver.solve(&pos).ok().map(|r| r.winner),
                Source::Strategy => strategy_winner(solver, &pos),
                Source::Criterion => criterion_winner(&pos, n, k),
            };
            SweepRow {
                p,
                q,
                k,
                n,
                rules,
                first,
                winner,
                source: source.label(),
            }
        })
        .collect();
    rows.sort();
    rows
}

/// The side whose constructive strategy applies, if it beats an optimal
/// opponent from `pos`.
fn strategy_winner(solver: &Solver, pos: &Position) -> Option<Side> {
    let (p, q) = (pos.bias().p(), pos.bias().q());
    let k = pos.largest_box();
    let (side, strat): (Side, Box<dyn Strategy>) = match pos.rules() {
        Rules::Strict if gcd_avoider_witness(p, q, k).is_some() => (Side::Avoider, Box::new(StrictAvoider::new())),
        Rules::Strict => (Side::Enforcer, Box::new(StrategyS)),
        Rules::Monotone if k > p && q >= k * p => (Side::Avoider, Box::new(MonoAvoider::new())),
        Rules::Monotone => (Side::Enforcer, Box::new(MonoEnforcer)),
    };
    match solver.best_response(pos, side, strat.as_ref()) {
        Ok(r) if r.winner == side => Some(side),
        _ => None,
    }
}

/// Winner decided by closed-form criteria on the uniform game `n x k`.
fn criterion_winner(pos: &Position, n: u32, k: u32) -> Option<Side> {
    let (p, q) = (pos.bias().p(), pos.bias().q());
    let n = u64::from(n);
    let sizes = vec![k; n as usize];
    match pos.rules() {
        Rules::Strict => {
            if gcd_avoider_witness(p, q, k).is_some() {
                return Some(Side::Avoider);
            }
            if enforcer_gcd_condition(p, q, k) && n_strict(p, q, k).is_ok_and(|b| n >= b) {
                return Some(Side::Enforcer);
            }
            let last = strict_last_mover(n * u64::from(k), pos.bias(), pos.to_move());
            potential_criterion(&sizes, p, last == Side::Avoider).then_some(Side::Avoider)
        }
        Rules::Monotone => {
            if k > p && q >= k * p && n_mono_avoider(p, q, k).is_ok_and(|b| n <= b) {
                return Some(Side::Avoider);
            }
            if n_mono_enforcer(p, q, k).is_ok_and(|b| n >= b) {
                return Some(Side::Enforcer);
            }
            potential_criterion(&sizes, p, true).then_some(Side::Avoider)
        }
    }
}

pub fn write_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(["p", "q", "k", "n", "rules", "first", "winner", "source"])?;
    for r in rows {
        w.write_record([
            r.p.to_string(),
            r.q.to_string(),
            r.k.to_string(),
            r.n.to_string(),
            r.rules.to_string(),
            r.first.to_string(),
            r.winner.map_or_else(|| "unsolved".to_string(), |s| s.to_string()),
            r.source.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_range("1..=2").unwrap(), vec![1, 2]);
        assert_eq!(parse_range("4,2,2").unwrap(), vec![2, 4]);
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("0..2").is_err());
        assert!(parse_range("a").is_err());
    }

    #[test]
    fn rows_sort_by_grid_coordinates() {
        let solver = Arc::new(Solver::new());
        let grid = SweepGrid {
            p: vec![1],
            q: vec![1, 2],
            k: vec![1],
            n: vec![2, 1],
            rules: vec![Rules::Monotone, Rules::Strict],
            first: vec![Side::Enforcer, Side::Avoider],
        };
        let rows = sweep(&solver, &grid, Source::Solver);
        assert_eq!(rows.len(), 16);
        assert!(rows.windows(2).all(|w| w[0] < w[1]));
        assert_eq!((rows[0].rules, rows[0].first), (Rules::Strict, Side::Avoider));
    }

    #[test]
    fn criterion_source_never_contradicts_solver() {
        let solver = Solver::new();
        for p in 1..=2 {
            for q in 1..=3 {
                for k in 1..=3 {
                    for n in 1..=4 {
                        for rules in [Rules::Strict, Rules::Monotone] {
                            let pos = uniform_game(n, k, Bias::new(p, q).unwrap(), rules, Side::Avoider).unwrap();
                            if let Some(w) = criterion_winner(&pos, n, k) {
                                assert_eq!(solver.solve(&pos).unwrap().winner, w, "{pos}");
                            }
                        }
                    }
                }
            }
        }
    }
}
