use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use costgames::cost_parity::{
    build_spoiler, pcrr_reduction, simulate_play, solve_bounded_cost_parity_with, solve_cost_parity,
    solve_cost_parity_with, Iteration, StrategyDriver,
};
use costgames::parity::{solve_parity, Zielonka};
use costgames::streett::{
    scrr_reduction, solve_bounded_cost_streett_with, solve_cost_streett_with, solve_streett_with, StreettOptions,
};
use costgames::verify::fixtures::{lower_bound_parity_game, lower_bound_streett_game, parity_as_streett};
use costgames::verify::oracle::{parity_oracle_enumerate, streett_oracle_enumerate, EnumerationOracle, DEFAULT_STRATEGY_BUDGET};
use costgames::verify::random::{generate_random_game, RandomCondition, RandomGameSpec};
use costgames::verify::{verify_strategy, Verdict};
use costgames::{Arena, Condition, Cost, Edge, Error, FiniteStateStrategy, Game, GameSolution, Player, Strategy, Variant, VertexSet};

use crate::dot::export_dot;
use crate::game_file::{parse_game, serialize_game, GameFile};
use crate::strategy_file::{parse_strategy, serialize_strategy};

/// Environment variable overriding exploration and enumeration budgets.
pub const BUDGET_VAR: &str = "COSTLY_GAMES_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "costgames", version, about = "Solve and check parity and Streett games with costs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Classical,
    Cost,
    BoundedCost,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Classical => Variant::Classical,
            VariantArg::Cost => Variant::Cost,
            VariantArg::BoundedCost => Variant::BoundedCost,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    PcrrParity,
    Streett,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print both winning regions and the strategies.
    Solve {
        file: PathBuf,
        /// Overrides the variant named in the file header.
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Log the fixed-point iterations of the cost variant.
        #[arg(long)]
        trace: bool,
        /// Write the strategy of `--player` to this file.
        #[arg(long)]
        strategy_out: Option<PathBuf>,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        player: u8,
    },
    /// Check a strategy file against a game; exit 1 with a counterexample if it loses.
    Verify {
        game: PathBuf,
        strategy: PathBuf,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
    /// Emit the reduced game.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Print a game file.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Play Player 1's spoiler against Player 0 in a cost-parity game.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        spoiler: bool,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Start vertex; defaults to the first vertex Player 1 wins from.
        #[arg(long)]
        from: Option<String>,
    },
    /// Compare the solvers with brute-force enumeration of positional strategies.
    OracleCheck {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Graphviz rendering of a game, optionally annotated with its solution.
    Dot {
        file: PathBuf,
        #[arg(long)]
        solve: bool,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(long, default_value_t = 6)]
    vertices: usize,
    /// Number of colors of a parity game.
    #[arg(long, conflicts_with = "pairs")]
    colors: Option<u32>,
    /// Number of pairs of a Streett game.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    increment_probability: Option<f64>,
    #[arg(long)]
    max_out_degree: Option<usize>,
    #[arg(long, value_enum, default_value = "cost")]
    variant: VariantArg,
}

#[derive(Subcommand, Debug)]
enum Family {
    Random(RandomArgs),
    /// Parity games where Player 1 needs `d + 1` memory states.
    LowerParity {
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Streett games where Player 1 needs `2^d` memory states.
    LowerStreett {
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Success,
    Failed,
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 when a verification or cross-check fails, 2 on usage or input errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut report = String::new();
    let outcome = budget().and_then(|budget| dispatch(cli.command, budget, &mut report));
    let _ = out.write_all(report.as_bytes());
    match outcome {
        Ok(Status::Success) => 0,
        Ok(Status::Failed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn budget() -> anyhow::Result<Option<usize>> {
    match std::env::var(BUDGET_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(b) if b > 0 => Ok(Some(b)),
            _ => bail!("{BUDGET_VAR} must be a positive integer, found `{s}`"),
        },
        Err(e) => bail!("{BUDGET_VAR}: {e}"),
    }
}

fn read_game(path: &Path) -> anyhow::Result<GameFile> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_game(&text).with_context(|| path.display().to_string())
}

fn effective(file: &GameFile, variant: Option<VariantArg>) -> Variant {
    variant.map_or(file.variant, Variant::from)
}

struct Solved {
    solution: GameSolution,
    trace: Option<Vec<Iteration>>,
}

fn solve_game(game: &Game, variant: Variant, budget: Option<usize>) -> costgames::Result<Solved> {
    let options = budget.map_or_else(StreettOptions::default, StreettOptions::with_budget);
    let solution = match (&game.condition, variant) {
        (Condition::Parity(_), Variant::Cost) => {
            let out = solve_cost_parity(game)?;
            return Ok(Solved { solution: out.solution, trace: Some(out.trace) });
        }
        (Condition::Streett(_), Variant::Cost) => {
            let out = solve_cost_streett_with(game, &options, &Zielonka)?;
            return Ok(Solved { solution: out.solution, trace: Some(out.trace) });
        }
        (Condition::Streett(spec), Variant::Classical) => {
            game.validate()?;
            solve_streett_with(&game.arena, spec, &options, &Zielonka)?.solution
        }
        (Condition::Streett(_), Variant::BoundedCost) => solve_bounded_cost_streett_with(game, &options, &Zielonka)?.solution,
        (Condition::Parity(_), _) => costgames::solve(game, variant)?,
    };
    Ok(Solved { solution, trace: None })
}

fn braces(arena: &Arena, set: &VertexSet) -> String {
    format!("{{{}}}", arena.format_set(set))
}

fn region_line(out: &mut String, label: &str, arena: &Arena, set: &VertexSet) {
    let _ = writeln!(out, "{}", format!("{label}: {}", arena.format_set(set)).trim_end());
}

fn dump_strategy(out: &mut String, arena: &Arena, player: Player, strategy: Option<&Strategy>, variant: Variant) {
    let Some(strategy) = strategy else {
        let why = if variant == Variant::Cost { "infinite-memory: use simulate --spoiler" } else { "none" };
        let _ = writeln!(out, "strategy {player}: {why}");
        return;
    };
    match strategy {
        Strategy::Positional(p) => {
            let _ = writeln!(out, "strategy {player}: positional");
            for v in arena.vertices() {
                if let Some(u) = p.get(v) {
                    let _ = writeln!(out, "  {} -> {}", arena.name(v), arena.name(u));
                }
            }
        }
        Strategy::FiniteState(fs) => {
            let memory = &fs.memory;
            let _ = writeln!(out, "strategy {player}: {} memory states {}", memory.state_count(), memory.state_names().join(" "));
            let init: Vec<String> =
                arena.vertices().map(|v| format!("{}:{}", arena.name(v), memory.state_name(memory.init(v)))).collect();
            let _ = writeln!(out, "  init {}", init.join(" "));
            for m in 0..memory.state_count() {
                let row: Vec<String> = arena
                    .vertices()
                    .map(|v| format!("{}:{}", arena.name(v), memory.state_name(memory.update(m, v))))
                    .collect();
                let _ = writeln!(out, "  update {} {}", memory.state_name(m), row.join(" "));
            }
            for v in arena.vertices() {
                for m in 0..memory.state_count() {
                    if let Some(u) = fs.next_move(v, m) {
                        let _ = writeln!(out, "  {} @ {} -> {}", arena.name(v), memory.state_name(m), arena.name(u));
                    }
                }
            }
        }
    }
}

fn write_verdict(out: &mut String, arena: &Arena, verdict: &Verdict) -> Status {
    match verdict {
        Verdict::Accepted => {
            out.push_str("accepted\n");
            Status::Success
        }
        Verdict::Rejected(r) => {
            let _ = writeln!(out, "rejected: {}", r.reason);
            if let Some(lasso) = &r.lasso {
                let names = |vs: &[usize]| vs.iter().map(|&v| arena.name(v)).collect::<Vec<_>>().join(" ");
                let _ = writeln!(out, "counterexample: {} ({})^ω", names(&lasso.prefix), names(&lasso.cycle));
            }
            Status::Failed
        }
    }
}

fn dispatch(command: Command, budget: Option<usize>, out: &mut String) -> anyhow::Result<Status> {
    match command {
        Command::Solve { file, variant, trace, strategy_out, player } => {
            let gf = read_game(&file)?;
            let variant = effective(&gf, variant);
            let arena = &gf.game.arena;
            let solved = solve_game(&gf.game, variant, budget)?;
            if trace {
                match &solved.trace {
                    Some(iterations) => {
                        for (j, it) in iterations.iter().enumerate() {
                            let _ = writeln!(
                                out,
                                "X_{j} = {}  W^{j} = {}",
                                braces(arena, &it.winning),
                                braces(arena, &it.accumulated),
                                j = j + 1
                            );
                        }
                    }
                    None => out.push_str("trace: only the cost variant iterates\n"),
                }
            }
            let sol = &solved.solution;
            region_line(out, "W0", arena, &sol.region0);
            region_line(out, "W1", arena, &sol.region1);
            for p in [Player::Zero, Player::One] {
                dump_strategy(out, arena, p, sol.strategy(p), variant);
            }
            if let Some(path) = strategy_out {
                let p = Player::from_index(player.into()).expect("range checked");
                let s = sol.strategy(p).ok_or_else(|| anyhow!("no strategy for player {p} in the {variant} variant"))?;
                let text = serialize_strategy(arena, s, variant, sol.region(p));
                fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
            }
            Ok(Status::Success)
        }
        Command::Verify { game, strategy, variant } => {
            let gf = read_game(&game)?;
            let text = fs::read_to_string(&strategy).with_context(|| format!("cannot read {}", strategy.display()))?;
            let sf = parse_strategy(&gf.game.arena, &text).with_context(|| strategy.display().to_string())?;
            let variant = variant.map(Variant::from).or(sf.variant).unwrap_or(gf.variant);
            let verdict = verify_strategy(&gf.game, variant, &sf.strategy, &sf.region)?;
            let _ = writeln!(
                out,
                "player {} {variant} from {}",
                sf.strategy.player(),
                braces(&gf.game.arena, &sf.region)
            );
            Ok(write_verdict(out, &gf.game.arena, &verdict))
        }
        Command::Reduce { file, to } => {
            let gf = read_game(&file)?;
            out.push_str(&reduce(&gf, to)?);
            Ok(Status::Success)
        }
        Command::Generate { family } => {
            let (game, variant) = match family {
                Family::Random(a) => {
                    let mut spec = match (a.colors, a.pairs) {
                        (_, Some(pairs)) => RandomGameSpec::streett(a.vertices, pairs, a.seed),
                        (colors, None) => RandomGameSpec::parity(a.vertices, colors.unwrap_or(4), a.seed),
                    };
                    if let Some(d) = a.density {
                        spec.density = d;
                    }
                    if let Some(p) = a.increment_probability {
                        spec.increment_probability = p;
                    }
                    if a.max_out_degree.is_some() {
                        spec.max_out_degree = a.max_out_degree;
                    }
                    if let RandomCondition::Streett { pairs: 0 } = spec.condition {
                        bail!("a Streett game needs at least one pair");
                    }
                    (generate_random_game(&spec)?, a.variant.into())
                }
                Family::LowerParity { d } if d >= 1 => (lower_bound_parity_game(d), Variant::BoundedCost),
                Family::LowerStreett { d } if d >= 1 => (lower_bound_streett_game(d), Variant::BoundedCost),
                _ => bail!("--d must be at least 1"),
            };
            out.push_str(&serialize_game(&game, variant));
            Ok(Status::Success)
        }
        Command::Simulate { file, spoiler, steps, from } => {
            if !spoiler {
                bail!("only spoiler simulations are supported; pass --spoiler");
            }
            simulate(&read_game(&file)?.game, steps, from.as_deref(), out)
        }
        Command::OracleCheck { files } => {
            let budget = budget.unwrap_or(DEFAULT_STRATEGY_BUDGET);
            let mut status = Status::Success;
            for file in &files {
                let gf = read_game(file)?;
                let _ = writeln!(out, "{}:", file.display());
                if !oracle_check(&gf.game, budget, out)? {
                    status = Status::Failed;
                }
            }
            Ok(status)
        }
        Command::Dot { file, solve, variant } => {
            let gf = read_game(&file)?;
            let solution = if solve { Some(solve_game(&gf.game, effective(&gf, variant), budget)?.solution) } else { None };
            out.push_str(&export_dot(&gf.game, solution.as_ref()));
            Ok(Status::Success)
        }
    }
}

/// The reduced game, preceded by `# start <vertex> <product vertex>` comments
/// locating each original vertex in the product.
fn reduce(gf: &GameFile, to: Target) -> anyhow::Result<String> {
    let game = &gf.game;
    let mut out = String::new();
    let reduced = match (to, &game.condition) {
        (Target::Streett, Condition::Parity(_)) => {
            out.push_str("# one Streett pair per odd color\n");
            return Ok(out + &serialize_game(&parity_as_streett(game), gf.variant));
        }
        (Target::PcrrParity, Condition::Parity(_)) => {
            let r = pcrr_reduction(game)?;
            out.push_str("# classical parity game deciding the bounded-cost variant\n");
            for v in game.arena.vertices() {
                let _ = writeln!(out, "# start {} {}", game.arena.name(v), r.product.name(r.initial(v)));
            }
            Game::parity(without_costs(r.product, 1), r.coloring)?
        }
        (Target::Streett, Condition::Streett(_)) => {
            let r = scrr_reduction(game)?;
            out.push_str("# classical Streett game deciding the bounded-cost variant\n");
            for v in game.arena.vertices() {
                let _ = writeln!(out, "# start {} {}", game.arena.name(v), r.product.name(r.initial(v)));
            }
            let arena = without_costs(r.product, r.spec.pair_count());
            Game::streett(arena, r.spec)?
        }
        (Target::PcrrParity, Condition::Streett(_)) => bail!("pcrr-parity needs a parity game"),
    };
    Ok(out + &serialize_game(&reduced, Variant::Classical))
}

/// The arena with every edge relabeled `ε` in `dim` dimensions.
fn without_costs(arena: Arena, dim: usize) -> Arena {
    let edges = arena.edges().iter().map(|e| Edge { costs: vec![Cost::Epsilon; dim], ..e.clone() }).collect();
    Arena::unchecked(arena.names().to_vec(), arena.owners().to_vec(), edges, dim)
}

fn simulate(game: &Game, steps: usize, from: Option<&str>, out: &mut String) -> anyhow::Result<Status> {
    let arena = &game.arena;
    let outcome = solve_cost_parity(game)?;
    let region1 = &outcome.solution.region1;
    let start = match from {
        Some(name) => arena.vertex(name).ok_or_else(|| anyhow!("unknown vertex `{name}`"))?,
        None => match region1.iter().next() {
            Some(v) => v,
            None => {
                out.push_str("Player 0 wins from every vertex; nothing to spoil\n");
                return Ok(Status::Success);
            }
        },
    };
    if !region1.contains(start) {
        bail!("Player 0 wins the cost game from `{}`", arena.name(start));
    }
    // Player 0 follows its cost strategy where it has one and otherwise takes
    // the first edge.
    let own = outcome.solution.strategy0.as_ref().map(Strategy::to_finite_state);
    let zero = FiniteStateStrategy::from_fn(
        Player::Zero,
        own.as_ref().map_or_else(|| costgames::MemoryStructure::trivial(arena.vertex_count()), |s| s.memory.clone()),
        |v, m| {
            if arena.owner(v) != Player::Zero {
                return None;
            }
            own.as_ref().and_then(|s| s.next_move(v, m)).or_else(|| arena.successors(v).next())
        },
    );
    let mut zero = StrategyDriver::new(zero);
    let mut spoiler = build_spoiler(game, &outcome)?;
    let trace = simulate_play(game, start, [&mut zero, &mut spoiler], steps)?;
    let _ = writeln!(out, "step vertex request cost");
    for (k, s) in trace.steps.iter().enumerate() {
        let request = s.open_request.map_or("-".to_string(), |c| c.to_string());
        let cost = s.cost_since_request.map_or("-".to_string(), |c| c.to_string());
        let _ = writeln!(out, "{k} {} {request} {cost}", arena.name(s.vertex));
    }
    for r in spoiler.restarts() {
        let _ = writeln!(out, "restart at step {}: bound {} exceeded with cost {}", r.step, r.bound, r.cost);
    }
    let longest = trace.steps.iter().filter_map(|s| s.cost_since_request).max().unwrap_or(0);
    let _ = writeln!(out, "{} restarts, longest wait {longest} increments", spoiler.restarts().len());
    Ok(Status::Success)
}

/// Prints one line per check and returns whether all checks agreed.
fn oracle_check(game: &Game, budget: usize, out: &mut String) -> anyhow::Result<bool> {
    game.validate()?;
    let arena = &game.arena;
    let mut agree = true;
    let mut line = |label: &str, solver: costgames::Result<VertexSet>, oracle: costgames::Result<VertexSet>| -> anyhow::Result<()> {
        let verdict = match (solver?, oracle) {
            (_, Err(Error::BudgetExceeded { .. })) => "skipped: over budget".to_string(),
            (_, Err(e)) => return Err(e.into()),
            (a, Ok(b)) if a == b => format!("agree W0 = {}", braces(arena, &a)),
            (a, Ok(b)) => {
                agree = false;
                format!("DISAGREE solver W0 = {} oracle W0 = {}", braces(arena, &a), braces(arena, &b))
            }
        };
        let _ = writeln!(out, "  {label}: {verdict}");
        Ok(())
    };
    match &game.condition {
        Condition::Parity(coloring) => {
            line(
                "classical",
                solve_parity(arena, coloring).map(|s| s.region0),
                parity_oracle_enumerate(arena, coloring, budget).map(|r| r.0),
            )?;
            let oracle = EnumerationOracle { budget };
            line(
                "cost",
                solve_cost_parity(game).map(|s| s.solution.region0),
                solve_cost_parity_with(game, &oracle).map(|s| s.solution.region0),
            )?;
            line(
                "bounded-cost",
                solve_bounded_cost_parity_with(game, &Zielonka).map(|s| s.solution.region0),
                solve_bounded_cost_parity_with(game, &oracle).map(|s| s.solution.region0),
            )?;
        }
        Condition::Streett(spec) => {
            line(
                "classical",
                solve_streett_with(arena, spec, &StreettOptions::default(), &Zielonka).map(|s| s.solution.region0),
                streett_oracle_enumerate(arena, spec, budget).map(|r| r.0),
            )?;
        }
    }
    Ok(agree)
}
