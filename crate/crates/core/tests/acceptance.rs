//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use costgames::cost_parity::{
    build_spoiler, simulate_play, solve_bounded_cost_parity, solve_cost_parity, solve_cost_parity_with, StrategyDriver,
};
use costgames::graph::Digraph;
use costgames::parity::solve_parity;
use costgames::sheets::{positionalize, Sheet, SheetSpace, DEFAULT_EXPLORATION_BUDGET};
use costgames::streett::{choice_memory_strategy, solve_bounded_cost_streett, solve_streett};
use costgames::verify::fixtures::{running_example, running_example_as_streett, lower_bound_parity_game, lower_bound_streett_game, parity_as_streett};
use costgames::verify::oracle::{
    parity_oracle_enumerate, streett_oracle_enumerate, winning_positional_strategies, EnumerationOracle,
    DEFAULT_STRATEGY_BUDGET,
};
use costgames::verify::random::{generate_random_game, seeds, RandomGameSpec};
use costgames::verify::{shrink_memory, verify_bounded_strategy, verify_layered_certificate, verify_strategy};
use costgames::{solve, Condition, Game, Player, PositionalStrategy, Strategy, Variant, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn names(game: &Game, set: &VertexSet) -> String {
    format!("{{{}}}", game.arena.format_set(set).replace(' ', ","))
}

fn example_regions() -> Outcome {
    let start = Instant::now();
    let g = running_example();
    let cost = solve_cost_parity(&g).map_err(|e| e.to_string())?.solution;
    let bounded = solve_bounded_cost_parity(&g).map_err(|e| e.to_string())?.solution;
    let got = (names(&g, &cost.region0), names(&g, &cost.region1), names(&g, &bounded.region0));
    check(got == ("{d,e,f,g}".into(), "{a,b,c}".into(), "{g}".into()), || format!("got {got:?}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("cost W0={} W1={}, bounded W0={}", got.0, got.1, got.2))
}

fn algorithm_trace() -> Outcome {
    let start = Instant::now();
    let g = running_example();
    let out = solve_cost_parity(&g).map_err(|e| e.to_string())?;
    let trace: Vec<String> = out
        .trace
        .iter()
        .enumerate()
        .map(|(j, it)| format!("X{}={} W{}={}", j + 1, names(&g, &it.winning), j + 1, names(&g, &it.accumulated)))
        .collect();
    let want = ["X1={g} W1={f,g}", "X2={e} W2={d,e,f,g}", "X3={} W3={d,e,f,g}"];
    check(trace == want, || format!("trace {trace:?}"))?;
    check(out.iterations() == 3, || format!("{} iterations", out.iterations()))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(trace.join(", "))
}

fn lower_bound_parity() -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for d in 1..=4 {
        let g = lower_bound_parity_game(d);
        let b = solve_bounded_cost_parity(&g).map_err(|e| e.to_string())?;
        let all = VertexSet::full(g.vertex_count());
        check(b.solution.region1 == all, || format!("GD({d}): region1 = {}", names(&g, &b.solution.region1)))?;
        let s1 = b.solution.strategy1.as_ref().ok_or("no Player 1 strategy")?;
        check(s1.memory_size() == d + 1, || format!("GD({d}): {} states", s1.memory_size()))?;
        let verdict = verify_bounded_strategy(&g, s1, &all).map_err(|e| e.to_string())?;
        check(verdict.is_accepted(), || format!("GD({d}): {verdict:?}"))?;
        sizes.push(s1.memory_size());
    }
    let g = lower_bound_parity_game(1);
    let hub = g.arena.vertex("h").ok_or("no hub")?;
    let positional = winning_positional_strategies(&g, Variant::BoundedCost, Player::One, hub, DEFAULT_STRATEGY_BUDGET)
        .map_err(|e| e.to_string())?;
    check(positional.is_empty(), || "a positional strategy wins GD(1) from the hub".into())?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("states {sizes:?} for d=1..4, no positional win in GD(1)"))
}

fn lower_bound_streett() -> Outcome {
    let start = Instant::now();
    let mut report = Vec::new();
    for d in 1..=2 {
        let g = lower_bound_streett_game(d);
        let v0 = g.arena.vertex("v0").ok_or("no v0")?;
        let b = solve_bounded_cost_streett(&g).map_err(|e| e.to_string())?;
        check(b.solution.region1.contains(v0), || format!("SGD({d}): v0 not in region1"))?;
        let raw = b.solution.strategy1.as_ref().ok_or("no Player 1 strategy")?;
        let region = &b.solution.region1;
        let shrunk = shrink_memory(&g, Variant::BoundedCost, raw, region).map_err(|e| e.to_string())?;
        let choice = Strategy::FiniteState(choice_memory_strategy(&g, d).map_err(|e| e.to_string())?);
        for (label, s) in [("reduction", raw), ("merged", &shrunk), ("choice", &choice)] {
            let verdict = verify_strategy(&g, Variant::BoundedCost, s, region).map_err(|e| e.to_string())?;
            check(verdict.is_accepted(), || format!("SGD({d}) {label}: {verdict:?}"))?;
        }
        check(shrunk.memory_size() <= 1 << d && choice.memory_size() <= 1 << d, || {
            format!("SGD({d}): {} / {} states", shrunk.memory_size(), choice.memory_size())
        })?;
        report.push(format!("SGD({d}) reduction {} -> merged {} states", raw.memory_size(), shrunk.memory_size()));
    }
    let g = lower_bound_streett_game(1);
    let v0 = g.arena.vertex("v0").ok_or("no v0")?;
    let positional = winning_positional_strategies(&g, Variant::BoundedCost, Player::One, v0, DEFAULT_STRATEGY_BUDGET)
        .map_err(|e| e.to_string())?;
    check(positional.is_empty(), || "a positional strategy wins SGD(1) from v0".into())?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(report.join(", "))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut parity = 0;
    for seed in seeds(500, 500) {
        let g = generate_random_game(&RandomGameSpec::parity(rng.gen_range(1..=7), rng.gen_range(1..=4), seed))
            .map_err(|e| e.to_string())?;
        let coloring = g.coloring().unwrap();
        let (r0, _) = parity_oracle_enumerate(&g.arena, coloring, DEFAULT_STRATEGY_BUDGET).map_err(|e| e.to_string())?;
        let sol = solve_parity(&g.arena, coloring).map_err(|e| e.to_string())?;
        check(r0 == sol.region0, || format!("parity disagreement, seed {seed}"))?;
        parity += 1;
    }

    let oracle = EnumerationOracle::default();
    let (mut cost, mut skipped) = (0, 0);
    for seed in seeds(200, 400) {
        if cost == 200 {
            break;
        }
        let spec = RandomGameSpec { max_out_degree: Some(2), ..RandomGameSpec::parity(rng.gen_range(1..=4), rng.gen_range(1..=3), seed) };
        let g = generate_random_game(&spec).map_err(|e| e.to_string())?;
        let a = solve_cost_parity(&g).map_err(|e| e.to_string())?;
        let b = match solve_cost_parity_with(&g, &oracle) {
            Ok(b) => b,
            Err(costgames::Error::BudgetExceeded { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(format!("seed {seed}: {e}")),
        };
        check(a.solution.region0 == b.solution.region0, || format!("cost pipeline disagreement, seed {seed}"))?;
        cost += 1;
    }
    check(cost >= 200, || format!("only {cost} cost games compared"))?;

    let mut streett = 0;
    for seed in seeds(100, 100) {
        let g = generate_random_game(&RandomGameSpec::streett(rng.gen_range(1..=6), rng.gen_range(1..=2), seed))
            .map_err(|e| e.to_string())?;
        let spec = g.streett_spec().unwrap();
        let (r0, _) = streett_oracle_enumerate(&g.arena, spec, DEFAULT_STRATEGY_BUDGET).map_err(|e| e.to_string())?;
        let sol = solve_streett(&g.arena, spec).map_err(|e| e.to_string())?;
        check(r0 == sol.solution.region0, || format!("Streett disagreement, seed {seed}"))?;
        streett += 1;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{parity} parity, {cost} cost ({skipped} over budget), {streett} Streett games agree"))
}

fn sampled_games() -> Vec<Game> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut out = Vec::new();
    for seed in seeds(600, 150) {
        out.push(generate_random_game(&RandomGameSpec::parity(rng.gen_range(1..=6), rng.gen_range(1..=5), seed)).unwrap());
    }
    for seed in seeds(601, 100) {
        out.push(generate_random_game(&RandomGameSpec::streett(rng.gen_range(1..=5), rng.gen_range(1..=2), seed)).unwrap());
    }
    out
}

fn inclusion_chain() -> Outcome {
    let mut checked = 0;
    for (k, g) in sampled_games().iter().enumerate() {
        let [classical, cost, bounded] = Variant::ALL.map(|v| solve(g, v).map(|s| s.region0));
        let (classical, cost, bounded) =
            (classical.map_err(|e| e.to_string())?, cost.map_err(|e| e.to_string())?, bounded.map_err(|e| e.to_string())?);
        check(bounded.is_subset(&cost) && cost.is_subset(&classical), || format!("chain broken on sample {k}"))?;
        checked += 1;
    }
    let mut flat = 0;
    for seed in seeds(602, 100) {
        let condition = if seed % 2 == 0 { RandomGameSpec::parity(5, 4, seed) } else { RandomGameSpec::streett(5, 2, seed) };
        let g = generate_random_game(&RandomGameSpec { increment_probability: 0.0, ..condition }).unwrap();
        let regions = Variant::ALL.map(|v| solve(&g, v).map(|s| s.region0).map_err(|e| e.to_string()));
        let [a, b, c] = regions;
        let (a, b, c) = (a?, b?, c?);
        check(a == b && b == c, || format!("all-epsilon seed {seed} differs"))?;
        flat += 1;
    }
    Ok(format!("{checked} games satisfy the chain, {flat} all-epsilon games collapse"))
}

fn strategy_certification() -> Outcome {
    let mut verified = 0;
    let mut certificates = 0;
    let mut games = sampled_games();
    games.extend([running_example(), running_example_as_streett(), lower_bound_parity_game(2), lower_bound_streett_game(1)]);
    for (k, g) in games.iter().enumerate() {
        for variant in Variant::ALL {
            let sol = solve(g, variant).map_err(|e| format!("sample {k}: {e}"))?;
            for player in [Player::Zero, Player::One] {
                let Some(s) = sol.strategy(player) else { continue };
                let verdict = verify_strategy(g, variant, s, sol.region(player)).map_err(|e| e.to_string())?;
                check(verdict.is_accepted(), || format!("sample {k} {variant:?} {player:?}: {verdict:?}"))?;
                verified += 1;
            }
            if let Some(cert) = &sol.certificate {
                let report = verify_layered_certificate(g, cert).map_err(|e| e.to_string())?;
                check(report.is_valid(), || format!("sample {k}: certificate {report:?}"))?;
                certificates += 1;
            }
        }
    }
    let mut positionalized = 0;
    for g in games.iter().filter(|g| matches!(g.condition, Condition::Parity(_))) {
        let b = solve_bounded_cost_parity(g).map_err(|e| e.to_string())?;
        let out = positionalize(g, &b.memory_strategy0, &b.solution.region0, DEFAULT_EXPLORATION_BUDGET)
            .map_err(|e| format!("positionalize: {e}"))?;
        check(out.max_sheet.iter().flatten().all(|s| *s != Sheet::Top), || "⊤ reached".into())?;
        let positional = Strategy::Positional(out.strategy);
        let verdict = verify_bounded_strategy(g, &positional, &b.solution.region0).map_err(|e| e.to_string())?;
        check(verdict.is_accepted(), || format!("positionalized strategy: {verdict:?}"))?;
        positionalized += 1;
    }
    Ok(format!("{verified} strategies, {certificates} certificates, {positionalized} positionalizations verified"))
}

fn sheet_laws() -> Outcome {
    let start = Instant::now();
    let space = SheetSpace::new(5, 3).map_err(|e| e.to_string())?;
    let s = Sheet::Proper(vec![3, 3, 0, 1, 3]);
    let got: Vec<Sheet> = [1, 3, 4].iter().map(|&k| space.increment(&s, k).unwrap()).collect();
    let want = [vec![5, 0, 0, 0, 0], vec![3, 3, 1, 0, 0], vec![3, 3, 0, 2, 0]].map(Sheet::Proper);
    check(got == want, || format!("examples gave {got:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = 0;
    while pairs < 10_000 {
        let g = generate_random_game(&RandomGameSpec::parity(rng.gen_range(1..=6), rng.gen_range(1..=6), rng.gen())).unwrap();
        let coloring = g.coloring().unwrap();
        let space = SheetSpace::new(coloring.odd_ceiling(), rng.gen_range(1..=3)).unwrap();
        let n = g.vertex_count();
        let x = random_walk(&g.arena, rng.gen_range(0..n), rng.gen_range(1..8), &mut rng);
        let last = *x.last().unwrap();
        let mut y = random_walk(&g.arena, rng.gen_range(0..n), rng.gen_range(1..8), &mut rng);
        match Digraph::from_arena(&g.arena).shortest_path(*y.last().unwrap(), &VertexSet::from_indices(n, [last]), |_| true) {
            Some(path) => y.extend(path.into_iter().skip(1)),
            None => y = x[rng.gen_range(0..x.len())..].to_vec(),
        }
        let (sx, sy) = (space.of_prefix(&g.arena, coloring, &x), space.of_prefix(&g.arena, coloring, &y));
        let (lo, hi) = if sx <= sy { (x, y) } else { (y, x) };
        for v in g.arena.successors(last) {
            let (mut lv, mut hv) = (lo.clone(), hi.clone());
            lv.push(v);
            hv.push(v);
            let (a, b) = (space.of_prefix(&g.arena, coloring, &lv), space.of_prefix(&g.arena, coloring, &hv));
            check(a <= b, || format!("congruence fails: {lv:?} / {hv:?}"))?;
        }
        pairs += 1;
    }

    for _ in 0..10_000 {
        let space = sheet_space(&mut rng);
        let (a, b) = (proper_sheet(&space, &mut rng), proper_sheet(&space, &mut rng));
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        let k = rng.gen_range(1..=space.len());
        let (ix, iy) = (space.increment(&x, k).unwrap(), space.increment(&y, k).unwrap());
        check(ix <= iy, || format!("increment at {k} breaks {x} <= {y}"))?;
        let keep = rng.gen_range(1..=space.len());
        let zero = |s: &Sheet| match s {
            Sheet::Proper(v) => Sheet::Proper(v.iter().enumerate().map(|(i, &c)| if i < keep { c } else { 0 }).collect()),
            other => other.clone(),
        };
        check(zero(&x) <= zero(&y), || format!("reset after {keep} breaks {x} <= {y}"))?;
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("examples exact, {pairs} prefix pairs, 10000 sheet pairs"))
}

fn spoiler() -> Outcome {
    let g = running_example();
    let out = solve_cost_parity(&g).map_err(|e| e.to_string())?;
    let a = g.arena.vertex("a").ok_or("no a")?;
    let mut spoiler = build_spoiler(&g, &out).map_err(|e| e.to_string())?;
    let idle = Strategy::Positional(PositionalStrategy::empty(Player::Zero, g.vertex_count()));
    let mut zero = StrategyDriver::new(idle.to_finite_state());
    let trace = simulate_play(&g, a, [&mut zero, &mut spoiler], 10_000).map_err(|e| e.to_string())?;
    for b in 1..=20u64 {
        let exceeded = trace.steps.iter().any(|s| s.cost_since_request.is_some_and(|c| c > b));
        check(exceeded, || format!("no request stays open across more than {b} increments"))?;
    }
    let longest = trace.steps.iter().filter_map(|s| s.cost_since_request).max().unwrap_or(0);
    let restarts = spoiler.restarts();
    for b in 1..=20u64 {
        check(restarts.iter().any(|r| r.bound == b && r.cost > b), || format!("bound {b} never beaten"))?;
    }
    check(trace.vertices().iter().all(|&v| out.solution.region1.contains(v)), || "play left region1".into())?;
    let bounds: Vec<u64> = restarts.iter().map(|r| r.bound).collect();
    Ok(format!("{} restarts, longest delay {longest} increments in 10000 steps", bounds.len()))
}

fn cross_encoding() -> Outcome {
    let parity = running_example();
    let streett = running_example_as_streett();
    check(parity_as_streett(&parity).streett_spec() == streett.streett_spec(), || "encodings differ".into())?;
    let mut lines = Vec::new();
    for variant in Variant::ALL {
        let a = solve(&parity, variant).map_err(|e| e.to_string())?.region0;
        let b = solve(&streett, variant).map_err(|e| e.to_string())?.region0;
        check(a == b, || format!("{variant:?}: {} vs {}", names(&parity, &a), names(&streett, &b)))?;
        lines.push(format!("{} W0={}", variant.as_str(), names(&parity, &a)));
    }
    Ok(lines.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("regions of the running example", example_regions),
        ("fixed-point trace on the running example", algorithm_trace),
        ("parity lower-bound family GD(1..4)", lower_bound_parity),
        ("Streett lower-bound family SGD(1..2)", lower_bound_streett),
        ("oracle equivalence", oracle_equivalence),
        ("region inclusion chain", inclusion_chain),
        ("strategy certification", strategy_certification),
        ("score-sheet laws", sheet_laws),
        ("spoiler on the running example", spoiler),
        ("parity as Streett on the running example", cross_encoding),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
