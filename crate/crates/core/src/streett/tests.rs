use super::*;
use crate::arena::ArenaBuilder;
use crate::cost_parity::{solve_bounded_cost_parity, solve_cost_parity};
use crate::parity::solve_parity;
use crate::verify::fixtures::{running_example, running_example_as_streett, lower_bound_streett_game};
use crate::verify::random::{generate_random_game, seeds, RandomGameSpec};
use crate::verify::{shrink_memory, verify_bounded_streett_strategy, verify_streett_strategy};
use crate::{Cost, Variant};

fn set(n: usize, vs: &[usize]) -> VertexSet {
    VertexSet::from_indices(n, vs.to_vec())
}

fn two_cycle(requests: &[usize], responses: &[usize]) -> Game {
    let mut b = ArenaBuilder::new(1);
    b.vertex("x", Player::Zero);
    b.vertex("y", Player::One);
    for (u, v) in [("x", "y"), ("y", "x"), ("y", "y")] {
        b.uniform_edge(u, v, Cost::Increment).unwrap();
    }
    let pair = StreettPair { requests: set(2, requests), responses: set(2, responses) };
    Game::streett(b.build().unwrap(), StreettSpec::new(vec![pair])).unwrap()
}

#[test]
fn vacuous_pair_is_won_everywhere() {
    let g = two_cycle(&[], &[0]);
    let out = solve_streett(&g.arena, g.streett_spec().unwrap()).unwrap();
    assert_eq!(out.solution.region0, VertexSet::full(2));
    let cost = solve_cost_streett(&two_cycle(&[], &[])).unwrap();
    assert_eq!(cost.solution.region0, VertexSet::full(2));
    assert_eq!(cost.certificate().layers.len(), 1);
}

#[test]
fn unanswerable_request_loses_where_player_one_can_loop() {
    let g = two_cycle(&[0], &[]);
    let out = solve_streett(&g.arena, g.streett_spec().unwrap()).unwrap();
    assert!(out.solution.region0.is_empty());
    let s1 = out.solution.strategy1.as_ref().unwrap();
    assert!(verify_streett_strategy(&g.arena, g.streett_spec().unwrap(), s1, &out.solution.region1).unwrap().is_accepted());
}

#[test]
fn record_steps() {
    let g = two_cycle(&[0], &[1]);
    let spec = g.streett_spec().unwrap();
    let at_x = record_step(spec, &[0], 0);
    assert_eq!(at_x, RecordState { order: vec![0], color: 3 });
    let at_y = record_step(spec, &[0], 1);
    assert_eq!(at_y, RecordState { order: vec![0], color: 4 });

    let two = StreettSpec::new(vec![
        StreettPair { requests: set(1, &[0]), responses: set(1, &[]) },
        StreettPair { requests: set(1, &[]), responses: set(1, &[0]) },
    ]);
    // Pair 1 answered at position 2, pair 0 requested at position 1.
    assert_eq!(record_step(&two, &[0, 1], 0), RecordState { order: vec![0, 1], color: 5 });
    // Pair 1 answered at position 1, ahead of the request.
    assert_eq!(record_step(&two, &[1, 0], 0), RecordState { order: vec![0, 1], color: 6 });
}

#[test]
fn pair_cap_is_enforced() {
    let g = lower_bound_streett_game(2);
    let tight = StreettOptions { pair_cap: 3, ..StreettOptions::default() };
    assert!(matches!(
        solve_streett_with(&g.arena, g.streett_spec().unwrap(), &tight, &crate::parity::Zielonka),
        Err(Error::BudgetExceeded { .. })
    ));
    let small = StreettOptions::with_budget(10);
    assert!(solve_streett_with(&g.arena, g.streett_spec().unwrap(), &small, &crate::parity::Zielonka).is_err());
}

#[test]
fn parity_encoding_matches_parity_solver() {
    for seed in seeds(11, 40) {
        let g = generate_random_game(&RandomGameSpec::parity(6, 4, seed)).unwrap();
        let coloring = g.coloring().unwrap();
        let spec = StreettSpec::from_parity(coloring);
        let parity = solve_parity(&g.arena, coloring).unwrap();
        let streett = solve_streett(&g.arena, &spec).unwrap();
        assert_eq!(parity.region0, streett.solution.region0, "seed {seed}");
    }
}

#[test]
fn example_encoded_as_streett() {
    let g = running_example_as_streett();
    let spec = g.streett_spec().unwrap();
    assert_eq!(spec.pair_count(), 1);
    assert_eq!(g.arena.format_set(&spec.pairs[0].requests), "a d f");
    assert_eq!(g.arena.format_set(&spec.pairs[0].responses), "c");

    let bounded = solve_bounded_cost_streett(&g).unwrap();
    assert_eq!(g.arena.format_set(&bounded.solution.region0), "g");
    assert_eq!(bounded.solution.region0, solve_bounded_cost_parity(&running_example()).unwrap().solution.region0);
    let s1 = bounded.solution.strategy1.as_ref().unwrap();
    assert!(verify_bounded_streett_strategy(&g, s1, &bounded.solution.region1).unwrap().is_accepted());

    let cost = solve_cost_streett(&g).unwrap();
    assert_eq!(g.arena.format_set(&cost.solution.region0), "d e f g");
    assert_eq!(cost.solution.region0, solve_cost_parity(&running_example()).unwrap().solution.region0);
}

#[test]
fn all_epsilon_matches_classical() {
    for seed in seeds(5, 20) {
        let spec = RandomGameSpec { increment_probability: 0.0, ..RandomGameSpec::streett(5, 2, seed) };
        let g = generate_random_game(&spec).unwrap();
        let classical = solve_streett(&g.arena, g.streett_spec().unwrap()).unwrap().solution.region0;
        assert_eq!(solve_bounded_cost_streett(&g).unwrap().solution.region0, classical, "seed {seed}");
        assert_eq!(solve_cost_streett(&g).unwrap().solution.region0, classical, "seed {seed}");
    }
}

#[test]
fn open_requests_follow_the_fold() {
    let g = lower_bound_streett_game(2);
    let spec = g.streett_spec().unwrap();
    let memory = OpenRequestMemory::new(spec, g.vertex_count()).unwrap();
    let path: Vec<usize> =
        ["v0", "q1", "v1", "q2", "v'0", "p1", "v'1", "p2", "s2"].iter().map(|n| g.arena.vertex(n).unwrap()).collect();
    let mut open = 0usize;
    for (k, &v) in path.iter().enumerate() {
        for c in 0..spec.pair_count() {
            if spec.is_response(c, v) {
                open &= !(1 << c);
            } else if spec.is_request(c, v) {
                open |= 1 << c;
            }
        }
        assert_eq!(memory.memory.run(&path[..=k]), open);
    }
    assert!(memory.is_open(open, 2) && !memory.is_open(open, 1));
}

#[test]
fn lower_bound_family_needs_exponential_memory() {
    for d in 1..=2 {
        let g = lower_bound_streett_game(d);
        let v0 = g.arena.vertex("v0").unwrap();
        let out = solve_bounded_cost_streett(&g).unwrap();
        assert!(out.solution.region1.contains(v0));
        let raw = out.solution.strategy1.clone().unwrap();
        assert!(raw.memory_size() <= 1 << (2 * d));
        let shrunk = shrink_memory(&g, Variant::BoundedCost, &raw, &out.solution.region1).unwrap();
        assert!(shrunk.memory_size() <= 1 << d, "d = {d}: {}", shrunk.memory_size());

        let choice = Strategy::FiniteState(choice_memory_strategy(&g, d).unwrap());
        assert_eq!(choice.memory_size(), 1 << d);
        let region = &out.solution.region1;
        assert!(verify_bounded_streett_strategy(&g, &choice, region).unwrap().is_accepted());
    }
}

#[test]
fn restricted_strategy_drops_outside_moves() {
    let g = running_example_as_streett();
    let out = solve_bounded_cost_streett(&g).unwrap();
    let s1 = out.solution.strategy1.as_ref().unwrap();
    let g_vertex = g.arena.vertex("g").unwrap();
    let cut = restrict_strategy(s1, &g.arena, &out.solution.region1);
    let fs = cut.to_finite_state();
    for m in 0..fs.memory.state_count() {
        assert_eq!(fs.next_move(g_vertex, m), None);
    }
}
