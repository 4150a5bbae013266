use super::*;
use crate::arena::ArenaBuilder;
use crate::parity::solve_parity;
use crate::verify::fixtures::{running_example, lower_bound_parity_game};
use crate::verify::{verify_bounded_strategy, verify_cost_strategy, verify_layered_certificate};
use crate::Cost;

fn names(game: &Game, set: &VertexSet) -> String {
    game.arena.format_set(set)
}

#[test]
fn request_memory_updates() {
    let small = RequestMemory::new(&ParityColoring::new(vec![0, 1, 2]));
    let one = small.state_of(Some(1)).unwrap();
    assert_eq!(small.memory.update(one, 2), RequestMemory::BOTTOM);
    assert_eq!(small.memory.update(one, 0), one);
    assert_eq!(small.memory.update(RequestMemory::BOTTOM, 1), one);

    let wide = RequestMemory::new(&ParityColoring::new((0..=8).collect()));
    let s3 = wide.state_of(Some(3)).unwrap();
    assert_eq!(wide.request(wide.memory.update(s3, 5)), Some(5));
    assert_eq!(wide.memory.update(s3, 4), RequestMemory::BOTTOM);
    assert_eq!(wide.memory.update(s3, 1), s3);
}

#[test]
fn request_memory_along_example_prefix() {
    let g = running_example();
    let m = RequestMemory::new(g.coloring().unwrap());
    let prefix: Vec<usize> = ["a", "b", "b", "c"].iter().map(|n| g.arena.vertex(n).unwrap()).collect();
    assert_eq!(m.request(m.memory.run(&prefix[..3])), Some(1));
    assert_eq!(m.memory.run(&prefix), RequestMemory::BOTTOM);
}

#[test]
fn example_bounded_regions() {
    let g = running_example();
    let b = solve_bounded_cost_parity(&g).unwrap();
    assert_eq!(names(&g, &b.solution.region0), "g");
    assert_eq!(names(&g, &b.solution.region1), "a b c d e f");
    assert!(b.solution.is_partition());
    // No Player 0 vertex: the extracted strategy is empty.
    let Some(Strategy::Positional(s0)) = &b.solution.strategy0 else { panic!("positional") };
    assert!(s0.moves.iter().all(Option::is_none));
    for player in [Player::Zero, Player::One] {
        let s = b.solution.strategy(player).unwrap();
        assert!(verify_bounded_strategy(&g, s, b.solution.region(player)).unwrap().is_accepted());
    }
}

#[test]
fn projection_identity() {
    let g = running_example();
    let b = solve_bounded_cost_parity(&g).unwrap();
    for v in g.arena.vertices() {
        let p = b.reduction.initial(v);
        assert_eq!(b.solution.region0.contains(v), b.product_solution.region0.contains(p));
    }
}

#[test]
fn subdivided_example_has_three_new_vertices() {
    let b = solve_bounded_cost_parity(&running_example()).unwrap();
    let sub = &b.reduction.subdivision.game.arena;
    assert_eq!(sub.vertex_count(), 10);
    assert_eq!(sub.edge_count(), 13);
    assert_eq!(b.reduction.ell, 3);
    assert_eq!(b.reduction.product.vertex_count(), 20);
}

#[test]
fn pcrr_colors() {
    let b = solve_bounded_cost_parity(&running_example()).unwrap();
    let r = &b.reduction;
    let sub = &r.subdivision.game.arena;
    let at = |v: &str, m: usize| r.coloring.color(r.map.get(sub.vertex(v).unwrap(), m).unwrap());
    assert_eq!(at("a", RequestMemory::BOTTOM), 4);
    assert_eq!(at("sub(b,b)", 1), 3);
    assert_eq!(at("c", 1), 2);
    assert_eq!(at("d", 1), 1);
}

#[test]
fn bounded_lower_bound_family() {
    for d in 1..=4 {
        let g = lower_bound_parity_game(d);
        let b = solve_bounded_cost_parity(&g).unwrap();
        assert!(b.solution.region0.is_empty(), "d = {d}");
        let s1 = b.solution.strategy1.as_ref().unwrap();
        assert_eq!(s1.memory_size(), d + 1);
        assert!(verify_bounded_strategy(&g, s1, &b.solution.region1).unwrap().is_accepted());
    }
}

fn epsilon_game() -> Game {
    let mut b = ArenaBuilder::new(1);
    b.vertex("p", Player::Zero);
    b.vertex("q", Player::One);
    b.vertex("r", Player::Zero);
    for (u, v) in [("p", "q"), ("q", "p"), ("q", "r"), ("r", "r"), ("p", "p")] {
        b.uniform_edge(u, v, Cost::Epsilon).unwrap();
    }
    Game::parity(b.build().unwrap(), ParityColoring::new(vec![2, 3, 1])).unwrap()
}

#[test]
fn all_epsilon_collapses_to_parity() {
    let g = epsilon_game();
    let parity = solve_parity(&g.arena, g.coloring().unwrap()).unwrap();
    let bounded = solve_bounded_cost_parity(&g).unwrap();
    let cost = solve_cost_parity(&g).unwrap();
    assert_eq!(bounded.solution.region0, parity.region0);
    assert_eq!(cost.solution.region0, parity.region0);
    assert_eq!(cost.iterations(), 2);
}

#[test]
fn without_odd_colors_the_memory_is_trivial() {
    let mut b = ArenaBuilder::new(1);
    b.vertex("p", Player::Zero);
    b.vertex("q", Player::Zero);
    b.uniform_edge("p", "q", Cost::Increment).unwrap();
    b.uniform_edge("p", "p", Cost::Epsilon).unwrap();
    b.uniform_edge("q", "q", Cost::Increment).unwrap();
    let g = Game::parity(b.build().unwrap(), ParityColoring::new(vec![0, 2])).unwrap();
    let out = solve_bounded_cost_parity(&g).unwrap();
    assert_eq!(out.reduction.memory.memory.state_count(), 1);
    assert_eq!(out.solution.region0, VertexSet::full(2));
    let Some(Strategy::Positional(s0)) = &out.solution.strategy0 else { panic!() };
    assert!(s0.get(0).is_some() && s0.get(1) == Some(1));
}

#[test]
fn algorithm_trace_on_example() {
    let g = running_example();
    let out = solve_cost_parity(&g).unwrap();
    let trace: Vec<(String, String)> =
        out.trace.iter().map(|i| (names(&g, &i.winning), names(&g, &i.accumulated))).collect();
    assert_eq!(
        trace,
        [
            ("g".into(), "f g".into()),
            ("e".into(), "d e f g".into()),
            ("".into(), "d e f g".into()),
        ]
    );
    assert_eq!(names(&g, &out.solution.region0), "d e f g");
    assert_eq!(names(&g, &out.solution.region1), "a b c");
    assert!(out.solution.strategy1.is_none());
    assert!(verify_layered_certificate(&g, out.certificate()).unwrap().is_valid());
    let s0 = out.solution.strategy0.as_ref().unwrap();
    assert!(verify_cost_strategy(&g, s0, &out.solution.region0).unwrap().is_accepted());
    assert_eq!(memory_pool_size(out.certificate()), 1);
}

#[test]
fn certificate_layers_are_disjoint_and_cover_the_region() {
    let g = running_example();
    let out = solve_cost_parity(&g).unwrap();
    let cert = out.certificate();
    let mut seen = VertexSet::empty(7);
    for layer in &cert.layers {
        assert!(seen.is_disjoint(&layer.attractor));
        assert!(layer.winning.is_subset(&layer.attractor));
        seen = seen.union(&layer.attractor);
    }
    assert_eq!(seen, out.solution.region0);
    assert!(out.iterations() <= g.vertex_count() + 1);
}

#[test]
fn spoiler_on_example_delays_longer_and_longer() {
    let g = running_example();
    let out = solve_cost_parity(&g).unwrap();
    let a = g.arena.vertex("a").unwrap();
    let mut spoiler = build_spoiler(&g, &out).unwrap();
    let mut idle = StrategyDriver::new(Strategy::Positional(PositionalStrategy::empty(Player::Zero, 7)).to_finite_state());
    let trace = simulate_play(&g, a, [&mut idle, &mut spoiler], 10_000).unwrap();
    let restarts = spoiler.restarts();
    assert!(restarts.len() >= 20);
    for (b, r) in restarts.iter().enumerate() {
        assert_eq!(r.bound, b as u64 + 1);
        assert!(r.cost > r.bound);
    }
    let worst = trace.steps.iter().filter_map(|s| s.cost_since_request).max().unwrap();
    assert!(worst > 20);
    assert!(trace.vertices().iter().all(|&v| out.solution.region1.contains(v)));
}

#[test]
fn spoiler_refuses_player_zero_region() {
    let g = running_example();
    let out = solve_cost_parity(&g).unwrap();
    let mut spoiler = build_spoiler(&g, &out).unwrap();
    assert!(spoiler.reset(g.arena.vertex("g").unwrap()).is_err());
}

#[test]
fn spoiler_without_increments_never_restarts() {
    let g = epsilon_game();
    let out = solve_cost_parity(&g).unwrap();
    let q = g.arena.vertex("q").unwrap();
    assert!(out.solution.region1.contains(q));
    let mut spoiler = build_spoiler(&g, &out).unwrap();
    let p0 = Strategy::Positional(PositionalStrategy { player: Player::Zero, moves: vec![Some(1), None, Some(2)] });
    let mut zero = StrategyDriver::new(p0.to_finite_state());
    let trace = simulate_play(&g, q, [&mut zero, &mut spoiler], 50).unwrap();
    assert!(spoiler.restarts().is_empty());
    assert_eq!(trace.vertices()[1], g.arena.vertex("r").unwrap());
}

#[test]
fn simulation_of_positional_strategies() {
    let g = running_example();
    let a = g.arena.vertex("a").unwrap();
    let mut zero = StrategyDriver::new(Strategy::Positional(PositionalStrategy::empty(Player::Zero, 7)).to_finite_state());
    let mut moves = PositionalStrategy::empty(Player::One, 7);
    for (u, v) in [("a", "b"), ("b", "c"), ("c", "a"), ("d", "e"), ("e", "f"), ("f", "g"), ("g", "g")] {
        moves.set(g.arena.vertex(u).unwrap(), g.arena.vertex(v).unwrap());
    }
    let mut one = StrategyDriver::new(Strategy::Positional(moves).to_finite_state());
    let empty = simulate_play(&g, a, [&mut zero, &mut one], 0).unwrap();
    assert_eq!(empty.vertices(), [a]);
    let trace = simulate_play(&g, a, [&mut zero, &mut one], 12).unwrap();
    let got: Vec<&str> = trace.vertices().iter().map(|&v| g.arena.name(v)).collect();
    assert_eq!(got, ["a", "b", "c", "a", "b", "c", "a", "b", "c", "a", "b", "c", "a"]);
    let requests = RequestMemory::new(g.coloring().unwrap());
    let vs = trace.vertices();
    for k in 0..vs.len() {
        assert_eq!(trace.steps[k].open_request, requests.request(requests.memory.run(&vs[..=k])));
    }
}

#[test]
fn multi_dimensional_costs_are_rejected() {
    let g = crate::verify::fixtures::lower_bound_streett_game(1);
    assert!(solve_bounded_cost_parity(&g).is_err());
}
