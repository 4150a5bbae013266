//! The example games used throughout the tests and the acceptance harness.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arena::ArenaBuilder;
use crate::{Arena, Cost, Edge, Game, ParityColoring, Player, StreettPair, StreettSpec, VertexSet};

/// Seven Player 1 vertices `a..g` in a line: `a b c` form a loop that can
/// exit at `c`, and `b`, `e`, `g` carry increment self-loops.
pub fn running_example() -> Game {
    let mut b = ArenaBuilder::new(1);
    let colors = [1, 0, 2, 1, 0, 1, 0];
    for name in ["a", "b", "c", "d", "e", "f", "g"] {
        b.vertex(name, Player::One);
    }
    let edges = [
        ("a", "b", Cost::Epsilon),
        ("b", "b", Cost::Increment),
        ("b", "c", Cost::Epsilon),
        ("c", "a", Cost::Epsilon),
        ("c", "d", Cost::Epsilon),
        ("d", "e", Cost::Epsilon),
        ("e", "e", Cost::Increment),
        ("e", "f", Cost::Epsilon),
        ("f", "g", Cost::Epsilon),
        ("g", "g", Cost::Increment),
    ];
    for (u, v, c) in edges {
        b.uniform_edge(u, v, c).expect("declared vertices");
    }
    let arena = b.build().expect("well-formed");
    Game::parity(arena, ParityColoring::new(colors.to_vec())).expect("consistent")
}

/// The same game with its coloring written as Streett pairs.
pub fn running_example_as_streett() -> Game {
    parity_as_streett(&running_example())
}

/// Encodes a parity game with costs as a Streett game with costs: one pair
/// per odd color, each measured by a copy of the single cost function. A
/// game without odd colors gets one pair that is never requested.
pub fn parity_as_streett(game: &Game) -> Game {
    let coloring = game.coloring().expect("parity game");
    let n = game.vertex_count();
    let mut spec = StreettSpec::from_parity(coloring);
    if spec.pairs.is_empty() {
        spec.pairs.push(StreettPair { requests: VertexSet::empty(n), responses: VertexSet::empty(n) });
    }
    let d = spec.pair_count();
    let arena = &game.arena;
    let edges = arena
        .edges()
        .iter()
        .map(|e| Edge { source: e.source, target: e.target, costs: vec![e.costs[0]; d] })
        .collect();
    let arena = Arena::unchecked(arena.names().to_vec(), arena.owners().to_vec(), edges, d);
    Game::streett(arena, spec).expect("encoding keeps the arena valid")
}

/// The bounded parity game with costs in which Player 1 needs `d + 1` memory
/// states: a Player 0 hub of color 0 and one blade per odd color `c < 2d`,
/// consisting of a Player 1 vertex of color `c - 1` with a self-loop, a vertex
/// of color `2d` and a vertex of color `c` leading back to the hub. Every
/// edge is an increment.
pub fn lower_bound_parity_game(d: usize) -> Game {
    assert!(d >= 1, "at least one blade");
    let mut b = ArenaBuilder::new(1);
    let mut colors = vec![0];
    b.vertex("h", Player::Zero);
    let top = 2 * d as u32;
    for k in 0..d {
        let c = 2 * k as u32 + 1;
        b.vertex(&format!("x{c}"), Player::One);
        b.vertex(&format!("y{c}"), Player::Zero);
        b.vertex(&format!("z{c}"), Player::Zero);
        colors.extend([c - 1, top, c]);
    }
    for k in 0..d {
        let c = 2 * k + 1;
        let (x, y, z) = (format!("x{c}"), format!("y{c}"), format!("z{c}"));
        for (u, v) in [("h", x.as_str()), (&x, &x), (&x, &y), (&y, &z), (&z, "h")] {
            b.uniform_edge(u, v, Cost::Increment).expect("declared vertices");
        }
    }
    Game::parity(b.build().expect("well-formed"), ParityColoring::new(colors)).expect("consistent")
}

/// The bounded Streett game with costs with `2d` pairs in which Player 1
/// needs `2^d` memory states. Player 0 first picks one of `q_{2j}`, `q_{2j+1}`
/// for each `j < d`; Player 1 then walks `v'_0, …` and Player 0 may stop at
/// any `p_c` by moving to the sink `s_c`, which answers every pair but `c`.
/// Every edge is an increment in every dimension.
pub fn lower_bound_streett_game(d: usize) -> Game {
    assert!(d >= 1, "at least one choice");
    let pairs = 2 * d;
    let mut b = ArenaBuilder::new(pairs);
    for j in 0..d {
        b.vertex(&format!("v{j}"), Player::Zero);
    }
    for c in 0..pairs {
        b.vertex(&format!("q{c}"), Player::Zero);
    }
    for j in 0..d {
        b.vertex(&format!("v'{j}"), Player::One);
    }
    for c in 0..pairs {
        b.vertex(&format!("p{c}"), Player::Zero);
    }
    for c in 0..pairs {
        b.vertex(&format!("s{c}"), Player::Zero);
    }
    let mut edge = |u: &str, v: &str| {
        b.uniform_edge(u, v, Cost::Increment).expect("declared vertices");
    };
    for j in 0..d {
        let next = if j + 1 < d { format!("v{}", j + 1) } else { "v'0".into() };
        for c in [2 * j, 2 * j + 1] {
            edge(&format!("v{j}"), &format!("q{c}"));
            edge(&format!("q{c}"), &next);
            edge(&format!("v'{j}"), &format!("p{c}"));
            edge(&format!("p{c}"), &format!("s{c}"));
            if j + 1 < d {
                edge(&format!("p{c}"), &format!("v'{}", j + 1));
            }
            edge(&format!("s{c}"), &format!("s{c}"));
        }
    }
    let arena = b.build().expect("well-formed");
    let n = arena.vertex_count();
    let q: Vec<usize> = (0..pairs).map(|c| arena.vertex(&format!("q{c}")).expect("declared")).collect();
    let s: Vec<usize> = (0..pairs).map(|c| arena.vertex(&format!("s{c}")).expect("declared")).collect();
    let spec = StreettSpec::new(
        (0..pairs)
            .map(|c| StreettPair {
                requests: VertexSet::from_indices(n, [q[c]]),
                responses: VertexSet::from_indices(n, (0..pairs).filter(|&o| o != c).map(|o| s[o])),
            })
            .collect(),
    );
    Game::streett(arena, spec).expect("consistent")
}
