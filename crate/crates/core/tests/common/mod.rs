//! Random plays, prefixes and sheets shared by the integration tests.
#![allow(dead_code)]

use costgames::graph::Subdivision;
use costgames::sheets::{Sheet, SheetSpace};
use costgames::{Arena, Lasso};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random lasso: a walk of `lead` free steps, `spin` more steps, then on
/// until the walk revisits a vertex seen after the free part. Cycles need
/// not be simple.
pub fn random_lasso(arena: &Arena, rng: &mut ChaCha8Rng) -> Lasso {
    let step = |v: usize, rng: &mut ChaCha8Rng| {
        let succ: Vec<usize> = arena.successors(v).collect();
        succ[rng.gen_range(0..succ.len())]
    };
    let lead = rng.gen_range(0..4);
    let spin = rng.gen_range(0..6);
    let mut walk = vec![rng.gen_range(0..arena.vertex_count())];
    for _ in 0..lead + spin {
        let v = step(*walk.last().unwrap(), rng);
        walk.push(v);
    }
    loop {
        let v = step(*walk.last().unwrap(), rng);
        if let Some(j) = (lead..walk.len()).find(|&j| walk[j] == v) {
            let cycle = walk.split_off(j);
            return Lasso::new(walk, cycle);
        }
        walk.push(v);
    }
}

/// The same play in the subdivided arena.
pub fn subdivide_lasso(sub: &Subdivision, arena: &Arena, lasso: &Lasso) -> Lasso {
    let expand = |from: usize, len: usize| {
        let mut out = Vec::new();
        for k in from..from + len {
            let (u, v) = (lasso.at(k), lasso.at(k + 1));
            out.push(u);
            let hop = sub.first_hop(arena, u, v);
            if hop != v {
                out.push(hop);
            }
        }
        out
    };
    Lasso::new(expand(0, lasso.prefix.len()), expand(lasso.prefix.len(), lasso.cycle.len()))
}

pub fn proper_sheet(space: &SheetSpace, rng: &mut ChaCha8Rng) -> Sheet {
    let mut xs = vec![2 * rng.gen_range(0..=space.ell / 2) + 1];
    xs.extend((1..space.len()).map(|_| rng.gen_range(0..=space.t)));
    Sheet::Proper(xs)
}

pub fn any_sheet(space: &SheetSpace, rng: &mut ChaCha8Rng) -> Sheet {
    match rng.gen_range(0..10) {
        0 => Sheet::Bottom,
        1 => Sheet::Top,
        _ => proper_sheet(space, rng),
    }
}

pub fn sheet_space(rng: &mut ChaCha8Rng) -> SheetSpace {
    SheetSpace::new(2 * rng.gen_range(0..4) + 1, rng.gen_range(1..=4)).unwrap()
}

/// A random walk of at most `len` vertices.
pub fn random_walk(arena: &Arena, start: usize, len: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut walk = vec![start];
    while walk.len() < len {
        let succ: Vec<usize> = arena.successors(*walk.last().unwrap()).collect();
        walk.push(succ[rng.gen_range(0..succ.len())]);
    }
    walk
}
