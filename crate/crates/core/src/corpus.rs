//! Seeded generators for recognizable inputs.
//!
//! The synthesizer's interesting regime is graphs that satisfy the
//! clique-collection conditions: claw-free, maximal cliques pairwise
//! sharing at most one vertex, no odd chordless cycle of length five or
//! more. This module builds such graphs by construction, in bulk and
//! reproducibly, so the classify-synthesize-verify pipeline can be
//! exercised on hundreds of instances rather than a handful of fixtures.
//!
//! Two shapes are generated and combined: block trees of cliques (every
//! cycle stays inside one clique) and even rings of cliques (consecutive
//! cliques share one vertex, closing a single chordless cycle of even
//! length at least six). Both admit further cliques hung off any vertex
//! that so far lies in only one clique, and a graph may consist of several
//! independent components.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn add_clique_on(g: &mut Graph, members: &[u32]) {
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            g.add_edge(members[i], members[j]).expect("generated ids are in range");
        }
    }
}

/// Hang new cliques off attachment points that currently lie in exactly
/// one clique, consuming up to `left` fresh vertices.
fn attach_cliques(g: &mut Graph, rng: &mut ChaCha8Rng, free: &mut Vec<u32>, left: &mut usize) {
    while *left > 0 && !free.is_empty() && rng.gen_bool(0.8) {
        let at = free.swap_remove(rng.gen_range(0..free.len()));
        let take = rng.gen_range(1..=(*left).min(3));
        let mut members = vec![at];
        for _ in 0..take {
            members.push(g.add_vertex());
        }
        add_clique_on(g, &members);
        free.extend(&members[1..]);
        *left -= take;
    }
}

/// One block tree of cliques on at most `budget` fresh vertices.
fn grow_tree(g: &mut Graph, rng: &mut ChaCha8Rng, budget: usize) {
    let first = rng.gen_range(1..=4).min(budget);
    let seed_members: Vec<u32> = (0..first).map(|_| g.add_vertex()).collect();
    add_clique_on(g, &seed_members);
    let mut free = seed_members;
    let mut left = budget - first;
    attach_cliques(g, rng, &mut free, &mut left);
}

/// One even ring of at least six cliques on at most `budget` fresh
/// vertices; requires `budget >= 6`. Ring cliques may be fattened beyond
/// edges, and further cliques may hang off the fattening vertices.
fn grow_ring(g: &mut Graph, rng: &mut ChaCha8Rng, budget: usize) {
    let longest = budget.min(12) & !1;
    let k = 2 * rng.gen_range(3..=longest / 2);
    let ring: Vec<u32> = (0..k).map(|_| g.add_vertex()).collect();
    // Ring clique i starts as the edge from ring[i] to its successor.
    let mut cliques: Vec<Vec<u32>> = (0..k).map(|i| vec![ring[i], ring[(i + 1) % k]]).collect();
    for c in &cliques {
        add_clique_on(g, c);
    }
    let mut left = budget - k;
    let mut free = Vec::new();
    while left > 0 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..k);
        let w = g.add_vertex();
        for &m in &cliques[i] {
            g.add_edge(m, w).expect("generated ids are in range");
        }
        cliques[i].push(w);
        free.push(w);
        left -= 1;
    }
    attach_cliques(g, rng, &mut free, &mut left);
}

/// One random graph satisfying the clique-collection conditions, with at
/// most `max_vertices` vertices (and at least one).
pub fn random_collection(rng: &mut ChaCha8Rng, max_vertices: usize) -> Graph {
    assert!(max_vertices >= 1, "vertex budget must be positive");
    let mut g = Graph::new(0);
    let target = rng.gen_range(1..=max_vertices);
    loop {
        let remaining = target - g.n();
        if remaining >= 6 && rng.gen_bool(0.45) {
            let take = rng.gen_range(6..=remaining);
            grow_ring(&mut g, rng, take);
        } else {
            let take = rng.gen_range(1..=remaining);
            grow_tree(&mut g, rng, take);
        }
        // Components are optional extras; stop once the budget is spent or
        // on a coin flip.
        if g.n() >= target || rng.gen_bool(0.55) {
            break;
        }
    }
    g
}

/// `count` reproducible clique-collection graphs on at most `max_vertices`
/// vertices each. The same arguments always yield the same list.
pub fn seeded_collections(seed: u64, count: usize, max_vertices: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_collection(&mut rng, max_vertices)).collect()
}
