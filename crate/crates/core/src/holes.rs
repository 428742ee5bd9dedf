use crate::budget::WorkBudget;
use crate::error::Result;
use crate::graph::Graph;
use crate::induced::{InducedWitness, Pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// What kind of chordless cycle to look for.
#[derive(Debug, Clone, Copy, Default)]
pub struct CycleFilter {
    /// Smallest acceptable length; values below 3 are treated as 3.
    pub min_len: usize,
    /// Largest acceptable length; `None` means up to the graph order.
    pub max_len: Option<usize>,
    pub parity: Option<Parity>,
    /// Only cycles containing this vertex.
    pub through: Option<u32>,
}

impl CycleFilter {
    pub fn at_least(min_len: usize) -> Self {
        CycleFilter {
            min_len,
            ..Default::default()
        }
    }

    pub fn parity(mut self, p: Parity) -> Self {
        self.parity = Some(p);
        self
    }

    pub fn through(mut self, v: u32) -> Self {
        self.through = Some(v);
        self
    }
}

/// Shortest chordless cycle matching the filter, as an ordered witness.
///
/// Searches exact lengths in ascending order, so the first hit is the
/// shortest. Each length is an exhaustive chordless-path extension, which
/// makes the answer exact; runaway inputs are stopped by the budget.
pub fn shortest_induced_cycle(
    g: &Graph,
    filter: &CycleFilter,
    budget: &mut WorkBudget,
) -> Result<Option<InducedWitness>> {
    let lo = filter.min_len.max(3);
    let hi = filter.max_len.unwrap_or(g.n()).min(g.n());
    for len in lo..=hi {
        if let Some(p) = filter.parity {
            let is_odd = len % 2 == 1;
            if (p == Parity::Odd) != is_odd {
                continue;
            }
        }
        if let Some(w) = induced_cycle_of_length(g, len, filter.through, budget)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// First chordless cycle of exactly `len` vertices, optionally through a
/// fixed vertex. Vertices of the witness are in cycle order.
pub fn induced_cycle_of_length(
    g: &Graph,
    len: usize,
    through: Option<u32>,
    budget: &mut WorkBudget,
) -> Result<Option<InducedWitness>> {
    if len < 3 || len > g.n() {
        return Ok(None);
    }
    let starts: Vec<u32> = match through {
        Some(v) if (v as usize) < g.n() => vec![v],
        Some(_) => return Ok(None),
        None => (0..g.n() as u32).collect(),
    };
    let anchored = through.is_some();
    let mut path = Vec::with_capacity(len);
    let mut on_path = vec![false; g.n()];
    for s in starts {
        path.push(s);
        on_path[s as usize] = true;
        let found = extend(g, len, anchored, &mut path, &mut on_path, budget)?;
        on_path[s as usize] = false;
        path.pop();
        if let Some(vertices) = found {
            return Ok(Some(InducedWitness {
                pattern: Pattern::cycle(len as u32),
                vertices,
            }));
        }
    }
    Ok(None)
}

/// Grow a chordless path `[s, p1, ..., pk]`: the next vertex must be
/// adjacent to the last one and to no earlier path vertex. A neighbor of
/// the start closes the cycle and is only accepted at the target length;
/// it can never be walked through, because the start edge would remain as
/// a chord in any longer cycle.
///
/// Duplicate discoveries are cut two ways: unless anchored, the start is
/// the smallest vertex of the cycle; both ways, the second vertex must be
/// smaller than the closing one, fixing the direction of travel.
fn extend(
    g: &Graph,
    len: usize,
    anchored: bool,
    path: &mut Vec<u32>,
    on_path: &mut [bool],
    budget: &mut WorkBudget,
) -> Result<Option<Vec<u32>>> {
    let s = path[0];
    let last = *path.last().expect("path nonempty");
    for v in g.neighbors(last) {
        budget.spend()?;
        if on_path[v as usize] || (!anchored && v < s) {
            continue;
        }
        let interior = path.get(1..path.len() - 1).unwrap_or(&[]);
        if interior.iter().any(|&p| g.has_edge(p, v)) {
            continue;
        }
        let closes = g.has_edge(v, s);
        if path.len() + 1 == len {
            if closes && path.len() >= 2 && path[1] < v {
                let mut cycle = path.clone();
                cycle.push(v);
                return Ok(Some(cycle));
            }
            continue;
        }
        if closes && path.len() >= 2 {
            continue;
        }
        path.push(v);
        on_path[v as usize] = true;
        let found = extend(g, len, anchored, path, on_path, budget)?;
        on_path[v as usize] = false;
        path.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Length of a shortest cycle of any kind, or `None` for a forest.
///
/// BFS from every vertex; every non-tree edge closes a walk whose length
/// bounds a cycle from above, and for a root on a shortest cycle one such
/// edge meets it exactly.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for root in 0..g.n() as u32 {
        let mut dist = vec![u32::MAX; g.n()];
        let mut parent = vec![u32::MAX; g.n()];
        dist[root as usize] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    parent[v as usize] = u;
                    queue.push_back(v);
                }
            }
        }
        for (u, v) in g.edges() {
            if parent[u as usize] == v || parent[v as usize] == u {
                continue;
            }
            if dist[u as usize] == u32::MAX || dist[v as usize] == u32::MAX {
                continue;
            }
            let candidate = (dist[u as usize] + dist[v as usize] + 1) as usize;
            if best.is_none_or(|b| candidate < b) {
                best = Some(candidate);
            }
        }
    }
    best
}
