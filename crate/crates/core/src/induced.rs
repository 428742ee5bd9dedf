use crate::budget::WorkBudget;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Named induced subgraphs the recognition logic cares about.
///
/// `C4` and `C5` are kept apart from the generic `Cycle` because they play
/// distinct roles: an induced 4-cycle separates the decidable regime from
/// the open one, and a 5-cycle is an outright refutation. Odd chordless
/// cycles of length at least seven get their own constructor since they
/// only refute indirectly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    Claw,
    K4MinusE,
    K23,
    C4,
    C5,
    OddHole(u32),
    Cycle(u32),
}

impl Pattern {
    /// Canonical pattern for a chordless cycle of length `k`.
    pub fn cycle(k: u32) -> Pattern {
        match k {
            4 => Pattern::C4,
            5 => Pattern::C5,
            _ if k % 2 == 1 => Pattern::OddHole(k),
            _ => Pattern::Cycle(k),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Pattern::Claw | Pattern::K4MinusE | Pattern::C4 => 4,
            Pattern::K23 | Pattern::C5 => 5,
            Pattern::OddHole(k) | Pattern::Cycle(k) => *k as usize,
        }
    }

    /// Edges over the fixed vertex order `0..order()`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        match self {
            Pattern::Claw => vec![(0, 1), (0, 2), (0, 3)],
            Pattern::K4MinusE => vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
            Pattern::K23 => vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
            Pattern::C4 | Pattern::C5 | Pattern::OddHole(_) | Pattern::Cycle(_) => {
                let k = self.order() as u32;
                (0..k).map(|i| (i, (i + 1) % k)).map(|(a, b)| (a.min(b), a.max(b))).collect()
            }
        }
    }

    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.order(), &self.edges()).expect("pattern edges are valid")
    }

    pub fn name(&self) -> String {
        match self {
            Pattern::Claw => "claw".into(),
            Pattern::K4MinusE => "k4_minus_e".into(),
            Pattern::K23 => "k23".into(),
            Pattern::C4 => "c4".into(),
            Pattern::C5 => "c5".into(),
            Pattern::OddHole(k) => format!("odd_hole_{k}"),
            Pattern::Cycle(k) => format!("cycle_{k}"),
        }
    }
}

impl serde::Serialize for Pattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// An induced occurrence: `vertices[i]` plays the pattern's vertex `i`,
/// so adjacency between witness vertices matches the pattern edge for edge.
#[derive(Debug, Clone, serde::Serialize)]
pub struct InducedWitness {
    pub pattern: Pattern,
    pub vertices: Vec<u32>,
}

impl InducedWitness {
    /// Re-check the witness against a graph: distinct vertices, pattern
    /// edges present, all other pairs absent.
    pub fn verify(&self, g: &Graph) -> bool {
        let k = self.pattern.order();
        if self.vertices.len() != k {
            return false;
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k || sorted.iter().any(|&v| v as usize >= g.n()) {
            return false;
        }
        let pat = self.pattern.graph();
        for i in 0..k as u32 {
            for j in i + 1..k as u32 {
                let want = pat.has_edge(i, j);
                let have = g.has_edge(self.vertices[i as usize], self.vertices[j as usize]);
                if want != have {
                    return false;
                }
            }
        }
        true
    }
}

/// Patterns bigger than this are refused; big chordless cycles go through
/// the dedicated cycle search instead, which scales with cycle length.
pub const DEFAULT_PATTERN_CAP: usize = 8;

/// First induced occurrence of `pattern` in `g`, or `None`.
pub fn find_induced(
    g: &Graph,
    pattern: Pattern,
    budget: &mut WorkBudget,
) -> Result<Option<InducedWitness>> {
    find_induced_with_cap(g, pattern, DEFAULT_PATTERN_CAP, budget)
}

pub fn find_induced_with_cap(
    g: &Graph,
    pattern: Pattern,
    cap: usize,
    budget: &mut WorkBudget,
) -> Result<Option<InducedWitness>> {
    let mut found = None;
    search(g, pattern, cap, budget, &mut |w| {
        found = Some(w);
        false
    })?;
    Ok(found)
}

/// Every induced occurrence, one ordered witness per vertex set,
/// in the deterministic order the backtracking discovers them.
pub fn find_all_induced(
    g: &Graph,
    pattern: Pattern,
    budget: &mut WorkBudget,
) -> Result<Vec<InducedWitness>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    search(g, pattern, DEFAULT_PATTERN_CAP, budget, &mut |w| {
        let mut key = w.vertices.clone();
        key.sort_unstable();
        if seen.insert(key) {
            out.push(w);
        }
        true
    })?;
    Ok(out)
}

/// Backtracking embedder. Pattern vertices are placed in index order; each
/// placement is checked against every already placed vertex for adjacency
/// and non-adjacency, so a completed assignment is an induced match.
/// The callback returns `false` to stop the search.
fn search(
    g: &Graph,
    pattern: Pattern,
    cap: usize,
    budget: &mut WorkBudget,
    on_match: &mut dyn FnMut(InducedWitness) -> bool,
) -> Result<()> {
    let k = pattern.order();
    if k > cap {
        return Err(Error::PatternTooLarge { size: k, cap });
    }
    if k > g.n() {
        return Ok(());
    }
    let pat = pattern.graph();
    let mut assign: Vec<u32> = Vec::with_capacity(k);
    let mut used = vec![false; g.n()];
    place(g, &pat, pattern, budget, &mut assign, &mut used, on_match)?;
    Ok(())
}

fn place(
    g: &Graph,
    pat: &Graph,
    pattern: Pattern,
    budget: &mut WorkBudget,
    assign: &mut Vec<u32>,
    used: &mut [bool],
    on_match: &mut dyn FnMut(InducedWitness) -> bool,
) -> Result<bool> {
    let i = assign.len();
    if i == pat.n() {
        return Ok(on_match(InducedWitness {
            pattern,
            vertices: assign.clone(),
        }));
    }
    'candidates: for v in 0..g.n() as u32 {
        if used[v as usize] {
            continue;
        }
        budget.spend()?;
        for (j, &w) in assign.iter().enumerate() {
            if pat.has_edge(j as u32, i as u32) != g.has_edge(w, v) {
                continue 'candidates;
            }
        }
        assign.push(v);
        used[v as usize] = true;
        let keep_going = place(g, pat, pattern, budget, assign, used, on_match)?;
        assign.pop();
        used[v as usize] = false;
        if !keep_going {
            return Ok(false);
        }
    }
    Ok(true)
}
