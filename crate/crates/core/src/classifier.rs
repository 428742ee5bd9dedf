use crate::budget::WorkBudget;
use crate::cliques::{intersection, maximal_cliques};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::holes::{shortest_induced_cycle, CycleFilter, Parity};
use crate::induced::{find_induced, InducedWitness, Pattern};
use serde::Serialize;

/// The maximal cliques of a graph together with how they touch.
///
/// Only meaningful when every pair of maximal cliques shares at most one
/// vertex; `shared_vertex_pairs` then lists exactly the touching pairs.
/// `parity` is the 2-coloring of the clique-incidence graph once
/// assigned: cliques sharing a vertex must take their difference indices
/// from levels of opposite parity, and with two available levels that is
/// a proper 2-coloring.
#[derive(Debug, Clone, Serialize)]
pub struct CliqueDecomposition {
    pub cliques: Vec<Vec<u32>>,
    pub shared_vertex_pairs: Vec<(usize, usize, u32)>,
    pub parity: Option<Vec<u8>>,
}

/// Why a graph fails to be a collection of cliques.
#[derive(Debug, Clone, Serialize)]
pub enum CollectionFailure {
    /// An induced claw; its center would need two same-level cliques.
    Claw(InducedWitness),
    /// Two maximal cliques sharing at least two vertices; the witness is
    /// the induced four-vertices-minus-one-edge this always produces.
    Overlap {
        cliques: (usize, usize),
        witness: InducedWitness,
    },
}

impl CollectionFailure {
    pub fn witness(&self) -> &InducedWitness {
        match self {
            CollectionFailure::Claw(w) => w,
            CollectionFailure::Overlap { witness, .. } => witness,
        }
    }
}

/// A graph is a collection of cliques when it is claw-free and its
/// maximal cliques pairwise share at most one vertex.
pub fn is_collection_of_cliques(
    h: &Graph,
    budget: &mut WorkBudget,
) -> Result<std::result::Result<CliqueDecomposition, CollectionFailure>> {
    if let Some(w) = find_induced(h, Pattern::Claw, budget)? {
        return Ok(Err(CollectionFailure::Claw(w)));
    }
    let cliques = maximal_cliques(h);
    let mut shared_vertex_pairs = Vec::new();
    for i in 0..cliques.len() {
        for j in i + 1..cliques.len() {
            budget.spend()?;
            let shared = intersection(&cliques[i], &cliques[j]);
            match shared.len() {
                0 => {}
                1 => shared_vertex_pairs.push((i, j, shared[0])),
                _ => {
                    let witness = overlap_witness(h, &cliques[i], &cliques[j], &shared);
                    return Ok(Err(CollectionFailure::Overlap {
                        cliques: (i, j),
                        witness,
                    }));
                }
            }
        }
    }
    Ok(Ok(CliqueDecomposition {
        cliques,
        shared_vertex_pairs,
        parity: None,
    }))
}

/// Two maximal cliques sharing vertices x, y always contain a pair of
/// private vertices that are non-adjacent (otherwise the union would be
/// one bigger clique), and those four vertices induce K4 minus an edge.
fn overlap_witness(h: &Graph, k1: &[u32], k2: &[u32], shared: &[u32]) -> InducedWitness {
    let (x, y) = (shared[0], shared[1]);
    for &u in k1.iter().filter(|v| !k2.contains(v)) {
        for &w in k2.iter().filter(|v| !k1.contains(v)) {
            if !h.has_edge(u, w) {
                let witness = InducedWitness {
                    pattern: Pattern::K4MinusE,
                    vertices: vec![u, x, y, w],
                };
                debug_assert!(witness.verify(h));
                return witness;
            }
        }
    }
    unreachable!("maximality forces a non-adjacent private pair");
}

/// Outcome of the tree-of-cliques test.
#[derive(Debug, Clone)]
pub enum TreeOfCliques {
    Tree(CliqueDecomposition),
    NotCollection(CollectionFailure),
    /// A collection, but with an induced cycle of length >= 4.
    HasCycle(CliqueDecomposition, InducedWitness),
}

/// A tree of cliques is a collection of cliques with no induced cycle of
/// length four or more.
pub fn is_tree_of_cliques(h: &Graph, budget: &mut WorkBudget) -> Result<TreeOfCliques> {
    let decomposition = match is_collection_of_cliques(h, budget)? {
        Ok(d) => d,
        Err(f) => return Ok(TreeOfCliques::NotCollection(f)),
    };
    match shortest_induced_cycle(h, &CycleFilter::at_least(4), budget)? {
        Some(c) => Ok(TreeOfCliques::HasCycle(decomposition, c)),
        None => Ok(TreeOfCliques::Tree(decomposition)),
    }
}

/// 2-color the clique-incidence graph (cliques adjacent when they share
/// a vertex), breadth-first per component, smallest clique index first.
/// Cliques sharing a vertex need difference indices at levels of opposite
/// parity; singleton cliques are unconstrained and keep the default 1.
///
/// On failure, returns an odd cycle of clique indices in the incidence
/// graph.
pub fn assign_parities(
    d: &CliqueDecomposition,
) -> std::result::Result<Vec<u8>, Vec<usize>> {
    let k = d.cliques.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(i, j, _) in &d.shared_vertex_pairs {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut parity = vec![0u8; k];
    let mut parent = vec![usize::MAX; k];
    for root in 0..k {
        if parity[root] != 0 {
            continue;
        }
        parity[root] = 1;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if parity[j] == 0 {
                    parity[j] = 3 - parity[i];
                    parent[j] = i;
                    queue.push_back(j);
                } else if parity[j] == parity[i] {
                    return Err(incidence_cycle(&parent, i, j));
                }
            }
        }
    }
    Ok(parity)
}

/// Close the odd cycle witnessed by a same-parity edge (i, j) in the
/// breadth-first forest: both root paths, trimmed at the lowest common
/// ancestor.
fn incidence_cycle(parent: &[usize], i: usize, j: usize) -> Vec<usize> {
    let path_to_root = |mut v: usize| {
        let mut path = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            path.push(v);
        }
        path
    };
    let pi = path_to_root(i);
    let pj = path_to_root(j);
    let mut common = 0;
    while common < pi.len().min(pj.len())
        && pi[pi.len() - 1 - common] == pj[pj.len() - 1 - common]
    {
        common += 1;
    }
    let mut cycle: Vec<usize> = pi[..=pi.len() - common].to_vec();
    cycle.extend(pj[..pj.len() - common].iter().rev());
    cycle
}

/// Classification verdict. `NotSpg` carries a re-checkable witness;
/// `SpgByTheorem` carries the parity-assigned decomposition that the
/// synthesizer consumes.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status")]
pub enum Verdict {
    SpgByTheorem {
        decomposition: CliqueDecomposition,
    },
    NotSpg {
        reason: String,
        witness: InducedWitness,
    },
    UnknownContainsC4 {
        witness: InducedWitness,
    },
}

impl Verdict {
    pub fn is_spg_by_theorem(&self) -> bool {
        matches!(self, Verdict::SpgByTheorem { .. })
    }
}

/// Decide whether `h` is a shortest path graph, within the limits of the
/// classification of graphs without induced four-cycles.
///
/// Four-cycle-free graphs are decided completely: such a graph is an SPG
/// exactly when it is a collection of cliques with no odd induced cycle
/// of length five or more. Graphs containing an induced four-cycle are
/// checked against the refutations that hold unconditionally (K_{2,3},
/// K4 minus an edge, C5) and otherwise left open. The claw and long odd
/// hole refutations apply only in the four-cycle-free case, so they are
/// not consulted here.
pub fn classify(h: &Graph, budget: &mut WorkBudget) -> Result<Verdict> {
    let c4 = find_induced(h, Pattern::C4, budget)?;
    if let Some(c4) = c4 {
        for (reason, pattern) in [
            ("induced K23", Pattern::K23),
            ("induced K4 minus an edge", Pattern::K4MinusE),
            ("induced C5", Pattern::C5),
        ] {
            if let Some(w) = find_induced(h, pattern, budget)? {
                return Ok(Verdict::NotSpg {
                    reason: reason.into(),
                    witness: w,
                });
            }
        }
        return Ok(Verdict::UnknownContainsC4 { witness: c4 });
    }
    let mut decomposition = match is_collection_of_cliques(h, budget)? {
        Ok(d) => d,
        Err(CollectionFailure::Claw(w)) => {
            return Ok(Verdict::NotSpg {
                reason: "induced claw in a four-cycle-free graph".into(),
                witness: w,
            })
        }
        Err(CollectionFailure::Overlap { cliques, witness }) => {
            return Ok(Verdict::NotSpg {
                reason: format!(
                    "maximal cliques {} and {} share two or more vertices",
                    cliques.0, cliques.1
                ),
                witness,
            })
        }
    };
    let odd_filter = CycleFilter::at_least(5).parity(Parity::Odd);
    if let Some(w) = shortest_induced_cycle(h, &odd_filter, budget)? {
        return Ok(Verdict::NotSpg {
            reason: "induced odd hole".into(),
            witness: w,
        });
    }
    match assign_parities(&decomposition) {
        Ok(parity) => {
            decomposition.parity = Some(parity);
            Ok(Verdict::SpgByTheorem { decomposition })
        }
        Err(cycle) => Err(Error::InternalInconsistency(format!(
            "graph passed every collection and odd-hole check, yet its \
             clique-incidence graph has an odd cycle through cliques {cycle:?}; \
             the two-level parity assignment this library relies on cannot exist"
        ))),
    }
}

/// One row of the forbidden-structure report.
#[derive(Debug, Clone, Serialize)]
pub struct ForbiddenFinding {
    pub check: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<InducedWitness>,
}

/// Scan for every structure in the battery and report what is present.
///
/// The four-cycle is reported alongside the genuinely forbidden patterns
/// because its presence delimits what the classification can say.
pub fn forbidden_report(h: &Graph, budget: &mut WorkBudget) -> Result<Vec<ForbiddenFinding>> {
    let mut findings = Vec::new();
    for pattern in [
        Pattern::Claw,
        Pattern::K4MinusE,
        Pattern::K23,
        Pattern::C4,
        Pattern::C5,
    ] {
        let hit = find_induced(h, pattern, budget)?;
        findings.push(ForbiddenFinding {
            check: pattern.name(),
            status: (if hit.is_some() { "found" } else { "absent" }).into(),
            witness: hit,
        });
    }
    let long_odd = CycleFilter::at_least(7).parity(Parity::Odd);
    let hit = shortest_induced_cycle(h, &long_odd, budget)?;
    findings.push(ForbiddenFinding {
        check: "odd_hole_over_5".into(),
        status: (if hit.is_some() { "found" } else { "absent" }).into(),
        witness: hit,
    });
    Ok(findings)
}
