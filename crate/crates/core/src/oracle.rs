//! Brute-force ground truth.
//!
//! Everything else in this crate argues from structure; this module argues
//! from enumeration. It sweeps every connected base graph up to a vertex
//! bound, computes the shortest path graph for every endpoint pair, and
//! files one witness per isomorphism class. The resulting catalog answers
//! "is this small graph realizable at all?" with no theory in the loop,
//! which makes it the reference the classifier and synthesizer are checked
//! against. A battery of structural checks over the catalog closes the
//! other direction: every property the recognition logic relies on is
//! re-tested on the enumerated population.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::budget::WorkBudget;
use crate::classifier::{classify, Verdict};
use crate::cliques::maximal_cliques;
use crate::error::{Error, Result};
use crate::geodesics::{build_spg, SpgGraph, DEFAULT_MAX_PATHS};
use crate::graph::Graph;
use crate::holes::{shortest_induced_cycle, CycleFilter, Parity};
use crate::induced::{find_all_induced, find_induced, InducedWitness, Pattern};
use crate::io::GraphJson;
use crate::iso::{canonical_bits_from_masks, canonical_key, is_isomorphic, CanonKey, CANONICAL_MAX};
use crate::synthesis::{synthesize, verify_certificate, SynthesisMode};

/// Largest vertex count the exhaustive sweep accepts. The sweep walks all
/// 2^(n(n-1)/2) edge subsets, so the practical ceiling is low; this bound
/// also keeps the adjacency masks inside `u16`.
pub const SWEEP_MAX: usize = 10;

fn mask_neighbors(n: usize, mask: u64) -> [u16; CANONICAL_MAX] {
    let mut nb = [0u16; CANONICAL_MAX];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                nb[i] |= 1 << j;
                nb[j] |= 1 << i;
            }
            k += 1;
        }
    }
    nb
}

fn masks_connected(n: usize, nb: &[u16; CANONICAL_MAX]) -> bool {
    let all = if n >= 16 { u16::MAX } else { (1u16 << n) - 1 };
    let mut seen: u16 = 1;
    loop {
        let mut next = seen;
        let mut f = seen;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= nb[v];
        }
        if next == seen {
            return seen == all;
        }
        seen = next;
    }
}

fn mask_to_graph(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                g.add_edge(i, j).expect("mask indices are in range");
            }
            k += 1;
        }
    }
    g
}

fn graph_classes_inner(n: usize, connected_only: bool) -> Result<Vec<(CanonKey, Graph)>> {
    if n == 0 || n > SWEEP_MAX {
        return Err(Error::precondition(
            "graph sweep",
            format!("vertex count {n} outside the supported range 1..={SWEEP_MAX}"),
        ));
    }
    let bits = n * (n - 1) / 2;
    let total: u64 = 1 << bits;
    let keyed: Vec<(u64, CanonKey)> = (0..total)
        .into_par_iter()
        .filter_map(|mask| {
            let nb = mask_neighbors(n, mask);
            if connected_only && !masks_connected(n, &nb) {
                return None;
            }
            let key = CanonKey { n: n as u8, bits: canonical_bits_from_masks(n, &nb) };
            Some((mask, key))
        })
        .collect();
    // Keep the smallest edge mask per class; the parallel collect preserves
    // ascending mask order, so a plain first-wins insert does it.
    let mut first: BTreeMap<CanonKey, u64> = BTreeMap::new();
    for (mask, key) in keyed {
        first.entry(key).or_insert(mask);
    }
    Ok(first.into_iter().map(|(key, mask)| (key, mask_to_graph(n, mask))).collect())
}

/// One representative per isomorphism class of connected graphs on exactly
/// `n` vertices, sorted by canonical key. The representative is the member
/// with the lexicographically smallest edge encoding.
pub fn connected_graph_classes(n: usize) -> Result<Vec<(CanonKey, Graph)>> {
    graph_classes_inner(n, true)
}

/// Same as [`connected_graph_classes`] but without the connectivity filter.
pub fn graph_classes(n: usize) -> Result<Vec<(CanonKey, Graph)>> {
    graph_classes_inner(n, false)
}

/// A realization witness: the base graph and endpoint pair whose shortest
/// path graph lands in the catalog under the entry's key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub base: GraphJson,
    pub a: u32,
    pub b: u32,
}

/// Every shortest path graph generated by connected base graphs with at
/// most `bound` vertices, one witness per isomorphism class.
///
/// Witness choice is deterministic: bases are swept in canonical-key order
/// within each vertex count, endpoint pairs in lexicographic order, and the
/// first realization of a class wins. Extending a catalog in place
/// therefore produces exactly the same entries as a fresh sweep to the
/// larger bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpgCatalog {
    entries: BTreeMap<CanonKey, CatalogEntry>,
    bound: usize,
    cap: u64,
}

impl SpgCatalog {
    pub fn empty(cap: u64) -> Self {
        SpgCatalog { entries: BTreeMap::new(), bound: 0, cap }
    }

    /// Largest base-graph order that has been swept.
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Geodesic cap handed to every `build_spg` call during the sweep.
    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonKey, &CatalogEntry)> {
        self.entries.iter()
    }

    pub fn get(&self, key: &CanonKey) -> Option<&CatalogEntry> {
        self.entries.get(key)
    }

    pub fn contains_key(&self, key: &CanonKey) -> bool {
        self.entries.contains_key(key)
    }

    /// Look `h` up by isomorphism class. Graphs too large to canonicalize
    /// are necessarily absent, so they report `None` rather than an error.
    pub fn lookup(&self, h: &Graph) -> Result<Option<&CatalogEntry>> {
        if h.n() > CANONICAL_MAX {
            return Ok(None);
        }
        Ok(self.entries.get(&canonical_key(h)?))
    }

    /// Sweep the base orders `self.bound + 1 ..= new_bound` into the
    /// catalog. A `new_bound` at or below the current bound is a no-op.
    pub fn extend_to(&mut self, new_bound: usize) -> Result<()> {
        while self.bound < new_bound {
            let n = self.bound + 1;
            let classes = connected_graph_classes(n)?;
            let cap = self.cap;
            let found: Vec<Vec<(CanonKey, u32, u32)>> = classes
                .par_iter()
                .map(|(_, g)| -> Result<Vec<(CanonKey, u32, u32)>> {
                    let mut out = Vec::new();
                    for a in 0..n as u32 {
                        for b in a + 1..n as u32 {
                            let spg = build_spg(g, a, b, cap)?;
                            out.push((canonical_key(&spg.as_graph())?, a, b));
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<_>>()?;
            for ((_, g), pairs) in classes.iter().zip(found) {
                for (key, a, b) in pairs {
                    self.entries
                        .entry(key)
                        .or_insert_with(|| CatalogEntry { base: GraphJson::of(g), a, b });
                }
            }
            self.bound = n;
        }
        Ok(())
    }

    /// Plain-text serialization: two header lines, then one line per entry
    /// holding the canonical key, the witness order and endpoints, and the
    /// witness edge list.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# bound={}", self.bound).unwrap();
        writeln!(s, "# cap={}", self.cap).unwrap();
        for (key, e) in &self.entries {
            write!(s, "{} {} {} {}", key.to_hex(), e.base.n, e.a, e.b).unwrap();
            for (u, v) in &e.base.edges {
                write!(s, " {u}-{v}").unwrap();
            }
            writeln!(s).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<SpgCatalog> {
        let mut bound = None;
        let mut cap = DEFAULT_MAX_PATHS;
        let mut entries = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("bound=") {
                    bound = Some(v.parse::<usize>().map_err(|_| {
                        Error::Parse(format!("line {lineno}: bad bound value {v:?}"))
                    })?);
                } else if let Some(v) = rest.strip_prefix("cap=") {
                    cap = v.parse::<u64>().map_err(|_| {
                        Error::Parse(format!("line {lineno}: bad cap value {v:?}"))
                    })?;
                }
                continue;
            }
            let mut fields = line.split_whitespace();
            let mut next = |what: &str| {
                fields
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {lineno}: missing {what}")))
            };
            let key = CanonKey::from_hex(next("canonical key")?)
                .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
            let n: usize = next("witness order")?
                .parse()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad witness order")))?;
            let a: u32 = next("source endpoint")?
                .parse()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad source endpoint")))?;
            let b: u32 = next("target endpoint")?
                .parse()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad target endpoint")))?;
            let mut edges = Vec::new();
            for tok in fields {
                let (u, v) = tok
                    .split_once('-')
                    .ok_or_else(|| Error::Parse(format!("line {lineno}: bad edge {tok:?}")))?;
                let u: u32 = u
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {lineno}: bad edge {tok:?}")))?;
                let v: u32 = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {lineno}: bad edge {tok:?}")))?;
                edges.push((u, v));
            }
            let base = GraphJson { n, edges };
            // Reject records whose witness does not even form a graph; full
            // re-verification of the realization is the property suite's job.
            base.to_graph().map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
            if entries.insert(key, CatalogEntry { base, a, b }).is_some() {
                return Err(Error::Parse(format!("line {lineno}: duplicate catalog key")));
            }
        }
        let bound =
            bound.ok_or_else(|| Error::Parse("catalog text has no '# bound=' header".into()))?;
        Ok(SpgCatalog { entries, bound, cap })
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<SpgCatalog> {
        SpgCatalog::from_text(&std::fs::read_to_string(path)?)
    }
}

/// Build a catalog covering every connected base graph with at most
/// `bound` vertices.
pub fn exhaustive_search(bound: usize, cap: u64) -> Result<SpgCatalog> {
    let mut catalog = SpgCatalog::empty(cap);
    catalog.extend_to(bound)?;
    Ok(catalog)
}

/// Outcome of asking the catalog and the classifier about a candidate.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Refutation {
    /// The candidate is realizable; here is a base graph and endpoint pair.
    RealizedBy { base: GraphJson, a: u32, b: u32 },
    /// The candidate is provably not a shortest path graph.
    RefutedByForbiddenStructure { reason: String, witness: InducedWitness },
    /// Neither realized while sweeping bases up to `bound` vertices nor
    /// refuted; no verdict.
    AbsentFromCatalog { bound: usize },
}

/// Decide `h` against enumerated ground truth first and theory second.
pub fn refute(h: &Graph, catalog: &SpgCatalog, budget: &mut WorkBudget) -> Result<Refutation> {
    if let Some(e) = catalog.lookup(h)? {
        return Ok(Refutation::RealizedBy { base: e.base.clone(), a: e.a, b: e.b });
    }
    if let Verdict::NotSpg { reason, witness } = classify(h, budget)? {
        return Ok(Refutation::RefutedByForbiddenStructure { reason, witness });
    }
    Ok(Refutation::AbsentFromCatalog { bound: catalog.bound() })
}

/// Result of one structural check over the whole catalog. `status` is
/// `"pass"` or `"fail"`; failures carry a JSON witness that names the
/// offending entry and enough detail to replay the violation.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyFinding {
    pub check: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl PropertyFinding {
    fn pass(check: &str) -> Self {
        PropertyFinding { check: check.into(), status: "pass".into(), witness: None }
    }

    fn fail(check: &str, witness: serde_json::Value) -> Self {
        PropertyFinding { check: check.into(), status: "fail".into(), witness: Some(witness) }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

struct SuiteRow {
    key: CanonKey,
    entry: CatalogEntry,
    spg: SpgGraph,
    plain: Graph,
}

fn disjoint_union_plain(g1: &Graph, g2: &Graph) -> Graph {
    let mut g = Graph::new(g1.n() + g2.n());
    for (u, v) in g1.edges() {
        g.add_edge(u, v).expect("copied edge is in range");
    }
    let shift = g1.n() as u32;
    for (u, v) in g2.edges() {
        g.add_edge(u + shift, v + shift).expect("shifted edge is in range");
    }
    g
}

/// Append a pendant path at `b` so that the endpoint distance becomes
/// exactly `target`, returning the new far endpoint.
fn stretch_base(g: &Graph, a: u32, b: u32, target: usize) -> Result<(Graph, u32)> {
    let dist = g.bfs_distances(a)?[b as usize]
        .ok_or(Error::Unreachable { a, b })? as usize;
    assert!(target >= dist, "stretch target below current distance");
    let mut out = g.clone();
    let mut tail = b;
    for _ in dist..target {
        let fresh = out.add_vertex();
        out.add_edge(tail, fresh).expect("fresh vertex is in range");
        tail = fresh;
    }
    Ok((out, tail))
}

fn sorted_labels(spg: &SpgGraph) -> Vec<u32> {
    let mut labels: Vec<u32> = spg.edges.iter().map(|&(_, _, l)| l).collect();
    labels.sort_unstable();
    labels
}

type CheckFn<'a> = &'a dyn Fn(&[SuiteRow], &mut WorkBudget) -> Result<Option<serde_json::Value>>;

/// Re-test every structural fact the recognition logic leans on, over the
/// enumerated catalog population. Returns one finding per check; a check
/// stops at its first violation and reports it as the witness.
///
/// `seed` drives the randomized closure checks (pairs of entries fed to the
/// union construction), so runs are reproducible.
pub fn property_suite(
    catalog: &SpgCatalog,
    seed: u64,
    budget: &mut WorkBudget,
) -> Result<Vec<PropertyFinding>> {
    let mut rows = Vec::new();
    for (key, entry) in catalog.iter() {
        let base = entry.base.to_graph()?;
        let spg = build_spg(&base, entry.a, entry.b, catalog.cap())?;
        let plain = spg.as_graph();
        rows.push(SuiteRow { key: *key, entry: entry.clone(), spg, plain });
    }

    let recomputation_matches = |rows: &[SuiteRow], _: &mut WorkBudget| {
        for row in rows {
            let got = canonical_key(&row.plain)?;
            if got != row.key {
                return Ok(Some(json!({
                    "entry": row.key.to_hex(),
                    "recomputed": got.to_hex(),
                })));
            }
        }
        Ok(None)
    };

    // Reading the endpoint pair in the other direction reverses every
    // geodesic, so the result is the same graph with mirrored indices.
    let endpoint_order_is_cosmetic = |rows: &[SuiteRow], _: &mut WorkBudget| {
        for row in rows {
            let base = row.entry.base.to_graph()?;
            let rev = build_spg(&base, row.entry.b, row.entry.a, DEFAULT_MAX_PATHS)?;
            let dist = row.spg.distance() as u32;
            let mut mirrored: Vec<u32> =
                rev.edges.iter().map(|&(_, _, l)| dist - l).collect();
            mirrored.sort_unstable();
            if rev.order() != row.spg.order()
                || is_isomorphic(&rev.as_graph(), &row.plain).is_none()
                || mirrored != sorted_labels(&row.spg)
            {
                return Ok(Some(json!({ "entry": row.key.to_hex() })));
            }
        }
        Ok(None)
    };

    let no_induced = |pattern: Pattern| {
        move |rows: &[SuiteRow], budget: &mut WorkBudget| {
            for row in rows {
                if let Some(w) = find_induced(&row.plain, pattern, budget)? {
                    return Ok(Some(json!({
                        "entry": row.key.to_hex(),
                        "witness": w,
                    })));
                }
            }
            Ok(None)
        }
    };
    let no_c5 = no_induced(Pattern::C5);
    let no_k23 = no_induced(Pattern::K23);
    let no_k4_minus_e = no_induced(Pattern::K4MinusE);

    // Around any claw, some vertex completes two of the claw's edges to an
    // induced four-cycle: adjacent to two leaves, missing the center.
    let claws_force_squares = |rows: &[SuiteRow], budget: &mut WorkBudget| {
        for row in rows {
            'claw: for w in find_all_induced(&row.plain, Pattern::Claw, budget)? {
                let center = w.vertices[0];
                let leaves = [w.vertices[1], w.vertices[2], w.vertices[3]];
                for t in 0..row.plain.n() as u32 {
                    if t == center || leaves.contains(&t) || row.plain.has_edge(t, center) {
                        continue;
                    }
                    let hits =
                        leaves.iter().filter(|&&l| row.plain.has_edge(t, l)).count();
                    if hits >= 2 {
                        continue 'claw;
                    }
                }
                return Ok(Some(json!({
                    "entry": row.key.to_hex(),
                    "claw": w.vertices,
                })));
            }
        }
        Ok(None)
    };

    // Odd chordless cycles of length five or more never occur without an
    // induced four-cycle alongside them.
    let odd_holes_need_squares = |rows: &[SuiteRow], budget: &mut WorkBudget| {
        for row in rows {
            if find_induced(&row.plain, Pattern::C4, budget)?.is_some() {
                continue;
            }
            let filter = CycleFilter::at_least(5).parity(Parity::Odd);
            if let Some(hole) = shortest_induced_cycle(&row.plain, &filter, budget)? {
                return Ok(Some(json!({
                    "entry": row.key.to_hex(),
                    "hole": hole.vertices,
                })));
            }
        }
        Ok(None)
    };

    // All edges inside one maximal clique carry the same difference index.
    let one_index_per_clique = |rows: &[SuiteRow], _: &mut WorkBudget| {
        for row in rows {
            for clique in maximal_cliques(&row.plain) {
                let mut label = None;
                for i in 0..clique.len() {
                    for j in i + 1..clique.len() {
                        let l = row.spg.edge_label(clique[i], clique[j]);
                        if label.is_none() {
                            label = l;
                        } else if l != label {
                            return Ok(Some(json!({
                                "entry": row.key.to_hex(),
                                "clique": clique,
                            })));
                        }
                    }
                }
            }
        }
        Ok(None)
    };

    // Maximal cliques meeting at a vertex use distinct difference indices,
    // and two maximal cliques never share two vertices.
    let meeting_cliques_use_distinct_indices = |rows: &[SuiteRow], _: &mut WorkBudget| {
        for row in rows {
            let cliques = maximal_cliques(&row.plain);
            for i in 0..cliques.len() {
                for j in i + 1..cliques.len() {
                    let shared = crate::cliques::intersection(&cliques[i], &cliques[j]);
                    if shared.len() >= 2 {
                        return Ok(Some(json!({
                            "entry": row.key.to_hex(),
                            "cliques": [&cliques[i], &cliques[j]],
                            "shared": shared,
                        })));
                    }
                    if shared.len() == 1 && cliques[i].len() >= 2 && cliques[j].len() >= 2 {
                        let li = row.spg.edge_label(cliques[i][0], cliques[i][1]);
                        let lj = row.spg.edge_label(cliques[j][0], cliques[j][1]);
                        if li == lj {
                            return Ok(Some(json!({
                                "entry": row.key.to_hex(),
                                "cliques": [&cliques[i], &cliques[j]],
                                "index": li,
                            })));
                        }
                    }
                }
            }
        }
        Ok(None)
    };

    // A vertex outside a maximal clique sees at most one of its members.
    let one_neighbor_into_a_clique = |rows: &[SuiteRow], _: &mut WorkBudget| {
        for row in rows {
            for clique in maximal_cliques(&row.plain) {
                for u in 0..row.plain.n() as u32 {
                    if clique.contains(&u) {
                        continue;
                    }
                    let hits = clique.iter().filter(|&&v| row.plain.has_edge(u, v)).count();
                    if hits > 1 {
                        return Ok(Some(json!({
                            "entry": row.key.to_hex(),
                            "vertex": u,
                            "clique": clique,
                        })));
                    }
                }
            }
        }
        Ok(None)
    };

    // Edges between two disjoint maximal cliques always form a matching.
    let disjoint_cliques_cross_by_matching = |rows: &[SuiteRow], _: &mut WorkBudget| {
        for row in rows {
            let cliques = maximal_cliques(&row.plain);
            for i in 0..cliques.len() {
                for j in i + 1..cliques.len() {
                    if !crate::cliques::intersection(&cliques[i], &cliques[j]).is_empty() {
                        continue;
                    }
                    let mut used_j = Vec::new();
                    for &u in &cliques[i] {
                        let hits: Vec<u32> = cliques[j]
                            .iter()
                            .copied()
                            .filter(|&v| row.plain.has_edge(u, v))
                            .collect();
                        if hits.len() > 1 || hits.iter().any(|v| used_j.contains(v)) {
                            return Ok(Some(json!({
                                "entry": row.key.to_hex(),
                                "cliques": [&cliques[i], &cliques[j]],
                            })));
                        }
                        used_j.extend(hits);
                    }
                }
            }
        }
        Ok(None)
    };

    // Non-adjacent vertices share at most two neighbors, and sharing two
    // forces the four vertices to induce a four-cycle.
    let common_neighborhoods_stay_small = |rows: &[SuiteRow], _: &mut WorkBudget| {
        for row in rows {
            let n = row.plain.n() as u32;
            for u in 0..n {
                for w in u + 1..n {
                    if row.plain.has_edge(u, w) {
                        continue;
                    }
                    let common: Vec<u32> = (0..n)
                        .filter(|&t| row.plain.has_edge(u, t) && row.plain.has_edge(w, t))
                        .collect();
                    if common.len() > 2
                        || (common.len() == 2 && row.plain.has_edge(common[0], common[1]))
                    {
                        return Ok(Some(json!({
                            "entry": row.key.to_hex(),
                            "pair": [u, w],
                            "common": common,
                        })));
                    }
                }
            }
        }
        Ok(None)
    };

    // No vertex has exactly two neighbors inside a triangle.
    let triangles_admit_no_half_attachments = |rows: &[SuiteRow], _: &mut WorkBudget| {
        for row in rows {
            let n = row.plain.n() as u32;
            for u in 0..n {
                for v in u + 1..n {
                    if !row.plain.has_edge(u, v) {
                        continue;
                    }
                    for w in v + 1..n {
                        if !row.plain.has_edge(u, w) || !row.plain.has_edge(v, w) {
                            continue;
                        }
                        for t in 0..n {
                            if t == u || t == v || t == w {
                                continue;
                            }
                            let hits = [u, v, w]
                                .iter()
                                .filter(|&&x| row.plain.has_edge(t, x))
                                .count();
                            if hits == 2 {
                                return Ok(Some(json!({
                                    "entry": row.key.to_hex(),
                                    "triangle": [u, v, w],
                                    "vertex": t,
                                })));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    };

    // Difference indices around an induced four-cycle alternate between
    // exactly two values.
    let square_indices_alternate = |rows: &[SuiteRow], budget: &mut WorkBudget| {
        for row in rows {
            for w in find_all_induced(&row.plain, Pattern::C4, budget)? {
                let v = &w.vertices;
                let ring = [
                    row.spg.edge_label(v[0], v[1]),
                    row.spg.edge_label(v[1], v[2]),
                    row.spg.edge_label(v[2], v[3]),
                    row.spg.edge_label(v[3], v[0]),
                ];
                let ok = ring.iter().all(|l| l.is_some())
                    && ring[0] == ring[2]
                    && ring[1] == ring[3]
                    && ring[0] != ring[1];
                if !ok {
                    return Ok(Some(json!({
                        "entry": row.key.to_hex(),
                        "square": v,
                        "indices": ring,
                    })));
                }
            }
        }
        Ok(None)
    };

    // Lengthening the endpoint distance with a pendant path changes none of
    // the shortest path structure: same graph, same index multiset.
    let stretching_preserves_the_result = |rows: &[SuiteRow], _: &mut WorkBudget| {
        for row in rows {
            let base = row.entry.base.to_graph()?;
            let target = row.spg.distance() + 2;
            let (longer, far) = stretch_base(&base, row.entry.a, row.entry.b, target)?;
            let again = build_spg(&longer, row.entry.a, far, DEFAULT_MAX_PATHS)?;
            if again.order() != row.spg.order()
                || is_isomorphic(&again.as_graph(), &row.plain).is_none()
                || sorted_labels(&again) != sorted_labels(&row.spg)
            {
                return Ok(Some(json!({ "entry": row.key.to_hex() })));
            }
        }
        Ok(None)
    };

    // Joining two witnesses at shared endpoints (after stretching both to a
    // common distance of at least three) realizes the disjoint union.
    let unions_realize_disjoint_sums = |rows: &[SuiteRow], _: &mut WorkBudget| {
        if rows.is_empty() {
            return Ok(None);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let i = rng.gen_range(0..rows.len());
            let j = rng.gen_range(0..rows.len());
            let (r1, r2) = (&rows[i], &rows[j]);
            let d = r1.spg.distance().max(r2.spg.distance()).max(3);
            let g1 = r1.entry.base.to_graph()?;
            let g2 = r2.entry.base.to_graph()?;
            let (g1, far1) = stretch_base(&g1, r1.entry.a, r1.entry.b, d)?;
            let (g2, far2) = stretch_base(&g2, r2.entry.a, r2.entry.b, d)?;
            // Glue the two bases at both endpoints: relabel the second so
            // its endpoints coincide with the first's.
            let shift = g1.n() as u32;
            let mut merged = g1.clone();
            let mut map = vec![0u32; g2.n()];
            let mut fresh = shift;
            for v in 0..g2.n() as u32 {
                map[v as usize] = if v == r2.entry.a {
                    r1.entry.a
                } else if v == far2 {
                    far1
                } else {
                    let id = fresh;
                    fresh += 1;
                    id
                };
            }
            for _ in g1.n()..g1.n() + g2.n() - 2 {
                merged.add_vertex();
            }
            for (u, v) in g2.edges() {
                merged.add_edge(map[u as usize], map[v as usize])?;
            }
            let joint = build_spg(&merged, r1.entry.a, far1, DEFAULT_MAX_PATHS)?;
            let expected = disjoint_union_plain(&r1.plain, &r2.plain);
            if is_isomorphic(&joint.as_graph(), &expected).is_none() {
                return Ok(Some(json!({
                    "entries": [r1.key.to_hex(), r2.key.to_hex()],
                })));
            }
        }
        Ok(None)
    };

    // The classifier must never refute a graph the sweep realized, and must
    // affirm every realized graph in its decidable range.
    let classification_accepts_the_catalog = |rows: &[SuiteRow], budget: &mut WorkBudget| {
        for row in rows {
            let h = row.key.to_graph();
            match classify(&h, budget)? {
                Verdict::NotSpg { reason, .. } => {
                    return Ok(Some(json!({
                        "entry": row.key.to_hex(),
                        "reason": reason,
                    })));
                }
                Verdict::UnknownContainsC4 { .. } | Verdict::SpgByTheorem { .. } => {}
            }
            if find_induced(&h, Pattern::C4, budget)?.is_none()
                && !classify(&h, budget)?.is_spg_by_theorem()
            {
                return Ok(Some(json!({
                    "entry": row.key.to_hex(),
                    "problem": "square-free catalog entry not affirmed",
                })));
            }
        }
        Ok(None)
    };

    // Census agreement on every graph (connected or not) up to the largest
    // square-free catalog order: affirmed graphs must be realizable, either
    // already cataloged or by synthesizing a base; refuted graphs must be
    // absent from the catalog.
    let catalog_ref = catalog;
    let census_agrees_below_the_bound = move |rows: &[SuiteRow], budget: &mut WorkBudget| {
        let mut m = 0;
        for row in rows {
            if find_induced(&row.plain, Pattern::C4, budget)?.is_none() {
                m = m.max(row.plain.n());
            }
        }
        for n in 1..=m {
            for (key, g) in graph_classes(n)? {
                let cataloged = catalog_ref.contains_key(&key);
                match classify(&g, budget)? {
                    Verdict::SpgByTheorem { .. } => {
                        if !cataloged {
                            let cert = synthesize(&g, SynthesisMode::Fast, budget)?;
                            let check = verify_certificate(&g, &cert, DEFAULT_MAX_PATHS)?;
                            if !check.passed {
                                return Ok(Some(json!({
                                    "graph": key.to_hex(),
                                    "problem": "affirmed, uncataloged, and synthesis failed",
                                    "failures": check.failures,
                                })));
                            }
                        }
                    }
                    Verdict::NotSpg { reason, .. } => {
                        if cataloged {
                            return Ok(Some(json!({
                                "graph": key.to_hex(),
                                "problem": "refuted graph appears in the catalog",
                                "reason": reason,
                            })));
                        }
                    }
                    Verdict::UnknownContainsC4 { .. } => {}
                }
            }
        }
        Ok(None)
    };

    let checks: Vec<(&str, CheckFn)> = vec![
        ("catalog_keys_match_recomputation", &recomputation_matches),
        ("endpoint_order_is_cosmetic", &endpoint_order_is_cosmetic),
        ("no_induced_five_cycle", &no_c5),
        ("no_induced_k23", &no_k23),
        ("no_induced_k4_minus_edge", &no_k4_minus_e),
        ("claws_force_squares", &claws_force_squares),
        ("odd_holes_need_squares", &odd_holes_need_squares),
        ("one_index_per_maximal_clique", &one_index_per_clique),
        ("meeting_cliques_use_distinct_indices", &meeting_cliques_use_distinct_indices),
        ("one_neighbor_into_a_clique", &one_neighbor_into_a_clique),
        ("disjoint_cliques_cross_by_matching", &disjoint_cliques_cross_by_matching),
        ("common_neighborhoods_stay_small", &common_neighborhoods_stay_small),
        ("triangles_admit_no_half_attachments", &triangles_admit_no_half_attachments),
        ("square_indices_alternate", &square_indices_alternate),
        ("stretching_preserves_the_result", &stretching_preserves_the_result),
        ("unions_realize_disjoint_sums", &unions_realize_disjoint_sums),
        ("classification_accepts_the_catalog", &classification_accepts_the_catalog),
        ("census_agrees_below_the_bound", &census_agrees_below_the_bound),
    ];

    let mut findings = Vec::new();
    for (name, check) in checks {
        match check(&rows, budget)? {
            None => findings.push(PropertyFinding::pass(name)),
            Some(witness) => findings.push(PropertyFinding::fail(name, witness)),
        }
    }
    Ok(findings)
}
