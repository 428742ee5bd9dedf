//! The acceptance gate: eight end-to-end criteria, each printing one
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines on success; they are always shown on failure.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spg_core::budget::WorkBudget;
use spg_core::classifier::{classify, is_collection_of_cliques, Verdict};
use spg_core::corpus::seeded_collections;
use spg_core::error::Error;
use spg_core::geodesics::{build_spg, DEFAULT_MAX_PATHS};
use spg_core::graph::Graph;
use spg_core::holes::{shortest_induced_cycle, CycleFilter, Parity};
use spg_core::induced::{find_all_induced, find_induced, Pattern};
use spg_core::iso::{canonical_key, is_isomorphic};
use spg_core::oracle::{exhaustive_search, property_suite, refute, Refutation, SpgCatalog};
use spg_core::synthesis::{synthesize, verify_certificate, BaseGraphState, SynthesisMode};

struct Gate {
    results: Vec<(String, bool, Duration, String)>,
    inconsistencies: u32,
}

impl Gate {
    fn new() -> Self {
        Gate { results: Vec::new(), inconsistencies: 0 }
    }

    fn run(
        &mut self,
        name: &str,
        limit: Duration,
        body: impl FnOnce(&mut u32) -> Result<String, String>,
    ) {
        let start = Instant::now();
        let outcome = body(&mut self.inconsistencies);
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(detail) if took <= limit => (true, detail),
            Ok(detail) => (false, format!("{detail}; exceeded {limit:?} time limit")),
            Err(why) => (false, why),
        };
        self.results.push((name.to_string(), ok, took, detail));
    }

    fn finish(self) {
        let mut all_ok = true;
        for (name, ok, took, detail) in &self.results {
            let status = if *ok { "PASS" } else { "FAIL" };
            println!("{status} {name} ({took:.2?}) {detail}");
            all_ok &= ok;
        }
        assert!(all_ok, "at least one acceptance criterion failed");
    }
}

/// Errors that matter for the conjecture monitor are counted, everything
/// else is surfaced as a criterion failure.
fn note_inconsistency(e: &Error, counter: &mut u32) {
    if matches!(e, Error::InternalInconsistency(_)) {
        *counter += 1;
    }
}

fn complete_gadgets(_: &mut u32) -> Result<String, String> {
    for n in 1..=6u32 {
        let state = BaseGraphState::complete(n, true).map_err(|e| e.to_string())?;
        let spg = build_spg(state.graph(), state.a(), state.b(), DEFAULT_MAX_PATHS)
            .map_err(|e| format!("gadget {n} failed to recompute: {e}"))?;
        if spg.order() != n as usize {
            return Err(format!("gadget {n} has {} geodesics", spg.order()));
        }
        let expected = (n as usize) * (n as usize - 1) / 2;
        if spg.edges.len() != expected {
            return Err(format!("gadget {n} recomputed with {} edges", spg.edges.len()));
        }
        let mut labels: Vec<u32> = spg.edges.iter().map(|&(_, _, l)| l).collect();
        labels.dedup();
        if labels.len() > 1 {
            return Err(format!("gadget {n} uses several difference indices: {labels:?}"));
        }
    }
    Ok("complete graphs K1..K6 realized with one difference index".into())
}

fn forward_classification(
    catalog: &SpgCatalog,
    counter: &mut u32,
) -> Result<String, String> {
    let mut budget = WorkBudget::unlimited();
    let mut square_free = 0;
    for (key, _) in catalog.iter() {
        let h = key.to_graph();
        if find_induced(&h, Pattern::C4, &mut budget)
            .map_err(|e| e.to_string())?
            .is_some()
        {
            continue;
        }
        square_free += 1;
        match is_collection_of_cliques(&h, &mut budget) {
            Ok(Ok(_)) => {}
            Ok(Err(failure)) => {
                return Err(format!(
                    "entry {} is not a collection of cliques: {failure:?}",
                    key.to_hex()
                ));
            }
            Err(e) => {
                note_inconsistency(&e, counter);
                return Err(format!("entry {}: {e}", key.to_hex()));
            }
        }
        let filter = CycleFilter::at_least(5).parity(Parity::Odd);
        match shortest_induced_cycle(&h, &filter, &mut budget) {
            Ok(None) => {}
            Ok(Some(hole)) => {
                return Err(format!(
                    "entry {} has an odd hole {:?}",
                    key.to_hex(),
                    hole.vertices
                ));
            }
            Err(e) => {
                note_inconsistency(&e, counter);
                return Err(format!("entry {}: {e}", key.to_hex()));
            }
        }
    }
    Ok(format!(
        "all {square_free} square-free entries of {} are collections of cliques without odd holes",
        catalog.len()
    ))
}

fn backward_classification(counter: &mut u32) -> Result<String, String> {
    let batch = seeded_collections(0x5EED, 220, 12);
    let mut budget = WorkBudget::unlimited();
    for (i, h) in batch.iter().enumerate() {
        match classify(h, &mut budget) {
            Ok(v) if v.is_spg_by_theorem() => {}
            Ok(v) => return Err(format!("instance {i} not affirmed: {v:?}")),
            Err(e) => {
                note_inconsistency(&e, counter);
                return Err(format!("instance {i}: {e}"));
            }
        }
        let cert = match synthesize(h, SynthesisMode::Fast, &mut budget) {
            Ok(cert) => cert,
            Err(e) => {
                note_inconsistency(&e, counter);
                return Err(format!("instance {i} failed to synthesize: {e}"));
            }
        };
        if cert.index_levels != 2 {
            return Err(format!(
                "instance {i} used {} difference indices",
                cert.index_levels
            ));
        }
        let check = verify_certificate(h, &cert, DEFAULT_MAX_PATHS)
            .map_err(|e| format!("instance {i} verification errored: {e}"))?;
        if !check.passed {
            return Err(format!("instance {i} failed verification: {:?}", check.failures));
        }
    }
    Ok(format!("{} generated collections classified, synthesized, verified", batch.len()))
}

fn forbidden_battery(catalog: &SpgCatalog) -> Result<String, String> {
    let mut budget = WorkBudget::unlimited();
    for (key, _) in catalog.iter() {
        let h = key.to_graph();
        for pattern in [Pattern::C5, Pattern::K4MinusE, Pattern::K23] {
            if let Some(w) =
                find_induced(&h, pattern, &mut budget).map_err(|e| e.to_string())?
            {
                return Err(format!(
                    "entry {} contains {}: {:?}",
                    key.to_hex(),
                    pattern.name(),
                    w.vertices
                ));
            }
        }
        for claw in
            find_all_induced(&h, Pattern::Claw, &mut budget).map_err(|e| e.to_string())?
        {
            let center = claw.vertices[0];
            let leaves = [claw.vertices[1], claw.vertices[2], claw.vertices[3]];
            let completed = (0..h.n() as u32).any(|t| {
                t != center
                    && !leaves.contains(&t)
                    && !h.has_edge(t, center)
                    && leaves.iter().filter(|&&l| h.has_edge(t, l)).count() >= 2
            });
            if !completed {
                return Err(format!(
                    "entry {}: claw {:?} has no accompanying square",
                    key.to_hex(),
                    claw.vertices
                ));
            }
        }
        let filter = CycleFilter::at_least(7).parity(Parity::Odd);
        if shortest_induced_cycle(&h, &filter, &mut budget)
            .map_err(|e| e.to_string())?
            .is_some()
            && find_induced(&h, Pattern::C4, &mut budget)
                .map_err(|e| e.to_string())?
                .is_none()
        {
            return Err(format!(
                "entry {} has a long odd hole but no square",
                key.to_hex()
            ));
        }
    }
    Ok(format!("no forbidden structure in any of {} entries", catalog.len()))
}

fn structural_suite(catalog: &SpgCatalog) -> Result<String, String> {
    let mut budget = WorkBudget::unlimited();
    let findings = property_suite(catalog, 0xACCE, &mut budget).map_err(|e| e.to_string())?;
    let failed: Vec<String> = findings
        .iter()
        .filter(|f| !f.passed())
        .map(|f| format!("{}: {:?}", f.check, f.witness))
        .collect();
    if failed.is_empty() {
        Ok(format!("all {} structural checks hold over the catalog", findings.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn sparse_spot_check(catalog: &SpgCatalog) -> Result<String, String> {
    let mut budget = WorkBudget::unlimited();

    // The four-cycle sits outside the certified synthesis range, so its
    // realization is witnessed by the enumerated catalog instead.
    let square = Graph::cycle(4);
    match refute(&square, catalog, &mut budget).map_err(|e| e.to_string())? {
        Refutation::RealizedBy { base, a, b } => {
            let g = base.to_graph().map_err(|e| e.to_string())?;
            let spg = build_spg(&g, a, b, DEFAULT_MAX_PATHS).map_err(|e| e.to_string())?;
            if is_isomorphic(&spg.as_graph(), &square).is_none() {
                return Err("catalog witness for the four-cycle does not recompute".into());
            }
        }
        other => return Err(format!("four-cycle not realized: {other:?}")),
    }

    let mut targets: Vec<(String, Graph)> = vec![
        ("C6".into(), Graph::cycle(6)),
        ("C8".into(), Graph::cycle(8)),
    ];
    for k in 1..=6 {
        targets.push((format!("P{k}"), Graph::path(k)));
    }
    for (name, h) in &targets {
        let cert = synthesize(h, SynthesisMode::Strict, &mut budget)
            .map_err(|e| format!("{name} failed to synthesize: {e}"))?;
        let check = verify_certificate(h, &cert, DEFAULT_MAX_PATHS)
            .map_err(|e| format!("{name} verification errored: {e}"))?;
        if !check.passed {
            return Err(format!("{name} failed verification: {:?}", check.failures));
        }
    }

    for (name, h) in [("C5", Graph::cycle(5)), ("C7", Graph::cycle(7))] {
        match classify(&h, &mut budget).map_err(|e| e.to_string())? {
            Verdict::NotSpg { .. } => {}
            other => return Err(format!("{name} not refuted: {other:?}")),
        }
        if catalog.lookup(&h).map_err(|e| e.to_string())?.is_some() {
            return Err(format!("{name} appears in the catalog"));
        }
    }
    Ok("even cycles and paths realize; C5 and C7 refuted and absent".into())
}

/// Append a pendant path at `b` so the endpoint distance becomes `target`.
fn stretched(g: &Graph, a: u32, b: u32, target: usize) -> (Graph, u32) {
    let dist = g.bfs_distances(a).expect("endpoint in range")[b as usize]
        .expect("catalog witnesses are connected") as usize;
    let mut out = g.clone();
    let mut tail = b;
    for _ in dist..target.max(dist) {
        let fresh = out.add_vertex();
        out.add_edge(tail, fresh).expect("fresh vertex in range");
        tail = fresh;
    }
    (out, tail)
}

fn plain_union(g1: &Graph, g2: &Graph) -> Graph {
    let mut g = Graph::new(g1.n() + g2.n());
    for (u, v) in g1.edges() {
        g.add_edge(u, v).expect("copied edge in range");
    }
    let shift = g1.n() as u32;
    for (u, v) in g2.edges() {
        g.add_edge(u + shift, v + shift).expect("shifted edge in range");
    }
    g
}

fn invariance_ops(catalog: &SpgCatalog) -> Result<String, String> {
    let entries: Vec<_> = catalog.iter().collect();
    if entries.is_empty() {
        return Err("catalog is empty".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x17AB);

    // Distance extension: adding a pendant path past one endpoint never
    // changes the computed graph.
    for trial in 0..50 {
        let (key, e) = entries[rng.gen_range(0..entries.len())];
        let g = e.base.to_graph().map_err(|err| err.to_string())?;
        let dist = g.bfs_distances(e.a).expect("endpoint in range")[e.b as usize]
            .expect("witness endpoints connected") as usize;
        let extra = rng.gen_range(1..=3);
        let (longer, far) = stretched(&g, e.a, e.b, dist + extra);
        let again = build_spg(&longer, e.a, far, DEFAULT_MAX_PATHS)
            .map_err(|err| format!("extension trial {trial}: {err}"))?;
        if canonical_key(&again.as_graph()).map_err(|err| err.to_string())? != *key {
            return Err(format!(
                "extension trial {trial}: entry {} changed under a pendant path",
                key.to_hex()
            ));
        }
    }

    // Endpoint gluing: joining two witness bases at shared endpoints
    // (distances equalized to at least three) realizes the disjoint union.
    for trial in 0..50 {
        let (key1, e1) = entries[rng.gen_range(0..entries.len())];
        let (key2, e2) = entries[rng.gen_range(0..entries.len())];
        let g1 = e1.base.to_graph().map_err(|err| err.to_string())?;
        let g2 = e2.base.to_graph().map_err(|err| err.to_string())?;
        let d1 = g1.bfs_distances(e1.a).expect("endpoint in range")[e1.b as usize]
            .expect("witness endpoints connected") as usize;
        let d2 = g2.bfs_distances(e2.a).expect("endpoint in range")[e2.b as usize]
            .expect("witness endpoints connected") as usize;
        let d = d1.max(d2).max(3);
        let (g1, far1) = stretched(&g1, e1.a, e1.b, d);
        let (g2, far2) = stretched(&g2, e2.a, e2.b, d);
        let mut merged = g1.clone();
        let mut fresh = g1.n() as u32;
        let mut map = vec![0u32; g2.n()];
        for v in 0..g2.n() as u32 {
            map[v as usize] = if v == e2.a {
                e1.a
            } else if v == far2 {
                far1
            } else {
                let id = fresh;
                fresh += 1;
                id
            };
        }
        for _ in 0..g2.n() - 2 {
            merged.add_vertex();
        }
        for (u, v) in g2.edges() {
            merged
                .add_edge(map[u as usize], map[v as usize])
                .map_err(|err| err.to_string())?;
        }
        let joint = build_spg(&merged, e1.a, far1, DEFAULT_MAX_PATHS)
            .map_err(|err| format!("union trial {trial}: {err}"))?;
        let expected = plain_union(&key1.to_graph(), &key2.to_graph());
        if is_isomorphic(&joint.as_graph(), &expected).is_none() {
            return Err(format!(
                "union trial {trial}: gluing {} and {} missed their disjoint union",
                key1.to_hex(),
                key2.to_hex()
            ));
        }
    }

    Ok("50 distance extensions and 50 endpoint gluings hold up to isomorphism".into())
}

#[test]
fn acceptance_gate() {
    let mut gate = Gate::new();

    gate.run("1 gadget correctness", Duration::from_secs(1), |c| complete_gadgets(c));

    let sweep_start = Instant::now();
    let catalog = exhaustive_search(7, DEFAULT_MAX_PATHS).expect("the sweep runs");
    let sweep_time = sweep_start.elapsed();

    gate.run(
        "2 classification forward",
        Duration::from_secs(600).saturating_sub(sweep_time),
        |c| {
            forward_classification(&catalog, c)
                .map(|msg| format!("{msg} (sweep took {sweep_time:.2?})"))
        },
    );

    gate.run("3 classification backward", Duration::from_secs(120), |c| {
        backward_classification(c)
    });

    gate.run("4 forbidden battery", Duration::from_secs(600), |_| {
        forbidden_battery(&catalog)
    });

    gate.run("5 structural suite", Duration::from_secs(600), |_| {
        structural_suite(&catalog)
    });

    gate.run("6 sparse spot check", Duration::from_secs(600), |_| {
        sparse_spot_check(&catalog)
    });

    gate.run("7 invariance ops", Duration::from_secs(600), |_| invariance_ops(&catalog));

    let inconsistencies = gate.inconsistencies;
    gate.run("8 conjecture monitor", Duration::from_secs(1), move |_| {
        if inconsistencies == 0 {
            Ok("zero internal inconsistencies across criteria 2 and 3".into())
        } else {
            Err(format!("{inconsistencies} internal inconsistencies observed"))
        }
    });

    gate.finish();
}
