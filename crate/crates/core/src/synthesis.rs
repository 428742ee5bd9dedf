//! Certified construction of base graphs whose shortest path graph is a
//! requested target.
//!
//! The builder keeps a base graph together with the full bookkeeping of its
//! geodesics: which base vertex is still unique to which geodesic, and the
//! labeled adjacency the geodesics induce. Every operation states its
//! preconditions, mutates the base graph, and updates the bookkeeping to
//! what the operation promises the new shortest path graph to be. In strict
//! mode the promise is checked after every step by recomputing the whole
//! thing from scratch; `synthesize` always performs that recomputation once
//! at the end before it emits a certificate.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::budget::WorkBudget;
use crate::classifier::{classify, Verdict};
use crate::cliques::{intersection, maximal_cliques};
use crate::error::{Error, Result};
use crate::geodesics::{build_spg, diff_indices, unique_vertex_geodesic, Geodesic, DEFAULT_MAX_PATHS};
use crate::graph::Graph;
use crate::holes::{shortest_induced_cycle, CycleFilter};
use crate::io::GraphJson;

/// Whether every mutation re-derives the shortest path graph and compares
/// it against the tracked one. Strict is slow and paranoid; fast trusts the
/// per-operation bookkeeping and only checks once at the very end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthesisMode {
    Strict,
    Fast,
}

/// One step of a construction, in replayable form.
///
/// A log is a program for a small stack machine: `complete` pushes a fresh
/// state, `disjoint_union` pops two and pushes their merge, and every other
/// step mutates the state on top of the stack.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum SynthStep {
    Complete { n: u32 },
    AttachClique { target: u32, size: u32 },
    LinkCliques { clique_u: Vec<u32>, clique_w: Vec<u32> },
    AttachCliquePair { u: u32, w: u32, size_at_u: u32, size_at_w: u32 },
    AttachBridgingClique { u: u32, w: u32, size: u32 },
    ExtendDistance { distance: u32 },
    DisjointUnion,
}

/// A base graph under construction, with its shortest path graph tracked
/// incrementally.
///
/// `geodesic_of[t]` is the geodesic realizing target vertex `t`,
/// `unique_vertex_of` records, per target, one base vertex that lies on no
/// other geodesic (entries are dropped conservatively once an operation
/// shares them), and `spg_edges` is the labeled adjacency `(t1, t2, level)`
/// with `t1 < t2`.
#[derive(Debug, Clone)]
pub struct BaseGraphState {
    graph: Graph,
    a: u32,
    b: u32,
    geodesic_of: Vec<Geodesic>,
    unique_vertex_of: BTreeMap<u32, u32>,
    spg_edges: BTreeSet<(u32, u32, u32)>,
    strict: bool,
    log: Vec<SynthStep>,
}

fn pair(t1: u32, t2: u32) -> (u32, u32) {
    (t1.min(t2), t1.max(t2))
}

impl BaseGraphState {
    /// Seed state: a base whose shortest path graph is the complete graph
    /// on `n` vertices, all edges labeled 1.
    ///
    /// The base is two endpoints at distance three, `n` interior vertices
    /// adjacent to the source side, and one shared vertex funnelling them
    /// all to the target side. Geodesic `i` runs through interior vertex
    /// `i + 1`, which is unique to it; the funnel vertex is shared by all.
    pub fn complete(n: u32, strict: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::precondition(
                "complete",
                "a shortest path graph has at least one vertex",
            ));
        }
        let a = 0u32;
        let funnel = n + 1;
        let b = n + 2;
        let mut graph = Graph::new(n as usize + 3);
        for i in 1..=n {
            graph.add_edge(a, i)?;
            graph.add_edge(i, funnel)?;
        }
        graph.add_edge(funnel, b)?;
        let mut state = BaseGraphState {
            graph,
            a,
            b,
            geodesic_of: (1..=n)
                .map(|i| Geodesic {
                    interior: vec![i, funnel],
                })
                .collect(),
            unique_vertex_of: (0..n).map(|t| (t, t + 1)).collect(),
            spg_edges: BTreeSet::new(),
            strict,
            log: vec![SynthStep::Complete { n }],
        };
        for t1 in 0..n {
            for t2 in t1 + 1..n {
                state.spg_edges.insert((t1, t2, 1));
            }
        }
        state.check()?;
        Ok(state)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn target_count(&self) -> usize {
        self.geodesic_of.len()
    }

    /// dist(a, b) in the base graph.
    pub fn distance(&self) -> usize {
        self.geodesic_of[0].levels() + 1
    }

    /// Number of index levels, one less than the distance.
    pub fn levels(&self) -> usize {
        self.geodesic_of[0].levels()
    }

    pub fn geodesic(&self, target: u32) -> &Geodesic {
        &self.geodesic_of[target as usize]
    }

    /// The base vertex still recorded as unique to `target`, if any.
    pub fn unique_vertex(&self, target: u32) -> Option<u32> {
        self.unique_vertex_of.get(&target).copied()
    }

    /// Tracked labeled adjacency, sorted.
    pub fn tracked_edges(&self) -> Vec<(u32, u32, u32)> {
        self.spg_edges.iter().copied().collect()
    }

    pub fn log(&self) -> &[SynthStep] {
        &self.log
    }

    fn require_target(&self, op: &'static str, t: u32) -> Result<()> {
        if (t as usize) < self.geodesic_of.len() {
            Ok(())
        } else {
            Err(Error::precondition(
                op,
                format!(
                    "unknown target vertex {t} (the construction has {})",
                    self.geodesic_of.len()
                ),
            ))
        }
    }

    fn require_unique(&self, op: &'static str, t: u32) -> Result<(u32, usize)> {
        let v = self.unique_vertex_of.get(&t).copied().ok_or_else(|| {
            Error::precondition(
                op,
                format!("target {t} has no unique interior vertex on record"),
            )
        })?;
        let level = self.geodesic_of[t as usize]
            .interior
            .iter()
            .position(|&x| x == v)
            .expect("recorded unique vertices lie on their geodesics")
            + 1;
        Ok((v, level))
    }

    /// Attach a clique of `size` vertices at `target`: the result's
    /// shortest path graph gains `size - 1` fresh vertices forming, with
    /// `target`, a clique under one new shared difference index.
    ///
    /// Requires a recorded unique interior vertex on `target`. Each new
    /// base vertex is a parallel alternative to the geodesic vertex one
    /// level past the unique one (one level before it when the unique
    /// vertex sits at the top level), so every new base vertex carries
    /// exactly one new geodesic and the new clique meets the old graph in
    /// `target` alone.
    pub fn attach_clique(&mut self, target: u32, size: u32) -> Result<Vec<u32>> {
        self.require_target("attach_clique", target)?;
        if size < 2 {
            return Err(Error::precondition(
                "attach_clique",
                format!("clique size must be at least 2, got {size}"),
            ));
        }
        let (uv, lvl) = self.require_unique("attach_clique", target)?;
        let p = self.levels();
        debug_assert!(p >= 2, "every constructible state has at least two levels");
        // Level of the new vertices; their neighbors are the geodesic's
        // vertices one level below and one level above that.
        let pos = if lvl < p { lvl + 1 } else { lvl - 1 };
        let interior = self.geodesic_of[target as usize].interior.clone();
        let below = if pos == 1 { self.a } else { interior[pos - 2] };
        let above = if pos == p { self.b } else { interior[pos] };
        debug_assert!(below == uv || above == uv);

        let mut new_targets = Vec::with_capacity(size as usize - 1);
        for _ in 0..size - 1 {
            let w = self.graph.add_vertex();
            self.graph.add_edge(below, w)?;
            self.graph.add_edge(w, above)?;
            let mut new_interior = interior.clone();
            new_interior[pos - 1] = w;
            let tid = self.geodesic_of.len() as u32;
            self.geodesic_of.push(Geodesic {
                interior: new_interior,
            });
            self.unique_vertex_of.insert(tid, w);
            new_targets.push(tid);
        }
        let label = pos as u32;
        for (k, &t1) in new_targets.iter().enumerate() {
            let (x, y) = pair(target, t1);
            self.spg_edges.insert((x, y, label));
            for &t2 in &new_targets[k + 1..] {
                self.spg_edges.insert((t1, t2, label));
            }
        }
        // The unique vertex is now shared with every new geodesic.
        self.unique_vertex_of.remove(&target);
        self.log.push(SynthStep::AttachClique { target, size });
        self.check()?;
        Ok(new_targets)
    }

    fn sorted_clique_arg(&self, op: &'static str, arg: &[u32]) -> Result<Vec<u32>> {
        if arg.is_empty() {
            return Err(Error::precondition(op, "clique arguments must be non-empty"));
        }
        let mut sorted = arg.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != arg.len() {
            return Err(Error::precondition(
                op,
                "clique arguments must not repeat a target",
            ));
        }
        for &t in &sorted {
            self.require_target(op, t)?;
        }
        Ok(sorted)
    }

    /// Join two tracked cliques with one fresh vertex adjacent to all of
    /// both. Only available at exactly two index levels.
    ///
    /// `clique_u` must be the full set of geodesics through one level-2
    /// base vertex and `clique_w` the full set through one level-1 base
    /// vertex, with no base edge between the two vertices yet. Adding that
    /// edge creates exactly one geodesic, whose difference with `clique_u`
    /// members is at level 1 and with `clique_w` members at level 2.
    /// Returns the new target id.
    pub fn link_cliques(&mut self, clique_u: &[u32], clique_w: &[u32]) -> Result<u32> {
        const OP: &str = "link_cliques";
        if self.levels() != 2 {
            return Err(Error::precondition(
                OP,
                format!("requires exactly 2 index levels, state has {}", self.levels()),
            ));
        }
        let cu = self.sorted_clique_arg(OP, clique_u)?;
        let cw = self.sorted_clique_arg(OP, clique_w)?;
        if !intersection(&cu, &cw).is_empty() {
            return Err(Error::precondition(OP, "the two cliques must be disjoint"));
        }
        let v = self.geodesic_of[cu[0] as usize].at_level(2);
        let vp = self.geodesic_of[cw[0] as usize].at_level(1);
        let sharers2: Vec<u32> = (0..self.geodesic_of.len() as u32)
            .filter(|&t| self.geodesic_of[t as usize].at_level(2) == v)
            .collect();
        if sharers2 != cu {
            return Err(Error::precondition(
                OP,
                format!(
                    "level-2 vertex {v} is shared by targets {sharers2:?}, not exactly by the given clique {cu:?}"
                ),
            ));
        }
        let sharers1: Vec<u32> = (0..self.geodesic_of.len() as u32)
            .filter(|&t| self.geodesic_of[t as usize].at_level(1) == vp)
            .collect();
        if sharers1 != cw {
            return Err(Error::precondition(
                OP,
                format!(
                    "level-1 vertex {vp} is shared by targets {sharers1:?}, not exactly by the given clique {cw:?}"
                ),
            ));
        }
        if self.graph.has_edge(vp, v) {
            return Err(Error::precondition(
                OP,
                format!("base edge {vp}-{v} is already present"),
            ));
        }

        self.graph.add_edge(vp, v)?;
        let tid = self.geodesic_of.len() as u32;
        self.geodesic_of.push(Geodesic {
            interior: vec![vp, v],
        });
        for &t in &cu {
            let (x, y) = pair(t, tid);
            self.spg_edges.insert((x, y, 1));
        }
        for &t in &cw {
            let (x, y) = pair(t, tid);
            self.spg_edges.insert((x, y, 2));
        }
        // Both linking vertices are shared now; any record naming them dies.
        self.unique_vertex_of.retain(|_, &mut x| x != v && x != vp);
        self.log.push(SynthStep::LinkCliques {
            clique_u: cu,
            clique_w: cw,
        });
        self.check()?;
        Ok(tid)
    }

    /// Bridge two non-adjacent targets whose unique interior vertices sit
    /// at consecutive levels and whose geodesics differ exactly there.
    ///
    /// One fresh geodesic is threaded between them and grown into two new
    /// cliques: one of `size_at_u` vertices containing `u`, one of
    /// `size_at_w` vertices containing `w`, on consecutive difference
    /// indices. Returns the new bridging target and the new members of the
    /// cliques at `u` and at `w`.
    pub fn attach_clique_pair(
        &mut self,
        u: u32,
        w: u32,
        size_at_u: u32,
        size_at_w: u32,
    ) -> Result<(u32, Vec<u32>, Vec<u32>)> {
        const OP: &str = "attach_clique_pair";
        if u == w {
            return Err(Error::precondition(OP, "the two targets must be distinct"));
        }
        if size_at_u < 2 || size_at_w < 2 {
            return Err(Error::precondition(
                OP,
                "both clique sizes must be at least 2",
            ));
        }
        let (_, lu) = self.require_unique(OP, u)?;
        let (_, lw) = self.require_unique(OP, w)?;
        // Orient so the lower unique level comes first.
        let (tu, tw, swapped) = if lw == lu + 1 {
            (u, w, false)
        } else if lu == lw + 1 {
            (w, u, true)
        } else {
            return Err(Error::precondition(
                OP,
                format!("unique interior vertices must sit at consecutive levels, got {lu} and {lw}"),
            ));
        };
        let i = lu.min(lw);
        let p = self.levels();
        let gu = self.geodesic_of[tu as usize].clone();
        let gw = self.geodesic_of[tw as usize].clone();
        let diff = diff_indices(&gu, &gw)?;
        if diff != [i as u32, i as u32 + 1] {
            return Err(Error::precondition(
                OP,
                format!(
                    "geodesics must differ exactly at the two unique levels {{{i}, {}}}, they differ at {diff:?}",
                    i + 1
                ),
            ));
        }
        let u_star = gu.at_level(i);
        let w_star = gw.at_level(i + 1);
        if self.graph.has_edge(u_star, w_star) {
            return Err(Error::precondition(
                OP,
                format!("base edge {u_star}-{w_star} is already present"),
            ));
        }
        let size_lower = if swapped { size_at_u } else { size_at_w };
        let size_upper = if swapped { size_at_w } else { size_at_u };

        // The bridge: the lower geodesic up to the unique vertex, then the
        // upper one from its unique vertex on.
        self.graph.add_edge(u_star, w_star)?;
        let mut bridge = gw.interior.clone();
        bridge[i - 1] = u_star;
        {
            let mut alt = gu.interior.clone();
            alt[i] = w_star;
            debug_assert_eq!(bridge, alt, "the two difference positions straddle the bridge");
        }
        let xt = self.geodesic_of.len() as u32;
        self.geodesic_of.push(Geodesic { interior: bridge });

        // New members of the clique at `tw`, difference index i: parallel
        // alternatives at level i between the shared level-(i-1) vertex and
        // the upper unique vertex.
        let below_w = if i == 1 { self.a } else { gu.interior[i - 2] };
        let mut lower_new = Vec::new();
        for _ in 0..size_lower - 2 {
            let nv = self.graph.add_vertex();
            self.graph.add_edge(below_w, nv)?;
            self.graph.add_edge(nv, w_star)?;
            let mut interior = gw.interior.clone();
            interior[i - 1] = nv;
            let tid = self.geodesic_of.len() as u32;
            self.geodesic_of.push(Geodesic { interior });
            self.unique_vertex_of.insert(tid, nv);
            lower_new.push(tid);
        }
        // New members of the clique at `tu`, difference index i+1.
        let above_u = if i + 2 > p { self.b } else { gu.interior[i + 1] };
        let mut upper_new = Vec::new();
        for _ in 0..size_upper - 2 {
            let nv = self.graph.add_vertex();
            self.graph.add_edge(u_star, nv)?;
            self.graph.add_edge(nv, above_u)?;
            let mut interior = gu.interior.clone();
            interior[i] = nv;
            let tid = self.geodesic_of.len() as u32;
            self.geodesic_of.push(Geodesic { interior });
            self.unique_vertex_of.insert(tid, nv);
            upper_new.push(tid);
        }

        let mut lower_clique = vec![tw, xt];
        lower_clique.extend(&lower_new);
        for (k, &t1) in lower_clique.iter().enumerate() {
            for &t2 in &lower_clique[k + 1..] {
                let (x, y) = pair(t1, t2);
                self.spg_edges.insert((x, y, i as u32));
            }
        }
        let mut upper_clique = vec![tu, xt];
        upper_clique.extend(&upper_new);
        for (k, &t1) in upper_clique.iter().enumerate() {
            for &t2 in &upper_clique[k + 1..] {
                let (x, y) = pair(t1, t2);
                self.spg_edges.insert((x, y, i as u32 + 1));
            }
        }
        // The bridge runs through both unique vertices.
        self.unique_vertex_of.remove(&tu);
        self.unique_vertex_of.remove(&tw);
        self.log.push(SynthStep::AttachCliquePair {
            u,
            w,
            size_at_u,
            size_at_w,
        });
        self.check()?;
        let (at_u, at_w) = if swapped {
            (lower_new, upper_new)
        } else {
            (upper_new, lower_new)
        };
        Ok((xt, at_u, at_w))
    }

    /// Bridge two non-adjacent targets whose unique interior vertices sit
    /// at the same level `i` and whose geodesics differ exactly at `i` and
    /// one neighboring level.
    ///
    /// One fresh geodesic joins the existing clique at `w` (difference
    /// index `i`) and forms, with `u` and `size - 2` new vertices, a new
    /// clique on the neighboring difference index. `u` loses its unique
    /// record, `w` keeps its own. Swapping the arguments builds the mirror
    /// image. Returns the bridging target and the new clique members.
    pub fn attach_bridging_clique(&mut self, u: u32, w: u32, size: u32) -> Result<(u32, Vec<u32>)> {
        const OP: &str = "attach_bridging_clique";
        if u == w {
            return Err(Error::precondition(OP, "the two targets must be distinct"));
        }
        if size < 2 {
            return Err(Error::precondition(
                OP,
                format!("clique size must be at least 2, got {size}"),
            ));
        }
        let (u_star, lu) = self.require_unique(OP, u)?;
        let (_, lw) = self.require_unique(OP, w)?;
        if lu != lw {
            return Err(Error::precondition(
                OP,
                format!("unique interior vertices must sit at the same level, got {lu} and {lw}"),
            ));
        }
        let i = lu;
        let p = self.levels();
        let gu = self.geodesic_of[u as usize].clone();
        let gw = self.geodesic_of[w as usize].clone();
        let diff = diff_indices(&gu, &gw)?;
        let forward = if diff == [i as u32, i as u32 + 1] {
            true
        } else if i >= 2 && diff == [i as u32 - 1, i as u32] {
            false
        } else {
            return Err(Error::precondition(
                OP,
                format!(
                    "geodesics must differ exactly at level {i} and one neighboring level, they differ at {diff:?}"
                ),
            ));
        };
        // The far endpoint of the bridge on `w`'s geodesic.
        let w_side = if forward {
            gw.at_level(i + 1)
        } else {
            gw.at_level(i - 1)
        };
        let (e1, e2) = if forward {
            (u_star, w_side)
        } else {
            (w_side, u_star)
        };
        if self.graph.has_edge(e1, e2) {
            return Err(Error::precondition(
                OP,
                format!("base edge {e1}-{e2} is already present"),
            ));
        }

        // `w`'s tracked clique at difference index i, which the bridge joins.
        let i_u32 = i as u32;
        let mut w_clique: Vec<u32> = self
            .spg_edges
            .iter()
            .filter(|&&(t1, t2, l)| l == i_u32 && (t1 == w || t2 == w))
            .map(|&(t1, t2, _)| if t1 == w { t2 } else { t1 })
            .collect();
        w_clique.push(w);
        w_clique.sort_unstable();

        self.graph.add_edge(e1, e2)?;
        let mut bridge = gw.interior.clone();
        bridge[i - 1] = u_star;
        let xt = self.geodesic_of.len() as u32;
        self.geodesic_of.push(Geodesic { interior: bridge });

        // New parallel alternatives beside `u`, one level past its unique
        // vertex in the direction of the difference.
        let new_pos = if forward { i + 1 } else { i - 1 };
        let below = if new_pos == 1 {
            self.a
        } else {
            gu.interior[new_pos - 2]
        };
        let above = if new_pos == p { self.b } else { gu.interior[new_pos] };
        let mut new_targets = Vec::new();
        for _ in 0..size - 2 {
            let nv = self.graph.add_vertex();
            self.graph.add_edge(below, nv)?;
            self.graph.add_edge(nv, above)?;
            let mut interior = gu.interior.clone();
            interior[new_pos - 1] = nv;
            let tid = self.geodesic_of.len() as u32;
            self.geodesic_of.push(Geodesic { interior });
            self.unique_vertex_of.insert(tid, nv);
            new_targets.push(tid);
        }

        // The bridge slots into `w`'s whole index-i clique.
        for &t in &w_clique {
            let (x, y) = pair(t, xt);
            self.spg_edges.insert((x, y, i_u32));
        }
        // And forms the new clique with `u` on the neighboring index.
        let new_label = new_pos as u32;
        let mut new_clique = vec![u, xt];
        new_clique.extend(&new_targets);
        for (k, &t1) in new_clique.iter().enumerate() {
            for &t2 in &new_clique[k + 1..] {
                let (x, y) = pair(t1, t2);
                self.spg_edges.insert((x, y, new_label));
            }
        }
        // The bridge and the new alternatives all run through `u`'s unique
        // vertex; none of them touches `w`'s, so `w` keeps its record.
        self.unique_vertex_of.remove(&u);
        self.log.push(SynthStep::AttachBridgingClique { u, w, size });
        self.check()?;
        Ok((xt, new_targets))
    }

    /// Stretch the endpoint distance to `distance` by a pendant path at
    /// `b`. Geodesics extend in lockstep, so the shortest path graph is
    /// unchanged apart from everything gaining the same tail levels.
    pub fn extend_distance(&mut self, distance: u32) -> Result<()> {
        let d = self.distance() as u32;
        if distance < d {
            return Err(Error::precondition(
                "extend_distance",
                format!("target distance {distance} is below the current distance {d}"),
            ));
        }
        let m = (distance - d) as usize;
        if m == 0 {
            return Ok(());
        }
        let mut chain = Vec::with_capacity(m);
        let mut prev = self.b;
        for _ in 0..m {
            let t = self.graph.add_vertex();
            self.graph.add_edge(prev, t)?;
            chain.push(t);
            prev = t;
        }
        let old_b = self.b;
        self.b = *chain.last().expect("m > 0");
        for g in &mut self.geodesic_of {
            g.interior.push(old_b);
            g.interior.extend_from_slice(&chain[..m - 1]);
        }
        self.log.push(SynthStep::ExtendDistance { distance });
        self.check()
    }

    /// Merge two constructions by identifying their endpoint pairs, after
    /// stretching both to a common distance. The shortest path graph of
    /// the merge is the disjoint union of the two tracked ones; the second
    /// state's target ids shift up by the first state's count.
    pub fn disjoint_union(first: BaseGraphState, second: BaseGraphState) -> Result<BaseGraphState> {
        let strict = first.strict || second.strict;
        // At distance 2 geodesics from different sides would differ in
        // their single interior vertex and become adjacent; from 3 on they
        // differ everywhere. Constructible states are always at 3 or more.
        let d = first.distance().max(second.distance()).max(3) as u32;
        let mut s1 = first;
        let mut s2 = second;
        s1.extend_distance(d)?;
        s2.extend_distance(d)?;

        let n1 = s1.graph.n();
        let mut map = vec![0u32; s2.graph.n()];
        let mut next = n1 as u32;
        for v in 0..s2.graph.n() as u32 {
            map[v as usize] = if v == s2.a {
                s1.a
            } else if v == s2.b {
                s1.b
            } else {
                let m = next;
                next += 1;
                m
            };
        }
        let mut graph = Graph::new(n1 + s2.graph.n() - 2);
        for (u, v) in s1.graph.edges() {
            graph.add_edge(u, v)?;
        }
        for (u, v) in s2.graph.edges() {
            graph.add_edge(map[u as usize], map[v as usize])?;
        }

        let shift = s1.geodesic_of.len() as u32;
        let mut geodesic_of = s1.geodesic_of;
        geodesic_of.extend(s2.geodesic_of.iter().map(|g| Geodesic {
            interior: g.interior.iter().map(|&v| map[v as usize]).collect(),
        }));
        let mut unique_vertex_of = s1.unique_vertex_of;
        for (&t, &v) in &s2.unique_vertex_of {
            unique_vertex_of.insert(t + shift, map[v as usize]);
        }
        let mut spg_edges = s1.spg_edges;
        for &(t1, t2, l) in &s2.spg_edges {
            spg_edges.insert((t1 + shift, t2 + shift, l));
        }
        let mut log = s1.log;
        log.extend(s2.log);
        log.push(SynthStep::DisjointUnion);

        let state = BaseGraphState {
            graph,
            a: s1.a,
            b: s1.b,
            geodesic_of,
            unique_vertex_of,
            spg_edges,
            strict,
            log,
        };
        state.check()?;
        Ok(state)
    }

    fn check(&self) -> Result<()> {
        if self.strict {
            self.verify_now()
        } else {
            Ok(())
        }
    }

    /// Recompute the shortest path graph of the base from scratch and
    /// compare it against everything tracked. Any disagreement is an
    /// internal inconsistency: an operation claimed an effect it did not
    /// have.
    pub fn verify_now(&self) -> Result<()> {
        let spg = build_spg(&self.graph, self.a, self.b, DEFAULT_MAX_PATHS)?;
        if spg.order() != self.geodesic_of.len() {
            return Err(Error::InternalInconsistency(format!(
                "tracking {} geodesics but the base graph has {}",
                self.geodesic_of.len(),
                spg.order()
            )));
        }
        let mut position: HashMap<&[u32], u32> = HashMap::new();
        for (i, g) in spg.geodesics.iter().enumerate() {
            position.insert(g.interior.as_slice(), i as u32);
        }
        let mut to_spg = Vec::with_capacity(self.geodesic_of.len());
        let mut back = vec![u32::MAX; self.geodesic_of.len()];
        for (t, g) in self.geodesic_of.iter().enumerate() {
            let id = *position.get(g.interior.as_slice()).ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "tracked geodesic {:?} is not a geodesic of the base graph",
                    g.interior
                ))
            })?;
            if back[id as usize] != u32::MAX {
                return Err(Error::InternalInconsistency(format!(
                    "targets {} and {t} track the same geodesic",
                    back[id as usize]
                )));
            }
            back[id as usize] = t as u32;
            to_spg.push(id);
        }
        let recomputed: BTreeSet<(u32, u32, u32)> = spg
            .edges
            .iter()
            .map(|&(i, j, l)| {
                let (x, y) = pair(back[i as usize], back[j as usize]);
                (x, y, l)
            })
            .collect();
        if recomputed != self.spg_edges {
            let missing: Vec<_> = self.spg_edges.difference(&recomputed).collect();
            let extra: Vec<_> = recomputed.difference(&self.spg_edges).collect();
            return Err(Error::InternalInconsistency(format!(
                "tracked adjacency disagrees with recomputation (tracked-only {missing:?}, recomputed-only {extra:?})"
            )));
        }
        for (&t, &v) in &self.unique_vertex_of {
            let got = unique_vertex_geodesic(&spg, v).ok().flatten();
            if got != Some(to_spg[t as usize] as usize) {
                return Err(Error::InternalInconsistency(format!(
                    "base vertex {v} is not unique to target {t}'s geodesic"
                )));
            }
        }
        Ok(())
    }
}

/// Run a step log through the stack machine and return the single state it
/// leaves behind.
pub fn replay(log: &[SynthStep], mode: SynthesisMode) -> Result<BaseGraphState> {
    const OP: &str = "replay";
    let strict = mode == SynthesisMode::Strict;
    let mut stack: Vec<BaseGraphState> = Vec::new();
    for step in log {
        match step {
            SynthStep::Complete { n } => stack.push(BaseGraphState::complete(*n, strict)?),
            SynthStep::DisjointUnion => {
                let second = stack
                    .pop()
                    .ok_or_else(|| Error::precondition(OP, "disjoint_union needs two states"))?;
                let first = stack
                    .pop()
                    .ok_or_else(|| Error::precondition(OP, "disjoint_union needs two states"))?;
                stack.push(BaseGraphState::disjoint_union(first, second)?);
            }
            other => {
                let top = stack.last_mut().ok_or_else(|| {
                    Error::precondition(OP, "the log mutates a state before creating one")
                })?;
                match other {
                    SynthStep::AttachClique { target, size } => {
                        top.attach_clique(*target, *size)?;
                    }
                    SynthStep::LinkCliques { clique_u, clique_w } => {
                        top.link_cliques(clique_u, clique_w)?;
                    }
                    SynthStep::AttachCliquePair {
                        u,
                        w,
                        size_at_u,
                        size_at_w,
                    } => {
                        top.attach_clique_pair(*u, *w, *size_at_u, *size_at_w)?;
                    }
                    SynthStep::AttachBridgingClique { u, w, size } => {
                        top.attach_bridging_clique(*u, *w, *size)?;
                    }
                    SynthStep::ExtendDistance { distance } => {
                        top.extend_distance(*distance)?;
                    }
                    SynthStep::Complete { .. } | SynthStep::DisjointUnion => unreachable!(),
                }
            }
        }
    }
    match stack.len() {
        1 => Ok(stack.pop().expect("checked length")),
        k => Err(Error::precondition(
            OP,
            format!("the log leaves {k} states on the stack instead of one"),
        )),
    }
}

/// Proof that a base graph realizes a target: the base with its endpoints,
/// the geodesic standing for each target vertex, and a replayable log of
/// the construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthesisCertificate {
    pub base: GraphJson,
    pub a: u32,
    pub b: u32,
    /// Indexed by target vertex: the interior of its geodesic.
    pub correspondence: Vec<Vec<u32>>,
    pub index_levels: u32,
    pub log: Vec<SynthStep>,
}

/// Outcome of checking a certificate, with every failed check listed.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateCheck {
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Build a base graph whose shortest path graph is `h`, with certificate.
///
/// `h` must classify as a shortest path graph first; the construction then
/// proceeds per connected component: repeatedly delete the smallest vertex
/// on a shortest induced cycle of length at least four (remembering its two
/// cliques), build the remaining tree of cliques outward from its largest
/// clique, re-insert the deleted vertices in reverse order by linking their
/// two cliques, and merge the components endpoint-to-endpoint. The
/// certificate is emitted only after the shortest path graph of the result
/// has been recomputed from scratch and matched against `h` exactly.
pub fn synthesize(
    h: &Graph,
    mode: SynthesisMode,
    budget: &mut WorkBudget,
) -> Result<SynthesisCertificate> {
    if h.n() == 0 {
        return Err(Error::precondition(
            "synthesize",
            "the target graph must have at least one vertex",
        ));
    }
    match classify(h, budget)? {
        Verdict::SpgByTheorem { .. } => {}
        Verdict::NotSpg { reason, .. } => {
            return Err(Error::precondition(
                "synthesize",
                format!("the target graph is not a shortest path graph: {reason}"),
            ));
        }
        Verdict::UnknownContainsC4 { .. } => {
            return Err(Error::precondition(
                "synthesize",
                "the target graph contains an induced four-cycle, outside the certified recognition range",
            ));
        }
    }
    let strict = mode == SynthesisMode::Strict;
    let mut acc: Option<(BaseGraphState, Vec<u32>)> = None;
    for component in h.connected_components() {
        let (state, origins) = synthesize_component(h, &component, strict, budget)?;
        acc = Some(match acc {
            None => (state, origins),
            Some((prev, mut prev_origins)) => {
                let merged = BaseGraphState::disjoint_union(prev, state)?;
                prev_origins.extend(origins);
                (merged, prev_origins)
            }
        });
    }
    let (state, origin_of) = acc.expect("at least one vertex, so at least one component");

    // Final recomputation: never trust the bookkeeping for the certificate.
    state.verify_now()?;
    if origin_of.len() != h.n() {
        return Err(Error::InternalInconsistency(format!(
            "built {} targets for a graph on {} vertices",
            origin_of.len(),
            h.n()
        )));
    }
    let mut target_of = vec![u32::MAX; h.n()];
    for (t, &v) in origin_of.iter().enumerate() {
        if target_of[v as usize] != u32::MAX {
            return Err(Error::InternalInconsistency(format!(
                "vertex {v} was realized twice"
            )));
        }
        target_of[v as usize] = t as u32;
    }
    let realized: BTreeSet<(u32, u32)> = state
        .tracked_edges()
        .iter()
        .map(|&(t1, t2, _)| pair(origin_of[t1 as usize], origin_of[t2 as usize]))
        .collect();
    let wanted: BTreeSet<(u32, u32)> = h.edges().into_iter().collect();
    if realized != wanted {
        return Err(Error::InternalInconsistency(
            "the realized adjacency does not match the target graph".into(),
        ));
    }
    if state.levels() != 2 {
        return Err(Error::InternalInconsistency(format!(
            "expected exactly 2 index levels, built {}",
            state.levels()
        )));
    }
    let correspondence = (0..h.n())
        .map(|v| state.geodesic(target_of[v]).interior.clone())
        .collect();
    Ok(SynthesisCertificate {
        base: GraphJson::of(state.graph()),
        a: state.a(),
        b: state.b(),
        correspondence,
        index_levels: 2,
        log: state.log().to_vec(),
    })
}

/// Build one connected component. Returns the state and, per target id,
/// the component vertex it realizes.
fn synthesize_component(
    h: &Graph,
    component: &[u32],
    strict: bool,
    budget: &mut WorkBudget,
) -> Result<(BaseGraphState, Vec<u32>)> {
    // Peel ring vertices until only a tree of cliques remains. Each record
    // is (vertex, first clique minus it, second clique minus it), all in
    // the ids of `h`.
    let mut alive: Vec<u32> = component.to_vec();
    let mut peeled: Vec<(u32, Vec<u32>, Vec<u32>)> = Vec::new();
    loop {
        let view = h.induced_subgraph(&alive)?;
        let Some(witness) = shortest_induced_cycle(&view.graph, &CycleFilter::at_least(4), budget)?
        else {
            break;
        };
        let x = witness
            .vertices
            .iter()
            .map(|&lv| view.vertices[lv as usize])
            .min()
            .expect("cycles are non-empty");
        let x_local = alive.binary_search(&x).expect("x is alive") as u32;
        let containing: Vec<Vec<u32>> = maximal_cliques(&view.graph)
            .into_iter()
            .filter(|c| c.binary_search(&x_local).is_ok())
            .collect();
        if containing.len() != 2 {
            return Err(Error::InternalInconsistency(format!(
                "vertex {x} lies on an induced ring but in {} maximal cliques instead of two",
                containing.len()
            )));
        }
        let strip = |c: &[u32]| -> Vec<u32> {
            c.iter()
                .filter(|&&lv| lv != x_local)
                .map(|&lv| view.vertices[lv as usize])
                .collect()
        };
        peeled.push((x, strip(&containing[0]), strip(&containing[1])));
        let at = alive.binary_search(&x).expect("x is alive");
        alive.remove(at);
    }

    // Build the surviving tree of cliques outward from its largest clique.
    let view = h.induced_subgraph(&alive)?;
    let cliques: Vec<Vec<u32>> = maximal_cliques(&view.graph)
        .into_iter()
        .map(|c| c.iter().map(|&lv| view.vertices[lv as usize]).collect())
        .collect();
    let mut touching: Vec<Vec<(usize, u32)>> = vec![Vec::new(); cliques.len()];
    for i in 0..cliques.len() {
        for j in i + 1..cliques.len() {
            let shared = intersection(&cliques[i], &cliques[j]);
            match shared.len() {
                0 => {}
                1 => {
                    touching[i].push((j, shared[0]));
                    touching[j].push((i, shared[0]));
                }
                _ => {
                    return Err(Error::InternalInconsistency(
                        "two maximal cliques share two vertices after peeling".into(),
                    ));
                }
            }
        }
    }
    let root = (0..cliques.len())
        .min_by_key(|&i| (std::cmp::Reverse(cliques[i].len()), cliques[i].clone()))
        .expect("a non-empty component has a maximal clique");

    let mut state = BaseGraphState::complete(cliques[root].len() as u32, strict)?;
    let mut origin_of: Vec<u32> = cliques[root].clone();
    let mut target_of: HashMap<u32, u32> = cliques[root]
        .iter()
        .enumerate()
        .map(|(t, &v)| (v, t as u32))
        .collect();
    let mut visited = vec![false; cliques.len()];
    visited[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(ci) = queue.pop_front() {
        for &(cj, shared) in &touching[ci] {
            if visited[cj] {
                continue;
            }
            visited[cj] = true;
            let t = target_of[&shared];
            let new_ids = state.attach_clique(t, cliques[cj].len() as u32)?;
            let members: Vec<u32> = cliques[cj]
                .iter()
                .copied()
                .filter(|&v| v != shared)
                .collect();
            debug_assert_eq!(new_ids.len(), members.len());
            for (&tid, &v) in new_ids.iter().zip(&members) {
                debug_assert_eq!(tid as usize, origin_of.len());
                origin_of.push(v);
                target_of.insert(v, tid);
            }
            queue.push_back(cj);
        }
    }
    if visited.iter().any(|&v| !v) {
        return Err(Error::InternalInconsistency(
            "the tree of cliques of a connected component fell apart".into(),
        ));
    }

    // Re-insert the peeled vertices, newest first, linking their two
    // cliques. Which clique plays which level is settled by trying both.
    while let Some((x, k1, k2)) = peeled.pop() {
        let as_targets = |k: &[u32]| -> Vec<u32> { k.iter().map(|v| target_of[v]).collect() };
        let (c1, c2) = (as_targets(&k1), as_targets(&k2));
        let xt = match state.link_cliques(&c1, &c2) {
            Ok(t) => t,
            Err(Error::Precondition { .. }) => match state.link_cliques(&c2, &c1) {
                Ok(t) => t,
                Err(Error::Precondition { reason, .. }) => {
                    return Err(Error::InternalInconsistency(format!(
                        "re-inserting ring vertex {x} failed in both orientations: {reason}"
                    )));
                }
                Err(e) => return Err(e),
            },
            Err(e) => return Err(e),
        };
        debug_assert_eq!(xt as usize, origin_of.len());
        origin_of.push(x);
        target_of.insert(x, xt);
    }
    Ok((state, origin_of))
}

/// Check a certificate against the graph it claims to realize.
///
/// Everything is re-derived: the log is replayed and must rebuild the
/// stated base exactly, the shortest path graph of the base is recomputed,
/// and the stated correspondence must be a bijection matching edges both
/// ways. Failures are collected, not short-circuited.
pub fn verify_certificate(
    h: &Graph,
    certificate: &SynthesisCertificate,
    cap: u64,
) -> Result<CertificateCheck> {
    let mut failures = Vec::new();
    let base = match certificate.base.to_graph() {
        Ok(g) => Some(g),
        Err(e) => {
            failures.push(format!("the stated base graph is malformed: {e}"));
            None
        }
    };
    if let Some(base) = &base {
        match replay(&certificate.log, SynthesisMode::Fast) {
            Ok(replayed) => {
                if replayed.graph() != base {
                    failures.push("replaying the log builds a different base graph".into());
                }
                if replayed.a() != certificate.a || replayed.b() != certificate.b {
                    failures.push(format!(
                        "replaying the log ends at endpoints ({}, {}), certificate says ({}, {})",
                        replayed.a(),
                        replayed.b(),
                        certificate.a,
                        certificate.b
                    ));
                }
            }
            Err(e) => failures.push(format!("the log does not replay: {e}")),
        }
        match build_spg(base, certificate.a, certificate.b, cap) {
            Ok(spg) => {
                if spg.order() != h.n() {
                    failures.push(format!(
                        "the base graph has {} geodesics, the target has {} vertices",
                        spg.order(),
                        h.n()
                    ));
                }
                if certificate.index_levels as usize != spg.index_levels() {
                    failures.push(format!(
                        "certificate states {} index levels, the base graph has {}",
                        certificate.index_levels,
                        spg.index_levels()
                    ));
                }
                if certificate.correspondence.len() != h.n() {
                    failures.push(format!(
                        "correspondence covers {} vertices, the target has {}",
                        certificate.correspondence.len(),
                        h.n()
                    ));
                } else if failures.is_empty() {
                    let mut position: HashMap<&[u32], u32> = HashMap::new();
                    for (i, g) in spg.geodesics.iter().enumerate() {
                        position.insert(g.interior.as_slice(), i as u32);
                    }
                    let mut to_spg = vec![u32::MAX; h.n()];
                    let mut seen = vec![false; spg.order()];
                    for (v, interior) in certificate.correspondence.iter().enumerate() {
                        match position.get(interior.as_slice()) {
                            Some(&id) if !seen[id as usize] => {
                                seen[id as usize] = true;
                                to_spg[v] = id;
                            }
                            Some(_) => {
                                failures.push(format!(
                                    "correspondence maps two target vertices to the geodesic {interior:?}"
                                ));
                            }
                            None => {
                                failures.push(format!(
                                    "correspondence entry {interior:?} for vertex {v} is not a geodesic of the base"
                                ));
                            }
                        }
                    }
                    if failures.is_empty() {
                        let spg_plain = spg.as_graph();
                        'outer: for u in 0..h.n() as u32 {
                            for v in u + 1..h.n() as u32 {
                                let want = h.has_edge(u, v);
                                let got =
                                    spg_plain.has_edge(to_spg[u as usize], to_spg[v as usize]);
                                if want != got {
                                    failures.push(format!(
                                        "edge mismatch at target pair ({u}, {v}): target {want}, base geodesics {got}"
                                    ));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
            Err(Error::CapExceeded { count, cap }) => {
                return Err(Error::CapExceeded { count, cap });
            }
            Err(e) => failures.push(format!(
                "the base graph has no shortest path graph between the stated endpoints: {e}"
            )),
        }
    }
    Ok(CertificateCheck {
        passed: failures.is_empty(),
        failures,
    })
}
