use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::HashMap;

/// A shortest path between the two fixed endpoints, stored as its interior
/// vertex sequence. The endpoints are implicit: every geodesic between a
/// and b starts and ends the same way, so only the interior distinguishes
/// them. Interior position `i` is "index level" `i + 1`; a vertex sits at
/// the same level in every geodesic through it, namely its distance from
/// the source endpoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Geodesic {
    pub interior: Vec<u32>,
}

impl Geodesic {
    /// Number of index levels, i.e. interior length.
    pub fn levels(&self) -> usize {
        self.interior.len()
    }

    /// Vertex at 1-based index level `level`.
    pub fn at_level(&self, level: usize) -> u32 {
        self.interior[level - 1]
    }

    pub fn contains(&self, v: u32) -> bool {
        self.interior.contains(&v)
    }
}

/// Default all-or-nothing ceiling on the number of geodesics.
pub const DEFAULT_MAX_PATHS: u64 = 1_000_000;

/// All geodesics from `a` to `b`, in lexicographic interior order.
///
/// The path count is established first by dynamic programming over the
/// shortest-path DAG; if it exceeds `cap` nothing is enumerated and the
/// call fails, so memory use is bounded before any allocation happens.
pub fn enumerate_geodesics(g: &Graph, a: u32, b: u32, cap: u64) -> Result<Vec<Geodesic>> {
    let dag = ShortestPathDag::new(g, a, b)?;
    let count = dag.path_count(cap);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut interior = Vec::with_capacity(dag.distance.saturating_sub(1) as usize);
    dag.walk(dag.a, &mut interior, &mut out);
    Ok(out)
}

/// Levels (1-based) at which two geodesics differ.
pub fn diff_indices(u: &Geodesic, w: &Geodesic) -> Result<Vec<u32>> {
    if u.interior.len() != w.interior.len() {
        return Err(Error::LengthMismatch(u.interior.len(), w.interior.len()));
    }
    Ok(u.interior
        .iter()
        .zip(&w.interior)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(i, _)| i as u32 + 1)
        .collect())
}

/// The reconfiguration graph of the geodesics between two endpoints:
/// one vertex per geodesic, an edge wherever two geodesics differ in
/// exactly one vertex, labeled with the level of that difference.
#[derive(Debug, Clone)]
pub struct SpgGraph {
    pub base: Graph,
    pub a: u32,
    pub b: u32,
    /// Sorted lexicographically; positions are the SPG vertex ids.
    pub geodesics: Vec<Geodesic>,
    /// `(i, j, level)` with `i < j`, sorted.
    pub edges: Vec<(u32, u32, u32)>,
}

impl SpgGraph {
    pub fn order(&self) -> usize {
        self.geodesics.len()
    }

    /// dist(a, b) in the base graph.
    pub fn distance(&self) -> usize {
        self.geodesics[0].levels() + 1
    }

    pub fn index_levels(&self) -> usize {
        self.geodesics[0].levels()
    }

    /// The SPG as a plain graph, labels dropped.
    pub fn as_graph(&self) -> Graph {
        let mut g = Graph::new(self.geodesics.len());
        for &(i, j, _) in &self.edges {
            g.add_edge(i, j).expect("edge ids are geodesic indices");
        }
        g
    }

    pub fn edge_label(&self, i: u32, j: u32) -> Option<u32> {
        let (i, j) = (i.min(j), i.max(j));
        self.edges
            .iter()
            .find(|&&(x, y, _)| x == i && y == j)
            .map(|&(_, _, l)| l)
    }
}

/// Compute the SPG of `g` between `a` and `b`.
///
/// Adjacency is found without comparing all pairs: for each level, bucket
/// the geodesics by their interior with that level erased. Two geodesics
/// land in the same bucket exactly when they agree everywhere else, so
/// each bucket is a clique with that level as the shared difference index,
/// and every SPG edge shows up in exactly one bucket.
pub fn build_spg(g: &Graph, a: u32, b: u32, cap: u64) -> Result<SpgGraph> {
    let geodesics = enumerate_geodesics(g, a, b, cap)?;
    let levels = geodesics[0].levels();
    let mut edges = Vec::new();
    let mut bucket: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    for level in 1..=levels {
        bucket.clear();
        for (idx, geo) in geodesics.iter().enumerate() {
            let mut key = geo.interior.clone();
            key.remove(level - 1);
            bucket.entry(key).or_default().push(idx as u32);
        }
        for members in bucket.values() {
            for (x, &i) in members.iter().enumerate() {
                for &j in &members[x + 1..] {
                    edges.push((i.min(j), i.max(j), level as u32));
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(SpgGraph {
        base: g.clone(),
        a,
        b,
        geodesics,
        edges,
    })
}

/// If exactly one geodesic passes through base vertex `v`, its SPG id.
///
/// `v` must sit strictly between the endpoints, i.e. `0 < dist(a, v) <
/// dist(a, b)`; other vertices have no index level to speak of.
pub fn unique_vertex_geodesic(spg: &SpgGraph, v: u32) -> Result<Option<usize>> {
    if v as usize >= spg.base.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: spg.base.n(),
        });
    }
    let from_a = spg.base.bfs_distances(spg.a)?;
    let from_b = spg.base.bfs_distances(spg.b)?;
    let total = spg.distance() as u32;
    let level = match (from_a[v as usize], from_b[v as usize]) {
        (Some(d), Some(e)) if d > 0 && e > 0 && d + e == total => d as usize,
        _ => {
            return Err(Error::precondition(
                "unique_vertex_geodesic",
                format!("vertex {v} is not at an interior index level"),
            ))
        }
    };
    let mut found = None;
    for (idx, geo) in spg.geodesics.iter().enumerate() {
        if geo.at_level(level) == v {
            if found.is_some() {
                return Ok(None);
            }
            found = Some(idx);
        }
    }
    Ok(found)
}

/// The shortest-path DAG between two endpoints: the subgraph of vertices
/// on some geodesic, with edges oriented away from `a`.
struct ShortestPathDag {
    /// Ascending successor lists; `succ[v]` empty off the DAG.
    succ: Vec<Vec<u32>>,
    distance: u32,
    a: u32,
    b: u32,
}

impl ShortestPathDag {
    fn new(g: &Graph, a: u32, b: u32) -> Result<Self> {
        if a as usize >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: a,
                order: g.n(),
            });
        }
        if b as usize >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: b,
                order: g.n(),
            });
        }
        if a == b {
            return Err(Error::EqualEndpoints(a));
        }
        let da = g.bfs_distances(a)?;
        let db = g.bfs_distances(b)?;
        let distance = da[b as usize].ok_or(Error::Unreachable { a, b })?;
        let on_geodesic = |v: u32| -> bool {
            matches!(
                (da[v as usize], db[v as usize]),
                (Some(x), Some(y)) if x + y == distance
            )
        };
        let mut succ = vec![Vec::new(); g.n()];
        for v in 0..g.n() as u32 {
            if !on_geodesic(v) {
                continue;
            }
            for w in g.neighbors(v) {
                if on_geodesic(w) && da[w as usize] == Some(da[v as usize].unwrap() + 1) {
                    succ[v as usize].push(w);
                }
            }
        }
        Ok(ShortestPathDag {
            succ,
            distance,
            a,
            b,
        })
    }

    /// Number of a-to-b paths, saturated just past `cap`.
    fn path_count(&self, cap: u64) -> u64 {
        let mut memo: HashMap<u32, u64> = HashMap::new();
        self.count_from_into(self.a, cap, &mut memo)
    }

    fn count_from_into(&self, v: u32, cap: u64, memo: &mut HashMap<u32, u64>) -> u64 {
        if v == self.b {
            return 1;
        }
        if let Some(&c) = memo.get(&v) {
            return c;
        }
        let mut total: u64 = 0;
        for &w in &self.succ[v as usize] {
            total = total.saturating_add(self.count_from_into(w, cap, memo));
            if total > cap {
                total = cap.saturating_add(1);
                break;
            }
        }
        memo.insert(v, total);
        total
    }

    /// Depth-first enumeration; successors are ascending, so the interiors
    /// come out in lexicographic order.
    fn walk(&self, v: u32, interior: &mut Vec<u32>, out: &mut Vec<Geodesic>) {
        if v == self.b {
            out.push(Geodesic {
                interior: interior.clone(),
            });
            return;
        }
        for &w in &self.succ[v as usize] {
            if w != self.b {
                interior.push(w);
            }
            self.walk(w, interior, out);
            if w != self.b {
                interior.pop();
            }
        }
    }
}
