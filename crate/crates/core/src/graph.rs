use crate::error::{Error, Result};

/// Simple undirected graph with one bitset row per vertex.
///
/// Vertices are `0..n`. Rows share a single backing vector, `words` u64s per
/// row, so adjacency tests and neighborhood intersections are word operations.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if g.has_edge(u, v) {
                return Err(Error::Parse(format!("duplicate edge {u}-{v}")));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                g.add_edge(u, v).expect("in range");
            }
        }
        g
    }

    /// Cycle 0-1-...-(n-1)-0. Panics below 3 vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::new(n);
        for u in 0..n as u32 {
            g.add_edge(u, (u + 1) % n as u32).expect("in range");
        }
        g
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n as u32 {
            g.add_edge(u - 1, u).expect("in range");
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    fn check_vertex(&self, v: u32) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    pub fn add_vertex(&mut self) -> u32 {
        let v = self.n as u32;
        self.n += 1;
        if words_for(self.n) > self.words {
            // Re-lay rows with one more word each.
            let new_words = words_for(self.n);
            let mut bits = vec![0u64; self.n * new_words];
            for u in 0..self.n - 1 {
                bits[u * new_words..u * new_words + self.words]
                    .copy_from_slice(&self.bits[u * self.words..(u + 1) * self.words]);
            }
            self.words = new_words;
            self.bits = bits;
        } else {
            self.bits.extend(std::iter::repeat(0).take(self.words));
        }
        v
    }

    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.bits[u as usize * self.words + v as usize / 64] |= 1 << (v % 64);
        self.bits[v as usize * self.words + u as usize / 64] |= 1 << (u % 64);
        Ok(())
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        if u as usize >= self.n || v as usize >= self.n {
            return false;
        }
        self.bits[u as usize * self.words + v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn row(&self, v: u32) -> &[u64] {
        let v = v as usize;
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        BitIter::new(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n as u32).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// All edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n as u32 {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of neighbors of `v` inside the set `s` (bitset of `self.words` words).
    pub fn degree_into(&self, v: u32, s: &[u64]) -> usize {
        self.row(v)
            .iter()
            .zip(s)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Subgraph induced by `vertices`, relabeled to `0..k` in the given order.
    ///
    /// Duplicates and out-of-range vertices are rejected. The returned view
    /// remembers the original labels so results can be mapped back.
    pub fn induced_subgraph(&self, vertices: &[u32]) -> Result<InducedView> {
        let mut seen = vec![false; self.n];
        for &v in vertices {
            self.check_vertex(v)?;
            if seen[v as usize] {
                return Err(Error::Parse(format!(
                    "vertex {v} listed twice in induced subgraph"
                )));
            }
            seen[v as usize] = true;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i as u32, j as u32)?;
                }
            }
        }
        Ok(InducedView {
            graph: g,
            vertices: vertices.to_vec(),
        })
    }

    /// BFS distance from `source` to every vertex; `None` where unreachable.
    pub fn bfs_distances(&self, source: u32) -> Result<Vec<Option<u32>>> {
        self.check_vertex(source)?;
        let mut dist = vec![None; self.n];
        dist[source as usize] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize].expect("queued vertices have distances");
            for v in self.neighbors(u) {
                if dist[v as usize].is_none() {
                    dist[v as usize] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.bfs_distances(0)
            .expect("vertex 0 exists")
            .iter()
            .all(|d| d.is_some())
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut components = Vec::new();
        for start in 0..self.n as u32 {
            if comp[start as usize] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            comp[start as usize] = id;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if comp[v as usize] == usize::MAX {
                        comp[v as usize] = id;
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// An induced subgraph together with the original labels of its vertices.
pub struct InducedView {
    pub graph: Graph,
    /// `vertices[new]` is the original label of vertex `new`.
    pub vertices: Vec<u32>,
}

impl InducedView {
    /// Original label -> new label, if the vertex is part of the view.
    pub fn new_label(&self, old: u32) -> Option<u32> {
        self.vertices
            .iter()
            .position(|&v| v == old)
            .map(|i| i as u32)
    }
}

/// Iterator over set bit positions of a word slice.
pub struct BitIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            word_idx: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros();
        self.current &= self.current - 1;
        Some(self.word_idx as u32 * 64 + bit)
    }
}

/// Growable vertex set stored as a bitset, sized for a particular graph.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(words: usize) -> Self {
        VertexSet {
            words: vec![0; words],
        }
    }

    pub fn full(n: usize, words: usize) -> Self {
        let mut s = VertexSet::empty(words);
        for v in 0..n as u32 {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: u32) {
        self.words[v as usize / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: u32) {
        self.words[v as usize / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: u32) -> bool {
        self.words
            .get(v as usize / 64)
            .is_some_and(|w| w >> (v % 64) & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter::new(&self.words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Intersection with a raw row, e.g. a neighborhood from [`Graph::row`].
    pub fn intersect_row(&self, row: &[u64]) -> VertexSet {
        VertexSet {
            words: self.words.iter().zip(row).map(|(a, b)| a & b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_degrees_round_trip() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 4)]).unwrap();
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(2, 0));
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.degree(3), 0);
        assert_eq!(g.edges(), vec![(0, 1), (0, 4), (1, 2)]);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::new(3);
        assert!(matches!(g.add_edge(1, 1), Err(Error::SelfLoop(1))));
        assert!(matches!(
            g.add_edge(0, 3),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn add_vertex_grows_past_word_boundary() {
        let mut g = Graph::complete(64);
        let v = g.add_vertex();
        assert_eq!(v, 64);
        g.add_edge(0, 64).unwrap();
        assert!(g.has_edge(64, 0));
        assert!(g.has_edge(0, 63));
        assert!(!g.has_edge(1, 64));
        assert_eq!(g.degree(0), 64);
    }

    #[test]
    fn induced_subgraph_of_triangle_pair_is_edge() {
        let g = Graph::complete(3);
        let view = g.induced_subgraph(&[0, 2]).unwrap();
        assert_eq!(view.graph.n(), 2);
        assert_eq!(view.graph.edges(), vec![(0, 1)]);
        assert_eq!(view.new_label(2), Some(1));
    }

    #[test]
    fn induced_subgraph_empty_set_is_empty_graph() {
        let g = Graph::complete(4);
        let view = g.induced_subgraph(&[]).unwrap();
        assert_eq!(view.graph.n(), 0);
        assert_eq!(view.graph.edge_count(), 0);
    }

    #[test]
    fn c5_minus_any_vertex_is_p4() {
        let g = Graph::cycle(5);
        for drop in 0..5u32 {
            let keep: Vec<u32> = (0..5).filter(|&v| v != drop).collect();
            let view = g.induced_subgraph(&keep).unwrap();
            let h = view.graph;
            // A path on 4 vertices: 3 edges, degree sequence 1,1,2,2, connected.
            assert_eq!(h.edge_count(), 3);
            let mut degs: Vec<usize> = (0..4).map(|v| h.degree(v)).collect();
            degs.sort_unstable();
            assert_eq!(degs, vec![1, 1, 2, 2]);
            assert!(h.is_connected());
        }
    }

    #[test]
    fn bfs_distances_on_path() {
        let g = Graph::path(4);
        let d = g.bfs_distances(0).unwrap();
        assert_eq!(d, vec![Some(0), Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn bfs_marks_unreachable() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let d = g.bfs_distances(0).unwrap();
        assert_eq!(d[1], Some(1));
        assert_eq!(d[2], None);
        assert!(!g.is_connected());
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn vertex_set_ops() {
        let mut s = VertexSet::empty(2);
        s.insert(3);
        s.insert(70);
        assert!(s.contains(3));
        assert!(!s.contains(4));
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 70]);
        s.remove(3);
        assert!(!s.contains(3));
    }
}
