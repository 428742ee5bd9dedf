use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::{BTreeMap, HashMap};

/// Hard ceiling for canonical forms: the bit-string fits in a u128 and the
/// label search stays affordable. Catalog entries live far below this.
pub const CANONICAL_MAX: usize = 16;

/// Canonical form of a graph: order plus the minimum adjacency bit-string
/// over all vertex relabelings. Equal keys mean isomorphic graphs.
///
/// Pairs are packed column by column, `(0,1), (0,2), (1,2), (0,3), ...`,
/// most significant first, so integer comparison is string comparison and
/// a partial labeling fixes a contiguous prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey {
    pub n: u8,
    pub bits: u128,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

impl CanonKey {
    /// Two hex digits of the order followed by 32 hex digits of the bits.
    pub fn to_hex(&self) -> String {
        format!("{:02x}{:032x}", self.n, self.bits)
    }

    pub fn from_hex(s: &str) -> Result<CanonKey> {
        if s.len() != 34 {
            return Err(Error::Parse(format!(
                "canonical key must be 34 hex digits, got {}",
                s.len()
            )));
        }
        let n = u8::from_str_radix(&s[..2], 16)
            .map_err(|e| Error::Parse(format!("bad canonical key order: {e}")))?;
        let bits = u128::from_str_radix(&s[2..], 16)
            .map_err(|e| Error::Parse(format!("bad canonical key bits: {e}")))?;
        Ok(CanonKey { n, bits })
    }

    /// Rebuild the graph this key canonically represents.
    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let total = pair_count(n);
        let mut g = Graph::new(n);
        for j in 1..n {
            for i in 0..j {
                let idx = pair_index(i, j);
                if self.bits >> (total - 1 - idx) & 1 == 1 {
                    g.add_edge(i as u32, j as u32).expect("in range");
                }
            }
        }
        g
    }
}

/// The graph's adjacency bit-string under its current labeling.
pub fn labeled_bits(g: &Graph) -> Result<u128> {
    let n = g.n();
    if n > CANONICAL_MAX {
        return Err(Error::TooLargeForCanonical {
            order: n,
            limit: CANONICAL_MAX,
        });
    }
    let total = pair_count(n);
    let mut bits = 0u128;
    for (u, v) in g.edges() {
        let idx = pair_index(u as usize, v as usize);
        bits |= 1 << (total - 1 - idx);
    }
    Ok(bits)
}

pub fn canonical_key(g: &Graph) -> Result<CanonKey> {
    let n = g.n();
    if n > CANONICAL_MAX {
        return Err(Error::TooLargeForCanonical {
            order: n,
            limit: CANONICAL_MAX,
        });
    }
    let mut masks = [0u16; CANONICAL_MAX];
    for u in 0..n as u32 {
        for v in g.neighbors(u) {
            masks[u as usize] |= 1 << v;
        }
    }
    Ok(CanonKey {
        n: n as u8,
        bits: canonical_bits_from_masks(n, &masks),
    })
}

/// Canonical bits for a graph given as per-vertex neighbor masks.
/// Exposed at the crate level for the exhaustive search, which works on
/// masks directly instead of building `Graph` values.
pub(crate) fn canonical_bits_from_masks(n: usize, masks: &[u16; CANONICAL_MAX]) -> u128 {
    if n < 2 {
        return 0;
    }
    let mut search = CanonSearch {
        n,
        masks,
        total: pair_count(n),
        best: u128::MAX,
        perm: [0; CANONICAL_MAX],
        used: 0,
    };
    search.descend(0, 0);
    search.best
}

struct CanonSearch<'a> {
    n: usize,
    masks: &'a [u16; CANONICAL_MAX],
    total: usize,
    best: u128,
    perm: [u8; CANONICAL_MAX],
    used: u16,
}

impl CanonSearch<'_> {
    /// Assign new label `k`, branch and bound on the bit-string prefix.
    /// Candidates are tried cheapest-first so the first completed labeling
    /// is already close to minimal and prunes hard.
    fn descend(&mut self, k: usize, cur: u128) {
        if k == self.n {
            if cur < self.best {
                self.best = cur;
            }
            return;
        }
        let base = pair_index(0, k.max(1));
        let mut order: [(u32, u8); CANONICAL_MAX] = [(0, 0); CANONICAL_MAX];
        let mut count = 0;
        for cand in 0..self.n as u8 {
            if self.used >> cand & 1 == 1 {
                continue;
            }
            let mut col = 0u32;
            for i in 0..k {
                if self.masks[self.perm[i] as usize] >> cand & 1 == 1 {
                    col |= 1 << (k - 1 - i);
                }
            }
            order[count] = (col, cand);
            count += 1;
        }
        order[..count].sort_unstable();
        let filled = base + k;
        for &(col, cand) in &order[..count] {
            let mut next = cur;
            if k > 0 {
                next |= (col as u128) << (self.total - filled);
            }
            if k > 0 && next >> (self.total - filled) > self.best >> (self.total - filled) {
                // Candidates are sorted by their column bits; everything
                // after this one is at least as large.
                break;
            }
            self.perm[k] = cand;
            self.used |= 1 << cand;
            self.descend(k + 1, next);
            self.used &= !(1 << cand);
        }
    }
}

/// Memo for canonical forms keyed by the labeled bit-string, for callers
/// that canonicalize many small graphs with repeats.
#[derive(Default)]
pub struct CanonCache {
    map: HashMap<(u8, u128), u128>,
}

impl CanonCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn canonical_key(&mut self, g: &Graph) -> Result<CanonKey> {
        let raw = labeled_bits(g)?;
        let n = g.n() as u8;
        if let Some(&bits) = self.map.get(&(n, raw)) {
            return Ok(CanonKey { n, bits });
        }
        let key = canonical_key(g)?;
        self.map.insert((n, raw), key.bits);
        Ok(key)
    }
}

/// Isomorphism test. Returns a vertex mapping from `g` onto `h`, or `None`.
///
/// Iterated neighborhood refinement (degree, then multiset of neighbor
/// classes, to a fixed point) splits the vertices into classes; the
/// backtracking then only matches within classes. No canonical form is
/// involved, so this works past the canonical size limit.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<u32>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let (gc, hc) = refine_jointly(g, h)?;
    // Most constrained first: rare classes, then lowest id.
    let mut class_size = BTreeMap::new();
    for &c in &gc {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| (class_size[&gc[v as usize]], gc[v as usize], v));
    let mut mapping = vec![u32::MAX; n];
    let mut taken = vec![false; n];
    if match_next(g, h, &gc, &hc, &order, 0, &mut mapping, &mut taken) {
        Some(mapping)
    } else {
        None
    }
}

/// Refinement classes computed jointly so equal signatures get equal ids
/// across the two graphs. `None` when the class multisets ever differ.
fn refine_jointly(g: &Graph, h: &Graph) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = g.n();
    let mut gc = vec![0u32; n];
    let mut hc = vec![0u32; n];
    for _ in 0..n.max(1) {
        let mut palette: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
        let signature = |graph: &Graph, colors: &[u32], v: u32| {
            let mut neigh: Vec<u32> = graph.neighbors(v).map(|u| colors[u as usize]).collect();
            neigh.sort_unstable();
            (colors[v as usize], neigh)
        };
        let mut signatures_g = Vec::with_capacity(n);
        let mut signatures_h = Vec::with_capacity(n);
        for v in 0..n as u32 {
            signatures_g.push(signature(g, &gc, v));
            signatures_h.push(signature(h, &hc, v));
        }
        for sig in signatures_g.iter().chain(signatures_h.iter()) {
            let next = palette.len() as u32;
            palette.entry(sig.clone()).or_insert(next);
        }
        let new_gc: Vec<u32> = signatures_g.iter().map(|s| palette[s]).collect();
        let new_hc: Vec<u32> = signatures_h.iter().map(|s| palette[s]).collect();
        let mut mg = new_gc.clone();
        let mut mh = new_hc.clone();
        mg.sort_unstable();
        mh.sort_unstable();
        if mg != mh {
            return None;
        }
        let stable = new_gc == gc && new_hc == hc;
        gc = new_gc;
        hc = new_hc;
        if stable {
            break;
        }
    }
    Some((gc, hc))
}

#[allow(clippy::too_many_arguments)]
fn match_next(
    g: &Graph,
    h: &Graph,
    gc: &[u32],
    hc: &[u32],
    order: &[u32],
    idx: usize,
    mapping: &mut [u32],
    taken: &mut [bool],
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    'candidates: for w in 0..h.n() as u32 {
        if taken[w as usize] || hc[w as usize] != gc[v as usize] {
            continue;
        }
        for &prev in &order[..idx] {
            if g.has_edge(v, prev) != h.has_edge(w, mapping[prev as usize]) {
                continue 'candidates;
            }
        }
        mapping[v as usize] = w;
        taken[w as usize] = true;
        if match_next(g, h, gc, hc, order, idx + 1, mapping, taken) {
            return true;
        }
        mapping[v as usize] = u32::MAX;
        taken[w as usize] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: minimum bit-string by trying every permutation outright.
    fn canonical_by_all_permutations(g: &Graph) -> u128 {
        let n = g.n();
        let total = pair_count(n);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u128::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut bits = 0u128;
            for j in 1..n {
                for i in 0..j {
                    if g.has_edge(p[i] as u32, p[j] as u32) {
                        bits |= 1 << (total - 1 - pair_index(i, j));
                    }
                }
            }
            best = best.min(bits);
        });
        if n < 2 {
            0
        } else {
            best
        }
    }

    fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }

    #[test]
    fn canonical_matches_permutation_oracle() {
        let samples = [
            Graph::new(0),
            Graph::new(1),
            Graph::complete(4),
            Graph::cycle(5),
            Graph::path(6),
            Graph::from_edges(6, &[(0, 3), (3, 1), (1, 4), (4, 2), (2, 5)]).unwrap(),
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).unwrap(),
        ];
        for g in &samples {
            let key = canonical_key(g).unwrap();
            assert_eq!(key.bits, canonical_by_all_permutations(g), "graph {g:?}");
        }
    }

    #[test]
    fn canonical_is_invariant_under_relabeling() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3)])
            .unwrap();
        // Rotate labels by 2.
        let relabel: Vec<u32> = (0..7).map(|v| (v + 2) % 7).collect();
        let mut g2 = Graph::new(7);
        for (u, v) in g.edges() {
            g2.add_edge(relabel[u as usize], relabel[v as usize]).unwrap();
        }
        assert_eq!(canonical_key(&g).unwrap(), canonical_key(&g2).unwrap());
    }

    #[test]
    fn canonical_key_round_trips_through_hex_and_graph() {
        let g = Graph::cycle(6);
        let key = canonical_key(&g).unwrap();
        let hex = key.to_hex();
        assert_eq!(CanonKey::from_hex(&hex).unwrap(), key);
        let back = key.to_graph();
        assert_eq!(canonical_key(&back).unwrap(), key);
        assert!(is_isomorphic(&g, &back).is_some());
    }

    #[test]
    fn canonical_rejects_large_graphs() {
        let g = Graph::new(17);
        assert!(matches!(
            canonical_key(&g),
            Err(Error::TooLargeForCanonical { order: 17, .. })
        ));
    }

    #[test]
    fn square_is_k22_but_hexagon_is_not_two_triangles() {
        let k22 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let mapping = is_isomorphic(&Graph::cycle(4), &k22).expect("C4 is K2,2");
        // Mapping must preserve adjacency.
        let c4 = Graph::cycle(4);
        for u in 0..4u32 {
            for v in u + 1..4 {
                assert_eq!(
                    c4.has_edge(u, v),
                    k22.has_edge(mapping[u as usize], mapping[v as usize])
                );
            }
        }

        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(is_isomorphic(&Graph::cycle(6), &two_triangles).is_none());
        assert_eq!(
            canonical_key(&Graph::cycle(4)).unwrap(),
            canonical_key(&k22).unwrap()
        );
        assert_ne!(
            canonical_key(&Graph::cycle(6)).unwrap(),
            canonical_key(&two_triangles).unwrap()
        );
    }

    #[test]
    fn isomorphism_on_shuffled_graph() {
        let g = Graph::from_edges(
            8,
            &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 4)],
        )
        .unwrap();
        let relabel: Vec<u32> = vec![5, 0, 3, 7, 1, 6, 2, 4];
        let mut h = Graph::new(8);
        for (u, v) in g.edges() {
            h.add_edge(relabel[u as usize], relabel[v as usize]).unwrap();
        }
        let mapping = is_isomorphic(&g, &h).expect("relabelings are isomorphic");
        for (u, v) in g.edges() {
            assert!(h.has_edge(mapping[u as usize], mapping[v as usize]));
        }
    }

    #[test]
    fn regular_non_isomorphic_pair_distinguished() {
        // C6 and the prism are both 2- and 3-regular tricks' classics; use
        // two cubic graphs: K3,3 and the prism, both 3-regular on 6 vertices.
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        let prism = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(is_isomorphic(&k33, &prism).is_none());
        assert_ne!(
            canonical_key(&k33).unwrap(),
            canonical_key(&prism).unwrap()
        );
    }

    #[test]
    fn canon_cache_agrees_with_direct_computation() {
        let mut cache = CanonCache::new();
        for g in [Graph::cycle(5), Graph::complete(3), Graph::cycle(5)] {
            assert_eq!(cache.canonical_key(&g).unwrap(), canonical_key(&g).unwrap());
        }
    }
}
