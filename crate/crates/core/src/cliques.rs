use crate::graph::{Graph, VertexSet};

/// All maximal cliques, Bron-Kerbosch with pivoting.
///
/// Each clique comes out sorted and the list itself is in lexicographic
/// order, so two runs over equal graphs produce identical output. Isolated
/// vertices are maximal cliques of size one and are included.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<u32>> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    let p = VertexSet::full(g.n(), g.words());
    let x = VertexSet::empty(g.words());
    expand(g, &mut r, p, x, &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn expand(g: &Graph, r: &mut Vec<u32>, p: VertexSet, x: VertexSet, out: &mut Vec<Vec<u32>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    // Pivot: vertex of P ∪ X with the most neighbors in P; its neighbors
    // can be skipped as branch candidates.
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&v| (g.degree_into(v, p.words()), std::cmp::Reverse(v)))
        .expect("P or X nonempty");
    let candidates: Vec<u32> = p.iter().filter(|&v| !g.has_edge(pivot, v)).collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        r.push(v);
        let np = p.intersect_row(g.row(v));
        let nx = x.intersect_row(g.row(v));
        expand(g, r, np, nx, out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Size of the largest intersection between two vertex lists (both sorted).
pub fn intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    /// Brute force oracle: every vertex subset that is a clique and cannot
    /// be extended by any outside vertex.
    fn cliques_by_subsets(g: &Graph) -> Vec<Vec<u32>> {
        let n = g.n();
        assert!(n <= 16);
        let is_clique = |mask: u32| -> bool {
            let vs: Vec<u32> = (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect();
            vs.iter()
                .enumerate()
                .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
        };
        let mut out = Vec::new();
        for mask in 1u32..1 << n {
            if !is_clique(mask) {
                continue;
            }
            let extendable = (0..n as u32)
                .filter(|&v| mask >> v & 1 == 0)
                .any(|v| is_clique(mask | 1 << v));
            if !extendable {
                out.push((0..n as u32).filter(|&v| mask >> v & 1 == 1).collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn complete_graph_is_one_clique() {
        assert_eq!(maximal_cliques(&Graph::complete(4)), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn hexagon_cliques_are_its_edges() {
        let cliques = maximal_cliques(&Graph::cycle(6));
        assert_eq!(
            cliques,
            vec![
                vec![0, 1],
                vec![0, 5],
                vec![1, 2],
                vec![2, 3],
                vec![3, 4],
                vec![4, 5]
            ]
        );
    }

    #[test]
    fn two_triangles_sharing_a_vertex() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(
            maximal_cliques(&g),
            vec![vec![0, 1, 2], vec![2, 3, 4]]
        );
    }

    #[test]
    fn isolated_vertices_are_singletons() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(maximal_cliques(&g), vec![vec![0, 1], vec![2]]);
        assert_eq!(maximal_cliques(&Graph::new(1)), vec![vec![0]]);
        assert!(maximal_cliques(&Graph::new(0)).is_empty());
    }

    #[test]
    fn matches_subset_oracle_on_assorted_graphs() {
        let samples = [
            Graph::cycle(7),
            Graph::complete(5),
            Graph::path(6),
            Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)])
                .unwrap(),
            // Prism: two triangles joined by a matching.
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
                .unwrap(),
        ];
        for g in &samples {
            assert_eq!(maximal_cliques(g), cliques_by_subsets(g), "graph {g:?}");
        }
    }

    #[test]
    fn intersection_of_sorted_lists() {
        assert_eq!(intersection(&[1, 3, 5, 7], &[2, 3, 4, 7, 9]), vec![3, 7]);
        assert!(intersection(&[1, 2], &[3, 4]).is_empty());
    }
}
