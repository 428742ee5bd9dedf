use crate::error::{Error, Result};
use crate::geodesics::SpgGraph;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Plain graph as JSON: `{"n": int, "edges": [[u,v],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl GraphJson {
    pub fn of(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::from_edges(self.n, &self.edges)
    }
}

/// Computed SPG as JSON: geodesic interiors, labeled edges, endpoints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpgJson {
    pub geodesics: Vec<Vec<u32>>,
    pub edges: Vec<(u32, u32, u32)>,
    pub a: u32,
    pub b: u32,
}

impl SpgJson {
    pub fn of(spg: &SpgGraph) -> Self {
        SpgJson {
            geodesics: spg.geodesics.iter().map(|g| g.interior.clone()).collect(),
            edges: spg.edges.clone(),
            a: spg.a,
            b: spg.b,
        }
    }

    /// The SPG as a plain unlabeled graph (geodesics become vertices
    /// 0..k in listed order).
    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::new(self.geodesics.len());
        for &(i, j, _) in &self.edges {
            if i == j {
                return Err(Error::Parse(format!("self-loop on SPG vertex {i}")));
            }
            g.add_edge(i, j)?;
        }
        Ok(g)
    }
}

/// Parse the edge-list text format.
///
/// Line 1 is `n m`; each of the following m lines is one edge `u v` with
/// 0 <= u < v < n. Lines starting with `#` and blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first_no, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let mut it = header.split_whitespace();
    let n: usize = parse_field(it.next(), first_no, "vertex count")?;
    let m: usize = parse_field(it.next(), first_no, "edge count")?;
    if it.next().is_some() {
        return Err(Error::Parse(format!(
            "line {first_no}: expected exactly `n m`"
        )));
    }
    let mut g = Graph::new(n);
    let mut seen = 0usize;
    for (line_no, line) in lines {
        let mut it = line.split_whitespace();
        let u: u32 = parse_field(it.next(), line_no, "edge endpoint")?;
        let v: u32 = parse_field(it.next(), line_no, "edge endpoint")?;
        if it.next().is_some() {
            return Err(Error::Parse(format!(
                "line {line_no}: expected exactly `u v`"
            )));
        }
        if u >= v {
            return Err(Error::Parse(format!(
                "line {line_no}: edges must satisfy u < v, got {u} {v}"
            )));
        }
        if g.has_edge(u, v) {
            return Err(Error::Parse(format!("line {line_no}: duplicate edge {u} {v}")));
        }
        g.add_edge(u, v)
            .map_err(|e| Error::Parse(format!("line {line_no}: {e}")))?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse(format!(
            "header declares {m} edges but {seen} were given"
        )));
    }
    Ok(g)
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line_no: usize,
    what: &str,
) -> Result<T> {
    let raw = field
        .ok_or_else(|| Error::Parse(format!("line {line_no}: missing {what}")))?;
    raw.parse()
        .map_err(|_| Error::Parse(format!("line {line_no}: invalid {what} `{raw}`")))
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Read a graph from either supported format, sniffing by the first
/// non-whitespace byte: `{` means JSON, anything else the edge list.
/// JSON with a "geodesics" key is an SPG, taken as its plain graph.
pub fn read_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        if let Ok(spg) = serde_json::from_str::<SpgJson>(text) {
            return spg.to_graph();
        }
        let parsed: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        parsed.to_graph()
    } else {
        parse_edge_list(text)
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphJson::of(g)).expect("graph serializes")
}

pub fn spg_to_json(spg: &SpgGraph) -> String {
    serde_json::to_string_pretty(&SpgJson::of(spg)).expect("spg serializes")
}

/// DOT rendering of an SPG. Vertices are shown with their geodesic
/// interiors; each edge is labeled with its difference index.
pub fn spg_to_dot(spg: &SpgGraph) -> String {
    let mut out = String::from("graph spg {\n");
    for (i, geo) in spg.geodesics.iter().enumerate() {
        let interior: Vec<String> = geo.interior.iter().map(u32::to_string).collect();
        out.push_str(&format!(
            "  {i} [label=\"({})\"];\n",
            interior.join(" ")
        ));
    }
    for &(i, j, level) in &spg.edges {
        out.push_str(&format!("  {i} -- {j} [label={level}];\n"));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of a plain graph.
pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph g {\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::build_spg;

    #[test]
    fn edge_list_round_trips() {
        let g = Graph::cycle(5);
        let text = write_edge_list(&g);
        let back = parse_edge_list(&text).expect("own output parses");
        assert_eq!(back.n(), 5);
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn edge_list_accepts_comments_and_blank_lines() {
        let text = "# a triangle\n3 3\n\n0 1\n# middle comment\n0 2\n1 2\n";
        let g = parse_edge_list(text).expect("commented input parses");
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn edge_list_rejects_malformed_input() {
        for bad in [
            "",
            "3\n",
            "3 1\n1 0\n",
            "3 1\n0 5\n",
            "3 2\n0 1\n",
            "3 1\n0 1\n1 2\n",
            "x y\n",
            "3 1\n0 1 2\n",
            "3 1\n0 0\n",
        ] {
            assert!(
                matches!(parse_edge_list(bad), Err(Error::Parse(_))),
                "expected parse error for {bad:?}"
            );
        }
    }

    #[test]
    fn duplicate_edge_is_a_parse_error() {
        let err = parse_edge_list("3 2\n0 1\n0 1\n").expect_err("duplicate edge");
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn graph_json_round_trips() {
        let g = Graph::complete(4);
        let back = read_graph(&graph_to_json(&g)).expect("own json parses");
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn spg_json_reparses_as_plain_graph() {
        let g = Graph::cycle(4);
        let spg = build_spg(&g, 0, 2, 100).expect("spg");
        let text = spg_to_json(&spg);
        let back = read_graph(&text).expect("spg json accepted");
        assert_eq!(back.n(), 2);
        assert_eq!(back.edges(), vec![(0, 1)]);
    }

    #[test]
    fn dot_output_carries_difference_indices() {
        let mut g = Graph::new(6);
        for m in [1, 2] {
            g.add_edge(0, m).unwrap();
            for w in [3, 4] {
                g.add_edge(m, w).unwrap();
            }
        }
        g.add_edge(3, 5).unwrap();
        g.add_edge(4, 5).unwrap();
        let spg = build_spg(&g, 0, 5, 100).expect("spg");
        let dot = spg_to_dot(&spg);
        assert!(dot.contains("label=1"), "level-1 labels missing:\n{dot}");
        assert!(dot.contains("label=2"), "level-2 labels missing:\n{dot}");
        assert!(dot.starts_with("graph spg {"));
    }

    #[test]
    fn format_sniffing_distinguishes_json_and_edge_list() {
        assert!(read_graph("  {\"n\": 2, \"edges\": [[0,1]]}").is_ok());
        assert!(read_graph("2 1\n0 1\n").is_ok());
        assert!(matches!(
            read_graph("{\"nope\": 1}"),
            Err(Error::Parse(_))
        ));
    }
}
