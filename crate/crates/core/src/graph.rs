//! Simple-graph representation, degree queries, structural validation, and
//! edge-list text I/O.
//!
//! Vertices are dense integer indices `0..n`; optional labels are pure
//! decoration. Edges are stored canonically as pairs `(u, v)` with `u < v`,
//! sorted lexicographically, so every downstream algorithm sees a
//! deterministic edge order. Construction enforces set semantics: no
//! self-loops, no parallel edges, every endpoint in range. The empty graph
//! (`n >= 1`, no edges) is legal; `n = 0` is rejected, since degree
//! intervals with `d >= 1` are meaningless on it.

use thiserror::Error;

/// Structural validation errors raised at construction time.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for vertex count {vertices}")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("expected {expected} vertex labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// An undirected simple graph on vertices `0..n`.
///
/// Immutable after construction; all operations are pure, so values may be
/// shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl SimpleGraph {
    /// Builds a graph from a vertex count and an edge collection.
    ///
    /// Edges are normalized to `u < v` and sorted; any self-loop, duplicate
    /// pair (in either orientation), or out-of-range endpoint is rejected.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    vertices: n,
                });
            }
            canon.push((u, v));
        }
        canon.sort_unstable();
        for w in canon.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        Ok(SimpleGraph {
            n,
            edges: canon,
            adjacency,
            labels: None,
        })
    }

    /// Same as [`SimpleGraph::new`] but attaches one text label per vertex.
    pub fn with_labels(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Vec<String>,
    ) -> Result<Self, GraphError> {
        if labels.len() != n {
            return Err(GraphError::LabelCount {
                expected: n,
                got: labels.len(),
            });
        }
        let mut g = Self::new(n, edges)?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order: `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Position of edge `{u, v}` in the canonical edge order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u == v || u >= self.n || v >= self.n {
            return None;
        }
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Minimum and maximum vertex degree. Total because `n = 0` is
    /// unconstructible: the empty-graph case is rejected in [`SimpleGraph::new`].
    pub fn degree_profile(&self) -> DegreeProfile {
        let mut d_min = usize::MAX;
        let mut d_max = 0usize;
        for v in 0..self.n {
            let d = self.degree(v);
            d_min = d_min.min(d);
            d_max = d_max.max(d);
        }
        DegreeProfile { d_min, d_max }
    }

    /// Whether every vertex degree lies in the interval `[d, d+s]`.
    pub fn is_dds_graph(&self, d: i64, s: i64) -> bool {
        if d < 0 || s < 0 {
            return false;
        }
        (0..self.n).all(|v| {
            let deg = self.degree(v) as i64;
            d <= deg && deg <= d + s
        })
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> SimpleGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        SimpleGraph::new(n, edges).expect("complete graph is valid")
    }

    /// Cycle `C_n` (`n >= 3`).
    pub fn cycle(n: usize) -> SimpleGraph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges = (0..n).map(|u| (u, (u + 1) % n));
        SimpleGraph::new(n, edges).expect("cycle is valid")
    }

    /// Path on `n` vertices (`n - 1` edges).
    pub fn path(n: usize) -> SimpleGraph {
        let edges = (0..n.saturating_sub(1)).map(|u| (u, u + 1));
        SimpleGraph::new(n, edges).expect("path is valid")
    }

    /// Complete bipartite graph `K_{p,q}`; part one is `0..p`.
    pub fn complete_bipartite(p: usize, q: usize) -> SimpleGraph {
        let edges = (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v)));
        SimpleGraph::new(p + q, edges).expect("complete bipartite graph is valid")
    }

    /// Star `K_{1,k}` with the centre at vertex `0`.
    pub fn star(k: usize) -> SimpleGraph {
        let edges = (1..=k).map(|v| (0, v));
        SimpleGraph::new(k + 1, edges).expect("star is valid")
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, five spokes.
    pub fn petersen() -> SimpleGraph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        SimpleGraph::new(10, edges).expect("Petersen graph is valid")
    }
}

/// Minimum and maximum degree of a non-empty graph.
///
/// For a `(d, d+s)`-graph report, `d_min = d` and `d_max <= d + s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeProfile {
    pub d_min: usize,
    pub d_max: usize,
}

impl DegreeProfile {
    /// The tightest `(d, d+s)` window: `d = d_min`, `s = d_max - d_min`.
    pub fn window(&self) -> (i64, i64) {
        (self.d_min as i64, (self.d_max - self.d_min) as i64)
    }
}

/// Errors raised while parsing edge-list text.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ParseError {
    #[error("line {line}: missing or malformed header, expected `n m`")]
    BadHeader { line: usize },
    #[error("line {line}: malformed edge, expected `u v`")]
    BadEdge { line: usize },
    #[error("line {line}: edge endpoints must satisfy u < v")]
    EdgeOrder { line: usize },
    #[error("line {line}: self-loop")]
    SelfLoop { line: usize },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("line {line}: vertex {vertex} out of range for vertex count {vertices}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        vertices: usize,
    },
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

/// Parses the edge-list text format.
///
/// First non-comment line is `n m` (vertex count, edge count), followed by
/// `m` lines `u v` with `0 <= u < v < n`, whitespace-separated. Lines
/// starting with `#` and blank lines are ignored.
pub fn read_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        match header {
            None => {
                let n = it
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(ParseError::BadHeader { line: line_no })?;
                let m = it
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(ParseError::BadHeader { line: line_no })?;
                if it.next().is_some() {
                    return Err(ParseError::BadHeader { line: line_no });
                }
                header = Some((n, m));
            }
            Some((n, _)) => {
                let u = it
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(ParseError::BadEdge { line: line_no })?;
                let v = it
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(ParseError::BadEdge { line: line_no })?;
                if it.next().is_some() {
                    return Err(ParseError::BadEdge { line: line_no });
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line: line_no });
                }
                if u > v {
                    return Err(ParseError::EdgeOrder { line: line_no });
                }
                if v >= n {
                    return Err(ParseError::VertexOutOfRange {
                        line: line_no,
                        vertex: v,
                        vertices: n,
                    });
                }
                if !seen.insert((u, v)) {
                    return Err(ParseError::DuplicateEdge { line: line_no });
                }
                edges.push((u, v));
            }
        }
    }

    let (n, m) = header.ok_or(ParseError::BadHeader { line: 1 })?;
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(SimpleGraph::new(n, edges)?)
}

/// Writes the edge-list text format; inverse of [`read_graph`] up to
/// edge order.
pub fn write_graph(g: &SimpleGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.vertex_count(), g.edge_count()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u, v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degree_profile_cycle_and_complete() {
        let c6 = SimpleGraph::cycle(6);
        assert_eq!(
            c6.degree_profile(),
            DegreeProfile { d_min: 2, d_max: 2 }
        );
        let k4 = SimpleGraph::complete(4);
        assert_eq!(
            k4.degree_profile(),
            DegreeProfile { d_min: 3, d_max: 3 }
        );
    }

    #[test]
    fn dds_membership() {
        let c6 = SimpleGraph::cycle(6);
        assert!(c6.is_dds_graph(2, 0));
        assert!(c6.is_dds_graph(2, 3));
        let k4 = SimpleGraph::complete(4);
        assert!(!k4.is_dds_graph(2, 0));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(SimpleGraph::new(0, []), Err(GraphError::EmptyGraph));
        assert_eq!(
            SimpleGraph::new(3, [(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            SimpleGraph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            SimpleGraph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange {
                vertex: 3,
                vertices: 3
            })
        );
    }

    #[test]
    fn empty_graph_with_vertices_is_legal() {
        let g = SimpleGraph::new(4, []).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.degree_profile(), DegreeProfile { d_min: 0, d_max: 0 });
    }

    #[test]
    fn parse_path_on_three_vertices() {
        let g = read_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_rejects_self_loop() {
        assert_eq!(
            read_graph("2 1\n0 0\n"),
            Err(ParseError::SelfLoop { line: 2 })
        );
    }

    #[test]
    fn parse_rejects_wrong_order_duplicates_and_range() {
        assert_eq!(
            read_graph("3 1\n2 1\n"),
            Err(ParseError::EdgeOrder { line: 2 })
        );
        assert_eq!(
            read_graph("3 2\n0 1\n0 1\n"),
            Err(ParseError::DuplicateEdge { line: 3 })
        );
        assert_eq!(
            read_graph("3 1\n0 5\n"),
            Err(ParseError::VertexOutOfRange {
                line: 2,
                vertex: 5,
                vertices: 3
            })
        );
        assert_eq!(
            read_graph("3 2\n0 1\n"),
            Err(ParseError::EdgeCountMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let g = read_graph("# a path\n\n3 2\n0 1\n# middle\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn round_trip_cycle() {
        let c6 = SimpleGraph::cycle(6);
        let text = write_graph(&c6);
        assert_eq!(read_graph(&text).unwrap(), c6);
    }

    #[test]
    fn petersen_is_cubic() {
        let p = SimpleGraph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.is_dds_graph(3, 0));
    }

    fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
        (1usize..10).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
                let edges = pairs
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &keep)| keep)
                    .map(|(&e, _)| e);
                SimpleGraph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip_identity(g in arb_graph()) {
            let text = write_graph(&g);
            prop_assert_eq!(read_graph(&text).unwrap(), g);
        }

        #[test]
        fn profile_is_ordered(g in arb_graph()) {
            let p = g.degree_profile();
            prop_assert!(p.d_min <= p.d_max);
        }

        // Multigraph/pseudograph inputs (random multisets of pairs, loops
        // allowed) must be rejected exactly when invalid.
        #[test]
        fn rejects_multisets(
            n in 1usize..8,
            raw in proptest::collection::vec((0usize..8, 0usize..8), 0..20)
        ) {
            let in_range: Vec<(usize, usize)> =
                raw.iter().copied().filter(|&(u, v)| u < n && v < n).collect();
            let has_loop = in_range.iter().any(|&(u, v)| u == v);
            let mut canon: Vec<(usize, usize)> = in_range
                .iter()
                .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
                .collect();
            canon.sort_unstable();
            let has_dup = canon.windows(2).any(|w| w[0] == w[1] && w[0].0 != w[0].1);
            let out_of_range = raw.iter().any(|&(u, v)| u >= n || v >= n);

            let result = SimpleGraph::new(n, raw);
            if has_loop || has_dup || out_of_range {
                prop_assert!(result.is_err());
            } else {
                prop_assert!(result.is_ok());
            }
        }
    }
}
