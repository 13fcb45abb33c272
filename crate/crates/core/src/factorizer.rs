//! Constructive `(r, r+a)`-factorizations with a prescribed number of
//! factors.
//!
//! Three routes, dispatched by [`factorize`]:
//!
//! * [`factorize_interior`] — the pendant-augmentation pipeline for factor
//!   counts `x` strictly inside the window (`x r < d_min` and
//!   `d_max < x (r+a)` for the graph's actual degrees): attach a pendant
//!   edge at every vertex whose degree `x` divides, colour the augmented
//!   graph equitably with `x` colours, and restrict the colouring back.
//!   Each colour class is then an `(r, r+a)`-factor.
//! * [`factorize_exact`] — complete backtracking with degree-bound pruning
//!   for the boundary counts the closed-endpoint cases allow, capped by
//!   edge count.
//! * `x = 1` — the graph is its own factor exactly when its degrees lie in
//!   `[r, r+a]`.
//!
//! Every factorization returned by any route is re-checked by
//! [`verify_factorization`] before it is handed out.

use crate::colouring::{equitable_colour_simple, ColouringError};
use crate::graph::SimpleGraph;
use thiserror::Error;

/// Default edge-count cap for the exact backtracking solver.
pub const DEFAULT_EXACT_CAP: usize = 40;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FactorizeError {
    #[error("x = {x} is not strictly interior for degrees [{d_min}, {d_max}] and window ({r}, {r_plus_a})")]
    XOutOfRange {
        x: usize,
        d_min: usize,
        d_max: usize,
        r: i64,
        r_plus_a: i64,
    },
    #[error("factor count must be at least 2 for pendant augmentation")]
    InvalidFactorCount,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("graph has {edges} edges, above the exact-search cap {cap}")]
    TooLarge { edges: usize, cap: usize },
    #[error("constructive pipeline failed: {0}")]
    ConstructionFailed(String),
    #[error("internal error: produced factorization failed verification: {0}")]
    Unverified(String),
}

/// Errors raised while parsing factorization text.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FactorizationParseError {
    #[error("line {line}: missing or malformed header, expected `x r a`")]
    BadHeader { line: usize },
    #[error("line {line}: malformed entry, expected `u v factor`")]
    BadEntry { line: usize },
    #[error("line {line}: ({u}, {v}) is not an edge of the graph")]
    UnknownEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: edge assigned twice")]
    DuplicateAssignment { line: usize },
    #[error("line {line}: factor index {got} out of range for x = {x}")]
    FactorOutOfRange { line: usize, got: usize, x: usize },
    #[error("{assigned} of {edges} edges assigned")]
    IncompleteAssignment { assigned: usize, edges: usize },
}

/// An assignment of every edge to one of `x` factor indices, together with
/// the degree window `(r, r+a)` it claims to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub x: usize,
    pub r: i64,
    pub a: i64,
    factor_of: Vec<usize>,
}

impl Factorization {
    pub fn new(x: usize, r: i64, a: i64, factor_of: Vec<usize>) -> Self {
        assert!(x >= 1);
        Factorization { x, r, a, factor_of }
    }

    /// Factor index of the edge at `edge_index` in canonical order.
    pub fn factor(&self, edge_index: usize) -> usize {
        self.factor_of[edge_index]
    }

    pub fn assignments(&self) -> &[usize] {
        &self.factor_of
    }

    /// Degree of `v` within factor `i`.
    pub fn factor_degree(&self, g: &SimpleGraph, v: usize, i: usize) -> usize {
        g.edges()
            .iter()
            .enumerate()
            .filter(|&(e, &(a, b))| (a == v || b == v) && self.factor_of[e] == i)
            .count()
    }
}

/// One verification failure inside a factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongEdgeCount { expected: usize, got: usize },
    FactorIndexOutOfRange { edge: usize, got: usize, x: usize },
    DegreeBelow { vertex: usize, factor: usize, degree: usize },
    DegreeAbove { vertex: usize, factor: usize, degree: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::WrongEdgeCount { expected, got } => {
                write!(f, "expected {expected} edge assignments, got {got}")
            }
            Violation::FactorIndexOutOfRange { edge, got, x } => {
                write!(f, "edge {edge} assigned factor {got}, out of range for x = {x}")
            }
            Violation::DegreeBelow { vertex, factor, degree } => {
                write!(f, "vertex {vertex} has degree {degree} in factor {factor}, below r")
            }
            Violation::DegreeAbove { vertex, factor, degree } => {
                write!(f, "vertex {vertex} has degree {degree} in factor {factor}, above r+a")
            }
        }
    }
}

/// Outcome of checking partition, spanning-ness and degree windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok {
            write!(f, "valid")
        } else {
            writeln!(f, "invalid ({} violations):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks that the factors partition `E(G)` and that every factor is a
/// spanning subgraph with all degrees in `[r, r+a]`. Total: always returns
/// a report listing every violation found.
pub fn verify_factorization(g: &SimpleGraph, f: &Factorization) -> VerificationReport {
    let mut violations = Vec::new();
    let m = g.edge_count();
    if f.assignments().len() != m {
        violations.push(Violation::WrongEdgeCount {
            expected: m,
            got: f.assignments().len(),
        });
        return VerificationReport {
            ok: false,
            violations,
        };
    }
    for (e, &fac) in f.assignments().iter().enumerate() {
        if fac >= f.x {
            violations.push(Violation::FactorIndexOutOfRange {
                edge: e,
                got: fac,
                x: f.x,
            });
        }
    }
    if violations.is_empty() {
        let n = g.vertex_count();
        let mut deg = vec![0i64; n * f.x];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let fac = f.factor_of[e];
            deg[u * f.x + fac] += 1;
            deg[v * f.x + fac] += 1;
        }
        for v in 0..n {
            for i in 0..f.x {
                let d = deg[v * f.x + i];
                if d < f.r {
                    violations.push(Violation::DegreeBelow {
                        vertex: v,
                        factor: i,
                        degree: d as usize,
                    });
                } else if d > f.r + f.a {
                    violations.push(Violation::DegreeAbove {
                        vertex: v,
                        factor: i,
                        degree: d as usize,
                    });
                }
            }
        }
    }
    VerificationReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// A base graph with a pendant edge attached at every vertex whose degree
/// `x` divides, so that `x` divides no degree of the combined graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedGraph {
    pub graph: SimpleGraph,
    pub base_vertices: usize,
    /// `(base vertex, pendant vertex)` pairs, ascending by base vertex.
    pub pendants: Vec<(usize, usize)>,
}

/// Joins a pendant edge to each vertex `v` of `G` with `x | d(v)`.
/// Requires `x >= 2`, which also keeps pendant degrees (1) indivisible.
pub fn augment_pendants(g: &SimpleGraph, x: usize) -> Result<AugmentedGraph, FactorizeError> {
    if x <= 1 {
        return Err(FactorizeError::InvalidFactorCount);
    }
    let n = g.vertex_count();
    let divisible: Vec<usize> = (0..n).filter(|&v| g.degree(v) % x == 0).collect();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut pendants = Vec::with_capacity(divisible.len());
    for (i, &v) in divisible.iter().enumerate() {
        let p = n + i;
        edges.push((v, p));
        pendants.push((v, p));
    }
    let graph = SimpleGraph::new(n + divisible.len(), edges)
        .map_err(|e| FactorizeError::InvalidParams(e.to_string()))?;
    debug_assert!((0..graph.vertex_count()).all(|v| graph.degree(v) % x != 0));
    Ok(AugmentedGraph {
        graph,
        base_vertices: n,
        pendants,
    })
}

fn trivial_factorization(g: &SimpleGraph, r: i64, a: i64) -> Result<Factorization, FactorizeError> {
    let f = Factorization::new(1, r, a, vec![0; g.edge_count()]);
    let report = verify_factorization(g, &f);
    if !report.ok {
        return Err(FactorizeError::Unverified(report.to_string()));
    }
    Ok(f)
}

/// The pendant-augmentation pipeline for strictly interior `x`: requires
/// `x r < d_min` and `d_max < x (r + a)` for the graph's actual degree
/// profile. On an engine stall the exact solver takes over when the graph
/// is small enough.
pub fn factorize_interior(
    g: &SimpleGraph,
    r: i64,
    a: i64,
    x: usize,
) -> Result<Factorization, FactorizeError> {
    if r < 1 || a < 0 || x < 1 {
        return Err(FactorizeError::InvalidParams(format!(
            "need r >= 1, a >= 0, x >= 1 (got r={r}, a={a}, x={x})"
        )));
    }
    let profile = g.degree_profile();
    let (d_min, d_max) = (profile.d_min as i64, profile.d_max as i64);
    let xi = x as i64;
    if !(xi * r < d_min && d_max < xi * (r + a)) {
        return Err(FactorizeError::XOutOfRange {
            x,
            d_min: profile.d_min,
            d_max: profile.d_max,
            r,
            r_plus_a: r + a,
        });
    }
    if x == 1 {
        return trivial_factorization(g, r, a);
    }
    let aug = augment_pendants(g, x)?;
    match equitable_colour_simple(&aug.graph, x) {
        Ok(col) => {
            let factor_of: Vec<usize> = g
                .edges()
                .iter()
                .map(|&(u, v)| {
                    let idx = aug
                        .graph
                        .edge_index(u, v)
                        .expect("base edge survives augmentation");
                    col.colour(idx)
                })
                .collect();
            let f = Factorization::new(x, r, a, factor_of);
            let report = verify_factorization(g, &f);
            if !report.ok {
                return Err(FactorizeError::Unverified(report.to_string()));
            }
            Ok(f)
        }
        Err(ColouringError::BalancingFailed { .. }) if g.edge_count() <= DEFAULT_EXACT_CAP => {
            factorize_exact(g, r, a, x)?.ok_or_else(|| {
                FactorizeError::ConstructionFailed(
                    "balancing stalled and exact search found no factorization".into(),
                )
            })
        }
        Err(e) => Err(FactorizeError::ConstructionFailed(e.to_string())),
    }
}

struct ExactSearch<'g> {
    g: &'g SimpleGraph,
    x: usize,
    r: i64,
    upper: i64,
    order: Vec<usize>,
    assignment: Vec<usize>,
    cnt: Vec<i64>,
    remaining: Vec<i64>,
}

impl<'g> ExactSearch<'g> {
    fn feasible_at(&self, v: usize) -> bool {
        let mut deficit = 0;
        for f in 0..self.x {
            deficit += (self.r - self.cnt[v * self.x + f]).max(0);
        }
        deficit <= self.remaining[v]
    }

    fn search(&mut self, pos: usize, max_used: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let e = self.order[pos];
        let (u, v) = self.g.edges()[e];
        let limit = (max_used + 1).min(self.x - 1);
        for f in 0..=limit {
            if self.cnt[u * self.x + f] + 1 > self.upper
                || self.cnt[v * self.x + f] + 1 > self.upper
            {
                continue;
            }
            self.cnt[u * self.x + f] += 1;
            self.cnt[v * self.x + f] += 1;
            self.remaining[u] -= 1;
            self.remaining[v] -= 1;
            self.assignment[e] = f;
            if self.feasible_at(u)
                && self.feasible_at(v)
                && self.search(pos + 1, max_used.max(f))
            {
                return true;
            }
            self.cnt[u * self.x + f] -= 1;
            self.cnt[v * self.x + f] -= 1;
            self.remaining[u] += 1;
            self.remaining[v] += 1;
        }
        false
    }
}

/// Complete backtracking search for an `(r, r+a)`-factorization with `x`
/// factors, with the default edge cap. Returns `Ok(None)` only on a
/// definitive exhaustion of the search space.
pub fn factorize_exact(
    g: &SimpleGraph,
    r: i64,
    a: i64,
    x: usize,
) -> Result<Option<Factorization>, FactorizeError> {
    factorize_exact_capped(g, r, a, x, DEFAULT_EXACT_CAP)
}

/// [`factorize_exact`] with an explicit edge-count cap.
pub fn factorize_exact_capped(
    g: &SimpleGraph,
    r: i64,
    a: i64,
    x: usize,
    cap: usize,
) -> Result<Option<Factorization>, FactorizeError> {
    if r < 1 || a < 0 || x < 1 {
        return Err(FactorizeError::InvalidParams(format!(
            "need r >= 1, a >= 0, x >= 1 (got r={r}, a={a}, x={x})"
        )));
    }
    let m = g.edge_count();
    if m > cap {
        return Err(FactorizeError::TooLarge { edges: m, cap });
    }
    let n = g.vertex_count();
    let xi = x as i64;
    // Degree window necessity: every factor needs r..r+a at each vertex.
    for v in 0..n {
        let d = g.degree(v) as i64;
        if d < xi * r || d > xi * (r + a) {
            return Ok(None);
        }
    }
    // Fail-first: assign edges at high-degree vertices early.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.edges()[e];
        (std::cmp::Reverse(g.degree(u) + g.degree(v)), e)
    });
    let mut search = ExactSearch {
        g,
        x,
        r,
        upper: r + a,
        order,
        assignment: vec![0; m],
        cnt: vec![0; n * x],
        remaining: (0..n).map(|v| g.degree(v) as i64).collect(),
    };
    if !search.search(0, 0) {
        return Ok(None);
    }
    let f = Factorization::new(x, r, a, search.assignment);
    let report = verify_factorization(g, &f);
    if !report.ok {
        return Err(FactorizeError::Unverified(report.to_string()));
    }
    Ok(Some(f))
}

/// Routes to the interior pipeline when `x` is strictly interior for the
/// graph's actual degrees, and to the exact solver at closed endpoints.
/// `Ok(None)` is returned only on a definitive exact-search exhaustion.
pub fn factorize(
    g: &SimpleGraph,
    r: i64,
    a: i64,
    x: usize,
) -> Result<Option<Factorization>, FactorizeError> {
    if r < 1 || a < 0 || x < 1 {
        return Err(FactorizeError::InvalidParams(format!(
            "need r >= 1, a >= 0, x >= 1 (got r={r}, a={a}, x={x})"
        )));
    }
    let profile = g.degree_profile();
    let (d_min, d_max) = (profile.d_min as i64, profile.d_max as i64);
    let xi = x as i64;
    if x == 1 {
        return if r <= d_min && d_max <= r + a {
            trivial_factorization(g, r, a).map(Some)
        } else {
            Ok(None)
        };
    }
    if xi * r < d_min && d_max < xi * (r + a) {
        return factorize_interior(g, r, a, x).map(Some);
    }
    if d_min < xi * r || d_max > xi * (r + a) {
        // Averaging necessity fails at some vertex: definitively none.
        return Ok(None);
    }
    factorize_exact(g, r, a, x)
}

/// Renders the factorization text format: header `x r a`, then one line
/// `u v factor_index` per edge in canonical order.
pub fn write_factorization(g: &SimpleGraph, f: &Factorization) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {} {}\n", f.x, f.r, f.a));
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        out.push_str(&format!("{} {} {}\n", u, v, f.factor(e)));
    }
    out
}

/// Parses the factorization text format against a graph; every edge of the
/// graph must be assigned exactly once. Inverse of [`write_factorization`].
pub fn read_factorization(
    g: &SimpleGraph,
    text: &str,
) -> Result<Factorization, FactorizationParseError> {
    let mut header: Option<(usize, i64, i64)> = None;
    let mut factor_of: Vec<Option<usize>> = vec![None; g.edge_count()];
    let mut assigned = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match header {
            None => {
                if tokens.len() != 3 {
                    return Err(FactorizationParseError::BadHeader { line });
                }
                let x = tokens[0]
                    .parse::<usize>()
                    .map_err(|_| FactorizationParseError::BadHeader { line })?;
                let r = tokens[1]
                    .parse::<i64>()
                    .map_err(|_| FactorizationParseError::BadHeader { line })?;
                let a = tokens[2]
                    .parse::<i64>()
                    .map_err(|_| FactorizationParseError::BadHeader { line })?;
                if x < 1 {
                    return Err(FactorizationParseError::BadHeader { line });
                }
                header = Some((x, r, a));
            }
            Some((x, _, _)) => {
                if tokens.len() != 3 {
                    return Err(FactorizationParseError::BadEntry { line });
                }
                let u = tokens[0]
                    .parse::<usize>()
                    .map_err(|_| FactorizationParseError::BadEntry { line })?;
                let v = tokens[1]
                    .parse::<usize>()
                    .map_err(|_| FactorizationParseError::BadEntry { line })?;
                let fac = tokens[2]
                    .parse::<usize>()
                    .map_err(|_| FactorizationParseError::BadEntry { line })?;
                let e = g
                    .edge_index(u, v)
                    .ok_or(FactorizationParseError::UnknownEdge { line, u, v })?;
                if fac >= x {
                    return Err(FactorizationParseError::FactorOutOfRange { line, got: fac, x });
                }
                if factor_of[e].is_some() {
                    return Err(FactorizationParseError::DuplicateAssignment { line });
                }
                factor_of[e] = Some(fac);
                assigned += 1;
            }
        }
    }
    let (x, r, a) = header.ok_or(FactorizationParseError::BadHeader { line: 1 })?;
    if assigned != g.edge_count() {
        return Err(FactorizationParseError::IncompleteAssignment {
            assigned,
            edges: g.edge_count(),
        });
    }
    let factor_of = factor_of.into_iter().map(|f| f.unwrap()).collect();
    Ok(Factorization::new(x, r, a, factor_of))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn augment_counts() {
        let c6 = SimpleGraph::cycle(6);
        assert_eq!(augment_pendants(&c6, 2).unwrap().pendants.len(), 6);
        let aug3 = augment_pendants(&c6, 3).unwrap();
        assert_eq!(aug3.pendants.len(), 0);
        assert_eq!(aug3.graph, c6);
        let k4 = SimpleGraph::complete(4);
        assert_eq!(augment_pendants(&k4, 3).unwrap().pendants.len(), 4);
        assert_eq!(
            augment_pendants(&c6, 1),
            Err(FactorizeError::InvalidFactorCount)
        );
    }

    #[test]
    fn augmented_degrees_indivisible() {
        let k4 = SimpleGraph::complete(4);
        let aug = augment_pendants(&k4, 3).unwrap();
        for v in 0..aug.graph.vertex_count() {
            assert_ne!(aug.graph.degree(v) % 3, 0);
        }
    }

    #[test]
    fn whole_graph_as_single_factor() {
        let c6 = SimpleGraph::cycle(6);
        let f = factorize(&c6, 1, 1, 1).unwrap().unwrap();
        assert!(verify_factorization(&c6, &f).ok);
    }

    #[test]
    fn interior_rejects_out_of_window_x() {
        let c6 = SimpleGraph::cycle(6);
        let err = factorize_interior(&c6, 1, 2, 2).unwrap_err();
        assert!(matches!(err, FactorizeError::XOutOfRange { .. }));
    }

    #[test]
    fn exact_three_colours_k4() {
        let k4 = SimpleGraph::complete(4);
        let f = factorize_exact(&k4, 1, 0, 3).unwrap().unwrap();
        assert!(verify_factorization(&k4, &f).ok);
    }

    #[test]
    fn exact_petersen_has_no_proper_three_colouring() {
        let p = SimpleGraph::petersen();
        assert_eq!(factorize_exact(&p, 1, 0, 3).unwrap(), None);
    }

    #[test]
    fn k5_has_no_one_factorization() {
        let k5 = SimpleGraph::complete(5);
        for x in 1..=4 {
            assert_eq!(factorize(&k5, 1, 0, x).unwrap(), None, "x = {x}");
        }
    }

    #[test]
    fn interior_pipeline_on_even_regular_graph() {
        // K_9 is 8-regular; x = 3 sits strictly inside (8/4, 8/2) = (2, 4).
        let g = SimpleGraph::complete(9);
        let f = factorize_interior(&g, 2, 2, 3).unwrap();
        let report = verify_factorization(&g, &f);
        assert!(report.ok, "{report}");
    }

    #[test]
    fn endpoint_via_exact_solver() {
        // 4-regular on 9 vertices at the closed endpoint x = d/r = 2.
        let g = SimpleGraph::new(
            9,
            (0..9).flat_map(|v| [(v, (v + 1) % 9), (v, (v + 2) % 9)]),
        )
        .unwrap();
        let f = factorize(&g, 2, 2, 2).unwrap().unwrap();
        assert!(verify_factorization(&g, &f).ok);
    }

    #[test]
    fn verifier_localizes_tampering() {
        let k4 = SimpleGraph::complete(4);
        let f = factorize_exact(&k4, 1, 0, 3).unwrap().unwrap();
        let mut broken = f.assignments().to_vec();
        broken[0] = (broken[0] + 1) % 3;
        let bad = Factorization::new(3, 1, 0, broken);
        let report = verify_factorization(&k4, &bad);
        assert!(!report.ok);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn factorization_round_trip() {
        let k4 = SimpleGraph::complete(4);
        let f = factorize_exact(&k4, 1, 0, 3).unwrap().unwrap();
        let text = write_factorization(&k4, &f);
        let parsed = read_factorization(&k4, &text).unwrap();
        assert_eq!(parsed, f);
    }

    #[test]
    fn factorization_parse_errors() {
        let k4 = SimpleGraph::complete(4);
        assert!(matches!(
            read_factorization(&k4, "3 1\n"),
            Err(FactorizationParseError::BadHeader { line: 1 })
        ));
        assert!(matches!(
            read_factorization(&k4, "3 1 0\n0 1 5\n"),
            Err(FactorizationParseError::FactorOutOfRange { .. })
        ));
        assert!(matches!(
            read_factorization(&k4, "3 1 0\n0 1 0\n"),
            Err(FactorizationParseError::IncompleteAssignment { .. })
        ));
    }
}
