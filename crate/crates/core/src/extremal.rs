//! Generators for extremal graphs: the bridged/complete-graph families
//! witnessing the necessity of the feasible-interval endpoint exclusions,
//! and the two-part boundary graphs satisfying
//! `(d+s)/(r+a) = x = d/r` that admit no factorization with `x` factors.
//!
//! Each boundary instance carries a [`CountingCertificate`]: a
//! handshake-lemma edge-counting contradiction, recomputed from the actual
//! generated graph, proving non-factorizability without any search. The
//! certificate works on parities: every factor's degree sum is even and at
//! least the sum of the per-vertex lower bounds
//! `L(v) = max(r, d(v) - (x-1)(r+a))`, while the total degree sum `2|E|`
//! leaves too little slack to round every factor up. A positive
//! `contradiction_margin` (aggregate lower bound exceeding `|E|`) is the
//! proof.

use crate::graph::SimpleGraph;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ExtremalError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("infeasible construction: {0}")]
    InfeasibleParams(String),
    #[error("counting certificate failed: margin {margin} is not positive")]
    CertificateFailed { margin: i64 },
    #[error("degree spectrum mismatch at vertex {vertex}: expected {expected}, found {found}")]
    SpectrumMismatch {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph error: {0}")]
    Graph(#[from] crate::graph::GraphError),
}

/// Which boundary construction produced an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryFamily {
    /// `r` even, `a` odd.
    EvenOdd,
    /// `r` and `a` both odd.
    OddOdd,
}

/// A handshake-lemma contradiction: `aggregate_lower_bound > total_edges`
/// proves no factorization with the instance's `x` factors exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountingCertificate {
    pub total_edges: i64,
    pub per_factor_lower_bound: i64,
    pub aggregate_lower_bound: i64,
    pub contradiction_margin: i64,
}

/// A generated boundary graph with its parameters, two-part split, and
/// non-factorizability certificate.
#[derive(Debug, Clone)]
pub struct BoundaryInstance {
    pub graph: SimpleGraph,
    pub family: BoundaryFamily,
    pub r: i64,
    pub s: i64,
    pub a: i64,
    pub d: i64,
    pub x: i64,
    pub part_m: Vec<usize>,
    pub part_n: Vec<usize>,
    pub certificate: Option<CountingCertificate>,
    /// Set when the parameters fall outside the stated range of the
    /// construction (`a < 3`), which the worked families nevertheless use.
    pub beyond_stated_range: bool,
}

impl BoundaryInstance {
    /// Sidecar metadata serialized next to the edge-list file.
    pub fn sidecar_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family,
            "r": self.r,
            "s": self.s,
            "a": self.a,
            "d": self.d,
            "x": self.x,
            "part_m_size": self.part_m.len(),
            "part_n_size": self.part_n.len(),
            "beyond_stated_range": self.beyond_stated_range,
            "certificate": self.certificate,
        })
    }
}

/// Two copies of a near-complete graph joined by a bridge: `K_{deg+2}`
/// minus a two-edge path minus a perfect matching on the remaining
/// vertices leaves one vertex of degree `deg - 1`; bridging the two copies
/// at those vertices yields a `deg`-regular graph of even order whose
/// every spanning `deg'`-regular factor with `deg'` odd must use the
/// bridge.
fn bridged_double(deg: usize) -> SimpleGraph {
    assert!(deg % 2 == 1, "bridged double needs odd degree");
    let base = deg + 2;
    let mut removed = std::collections::HashSet::new();
    removed.insert((0usize, 1usize));
    removed.insert((1usize, 2usize));
    let mut v = 3;
    while v + 1 < base {
        removed.insert((v, v + 1));
        v += 2;
    }
    let mut edges = Vec::new();
    for copy in 0..2 {
        let off = copy * base;
        for u in 0..base {
            for w in u + 1..base {
                if !removed.contains(&(u, w)) {
                    edges.push((off + u, off + w));
                }
            }
        }
    }
    edges.push((1, base + 1)); // the bridge between the degree-(deg-1) vertices
    SimpleGraph::new(2 * base, edges).expect("bridged double is valid")
}

fn expect_regular(g: &SimpleGraph, d: usize) -> Result<(), ExtremalError> {
    for v in 0..g.vertex_count() {
        if g.degree(v) != d {
            return Err(ExtremalError::SpectrumMismatch {
                vertex: v,
                expected: d,
                found: g.degree(v),
            });
        }
    }
    Ok(())
}

/// A `d`-regular graph with no `(r, r+a)`-factorization into `x = d/r`
/// factors, for odd `r`: at that count every factor is forced to be
/// `r`-regular, which the construction obstructs (bridge parity for odd
/// `d`, odd order for even `d`).
pub fn gen_lemma14_regular(d: i64, r: i64) -> Result<SimpleGraph, ExtremalError> {
    if r < 1 || r % 2 == 0 {
        return Err(ExtremalError::InvalidParams(format!(
            "r must be odd and positive (got {r})"
        )));
    }
    if d < 1 || d % r != 0 {
        return Err(ExtremalError::InvalidParams(format!(
            "d must be a positive multiple of r (got d={d}, r={r})"
        )));
    }
    let x = d / r;
    if x < 2 {
        return Err(ExtremalError::InvalidParams(format!(
            "x = d/r must be at least 2 (got {x})"
        )));
    }
    let g = if d % 2 == 1 {
        bridged_double(d as usize)
    } else {
        SimpleGraph::complete(d as usize + 1)
    };
    expect_regular(&g, d as usize)?;
    Ok(g)
}

/// The top-end analogue: a `(d+s)`-regular graph with no factorization
/// into `x = (d+s)/(r+a)` factors, for odd `r+a`; every factor is forced
/// to be `(r+a)`-regular. For even `d+s` the odd-order complete graph
/// `K_{d+s+1}` is used (the construction needs odd order and degree `d+s`,
/// which `K_{d+s-1}` cannot provide).
pub fn gen_lemma14_topend(dps: i64, r: i64, a: i64) -> Result<SimpleGraph, ExtremalError> {
    let window = r + a;
    if r < 1 || a < 0 || window % 2 == 0 {
        return Err(ExtremalError::InvalidParams(format!(
            "r + a must be odd and positive (got r={r}, a={a})"
        )));
    }
    if dps < 1 || dps % window != 0 {
        return Err(ExtremalError::InvalidParams(format!(
            "d + s must be a positive multiple of r + a (got {dps})"
        )));
    }
    let x = dps / window;
    if x < 2 {
        return Err(ExtremalError::InvalidParams(format!(
            "x = (d+s)/(r+a) must be at least 2 (got {x})"
        )));
    }
    let g = if dps % 2 == 1 {
        bridged_double(dps as usize)
    } else {
        SimpleGraph::complete(dps as usize + 1)
    };
    expect_regular(&g, dps as usize)?;
    Ok(g)
}

/// First `count` pairs of `0..size` in lexicographic order, as a greedy
/// simple graph placed on one part. Any simple graph of the right size
/// works; lexicographic choice keeps generators deterministic.
fn greedy_pairs(size: usize, count: usize) -> Result<Vec<(usize, usize)>, ExtremalError> {
    let capacity = size * size.saturating_sub(1) / 2;
    if count > capacity {
        return Err(ExtremalError::InfeasibleParams(format!(
            "part of size {size} has no simple graph with {count} edges"
        )));
    }
    let mut pairs = Vec::with_capacity(count);
    'outer: for u in 0..size {
        for v in u + 1..size {
            if pairs.len() == count {
                break 'outer;
            }
            pairs.push((u, v));
        }
    }
    Ok(pairs)
}

/// Degrees within the greedy part graph, plus the label owner table:
/// part-local vertex `i` receives the next `d_H(i)` unused labels in
/// order.
fn assign_labels(size: usize, h_edges: &[(usize, usize)]) -> Vec<usize> {
    let mut deg = vec![0usize; size];
    for &(u, v) in h_edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut owners = Vec::with_capacity(2 * h_edges.len());
    for (i, &d) in deg.iter().enumerate() {
        for _ in 0..d {
            owners.push(i);
        }
    }
    owners
}

fn validate_boundary_spectrum(inst: &BoundaryInstance) -> Result<(), ExtremalError> {
    let window_deg = (inst.x * (inst.r + inst.a)) as usize;
    let base_deg = (inst.x * inst.r) as usize;
    let odd_x = inst.x % 2 == 1;
    for (pos, &v) in inst.part_m.iter().enumerate() {
        let expected = match inst.family {
            BoundaryFamily::OddOdd if odd_x && pos == inst.part_m.len() - 1 => window_deg - 1,
            _ => window_deg,
        };
        if inst.graph.degree(v) != expected {
            return Err(ExtremalError::SpectrumMismatch {
                vertex: v,
                expected,
                found: inst.graph.degree(v),
            });
        }
    }
    for (pos, &v) in inst.part_n.iter().enumerate() {
        let expected = match inst.family {
            BoundaryFamily::EvenOdd if odd_x && pos == inst.part_n.len() - 1 => base_deg + 1,
            _ => base_deg,
        };
        if inst.graph.degree(v) != expected {
            return Err(ExtremalError::SpectrumMismatch {
                vertex: v,
                expected,
                found: inst.graph.degree(v),
            });
        }
    }
    Ok(())
}

fn certificate_for(
    g: &SimpleGraph,
    r: i64,
    a: i64,
    x: i64,
) -> Result<CountingCertificate, ExtremalError> {
    let m = g.edge_count() as i64;
    let mut sum_lower = 0i64;
    let mut forced_factors = 0i64;
    for v in 0..g.vertex_count() {
        let d = g.degree(v) as i64;
        let lo = r.max(d - (x - 1) * (r + a));
        let hi = (r + a).min(d - (x - 1) * r);
        if lo > hi {
            return Err(ExtremalError::InvalidParams(format!(
                "vertex {v} admits no per-factor degree split (d={d}, x={x})"
            )));
        }
        sum_lower += lo;
        let slack = d - x * lo;
        if slack > 0 {
            let forced = (slack + (hi - lo) - 1) / (hi - lo);
            forced_factors = forced_factors.max(forced);
        }
    }
    let parity = sum_lower.rem_euclid(2);
    let free = 2 * m - x * sum_lower;
    // Every factor's degree sum is even and >= sum_lower, so its slack
    // e_i is congruent to sum_lower mod 2; factors forced above the
    // pointwise minimum at some vertex need e_i >= 1.
    let min_total_slack = if parity == 1 { x } else { 2 * forced_factors };
    let margin = (min_total_slack - free) / 2;
    if margin <= 0 {
        return Err(ExtremalError::CertificateFailed { margin });
    }
    Ok(CountingCertificate {
        total_edges: m,
        per_factor_lower_bound: (sum_lower + parity) / 2,
        aggregate_lower_bound: (x * sum_lower + min_total_slack) / 2,
        contradiction_margin: margin,
    })
}

/// Recomputes the edge count, per-factor handshake lower bound, and
/// contradiction margin from the instance's actual graph. A non-positive
/// margin or a degree-spectrum mismatch signals a generator bug (or a
/// tampered instance).
pub fn counting_certificate(
    inst: &BoundaryInstance,
) -> Result<CountingCertificate, ExtremalError> {
    validate_boundary_spectrum(inst)?;
    certificate_for(&inst.graph, inst.r, inst.a, inst.x)
}

fn check_boundary_params(
    r: i64,
    s: i64,
    a: i64,
    x: i64,
    want_r_even: bool,
) -> Result<(), ExtremalError> {
    if r < 1 || (r % 2 == 0) != want_r_even {
        return Err(ExtremalError::InvalidParams(format!(
            "r must be {} and positive (got {r})",
            if want_r_even { "even" } else { "odd" }
        )));
    }
    if a < 1 || a % 2 == 0 {
        return Err(ExtremalError::InvalidParams(format!(
            "a must be odd and positive (got {a})"
        )));
    }
    if x < 2 {
        return Err(ExtremalError::InvalidParams(format!(
            "x must be at least 2 (got {x})"
        )));
    }
    if s != x * a {
        return Err(ExtremalError::InvalidParams(format!(
            "boundary identity requires s = x * a (got s={s}, x*a={})",
            x * a
        )));
    }
    Ok(())
}

/// Boundary graph for `r` even, `a` odd: parts `M` (size `xr + 1`, degree
/// `x(r+a)`) and `N` (size `x(r+a)`, degree `xr`), built from a greedy
/// graph `H` on `M` whose label multiplicities dictate which complete-join
/// edges to omit. For odd `x` one vertex of `N` stays unlabelled with
/// degree `xr + 1`. The attached certificate proves no factorization with
/// `x` factors exists.
pub fn gen_boundary_eo(r: i64, s: i64, a: i64, x: i64) -> Result<BoundaryInstance, ExtremalError> {
    check_boundary_params(r, s, a, x, true)?;
    let m_size = (x * r + 1) as usize;
    let n_size = (x * (r + a)) as usize;
    let labels = if x % 2 == 0 { n_size } else { n_size - 1 };
    debug_assert_eq!(labels % 2, 0);
    let h = greedy_pairs(m_size, labels / 2)?;
    let owners = assign_labels(m_size, &h);

    let mut edges: Vec<(usize, usize)> = h.clone();
    for j in 0..n_size {
        let nj = m_size + j;
        for i in 0..m_size {
            if j < labels && owners[j] == i {
                continue;
            }
            edges.push((i, nj));
        }
    }
    let graph = SimpleGraph::new(m_size + n_size, edges)?;
    let mut inst = BoundaryInstance {
        graph,
        family: BoundaryFamily::EvenOdd,
        r,
        s,
        a,
        d: x * r,
        x,
        part_m: (0..m_size).collect(),
        part_n: (m_size..m_size + n_size).collect(),
        certificate: None,
        beyond_stated_range: a < 3,
    };
    validate_boundary_spectrum(&inst)?;
    inst.certificate = Some(certificate_for(&inst.graph, r, a, x)?);
    Ok(inst)
}

/// Boundary graph for `r` and `a` both odd: parts `M` (size `xr`, degree
/// `x(r+a)`) and `N` (size `x(r+a) + 1`, degree `xr`), with the greedy
/// graph `H` placed on `N`. For odd `x` one vertex of `M` carries two
/// labels (owned by distinct `H` vertices) and has degree `x(r+a) - 1`.
/// The stated range is `a >= 3`; `a = 1` is accepted for the worked
/// families and flagged via `beyond_stated_range`.
pub fn gen_boundary_oo(r: i64, s: i64, a: i64, x: i64) -> Result<BoundaryInstance, ExtremalError> {
    check_boundary_params(r, s, a, x, false)?;
    let m_size = (x * r) as usize;
    let n_size = (x * (r + a) + 1) as usize;
    let labels = if x % 2 == 0 { m_size } else { m_size + 1 };
    debug_assert_eq!(labels % 2, 0);
    let h = greedy_pairs(n_size, labels / 2)?;
    let owners = assign_labels(n_size, &h);

    // Labels held by each M vertex. For odd x the last M vertex takes the
    // first and last labels, whose owners are distinct H vertices.
    let held: Vec<Vec<usize>> = if x % 2 == 0 {
        (0..m_size).map(|i| vec![i]).collect()
    } else {
        assert_ne!(owners[0], owners[labels - 1]);
        let mut held: Vec<Vec<usize>> = (0..m_size - 1).map(|i| vec![i + 1]).collect();
        held.push(vec![0, labels - 1]);
        held
    };

    let mut edges: Vec<(usize, usize)> = h
        .iter()
        .map(|&(u, v)| (m_size + u, m_size + v))
        .collect();
    for (i, labels_held) in held.iter().enumerate() {
        let skip: Vec<usize> = labels_held.iter().map(|&l| owners[l]).collect();
        for j in 0..n_size {
            if skip.contains(&j) {
                continue;
            }
            edges.push((i, m_size + j));
        }
    }
    let graph = SimpleGraph::new(m_size + n_size, edges)?;
    let mut inst = BoundaryInstance {
        graph,
        family: BoundaryFamily::OddOdd,
        r,
        s,
        a,
        d: x * r,
        x,
        part_m: (0..m_size).collect(),
        part_n: (m_size..m_size + n_size).collect(),
        certificate: None,
        beyond_stated_range: a < 3,
    };
    validate_boundary_spectrum(&inst)?;
    inst.certificate = Some(certificate_for(&inst.graph, r, a, x)?);
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eo_small_family() {
        let inst = gen_boundary_eo(2, 2, 1, 2).unwrap();
        assert_eq!(inst.part_m.len(), 5);
        assert_eq!(inst.part_n.len(), 6);
        assert_eq!(inst.graph.edge_count(), 27);
        assert_eq!(inst.d, 4);
        // Boundary identity.
        assert_eq!(inst.x * inst.r, inst.d);
        assert_eq!(inst.x * (inst.r + inst.a), inst.d + inst.s);
        let cert = inst.certificate.unwrap();
        assert_eq!(cert.total_edges, 27);
        assert_eq!(cert.per_factor_lower_bound, 14);
        assert_eq!(cert.aggregate_lower_bound, 28);
        assert_eq!(cert.contradiction_margin, 1);
        let profile = inst.graph.degree_profile();
        assert_eq!((profile.d_min, profile.d_max), (4, 6));
    }

    #[test]
    fn eo_odd_x_family() {
        let inst = gen_boundary_eo(2, 3, 1, 3).unwrap();
        assert_eq!(inst.graph.edge_count(), 59);
        assert_eq!(inst.part_m.len(), 7);
        assert_eq!(inst.part_n.len(), 9);
        // One N vertex has degree xr + 1 = 7.
        let degs: Vec<usize> = inst.part_n.iter().map(|&v| inst.graph.degree(v)).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 7).count(), 1);
        assert_eq!(degs.iter().filter(|&&d| d == 6).count(), 8);
        assert!(inst.certificate.unwrap().contradiction_margin >= 1);
    }

    #[test]
    fn oo_small_family() {
        let inst = gen_boundary_oo(1, 2, 1, 2).unwrap();
        assert_eq!(inst.part_m.len(), 2);
        assert_eq!(inst.part_n.len(), 5);
        assert_eq!(inst.graph.edge_count(), 9);
        let profile = inst.graph.degree_profile();
        assert_eq!((profile.d_min, profile.d_max), (2, 4));
        let cert = inst.certificate.unwrap();
        assert_eq!(cert.total_edges, 9);
        assert_eq!(cert.aggregate_lower_bound, 10);
        assert_eq!(cert.contradiction_margin, 1);
        assert!(inst.beyond_stated_range);
    }

    #[test]
    fn oo_odd_x_family() {
        let inst = gen_boundary_oo(1, 3, 1, 3).unwrap();
        assert_eq!(inst.graph.edge_count(), 19);
        assert_eq!(inst.part_m.len(), 3);
        assert_eq!(inst.part_n.len(), 7);
        let m_degs: Vec<usize> = inst.part_m.iter().map(|&v| inst.graph.degree(v)).collect();
        assert_eq!(m_degs.iter().filter(|&&d| d == 6).count(), 2);
        assert_eq!(m_degs.iter().filter(|&&d| d == 5).count(), 1);
        for &v in &inst.part_n {
            assert_eq!(inst.graph.degree(v), 3);
        }
        assert!(inst.certificate.unwrap().contradiction_margin >= 1);
    }

    #[test]
    fn certificate_recompute_matches_attached() {
        let inst = gen_boundary_eo(2, 2, 1, 2).unwrap();
        assert_eq!(counting_certificate(&inst).unwrap(), inst.certificate.unwrap());
    }

    #[test]
    fn tampered_instance_is_caught() {
        let mut inst = gen_boundary_oo(1, 2, 1, 2).unwrap();
        let mut edges = inst.graph.edges().to_vec();
        edges.pop();
        inst.graph = SimpleGraph::new(inst.graph.vertex_count(), edges).unwrap();
        assert!(matches!(
            counting_certificate(&inst),
            Err(ExtremalError::SpectrumMismatch { .. })
        ));
    }

    #[test]
    fn boundary_param_validation() {
        assert!(matches!(
            gen_boundary_eo(3, 2, 1, 2),
            Err(ExtremalError::InvalidParams(_))
        ));
        assert!(matches!(
            gen_boundary_eo(2, 5, 1, 2),
            Err(ExtremalError::InvalidParams(_))
        ));
        assert!(matches!(
            gen_boundary_oo(1, 2, 1, 1),
            Err(ExtremalError::InvalidParams(_))
        ));
    }

    #[test]
    fn lemma14_regular_families() {
        let g = gen_lemma14_regular(3, 1).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!(g.is_dds_graph(3, 0));

        let k5 = gen_lemma14_regular(4, 1).unwrap();
        assert_eq!(k5, SimpleGraph::complete(5));

        // d even branch with the smallest admissible parameters.
        let k3 = gen_lemma14_regular(2, 1).unwrap();
        assert_eq!(k3, SimpleGraph::complete(3));

        assert!(matches!(
            gen_lemma14_regular(4, 2),
            Err(ExtremalError::InvalidParams(_))
        ));
        assert!(matches!(
            gen_lemma14_regular(3, 3),
            Err(ExtremalError::InvalidParams(_))
        ));
    }

    #[test]
    fn lemma14_topend_families() {
        assert!(matches!(
            gen_lemma14_topend(3, 2, 1),
            Err(ExtremalError::InvalidParams(_))
        ));
        let g = gen_lemma14_topend(6, 2, 1).unwrap();
        assert_eq!(g, SimpleGraph::complete(7));
        let g = gen_lemma14_topend(9, 2, 1).unwrap();
        assert_eq!(g.vertex_count(), 22);
        assert!(g.is_dds_graph(9, 0));
    }

    #[test]
    fn sidecar_shape() {
        let inst = gen_boundary_eo(2, 2, 1, 2).unwrap();
        let json = inst.sidecar_json();
        assert_eq!(json["r"], 2);
        assert_eq!(json["part_m_size"], 5);
        assert!(json["certificate"]["contradiction_margin"].as_i64().unwrap() >= 1);
    }
}
