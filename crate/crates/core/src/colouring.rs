//! Equitable and nearly equitable edge-colouring engines.
//!
//! An edge-colouring with colour set `C` is *equitable* if at every vertex
//! `v` and for every pair of colours `α, β` the incident class sizes differ
//! by at most 1, and *nearly equitable* if they differ by at most 2.
//!
//! Two engines are provided:
//!
//! * [`equitable_colour_bipartite`] — exact for bipartite inputs: colour
//!   classes are extracted one at a time as degree-constrained subgraphs
//!   via max-flow with lower bounds, which always succeeds and yields the
//!   per-vertex class sizes `{floor(d/x), ceil(d/x)}`.
//! * [`equitable_colour_simple`] — for general simple graphs under the
//!   no-adjacent-divisible-degrees condition: a pairwise balancing engine
//!   that repairs the worst per-vertex colour-pair gap by flipping
//!   alternating trails (each successful flip strictly decreases the
//!   potential `sum of squared class sizes`), falling back to an
//!   Euler-partition recolouring of the offending two-colour component.
//!   Bounded retries with seeded randomized tie-breaking guard against
//!   stalls; a stall after all retries is reported as
//!   [`ColouringError::BalancingFailed`], never as an unverified colouring.
//!
//! Every returned colouring is re-verified against its contract before it
//! leaves this module.

use crate::graph::SimpleGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ColouringError {
    #[error("edge ({0}, {1}) does not cross the supplied bipartition")]
    NotBipartite(usize, usize),
    #[error("adjacent vertices {u} and {v} both have degree divisible by the colour count")]
    ConditionViolated { u: usize, v: usize },
    #[error("balancing stalled after {retries} retries with {x} colours")]
    BalancingFailed { x: usize, retries: usize },
    #[error("colour count must be at least 1")]
    InvalidColourCount,
    #[error("internal degree-constrained extraction failed for colour {0}")]
    ExtractionFailed(usize),
}

/// An assignment of every edge of a graph to one of `num_colours` colour
/// classes, indexed in the graph's canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColouring {
    pub num_colours: usize,
    colour_of: Vec<usize>,
}

impl EdgeColouring {
    pub fn new(num_colours: usize, colour_of: Vec<usize>) -> Self {
        assert!(num_colours >= 1, "colouring needs at least one colour");
        assert!(
            colour_of.iter().all(|&c| c < num_colours),
            "colour index out of range"
        );
        EdgeColouring {
            num_colours,
            colour_of,
        }
    }

    /// Colour of the edge at `edge_index` in canonical order.
    pub fn colour(&self, edge_index: usize) -> usize {
        self.colour_of[edge_index]
    }

    pub fn colours(&self) -> &[usize] {
        &self.colour_of
    }

    /// Number of edges of colour `c` incident with `v`.
    pub fn class_degree(&self, g: &SimpleGraph, v: usize, c: usize) -> usize {
        g.edges()
            .iter()
            .enumerate()
            .filter(|&(i, &(a, b))| (a == v || b == v) && self.colour_of[i] == c)
            .count()
    }
}

/// Exact per-vertex imbalance measurements for a colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImbalanceReport {
    /// Maximum over all vertices and colour pairs of the class-size gap.
    pub max_pairwise_gap: usize,
    /// Lowest-index vertex attaining the maximum.
    pub worst_vertex: usize,
    pub per_vertex_gaps: Vec<usize>,
}

/// Computes the maximum pairwise class-size gap at every vertex. The gap
/// at `v` ranges over all colour pairs of the full colour set, so a colour
/// absent at `v` counts as class size 0.
pub fn imbalance(g: &SimpleGraph, col: &EdgeColouring) -> ImbalanceReport {
    assert_eq!(
        col.colours().len(),
        g.edge_count(),
        "colouring does not match graph"
    );
    let n = g.vertex_count();
    let x = col.num_colours;
    let mut counts = vec![0usize; n * x];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let c = col.colour(i);
        counts[u * x + c] += 1;
        counts[v * x + c] += 1;
    }
    let mut per_vertex_gaps = vec![0usize; n];
    let mut max_pairwise_gap = 0;
    let mut worst_vertex = 0;
    for v in 0..n {
        let row = &counts[v * x..(v + 1) * x];
        let hi = *row.iter().max().unwrap_or(&0);
        let lo = *row.iter().min().unwrap_or(&0);
        let gap = hi - lo;
        per_vertex_gaps[v] = gap;
        if gap > max_pairwise_gap {
            max_pairwise_gap = gap;
            worst_vertex = v;
        }
    }
    ImbalanceReport {
        max_pairwise_gap,
        worst_vertex,
        per_vertex_gaps,
    }
}

// ---------------------------------------------------------------------------
// Bipartite engine: per-class degree-constrained extraction via max-flow.
// ---------------------------------------------------------------------------

mod flow {
    //! Dinic max-flow, used to extract degree-constrained subgraphs of
    //! bipartite graphs with lower bounds via the standard circulation
    //! transformation.

    pub struct Dinic {
        to: Vec<usize>,
        cap: Vec<i64>,
        head: Vec<Vec<usize>>,
        level: Vec<i32>,
        iter: Vec<usize>,
    }

    impl Dinic {
        pub fn new(n: usize) -> Self {
            Dinic {
                to: Vec::new(),
                cap: Vec::new(),
                head: vec![Vec::new(); n],
                level: vec![0; n],
                iter: vec![0; n],
            }
        }

        /// Adds a forward arc and its residual twin; returns the forward
        /// arc id.
        pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
            let id = self.to.len();
            self.head[u].push(id);
            self.to.push(v);
            self.cap.push(cap);
            self.head[v].push(id + 1);
            self.to.push(u);
            self.cap.push(0);
            id
        }

        /// Flow pushed through forward arc `id`, given its original
        /// capacity.
        pub fn flow(&self, id: usize, original_cap: i64) -> i64 {
            original_cap - self.cap[id]
        }

        fn bfs(&mut self, s: usize, t: usize) -> bool {
            for l in self.level.iter_mut() {
                *l = -1;
            }
            let mut queue = std::collections::VecDeque::new();
            self.level[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &id in &self.head[u] {
                    let v = self.to[id];
                    if self.cap[id] > 0 && self.level[v] < 0 {
                        self.level[v] = self.level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            self.level[t] >= 0
        }

        fn dfs(&mut self, u: usize, t: usize, f: i64) -> i64 {
            if u == t {
                return f;
            }
            while self.iter[u] < self.head[u].len() {
                let id = self.head[u][self.iter[u]];
                let v = self.to[id];
                if self.cap[id] > 0 && self.level[v] == self.level[u] + 1 {
                    let d = self.dfs(v, t, f.min(self.cap[id]));
                    if d > 0 {
                        self.cap[id] -= d;
                        self.cap[id ^ 1] += d;
                        return d;
                    }
                }
                self.iter[u] += 1;
            }
            0
        }

        pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
            let mut total = 0;
            while self.bfs(s, t) {
                for it in self.iter.iter_mut() {
                    *it = 0;
                }
                loop {
                    let f = self.dfs(s, t, i64::MAX);
                    if f == 0 {
                        break;
                    }
                    total += f;
                }
            }
            total
        }
    }
}

/// Selects a subset `F` of `edges` with `lo[v] <= deg_F(v) <= hi[v]` for
/// every vertex, where all of `edges` cross the bipartition `side`.
/// Returns the chosen edge ids, or `None` if no such subgraph exists.
fn extract_degree_constrained(
    n: usize,
    side: &[bool],
    edges: &[(usize, (usize, usize))],
    lo: &[i64],
    hi: &[i64],
) -> Option<Vec<usize>> {
    // Nodes: 0 = S, 1 = T, 2 = SS, 3 = TT, 4 + v = vertex v.
    let s = 0;
    let t = 1;
    let ss = 2;
    let tt = 3;
    let vid = |v: usize| 4 + v;
    let mut net = flow::Dinic::new(n + 4);
    let mut excess = vec![0i64; n + 4];
    let add_bounded = |net: &mut flow::Dinic,
                           excess: &mut Vec<i64>,
                           u: usize,
                           v: usize,
                           lo_b: i64,
                           hi_b: i64|
     -> usize {
        let id = net.add_edge(u, v, hi_b - lo_b);
        excess[v] += lo_b;
        excess[u] -= lo_b;
        id
    };

    let mut edge_arcs = Vec::with_capacity(edges.len());
    for &(_, (u, v)) in edges {
        let (left, right) = if !side[u] { (u, v) } else { (v, u) };
        let id = add_bounded(&mut net, &mut excess, vid(left), vid(right), 0, 1);
        edge_arcs.push(id);
    }
    for v in 0..n {
        if lo[v] == 0 && hi[v] == 0 {
            continue;
        }
        if !side[v] {
            add_bounded(&mut net, &mut excess, s, vid(v), lo[v], hi[v]);
        } else {
            add_bounded(&mut net, &mut excess, vid(v), t, lo[v], hi[v]);
        }
    }
    net.add_edge(t, s, i64::MAX / 2);

    let mut need = 0;
    for node in 0..n + 4 {
        let e = excess[node];
        if e > 0 {
            net.add_edge(ss, node, e);
            need += e;
        } else if e < 0 {
            net.add_edge(node, tt, -e);
        }
    }
    if net.max_flow(ss, tt) != need {
        return None;
    }
    let chosen = edges
        .iter()
        .zip(&edge_arcs)
        .filter(|&(_, &arc)| net.flow(arc, 1) == 1)
        .map(|(&(id, _), _)| id)
        .collect();
    Some(chosen)
}

/// Equitable edge-colouring of a bipartite graph with `x` colours: at every
/// vertex each class has size `floor(d(v)/x)` or `ceil(d(v)/x)`.
///
/// `bipartition[v]` gives the side of vertex `v`; an edge inside one side
/// is rejected as [`ColouringError::NotBipartite`].
pub fn equitable_colour_bipartite(
    g: &SimpleGraph,
    bipartition: &[bool],
    x: usize,
) -> Result<EdgeColouring, ColouringError> {
    if x < 1 {
        return Err(ColouringError::InvalidColourCount);
    }
    assert_eq!(
        bipartition.len(),
        g.vertex_count(),
        "bipartition length must equal the vertex count"
    );
    for &(u, v) in g.edges() {
        if bipartition[u] == bipartition[v] {
            return Err(ColouringError::NotBipartite(u, v));
        }
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut colour_of = vec![0usize; m];
    if x == 1 || m == 0 {
        let col = EdgeColouring::new(x, colour_of);
        debug_assert!(imbalance(g, &col).max_pairwise_gap <= 1 || m == 0);
        return Ok(col);
    }

    let q: Vec<i64> = (0..n).map(|v| (g.degree(v) / x) as i64).collect();
    // Number of still-unextracted classes that must take q(v) + 1 edges.
    let mut hi_left: Vec<i64> = (0..n).map(|v| (g.degree(v) % x) as i64).collect();
    let mut remaining: Vec<(usize, (usize, usize))> =
        g.edges().iter().copied().enumerate().collect();

    for c in (1..x).rev() {
        let classes_left = (c + 1) as i64;
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for v in 0..n {
            lo[v] = q[v] + i64::from(hi_left[v] == classes_left);
            hi[v] = q[v] + i64::from(hi_left[v] > 0);
        }
        let chosen = extract_degree_constrained(n, bipartition, &remaining, &lo, &hi)
            .ok_or(ColouringError::ExtractionFailed(c))?;
        let mut deg_f = vec![0i64; n];
        for &e in &chosen {
            let (u, v) = g.edges()[e];
            colour_of[e] = c;
            deg_f[u] += 1;
            deg_f[v] += 1;
        }
        for v in 0..n {
            if deg_f[v] == q[v] + 1 {
                hi_left[v] -= 1;
            }
        }
        let chosen_set: std::collections::HashSet<usize> = chosen.into_iter().collect();
        remaining.retain(|(id, _)| !chosen_set.contains(id));
    }
    // Colour 0 takes whatever is left; the invariant keeps it in range.

    let col = EdgeColouring::new(x, colour_of);
    let report = imbalance(g, &col);
    let ok = (0..n).all(|v| {
        let d = g.degree(v);
        (0..x).all(|c| {
            let sz = col.class_degree(g, v, c);
            sz == d / x || sz == d / x + usize::from(d % x != 0)
        })
    });
    if !ok || report.max_pairwise_gap > 1 {
        return Err(ColouringError::ExtractionFailed(0));
    }
    Ok(col)
}

// ---------------------------------------------------------------------------
// Simple-graph engine: pairwise balancing by alternating-trail flips with
// an Euler-partition fallback.
// ---------------------------------------------------------------------------

struct Balancer<'g> {
    g: &'g SimpleGraph,
    x: usize,
    colour: Vec<usize>,
    /// Class sizes per vertex, flattened `n * x`.
    cnt: Vec<i64>,
    /// Incident edge ids per vertex, ascending.
    incident: Vec<Vec<usize>>,
    /// Whether `x` divides the degree, i.e. the nearly equitable (gap 2)
    /// allowance applies.
    divisible: Vec<bool>,
}

impl<'g> Balancer<'g> {
    fn new(g: &'g SimpleGraph, x: usize) -> Self {
        let n = g.vertex_count();
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let divisible = (0..n).map(|v| g.degree(v) % x == 0).collect();
        Balancer {
            g,
            x,
            colour: vec![0; g.edge_count()],
            cnt: vec![0; n * x],
            incident,
            divisible,
        }
    }

    fn count(&self, v: usize, c: usize) -> i64 {
        self.cnt[v * self.x + c]
    }

    fn recount(&mut self) {
        self.cnt.iter_mut().for_each(|c| *c = 0);
        for (i, &(u, v)) in self.g.edges().iter().enumerate() {
            let c = self.colour[i];
            self.cnt[u * self.x + c] += 1;
            self.cnt[v * self.x + c] += 1;
        }
    }

    fn greedy_init(&mut self, rng: Option<&mut ChaCha8Rng>) {
        let m = self.g.edge_count();
        let mut order: Vec<usize> = (0..m).collect();
        if let Some(rng) = rng {
            order.shuffle(rng);
        }
        self.colour.iter_mut().for_each(|c| *c = 0);
        self.cnt.iter_mut().for_each(|c| *c = 0);
        for &e in &order {
            let (u, v) = self.g.edges()[e];
            let mut best = 0;
            let mut best_load = i64::MAX;
            for c in 0..self.x {
                let load = self.count(u, c) + self.count(v, c);
                if load < best_load {
                    best_load = load;
                    best = c;
                }
            }
            self.colour[e] = best;
            self.cnt[u * self.x + best] += 1;
            self.cnt[v * self.x + best] += 1;
        }
    }

    /// Worst gap violation: `(vertex, over-colour, under-colour, excess)`.
    fn worst_violation(&self) -> Option<(usize, usize, usize, i64)> {
        let mut worst: Option<(usize, usize, usize, i64)> = None;
        for v in 0..self.g.vertex_count() {
            let row = &self.cnt[v * self.x..(v + 1) * self.x];
            let (mut hi_c, mut lo_c) = (0usize, 0usize);
            for c in 1..self.x {
                if row[c] > row[hi_c] {
                    hi_c = c;
                }
                if row[c] < row[lo_c] {
                    lo_c = c;
                }
            }
            let target = if self.divisible[v] { 2 } else { 1 };
            let excess = row[hi_c] - row[lo_c] - target;
            if excess > 0 && worst.map_or(true, |(_, _, _, e)| excess > e) {
                worst = Some((v, hi_c, lo_c, excess));
            }
        }
        worst
    }

    /// Walks a maximal trail from `v` whose edges alternate the colours
    /// `alpha, beta, alpha, ...` and flips every trail edge. The flip
    /// lowers the `(alpha, beta)` gap at `v` by 2 and cannot worsen the
    /// terminal vertex, so the squared-class-size potential strictly
    /// decreases. Fails (without flipping) only when the trail closes back
    /// at `v`.
    fn trail_flip(&mut self, v: usize, alpha: usize, beta: usize) -> bool {
        let mut used = std::collections::HashSet::new();
        let mut trail: Vec<usize> = Vec::new();
        let mut cur = v;
        let mut need = alpha;
        loop {
            let next = self.incident[cur]
                .iter()
                .copied()
                .find(|&e| self.colour[e] == need && !used.contains(&e));
            match next {
                Some(e) => {
                    used.insert(e);
                    trail.push(e);
                    let (a, b) = self.g.edges()[e];
                    cur = if a == cur { b } else { a };
                    need = if need == alpha { beta } else { alpha };
                }
                None => break,
            }
        }
        if trail.is_empty() || cur == v {
            return false;
        }
        for &e in &trail {
            let old = self.colour[e];
            let new = if old == alpha { beta } else { alpha };
            let (a, b) = self.g.edges()[e];
            self.cnt[a * self.x + old] -= 1;
            self.cnt[b * self.x + old] -= 1;
            self.cnt[a * self.x + new] += 1;
            self.cnt[b * self.x + new] += 1;
            self.colour[e] = new;
        }
        true
    }

    /// Recolours the whole `(alpha, beta)` component containing `v` along
    /// an Euler circuit, alternating the two colours. Odd-degree vertices
    /// are paired through a phantom vertex so their single unmatched slot
    /// absorbs imbalance; if the component has no odd vertex and odd size,
    /// the unavoidable gap-2 defect is parked on a vertex where the nearly
    /// equitable allowance applies when one exists.
    fn euler_rebalance(&mut self, v: usize, alpha: usize, beta: usize) {
        let n = self.g.vertex_count();
        let phantom = n;
        let in_pair = |c: usize| c == alpha || c == beta;

        // Component of v in the two-colour subgraph.
        let mut comp_vertices = Vec::new();
        let mut comp_edges = Vec::new();
        let mut seen_v = vec![false; n];
        let mut seen_e = vec![false; self.g.edge_count()];
        let mut stack = vec![v];
        seen_v[v] = true;
        while let Some(u) = stack.pop() {
            comp_vertices.push(u);
            for &e in &self.incident[u] {
                if !in_pair(self.colour[e]) || seen_e[e] {
                    continue;
                }
                seen_e[e] = true;
                comp_edges.push(e);
                let (a, b) = self.g.edges()[e];
                let w = if a == u { b } else { a };
                if !seen_v[w] {
                    seen_v[w] = true;
                    stack.push(w);
                }
            }
        }
        if comp_edges.is_empty() {
            return;
        }

        // Local multigraph with phantom edges attached to odd vertices.
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
        for &e in &comp_edges {
            let (a, b) = self.g.edges()[e];
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let odd: Vec<usize> = comp_vertices
            .iter()
            .copied()
            .filter(|&u| adj[u].len() % 2 == 1)
            .collect();
        let total_edges = comp_edges.len() + odd.len();
        let mut phantom_id = self.g.edge_count();
        for &u in &odd {
            adj[u].push((phantom, phantom_id));
            adj[phantom].push((u, phantom_id));
            phantom_id += 1;
        }

        let start = if !odd.is_empty() {
            phantom
        } else if total_edges % 2 == 1 {
            // Park the defect on a gap-2-tolerant vertex if possible.
            comp_vertices
                .iter()
                .copied()
                .find(|&u| self.divisible[u])
                .or_else(|| comp_vertices.iter().copied().find(|&u| u != v))
                .unwrap_or(v)
        } else {
            comp_vertices[0]
        };

        // Hierholzer. `used` is indexed by (possibly phantom) edge id.
        let mut used = vec![false; phantom_id];
        let mut ptr = vec![0usize; n + 1];
        let mut vstack = vec![start];
        let mut estack: Vec<usize> = Vec::new();
        let mut circuit: Vec<usize> = Vec::new();
        while let Some(&u) = vstack.last() {
            let mut advanced = false;
            while ptr[u] < adj[u].len() {
                let (w, e) = adj[u][ptr[u]];
                if used[e] {
                    ptr[u] += 1;
                    continue;
                }
                used[e] = true;
                vstack.push(w);
                estack.push(e);
                advanced = true;
                break;
            }
            if !advanced {
                vstack.pop();
                if let Some(e) = estack.pop() {
                    circuit.push(e);
                }
            }
        }
        circuit.reverse();
        debug_assert_eq!(circuit.len(), total_edges);

        // Strip old counts, recolour alternately along the circuit
        // (phantom edges advance the alternation but colour nothing),
        // then restore counts.
        for &e in &comp_edges {
            let (a, b) = self.g.edges()[e];
            let c = self.colour[e];
            self.cnt[a * self.x + c] -= 1;
            self.cnt[b * self.x + c] -= 1;
        }
        for (pos, &e) in circuit.iter().enumerate() {
            if e < self.g.edge_count() {
                self.colour[e] = if pos % 2 == 0 { alpha } else { beta };
            }
        }
        for &e in &comp_edges {
            let (a, b) = self.g.edges()[e];
            let c = self.colour[e];
            self.cnt[a * self.x + c] += 1;
            self.cnt[b * self.x + c] += 1;
        }
    }

    fn contract_satisfied(&self) -> bool {
        self.worst_violation().is_none()
    }

    fn run(&mut self, budget: usize) -> bool {
        let mut steps = 0;
        while let Some((v, alpha, beta, _)) = self.worst_violation() {
            if steps >= budget {
                return false;
            }
            steps += 1;
            if !self.trail_flip(v, alpha, beta) {
                self.euler_rebalance(v, alpha, beta);
            }
        }
        true
    }
}

/// Equitable edge-colouring of a simple graph with `x` colours, under the
/// condition that no two adjacent vertices both have degree divisible by
/// `x`. Deterministic; equivalent to
/// [`equitable_colour_simple_seeded`] with seed 0.
///
/// Contract of the result: at every vertex `v` with `x` not dividing
/// `d(v)`, all class sizes lie in `{floor(d/x), ceil(d/x)}` (gap at most
/// 1); at vertices with `x | d(v)` the gap is at most 2.
pub fn equitable_colour_simple(
    g: &SimpleGraph,
    x: usize,
) -> Result<EdgeColouring, ColouringError> {
    equitable_colour_simple_seeded(g, x, 0)
}

/// [`equitable_colour_simple`] with an explicit seed for the randomized
/// retry tie-breaking.
pub fn equitable_colour_simple_seeded(
    g: &SimpleGraph,
    x: usize,
    seed: u64,
) -> Result<EdgeColouring, ColouringError> {
    if x < 1 {
        return Err(ColouringError::InvalidColourCount);
    }
    for &(u, v) in g.edges() {
        if g.degree(u) % x == 0 && g.degree(v) % x == 0 {
            return Err(ColouringError::ConditionViolated { u, v });
        }
    }
    let m = g.edge_count();
    if x == 1 || m == 0 {
        let col = EdgeColouring::new(x.max(1), vec![0; m]);
        return Ok(col);
    }

    const RETRIES: usize = 8;
    let budget = 10 * x * m + 64;
    let mut balancer = Balancer::new(g, x);
    for retry in 0..RETRIES {
        if retry == 0 {
            balancer.greedy_init(None);
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(retry as u64));
            balancer.greedy_init(Some(&mut rng));
            // A random colour kick diversifies the landscape between
            // retries.
            for e in 0..m {
                if rng.gen_ratio(1, 8) {
                    let (u, v) = g.edges()[e];
                    let old = balancer.colour[e];
                    let new = rng.gen_range(0..x);
                    balancer.cnt[u * x + old] -= 1;
                    balancer.cnt[v * x + old] -= 1;
                    balancer.cnt[u * x + new] += 1;
                    balancer.cnt[v * x + new] += 1;
                    balancer.colour[e] = new;
                }
            }
        }
        if balancer.run(budget) {
            debug_assert!(balancer.contract_satisfied());
            let col = EdgeColouring::new(x, balancer.colour.clone());
            // Mandatory post-verification against the contract.
            balancer.recount();
            let report = imbalance(g, &col);
            let ok = (0..g.vertex_count()).all(|v| {
                let allowed = if g.degree(v) % x == 0 { 2 } else { 1 };
                report.per_vertex_gaps[v] <= allowed
            });
            if ok {
                return Ok(col);
            }
        }
    }
    Err(ColouringError::BalancingFailed { x, retries: RETRIES })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gap_contract_holds(g: &SimpleGraph, col: &EdgeColouring, x: usize) -> bool {
        let report = imbalance(g, col);
        (0..g.vertex_count()).all(|v| {
            let allowed = if g.degree(v) % x == 0 { 2 } else { 1 };
            report.per_vertex_gaps[v] <= allowed
        })
    }

    #[test]
    fn imbalance_alternating_cycle() {
        let c6 = SimpleGraph::cycle(6);
        // Canonical order of C6 edges: (0,1),(0,5),(1,2),(2,3),(3,4),(4,5).
        // Alternate around the cycle: 0-1:0, 1-2:1, 2-3:0, 3-4:1, 4-5:0, 5-0:1.
        let col = EdgeColouring::new(2, vec![0, 1, 1, 0, 1, 0]);
        assert_eq!(imbalance(&c6, &col).max_pairwise_gap, 0);
    }

    #[test]
    fn imbalance_star_and_monochrome() {
        let star = SimpleGraph::star(3);
        let col = EdgeColouring::new(2, vec![0, 0, 1]);
        let report = imbalance(&star, &col);
        assert_eq!(report.max_pairwise_gap, 1);

        let c6 = SimpleGraph::cycle(6);
        let col = EdgeColouring::new(2, vec![0; 6]);
        assert_eq!(imbalance(&c6, &col).max_pairwise_gap, 2);
    }

    fn alternating_sides(n: usize) -> Vec<bool> {
        (0..n).map(|v| v % 2 == 1).collect()
    }

    #[test]
    fn bipartite_cycle_two_colours() {
        let c6 = SimpleGraph::cycle(6);
        let col = equitable_colour_bipartite(&c6, &alternating_sides(6), 2).unwrap();
        assert!(imbalance(&c6, &col).max_pairwise_gap <= 1);
    }

    #[test]
    fn bipartite_k33_three_colours_is_proper_grade() {
        let k33 = SimpleGraph::complete_bipartite(3, 3);
        let sides: Vec<bool> = (0..6).map(|v| v >= 3).collect();
        let col = equitable_colour_bipartite(&k33, &sides, 3).unwrap();
        for v in 0..6 {
            for c in 0..3 {
                assert_eq!(col.class_degree(&k33, v, c), 1);
            }
        }
    }

    #[test]
    fn bipartite_path_middle_vertices() {
        let p4 = SimpleGraph::path(4);
        let col = equitable_colour_bipartite(&p4, &alternating_sides(4), 2).unwrap();
        assert!(imbalance(&p4, &col).max_pairwise_gap <= 1);
        for v in [1, 2] {
            let a = col.class_degree(&p4, v, 0);
            let b = col.class_degree(&p4, v, 1);
            assert_eq!((a + b, a.abs_diff(b)), (2, 0));
        }
    }

    #[test]
    fn bipartite_rejects_odd_cycle() {
        let c5 = SimpleGraph::cycle(5);
        let err = equitable_colour_bipartite(&c5, &alternating_sides(5), 2).unwrap_err();
        assert!(matches!(err, ColouringError::NotBipartite(_, _)));
    }

    #[test]
    fn simple_cycle_three_colours() {
        let c6 = SimpleGraph::cycle(6);
        let col = equitable_colour_simple(&c6, 3).unwrap();
        assert!(imbalance(&c6, &col).max_pairwise_gap <= 1);
    }

    #[test]
    fn simple_rejects_adjacent_divisible() {
        let petersen = SimpleGraph::petersen();
        let err = equitable_colour_simple(&petersen, 3).unwrap_err();
        assert!(matches!(err, ColouringError::ConditionViolated { .. }));
    }

    #[test]
    fn simple_star_with_divisible_centre() {
        // K_{1,4}: degrees 4,1,1,1,1; with x = 2 the centre is divisible
        // but its neighbours are not, so the condition holds.
        let star = SimpleGraph::star(4);
        let col = equitable_colour_simple(&star, 2).unwrap();
        assert!(gap_contract_holds(&star, &col, 2));
    }

    #[test]
    fn simple_is_deterministic() {
        let g = SimpleGraph::complete(8); // 7-regular, 2 does not divide 7
        let a = equitable_colour_simple(&g, 2).unwrap();
        let b = equitable_colour_simple(&g, 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn simple_handles_larger_regular_graph() {
        let g = SimpleGraph::complete(9); // 8-regular, 36 edges
        let col = equitable_colour_simple(&g, 3).unwrap();
        assert!(gap_contract_holds(&g, &col, 3));
    }

    fn arb_bipartite() -> impl Strategy<Value = (SimpleGraph, Vec<bool>)> {
        (1usize..5, 1usize..5).prop_flat_map(|(p, q)| {
            let pairs: Vec<(usize, usize)> =
                (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v))).collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
                let edges = pairs
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &keep)| keep)
                    .map(|(&e, _)| e);
                let g = SimpleGraph::new(p + q, edges).unwrap();
                let sides = (0..p + q).map(|v| v >= p).collect();
                (g, sides)
            })
        })
    }

    proptest! {
        // Cross-validation: on bipartite inputs both engines meet the
        // gap <= 1 contract (where the simple engine's precondition holds).
        #[test]
        fn engines_cross_validate_on_bipartite((g, sides) in arb_bipartite(), x in 1usize..4) {
            let bip = equitable_colour_bipartite(&g, &sides, x).unwrap();
            prop_assert!(imbalance(&g, &bip).max_pairwise_gap <= 1);

            match equitable_colour_simple(&g, x) {
                Ok(col) => {
                    let report = imbalance(&g, &col);
                    for v in 0..g.vertex_count() {
                        let allowed = if g.degree(v) % x == 0 { 2 } else { 1 };
                        prop_assert!(report.per_vertex_gaps[v] <= allowed);
                    }
                }
                Err(ColouringError::ConditionViolated { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(format!("unexpected error: {e}"))),
            }
        }

        #[test]
        fn simple_engine_contract_on_random_graphs(
            n in 3usize..9,
            mask in proptest::collection::vec(any::<bool>(), 36),
            x in 2usize..4
        ) {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let edges = pairs.iter().zip(&mask).filter(|(_, &k)| k).map(|(&e, _)| e);
            let g = SimpleGraph::new(n, edges).unwrap();
            match equitable_colour_simple(&g, x) {
                Ok(col) => {
                    let report = imbalance(&g, &col);
                    for v in 0..g.vertex_count() {
                        let allowed = if g.degree(v) % x == 0 { 2 } else { 1 };
                        prop_assert!(report.per_vertex_gaps[v] <= allowed);
                    }
                }
                Err(ColouringError::ConditionViolated { .. }) => {}
                Err(ColouringError::BalancingFailed { .. }) => {
                    // Permitted escape hatch, but it should be rare; the
                    // factorization pipeline exercises this hard.
                }
                Err(e) => return Err(TestCaseError::fail(format!("unexpected error: {e}"))),
            }
        }
    }
}
