//! Threshold numbers and constructive `(r, r+a)`-factorizations of simple
//! graphs.
//!
//! A `(d, d+s)`-graph is a graph whose degrees all lie in `{d, ..., d+s}`;
//! an `(r, r+a)`-factor is a spanning subgraph whose degrees all lie in
//! `{r, ..., r+a}`; an `(r, r+a)`-factorization partitions the edge set into
//! edge-disjoint `(r, r+a)`-factors. The threshold number `sigma(r, s, a, t)`
//! is the least `d0` such that every simple `(d, d+s)`-graph with `d >= d0`
//! admits factorizations with `x` factors for at least `t` distinct `x`.
//!
//! The crate provides:
//!
//! * [`graph`] — simple-graph representation and edge-list text I/O;
//! * [`thresholds`] — closed-form threshold calculators, the exact
//!   feasible-factor-count characterization, an independent interval-search
//!   oracle, and a cross-check engine over all of them;
//! * [`colouring`] — equitable and nearly equitable edge-colouring engines;
//! * [`factorizer`] — constructive factorization via pendant augmentation
//!   and equitable colouring, an exact backtracking solver, and a verifier;
//! * [`extremal`] — generators for boundary graphs together with
//!   machine-checked edge-counting certificates of non-factorizability;
//! * [`oracle`] — brute-force ground-truth decision procedures and seeded
//!   random corpora used to validate everything else.

pub mod colouring;
pub mod extremal;
pub mod factorizer;
pub mod graph;
pub mod oracle;
pub mod thresholds;

pub use colouring::{
    equitable_colour_bipartite, equitable_colour_simple, equitable_colour_simple_seeded,
    imbalance, ColouringError, EdgeColouring, ImbalanceReport,
};
pub use extremal::{
    counting_certificate, gen_boundary_eo, gen_boundary_oo, gen_lemma14_regular,
    gen_lemma14_topend, BoundaryInstance, CountingCertificate, ExtremalError,
};
pub use factorizer::{
    augment_pendants, factorize, factorize_exact, factorize_exact_capped, factorize_interior,
    read_factorization, verify_factorization, write_factorization, AugmentedGraph, Factorization,
    FactorizeError, VerificationReport, Violation,
};
pub use graph::{read_graph, write_graph, DegreeProfile, GraphError, ParseError, SimpleGraph};
pub use oracle::{
    conformance_sweep, exists_factorization, exists_factorization_capped, sample_dds_graphs,
    CellVerdict, ConformanceCell, ConformanceReport, Corpus, CorpusSpec, OracleError,
    OracleVerdict,
};
pub use thresholds::{
    beta, big_n, crosscheck, feasible_x_set, mu_bounds, pi, sigma, sigma_bounds, sigma_by_search,
    CrossCheckReport, Discrepancy, DiscrepancyKind, FeasibleSet, FormulaEntry, FormulaValue,
    ParityCase, Pi, PiOutcome, ThresholdError, ThresholdParams,
};
