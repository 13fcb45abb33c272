//! Closed-form threshold calculators, the exact feasible-factor-count
//! characterization, an independent interval-search oracle, and a
//! cross-check engine over all of them.
//!
//! All arithmetic in this module is exact (integers and rationals); the
//! content of every formula is a ceiling or a strict/closed inequality
//! boundary, so floating point is banned here.
//!
//! The central quantities, for parameters `r >= 1`, `s >= 0`, `a >= 0`,
//! `t >= 1`:
//!
//! * `N(r, s, a, t) = r * ceil((rt + s - 1) / a) + (t - 1) r` — the shared
//!   bipartite threshold value ([`big_n`], [`beta`]);
//! * `sigma(r, s, a, t)` — the simple-graph threshold, a four-way parity
//!   case split on `(r mod 2, a mod 2)` ([`sigma`]);
//! * the feasible set of factor counts `x` for a `(d, d+s)`-graph, an
//!   integer interval between `(d+s)/(r+a)` and `d/r` whose endpoint
//!   openness depends on the same parity split ([`feasible_x_set`]);
//! * `pi` and `mu` — the pseudograph and multigraph analogues, evaluated
//!   as published calculators only ([`pi`], [`mu_bounds`]).
//!
//! [`sigma_by_search`] recomputes `sigma` from nothing but the feasible-set
//! characterization, and [`crosscheck`] evaluates every applicable formula
//! side by side and reports disagreements as data rather than reconciling
//! them. The known conflict between the general parity formula and the
//! specialized `a = 1` closed form at `s >= 2` is surfaced this way, as are
//! the small-parameter corners where the closed forms overshoot the
//! search value because a `(d, d+s)`-graph with `r <= d` and
//! `d + s <= r + a` is already its own factor.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ThresholdError {
    #[error("division by zero: formula requires a >= 1")]
    DivisionByZero,
    #[error("parameters out of scope: {0}")]
    OutOfScope(&'static str),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("search exhausted: no d0 <= {d_cap} satisfies the threshold condition")]
    SearchExhausted { d_cap: i64 },
    #[error("search cap {got} below required headroom {needed}")]
    HeadroomTooSmall { needed: i64, got: i64 },
}

/// The parameter tuple `(r, s, a, t)` of a threshold query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ThresholdParams {
    pub r: i64,
    pub s: i64,
    pub a: i64,
    pub t: i64,
}

impl ThresholdParams {
    pub fn new(r: i64, s: i64, a: i64, t: i64) -> Result<Self, ThresholdError> {
        if r < 0 || s < 0 || a < 0 {
            return Err(ThresholdError::InvalidParams(format!(
                "r, s, a must be non-negative (got r={r}, s={s}, a={a})"
            )));
        }
        if t < 1 {
            return Err(ThresholdError::InvalidParams(format!(
                "t must be at least 1 (got t={t})"
            )));
        }
        Ok(ThresholdParams { r, s, a, t })
    }

    /// Parity classification of `(r mod 2, a mod 2)`; defined for
    /// `r >= 1`, `a >= 1`.
    pub fn parity_case(&self) -> Option<ParityCase> {
        if self.r < 1 || self.a < 1 {
            return None;
        }
        Some(parity_case(self.r, self.a))
    }
}

/// The four parity regimes of `(r, a)`, which control both the `sigma`
/// formula and the openness of the feasible interval endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParityCase {
    /// `r` even, `a` even: closed/closed interval.
    EvenEven,
    /// `r` odd, `a` even: open/open interval.
    OddEven,
    /// `r` even, `a` odd: open/closed interval.
    EvenOdd,
    /// `r` odd, `a` odd: closed/open interval.
    OddOdd,
}

fn parity_case(r: i64, a: i64) -> ParityCase {
    match (r % 2 != 0, a % 2 != 0) {
        (false, false) => ParityCase::EvenEven,
        (true, false) => ParityCase::OddEven,
        (false, true) => ParityCase::EvenOdd,
        (true, true) => ParityCase::OddOdd,
    }
}

/// Exact `ceil(num / den)` for `num >= 0`, `den >= 1`.
fn ceil_div(num: i64, den: i64) -> i64 {
    debug_assert!(num >= 0 && den >= 1);
    (num + den - 1).div_euclid(den)
}

/// `N(r, s, a, t) = r * ceil((rt + s - 1) / a) + (t - 1) r`.
///
/// Requires `r >= 1`, `t >= 1`; `a = 0` leaves the ceiling undefined.
pub fn big_n(p: &ThresholdParams) -> Result<i64, ThresholdError> {
    if p.a == 0 {
        return Err(ThresholdError::DivisionByZero);
    }
    if p.r < 1 || p.t < 1 || p.s < 0 {
        return Err(ThresholdError::InvalidParams(format!(
            "big_n requires r >= 1, t >= 1, s >= 0 (got {p:?})"
        )));
    }
    Ok(p.r * ceil_div(p.r * p.t + p.s - 1, p.a) + (p.t - 1) * p.r)
}

/// The bipartite threshold `beta(r, s, a, t)`, which coincides with
/// `N(r, s, a, t)` for both multigraphs and simple bipartite graphs.
pub fn beta(p: &ThresholdParams) -> Result<i64, ThresholdError> {
    big_n(p)
}

/// The simple-graph threshold `sigma(r, s, a, t)`, split by parity:
///
/// * `r` odd, `a` even: `r ceil((tr+s+1)/a) + (t-1)r + 1`, except
///   `sigma = r` when `t = 1` and `a >= r + s + 1`;
/// * `r` even, `a` even: `r ceil((tr+s-1)/a) + (t-1)r`;
/// * `r` even, `a` odd: `r ceil((tr+s)/a) + (t-1)r`;
/// * `r` odd, `a` odd: `r ceil((tr+s)/a) + (t-1)r + 1`, except
///   `sigma = r` when `t = 1` and `a >= r + s`.
pub fn sigma(p: &ThresholdParams) -> Result<i64, ThresholdError> {
    if p.r < 1 || p.a < 1 {
        return Err(ThresholdError::OutOfScope(
            "sigma is evaluated only for r >= 1 and a >= 1",
        ));
    }
    if p.s < 0 || p.t < 1 {
        return Err(ThresholdError::InvalidParams(format!(
            "sigma requires s >= 0, t >= 1 (got {p:?})"
        )));
    }
    let (r, s, a, t) = (p.r, p.s, p.a, p.t);
    Ok(match parity_case(r, a) {
        ParityCase::OddEven => {
            if t == 1 && a >= r + s + 1 {
                r
            } else {
                r * ceil_div(t * r + s + 1, a) + (t - 1) * r + 1
            }
        }
        ParityCase::EvenEven => r * ceil_div(t * r + s - 1, a) + (t - 1) * r,
        ParityCase::EvenOdd => r * ceil_div(t * r + s, a) + (t - 1) * r,
        ParityCase::OddOdd => {
            if t == 1 && a >= r + s {
                r
            } else {
                r * ceil_div(t * r + s, a) + (t - 1) * r + 1
            }
        }
    })
}

/// The specialized closed form for `a = 1`:
///
/// * `tr^2 + tr + sr - r` for `r` even, `s <= 1`;
/// * `tr^2 + tr + sr - r + 1` for `r` odd, `s <= 1`;
/// * `tr^2 + tr + sr + 1` for `s >= 2`.
///
/// For `s >= 2` this published form disagrees with [`sigma`]; the conflict
/// is reported by [`crosscheck`], never resolved here.
pub fn sigma_a1(p: &ThresholdParams) -> Result<i64, ThresholdError> {
    if p.a != 1 || p.r < 1 || p.t < 1 {
        return Err(ThresholdError::OutOfScope(
            "the specialized closed form applies only to a = 1, r >= 1, t >= 1",
        ));
    }
    let (r, s, t) = (p.r, p.s, p.t);
    Ok(if s >= 2 {
        t * r * r + t * r + s * r + 1
    } else if r % 2 == 0 {
        t * r * r + t * r + s * r - r
    } else {
        t * r * r + t * r + s * r - r + 1
    })
}

/// The classical value for regular graphs with a unit window
/// (`s = 0`, `a = 1`, `t = 1`, `r >= 3`): `r^2` for even `r`, `r^2 + 1`
/// for odd `r`.
pub fn sigma_square(r: i64) -> Result<i64, ThresholdError> {
    if r < 3 {
        return Err(ThresholdError::OutOfScope(
            "the square closed form applies only to r >= 3",
        ));
    }
    Ok(if r % 2 == 0 { r * r } else { r * r + 1 })
}

/// Lower and upper bounds bracketing `sigma`:
/// `(N(r,s,a,t), r ceil((tr+s+1)/a) + (t-1)r + 1)`.
///
/// The upper bound is stated for `a >= 2` but evaluates (and empirically
/// brackets) for `a = 1` as well, which the bound-chain checks rely on;
/// only `a = 0` is rejected.
pub fn sigma_bounds(p: &ThresholdParams) -> Result<(i64, i64), ThresholdError> {
    if p.a < 1 {
        return Err(ThresholdError::OutOfScope(
            "sigma_bounds requires a >= 1",
        ));
    }
    if p.r < 1 || p.t < 1 {
        return Err(ThresholdError::InvalidParams(format!(
            "sigma_bounds requires r >= 1, t >= 1 (got {p:?})"
        )));
    }
    let lower = big_n(p)?;
    let upper = p.r * ceil_div(p.t * p.r + p.s + 1, p.a) + (p.t - 1) * p.r + 1;
    Ok((lower, upper))
}

/// Bounds on the multigraph threshold for `s = 0`, `a = 1`, `t = 1`:
/// exactly `r^2 + 1` for odd `r`, and
/// `[3r^2/2 - 2r - 1, 3r^2/2 + 3r + 1]` for even `r`.
pub fn mu_bounds(r: i64) -> Result<(i64, i64), ThresholdError> {
    if r < 1 {
        return Err(ThresholdError::InvalidParams(format!(
            "mu_bounds requires r >= 1 (got {r})"
        )));
    }
    Ok(if r % 2 == 1 {
        (r * r + 1, r * r + 1)
    } else {
        let q = 3 * r * r / 2;
        (q - 2 * r - 1, q + 3 * r + 1)
    })
}

/// Outcome of a pseudograph threshold query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PiOutcome {
    Finite(i64),
    /// No finite threshold exists.
    Infinite,
    /// Not determined by any published case.
    Open,
}

/// Pseudograph threshold value plus its provenance: the `a = 2`, `r` odd
/// regime is published only as a conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Pi {
    pub outcome: PiOutcome,
    pub conjectured: bool,
}

/// The pseudograph threshold `pi(r, s, a, t)`.
///
/// * `a = 0`: infinite.
/// * `a = 1`: `2` for `(r, s, t) = (2, 0, 1)`, `1` for `(1, 0, 1)`,
///   infinite otherwise.
/// * `a = 2`, `r` odd (conjectured regime): infinite when `s > 1` or
///   `t > 1`; `1` when `r = 1`, `s <= 1`, `t = 1`; open otherwise.
/// * `a >= 2` otherwise, by parity of `(r, a)` with `m`-dependent
///   corrections (`m = (r+1)t + s` or `rt + s`):
///   both even `N(r,s,a,t)`; both odd `N(r+1,s,a-1,t) - 1`, minus a further
///   `r + 1` when `m = (r+1)t+s` is congruent to `2 (mod a-1)`; `r` odd `a`
///   even `N(r+1,s,a-2,t) - 1`, minus `r + 1` when `m` is congruent to `2`
///   or `3 (mod a-2)`; `r` even `a` odd `N(r,s,a-1,t)`, minus `r` when
///   `m = rt+s` is congruent to `2 (mod a-1)`.
pub fn pi(p: &ThresholdParams) -> Result<Pi, ThresholdError> {
    if p.r < 1 || p.t < 1 || p.s < 0 || p.a < 0 {
        return Err(ThresholdError::InvalidParams(format!(
            "pi requires r >= 1, t >= 1, s >= 0, a >= 0 (got {p:?})"
        )));
    }
    let (r, s, a, t) = (p.r, p.s, p.a, p.t);
    let proved = |outcome| Pi {
        outcome,
        conjectured: false,
    };
    if a == 0 {
        return Ok(proved(PiOutcome::Infinite));
    }
    if a == 1 {
        let v = if r == 2 && s == 0 && t == 1 {
            PiOutcome::Finite(2)
        } else if r == 1 && s == 0 && t == 1 {
            PiOutcome::Finite(1)
        } else {
            PiOutcome::Infinite
        };
        return Ok(proved(v));
    }
    if a == 2 && r % 2 == 1 {
        let outcome = if s > 1 || t > 1 {
            PiOutcome::Infinite
        } else if r == 1 {
            PiOutcome::Finite(1)
        } else {
            PiOutcome::Open
        };
        return Ok(Pi {
            outcome,
            conjectured: true,
        });
    }
    let congruent = |m: i64, target: i64, modulus: i64| -> bool {
        debug_assert!(modulus >= 1);
        m.rem_euclid(modulus) == target.rem_euclid(modulus)
    };
    let value = match parity_case(r, a) {
        ParityCase::EvenEven => big_n(p)?,
        ParityCase::OddOdd => {
            let shifted = ThresholdParams::new(r + 1, s, a - 1, t)?;
            let base = big_n(&shifted)? - 1;
            let m = (r + 1) * t + s;
            if congruent(m, 2, a - 1) {
                base - (r + 1)
            } else {
                base
            }
        }
        ParityCase::OddEven => {
            let shifted = ThresholdParams::new(r + 1, s, a - 2, t)?;
            let base = big_n(&shifted)? - 1;
            let m = (r + 1) * t + s;
            if congruent(m, 2, a - 2) || congruent(m, 3, a - 2) {
                base - (r + 1)
            } else {
                base
            }
        }
        ParityCase::EvenOdd => {
            let shifted = ThresholdParams::new(r, s, a - 1, t)?;
            let base = big_n(&shifted)?;
            let m = r * t + s;
            if congruent(m, 2, a - 1) {
                base - r
            } else {
                base
            }
        }
    };
    Ok(proved(PiOutcome::Finite(value)))
}

/// The set of integer factor counts `x` admissible for a `(d, d+s)`-graph
/// under a given `(r, r+a)` window.
///
/// `members` lists every admissible `x >= 1`; they always form a
/// contiguous run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleSet {
    /// `(d + s) / (r + a)`, the lower interval endpoint.
    pub lower: Ratio<i64>,
    /// `d / r`, the upper interval endpoint.
    pub upper: Ratio<i64>,
    pub lower_open: bool,
    pub upper_open: bool,
    pub members: Vec<i64>,
    /// Whether the parity case's side condition on `d` held. When it fails,
    /// `members` still lists the interval integers, plus `x = 1` exactly
    /// when `r <= d` and `d + s <= r + a` (the graph is then its own
    /// factor).
    pub side_condition_met: bool,
}

impl FeasibleSet {
    pub fn contains(&self, x: i64) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Computes the feasible factor counts for a `(d, d+s)`-graph and window
/// `(r, r+a)`.
///
/// Endpoint openness by parity of `(r, a)`: even/even closed-closed,
/// odd/even open-open, even/odd open-closed, odd/odd closed-open. Side
/// conditions: `d > max(r, r+s-a)` (odd/even), `d > r+a-s` (even/odd),
/// `d > r` (odd/odd); even/even has none.
pub fn feasible_x_set(d: i64, s: i64, r: i64, a: i64) -> Result<FeasibleSet, ThresholdError> {
    if r < 1 {
        return Err(ThresholdError::OutOfScope(
            "feasible_x_set requires r >= 1",
        ));
    }
    if d < 1 || s < 0 || a < 0 {
        return Err(ThresholdError::InvalidParams(format!(
            "feasible_x_set requires d >= 1, s >= 0, a >= 0 (got d={d}, s={s}, r={r}, a={a})"
        )));
    }
    let lower = Ratio::new(d + s, r + a);
    let upper = Ratio::new(d, r);
    // a = 0 behaves like the "a even" cases for endpoint openness.
    let case = if a == 0 {
        if r % 2 == 0 {
            ParityCase::EvenEven
        } else {
            ParityCase::OddEven
        }
    } else {
        parity_case(r, a)
    };
    let (lower_open, upper_open, side_condition_met) = match case {
        ParityCase::EvenEven => (false, false, true),
        ParityCase::OddEven => (true, true, d > r.max(r + s - a)),
        ParityCase::EvenOdd => (true, false, d > r + a - s),
        ParityCase::OddOdd => (false, true, d > r),
    };

    let min_x = if lower_open {
        lower.floor().to_integer() + 1
    } else {
        lower.ceil().to_integer()
    };
    let max_x = if upper_open {
        upper.ceil().to_integer() - 1
    } else {
        upper.floor().to_integer()
    };
    let mut members: Vec<i64> = (min_x.max(1)..=max_x).collect();
    if !side_condition_met && r <= d && d + s <= r + a && !members.contains(&1) {
        members.push(1);
        members.sort_unstable();
    }
    Ok(FeasibleSet {
        lower,
        upper,
        lower_open,
        upper_open,
        members,
        side_condition_met,
    })
}

/// Recomputes `sigma` from the feasible-set characterization alone: the
/// least `d0` such that every `d` in `[d0, d_cap]` admits at least `t`
/// feasible factor counts. Scans `d` downward from `d_cap`.
///
/// The caller supplies headroom: `d_cap` must be at least
/// `sigma(p) + r + a` so the scan starts safely inside the good regime.
pub fn sigma_by_search(p: &ThresholdParams, d_cap: i64) -> Result<i64, ThresholdError> {
    let formula = sigma(p)?;
    let needed = formula + p.r + p.a;
    if d_cap < needed {
        return Err(ThresholdError::HeadroomTooSmall {
            needed,
            got: d_cap,
        });
    }
    let count = |d: i64| -> Result<usize, ThresholdError> {
        Ok(feasible_x_set(d, p.s, p.r, p.a)?.members.len())
    };
    if count(d_cap)? < p.t as usize {
        return Err(ThresholdError::SearchExhausted { d_cap });
    }
    for d in (1..=d_cap).rev() {
        if count(d)? < p.t as usize {
            return Ok(d + 1);
        }
    }
    Ok(1)
}

/// A named formula value inside a [`CrossCheckReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaEntry {
    pub name: String,
    pub value: FormulaValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum FormulaValue {
    Int(i64),
    Infinite,
    Open,
    Bounds(i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscrepancyKind {
    /// Two point estimators of the same quantity disagree.
    Mismatch,
    /// A required ordering (lower <= value <= upper chain) is violated.
    OrderViolation,
}

/// A flagged disagreement between two entries, with the signed difference
/// `left - right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub left: String,
    pub right: String,
    pub kind: DiscrepancyKind,
    pub difference: i64,
}

/// Side-by-side evaluation of every formula applicable to one parameter
/// tuple, plus the search oracle, with all pairwise agreements and
/// disagreements recorded. Nothing is silently reconciled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub params: ThresholdParams,
    pub values: Vec<FormulaEntry>,
    pub agreements: Vec<(String, String)>,
    pub discrepancies: Vec<Discrepancy>,
}

impl CrossCheckReport {
    pub fn value(&self, name: &str) -> Option<&FormulaValue> {
        self.values
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.value)
    }

    pub fn has_discrepancy(&self, left: &str, right: &str) -> bool {
        self.find_discrepancy(left, right).is_some()
    }

    pub fn find_discrepancy(&self, left: &str, right: &str) -> Option<&Discrepancy> {
        self.discrepancies
            .iter()
            .find(|d| d.left == left && d.right == right)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Evaluates `N`, `beta`, `sigma`, the `a = 1` and square special forms
/// where applicable, the bracketing bounds, `pi`, `mu` bounds, and the
/// interval-search oracle, then compares every pair of `sigma` estimators
/// and checks the ordering chain `N <= sigma <= upper` and
/// `sigma <= pi` (when finite).
pub fn crosscheck(p: &ThresholdParams) -> Result<CrossCheckReport, ThresholdError> {
    if p.r < 1 || p.a < 1 {
        return Err(ThresholdError::OutOfScope(
            "crosscheck requires r >= 1 and a >= 1",
        ));
    }
    let mut values = Vec::new();
    let n_value = big_n(p)?;
    values.push(FormulaEntry {
        name: "n".into(),
        value: FormulaValue::Int(n_value),
    });
    values.push(FormulaEntry {
        name: "beta".into(),
        value: FormulaValue::Int(beta(p)?),
    });
    let sigma_value = sigma(p)?;
    values.push(FormulaEntry {
        name: "sigma".into(),
        value: FormulaValue::Int(sigma_value),
    });

    // Point estimators of sigma, compared pairwise below.
    let mut estimators: Vec<(String, i64)> = vec![("sigma".into(), sigma_value)];

    if p.a == 1 {
        let v = sigma_a1(p)?;
        values.push(FormulaEntry {
            name: "sigma_a1".into(),
            value: FormulaValue::Int(v),
        });
        estimators.push(("sigma_a1".into(), v));
    }
    if p.a == 1 && p.s == 0 && p.t == 1 && p.r >= 3 {
        let v = sigma_square(p.r)?;
        values.push(FormulaEntry {
            name: "sigma_square".into(),
            value: FormulaValue::Int(v),
        });
        estimators.push(("sigma_square".into(), v));
    }

    let (bound_lo, bound_hi) = sigma_bounds(p)?;
    values.push(FormulaEntry {
        name: "sigma_bounds".into(),
        value: FormulaValue::Bounds(bound_lo, bound_hi),
    });

    let pi_value = pi(p)?;
    values.push(FormulaEntry {
        name: "pi".into(),
        value: match pi_value.outcome {
            PiOutcome::Finite(v) => FormulaValue::Int(v),
            PiOutcome::Infinite => FormulaValue::Infinite,
            PiOutcome::Open => FormulaValue::Open,
        },
    });

    if p.a == 1 && p.s == 0 && p.t == 1 {
        let (lo, hi) = mu_bounds(p.r)?;
        values.push(FormulaEntry {
            name: "mu_bounds".into(),
            value: FormulaValue::Bounds(lo, hi),
        });
    }

    let search = sigma_by_search(p, sigma_value + 3 * (p.r + p.a))?;
    values.push(FormulaEntry {
        name: "sigma_search".into(),
        value: FormulaValue::Int(search),
    });
    estimators.push(("sigma_search".into(), search));

    let mut agreements = Vec::new();
    let mut discrepancies = Vec::new();
    for i in 0..estimators.len() {
        for j in i + 1..estimators.len() {
            let (ref ln, lv) = estimators[i];
            let (ref rn, rv) = estimators[j];
            if lv == rv {
                agreements.push((ln.clone(), rn.clone()));
            } else {
                discrepancies.push(Discrepancy {
                    left: ln.clone(),
                    right: rn.clone(),
                    kind: DiscrepancyKind::Mismatch,
                    difference: lv - rv,
                });
            }
        }
    }
    if n_value > sigma_value {
        discrepancies.push(Discrepancy {
            left: "n".into(),
            right: "sigma".into(),
            kind: DiscrepancyKind::OrderViolation,
            difference: n_value - sigma_value,
        });
    }
    if sigma_value > bound_hi {
        discrepancies.push(Discrepancy {
            left: "sigma".into(),
            right: "sigma_bounds.upper".into(),
            kind: DiscrepancyKind::OrderViolation,
            difference: sigma_value - bound_hi,
        });
    }
    if let PiOutcome::Finite(pv) = pi_value.outcome {
        if sigma_value > pv {
            discrepancies.push(Discrepancy {
                left: "sigma".into(),
                right: "pi".into(),
                kind: DiscrepancyKind::OrderViolation,
                difference: sigma_value - pv,
            });
        }
    }

    Ok(CrossCheckReport {
        params: *p,
        values,
        agreements,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(r: i64, s: i64, a: i64, t: i64) -> ThresholdParams {
        ThresholdParams::new(r, s, a, t).unwrap()
    }

    #[test]
    fn big_n_values() {
        assert_eq!(big_n(&params(2, 0, 2, 1)).unwrap(), 2);
        // 2 * ceil(9/1) + 4 * 2 = 18 + 8
        assert_eq!(big_n(&params(2, 0, 1, 5)).unwrap(), 26);
        assert_eq!(big_n(&params(1, 0, 1, 1)).unwrap(), 0);
        assert_eq!(
            big_n(&params(2, 0, 0, 1)),
            Err(ThresholdError::DivisionByZero)
        );
    }

    #[test]
    fn sigma_fixtures() {
        assert_eq!(sigma(&params(2, 0, 1, 5)).unwrap(), 28);
        assert_eq!(sigma(&params(1, 0, 1, 1)).unwrap(), 1);
        assert_eq!(sigma(&params(4, 0, 1, 1)).unwrap(), 16);
        assert_eq!(sigma(&params(3, 0, 1, 1)).unwrap(), 10);
        assert_eq!(sigma(&params(2, 0, 2, 1)).unwrap(), 2);
        // odd/even with t = 2: 3 * ceil(7/2) + 3 + 1
        assert_eq!(sigma(&params(3, 0, 2, 2)).unwrap(), 16);
        // odd/even special branch: t = 1, a >= r + s + 1
        assert_eq!(sigma(&params(3, 0, 4, 1)).unwrap(), 3);
        assert_eq!(
            sigma(&params(2, 0, 0, 1)),
            Err(ThresholdError::OutOfScope(
                "sigma is evaluated only for r >= 1 and a >= 1"
            ))
        );
    }

    #[test]
    fn sigma_a1_conflict_values() {
        // The a=1 closed form at s >= 2 disagrees with the parity formula.
        assert_eq!(sigma_a1(&params(2, 2, 1, 1)).unwrap(), 11);
        assert_eq!(sigma(&params(2, 2, 1, 1)).unwrap(), 8);
        // At s <= 1 and t >= 2 they agree.
        assert_eq!(
            sigma_a1(&params(3, 1, 1, 2)).unwrap(),
            sigma(&params(3, 1, 1, 2)).unwrap()
        );
    }

    #[test]
    fn sigma_bounds_values() {
        assert_eq!(sigma_bounds(&params(2, 0, 2, 1)).unwrap(), (2, 5));
        // a = 1 evaluates too: (26, 2*ceil(11/1) + 8 + 1) = (26, 31)
        assert_eq!(sigma_bounds(&params(2, 0, 1, 5)).unwrap(), (26, 31));
        let (lo, hi) = sigma_bounds(&params(3, 1, 2, 2)).unwrap();
        let s = sigma(&params(3, 1, 2, 2)).unwrap();
        assert!(lo <= s && s <= hi);
    }

    #[test]
    fn mu_bounds_values() {
        assert_eq!(mu_bounds(3).unwrap(), (10, 10));
        assert_eq!(mu_bounds(4).unwrap(), (15, 37));
        assert_eq!(mu_bounds(1).unwrap(), (2, 2));
    }

    #[test]
    fn pi_values() {
        assert_eq!(
            pi(&params(3, 2, 0, 1)).unwrap().outcome,
            PiOutcome::Infinite
        );
        assert_eq!(
            pi(&params(1, 0, 1, 1)).unwrap().outcome,
            PiOutcome::Finite(1)
        );
        assert_eq!(
            pi(&params(2, 0, 1, 1)).unwrap().outcome,
            PiOutcome::Finite(2)
        );
        assert_eq!(
            pi(&params(2, 0, 2, 1)).unwrap().outcome,
            PiOutcome::Finite(2)
        );
        // conjectured regime: a = 2, r odd
        let conj = pi(&params(3, 2, 2, 1)).unwrap();
        assert_eq!(conj.outcome, PiOutcome::Infinite);
        assert!(conj.conjectured);
        let open = pi(&params(3, 0, 2, 1)).unwrap();
        assert_eq!(open.outcome, PiOutcome::Open);
        // both odd: N(4,0,2,2) - 1 - 5 since (r+1)t+s = 8 is 0 mod 2
        assert_eq!(
            pi(&params(3, 0, 3, 2)).unwrap().outcome,
            PiOutcome::Finite(15)
        );
    }

    #[test]
    fn feasible_set_fixtures() {
        let f = feasible_x_set(29, 0, 2, 1).unwrap();
        assert_eq!(f.members, vec![10, 11, 12, 13, 14]);
        assert!(f.lower_open && !f.upper_open);
        assert!(f.side_condition_met);

        let f = feasible_x_set(4, 0, 2, 2).unwrap();
        assert_eq!(f.members, vec![1, 2]);
        assert!(!f.lower_open && !f.upper_open);

        // d = r with the odd/odd side condition failed: only the
        // graph-is-its-own-factor count survives.
        let f = feasible_x_set(3, 0, 3, 1).unwrap();
        assert_eq!(f.members, vec![1]);
        assert!(!f.side_condition_met);
    }

    #[test]
    fn feasible_set_openness_by_parity() {
        let ee = feasible_x_set(8, 0, 2, 2).unwrap();
        assert_eq!((ee.lower_open, ee.upper_open), (false, false));
        let oe = feasible_x_set(8, 0, 3, 2).unwrap();
        assert_eq!((oe.lower_open, oe.upper_open), (true, true));
        let eo = feasible_x_set(8, 0, 2, 1).unwrap();
        assert_eq!((eo.lower_open, eo.upper_open), (true, false));
        let oo = feasible_x_set(8, 0, 3, 1).unwrap();
        assert_eq!((oo.lower_open, oo.upper_open), (false, true));
    }

    #[test]
    fn search_fixtures() {
        assert_eq!(
            sigma_by_search(&params(2, 0, 1, 5), 60).unwrap(),
            28
        );
        assert_eq!(sigma_by_search(&params(2, 0, 2, 1), 20).unwrap(), 2);
        assert_eq!(
            sigma_by_search(&params(3, 0, 2, 2), 60).unwrap(),
            sigma(&params(3, 0, 2, 2)).unwrap()
        );
        assert_eq!(sigma_by_search(&params(1, 0, 1, 1), 20).unwrap(), 1);
        assert!(matches!(
            sigma_by_search(&params(2, 0, 1, 5), 10),
            Err(ThresholdError::HeadroomTooSmall { .. })
        ));
    }

    #[test]
    fn search_self_factor_corner() {
        // Every (d, d)-graph with d in {2, 3} is its own (2, 3)-factor, so
        // the search settles at 2 while the closed form says 4. The
        // crosscheck must surface this rather than hide it.
        assert_eq!(sigma_by_search(&params(2, 0, 1, 1), 30).unwrap(), 2);
        assert_eq!(sigma(&params(2, 0, 1, 1)).unwrap(), 4);
        let report = crosscheck(&params(2, 0, 1, 1)).unwrap();
        assert!(report.has_discrepancy("sigma", "sigma_search"));
    }

    #[test]
    fn crosscheck_agreement_cell() {
        let report = crosscheck(&params(2, 0, 1, 5)).unwrap();
        assert_eq!(report.value("sigma"), Some(&FormulaValue::Int(28)));
        assert_eq!(report.value("sigma_a1"), Some(&FormulaValue::Int(28)));
        assert_eq!(report.value("sigma_search"), Some(&FormulaValue::Int(28)));
        assert_eq!(report.value("n"), Some(&FormulaValue::Int(26)));
        assert!(report
            .discrepancies
            .iter()
            .all(|d| d.kind != DiscrepancyKind::Mismatch));
    }

    #[test]
    fn crosscheck_conflict_cell() {
        let report = crosscheck(&params(2, 2, 1, 1)).unwrap();
        let d = report.find_discrepancy("sigma", "sigma_a1").unwrap();
        assert_eq!(d.difference, -3); // 8 - 11; the a=1 form overshoots by r+1
        let oracle = report.find_discrepancy("sigma", "sigma_search");
        assert!(oracle.is_none(), "search agrees with sigma here");
    }

    #[test]
    fn crosscheck_oracle_agreement_even_even() {
        let report = crosscheck(&params(4, 0, 2, 2)).unwrap();
        let sigma_v = report.value("sigma").cloned();
        assert_eq!(report.value("n").cloned(), sigma_v);
        assert_eq!(report.value("sigma_search").cloned(), sigma_v);
    }

    #[test]
    fn report_serializes_with_stable_keys() {
        let report = crosscheck(&params(2, 2, 1, 1)).unwrap();
        let json = report.to_json();
        assert!(json.get("params").is_some());
        assert!(json.get("values").is_some());
        assert!(json.get("discrepancies").is_some());
    }

    proptest! {
        // Random probes against the members list must agree with a direct
        // rational comparison, and the list must be a contiguous run.
        #[test]
        fn member_probe_matches_rational_compare(
            d in 1i64..40, s in 0i64..5, r in 1i64..6, a in 0i64..6, x in 1i64..25
        ) {
            let f = feasible_x_set(d, s, r, a).unwrap();
            let xr = Ratio::from_integer(x);
            let above = if f.lower_open { xr > f.lower } else { xr >= f.lower };
            let below = if f.upper_open { xr < f.upper } else { xr <= f.upper };
            let interval_member = above && below;
            let supplement = !f.side_condition_met && x == 1 && r <= d && d + s <= r + a;
            prop_assert_eq!(f.contains(x), interval_member || supplement);

            for w in f.members.windows(2) {
                prop_assert_eq!(w[1], w[0] + 1);
            }
        }

        // For r, a both even the closed endpoints are members whenever the
        // interval is non-empty.
        #[test]
        fn even_even_endpoints_are_members(
            d in 1i64..60, s in 0i64..5, rh in 1i64..3, ah in 1i64..3
        ) {
            let (r, a) = (2 * rh, 2 * ah);
            let f = feasible_x_set(d, s, r, a).unwrap();
            if !f.members.is_empty() {
                let lo_int = f.lower.ceil().to_integer().max(1);
                let hi_int = f.upper.floor().to_integer();
                prop_assert!(f.contains(lo_int));
                prop_assert!(f.contains(hi_int));
            }
        }
    }
}
