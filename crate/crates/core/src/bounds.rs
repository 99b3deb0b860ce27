//! Lower bounds on the independence number from the degree sequence.
//!
//! Two kinds of bounds live here. The constant-free sums (Caro-Wei and its
//! hypergraph generalization) are exact rationals and genuinely lower-bound
//! the independence number, so tests assert them against exact solvers. The
//! parametric bounds (degree-sequence bounds for triangle-free, clique-free
//! and linear instances, and the average-degree bound) carry an existence
//! constant the literature does not pin down; they are computed with the
//! caller's constant (default 1), labeled "shape-only" in reports, and never
//! asserted against the independence number.
//!
//! All irrational values are rigorous enclosures ([`Interval`]) evaluated
//! with enough working digits for 30 significant digits of output.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::alpha::exact_alpha;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::{frac_binom, rat_int, rat_to_string, Rat};
use crate::hypergraph::Hypergraph;
use crate::perm::{p_at_most, run_trials, TrialBatch};
use crate::precise::{ceil_root, decimal_string, ln, nth_root, pow_frac, Interval};

/// Working precision for report values (30 significant digits plus guard).
pub const REPORT_DIGITS: u32 = 35;

/// Significant digits rendered into reports.
pub const RENDER_DIGITS: u32 = 30;

/// Edge budget above which structural family checks refuse to run.
const FAMILY_CHECK_EDGE_BUDGET: usize = 5_000_000;

/// Hypothesis classes for the degree-sequence bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Graphs without a triangle (k = 2).
    TriangleFree,
    /// Graphs without a clique on `r` vertices (k = 2, r >= 3).
    KrFree(u32),
    /// Linear k-uniform hypergraphs: edges meet in at most one vertex.
    Linear,
}

/// `sum_v 1/(d(v) + 1)`, exact. Graphs only.
pub fn caro_wei(h: &Hypergraph) -> Result<Rat> {
    if h.k() != 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: h.k(),
        });
    }
    let mut acc = Rat::zero();
    for (d, count) in degree_multiset(h) {
        acc += rat_int(count as i64) / rat_int(d as i64 + 1);
    }
    Ok(acc)
}

/// `sum_v 1 / C(d(v) + 1/t, d(v))`, exact, with `t = k - 1`. Reduces to
/// Caro-Wei at k = 2; isolated vertices contribute 1.
pub fn caro_tuza(h: &Hypergraph) -> Result<Rat> {
    if h.k() < 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: h.k(),
        });
    }
    let t = h.t() as u64;
    let mut acc = Rat::zero();
    for (d, count) in degree_multiset(h) {
        acc += rat_int(count as i64) * frac_binom(d as u64, t, d as u64)?.recip();
    }
    Ok(acc)
}

/// `dk * sum_v (d(v) + 1)^(-1/t)`: the simplified shape of the hypergraph
/// bound. The constant `dk` is not certified; with `dk = 1` the value can
/// exceed the independence number (it does already on a single 3-edge), so
/// reports label it shape-only.
pub fn caro_tuza_simplified(h: &Hypergraph, dk: &Rat, digits: u32) -> Result<Interval> {
    if h.k() < 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: h.k(),
        });
    }
    let t = h.t() as u32;
    let mut acc = Interval::exact(Rat::zero());
    for (d, count) in degree_multiset(h) {
        let term = pow_frac(&rat_int(d as i64 + 1), -1, t, digits)?;
        acc = acc.add(&term.mul_rat(&rat_int(count as i64)));
    }
    Ok(acc.mul_rat(dk))
}

/// Degree-sequence lower-bound expression for the given hypothesis class,
/// with average degree `D = k*m/n` and natural logarithms:
///
/// ```text
/// triangle-free:  c * ln(D)         * sum_v 1 / max{D^eps, d(v)}
/// clique-free:    c * ln(D)/ln(ln D) * sum_v 1 / max{D^eps, d(v)}
/// linear:         c * (ln D)^(1/t)  * sum_v 1 / max{D^eps, d(v)}^(1/t)
/// ```
///
/// Requires `D > 1` (and `D > e` for the clique-free variant, so the
/// iterated logarithm is positive) and `0 <= eps < 1`. The family hypothesis
/// itself is *not* verified here; see [`check_family`]. The two graph
/// variants demand k = 2, the linear variant k >= 2.
pub fn degree_sequence_bound(
    h: &Hypergraph,
    epsilon: &Rat,
    c: &Rat,
    family: Family,
    digits: u32,
) -> Result<Interval> {
    let root = match family {
        Family::TriangleFree | Family::KrFree(_) => {
            if h.k() != 2 {
                return Err(Error::WrongUniformity {
                    expected: 2,
                    got: h.k(),
                });
            }
            1u32
        }
        Family::Linear => {
            if h.k() < 2 {
                return Err(Error::WrongUniformity {
                    expected: 2,
                    got: h.k(),
                });
            }
            h.t() as u32
        }
    };
    let d_avg = h.average_degree();
    if d_avg <= Rat::one() {
        return Err(Error::UndefinedBound(
            "degree-sequence bound needs average degree above 1".into(),
        ));
    }
    let ln_d = ln(&d_avg, digits)?;
    let multiplier = match family {
        Family::TriangleFree => ln_d,
        Family::KrFree(_) => {
            if !ln_d.definitely_gt(&Rat::one()) {
                return Err(Error::UndefinedBound(
                    "clique-free bound needs average degree above e".into(),
                ));
            }
            let ln_ln_d = ln_hull(&ln_d, digits)?;
            ln_d.div(&ln_ln_d)
        }
        Family::Linear => root_hull(&ln_d, root, digits)?,
    };

    let sum = sum_inverse_truncated(h, epsilon, root, digits)?;
    Ok(sum.mul(&multiplier).mul_rat(c))
}

/// `sum_v 1 / max{D^eps, d(v)}^(1/root)` with the max decided exactly.
fn sum_inverse_truncated(
    h: &Hypergraph,
    epsilon: &Rat,
    root: u32,
    digits: u32,
) -> Result<Interval> {
    let (p, q) = epsilon_parts(epsilon)?;
    let d_avg = h.average_degree();
    // shared term for all degrees below the truncation point
    let below = pow_frac(&d_avg, -(p as i64), q * root, digits)?;
    let d_pow = num::pow::pow(d_avg, p as usize);
    let mut acc = Interval::exact(Rat::zero());
    for (dv, count) in degree_multiset(h) {
        let count = rat_int(count as i64);
        let dv_pow = rat_int(dv as i64).pow(q as i32);
        let term = if dv_pow >= d_pow {
            pow_frac(&rat_int(dv as i64), -1, root, digits)?
        } else {
            below.clone()
        };
        acc = acc.add(&term.mul_rat(&count));
    }
    Ok(acc)
}

/// `ck * n / D^(1/t)`: the average-degree lower-bound shape. On an edgeless
/// instance the value is `ck * n` (callers flag that case).
pub fn spencer_bound(h: &Hypergraph, ck: &Rat, digits: u32) -> Result<Interval> {
    if h.k() < 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: h.k(),
        });
    }
    let scaled_n = ck * rat_int(h.n() as i64);
    if h.m() == 0 {
        return Ok(Interval::exact(scaled_n));
    }
    let root = nth_root(&h.average_degree(), h.t() as u32, digits)?;
    Ok(root.recip().mul_rat(&scaled_n))
}

/// Ratio of the degree-sequence bound to the average-degree form of the same
/// bound. The logarithmic factors cancel, leaving
///
/// ```text
/// (1/n) * sum_v (D / max{D^eps, d(v)})^(1/t)
/// ```
///
/// which is exactly 1 on regular instances with `D >= 1` and grows when the
/// degree sequence is unbalanced.
pub fn degree_ratio(h: &Hypergraph, epsilon: &Rat, digits: u32) -> Result<Interval> {
    if h.k() < 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: h.k(),
        });
    }
    if h.m() == 0 {
        return Err(Error::UndefinedBound(
            "degree ratio needs at least one edge".into(),
        ));
    }
    let t = h.t() as u32;
    let (p, q) = epsilon_parts(epsilon)?;
    let d_avg = h.average_degree();
    let d_pow = num::pow::pow(d_avg.clone(), p as usize);
    // degrees below the truncation all contribute (D^(1-eps))^(1/t)
    let below = pow_frac(&d_avg, q as i64 - p as i64, q * t, digits)?;
    let mut acc = Interval::exact(Rat::zero());
    for (dv, count) in degree_multiset(h) {
        let count = rat_int(count as i64);
        let dv_pow = rat_int(dv as i64).pow(q as i32);
        let term = if dv_pow >= d_pow {
            nth_root(&(d_avg.clone() / rat_int(dv as i64)), t, digits)?
        } else {
            below.clone()
        };
        acc = acc.add(&term.mul_rat(&count));
    }
    Ok(acc.mul_rat(&rat_int(h.n() as i64).recip()))
}

/// The integer backward-edge threshold induced by `eps`:
/// `A = ceil(D^eps)`, at least 1. Edgeless instances get 1.
pub fn threshold_from_epsilon(h: &Hypergraph, epsilon: &Rat) -> Result<u64> {
    let (p, q) = epsilon_parts(epsilon)?;
    if h.m() == 0 || p == 0 {
        return Ok(1);
    }
    let powered = num::pow::pow(h.average_degree(), p as usize);
    let a = ceil_root(&powered, q, 20)?;
    let a = a
        .to_u64()
        .ok_or_else(|| Error::invalid("threshold from epsilon exceeds u64"))?;
    Ok(a.max(1))
}

fn epsilon_parts(epsilon: &Rat) -> Result<(u64, u32)> {
    if epsilon < &Rat::zero() || epsilon >= &Rat::one() {
        return Err(Error::invalid("epsilon must lie in [0, 1)"));
    }
    let q = epsilon
        .denom()
        .to_u32()
        .filter(|&q| q <= 4096)
        .ok_or_else(|| {
            Error::invalid("epsilon denominator too large; use a simpler fraction")
        })?;
    let p = epsilon.numer().to_u64().expect("0 <= p < q <= 4096");
    Ok((p, q))
}

fn degree_multiset(h: &Hypergraph) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for d in h.degrees() {
        *out.entry(d).or_insert(0usize) += 1;
    }
    out
}

fn ln_hull(iv: &Interval, digits: u32) -> Result<Interval> {
    let lo = ln(iv.lo(), digits)?;
    let hi = ln(iv.hi(), digits)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
}

fn root_hull(iv: &Interval, k: u32, digits: u32) -> Result<Interval> {
    let lo = nth_root(iv.lo(), k, digits)?;
    let hi = nth_root(iv.hi(), k, digits)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
}

/// Verifies the structural hypothesis of a bound family: no triangle, no
/// `K_r`, or pairwise edge intersections of size at most one. Exhaustive,
/// so it refuses instances beyond an edge budget and clique orders beyond
/// the cap.
pub fn check_family(h: &Hypergraph, family: Family, caps: &Caps) -> Result<bool> {
    match family {
        Family::Linear => Ok(h.is_linear()),
        Family::TriangleFree => {
            require_graph(h)?;
            Caps::check("family check edges", h.m(), FAMILY_CHECK_EDGE_BUDGET)?;
            Ok(!has_clique(h, 3))
        }
        Family::KrFree(r) => {
            require_graph(h)?;
            if r < 3 {
                return Err(Error::invalid("clique-free family needs r >= 3"));
            }
            Caps::check("clique order", r as usize, caps.clique_r)?;
            Caps::check("family check edges", h.m(), FAMILY_CHECK_EDGE_BUDGET)?;
            Ok(!has_clique(h, r as usize))
        }
    }
}

fn require_graph(h: &Hypergraph) -> Result<()> {
    if h.k() != 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: h.k(),
        });
    }
    Ok(())
}

fn adjacency(h: &Hypergraph) -> Vec<Vec<u32>> {
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); h.n()];
    for e in h.edges() {
        adj[e[0] as usize].push(e[1]);
        adj[e[1] as usize].push(e[0]);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

fn has_clique(h: &Hypergraph, r: usize) -> bool {
    if r <= 1 {
        return h.n() >= r;
    }
    if r == 2 {
        return h.m() >= 1;
    }
    let adj = adjacency(h);
    // grow cliques upward by vertex id; candidates stay sorted
    fn extend(adj: &[Vec<u32>], candidates: &[u32], depth: usize) -> bool {
        if depth == 0 {
            return true;
        }
        if candidates.len() < depth {
            return false;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if candidates.len() - i < depth {
                return false;
            }
            let next: Vec<u32> = intersect_sorted(&candidates[i + 1..], &adj[v as usize]);
            if extend(adj, &next, depth - 1) {
                return true;
            }
        }
        false
    }
    let all: Vec<u32> = (0..h.n() as u32).collect();
    extend(&adj, &all, r)
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
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

/// Configuration for [`compare_bounds`].
#[derive(Debug, Clone)]
pub struct ReportConfig {
    /// Truncation exponent for the degree-sequence bounds, in `[0, 1)`.
    pub epsilon: Rat,
    /// Explicit backward-edge threshold; when absent, `ceil(D^eps)`.
    pub a_override: Option<u64>,
    pub seed: u64,
    pub trials: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            epsilon: Rat::new(BigInt::from(1), BigInt::from(2)),
            a_override: None,
            seed: 0,
            trials: 0,
        }
    }
}

/// One evaluated bound in a report.
#[derive(Debug, Clone, Serialize)]
pub struct BoundRecord {
    pub name: String,
    /// "certified" bounds truly lower-bound the independence number;
    /// "shape-only" bounds carry an unpinned constant set to 1.
    pub label: String,
    pub params: BTreeMap<String, String>,
    /// Decimal rendering (30 significant digits), absent when undefined.
    pub value: Option<String>,
    /// Exact rational rendering when the value is rational.
    pub exact: Option<String>,
    /// Family hypothesis status: true/false when checked, absent when the
    /// check was skipped (capacity) or the bound has no hypothesis.
    pub applicable: Option<bool>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceInfo {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub average_degree_exact: String,
    pub average_degree: String,
    pub linear: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectationCheck {
    /// `sum_v p_at_most(d(v), t, A-1)`: the exact per-vertex selection
    /// probability total, valid for linear instances.
    pub expected_mean: String,
    pub expected_mean_exact: String,
    pub observed_mean: String,
    pub standard_error: String,
    pub within_five_se: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialSummary {
    pub seed: u64,
    pub trials: usize,
    pub threshold_a: u64,
    pub mean_selection: String,
    pub mean_selection_exact: String,
    pub mean_final: String,
    pub best_size: usize,
    /// Exact-expectation comparison; present only for linear instances.
    pub expectation: Option<ExpectationCheck>,
    pub expectation_skipped_nonlinear: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SoundnessEntry {
    pub bound: String,
    pub value: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaInfo {
    pub value: usize,
    /// Certified bounds re-checked against the exact solver output.
    pub soundness: Vec<SoundnessEntry>,
}

/// Full comparison report: every applicable bound, the degree-vs-average
/// ratio, a trial batch, and the exact independence number when within caps.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub schema: String,
    pub instance: InstanceInfo,
    pub epsilon: String,
    pub threshold_a: u64,
    pub threshold_a_overridden: bool,
    pub bounds: Vec<BoundRecord>,
    /// `(1/n) sum_v (D / max{D^eps, d(v)})^(1/t)`, shared across families.
    pub ratio_degree_vs_average: Option<String>,
    pub trials: Option<TrialSummary>,
    pub alpha: Option<AlphaInfo>,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let blank = String::new();
        w.write_record(["kind", "name", "value", "exact", "label", "applicable", "note"])
            .expect("csv record");
        let mut meta = |name: &str, value: String| {
            w.write_record(["meta", name, &value, &blank, &blank, &blank, &blank])
                .expect("csv record");
        };
        meta("schema", self.schema.clone());
        meta("k", self.instance.k.to_string());
        meta("n", self.instance.n.to_string());
        meta("m", self.instance.m.to_string());
        meta(
            "average_degree",
            self.instance.average_degree_exact.clone(),
        );
        meta("epsilon", self.epsilon.clone());
        meta("threshold_a", self.threshold_a.to_string());
        for b in &self.bounds {
            let applicable = match b.applicable {
                Some(true) => "true",
                Some(false) => "false",
                None => "",
            };
            w.write_record([
                "bound",
                &b.name,
                b.value.as_deref().unwrap_or(""),
                b.exact.as_deref().unwrap_or(""),
                &b.label,
                applicable,
                b.note.as_deref().unwrap_or(""),
            ])
            .expect("csv record");
        }
        if let Some(r) = &self.ratio_degree_vs_average {
            w.write_record(["ratio", "degree_vs_average", r, "", "", "", ""])
                .expect("csv record");
        }
        if let Some(t) = &self.trials {
            let mut trial = |name: &str, value: String| {
                w.write_record(["trials", name, &value, &blank, &blank, &blank, &blank])
                    .expect("csv record");
            };
            trial("seed", t.seed.to_string());
            trial("trials", t.trials.to_string());
            trial("threshold_a", t.threshold_a.to_string());
            trial("mean_selection", t.mean_selection.clone());
            trial("mean_final", t.mean_final.clone());
            trial("best_size", t.best_size.to_string());
            if let Some(e) = &t.expectation {
                trial("expected_mean", e.expected_mean.clone());
                trial("within_five_se", e.within_five_se.to_string());
            }
        }
        if let Some(a) = &self.alpha {
            w.write_record(["alpha", "alpha", &a.value.to_string(), "", "", "", ""])
                .expect("csv record");
            for s in &a.soundness {
                w.write_record([
                    "alpha",
                    &format!("soundness_{}", s.bound),
                    &s.ok.to_string(),
                    &s.value,
                    "",
                    "",
                    "",
                ])
                .expect("csv record");
            }
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let i = &self.instance;
        out.push_str(&format!(
            "instance: k={} n={} m={} average degree {} ({})\n",
            i.k, i.n, i.m, i.average_degree_exact, i.average_degree
        ));
        out.push_str(&format!(
            "epsilon {} -> threshold A = {}{}\n",
            self.epsilon,
            self.threshold_a,
            if self.threshold_a_overridden {
                " (overridden)"
            } else {
                ""
            }
        ));
        for b in &self.bounds {
            let value = b
                .value
                .clone()
                .or_else(|| b.note.clone())
                .unwrap_or_default();
            let exact = b
                .exact
                .as_ref()
                .map(|e| format!(" = {e}"))
                .unwrap_or_default();
            let applicable = match b.applicable {
                Some(true) => " [hypothesis holds]",
                Some(false) => " [hypothesis fails]",
                None => "",
            };
            out.push_str(&format!(
                "bound {:<28} {:<12} {}{}{}\n",
                b.name, b.label, value, exact, applicable
            ));
        }
        if let Some(r) = &self.ratio_degree_vs_average {
            out.push_str(&format!("ratio degree-sequence / average-degree: {r}\n"));
        }
        if let Some(t) = &self.trials {
            out.push_str(&format!(
                "trials: {} runs, seed {}, A={}: mean selection {}, mean final {}, best {}\n",
                t.trials, t.seed, t.threshold_a, t.mean_selection, t.mean_final, t.best_size
            ));
            if let Some(e) = &t.expectation {
                out.push_str(&format!(
                    "expectation: exact {}, observed {}, within 5 SE: {}\n",
                    e.expected_mean, e.observed_mean, e.within_five_se
                ));
            } else if t.expectation_skipped_nonlinear {
                out.push_str("expectation: skipped (instance is not linear)\n");
            }
        }
        if let Some(a) = &self.alpha {
            out.push_str(&format!("alpha (exact): {}\n", a.value));
            for s in &a.soundness {
                out.push_str(&format!(
                    "soundness {}: {} <= alpha: {}\n",
                    s.bound, s.value, s.ok
                ));
            }
        }
        out
    }
}

/// Evaluates every applicable bound on `h`, runs the seeded trial pipeline
/// (when `cfg.trials > 0`), computes the exact independence number when it
/// fits the caps, and cross-checks the certified bounds against it.
///
/// Deterministic: identical configuration (including seed) gives an
/// identical report.
pub fn compare_bounds(h: &Hypergraph, cfg: &ReportConfig, caps: &Caps) -> Result<BoundReport> {
    if h.k() < 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: h.k(),
        });
    }
    let digits = REPORT_DIGITS;
    let t = h.t();
    let d_avg = h.average_degree();
    let threshold_a = match cfg.a_override {
        Some(a) if a >= 1 => a,
        Some(_) => return Err(Error::invalid("threshold override must be >= 1")),
        None => threshold_from_epsilon(h, &cfg.epsilon)?,
    };

    let linear = if h.k() == 2 {
        Some(true)
    } else if h.m() <= FAMILY_CHECK_EDGE_BUDGET {
        Some(h.is_linear())
    } else {
        None
    };

    let mut bounds = Vec::new();
    let mut certified: Vec<(String, Rat)> = Vec::new();

    if h.k() == 2 {
        let cw = caro_wei(h)?;
        bounds.push(exact_record("caro_wei", &cw, BTreeMap::new()));
        certified.push(("caro_wei".into(), cw));
    }
    let ct = caro_tuza(h)?;
    bounds.push(exact_record("caro_tuza", &ct, BTreeMap::new()));
    certified.push(("caro_tuza".into(), ct));

    let one = Rat::one();
    let simplified = caro_tuza_simplified(h, &one, digits)?;
    bounds.push(interval_record(
        "caro_tuza_simplified",
        &simplified,
        params(&[("dk", "1")]),
        None,
        None,
    ));

    let spencer = spencer_bound(h, &one, digits)?;
    bounds.push(interval_record(
        "average_degree",
        &spencer,
        params(&[("ck", "1")]),
        None,
        if h.m() == 0 {
            Some("edgeless: value is ck * n".into())
        } else {
            None
        },
    ));

    let eps_str = rat_to_string(&cfg.epsilon);
    if h.k() == 2 {
        let applicable = match check_family(h, Family::TriangleFree, caps) {
            Ok(v) => Some(v),
            Err(Error::Capacity { .. }) => None,
            Err(e) => return Err(e),
        };
        push_degree_bound(
            &mut bounds,
            h,
            "degree_sequence_triangle_free",
            &cfg.epsilon,
            Family::TriangleFree,
            applicable,
            params(&[("epsilon", &eps_str), ("c", "1")]),
            digits,
        )?;
    }
    if h.k() >= 2 && t >= 1 {
        push_degree_bound(
            &mut bounds,
            h,
            "degree_sequence_linear",
            &cfg.epsilon,
            Family::Linear,
            linear,
            params(&[("epsilon", &eps_str), ("c", "1")]),
            digits,
        )?;
    }

    let ratio = if h.m() >= 1 {
        Some(degree_ratio(h, &cfg.epsilon, digits)?.to_decimal(RENDER_DIGITS))
    } else {
        None
    };

    let trials = if cfg.trials > 0 {
        Some(trial_summary(h, threshold_a, cfg, linear)?)
    } else {
        None
    };

    let alpha = if h.n() <= caps.alpha_n && h.n() <= 64 {
        let a = exact_alpha(h, caps)?;
        let soundness = certified
            .iter()
            .map(|(name, value)| SoundnessEntry {
                bound: name.clone(),
                value: rat_to_string(value),
                ok: *value <= rat_int(a as i64),
            })
            .collect();
        Some(AlphaInfo {
            value: a,
            soundness,
        })
    } else {
        None
    };

    Ok(BoundReport {
        schema: "indepbound/1".into(),
        instance: InstanceInfo {
            k: h.k(),
            n: h.n(),
            m: h.m(),
            average_degree_exact: rat_to_string(&d_avg),
            average_degree: decimal_string(&d_avg, RENDER_DIGITS),
            linear,
        },
        epsilon: eps_str,
        threshold_a,
        threshold_a_overridden: cfg.a_override.is_some(),
        bounds,
        ratio_degree_vs_average: ratio,
        trials,
        alpha,
    })
}

#[allow(clippy::too_many_arguments)]
fn push_degree_bound(
    bounds: &mut Vec<BoundRecord>,
    h: &Hypergraph,
    name: &str,
    epsilon: &Rat,
    family: Family,
    applicable: Option<bool>,
    params: BTreeMap<String, String>,
    digits: u32,
) -> Result<()> {
    let one = Rat::one();
    match degree_sequence_bound(h, epsilon, &one, family, digits) {
        Ok(iv) => bounds.push(interval_record(name, &iv, params, applicable, None)),
        Err(Error::UndefinedBound(msg)) => bounds.push(BoundRecord {
            name: name.into(),
            label: "shape-only".into(),
            params,
            value: None,
            exact: None,
            applicable,
            note: Some(format!("undefined: {msg}")),
        }),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn trial_summary(
    h: &Hypergraph,
    a: u64,
    cfg: &ReportConfig,
    linear: Option<bool>,
) -> Result<TrialSummary> {
    let batch = run_trials(h, a, cfg.trials, cfg.seed)?;
    let expectation = if linear == Some(true) {
        Some(expectation_check(h, a, &batch)?)
    } else {
        None
    };
    Ok(TrialSummary {
        seed: cfg.seed,
        trials: cfg.trials,
        threshold_a: a,
        mean_selection: decimal_string(&batch.mean_low_backward(), 12),
        mean_selection_exact: rat_to_string(&batch.mean_low_backward()),
        mean_final: decimal_string(&batch.mean_final(), 12),
        best_size: batch.best_size(),
        expectation,
        expectation_skipped_nonlinear: linear != Some(true),
    })
}

/// Exact expectation of the selection size for linear instances (each
/// vertex's backward-count distribution matches the star of its degree),
/// compared with the sample mean at five standard errors.
fn expectation_check(h: &Hypergraph, a: u64, batch: &TrialBatch) -> Result<ExpectationCheck> {
    let t = h.t() as u64;
    let mut expected = Rat::zero();
    for (d, count) in degree_multiset(h) {
        expected += rat_int(count as i64) * p_at_most(d as u64, t, a - 1)?;
    }
    let mean = batch.mean_low_backward();
    let var = batch.sample_variance_low_backward();
    let trials = rat_int(batch.trials() as i64);
    // (mean - expected)^2 <= 25 * var / trials, kept exact
    let diff = &mean - &expected;
    let within = &diff * &diff * &trials <= rat_int(25) * &var;
    let se = if var.is_zero() || batch.trials() == 0 {
        Interval::exact(Rat::zero())
    } else {
        nth_root(&(var / trials), 2, 12)?
    };
    Ok(ExpectationCheck {
        expected_mean: decimal_string(&expected, 12),
        expected_mean_exact: rat_to_string(&expected),
        observed_mean: decimal_string(&mean, 12),
        standard_error: se.to_decimal(6),
        within_five_se: within,
    })
}

fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn exact_record(name: &str, value: &Rat, params: BTreeMap<String, String>) -> BoundRecord {
    BoundRecord {
        name: name.into(),
        label: "certified".into(),
        params,
        value: Some(decimal_string(value, RENDER_DIGITS)),
        exact: Some(rat_to_string(value)),
        applicable: None,
        note: None,
    }
}

fn interval_record(
    name: &str,
    value: &Interval,
    params: BTreeMap<String, String>,
    applicable: Option<bool>,
    note: Option<String>,
) -> BoundRecord {
    BoundRecord {
        name: name.into(),
        label: "shape-only".into(),
        params,
        value: Some(value.to_decimal(RENDER_DIGITS)),
        exact: value.as_exact().map(rat_to_string),
        applicable,
        note,
    }
}
