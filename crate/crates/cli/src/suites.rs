//! Self-contained verification suites behind `indepbound verify`.
//!
//! Each suite re-derives a batch of closed forms from scratch and compares
//! them against an independent route: exact identity grids against both of
//! their sides, the threshold probability formulas against full permutation
//! enumeration, and the at-least-`a` counting formula against direct tallies
//! on random set systems. Every case is exact rational arithmetic; a suite
//! passes only if every case agrees.

use indepbound_core::exact::{
    verify_alternating_sum, verify_counting_identity, verify_mpie, verify_mpie_unit,
    verify_positive_tail, verify_tail_closed_form, CountingIdentity,
};
use indepbound_core::perm::{enumerate_star_distribution, p_at_most, p_zero, q_at_least, StarConfig};
use indepbound_core::construct::random_set_system;
use indepbound_core::exact::Rat;
use indepbound_core::{Caps, Result};
use num::{One, Zero};
use rand::SeedableRng;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// One named grid of checks: how many cases ran, whether all agreed, and a
/// description of the first disagreement when one exists.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        CheckOutcome {
            name: name.to_string(),
            cases: 0,
            passed: true,
            detail: String::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.detail = describe();
        }
    }
}

/// Aggregate result of a `verify` invocation, serialized as the command's
/// report.
#[derive(Debug, Clone, Serialize)]
pub struct VerifySuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub seed: u64,
    pub max_td: usize,
    pub random: usize,
    pub checks: Vec<CheckOutcome>,
    pub all_passed: bool,
}

impl VerifySuiteReport {
    pub fn assemble(
        suite: &str,
        seed: u64,
        max_td: usize,
        random: usize,
        checks: Vec<CheckOutcome>,
    ) -> Self {
        let all_passed = checks.iter().all(|c| c.passed);
        VerifySuiteReport {
            schema: "indepbound/1",
            suite: suite.to_string(),
            seed,
            max_td,
            random,
            checks,
            all_passed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,cases,passed,detail\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.name,
                c.cases,
                c.passed,
                csv_field(&c.detail)
            ));
        }
        out.push_str(&format!("all,,{},\n", self.all_passed));
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "verify suite={} seed={} max-td={} random={}\n",
            self.suite, self.seed, self.max_td, self.random
        );
        for c in &self.checks {
            if c.passed {
                out.push_str(&format!("PASS {:<34} {} cases\n", c.name, c.cases));
            } else {
                out.push_str(&format!(
                    "FAIL {:<34} {} cases: {}\n",
                    c.name, c.cases, c.detail
                ));
            }
        }
        out.push_str(if self.all_passed {
            "all checks passed\n"
        } else {
            "SOME CHECKS FAILED\n"
        });
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The exact identity grids: alternating sums against the generalized
/// binomial, the unit alternating sum, both tail closed forms, and the four
/// factorial-counting identities.
pub fn run_identities() -> Result<Vec<CheckOutcome>> {
    let mut checks = Vec::new();

    let mut alt = CheckOutcome::new("alternating_sum");
    for t in 1..=5u64 {
        for d in 0..=12u64 {
            let c = verify_alternating_sum(d, t)?;
            alt.record(c.holds(), || {
                format!("d={d} t={t}: lhs {} != rhs {}", c.lhs, c.rhs)
            });
        }
    }
    checks.push(alt);

    let mut unit = CheckOutcome::new("unit_alternating_sum");
    for a in 0..=10u64 {
        for b in 0..=10u64 {
            let c = verify_mpie_unit(a, b);
            unit.record(c.holds(), || format!("a={a} b={b}: lhs {}", c.lhs));
        }
    }
    checks.push(unit);

    let mut tail = CheckOutcome::new("tail_closed_form");
    for t in 1..=4u64 {
        for d in 0..=10u64 {
            for a in 0..=d {
                let c = verify_tail_closed_form(d, a, t)?;
                tail.record(c.holds(), || {
                    format!("d={d} a={a} t={t}: lhs {} != rhs {}", c.lhs, c.rhs)
                });
            }
        }
    }
    checks.push(tail);

    let mut positive = CheckOutcome::new("positive_tail");
    for t in 1..=4u64 {
        for d in 1..=10u64 {
            for a in 1..=d {
                let c = verify_positive_tail(d, a, t)?;
                positive.record(c.holds(), || {
                    format!("d={d} a={a} t={t}: lhs {} != rhs {}", c.lhs, c.rhs)
                });
            }
        }
    }
    checks.push(positive);

    let mut backward = CheckOutcome::new("backward_threshold_count");
    for d in 0..=10u64 {
        for a_max in 0..=d {
            let c = verify_counting_identity(CountingIdentity::BackwardThreshold { d, a_max })?;
            backward.record(c.holds(), || {
                format!("d={d} a_max={a_max}: lhs {} != rhs {}", c.lhs, c.rhs)
            });
        }
    }
    checks.push(backward);

    let mut square = CheckOutcome::new("factorial_square_count");
    for d in 0..=10u64 {
        let c = verify_counting_identity(CountingIdentity::FactorialSquare { d })?;
        square.record(c.holds(), || {
            format!("d={d}: lhs {} != rhs {}", c.lhs, c.rhs)
        });
    }
    checks.push(square);

    let mut halved = CheckOutcome::new("halved_binomial_count");
    for d in 0..=10u64 {
        let c = verify_counting_identity(CountingIdentity::HalvedBinomial { d })?;
        halved.record(c.holds(), || {
            format!("d={d}: lhs {} != rhs {}", c.lhs, c.rhs)
        });
    }
    checks.push(halved);

    let mut multi = CheckOutcome::new("multinomial_threshold_count");
    for t in 2..=3u64 {
        for d in 1..=6u64 {
            for a_max in 0..d {
                let c =
                    verify_counting_identity(CountingIdentity::MultinomialThreshold { d, a_max, t })?;
                multi.record(c.holds(), || {
                    format!("d={d} a_max={a_max} t={t}: lhs {} != rhs {}", c.lhs, c.rhs)
                });
            }
        }
    }
    checks.push(multi);

    Ok(checks)
}

/// Full-enumeration probability grid: for every star shape with
/// `t*d <= max_td`, walk all `(t*d + 1)!` vertex orderings and compare the
/// resulting backward-edge distribution against the closed forms.
pub fn run_probability(max_td: usize, caps: &Caps) -> Result<Vec<CheckOutcome>> {
    let caps = Caps {
        star_td: max_td,
        ..*caps
    };
    let mut total = CheckOutcome::new("distribution_sums_to_one");
    let mut zero = CheckOutcome::new("no_backward_edge_probability");
    let mut cumulative = CheckOutcome::new("threshold_probability");
    let mut complement = CheckOutcome::new("tail_probability");

    for t in 1..=max_td as u64 {
        for d in 1..=(max_td as u64 / t) {
            let cfg = StarConfig::new(d as usize, t as usize)?;
            let dist = enumerate_star_distribution(cfg, &caps)?;

            let sum: Rat = dist.iter().sum();
            total.record(sum == Rat::one(), || format!("d={d} t={t}: total {sum}"));

            zero.record(dist[0] == p_zero(d, t).expect("valid star shape"), || {
                format!("d={d} t={t}: enumerated {} vs closed form", dist[0])
            });

            let mut acc = Rat::zero();
            for (b, p) in dist.iter().enumerate() {
                acc += p;
                let closed = p_at_most(d, t, b as u64).expect("valid threshold");
                cumulative.record(acc == closed, || {
                    format!("d={d} t={t} a-1={b}: enumerated {acc} vs closed {closed}")
                });
                let q = q_at_least(d, t, b as u64 + 1).expect("valid tail");
                let direct = Rat::one() - &acc;
                complement.record(q == direct, || {
                    format!("d={d} t={t} a={}: tail {q} vs complement {direct}", b + 1)
                });
            }
        }
    }

    Ok(vec![total, zero, cumulative, complement])
}

/// Random set systems: compare the alternating at-least-`a` counting formula
/// against a direct membership tally, for every meaningful threshold.
pub fn run_mpie(random: usize, seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = CheckOutcome::new("at_least_a_count");
    for case in 0..random {
        let universe = rng.gen_range(1..=12u32);
        let sets = rng.gen_range(1..=6usize);
        let system = random_set_system(universe, sets, &mut rng);
        for a in 0..=sets {
            let c = verify_mpie(universe, &system, a)?;
            check.record(c.holds(), || {
                format!(
                    "case {case} universe={universe} sets={sets} a={a}: direct {} vs formula {}",
                    c.direct, c.formula
                )
            });
        }
    }
    Ok(vec![check])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_keeps_the_first_failure() {
        let mut c = CheckOutcome::new("demo");
        c.record(true, || unreachable!());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        assert_eq!(c.cases, 3);
        assert!(!c.passed);
        assert_eq!(c.detail, "first");
    }

    #[test]
    fn csv_quotes_fields_with_commas() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn identity_suite_is_green() {
        let checks = run_identities().unwrap();
        assert_eq!(checks.len(), 8);
        assert!(checks.iter().all(|c| c.passed && c.cases > 0));
    }

    #[test]
    fn probability_suite_small_grid_is_green() {
        let checks = run_probability(5, &Caps::default()).unwrap();
        assert_eq!(checks.len(), 4);
        assert!(checks.iter().all(|c| c.passed && c.cases > 0));
    }

    #[test]
    fn mpie_suite_is_deterministic() {
        let a = run_mpie(40, 9).unwrap();
        let b = run_mpie(40, 9).unwrap();
        assert!(a[0].passed);
        assert_eq!(a[0].cases, b[0].cases);
    }

    #[test]
    fn report_flags_a_failed_check() {
        let bad = CheckOutcome {
            name: "bad".into(),
            cases: 1,
            passed: false,
            detail: "x".into(),
        };
        let report = VerifySuiteReport::assemble("all", 0, 0, 0, vec![bad]);
        assert!(!report.all_passed);
        assert!(report.to_text().contains("FAIL bad"));
        assert!(report.to_csv().contains("bad,1,false,x"));
    }
}
