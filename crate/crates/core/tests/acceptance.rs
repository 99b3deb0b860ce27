//! Acceptance checks for the library, numbered 01 through 10. Criterion 11
//! (byte-identical output of repeated seeded CLI runs) exercises the binary
//! and lives in the cli crate's own acceptance target.
//!
//! Every check prints one `criterion NN (...): PASS` line; a failure prints
//! the matching FAIL line with the first offending case and panics. All
//! tolerances are pinned as constants below; probability and identity checks
//! are exact rational comparisons with zero tolerance.

use num::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use indepbound_core::alpha::{check_hgraph_inequality, exact_alpha, Verdict};
use indepbound_core::bounds::{caro_tuza, degree_sequence_bound, Family};
use indepbound_core::construct::{
    bipartite_tower, family_h, i_unit, random_linear_hypergraph, random_set_system,
};
use indepbound_core::exact::{
    rat, rat_int, verify_alternating_sum, verify_counting_identity, verify_mpie,
    verify_mpie_unit, verify_positive_tail, verify_tail_closed_form, CountingIdentity, Rat,
};
use indepbound_core::perm::{
    asymptotic_ratio, enumerate_star_distribution, p_at_most, run_trials, StarConfig,
};
use indepbound_core::precise::ln;
use indepbound_core::{Caps, Hypergraph};

/// Largest t*d in the probability-enumeration grid ((t*d + 1)! orderings).
const ENUMERATION_TD: usize = 10;
/// Seed for the random set systems of the counting-formula comparison.
const SET_SYSTEM_SEED: u64 = 7;
/// Random set systems checked against direct counting.
const SET_SYSTEM_CASES: usize = 1000;
/// Seed for the random linear hypergraphs of the soundness grid.
const LINEAR_SEED: u64 = 40;
/// Random linear 3-uniform instances in the soundness grid.
const LINEAR_CASES: usize = 500;
/// Seed for the trial batches of the expectation and sparsity checks.
const TRIAL_SEED: u64 = 2026;
/// Trials per batch for the expectation and sparsity checks.
const TRIALS: usize = 10_000;
/// Thresholds exercised by the expectation and sparsity checks.
const TRIAL_THRESHOLDS: [u64; 3] = [1, 2, 4];
/// Multiples of the standard error the sample mean may deviate by.
const SE_MULTIPLE: i64 = 5;
/// Relative residual allowed in the ratio-growth fit.
const MAX_RELATIVE_RESIDUAL: f64 = 0.15;
/// Window the large-d ratio must land in: [49/50, 51/50].
const RATIO_WINDOW: (i64, i64) = (49, 51);
/// Degree at which the large-d ratio window is checked.
const RATIO_DEGREE: u64 = 10_000;
/// Working precision (significant digits) for interval evaluations here.
const DIGITS: u32 = 35;

fn pass(criterion: u32, what: &str) {
    println!("criterion {criterion:02} ({what}): PASS");
}

fn fail(criterion: u32, what: &str, reason: &str) -> ! {
    println!("criterion {criterion:02} ({what}): FAIL - {reason}");
    panic!("criterion {criterion:02} ({what}): FAIL - {reason}");
}

#[test]
fn a01_threshold_probability_matches_full_enumeration() {
    let what = "closed-form threshold probabilities equal full enumeration";
    let caps = Caps {
        star_td: ENUMERATION_TD,
        ..Caps::default()
    };
    let mut cases = 0usize;
    for t in 1..=ENUMERATION_TD {
        for d in 1..=(ENUMERATION_TD / t) {
            let cfg = StarConfig::new(d, t).expect("valid star shape");
            let dist = enumerate_star_distribution(cfg, &caps).expect("within the cap");
            let mut cumulative = Rat::zero();
            for a in 1..=(d + 1) {
                cumulative += &dist[a - 1];
                let closed =
                    p_at_most(d as u64, t as u64, (a - 1) as u64).expect("valid threshold");
                if closed != cumulative {
                    fail(
                        1,
                        what,
                        &format!(
                            "d={d} t={t} A={a}: closed form {closed} != enumerated {cumulative}"
                        ),
                    );
                }
                cases += 1;
            }
        }
    }
    assert!(cases > 0);
    pass(1, what);
}

#[test]
fn a02_identity_grids_hold_exactly() {
    let what = "identity grids hold with exact equality";
    let check = |ok: bool, case: String| {
        if !ok {
            fail(2, what, &case);
        }
    };

    for t in 1..=5u64 {
        for d in 0..=12u64 {
            let c = verify_alternating_sum(d, t).expect("valid arguments");
            check(c.holds(), format!("alternating sum d={d} t={t}"));
        }
    }
    for a in 0..=10u64 {
        for b in 0..=10u64 {
            let c = verify_mpie_unit(a, b);
            check(c.holds(), format!("unit alternating sum a={a} b={b}"));
        }
    }
    for t in 1..=4u64 {
        for d in 0..=10u64 {
            for a in 0..=d {
                let c = verify_tail_closed_form(d, a, t).expect("valid arguments");
                check(c.holds(), format!("tail closed form d={d} a={a} t={t}"));
            }
        }
    }
    for t in 1..=4u64 {
        for d in 1..=10u64 {
            for a in 1..=d {
                let c = verify_positive_tail(d, a, t).expect("valid arguments");
                check(c.holds(), format!("positive tail d={d} a={a} t={t}"));
            }
        }
    }
    for d in 0..=10u64 {
        for a_max in 0..=d {
            let c = verify_counting_identity(CountingIdentity::BackwardThreshold { d, a_max })
                .expect("valid arguments");
            check(c.holds(), format!("backward threshold count d={d} a_max={a_max}"));
        }
    }
    for d in 0..=10u64 {
        let c = verify_counting_identity(CountingIdentity::FactorialSquare { d })
            .expect("valid arguments");
        check(c.holds(), format!("factorial square count d={d}"));
        let c = verify_counting_identity(CountingIdentity::HalvedBinomial { d })
            .expect("valid arguments");
        check(c.holds(), format!("halved binomial count d={d}"));
    }
    for t in 2..=3u64 {
        for d in 1..=6u64 {
            for a_max in 0..d {
                let c =
                    verify_counting_identity(CountingIdentity::MultinomialThreshold { d, a_max, t })
                        .expect("valid arguments");
                check(
                    c.holds(),
                    format!("multinomial threshold count d={d} a_max={a_max} t={t}"),
                );
            }
        }
    }
    pass(2, what);
}

#[test]
fn a03_at_least_a_count_matches_direct_tally() {
    let what = "inclusion-exclusion count equals direct tally on random systems";
    let mut rng = ChaCha8Rng::seed_from_u64(SET_SYSTEM_SEED);
    for case in 0..SET_SYSTEM_CASES {
        let universe = rng.gen_range(1..=12u32);
        let sets = rng.gen_range(1..=6usize);
        let system = random_set_system(universe, sets, &mut rng);
        for a in 0..=sets {
            let c = verify_mpie(universe, &system, a).expect("valid system");
            if !c.holds() {
                fail(
                    3,
                    what,
                    &format!(
                        "case {case} universe={universe} sets={sets} a={a}: \
                         direct {} vs formula {}",
                        c.direct, c.formula
                    ),
                );
            }
        }
    }
    pass(3, what);
}

/// Every graph on up to 6 vertices (all edge subsets of the complete graph,
/// a superset of an isomorphism-free census) followed by seeded random
/// linear 3-uniform instances on up to 12 vertices.
fn soundness_grid() -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for n in 1..=6usize {
        let mut pairs = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                pairs.push(vec![u, v]);
            }
        }
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<Vec<u32>> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e.clone())
                .collect();
            out.push(Hypergraph::new(2, n, edges).expect("valid graph"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(LINEAR_SEED);
    for _ in 0..LINEAR_CASES {
        let n = rng.gen_range(3..=12usize);
        let attempts = rng.gen_range(1..=30usize);
        out.push(random_linear_hypergraph(n, 3, attempts, &mut rng).expect("valid parameters"));
    }
    out
}

#[test]
fn a04_certified_bound_never_exceeds_alpha() {
    let what = "weighted-degree bound is at most the exact optimum on the grid";
    let caps = Caps::default();
    let mut checked = 0usize;
    for h in soundness_grid() {
        let bound = caro_tuza(&h).expect("valid instance");
        let alpha = exact_alpha(&h, &caps).expect("within caps");
        if bound > rat_int(alpha as i64) {
            fail(
                4,
                what,
                &format!(
                    "k={} n={} m={}: bound {bound} exceeds alpha {alpha}",
                    h.k(),
                    h.n(),
                    h.m()
                ),
            );
        }
        checked += 1;
    }
    if checked != 33_867 + LINEAR_CASES {
        fail(4, what, &format!("grid produced {checked} instances"));
    }
    pass(4, what);
}

#[test]
fn a05_independence_sum_inequality_strict_on_grid() {
    let what = "independence sum strictly beats n/(2^(k+1) m)^(1/k) on the grid";
    let caps = Caps::default();
    let mut ties = 0usize;
    let mut checked = 0usize;
    for h in soundness_grid() {
        if h.m() == 0 {
            continue;
        }
        let report = check_hgraph_inequality(&h, &caps).expect("within caps");
        match report.verdict {
            Verdict::Holds => checked += 1,
            Verdict::Fails => {
                let exact_tie = report.rhs.lo() == report.rhs.hi()
                    && report.lhs == *report.rhs.lo();
                if exact_tie {
                    ties += 1;
                } else {
                    fail(
                        5,
                        what,
                        &format!(
                            "k={} n={} m={}: sum {} is below the enclosure [{}, {}]",
                            h.k(),
                            h.n(),
                            h.m(),
                            report.lhs,
                            report.rhs.lo(),
                            report.rhs.hi()
                        ),
                    );
                }
            }
            Verdict::Indeterminate => fail(
                5,
                what,
                &format!(
                    "k={} n={} m={}: enclosure too wide to decide",
                    h.k(),
                    h.n(),
                    h.m()
                ),
            ),
        }
    }
    if ties > 0 {
        fail(5, what, &format!("{ties} exact ties (strictness fails)"));
    }
    println!("criterion 05: {checked} instances, 0 ties");
    pass(5, what);
}

fn trial_instances() -> Vec<Hypergraph> {
    vec![
        i_unit(3, 2).expect("valid parameters"),
        family_h(2, 3, 1).expect("valid parameters"),
    ]
}

#[test]
fn a06_trial_mean_tracks_exact_expectation() {
    let what = "sampled selection mean within 5 SE of the exact expectation";
    for h in trial_instances() {
        let t = h.t() as u64;
        for &a in &TRIAL_THRESHOLDS {
            let batch = run_trials(&h, a, TRIALS, TRIAL_SEED).expect("valid trial setup");
            let expected: Rat = h
                .degrees()
                .iter()
                .map(|&d| p_at_most(d as u64, t, a - 1).expect("valid threshold"))
                .sum();
            let mean = batch.mean_low_backward();
            let variance = batch.sample_variance_low_backward();
            let diff = mean.clone() - &expected;
            // |mean - expected| <= 5*sqrt(var/trials), squared to stay exact
            let lhs = &diff * &diff * rat_int(TRIALS as i64);
            let rhs = rat_int(SE_MULTIPLE * SE_MULTIPLE) * &variance;
            if lhs > rhs {
                fail(
                    6,
                    what,
                    &format!(
                        "n={} m={} A={a}: mean {mean} vs expected {expected}, \
                         sample variance {variance}",
                        h.n(),
                        h.m()
                    ),
                );
            }
        }
    }
    pass(6, what);
}

#[test]
fn a07_internal_edges_bounded_in_every_trial() {
    let what = "edges inside the selection at most (A-1)|I| in every trial";
    for h in trial_instances() {
        for &a in &TRIAL_THRESHOLDS {
            let batch = run_trials(&h, a, TRIALS, TRIAL_SEED).expect("valid trial setup");
            for (i, r) in batch.records.iter().enumerate() {
                if r.internal_edges > (a as usize - 1) * r.low_backward_size {
                    fail(
                        7,
                        what,
                        &format!(
                            "n={} m={} A={a} trial {i}: {} internal edges on \
                             a selection of {}",
                            h.n(),
                            h.m(),
                            r.internal_edges,
                            r.low_backward_size
                        ),
                    );
                }
            }
        }
    }
    pass(7, what);
}

#[test]
fn a08_construction_shapes_exact() {
    let what = "tower and unit families have their stated shapes";
    for levels in 1..=14u32 {
        let h = bipartite_tower(levels).expect("within the level budget");
        let expect_n = (1usize << (levels + 1)) - 2;
        if h.n() != expect_n {
            fail(
                8,
                what,
                &format!("tower({levels}): {} vertices, expected {expect_n}", h.n()),
            );
        }
        let expect_avg = rat((1i64 << levels) + 1, 3);
        if h.average_degree() != expect_avg {
            fail(
                8,
                what,
                &format!(
                    "tower({levels}): average degree {}, expected {expect_avg}",
                    h.average_degree()
                ),
            );
        }
    }
    for k in [2u32, 3, 4] {
        for i in [0u32, 1, 2] {
            let h = i_unit(k, i).expect("within the vertex budget");
            let degree = 1usize << i;
            if !h.degrees().iter().all(|&d| d == degree) {
                fail(8, what, &format!("i_unit({k},{i}) is not {degree}-regular"));
            }
            if !h.is_linear() {
                fail(8, what, &format!("i_unit({k},{i}) is not linear"));
            }
        }
    }
    pass(8, what);
}

#[test]
fn a09_ratio_grows_like_log_of_vertex_count() {
    let what = "degree-sequence gain over the average-degree form tracks log |V|";
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for levels in 4..=12u32 {
        let h = bipartite_tower(levels).expect("within the level budget");
        let d_avg = h.average_degree();
        let bound = degree_sequence_bound(&h, &rat(1, 2), &rat_int(1), Family::TriangleFree, DIGITS)
            .expect("average degree above 1");
        let comparator = ln(&d_avg, DIGITS)
            .expect("positive argument")
            .mul_rat(&(rat_int(h.n() as i64) / &d_avg));
        let ratio = bound.div(&comparator);
        xs.push((h.n() as f64).ln());
        ys.push(ratio.midpoint().to_f64().expect("representable ratio"));
    }
    // least-squares fit y = intercept + slope * x
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let residual_norm: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum::<f64>()
        .sqrt();
    let value_norm: f64 = ys.iter().map(|y| y * y).sum::<f64>().sqrt();
    let relative = residual_norm / value_norm;
    if !(relative < MAX_RELATIVE_RESIDUAL) {
        fail(
            9,
            what,
            &format!(
                "relative residual {relative:.4} (limit {MAX_RELATIVE_RESIDUAL}), \
                 slope {slope:.4}, intercept {intercept:.4}"
            ),
        );
    }
    println!(
        "criterion 09: fit ratio = {intercept:.4} + {slope:.4} * ln|V|, \
         relative residual {relative:.4}"
    );
    pass(9, what);
}

#[test]
fn a10_large_degree_ratio_inside_two_percent_window() {
    let what = "ratio at d=10^4 within [0.98, 1.02] for all t <= 4, A <= 8";
    let lo = rat(RATIO_WINDOW.0, 50);
    let hi = rat(RATIO_WINDOW.1, 50);
    let mut outside = Vec::new();
    for t in 1..=4u64 {
        for a in 1..=8u64 {
            let v = asymptotic_ratio(RATIO_DEGREE, t, a).expect("valid arguments");
            let inside = *v.lo() >= lo && *v.hi() <= hi;
            if !inside {
                outside.push(format!("t={t} A={a}: {}", v.to_decimal(6)));
            }
        }
    }
    if !outside.is_empty() {
        fail(
            10,
            what,
            &format!(
                "{} of 32 cells outside the window; first: {}",
                outside.len(),
                outside[0]
            ),
        );
    }
    pass(10, what);
}
