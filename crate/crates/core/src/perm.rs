//! The random-permutation engine.
//!
//! Place the vertices of a hypergraph in uniformly random order. An edge is
//! *backward* for a vertex `v` when every other vertex of the edge precedes
//! `v`. Vertices with few backward edges form nearly-independent sets, and
//! for stars (one center, `d` pairwise-disjoint edges of `t` co-vertices)
//! the distribution of the backward count has exact closed forms.
//!
//! This module provides those closed forms, a brute-force oracle that walks
//! all `(t*d + 1)!` orderings of a star to validate them, and the seeded
//! trial pipeline that turns low-backward selection plus a greedy second
//! stage into actual independent sets.

use num::bigint::BigInt;
use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::{binom, factorial, frac_binom, rat_int, Rat};
use crate::hypergraph::Hypergraph;
use crate::precise::{nth_root, Interval};

/// A star: `d` edges through one center, every edge carrying `t` further
/// vertices, all disjoint. The canonical layout puts the center at id 0 and
/// edge `j` on ids `1 + j*t ..= (j+1)*t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarConfig {
    d: usize,
    t: usize,
}

impl StarConfig {
    pub fn new(d: usize, t: usize) -> Result<Self> {
        if d < 1 || t < 1 {
            return Err(Error::invalid("a star needs d >= 1 and t >= 1"));
        }
        Ok(StarConfig { d, t })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Total number of vertices, `t*d + 1`.
    pub fn universe(&self) -> usize {
        self.t * self.d + 1
    }

    /// The star as a concrete (t+1)-uniform hypergraph.
    pub fn hypergraph(&self) -> Hypergraph {
        let k = self.t + 1;
        let mut flat = Vec::with_capacity(self.d * k);
        for j in 0..self.d {
            flat.push(0u32);
            for s in 0..self.t {
                flat.push((1 + j * self.t + s) as u32);
            }
        }
        Hypergraph::from_parts_unchecked(k, self.universe(), flat)
    }
}

fn position_table(h: &Hypergraph, pi: &[u32]) -> Result<Vec<usize>> {
    if pi.len() != h.n() {
        return Err(Error::invalid(format!(
            "permutation has {} entries, hypergraph has {} vertices",
            pi.len(),
            h.n()
        )));
    }
    let mut pos = vec![usize::MAX; h.n()];
    for (p, &v) in pi.iter().enumerate() {
        if v as usize >= h.n() || pos[v as usize] != usize::MAX {
            return Err(Error::invalid(
                "sequence is not a permutation of the vertex set",
            ));
        }
        pos[v as usize] = p;
    }
    Ok(pos)
}

/// Number of edges through `v` whose other vertices all precede `v` in the
/// ordering `pi` (given as the sequence of vertices, earliest first).
pub fn backward_count(h: &Hypergraph, pi: &[u32], v: u32) -> Result<usize> {
    let pos = position_table(h, pi)?;
    if v as usize >= h.n() {
        return Err(Error::invalid(format!(
            "vertex {v} out of range for n = {}",
            h.n()
        )));
    }
    let pv = pos[v as usize];
    Ok(h
        .edges()
        .filter(|e| {
            e.contains(&v) && e.iter().all(|&u| u == v || pos[u as usize] < pv)
        })
        .count())
}

/// Backward count of every vertex at once: each edge is backward exactly for
/// its last vertex in the ordering.
pub fn backward_counts(h: &Hypergraph, pi: &[u32]) -> Result<Vec<usize>> {
    let pos = position_table(h, pi)?;
    let mut counts = vec![0usize; h.n()];
    for e in h.edges() {
        let last = e
            .iter()
            .max_by_key(|&&u| pos[u as usize])
            .expect("edges are non-empty");
        counts[*last as usize] += 1;
    }
    Ok(counts)
}

/// The vertices with at most `a - 1` backward edges under `pi`.
///
/// For `a = 1` the selection is independent outright; in general any edge
/// inside the selection is backward for its last vertex, so the selection
/// contains at most `(a - 1) * |selection|` edges.
pub fn select_low_backward(h: &Hypergraph, pi: &[u32], a: u64) -> Result<Vec<u32>> {
    if a < 1 {
        return Err(Error::invalid("select_low_backward needs a >= 1"));
    }
    let counts = backward_counts(h, pi)?;
    Ok((0..h.n() as u32)
        .filter(|&v| (counts[v as usize] as u64) < a)
        .collect())
}

/// Probability that a degree-`d` star center has at most `a_minus_1`
/// backward edges:
///
/// ```text
/// P = 1                                          if d <= a_minus_1
/// P = (t*A / (t*A + 1)) * C(d, A) / C(d + 1/t, d - A)    with A = a_minus_1 + 1
/// ```
pub fn p_at_most(d: u64, t: u64, a_minus_1: u64) -> Result<Rat> {
    if t == 0 {
        return Err(Error::invalid("p_at_most requires t >= 1"));
    }
    if d <= a_minus_1 {
        return Ok(Rat::one());
    }
    let a = a_minus_1 + 1;
    let prefactor = Rat::new(BigInt::from(t * a), BigInt::from(t * a + 1));
    Ok(prefactor * Rat::from_integer(binom(d as i64, a as i64)) / frac_binom(d, t, d - a)?)
}

/// Probability that the center has no backward edge at all:
/// `1 / C(d + 1/t, d)`.
pub fn p_zero(d: u64, t: u64) -> Result<Rat> {
    Ok(frac_binom(d, t, d)?.recip())
}

/// Probability that the center has at least `a` backward edges. Computed
/// both as `1 - p_at_most(d, t, a - 1)` and as the alternating sum
///
/// ```text
/// sum_{i=0}^{d-a} (-1)^i C(d, i+a) C(a+i-1, i) / (t*(i+a) + 1)
/// ```
///
/// and cross-checked; a mismatch would mean a broken identity and panics.
pub fn q_at_least(d: u64, t: u64, a: u64) -> Result<Rat> {
    if t == 0 {
        return Err(Error::invalid("q_at_least requires t >= 1"));
    }
    let closed = if a == 0 {
        Rat::one()
    } else {
        Rat::one() - p_at_most(d, t, a - 1)?
    };
    let mut sum = Rat::zero();
    let mut i = 0u64;
    while i + a <= d {
        let numer = binom(d as i64, (i + a) as i64) * binom((a + i) as i64 - 1, i as i64);
        let term = Rat::new(numer, BigInt::from(t * (i + a) + 1));
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        i += 1;
    }
    assert_eq!(
        closed, sum,
        "closed form and inclusion-exclusion disagree at d={d} t={t} a={a}"
    );
    Ok(closed)
}

/// Exact distribution of the center's backward-edge count over all
/// `(t*d + 1)!` orderings of a star, by brute force. Entry `b` of the result
/// is the probability of exactly `b` backward edges.
///
/// This is the oracle the closed forms are validated against, so it goes
/// through [`backward_count`]'s definition rather than any formula: it walks
/// every permutation and tallies.
pub fn enumerate_star_distribution(cfg: StarConfig, caps: &Caps) -> Result<Vec<Rat>> {
    Caps::check("star t*d", cfg.t * cfg.d, caps.star_td)?;
    let n = cfg.universe();
    let d = cfg.d;
    let t = cfg.t;

    let mut counts = vec![0u64; d + 1];
    let mut items: Vec<u8> = (0..n as u8).collect();
    let mut seen = vec![0usize; d];
    for_each_permutation(&mut items, &mut |perm| {
        seen.iter_mut().for_each(|s| *s = 0);
        let mut backward = 0usize;
        for &x in perm {
            if x == 0 {
                backward = seen.iter().filter(|&&s| s == t).count();
                break;
            }
            seen[(x as usize - 1) / t] += 1;
        }
        counts[backward] += 1;
    });

    let total = factorial(n as u64);
    debug_assert_eq!(counts.iter().sum::<u64>(), {
        let mut f = 1u64;
        for i in 2..=n as u64 {
            f *= i;
        }
        f
    });
    Ok(counts
        .iter()
        .map(|&c| Rat::new(BigInt::from(c), total.clone()))
        .collect())
}

/// Heap's algorithm; calls `f` with each permutation of `items` exactly once.
fn for_each_permutation(items: &mut [u8], f: &mut impl FnMut(&[u8])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Ratio of the exact probability `p_at_most(d, t, a - 1)` to the
/// closed asymptotic expression `(1 / (1 + 1/(t*a))) * (a/d)^(1/t)`,
/// as a rigorous enclosure with at least 30 significant digits.
///
/// At `d = a` the two coincide and the ratio is exactly 1. For `d >> a` the
/// ratio tends to `Gamma(a + 1 + 1/t) / (Gamma(a + 1) * a^(1/t))`, which is
/// 1 only in the large-`a` limit; the enclosure makes that drift visible
/// rather than hiding it.
pub fn asymptotic_ratio(d: u64, t: u64, a: u64) -> Result<Interval> {
    if t == 0 || a == 0 || d < a {
        return Err(Error::invalid(
            "asymptotic_ratio requires t >= 1 and 1 <= a <= d",
        ));
    }
    let p = p_at_most(d, t, a - 1)?;
    // dividing by (t*a/(t*a+1)) * (a/d)^(1/t) equals multiplying by the
    // reciprocal prefactor and the root of d/a
    let prefactor = Rat::new(BigInt::from(t * a + 1), BigInt::from(t * a));
    let root = nth_root(
        &Rat::new(BigInt::from(d), BigInt::from(a)),
        t as u32,
        35,
    )?;
    Ok(root.mul_rat(&(p * prefactor)))
}

/// Per-trial measurements of the two-stage pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialRecord {
    /// Size of the low-backward selection.
    pub low_backward_size: usize,
    /// Edges lying entirely inside the selection.
    pub internal_edges: usize,
    /// Size of the independent set after the greedy second stage.
    pub final_size: usize,
}

/// Results of a batch of seeded trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialBatch {
    pub seed: u64,
    /// The backward-edge threshold `a` (selection keeps counts below it).
    pub threshold: u64,
    pub records: Vec<TrialRecord>,
    /// The largest independent set seen across all trials, original ids,
    /// sorted ascending.
    pub best_set: Vec<u32>,
}

impl TrialBatch {
    pub fn trials(&self) -> usize {
        self.records.len()
    }

    pub fn mean_low_backward(&self) -> Rat {
        let total: u64 = self.records.iter().map(|r| r.low_backward_size as u64).sum();
        Rat::new(BigInt::from(total), BigInt::from(self.records.len().max(1)))
    }

    pub fn mean_final(&self) -> Rat {
        let total: u64 = self.records.iter().map(|r| r.final_size as u64).sum();
        Rat::new(BigInt::from(total), BigInt::from(self.records.len().max(1)))
    }

    /// Unbiased sample variance of the selection size (exact).
    pub fn sample_variance_low_backward(&self) -> Rat {
        let t = self.records.len();
        if t < 2 {
            return Rat::zero();
        }
        let mean = self.mean_low_backward();
        let mut acc = Rat::zero();
        for r in &self.records {
            let diff = rat_int(r.low_backward_size as i64) - &mean;
            acc += &diff * &diff;
        }
        acc / rat_int(t as i64 - 1)
    }

    pub fn best_size(&self) -> usize {
        self.best_set.len()
    }
}

/// Runs `trials` seeded two-stage trials: sample a uniform ordering, keep
/// vertices with fewer than `a` backward edges, then grow an independent set
/// inside the selection with [`second_stage`]. Trial `i` draws from a
/// generator seeded with `seed ^ i` (the generator's initialization mixes
/// the value), so a batch is reproducible and individual trials are
/// independent streams.
pub fn run_trials(h: &Hypergraph, a: u64, trials: usize, seed: u64) -> Result<TrialBatch> {
    if a < 1 {
        return Err(Error::invalid("run_trials needs a >= 1"));
    }
    let n = h.n();
    let mut records = Vec::with_capacity(trials);
    let mut best_set: Vec<u32> = Vec::new();

    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i as u64);
        let mut pi: Vec<u32> = (0..n as u32).collect();
        pi.shuffle(&mut rng);

        let selection = select_low_backward(h, &pi, a)?;
        let mut inside = vec![false; n];
        for &v in &selection {
            inside[v as usize] = true;
        }
        let internal_edges = h
            .edges()
            .filter(|e| e.iter().all(|&v| inside[v as usize]))
            .count();

        let final_set: Vec<u32> = if selection.is_empty() {
            Vec::new()
        } else {
            let (induced, map) = h.induced(&selection)?;
            let chosen = second_stage(&induced, &mut rng);
            debug_assert!(induced.is_independent(&chosen).unwrap());
            let mut mapped: Vec<u32> = chosen.iter().map(|&v| map[v as usize]).collect();
            mapped.sort_unstable();
            mapped
        };

        records.push(TrialRecord {
            low_backward_size: selection.len(),
            internal_edges,
            final_size: final_set.len(),
        });
        if final_set.len() > best_set.len() {
            best_set = final_set;
        }
    }

    Ok(TrialBatch {
        seed,
        threshold: a,
        records,
        best_set,
    })
}

/// Greedy independent set by repeated minimum-degree choice with random
/// tie-breaking.
///
/// Repeatedly pick an undecided vertex of minimum degree among the still
/// relevant edges (ties broken uniformly); take it unless doing so would
/// complete an edge whose other vertices are all taken, in which case the
/// vertex is discarded and the edges through it stop mattering. The output
/// is always independent; its size carries no guarantee.
pub fn second_stage(h: &Hypergraph, rng: &mut impl Rng) -> Vec<u32> {
    let n = h.n();
    let m = h.m();
    let mut vertex_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, e) in h.edges().enumerate() {
        for &v in e {
            vertex_edges[v as usize].push(idx);
        }
    }

    let mut alive = vec![true; m];
    let mut chosen_in_edge = vec![0usize; m];
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Undecided,
        Chosen,
        Discarded,
    }
    let mut state = vec![State::Undecided; n];
    let mut degree: Vec<usize> = vertex_edges.iter().map(|es| es.len()).collect();
    let mut undecided = n;

    let mut chosen = Vec::new();
    while undecided > 0 {
        // minimum-degree undecided vertex, uniform among ties
        let mut pick = usize::MAX;
        let mut pick_degree = usize::MAX;
        let mut ties = 0usize;
        for v in 0..n {
            if state[v] != State::Undecided {
                continue;
            }
            if degree[v] < pick_degree {
                pick = v;
                pick_degree = degree[v];
                ties = 1;
            } else if degree[v] == pick_degree {
                ties += 1;
                if rng.gen_range(0..ties) == 0 {
                    pick = v;
                }
            }
        }
        let v = pick;
        undecided -= 1;

        let completes = vertex_edges[v]
            .iter()
            .any(|&e| alive[e] && chosen_in_edge[e] + 1 == h.k());
        if completes {
            state[v] = State::Discarded;
            for &e in &vertex_edges[v] {
                if alive[e] {
                    alive[e] = false;
                    for &u in h.edge(e) {
                        if state[u as usize] == State::Undecided {
                            degree[u as usize] -= 1;
                        }
                    }
                }
            }
        } else {
            state[v] = State::Chosen;
            chosen.push(v as u32);
            for &e in &vertex_edges[v] {
                if alive[e] {
                    chosen_in_edge[e] += 1;
                }
            }
        }
    }
    chosen.sort_unstable();
    chosen
}
