//! Exact independence numbers and full independent-set enumeration.
//!
//! Both operations are exponential in the worst case and are therefore
//! guarded by [`Caps`]; within the caps, vertex sets fit in a `u64` bitmask
//! and the search is a plain branch-and-bound with a greedy warm start.

use std::cmp::Ordering;

use num::bigint::BigInt;
use num::Zero;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::{binom, Rat};
use crate::hypergraph::Hypergraph;
use crate::precise::{nth_root, Interval};

const MASK_LIMIT: usize = 64;
const INEQUALITY_DIGITS: u32 = 60;

/// The exact independence number of `h`.
///
/// Branch-and-bound over vertices in descending degree order, warm-started
/// with a deterministic greedy set. Refuses instances over `caps.alpha_n`.
pub fn exact_alpha(h: &Hypergraph, caps: &Caps) -> Result<usize> {
    Caps::check("alpha vertex count", h.n(), caps.alpha_n)?;
    Caps::check("alpha bitmask width", h.n(), MASK_LIMIT)?;
    let n = h.n();

    let edge_masks: Vec<u64> = h
        .edges()
        .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let mut vertex_edges: Vec<Vec<u64>> = vec![Vec::new(); n];
    for (e, &mask) in h.edges().zip(&edge_masks) {
        for &v in e {
            vertex_edges[v as usize].push(mask);
        }
    }

    // greedy warm start: take vertices in ascending degree order whenever
    // they do not complete an edge
    let degrees = h.degrees();
    let mut greedy_order: Vec<usize> = (0..n).collect();
    greedy_order.sort_by_key(|&v| (degrees[v], v));
    let mut chosen = 0u64;
    let mut best = 0usize;
    for &v in &greedy_order {
        if can_take(v, chosen, &vertex_edges) {
            chosen |= 1 << v;
            best += 1;
        }
    }

    // branch on high-degree vertices first: they constrain the most
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (usize::MAX - degrees[v], v));

    fn search(
        idx: usize,
        chosen: u64,
        count: usize,
        order: &[usize],
        vertex_edges: &[Vec<u64>],
        best: &mut usize,
    ) {
        if count + (order.len() - idx) <= *best {
            return;
        }
        if idx == order.len() {
            *best = count;
            return;
        }
        let v = order[idx];
        if can_take(v, chosen, vertex_edges) {
            search(idx + 1, chosen | 1 << v, count + 1, order, vertex_edges, best);
        }
        search(idx + 1, chosen, count, order, vertex_edges, best);
    }

    search(0, 0, 0, &order, &vertex_edges, &mut best);
    Ok(best)
}

fn can_take(v: usize, chosen: u64, vertex_edges: &[Vec<u64>]) -> bool {
    let after = chosen | 1 << v;
    vertex_edges[v].iter().all(|&mask| mask & !after != 0)
}

/// Counts of independent sets grouped by size, `counts[j]` being the number
/// of independent `j`-subsets. `counts[0] = 1` for the empty set.
pub fn independent_set_counts(h: &Hypergraph, caps: &Caps) -> Result<Vec<u64>> {
    Caps::check("enumeration vertex count", h.n(), caps.enum_n)?;
    Caps::check("enumeration bitmask width", h.n(), MASK_LIMIT)?;
    let n = h.n();
    let mut vertex_edges: Vec<Vec<u64>> = vec![Vec::new(); n];
    for e in h.edges() {
        let mask = e.iter().fold(0u64, |m, &v| m | 1 << v);
        for &v in e {
            vertex_edges[v as usize].push(mask);
        }
    }
    let mut counts = vec![0u64; n + 1];
    counts[0] = 1;

    // depth-first over independent sets only: extending an independent set
    // by a vertex keeps it independent iff no edge becomes fully chosen, so
    // pruned branches never hide further independent sets
    fn extend(
        from: usize,
        chosen: u64,
        size: usize,
        vertex_edges: &[Vec<u64>],
        counts: &mut [u64],
    ) {
        for v in from..vertex_edges.len() {
            if can_take(v, chosen, vertex_edges) {
                counts[size + 1] += 1;
                extend(v + 1, chosen | 1 << v, size + 1, vertex_edges, counts);
            }
        }
    }
    extend(0, 0, 0, &vertex_edges, &mut counts);
    Ok(counts)
}

/// The weighted independence sum `sum_J 1 / C(n, |J|)` over every independent
/// set `J`, the empty set included (so the value is always at least 1).
pub fn independent_sum(h: &Hypergraph, caps: &Caps) -> Result<Rat> {
    let counts = independent_set_counts(h, caps)?;
    let n = h.n() as i64;
    let mut sum = Rat::zero();
    for (j, &c) in counts.iter().enumerate() {
        if c != 0 {
            sum += Rat::new(BigInt::from(c), binom(n, j as i64));
        }
    }
    Ok(sum)
}

/// Verdict of a strict inequality checked through a rigorous enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The enclosure straddles the threshold; widen the precision to decide.
    /// Never reported as `Holds`.
    Indeterminate,
}

/// Result of checking the independence-sum inequality
/// `sum_J 1/C(n, |J|) > n / (2^(k+1) * m)^(1/k)`.
#[derive(Debug, Clone)]
pub struct InequalityReport {
    /// Exact left-hand side.
    pub lhs: Rat,
    /// Enclosure of the irrational right-hand side, at least 50 significant
    /// digits wide of guaranteed accuracy.
    pub rhs: Interval,
    pub verdict: Verdict,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Checks the independence-sum inequality for a hypergraph with at least one
/// edge. The right-hand side `2^-(k+1)/k * n / m^(1/k)` is evaluated as
/// `n / (2^(k+1) * m)^(1/k)` with a proven enclosure; an exact tie counts as
/// a failure of the strict inequality, and an undecided enclosure is reported
/// as [`Verdict::Indeterminate`], never as holding.
pub fn check_hgraph_inequality(h: &Hypergraph, caps: &Caps) -> Result<InequalityReport> {
    if h.m() == 0 {
        return Err(Error::UndefinedBound(
            "the independence-sum inequality requires at least one edge".into(),
        ));
    }
    let lhs = independent_sum(h, caps)?;
    let base = Rat::from_integer(
        BigInt::from(2).pow(h.k() as u32 + 1) * BigInt::from(h.m()),
    );
    let root = nth_root(&base, h.k() as u32, INEQUALITY_DIGITS)?;
    let rhs = root.recip().mul_rat(&Rat::from_integer(BigInt::from(h.n())));
    let verdict = match rhs.cmp_rat(&lhs) {
        Some(Ordering::Less) => Verdict::Holds,
        Some(Ordering::Equal) | Some(Ordering::Greater) => Verdict::Fails,
        None => Verdict::Indeterminate,
    };
    Ok(InequalityReport { lhs, rhs, verdict })
}
