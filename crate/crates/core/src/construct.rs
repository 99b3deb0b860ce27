//! Named hypergraph families and seeded random instances.
//!
//! The deterministic families here are the standard stress cases for
//! degree-based bounds: towers of complete bipartite blocks (wildly varying
//! degrees), recursively defined regular linear "unit" hypergraphs, the
//! mixed family built from many unit copies, and a pendant-decorated
//! bipartite graph on which naive degree truncation overshoots.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Disjoint union of hypergraphs of equal uniformity: vertex ids of later
/// blocks are shifted past the earlier ones.
pub fn disjoint_union(blocks: &[Hypergraph]) -> Result<Hypergraph> {
    if blocks.is_empty() {
        return Err(Error::invalid("disjoint_union needs at least one block"));
    }
    let k = blocks[0].k();
    let mut n: usize = 0;
    let mut m: usize = 0;
    for b in blocks {
        if b.k() != k {
            return Err(Error::WrongUniformity {
                expected: k,
                got: b.k(),
            });
        }
        n += b.n();
        m += b.m();
    }
    if n > u32::MAX as usize {
        return Err(Error::invalid("disjoint union exceeds the vertex id range"));
    }
    let mut flat = Vec::with_capacity(m * k);
    let mut offset = 0u32;
    for b in blocks {
        for e in b.edges() {
            flat.extend(e.iter().map(|&v| v + offset));
        }
        offset += b.n() as u32;
    }
    Ok(Hypergraph::from_parts_unchecked(k, n, flat))
}

/// Union of complete bipartite graphs `K(2^j, 2^j)` for `j = 0 .. levels`.
///
/// Has `2^(levels+1) - 2` vertices, `(4^levels - 1)/3` edges and average
/// degree `(2^levels + 1)/3`; the top block alone has degree `2^(levels-1)`,
/// so degrees spread from 1 to roughly three times the average.
pub fn bipartite_tower(levels: u32) -> Result<Hypergraph> {
    if levels < 1 {
        return Err(Error::invalid("bipartite_tower needs at least one level"));
    }
    if levels > 15 {
        return Err(Error::invalid(
            "bipartite_tower beyond 15 levels exceeds the edge budget",
        ));
    }
    let n: usize = 2 * ((1usize << levels) - 1);
    let m: usize = ((1usize << (2 * levels)) - 1) / 3;
    let mut flat = Vec::with_capacity(2 * m);
    let mut base = 0u32;
    for j in 0..levels {
        let side = 1u32 << j;
        for x in 0..side {
            for y in 0..side {
                flat.push(base + x);
                flat.push(base + side + y);
            }
        }
        base += 2 * side;
    }
    Ok(Hypergraph::from_parts_unchecked(2, n, flat))
}

/// The `i`-th unit: vertex set `[k]^(2^i)` with one edge per axis-parallel
/// line. `k`-uniform, `2^i`-regular, linear, with `k^(2^i)` vertices and
/// `2^i * k^(2^i - 1)` edges.
pub fn i_unit(k: u32, i: u32) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::invalid("i_unit needs k >= 2"));
    }
    let dims = 1u32
        .checked_shl(i)
        .ok_or_else(|| Error::invalid("i_unit dimension overflow"))?;
    let mut n: u64 = 1;
    for _ in 0..dims {
        n = n
            .checked_mul(k as u64)
            .filter(|&v| v <= (1 << 26))
            .ok_or_else(|| Error::invalid("i_unit vertex count exceeds the budget"))?;
    }
    let n = n as usize;
    let m = dims as usize * n / k as usize;
    let mut flat: Vec<u32> = Vec::with_capacity(m * k as usize);
    // stride of axis c is k^c; enumerate the points whose c-th digit is 0
    // and extend each along the axis
    let mut stride: u64 = 1;
    for _ in 0..dims {
        let block = stride * k as u64; // ids repeat digit c with period k^(c+1)
        for base in (0..n as u64).step_by(block as usize) {
            for low in base..base + stride {
                for v in 0..k as u64 {
                    flat.push((low + v * stride) as u32);
                }
            }
        }
        stride = block;
    }
    Ok(Hypergraph::from_parts_unchecked(k as usize, n, flat))
}

/// Mixed family: for each `i` in `0..levels`, take
/// `ceil(w * k^(2^levels) / k^(2^i))` disjoint copies of [`i_unit`]`(k, i)`.
pub fn family_h(levels: u32, k: u32, w: u32) -> Result<Hypergraph> {
    if levels < 1 || k < 2 || w < 1 {
        return Err(Error::invalid(
            "family_h needs levels >= 1, k >= 2 and w >= 1",
        ));
    }
    let mass = (0..1u32 << levels).try_fold(w as u64, |acc, _| {
        acc.checked_mul(k as u64)
            .filter(|&v| v <= (1 << 32))
            .ok_or_else(|| Error::invalid("family_h mass exceeds the budget"))
    })?;
    let mut blocks = Vec::new();
    for i in 0..levels {
        let unit = i_unit(k, i)?;
        let copies = mass.div_ceil(unit.n() as u64);
        for _ in 0..copies {
            blocks.push(unit.clone());
        }
    }
    disjoint_union(&blocks)
}

/// A balanced complete bipartite graph with a pendant vertex matched to
/// each vertex of the first part: `n/3 + n/3` core vertices plus `n/3`
/// pendants. Requires `n` divisible by 3.
///
/// Average degree stays near `n/9 + O(1)` while a third of the vertices have
/// degree 1, which is the shape that makes coarse degree-truncation bounds
/// exceed `n` once `n` is large enough.
pub fn pendant_bipartite(n: u32) -> Result<Hypergraph> {
    if n < 3 || n % 3 != 0 {
        return Err(Error::invalid(
            "pendant_bipartite needs n >= 3 divisible by 3",
        ));
    }
    let part = n / 3;
    let mut flat = Vec::with_capacity(2 * (part as usize * part as usize + part as usize));
    for x in 0..part {
        for y in 0..part {
            flat.push(x);
            flat.push(part + y);
        }
    }
    for x in 0..part {
        flat.push(x);
        flat.push(2 * part + x);
    }
    Ok(Hypergraph::from_parts_unchecked(2, n as usize, flat))
}

/// A named family together with its parameters, as selected on a command
/// line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    BipartiteTower { levels: u32 },
    IUnit { k: u32, i: u32 },
    FamilyH { levels: u32, k: u32, w: u32 },
    PendantBipartite { n: u32 },
}

impl FamilySpec {
    /// Resolves a family name plus optional numeric parameters. Parameters
    /// a family does not use must not be supplied.
    pub fn parse(
        name: &str,
        n: Option<u32>,
        k: Option<u32>,
        i: Option<u32>,
        w: Option<u32>,
    ) -> Result<Self> {
        let need = |p: Option<u32>, what: &str| {
            p.ok_or_else(|| Error::invalid(format!("family '{name}' requires --{what}")))
        };
        let refuse = |p: Option<u32>, what: &str| {
            if p.is_some() {
                Err(Error::invalid(format!(
                    "family '{name}' does not take --{what}"
                )))
            } else {
                Ok(())
            }
        };
        match name {
            "bipartite-tower" => {
                refuse(k, "k")?;
                refuse(i, "i")?;
                refuse(w, "w")?;
                Ok(FamilySpec::BipartiteTower {
                    levels: need(n, "n")?,
                })
            }
            "i-unit" => {
                refuse(n, "n")?;
                refuse(w, "w")?;
                Ok(FamilySpec::IUnit {
                    k: need(k, "k")?,
                    i: need(i, "i")?,
                })
            }
            "family-h" => {
                refuse(i, "i")?;
                Ok(FamilySpec::FamilyH {
                    levels: need(n, "n")?,
                    k: need(k, "k")?,
                    w: need(w, "w")?,
                })
            }
            "pendant-bipartite" => {
                refuse(k, "k")?;
                refuse(i, "i")?;
                refuse(w, "w")?;
                Ok(FamilySpec::PendantBipartite { n: need(n, "n")? })
            }
            other => Err(Error::invalid(format!(
                "unknown family '{other}' (expected bipartite-tower, i-unit, family-h or pendant-bipartite)"
            ))),
        }
    }

    pub fn build(&self) -> Result<Hypergraph> {
        match *self {
            FamilySpec::BipartiteTower { levels } => bipartite_tower(levels),
            FamilySpec::IUnit { k, i } => i_unit(k, i),
            FamilySpec::FamilyH { levels, k, w } => family_h(levels, k, w),
            FamilySpec::PendantBipartite { n } => pendant_bipartite(n),
        }
    }
}

/// `m` distinct uniformly random `k`-edges on `n` vertices.
pub fn random_hypergraph(
    n: usize,
    k: usize,
    m: usize,
    rng: &mut impl Rng,
) -> Result<Hypergraph> {
    if k < 1 || k > n {
        return Err(Error::invalid("random_hypergraph needs 1 <= k <= n"));
    }
    let mut chosen: HashSet<Vec<u32>> = HashSet::new();
    let mut pool: Vec<u32> = (0..n as u32).collect();
    let mut guard = 0usize;
    while chosen.len() < m {
        guard += 1;
        if guard > 1000 * m.max(1) + 1000 {
            return Err(Error::invalid(
                "random_hypergraph could not place that many distinct edges",
            ));
        }
        let (sel, _) = pool.partial_shuffle(rng, k);
        let mut e: Vec<u32> = sel.to_vec();
        e.sort_unstable();
        chosen.insert(e);
    }
    let mut edges: Vec<Vec<u32>> = chosen.into_iter().collect();
    edges.sort();
    Hypergraph::new(k, n, edges)
}

/// Random linear hypergraph: samples `attempts` random `k`-subsets and keeps
/// those meeting every kept edge in at most one vertex.
pub fn random_linear_hypergraph(
    n: usize,
    k: usize,
    attempts: usize,
    rng: &mut impl Rng,
) -> Result<Hypergraph> {
    if k < 2 || k > n {
        return Err(Error::invalid("random_linear_hypergraph needs 2 <= k <= n"));
    }
    let mut pairs: HashSet<(u32, u32)> = HashSet::new();
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut pool: Vec<u32> = (0..n as u32).collect();
    for _ in 0..attempts {
        let (sel, _) = pool.partial_shuffle(rng, k);
        let mut e: Vec<u32> = sel.to_vec();
        e.sort_unstable();
        let ok = e
            .iter()
            .enumerate()
            .all(|(idx, &a)| e[idx + 1..].iter().all(|&b| !pairs.contains(&(a, b))));
        if ok {
            for (idx, &a) in e.iter().enumerate() {
                for &b in &e[idx + 1..] {
                    pairs.insert((a, b));
                }
            }
            edges.push(e);
        }
    }
    edges.sort();
    Hypergraph::new(k, n, edges)
}

/// Random family of subsets of `{0, ..., universe - 1}` for
/// inclusion-exclusion checks: each of the `sets` subsets picks every element
/// independently with probability 1/2.
pub fn random_set_system(universe: u32, sets: usize, rng: &mut impl Rng) -> Vec<Vec<u32>> {
    (0..sets)
        .map(|_| (0..universe).filter(|_| rng.gen_bool(0.5)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::exact_alpha;
    use crate::caps::Caps;
    use crate::exact::{rat, rat_int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    fn degree_multiset(h: &Hypergraph) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for d in h.degrees() {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn tower_smallest() {
        let h = bipartite_tower(1).unwrap();
        assert_eq!((h.n(), h.m()), (2, 1));
        assert_eq!(h.edge(0), &[0, 1]);
    }

    #[test]
    fn tower_three_levels() {
        let h = bipartite_tower(3).unwrap();
        assert_eq!((h.k(), h.n(), h.m()), (2, 14, 21));
        let degs = degree_multiset(&h);
        assert_eq!(degs, BTreeMap::from([(1, 2), (2, 4), (4, 8)]));
        assert_eq!(h.average_degree(), rat_int(3));
    }

    #[test]
    fn tower_four_levels() {
        let h = bipartite_tower(4).unwrap();
        assert_eq!(h.n(), 30);
        assert_eq!(h.average_degree(), rat(17, 3));
    }

    #[test]
    fn tower_rejects_bad_levels() {
        assert!(bipartite_tower(0).is_err());
        assert!(bipartite_tower(16).is_err());
    }

    #[test]
    fn unit_zero_is_a_single_edge() {
        let h = i_unit(3, 0).unwrap();
        assert_eq!((h.k(), h.n(), h.m()), (3, 3, 1));
        assert_eq!(h.edge(0), &[0, 1, 2]);
    }

    #[test]
    fn unit_one_is_the_rook_lines() {
        let h = i_unit(3, 1).unwrap();
        assert_eq!((h.k(), h.n(), h.m()), (3, 9, 6));
        assert!(h.degrees().iter().all(|&d| d == 2));
        assert!(h.is_linear());
        // frozen from exhaustive search: a maximum independent set avoids
        // one full line in each direction, e.g. {0,1,3,5,7,8}
        assert_eq!(exact_alpha(&h, &Caps::default()).unwrap(), 6);
    }

    #[test]
    fn unit_two_statistics() {
        let h = i_unit(2, 2).unwrap();
        assert_eq!((h.k(), h.n(), h.m()), (2, 16, 32));
        assert!(h.degrees().iter().all(|&d| d == 4));
        let h3 = i_unit(3, 2).unwrap();
        assert_eq!((h3.k(), h3.n(), h3.m()), (3, 81, 4 * 27));
        assert!(h3.degrees().iter().all(|&d| d == 4));
        assert!(h3.is_linear());
    }

    #[test]
    fn unit_rejects_k_below_two() {
        assert!(i_unit(1, 1).is_err());
    }

    #[test]
    fn family_h_frozen_sizes() {
        let h = family_h(1, 3, 1).unwrap();
        assert_eq!((h.k(), h.n(), h.m()), (3, 9, 3));
        let h = family_h(2, 3, 1).unwrap();
        assert_eq!((h.k(), h.n(), h.m()), (3, 162, 81));
        assert!(h.is_linear());
    }

    #[test]
    fn family_h_weight_scales_copies() {
        let h1 = family_h(1, 2, 1).unwrap(); // mass 4: 2 copies of a 2-edge
        assert_eq!((h1.n(), h1.m()), (4, 2));
        let h2 = family_h(1, 2, 3).unwrap(); // mass 12: 6 copies
        assert_eq!((h2.n(), h2.m()), (12, 6));
    }

    #[test]
    fn pendant_bipartite_shape() {
        let h = pendant_bipartite(9).unwrap();
        assert_eq!((h.k(), h.n(), h.m()), (2, 9, 12));
        assert_eq!(h.average_degree(), rat(8, 3));
        let degs = degree_multiset(&h);
        assert_eq!(degs, BTreeMap::from([(1, 3), (3, 3), (4, 3)]));
        assert!(pendant_bipartite(10).is_err());
        assert!(pendant_bipartite(0).is_err());
    }

    #[test]
    fn disjoint_union_shifts_ids() {
        let a = Hypergraph::new(2, 2, vec![vec![0, 1]]).unwrap();
        let b = Hypergraph::new(2, 3, vec![vec![0, 2]]).unwrap();
        let u = disjoint_union(&[a.clone(), b]).unwrap();
        assert_eq!((u.n(), u.m()), (5, 2));
        assert_eq!(u.edge(1), &[2, 4]);
        let c = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert!(disjoint_union(&[a, c]).is_err());
    }

    #[test]
    fn family_spec_parsing() {
        assert_eq!(
            FamilySpec::parse("bipartite-tower", Some(4), None, None, None).unwrap(),
            FamilySpec::BipartiteTower { levels: 4 }
        );
        assert_eq!(
            FamilySpec::parse("i-unit", None, Some(3), Some(1), None).unwrap(),
            FamilySpec::IUnit { k: 3, i: 1 }
        );
        assert_eq!(
            FamilySpec::parse("family-h", Some(2), Some(3), None, Some(1)).unwrap(),
            FamilySpec::FamilyH {
                levels: 2,
                k: 3,
                w: 1
            }
        );
        assert!(FamilySpec::parse("i-unit", Some(1), Some(3), Some(1), None).is_err());
        assert!(FamilySpec::parse("bipartite-tower", None, None, None, None).is_err());
        assert!(FamilySpec::parse("mystery", Some(1), None, None, None).is_err());
        let h = FamilySpec::parse("pendant-bipartite", Some(9), None, None, None)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(h.n(), 9);
    }

    #[test]
    fn random_hypergraph_has_requested_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let h = random_hypergraph(10, 3, 12, &mut rng).unwrap();
        assert_eq!((h.k(), h.n(), h.m()), (3, 10, 12));
        let mut rng2 = ChaCha8Rng::seed_from_u64(42);
        let h2 = random_hypergraph(10, 3, 12, &mut rng2).unwrap();
        assert_eq!(h, h2);
        assert!(random_hypergraph(4, 2, 7, &mut rng).is_err()); // only 6 exist
    }

    #[test]
    fn random_linear_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let h = random_linear_hypergraph(15, 3, 40, &mut rng).unwrap();
            assert!(h.is_linear());
            assert!(h.m() > 0);
        }
    }

    #[test]
    fn random_set_system_respects_universe() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sets = random_set_system(6, 10, &mut rng);
        assert_eq!(sets.len(), 10);
        assert!(sets.iter().flatten().all(|&x| x < 6));
    }
}
