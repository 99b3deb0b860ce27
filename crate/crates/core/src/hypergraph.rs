//! k-uniform hypergraphs and the basic structural operations on them.
//!
//! Edges are stored flat (`k` sorted vertex ids per edge, one contiguous
//! buffer) so that the larger generated instances stay affordable; the
//! biggest construction in the test suite has close to nine hundred million
//! edge slots.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::exact::Rat;

/// A k-uniform hypergraph on vertex set `0..n`.
///
/// Invariants held by every constructed value: each edge has exactly `k`
/// distinct vertices in range, edges are stored sorted ascending, and no two
/// edges are equal. `k = 1` is permitted (it arises as the link of a graph);
/// the file format below only accepts `k >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<u32>,
}

/// Degrees of every vertex together with the exact average degree `k*m/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    pub degrees: Vec<usize>,
    pub average: Rat,
}

/// The link of a vertex: the (k-1)-uniform hypergraph induced by deleting
/// the center from every edge through it.
///
/// The host hypergraph lives on the remapped neighbor set `0..vertices.len()`;
/// `vertices[i]` is the original id of host vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pub center: u32,
    pub vertices: Vec<u32>,
    pub host: Hypergraph,
}

impl Hypergraph {
    /// Builds a hypergraph after validating every invariant. Edges may be
    /// given in any vertex order; they are sorted internally.
    pub fn new(k: usize, n: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("uniformity k must be at least 1"));
        }
        if n == 0 {
            return Err(Error::invalid("vertex count n must be at least 1"));
        }
        if n > u32::MAX as usize {
            return Err(Error::invalid("vertex count exceeds u32 range"));
        }
        let mut flat = Vec::with_capacity(edges.len() * k);
        for (i, edge) in edges.iter().enumerate() {
            if edge.len() != k {
                return Err(Error::invalid(format!(
                    "edge {i} has {} vertices, expected {k}",
                    edge.len()
                )));
            }
            let mut sorted = edge.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::invalid(format!(
                        "edge {i} repeats vertex {}",
                        w[0]
                    )));
                }
            }
            if let Some(&v) = sorted.last() {
                if v as usize >= n {
                    return Err(Error::invalid(format!(
                        "edge {i} uses vertex {v}, out of range for n = {n}"
                    )));
                }
            }
            flat.extend_from_slice(&sorted);
        }
        let h = Hypergraph { k, n, edges: flat };
        if let Some((a, b)) = h.find_duplicate_edge() {
            return Err(Error::invalid(format!("edges {a} and {b} are identical")));
        }
        Ok(h)
    }

    /// Builds from edges with arbitrary non-negative integer labels, remapping
    /// them onto `0..n` densely. Returns the hypergraph together with the
    /// sorted label table (`table[new_id] = original label`). Isolated
    /// vertices cannot be expressed this way; use [`Hypergraph::new`] if you
    /// need them.
    pub fn from_labeled_edges(k: usize, edges: &[Vec<u64>]) -> Result<(Self, Vec<u64>)> {
        let mut labels: Vec<u64> = edges.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.is_empty() {
            return Err(Error::invalid(
                "labeled edge list is empty; vertex count would be zero",
            ));
        }
        let remapped = edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|v| labels.binary_search(v).unwrap() as u32)
                    .collect()
            })
            .collect();
        Ok((Hypergraph::new(k, labels.len(), remapped)?, labels))
    }

    /// Trusted constructor for generators whose output is valid by
    /// construction. Debug builds still verify the invariants.
    pub(crate) fn from_parts_unchecked(k: usize, n: usize, flat_edges: Vec<u32>) -> Self {
        debug_assert!(k >= 1 && n >= 1);
        debug_assert_eq!(flat_edges.len() % k, 0);
        let h = Hypergraph { k, n, edges: flat_edges };
        // re-verify the invariants in debug builds, except on instances so
        // large that the check would dominate the run
        #[cfg(debug_assertions)]
        if h.m() <= 100_000 {
            assert!(h.edges().all(|e| {
                e.windows(2).all(|w| w[0] < w[1])
                    && e.last().map_or(true, |&v| (v as usize) < n)
            }));
            assert!(h.find_duplicate_edge().is_none());
        }
        h
    }

    fn find_duplicate_edge(&self) -> Option<(usize, usize)> {
        let mut seen: HashSet<&[u32]> = HashSet::with_capacity(self.m());
        for (i, e) in self.edges().enumerate() {
            if !seen.insert(e) {
                let first = self.edges().position(|f| f == e).unwrap();
                return Some((first, i));
            }
        }
        None
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len() / self.k
    }

    /// The co-degree parameter `t = k - 1`.
    pub fn t(&self) -> usize {
        self.k - 1
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        &self.edges[i * self.k..(i + 1) * self.k]
    }

    pub fn edges(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.edges.chunks_exact(self.k)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &v in &self.edges {
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence {
            degrees: self.degrees(),
            average: self.average_degree(),
        }
    }

    /// Exact average degree `k * m / n`.
    pub fn average_degree(&self) -> Rat {
        Rat::new(
            num::BigInt::from(self.k) * num::BigInt::from(self.m()),
            num::BigInt::from(self.n),
        )
    }

    /// Whether `set` contains no edge entirely. Duplicate ids in `set` are
    /// harmless; out-of-range ids are an error.
    pub fn is_independent(&self, set: &[u32]) -> Result<bool> {
        let mut chosen = vec![false; self.n];
        for &v in set {
            if v as usize >= self.n {
                return Err(Error::invalid(format!(
                    "vertex {v} out of range for n = {}",
                    self.n
                )));
            }
            chosen[v as usize] = true;
        }
        Ok(self
            .edges()
            .all(|e| !e.iter().all(|&v| chosen[v as usize])))
    }

    /// Whether every pair of distinct edges meets in at most one vertex.
    /// For `k <= 2` this is automatic (duplicate edges are excluded by
    /// construction).
    pub fn is_linear(&self) -> bool {
        if self.k <= 2 {
            return true;
        }
        let mut seen_pairs: HashSet<(u32, u32)> = HashSet::new();
        for e in self.edges() {
            for i in 0..e.len() {
                for j in (i + 1)..e.len() {
                    if !seen_pairs.insert((e[i], e[j])) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The link of `v`: every edge through `v` with `v` removed, as a
    /// (k-1)-uniform hypergraph over the neighbors of `v`.
    pub fn link_graph(&self, v: u32) -> Result<LinkGraph> {
        if self.k < 2 {
            return Err(Error::invalid("link requires uniformity k >= 2"));
        }
        if v as usize >= self.n {
            return Err(Error::invalid(format!(
                "vertex {v} out of range for n = {}",
                self.n
            )));
        }
        let incident: Vec<&[u32]> = self.edges().filter(|e| e.contains(&v)).collect();
        if incident.is_empty() {
            return Err(Error::EmptyLink(v));
        }
        let mut vertices: Vec<u32> = incident
            .iter()
            .flat_map(|e| e.iter().copied())
            .filter(|&u| u != v)
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut flat = Vec::with_capacity(incident.len() * (self.k - 1));
        for e in &incident {
            for &u in e.iter().filter(|&&u| u != v) {
                flat.push(vertices.binary_search(&u).unwrap() as u32);
            }
        }
        Ok(LinkGraph {
            center: v,
            vertices: vertices.clone(),
            host: Hypergraph::from_parts_unchecked(self.k - 1, vertices.len(), flat),
        })
    }

    /// The sub-hypergraph induced on `set`: edges lying entirely inside it,
    /// remapped to dense ids. Returns the mapping (`map[new_id] = old_id`).
    pub fn induced(&self, set: &[u32]) -> Result<(Hypergraph, Vec<u32>)> {
        let mut map: Vec<u32> = set.to_vec();
        map.sort_unstable();
        map.dedup();
        if map.is_empty() {
            return Err(Error::invalid("induced sub-hypergraph needs a vertex"));
        }
        if let Some(&v) = map.last() {
            if v as usize >= self.n {
                return Err(Error::invalid(format!(
                    "vertex {v} out of range for n = {}",
                    self.n
                )));
            }
        }
        let mut inside = vec![false; self.n];
        for &v in &map {
            inside[v as usize] = true;
        }
        let mut flat = Vec::new();
        for e in self.edges() {
            if e.iter().all(|&v| inside[v as usize]) {
                for &v in e {
                    flat.push(map.binary_search(&v).unwrap() as u32);
                }
            }
        }
        Ok((
            Hypergraph::from_parts_unchecked(self.k, map.len(), flat),
            map,
        ))
    }

    /// Reads the plain-text edge-list format:
    ///
    /// ```text
    /// # optional comments
    /// k n m
    /// v1 v2 ... vk      (m lines, 0-based vertex ids)
    /// ```
    ///
    /// `#` starts a comment anywhere on a line. Files must have `k >= 2` and
    /// all ids in `0..n`.
    pub fn load_hg(reader: impl BufRead) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut edges: Vec<Vec<u32>> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let content = match line.split_once('#') {
                Some((before, _)) => before,
                None => line.as_str(),
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            let parse = |tok: &str, what: &str| -> Result<usize> {
                tok.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("{what} `{tok}` is not a non-negative integer"),
                })
            };
            match header {
                None => {
                    if tokens.len() != 3 {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!(
                                "header needs exactly `k n m`, found {} fields",
                                tokens.len()
                            ),
                        });
                    }
                    let k = parse(tokens[0], "k")?;
                    let n = parse(tokens[1], "n")?;
                    let m = parse(tokens[2], "m")?;
                    if k < 2 {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("file uniformity k = {k} must be at least 2"),
                        });
                    }
                    header = Some((k, n, m));
                }
                Some((k, n, m)) => {
                    if edges.len() == m {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("more than the declared {m} edges"),
                        });
                    }
                    if tokens.len() != k {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("edge has {} vertices, expected {k}", tokens.len()),
                        });
                    }
                    let mut edge = Vec::with_capacity(k);
                    for tok in tokens {
                        let v = parse(tok, "vertex id")?;
                        if v >= n {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: format!("vertex id {v} out of range for n = {n}"),
                            });
                        }
                        edge.push(v as u32);
                    }
                    edges.push(edge);
                }
            }
        }
        let (k, n, m) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing `k n m` header".into(),
        })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("declared {m} edges but found {}", edges.len()),
            });
        }
        Hypergraph::new(k, n, edges)
    }

    /// Writes the same format (edges sorted as stored, ids space-separated).
    pub fn write_hg(&self, mut writer: impl Write) -> Result<()> {
        writeln!(writer, "{} {} {}", self.k, self.n, self.m())?;
        for e in self.edges() {
            let row: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            writeln!(writer, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use std::io::Cursor;

    fn triangle() -> Hypergraph {
        Hypergraph::new(2, 3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn single_3edge() -> Hypergraph {
        Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(Hypergraph::new(0, 3, vec![]).is_err());
        assert!(Hypergraph::new(2, 0, vec![]).is_err());
        assert!(Hypergraph::new(2, 3, vec![vec![0]]).is_err());
        assert!(Hypergraph::new(2, 3, vec![vec![0, 0]]).is_err());
        assert!(Hypergraph::new(2, 3, vec![vec![0, 3]]).is_err());
        assert!(Hypergraph::new(2, 3, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(Hypergraph::new(2, 3, vec![vec![1, 0]]).is_ok());
    }

    #[test]
    fn basic_accessors() {
        let h = triangle();
        assert_eq!((h.k(), h.n(), h.m(), h.t()), (2, 3, 3, 1));
        assert_eq!(h.degrees(), vec![2, 2, 2]);
        assert_eq!(h.average_degree(), rat_int(2));
        let ds = h.degree_sequence();
        assert_eq!(ds.degrees.iter().sum::<usize>(), h.k() * h.m());
    }

    #[test]
    fn average_degree_is_exact() {
        let h = Hypergraph::new(3, 7, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert_eq!(h.average_degree(), rat(6, 7));
    }

    #[test]
    fn independence_on_triangle() {
        let h = triangle();
        assert!(!h.is_independent(&[0, 1]).unwrap());
        assert!(h.is_independent(&[0]).unwrap());
        assert!(h.is_independent(&[]).unwrap());
        assert!(h.is_independent(&[0, 0]).unwrap());
        assert!(h.is_independent(&[5]).is_err());
    }

    #[test]
    fn independence_needs_whole_edge_for_k3() {
        let h = single_3edge();
        assert!(h.is_independent(&[0, 1]).unwrap());
        assert!(!h.is_independent(&[0, 1, 2]).unwrap());
    }

    #[test]
    fn linearity() {
        assert!(triangle().is_linear());
        let shares_two = Hypergraph::new(
            3,
            4,
            vec![vec![0, 1, 2], vec![0, 1, 3]],
        )
        .unwrap();
        assert!(!shares_two.is_linear());
        let shares_one = Hypergraph::new(
            3,
            5,
            vec![vec![0, 1, 2], vec![0, 3, 4]],
        )
        .unwrap();
        assert!(shares_one.is_linear());
    }

    #[test]
    fn link_of_graph_star_center() {
        let h = Hypergraph::new(2, 3, vec![vec![0, 1], vec![0, 2]]).unwrap();
        let link = h.link_graph(0).unwrap();
        assert_eq!(link.center, 0);
        assert_eq!(link.vertices, vec![1, 2]);
        assert_eq!(link.host.k(), 1);
        assert_eq!(link.host.m(), 2);
        // every link edge is an original edge minus the center
        let back: Vec<Vec<u32>> = link
            .host
            .edges()
            .map(|e| {
                let mut orig: Vec<u32> =
                    e.iter().map(|&u| link.vertices[u as usize]).collect();
                orig.push(link.center);
                orig.sort_unstable();
                orig
            })
            .collect();
        for e in &back {
            assert!(h.edges().any(|f| f == e.as_slice()));
        }
    }

    #[test]
    fn link_edge_count_equals_degree_and_vertex_count_for_linear() {
        // two triples through vertex 0 sharing only vertex 0
        let h = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![0, 3, 4]]).unwrap();
        let link = h.link_graph(0).unwrap();
        assert_eq!(link.host.m(), 2);
        // linear host: t * d distinct neighbors
        assert_eq!(link.vertices.len(), h.t() * 2);
    }

    #[test]
    fn link_errors() {
        let h = Hypergraph::new(2, 3, vec![vec![0, 1]]).unwrap();
        assert!(matches!(h.link_graph(2), Err(Error::EmptyLink(2))));
        assert!(h.link_graph(9).is_err());
    }

    #[test]
    fn induced_subgraph() {
        let h = triangle();
        let (sub, map) = h.induced(&[0, 2]).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.m(), 1);
        assert_eq!(map, vec![0, 2]);
        assert_eq!(sub.edge(0), &[0, 1]);
    }

    #[test]
    fn labeled_edges_are_remapped() {
        let (h, table) =
            Hypergraph::from_labeled_edges(2, &[vec![10, 40], vec![40, 7]]).unwrap();
        assert_eq!(table, vec![7, 10, 40]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 2);
        assert!(h.edges().any(|e| e == [1, 2]));
    }

    #[test]
    fn hg_round_trip() {
        let h = triangle();
        let mut buf = Vec::new();
        h.write_hg(&mut buf).unwrap();
        let parsed = Hypergraph::load_hg(Cursor::new(buf)).unwrap();
        assert_eq!(parsed, h);
    }

    #[test]
    fn hg_parses_comments_and_blank_lines() {
        let text = "# a triangle\n2 3 3\n0 1\n1 2 # last two\n\n0 2\n";
        let h = Hypergraph::load_hg(Cursor::new(text)).unwrap();
        assert_eq!(h, triangle());
    }

    #[test]
    fn hg_rejects_malformed_input() {
        let cases = [
            ("2 3\n", "short header"),
            ("1 3 1\n0\n", "k = 1 in file"),
            ("2 3 1\n0 5\n", "id out of range"),
            ("2 3 1\n0 1 2\n", "edge arity"),
            ("2 3 2\n0 1\n", "missing edge"),
            ("2 3 1\n0 1\n1 2\n", "extra edge"),
            ("2 3 1\nx 1\n", "non-numeric id"),
        ];
        for (text, what) in cases {
            assert!(
                Hypergraph::load_hg(Cursor::new(text)).is_err(),
                "{what} should fail"
            );
        }
    }

    #[test]
    fn hg_error_reports_line_number() {
        let err = Hypergraph::load_hg(Cursor::new("2 3 2\n0 1\n0 9\n")).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other}"),
        }
    }
}
