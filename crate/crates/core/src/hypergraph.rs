//! The r-uniform hypergraph model and its combinatorial operations.
//!
//! Vertices are dense ids `0..vertex_count`. Edges are strictly increasing
//! vertex lists, and the edge list itself is kept in lexicographic order
//! without duplicates, so two hypergraphs with the same edge set compare
//! equal and serialize identically.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strictly increasing list of vertex ids.
pub type Edge = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    rank: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
}

/// A connected component under the "share an edge" relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edge_count: usize,
}

impl Component {
    /// A single isolated vertex.
    pub fn is_trivial(&self) -> bool {
        self.edge_count == 0
    }
}

impl Hypergraph {
    /// Builds a normalized hypergraph and reports how many duplicate edges
    /// were collapsed.
    ///
    /// Rank 1 is accepted so that shadows of graphs stay representable; the
    /// spectral routines require rank >= 2.
    pub fn build<I, E>(rank: usize, vertex_count: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if rank == 0 {
            return Err(Error::InvalidRank(rank));
        }
        let mut normalized = Vec::new();
        for edge in edges {
            let edge = edge.as_ref();
            if edge.len() != rank {
                return Err(Error::WrongEdgeSize {
                    edge: edge.to_vec(),
                    rank,
                    found: edge.len(),
                });
            }
            if let Some(&vertex) = edge.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange {
                    vertex,
                    vertex_count,
                });
            }
            let mut sorted = edge.to_vec();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertexInEdge {
                    edge: edge.to_vec(),
                });
            }
            normalized.push(sorted);
        }
        let listed = normalized.len();
        normalized.sort_unstable();
        normalized.dedup();
        let duplicates = listed - normalized.len();
        Ok((
            Self {
                rank,
                vertex_count,
                edges: normalized,
            },
            duplicates,
        ))
    }

    /// Like [`Hypergraph::build`], silently dropping duplicates.
    pub fn new<I, E>(rank: usize, vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        Self::build(rank, vertex_count, edges).map(|(h, _)| h)
    }

    pub fn empty(rank: usize, vertex_count: usize) -> Self {
        Self {
            rank,
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Every `rank`-subset of `k` vertices.
    pub fn complete(k: usize, rank: usize) -> Result<Self> {
        if rank < 2 || k < rank {
            return Err(Error::InvalidParameters(format!(
                "complete hypergraph needs k >= rank >= 2 (k = {k}, rank = {rank})"
            )));
        }
        Ok(Self {
            rank,
            vertex_count: k,
            edges: k_subsets(k, rank),
        })
    }

    // Edges are produced already sorted and unique.
    pub(crate) fn from_sorted_unchecked(rank: usize, vertex_count: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Self {
            rank,
            vertex_count,
            edges,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Position of `edge` in the lexicographic edge list. The query need
    /// not be sorted.
    pub fn edge_index(&self, edge: &[usize]) -> Option<usize> {
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        self.edges.binary_search(&sorted).ok()
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        self.edge_index(edge).is_some()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Vertices that share at least one edge with `v`, ascending.
    pub fn neighbors(&self, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        let set: BTreeSet<usize> = self
            .edges
            .iter()
            .filter(|e| e.binary_search(&v).is_ok())
            .flatten()
            .copied()
            .filter(|&u| u != v)
            .collect();
        Ok(set.into_iter().collect())
    }

    /// Vertices lying in at least one edge.
    pub fn covered_vertices(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(v, _)| v)
            .collect()
    }

    /// The (r-1)-uniform link of `v`: all `S` with `S ∪ {v}` an edge.
    pub fn link_graph(&self, v: usize) -> Result<Self> {
        if self.rank < 3 {
            return Err(Error::RankTooSmall(self.rank));
        }
        self.link_family(v)
    }

    /// Link without the rank restriction; for graphs this is the 1-uniform
    /// family of neighbors.
    pub(crate) fn link_family(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        if self.rank < 2 {
            return Err(Error::InvalidRank(self.rank));
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| e.binary_search(&v).is_ok())
            .map(|e| e.iter().copied().filter(|&u| u != v).collect())
            .collect();
        edges.sort_unstable();
        Ok(Self::from_sorted_unchecked(self.rank - 1, self.vertex_count, edges))
    }

    /// Drops every edge through `v`. The id `v` survives as an isolated
    /// vertex.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let edges = self
            .edges
            .iter()
            .filter(|e| e.binary_search(&v).is_err())
            .cloned()
            .collect();
        Ok(Self::from_sorted_unchecked(self.rank, self.vertex_count, edges))
    }

    /// `{ e \ {v} : e ∈ E, v ∈ e }`, deduplicated.
    pub fn shadow(&self) -> Result<Self> {
        if self.rank < 2 {
            return Err(Error::InvalidRank(self.rank));
        }
        let set: BTreeSet<Edge> = self
            .edges
            .iter()
            .flat_map(|e| {
                (0..e.len()).map(move |skip| {
                    e.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &u)| u)
                        .collect::<Edge>()
                })
            })
            .collect();
        Ok(Self::from_sorted_unchecked(
            self.rank - 1,
            self.vertex_count,
            set.into_iter().collect(),
        ))
    }

    /// Partition of the vertex set; isolated vertices form trivial
    /// singleton components. Components are ordered by their least vertex.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            for w in e.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut slot = vec![usize::MAX; self.vertex_count];
        let mut comps: Vec<Component> = Vec::new();
        for v in 0..self.vertex_count {
            let root = uf.find(v);
            if slot[root] == usize::MAX {
                slot[root] = comps.len();
                comps.push(Component {
                    vertices: Vec::new(),
                    edge_count: 0,
                });
            }
            comps[slot[root]].vertices.push(v);
        }
        for e in &self.edges {
            comps[slot[uf.find(e[0])]].edge_count += 1;
        }
        comps
    }

    pub fn non_trivial_components(&self) -> Vec<Component> {
        self.connected_components()
            .into_iter()
            .filter(|c| !c.is_trivial())
            .collect()
    }

    /// Exactly one non-trivial component; isolated vertices are ignored.
    pub fn is_connected(&self) -> bool {
        self.non_trivial_components().len() == 1
    }

    /// The edges lying inside `vertices`, on the same id space.
    pub fn restrict_to(&self, vertices: &[usize]) -> Self {
        let mut keep = vec![false; self.vertex_count];
        for &v in vertices {
            if v < self.vertex_count {
                keep[v] = true;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&u| keep[u]))
            .cloned()
            .collect();
        Self::from_sorted_unchecked(self.rank, self.vertex_count, edges)
    }

    /// Removes isolated vertices. Returns the compacted hypergraph and, for
    /// each new id, the original id.
    pub fn compact(&self) -> (Self, Vec<usize>) {
        let old_ids = self.covered_vertices();
        let mut new_id = vec![usize::MAX; self.vertex_count];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        // the map is monotone, so lexicographic order is preserved
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&u| new_id[u]).collect())
            .collect();
        (
            Self::from_sorted_unchecked(self.rank, old_ids.len(), edges),
            old_ids,
        )
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.vertex_count {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidParameters(
                    "relabeling is not a permutation".into(),
                ));
            }
            seen[p] = true;
        }
        Self::new(
            self.rank,
            self.vertex_count,
            self.edges
                .iter()
                .map(|e| e.iter().map(|&u| perm[u]).collect::<Edge>()),
        )
    }

    /// Same edges on a larger id space.
    pub fn with_vertex_count(&self, vertex_count: usize) -> Result<Self> {
        if let Some(&v) = self.edges.iter().flatten().max() {
            if v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count,
                });
            }
        }
        Ok(Self::from_sorted_unchecked(
            self.rank,
            vertex_count,
            self.edges.clone(),
        ))
    }

    pub fn is_subgraph_of(&self, other: &Self) -> bool {
        self.rank == other.rank && self.edges.iter().all(|e| other.edges.binary_search(e).is_ok())
    }

    /// `Some(k)` when the edges form exactly `K_k^r` on some vertex subset,
    /// with everything else isolated.
    pub fn complete_order(&self) -> Option<usize> {
        let covered = self.covered_vertices();
        let k = covered.len();
        if k < self.rank || (binomial(k as u64, self.rank as u64) as usize) != self.edges.len() {
            return None;
        }
        // e distinct r-subsets of a k-set with e = C(k, r) are all of them
        Some(k)
    }

    /// Replaces each listed edge `e_i` by `e_i \ {from_i} ∪ {to}`.
    pub fn move_edges(&self, moves: &[(Edge, usize)], to: usize) -> Result<Self> {
        self.check_vertex(to)?;
        let mut moved = vec![false; self.edges.len()];
        let mut replacements = Vec::with_capacity(moves.len());
        for (edge, from) in moves {
            let idx = self
                .edge_index(edge)
                .ok_or_else(|| Error::EdgeNotFound(edge.clone()))?;
            let current = &self.edges[idx];
            if current.binary_search(from).is_err() {
                return Err(Error::VertexNotInEdge {
                    vertex: *from,
                    edge: current.clone(),
                });
            }
            if current.binary_search(&to).is_ok() {
                return Err(Error::TargetAlreadyInEdge {
                    vertex: to,
                    edge: current.clone(),
                });
            }
            if moved[idx] {
                return Err(Error::InvalidParameters(format!(
                    "edge {current:?} listed twice"
                )));
            }
            moved[idx] = true;
            let mut next: Edge = current.iter().copied().filter(|u| u != from).collect();
            next.push(to);
            next.sort_unstable();
            replacements.push(next);
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .zip(&moved)
            .filter(|(_, &m)| !m)
            .map(|(e, _)| e.clone())
            .collect();
        let mut seen: BTreeSet<Edge> = edges.iter().cloned().collect();
        for r in replacements {
            if !seen.insert(r.clone()) {
                return Err(Error::WouldCreateMultipleEdge(r));
            }
            edges.push(r);
        }
        edges.sort_unstable();
        Ok(Self::from_sorted_unchecked(self.rank, self.vertex_count, edges))
    }

    /// Parses the edge-list format: a `rank vertex_count` header, then one
    /// edge per line. `#` starts a comment. Returns the hypergraph and the
    /// number of duplicate edges collapsed.
    pub fn parse_edge_list(text: &str) -> Result<(Self, usize)> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("expected a non-negative integer, found `{tok}`"),
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "header must be `rank vertex_count`".into(),
                        });
                    }
                    header = Some((fields[0], fields[1]));
                }
                Some((rank, _)) => {
                    if fields.len() != rank {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("expected {rank} vertices, found {}", fields.len()),
                        });
                    }
                    edges.push(fields);
                }
            }
        }
        let (rank, n) = header.ok_or(Error::Parse {
            line: 0,
            message: "missing `rank vertex_count` header".into(),
        })?;
        Self::build(rank, n, edges)
    }

    /// Canonical edge-list text: header, then edges in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.rank, self.vertex_count);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_edge_list(s).map(|(h, _)| h)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Exact binomial coefficient; saturates at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so component labels are stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
