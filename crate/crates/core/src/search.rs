//! Exhaustive search over small r-uniform hypergraphs.
//!
//! Hypergraphs on at most [`MAX_VERTICES`] vertices are encoded as bitsets
//! over the lexicographically ordered `r`-subsets, which fit in a `u128`.
//! Isomorphism classes are identified by a canonical form: the
//! lexicographically least edge list over all relabelings that respect a
//! color-refinement partition of the vertices (degree first, then iterated
//! neighborhood colors). The partition is isomorphism invariant, so the
//! restricted minimum is still a complete invariant.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::fr_value;
use crate::error::{Error, Result};
use crate::hypergraph::{binomial, k_subsets, Edge, Hypergraph};
use crate::spectral::{spectral_radius, SolverOptions, SpectralSolution};

/// Bitset encoding needs `C(n, r) <= 128`.
pub const MAX_VERTICES: usize = 8;
pub const DEFAULT_CAP: u128 = 10_000_000;
/// `|ρ - f_r(e)|` below this counts as equality.
pub const EQUALITY_TOL: f64 = 1e-6;
/// `ρ - f_r(e)` above this is a violation of the bound.
pub const BOUND_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchSpace {
    pub rank: usize,
    pub edges: usize,
    pub max_vertices: usize,
    /// Keep only hypergraphs with a single non-trivial component.
    pub connected: bool,
    /// Refuse spaces with more raw edge subsets than this.
    pub cap: u128,
}

impl SearchSpace {
    pub fn new(rank: usize, edges: usize, max_vertices: usize) -> Self {
        Self {
            rank,
            edges,
            max_vertices,
            connected: true,
            cap: DEFAULT_CAP,
        }
    }

    pub fn with_connected(mut self, connected: bool) -> Self {
        self.connected = connected;
        self
    }

    /// Number of raw `edges`-subsets of the `rank`-subsets.
    pub fn candidate_count(&self) -> u128 {
        let slots = binomial(self.max_vertices as u64, self.rank as u64);
        binomial(slots as u64, self.edges as u64)
    }

    fn validate(&self) -> Result<()> {
        if self.rank < 2 {
            return Err(Error::InvalidRank(self.rank));
        }
        if self.max_vertices < self.rank || self.max_vertices > MAX_VERTICES {
            return Err(Error::InvalidParameters(format!(
                "need rank <= max_vertices <= {MAX_VERTICES}, got rank {} and {} vertices",
                self.rank, self.max_vertices
            )));
        }
        let count = self.candidate_count();
        if count > self.cap {
            return Err(Error::SpaceTooLarge {
                count,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Lookup tables for the `r`-subsets of `0..n`.
struct Universe {
    n: usize,
    rank: usize,
    masks: Vec<u16>,
    index_of: Vec<u8>,
}

impl Universe {
    fn new(n: usize, rank: usize) -> Self {
        let subsets = k_subsets(n, rank);
        let mut index_of = vec![u8::MAX; 1 << n];
        let masks: Vec<u16> = subsets
            .iter()
            .map(|s| s.iter().fold(0u16, |m, &v| m | (1 << v)))
            .collect();
        for (i, &m) in masks.iter().enumerate() {
            index_of[m as usize] = i as u8;
        }
        Self {
            n,
            rank,
            masks,
            index_of,
        }
    }

    fn slots(&self) -> usize {
        self.masks.len()
    }

    // Reversed bit order: edge 0 is the top bit, so a larger key is a
    // lexicographically smaller edge list.
    fn bit(&self, i: usize) -> u128 {
        1u128 << (127 - i)
    }

    fn key_of(&self, h: &Hypergraph) -> u128 {
        h.edges()
            .iter()
            .map(|e| {
                let m = e.iter().fold(0u16, |m, &v| m | (1 << v));
                self.bit(self.index_of[m as usize] as usize)
            })
            .fold(0, |k, b| k | b)
    }

    fn edge_indices(&self, key: u128) -> impl Iterator<Item = usize> + '_ {
        let mut rest = key;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let top = rest.leading_zeros() as usize;
            rest &= !(1u128 << (127 - top));
            Some(top)
        })
    }

    fn decode(&self, key: u128) -> Hypergraph {
        let edges: Vec<Edge> = self
            .edge_indices(key)
            .map(|i| (0..self.n).filter(|&v| self.masks[i] >> v & 1 == 1).collect())
            .collect();
        Hypergraph::from_sorted_unchecked(self.rank, self.n, edges)
    }

    fn is_connected(&self, key: u128) -> bool {
        let edges: Vec<u16> = self.edge_indices(key).map(|i| self.masks[i]).collect();
        let Some(&first) = edges.first() else {
            return false;
        };
        let mut reached = first;
        let mut absorbed = 1;
        let mut used = vec![false; edges.len()];
        used[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for (i, &m) in edges.iter().enumerate() {
                if !used[i] && m & reached != 0 {
                    used[i] = true;
                    reached |= m;
                    absorbed += 1;
                    changed = true;
                }
            }
        }
        absorbed == edges.len()
    }

    /// Iterated color refinement starting from degrees (high degree first).
    /// Returns vertex classes in invariant order.
    fn vertex_classes(&self, edges: &[u16]) -> Vec<Vec<usize>> {
        let n = self.n;
        let deg: Vec<usize> = (0..n)
            .map(|v| edges.iter().filter(|&&m| m >> v & 1 == 1).count())
            .collect();
        let max_deg = deg.iter().copied().max().unwrap_or(0);
        let mut color: Vec<usize> = deg.iter().map(|d| max_deg - d).collect();
        loop {
            let signatures: Vec<(usize, Vec<Vec<usize>>)> = (0..n)
                .map(|v| {
                    let mut around: Vec<Vec<usize>> = edges
                        .iter()
                        .filter(|&&m| m >> v & 1 == 1)
                        .map(|&m| {
                            let mut c: Vec<usize> = (0..n)
                                .filter(|&u| u != v && m >> u & 1 == 1)
                                .map(|u| color[u])
                                .collect();
                            c.sort_unstable();
                            c
                        })
                        .collect();
                    around.sort_unstable();
                    (color[v], around)
                })
                .collect();
            let distinct: Vec<_> = signatures
                .iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .cloned()
                .collect();
            let next: Vec<usize> = signatures
                .iter()
                .map(|s| distinct.binary_search(s).expect("present"))
                .collect();
            let before = color.iter().collect::<BTreeSet<_>>().len();
            color = next;
            if distinct.len() == before {
                break;
            }
        }
        let classes = color.iter().copied().max().map_or(0, |c| c + 1);
        let mut out = vec![Vec::new(); classes];
        for (v, &c) in color.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Largest key over all class-respecting relabelings.
    fn canonical_key(&self, key: u128) -> u128 {
        let edges: Vec<u16> = self.edge_indices(key).map(|i| self.masks[i]).collect();
        let classes = self.vertex_classes(&edges);
        // slot p of the relabeling is filled from the class owning label p
        let owner: Vec<usize> = classes
            .iter()
            .enumerate()
            .flat_map(|(c, vs)| std::iter::repeat_n(c, vs.len()))
            .collect();
        let mut perm = vec![0usize; self.n];
        let mut used = vec![false; self.n];
        let mut best = 0u128;
        self.relabel_search(&edges, &classes, &owner, 0, &mut perm, &mut used, &mut best);
        best
    }

    #[allow(clippy::too_many_arguments)]
    fn relabel_search(
        &self,
        edges: &[u16],
        classes: &[Vec<usize>],
        owner: &[usize],
        label: usize,
        perm: &mut [usize],
        used: &mut [bool],
        best: &mut u128,
    ) {
        if label == self.n {
            let key = edges
                .iter()
                .map(|&m| {
                    let mapped = (0..self.n)
                        .filter(|&v| m >> v & 1 == 1)
                        .fold(0u16, |acc, v| acc | (1 << perm[v]));
                    self.bit(self.index_of[mapped as usize] as usize)
                })
                .fold(0, |k, b| k | b);
            *best = (*best).max(key);
            return;
        }
        for &v in &classes[owner[label]] {
            if !used[v] {
                used[v] = true;
                perm[v] = label;
                self.relabel_search(edges, classes, owner, label + 1, perm, used, best);
                used[v] = false;
            }
        }
    }
}

/// Canonical representative of the isomorphism class of `h`: the least
/// edge list (in lexicographic order) over class-respecting relabelings.
pub fn canonical_form(h: &Hypergraph) -> Result<Hypergraph> {
    let n = h.vertex_count();
    if n > MAX_VERTICES || h.rank() < 1 || h.rank() > n {
        return Err(Error::InvalidParameters(format!(
            "canonical forms need 1 <= rank <= vertex_count <= {MAX_VERTICES}"
        )));
    }
    let u = Universe::new(n, h.rank());
    Ok(u.decode(u.canonical_key(u.key_of(h))))
}

/// Calls `visit` with every `k`-subset of `lo..n` (as bitset keys) added to
/// `base`.
fn for_each_combination(u: &Universe, k: usize, lo: usize, base: u128, visit: &mut impl FnMut(u128)) {
    if k == 0 {
        visit(base);
        return;
    }
    for i in lo..=u.slots() - k {
        for_each_combination(u, k - 1, i + 1, base | u.bit(i), visit);
    }
}

fn class_keys(space: &SearchSpace) -> Result<(Universe, Vec<u128>)> {
    space.validate()?;
    let u = Universe::new(space.max_vertices, space.rank);
    let e = space.edges;
    if e == 0 || e > u.slots() {
        let keys = if e == 0 && !space.connected { vec![0] } else { Vec::new() };
        return Ok((u, keys));
    }
    // shard on the first (lexicographically least) edge
    let shards: Vec<BTreeSet<u128>> = (0..=u.slots() - e)
        .into_par_iter()
        .map(|first| {
            let mut seen = BTreeSet::new();
            for_each_combination(&u, e - 1, first + 1, u.bit(first), &mut |key| {
                if !space.connected || u.is_connected(key) {
                    seen.insert(u.canonical_key(key));
                }
            });
            seen
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in shards {
        all.extend(s);
    }
    // descending keys = ascending canonical edge lists
    Ok((u, all.into_iter().rev().collect()))
}

/// One canonical representative per isomorphism class in the space, in
/// increasing order of canonical edge list. Every representative lives on
/// `max_vertices` ids, unused ones isolated.
pub fn enumerate_hypergraphs(space: &SearchSpace) -> Result<Vec<Hypergraph>> {
    let (u, keys) = class_keys(space)?;
    Ok(keys.into_iter().map(|k| u.decode(k)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityClass {
    /// `ρ < f_r(e)`
    Strict,
    /// `ρ = f_r(e)` on a complete hypergraph plus isolated vertices.
    EqualityComplete,
    /// `ρ = f_r(e)` anywhere else.
    EqualityViolation,
    /// `ρ > f_r(e)`
    BoundViolation,
}

/// `ρ(H)` against `f_r(e)` for one hypergraph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub rank: usize,
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    pub e: usize,
    pub rho: f64,
    pub fr_e: f64,
    /// `f_r(e) - ρ`
    pub gap: f64,
    pub equality_class: EqualityClass,
}

impl BoundCertificate {
    pub fn new(h: &Hypergraph, sol: &SpectralSolution) -> Result<Self> {
        let e = h.edge_count();
        let fr_e = fr_value(h.rank(), e as f64)?;
        let gap = fr_e - sol.rho;
        let equality_class = if gap.abs() <= EQUALITY_TOL && h.complete_order().is_some() {
            EqualityClass::EqualityComplete
        } else if gap < -BOUND_TOL {
            EqualityClass::BoundViolation
        } else if gap.abs() <= EQUALITY_TOL {
            EqualityClass::EqualityViolation
        } else {
            EqualityClass::Strict
        };
        Ok(Self {
            rank: h.rank(),
            vertex_count: h.vertex_count(),
            edges: h.edges().to_vec(),
            e,
            rho: sol.rho,
            fr_e,
            gap,
            equality_class,
        })
    }

    pub fn is_violation(&self) -> bool {
        matches!(
            self.equality_class,
            EqualityClass::EqualityViolation | EqualityClass::BoundViolation
        )
    }
}

/// Smallest `k >= r` with `C(k, r) = e`, if any.
pub fn binomial_order(e: usize, rank: usize) -> Option<usize> {
    let mut k = rank;
    loop {
        let c = binomial(k as u64, rank as u64);
        if c == e as u128 {
            return Some(k);
        }
        if c > e as u128 {
            return None;
        }
        k += 1;
    }
}

/// One solved isomorphism class.
#[derive(Debug, Clone)]
pub struct SolvedClass {
    pub hypergraph: Hypergraph,
    pub solution: SpectralSolution,
    pub certificate: BoundCertificate,
}

fn solve_classes(space: &SearchSpace, opts: &SolverOptions) -> Result<Vec<SolvedClass>> {
    enumerate_hypergraphs(space)?
        .into_par_iter()
        .map(|h| {
            let solution = spectral_radius(&h, opts)?;
            let certificate = BoundCertificate::new(&h, &solution)?;
            Ok(SolvedClass {
                hypergraph: h,
                solution,
                certificate,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Maximizer {
    pub best: SolvedClass,
    /// Other classes within `1e-9` of the best radius.
    pub ties: Vec<Hypergraph>,
    pub classes: usize,
}

/// The class with the largest spectral radius in the space.
pub fn brute_force_max_rho(space: &SearchSpace, opts: &SolverOptions) -> Result<Maximizer> {
    let solved = solve_classes(space, opts)?;
    let classes = solved.len();
    let best_idx = solved
        .iter()
        .enumerate()
        .fold(None, |acc: Option<usize>, (i, c)| match acc {
            Some(b) if solved[b].solution.rho >= c.solution.rho => Some(b),
            _ => Some(i),
        })
        .ok_or(Error::InvalidParameters("search space has no hypergraphs".into()))?;
    let top = solved[best_idx].solution.rho;
    let ties = solved
        .iter()
        .enumerate()
        .filter(|&(i, c)| i != best_idx && (c.solution.rho - top).abs() <= 1e-9)
        .map(|(_, c)| c.hypergraph.clone())
        .collect();
    let best = solved.into_iter().nth(best_idx).expect("index in range");
    Ok(Maximizer {
        best,
        ties,
        classes,
    })
}

/// Certificates for every class, in canonical order, without judging them.
pub fn certify_space(space: &SearchSpace, opts: &SolverOptions) -> Result<Vec<BoundCertificate>> {
    Ok(solve_classes(space, opts)?
        .into_iter()
        .map(|c| c.certificate)
        .collect())
}

/// Certificates for every class; fails if any class meets or exceeds the
/// bound without being complete, or if a complete class that fits in the
/// space is missing from the equality set.
pub fn theorem1_audit(space: &SearchSpace, opts: &SolverOptions) -> Result<Vec<BoundCertificate>> {
    let certs = certify_space(space, opts)?;
    if let Some(bad) = certs.iter().find(|c| c.is_violation()) {
        return Err(Error::TheoremViolation(format!(
            "{:?} on edges {:?} (rho = {}, f_r(e) = {})",
            bad.equality_class, bad.edges, bad.rho, bad.fr_e
        )));
    }
    let equalities = certs
        .iter()
        .filter(|c| c.equality_class == EqualityClass::EqualityComplete)
        .count();
    let expected = match binomial_order(space.edges, space.rank) {
        Some(k) if k <= space.max_vertices => 1,
        _ => 0,
    };
    if equalities != expected {
        return Err(Error::TheoremViolation(format!(
            "expected {expected} equality classes, found {equalities}"
        )));
    }
    Ok(certs)
}

/// One accepted edge move.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftStep {
    pub edge: Edge,
    pub from: usize,
    pub to: usize,
    pub rho_before: f64,
    pub rho_after: f64,
    pub delta: f64,
    /// Legal moves that were solved before this one was accepted.
    pub legal_moves_tried: usize,
    /// Smallest `Δρ` among all solved legal moves, this one included.
    pub worst_delta: f64,
}

/// Legal moves whose measured gain falls below this are skipped as
/// numerically flat.
pub const SHIFT_DELTA_TOL: f64 = 1e-12;

/// Applies the first edge move that raises `ρ`.
///
/// Targets are scanned by decreasing Perron weight (ties by id), edges in
/// lexicographic order and source vertices ascending. A move of edge `f`
/// from `u` to `v` is legal when `x_v >= x_u`, `v ∉ f`, the moved edge is
/// new, and the result still has a single non-trivial component.
pub fn edge_shift_step(
    h: &Hypergraph,
    sol: &SpectralSolution,
    opts: &SolverOptions,
) -> Result<Option<(Hypergraph, SpectralSolution, ShiftStep)>> {
    if !h.is_connected() {
        return Err(Error::NotConnected(h.non_trivial_components().len()));
    }
    if !sol.converged {
        return Err(Error::NotConverged);
    }
    let x = &sol.perron;
    let scale = x.iter().copied().fold(0.0, f64::max);
    let mut targets: Vec<usize> = (0..h.vertex_count()).collect();
    targets.sort_by(|&a, &b| x[b].total_cmp(&x[a]).then(a.cmp(&b)));

    let mut tried = 0;
    let mut worst_delta = f64::INFINITY;
    for &v in &targets {
        for f in h.edges() {
            if f.binary_search(&v).is_ok() {
                continue;
            }
            for &u in f {
                if x[v] < x[u] - 1e-9 * scale {
                    continue;
                }
                let mut moved: Edge = f.iter().copied().filter(|&w| w != u).collect();
                moved.push(v);
                moved.sort_unstable();
                if h.contains_edge(&moved) {
                    continue;
                }
                let next = h.move_edges(&[(f.clone(), u)], v)?;
                if !next.is_connected() {
                    continue;
                }
                let next_sol = spectral_radius(&next, opts)?;
                let delta = next_sol.rho - sol.rho;
                tried += 1;
                worst_delta = worst_delta.min(delta);
                if delta > SHIFT_DELTA_TOL {
                    let step = ShiftStep {
                        edge: f.clone(),
                        from: u,
                        to: v,
                        rho_before: sol.rho,
                        rho_after: next_sol.rho,
                        delta,
                        legal_moves_tried: tried,
                        worst_delta,
                    };
                    return Ok(Some((next, next_sol, step)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct LocalSearch {
    pub result: Hypergraph,
    pub solution: SpectralSolution,
    /// `ρ` of the start followed by `ρ` after every accepted step.
    pub trace: Vec<f64>,
    pub steps: Vec<ShiftStep>,
    /// Stopped because no improving move remained.
    pub fixed_point: bool,
}

/// Repeats [`edge_shift_step`] until no move improves or `max_steps` is hit.
pub fn edge_shift_local_search(
    h: &Hypergraph,
    max_steps: usize,
    opts: &SolverOptions,
) -> Result<LocalSearch> {
    let mut current = h.clone();
    let mut sol = spectral_radius(&current, opts)?;
    let mut trace = vec![sol.rho];
    let mut steps = Vec::new();
    let mut fixed_point = false;
    while steps.len() < max_steps {
        match edge_shift_step(&current, &sol, opts)? {
            Some((next, next_sol, step)) => {
                trace.push(next_sol.rho);
                steps.push(step);
                current = next;
                sol = next_sol;
            }
            None => {
                fixed_point = true;
                break;
            }
        }
    }
    Ok(LocalSearch {
        result: current,
        solution: sol,
        trace,
        steps,
        fixed_point,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DominatingAudit {
    /// Some vertex shares an edge with every other non-isolated vertex.
    pub exists: bool,
    pub argmax: usize,
    pub argmax_dominates: bool,
}

fn dominates(h: &Hypergraph, v: usize) -> Result<bool> {
    let neighbors = h.neighbors(v)?;
    Ok(h
        .covered_vertices()
        .iter()
        .all(|&u| u == v || neighbors.binary_search(&u).is_ok()))
}

/// Checks for a vertex adjacent to all others, and whether the Perron
/// argmax is one.
pub fn audit_dominating_vertex(h: &Hypergraph, sol: &SpectralSolution) -> Result<DominatingAudit> {
    let argmax = sol.argmax();
    let mut exists = false;
    for v in h.covered_vertices() {
        if dominates(h, v)? {
            exists = true;
            break;
        }
    }
    Ok(DominatingAudit {
        exists,
        argmax,
        argmax_dominates: dominates(h, argmax)?,
    })
}

/// Structure at the Perron argmax `v` of a maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkLemmaReport {
    pub vertex: usize,
    pub degree: usize,
    pub fr_e: f64,
    /// `∂(H - v) ⊆ G_v`
    pub shadow_in_link: bool,
    /// `G_v` has a single non-trivial component (vacuous for graphs, whose
    /// links are sets of single vertices).
    pub link_connected: bool,
    /// `d(v) >= f_r(e)`
    pub degree_at_least_bound: bool,
}

impl LinkLemmaReport {
    pub fn all_hold(&self) -> bool {
        self.shadow_in_link && self.link_connected && self.degree_at_least_bound
    }
}

pub fn audit_link_lemma(h: &Hypergraph, sol: &SpectralSolution) -> Result<LinkLemmaReport> {
    let v = sol.argmax();
    let link = h.link_family(v)?;
    let base = h.delete_vertex(v)?;
    let degree = h.degree(v)?;
    let fr_e = fr_value(h.rank(), h.edge_count() as f64)?;
    Ok(LinkLemmaReport {
        vertex: v,
        degree,
        fr_e,
        shadow_in_link: base.shadow()?.is_subgraph_of(&link),
        link_connected: h.rank() == 2 || link.is_connected(),
        degree_at_least_bound: degree as f64 >= fr_e - 1e-9,
    })
}

/// `K_k` plus one extra vertex joined to `s` of its vertices, where
/// `e = C(k, 2) + s` and `0 <= s < k`.
pub fn brualdi_hoffman_graph(e: usize) -> Result<Hypergraph> {
    if e == 0 {
        return Err(Error::InvalidParameters("need at least one edge".into()));
    }
    let mut k = 2;
    while binomial(k as u64 + 1, 2) <= e as u128 {
        k += 1;
    }
    let s = e - binomial(k as u64, 2) as usize;
    let n = if s > 0 { k + 1 } else { k };
    let mut edges = k_subsets(k, 2);
    edges.extend((0..s).map(|i| vec![i, k]));
    Hypergraph::new(2, n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    #[test]
    fn class_counts() {
        let classes = enumerate_hypergraphs(&SearchSpace::new(3, 2, 5)).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(enumerate_hypergraphs(&SearchSpace::new(2, 3, 4)).unwrap().len(), 3);
        assert_eq!(enumerate_hypergraphs(&SearchSpace::new(3, 1, 3)).unwrap().len(), 1);
        // without the connectivity filter: two disjoint triples also appear
        let all = SearchSpace::new(3, 2, 6).with_connected(false);
        assert_eq!(enumerate_hypergraphs(&all).unwrap().len(), 3);
    }

    #[test]
    fn space_guard() {
        let mut big = SearchSpace::new(3, 20, 8);
        big.cap = 1000;
        assert!(matches!(
            enumerate_hypergraphs(&big),
            Err(Error::SpaceTooLarge { .. })
        ));
        assert!(matches!(
            enumerate_hypergraphs(&SearchSpace::new(3, 2, 9)),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn canonical_form_is_lexicographically_least() {
        // a loose path labelled badly
        let h = Hypergraph::new(3, 5, [[4, 3, 0], [0, 1, 2]]).unwrap();
        let c = canonical_form(&h).unwrap();
        assert_eq!(c.edges(), &[vec![0, 1, 2], vec![0, 3, 4]]);
    }

    #[test]
    fn maximizers() {
        let m = brute_force_max_rho(&SearchSpace::new(3, 4, 6), &opts()).unwrap();
        assert_eq!(m.best.hypergraph.complete_order(), Some(4));
        assert_abs_diff_eq!(m.best.solution.rho, 3.0, epsilon = 1e-8);
        assert_eq!(m.best.certificate.equality_class, EqualityClass::EqualityComplete);

        let m = brute_force_max_rho(&SearchSpace::new(2, 3, 5), &opts()).unwrap();
        assert_eq!(m.best.hypergraph.complete_order(), Some(3));
        assert_abs_diff_eq!(m.best.solution.rho, 2.0, epsilon = 1e-8);

        let m = brute_force_max_rho(&SearchSpace::new(3, 5, 6), &opts()).unwrap();
        assert_eq!(m.best.certificate.equality_class, EqualityClass::Strict);
        assert!(m.best.certificate.gap > 0.0);
    }

    #[test]
    fn shifting_two_triangles() {
        // two triangles glued at vertex 0
        let h = Hypergraph::new(2, 5, [[0, 1], [0, 2], [1, 2], [0, 3], [0, 4], [3, 4]]).unwrap();
        let sol = spectral_radius(&h, &opts()).unwrap();
        let (next, next_sol, step) = edge_shift_step(&h, &sol, &opts()).unwrap().unwrap();
        assert!(step.delta > 0.0);
        // vertex 0 already meets everything, so every move onto it is a duplicate
        assert_ne!(step.to, 0);
        assert!(next.contains_edge(&{
            let mut e: Vec<usize> = step.edge.iter().copied().filter(|&w| w != step.from).collect();
            e.push(step.to);
            e.sort_unstable();
            e
        }));
        assert!(next_sol.rho > sol.rho);
        assert_eq!(next.edge_count(), 6);
    }

    #[test]
    fn no_moves_on_complete_or_single() {
        for h in [Hypergraph::complete(4, 3).unwrap(), Hypergraph::complete(3, 3).unwrap()] {
            let sol = spectral_radius(&h, &opts()).unwrap();
            assert!(edge_shift_step(&h, &sol, &opts()).unwrap().is_none());
            let ls = edge_shift_local_search(&h, 10, &opts()).unwrap();
            assert!(ls.steps.is_empty() && ls.fixed_point);
        }
    }

    #[test]
    fn local_search_on_loose_path() {
        let path = Hypergraph::new(3, 9, [[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 8]]).unwrap();
        let ls = edge_shift_local_search(&path, 100, &opts()).unwrap();
        assert!(ls.fixed_point);
        assert!(ls.trace.windows(2).all(|w| w[1] - w[0] > -1e-10));
        assert!(*ls.trace.last().unwrap() >= ls.trace[0]);
    }

    #[test]
    fn structural_audits_on_complete() {
        let k43 = Hypergraph::complete(4, 3).unwrap();
        let sol = spectral_radius(&k43, &opts()).unwrap();
        let dom = audit_dominating_vertex(&k43, &sol).unwrap();
        assert!(dom.exists && dom.argmax_dominates);
        let link = audit_link_lemma(&k43, &sol).unwrap();
        assert!(link.all_hold());
        assert_eq!(link.degree, 3);
    }

    #[test]
    fn brualdi_hoffman() {
        assert_eq!(brualdi_hoffman_graph(3).unwrap(), Hypergraph::complete(3, 2).unwrap());
        let g = brualdi_hoffman_graph(4).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.degree(3).unwrap(), 1);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(brualdi_hoffman_graph(10).unwrap(), Hypergraph::complete(5, 2).unwrap());
        assert!(brualdi_hoffman_graph(0).is_err());
    }

    #[test]
    fn binomial_orders() {
        assert_eq!(binomial_order(4, 3), Some(4));
        assert_eq!(binomial_order(10, 3), Some(5));
        assert_eq!(binomial_order(5, 3), None);
        assert_eq!(binomial_order(1, 4), Some(4));
    }
}
