//! Weighted incidence matrices and α-normal labelings.
//!
//! A weighted incidence matrix `B` assigns a positive weight to every
//! incident (vertex, edge) pair. It is α-normal when every vertex row sums
//! to 1 and every edge column multiplies to α, and α-subnormal when rows sum
//! to at most 1 and columns multiply to at least α. A consistent α-normal
//! labeling pins `ρ = α^{-1/r}`; an α-subnormal one bounds `ρ <= α^{-1/r}`.
//!
//! Multiplicative quantities are handled in log space throughout.

use serde::Serialize;

use crate::analytic::fr_value;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::spectral::{spectral_radius, SolverOptions, SpectralSolution};

/// Tolerance for labelings built directly from a converged solve.
pub const CONSTRUCTED_TOL: f64 = 1e-9;
/// Tolerance for labelings assembled from several solves.
pub const PIPELINE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedIncidence {
    host: Hypergraph,
    /// `weights[i][j]` is `B(host.edges()[i][j], i)`.
    weights: Vec<Vec<f64>>,
}

impl WeightedIncidence {
    pub fn new(host: Hypergraph, weights: Vec<Vec<f64>>) -> Result<Self> {
        if weights.len() != host.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: host.edge_count(),
                found: weights.len(),
            });
        }
        for row in &weights {
            if row.len() != host.rank() {
                return Err(Error::DimensionMismatch {
                    expected: host.rank(),
                    found: row.len(),
                });
            }
            if let Some(&w) = row.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
                return Err(Error::InvalidParameters(format!(
                    "incidence weights must be positive and finite, got {w}"
                )));
            }
        }
        Ok(Self { host, weights })
    }

    /// Builds `B` from a function of `(vertex, edge index)`.
    pub fn from_fn(host: Hypergraph, mut weight: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let weights = host
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| e.iter().map(|&v| weight(v, i)).collect())
            .collect();
        Self::new(host, weights)
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    /// `B(v, e_i)`, zero when `v` is not in the edge.
    pub fn weight(&self, v: usize, edge_index: usize) -> f64 {
        match self.host.edges().get(edge_index) {
            Some(e) => e.binary_search(&v).map_or(0.0, |j| self.weights[edge_index][j]),
            None => 0.0,
        }
    }

    /// Row sums indexed by vertex id; isolated vertices get 0.
    pub fn vertex_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.host.vertex_count()];
        for (e, row) in self.host.edges().iter().zip(&self.weights) {
            for (&v, &w) in e.iter().zip(row) {
                sums[v] += w;
            }
        }
        sums
    }

    pub fn edge_log_products(&self) -> Vec<f64> {
        self.weights
            .iter()
            .map(|row| row.iter().map(|w| w.ln()).sum())
            .collect()
    }

    /// `vertex edge_index weight` rows, one per incident pair.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (i, (e, row)) in self.host.edges().iter().zip(&self.weights).enumerate() {
            for (&v, &w) in e.iter().zip(row) {
                out.push_str(&format!("{v}\t{i}\t{w}\n"));
            }
        }
        out
    }

    /// Reads the TSV interchange format against a known host. Every
    /// incident pair must appear exactly once.
    pub fn from_tsv(host: Hypergraph, text: &str) -> Result<Self> {
        let mut weights: Vec<Vec<f64>> = vec![vec![f64::NAN; host.rank()]; host.edge_count()];
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(parse_err("expected `vertex edge_index weight`".into()));
            }
            let v: usize = fields[0]
                .parse()
                .map_err(|_| parse_err(format!("bad vertex `{}`", fields[0])))?;
            let i: usize = fields[1]
                .parse()
                .map_err(|_| parse_err(format!("bad edge index `{}`", fields[1])))?;
            let w: f64 = fields[2]
                .parse()
                .map_err(|_| parse_err(format!("bad weight `{}`", fields[2])))?;
            let edge = host
                .edges()
                .get(i)
                .ok_or_else(|| parse_err(format!("edge index {i} out of range")))?;
            let j = edge
                .binary_search(&v)
                .map_err(|_| parse_err(format!("vertex {v} is not in edge {i}")))?;
            if !weights[i][j].is_nan() {
                return Err(parse_err(format!("pair ({v}, {i}) listed twice")));
            }
            weights[i][j] = w;
        }
        if weights.iter().flatten().any(|w| w.is_nan()) {
            return Err(Error::Parse {
                line: 0,
                message: "some incident pairs have no weight".into(),
            });
        }
        Self::new(host, weights)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Normal,
    NotNormal,
    /// Subnormal and also normal.
    Subnormal,
    StrictlySubnormal,
    NotSubnormal,
    Consistent,
    Inconsistent,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(
            self,
            Verdict::Normal | Verdict::Subnormal | Verdict::StrictlySubnormal | Verdict::Consistent
        )
    }

    pub fn is_subnormal(self) -> bool {
        matches!(self, Verdict::Normal | Verdict::Subnormal | Verdict::StrictlySubnormal)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelingReport {
    pub alpha: f64,
    pub tol: f64,
    /// Normal: `max |Σ_{e ∋ v} B(v,e) - 1|`; subnormal: `max (Σ - 1)^+`.
    pub vertex_slack: f64,
    /// Normal: `max |Π_{v ∈ e} B(v,e) - α|`; subnormal: `max (α - Π)^+`.
    pub edge_slack: f64,
    /// `max |log Π ratio|` over a fundamental cycle basis, when checked.
    pub consistency_defect: Option<f64>,
    pub verdict: Verdict,
}

fn normal_slacks(b: &WeightedIncidence, alpha: f64) -> (f64, f64) {
    let sums = b.vertex_sums();
    let deg = b.host.degrees();
    let vertex = sums
        .iter()
        .zip(&deg)
        .filter(|(_, &d)| d > 0)
        .map(|(s, _)| (s - 1.0).abs())
        .fold(0.0, f64::max);
    let edge = b
        .edge_log_products()
        .iter()
        .map(|lp| (lp.exp() - alpha).abs())
        .fold(0.0, f64::max);
    (vertex, edge)
}

/// Rows sum to 1 and columns multiply to `alpha`, within `tol`. Isolated
/// vertices carry no row and are skipped.
pub fn verify_normal(b: &WeightedIncidence, alpha: f64, tol: f64) -> LabelingReport {
    let (vertex_slack, edge_slack) = normal_slacks(b, alpha);
    let verdict = if vertex_slack <= tol && edge_slack <= tol {
        Verdict::Normal
    } else {
        Verdict::NotNormal
    };
    LabelingReport {
        alpha,
        tol,
        vertex_slack,
        edge_slack,
        consistency_defect: None,
        verdict,
    }
}

/// Rows sum to at most 1 and columns multiply to at least `alpha`.
pub fn verify_subnormal(b: &WeightedIncidence, alpha: f64, tol: f64) -> LabelingReport {
    let vertex_slack = b
        .vertex_sums()
        .iter()
        .map(|s| (s - 1.0).max(0.0))
        .fold(0.0, f64::max);
    let edge_slack = b
        .edge_log_products()
        .iter()
        .map(|lp| (alpha - lp.exp()).max(0.0))
        .fold(0.0, f64::max);
    let verdict = if vertex_slack > tol || edge_slack > tol {
        Verdict::NotSubnormal
    } else if verify_normal(b, alpha, tol).verdict == Verdict::Normal {
        Verdict::Subnormal
    } else {
        Verdict::StrictlySubnormal
    };
    LabelingReport {
        alpha,
        tol,
        vertex_slack,
        edge_slack,
        consistency_defect: None,
        verdict,
    }
}

/// Checks `Π B(v_i, e_i) / B(v_{i-1}, e_i) = 1` around every cycle of the
/// vertex–edge incidence graph.
///
/// The log-ratios around cycles vanish exactly when `log B(v, e)` splits as
/// `φ(v) - φ(e)`. Potentials are fixed along a BFS tree; each non-tree
/// incidence then closes one fundamental cycle, and its mismatch is that
/// cycle's log-product.
pub fn verify_consistency(b: &WeightedIncidence, tol: f64) -> Result<LabelingReport> {
    let host = &b.host;
    let comps = host.non_trivial_components().len();
    if comps > 1 {
        return Err(Error::NotConnected(comps));
    }
    let n = host.vertex_count();
    let m = host.edge_count();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in host.edges().iter().enumerate() {
        for (j, &v) in e.iter().enumerate() {
            incident[v].push((i, j));
        }
    }

    let mut vertex_pot: Vec<Option<f64>> = vec![None; n];
    let mut edge_pot: Vec<Option<f64>> = vec![None; m];
    if let Some(root) = (0..n).find(|&v| !incident[v].is_empty()) {
        vertex_pot[root] = Some(0.0);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let pv = vertex_pot[v].expect("queued vertices have potentials");
            for &(i, j) in &incident[v] {
                if edge_pot[i].is_some() {
                    continue;
                }
                let pe = pv - b.weights[i][j].ln();
                edge_pot[i] = Some(pe);
                for (k, &u) in host.edges()[i].iter().enumerate() {
                    if vertex_pot[u].is_none() {
                        vertex_pot[u] = Some(b.weights[i][k].ln() + pe);
                        queue.push_back(u);
                    }
                }
            }
        }
    }

    let mut defect: f64 = 0.0;
    for (i, e) in host.edges().iter().enumerate() {
        let pe = edge_pot[i].expect("connected host");
        for (j, &v) in e.iter().enumerate() {
            let pv = vertex_pot[v].expect("connected host");
            defect = defect.max((b.weights[i][j].ln() - (pv - pe)).abs());
        }
    }
    Ok(LabelingReport {
        alpha: f64::NAN,
        tol,
        vertex_slack: 0.0,
        edge_slack: 0.0,
        consistency_defect: Some(defect),
        verdict: if defect <= tol {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        },
    })
}

/// The consistent normal labeling carried by a Perron vector:
/// `B(v, e) = Π_{u ∈ e} x_u / (ρ x_v^r)`, with `α = ρ^{-r}`.
///
/// Row sums are 1 by the eigen-equation, column products are `ρ^{-r}`
/// identically, and cycle ratios telescope in `x`.
pub fn construct_normal_labeling(
    h: &Hypergraph,
    sol: &SpectralSolution,
) -> Result<(WeightedIncidence, f64)> {
    if !sol.converged {
        return Err(Error::NotConverged);
    }
    if sol.perron.len() != h.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: h.vertex_count(),
            found: sol.perron.len(),
        });
    }
    let comps = h.non_trivial_components().len();
    if comps != 1 {
        return Err(Error::NotConnected(comps));
    }
    let logs: Vec<f64> = sol.perron.iter().map(|x| x.ln()).collect();
    if h.covered_vertices().iter().any(|&v| !logs[v].is_finite()) {
        return Err(Error::InvalidParameters(
            "Perron vector must be positive on the hypergraph".into(),
        ));
    }
    let r = h.rank() as f64;
    let log_rho = sol.rho.ln();
    let b = WeightedIncidence::from_fn(h.clone(), |v, i| {
        let edge_log: f64 = h.edges()[i].iter().map(|&u| logs[u]).sum();
        (edge_log - log_rho - r * logs[v]).exp()
    })?;
    Ok((b, (-r * log_rho).exp()))
}

/// `α^{-1/r}`, an upper bound on `ρ` for any α-subnormal labeling.
pub fn subnormal_bound(report: &LabelingReport, rank: usize) -> Result<f64> {
    if !report.verdict.is_subnormal() {
        return Err(Error::NotSubnormal);
    }
    Ok(report.alpha.powf(-1.0 / rank as f64))
}

/// Result of gluing a link labeling and a base labeling at one vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Combined {
    pub labeling: WeightedIncidence,
    /// `f_r(e)^{-r}`
    pub alpha: f64,
    pub x: f64,
    pub y: f64,
    pub vertex: usize,
    pub degree: usize,
    pub fr_e: f64,
    /// The vertex-deleted hypergraph has no edges; `y` is then unused and
    /// reported as 0.
    pub empty_base: bool,
}

/// Glues an `alpha1`-subnormal labeling `b1` of the link `G_v` and an
/// `alpha2`-subnormal labeling `b2` of `H - v` into a labeling of `h`:
///
/// * `B(v, f) = 1/d` for edges through `v`,
/// * `B(u, f) = x · B1(u, f \ {v})` for the other vertices of those edges,
/// * `B(u, f) = y · B2(u, f)` for edges avoiding `v`,
///
/// with `α = f_r(e)^{-r}`, `x = (dα/α1)^{1/(r-1)}`, `y = (α/α2)^{1/r}`.
/// Every column then multiplies to exactly α, and rows sum to at most
/// `x + y`.
pub fn combine_subnormal(
    h: &Hypergraph,
    v: usize,
    b1: &WeightedIncidence,
    alpha1: f64,
    b2: &WeightedIncidence,
    alpha2: f64,
    tol: f64,
) -> Result<Combined> {
    let r = h.rank();
    if r < 3 {
        return Err(Error::RankTooSmall(r));
    }
    let degree = h.degree(v)?;
    let e = h.edge_count();
    let fr_e = fr_value(r, e as f64)?;
    if (degree as f64) < fr_e - tol {
        return Err(Error::DegreeTooSmall { degree, bound: fr_e });
    }

    let link = h.link_graph(v)?;
    if b1.host.edges() != link.edges() || b1.host.rank() != r - 1 {
        return Err(Error::LinkNotNormal("labeling host is not the link graph".into()));
    }
    let rep1 = verify_subnormal(b1, alpha1, tol);
    if !rep1.verdict.is_subnormal() {
        return Err(Error::LinkNotNormal(format!(
            "vertex slack {:e}, edge slack {:e}",
            rep1.vertex_slack, rep1.edge_slack
        )));
    }

    let base = h.delete_vertex(v)?;
    if b2.host.edges() != base.edges() || b2.host.rank() != r {
        return Err(Error::BaseNotNormal(
            "labeling host is not the vertex-deleted hypergraph".into(),
        ));
    }
    let empty_base = base.edge_count() == 0;
    if !empty_base {
        let rep2 = verify_subnormal(b2, alpha2, tol);
        if !rep2.verdict.is_subnormal() {
            return Err(Error::BaseNotNormal(format!(
                "vertex slack {:e}, edge slack {:e}",
                rep2.vertex_slack, rep2.edge_slack
            )));
        }
    }
    if !base.shadow()?.is_subgraph_of(&link) {
        return Err(Error::ShadowNotInLink);
    }

    let rf = r as f64;
    let alpha = fr_e.powf(-rf);
    let x = (degree as f64 * alpha / alpha1).powf(1.0 / (rf - 1.0));
    let y = if empty_base {
        0.0
    } else {
        (alpha / alpha2).powf(1.0 / rf)
    };
    if x + y > 1.0 + tol {
        return Err(Error::WeightOverflow(x + y));
    }

    let inv_d = 1.0 / degree as f64;
    let mut weights = Vec::with_capacity(e);
    for f in h.edges() {
        let row = if f.binary_search(&v).is_ok() {
            let rest: Vec<usize> = f.iter().copied().filter(|&u| u != v).collect();
            let li = link.edge_index(&rest).expect("link contains every edge remainder");
            f.iter()
                .map(|&u| if u == v { inv_d } else { x * b1.weight(u, li) })
                .collect()
        } else {
            let bi = base.edge_index(f).expect("base contains every edge avoiding v");
            f.iter().map(|&u| y * b2.weight(u, bi)).collect()
        };
        weights.push(row);
    }
    Ok(Combined {
        labeling: WeightedIncidence::new(h.clone(), weights)?,
        alpha,
        x,
        y,
        vertex: v,
        degree,
        fr_e,
        empty_base,
    })
}

/// Normal labeling of each non-trivial component from its own Perron
/// vector. The union is `ρ(h)^{-r}`-subnormal (and normal when `h` is
/// connected). Returns the labeling, that α and `ρ(h)`.
pub fn componentwise_labeling(
    h: &Hypergraph,
    opts: &SolverOptions,
) -> Result<(WeightedIncidence, f64, f64)> {
    let mut weights = vec![Vec::new(); h.edge_count()];
    let mut rho = 0.0f64;
    for comp in h.non_trivial_components() {
        let (sub, ids) = h.restrict_to(&comp.vertices).compact();
        let sol = spectral_radius(&sub, opts)?;
        let (b, _) = construct_normal_labeling(&sub, &sol)?;
        for (edge, row) in sub.edges().iter().zip(b.weights) {
            let original: Vec<usize> = edge.iter().map(|&u| ids[u]).collect();
            let i = h.edge_index(&original).expect("component edge is an edge of h");
            weights[i] = row;
        }
        rho = rho.max(sol.rho);
    }
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let alpha = rho.powf(-(h.rank() as f64));
    Ok((WeightedIncidence::new(h.clone(), weights)?, alpha, rho))
}

/// End-to-end certificate for `ρ(H) <= f_r(e)` built at one vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombinationCertificate {
    #[serde(flatten)]
    pub combined: Combined,
    pub link_rho: f64,
    pub base_rho: Option<f64>,
    pub report: LabelingReport,
    /// `α^{-1/r}`
    pub bound: f64,
}

/// Solves the link and the vertex-deleted hypergraph, labels both from their
/// Perron vectors, combines at `v` and checks subnormality.
pub fn certify_by_combination(
    h: &Hypergraph,
    v: usize,
    opts: &SolverOptions,
    tol: f64,
) -> Result<CombinationCertificate> {
    let link = h.link_graph(v)?;
    let (b1, alpha1, link_rho) = componentwise_labeling(&link, opts)?;

    let base = h.delete_vertex(v)?;
    let (b2, alpha2, base_rho) = if base.edge_count() == 0 {
        (WeightedIncidence::new(base, Vec::new())?, 1.0, None)
    } else {
        let (b2, alpha2, rho) = componentwise_labeling(&base, opts)?;
        (b2, alpha2, Some(rho))
    };

    let combined = combine_subnormal(h, v, &b1, alpha1, &b2, alpha2, tol)?;
    let report = verify_subnormal(&combined.labeling, combined.alpha, tol);
    let bound = subnormal_bound(&report, h.rank())?;
    Ok(CombinationCertificate {
        combined,
        link_rho,
        base_rho,
        report,
        bound,
    })
}
