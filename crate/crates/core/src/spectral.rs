//! Adjacency-tensor action and the spectral radius of a uniform hypergraph.
//!
//! The adjacency tensor has entry `1/(r-1)!` on every ordering of an edge,
//! so `(A x^{r-1})_v = Σ_{e ∋ v} Π_{u ∈ e \ {v}} x_u`. The spectral radius is
//! found by shifted power iteration on `A + σI`: with `y = A x^{r-1}`, the
//! Collatz–Wielandt ratios `y_v / x_v^{r-1}` bracket `ρ` at every step and
//! the bracket width is the stopping criterion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Stop once the Collatz–Wielandt bracket is narrower than this.
    pub tol: f64,
    pub max_iter: usize,
    /// Diagonal shift `σ`; any `σ > 0` makes the iteration converge on a
    /// connected hypergraph.
    pub shift: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 100_000,
            shift: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSolution {
    pub rho: f64,
    /// Indexed by vertex id; positive on `component`, zero elsewhere, and
    /// of unit r-norm.
    pub perron: Vec<f64>,
    /// `max_v |(A x^{r-1})_v - ρ x_v^{r-1}|`
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Vertices of the component that attains the spectral radius.
    pub component: Vec<usize>,
    /// Final Collatz–Wielandt bracket on `ρ`.
    pub lower: f64,
    pub upper: f64,
}

impl SpectralSolution {
    /// Vertex with the largest Perron entry; ties go to the smaller id.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (v, &x) in self.perron.iter().enumerate() {
            if x > self.perron[best] {
                best = v;
            }
        }
        best
    }
}

fn check_len(h: &Hypergraph, x: &[f64]) -> Result<()> {
    if x.len() == h.vertex_count() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: h.vertex_count(),
            found: x.len(),
        })
    }
}

/// `(A x^{r-1})_v = Σ_{e ∋ v} Π_{u ∈ e \ {v}} x_u`.
pub fn apply_tensor(h: &Hypergraph, x: &[f64]) -> Result<Vec<f64>> {
    check_len(h, x)?;
    let mut out = vec![0.0; h.vertex_count()];
    accumulate_tensor(h, x, &mut out);
    Ok(out)
}

// Leave-one-out products via prefix/suffix products: no division, so zero
// entries need no special handling.
fn accumulate_tensor(h: &Hypergraph, x: &[f64], out: &mut [f64]) {
    let r = h.rank();
    let mut prefix = vec![1.0; r + 1];
    for e in h.edges() {
        for (i, &u) in e.iter().enumerate() {
            prefix[i + 1] = prefix[i] * x[u];
        }
        let mut suffix = 1.0;
        for i in (0..r).rev() {
            out[e[i]] += prefix[i] * suffix;
            suffix *= x[e[i]];
        }
    }
}

/// `P_H(x) = r Σ_{e ∈ E} Π_{u ∈ e} x_u`.
pub fn polynomial_form(h: &Hypergraph, x: &[f64]) -> Result<f64> {
    check_len(h, x)?;
    let sum: f64 = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|&u| x[u]).product::<f64>())
        .sum();
    Ok(h.rank() as f64 * sum)
}

fn r_norm(x: &[f64], r: usize) -> f64 {
    x.iter()
        .map(|v| v.abs().powi(r as i32))
        .sum::<f64>()
        .powf(1.0 / r as f64)
}

/// Lower and upper Collatz–Wielandt bounds on `ρ` for one iterate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Shifted power iteration on a connected hypergraph without isolated
/// vertices. Iterating yields the bracket of each successive iterate.
#[derive(Debug, Clone)]
pub struct PowerIteration<'a> {
    h: &'a Hypergraph,
    shift: f64,
    x: Vec<f64>,
    y: Vec<f64>,
}

impl<'a> PowerIteration<'a> {
    /// Starts from the uniform vector of unit r-norm.
    pub fn new(h: &'a Hypergraph, shift: f64) -> Result<Self> {
        if h.rank() < 2 {
            return Err(Error::InvalidRank(h.rank()));
        }
        if h.edge_count() == 0 {
            return Err(Error::NoEdges);
        }
        let n = h.vertex_count();
        let start = (n as f64).powf(-1.0 / h.rank() as f64);
        Ok(Self {
            h,
            shift,
            x: vec![start; n],
            y: vec![0.0; n],
        })
    }

    pub fn current(&self) -> &[f64] {
        &self.x
    }

    /// Evaluates the tensor at the current iterate and returns its bracket.
    pub fn bracket(&mut self) -> Bracket {
        let r = self.h.rank();
        self.y.iter_mut().for_each(|v| *v = 0.0);
        accumulate_tensor(self.h, &self.x, &mut self.y);
        let mut lower = f64::INFINITY;
        let mut upper = f64::NEG_INFINITY;
        for (&yv, &xv) in self.y.iter().zip(&self.x) {
            let ratio = yv / xv.powi(r as i32 - 1);
            lower = lower.min(ratio);
            upper = upper.max(ratio);
        }
        Bracket { lower, upper }
    }

    /// Moves to `normalize((A x^{r-1} + σ x^{[r-1]})^{[1/(r-1)]})`, using the
    /// tensor values from the last [`bracket`](Self::bracket) call.
    pub fn advance(&mut self) {
        let r = self.h.rank();
        let inv = 1.0 / (r as f64 - 1.0);
        for (xv, &yv) in self.x.iter_mut().zip(&self.y) {
            *xv = (yv + self.shift * xv.powi(r as i32 - 1)).powf(inv);
        }
        let norm = r_norm(&self.x, r);
        self.x.iter_mut().for_each(|v| *v /= norm);
    }
}

impl Iterator for PowerIteration<'_> {
    type Item = Bracket;

    fn next(&mut self) -> Option<Bracket> {
        let b = self.bracket();
        self.advance();
        Some(b)
    }
}

struct ComponentSolve {
    rho: f64,
    bracket: Bracket,
    x: Vec<f64>,
    iterations: usize,
    converged: bool,
}

fn solve_connected(h: &Hypergraph, opts: &SolverOptions) -> Result<ComponentSolve> {
    let mut it = PowerIteration::new(h, opts.shift)?;
    let mut bracket = it.bracket();
    let mut iterations = 1;
    while bracket.width() > opts.tol && iterations < opts.max_iter {
        it.advance();
        bracket = it.bracket();
        iterations += 1;
    }
    Ok(ComponentSolve {
        rho: bracket.midpoint(),
        bracket,
        converged: bracket.width() <= opts.tol,
        x: it.x,
        iterations,
    })
}

/// Spectral radius with default options.
pub fn spectral_radius_default(h: &Hypergraph) -> Result<SpectralSolution> {
    spectral_radius(h, &SolverOptions::default())
}

/// Spectral radius of `h`. A disconnected input is solved component by
/// component and the largest radius wins; isolated vertices get zero
/// Perron weight.
pub fn spectral_radius(h: &Hypergraph, opts: &SolverOptions) -> Result<SpectralSolution> {
    if h.rank() < 2 {
        return Err(Error::InvalidRank(h.rank()));
    }
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let mut best: Option<(ComponentSolve, Vec<usize>, Hypergraph)> = None;
    let mut all_converged = true;
    for comp in h.non_trivial_components() {
        let (sub, ids) = h.restrict_to(&comp.vertices).compact();
        let solved = solve_connected(&sub, opts)?;
        all_converged &= solved.converged;
        if best.as_ref().is_none_or(|(b, _, _)| solved.rho > b.rho) {
            best = Some((solved, ids, sub));
        }
    }
    let (solved, ids, sub) = best.expect("at least one non-trivial component");

    let r = h.rank();
    let ax = apply_tensor(&sub, &solved.x)?;
    let residual = ax
        .iter()
        .zip(&solved.x)
        .map(|(&a, &x)| (a - solved.rho * x.powi(r as i32 - 1)).abs())
        .fold(0.0, f64::max);

    let mut perron = vec![0.0; h.vertex_count()];
    for (&old, &x) in ids.iter().zip(&solved.x) {
        perron[old] = x;
    }
    Ok(SpectralSolution {
        rho: solved.rho,
        perron,
        residual,
        iterations: solved.iterations,
        converged: all_converged,
        component: ids,
        lower: solved.bracket.lower,
        upper: solved.bracket.upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tensor_action() {
        let k3 = Hypergraph::complete(3, 2).unwrap();
        assert_eq!(apply_tensor(&k3, &[1.0; 3]).unwrap(), vec![2.0; 3]);
        let single = Hypergraph::complete(3, 3).unwrap();
        assert_eq!(apply_tensor(&single, &[1.0; 3]).unwrap(), vec![1.0; 3]);
        let k43 = Hypergraph::complete(4, 3).unwrap();
        assert_eq!(apply_tensor(&k43, &[1.0; 4]).unwrap(), vec![3.0; 4]);
        assert_eq!(apply_tensor(&single, &[2.0, 3.0, 5.0]).unwrap(), vec![15.0, 10.0, 6.0]);
        assert_eq!(apply_tensor(&single, &[0.0, 3.0, 5.0]).unwrap(), vec![15.0, 0.0, 0.0]);
        assert!(matches!(
            apply_tensor(&k43, &[1.0; 3]),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn polynomial_form_values() {
        let single = Hypergraph::complete(3, 3).unwrap();
        assert_eq!(polynomial_form(&single, &[1.0; 3]).unwrap(), 3.0);
        let k43 = Hypergraph::complete(4, 3).unwrap();
        let x = vec![4f64.powf(-1.0 / 3.0); 4];
        assert_abs_diff_eq!(polynomial_form(&k43, &x).unwrap(), 3.0, epsilon = 1e-14);
        assert_eq!(polynomial_form(&k43, &[0.0; 4]).unwrap(), 0.0);
    }

    #[test]
    fn complete_spectra() {
        let sol = spectral_radius_default(&Hypergraph::complete(5, 2).unwrap()).unwrap();
        assert!(sol.converged);
        assert_abs_diff_eq!(sol.rho, 4.0, epsilon = 1e-8);
        let sol = spectral_radius_default(&Hypergraph::complete(4, 3).unwrap()).unwrap();
        assert_abs_diff_eq!(sol.rho, 3.0, epsilon = 1e-8);
        let sol = spectral_radius_default(&Hypergraph::complete(5, 3).unwrap()).unwrap();
        assert_abs_diff_eq!(sol.rho, 6.0, epsilon = 1e-8);
    }

    #[test]
    fn single_edge_is_uniform() {
        let sol = spectral_radius_default(&Hypergraph::complete(3, 3).unwrap()).unwrap();
        assert_abs_diff_eq!(sol.rho, 1.0, epsilon = 1e-10);
        let u = 3f64.powf(-1.0 / 3.0);
        for &x in &sol.perron {
            assert_abs_diff_eq!(x, u, epsilon = 1e-12);
        }
    }

    #[test]
    fn disconnected_takes_the_larger_component() {
        // K_4^3 on 0..4 plus a lone edge on 4..7 and an isolated vertex 7
        let mut edges = Hypergraph::complete(4, 3).unwrap().edges().to_vec();
        edges.push(vec![4, 5, 6]);
        let h = Hypergraph::new(3, 8, edges).unwrap();
        let sol = spectral_radius_default(&h).unwrap();
        assert_abs_diff_eq!(sol.rho, 3.0, epsilon = 1e-8);
        assert_eq!(sol.component, vec![0, 1, 2, 3]);
        assert!(sol.perron[4..].iter().all(|&x| x == 0.0));
        assert_abs_diff_eq!(r_norm(&sol.perron, 3), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn empty_is_an_error() {
        assert_eq!(
            spectral_radius_default(&Hypergraph::empty(3, 4)).unwrap_err(),
            Error::NoEdges
        );
    }

    #[test]
    fn non_convergence_is_flagged() {
        let path = Hypergraph::new(3, 7, [[0, 1, 2], [2, 3, 4], [4, 5, 6]]).unwrap();
        let opts = SolverOptions {
            max_iter: 2,
            ..SolverOptions::default()
        };
        let sol = spectral_radius(&path, &opts).unwrap();
        assert!(!sol.converged);
        assert_eq!(sol.iterations, 2);
    }
}
