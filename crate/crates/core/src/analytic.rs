//! Real-argument binomials and the edge-count bound `f_r`.
//!
//! `p_r(x) = x(x-1)...(x-r+1)/r!` is strictly increasing on `[r-1, ∞)`, so
//! it has an inverse there. The bound is `f_r(e) = p_{r-1}(p_r^{-1}(e) - 1)`,
//! which interpolates `f_r(C(k, r)) = C(k-1, r-1)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Evaluation and inversion of `p_r` for a fixed rank.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealBinomial {
    pub rank: usize,
    /// Relative residual target for the inverse, `|p_r(x) - m| <= tol * max(1, m)`.
    pub tol: f64,
    pub max_iter: usize,
}

impl RealBinomial {
    pub fn new(rank: usize) -> Self {
        Self {
            rank,
            tol: 1e-14,
            max_iter: 200,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        p_r(self.rank, x)
    }

    /// `p_r'(x)`, computed as a sum of leave-one-out products so that it
    /// stays finite at the integer roots.
    pub fn derivative(&self, x: f64) -> f64 {
        let r = self.rank;
        let mut total = 0.0;
        for skip in 0..r {
            let mut prod = 1.0;
            for j in (0..r).filter(|&j| j != skip) {
                prod *= x - j as f64;
            }
            total += prod;
        }
        total / factorial(r)
    }

    /// The unique `x >= rank - 1` with `p_r(x) = m`.
    ///
    /// Safeguarded Newton: every iterate tightens a bracket
    /// `p_r(lo) <= m <= p_r(hi)`, and a Newton step leaving the bracket is
    /// replaced by bisection.
    pub fn inverse(&self, m: f64) -> Result<f64> {
        if self.rank == 0 {
            return Err(Error::InvalidRank(0));
        }
        if m.is_nan() || m < 0.0 {
            return Err(Error::NegativeInput(m));
        }
        let r = self.rank as f64;
        let base = r - 1.0;
        if m == 0.0 {
            return Ok(base);
        }
        if self.rank == 1 {
            return Ok(m);
        }
        let target_tol = self.tol * m.max(1.0);

        let mut lo = base;
        let mut width = r.max(2.0 * m.powf(1.0 / r) * r);
        while self.eval(base + width) < m {
            width *= 2.0;
        }
        let mut hi = base + width;

        let seed = r / 2.0 - 0.5 + (factorial(self.rank) * m).powf(1.0 / r);
        let mut x = if seed > lo && seed < hi { seed } else { 0.5 * (lo + hi) };

        for _ in 0..self.max_iter {
            let fx = self.eval(x) - m;
            if fx.abs() <= target_tol {
                // a residual of tol·m still leaves ~tol·m/p'(x) in x; one more
                // Newton step brings that down to rounding level
                let polished = x - fx / self.derivative(x);
                return Ok(if polished.is_finite() && polished >= base { polished } else { x });
            }
            if fx < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            if hi - lo <= 4.0 * f64::EPSILON * hi {
                return Ok(x);
            }
            let slope = self.derivative(x);
            let newton = x - fx / slope;
            x = if slope > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        Ok(x)
    }
}

/// `x(x-1)...(x-r+1)/r!`; equals `C(x, r)` at integers `x >= r`.
pub fn p_r(rank: usize, x: f64) -> f64 {
    let mut prod = 1.0;
    for j in 0..rank {
        prod *= (x - j as f64) / (j + 1) as f64;
    }
    prod
}

pub fn p_r_inverse(rank: usize, m: f64) -> Result<f64> {
    RealBinomial::new(rank).inverse(m)
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `f_r` at one point, with the intermediate `s = p_r^{-1}(e)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrEvaluation {
    pub e: f64,
    pub s: f64,
    pub value: f64,
    pub derivative: Option<f64>,
}

fn check_edges(e: f64) -> Result<()> {
    if e.is_nan() || e < 0.0 {
        Err(Error::NegativeInput(e))
    } else {
        Ok(())
    }
}

/// The bound function. Rank 2 uses the closed form
/// `(sqrt(8e + 1) - 1) / 2`; rank 1 is the constant 1.
pub fn f_r(rank: usize, e: f64) -> Result<FrEvaluation> {
    if rank == 0 {
        return Err(Error::InvalidRank(rank));
    }
    check_edges(e)?;
    let (s, value) = if rank == 2 {
        let root = (8.0 * e + 1.0).sqrt();
        ((1.0 + root) / 2.0, (root - 1.0) / 2.0)
    } else {
        let s = p_r_inverse(rank, e)?;
        (s, p_r(rank - 1, s - 1.0))
    };
    let derivative = if e > 0.0 {
        Some(derivative_at(rank, s))
    } else {
        None
    };
    Ok(FrEvaluation {
        e,
        s,
        value,
        derivative,
    })
}

/// `f_r(e)` as a bare number.
pub fn fr_value(rank: usize, e: f64) -> Result<f64> {
    f_r(rank, e).map(|ev| ev.value)
}

/// `f_r` through the inverse polynomial for every rank, including 2.
pub fn f_r_generic(rank: usize, e: f64) -> Result<f64> {
    if rank == 0 {
        return Err(Error::InvalidRank(rank));
    }
    check_edges(e)?;
    let s = p_r_inverse(rank, e)?;
    Ok(p_r(rank - 1, s - 1.0))
}

// (r/η) · Σ_{i=1}^{r-1} 1/(η-i) / Σ_{i=0}^{r-1} 1/(η-i)
fn derivative_at(rank: usize, eta: f64) -> f64 {
    let r = rank as f64;
    let num: f64 = (1..rank).map(|i| 1.0 / (eta - i as f64)).sum();
    let den: f64 = (0..rank).map(|i| 1.0 / (eta - i as f64)).sum();
    r / eta * num / den
}

/// Closed-form derivative of `f_r` in terms of `η = p_r^{-1}(e)`.
pub fn f_r_derivative(rank: usize, e: f64) -> Result<f64> {
    if rank == 0 {
        return Err(Error::InvalidRank(rank));
    }
    check_edges(e)?;
    let eta = p_r_inverse(rank, e)?;
    if eta <= rank as f64 - 1.0 {
        return Err(Error::Domain(format!(
            "derivative needs p_r^-1(e) > r - 1, got {eta} at e = {e}"
        )));
    }
    Ok(derivative_at(rank, eta))
}

/// `|p_r^{-1}(y) - r y / f_r(y)|`.
pub fn eta_identity_check(rank: usize, y: f64) -> Result<f64> {
    if y.is_nan() || y <= 0.0 {
        return Err(Error::Domain(format!("identity needs y > 0, got {y}")));
    }
    let eta = p_r_inverse(rank, y)?;
    let value = fr_value(rank, y)?;
    Ok((eta - rank as f64 * y / value).abs())
}

/// `F(x) = x^{1/(r-1)} f_{r-1}(x) / f_r(e)^{r/(r-1)} + f_r(e - x) / f_r(e)`
/// on `f_r(e) <= x <= e`.
pub fn lemma_l2_f(rank: usize, e: f64, x: f64) -> Result<f64> {
    if rank < 2 {
        return Err(Error::InvalidRank(rank));
    }
    let fe = fr_value(rank, e)?;
    lemma_f_with(rank, e, fe, x)
}

fn lemma_f_with(rank: usize, e: f64, fe: f64, x: f64) -> Result<f64> {
    let slack = 1e-12 * e.max(1.0);
    if !(x >= fe - slack && x <= e + slack) {
        return Err(Error::Domain(format!(
            "x = {x} outside [f_r(e), e] = [{fe}, {e}]"
        )));
    }
    let r = rank as f64;
    let rest = (e - x).max(0.0);
    let first = x.powf(1.0 / (r - 1.0)) * fr_value(rank - 1, x)? / fe.powf(r / (r - 1.0));
    Ok(first + fr_value(rank, rest)? / fe)
}

/// Closed form of `F'(f_r(e))` with `t = s - 1`:
/// `(r / S_r(t) - (r-1) / S_{r-1}(t)) / (f_r(e) t^2)`, `S_k(t) = Σ_{i<k} 1/(t-i)`.
pub fn lemma_l2_left_slope(rank: usize, e: f64) -> Result<f64> {
    let ev = f_r(rank, e)?;
    let t = ev.s - 1.0;
    let r = rank as f64;
    let sum = |k: usize| -> f64 { (0..k).map(|i| 1.0 / (t - i as f64)).sum() };
    Ok((r / sum(rank) - (r - 1.0) / sum(rank - 1)) / (ev.value * t * t))
}

/// Numerical audit of `F(x) <= 1` on a uniform grid over `[f_r(e), e]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaL2Report {
    pub rank: usize,
    pub e: f64,
    /// `p_r^{-1}(e)`
    pub s: f64,
    pub fr_e: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// `p_{r-1}^{-1}(x)` per grid point.
    pub t: Vec<f64>,
    /// `p_r^{-1}(e - x)` per grid point.
    pub u: Vec<f64>,
    pub value_at_left: f64,
    pub max_value: f64,
    /// Forward difference of `F` at `f_r(e)`.
    pub left_slope: f64,
    pub left_slope_closed_form: f64,
    /// Largest `F(x_{i-1}) - 2F(x_i) + F(x_{i+1})`.
    pub max_second_difference: f64,
    /// Largest second difference divided by the squared grid step.
    pub max_second_derivative: f64,
    /// `t >= s - 1 >= u` at every grid point.
    pub ordering_holds: bool,
    /// `f_r(e) == e`, the interval is a single point.
    pub degenerate: bool,
}

pub const LEMMA_VALUE_TOL: f64 = 1e-9;
pub const LEMMA_SECOND_DIFF_TOL: f64 = 1e-6;

impl LemmaL2Report {
    pub fn value_ok(&self) -> bool {
        self.max_value <= 1.0 + LEMMA_VALUE_TOL
    }

    pub fn left_value_ok(&self) -> bool {
        (self.value_at_left - 1.0).abs() <= LEMMA_VALUE_TOL
    }

    pub fn slope_ok(&self) -> bool {
        self.degenerate || self.left_slope < 0.0
    }

    pub fn concavity_ok(&self) -> bool {
        self.max_second_difference <= LEMMA_SECOND_DIFF_TOL
    }

    pub fn passes(&self) -> bool {
        self.value_ok()
            && self.left_value_ok()
            && self.slope_ok()
            && self.concavity_ok()
            && self.ordering_holds
    }
}

pub fn lemma_l2_audit(rank: usize, e: f64, grid_size: usize) -> Result<LemmaL2Report> {
    if rank < 2 {
        return Err(Error::InvalidRank(rank));
    }
    if e.is_nan() || e < 1.0 {
        return Err(Error::Domain(format!("audit needs e >= 1, got {e}")));
    }
    if grid_size < 3 {
        return Err(Error::Domain(format!("grid needs >= 3 points, got {grid_size}")));
    }
    let ev = f_r(rank, e)?;
    let (s, fe) = (ev.s, ev.value);
    let span = (e - fe).max(0.0);
    let degenerate = span <= 1e-12 * e;
    let step = span / (grid_size - 1) as f64;
    let grid: Vec<f64> = (0..grid_size)
        .map(|i| if i + 1 == grid_size { e.max(fe) } else { fe + step * i as f64 })
        .collect();

    let mut values = Vec::with_capacity(grid_size);
    let mut t = Vec::with_capacity(grid_size);
    let mut u = Vec::with_capacity(grid_size);
    for &x in &grid {
        values.push(lemma_f_with(rank, e, fe, x)?);
        t.push(p_r_inverse(rank - 1, x)?);
        u.push(p_r_inverse(rank, (e - x).max(0.0))?);
    }
    let order_tol = 1e-9 * s.max(1.0);
    let ordering_holds = t
        .iter()
        .zip(&u)
        .all(|(&ti, &ui)| ti >= s - 1.0 - order_tol && s - 1.0 >= ui - order_tol);

    let (left_slope, max_second_difference, max_second_derivative) = if degenerate {
        (0.0, 0.0, 0.0)
    } else {
        let h = step * 1e-3;
        let slope = (lemma_f_with(rank, e, fe, fe + h)? - values[0]) / h;
        let second = values
            .windows(3)
            .map(|w| w[0] - 2.0 * w[1] + w[2])
            .fold(f64::NEG_INFINITY, f64::max);
        (slope, second, second / (step * step))
    };

    Ok(LemmaL2Report {
        rank,
        e,
        s,
        fr_e: fe,
        value_at_left: values[0],
        max_value: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        left_slope,
        left_slope_closed_form: if degenerate { 0.0 } else { lemma_l2_left_slope(rank, e)? },
        max_second_difference,
        max_second_derivative,
        ordering_holds,
        degenerate,
        grid,
        values,
        t,
        u,
    })
}

/// Lovász's form of the shadow bound: a family of `m = C(x, r)` sets has a
/// shadow of size at least `C(x, r-1)`.
pub fn lovasz_shadow_bound(rank: usize, m: usize) -> Result<f64> {
    if rank == 0 {
        return Err(Error::InvalidRank(rank));
    }
    if m == 0 {
        return Err(Error::NotApplicable);
    }
    let x = p_r_inverse(rank, m as f64)?;
    Ok(p_r(rank - 1, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_values() {
        assert_eq!(p_r(3, 5.0), 10.0);
        assert_eq!(p_r(3, 2.0), 0.0);
        assert_relative_eq!(p_r(2, 4.5), 7.875, max_relative = 1e-15);
        assert_eq!(p_r(0, 3.3), 1.0);
    }

    #[test]
    fn inverse_values() {
        assert_relative_eq!(p_r_inverse(3, 10.0).unwrap(), 5.0, max_relative = 1e-12);
        assert_eq!(p_r_inverse(3, 0.0).unwrap(), 2.0);
        assert_relative_eq!(p_r_inverse(2, 7.875).unwrap(), 4.5, max_relative = 1e-12);
        assert_relative_eq!(p_r_inverse(1, 3.25).unwrap(), 3.25);
        assert!(matches!(p_r_inverse(3, -1.0), Err(Error::NegativeInput(_))));
    }

    #[test]
    fn inverse_handles_tiny_and_huge() {
        for &m in &[1e-12, 1e-6, 0.3, 1e6, 1e12] {
            for r in 1..=6 {
                let x = p_r_inverse(r, m).unwrap();
                assert!(x >= r as f64 - 1.0);
                assert!((p_r(r, x) - m).abs() <= 1e-10 * m.max(1.0), "r={r} m={m}");
            }
        }
    }

    #[test]
    fn fr_reference_points() {
        assert_relative_eq!(fr_value(3, 4.0).unwrap(), 3.0, max_relative = 1e-12);
        assert_relative_eq!(fr_value(2, 6.0).unwrap(), 3.0, max_relative = 1e-15);
        assert_relative_eq!(fr_value(3, 10.0).unwrap(), 6.0, max_relative = 1e-12);
        assert_relative_eq!(fr_value(4, 1.0).unwrap(), 1.0, max_relative = 1e-12);
        assert_eq!(fr_value(1, 17.0).unwrap(), 1.0);
        assert_eq!(fr_value(3, 0.0).unwrap(), 0.0);
        assert!(matches!(f_r(0, 1.0), Err(Error::InvalidRank(0))));
        assert!(matches!(f_r(3, -2.0), Err(Error::NegativeInput(_))));
    }

    #[test]
    fn derivative_reference_points() {
        // η = 5 plugged into the closed form by hand
        let expected = 0.6 * (1.0 / 4.0 + 1.0 / 3.0) / (1.0 / 5.0 + 1.0 / 4.0 + 1.0 / 3.0);
        assert_relative_eq!(f_r_derivative(3, 10.0).unwrap(), expected, max_relative = 1e-12);
        assert_relative_eq!(expected, 0.44680851063829785, max_relative = 1e-14);
        // d/de of (sqrt(8e+1)-1)/2 is 2/sqrt(8e+1)
        assert_relative_eq!(f_r_derivative(2, 6.0).unwrap(), 2.0 / 7.0, max_relative = 1e-12);
        assert!(matches!(f_r_derivative(3, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn eta_identity() {
        assert!(eta_identity_check(3, 10.0).unwrap() <= 1e-9);
        assert!(eta_identity_check(2, 6.0).unwrap() <= 1e-9);
        assert!(eta_identity_check(5, 1.0).unwrap() <= 1e-9);
        assert!(eta_identity_check(3, 0.0).is_err());
    }

    #[test]
    fn lemma_function_values() {
        assert_relative_eq!(lemma_l2_f(3, 4.0, 3.0).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(lemma_l2_f(3, 10.0, 6.0).unwrap(), 1.0, max_relative = 1e-12);
        assert!(lemma_l2_f(3, 10.0, 8.0).unwrap() < 1.0);
        assert!(matches!(lemma_l2_f(3, 10.0, 5.0), Err(Error::Domain(_))));
        assert!(matches!(lemma_l2_f(3, 10.0, 10.5), Err(Error::Domain(_))));
    }

    #[test]
    fn lemma_audits() {
        for &(r, e) in &[(3, 10.0), (4, 15.0), (3, 7.0)] {
            let report = lemma_l2_audit(r, e, 50).unwrap();
            assert!(report.passes(), "{report:?}");
            assert_relative_eq!(
                report.left_slope,
                report.left_slope_closed_form,
                max_relative = 1e-2
            );
        }
        let degenerate = lemma_l2_audit(3, 1.0, 10).unwrap();
        assert!(degenerate.degenerate && degenerate.passes());
        assert!(lemma_l2_audit(3, 10.0, 2).is_err());
    }

    #[test]
    fn shadow_bound_values() {
        assert_relative_eq!(lovasz_shadow_bound(3, 4).unwrap(), 6.0, max_relative = 1e-12);
        assert_relative_eq!(lovasz_shadow_bound(3, 10).unwrap(), 10.0, max_relative = 1e-12);
        assert_relative_eq!(lovasz_shadow_bound(2, 3).unwrap(), 3.0, max_relative = 1e-12);
        assert_eq!(lovasz_shadow_bound(3, 0).unwrap_err(), Error::NotApplicable);
    }
}
