//! Composite Gauss-Legendre quadrature.
//!
//! This is the independent numerical route used to check every closed-form
//! coefficient, so it deliberately shares no code with `expansion`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Default points per panel.
pub const DEFAULT_ORDER: usize = 32;

/// Panels are doubled at most this many times before giving up.
const MAX_REFINEMENTS: u32 = 12;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds an `order`-point rule by Newton iteration on `P_order`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess for the i-th root, counting from x = 1.
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Single-panel integral of `f` over `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum();
        sum * half
    }

    /// Integral over `[a, b]` split into `panels` equal sub-intervals.
    pub fn integrate_panels<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, panels: usize) -> f64 {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|p| {
                let lo = a + h * p as f64;
                let hi = if p + 1 == panels { b } else { lo + h };
                self.integrate(&f, lo, hi)
            })
            .sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A converged integral together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

/// Integrates with the default rule, doubling the panel count (starting
/// from `min_panels`) until two successive results agree within `tol`.
pub fn integrate_to_tolerance<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    min_panels: usize,
    tol: f64,
) -> Result<Estimate> {
    let rule = GaussLegendre::new(DEFAULT_ORDER);
    integrate_with_rule(&rule, f, a, b, min_panels, tol)
}

pub fn integrate_with_rule<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: F,
    a: f64,
    b: f64,
    min_panels: usize,
    tol: f64,
) -> Result<Estimate> {
    let mut panels = min_panels.max(1);
    let mut coarse = rule.integrate_panels(&f, a, b, panels);
    let mut error = f64::INFINITY;
    for _ in 0..MAX_REFINEMENTS {
        let fine = rule.integrate_panels(&f, a, b, 2 * panels);
        error = (fine - coarse).abs();
        panels *= 2;
        if error <= tol {
            return Ok(Estimate { value: fine, error, panels });
        }
        coarse = fine;
    }
    Err(Error::ConvergenceFailure { achieved: error, requested: tol })
}
