//! Holomorphic functions of one complex variable with exact derivatives, and
//! trapezoidal quadrature on circles.
//!
//! The function class is finite sums of `p(z) · exp(λ z)` with complex
//! polynomial `p`. It is closed under differentiation:
//! `(p e^{λz})' = (p' + λ p) e^{λz}`.

use std::f64::consts::PI;

use crate::C64;

/// Complex polynomial, coefficients ascending in degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<C64>,
}

impl Polynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last() == Some(&C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    fn scaled_sum(&self, lambda: C64, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = C64::new(0.0, 0.0);
        Self::new(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(zero)
                        + lambda * other.coeffs.get(i).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }
}

/// `poly(z) · exp(exp_lambda · z)`, or just `poly(z)` when `exp_lambda` is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub poly: Polynomial,
    pub exp_lambda: Option<C64>,
}

impl Term {
    pub fn eval(&self, z: C64) -> C64 {
        let p = self.poly.eval(z);
        match self.exp_lambda {
            Some(l) => p * (l * z).exp(),
            None => p,
        }
    }

    fn derivative(&self) -> Self {
        let dp = self.poly.derivative();
        let poly = match self.exp_lambda {
            Some(l) => dp.scaled_sum(l, &self.poly),
            None => dp,
        };
        Self {
            poly,
            exp_lambda: self.exp_lambda,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct HolomorphicFn {
    terms: Vec<Term>,
}

impl HolomorphicFn {
    pub fn new(terms: Vec<Term>) -> Self {
        Self { terms }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn polynomial(coeffs: Vec<C64>) -> Self {
        Self::new(vec![Term {
            poly: Polynomial::new(coeffs),
            exp_lambda: None,
        }])
    }

    pub fn real_polynomial(coeffs: &[f64]) -> Self {
        Self::polynomial(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn constant(c: C64) -> Self {
        Self::polynomial(vec![c])
    }

    /// `z ↦ z`.
    pub fn identity() -> Self {
        Self::real_polynomial(&[0.0, 1.0])
    }

    /// `z ↦ c · exp(λ z)`.
    pub fn exp(c: C64, lambda: C64) -> Self {
        Self::new(vec![Term {
            poly: Polynomial::new(vec![c]),
            exp_lambda: Some(lambda),
        }])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| t.exp_lambda.is_none())
    }

    /// True when every term has a zero polynomial factor.
    pub fn is_identically_zero(&self) -> bool {
        self.terms.iter().all(|t| t.poly.is_zero())
    }

    /// Sum as a concatenation of terms.
    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms }
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.terms.iter().map(|t| t.eval(z)).sum()
    }

    /// `r`-th derivative, applied one order at a time so that
    /// `deriv(deriv(f, a), b)` and `deriv(f, a + b)` agree bit for bit.
    pub fn deriv(&self, r: usize) -> Self {
        let mut terms = self.terms.clone();
        for _ in 0..r {
            terms = terms.iter().map(Term::derivative).collect();
        }
        Self { terms }
    }

    /// `[f, f', …, f^{(order)}]`.
    pub fn derivative_tower(&self, order: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(order + 1);
        out.push(self.clone());
        for _ in 0..order {
            let next = out.last().unwrap().deriv(1);
            out.push(next);
        }
        out
    }
}

/// Minimum node count accepted by the circle rules.
pub const MIN_NODES: usize = 16;

fn node(center: C64, radius: f64, k: usize, nodes: usize) -> C64 {
    center + C64::from_polar(radius, 2.0 * PI * k as f64 / nodes as f64)
}

/// `(1/2πi) ∮ g(t) dt` over the circle `|t − center| = radius` by the
/// trapezoidal rule with `nodes` equispaced points (raised to 16 if lower).
pub fn contour_quadrature(
    g: impl Fn(C64) -> C64,
    center: C64,
    radius: f64,
    nodes: usize,
) -> C64 {
    let nodes = nodes.max(MIN_NODES);
    let sum: C64 = (0..nodes)
        .map(|k| {
            let t = node(center, radius, k, nodes);
            g(t) * (t - center)
        })
        .sum();
    sum / nodes as f64
}

/// Settings for [`adaptive_contour_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub initial_nodes: usize,
    pub max_nodes: usize,
    /// Successive results must agree to this absolute tolerance (∞-norm).
    pub tol: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            initial_nodes: 256,
            max_nodes: 4096,
            tol: 1e-10,
        }
    }
}

impl QuadratureOptions {
    /// Default settings with a node cap; the starting level is lowered to half
    /// the cap when needed so at least one refinement can happen.
    pub fn with_max_nodes(max_nodes: usize) -> Self {
        let d = Self::default();
        Self {
            initial_nodes: d.initial_nodes.min(max_nodes / 2).max(MIN_NODES),
            max_nodes,
            ..d
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureOutcome {
    pub value: Vec<C64>,
    pub nodes: usize,
    pub converged: bool,
}

/// Vector-valued circle rule with node doubling.
///
/// Doubling reuses every previous evaluation: the new nodes are the midpoints.
/// Stops when two successive results agree to `opts.tol` or `max_nodes` is
/// reached, in which case `converged` is false.
pub fn adaptive_contour_quadrature<E>(
    mut g: impl FnMut(C64) -> Result<Vec<C64>, E>,
    center: C64,
    radius: f64,
    opts: QuadratureOptions,
) -> Result<QuadratureOutcome, E> {
    let mut nodes = opts.initial_nodes.max(MIN_NODES);
    let mut raw: Vec<C64> = Vec::new();
    let mut accumulate = |raw: &mut Vec<C64>, k: usize, total: usize| -> Result<(), E> {
        let t = node(center, radius, k, total);
        let v = g(t)?;
        if raw.is_empty() {
            raw.resize(v.len(), C64::new(0.0, 0.0));
        }
        let w = t - center;
        for (acc, x) in raw.iter_mut().zip(v) {
            *acc += x * w;
        }
        Ok(())
    };

    for k in 0..nodes {
        accumulate(&mut raw, k, nodes)?;
    }
    let mut value: Vec<C64> = raw.iter().map(|s| s / nodes as f64).collect();
    loop {
        if nodes * 2 > opts.max_nodes.max(nodes) {
            return Ok(QuadratureOutcome {
                value,
                nodes,
                converged: false,
            });
        }
        let doubled = nodes * 2;
        for k in (1..doubled).step_by(2) {
            accumulate(&mut raw, k, doubled)?;
        }
        nodes = doubled;
        let next: Vec<C64> = raw.iter().map(|s| s / nodes as f64).collect();
        let diff = next
            .iter()
            .zip(&value)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        value = next;
        if diff <= opts.tol {
            return Ok(QuadratureOutcome {
                value,
                nodes,
                converged: true,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let sq = HolomorphicFn::real_polynomial(&[0.0, 0.0, 1.0]);
        assert_eq!(sq.eval(c(1.0, 1.0)), c(0.0, 2.0));
        let e = HolomorphicFn::exp(c(1.0, 0.0), c(1.0, 0.0));
        assert_eq!(e.eval(c(0.0, 0.0)), c(1.0, 0.0));
        let cubic = HolomorphicFn::real_polynomial(&[0.0, -1.0, 0.0, 1.0]);
        assert_eq!(cubic.eval(c(2.0, 0.0)), c(6.0, 0.0));
    }

    #[test]
    fn deriv_examples() {
        let sq = HolomorphicFn::real_polynomial(&[0.0, 0.0, 1.0]);
        assert_eq!(sq.deriv(0), sq);
        assert_eq!(sq.deriv(1), HolomorphicFn::real_polynomial(&[0.0, 2.0]));
        assert_eq!(sq.deriv(2), HolomorphicFn::real_polynomial(&[2.0]));
        assert!(sq.deriv(3).is_identically_zero());

        let e2 = HolomorphicFn::exp(c(1.0, 0.0), c(2.0, 0.0));
        assert_eq!(e2.deriv(1), HolomorphicFn::exp(c(2.0, 0.0), c(2.0, 0.0)));

        // (z e^{iz})' = (1 + i z) e^{iz}
        let f = HolomorphicFn::new(vec![Term {
            poly: Polynomial::from_real(&[0.0, 1.0]),
            exp_lambda: Some(c(0.0, 1.0)),
        }]);
        assert_eq!(
            f.deriv(1).terms()[0].poly,
            Polynomial::new(vec![c(1.0, 0.0), c(0.0, 1.0)])
        );
    }

    #[test]
    fn polynomial_trims_and_degree() {
        let p = Polynomial::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::from_real(&[0.0]).degree(), None);
    }

    #[test]
    fn quadrature_simple_pole() {
        let cpt = c(0.3, -0.2);
        let v = contour_quadrature(|t| (t - cpt).inv(), c(0.0, 0.0), 1.0, 64);
        assert!((v - c(1.0, 0.0)).norm() < 1e-12);
        let v0 = contour_quadrature(|_| c(1.0, 0.0), c(2.0, 1.0), 0.5, 64);
        assert!(v0.norm() < 1e-15);
    }

    #[test]
    fn quadrature_double_pole() {
        // residue of t²/(t−c)² at c is 2c
        let cpt = c(0.2, 0.1);
        let v = contour_quadrature(|t| t * t / ((t - cpt) * (t - cpt)), c(0.0, 0.0), 1.0, 128);
        assert!((v - 2.0 * cpt).norm() < 1e-10);
    }

    #[test]
    fn adaptive_converges() {
        let cpt = c(0.1, 0.0);
        let out = adaptive_contour_quadrature::<()>(
            |t| Ok(vec![(t.exp()) / (t - cpt), c(1.0, 0.0)]),
            c(0.0, 0.0),
            1.0,
            QuadratureOptions::default(),
        )
        .unwrap();
        assert!(out.converged);
        assert_eq!(out.nodes, 512);
        assert!((out.value[0] - cpt.exp()).norm() < 1e-12);
        assert!(out.value[1].norm() < 1e-14);
    }

    #[test]
    fn adaptive_reports_cap() {
        // pole just outside the circle: slow convergence
        let cpt = c(1.0 + 1e-3, 0.0);
        let out = adaptive_contour_quadrature::<()>(
            |t| Ok(vec![(t - cpt).inv()]),
            c(0.0, 0.0),
            1.0,
            QuadratureOptions {
                initial_nodes: 16,
                max_nodes: 64,
                tol: 1e-10,
            },
        )
        .unwrap();
        assert!(!out.converged);
        assert_eq!(out.nodes, 64);
    }
}
