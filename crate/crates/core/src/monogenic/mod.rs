//! Monogenic functions of `ζ = Σ x_j e_j`, built from holomorphic components.
//!
//! A [`MonogenicFunction`] holds `m` functions `F_u` and `n − m` functions
//! `G_s`. Its value is
//!
//! ```text
//! Φ(ζ) = Σ_u I_u (1/2πi) ∮_{Γ_u} F_u(t) (t e_1 − ζ)^{-1} dt
//!      + Σ_s I_s (1/2πi) ∮_{Γ_{u_s}} G_s(t) (t e_1 − ζ)^{-1} dt
//! ```
//!
//! [`eval_monogenic`] evaluates the residues in closed form;
//! [`eval_monogenic_contour`] integrates numerically.

mod cauchy_riemann;
mod frame;
pub mod special_forms;

pub use cauchy_riemann::{
    check_cauchy_riemann, default_cr_step, AlgebraValuedMap, ComponentMap, CrReport,
};
pub use frame::{SurjectivityReport, VariableFrame};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::holomorphic::{adaptive_contour_quadrature, HolomorphicFn, QuadratureOptions};
use crate::resolvent::{resolvent_with, QTable};
use crate::C64;

/// Two `ξ` values closer than this admit no separating contour.
pub const CONTOUR_COINCIDENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct MonogenicFunction {
    frame: VariableFrame,
    f: Vec<HolomorphicFn>,
    g: Vec<HolomorphicFn>,
}

impl MonogenicFunction {
    /// `f` holds `F_1..F_m`, `g` holds `G_{m+1}..G_n`.
    ///
    /// Logs a warning when `f_u(E_k) ≠ ℂ` for some `u`: the representation is
    /// still evaluated, but it need not describe every monogenic function.
    pub fn new(
        spec: &AlgebraSpec,
        frame: VariableFrame,
        f: Vec<HolomorphicFn>,
        g: Vec<HolomorphicFn>,
    ) -> Result<Self> {
        if frame.m() != spec.m() || frame.n() != spec.n() {
            return Err(Error::InvalidFrame(format!(
                "frame built for m = {}, n = {} used with m = {}, n = {}",
                frame.m(),
                frame.n(),
                spec.m(),
                spec.n()
            )));
        }
        if f.len() != spec.m() {
            return Err(Error::DimensionMismatch {
                expected: spec.m(),
                found: f.len(),
            });
        }
        if g.len() != spec.n() - spec.m() {
            return Err(Error::DimensionMismatch {
                expected: spec.n() - spec.m(),
                found: g.len(),
            });
        }
        let surj = frame.surjectivity_check(spec.tol_zero());
        if !surj.all {
            log::warn!(
                "f_u(E_k) != C for some u (per-u: {:?}); representation may be incomplete",
                surj.per_u
            );
        }
        Ok(Self { frame, f, g })
    }

    /// Same `F_u = p` for every idempotent, `G ≡ 0`.
    pub fn uniform(spec: &AlgebraSpec, frame: VariableFrame, p: HolomorphicFn) -> Result<Self> {
        let m = spec.m();
        let nil = spec.n() - m;
        Self::new(spec, frame, vec![p; m], vec![HolomorphicFn::zero(); nil])
    }

    pub fn frame(&self) -> &VariableFrame {
        &self.frame
    }

    pub fn f(&self) -> &[HolomorphicFn] {
        &self.f
    }

    pub fn g(&self) -> &[HolomorphicFn] {
        &self.g
    }

    pub fn bind<'a>(&'a self, spec: &'a AlgebraSpec) -> BoundMonogenic<'a> {
        BoundMonogenic { spec, mf: self }
    }
}

/// A monogenic function paired with its algebra, usable as a map ℝ^k → 𝔸.
#[derive(Debug, Clone, Copy)]
pub struct BoundMonogenic<'a> {
    pub spec: &'a AlgebraSpec,
    pub mf: &'a MonogenicFunction,
}

impl AlgebraValuedMap for BoundMonogenic<'_> {
    fn value_at(&self, x: &[f64]) -> Result<AlgebraElement> {
        eval_monogenic(self.spec, self.mf, x)
    }
}

/// Taylor data `h^{(d)}(z) / d!` for `d = 0..=depth`.
fn scaled_derivatives(h: &HolomorphicFn, z: C64, depth: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(depth + 1);
    let mut fact = 1.0;
    let mut cur = h.clone();
    for d in 0..=depth {
        if d > 0 {
            fact *= d as f64;
            cur = cur.deriv(1);
        }
        out.push(cur.eval(z) / fact);
    }
    out
}

/// Residue form of the representation.
///
/// ```text
/// Φ = Σ_u F_u(ξ_u) I_u + Σ_s Σ_r Q_{r,s} F_{u_s}^{(r-1)}(ξ_{u_s})/(r-1)! I_s
///   + Σ_q G_q(ξ_{u_q}) I_q + Σ_{q,s: u_s = u_q} Σ_r Q_{r,s} G_q^{(r-1)}(ξ_{u_q})/(r-1)! I_q I_s
/// ```
///
/// Pairs with `u_s ≠ u_q` are skipped: their pole lies outside `Γ_{u_q}`.
pub fn eval_monogenic(
    spec: &AlgebraSpec,
    mf: &MonogenicFunction,
    x: &[f64],
) -> Result<AlgebraElement> {
    let table = QTable::for_point(spec, &mf.frame, x)?;
    let xis = mf.frame.xis(x)?;
    Ok(eval_with_table(spec, mf, &table, &xis))
}

fn eval_with_table(
    spec: &AlgebraSpec,
    mf: &MonogenicFunction,
    table: &QTable,
    xis: &[C64],
) -> AlgebraElement {
    let m = spec.m();
    let depth = spec.n() - m;
    let mut out = spec.zero();

    let f_taylor: Vec<Vec<C64>> = mf
        .f
        .iter()
        .zip(xis)
        .map(|(fu, &xi)| scaled_derivatives(fu, xi, depth))
        .collect();

    for u in 1..=m {
        out.coeffs_mut()[u - 1] = f_taylor[u - 1][0];
    }
    for s in spec.nilpotent_indices() {
        let taylor = &f_taylor[spec.u_of(s) - 1];
        let acc: C64 = (2..=s - m + 1)
            .map(|r| table.q(r, s).unwrap_or_default() * taylor[r - 1])
            .sum();
        out.coeffs_mut()[s - 1] += acc;
    }

    for q in spec.nilpotent_indices() {
        let gq = &mf.g[q - m - 1];
        if gq.is_identically_zero() {
            continue;
        }
        let uq = spec.u_of(q);
        let taylor = scaled_derivatives(gq, xis[uq - 1], depth);
        out.coeffs_mut()[q - 1] += taylor[0];
        for s in spec.nilpotent_indices().filter(|&s| spec.u_of(s) == uq) {
            let coef: C64 = (2..=s - m + 1)
                .map(|r| table.q(r, s).unwrap_or_default() * taylor[r - 1])
                .sum();
            if coef == C64::new(0.0, 0.0) {
                continue;
            }
            for (p, c) in spec.basis_product(q, s) {
                out.coeffs_mut()[p - 1] += coef * c;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourEvaluation {
    pub value: AlgebraElement,
    /// Common radius of every circle.
    pub radius: f64,
    /// Largest node count any circle needed.
    pub max_nodes: usize,
    /// False when some circle hit the node cap before converging.
    pub converged: bool,
}

/// Radius of the circles around each `ξ_u`: half the minimum pairwise
/// distance, capped at 1.
pub fn contour_radius(xis: &[C64]) -> Result<f64> {
    let mut min_dist = f64::INFINITY;
    for a in 0..xis.len() {
        for b in a + 1..xis.len() {
            let d = (xis[a] - xis[b]).norm();
            if d <= CONTOUR_COINCIDENCE_TOL {
                return Err(Error::ContourDegenerate { a: a + 1, b: b + 1 });
            }
            min_dist = min_dist.min(d);
        }
    }
    Ok((0.5 * min_dist).min(1.0))
}

/// Integral form of the representation, by adaptive trapezoidal quadrature
/// on circles centred at the `ξ_u`.
pub fn eval_monogenic_contour(
    spec: &AlgebraSpec,
    mf: &MonogenicFunction,
    x: &[f64],
    opts: QuadratureOptions,
) -> Result<ContourEvaluation> {
    let xis = mf.frame.xis(x)?;
    let radius = contour_radius(&xis)?;
    let table = QTable::for_point(spec, &mf.frame, x)?;

    let m = spec.m();
    let mut value = spec.zero();
    let mut max_nodes = 0;
    let mut converged = true;

    let pieces = mf
        .f
        .iter()
        .enumerate()
        .map(|(i, fu)| (i + 1, i + 1, fu))
        .chain(
            mf.g
                .iter()
                .enumerate()
                .map(|(i, gs)| (m + 1 + i, spec.u_of(m + 1 + i), gs)),
        );
    for (slot, centre_u, func) in pieces {
        if func.is_identically_zero() {
            continue;
        }
        let out = adaptive_contour_quadrature(
            |t| {
                let r = resolvent_with(spec, &table, &xis, t)?;
                let ft = func.eval(t);
                Ok::<_, Error>(r.into_coeffs().into_iter().map(|c| c * ft).collect())
            },
            xis[centre_u - 1],
            radius,
            opts,
        )?;
        max_nodes = max_nodes.max(out.nodes);
        converged &= out.converged;
        let integral = AlgebraElement::new(out.value);
        let term = spec.mul(&spec.basis(slot)?, &integral)?;
        value.axpy(C64::new(1.0, 0.0), &term);
    }
    if !converged {
        log::warn!("contour quadrature hit the node cap before converging");
    }
    Ok(ContourEvaluation {
        value,
        radius,
        max_nodes,
        converged,
    })
}

/// The Gateaux derivative of order `r`: the same frame with every component
/// differentiated `r` times.
pub fn gateaux_derivative(mf: &MonogenicFunction, r: usize) -> MonogenicFunction {
    MonogenicFunction {
        frame: mf.frame.clone(),
        f: mf.f.iter().map(|h| h.deriv(r)).collect(),
        g: mf.g.iter().map(|h| h.deriv(r)).collect(),
    }
}

/// Rectangular grid in ℝ^k: `steps[i]` equispaced points on `ranges[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub ranges: Vec<[f64; 2]>,
    pub steps: Vec<usize>,
}

impl GridSpec {
    pub fn validate(&self, k: usize) -> Result<()> {
        if self.ranges.len() != k || self.steps.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: self.ranges.len().min(self.steps.len()),
            });
        }
        if self.steps.contains(&0) {
            return Err(Error::InvalidArgument(
                "grid step counts must be positive".into(),
            ));
        }
        Ok(())
    }

    fn axis(&self, i: usize) -> Vec<f64> {
        let [lo, hi] = self.ranges[i];
        let steps = self.steps[i];
        if steps == 1 {
            return vec![lo];
        }
        (0..steps)
            .map(|j| lo + (hi - lo) * j as f64 / (steps - 1) as f64)
            .collect()
    }

    /// All grid points, last coordinate varying fastest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let axes: Vec<Vec<f64>> = (0..self.ranges.len()).map(|i| self.axis(i)).collect();
        let mut out = vec![Vec::new()];
        for axis in &axes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }
}
