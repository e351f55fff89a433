//! Constant-coefficient PDEs `ℒ_N U = Σ_{|α|=N} C_α ∂^N U / ∂x^α = 0` and their
//! link to monogenic functions.
//!
//! For a monogenic `Φ`, `ℒ_N Φ = Φ^{(N)}(ζ) · Σ_α C_α e_2^{α_2} ⋯ e_k^{α_k}`, so
//! the components of `Φ` solve the equation exactly when that characteristic
//! sum vanishes.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::io::JsonComplex;
use crate::monogenic::{AlgebraValuedMap, SurjectivityReport, VariableFrame};
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct PdeTerm {
    pub alpha: Vec<u32>,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PdeSpec {
    order: u32,
    k: usize,
    terms: Vec<PdeTerm>,
}

impl PdeSpec {
    /// Every multi-index must have length `k >= 2` and sum to `order`, indices
    /// must be distinct, and at least one coefficient must be nonzero.
    pub fn new(order: u32, terms: Vec<PdeTerm>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::InvalidPde("no terms".into()));
        };
        let k = first.alpha.len();
        if k < 2 {
            return Err(Error::InvalidPde(format!(
                "multi-indices need at least 2 entries, got {k}"
            )));
        }
        let mut seen = BTreeSet::new();
        for t in &terms {
            if t.alpha.len() != k {
                return Err(Error::InvalidPde(format!(
                    "alpha {:?} has length {}, expected {k}",
                    t.alpha,
                    t.alpha.len()
                )));
            }
            let total: u32 = t.alpha.iter().sum();
            if total != order {
                return Err(Error::InvalidPde(format!(
                    "alpha {:?} sums to {total}, expected N = {order}",
                    t.alpha
                )));
            }
            if !t.c.is_finite() {
                return Err(Error::InvalidPde(format!(
                    "coefficient of {:?} is not finite",
                    t.alpha
                )));
            }
            if !seen.insert(t.alpha.clone()) {
                return Err(Error::InvalidPde(format!("alpha {:?} repeated", t.alpha)));
            }
        }
        if terms.iter().all(|t| t.c == 0.0) {
            return Err(Error::InvalidPde("all coefficients are zero".into()));
        }
        Ok(Self { order, k, terms })
    }

    /// `Δ_k = Σ_j ∂²/∂x_j²`.
    pub fn laplace(k: usize) -> Self {
        let terms = (0..k)
            .map(|j| {
                let mut alpha = vec![0; k];
                alpha[j] = 2;
                PdeTerm { alpha, c: 1.0 }
            })
            .collect();
        Self::new(2, terms).expect("laplace operator is well formed")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[PdeTerm] {
        &self.terms
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k != self.k {
            Err(Error::DimensionMismatch {
                expected: self.k,
                found: k,
            })
        } else {
            Ok(())
        }
    }
}

/// `Σ_α C_α e_2^{α_2} ⋯ e_k^{α_k}`; powers of `e_1` are the unit.
pub fn characteristic_sum(
    spec: &AlgebraSpec,
    frame: &VariableFrame,
    pde: &PdeSpec,
) -> Result<AlgebraElement> {
    pde.check_k(frame.k())?;
    let n_max = pde.order;
    // powers[j-2][a] = e_j^a
    let powers = (2..=frame.k())
        .map(|j| {
            let e = frame.vector(j);
            let mut acc = vec![spec.unit()];
            for _ in 0..n_max {
                let next = spec.mul(acc.last().unwrap(), &e)?;
                acc.push(next);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sum = spec.zero();
    for term in &pde.terms {
        let mut prod = spec.unit();
        for (j, &a) in term.alpha.iter().enumerate().skip(1) {
            if a > 0 {
                prod = spec.mul(&prod, &powers[j - 1][a as usize])?;
            }
        }
        sum.axpy(C64::new(term.c, 0.0), &prod);
    }
    Ok(sum)
}

/// `P(b_2, …, b_k) = Σ_α C_α b_2^{α_2} ⋯ b_k^{α_k}`.
pub fn p_polynomial_eval(pde: &PdeSpec, b: &[f64]) -> Result<f64> {
    pde.check_k(b.len() + 1)?;
    Ok(pde
        .terms
        .iter()
        .map(|t| {
            t.c * t.alpha[1..]
                .iter()
                .zip(b)
                .map(|(&a, &bj)| bj.powi(a as i32))
                .product::<f64>()
        })
        .sum())
}

/// `P` at complex arguments, e.g. `(a_{2u}, …, a_{ku})`.
pub fn p_polynomial_eval_complex(pde: &PdeSpec, b: &[C64]) -> Result<C64> {
    pde.check_k(b.len() + 1)?;
    Ok(pde
        .terms
        .iter()
        .map(|t| {
            t.alpha[1..]
                .iter()
                .zip(b)
                .map(|(&a, &bj)| bj.powu(a))
                .product::<C64>()
                * t.c
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanVerdict {
    /// `P` kept one strict sign on every grid point.
    NoRootFound,
    /// `P` took both signs, or hit zero, somewhere on the grid.
    SignChangeFound,
}

/// Outcome of a grid scan of `P`. A grid cannot prove that `P` never
/// vanishes, hence `heuristic` is always true.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PScanReport {
    pub heuristic: bool,
    pub points_evaluated: usize,
    pub min_abs: f64,
    pub argmin_abs: Vec<f64>,
    pub min_value: f64,
    pub max_value: f64,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub verdict: ScanVerdict,
}

/// Evaluates `P` on a tensor grid over `bounds` (one `[lo, hi]` per variable
/// `b_2..b_k`) with `grid_points` points per axis.
pub fn p_nonvanishing_scan(
    pde: &PdeSpec,
    bounds: &[[f64; 2]],
    grid_points: usize,
) -> Result<PScanReport> {
    pde.check_k(bounds.len() + 1)?;
    if grid_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid_points = {grid_points}, need at least 2"
        )));
    }
    let dims = bounds.len();
    let coord = |axis: usize, i: usize| {
        let [lo, hi] = bounds[axis];
        lo + (hi - lo) * i as f64 / (grid_points - 1) as f64
    };

    let mut idx = vec![0usize; dims];
    let mut b = vec![0.0; dims];
    let mut report = PScanReport {
        heuristic: true,
        points_evaluated: 0,
        min_abs: f64::INFINITY,
        argmin_abs: Vec::new(),
        min_value: f64::INFINITY,
        max_value: f64::NEG_INFINITY,
        positive: 0,
        negative: 0,
        zero: 0,
        verdict: ScanVerdict::NoRootFound,
    };
    loop {
        for (axis, (&i, bv)) in idx.iter().zip(b.iter_mut()).enumerate() {
            *bv = coord(axis, i);
        }
        let p = p_polynomial_eval(pde, &b)?;
        report.points_evaluated += 1;
        if p.abs() < report.min_abs {
            report.min_abs = p.abs();
            report.argmin_abs = b.clone();
        }
        report.min_value = report.min_value.min(p);
        report.max_value = report.max_value.max(p);
        match p.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => report.positive += 1,
            Some(std::cmp::Ordering::Less) => report.negative += 1,
            _ => report.zero += 1,
        }

        // odometer, last axis fastest
        let mut axis = dims;
        loop {
            if axis == 0 {
                report.verdict = if report.zero > 0 || (report.positive > 0 && report.negative > 0)
                {
                    ScanVerdict::SignChangeFound
                } else {
                    ScanVerdict::NoRootFound
                };
                return Ok(report);
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < grid_points {
                break;
            }
            idx[axis] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionCriterionReport {
    pub characteristic_sum: Vec<JsonComplex>,
    pub characteristic_sum_norm: f64,
    pub characteristic_sum_vanishes: bool,
    pub frame_independent: bool,
    pub p_scan: PScanReport,
    /// Characteristic sum vanishes, frame independent, and the scan found no root.
    pub hypotheses_hold: bool,
    pub surjectivity: SurjectivityReport,
    /// `|Σ_α C_α a_{2u}^{α_2} ⋯ a_{ku}^{α_k}|` per `u`.
    pub per_u_residuals: Vec<f64>,
    pub per_u_vanish: Vec<bool>,
    /// The conclusion `f_u(E_k) = ℂ` is only asserted when the hypotheses hold.
    pub conclusion_asserted: bool,
    pub conclusion_holds: bool,
    /// False only if the hypotheses hold but the conclusion does not.
    pub consistent: bool,
}

/// Tolerance for the per-idempotent characteristic identity.
pub const PER_U_TOL: f64 = 1e-10;

/// Checks the hypotheses and conclusion linking nonvanishing of `P` on real
/// arguments to `f_u(E_k) = ℂ`.
pub fn theorem4_check(
    spec: &AlgebraSpec,
    frame: &VariableFrame,
    pde: &PdeSpec,
    bounds: &[[f64; 2]],
    grid_points: usize,
    tol_check: f64,
) -> Result<SolutionCriterionReport> {
    let sum = characteristic_sum(spec, frame, pde)?;
    let norm = sum.norm_inf();
    let scan = p_nonvanishing_scan(pde, bounds, grid_points)?;
    let frame_independent = frame.real_rank() == frame.k();
    let vanishes = norm <= tol_check;
    let hypotheses_hold =
        vanishes && frame_independent && scan.verdict == ScanVerdict::NoRootFound;
    let surjectivity = frame.surjectivity_check(spec.tol_zero());

    let per_u_residuals = (1..=spec.m())
        .map(|u| {
            let args: Vec<C64> = (2..=frame.k()).map(|j| frame.a(j, u)).collect();
            p_polynomial_eval_complex(pde, &args).map(|v| v.norm())
        })
        .collect::<Result<Vec<_>>>()?;
    let per_u_vanish = per_u_residuals.iter().map(|&r| r <= PER_U_TOL).collect();

    let conclusion_holds = surjectivity.all;
    Ok(SolutionCriterionReport {
        characteristic_sum: sum.coeffs().iter().copied().map(JsonComplex).collect(),
        characteristic_sum_norm: norm,
        characteristic_sum_vanishes: vanishes,
        frame_independent,
        p_scan: scan,
        hypotheses_hold,
        surjectivity,
        per_u_residuals,
        per_u_vanish,
        conclusion_asserted: hypotheses_hold,
        conclusion_holds,
        consistent: !hypotheses_hold || conclusion_holds,
    })
}

/// Weights of the `d`-th derivative at 0 on the nodes `z` (Fornberg's method).
pub fn fd_weights(z: &[f64], d: usize) -> Vec<f64> {
    let n = z.len();
    let mut c = vec![vec![0.0; d + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = z[0];
    for i in 1..n {
        let mn = i.min(d);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = z[i];
        for j in 0..i {
            let c3 = z[i] - z[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[d]).collect()
}

/// Second-order central stencil for the `d`-th derivative: integer offsets
/// `-p..=p` with `p = ⌈d/2⌉`, paired with their weights (unit spacing).
pub fn central_stencil(d: usize) -> Vec<(i32, f64)> {
    if d == 0 {
        return vec![(0, 1.0)];
    }
    let p = d.div_ceil(2) as i32;
    let offsets: Vec<i32> = (-p..=p).collect();
    let z: Vec<f64> = offsets.iter().map(|&o| o as f64).collect();
    offsets
        .into_iter()
        .zip(fd_weights(&z, d))
        .filter(|&(_, w)| w != 0.0)
        .collect()
}

/// `1e-2 · (1 + ‖x‖∞)`.
pub fn default_pde_step(x: &[f64]) -> f64 {
    1e-2 * (1.0 + x.iter().fold(0.0_f64, |a, v| a.max(v.abs())))
}

/// `ℒ_N Φ(x)` by tensor products of second-order central stencils.
pub fn apply_operator(
    map: &impl AlgebraValuedMap,
    pde: &PdeSpec,
    x: &[f64],
    h: f64,
) -> Result<AlgebraElement> {
    pde.check_k(x.len())?;
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step h = {h} must be positive")));
    }
    let mut total: Option<AlgebraElement> = None;
    for term in &pde.terms {
        if term.c == 0.0 {
            continue;
        }
        let stencils: Vec<Vec<(i32, f64)>> =
            term.alpha.iter().map(|&a| central_stencil(a as usize)).collect();
        let scale = term.c / h.powi(pde.order as i32);

        // odometer over the tensor product of the per-axis stencils
        let mut idx = vec![0usize; stencils.len()];
        'outer: loop {
            let mut w = scale;
            let mut xp = x.to_vec();
            for (axis, (&i, st)) in idx.iter().zip(&stencils).enumerate() {
                let (off, wt) = st[i];
                w *= wt;
                xp[axis] += off as f64 * h;
            }
            let v = map.value_at(&xp)?;
            match total.as_mut() {
                Some(acc) => acc.axpy(C64::new(w, 0.0), &v),
                None => total = Some(v.scale(C64::new(w, 0.0))),
            }
            let mut axis = stencils.len();
            loop {
                if axis == 0 {
                    break 'outer;
                }
                axis -= 1;
                idx[axis] += 1;
                if idx[axis] < stencils[axis].len() {
                    break;
                }
                idx[axis] = 0;
            }
        }
    }
    let Some(total) = total else {
        return Err(Error::InvalidPde("all coefficients are zero".into()));
    };
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdeResidual {
    pub h: f64,
    /// Largest `|ℒ_N Re U_r|` or `|ℒ_N Im U_r|` over all components.
    pub residual: f64,
}

/// Finite-difference residual of `ℒ_N` applied to the real and imaginary
/// parts of every component of `Φ`.
pub fn check_pde_residual(
    map: &impl AlgebraValuedMap,
    pde: &PdeSpec,
    x: &[f64],
    h: f64,
) -> Result<PdeResidual> {
    let l = apply_operator(map, pde, x, h)?;
    Ok(PdeResidual {
        h,
        residual: l.max_abs_part(),
    })
}
