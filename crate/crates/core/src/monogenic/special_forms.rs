//! Closed forms of the representation for three special classes of algebra.
//!
//! These are written out directly from the frame and the components, without
//! going through [`super::eval_monogenic`], so they can serve as independent
//! cross-checks.

use super::MonogenicFunction;
use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::resolvent::QTable;
use crate::C64;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `m = n`: `Φ = Σ F_u(ξ_u) I_u`.
pub fn semi_simple_form(
    spec: &AlgebraSpec,
    mf: &MonogenicFunction,
    x: &[f64],
) -> Result<AlgebraElement> {
    if !spec.is_semi_simple() {
        return Err(Error::InvalidArgument("algebra is not semi-simple".into()));
    }
    let xis = mf.frame().xis(x)?;
    Ok(AlgebraElement::new(
        mf.f().iter().zip(&xis).map(|(f, &xi)| f.eval(xi)).collect(),
    ))
}

/// All `u_s` equal to a single `η`:
///
/// ```text
/// Φ = Σ_u F_u(ξ_u) I_u + Σ_s Σ_r Q_{r,s} F_η^{(r-1)}(ξ_η)/(r-1)! I_s
///   + Σ_s G_s(ξ_η) I_s + Σ_q Σ_s Σ_r Q_{r,s} G_q^{(r-1)}(ξ_η)/(r-1)! I_s I_q
/// ```
pub fn single_idempotent_form(
    spec: &AlgebraSpec,
    mf: &MonogenicFunction,
    x: &[f64],
) -> Result<AlgebraElement> {
    let m = spec.m();
    let nil: Vec<usize> = spec.nilpotent_indices().collect();
    let Some(&first) = nil.first() else {
        return Err(Error::InvalidArgument("algebra has no radical".into()));
    };
    let eta = spec.u_of(first);
    if nil.iter().any(|&s| spec.u_of(s) != eta) {
        return Err(Error::InvalidArgument("u_s are not all equal".into()));
    }
    let frame = mf.frame();
    let xis = frame.xis(x)?;
    let xi_eta = xis[eta - 1];
    let q = QTable::for_point(spec, frame, x)?;

    let mut out = spec.zero();
    for u in 1..=m {
        out.coeffs_mut()[u - 1] += mf.f()[u - 1].eval(xis[u - 1]);
    }
    let f_eta = &mf.f()[eta - 1];
    for &s in &nil {
        for r in 2..=s - m + 1 {
            let term = q.q(r, s).unwrap() * f_eta.deriv(r - 1).eval(xi_eta) / factorial(r - 1);
            out.coeffs_mut()[s - 1] += term;
        }
        out.coeffs_mut()[s - 1] += mf.g()[s - m - 1].eval(xi_eta);
    }
    for &qi in &nil {
        let gq = &mf.g()[qi - m - 1];
        for &s in &nil {
            let mut coef = C64::new(0.0, 0.0);
            for r in 2..=s - m + 1 {
                coef += q.q(r, s).unwrap() * gq.deriv(r - 1).eval(xi_eta) / factorial(r - 1);
            }
            let prod = spec.mul(&spec.basis(s)?, &spec.basis(qi)?)?;
            out.axpy(coef, &prod);
        }
    }
    Ok(out)
}

/// All `u_s` distinct (so the radical squares to zero):
///
/// ```text
/// Φ = Σ_u F_u(ξ_u) I_u + Σ_s G_s(ξ_{u_s}) I_s + Σ_s T_s F'_{u_s}(ξ_{u_s}) I_s
/// ```
pub fn distinct_idempotent_form(
    spec: &AlgebraSpec,
    mf: &MonogenicFunction,
    x: &[f64],
) -> Result<AlgebraElement> {
    let m = spec.m();
    let mut us: Vec<usize> = spec.nilpotent_indices().map(|s| spec.u_of(s)).collect();
    us.sort_unstable();
    if us.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("u_s are not pairwise distinct".into()));
    }
    let frame = mf.frame();
    let xis = frame.xis(x)?;
    let t = frame.radical_coords(x)?;
    let mut out = spec.zero();
    for u in 1..=m {
        out.coeffs_mut()[u - 1] = mf.f()[u - 1].eval(xis[u - 1]);
    }
    for s in spec.nilpotent_indices() {
        let us = spec.u_of(s);
        let xi = xis[us - 1];
        out.coeffs_mut()[s - 1] =
            mf.g()[s - m - 1].eval(xi) + t[s - m - 1] * mf.f()[us - 1].deriv(1).eval(xi);
    }
    Ok(out)
}
