use serde::Serialize;

use super::VariableFrame;
use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::C64;

/// Anything that can be sampled as `Φ(x_1, …, x_k) ∈ 𝔸`.
pub trait AlgebraValuedMap {
    fn value_at(&self, x: &[f64]) -> Result<AlgebraElement>;
}

type Component = Box<dyn Fn(&[f64]) -> C64 + Send + Sync>;

/// An arbitrary map given slot by slot, `U_r(x)` for `r = 1..n`.
///
/// Unlike [`super::MonogenicFunction`] this can express functions that are
/// not monogenic, which is what negative controls need.
pub struct ComponentMap {
    components: Vec<Component>,
}

impl ComponentMap {
    pub fn new(components: Vec<Component>) -> Self {
        Self { components }
    }
}

impl AlgebraValuedMap for ComponentMap {
    fn value_at(&self, x: &[f64]) -> Result<AlgebraElement> {
        Ok(AlgebraElement::new(
            self.components.iter().map(|u| u(x)).collect(),
        ))
    }
}

impl<F> AlgebraValuedMap for F
where
    F: Fn(&[f64]) -> Result<AlgebraElement>,
{
    fn value_at(&self, x: &[f64]) -> Result<AlgebraElement> {
        self(x)
    }
}

/// `1e-4 · (1 + ‖x‖∞)`.
pub fn default_cr_step(x: &[f64]) -> f64 {
    1e-4 * (1.0 + x.iter().fold(0.0_f64, |a, v| a.max(v.abs())))
}

/// Central difference `∂Φ/∂x_j`, `j` 0-based.
pub(crate) fn partial(
    map: &impl AlgebraValuedMap,
    x: &[f64],
    j: usize,
    h: f64,
) -> Result<AlgebraElement> {
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    xp[j] += h;
    xm[j] -= h;
    let d = map.value_at(&xp)?.sub(&map.value_at(&xm)?)?;
    Ok(d.scale(C64::new(0.5 / h, 0.0)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrReport {
    pub h: f64,
    /// `residuals[j-2] = ‖∂Φ/∂x_j − (∂Φ/∂x_1) e_j‖∞` for `j = 2..k`.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

/// Numerical Cauchy–Riemann check `∂Φ/∂x_j = (∂Φ/∂x_1) e_j` at `x`.
pub fn check_cauchy_riemann(
    spec: &AlgebraSpec,
    frame: &VariableFrame,
    map: &impl AlgebraValuedMap,
    x: &[f64],
    h: f64,
) -> Result<CrReport> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step h = {h} must be positive")));
    }
    if x.len() != frame.k() {
        return Err(Error::DimensionMismatch {
            expected: frame.k(),
            found: x.len(),
        });
    }
    let d1 = partial(map, x, 0, h)?;
    let residuals = (2..=frame.k())
        .map(|j| {
            let dj = partial(map, x, j - 1, h)?;
            let rhs = spec.mul(&d1, &frame.vector(j))?;
            dj.distance(&rhs)
        })
        .collect::<Result<Vec<f64>>>()?;
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(CrReport {
        h,
        residuals,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::holomorphic::HolomorphicFn;
    use crate::monogenic::MonogenicFunction;

    #[test]
    fn square_is_monogenic() {
        let spec = fixtures::cubic_nil();
        let frame = fixtures::generic_frame(&spec);
        let mf = MonogenicFunction::uniform(
            &spec,
            frame.clone(),
            HolomorphicFn::real_polynomial(&[0.0, 0.0, 1.0]),
        )
        .unwrap();
        let x = [0.3, -0.5, 0.7];
        let r = check_cauchy_riemann(&spec, &frame, &mf.bind(&spec), &x, 1e-4).unwrap();
        assert_eq!(r.residuals.len(), 2);
        assert!(r.max_residual <= 1e-7, "{r:?}");
    }

    #[test]
    fn constant_has_zero_residual() {
        let spec = fixtures::bicomplex();
        let frame = fixtures::bicomplex_harmonic_frame(&spec);
        let mf = MonogenicFunction::uniform(
            &spec,
            frame.clone(),
            HolomorphicFn::constant(C64::new(3.0, 1.0)),
        )
        .unwrap();
        let r = check_cauchy_riemann(&spec, &frame, &mf.bind(&spec), &[1.0, 2.0, 3.0], 1e-3)
            .unwrap();
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn raw_map_is_flagged() {
        let spec = fixtures::complex_plane();
        let frame = fixtures::complex_frame(&spec);
        // U(x) = x1², which ignores the ξ structure
        let map = ComponentMap::new(vec![Box::new(|x: &[f64]| C64::new(x[0] * x[0], 0.0))]);
        let r = check_cauchy_riemann(&spec, &frame, &map, &[0.7, 0.2], 1e-4).unwrap();
        assert!(r.max_residual > 1.0);
    }

    #[test]
    fn rejects_bad_step() {
        let spec = fixtures::complex_plane();
        let frame = fixtures::complex_frame(&spec);
        let map = |_: &[f64]| Ok(spec.unit());
        assert!(check_cauchy_riemann(&spec, &frame, &map, &[0.0, 0.0], 0.0).is_err());
        assert!(check_cauchy_riemann(&spec, &frame, &map, &[0.0], 1e-3).is_err());
    }
}
