//! Seeded fixture suite behind `monogenic selftest`.
//!
//! Every check samples from a ChaCha stream seeded by the caller, so a report
//! is reproducible from its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::Result;
use crate::fixtures;
use crate::holomorphic::{HolomorphicFn, QuadratureOptions};
use crate::monogenic::special_forms::{
    distinct_idempotent_form, semi_simple_form, single_idempotent_form,
};
use crate::monogenic::{
    check_cauchy_riemann, eval_monogenic, eval_monogenic_contour, MonogenicFunction,
    VariableFrame,
};
use crate::pde::{
    characteristic_sum, check_pde_residual, p_nonvanishing_scan, PdeSpec, ScanVerdict,
};
use crate::resolvent::{degenerate_set, invert, resolvent};
use crate::C64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

/// Running maximum of an error measure against a fixed tolerance.
struct Tally {
    name: &'static str,
    samples: usize,
    max_error: f64,
    tolerance: f64,
    detail: Option<String>,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            samples: 0,
            max_error: 0.0,
            tolerance,
            detail: None,
        }
    }

    fn record(&mut self, err: f64) {
        self.samples += 1;
        // NaN must fail
        if !(err <= self.max_error) {
            self.max_error = err;
        }
    }

    fn fail(&mut self, why: String) {
        self.detail.get_or_insert(why);
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            passed: self.detail.is_none() && self.max_error <= self.tolerance,
            samples: self.samples,
            max_error: self.max_error,
            tolerance: self.tolerance,
            detail: self.detail,
        }
    }

    fn run(mut self, body: impl FnOnce(&mut Self) -> Result<()>) -> CheckResult {
        if let Err(e) = body(&mut self) {
            self.fail(e.to_string());
        }
        self.finish()
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rand_c(rng: &mut impl Rng, r: f64) -> C64 {
    c(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Idempotent coordinates bounded away from zero, so the element is
/// invertible.
fn random_invertible(rng: &mut impl Rng, spec: &AlgebraSpec) -> AlgebraElement {
    let coeffs = (1..=spec.n())
        .map(|r| {
            if r <= spec.m() {
                C64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(0.0..std::f64::consts::TAU))
            } else {
                rand_c(rng, 1.0)
            }
        })
        .collect();
    AlgebraElement::new(coeffs)
}

fn random_point(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn rel_err_to_unit(spec: &AlgebraSpec, a: &AlgebraElement, b: &AlgebraElement) -> Result<f64> {
    let prod = spec.mul(a, b)?;
    let scale = (a.norm_inf() * b.norm_inf()).max(1.0);
    Ok(prod.distance(&spec.unit())? / scale)
}

/// `p(ζ)` by Horner's rule in the algebra.
fn poly_in_algebra(spec: &AlgebraSpec, coeffs: &[C64], z: &AlgebraElement) -> Result<AlgebraElement> {
    let mut acc = spec.zero();
    for &a in coeffs.iter().rev() {
        acc = spec.mul(&acc, z)?;
        acc.axpy(a, &spec.unit());
    }
    Ok(acc)
}

fn validation() -> CheckResult {
    Tally::new("validation", 0.0).run(|t| {
        for (name, spec) in fixtures::valid_algebras() {
            t.record(0.0);
            let r = spec.validate();
            if !r.valid {
                t.fail(format!("{name} rejected: {:?}", r.violations));
            }
        }
        for (name, spec, triple) in fixtures::violating_algebras() {
            t.record(0.0);
            let r = spec.validate();
            if r.valid || !r.violations.iter().any(|v| v.triple() == triple) {
                t.fail(format!("{name} not rejected with {triple:?}"));
            }
        }
        Ok(())
    })
}

fn inverse(rng: &mut impl Rng) -> CheckResult {
    Tally::new("inverse", 1e-12).run(|t| {
        for (_, spec) in fixtures::valid_algebras() {
            for _ in 0..25 {
                let b = random_invertible(rng, &spec);
                let inv = invert(&spec, &b)?;
                t.record(rel_err_to_unit(&spec, &b, &inv)?);
            }
        }
        Ok(())
    })
}

fn resolvent_identity(rng: &mut impl Rng) -> CheckResult {
    Tally::new("resolvent_identity", 1e-12).run(|t| {
        for (_, spec) in fixtures::valid_algebras() {
            let frame = fixtures::generic_frame(&spec);
            let mut done = 0;
            while done < 25 {
                let x = random_point(rng, frame.k());
                let tt = rand_c(rng, 3.0);
                let xis = frame.xis(&x)?;
                if xis.iter().any(|xi| (tt - xi).norm() < 0.1) {
                    continue;
                }
                let r = resolvent(&spec, &frame, &x, tt)?;
                let lhs = spec.unit().scale(tt).sub(&frame.zeta(&x)?)?;
                t.record(rel_err_to_unit(&spec, &lhs, &r)?);
                done += 1;
            }
        }
        Ok(())
    })
}

fn mixed_function(spec: &AlgebraSpec, frame: VariableFrame) -> Result<MonogenicFunction> {
    let f = (0..spec.m())
        .map(|u| {
            if u % 2 == 0 {
                HolomorphicFn::real_polynomial(&[1.0, -0.5, 0.25, 0.1])
            } else {
                HolomorphicFn::exp(c(0.5, 0.0), c(0.3, -0.2))
            }
        })
        .collect();
    let g = (0..spec.n() - spec.m())
        .map(|s| {
            if s % 2 == 0 {
                HolomorphicFn::exp(c(1.0, 0.5), c(-0.4, 0.0))
            } else {
                HolomorphicFn::polynomial(vec![c(0.0, 1.0), c(0.5, 0.0), c(0.0, 0.0), c(0.2, 0.0)])
            }
        })
        .collect();
    MonogenicFunction::new(spec, frame, f, g)
}

fn representation(rng: &mut impl Rng) -> CheckResult {
    Tally::new("representation_equivalence", 1e-8).run(|t| {
        for (_, spec) in fixtures::valid_algebras() {
            let mf = mixed_function(&spec, fixtures::generic_frame(&spec))?;
            for _ in 0..5 {
                let x = random_point(rng, mf.frame().k());
                let a = eval_monogenic(&spec, &mf, &x)?;
                let b = eval_monogenic_contour(&spec, &mf, &x, QuadratureOptions::default())?;
                if !b.converged {
                    t.fail(format!("quadrature did not converge at {x:?}"));
                }
                t.record(a.distance(&b.value)?);
            }
        }
        Ok(())
    })
}

fn polynomial_calculus(rng: &mut impl Rng) -> CheckResult {
    Tally::new("polynomial_calculus", 1e-10).run(|t| {
        for (_, spec) in fixtures::valid_algebras() {
            let frame = fixtures::generic_frame(&spec);
            for deg in 0..=5 {
                let coeffs: Vec<C64> = (0..=deg).map(|_| rand_c(rng, 1.0)).collect();
                let mf = MonogenicFunction::uniform(
                    &spec,
                    frame.clone(),
                    HolomorphicFn::polynomial(coeffs.clone()),
                )?;
                let x = random_point(rng, frame.k());
                let a = eval_monogenic(&spec, &mf, &x)?;
                let b = poly_in_algebra(&spec, &coeffs, &frame.zeta(&x)?)?;
                t.record(a.distance(&b)? / b.norm_inf().max(1.0));
            }
        }
        Ok(())
    })
}

fn cauchy_riemann(rng: &mut impl Rng) -> CheckResult {
    Tally::new("cauchy_riemann", 1e-7).run(|t| {
        for (_, spec) in fixtures::valid_algebras() {
            let frame = fixtures::generic_frame(&spec);
            let mf = MonogenicFunction::uniform(
                &spec,
                frame.clone(),
                HolomorphicFn::real_polynomial(&[0.5, 1.0, -1.0, 0.5]),
            )?;
            let x = random_point(rng, frame.k());
            let r = check_cauchy_riemann(&spec, &frame, &mf.bind(&spec), &x, 1e-4)?;
            t.record(r.max_residual);
        }
        Ok(())
    })
}

type FormFn = fn(&AlgebraSpec, &MonogenicFunction, &[f64]) -> Result<AlgebraElement>;

fn special_forms(rng: &mut impl Rng) -> CheckResult {
    Tally::new("special_forms", 1e-12).run(|t| {
        let cases: [(AlgebraSpec, FormFn); 3] = [
            (fixtures::bicomplex(), semi_simple_form),
            (fixtures::prop2(), distinct_idempotent_form),
            (fixtures::prop1(), single_idempotent_form),
        ];
        for (spec, form) in cases {
            let mf = mixed_function(&spec, fixtures::generic_frame(&spec))?;
            for _ in 0..5 {
                let x = random_point(rng, mf.frame().k());
                let a = eval_monogenic(&spec, &mf, &x)?;
                let b = form(&spec, &mf, &x)?;
                t.record(a.distance(&b)? / b.norm_inf().max(1.0));
            }
        }
        Ok(())
    })
}

fn pde_bridge() -> CheckResult {
    Tally::new("pde_bridge", 1e-5).run(|t| {
        let spec = fixtures::bicomplex();
        let frame = fixtures::bicomplex_harmonic_frame(&spec);
        let laplace = PdeSpec::laplace(3);
        let sum = characteristic_sum(&spec, &frame, &laplace)?;
        t.record(sum.norm_inf());
        let mf = MonogenicFunction::new(
            &spec,
            frame,
            vec![
                HolomorphicFn::real_polynomial(&[0.0, 1.0, 0.5, 1.0]),
                HolomorphicFn::polynomial(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)]),
            ],
            vec![],
        )?;
        let r = check_pde_residual(&mf.bind(&spec), &laplace, &[0.3, -0.2, 0.5], 1e-2)?;
        t.record(r.residual);
        let scan = p_nonvanishing_scan(&fixtures::third_order_example(), &[[-10.0, 10.0]; 3], 11)?;
        if scan.verdict != ScanVerdict::NoRootFound || scan.min_value != 1.0 {
            t.fail(format!("unexpected scan {scan:?}"));
        }
        Ok(())
    })
}

fn lemma2(rng: &mut impl Rng) -> CheckResult {
    Tally::new("degenerate_direction", 1e-10).run(|t| {
        for (_, spec) in fixtures::valid_algebras() {
            let mf = mixed_function(&spec, fixtures::generic_frame(&spec))?;
            let frame = mf.frame();
            for u in 1..=spec.m() {
                let ds = degenerate_set(frame, u)?;
                for dir in ds.kernel_basis(1e-12) {
                    for _ in 0..3 {
                        let x1 = random_point(rng, frame.k());
                        let lam = rng.gen_range(-1.0..1.0);
                        let x2: Vec<f64> = x1.iter().zip(&dir).map(|(a, d)| a + lam * d).collect();
                        let p1 = eval_monogenic(&spec, &mf, &x1)?;
                        let p2 = eval_monogenic(&spec, &mf, &x2)?;
                        t.record((spec.functional(u, &p2)? - spec.functional(u, &p1)?).norm());
                    }
                }
            }
        }
        Ok(())
    })
}

/// Runs every check. Deterministic for a given seed.
pub fn run_selftest(seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = vec![
        validation(),
        inverse(&mut rng),
        resolvent_identity(&mut rng),
        representation(&mut rng),
        polynomial_calculus(&mut rng),
        cauchy_riemann(&mut rng),
        special_forms(&mut rng),
        pde_bridge(),
        lemma2(&mut rng),
    ];
    let all_passed = checks.iter().all(|c| c.passed);
    SelftestReport {
        seed,
        checks,
        all_passed,
    }
}
