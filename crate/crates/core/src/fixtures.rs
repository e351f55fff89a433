//! Named algebras, frames, and equations used by tests, `selftest`, and the
//! acceptance harness.

use crate::algebra::{AlgebraSpec, StructureConstant};
use crate::monogenic::VariableFrame;
use crate::pde::{PdeSpec, PdeTerm};
use crate::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn sc(r: usize, s: usize, p: usize, v: C64) -> StructureConstant {
    StructureConstant::new(r, s, p, v)
}

fn build(
    m: usize,
    n: usize,
    upsilon: Vec<StructureConstant>,
    u_map: Vec<(usize, usize)>,
) -> AlgebraSpec {
    AlgebraSpec::new(m, n, upsilon, u_map).expect("fixture algebra is well formed")
}

/// ℂ itself: `m = n = 1`.
pub fn complex_plane() -> AlgebraSpec {
    build(1, 1, vec![], vec![])
}

/// Bicomplex numbers in idempotent coordinates: `m = n = 2`.
pub fn bicomplex() -> AlgebraSpec {
    build(2, 2, vec![], vec![])
}

/// Dual numbers: `I₂² = 0`.
pub fn dual() -> AlgebraSpec {
    build(1, 2, vec![], vec![(2, 1)])
}

/// `m = 1, n = 3` with `I₂² = I₃`.
pub fn cubic_nil() -> AlgebraSpec {
    build(1, 3, vec![sc(2, 2, 3, c(1.0, 0.0))], vec![(2, 1), (3, 1)])
}

/// `m = 1, n = 4`: `I₂² = I₃`, `I₂I₃ = I₄` (so `I₂` has nilpotency index 4).
pub fn chain4() -> AlgebraSpec {
    build(
        1,
        4,
        vec![sc(2, 2, 3, c(1.0, 0.0)), sc(2, 3, 4, c(1.0, 0.0))],
        vec![],
    )
}

/// `m = 2, n = 4`, `u₃ = 1, u₄ = 2`, radical squares to zero.
pub fn prop2() -> AlgebraSpec {
    build(2, 4, vec![], vec![(3, 1), (4, 2)])
}

/// `m = 2, n = 6`, every `u_s = 1`, nontrivial structure constants.
pub fn prop1() -> AlgebraSpec {
    build(
        2,
        6,
        vec![
            sc(3, 3, 5, c(1.0, 0.0)),
            sc(3, 4, 5, c(2.0, 0.0)),
            sc(3, 4, 6, c(1.0, 0.0)),
            sc(4, 4, 6, c(1.0, 1.0)),
        ],
        (3..=6).map(|s| (s, 1)).collect(),
    )
}

/// `m = 2, n = 5`: `u₃ = u₄ = 1`, `u₅ = 2`, `I₃² = I₄`.
pub fn mixed() -> AlgebraSpec {
    build(
        2,
        5,
        vec![sc(3, 3, 4, c(1.0, 0.0))],
        vec![(3, 1), (4, 1), (5, 2)],
    )
}

/// Every valid fixture algebra with its name.
pub fn valid_algebras() -> Vec<(&'static str, AlgebraSpec)> {
    vec![
        ("complex_plane", complex_plane()),
        ("bicomplex", bicomplex()),
        ("dual", dual()),
        ("cubic_nil", cubic_nil()),
        ("chain4", chain4()),
        ("prop2", prop2()),
        ("prop1", prop1()),
        ("mixed", mixed()),
    ]
}

pub fn algebra_by_name(name: &str) -> Option<AlgebraSpec> {
    valid_algebras()
        .into_iter()
        .chain(violating_algebras().into_iter().map(|(n, s, _)| (n, s)))
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s)
}

/// `I₂I₂ = I₃` and `I₃I₃ = I₄` without `I₂I₃`: `(I₂I₂)I₃ ≠ I₂(I₂I₃)`.
pub fn broken_a1() -> AlgebraSpec {
    build(
        1,
        4,
        vec![sc(2, 2, 3, c(1.0, 0.0)), sc(3, 3, 4, c(1.0, 0.0))],
        vec![],
    )
}

/// `I₃I₃ = I₅` with `u₃ = 1` but `u₅ = 2`: `I₁(I₃I₃) ≠ (I₁I₃)I₃`.
pub fn broken_a2() -> AlgebraSpec {
    build(
        2,
        5,
        vec![sc(3, 3, 5, c(1.0, 0.0))],
        vec![(3, 1), (4, 1), (5, 2)],
    )
}

/// Distinct `u_s` with a nonzero radical product.
pub fn prop2_contradiction() -> AlgebraSpec {
    build(2, 4, vec![sc(3, 3, 4, c(1.0, 0.0))], vec![(3, 1), (4, 2)])
}

/// Violation fixtures with the offending triple each must be reported with.
pub fn violating_algebras() -> Vec<(&'static str, AlgebraSpec, (usize, usize, usize))> {
    vec![
        ("broken_a1", broken_a1(), (2, 2, 3)),
        ("broken_a2", broken_a2(), (1, 3, 3)),
        ("prop2_contradiction", prop2_contradiction(), (3, 3, 4)),
    ]
}

/// `e₂ = i` in ℂ.
pub fn complex_frame(spec: &AlgebraSpec) -> VariableFrame {
    VariableFrame::new(spec, vec![vec![c(0.0, 1.0)]]).expect("complex frame")
}

/// Harmonic triad `e₂ = iI₁`, `e₃ = iI₂` in the bicomplex algebra.
pub fn bicomplex_harmonic_frame(spec: &AlgebraSpec) -> VariableFrame {
    VariableFrame::new(
        spec,
        vec![vec![c(0.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]],
    )
    .expect("bicomplex frame")
}

/// `e₂ = I₂`, `e₃ = I₃` in [`cubic_nil`].
pub fn cubic_nil_axis_frame(spec: &AlgebraSpec) -> VariableFrame {
    let mut e2 = vec![c(0.0, 0.0); 3];
    let mut e3 = vec![c(0.0, 0.0); 3];
    e2[1] = c(1.0, 0.0);
    e3[2] = c(1.0, 0.0);
    VariableFrame::new(spec, vec![e2, e3]).expect("axis frame")
}

/// A deterministic frame with nonzero imaginary parts on every idempotent
/// and distinct `ξ_u`; `k = 2` for `n = 1`, otherwise `k = 3`.
pub fn generic_frame(spec: &AlgebraSpec) -> VariableFrame {
    let n = spec.n();
    let m = spec.m();
    if n == 1 {
        return VariableFrame::new(spec, vec![vec![c(0.25, 1.0)]]).expect("generic frame");
    }
    let e2: Vec<C64> = (1..=n)
        .map(|r| {
            let t = r as f64;
            if r <= m {
                c(0.1 * t, 0.8 + 0.45 * t)
            } else {
                c(0.5 - 0.15 * t, 0.3 + 0.1 * t)
            }
        })
        .collect();
    let e3: Vec<C64> = (1..=n)
        .map(|r| {
            let t = r as f64;
            if r <= m {
                c(-0.3 + 0.2 * t, 0.6 - 0.9 * t)
            } else {
                c(0.2 * t - 0.7, -0.4 + 0.05 * t)
            }
        })
        .collect();
    VariableFrame::new(spec, vec![e2, e3]).expect("generic frame")
}

/// `∂³/∂x₁³ + ∂³/∂x₁∂x₂² + ∂³/∂x₁∂x₃² + ∂³/∂x₁∂x₄²` on ℝ⁴, whose real
/// characteristic polynomial is `1 + b₂² + b₃² + b₄²`.
pub fn third_order_example() -> PdeSpec {
    PdeSpec::new(
        3,
        vec![
            PdeTerm {
                alpha: vec![3, 0, 0, 0],
                c: 1.0,
            },
            PdeTerm {
                alpha: vec![1, 2, 0, 0],
                c: 1.0,
            },
            PdeTerm {
                alpha: vec![1, 0, 2, 0],
                c: 1.0,
            },
            PdeTerm {
                alpha: vec![1, 0, 0, 2],
                c: 1.0,
            },
        ],
    )
    .expect("third-order example")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_fixtures_validate() {
        for (name, spec) in valid_algebras() {
            let r = spec.validate();
            assert!(r.valid, "{name}: {:?}", r.violations);
            let f = generic_frame(&spec);
            assert!(f.surjectivity_check(1e-12).all, "{name}");
            let xis = f.xis(&[0.3, 0.7, -0.2][..f.k()]).unwrap();
            for a in 0..xis.len() {
                for b in a + 1..xis.len() {
                    assert!((xis[a] - xis[b]).norm() > 0.1, "{name}");
                }
            }
        }
    }

    #[test]
    fn violation_fixtures_report_their_triple() {
        for (name, spec, triple) in violating_algebras() {
            let r = spec.validate();
            assert!(!r.valid, "{name}");
            assert!(
                r.violations.iter().any(|v| v.triple() == triple),
                "{name}: {:?}",
                r.violations
            );
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(algebra_by_name("dual"), Some(dual()));
        assert_eq!(algebra_by_name("broken_a1"), Some(broken_a1()));
        assert!(algebra_by_name("nope").is_none());
    }
}
