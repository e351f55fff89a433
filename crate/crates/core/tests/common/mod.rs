//! Independent oracles and samplers shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use monogenic::algebra::{AlgebraElement, AlgebraSpec};
use monogenic::monogenic::VariableFrame;
use monogenic::C64;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Product of two basis vectors straight from the three table rules
/// (1-based indices), without the precomputed table.
pub fn rule_product(spec: &AlgebraSpec, r: usize, s: usize) -> Vec<C64> {
    let (m, n) = (spec.m(), spec.n());
    let mut out = vec![c(0.0, 0.0); n];
    match (r <= m, s <= m) {
        (true, true) => {
            if r == s {
                out[r - 1] = c(1.0, 0.0);
            }
        }
        (true, false) => {
            if spec.u_of(s) == r {
                out[s - 1] = c(1.0, 0.0);
            }
        }
        (false, true) => {
            if spec.u_of(r) == s {
                out[r - 1] = c(1.0, 0.0);
            }
        }
        (false, false) => {
            for p in r.max(s) + 1..=n {
                out[p - 1] = spec.upsilon(r, s, p);
            }
        }
    }
    out
}

/// Bilinear expansion over the rule products.
pub fn naive_mul(spec: &AlgebraSpec, a: &[C64], b: &[C64]) -> Vec<C64> {
    let n = spec.n();
    let mut out = vec![c(0.0, 0.0); n];
    for r in 1..=n {
        for s in 1..=n {
            let w = a[r - 1] * b[s - 1];
            if w == c(0.0, 0.0) {
                continue;
            }
            for (o, v) in out.iter_mut().zip(rule_product(spec, r, s)) {
                *o += w * v;
            }
        }
    }
    out
}

/// Matrix of `x ↦ a·x` assembled from the rule products.
pub fn dense_mult_matrix(spec: &AlgebraSpec, a: &[C64]) -> DMatrix<C64> {
    let n = spec.n();
    let mut m = DMatrix::from_element(n, n, c(0.0, 0.0));
    for s in 1..=n {
        let mut e = vec![c(0.0, 0.0); n];
        e[s - 1] = c(1.0, 0.0);
        let col = naive_mul(spec, a, &e);
        for p in 0..n {
            m[(p, s - 1)] = col[p];
        }
    }
    m
}

/// Solves `a · x = 1` by LU on the dense multiplication matrix.
pub fn dense_inverse(spec: &AlgebraSpec, a: &[C64]) -> Option<Vec<C64>> {
    let m = dense_mult_matrix(spec, a);
    let unit = DVector::from_iterator(
        spec.n(),
        (1..=spec.n()).map(|r| if r <= spec.m() { c(1.0, 0.0) } else { c(0.0, 0.0) }),
    );
    m.lu().solve(&unit).map(|x| x.iter().copied().collect())
}

/// `p(z)` by Horner's rule over [`naive_mul`].
pub fn naive_poly(spec: &AlgebraSpec, coeffs: &[C64], z: &[C64]) -> Vec<C64> {
    let n = spec.n();
    let mut acc = vec![c(0.0, 0.0); n];
    for &a in coeffs.iter().rev() {
        acc = naive_mul(spec, &acc, z);
        for u in 0..spec.m() {
            acc[u] += a;
        }
    }
    acc
}

/// `ζ = x_1 + Σ_{j≥2} x_j e_j` from the raw frame rows.
pub fn naive_zeta(spec: &AlgebraSpec, rows: &[Vec<C64>], x: &[f64]) -> Vec<C64> {
    let mut z = vec![c(0.0, 0.0); spec.n()];
    for u in 0..spec.m() {
        z[u] = c(x[0], 0.0);
    }
    for (row, &xj) in rows.iter().zip(&x[1..]) {
        for (zr, &a) in z.iter_mut().zip(row) {
            *zr += a * xj;
        }
    }
    z
}

pub fn norm_inf(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn dist(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn unit(spec: &AlgebraSpec) -> Vec<C64> {
    (1..=spec.n())
        .map(|r| if r <= spec.m() { c(1.0, 0.0) } else { c(0.0, 0.0) })
        .collect()
}

/// `‖a·b − 1‖∞ / max(1, ‖a‖∞‖b‖∞)`.
pub fn unit_residual(spec: &AlgebraSpec, a: &[C64], b: &[C64]) -> f64 {
    let p = naive_mul(spec, a, b);
    dist(&p, &unit(spec)) / (norm_inf(a) * norm_inf(b)).max(1.0)
}

pub fn rand_c(rng: &mut impl Rng, r: f64) -> C64 {
    c(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Idempotent coordinates of modulus in [0.3, 2), radical coordinates in
/// the unit box.
pub fn random_invertible(rng: &mut impl Rng, spec: &AlgebraSpec) -> AlgebraElement {
    AlgebraElement::new(
        (1..=spec.n())
            .map(|r| {
                if r <= spec.m() {
                    C64::from_polar(
                        rng.gen_range(0.3..2.0),
                        rng.gen_range(0.0..std::f64::consts::TAU),
                    )
                } else {
                    rand_c(rng, 1.0)
                }
            })
            .collect(),
    )
}

pub fn random_point(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Random frame with `k = 2` for `n = 1`, else `k ∈ {2, 3, 4}` capped at `2n`.
pub fn random_frame(rng: &mut impl Rng, spec: &AlgebraSpec) -> VariableFrame {
    let kmax = (2 * spec.n()).min(4);
    loop {
        let k = rng.gen_range(2..=kmax);
        let rows = (2..=k)
            .map(|_| (0..spec.n()).map(|_| rand_c(rng, 1.0)).collect())
            .collect();
        if let Ok(f) = VariableFrame::new(spec, rows) {
            return f;
        }
    }
}
