//! The algebra 𝔸ₙᵐ: an `n`-dimensional commutative associative algebra over ℂ
//! with `m` idempotent basis vectors `I_1..I_m` and nilpotent basis vectors
//! `I_{m+1}..I_n`.
//!
//! The multiplication table is fixed by three rules:
//!
//! 1. `I_u I_v = δ_{uv} I_u` for idempotent `u, v`;
//! 2. `I_r I_s = Σ_{p > max(r,s)} Υ(r,s,p) I_p` for nilpotent `r, s`;
//! 3. `I_u I_s = I_s` if `u = u_s`, otherwise `0`, for idempotent `u` and
//!    nilpotent `s`.
//!
//! All indices exposed by this module are 1-based. Storage is 0-based.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::C64;

/// Default absolute tolerance for zero tests on table products.
pub const DEFAULT_TOL_ZERO: f64 = 1e-12;

/// One structure constant `Υ(r,s,p)`: the coefficient of `I_p` in `I_r I_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureConstant {
    pub r: usize,
    pub s: usize,
    pub p: usize,
    pub value: C64,
}

impl StructureConstant {
    pub fn new(r: usize, s: usize, p: usize, value: C64) -> Self {
        Self { r, s, p, value }
    }
}

/// Sparse product of two basis vectors: `(p0, coefficient)` pairs, 0-based.
type SparseProduct = Vec<(usize, C64)>;

#[derive(Clone)]
pub struct AlgebraSpec {
    m: usize,
    n: usize,
    /// Keyed by (min(r,s), max(r,s), p), 1-based.
    upsilon: BTreeMap<(usize, usize, usize), C64>,
    /// `u_map[s - m - 1] = u_s`, 1-based values.
    u_map: Vec<usize>,
    table: Vec<Vec<SparseProduct>>,
    tol_zero: f64,
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("upsilon", &self.upsilon)
            .field("u_map", &self.u_map)
            .finish()
    }
}

/// Equality of multiplication tables; the zero tolerance is not compared.
impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.upsilon == other.upsilon
            && self.u_map == other.u_map
    }
}

impl AlgebraSpec {
    /// Builds a spec from structure constants and the idempotent map.
    ///
    /// `u_map` lists `(s, u_s)` pairs for every nilpotent `s`. When `m == 1`
    /// missing entries default to `1`, the only admissible value.
    ///
    /// Symmetric duplicates `(r,s,p)` / `(s,r,p)` are merged; conflicting values
    /// are a structural error, as are indices outside the ranges of rules 2
    /// and 3. Associativity is *not* checked here, see [`AlgebraSpec::validate`].
    pub fn new(
        m: usize,
        n: usize,
        upsilon: impl IntoIterator<Item = StructureConstant>,
        u_map: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structural("n must be positive".into()));
        }
        if m == 0 || m > n {
            return Err(Error::Structural(format!(
                "m must satisfy 1 <= m <= n (m = {m}, n = {n})"
            )));
        }

        let mut um: Vec<Option<usize>> = vec![None; n - m];
        for (s, u) in u_map {
            if s <= m || s > n {
                return Err(Error::Structural(format!(
                    "u_map key {s} is not a nilpotent index in {}..={n}",
                    m + 1
                )));
            }
            if u == 0 || u > m {
                return Err(Error::Structural(format!(
                    "u_{s} = {u} is not an idempotent index in 1..={m}"
                )));
            }
            let slot = &mut um[s - m - 1];
            if slot.is_some_and(|prev| prev != u) {
                return Err(Error::Structural(format!("u_{s} given twice")));
            }
            *slot = Some(u);
        }
        let u_map = um
            .into_iter()
            .enumerate()
            .map(|(i, u)| match (u, m) {
                (Some(u), _) => Ok(u),
                (None, 1) => Ok(1),
                (None, _) => Err(Error::Structural(format!("u_{} is missing", m + 1 + i))),
            })
            .collect::<Result<Vec<_>>>()?;

        let mut ups = BTreeMap::new();
        for c in upsilon {
            let (r, s, p) = (c.r, c.s, c.p);
            for (name, idx) in [("r", r), ("s", s)] {
                if idx <= m || idx > n {
                    return Err(Error::Structural(format!(
                        "upsilon {name} = {idx} is not a nilpotent index in {}..={n}",
                        m + 1
                    )));
                }
            }
            if p <= r.max(s) || p > n {
                return Err(Error::Structural(format!(
                    "upsilon ({r},{s},{p}): p must lie in {}..={n}",
                    r.max(s) + 1
                )));
            }
            if !(c.value.re.is_finite() && c.value.im.is_finite()) {
                return Err(Error::Structural(format!(
                    "upsilon ({r},{s},{p}) is not finite"
                )));
            }
            let key = (r.min(s), r.max(s), p);
            if let Some(prev) = ups.insert(key, c.value) {
                if prev != c.value {
                    return Err(Error::Structural(format!(
                        "upsilon ({r},{s},{p}) conflicts with its symmetric entry"
                    )));
                }
            }
        }

        let mut spec = Self {
            m,
            n,
            upsilon: ups,
            u_map,
            table: Vec::new(),
            tol_zero: DEFAULT_TOL_ZERO,
        };
        spec.table = spec.build_table();
        Ok(spec)
    }

    /// The semi-simple algebra ℂ ⊕ … ⊕ ℂ (`m = n`).
    pub fn semi_simple(n: usize) -> Result<Self> {
        Self::new(n, n, [], [])
    }

    pub fn with_tol_zero(mut self, tol: f64) -> Self {
        self.tol_zero = tol;
        self
    }

    fn build_table(&self) -> Vec<Vec<SparseProduct>> {
        let (m, n) = (self.m, self.n);
        let mut table = vec![vec![Vec::new(); n]; n];
        for r in 1..=n {
            for s in 1..=n {
                let prod = &mut table[r - 1][s - 1];
                match (r <= m, s <= m) {
                    (true, true) => {
                        if r == s {
                            prod.push((r - 1, C64::new(1.0, 0.0)));
                        }
                    }
                    (true, false) => {
                        if self.u_of(s) == r {
                            prod.push((s - 1, C64::new(1.0, 0.0)));
                        }
                    }
                    (false, true) => {
                        if self.u_of(r) == s {
                            prod.push((r - 1, C64::new(1.0, 0.0)));
                        }
                    }
                    (false, false) => {
                        let (a, b) = (r.min(s), r.max(s));
                        for p in b + 1..=n {
                            if let Some(&v) = self.upsilon.get(&(a, b, p)) {
                                if v != C64::new(0.0, 0.0) {
                                    prod.push((p - 1, v));
                                }
                            }
                        }
                    }
                }
            }
        }
        table
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tol_zero(&self) -> f64 {
        self.tol_zero
    }

    pub fn is_semi_simple(&self) -> bool {
        self.m == self.n
    }

    /// Nilpotent indices `m+1..=n`.
    pub fn nilpotent_indices(&self) -> std::ops::RangeInclusive<usize> {
        self.m + 1..=self.n
    }

    /// `u_s` for a nilpotent index `s` (1-based).
    ///
    /// # Panics
    /// If `s` is not nilpotent.
    pub fn u_of(&self, s: usize) -> usize {
        assert!(s > self.m && s <= self.n, "u_of: {s} is not nilpotent");
        self.u_map[s - self.m - 1]
    }

    /// `Υ(r,s,p)`, zero when absent. Symmetric in `(r, s)`.
    pub fn upsilon(&self, r: usize, s: usize, p: usize) -> C64 {
        self.upsilon
            .get(&(r.min(s), r.max(s), p))
            .copied()
            .unwrap_or_default()
    }

    /// Stored structure constants with `r <= s`.
    pub fn structure_constants(&self) -> impl Iterator<Item = StructureConstant> + '_ {
        self.upsilon
            .iter()
            .map(|(&(r, s, p), &value)| StructureConstant { r, s, p, value })
    }

    /// `(s, u_s)` for every nilpotent `s`.
    pub fn u_map(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.u_map
            .iter()
            .enumerate()
            .map(move |(i, &u)| (self.m + 1 + i, u))
    }

    /// Sparse product `I_r I_s` as 1-based `(p, coefficient)` pairs.
    pub fn basis_product(&self, r: usize, s: usize) -> Vec<(usize, C64)> {
        self.table[r - 1][s - 1]
            .iter()
            .map(|&(p, c)| (p + 1, c))
            .collect()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zeros(self.n)
    }

    /// `1 = Σ_{u ≤ m} I_u`.
    pub fn unit(&self) -> AlgebraElement {
        let mut e = self.zero();
        for c in &mut e.coeffs[..self.m] {
            *c = C64::new(1.0, 0.0);
        }
        e
    }

    pub fn basis(&self, r: usize) -> Result<AlgebraElement> {
        self.check_index("basis", r, self.n)?;
        let mut e = self.zero();
        e.coeffs[r - 1] = C64::new(1.0, 0.0);
        Ok(e)
    }

    pub fn element(&self, coeffs: Vec<C64>) -> Result<AlgebraElement> {
        self.conform(&AlgebraElement::new(coeffs.clone()))?;
        Ok(AlgebraElement::new(coeffs))
    }

    fn check_index(&self, what: &'static str, index: usize, max: usize) -> Result<()> {
        if index == 0 || index > max {
            Err(Error::IndexOutOfRange { what, index, max })
        } else {
            Ok(())
        }
    }

    pub(crate) fn conform(&self, a: &AlgebraElement) -> Result<()> {
        if a.len() != self.n {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Product according to rules 1–3.
    ///
    /// Each unordered index pair is visited once with weight
    /// `a_r b_s + a_s b_r`, so `mul(a, b)` and `mul(b, a)` agree bit for bit.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.conform(a)?;
        self.conform(b)?;
        let zero = C64::new(0.0, 0.0);
        let mut out = vec![zero; self.n];
        let (ac, bc) = (&a.coeffs, &b.coeffs);
        for r in 0..self.n {
            for s in r..self.n {
                let w = if r == s {
                    ac[r] * bc[r]
                } else {
                    ac[r] * bc[s] + ac[s] * bc[r]
                };
                if w == zero {
                    continue;
                }
                for &(p, c) in &self.table[r][s] {
                    out[p] += w * c;
                }
            }
        }
        Ok(AlgebraElement::new(out))
    }

    /// `a^k` by repeated multiplication; `a^0 = 1`.
    pub fn pow(&self, a: &AlgebraElement, k: u32) -> Result<AlgebraElement> {
        self.conform(a)?;
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Matrix of left multiplication by `a`, row-major: `M[p][s]` is the
    /// coefficient of `I_p` in `a · I_s` (0-based storage).
    pub fn mult_matrix(&self, a: &AlgebraElement) -> Result<Vec<Vec<C64>>> {
        self.conform(a)?;
        let mut mat = vec![vec![C64::new(0.0, 0.0); self.n]; self.n];
        for (r, &ar) in a.coeffs.iter().enumerate() {
            for s in 0..self.n {
                for &(p, c) in &self.table[r][s] {
                    mat[p][s] += ar * c;
                }
            }
        }
        Ok(mat)
    }

    /// `f_u(a)`: the coefficient of `I_u`.
    pub fn functional(&self, u: usize, a: &AlgebraElement) -> Result<C64> {
        self.check_index("idempotent", u, self.m)?;
        self.conform(a)?;
        Ok(a.coeffs[u - 1])
    }

    /// Projection onto the radical: zero out the idempotent coefficients.
    pub fn radical_project(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.conform(a)?;
        let mut out = a.clone();
        for c in &mut out.coeffs[..self.m] {
            *c = C64::new(0.0, 0.0);
        }
        Ok(out)
    }

    /// First idempotent `u` with `|f_u(b)| <= tol_zero`, if any.
    pub fn singular_index(&self, b: &AlgebraElement) -> Option<usize> {
        b.coeffs[..self.m.min(b.len())]
            .iter()
            .position(|c| c.norm() <= self.tol_zero)
            .map(|i| i + 1)
    }

    pub fn is_invertible(&self, b: &AlgebraElement) -> bool {
        b.len() == self.n && self.singular_index(b).is_none()
    }

    fn sparse_times_basis(&self, v: &[(usize, C64)], p: usize) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.n];
        for &(q, c) in v {
            for &(t, d) in &self.table[q][p] {
                out[t] += c * d;
            }
        }
        out
    }

    fn basis_times_sparse(&self, r: usize, v: &[(usize, C64)]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.n];
        for &(q, c) in v {
            for &(t, d) in &self.table[r][q] {
                out[t] += c * d;
            }
        }
        out
    }

    /// `‖(I_a I_b) I_c − I_a (I_b I_c)‖∞` with 0-based indices.
    fn associator(&self, a: usize, b: usize, c: usize) -> f64 {
        let lhs = self.sparse_times_basis(&self.table[a][b], c);
        let rhs = self.basis_times_sparse(a, &self.table[b][c]);
        lhs.iter()
            .zip(&rhs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Checks associativity conditions (A1) and (A2) by brute force, and the
    /// vanishing of nilpotent products forced when all `u_s` are distinct.
    pub fn validate(&self) -> ValidationReport {
        let (m, n) = (self.m, self.n);
        let mut violations = Vec::new();

        for r in m..n {
            for s in m..n {
                for p in m..n {
                    let residual = self.associator(r, s, p);
                    if residual > self.tol_zero {
                        violations.push(Violation::A1 {
                            r: r + 1,
                            s: s + 1,
                            p: p + 1,
                            residual,
                        });
                    }
                }
            }
        }
        for u in 0..m {
            for s in m..n {
                for p in m..n {
                    let residual = self.associator(u, s, p);
                    if residual > self.tol_zero {
                        violations.push(Violation::A2 {
                            u: u + 1,
                            s: s + 1,
                            p: p + 1,
                            residual,
                        });
                    }
                }
            }
        }

        let has_nilpotent = n > m;
        let prop1_case = has_nilpotent && self.u_map.iter().all(|&u| u == self.u_map[0]);
        let prop2_case = has_nilpotent && {
            let mut seen = self.u_map.clone();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        };
        if prop2_case {
            for (&(r, s, p), v) in &self.upsilon {
                if v.norm() > self.tol_zero {
                    violations.push(Violation::Prop2NonzeroProduct {
                        r,
                        s,
                        p,
                        magnitude: v.norm(),
                    });
                }
            }
        }

        ValidationReport {
            valid: violations.is_empty(),
            semi_simple: self.is_semi_simple(),
            prop1_case,
            prop2_case,
            violations,
        }
    }
}

/// A mathematical (not structural) defect in a multiplication table.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    /// `(I_r I_s) I_p ≠ I_r (I_s I_p)` for nilpotent `r, s, p`.
    A1 {
        r: usize,
        s: usize,
        p: usize,
        residual: f64,
    },
    /// `(I_u I_s) I_p ≠ I_u (I_s I_p)` for idempotent `u`.
    A2 {
        u: usize,
        s: usize,
        p: usize,
        residual: f64,
    },
    /// All `u_s` are distinct, so every nilpotent product must vanish, yet
    /// `Υ(r,s,p) ≠ 0`.
    Prop2NonzeroProduct {
        r: usize,
        s: usize,
        p: usize,
        magnitude: f64,
    },
}

impl Violation {
    /// The offending index triple.
    pub fn triple(&self) -> (usize, usize, usize) {
        match *self {
            Violation::A1 { r, s, p, .. } => (r, s, p),
            Violation::A2 { u, s, p, .. } => (u, s, p),
            Violation::Prop2NonzeroProduct { r, s, p, .. } => (r, s, p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub semi_simple: bool,
    pub prop1_case: bool,
    pub prop2_case: bool,
    pub violations: Vec<Violation>,
}

/// Coefficient vector over the basis `I_1..I_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    coeffs: Vec<C64>,
}

impl AlgebraElement {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            coeffs: vec![C64::new(0.0, 0.0); n],
        }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&v| C64::new(v, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `I_r`, 1-based.
    pub fn coeff(&self, r: usize) -> C64 {
        self.coeffs[r - 1]
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute value among all real and imaginary parts.
    pub fn max_abs_part(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.re.abs().max(c.im.abs()))
            .fold(0.0, f64::max)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, lambda: C64) -> Self {
        Self::new(self.coeffs.iter().map(|a| lambda * a).collect())
    }

    /// In-place `self += lambda * other`.
    pub(crate) fn axpy(&mut self, lambda: C64, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += lambda * b;
        }
    }

    /// `‖self − other‖∞`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.norm_inf())
    }
}
