//! Inversion in 𝔸ₙᵐ and the resolvent expansion of `(t e_1 − ζ)^{-1}`.
//!
//! Both rest on one recurrence. Given radical coordinates `T_s`
//! (`s = m+1..n`):
//!
//! ```text
//! B_{q,s} = Σ_{p=m+1}^{s-1} T_p Υ(q,p,s)
//! Q_{2,s} = T_s
//! Q_{r,s} = Σ_{q=r+m-2}^{s-1} Q_{r-1,q} B_{q,s},   r = 3..s-m+1
//! ```
//!
//! `Q_{r,s}` is the `I_s` coefficient of `N^{r-1}` where `N = Σ T_s I_s`.
//! For the resolvent `T_s` is the radical part of `ζ`; for the inverse of
//! `b` it is `−b_s`, since `b = A + N` expands as `A^{-1} Σ (−A^{-1} N)^k`.

use serde::Serialize;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::monogenic::VariableFrame;
use crate::C64;

/// Coefficients `T_s`, `B_{q,s}` and `Q_{r,s}` of the resolvent expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    m: usize,
    n: usize,
    t: Vec<C64>,
    /// `b[q-m-1][s-m-1]`, only `q < s` populated.
    b: Vec<Vec<C64>>,
    /// `q[s-m-1][r-2]` for `r = 2..=s-m+1`.
    q: Vec<Vec<C64>>,
}

impl QTable {
    /// Runs the recurrence for the given radical coordinates `T_{m+1}..T_n`.
    pub fn from_radical(spec: &AlgebraSpec, radical: &[C64]) -> Result<Self> {
        let (m, n) = (spec.m(), spec.n());
        if radical.len() != n - m {
            return Err(Error::DimensionMismatch {
                expected: n - m,
                found: radical.len(),
            });
        }
        let nil = n - m;
        let zero = C64::new(0.0, 0.0);
        let tv = |p: usize| radical[p - m - 1];

        let mut b = vec![vec![zero; nil]; nil];
        for s in m + 1..=n {
            for q in m + 1..s {
                b[q - m - 1][s - m - 1] = (m + 1..s)
                    .map(|p| tv(p) * spec.upsilon(q, p, s))
                    .sum();
            }
        }

        let mut qt: Vec<Vec<C64>> = Vec::with_capacity(nil);
        for s in m + 1..=n {
            let mut row = vec![tv(s)];
            for r in 3..=s - m + 1 {
                let v = (r + m - 2..s)
                    .map(|q| qt[q - m - 1][r - 3] * b[q - m - 1][s - m - 1])
                    .sum();
                row.push(v);
            }
            qt.push(row);
        }

        Ok(Self {
            m,
            n,
            t: radical.to_vec(),
            b,
            q: qt,
        })
    }

    /// Table for `ζ(x)` in the given frame.
    pub fn for_point(spec: &AlgebraSpec, frame: &VariableFrame, x: &[f64]) -> Result<Self> {
        check_frame(spec, frame)?;
        Self::from_radical(spec, &frame.radical_coords(x)?)
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// `T_s`, `s` nilpotent.
    pub fn t(&self, s: usize) -> C64 {
        self.t[s - self.m - 1]
    }

    /// `B_{q,s}` for nilpotent `q < s`, zero elsewhere.
    pub fn b(&self, q: usize, s: usize) -> C64 {
        if q <= self.m || s <= q || s > self.n {
            return C64::new(0.0, 0.0);
        }
        self.b[q - self.m - 1][s - self.m - 1]
    }

    /// `Q_{r,s}`; `None` outside `s = m+1..n`, `r = 2..s-m+1`.
    pub fn q(&self, r: usize, s: usize) -> Option<C64> {
        if s <= self.m || s > self.n || r < 2 {
            return None;
        }
        self.q[s - self.m - 1].get(r - 2).copied()
    }

    /// `(r, s, Q_{r,s})` in the order `s` ascending, then `r` ascending.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.q.iter().enumerate().flat_map(move |(si, row)| {
            row.iter()
                .enumerate()
                .map(move |(ri, &v)| (ri + 2, si + self.m + 1, v))
        })
    }
}

fn check_frame(spec: &AlgebraSpec, frame: &VariableFrame) -> Result<()> {
    if frame.n() != spec.n() || frame.m() != spec.m() {
        return Err(Error::InvalidFrame(format!(
            "frame built for m = {}, n = {} used with m = {}, n = {}",
            frame.m(),
            frame.n(),
            spec.m(),
            spec.n()
        )));
    }
    Ok(())
}

/// `b^{-1}` through the recurrence (no dense solve).
pub fn invert(spec: &AlgebraSpec, b: &AlgebraElement) -> Result<AlgebraElement> {
    spec.conform(b)?;
    if let Some(u) = spec.singular_index(b) {
        return Err(Error::NotInvertible { u });
    }
    let m = spec.m();
    let radical: Vec<C64> = b.coeffs()[m..].iter().map(|c| -c).collect();
    let table = QTable::from_radical(spec, &radical)?;
    let diag = &b.coeffs()[..m];
    Ok(expand(spec, &table, |u| diag[u - 1]))
}

/// `Σ_u I_u / d_u + Σ_s Σ_r Q_{r,s} / d_{u_s}^r I_s`.
fn expand(spec: &AlgebraSpec, table: &QTable, d: impl Fn(usize) -> C64) -> AlgebraElement {
    let mut out = spec.zero();
    let coeffs = out.coeffs_mut();
    for u in 1..=spec.m() {
        coeffs[u - 1] = d(u).inv();
    }
    for s in spec.nilpotent_indices() {
        let inv = d(spec.u_of(s)).inv();
        let mut pow = inv;
        let mut acc = C64::new(0.0, 0.0);
        for r in 2..=s - spec.m() + 1 {
            pow *= inv;
            acc += table.q(r, s).unwrap_or_default() * pow;
        }
        coeffs[s - 1] = acc;
    }
    out
}

/// `(t e_1 − ζ(x))^{-1}` by the resolvent expansion.
pub fn resolvent(
    spec: &AlgebraSpec,
    frame: &VariableFrame,
    x: &[f64],
    t: C64,
) -> Result<AlgebraElement> {
    let table = QTable::for_point(spec, frame, x)?;
    let xis = frame.xis(x)?;
    resolvent_with(spec, &table, &xis, t)
}

/// Resolvent from a precomputed table and `ξ` values.
pub fn resolvent_with(
    spec: &AlgebraSpec,
    table: &QTable,
    xis: &[C64],
    t: C64,
) -> Result<AlgebraElement> {
    if let Some(u) = xis.iter().position(|&xi| (t - xi).norm() <= spec.tol_zero()) {
        return Err(Error::PoleAt { u: u + 1 });
    }
    Ok(expand(spec, table, |u| t - xis[u - 1]))
}

/// The real-linear system cutting out `M_u^ℝ`:
///
/// ```text
/// x_1 + Σ x_j Re a_{ju} = 0
///       Σ x_j Im a_{ju} = 0
/// ```
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegenerateSet {
    pub u: usize,
    pub rows: [Vec<f64>; 2],
}

impl DegenerateSet {
    pub fn k(&self) -> usize {
        self.rows[0].len()
    }

    /// Largest absolute residual of the two equations at `x`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().abs())
            .fold(0.0, f64::max)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.residual(x) <= tol
    }

    /// A basis of the solution space.
    ///
    /// `x_1` is always a pivot. When some `Im a_{ju}` exceeds `tol` the
    /// largest one pivots the second equation; otherwise the second equation
    /// is treated as vacuous.
    pub fn kernel_basis(&self, tol: f64) -> Vec<Vec<f64>> {
        let k = self.k();
        let [first, second] = &self.rows;
        let pivot2 = (1..k)
            .max_by(|&a, &b| second[a].abs().total_cmp(&second[b].abs()))
            .filter(|&j| second[j].abs() > tol);
        (1..k)
            .filter(|&j| Some(j) != pivot2)
            .map(|free| {
                let mut v = vec![0.0; k];
                v[free] = 1.0;
                if let Some(p) = pivot2 {
                    v[p] = -second[free] / second[p];
                }
                v[0] = -(1..k).map(|j| first[j] * v[j]).sum::<f64>();
                v
            })
            .collect()
    }
}

pub fn degenerate_set(frame: &VariableFrame, u: usize) -> Result<DegenerateSet> {
    if u == 0 || u > frame.m() {
        return Err(Error::IndexOutOfRange {
            what: "idempotent",
            index: u,
            max: frame.m(),
        });
    }
    let k = frame.k();
    let mut re = vec![0.0; k];
    let mut im = vec![0.0; k];
    re[0] = 1.0;
    for j in 2..=k {
        let a = frame.a(j, u);
        re[j - 1] = a.re;
        im[j - 1] = a.im;
    }
    Ok(DegenerateSet { u, rows: [re, im] })
}
