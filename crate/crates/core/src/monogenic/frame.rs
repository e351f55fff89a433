use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::C64;

/// Relative singular-value cutoff used for the real-rank test.
const RANK_TOL: f64 = 1e-10;

/// The vectors `e_1 = 1, e_2, …, e_k` spanning the real subspace `E_k` in
/// which the variable `ζ = Σ x_j e_j` lives.
///
/// Only `e_2..e_k` are stored; `e_1` is the algebra unit.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableFrame {
    m: usize,
    n: usize,
    rows: Vec<Vec<C64>>,
}

impl VariableFrame {
    /// Builds a frame from the coefficient rows of `e_2..e_k`.
    ///
    /// Fails unless `2 <= k <= 2n`, every row has length `n`, and the `k`
    /// vectors are linearly independent over ℝ.
    pub fn new(spec: &AlgebraSpec, rows: Vec<Vec<C64>>) -> Result<Self> {
        let (m, n) = (spec.m(), spec.n());
        let k = rows.len() + 1;
        if k < 2 || k > 2 * n {
            return Err(Error::InvalidFrame(format!(
                "k = {k} must satisfy 2 <= k <= 2n = {}",
                2 * n
            )));
        }
        for (j, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidFrame(format!(
                    "e_{} has {} coefficients, expected {n}",
                    j + 2,
                    row.len()
                )));
            }
            if row.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
                return Err(Error::InvalidFrame(format!(
                    "e_{} has non-finite coefficients",
                    j + 2
                )));
            }
        }
        let frame = Self { m, n, rows };
        let rank = frame.real_rank();
        if rank < k {
            return Err(Error::InvalidFrame(format!(
                "vectors are linearly dependent over R (rank {rank} < k = {k})"
            )));
        }
        Ok(frame)
    }

    pub fn k(&self) -> usize {
        self.rows.len() + 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `a_{jr}` for `j` in `2..=k`, `r` in `1..=n`.
    pub fn a(&self, j: usize, r: usize) -> C64 {
        self.rows[j - 2][r - 1]
    }

    /// Coefficient rows of `e_2..e_k`.
    pub fn rows(&self) -> &[Vec<C64>] {
        &self.rows
    }

    /// `e_j` as an algebra element, `j` in `1..=k`.
    pub fn vector(&self, j: usize) -> AlgebraElement {
        if j == 1 {
            let mut e = AlgebraElement::zeros(self.n);
            for c in &mut e.coeffs_mut()[..self.m] {
                *c = C64::new(1.0, 0.0);
            }
            e
        } else {
            AlgebraElement::new(self.rows[j - 2].clone())
        }
    }

    /// Rank of the real `2n × k` matrix whose columns are `(Re e_j, Im e_j)`.
    pub fn real_rank(&self) -> usize {
        let k = self.k();
        let n = self.n;
        let mat = DMatrix::from_fn(2 * n, k, |i, j| {
            let c = self.vector(j + 1).coeffs()[i % n];
            if i < n {
                c.re
            } else {
                c.im
            }
        });
        let sv = mat.singular_values();
        let smax = sv.iter().copied().fold(0.0, f64::max);
        sv.iter().filter(|&&s| s > RANK_TOL * smax.max(1.0)).count()
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.k() {
            Err(Error::DimensionMismatch {
                expected: self.k(),
                found: x.len(),
            })
        } else {
            Ok(())
        }
    }

    /// `ζ = Σ x_j e_j`.
    pub fn zeta(&self, x: &[f64]) -> Result<AlgebraElement> {
        self.check_point(x)?;
        let mut z = self.vector(1).scale(C64::new(x[0], 0.0));
        for (j, row) in self.rows.iter().enumerate() {
            for (c, a) in z.coeffs_mut().iter_mut().zip(row) {
                *c += x[j + 1] * a;
            }
        }
        Ok(z)
    }

    /// `ξ_u = f_u(ζ) = x_1 + Σ_{j≥2} x_j a_{ju}`.
    pub fn xi(&self, u: usize, x: &[f64]) -> Result<C64> {
        if u == 0 || u > self.m {
            return Err(Error::IndexOutOfRange {
                what: "idempotent",
                index: u,
                max: self.m,
            });
        }
        self.check_point(x)?;
        Ok(self
            .rows
            .iter()
            .zip(&x[1..])
            .fold(C64::new(x[0], 0.0), |acc, (row, &xj)| acc + xj * row[u - 1]))
    }

    /// All `ξ_1..ξ_m`.
    pub fn xis(&self, x: &[f64]) -> Result<Vec<C64>> {
        (1..=self.m).map(|u| self.xi(u, x)).collect()
    }

    /// `T_s = Σ_{j≥2} x_j a_{js}` for nilpotent `s = m+1..n`, in order.
    pub fn radical_coords(&self, x: &[f64]) -> Result<Vec<C64>> {
        self.check_point(x)?;
        Ok((self.m + 1..=self.n)
            .map(|s| {
                self.rows
                    .iter()
                    .zip(&x[1..])
                    .map(|(row, &xj)| xj * row[s - 1])
                    .sum()
            })
            .collect())
    }

    /// Whether `f_u(E_k) = ℂ`, i.e. some `a_{ju}` has `|Im a_{ju}| > tol`.
    pub fn surjectivity_check(&self, tol: f64) -> SurjectivityReport {
        let per_u: Vec<bool> = (1..=self.m)
            .map(|u| self.rows.iter().any(|row| row[u - 1].im.abs() > tol))
            .collect();
        SurjectivityReport {
            all: per_u.iter().all(|&b| b),
            per_u,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    /// Entry `u - 1` is true when `f_u(E_k) = ℂ`.
    pub per_u: Vec<bool>,
    pub all: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn xi_examples() {
        let cplx = fixtures::complex_plane();
        let f = fixtures::complex_frame(&cplx);
        assert_eq!(f.xi(1, &[0.0, 0.0]).unwrap(), C64::new(0.0, 0.0));
        assert_eq!(f.xi(1, &[3.0, 4.0]).unwrap(), C64::new(3.0, 4.0));

        let bc = fixtures::bicomplex();
        let h = fixtures::bicomplex_harmonic_frame(&bc);
        let x = [1.0, 2.0, 3.0];
        assert_eq!(h.xi(1, &x).unwrap(), C64::new(1.0, 2.0));
        assert_eq!(h.xi(2, &x).unwrap(), C64::new(1.0, 3.0));
        assert!(h.xi(3, &x).is_err());
        assert!(h.xi(1, &[1.0]).is_err());
    }

    #[test]
    fn surjectivity_examples() {
        let cplx = fixtures::complex_plane();
        assert!(fixtures::complex_frame(&cplx).surjectivity_check(1e-12).all);

        let bc = fixtures::bicomplex();
        let r = fixtures::bicomplex_harmonic_frame(&bc).surjectivity_check(1e-12);
        assert_eq!(r.per_u, vec![true, true]);

        // e_2 = I_1 + i I_2: real on u = 1
        let f = VariableFrame::new(
            &bc,
            vec![vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)]],
        )
        .unwrap();
        assert_eq!(f.surjectivity_check(1e-12).per_u, vec![false, true]);
    }

    #[test]
    fn rejects_dependent_or_malformed() {
        let cplx = fixtures::complex_plane();
        // e_2 = 2 is a real multiple of e_1
        assert!(matches!(
            VariableFrame::new(&cplx, vec![vec![C64::new(2.0, 0.0)]]),
            Err(Error::InvalidFrame(_))
        ));
        // k = 3 > 2n = 2
        assert!(VariableFrame::new(
            &cplx,
            vec![vec![C64::new(0.0, 1.0)], vec![C64::new(1.0, 1.0)]]
        )
        .is_err());
        assert!(VariableFrame::new(&cplx, vec![]).is_err());
        let bc = fixtures::bicomplex();
        assert!(VariableFrame::new(&bc, vec![vec![C64::new(0.0, 1.0)]]).is_err());
    }

    #[test]
    fn zeta_assembly() {
        let spec = fixtures::cubic_nil();
        let f = fixtures::cubic_nil_axis_frame(&spec);
        let z = f.zeta(&[0.5, 1.0, -2.0]).unwrap();
        assert_eq!(z, AlgebraElement::from_real(&[0.5, 1.0, -2.0]));
        assert_eq!(
            f.radical_coords(&[0.5, 1.0, -2.0]).unwrap(),
            vec![C64::new(1.0, 0.0), C64::new(-2.0, 0.0)]
        );
    }
}
