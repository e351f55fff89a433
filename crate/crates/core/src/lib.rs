//! Monogenic functions taking values in finite-dimensional commutative
//! associative algebras over ℂ.
//!
//! * [`algebra`]: the algebra 𝔸ₙᵐ, its multiplication table and validation.
//! * [`resolvent`]: inverses and the resolvent `(t e₁ − ζ)⁻¹` in closed form.
//! * [`holomorphic`]: exact holomorphic components and contour quadrature.
//! * [`monogenic`]: frames, the representation of monogenic functions, and
//!   the Cauchy–Riemann check.
//! * [`pde`]: characteristic equations of constant-coefficient PDEs.

// `!(x > 0.0)` rejects NaN too; index loops mirror the subscripted formulas.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod holomorphic;
pub mod io;
pub mod monogenic;
pub mod pde;
pub mod resolvent;
pub mod selftest;

pub type C64 = num_complex::Complex64;

pub use algebra::{AlgebraElement, AlgebraSpec, StructureConstant, ValidationReport, Violation};
pub use error::{Error, Result};
pub use holomorphic::{HolomorphicFn, Polynomial, QuadratureOptions};
pub use monogenic::{eval_monogenic, eval_monogenic_contour, MonogenicFunction, VariableFrame};
pub use pde::PdeSpec;
pub use resolvent::{invert, resolvent};
