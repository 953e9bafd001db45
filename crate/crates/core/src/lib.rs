//! Numerical verification toolkit for an anisotropic surface-energy
//! integrand on ℝ⁷ whose graph Euler–Lagrange equation admits an entire
//! quadratic solution on ℝ⁶.
//!
//! The crate provides:
//! * closed-form evaluations with hand-derived derivatives for the planar
//!   solution ψ, its one-homogeneous extension Ψ, and the lifted integrands
//!   Φ (ℝ⁷) and Φ₀ (ℝ⁶) — [`psi`], [`psi3d`], [`phi`];
//! * the Legendre transform with Newton gradient inversion and the three
//!   Euler–Lagrange residual operators (graph, Legendre form, parametric) —
//!   [`legendre`], [`hypersurface`], [`wave`];
//! * ellipticity certification by dense sphere sampling, seam (C^{2,1})
//!   regularity checks, calibration and cone-minimality checks —
//!   [`certify`], [`calib`], [`sphere`];
//! * the exploratory reductions: the cone ODE in four and six dimensions
//!   and the k = 1, m = 4 curvature-ratio failure — [`no4d`], [`kmfail`],
//!   [`km`].
//!
//! Everything is pure and deterministic: fixed seeds, fixed sweep orders,
//! no global state. All floating point is f64.

pub mod calculus;
pub mod calib;
pub mod certify;
pub mod error;
pub mod field;
pub mod hypersurface;
pub mod km;
pub mod kmfail;
pub mod legendre;
pub mod linalg;
pub mod no4d;
pub mod phi;
pub mod psi;
pub mod psi3d;
pub mod sphere;
pub mod wave;

pub use error::{Error, Result};
