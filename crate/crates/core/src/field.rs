//! Scalar fields on ℝⁿ with value / gradient / Hessian access. Graph
//! functions, the quadratic saddle, and test wells all implement
//! [`ScalarField`]; fields without closed-form derivatives can be wrapped in
//! [`NumericField`].

use crate::calculus::{numeric_gradient, numeric_hessian, DiffScheme};
use crate::error::{ensure_finite, Result};
use crate::linalg::SymMat;

pub trait ScalarField: Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> Result<f64>;
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>>;
    fn hessian(&self, x: &[f64]) -> Result<SymMat>;
}

/// u(p, q) = (|p|² − |q|²)/2 on two blocks of equal dimension. Its gradient
/// is the linear map (p, −q), the Hessian diag(I, −I), and it equals its own
/// Legendre transform.
#[derive(Debug, Clone, Copy)]
pub struct SaddleQuadratic {
    pub block_dim: usize,
}

impl SaddleQuadratic {
    pub fn new(block_dim: usize) -> Self {
        SaddleQuadratic { block_dim }
    }

    /// The main object: blocks in ℝ³, domain ℝ⁶.
    pub fn six_dim() -> Self {
        SaddleQuadratic { block_dim: 3 }
    }
}

impl ScalarField for SaddleQuadratic {
    fn dim(&self) -> usize {
        2 * self.block_dim
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        ensure_finite(x)?;
        let k = self.block_dim;
        let p2: f64 = x[..k].iter().map(|v| v * v).sum();
        let q2: f64 = x[k..].iter().map(|v| v * v).sum();
        Ok(0.5 * (p2 - q2))
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        ensure_finite(x)?;
        let k = self.block_dim;
        Ok(x.iter()
            .enumerate()
            .map(|(i, v)| if i < k { *v } else { -*v })
            .collect())
    }

    fn hessian(&self, x: &[f64]) -> Result<SymMat> {
        ensure_finite(x)?;
        let k = self.block_dim;
        Ok(SymMat::from_fn(2 * k, |i, j| {
            if i != j {
                0.0
            } else if i < k {
                1.0
            } else {
                -1.0
            }
        }))
    }
}

/// λ-dilate of a graph: u_λ(x) = λ · u(x/λ), so that graph(u_λ) = λ · graph(u).
#[derive(Clone, Copy)]
pub struct DilatedGraph<'a, F: ScalarField + ?Sized> {
    pub base: &'a F,
    pub lambda: f64,
}

impl<'a, F: ScalarField + ?Sized> ScalarField for DilatedGraph<'a, F> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        let inner: Vec<f64> = x.iter().map(|v| v / self.lambda).collect();
        Ok(self.lambda * self.base.value(&inner)?)
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let inner: Vec<f64> = x.iter().map(|v| v / self.lambda).collect();
        self.base.gradient(&inner)
    }

    fn hessian(&self, x: &[f64]) -> Result<SymMat> {
        let inner: Vec<f64> = x.iter().map(|v| v / self.lambda).collect();
        let mut h = self.base.hessian(&inner)?;
        h.scale_assign(1.0 / self.lambda);
        Ok(h)
    }
}

/// R · u for a fixed field u.
#[derive(Clone, Copy)]
pub struct ScaledField<'a, F: ScalarField + ?Sized> {
    pub base: &'a F,
    pub factor: f64,
}

impl<'a, F: ScalarField + ?Sized> ScalarField for ScaledField<'a, F> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok(self.factor * self.base.value(x)?)
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(self.base.gradient(x)?.iter().map(|v| self.factor * v).collect())
    }

    fn hessian(&self, x: &[f64]) -> Result<SymMat> {
        let mut h = self.base.hessian(x)?;
        h.scale_assign(self.factor);
        Ok(h)
    }
}

/// |x|²/2; self-dual under the Legendre transform.
#[derive(Debug, Clone, Copy)]
pub struct HalfSquaredNorm {
    pub dim: usize,
}

impl ScalarField for HalfSquaredNorm {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        ensure_finite(x)?;
        Ok(0.5 * x.iter().map(|v| v * v).sum::<f64>())
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        ensure_finite(x)?;
        Ok(x.to_vec())
    }

    fn hessian(&self, x: &[f64]) -> Result<SymMat> {
        ensure_finite(x)?;
        Ok(SymMat::identity(x.len()))
    }
}

/// Uniformly convex quartic well |x|²/2 + Σ x_i⁴/12; D²w = I + diag(x_i²).
#[derive(Debug, Clone, Copy)]
pub struct QuarticWell {
    pub dim: usize,
}

impl ScalarField for QuarticWell {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        ensure_finite(x)?;
        Ok(x.iter().map(|v| 0.5 * v * v + v.powi(4) / 12.0).sum())
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        ensure_finite(x)?;
        Ok(x.iter().map(|v| v + v.powi(3) / 3.0).collect())
    }

    fn hessian(&self, x: &[f64]) -> Result<SymMat> {
        ensure_finite(x)?;
        let n = x.len();
        Ok(SymMat::from_fn(n, |i, j| {
            if i == j {
                1.0 + x[i] * x[i]
            } else {
                0.0
            }
        }))
    }
}

/// Wraps a plain value function with finite-difference derivatives.
pub struct NumericField<F: Fn(&[f64]) -> f64 + Sync> {
    pub dim: usize,
    pub f: F,
    pub grad_scheme: DiffScheme,
    pub hess_scheme: DiffScheme,
}

impl<F: Fn(&[f64]) -> f64 + Sync> NumericField<F> {
    pub fn new(dim: usize, f: F) -> Self {
        NumericField {
            dim,
            f,
            grad_scheme: DiffScheme::gradient_default(),
            hess_scheme: DiffScheme::hessian_default(),
        }
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> ScalarField for NumericField<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        ensure_finite(x)?;
        Ok((self.f)(x))
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        numeric_gradient(&|p| (self.f)(p), x, self.grad_scheme)
    }

    fn hessian(&self, x: &[f64]) -> Result<SymMat> {
        numeric_hessian(&|p| (self.f)(p), x, self.hess_scheme)
    }
}
