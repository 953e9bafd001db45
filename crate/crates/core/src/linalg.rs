//! Small dense linear algebra for dimensions up to about eight.
//!
//! Everything here is deterministic: the Jacobi sweep order, the pivot choice
//! and the sort tie-breaking are fixed, so repeated runs produce bit-identical
//! output.

use crate::error::{Error, Result};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn normalize(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    if n > 0.0 && n.is_finite() {
        Some(scale(a, 1.0 / n))
    } else {
        None
    }
}

/// Dense symmetric matrix, stored row-major in full.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMat {
    n: usize,
    a: Vec<f64>,
}

impl SymMat {
    pub fn zeros(n: usize) -> Self {
        SymMat { n, a: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v = f(i, j);
                m.a[i * n + j] = v;
                m.a[j * n + i] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    pub fn add_assign_sym(&mut self, other: &SymMat, coef: f64) {
        assert_eq!(self.n, other.n);
        for (x, y) in self.a.iter_mut().zip(&other.a) {
            *x += coef * y;
        }
    }

    /// Adds coef * (u vᵀ + v uᵀ) / 2 symmetrized; for u = v this is coef * u uᵀ.
    pub fn add_outer(&mut self, coef: f64, u: &[f64], v: &[f64]) {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                self.a[i * n + j] += coef * 0.5 * (u[i] * v[j] + v[i] * u[j]);
            }
        }
    }

    pub fn scale_assign(&mut self, s: f64) {
        for x in &mut self.a {
            *x *= s;
        }
    }

    pub fn mat_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n).map(|i| dot(&self.a[i * n..(i + 1) * n], x)).collect()
    }

    pub fn quad_form(&self, u: &[f64], v: &[f64]) -> f64 {
        dot(u, &self.mat_vec(v))
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.a.iter().all(|x| x.is_finite())
    }

    /// tr(self · other), both symmetric.
    pub fn trace_product(&self, other: &SymMat) -> f64 {
        assert_eq!(self.n, other.n);
        dot(&self.a, &other.a)
    }

    /// Eigenvalues (ascending) and matching orthonormal eigenvectors via
    /// cyclic Jacobi rotations.
    pub fn eigen(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        let n = self.n;
        let mut a = self.a.clone();
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        let frob = dot(&a, &a).sqrt().max(f64::MIN_POSITIVE);
        let tol = 1e-15 * frob;
        for _sweep in 0..60 {
            let mut off = 0.0_f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[p * n + q] * a[p * n + q];
                }
            }
            if off.sqrt() <= tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq.abs() <= 1e-300 {
                        continue;
                    }
                    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| {
            a[i * n + i]
                .partial_cmp(&a[j * n + j])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(i.cmp(&j))
        });
        let values = idx.iter().map(|&i| a[i * n + i]).collect();
        let vectors = idx
            .iter()
            .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
            .collect();
        (values, vectors)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().0
    }

    /// Solve self · x = b by LU with partial pivoting.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        lu_solve(self.n, &self.a, b)
    }

    /// Dense inverse; errors when the matrix is numerically singular.
    pub fn inverse(&self) -> Result<SymMat> {
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            cols.push(self.solve(&e)?);
        }
        // Symmetrize to wash out rounding asymmetry.
        Ok(SymMat::from_fn(n, |i, j| 0.5 * (cols[j][i] + cols[i][j])))
    }

    pub fn det(&self) -> f64 {
        lu_det(self.n, &self.a)
    }

    /// Condition estimate from the extreme eigenvalue magnitudes.
    pub fn cond_estimate(&self) -> f64 {
        let ev = self.eigenvalues();
        let max = ev.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let min = ev.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }

    /// Lower Cholesky factor; requires positive definiteness.
    pub fn cholesky(&self) -> Result<Vec<f64>> {
        let n = self.n;
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = self.a[i * n + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if s <= 0.0 {
                        return Err(Error::Singular { cond: f64::INFINITY });
                    }
                    l[i * n + i] = s.sqrt();
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        Ok(l)
    }
}

fn lu_decompose(n: usize, a: &[f64]) -> Option<(Vec<f64>, Vec<usize>, f64)> {
    let mut lu = a.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for col in 0..n {
        let mut pivot = col;
        let mut best = lu[perm[col] * n + col].abs();
        for row in (col + 1)..n {
            let cand = lu[perm[row] * n + col].abs();
            if cand > best {
                best = cand;
                pivot = row;
            }
        }
        if best == 0.0 {
            return None;
        }
        if pivot != col {
            perm.swap(col, pivot);
            sign = -sign;
        }
        let p = perm[col];
        for row in (col + 1)..n {
            let r = perm[row];
            let factor = lu[r * n + col] / lu[p * n + col];
            lu[r * n + col] = factor;
            for k in (col + 1)..n {
                lu[r * n + k] -= factor * lu[p * n + k];
            }
        }
    }
    Some((lu, perm, sign))
}

fn lu_solve(n: usize, a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let (lu, perm, _) = lu_decompose(n, a).ok_or(Error::Singular { cond: f64::INFINITY })?;
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[perm[i]];
        for k in 0..i {
            s -= lu[perm[i] * n + k] * y[k];
        }
        y[i] = s;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= lu[perm[i] * n + k] * x[k];
        }
        let d = lu[perm[i] * n + i];
        if d == 0.0 || !d.is_finite() {
            return Err(Error::Singular { cond: f64::INFINITY });
        }
        x[i] = s / d;
    }
    Ok(x)
}

fn lu_det(n: usize, a: &[f64]) -> f64 {
    match lu_decompose(n, a) {
        None => 0.0,
        Some((lu, perm, sign)) => {
            let mut d = sign;
            for i in 0..n {
                d *= lu[perm[i] * n + i];
            }
            d
        }
    }
}

/// Eigenvalues of the generalized symmetric problem A v = κ B v with B
/// positive definite, via the Cholesky reduction L⁻¹ A L⁻ᵀ.
pub fn generalized_eigenvalues(a: &SymMat, b: &SymMat) -> Result<Vec<f64>> {
    let n = a.dim();
    assert_eq!(n, b.dim());
    let l = b.cholesky()?;
    // Solve L X = A (column by column), then L Y = Xᵀ: Y = L⁻¹ A L⁻ᵀ.
    let mut x = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..n {
            let mut s = a.get(i, j);
            for k in 0..i {
                s -= l[i * n + k] * x[k * n + j];
            }
            x[i * n + j] = s / l[i * n + i];
        }
    }
    let mut y = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = x[i * n + j];
            for k in 0..j {
                s -= l[j * n + k] * y[i * n + k];
            }
            y[i * n + j] = s / l[j * n + j];
        }
    }
    // Y is symmetric in exact arithmetic; symmetrize the rounding residue.
    let sym = SymMat::from_fn(n, |i, j| 0.5 * (y[i * n + j] + y[j * n + i]));
    Ok(sym.eigenvalues())
}
