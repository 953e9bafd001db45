//! Shared numerical calculus: deterministic tangent frames, homogeneous
//! extension, and finite-difference derivatives with Richardson
//! extrapolation. These are the cross-check oracles for the hand-derived
//! analytic formulas elsewhere in the crate.

use crate::error::{ensure_finite, Error, Result};
use crate::linalg::{self, SymMat};

/// Central-difference scheme. `richardson_levels` refinements halve the step
/// each time and extrapolate the h²-expansion; at most 4 levels.
#[derive(Debug, Clone, Copy)]
pub struct DiffScheme {
    pub step: f64,
    pub richardson_levels: usize,
}

impl DiffScheme {
    pub fn new(step: f64, richardson_levels: usize) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::Domain(format!("step must be positive, got {step}")));
        }
        if richardson_levels > 4 {
            return Err(Error::Domain(
                "at most 4 Richardson levels are supported".into(),
            ));
        }
        Ok(DiffScheme { step, richardson_levels })
    }

    /// Default for first derivatives.
    pub fn gradient_default() -> Self {
        DiffScheme { step: 1e-5, richardson_levels: 2 }
    }

    /// Default for second derivatives. The step is larger than for gradients:
    /// the h⁻² rounding amplification of the second difference dominates
    /// below ~1e-4.
    pub fn hessian_default() -> Self {
        DiffScheme { step: 4e-3, richardson_levels: 2 }
    }

    fn scaled_step(&self, x: &[f64]) -> f64 {
        let r = linalg::norm(x);
        self.step * r.max(1.0)
    }
}

fn richardson(samples: &[f64]) -> f64 {
    // samples[k] computed with step h/2^k, error expansion in h².
    let mut tab = samples.to_vec();
    let m = tab.len();
    for level in 1..m {
        let factor = 4f64.powi(level as i32);
        for k in (level..m).rev() {
            tab[k] = (factor * tab[k] - tab[k - 1]) / (factor - 1.0);
        }
    }
    tab[m - 1]
}

fn eval_checked(f: &dyn Fn(&[f64]) -> f64, x: &[f64]) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { point: x.to_vec() })
    }
}

pub fn numeric_gradient(
    f: &dyn Fn(&[f64]) -> f64,
    x: &[f64],
    scheme: DiffScheme,
) -> Result<Vec<f64>> {
    ensure_finite(x)?;
    let n = x.len();
    let h0 = scheme.scaled_step(x);
    let mut g = vec![0.0; n];
    let mut xp = x.to_vec();
    for i in 0..n {
        let mut samples = Vec::with_capacity(scheme.richardson_levels + 1);
        for level in 0..=scheme.richardson_levels {
            let h = h0 / 2f64.powi(level as i32);
            xp[i] = x[i] + h;
            let fp = eval_checked(f, &xp)?;
            xp[i] = x[i] - h;
            let fm = eval_checked(f, &xp)?;
            xp[i] = x[i];
            samples.push((fp - fm) / (2.0 * h));
        }
        g[i] = richardson(&samples);
    }
    Ok(g)
}

/// Symmetric-by-construction numeric Hessian: mixed entries use the four-point
/// cross difference, which is already symmetric in (i, j).
pub fn numeric_hessian(
    f: &dyn Fn(&[f64]) -> f64,
    x: &[f64],
    scheme: DiffScheme,
) -> Result<SymMat> {
    ensure_finite(x)?;
    let n = x.len();
    let h0 = scheme.scaled_step(x);
    let f0 = eval_checked(f, x)?;
    let mut xp = x.to_vec();
    let mut entry = |i: usize, j: usize| -> Result<f64> {
        let mut samples = Vec::with_capacity(scheme.richardson_levels + 1);
        for level in 0..=scheme.richardson_levels {
            let h = h0 / 2f64.powi(level as i32);
            let v = if i == j {
                xp[i] = x[i] + h;
                let fp = eval_checked(f, &xp)?;
                xp[i] = x[i] - h;
                let fm = eval_checked(f, &xp)?;
                xp[i] = x[i];
                (fp - 2.0 * f0 + fm) / (h * h)
            } else {
                xp[i] = x[i] + h;
                xp[j] = x[j] + h;
                let fpp = eval_checked(f, &xp)?;
                xp[j] = x[j] - h;
                let fpm = eval_checked(f, &xp)?;
                xp[i] = x[i] - h;
                let fmm = eval_checked(f, &xp)?;
                xp[j] = x[j] + h;
                let fmp = eval_checked(f, &xp)?;
                xp[i] = x[i];
                xp[j] = x[j];
                (fpp - fpm - fmp + fmm) / (4.0 * h * h)
            };
            samples.push(v);
        }
        Ok(richardson(&samples))
    };
    let mut m = SymMat::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            m.set(i, j, entry(i, j)?);
        }
    }
    Ok(m)
}

/// Fourth-order five-point second difference along coordinate `i`; used by
/// the wave-operator checks where extra accuracy is wanted without
/// extrapolation.
pub fn fourth_order_second_diff(
    f: &dyn Fn(&[f64]) -> f64,
    x: &[f64],
    i: usize,
    h: f64,
) -> Result<f64> {
    ensure_finite(x)?;
    let mut xp = x.to_vec();
    let mut at = |offset: f64| -> Result<f64> {
        xp[i] = x[i] + offset;
        let v = eval_checked(f, &xp)?;
        xp[i] = x[i];
        Ok(v)
    };
    let f2p = at(2.0 * h)?;
    let f1p = at(h)?;
    let f0 = at(0.0)?;
    let f1m = at(-h)?;
    let f2m = at(-2.0 * h)?;
    Ok((-f2p + 16.0 * f1p - 30.0 * f0 + 16.0 * f1m - f2m) / (12.0 * h * h))
}

/// Orthonormal frame spanning the orthogonal complement of a unit vector.
#[derive(Debug, Clone)]
pub struct TangentFrame {
    pub base_direction: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
}

/// Deterministic frame: Gram–Schmidt over the standard basis, skipping the
/// axis most parallel to `nu`. Identical input yields identical output.
pub fn tangent_frame(nu: &[f64]) -> Result<TangentFrame> {
    ensure_finite(nu)?;
    let n = nu.len();
    if n < 2 {
        return Err(Error::Domain("tangent frame needs ambient dimension >= 2".into()));
    }
    if (linalg::norm(nu) - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "tangent_frame expects a unit vector, |nu| = {}",
            linalg::norm(nu)
        )));
    }
    let skip = (0..n)
        .max_by(|&i, &j| {
            nu[i]
                .abs()
                .partial_cmp(&nu[j].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(j.cmp(&i))
        })
        .unwrap();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    for axis in 0..n {
        if axis == skip {
            continue;
        }
        let mut v = vec![0.0; n];
        v[axis] = 1.0;
        let proj = linalg::dot(&v, nu);
        for k in 0..n {
            v[k] -= proj * nu[k];
        }
        for b in &basis {
            let p = linalg::dot(&v, b);
            for k in 0..n {
                v[k] -= p * b[k];
            }
        }
        let v = linalg::normalize(&v)
            .ok_or_else(|| Error::Domain("degenerate direction in frame construction".into()))?;
        basis.push(v);
    }
    Ok(TangentFrame { base_direction: nu.to_vec(), basis })
}

/// One-homogeneous extension |w| · F(w/|w|) of a function on the unit sphere.
pub fn homogeneous_extend(f_sphere: &dyn Fn(&[f64]) -> f64, w: &[f64]) -> Result<f64> {
    ensure_finite(w)?;
    let r = linalg::norm(w);
    if r == 0.0 {
        return Err(Error::Domain(
            "homogeneous extension is only continuous at the origin; value 0 by convention must be requested explicitly".into(),
        ));
    }
    let unit = linalg::scale(w, 1.0 / r);
    Ok(r * f_sphere(&unit))
}

/// Restriction of a full Hessian to a tangent frame: M_ab = e_aᵀ H e_b.
pub fn restricted_hessian(full: &SymMat, frame: &TangentFrame) -> SymMat {
    let m = frame.basis.len();
    SymMat::from_fn(m, |a, b| full.quad_form(&frame.basis[a], &frame.basis[b]))
}

/// Least-squares slope of ln|err| against ln h, skipping entries below the
/// rounding floor; used for empirical convergence-order fits.
pub fn fit_log_slope(steps: &[f64], errors: &[f64], floor: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = steps
        .iter()
        .zip(errors)
        .filter(|(_, e)| **e > floor)
        .map(|(h, e)| (h.ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}
