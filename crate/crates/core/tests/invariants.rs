//! Dense deterministic sweeps of the module invariants: positivity and
//! convexity grids, homogeneity over large sample sets, and analytic-versus-
//! numeric derivative agreement away from the seam.

use phimin_core::calculus::{
    homogeneous_extend, numeric_hessian, restricted_hessian, tangent_frame, DiffScheme,
};
use phimin_core::field::ScalarField;
use phimin_core::linalg;
use phimin_core::phi::{HomogeneousIntegrand, PhiIntegrand, PhiSlice};
use phimin_core::psi::{Psi2d, PsiProfile};
use phimin_core::psi3d::PsiBig;
use phimin_core::sphere::{random_unit_vector, uniform01};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

#[test]
fn psi_positive_and_uniformly_convex_on_dense_grid() {
    // 10⁶ grid points on [−50, 50]²: value positive, Hessian positive
    // definite, determinant identity to 1e-10 relative.
    let n = 1000;
    let mut min_value = f64::INFINITY;
    let mut min_eig = f64::INFINITY;
    let mut max_det_dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let x = -50.0 + 100.0 * (i as f64 + 0.5) / n as f64;
            let y = -50.0 + 100.0 * (j as f64 + 0.5) / n as f64;
            let e = Psi2d::eval(x, y).unwrap();
            min_value = min_value.min(e.value);
            let tr = e.hess[0][0] + e.hess[1][1];
            let det = e.hess[0][0] * e.hess[1][1] - e.hess[0][1] * e.hess[0][1];
            min_eig = min_eig.min(0.5 * (tr - (tr * tr - 4.0 * det).max(0.0).sqrt()));
            let closed = Psi2d::hess_det_closed(x, y).unwrap();
            max_det_dev = max_det_dev.max((det - closed).abs() / closed);
        }
    }
    assert!(min_value > 0.0, "min ψ = {min_value}");
    assert!(min_eig > 0.0, "min eigenvalue = {min_eig}");
    assert!(max_det_dev <= 1e-10, "det identity deviation {max_det_dev}");
}

#[test]
fn psibig_positive_on_million_sphere_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut min_value = f64::INFINITY;
    for _ in 0..1_000_000 {
        let p = random_unit_vector(&mut rng, 3);
        min_value = min_value.min(PsiBig::value(p[0], p[1], p[2]));
    }
    assert!(min_value > 0.0, "min Ψ on sphere = {min_value}");
    // The sphere minimum of Ψ is 1, attained at the axis points.
    assert!((1.0 - 1e-12..1.02).contains(&min_value));
}

#[test]
fn homogeneous_extension_over_ten_thousand_triples() {
    let sphere_fn = |p: &[f64]| PsiBig::value(p[0], p[1], p[2]);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let dir = random_unit_vector(&mut rng, 3);
        let r = 0.02 * (1000.0_f64).powf(uniform01(&mut rng));
        let lam = 0.02 * (1000.0_f64).powf(uniform01(&mut rng));
        let w = linalg::scale(&dir, r);
        let wl = linalg::scale(&w, lam);
        let a = homogeneous_extend(&sphere_fn, &w).unwrap();
        let b = homogeneous_extend(&sphere_fn, &wl).unwrap();
        worst = worst.max((b - lam * a).abs() / (lam * a).abs());
    }
    assert!(worst <= 1e-10, "homogeneity deviation {worst}");
}

#[test]
fn restricted_hessian_sources_agree_on_thousand_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut count = 0;
    let mut worst: f64 = 0.0;
    while count < 1000 {
        let nu = random_unit_vector(&mut rng, 3);
        // Stay away from the axis rays where Ψ is only C^{2,1}.
        if nu[0].hypot(nu[2]) < 0.2 || nu[1].hypot(nu[2]) < 0.2 {
            continue;
        }
        count += 1;
        let frame = tangent_frame(&nu).unwrap();
        let analytic = PsiBig::eval(nu[0], nu[1], nu[2]).unwrap().hess_mat();
        let numeric = numeric_hessian(
            &|p: &[f64]| PsiBig::value(p[0], p[1], p[2]),
            &nu,
            DiffScheme::hessian_default(),
        )
        .unwrap();
        let ra = restricted_hessian(&analytic, &frame);
        let rn = restricted_hessian(&numeric, &frame);
        for a in 0..2 {
            for b in 0..2 {
                worst = worst.max((ra.get(a, b) - rn.get(a, b)).abs());
            }
        }
    }
    assert!(worst <= 1e-5, "restricted Hessian disagreement {worst}");
}

#[test]
fn analytic_derivatives_match_numeric_at_off_seam_points() {
    // 10⁴ points split across the four closed-form objects.
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    let scheme = DiffScheme::hessian_default();
    let mut worst: f64 = 0.0;

    for _ in 0..2500 {
        let (x, y) = (6.0 * uniform01(&mut rng) - 3.0, 6.0 * uniform01(&mut rng) - 3.0);
        let e = Psi2d::eval(x, y).unwrap();
        let num = numeric_hessian(&|p: &[f64]| Psi2d::value(p[0], p[1]), &[x, y], scheme).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((e.hess[i][j] - num.get(i, j)).abs());
            }
        }
    }

    let mut accepted = 0;
    while accepted < 2500 {
        let nu = random_unit_vector(&mut rng, 3);
        if nu[0].hypot(nu[2]) < 0.2 || nu[1].hypot(nu[2]) < 0.2 {
            continue;
        }
        accepted += 1;
        let e = PsiBig::eval(nu[0], nu[1], nu[2]).unwrap();
        let num = numeric_hessian(
            &|p: &[f64]| PsiBig::value(p[0], p[1], p[2]),
            &nu,
            scheme,
        )
        .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((e.hess[i][j] - num.get(i, j)).abs());
            }
        }
    }

    let phi7 = PhiIntegrand::seven_dim();
    let mut accepted = 0;
    while accepted < 2500 {
        let w = random_unit_vector(&mut rng, 7);
        if phi7.seam_distance(&w).unwrap() < 0.05 {
            continue;
        }
        accepted += 1;
        let h = phi7.hessian(&w).unwrap().matrix;
        let num = numeric_hessian(&|p: &[f64]| phi7.value(p).unwrap(), &w, scheme).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                worst = worst.max((h.get(i, j) - num.get(i, j)).abs());
            }
        }
    }

    let phi0 = PhiIntegrand::six_dim_restriction();
    let mut accepted = 0;
    while accepted < 2500 {
        let w = random_unit_vector(&mut rng, 6);
        if phi0.seam_distance(&w).unwrap() < 0.05 {
            continue;
        }
        accepted += 1;
        let h = phi0.hessian(&w).unwrap().matrix;
        let num = numeric_hessian(&|p: &[f64]| phi0.value(p).unwrap(), &w, scheme).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                worst = worst.max((h.get(i, j) - num.get(i, j)).abs());
            }
        }
    }

    assert!(worst <= 1e-5, "analytic vs numeric disagreement {worst}");
}

#[test]
fn phi_agrees_with_direct_formula_on_ten_thousand_points() {
    // The two-path implementation against a plain transcription of the
    // closed formula, away from the block axes where the latter is posed.
    let phi = PhiIntegrand::seven_dim();
    let direct = |x: f64, y: f64, z: f64| {
        let plus = ((x + y) * (x + y) + 2.0 * z * z).powf(1.5);
        let minus = ((x - y) * (x - y) + 2.0 * z * z).powf(1.5);
        (plus - minus) / (2f64.powf(2.5) * x * y)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(83);
    let mut accepted = 0;
    let mut worst: f64 = 0.0;
    while accepted < 10_000 {
        let w = random_unit_vector(&mut rng, 7);
        let x = linalg::norm(&w[..3]);
        let y = linalg::norm(&w[3..6]);
        if x * y <= 1e-3 {
            continue;
        }
        accepted += 1;
        let v = phi.value(&w).unwrap();
        let oracle = direct(x, y, w[6]);
        worst = worst.max((v - oracle).abs() / oracle.abs());
    }
    assert!(worst <= 1e-10, "relative disagreement {worst}");
}

#[test]
fn legendre_identities_over_thousand_points() {
    // ∇w*(p) = X(p) and D²w*(p)·D²w(X(p)) = I within 1e-7 on the quartic
    // well.
    use phimin_core::field::QuarticWell;
    use phimin_core::legendre::LegendreDual;
    let w = QuarticWell { dim: 3 };
    let dual = LegendreDual::new(&w);
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let y: Vec<f64> = (0..3).map(|_| 4.0 * uniform01(&mut rng) - 2.0).collect();
        let x = dual.gradient(&y).unwrap();
        let gw = w.gradient(&x).unwrap();
        for i in 0..3 {
            worst = worst.max((gw[i] - y[i]).abs());
        }
        let hs = dual.hessian(&y).unwrap();
        let hw = w.hessian(&x).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let prod: f64 = (0..3).map(|k| hs.get(i, k) * hw.get(k, j)).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod - expect).abs());
            }
        }
    }
    assert!(worst <= 1e-7, "transform identity deviation {worst}");
}

#[test]
fn wulff_gradient_zero_homogeneity_over_ten_thousand_samples() {
    let phi7 = PhiIntegrand::seven_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let dir = random_unit_vector(&mut rng, 7);
        let g1 = phi7.gradient(&dir).unwrap();
        let g2 = phi7.gradient(&linalg::scale(&dir, 2.0)).unwrap();
        for (a, b) in g1.iter().zip(&g2) {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst <= 1e-10, "zero-homogeneity deviation {worst}");
}

#[test]
fn integrand_spectrum_bounds_on_quarter_sphere() {
    // By the block-rotation symmetry the tangential spectrum of D²Φ at
    // (x p̂, y q̂, z) does not depend on the directions p̂, q̂, so a dense
    // scan of the reduced quarter sphere {x² + y² + z² = 1, x, y ≥ 0}
    // certifies the global bounds. The extremes have closed forms: the
    // minimum 1/√2 is approached along the block-axis edges in {z = 0}
    // (the angular eigenvalue there is (1 + 2z²)/(√2 (1 + z²)^{3/2})) and
    // the maximum 3 sits at the cone seam x = y, z = 0.
    use phimin_core::calculus::{restricted_hessian, tangent_frame};
    let phi = PhiIntegrand::seven_dim();
    let n = 220;
    let mut min_eig = f64::INFINITY;
    let mut max_eig = f64::NEG_INFINITY;
    let mut argmin = (0.0, 0.0, 0.0);
    for i in 0..=n {
        let theta = std::f64::consts::FRAC_PI_2 * i as f64 / n as f64;
        for j in 0..=n {
            // z from -1 to 1 to also cross the z = 0 plane exactly.
            let zc = -1.0 + 2.0 * j as f64 / n as f64;
            let r = (1.0 - zc * zc).max(0.0).sqrt();
            let (x, y) = (r * theta.cos(), r * theta.sin());
            let w = [x, 0.0, 0.0, 0.0, y, 0.0, zc];
            if linalg::norm(&w) < 0.5 {
                continue;
            }
            let h = match phi.hessian(&w) {
                Ok(h) => h,
                Err(_) => continue, // the origin-only guard never fires here
            };
            let frame = tangent_frame(&linalg::normalize(&w).unwrap()).unwrap();
            let eigs = restricted_hessian(&h.matrix, &frame).eigenvalues();
            if eigs[0] < min_eig {
                min_eig = eigs[0];
                argmin = (x, y, zc);
            }
            max_eig = max_eig.max(eigs[eigs.len() - 1]);
        }
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    assert!(
        min_eig > inv_sqrt2 - 1e-9 && min_eig < inv_sqrt2 + 2e-2,
        "min tangential eigenvalue {min_eig} at {argmin:?}"
    );
    // The minimizing direction sits on a block-axis edge in {z = 0}.
    assert!(argmin.0.min(argmin.1) < 0.05 && argmin.2.abs() < 0.05, "argmin {argmin:?}");
    assert!((max_eig - 3.0).abs() < 1e-9, "max tangential eigenvalue {max_eig}");
}

#[test]
fn slice_gradient_consistent_with_profile_derivatives() {
    // ∇φ along an axis-aligned slice must reproduce the planar derivatives
    // of the profile form.
    let slice = PhiSlice::new();
    let psi = PsiProfile::generating();
    for &(x, y) in &[(0.7, 1.9), (2.2, 0.4), (1.1, 1.1)] {
        let v = [x, 0.0, 0.0, y, 0.0, 0.0];
        let g = slice.gradient(&v).unwrap();
        let e = psi.eval(x, y).unwrap();
        assert!((g[0] - e.grad[0]).abs() < 1e-11, "{} vs {}", g[0], e.grad[0]);
        assert!((g[3] - e.grad[1]).abs() < 1e-11);
    }
}
