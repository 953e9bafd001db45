//! Property-based invariants for the numerical kernels.

use phimin_core::calculus::{
    homogeneous_extend, numeric_hessian, restricted_hessian, tangent_frame, DiffScheme,
};
use phimin_core::field::{QuarticWell, ScalarField};
use phimin_core::legendre::LegendreDual;
use phimin_core::linalg::{self, SymMat};
use phimin_core::phi::{HomogeneousIntegrand, PhiIntegrand};
use phimin_core::psi::{Psi2d, PsiProfile};
use phimin_core::psi3d::PsiBig;
use proptest::prelude::*;

fn unit_vector(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, dim).prop_filter_map("nonzero direction", |v| {
        let n = linalg::norm(&v);
        if n > 0.1 {
            Some(linalg::scale(&v, 1.0 / n))
        } else {
            None
        }
    })
}

proptest! {
    #[test]
    fn homogeneous_extension_scales_linearly(
        w in unit_vector(3),
        r in 0.05..20.0f64,
        lam in 0.05..20.0f64,
    ) {
        let sphere_fn = |p: &[f64]| PsiBig::value(p[0], p[1], p[2]);
        let point = linalg::scale(&w, r);
        let scaled = linalg::scale(&point, lam);
        let a = homogeneous_extend(&sphere_fn, &point).unwrap();
        let b = homogeneous_extend(&sphere_fn, &scaled).unwrap();
        prop_assert!((b - lam * a).abs() <= 1e-10 * a.abs().max(1.0));
    }

    #[test]
    fn tangent_frames_are_orthonormal_and_repeatable(nu in unit_vector(7)) {
        let f1 = tangent_frame(&nu).unwrap();
        let f2 = tangent_frame(&nu).unwrap();
        prop_assert_eq!(f1.basis.len(), 6);
        for (a, b) in f1.basis.iter().zip(&f2.basis) {
            prop_assert_eq!(a, b);
        }
        for (i, a) in f1.basis.iter().enumerate() {
            prop_assert!(linalg::dot(a, &nu).abs() < 1e-12);
            for (j, b) in f1.basis.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!((linalg::dot(a, b) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn numeric_hessian_recovers_quadratic_forms(
        coefs in prop::collection::vec(-3.0..3.0f64, 6),
        x in prop::collection::vec(-2.0..2.0f64, 3),
    ) {
        // Q(x) = ½ xᵀ A x with A from the 6 packed coefficients.
        let a = SymMat::from_fn(3, |i, j| {
            let idx = if i <= j { i * 3 + j - i * (i + 1) / 2 } else { j * 3 + i - j * (j + 1) / 2 };
            coefs[idx]
        });
        let f = |p: &[f64]| 0.5 * a.quad_form(p, p);
        let h = numeric_hessian(&f, &x, DiffScheme::hessian_default()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((h.get(i, j) - a.get(i, j)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn psi_is_even_and_symmetric(x in -30.0..30.0f64, y in -30.0..30.0f64) {
        let v = Psi2d::value(x, y);
        prop_assert_eq!(v, Psi2d::value(y, x));
        prop_assert_eq!(v, Psi2d::value(-x, y));
        prop_assert_eq!(v, Psi2d::value(x, -y));
        prop_assert!(v > 0.0);
    }

    #[test]
    fn psi_det_identity_everywhere(x in -20.0..20.0f64, y in -20.0..20.0f64) {
        let e = Psi2d::eval(x, y).unwrap();
        let det = e.hess[0][0] * e.hess[1][1] - e.hess[0][1] * e.hess[0][1];
        let closed = Psi2d::hess_det_closed(x, y).unwrap();
        prop_assert!((det - closed).abs() <= 1e-10 * closed);
    }

    #[test]
    fn rotation_identity(x in 0.05..8.0f64, y in 0.05..8.0f64) {
        let psi = PsiProfile::generating();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let lhs = psi.value(x, y).unwrap();
        let rhs = Psi2d::value((x + y) * s, (x - y) * s);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn psibig_homogeneity_identity(
        x in -4.0..4.0f64,
        y in -4.0..4.0f64,
        z in prop::sample::select(vec![-2.0, -0.5, 0.3, 1.7]),
    ) {
        let lhs = PsiBig::value(x, y, z);
        let rhs = z.abs() * Psi2d::value(x / z, y / z);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * rhs.abs());
    }

    #[test]
    fn phi_paths_agree_on_overlap_band(
        dir_p in unit_vector(3),
        dir_q in unit_vector(3),
        t in 0.25..0.40f64,
        z in -1.0..1.0f64,
    ) {
        // Block radii (1, t) with moderate z straddle the series/direct
        // switch; evaluate the full integrand and the numeric gradient of
        // whichever path is active against the other path's value through
        // a scaled probe.
        let phi = PhiIntegrand::seven_dim();
        let mut w: Vec<f64> = dir_p.clone();
        w.extend(dir_q.iter().map(|v| v * t));
        w.push(z);
        let v = phi.value(&w).unwrap();
        // Compare against the direct closed formula (valid off the axes).
        let x = 1.0;
        let y = t;
        let plus = ((x + y) * (x + y) + 2.0 * z * z).powf(1.5);
        let minus = ((x - y) * (x - y) + 2.0 * z * z).powf(1.5);
        let oracle = (plus - minus) / (2f64.powf(2.5) * x * y);
        prop_assert!((v - oracle).abs() <= 1e-10 * oracle);
    }

    #[test]
    fn phi_evenness_and_kernel(w in prop::collection::vec(-2.0..2.0f64, 7)) {
        let n = linalg::norm(&w);
        prop_assume!(n > 0.2);
        let phi = PhiIntegrand::seven_dim();
        let neg: Vec<f64> = w.iter().map(|v| -v).collect();
        prop_assert_eq!(phi.value(&w).unwrap(), phi.value(&neg).unwrap());
        let h = phi.hessian(&w).unwrap().matrix;
        let hv = h.mat_vec(&w);
        for c in hv {
            prop_assert!(c.abs() < 1e-11 * (1.0 + h.max_abs()));
        }
    }

    #[test]
    fn restricted_hessian_sources_agree_for_psibig(nu in unit_vector(3)) {
        // Stay away from the axis rays where only one-sided limits exist.
        prop_assume!(nu[0].hypot(nu[2]) > 0.15 && nu[1].hypot(nu[2]) > 0.15);
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
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((ra.get(i, j) - rn.get(i, j)).abs() < 1e-5);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn legendre_involution_on_quartic_well(x in prop::collection::vec(-1.2..1.2f64, 2)) {
        let w = QuarticWell { dim: 2 };
        let dual = LegendreDual::new(&w);
        let ddual = LegendreDual::new(&dual);
        let back = ddual.value(&x).unwrap();
        let direct = w.value(&x).unwrap();
        prop_assert!((back - direct).abs() < 1e-8);
    }
}
