//! Negative controls: the certification path must reject integrands that
//! are not uniformly elliptic when they are swapped in for the real ones.

use phimin_cli::config::RunConfig;
use phimin_cli::suites::run_certify_on;
use phimin_core::km::KmCandidateIntegrand;
use phimin_core::phi::{EuclideanNorm, PhiIntegrand};

fn small_config() -> RunConfig {
    let mut config = RunConfig::default();
    config.override_samples(5_000);
    config
}

#[test]
fn certifier_rejects_the_km_candidate() {
    // The k = 1, m = 4 candidate blows up toward {z = 0}: its tangential
    // eigenvalue spread explodes and the suite must fail.
    let config = small_config();
    let candidate = KmCandidateIntegrand;
    let phi0 = PhiIntegrand::six_dim_restriction();
    let suite = run_certify_on(&config, &candidate, &phi0).unwrap();
    assert!(!suite.pass, "certifier accepted a non-elliptic integrand: {suite:?}");
    let ratio = suite.metrics.get("phi7_eig_ratio").unwrap();
    assert!(
        *ratio > 1e3 || suite.metrics["phi7_min_tangential_eig"] <= 0.0,
        "expected eigenvalue pathology, got ratio {ratio}"
    );
}

#[test]
fn certifier_accepts_the_round_integrand() {
    // Smoke test for the same path: the Euclidean norm certifies with unit
    // tangential spectrum (and the seam checks still run on Ψ).
    let config = small_config();
    let round7 = EuclideanNorm { dim: 7 };
    let round6 = EuclideanNorm { dim: 6 };
    let suite = run_certify_on(&config, &round7, &round6).unwrap();
    assert!(suite.pass, "{suite:?}");
    let min7 = suite.metrics["phi7_min_tangential_eig"];
    let max7 = suite.metrics["phi7_max_tangential_eig"];
    assert!((min7 - 1.0).abs() < 1e-8 && (max7 - 1.0).abs() < 1e-8);
}
