mod common;

use common::{random_density, random_pure, rng};
use lsd_core::entanglement::{
    concurrence_pure, entanglement_from_concurrence, entanglement_pure_entropy, is_separable,
    ppt_min_eigenvalue, wootters_concurrence_mixed,
};
use lsd_core::states::{psi_theta, pure_to_density, rho_half, werner, ThetaParam, WernerParam};

#[test]
fn entropy_matches_concurrence_formula() {
    let mut rng = rng(31);
    for _ in 0..1000 {
        let psi = random_pure(&mut rng);
        let e = entanglement_pure_entropy(&psi);
        let via_c = entanglement_from_concurrence(concurrence_pure(&psi)).unwrap();
        assert!((e - via_c).abs() <= 1e-10, "{e} vs {via_c}");
    }
}

#[test]
fn entanglement_is_monotone_in_concurrence() {
    let values: Vec<f64> = (0..=1000)
        .map(|k| entanglement_from_concurrence(k as f64 / 1000.0).unwrap())
        .collect();
    assert_eq!(values[0], 0.0);
    assert!((values[1000] - 1.0).abs() < 1e-15);
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
    for (k, e) in values.iter().enumerate() {
        assert!(*e <= k as f64 / 1000.0 + 1e-15);
    }
}

#[test]
fn wootters_reduces_to_pure_concurrence() {
    let mut rng = rng(32);
    for _ in 0..300 {
        let psi = random_pure(&mut rng);
        let mixed = wootters_concurrence_mixed(&pure_to_density(&psi)).unwrap();
        assert!((mixed - concurrence_pure(&psi)).abs() <= 1e-10);
    }
    for k in 0..=20 {
        let p = ThetaParam::new(k as f64 / 20.0 * std::f64::consts::FRAC_PI_2).unwrap();
        let mixed = wootters_concurrence_mixed(&pure_to_density(&psi_theta(p))).unwrap();
        assert!((mixed - p.sin2theta()).abs() <= 1e-10);
    }
}

#[test]
fn wootters_on_werner_grid() {
    for k in 0..=100 {
        let eps = k as f64 / 100.0;
        let c = wootters_concurrence_mixed(&werner(WernerParam::new(eps).unwrap())).unwrap();
        let expected = ((3.0 * eps - 1.0) / 2.0).max(0.0);
        assert!((c - expected).abs() <= 1e-9, "eps {eps}: {c} vs {expected}");
    }
    assert!((wootters_concurrence_mixed(&rho_half()).unwrap() - 0.25).abs() <= 1e-9);
}

#[test]
fn ppt_and_wootters_agree_on_random_states() {
    let mut rng = rng(33);
    let (mut entangled, mut separable) = (0, 0);
    for k in 0..2000 {
        let rho = random_density(&mut rng, 1 + k % 4);
        let c = wootters_concurrence_mixed(&rho).unwrap();
        let sep = is_separable(&rho, 1e-12).unwrap();
        if c > 1e-6 {
            assert!(
                !sep,
                "C = {c}, PPT margin {}",
                ppt_min_eigenvalue(rho.matrix()).unwrap()
            );
            entangled += 1;
        } else if c < 1e-12 {
            assert!(
                sep,
                "C = {c}, PPT margin {}",
                ppt_min_eigenvalue(rho.matrix()).unwrap()
            );
            separable += 1;
        }
    }
    assert!(
        entangled > 100 && separable > 100,
        "{entangled} entangled, {separable} separable"
    );
}
