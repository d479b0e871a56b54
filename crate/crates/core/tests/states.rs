mod common;

use common::{random_density, random_hermitian, rng};
use lsd_core::numerics::min_eigenvalue;
use lsd_core::states::{
    from_pauli_form, partial_trace, partial_transpose_b, pseudo_mixture, rho_half, to_pauli_form,
    werner, Subsystem, ThetaParam, WernerParam,
};
use lsd_core::{ComplexMatrix, DensityMatrix};

#[test]
fn partial_transpose_is_an_involution() {
    let mut rng = rng(21);
    for _ in 0..1000 {
        let m = random_hermitian(&mut rng, 4);
        let pt = partial_transpose_b(&m).unwrap();
        assert!(partial_transpose_b(&pt).unwrap().max_abs_diff(&m).unwrap() <= 1e-12);
        assert!((pt.trace() - m.trace()).norm() <= 1e-12);
        assert!(pt.hermiticity_defect() <= 1e-12);
    }
}

#[test]
fn werner_partial_transpose_sign() {
    for k in 0..=300 {
        let eps = k as f64 / 300.0;
        let pt = partial_transpose_b(werner(WernerParam::new(eps).unwrap()).matrix()).unwrap();
        let min = min_eigenvalue(&pt).unwrap();
        assert!((min - (1.0 - 3.0 * eps) / 4.0).abs() < 1e-12, "eps {eps}");
        if k < 100 {
            assert!(min > 0.0);
        } else if k > 100 {
            assert!(min < 0.0);
        }
    }
}

#[test]
fn pauli_form_round_trip() {
    let mut rng = rng(22);
    for k in 0..100 {
        let rho = random_density(&mut rng, 1 + k % 4);
        let form = to_pauli_form(rho.matrix()).unwrap();
        let back = from_pauli_form(&form);
        assert!(back.max_abs_diff(rho.matrix()).unwrap() <= 1e-12);
        assert!(to_pauli_form(&back).unwrap().max_abs_diff(&form) <= 1e-12);
    }
}

#[test]
fn pseudo_mixture_has_unit_trace() {
    for i in 0..=20 {
        let p = ThetaParam::new(i as f64 / 20.0 * std::f64::consts::FRAC_PI_2).unwrap();
        for j in 0..=12 {
            let x = j as f64 * 0.25;
            let m = pseudo_mixture(p, x).unwrap();
            assert!((m.trace().re - 1.0).abs() <= 1e-12 && m.trace().im.abs() <= 1e-15);
            assert!(m.hermiticity_defect() <= 1e-15);
        }
    }
    assert!(pseudo_mixture(ThetaParam::new(0.3).unwrap(), -0.1).is_err());
}

#[test]
fn pseudo_mixture_at_zero_is_rho_half() {
    let m = pseudo_mixture(ThetaParam::from_sin2theta(0.8).unwrap(), 0.0).unwrap();
    assert!(m.max_abs_diff(rho_half().matrix()).unwrap() <= 1e-15);
}

#[test]
fn partial_traces_of_random_states() {
    let mut rng = rng(23);
    for _ in 0..100 {
        let rho = random_density(&mut rng, 2);
        for which in [Subsystem::A, Subsystem::B] {
            let r = partial_trace(rho.matrix(), which).unwrap();
            assert_eq!(r.dim(), 2);
            assert!((r.trace().re - 1.0).abs() <= 1e-12);
            assert!(min_eigenvalue(&r).unwrap() >= -1e-12);
        }
    }
    let rho = werner(WernerParam::new(0.7).unwrap());
    let half = ComplexMatrix::identity(2).unwrap().scale_re(0.5);
    assert!(
        partial_trace(rho.matrix(), Subsystem::A)
            .unwrap()
            .max_abs_diff(&half)
            .unwrap()
            < 1e-15
    );
}

#[test]
fn density_matrix_validation() {
    let m = ComplexMatrix::diag(&[0.5, 0.5, 0.5, -0.5]).unwrap();
    assert!(DensityMatrix::new(m).is_err());
    let m = ComplexMatrix::diag(&[0.5, 0.5, 0.5, 0.5]).unwrap();
    assert!(DensityMatrix::new(m).is_err());
    let m = ComplexMatrix::diag(&[0.5, 0.5]).unwrap();
    assert!(DensityMatrix::new(m).is_err());
    let json = serde_json::to_string(&rho_half()).unwrap();
    let back: DensityMatrix = serde_json::from_str(&json).unwrap();
    assert_eq!(back.matrix(), rho_half().matrix());
}
