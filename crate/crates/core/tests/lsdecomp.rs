use lsd_core::entanglement::is_separable;
use lsd_core::lsdecomp::{
    closed_form_delta_max, closed_form_x_min, concurrence_product, entropy_product,
    feasibility_profile, optimal_for_rho_half, quasi_optimal_decomposition, solve_quasi_optimal,
    threshold_scan, verify_decomposition, LSDecomposition, SolverOptions, ThresholdOptions,
};
use lsd_core::states::{bell_state, maximally_mixed, pure_to_density, rho_half, BellState};
use lsd_core::{Error, ThetaParam};

/// Margins of `(1+x) ρ_{1/2} − x |Ψ(θ)⟩⟨Ψ(θ)|` from its block structure:
/// the state is diagonal on |00⟩, |11⟩ with a 2×2 block on {|01⟩, |10⟩},
/// and the partial transpose swaps that block's coherence onto {|00⟩, |11⟩}.
fn block_margins(theta: f64, x: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    let outer = (1.0 + x) / 8.0;
    let a = 3.0 * (1.0 + x) / 8.0 - x * c * c;
    let d = 3.0 * (1.0 + x) / 8.0 - x * s * s;
    let off = -(1.0 + x) / 4.0 + x * c * s;
    let block_min = 0.5 * (a + d) - (0.25 * (a - d) * (a - d) + off * off).sqrt();
    (outer.min(block_min), (outer - off.abs()).min(a).min(d))
}

/// Whether some x in [0, cap] satisfies both block conditions, on a dense grid.
fn block_feasible(s2: f64) -> bool {
    let theta = 0.5 * s2.asin();
    (0..=300_000).any(|k| {
        let (pos, ppt) = block_margins(theta, k as f64 * 1e-5);
        pos >= 0.0 && ppt >= 0.0
    })
}

fn exact() -> SolverOptions {
    SolverOptions {
        tol: 1e-12,
        ..Default::default()
    }
}

#[test]
fn margins_match_block_oracle() {
    for i in 0..=40 {
        let p = ThetaParam::new(i as f64 / 40.0 * std::f64::consts::FRAC_PI_2).unwrap();
        for j in 0..=30 {
            let x = j as f64 * 0.1;
            let (pos, ppt) = feasibility_profile(p, x).unwrap();
            let (bpos, bppt) = block_margins(p.theta(), x);
            assert!(
                (pos - bpos).abs() < 1e-12 && (ppt - bppt).abs() < 1e-12,
                "theta {} x {x}",
                p.theta()
            );
        }
    }
    assert!(feasibility_profile(ThetaParam::new(0.1).unwrap(), -1e-3).is_err());
}

#[test]
fn block_oracle_puts_boundary_at_two_thirds() {
    assert!(block_feasible(2.0 / 3.0 + 1e-4));
    assert!(!block_feasible(2.0 / 3.0 - 1e-4));
    assert!(!block_feasible(7.0 / 12.0));
    assert!(!block_feasible(0.62));
}

#[test]
fn quasi_optimal_grid() {
    let opts = exact();
    let mut last_delta = 0.0;
    for k in 0..64 {
        let s = 0.70 + 0.30 * k as f64 / 63.0;
        let p = ThetaParam::from_sin2theta(s).unwrap();
        let r = solve_quasi_optimal(p, &opts).unwrap();
        assert!(r.feasible, "s = {s}");
        let x = r.x_min.unwrap();
        let delta = r.delta_max.unwrap();
        assert!((x - closed_form_x_min(p).unwrap()).abs() <= 1e-6);
        assert!((delta - closed_form_delta_max(p).unwrap()).abs() <= 1e-6);
        assert!((delta - 1.0 / (1.0 + x)).abs() <= 1e-12);
        assert_eq!(r.closed_form_agrees, Some(true));
        assert_eq!(r.minimality_certified, Some(true));
        assert!(!r.near_cap);
        assert!(r.min_eig_at_solution.0 >= -1e-12 && r.min_eig_at_solution.1 >= -1e-12);
        let below = feasibility_profile(r.theta, x - 1e-6).unwrap();
        assert!(below.0 < 0.0 || below.1 < 0.0);
        assert!(delta >= last_delta);
        last_delta = delta;

        assert!((concurrence_product(p, &opts).unwrap() - 0.25).abs() <= 1e-6);
        let e = entropy_product(p, &opts).unwrap();
        if s < 0.999 {
            assert!((e - 0.25).abs() > 1e-4, "s = {s}: {e}");
        }

        let d = quasi_optimal_decomposition(p, &opts).unwrap();
        let v = verify_decomposition(&rho_half(), &d, 1e-9).unwrap();
        assert!(v.passed, "{v:?}");
        assert!(is_separable(&d.separable_part, 1e-9).unwrap());
    }
}

#[test]
fn fixture_values() {
    let opts = SolverOptions::default();
    let r =
        solve_quasi_optimal(ThetaParam::new(std::f64::consts::FRAC_PI_4).unwrap(), &opts).unwrap();
    assert!((r.x_min.unwrap() - 1.0 / 3.0).abs() <= 1e-8);
    assert!((r.delta_max.unwrap() - 0.75).abs() <= 1e-8);

    let p = ThetaParam::from_sin2theta(0.8).unwrap();
    let r = solve_quasi_optimal(p, &opts).unwrap();
    assert!((r.x_min.unwrap() - 0.454545454545).abs() <= 1e-6);
    assert!((r.delta_max.unwrap() - 0.6875).abs() <= 1e-6);
    let e = entropy_product(p, &exact()).unwrap();
    assert!((e - 0.225602529652).abs() <= 1e-9);

    let e = entropy_product(ThetaParam::from_sin2theta(1.0).unwrap(), &exact()).unwrap();
    assert!((e - 0.25).abs() <= 1e-9);
}

#[test]
fn infeasible_instances() {
    for s in [0.0, 0.1, 0.3, 0.5, 7.0 / 12.0, 0.65] {
        let p = ThetaParam::from_sin2theta(s).unwrap();
        let r = solve_quasi_optimal(p, &SolverOptions::default()).unwrap();
        assert!(!r.feasible, "s = {s}");
        assert_eq!((r.x_min, r.delta_max), (None, None));
        assert!(matches!(
            concurrence_product(p, &SolverOptions::default()),
            Err(Error::Infeasible { .. })
        ));
        assert!(quasi_optimal_decomposition(p, &SolverOptions::default()).is_err());
    }
}

#[test]
fn bad_options_are_rejected() {
    let p = ThetaParam::new(0.7).unwrap();
    for opts in [
        SolverOptions {
            grid_points: 1,
            ..Default::default()
        },
        SolverOptions {
            x_cap: 0.0,
            ..Default::default()
        },
        SolverOptions {
            tol: -1e-9,
            ..Default::default()
        },
        SolverOptions {
            x_resolution: f64::NAN,
            ..Default::default()
        },
    ] {
        assert!(matches!(
            solve_quasi_optimal(p, &opts),
            Err(Error::InvalidOption(_))
        ));
    }
}

#[test]
fn verification_verdicts() {
    let v = verify_decomposition(&rho_half(), &optimal_for_rho_half(), 1e-12).unwrap();
    assert!(v.passed && v.reconstruction_residual <= 1e-12 && v.ppt_margin >= -1e-12);

    let whole =
        LSDecomposition::new(&rho_half(), 1.0, rho_half(), bell_state(BellState::PhiPlus)).unwrap();
    let v = verify_decomposition(&rho_half(), &whole, 1e-9).unwrap();
    assert!(!v.passed && !v.separable_ok() && v.reconstruction_ok());
    assert!((v.ppt_margin + 0.125).abs() < 1e-12);

    let singlet = pure_to_density(&bell_state(BellState::PsiMinus));
    let d = LSDecomposition::new(
        &singlet,
        0.0,
        maximally_mixed(),
        bell_state(BellState::PsiMinus),
    )
    .unwrap();
    assert!(verify_decomposition(&singlet, &d, 1e-12).unwrap().passed);

    assert!(verify_decomposition(&rho_half(), &optimal_for_rho_half(), -1.0).is_err());
}

#[test]
fn threshold_is_bracketed() {
    let opts = ThresholdOptions {
        resolution: 1e-3,
        ..Default::default()
    };
    let report = threshold_scan(&opts).unwrap();
    let boundary = report.boundary_sin2theta.unwrap();
    let (lo, hi) = report.bracket.unwrap();
    assert_eq!(hi, boundary);
    assert!(hi - lo <= 1e-3);
    assert!((boundary - 2.0 / 3.0).abs() <= 1e-3);
    assert!(!report.agrees_with_claim);
    assert!(report
        .profile
        .windows(2)
        .all(|w| w[0].sin2theta > w[1].sin2theta));
    assert!(threshold_scan(&ThresholdOptions {
        resolution: 0.0,
        ..Default::default()
    })
    .is_err());
}
