//! Fixture checks behind `lsd verify`.

use std::fmt::Write;

use lsd_core::entanglement::{
    ls_entanglement_measure, ppt_min_eigenvalue, werner_separability_boundary,
};
use lsd_core::lsdecomp::{
    closed_form_delta_max, closed_form_x_min, concurrence_product, entropy_product,
    optimal_for_rho_half, solve_quasi_optimal, verify_decomposition, SolverOptions,
};
use lsd_core::states::{bell_state, rho_half, BellState};
use lsd_core::{Result, ThetaParam};

use crate::format::fmt_sig;

/// Margin slack used for the fixture solves. The products are checked to
/// 1e-9, and a slack of that size alone moves `x_min` by a few times 1e-9.
pub const VERIFY_TOL: f64 = 1e-12;

/// `sin 2θ` values on which the closed forms are compared.
pub const CLOSED_FORM_GRID: [f64; 5] = [0.70, 0.75, 0.80, 0.90, 1.00];

#[derive(Clone, Debug, PartialEq)]
pub enum Expectation {
    /// `|actual − value| <= tol`.
    Equals { value: f64, tol: f64 },
    /// `actual <= bound`.
    AtMost(f64),
    /// `actual >= bound`.
    AtLeast(f64),
    /// `|actual − value| > gap`.
    DiffersBy { value: f64, gap: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub actual: f64,
    pub expectation: Expectation,
}

impl Check {
    fn new(name: impl Into<String>, actual: f64, expectation: Expectation) -> Self {
        Self {
            name: name.into(),
            actual,
            expectation,
        }
    }

    pub fn passed(&self) -> bool {
        let a = self.actual;
        match self.expectation {
            Expectation::Equals { value, tol } => (a - value).abs() <= tol,
            Expectation::AtMost(b) => a <= b,
            Expectation::AtLeast(b) => a >= b,
            Expectation::DiffersBy { value, gap } => (a - value).abs() > gap,
        }
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let expected = match self.expectation {
            Expectation::Equals { value, tol } => {
                format!("expected {} (tol {})", fmt_sig(value), fmt_sig(tol))
            }
            Expectation::AtMost(b) => format!("expected <= {}", fmt_sig(b)),
            Expectation::AtLeast(b) => format!("expected >= {}", fmt_sig(b)),
            Expectation::DiffersBy { value, gap } => {
                format!("expected |x - {}| > {}", fmt_sig(value), fmt_sig(gap))
            }
        };
        format!(
            "[{verdict}] {}: actual {}, {expected}",
            self.name,
            fmt_sig(self.actual)
        )
    }
}

/// Runs the optimal-decomposition, closed-form, product and Werner-boundary
/// checks.
pub fn run_checks(opts: &SolverOptions) -> Result<Vec<Check>> {
    use Expectation::*;
    let mut checks = Vec::new();

    let opt = optimal_for_rho_half();
    let v = verify_decomposition(&rho_half(), &opt, 1e-12)?;
    checks.push(Check::new(
        "lambda_opt",
        opt.lambda,
        Equals {
            value: 0.75,
            tol: 0.0,
        },
    ));
    checks.push(Check::new(
        "optimal reconstruction residual",
        v.reconstruction_residual,
        AtMost(1e-12),
    ));
    let ppt = ppt_min_eigenvalue(opt.separable_part.matrix())?;
    checks.push(Check::new("optimal rho_s PPT margin", ppt, AtLeast(-1e-12)));
    checks.push(Check::new(
        "optimal decomposition verifies",
        v.passed as u8 as f64,
        Equals {
            value: 1.0,
            tol: 0.0,
        },
    ));

    let e = ls_entanglement_measure(opt.lambda, &bell_state(BellState::PsiMinus))?;
    checks.push(Check::new(
        "E(rho_1/2)",
        e,
        Equals {
            value: 0.25,
            tol: 1e-12,
        },
    ));

    for s in CLOSED_FORM_GRID {
        let p = ThetaParam::from_sin2theta(s)?;
        let r = solve_quasi_optimal(p, opts)?;
        let nan = f64::NAN;
        checks.push(Check::new(
            format!("x_min at sin2theta={s}"),
            r.x_min.unwrap_or(nan),
            Equals {
                value: closed_form_x_min(p).unwrap_or(nan),
                tol: 1e-6,
            },
        ));
        checks.push(Check::new(
            format!("delta_max at sin2theta={s}"),
            r.delta_max.unwrap_or(nan),
            Equals {
                value: closed_form_delta_max(p).unwrap_or(nan),
                tol: 1e-6,
            },
        ));
        checks.push(Check::new(
            format!("concurrence product at sin2theta={s}"),
            concurrence_product(p, opts)?,
            Equals {
                value: 0.25,
                tol: 1e-6,
            },
        ));
        let entropy = entropy_product(p, opts)?;
        let expectation = if s < 1.0 {
            DiffersBy {
                value: 0.25,
                gap: 1e-3,
            }
        } else {
            Equals {
                value: 0.25,
                tol: 1e-9,
            }
        };
        checks.push(Check::new(
            format!("entropy product at sin2theta={s}"),
            entropy,
            expectation,
        ));
    }

    let eps = werner_separability_boundary(1e-12)?;
    checks.push(Check::new(
        "Werner PPT sign change",
        eps,
        Equals {
            value: 1.0 / 3.0,
            tol: 1e-9,
        },
    ));
    Ok(checks)
}

pub fn render_checks(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        writeln!(out, "{}", c.line()).expect("write to string");
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(out, "{} checks, {} failed", checks.len(), failed).expect("write to string");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_semantics() {
        use Expectation::*;
        assert!(Check::new(
            "a",
            0.25,
            Equals {
                value: 0.25,
                tol: 0.0
            }
        )
        .passed());
        assert!(!Check::new(
            "a",
            f64::NAN,
            Equals {
                value: 0.25,
                tol: 1.0
            }
        )
        .passed());
        assert!(Check::new(
            "a",
            0.2256,
            DiffersBy {
                value: 0.25,
                gap: 1e-3
            }
        )
        .passed());
        assert!(!Check::new(
            "a",
            0.2499,
            DiffersBy {
                value: 0.25,
                gap: 1e-3
            }
        )
        .passed());
        assert!(Check::new("a", -1e-13, AtLeast(-1e-12)).passed());
        assert!(Check::new("a", 0.0, AtMost(1e-12)).passed());
        assert!(Check::new(
            "lambda_opt",
            0.75,
            Equals {
                value: 0.75,
                tol: 0.0
            }
        )
        .line()
        .starts_with("[PASS] lambda_opt"));
    }
}
