//! Command logic for the `lsd` binary, kept in a library so it can be tested
//! without spawning processes.

pub mod format;
pub mod row;
pub mod verify;

use std::fmt::Write;

use lsd_core::lsdecomp::{ThresholdReport, CLAIMED_THRESHOLD};
use lsd_core::states::{
    from_pauli_form, pseudo_mixture, psi_theta, pure_to_density, rho_half, to_pauli_form, werner,
};
use lsd_core::{ComplexMatrix, PauliForm, Result, ThetaParam, WernerParam};
use serde::Serialize;

pub use format::fmt_sig;
pub use row::{Format, ScanRow};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const BAD_ARGS: u8 = 2;
    pub const INFEASIBLE: u8 = 3;
}

pub fn render_threshold(report: &ThresholdReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    match (report.boundary_sin2theta, report.bracket) {
        (Some(b), Some((lo, hi))) => {
            writeln!(w, "boundary sin2theta: {}", fmt_sig(b)).unwrap();
            writeln!(
                w,
                "bracket: infeasible at {}, feasible at {}",
                fmt_sig(lo),
                fmt_sig(hi)
            )
            .unwrap();
        }
        _ => writeln!(
            w,
            "boundary sin2theta: none (no feasible-to-infeasible transition in range)"
        )
        .unwrap(),
    }
    writeln!(w, "resolution: {}", fmt_sig(report.resolution)).unwrap();
    writeln!(w, "paper claim: {:.6}", CLAIMED_THRESHOLD).unwrap();
    let verdict = if report.agrees_with_claim {
        "AGREES"
    } else {
        "DISAGREES"
    };
    writeln!(
        w,
        "verdict: {verdict} (|boundary - claim| <= resolution is required to agree)"
    )
    .unwrap();
    writeln!(w, "profile (sin2theta, feasible, x_min):").unwrap();
    for s in &report.profile {
        let x = s.x_min.map(fmt_sig).unwrap_or_default();
        writeln!(w, "  {},{},{}", fmt_sig(s.sin2theta), s.feasible, x).unwrap();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum StateKind {
    RhoHalf,
    Werner,
    PsiTheta,
    PseudoMixture,
}

/// A named state as its matrix (rows of `[re, im]` pairs) and Pauli form.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct StateDump {
    pub matrix: ComplexMatrix,
    pub pauli_form: PauliForm,
}

pub fn build_state(kind: StateKind, epsilon: f64, theta: ThetaParam, x: f64) -> Result<StateDump> {
    let matrix = match kind {
        StateKind::RhoHalf => rho_half().into_matrix(),
        StateKind::Werner => werner(WernerParam::new(epsilon)?).into_matrix(),
        StateKind::PsiTheta => pure_to_density(&psi_theta(theta)).into_matrix(),
        StateKind::PseudoMixture => pseudo_mixture(theta, x)?,
    };
    let pauli_form = to_pauli_form(&matrix)?;
    debug_assert!(from_pauli_form(&pauli_form).max_abs_diff(&matrix)? < 1e-12);
    Ok(StateDump { matrix, pauli_form })
}
