//! Lewenstein-Sanpera decompositions of the Werner state ρ_{1/2}.
//!
//! A decomposition writes a target state as `λ ρ_s + (1 − λ) |Ψ⟩⟨Ψ|` with
//! `ρ_s` separable. For the θ-family `|Ψ(θ)⟩ = cos θ|01⟩ − sin θ|10⟩` the
//! largest admissible weight δ is found by searching over `x = 1/δ − 1` for
//! the smallest `x` at which the pseudo-mixture `(1 + x) ρ_{1/2} − x |Ψ⟩⟨Ψ|`
//! is both positive and PPT.
//!
//! The search makes no monotonicity assumption in `x`: a dense grid locates
//! the first feasible point and bisection refines the lower edge. If no grid
//! point is feasible the best grid point is polished by a golden-section
//! maximization of the combined margin, so feasible windows narrower than
//! the grid spacing are still detected.

use rayon::prelude::*;
use serde::Serialize;

use crate::entanglement::{concurrence_pure, entanglement_pure_entropy, ppt_min_eigenvalue};
use crate::error::{check_range, Error, Result};
use crate::numerics::{frobenius_distance, min_eigenvalue, ComplexMatrix};
use crate::states::{
    bell_state, partial_transpose_b, psi_theta, pure_to_density, rho_half, werner, BellState,
    DensityMatrix, PseudoMixtureFamily, PureState, ThetaParam, WernerParam,
};

pub const DEFAULT_GRID_POINTS: usize = 4096;
pub const DEFAULT_X_CAP: f64 = 3.0;
pub const DEFAULT_FEASIBILITY_TOL: f64 = 1e-9;
pub const DEFAULT_X_RESOLUTION: f64 = 1e-10;
/// Numeric and closed-form `x_min` count as agreeing within this distance.
pub const CLOSED_FORM_AGREEMENT: f64 = 1e-6;
/// Boundary in `sin 2θ` claimed for the feasible region of the θ-family.
pub const CLAIMED_THRESHOLD: f64 = 7.0 / 12.0;

const GOLDEN_ITERATIONS: usize = 80;

/// `ρ = λ ρ_s + (1 − λ) |Ψ_e⟩⟨Ψ_e|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LSDecomposition {
    pub lambda: f64,
    pub separable_part: DensityMatrix,
    pub entangled_part: PureState,
    /// Frobenius distance between the recombined matrix and the target it was
    /// built for.
    pub reconstruction_residual: f64,
}

fn recombine(lambda: f64, separable: &ComplexMatrix, psi: &PureState) -> Result<ComplexMatrix> {
    let projector = pure_to_density(psi).into_matrix();
    separable
        .scale_re(lambda)
        .add(&projector.scale_re(1.0 - lambda))
}

impl LSDecomposition {
    pub fn new(
        target: &DensityMatrix,
        lambda: f64,
        separable_part: DensityMatrix,
        entangled_part: PureState,
    ) -> Result<Self> {
        check_range("lambda", lambda, 0.0, 1.0, "[0, 1]")?;
        let rebuilt = recombine(lambda, separable_part.matrix(), &entangled_part)?;
        let reconstruction_residual = frobenius_distance(&rebuilt, target.matrix())?;
        Ok(Self {
            lambda,
            separable_part,
            entangled_part,
            reconstruction_residual,
        })
    }
}

/// Outcome of [`verify_decomposition`]; every margin is reported whether or
/// not the check passes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub passed: bool,
    pub tolerance: f64,
    pub reconstruction_residual: f64,
    /// Smallest eigenvalue of ρ_s.
    pub positivity_margin: f64,
    /// Smallest eigenvalue of the partial transpose of ρ_s.
    pub ppt_margin: f64,
    /// `|‖Ψ_e‖² − 1|`.
    pub normalization_error: f64,
}

impl Verification {
    pub fn reconstruction_ok(&self) -> bool {
        self.reconstruction_residual <= self.tolerance
    }

    pub fn positive_ok(&self) -> bool {
        self.positivity_margin >= -self.tolerance
    }

    pub fn separable_ok(&self) -> bool {
        self.ppt_margin >= -self.tolerance
    }

    pub fn normalized_ok(&self) -> bool {
        self.normalization_error <= self.tolerance
    }
}

/// Checks that `d` reproduces `target`, that its separable part is a PPT
/// state, and that its entangled part is normalized.
pub fn verify_decomposition(
    target: &DensityMatrix,
    d: &LSDecomposition,
    tol: f64,
) -> Result<Verification> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidOption(format!(
            "verification tolerance must be >= 0, got {tol}"
        )));
    }
    check_range("lambda", d.lambda, 0.0, 1.0, "[0, 1]")?;
    let rho_s = d.separable_part.matrix();
    let rebuilt = recombine(d.lambda, rho_s, &d.entangled_part)?;
    let mut v = Verification {
        passed: false,
        tolerance: tol,
        reconstruction_residual: frobenius_distance(&rebuilt, target.matrix())?,
        positivity_margin: min_eigenvalue(rho_s)?,
        ppt_margin: ppt_min_eigenvalue(rho_s)?,
        normalization_error: (d.entangled_part.norm_sq() - 1.0).abs(),
    };
    v.passed = v.reconstruction_ok() && v.positive_ok() && v.separable_ok() && v.normalized_ok();
    Ok(v)
}

/// The known optimal decomposition of ρ_{1/2}: λ = 3/4,
/// ρ_s = (2/3) I/4 + (1/3) |Ψ⁻⟩⟨Ψ⁻| (the Werner state at ε = 1/3) and the
/// singlet as entangled part.
pub fn optimal_for_rho_half() -> LSDecomposition {
    let separable = werner(WernerParam::new(1.0 / 3.0).expect("1/3 is in range"));
    LSDecomposition::new(
        &rho_half(),
        0.75,
        separable,
        bell_state(BellState::PsiMinus),
    )
    .expect("fixture is well formed")
}

/// `(min eigenvalue of ρ_s(x), min eigenvalue of ρ_s(x)^{T_B})`.
pub fn feasibility_profile(p: ThetaParam, x: f64) -> Result<(f64, f64)> {
    Margins::new(p).at(x)
}

struct Margins {
    family: PseudoMixtureFamily,
}

impl Margins {
    fn new(p: ThetaParam) -> Self {
        Self {
            family: PseudoMixtureFamily::new(p),
        }
    }

    fn at(&self, x: f64) -> Result<(f64, f64)> {
        let rho_s = self.family.at(x)?;
        let pos = min_eigenvalue(&rho_s)?;
        let ppt = min_eigenvalue(&partial_transpose_b(&rho_s)?)?;
        Ok((pos, ppt))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolverOptions {
    pub grid_points: usize,
    pub x_cap: f64,
    /// Both margins must be `>= -tol`; ties count as feasible.
    pub tol: f64,
    /// Width of the final bisection bracket on the lower edge.
    pub x_resolution: f64,
    /// Also solve the relabelled branch π/2 − θ and keep the more permissive.
    pub check_mirror: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            grid_points: DEFAULT_GRID_POINTS,
            x_cap: DEFAULT_X_CAP,
            tol: DEFAULT_FEASIBILITY_TOL,
            x_resolution: DEFAULT_X_RESOLUTION,
            check_mirror: true,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidOption(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        if self.grid_points < 2 {
            return Err(Error::InvalidOption(format!(
                "grid_points must be at least 2, got {}",
                self.grid_points
            )));
        }
        positive("x_cap", self.x_cap)?;
        positive("tol", self.tol)?;
        positive("x_resolution", self.x_resolution)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// θ as given.
    Primary,
    /// π/2 − θ.
    Mirror,
}

/// What one θ branch produced, kept for the branch comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchOutcome {
    pub theta: f64,
    pub feasible: bool,
    pub x_min: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeasibilityResult {
    /// θ of the branch that was reported.
    pub theta: ThetaParam,
    pub branch: Branch,
    pub feasible: bool,
    pub x_min: Option<f64>,
    /// `1 / (1 + x_min)`.
    pub delta_max: Option<f64>,
    pub x_search_interval: (f64, f64),
    /// (positivity margin, PPT margin) at `x_min`; for infeasible instances,
    /// at the point where the smaller of the two is largest.
    pub min_eig_at_solution: (f64, f64),
    pub closed_form_x_min: Option<f64>,
    pub closed_form_agrees: Option<bool>,
    /// `x_min − x_resolution` is infeasible.
    pub minimality_certified: Option<bool>,
    /// A feasible point lies within 1% of `x_cap`.
    pub near_cap: bool,
    pub mirror: Option<BranchOutcome>,
}

struct BranchSolution {
    feasible: bool,
    x_min: Option<f64>,
    margins: (f64, f64),
    minimality_certified: Option<bool>,
    near_cap: bool,
}

fn is_feasible(m: (f64, f64), tol: f64) -> bool {
    m.0 >= -tol && m.1 >= -tol
}

fn solve_branch(p: ThetaParam, opts: &SolverOptions) -> Result<BranchSolution> {
    let margins = Margins::new(p);
    let tol = opts.tol;
    let n = opts.grid_points;
    let step = opts.x_cap / (n - 1) as f64;
    let grid = |k: usize| {
        if k + 1 == n {
            opts.x_cap
        } else {
            k as f64 * step
        }
    };

    let mut first_feasible = None;
    let mut best = (0usize, f64::NEG_INFINITY);
    for k in 0..n {
        let m = margins.at(grid(k))?;
        if is_feasible(m, tol) {
            first_feasible = Some(k);
            break;
        }
        let combined = m.0.min(m.1);
        if combined > best.1 {
            best = (k, combined);
        }
    }

    // (infeasible lower end, feasible point) bracketing the lower edge.
    let bracket = match first_feasible {
        Some(0) => None,
        Some(k) => Some((grid(k - 1), grid(k))),
        None => {
            let lo = grid(best.0.saturating_sub(1));
            let hi = grid((best.0 + 1).min(n - 1));
            let (x_star, m_star) = maximize_combined(&margins, lo, hi)?;
            if is_feasible(m_star, tol) {
                Some((lo, x_star))
            } else {
                return Ok(BranchSolution {
                    feasible: false,
                    x_min: None,
                    margins: m_star,
                    minimality_certified: None,
                    near_cap: false,
                });
            }
        }
    };

    let x_min = match bracket {
        None => 0.0,
        Some((mut lo, mut hi)) => {
            while hi - lo > opts.x_resolution {
                let mid = 0.5 * (lo + hi);
                if is_feasible(margins.at(mid)?, tol) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        }
    };

    let certified = if x_min < opts.x_resolution {
        true
    } else {
        !is_feasible(margins.at(x_min - opts.x_resolution)?, tol)
    };

    let mut near_cap = false;
    for i in 0..5 {
        let x = opts.x_cap * (0.99 + 0.0025 * i as f64);
        if is_feasible(margins.at(x)?, tol) {
            near_cap = true;
            break;
        }
    }

    Ok(BranchSolution {
        feasible: true,
        x_min: Some(x_min),
        margins: margins.at(x_min)?,
        minimality_certified: Some(certified),
        near_cap,
    })
}

/// Golden-section search for the largest `min(pos, ppt)` on `[lo, hi]`.
fn maximize_combined(margins: &Margins, mut lo: f64, mut hi: f64) -> Result<(f64, (f64, f64))> {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let eval = |x: f64| -> Result<(f64, (f64, f64))> {
        let m = margins.at(x)?;
        Ok((m.0.min(m.1), m))
    };
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = eval(a)?;
    let mut fb = eval(b)?;
    for _ in 0..GOLDEN_ITERATIONS {
        if fa.0 >= fb.0 {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = eval(a)?;
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = eval(b)?;
        }
    }
    Ok(if fa.0 >= fb.0 { (a, fa.1) } else { (b, fb.1) })
}

/// `1 / (4 sin 2θ − 1)`, defined for `sin 2θ > 1/4`.
pub fn closed_form_x_min(p: ThetaParam) -> Option<f64> {
    let s = p.sin2theta();
    (s > 0.25).then(|| 1.0 / (4.0 * s - 1.0))
}

/// `1 − 1 / (4 sin 2θ)`, defined for `sin 2θ > 1/4`.
pub fn closed_form_delta_max(p: ThetaParam) -> Option<f64> {
    let s = p.sin2theta();
    (s > 0.25).then(|| 1.0 - 1.0 / (4.0 * s))
}

/// Largest separable weight δ for the decomposition of ρ_{1/2} with
/// entangled part `|Ψ(θ)⟩`.
pub fn solve_quasi_optimal(p: ThetaParam, opts: &SolverOptions) -> Result<FeasibilityResult> {
    opts.validate()?;
    let primary = solve_branch(p, opts)?;
    let (chosen, theta, branch, mirror) = if opts.check_mirror {
        let q = p.mirror();
        let other = solve_branch(q, opts)?;
        let outcome = BranchOutcome {
            theta: q.theta(),
            feasible: other.feasible,
            x_min: other.x_min,
        };
        let mirror_wins = match (primary.x_min, other.x_min) {
            (None, Some(_)) => true,
            (Some(a), Some(b)) => b < a,
            _ => false,
        };
        if mirror_wins {
            let outcome = BranchOutcome {
                theta: p.theta(),
                feasible: primary.feasible,
                x_min: primary.x_min,
            };
            (other, q, Branch::Mirror, Some(outcome))
        } else {
            (primary, p, Branch::Primary, Some(outcome))
        }
    } else {
        (primary, p, Branch::Primary, None)
    };

    let closed = chosen.x_min.and(closed_form_x_min(p));
    let agrees = match (chosen.x_min, closed) {
        (Some(x), Some(c)) => Some((x - c).abs() <= CLOSED_FORM_AGREEMENT),
        _ => None,
    };
    Ok(FeasibilityResult {
        theta,
        branch,
        feasible: chosen.feasible,
        x_min: chosen.x_min,
        delta_max: chosen.x_min.map(|x| 1.0 / (1.0 + x)),
        x_search_interval: (0.0, opts.x_cap),
        min_eig_at_solution: chosen.margins,
        closed_form_x_min: closed,
        closed_form_agrees: agrees,
        minimality_certified: chosen.minimality_certified,
        near_cap: chosen.near_cap,
        mirror,
    })
}

/// The decomposition `δ_max ρ_s(x_min) + (1 − δ_max) |Ψ(θ)⟩⟨Ψ(θ)|` of ρ_{1/2}.
pub fn quasi_optimal_decomposition(p: ThetaParam, opts: &SolverOptions) -> Result<LSDecomposition> {
    let r = solve_quasi_optimal(p, opts)?;
    let (x, delta) = match (r.x_min, r.delta_max) {
        (Some(x), Some(d)) => (x, d),
        _ => {
            return Err(Error::Infeasible {
                sin2theta: p.sin2theta(),
            })
        }
    };
    let separable =
        DensityMatrix::with_tolerance(PseudoMixtureFamily::new(r.theta).at(x)?, opts.tol)?;
    LSDecomposition::new(&rho_half(), delta, separable, psi_theta(r.theta))
}

fn feasible_delta(p: ThetaParam, opts: &SolverOptions) -> Result<f64> {
    solve_quasi_optimal(p, opts)?
        .delta_max
        .ok_or(Error::Infeasible {
            sin2theta: p.sin2theta(),
        })
}

/// `(1 − δ_max) · C(|Ψ(θ)⟩)` with the numerically found δ_max.
pub fn concurrence_product(p: ThetaParam, opts: &SolverOptions) -> Result<f64> {
    let delta = feasible_delta(p, opts)?;
    Ok((1.0 - delta) * concurrence_pure(&psi_theta(p)))
}

/// `(1 − δ_max) · E(|Ψ(θ)⟩)` with E the entropy of entanglement.
pub fn entropy_product(p: ThetaParam, opts: &SolverOptions) -> Result<f64> {
    let delta = feasible_delta(p, opts)?;
    Ok((1.0 - delta) * entanglement_pure_entropy(&psi_theta(p)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdOptions {
    /// Final width of the bracket around the boundary, in `sin 2θ`.
    pub resolution: f64,
    pub s_min: f64,
    pub s_max: f64,
    /// Number of coarse samples (inclusive of both ends) scanned downwards
    /// from `s_max` before bisection.
    pub coarse_samples: usize,
    pub solver: SolverOptions,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self {
            resolution: 1e-4,
            s_min: 0.0,
            s_max: 1.0,
            coarse_samples: 51,
            solver: SolverOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdSample {
    pub sin2theta: f64,
    pub feasible: bool,
    pub x_min: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    /// Smallest `sin 2θ` found feasible; `None` when the range holds no
    /// feasible-to-infeasible transition.
    pub boundary_sin2theta: Option<f64>,
    /// (infeasible, feasible) samples around the boundary.
    pub bracket: Option<(f64, f64)>,
    pub resolution: f64,
    pub claimed_boundary: f64,
    pub agrees_with_claim: bool,
    /// Coarse samples, descending in `sin 2θ`.
    pub profile: Vec<ThresholdSample>,
}

fn sample(s: f64, opts: &SolverOptions) -> Result<ThresholdSample> {
    let r = solve_quasi_optimal(ThetaParam::from_sin2theta(s)?, opts)?;
    Ok(ThresholdSample {
        sin2theta: s,
        feasible: r.feasible,
        x_min: r.x_min,
    })
}

/// Locates the smallest `sin 2θ` at which a quasi-optimal decomposition
/// exists, scanning downwards and bisecting the first feasible-to-infeasible
/// transition.
pub fn threshold_scan(opts: &ThresholdOptions) -> Result<ThresholdReport> {
    if !(opts.resolution.is_finite() && opts.resolution > 0.0) {
        return Err(Error::InvalidOption(format!(
            "resolution must be positive, got {}",
            opts.resolution
        )));
    }
    if !(0.0 <= opts.s_min && opts.s_min < opts.s_max && opts.s_max <= 1.0) {
        return Err(Error::InvalidOption(format!(
            "sin 2theta range [{}, {}] must satisfy 0 <= min < max <= 1",
            opts.s_min, opts.s_max
        )));
    }
    if opts.coarse_samples < 2 {
        return Err(Error::InvalidOption(
            "coarse_samples must be at least 2".into(),
        ));
    }
    opts.solver.validate()?;

    let n = opts.coarse_samples;
    let span = opts.s_max - opts.s_min;
    let points: Vec<f64> = (0..n)
        .map(|i| {
            if i + 1 == n {
                opts.s_min
            } else {
                opts.s_max - span * i as f64 / (n - 1) as f64
            }
        })
        .collect();
    let profile = points
        .par_iter()
        .map(|&s| sample(s, &opts.solver))
        .collect::<Result<Vec<_>>>()?;

    let transition = profile.windows(2).find(|w| w[0].feasible && !w[1].feasible);
    let bracket = match transition {
        Some(w) => {
            let (mut lo, mut hi) = (w[1].sin2theta, w[0].sin2theta);
            while hi - lo > 0.5 * opts.resolution {
                let mid = 0.5 * (lo + hi);
                if sample(mid, &opts.solver)?.feasible {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Some((lo, hi))
        }
        None => None,
    };
    let boundary = bracket.map(|(_, hi)| hi);
    Ok(ThresholdReport {
        boundary_sin2theta: boundary,
        bracket,
        resolution: opts.resolution,
        claimed_boundary: CLAIMED_THRESHOLD,
        agrees_with_claim: boundary
            .is_some_and(|b| (b - CLAIMED_THRESHOLD).abs() <= opts.resolution),
        profile,
    })
}
