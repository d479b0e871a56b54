use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lsd_cli::row::{render, scan_rows};
use lsd_cli::verify::{render_checks, run_checks, VERIFY_TOL};
use lsd_cli::{build_state, exit, render_threshold, Format, ScanRow, StateKind};
use lsd_core::lsdecomp::{threshold_scan, SolverOptions, ThresholdOptions};
use lsd_core::ThetaParam;

#[derive(Parser)]
#[command(
    name = "lsd",
    version,
    about = "Lewenstein-Sanpera decompositions of the two-qubit Werner state"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SolverArgs {
    /// Grid points on [0, x-cap] for the x search
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    /// Upper end of the x search interval
    #[arg(long, default_value_t = 3.0)]
    x_cap: f64,
    /// Slack on the positivity and PPT margins
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

impl SolverArgs {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            grid_points: self.grid,
            x_cap: self.x_cap,
            tol: self.tol,
            ..Default::default()
        }
    }
}

#[derive(Args, Clone, Copy)]
struct VerifyArgs {
    /// Grid points on [0, x-cap] for the x search
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    /// Upper end of the x search interval
    #[arg(long, default_value_t = 3.0)]
    x_cap: f64,
    /// Slack on the positivity and PPT margins
    #[arg(long, default_value_t = VERIFY_TOL)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Check the optimal decomposition, closed forms, products and the Werner boundary
    Verify {
        #[command(flatten)]
        solver: VerifyArgs,
    },
    /// Solve one quasi-optimal decomposition and print its row
    #[command(group(clap::ArgGroup::new("angle").required(true).args(["theta", "sin2theta"])))]
    Decompose {
        /// Angle theta in radians, in [0, pi/2]
        #[arg(long)]
        theta: Option<f64>,
        /// sin 2theta in [0, 1]
        #[arg(long)]
        sin2theta: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Solve a uniform grid of sin 2theta values
    Scan {
        #[arg(long)]
        s_min: f64,
        #[arg(long)]
        s_max: f64,
        /// Number of samples, endpoints included
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Locate the smallest sin 2theta admitting a decomposition
    Threshold {
        /// Bracket width in sin 2theta, in (0, 0.01]
        #[arg(long, default_value_t = 1e-4)]
        resolution: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Print a state as JSON: matrix rows of [re, im] pairs plus its Pauli form
    State {
        #[arg(value_enum)]
        kind: StateKind,
        /// Werner weight
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        /// Angle theta in radians
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        theta: f64,
        /// Pseudo-mixture parameter
        #[arg(long, default_value_t = 0.0)]
        x: f64,
    },
}

fn bad_args(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(exit::BAD_ARGS)
}

fn runtime_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(exit::BAD_ARGS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { solver } => match run_checks(
            &SolverArgs {
                grid: solver.grid,
                x_cap: solver.x_cap,
                tol: solver.tol,
            }
            .options(),
        ) {
            Ok(checks) => {
                print!("{}", render_checks(&checks));
                if checks.iter().all(|c| c.passed()) {
                    ExitCode::from(exit::SUCCESS)
                } else {
                    ExitCode::from(exit::VERIFY_FAILED)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit::VERIFY_FAILED)
            }
        },

        Command::Decompose {
            theta,
            sin2theta,
            format,
            solver,
        } => {
            let p = match (theta, sin2theta) {
                (Some(t), None) if (0.0..=FRAC_PI_2).contains(&t) => ThetaParam::new(t),
                (Some(t), None) => return bad_args(format!("--theta {t} is outside [0, pi/2]")),
                (None, Some(s)) if (0.0..=1.0).contains(&s) => ThetaParam::from_sin2theta(s),
                (None, Some(s)) => return bad_args(format!("--sin2theta {s} is outside [0, 1]")),
                _ => return bad_args("exactly one of --theta / --sin2theta is required"),
            };
            let p = match p {
                Ok(p) => p,
                Err(e) => return bad_args(e),
            };
            match ScanRow::solve(p, &solver.options()) {
                Ok(row) => {
                    print!("{}", render(std::slice::from_ref(&row), format));
                    ExitCode::from(if row.feasible {
                        exit::SUCCESS
                    } else {
                        exit::INFEASIBLE
                    })
                }
                Err(e) => runtime_error(e),
            }
        }

        Command::Scan {
            s_min,
            s_max,
            steps,
            format,
            out,
            solver,
        } => {
            if !(0.0 <= s_min && s_min < s_max && s_max <= 1.0) {
                return bad_args(format!(
                    "--s-min {s_min} / --s-max {s_max} must satisfy 0 <= s-min < s-max <= 1"
                ));
            }
            if steps < 2 {
                return bad_args(format!("--steps {steps} must be at least 2"));
            }
            let rows = match scan_rows(s_min, s_max, steps, &solver.options()) {
                Ok(rows) => rows,
                Err(e) => return runtime_error(e),
            };
            let text = render(&rows, format);
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        return runtime_error(format!("cannot write {}: {e}", path.display()));
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(exit::SUCCESS)
        }

        Command::Threshold { resolution, solver } => {
            if !(resolution > 0.0 && resolution <= 0.01) {
                return bad_args(format!("--resolution {resolution} must be in (0, 0.01]"));
            }
            let opts = ThresholdOptions {
                resolution,
                solver: solver.options(),
                ..Default::default()
            };
            match threshold_scan(&opts) {
                Ok(report) => {
                    print!("{}", render_threshold(&report));
                    ExitCode::from(exit::SUCCESS)
                }
                Err(e) => runtime_error(e),
            }
        }

        Command::State {
            kind,
            epsilon,
            theta,
            x,
        } => {
            let p = match ThetaParam::new(theta) {
                Ok(p) => p,
                Err(e) => return bad_args(e),
            };
            match build_state(kind, epsilon, p, x) {
                Ok(dump) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&dump).expect("state serializes")
                    );
                    ExitCode::from(exit::SUCCESS)
                }
                Err(e) => bad_args(e),
            }
        }
    }
}
