use std::io;

use lsd_core::entanglement::{concurrence_pure, entanglement_pure_entropy};
use lsd_core::lsdecomp::{solve_quasi_optimal, SolverOptions};
use lsd_core::states::psi_theta;
use lsd_core::{Result, ThetaParam};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::{fmt_sig, round_sig};

pub const CSV_HEADER: [&str; 12] = [
    "theta",
    "sin2theta",
    "feasible",
    "x_min_numeric",
    "x_min_closed",
    "delta_max",
    "concurrence",
    "concurrence_product",
    "entanglement_pure",
    "entropy_product",
    "pos_margin",
    "ppt_margin",
];

/// One solved θ instance. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub theta: f64,
    pub sin2theta: f64,
    pub feasible: bool,
    pub x_min_numeric: Option<f64>,
    pub x_min_closed: Option<f64>,
    pub delta_max: Option<f64>,
    pub concurrence: f64,
    pub concurrence_product: Option<f64>,
    pub entanglement_pure: f64,
    pub entropy_product: Option<f64>,
    pub pos_margin: f64,
    pub ppt_margin: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl ScanRow {
    pub fn solve(p: ThetaParam, opts: &SolverOptions) -> Result<Self> {
        let r = solve_quasi_optimal(p, opts)?;
        let psi = psi_theta(p);
        let concurrence = concurrence_pure(&psi);
        let entanglement = entanglement_pure_entropy(&psi);
        let weight = r.delta_max.map(|d| 1.0 - d);
        Ok(Self {
            theta: p.theta(),
            sin2theta: p.sin2theta(),
            feasible: r.feasible,
            x_min_numeric: r.x_min,
            x_min_closed: r.closed_form_x_min,
            delta_max: r.delta_max,
            concurrence,
            concurrence_product: weight.map(|w| w * concurrence),
            entanglement_pure: entanglement,
            entropy_product: weight.map(|w| w * entanglement),
            pos_margin: r.min_eig_at_solution.0,
            ppt_margin: r.min_eig_at_solution.1,
        })
    }

    fn fields(&self) -> [String; 12] {
        let opt = |v: Option<f64>| v.map(fmt_sig).unwrap_or_default();
        [
            fmt_sig(self.theta),
            fmt_sig(self.sin2theta),
            self.feasible.to_string(),
            opt(self.x_min_numeric),
            opt(self.x_min_closed),
            opt(self.delta_max),
            fmt_sig(self.concurrence),
            opt(self.concurrence_product),
            fmt_sig(self.entanglement_pure),
            opt(self.entropy_product),
            fmt_sig(self.pos_margin),
            fmt_sig(self.ppt_margin),
        ]
    }

    /// Every real rounded to the printed precision.
    pub fn rounded(&self) -> Self {
        let opt = |v: Option<f64>| v.map(round_sig);
        Self {
            theta: round_sig(self.theta),
            sin2theta: round_sig(self.sin2theta),
            feasible: self.feasible,
            x_min_numeric: opt(self.x_min_numeric),
            x_min_closed: opt(self.x_min_closed),
            delta_max: opt(self.delta_max),
            concurrence: round_sig(self.concurrence),
            concurrence_product: opt(self.concurrence_product),
            entanglement_pure: round_sig(self.entanglement_pure),
            entropy_product: opt(self.entropy_product),
            pos_margin: round_sig(self.pos_margin),
            ppt_margin: round_sig(self.ppt_margin),
        }
    }
}

/// Uniform `sin 2θ` samples from `s_min` to `s_max` inclusive.
pub fn scan_points(s_min: f64, s_max: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                s_max
            } else {
                s_min + (s_max - s_min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// Solves every sample; rows come back in input order.
pub fn scan_rows(
    s_min: f64,
    s_max: f64,
    steps: usize,
    opts: &SolverOptions,
) -> Result<Vec<ScanRow>> {
    scan_points(s_min, s_max, steps)
        .par_iter()
        .map(|&s| ScanRow::solve(ThetaParam::from_sin2theta(s)?, opts))
        .collect()
}

pub fn render(rows: &[ScanRow], format: Format) -> String {
    match format {
        Format::Csv => render_csv(rows),
        Format::Json => {
            let rounded: Vec<ScanRow> = rows.iter().map(ScanRow::rounded).collect();
            let mut s = serde_json::to_string_pretty(&rounded).expect("rows serialize");
            s.push('\n');
            s
        }
    }
}

fn render_csv(rows: &[ScanRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        w.write_record(row.fields()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ASCII output")
}

pub fn parse_csv(text: &str) -> Result<Vec<ScanRow>, csv::Error> {
    csv::Reader::from_reader(io::Cursor::new(text))
        .deserialize()
        .collect()
}
