//! Run records: per-sample CSV, J-trace CSV, summary text, and the bundle
//! of files written for one fit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::chemotaxis::FitResult;
use crate::circuit::{fhat, CircuitParams};
use crate::error::Result;
use crate::objective::{make_grid, SampleGrid, TargetFunction};
use crate::params_file::write_params;
use crate::plot::{LinePlot, Series};

pub const RUN_HEADER: &str = "x,f,fhat,abs_err";
pub const TRACE_HEADER: &str = "iteration,j";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunRow {
    pub x: f64,
    pub f: f64,
    pub fhat: f64,
    pub abs_err: f64,
}

pub fn run_rows(params: &CircuitParams, target: &TargetFunction, grid: &SampleGrid) -> Vec<RunRow> {
    grid.points()
        .iter()
        .map(|&x| {
            let f = target.eval(x);
            let fh = fhat(params, x);
            RunRow {
                x,
                f,
                fhat: fh,
                abs_err: (f - fh).abs(),
            }
        })
        .collect()
}

pub fn run_csv(rows: &[RunRow]) -> String {
    let mut out = format!("{RUN_HEADER}\n");
    for r in rows {
        writeln!(out, "{},{},{},{}", r.x, r.f, r.fhat, r.abs_err).unwrap();
    }
    out
}

pub fn trace_csv(trace: &[(usize, f64)]) -> String {
    let mut out = format!("{TRACE_HEADER}\n");
    for (it, j) in trace {
        writeln!(out, "{it},{j}").unwrap();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub j: f64,
    pub epsilon: f64,
    pub evals: usize,
    pub seed: u64,
}

impl Summary {
    pub fn to_text(&self) -> String {
        format!(
            "J = {}\nepsilon = {}\nevals = {}\nseed = {}\n",
            self.j, self.epsilon, self.evals, self.seed
        )
    }
}

/// Target and circuit output over a dense 200-point grid.
pub fn fit_plot(params: &CircuitParams, target: &TargetFunction, x0: f64, title: &str) -> LinePlot {
    let dense = make_grid(200, x0).expect("x0 was validated by the caller's grid");
    let xs = dense.points();
    LinePlot {
        title: title.to_string(),
        x_label: "x".into(),
        y_label: "f(x)".into(),
        series: vec![
            Series {
                label: format!("target {}", target.id()),
                color: "red".into(),
                points: xs.iter().map(|&x| (x, target.eval(x))).collect(),
            },
            Series {
                label: "circuit <G>".into(),
                color: "black".into(),
                points: xs.iter().map(|&x| (x, fhat(params, x))).collect(),
            },
        ],
    }
}

/// Writes `<stem>.params`, `<stem>-run.csv`, `<stem>-trace.csv`,
/// `<stem>-summary.txt` and `<stem>.svg` into `dir`.
pub fn write_fit_bundle(
    dir: &Path,
    stem: &str,
    target: &TargetFunction,
    grid: &SampleGrid,
    fit: &FitResult,
    summary: &Summary,
) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_params(&dir.join(format!("{stem}.params")), &fit.best)?;
    fs::write(
        dir.join(format!("{stem}-run.csv")),
        run_csv(&run_rows(&fit.best, target, grid)),
    )?;
    fs::write(
        dir.join(format!("{stem}-trace.csv")),
        trace_csv(&fit.j_trace),
    )?;
    fs::write(dir.join(format!("{stem}-summary.txt")), summary.to_text())?;
    let title = format!("{}: J = {:.4}", target.id(), fit.j_final);
    fs::write(
        dir.join(format!("{stem}.svg")),
        fit_plot(&fit.best, target, grid.x0(), &title).to_svg(),
    )?;
    Ok(())
}
