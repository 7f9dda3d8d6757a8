//! Grid norms, errors against manufactured solutions, convergence orders and
//! the table experiments.

mod experiment;
pub mod properties;
mod table;

pub use experiment::{run_experiment, run_single, Coupling, ExperimentSpec, PublishedTable, Rung};
pub use table::{parse_csv, write_csv, write_markdown, ConvergenceRow, ConvergenceTable};

use crate::error::{Error, Result};
use crate::problem::{GridSpec, ManufacturedCase};
use crate::solver::SolutionHistory;

/// ‖z‖₀ = √(Σ_{i=1}^{N-1} z_i² h) for a full-grid vector z_0..z_N.
pub fn norm_l2(z: &[f64], h: f64) -> f64 {
    if z.len() < 3 {
        return 0.0;
    }
    (z[1..z.len() - 1].iter().map(|v| v * v).sum::<f64>() * h).sqrt()
}

/// ‖z_x̄]|₀ = √(Σ_{i=1}^{N} ((z_i - z_{i-1}) / h)² h).
pub fn norm_grad(z: &[f64], h: f64) -> f64 {
    let sum: f64 = z.windows(2).map(|w| (w[1] - w[0]) * (w[1] - w[0])).sum();
    (sum / h).sqrt()
}

pub fn max_abs(z: &[f64]) -> f64 {
    z.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Errors of a computed solution, each maximized over the time layers
/// j = 0..=M (the bootstrap layer included).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub err_l2: f64,
    pub err_c: f64,
    pub err_grad: f64,
    pub grid: GridSpec,
    pub alpha: f64,
}

/// Compares every stored layer of `history` with the exact solution.
pub fn measure_errors(history: &SolutionHistory, case: &ManufacturedCase) -> ErrorReport {
    let grid = *history.grid();
    let mut report = ErrorReport {
        err_l2: 0.0,
        err_c: 0.0,
        err_grad: 0.0,
        grid,
        alpha: history.alpha().value(),
    };
    let mut z = vec![0.0; grid.n + 1];
    for (j, layer) in history.layers().enumerate() {
        let t = grid.t(j);
        for (i, (zi, yi)) in z.iter_mut().zip(layer).enumerate() {
            *zi = yi - case.u_exact(grid.x(i), t);
        }
        report.err_l2 = report.err_l2.max(norm_l2(&z, grid.h));
        report.err_c = report.err_c.max(max_abs(&z));
        report.err_grad = report.err_grad.max(norm_grad(&z, grid.h));
    }
    report
}

/// CO = ln(e1/e2) / ln(s1/s2), where s is the step that was refined.
pub fn convergence_order(e1: f64, e2: f64, s1: f64, s2: f64) -> Result<f64> {
    if !(e1 > 0.0 && e2 > 0.0) {
        return Err(Error::InvalidArgument(format!("errors must be positive, got {e1} and {e2}")));
    }
    if !(s1 > s2 && s2 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "steps must satisfy s1 > s2 > 0, got {s1} and {s2}"
        )));
    }
    Ok((e1 / e2).ln() / (s1 / s2).ln())
}
