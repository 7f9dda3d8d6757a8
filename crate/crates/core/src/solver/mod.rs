//! Time stepping for the fractional diffusion problem.
//!
//! Both schemes advance with the L2 operator from layer 2 on:
//!
//! * [`SchemeKind::Order2`]: `Δ^α y = Λ y^{j+1} + φ^{j+1}`, second order in space.
//! * [`SchemeKind::Compact4`]: `Δ^α H y = a y_x̄x^{j+1} - d H y^{j+1} + H φ^{j+1}`,
//!   fourth order in space, for coefficients depending on time only.
//!
//! The L2 operator needs three time points, so layer 1 is produced by the
//! implicit L1 scheme on a refined uniform subgrid of [0, τ]
//! (see [`bootstrap_first_layer`]).
//!
//! Each step rebuilds the full history sum, O(j N) work per step.

mod tridiagonal;

pub use tridiagonal::{thomas_solve, TridiagonalSystem};

use crate::error::{Error, Result};
use crate::kernel::{a_coeff, c_weights, AlphaParam, CoefficientTable};
use crate::parallel::Execution;
use crate::problem::{DiffusionProblem, GridSpec, Variant};

/// Spatial discretization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// Three-point conservative stencil, O(h²).
    Order2,
    /// Compact stencil with the averaging operator H, O(h⁴).
    Compact4,
}

impl SchemeKind {
    fn check(self, problem: &DiffusionProblem) -> Result<()> {
        if self == SchemeKind::Compact4 && problem.variant != Variant::TimeOnly {
            return Err(Error::IncompatibleScheme);
        }
        Ok(())
    }
}

/// All computed layers y^0..y^M on the spatial grid, stored row-major.
#[derive(Debug, Clone)]
pub struct SolutionHistory {
    grid: GridSpec,
    alpha: AlphaParam,
    data: Vec<f64>,
}

impl SolutionHistory {
    fn with_capacity(grid: GridSpec, alpha: AlphaParam) -> Self {
        Self {
            grid,
            alpha,
            data: Vec::with_capacity((grid.m + 1) * (grid.n + 1)),
        }
    }

    /// A history seeded with explicit layers, e.g. for driving single steps.
    pub fn from_layers(grid: GridSpec, alpha: AlphaParam, layers: &[Vec<f64>]) -> Result<Self> {
        let mut h = Self::with_capacity(grid, alpha);
        for layer in layers {
            h.push(layer)?;
        }
        Ok(h)
    }

    pub fn push(&mut self, layer: &[f64]) -> Result<()> {
        let width = self.grid.n + 1;
        if layer.len() != width {
            return Err(Error::SizeMismatch { expected: width, got: layer.len() });
        }
        if self.layer_count() > self.grid.m {
            return Err(Error::InvalidArgument("history already holds M + 1 layers".into()));
        }
        self.data.extend_from_slice(layer);
        Ok(())
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn alpha(&self) -> AlphaParam {
        self.alpha
    }

    pub fn layer_count(&self) -> usize {
        self.data.len() / (self.grid.n + 1)
    }

    pub fn layer(&self, j: usize) -> &[f64] {
        let w = self.grid.n + 1;
        &self.data[j * w..(j + 1) * w]
    }

    pub fn layers(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.grid.n + 1)
    }
}

/// (Λ y)_i = (a_{i+1} y_{i+1} - (a_{i+1} + a_i) y_i + a_i y_{i-1}) / h² - d_i y_i
/// with a_i = k(x_{i-1/2}, t_{j+1}), d_i = q(x_i, t_{j+1}); boundary entries are zero.
pub fn apply_lambda(y: &[f64], j: usize, problem: &DiffusionProblem, grid: &GridSpec) -> Result<Vec<f64>> {
    check_len(y, grid)?;
    let t = grid.t(j + 1);
    let n = grid.n;
    let h2 = grid.h * grid.h;
    let a: Vec<f64> = (0..=n).map(|i| if i == 0 { 0.0 } else { problem.k.eval(grid.x_half(i), t) }).collect();
    let mut out = vec![0.0; n + 1];
    for i in 1..n {
        let d = problem.q.eval(grid.x(i), t);
        out[i] = (a[i + 1] * y[i + 1] - (a[i + 1] + a[i]) * y[i] + a[i] * y[i - 1]) / h2 - d * y[i];
    }
    Ok(out)
}

/// H v_i = v_i + (v_{i+1} - 2 v_i + v_{i-1}) / 12 at interior nodes;
/// end values pass through unchanged.
pub fn apply_compact_h(v: &[f64], grid: &GridSpec) -> Result<Vec<f64>> {
    check_len(v, grid)?;
    Ok(compact_h(v))
}

fn compact_h(v: &[f64]) -> Vec<f64> {
    let n = v.len() - 1;
    let mut out = v.to_vec();
    for i in 1..n {
        out[i] = v[i] + (v[i + 1] - 2.0 * v[i] + v[i - 1]) / 12.0;
    }
    out
}

fn check_len(v: &[f64], grid: &GridSpec) -> Result<()> {
    if v.len() != grid.n + 1 {
        return Err(Error::SizeMismatch { expected: grid.n + 1, got: v.len() });
    }
    Ok(())
}

/// Number of L1 substeps on [0, τ]: ceil(τ^{-1/(2-α)}), so the substep is
/// O(τ^{(3-α)/(2-α)}) and the L1 error matches O(τ^{3-α}).
pub fn bootstrap_substeps(tau: f64, alpha: AlphaParam) -> usize {
    let raw = tau.powf(-1.0 / (2.0 - alpha.value()));
    // guard against 4.0000000001 style round-up
    let snapped = if (raw - raw.round()).abs() < 1e-9 { raw.round() } else { raw.ceil() };
    (snapped as usize).max(1)
}

/// Linear combination lead·y^j - Σ_{s=0}^{j-1} w_{j-s} (y^{s+1} - y^s) over
/// the whole spatial row, with lead = w_0.
fn history_term<'a, L>(layer: L, w: &[f64], j: usize, width: usize, exec: Execution) -> Vec<f64>
where
    L: Fn(usize) -> &'a [f64] + Sync + Send,
{
    let mut acc = vec![0.0; width];
    let chunk = if exec.is_parallel() { 512 } else { width };
    exec.for_each_chunk(&mut acc, chunk, |off, out| {
        let end = off + out.len();
        out.iter_mut()
            .zip(&layer(j)[off..end])
            .for_each(|(o, &y)| *o = w[0] * y);
        for s in 0..j {
            let c = w[j - s];
            let lo = &layer(s)[off..end];
            let hi = &layer(s + 1)[off..end];
            for ((o, &a), &b) in out.iter_mut().zip(hi).zip(lo) {
                *o -= c * (a - b);
            }
        }
    });
    acc
}

/// Assembles and solves one implicit level at time `t`:
/// `kfac·lead·M y - S y = M φ(t) + kfac·M hist`, where M is the identity
/// (order 2) or H (compact) and S the matching spatial operator.
fn implicit_level(
    scheme: SchemeKind,
    problem: &DiffusionProblem,
    grid: &GridSpec,
    t: f64,
    kfac: f64,
    lead: f64,
    hist: &[f64],
) -> Result<Vec<f64>> {
    let n = grid.n;
    let h2 = grid.h * grid.h;
    let gamma = kfac * lead;
    let interior = n - 1;
    let mut sys = TridiagonalSystem {
        lower: vec![0.0; interior.saturating_sub(1)],
        diag: vec![0.0; interior],
        upper: vec![0.0; interior.saturating_sub(1)],
        rhs: vec![0.0; interior],
    };
    let phi: Vec<f64> = (0..=n).map(|i| problem.f.eval(grid.x(i), t)).collect();

    match scheme {
        SchemeKind::Order2 => {
            let a: Vec<f64> =
                (0..=n).map(|i| if i == 0 { 0.0 } else { problem.k.eval(grid.x_half(i), t) }).collect();
            for r in 0..interior {
                let i = r + 1;
                let d = problem.q.eval(grid.x(i), t);
                sys.diag[r] = gamma + d + (a[i] + a[i + 1]) / h2;
                if r > 0 {
                    sys.lower[r - 1] = -a[i] / h2;
                }
                if r + 1 < interior {
                    sys.upper[r] = -a[i + 1] / h2;
                }
                sys.rhs[r] = phi[i] + kfac * hist[i];
            }
        }
        SchemeKind::Compact4 => {
            let xm = 0.5 * grid.length;
            let a = problem.k.eval(xm, t);
            let d = problem.q.eval(xm, t);
            let b = gamma + d;
            let off = b / 12.0 - a / h2;
            let hphi = compact_h(&phi);
            let hhist = compact_h(hist);
            for r in 0..interior {
                let i = r + 1;
                sys.diag[r] = 10.0 * b / 12.0 + 2.0 * a / h2;
                if r > 0 {
                    sys.lower[r - 1] = off;
                }
                if r + 1 < interior {
                    sys.upper[r] = off;
                }
                sys.rhs[r] = hphi[i] + kfac * hhist[i];
            }
        }
    }

    let x = thomas_solve(&sys)?;
    let mut out = vec![0.0; n + 1];
    out[1..n].copy_from_slice(&x);
    Ok(out)
}

fn initial_layer(problem: &DiffusionProblem, grid: &GridSpec) -> Vec<f64> {
    let mut y: Vec<f64> = (0..=grid.n).map(|i| (problem.u0)(grid.x(i))).collect();
    y[0] = 0.0;
    y[grid.n] = 0.0;
    y
}

/// Layer y^1 from the implicit L1 scheme on `bootstrap_substeps(τ, α)`
/// uniform substeps of [0, τ], using the same spatial operator as `scheme`.
pub fn bootstrap_first_layer(
    problem: &DiffusionProblem,
    grid: &GridSpec,
    alpha: AlphaParam,
    scheme: SchemeKind,
) -> Result<Vec<f64>> {
    scheme.check(problem)?;
    bootstrap(problem, grid, alpha, scheme, Execution::Sequential)
}

fn bootstrap(
    problem: &DiffusionProblem,
    grid: &GridSpec,
    alpha: AlphaParam,
    scheme: SchemeKind,
    exec: Execution,
) -> Result<Vec<f64>> {
    let substeps = bootstrap_substeps(grid.tau, alpha);
    let sub_tau = grid.tau / substeps as f64;
    let kfac = alpha.scale(sub_tau);
    let a: Vec<f64> = (0..substeps).map(|l| a_coeff(l, alpha)).collect();
    let width = grid.n + 1;

    let mut layers: Vec<Vec<f64>> = vec![initial_layer(problem, grid)];
    for m in 0..substeps {
        let t = if m + 1 == substeps { grid.tau } else { (m + 1) as f64 * sub_tau };
        let hist = history_term(|s| layers[s].as_slice(), &a[..=m], m, width, exec);
        let next = implicit_level(scheme, problem, grid, t, kfac, a[0], &hist)?;
        layers.push(next);
    }
    Ok(layers.pop().expect("at least one substep"))
}

fn check_step(history: &SolutionHistory, j: usize, grid: &GridSpec) -> Result<()> {
    if j < 1 {
        return Err(Error::InvalidArgument("L2 steps start at level j = 1".into()));
    }
    if history.layer_count() < j + 1 {
        return Err(Error::InvalidArgument(format!(
            "history holds {} layers, level {j} needs {}",
            history.layer_count(),
            j + 1
        )));
    }
    if history.grid() != grid {
        return Err(Error::InvalidArgument("history grid differs from the step grid".into()));
    }
    Ok(())
}

fn l2_step(
    scheme: SchemeKind,
    history: &SolutionHistory,
    j: usize,
    weights: &[f64],
    problem: &DiffusionProblem,
    grid: &GridSpec,
    exec: Execution,
) -> Result<Vec<f64>> {
    let kfac = history.alpha().scale(grid.tau);
    let hist = history_term(|s| history.layer(s), weights, j, grid.n + 1, exec);
    implicit_level(scheme, problem, grid, grid.t(j + 1), kfac, weights[0], &hist)
}

/// y^{j+1} of the second-order scheme, given layers 0..=j.
pub fn step_order2(history: &SolutionHistory, j: usize, problem: &DiffusionProblem, grid: &GridSpec) -> Result<Vec<f64>> {
    check_step(history, j, grid)?;
    let w = c_weights(j, history.alpha())?;
    l2_step(SchemeKind::Order2, history, j, w.as_slice(), problem, grid, Execution::Sequential)
}

/// y^{j+1} of the compact scheme, given layers 0..=j.
pub fn step_compact(history: &SolutionHistory, j: usize, problem: &DiffusionProblem, grid: &GridSpec) -> Result<Vec<f64>> {
    SchemeKind::Compact4.check(problem)?;
    check_step(history, j, grid)?;
    let w = c_weights(j, history.alpha())?;
    l2_step(SchemeKind::Compact4, history, j, w.as_slice(), problem, grid, Execution::Sequential)
}

/// Full run: layer 0 from u0, layer 1 from the bootstrap, layers 2..=M by
/// L2 steps.
pub fn solve(problem: &DiffusionProblem, grid: &GridSpec, alpha: AlphaParam, scheme: SchemeKind) -> Result<SolutionHistory> {
    solve_with(problem, grid, alpha, scheme, Execution::Sequential)
}

/// [`solve`] with an explicit execution strategy for the spatial history sums.
pub fn solve_with(
    problem: &DiffusionProblem,
    grid: &GridSpec,
    alpha: AlphaParam,
    scheme: SchemeKind,
    exec: Execution,
) -> Result<SolutionHistory> {
    scheme.check(problem)?;
    problem.validate(grid)?;
    let mut history = SolutionHistory::with_capacity(*grid, alpha);
    history.push(&initial_layer(problem, grid))?;
    history.push(&bootstrap(problem, grid, alpha, scheme, exec)?)?;

    // weights change shape with j, so only a/b are shared across levels
    let table = CoefficientTable::new(alpha, grid.m.max(1));
    for j in 1..grid.m {
        let w = table.weights(j)?;
        let next = l2_step(scheme, &history, j, w.as_slice(), problem, grid, exec)?;
        history.push(&next)?;
    }
    Ok(history)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{build_grid, manufactured_case, ScalarField};
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn alpha(a: f64) -> AlphaParam {
        AlphaParam::new(a).unwrap()
    }

    fn unit_problem() -> DiffusionProblem {
        DiffusionProblem::homogeneous(1.0, 0.0, |_| 0.0, 1.0, 1.0)
    }

    #[test]
    fn lambda_examples() {
        let p = unit_problem();
        let grid = build_grid(100, 10, 1.0, 1.0).unwrap();
        assert!(apply_lambda(&vec![0.0; 101], 0, &p, &grid).unwrap().iter().all(|&v| v == 0.0));

        let y: Vec<f64> = (0..=100).map(|i| (PI * grid.x(i)).sin()).collect();
        let ly = apply_lambda(&y, 3, &p, &grid).unwrap();
        for i in 1..100 {
            let exact = -PI * PI * y[i];
            if y[i] > 0.1 {
                assert!(((ly[i] - exact) / exact).abs() < 1e-2);
            }
        }

        let grid = build_grid(10, 2, 1.0, 1.0).unwrap();
        let y: Vec<f64> = (0..=10).map(|i| {
            let x = grid.x(i);
            x * (1.0 - x)
        }).collect();
        let ly = apply_lambda(&y, 0, &p, &grid).unwrap();
        assert_eq!((ly[0], ly[10]), (0.0, 0.0));
        for v in &ly[1..10] {
            assert!((v + 2.0).abs() < 1e-12);
        }
        assert!(apply_lambda(&[0.0; 3], 0, &p, &grid).is_err());
    }

    #[test]
    fn compact_h_examples() {
        let grid = build_grid(6, 2, 1.0, 1.0).unwrap();
        let h = apply_compact_h(&[2.5; 7], &grid).unwrap();
        assert!(h.iter().all(|&v| (v - 2.5).abs() < 1e-15));

        let grid = build_grid(2, 2, 1.0, 1.0).unwrap();
        let h = apply_compact_h(&[0.0, 1.0, 0.0], &grid).unwrap();
        assert!((h[1] - 5.0 / 6.0).abs() < 1e-15);
        assert!(apply_compact_h(&[0.0; 4], &grid).is_err());
    }

    #[test]
    fn substep_rule() {
        assert_eq!(bootstrap_substeps(0.1, alpha(0.5)), 5);
        assert_eq!(bootstrap_substeps(1.0, alpha(0.5)), 1);
        assert_eq!(bootstrap_substeps(1.0 / 160.0, alpha(0.5)), 30);
    }

    #[test]
    fn zero_data_gives_zero_history() {
        let p = unit_problem();
        for scheme in [SchemeKind::Order2, SchemeKind::Compact4] {
            let grid = build_grid(8, 6, 1.0, 1.0).unwrap();
            let y1 = bootstrap_first_layer(&p, &grid, alpha(0.4), scheme).unwrap();
            assert!(y1.iter().all(|&v| v == 0.0));
            let hist = solve(&p, &grid, alpha(0.4), scheme).unwrap();
            assert_eq!(hist.layer_count(), 7);
            assert!(hist.layers().all(|l| l.iter().all(|&v| v == 0.0)));
        }
    }

    #[test]
    fn single_time_step_returns_bootstrap_only() {
        let case = manufactured_case(alpha(0.5), Variant::VariableXt);
        let grid = build_grid(10, 1, 1.0, 1.0).unwrap();
        let hist = solve(&case.problem, &grid, alpha(0.5), SchemeKind::Order2).unwrap();
        assert_eq!(hist.layer_count(), 2);
        let y1 = bootstrap_first_layer(&case.problem, &grid, alpha(0.5), SchemeKind::Order2).unwrap();
        assert_eq!(hist.layer(1), y1.as_slice());
    }

    /// With N = 2 there is one interior unknown; the order-2 step is the
    /// scalar equation (K c0 + (a1 + a2)/h² + d) y = φ + K (c0 y^j - Σ ...).
    #[test]
    fn scalar_oracle_order2() {
        let al = alpha(0.6);
        let p = DiffusionProblem {
            k: ScalarField::new(|x, t| 1.0 + x + t),
            q: ScalarField::new(|_, t| 0.5 * t),
            f: ScalarField::new(|x, t| x * t + 1.0),
            u0: Arc::new(|x| x * (1.0 - x)),
            length: 1.0,
            horizon: 1.0,
            c1_lower: 1.0,
            variant: Variant::VariableXt,
        };
        let grid = build_grid(2, 4, 1.0, 1.0).unwrap();
        let layers = vec![vec![0.0, 0.25, 0.0], vec![0.0, 0.31, 0.0], vec![0.0, 0.4, 0.0]];
        let hist = SolutionHistory::from_layers(grid, al, &layers).unwrap();
        let j = 2;
        let got = step_order2(&hist, j, &p, &grid).unwrap();

        let c = c_weights(j, al).unwrap();
        let c = c.as_slice();
        let tau: f64 = 0.25;
        let kf = tau.powf(-0.6) / al.gamma_2ma();
        let t = 0.75;
        let (a1, a2) = (1.0 + 0.25 + t, 1.0 + 0.75 + t);
        let d = 0.5 * t;
        let h2 = 0.25;
        let y: Vec<f64> = layers.iter().map(|l| l[1]).collect();
        let hist_sum = c[0] * y[2] - c[2] * (y[1] - y[0]) - c[1] * (y[2] - y[1]);
        let expected = (0.5 * t + 1.0 + kf * hist_sum) / (kf * c[0] + (a1 + a2) / h2 + d);
        assert!((got[1] - expected).abs() < 1e-14);
        assert_eq!((got[0], got[2]), (0.0, 0.0));
    }

    /// N = 2 compact: H y_1 = 10/12 y_1, y_x̄x = -2 y_1 / h².
    #[test]
    fn scalar_oracle_compact() {
        let al = alpha(0.3);
        let p = DiffusionProblem {
            k: ScalarField::new(|_, t| 2.0 - t.cos()),
            q: ScalarField::constant(0.0),
            f: ScalarField::new(|x, t| (PI * x).sin() * (1.0 + t)),
            u0: Arc::new(|x| (PI * x).sin()),
            length: 1.0,
            horizon: 1.0,
            c1_lower: 1.0,
            variant: Variant::TimeOnly,
        };
        let grid = build_grid(2, 5, 1.0, 1.0).unwrap();
        let layers = vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.9, 0.0]];
        let hist = SolutionHistory::from_layers(grid, al, &layers).unwrap();
        let got = step_compact(&hist, 1, &p, &grid).unwrap();

        let c = c_weights(1, al).unwrap();
        let c = c.as_slice();
        let tau: f64 = 0.2;
        let kf = tau.powf(-0.3) / al.gamma_2ma();
        let t: f64 = 0.4;
        let a = 2.0 - t.cos();
        let h2 = 0.25;
        let phi1 = 1.0 + t; // sin(π/2)(1 + t), boundary values of φ vanish
        let hs = 10.0 / 12.0;
        let hist_sum = c[0] * 0.9 - c[1] * (0.9 - 1.0);
        let expected = (hs * phi1 + kf * hs * hist_sum) / (kf * c[0] * hs + 2.0 * a / h2);
        assert!((got[1] - expected).abs() < 1e-12, "{} vs {expected}", got[1]);
    }

    #[test]
    fn compact_rejects_variable_coefficients() {
        let case = manufactured_case(alpha(0.5), Variant::VariableXt);
        let grid = build_grid(10, 4, 1.0, 1.0).unwrap();
        assert_eq!(
            solve(&case.problem, &grid, alpha(0.5), SchemeKind::Compact4).unwrap_err(),
            Error::IncompatibleScheme
        );
        let hist = SolutionHistory::from_layers(grid, alpha(0.5), &[vec![0.0; 11], vec![0.0; 11]]).unwrap();
        assert!(step_compact(&hist, 1, &case.problem, &grid).is_err());
    }

    #[test]
    fn step_preconditions() {
        let p = unit_problem();
        let grid = build_grid(4, 4, 1.0, 1.0).unwrap();
        let hist = SolutionHistory::from_layers(grid, alpha(0.5), &[vec![0.0; 5], vec![0.0; 5]]).unwrap();
        assert!(step_order2(&hist, 0, &p, &grid).is_err());
        assert!(step_order2(&hist, 2, &p, &grid).is_err());
        assert!(step_order2(&hist, 1, &p, &grid).is_ok());
        let other = build_grid(5, 4, 1.0, 1.0).unwrap();
        assert!(step_order2(&hist, 1, &p, &other).is_err());
    }

    #[test]
    fn boundaries_stay_zero() {
        for (scheme, variant) in [(SchemeKind::Order2, Variant::VariableXt), (SchemeKind::Compact4, Variant::TimeOnly)] {
            let case = manufactured_case(alpha(0.7), variant);
            let grid = build_grid(15, 12, 1.0, 1.0).unwrap();
            let hist = solve(&case.problem, &grid, alpha(0.7), scheme).unwrap();
            for l in hist.layers() {
                assert_eq!((l[0], l[15]), (0.0, 0.0));
            }
            let u0: Vec<f64> = (0..=15).map(|i| (case.problem.u0)(grid.x(i))).collect();
            assert_eq!(hist.layer(0), u0.as_slice());
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let case = manufactured_case(alpha(0.5), Variant::VariableXt);
        let grid = build_grid(2000, 12, 1.0, 1.0).unwrap();
        let a = solve_with(&case.problem, &grid, alpha(0.5), SchemeKind::Order2, Execution::Sequential).unwrap();
        let b = solve_with(&case.problem, &grid, alpha(0.5), SchemeKind::Order2, Execution::Parallel).unwrap();
        for (la, lb) in a.layers().zip(b.layers()) {
            assert_eq!(la, lb);
        }
    }

    #[test]
    fn compact_system_is_diagonally_dominant() {
        // a in [1, 3], d in [0, 2], wide spread of τ and h
        for &(a, d) in &[(1.0, 0.0), (3.0, 2.0), (1.0, 2.0), (3.0, 0.0)] {
            for &tau in &[1.0, 0.1, 1e-3] {
                for &n in &[2usize, 5, 50, 2000] {
                    for &al in &[0.05, 0.5, 0.95] {
                        let p = alpha(al);
                        let h2 = (1.0 / n as f64).powi(2);
                        let c0 = c_weights(1, p).unwrap().get(0);
                        let b = p.scale(tau) * c0 + d;
                        let diag = 10.0 * b / 12.0 + 2.0 * a / h2;
                        let off = b / 12.0 - a / h2;
                        assert!(diag - 2.0 * off.abs() > 0.0);
                    }
                }
            }
        }
    }
}
