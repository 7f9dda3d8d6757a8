//! Continuous problem data, uniform grids and manufactured test cases.
//!
//! The model problem is
//!
//! ```text
//! ∂_t^α u = ∂_x(k ∂_x u) - q u + f,   0 < x < l, 0 < t <= T,
//! u(0, t) = u(l, t) = 0,   u(x, 0) = u0(x)
//! ```
//!
//! with k >= c1 > 0 and q >= 0.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{exact_caputo_power, gamma, AlphaParam};

type Field2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type Field1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real field of (x, t).
#[derive(Clone)]
pub struct ScalarField(Field2);

impl ScalarField {
    pub fn new<F: Fn(f64, f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Self(Arc::new(f))
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_, _| c)
    }

    /// Bilinear interpolation of tabulated values; `values[jt * xs.len() + ix]`
    /// holds the sample at `(xs[ix], ts[jt])`. Queries outside the table are
    /// clamped to its edges.
    pub fn tabulated(xs: Vec<f64>, ts: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || ts.len() < 2 {
            return Err(Error::InvalidProblem("tabulated field needs at least 2x2 samples".into()));
        }
        if values.len() != xs.len() * ts.len() {
            return Err(Error::SizeMismatch { expected: xs.len() * ts.len(), got: values.len() });
        }
        let increasing = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
        if !increasing(&xs) || !increasing(&ts) {
            return Err(Error::InvalidProblem("table abscissae must be strictly increasing".into()));
        }
        let nx = xs.len();
        Ok(Self::new(move |x, t| {
            let (ix, wx) = bracket(&xs, x);
            let (jt, wt) = bracket(&ts, t);
            let v = |i: usize, j: usize| values[j * nx + i];
            (1.0 - wt) * ((1.0 - wx) * v(ix, jt) + wx * v(ix + 1, jt))
                + wt * ((1.0 - wx) * v(ix, jt + 1) + wx * v(ix + 1, jt + 1))
        }))
    }

    #[inline]
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        (self.0)(x, t)
    }
}

fn bracket(grid: &[f64], x: f64) -> (usize, f64) {
    let last = grid.len() - 2;
    let k = grid.partition_point(|&g| g <= x).saturating_sub(1).min(last);
    let w = ((x - grid[k]) / (grid[k + 1] - grid[k])).clamp(0.0, 1.0);
    (k, w)
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ScalarField(..)")
    }
}

/// Which arguments the coefficients k and q depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// k = k(x, t), q = q(x, t)
    VariableXt,
    /// k = k(t), q = q(t); required by the compact scheme
    TimeOnly,
}

/// Problem data. Boundaries are homogeneous Dirichlet.
#[derive(Clone)]
pub struct DiffusionProblem {
    pub k: ScalarField,
    pub q: ScalarField,
    pub f: ScalarField,
    pub u0: Field1,
    pub length: f64,
    pub horizon: f64,
    /// Declared lower bound of k.
    pub c1_lower: f64,
    pub variant: Variant,
}

impl fmt::Debug for DiffusionProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiffusionProblem")
            .field("length", &self.length)
            .field("horizon", &self.horizon)
            .field("c1_lower", &self.c1_lower)
            .field("variant", &self.variant)
            .finish_non_exhaustive()
    }
}

const BOUNDARY_TOL: f64 = 1e-12;

impl DiffusionProblem {
    /// Problem with zero source and the given initial profile, constant k and q.
    pub fn homogeneous<F>(k: f64, q: f64, u0: F, length: f64, horizon: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            k: ScalarField::constant(k),
            q: ScalarField::constant(q),
            f: ScalarField::constant(0.0),
            u0: Arc::new(u0),
            length,
            horizon,
            c1_lower: k,
            variant: Variant::TimeOnly,
        }
    }

    /// Checks the domain, the boundary compatibility of u0 and, on the given
    /// grid, k >= c1 at half nodes and q >= 0 at whole nodes for every level.
    pub fn validate(&self, grid: &GridSpec) -> Result<()> {
        if !(self.length > 0.0 && self.horizon > 0.0 && self.c1_lower > 0.0) {
            return Err(Error::InvalidProblem(
                "domain length, horizon and lower bound of k must be positive".into(),
            ));
        }
        if (grid.length - self.length).abs() > 1e-14 * self.length
            || (grid.horizon - self.horizon).abs() > 1e-14 * self.horizon
        {
            return Err(Error::InvalidProblem("grid does not cover the problem domain".into()));
        }
        let (left, right) = ((self.u0)(0.0), (self.u0)(self.length));
        if left.abs() > BOUNDARY_TOL || right.abs() > BOUNDARY_TOL {
            return Err(Error::InvalidProblem(format!(
                "initial profile must vanish at both ends, got u0(0) = {left:e}, u0(l) = {right:e}"
            )));
        }
        for j in 0..=grid.m {
            let t = grid.t(j);
            for i in 1..=grid.n {
                let k = self.k.eval(grid.x_half(i), t);
                if !(k >= self.c1_lower) {
                    return Err(Error::InvalidProblem(format!(
                        "k = {k} below declared bound {} at x = {}, t = {t}",
                        self.c1_lower,
                        grid.x_half(i)
                    )));
                }
            }
            for i in 0..=grid.n {
                let q = self.q.eval(grid.x(i), t);
                if !(q >= 0.0) {
                    return Err(Error::InvalidProblem(format!(
                        "q = {q} negative at x = {}, t = {t}",
                        grid.x(i)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Uniform space-time grid: x_i = i h (i = 0..=n), t_j = j τ (j = 0..=m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub m: usize,
    pub h: f64,
    pub tau: f64,
    pub length: f64,
    pub horizon: f64,
}

impl GridSpec {
    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        if i == self.n {
            self.length
        } else {
            i as f64 * self.h
        }
    }

    /// x_{i-1/2}
    #[inline]
    pub fn x_half(&self, i: usize) -> f64 {
        (i as f64 - 0.5) * self.h
    }

    #[inline]
    pub fn t(&self, j: usize) -> f64 {
        if j == self.m {
            self.horizon
        } else {
            j as f64 * self.tau
        }
    }
}

/// Uniform grid with `n` spatial subintervals and `m` time steps.
///
/// A single time step is accepted; it yields only the bootstrap layer.
pub fn build_grid(n: usize, m: usize, length: f64, horizon: f64) -> Result<GridSpec> {
    if n < 2 || m < 1 {
        return Err(Error::InvalidArgument(format!(
            "grid needs N >= 2 and M >= 1, got N = {n}, M = {m}"
        )));
    }
    if !(length > 0.0 && horizon > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "domain length and horizon must be positive, got l = {length}, T = {horizon}"
        )));
    }
    Ok(GridSpec {
        n,
        m,
        h: length / n as f64,
        tau: horizon / m as f64,
        length,
        horizon,
    })
}

/// A problem whose exact solution and exact Caputo derivative are known.
#[derive(Clone)]
pub struct ManufacturedCase {
    pub alpha: AlphaParam,
    pub problem: DiffusionProblem,
    u_exact: Field2,
    caputo_u: Field2,
    spatial: Field2,
}

impl fmt::Debug for ManufacturedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ManufacturedCase")
            .field("alpha", &self.alpha)
            .field("problem", &self.problem)
            .finish_non_exhaustive()
    }
}

impl ManufacturedCase {
    pub fn u_exact(&self, x: f64, t: f64) -> f64 {
        (self.u_exact)(x, t)
    }

    /// Exact ∂_t^α u.
    pub fn caputo_u(&self, x: f64, t: f64) -> f64 {
        (self.caputo_u)(x, t)
    }

    /// Exact ∂_x(k ∂_x u) - q u.
    pub fn spatial_operator(&self, x: f64, t: f64) -> f64 {
        (self.spatial)(x, t)
    }
}

/// The smooth test problem u = sin(πx)(t^{3+α} + t² + 1) on (0,1)×(0,1].
///
/// `VariableXt` uses k = 2 - cos(xt), q = 1 - sin(xt);
/// `TimeOnly` uses k = 2 - cos t, q = 1 - sin t.
pub fn manufactured_case(alpha: AlphaParam, variant: Variant) -> ManufacturedCase {
    let a = alpha.value();
    let time_part = move |t: f64| t.powf(3.0 + a) + t * t + 1.0;
    let u = move |x: f64, t: f64| (PI * x).sin() * time_part(t);

    let cubic_coeff = gamma(4.0 + a) / 6.0;
    let quad_coeff = 2.0 / gamma(3.0 - a);
    let caputo_time = move |t: f64| {
        if t <= 0.0 {
            0.0
        } else {
            cubic_coeff * t.powi(3) + quad_coeff * t.powf(2.0 - a)
        }
    };
    debug_assert!({
        let t = 0.7;
        let pr = exact_caputo_power(3.0 + a, alpha, t).unwrap() + exact_caputo_power(2.0, alpha, t).unwrap();
        (pr - caputo_time(t)).abs() < 1e-12
    });
    let caputo = move |x: f64, t: f64| (PI * x).sin() * caputo_time(t);

    // (k, k_x, q) as functions of (x, t)
    let coeffs: Arc<dyn Fn(f64, f64) -> (f64, f64, f64) + Send + Sync> = match variant {
        Variant::VariableXt => Arc::new(|x: f64, t: f64| {
            let (s, c) = (x * t).sin_cos();
            (2.0 - c, t * s, 1.0 - s)
        }),
        Variant::TimeOnly => Arc::new(|_x: f64, t: f64| {
            let (s, c) = t.sin_cos();
            (2.0 - c, 0.0, 1.0 - s)
        }),
    };

    let spatial = {
        let coeffs = coeffs.clone();
        move |x: f64, t: f64| {
            let (k, kx, q) = coeffs(x, t);
            let g = time_part(t);
            let (s, c) = (PI * x).sin_cos();
            let ux = PI * c * g;
            let uxx = -PI * PI * s * g;
            kx * ux + k * uxx - q * s * g
        }
    };
    let spatial: Field2 = Arc::new(spatial);
    let source = {
        let spatial = spatial.clone();
        move |x: f64, t: f64| caputo(x, t) - spatial(x, t)
    };

    let k = {
        let coeffs = coeffs.clone();
        ScalarField::new(move |x, t| coeffs(x, t).0)
    };
    let q = ScalarField::new(move |x, t| coeffs(x, t).2);

    let problem = DiffusionProblem {
        k,
        q,
        f: ScalarField::new(source),
        u0: Arc::new(move |x| {
            // sin(π l) is not exactly zero in floating point
            if x <= 0.0 || x >= 1.0 {
                0.0
            } else {
                (PI * x).sin()
            }
        }),
        length: 1.0,
        horizon: 1.0,
        c1_lower: 1.0,
        variant,
    };

    ManufacturedCase {
        alpha,
        problem,
        u_exact: Arc::new(u),
        caputo_u: Arc::new(caputo),
        spatial,
    }
}
