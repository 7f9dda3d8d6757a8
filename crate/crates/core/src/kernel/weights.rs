//! Elementary integrals `a_l`, `b_l` and the L2 weights `c_s` built from them.
//!
//! Both `a_l` and `b_l` are differences of nearly equal powers for large `l`.
//! `a_l` is evaluated through `expm1`/`ln_1p`; `b_l` uses its binomial series in
//! 1/l, whose leading term is α(1-α)/(12 l^{1+α}). Neither loses digits as `l`
//! grows.

use super::AlphaParam;
use crate::error::{Error, Result};

/// Below this index `b_l` is evaluated from the closed form directly.
const B_SERIES_START: usize = 8;
const B_SERIES_MAX_TERMS: usize = 400;

/// a_l = (l+1)^{1-α} - l^{1-α}
pub fn a_coeff(l: usize, alpha: AlphaParam) -> f64 {
    let beta = 1.0 - alpha.value();
    if l == 0 {
        return 1.0;
    }
    let lf = l as f64;
    lf.powf(beta) * (beta * (1.0 / lf).ln_1p()).exp_m1()
}

/// b_l = [(l+1)^{2-α} - l^{2-α}] / (2-α) - [(l+1)^{1-α} + l^{1-α}] / 2
pub fn b_coeff(l: usize, alpha: AlphaParam) -> f64 {
    let beta = 1.0 - alpha.value();
    let lf = l as f64;
    if l < B_SERIES_START {
        let p = lf + 1.0;
        return (p.powf(beta + 1.0) - lf.powf(beta + 1.0)) / (beta + 1.0)
            - 0.5 * (p.powf(beta) + lf.powf(beta));
    }
    // b_l = l^β Σ_{m≥2} C(β, m) x^m (1 - m) / (2 (m + 1)),  x = 1/l
    let x = 1.0 / lf;
    let mut binom = beta * (beta - 1.0) / 2.0;
    let mut xm = x * x;
    let mut sum = 0.0;
    for m in 2..B_SERIES_MAX_TERMS {
        let mf = m as f64;
        let term = binom * xm * (1.0 - mf) / (2.0 * (mf + 1.0));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        binom *= (beta - mf) / (mf + 1.0);
        xm *= x;
    }
    lf.powf(beta) * sum
}

/// Weights c_0..c_j of the L2 operator at level `j` (derivative at t_{j+1}).
#[derive(Debug, Clone, PartialEq)]
pub struct L2Weights {
    level: usize,
    c: Vec<f64>,
}

impl L2Weights {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c
    }

    pub fn get(&self, s: usize) -> f64 {
        self.c[s]
    }

    /// The modified weights used in the energy estimate: the first two
    /// entries are replaced by c_2.
    pub fn bar(&self) -> Result<Vec<f64>> {
        if self.level < 2 {
            return Err(Error::InvalidArgument(format!(
                "bar weights need level >= 2, got {}",
                self.level
            )));
        }
        let mut bar = self.c.clone();
        bar[0] = self.c[2];
        bar[1] = self.c[2];
        Ok(bar)
    }
}

/// Precomputed `a_l`, `b_l` for `l = 0..=lmax`, so weights for many levels
/// can be assembled without re-evaluating powers.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    alpha: AlphaParam,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl CoefficientTable {
    pub fn new(alpha: AlphaParam, lmax: usize) -> Self {
        let a = (0..=lmax).map(|l| a_coeff(l, alpha)).collect();
        let b = (0..=lmax).map(|l| b_coeff(l, alpha)).collect();
        Self { alpha, a, b }
    }

    pub fn alpha(&self) -> AlphaParam {
        self.alpha
    }

    pub fn max_index(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self, l: usize) -> f64 {
        self.a[l]
    }

    pub fn b(&self, l: usize) -> f64 {
        self.b[l]
    }

    /// Weights for level `j`; requires `1 <= j <= max_index()`.
    pub fn weights(&self, j: usize) -> Result<L2Weights> {
        if j == 0 {
            return Err(Error::InvalidArgument(
                "L2 weights need level j >= 1; the first layer uses the L1 bootstrap".into(),
            ));
        }
        if j > self.max_index() {
            return Err(Error::InvalidArgument(format!(
                "level {j} exceeds table size {}",
                self.max_index()
            )));
        }
        Ok(L2Weights {
            level: j,
            c: assemble(&self.a, &self.b, j),
        })
    }
}

fn assemble(a: &[f64], b: &[f64], j: usize) -> Vec<f64> {
    let mut c = vec![0.0; j + 1];
    match j {
        1 => {
            c[0] = a[0] + b[0] + b[1];
            c[1] = a[1] - b[1] - b[0];
        }
        2 => {
            c[0] = a[0] + b[0];
            c[1] = a[1] + b[1] + b[2] - b[0];
            c[2] = a[2] - b[2] - b[1];
        }
        _ => {
            c[0] = a[0] + b[0];
            for s in 1..=j - 2 {
                c[s] = a[s] + b[s] - b[s - 1];
            }
            c[j - 1] = a[j - 1] + b[j - 1] + b[j] - b[j - 2];
            c[j] = a[j] - b[j] - b[j - 1];
        }
    }
    c
}

/// L2 weights at level `j >= 1`, computed fresh in O(j).
pub fn c_weights(j: usize, alpha: AlphaParam) -> Result<L2Weights> {
    if j == 0 {
        return Err(Error::InvalidArgument(
            "L2 weights need level j >= 1; the first layer uses the L1 bootstrap".into(),
        ));
    }
    CoefficientTable::new(alpha, j).weights(j)
}

/// c̄ weights at level `j >= 2`: c̄_0 = c̄_1 = c_2, c̄_s = c_s otherwise.
pub fn bar_weights(j: usize, alpha: AlphaParam) -> Result<Vec<f64>> {
    if j < 2 {
        return Err(Error::InvalidArgument(format!(
            "bar weights need level >= 2, got {j}"
        )));
    }
    c_weights(j, alpha)?.bar()
}
