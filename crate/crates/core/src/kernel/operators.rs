use super::weights::c_weights;
use super::{gamma, AlphaParam};
use crate::error::{Error, Result};

/// Samples u(t_0), …, u(t_m) on a uniform grid with step `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    tau: f64,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>, tau: f64) -> Result<Self> {
        if !(tau > 0.0) {
            return Err(Error::InvalidArgument(format!("time step must be positive, got {tau}")));
        }
        if values.len() < 2 {
            return Err(Error::SeriesTooShort { needed: 2, have: values.len() });
        }
        Ok(Self { values, tau })
    }

    /// Samples `f` at t_s = s·tau for s = 0..=steps.
    pub fn sample<F: Fn(f64) -> f64>(f: F, tau: f64, steps: usize) -> Result<Self> {
        Self::new((0..=steps).map(|s| f(s as f64 * tau)).collect(), tau)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// L2 approximation of the Caputo derivative at t_{j+1}; needs samples up to
/// index j+1 and `j >= 1`.
pub fn l2_caputo(u: &TimeSeries, j: usize, alpha: AlphaParam) -> Result<f64> {
    if u.len() < j + 2 {
        return Err(Error::SeriesTooShort { needed: j + 2, have: u.len() });
    }
    let w = c_weights(j, alpha)?;
    let c = w.as_slice();
    let v = u.values();
    let sum: f64 = (0..=j).map(|s| c[j - s] * (v[s + 1] - v[s])).sum();
    Ok(alpha.scale(u.tau()) * sum)
}

/// Samples on a strictly increasing, possibly nonuniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NonuniformSeries {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl NonuniformSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::SizeMismatch { expected: times.len(), got: values.len() });
        }
        if times.len() < 2 {
            return Err(Error::SeriesTooShort { needed: 2, have: times.len() });
        }
        if let Some(k) = (1..times.len()).find(|&k| !(times[k] > times[k - 1])) {
            return Err(Error::NonMonotoneTimes(k));
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// L1 approximation of the Caputo derivative at the last time point.
pub fn l1_caputo(u: &NonuniformSeries, alpha: AlphaParam) -> f64 {
    let t = u.times();
    let v = u.values();
    let end = *t.last().expect("validated length");
    let beta = 1.0 - alpha.value();
    let mut sum = 0.0;
    for s in 0..t.len() - 1 {
        let slope = (v[s + 1] - v[s]) / (t[s + 1] - t[s]);
        let kernel = (end - t[s]).powf(beta) - (end - t[s + 1]).powf(beta);
        sum += slope * kernel;
    }
    // ∫ (t_end - η)^{-α} dη = kernel / (1-α), and Γ(1-α)(1-α) = Γ(2-α)
    sum / alpha.gamma_2ma()
}

/// Caputo derivative of t^μ: Γ(μ+1)/Γ(μ+1-α) · t^{μ-α}.
pub fn exact_caputo_power(mu: f64, alpha: AlphaParam, t: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::InvalidArgument(format!("power must be positive, got {mu}")));
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    let a = alpha.value();
    Ok(gamma(mu + 1.0) / gamma(mu + 1.0 - a) * t.powf(mu - a))
}
