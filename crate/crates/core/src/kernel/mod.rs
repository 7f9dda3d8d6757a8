//! Discrete Caputo operators on uniform time grids.
//!
//! The L2 operator approximates the Caputo derivative of order α at
//! t_{j+1} from piecewise-quadratic interpolation of the samples u(t_0..t_{j+1}):
//!
//! ```text
//! Δ^α u = τ^{-α} / Γ(2-α) · Σ_{s=0}^{j} c_{j-s} (u_{s+1} - u_s)
//! ```
//!
//! with weights `c_s` assembled from the elementary integrals `a_l` and `b_l`
//! (see [`weights`]). The L1 operator (piecewise-linear interpolation) is kept
//! for bootstrapping the first time layer and as a comparison point.

pub mod energy;
pub mod gamma;
pub mod operators;
pub mod quadrature;
pub mod weights;

pub use energy::energy_e;
pub use gamma::gamma;
pub use operators::{exact_caputo_power, l1_caputo, l2_caputo, NonuniformSeries, TimeSeries};
pub use quadrature::caputo_by_quadrature;
pub use weights::{a_coeff, b_coeff, bar_weights, c_weights, CoefficientTable, L2Weights};

use crate::error::{Error, Result};

/// Fractional order α ∈ (0, 1) together with Γ(1-α) and Γ(2-α).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParam {
    alpha: f64,
    gamma_1ma: f64,
    gamma_2ma: f64,
}

impl AlphaParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(Self {
            alpha,
            gamma_1ma: gamma(1.0 - alpha),
            gamma_2ma: gamma(2.0 - alpha),
        })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.alpha
    }

    /// Γ(1-α)
    #[inline]
    pub fn gamma_1ma(&self) -> f64 {
        self.gamma_1ma
    }

    /// Γ(2-α)
    #[inline]
    pub fn gamma_2ma(&self) -> f64 {
        self.gamma_2ma
    }

    /// The operator prefactor τ^{-α} / Γ(2-α).
    #[inline]
    pub fn scale(&self, tau: f64) -> f64 {
        tau.powf(-self.alpha) / self.gamma_2ma
    }
}
