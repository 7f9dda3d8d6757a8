use crate::error::{Error, Result};

/// A x = rhs with A tridiagonal: `lower[i]` multiplies x[i] in row i+1,
/// `upper[i]` multiplies x[i+1] in row i.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.diag.len();
        let off = n.saturating_sub(1);
        for (len, expected) in [(self.lower.len(), off), (self.upper.len(), off), (self.rhs.len(), n)] {
            if len != expected {
                return Err(Error::SizeMismatch { expected, got: len });
            }
        }
        Ok(())
    }

    /// A x, for residual checks.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.lower[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v += self.upper[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    /// Smallest margin diag_i - |lower_{i-1}| - |upper_i| over all rows.
    pub fn dominance_margin(&self) -> f64 {
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let lo = if i > 0 { self.lower[i - 1].abs() } else { 0.0 };
                let up = if i + 1 < n { self.upper[i].abs() } else { 0.0 };
                self.diag[i].abs() - lo - up
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Thomas algorithm (forward elimination, back substitution).
pub fn thomas_solve(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    sys.check_shape()?;
    let n = sys.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];

    let mut pivot = sys.diag[0];
    if pivot == 0.0 || !pivot.is_finite() {
        return Err(Error::ZeroPivot(0));
    }
    if n > 1 {
        c[0] = sys.upper[0] / pivot;
    }
    d[0] = sys.rhs[0] / pivot;
    for i in 1..n {
        let l = sys.lower[i - 1];
        pivot = sys.diag[i] - l * c[i - 1];
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(Error::ZeroPivot(i));
        }
        if i + 1 < n {
            c[i] = sys.upper[i] / pivot;
        }
        d[i] = (sys.rhs[i] - l * d[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}
