use crate::error::{Error, Result};

/// Discrete energy E_j for weights (c0, c1), with `v_cur = v_j` and
/// `v_prev = v_{j-1}`:
///
/// ```text
/// A = ½√((c0-c1)/2) + ½√((c0+3c1)/2)
/// E_j = A² v_j² + (√((c0-c1)/2) v_j - A v_{j-1})²
/// ```
///
/// Requires c0 >= max(c1, -3 c1) so both roots are real.
pub fn energy_e(v_cur: f64, v_prev: f64, c0: f64, c1: f64) -> Result<f64> {
    if c0 < c1.max(-3.0 * c1) {
        return Err(Error::EnergyConstraint { c0, c1 });
    }
    let r1 = ((c0 - c1) / 2.0).sqrt();
    let r2 = ((c0 + 3.0 * c1) / 2.0).sqrt();
    let a = 0.5 * (r1 + r2);
    let mixed = r1 * v_cur - a * v_prev;
    Ok(a * a * v_cur * v_cur + mixed * mixed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn hand_values() {
        assert_eq!(energy_e(0.0, 0.0, 1.0, 0.2).unwrap(), 0.0);
        assert!((energy_e(1.0, 0.0, 1.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constraint_violation() {
        assert!(energy_e(1.0, 1.0, 0.5, 1.0).is_err());
        assert!(energy_e(1.0, 1.0, 2.0, -1.0).is_err());
        // boundary of the admissible region is fine
        assert!(energy_e(1.0, 1.0, 3.0, -1.0).is_ok());
        assert!(energy_e(1.0, 1.0, 1.0, 1.0).is_ok());
    }

    #[test]
    fn three_term_inequality_random() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let c1: f64 = rng.gen_range(-2.0..2.0);
            let c0 = c1.max(-3.0 * c1) + rng.gen_range(0.0..2.0);
            let (vm, v, vp): (f64, f64, f64) =
                (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let lhs = vp * (c0 * vp - (c0 - c1) * v - c1 * vm);
            let rhs = energy_e(vp, v, c0, c1).unwrap() - energy_e(v, vm, c0, c1).unwrap();
            let scale = c0.abs().max(c1.abs()) * 25.0;
            assert!(lhs >= rhs - 1e-12 * scale, "{lhs} < {rhs}");
        }
    }
}
