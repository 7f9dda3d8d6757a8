use super::{measure_errors, ConvergenceTable, ErrorReport};
use crate::error::{Error, Result};
use crate::kernel::AlphaParam;
use crate::parallel::Execution;
use crate::problem::{build_grid, manufactured_case, Variant};
use crate::solver::{solve_with, SchemeKind};

/// Spatial intervals for the fixed-h order-2 time ladder.
const TABLE2_SPACE_INTERVALS: usize = 50_000;
/// Spatial intervals for the fixed-h compact time ladder.
const TABLE4_SPACE_INTERVALS: usize = 1000;

/// Time intervals M of the published ladders.
const COUPLED_ORDER2_STEPS: [usize; 5] = [10, 20, 40, 80, 160];
const COUPLED_COMPACT_STEPS: [usize; 5] = [40, 80, 160, 320, 640];
const FIXED_ORDER2_STEPS: [usize; 4] = [10, 20, 40, 80];
const FIXED_COMPACT_STEPS: [usize; 5] = [10, 20, 40, 80, 160];

/// Published spatial intervals N for the coupled ladders, per α.
const TABLE1_INTERVALS: [(f64, [usize; 5]); 3] = [
    (0.1, [29, 78, 211, 575, 1571]),
    (0.5, [18, 43, 101, 240, 570]),
    (0.9, [12, 24, 49, 100, 207]),
];
const TABLE3_INTERVALS: [(f64, [usize; 5]); 3] = [
    (0.1, [29, 47, 79, 131, 217]),
    (0.5, [21, 31, 47, 73, 113]),
    (0.9, [13, 19, 29, 41, 59]),
];

/// How N follows from τ along a ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    /// τ^{3-α} = h², balancing the order-2 scheme.
    Order2,
    /// τ^{3-α} = (2h)⁴, balancing the compact scheme.
    Compact,
    /// h held fixed at length / N.
    FixedSpace(usize),
}

impl Coupling {
    /// N = ceil(length / h(τ)), with h solved from the coupling.
    pub fn intervals(self, alpha: f64, tau: f64, length: f64) -> usize {
        let h = match self {
            Coupling::FixedSpace(n) => return n,
            Coupling::Order2 => tau.powf((3.0 - alpha) / 2.0),
            Coupling::Compact => 0.5 * tau.powf((3.0 - alpha) / 4.0),
        };
        let raw = length / h;
        let n = if (raw - raw.round()).abs() < 1e-9 * raw { raw.round() } else { raw.ceil() };
        (n as usize).max(2)
    }
}

/// One ladder rung: N spatial and M time intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rung {
    pub n: usize,
    pub m: usize,
}

/// The four published experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PublishedTable {
    /// Order-2 scheme, τ and h refined together.
    One,
    /// Order-2 scheme, τ refined at fixed small h.
    Two,
    /// Compact scheme, τ and h refined together.
    Three,
    /// Compact scheme, τ refined at fixed h.
    Four,
}

impl PublishedTable {
    pub fn from_number(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            4 => Ok(Self::Four),
            _ => Err(Error::InvalidArgument(format!("no table {n}; expected 1, 2, 3 or 4"))),
        }
    }

    pub fn number(self) -> u32 {
        match self {
            Self::One => 1,
            Self::Two => 2,
            Self::Three => 3,
            Self::Four => 4,
        }
    }

    pub fn scheme(self) -> SchemeKind {
        match self {
            Self::One | Self::Two => SchemeKind::Order2,
            Self::Three | Self::Four => SchemeKind::Compact4,
        }
    }

    pub fn variant(self) -> Variant {
        match self.scheme() {
            SchemeKind::Order2 => Variant::VariableXt,
            SchemeKind::Compact4 => Variant::TimeOnly,
        }
    }

    pub fn default_alphas(self) -> [f64; 3] {
        match self {
            Self::One | Self::Three => [0.1, 0.5, 0.9],
            Self::Two | Self::Four => [0.3, 0.5, 0.7],
        }
    }

    pub fn coupling(self) -> Coupling {
        match self {
            Self::One => Coupling::Order2,
            Self::Three => Coupling::Compact,
            Self::Two => Coupling::FixedSpace(TABLE2_SPACE_INTERVALS),
            Self::Four => Coupling::FixedSpace(TABLE4_SPACE_INTERVALS),
        }
    }

    fn base_steps(self) -> &'static [usize] {
        match self {
            Self::One => &COUPLED_ORDER2_STEPS,
            Self::Two => &FIXED_ORDER2_STEPS,
            Self::Three => &COUPLED_COMPACT_STEPS,
            Self::Four => &FIXED_COMPACT_STEPS,
        }
    }

    /// Number of rungs in the published ladder.
    pub fn published_depth(self) -> usize {
        self.base_steps().len()
    }

    /// The ladder for `alpha` with `depth` rungs. Published (τ, h) pairs are
    /// used where they exist; further rungs keep halving τ and take N from
    /// the coupling rule.
    pub fn ladder(self, alpha: f64, depth: usize) -> Vec<Rung> {
        let published = match self {
            Self::One => lookup(&TABLE1_INTERVALS, alpha),
            Self::Three => lookup(&TABLE3_INTERVALS, alpha),
            Self::Two | Self::Four => None,
        };
        let steps = self.base_steps();
        (0..depth)
            .map(|r| {
                let m = steps.get(r).copied().unwrap_or_else(|| steps[steps.len() - 1] << (r + 1 - steps.len()));
                let n = match published {
                    Some(ns) if r < ns.len() => ns[r],
                    _ => self.coupling().intervals(alpha, 1.0 / m as f64, 1.0),
                };
                Rung { n, m }
            })
            .collect()
    }
}

fn lookup(table: &[(f64, [usize; 5])], alpha: f64) -> Option<&[usize; 5]> {
    table.iter().find(|(a, _)| (a - alpha).abs() < 1e-12).map(|(_, ns)| ns)
}

/// A convergence experiment on the manufactured test problem over
/// (0, 1) × (0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub scheme: SchemeKind,
    pub variant: Variant,
    pub alpha: AlphaParam,
    pub rungs: Vec<Rung>,
}

impl ExperimentSpec {
    pub fn published(table: PublishedTable, alpha: f64, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidArgument("ladder depth must be at least 1".into()));
        }
        Ok(Self {
            scheme: table.scheme(),
            variant: table.variant(),
            alpha: AlphaParam::new(alpha)?,
            rungs: table.ladder(alpha, depth),
        })
    }
}

/// Solves the test problem once and measures the errors.
pub fn run_single(
    scheme: SchemeKind,
    variant: Variant,
    alpha: AlphaParam,
    rung: Rung,
    exec: Execution,
) -> Result<ErrorReport> {
    let case = manufactured_case(alpha, variant);
    let grid = build_grid(rung.n, rung.m, case.problem.length, case.problem.horizon)?;
    let history = solve_with(&case.problem, &grid, alpha, scheme, exec)?;
    Ok(measure_errors(&history, &case))
}

/// Runs every rung (concurrently under `exec`) and tabulates errors and
/// orders in rung order.
pub fn run_experiment(spec: &ExperimentSpec, exec: Execution) -> Result<ConvergenceTable> {
    if spec.rungs.is_empty() {
        return Err(Error::InvalidArgument("experiment has no rungs".into()));
    }
    let reports = exec.map(spec.rungs.clone(), |rung| {
        run_single(spec.scheme, spec.variant, spec.alpha, rung, exec)
    });
    let reports = reports.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable::from_reports(spec.alpha.value(), &reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(table: PublishedTable, alpha: f64, depth: usize) -> Vec<(usize, usize)> {
        table.ladder(alpha, depth).iter().map(|r| (r.m, r.n)).collect()
    }

    #[test]
    fn published_ladders() {
        assert_eq!(
            pairs(PublishedTable::One, 0.5, 5),
            vec![(10, 18), (20, 43), (40, 101), (80, 240), (160, 570)]
        );
        let t3 = pairs(PublishedTable::Three, 0.9, 5);
        assert_eq!(t3[0], (40, 13));
        assert_eq!(t3[4], (640, 59));
        assert_eq!(pairs(PublishedTable::Two, 0.3, 4), vec![(10, 50_000), (20, 50_000), (40, 50_000), (80, 50_000)]);
        assert_eq!(pairs(PublishedTable::Four, 0.7, 5)[4], (160, 1000));
    }

    #[test]
    fn coupling_rule_matches_most_published_pairs() {
        // the rule reproduces every Table 1 pair for α = 0.5
        for (k, &m) in COUPLED_ORDER2_STEPS.iter().enumerate() {
            assert_eq!(Coupling::Order2.intervals(0.5, 1.0 / m as f64, 1.0), TABLE1_INTERVALS[1].1[k]);
        }
        assert_eq!(Coupling::Compact.intervals(0.5, 1.0 / 40.0, 1.0), 21);
        assert_eq!(Coupling::FixedSpace(77).intervals(0.5, 0.1, 1.0), 77);
    }

    #[test]
    fn ladders_extend_past_the_published_depth() {
        let l = PublishedTable::One.ladder(0.5, 6);
        assert_eq!(l[5].m, 320);
        assert_eq!(l[5].n, Coupling::Order2.intervals(0.5, 1.0 / 320.0, 1.0));
        assert_eq!(PublishedTable::Two.ladder(0.5, 6)[5], Rung { n: 50_000, m: 320 });
        // α outside the published set uses the rule throughout
        let l = PublishedTable::Three.ladder(0.25, 2);
        assert_eq!(l[0].n, Coupling::Compact.intervals(0.25, 1.0 / 40.0, 1.0));
    }

    #[test]
    fn table_numbers() {
        for n in 1..=4 {
            assert_eq!(PublishedTable::from_number(n).unwrap().number(), n);
        }
        assert!(PublishedTable::from_number(5).is_err());
        assert_eq!(PublishedTable::Four.scheme(), SchemeKind::Compact4);
        assert_eq!(PublishedTable::Two.variant(), Variant::VariableXt);
    }

    #[test]
    fn single_rung_experiment_has_no_orders() {
        let mut spec = ExperimentSpec::published(PublishedTable::One, 0.5, 1).unwrap();
        spec.rungs = vec![Rung { n: 8, m: 4 }];
        let t = run_experiment(&spec, Execution::Sequential).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!(t.rows[0].co_l2.is_none() && t.rows[0].err_l2 > 0.0);
        assert!(ExperimentSpec::published(PublishedTable::One, 0.5, 0).is_err());
        assert!(ExperimentSpec::published(PublishedTable::One, 1.5, 2).is_err());
    }

    #[test]
    fn experiment_is_independent_of_execution() {
        let spec = ExperimentSpec::published(PublishedTable::One, 0.9, 3).unwrap();
        let a = run_experiment(&spec, Execution::Sequential).unwrap();
        let b = run_experiment(&spec, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
