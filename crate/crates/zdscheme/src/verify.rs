//! Suite runner and the catalog of built-in group families.

use crate::ball_scheme::{self, schur};
use crate::coding;
use crate::dual_fourier::{self, Carrier};
use crate::error::Result;
use crate::metric_scheme;
use crate::oracle::WitnessMode;
use crate::rational;
use crate::report::{self, Check};
use crate::spec::GroupSpec;
use crate::wavelet_lp;
use serde::Serialize;

/// Settings for a verification run.
#[derive(Debug, Clone)]
pub struct Options {
    /// Tolerance for floating-point comparisons.
    pub tolerance: f64,
    /// Seed for random functions and subsets.
    pub seed: u64,
    /// Witness pairs visited by the intersection oracles.
    pub witness: WitnessMode,
    /// Random functions per wavelet and martingale suite.
    pub samples: usize,
    /// Random subsets for the Delsarte check.
    pub subsets: usize,
    /// Largest order for the Schur-ring suite.
    pub schur_limit: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            tolerance: 1e-9,
            seed: 0,
            witness: WitnessMode::All,
            samples: 4,
            subsets: 200,
            schur_limit: 64,
        }
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    /// Suite name.
    pub name: String,
    /// Individual checks.
    pub checks: Vec<Check>,
    /// All checks passed and no error occurred.
    pub passed: bool,
    /// Largest floating-point deviation in the suite.
    pub max_deviation: f64,
    /// Error that aborted the suite, if any.
    pub error: Option<String>,
    /// Reason the suite was skipped, if it was.
    pub skipped: Option<String>,
}

impl SuiteReport {
    fn from(name: &str, r: Result<Vec<Check>>) -> SuiteReport {
        match r {
            Ok(checks) => SuiteReport {
                name: name.into(),
                passed: report::all_passed(&checks),
                max_deviation: report::max_deviation(&checks),
                checks,
                error: None,
                skipped: None,
            },
            Err(e) => SuiteReport {
                name: name.into(),
                checks: vec![],
                passed: false,
                max_deviation: 0.0,
                error: Some(e.to_string()),
                skipped: None,
            },
        }
    }

    fn skipped(name: &str, why: impl Into<String>) -> SuiteReport {
        SuiteReport {
            name: name.into(),
            checks: vec![],
            passed: true,
            max_deviation: 0.0,
            error: None,
            skipped: Some(why.into()),
        }
    }
}

/// Outcome of every suite for one group.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Group label.
    pub group: String,
    /// Group order.
    pub order: usize,
    /// Chain depth.
    pub depth: usize,
    /// Per-suite outcomes.
    pub suites: Vec<SuiteReport>,
    /// Every suite passed.
    pub passed: bool,
    /// Largest deviation over all suites.
    pub max_deviation: f64,
}

/// Chain, measure and duality checks of the carrier itself.
pub fn group_checks(c: &Carrier) -> Result<Vec<Check>> {
    let g = &c.group;
    let h = c.hat();
    let d = g.depth();
    let mut f = Vec::new();
    for r in 0..=d {
        let ball = g.ball(r);
        let mut ann = c.dual.annihilator(g, ball);
        ann.sort_unstable();
        let mut hb = h.ball(d - r).to_vec();
        hb.sort_unstable();
        if ann != hb {
            f.push(format!("B({r})^perp"));
        }
        if !(g.mu_ball(r) * h.mu_ball(d - r) == rational::int(1)) {
            f.push(format!("mu(B({r})) mu(B^({}))", d - r));
        }
        if !g.is_subgroup(ball) {
            f.push(format!("B({r}) is not a subgroup"));
        }
        let u = dual_fourier::uncertainty_product(
            g,
            &c.dual,
            &dual_fourier::GroupFunction::Rational(dual_fourier::indicator(g.order(), ball)),
            1e-7,
        )?;
        if u != rational::int(1) {
            f.push(format!("uncertainty of B({r})"));
        }
    }
    for x in 0..g.order() {
        if g.distance(x, 0) != g.radius(x) || g.radius(g.neg(x)) != g.radius(x) {
            f.push(format!("radius of {x}"));
            break;
        }
    }
    Ok(vec![Check::from_failures("group.chain_duality", &f, 4 * (d + 1))])
}

/// Runs every suite on one carrier.
pub fn run(c: &Carrier, o: &Options) -> Report {
    let g = &c.group;
    let mut suites = vec![
        SuiteReport::from("group", group_checks(c)),
        SuiteReport::from("metric", metric_scheme::verify(c, o.witness)),
        SuiteReport::from("ball", ball_scheme::verify(c, o.witness)),
    ];
    suites.push(if g.is_windowed() {
        SuiteReport::skipped("schur", "windowed chain")
    } else if g.order() > o.schur_limit {
        SuiteReport::skipped("schur", format!("order above {}", o.schur_limit))
    } else {
        SuiteReport::from("schur", schur::verify(c))
    });
    suites.push(SuiteReport::from(
        "wavelet",
        wavelet_lp::verify(c, o.tolerance, o.seed, o.samples),
    ));
    suites.push(SuiteReport::from(
        "coding",
        coding::verify(c, o.tolerance, o.seed, o.subsets),
    ));
    let passed = suites.iter().all(|s| s.passed);
    let max_deviation = suites.iter().map(|s| s.max_deviation).fold(0.0, f64::max);
    Report {
        group: g.label(),
        order: g.order(),
        depth: g.depth(),
        suites,
        passed,
        max_deviation,
    }
}

/// Built-in families, every one of order at most 256.
pub fn catalog() -> Vec<GroupSpec> {
    let mut v = Vec::new();
    for orders in [
        &[2, 2][..],
        &[2, 3, 2],
        &[3, 3],
        &[4, 2],
        &[2, 4],
        &[2, 2, 2],
        &[3, 2, 2],
        &[5, 3],
        &[6, 2],
        &[2, 2, 2, 2],
        &[4, 4, 4],
        &[2, 3, 4, 2],
        &[2, 2, 2, 2, 2, 2, 2, 2],
    ] {
        v.push(GroupSpec::vilenkin(orders));
    }
    for (p, max) in [(2u64, 8u32), (3, 5), (5, 3), (7, 2), (11, 2), (13, 2)] {
        for d in 1..=max {
            v.push(GroupSpec::padic(p, d));
        }
    }
    for (q, max) in [(2u64, 8u32), (3, 5), (4, 4), (5, 3), (16, 2)] {
        for n in 2..=max {
            v.push(GroupSpec::rt(q, n));
        }
    }
    v.push(GroupSpec::custom(
        &[4, 2],
        vec![vec![vec![2, 0], vec![0, 1]], vec![vec![0, 1]]],
    ));
    v.push(GroupSpec::custom(&[4, 2], vec![vec![vec![1, 1]], vec![vec![2, 0]]]));
    v.push(GroupSpec::selfdual(GroupSpec::padic(2, 2)));
    v.push(GroupSpec::selfdual(GroupSpec::padic(3, 2)));
    v.push(GroupSpec::selfdual(GroupSpec::vilenkin(&[2, 2, 2])));
    v.push(GroupSpec::windowed(GroupSpec::padic(2, 4), 2));
    v.push(GroupSpec::windowed(GroupSpec::rt(3, 2), 1));
    v.push(GroupSpec::windowed(GroupSpec::vilenkin(&[2, 3, 2]), 1));
    v.push(GroupSpec::padic(3, 3).counting());
    v.push(GroupSpec::vilenkin(&[2, 2, 2]).counting());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_build_and_are_small() {
        for s in catalog() {
            let c = Carrier::build(&s).unwrap();
            assert!(c.group.order() <= 256, "{}", s.label());
        }
    }

    #[test]
    fn z2_squared_passes_everything() {
        let c = Carrier::build(&GroupSpec::vilenkin(&[2, 2])).unwrap();
        let r = run(&c, &Options::default());
        assert!(r.passed, "{r:#?}");
    }
}
