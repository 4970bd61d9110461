//! Acceptance criteria, one printed line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! process exits nonzero if any asserted criterion fails.

use num_traits::Zero;
use rand::SeedableRng;
use std::time::{Duration, Instant};
use zdscheme::ball_scheme::{self, schur};
use zdscheme::coding;
use zdscheme::metric_scheme;
use zdscheme::oracle::WitnessMode;
use zdscheme::par;
use zdscheme::rational::{self, Rational};
use zdscheme::report::{self, Check};
use zdscheme::verify::catalog;
use zdscheme::wavelet_lp;
use zdscheme::{Carrier, GroupSpec};

const TOL: f64 = 1e-9;

struct Outcome {
    passed: bool,
    detail: String,
    /// Counted against the process exit status.
    asserted: bool,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            passed,
            detail: detail.into(),
            asserted: true,
        }
    }
}

fn budget(o: Outcome, elapsed: Duration, limit: Option<Duration>) -> Outcome {
    match limit {
        Some(l) if elapsed > l => Outcome {
            passed: false,
            detail: format!("{}; over the {:.0?} budget", o.detail, l),
            ..o
        },
        _ => o,
    }
}

fn catalog_carriers() -> Vec<Carrier> {
    catalog().iter().map(|s| Carrier::build(s).expect("catalog group builds")).collect()
}

fn failed_names(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect()
}

fn pow(q: u64, e: usize) -> Rational {
    rational::uint(q.pow(e as u32))
}

/// Eigenvalue `p_i(j)` of the `Z_q^n` example under counting measure.
fn example_p(q: u64, n: usize, i: usize, j: usize) -> Rational {
    if i == 0 {
        rational::int(1)
    } else if i + j <= n {
        pow(q, i) - pow(q, i - 1)
    } else if i + j == n + 1 {
        -pow(q, i - 1)
    } else {
        Rational::zero()
    }
}

/// Intersection number `p_{ij}^k` of the `Z_q^n` example under counting
/// measure.
fn example_intersection(q: u64, i: usize, j: usize, k: usize) -> Rational {
    let sphere = |r: usize| {
        if r == 0 {
            rational::int(1)
        } else {
            pow(q, r) - pow(q, r - 1)
        }
    };
    let m = i.max(j).max(k);
    let at_max = [i, j, k].iter().filter(|&&r| r == m).count();
    match (m, at_max) {
        (0, _) => rational::int(1),
        (_, 1) => Rational::zero(),
        (_, 2) if k < m => sphere(m),
        (_, 2) => sphere(i.min(j)),
        _ => rational::uint(q - 2) * pow(q, m - 1),
    }
}

fn criterion_1() -> Outcome {
    let mut fails = Vec::new();
    let mut cases = 0;
    for (q, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let c = Carrier::build(&GroupSpec::rt(q, n).counting()).expect("builds");
        let g = &c.group;
        let n = n as usize;
        let p = metric_scheme::p_closed(&c);
        let po = metric_scheme::p_oracle(&c).expect("oracle");
        for i in 0..=n {
            for j in 0..=n {
                cases += 1;
                let want = example_p(q, n, i, j);
                if p[i][j] != want || po[i][j] != want {
                    fails.push(format!("Z_{q}^{n} p_{i}({j})"));
                }
            }
        }
        let oracle = metric_scheme::intersection_oracle(g, WitnessMode::All).expect("oracle");
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    cases += 1;
                    let want = example_intersection(q, i, j, k);
                    if metric_scheme::intersection_closed(g, i, j, k) != want || *oracle.get(i, j, k) != want {
                        fails.push(format!("Z_{q}^{n} p_({i},{j})^{k}"));
                    }
                }
            }
        }
    }
    Outcome::new(fails.is_empty(), format!("{cases} entries, {} mismatches {:?}", fails.len(), fails.first()))
}

fn criterion_2(carriers: &[Carrier]) -> Outcome {
    let mut fails = Vec::new();
    let mut triples = 0usize;
    for c in carriers {
        let g = &c.group;
        let closed = metric_scheme::intersection_tensor_closed(g);
        let counted = metric_scheme::intersection_oracle(g, WitnessMode::All).expect("metric oracle");
        triples += closed.classes().pow(3);
        if !closed.differences(&counted).is_empty() {
            fails.push(format!("{} spheres", g.label()));
        }
        let closed = ball_scheme::intersection_tensor_closed(g);
        let counted = ball_scheme::intersection_oracle(g, WitnessMode::All).expect("block oracle");
        triples += closed.classes().pow(3);
        if !closed.differences(&counted).is_empty() {
            fails.push(format!("{} blocks", g.label()));
        }
    }
    Outcome::new(
        fails.is_empty(),
        format!("{} groups, {triples} label triples, all witness pairs; failures {fails:?}", carriers.len()),
    )
}

fn criterion_3(carriers: &[Carrier]) -> Outcome {
    let mut fails = Vec::new();
    let mut checks = 0;
    for c in carriers {
        let mut cs = metric_scheme::identity_checks(c);
        cs.extend(ball_scheme::identity_checks(c));
        if metric_scheme::p_oracle(c).expect("oracle") != metric_scheme::p_closed(c) {
            fails.push(format!("{}: P oracle", c.group.label()));
        }
        if metric_scheme::q_oracle(c).expect("oracle") != metric_scheme::q_closed(c) {
            fails.push(format!("{}: Q oracle", c.group.label()));
        }
        checks += cs.len() + 2;
        fails.extend(failed_names(&cs).into_iter().map(|f| format!("{}: {f}", c.group.label())));
    }
    Outcome::new(fails.is_empty(), format!("{checks} checks over {} groups; failures {fails:?}", carriers.len()))
}

fn criterion_4() -> Outcome {
    let mut fails = Vec::new();
    let mut detail = Vec::new();
    for s in [GroupSpec::vilenkin(&[2, 2, 2]), GroupSpec::vilenkin(&[4, 2]), GroupSpec::padic(3, 2)] {
        let c = Carrier::build(&s).expect("builds");
        let ring = schur::SchurRing::new(&c).expect("compact chain");
        if !ring.triangular() {
            fails.push(format!("{}: triangularity", s.label()));
        }
        let cs = schur::verify(&c).expect("schur suite");
        fails.extend(failed_names(&cs).into_iter().map(|f| format!("{}: {f}", s.label())));
        detail.push(format!("{} dim {}", s.label(), ring.dim()));
    }
    Outcome::new(fails.is_empty(), format!("{}; failures {fails:?}", detail.join(", ")))
}

fn criterion_5(carriers: &[Carrier]) -> Outcome {
    let mut fails = Vec::new();
    let mut dev: f64 = 0.0;
    let mut count = 0;
    for c in carriers {
        let basis = wavelet_lp::wavelet_basis(c).expect("basis");
        let mut cs = vec![wavelet_lp::gram_check(c, &basis, TOL)];
        cs.extend(wavelet_lp::projector_checks(c, TOL).expect("projectors"));
        cs.extend(wavelet_lp::kernel_eigenvalue_check(c, &basis, TOL).expect("kernels"));
        cs.extend(wavelet_lp::transform_checks(c, &basis, TOL).expect("transforms"));
        dev = dev.max(report::max_deviation(&cs));
        count += 1;
        fails.extend(failed_names(&cs).into_iter().map(|f| format!("{}: {f}", c.group.label())));
    }
    Outcome::new(fails.is_empty(), format!("{count} groups, max deviation {dev:.2e}; failures {fails:?}"))
}

fn criterion_6(carriers: &[Carrier]) -> Outcome {
    let mut fails = Vec::new();
    let mut groups = 0;
    for c in carriers {
        let g = &c.group;
        if g.is_windowed() || g.mu_total() != rational::int(1) {
            continue;
        }
        groups += 1;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let fs: Vec<Vec<Rational>> =
            (0..100).map(|_| wavelet_lp::random_rational_function(g.order(), &mut rng)).collect();
        let results = par::map_slice(&fs, |f| wavelet_lp::martingale_suite(g, f).expect("probability space"));
        for cs in results {
            fails.extend(failed_names(&cs).into_iter().map(|e| format!("{}: {e}", g.label())));
        }
    }
    Outcome::new(
        fails.is_empty(),
        format!("{groups} compact probability groups x 100 functions; failures {}", fails.len()),
    )
}

fn criterion_7(carriers: &[Carrier]) -> Outcome {
    let mut fails = Vec::new();
    let mut groups = 0;
    for c in carriers.iter().filter(|c| c.group.order() <= 64) {
        groups += 1;
        let cs = coding::verify(c, TOL, 7, 1000).expect("coding suite");
        let relevant: Vec<Check> = cs
            .into_iter()
            .filter(|k| k.name == "coding.macwilliams" || k.name == "coding.delsarte")
            .collect();
        if relevant.len() != 2 {
            fails.push(format!("{}: missing checks", c.group.label()));
        }
        fails.extend(failed_names(&relevant).into_iter().map(|f| format!("{}: {f}", c.group.label())));
    }
    Outcome::new(
        fails.is_empty(),
        format!("{groups} groups, every subgroup, 1000 Delsarte subsets each; failures {fails:?}"),
    )
}

/// Tiling, packing equality and equidistance of the quotient-representative
/// code at every radius. Equidistance only holds at `r = d − 1`, so that
/// clause is reported but not asserted; the assertion instead pins down
/// exactly where it holds.
fn criterion_8(carriers: &[Carrier]) -> Outcome {
    let mut structural = Vec::new();
    let mut non_equidistant = 0;
    let mut codes = 0;
    for c in carriers {
        let g = &c.group;
        let d = g.depth();
        for r in 0..d {
            codes += 1;
            let code = coding::perfect_code(g, r).expect("r < d");
            let rep = coding::verify_perfect(g, &code, r).expect("report");
            if !(rep.tiles && rep.packing_equality && rep.min_distance_is_tau_plus) {
                structural.push(format!("{} r={r}", g.label()));
            }
            if !rep.equidistant {
                non_equidistant += 1;
            }
            if rep.equidistant != (r + 1 == d) {
                structural.push(format!("{} r={r}: equidistance outside r = d-1", g.label()));
            }
        }
    }
    let holds = structural.is_empty();
    Outcome {
        passed: holds && non_equidistant == 0,
        asserted: !holds,
        detail: format!(
            "{codes} codes tile with |C|mu(B(r)) = mu(X): {}; equidistant only at r = d-1, \
             {non_equidistant} codes with r < d-1 have distances r+1..d",
            if holds { "yes" } else { "NO" }
        ),
    }
}

type Criterion<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    // libtest flags such as --nocapture or a name filter are accepted and ignored.
    let carriers = catalog_carriers();
    let criteria: Vec<Criterion> = vec![
        ("Z_q^n tables and intersection numbers", Some(Duration::from_secs(1)), Box::new(criterion_1)),
        ("closed intersection tensors equal witness counts", Some(Duration::from_secs(60)), Box::new(|| criterion_2(&carriers))),
        ("spectral identities", None, Box::new(|| criterion_3(&carriers))),
        ("Schur-ring closure on Z_2^3, Z_4 x Z_2, Z_9", None, Box::new(criterion_4)),
        ("wavelet Gram, projectors, kernels, uncertainty", Some(Duration::from_secs(30)), Box::new(|| criterion_5(&carriers))),
        ("martingale identities", None, Box::new(|| criterion_6(&carriers))),
        ("MacWilliams and Delsarte", None, Box::new(|| criterion_7(&carriers))),
        ("perfect codes", None, Box::new(|| criterion_8(&carriers))),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let elapsed = t.elapsed();
        let o = budget(o, elapsed, *limit);
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("acceptance {} [{tag}] {name} ({elapsed:.2?}): {}", k + 1, o.detail);
        if !o.passed && o.asserted {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} asserted acceptance criteria failed");
        std::process::exit(1);
    }
}
