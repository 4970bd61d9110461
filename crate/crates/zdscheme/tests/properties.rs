//! Property tests over randomly drawn small chained groups.

use num_complex::Complex64;
use proptest::prelude::*;
use zdscheme::ball_scheme;
use zdscheme::coding::{self, Classes, Code, Direction};
use zdscheme::dual_fourier::{self, GroupFunction};
use zdscheme::metric_scheme;
use zdscheme::oracle::WitnessMode;
use zdscheme::rational::{self, Rational};
use zdscheme::report;
use zdscheme::wavelet_lp;
use zdscheme::{Carrier, GroupSpec};

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        prop::collection::vec(2u64..=5, 1..=3).prop_map(|o| GroupSpec::vilenkin(&o)),
        (prop::sample::select(vec![2u64, 3, 5]), 1u32..=3).prop_map(|(p, d)| GroupSpec::padic(p, d)),
        (2u64..=4, 2u32..=3).prop_map(|(q, n)| GroupSpec::rt(q, n)),
    ]
}

fn carrier_and_functions(count: usize) -> impl Strategy<Value = (Carrier, Vec<Vec<Rational>>)> {
    spec_strategy().prop_flat_map(move |s| {
        let c = Carrier::build(&s).expect("strategy yields valid specs");
        let n = c.group.order();
        let f = prop::collection::vec((-20i64..=20, 1i64..=9), n)
            .prop_map(|v| v.into_iter().map(|(a, b)| rational::ratio(a, b)).collect::<Vec<_>>());
        (Just(c), prop::collection::vec(f, count))
    })
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spec_json_round_trips(s in spec_strategy()) {
        let back = GroupSpec::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn radius_is_an_ultrametric(s in spec_strategy(), seed in any::<u64>()) {
        let c = Carrier::build(&s).unwrap();
        let g = &c.group;
        let n = g.order() as u64;
        let (x, y, z) = ((seed % n) as usize, ((seed / 7) % n) as usize, ((seed / 49) % n) as usize);
        prop_assert!(g.distance(x, z) <= g.distance(x, y).max(g.distance(y, z)));
        prop_assert_eq!(g.distance(x, y), g.distance(y, x));
    }

    #[test]
    fn metric_identities_hold(s in spec_strategy()) {
        let c = Carrier::build(&s).unwrap();
        let checks = metric_scheme::identity_checks(&c);
        prop_assert!(report::all_passed(&checks), "{:?}", checks);
        let checks = ball_scheme::identity_checks(&c);
        prop_assert!(report::all_passed(&checks), "{:?}", checks);
    }

    #[test]
    fn closed_tensors_match_single_witness_counts(s in spec_strategy()) {
        let c = Carrier::build(&s).unwrap();
        let g = &c.group;
        let counted = metric_scheme::intersection_oracle(g, WitnessMode::Single).unwrap();
        prop_assert!(metric_scheme::intersection_tensor_closed(g).differences(&counted).is_empty());
        let counted = ball_scheme::intersection_oracle(g, WitnessMode::Single).unwrap();
        prop_assert!(ball_scheme::intersection_tensor_closed(g).differences(&counted).is_empty());
    }

    #[test]
    fn convolution_is_commutative_and_associative((c, fs) in carrier_and_functions(3)) {
        let g = &c.group;
        let ab = dual_fourier::convolve(g, &fs[0], &fs[1]).unwrap();
        prop_assert_eq!(&ab, &dual_fourier::convolve(g, &fs[1], &fs[0]).unwrap());
        let left = dual_fourier::convolve(g, &ab, &fs[2]).unwrap();
        let bc = dual_fourier::convolve(g, &fs[1], &fs[2]).unwrap();
        prop_assert_eq!(left, dual_fourier::convolve(g, &fs[0], &bc).unwrap());
    }

    #[test]
    fn fourier_inverse_undoes_forward((c, fs) in carrier_and_functions(1)) {
        let g = &c.group;
        let f = GroupFunction::Rational(fs[0].clone());
        let t = dual_fourier::fourier_forward(g, &c.dual, &f).unwrap();
        let back = dual_fourier::fourier_inverse(g, &c.dual, &GroupFunction::Complex(t)).unwrap();
        prop_assert!(max_dev(&back, &f.to_complex()) < 1e-9);
    }

    #[test]
    fn averages_compose_to_the_coarser_one((c, fs) in carrier_and_functions(1), r in 0usize..4, s in 0usize..4) {
        let g = &c.group;
        let d = g.depth();
        let (r, s) = (r.min(d), s.min(d));
        let inner = wavelet_lp::averaging(g, s, &fs[0]).unwrap();
        let twice = wavelet_lp::averaging(g, r, &inner).unwrap();
        prop_assert_eq!(twice, wavelet_lp::averaging(g, r.max(s), &fs[0]).unwrap());
    }

    #[test]
    fn wavelet_expansion_reconstructs((c, fs) in carrier_and_functions(1)) {
        let basis = wavelet_lp::wavelet_basis(&c).unwrap();
        let f: Vec<Complex64> = fs[0].iter().map(|v| Complex64::new(rational::to_f64(v), 0.0)).collect();
        let back = basis.reconstruct(&c, &basis.expand(&c, &f));
        prop_assert!(max_dev(&back, &f) < 1e-9);
    }

    #[test]
    fn martingale_identities_hold((c, fs) in carrier_and_functions(1)) {
        let checks = wavelet_lp::martingale_suite(&c.group, &fs[0]).unwrap();
        prop_assert!(report::all_passed(&checks), "{:?}", checks);
    }

    #[test]
    fn macwilliams_round_trips_on_generated_codes(s in spec_strategy(), gens in prop::collection::vec(any::<u32>(), 0..3)) {
        let c = Carrier::build(&s).unwrap();
        let g = &c.group;
        let gens: Vec<usize> = gens.iter().map(|&k| k as usize % g.order()).collect();
        let y = Code::generated(g, &gens);
        let dual = coding::dual_code(&c, &y);
        prop_assert_eq!(y.len() * dual.len(), g.order());
        let m = coding::weight_distribution(g, &y.members, Classes::Spheres);
        let m_hat = coding::macwilliams(&c, &m, Direction::ToDual).unwrap();
        prop_assert_eq!(&m_hat, &coding::weight_distribution(c.hat(), &dual.members, Classes::Spheres));
        prop_assert_eq!(coding::macwilliams(&c, &m_hat, Direction::FromDual).unwrap(), m);
    }

    #[test]
    fn delsarte_values_are_nonnegative(s in spec_strategy(), seed in any::<u64>()) {
        let c = Carrier::build(&s).unwrap();
        for set in coding::random_subsets(c.group.order(), 5, seed) {
            let v = coding::delsarte_check(&c, &set).unwrap();
            prop_assert!(v.iter().all(|x| x >= &rational::int(0)));
        }
    }

    #[test]
    fn perfect_codes_tile(s in spec_strategy()) {
        let c = Carrier::build(&s).unwrap();
        let g = &c.group;
        for r in 0..g.depth() {
            let rep = coding::verify_perfect(g, &coding::perfect_code(g, r).unwrap(), r).unwrap();
            prop_assert!(rep.tiles && rep.packing_equality && rep.min_distance_is_tau_plus);
        }
    }
}
