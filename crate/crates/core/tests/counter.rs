use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use powersum_core::builtin;
use powersum_core::counter::{
    certified_caps, count_certified, count_naive, d_value_expanded, line_pairs, BMContext,
    Evaluator, Limits,
};
use powersum_core::{sample, ExtDegree, Polynomial, PowerSumSystem, Term};

fn systems(seed: u64, count: usize) -> Vec<PowerSumSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let k = rng.gen_range(1..=3);
            let l = rng.gen_range(1..=3);
            if i % 2 == 0 {
                sample::cancelling_system(&mut rng, k, l, 4, 2)
            } else {
                sample::system(&mut rng, k, l, 4, 2)
            }
        })
        .collect()
}

#[test]
fn pillai_matches_closed_form_and_naive() {
    let sys = builtin::pillai23();
    for d in 0..=60 {
        let cert = count_certified(&sys, d, &Limits::default()).unwrap();
        assert_eq!(cert.a_d, (d / 2) * (d / 3) - d / 6, "d = {d}");
        let (n, m) = certified_caps(&sys, d);
        let naive = count_naive(&sys, d, n, m);
        assert!(naive.certified);
        assert_eq!(naive.a_d, cert.a_d, "d = {d}");
    }
}

#[test]
fn linear_bases_never_cancel() {
    let sys = PowerSumSystem::new(
        vec![Term::new(
            Polynomial::from_ints(&[1]),
            Polynomial::from_ints(&[1, 1]),
        )],
        vec![Term::new(
            Polynomial::from_ints(&[1]),
            Polynomial::from_ints(&[2, 1]),
        )],
        1,
    )
    .unwrap();
    let r = count_certified(&sys, 10, &Limits::default()).unwrap();
    assert_eq!(r.a_d, 100);
    assert!(r.zero_sum_pairs.is_empty());
}

#[test]
fn report_parts_add_up() {
    for sys in systems(11, 12) {
        for d in [0, 5, 17, 33] {
            let r = count_certified(&sys, d, &Limits::default()).unwrap();
            assert_eq!(
                r.a_d,
                r.rectangle_count
                    + r.small_n_strip
                    + r.small_m_strip
                    + r.line_pairs_counted.len() as u64
            );
            for (n, m, _) in &r.line_pairs_counted {
                assert!(!r.zero_sum_pairs.contains(&(*n, *m)));
            }
        }
    }
}

#[test]
fn counts_are_monotone_in_d() {
    for sys in systems(12, 10) {
        let counts: Vec<u64> = (0..=40)
            .map(|d| count_certified(&sys, d, &Limits::default()).unwrap().a_d)
            .collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
    }
}

#[test]
fn at_most_one_zero_sum_per_row() {
    for sys in systems(13, 16).into_iter().chain([builtin::pillai23()]) {
        let r = count_certified(&sys, 40, &Limits::default()).unwrap();
        let mut rows: Vec<u64> = r.zero_sum_pairs.iter().map(|(n, _)| *n).collect();
        let len = rows.len();
        rows.dedup();
        assert_eq!(rows.len(), len, "{:?}", r.zero_sum_pairs);
    }
}

#[test]
fn nothing_counts_just_beyond_the_line_cutoff() {
    // single-term systems keep the cutoff, and so the expansions, small
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let cancelling = (0..6).map(|_| sample::cancelling_system(&mut rng, 1, 1, 4, 2));
    for sys in cancelling.chain([builtin::pillai23(), builtin::cancel_pair()]) {
        let d = 20;
        let cutoff = BMContext::from_system(&sys, d).line_cutoff();
        let beyond: Vec<(u64, u64)> = line_pairs(&sys, 4 * cutoff + 40)
            .into_iter()
            .filter(|&(n, m)| n.min(m) > cutoff)
            .take(5)
            .collect();
        for (n, m) in beyond {
            let dv = d_value_expanded(&sys, n, m);
            assert!(!dv.in_range(d), "({n},{m}) has D = {dv:?}");
        }
    }
}

#[test]
fn fast_path_matches_expansion() {
    for sys in systems(15, 10)
        .into_iter()
        .chain(builtin::all().into_iter().map(|(_, s)| s))
    {
        let ev = Evaluator::new(&sys, &Limits::default());
        for n in 1..=18 {
            for m in 1..=18 {
                assert_eq!(
                    ev.d_value(n, m).unwrap(),
                    d_value_expanded(&sys, n, m),
                    "({n},{m})"
                );
            }
        }
    }
}

#[test]
fn certified_matches_naive_on_covering_grids() {
    let mut checked = 0;
    for sys in systems(16, 24) {
        for d in [3, 12, 25] {
            let (n, m) = certified_caps(&sys, d);
            if n * m > 20_000 {
                continue;
            }
            let naive = count_naive(&sys, d, n, m);
            let cert = count_certified(&sys, d, &Limits::default()).unwrap();
            assert!(naive.certified);
            assert_eq!(naive.a_d, cert.a_d);
            assert_eq!(naive.line_pairs_counted, cert.line_pairs_counted);
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} grids were small enough");
}

#[test]
fn small_grid_is_not_certified() {
    let r = count_naive(&builtin::pillai23(), 30, 3, 3);
    assert!(!r.certified);
}

#[test]
fn budget_errors_surface_from_the_counter() {
    let sys = PowerSumSystem::new(
        vec![Term::new(
            Polynomial::from_ints(&[1]),
            Polynomial::from_ints(&[1, 3, 1]),
        )],
        vec![Term::new(
            Polynomial::from_ints(&[-1]),
            Polynomial::from_ints(&[1, 3, 1]),
        )],
        1,
    )
    .unwrap();
    let tight = Limits {
        coeff_budget_bits: 16,
        ..Limits::default()
    };
    let err = count_certified(&sys, 30, &tight).unwrap_err();
    assert!(err.is_resource_cap());
    // identical sides cancel completely on the diagonal
    let r = count_certified(&sys, 30, &Limits::default()).unwrap();
    assert!(r.zero_sum_pairs.contains(&(5, 5)));
    assert_eq!(
        Evaluator::new(&sys, &Limits::default())
            .d_value(5, 5)
            .unwrap(),
        ExtDegree::NegInfinity
    );
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let sys = builtin::cancel_pair();
    let a = count_certified(&sys, 30, &Limits::default()).unwrap();
    let b = count_certified(&sys, 30, &Limits::default()).unwrap();
    let json = serde_json::to_string(&a).unwrap();
    assert_eq!(json, serde_json::to_string(&b).unwrap());
    let back: powersum_core::CountReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
}
