//! Self-checks run by `powersum verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use powersum_core::builtin;
use powersum_core::counter::{
    certified_caps, count_certified, count_naive, d_value_expanded, BMContext, Evaluator, Limits,
};
use powersum_core::function_field::{
    height_capped, height_fast, sum_formula_check, verify_bm, Height, RationalFunction, SUnitSet,
};
use powersum_core::{sample, ExtDegree, Polynomial};

#[derive(Debug, Default, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
    /// First few failing cases, for diagnosis.
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < 5 {
                self.failures.push(label());
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub passed: u64,
    pub failed: u64,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub fn run_all(seed: u64, limits: &Limits) -> Summary {
    let suites = vec![
        examples(limits),
        height_properties(seed, limits),
        sum_formula(seed, limits),
        oracle(limits),
        fast_path(limits),
    ];
    Summary {
        seed,
        passed: suites.iter().map(|s| s.passed).sum(),
        failed: suites.iter().map(|s| s.failed).sum(),
        suites,
    }
}

fn examples(limits: &Limits) -> SuiteResult {
    let mut r = SuiteResult::new("examples");
    let pillai = builtin::pillai23();
    let a = count_certified(&pillai, 240, limits).map(|c| c.a_d).ok();
    r.check(a == Some(9560), || format!("pillai a_240 = {a:?}"));
    let a = count_certified(&builtin::cancel_pair(), 20, limits)
        .map(|c| c.a_d)
        .ok();
    r.check(a == Some(101), || format!("cancel pair a_20 = {a:?}"));
    let dv = Evaluator::new(&pillai, limits).d_value(3, 2).ok();
    r.check(dv == Some(ExtDegree::NegInfinity), || {
        format!("D(3,2) = {dv:?}")
    });
    let ctx = BMContext::from_system(&pillai, 10);
    r.check(ctx.c_bm() == 16 && ctx.s_size_bound() == 16, || {
        format!(
            "c_bm = {}, s_size_bound = {}",
            ctx.c_bm(),
            ctx.s_size_bound()
        )
    });
    let x = RationalFunction::from_polynomial(Polynomial::from_ints(&[0, 1]));
    let y = RationalFunction::from_polynomial(Polynomial::from_ints(&[-1, -1]));
    let s = powersum_core::function_field::s_unit_set_for(&[x.clone(), y.clone()]);
    let ok = s
        .and_then(|s: SUnitSet| verify_bm(&[x, y], &s, 0))
        .map(|b| b.passes() && b.bound == 3)
        .unwrap_or(false);
    r.check(ok, || "unit equation 1 + x - x - 1".into());
    r
}

fn random_functions(seed: u64, count: usize) -> Vec<RationalFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| sample::rational_function(&mut rng, 8, 2))
        .collect()
}

fn h(f: &RationalFunction) -> i64 {
    height_fast(f).finite().expect("nonzero") as i64
}

fn height_properties(seed: u64, limits: &Limits) -> SuiteResult {
    let mut r = SuiteResult::new("height_properties");
    let fs = random_functions(seed, 300);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    for (i, f) in fs.iter().enumerate() {
        let g = &fs[(i + 1) % fs.len()];
        let hf = h(f);
        let full = height_capped(f, limits.factor_degree_cap).ok();
        r.check(full == Some(Height::Finite(hf as u64)), || {
            format!("#{i}: height {full:?} vs {hf}")
        });
        r.check(h(&f.inv().expect("nonzero")) == hf, || {
            format!("#{i}: H(1/f)")
        });
        let hg = h(g);
        let sum = f.add(g);
        if !sum.is_zero() {
            let hs = h(&sum);
            r.check((hf - hg).abs() <= hs && hs <= hf + hg, || {
                format!("#{i}: H(f+g)")
            });
        }
        let hp = h(&f.mul(g));
        r.check((hf - hg).abs() <= hp && hp <= hf + hg, || {
            format!("#{i}: H(fg)")
        });
        let n: i64 = rng.gen_range(1..=12);
        r.check(h(&f.pow(n).expect("nonzero")) == n * hf, || {
            format!("#{i}: H(f^{n})")
        });
        r.check((hf == 0) == f.is_constant(), || {
            format!("#{i}: zero height")
        });
        let deg = rng.gen_range(1..=4);
        let a = sample::polynomial(&mut rng, deg, 2);
        let composed = f.compose_into(&a);
        if !composed.is_zero() {
            r.check(h(&composed) == deg as i64 * hf, || format!("#{i}: H(A(f))"));
        }
    }
    r
}

fn sum_formula(seed: u64, limits: &Limits) -> SuiteResult {
    let mut r = SuiteResult::new("sum_formula");
    for (i, f) in random_functions(seed.wrapping_add(1), 200)
        .iter()
        .enumerate()
    {
        let ok = f.num().degree().finite().unwrap_or(0) as usize <= limits.factor_degree_cap
            && sum_formula_check(f).ok() == Some(0);
        r.check(ok, || format!("#{i}: {f}"));
    }
    r
}

fn oracle(limits: &Limits) -> SuiteResult {
    let mut r = SuiteResult::new("oracle_equivalence");
    for (name, sys) in builtin::all() {
        for d in (0..=40).step_by(5) {
            let (n, m) = certified_caps(&sys, d);
            let naive = count_naive(&sys, d, n, m);
            let cert = count_certified(&sys, d, limits).map(|c| c.a_d).ok();
            r.check(naive.certified && cert == Some(naive.a_d), || {
                format!("{name} d={d}: certified {cert:?}, naive {}", naive.a_d)
            });
        }
    }
    r
}

fn fast_path(limits: &Limits) -> SuiteResult {
    let mut r = SuiteResult::new("fast_path");
    for (name, sys) in builtin::all() {
        let ev = Evaluator::new(&sys, limits);
        for n in 1..=15 {
            for m in 1..=15 {
                let fast = ev.d_value(n, m).ok();
                let slow = d_value_expanded(&sys, n, m);
                r.check(fast == Some(slow), || format!("{name} ({n},{m})"));
            }
        }
    }
    r
}
