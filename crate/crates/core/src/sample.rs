//! Seeded random inputs for property checks and the `verify` suites.

use rand::Rng;

use crate::function_field::RationalFunction;
use crate::poly::{int, Polynomial};
use crate::power_sum::{PowerSumSystem, Term};

/// Coefficients in `-c..=c`, exact degree `deg` (leading coefficient nonzero).
pub fn polynomial<R: Rng>(rng: &mut R, deg: usize, c: i64) -> Polynomial {
    let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-c..=c)).collect();
    let mut lead = 0;
    while lead == 0 {
        lead = rng.gen_range(-c..=c);
    }
    coeffs.push(lead);
    Polynomial::from_ints(&coeffs)
}

/// Nonzero rational function with numerator and denominator degree at most `max_deg`.
pub fn rational_function<R: Rng>(rng: &mut R, max_deg: usize, c: i64) -> RationalFunction {
    let num_deg = rng.gen_range(0..=max_deg);
    let den_deg = rng.gen_range(0..=max_deg);
    RationalFunction::new(polynomial(rng, num_deg, c), polynomial(rng, den_deg, c))
        .expect("nonzero denominator")
}

fn side<R: Rng>(rng: &mut R, terms: usize, max_deg: usize, c: i64) -> Vec<Term> {
    // strictly decreasing base degrees, dominant first
    let mut degs: Vec<usize> = (1..=max_deg).collect();
    let mut out = Vec::with_capacity(terms);
    let top = rng.gen_range(terms..=max_deg);
    degs.retain(|&d| d < top);
    let mut chosen = vec![top];
    while chosen.len() < terms {
        let i = rng.gen_range(0..degs.len());
        chosen.push(degs.remove(i));
    }
    chosen[1..].sort_unstable_by(|a, b| b.cmp(a));
    for d in chosen {
        let coeff_deg = rng.gen_range(0..=max_deg.min(2));
        out.push(Term::new(
            polynomial(rng, coeff_deg, c),
            polynomial(rng, d, c),
        ));
    }
    out
}

/// Random valid system with `k`, `l` terms, base degrees at most `max_deg`.
pub fn system<R: Rng>(rng: &mut R, k: usize, l: usize, max_deg: usize, c: i64) -> PowerSumSystem {
    assert!(k >= 1 && l >= 1 && k <= max_deg && l <= max_deg);
    PowerSumSystem::new(side(rng, k, max_deg, c), side(rng, l, max_deg, c), 1)
        .expect("sampled system is valid")
}

/// Random system with monic dominant bases and `b₁ = −a₁`, so the leading
/// terms cancel on the whole degenerate line.
pub fn cancelling_system<R: Rng>(
    rng: &mut R,
    k: usize,
    l: usize,
    max_deg: usize,
    c: i64,
) -> PowerSumSystem {
    let mut left = side(rng, k, max_deg, c);
    let mut right = side(rng, l, max_deg, c);
    // leading coefficient set to 1, so all coefficients stay in -c..=c
    let monic = |t: &mut Term| {
        let mut coeffs = t.base.coeffs().to_vec();
        *coeffs.last_mut().expect("nonconstant") = int(1);
        t.base = Polynomial::new(coeffs);
    };
    monic(&mut left[0]);
    monic(&mut right[0]);
    right[0].coeff = -&left[0].coeff;
    PowerSumSystem::new(left, right, 1).expect("sampled system is valid")
}
