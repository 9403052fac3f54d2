//! Complete factorization over ℚ for small degrees.
//!
//! Squarefree parts are split by rational-root extraction first; what is left
//! (degree ≥ 4) goes through Kronecker's interpolation search, with candidate
//! factor degrees pruned by modular degree patterns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::modp::possible_factor_degrees;
use super::{squarefree_decomposition, Polynomial, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_FACTOR_CAP: usize = 12;

/// Largest absolute value we are willing to factor by trial division.
const MAX_TRIAL_VALUE: u64 = 1_000_000_000_000;
/// Upper bound on interpolation candidates tried per factor degree.
const MAX_KRONECKER_CANDIDATES: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(serialize_with = "ser_rational")]
    pub constant: Rational,
    /// Monic irreducible factors with multiplicities, sorted.
    pub factors: Vec<(Polynomial, u32)>,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&super::format_rational(r))
}

impl Factorization {
    /// `constant · ∏ πᵢ^eᵢ`
    pub fn expand(&self) -> Polynomial {
        self.factors.iter().fold(
            Polynomial::constant(self.constant.clone()),
            |acc, (f, e)| &acc * &f.pow(*e as u64).expect("nonzero factor"),
        )
    }

    /// Multiplicity of a monic factor, zero if absent.
    pub fn multiplicity(&self, pi: &Polynomial) -> u32 {
        self.factors
            .iter()
            .find(|(f, _)| f == pi)
            .map_or(0, |(_, e)| *e)
    }
}

/// Factor `f` into a leading constant times monic irreducibles.
///
/// Fails with [`Error::FactorizationInfeasible`] when `deg f > cap` or the
/// Kronecker search exceeds its internal budget; never returns a partial
/// answer.
pub fn factor(f: &Polynomial, cap: usize) -> Result<Factorization> {
    let lc = f
        .leading_coeff()
        .map_err(|_| Error::ZeroPolynomial("factorization"))?
        .clone();
    if f.deg() > cap {
        return Err(Error::FactorizationInfeasible(format!(
            "degree {} exceeds the factorization cap {cap}",
            f.deg()
        )));
    }
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for pi in irreducible_factors(&part)? {
            factors.push((pi, mult));
        }
    }
    factors.sort();
    Ok(Factorization {
        constant: lc,
        factors,
    })
}

/// Monic irreducible factors of a squarefree polynomial of positive degree.
fn irreducible_factors(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let mut ints = f.primitive_int_coeffs();
    let mut out = Vec::new();
    if ints[0].is_zero() {
        out.push(Polynomial::x());
        ints.remove(0);
    }
    let (roots, rest) = split_rational_roots(ints)?;
    for (num, den) in roots {
        // den·x − num, made monic
        out.push(Polynomial::new(vec![
            -Rational::new(num, den),
            Rational::one(),
        ]));
    }
    let mut pending = vec![rest];
    while let Some(g) = pending.pop() {
        let deg = g.len() - 1;
        if deg == 0 {
            continue;
        }
        // No rational roots left, so degrees 2 and 3 are irreducible.
        if deg <= 3 {
            out.push(Polynomial::from_bigints(g).monic());
            continue;
        }
        match kronecker_split(&g)? {
            Some((a, b)) => {
                pending.push(a);
                pending.push(b);
            }
            None => out.push(Polynomial::from_bigints(g).monic()),
        }
    }
    Ok(out)
}

fn horner(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v <= MAX_TRIAL_VALUE)
        .ok_or_else(|| {
            Error::FactorizationInfeasible(format!("integer {n} too large for trial division"))
        })?;
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        primes.push((rest, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = 1;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Rational roots as `(num, den)` pairs, and the cofactor.
type RootSplit = (Vec<(BigInt, BigInt)>, Vec<BigInt>);

/// Pull out all rational roots `num/den` of a primitive integer polynomial
/// with nonzero constant term. Returns the roots and the remaining cofactor.
fn split_rational_roots(mut f: Vec<BigInt>) -> Result<RootSplit> {
    let mut roots = Vec::new();
    if f.len() <= 1 {
        return Ok((roots, f));
    }
    let nums = divisors(&f[0])?;
    let dens = divisors(f.last().unwrap())?;
    let mut candidates = Vec::new();
    for &u in &nums {
        for &v in &dens {
            if u.gcd(&v) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                candidates.push((BigInt::from(u) * sign, BigInt::from(v)));
            }
        }
    }
    for (u, v) in candidates {
        if f.len() <= 1 {
            break;
        }
        // f(u/v)·v^n == Σ cᵢ uⁱ v^(n−i)
        let n = f.len() - 1;
        let mut acc = BigInt::zero();
        let mut upow = BigInt::one();
        let vpows: Vec<BigInt> = (0..=n).map(|k| num_traits::pow(v.clone(), k)).collect();
        for (i, c) in f.iter().enumerate() {
            acc += c * &upow * &vpows[n - i];
            upow *= &u;
        }
        if acc.is_zero() {
            f = divide_linear(&f, &u, &v);
            roots.push((u, v));
        }
    }
    Ok((roots, f))
}

/// Exact division of `f` by `v·x − u` over ℤ.
fn divide_linear(f: &[BigInt], u: &BigInt, v: &BigInt) -> Vec<BigInt> {
    let n = f.len() - 1;
    let mut rem: Vec<BigInt> = f.to_vec();
    let mut q = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let c = &rem[i + 1] / v;
        rem[i] += &c * u;
        rem[i + 1] = BigInt::zero();
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Find one nontrivial factorization `f = a·b` over ℤ, or prove there is
/// none. `f` is primitive, squarefree, of degree ≥ 4, without rational roots.
fn kronecker_split(f: &[BigInt]) -> Result<Option<(Vec<BigInt>, Vec<BigInt>)>> {
    let n = f.len() - 1;
    let allowed = possible_factor_degrees(f);
    let fpoly = Polynomial::from_bigints(f.to_vec());
    for s in (2..=n / 2).filter(|&s| allowed[s]) {
        if let Some(g) = kronecker_degree(f, &fpoly, s)? {
            let a = g.primitive_int_coeffs();
            let (q, r) = fpoly.div_rem(&g)?;
            debug_assert!(r.is_zero());
            let b = q.primitive_int_coeffs();
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

struct Point {
    x: BigInt,
    divisors: Vec<u64>,
}

fn kronecker_degree(f: &[BigInt], fpoly: &Polynomial, s: usize) -> Result<Option<Polynomial>> {
    let n = f.len() - 1;
    let mut points = Vec::new();
    let span = (n + 8) as i64;
    for k in 0..=2 * span {
        let x = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let x = BigInt::from(x);
        let v = horner(f, &x);
        if v.is_zero() || v.abs() > BigInt::from(MAX_TRIAL_VALUE) {
            continue;
        }
        points.push(Point {
            divisors: divisors(&v)?,
            x,
        });
    }
    if points.len() < s + 1 {
        return Err(Error::FactorizationInfeasible(format!(
            "not enough small evaluation points for a degree-{s} factor search"
        )));
    }
    points.sort_by_key(|p| p.divisors.len());
    points.truncate(s + 1);
    let total: f64 = points
        .iter()
        .enumerate()
        .map(|(i, p)| p.divisors.len() as f64 * if i == 0 { 1.0 } else { 2.0 })
        .product();
    if total > MAX_KRONECKER_CANDIDATES as f64 {
        return Err(Error::FactorizationInfeasible(format!(
            "Kronecker search for a degree-{s} factor needs ~{total:.0} candidates"
        )));
    }
    let lc = f.last().unwrap().clone();
    let mut values: Vec<BigInt> = Vec::with_capacity(s + 1);
    Ok(search(&points, &mut values, s, &lc, fpoly))
}

fn search(
    points: &[Point],
    values: &mut Vec<BigInt>,
    s: usize,
    lc: &BigInt,
    fpoly: &Polynomial,
) -> Option<Polynomial> {
    let i = values.len();
    if i == points.len() {
        return check_candidate(points, values, s, lc, fpoly);
    }
    // A factor and its negative are interchangeable: fix the sign at the first point.
    let signs: &[i64] = if i == 0 { &[1] } else { &[1, -1] };
    for d in &points[i].divisors {
        for &sign in signs {
            let v = BigInt::from(*d) * sign;
            // Integer polynomials satisfy (x_i − x_j) | (g(x_i) − g(x_j)).
            let consistent = (0..i).all(|j| {
                let dx = &points[i].x - &points[j].x;
                ((&v - &values[j]) % dx).is_zero()
            });
            if !consistent {
                continue;
            }
            values.push(v);
            if let Some(g) = search(points, values, s, lc, fpoly) {
                return Some(g);
            }
            values.pop();
        }
    }
    None
}

fn check_candidate(
    points: &[Point],
    values: &[BigInt],
    s: usize,
    lc: &BigInt,
    fpoly: &Polynomial,
) -> Option<Polynomial> {
    let g = interpolate(points, values);
    if g.degree() != super::ExtDegree::Finite(s as u64) || !g.is_integral() {
        return None;
    }
    let glc = g.leading_coeff().ok()?.numer().clone();
    if !(lc % glc).is_zero() {
        return None;
    }
    let (_, r) = fpoly.div_rem(&g).ok()?;
    r.is_zero().then_some(g)
}

/// Lagrange interpolation through `(points[i].x, values[i])`.
fn interpolate(points: &[Point], values: &[BigInt]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (i, (pi, vi)) in points.iter().zip(values).enumerate() {
        let mut basis = Polynomial::one();
        let mut denom = BigInt::one();
        for (j, pj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = &basis * &Polynomial::from_bigints(vec![-pj.x.clone(), BigInt::one()]);
            denom *= &pi.x - &pj.x;
        }
        acc = &acc + &basis.scale(&Rational::new(vi.clone(), denom));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn no_rational_root(f: &Polynomial) -> bool {
        let ints = f.primitive_int_coeffs();
        let (roots, _) = split_rational_roots(ints).unwrap();
        roots.is_empty()
    }

    #[test]
    fn x4_minus_1() {
        let fac = factor(&p(&[-1, 0, 0, 0, 1]), DEFAULT_FACTOR_CAP).unwrap();
        assert_eq!(fac.constant, Rational::one());
        assert_eq!(
            fac.factors,
            vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1), (p(&[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn repeated_root_and_content() {
        let fac = factor(&p(&[1, -2, 1]), DEFAULT_FACTOR_CAP).unwrap();
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 2)]);
        let fac = factor(&p(&[0, 6]), DEFAULT_FACTOR_CAP).unwrap();
        assert_eq!(fac.constant, super::super::int(6));
        assert_eq!(fac.factors, vec![(p(&[0, 1]), 1)]);
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (2x - 1)(3x + 2)(x^2 + 1)
        let f = &(&p(&[-1, 2]) * &p(&[2, 3])) * &p(&[1, 0, 1]);
        let fac = factor(&f, DEFAULT_FACTOR_CAP).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.constant, super::super::int(6));
    }

    #[test]
    fn kronecker_splits_product_of_quadratics() {
        // (x^2 + x + 1)(x^2 + 1): no rational roots, needs the search.
        let f = &p(&[1, 1, 1]) * &p(&[1, 0, 1]);
        let fac = factor(&f, DEFAULT_FACTOR_CAP).unwrap();
        assert_eq!(fac.factors, vec![(p(&[1, 0, 1]), 1), (p(&[1, 1, 1]), 1)]);
    }

    #[test]
    fn x4_plus_1_is_irreducible() {
        let fac = factor(&p(&[1, 0, 0, 0, 1]), DEFAULT_FACTOR_CAP).unwrap();
        assert_eq!(fac.factors, vec![(p(&[1, 0, 0, 0, 1]), 1)]);
    }

    #[test]
    fn cubic_times_cubic() {
        // (x^3 - 2)(x^3 + x + 1)
        let f = &p(&[-2, 0, 0, 1]) * &p(&[1, 1, 0, 1]);
        let fac = factor(&f, DEFAULT_FACTOR_CAP).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 2);
        for (pi, _) in &fac.factors {
            assert!(no_rational_root(pi));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = p(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(
            factor(&f, DEFAULT_FACTOR_CAP),
            Err(Error::FactorizationInfeasible(_))
        ));
        assert!(factor(&Polynomial::zero(), DEFAULT_FACTOR_CAP).is_err());
    }

    #[test]
    fn divisors_small() {
        assert_eq!(
            divisors(&BigInt::from(-12)).unwrap(),
            vec![1, 2, 3, 4, 6, 12]
        );
        assert_eq!(divisors(&BigInt::from(1)).unwrap(), vec![1]);
    }
}
