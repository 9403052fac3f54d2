//! Dense univariate polynomials over ℚ.
//!
//! Coefficients are stored in ascending order of exponent. The representation
//! is canonical: the zero polynomial has no coefficients, and otherwise the
//! last coefficient is nonzero.

mod factor;
mod gcd;
mod modp;
mod parse;

pub use factor::{factor, Factorization, DEFAULT_FACTOR_CAP};
pub use gcd::{gcd, squarefree_decomposition};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Degree of a polynomial, with `deg 0 = −∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtDegree {
    NegInfinity,
    Finite(u64),
}

impl ExtDegree {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtDegree::NegInfinity => None,
            ExtDegree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_infinity(self) -> bool {
        self == ExtDegree::NegInfinity
    }

    /// `0 ≤ self ≤ d`.
    pub fn in_range(self, d: u64) -> bool {
        matches!(self, ExtDegree::Finite(e) if e <= d)
    }
}

impl fmt::Display for ExtDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDegree::NegInfinity => f.write_str("-inf"),
            ExtDegree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for ExtDegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtDegree::NegInfinity => s.serialize_str("-inf"),
            ExtDegree::Finite(d) => s.serialize_u64(*d),
        }
    }
}

impl<'de> Deserialize<'de> for ExtDegree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(ExtDegree::Finite(v)),
            Raw::Str(s) if s == "-inf" => Ok(ExtDegree::NegInfinity),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected integer or \"-inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

pub(crate) fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> ExtDegree {
        match self.coeffs.len() {
            0 => ExtDegree::NegInfinity,
            len => ExtDegree::Finite(len as u64 - 1),
        }
    }

    /// Degree as an index; zero for the zero polynomial. Only for callers that
    /// have already excluded `f = 0`.
    pub(crate) fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> Result<&Rational> {
        self.coeffs
            .last()
            .ok_or(Error::ZeroPolynomial("leading coefficient"))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Divide by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// All coefficients have denominator 1.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// `self(g(x))` by Horner's rule.
    pub fn compose(&self, g: &Polynomial) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * g) + &Self::constant(c.clone())
        })
    }

    /// `fⁿ` by binary exponentiation. `0⁰` is rejected.
    pub fn pow(&self, mut n: u64) -> Result<Self> {
        if n == 0 {
            return if self.is_zero() {
                Err(Error::ZeroToZero)
            } else {
                Ok(Self::one())
            };
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        loop {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = &base * &base;
        }
        Ok(acc)
    }

    /// Euclidean division `self = q·g + r` with `deg r < deg g`.
    pub fn div_rem(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let lc = g.leading_coeff().map_err(|_| Error::DivisionByZero)?;
        if self.coeffs.len() < g.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = lc.recip();
        let dg = g.deg();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dg];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dg] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                if !gj.is_zero() {
                    rem[i + j] -= &c * gj;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dg);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient when `g` is known to divide `self`.
    pub(crate) fn exact_div(&self, g: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(g)?;
        debug_assert!(r.is_zero(), "exact_div with nonzero remainder");
        Ok(q)
    }

    /// Scale to a primitive integer polynomial with positive leading
    /// coefficient. Returns the integer coefficients.
    pub(crate) fn primitive_int_coeffs(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !content.is_zero() {
            for c in ints.iter_mut() {
                *c = &*c / &content;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        ints
    }

    pub(crate) fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    fn add_impl(&self, rhs: &Polynomial, negate: bool) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b, negate) {
                (Some(a), Some(b), false) => a + b,
                (Some(a), Some(b), true) => a - b,
                (Some(a), None, _) => a.clone(),
                (None, Some(b), false) => b.clone(),
                (None, Some(b), true) => -b,
                (None, None, _) => unreachable!(),
            });
        }
        Polynomial::new(out)
    }

    /// Integer coefficients `c·L` with `L` the lcm of the denominators.
    fn cleared(&self) -> (Vec<BigInt>, BigInt) {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        (ints, l)
    }

    fn mul_impl(&self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        // Clear denominators and multiply over ℤ; one gcd per output
        // coefficient instead of one per term product.
        let (a, da) = self.cleared();
        let (b, db) = rhs.cleared();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        let den = da * db;
        if den.is_one() {
            return Polynomial::from_bigints(out);
        }
        Polynomial::new(
            out.into_iter()
                .map(|c| Rational::new(c, den.clone()))
                .collect(),
        )
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.add_impl(rhs, false)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        self.add_impl(&rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.add_impl(rhs, true)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self.add_impl(&rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.mul_impl(rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        self.mul_impl(&rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = fmt_rational(&abs);
            match i {
                0 => f.write_str(&body)?,
                _ => {
                    if !abs.is_one() {
                        if abs.is_integer() {
                            f.write_str(&body)?;
                        } else {
                            write!(f, "{body}*")?;
                        }
                    }
                    f.write_str("x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// JSON array of `"num/den"` strings, ascending by exponent.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Polynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p(&[-1, 0, 1]) + &p(&[1]), p(&[0, 0, 1]));
        let f = p(&[3, -1, 4]);
        assert_eq!(&f + &Polynomial::zero(), f);
        assert_eq!(&p(&[1, 0, 1]) + &p(&[1, 0, -1]), p(&[2]));
        assert_eq!(&f - &f, Polynomial::zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert!((&p(&[1, 2, 3]) * &Polynomial::zero()).is_zero());
        let half_x = Polynomial::new(vec![q(0, 1), q(1, 2)]);
        assert_eq!(&p(&[0, 2]) * &half_x, p(&[0, 0, 1]));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(p(&[0, 0, 1]).pow(3).unwrap(), p(&[0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(p(&[5, 1]).pow(0).unwrap(), Polynomial::one());
        assert_eq!(p(&[1, 1]).pow(2).unwrap(), p(&[1, 2, 1]));
        assert!(matches!(Polynomial::zero().pow(0), Err(Error::ZeroToZero)));
        assert!(Polynomial::zero().pow(3).unwrap().is_zero());
    }

    #[test]
    fn degree_and_leading_coeff() {
        assert_eq!(Polynomial::zero().degree(), ExtDegree::NegInfinity);
        assert_eq!(p(&[5]).degree(), ExtDegree::Finite(0));
        assert_eq!(*p(&[0, -1, 0, 0, 3]).leading_coeff().unwrap(), int(3));
        assert!(Polynomial::zero().leading_coeff().is_err());
        assert!(ExtDegree::NegInfinity < ExtDegree::Finite(0));
    }

    #[test]
    fn div_rem_examples() {
        let (quot, rem) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(quot, p(&[1, 1]));
        assert!(rem.is_zero());
        assert!(matches!(
            p(&[1, 1]).div_rem(&Polynomial::zero()),
            Err(Error::DivisionByZero)
        ));
        let (quot, rem) = p(&[1, 0, 0, 2]).div_rem(&p(&[1, 2])).unwrap();
        assert_eq!(&(&quot * &p(&[1, 2])) + &rem, p(&[1, 0, 0, 2]));
        assert_eq!(rem.degree(), ExtDegree::Finite(0));
    }

    #[test]
    fn display_and_json() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[0, -1, 0, 0, 3]).to_string(), "3x^4 - x");
        assert_eq!(
            Polynomial::new(vec![q(1, 2), q(-3, 4)]).to_string(),
            "-3/4*x + 1/2"
        );
        let json = serde_json::to_string(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(json, r#"["-1/1","0/1","1/1"]"#);
        let back: Polynomial = serde_json::from_str(r#"["-1/1","0","2/2"]"#).unwrap();
        assert_eq!(back, p(&[-1, 0, 1]));
        assert!(serde_json::from_str::<Polynomial>(r#"["1/0"]"#).is_err());
        assert_eq!(serde_json::to_string(&Polynomial::zero()).unwrap(), "[]");
    }

    #[test]
    fn compose_and_eval() {
        // (x^2 + 1)∘(x + 1) = x^2 + 2x + 2
        assert_eq!(p(&[1, 0, 1]).compose(&p(&[1, 1])), p(&[2, 2, 1]));
        assert_eq!(p(&[1, 0, 1]).eval(&int(3)), int(10));
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
    }

    #[test]
    fn ext_degree_json() {
        assert_eq!(
            serde_json::to_string(&ExtDegree::NegInfinity).unwrap(),
            "\"-inf\""
        );
        assert_eq!(serde_json::to_string(&ExtDegree::Finite(6)).unwrap(), "6");
        let d: ExtDegree = serde_json::from_str("\"-inf\"").unwrap();
        assert_eq!(d, ExtDegree::NegInfinity);
    }
}
