//! Human-readable polynomial syntax: `"x^2 - 1"`, `"3x^4 - x"`, `"1/2*x + 2/3"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut pos = 0;
        while pos < src.len() {
            let mut sign = Rational::one();
            match src[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ if pos > 0 => return Err(err(s, pos, "expected '+' or '-'")),
                _ => {}
            }
            let (c, k, next) = term(&src, pos).map_err(|msg| err(s, pos, msg))?;
            pos = next;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += sign * c;
        }
        Ok(Polynomial::new(coeffs))
    }
}

fn err(s: &str, pos: usize, msg: &str) -> Error {
    Error::Parse(format!("{msg} at offset {pos} in {s:?}"))
}

fn integer(src: &[char], mut pos: usize) -> Option<(BigInt, usize)> {
    let start = pos;
    while pos < src.len() && src[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return None;
    }
    let digits: String = src[start..pos].iter().collect();
    Some((digits.parse().ok()?, pos))
}

/// One signless term; returns coefficient, exponent and the next offset.
fn term(
    src: &[char],
    mut pos: usize,
) -> std::result::Result<(Rational, usize, usize), &'static str> {
    let mut coeff = Rational::one();
    let mut have_coeff = false;
    if let Some((num, next)) = integer(src, pos) {
        pos = next;
        have_coeff = true;
        coeff = Rational::from_integer(num);
        if src.get(pos) == Some(&'/') {
            let (den, next) = integer(src, pos + 1).ok_or("expected denominator")?;
            if den.is_zero() {
                return Err("zero denominator");
            }
            coeff /= Rational::from_integer(den);
            pos = next;
        }
        if src.get(pos) == Some(&'*') && src.get(pos + 1) != Some(&'*') {
            pos += 1;
            if src.get(pos) != Some(&'x') {
                return Err("expected 'x' after '*'");
            }
        }
    }
    if src.get(pos) != Some(&'x') {
        return if have_coeff {
            Ok((coeff, 0, pos))
        } else {
            Err("expected a coefficient or 'x'")
        };
    }
    pos += 1;
    let mut k = 1usize;
    let caret = match (src.get(pos), src.get(pos + 1)) {
        (Some('^'), _) => Some(1),
        (Some('*'), Some('*')) => Some(2),
        _ => None,
    };
    if let Some(width) = caret {
        let (e, next) = integer(src, pos + width).ok_or("expected exponent")?;
        k = e.try_into().map_err(|_| "exponent too large")?;
        pos = next;
    }
    Ok((coeff, k, pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn parses_common_forms() {
        assert_eq!("x^2 - 1".parse::<Polynomial>().unwrap(), p(&[-1, 0, 1]));
        assert_eq!(
            "3x^4 - x".parse::<Polynomial>().unwrap(),
            p(&[0, -1, 0, 0, 3])
        );
        assert_eq!(
            "-x**3 + 2*x".parse::<Polynomial>().unwrap(),
            p(&[0, 2, 0, -1])
        );
        assert_eq!("x + x".parse::<Polynomial>().unwrap(), p(&[0, 2]));
        assert_eq!("0".parse::<Polynomial>().unwrap(), Polynomial::zero());
        let half: Polynomial = "1/2 x + 2/3".parse().unwrap();
        assert_eq!(
            half,
            Polynomial::new(vec![
                Rational::new(2.into(), 3.into()),
                Rational::new(1.into(), 2.into())
            ])
        );
    }

    #[test]
    fn display_round_trips() {
        for f in [
            p(&[-1, 0, 1]),
            p(&[0, -1, 0, 0, 3]),
            p(&[7]),
            p(&[0, 0, -2, 1]),
        ] {
            assert_eq!(f.to_string().parse::<Polynomial>().unwrap(), f);
        }
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x^", "2/0x", "y", "x x", "3*"] {
            assert!(bad.parse::<Polynomial>().is_err(), "{bad:?} parsed");
        }
    }
}
