use super::Polynomial;
use crate::error::{Error, Result};

/// Monic greatest common divisor. `gcd(f, 0)` is `f` made monic.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial("gcd"));
    }
    let mut a = f.monic();
    let mut b = g.monic();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r.monic();
    }
    Ok(a)
}

/// Yun's algorithm: `f = c·∏ gᵢ^i` with each `gᵢ` monic, squarefree and the
/// `gᵢ` pairwise coprime. Only factors of positive degree are returned.
pub fn squarefree_decomposition(f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree decomposition"));
    }
    let f = f.monic();
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = gcd(&f, &df)?;
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d)?;
        b = b.exact_div(&a)?;
        let c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(
            gcd(&p(&[2, 4]), &Polynomial::zero()).unwrap(),
            p(&[1, 2]).monic()
        );
        assert_eq!(gcd(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap(), Polynomial::one());
        assert!(gcd(&Polynomial::zero(), &Polynomial::zero()).is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(
            squarefree_decomposition(&p(&[1, -2, 1])).unwrap(),
            vec![(p(&[-1, 1]), 2)]
        );
        assert_eq!(
            squarefree_decomposition(&p(&[-1, 0, 1])).unwrap(),
            vec![(p(&[-1, 0, 1]), 1)]
        );
        // (x-1)^2 (x+2)^3
        let f = &p(&[-1, 1]).pow(2).unwrap() * &p(&[2, 1]).pow(3).unwrap();
        assert_eq!(
            squarefree_decomposition(&f).unwrap(),
            vec![(p(&[-1, 1]), 2), (p(&[2, 1]), 3)]
        );
        assert!(squarefree_decomposition(&p(&[7])).unwrap().is_empty());
        assert!(squarefree_decomposition(&Polynomial::zero()).is_err());
    }

    #[test]
    fn squarefree_scaled_input() {
        // 3 (x^2+1)^2 x
        let f = (&p(&[1, 0, 1]).pow(2).unwrap() * &p(&[0, 3])).scale(&super::super::int(1));
        assert_eq!(
            squarefree_decomposition(&f).unwrap(),
            vec![(p(&[0, 1]), 1), (p(&[1, 0, 1]), 2)]
        );
    }
}
