//! Degree patterns of integer polynomials modulo small primes.
//!
//! Used only to prune the Kronecker search: a factor over ℚ reduces to a
//! product of irreducible factors mod p, so its degree must be a subset sum of
//! the distinct-degree pattern mod every good prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];
const GOOD_PRIMES_WANTED: usize = 7;

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and small; Fermat.
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * inv % p;
        if c != 0 {
            let shift = top - db;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * bj % p) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn mul_rem(a: &Fp, b: &Fp, m: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    rem(&trim(out), m, p)
}

fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn div_exact(a: &Fp, b: &Fp, p: u64) -> Fp {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - c * bj % p) % p;
        }
    }
    trim(q)
}

fn derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// `base^e mod m` over F_p.
fn pow_rem(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, m, p);
        }
        b = mul_rem(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

/// Degrees of the irreducible factors of `f mod p`, or `None` when the
/// reduction drops degree or is not squarefree.
fn degree_pattern(f: &[BigInt], p: u64) -> Option<Vec<usize>> {
    let pb = BigInt::from(p);
    let red: Fp = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    if *red.last()? == 0 {
        return None;
    }
    let lc_inv = inv_mod(*red.last()?, p);
    let mut g: Fp = red.iter().map(|c| c * lc_inv % p).collect();
    let dg = derivative(&g, p);
    if dg.is_empty() || gcd(&g, &dg, p).len() != 1 {
        return None;
    }
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut degrees = Vec::new();
    let mut i = 1;
    while g.len() > 2 * i {
        h = pow_rem(&h, p, &g, p);
        // h - x mod g
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let diff = trim(diff);
        let common = gcd(&g, &diff, p);
        let dc = common.len() - 1;
        if dc > 0 {
            degrees.extend(std::iter::repeat_n(i, dc / i));
            g = div_exact(&g, &common, p);
            h = rem(&h, &g, p);
        }
        i += 1;
    }
    if g.len() > 1 {
        degrees.push(g.len() - 1);
    }
    Some(degrees)
}

/// `allowed[s]` is false when no factor of degree `s` can exist over ℚ.
/// `f` must be squarefree over ℚ.
pub(crate) fn possible_factor_degrees(f: &[BigInt]) -> Vec<bool> {
    let n = f.len() - 1;
    let mut allowed = vec![true; n + 1];
    let mut good = 0;
    for &p in PRIMES.iter() {
        if good >= GOOD_PRIMES_WANTED {
            break;
        }
        let Some(pattern) = degree_pattern(f, p) else {
            continue;
        };
        good += 1;
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in pattern {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for (a, s) in allowed.iter_mut().zip(sums) {
            *a &= s;
        }
    }
    allowed
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn pattern_of_product() {
        // (x^2+1)(x^2+x+1) mod 5: x^2+1 = (x-2)(x-3), x^2+x+1 irreducible mod 5
        let f = big(&[1, 1, 2, 1, 1]);
        let mut pat = degree_pattern(&f, 5).unwrap();
        pat.sort();
        assert_eq!(pat, vec![1, 1, 2]);
    }

    #[test]
    fn artin_schreier_is_irreducible_mod_5() {
        // x^5 - x - 1 stays irreducible mod 5, so only the trivial degrees survive.
        let f = big(&[-1, -1, 0, 0, 0, 1]);
        assert_eq!(degree_pattern(&f, 5).unwrap(), vec![5]);
        let allowed = possible_factor_degrees(&f);
        assert_eq!(allowed, vec![true, false, false, false, false, true]);
    }

    #[test]
    fn filter_keeps_degree_two_for_x4_plus_1() {
        // x^4 + 1 is irreducible over Q yet reducible mod every prime.
        let allowed = possible_factor_degrees(&big(&[1, 0, 0, 0, 1]));
        assert!(allowed[2]);
    }

    #[test]
    fn product_keeps_true_degrees() {
        let f = big(&[1, 1, 2, 1, 1]);
        let allowed = possible_factor_degrees(&f);
        assert!(allowed[2]);
    }
}
