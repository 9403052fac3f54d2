//! `D(n,m)` without expanding the sum unless the leading terms cancel.
//!
//! When both sides have the same degree and the leading coefficients cancel,
//! the coefficients of the sum are generated from the top down, one degree at
//! a time, until the first nonzero one. Each summand `a·pⁿ` is handled through
//! its reversal: with `y = 1/x`, `rev(p)ⁿ` satisfies the power recurrence
//!
//! `k·h₀·g_k = Σ_{i=1..min(k, deg p)} ((n+1)·i − k)·hᵢ·g_{k−i}`,
//!
//! so the top `j` coefficients of a summand cost `O(j · deg p)` operations
//! instead of a full `O((n·deg p)²)` expansion.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Limits;
use crate::error::{Error, Result, Side};
use crate::poly::{ExtDegree, Polynomial, Rational};
use crate::power_sum::{PowerSumSystem, Term, Thresholds};

/// Lazily generated top-down coefficients of `coeff · baseⁿ`.
struct TermSeries {
    degree: u64,
    rev_coeff: Vec<Rational>,
    rev_base: Vec<Rational>,
    exponent: u64,
    /// Coefficients of `rev(base)ⁿ` computed so far.
    power: Vec<Rational>,
}

impl TermSeries {
    fn new(term: &Term, n: u64) -> Self {
        let rev = |p: &Polynomial| p.coeffs().iter().rev().cloned().collect::<Vec<_>>();
        let rev_base = rev(&term.base);
        let lead = num_traits::pow(rev_base[0].clone(), n as usize);
        TermSeries {
            degree: term.degree_at(n),
            rev_coeff: rev(&term.coeff),
            rev_base,
            exponent: n,
            power: vec![lead],
        }
    }

    fn extend_power(&mut self, upto: usize, budget_bits: u64) -> Result<()> {
        let h = &self.rev_base;
        while self.power.len() <= upto {
            let k = self.power.len();
            let mut acc = Rational::zero();
            for (i, hi) in h.iter().enumerate().take(k + 1).skip(1) {
                if hi.is_zero() || self.power[k - i].is_zero() {
                    continue;
                }
                let w = BigInt::from(self.exponent as i128 + 1) * BigInt::from(i as i128)
                    - BigInt::from(k as i128);
                if w.is_zero() {
                    continue;
                }
                acc += Rational::from_integer(w) * hi * &self.power[k - i];
            }
            let denom = Rational::from_integer(BigInt::from(k)) * &h[0];
            let next = acc / denom;
            let bits = next.numer().bits() + next.denom().bits();
            if bits > budget_bits {
                return Err(Error::ResourceCap(format!(
                    "coefficient of {bits} bits exceeds the budget of {budget_bits} bits"
                )));
            }
            self.power.push(next);
        }
        Ok(())
    }

    /// Coefficient of `x^(degree − j)`.
    fn coeff_from_top(&mut self, j: usize, budget_bits: u64) -> Result<Rational> {
        self.extend_power(j, budget_bits)?;
        let mut acc = Rational::zero();
        for (i, a) in self.rev_coeff.iter().enumerate().take(j + 1) {
            if !a.is_zero() {
                acc += a * &self.power[j - i];
            }
        }
        Ok(acc)
    }
}

/// Degree of `Σ coeff·baseⁿ` over the given `(term, exponent)` pairs, found
/// by walking coefficients down from the largest summand degree.
fn top_down_degree(parts: &[(&Term, u64)], budget_bits: u64) -> Result<ExtDegree> {
    let mut series: Vec<TermSeries> = parts.iter().map(|(t, n)| TermSeries::new(t, *n)).collect();
    let Some(top) = series.iter().map(|s| s.degree).max() else {
        return Ok(ExtDegree::NegInfinity);
    };
    for e in (0..=top).rev() {
        let mut c = Rational::zero();
        for s in series.iter_mut().filter(|s| s.degree >= e) {
            c += s.coeff_from_top((s.degree - e) as usize, budget_bits)?;
        }
        if !c.is_zero() {
            return Ok(ExtDegree::Finite(e));
        }
    }
    Ok(ExtDegree::NegInfinity)
}

/// Per-system state for repeated `D(n,m)` queries.
pub struct Evaluator<'a> {
    sys: &'a PowerSumSystem,
    thresholds: Thresholds,
    /// Expanded degrees for `base ≤ n < N`, indexed by `n − base`.
    left_strip: Vec<ExtDegree>,
    right_strip: Vec<ExtDegree>,
    budget_bits: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(sys: &'a PowerSumSystem, limits: &Limits) -> Self {
        let thresholds = sys.dominance_thresholds();
        let base = sys.exponent_base();
        let strip = |side: Side, upto: u64| {
            (base..upto)
                .map(|n| sys.eval_side(side, n).degree())
                .collect::<Vec<_>>()
        };
        Evaluator {
            sys,
            thresholds,
            left_strip: strip(Side::Left, thresholds.n),
            right_strip: strip(Side::Right, thresholds.m),
            budget_bits: limits.coeff_budget_bits,
        }
    }

    pub fn system(&self) -> &PowerSumSystem {
        self.sys
    }

    pub fn thresholds(&self) -> Thresholds {
        self.thresholds
    }

    pub fn side_degree(&self, side: Side, n: u64) -> ExtDegree {
        let (threshold, strip) = match side {
            Side::Left => (self.thresholds.n, &self.left_strip),
            Side::Right => (self.thresholds.m, &self.right_strip),
        };
        if n >= threshold {
            ExtDegree::Finite(self.sys.terms(side)[0].degree_at(n))
        } else {
            strip[(n - self.sys.exponent_base()) as usize]
        }
    }

    /// `deg(Σ aᵢ pᵢⁿ + Σ bⱼ qⱼᵐ)`.
    pub fn d_value(&self, n: u64, m: u64) -> Result<ExtDegree> {
        let l = self.side_degree(Side::Left, n);
        let r = self.side_degree(Side::Right, m);
        if l != r {
            return Ok(l.max(r));
        }
        if l.is_neg_infinity() {
            return Ok(l);
        }
        if n >= self.thresholds.n && m >= self.thresholds.m && !self.leading_sum(n, m).is_zero() {
            return Ok(l);
        }
        let parts: Vec<(&Term, u64)> = self
            .sys
            .left()
            .iter()
            .map(|t| (t, n))
            .chain(self.sys.right().iter().map(|t| (t, m)))
            .collect();
        top_down_degree(&parts, self.budget_bits)
    }

    /// `lc(a₁)·lc(p₁)ⁿ + lc(b₁)·lc(q₁)ᵐ`
    fn leading_sum(&self, n: u64, m: u64) -> Rational {
        let lead = |t: &Term, e: u64| {
            let lc = |p: &Polynomial| p.leading_coeff().expect("nonzero").clone();
            lc(&t.coeff) * num_traits::pow(lc(&t.base), e as usize)
        };
        lead(&self.sys.left()[0], n) + lead(&self.sys.right()[0], m)
    }
}

/// Full-expansion reference: `deg(eval_left(n) + eval_right(m))`.
pub fn d_value_expanded(sys: &PowerSumSystem, n: u64, m: u64) -> ExtDegree {
    (&sys.eval_left(n) + &sys.eval_right(m)).degree()
}
