use serde::Serialize;

use crate::error::{Error, Result};
use crate::power_sum::PowerSumSystem;

/// Degree data entering the unit-equation constant for a system at a given `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BMContext {
    pub k: u64,
    pub l: u64,
    pub d: u64,
    pub deg_a: Vec<u64>,
    pub deg_p: Vec<u64>,
    pub deg_b: Vec<u64>,
    pub deg_q: Vec<u64>,
    pub genus: u64,
}

pub(crate) fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

impl BMContext {
    pub fn new(
        d: u64,
        deg_a: Vec<u64>,
        deg_p: Vec<u64>,
        deg_b: Vec<u64>,
        deg_q: Vec<u64>,
    ) -> Result<Self> {
        if deg_a.is_empty() || deg_b.is_empty() {
            return Err(Error::InvalidConfig(
                "both sides need at least one term".into(),
            ));
        }
        if deg_a.len() != deg_p.len() || deg_b.len() != deg_q.len() {
            return Err(Error::InvalidConfig("degree list lengths disagree".into()));
        }
        if deg_p.iter().chain(&deg_q).any(|&e| e == 0) {
            return Err(Error::InvalidConfig(
                "base polynomials must be non-constant".into(),
            ));
        }
        Ok(BMContext {
            k: deg_a.len() as u64,
            l: deg_b.len() as u64,
            d,
            deg_a,
            deg_p,
            deg_b,
            deg_q,
            genus: 0,
        })
    }

    pub fn from_system(sys: &PowerSumSystem, d: u64) -> Self {
        let coeffs = |ts: &[crate::power_sum::Term]| ts.iter().map(|t| t.coeff_degree()).collect();
        let bases = |ts: &[crate::power_sum::Term]| ts.iter().map(|t| t.base_degree()).collect();
        BMContext::new(
            d,
            coeffs(sys.left()),
            bases(sys.left()),
            coeffs(sys.right()),
            bases(sys.right()),
        )
        .expect("a valid system gives a valid context")
    }

    /// `1 + d + Σ deg aᵢ + Σ deg pᵢ + Σ deg bⱼ + Σ deg qⱼ`
    pub fn s_size_bound(&self) -> u64 {
        let sum = |v: &[u64]| v.iter().sum::<u64>();
        1 + self.d + sum(&self.deg_a) + sum(&self.deg_p) + sum(&self.deg_b) + sum(&self.deg_q)
    }

    /// `binom(k+l, 2) · s_size_bound`
    pub fn c_bm(&self) -> u64 {
        binom2(self.k + self.l) * self.s_size_bound()
    }

    /// `⌊2·C_BM / min(minᵢ deg pᵢ, minⱼ deg qⱼ)⌋`: on the degenerate line,
    /// every pair with `0 ≤ D ≤ d` has `min(n, m)` at most this.
    pub fn line_cutoff(&self) -> u64 {
        let min_deg = self
            .deg_p
            .iter()
            .chain(&self.deg_q)
            .copied()
            .min()
            .expect("nonempty");
        2 * self.c_bm() / min_deg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pillai_at_d_10() {
        let ctx = BMContext::new(10, vec![0], vec![2], vec![0], vec![3]).unwrap();
        assert_eq!(ctx.s_size_bound(), 16);
        assert_eq!(ctx.c_bm(), 16);
    }

    #[test]
    fn two_plus_one_terms() {
        let ctx = BMContext::new(0, vec![0, 0], vec![3, 1], vec![0], vec![2]).unwrap();
        assert_eq!(ctx.c_bm(), 21);
        assert_eq!(ctx.c_bm(), binom2(3) * ctx.s_size_bound());
    }

    #[test]
    fn affine_in_d() {
        let at = |d| {
            BMContext::new(d, vec![1, 0], vec![3, 1], vec![2], vec![2])
                .unwrap()
                .c_bm()
        };
        assert_eq!(at(20) - at(10), 10 * binom2(3));
        assert_eq!(at(2 * 7) - at(7), at(7) - at(0));
    }

    #[test]
    fn rejects_constant_bases() {
        assert!(BMContext::new(3, vec![0], vec![0], vec![0], vec![1]).is_err());
        assert!(BMContext::new(3, vec![0, 1], vec![2], vec![0], vec![1]).is_err());
    }
}
