//! Two polynomial power sums `Σ aᵢ pᵢⁿ` and `Σ bⱼ qⱼᵐ` with dominant roots.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Side};
use crate::poly::{ExtDegree, Polynomial};

/// One summand `coeff · base^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Polynomial,
    pub base: Polynomial,
}

impl Term {
    pub fn new(coeff: Polynomial, base: Polynomial) -> Self {
        Term { coeff, base }
    }

    pub fn coeff_degree(&self) -> u64 {
        self.coeff.deg() as u64
    }

    pub fn base_degree(&self) -> u64 {
        self.base.deg() as u64
    }

    /// `deg(coeff · base^n)`
    pub fn degree_at(&self, n: u64) -> u64 {
        self.coeff_degree() + n * self.base_degree()
    }

    pub fn eval(&self, n: u64) -> Polynomial {
        // base is non-constant, so base^0 is well defined.
        &self.coeff * &self.base.pow(n).expect("non-constant base")
    }
}

/// Exponents from which the first term of each side strictly dominates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    pub n: u64,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumSystem {
    left: Vec<Term>,
    right: Vec<Term>,
    exponent_base: u64,
}

impl PowerSumSystem {
    /// Validates non-emptiness, nonzero coefficients, non-constant bases and
    /// strict dominance of the first base on each side.
    pub fn new(left: Vec<Term>, right: Vec<Term>, exponent_base: u64) -> Result<Self> {
        if exponent_base > 1 {
            return Err(Error::InvalidConfig(format!(
                "exponent_base must be 0 or 1, got {exponent_base}"
            )));
        }
        validate_side(&left, Side::Left)?;
        validate_side(&right, Side::Right)?;
        Ok(PowerSumSystem {
            left,
            right,
            exponent_base,
        })
    }

    pub fn left(&self) -> &[Term] {
        &self.left
    }

    pub fn right(&self) -> &[Term] {
        &self.right
    }

    pub fn terms(&self, side: Side) -> &[Term] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn exponent_base(&self) -> u64 {
        self.exponent_base
    }

    pub fn with_exponent_base(mut self, base: u64) -> Result<Self> {
        if base > 1 {
            return Err(Error::InvalidConfig(format!(
                "exponent_base must be 0 or 1, got {base}"
            )));
        }
        self.exponent_base = base;
        Ok(self)
    }

    /// `deg a₁`, `deg p₁`, `deg b₁`, `deg q₁`.
    pub fn dominant_degrees(&self) -> DominantDegrees {
        DominantDegrees {
            a1: self.left[0].coeff_degree(),
            p1: self.left[0].base_degree(),
            b1: self.right[0].coeff_degree(),
            q1: self.right[0].base_degree(),
        }
    }

    pub fn dominance_thresholds(&self) -> Thresholds {
        Thresholds {
            n: side_threshold(&self.left, self.exponent_base),
            m: side_threshold(&self.right, self.exponent_base),
        }
    }

    pub fn eval_side(&self, side: Side, n: u64) -> Polynomial {
        self.terms(side)
            .iter()
            .fold(Polynomial::zero(), |acc, t| &acc + &t.eval(n))
    }

    /// `Σ aᵢ pᵢⁿ`, fully expanded.
    pub fn eval_left(&self, n: u64) -> Polynomial {
        self.eval_side(Side::Left, n)
    }

    /// `Σ bⱼ qⱼᵐ`, fully expanded.
    pub fn eval_right(&self, m: u64) -> Polynomial {
        self.eval_side(Side::Right, m)
    }

    pub fn side_degree(&self, side: Side, n: u64) -> ExtDegree {
        let threshold = side_threshold(self.terms(side), self.exponent_base);
        if n >= threshold {
            ExtDegree::Finite(self.terms(side)[0].degree_at(n))
        } else {
            self.eval_side(side, n).degree()
        }
    }

    pub fn left_degree(&self, n: u64) -> ExtDegree {
        self.side_degree(Side::Left, n)
    }

    pub fn right_degree(&self, m: u64) -> ExtDegree {
        self.side_degree(Side::Right, m)
    }

    /// Least `d` for which the strip degrees below the thresholds are `< d`
    /// and both rectangle sides extend more than two steps past the
    /// thresholds. Found by scanning, since strip degrees need not be
    /// monotone.
    pub fn d_min_valid(&self) -> u64 {
        let t = self.dominance_thresholds();
        let dd = self.dominant_degrees();
        let strip_max = |side: Side, upto: u64| {
            (self.exponent_base..upto)
                .filter_map(|n| self.eval_side(side, n).degree().finite())
                .max()
        };
        let left_strip = strip_max(Side::Left, t.n);
        let right_strip = strip_max(Side::Right, t.m);
        let holds = |d: u64| {
            left_strip.is_none_or(|e| e < d)
                && right_strip.is_none_or(|e| e < d)
                && d as i128 - dd.a1 as i128 > (t.n as i128 + 2) * dd.p1 as i128
                && d as i128 - dd.b1 as i128 > (t.m as i128 + 2) * dd.q1 as i128
        };
        (0..)
            .find(|&d| holds(d))
            .expect("predicates hold for large d")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominantDegrees {
    pub a1: u64,
    pub p1: u64,
    pub b1: u64,
    pub q1: u64,
}

fn validate_side(terms: &[Term], side: Side) -> Result<()> {
    if terms.is_empty() {
        return Err(Error::InvalidConfig(format!("{side} side has no terms")));
    }
    for (i, t) in terms.iter().enumerate() {
        let bad = |reason: &str| Error::InvalidSystem {
            side,
            index: i + 1,
            reason: reason.to_string(),
        };
        if t.coeff.is_zero() {
            return Err(bad("coefficient polynomial is zero"));
        }
        if t.base.is_constant() {
            return Err(bad("base polynomial is constant"));
        }
    }
    let dominant = terms[0].base_degree();
    for (i, t) in terms.iter().enumerate().skip(1) {
        if t.base_degree() >= dominant {
            return Err(Error::InvalidSystem {
                side,
                index: i + 1,
                reason: format!(
                    "base degree {} is not below the dominant base degree {dominant}",
                    t.base_degree()
                ),
            });
        }
    }
    Ok(())
}

/// `max(1, base, maxᵢ ⌊(deg aᵢ − deg a₁)/(deg p₁ − deg pᵢ)⌋ + 1)`, in exact
/// integer arithmetic so ties at the boundary are not dominated.
fn side_threshold(terms: &[Term], exponent_base: u64) -> u64 {
    let a1 = terms[0].coeff_degree() as i64;
    let p1 = terms[0].base_degree() as i64;
    let floor = terms
        .iter()
        .skip(1)
        .map(|t| {
            let num = t.coeff_degree() as i64 - a1;
            let den = p1 - t.base_degree() as i64;
            num.div_euclid(den) + 1
        })
        .max()
        .unwrap_or(1);
    floor.max(1).max(exponent_base as i64) as u64
}

#[derive(Serialize, Deserialize)]
struct LeftTermJson {
    a: Polynomial,
    p: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct RightTermJson {
    b: Polynomial,
    q: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    left: Vec<LeftTermJson>,
    right: Vec<RightTermJson>,
    #[serde(default = "default_base")]
    exponent_base: u64,
}

fn default_base() -> u64 {
    1
}

impl PowerSumSystem {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SystemJson = serde_json::from_str(text)?;
        PowerSumSystem::new(
            raw.left.into_iter().map(|t| Term::new(t.a, t.p)).collect(),
            raw.right.into_iter().map(|t| Term::new(t.b, t.q)).collect(),
            raw.exponent_base,
        )
    }

    pub fn to_json(&self) -> String {
        let raw = SystemJson {
            left: self
                .left
                .iter()
                .map(|t| LeftTermJson {
                    a: t.coeff.clone(),
                    p: t.base.clone(),
                })
                .collect(),
            right: self
                .right
                .iter()
                .map(|t| RightTermJson {
                    b: t.coeff.clone(),
                    q: t.base.clone(),
                })
                .collect(),
            exponent_base: self.exponent_base,
        };
        serde_json::to_string_pretty(&raw).expect("system serializes")
    }
}
