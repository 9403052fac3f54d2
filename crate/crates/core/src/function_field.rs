//! The rational function field ℚ(x) as a stand-in for ℂ(x).
//!
//! A finite place is a monic irreducible `π ∈ ℚ[x]`; it bundles the `deg π`
//! conjugate complex points, so sums over places are weighted by `deg π`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::counter::bm::binom2;
use crate::error::{Error, Result};
use crate::poly::{factor, gcd, Polynomial, Rational, DEFAULT_FACTOR_CAP};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(Polynomial),
    Infinity,
}

impl Place {
    /// Number of complex points bundled by this place.
    pub fn degree(&self) -> u64 {
        match self {
            Place::Finite(pi) => pi.deg() as u64,
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(pi) => write!(f, "{pi}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A reduced fraction `num/den` with `den` monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd(&num, &den)?;
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lc = den.leading_coeff()?.clone();
        Ok(RationalFunction {
            num: num.scale(&(Rational::from_integer(1.into()) / &lc)),
            den: den.monic(),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_polynomial(Polynomial::one())
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn add(&self, g: &Self) -> Self {
        Self::new(
            &(&self.num * &g.den) + &(&g.num * &self.den),
            &self.den * &g.den,
        )
        .expect("product of nonzero denominators")
    }

    pub fn sub(&self, g: &Self) -> Self {
        self.add(&g.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, g: &Self) -> Self {
        Self::new(&self.num * &g.num, &self.den * &g.den).expect("product of nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroFunction("inverse"));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, g: &Self) -> Result<Self> {
        Ok(self.mul(&g.inv()?))
    }

    /// `fⁿ` for any integer `n`; `0ⁿ` with `n ≤ 0` is an error.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        if n == 0 && self.is_zero() {
            return Err(Error::ZeroToZero);
        }
        let e = n.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(e)?,
            den: base.den.pow(e)?,
        })
    }

    /// `A(f)` for a polynomial `A`, by Horner's rule.
    pub fn compose_into(&self, a: &Polynomial) -> Self {
        a.coeffs().iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(self).add(&Self::constant(c.clone()))
        })
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        let d = self.den.eval(t);
        if num_traits::Zero::is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(t) / d)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: Polynomial,
            #[serde(default = "Polynomial::one")]
            den: Polynomial,
        }
        let raw = Raw::deserialize(d)?;
        RationalFunction::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `H(f)`, infinite exactly for the zero function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Finite(u64),
    Infinite,
}

impl Height {
    pub fn finite(self) -> Option<u64> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Infinite => None,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Height {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Height::Finite(h) => s.serialize_u64(*h),
            Height::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Height {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(h) => Ok(Height::Finite(h)),
            Raw::Str(s) if s == "inf" => Ok(Height::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad height {s:?}"))),
        }
    }
}

/// Multiplicity of `pi` in the nonzero polynomial `p`.
fn multiplicity(p: &Polynomial, pi: &Polynomial) -> i64 {
    let mut count = 0;
    let mut rest = p.clone();
    loop {
        let (q, r) = rest.div_rem(pi).expect("place polynomial is nonzero");
        if !r.is_zero() {
            return count;
        }
        rest = q;
        count += 1;
    }
}

/// `ν_v(f)`. Finite places are trusted to be monic irreducible.
pub fn valuation(f: &RationalFunction, v: &Place) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroFunction("valuation"));
    }
    Ok(match v {
        Place::Finite(pi) => multiplicity(&f.num, pi) - multiplicity(&f.den, pi),
        Place::Infinity => f.den.deg() as i64 - f.num.deg() as i64,
    })
}

pub fn places_of(f: &RationalFunction) -> Result<Vec<(Place, i64)>> {
    places_of_capped(f, DEFAULT_FACTOR_CAP)
}

/// Every place where `f` has a zero or pole, sorted, with `∞` last.
pub fn places_of_capped(f: &RationalFunction, cap: usize) -> Result<Vec<(Place, i64)>> {
    if f.is_zero() {
        return Err(Error::ZeroFunction("places"));
    }
    let mut out = Vec::new();
    for (pi, e) in factor(&f.num, cap)?.factors {
        out.push((Place::Finite(pi), e as i64));
    }
    if !f.den.is_one() {
        for (pi, e) in factor(&f.den, cap)?.factors {
            out.push((Place::Finite(pi), -(e as i64)));
        }
    }
    out.sort();
    let at_inf = valuation(f, &Place::Infinity)?;
    if at_inf != 0 {
        out.push((Place::Infinity, at_inf));
    }
    Ok(out)
}

/// `Σ deg(v)·ν_v(f)`, which is zero for every nonzero `f`.
pub fn sum_formula_check(f: &RationalFunction) -> Result<i64> {
    Ok(places_of(f)?
        .iter()
        .map(|(v, e)| v.degree() as i64 * e)
        .sum())
}

pub fn height(f: &RationalFunction) -> Result<Height> {
    height_capped(f, DEFAULT_FACTOR_CAP)
}

/// `Σ deg(v)·max(0, ν_v(f))` over the places of `f`.
pub fn height_capped(f: &RationalFunction, cap: usize) -> Result<Height> {
    if f.is_zero() {
        return Ok(Height::Infinite);
    }
    let h = places_of_capped(f, cap)?
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| v.degree() * *e as u64)
        .sum();
    Ok(Height::Finite(h))
}

/// `max(deg num, deg den)`.
pub fn height_fast(f: &RationalFunction) -> Height {
    if f.is_zero() {
        Height::Infinite
    } else {
        Height::Finite(f.num.deg().max(f.den.deg()) as u64)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SUnitSet {
    pub places: BTreeSet<Place>,
}

impl SUnitSet {
    pub fn new(places: impl IntoIterator<Item = Place>) -> Self {
        SUnitSet {
            places: places.into_iter().collect(),
        }
    }

    pub fn contains(&self, v: &Place) -> bool {
        self.places.contains(v)
    }

    /// Number of complex points: `Σ deg π`, plus one for `∞`.
    pub fn point_count(&self) -> u64 {
        self.places.iter().map(Place::degree).sum()
    }
}

pub fn is_s_unit(f: &RationalFunction, s: &SUnitSet) -> Result<bool> {
    Ok(places_of(f)?.iter().all(|(v, _)| s.contains(v)))
}

/// The smallest `S` for which every function in `fs` is an `S`-unit.
pub fn s_unit_set_for(fs: &[RationalFunction]) -> Result<SUnitSet> {
    let mut places = BTreeSet::new();
    for f in fs {
        places.extend(places_of(f)?.into_iter().map(|(v, _)| v));
    }
    Ok(SUnitSet { places })
}

/// `binom(k,2)·(|S| + max(0, 2g − 2))`.
pub fn bm_bound(k: u64, s_count: u64, genus: u64) -> u64 {
    binom2(k) * (s_count + (2 * genus).saturating_sub(2))
}

/// Largest list for which proper subsums are checked exhaustively.
pub const SUBSUM_CHECK_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsumVerdict {
    Checked(bool),
    Unchecked,
}

impl Serialize for SubsumVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SubsumVerdict::Checked(b) => s.serialize_bool(*b),
            SubsumVerdict::Unchecked => s.serialize_str("unchecked"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BMReport {
    pub s_units: bool,
    pub sums_to_zero: bool,
    pub no_vanishing_subsum: SubsumVerdict,
    pub max_height: Height,
    pub bound: u64,
    pub bound_holds: bool,
}

impl BMReport {
    /// All hypotheses hold and so does the bound.
    pub fn passes(&self) -> bool {
        self.s_units
            && self.sums_to_zero
            && self.no_vanishing_subsum == SubsumVerdict::Checked(true)
            && self.bound_holds
    }
}

/// Check `1 + u₁ + … + u_k = 0` against the height bound.
///
/// Failed hypotheses are reported in the verdict fields rather than as
/// errors; only an empty list or an infeasible factorization is an error.
pub fn verify_bm(units: &[RationalFunction], s: &SUnitSet, genus: u64) -> Result<BMReport> {
    if units.is_empty() {
        return Err(Error::InvalidConfig("unit list is empty".into()));
    }
    let mut s_units = true;
    for u in units {
        if u.is_zero() || !is_s_unit(u, s)? {
            s_units = false;
        }
    }
    let terms: Vec<RationalFunction> = std::iter::once(RationalFunction::one())
        .chain(units.iter().cloned())
        .collect();
    let total = terms
        .iter()
        .fold(RationalFunction::zero(), |acc, t| acc.add(t));
    let no_vanishing_subsum = if units.len() > SUBSUM_CHECK_LIMIT {
        SubsumVerdict::Unchecked
    } else {
        let full = (1u32 << terms.len()) - 1;
        let vanishing = (1..full).any(|mask| {
            terms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(RationalFunction::zero(), |acc, (_, t)| acc.add(t))
                .is_zero()
        });
        SubsumVerdict::Checked(!vanishing)
    };
    let max_height = units.iter().map(height_fast).max().expect("nonempty");
    let bound = bm_bound(units.len() as u64, s.point_count(), genus);
    Ok(BMReport {
        s_units,
        sums_to_zero: total.is_zero(),
        no_vanishing_subsum,
        max_height,
        bound,
        bound_holds: max_height <= Height::Finite(bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    fn fin(c: &[i64]) -> Place {
        Place::Finite(p(c))
    }

    #[test]
    fn construction_reduces() {
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        assert_eq!(rf(&[0, 2], &[2]).num(), &p(&[0, 1]));
        assert!(rf(&[0], &[0, 1]).is_zero());
        assert_eq!(rf(&[0], &[0, 1]).den(), &Polynomial::one());
        let f = rf(&[1], &[0, 2]);
        assert!(f.den().is_monic());
        assert_eq!(
            f.num(),
            &Polynomial::constant(Rational::new(1.into(), 2.into()))
        );
        assert!(RationalFunction::new(p(&[1]), Polynomial::zero()).is_err());
    }

    #[test]
    fn valuation_examples() {
        let f = rf(&[1, 0, 1], &[0, 1]);
        assert_eq!(valuation(&f, &fin(&[0, 1])).unwrap(), -1);
        assert_eq!(valuation(&f, &Place::Infinity).unwrap(), -1);
        let c = rf(&[7], &[1]);
        assert_eq!(valuation(&c, &fin(&[0, 1])).unwrap(), 0);
        assert_eq!(valuation(&c, &Place::Infinity).unwrap(), 0);
        assert!(valuation(&RationalFunction::zero(), &Place::Infinity).is_err());
    }

    #[test]
    fn places_examples() {
        let f = rf(&[1, 0, 1], &[0, 1]);
        assert_eq!(
            places_of(&f).unwrap(),
            vec![
                (fin(&[0, 1]), -1),
                (fin(&[1, 0, 1]), 1),
                (Place::Infinity, -1)
            ]
        );
        assert!(places_of(&rf(&[5], &[1])).unwrap().is_empty());
        assert_eq!(
            places_of(&rf(&[-3, 1], &[1])).unwrap(),
            vec![(fin(&[-3, 1]), 1), (Place::Infinity, -1)]
        );
    }

    #[test]
    fn sum_formula_examples() {
        assert_eq!(sum_formula_check(&rf(&[1, 0, 1], &[0, 1])).unwrap(), 0);
        assert_eq!(
            sum_formula_check(&rf(&[0, 0, 0, 0, 0, 1], &[1])).unwrap(),
            0
        );
        assert_eq!(sum_formula_check(&rf(&[-1, 1], &[-2, 1])).unwrap(), 0);
    }

    #[test]
    fn height_examples() {
        let f = rf(&[1, 0, 1], &[0, 1]);
        assert_eq!(height(&f).unwrap(), Height::Finite(2));
        assert_eq!(height_fast(&f), Height::Finite(2));
        assert_eq!(height(&rf(&[-4], &[1])).unwrap(), Height::Finite(0));
        assert_eq!(height(&RationalFunction::zero()).unwrap(), Height::Infinite);
        assert!(Height::Infinite > Height::Finite(u64::MAX));
        assert_eq!(serde_json::to_string(&Height::Infinite).unwrap(), "\"inf\"");
        assert_eq!(
            serde_json::from_str::<Height>("7").unwrap(),
            Height::Finite(7)
        );
    }

    #[test]
    fn s_unit_examples() {
        let s = SUnitSet::new([fin(&[0, 1]), fin(&[-1, 1])]);
        assert!(is_s_unit(&rf(&[0, 1], &[-1, 1]), &s).unwrap());
        assert!(!is_s_unit(&rf(&[0, 0, 1], &[1]), &SUnitSet::new([fin(&[0, 1])])).unwrap());
        assert!(is_s_unit(&rf(&[3], &[1]), &SUnitSet::default()).unwrap());
    }

    #[test]
    fn s_unit_set_examples() {
        let s = s_unit_set_for(&[rf(&[0, 1], &[1]), rf(&[1, 1], &[1])]).unwrap();
        assert_eq!(
            s,
            SUnitSet::new([fin(&[0, 1]), fin(&[1, 1]), Place::Infinity])
        );
        assert_eq!(s.point_count(), 3);
        assert!(s_unit_set_for(&[rf(&[2], &[1])]).unwrap().places.is_empty());
        let s = s_unit_set_for(&[rf(&[1, 0, 1], &[1])]).unwrap();
        assert_eq!(s.point_count(), 3);
    }

    #[test]
    fn bm_bound_examples() {
        assert_eq!(bm_bound(2, 3, 0), 3);
        assert_eq!(bm_bound(1, 40, 5), 0);
        assert_eq!(bm_bound(3, 5, 1), bm_bound(3, 5, 0));
        assert_eq!(bm_bound(3, 5, 2), bm_bound(3, 5, 0) + 2 * 3);
    }

    #[test]
    fn verify_bm_examples() {
        let units = [rf(&[0, 1], &[1]), rf(&[-1, -1], &[1])];
        let s = SUnitSet::new([fin(&[0, 1]), fin(&[1, 1]), Place::Infinity]);
        let r = verify_bm(&units, &s, 0).unwrap();
        assert!(r.passes());
        assert_eq!((r.max_height, r.bound), (Height::Finite(1), 3));

        let r = verify_bm(&[rf(&[-1], &[1])], &SUnitSet::default(), 0).unwrap();
        assert!(r.passes());
        assert_eq!((r.max_height, r.bound), (Height::Finite(0), 0));

        let units = [rf(&[0, 1], &[1]), rf(&[0, -1], &[1]), rf(&[-1], &[1])];
        let r = verify_bm(&units, &s, 0).unwrap();
        assert!(r.sums_to_zero);
        assert_eq!(r.no_vanishing_subsum, SubsumVerdict::Checked(false));
        assert!(!r.passes());
    }

    #[test]
    fn verify_bm_json_shape() {
        let units = [rf(&[0, 1], &[1]), rf(&[-1, -1], &[1])];
        let s = s_unit_set_for(&units).unwrap();
        let v = serde_json::to_value(verify_bm(&units, &s, 0).unwrap()).unwrap();
        assert_eq!(v["no_vanishing_subsum"], serde_json::json!(true));
        assert_eq!(v["max_height"], serde_json::json!(1));
        assert_eq!(v["bound"], serde_json::json!(3));
    }

    #[test]
    fn arithmetic() {
        let f = rf(&[1, 0, 1], &[0, 1]);
        let g = rf(&[0, 1], &[1, 1]);
        assert_eq!(f.mul(&f.inv().unwrap()), RationalFunction::one());
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.pow(-2).unwrap(), f.mul(&f).inv().unwrap());
        assert_eq!(
            g.compose_into(&p(&[1, 0, 1])),
            g.mul(&g).add(&RationalFunction::one())
        );
        assert_eq!(f.eval(&int(2)).unwrap(), Rational::new(5.into(), 2.into()));
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(RationalFunction::from_json(&json).unwrap(), f);
    }
}
