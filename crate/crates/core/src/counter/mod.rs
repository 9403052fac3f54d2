//! Certified counting of `A_d = #{(n,m) : 0 ≤ D(n,m) ≤ d}`.
//!
//! The exponent quadrant splits into four regions, with `N`, `M` the dominance
//! thresholds and `Rₙ = ⌊(d − deg a₁)/deg p₁⌋`, `Rₘ = ⌊(d − deg b₁)/deg q₁⌋`:
//!
//! * the rectangle `N ≤ n ≤ Rₙ`, `M ≤ m ≤ Rₘ`, where every pair counts except
//!   zero sums on the degenerate line;
//! * the strip `n < N` (all `m`), and the strip `m < M` with `n ≥ N`, where
//!   pairs are evaluated one by one up to the last `m` (resp. `n`) that could
//!   still qualify;
//! * outside the rectangle with `n ≥ N`, `m ≥ M`: off the degenerate line the
//!   larger side exceeds `d`, so only line pairs can count, and those satisfy
//!   `min(n,m) ≤ 2·C_BM / min deg` by the unit-equation height bound.
//!
//! Boundaries are exact integer floors; the rectangle is closed on both ends.

pub(crate) mod bm;
mod eval;

pub use bm::BMContext;
pub use eval::{d_value_expanded, Evaluator};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Side};
use crate::poly::{format_rational, ExtDegree, Polynomial, Rational, DEFAULT_FACTOR_CAP};
use crate::power_sum::{DominantDegrees, PowerSumSystem, Term};

/// Resource caps shared by the counters and the factorization paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest coefficient (numerator plus denominator bits) the top-down
    /// evaluator may produce before giving up.
    pub coeff_budget_bits: u64,
    pub factor_degree_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            coeff_budget_bits: 1 << 24,
            factor_degree_cap: DEFAULT_FACTOR_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub a_d: u64,
    pub rectangle_count: u64,
    pub small_n_strip: u64,
    pub small_m_strip: u64,
    /// Counted pairs on the degenerate line outside the rectangle, as `(n, m, D)`.
    pub line_pairs_counted: Vec<(u64, u64, u64)>,
    /// Visited pairs whose sum is the zero polynomial.
    pub zero_sum_pairs: Vec<(u64, u64)>,
    pub d: u64,
    pub certified: bool,
}

impl CountReport {
    fn empty(d: u64) -> Self {
        CountReport {
            a_d: 0,
            rectangle_count: 0,
            small_n_strip: 0,
            small_m_strip: 0,
            line_pairs_counted: Vec::new(),
            zero_sum_pairs: Vec::new(),
            d,
            certified: false,
        }
    }
}

/// `D(n,m)` for a single pair; rejects exponents below the system's base.
pub fn d_value(sys: &PowerSumSystem, n: u64, m: u64, limits: &Limits) -> Result<ExtDegree> {
    check_exponents(sys, n, m)?;
    Evaluator::new(sys, limits).d_value(n, m)
}

fn check_exponents(sys: &PowerSumSystem, n: u64, m: u64) -> Result<()> {
    let base = sys.exponent_base();
    if n < base || m < base {
        return Err(Error::InvalidConfig(format!(
            "exponents must be at least {base}, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

/// Solutions of `deg a₁ + n·deg p₁ = deg b₁ + m·deg q₁` with
/// `base ≤ n ≤ n_cap` and `m ≥ base`, solved as a congruence in `n`.
pub fn line_pairs(sys: &PowerSumSystem, n_cap: u64) -> Vec<(u64, u64)> {
    let dd = sys.dominant_degrees();
    let base = sys.exponent_base();
    let (p, q) = (dd.p1 as i64, dd.q1 as i64);
    let c = dd.b1 as i64 - dd.a1 as i64;
    let g = p.gcd(&q);
    if c % g != 0 {
        return Vec::new();
    }
    let (p_red, q_red, c_red) = (p / g, q / g, c / g);
    // n ≡ c_red · p_red⁻¹ (mod q_red)
    let inv = p_red.extended_gcd(&q_red).x;
    let n0 = (c_red * inv).mod_floor(&q_red);
    let start = if n0 >= base as i64 {
        n0
    } else {
        n0 + (base as i64 - n0 + q_red - 1) / q_red * q_red
    };
    let mut out = Vec::new();
    let mut n = start;
    while n <= n_cap as i64 {
        let m = (dd.a1 as i64 + n * p - dd.b1 as i64) / q;
        if m >= base as i64 {
            out.push((n as u64, m as u64));
        }
        n += q_red;
    }
    out
}

/// Region boundaries for one `(system, d)`.
struct Geometry {
    base: u64,
    n0: u64,
    m0: u64,
    rn: i64,
    rm: i64,
    dd: DominantDegrees,
    cutoff: u64,
}

impl Geometry {
    fn new(sys: &PowerSumSystem, d: u64) -> Self {
        let t = sys.dominance_thresholds();
        let dd = sys.dominant_degrees();
        Geometry {
            base: sys.exponent_base(),
            n0: t.n,
            m0: t.m,
            rn: (d as i64 - dd.a1 as i64).div_euclid(dd.p1 as i64),
            rm: (d as i64 - dd.b1 as i64).div_euclid(dd.q1 as i64),
            dd,
            cutoff: BMContext::from_system(sys, d).line_cutoff(),
        }
    }

    fn in_rectangle(&self, n: u64, m: u64) -> bool {
        n >= self.n0 && m >= self.m0 && n as i64 <= self.rn && m as i64 <= self.rm
    }

    /// The `m ≥ M` whose closed-form right degree equals `e`, if any.
    fn matching_m(&self, e: ExtDegree) -> Option<u64> {
        let e = e.finite()?;
        let diff = e.checked_sub(self.dd.b1)?;
        (diff % self.dd.q1 == 0)
            .then_some(diff / self.dd.q1)
            .filter(|&m| m >= self.m0)
    }

    fn matching_n(&self, e: ExtDegree) -> Option<u64> {
        let e = e.finite()?;
        let diff = e.checked_sub(self.dd.a1)?;
        (diff % self.dd.p1 == 0)
            .then_some(diff / self.dd.p1)
            .filter(|&n| n >= self.n0)
    }

    /// Last `m` to visit in the row `n < N`.
    fn strip_row_end(&self, left: ExtDegree) -> i64 {
        let mut end = (self.m0 as i64 - 1).max(self.rm);
        if let Some(m) = self.matching_m(left) {
            end = end.max(m as i64);
        }
        end
    }

    /// Last `n` to visit in the column `m < M`.
    fn strip_col_end(&self, right: ExtDegree) -> i64 {
        let mut end = self.rn;
        if let Some(n) = self.matching_n(right) {
            end = end.max(n as i64);
        }
        end
    }

    /// Degenerate-line pairs outside the rectangle within the height cutoff.
    fn case4_pairs(&self, sys: &PowerSumSystem) -> Vec<(u64, u64)> {
        let (p, q) = (self.dd.p1 as i64, self.dd.q1 as i64);
        let via_m = (self.cutoff as i64 * q + self.dd.b1 as i64 - self.dd.a1 as i64).div_euclid(p);
        let n_cap = (self.cutoff as i64).max(via_m).max(0) as u64;
        line_pairs(sys, n_cap)
            .into_iter()
            .filter(|&(n, m)| {
                n >= self.n0 && m >= self.m0 && n as i64 > self.rn && n.min(m) <= self.cutoff
            })
            .collect()
    }
}

/// Grid caps that cover every pair which can satisfy `0 ≤ D(n,m) ≤ d`.
pub fn certified_caps(sys: &PowerSumSystem, d: u64) -> (u64, u64) {
    let geo = Geometry::new(sys, d);
    let (mut n_req, mut m_req) = region_caps_of(&geo, sys);
    for (n, m) in geo.case4_pairs(sys) {
        n_req = n_req.max(n);
        m_req = m_req.max(m);
    }
    (n_req, m_req)
}

/// Caps covering the rectangle and both strips, but not the line pairs
/// beyond the rectangle.
pub fn region_caps(sys: &PowerSumSystem, d: u64) -> (u64, u64) {
    region_caps_of(&Geometry::new(sys, d), sys)
}

fn region_caps_of(geo: &Geometry, sys: &PowerSumSystem) -> (u64, u64) {
    let base = geo.base as i64;
    let mut n_req = (geo.n0 as i64 - 1).max(geo.rn).max(base);
    let mut m_req = (geo.m0 as i64 - 1).max(geo.rm).max(base);
    for n in geo.base..geo.n0 {
        m_req = m_req.max(geo.strip_row_end(sys.left_degree(n)));
    }
    for m in geo.base..geo.m0 {
        n_req = n_req.max(geo.strip_col_end(sys.right_degree(m)));
    }
    (n_req as u64, m_req as u64)
}

/// Evaluated pairs of one strip row or column.
struct Visit {
    counted: u64,
    zeros: Vec<(u64, u64)>,
}

fn visit(ev: &Evaluator, pairs: impl Iterator<Item = (u64, u64)>, d: u64) -> Result<Visit> {
    let mut out = Visit {
        counted: 0,
        zeros: Vec::new(),
    };
    for (n, m) in pairs {
        let dv = ev.d_value(n, m)?;
        if dv.in_range(d) {
            out.counted += 1;
        } else if dv.is_neg_infinity() {
            out.zeros.push((n, m));
        }
    }
    Ok(out)
}

/// Exact `A_d` by region decomposition; never expands pairs off the
/// degenerate line.
pub fn count_certified(sys: &PowerSumSystem, d: u64, limits: &Limits) -> Result<CountReport> {
    let ev = Evaluator::new(sys, limits);
    let geo = Geometry::new(sys, d);
    let mut report = CountReport::empty(d);
    let mut zeros = Vec::new();

    // Rectangle: all pairs minus zero sums on the line.
    if geo.rn >= geo.n0 as i64 && geo.rm >= geo.m0 as i64 {
        let width = (geo.rn - geo.n0 as i64 + 1) as u64;
        let height = (geo.rm - geo.m0 as i64 + 1) as u64;
        let on_line: Vec<(u64, u64)> = line_pairs(sys, geo.rn as u64)
            .into_iter()
            .filter(|&(n, m)| geo.in_rectangle(n, m))
            .collect();
        let values = on_line
            .par_iter()
            .map(|&(n, m)| ev.d_value(n, m))
            .collect::<Result<Vec<_>>>()?;
        let mut rect_zeros: Vec<(u64, u64)> = on_line
            .iter()
            .zip(&values)
            .filter(|(_, v)| v.is_neg_infinity())
            .map(|(pair, _)| *pair)
            .collect();
        report.rectangle_count = width * height - rect_zeros.len() as u64;
        zeros.append(&mut rect_zeros);
    }

    // Strip n < N, every m up to the last one that can qualify.
    let rows = (geo.base..geo.n0)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let end = geo.strip_row_end(ev.side_degree(Side::Left, n));
            let ms = (geo.base as i64..=end).map(move |m| (n, m as u64));
            visit(&ev, ms, d)
        })
        .collect::<Result<Vec<_>>>()?;
    for row in rows {
        report.small_n_strip += row.counted;
        zeros.extend(row.zeros);
    }

    // Strip m < M with n ≥ N.
    let cols = (geo.base..geo.m0)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            let end = geo.strip_col_end(ev.side_degree(Side::Right, m));
            let ns = (geo.n0 as i64..=end).map(move |n| (n as u64, m));
            visit(&ev, ns, d)
        })
        .collect::<Result<Vec<_>>>()?;
    for col in cols {
        report.small_m_strip += col.counted;
        zeros.extend(col.zeros);
    }

    // Off the line outside the rectangle nothing counts; on the line, the
    // height bound limits the search.
    let candidates = geo.case4_pairs(sys);
    let values = candidates
        .par_iter()
        .map(|&(n, m)| ev.d_value(n, m))
        .collect::<Result<Vec<_>>>()?;
    for (&(n, m), v) in candidates.iter().zip(values) {
        match v {
            ExtDegree::Finite(e) if e <= d => report.line_pairs_counted.push((n, m, e)),
            ExtDegree::NegInfinity => zeros.push((n, m)),
            _ => {}
        }
    }

    zeros.sort_unstable();
    report.zero_sum_pairs = zeros;
    report.a_d = report.rectangle_count
        + report.small_n_strip
        + report.small_m_strip
        + report.line_pairs_counted.len() as u64;
    report.certified = true;
    Ok(report)
}

/// Brute force over `[base, n_max] × [base, m_max]`, expanding every sum.
///
/// `certified` is set when the grid covers [`certified_caps`].
pub fn count_naive(sys: &PowerSumSystem, d: u64, n_max: u64, m_max: u64) -> CountReport {
    let base = sys.exponent_base();
    let mut report = CountReport::empty(d);
    if n_max < base || m_max < base {
        return report;
    }
    let lefts = expansions(sys.left(), base, n_max);
    let rights = expansions(sys.right(), base, m_max);
    let rows: Vec<Vec<(u64, u64, ExtDegree)>> = lefts
        .par_iter()
        .enumerate()
        .map(|(i, left)| {
            rights
                .iter()
                .enumerate()
                .map(|(j, right)| (base + i as u64, base + j as u64, sum_degree(left, right)))
                .collect()
        })
        .collect();

    let geo = Geometry::new(sys, d);
    for (n, m, dv) in rows.into_iter().flatten() {
        match dv {
            ExtDegree::NegInfinity => report.zero_sum_pairs.push((n, m)),
            ExtDegree::Finite(e) if e <= d => {
                if n < geo.n0 {
                    report.small_n_strip += 1;
                } else if m < geo.m0 {
                    report.small_m_strip += 1;
                } else if geo.in_rectangle(n, m) {
                    report.rectangle_count += 1;
                } else {
                    report.line_pairs_counted.push((n, m, e));
                }
            }
            ExtDegree::Finite(_) => {}
        }
    }
    report.a_d = report.rectangle_count
        + report.small_n_strip
        + report.small_m_strip
        + report.line_pairs_counted.len() as u64;
    let (n_req, m_req) = certified_caps(sys, d);
    report.certified = n_max >= n_req && m_max >= m_req;
    report
}

/// `Σ aᵢ pᵢⁿ` for `n` in `from..=to`, with powers built one step at a time.
fn expansions(terms: &[Term], from: u64, to: u64) -> Vec<Polynomial> {
    let mut powers: Vec<Polynomial> = terms
        .iter()
        .map(|t| t.base.pow(from).expect("base is nonzero"))
        .collect();
    let mut out = Vec::with_capacity((to - from + 1) as usize);
    for _ in from..=to {
        let sum = terms
            .iter()
            .zip(&powers)
            .fold(Polynomial::zero(), |acc, (t, pw)| &acc + &(&t.coeff * pw));
        out.push(sum);
        for (pw, t) in powers.iter_mut().zip(terms) {
            *pw = &*pw * &t.base;
        }
    }
    out
}

/// `deg(f + g)` read off the expanded coefficients, highest first.
fn sum_degree(f: &Polynomial, g: &Polynomial) -> ExtDegree {
    let top = f.coeffs().len().max(g.coeffs().len());
    (0..top)
        .rev()
        .find(|&i| f.coeff(i) + g.coeff(i) != Rational::zero())
        .map_or(ExtDegree::NegInfinity, |i| ExtDegree::Finite(i as u64))
}

/// Lower and upper bounds on `A_d` valid once `d ≥ d_min_valid`:
///
/// `(Rₙ − 1 − N)(Rₘ − 1 − M) − (Rₙ − N + 1) ≤ A_d ≤ Rₙ·Rₘ + 4·C_BM`
///
/// with the unrounded `Rₙ = (d − deg a₁)/deg p₁`, `Rₘ = (d − deg b₁)/deg q₁`.
pub fn sandwich_bounds(sys: &PowerSumSystem, d: u64) -> (Rational, Rational) {
    let dd = sys.dominant_degrees();
    let t = sys.dominance_thresholds();
    let r = |x: i64| Rational::from_integer(BigInt::from(x));
    let rn = Rational::new(BigInt::from(d as i64 - dd.a1 as i64), BigInt::from(dd.p1));
    let rm = Rational::new(BigInt::from(d as i64 - dd.b1 as i64), BigInt::from(dd.q1));
    let (n0, m0) = (r(t.n as i64), r(t.m as i64));
    let lower = (&rn - r(1) - &n0) * (&rm - r(1) - &m0) - (&rn - &n0 + r(1));
    let upper = &rn * &rm + r(4 * BMContext::from_system(sys, d).c_bm() as i64);
    (lower, upper)
}

/// One row of the `A_d` versus `d²/(deg p₁·deg q₁)` comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesRow {
    pub d: u64,
    pub a_d: u64,
    pub target: Rational,
    pub ratio: Rational,
}

impl SeriesRow {
    pub fn ratio_decimal(&self) -> String {
        decimal_significant(&self.ratio, 10)
    }

    pub fn csv_header() -> &'static str {
        "d,A_d,target,ratio,ratio_decimal"
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.d,
            self.a_d,
            format_rational(&self.target),
            format_rational(&self.ratio),
            self.ratio_decimal()
        )
    }
}

impl Serialize for SeriesRow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SeriesRow", 5)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("a_d", &self.a_d)?;
        st.serialize_field("target", &format_rational(&self.target))?;
        st.serialize_field("ratio", &format_rational(&self.ratio))?;
        st.serialize_field("ratio_decimal", &self.ratio_decimal())?;
        st.end()
    }
}

pub fn asymptotic_series(
    sys: &PowerSumSystem,
    d_list: &[u64],
    limits: &Limits,
) -> Result<Vec<SeriesRow>> {
    if d_list.is_empty() {
        return Err(Error::InvalidConfig("empty d list".into()));
    }
    if d_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig(
            "d list must be strictly ascending".into(),
        ));
    }
    if d_list[0] == 0 {
        return Err(Error::InvalidConfig(
            "d must be positive for a ratio".into(),
        ));
    }
    let dd = sys.dominant_degrees();
    let pq = BigInt::from(dd.p1 * dd.q1);
    d_list
        .iter()
        .map(|&d| {
            let a_d = count_certified(sys, d, limits)?.a_d;
            let d2 = BigInt::from(d) * BigInt::from(d);
            Ok(SeriesRow {
                d,
                a_d,
                target: Rational::new(d2.clone(), pq.clone()),
                ratio: Rational::new(BigInt::from(a_d) * &pq, d2),
            })
        })
        .collect()
}

/// Round half away from zero to `sig` significant digits.
pub fn decimal_significant(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let abs = r.abs();
    let ten = BigInt::from(10);
    // exponent e with 10^e ≤ abs < 10^(e+1)
    let mut e: i64 =
        (abs.numer().to_string().len() as i64) - (abs.denom().to_string().len() as i64);
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::from(1), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while abs < pow10(e) {
        e -= 1;
    }
    while abs >= pow10(e + 1) {
        e += 1;
    }
    let scaled = &abs * pow10(sig as i64 - 1 - e);
    let mut digits = (scaled + Rational::new(BigInt::from(1), BigInt::from(2)))
        .floor()
        .to_integer();
    if digits >= num_traits::pow(ten.clone(), sig) {
        digits /= &ten;
        e += 1;
    }
    let s = digits.to_string();
    let body = if e >= 0 {
        let int_len = (e + 1) as usize;
        if int_len >= s.len() {
            format!("{s}{}", "0".repeat(int_len - s.len()))
        } else {
            format!("{}.{}", &s[..int_len], &s[int_len..])
        }
    } else {
        format!("0.{}{s}", "0".repeat((-e - 1) as usize))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
