//! Exact Laurent polynomials in `q` with rational coefficients.
//!
//! [`LaurentPoly`] is the scalar ring for every computation in the crate.
//! Values are kept canonical (sorted by exponent, no zero coefficients), so
//! structural equality is algebraic equality.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds a rational from an integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `n`, `-n` or `n/m`.
pub fn parse_rational(src: &str) -> Result<Rational> {
    let s = src.trim();
    let bad = || Error::Invalid(format!("`{src}` is not a rational number"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// `base^exp` for a nonzero rational base and any integer exponent.
pub fn rat_pow(base: &Rational, exp: i32) -> Rational {
    let p = num_traits::pow::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

/// A Laurent polynomial `sum c_k q^k` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, Rational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i32) -> Self {
        Self::monomial(Rational::one(), k)
    }

    pub fn monomial(c: Rational, k: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(k, c)] }
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    /// Collects `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let mut acc: BTreeMap<i32, Rational> = BTreeMap::new();
        for (k, c) in terms {
            *acc.entry(k).or_insert_with(Rational::zero) += c;
        }
        Self { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.terms
            .binary_search_by_key(&k, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|(k, _)| *k)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|(k, _)| *k)
    }

    /// `Some((c, k))` when the value is the single term `c q^k`.
    pub fn as_monomial(&self) -> Option<(&Rational, i32)> {
        match self.terms.as_slice() {
            [(k, c)] => Some((c, *k)),
            _ => None,
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Multiplies by `c q^k`.
    pub fn scale_monomial(&self, c: &Rational, k: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, a)| (e + k, a * c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.scale_monomial(c, 0)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor` in `Q[q, q^-1]`.
    ///
    /// Fails with [`Error::NotDivisible`] when the quotient is not a Laurent
    /// polynomial.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((c, k)) = divisor.as_monomial() {
            return Ok(self.scale_monomial(&c.recip(), -k));
        }
        // Both sides shifted to ordinary polynomials with nonzero constant
        // term; divisibility in the Laurent ring is then polynomial
        // divisibility.
        let (a_lo, a_hi) = (self.min_exp().unwrap(), self.max_exp().unwrap());
        let (b_lo, b_hi) = (divisor.min_exp().unwrap(), divisor.max_exp().unwrap());
        let not_divisible = || Error::NotDivisible { dividend: self.to_string(), divisor: divisor.to_string() };
        let a_deg = (a_hi - a_lo) as usize;
        let b_deg = (b_hi - b_lo) as usize;
        if a_deg < b_deg {
            return Err(not_divisible());
        }
        let mut rem = vec![Rational::zero(); a_deg + 1];
        for (k, c) in &self.terms {
            rem[(k - a_lo) as usize] = c.clone();
        }
        let mut den = vec![Rational::zero(); b_deg + 1];
        for (k, c) in &divisor.terms {
            den[(k - b_lo) as usize] = c.clone();
        }
        let lead = den[b_deg].clone();
        let q_len = a_deg - b_deg + 1;
        let mut quot = vec![Rational::zero(); q_len];
        for i in (0..q_len).rev() {
            let c = &rem[i + b_deg] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in den.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(not_divisible());
        }
        let shift = a_lo - b_lo;
        Ok(Self::from_terms(quot.into_iter().enumerate().map(|(i, c)| (i as i32 + shift, c))))
    }

    /// Substitutes `q := at` exactly.
    pub fn eval(&self, at: &QValue) -> Rational {
        self.terms.iter().map(|(k, c)| c * rat_pow(at.value(), *k)).fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Constant polynomial holding [`LaurentPoly::eval`].
    pub fn specialize(&self, at: &QValue) -> Self {
        Self::constant(self.eval(at))
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

fn merge(a: &[(i32, Rational)], b: &[(i32, Rational)], negate_b: bool) -> Vec<(i32, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |c: &Rational| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0, take_b(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(k, c)| (*k, take_b(c))));
    out
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if let Some((c, k)) = rhs.as_monomial() {
            return self.scale_monomial(c, k);
        }
        if let Some((c, k)) = self.as_monomial() {
            return rhs.scale_monomial(c, k);
        }
        LaurentPoly::from_terms(self.terms.iter().flat_map(|(i, a)| rhs.terms.iter().map(move |(j, b)| (i + j, a * b))))
    }
}

forward_binop!(LaurentPoly, Add, add);
forward_binop!(LaurentPoly, Sub, sub);
forward_binop!(LaurentPoly, Mul, mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

/// Writes `|c| q^k` without sign, e.g. `q^2`, `1/2*q^-3`, `5`.
pub(crate) fn fmt_unsigned_monomial(f: &mut impl fmt::Write, c: &Rational, k: i32) -> fmt::Result {
    let a = c.abs();
    match (k, a.is_one()) {
        (0, _) => write!(f, "{a}"),
        (1, true) => write!(f, "q"),
        (_, true) => write!(f, "q^{k}"),
        (1, false) => write!(f, "{a}*q"),
        (_, false) => write!(f, "{a}*q^{k}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            fmt_unsigned_monomial(f, c, *k)?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::expr::parse_laurent(s)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact evaluation point for `q`; never `0`, `1` or `-1`.
///
/// A rational number other than `0, 1, -1` is not a root of unity, so every
/// standing assumption on `q` holds at a `QValue`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QValue(Rational);

impl QValue {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_zero() || value.abs().is_one() {
            return Err(Error::InvalidQ(value.to_string()));
        }
        Ok(Self(value))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Self::new(rat(num, den))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for QValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }
}

impl Serialize for QValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn q2() -> QValue {
        QValue::from_ratio(2, 1).unwrap()
    }

    #[test]
    fn inverse_monomials() {
        assert_eq!(LaurentPoly::q() * LaurentPoly::q_pow(-1), LaurentPoly::one());
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(lp("q + q^-1") * lp("q - q^-1"), lp("q^2 - q^-2"));
    }

    #[test]
    fn cubic_scalar_expansion() {
        // (q^2 - q^-2)(q - q^-1) expanded by hand.
        let expected =
            LaurentPoly::from_terms([(3, rat_int(1)), (1, rat_int(-1)), (-1, rat_int(-1)), (-3, rat_int(1))]);
        assert_eq!(lp("q^2 - q^-2") * lp("q - q^-1"), expected);
    }

    #[test]
    fn exact_division() {
        assert_eq!(lp("q^2 - 1").div_exact(&lp("q - q^-1")).unwrap(), LaurentPoly::q());
        assert_eq!(lp("q^2 - q^-2").div_exact(&lp("q - q^-1")).unwrap(), lp("q + q^-1"));
        assert!(matches!(lp("q + 1").div_exact(&lp("q - q^-1")), Err(Error::NotDivisible { .. })));
        assert_eq!(lp("q").div_exact(&LaurentPoly::zero()), Err(Error::DivisionByZero));
        assert_eq!(LaurentPoly::zero().div_exact(&lp("q + 3")).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn evaluation() {
        assert_eq!(lp("q^2 - 1").eval(&q2()), rat_int(3));
        assert_eq!(lp("q + q^-1").eval(&q2()), rat(5, 2));
        assert_eq!((lp("q^2 - q^-2") * lp("q - q^-1")).eval(&q2()), rat(45, 8));
    }

    #[test]
    fn qvalue_rejects_roots_of_unity() {
        for bad in ["0", "1", "-1", "2/2"] {
            assert!(bad.parse::<QValue>().is_err(), "{bad}");
        }
        assert!("3/2".parse::<QValue>().is_ok());
        assert!("-5".parse::<QValue>().is_ok());
    }

    #[test]
    fn display_is_ascending() {
        assert_eq!(lp("q^2 - 1 + 1/2*q^-3").to_string(), "1/2*q^-3 - 1 + q^2");
        assert_eq!(lp("-q").to_string(), "-q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lp("-3/4*q^-1 + 2*q").to_string(), "-3/4*q^-1 + 2*q");
    }

    fn arb_lp() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..6, -5i64..5, 1i64..4), 0..5)
            .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(k, n, d)| (k, rat(n, d)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_lp(), b in arb_lp(), c in arb_lp()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn canonical_form(a in arb_lp(), b in arb_lp()) {
            let p = &a * &b - &b;
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
            let exps: Vec<i32> = p.terms().map(|(k, _)| k).collect();
            prop_assert!(exps.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn division_inverts_multiplication(a in arb_lp(), b in arb_lp()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in arb_lp(), b in arb_lp(), n in 2i64..5, d in 1i64..4) {
            prop_assume!(n != d);
            let at = QValue::from_ratio(n, d).unwrap();
            prop_assert_eq!((&a * &b).eval(&at), a.eval(&at) * b.eval(&at));
            prop_assert_eq!((&a + &b).eval(&at), a.eval(&at) + b.eval(&at));
        }

        #[test]
        fn display_round_trips(a in arb_lp()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
