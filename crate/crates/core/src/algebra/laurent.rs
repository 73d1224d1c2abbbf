//! Finite Laurent expressions in `t = q^{-s}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::cyclotomic::{lcm, CycNumber};
use crate::error::{Error, Result};

/// A number of the form `n/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger(0);
    pub const HALF: HalfInteger = HalfInteger(1);

    pub fn from_halves(halves: i64) -> Self {
        HalfInteger(halves)
    }

    pub fn integer(k: i64) -> Self {
        HalfInteger(2 * k)
    }

    /// `num/den`, accepted only if twice it is an integer.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 || (2 * num) % den != 0 {
            return Err(Error::Parse(format!("{num}/{den} is not a half-integer")));
        }
        Ok(HalfInteger(2 * num / den))
    }

    pub fn halves(self) -> i64 {
        self.0
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> HalfInteger {
        HalfInteger(-self.0)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `(1/(log q)^r) d^r/ds^r |_{s=0}` of some expression, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeValue {
    pub order: u32,
    pub value: CycNumber,
}

/// `sum_k c_k t^k` with `t = q^{-s}`; zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct ExpPoly {
    q: u64,
    terms: BTreeMap<i64, CycNumber>,
}

impl ExpPoly {
    pub fn zero(q: u64) -> Self {
        ExpPoly { q, terms: BTreeMap::new() }
    }

    pub fn one(q: u64) -> Self {
        Self::constant(q, CycNumber::one())
    }

    pub fn constant(q: u64, c: CycNumber) -> Self {
        Self::monomial(q, 0, c)
    }

    pub fn monomial(q: u64, exponent: i64, c: CycNumber) -> Self {
        let mut p = Self::zero(q);
        p.add_term(exponent, c);
        p
    }

    /// `t^k`, i.e. `q^{-ks}`.
    pub fn t_power(q: u64, exponent: i64) -> Self {
        Self::monomial(q, exponent, CycNumber::one())
    }

    /// `q^{a s}` for an integer `a`, which is `t^{-a}`.
    pub fn q_power_s(q: u64, a: i64) -> Self {
        Self::t_power(q, -a)
    }

    pub fn from_terms<I>(q: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, CycNumber)>,
    {
        let mut p = Self::zero(q);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Integer coefficients, lowest exponent first.
    pub fn from_ints(q: u64, lowest: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(q, coeffs.iter().enumerate().map(|(i, &c)| (lowest + i as i64, CycNumber::from_int(c))))
    }

    pub fn add_term(&mut self, exponent: i64, c: CycNumber) {
        if c.is_zero() {
            return;
        }
        let c = c.with_q(self.q);
        match self.terms.remove(&exponent) {
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(exponent, sum);
                }
            }
            None => {
                self.terms.insert(exponent, c);
            }
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycNumber)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, exponent: i64) -> CycNumber {
        self.terms.get(&exponent).cloned().unwrap_or_else(CycNumber::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// lcm of the cyclotomic orders of the coefficients.
    pub fn order(&self) -> u32 {
        self.terms.values().fold(1, |n, c| lcm(n, c.order()))
    }

    /// The constant coefficient, if the expression is a constant.
    pub fn as_constant(&self) -> Option<CycNumber> {
        match self.terms.len() {
            0 => Some(CycNumber::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn compatible(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::IncompatibleBase { left: self.q, right: other.q });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        Self::from_terms(self.q, self.terms.iter().map(|(&k, x)| (k, x * c)))
    }

    /// Multiply by `t^k`.
    pub fn shift_exponents(&self, k: i64) -> Self {
        ExpPoly { q: self.q, terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.q), |acc, _| &acc * self)
    }

    /// The expression `f(a s + b)`: each `c t^k` becomes `c q^{-kb} t^{ak}`.
    pub fn compose_affine(&self, a: i64, b: HalfInteger) -> Self {
        Self::from_terms(
            self.q,
            self.terms.iter().map(|(&k, c)| (a * k, c * &CycNumber::q_power_half(self.q, -k * b.halves()))),
        )
    }

    /// `f(s + delta)`.
    pub fn shift_argument(&self, delta: HalfInteger) -> Self {
        self.compose_affine(1, delta)
    }

    /// `f(-s)`: `t^k -> t^{-k}`.
    pub fn reflect(&self) -> Self {
        self.compose_affine(-1, HalfInteger::ZERO)
    }

    /// Value at `s = 0` (`t = 1`).
    pub fn eval_at_center(&self) -> CycNumber {
        self.terms.values().fold(CycNumber::zero(), |acc, c| &acc + c)
    }

    /// `(1/log q) d/ds`, i.e. `t^k -> -k t^k`.
    pub fn derive(&self) -> Self {
        Self::from_terms(self.q, self.terms.iter().map(|(&k, c)| (k, c.scale(&rat_i(-k)))))
    }

    /// `(1/(log q)^r) d^r/ds^r` at `s = 0`.
    pub fn central_derivative(&self, r: u32) -> DerivativeValue {
        let value = self.terms.iter().fold(CycNumber::zero(), |acc, (&k, c)| {
            let w = num_traits::pow(BigInt::from(-k), r as usize);
            &acc + &c.scale(&BigRational::from_integer(w))
        });
        DerivativeValue { order: r, value }
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.q, self.terms.iter().map(|(&k, c)| (k, c.conj())))
    }

    /// Exact quotient `self / den`, or `None` if `den` does not divide.
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.q));
        }
        let (a, amin) = self.dense();
        let (b, bmin) = den.dense();
        let (quot, rem) = divrem(&a, &b);
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(self.q, amin - bmin, quot))
    }

    /// Greatest common divisor up to units `c t^k`, normalized to be a monic
    /// polynomial with nonzero constant term.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, _) = self.dense();
        let (mut b, _) = other.dense();
        while b.iter().any(|c| !c.is_zero()) {
            let (_, r) = divrem(&a, &b);
            a = b;
            b = trim(r);
        }
        let a = trim(a);
        if a.is_empty() {
            return Self::zero(self.q);
        }
        let lead_inv = a.last().unwrap().inverse().expect("nonzero lead");
        Self::from_dense(self.q, 0, a.iter().map(|c| c * &lead_inv).collect())
    }

    /// Coefficient vector from the lowest exponent upwards.
    fn dense(&self) -> (Vec<CycNumber>, i64) {
        let (Some(lo), Some(hi)) = (self.min_exponent(), self.max_exponent()) else {
            return (Vec::new(), 0);
        };
        ((lo..=hi).map(|k| self.coeff(k)).collect(), lo)
    }

    fn from_dense(q: u64, lowest: i64, coeffs: Vec<CycNumber>) -> Self {
        Self::from_terms(q, coeffs.into_iter().enumerate().map(|(i, c)| (lowest + i as i64, c)))
    }
}

fn rat_i(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn trim(mut v: Vec<CycNumber>) -> Vec<CycNumber> {
    while v.last().is_some_and(CycNumber::is_zero) {
        v.pop();
    }
    while v.first().is_some_and(CycNumber::is_zero) {
        v.remove(0);
    }
    v
}

/// Polynomial division with remainder over Q(zeta)(sqrt q), low degree first.
fn divrem(a: &[CycNumber], b: &[CycNumber]) -> (Vec<CycNumber>, Vec<CycNumber>) {
    let b = {
        let mut b = b.to_vec();
        while b.last().is_some_and(CycNumber::is_zero) {
            b.pop();
        }
        b
    };
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![], rem);
    }
    let inv = b[db].inverse().expect("nonzero leading coefficient");
    let mut quot = vec![CycNumber::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] * &inv;
        for (j, bj) in b.iter().enumerate() {
            rem[k - db + j] = &rem[k - db + j] - &(&c * bj);
        }
        quot[k - db] = c;
    }
    rem.truncate(db);
    (quot, rem)
}

impl PartialEq for ExpPoly {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.terms == other.terms
    }
}

impl Eq for ExpPoly {}

impl<'a> Add<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        assert_eq!(self.q, rhs.q, "incompatible q");
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        self + &(-rhs)
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly::from_terms(self.q, self.terms.iter().map(|(&k, c)| (k, -c)))
    }
}

impl<'a> Mul<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        assert_eq!(self.q, rhs.q, "incompatible q");
        let mut out = ExpPoly::zero(self.q);
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExpPoly> for ExpPoly {
            type Output = ExpPoly;
            fn $m(self, rhs: ExpPoly) -> ExpPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExpPoly> for ExpPoly {
            type Output = ExpPoly;
            fn $m(self, rhs: &ExpPoly) -> ExpPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        -&self
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (&k, c)) in self.terms.iter().enumerate() {
            let negative = c.as_rational().is_ok_and(|r| r.is_negative());
            let c = if negative { -c } else { c.clone() };
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let cs = c.to_string();
            let term = match (mono.is_empty(), c.is_one()) {
                (true, _) => cs,
                (false, true) => mono,
                (false, false) if cs.contains(' ') || (cs.contains('/') && !cs.contains('*')) => format!("({cs})*{mono}"),
                (false, false) => format!("{cs}*{mono}"),
            };
            match (i, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&term);
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic::ratio;

    fn p(coeffs: &[i64], lowest: i64) -> ExpPoly {
        ExpPoly::from_ints(5, lowest, coeffs)
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[1, 1], 0);
        let b = p(&[-1, 1], 0);
        assert_eq!(&a * &b, p(&[-1, 0, 1], 0));
    }

    #[test]
    fn adding_zero_is_identity() {
        let f = p(&[3, 0, -2], -1);
        assert_eq!(&f + &ExpPoly::zero(5), f);
        assert_eq!((&f - &f).len(), 0);
    }

    #[test]
    fn shift_examples() {
        let t2 = ExpPoly::t_power(5, 2);
        let s = t2.shift_argument(HalfInteger::HALF);
        assert_eq!(s.coeff(2).as_rational().unwrap(), ratio(1, 5));
        let s = ExpPoly::t_power(5, -3).shift_argument(HalfInteger::HALF);
        assert_eq!(s.coeff(-3), CycNumber::q_power_half(5, 3));
        assert_eq!(s.coeff(-3), &CycNumber::from_int(5) * &CycNumber::sqrt_q(5));
    }

    #[test]
    fn reflect_examples() {
        let f = p(&[2, 0, 0, 1], 0);
        assert_eq!(f.reflect(), ExpPoly::from_terms(5, [(-3, 1.into()), (0, 2.into())]));
        assert_eq!(f.reflect().reflect(), f);
        let sym = &f + &f.reflect();
        assert_eq!(sym.reflect(), sym);
    }

    #[test]
    fn derivative_examples() {
        let f = ExpPoly::t_power(5, -3);
        assert_eq!(f.central_derivative(2).value, CycNumber::from_int(9));
        let c = ExpPoly::constant(5, CycNumber::from_int(7));
        for r in 1..4 {
            assert!(c.central_derivative(r).value.is_zero());
        }
        assert_eq!(c.central_derivative(0).value, CycNumber::from_int(7));
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = p(&[1, 1], 0);
        let b = p(&[-1, 0, 1], 0);
        assert_eq!(b.div_exact(&a).unwrap(), p(&[-1, 1], 0));
        assert!(a.div_exact(&b).is_none());
        let g = (&b * &p(&[2, 5], 3)).gcd(&(&a * &p(&[1, 0, 7], -2)));
        assert_eq!(g, p(&[1, 1], 0));
    }

    #[test]
    fn half_integers() {
        assert_eq!(HalfInteger::new(3, 2).unwrap().halves(), 3);
        assert!(HalfInteger::new(1, 3).is_err());
        assert_eq!(HalfInteger::new(-4, 2).unwrap(), HalfInteger::integer(-2));
    }
}
