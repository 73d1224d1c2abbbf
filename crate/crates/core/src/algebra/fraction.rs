//! Quotients of Laurent expressions, used for full zeta functions and for
//! ratios of L-function products.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::cyclotomic::CycNumber;
use super::laurent::{DerivativeValue, ExpPoly, HalfInteger};
use crate::error::{Error, Result};

/// `num / den`. Equality is decided by cross-multiplication, so two fractions
/// compare equal without being brought to a normal form.
#[derive(Clone, Debug)]
pub struct ExpFraction {
    num: ExpPoly,
    den: ExpPoly,
}

impl ExpFraction {
    pub fn new(num: ExpPoly, den: ExpPoly) -> Result<Self> {
        num.compatible(&den)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(ExpFraction { num, den })
    }

    pub fn from_poly(p: ExpPoly) -> Self {
        let q = p.q();
        ExpFraction { num: p, den: ExpPoly::one(q) }
    }

    pub fn one(q: u64) -> Self {
        Self::from_poly(ExpPoly::one(q))
    }

    pub fn num(&self) -> &ExpPoly {
        &self.num
    }

    pub fn den(&self) -> &ExpPoly {
        &self.den
    }

    pub fn q(&self) -> u64 {
        self.num.q()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.num.compatible(&other.num)?;
        if self.den == other.den {
            return Ok(ExpFraction { num: &self.num + &other.num, den: self.den.clone() });
        }
        Ok(ExpFraction { num: &(&self.num * &other.den) + &(&other.num * &self.den), den: &self.den * &other.den })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.num.compatible(&other.num)?;
        Ok(ExpFraction { num: &self.num * &other.num, den: &self.den * &other.den })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.num.compatible(&other.num)?;
        ExpFraction::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn mul_poly(&self, p: &ExpPoly) -> Self {
        ExpFraction { num: &self.num * p, den: self.den.clone() }
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        ExpFraction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self> {
        ExpFraction::new(self.den.clone(), self.num.clone())
    }

    pub fn compose_affine(&self, a: i64, b: HalfInteger) -> Self {
        ExpFraction { num: self.num.compose_affine(a, b), den: self.den.compose_affine(a, b) }
    }

    pub fn shift_argument(&self, delta: HalfInteger) -> Self {
        self.compose_affine(1, delta)
    }

    pub fn reflect(&self) -> Self {
        self.compose_affine(-1, HalfInteger::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancel the polynomial gcd of numerator and denominator.
    pub fn reduce(&self) -> Self {
        if self.den.len() == 1 {
            let (k, c) = self.den.terms().next().expect("nonzero denominator");
            let inv = c.inverse().expect("nonzero coefficient");
            return ExpFraction { num: self.num.shift_exponents(-k).scale(&inv), den: ExpPoly::one(self.q()) };
        }
        let g = self.num.gcd(&self.den);
        if g.is_zero() || g.max_exponent() == Some(0) {
            return self.clone();
        }
        let reduced = ExpFraction {
            num: self.num.div_exact(&g).expect("gcd divides numerator"),
            den: self.den.div_exact(&g).expect("gcd divides denominator"),
        };
        if reduced.den.len() == 1 {
            reduced.reduce()
        } else {
            reduced
        }
    }

    /// The fraction as a Laurent expression, if the denominator divides exactly.
    pub fn to_poly(&self) -> Option<ExpPoly> {
        self.num.div_exact(&self.den)
    }

    pub fn eval_at_center(&self) -> Result<CycNumber> {
        Ok(self.central_derivative(0)?.value)
    }

    /// `(1/(log q)^r) d^r/ds^r |_{s=0}` of the quotient.
    ///
    /// With `n_j`, `d_j`, `f_j` the central derivatives of numerator,
    /// denominator and quotient, `n_r = sum_j C(r,j) f_j d_{r-j}` is solved
    /// for `f_r`. A removable singularity at the center is cancelled first.
    pub fn central_derivative(&self, r: u32) -> Result<DerivativeValue> {
        let frac = if self.den.eval_at_center().is_zero() { self.reduce() } else { self.clone() };
        let d0 = frac.den.eval_at_center();
        let d0_inv = d0.inverse().ok_or(Error::PoleAtCenter)?;
        let nd: Vec<CycNumber> = (0..=r).map(|j| frac.num.central_derivative(j).value).collect();
        let dd: Vec<CycNumber> = (0..=r).map(|j| frac.den.central_derivative(j).value).collect();
        let mut f: Vec<CycNumber> = Vec::with_capacity(r as usize + 1);
        for k in 0..=r as usize {
            let mut acc = nd[k].clone();
            for (j, fj) in f.iter().enumerate() {
                let c = BigRational::from_integer(binomial(BigInt::from(k), BigInt::from(j)));
                acc = &acc - &(fj * &dd[k - j]).scale(&c);
            }
            f.push(&acc * &d0_inv);
        }
        Ok(DerivativeValue { order: r, value: f.pop().unwrap() })
    }
}

impl PartialEq for ExpFraction {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q() && &self.num * &other.den == &other.num * &self.den
    }
}

impl From<ExpPoly> for ExpFraction {
    fn from(p: ExpPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for ExpFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic::{rat, ratio};

    #[test]
    fn cross_multiplication_equality() {
        let a = ExpFraction::new(ExpPoly::from_ints(5, 0, &[1, 1]), ExpPoly::from_ints(5, 0, &[1, -1])).unwrap();
        let b = ExpFraction::new(ExpPoly::from_ints(5, 0, &[1, 2, 1]), ExpPoly::from_ints(5, 0, &[1, 0, -1])).unwrap();
        assert_eq!(a, b);
        assert!(ExpFraction::new(ExpPoly::one(5), ExpPoly::zero(5)).is_err());
    }

    #[test]
    fn derivative_of_quotient_matches_product_rule() {
        // f = (1 + t) / (1 - t/5); f(0) = 2 / (4/5) = 5/2.
        let num = ExpPoly::from_ints(5, 0, &[1, 1]);
        let den = ExpPoly::from_terms(5, [(0, CycNumber::one()), (1, CycNumber::from_rational(ratio(-1, 5)))]);
        let f = ExpFraction::new(num, den).unwrap();
        assert_eq!(f.eval_at_center().unwrap().as_rational().unwrap(), ratio(5, 2));
        // D f = [D n * d - n * D d] / d^2 at t = 1: Dn = -1, Dd = 1/5
        // => (-1 * 4/5 - 2 * 1/5) / (16/25) = (-6/5) * 25/16 = -15/8
        assert_eq!(f.central_derivative(1).unwrap().value.as_rational().unwrap(), ratio(-15, 8));
    }

    #[test]
    fn removable_pole_is_cancelled() {
        // (1 - t^2) / (1 - t) = 1 + t
        let f = ExpFraction::new(ExpPoly::from_ints(3, 0, &[1, 0, -1]), ExpPoly::from_ints(3, 0, &[1, -1])).unwrap();
        assert_eq!(f.eval_at_center().unwrap().as_rational().unwrap(), rat(2));
        assert_eq!(f.central_derivative(2).unwrap().value.as_rational().unwrap(), rat(1));
        let g = ExpFraction::new(ExpPoly::one(3), ExpPoly::from_ints(3, 0, &[1, -1])).unwrap();
        assert!(matches!(g.central_derivative(0), Err(Error::PoleAtCenter)));
    }
}
