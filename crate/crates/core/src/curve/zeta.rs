//! Zeta numerators, the double cover, and the L-functions `L(s, eta^i chi_0)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::model::CurveModel;
use crate::algebra::{q_pow, CycNumber, ExpFraction, ExpPoly, HalfInteger};
use crate::error::{Error, Result};

pub const CHECK_WEIL: &str = "weil-bounds";
pub const CHECK_ZETA_INTEGRAL: &str = "zeta-integrality";
pub const CHECK_ZETA_FE: &str = "zeta-functional-equation";
pub const CHECK_RIEMANN_HURWITZ: &str = "riemann-hurwitz";
pub const CHECK_COVER_DIVISIBILITY: &str = "zeta-cover-divisibility";
pub const CHECK_ETA_DEGREE: &str = "eta-degree";
pub const CHECK_L_FE: &str = "l-functional-equation";
pub const CHECK_COUNT_RECURRENCE: &str = "count-recurrence";

/// Zeta numerator `P(t)` of a genus-`g` curve from `N_1, ..., N_k` (`k >= g`).
///
/// The first `g` coefficients come from `log Z = sum N_d t^d / d` through
/// Newton's identities, the rest from `P(t) = q^g t^{2g} P(1/(qt))`. Counts
/// beyond the first `g` are checked against the result.
pub fn zeta_numerator(counts: &[i64], genus: u32, q: u64) -> Result<ExpPoly> {
    let g = genus as usize;
    if counts.len() < g {
        return Err(Error::Parse(format!("genus {genus} needs at least {g} point counts, got {}", counts.len())));
    }
    // S_d = N_d - 1 - q^d = -(sum of d-th powers of Frobenius roots)
    let s: Vec<BigRational> = (1..=g)
        .map(|d| BigRational::from_integer(BigInt::from(counts[d - 1]) - BigInt::one()) - q_pow(q, d as i64))
        .collect();
    let mut a: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=g {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            acc += &s[j - 1] * &a[k - j];
        }
        let ak = acc / BigRational::from_integer(BigInt::from(k));
        if !ak.is_integer() {
            return Err(Error::invariant(CHECK_ZETA_INTEGRAL, format!("coefficient a_{k} = {ak} is not an integer")));
        }
        a.push(ak);
    }
    for k in g + 1..=2 * g {
        a.push(&a[2 * g - k] * q_pow(q, (k - g) as i64));
    }
    let p = ExpPoly::from_terms(q, a.into_iter().enumerate().map(|(k, c)| (k as i64, CycNumber::from_rational(c))));
    let implied = counts_from_numerator(&p, q, counts.len() as u32);
    for (d, (&given, &expected)) in counts.iter().zip(&implied).enumerate() {
        if given != expected {
            return Err(Error::invariant(
                CHECK_ZETA_FE,
                format!("N_{} = {given} but the functional equation forces {expected}", d + 1),
            ));
        }
    }
    Ok(p)
}

/// `N_1, ..., N_up_to` implied by an integral zeta numerator.
pub fn counts_from_numerator(p: &ExpPoly, q: u64, up_to: u32) -> Vec<i64> {
    let coeff = |k: usize| -> BigInt {
        p.coeff(k as i64).as_rational().expect("integral zeta numerator").to_integer()
    };
    let mut s: Vec<BigInt> = Vec::new(); // power sums of Frobenius roots
    let mut out = Vec::new();
    for k in 1..=up_to as usize {
        let mut sk = -BigInt::from(k) * coeff(k);
        for j in 1..k {
            sk -= &s[j - 1] * coeff(k - j);
        }
        let nk: BigInt = num_traits::pow(BigInt::from(q), k) + 1 - &sk;
        out.push(nk.to_i64().expect("point count fits in i64"));
        s.push(sk);
    }
    out
}

/// `|N_d - q^d - 1| <= 2 g q^{d/2}` for every supplied count.
pub fn check_weil_bounds(counts: &[i64], genus: u32, q: u64) -> Result<()> {
    for (i, &n) in counts.iter().enumerate() {
        let d = i as u32 + 1;
        let dev = BigInt::from(n) - num_traits::pow(BigInt::from(q), d as usize) - 1;
        let bound = BigInt::from(4 * genus as u64 * genus as u64) * num_traits::pow(BigInt::from(q), d as usize);
        if &dev * &dev > bound {
            return Err(Error::invariant(CHECK_WEIL, format!("N_{d} = {n} violates the Weil bound for genus {genus} over F_{q}")));
        }
    }
    Ok(())
}

/// Point counts of a curve given by table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub q: u64,
    pub genus: u32,
    /// `#C(F_{q^d})` for `d = 1, 2, ...`.
    pub counts: Vec<i64>,
}

/// How one of the two curves of the cover was supplied.
#[derive(Clone, Debug)]
pub enum CurveSource {
    Model(CurveModel),
    Table(CountTable),
}

impl CurveSource {
    pub fn genus(&self) -> u32 {
        match self {
            CurveSource::Model(m) => m.genus(),
            CurveSource::Table(t) => t.genus,
        }
    }
}

/// A curve `X` over `F_q` together with a finite etale double cover `X' -> X`.
#[derive(Clone, Debug)]
pub struct CoverData {
    q: u64,
    label: String,
    base: CurveSource,
    cover: CurveSource,
    zeta_x: ExpPoly,
    zeta_x_prime: ExpPoly,
    eta_l: ExpPoly,
}

impl CoverData {
    /// The cover given by the dual of the 2-isogeny with kernel `<(0,0)>`.
    ///
    /// Isogenous curves share their zeta function, so `L(s, eta) = 1`.
    pub fn from_model(model: CurveModel) -> Result<Self> {
        let q = model.q();
        let n2 = model.count_points(2);
        let brute = model.count_points_quadratic_brute_force();
        if n2 != brute {
            return Err(Error::invariant(CHECK_COUNT_RECURRENCE, format!("recurrence gives N_2 = {n2}, enumeration {brute}")));
        }
        let cover = model.isogenous();
        let zeta_x = zeta_numerator(&[model.count_points(1)], 1, q)?;
        let zeta_x_prime = zeta_numerator(&[cover.count_points(1)], 1, q)?;
        let label = model.label().to_string();
        Self::assemble(q, label, CurveSource::Model(model), CurveSource::Model(cover), zeta_x, zeta_x_prime)
    }

    /// A cover known only through point counts of `X` and `X'`.
    pub fn from_tables(base: CountTable, cover: CountTable, label: impl Into<String>) -> Result<Self> {
        if base.q != cover.q {
            return Err(Error::IncompatibleBase { left: base.q, right: cover.q });
        }
        let q = base.q;
        if crate::algebra::cyclotomic::prime_power(q).is_none() || q.is_multiple_of(2) {
            return Err(Error::Parse(format!("q = {q} must be an odd prime power")));
        }
        if base.genus == 0 {
            return Err(Error::Unsupported("a genus-0 base has no connected etale double cover".into()));
        }
        if cover.genus != 2 * base.genus - 1 {
            return Err(Error::invariant(
                CHECK_RIEMANN_HURWITZ,
                format!("an etale double cover of a genus {} curve has genus {}, table says {}", base.genus, 2 * base.genus - 1, cover.genus),
            ));
        }
        check_weil_bounds(&base.counts, base.genus, q)?;
        check_weil_bounds(&cover.counts, cover.genus, q)?;
        let zeta_x = zeta_numerator(&base.counts, base.genus, q)?;
        let zeta_x_prime = zeta_numerator(&cover.counts, cover.genus, q)?;
        Self::assemble(q, label.into(), CurveSource::Table(base), CurveSource::Table(cover), zeta_x, zeta_x_prime)
    }

    fn assemble(q: u64, label: String, base: CurveSource, cover: CurveSource, zeta_x: ExpPoly, zeta_x_prime: ExpPoly) -> Result<Self> {
        let eta_l = zeta_x_prime.div_exact(&zeta_x).ok_or_else(|| {
            Error::invariant(CHECK_COVER_DIVISIBILITY, format!("P_X = {zeta_x} does not divide P_X' = {zeta_x_prime}"))
        })?;
        let data = CoverData { q, label, base, cover, zeta_x, zeta_x_prime, eta_l };
        let w = data.deg_omega();
        if data.eta_l.min_exponent() != Some(0) || data.eta_l.max_exponent() != Some(w) {
            return Err(Error::invariant(CHECK_ETA_DEGREE, format!("L(s, eta) = {} should have t-degree {w}", data.eta_l)));
        }
        if !satisfies_functional_equation(&ExpFraction::from_poly(data.eta_l.clone()), w) {
            return Err(Error::invariant(CHECK_L_FE, format!("L(s, eta) = {} fails its functional equation", data.eta_l)));
        }
        Ok(data)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn genus(&self) -> u32 {
        self.base.genus()
    }

    pub fn cover_genus(&self) -> u32 {
        self.cover.genus()
    }

    /// `deg omega_X = 2g - 2`.
    pub fn deg_omega(&self) -> i64 {
        2 * self.genus() as i64 - 2
    }

    pub fn base(&self) -> &CurveSource {
        &self.base
    }

    pub fn cover(&self) -> &CurveSource {
        &self.cover
    }

    pub fn base_model(&self) -> Option<&CurveModel> {
        match &self.base {
            CurveSource::Model(m) => Some(m),
            CurveSource::Table(_) => None,
        }
    }

    pub fn cover_model(&self) -> Option<&CurveModel> {
        match &self.cover {
            CurveSource::Model(m) => Some(m),
            CurveSource::Table(_) => None,
        }
    }

    pub fn is_table(&self) -> bool {
        matches!(self.base, CurveSource::Table(_))
    }

    pub fn zeta_x(&self) -> &ExpPoly {
        &self.zeta_x
    }

    pub fn zeta_x_prime(&self) -> &ExpPoly {
        &self.zeta_x_prime
    }

    /// `L(s, eta)` as a polynomial in `t`.
    pub fn eta_l(&self) -> &ExpPoly {
        &self.eta_l
    }

    /// `Z_X(t) = P_X(t) / ((1 - t)(1 - q t))`.
    pub fn zeta_function(&self) -> ExpFraction {
        zeta_fraction(&self.zeta_x, self.q)
    }
}

pub(crate) fn zeta_fraction(p: &ExpPoly, q: u64) -> ExpFraction {
    let one_minus_t = ExpPoly::from_ints(q, 0, &[1, -1]);
    let one_minus_qt = ExpPoly::from_ints(q, 0, &[1, -(q as i64)]);
    ExpFraction::new(p.clone(), &one_minus_t * &one_minus_qt).expect("nonzero denominator")
}

/// The two characters of `Pic(X)` that can occur as `eta^i chi_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadraticTwist {
    Trivial,
    Eta,
}

impl QuadraticTwist {
    /// `self * eta^i`.
    pub fn times_eta_pow(self, i: i64) -> Self {
        if i.rem_euclid(2) == 0 {
            self
        } else {
            match self {
                QuadraticTwist::Trivial => QuadraticTwist::Eta,
                QuadraticTwist::Eta => QuadraticTwist::Trivial,
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadraticTwist::Trivial => "trivial",
            QuadraticTwist::Eta => "eta",
        }
    }
}

impl fmt::Display for QuadraticTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An L-function as a function of `t = q^{-s}`.
#[derive(Clone, Debug, PartialEq)]
pub enum LValue {
    Poly(ExpPoly),
    Fraction(ExpFraction),
}

impl LValue {
    pub fn to_fraction(&self) -> ExpFraction {
        match self {
            LValue::Poly(p) => ExpFraction::from_poly(p.clone()),
            LValue::Fraction(f) => f.clone(),
        }
    }
}

/// `L(s, chi)` tagged with the character it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct LSeries {
    pub character: String,
    pub value: LValue,
}

/// `L(s, chi_0)` for `chi_0` trivial (the full zeta function) or `eta`.
pub fn l_function(cover: &CoverData, twist: QuadraticTwist) -> LSeries {
    let value = match twist {
        QuadraticTwist::Trivial => LValue::Fraction(cover.zeta_function()),
        QuadraticTwist::Eta => LValue::Poly(cover.eta_l().clone()),
    };
    LSeries { character: twist.name().to_string(), value }
}

/// `prod_{i=1}^n L(2s + i, eta^{i-n} chi_0)`.
///
/// Each factor substitutes `t -> q^{-i} t^2` into the corresponding series.
pub fn script_l(cover: &CoverData, n: u32, chi0: QuadraticTwist) -> ExpFraction {
    let mut acc = ExpFraction::one(cover.q());
    for i in 1..=n as i64 {
        let factor = l_function(cover, chi0.times_eta_pow(i - n as i64)).value.to_fraction();
        acc = acc.mul(&factor.compose_affine(2, HalfInteger::integer(i))).expect("same q");
    }
    acc
}

/// Whether `q^{(s/2) w} L(s) = q^{((1-s)/2) w} L(1 - s)` holds identically,
/// with `w = deg omega_X`.
pub fn satisfies_functional_equation(l: &ExpFraction, deg_omega: i64) -> bool {
    let q = l.q();
    assert!(deg_omega % 2 == 0, "deg omega_X is even");
    let half = deg_omega / 2;
    let lhs = l.mul_poly(&ExpPoly::t_power(q, -half));
    // L(1 - s) = (L(-s))(s - 1)
    let mirrored = l.reflect().shift_argument(HalfInteger::integer(-1));
    let rhs = mirrored.mul_poly(&ExpPoly::monomial(q, half, CycNumber::from_rational(q_pow(q, half))));
    lhs == rhs
}
