//! Predicted degrees of special cycles and the right-hand side of the
//! Gross-Kohnen-Zagier type identity, all as exact rationals.

use std::fmt;

use crate::algebra::{q_pow, CycNumber, ExpFraction, ExpPoly, HalfInteger, Rational};
use crate::bundles::{d_invariant, is_selfdual, BlockTag, HermitianPair, LineBundleClass};
use crate::curve::{script_l, CoverData, QuadraticTwist};
use crate::eisenstein::{
    chi_det, degenerate_rank2_coefficient, doubling_coefficient, iso_coefficient, DensityPlugin,
};
use crate::error::{Error, Result};
use crate::picard::{HeckeCharacter, PicModel};

pub const CHECK_DEGREE_CONSISTENCY: &str = "degree-consistency";

/// Which formula produced a degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaPath {
    /// central derivative of the normalized coefficient
    SiegelWeil,
    /// `2 d^r/ds^r (q^{d s} L(2s, eta))`
    ClosedForm,
    /// central derivative of the doubling sum
    Doubling,
}

impl FormulaPath {
    pub fn name(self) -> &'static str {
        match self {
            FormulaPath::SiegelWeil => "siegel-weil",
            FormulaPath::ClosedForm => "closed-form",
            FormulaPath::Doubling => "doubling",
        }
    }
}

impl fmt::Display for FormulaPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeResult {
    pub value: Rational,
    pub r: u32,
    pub path: FormulaPath,
}

fn certify(value: &CycNumber, r: u32, path: FormulaPath) -> Result<DegreeResult> {
    Ok(DegreeResult { value: value.as_rational()?, r, path })
}

fn require_even(r: u32) -> Result<()> {
    if r % 2 == 1 {
        Err(Error::OddOrder(r))
    } else {
        Ok(())
    }
}

/// The input of the Siegel-Weil degree: a rank-one bundle with `a` an
/// isomorphism, or a rank-two pair.
#[derive(Clone, Debug)]
pub enum SpecialCycle {
    Rank1(LineBundleClass),
    Rank2(HermitianPair),
}

impl SpecialCycle {
    fn classes(&self) -> Vec<LineBundleClass> {
        match self {
            SpecialCycle::Rank1(e) => vec![*e],
            SpecialCycle::Rank2(p) => vec![p.e1, p.e2],
        }
    }
}

/// The normalized coefficient attached to the hermitian map of a cycle.
/// A rank-two pair is read with zero off-diagonal block.
pub fn cycle_coefficient(pic: &PicModel, cover: &CoverData, cycle: &SpecialCycle, chi: &HeckeCharacter) -> Result<ExpFraction> {
    match cycle {
        SpecialCycle::Rank1(e) => Ok(iso_coefficient(pic, cover, &[*e], chi)?.into()),
        SpecialCycle::Rank2(p) => match (p.a1, p.a2) {
            (BlockTag::Iso, BlockTag::Iso) => Ok(iso_coefficient(pic, cover, &[p.e1, p.e2], chi)?.into()),
            (BlockTag::Zero, BlockTag::Iso) => degenerate_rank2_coefficient(pic, cover, p.e1, p.e2, chi),
            _ => Err(Error::Unsupported(format!("no closed coefficient for blocks ({}, {})", p.a1, p.a2))),
        },
    }
}

/// `q^{(n/2) d(E)} / chi(det E) * d^r/ds^r E~(s)` at `s = 0`.
pub fn asw_degree(pic: &PicModel, cover: &CoverData, cycle: &SpecialCycle, chi: &HeckeCharacter, r: u32) -> Result<DegreeResult> {
    require_even(r)?;
    let e = cycle.classes();
    let n = e.len() as i64;
    let coefficient = cycle_coefficient(pic, cover, cycle, chi)?;
    let det = chi_det(pic, chi, &e).inverse().expect("root of unity");
    let scale = CycNumber::q_power_half(cover.q(), n * d_invariant(&e, cover)) * det;
    certify(&(coefficient.central_derivative(r)?.value * scale), r, FormulaPath::SiegelWeil)
}

/// `2 d^r/ds^r (t^{-d(E1)} L(2s, eta))` at `s = 0`.
pub fn closed_form_degree(pic: &PicModel, cover: &CoverData, e1: LineBundleClass, e2: LineBundleClass, r: u32) -> Result<DegreeResult> {
    require_even(r)?;
    if !is_selfdual(pic, cover, e2) {
        return Err(Error::NotSelfDual(format!("E2 = {e2} is not self-dual")));
    }
    let q = cover.q();
    let d = d_invariant(&[e1], cover);
    let integrand = &ExpPoly::t_power(q, -d) * &cover.eta_l().compose_affine(2, HalfInteger::ZERO);
    certify(&integrand.central_derivative(r).value.scale(&Rational::from_integer(2.into())), r, FormulaPath::ClosedForm)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub siegel_weil: DegreeResult,
    pub closed_form: DegreeResult,
}

/// Both routes to the degree of `Z(diag(0, a2))`; they must agree.
pub fn degree_consistency(
    pic: &PicModel,
    cover: &CoverData,
    e1: LineBundleClass,
    e2: LineBundleClass,
    chi: &HeckeCharacter,
    r: u32,
) -> Result<ConsistencyReport> {
    if chi.restriction != QuadraticTwist::Trivial {
        return Err(Error::Restriction("degree consistency needs chi trivial on Pic(X)".into()));
    }
    let pair = HermitianPair { e1, e2, a1: BlockTag::Zero, a2: BlockTag::Iso, offdiag: crate::bundles::OffDiagonal::Resolved };
    let siegel_weil = asw_degree(pic, cover, &SpecialCycle::Rank2(pair), chi, r)?;
    let closed_form = closed_form_degree(pic, cover, e1, e2, r)?;
    if siegel_weil.value != closed_form.value {
        return Err(Error::invariant(
            CHECK_DEGREE_CONSISTENCY,
            format!("E1 = {e1}, E2 = {e2}, r = {r}: {} vs {}", siegel_weil.value, closed_form.value),
        ));
    }
    Ok(ConsistencyReport { siegel_weil, closed_form })
}

/// `q^{d(E1)} q^{d(E2)} / (chi(E1) chi(E2)) * d^r/ds^r` of the doubling sum.
#[allow(clippy::too_many_arguments)]
pub fn z2_intersection_degree(
    pic: &PicModel,
    cover: &CoverData,
    e1: LineBundleClass,
    a1: BlockTag,
    e2: LineBundleClass,
    chi: &HeckeCharacter,
    r: u32,
    plugin: Option<&dyn DensityPlugin>,
) -> Result<DegreeResult> {
    require_even(r)?;
    let coefficient = doubling_coefficient(pic, cover, e1, a1, e2, chi, plugin)?;
    let q = cover.q();
    let power = q_pow(q, d_invariant(&[e1], cover) + d_invariant(&[e2], cover));
    let scale = CycNumber::from_rational(power) * chi_det(pic, chi, &[e1, e2]).inverse().expect("root of unity");
    certify(&(coefficient.central_derivative(r)?.value * scale), r, FormulaPath::Doubling)
}

/// `chi(E1) q^{-d(E1)}` times the intersection degree.
#[allow(clippy::too_many_arguments)]
pub fn script_d_coefficient(
    pic: &PicModel,
    cover: &CoverData,
    e1: LineBundleClass,
    a1: BlockTag,
    e2: LineBundleClass,
    chi: &HeckeCharacter,
    r: u32,
    plugin: Option<&dyn DensityPlugin>,
) -> Result<CycNumber> {
    let degree = z2_intersection_degree(pic, cover, e1, a1, e2, chi, r, plugin)?;
    let power = q_pow(cover.q(), -d_invariant(&[e1], cover));
    Ok(pic.chi_value(chi, e1) * CycNumber::from_rational(power * degree.value))
}

/// A base-change L-polynomial in `t` with the cusp-form coefficient it is
/// paired with.
#[derive(Clone, Debug, PartialEq)]
pub struct BCLInput {
    pub lpoly: ExpPoly,
    pub f_coefficient: CycNumber,
}

/// `c(s) = L(s + 1/2, BC(pi) x chi) / L_n(s, 1)`.
pub fn duplication_scalar(bc: &BCLInput, cover: &CoverData, n: u32) -> Result<ExpFraction> {
    bc.lpoly.compatible(&ExpPoly::one(cover.q()))?;
    ExpFraction::from_poly(bc.lpoly.shift_argument(HalfInteger::HALF)).div(&script_l(cover, n, QuadraticTwist::Trivial))
}

/// `f q^{m d(E2)} d^r/ds^r (q^{n s w} L(s + 1/2, BC(pi) x chi))` at `s = 0`,
/// `n = 2m`.
pub fn gkz_rhs(bc: &BCLInput, pic: &PicModel, cover: &CoverData, e2: LineBundleClass, m: u32, r: u32) -> Result<CycNumber> {
    require_even(r)?;
    bc.lpoly.compatible(&ExpPoly::one(cover.q()))?;
    if !is_selfdual(pic, cover, e2) {
        return Err(Error::NotSelfDual(format!("E2 = {e2} is not self-dual")));
    }
    let q = cover.q();
    let n = 2 * m as i64;
    let integrand = &ExpPoly::t_power(q, -n * cover.deg_omega()) * &bc.lpoly.shift_argument(HalfInteger::HALF);
    let power = CycNumber::from_rational(q_pow(q, m as i64 * d_invariant(&[e2], cover)));
    Ok(&(&bc.f_coefficient * &power) * &integrand.central_derivative(r).value)
}
