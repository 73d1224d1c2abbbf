//! Normalized Fourier coefficients `E~_{(E,a)}(s, chi)` of the Siegel
//! Eisenstein series, as functions of `t = q^{-s}`.
//!
//! Two families have closed forms: `a` an isomorphism, and the rank-2
//! degenerate `a = diag(0, a2)` reached through the genus-drop identity. Other
//! terms of the doubling sum go through a [`DensityPlugin`].

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::algebra::{CycNumber, ExpFraction, ExpPoly, HalfInteger};
use crate::bundles::{complement_census, d_invariant, is_selfdual, BlockTag, HermitianPair, LineBundleClass};
use crate::curve::{script_l, CoverData, QuadraticTwist};
use crate::error::{Error, Result};
use crate::picard::{HeckeCharacter, PicModel};

pub const CHECK_REFLECTION: &str = "coefficient-reflection";
pub const CHECK_DUAL_PATH: &str = "genus-drop-dual-path";

/// Above this many off-diagonal terms the plugin sum is refused.
pub const MAX_PLUGIN_TERMS: u128 = 1 << 20;

/// `chi(det E)` for a split bundle.
pub fn chi_det(pic: &PicModel, chi: &HeckeCharacter, e: &[LineBundleClass]) -> CycNumber {
    e.iter().fold(CycNumber::one(), |acc, &c| acc * pic.chi_value(chi, c))
}

/// `q^k` as a constant polynomial.
fn q_const(q: u64, k: i64) -> ExpPoly {
    ExpPoly::constant(q, CycNumber::from_rational(crate::algebra::q_pow(q, k)))
}

/// Normalized coefficient when every block of `a` is an isomorphism:
/// the constant `chi(det E)`.
pub fn iso_coefficient(pic: &PicModel, cover: &CoverData, e: &[LineBundleClass], chi: &HeckeCharacter) -> Result<ExpPoly> {
    if let Some(bad) = e.iter().find(|&&c| !is_selfdual(pic, cover, c)) {
        return Err(Error::NotSelfDual(format!("{bad} admits no hermitian isomorphism")));
    }
    Ok(ExpPoly::constant(cover.q(), chi_det(pic, chi, e)))
}

/// The raw coefficient `chi(det E) / (q^{n s w} L_n(s, chi_0))`.
pub fn iso_coefficient_unnormalized(
    pic: &PicModel,
    cover: &CoverData,
    e: &[LineBundleClass],
    chi: &HeckeCharacter,
) -> Result<ExpFraction> {
    let n = e.len() as u32;
    let normalized = iso_coefficient(pic, cover, e, chi)?;
    let factor = script_l(cover, n, chi.restriction).mul_poly(&ExpPoly::t_power(cover.q(), -(n as i64) * cover.deg_omega()));
    ExpFraction::from_poly(normalized).div(&factor)
}

/// `c_M(s) = q^{-2 n s w} L_n(-s, chi_0) / L_n(s, chi_0)`.
pub fn intertwining_constant(cover: &CoverData, n: u32, chi0: QuadraticTwist) -> Result<ExpFraction> {
    let l = script_l(cover, n, chi0);
    let scaled = l.reflect().mul_poly(&ExpPoly::t_power(cover.q(), 2 * n as i64 * cover.deg_omega()));
    scaled.div(&l)
}

fn require_selfdual(pic: &PicModel, cover: &CoverData, e2: LineBundleClass) -> Result<()> {
    if is_selfdual(pic, cover, e2) {
        Ok(())
    } else {
        Err(Error::NotSelfDual(format!("E2 = {e2} is not self-dual")))
    }
}

/// `L_2(s, chi_0) / (q^{(s+1/2) w} L_1(s+1/2, chi_0))`, reduced. The grid
/// checks request it thousands of times per cover, so it is memoized.
fn genus_drop_ratio(cover: &CoverData, chi0: QuadraticTwist) -> Result<ExpFraction> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, String, String, QuadraticTwist), ExpFraction>>> = OnceLock::new();
    let key = (cover.q(), cover.zeta_x().to_string(), cover.eta_l().to_string(), chi0);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let q = cover.q();
    let w = cover.deg_omega();
    let rank_one = script_l(cover, 1, chi0)
        .shift_argument(HalfInteger::HALF)
        .mul_poly(&(&q_const(q, w / 2) * &ExpPoly::t_power(q, -w)));
    let ratio = script_l(cover, 2, chi0).div(&rank_one)?.reduce();
    cache.lock().expect("cache lock").insert(key, ratio.clone());
    Ok(ratio)
}

/// `E~` for `E = E1 + E2`, `a = diag(0, a2)`, from the genus-drop identity:
///
/// `chi(E1) chi(E2) q^{(1+s) deg E1} q^{2 s w} L_2(s, chi_0) / (q^{(s+1/2) w} L_1(s+1/2, chi_0))`
/// plus the same expression at `-s`.
///
/// With trivial restriction the result is a Laurent polynomial; with `eta`
/// it is a genuine rational function of `t`.
pub fn degenerate_rank2_coefficient(
    pic: &PicModel,
    cover: &CoverData,
    e1: LineBundleClass,
    e2: LineBundleClass,
    chi: &HeckeCharacter,
) -> Result<ExpFraction> {
    require_selfdual(pic, cover, e2)?;
    let q = cover.q();
    let w = cover.deg_omega();
    let prefactor = ExpPoly::monomial(q, -e1.degree - 2 * w, CycNumber::from_rational(crate::algebra::q_pow(q, e1.degree)))
        .scale(&chi_det(pic, chi, &[e1, e2]));
    let term = genus_drop_ratio(cover, chi.restriction)?.mul_poly(&prefactor);
    let total = term.add(&term.reflect())?.reduce();
    if total.reflect() != total {
        return Err(Error::invariant(CHECK_REFLECTION, format!("genus-drop coefficient not reflect-invariant: {total}")));
    }
    Ok(total)
}

/// `E~ = chi(E1) chi(E2) q^{-d} (t^{-d} L(2s, eta) + t^{d} L(-2s, eta))`,
/// `d = d(E1)`, valid when `chi` restricts trivially.
pub fn degenerate_rank2_closed_form(
    pic: &PicModel,
    cover: &CoverData,
    e1: LineBundleClass,
    e2: LineBundleClass,
    chi: &HeckeCharacter,
) -> Result<ExpPoly> {
    require_selfdual(pic, cover, e2)?;
    if chi.restriction != QuadraticTwist::Trivial {
        return Err(Error::Restriction("the closed form needs chi trivial on Pic(X)".into()));
    }
    let q = cover.q();
    let d = d_invariant(&[e1], cover);
    let l2 = cover.eta_l().compose_affine(2, HalfInteger::ZERO);
    let sym = &(&ExpPoly::t_power(q, -d) * &l2) + &(&ExpPoly::t_power(q, d) * &l2.reflect());
    let scalar = chi_det(pic, chi, &[e1, e2]) * CycNumber::from_rational(crate::algebra::q_pow(q, -d));
    Ok(sym.scale(&scalar))
}

/// What a density plugin is told about an injective, non-isomorphic `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelDescriptor {
    pub e1: LineBundleClass,
    pub e2: LineBundleClass,
    pub a1: BlockTag,
    /// Index of the off-diagonal section in `1..q^h`.
    pub section: u128,
    pub hom_dimension: u32,
    /// `length coker(a) = 2 d(E)`.
    pub cokernel_length: i64,
}

/// Normalized coefficients for the terms of the doubling sum that the closed
/// forms do not cover.
pub trait DensityPlugin {
    fn coefficient(&self, cover: &CoverData, term: &CokernelDescriptor) -> Result<ExpPoly>;
}

/// Assigns 0 to every injective term.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroDensity;

impl DensityPlugin for ZeroDensity {
    fn coefficient(&self, cover: &CoverData, _term: &CokernelDescriptor) -> Result<ExpPoly> {
        Ok(ExpPoly::zero(cover.q()))
    }
}

/// Sum of `E~` over the hermitian maps with diagonal blocks `(a1, a2)`,
/// `a2` an isomorphism on `E2`.
#[allow(clippy::too_many_arguments)]
pub fn doubling_coefficient(
    pic: &PicModel,
    cover: &CoverData,
    e1: LineBundleClass,
    a1: BlockTag,
    e2: LineBundleClass,
    chi: &HeckeCharacter,
    plugin: Option<&dyn DensityPlugin>,
) -> Result<ExpFraction> {
    let census = complement_census(pic, cover, e1, e2)?;
    let mut total = match a1 {
        BlockTag::Zero => degenerate_rank2_coefficient(pic, cover, e1, e2, chi)?,
        BlockTag::Iso => ExpFraction::from_poly(iso_coefficient(pic, cover, &[e1, e2], chi)?),
        BlockTag::Other => {
            return Err(Error::Unsupported("a1 neither zero nor an isomorphism needs representation densities".into()))
        }
    };
    if census.is_resolved() {
        return Ok(total);
    }
    let Some(plugin) = plugin else {
        return Err(census.to_error());
    };
    if census.term_count() > MAX_PLUGIN_TERMS {
        return Err(census.to_error());
    }
    let cokernel_length = 2 * d_invariant(&[e1, e2], cover);
    for section in 1..census.term_count() {
        let term = CokernelDescriptor { e1, e2, a1, section, hom_dimension: census.dimension, cokernel_length };
        total = total.add(&ExpFraction::from_poly(plugin.coefficient(cover, &term)?))?;
    }
    Ok(total.reduce())
}

/// A fully specified coefficient: the pair `(E, a)` and the character.
#[derive(Clone, Debug)]
pub struct CoefficientRequest {
    pub pair: HermitianPair,
    pub chi: HeckeCharacter,
    /// Divide out `q^{2 s w} L_2(s, chi_0)` when false.
    pub normalized: bool,
}

impl CoefficientRequest {
    pub fn evaluate(&self, pic: &PicModel, cover: &CoverData, plugin: Option<&dyn DensityPlugin>) -> Result<ExpFraction> {
        if self.pair.a2 != BlockTag::Iso {
            return Err(Error::Unsupported("only a2 = iso has a closed form".into()));
        }
        let normalized = doubling_coefficient(pic, cover, self.pair.e1, self.pair.a1, self.pair.e2, &self.chi, plugin)?;
        if self.normalized {
            return Ok(normalized);
        }
        let factor = script_l(cover, 2, self.chi.restriction).mul_poly(&ExpPoly::t_power(cover.q(), -2 * cover.deg_omega()));
        normalized.div(&factor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveModel;

    fn f5() -> (CoverData, PicModel) {
        let cover = CoverData::from_model(CurveModel::new(5, 0, -1, "").unwrap()).unwrap();
        let pic = PicModel::new(&cover).unwrap();
        (cover, pic)
    }

    #[test]
    fn closed_form_example() {
        let (cover, pic) = f5();
        let chi = HeckeCharacter::trivial(&pic);
        let e2 = LineBundleClass::new(0, 0);
        let v = degenerate_rank2_closed_form(&pic, &cover, LineBundleClass::new(3, 0), e2, &chi).unwrap();
        let expected = ExpPoly::from_terms(5, [(3, CycNumber::from_int(125)), (-3, CycNumber::from_int(125))]);
        assert_eq!(v, expected);
        let general = degenerate_rank2_coefficient(&pic, &cover, LineBundleClass::new(3, 0), e2, &chi).unwrap();
        assert_eq!(general.to_poly().unwrap(), expected);
    }

    #[test]
    fn iso_coefficient_is_chi_det() {
        let (cover, pic) = f5();
        let chi = HeckeCharacter::trivial(&pic);
        let e = LineBundleClass::new(0, 0);
        assert_eq!(iso_coefficient(&pic, &cover, &[e], &chi).unwrap(), ExpPoly::one(5));
        assert!(iso_coefficient(&pic, &cover, &[LineBundleClass::new(1, 0)], &chi).is_err());
        for chi in pic.enumerate_characters(QuadraticTwist::Trivial, 2) {
            for c in crate::bundles::selfdual_classes(&pic, &cover) {
                let v = iso_coefficient(&pic, &cover, &[c], &chi).unwrap();
                assert_eq!(v.as_constant().unwrap(), pic.chi_value(&chi, c));
                assert!(v.central_derivative(2).value.is_zero());
            }
        }
    }

    #[test]
    fn intertwining_involution() {
        let (cover, _) = f5();
        for n in 1..=2 {
            for chi0 in [QuadraticTwist::Trivial, QuadraticTwist::Eta] {
                let c = intertwining_constant(&cover, n, chi0).unwrap();
                assert_eq!(c.mul(&c.reflect()).unwrap(), ExpFraction::one(5));
            }
        }
    }

    #[test]
    fn census_gate_and_zero_plugin() {
        let (cover, pic) = f5();
        let chi = HeckeCharacter::trivial(&pic);
        let e1 = LineBundleClass::new(-3, 0);
        let e2 = LineBundleClass::new(0, 0);
        match doubling_coefficient(&pic, &cover, e1, BlockTag::Zero, e2, &chi, None) {
            Err(Error::UnresolvedCensus { terms, .. }) => assert_eq!(terms, 125),
            other => panic!("expected unresolved census, got {other:?}"),
        }
        let with_stub = doubling_coefficient(&pic, &cover, e1, BlockTag::Zero, e2, &chi, Some(&ZeroDensity)).unwrap();
        let singular = degenerate_rank2_coefficient(&pic, &cover, e1, e2, &chi).unwrap();
        assert_eq!(with_stub, singular);
    }

    #[test]
    fn eta_restriction_gives_a_symmetric_fraction() {
        let (cover, pic) = f5();
        let chars = pic.enumerate_characters(QuadraticTwist::Eta, 4);
        assert!(!chars.is_empty());
        let e2 = LineBundleClass::new(0, 0);
        let v = degenerate_rank2_coefficient(&pic, &cover, LineBundleClass::new(2, 0), e2, &chars[0]).unwrap();
        assert_eq!(v.reflect(), v);
        assert!(v.to_poly().is_none());
    }

    #[test]
    fn dual_path_on_genus_two_table() {
        use crate::curve::CountTable;
        let base = CountTable { q: 3, genus: 2, counts: vec![5, 17, 26, 89] };
        let cover_t = CountTable { q: 3, genus: 3, counts: vec![8, 14, 26, 98] };
        let cover = CoverData::from_tables(base, cover_t, "g2").unwrap();
        let pic = PicModel::new(&cover).unwrap();
        let chi = HeckeCharacter::trivial(&pic);
        let e2 = LineBundleClass::new(2, 0);
        assert!(is_selfdual(&pic, &cover, e2));
        for deg in -3..=5 {
            let e1 = LineBundleClass::new(deg, 0);
            let general = degenerate_rank2_coefficient(&pic, &cover, e1, e2, &chi).unwrap();
            let closed = degenerate_rank2_closed_form(&pic, &cover, e1, e2, &chi).unwrap();
            assert_eq!(general.to_poly().unwrap(), closed, "deg E1 = {deg}");
        }
    }
}
