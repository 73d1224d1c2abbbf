//! Split bundles `E = E1 + E2` on `X'`, hermitian block data, `d(E)`, the
//! `sigma`-twisted Serre dual, and the census of off-diagonal blocks.

use std::fmt;

use crate::curve::CoverData;
use crate::error::{Error, Result};
use crate::picard::PicModel;

pub use crate::picard::LineBundleClass;

/// Shape of a diagonal block of the hermitian map `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockTag {
    Zero,
    Iso,
    Other,
}

impl BlockTag {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(BlockTag::Zero),
            "iso" => Ok(BlockTag::Iso),
            "other" => Ok(BlockTag::Other),
            _ => Err(Error::Parse(format!("unknown block tag `{s}` (expected zero, iso or other)"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockTag::Zero => "zero",
            BlockTag::Iso => "iso",
            BlockTag::Other => "other",
        }
    }
}

impl fmt::Display for BlockTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether the off-diagonal block is pinned down.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffDiagonal {
    Resolved,
    Unresolved { dimension: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianPair {
    pub e1: LineBundleClass,
    pub e2: LineBundleClass,
    pub a1: BlockTag,
    pub a2: BlockTag,
    pub offdiag: OffDiagonal,
}

impl HermitianPair {
    /// Checks that iso blocks sit on self-dual classes and fills in the
    /// off-diagonal status from the census.
    pub fn new(pic: &PicModel, cover: &CoverData, e1: LineBundleClass, a1: BlockTag, e2: LineBundleClass, a2: BlockTag) -> Result<Self> {
        for (e, a, name) in [(e1, a1, "E1"), (e2, a2, "E2")] {
            if a == BlockTag::Iso && !is_selfdual(pic, cover, e) {
                return Err(Error::NotSelfDual(format!("{name} = {e} carries an iso block but is not self-dual")));
            }
        }
        let h = hom_dimension(pic, cover, e1, e2)?;
        let offdiag = if h == 0 { OffDiagonal::Resolved } else { OffDiagonal::Unresolved { dimension: h } };
        Ok(HermitianPair { e1, e2, a1, a2, offdiag })
    }

    pub fn classes(&self) -> [LineBundleClass; 2] {
        [self.e1, self.e2]
    }
}

/// `d(E) = rank(E) deg(omega_X) - deg(E)`.
pub fn d_invariant(e: &[LineBundleClass], cover: &CoverData) -> i64 {
    e.len() as i64 * cover.deg_omega() - e.iter().map(|c| c.degree).sum::<i64>()
}

/// `sigma^* Hom(E, omega_{X'})`.
///
/// On the elliptic models `omega_{X'}` is trivial; on table covers only the
/// degree is tracked.
pub fn sigma_serre_dual(pic: &PicModel, cover: &CoverData, e: LineBundleClass) -> LineBundleClass {
    let omega_degree = 2 * cover.cover_genus() as i64 - 2;
    let dual = LineBundleClass::new(omega_degree - e.degree, pic.x_prime().finite().neg(e.pic0));
    pic.sigma(dual)
}

pub fn is_selfdual(pic: &PicModel, cover: &CoverData, e: LineBundleClass) -> bool {
    sigma_serre_dual(pic, cover, e) == e
}

/// `h^0` of a line bundle class on a genus-one curve.
fn sections_genus_one(c: LineBundleClass) -> u32 {
    match c.degree {
        d if d >= 1 => d as u32,
        0 if c.pic0 == 0 => 1,
        _ => 0,
    }
}

/// `dim Hom(E2, sigma^* E1^vee) = h^0(E2^{-1} (x) sigma^* E1^vee)`.
pub fn hom_dimension(pic: &PicModel, cover: &CoverData, e1: LineBundleClass, e2: LineBundleClass) -> Result<u32> {
    if pic.is_degree_only() || cover.cover_genus() != 1 {
        return Err(Error::Unsupported(
            "the off-diagonal census needs Riemann-Roch on X'; only genus-one models carry it".into(),
        ));
    }
    let hom = pic.x_prime().sub(sigma_serre_dual(pic, cover, e1), e2);
    Ok(sections_genus_one(hom))
}

/// The hermitian maps with prescribed diagonal blocks, indexed by the
/// off-diagonal section `b` (index 0 is `b = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub q: u64,
    pub dimension: u32,
    pub hom_class: LineBundleClass,
}

impl Census {
    /// `q^h`, the number of off-diagonal choices.
    pub fn term_count(&self) -> u128 {
        (self.q as u128).pow(self.dimension)
    }

    pub fn is_resolved(&self) -> bool {
        self.dimension == 0
    }

    pub fn to_error(&self) -> Error {
        Error::UnresolvedCensus { terms: self.term_count(), dimension: self.dimension }
    }
}

pub fn complement_census(pic: &PicModel, cover: &CoverData, e1: LineBundleClass, e2: LineBundleClass) -> Result<Census> {
    if !is_selfdual(pic, cover, e2) {
        return Err(Error::NotSelfDual(format!("E2 = {e2} is not self-dual")));
    }
    let dimension = hom_dimension(pic, cover, e1, e2)?;
    let hom_class = pic.x_prime().sub(sigma_serre_dual(pic, cover, e1), e2);
    Ok(Census { q: cover.q(), dimension, hom_class })
}

/// Degree-zero classes fixed by the `sigma`-twisted Serre dual.
pub fn selfdual_classes(pic: &PicModel, cover: &CoverData) -> Vec<LineBundleClass> {
    let g = cover.cover_genus() as i64;
    pic.x_prime().classes(g - 1..=g - 1).into_iter().filter(|&c| is_selfdual(pic, cover, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{CurveModel, Point};

    fn f5() -> (CoverData, PicModel) {
        let cover = CoverData::from_model(CurveModel::new(5, 0, -1, "").unwrap()).unwrap();
        let pic = PicModel::new(&cover).unwrap();
        (cover, pic)
    }

    #[test]
    fn d_invariant_examples() {
        let (cover, _) = f5();
        assert_eq!(d_invariant(&[LineBundleClass::new(-3, 0)], &cover), 3);
        assert_eq!(d_invariant(&[LineBundleClass::new(2, 1), LineBundleClass::new(-5, 3)], &cover), 3);
    }

    #[test]
    fn serre_dual_is_an_involution() {
        let (cover, pic) = f5();
        assert_eq!(sigma_serre_dual(&pic, &cover, LineBundleClass::new(0, 0)), LineBundleClass::new(0, 0));
        for c in pic.x_prime().classes(-3..=3) {
            let d = sigma_serre_dual(&pic, &cover, c);
            assert_eq!(d.degree, -c.degree);
            assert_eq!(sigma_serre_dual(&pic, &cover, d), c);
        }
    }

    #[test]
    fn selfdual_means_two_torsion_of_degree_zero() {
        let (cover, pic) = f5();
        let f = pic.x_prime().finite();
        for c in pic.x_prime().classes(-2..=2) {
            let expected = c.degree == 0 && f.mul(2, c.pic0) == 0;
            assert_eq!(is_selfdual(&pic, &cover, c), expected, "{c}");
            if expected {
                assert_eq!(d_invariant(&[c], &cover), 0);
            }
        }
        assert_eq!(selfdual_classes(&pic, &cover).len(), 4);
    }

    #[test]
    fn census_examples() {
        let (cover, pic) = f5();
        let e2 = LineBundleClass::new(0, 0);
        let c = complement_census(&pic, &cover, LineBundleClass::new(3, 0), e2).unwrap();
        assert_eq!((c.hom_class.degree, c.dimension), (-3, 0));
        let c = complement_census(&pic, &cover, LineBundleClass::new(-3, 0), e2).unwrap();
        assert_eq!((c.dimension, c.term_count()), (3, 125));
        let nontrivial = (1..pic.x_prime().finite().order()).next().unwrap();
        let c = complement_census(&pic, &cover, LineBundleClass::new(0, nontrivial), e2).unwrap();
        assert_eq!(c.dimension, 0);
    }

    /// Counts `f` in `L((d+1)[O])` vanishing at `-P` by enumerating all
    /// coefficient vectors over `F_p`; `[P] + (d-1)[O] ~ (d+1)[O] - [-P]`.
    fn brute_force_sections(model: &CurveModel, degree: i64, p: Point) -> u64 {
        let q = model.q() as i64;
        let f = model.field();
        if degree < 0 {
            return 1;
        }
        let (bound, zero_at) = match p {
            Point::Infinity => (degree, None),
            _ => (degree + 1, Some(model.neg(p))),
        };
        // x^i y^j with pole order 2i + 3j <= bound; pole order 1 does not occur
        let monomials: Vec<(i64, i64)> = (0..=bound)
            .flat_map(|i| (0..=1).map(move |j| (i, j)))
            .filter(|&(i, j)| 2 * i + 3 * j <= bound)
            .collect();
        let values: Vec<i64> = match zero_at {
            Some(Point::Affine(x, y)) => monomials.iter().map(|&(i, j)| f.mul(f.pow(x, i as u64), f.pow(y, j as u64))).collect(),
            Some(Point::Infinity) => unreachable!(),
            None => vec![0; monomials.len()],
        };
        let mut count = 0;
        let total = (q as u64).pow(monomials.len() as u32);
        for mut code in 0..total {
            let mut acc = 0;
            for v in &values {
                let c = (code % q as u64) as i64;
                code /= q as u64;
                acc = f.r(acc + c * v);
            }
            if acc == 0 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn census_dimension_matches_section_count() {
        let (cover, pic) = f5();
        let model = cover.cover_model().unwrap().clone();
        for c in pic.x_prime().classes(-1..=3) {
            let h = sections_genus_one(c);
            let p = pic.x_prime().point(c.pic0);
            let count = brute_force_sections(&model, c.degree, p);
            assert_eq!(count, 5u64.pow(h), "{c} -> {p}");
        }
    }
}
