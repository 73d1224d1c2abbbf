//! Picard groups of `X` and `X'`, the maps between them, the quadratic
//! character `eta`, and unramified finite-order Hecke characters.
//!
//! For an elliptic model a class is written `d [O] + ([P] - [O])`, stored as
//! the pair `(d, P)` with `P` an index into the rational points. For the
//! cover `X' -> X` (the dual of the 2-isogeny with kernel `<T'>`, `T' = (0,0)`
//! on `X'`):
//!
//! * pullback `(d, P) -> (2d, phi(P) + d T')`,
//! * norm `(d, P') -> (d, phi_dual(P'))`,
//! * deck involution `sigma* (d, P') = (d, P' + d T')`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_integer::Integer;

use crate::algebra::{CycNumber, ExpPoly};
use crate::curve::zeta::{l_function, zeta_fraction, LSeries, LValue, QuadraticTwist};
use crate::curve::{CoverData, CurveModel, Point};
use crate::error::{Error, Result};

pub const CHECK_NORM_INDEX: &str = "norm-index-two";
pub const CHECK_NORM_PULLBACK: &str = "norm-pullback-doubling";
pub const CHECK_SIGMA: &str = "sigma-involution";
pub const CHECK_ETA: &str = "eta-character";

/// A finite abelian group in coordinates `Z/n_1 x ... x Z/n_k`.
///
/// Element `i` has coordinates `coords[i]`; element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteAbelianGroup {
    invariants: Vec<u32>,
    coords: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        let coords = vec![vec![]];
        let index = HashMap::from([(vec![], 0)]);
        FiniteAbelianGroup { invariants: vec![], coords, index }
    }

    /// Decompose the group on `elements` (identity first) into cyclic factors.
    ///
    /// Greedy: take an element of maximal order, then repeatedly a coset of
    /// maximal order in the quotient together with a lift of the same order.
    /// Returns the generators (as elements) and the group.
    pub fn decompose<T, F>(elements: &[T], add: F) -> Result<(Vec<T>, Self)>
    where
        T: Copy + Eq + Hash,
        F: Fn(T, T) -> T,
    {
        let zero = elements[0];
        let n = elements.len();
        let mut span: HashMap<T, Vec<u32>> = HashMap::from([(zero, vec![])]);
        let mut gens = Vec::new();
        let mut invariants = Vec::new();
        let multiple = |k: u32, x: T| (0..k).fold(zero, |acc, _| add(acc, x));
        while span.len() < n {
            let order_mod = |x: T, span: &HashMap<T, Vec<u32>>| {
                let mut m = 1;
                let mut y = x;
                while !span.contains_key(&y) {
                    y = add(y, x);
                    m += 1;
                }
                m
            };
            let best = elements.iter().map(|&x| order_mod(x, &span)).max().unwrap();
            let lift = elements
                .iter()
                .copied()
                .find(|&x| order_mod(x, &span) == best && multiple(best, x) == zero)
                .ok_or_else(|| Error::Unsupported("group decomposition found no lift".into()))?;
            let mut next = HashMap::new();
            for (h, c) in &span {
                let mut y = *h;
                for k in 0..best {
                    let mut cc = c.clone();
                    cc.push(k);
                    next.insert(y, cc);
                    y = add(y, lift);
                }
            }
            span = next;
            gens.push(lift);
            invariants.push(best);
        }
        let coords: Vec<Vec<u32>> = elements.iter().map(|e| span[e].clone()).collect();
        let index = coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Ok((gens, FiniteAbelianGroup { invariants, coords, index }))
    }

    pub fn order(&self) -> usize {
        self.coords.len()
    }

    /// Orders of the cyclic factors, in generator order.
    pub fn invariants(&self) -> &[u32] {
        &self.invariants
    }

    pub fn coords(&self, i: usize) -> &[u32] {
        &self.coords[i]
    }

    pub fn generator(&self, j: usize) -> usize {
        let mut c = vec![0; self.invariants.len()];
        c[j] = 1;
        self.index[&c]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let c: Vec<u32> = self.coords[a]
            .iter()
            .zip(&self.coords[b])
            .zip(&self.invariants)
            .map(|((x, y), n)| (x + y) % n)
            .collect();
        self.index[&c]
    }

    pub fn neg(&self, a: usize) -> usize {
        let c: Vec<u32> = self.coords[a].iter().zip(&self.invariants).map(|(x, n)| (n - x) % n).collect();
        self.index[&c]
    }

    pub fn mul(&self, k: i64, a: usize) -> usize {
        let c: Vec<u32> = self.coords[a]
            .iter()
            .zip(&self.invariants)
            .map(|(&x, &n)| (k.rem_euclid(n as i64) * x as i64).rem_euclid(n as i64) as u32)
            .collect();
        self.index[&c]
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.coords[a].iter().zip(&self.invariants).fold(1, |acc, (&x, &n)| acc.lcm(&(n / n.gcd(&x))))
    }

    pub fn exponent(&self) -> u32 {
        self.invariants.iter().fold(1, |acc, n| acc.lcm(n))
    }
}

/// A divisor class: degree plus an element of the finite part `Pic^0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineBundleClass {
    pub degree: i64,
    pub pic0: usize,
}

impl LineBundleClass {
    pub fn new(degree: i64, pic0: usize) -> Self {
        LineBundleClass { degree, pic0 }
    }
}

impl fmt::Display for LineBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(deg {}, pic0 #{})", self.degree, self.pic0)
    }
}

/// One side (`X` or `X'`) of the Picard model.
#[derive(Clone, Debug)]
pub struct PicGroup {
    finite: FiniteAbelianGroup,
    points: Vec<Point>,
}

impl PicGroup {
    fn from_model(model: &CurveModel) -> Result<Self> {
        let points = model.points();
        let pos: HashMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let (_, finite) = FiniteAbelianGroup::decompose(&(0..points.len()).collect::<Vec<_>>(), |a, b| {
            pos[&model.add(points[a], points[b])]
        })?;
        Ok(PicGroup { finite, points })
    }

    fn degree_only() -> Self {
        PicGroup { finite: FiniteAbelianGroup::trivial(), points: vec![Point::Infinity] }
    }

    pub fn finite(&self) -> &FiniteAbelianGroup {
        &self.finite
    }

    /// The rational point representing `pic0` index `i` (model mode).
    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.points.iter().position(|&x| x == p)
    }

    pub fn add(&self, a: LineBundleClass, b: LineBundleClass) -> LineBundleClass {
        LineBundleClass::new(a.degree + b.degree, self.finite.add(a.pic0, b.pic0))
    }

    pub fn neg(&self, a: LineBundleClass) -> LineBundleClass {
        LineBundleClass::new(-a.degree, self.finite.neg(a.pic0))
    }

    pub fn sub(&self, a: LineBundleClass, b: LineBundleClass) -> LineBundleClass {
        self.add(a, self.neg(b))
    }

    /// Every class with degree in `degrees`.
    pub fn classes(&self, degrees: std::ops::RangeInclusive<i64>) -> Vec<LineBundleClass> {
        degrees.flat_map(|d| (0..self.finite.order()).map(move |i| LineBundleClass::new(d, i))).collect()
    }
}

/// `Pic(X)`, `Pic(X')` and the maps pullback, norm and `sigma*`.
#[derive(Clone, Debug)]
pub struct PicModel {
    x: PicGroup,
    x_prime: PicGroup,
    /// finite part of `pi^*` restricted to `Pic^0(X)`, by index
    pullback0: Vec<usize>,
    norm0: Vec<usize>,
    /// `pic0` index of `T'`; the finite part of `pi^*[O]` and of `sigma^*[O']`.
    kernel_point: usize,
    degree_only: bool,
}

impl PicModel {
    /// Build the Picard model of a cover. Table covers yield a degree-only
    /// model whose finite parts are not tracked.
    pub fn new(cover: &CoverData) -> Result<Self> {
        let (Some(mx), Some(mxp)) = (cover.base_model(), cover.cover_model()) else {
            return Ok(PicModel {
                x: PicGroup::degree_only(),
                x_prime: PicGroup::degree_only(),
                pullback0: vec![0],
                norm0: vec![0],
                kernel_point: 0,
                degree_only: true,
            });
        };
        let x = PicGroup::from_model(mx)?;
        let x_prime = PicGroup::from_model(mxp)?;
        let pullback0 = x.points.iter().map(|&p| x_prime.index_of(mx.isogeny(p)).expect("image on X'")).collect();
        let norm0 = x_prime.points.iter().map(|&p| x.index_of(mx.dual_isogeny(p)).expect("image on X")).collect();
        let kernel_point = x_prime.index_of(Point::Affine(0, 0)).ok_or(Error::NoTwoTorsion)?;
        let pic = PicModel { x, x_prime, pullback0, norm0, kernel_point, degree_only: false };
        pic.check()?;
        Ok(pic)
    }

    pub fn is_degree_only(&self) -> bool {
        self.degree_only
    }

    pub fn x(&self) -> &PicGroup {
        &self.x
    }

    pub fn x_prime(&self) -> &PicGroup {
        &self.x_prime
    }

    pub fn kernel_point(&self) -> usize {
        self.kernel_point
    }

    /// `pi^*: Pic(X) -> Pic(X')`.
    pub fn pullback(&self, c: LineBundleClass) -> LineBundleClass {
        let f = self.x_prime.finite();
        LineBundleClass::new(2 * c.degree, f.add(self.pullback0[c.pic0], f.mul(c.degree, self.kernel_point)))
    }

    /// `Nm: Pic(X') -> Pic(X)`.
    pub fn norm(&self, c: LineBundleClass) -> LineBundleClass {
        LineBundleClass::new(c.degree, self.norm0[c.pic0])
    }

    /// `sigma^*` on `Pic(X')`.
    pub fn sigma(&self, c: LineBundleClass) -> LineBundleClass {
        let f = self.x_prime.finite();
        LineBundleClass::new(c.degree, f.add(c.pic0, f.mul(c.degree, self.kernel_point)))
    }

    /// The image of the norm inside `Pic^0(X)`, as a membership mask.
    fn norm_image_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.x.finite.order()];
        for &i in &self.norm0 {
            mask[i] = true;
        }
        mask
    }

    /// `[Pic(X) : Nm Pic(X')]`. The degree parts match (`Nm [O'] = [O]`), so
    /// only the finite parts contribute.
    pub fn norm_index(&self) -> usize {
        let image = self.norm_image_mask().iter().filter(|&&b| b).count();
        self.x.finite.order() / image
    }

    fn check(&self) -> Result<()> {
        let fx = self.x.finite();
        for d in -2..=2 {
            for i in 0..fx.order() {
                let c = LineBundleClass::new(d, i);
                let back = self.norm(self.pullback(c));
                if back != LineBundleClass::new(2 * d, fx.mul(2, i)) {
                    return Err(Error::invariant(CHECK_NORM_PULLBACK, format!("Nm(pi^* {c}) = {back}")));
                }
            }
        }
        for c in self.x_prime.classes(-2..=2) {
            if self.sigma(self.sigma(c)) != c {
                return Err(Error::invariant(CHECK_SIGMA, format!("sigma* is not an involution at {c}")));
            }
        }
        for c in self.x.classes(-1..=1) {
            let p = self.pullback(c);
            if self.sigma(p) != p {
                return Err(Error::invariant(CHECK_SIGMA, format!("sigma* moves the pullback {p}")));
            }
        }
        if self.norm_index() != 2 {
            return Err(Error::invariant(CHECK_NORM_INDEX, format!("[Pic X : Nm Pic X'] = {}", self.norm_index())));
        }
        Ok(())
    }

    /// The quadratic character `eta` of `Pic(X)`, trivial exactly on norms.
    pub fn eta_character(&self) -> Result<ClassCharacter> {
        if self.degree_only {
            return Err(Error::Unsupported("eta needs the finite part of Pic(X); table covers only track degrees".into()));
        }
        let mask = self.norm_image_mask();
        let fx = self.x.finite();
        let exps: Vec<i64> = (0..fx.invariants().len()).map(|j| if mask[fx.generator(j)] { 0 } else { 1 }).collect();
        let eta = ClassCharacter::new(2, 0, exps);
        for i in 0..fx.order() {
            let v = eta.value(fx, LineBundleClass::new(0, i));
            let expected = if mask[i] { 1 } else { -1 };
            if v != CycNumber::from_int(expected) {
                return Err(Error::invariant(CHECK_ETA, format!("norm image is not the kernel of a character at #{i}")));
            }
        }
        Ok(eta)
    }

    /// The restriction `chi_0 = chi o pi^*` of a character of `Pic(X')`.
    pub fn restrict(&self, chi: &ClassCharacter) -> ClassCharacter {
        let fx = self.x.finite();
        let fxp = self.x_prime.finite();
        let exp_of = |c: LineBundleClass| chi.exponent(fxp, c);
        let deg = exp_of(self.pullback(LineBundleClass::new(1, 0)));
        let fin = (0..fx.invariants().len()).map(|j| exp_of(self.pullback(LineBundleClass::new(0, fx.generator(j))))).collect();
        ClassCharacter::new(chi.order, deg, fin)
    }

    /// Which of `{1, eta}` a character of `Pic(X')` restricts to, if either.
    pub fn restriction_tag(&self, chi: &ClassCharacter) -> Option<QuadraticTwist> {
        let chi0 = self.restrict(chi);
        let fx = self.x.finite();
        if chi0.is_trivial(fx) {
            return Some(QuadraticTwist::Trivial);
        }
        let eta = self.eta_character().ok()?;
        (0..=fx.invariants().len())
            .all(|j| {
                let c = if j == 0 { LineBundleClass::new(1, 0) } else { LineBundleClass::new(0, fx.generator(j - 1)) };
                chi0.value(fx, c) == eta.value(fx, c)
            })
            .then_some(QuadraticTwist::Eta)
    }

    /// All characters of `Pic(X')` of order at most `max_order` whose
    /// restriction to `Pic(X)` is `restriction`, sorted by
    /// `(order, degree exponent, finite exponents)`.
    pub fn enumerate_characters(&self, restriction: QuadraticTwist, max_order: u32) -> Vec<HeckeCharacter> {
        let max_order = max_order.max(1);
        let fxp = self.x_prime.finite();
        let big = (1..=max_order).fold(1u32, |a, b| a.lcm(&b));
        let inv = fxp.invariants().to_vec();
        let mut out = Vec::new();
        let mut finite: Vec<u32> = vec![0; inv.len()];
        loop {
            let fin_order = finite.iter().zip(&inv).fold(1u32, |acc, (&e, &n)| acc.lcm(&(n / n.gcd(&e))));
            for de in 0..big {
                let order = fin_order.lcm(&(big / big.gcd(&de)));
                if order > max_order {
                    continue;
                }
                let chi = ClassCharacter::new(
                    order,
                    (de * order / big) as i64,
                    finite.iter().zip(&inv).map(|(&e, &n)| (e * order / n) as i64).collect(),
                );
                if self.restriction_tag(&chi) == Some(restriction) {
                    out.push(HeckeCharacter { chi, restriction });
                }
            }
            // odometer over finite exponents
            let mut j = 0;
            while j < inv.len() {
                finite[j] += 1;
                if finite[j] < inv[j] {
                    break;
                }
                finite[j] = 0;
                j += 1;
            }
            if j == inv.len() {
                break;
            }
        }
        out.sort_by(|a, b| {
            (a.chi.order, a.chi.degree_exp, &a.chi.finite_exps).cmp(&(b.chi.order, b.chi.degree_exp, &b.chi.finite_exps))
        });
        out.dedup_by(|a, b| a.chi == b.chi);
        out
    }

    /// `chi(cls)` for a class on `X'`.
    pub fn chi_value(&self, chi: &HeckeCharacter, cls: LineBundleClass) -> CycNumber {
        chi.chi.value(self.x_prime.finite(), cls)
    }

    /// `L(s, chi_0)` for a character of `Pic(X)`.
    ///
    /// Trivial on `Pic^0`: the zeta function at `zeta t`, `zeta = chi_0([O])`.
    /// Otherwise the polynomial `sum_{D >= 0, deg D <= 2g-2} chi_0(D) t^{deg D}`,
    /// which for the genus-one models reduces to the empty divisor.
    pub fn char_lfunction(&self, cover: &CoverData, chi0: &ClassCharacter) -> Result<LSeries> {
        let fx = self.x.finite();
        if chi0.is_trivial(fx) {
            return Ok(l_function(cover, QuadraticTwist::Trivial));
        }
        if chi0.is_trivial_on_finite(fx) {
            let z = CycNumber::root_of_unity(chi0.order, chi0.degree_exp);
            let twisted = |p: &ExpPoly| {
                ExpPoly::from_terms(p.q(), p.terms().map(|(k, c)| (k, c * &z.pow(k as u32))))
            };
            let f = zeta_fraction(cover.zeta_x(), cover.q());
            let value = crate::algebra::ExpFraction::new(twisted(f.num()), twisted(f.den()))?;
            return Ok(LSeries { character: chi0.to_string(), value: LValue::Fraction(value) });
        }
        if self.degree_only || cover.genus() != 1 {
            return Err(Error::Unsupported("only trivial and eta characters are available for table covers".into()));
        }
        Ok(LSeries { character: chi0.to_string(), value: LValue::Poly(ExpPoly::one(cover.q())) })
    }
}

/// A finite-order character of `Z [O] + Pic^0`: the basepoint goes to
/// `zeta_N^degree_exp`, the `j`-th generator of the finite part to
/// `zeta_N^finite_exps[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassCharacter {
    order: u32,
    degree_exp: i64,
    finite_exps: Vec<i64>,
}

impl ClassCharacter {
    pub fn new(order: u32, degree_exp: i64, finite_exps: Vec<i64>) -> Self {
        let n = order as i64;
        ClassCharacter {
            order,
            degree_exp: degree_exp.rem_euclid(n),
            finite_exps: finite_exps.into_iter().map(|e| e.rem_euclid(n)).collect(),
        }
    }

    pub fn trivial(rank: usize) -> Self {
        Self::new(1, 0, vec![0; rank])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree_exp(&self) -> i64 {
        self.degree_exp
    }

    pub fn finite_exps(&self) -> &[i64] {
        &self.finite_exps
    }

    /// Whether the exponents respect the generator relations `n_j g_j = 0`.
    pub fn is_well_defined(&self, group: &FiniteAbelianGroup) -> bool {
        self.finite_exps.len() == group.invariants().len()
            && self.finite_exps.iter().zip(group.invariants()).all(|(&e, &n)| (e * n as i64) % self.order as i64 == 0)
    }

    /// `e` with `chi(c) = zeta_N^e`.
    pub fn exponent(&self, group: &FiniteAbelianGroup, c: LineBundleClass) -> i64 {
        let fin: i64 = group.coords(c.pic0).iter().zip(&self.finite_exps).map(|(&x, &e)| x as i64 * e).sum();
        (self.degree_exp * c.degree + fin).rem_euclid(self.order as i64)
    }

    pub fn value(&self, group: &FiniteAbelianGroup, c: LineBundleClass) -> CycNumber {
        CycNumber::root_of_unity(self.order, self.exponent(group, c))
    }

    pub fn is_trivial_on_finite(&self, group: &FiniteAbelianGroup) -> bool {
        (0..group.invariants().len()).all(|j| self.exponent(group, LineBundleClass::new(0, group.generator(j))) == 0)
    }

    pub fn is_trivial(&self, group: &FiniteAbelianGroup) -> bool {
        self.degree_exp == 0 && self.is_trivial_on_finite(group)
    }
}

impl fmt::Display for ClassCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[N={}; deg {}; fin {:?}]", self.order, self.degree_exp, self.finite_exps)
    }
}

/// An unramified Hecke character of `F'`, viewed on `Pic(X')`, together with
/// its restriction to `F` (trivial or `eta`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeCharacter {
    pub chi: ClassCharacter,
    pub restriction: QuadraticTwist,
}

impl HeckeCharacter {
    pub fn trivial(pic: &PicModel) -> Self {
        HeckeCharacter {
            chi: ClassCharacter::trivial(pic.x_prime().finite().invariants().len()),
            restriction: QuadraticTwist::Trivial,
        }
    }

    /// Build from an explicit exponent vector, checking well-definedness and
    /// the restriction.
    pub fn from_exponents(pic: &PicModel, order: u32, degree_exp: i64, finite_exps: Vec<i64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parse("character order must be positive".into()));
        }
        let chi = ClassCharacter::new(order, degree_exp, finite_exps);
        if !chi.is_well_defined(pic.x_prime().finite()) {
            return Err(Error::Restriction(format!("{chi} does not respect the relations of Pic^0(X')")));
        }
        let restriction = pic
            .restriction_tag(&chi)
            .ok_or_else(|| Error::Restriction(format!("{chi} restricts to neither 1 nor eta")))?;
        Ok(HeckeCharacter { chi, restriction })
    }

    pub fn order(&self) -> u32 {
        self.chi.order
    }
}

impl fmt::Display for HeckeCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (restriction {})", self.chi, self.restriction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> (CoverData, PicModel) {
        let cover = CoverData::from_model(CurveModel::new(5, 0, -1, "").unwrap()).unwrap();
        let pic = PicModel::new(&cover).unwrap();
        (cover, pic)
    }

    #[test]
    fn structure_of_f5_example() {
        let (_, pic) = f5();
        let fx = pic.x().finite();
        assert_eq!(fx.order(), 8);
        let mut inv = fx.invariants().to_vec();
        inv.sort();
        assert_eq!(inv, vec![2, 4]);
        let two_torsion = (1..fx.order()).filter(|&i| fx.element_order(i) == 2).count();
        assert_eq!(two_torsion, 3);
        assert_eq!(pic.norm_index(), 2);
    }

    #[test]
    fn sigma_trivial_on_degree_zero() {
        let (_, pic) = f5();
        for c in pic.x_prime().classes(0..=0) {
            assert_eq!(pic.sigma(c), c);
        }
        let base = LineBundleClass::new(1, 0);
        assert_eq!(pic.sigma(base), LineBundleClass::new(1, pic.kernel_point()));
    }

    #[test]
    fn eta_matches_two_descent() {
        // eta([P]) = legendre(x(P)), with (0,0) -> legendre(B): an independent
        // description of the image of the dual isogeny.
        for (q, a, b) in [(5, 0, -1), (7, 1, 3), (11, 3, 1), (13, 1, 2), (13, 0, 3)] {
            let model = CurveModel::new(q, a, b, "").unwrap();
            let cover = CoverData::from_model(model.clone()).unwrap();
            let pic = PicModel::new(&cover).unwrap();
            let eta = pic.eta_character().unwrap();
            let f = model.field();
            for (i, p) in model.points().into_iter().enumerate() {
                let expected = match p {
                    Point::Infinity => 1,
                    Point::Affine(0, _) => f.legendre(model.b()),
                    Point::Affine(x, _) => f.legendre(x),
                };
                assert_eq!(eta.value(pic.x().finite(), LineBundleClass::new(1, i)), CycNumber::from_int(expected), "q={q} P={p}");
            }
            // trivial on norms
            for c in pic.x_prime().classes(-1..=1) {
                assert!(eta.value(pic.x().finite(), pic.norm(c)).is_one());
            }
        }
    }

    #[test]
    fn trivial_character_always_enumerated() {
        let (_, pic) = f5();
        let chars = pic.enumerate_characters(QuadraticTwist::Trivial, 4);
        assert_eq!(chars[0].chi, ClassCharacter::trivial(pic.x_prime().finite().invariants().len()));
        for chi in &chars {
            assert!(chi.chi.is_well_defined(pic.x_prime().finite()));
        }
    }

    #[test]
    fn chi_is_a_homomorphism_with_orthogonality() {
        let (_, pic) = f5();
        let fxp = pic.x_prime().finite();
        for restriction in [QuadraticTwist::Trivial, QuadraticTwist::Eta] {
            for chi in pic.enumerate_characters(restriction, 4) {
                let classes = pic.x_prime().classes(-1..=1);
                for &a in &classes {
                    for &b in classes.iter().step_by(5) {
                        assert_eq!(pic.chi_value(&chi, pic.x_prime().add(a, b)), pic.chi_value(&chi, a) * pic.chi_value(&chi, b));
                    }
                }
                if !chi.chi.is_trivial_on_finite(fxp) {
                    let sum = (0..fxp.order()).fold(CycNumber::zero(), |acc, i| acc + pic.chi_value(&chi, LineBundleClass::new(0, i)));
                    assert!(sum.is_zero());
                }
            }
        }
    }
}
