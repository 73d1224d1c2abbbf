//! A loaded curve spec with its Picard model and characters, and the named
//! checks run by `verify-all`.

use std::path::Path;

use serde_json::{json, Value};

use crate::algebra::{ratio, CycNumber, ExpFraction, ExpPoly, Rational};
use crate::bundles::{d_invariant, is_selfdual, selfdual_classes, sigma_serre_dual, LineBundleClass};
use crate::curve::zeta::{
    check_weil_bounds, counts_from_numerator, CHECK_COVER_DIVISIBILITY, CHECK_ETA_DEGREE, CHECK_L_FE,
    CHECK_RIEMANN_HURWITZ, CHECK_WEIL, CHECK_ZETA_FE,
};
use crate::curve::{l_function, satisfies_functional_equation, CoverData, CurveSpec, Point, QuadraticTwist};
use crate::degrees::{degree_consistency, gkz_rhs, BCLInput, CHECK_DEGREE_CONSISTENCY};
use crate::eisenstein::{
    degenerate_rank2_closed_form, degenerate_rank2_coefficient, intertwining_constant, iso_coefficient,
    CHECK_DUAL_PATH, CHECK_REFLECTION,
};
use crate::error::{Error, Result};
use crate::picard::{HeckeCharacter, PicModel, CHECK_ETA, CHECK_NORM_INDEX, CHECK_SIGMA};

pub const DEFAULT_MAX_ORDER: u32 = 4;
pub const CHECK_ORTHOGONALITY: &str = "character-orthogonality";
pub const CHECK_SERRE_DUAL: &str = "serre-dual-involution";
pub const CHECK_INTERTWINING: &str = "intertwining-involution";
pub const CHECK_GKZ_LINEARITY: &str = "gkz-linearity";

/// Degrees of `E1` swept by the grid checks.
pub const GRID_DEGREES: std::ops::RangeInclusive<i64> = -5..=5;

#[derive(Clone, Debug)]
pub struct Workspace {
    pub spec: CurveSpec,
    pub cover: CoverData,
    pub pic: PicModel,
    /// characters restricting trivially, then those restricting to `eta`
    pub characters: Vec<HeckeCharacter>,
    pub max_order: u32,
}

impl Workspace {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_spec(CurveSpec::load(path)?, DEFAULT_MAX_ORDER)
    }

    pub fn from_spec(spec: CurveSpec, max_order: u32) -> Result<Self> {
        let cover = spec.build()?;
        let pic = PicModel::new(&cover)?;
        let mut characters = pic.enumerate_characters(QuadraticTwist::Trivial, max_order);
        characters.extend(pic.enumerate_characters(QuadraticTwist::Eta, max_order));
        Ok(Workspace { spec, cover, pic, characters, max_order })
    }

    pub fn characters_with(&self, restriction: QuadraticTwist) -> Vec<&HeckeCharacter> {
        self.characters.iter().filter(|c| c.restriction == restriction).collect()
    }

    /// The `index`-th character with the given restriction.
    pub fn character(&self, restriction: QuadraticTwist, index: usize) -> Result<HeckeCharacter> {
        let list = self.characters_with(restriction);
        list.get(index).map(|c| (*c).clone()).ok_or_else(|| {
            Error::Parse(format!("character index {index} out of range: {} characters restrict to {restriction}", list.len()))
        })
    }

    /// The self-dual class with finite part `index`.
    pub fn selfdual_class(&self, index: usize) -> Result<LineBundleClass> {
        let g = self.cover.cover_genus() as i64;
        let n = self.pic.x_prime().finite().order();
        if index >= n {
            return Err(Error::Parse(format!("class index {index} out of range: Pic^0(X') has {n} elements")));
        }
        let e = LineBundleClass::new(g - 1, index);
        if !is_selfdual(&self.pic, &self.cover, e) {
            return Err(Error::NotSelfDual(format!("{e} is not self-dual")));
        }
        Ok(e)
    }

    /// `E1` from a degree and a finite-part index.
    pub fn class(&self, degree: i64, index: usize) -> Result<LineBundleClass> {
        let n = self.pic.x_prime().finite().order();
        if index >= n {
            return Err(Error::Parse(format!("class index {index} out of range: Pic^0(X') has {n} elements")));
        }
        Ok(LineBundleClass::new(degree, index))
    }

    /// Every `(E1, E2, chi)` of the dual-path grid: `deg E1` in
    /// [`GRID_DEGREES`] with every finite part, `E2` self-dual, `chi`
    /// restricting trivially.
    pub fn grid(&self) -> Vec<(LineBundleClass, LineBundleClass, &HeckeCharacter)> {
        let chars = self.characters_with(QuadraticTwist::Trivial);
        let e1s = self.pic.x_prime().classes(GRID_DEGREES);
        let e2s = selfdual_classes(&self.pic, &self.cover);
        let mut out = Vec::new();
        for &e1 in &e1s {
            for &e2 in &e2s {
                for &chi in &chars {
                    out.push((e1, e2, chi));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl CheckStatus {
    pub fn name(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    /// exit code of the underlying error, for failures
    pub code: i32,
}

/// Result of `verify-all`.
///
/// JSON shape: `{"label", "q", "genus", "checks": [{"name", "status",
/// "detail"}], "passed", "failed", "skipped", "first_failure"}`.
#[derive(Clone, Debug)]
pub struct VerifySummary {
    pub label: String,
    pub q: Option<u64>,
    pub genus: Option<u32>,
    pub checks: Vec<CheckOutcome>,
}

impl VerifySummary {
    /// The summary of a spec that failed to load.
    pub fn load_failure(label: &str, err: &Error) -> Self {
        let name = match err {
            Error::Invariant { check, .. } => check,
            Error::SingularModel(_) | Error::NoTwoTorsion => "model-validity",
            _ => "load",
        };
        VerifySummary {
            label: label.to_string(),
            q: None,
            genus: None,
            checks: vec![CheckOutcome { name: name.to_string(), status: CheckStatus::Fail, detail: err.to_string(), code: err.exit_code() }],
        }
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.status == CheckStatus::Fail)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn exit_code(&self) -> i32 {
        self.first_failure().map_or(0, |c| c.code)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "status": c.status.name(), "detail": c.detail }))
            .collect();
        json!({
            "label": self.label,
            "q": self.q,
            "genus": self.genus,
            "checks": checks,
            "passed": self.count(CheckStatus::Pass),
            "failed": self.count(CheckStatus::Fail),
            "skipped": self.count(CheckStatus::Skip),
            "first_failure": self.first_failure().map(|c| c.name.as_str()),
        })
    }
}

enum Verdict {
    Pass(String),
    Skip(String),
}

type Check = fn(&Workspace) -> Result<Verdict>;

fn fail(check: &'static str, detail: String) -> Error {
    Error::Invariant { check: check.to_string(), detail }
}

/// The checks in the order they run.
const CHECKS: [(&str, Check); 16] = [
    (CHECK_WEIL, check_weil),
    (CHECK_ZETA_FE, check_zeta_fe),
    (CHECK_RIEMANN_HURWITZ, check_riemann_hurwitz),
    (CHECK_COVER_DIVISIBILITY, check_divisibility),
    (CHECK_ETA_DEGREE, check_eta_degree),
    (CHECK_L_FE, check_l_fe),
    (CHECK_NORM_INDEX, check_norm_index),
    (CHECK_ETA, check_eta),
    (CHECK_SIGMA, check_sigma),
    (CHECK_ORTHOGONALITY, check_orthogonality),
    (CHECK_SERRE_DUAL, check_serre_dual),
    (CHECK_INTERTWINING, check_intertwining),
    (CHECK_DUAL_PATH, check_dual_path),
    (CHECK_REFLECTION, check_reflection),
    (CHECK_DEGREE_CONSISTENCY, check_degree_consistency),
    (CHECK_GKZ_LINEARITY, check_gkz_linearity),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}

/// Run every check; failures do not stop later checks.
pub fn verify_all(ws: &Workspace) -> VerifySummary {
    let checks = CHECKS
        .iter()
        .map(|&(name, check)| {
            let name = name.to_string();
            match check(ws) {
                Ok(Verdict::Pass(detail)) => CheckOutcome { name, status: CheckStatus::Pass, detail, code: 0 },
                Ok(Verdict::Skip(detail)) => CheckOutcome { name, status: CheckStatus::Skip, detail, code: 0 },
                Err(e) => CheckOutcome { name, status: CheckStatus::Fail, detail: e.to_string(), code: e.exit_code().max(3) },
            }
        })
        .collect();
    VerifySummary {
        label: ws.cover.label().to_string(),
        q: Some(ws.cover.q()),
        genus: Some(ws.cover.genus()),
        checks,
    }
}

fn check_weil(ws: &Workspace) -> Result<Verdict> {
    let q = ws.cover.q();
    for (p, g) in [(ws.cover.zeta_x(), ws.cover.genus()), (ws.cover.zeta_x_prime(), ws.cover.cover_genus())] {
        let counts = counts_from_numerator(p, q, 2 * g);
        check_weil_bounds(&counts, g, q)?;
    }
    Ok(Verdict::Pass(format!("N_d within bounds for d <= 2g' = {}", 2 * ws.cover.cover_genus())))
}

/// `c_{2g-k} = q^{g-k} c_k`.
fn numerator_fe(p: &ExpPoly, g: u32, q: u64) -> bool {
    let g = g as i64;
    p.min_exponent() == Some(0)
        && p.max_exponent() == Some(2 * g)
        && (0..=2 * g).all(|k| p.coeff(2 * g - k) == p.coeff(k) * CycNumber::from_rational(crate::algebra::q_pow(q, g - k)))
}

fn check_zeta_fe(ws: &Workspace) -> Result<Verdict> {
    let q = ws.cover.q();
    for (name, p, g) in [("P_X", ws.cover.zeta_x(), ws.cover.genus()), ("P_X'", ws.cover.zeta_x_prime(), ws.cover.cover_genus())] {
        if !numerator_fe(p, g, q) {
            return Err(fail(CHECK_ZETA_FE, format!("{name} = {p}")));
        }
    }
    Ok(Verdict::Pass(format!("P_X = {}", ws.cover.zeta_x())))
}

fn check_riemann_hurwitz(ws: &Workspace) -> Result<Verdict> {
    let (g, gp) = (ws.cover.genus(), ws.cover.cover_genus());
    if gp != 2 * g - 1 {
        return Err(fail(CHECK_RIEMANN_HURWITZ, format!("g = {g}, g' = {gp}")));
    }
    Ok(Verdict::Pass(format!("g = {g}, g' = {gp}")))
}

fn check_divisibility(ws: &Workspace) -> Result<Verdict> {
    let c = &ws.cover;
    if &(c.zeta_x() * c.eta_l()) != c.zeta_x_prime() {
        return Err(fail(CHECK_COVER_DIVISIBILITY, format!("P_X * L_eta != P_X' = {}", c.zeta_x_prime())));
    }
    Ok(Verdict::Pass(format!("L(s, eta) = {}", c.eta_l())))
}

fn check_eta_degree(ws: &Workspace) -> Result<Verdict> {
    let w = ws.cover.deg_omega();
    if ws.cover.eta_l().max_exponent() != Some(w) {
        return Err(fail(CHECK_ETA_DEGREE, format!("deg L(s, eta) != {w}")));
    }
    Ok(Verdict::Pass(format!("deg L(s, eta) = 2g - 2 = {w}")))
}

fn check_l_fe(ws: &Workspace) -> Result<Verdict> {
    let w = ws.cover.deg_omega();
    let mut checked = 0;
    let mut series = vec![l_function(&ws.cover, QuadraticTwist::Trivial), l_function(&ws.cover, QuadraticTwist::Eta)];
    for chi in &ws.characters {
        let chi0 = chi.restriction;
        for i in 0..2 {
            series.push(l_function(&ws.cover, chi0.times_eta_pow(i)));
        }
        if !ws.pic.is_degree_only() {
            series.push(ws.pic.char_lfunction(&ws.cover, &ws.pic.restrict(&chi.chi))?);
        }
    }
    for l in &series {
        if !satisfies_functional_equation(&l.value.to_fraction(), w) {
            return Err(fail(CHECK_L_FE, format!("L(s, {}) fails", l.character)));
        }
        checked += 1;
    }
    Ok(Verdict::Pass(format!("{checked} L-functions over {} characters", ws.characters.len())))
}

fn check_norm_index(ws: &Workspace) -> Result<Verdict> {
    if ws.pic.is_degree_only() {
        return Ok(Verdict::Skip("Pic^0 not tracked for table covers".into()));
    }
    let index = ws.pic.norm_index();
    if index != 2 {
        return Err(fail(CHECK_NORM_INDEX, format!("index {index}")));
    }
    Ok(Verdict::Pass("[Pic X : Nm Pic X'] = 2".into()))
}

fn check_eta(ws: &Workspace) -> Result<Verdict> {
    let Some(model) = ws.cover.base_model() else {
        return Ok(Verdict::Skip("Pic^0 not tracked for table covers".into()));
    };
    let eta = ws.pic.eta_character()?;
    let f = model.field();
    let fx = ws.pic.x().finite();
    for i in 0..fx.order() {
        let expected = match ws.pic.x().point(i) {
            Point::Infinity => 1,
            Point::Affine(0, _) => f.legendre(model.b()),
            Point::Affine(x, _) => f.legendre(x),
        };
        if eta.value(fx, LineBundleClass::new(0, i)) != CycNumber::from_int(expected) {
            return Err(fail(CHECK_ETA, format!("eta disagrees with 2-descent at {}", ws.pic.x().point(i))));
        }
    }
    Ok(Verdict::Pass(format!("eta agrees with 2-descent on {} points", fx.order())))
}

fn check_sigma(ws: &Workspace) -> Result<Verdict> {
    let pic = &ws.pic;
    for c in pic.x_prime().classes(-2..=2) {
        if pic.sigma(pic.sigma(c)) != c {
            return Err(fail(CHECK_SIGMA, format!("sigma* sigma* {c} != {c}")));
        }
    }
    for c in pic.x().classes(-2..=2) {
        let p = pic.pullback(c);
        if pic.sigma(p) != p {
            return Err(fail(CHECK_SIGMA, format!("sigma* moves pi^* {c}")));
        }
    }
    Ok(Verdict::Pass("sigma* is an involution fixing pullbacks".into()))
}

fn check_orthogonality(ws: &Workspace) -> Result<Verdict> {
    let pic = &ws.pic;
    let fxp = pic.x_prime().finite();
    let classes = pic.x_prime().classes(-1..=1);
    for chi in &ws.characters {
        if pic.restriction_tag(&chi.chi) != Some(chi.restriction) {
            return Err(fail(CHECK_ORTHOGONALITY, format!("{chi}: restriction changed")));
        }
        for &a in &classes {
            for &b in &classes {
                if pic.chi_value(chi, pic.x_prime().add(a, b)) != pic.chi_value(chi, a) * pic.chi_value(chi, b) {
                    return Err(fail(CHECK_ORTHOGONALITY, format!("{chi} is not multiplicative at {a}, {b}")));
                }
            }
        }
        let sum = (0..fxp.order()).fold(CycNumber::zero(), |acc, i| acc + pic.chi_value(chi, LineBundleClass::new(0, i)));
        let expected = if chi.chi.is_trivial_on_finite(fxp) { fxp.order() as i64 } else { 0 };
        if sum != CycNumber::from_int(expected) {
            return Err(fail(CHECK_ORTHOGONALITY, format!("sum over Pic^0 of {chi} = {sum}")));
        }
    }
    Ok(Verdict::Pass(format!("{} characters of order <= {}", ws.characters.len(), ws.max_order)))
}

fn check_serre_dual(ws: &Workspace) -> Result<Verdict> {
    let (pic, cover) = (&ws.pic, &ws.cover);
    let gp = cover.cover_genus() as i64;
    for c in pic.x_prime().classes(-3..=3 + 2 * gp) {
        let d = sigma_serre_dual(pic, cover, c);
        if sigma_serre_dual(pic, cover, d) != c || d.degree != 2 * gp - 2 - c.degree {
            return Err(fail(CHECK_SERRE_DUAL, format!("at {c}")));
        }
        if is_selfdual(pic, cover, c) && d_invariant(&[c], cover) != 0 {
            return Err(fail(CHECK_SERRE_DUAL, format!("self-dual {c} has d != 0")));
        }
    }
    Ok(Verdict::Pass(format!("{} self-dual classes", selfdual_classes(pic, cover).len())))
}

fn check_intertwining(ws: &Workspace) -> Result<Verdict> {
    let one = ExpFraction::one(ws.cover.q());
    for n in 1..=2 {
        for chi0 in [QuadraticTwist::Trivial, QuadraticTwist::Eta] {
            let c = intertwining_constant(&ws.cover, n, chi0)?;
            if c.mul(&c.reflect())? != one {
                return Err(fail(CHECK_INTERTWINING, format!("n = {n}, chi_0 = {chi0}")));
            }
        }
    }
    Ok(Verdict::Pass("c_M(s) c_M(-s) = 1 for n = 1, 2".into()))
}

fn check_dual_path(ws: &Workspace) -> Result<Verdict> {
    let grid = ws.grid();
    for &(e1, e2, chi) in &grid {
        let general = degenerate_rank2_coefficient(&ws.pic, &ws.cover, e1, e2, chi)?;
        let closed = degenerate_rank2_closed_form(&ws.pic, &ws.cover, e1, e2, chi)?;
        if general.to_poly().as_ref() != Some(&closed) {
            return Err(fail(CHECK_DUAL_PATH, format!("E1 = {e1}, E2 = {e2}, {chi}")));
        }
    }
    Ok(Verdict::Pass(format!("{} cases", grid.len())))
}

/// Reflection invariance and vanishing odd derivatives of every coefficient
/// on the grid, including characters restricting to `eta`.
fn check_reflection(ws: &Workspace) -> Result<Verdict> {
    let (pic, cover) = (&ws.pic, &ws.cover);
    let mut coefficients = Vec::new();
    let e2s = selfdual_classes(pic, cover);
    for chi in &ws.characters {
        // the eta-restricted coefficients are rational functions and cost a
        // gcd each; their E1 only runs over degrees
        let e1s: Vec<LineBundleClass> = match chi.restriction {
            QuadraticTwist::Trivial => pic.x_prime().classes(GRID_DEGREES),
            QuadraticTwist::Eta => GRID_DEGREES.map(|d| LineBundleClass::new(d, 0)).collect(),
        };
        for &e2 in &e2s {
            for &e1 in &e1s {
                coefficients.push(degenerate_rank2_coefficient(pic, cover, e1, e2, chi)?);
            }
            coefficients.push(iso_coefficient(pic, cover, &[e2], chi)?.into());
        }
    }
    for (i, c) in coefficients.iter().enumerate() {
        if &c.reflect() != c {
            return Err(fail(CHECK_REFLECTION, format!("coefficient #{i} = {c}")));
        }
        for r in [1, 3, 5] {
            let v = c.central_derivative(r)?.value;
            if !v.is_zero() {
                return Err(fail(CHECK_REFLECTION, format!("coefficient #{i}: derivative {r} = {v}")));
            }
        }
    }
    Ok(Verdict::Pass(format!("{} coefficients", coefficients.len())))
}

fn check_degree_consistency(ws: &Workspace) -> Result<Verdict> {
    let grid = ws.grid();
    let genus_one = ws.cover.genus() == 1;
    for &(e1, e2, chi) in &grid {
        for r in [0, 2, 4] {
            let report = degree_consistency(&ws.pic, &ws.cover, e1, e2, chi, r)?;
            let d = d_invariant(&[e1], &ws.cover);
            if genus_one && report.closed_form.value != Rational::from_integer((2 * d.pow(r)).into()) {
                return Err(fail(CHECK_DEGREE_CONSISTENCY, format!("E1 = {e1}, r = {r}: {} != 2 d^r", report.closed_form.value)));
            }
        }
    }
    Ok(Verdict::Pass(format!("{} cases x r in {{0, 2, 4}}", grid.len())))
}

fn check_gkz_linearity(ws: &Workspace) -> Result<Verdict> {
    let q = ws.cover.q();
    let e2 = ws.selfdual_class(0)?;
    let p1 = ExpPoly::from_ints(q, 0, &[1, -1, 3]);
    let p2 = ExpPoly::from_terms(q, [(1, CycNumber::from_rational(ratio(2, 7))), (2, CycNumber::root_of_unity(4, 1))]);
    let f1 = CycNumber::from_rational(ratio(-3, 2));
    let f2 = CycNumber::root_of_unity(3, 1);
    let rhs = |p: &ExpPoly, f: &CycNumber, r| gkz_rhs(&BCLInput { lpoly: p.clone(), f_coefficient: f.clone() }, &ws.pic, &ws.cover, e2, 1, r);
    for r in [0, 2, 4] {
        let sum_f = rhs(&p1, &(&f1 + &f2), r)?;
        if sum_f != rhs(&p1, &f1, r)? + rhs(&p1, &f2, r)? {
            return Err(fail(CHECK_GKZ_LINEARITY, format!("not additive in f at r = {r}")));
        }
        let sum_p = rhs(&(&p1 + &p2), &f1, r)?;
        if sum_p != rhs(&p1, &f1, r)? + rhs(&p2, &f1, r)? {
            return Err(fail(CHECK_GKZ_LINEARITY, format!("not additive in L at r = {r}")));
        }
    }
    Ok(Verdict::Pass("additive in f and in L(s, BC(pi) x chi)".into()))
}
