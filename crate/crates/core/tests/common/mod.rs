//! Helpers shared by the integration tests.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shtuka_degrees::algebra::{ratio, CycNumber, ExpFraction, ExpPoly};
use shtuka_degrees::workspace::Workspace;

pub const MODELS: [&str; 4] = ["f5_elliptic", "f7_elliptic", "f11_elliptic", "f13_elliptic"];
pub const GENUS_TWO: &str = "genus2_f3";

pub fn spec_path(name: &str) -> String {
    format!("{}/data/{name}.spec", env!("CARGO_MANIFEST_DIR"))
}

pub fn workspace(name: &str) -> Workspace {
    Workspace::load(spec_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const ORDERS: [u32; 6] = [1, 3, 4, 5, 8, 12];

pub fn embed(c: &CycNumber) -> Complex64 {
    let (re, im) = c.to_complex();
    Complex64::new(re, im)
}

pub fn random_cyc(rng: &mut ChaCha8Rng, q: u64) -> CycNumber {
    let order = ORDERS[rng.gen_range(0..ORDERS.len())];
    let mut c = CycNumber::root_of_unity(order, rng.gen_range(0..order as i64))
        * CycNumber::from_rational(ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7)));
    c = c + CycNumber::from_rational(ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
    if rng.gen_bool(0.3) {
        c = c + CycNumber::sqrt_q(q) * CycNumber::from_rational(ratio(rng.gen_range(-3..=3), 5));
    }
    c
}

pub fn random_poly(rng: &mut ChaCha8Rng, q: u64) -> ExpPoly {
    let terms: Vec<(i64, CycNumber)> = (0..rng.gen_range(1..=5)).map(|_| (rng.gen_range(-4..=4), random_cyc(rng, q))).collect();
    ExpPoly::from_terms(q, terms)
}

/// `f(s)` with `t = q^{-s}`.
pub fn eval(p: &ExpPoly, s: Complex64) -> Complex64 {
    let log_q = (p.q() as f64).ln();
    p.terms().map(|(k, c)| embed(c) * (-(k as f64) * log_q * s).exp()).sum()
}

/// `(1/(log q)^r) f^{(r)}(0)` from the trapezoidal rule on `|s| = rho`.
pub fn contour_derivative(f: impl Fn(Complex64) -> Complex64, r: u32, q: u64, rho: f64) -> Complex64 {
    let m = 256;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / m as f64);
        acc += f(w * rho) * w.powi(-(r as i32));
    }
    let factorial: f64 = (1..=r).map(|k| k as f64).product();
    acc * factorial / (m as f64 * rho.powi(r as i32) * (q as f64).ln().powi(r as i32))
}

pub fn close(exact: Complex64, numeric: Complex64) -> bool {
    (exact - numeric).norm() <= 1e-9 * exact.norm().max(1.0)
}

/// A quotient with `|den - 1| < 1` on `|s| <= 0.2`, so it is analytic there.
pub fn random_fraction(rng: &mut ChaCha8Rng, q: u64) -> (ExpPoly, ExpPoly, ExpFraction) {
    let num = random_poly(rng, q);
    let den = ExpPoly::from_terms(
        q,
        [
            (0, CycNumber::one()),
            (1, CycNumber::from_rational(ratio(rng.gen_range(-1..=1), 10))),
            (-1, &CycNumber::root_of_unity(4, rng.gen_range(0..4)) * &CycNumber::from_rational(ratio(1, 10))),
        ],
    );
    let f = ExpFraction::new(num.clone(), den.clone()).unwrap();
    (num, den, f)
}

/// Largest error of the exact central derivatives `r <= 4` of 25 random
/// polynomials and 25 random quotients against contour integrals,
/// relative to `max(1, |exact|)`.
pub fn derivative_oracle_error(seed: u64) -> f64 {
    let mut rng = rng(seed);
    let mut worst = 0f64;
    for case in 0..50 {
        let q = [3u64, 5, 7, 13][case % 4];
        let (num, den, f) = if case % 2 == 0 {
            let p = random_poly(&mut rng, q);
            (p.clone(), ExpPoly::one(q), ExpFraction::from_poly(p))
        } else {
            random_fraction(&mut rng, q)
        };
        for r in 0..=4 {
            let exact = embed(&f.central_derivative(r).unwrap().value);
            let numeric = contour_derivative(|s| eval(&num, s) / eval(&den, s), r, q, 0.2);
            worst = worst.max((exact - numeric).norm() / exact.norm().max(1.0));
        }
    }
    worst
}
