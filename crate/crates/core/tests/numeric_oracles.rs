//! Exact results against their complex embeddings: products in mixed
//! cyclotomic fields and central derivatives by contour integration.

mod common;

use common::*;
use num_complex::Complex64;
use rand::Rng;
use shtuka_degrees::algebra::{ExpPoly, HalfInteger};
use shtuka_degrees::degrees::{gkz_rhs, BCLInput};

#[test]
fn mixed_order_products_match_embedding() {
    let mut rng = rng(7);
    for _ in 0..200 {
        let q = [3u64, 5, 7][rng.gen_range(0..3)];
        let a = random_cyc(&mut rng, q);
        let b = random_cyc(&mut rng, q);
        let (ea, eb) = (embed(&a), embed(&b));
        assert!(close(ea * eb, embed(&(&a * &b))), "{a} * {b}");
        assert!(close(ea + eb, embed(&(&a + &b))));
        if !a.is_zero() {
            assert!(close(Complex64::new(1.0, 0.0) / ea, embed(&a.inverse().unwrap())), "1 / {a}");
        }
    }
}

#[test]
fn central_derivatives_match_contour_integrals() {
    for seed in [11, 13, 17] {
        let err = derivative_oracle_error(seed);
        assert!(err <= 1e-9, "seed {seed}: relative error {err:e}");
    }
}

#[test]
fn genus_two_gkz_rhs_matches_numeric_derivative() {
    let ws = workspace(GENUS_TWO);
    let lpoly = ExpPoly::from_ints(3, 0, &[1, -1]);
    let bc = BCLInput { lpoly: lpoly.clone(), f_coefficient: shtuka_degrees::algebra::CycNumber::one() };
    let e2 = ws.selfdual_class(0).unwrap();
    let exact = embed(&gkz_rhs(&bc, &ws.pic, &ws.cover, e2, 1, 2).unwrap());
    // d(E2) = 0 and the integrand is t^{-4} (1 - t / sqrt 3)
    assert!((exact.re - (16.0 - 9.0 / 3f64.sqrt())).abs() < 1e-12);
    let integrand = &ExpPoly::t_power(3, -4) * &lpoly.shift_argument(HalfInteger::HALF);
    let numeric = contour_derivative(|s| eval(&integrand, s), 2, 3, 0.3);
    assert!(close(exact, numeric), "{exact} vs {numeric}");
}
