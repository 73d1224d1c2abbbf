//! Independent cross-checks: point counts over F_{p^k} by enumeration and
//! Euler products over closed points.

use num_rational::BigRational;
use num_traits::{One, Zero};
use shtuka_degrees::algebra::{CycNumber, ExpPoly, Rational};
use shtuka_degrees::curve::{counts_from_numerator, CoverData, CurveModel};

/// F_{p^k} = F_p[x]/(m) with `m` monic irreducible of degree `k <= 3`.
struct ExtField {
    p: i64,
    k: usize,
    modulus: Vec<i64>, // m = x^k + modulus[k-1] x^{k-1} + ... + modulus[0]
}

impl ExtField {
    fn new(p: i64, k: usize) -> Self {
        if k == 1 {
            return ExtField { p, k, modulus: vec![0] };
        }
        // degree 2 or 3: irreducible iff no root in F_p
        for code in 0..p.pow(k as u32) {
            let coeffs: Vec<i64> = (0..k).map(|i| (code / p.pow(i as u32)) % p).collect();
            let has_root = (0..p).any(|x| {
                let mut v = 1;
                for c in coeffs.iter().rev() {
                    v = (v * x + c) % p;
                }
                v == 0
            });
            if !has_root {
                return ExtField { p, k, modulus: coeffs };
            }
        }
        unreachable!("an irreducible polynomial exists")
    }

    fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.p.pow(self.k as u32)).map(move |code| (0..self.k).map(|i| (code / self.p.pow(i as u32)) % self.p).collect())
    }

    fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut prod = vec![0; 2 * self.k];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for d in (self.k..2 * self.k).rev() {
            let c = prod[d];
            prod[d] = 0;
            for (i, m) in self.modulus.iter().enumerate() {
                prod[d - self.k + i] = (prod[d - self.k + i] - c * m).rem_euclid(self.p);
            }
        }
        prod.truncate(self.k);
        prod
    }

    fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn scalar(&self, c: i64) -> Vec<i64> {
        let mut v = vec![0; self.k];
        v[0] = c.rem_euclid(self.p);
        v
    }

    fn pow(&self, a: &[i64], mut e: u64) -> Vec<i64> {
        let mut base = a.to_vec();
        let mut acc = self.scalar(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Points of y^2 = x^3 + A x^2 + B x, including the point at infinity.
    fn count(&self, a: i64, b: i64) -> i64 {
        let order = self.p.pow(self.k as u32) as u64;
        let one = self.scalar(1);
        let zero = self.scalar(0);
        let mut n = 1;
        for x in self.elements() {
            let x2 = self.mul(&x, &x);
            let f = self.add(&self.add(&self.mul(&x2, &x), &self.mul(&self.scalar(a), &x2)), &self.mul(&self.scalar(b), &x));
            n += if f == zero {
                1
            } else if self.pow(&f, (order - 1) / 2) == one {
                2
            } else {
                0
            };
        }
        n
    }
}

const MODELS: [(u64, i64, i64); 4] = [(5, 0, -1), (7, 1, 3), (11, 3, 1), (13, 1, 2)];

fn brute_counts(q: u64, a: i64, b: i64, up_to: usize) -> Vec<i64> {
    (1..=up_to).map(|k| ExtField::new(q as i64, k).count(a, b)).collect()
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut m, mut d) = (n, 1, 2);
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            m = -m;
        }
        d += 1;
    }
    if n > 1 {
        -m
    } else {
        m
    }
}

/// Closed points of each degree `1..=len` from `N_1, N_2, ...`.
fn closed_points(counts: &[i64]) -> Vec<i64> {
    (1..=counts.len())
        .map(|d| (1..=d).filter(|e| d % e == 0).map(|e| mobius(d / e) * counts[e - 1]).sum::<i64>() / d as i64)
        .collect()
}

type Series = Vec<Rational>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let n = a.len();
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// `(1 - sign t^d)^{-1}` truncated.
fn local_factor(d: usize, sign: i64, n: usize) -> Series {
    let mut out = vec![Rational::zero(); n];
    let mut k = 0;
    while k * d < n {
        out[k * d] = BigRational::from_integer(sign.pow(k as u32).into());
        k += 1;
    }
    out
}

fn poly_series(p: &ExpPoly, n: usize) -> Series {
    (0..n).map(|k| p.coeff(k as i64).as_rational().unwrap()).collect()
}

/// `P(t) / ((1 - t)(1 - q t))` truncated.
fn zeta_series(p: &ExpPoly, q: u64, n: usize) -> Series {
    let mut s = poly_series(p, n);
    s = series_mul(&s, &local_factor(1, 1, n));
    series_mul(&s, &(0..n).map(|k| BigRational::from_integer(num_bigint::BigInt::from(q).pow(k as u32))).collect())
}

/// Euler products of `Z_X` and `L(s, eta)` to degree `counts.len()`; places
/// of `X` split in `X'` or stay inert, read off from the counts on both sides.
fn euler_products(counts_x: &[i64], counts_xp: &[i64]) -> (Series, Series) {
    let n = counts_x.len() + 1;
    let px = closed_points(counts_x);
    let pxp = closed_points(counts_xp);
    let mut split = vec![0; n];
    let mut inert = vec![0; n];
    for d in 1..n {
        // P_d(X') = 2 split_d + inert_{d/2}
        let from_inert = if d % 2 == 0 { inert[d / 2] } else { 0 };
        split[d] = (pxp[d - 1] - from_inert) / 2;
        assert_eq!(2 * split[d] + from_inert, pxp[d - 1], "degree {d} places of X' pair up");
        inert[d] = px[d - 1] - split[d];
        assert!(inert[d] >= 0);
    }
    let mut zeta = vec![Rational::zero(); n];
    zeta[0] = Rational::one();
    let mut l = zeta.clone();
    for d in 1..n {
        for _ in 0..px[d - 1] {
            zeta = series_mul(&zeta, &local_factor(d, 1, n));
        }
        for _ in 0..split[d] {
            l = series_mul(&l, &local_factor(d, 1, n));
        }
        for _ in 0..inert[d] {
            l = series_mul(&l, &local_factor(d, -1, n));
        }
    }
    (zeta, l)
}

#[test]
fn model_counts_match_enumeration_over_extensions() {
    for (q, a, b) in MODELS {
        let model = CurveModel::new(q, a, b, "").unwrap();
        let brute = brute_counts(q, a, b, 3);
        let from_recurrence: Vec<i64> = (1..=3).map(|d| model.count_points(d)).collect();
        assert_eq!(brute, from_recurrence, "q = {q}");
        let cover = CoverData::from_model(model).unwrap();
        assert_eq!(counts_from_numerator(cover.zeta_x(), q, 3), brute);
    }
}

#[test]
fn euler_products_on_elliptic_models() {
    for (q, a, b) in MODELS {
        let model = CurveModel::new(q, a, b, "").unwrap();
        let iso = model.isogenous();
        let cover = CoverData::from_model(model).unwrap();
        let depth = if q <= 7 { 3 } else { 2 };
        let counts_x = brute_counts(q, a, b, depth);
        let counts_xp = brute_counts(q, iso.a(), iso.b(), depth);
        let (zeta, l) = euler_products(&counts_x, &counts_xp);
        assert_eq!(zeta, zeta_series(cover.zeta_x(), q, depth + 1), "Z_X, q = {q}");
        assert_eq!(l, poly_series(cover.eta_l(), depth + 1), "L(s, eta), q = {q}");
    }
}

#[test]
fn euler_product_on_genus_two_table() {
    // y^2 = (x^2 + 1)(x^4 + x + 1) over F_3 and its cover by sqrt(x^2 + 1),
    // enumerated over F_{3^d}, d <= 4
    let counts_x = [5, 17, 26, 89];
    let counts_xp = [8, 14, 26, 98];
    let cover = shtuka_degrees::curve::CurveSpec::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/genus2_f3.spec"))
        .unwrap()
        .build()
        .unwrap();
    let (zeta, l) = euler_products(&counts_x, &counts_xp);
    assert_eq!(zeta, zeta_series(cover.zeta_x(), 3, 5));
    assert_eq!(l, poly_series(cover.eta_l(), 5));
    assert_eq!(cover.eta_l(), &ExpPoly::from_ints(3, 0, &[1, 3, 3]));
}

#[test]
fn sqrt_q_matches_its_gauss_sum_embedding() {
    for q in [3u64, 5, 7, 13] {
        let s = CycNumber::sqrt_q(q);
        let (re, im) = s.to_complex();
        assert!((re - (q as f64).sqrt()).abs() < 1e-12 && im.abs() < 1e-12);
        assert_eq!(&s * &s, CycNumber::from_int(q as i64));
    }
}
