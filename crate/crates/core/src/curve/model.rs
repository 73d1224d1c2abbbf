//! Elliptic models `y^2 = x^3 + A x^2 + B x` over a prime field, their group
//! law, and the 2-isogeny with kernel generated by `(0,0)`.

use std::fmt;

use crate::error::{Error, Result};

/// Modular arithmetic helpers for a small odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: i64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::Unsupported(format!("model mode needs an odd prime field, got q = {p}")));
        }
        if p > 1 << 20 {
            return Err(Error::Unsupported(format!("q = {p} is too large for brute-force enumeration")));
        }
        Ok(PrimeField { p: p as i64 })
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn r(self, x: i64) -> i64 {
        x.rem_euclid(self.p)
    }

    pub fn mul(self, a: i64, b: i64) -> i64 {
        (a * b).rem_euclid(self.p)
    }

    pub fn pow(self, mut b: i64, mut e: u64) -> i64 {
        let mut acc = 1;
        b = self.r(b);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: i64) -> i64 {
        assert!(self.r(a) != 0, "inverse of zero");
        self.pow(a, (self.p - 2) as u64)
    }

    /// Legendre symbol: 0, 1 or -1.
    pub fn legendre(self, a: i64) -> i64 {
        match self.pow(a, ((self.p - 1) / 2) as u64) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    /// Square roots of `a` (zero, one or two of them).
    pub fn sqrts(self, a: i64) -> Vec<i64> {
        let a = self.r(a);
        if a == 0 {
            return vec![0];
        }
        (1..self.p).filter(|&y| self.mul(y, y) == a).collect()
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// A point of an elliptic model, or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine(i64, i64),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x},{y})"),
        }
    }
}

/// `y^2 = x^3 + A x^2 + B x` over `F_q`, `q` an odd prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    field: PrimeField,
    a: i64,
    b: i64,
    label: String,
}

impl CurveModel {
    pub fn new(q: u64, a: i64, b: i64, label: impl Into<String>) -> Result<Self> {
        let field = PrimeField::new(q)?;
        let (a, b) = (field.r(a), field.r(b));
        // disc(x^3 + A x^2 + B x) = B^2 (A^2 - 4B)
        if b == 0 || field.r(a * a - 4 * b) == 0 {
            return Err(Error::SingularModel(format!("y^2 = x^3 + {a}x^2 + {b}x over F_{q} has zero discriminant")));
        }
        Ok(CurveModel { field, a, b, label: label.into() })
    }

    pub fn q(&self) -> u64 {
        self.field.p as u64
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn genus(&self) -> u32 {
        1
    }

    fn rhs(&self, x: i64) -> i64 {
        let f = self.field;
        f.r(f.mul(f.mul(x, x), x) + f.mul(self.a, f.mul(x, x)) + f.mul(self.b, x))
    }

    pub fn contains(&self, pt: Point) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => self.field.mul(y, y) == self.rhs(x),
        }
    }

    /// All rational points, the point at infinity first, then by `(x, y)`.
    pub fn points(&self) -> Vec<Point> {
        let mut pts = vec![Point::Infinity];
        for x in 0..self.field.p {
            let mut ys = self.field.sqrts(self.rhs(x));
            ys.sort_unstable();
            pts.extend(ys.into_iter().map(|y| Point::Affine(x, y)));
        }
        pts
    }

    pub fn neg(&self, p: Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x, self.field.r(-y)),
        }
    }

    pub fn add(&self, p: Point, q: Point) -> Point {
        let f = self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q,
            (_, Point::Infinity) => return p,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.r(y1 + y2) == 0 {
                return Point::Infinity;
            }
            // tangent slope (3x^2 + 2Ax + B) / 2y
            f.mul(f.r(3 * f.mul(x1, x1) + 2 * f.mul(self.a, x1) + self.b), f.inv(2 * y1))
        } else {
            f.mul(f.r(y2 - y1), f.inv(x2 - x1))
        };
        let x3 = f.r(f.mul(lambda, lambda) - self.a - x1 - x2);
        let y3 = f.r(-(y1 + f.mul(lambda, x3 - x1)));
        Point::Affine(x3, y3)
    }

    pub fn mul(&self, k: i64, p: Point) -> Point {
        let mut base = if k < 0 { self.neg(p) } else { p };
        let mut k = k.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Number of points over `F_q`, by enumeration.
    pub fn count_rational_points(&self) -> i64 {
        let f = self.field;
        1 + (0..f.p).map(|x| 1 + f.legendre(self.rhs(x))).sum::<i64>()
    }

    /// Frobenius trace `a = q + 1 - #X(F_q)`.
    pub fn trace(&self) -> i64 {
        self.q() as i64 + 1 - self.count_rational_points()
    }

    /// `#X(F_{q^d})` via the recurrence `s_d = a s_{d-1} - q s_{d-2}` on Frobenius power sums.
    pub fn count_points(&self, d: u32) -> i64 {
        assert!(d >= 1, "extension degree must be positive");
        if d == 1 {
            return self.count_rational_points();
        }
        let (a, q) = (self.trace() as i128, self.q() as i128);
        let (mut s_prev, mut s) = (2i128, a);
        for _ in 1..d {
            let next = a * s - q * s_prev;
            s_prev = s;
            s = next;
        }
        (q.pow(d) + 1 - s) as i64
    }

    /// `#X(F_{q^2})` by enumerating `F_{q^2}` directly.
    pub fn count_points_quadratic_brute_force(&self) -> i64 {
        let f = self.field;
        let p = f.p;
        let nr = (2..p).find(|&c| f.legendre(c) == -1).expect("odd prime has a non-residue");
        // elements u + v*alpha with alpha^2 = nr
        let mul = |(a, b): (i64, i64), (c, d): (i64, i64)| (f.r(a * c + f.mul(b * d % p, nr)), f.r(a * d + b * c));
        let pow = |mut x: (i64, i64), mut e: u64| {
            let mut acc = (1, 0);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, x);
                }
                x = mul(x, x);
                e >>= 1;
            }
            acc
        };
        let order = (p * p - 1) as u64;
        let mut count = 1i64;
        for u in 0..p {
            for v in 0..p {
                let x = (u, v);
                let x2 = mul(x, x);
                let x3 = mul(x2, x);
                let val = (f.r(x3.0 + f.mul(self.a, x2.0) + f.mul(self.b, x.0)), f.r(x3.1 + f.mul(self.a, x2.1) + f.mul(self.b, x.1)));
                count += if val == (0, 0) {
                    1
                } else if pow(val, order / 2) == (1, 0) {
                    2
                } else {
                    0
                };
            }
        }
        count
    }

    /// Codomain of the 2-isogeny with kernel `{O, (0,0)}`:
    /// `y^2 = x^3 - 2A x^2 + (A^2 - 4B) x`.
    pub fn isogenous(&self) -> CurveModel {
        let f = self.field;
        CurveModel {
            field: f,
            a: f.r(-2 * self.a),
            b: f.r(self.a * self.a - 4 * self.b),
            label: format!("{} / <(0,0)>", self.label),
        }
    }

    /// The isogeny `phi(x, y) = (y^2/x^2, y (B - x^2)/x^2)` onto [`Self::isogenous`].
    pub fn isogeny(&self, p: Point) -> Point {
        let f = self.field;
        match p {
            Point::Infinity | Point::Affine(0, _) => Point::Infinity,
            Point::Affine(x, y) => {
                let inv_x2 = f.inv(f.mul(x, x));
                Point::Affine(f.mul(f.mul(y, y), inv_x2), f.mul(f.mul(y, f.r(self.b - f.mul(x, x))), inv_x2))
            }
        }
    }

    /// The dual isogeny from [`Self::isogenous`] back to this model.
    ///
    /// Applying the same construction to the codomain lands on
    /// `y^2 = x^3 + 4A x^2 + 16B x`, which `(x, y) -> (x/4, y/8)` identifies with
    /// this model.
    pub fn dual_isogeny(&self, p: Point) -> Point {
        let f = self.field;
        match self.isogenous().isogeny(p) {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(f.mul(x, f.inv(4)), f.mul(y, f.inv(8))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x3_minus_x() -> CurveModel {
        CurveModel::new(5, 0, -1, "y^2 = x^3 - x").unwrap()
    }

    #[test]
    fn counts_over_f5() {
        let e = x3_minus_x();
        assert_eq!(e.count_points(1), 8);
        assert_eq!(e.count_points(2), 32);
        assert_eq!(e.count_points_quadratic_brute_force(), 32);
        assert_eq!(e.points().len(), 8);
    }

    #[test]
    fn singular_models_rejected() {
        assert!(matches!(CurveModel::new(5, 0, 0, ""), Err(Error::SingularModel(_))));
        assert!(matches!(CurveModel::new(11, 2, 1, ""), Err(Error::SingularModel(_))));
        assert!(CurveModel::new(9, 0, 1, "").is_err());
    }

    #[test]
    fn group_law_is_abelian_and_associative() {
        let e = CurveModel::new(7, 1, 3, "").unwrap();
        let pts = e.points();
        for &p in &pts {
            assert!(e.contains(p));
            assert_eq!(e.add(p, e.neg(p)), Point::Infinity);
            for &q in &pts {
                assert_eq!(e.add(p, q), e.add(q, p));
                assert!(e.contains(e.add(p, q)));
                for &r in pts.iter().take(4) {
                    assert_eq!(e.add(e.add(p, q), r), e.add(p, e.add(q, r)));
                }
            }
        }
    }

    #[test]
    fn velu_codomain_and_dual() {
        let e = x3_minus_x();
        let e2 = e.isogenous();
        assert_eq!((e2.a(), e2.b()), (0, 4));
        for p in e.points() {
            let img = e.isogeny(p);
            assert!(e2.contains(img));
            assert_eq!(e.dual_isogeny(img), e.mul(2, p));
        }
        for p in e2.points() {
            assert!(e.contains(e.dual_isogeny(p)));
        }
    }
}
