//! Exact arithmetic in Q(zeta_N)(sqrt q) and Laurent polynomials in t = q^{-s}.

use shtuka_degrees::algebra::{ratio, CycNumber, ExpFraction, ExpPoly, HalfInteger};

fn main() -> shtuka_degrees::Result<()> {
    // zeta_4 = i, zeta_3 and their product lands in Q(zeta_12)
    let i = CycNumber::root_of_unity(4, 1);
    let w = CycNumber::root_of_unity(3, 1);
    let prod = &i * &w;
    println!("i * zeta_3 = {prod}  (order {})", prod.order());
    println!("(i * zeta_3)^12 = {}", prod.pow(12));

    // sqrt(5) is a Gauss sum, so it folds into Q(zeta_5)
    let s = CycNumber::sqrt_q(5).lift(5);
    println!("sqrt5 in Q(zeta_5): {s}, squared = {}", &s * &s);

    // f(t) = 1 + 2t + 5t^2, the zeta numerator of y^2 = x^3 - x over F_5
    let p = ExpPoly::from_ints(5, 0, &[1, 2, 5]);
    println!("P(t)          = {p}");
    println!("P at s + 1/2  = {}", p.shift_argument(HalfInteger::HALF));
    println!("P at -s       = {}", p.reflect());
    println!("P at 2s + 1   = {}", p.compose_affine(2, HalfInteger::integer(1)));
    for r in 0..=3 {
        println!("d^{r}/ds^{r} P at 0 = {}", p.central_derivative(r).value);
    }

    // 1/(1 - t/5): derivatives of a quotient by the Leibniz recurrence
    let f = ExpFraction::new(ExpPoly::one(5), ExpPoly::from_terms(5, [(0, 1.into()), (1, CycNumber::from_rational(ratio(-1, 5)))]))?;
    for r in 0..=2 {
        println!("d^{r}/ds^{r} [1/(1 - t/5)] at 0 = {}", f.central_derivative(r)?.value);
    }
    Ok(())
}
