//! Zeta numerators of X and X', L(s, eta) and the functional equations, for
//! every shipped curve spec.

use shtuka_degrees::curve::{l_function, satisfies_functional_equation, CurveSpec, QuadraticTwist};

fn main() -> shtuka_degrees::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    for name in ["f5_elliptic", "f7_elliptic", "f11_elliptic", "f13_elliptic", "genus2_f3"] {
        let cover = CurveSpec::load(format!("{data}/{name}.spec"))?.build()?;
        println!("{} (q = {}, g = {}, g' = {})", cover.label(), cover.q(), cover.genus(), cover.cover_genus());
        println!("  P_X   = {}", cover.zeta_x());
        println!("  P_X'  = {}", cover.zeta_x_prime());
        println!("  L_eta = {}", cover.eta_l());
        for twist in [QuadraticTwist::Trivial, QuadraticTwist::Eta] {
            let l = l_function(&cover, twist);
            let ok = satisfies_functional_equation(&l.value.to_fraction(), cover.deg_omega());
            println!("  L(s, {twist}) functional equation: {ok}");
        }
    }
    Ok(())
}
