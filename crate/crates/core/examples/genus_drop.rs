//! Degenerate rank-2 coefficients through the genus-drop identity, compared
//! with the closed form, on the elliptic and the genus-2 covers.

use shtuka_degrees::bundles::LineBundleClass;
use shtuka_degrees::curve::QuadraticTwist;
use shtuka_degrees::eisenstein::{degenerate_rank2_closed_form, degenerate_rank2_coefficient, intertwining_constant};
use shtuka_degrees::workspace::Workspace;

fn main() -> shtuka_degrees::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    for name in ["f5_elliptic", "genus2_f3"] {
        let ws = Workspace::load(format!("{data}/{name}.spec"))?;
        let (pic, cover) = (&ws.pic, &ws.cover);
        println!("{}", cover.label());
        let e2 = ws.selfdual_class(0)?;
        let chi = ws.character(QuadraticTwist::Trivial, 0)?;
        for deg in [-1, 0, 3] {
            let e1 = LineBundleClass::new(deg, 0);
            let general = degenerate_rank2_coefficient(pic, cover, e1, e2, &chi)?;
            let closed = degenerate_rank2_closed_form(pic, cover, e1, e2, &chi)?;
            println!("  deg E1 = {deg:>2}: {general}");
            println!("               agrees with closed form: {}", general.to_poly().as_ref() == Some(&closed));
        }
        let c = intertwining_constant(cover, 2, QuadraticTwist::Trivial)?;
        println!("  c_M(s) c_M(-s) = {}", c.mul(&c.reflect())?.reduce());
    }

    // with chi restricting to eta the coefficient is a rational function of t
    let ws = Workspace::load(format!("{data}/f5_elliptic.spec"))?;
    let chi = ws.character(QuadraticTwist::Eta, 0)?;
    let v = degenerate_rank2_coefficient(&ws.pic, &ws.cover, LineBundleClass::new(1, 0), ws.selfdual_class(0)?, &chi)?;
    println!("eta-restricted coefficient: {v}");
    println!("  value at s = 0: {}", v.central_derivative(0)?.value);
    Ok(())
}
