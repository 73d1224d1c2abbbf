//! Pic(X) and Pic(X') of an elliptic model, the norm, eta, and the
//! characters of Pic(X') of order at most 4.

use shtuka_degrees::curve::{CurveModel, CoverData, QuadraticTwist};
use shtuka_degrees::picard::{LineBundleClass, PicModel};

fn main() -> shtuka_degrees::Result<()> {
    let model = CurveModel::new(5, 0, -1, "y^2 = x^3 - x")?;
    let cover = CoverData::from_model(model)?;
    let pic = PicModel::new(&cover)?;
    println!("Pic^0(X)  invariants {:?}", pic.x().finite().invariants());
    println!("Pic^0(X') invariants {:?}", pic.x_prime().finite().invariants());
    println!("[Pic X : Nm Pic X'] = {}", pic.norm_index());

    let eta = pic.eta_character()?;
    let fx = pic.x().finite();
    for i in 0..fx.order() {
        let p = pic.x().point(i);
        println!("  eta([{p}] - [O]) = {}", eta.value(fx, LineBundleClass::new(0, i)));
    }

    for tag in [QuadraticTwist::Trivial, QuadraticTwist::Eta] {
        println!("characters restricting to {tag}:");
        for chi in pic.enumerate_characters(tag, 4) {
            let t = LineBundleClass::new(0, pic.kernel_point());
            println!("  {}   chi(T') = {}", chi.chi, pic.chi_value(&chi, t));
        }
    }
    Ok(())
}
