//! The worked example: y^2 = x^3 - x over F_5, deg E1 = 3, E2 trivial,
//! chi trivial. Every route gives degree 18 at r = 2 and D-coefficient 2250.

use shtuka_degrees::bundles::{BlockTag, HermitianPair, LineBundleClass};
use shtuka_degrees::degrees::{
    asw_degree, closed_form_degree, script_d_coefficient, z2_intersection_degree, SpecialCycle,
};
use shtuka_degrees::eisenstein::ZeroDensity;
use shtuka_degrees::workspace::Workspace;

fn main() -> shtuka_degrees::Result<()> {
    let ws = Workspace::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/f5_elliptic.spec"))?;
    let (pic, cover) = (&ws.pic, &ws.cover);
    let chi = ws.characters[0].clone();
    let e1 = LineBundleClass::new(3, 0);
    let e2 = ws.selfdual_class(0)?;
    let pair = HermitianPair::new(pic, cover, e1, BlockTag::Zero, e2, BlockTag::Iso)?;

    for r in [0, 2, 4] {
        let a = asw_degree(pic, cover, &SpecialCycle::Rank2(pair.clone()), &chi, r)?;
        let b = closed_form_degree(pic, cover, e1, e2, r)?;
        let c = z2_intersection_degree(pic, cover, e1, BlockTag::Zero, e2, &chi, r, None)?;
        let d = script_d_coefficient(pic, cover, e1, BlockTag::Zero, e2, &chi, r, None)?;
        println!("r = {r}: siegel-weil {}, closed form {}, doubling {}, D = {d}", a.value, b.value, c.value);
    }

    // deg E1 = -3 leaves a 3-dimensional space of off-diagonal blocks
    let e1 = LineBundleClass::new(-3, 0);
    match z2_intersection_degree(pic, cover, e1, BlockTag::Zero, e2, &chi, 2, None) {
        Err(e) => println!("deg E1 = -3: {e}"),
        Ok(v) => println!("deg E1 = -3: unexpectedly resolved to {}", v.value),
    }
    let stub = z2_intersection_degree(pic, cover, e1, BlockTag::Zero, e2, &chi, 2, Some(&ZeroDensity))?;
    println!("deg E1 = -3 with zero densities: {}", stub.value);
    Ok(())
}
