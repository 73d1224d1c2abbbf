//! The duplication scalar c(s) and the GKZ right-hand side for a supplied
//! base-change L-polynomial.

use shtuka_degrees::report::load_bcl;
use shtuka_degrees::degrees::{duplication_scalar, gkz_rhs};
use shtuka_degrees::workspace::Workspace;

fn main() -> shtuka_degrees::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let ws = Workspace::load(format!("{data}/f5_elliptic.spec"))?;
    let bc = load_bcl(format!("{data}/bcl_sample.json"), ws.cover.q())?;
    println!("L(s, BC(pi) x chi) = {}", bc.lpoly);
    println!("f = {}", bc.f_coefficient);
    println!("c(s) = {}", duplication_scalar(&bc, &ws.cover, 2)?);
    let e2 = ws.selfdual_class(0)?;
    for r in [0, 2, 4] {
        println!("RHS at r = {r}: {}", gkz_rhs(&bc, &ws.pic, &ws.cover, e2, 1, r)?);
    }
    Ok(())
}
