//! Self-dual classes, the sigma-twisted Serre dual and the census of
//! off-diagonal blocks Hom(E2, sigma* E1^v).

use shtuka_degrees::bundles::{complement_census, d_invariant, selfdual_classes, sigma_serre_dual, LineBundleClass};
use shtuka_degrees::workspace::Workspace;

fn main() -> shtuka_degrees::Result<()> {
    let ws = Workspace::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/f5_elliptic.spec"))?;
    let (pic, cover) = (&ws.pic, &ws.cover);
    let selfdual = selfdual_classes(pic, cover);
    println!("self-dual classes: {}", selfdual.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));

    let e = LineBundleClass::new(2, 3);
    println!("sigma* {e}^v = {}", sigma_serre_dual(pic, cover, e));

    let e2 = selfdual[0];
    println!("deg E1   d(E1)   h   terms");
    for deg in -4..=4 {
        let e1 = LineBundleClass::new(deg, 0);
        let census = complement_census(pic, cover, e1, e2)?;
        println!("{deg:>6} {:>7} {:>3} {:>7}", d_invariant(&[e1], cover), census.dimension, census.term_count());
    }
    Ok(())
}
