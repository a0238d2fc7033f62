use fitting_res::arith::Field;
use fitting_res::resolution::{minimal_resolution, ModulePresentation, ResolveOptions};
use fitting_res::ring::RingPresentation;

fn main() -> fitting_res::Result<()> {
    // Artinian: every step is certified.
    let ring = RingPresentation::parse(Field::DEFAULT, &["x", "y"], &["x^2", "y^2"])?;
    let k = ModulePresentation::residue_field(&ring);
    let res = minimal_resolution(&k, ResolveOptions::steps(5))?;
    println!("k over k[x,y]/(x^2,y^2)\n{}", res.betti_table_text());

    // Not artinian: syzygies are only computed up to a degree cap.
    let ring = RingPresentation::parse(Field::DEFAULT, &["x", "y", "z"], &["x*z", "y*z"])?;
    let k = ModulePresentation::residue_field(&ring);
    let opts = ResolveOptions { cap: Some(9), ..ResolveOptions::steps(6) };
    let res = minimal_resolution(&k, opts)?;
    println!("k over k[x,y,z]/(xz,yz)\n{}", res.betti_table_text());
    for n in 1..=res.length() {
        println!("step {n}: {:?}", res.completeness(n));
    }
    println!("euler characteristic in degrees 0..6: {:?}", (0..6).map(|d| res.euler_characteristic(d)).collect::<Vec<_>>());
    Ok(())
}
