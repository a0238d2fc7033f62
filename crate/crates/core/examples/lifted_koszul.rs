use fitting_res::arith::Field;
use fitting_res::fiber::{fiber_product, lift_complex};
use fitting_res::resolution::{minimal_resolution, verify_exactness, ModulePresentation, ResolveOptions};
use fitting_res::ring::RingPresentation;

fn main() -> fitting_res::Result<()> {
    let s = RingPresentation::parse(Field::DEFAULT, &["x", "y"], &[])?;
    let t = RingPresentation::parse(Field::DEFAULT, &["z"], &[])?;
    let fp = fiber_product(&s, &t)?;

    // The Koszul complex on x, y is exact over S but not after reading it over R.
    let koszul = minimal_resolution(&ModulePresentation::residue_field(&s), ResolveOptions::steps(2))?;
    let lifted = lift_complex(koszul.differentials(), &fp)?;
    for (i, m) in lifted.iter().enumerate() {
        println!("d{} = {m}", i + 1);
    }
    let rep = verify_exactness(&lifted, 4)?;
    for (pos, d, dim) in rep.homology {
        println!("H_{pos} in degree {d} has dimension {dim}");
    }
    Ok(())
}
