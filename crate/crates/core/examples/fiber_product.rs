use fitting_res::arith::Field;
use fitting_res::fiber::{fiber_product, moore_resolution, verify_theorem_fp};
use fitting_res::resolution::{minimal_resolution, ModulePresentation, ResolveOptions};
use fitting_res::ring::RingPresentation;

fn main() -> fitting_res::Result<()> {
    let s = RingPresentation::parse(Field::DEFAULT, &["x", "y"], &[])?;
    let t = RingPresentation::parse(Field::DEFAULT, &["z"], &[])?;
    let fp = fiber_product(&s, &t)?;
    println!("R = k[{}]/({})", fp.r.names().join(","), fp.r.relations().iter().map(|g| fp.r.show(g)).collect::<Vec<_>>().join(", "));

    // k as an S-module, resolved over R by words in the factor resolutions.
    let k = ModulePresentation::residue_field(&s);
    let moore = moore_resolution(&k, &fp, 6)?;
    println!("word ranks: {:?}", (0..=6).map(|n| moore.rank(n)).collect::<Vec<_>>());
    println!("G_3 = {}", moore.words[3].iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" + "));
    println!("block audit passed: {}", moore.audit_blocks().passed());

    let direct = minimal_resolution(&ModulePresentation::residue_field(&fp.r), ResolveOptions { cap: Some(8), ..ResolveOptions::steps(6) })?;
    println!("direct betti: {:?}", direct.betti_numbers());

    let rep = verify_theorem_fp(&fp, &ModulePresentation::residue_field(&fp.r), 2, 8, None)?;
    for v in &rep.verdicts {
        println!("{v}");
    }
    println!("bounds {:?}, respected: {}", rep.bounds, rep.bound_respected());
    Ok(())
}
