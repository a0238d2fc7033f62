use fitting_res::arith::Field;
use fitting_res::deformation::{adjoin_variable, compare_with_direct, shamash_converse, verify_theorem_lift};
use fitting_res::resolution::{minimal_resolution, ModulePresentation, ResolveOptions};
use fitting_res::stretched::build_stretched;

fn main() -> fitting_res::Result<()> {
    let sg = build_stretched(3, 2, &[1, 1], Field::DEFAULT)?;
    let pair = adjoin_variable(&sg.ring, "w")?;
    let k = ModulePresentation::residue_field(&sg.ring);

    // Resolve over R' and assemble a resolution over R = R'[w].
    let f = minimal_resolution(&k, ResolveOptions::steps(6))?;
    let conv = shamash_converse(&f, &pair, None)?;
    println!("base betti:   {:?}", f.betti_numbers());
    println!("lifted betti: {:?}", conv.resolution.betti_numbers());
    println!("exact: {}, minimal: {}, ranks: {}", conv.exactness.is_exact(), conv.minimal, conv.ranks_ok);

    let agree = compare_with_direct(&conv.resolution, &k, &pair, 2)?;
    println!("direct betti: {:?}, minors agree: {}", agree.betti_direct, agree.minor_mismatches.is_empty());

    for r in 1..=2 {
        let rep = verify_theorem_lift(&pair, &k, r, 7)?;
        println!("r={r}: N={:?}, start={:?}, {:?}", rep.big_n, rep.start, rep.status);
    }
    Ok(())
}
