use fitting_res::arith::Field;
use fitting_res::minors::{minors_ideal, minors_of_resolution};
use fitting_res::resolution::{minimal_resolution, GradedMatrix, ModulePresentation, ResolveOptions};
use fitting_res::ring::RingPresentation;

fn main() -> fitting_res::Result<()> {
    let ring = RingPresentation::parse(Field::DEFAULT, &["x"], &["x^3"])?;
    let k = ModulePresentation::residue_field(&ring);
    let res = minimal_resolution(&k, ResolveOptions::steps(8))?;
    for n in 1..=res.length() {
        println!("{}", minors_of_resolution(&res, n, 1)?);
    }

    let ring = RingPresentation::parse(Field::DEFAULT, &["x", "y"], &["x*y"])?;
    let rows = [["x", "y^2"], ["0", "x^2"]].map(|row| row.map(|s| ring.parse_poly(s).unwrap()).to_vec());
    let a = GradedMatrix::from_rows(&ring, vec![0, 0], &rows)?;
    println!("A = {a}");
    for r in 1..=2 {
        let gens = minors_ideal(&a, r).minimal_generators();
        println!("I_{r}(A) = ({})", gens.iter().map(|g| ring.show(g)).collect::<Vec<_>>().join(", "));
    }
    Ok(())
}
