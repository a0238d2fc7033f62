use fitting_res::arith::{parse_polynomial, Field};
use fitting_res::ring::RingPresentation;

fn main() -> fitting_res::Result<()> {
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let f = parse_polynomial("x^2 + 4xy + 4*y^2 - 1/3*x*z", &names, Field::DEFAULT)?;
    let text = f.to_string_with(&names);
    println!("parsed:     {text}");
    let again = parse_polynomial(&text, &names, Field::DEFAULT)?;
    println!("round trip: {}", again == f);

    // Normal forms live in the quotient; x^2 and z^2 agree there.
    let ring = RingPresentation::parse(Field::DEFAULT, &["x", "y", "z"], &["x*y", "x^2 - z^2", "y^3"])?;
    println!("groebner basis: {:?}", ring.groebner_basis().iter().map(|g| ring.show(g)).collect::<Vec<_>>());
    for src in ["x^2", "x^3 + x*y*z", "y^3 + 3y^2z + z^3"] {
        let p = ring.parse_poly(src)?;
        println!("{src:>12} -> {}", ring.show(&ring.normal_form(&p)));
    }
    println!("hilbert function: {:?}", (0..6).map(|d| ring.hilbert_function(d)).collect::<Vec<_>>());
    Ok(())
}
