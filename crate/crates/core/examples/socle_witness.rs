use fitting_res::arith::Field;
use fitting_res::stretched::{build_stretched, socle_witness};

fn main() -> fitting_res::Result<()> {
    let sg = build_stretched(3, 2, &[1, 1], Field::DEFAULT)?;
    for n in 2..=5 {
        let w = socle_witness(&sg.ring, n)?;
        println!(
            "n={n}: I_1 of the n-th map = {}, socle: {}, proper: {}, exact: {}, minimal: {}",
            w.ideal,
            w.equals_socle,
            w.differs_from_m,
            w.exactness.is_exact(),
            w.minimal
        );
    }
    Ok(())
}
