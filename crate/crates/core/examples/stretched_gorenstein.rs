use fitting_res::arith::Field;
use fitting_res::resolution::ModulePresentation;
use fitting_res::stretched::{build_stretched, verify_theorem_sg};

fn main() -> fitting_res::Result<()> {
    let sg = build_stretched(3, 2, &[1, 1], Field::DEFAULT)?;
    let ring = &sg.ring;
    println!("e={}, s={}, length {}, socle {}", sg.e, sg.s, sg.length(), sg.socle_generator());
    println!("relations: {}", ring.relations().iter().map(|g| ring.show(g)).collect::<Vec<_>>().join(", "));

    let x2 = ring.parse_poly("x2")?;
    for (name, m) in [("k", ModulePresentation::residue_field(ring)), ("R/(x2)", ModulePresentation::quotient(ring, &[x2])?)] {
        let rep = verify_theorem_sg(&sg, &m, 2, 8)?;
        println!("\nM = {name}: betti {:?}", rep.betti);
        println!("mu = {}, annihilated generator at step {}", rep.mu, rep.annihilated_at);
        for step in &rep.tracked.steps {
            println!("  n={} gamma={} delta={}", step.n, step.gamma, step.delta);
        }
        for s in &rep.summaries {
            let onset = s.onset.map_or("-".to_string(), |o| o.to_string());
            println!("  r={}: equality from n={onset} (bound {})", s.r, rep.bounds[s.r - 1]);
        }
        println!("  growth beta_(n+1) >= 2 beta_n: {}", rep.growth.holds());
    }
    Ok(())
}
