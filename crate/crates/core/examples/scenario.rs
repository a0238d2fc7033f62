use fitting_res::scenario::{run_source, ReportFormat, RunOptions};

const SCENARIO: &str = "
title = minors over k[x,y]/(x^2, xy, y^3)
ring R = plain { vars = [x, y], relations = [x^2, x*y, y^3] }
module K = residue { ring = R }
module Q = quotient { ring = R, gens = [y] }

task betti = resolve { module = K, n_max = 4 }
task minors = minors { module = Q, n_max = 5, r_max = 2 }
";

fn main() -> fitting_res::Result<()> {
    let report = run_source(SCENARIO, RunOptions::default())?;
    print!("{}", report.render(ReportFormat::Text));
    println!();
    print!("{}", report.render(ReportFormat::Structured));
    std::process::exit(report.exit_code());
}
