use fitting_res::scenario::suite::{run_suite, SuiteConfig, SUITES};

fn main() {
    let cfg = SuiteConfig { seed: 7, cases: 40, size: 3, degree: 2, inject_unit: false };
    for name in SUITES {
        let res = run_suite(name, &cfg).expect("known suite");
        println!("{name}: {} cases, {}", res.cases, if res.failure.is_none() { "ok" } else { "FAILED" });
    }

    // A planted unit entry breaks I_r(A) ⊆ m^r; the shrunk case is a runnable scenario.
    let planted = SuiteConfig { inject_unit: true, cases: 5, ..cfg };
    if let Some(cx) = run_suite("minors_in_power", &planted).and_then(|r| r.failure) {
        println!("\ncounterexample at case {} ({} shrink steps): {}", cx.case, cx.shrink_steps, cx.detail);
        println!("{}", cx.reproducer);
    }
}
