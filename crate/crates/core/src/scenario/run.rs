use std::sync::Arc;

use super::model::{Law, Scenario, Task, TaskKind};
use super::report::{Outcome, Record, Report, TaskReport};
use super::suite::{basis_differences, determinant_agrees, random_equivalent, run_suite, SuiteConfig};
use crate::deformation::{compare_with_direct, shamash_converse, verify_theorem_lift, DeformationPair, LiftStatus};
use crate::error::{Error, Result};
use crate::fiber::{lift_complex, moore_resolution, verify_theorem_fp, FiberProductRing, OnsetSummary};
use crate::minors::{check_minors_in_mr, check_summand_inclusion, check_tensor_submatrix_law, minors_ideal, minors_of_resolution, MinorVerdict};
use crate::resolution::{minimal_resolution, verify_exactness, Completeness, ModulePresentation, ResolveOptions, Resolution};
use crate::ring::{ideal_compare, GradedIdeal, IdealRelation, Ring};
use crate::stretched::{socle_witness, verify_theorem_sg, StretchedGorensteinRing};

/// Command-line overrides.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    /// Degree cap for truncated resolutions; overrides the caps in the file.
    pub cap: Option<i32>,
}

struct Ctx {
    seed: u64,
    cap: Option<i32>,
}

impl Ctx {
    fn cap(&self, task_cap: Option<i32>) -> Option<i32> {
        self.cap.or(task_cap)
    }
}

pub fn run_scenario(sc: &Scenario, opts: RunOptions) -> Report {
    let ctx = Ctx { seed: opts.seed.unwrap_or(sc.seed), cap: opts.cap };
    let tasks = sc.tasks.iter().enumerate().map(|(k, t)| run_task(t, k, &ctx)).collect();
    Report { title: sc.title.clone(), seed: ctx.seed, tasks }
}

fn run_task(task: &Task, index: usize, ctx: &Ctx) -> TaskReport {
    let mut t = TaskReport::new(&task.id, task.kind.name());
    let seed = ctx.seed.wrapping_add(index as u64);
    let res = match &task.kind {
        TaskKind::Resolve { module, n_max, cap, expect_betti, exactness } => resolve(&mut t, ctx, module, *n_max, *cap, expect_betti.as_deref(), *exactness),
        TaskKind::Minors { module, n_max, r_max, cap, from, expect_cycle, expect_power_from, basis_check: randomize } => {
            let spec = MinorsSpec { n_max: *n_max, r_max: *r_max, cap: ctx.cap(*cap), from: *from, cycle: expect_cycle.as_deref(), power_from: *expect_power_from };
            minors(&mut t, module, &spec).and_then(|res| if *randomize { basis_check(&mut t, module, &res, spec.r_max, seed) } else { Ok(()) })
        }
        TaskKind::VerifyFp { ring, module, r_max, n_max, cap, through } => verify_fp(&mut t, ring, module, *r_max, *n_max, ctx.cap(*cap), through),
        TaskKind::VerifySg { ring, module, r_max, n_max } => verify_sg(&mut t, ring, module, *r_max, *n_max),
        TaskKind::SocleWitness { ring, ns } => socle(&mut t, ring, ns),
        TaskKind::Shamash { pair, module, n_max, r_max, compare } => shamash(&mut t, ctx, pair, module, *n_max, *r_max, *compare),
        TaskKind::VerifyLift { pair, module, r_max, n_max } => lift(&mut t, pair, module, *r_max, *n_max),
        TaskKind::LiftComplex { ring, module, steps, degree, expect_homology_at } => lifted(&mut t, ring, module, *steps, *degree, *expect_homology_at),
        TaskKind::PropertySuite { cases, size, degree, suites, inject_unit } => {
            let cfg = SuiteConfig { seed: ctx.seed, cases: *cases, size: *size, degree: *degree, inject_unit: *inject_unit };
            property_suite(&mut t, &cfg, suites);
            Ok(())
        }
        TaskKind::MatrixLaw(law) => matrix_law(&mut t, law),
    };
    if let Err(e) = res {
        let hint = match e {
            Error::CapTooLow { needed, .. } if needed != i32::MAX => format!("; rerun with --cap {needed}"),
            _ => String::new(),
        };
        let msg = format!("{e}{hint}");
        t.record(format!("error: {msg}"), Record { n: None, r: None, verdict: "error".into(), flag: "fail".into(), witness: msg });
        t.outcome = Outcome::Fail;
    }
    t
}

fn flag_of(c: Completeness) -> String {
    match c {
        Completeness::Certified => "certified".into(),
        Completeness::Through(d) => format!("up to degree {d}"),
    }
}

fn betti_records(t: &mut TaskReport, res: &Resolution) {
    for n in 0..=res.length() {
        let graded: Vec<String> = res.graded_betti(n).iter().map(|(d, c)| format!("{d}:{c}")).collect();
        let flag = if n == 0 { "certified".into() } else { flag_of(res.completeness(n)) };
        t.record(String::new(), Record { n: Some(n), r: None, verdict: format!("betti={}", res.betti(n)), flag, witness: graded.join(" ") });
    }
}

fn verdict_line(t: &mut TaskReport, v: &MinorVerdict) {
    let rec = Record { n: Some(v.n), r: Some(v.r), verdict: v.ideal_text(), flag: v.flag(), witness: v.witness.clone().unwrap_or_default() };
    t.record(v.to_string(), rec);
}

fn list_text(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn resolve(t: &mut TaskReport, ctx: &Ctx, module: &ModulePresentation, n_max: usize, cap: Option<i32>, expect: Option<&[usize]>, exactness: bool) -> Result<()> {
    let cap = ctx.cap(cap);
    let res = minimal_resolution(module, ResolveOptions { n_max, cap, require_certified: false })?;
    t.note(res.betti_table_text());
    betti_records(t, &res);
    if let Some(exp) = expect {
        let mut got = res.betti_numbers();
        got.resize(exp.len().max(got.len()), 0);
        let ok = got[..exp.len()] == *exp;
        t.check("betti", Outcome::from_bool(ok), format!("expected [{}], got [{}]", list_text(exp), list_text(&got[..exp.len()])));
    }
    if exactness {
        let top = res.free(res.length()).max_degree().unwrap_or(0) + 2;
        let cap = cap.unwrap_or(top);
        let rep = verify_exactness(res.differentials(), cap)?;
        let detail = match rep.homology.first() {
            None => format!("exact through degree {cap}"),
            Some((pos, d, dim)) => format!("homology of dimension {dim} at position {pos}, degree {d}"),
        };
        t.check("exactness", Outcome::from_bool(rep.is_exact()), detail);
    }
    Ok(())
}

struct MinorsSpec<'a> {
    n_max: usize,
    r_max: usize,
    cap: Option<i32>,
    from: usize,
    cycle: Option<&'a [GradedIdeal]>,
    power_from: Option<usize>,
}

fn same_ideal(a: &GradedIdeal, b: &GradedIdeal) -> Result<bool> {
    let top = a.max_generator_degree().max(b.max_generator_degree()).unwrap_or(0);
    Ok(ideal_compare(a, b, top)?.relation == IdealRelation::Equal)
}

fn show_ideal(i: &GradedIdeal) -> String {
    let gens: Vec<String> = i.minimal_generators().iter().map(|g| i.ring().show(g)).collect();
    if gens.is_empty() {
        "0".into()
    } else {
        format!("({})", gens.join(", "))
    }
}

/// Failures on truncated steps are inconclusive rather than false.
fn miss(certified: bool) -> Outcome {
    if certified {
        Outcome::Fail
    } else {
        Outcome::Inconclusive
    }
}

fn minors(t: &mut TaskReport, module: &ModulePresentation, spec: &MinorsSpec) -> Result<Resolution> {
    let res = minimal_resolution(module, ResolveOptions { n_max: spec.n_max, cap: spec.cap, require_certified: false })?;
    t.note(format!("betti: [{}]", list_text(&res.betti_numbers())));
    let mut verdicts = Vec::new();
    for n in 1..=res.length() {
        for r in 1..=spec.r_max {
            let v = minors_of_resolution(&res, n, r)?;
            verdict_line(t, &v);
            verdicts.push(v);
        }
    }
    if let Some(cycle) = spec.cycle {
        let mut outcome = Outcome::Pass;
        let mut detail = format!("{} steps from n={}", cycle.len(), spec.from);
        for n in spec.from..=res.length() {
            let want = &cycle[(n - spec.from) % cycle.len()];
            let got = minors_ideal(res.differential(n), 1);
            if !same_ideal(&got, want)? {
                outcome = miss(res.is_certified(n));
                detail = format!("n={n}: expected {}, got {}", show_ideal(want), show_ideal(&got));
                break;
            }
        }
        if spec.from > res.length() {
            outcome = Outcome::Inconclusive;
            detail = format!("the resolution stops at step {}", res.length());
        }
        t.check("cycle", outcome, detail);
    }
    if let Some(from) = spec.power_from {
        let bad = verdicts.iter().find(|v| v.n >= from && !v.is_equal());
        let (outcome, detail) = match bad {
            _ if from > res.length() => (Outcome::Inconclusive, format!("range ends at n={}", res.length())),
            Some(v) => (miss(v.certified), format!("n={}, r={}: {}", v.n, v.r, v.ideal_text())),
            None => (Outcome::Pass, format!("I(n, r) = m^r for {from} <= n <= {}, r <= {}", res.length(), spec.r_max)),
        };
        t.check("power", outcome, detail);
    }
    Ok(res)
}

fn basis_check(t: &mut TaskReport, module: &ModulePresentation, res: &Resolution, r_max: usize, seed: u64) -> Result<()> {
    let other = random_equivalent(module, seed)?;
    let diff = basis_differences(module, &other, res.length(), r_max)?;
    let detail = diff.clone().unwrap_or_else(|| format!("randomized presentation agrees through n={}", res.length()));
    t.check("basis_independence", Outcome::from_bool(diff.is_none()), detail);
    Ok(())
}

fn onset_text(s: &OnsetSummary) -> String {
    let opt = |v: Option<usize>| v.map_or_else(|| "none".to_string(), |v| v.to_string());
    format!("r={}: first equality at n={}, onset {}, beta >= r from n={}", s.r, opt(s.first_equal), opt(s.onset), opt(s.beta_onset))
}

fn verify_fp(t: &mut TaskReport, fp: &FiberProductRing, module: &ModulePresentation, r_max: usize, n_max: usize, cap: Option<i32>, through: &[usize]) -> Result<()> {
    t.note(format!("embedding dimensions e1={}, e2={}", fp.e1(), fp.e2()));
    let over_factor = Arc::ptr_eq(module.ring(), &fp.s) || Arc::ptr_eq(module.ring(), &fp.t);
    let module = if over_factor {
        let moore = moore_resolution(module, fp, n_max)?;
        let pushed = moore.resolution.module().clone();
        let direct = minimal_resolution(&pushed, ResolveOptions { n_max, cap, require_certified: false })?;
        let mut got = moore.resolution.betti_numbers();
        let want = direct.betti_numbers();
        got.truncate(want.len());
        t.check("moore_ranks", Outcome::from_bool(got == want), format!("word ranks [{}], direct [{}]", list_text(&got), list_text(&want)));
        let audit = moore.audit_blocks();
        t.check("moore_blocks", Outcome::from_bool(audit.passed()), format!("{} crowded rows, {} bad columns", audit.crowded_rows.len(), audit.bad_columns.len()));
        pushed
    } else {
        module.clone()
    };
    let rep = verify_theorem_fp(fp, &module, r_max, n_max, cap)?;
    t.note(format!("betti: [{}]", list_text(&rep.betti)));
    for v in &rep.verdicts {
        verdict_line(t, v);
    }
    for (s, &b) in rep.summaries.iter().zip(&rep.bounds) {
        t.note(format!("{}; bound {b}", onset_text(s)));
    }
    let reached: Vec<usize> = rep.bounds.iter().copied().filter(|&b| b <= n_max).collect();
    let detail = if reached.is_empty() { "no bound within range".to_string() } else { format!("equality at every n >= bound for bounds [{}]", list_text(&reached)) };
    t.check("bound", Outcome::from_bool(rep.bound_respected()), detail);
    for (k, &end) in through.iter().enumerate() {
        let Some(s) = rep.summaries.get(k) else { continue };
        let outcome = match s.onset {
            Some(o) if end <= n_max && o <= end => Outcome::Pass,
            _ if end > n_max => Outcome::Inconclusive,
            _ => Outcome::Fail,
        };
        let detail = match s.onset {
            Some(o) => format!("equality from n={o} through n={end}"),
            None => "no persistent equality in range".into(),
        };
        t.check_at("through", end, Some(k + 1), outcome, detail);
    }
    Ok(())
}

fn verify_sg(t: &mut TaskReport, sg: &StretchedGorensteinRing, module: &ModulePresentation, r_max: usize, n_max: usize) -> Result<()> {
    let rep = verify_theorem_sg(sg, module, r_max, n_max)?;
    t.note(format!("e={}, s={}, length {}, socle generated by {}", sg.e, sg.s, sg.length(), sg.socle_generator()));
    t.note(format!("betti: [{}]", list_text(&rep.betti)));
    t.note(format!("mu = {}, annihilated generator found at step {}", rep.mu, rep.annihilated_at));
    t.note("tracked basis:  n  gamma  delta  x1*Id  killed");
    for s in &rep.tracked.steps {
        t.note(format!("               {:>2}  {:>5}  {:>5}  {:>5}  [{}]", s.n, s.gamma, s.delta, if s.x1_identity { "yes" } else { "no" }, list_text(&s.killed)));
    }
    for v in &rep.verdicts {
        verdict_line(t, v);
    }
    for (s, &b) in rep.summaries.iter().zip(&rep.bounds) {
        t.note(format!("{}; bound {b}", onset_text(s)));
    }
    t.check("tracked_betti", Outcome::from_bool(rep.tracked_betti_agree), "tracked and direct resolutions have equal ranks");
    t.check("counts", Outcome::from_bool(rep.tracked.counts_evolve()), "(gamma, delta) -> (2 delta, gamma)");
    t.check("identities", Outcome::from_bool(rep.tracked.identities_found()), "x1 * Id_gamma in every tracked differential");
    t.check("onset_bounds", Outcome::from_bool(rep.onsets_within_bounds()), format!("bounds [{}]", list_text(&rep.bounds)));
    let persist = if rep.persists() { Outcome::Pass } else { Outcome::Inconclusive };
    t.check("persists", persist, format!("equality persists through n={n_max}"));
    for row in &rep.growth.rows {
        if !row.holds {
            t.check_at("growth", row.n, None, Outcome::Fail, format!("beta_{} = {} < {} * {}", row.n + 1, row.beta_next, rep.growth.factor, row.beta_n));
        }
    }
    if rep.growth.holds() {
        t.check("growth", Outcome::Pass, format!("beta_(n+1) >= {} beta_n for {} steps", rep.growth.factor, rep.growth.rows.len()));
    }
    Ok(())
}

fn socle(t: &mut TaskReport, ring: &Ring, ns: &[usize]) -> Result<()> {
    for &n in ns {
        let w = socle_witness(ring, n)?;
        t.record(
            format!("I(n={n}, r=1) = {} [certified]", w.ideal),
            Record { n: Some(n), r: Some(1), verdict: w.ideal.clone(), flag: "certified".into(), witness: String::new() },
        );
        let exact = if w.exactness.is_exact() { format!("exact through degree {}", w.exactness.cap) } else { "not exact".into() };
        t.check_at("splice", n, None, Outcome::from_bool(w.exactness.is_exact() && w.minimal), format!("{exact}, minimal: {}", w.minimal));
        t.check_at("socle", n, Some(1), Outcome::from_bool(w.equals_socle && w.differs_from_m), format!("equals socle: {}, differs from m: {}", w.equals_socle, w.differs_from_m));
        t.check_at("generators", n, None, Outcome::from_bool(w.beta0_splice == w.beta0_dual), format!("{} from the splice, {} from the dual", w.beta0_splice, w.beta0_dual));
    }
    Ok(())
}

fn shamash(t: &mut TaskReport, ctx: &Ctx, pair: &DeformationPair, module: &ModulePresentation, n_max: usize, r_max: usize, compare: bool) -> Result<()> {
    if !Arc::ptr_eq(module.ring(), &pair.base) {
        return Err(Error::RingMismatch("the module must be over the base ring".into()));
    }
    let f = minimal_resolution(module, ResolveOptions::steps(n_max))?;
    let g = shamash_converse(&f, pair, ctx.cap)?;
    t.note(format!("base betti: [{}]", list_text(&f.betti_numbers())));
    t.note(format!("lifted betti: [{}]", list_text(&g.resolution.betti_numbers())));
    let sig = g.lift.nonzero_sigma();
    t.note(format!("sigma nonzero at steps [{}]", list_text(&sig)));
    t.check("square_zero", Outcome::Pass, "block differential squares to zero");
    t.check("minimal", Outcome::from_bool(g.minimal), "");
    let exact = match g.exactness.homology.first() {
        None => format!("exact through degree {}", g.exactness.cap),
        Some((pos, d, dim)) => format!("homology of dimension {dim} at position {pos}, degree {d}"),
    };
    t.check("exactness", Outcome::from_bool(g.exactness.is_exact()), exact);
    t.check("ranks", Outcome::from_bool(g.ranks_ok), "rank G_n = rank F_n + rank F_(n-1)");
    // informational only: assembly does not need it
    let comm = if g.sigma_commutes { "sigma commutes with the lifted differential" } else { "sigma does not commute with the lifted differential" };
    t.note(format!("note: {comm}"));
    if compare {
        let agree = compare_with_direct(&g.resolution, module, pair, r_max)?;
        t.check("direct_betti", Outcome::from_bool(agree.betti_g == agree.betti_direct), format!("direct [{}]", list_text(&agree.betti_direct)));
        let detail = if agree.minor_mismatches.is_empty() {
            format!("I(n, r) agree for r <= {r_max}")
        } else {
            format!("mismatch at (n, r) = {:?}", agree.minor_mismatches)
        };
        t.check("direct_minors", Outcome::from_bool(agree.minor_mismatches.is_empty()), detail);
    }
    Ok(())
}

fn lift(t: &mut TaskReport, pair: &DeformationPair, module: &ModulePresentation, r_max: usize, n_max: usize) -> Result<()> {
    for r in 1..=r_max {
        let rep = verify_theorem_lift(pair, module, r, n_max)?;
        for s in &rep.ell {
            t.note(format!("base {}", onset_text(s)));
        }
        let opt = |v: Option<usize>| v.map_or_else(|| "none".to_string(), |v| v.to_string());
        t.note(format!(
            "r={r}: N={}, start={}{}, sigma nonzero at [{}]",
            opt(rep.big_n),
            opt(rep.start),
            if rep.shortcut { " (m^r nonzero on the base, N not needed)" } else { "" },
            list_text(&rep.sigma_nonzero)
        ));
        for v in &rep.verdicts {
            verdict_line(t, v);
        }
        let outcome = match rep.status {
            LiftStatus::Verified => Outcome::Pass,
            LiftStatus::Inconclusive => Outcome::Inconclusive,
            LiftStatus::Falsified => Outcome::Fail,
        };
        let detail = match (rep.status, rep.start) {
            (LiftStatus::Inconclusive, _) => "onsets not reached within range".to_string(),
            (_, Some(s)) => format!("I(n, {r}) = m^{r} checked for {s} <= n <= {n_max}"),
            _ => String::new(),
        };
        t.check("lift", outcome, detail);
    }
    Ok(())
}

fn lifted(t: &mut TaskReport, fp: &FiberProductRing, module: &ModulePresentation, steps: usize, degree: i32, expect: Option<usize>) -> Result<()> {
    if !(Arc::ptr_eq(module.ring(), &fp.s) || Arc::ptr_eq(module.ring(), &fp.t)) {
        return Err(Error::RingMismatch("the module must be over a factor ring".into()));
    }
    let res = minimal_resolution(module, ResolveOptions::steps(steps + 1))?;
    let k = steps.min(res.length());
    let maps = lift_complex(&res.differentials()[..k], fp)?;
    for (i, m) in maps.iter().enumerate() {
        t.note(format!("lifted d{} = {m}", i + 1));
    }
    let rep = verify_exactness(&maps, degree)?;
    for &(pos, d, dim) in &rep.homology {
        t.record(
            format!("homology at position {pos}, degree {d}: dimension {dim}"),
            Record { n: Some(pos), r: None, verdict: format!("homology={dim}"), flag: format!("degree {d}"), witness: String::new() },
        );
    }
    if rep.homology.is_empty() {
        t.note(format!("exact through degree {degree}"));
    }
    if let Some(p) = expect {
        let hit = rep.homology.iter().find(|h| h.0 == p);
        let detail = match hit {
            Some((_, d, dim)) => format!("dimension {dim} in degree {d}"),
            None => format!("none through degree {degree}"),
        };
        t.check_at("homology", p, None, Outcome::from_bool(hit.is_some()), detail);
    }
    Ok(())
}

/// With `inject_unit` the `minors_in_power` suite is a mutation test: it passes when the
/// planted unit entry is caught.
fn property_suite(t: &mut TaskReport, cfg: &SuiteConfig, suites: &[String]) {
    for name in suites {
        let Some(res) = run_suite(name, cfg) else {
            t.check(name, Outcome::Fail, "unknown suite");
            continue;
        };
        let mutation = cfg.inject_unit && name == "minors_in_power";
        match (&res.failure, mutation) {
            (None, false) => t.check(name, Outcome::Pass, format!("{} cases", res.cases)),
            (None, true) => t.check(name, Outcome::Fail, format!("planted unit entry survived {} cases", res.cases)),
            (Some(cx), _) => {
                let head = format!("case {} after {} shrink steps: {}", cx.case, cx.shrink_steps, cx.detail);
                t.note("reproducer:");
                for l in cx.reproducer.lines() {
                    t.note(format!("    {l}"));
                }
                let outcome = if mutation { Outcome::Pass } else { Outcome::Fail };
                let name = if mutation { format!("{name}_mutation") } else { name.clone() };
                t.check(&name, outcome, head);
            }
        }
    }
}

fn matrix_law(t: &mut TaskReport, law: &Law) -> Result<()> {
    match law {
        Law::MinorsInPower { a, r } => {
            t.note(format!("A = {a}"));
            t.check("minors_in_power", Outcome::from_bool(check_minors_in_mr(a, *r)), format!("r={r}"));
        }
        Law::Determinant { a } => {
            t.note(format!("A = {a}"));
            t.check("determinant", Outcome::from_bool(determinant_agrees(a)?), "");
        }
        Law::Tensor { a, l, b, rows, cols, composition } => {
            let ok = check_tensor_submatrix_law(a, *l, b, rows, cols, composition)?;
            t.check("tensor", Outcome::from_bool(ok), format!("composition [{}]", list_text(composition)));
        }
        Law::Summand { m_module, n_module, n, m, r } => {
            if !Arc::ptr_eq(m_module.ring(), n_module.ring()) {
                return Err(Error::RingMismatch("modules over different rings".into()));
            }
            let res_m = minimal_resolution(m_module, ResolveOptions::steps(n + m))?;
            let res_n = minimal_resolution(n_module, ResolveOptions::steps(*m))?;
            let ok = check_summand_inclusion(&res_m, &res_n, *n, *m, *r)?;
            t.check("summand", Outcome::from_bool(ok), format!("I(m={m}, r={r})(N) in I(n={}, r={r})(M)", n + m));
        }
        Law::Basis { a, b, n_max, r_max } => {
            let diff = basis_differences(a, b, *n_max, *r_max)?;
            let detail = diff.clone().unwrap_or_default();
            t.check("basis", Outcome::from_bool(diff.is_none()), detail);
        }
    }
    Ok(())
}
