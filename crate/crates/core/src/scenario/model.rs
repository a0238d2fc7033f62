use std::cell::Cell;
use std::collections::HashMap;

use super::syntax::{parse_error, parse_statements, Entry, Node, Pos, Statement, Value};
use crate::arith::{parse_polynomial, Field, Polynomial};
use crate::deformation::{adjoin_variable, quotient_by_variable, DeformationPair};
use crate::error::{Error, Result};
use crate::fiber::{fiber_product, FiberProductRing};
use crate::resolution::{minimal_resolution, GradedMatrix, ModulePresentation, ResolveOptions};
use crate::ring::{GradedIdeal, Ring, RingPresentation};
use crate::stretched::{build_stretched, StretchedGorensteinRing};

#[derive(Clone, Debug)]
pub enum RingDecl {
    Plain(Ring),
    FiberProduct(FiberProductRing),
    Stretched(StretchedGorensteinRing),
    Deform(DeformationPair),
}

impl RingDecl {
    /// The ring a bare reference denotes.
    pub fn ring(&self) -> &Ring {
        match self {
            RingDecl::Plain(r) => r,
            RingDecl::FiberProduct(fp) => &fp.r,
            RingDecl::Stretched(sg) => &sg.ring,
            RingDecl::Deform(p) => &p.total,
        }
    }

    fn part(&self, part: &str) -> Option<&Ring> {
        match (self, part) {
            (RingDecl::FiberProduct(fp), "left") => Some(&fp.s),
            (RingDecl::FiberProduct(fp), "right") => Some(&fp.t),
            (RingDecl::Deform(p), "base") => Some(&p.base),
            (RingDecl::Deform(p), "total") => Some(&p.total),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Law {
    /// Every `r x r` minor of `a` lies in `m^r`.
    MinorsInPower { a: GradedMatrix, r: usize },
    /// `I_{r_1}(A) ... I_{r_l}(A) ⊆ I_r(B)` when `A ⊗ Id_l` sits in `B` on `rows x cols`.
    Tensor { a: GradedMatrix, l: usize, b: GradedMatrix, rows: Vec<usize>, cols: Vec<usize>, composition: Vec<usize> },
    /// `I_{m,r}(N) ⊆ I_{n+m,r}(M)` for a summand `N` of `Ω_n(M)`.
    Summand { m_module: ModulePresentation, n_module: ModulePresentation, n: usize, m: usize, r: usize },
    /// The top minor by expansion equals the permutation sum.
    Determinant { a: GradedMatrix },
    /// Betti numbers and minor ideals agree for two presentations of one module.
    Basis { a: ModulePresentation, b: ModulePresentation, n_max: usize, r_max: usize },
}

#[derive(Clone, Debug)]
pub enum TaskKind {
    Resolve { module: ModulePresentation, n_max: usize, cap: Option<i32>, expect_betti: Option<Vec<usize>>, exactness: bool },
    Minors {
        module: ModulePresentation,
        n_max: usize,
        r_max: usize,
        cap: Option<i32>,
        from: usize,
        /// Expected `I_{n,1}` for `n = from, from + 1, ...`, read cyclically.
        expect_cycle: Option<Vec<GradedIdeal>>,
        /// `I_{n,r} = m^r` for every `r` and every `n >= expect_power_from`.
        expect_power_from: Option<usize>,
        basis_check: bool,
    },
    VerifyFp { ring: FiberProductRing, module: ModulePresentation, r_max: usize, n_max: usize, cap: Option<i32>, through: Vec<usize> },
    VerifySg { ring: StretchedGorensteinRing, module: ModulePresentation, r_max: usize, n_max: usize },
    SocleWitness { ring: Ring, ns: Vec<usize> },
    Shamash { pair: DeformationPair, module: ModulePresentation, n_max: usize, r_max: usize, compare: bool },
    VerifyLift { pair: DeformationPair, module: ModulePresentation, r_max: usize, n_max: usize },
    LiftComplex { ring: FiberProductRing, module: ModulePresentation, steps: usize, degree: i32, expect_homology_at: Option<usize> },
    PropertySuite { cases: usize, size: usize, degree: u32, suites: Vec<String>, inject_unit: bool },
    MatrixLaw(Law),
}

impl TaskKind {
    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::Resolve { .. } => "resolve",
            TaskKind::Minors { .. } => "minors",
            TaskKind::VerifyFp { .. } => "verify_fp",
            TaskKind::VerifySg { .. } => "verify_sg",
            TaskKind::SocleWitness { .. } => "socle_witness",
            TaskKind::Shamash { .. } => "shamash",
            TaskKind::VerifyLift { .. } => "verify_lift",
            TaskKind::LiftComplex { .. } => "lift_complex",
            TaskKind::PropertySuite { .. } => "property_suite",
            TaskKind::MatrixLaw(_) => "matrix_law",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Task {
    pub id: String,
    pub pos: Pos,
    pub kind: TaskKind,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub title: Option<String>,
    pub seed: u64,
    pub rings: Vec<(String, RingDecl)>,
    pub modules: Vec<(String, ModulePresentation)>,
    pub tasks: Vec<Task>,
}

/// Keys of one block, with a check that every key was read.
struct Fields<'a> {
    pos: Pos,
    what: String,
    entries: &'a [Entry],
    used: Vec<Cell<bool>>,
}

impl<'a> Fields<'a> {
    fn new(node: &'a Node, what: &str) -> Result<(Option<&'a str>, Fields<'a>)> {
        match &node.value {
            Value::Block(kind, entries) => Ok((
                kind.as_deref(),
                Fields { pos: node.pos, what: what.to_string(), entries, used: entries.iter().map(|_| Cell::new(false)).collect() },
            )),
            _ => Err(parse_error(node.pos, format!("{what}: expected a block"))),
        }
    }

    fn get(&self, key: &str) -> Option<&'a Node> {
        let k = self.entries.iter().position(|e| e.key == key)?;
        self.used[k].set(true);
        Some(&self.entries[k].value)
    }

    fn req(&self, key: &str) -> Result<&'a Node> {
        self.get(key).ok_or_else(|| parse_error(self.pos, format!("{}: missing key '{key}'", self.what)))
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        self.get(key).map_or(Ok(default), usize_of)
    }

    fn opt_i32(&self, key: &str) -> Result<Option<i32>> {
        self.get(key).map(|n| int_of(n).map(|v| v as i32)).transpose()
    }

    fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.get(key) {
            None => Ok(default),
            Some(n) => match scalar(n)? {
                "true" => Ok(true),
                "false" => Ok(false),
                s => Err(parse_error(n.pos, format!("expected true or false, found '{s}'"))),
            },
        }
    }

    fn finish(self) -> Result<()> {
        match self.entries.iter().zip(&self.used).find(|(_, u)| !u.get()) {
            Some((e, _)) => Err(parse_error(e.pos, format!("{}: unknown key '{}'", self.what, e.key))),
            None => Ok(()),
        }
    }
}

fn scalar(node: &Node) -> Result<&str> {
    match &node.value {
        Value::Scalar(s) => Ok(s),
        _ => Err(parse_error(node.pos, "expected a scalar")),
    }
}

fn list(node: &Node) -> Result<&[Node]> {
    match &node.value {
        Value::List(items) => Ok(items),
        _ => Err(parse_error(node.pos, "expected a list")),
    }
}

fn int_of(node: &Node) -> Result<i64> {
    let s = scalar(node)?;
    s.parse().map_err(|_| parse_error(node.pos, format!("expected an integer, found '{s}'")))
}

fn usize_of(node: &Node) -> Result<usize> {
    let s = scalar(node)?;
    s.parse().map_err(|_| parse_error(node.pos, format!("expected a non-negative integer, found '{s}'")))
}

fn usize_list(node: &Node) -> Result<Vec<usize>> {
    list(node)?.iter().map(usize_of).collect()
}

fn int_list(node: &Node) -> Result<Vec<i64>> {
    list(node)?.iter().map(int_of).collect()
}

fn names_of(node: &Node) -> Result<Vec<String>> {
    list(node)?.iter().map(|n| scalar(n).map(str::to_string)).collect()
}

fn poly_of(ring: &Ring, node: &Node) -> Result<Polynomial> {
    let src = scalar(node)?;
    let f = parse_polynomial(src, ring.names(), ring.field()).map_err(|e| parse_error(node.pos, e.to_string()))?;
    Ok(ring.normal_form(&f))
}

fn polys_of(ring: &Ring, node: &Node) -> Result<Vec<Polynomial>> {
    list(node)?.iter().map(|n| poly_of(ring, n)).collect()
}

/// Wraps a construction error with the position of the declaration that caused it.
fn at<T>(pos: Pos, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => parse_error(pos, other.to_string()),
    })
}

impl Scenario {
    pub fn parse(src: &str) -> Result<Scenario> {
        let mut sc = Scenario { title: None, seed: 1, rings: Vec::new(), modules: Vec::new(), tasks: Vec::new() };
        let mut matrices: HashMap<String, GradedMatrix> = HashMap::new();
        for st in parse_statements(src)? {
            let Statement { pos, keyword, name, value } = &st;
            let taken = |n: &str, sc: &Scenario| {
                sc.rings.iter().any(|(m, _)| m == n) || sc.modules.iter().any(|(m, _)| m == n) || matrices.contains_key(n) || sc.tasks.iter().any(|t| t.id == n)
            };
            match (keyword.as_str(), name) {
                ("seed", None) => sc.seed = int_of(value)? as u64,
                ("title", None) => sc.title = Some(scalar(value)?.to_string()),
                (kw @ ("ring" | "module" | "matrix" | "task"), Some(name)) => {
                    if taken(name, &sc) {
                        return Err(parse_error(*pos, format!("'{name}' is already declared")));
                    }
                    if name.contains('.') {
                        return Err(parse_error(*pos, format!("'{name}': names may not contain '.'")));
                    }
                    match kw {
                        "ring" => {
                            let decl = sc.ring_decl(value)?;
                            sc.rings.push((name.clone(), decl));
                        }
                        "module" => {
                            let m = sc.module_decl(value)?;
                            sc.modules.push((name.clone(), m));
                        }
                        "matrix" => {
                            let a = sc.matrix_decl(value)?;
                            matrices.insert(name.clone(), a);
                        }
                        _ => {
                            let kind = sc.task_decl(value, &matrices)?;
                            sc.tasks.push(Task { id: name.clone(), pos: *pos, kind });
                        }
                    }
                }
                (kw, _) => return Err(parse_error(*pos, format!("unknown statement '{kw}'"))),
            }
        }
        Ok(sc)
    }

    fn ring_entry(&self, name: &str) -> Option<&RingDecl> {
        self.rings.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    /// `R`, or `R.left`, `R.right`, `R.base`, `R.total`.
    fn ring_ref(&self, node: &Node) -> Result<Ring> {
        let s = scalar(node)?;
        let (head, part) = match s.split_once('.') {
            Some((h, p)) => (h, Some(p)),
            None => (s, None),
        };
        let decl = self.ring_entry(head).ok_or_else(|| parse_error(node.pos, format!("unknown ring '{head}'")))?;
        match part {
            None => Ok(decl.ring().clone()),
            Some(p) => decl.part(p).cloned().ok_or_else(|| parse_error(node.pos, format!("ring '{head}' has no part '{p}'"))),
        }
    }

    fn ring_decl_ref(&self, node: &Node) -> Result<&RingDecl> {
        let s = scalar(node)?;
        self.ring_entry(s).ok_or_else(|| parse_error(node.pos, format!("unknown ring '{s}'")))
    }

    /// A ring reference or an inline plain ring block.
    fn ring_value(&self, node: &Node) -> Result<Ring> {
        match &node.value {
            Value::Scalar(_) => self.ring_ref(node),
            _ => match self.ring_decl(node)? {
                RingDecl::Plain(r) => Ok(r),
                other => Ok(other.ring().clone()),
            },
        }
    }

    fn field_of(f: &Fields) -> Result<Field> {
        match f.get("char") {
            None => Ok(Field::DEFAULT),
            Some(n) => at(n.pos, Field::with_characteristic(usize_of(n)? as u32)),
        }
    }

    fn ring_decl(&self, node: &Node) -> Result<RingDecl> {
        let (kind, f) = Fields::new(node, "ring")?;
        let decl = match kind.unwrap_or("plain") {
            "plain" => {
                let field = Self::field_of(&f)?;
                let names = names_of(f.req("vars")?)?;
                let rels = match f.get("relations") {
                    None => vec![],
                    Some(n) => list(n)?.iter().map(|n| parse_polynomial(scalar(n)?, &names, field).map_err(|e| parse_error(n.pos, e.to_string()))).collect::<Result<_>>()?,
                };
                RingDecl::Plain(at(node.pos, RingPresentation::new(field, names, rels))?)
            }
            "fiber_product" => {
                let s = self.ring_value(f.req("left")?)?;
                let t = self.ring_value(f.req("right")?)?;
                RingDecl::FiberProduct(at(node.pos, fiber_product(&s, &t))?)
            }
            "stretched_gorenstein" => {
                let field = Self::field_of(&f)?;
                let e = usize_of(f.req("e")?)?;
                let s = usize_of(f.req("s")?)? as u32;
                let units = match f.get("units") {
                    Some(n) => int_list(n)?,
                    None => vec![1; e.saturating_sub(1)],
                };
                RingDecl::Stretched(at(node.pos, build_stretched(e, s, &units, field))?)
            }
            "deform" => match (f.get("base"), f.get("total")) {
                (Some(b), None) => {
                    let base = self.ring_value(b)?;
                    let name = scalar(f.req("adjoin")?)?;
                    RingDecl::Deform(at(node.pos, adjoin_variable(&base, name))?)
                }
                (None, Some(t)) => {
                    let total = self.ring_value(t)?;
                    let name = scalar(f.req("x")?)?;
                    RingDecl::Deform(at(node.pos, quotient_by_variable(&total, name))?)
                }
                _ => return Err(parse_error(node.pos, "deform: give exactly one of 'base' and 'total'")),
            },
            other => return Err(parse_error(node.pos, format!("unknown ring kind '{other}'"))),
        };
        f.finish()?;
        Ok(decl)
    }

    pub fn module(&self, name: &str) -> Option<&ModulePresentation> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn ring(&self, name: &str) -> Option<&RingDecl> {
        self.ring_entry(name)
    }

    fn module_ref(&self, node: &Node) -> Result<ModulePresentation> {
        match &node.value {
            Value::Scalar(s) => self.module(s).cloned().ok_or_else(|| parse_error(node.pos, format!("unknown module '{s}'"))),
            _ => self.module_decl(node),
        }
    }

    fn module_decl(&self, node: &Node) -> Result<ModulePresentation> {
        let (kind, f) = Fields::new(node, "module")?;
        let Some(kind) = kind else { return Err(parse_error(node.pos, "module: missing kind")) };
        let m = match kind {
            "residue" => ModulePresentation::residue_field(&self.ring_ref(f.req("ring")?)?),
            "quotient" => {
                let ring = self.ring_ref(f.req("ring")?)?;
                let gens = polys_of(&ring, f.req("gens")?)?;
                at(node.pos, ModulePresentation::quotient(&ring, &gens))?
            }
            "ideal" => {
                let ring = self.ring_ref(f.req("ring")?)?;
                let gens = polys_of(&ring, f.req("gens")?)?;
                at(node.pos, ModulePresentation::ideal(&ring, &gens, f.opt_i32("cap")?))?
            }
            "presentation" => ModulePresentation::from_matrix(&self.matrix_fields(node, &f)?),
            "sum" => {
                let parts = list(f.req("of")?)?;
                let first = parts.first().ok_or_else(|| parse_error(node.pos, "sum: empty list"))?;
                let mut m = self.module_ref(first)?;
                for p in &parts[1..] {
                    let next = self.module_ref(p)?;
                    if !std::sync::Arc::ptr_eq(next.ring(), m.ring()) {
                        return Err(parse_error(p.pos, "sum: summands lie over different rings"));
                    }
                    m = m.direct_sum(&next);
                }
                m
            }
            "syzygy" => {
                let base = self.module_ref(f.req("of")?)?;
                let n = usize_of(f.req("n")?)?;
                let res = at(node.pos, minimal_resolution(&base, ResolveOptions { n_max: n + 1, cap: f.opt_i32("cap")?, require_certified: false }))?;
                if n == 0 {
                    base
                } else if res.length() <= n {
                    return Err(parse_error(node.pos, format!("syzygy: the resolution stops before step {}", n + 1)));
                } else {
                    ModulePresentation::from_matrix(res.differential(n + 1))
                }
            }
            other => return Err(parse_error(node.pos, format!("unknown module kind '{other}'"))),
        };
        f.finish()?;
        Ok(m)
    }

    /// `{ ring = R, degrees = [..], rows = [[..], ..], source = [..] }`.
    fn matrix_fields(&self, node: &Node, f: &Fields) -> Result<GradedMatrix> {
        let ring = self.ring_ref(f.req("ring")?)?;
        let rows_node = f.req("rows")?;
        let rows: Vec<Vec<Polynomial>> = list(rows_node)?.iter().map(|r| polys_of(&ring, r)).collect::<Result<_>>()?;
        let degrees = match f.get("degrees") {
            Some(n) => int_list(n)?.into_iter().map(|d| d as i32).collect(),
            None => vec![0; rows.len()],
        };
        match f.get("source") {
            Some(n) => {
                let source = int_list(n)?.into_iter().map(|d| d as i32).collect();
                at(node.pos, GradedMatrix::from_polys(&ring, degrees, source, &rows))
            }
            None => at(node.pos, GradedMatrix::from_rows(&ring, degrees, &rows)),
        }
    }

    fn matrix_decl(&self, node: &Node) -> Result<GradedMatrix> {
        let (kind, f) = Fields::new(node, "matrix")?;
        if kind.is_some() {
            return Err(parse_error(node.pos, "matrix: expected a bare block"));
        }
        let a = self.matrix_fields(node, &f)?;
        f.finish()?;
        Ok(a)
    }

    fn task_decl(&self, node: &Node, matrices: &HashMap<String, GradedMatrix>) -> Result<TaskKind> {
        let (kind, f) = Fields::new(node, "task")?;
        let Some(kind) = kind else { return Err(parse_error(node.pos, "task: missing kind")) };
        let matrix = |key: &str| -> Result<GradedMatrix> {
            let n = f.req(key)?;
            let s = scalar(n)?;
            matrices.get(s).cloned().ok_or_else(|| parse_error(n.pos, format!("unknown matrix '{s}'")))
        };
        let task = match kind {
            "resolve" => TaskKind::Resolve {
                module: self.module_ref(f.req("module")?)?,
                n_max: f.usize_or("n_max", 5)?,
                cap: f.opt_i32("cap")?,
                expect_betti: f.get("expect_betti").map(usize_list).transpose()?,
                exactness: f.bool_or("exactness", false)?,
            },
            "minors" => {
                let module = self.module_ref(f.req("module")?)?;
                let expect_cycle = match f.get("expect_cycle") {
                    None => None,
                    Some(n) => Some(
                        list(n)?
                            .iter()
                            .map(|g| at(g.pos, GradedIdeal::new(module.ring().clone(), &polys_of(module.ring(), g)?)))
                            .collect::<Result<Vec<_>>>()?,
                    ),
                };
                if expect_cycle.as_ref().is_some_and(|c| c.is_empty()) {
                    return Err(parse_error(node.pos, "minors: expect_cycle is empty"));
                }
                TaskKind::Minors {
                    module,
                    n_max: f.usize_or("n_max", 6)?,
                    r_max: f.usize_or("r_max", 1)?,
                    cap: f.opt_i32("cap")?,
                    from: f.usize_or("from", 1)?.max(1),
                    expect_cycle,
                    expect_power_from: f.get("expect_power_from").map(usize_of).transpose()?,
                    basis_check: f.bool_or("basis_check", false)?,
                }
            }
            "verify_fp" => {
                let ring = match self.ring_decl_ref(f.req("ring")?)? {
                    RingDecl::FiberProduct(fp) => fp.clone(),
                    _ => return Err(parse_error(node.pos, "verify_fp: 'ring' must be a fiber product")),
                };
                TaskKind::VerifyFp {
                    ring,
                    module: self.module_ref(f.req("module")?)?,
                    r_max: f.usize_or("r_max", 1)?,
                    n_max: f.usize_or("n_max", 8)?,
                    cap: f.opt_i32("cap")?,
                    through: f.get("through").map(usize_list).transpose()?.unwrap_or_default(),
                }
            }
            "verify_sg" => {
                let ring = match self.ring_decl_ref(f.req("ring")?)? {
                    RingDecl::Stretched(sg) => sg.clone(),
                    _ => return Err(parse_error(node.pos, "verify_sg: 'ring' must be stretched Gorenstein")),
                };
                TaskKind::VerifySg {
                    ring,
                    module: self.module_ref(f.req("module")?)?,
                    r_max: f.usize_or("r_max", 1)?,
                    n_max: f.usize_or("n_max", 8)?,
                }
            }
            "socle_witness" => {
                let ring = self.ring_ref(f.req("ring")?)?;
                let ns = match f.req("n")? {
                    n @ Node { value: Value::List(_), .. } => usize_list(n)?,
                    n => vec![usize_of(n)?],
                };
                TaskKind::SocleWitness { ring, ns }
            }
            "shamash" | "verify_lift" => {
                let pair = match self.ring_decl_ref(f.req("ring")?)? {
                    RingDecl::Deform(p) => p.clone(),
                    _ => return Err(parse_error(node.pos, format!("{kind}: 'ring' must be a deform ring"))),
                };
                let module = self.module_ref(f.req("module")?)?;
                let n_max = f.usize_or("n_max", 6)?;
                let r_max = f.usize_or("r_max", 1)?;
                if kind == "shamash" {
                    TaskKind::Shamash { pair, module, n_max, r_max, compare: f.bool_or("compare", true)? }
                } else {
                    TaskKind::VerifyLift { pair, module, r_max, n_max }
                }
            }
            "lift_complex" => {
                let ring = match self.ring_decl_ref(f.req("ring")?)? {
                    RingDecl::FiberProduct(fp) => fp.clone(),
                    _ => return Err(parse_error(node.pos, "lift_complex: 'ring' must be a fiber product")),
                };
                TaskKind::LiftComplex {
                    ring,
                    module: self.module_ref(f.req("module")?)?,
                    steps: f.usize_or("steps", 2)?,
                    degree: f.opt_i32("degree")?.unwrap_or(4),
                    expect_homology_at: f.get("expect_homology_at").map(usize_of).transpose()?,
                }
            }
            "property_suite" => TaskKind::PropertySuite {
                cases: f.usize_or("cases", 50)?,
                size: f.usize_or("size", 3)?,
                degree: f.usize_or("degree", 2)? as u32,
                suites: match f.get("suites") {
                    Some(n) => names_of(n)?,
                    None => super::suite::SUITES.iter().map(|s| s.to_string()).collect(),
                },
                inject_unit: f.bool_or("inject_unit", false)?,
            },
            "matrix_law" => {
                let law_node = f.req("law")?;
                let law = match scalar(law_node)? {
                    "minors_in_power" => Law::MinorsInPower { a: matrix("a")?, r: usize_of(f.req("r")?)? },
                    "determinant" => Law::Determinant { a: matrix("a")? },
                    "tensor" => Law::Tensor {
                        a: matrix("a")?,
                        l: usize_of(f.req("l")?)?,
                        b: matrix("b")?,
                        rows: usize_list(f.req("rows")?)?,
                        cols: usize_list(f.req("cols")?)?,
                        composition: usize_list(f.req("composition")?)?,
                    },
                    "summand" => Law::Summand {
                        m_module: self.module_ref(f.req("module")?)?,
                        n_module: self.module_ref(f.req("summand")?)?,
                        n: usize_of(f.req("n")?)?,
                        m: usize_of(f.req("m")?)?,
                        r: usize_of(f.req("r")?)?,
                    },
                    "basis" => Law::Basis {
                        a: self.module_ref(f.req("module")?)?,
                        b: self.module_ref(f.req("other")?)?,
                        n_max: f.usize_or("n_max", 3)?,
                        r_max: f.usize_or("r_max", 2)?,
                    },
                    other => return Err(parse_error(law_node.pos, format!("unknown law '{other}'"))),
                };
                TaskKind::MatrixLaw(law)
            }
            other => return Err(parse_error(node.pos, format!("unknown task kind '{other}'"))),
        };
        f.finish()?;
        Ok(task)
    }
}
