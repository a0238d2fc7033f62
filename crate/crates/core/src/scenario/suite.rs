//! Randomized checks of the minor calculus with shrinking and reproducer output.
//!
//! Every case is drawn from a generator seeded by `(seed, suite, case)`, checked both by the
//! engine and by brute-force determinant enumeration, and a failing case is shrunk greedily
//! before it is printed as a standalone scenario.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, Polynomial};
use crate::error::Result;
use crate::linalg::SparseVec;
use crate::minors::{check_minors_in_mr, check_summand_inclusion, check_tensor_submatrix_law, determinant_by_permutations, minors_ideal};
use crate::resolution::{minimal_resolution, GradedMatrix, ModulePresentation, ResolveOptions, Resolution};
use crate::ring::{ideal_compare, GradedIdeal, IdealRelation, Ring, RingPresentation};
use crate::stretched::build_stretched;

pub const SUITES: [&str; 5] = ["minors_in_power", "tensor_submatrix", "summand_inclusion", "basis_independence", "laplace"];

/// Shrinking stops after this many accepted steps.
const SHRINK_LIMIT: usize = 200;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    /// Largest number of rows or columns.
    pub size: usize,
    /// Largest entry degree.
    pub degree: u32,
    /// Plant a unit entry in every `minors_in_power` case.
    pub inject_unit: bool,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub case: usize,
    pub detail: String,
    pub shrink_steps: usize,
    pub reproducer: String,
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failure: Option<Counterexample>,
}

fn pool() -> Vec<Ring> {
    let f = Field::DEFAULT;
    let mut out = vec![
        RingPresentation::parse(f, &["x", "y", "z"], &["x*z", "y*z", "x^3", "y^3", "z^2"]).expect("pool ring"),
        RingPresentation::parse(f, &["x", "y"], &["x*y", "x^3", "y^3"]).expect("pool ring"),
        RingPresentation::parse(f, &["x"], &["x^3"]).expect("pool ring"),
        RingPresentation::parse(f, &["x", "y"], &["x^2", "y^2"]).expect("pool ring"),
    ];
    out.push(build_stretched(3, 2, &[1, 1], f).expect("pool ring").ring);
    out
}

fn mix(seed: u64, suite: usize, case: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((suite as u64) << 40) ^ case as u64
}

/// Random element of `R_d` with at most three terms; zero when `R_d = 0`.
fn random_elem(ring: &Ring, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let dim = ring.hilbert_function(d);
    if dim == 0 {
        return Polynomial::zero(ring.field(), ring.nvars());
    }
    let pf = ring.fp().expect("prime field");
    let terms = rng.random_range(1..=3usize.min(dim));
    let entries = (0..terms).map(|_| (rng.random_range(0..dim) as u32, rng.random_range(1..pf.modulus()))).collect();
    ring.poly_of(d, &SparseVec::from_unsorted(pf, entries))
}

fn drop_term(f: &Polynomial, k: usize) -> Polynomial {
    let terms = f.terms().enumerate().filter(|(i, _)| *i != k).map(|(_, (m, c))| (c.clone(), m.clone()));
    Polynomial::from_terms(f.field(), f.nvars(), terms)
}

/// All one-step simplifications of a polynomial: zero it, or drop one term.
fn poly_shrinks(f: &Polynomial) -> Vec<Polynomial> {
    if f.is_zero() {
        return vec![];
    }
    let mut out = vec![Polynomial::zero(f.field(), f.nvars())];
    if f.len() > 1 {
        out.extend((0..f.len()).map(|k| drop_term(f, k)));
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Every `r x r` minor by the permutation sum, with its row and column sets.
fn brute_minors(ring: &Ring, rows: &[Vec<Polynomial>], r: usize) -> Vec<(Vec<usize>, Vec<usize>, Polynomial)> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for rs in combinations(rows.len(), r) {
        for cs in combinations(ncols, r) {
            let sub: Vec<Vec<Polynomial>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
            out.push((rs.clone(), cs, determinant_by_permutations(ring, &sub)));
        }
    }
    out
}

fn brute_ideal(ring: &Ring, rows: &[Vec<Polynomial>], r: usize) -> Result<GradedIdeal> {
    if r == 0 {
        return Ok(GradedIdeal::unit(ring.clone()));
    }
    let gens: Vec<Polynomial> = brute_minors(ring, rows, r).into_iter().map(|(_, _, p)| p).filter(|p| !p.is_zero()).collect();
    GradedIdeal::new(ring.clone(), &gens)
}

fn same_ideal(a: &GradedIdeal, b: &GradedIdeal) -> Result<bool> {
    let top = a.max_generator_degree().max(b.max_generator_degree()).unwrap_or(0);
    Ok(ideal_compare(a, b, top)?.relation == IdealRelation::Equal)
}

fn ring_block(ring: &Ring) -> String {
    let rels: Vec<String> = ring.relations().iter().map(|g| g.to_string_with(ring.names())).collect();
    format!("plain {{ char = {}, vars = [{}], relations = [{}] }}", ring.field().characteristic(), ring.names().join(", "), rels.join(", "))
}

/// A homogeneous matrix kept as polynomial rows so that it can be shrunk entry by entry.
#[derive(Clone, Debug)]
struct Mat {
    ring: Ring,
    tdeg: Vec<i32>,
    sdeg: Vec<i32>,
    rows: Vec<Vec<Polynomial>>,
}

impl Mat {
    fn build(&self) -> Result<GradedMatrix> {
        GradedMatrix::from_polys(&self.ring, self.tdeg.clone(), self.sdeg.clone(), &self.rows)
    }

    fn random(ring: &Ring, nrows: usize, ncols: usize, degree: u32, rng: &mut ChaCha8Rng) -> Mat {
        let tdeg: Vec<i32> = (0..nrows).map(|_| rng.random_range(0..=1)).collect();
        let lo = *tdeg.iter().min().unwrap_or(&0);
        let sdeg: Vec<i32> = (0..ncols).map(|_| lo + rng.random_range(1..=degree.max(1) as i32)).collect();
        let rows = tdeg
            .iter()
            .map(|&t| {
                sdeg.iter()
                    .map(|&s| {
                        let d = s - t;
                        if d < 1 || rng.random_range(0..4) == 0 {
                            Polynomial::zero(ring.field(), ring.nvars())
                        } else {
                            random_elem(ring, d as u32, rng)
                        }
                    })
                    .collect()
            })
            .collect();
        Mat { ring: ring.clone(), tdeg, sdeg, rows }
    }

    /// Makes entry `(i, j)` the constant 1 and clears the rest of column `j`.
    fn plant_unit(&mut self, i: usize, j: usize) {
        self.sdeg[j] = self.tdeg[i];
        for (k, row) in self.rows.iter_mut().enumerate() {
            row[j] = if k == i {
                Polynomial::one(self.ring.field(), self.ring.nvars())
            } else {
                Polynomial::zero(self.ring.field(), self.ring.nvars())
            };
        }
    }

    fn without_row(&self, i: usize) -> Mat {
        let mut m = self.clone();
        m.rows.remove(i);
        m.tdeg.remove(i);
        m
    }

    fn without_col(&self, j: usize) -> Mat {
        let mut m = self.clone();
        for row in &mut m.rows {
            row.remove(j);
        }
        m.sdeg.remove(j);
        m
    }

    /// Entry-level simplifications only.
    fn entry_shrinks(&self) -> Vec<Mat> {
        let mut out = Vec::new();
        for i in 0..self.rows.len() {
            for j in 0..self.sdeg.len() {
                for p in poly_shrinks(&self.rows[i][j]) {
                    let mut m = self.clone();
                    m.rows[i][j] = p;
                    out.push(m);
                }
            }
        }
        out
    }

    fn shrinks(&self, min_rows: usize, min_cols: usize) -> Vec<Mat> {
        let mut out = Vec::new();
        if self.rows.len() > min_rows {
            out.extend((0..self.rows.len()).map(|i| self.without_row(i)));
        }
        if self.sdeg.len() > min_cols {
            out.extend((0..self.sdeg.len()).map(|j| self.without_col(j)));
        }
        out.extend(self.entry_shrinks());
        out
    }

    fn decl(&self, keyword: &str, name: &str, ring_name: &str) -> String {
        let show = |v: &[i32]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|f| self.ring.show(f)).collect::<Vec<_>>().join(", ")))
            .collect();
        let body = format!("ring = {ring_name}, degrees = [{}], source = [{}], rows = [{}]", show(&self.tdeg), show(&self.sdeg), rows.join(", "));
        match keyword {
            "matrix" => format!("matrix {name} = {{ {body} }}"),
            _ => format!("module {name} = presentation {{ {body} }}"),
        }
    }
}

trait Case: Clone {
    /// `Some(detail)` when the law fails on this case.
    fn failure(&self) -> Option<String>;
    fn shrinks(&self) -> Vec<Self>;
    fn reproducer(&self) -> String;
}

fn errors_as_failure(r: Result<Option<String>>) -> Option<String> {
    r.unwrap_or_else(|e| Some(format!("engine error: {e}")))
}

#[derive(Clone, Debug)]
struct PowerCase {
    a: Mat,
}

impl Case for PowerCase {
    fn failure(&self) -> Option<String> {
        errors_as_failure((|| {
            let a = self.a.build()?;
            for r in 1..=a.nrows().min(a.ncols()) {
                let engine = check_minors_in_mr(&a, r);
                let bad = brute_minors(&self.a.ring, &self.a.rows, r).into_iter().find(|(_, _, p)| p.min_degree().is_some_and(|d| (d as usize) < r));
                match (engine, bad) {
                    (true, None) => {}
                    (_, Some((rs, cs, p))) => {
                        return Ok(Some(format!("minor on rows {rs:?}, columns {cs:?} is {} and lies outside m^{r}", self.a.ring.show(&p))));
                    }
                    (false, None) => return Ok(Some(format!("engine reports a minor outside m^{r} that enumeration does not find"))),
                }
            }
            Ok(None)
        })())
    }

    fn shrinks(&self) -> Vec<Self> {
        self.a.shrinks(1, 1).into_iter().map(|a| PowerCase { a }).collect()
    }

    fn reproducer(&self) -> String {
        let r = self.a.rows.len().min(self.a.sdeg.len());
        format!(
            "ring R = {}\n{}\ntask law = matrix_law {{ law = minors_in_power, a = A, r = {r} }}\n",
            ring_block(&self.a.ring),
            self.a.decl("matrix", "A", "R")
        )
    }
}

#[derive(Clone, Debug)]
struct TensorCase {
    a: Mat,
    l: usize,
    b: Mat,
    rows: Vec<usize>,
    cols: Vec<usize>,
    composition: Vec<usize>,
}

impl TensorCase {
    /// Rewrites the `A ⊗ Id_l` block of `B` from `A`.
    fn sync(&mut self) {
        let (ar, ac, l) = (self.a.rows.len(), self.a.sdeg.len(), self.l);
        for i in 0..ar {
            for p in 0..l {
                for j in 0..ac {
                    for q in 0..l {
                        let v = if p == q { self.a.rows[i][j].clone() } else { Polynomial::zero(self.a.ring.field(), self.a.ring.nvars()) };
                        self.b.rows[self.rows[i * l + p]][self.cols[j * l + q]] = v;
                    }
                }
            }
        }
    }

    fn random(ring: &Ring, cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> TensorCase {
        let size = cfg.size.max(1);
        let l = rng.random_range(1..=2usize.min(size));
        let ar = rng.random_range(1..=(size / l).max(1));
        let ac = rng.random_range(1..=(size / l).max(1));
        let a = Mat::random(ring, ar, ac, cfg.degree, rng);
        let br = rng.random_range(ar * l..=size.max(ar * l));
        let bc = rng.random_range(ac * l..=size.max(ac * l));
        let mut rows: Vec<usize> = (0..br).collect();
        rows.shuffle(rng);
        rows.truncate(ar * l);
        rows.sort_unstable();
        let mut cols: Vec<usize> = (0..bc).collect();
        cols.shuffle(rng);
        cols.truncate(ac * l);
        cols.sort_unstable();
        let mut b = Mat::random(ring, br, bc, cfg.degree, rng);
        for i in 0..ar {
            for p in 0..l {
                b.tdeg[rows[i * l + p]] = a.tdeg[i];
            }
        }
        for j in 0..ac {
            for q in 0..l {
                b.sdeg[cols[j * l + q]] = a.sdeg[j];
            }
        }
        // re-draw the border against the final degrees
        for (i, &t) in b.tdeg.clone().iter().enumerate() {
            for (j, &s) in b.sdeg.clone().iter().enumerate() {
                let d = s - t;
                b.rows[i][j] = if d < 1 || d > cfg.degree as i32 || rng.random_range(0..4) == 0 {
                    Polynomial::zero(ring.field(), ring.nvars())
                } else {
                    random_elem(ring, d as u32, rng)
                };
            }
        }
        let top = ar.min(ac);
        let composition = (0..l).map(|_| rng.random_range(0..=top)).collect();
        let mut case = TensorCase { a, l, b, rows, cols, composition };
        case.sync();
        case
    }
}

impl Case for TensorCase {
    fn failure(&self) -> Option<String> {
        errors_as_failure((|| {
            let a = self.a.build()?;
            let b = self.b.build()?;
            let engine = check_tensor_submatrix_law(&a, self.l, &b, &self.rows, &self.cols, &self.composition)?;
            let r: usize = self.composition.iter().sum();
            let mut lhs = GradedIdeal::unit(self.a.ring.clone());
            for &ri in &self.composition {
                lhs = lhs.product(&brute_ideal(&self.a.ring, &self.a.rows, ri)?);
            }
            let rhs = brute_ideal(&self.b.ring, &self.b.rows, r)?;
            let oracle = lhs.is_subset_of(&rhs);
            Ok(match (engine, oracle) {
                (true, true) => None,
                (_, false) => Some(format!(
                    "{} lies in the product of minor ideals but not in I_{r}(B)",
                    lhs.outside(&rhs).map(|p| self.a.ring.show(&p)).unwrap_or_default()
                )),
                (false, true) => Some("engine rejects a containment that enumeration confirms".into()),
            })
        })())
    }

    fn shrinks(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for a in self.a.entry_shrinks() {
            let mut c = self.clone();
            c.a = a;
            c.sync();
            out.push(c);
        }
        let inside = |i: usize, j: usize| self.rows.contains(&i) && self.cols.contains(&j);
        for i in 0..self.b.rows.len() {
            for j in 0..self.b.sdeg.len() {
                if inside(i, j) {
                    continue;
                }
                for p in poly_shrinks(&self.b.rows[i][j]) {
                    let mut c = self.clone();
                    c.b.rows[i][j] = p;
                    out.push(c);
                }
            }
        }
        for k in 0..self.l {
            if self.composition[k] > 0 {
                let mut c = self.clone();
                c.composition[k] -= 1;
                out.push(c);
            }
        }
        out
    }

    fn reproducer(&self) -> String {
        let list = |v: &[usize]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
        format!(
            "ring R = {}\n{}\n{}\ntask law = matrix_law {{ law = tensor, a = A, l = {}, b = B, rows = [{}], cols = [{}], composition = [{}] }}\n",
            ring_block(&self.a.ring),
            self.a.decl("matrix", "A", "R"),
            self.b.decl("matrix", "B", "R"),
            self.l,
            list(&self.rows),
            list(&self.cols),
            list(&self.composition)
        )
    }
}

#[derive(Clone, Debug)]
enum SummandShape {
    /// `M = N ⊕ R/(other)`, `N = R/(gens)`, offset 0.
    Sum(Vec<Polynomial>),
    /// `M = R/(gens)`, `N = Ω_1(M)`, offset 1.
    Syzygy,
}

#[derive(Clone, Debug)]
struct SummandCase {
    ring: Ring,
    gens: Vec<Polynomial>,
    shape: SummandShape,
    m: usize,
    r: usize,
}

impl SummandCase {
    fn modules(&self) -> Result<(ModulePresentation, ModulePresentation, usize)> {
        let base = ModulePresentation::quotient(&self.ring, &self.gens)?;
        Ok(match &self.shape {
            SummandShape::Sum(other) => (base.direct_sum(&ModulePresentation::quotient(&self.ring, other)?), base, 0),
            SummandShape::Syzygy => {
                let res = minimal_resolution(&base, ResolveOptions::steps(2))?;
                let n = if res.length() >= 2 { ModulePresentation::from_matrix(res.differential(2)) } else { ModulePresentation::free(&self.ring, vec![]) };
                (base, n, 1)
            }
        })
    }
}

fn differential_rows(res: &Resolution, n: usize) -> Vec<Vec<Polynomial>> {
    res.differential(n).rows()
}

impl Case for SummandCase {
    fn failure(&self) -> Option<String> {
        errors_as_failure((|| {
            let (mm, nn, off) = self.modules()?;
            let res_m = minimal_resolution(&mm, ResolveOptions::steps(off + self.m))?;
            let res_n = minimal_resolution(&nn, ResolveOptions::steps(self.m))?;
            if res_n.length() < self.m || res_m.length() < off + self.m {
                return Ok(None);
            }
            let engine = check_summand_inclusion(&res_m, &res_n, off, self.m, self.r)?;
            let small = brute_ideal(&self.ring, &differential_rows(&res_n, self.m), self.r)?;
            let big = brute_ideal(&self.ring, &differential_rows(&res_m, off + self.m), self.r)?;
            Ok(match (engine, small.is_subset_of(&big)) {
                (true, true) => None,
                (_, false) => Some(format!(
                    "{} lies in I_(m={}, r={})(N) but not in I_(n={}, r={})(M)",
                    small.outside(&big).map(|p| self.ring.show(&p)).unwrap_or_default(),
                    self.m,
                    self.r,
                    off + self.m,
                    self.r
                )),
                (false, true) => Some("engine rejects a containment that enumeration confirms".into()),
            })
        })())
    }

    fn shrinks(&self) -> Vec<Self> {
        let mut out = Vec::new();
        let with_gens = |gens: Vec<Polynomial>| SummandCase { gens, ..self.clone() };
        if self.gens.len() > 1 {
            out.extend((0..self.gens.len()).map(|k| with_gens([&self.gens[..k], &self.gens[k + 1..]].concat())));
        }
        for k in 0..self.gens.len() {
            for p in poly_shrinks(&self.gens[k]).into_iter().filter(|p| !p.is_zero()) {
                let mut g = self.gens.clone();
                g[k] = p;
                out.push(with_gens(g));
            }
        }
        if self.m > 1 {
            out.push(SummandCase { m: self.m - 1, ..self.clone() });
        }
        if self.r > 1 {
            out.push(SummandCase { r: self.r - 1, ..self.clone() });
        }
        out
    }

    fn reproducer(&self) -> String {
        let gens = |g: &[Polynomial]| g.iter().map(|f| self.ring.show(f)).collect::<Vec<_>>().join(", ");
        let mut s = format!("ring R = {}\n", ring_block(&self.ring));
        let n = match &self.shape {
            SummandShape::Sum(other) => {
                let _ = writeln!(s, "module N = quotient {{ ring = R, gens = [{}] }}", gens(&self.gens));
                let _ = writeln!(s, "module P = quotient {{ ring = R, gens = [{}] }}", gens(other));
                let _ = writeln!(s, "module M = sum {{ of = [N, P] }}");
                0
            }
            SummandShape::Syzygy => {
                let _ = writeln!(s, "module M = quotient {{ ring = R, gens = [{}] }}", gens(&self.gens));
                let _ = writeln!(s, "module N = syzygy {{ of = M, n = 1 }}");
                1
            }
        };
        let _ = writeln!(s, "task law = matrix_law {{ law = summand, module = M, summand = N, n = {n}, m = {}, r = {} }}", self.m, self.r);
        s
    }
}

/// A graded isomorphism applied to a presentation: unit upper-triangular changes of basis
/// on both free modules, then row and column permutations.
pub fn random_equivalent(m: &ModulePresentation, seed: u64) -> Result<ModulePresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = m.matrix();
    let ring = a.ring();
    let unit_change = |degs: &[i32], rng: &mut ChaCha8Rng| -> Result<GradedMatrix> {
        let n = degs.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| degs[i]);
        let mut rows = vec![vec![Polynomial::zero(ring.field(), ring.nvars()); n]; n];
        for (p, &i) in order.iter().enumerate() {
            rows[i][i] = Polynomial::one(ring.field(), ring.nvars());
            for &j in &order[p + 1..] {
                let d = degs[j] - degs[i];
                if d >= 0 && rng.random_range(0..2) == 0 {
                    rows[i][j] = random_elem(ring, d as u32, rng);
                }
            }
        }
        GradedMatrix::from_polys(ring, degs.to_vec(), degs.to_vec(), &rows)
    };
    let u = unit_change(a.target().degrees(), &mut rng)?;
    let v = unit_change(a.source().degrees(), &mut rng)?;
    let b = u.compose(a)?.compose(&v)?;
    let mut rp: Vec<usize> = (0..b.nrows()).collect();
    rp.shuffle(&mut rng);
    let mut cp: Vec<usize> = (0..b.ncols()).collect();
    cp.shuffle(&mut rng);
    let rows = b.rows();
    let permuted: Vec<Vec<Polynomial>> = rp.iter().map(|&i| cp.iter().map(|&j| rows[i][j].clone()).collect()).collect();
    let tdeg = rp.iter().map(|&i| b.target().degrees()[i]).collect();
    let sdeg = cp.iter().map(|&j| b.source().degrees()[j]).collect();
    Ok(ModulePresentation::from_matrix(&GradedMatrix::from_polys(ring, tdeg, sdeg, &permuted)?))
}

/// Differences between the resolutions of two presentations of one module.
pub fn basis_differences(a: &ModulePresentation, b: &ModulePresentation, n_max: usize, r_max: usize) -> Result<Option<String>> {
    let ra = minimal_resolution(a, ResolveOptions::steps(n_max))?;
    let rb = minimal_resolution(b, ResolveOptions::steps(n_max))?;
    if ra.betti_numbers() != rb.betti_numbers() {
        return Ok(Some(format!("Betti numbers {:?} and {:?} differ", ra.betti_numbers(), rb.betti_numbers())));
    }
    for n in 1..=ra.length() {
        for r in 1..=r_max {
            let ia = minors_ideal(ra.differential(n), r);
            let ib = minors_ideal(rb.differential(n), r);
            if !same_ideal(&ia, &ib)? {
                return Ok(Some(format!("I(n={n}, r={r}) differs between the presentations")));
            }
            let oracle = brute_ideal(a.ring(), &ra.differential(n).rows(), r)?;
            if !same_ideal(&ia, &oracle)? {
                return Ok(Some(format!("I(n={n}, r={r}) disagrees with enumeration")));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
struct BasisCase {
    a: Mat,
    change_seed: u64,
}

impl Case for BasisCase {
    fn failure(&self) -> Option<String> {
        errors_as_failure((|| {
            let m = ModulePresentation::from_matrix(&self.a.build()?);
            let other = random_equivalent(&m, self.change_seed)?;
            basis_differences(&m, &other, 3, 2)
        })())
    }

    fn shrinks(&self) -> Vec<Self> {
        self.a.shrinks(1, 1).into_iter().map(|a| BasisCase { a, ..self.clone() }).collect()
    }

    fn reproducer(&self) -> String {
        let mut s = format!("ring R = {}\n{}\n", ring_block(&self.a.ring), self.a.decl("module", "M", "R"));
        if let Some(other) = self.a.build().ok().and_then(|a| random_equivalent(&ModulePresentation::from_matrix(&a), self.change_seed).ok()) {
            let b = other.matrix();
            let o = Mat { ring: self.a.ring.clone(), tdeg: b.target().degrees().to_vec(), sdeg: b.source().degrees().to_vec(), rows: b.rows() };
            let _ = writeln!(s, "{}", o.decl("module", "Mb", "R"));
        }
        let _ = writeln!(s, "task law = matrix_law {{ law = basis, module = M, other = Mb, n_max = 3, r_max = 2 }}");
        s
    }
}

#[derive(Clone, Debug)]
struct LaplaceCase {
    a: Mat,
}

/// Laplace expansion inside [`minors_ideal`] against the permutation sum.
pub fn determinant_agrees(a: &GradedMatrix) -> Result<bool> {
    let k = a.nrows();
    if k != a.ncols() {
        return Ok(true);
    }
    let ring = a.ring();
    let det = determinant_by_permutations(ring, &a.rows());
    let engine = minors_ideal(a, k);
    let oracle = GradedIdeal::new(ring.clone(), &[det])?;
    same_ideal(&engine, &oracle)
}

impl Case for LaplaceCase {
    fn failure(&self) -> Option<String> {
        errors_as_failure((|| {
            let a = self.a.build()?;
            Ok((!determinant_agrees(&a)?).then(|| format!("{}x{} determinant differs between expansion and permutation sum", a.nrows(), a.ncols())))
        })())
    }

    fn shrinks(&self) -> Vec<Self> {
        let mut out: Vec<Self> = self.a.entry_shrinks().into_iter().map(|a| LaplaceCase { a }).collect();
        let k = self.a.rows.len();
        if k > 1 {
            for i in 0..k {
                for j in 0..k {
                    out.push(LaplaceCase { a: self.a.without_row(i).without_col(j) });
                }
            }
        }
        out
    }

    fn reproducer(&self) -> String {
        format!("ring R = {}\n{}\ntask law = matrix_law {{ law = determinant, a = A }}\n", ring_block(&self.a.ring), self.a.decl("matrix", "A", "R"))
    }
}

fn shrink<C: Case>(mut case: C, mut detail: String) -> (C, String, usize) {
    let mut steps = 0;
    'outer: while steps < SHRINK_LIMIT {
        for cand in case.shrinks() {
            if let Some(d) = cand.failure() {
                case = cand;
                detail = d;
                steps += 1;
                continue 'outer;
            }
        }
        break;
    }
    (case, detail, steps)
}

fn drive<C: Case>(name: &str, cfg: &SuiteConfig, mut gen: impl FnMut(&mut ChaCha8Rng) -> C) -> SuiteResult {
    let idx = SUITES.iter().position(|s| *s == name).unwrap_or(SUITES.len());
    for case in 0..cfg.cases {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, idx, case));
        let c = gen(&mut rng);
        if let Some(detail) = c.failure() {
            let (small, detail, steps) = shrink(c, detail);
            let reproducer = format!("# found by {name} with seed {}, case {case}\n{}", cfg.seed, small.reproducer());
            return SuiteResult { name: name.to_string(), cases: case + 1, failure: Some(Counterexample { case, detail, shrink_steps: steps, reproducer }) };
        }
    }
    SuiteResult { name: name.to_string(), cases: cfg.cases, failure: None }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<SuiteResult> {
    let rings = pool();
    let size = cfg.size.max(1);
    let pick = |rng: &mut ChaCha8Rng| rings[rng.random_range(0..rings.len())].clone();
    Some(match name {
        "minors_in_power" => drive(name, cfg, |rng| {
            let ring = pick(rng);
            let (a, b) = (rng.random_range(1..=size), rng.random_range(1..=size));
            let mut m = Mat::random(&ring, a, b, cfg.degree, rng);
            if cfg.inject_unit {
                let (i, j) = (rng.random_range(0..a), rng.random_range(0..b));
                m.plant_unit(i, j);
            }
            PowerCase { a: m }
        }),
        "tensor_submatrix" => drive(name, cfg, |rng| {
            let ring = pick(rng);
            TensorCase::random(&ring, cfg, rng)
        }),
        "summand_inclusion" => drive(name, cfg, |rng| {
            let ring = pick(rng);
            let gens = |rng: &mut ChaCha8Rng| {
                let k = rng.random_range(1..=2);
                let mut g: Vec<Polynomial> = (0..k).map(|_| random_elem(&ring, rng.random_range(1..=cfg.degree.max(1)), rng)).filter(|p| !p.is_zero()).collect();
                if g.is_empty() {
                    g.push(ring.var(0));
                }
                g
            };
            let first = gens(rng);
            let shape = if rng.random_range(0..2) == 0 { SummandShape::Sum(gens(rng)) } else { SummandShape::Syzygy };
            SummandCase { ring: ring.clone(), gens: first, shape, m: rng.random_range(1..=3), r: rng.random_range(1..=2) }
        }),
        "basis_independence" => drive(name, cfg, |rng| {
            let ring = pick(rng);
            let (a, b) = (rng.random_range(1..=size.min(3)), rng.random_range(1..=size.min(3)));
            BasisCase { a: Mat::random(&ring, a, b, cfg.degree, rng), change_seed: rng.random_range(0..u64::MAX) }
        }),
        "laplace" => drive(name, cfg, |rng| {
            let ring = pick(rng);
            let k = rng.random_range(1..=size.min(4));
            let mut m = Mat::random(&ring, k, k, cfg.degree, rng);
            m.tdeg = vec![0; k];
            m.sdeg = (0..k).map(|_| rng.random_range(1..=cfg.degree.max(1) as i32)).collect();
            m.rows = (0..k).map(|_| m.sdeg.iter().map(|&s| random_elem(&ring, s as u32, rng)).collect()).collect();
            LaplaceCase { a: m }
        }),
        _ => return None,
    })
}
