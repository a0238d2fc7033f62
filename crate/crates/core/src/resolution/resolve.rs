use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::free::{GradedFreeModule, GradedMatrix};
use super::module::ModulePresentation;
use super::syzygy::{certifying_cap, syzygy_step, syzygy_step_with, Syzygies};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// How much of a differential is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// All minimal generators are present.
    Certified,
    /// Generators of degree at most `D` are present; higher ones may be missing.
    Through(i32),
}

impl Completeness {
    pub fn is_certified(&self) -> bool {
        matches!(self, Completeness::Certified)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ResolveOptions {
    pub n_max: usize,
    /// Degree cap; defaults to the certifying cap over artinian rings and to
    /// `n_max + max deg F_0 + 2` otherwise.
    pub cap: Option<i32>,
    /// Fail with `CapTooLow` instead of returning uncertified steps.
    pub require_certified: bool,
}

impl ResolveOptions {
    pub fn steps(n_max: usize) -> ResolveOptions {
        ResolveOptions { n_max, cap: None, require_certified: false }
    }
}

/// Prefix `F_0 <- F_1 <- ... <- F_N` of a minimal graded free resolution.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: ModulePresentation,
    diffs: Vec<GradedMatrix>,
    completeness: Vec<Completeness>,
}

impl Resolution {
    /// Assembles a resolution from known differentials `∂_1, ∂_2, ...`.
    pub fn from_parts(module: ModulePresentation, diffs: Vec<GradedMatrix>, completeness: Vec<Completeness>) -> Resolution {
        assert_eq!(diffs.len(), completeness.len());
        Resolution { module, diffs, completeness }
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    /// Number of differentials computed.
    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    /// `∂_n: F_n -> F_{n-1}`, for `1 <= n <= length`.
    pub fn differential(&self, n: usize) -> &GradedMatrix {
        &self.diffs[n - 1]
    }

    pub fn differentials(&self) -> &[GradedMatrix] {
        &self.diffs
    }

    pub fn free(&self, n: usize) -> &GradedFreeModule {
        if n == 0 {
            self.diffs[0].target()
        } else {
            self.diffs[n - 1].source()
        }
    }

    pub fn completeness(&self, n: usize) -> Completeness {
        self.completeness[n - 1]
    }

    pub fn is_certified(&self, n: usize) -> bool {
        n == 0 || self.completeness[n - 1].is_certified()
    }

    /// Whether the resolution is known to stop (some computed `F_n` is zero).
    pub fn terminated(&self) -> bool {
        self.diffs.last().is_some_and(|d| d.ncols() == 0 && self.completeness.last().is_some_and(|c| c.is_certified()))
    }

    pub fn betti(&self, n: usize) -> usize {
        if n <= self.length() {
            self.free(n).rank()
        } else {
            0
        }
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.length()).map(|n| self.betti(n)).collect()
    }

    /// Graded Betti numbers `β_{n,d}`.
    pub fn graded_betti(&self, n: usize) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        if n <= self.length() {
            for &d in self.free(n).degrees() {
                *out.entry(d).or_default() += 1;
            }
        }
        out
    }

    /// Rows are homological degrees, columns internal degrees.
    pub fn betti_table_text(&self) -> String {
        let rows: Vec<BTreeMap<i32, usize>> = (0..=self.length()).map(|n| self.graded_betti(n)).collect();
        let lo = rows.iter().filter_map(|r| r.keys().next().copied()).min().unwrap_or(0);
        let hi = rows.iter().filter_map(|r| r.keys().next_back().copied()).max().unwrap_or(0);
        let total_w = rows.iter().map(|r| r.values().sum::<usize>().to_string().len()).max().unwrap_or(1).max(5);
        let w = rows.iter().flat_map(|r| r.values()).map(|v| v.to_string().len()).max().unwrap_or(1).max(hi.to_string().len()).max(2);
        let nw = self.length().to_string().len().max(1);
        let mut s = String::new();
        let _ = write!(s, "{:>nw$} |", "n");
        for d in lo..=hi {
            let _ = write!(s, " {d:>w$}");
        }
        let _ = writeln!(s, " | {:>total_w$}", "total");
        for (n, r) in rows.iter().enumerate() {
            let _ = write!(s, "{n:>nw$} |");
            for d in lo..=hi {
                match r.get(&d) {
                    Some(c) => {
                        let _ = write!(s, " {c:>w$}");
                    }
                    None => {
                        let _ = write!(s, " {:>w$}", ".");
                    }
                }
            }
            let tag = if self.is_certified(n) {
                String::new()
            } else if let Completeness::Through(dc) = self.completeness[n - 1] {
                format!("  (through degree {dc})")
            } else {
                String::new()
            };
            let _ = writeln!(s, " | {:>total_w$}{tag}", r.values().sum::<usize>());
        }
        s
    }

    /// `Σ_i (-1)^i H_{F_i}(d)`, which equals `H_M(d)` whenever no `F_i` with `i > length`
    /// can reach degree `d`.
    pub fn euler_characteristic(&self, d: i32) -> i64 {
        (0..=self.length())
            .map(|n| {
                let h = self.free(n).hilbert_function(d) as i64;
                if n % 2 == 0 {
                    h
                } else {
                    -h
                }
            })
            .sum()
    }
}

fn default_cap(m: &ModulePresentation, n_max: usize) -> i32 {
    n_max as i32 + m.matrix().target().max_degree().unwrap_or(0) + 2
}

/// Iterates [`syzygy_step`]; stops early when some `F_n` vanishes.
pub fn minimal_resolution(m: &ModulePresentation, opts: ResolveOptions) -> Result<Resolution> {
    minimal_resolution_with(m, opts, |_, _| Ok(Vec::new())).map(|(r, _)| r)
}

/// Like [`minimal_resolution`], but `choose(n, ∂_n)` may supply preferred generators of
/// `ker ∂_n`; the syzygy outputs are returned alongside.
pub fn minimal_resolution_with<F>(m: &ModulePresentation, opts: ResolveOptions, mut choose: F) -> Result<(Resolution, Vec<Syzygies>)>
where
    F: FnMut(usize, &GradedMatrix) -> Result<Vec<super::free::FreeElem>>,
{
    if opts.n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let ring = m.ring().clone();
    let mut diffs = vec![m.matrix().clone()];
    let mut completeness = vec![Completeness::Certified];
    let mut steps = Vec::new();
    let global = opts.cap.unwrap_or_else(|| default_cap(m, opts.n_max));
    for n in 1..opts.n_max {
        let a = diffs.last().expect("nonempty");
        if a.ncols() == 0 {
            break;
        }
        let (cap, status) = match certifying_cap(a.source()) {
            Some(need) => match opts.cap {
                Some(c) if c < need => {
                    if opts.require_certified {
                        return Err(Error::CapTooLow { cap: c, needed: need });
                    }
                    (c, Completeness::Through(c))
                }
                _ => (need, Completeness::Certified),
            },
            None => (global, Completeness::Through(global)),
        };
        if ring.artinian_top().is_none() && opts.require_certified {
            return Err(Error::CapTooLow { cap, needed: i32::MAX });
        }
        let preferred = choose(n, a)?;
        let syz = if preferred.is_empty() {
            let b = syzygy_step(a, cap)?;
            Syzygies { complete_through: cap, preferred: 0, matrix: b }
        } else {
            syzygy_step_with(a, cap, &preferred)?
        };
        // an uncertified source makes everything after it uncertified too
        let status = match (completeness.last().copied(), status) {
            (Some(Completeness::Through(p)), Completeness::Certified) => Completeness::Through(p),
            (Some(Completeness::Through(p)), Completeness::Through(c)) => Completeness::Through(p.min(c)),
            (_, s) => s,
        };
        diffs.push(syz.matrix.clone());
        completeness.push(status);
        steps.push(syz);
    }
    Ok((Resolution { module: m.clone(), diffs, completeness }, steps))
}

/// One line of [`betti_growth_check`].
#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub n: usize,
    pub beta_n: usize,
    pub beta_next: usize,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    /// `2e - l + h - 1`.
    pub factor: i64,
    pub rows: Vec<GrowthRow>,
    /// Steps skipped because the resolution is not certified there.
    pub skipped: Vec<usize>,
}

impl GrowthReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Checks `β_{n+1} >= (2e - l + h - 1) β_n` for every certified `n >= μ(M)`.
pub fn betti_growth_check(res: &Resolution) -> Result<GrowthReport> {
    let ring = res.ring();
    let h = ring.artinian_top().ok_or(Error::NotArtinian)? as i64;
    let l = ring.length().expect("artinian") as i64;
    let e = ring.nvars() as i64;
    let factor = 2 * e - l + h - 1;
    let mu = res.module().mu();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for n in mu..res.length() {
        if !(res.is_certified(n) && res.is_certified(n + 1)) {
            skipped.push(n);
            continue;
        }
        let (b, b1) = (res.betti(n), res.betti(n + 1));
        rows.push(GrowthRow { n, beta_n: b, beta_next: b1, holds: b1 as i64 >= factor * b as i64 });
    }
    Ok(GrowthReport { factor, rows, skipped })
}

/// `Hom_R(M, R)` with degrees shifted by `shift` to stay non-negative: the degree-`d` part of
/// the result is the degree-`d - shift` part of the dual.
#[derive(Clone, Debug)]
pub struct DualPresentation {
    pub presentation: ModulePresentation,
    pub shift: i32,
}

/// `M* = ker(A^T)`, generated minimally and then presented by one further syzygy step.
pub fn dual_presentation(m: &ModulePresentation) -> Result<DualPresentation> {
    let ring = m.ring();
    if !ring.is_artinian() {
        return Err(Error::NotArtinian);
    }
    let a = m.matrix();
    let shift = a.source().max_degree().into_iter().chain(a.target().max_degree()).max().unwrap_or(0);
    let at = a.dual(shift);
    let b = syzygy_step(&at, certifying_cap(at.source()).expect("artinian"))?;
    let c = syzygy_step(&b, certifying_cap(b.source()).unwrap_or(0))?;
    let presentation = if b.ncols() == 0 {
        ModulePresentation::free(ring, vec![])
    } else {
        ModulePresentation::from_matrix(&c)
    };
    Ok(DualPresentation { presentation, shift })
}
