//! Deformations `R' = R/(w)` by a linear nonzerodivisor `w`: the converse Eisenbud-Shamash
//! resolution `G(F')` over `R` and the lifting of minor periodicity from `R'` to `R`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arith::Polynomial;
use crate::error::{Error, Result};
use crate::fiber::{summarize, OnsetSummary};
use crate::linalg::{rank_of, solve, SparseVec};
use crate::minors::{minors_of_resolution, MinorRelation, MinorVerdict};
use crate::resolution::{
    minimal_resolution, verify_exactness, Completeness, ExactnessReport, FreeElem, GradedFreeModule, GradedMatrix,
    ModulePresentation, ResolveOptions, Resolution,
};
use crate::ring::{ideal_compare, IdealRelation, Ring, RingPresentation};

/// `R` together with a variable `w` and `R' = R/(w)`.
#[derive(Clone, Debug)]
pub struct DeformationPair {
    pub base: Ring,
    pub total: Ring,
    /// Index of `w` among the variables of `R`.
    pub x: usize,
    /// Variable `i` of `R'` is variable `map[i]` of `R`.
    pub map: Vec<usize>,
    /// Whether `R` was built as `R'[w]`, in which case every `σ` vanishes.
    pub adjoined: bool,
}

/// Degrees through which `w` is checked to be a nonzerodivisor on `R`.
pub const REGULARITY_DEGREES: u32 = 8;

fn check_regular(total: &Ring, x: usize, through: u32) -> Result<()> {
    let pf = total.fp()?;
    for d in 0..=through {
        let dim = total.hilbert_function(d);
        let next = total.hilbert_function(d + 1);
        let imgs = (0..dim as u32).map(|t| total.mul_var(d, &SparseVec::unit(t), x));
        if rank_of(pf, next, imgs) != dim {
            return Err(Error::HypothesisViolated(format!("{} is a zero divisor in degree {d}", total.names()[x])));
        }
    }
    Ok(())
}

/// `R = R'[w]` with the relations of `R'`.
pub fn adjoin_variable(base: &Ring, name: &str) -> Result<DeformationPair> {
    if base.names().iter().any(|n| n == name) {
        return Err(Error::NameClash(name.to_string()));
    }
    let nv = base.nvars() + 1;
    let map: Vec<usize> = (0..base.nvars()).collect();
    let mut names = base.names().to_vec();
    names.push(name.to_string());
    let rels = base.relations().iter().map(|g| g.remap(nv, &map)).collect();
    let total = RingPresentation::new(base.field(), names, rels)?;
    check_regular(&total, nv - 1, REGULARITY_DEGREES)?;
    Ok(DeformationPair { base: base.clone(), total, x: nv - 1, map, adjoined: true })
}

/// `R' = R/(w)` for a variable `w` of a given ring `R`.
pub fn quotient_by_variable(total: &Ring, name: &str) -> Result<DeformationPair> {
    let x = total.names().iter().position(|n| n == name).ok_or_else(|| Error::UnknownReference(name.to_string()))?;
    check_regular(total, x, REGULARITY_DEGREES)?;
    let names: Vec<String> = total.names().iter().enumerate().filter(|(i, _)| *i != x).map(|(_, n)| n.clone()).collect();
    let rels: Vec<Polynomial> = total.relations().iter().map(|g| g.drop_var(x)).filter(|g| !g.is_zero()).collect();
    let base = RingPresentation::new(total.field(), names, rels)?;
    let map = (0..total.nvars()).filter(|&i| i != x).collect();
    Ok(DeformationPair { base, total: total.clone(), x, map, adjoined: false })
}

impl DeformationPair {
    /// The matrix with the same entries read over `R`.
    pub fn lift_matrix(&self, a: &GradedMatrix) -> Result<GradedMatrix> {
        if !Arc::ptr_eq(a.ring(), &self.base) {
            return Err(Error::RingMismatch("matrix is not over R'".into()));
        }
        let nv = self.total.nvars();
        let rows: Vec<Vec<Polynomial>> =
            a.rows().iter().map(|row| row.iter().map(|f| f.remap(nv, &self.map)).collect()).collect();
        GradedMatrix::from_polys(&self.total, a.target().degrees().to_vec(), a.source().degrees().to_vec(), &rows)
    }

    /// Exact division by `w` of a degree-`d` element.
    fn divide(&self, cache: &mut HashMap<u32, Vec<SparseVec>>, d: u32, c: &SparseVec) -> Option<SparseVec> {
        if d == 0 {
            return None;
        }
        let r = &self.total;
        let cols = cache.entry(d).or_insert_with(|| {
            (0..r.hilbert_function(d - 1) as u32).map(|t| r.mul_var(d - 1, &SparseVec::unit(t), self.x)).collect()
        });
        solve(r.fp().ok()?, r.hilbert_function(d), cols, c)
    }
}

/// Lifted differentials `∂̃_n` and `σ_n` with `∂̃_{n-1} ∂̃_n = -w σ_n` for `n >= 2`.
#[derive(Clone, Debug)]
pub struct Lift {
    pub diffs: Vec<GradedMatrix>,
    /// `sigma[n - 2] = σ_n: F_n -> F_{n-2}(-1)`.
    pub sigma: Vec<GradedMatrix>,
}

impl Lift {
    /// Steps `n` with `σ_n != 0`.
    pub fn nonzero_sigma(&self) -> Vec<usize> {
        self.sigma.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(k, _)| k + 2).collect()
    }

    /// `∂̃ σ = σ ∂̃` wherever both sides are defined.
    pub fn sigma_commutes(&self) -> bool {
        (3..=self.diffs.len()).all(|n| {
            // ∂̃_{n-2} σ_n  vs  σ_{n-1} ∂̃_n
            let left = self.diffs[n - 3].shifted(1).compose(&self.sigma[n - 2]);
            let right = self.sigma[n - 3].compose(&self.diffs[n - 1]);
            match (left, right) {
                (Ok(l), Ok(r)) => l.rows() == r.rows(),
                _ => false,
            }
        })
    }
}

pub fn lift_and_divide(f: &Resolution, pair: &DeformationPair) -> Result<Lift> {
    let diffs: Vec<GradedMatrix> = f.differentials().iter().map(|a| pair.lift_matrix(a)).collect::<Result<_>>()?;
    let pf = pair.total.fp()?;
    let mut cache = HashMap::new();
    let mut sigma = Vec::new();
    for n in 2..=diffs.len() {
        let comp = diffs[n - 2].compose(&diffs[n - 1])?;
        let target = diffs[n - 2].target().shifted(1);
        let mut cols = Vec::new();
        for (j, col) in comp.columns().iter().enumerate() {
            let mut entries = Vec::new();
            for (i, c) in &col.entries {
                let d = comp.entry_degree(*i as usize, j) as u32;
                let q = pair.divide(&mut cache, d, c).ok_or_else(|| {
                    Error::LiftBroken(format!("entry ({i}, {j}) of ∂̃_{}∂̃_{n} is not a multiple of w", n - 1))
                })?;
                entries.push((*i, q.scale(pf, pf.neg(1))));
            }
            cols.push(FreeElem { degree: col.degree, entries });
        }
        sigma.push(GradedMatrix::from_columns(target, cols));
    }
    Ok(Lift { diffs, sigma })
}

/// `±w * Id` from `F(-1)` to `F`.
fn x_identity(pair: &DeformationPair, f: &GradedFreeModule, sign: bool) -> GradedMatrix {
    let pf = pair.total.fp().expect("prime field");
    let (_, w) = pair.total.elem_of(&pair.total.var(pair.x)).expect("variable").expect("linear");
    let w = if sign { w } else { w.scale(pf, pf.neg(1)) };
    let cols = f.degrees().iter().enumerate().map(|(j, &d)| FreeElem { degree: d + 1, entries: vec![(j as u32, w.clone())] }).collect();
    GradedMatrix::from_columns(f.clone(), cols)
}

/// `G(F')` through `G_{len}`, where `len` is the length of `F'`.
#[derive(Clone, Debug)]
pub struct ShamashConverse {
    pub lift: Lift,
    pub resolution: Resolution,
    pub exactness: ExactnessReport,
    pub minimal: bool,
    pub ranks_ok: bool,
    pub sigma_commutes: bool,
}

impl ShamashConverse {
    pub fn holds(&self) -> bool {
        self.exactness.is_exact() && self.minimal && self.ranks_ok
    }
}

/// Blocks `∂^G_1 = [w, ∂_1]` and `∂^G_n = [∂_{n-1}, (-1)^n σ_n; (-1)^{n-1} w, ∂_n]` on
/// `G_n = F_{n-1}(-1) ⊕ F_n`.
pub fn shamash_converse(f: &Resolution, pair: &DeformationPair, cap: Option<i32>) -> Result<ShamashConverse> {
    let w = pair.total.var(pair.x);
    if pair.total.normal_form(&w).degree() != Some(1) {
        return Err(Error::HypothesisViolated("w lies in m^2".into()));
    }
    let lift = lift_and_divide(f, pair)?;
    let len = lift.diffs.len();
    let fm = |n: usize| -> GradedFreeModule {
        if n == 0 {
            lift.diffs[0].target().clone()
        } else {
            lift.diffs[n - 1].source().clone()
        }
    };
    let mut maps = Vec::new();
    let g1 = GradedMatrix::block(&[fm(0)], &[fm(0).shifted(1), fm(1)], &[vec![Some(&x_identity(pair, &fm(0), true)), Some(&lift.diffs[0])]]);
    maps.push(g1);
    for n in 2..=len {
        let top_left = lift.diffs[n - 2].shifted(1);
        let sig = if n % 2 == 0 { lift.sigma[n - 2].clone() } else { negate(&lift.sigma[n - 2]) };
        let bottom_left = x_identity(pair, &fm(n - 1), n % 2 == 1);
        let rows = [fm(n - 2).shifted(1), fm(n - 1)];
        let cols = [fm(n - 1).shifted(1), fm(n)];
        maps.push(GradedMatrix::block(
            &rows,
            &cols,
            &[vec![Some(&top_left), Some(&sig)], vec![Some(&bottom_left), Some(&lift.diffs[n - 1])]],
        ));
    }
    for (k, w) in maps.windows(2).enumerate() {
        if let Some((row, col)) = w[0].compose(&w[1])?.first_nonzero() {
            return Err(Error::NotAComplex { at: k + 1, row, col });
        }
    }
    let top = maps.last().and_then(|m| m.source().max_degree()).unwrap_or(0);
    let cap = cap.unwrap_or(top + 2);
    let exactness = verify_exactness(&maps, cap)?;
    let minimal = maps.iter().all(|m| m.is_minimal());
    let ranks_ok = (1..=len).all(|n| maps[n - 1].ncols() == f.betti(n) + f.betti(n - 1));
    let status: Vec<Completeness> = (1..=len)
        .map(|n| match f.completeness(n) {
            Completeness::Certified => Completeness::Through(cap),
            Completeness::Through(d) => Completeness::Through(d.min(cap)),
        })
        .collect();
    let module = ModulePresentation::from_matrix(&maps[0]);
    let sigma_commutes = lift.sigma_commutes();
    Ok(ShamashConverse { lift, resolution: Resolution::from_parts(module, maps, status), exactness, minimal, ranks_ok, sigma_commutes })
}

fn negate(a: &GradedMatrix) -> GradedMatrix {
    let pf = a.ring().fp().expect("prime field");
    let cols = a
        .columns()
        .iter()
        .map(|c| FreeElem { degree: c.degree, entries: c.entries.iter().map(|(i, v)| (*i, v.scale(pf, pf.neg(1)))).collect() })
        .collect();
    GradedMatrix::from_columns(a.target().clone(), cols)
}

/// The module `M` over `R'` read as an `R`-module, for the direct computation.
pub fn module_over_total(m: &ModulePresentation, pair: &DeformationPair) -> Result<ModulePresentation> {
    let a = pair.lift_matrix(m.matrix())?;
    let w = x_identity(pair, a.target(), true);
    let both = GradedMatrix::block(&[a.target().clone()], &[w.source().clone(), a.source().clone()], &[vec![Some(&w), Some(&a)]]);
    Ok(ModulePresentation::from_matrix(&both))
}

/// Comparison of `G(F')` with the minimal resolution of `M` over `R` computed directly.
#[derive(Clone, Debug)]
pub struct Agreement {
    pub betti_g: Vec<usize>,
    pub betti_direct: Vec<usize>,
    /// `(n, r)` pairs where the verdicts or the enumerated ideals differ.
    pub minor_mismatches: Vec<(usize, usize)>,
}

impl Agreement {
    pub fn holds(&self) -> bool {
        self.betti_g == self.betti_direct && self.minor_mismatches.is_empty()
    }
}

pub fn compare_with_direct(g: &Resolution, m: &ModulePresentation, pair: &DeformationPair, rmax: usize) -> Result<Agreement> {
    let n_max = g.length();
    let direct = minimal_resolution(&module_over_total(m, pair)?, ResolveOptions::steps(n_max))?;
    let mut minor_mismatches = Vec::new();
    for n in 1..=n_max.min(direct.length()) {
        for r in 1..=rmax {
            let a = minors_of_resolution(g, n, r)?;
            let b = minors_of_resolution(&direct, n, r)?;
            let same = a.relation == b.relation
                && match (a.relation, &a.generators, &b.generators) {
                    (MinorRelation::Proper, Some(_), Some(_)) => {
                        let ia = crate::minors::minors_ideal(g.differential(n), r);
                        let ib = crate::minors::minors_ideal(direct.differential(n), r);
                        let top = ia.max_generator_degree().max(ib.max_generator_degree()).unwrap_or(0);
                        ideal_compare(&ia, &ib, top)?.relation == IdealRelation::Equal
                    }
                    _ => true,
                };
            if !same {
                minor_mismatches.push((n, r));
            }
        }
    }
    let mut betti_direct = direct.betti_numbers();
    betti_direct.resize(n_max + 1, 0);
    Ok(Agreement { betti_g: g.betti_numbers(), betti_direct, minor_mismatches })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftStatus {
    Verified,
    Inconclusive,
    Falsified,
}

#[derive(Clone, Debug)]
pub struct LiftReport {
    pub r: usize,
    /// Onsets over `R'` for sizes `1..=r`.
    pub ell: Vec<OnsetSummary>,
    /// First `n` after which `β_n(M) >= r` over `R'`.
    pub big_n: Option<usize>,
    /// `max{ℓ_1..ℓ_r, N}`, or `max{ℓ_1..ℓ_r}` when `m_{R'}^r != 0`.
    pub start: Option<usize>,
    pub shortcut: bool,
    pub verdicts: Vec<MinorVerdict>,
    pub status: LiftStatus,
    pub sigma_nonzero: Vec<usize>,
    pub n_max: usize,
}

/// Measures `ℓ_s` and `N` over `R'`, builds `G(F')`, and checks `I_{n,r} = m_R^r` over `R`
/// from `max{ℓ_1..ℓ_r, N}` on.
pub fn verify_theorem_lift(pair: &DeformationPair, m: &ModulePresentation, r: usize, n_max: usize) -> Result<LiftReport> {
    if !Arc::ptr_eq(m.ring(), &pair.base) {
        return Err(Error::RingMismatch("the module must be over R'".into()));
    }
    let f = minimal_resolution(m, ResolveOptions::steps(n_max))?;
    if f.terminated() {
        return Err(Error::HypothesisViolated("the module is free or of finite projective dimension".into()));
    }
    let mut base_verdicts = Vec::new();
    for n in 1..=f.length() {
        for s in 1..=r {
            base_verdicts.push(minors_of_resolution(&f, n, s)?);
        }
    }
    let betti = f.betti_numbers();
    let ell: Vec<OnsetSummary> = (1..=r).map(|s| summarize(&base_verdicts, &betti, s, n_max)).collect();
    let big_n = ell.last().and_then(|s| s.beta_onset);
    let shortcut = pair.base.hilbert_function(r as u32) > 0;
    let ells: Option<Vec<usize>> = ell.iter().map(|s| s.onset).collect();
    let start = ells.and_then(|l| {
        let m = l.into_iter().max().unwrap_or(1);
        if shortcut {
            Some(m)
        } else {
            big_n.map(|nn| m.max(nn))
        }
    });
    let g = shamash_converse(&f, pair, None)?;
    let mut verdicts = Vec::new();
    let mut status = LiftStatus::Inconclusive;
    if let Some(st) = start.filter(|&s| s <= n_max) {
        status = LiftStatus::Verified;
        for n in st..=n_max {
            let v = minors_of_resolution(&g.resolution, n, r)?;
            if !v.is_equal() {
                status = LiftStatus::Falsified;
            }
            verdicts.push(v);
        }
    }
    Ok(LiftReport { r, ell, big_n, start, shortcut, verdicts, status, sigma_nonzero: g.lift.nonzero_sigma(), n_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    fn ring(names: &[&str], rels: &[&str]) -> Ring {
        RingPresentation::parse(Field::DEFAULT, names, rels).unwrap()
    }

    #[test]
    fn adjoin_keeps_relations() {
        let base = ring(&["x", "y"], &["x*y"]);
        let pair = adjoin_variable(&base, "w").unwrap();
        assert_eq!(pair.total.names(), ["x", "y", "w"]);
        assert_eq!((0..4).map(|d| pair.total.hilbert_function(d)).collect::<Vec<_>>(), [1, 3, 5, 7]);
        assert!(matches!(adjoin_variable(&base, "x"), Err(Error::NameClash(_))));
        let bad = ring(&["x", "w"], &["x*w"]);
        assert!(matches!(quotient_by_variable(&bad, "w"), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn sigma_nonzero_case() {
        let total = ring(&["x", "w"], &["x^2 - w^2"]);
        let pair = quotient_by_variable(&total, "w").unwrap();
        assert_eq!(pair.base.names(), ["x"]);
        let k = ModulePresentation::residue_field(&pair.base);
        let f = minimal_resolution(&k, ResolveOptions::steps(5)).unwrap();
        let g = shamash_converse(&f, &pair, None).unwrap();
        assert_eq!(g.lift.nonzero_sigma(), [2, 3, 4, 5]);
        assert!(g.holds() && g.sigma_commutes);
        assert_eq!(g.resolution.betti_numbers(), [1, 2, 2, 2, 2, 2]);
        let agree = compare_with_direct(&g.resolution, &k, &pair, 1).unwrap();
        assert!(agree.holds(), "{agree:?}");
    }

    #[test]
    fn adjoined_mapping_cone() {
        let base = ring(&["x", "y"], &["x*y"]);
        let pair = adjoin_variable(&base, "w").unwrap();
        let m = ModulePresentation::quotient(&base, &[base.parse_poly("x").unwrap()]).unwrap();
        let f = minimal_resolution(&m, ResolveOptions::steps(6)).unwrap();
        let g = shamash_converse(&f, &pair, None).unwrap();
        assert!(g.lift.nonzero_sigma().is_empty());
        assert!(g.holds());
        assert_eq!(g.resolution.betti_numbers(), [1, 2, 2, 2, 2, 2, 2]);
        assert!(compare_with_direct(&g.resolution, &m, &pair, 2).unwrap().holds());
    }
}
