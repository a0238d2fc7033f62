//! Artinian stretched Gorenstein rings in normal form, annihilated generators, the tracked
//! resolution that exhibits `x1 * Id` blocks, and the socle counterexample built by splicing.

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::fiber::{summarize, OnsetSummary};
use crate::linalg::{KernelBuilder, SparseVec};
use crate::minors::{minors_ideal, minors_of_resolution, MinorVerdict};
use crate::resolution::{
    betti_growth_check, dual_presentation, minimal_resolution, minimal_resolution_with, verify_exactness, Completeness,
    ExactnessReport, FreeElem, GradedMatrix, GrowthReport, ModulePresentation, ResolveOptions, Resolution,
};
use crate::ring::{ideal_compare, max_ideal_power, socle, IdealRelation, Ring, RingPresentation};

/// `k[x1..xe] / (x_i x_j for i != j, x1^s - u_i x_i^2 for i >= 2)`.
#[derive(Clone, Debug)]
pub struct StretchedGorensteinRing {
    pub e: usize,
    pub s: u32,
    /// `u_2, ..., u_e` as residues.
    pub units: Vec<u32>,
    pub ring: Ring,
}

impl StretchedGorensteinRing {
    /// `l = e + s`.
    pub fn length(&self) -> usize {
        self.e + self.s as usize
    }

    pub fn socle_generator(&self) -> String {
        format!("x1^{}", self.s)
    }
}

pub fn build_stretched(e: usize, s: u32, units: &[i64], field: Field) -> Result<StretchedGorensteinRing> {
    if e < 2 {
        return Err(Error::InvalidArgument(format!("embedding dimension {e} is below 2")));
    }
    if s < 2 {
        return Err(Error::InvalidArgument(format!("socle degree {s} is below 2")));
    }
    if field.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    if units.len() != e - 1 {
        return Err(Error::ArityMismatch { expected: e - 1, got: units.len() });
    }
    // x1^s - u x_i^2 is homogeneous only for s = 2; a graded Gorenstein ring has a symmetric
    // Hilbert function, which (1, e, 1, ..., 1) is not once s > 2.
    if s != 2 {
        return Err(Error::NonHomogeneous(format!("x1^{s} - u*x2^2 (socle degree {s} has no graded normal form)")));
    }
    let pf = field.prime_field()?;
    let units: Vec<u32> = units.iter().map(|&u| pf.from_i64(u)).collect();
    if let Some(k) = units.iter().position(|&u| u == 0) {
        return Err(Error::InvalidUnit(format!("u_{} vanishes in characteristic {}", k + 2, pf.modulus())));
    }
    let names: Vec<String> = (1..=e).map(|i| format!("x{i}")).collect();
    let mut rels = Vec::new();
    for i in 1..=e {
        for j in i + 1..=e {
            rels.push(format!("x{i}*x{j}"));
        }
    }
    for (k, u) in units.iter().enumerate() {
        rels.push(format!("x1^{s} - {u}*x{}^2", k + 2));
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let rel_refs: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    let ring = RingPresentation::parse(field, &name_refs, &rel_refs)?;
    let sg = StretchedGorensteinRing { e, s, units, ring };
    sg.self_check()?;
    Ok(sg)
}

impl StretchedGorensteinRing {
    fn self_check(&self) -> Result<()> {
        let r = &self.ring;
        let expect = |d: u32| match d {
            0 => 1,
            1 => self.e,
            d if d <= self.s => 1,
            _ => 0,
        };
        for d in 0..=self.s + 1 {
            if r.hilbert_function(d) != expect(d) {
                return Err(Error::HypothesisViolated(format!("H({d}) = {}, expected {}", r.hilbert_function(d), expect(d))));
            }
        }
        let soc = socle(r)?;
        let top = crate::ring::GradedIdeal::new(r.clone(), &[r.parse_poly(&self.socle_generator())?])?;
        if ideal_compare(&soc, &top, self.s)?.relation != IdealRelation::Equal {
            return Err(Error::HypothesisViolated(format!("socle is {soc}, not ({})", self.socle_generator())));
        }
        Ok(())
    }
}

/// Coefficient of `x_v` in a linear entry.
fn linear_coefficient(ring: &Ring, a: &SparseVec, v: usize) -> u32 {
    let std1 = ring.standard_monomials(1);
    let mono = crate::arith::Monomial::var(ring.nvars(), v);
    std1.index_of(&mono).map_or(0, |i| a.get(i))
}

/// Columns of `a` killed by `x_v`.
fn killed_by(a: &GradedMatrix, v: usize) -> Vec<bool> {
    let ring = a.ring();
    a.columns()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            c.entries.iter().all(|(i, x)| {
                let d = a.entry_degree(*i as usize, j);
                d < 0 || ring.mul_var(d as u32, x, v).is_zero()
            })
        })
        .collect()
}

/// Column operations (swaps and additions of scalar multiples) on a minimal `a` that make the
/// last column lie in `(x1, ..., x_{e-1}, x_e^2)`, so that `x_e` kills it. `None` when the
/// residue matrix of `x_e`-coefficients has independent columns in every degree.
fn annihilated_column(a: &GradedMatrix) -> Result<Option<GradedMatrix>> {
    let ring = a.ring();
    let pf = ring.fp()?;
    let xe = ring.nvars() - 1;
    let tdeg = a.target().degrees();
    let mut degrees: Vec<i32> = a.source().degrees().to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        let cols: Vec<usize> = (0..a.ncols()).filter(|&j| a.column(j).degree == d).collect();
        let rows: Vec<usize> = (0..a.nrows()).filter(|&i| tdeg[i] == d - 1).collect();
        let mut kb = KernelBuilder::new(pf, rows.len());
        for &j in &cols {
            let entries: Vec<(u32, u32)> = rows
                .iter()
                .enumerate()
                .filter_map(|(pos, &i)| a.entry_vec(i, j).map(|v| (pos as u32, linear_coefficient(ring, v, xe))))
                .filter(|e| e.1 != 0)
                .collect();
            kb.push(SparseVec::from_unsorted(pf, entries));
        }
        let Some(c) = kb.finish().into_iter().next() else { continue };
        let (p, cp) = *c.entries().last().expect("nonzero kernel vector");
        let p = p as usize;
        let cinv = pf.inv(cp);
        let target = a.target();
        let mut u = a.column(cols[p]).clone();
        for &(k, ck) in c.entries() {
            if k as usize != p {
                u = target.add_elems(&u, a.column(cols[k as usize]), pf.mul(ck, cinv));
            }
        }
        let mut new_cols = a.columns().to_vec();
        new_cols[cols[p]] = u;
        let last = new_cols.len() - 1;
        new_cols.swap(cols[p], last);
        return Ok(Some(GradedMatrix::from_columns(target.clone(), new_cols)));
    }
    Ok(None)
}

/// Transforms `a` by invertible column operations so that its last column `u` satisfies
/// `x_e u = 0`; returns the new matrix and the index of `u`.
pub fn find_annihilated_generator(a: &GradedMatrix, sg: &StretchedGorensteinRing) -> Result<(GradedMatrix, usize)> {
    if !std::sync::Arc::ptr_eq(a.ring(), &sg.ring) {
        return Err(Error::RingMismatch("matrix is not over the stretched ring".into()));
    }
    if a.ncols() <= a.nrows() {
        return Err(Error::HypothesisViolated(format!("{} columns for {} rows", a.ncols(), a.nrows())));
    }
    if let Some((row, col)) = a.unit_entry() {
        return Err(Error::NotMinimal { row, col });
    }
    let b = annihilated_column(a)?.ok_or_else(|| Error::HypothesisViolated("no x_e-annihilated column".into()))?;
    let idx = b.ncols() - 1;
    if !killed_by(&b, sg.e - 1)[idx] {
        return Err(Error::TrackingLost("x_e does not kill the reduced column".into()));
    }
    Ok((b, idx))
}

/// One step `n` of the resolution of `N`.
#[derive(Clone, Debug)]
pub struct TrackedStep {
    pub n: usize,
    pub gamma: usize,
    pub delta: usize,
    /// `x1 * Id_gamma` found verbatim in `∂_{n+1}` of `N`.
    pub x1_identity: bool,
    /// For every variable, how many columns of `∂_{n+1}` of `N` it kills.
    pub killed: Vec<usize>,
}

/// Designated generators along the resolution of `N = ker(A)` started at `(x_e, 0, ..., 0)`.
#[derive(Clone, Debug)]
pub struct TrackedBasis {
    pub steps: Vec<TrackedStep>,
}

impl TrackedBasis {
    /// `(γ, δ) ↦ (2δ, γ)` between consecutive steps.
    pub fn counts_evolve(&self) -> bool {
        self.steps.windows(2).all(|w| w[1].gamma == 2 * w[0].delta && w[1].delta == w[0].gamma)
    }

    /// `γ_n >= 2^⌊n/2⌋`.
    pub fn power_bounds(&self) -> bool {
        self.steps.iter().all(|s| s.gamma >= 1usize << (s.n / 2))
    }

    pub fn identities_found(&self) -> bool {
        self.steps.iter().all(|s| s.x1_identity)
    }

    /// First `n` with `x1 * Id_r` inside `∂_n` of `N`.
    pub fn first_identity(&self, r: usize) -> Option<usize> {
        self.steps.iter().find(|s| s.x1_identity && s.gamma >= r).map(|s| s.n + 1)
    }
}

fn var_elem(ring: &Ring, v: usize) -> SparseVec {
    ring.elem_of(&ring.var(v)).expect("variable").expect("relations lie in m^2").1
}

fn times_basis(a: &GradedMatrix, v: usize, j: usize) -> FreeElem {
    let ring = a.ring();
    FreeElem { degree: a.source().degrees()[j] + 1, entries: vec![(j as u32, var_elem(ring, v))] }
}

/// Whether `x1 * Id_g` sits in rows `0..g` and columns `2δ..2δ+g` of `b`.
fn has_x1_identity(b: &GradedMatrix, gamma: usize, delta: usize) -> bool {
    if b.ncols() < 2 * delta + gamma || b.nrows() < gamma {
        return false;
    }
    let x1 = var_elem(b.ring(), 0);
    (0..gamma).all(|k| {
        let col = b.column(2 * delta + k);
        col.entries.len() == 1 && col.entries[0].0 as usize == k && col.entries[0].1 == x1
    })
}

/// Resolves `coker(A)` where `x_e` kills column `u` of `A`, choosing at every step the
/// designated generators `x2 ω`, `x3 ω`, `x1 ω` first. The returned resolution has `A` as
/// its first differential; `∂_{n+2}` of it is `∂_n` of `N = ker(A)`.
pub fn tracked_resolution(a: &GradedMatrix, u: usize, sg: &StretchedGorensteinRing, n_max: usize) -> Result<(Resolution, TrackedBasis)> {
    if sg.e < 3 {
        return Err(Error::HypothesisViolated("tracking needs at least three variables".into()));
    }
    let xe = sg.e - 1;
    if !killed_by(a, xe)[u] {
        return Err(Error::TrackingLost(format!("x_e does not kill column {u}")));
    }
    let m = ModulePresentation::from_matrix(a);
    if m.matrix().ncols() != a.ncols() {
        return Err(Error::NotMinimal { row: 0, col: u });
    }
    let mut counts: Vec<(usize, usize)> = Vec::new();
    let choose = |t: usize, cur: &GradedMatrix| -> Result<Vec<FreeElem>> {
        Ok(match t {
            1 => vec![times_basis(cur, xe, u)],
            2 => vec![times_basis(cur, 1, 0), times_basis(cur, 0, 0)],
            _ => {
                let (g, d) = match counts.last() {
                    None => (1, 1),
                    Some(&(g, d)) => (2 * d, g),
                };
                counts.push((g, d));
                let mut p: Vec<FreeElem> = (0..d).map(|k| times_basis(cur, 1, g + k)).collect();
                p.extend((0..d).map(|k| times_basis(cur, 2, g + k)));
                p.extend((0..g).map(|j| times_basis(cur, 0, j)));
                p
            }
        })
    };
    let (res, steps) = minimal_resolution_with(&m, ResolveOptions::steps(n_max), choose)?;
    let mut tracked = Vec::new();
    let mut g = 1;
    let mut d = 1;
    for (k, syz) in steps.iter().enumerate().skip(2) {
        let n = k - 1;
        if k > 2 {
            (g, d) = (2 * d, g);
        }
        if syz.preferred != 2 * d + g {
            return Err(Error::TrackingLost(format!("step {n} kept {} designated generators, expected {}", syz.preferred, 2 * d + g)));
        }
        let b = &syz.matrix;
        let killed = (0..sg.e).map(|v| killed_by(b, v).into_iter().filter(|&x| x).count()).collect();
        tracked.push(TrackedStep { n, gamma: g, delta: d, x1_identity: has_x1_identity(b, g, d), killed });
    }
    Ok((res, TrackedBasis { steps: tracked }))
}

#[derive(Clone, Debug)]
pub struct StretchedTheoremReport {
    pub mu: usize,
    /// Step `j` of the resolution of `M` whose differential was reduced; `N = ker ∂_j`.
    pub annihilated_at: usize,
    pub tracked: TrackedBasis,
    /// Whether the tracked resolution has the same Betti numbers as the direct one.
    pub tracked_betti_agree: bool,
    /// `j + 1 + 3` for `r = 1`, `j + 1 + 2⌈log2 r⌉ + 2` otherwise.
    pub bounds: Vec<usize>,
    pub verdicts: Vec<MinorVerdict>,
    pub summaries: Vec<OnsetSummary>,
    pub growth: GrowthReport,
    pub betti: Vec<usize>,
    pub n_max: usize,
}

impl StretchedTheoremReport {
    pub fn onsets_within_bounds(&self) -> bool {
        self.summaries.iter().zip(&self.bounds).all(|(s, &b)| s.onset.is_some_and(|o| o <= b.max(1)) || b > self.n_max)
    }

    /// Equality at every computed `n >= onset`.
    pub fn persists(&self) -> bool {
        self.summaries.iter().all(|s| s.onset.is_some())
    }
}

pub fn sg_bound(offset: usize, r: usize) -> usize {
    if r <= 1 {
        offset + 3
    } else {
        offset + 2 * (r.next_power_of_two().trailing_zeros() as usize) + 2
    }
}

/// Minors of the minimal resolution of `M` for `n` in `1..=n_max` and sizes up to `rmax`,
/// together with the tracked construction that explains them.
pub fn verify_theorem_sg(sg: &StretchedGorensteinRing, m: &ModulePresentation, rmax: usize, n_max: usize) -> Result<StretchedTheoremReport> {
    if sg.e < 3 {
        return Err(Error::HypothesisViolated(format!("embedding dimension {} is below 3", sg.e)));
    }
    if !std::sync::Arc::ptr_eq(m.ring(), &sg.ring) {
        return Err(Error::RingMismatch("module is not over the stretched ring".into()));
    }
    let res = minimal_resolution(m, ResolveOptions::steps(n_max))?;
    if res.terminated() {
        return Err(Error::HypothesisViolated("the module is free".into()));
    }
    let mu = m.mu();
    let mut found = None;
    for j in mu.max(1)..=(mu + 1).min(res.length()) {
        if let Some(b) = annihilated_column(res.differential(j))? {
            found = Some((j, b));
            break;
        }
    }
    let (j, b) = found.ok_or_else(|| Error::HypothesisViolated("no x_e-annihilated generator at steps μ, μ+1".into()))?;
    let (tracked_res, tracked) = tracked_resolution(&b, b.ncols() - 1, sg, n_max + 1 - j)?;
    let tracked_betti_agree = (1..=tracked_res.length()).all(|t| tracked_res.betti(t) == res.betti(j - 1 + t));
    let mut verdicts = Vec::new();
    for n in 1..=n_max {
        for r in 1..=rmax {
            verdicts.push(minors_of_resolution(&res, n, r)?);
        }
    }
    let betti = res.betti_numbers();
    let summaries = (1..=rmax).map(|r| summarize(&verdicts, &betti, r, n_max)).collect();
    let bounds = (1..=rmax).map(|r| sg_bound(j + 1, r)).collect();
    let growth = betti_growth_check(&res)?;
    Ok(StretchedTheoremReport { mu, annihilated_at: j, tracked, tracked_betti_agree, bounds, verdicts, summaries, growth, betti, n_max })
}

#[derive(Clone, Debug)]
pub struct SocleWitness {
    pub n: usize,
    /// `maps[k-1] = ∂_k` of the spliced complex.
    pub maps: Vec<GradedMatrix>,
    pub exactness: ExactnessReport,
    pub minimal: bool,
    /// `I_1` of the map at position `n`.
    pub ideal: String,
    pub equals_socle: bool,
    pub differs_from_m: bool,
    /// `β_0(M_n)` from the splice and from the dual of `Ω_n(k)`.
    pub beta0_splice: usize,
    pub beta0_dual: usize,
}

impl SocleWitness {
    pub fn holds(&self) -> bool {
        self.exactness.is_exact() && self.minimal && self.equals_socle && self.beta0_splice == self.beta0_dual
    }
}

/// Splices the dual of the resolution of `k` to the resolution itself through
/// multiplication by the socle generator, giving a minimal resolution of `Ω_n(k)*` whose
/// `n`-th map is that multiplication.
pub fn socle_witness(ring: &Ring, n: usize) -> Result<SocleWitness> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let soc = socle(ring)?;
    let gens = soc.minimal_generators();
    if gens.len() != 1 {
        return Err(Error::HypothesisViolated(format!("socle {soc} is not principal")));
    }
    let x = &gens[0];
    let s = x.degree().expect("nonzero") as i32;
    let k = ModulePresentation::residue_field(ring);
    let res = minimal_resolution(&k, ResolveOptions::steps(n + 1))?;
    if res.length() < n + 1 {
        return Err(Error::DepthTooLow { have: res.length(), needed: n + 1 });
    }
    // G_i = F*_{n-1-i} for i < n, G_n = R, G_{n+j} = F_j
    let c = res.free(n - 1).max_degree().unwrap_or(0);
    let mut maps = Vec::new();
    for i in 1..n {
        maps.push(res.differential(n - i).dual(c));
    }
    let mid = GradedMatrix::from_polys(ring, vec![c], vec![c + s], &[vec![x.clone()]])?;
    maps.push(mid);
    for j in 1..=n + 1 {
        maps.push(res.differential(j).shifted(c + s));
    }
    let cap = maps.last().and_then(|m| m.source().max_degree()).unwrap_or(0) + ring.artinian_top().unwrap_or(0) as i32;
    let exactness = verify_exactness(&maps, cap)?;
    if !exactness.is_exact() {
        let (pos, d, dim) = exactness.homology[0];
        return Err(Error::SpliceBroken(format!("homology of dimension {dim} at position {pos}, degree {d}")));
    }
    let minimal = maps.iter().all(|m| m.is_minimal());
    let ideal = minors_ideal(&maps[n - 1], 1);
    let top = ring.artinian_top().unwrap_or(0);
    let equals_socle = ideal_compare(&ideal, &soc, top)?.relation == IdealRelation::Equal;
    let differs_from_m = ideal_compare(&ideal, &max_ideal_power(ring, 1), top)?.relation != IdealRelation::Equal;
    let omega = ModulePresentation::from_matrix(res.differential(n + 1));
    let beta0_dual = dual_presentation(&omega)?.presentation.mu();
    let beta0_splice = maps[0].nrows();
    let ideal = ideal.to_string();
    Ok(SocleWitness { n, maps, exactness, minimal, ideal, equals_socle, differs_from_m, beta0_splice, beta0_dual })
}

/// Resolution of `M_n = Ω_n(k)*` read off the spliced complex.
pub fn socle_witness_resolution(w: &SocleWitness, ring: &Ring) -> Resolution {
    let module = ModulePresentation::from_matrix(&w.maps[0]);
    let _ = ring;
    Resolution::from_parts(module, w.maps.clone(), vec![Completeness::Certified; w.maps.len()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::MinorRelation;

    fn sg3() -> StretchedGorensteinRing {
        build_stretched(3, 2, &[1, 1], Field::DEFAULT).unwrap()
    }

    #[test]
    fn construction() {
        let sg = sg3();
        assert_eq!(sg.length(), 5);
        assert_eq!(sg.ring.artinian_top(), Some(2));
        let r = &sg.ring;
        assert_eq!(r.parse_poly("x2^2").unwrap(), r.parse_poly("x1^2").unwrap());
        assert_eq!(r.show(&r.parse_poly("x1*x3").unwrap()), "0");
        assert!(matches!(build_stretched(3, 2, &[1, 0], Field::DEFAULT), Err(Error::InvalidUnit(_))));
        assert!(matches!(build_stretched(3, 2, &[1, 1], Field::Prime(2)), Err(Error::CharTwo)));
        assert!(matches!(build_stretched(3, 2, &[1, 101], Field::DEFAULT), Err(Error::InvalidUnit(_))));
        assert!(build_stretched(3, 3, &[1, 1], Field::DEFAULT).is_err());
    }

    #[test]
    fn annihilated_generator_of_linear_row() {
        let sg = sg3();
        let r = &sg.ring;
        let row = vec![vec![r.parse_poly("x1").unwrap(), r.parse_poly("x2").unwrap()]];
        let a = GradedMatrix::from_rows(r, vec![0], &row).unwrap();
        let (b, idx) = find_annihilated_generator(&a, &sg).unwrap();
        assert_eq!(idx, 1);
        assert!(killed_by(&b, 2)[idx]);
        let row = vec![vec![r.parse_poly("x3").unwrap()]];
        let a = GradedMatrix::from_rows(r, vec![0], &row).unwrap();
        assert!(matches!(find_annihilated_generator(&a, &sg), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn tracking_on_residue_field() {
        let sg = sg3();
        let k = ModulePresentation::residue_field(&sg.ring);
        let (b, u) = find_annihilated_generator(k.matrix(), &sg).unwrap();
        let (res, tb) = tracked_resolution(&b, u, &sg, 8).unwrap();
        assert_eq!(res.betti_numbers(), [1, 3, 8, 21, 55, 144, 377, 987, 2584]);
        assert!(tb.counts_evolve() && tb.power_bounds() && tb.identities_found());
        assert_eq!(tb.steps.iter().map(|s| (s.gamma, s.delta)).take(4).collect::<Vec<_>>(), [(1, 1), (2, 1), (2, 2), (4, 2)]);
    }

    #[test]
    fn theorem_on_small_range() {
        let sg = sg3();
        let k = ModulePresentation::residue_field(&sg.ring);
        let rep = verify_theorem_sg(&sg, &k, 2, 6).unwrap();
        assert!(rep.tracked_betti_agree);
        assert!(rep.growth.holds());
        assert!(rep.onsets_within_bounds() && rep.persists());
    }

    #[test]
    fn socle_witness_small() {
        let sg = sg3();
        for n in 1..=3 {
            let w = socle_witness(&sg.ring, n).unwrap();
            assert!(w.holds(), "n = {n}: {w:?}");
            assert!(w.differs_from_m);
            let res = socle_witness_resolution(&w, &sg.ring);
            assert_eq!(minors_of_resolution(&res, n, 1).unwrap().relation, MinorRelation::Proper);
        }
        let c = RingPresentation::parse(Field::DEFAULT, &["x"], &["x^3"]).unwrap();
        let w = socle_witness(&c, 2).unwrap();
        assert!(w.holds());
        assert_eq!(w.ideal, "(x^2)");
    }
}
