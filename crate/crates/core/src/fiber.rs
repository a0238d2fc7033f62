//! Fiber products `S ×_k T`, lifts of complexes from a factor, and Moore's resolution built
//! from tensor words.

use std::fmt;
use std::sync::Arc;

use crate::arith::Polynomial;
use crate::error::{Error, Result};
use crate::minors::{minors_of_resolution, MinorVerdict};
use crate::resolution::{
    minimal_resolution, Completeness, GradedFreeModule, GradedMatrix, ModulePresentation, ResolveOptions, Resolution,
};
use crate::ring::{Ring, RingPresentation};

/// `R = S ×_k T`, presented on the disjoint union of the variables with every mixed product
/// killed.
#[derive(Clone, Debug)]
pub struct FiberProductRing {
    pub s: Ring,
    pub t: Ring,
    pub r: Ring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl FiberProductRing {
    pub fn new(s: &Ring, t: &Ring) -> Result<FiberProductRing> {
        if s.field() != t.field() {
            return Err(Error::FieldMismatch(format!("{:?}", s.field()), format!("{:?}", t.field())));
        }
        if s.nvars() == 0 || t.nvars() == 0 {
            return Err(Error::InvalidArgument("both factors need at least one variable".into()));
        }
        if let Some(n) = s.names().iter().find(|n| t.names().contains(n)) {
            return Err(Error::NameClash(n.clone()));
        }
        let (e1, e2) = (s.nvars(), t.nvars());
        let nv = e1 + e2;
        let field = s.field();
        let names: Vec<String> = s.names().iter().chain(t.names()).cloned().collect();
        let mut rels: Vec<Polynomial> = s.relations().iter().map(|g| g.remap(nv, &left_map(e1))).collect();
        rels.extend(t.relations().iter().map(|g| g.remap(nv, &right_map(e1, e2))));
        for i in 0..e1 {
            for j in 0..e2 {
                let xi = Polynomial::var(field, nv, i);
                let yj = Polynomial::var(field, nv, e1 + j);
                rels.push(&xi * &yj);
            }
        }
        let r = RingPresentation::new(field, names, rels)?;
        let fp = FiberProductRing { s: s.clone(), t: t.clone(), r };
        fp.check_hilbert()?;
        Ok(fp)
    }

    pub fn e1(&self) -> usize {
        self.s.nvars()
    }

    pub fn e2(&self) -> usize {
        self.t.nvars()
    }

    pub fn embdim(&self) -> usize {
        self.e1() + self.e2()
    }

    /// `H_R(d) = H_S(d) + H_T(d)` for `d >= 1`.
    fn check_hilbert(&self) -> Result<()> {
        let top = match (self.s.artinian_top(), self.t.artinian_top()) {
            (Some(a), Some(b)) => a.max(b) + 1,
            _ => 6,
        };
        for d in 1..=top {
            let (hr, hs, ht) = (self.r.hilbert_function(d), self.s.hilbert_function(d), self.t.hilbert_function(d));
            if hr != hs + ht {
                return Err(Error::HypothesisViolated(format!("H_R({d}) = {hr} but H_S + H_T = {}", hs + ht)));
            }
        }
        Ok(())
    }

    /// Variable indices of a factor inside `R`.
    pub fn embedding(&self, side: Side) -> Vec<usize> {
        match side {
            Side::Left => left_map(self.e1()),
            Side::Right => right_map(self.e1(), self.e2()),
        }
    }

    pub fn side_of(&self, ring: &Ring) -> Result<Side> {
        if Arc::ptr_eq(ring, &self.s) {
            Ok(Side::Left)
        } else if Arc::ptr_eq(ring, &self.t) {
            Ok(Side::Right)
        } else {
            Err(Error::RingMismatch("matrix is over neither factor".into()))
        }
    }

    /// The same matrix read over `R`; entries must lie in the maximal ideal.
    pub fn lift_matrix(&self, a: &GradedMatrix) -> Result<GradedMatrix> {
        let side = self.side_of(a.ring())?;
        if let Some((row, col)) = a.unit_entry() {
            return Err(Error::NotMinimal { row, col });
        }
        let map = self.embedding(side);
        let nv = self.r.nvars();
        let rows: Vec<Vec<Polynomial>> =
            a.rows().iter().map(|row| row.iter().map(|f| self.r.normal_form(&f.remap(nv, &map))).collect()).collect();
        GradedMatrix::from_polys(&self.r, a.target().degrees().to_vec(), a.source().degrees().to_vec(), &rows)
    }
}

fn left_map(e1: usize) -> Vec<usize> {
    (0..e1).collect()
}

fn right_map(e1: usize, e2: usize) -> Vec<usize> {
    (e1..e1 + e2).collect()
}

pub fn fiber_product(s: &Ring, t: &Ring) -> Result<FiberProductRing> {
    FiberProductRing::new(s, t)
}

/// Reads every map of a complex over a factor as a map over `R`.
pub fn lift_complex(maps: &[GradedMatrix], r: &FiberProductRing) -> Result<Vec<GradedMatrix>> {
    maps.iter().map(|a| r.lift_matrix(a)).collect()
}

/// A free summand `F_a ⊗ (E_c1 ⊗ F_d1) ⊗ ... ⊗ P_b` of Moore's complex. `a = 0` means the
/// leading `F` factor is absent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub a: usize,
    pub pairs: Vec<(usize, usize)>,
    pub b: usize,
}

impl Word {
    pub fn degree(&self) -> usize {
        self.a + self.pairs.iter().map(|(c, d)| c + d).sum::<usize>() + self.b
    }

    fn key(&self) -> (usize, usize, Vec<(usize, usize)>, usize) {
        (self.pairs.len(), self.a, self.pairs.clone(), self.b)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.a > 0 {
            parts.push(format!("F{}", self.a));
        }
        for (c, d) in &self.pairs {
            parts.push(format!("E{c}"));
            parts.push(format!("F{d}"));
        }
        parts.push(format!("P{}", self.b));
        write!(f, "{}", parts.join("⊗"))
    }
}

/// Which factor differential a block carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    F,
    E,
    P,
}

/// One nonzero block of `∂_n^G`: `∂_i^X ⊗ id_rest`.
#[derive(Clone, Debug)]
pub struct Block {
    pub kind: BlockKind,
    /// Homological degree `i` of the factor differential.
    pub index: usize,
    pub source: Word,
    pub target: Word,
    /// Offsets of the block inside `∂_n^G`.
    pub row_offset: usize,
    pub col_offset: usize,
    /// Rank of the identity factor.
    pub multiplicity: usize,
}

/// Moore's resolution of an `S`-module over `S ×_k T`.
#[derive(Clone, Debug)]
pub struct MooreResolution {
    pub resolution: Resolution,
    /// `words[n]` indexes the summands of `G_n` in layout order.
    pub words: Vec<Vec<Word>>,
    /// `blocks[n - 1]` lists the nonzero blocks of `∂_n^G`.
    pub blocks: Vec<Vec<Block>>,
    e: Vec<GradedMatrix>,
    f: Vec<GradedMatrix>,
}

#[derive(Clone, Debug, Default)]
pub struct BlockAudit {
    /// `(n, target word, number of blocks)` for rows carrying more than two blocks.
    pub crowded_rows: Vec<(usize, String, usize)>,
    /// `(n, target word)` for rows that have both an `F_1`-edge and a second edge available
    /// but fewer than two blocks.
    pub thin_rows: Vec<(usize, String)>,
    /// `(n, source word, blocks)` for columns without exactly one block.
    pub bad_columns: Vec<(usize, String, usize)>,
}

impl BlockAudit {
    pub fn passed(&self) -> bool {
        self.crowded_rows.is_empty() && self.thin_rows.is_empty() && self.bad_columns.is_empty()
    }
}

/// `∂^X_i ⊗ id_L` or a located copy of it.
#[derive(Clone, Debug)]
pub struct FocusBlock {
    pub n: usize,
    pub kind: BlockKind,
    pub multiplicity: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub verified: bool,
}

struct Factors<'a> {
    e: &'a [GradedMatrix],
    f: &'a [GradedMatrix],
    p: &'a [GradedMatrix],
}

impl Factors<'_> {
    /// Generator degrees of `X_i`; `X_0` for E and F is `R` itself.
    fn degrees(list: &[GradedMatrix], i: usize) -> Vec<i32> {
        if i == 0 {
            return list.first().map(|m| m.target().degrees().to_vec()).unwrap_or_else(|| vec![0]);
        }
        list.get(i - 1).map(|m| m.source().degrees().to_vec()).unwrap_or_default()
    }

    fn word_degrees(&self, w: &Word) -> Vec<i32> {
        let mut acc = vec![0];
        let mut push = |d: Vec<i32>| acc = acc.iter().flat_map(|x| d.iter().map(move |y| x + y)).collect();
        if w.a > 0 {
            push(Factors::degrees(self.f, w.a));
        }
        for &(c, d) in &w.pairs {
            push(Factors::degrees(self.e, c));
            push(Factors::degrees(self.f, d));
        }
        push(Factors::degrees(self.p, w.b));
        acc
    }

    /// Words of homological degree `n` whose every factor is nonzero.
    fn words(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let fmax = self.f.len();
        let emax = self.e.len();
        let pmax = self.p.len();
        fn pairs_rec(n: usize, emax: usize, fmax: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<(Vec<(usize, usize)>, usize)>) {
            out.push((cur.clone(), n));
            for c in 1..=emax.min(n) {
                for d in 1..=fmax.min(n - c) {
                    cur.push((c, d));
                    pairs_rec(n - c - d, emax, fmax, cur, out);
                    cur.pop();
                }
            }
        }
        for a in 0..=fmax.min(n) {
            let mut tails = Vec::new();
            pairs_rec(n - a, emax, fmax, &mut Vec::new(), &mut tails);
            for (pairs, left) in tails {
                if left <= pmax {
                    let w = Word { a, pairs, b: left };
                    if !self.word_degrees(&w).is_empty() {
                        out.push(w);
                    }
                }
            }
        }
        out.sort_by_key(|w| w.key());
        out
    }

    /// The leftmost differential of a word: kind, index, target word and rest of the word.
    fn edge(w: &Word) -> Option<(BlockKind, usize, Word, Word)> {
        if w.a > 0 {
            let rest = Word { a: 0, pairs: w.pairs.clone(), b: w.b };
            return Some((BlockKind::F, w.a, Word { a: w.a - 1, ..w.clone() }, rest));
        }
        if let Some(&(c, d)) = w.pairs.first() {
            let rest = Word { a: d, pairs: w.pairs[1..].to_vec(), b: w.b };
            let target = if c == 1 {
                rest.clone()
            } else {
                let mut pairs = w.pairs.clone();
                pairs[0].0 = c - 1;
                Word { a: 0, pairs, b: w.b }
            };
            // `rest` here carries `F_d ⊗ ...` so the identity factor is everything after `E_c`.
            return Some((BlockKind::E, c, target, rest));
        }
        if w.b > 0 {
            return Some((BlockKind::P, w.b, Word { a: 0, pairs: vec![], b: w.b - 1 }, Word { a: 0, pairs: vec![], b: 0 }));
        }
        None
    }
}

fn needs_depth(res: &Resolution, n: usize) -> Result<()> {
    let last_zero = res.differentials().last().is_some_and(|d| d.ncols() == 0);
    if res.length() < n && !last_zero {
        return Err(Error::DepthTooLow { have: res.length(), needed: n });
    }
    Ok(())
}

/// Assembles Moore's complex through `G_{n_max}` from resolutions `E` of `k` over `S`,
/// `F` of `k` over `T` and `P` of `M` over `S`.
pub fn moore_from_parts(r: &FiberProductRing, e: &Resolution, f: &Resolution, p: &Resolution, n_max: usize) -> Result<MooreResolution> {
    for res in [e, f, p] {
        needs_depth(res, n_max)?;
    }
    let lift_all = |res: &Resolution| lift_complex(res.differentials(), r);
    let (le, lf, lp) = (lift_all(e)?, lift_all(f)?, lift_all(p)?);
    let fac = Factors { e: &le, f: &lf, p: &lp };
    let words: Vec<Vec<Word>> = (0..=n_max).map(|n| fac.words(n)).collect();

    let status = [e, f, p]
        .iter()
        .flat_map(|res| (1..=res.length()).map(|i| res.completeness(i)))
        .fold(Completeness::Certified, |acc, c| match (acc, c) {
            (Completeness::Through(a), Completeness::Through(b)) => Completeness::Through(a.min(b)),
            (Completeness::Through(a), _) | (_, Completeness::Through(a)) => Completeness::Through(a),
            _ => Completeness::Certified,
        });

    let mut diffs = Vec::new();
    let mut all_blocks = Vec::new();
    for n in 1..=n_max {
        let src_words = &words[n];
        let tgt_words = &words[n - 1];
        let src_mods: Vec<GradedFreeModule> = src_words.iter().map(|w| GradedFreeModule::new(r.r.clone(), fac.word_degrees(w))).collect();
        let tgt_mods: Vec<GradedFreeModule> = tgt_words.iter().map(|w| GradedFreeModule::new(r.r.clone(), fac.word_degrees(w))).collect();
        let mut row_off = vec![0usize];
        for m in &tgt_mods {
            row_off.push(row_off.last().unwrap() + m.rank());
        }
        let mut col_off = 0usize;
        let mut mats: Vec<(usize, usize, GradedMatrix)> = Vec::new();
        let mut blocks = Vec::new();
        for (j, w) in src_words.iter().enumerate() {
            let (kind, idx, target, rest) = Factors::edge(w).expect("positive degree word");
            let Some(i) = tgt_words.iter().position(|t| *t == target) else {
                return Err(Error::InvalidArgument(format!("target word {target} of {w} is missing")));
            };
            let d = match kind {
                BlockKind::F => &lf[idx - 1],
                BlockKind::E => &le[idx - 1],
                BlockKind::P => &lp[idx - 1],
            };
            let rest_deg = match kind {
                BlockKind::P => vec![0],
                _ => fac.word_degrees(&rest),
            };
            let m = d.kron_graded(&rest_deg);
            blocks.push(Block {
                kind,
                index: idx,
                source: w.clone(),
                target: target.clone(),
                row_offset: row_off[i],
                col_offset: col_off,
                multiplicity: rest_deg.len(),
            });
            col_off += src_mods[j].rank();
            mats.push((i, j, m));
        }
        let mut grid: Vec<Vec<Option<&GradedMatrix>>> = vec![vec![None; src_words.len()]; tgt_words.len()];
        for (i, j, m) in &mats {
            grid[*i][*j] = Some(m);
        }
        let dn = if src_words.is_empty() {
            GradedMatrix::zero(GradedFreeModule::new(r.r.clone(), vec![]), GradedFreeModule::new(r.r.clone(), tgt_mods.iter().flat_map(|m| m.degrees().to_vec()).collect()))
        } else {
            GradedMatrix::block(&tgt_mods, &src_mods, &grid)
        };
        diffs.push(dn);
        all_blocks.push(blocks);
        if src_words.is_empty() {
            break;
        }
    }
    let module = ModulePresentation::from_matrix(&diffs[0]);
    let completeness = vec![status; diffs.len()];
    Ok(MooreResolution { resolution: Resolution::from_parts(module, diffs, completeness), words, blocks: all_blocks, e: le, f: lf })
}

/// Moore's resolution of an `S`-module `M` over `R = S ×_k T` through step `n_max`.
pub fn moore_resolution(m: &ModulePresentation, r: &FiberProductRing, n_max: usize) -> Result<MooreResolution> {
    if r.side_of(m.ring())? != Side::Left {
        return Err(Error::RingMismatch("the module must be over the left factor".into()));
    }
    let opts = ResolveOptions::steps(n_max + 1);
    let e = minimal_resolution(&ModulePresentation::residue_field(&r.s), opts)?;
    let f = minimal_resolution(&ModulePresentation::residue_field(&r.t), opts)?;
    let p = minimal_resolution(m, opts)?;
    moore_from_parts(r, &e, &f, &p, n_max)
}

impl MooreResolution {
    pub fn rank(&self, n: usize) -> usize {
        self.resolution.betti(n)
    }

    /// Each source word maps to one target word; each target word receives at most two
    /// blocks, and exactly two when an `F_1`-edge and an `E`/`P`-edge both exist.
    pub fn audit_blocks(&self) -> BlockAudit {
        let mut audit = BlockAudit::default();
        for (k, blocks) in self.blocks.iter().enumerate() {
            let n = k + 1;
            for w in &self.words[n] {
                let c = blocks.iter().filter(|b| b.source == *w).count();
                if c != 1 {
                    audit.bad_columns.push((n, w.to_string(), c));
                }
            }
            for t in &self.words[n - 1] {
                let c = blocks.iter().filter(|b| b.target == *t).count();
                if c > 2 {
                    audit.crowded_rows.push((n, t.to_string(), c));
                }
                let f_edge = self.words[n].iter().any(|w| w.a == t.a + 1 && w.pairs == t.pairs && w.b == t.b);
                let other = self.words[n].iter().any(|w| w.a == 0 && Factors::edge(w).is_some_and(|(kind, _, tw, _)| kind != BlockKind::F && tw == *t));
                if f_edge && other && c < 2 {
                    audit.thin_rows.push((n, t.to_string()));
                }
            }
        }
        audit
    }

    /// Copies of `∂_1^F ⊗ id_ℓ` and `∂_1^E ⊗ id_ℓ` with `ℓ >= r` inside `∂_n^G`, each checked
    /// to be a literal submatrix.
    pub fn focus_blocks(&self, n: usize, r: usize) -> Vec<FocusBlock> {
        let Some(blocks) = self.blocks.get(n.wrapping_sub(1)) else { return Vec::new() };
        let dn = self.resolution.differential(n);
        let mut out = Vec::new();
        for b in blocks {
            if b.index != 1 || b.multiplicity < r || b.kind == BlockKind::P {
                continue;
            }
            let base = match b.kind {
                BlockKind::F => &self.f[0],
                _ => &self.e[0],
            };
            let k = base.kron_identity(b.multiplicity);
            let rows: Vec<usize> = (b.row_offset..b.row_offset + k.nrows()).collect();
            let cols: Vec<usize> = (b.col_offset..b.col_offset + k.ncols()).collect();
            let verified = k.rows() == dn.submatrix(&rows, &cols).rows();
            out.push(FocusBlock { n, kind: b.kind, multiplicity: b.multiplicity, rows, cols, verified });
        }
        out
    }
}

/// Per-size summary of a minors run.
#[derive(Clone, Debug)]
pub struct OnsetSummary {
    pub r: usize,
    /// First `n` with `I_{n,r} = m^r`.
    pub first_equal: Option<usize>,
    /// First `n` after which equality holds at every computed step.
    pub onset: Option<usize>,
    /// First `n` with `β_n >= r` from which that persists.
    pub beta_onset: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct FiberTheoremReport {
    pub e1: usize,
    pub e2: usize,
    /// `⌈2r/(e1 e2)⌉ + 8`, indexed like `summaries`.
    pub bounds: Vec<usize>,
    pub verdicts: Vec<MinorVerdict>,
    pub summaries: Vec<OnsetSummary>,
    pub betti: Vec<usize>,
    pub n_max: usize,
}

impl FiberTheoremReport {
    /// Equality at every computed `n >= bound`, for each size.
    pub fn bound_respected(&self) -> bool {
        self.summaries.iter().zip(&self.bounds).all(|(s, &bound)| {
            self.verdicts.iter().filter(|v| v.r == s.r && v.n >= bound).all(|v| v.is_equal())
        })
    }
}

pub(crate) fn summarize(verdicts: &[MinorVerdict], betti: &[usize], r: usize, n_max: usize) -> OnsetSummary {
    let mine: Vec<&MinorVerdict> = verdicts.iter().filter(|v| v.r == r).collect();
    let first_equal = mine.iter().find(|v| v.is_equal()).map(|v| v.n);
    let onset = match mine.iter().rposition(|v| !v.is_equal()) {
        None => mine.first().map(|v| v.n),
        Some(k) => mine.get(k + 1).map(|v| v.n),
    };
    let beta_onset = match (1..=n_max.min(betti.len().saturating_sub(1))).rev().find(|&n| betti[n] < r) {
        None => Some(1),
        Some(n) if n < n_max.min(betti.len() - 1) => Some(n + 1),
        Some(_) => None,
    };
    OnsetSummary { r, first_equal, onset, beta_onset }
}

pub fn fiber_bound(r: usize, e1: usize, e2: usize) -> usize {
    (2 * r).div_ceil(e1 * e2) + 8
}

/// Minors of the minimal resolution of `M` over `R` for every `n` in `1..=n_max` and every
/// size up to `r`.
pub fn verify_theorem_fp(r: &FiberProductRing, m: &ModulePresentation, rmax: usize, n_max: usize, cap: Option<i32>) -> Result<FiberTheoremReport> {
    if r.embdim() < 3 {
        return Err(Error::HypothesisViolated(format!("embedding dimension {} is below 3", r.embdim())));
    }
    if !Arc::ptr_eq(m.ring(), &r.r) {
        return Err(Error::RingMismatch("the module must be over the fiber product".into()));
    }
    let res = minimal_resolution(m, ResolveOptions { n_max, cap, require_certified: false })?;
    if res.terminated() || res.length() < n_max {
        return Err(Error::HypothesisViolated("the module has finite projective dimension".into()));
    }
    let mut verdicts = Vec::new();
    for n in 1..=n_max {
        for rr in 1..=rmax {
            verdicts.push(minors_of_resolution(&res, n, rr)?);
        }
    }
    let betti = res.betti_numbers();
    let summaries = (1..=rmax).map(|rr| summarize(&verdicts, &betti, rr, n_max)).collect();
    let bounds = (1..=rmax).map(|rr| fiber_bound(rr, r.e1(), r.e2())).collect();
    Ok(FiberTheoremReport { e1: r.e1(), e2: r.e2(), bounds, verdicts, summaries, betti, n_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::resolution::verify_exactness;

    fn ring(names: &[&str], rels: &[&str]) -> Ring {
        RingPresentation::parse(Field::DEFAULT, names, rels).unwrap()
    }

    #[test]
    fn presentations() {
        let fp = fiber_product(&ring(&["x", "y"], &[]), &ring(&["z"], &[])).unwrap();
        let mut gb: Vec<String> = fp.r.groebner_basis().iter().map(|g| fp.r.show(g)).collect();
        gb.sort();
        assert_eq!(gb, ["x*z", "y*z"]);
        let fp = fiber_product(&ring(&["x"], &["x^3"]), &ring(&["y"], &["y^2"])).unwrap();
        assert_eq!((0..4).map(|d| fp.r.hilbert_function(d)).collect::<Vec<_>>(), [1, 2, 1, 0]);
        assert!(matches!(fiber_product(&ring(&["x"], &[]), &ring(&["x"], &[])), Err(Error::NameClash(_))));
    }

    #[test]
    fn lifted_koszul_is_not_exact() {
        let s = ring(&["x", "y"], &[]);
        let fp = fiber_product(&s, &ring(&["z"], &[])).unwrap();
        let res = minimal_resolution(&ModulePresentation::residue_field(&s), ResolveOptions::steps(3)).unwrap();
        let lifted = lift_complex(&res.differentials()[..2], &fp).unwrap();
        assert_eq!(lifted[0].to_string(), "[x, y]");
        let rep = verify_exactness(&lifted, 4).unwrap();
        assert!(rep.homology.iter().any(|&(pos, d, _)| pos == 1 && d == 2));
    }

    #[test]
    fn unit_entries_do_not_lift() {
        let s = ring(&["x"], &[]);
        let fp = fiber_product(&s, &ring(&["y"], &[])).unwrap();
        let a = GradedMatrix::from_rows(&s, vec![0], &[vec![s.parse_poly("1").unwrap()]]).unwrap();
        assert!(matches!(fp.lift_matrix(&a), Err(Error::NotMinimal { .. })));
    }

    #[test]
    fn moore_matches_direct() {
        let s = ring(&["x", "y"], &[]);
        let fp = fiber_product(&s, &ring(&["z"], &[])).unwrap();
        let moore = moore_resolution(&ModulePresentation::residue_field(&s), &fp, 6).unwrap();
        let direct = minimal_resolution(&ModulePresentation::residue_field(&fp.r), ResolveOptions::steps(6)).unwrap();
        assert_eq!(moore.resolution.betti_numbers(), direct.betti_numbers());
        assert_eq!(moore.rank(1), 3);
        assert!(moore.audit_blocks().passed());
        let rep = verify_exactness(moore.resolution.differentials(), 8).unwrap();
        assert!(rep.is_exact());
        assert!(moore.resolution.differentials().iter().all(|d| d.is_minimal()));
        let focus = moore.focus_blocks(5, 2);
        assert!(!focus.is_empty() && focus.iter().all(|f| f.verified));
    }

    #[test]
    fn artinian_factors() {
        let s = ring(&["x"], &["x^3"]);
        let fp = fiber_product(&s, &ring(&["y"], &["y^2"])).unwrap();
        let m = ModulePresentation::quotient(&s, &[s.parse_poly("x^2").unwrap()]).unwrap();
        let moore = moore_resolution(&m, &fp, 6).unwrap();
        let mr = ModulePresentation::quotient(&fp.r, &[fp.r.parse_poly("x^2").unwrap(), fp.r.parse_poly("y").unwrap()]).unwrap();
        let direct = minimal_resolution(&mr, ResolveOptions::steps(6)).unwrap();
        assert_eq!(moore.resolution.betti_numbers(), direct.betti_numbers());
        assert!(verify_exactness(moore.resolution.differentials(), 10).unwrap().is_exact());
        assert!(moore.audit_blocks().passed());
    }
}
