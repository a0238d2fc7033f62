use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{Polynomial, PrimeField};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::ring::Ring;

/// Free module `⊕ R(-d_j)` with a fixed basis order.
#[derive(Clone)]
pub struct GradedFreeModule {
    ring: Ring,
    degrees: Vec<i32>,
}

impl fmt::Debug for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedFreeModule{:?}", self.degrees)
    }
}

/// Coordinates of the degree-`d` component: basis element `j` contributes the standard
/// monomials of degree `d - deg_j` starting at `offsets[j]`.
#[derive(Clone, Debug)]
pub struct Layout {
    pub d: i32,
    pub offsets: Vec<u32>,
}

impl Layout {
    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap_or(&0) as usize
    }

    pub fn block(&self, j: usize) -> std::ops::Range<u32> {
        self.offsets[j]..self.offsets[j + 1]
    }

    /// `(generator, monomial index)` of a flat coordinate.
    pub fn locate(&self, idx: u32) -> (usize, u32) {
        let j = self.offsets.partition_point(|&o| o <= idx) - 1;
        (j, idx - self.offsets[j])
    }
}

/// Homogeneous element of a free module: entries `(basis index, coordinates)` where entry `i`
/// has degree `degree - deg_i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElem {
    pub degree: i32,
    pub entries: Vec<(u32, SparseVec)>,
}

impl FreeElem {
    pub fn zero(degree: i32) -> FreeElem {
        FreeElem { degree, entries: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: u32) -> Option<&SparseVec> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }
}

impl GradedFreeModule {
    pub fn new(ring: Ring, degrees: Vec<i32>) -> GradedFreeModule {
        GradedFreeModule { ring, degrees }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().max()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().min()
    }

    pub fn shifted(&self, s: i32) -> GradedFreeModule {
        GradedFreeModule::new(self.ring.clone(), self.degrees.iter().map(|d| d + s).collect())
    }

    pub fn direct_sum(&self, other: &GradedFreeModule) -> GradedFreeModule {
        let mut d = self.degrees.clone();
        d.extend_from_slice(&other.degrees);
        GradedFreeModule::new(self.ring.clone(), d)
    }

    /// `R_{d - deg_j}` dimension, zero for negative or vanishing degrees.
    fn block_dim(&self, d: i32, j: usize) -> u32 {
        let e = d - self.degrees[j];
        if e < 0 || self.ring.artinian_top().is_some_and(|h| e > h as i32) {
            0
        } else {
            self.ring.hilbert_function(e as u32) as u32
        }
    }

    pub fn layout(&self, d: i32) -> Layout {
        let mut offsets = Vec::with_capacity(self.rank() + 1);
        offsets.push(0);
        let mut dims: HashMap<i32, u32> = HashMap::new();
        let mut acc = 0u32;
        for j in 0..self.rank() {
            let e = d - self.degrees[j];
            acc += *dims.entry(e).or_insert_with(|| self.block_dim(d, j));
            offsets.push(acc);
        }
        Layout { d, offsets }
    }

    /// `H_F(d)`.
    pub fn hilbert_function(&self, d: i32) -> usize {
        (0..self.rank()).map(|j| self.block_dim(d, j) as usize).sum()
    }

    pub fn to_layout(&self, x: &FreeElem, layout: &Layout) -> SparseVec {
        debug_assert_eq!(x.degree, layout.d);
        let mut out = Vec::new();
        for (i, v) in &x.entries {
            let off = layout.offsets[*i as usize];
            out.extend(v.iter().map(|(t, c)| (off + t, c)));
        }
        SparseVec::from_sorted(out)
    }

    pub fn from_layout(&self, v: &SparseVec, layout: &Layout) -> FreeElem {
        let mut entries: Vec<(u32, SparseVec)> = Vec::new();
        let mut cur: Option<(u32, Vec<(u32, u32)>)> = None;
        for (idx, c) in v.iter() {
            let (j, t) = layout.locate(idx);
            match &mut cur {
                Some((cj, buf)) if *cj == j as u32 => buf.push((t, c)),
                _ => {
                    if let Some((cj, buf)) = cur.take() {
                        entries.push((cj, SparseVec::from_sorted(buf)));
                    }
                    cur = Some((j as u32, vec![(t, c)]));
                }
            }
        }
        if let Some((cj, buf)) = cur {
            entries.push((cj, SparseVec::from_sorted(buf)));
        }
        FreeElem { degree: layout.d, entries }
    }

    pub fn unit_elem(&self, j: usize) -> FreeElem {
        FreeElem { degree: self.degrees[j], entries: vec![(j as u32, SparseVec::unit(0))] }
    }

    /// Scales an element by a homogeneous ring element of degree `e`.
    pub fn scale_elem(&self, x: &FreeElem, e: u32, a: &SparseVec) -> FreeElem {
        let mut entries = Vec::new();
        for (i, v) in &x.entries {
            let di = (x.degree - self.degrees[*i as usize]) as u32;
            let p = self.ring.mul_elems(di, v, e, a);
            if !p.is_zero() {
                entries.push((*i, p));
            }
        }
        FreeElem { degree: x.degree + e as i32, entries }
    }

    pub fn add_elems(&self, x: &FreeElem, y: &FreeElem, c: u32) -> FreeElem {
        let pf = self.ring.fp().expect("prime field");
        debug_assert!(x.is_zero() || y.is_zero() || x.degree == y.degree);
        let degree = if x.is_zero() { y.degree } else { x.degree };
        let mut map: std::collections::BTreeMap<u32, SparseVec> = x.entries.iter().cloned().collect();
        for (i, v) in &y.entries {
            let e = map.entry(*i).or_default();
            *e = e.axpy(pf, c, v);
        }
        FreeElem { degree, entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }
}

/// Multiplication by variables from degree `d` to `d + 1` in layout coordinates.
pub struct LayoutMul {
    pf: PrimeField,
    nvars: usize,
    pub from: Layout,
    pub to: Layout,
    tables: Vec<Option<Arc<Vec<SparseVec>>>>,
}

impl LayoutMul {
    pub fn new(module: &GradedFreeModule, d: i32) -> LayoutMul {
        let ring = module.ring();
        let from = module.layout(d);
        let to = module.layout(d + 1);
        let mut cache: HashMap<i32, Arc<Vec<SparseVec>>> = HashMap::new();
        let tables = (0..module.rank())
            .map(|j| {
                if from.offsets[j] == from.offsets[j + 1] {
                    return None;
                }
                let e = d - module.degrees()[j];
                Some(cache.entry(e).or_insert_with(|| ring.mul_table(e as u32)).clone())
            })
            .collect();
        LayoutMul { pf: ring.fp().expect("prime field"), nvars: ring.nvars(), from, to, tables }
    }

    pub fn mul(&self, x: &SparseVec, v: usize) -> SparseVec {
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(x.nnz());
        let mut j = 0usize;
        for (idx, c) in x.iter() {
            while self.from.offsets[j + 1] <= idx {
                j += 1;
            }
            let t = idx - self.from.offsets[j];
            let table = self.tables[j].as_ref().expect("nonempty block");
            let base = self.to.offsets[j];
            for (i, a) in table[t as usize * self.nvars + v].iter() {
                out.push((base + i, self.pf.mul(c, a)));
            }
        }
        SparseVec::from_unsorted(self.pf, out)
    }
}

/// Homogeneous map of graded free modules, stored by columns.
#[derive(Clone)]
pub struct GradedMatrix {
    source: GradedFreeModule,
    target: GradedFreeModule,
    cols: Vec<FreeElem>,
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        write!(f, "[")?;
        for i in 0..self.nrows() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.ncols()).map(|j| ring.show(&self.entry(i, j))).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl GradedMatrix {
    pub fn from_columns(target: GradedFreeModule, cols: Vec<FreeElem>) -> GradedMatrix {
        let source = GradedFreeModule::new(target.ring().clone(), cols.iter().map(|c| c.degree).collect());
        GradedMatrix { source, target, cols }
    }

    pub fn zero(source: GradedFreeModule, target: GradedFreeModule) -> GradedMatrix {
        let cols = source.degrees().iter().map(|&d| FreeElem::zero(d)).collect();
        GradedMatrix { source, target, cols }
    }

    /// Builds from rows of polynomials with explicit target and source degrees.
    pub fn from_polys(ring: &Ring, target_degrees: Vec<i32>, source_degrees: Vec<i32>, rows: &[Vec<Polynomial>]) -> Result<GradedMatrix> {
        if rows.len() != target_degrees.len() || rows.iter().any(|r| r.len() != source_degrees.len()) {
            return Err(Error::InvalidArgument("matrix shape does not match the degree lists".into()));
        }
        let mut cols = Vec::new();
        for (j, &dj) in source_degrees.iter().enumerate() {
            let mut entries = Vec::new();
            for (i, &di) in target_degrees.iter().enumerate() {
                if let Some((d, v)) = ring.elem_of(&rows[i][j])? {
                    if d as i32 != dj - di {
                        return Err(Error::NonHomogeneous(format!(
                            "entry ({i}, {j}) = {} has degree {d}, expected {}",
                            ring.show(&rows[i][j]),
                            dj - di
                        )));
                    }
                    entries.push((i as u32, v));
                }
            }
            cols.push(FreeElem { degree: dj, entries });
        }
        Ok(GradedMatrix {
            source: GradedFreeModule::new(ring.clone(), source_degrees),
            target: GradedFreeModule::new(ring.clone(), target_degrees),
            cols,
        })
    }

    /// Builds from rows, inferring each column degree from its nonzero entries.
    pub fn from_rows(ring: &Ring, target_degrees: Vec<i32>, rows: &[Vec<Polynomial>]) -> Result<GradedMatrix> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut source = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut deg = None;
            for (i, row) in rows.iter().enumerate() {
                let nf = ring.try_normal_form(&row[j])?;
                if let Some(d) = nf.degree() {
                    if !nf.is_homogeneous() {
                        return Err(Error::NonHomogeneous(ring.show(&nf)));
                    }
                    let cd = d as i32 + target_degrees[i];
                    if deg.is_some_and(|x| x != cd) {
                        return Err(Error::NonHomogeneous(format!("column {j} mixes degrees")));
                    }
                    deg = Some(cd);
                }
            }
            source.push(deg.ok_or_else(|| Error::InvalidArgument(format!("column {j} is zero; its degree is undetermined")))?);
        }
        GradedMatrix::from_polys(ring, target_degrees, source, rows)
    }

    pub fn ring(&self) -> &Ring {
        self.target.ring()
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn columns(&self) -> &[FreeElem] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &FreeElem {
        &self.cols[j]
    }

    /// Degree of entry `(i, j)`; may be negative, in which case the entry is zero.
    pub fn entry_degree(&self, i: usize, j: usize) -> i32 {
        self.source.degrees()[j] - self.target.degrees()[i]
    }

    pub fn entry_vec(&self, i: usize, j: usize) -> Option<&SparseVec> {
        self.cols[j].get(i as u32)
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        let ring = self.ring();
        match self.entry_vec(i, j) {
            Some(v) => ring.poly_of(self.entry_degree(i, j) as u32, v),
            None => Polynomial::zero(ring.field(), ring.nvars()),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.entries.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// First entry of degree zero (a unit), if any.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        for (j, c) in self.cols.iter().enumerate() {
            for (i, _) in &c.entries {
                if self.entry_degree(*i as usize, j) == 0 {
                    return Some((*i as usize, j));
                }
            }
        }
        None
    }

    pub fn is_minimal(&self) -> bool {
        self.unit_entry().is_none()
    }

    /// Image of a homogeneous element of the source.
    pub fn apply(&self, x: &FreeElem) -> FreeElem {
        let mut acc = FreeElem::zero(x.degree);
        for (j, a) in &x.entries {
            let e = (x.degree - self.source.degrees()[*j as usize]) as u32;
            let col = self.target.scale_elem(&self.cols[*j as usize], e, a);
            acc = self.target.add_elems(&acc, &col, 1);
        }
        acc.degree = x.degree;
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if other.target.degrees() != self.source.degrees() {
            return Err(Error::InvalidArgument("matrices are not composable".into()));
        }
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Ok(GradedMatrix { source: other.source.clone(), target: self.target.clone(), cols })
    }

    /// First nonzero entry of the matrix as `(row, col)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.cols.iter().enumerate().find_map(|(j, c)| c.entries.first().map(|(i, _)| (*i as usize, j)))
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        let ring = self.ring().clone();
        let target = GradedFreeModule::new(ring, rows.iter().map(|&i| self.target.degrees()[i]).collect());
        let pos: HashMap<u32, u32> = rows.iter().enumerate().map(|(k, &i)| (i as u32, k as u32)).collect();
        let new_cols: Vec<FreeElem> = cols
            .iter()
            .map(|&j| {
                let c = &self.cols[j];
                let mut entries: Vec<(u32, SparseVec)> =
                    c.entries.iter().filter_map(|(i, v)| pos.get(i).map(|&k| (k, v.clone()))).collect();
                entries.sort_by_key(|e| e.0);
                FreeElem { degree: c.degree, entries }
            })
            .collect();
        GradedMatrix::from_columns(target, new_cols)
    }

    /// Transpose with degrees negated and shifted by `shift`; `Hom(-, R)` of the map.
    pub fn dual(&self, shift: i32) -> GradedMatrix {
        let ring = self.ring().clone();
        let new_target = GradedFreeModule::new(ring.clone(), self.source.degrees().iter().map(|d| shift - d).collect());
        let new_source = GradedFreeModule::new(ring, self.target.degrees().iter().map(|d| shift - d).collect());
        let mut cols: Vec<FreeElem> = new_source.degrees().iter().map(|&d| FreeElem::zero(d)).collect();
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in &c.entries {
                cols[*i as usize].entries.push((j as u32, v.clone()));
            }
        }
        GradedMatrix { source: new_source, target: new_target, cols }
    }

    /// `A ⊗ I_l`, with row `i*l + p` and column `j*l + q`.
    pub fn kron_identity(&self, l: usize) -> GradedMatrix {
        self.kron_graded(&vec![0; l])
    }

    /// `A ⊗ id_L` for a free module `L` with the given generator degrees; row `i*l + p`
    /// has degree `deg_i + rest_p`.
    pub fn kron_graded(&self, rest: &[i32]) -> GradedMatrix {
        let ring = self.ring().clone();
        let l = rest.len();
        let tdeg = self.target.degrees().iter().flat_map(|&d| rest.iter().map(move |&e| d + e)).collect();
        let target = GradedFreeModule::new(ring, tdeg);
        let mut cols = Vec::new();
        for c in &self.cols {
            for (q, &e) in rest.iter().enumerate() {
                cols.push(FreeElem {
                    degree: c.degree + e,
                    entries: c.entries.iter().map(|(i, v)| (*i * l as u32 + q as u32, v.clone())).collect(),
                });
            }
        }
        GradedMatrix::from_columns(target, cols)
    }

    /// The same map with every source and target degree raised by `s`.
    pub fn shifted(&self, s: i32) -> GradedMatrix {
        let cols = self.cols.iter().map(|c| FreeElem { degree: c.degree + s, entries: c.entries.clone() }).collect();
        GradedMatrix::from_columns(self.target.shifted(s), cols)
    }

    /// Block matrix from a grid of optional blocks; `None` is a zero block. Row-block and
    /// column-block modules are taken from the given lists.
    pub fn block(row_modules: &[GradedFreeModule], col_modules: &[GradedFreeModule], blocks: &[Vec<Option<&GradedMatrix>>]) -> GradedMatrix {
        let ring = row_modules.first().or(col_modules.first()).expect("nonempty").ring().clone();
        let mut tdeg = Vec::new();
        let mut row_off = Vec::new();
        for m in row_modules {
            row_off.push(tdeg.len() as u32);
            tdeg.extend_from_slice(m.degrees());
        }
        let target = GradedFreeModule::new(ring, tdeg);
        let mut cols = Vec::new();
        for (bj, cm) in col_modules.iter().enumerate() {
            for (j, &d) in cm.degrees().iter().enumerate() {
                let mut entries = Vec::new();
                for (bi, row) in blocks.iter().enumerate() {
                    if let Some(b) = row[bj] {
                        debug_assert_eq!(b.ncols(), cm.rank());
                        debug_assert_eq!(b.column(j).degree, d);
                        entries.extend(b.column(j).entries.iter().map(|(i, v)| (i + row_off[bi], v.clone())));
                    }
                }
                entries.sort_by_key(|e| e.0);
                cols.push(FreeElem { degree: d, entries });
            }
        }
        GradedMatrix::from_columns(target, cols)
    }

    /// Same entries over a ring with identical standard monomial bases (for example a copy
    /// built from the same presentation).
    pub fn with_target(&self, target: GradedFreeModule) -> GradedMatrix {
        GradedMatrix::from_columns(target, self.cols.clone())
    }

    /// Dense polynomial rows.
    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows()).map(|i| (0..self.ncols()).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// Whether `self` appears verbatim as the submatrix on `rows` x `cols` of `big`.
    pub fn is_submatrix_of(&self, big: &GradedMatrix, rows: &[usize], cols: &[usize]) -> bool {
        if rows.len() != self.nrows() || cols.len() != self.ncols() {
            return false;
        }
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                if i >= big.nrows() || j >= big.ncols() || self.entry_vec(a, b) != big.entry_vec(i, j) {
                    return false;
                }
                if self.entry_vec(a, b).is_some() && self.entry_degree(a, b) != big.entry_degree(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Images of the source basis in degree `d`, in target layout coordinates.
    pub fn images(&self) -> Images<'_> {
        Images { matrix: self, d: None, images: Vec::new() }
    }
}

/// Walks internal degrees upward, producing images of every source basis element
/// `(j, monomial)` via `image(j, x_v m) = x_v image(j, m)`.
pub struct Images<'a> {
    matrix: &'a GradedMatrix,
    d: Option<i32>,
    images: Vec<SparseVec>,
}

impl Images<'_> {
    /// Advances to degree `d` (must be the next degree, or any degree on the first call
    /// provided it is at most the minimal source degree).
    pub fn advance(&mut self, d: i32) -> (&[SparseVec], Layout, Layout) {
        let m = self.matrix;
        let src = m.source().layout(d);
        let tgt = m.target().layout(d);
        let prev_src = m.source().layout(d - 1);
        let mul = if self.d.is_some() { Some(LayoutMul::new(m.target(), d - 1)) } else { None };
        if let Some(p) = self.d {
            assert_eq!(p + 1, d, "images advance one degree at a time");
        }
        let ring = m.ring();
        let mut out = Vec::with_capacity(src.dim());
        for j in 0..m.ncols() {
            let r = src.block(j);
            if r.is_empty() {
                continue;
            }
            let e = d - m.source().degrees()[j];
            if e == 0 {
                out.push(m.target().to_layout(&m.cols[j], &tgt));
                continue;
            }
            let std = ring.standard_monomials(e as u32);
            let base = prev_src.offsets[j] as usize;
            let mul = mul.as_ref().expect("previous degree computed");
            for t in 0..r.len() as u32 {
                let (p, v) = std.parent(t);
                out.push(mul.mul(&self.images[base + p as usize], v as usize));
            }
        }
        self.images = out;
        self.d = Some(d);
        (&self.images, src, tgt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::ring::RingPresentation;

    #[test]
    fn compose_and_images_agree() {
        let r = RingPresentation::parse(Field::DEFAULT, &["x", "y"], &["x*y"]).unwrap();
        let p = |s: &str| r.parse_poly(s).unwrap();
        let a = GradedMatrix::from_rows(&r, vec![0], &[vec![p("x"), p("y")]]).unwrap();
        let b = GradedMatrix::from_rows(&r, vec![1, 1], &[vec![p("y"), p("0")], vec![p("0"), p("x")]]).unwrap();
        assert!(a.compose(&b).unwrap().is_zero());
        assert_eq!(b.to_string(), "[y, 0; 0, x]");
        // images in degree 3 of the source of a: x*{x^2, y^2}... via layout walk
        let mut im = a.images();
        im.advance(1);
        im.advance(2);
        let (imgs, src, tgt) = im.advance(3);
        assert_eq!(src.dim(), 2 * r.hilbert_function(2));
        assert_eq!(tgt.dim(), r.hilbert_function(3));
        let nonzero = imgs.iter().filter(|v| !v.is_zero()).count();
        assert_eq!(nonzero, 2);
        let k = a.kron_identity(2);
        assert_eq!(k.nrows(), 2);
        assert_eq!(k.ncols(), 4);
        assert!(a.is_submatrix_of(&k, &[0], &[0, 2]));
        let d = b.dual(1);
        assert_eq!(d.to_string(), "[y, 0; 0, x]");
    }
}
