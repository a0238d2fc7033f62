//! Sparse exact linear algebra over F_p.
//!
//! Vectors are sorted `(index, value)` lists. [`Echelon`] keeps rows with distinct leading
//! indices (the smallest index of each row, normalized to 1); membership and rank only need
//! the leading entries, so rows are never fully back-substituted.

use crate::arith::PrimeField;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(u32, u32)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: u32) -> Self {
        SparseVec { entries: vec![(i, 1)] }
    }

    /// From unsorted entries; sums repeated indices and drops zeros.
    pub fn from_unsorted(f: PrimeField, mut entries: Vec<(u32, u32)>) -> Self {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = f.add(last.1, v),
                _ => out.push((i, v)),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVec { entries: out }
    }

    /// From entries already sorted by index with no zeros or repeats.
    pub fn from_sorted(entries: Vec<(u32, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1 != 0));
        SparseVec { entries }
    }

    pub fn from_dense(f: PrimeField, dense: &[u32]) -> Self {
        let _ = f;
        SparseVec {
            entries: dense.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i as u32, v)).collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<u32> {
        let mut d = vec![0; dim];
        for &(i, v) in &self.entries {
            d[i as usize] = v;
        }
        d
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn lead(&self) -> Option<(u32, u32)> {
        self.entries.first().copied()
    }

    pub fn get(&self, i: u32) -> u32 {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1,
            Err(_) => 0,
        }
    }

    pub fn scale(&self, f: PrimeField, c: u32) -> SparseVec {
        if c == 0 {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|&(i, v)| (i, f.mul(v, c))).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, f: PrimeField, c: u32, other: &SparseVec) -> SparseVec {
        if c == 0 {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ia, va) = a[i];
            let (ib, vb) = b[j];
            if ia < ib {
                out.push((ia, va));
                i += 1;
            } else if ib < ia {
                out.push((ib, f.mul(c, vb)));
                j += 1;
            } else {
                let s = f.add(va, f.mul(c, vb));
                if s != 0 {
                    out.push((ia, s));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(ib, vb)| (ib, f.mul(c, vb))));
        SparseVec { entries: out }
    }

    pub fn add(&self, f: PrimeField, other: &SparseVec) -> SparseVec {
        self.axpy(f, 1, other)
    }

    pub fn sub(&self, f: PrimeField, other: &SparseVec) -> SparseVec {
        self.axpy(f, f.neg(1), other)
    }

    /// Shifts every index by `offset`.
    pub fn shifted(&self, offset: u32) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|&(i, v)| (i + offset, v)).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.entries.iter().copied()
    }
}

/// Row-echelon basis of a subspace of `F_p^dim`.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivot_row: vec![NO_PIVOT; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Eliminates leading entries until the lead is not a pivot; zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let f = self.field;
        let mut v = v.clone();
        while let Some((i, c)) = v.lead() {
            let r = self.pivot_row[i as usize];
            if r == NO_PIVOT {
                break;
            }
            v = v.axpy(f, f.neg(c), &self.rows[r as usize]);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, r: SparseVec) -> bool {
        let Some((i, c)) = r.lead() else {
            return false;
        };
        let r = r.scale(self.field, self.field.inv(c));
        self.pivot_row[i as usize] = self.rows.len() as u32;
        self.rows.push(r);
        true
    }

    /// First coordinate that is not a pivot: its unit vector lies outside the span.
    pub fn first_non_pivot(&self) -> Option<u32> {
        self.pivot_row.iter().position(|&r| r == NO_PIVOT).map(|i| i as u32)
    }

    /// Unit vectors completing the rows to a basis of the whole space.
    pub fn complement_units(&self) -> Vec<u32> {
        (0..self.dim as u32).filter(|&i| self.pivot_row[i as usize] == NO_PIVOT).collect()
    }
}

/// Kernel of a linear map given by the images of the source basis vectors.
///
/// Column `j` is reduced against the previously inserted images while tracking the
/// combination of source vectors; a column that reduces to zero yields the kernel vector
/// `e_j - (tracked combination)`. The basis is deterministic in the column order.
pub struct KernelBuilder {
    field: PrimeField,
    pivot_row: Vec<u32>,
    rows: Vec<(SparseVec, SparseVec)>,
    kernel: Vec<SparseVec>,
    ncols: u32,
}

impl KernelBuilder {
    pub fn new(field: PrimeField, target_dim: usize) -> Self {
        KernelBuilder { field, pivot_row: vec![NO_PIVOT; target_dim], rows: Vec::new(), kernel: Vec::new(), ncols: 0 }
    }

    /// Feeds the image of the next source basis vector.
    pub fn push(&mut self, image: SparseVec) {
        let f = self.field;
        let j = self.ncols;
        self.ncols += 1;
        let mut v = image;
        let mut comb = SparseVec::unit(j);
        while let Some((i, c)) = v.lead() {
            let r = self.pivot_row[i as usize];
            if r == NO_PIVOT {
                let inv = f.inv(c);
                self.pivot_row[i as usize] = self.rows.len() as u32;
                self.rows.push((v.scale(f, inv), comb.scale(f, inv)));
                return;
            }
            let (row, rc) = &self.rows[r as usize];
            let m = f.neg(c);
            v = v.axpy(f, m, row);
            comb = comb.axpy(f, m, rc);
        }
        self.kernel.push(comb);
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn finish(self) -> Vec<SparseVec> {
        self.kernel
    }
}

/// Rank of the span of the given vectors.
pub fn rank_of(field: PrimeField, dim: usize, vecs: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new(field, dim);
    for v in vecs {
        e.insert(&v);
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

/// Solves `sum_j x_j * cols[j] = target` if possible.
pub fn solve(field: PrimeField, dim: usize, cols: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let f = field;
    let mut pivot_row = vec![NO_PIVOT; dim];
    let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut v = c.clone();
        let mut comb = SparseVec::unit(j as u32);
        while let Some((i, a)) = v.lead() {
            let r = pivot_row[i as usize];
            if r == NO_PIVOT {
                let inv = f.inv(a);
                pivot_row[i as usize] = rows.len() as u32;
                rows.push((v.scale(f, inv), comb.scale(f, inv)));
                break;
            }
            let (row, rc) = &rows[r as usize];
            v = v.axpy(f, f.neg(a), row);
            comb = comb.axpy(f, f.neg(a), rc);
        }
    }
    let mut v = target.clone();
    let mut x = SparseVec::new();
    while let Some((i, a)) = v.lead() {
        let r = pivot_row[i as usize];
        if r == NO_PIVOT {
            return None;
        }
        let (row, rc) = &rows[r as usize];
        v = v.axpy(f, f.neg(a), row);
        x = x.axpy(f, a, rc);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F: PrimeField = PrimeField::new(101);

    fn dense_rank(mut m: Vec<Vec<u32>>) -> usize {
        let f = F;
        let mut rank = 0;
        let ncols = m.first().map_or(0, |r| r.len());
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, p);
            let inv = f.inv(m[rank][c]);
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let k = f.mul(m[r][c], inv);
                    for cc in 0..ncols {
                        let t = f.mul(k, m[rank][cc]);
                        m[r][cc] = f.sub(m[r][cc], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn axpy_cancels() {
        let a = SparseVec::from_unsorted(F, vec![(3, 2), (1, 5)]);
        let b = a.scale(F, 100);
        assert!(a.add(F, &b).is_zero());
        assert_eq!(a.lead(), Some((1, 5)));
    }

    proptest! {
        #[test]
        fn rank_matches_dense_elimination(rows in proptest::collection::vec(proptest::collection::vec(0u32..3, 5), 0..7)) {
            let sparse: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_dense(F, r)).collect();
            prop_assert_eq!(rank_of(F, 5, sparse.clone()), dense_rank(rows.clone()));
            // kernel of the map whose columns are these vectors
            let mut kb = KernelBuilder::new(F, 5);
            for v in &sparse { kb.push(v.clone()); }
            let rank = kb.rank();
            let ker = kb.finish();
            prop_assert_eq!(ker.len() + rank, sparse.len());
            for k in &ker {
                let mut acc = SparseVec::new();
                for (j, c) in k.iter() { acc = acc.axpy(F, c, &sparse[j as usize]); }
                prop_assert!(acc.is_zero());
            }
        }

        #[test]
        fn solve_finds_preimages(cols in proptest::collection::vec(proptest::collection::vec(0u32..4, 4), 1..5), x in proptest::collection::vec(0u32..4, 5)) {
            let sparse: Vec<SparseVec> = cols.iter().map(|r| SparseVec::from_dense(F, r)).collect();
            let mut t = SparseVec::new();
            for (j, v) in sparse.iter().enumerate() { t = t.axpy(F, x[j], v); }
            let sol = solve(F, 4, &sparse, &t).expect("target is in the span");
            let mut back = SparseVec::new();
            for (j, c) in sol.iter() { back = back.axpy(F, c, &sparse[j as usize]); }
            prop_assert_eq!(back, t);
        }
    }
}
