//! Kernels of graded maps, degree by degree, and pruning of unit entries.

use super::free::{FreeElem, GradedFreeModule, GradedMatrix, LayoutMul};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, KernelBuilder, SparseVec};

/// Output of [`syzygy_step_with`].
#[derive(Clone, Debug)]
pub struct Syzygies {
    /// Columns are minimal generators of the kernel; target is the source of the input.
    pub matrix: GradedMatrix,
    /// How many leading columns came from the preferred list.
    pub preferred: usize,
    /// Every kernel generator of degree at most this value is present.
    pub complete_through: i32,
}

/// Degree bound for kernel generators of a map out of `source`, when it exists: a
/// submodule of `source` over a ring with `m^(h+1) = 0` is generated in degrees at most
/// `max deg + h`.
pub fn certifying_cap(source: &GradedFreeModule) -> Option<i32> {
    let h = source.ring().artinian_top()?;
    Some(source.max_degree().unwrap_or(0) + h as i32)
}

/// Minimal generators of `ker A`, computed in every internal degree up to `cap`.
pub fn syzygy_step(a: &GradedMatrix, cap: i32) -> Result<GradedMatrix> {
    Ok(syzygy_step_with(a, cap, &[])?.matrix)
}

/// Like [`syzygy_step`], but the `preferred` kernel elements are made the first generators.
///
/// In each degree `d` the kernel `K_d` is computed by column elimination; `P_d`, the span of
/// `x_v K_{d-1}`, is the part already generated. Preferred elements of degree `d` must lie in
/// `K_d` and be independent modulo `P_d` and each other; any failure is reported as
/// `TrackingLost`. The kernel basis then completes them.
pub fn syzygy_step_with(a: &GradedMatrix, cap: i32, preferred: &[FreeElem]) -> Result<Syzygies> {
    let source = a.source();
    let ring = source.ring();
    let pf = ring.fp()?;
    let nvars = ring.nvars();
    let Some(dmin) = source.min_degree() else {
        return Ok(Syzygies { matrix: GradedMatrix::zero(GradedFreeModule::new(ring.clone(), vec![]), source.clone()), preferred: 0, complete_through: cap });
    };
    if cap < source.max_degree().unwrap_or(dmin) {
        return Err(Error::CapTooLow { cap, needed: source.max_degree().unwrap_or(dmin) });
    }
    let cap = match certifying_cap(source) {
        Some(c) => cap.min(c),
        None => cap,
    };
    for p in preferred {
        if p.degree > cap {
            return Err(Error::CapTooLow { cap, needed: p.degree });
        }
    }

    let mut images = a.images();
    let mut prev_kernel: Vec<SparseVec> = Vec::new();
    let mut pref_cols: Vec<FreeElem> = Vec::new();
    let mut rest_cols: Vec<FreeElem> = Vec::new();
    for d in dmin..=cap {
        let (imgs, src_layout, tgt_layout) = images.advance(d);
        let mut kb = KernelBuilder::new(pf, tgt_layout.dim());
        for v in imgs {
            kb.push(v.clone());
        }
        let kernel = kb.finish();
        let here: Vec<&FreeElem> = preferred.iter().filter(|p| p.degree == d).collect();
        if kernel.is_empty() {
            if let Some(p) = here.first() {
                return Err(Error::TrackingLost(format!("preferred element of degree {} is not in the kernel", p.degree)));
            }
            prev_kernel = kernel;
            continue;
        }
        let mut span = Echelon::new(pf, src_layout.dim());
        if !prev_kernel.is_empty() {
            let mul = LayoutMul::new(source, d - 1);
            'fill: for k in &prev_kernel {
                for v in 0..nvars {
                    span.insert(&mul.mul(k, v));
                    if span.rank() == kernel.len() {
                        break 'fill;
                    }
                }
            }
        }
        for p in here {
            let v = source.to_layout(p, &src_layout);
            let img = a.apply(p);
            if !img.is_zero() {
                return Err(Error::TrackingLost(format!("preferred element of degree {d} is not in the kernel")));
            }
            if !span.insert(&v) {
                return Err(Error::TrackingLost(format!(
                    "preferred element of degree {d} is not a minimal generator of the kernel"
                )));
            }
            pref_cols.push(p.clone());
        }
        for k in &kernel {
            if span.rank() == kernel.len() {
                break;
            }
            if span.insert(k) {
                rest_cols.push(source.from_layout(k, &src_layout));
            }
        }
        prev_kernel = kernel;
    }
    let npref = pref_cols.len();
    pref_cols.extend(rest_cols);
    Ok(Syzygies { matrix: GradedMatrix::from_columns(source.clone(), pref_cols), preferred: npref, complete_through: cap })
}

/// Indices of columns forming a minimal generating set of the column span, chosen greedily in
/// order of degree, then position.
pub fn minimal_column_subset(a: &GradedMatrix) -> Vec<usize> {
    let target = a.target();
    let ring = target.ring();
    let pf = ring.fp().expect("prime field");
    let mut order: Vec<usize> = (0..a.ncols()).filter(|&j| !a.column(j).is_zero()).collect();
    order.sort_by_key(|&j| (a.column(j).degree, j));
    let mut keep = Vec::new();
    let mut span: Option<(i32, Echelon)> = None;
    let mut k = 0;
    while k < order.len() {
        let d = a.column(order[k]).degree;
        // bring the span of already kept columns up to degree d
        let mut cur = match span.take() {
            None => Echelon::new(pf, target.layout(d).dim()),
            Some((sd, e)) => {
                let mut e = e;
                let mut sd = sd;
                while sd < d {
                    let mul = LayoutMul::new(target, sd);
                    let mut next = Echelon::new(pf, mul.to.dim());
                    'up: for row in e.rows() {
                        for v in 0..ring.nvars() {
                            next.insert(&mul.mul(row, v));
                            if next.is_full() {
                                break 'up;
                            }
                        }
                    }
                    e = next;
                    sd += 1;
                }
                e
            }
        };
        let layout = target.layout(d);
        while k < order.len() && a.column(order[k]).degree == d {
            let j = order[k];
            if cur.insert(&target.to_layout(a.column(j), &layout)) {
                keep.push(j);
            }
            k += 1;
        }
        span = Some((d, cur));
    }
    keep.sort_unstable();
    keep
}

/// Removes unit entries by Gaussian pruning, then zero and redundant columns. The cokernel is
/// unchanged up to isomorphism.
pub fn minimalize(a: &GradedMatrix) -> GradedMatrix {
    let ring = a.ring().clone();
    let pf = ring.fp().expect("prime field");
    let mut cur = a.clone();
    while let Some((i, j)) = cur.unit_entry() {
        let target = cur.target().clone();
        let c = cur.entry_vec(i, j).expect("unit").get(0);
        let cinv = pf.inv(c);
        let pivot = cur.column(j).clone();
        let mut cols: Vec<FreeElem> = Vec::new();
        for (k, col) in cur.columns().iter().enumerate() {
            if k == j {
                continue;
            }
            let mut col = col.clone();
            if let Some(aik) = col.get(i as u32).cloned() {
                let e = (col.degree - pivot.degree) as u32;
                let f = aik.scale(pf, pf.neg(cinv));
                let t = target.scale_elem(&pivot, e, &f);
                col = target.add_elems(&col, &t, 1);
            }
            debug_assert!(col.get(i as u32).is_none());
            cols.push(col);
        }
        let rows: Vec<usize> = (0..cur.nrows()).filter(|&r| r != i).collect();
        let tmp = GradedMatrix::from_columns(target, cols);
        let all: Vec<usize> = (0..tmp.ncols()).collect();
        cur = tmp.submatrix(&rows, &all);
    }
    let keep = minimal_column_subset(&cur);
    cur.submatrix(&(0..cur.nrows()).collect::<Vec<_>>(), &keep)
}
