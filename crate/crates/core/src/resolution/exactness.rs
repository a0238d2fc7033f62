use super::free::GradedMatrix;
use crate::error::{Error, Result};
use crate::linalg::rank_of;

/// Degree-wise homology of a complex `C_0 <- C_1 <- ... <- C_N`.
#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub cap: i32,
    /// Positions `i` (with both `∂_i` and `∂_{i+1}` present) that were examined.
    pub positions: Vec<usize>,
    /// `(position, degree, dim H_i(d))` for every nonzero homology group found.
    pub homology: Vec<(usize, i32, usize)>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.homology.is_empty()
    }
}

/// `rank(∂)_d` for `d` in `lo..=cap`.
fn ranks(a: &GradedMatrix, lo: i32, cap: i32) -> Vec<usize> {
    let pf = a.ring().fp().expect("prime field");
    let mut out = vec![0; (cap - lo + 1).max(0) as usize];
    let Some(dmin) = a.source().min_degree() else { return out };
    let mut im = a.images();
    for d in dmin..=cap {
        let (imgs, _, tgt) = im.advance(d);
        if d >= lo {
            out[(d - lo) as usize] = rank_of(pf, tgt.dim(), imgs.iter().cloned());
        }
    }
    out
}

/// `maps[i-1] = ∂_i: C_i -> C_{i-1}`. Checks `∂_i ∂_{i+1} = 0` and reports
/// `dim ker ∂_i - rank ∂_{i+1}` in every internal degree up to `cap`.
pub fn verify_exactness(maps: &[GradedMatrix], cap: i32) -> Result<ExactnessReport> {
    for (i, w) in maps.windows(2).enumerate() {
        let comp = w[0].compose(&w[1])?;
        if let Some((row, col)) = comp.first_nonzero() {
            return Err(Error::NotAComplex { at: i + 1, row, col });
        }
    }
    let lo = maps
        .iter()
        .flat_map(|m| m.source().min_degree().into_iter().chain(m.target().min_degree()))
        .min()
        .unwrap_or(0);
    let all: Vec<Vec<usize>> = maps.iter().map(|m| ranks(m, lo, cap)).collect();
    let mut homology = Vec::new();
    let positions: Vec<usize> = (1..maps.len()).collect();
    for &i in &positions {
        let c = maps[i - 1].source();
        for d in lo..=cap {
            let k = (d - lo) as usize;
            let h = c.hilbert_function(d) - all[i - 1][k] - all[i][k];
            if h > 0 {
                homology.push((i, d, h));
            }
        }
    }
    Ok(ExactnessReport { cap, positions, homology })
}
