//! Ideals of `r x r` minors of graded matrices and of resolution differentials.

use std::fmt;
use std::ops::ControlFlow;

use crate::arith::Polynomial;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::resolution::{GradedMatrix, Resolution};
use crate::ring::{max_ideal_power, GradedIdeal, Ring};

/// Above this many column subsets the full minor ideal is not enumerated.
const FULL_ENUMERATION_BUDGET: u64 = 2_000_000;

/// A homogeneous entry: `(degree, coordinates)`.
type Entry = Option<(i32, SparseVec)>;

/// Determinant by cofactor expansion along the first row; `deg` is the formal degree of
/// the result.
pub fn determinant(ring: &Ring, m: &[Vec<Entry>], deg: i32) -> SparseVec {
    let pf = ring.fp().expect("prime field");
    let r = m.len();
    if deg < 0 || ring.artinian_top().is_some_and(|h| deg > h as i32) {
        return SparseVec::new();
    }
    if r == 0 {
        return SparseVec::unit(0);
    }
    if r == 1 {
        return m[0][0].as_ref().map(|e| e.1.clone()).unwrap_or_default();
    }
    let mut acc = SparseVec::new();
    for (k, e) in m[0].iter().enumerate() {
        let Some((de, a)) = e else { continue };
        let minor: Vec<Vec<Entry>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != k).map(|(_, x)| x.clone()).collect()).collect();
        let sub = determinant(ring, &minor, deg - de);
        if sub.is_zero() {
            continue;
        }
        let prod = ring.mul_elems(*de as u32, a, (deg - de) as u32, &sub);
        let sign = if k % 2 == 0 { 1 } else { pf.neg(1) };
        acc = acc.axpy(pf, sign, &prod);
    }
    acc
}

/// Visits every `r x r` submatrix that can have a nonzero determinant: column subsets in
/// lexicographic order, rows drawn from the union of the chosen columns' supports.
/// With `linear_only`, entries of degree other than one are ignored and only submatrices
/// of formal degree `r` are visited; their determinants span the degree-`r` part of `I_r`.
fn for_each_minor<F>(a: &GradedMatrix, r: usize, linear_only: bool, mut f: F)
where
    F: FnMut(&[usize], &[usize], i32, SparseVec) -> ControlFlow<()>,
{
    let ring = a.ring().clone();
    let support: Vec<Vec<usize>> = (0..a.ncols())
        .map(|j| {
            a.column(j)
                .entries
                .iter()
                .filter(|(i, _)| !linear_only || a.entry_degree(*i as usize, j) == 1)
                .map(|(i, _)| *i as usize)
                .collect()
        })
        .collect();
    let cols: Vec<usize> = (0..a.ncols()).filter(|&j| !support[j].is_empty()).collect();
    let mut chosen: Vec<usize> = Vec::new();

    fn rec<F>(
        a: &GradedMatrix,
        ring: &Ring,
        r: usize,
        linear_only: bool,
        support: &[Vec<usize>],
        cols: &[usize],
        start: usize,
        chosen: &mut Vec<usize>,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[usize], i32, SparseVec) -> ControlFlow<()>,
    {
        if chosen.len() == r {
            let mut rows: Vec<usize> = chosen.iter().flat_map(|&j| support[j].iter().copied()).collect();
            rows.sort_unstable();
            rows.dedup();
            if rows.len() < r {
                return ControlFlow::Continue(());
            }
            let mut pick: Vec<usize> = (0..r).collect();
            loop {
                let rs: Vec<usize> = pick.iter().map(|&p| rows[p]).collect();
                let deg: i32 = chosen.iter().map(|&j| a.source().degrees()[j]).sum::<i32>()
                    - rs.iter().map(|&i| a.target().degrees()[i]).sum::<i32>();
                if !linear_only || deg == r as i32 {
                    let m: Vec<Vec<Entry>> = rs
                        .iter()
                        .map(|&i| {
                            chosen
                                .iter()
                                .map(|&j| {
                                    let d = a.entry_degree(i, j);
                                    if linear_only && d != 1 {
                                        return None;
                                    }
                                    a.entry_vec(i, j).map(|v| (d, v.clone()))
                                })
                                .collect()
                        })
                        .collect();
                    let det = determinant(ring, &m, deg);
                    if !det.is_zero() {
                        f(&rs, chosen, deg, det)?;
                    }
                }
                // next row combination
                let mut k = r;
                while k > 0 && pick[k - 1] == rows.len() - r + k - 1 {
                    k -= 1;
                }
                if k == 0 {
                    break;
                }
                pick[k - 1] += 1;
                for q in k..r {
                    pick[q] = pick[q - 1] + 1;
                }
            }
            return ControlFlow::Continue(());
        }
        for idx in start..cols.len() {
            if cols.len() - idx < r - chosen.len() {
                break;
            }
            chosen.push(cols[idx]);
            let flow = rec(a, ring, r, linear_only, support, cols, idx + 1, chosen, f);
            chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    let _ = rec(a, &ring, r, linear_only, &support, &cols, 0, &mut chosen, &mut f);
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k.min(n) {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// `I_r(A)`: unit ideal for `r = 0`, zero ideal when `r` exceeds the matrix size.
pub fn minors_ideal(a: &GradedMatrix, r: usize) -> GradedIdeal {
    let ring = a.ring().clone();
    if r == 0 {
        return GradedIdeal::unit(ring);
    }
    let mut gens = Vec::new();
    for_each_minor(a, r, false, |_, _, deg, det| {
        gens.push((deg as u32, det));
        ControlFlow::Continue(())
    });
    GradedIdeal::from_vectors(ring, gens)
}

/// Degree-`r` component of `I_r(A)`, stopping once it fills `R_r`.
pub fn degree_r_span(a: &GradedMatrix, r: usize) -> Echelon {
    let ring = a.ring();
    let pf = ring.fp().expect("prime field");
    let dim = ring.hilbert_function(r as u32);
    let mut e = Echelon::new(pf, dim);
    if dim == 0 {
        return e;
    }
    for_each_minor(a, r, true, |_, _, _, det| {
        e.insert(&det);
        if e.is_full() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    e
}

/// Whether every nonzero minor of size `r` lies in `m^r` (no component of degree `< r`).
pub fn check_minors_in_mr(a: &GradedMatrix, r: usize) -> bool {
    let mut ok = true;
    for_each_minor(a, r, false, |_, _, deg, _| {
        if deg < r as i32 {
            ok = false;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    ok
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorRelation {
    Equal,
    Proper,
    Zero,
}

/// `I_{n,r}` compared with `m^r`.
#[derive(Clone, Debug)]
pub struct MinorVerdict {
    pub n: usize,
    pub r: usize,
    pub relation: MinorRelation,
    pub certified: bool,
    /// Degree cap of an uncertified step.
    pub up_to: Option<i32>,
    /// Minimal generators of the ideal (when it was enumerated).
    pub generators: Option<Vec<String>>,
    /// An element of `m^r` outside the ideal, for proper verdicts.
    pub witness: Option<String>,
}

impl MinorVerdict {
    pub fn is_equal(&self) -> bool {
        self.relation == MinorRelation::Equal
    }

    pub fn power(r: usize) -> String {
        if r == 1 {
            "m".to_string()
        } else {
            format!("m^{r}")
        }
    }

    pub fn ideal_text(&self) -> String {
        match self.relation {
            MinorRelation::Equal => Self::power(self.r),
            MinorRelation::Zero => "0".to_string(),
            MinorRelation::Proper => match &self.generators {
                Some(g) => format!("({})", g.join(", ")),
                None => "(not enumerated)".to_string(),
            },
        }
    }

    pub fn flag(&self) -> String {
        match (self.certified, self.up_to) {
            (true, _) => "certified".to_string(),
            (false, Some(d)) => format!("up to degree {d}"),
            (false, None) => "uncertified".to_string(),
        }
    }
}

impl fmt::Display for MinorVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            MinorRelation::Equal => format!("= {}", Self::power(self.r)),
            _ => format!("= {} ⊊ {}", self.ideal_text(), Self::power(self.r)),
        };
        write!(f, "I(n={}, r={}) {} [{}]", self.n, self.r, rel, self.flag())
    }
}

/// Compares `I_r(∂_n)` with `m^r`.
///
/// Only minors of formal degree `r` reach degree `r`, and `I_r ⊆ m^r` holds for minimal
/// matrices, so equality is decided by whether those minors span `R_r`. Positive verdicts
/// are exact even for truncated steps, whose columns are genuine minimal generators.
pub fn minors_of_resolution(res: &Resolution, n: usize, r: usize) -> Result<MinorVerdict> {
    if n == 0 || n > res.length() {
        return Err(Error::InvalidArgument(format!("step {n} outside 1..={}", res.length())));
    }
    let a = res.differential(n);
    let ring = res.ring();
    let completeness = res.completeness(n);
    let (certified_step, up_to) = match completeness {
        crate::resolution::Completeness::Certified => (true, None),
        crate::resolution::Completeness::Through(d) => (false, Some(d)),
    };
    let span = degree_r_span(a, r);
    if span.is_full() {
        return Ok(MinorVerdict { n, r, relation: MinorRelation::Equal, certified: true, up_to: None, generators: None, witness: None });
    }
    let witness = span.first_non_pivot().map(|i| ring.show(&ring.poly_of(r as u32, &SparseVec::unit(i))));
    let enumerable = binomial(a.ncols() as u64, r as u64) <= FULL_ENUMERATION_BUDGET;
    let (relation, generators) = if enumerable {
        let ideal = minors_ideal(a, r);
        if ideal.is_zero() {
            (MinorRelation::Zero, Some(Vec::new()))
        } else {
            (MinorRelation::Proper, Some(ideal.minimal_generators().iter().map(|g| ring.show(g)).collect()))
        }
    } else {
        (MinorRelation::Proper, None)
    };
    Ok(MinorVerdict { n, r, relation, certified: certified_step, up_to, generators, witness })
}

/// Product `I_{r_1}(A) ... I_{r_l}(A)`.
pub fn product_of_minor_ideals(a: &GradedMatrix, composition: &[usize]) -> GradedIdeal {
    let mut acc = GradedIdeal::unit(a.ring().clone());
    for &ri in composition {
        acc = acc.product(&minors_ideal(a, ri));
    }
    acc
}

/// With `A ⊗ I_l` sitting in `B` on the given rows and columns, checks
/// `I_{r_1}(A) ... I_{r_l}(A) ⊆ I_r(B)` for `r = Σ r_i`.
pub fn check_tensor_submatrix_law(a: &GradedMatrix, l: usize, b: &GradedMatrix, rows: &[usize], cols: &[usize], composition: &[usize]) -> Result<bool> {
    if composition.len() != l {
        return Err(Error::BadEmbedding(format!("composition has {} parts, expected {l}", composition.len())));
    }
    let kron = a.kron_identity(l);
    if !kron.is_submatrix_of(b, rows, cols) {
        return Err(Error::BadEmbedding("A ⊗ I_l is not the submatrix of B at the given indices".into()));
    }
    let r: usize = composition.iter().sum();
    let lhs = product_of_minor_ideals(a, composition);
    let rhs = minors_ideal(b, r);
    Ok(lhs.is_subset_of(&rhs))
}

/// For `N` a direct summand of `Ω^n(M)`: checks `I_{m,r}(N) ⊆ I_{n+m,r}(M)`.
pub fn check_summand_inclusion(res_m: &Resolution, res_n: &Resolution, n: usize, m: usize, r: usize) -> Result<bool> {
    if m == 0 || m > res_n.length() || n + m > res_m.length() {
        return Err(Error::DepthTooLow { have: res_m.length().min(res_n.length()), needed: n + m });
    }
    let small = minors_ideal(res_n.differential(m), r);
    let big = minors_ideal(res_m.differential(n + m), r);
    if !std::sync::Arc::ptr_eq(small.ring(), big.ring()) {
        return Err(Error::RingMismatch("resolutions over different rings".into()));
    }
    Ok(small.is_subset_of(&big))
}

/// `m^r` for reporting.
pub fn max_power(ring: &Ring, r: usize) -> GradedIdeal {
    max_ideal_power(ring, r as u32)
}

/// Determinant by the permutation sum over polynomials; the oracle for [`determinant`].
pub fn determinant_by_permutations(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = Polynomial::zero(ring.field(), ring.nvars());
    loop {
        let mut sign = 1i64;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    sign = -sign;
                }
            }
        }
        let mut term = Polynomial::constant(ring.field(), ring.nvars(), ring.field().from_i64(sign));
        for (i, &p) in perm.iter().enumerate() {
            term = ring.mul(&term, &m[i][p]);
        }
        acc = &acc + &term;
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    ring.normal_form(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::ring::{ideal_compare, IdealRelation, RingPresentation};

    fn ring(names: &[&str], rels: &[&str]) -> Ring {
        RingPresentation::parse(Field::DEFAULT, names, rels).unwrap()
    }

    fn mat(r: &Ring, tdeg: Vec<i32>, rows: &[&[&str]]) -> GradedMatrix {
        let rows: Vec<Vec<_>> = rows.iter().map(|row| row.iter().map(|s| r.parse_poly(s).unwrap()).collect()).collect();
        GradedMatrix::from_rows(r, tdeg, &rows).unwrap()
    }

    #[test]
    fn small_cases() {
        let r = ring(&["x", "y"], &["x*y"]);
        let a = mat(&r, vec![1, 1], &[&["y", "0"], &["0", "x"]]);
        let i1 = minors_ideal(&a, 1);
        assert_eq!(ideal_compare(&i1, &max_power(&r, 1), 2).unwrap().relation, IdealRelation::Equal);
        assert!(minors_ideal(&a, 2).is_zero());
        assert!(minors_ideal(&a, 3).is_zero());
        assert_eq!(minors_ideal(&a, 0).to_string(), "(1)");
        let c = ring(&["x"], &["x^3"]);
        assert_eq!(minors_ideal(&mat(&c, vec![0], &[&["x^2"]]), 1).to_string(), "(x^2)");
    }

    #[test]
    fn laplace_matches_permutation_sum() {
        let r = ring(&["x", "y", "z"], &["x*z", "y*z"]);
        let rows = [["x", "y", "z"], ["y", "z", "x"], ["x + z", "y", "x - y"]];
        let polys: Vec<Vec<Polynomial>> = rows.iter().map(|row| row.iter().map(|s| r.parse_poly(s).unwrap()).collect()).collect();
        let a = GradedMatrix::from_rows(&r, vec![0, 0, 0], &polys).unwrap();
        let entries: Vec<Vec<Entry>> = (0..3).map(|i| (0..3).map(|j| a.entry_vec(i, j).map(|v| (1, v.clone()))).collect()).collect();
        let fast = r.poly_of(3, &determinant(&r, &entries, 3));
        assert_eq!(fast, determinant_by_permutations(&r, &polys));
    }

    #[test]
    fn prop_2_2_example() {
        let r = ring(&["x", "y", "z"], &["x*z", "y*z"]);
        let a = mat(&r, vec![0, 0], &[&["x", "y"], &["z", "x"]]);
        assert!(check_minors_in_mr(&a, 2));
        let i2 = minors_ideal(&a, 2);
        let want = GradedIdeal::new(r.clone(), &[r.parse_poly("x^2 - y*z").unwrap()]).unwrap();
        assert_eq!(ideal_compare(&i2, &want, 2).unwrap().relation, IdealRelation::Equal);
    }

    #[test]
    fn tensor_law_diagonal() {
        let c = ring(&["x"], &["x^3"]);
        let a = mat(&c, vec![0], &[&["x"]]);
        let rows: Vec<Vec<Polynomial>> =
            [["x", "0", "0"], ["0", "x", "0"], ["0", "0", "0"]].iter().map(|r| r.iter().map(|s| c.parse_poly(s).unwrap()).collect()).collect();
        let b = GradedMatrix::from_polys(&c, vec![0, 0, 0], vec![1, 1, 1], &rows).unwrap();
        assert!(check_tensor_submatrix_law(&a, 2, &b, &[0, 1], &[0, 1], &[1, 1]).unwrap());
        assert!(matches!(check_tensor_submatrix_law(&a, 2, &b, &[0, 2], &[0, 1], &[1, 1]), Err(Error::BadEmbedding(_))));
    }
}
