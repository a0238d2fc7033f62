use std::fmt;
use std::sync::{Arc, Mutex};

use super::presentation::Ring;
use crate::arith::Polynomial;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};

/// Homogeneous ideal of a graded ring, with degree-wise spans computed on demand.
pub struct GradedIdeal {
    ring: Ring,
    gens: Vec<(u32, SparseVec)>,
    spans: Mutex<Vec<Arc<Echelon>>>,
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        GradedIdeal::from_vectors(self.ring.clone(), self.gens.clone())
    }
}

impl fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedIdeal {
    /// Minimal generators, e.g. `(x1, x2^2)`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.minimal_generators();
        if gens.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = gens.iter().map(|g| self.ring.show(g)).collect();
        write!(f, "({})", s.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealRelation {
    Equal,
    /// The first ideal is strictly contained in the second.
    ProperSubset,
    /// The second ideal is strictly contained in the first.
    ProperSuperset,
    Incomparable,
}

/// Outcome of [`ideal_compare`]: generators of each ideal lying outside the other.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub relation: IdealRelation,
    pub a_outside_b: Option<Polynomial>,
    pub b_outside_a: Option<Polynomial>,
}

impl GradedIdeal {
    /// Ideal generated by the given polynomials (reduced to normal form; zeros dropped).
    pub fn new(ring: Ring, generators: &[Polynomial]) -> Result<GradedIdeal> {
        let mut gens = Vec::new();
        for g in generators {
            if let Some(e) = ring.elem_of(g)? {
                gens.push(e);
            }
        }
        Ok(GradedIdeal::from_vectors(ring, gens))
    }

    /// Generators as `(degree, coordinates)` pairs; zero vectors are dropped.
    pub fn from_vectors(ring: Ring, gens: Vec<(u32, SparseVec)>) -> GradedIdeal {
        let gens = gens.into_iter().filter(|g| !g.1.is_zero()).collect();
        GradedIdeal { ring, gens, spans: Mutex::new(Vec::new()) }
    }

    pub fn zero(ring: Ring) -> GradedIdeal {
        GradedIdeal::from_vectors(ring, Vec::new())
    }

    pub fn unit(ring: Ring) -> GradedIdeal {
        GradedIdeal::from_vectors(ring, vec![(0, SparseVec::unit(0))])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.gens.iter().map(|(d, v)| self.ring.poly_of(*d, v)).collect()
    }

    pub fn generator_vectors(&self) -> &[(u32, SparseVec)] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.0).max()
    }

    /// Basis of the degree-`d` component, as an echelon form over the standard monomials.
    pub fn span(&self, d: u32) -> Arc<Echelon> {
        let mut spans = self.spans.lock().expect("span cache");
        let pf = self.ring.fp().expect("prime field");
        let n = self.ring.nvars();
        while spans.len() <= d as usize {
            let k = spans.len() as u32;
            let dim = self.ring.hilbert_function(k);
            let mut e = Echelon::new(pf, dim);
            if k > 0 {
                let prev = spans[k as usize - 1].clone();
                if prev.is_full() && prev.dim() > 0 {
                    // m * R_{k-1} = R_k
                    for i in 0..dim as u32 {
                        e.insert(&SparseVec::unit(i));
                    }
                } else if prev.rank() > 0 {
                    let table = self.ring.mul_table(k - 1);
                    'outer: for row in prev.rows() {
                        for v in 0..n {
                            e.insert(&super::presentation::mul_var_with(pf, &table, n, row, v));
                            if e.is_full() {
                                break 'outer;
                            }
                        }
                    }
                }
            }
            for (gd, g) in &self.gens {
                if *gd == k && !e.is_full() {
                    e.insert(g);
                }
            }
            spans.push(Arc::new(e));
        }
        spans[d as usize].clone()
    }

    pub fn dim_in_degree(&self, d: u32) -> usize {
        self.span(d).rank()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        let Some((d, v)) = self.ring.elem_of(f)? else { return Ok(true) };
        Ok(self.span(d).contains(&v))
    }

    fn contains_vec(&self, d: u32, v: &SparseVec) -> bool {
        self.span(d).contains(v)
    }

    /// Degree-ascending greedy selection: in each degree keep the generators that are
    /// independent modulo `m` times the lower-degree part, reduced and made monic.
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        self.minimal_generator_vectors().into_iter().map(|(d, v)| self.ring.poly_of(d, &v)).collect()
    }

    pub fn minimal_generator_vectors(&self) -> Vec<(u32, SparseVec)> {
        let pf = self.ring.fp().expect("prime field");
        let n = self.ring.nvars();
        let mut degrees: Vec<u32> = self.gens.iter().map(|g| g.0).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut out = Vec::new();
        for d in degrees {
            let dim = self.ring.hilbert_function(d);
            let mut e = Echelon::new(pf, dim);
            if d > 0 {
                let prev = self.span(d - 1);
                let table = self.ring.mul_table(d - 1);
                for row in prev.rows() {
                    for v in 0..n {
                        e.insert(&super::presentation::mul_var_with(pf, &table, n, row, v));
                    }
                }
            }
            let mut kept = Vec::new();
            for (gd, g) in &self.gens {
                if *gd == d && e.insert(g) {
                    kept.push(e.rows().last().expect("inserted").clone());
                }
            }
            // back-substitute so the printed generators are canonical
            for g in kept {
                let mut r = g.clone();
                for row in e.rows() {
                    let (p, _) = row.lead().expect("nonzero row");
                    if row == &g {
                        continue;
                    }
                    let c = r.get(p);
                    if c != 0 {
                        r = r.axpy(pf, pf.neg(c), row);
                    }
                }
                if r.is_zero() {
                    r = g;
                }
                let lead = r.lead().expect("nonzero").1;
                out.push((d, r.scale(pf, pf.inv(lead))));
            }
        }
        out
    }

    /// Sum of ideals.
    pub fn sum(&self, other: &GradedIdeal) -> GradedIdeal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        GradedIdeal::from_vectors(self.ring.clone(), gens)
    }

    /// Product of ideals, generated by pairwise products of generators.
    pub fn product(&self, other: &GradedIdeal) -> GradedIdeal {
        let mut gens = Vec::new();
        for (da, a) in &self.gens {
            for (db, b) in &other.gens {
                gens.push((da + db, self.ring.mul_elems(*da, a, *db, b)));
            }
        }
        GradedIdeal::from_vectors(self.ring.clone(), gens)
    }

    /// Whether `self` is contained in `other`, with a generator outside `other` if not.
    pub fn outside(&self, other: &GradedIdeal) -> Option<Polynomial> {
        self.gens.iter().find(|(d, g)| !other.contains_vec(*d, g)).map(|(d, g)| self.ring.poly_of(*d, g))
    }

    pub fn is_subset_of(&self, other: &GradedIdeal) -> bool {
        self.outside(other).is_none()
    }
}

/// The ideal `m^r`, generated by the standard monomials of degree `r`.
pub fn max_ideal_power(ring: &Ring, r: u32) -> GradedIdeal {
    let dim = ring.hilbert_function(r);
    GradedIdeal::from_vectors(ring.clone(), (0..dim as u32).map(|i| (r, SparseVec::unit(i))).collect())
}

/// `ann_R(m)`, computed degree-wise as the kernel of `R_d -> R_{d+1}^e`.
pub fn socle(ring: &Ring) -> Result<GradedIdeal> {
    let h = ring.artinian_top().ok_or(Error::NotArtinian)?;
    let pf = ring.fp()?;
    let n = ring.nvars();
    let mut gens = Vec::new();
    for d in 0..=h {
        let dim = ring.hilbert_function(d);
        let next = ring.hilbert_function(d + 1);
        let table = ring.mul_table(d);
        let mut kb = crate::linalg::KernelBuilder::new(pf, next * n);
        for t in 0..dim {
            let mut img = Vec::new();
            for v in 0..n {
                img.extend(table[t * n + v].iter().map(|(i, c)| (v as u32 * next as u32 + i, c)));
            }
            kb.push(SparseVec::from_unsorted(pf, img));
        }
        gens.extend(kb.finish().into_iter().map(|k| (d, k)));
    }
    Ok(GradedIdeal::from_vectors(ring.clone(), gens))
}

/// Decides containment both ways. Both ideals are generated in degrees `<= up_to`, so the
/// degree-wise span checks are exact.
pub fn ideal_compare(a: &GradedIdeal, b: &GradedIdeal, up_to: u32) -> Result<Comparison> {
    if !Arc::ptr_eq(a.ring(), b.ring()) {
        return Err(Error::RingMismatch("ideals live in different rings".into()));
    }
    let need = a.max_generator_degree().max(b.max_generator_degree()).unwrap_or(0);
    if need > up_to {
        return Err(Error::CapTooLow { cap: up_to as i32, needed: need as i32 });
    }
    let a_out = a.outside(b);
    let b_out = b.outside(a);
    let relation = match (&a_out, &b_out) {
        (None, None) => IdealRelation::Equal,
        (None, Some(_)) => IdealRelation::ProperSubset,
        (Some(_), None) => IdealRelation::ProperSuperset,
        (Some(_), Some(_)) => IdealRelation::Incomparable,
    };
    Ok(Comparison { relation, a_outside_b: a_out, b_outside_a: b_out })
}
