use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::groebner::{reduce, reduced_groebner};
use crate::arith::{parse_polynomial, Field, Monomial, Polynomial, PrimeField};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;

pub type Ring = Arc<RingPresentation>;

/// Standard monomials of one degree, descending in degrevlex.
#[derive(Debug)]
pub struct StdDegree {
    pub monos: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    /// `monos[t] = x_v * monos_{d-1}[parent.0]` with `v = parent.1`.
    parent: Vec<(u32, u16)>,
}

impl StdDegree {
    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn parent(&self, t: u32) -> (u32, u16) {
        self.parent[t as usize]
    }
}

#[derive(Default)]
struct Cache {
    std: Vec<Arc<StdDegree>>,
    tables: Vec<Arc<Vec<SparseVec>>>,
}

/// A standard graded algebra `k[x_1..x_e]/I`, `I` homogeneous and contained in `m^2`.
///
/// Homogeneous elements of degree `d` are handled as coordinate vectors over the standard
/// monomials of degree `d`; multiplication by variables goes through cached tables.
pub struct RingPresentation {
    field: Field,
    names: Vec<String>,
    relations: Vec<Polynomial>,
    gb: Vec<Polynomial>,
    leads: Vec<Monomial>,
    top: Option<u32>,
    cache: Mutex<Cache>,
}

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.names.join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| r.to_string_with(&self.names)).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

impl RingPresentation {
    pub fn new(field: Field, names: Vec<String>, relations: Vec<Polynomial>) -> Result<Ring> {
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::NameClash(n.clone()));
            }
        }
        let nvars = names.len();
        let mut rels = Vec::new();
        for r in relations {
            if r.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, got: r.nvars() });
            }
            if r.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), r.field().to_string()));
            }
            if r.is_zero() {
                continue;
            }
            if !r.is_homogeneous() {
                return Err(Error::NonHomogeneous(r.to_string_with(&names)));
            }
            if r.degree() < Some(2) {
                return Err(Error::InvalidArgument(format!(
                    "relation {} is not in the square of the maximal ideal",
                    r.to_string_with(&names)
                )));
            }
            rels.push(r);
        }
        let gb = reduced_groebner(&rels)?;
        let leads: Vec<Monomial> = gb.iter().map(|g| g.leading_monomial().expect("nonzero").clone()).collect();
        let artinian = (0..nvars).all(|i| {
            leads.iter().any(|l| l.exponents().iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
        });
        let mut ring = RingPresentation {
            field,
            names,
            relations: rels,
            gb,
            leads,
            top: None,
            cache: Mutex::new(Cache::default()),
        };
        if artinian {
            let mut d = 0;
            while !ring.standard_monomials(d + 1).is_empty() {
                d += 1;
            }
            ring.top = Some(d);
        }
        Ok(Arc::new(ring))
    }

    /// Parses relations in the polynomial grammar.
    pub fn parse(field: Field, names: &[&str], relations: &[&str]) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rels = relations.iter().map(|r| parse_polynomial(r, &names, field)).collect::<Result<Vec<_>>>()?;
        RingPresentation::new(field, names, rels)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn fp(&self) -> Result<PrimeField> {
        self.field.prime_field()
    }

    fn pf(&self) -> PrimeField {
        self.field.prime_field().expect("engine operations require a prime field")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.gb
    }

    pub fn is_artinian(&self) -> bool {
        self.top.is_some()
    }

    /// Least `h` with `m^(h+1) = 0`; `None` when the ring is not artinian.
    pub fn artinian_top(&self) -> Option<u32> {
        self.top
    }

    /// `dim_k R`, for artinian rings.
    pub fn length(&self) -> Option<usize> {
        self.top.map(|h| (0..=h).map(|d| self.hilbert_function(d)).sum())
    }

    pub fn parse_poly(&self, src: &str) -> Result<Polynomial> {
        parse_polynomial(src, &self.names, self.field).map(|p| self.normal_form(&p))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field, self.nvars(), i)
    }

    pub fn show(&self, f: &Polynomial) -> String {
        f.to_string_with(&self.names)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(f, &self.gb)
    }

    pub fn try_normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.nvars() {
            return Err(Error::ArityMismatch { expected: self.nvars(), got: f.nvars() });
        }
        if f.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), f.field().to_string()));
        }
        Ok(self.normal_form(f))
    }

    /// Normal form of a product.
    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.normal_form(&(f * g))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }

    pub fn hilbert_function(&self, d: u32) -> usize {
        self.standard_monomials(d).len()
    }

    pub fn standard_monomials(&self, d: u32) -> Arc<StdDegree> {
        let mut cache = self.cache.lock().expect("ring cache");
        self.fill_std(&mut cache, d);
        cache.std[d as usize].clone()
    }

    fn fill_std(&self, cache: &mut Cache, d: u32) {
        let n = self.nvars();
        while cache.std.len() <= d as usize {
            let k = cache.std.len();
            let level = if k == 0 {
                let one = Monomial::one(n);
                StdDegree { monos: vec![one.clone()], index: HashMap::from([(one, 0)]), parent: vec![(0, 0)] }
            } else {
                let prev = &cache.std[k - 1];
                let mut monos: Vec<Monomial> = Vec::new();
                let mut seen = std::collections::HashSet::new();
                for m in &prev.monos {
                    for v in 0..n {
                        let u = m.mul_var(v);
                        if self.is_standard(&u) && seen.insert(u.clone()) {
                            monos.push(u);
                        }
                    }
                }
                monos.sort_by(|a, b| b.cmp(a));
                let index: HashMap<Monomial, u32> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
                let parent = monos
                    .iter()
                    .map(|m| {
                        let v = m.last_var().expect("positive degree");
                        let q = m.div_var(v).expect("occurs");
                        (prev.index_of(&q).expect("standard monomials are closed under division"), v as u16)
                    })
                    .collect();
                StdDegree { monos, index, parent }
            };
            cache.std.push(Arc::new(level));
        }
    }

    /// `table[t * nvars + v]` is `x_v * monos_d[t]` in degree-`d+1` coordinates.
    pub fn mul_table(&self, d: u32) -> Arc<Vec<SparseVec>> {
        let pf = self.pf();
        let mut cache = self.cache.lock().expect("ring cache");
        self.fill_std(&mut cache, d + 1);
        let n = self.nvars();
        while cache.tables.len() <= d as usize {
            let k = cache.tables.len();
            let src = cache.std[k].clone();
            let dst = cache.std[k + 1].clone();
            let mut table = Vec::with_capacity(src.len() * n);
            for m in &src.monos {
                for v in 0..n {
                    let u = m.mul_var(v);
                    let vec = match dst.index_of(&u) {
                        Some(i) => SparseVec::unit(i),
                        None => {
                            let nf = self.normal_form(&Polynomial::term(self.field, self.field.one(), u));
                            SparseVec::from_unsorted(
                                pf,
                                nf.terms()
                                    .map(|(m, c)| (dst.index_of(m).expect("normal forms are standard"), c.fp_value().expect("prime field")))
                                    .collect(),
                            )
                        }
                    };
                    table.push(vec);
                }
            }
            cache.tables.push(Arc::new(table));
        }
        cache.tables[d as usize].clone()
    }

    /// Coordinates of a homogeneous element (after normal form); `None` for zero.
    pub fn elem_of(&self, f: &Polynomial) -> Result<Option<(u32, SparseVec)>> {
        let f = self.try_normal_form(f)?;
        if f.is_zero() {
            return Ok(None);
        }
        if !f.is_homogeneous() {
            return Err(Error::NonHomogeneous(self.show(&f)));
        }
        let pf = self.fp()?;
        let d = f.degree().expect("nonzero");
        let std = self.standard_monomials(d);
        let v = SparseVec::from_unsorted(
            pf,
            f.terms().map(|(m, c)| (std.index_of(m).expect("standard"), c.fp_value().expect("prime field"))).collect(),
        );
        Ok(Some((d, v)))
    }

    pub fn poly_of(&self, d: u32, v: &SparseVec) -> Polynomial {
        let std = self.standard_monomials(d);
        let pf = self.pf();
        Polynomial::from_terms(self.field, self.nvars(), v.iter().map(|(i, c)| (pf.scalar(c), std.monos[i as usize].clone())))
    }

    /// `x_v * a` for `a` of degree `d`.
    pub fn mul_var(&self, d: u32, a: &SparseVec, v: usize) -> SparseVec {
        let table = self.mul_table(d);
        mul_var_with(self.pf(), &table, self.nvars(), a, v)
    }

    /// `a * monos_{d2}[t]` for `a` of degree `d`, following the parent chain of the monomial.
    pub fn mul_std(&self, d: u32, a: &SparseVec, d2: u32, t: u32) -> SparseVec {
        if d2 == 0 {
            return a.clone();
        }
        let (p, v) = self.standard_monomials(d2).parent(t);
        let b = self.mul_std(d, a, d2 - 1, p);
        self.mul_var(d + d2 - 1, &b, v as usize)
    }

    /// Product of homogeneous elements of degrees `d1` and `d2`.
    pub fn mul_elems(&self, d1: u32, a: &SparseVec, d2: u32, b: &SparseVec) -> SparseVec {
        let pf = self.pf();
        let mut acc = SparseVec::new();
        if a.is_zero() || b.is_zero() || self.top.is_some_and(|h| d1 + d2 > h) {
            return acc;
        }
        for (t, c) in b.iter() {
            acc = acc.axpy(pf, c, &self.mul_std(d1, a, d2, t));
        }
        acc
    }
}

/// `x_v * a` given the multiplication table of `a`'s degree.
pub fn mul_var_with(pf: PrimeField, table: &[SparseVec], nvars: usize, a: &SparseVec, v: usize) -> SparseVec {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for (t, c) in a.iter() {
        for (i, x) in table[t as usize * nvars + v].iter() {
            out.push((i, pf.mul(c, x)));
        }
    }
    SparseVec::from_unsorted(pf, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_of;

    fn ring(names: &[&str], rels: &[&str]) -> Ring {
        RingPresentation::parse(Field::DEFAULT, names, rels).unwrap()
    }

    /// `dim S_d - dim I_d`, with `I_d` spanned by monomial multiples of the relations.
    fn hilbert_by_rank(r: &RingPresentation, d: u32) -> usize {
        let n = r.nvars();
        let all = Monomial::all_of_degree(n, d);
        let index: HashMap<Monomial, u32> = all.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let pf = r.fp().unwrap();
        let mut vecs = Vec::new();
        for g in r.relations() {
            let gd = g.degree().unwrap();
            if gd > d {
                continue;
            }
            for u in Monomial::all_of_degree(n, d - gd) {
                let p = g.mul_monomial(&r.field().one(), &u);
                vecs.push(SparseVec::from_unsorted(pf, p.terms().map(|(m, c)| (index[m], c.fp_value().unwrap())).collect()));
            }
        }
        all.len() - rank_of(pf, all.len(), vecs)
    }

    #[test]
    fn hilbert_functions() {
        let r = ring(&["x", "y", "z"], &["x*z", "y*z"]);
        assert_eq!((0..6).map(|d| r.hilbert_function(d)).collect::<Vec<_>>(), vec![1, 3, 4, 5, 6, 7]);
        assert!(!r.is_artinian());
        let c = ring(&["x"], &["x^3"]);
        assert_eq!(c.artinian_top(), Some(2));
        assert_eq!(c.length(), Some(3));
        let s = ring(&["x", "y"], &[]);
        assert_eq!(s.hilbert_function(4), 5);
        let g = ring(&["x1", "x2", "x3"], &["x1*x2", "x1*x3", "x2*x3", "x1^2 - x2^2", "x1^2 - x3^2"]);
        for d in 0..5 {
            assert_eq!(g.hilbert_function(d), hilbert_by_rank(&g, d));
            assert_eq!(r.hilbert_function(d), hilbert_by_rank(&r, d));
        }
        assert_eq!(g.length(), Some(5));
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y", "z"], &["x*z", "y*z"]);
        assert_eq!(r.show(&r.parse_poly("x*z + x^2").unwrap()), "x^2");
        let g = ring(&["x1", "x2"], &["x1*x2", "x1^2 - x2^2"]);
        // dim R_2 = 1 and the larger of x1^2, x2^2 is rewritten
        assert_eq!(g.hilbert_function(2), 1);
        let a = g.parse_poly("x1^2").unwrap();
        let b = g.parse_poly("x2^2").unwrap();
        assert_eq!(a, b);
        for rel in g.relations() {
            assert!(g.normal_form(rel).is_zero());
        }
    }

    #[test]
    fn table_products_match_normal_forms() {
        let g = ring(&["x1", "x2", "x3"], &["x1*x2", "x1*x3", "x2*x3", "x1^2 - 2*x2^2", "x1^2 - x3^2"]);
        let h = g.parse_poly("3*x1 - x2 + 5*x3").unwrap();
        let k = g.parse_poly("x2 + x3").unwrap();
        let (dh, vh) = g.elem_of(&h).unwrap().unwrap();
        let (dk, vk) = g.elem_of(&k).unwrap().unwrap();
        let fast = g.poly_of(dh + dk, &g.mul_elems(dh, &vh, dk, &vk));
        assert_eq!(fast, g.mul(&h, &k));
    }

    #[test]
    fn rejects_bad_relations() {
        assert!(matches!(
            RingPresentation::parse(Field::DEFAULT, &["x", "y"], &["x^2 - y"]),
            Err(Error::NonHomogeneous(_))
        ));
        assert!(RingPresentation::parse(Field::DEFAULT, &["x", "y"], &["x"]).is_err());
        assert!(matches!(RingPresentation::parse(Field::DEFAULT, &["x", "x"], &[]), Err(Error::NameClash(_))));
    }
}
