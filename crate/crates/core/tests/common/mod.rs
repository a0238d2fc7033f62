//! Test-side oracles. They work on polynomial entries and plain Gaussian elimination over
//! F_p, sharing nothing with the library beyond ring normal forms.
#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use fitting_res::arith::{Monomial, Polynomial};
use fitting_res::resolution::GradedMatrix;
use fitting_res::ring::Ring;

/// Coordinates: (row of a free module, exponent vector of a standard monomial).
pub type Key = (usize, Vec<u16>);
pub type Vector = BTreeMap<Key, u64>;

/// Echelon form keyed by leading coordinate.
pub struct Span {
    p: u64,
    pivots: HashMap<Key, Vector>,
}

impl Span {
    pub fn new(p: u64) -> Span {
        Span { p, pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut r, mut b, mut e) = (1u64, a % self.p, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    /// Returns whether `v` enlarged the span.
    pub fn insert(&mut self, mut v: Vector) -> bool {
        loop {
            let Some((lead, &c)) = v.iter().next_back() else { return false };
            let lead = lead.clone();
            match self.pivots.get(&lead) {
                Some(piv) => {
                    for (k, &a) in piv {
                        let e = v.entry(k.clone()).or_insert(0);
                        *e = (*e + self.p - c * a % self.p) % self.p;
                        if *e == 0 {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    let s = self.inv(c);
                    for a in v.values_mut() {
                        *a = *a * s % self.p;
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
    }
}

pub fn monomials(nvars: usize, d: u32) -> Vec<Vec<u16>> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(nvars - 1, d - a) {
            rest.insert(0, a as u16);
            out.push(rest);
        }
    }
    out
}

pub struct Oracle {
    pub ring: Ring,
    pub p: u64,
    hilbert: RefCell<HashMap<u32, usize>>,
}

impl Oracle {
    pub fn new(ring: &Ring) -> Oracle {
        let p = ring.fp().expect("prime field").modulus() as u64;
        Oracle { ring: ring.clone(), p, hilbert: RefCell::new(HashMap::new()) }
    }

    pub fn mono(&self, exps: &[u16]) -> Polynomial {
        let f = self.ring.field();
        Polynomial::term(f, f.one(), Monomial::from_exponents(exps.to_vec()))
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.ring.normal_form(&f.try_mul(g).unwrap())
    }

    pub fn coords(&self, f: &Polynomial, row: usize) -> Vector {
        let nf = self.ring.normal_form(f);
        nf.terms().map(|(m, c)| ((row, m.exponents().to_vec()), c.fp_value().unwrap() as u64)).collect()
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.ring.normal_form(f).is_zero()
    }

    /// dim R_d, as the rank of the normal forms of all monomials of degree d.
    pub fn hilbert(&self, d: i32) -> usize {
        if d < 0 {
            return 0;
        }
        let d = d as u32;
        if let Some(&h) = self.hilbert.borrow().get(&d) {
            return h;
        }
        let mut span = Span::new(self.p);
        for e in monomials(self.ring.nvars(), d) {
            span.insert(self.coords(&self.mono(&e), 0));
        }
        let h = span.rank();
        self.hilbert.borrow_mut().insert(d, h);
        h
    }

    pub fn free_dim(&self, degrees: &[i32], d: i32) -> usize {
        degrees.iter().map(|&a| self.hilbert(d - a)).sum()
    }

    /// Nonzero entries of every column.
    pub fn columns(&self, a: &GradedMatrix) -> Vec<Vec<(usize, Polynomial)>> {
        (0..a.ncols())
            .map(|j| a.column(j).entries.iter().map(|(i, _)| (*i as usize, a.entry(*i as usize, j))).filter(|(_, p)| !p.is_zero()).collect())
            .collect()
    }

    pub fn entries(&self, a: &GradedMatrix) -> Vec<Polynomial> {
        self.columns(a).into_iter().flatten().map(|(_, p)| p).collect()
    }

    /// Rank of the degree-d component of `a`.
    pub fn map_rank(&self, a: &GradedMatrix, d: i32) -> usize {
        let mut span = Span::new(self.p);
        for (j, col) in self.columns(a).iter().enumerate() {
            let s = a.source().degrees()[j];
            if d < s {
                continue;
            }
            for e in monomials(self.ring.nvars(), (d - s) as u32) {
                let u = self.mono(&e);
                let mut v = Vector::new();
                for (i, f) in col {
                    v.extend(self.coords(&self.mul(&u, f), *i));
                }
                span.insert(v);
            }
        }
        span.rank()
    }

    /// dim H_pos(d) of the complex with `maps[k] = ∂_{k+1}`; `pos` ranges over 1..maps.len().
    pub fn homology(&self, maps: &[GradedMatrix], pos: usize, d: i32) -> usize {
        let out = &maps[pos - 1];
        let inc = &maps[pos];
        let ker = self.free_dim(out.source().degrees(), d) - self.map_rank(out, d);
        ker - self.map_rank(inc, d)
    }

    /// `a * b = 0` for `b: F_{n+1} -> F_n`, `a: F_n -> F_{n-1}`, by entrywise products.
    pub fn composes_to_zero(&self, a: &GradedMatrix, b: &GradedMatrix) -> bool {
        let acols = self.columns(a);
        let zero = Polynomial::zero(self.ring.field(), self.ring.nvars());
        for col in self.columns(b) {
            let mut acc: BTreeMap<usize, Polynomial> = BTreeMap::new();
            for (i, f) in &col {
                for (k, g) in &acols[*i] {
                    let e = acc.entry(*k).or_insert_with(|| zero.clone());
                    *e = e.try_add(&self.mul(f, g)).unwrap();
                }
            }
            if acc.values().any(|f| !self.is_zero(f)) {
                return false;
            }
        }
        true
    }

    /// No entry has a nonzero constant term.
    pub fn is_minimal(&self, a: &GradedMatrix) -> bool {
        self.entries(a).iter().all(|f| self.ring.normal_form(f).constant_term().is_zero())
    }

    pub fn det(&self, m: &[Vec<Polynomial>]) -> Polynomial {
        let n = m.len();
        let zero = Polynomial::zero(self.ring.field(), self.ring.nvars());
        if n == 0 {
            return Polynomial::one(self.ring.field(), self.ring.nvars());
        }
        // expansion along the first row
        let mut acc = zero;
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Polynomial>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, f)| f.clone()).collect()).collect();
            let term = self.mul(&m[0][j], &self.det(&minor));
            acc = if j % 2 == 0 { acc.try_add(&term).unwrap() } else { acc.try_sub(&term).unwrap() };
        }
        acc
    }

    /// Whether the degree-r parts of the r x r minors span R_r, so `I_r(a) = m^r` for a
    /// minimal `a`. `None` when `budget` minors were tried without reaching a decision.
    pub fn minors_reach_power(&self, a: &GradedMatrix, r: usize, budget: usize) -> Option<bool> {
        let target = self.hilbert(r as i32);
        if target == 0 {
            return Some(true);
        }
        let cols = self.columns(a);
        let live: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
        let mut span = Span::new(self.p);
        let minor = |cs: &[usize], rows: &[usize], span: &mut Span| {
            let m: Vec<Vec<Polynomial>> = rows.iter().map(|&i| cs.iter().map(|&j| a.entry(i, j)).collect()).collect();
            span.insert(self.coords(&self.det(&m).homogeneous_component(r as u32), 0));
        };
        // random probes first; a negative answer still needs the exhaustive pass below
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = |n: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % n as u64) as usize
        };
        if live.len() >= r {
            for _ in 0..budget / 2 {
                let mut cs: Vec<usize> = Vec::new();
                while cs.len() < r {
                    let j = live[next(live.len())];
                    if !cs.contains(&j) {
                        cs.push(j);
                    }
                }
                let mut rows: Vec<usize> = cs.iter().flat_map(|&j| cols[j].iter().map(|(i, _)| *i)).collect();
                rows.sort_unstable();
                rows.dedup();
                if rows.len() < r {
                    continue;
                }
                let mut rs: Vec<usize> = Vec::new();
                while rs.len() < r {
                    let i = rows[next(rows.len())];
                    if !rs.contains(&i) {
                        rs.push(i);
                    }
                }
                minor(&cs, &rs, &mut span);
                if span.rank() == target {
                    return Some(true);
                }
            }
        }
        let mut tried = 0usize;
        let mut exhausted = true;
        for cs in combinations(live.len(), r) {
            let cs: Vec<usize> = cs.iter().map(|&k| live[k]).collect();
            let mut rows: Vec<usize> = cs.iter().flat_map(|&j| cols[j].iter().map(|(i, _)| *i)).collect();
            rows.sort_unstable();
            rows.dedup();
            for rs in combinations(rows.len(), r) {
                let rs: Vec<usize> = rs.iter().map(|&i| rows[i]).collect();
                minor(&cs, &rs, &mut span);
                if span.rank() == target {
                    return Some(true);
                }
                tried += 1;
                if tried >= budget - budget / 2 {
                    exhausted = false;
                    break;
                }
            }
            if !exhausted {
                break;
            }
        }
        if exhausted {
            Some(false)
        } else {
            None
        }
    }

    /// dim of the degree-d part of the ideal generated by `gens`.
    pub fn ideal_dim(&self, gens: &[Polynomial], d: u32) -> usize {
        let mut span = Span::new(self.p);
        for g in gens {
            for e in 0..=d {
                let part = g.homogeneous_component(e);
                if part.is_zero() {
                    continue;
                }
                for u in monomials(self.ring.nvars(), d - e) {
                    span.insert(self.coords(&self.mul(&self.mono(&u), &part), 0));
                }
            }
        }
        span.rank()
    }

    /// Ideals agree in every degree up to `top`.
    pub fn same_ideal(&self, a: &[Polynomial], b: &[Polynomial], top: u32) -> bool {
        let both: Vec<Polynomial> = a.iter().chain(b).cloned().collect();
        (0..=top).all(|d| {
            let n = self.ideal_dim(&both, d);
            self.ideal_dim(a, d) == n && self.ideal_dim(b, d) == n
        })
    }

    pub fn parse(&self, src: &str) -> Polynomial {
        self.ring.parse_poly(src).unwrap()
    }
}

/// k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for t in i + 1..k {
                    c[t] = c[t - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Coefficients of `num / den` as power series, `den[0] = 1`.
pub fn series(num: &[i64], den: &[i64], len: usize) -> Vec<i64> {
    let mut out = vec![0i64; len];
    for n in 0..len {
        let mut c = num.get(n).copied().unwrap_or(0);
        for k in 1..den.len().min(n + 1) {
            c -= den[k] * out[n - k];
        }
        out[n] = c;
    }
    out
}
