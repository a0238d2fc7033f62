use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, FieldScalar};
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial; terms are keyed by monomial in degrevlex order and no
/// stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Monomial, FieldScalar>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Polynomial { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: FieldScalar) -> Self {
        Self::term(field, c, Monomial::one(nvars))
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        Self::term(field, field.one(), Monomial::var(nvars, i))
    }

    pub fn term(field: Field, c: FieldScalar, m: Monomial) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, field, terms }
    }

    /// Builds from `(coefficient, monomial)` pairs, combining repeats.
    pub fn from_terms(field: Field, nvars: usize, pairs: impl IntoIterator<Item = (FieldScalar, Monomial)>) -> Self {
        let mut p = Polynomial::zero(field, nvars);
        for (c, m) in pairs {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldScalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&FieldScalar> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldScalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Total degree of the leading term (the maximum degree); `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.leading_monomial().map(|m| m.degree())
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> FieldScalar {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(c).expect("same field");
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: other.nvars });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &c1.mul(c2).expect("same field"));
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldScalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c).expect("same field"))).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &FieldScalar, mono: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a.mul(c).expect("same field")))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Re-indexes variables: variable `i` becomes variable `map[i]` of an `nvars`-variable ring.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        let mut out = Polynomial::zero(self.field, nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial::from_exponents(e), c);
        }
        out
    }

    /// Sets variable `i` to zero and removes it from the ambient ring.
    pub fn drop_var(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars - 1);
        for (m, c) in &self.terms {
            if m.exponents()[i] > 0 {
                continue;
            }
            let mut e = m.exponents().to_vec();
            e.remove(i);
            out.add_term(Monomial::from_exponents(e), c);
        }
        out
    }

    /// Canonical text form using the given variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative_repr();
            let abs = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials from the same ring")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials from the same ring")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials from the same ring")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

/// Exact product with an arity check.
pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.try_mul(g)
}
