use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Exponent vector; `Ord` is degree reverse lexicographic with variable 0 largest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars].into_boxed_slice() }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial { exps: e.into_boxed_slice() }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial { exps: exps.into_boxed_slice() }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.exps.clone();
        e[i] += 1;
        Monomial { exps: e }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(self.exps.iter()).map(|(b, a)| b - a).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the last variable occurring in the monomial.
    pub fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut e = self.exps.clone();
        e[i] -= 1;
        Some(Monomial { exps: e })
    }

    /// All monomials of total degree `d` in `nvars` variables, descending in degrevlex.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left as u16;
                out.push(Monomial::from_exponents(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            if a != b {
                // smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degrevlex comparison with an arity check.
pub fn monomial_cmp(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::ArityMismatch { expected: a.nvars(), got: b.nvars() });
    }
    Ok(a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn degrevlex_examples() {
        assert_eq!(monomial_cmp(&m(&[2, 0]), &m(&[1, 1])).unwrap(), Ordering::Greater);
        assert_eq!(monomial_cmp(&m(&[1, 0]), &m(&[0, 2])).unwrap(), Ordering::Less);
        assert_eq!(monomial_cmp(&m(&[1, 3]), &m(&[1, 3])).unwrap(), Ordering::Equal);
        // degrevlex, not deglex: x*z^... comparisons in 3 variables
        assert_eq!(m(&[1, 1, 0]).cmp(&m(&[2, 0, 1])), Ordering::Less);
        assert_eq!(m(&[0, 2, 0]).cmp(&m(&[1, 0, 1])), Ordering::Greater);
        assert!(matches!(
            monomial_cmp(&m(&[1]), &m(&[1, 0])),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 4).len(), 5);
        let v = Monomial::all_of_degree(3, 3);
        assert!(v.windows(2).all(|w| w[0] > w[1]));
    }

    proptest! {
        #[test]
        fn order_is_total_and_transitive(
            a in proptest::collection::vec(0u16..4, 3),
            b in proptest::collection::vec(0u16..4, 3),
            c in proptest::collection::vec(0u16..4, 3),
        ) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
            if a.degree() < b.degree() {
                prop_assert!(a < b);
            }
            // multiplicative compatibility
            prop_assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
        }
    }
}
