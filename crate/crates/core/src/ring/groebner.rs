//! Buchberger's algorithm for homogeneous ideals, degrevlex order.

use crate::arith::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// Full reduction of `f` modulo `basis` (leading and trailing terms).
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.field(), f.nvars());
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m))) {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero basis element");
                let q = lm.quotient_of(&m).expect("divides");
                let factor = c.mul(&lc.inv().expect("nonzero")).expect("same field").neg();
                p = &p + &g.mul_monomial(&factor, &q);
            }
            None => {
                rem.add_term(m.clone(), &c);
                p.add_term(m, &c.neg());
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_monomial(&cf.inv().expect("nonzero"), &mf.quotient_of(&l).expect("divides"));
    let b = g.mul_monomial(&cg.inv().expect("nonzero"), &mg.quotient_of(&l).expect("divides"));
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `relations`.
///
/// S-pairs are processed in order of increasing lcm degree; pairs with coprime leading
/// monomials are skipped (their S-polynomials reduce to zero).
pub fn reduced_groebner(relations: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for f in relations {
        if !f.is_homogeneous() {
            return Err(Error::NonHomogeneous(format!("{f:?}")));
        }
    }
    let mut pending: Vec<Polynomial> = relations.iter().filter(|f| !f.is_zero()).cloned().collect();
    pending.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();

    let add = |h: Polynomial, basis: &mut Vec<Polynomial>, pairs: &mut Vec<(u32, usize, usize)>| {
        let h = h.monic();
        let k = basis.len();
        let lh = h.leading_monomial().expect("nonzero").clone();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.leading_monomial().expect("nonzero");
            if !lg.coprime(&lh) {
                pairs.push((lg.lcm(&lh).degree(), i, k));
            }
        }
        basis.push(h);
    };

    for f in pending.drain(..) {
        let h = reduce(&f, &basis);
        if !h.is_zero() {
            add(h, &mut basis, &mut pairs);
        }
    }
    loop {
        // take the pair of smallest lcm degree; ties by insertion order
        let Some(pos) = (0..pairs.len()).min_by_key(|&k| (pairs[k].0, k)) else { break };
        let (_, i, j) = pairs.remove(pos);
        let s = s_polynomial(&basis[i], &basis[j]);
        let h = reduce(&s, &basis);
        if !h.is_zero() {
            add(h, &mut basis, &mut pairs);
        }
    }
    Ok(interreduce(basis))
}

fn interreduce(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let leads: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().expect("nonzero").clone()).collect();
    let mut keep: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(j, lj)| {
            j != i && lj.divides(&leads[i]) && (lj != &leads[i] || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Polynomial> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let (lm, lc) = keep[i].leading_term().expect("nonzero");
        let lead = Polynomial::term(keep[i].field(), lc.clone(), lm.clone());
        let tail = reduce(&(&keep[i] - &lead), &others);
        out.push((&lead + &tail).monic());
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_polynomial, Field};

    fn ps(src: &[&str], names: &[&str]) -> Vec<Polynomial> {
        let n: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        src.iter().map(|s| parse_polynomial(s, &n, Field::DEFAULT).unwrap()).collect()
    }

    #[test]
    fn coprime_leads_already_basis() {
        let rel = ps(&["x*z", "y*z"], &["x", "y", "z"]);
        let gb = reduced_groebner(&rel).unwrap();
        assert_eq!(gb.len(), 2);
        let mut want = rel.clone();
        want.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        assert_eq!(gb, want);
    }

    #[test]
    fn cubic_appears_for_embdim_two_gorenstein() {
        let rel = ps(&["x1*x2", "x1^2 - x2^2"], &["x1", "x2"]);
        let gb = reduced_groebner(&rel).unwrap();
        let cube = ps(&["x2^3"], &["x1", "x2"]).remove(0);
        assert!(gb.contains(&cube), "{gb:?}");
        assert!(reduce(&cube, &gb).is_zero());
    }

    #[test]
    fn empty_and_non_homogeneous() {
        assert!(reduced_groebner(&[]).unwrap().is_empty());
        let bad = ps(&["x^2 - y"], &["x", "y"]);
        assert!(matches!(reduced_groebner(&bad), Err(Error::NonHomogeneous(_))));
    }

    #[test]
    fn rational_cross_check() {
        let n: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let rel: Vec<Polynomial> =
            ["x*y", "x^2 - 3*y^2"].iter().map(|s| parse_polynomial(s, &n, Field::Rational).unwrap()).collect();
        let gb = reduced_groebner(&rel).unwrap();
        let y3 = parse_polynomial("y^3", &n, Field::Rational).unwrap();
        assert!(reduce(&y3, &gb).is_zero());
        let x2 = parse_polynomial("x^2", &n, Field::Rational).unwrap();
        assert_eq!(reduce(&x2, &gb).to_string_with(&n), "3*y^2");
    }
}
