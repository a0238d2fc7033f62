//! Randomized invariants, checked against the oracles in `common`.

mod common;

use common::{combinations, Oracle};
use fitting_res::arith::{parse_polynomial, Field, Polynomial};
use fitting_res::minors::{check_minors_in_mr, determinant_by_permutations, minors_ideal};
use fitting_res::resolution::{minimal_resolution, GradedMatrix, ModulePresentation, ResolveOptions};
use fitting_res::ring::{Ring, RingPresentation};
use fitting_res::scenario::suite::random_equivalent;
use fitting_res::stretched::build_stretched;
use proptest::prelude::*;
use std::sync::OnceLock;

/// Artinian rings, so that every ideal is compared in every degree.
fn pool() -> &'static [Ring] {
    static POOL: OnceLock<Vec<Ring>> = OnceLock::new();
    POOL.get_or_init(|| {
        let f = Field::DEFAULT;
        vec![
            RingPresentation::parse(f, &["x", "y", "z"], &["x*z", "y*z", "x^3", "y^3", "z^2"]).unwrap(),
            RingPresentation::parse(f, &["x", "y"], &["x*y", "x^3", "y^3"]).unwrap(),
            RingPresentation::parse(f, &["x"], &["x^3"]).unwrap(),
            RingPresentation::parse(f, &["x", "y"], &["x^2", "y^2"]).unwrap(),
            build_stretched(3, 2, &[1, 1], f).unwrap().ring,
        ]
    })
}

fn top(ring: &Ring) -> u32 {
    ring.artinian_top().unwrap()
}

#[derive(Clone, Debug)]
struct Spec {
    ring: usize,
    tdeg: Vec<i32>,
    /// Offsets in 1..=2 over the largest target degree.
    sdeg: Vec<i32>,
    coeffs: Vec<u32>,
}

fn spec(max: usize) -> impl Strategy<Value = Spec> {
    (0..pool().len(), prop::collection::vec(0..2i32, 1..=max), prop::collection::vec(1..=2i32, 1..=max), prop::collection::vec(prop_oneof![3 => Just(0u32), 2 => 1..101u32], 160))
        .prop_map(|(ring, tdeg, sdeg, coeffs)| Spec { ring, tdeg, sdeg, coeffs })
}

/// Random homogeneous matrix with entries in `m`; entries of degree above 2 are zero.
fn build(s: &Spec) -> GradedMatrix {
    let ring = &pool()[s.ring];
    let o = Oracle::new(ring);
    let hi = *s.tdeg.iter().max().unwrap();
    let sdeg: Vec<i32> = s.sdeg.iter().map(|d| d + hi).collect();
    let mut k = 0;
    let mut coeff = || {
        k += 1;
        s.coeffs[k % s.coeffs.len()]
    };
    let rows: Vec<Vec<Polynomial>> = s
        .tdeg
        .iter()
        .map(|&t| {
            sdeg.iter()
                .map(|&d| {
                    let e = d - t;
                    let mut f = Polynomial::zero(ring.field(), ring.nvars());
                    if (1..=2).contains(&e) {
                        for m in common::monomials(ring.nvars(), e as u32) {
                            let c = ring.field().from_i64(coeff() as i64);
                            f = f.try_add(&o.mono(&m).scale(&c)).unwrap();
                        }
                    }
                    ring.normal_form(&f)
                })
                .collect()
        })
        .collect();
    GradedMatrix::from_polys(ring, s.tdeg.clone(), sdeg, &rows).unwrap()
}

fn all_minors(o: &Oracle, a: &GradedMatrix, r: usize) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for rs in combinations(a.nrows(), r) {
        for cs in combinations(a.ncols(), r) {
            let m: Vec<Vec<Polynomial>> = rs.iter().map(|&i| cs.iter().map(|&j| a.entry(i, j)).collect()).collect();
            let d = o.det(&m);
            if !o.is_zero(&d) {
                out.push(d);
            }
        }
    }
    out
}

fn product(o: &Oracle, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    a.iter().flat_map(|f| b.iter().map(move |g| o.mul(f, g))).filter(|f| !o.is_zero(f)).collect()
}

fn one(o: &Oracle) -> Vec<Polynomial> {
    vec![Polynomial::one(o.ring.field(), o.ring.nvars())]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn minors_lie_in_the_matching_power(s in spec(4), r in 1usize..=3) {
        let a = build(&s);
        prop_assume!(r <= a.nrows().min(a.ncols()));
        let o = Oracle::new(a.ring());
        let minors = all_minors(&o, &a, r);
        prop_assert!(minors.iter().all(|f| (0..r as u32).all(|d| f.homogeneous_component(d).is_zero())));
        prop_assert!(check_minors_in_mr(&a, r));
        let lib = minors_ideal(&a, r).generators();
        prop_assert!(o.same_ideal(&lib, &minors, top(&o.ring)));
    }

    #[test]
    fn tensor_with_identity_has_product_minors(s in spec(3), r in 1usize..=2) {
        // I_r(A ⊗ I_2) = Σ_{r1 + r2 = r} I_r1(A) I_r2(A)
        let a = build(&s);
        let o = Oracle::new(a.ring());
        let kron = a.kron_identity(2);
        let lhs = all_minors(&o, &kron, r);
        let mut rhs = Vec::new();
        for r1 in 0..=r {
            let p = |k: usize| if k == 0 { one(&o) } else { all_minors(&o, &a, k) };
            rhs.extend(product(&o, &p(r1), &p(r - r1)));
        }
        prop_assert!(o.same_ideal(&lhs, &rhs, top(&o.ring)));
        let lib = minors_ideal(&kron, r).generators();
        prop_assert!(o.same_ideal(&lib, &lhs, top(&o.ring)));
    }

    #[test]
    fn summands_have_smaller_minor_ideals(s in spec(3), t in spec(3), n in 1usize..=2) {
        let (a, b) = (build(&s), build(&Spec { ring: s.ring, ..t }));
        let (m1, m2) = (ModulePresentation::from_matrix(&a), ModulePresentation::from_matrix(&b));
        let sum = m1.direct_sum(&m2);
        let opts = ResolveOptions::steps(n);
        let (r1, rs) = (minimal_resolution(&m1, opts).unwrap(), minimal_resolution(&sum, opts).unwrap());
        let o = Oracle::new(a.ring());
        prop_assume!(r1.length() >= n && rs.length() >= n && rs.differential(n).ncols() <= 12);
        for r in 1..=2 {
            let small = all_minors(&o, r1.differential(n), r);
            let big = all_minors(&o, rs.differential(n), r);
            let joined: Vec<Polynomial> = small.iter().chain(&big).cloned().collect();
            prop_assert!(o.same_ideal(&joined, &big, top(&o.ring)), "I_{r} of the summand escapes at n={n}");
        }
    }

    #[test]
    fn change_of_basis_keeps_betti_and_minors(s in spec(3), seed in any::<u64>()) {
        let a = build(&s);
        let m = ModulePresentation::from_matrix(&a);
        let e = random_equivalent(&m, seed).unwrap();
        let o = Oracle::new(a.ring());
        prop_assert!(o.same_ideal(&all_minors(&o, &a, 1), &all_minors(&o, e.matrix(), 1), top(&o.ring)));
        let (ra, rb) = (minimal_resolution(&m, ResolveOptions::steps(3)).unwrap(), minimal_resolution(&e, ResolveOptions::steps(3)).unwrap());
        prop_assert_eq!(ra.betti_numbers(), rb.betti_numbers());
        for n in 1..=ra.length() {
            for r in 1..=2 {
                let x = o.minors_reach_power(ra.differential(n), r, 20_000);
                let y = o.minors_reach_power(rb.differential(n), r, 20_000);
                prop_assert_eq!(x, y, "n={} r={}", n, r);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn resolutions_are_minimal_complexes_with_the_right_euler_characteristic(s in spec(3)) {
        let a = build(&s);
        let m = ModulePresentation::from_matrix(&a);
        let res = minimal_resolution(&m, ResolveOptions::steps(4)).unwrap();
        let o = Oracle::new(a.ring());
        for n in 1..=res.length() {
            prop_assert!(o.is_minimal(res.differential(n)));
            if n < res.length() {
                prop_assert!(o.composes_to_zero(res.differential(n), res.differential(n + 1)));
            }
        }
        // F_5 starts in degree at least 5 + min degree, so lower degrees see the whole complex
        let lo = *a.target().degrees().iter().min().unwrap();
        let hm = |d: i32| o.free_dim(a.target().degrees(), d) - o.map_rank(&a, d);
        for d in lo..lo + 4 {
            prop_assert_eq!(res.euler_characteristic(d), hm(d) as i64, "degree {}", d);
        }
        for pos in 1..res.length() {
            for d in lo..lo + 4 {
                prop_assert_eq!(o.homology(res.differentials(), pos, d), 0);
            }
        }
    }

    #[test]
    fn determinants_agree_across_expansions(s in spec(4)) {
        let a = build(&s);
        let k = a.nrows().min(a.ncols());
        let o = Oracle::new(a.ring());
        let rows: Vec<Vec<Polynomial>> = (0..k).map(|i| (0..k).map(|j| a.entry(i, j)).collect()).collect();
        let leibniz = determinant_by_permutations(a.ring(), &rows);
        prop_assert!(o.is_zero(&leibniz.try_sub(&o.det(&rows)).unwrap()));
    }

    #[test]
    fn unit_row_scaling_keeps_minor_ideals(s in spec(3), c in 1i64..101) {
        let a = build(&s);
        let ring = a.ring();
        let o = Oracle::new(ring);
        let u = ring.field().from_i64(c);
        let mut rows = a.rows();
        for f in rows[0].iter_mut() {
            *f = f.scale(&u);
        }
        let b = GradedMatrix::from_polys(ring, a.target().degrees().to_vec(), a.source().degrees().to_vec(), &rows).unwrap();
        for r in 1..=a.nrows().min(a.ncols()).min(2) {
            prop_assert!(o.same_ideal(&all_minors(&o, &a, r), &all_minors(&o, &b, r), top(ring)));
        }
    }

    #[test]
    fn printed_polynomials_parse_back(coeffs in prop::collection::vec(-5i64..5, 10), exps in prop::collection::vec(0u16..4, 30)) {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let field = Field::DEFAULT;
        let mut f = Polynomial::zero(field, 3);
        for (i, &c) in coeffs.iter().enumerate() {
            let m = fitting_res::arith::Monomial::from_exponents(exps[3 * i..3 * i + 3].to_vec());
            f = f.try_add(&Polynomial::term(field, field.from_i64(c), m)).unwrap();
        }
        let text = f.to_string_with(&names);
        let g = parse_polynomial(&text, &names, field).unwrap();
        prop_assert_eq!(&g, &f, "{}", text);
        prop_assert_eq!(g.to_string_with(&names), text);
    }
}
