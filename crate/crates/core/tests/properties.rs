use std::sync::OnceLock;

use num_bigint::BigInt;
use ozonelab_core::central::{center, center_degree, eta_of_normal, fixed_ring_degree, twisted_centralizer};
use ozonelab_core::cyclo::parse_scalar;
use ozonelab_core::families::{corpus_case, make_skew};
use ozonelab_core::hilbert::{rank_at_one, HilbertSeries};
use ozonelab_core::ncalg::{FreeElt, GradedAlgebra, Word};
use ozonelab_core::ozone::{diagonal_upper_bound, verify_automorphism, FiniteGroupTable};
use ozonelab_core::smash::SmashAlgebra;
use ozonelab_core::CycNum;
use proptest::prelude::*;

fn cyc(n: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-5i64..=5, 1i64..=4), 1..=4).prop_map(move |parts| {
        let mut acc = CycNum::zero();
        for (k, (num, den)) in parts.into_iter().enumerate() {
            let c = CycNum::from_ratio(BigInt::from(num), BigInt::from(den)).unwrap();
            acc = &acc + &(&c * &CycNum::root_power(n, k as i64));
        }
        acc
    })
}

fn algebra(id: &'static str, d: u32) -> GradedAlgebra {
    GradedAlgebra::new(corpus_case(id).unwrap().presentation, d).unwrap()
}

/// Random homogeneous element of degree `d`.
fn element(alg: &GradedAlgebra, d: u32, coeffs: &[i64]) -> FreeElt {
    let words = alg.basis().words(d);
    FreeElt::from_terms(words.iter().zip(coeffs.iter().cycle()).map(|(w, &c)| (w.clone(), CycNum::from_int(c))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in cyc(12), b in cyc(12), c in cyc(12)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycNum::zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_is_a_ring_map(a in cyc(12), b in cyc(12), k in prop::sample::select(vec![1u32, 5, 7, 11])) {
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
    }

    #[test]
    fn display_parses_back(a in cyc(8)) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn conductors_lift(a in cyc(6)) {
        prop_assert_eq!(a.lift(12), a.clone());
        prop_assert_eq!(&a.lift(12) + &CycNum::zeta(4), &a + &CycNum::zeta(4));
    }

    #[test]
    fn quantum_plane_dims_and_center(n in 2u32..=5, k in 1i64..5) {
        prop_assume!(num_integer::gcd(k, n as i64) == 1);
        let q = CycNum::root_power(n, k);
        let p = vec![vec![CycNum::one(), q.clone()], vec![q.inv().unwrap(), CycNum::one()]];
        let spec = make_skew(&p).unwrap();
        let max = 2 * n;
        let alg = GradedAlgebra::new(spec.presentation, max + 1).unwrap();
        for d in 0..=max {
            prop_assert_eq!(alg.dim(d), d as usize + 1);
            // Z = k[x^n, y^n]
            let want = if d % n == 0 { (d / n) as usize + 1 } else { 0 };
            prop_assert_eq!(center_degree(&alg, d).unwrap().dim(), want);
        }
        // rank equals |Oz| = n^2
        let h = HilbertSeries::parse("1/(1-t)^2").unwrap();
        let hz = HilbertSeries::parse(&format!("1/(1-t^{n})^2")).unwrap();
        prop_assert_eq!(rank_at_one(&h, &hz).unwrap().rank, (n * n) as u64);
    }

    #[test]
    fn multiplication_is_associative(c1 in prop::collection::vec(-3i64..=3, 3), c2 in prop::collection::vec(-3i64..=3, 6), c3 in prop::collection::vec(-3i64..=3, 3)) {
        let alg = shared_sklyanin();
        let (a, b, c) = (element(alg, 1, &c1), element(alg, 2, &c2), element(alg, 1, &c3));
        let left = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
        let right = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(alg.nf(&left).unwrap(), left);
    }

    #[test]
    fn eta_is_multiplicative_on_skew_monomials(i in 0usize..3, j in 0usize..3, k in 0usize..3) {
        let alg = shared_cy3();
        let f = FreeElt::word(Word::from_letters(&[i, j]));
        let g = FreeElt::word(Word::from_letters(&[k]));
        let ef = eta_of_normal(alg, &f).unwrap();
        let eg = eta_of_normal(alg, &g).unwrap();
        let efg = eta_of_normal(alg, &alg.mul(&f, &g).unwrap()).unwrap();
        let composed = eg.compose(&ef, alg).unwrap();
        prop_assert_eq!(efg.images(), composed.images());
    }

    #[test]
    fn molien_holds_for_diagonal_groups(a in 0u32..6, b in 0u32..6, c in 0u32..6) {
        let alg = shared_cy3();
        let g = FiniteGroupTable::from_diagonal_exponents(6, closure(6, &[a, b, c])).unwrap();
        for d in 0..=3 {
            // fixed_ring_degree checks the Molien average itself
            let f = fixed_ring_degree(alg, &g, d).unwrap();
            prop_assert!(f.dim() <= alg.dim(d));
        }
    }

    #[test]
    fn smash_products_associate(c1 in prop::collection::vec(-2i64..=2, 3), c2 in prop::collection::vec(-2i64..=2, 3), g1 in 0usize..2, g2 in 0usize..2, g3 in 0usize..2) {
        let alg = shared_heisenberg();
        let phi = verify_automorphism(alg, vec![-alg.gen(0), -alg.gen(1), alg.gen(2)]).unwrap();
        let s = SmashAlgebra::new(alg, FiniteGroupTable::generate(alg, &[phi], 4).unwrap()).unwrap();
        let u = s.pure(element(alg, 1, &c1), g1);
        let v = s.pure(element(alg, 1, &c2), g2);
        let w = s.pure(alg.gen(2), g3);
        let left = s.multiply(&s.multiply(&u, &v).unwrap(), &w).unwrap();
        let right = s.multiply(&u, &s.multiply(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

fn closure(n: u32, gen: &[u32]) -> Vec<Vec<u32>> {
    (0..n).map(|k| gen.iter().map(|&e| (e * k) % n).collect()).collect()
}

fn shared_sklyanin() -> &'static GradedAlgebra {
    static A: OnceLock<GradedAlgebra> = OnceLock::new();
    A.get_or_init(|| algebra("sklyanin_111m1", 5))
}

fn shared_cy3() -> &'static GradedAlgebra {
    static A: OnceLock<GradedAlgebra> = OnceLock::new();
    A.get_or_init(|| algebra("skew_cy3", 5))
}

fn shared_heisenberg() -> &'static GradedAlgebra {
    static A: OnceLock<GradedAlgebra> = OnceLock::new();
    A.get_or_init(|| algebra("heisenberg_m1", 5))
}

#[test]
fn identity_twist_is_the_center() {
    for id in ["skew_q3", "heisenberg_m1", "sklyanin_111m1", "downup_0_1", "bq_m1"] {
        let alg = algebra(id, 5);
        let id_map = verify_automorphism(&alg, (0..alg.ngens()).map(|i| alg.gen(i)).collect()).unwrap();
        for d in 0..=4 {
            assert_eq!(twisted_centralizer(&alg, &id_map, d).unwrap(), center_degree(&alg, d).unwrap(), "{id} {d}");
        }
    }
}

#[test]
fn rank_of_a_series_over_itself_is_one() {
    for id in ozonelab_core::families::CORPUS_IDS {
        let spec = corpus_case(id).unwrap();
        let h = spec.presentation.declared_hilbert().unwrap();
        assert_eq!(rank_at_one(h, h).unwrap().rank, 1, "{id}");
    }
}

#[test]
fn upper_bound_shrinks_with_degree() {
    for (id, n, top) in [("skew_q3", 6, 4), ("heisenberg_m1", 4, 4), ("s3_m1", 6, 4), ("downup_0_m1", 4, 5)] {
        let alg = algebra(id, top + 1);
        let z = center(&alg, top).unwrap();
        let mut prev: Option<FiniteGroupTable> = None;
        for d in 1..=top {
            let g = diagonal_upper_bound(&alg, &z, n, d).unwrap();
            if let Some(p) = &prev {
                assert!(g.is_subgroup_of(p), "{id} degree {d}");
            }
            prev = Some(g);
        }
    }
}
