use std::collections::HashMap;

use super::*;
use crate::central::center;
use crate::cyclo::CycNum;
use crate::error::Error;
use crate::ncalg::{parse_element, AlgebraPresentation, FreeElt, Generator, GradedAlgebra};

fn alg(names: &[&str], rels: &[&str], params: &[(&str, CycNum)], d: u32) -> GradedAlgebra {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let params: HashMap<String, CycNum> = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let gens = names.iter().map(|n| Generator::new(n.clone(), 1)).collect();
    let rels = rels.iter().map(|r| parse_element(r, &names, &params).unwrap()).collect();
    GradedAlgebra::new(AlgebraPresentation::new("t", gens, rels).unwrap(), d).unwrap()
}

fn e(a: &GradedAlgebra, s: &str) -> FreeElt {
    let params: HashMap<String, CycNum> = [("w".to_string(), CycNum::zeta(3))].into_iter().collect();
    parse_element(s, &a.names(), &params).unwrap()
}

fn plane(q: CycNum, d: u32) -> GradedAlgebra {
    alg(&["x", "y"], &["y*x - q*x*y"], &[("q", q)], d)
}

fn sklyanin(a: i64, b: i64, c: i64, d: u32) -> GradedAlgebra {
    let p = [("a", CycNum::from_int(a)), ("b", CycNum::from_int(b)), ("c", CycNum::from_int(c))];
    alg(&["x", "y", "z"], &["a*x*y + b*y*x + c*z^2", "a*y*z + b*z*y + c*x^2", "a*z*x + b*x*z + c*y^2"], &p, d)
}

#[test]
fn cube_root_plane_is_exact() {
    let a = plane(CycNum::zeta(3), 4);
    let z = center(&a, 3).unwrap();
    let r = ozone_sandwich(&a, &z, &[], 3, 3, Some(9)).unwrap();
    assert!(r.exact);
    assert_eq!(r.upper.order(), 9);
    assert_eq!(group_structure(&r.upper), GroupStructure::Abelian { invariant_factors: vec![3, 3] });
    assert!(divisibility_check(&r, 9));
    assert!(!divisibility_check(&r, 6));
    for w in &r.witnesses {
        let phi = r.upper.element(w.upper_index.unwrap());
        assert!(crate::central::is_twisted_central(&a, &w.element, phi).unwrap());
    }
    assert!(matches!(ozone_sandwich(&a, &z, &[], 3, 3, Some(4)), Err(Error::ContradictsDivisibility { order: 9, rank: 4 })));
}

#[test]
fn heisenberg_minus_one_upper_bound() {
    let a = alg(&["x", "y", "z"], &["z*x - q*x*z", "y*z - q*z*y", "x*y - q*y*x - z^2"], &[("q", CycNum::from_int(-1))], 4);
    let z = center(&a, 3).unwrap();
    let g = diagonal_upper_bound(&a, &z, 2, 3).unwrap();
    assert_eq!(g.order(), 2);
    let r = ozone_sandwich(&a, &z, &[], 2, 3, None).unwrap();
    assert!(r.exact);
    assert_eq!(r.non_central_witnesses().next().unwrap().element, a.gen(2));
}

#[test]
fn sklyanin_upper_bound_is_trivial() {
    let a = sklyanin(1, 1, -1, 4);
    let z = center(&a, 3).unwrap();
    assert_eq!(z.dims(), vec![1, 0, 3, 1]);
    let g = diagonal_upper_bound(&a, &z, 6, 3).unwrap();
    assert_eq!(g.order(), 1);
    assert!(matches!(diagonal_upper_bound(&a, &z, 300, 3), Err(Error::SearchSpaceTooLarge { .. })));
}

#[test]
fn upper_bound_decreases_with_degree() {
    let a = plane(CycNum::zeta(3), 4);
    let z = center(&a, 3).unwrap();
    let g2 = diagonal_upper_bound(&a, &z, 6, 2).unwrap();
    let g3 = diagonal_upper_bound(&a, &z, 6, 3).unwrap();
    assert_eq!(g2.order(), 36);
    assert_eq!(g3.order(), 9);
    assert!(g3.is_subgroup_of(&g2));
}

#[test]
fn swap_is_not_an_automorphism() {
    let a = plane(CycNum::zeta(3), 3);
    assert!(matches!(verify_automorphism(&a, vec![a.gen(1), a.gen(0)]), Err(Error::NotAutomorphism(_))));
    assert!(verify_automorphism(&a, vec![a.gen(0), a.gen(1)]).unwrap().is_identity());
}

#[test]
fn skew_recognition_cases() {
    let q = CycNum::zeta(3);
    let a = plane(q.clone(), 4);
    let p = skew_recognition(&a, &[a.gen(0), a.gen(1)]).unwrap();
    assert_eq!(p.get(0, 1), &q);

    let s = sklyanin(1, 0, -1, 4);
    let basis = [e(&s, "x + y + z"), e(&s, "x + w*y + w^2*z"), e(&s, "x + w^2*y + w*z")];
    let p = skew_recognition(&s, &basis).unwrap();
    let xi = CycNum::zeta(3);
    assert_eq!(p.get(0, 1), &xi);
    assert_eq!(p.get(1, 2), &xi);
    assert_eq!(p.get(2, 0), &xi);

    let b = alg(
        &["x", "y", "z"],
        &["x*y - q*y*x", "z*x - q*x*z - y^2", "z*y - q^-1*y*z - x^2"],
        &[("q", CycNum::from_int(-1))],
        4,
    );
    assert!(matches!(skew_recognition(&b, &[b.gen(0), b.gen(1), b.gen(2)]), Err(Error::NotSkew(_))));
}

#[test]
fn filtered_realization_of_quantum_plane() {
    let q = CycNum::zeta(3);
    let a = plane(q.clone(), 3);
    let p = vec![vec![CycNum::one(), q.clone()], vec![q.inv().unwrap(), CycNum::one()]];
    assert!(filtered_realization_check(&a, &[a.gen(0), a.gen(1)], &p).unwrap());
    let wrong = vec![vec![CycNum::one(), CycNum::one()], vec![CycNum::one(), CycNum::one()]];
    assert!(!filtered_realization_check(&a, &[a.gen(0), a.gen(1)], &wrong).unwrap());
}
