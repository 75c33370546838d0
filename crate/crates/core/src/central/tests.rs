use std::collections::HashMap;

use super::*;
use crate::ncalg::{parse_element, AlgebraPresentation, Generator};

fn alg(names: &[&str], rels: &[&str], q: CycNum, d: u32) -> GradedAlgebra {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let params: HashMap<String, CycNum> = [("q".to_string(), q)].into_iter().collect();
    let gens = names.iter().map(|n| Generator::new(n.clone(), 1)).collect();
    let rels = rels.iter().map(|r| parse_element(r, &names, &params).unwrap()).collect();
    GradedAlgebra::new(AlgebraPresentation::new("t", gens, rels).unwrap(), d).unwrap()
}

fn plane(q: CycNum, d: u32) -> GradedAlgebra {
    alg(&["x", "y"], &["y*x - q*x*y"], q, d)
}

fn e(a: &GradedAlgebra, s: &str) -> FreeElt {
    parse_element(s, &a.names(), &HashMap::new()).unwrap()
}

#[test]
fn center_of_minus_one_plane() {
    let a = plane(CycNum::from_int(-1), 7);
    let z = center(&a, 6).unwrap();
    assert_eq!(z.dims(), vec![1, 0, 2, 0, 3, 0, 4]);
    assert!(is_central(&a, &e(&a, "x^2 + y^2")).unwrap());
    assert!(!is_central(&a, &e(&a, "x*y")).unwrap());
    assert!(matches!(center_degree(&a, 7), Err(Error::DegreeOutOfRange { degree: 8, bound: 7 })));
}

#[test]
fn center_generators_of_cube_root_plane() {
    let a = plane(CycNum::zeta(3), 8);
    let z = center(&a, 7).unwrap();
    assert_eq!(z.dims(), vec![1, 0, 0, 2, 0, 0, 3, 0]);
    let gens = subalgebra_generators(&a, &z, 7, "z").unwrap();
    assert_eq!(gens.degrees(), vec![3, 3]);
    assert_eq!(gens.closure_dims, z.dims());
    let rels = find_relations(&a, &gens, 7).unwrap();
    assert!(rels.relations.is_empty());
}

#[test]
fn normal_element_automorphism() {
    let q = CycNum::zeta(3);
    let a = plane(q.clone(), 4);
    let eta = eta_of_normal(&a, &a.gen(0)).unwrap();
    assert_eq!(eta.images()[0], a.gen(0));
    assert_eq!(eta.images()[1], a.gen(1).scale(&q));
    let tw = twisted_centralizer(&a, &eta, 1).unwrap();
    assert_eq!(tw.dim(), 1);
    assert!(is_twisted_central(&a, &a.gen(0), &eta).unwrap());
    assert!(matches!(eta_of_normal(&a, &FreeElt::zero()), Err(Error::NotNormal(_))));
}

#[test]
fn non_normal_element_is_rejected() {
    let a = alg(&["x", "y"], &[], CycNum::one(), 4);
    assert!(matches!(eta_of_normal(&a, &a.gen(0)), Err(Error::NotNormal(_))));
}

#[test]
fn fixed_ring_and_veronese_relation() {
    let a = plane(CycNum::one(), 6);
    let minus = verify_automorphism(&a, vec![-a.gen(0), -a.gen(1)]).unwrap();
    let group = FiniteGroupTable::generate(&a, &[minus], 100).unwrap();
    assert_eq!(group.order(), 2);
    let fixed = fixed_ring(&a, &group, 6).unwrap();
    assert_eq!(fixed.dims(), vec![1, 0, 3, 0, 5, 0, 7]);
    let gens = subalgebra_generators(&a, &fixed, 6, "u").unwrap();
    assert_eq!(gens.degrees(), vec![2, 2, 2]);
    let rels = find_relations(&a, &gens, 6).unwrap();
    assert_eq!(rels.relations.len(), 1);
    let (deg, rel) = &rels.relations[0];
    assert_eq!(*deg, 4);
    assert_eq!(rel.terms.len(), 2);
}

#[test]
fn noncommuting_generators_are_rejected() {
    let a = alg(&["x", "y"], &[], CycNum::one(), 3);
    let gens = SubalgebraGens::from_elements(
        &a,
        vec![("u".into(), 1, a.to_vector(&a.gen(0), 1).unwrap()), ("v".into(), 1, a.to_vector(&a.gen(1), 1).unwrap())],
    );
    assert!(matches!(find_relations(&a, &gens, 3), Err(Error::NonCommutingGenerators(_))));
}

#[test]
fn comm_poly_display() {
    let p = CommPoly {
        names: vec!["a".into(), "b".into()],
        terms: vec![(vec![2, 0], CycNum::one()), (vec![1, 1], CycNum::from_int(-2)), (vec![0, 0], CycNum::from_int(3))],
    };
    assert_eq!(p.to_string(), "a^2 - 2*a*b + 3");
    assert_eq!(p.coefficient(&[1, 1]), CycNum::from_int(-2));
}

#[test]
fn group_invariant_factors() {
    let a = alg(&["x", "y", "z"], &[], CycNum::one(), 3);
    let w = CycNum::zeta(3);
    let g1 = verify_automorphism(&a, vec![a.gen(0).scale(&w), a.gen(1), a.gen(2)]).unwrap();
    let g2 = verify_automorphism(&a, vec![a.gen(0), a.gen(1).scale(&w), a.gen(2)]).unwrap();
    let g = FiniteGroupTable::generate(&a, &[g1, g2], 100).unwrap();
    assert_eq!(g.order(), 9);
    assert_eq!(g.invariant_factors(), Some(vec![3, 3]));
    let i = CycNum::zeta(4);
    let h1 = verify_automorphism(&a, vec![a.gen(0).scale(&i), a.gen(1), a.gen(2)]).unwrap();
    let h2 = verify_automorphism(&a, vec![a.gen(0), -a.gen(1), a.gen(2)]).unwrap();
    let h = FiniteGroupTable::generate(&a, &[h1, h2], 100).unwrap();
    assert_eq!(h.invariant_factors(), Some(vec![4, 2]));
    assert_eq!(FiniteGroupTable::trivial(3).invariant_factors(), Some(vec![]));
    let swap = verify_automorphism(&a, vec![a.gen(1), a.gen(0), a.gen(2)]).unwrap();
    let s3 = FiniteGroupTable::generate(&a, &[swap, verify_automorphism(&a, vec![a.gen(1), a.gen(2), a.gen(0)]).unwrap()], 100).unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(s3.invariant_factors(), None);
}
