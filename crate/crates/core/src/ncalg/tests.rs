use std::collections::HashMap;

use super::*;
use crate::cyclo::CycNum;
use crate::error::Error;
use crate::hilbert::HilbertSeries;
use crate::ozone::{verify_automorphism, GradedAutomorphism};

fn pres(names: &[&str], params: &[(&str, CycNum)], rels: &[&str]) -> AlgebraPresentation {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let params: HashMap<String, CycNum> = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let gens = names.iter().map(|n| Generator::new(n.clone(), 1)).collect();
    let rels = rels.iter().map(|r| parse_element(r, &names, &params).unwrap()).collect();
    AlgebraPresentation::new("test", gens, rels).unwrap()
}

fn e(alg: &GradedAlgebra, s: &str) -> FreeElt {
    parse_element(s, &alg.names(), &HashMap::new()).unwrap()
}

fn quantum_plane(q: CycNum) -> AlgebraPresentation {
    pres(&["x", "y"], &[("q", q)], &["y*x - q*x*y"])
}

#[test]
fn quantum_plane_has_one_rule() {
    let alg = GradedAlgebra::new(quantum_plane(CycNum::zeta(3)), 6).unwrap();
    assert_eq!(alg.rewrite_system().rules().len(), 1);
    assert_eq!(alg.basis().dims(), vec![1, 2, 3, 4, 5, 6, 7]);
    let names: Vec<String> = alg.basis().words(2).iter().map(|w| word_string(w, &alg.names())).collect();
    assert_eq!(names, vec!["x^2", "x*y", "y^2"]);
    assert_eq!(alg.nf(&e(&alg, "y*x")).unwrap(), e(&alg, "z3*x*y"));
    assert!(alg.nf(&FreeElt::zero()).unwrap().is_zero());
}

#[test]
fn minus_one_plane_products() {
    let alg = GradedAlgebra::new(quantum_plane(CycNum::from_int(-1)), 4).unwrap();
    let (x, y) = (alg.gen(0), alg.gen(1));
    assert_eq!(alg.mul(&x, &y).unwrap(), e(&alg, "x*y"));
    assert_eq!(alg.mul(&y, &x).unwrap(), e(&alg, "-x*y"));
    assert_eq!(alg.mul(&x, &FreeElt::one()).unwrap(), x);
    assert!(matches!(alg.mul(&e(&alg, "x^3"), &e(&alg, "y^2")), Err(Error::DegreeOutOfRange { degree: 5, bound: 4 })));
}

#[test]
fn sklyanin_normal_form() {
    let p = pres(&["x", "y", "z"], &[], &["x*y + y*x - z^2", "y*z + z*y - x^2", "z*x + x*z - y^2"]);
    let alg = GradedAlgebra::new(p, 6).unwrap();
    assert_eq!(alg.basis().dims(), vec![1, 3, 6, 10, 15, 21, 28]);
    assert_eq!(alg.nf(&e(&alg, "x*y + y*x")).unwrap(), e(&alg, "z^2"));
}

#[test]
fn heisenberg_minus_one() {
    let p = pres(&["x", "y", "z"], &[("q", CycNum::from_int(-1))], &["z*x - q*x*z", "y*z - q*z*y", "x*y - q*y*x - z^2"]);
    let alg = GradedAlgebra::new(p, 5).unwrap();
    assert_eq!(alg.basis().dims(), vec![1, 3, 6, 10, 15, 21]);
    let (x, y) = (alg.gen(0), alg.gen(1));
    let lhs = &alg.mul(&x, &y).unwrap() + &alg.mul(&y, &x).unwrap();
    assert_eq!(lhs, e(&alg, "z^2"));
}

#[test]
fn down_up_dims() {
    for (a, b) in [(0, 1), (0, -1), (2, -1)] {
        let p = pres(
            &["x", "y"],
            &[("a", CycNum::from_int(a)), ("b", CycNum::from_int(b))],
            &["x^2*y - a*x*y*x - b*y*x^2", "x*y^2 - a*y*x*y - b*y^2*x"],
        )
        .with_hilbert(HilbertSeries::parse("1/((1-t)^2*(1-t^2))").unwrap());
        let alg = GradedAlgebra::new(p, 8).unwrap();
        assert_eq!(&alg.basis().dims()[..5], &[1, 2, 4, 6, 9]);
        assert_eq!(alg.basis().certification(), &Certification::Certified, "A({a},{b})");
    }
}

#[test]
fn certification_failure_is_recorded() {
    let p = quantum_plane(CycNum::one()).with_hilbert(HilbertSeries::parse("1/(1-t)^3").unwrap());
    let alg = GradedAlgebra::new(p, 3).unwrap();
    assert_eq!(alg.basis().certification(), &Certification::Failed { degree: 1, expected: 3, got: 2 });
}

#[test]
fn other_precedence_same_dims() {
    let p = pres(&["x", "y", "z"], &[], &["x*y + y*x - z^2", "y*z + z*y - x^2", "z*x + x*z - y^2"]);
    let order = MonomialOrder::new(p.weights(), &[2, 0, 1]).unwrap();
    let alg = GradedAlgebra::with_order(p, order, 5).unwrap();
    assert_eq!(alg.basis().dims(), vec![1, 3, 6, 10, 15, 21]);
}

#[test]
fn bad_inputs() {
    let names = vec!["x".to_string()];
    let r = parse_element("x*x - x", &names, &HashMap::new()).unwrap();
    assert_eq!(
        AlgebraPresentation::new("bad", vec![Generator::new("x", 1)], vec![r]),
        Err(Error::Inhomogeneous { index: 0 })
    );
    let one = AlgebraPresentation::new("one", vec![Generator::new("x", 1)], vec![FreeElt::one()]).unwrap();
    assert!(matches!(GradedAlgebra::new(one, 3), Err(Error::InconsistentPresentation)));
    let free = AlgebraPresentation::new("free", vec![Generator::new("x", 1), Generator::new("y", 1)], vec![]).unwrap();
    assert_eq!(GradedAlgebra::new(free, 4).unwrap().basis().dims(), vec![1, 2, 4, 8, 16]);
    let p = pres(&["x", "y", "z"], &[], &["x*y + y*x - z^2", "y*z + z*y - x^2", "z*x + x*z - y^2"]);
    assert!(matches!(
        complete_with_cap(&p, MonomialOrder::declaration(p.weights()), 6, 2),
        Err(Error::BudgetExceeded { cap: 2 })
    ));
}

#[test]
fn tensor_products() {
    let a = quantum_plane(CycNum::zeta(3)).with_hilbert(HilbertSeries::parse("1/(1-t)^2").unwrap());
    let t = AlgebraPresentation::new("k[t]", vec![Generator::new("t", 1)], vec![])
        .unwrap()
        .with_hilbert(HilbertSeries::parse("1/(1-t)").unwrap());
    let ab = tensor_product(&a, &t);
    assert_eq!(ab.names(), vec!["x", "y", "t"]);
    assert_eq!(ab.relations().len(), 3);
    assert_eq!(ab.declared_hilbert(), Some(&HilbertSeries::parse("1/(1-t)^3").unwrap()));
    let alg = GradedAlgebra::new(ab, 4).unwrap();
    assert_eq!(alg.basis().certification(), &Certification::Certified);

    let k = AlgebraPresentation::new("k", vec![], vec![]).unwrap();
    assert_eq!(tensor_product(&a, &k).relations(), a.relations());

    let m = quantum_plane(CycNum::from_int(-1)).with_hilbert(HilbertSeries::parse("1/(1-t)^2").unwrap());
    let mm = tensor_product(&m, &m);
    assert_eq!(mm.names(), vec!["x", "y", "x1", "y1"]);
    let alg = GradedAlgebra::new(mm, 4).unwrap();
    assert_eq!(alg.basis().dims(), HilbertSeries::parse("1/(1-t)^4").unwrap().expand(4).iter().map(|&c| c as usize).collect::<Vec<_>>());
}

#[test]
fn ore_extensions() {
    let kx = AlgebraPresentation::new("k[x]", vec![Generator::new("x", 1)], vec![])
        .unwrap()
        .with_hilbert(HilbertSeries::parse("1/(1-t)").unwrap());
    let alg = GradedAlgebra::new(kx.clone(), 3).unwrap();
    let sigma = verify_automorphism(&alg, vec![-FreeElt::gen(0)]).unwrap();
    let b = ore_extension(&kx, &sigma, 1).unwrap();
    let balg = GradedAlgebra::new(b, 3).unwrap();
    assert_eq!(balg.nf(&e(&balg, "t*x")).unwrap(), e(&balg, "-x*t"));
    assert_eq!(balg.basis().certification(), &Certification::Certified);

    let unverified = GradedAutomorphism::diagonal(vec![CycNum::from_int(-1)]);
    assert_eq!(ore_extension(&kx, &unverified, 1), Err(Error::UnverifiedAutomorphism));

    let id = verify_automorphism(&alg, vec![FreeElt::gen(0)]).unwrap();
    let poly = GradedAlgebra::new(ore_extension(&kx, &id, 2).unwrap(), 4).unwrap();
    assert_eq!(poly.basis().dims(), vec![1, 1, 2, 2, 3]);
}

#[test]
fn weighted_generators() {
    let gens = vec![Generator::new("x", 1), Generator::new("w", 2)];
    let names: Vec<String> = vec!["x".into(), "w".into()];
    let r = parse_element("w*x - x*w", &names, &HashMap::new()).unwrap();
    let p = AlgebraPresentation::new("kxw", gens, vec![r]).unwrap();
    let alg = GradedAlgebra::new(p, 6).unwrap();
    assert_eq!(alg.basis().dims(), vec![1, 1, 2, 2, 3, 3, 4]);
}
