mod common;

use common::tensor_quotient_dim;
use ozonelab_core::families::{corpus_case, CORPUS_IDS};
use ozonelab_core::ncalg::{AlgebraPresentation, FreeElt, Generator, GradedAlgebra, Word};

#[test]
fn oracle_on_known_algebras() {
    let gens = |n: usize| (0..n).map(|i| Generator::new(format!("x{i}"), 1)).collect::<Vec<_>>();
    let free = AlgebraPresentation::new("free", gens(2), Vec::new()).unwrap();
    assert_eq!((0..5).map(|d| tensor_quotient_dim(&free, d)).collect::<Vec<_>>(), vec![1, 2, 4, 8, 16]);
    let comm = |i: usize, j: usize| {
        &FreeElt::word(Word::from_letters(&[i, j])) - &FreeElt::word(Word::from_letters(&[j, i]))
    };
    let poly = AlgebraPresentation::new("k[x,y,z]", gens(3), vec![comm(0, 1), comm(1, 2), comm(0, 2)]).unwrap();
    assert_eq!((0..5).map(|d| tensor_quotient_dim(&poly, d)).collect::<Vec<_>>(), vec![1, 3, 6, 10, 15]);
    // x^2 = 0 alone: words avoiding xx
    let sq = AlgebraPresentation::new("x^2", gens(2), vec![FreeElt::word(Word::from_letters(&[0, 0]))]).unwrap();
    assert_eq!((0..6).map(|d| tensor_quotient_dim(&sq, d)).collect::<Vec<_>>(), vec![1, 2, 3, 5, 8, 13]);
}

#[test]
fn corpus_dimensions_match_oracle() {
    for id in CORPUS_IDS {
        let spec = corpus_case(id).unwrap();
        let alg = GradedAlgebra::new(spec.presentation.clone(), 6).unwrap();
        for d in 0..=6 {
            assert_eq!(alg.dim(d), tensor_quotient_dim(&spec.presentation, d), "{id} degree {d}");
        }
    }
}
