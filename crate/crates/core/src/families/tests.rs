use super::*;

#[test]
fn constructors_reject_bad_parameters() {
    let p = vec![vec![CycNum::one(), int(2)], vec![int(2), CycNum::one()]];
    assert_eq!(make_skew(&p).unwrap_err(), Error::NotAntisymmetric);
    assert!(matches!(make_heisenberg(CycNum::zeta(3)), Err(Error::BadOrder(_))));
    assert!(matches!(make_heisenberg(int(2)), Err(Error::BadOrder(_))));
    assert!(matches!(make_heisenberg_prime(-CycNum::one()), Err(Error::BadOrder(_))));
    assert!(matches!(make_bq(CycNum::zeta(3)), Err(Error::DegenerateParameters(_))));
    assert!(matches!(make_sklyanin(int(1), int(1), int(1)), Err(Error::DegenerateParameters(_))));
    assert!(matches!(make_sklyanin(int(0), int(0), int(1)), Err(Error::DegenerateParameters(_))));
    assert!(matches!(make_sklyanin_s3(CycNum::zeta(3)), Err(Error::DegenerateParameters(_))));
    assert!(matches!(make_downup(int(1), int(0)), Err(Error::DegenerateParameters(_))));
}

#[test]
fn every_corpus_id_builds() {
    for id in CORPUS_IDS {
        let s = corpus_case(id).unwrap();
        assert_eq!(s.id, *id);
        assert!(s.presentation.declared_hilbert().is_some(), "{id}");
    }
    assert!(corpus_case("nope").is_err());
}

#[test]
fn empty_selection_gives_empty_report() {
    let r = run_corpus(&[]);
    assert!(r.cases.is_empty());
    assert!(r.all_passed());
}

#[test]
fn commutative_ring_case_passes() {
    let r = run_corpus(&["skew_comm3"]);
    assert!(r.all_passed(), "{:#?}", r.cases[0]);
}

#[test]
fn emitted_files_round_trip() {
    use crate::ncalg::{emit_algebra_file, parse_algebra_file};
    for id in ["skew_q3", "sklyanin_10z6", "s3_m1"] {
        let s = corpus_case(id).unwrap();
        let text = emit_algebra_file(&s.to_file());
        let back = parse_algebra_file(&text).unwrap();
        assert_eq!(back.presentation.relations(), s.presentation.relations(), "{id}");
        assert_eq!(back.autos.len(), s.autos.len());
    }
}
