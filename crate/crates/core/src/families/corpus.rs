use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{corpus_case, ExpectedRelation, FamilySpec, WitnessKind};
use crate::central::{
    center, eta_of_normal, find_relations, fixed_ring, is_central, subalgebra_generators, twisted_centralizer, CommPoly,
    GradedOps, GradedSubspace, SubalgebraGens,
};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::exactla::{Subspace, Vector};
use crate::hilbert::{fit_series, rank_at_one};
use crate::ncalg::{Certification, FreeElt, GradedAlgebra, Word};
use crate::ozone::{
    diagonal_upper_bound, divisibility_check, filtered_realization_check, ozone_sandwich, skew_recognition,
    verify_automorphism, verify_named, FiniteGroupTable, OzoneReport,
};
use crate::smash::{rank_multiplicativity_check, SmashAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    /// The claim being checked, in words.
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OzoneSummary {
    pub lower_order: usize,
    pub upper_order: usize,
    pub exact: bool,
    pub invariant_factors: Option<Vec<u64>>,
    pub upper_invariant_factors: Option<Vec<u64>>,
    pub candidate_class: String,
    /// `(automorphism, degree, element)` per witness.
    pub witnesses: Vec<(String, u32, String)>,
}

impl OzoneSummary {
    pub fn from_report(alg: &GradedAlgebra, r: &OzoneReport) -> OzoneSummary {
        let names = alg.names();
        OzoneSummary {
            lower_order: r.lower.order(),
            upper_order: r.upper.order(),
            exact: r.exact,
            invariant_factors: r.group().invariant_factors(),
            upper_invariant_factors: r.upper.invariant_factors(),
            candidate_class: r.candidate_class(),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| (w.automorphism.display(&names), w.degree, alg.display(&w.element)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub label: String,
    pub max_degree: u32,
    pub dims: Vec<usize>,
    pub center_dims: Vec<usize>,
    /// `(name, degree, element)`.
    pub center_generators: Vec<(String, u32, String)>,
    pub ozone: Option<OzoneSummary>,
    pub rank: Option<u64>,
    pub checks: Vec<Check>,
    /// Failure that stopped the pipeline early.
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub cases: Vec<CaseReport>,
    pub passed: usize,
    pub failed: usize,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Runs the named built-in cases in parallel; an empty selection gives an
/// empty report.
pub fn run_corpus(ids: &[&str]) -> CorpusReport {
    let cases: Vec<CaseReport> = ids
        .par_iter()
        .map(|id| match corpus_case(id) {
            Ok(spec) => run_case(&spec),
            Err(e) => failed_case(id, &e),
        })
        .collect();
    let passed = cases.iter().filter(|c| c.passed).count();
    CorpusReport { failed: cases.len() - passed, passed, cases }
}

fn failed_case(id: &str, e: &Error) -> CaseReport {
    CaseReport {
        id: id.to_string(),
        label: String::new(),
        max_degree: 0,
        dims: Vec::new(),
        center_dims: Vec::new(),
        center_generators: Vec::new(),
        ozone: None,
        rank: None,
        checks: Vec::new(),
        error: Some(e.to_string()),
        passed: false,
    }
}

struct Run<'a> {
    spec: &'a FamilySpec,
    report: CaseReport,
}

impl Run<'_> {
    fn record(&mut self, name: &str, citation: &str, outcome: Result<(bool, String)>) {
        let (status, detail) = match outcome {
            Ok((true, d)) => (CheckStatus::Pass, d),
            Ok((false, d)) => (CheckStatus::Fail, d),
            Err(e) => (CheckStatus::Fail, format!("error: {e}")),
        };
        self.report.checks.push(Check { name: name.into(), status, detail, citation: citation.into() });
    }

    fn claim(&self, i: usize) -> String {
        self.spec.expected.sources.get(i).cloned().unwrap_or_default()
    }
}

/// Full pipeline for one case, diffed against its expectations.
pub fn run_case(spec: &FamilySpec) -> CaseReport {
    let mut run = Run { spec, report: failed_case(&spec.id, &Error::Invalid(String::new())) };
    run.report.error = None;
    run.report.label = spec.presentation.label().to_string();
    if let Err(e) = pipeline(&mut run) {
        run.report.error = Some(e.to_string());
    }
    let r = &mut run.report;
    r.passed = r.error.is_none() && r.checks.iter().all(|c| c.status == CheckStatus::Pass);
    run.report
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn pipeline(run: &mut Run<'_>) -> Result<()> {
    let spec = run.spec;
    let e = &spec.expected;
    let alg = spec.algebra()?;
    run.report.max_degree = alg.max_degree();
    run.report.dims = alg.basis().dims();
    let cert = alg.basis().certification().clone();
    run.record(
        "dimensions match the declared series",
        "declared Hilbert series",
        Ok((cert != Certification::Unchecked && !matches!(cert, Certification::Failed { .. }), format!("{cert:?}"))),
    );

    for w in &e.witnesses {
        let outcome = check_witness(&alg, &w.element, &w.kind);
        let kind = if w.kind == WitnessKind::Central { "central" } else { "normal" };
        run.record(&format!("{} is {kind}", w.name), &run.claim(0), outcome);
    }

    let ozone_max = e.ozone.as_ref().map_or(0, |o| o.max_degree);
    let zmax = e.center_max_degree.max(ozone_max).max(e.fixed_ring_max_degree);
    let z = center(&alg, zmax)?;
    run.report.center_dims = z.dims();

    if e.center_max_degree > 0 {
        let gens = subalgebra_generators(&alg, &z, e.center_max_degree, "z")?;
        run.report.center_generators = gens.gens.iter().map(|g| (g.name.clone(), g.degree, g.text.clone())).collect();
        if let Some(expected) = &e.center_degrees {
            let got = gens.degrees();
            run.record(
                "center generator degrees",
                &run.claim(0),
                Ok((&sorted(got.clone()) == expected, format!("{got:?}, expected {expected:?}"))),
            );
        }
    }

    if let Some(rel) = &e.relation {
        let outcome = check_relation(&alg, &alg, rel.generators.iter().map(|(n, f)| (n.clone(), f.clone())).collect(), rel);
        run.record("relation among center generators", &run.claim(0), outcome);
    }

    let h_a = spec.presentation.declared_hilbert();
    if let (Some(h_z), Some(rank)) = (&e.h_z, e.rank) {
        let outcome = match h_a {
            Some(h) => rank_at_one(h, h_z).map(|r| (r.rank == rank, format!("rank {}, expected {rank}", r.rank))),
            None => Err(Error::SeriesUnavailable("algebra".into())),
        };
        run.record("rank from Hilbert series", &run.claim(1), outcome);
        let dims: Vec<i64> = z.dims().iter().map(|&d| d as i64).collect();
        run.record("center dimensions fit the center series", &run.claim(0), Ok((fit_series(&dims, h_z), format!("{dims:?}"))));
        run.report.rank = Some(rank);
    } else if let Some(rank) = e.rank {
        run.report.rank = Some(rank);
    }

    if let Some(n) = e.no_normal_up_to {
        let outcome = non_central_normals(&alg, e.ozone.as_ref().map_or(2, |o| o.conductor), n)
            .map(|found| (found.is_empty(), format!("{} diagonal twist(s) with normal elements: {found:?}", found.len())));
        run.record(&format!("no non-central normal elements in degrees <= {n}"), &run.claim(1), outcome);
    }

    let mut group: Option<FiniteGroupTable> = None;
    if let Some(o) = &e.ozone {
        let candidates = verify_named(&alg, spec.autos.clone())?;
        let report = ozone_sandwich(&alg, &z, &candidates, o.conductor, o.max_degree, e.rank)?;
        let summary = OzoneSummary::from_report(&alg, &report);
        let claim = run.claim(e.sources.len().saturating_sub(1));
        if o.exact {
            run.record("ozone sandwich is exact", &claim, Ok((report.exact, format!("lower {} upper {}", summary.lower_order, summary.upper_order))));
            let got = report.group().invariant_factors();
            run.record(
                "ozone group structure",
                &claim,
                Ok((got.as_ref() == Some(&o.factors), format!("{got:?}, expected {:?}", o.factors))),
            );
        } else {
            let got = report.upper.invariant_factors();
            run.record(
                "ozone upper bound structure",
                &claim,
                Ok((got.as_ref() == Some(&o.factors), format!("{got:?}, expected {:?}", o.factors))),
            );
        }
        if let Some(rank) = e.rank {
            run.record(
                "ozone order divides the rank",
                "the order of the ozone group divides the rank over the center",
                Ok((divisibility_check(&report, rank), format!("|G| = {}, rank {rank}", report.group().order()))),
            );
        }
        let outcome = eta_multiplicativity(&alg, &report);
        run.record("eta is multiplicative on witnesses", "eta_(fg) = eta_g o eta_f", outcome);
        run.report.ozone = Some(summary);
        group = Some(report.group().clone());
    }

    if let Some(g) = &group {
        if e.fixed_ring_max_degree > 0 {
            let fixed = fixed_ring(&alg, g, e.fixed_ring_max_degree);
            run.record(
                "fixed ring dimensions agree with the Molien average",
                "Molien formula",
                fixed.as_ref().map(|f| (true, format!("{:?}", f.dims()))).map_err(|e| e.clone()),
            );
            if let (Ok(f), Some(h)) = (&fixed, &e.fixed_ring_series) {
                let dims: Vec<i64> = f.dims().iter().map(|&d| d as i64).collect();
                run.record("fixed ring series", &run.claim(run.spec.expected.sources.len().saturating_sub(2)), Ok((fit_series(&dims, h), format!("{dims:?}"))));
            }
            if e.fixed_equals_center {
                let outcome = fixed.map(|f| {
                    let same = (0..=e.fixed_ring_max_degree).all(|d| f.piece(d) == z.piece(d));
                    (same, format!("fixed {:?}, center {:?}", f.dims(), &z.dims()[..=e.fixed_ring_max_degree as usize]))
                });
                run.record("fixed ring of the ozone group equals the center", "fixed ring of Oz is the center for skew polynomial rings", outcome);
            }
        }
        let base = if e.smash_check_degree > 0 { e.smash_check_degree } else { ozone_max };
        let smash_max = e.smash.as_ref().map_or(base, |s| s.max_degree.max(base));
        let s = SmashAlgebra::new(&alg, g.clone())?;
        let outcome = (0..=smash_max)
            .map(|d| s.center_degree(d).map(|sp| sp.dim()))
            .collect::<Result<Vec<usize>>>()
            .map(|dims| (dims.first() == Some(&1), format!("smash center dims {dims:?}")));
        run.record(
            "smash center: commutant equals span of normal invariants",
            "center of A # kG is spanned by f # g with f invariant and x f = f g(x)",
            outcome,
        );
        if let Some(se) = &e.smash {
            check_smash(run, &s, se)?;
        }
    }

    for r in &e.realizations {
        let outcome = filtered_realization_check(&alg, &r.generators, &r.params).map(|ok| (ok, String::new()));
        run.record(&format!("filtered realization {}", r.label), &run.claim(0), outcome);
    }

    if let Some(sk) = &e.skew {
        let outcome = skew_recognition(&alg, &sk.basis).map(|p| {
            let ok = sk.params.iter().all(|(i, j, v)| p.get(*i, *j) == v);
            (ok, format!("{:?}", p.matrix.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()))
        });
        run.record("skew polynomial recognition", &run.claim(0), outcome);
    }

    if let Some(ore) = &e.ore {
        let outcome = ore_prediction(&alg, ore);
        run.record("center of the Ore extension matches the invariant prediction", &run.claim(0), outcome);
    }
    Ok(())
}

fn check_witness(alg: &GradedAlgebra, f: &FreeElt, kind: &WitnessKind) -> Result<(bool, String)> {
    let f = alg.nf(f)?;
    if f.is_zero() {
        // zero is central but never normal in the sense of inducing a map
        return Ok((*kind == WitnessKind::Central, "vanishes in the algebra".into()));
    }
    let text = alg.display(&f);
    match kind {
        WitnessKind::Central => Ok((is_central(alg, &f)?, text)),
        WitnessKind::Normal(images) => {
            let eta = match eta_of_normal(alg, &f) {
                Ok(eta) => eta,
                Err(Error::NotNormal(m)) => return Ok((false, m)),
                Err(e) => return Err(e),
            };
            let shown = eta.display(&alg.names());
            match images {
                None => Ok((true, format!("{text}: eta = {shown}"))),
                Some(imgs) => {
                    let want = verify_automorphism(alg, imgs.clone())?;
                    Ok((want.images() == eta.images(), format!("{text}: eta = {shown}")))
                }
            }
        }
    }
}

/// Checks that the first relation found among the named generators is the
/// expected one, up to scaling.
fn check_relation(
    ops: &impl GradedOps,
    alg: &GradedAlgebra,
    named: Vec<(String, FreeElt)>,
    rel: &ExpectedRelation,
) -> Result<(bool, String)> {
    let mut elems = Vec::new();
    for (name, f) in named {
        let d = alg.degree_of(&f).ok_or_else(|| Error::Invalid(format!("{name} is not homogeneous")))?;
        elems.push((name, d, alg.to_vector(&alg.nf(&f)?, d)?));
    }
    let gens = SubalgebraGens::from_elements(ops, elems);
    compare_relations(ops, &gens, rel.degree, &rel.terms)
}

fn compare_relations(
    ops: &impl GradedOps,
    gens: &SubalgebraGens,
    degree: u32,
    terms: &[(Vec<u32>, CycNum)],
) -> Result<(bool, String)> {
    let found = find_relations(ops, gens, degree)?;
    let shown: Vec<String> = found.relations.iter().map(|(d, p)| format!("deg {d}: {p}")).collect();
    let [(d, poly)] = found.relations.as_slice() else {
        return Ok((false, format!("expected one relation, found {shown:?}")));
    };
    let lead = &terms[0].0;
    let Some(norm) = poly.normalized_at(lead) else {
        return Ok((false, format!("relation lacks the leading term: {poly}")));
    };
    let want = CommPoly { names: poly.names.clone(), terms: terms.to_vec() };
    let want = want.normalized_at(lead).expect("leading coefficient is nonzero");
    let same = norm.terms.iter().filter(|(_, c)| !c.is_zero()).all(|(ex, c)| &want.coefficient(ex) == c)
        && want.terms.iter().all(|(ex, c)| &norm.coefficient(ex) == c);
    Ok((same && *d == degree, format!("deg {d}: {poly}")))
}

fn check_smash(run: &mut Run<'_>, s: &SmashAlgebra<'_>, se: &super::SmashExpectation) -> Result<()> {
    let spec = run.spec;
    let alg = s.algebra();
    let claim = run.claim(run.spec.expected.sources.len().saturating_sub(1));
    let outcome = s.center_presentation(se.max_degree).map(|(g, _)| {
        let got = g.degrees();
        (sorted(got.clone()) == sorted(se.generator_degrees.clone()), format!("{got:?}"))
    });
    run.record("smash center generator degrees", &claim, outcome);
    let mut elems = Vec::new();
    for g in &se.generators {
        let phi = verify_automorphism(alg, g.group_element.clone())?;
        let k = s
            .group()
            .index_of(&phi)
            .ok_or_else(|| Error::Invalid(format!("{} lies outside the group", g.name)))?;
        let f = alg.nf(&g.element)?;
        let d = alg.degree_of(&f).ok_or_else(|| Error::Invalid(format!("{} is not homogeneous", g.name)))?;
        elems.push((g.name.clone(), d, s.to_vector(&s.pure(f, k), d)?));
    }
    let gens = SubalgebraGens::from_elements(s, elems);
    let outcome = compare_relations(s, &gens, se.relation_degree, &se.relation);
    run.record("smash center relation", &claim, outcome);
    if let (Some(rank), Some(rank_a)) = (se.rank, spec.expected.rank) {
        let outcome = rank_multiplicativity_check(
            s,
            rank_a,
            spec.presentation.declared_hilbert(),
            spec.expected.h_z.as_ref(),
            se.h_zbar.as_ref(),
        )
        .map(|r| {
            (r.holds && r.series_rank == rank, format!("series {} product {} over smash center {:?}", r.series_rank, r.product, r.rank_over_smash_center))
        });
        run.record("rank of the smash product over the center", &claim, outcome);
    }
    Ok(())
}

/// For pairs of witnesses whose product fits the degree budget, checks
/// `eta_(fg) = eta_g o eta_f`.
fn eta_multiplicativity(alg: &GradedAlgebra, report: &OzoneReport) -> Result<(bool, String)> {
    let top = alg.max_degree() - alg.presentation().max_weight();
    let ws: Vec<_> = report.non_central_witnesses().collect();
    let mut checked = 0;
    for (i, a) in ws.iter().enumerate() {
        for b in &ws[i..] {
            if a.degree + b.degree > top {
                continue;
            }
            let fg = alg.mul(&a.element, &b.element)?;
            let eta = eta_of_normal(alg, &fg)?;
            let composed = b.automorphism.compose(&a.automorphism, alg)?;
            if eta.images() != composed.images() {
                return Ok((false, format!("fails for degrees {} and {}", a.degree, b.degree)));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} pair(s)")))
}

/// Relation-preserving diagonal maps over the `n`-th roots of unity, other
/// than the identity, with a nonzero twisted centralizer in degrees `<= max`.
pub fn non_central_normals(alg: &GradedAlgebra, n: u32, max: u32) -> Result<Vec<(String, u32)>> {
    let empty = GradedSubspace::new((0..=max).map(|d| Subspace::zero(alg.dim(d))).collect());
    let all = diagonal_upper_bound(alg, &empty, n, max)?;
    let names = alg.names();
    let found: Vec<Option<(String, u32)>> = all
        .elements()
        .par_iter()
        .filter(|g| !g.is_identity())
        .map(|g| {
            for d in 1..=max {
                if !twisted_centralizer(alg, g, d)?.is_zero() {
                    return Ok(Some((g.display(&names), d)));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Compares `Z(A[t; sigma])_d` with `sum_k Z(A)^sigma_(d - kn) t^(kn)`.
fn ore_prediction(ext: &GradedAlgebra, ore: &super::OrePrediction) -> Result<(bool, String)> {
    let base = GradedAlgebra::new(ore.base.clone(), ore.max_degree + ore.base.max_weight())?;
    let sigma = verify_automorphism(&base, ore.sigma.clone())?;
    let t = base.ngens();
    let tw = ext.weights()[t];
    let mut mismatches = Vec::new();
    let mut dims = Vec::new();
    for d in 0..=ore.max_degree {
        let actual = crate::central::center_degree(ext, d)?;
        let mut vecs: Vec<Vector> = Vec::new();
        let mut k = 0;
        while k * tw <= d {
            let e = d - k * tw;
            let inv = crate::central::fixed_ring_degree_of(&base, std::slice::from_ref(&sigma), e)?;
            let z = crate::central::center_degree(&base, e)?.intersection(&inv)?;
            let tk = Word::power(t, k as usize);
            for v in z.basis() {
                let f = base.from_vector(e, v).sandwich(&Word::empty(), &tk);
                vecs.push(ext.to_vector(&ext.nf(&f)?, d)?);
            }
            k += ore.order;
        }
        let predicted = Subspace::span(ext.dim(d), vecs)?;
        dims.push((actual.dim(), predicted.dim()));
        if actual != predicted {
            mismatches.push(d);
        }
    }
    let detail = format!("(actual, predicted) per degree {dims:?}");
    match mismatches.first() {
        None => Ok((true, detail)),
        Some(d) => Ok((false, format!("first mismatch in degree {d}; {detail}"))),
    }
}
