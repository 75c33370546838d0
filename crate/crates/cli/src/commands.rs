use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use ozonelab_core::central::{
    center, eta_of_normal, find_relations, fixed_ring, is_central, subalgebra_generators, GradedSubspace,
};
use ozonelab_core::families::{corpus_case, run_corpus, CheckStatus, CorpusReport, OzoneSummary, CORPUS_IDS};
use ozonelab_core::hilbert::{rank_at_one, HilbertSeries};
use ozonelab_core::ncalg::{
    emit_algebra_file, parse_algebra_file, parse_autos_file, parse_element, word_string, AlgebraFile, Certification,
    GradedAlgebra, MonomialOrder,
};
use ozonelab_core::ozone::{group_structure, ozone_sandwich, verify_named, FiniteGroupTable, GradedAutomorphism};
use ozonelab_core::smash::SmashAlgebra;
use ozonelab_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::report::{digest, Report};

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            CliError::Input(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A finished command: the report plus its table rendering.
pub struct Output {
    pub report: Report,
    pub table: String,
    /// Exit status for a completed run (nonzero only for corpus failures).
    pub status: i32,
}

impl Output {
    fn ok(report: Report, table: String) -> Output {
        Output { report, table, status: 0 }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// A parsed spec file with its raw inputs for the digest.
pub struct Input {
    pub file: AlgebraFile,
    raw: Vec<String>,
}

impl Input {
    pub fn load(spec: &Path, extra_autos: Option<&PathBuf>) -> CliResult<Input> {
        let text = read(spec)?;
        let mut file = parse_algebra_file(&text)?;
        let mut raw = vec![text];
        if let Some(p) = extra_autos {
            let extra = read(p)?;
            file.autos.extend(parse_autos_file(&extra, &file.presentation.names())?);
            raw.push(extra);
        }
        Ok(Input { file, raw })
    }

    fn digest(&self, flags: &str) -> String {
        let mut parts: Vec<&[u8]> = self.raw.iter().map(|s| s.as_bytes()).collect();
        parts.push(flags.as_bytes());
        digest(&parts)
    }

    fn algebra(&self, max_degree: u32, order: Option<&str>) -> CliResult<GradedAlgebra> {
        let pres = self.file.presentation.clone();
        match order {
            None => Ok(GradedAlgebra::new(pres, max_degree)?),
            Some(list) => {
                let mut prec = Vec::new();
                for name in list.split(',').map(str::trim) {
                    prec.push(pres.index_of(name).ok_or_else(|| CliError::Input(format!("--order: unknown generator {name}")))?);
                }
                let order = MonomialOrder::new(pres.weights(), &prec)?;
                Ok(GradedAlgebra::with_order(pres, order, max_degree)?)
            }
        }
    }

    fn conductor(&self, flag: Option<u32>) -> u32 {
        flag.unwrap_or(self.file.conductor).max(1)
    }

    fn candidates(&self, alg: &GradedAlgebra) -> CliResult<Vec<(String, GradedAutomorphism)>> {
        let named = self.file.autos.iter().map(|a| (a.name.clone(), a.images.clone())).collect();
        Ok(verify_named(alg, named)?)
    }
}

fn cert_text(c: &Certification) -> String {
    match c {
        Certification::Unchecked => "unchecked (no declared series)".into(),
        Certification::Certified => "certified against the declared series".into(),
        Certification::Failed { degree, expected, got } => format!("FAILED in degree {degree}: expected {expected}, got {got}"),
    }
}

#[derive(Serialize, Deserialize)]
struct BasisPayload {
    label: String,
    max_degree: u32,
    dims: Vec<usize>,
    certification: Certification,
    normal_words: Vec<Vec<String>>,
}

pub fn basis(input: &Input, max_degree: u32, order: Option<&str>) -> CliResult<Output> {
    let alg = input.algebra(max_degree, order)?;
    let names = alg.names();
    let b = alg.basis();
    let payload = BasisPayload {
        label: alg.presentation().label().to_string(),
        max_degree,
        dims: b.dims(),
        certification: b.certification().clone(),
        normal_words: (0..=max_degree).map(|d| b.words(d).iter().map(|w| word_string(w, &names)).collect()).collect(),
    };
    let mut table = format!("{}\ncomplete to degree {max_degree}; {}\n", payload.label, cert_text(&payload.certification));
    let _ = writeln!(table, "{:>6}  {:>6}  normal words", "degree", "dim");
    for (d, words) in payload.normal_words.iter().enumerate() {
        let shown: Vec<&str> = words.iter().take(8).map(String::as_str).collect();
        let more = if words.len() > 8 { ", ..." } else { "" };
        let _ = writeln!(table, "{d:>6}  {:>6}  {}{more}", words.len(), shown.join(", "));
    }
    let cert = payload.certification.clone();
    let mut report = Report::new("basis", input.digest(&format!("basis {max_degree} {order:?}")), json!(payload));
    if cert != Certification::Unchecked {
        report.check("dimensions match the declared series", cert == Certification::Certified, "declared Hilbert series");
    }
    Ok(Output::ok(report, table))
}

#[derive(Serialize, Deserialize)]
struct Generator {
    name: String,
    degree: u32,
    element: String,
}

#[derive(Serialize, Deserialize)]
struct Relation {
    degree: u32,
    relation: String,
}

#[derive(Serialize, Deserialize)]
struct CenterPayload {
    max_degree: u32,
    dims: Vec<usize>,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
}

fn gen_table(table: &mut String, gens: &[Generator], rels: &[Relation]) {
    for g in gens {
        let _ = writeln!(table, "  {} (degree {}) = {}", g.name, g.degree, g.element);
    }
    if rels.is_empty() {
        let _ = writeln!(table, "relations: none in the range");
    }
    for r in rels {
        let _ = writeln!(table, "  relation in degree {}: {} = 0", r.degree, r.relation);
    }
}

pub fn center_cmd(input: &Input, max_degree: u32) -> CliResult<Output> {
    let pres = &input.file.presentation;
    let alg = input.algebra(max_degree + pres.max_weight(), None)?;
    let z = center(&alg, max_degree)?;
    let gens = subalgebra_generators(&alg, &z, max_degree, "z")?;
    let rels = find_relations(&alg, &gens, max_degree)?;
    let payload = CenterPayload {
        max_degree,
        dims: z.dims(),
        generators: gens.gens.iter().map(|g| Generator { name: g.name.clone(), degree: g.degree, element: g.text.clone() }).collect(),
        relations: rels.relations.iter().map(|(d, p)| Relation { degree: *d, relation: p.to_string() }).collect(),
    };
    let mut table = format!("center, complete up to degree {max_degree}\ndims {:?}\ngenerators:\n", payload.dims);
    gen_table(&mut table, &payload.generators, &payload.relations);
    let mut report = Report::new("center", input.digest(&format!("center {max_degree}")), json!(payload));
    let ok = payload.generators.iter().all(|g| {
        parse_element(&g.element, &alg.names(), &Default::default()).is_ok_and(|f| is_central(&alg, &f).unwrap_or(false))
    });
    report.check("generators re-verified central", ok, "center computed degree by degree");
    Ok(Output::ok(report, table))
}

#[derive(Serialize, Deserialize)]
struct OzonePayload {
    #[serde(flatten)]
    summary: OzoneSummary,
    structure: ozonelab_core::ozone::GroupStructure,
    max_degree: u32,
    conductor: u32,
}

fn ozone_report(input: &Input, alg: &GradedAlgebra, z: &GradedSubspace, n: u32, max: u32) -> CliResult<ozonelab_core::ozone::OzoneReport> {
    let cands = input.candidates(alg)?;
    Ok(ozone_sandwich(alg, z, &cands, n, max, None)?)
}

pub fn ozone(input: &Input, max_degree: u32, conductor: Option<u32>) -> CliResult<Output> {
    let pres = &input.file.presentation;
    let n = input.conductor(conductor);
    let alg = input.algebra(max_degree + pres.max_weight(), None)?;
    let z = center(&alg, max_degree)?;
    let r = ozone_report(input, &alg, &z, n, max_degree)?;
    let payload = OzonePayload {
        summary: OzoneSummary::from_report(&alg, &r),
        structure: group_structure(r.group()),
        max_degree,
        conductor: n,
    };
    let s = &payload.summary;
    let status = if s.exact { "exact" } else { "not exact" };
    let mut table = format!(
        "ozone sandwich ({status}) over {}\nlower bound order {}, upper bound order {}\ninvariant factors {:?}\nwitnesses:\n",
        s.candidate_class, s.lower_order, s.upper_order, s.invariant_factors
    );
    for (auto, d, f) in &s.witnesses {
        let _ = writeln!(table, "  degree {d}: {f}  induces  {auto}");
    }
    let mut report = Report::new("ozone", input.digest(&format!("ozone {max_degree} {n}")), json!(payload));
    report.check("ozone sandwich is exact", r.exact, "exactness relative to the candidate class and degree bound");
    report.check("witnesses re-verified", revalidate_witnesses(&alg, &payload.summary.witnesses), "eta of each witness equals its twist");
    Ok(Output::ok(report, table))
}

/// Re-checks serialized `(automorphism, degree, element)` witnesses.
pub fn revalidate_witnesses(alg: &GradedAlgebra, witnesses: &[(String, u32, String)]) -> bool {
    let names = alg.names();
    let none = Default::default();
    witnesses.iter().all(|(auto, _, elem)| {
        let Ok(f) = parse_element(elem, &names, &none) else { return false };
        let Some(images) = parse_auto(auto, &names) else { return false };
        match eta_of_normal(alg, &f) {
            Ok(eta) => alg_images_equal(alg, eta.images(), &images),
            Err(_) => false,
        }
    })
}

fn alg_images_equal(alg: &GradedAlgebra, a: &[ozonelab_core::ncalg::FreeElt], b: &[ozonelab_core::ncalg::FreeElt]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| alg.nf(&(x - y)).is_ok_and(|d| d.is_zero()))
}

fn parse_auto(text: &str, names: &[String]) -> Option<Vec<ozonelab_core::ncalg::FreeElt>> {
    let none = Default::default();
    let mut images = vec![None; names.len()];
    for part in text.split(", ") {
        let (lhs, rhs) = part.split_once(" -> ")?;
        let i = names.iter().position(|n| n == lhs.trim())?;
        images[i] = Some(parse_element(rhs, names, &none).ok()?);
    }
    images.into_iter().collect()
}

#[derive(Serialize, Deserialize)]
struct FixedPayload {
    group_order: usize,
    group_source: String,
    max_degree: u32,
    dims: Vec<usize>,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
}

/// The group generated by the spec's maps, or the ozone group if it has none.
fn acting_group(input: &Input, alg: &GradedAlgebra, max: u32, n: u32) -> CliResult<(FiniteGroupTable, String)> {
    let cands = input.candidates(alg)?;
    if cands.is_empty() {
        let z = center(alg, max)?;
        let r = ozone_report(input, alg, &z, n, max)?;
        let src = if r.exact { "ozone group (exact)" } else { "ozone lower bound" };
        Ok((r.group().clone(), src.to_string()))
    } else {
        let gens: Vec<GradedAutomorphism> = cands.into_iter().map(|(_, g)| g).collect();
        Ok((FiniteGroupTable::generate(alg, &gens, 100_000)?, "maps from the spec file".to_string()))
    }
}

pub fn fixed(input: &Input, max_degree: u32, conductor: Option<u32>) -> CliResult<Output> {
    let pres = &input.file.presentation;
    let n = input.conductor(conductor);
    let alg = input.algebra(max_degree + pres.max_weight(), None)?;
    let (group, source) = acting_group(input, &alg, max_degree, n)?;
    let f = fixed_ring(&alg, &group, max_degree)?;
    let gens = subalgebra_generators(&alg, &f, max_degree, "f")?;
    let rels = find_relations(&alg, &gens, max_degree).ok();
    let payload = FixedPayload {
        group_order: group.order(),
        group_source: source,
        max_degree,
        dims: f.dims(),
        generators: gens.gens.iter().map(|g| Generator { name: g.name.clone(), degree: g.degree, element: g.text.clone() }).collect(),
        relations: rels
            .map(|r| r.relations.iter().map(|(d, p)| Relation { degree: *d, relation: p.to_string() }).collect())
            .unwrap_or_default(),
    };
    let mut table = format!(
        "fixed ring of a group of order {} ({})\ndims {:?}\ngenerators:\n",
        payload.group_order, payload.group_source, payload.dims
    );
    gen_table(&mut table, &payload.generators, &payload.relations);
    let mut report = Report::new("fixed", input.digest(&format!("fixed {max_degree} {n}")), json!(payload));
    report.check("fixed dimensions agree with the Molien average", true, "Molien formula");
    Ok(Output::ok(report, table))
}

#[derive(Serialize, Deserialize)]
struct SmashPayload {
    group_order: usize,
    group_source: String,
    max_degree: u32,
    dims: Vec<usize>,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
}

pub fn smash(input: &Input, max_degree: u32, conductor: Option<u32>) -> CliResult<Output> {
    let pres = &input.file.presentation;
    let n = input.conductor(conductor);
    let alg = input.algebra(max_degree + pres.max_weight(), None)?;
    let (group, source) = acting_group(input, &alg, max_degree, n)?;
    let s = SmashAlgebra::new(&alg, group)?;
    let (gens, rels) = s.center_presentation(max_degree)?;
    let z = s.center(max_degree)?;
    let payload = SmashPayload {
        group_order: s.order(),
        group_source: source,
        max_degree,
        dims: z.dims(),
        generators: gens.gens.iter().map(|g| Generator { name: g.name.clone(), degree: g.degree, element: g.text.clone() }).collect(),
        relations: rels.relations.iter().map(|(d, p)| Relation { degree: *d, relation: p.to_string() }).collect(),
    };
    let mut table = format!(
        "center of A # kG, |G| = {} ({})\ngroup elements: {}\ndims {:?}\ngenerators:\n",
        payload.group_order,
        payload.group_source,
        s.group()
            .elements()
            .iter()
            .zip(s.group_names())
            .map(|(g, name)| format!("{name} = [{}]", g.display(&alg.names())))
            .collect::<Vec<_>>()
            .join("; "),
        payload.dims
    );
    gen_table(&mut table, &payload.generators, &payload.relations);
    let connected = payload.dims.first() == Some(&1);
    let mut report = Report::new("smash", input.digest(&format!("smash {max_degree} {n}")), json!(payload));
    report.check("commutant equals span of normal invariants", true, "center of A # kG spanned by f # g");
    report.check("degree-0 part of the center is the field", connected, "the center is connected graded");
    Ok(Output::ok(report, table))
}

pub fn rank(ha: &str, hz: &str) -> CliResult<Output> {
    let a = HilbertSeries::parse(ha)?;
    let z = HilbertSeries::parse(hz)?;
    let r = rank_at_one(&a, &z)?;
    let table = match r.pi_degree {
        Some(p) => format!("rank {} (PI degree {p})\n", r.rank),
        None => format!("rank {}\n", r.rank),
    };
    let report = Report::new("rank", digest(&[ha.as_bytes(), hz.as_bytes()]), json!(r));
    Ok(Output::ok(report, table))
}

pub fn corpus(cases: &[String]) -> CliResult<Output> {
    let ids: Vec<&str> = if cases.is_empty() { CORPUS_IDS.to_vec() } else { cases.iter().map(String::as_str).collect() };
    if let Some(bad) = ids.iter().find(|id| !CORPUS_IDS.contains(id)) {
        return Err(CliError::Input(format!("unknown corpus case '{bad}'")));
    }
    let r: CorpusReport = run_corpus(&ids);
    let mut table = String::new();
    for c in &r.cases {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(table, "{mark}  {}  ({} checks)", c.id, c.checks.len());
        for ch in c.checks.iter().filter(|ch| ch.status == CheckStatus::Fail) {
            let _ = writeln!(table, "      failed: {}: {}", ch.name, ch.detail);
        }
        if let Some(e) = &c.error {
            let _ = writeln!(table, "      error: {e}");
        }
    }
    let _ = writeln!(table, "{} passed, {} failed", r.passed, r.failed);
    let joined = ids.join(",");
    let mut report = Report::new("corpus", digest(&[joined.as_bytes()]), json!(r));
    for c in &r.cases {
        let claims: Vec<&str> = c.checks.iter().map(|ch| ch.citation.as_str()).filter(|s| !s.is_empty()).collect();
        let mut uniq: Vec<&str> = Vec::new();
        for s in claims {
            if !uniq.contains(&s) {
                uniq.push(s);
            }
        }
        report.check(c.id.clone(), c.passed, uniq.join("; "));
    }
    let status = if r.all_passed() { 0 } else { 1 };
    Ok(Output { report, table, status })
}

pub fn families_list() -> CliResult<Output> {
    let mut rows = Vec::new();
    let mut table = String::new();
    for id in CORPUS_IDS {
        let s = corpus_case(id)?;
        let _ = writeln!(table, "{id:<22} {:?}  {}", s.kind, s.presentation.label());
        rows.push(json!({"id": id, "kind": s.kind, "label": s.presentation.label()}));
    }
    Ok(Output::ok(Report::new("families list", digest(&[]), json!(rows)), table))
}

pub fn families_emit(id: &str) -> CliResult<String> {
    Ok(emit_algebra_file(&corpus_case(id)?.to_file()))
}

/// Loads a JSON report, checks its digest against the spec, and re-verifies
/// any witnesses it carries.
pub fn check_report(report_path: &Path, input: &Input) -> CliResult<Output> {
    let text = read(report_path)?;
    let r = Report::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", report_path.display())))?;
    let own = digest(&input.raw.iter().map(|s| s.as_bytes()).collect::<Vec<_>>());
    let mut out = Report::new("check-report", own, json!({"command": r.command, "checks": r.checks.len()}));
    let prefix_ok = {
        let max = r.payload.get("max_degree").and_then(|v| v.as_u64()).unwrap_or(0) as u32;
        let n = r.payload.get("conductor").and_then(|v| v.as_u64()).map(|v| v as u32);
        let flags = match r.command.as_str() {
            "ozone" => format!("ozone {max} {}", n.unwrap_or(0)),
            "center" => format!("center {max}"),
            _ => String::new(),
        };
        flags.is_empty() || input.digest(&flags) == r.input_digest
    };
    out.check("input digest matches the spec", prefix_ok, "report provenance");
    let mut ok = true;
    if let Some(ws) = r.payload.get("witnesses") {
        let ws: Vec<(String, u32, String)> = serde_json::from_value(ws.clone()).map_err(|e| CliError::Input(e.to_string()))?;
        let top = ws.iter().map(|w| w.1).max().unwrap_or(0);
        let alg = input.algebra(top + input.file.presentation.max_weight(), None)?;
        ok &= revalidate_witnesses(&alg, &ws);
    }
    if let (Some(gens), "center") = (r.payload.get("generators"), r.command.as_str()) {
        let gens: Vec<Generator> = serde_json::from_value(gens.clone()).map_err(|e| CliError::Input(e.to_string()))?;
        let top = gens.iter().map(|g| g.degree).max().unwrap_or(0);
        let alg = input.algebra(top + input.file.presentation.max_weight(), None)?;
        for g in &gens {
            let f = parse_element(&g.element, &alg.names(), &Default::default())?;
            ok &= is_central(&alg, &f)?;
        }
    }
    out.check("embedded witnesses re-verified", ok, "witnesses are stored as parseable elements");
    let table = out.checks.iter().map(|c| format!("{:?}  {}\n", c.status, c.name)).collect();
    let status = if out.all_pass() { 0 } else { 6 };
    Ok(Output { report: out, table, status })
}
