//! Built-in algebra families with the answers expected for them.

mod corpus;

use std::collections::HashMap;

use serde::Serialize;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;
use crate::ncalg::{ore_extension, parse_element, tensor_product, AlgebraFile, AlgebraPresentation, AutoSpec, FreeElt, Generator, GradedAlgebra};
use crate::ozone::verify_automorphism;

pub use corpus::{run_case, run_corpus, CaseReport, Check, CheckStatus, CorpusReport, OzoneSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Skew,
    Heisenberg,
    HeisenbergPrime,
    Bq,
    Sklyanin,
    SklyaninS3,
    Downup,
    Tensor,
    Ore,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Central,
    /// Normal, optionally with the images of the generators under `eta`.
    Normal(Option<Vec<FreeElt>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub element: FreeElt,
    pub kind: WitnessKind,
}

/// A relation among named commuting elements: `(exponents, coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRelation {
    pub generators: Vec<(String, FreeElt)>,
    pub degree: u32,
    pub terms: Vec<(Vec<u32>, CycNum)>,
}

/// Named smash-product elements `a # g`, with `g` given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashGenerator {
    pub name: String,
    pub element: FreeElt,
    pub group_element: Vec<FreeElt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashExpectation {
    pub max_degree: u32,
    pub generator_degrees: Vec<u32>,
    pub generators: Vec<SmashGenerator>,
    /// `(exponents, coefficient)` over `generators`.
    pub relation: Vec<(Vec<u32>, CycNum)>,
    pub relation_degree: u32,
    /// `rk_Z(A # kG)`.
    pub rank: Option<u64>,
    /// Series of the smash center, when known.
    pub h_zbar: Option<HilbertSeries>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OzoneSetting {
    pub conductor: u32,
    pub max_degree: u32,
    /// Whether the lower and upper bounds are expected to meet.
    pub exact: bool,
    pub factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub label: String,
    pub generators: Vec<FreeElt>,
    pub params: Vec<Vec<CycNum>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewExpectation {
    pub basis: Vec<FreeElt>,
    /// `(i, j, p)` with `X_j X_i = p X_i X_j`.
    pub params: Vec<(usize, usize, CycNum)>,
}

/// Center of `A[t; sigma]` predicted as `Z(A)^<sigma>[t^n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrePrediction {
    pub base: AlgebraPresentation,
    pub sigma: Vec<FreeElt>,
    pub order: u32,
    pub max_degree: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpectedResults {
    pub center_max_degree: u32,
    pub center_degrees: Option<Vec<u32>>,
    pub witnesses: Vec<Witness>,
    pub relation: Option<ExpectedRelation>,
    pub h_z: Option<HilbertSeries>,
    pub rank: Option<u64>,
    pub ozone: Option<OzoneSetting>,
    /// Largest degree searched for non-central normal elements that must not exist.
    pub no_normal_up_to: Option<u32>,
    pub fixed_ring_series: Option<HilbertSeries>,
    pub fixed_ring_max_degree: u32,
    pub fixed_equals_center: bool,
    pub smash: Option<SmashExpectation>,
    pub smash_check_degree: u32,
    pub realizations: Vec<Realization>,
    pub skew: Option<SkewExpectation>,
    pub ore: Option<OrePrediction>,
    /// Where each expectation comes from, in words.
    pub sources: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: String,
    pub kind: FamilyKind,
    pub params: Vec<(String, CycNum)>,
    pub presentation: AlgebraPresentation,
    pub autos: Vec<(String, Vec<FreeElt>)>,
    pub expected: ExpectedResults,
}

impl FamilySpec {
    /// Largest degree the pipeline needs, plus the generator weights.
    pub fn required_degree(&self) -> u32 {
        let e = &self.expected;
        let mut d = e.center_max_degree.max(e.fixed_ring_max_degree).max(e.smash_check_degree);
        if let Some(o) = &e.ozone {
            d = d.max(o.max_degree);
        }
        if let Some(n) = e.no_normal_up_to {
            d = d.max(n);
        }
        if let Some(s) = &e.smash {
            d = d.max(s.max_degree);
        }
        for w in &e.witnesses {
            if let Some(k) = w.element.degree(&self.presentation.weights()) {
                d = d.max(k);
            }
        }
        let rel = e.relation.as_ref().map_or(0, |r| r.degree);
        (d + self.presentation.max_weight()).max(rel).max(self.presentation.max_relation_degree())
    }

    pub fn algebra(&self) -> Result<GradedAlgebra> {
        GradedAlgebra::new(self.presentation.clone(), self.required_degree())
    }

    /// Spec-file form, including candidate automorphisms.
    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            presentation: self.presentation.clone(),
            conductor: self.presentation.conductor(),
            params: Vec::new(),
            autos: self.autos.iter().map(|(n, imgs)| AutoSpec { name: n.clone(), images: imgs.clone() }).collect(),
        }
    }
}

struct Ctx {
    names: Vec<String>,
    params: HashMap<String, CycNum>,
}

impl Ctx {
    fn new(names: &[&str], params: &[(&str, CycNum)]) -> Ctx {
        Ctx {
            names: names.iter().map(|s| s.to_string()).collect(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }

    fn e(&self, s: &str) -> FreeElt {
        parse_element(s, &self.names, &self.params).unwrap_or_else(|err| panic!("built-in element {s}: {err}"))
    }

    fn es(&self, s: &[&str]) -> Vec<FreeElt> {
        s.iter().map(|x| self.e(x)).collect()
    }

    fn presentation(&self, label: &str, rels: &[&str], h: &str) -> Result<AlgebraPresentation> {
        let gens = self.names.iter().map(|n| Generator::new(n.clone(), 1)).collect();
        Ok(AlgebraPresentation::new(label, gens, self.es(rels))?.with_hilbert(HilbertSeries::parse(h)?))
    }
}

fn series(s: &str) -> HilbertSeries {
    HilbertSeries::parse(s).expect("built-in series")
}

fn int(v: i64) -> CycNum {
    CycNum::from_int(v)
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

fn param_matrix(n: usize, entries: &[(usize, usize, CycNum)]) -> Result<Vec<Vec<CycNum>>> {
    let mut p = vec![vec![CycNum::one(); n]; n];
    for (i, j, v) in entries {
        p[*j][*i] = v.inv()?;
        p[*i][*j] = v.clone();
    }
    Ok(p)
}

fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Skew polynomial ring with `x_j x_i = p[i][j] x_i x_j`.
pub fn make_skew(p: &[Vec<CycNum>]) -> Result<FamilySpec> {
    let n = p.len();
    for i in 0..n {
        if p[i].len() != n || !p[i][i].is_one() {
            return Err(Error::NotAntisymmetric);
        }
        for j in 0..n {
            if &p[i][j] * &p[j][i] != CycNum::one() {
                return Err(Error::NotAntisymmetric);
            }
        }
    }
    let names = default_names(n);
    let gens = names.iter().map(|s| Generator::new(s.clone(), 1)).collect();
    let mut rels = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let xj_xi = FreeElt::word(crate::ncalg::Word::from_letters(&[j, i]));
            let xi_xj = FreeElt::word(crate::ncalg::Word::from_letters(&[i, j]));
            rels.push(&xj_xi - &xi_xj.scale(&p[i][j]));
        }
    }
    let pres = AlgebraPresentation::new("skew polynomial ring", gens, rels)?
        .with_hilbert(HilbertSeries::polynomial_ring(&vec![1; n]));
    let mut witnesses = Vec::new();
    for (i, name) in names.iter().enumerate() {
        // x_j x_i = p[i][j] x_i x_j gives eta(x_j) = p[i][j] x_j
        let images = (0..n).map(|j| FreeElt::gen(j).scale(&p[i][j])).collect();
        witnesses.push(Witness { name: name.clone(), element: FreeElt::gen(i), kind: WitnessKind::Normal(Some(images)) });
    }
    let params = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| (format!("p{}{}", i + 1, j + 1), p[i][j].clone()))
        .collect();
    Ok(FamilySpec {
        id: "skew".into(),
        kind: FamilyKind::Skew,
        params,
        presentation: pres,
        autos: Vec::new(),
        expected: ExpectedResults {
            witnesses,
            fixed_equals_center: true,
            sources: vec!["ozone group of a skew polynomial ring is generated by the maps eta of its generators".into()],
            ..Default::default()
        },
    })
}

fn primitive_order(q: &CycNum) -> Result<u32> {
    q.root_order().map_err(|_| Error::BadOrder(format!("{q} is not a root of unity")))
}

/// `zx - q xz, yz - q zy, xy - q yx - z^2`.
pub fn make_heisenberg(q: CycNum) -> Result<FamilySpec> {
    let l = primitive_order(&q)?;
    if l < 2 || l == 3 {
        return Err(Error::BadOrder(format!("q has order {l}; orders 1 and 3 are excluded")));
    }
    let cx = Ctx::new(&["x", "y", "z"], &[("q", q.clone())]);
    let pres = cx.presentation("quantum Heisenberg algebra", &["z*x - q*x*z", "y*z - q*z*y", "x*y - q*y*x - z^2"], "1/(1-t)^3")?;
    let omega_z = cx.e("(x*y - q^-2*y*x)*z");
    let factors = if l % 3 == 0 { vec![l as u64, 3] } else { vec![l as u64] };
    let mut witnesses = vec![
        Witness { name: "Omega*z".into(), element: omega_z, kind: WitnessKind::Central },
        Witness { name: "z".into(), element: cx.e("z"), kind: WitnessKind::Normal(Some(cx.es(&["q^-1*x", "q*y", "z"]))) },
    ];
    for g in ["x", "y", "z"] {
        witnesses.push(Witness { name: format!("{g}^{l}"), element: cx.e(&format!("{g}^{l}")), kind: WitnessKind::Central });
    }
    Ok(FamilySpec {
        id: "heisenberg".into(),
        kind: FamilyKind::Heisenberg,
        params: vec![("q".into(), q)],
        presentation: pres,
        autos: Vec::new(),
        expected: ExpectedResults {
            center_max_degree: l.max(3),
            center_degrees: Some(sorted(vec![l, l, l, 3])),
            witnesses,
            ozone: Some(OzoneSetting { conductor: 2 * l, max_degree: l.max(3), exact: true, factors }),
            sources: vec![
                "center generated by x^l, y^l, z^l and (xy - q^-2 yx) z".into(),
                "ozone group cyclic of order l, times Z_3 when 3 divides l".into(),
            ],
            ..Default::default()
        },
    })
}

/// `xz - q zx, zy - q yz, xy - q yx - z^2`.
pub fn make_heisenberg_prime(q: CycNum) -> Result<FamilySpec> {
    let l = primitive_order(&q)?;
    if l < 3 {
        return Err(Error::BadOrder(format!("q has order {l}; order at least 3 is required")));
    }
    let cx = Ctx::new(&["x", "y", "z"], &[("q", q.clone())]);
    let pres =
        cx.presentation("non-CY quantum Heisenberg algebra", &["x*z - q*z*x", "z*y - q*y*z", "x*y - q*y*x - z^2"], "1/(1-t)^3")?;
    let mut witnesses =
        vec![Witness { name: "Omega*z^(l-1)".into(), element: cx.e(&format!("(x*y - q^2*y*x)*z^{}", l - 1)), kind: WitnessKind::Central }];
    for g in ["x", "y", "z"] {
        witnesses.push(Witness { name: format!("{g}^{l}"), element: cx.e(&format!("{g}^{l}")), kind: WitnessKind::Central });
    }
    Ok(FamilySpec {
        id: "heisenberg_prime".into(),
        kind: FamilyKind::HeisenbergPrime,
        params: vec![("q".into(), q)],
        presentation: pres,
        autos: Vec::new(),
        expected: ExpectedResults {
            center_max_degree: l + 1,
            center_degrees: Some(sorted(vec![l, l, l, l + 1])),
            witnesses,
            ozone: Some(OzoneSetting { conductor: 2 * l, max_degree: l + 1, exact: true, factors: vec![l as u64] }),
            sources: vec!["center generated by x^l, y^l, z^l and (xy - q^2 yx) z^(l-1); ozone group cyclic of order l".into()],
            ..Default::default()
        },
    })
}

/// `xy - q yx, zx - q xz - y^2, zy - q^-1 yz - x^2`.
pub fn make_bq(q: CycNum) -> Result<FamilySpec> {
    let n = q.root_order().map_err(|_| Error::DegenerateParameters(format!("{q} is not a root of unity")))?;
    if n == 1 || n == 3 {
        return Err(Error::DegenerateParameters(format!("q has order {n}")));
    }
    let cx = Ctx::new(&["x", "y", "z"], &[("q", q.clone())]);
    let pres = cx.presentation("B_q", &["x*y - q*y*x", "z*x - q*x*z - y^2", "z*y - q^-1*y*z - x^2"], "1/(1-t)^3")?;
    let omega = cx.e("x*y*z - q*(q^-2 - q)^-1*y^3 - (q^2 - q^-1)^-1*x^3");
    let mut witnesses = vec![Witness { name: "Omega".into(), element: omega, kind: WitnessKind::Central }];
    for g in ["x", "y", "z"] {
        witnesses.push(Witness { name: format!("{g}^{n}"), element: cx.e(&format!("{g}^{n}")), kind: WitnessKind::Central });
    }
    let (factors, max_degree) = if n % 3 == 0 { (vec![3, 3], n) } else { (vec![], n.max(3)) };
    let sources = if n % 3 == 0 {
        "ozone group (Z_3)^2 when 3 divides the order of q"
    } else {
        "ozone group trivial when 3 does not divide the order of q"
    };
    Ok(FamilySpec {
        id: "bq".into(),
        kind: FamilyKind::Bq,
        params: vec![("q".into(), q)],
        presentation: pres,
        autos: Vec::new(),
        expected: ExpectedResults {
            center_max_degree: max_degree,
            witnesses,
            ozone: Some(OzoneSetting { conductor: 2 * n.max(3), max_degree, exact: true, factors }),
            sources: vec!["Omega = xyz - q(q^-2 - q)^-1 y^3 - (q^2 - q^-1)^-1 x^3 is central".into(), sources.into()],
            ..Default::default()
        },
    })
}

fn sklyanin_presentation(a: &CycNum, b: &CycNum, c: &CycNum, label: &str) -> Result<(Ctx, AlgebraPresentation)> {
    let nonzero = [a, b, c].iter().filter(|v| !v.is_zero()).count();
    let (a3, b3, c3) = (a.pow(3)?, b.pow(3)?, c.pow(3)?);
    if nonzero <= 1 || (a3 == b3 && b3 == c3) {
        return Err(Error::DegenerateParameters(format!("[{a}:{b}:{c}] is degenerate")));
    }
    let cx = Ctx::new(&["x", "y", "z"], &[("a", a.clone()), ("b", b.clone()), ("c", c.clone()), ("w", CycNum::zeta(3))]);
    let pres = cx.presentation(label, &["a*x*y + b*y*x + c*z^2", "a*y*z + b*z*y + c*x^2", "a*z*x + b*x*z + c*y^2"], "1/(1-t)^3")?;
    Ok((cx, pres))
}

/// Three-dimensional Sklyanin algebra `S(a, b, c)`.
pub fn make_sklyanin(a: CycNum, b: CycNum, c: CycNum) -> Result<FamilySpec> {
    let (cx, pres) = sklyanin_presentation(&a, &b, &c, "Sklyanin algebra")?;
    let g = cx.e("c*(c^3 - b^3)*y^3 + b*(c^3 - a^3)*y*x*z + a*(b^3 - c^3)*x*y*z + c*(a^3 - c^3)*x^3");
    let mut spec = FamilySpec {
        id: "sklyanin".into(),
        kind: FamilyKind::Sklyanin,
        params: vec![("a".into(), a.clone()), ("b".into(), b.clone()), ("c".into(), c.clone())],
        presentation: pres,
        autos: Vec::new(),
        expected: ExpectedResults::default(),
    };
    let mut witnesses = Vec::new();
    if !g.is_zero() {
        witnesses.push(Witness { name: "g (coefficient formula)".into(), element: g, kind: WitnessKind::Central });
    }
    let (one, zero, minus) = (CycNum::one(), CycNum::zero(), -CycNum::one());
    let e = &mut spec.expected;
    if a == one && b == one && c == minus {
        let gens: Vec<(String, FreeElt)> = [("t1", "x^2"), ("t2", "y^2"), ("t3", "z^2"), ("g", "x^3 - y^3 - x*y*z + y*x*z")]
            .iter()
            .map(|(n, s)| (n.to_string(), cx.e(s)))
            .collect();
        for (n, f) in &gens {
            witnesses.push(Witness { name: n.clone(), element: f.clone(), kind: WitnessKind::Central });
        }
        e.center_max_degree = 6;
        e.center_degrees = Some(vec![2, 2, 2, 3]);
        e.relation = Some(ExpectedRelation {
            generators: gens,
            degree: 6,
            terms: vec![
                (vec![3, 0, 0, 0], int(1)),
                (vec![0, 3, 0, 0], int(1)),
                (vec![0, 0, 3, 0], int(1)),
                (vec![1, 1, 1, 0], int(-5)),
                (vec![0, 0, 0, 2], int(-1)),
            ],
        });
        e.h_z = Some(series("(1-t^6)/((1-t^2)^3*(1-t^3))"));
        e.rank = Some(4);
        e.ozone = Some(OzoneSetting { conductor: 6, max_degree: 3, exact: true, factors: vec![] });
        e.no_normal_up_to = Some(4);
        e.sources = vec![
            "center generated by x^2, y^2, z^2 and g = x^3 - y^3 - xyz + yxz with one relation of degree 6".into(),
            "rank over the center is 4 and the ozone group is trivial".into(),
        ];
    } else if a == one && b == zero && c == minus {
        let w = CycNum::zeta(3);
        let basis = cx.es(&["x + y + z", "x + w*y + w^2*z", "x + w^2*y + w*z"]);
        e.skew = Some(SkewExpectation { basis: basis.clone(), params: vec![(0, 1, w.clone()), (1, 2, w.clone()), (2, 0, w.clone())] });
        for (k, f) in basis.iter().enumerate() {
            witnesses.push(Witness { name: ["X", "Y", "Z"][k].into(), element: f.clone(), kind: WitnessKind::Normal(None) });
        }
        e.center_max_degree = 3;
        e.ozone = Some(OzoneSetting { conductor: 6, max_degree: 3, exact: true, factors: vec![3, 3] });
        e.rank = Some(9);
        e.h_z = Some(series("(1-t^9)/(1-t^3)^4"));
        e.fixed_equals_center = true;
        e.sources = vec!["isomorphic to the skew polynomial ring YX = wXY, ZY = wYZ, XZ = wZX with ozone group (Z_3)^2".into()];
        // eta_X is diagonal in X, Y, Z but permutes x, y, z
        spec.autos = vec![("cycle".into(), cx.es(&["z", "x", "y"]))];
    } else if a == one && b == zero && (c == CycNum::zeta(6) || c == CycNum::root_power(6, 5)) {
        witnesses.push(Witness { name: "x^3".into(), element: cx.e("x^3"), kind: WitnessKind::Central });
        witnesses.push(Witness { name: "Omega1".into(), element: cx.e("x*z*y + y*x*z + z*y*x"), kind: WitnessKind::Central });
        let xi = -c.clone();
        let cx2 = Ctx::new(&["x", "y", "z"], &[("s", xi)]);
        witnesses.push(Witness {
            name: "Omega2".into(),
            element: cx2.e("x^2*y + x^2*z + s*(z^2*x + y^2*x) + s^2*(z^2*y + y^2*z)"),
            kind: WitnessKind::Central,
        });
        e.center_max_degree = 3;
        e.ozone = Some(OzoneSetting { conductor: 12, max_degree: 3, exact: true, factors: vec![3] });
        e.sources = vec!["x^3, xzy + yxz + zyx and the degree-3 element Omega2 are central; ozone group Z_3".into()];
        spec.autos = vec![
            ("cycle".into(), cx.es(&["y", "z", "x"])),
            ("cycle2".into(), cx.es(&["z", "x", "y"])),
        ];
    }
    spec.expected.witnesses = witnesses;
    Ok(spec)
}

/// `S(0, 1, -alpha)`: `yx - alpha z^2, xz - alpha y^2, zy - alpha x^2`.
pub fn make_sklyanin_s3(alpha: CycNum) -> Result<FamilySpec> {
    if alpha.pow(3)?.is_one() {
        return Err(Error::DegenerateParameters("alpha^3 = 1".into()));
    }
    let (cx, pres) = sklyanin_presentation(&CycNum::zero(), &CycNum::one(), &-alpha.clone(), "Sklyanin algebra of type S3")?;
    let mut spec = FamilySpec {
        id: "sklyanin_s3".into(),
        kind: FamilyKind::SklyaninS3,
        params: vec![("alpha".into(), alpha.clone())],
        presentation: pres,
        autos: vec![("tau".into(), cx.es(&["z", "x", "y"])), ("rho".into(), cx.es(&["w*x", "w*y", "w*z"]))],
        expected: ExpectedResults::default(),
    };
    if alpha == -CycNum::one() {
        let e = &mut spec.expected;
        e.witnesses = vec![
            Witness { name: "Omega".into(), element: cx.e("x*y + y*z + z*x"), kind: WitnessKind::Normal(Some(cx.es(&["z", "x", "y"]))) },
            Witness {
                name: "Phi".into(),
                element: cx.e("x*y + w*y*z + w^2*z*x"),
                kind: WitnessKind::Normal(Some(cx.es(&["w*z", "w*x", "w*y"]))),
            },
            Witness { name: "t".into(), element: cx.e("(z^2*y)^2 + (x^2*z)^2 + (y^2*x)^2"), kind: WitnessKind::Central },
        ];
        e.center_max_degree = 6;
        e.ozone = Some(OzoneSetting { conductor: 6, max_degree: 6, exact: true, factors: vec![3, 3] });
        e.sources = vec![
            "xy + yz + zx induces tau and xy + w yz + w^2 zx induces rho tau".into(),
            "ozone group generated by tau and rho, isomorphic to Z_3 x Z_3".into(),
        ];
    }
    Ok(spec)
}

/// Down-up algebra `A(alpha, beta)`.
pub fn make_downup(alpha: CycNum, beta: CycNum) -> Result<FamilySpec> {
    if beta.is_zero() {
        return Err(Error::DegenerateParameters("beta = 0".into()));
    }
    let cx = Ctx::new(&["x", "y"], &[("a", alpha.clone()), ("b", beta.clone()), ("i", CycNum::zeta(4))]);
    let pres = cx.presentation(
        "down-up algebra",
        &["x^2*y - a*x*y*x - b*y*x^2", "x*y^2 - a*y*x*y - b*y^2*x"],
        "1/((1-t)^2*(1-t^2))",
    )?;
    let mut spec = FamilySpec {
        id: "downup".into(),
        kind: FamilyKind::Downup,
        params: vec![("alpha".into(), alpha.clone()), ("beta".into(), beta.clone())],
        presentation: pres,
        autos: Vec::new(),
        expected: ExpectedResults::default(),
    };
    let (zero, one, minus) = (CycNum::zero(), CycNum::one(), -CycNum::one());
    let e = &mut spec.expected;
    let real = |label: &str, gens: &[&str], p: &[(usize, usize, CycNum)]| -> Result<Realization> {
        Ok(Realization { label: label.into(), generators: cx.es(gens), params: param_matrix(gens.len(), p)? })
    };
    if alpha == zero && beta == one {
        // roots of w^2 - 1: w1 = 1, w2 = -1
        let (w1, w2) = (one.clone(), minus.clone());
        e.witnesses = vec![
            Witness { name: "xy - yx".into(), element: cx.e("x*y - y*x"), kind: WitnessKind::Normal(Some(cx.es(&["-x", "-y"]))) },
            Witness { name: "xy + yx".into(), element: cx.e("x*y + y*x"), kind: WitnessKind::Central },
        ];
        e.center_max_degree = 4;
        e.center_degrees = Some(vec![2, 2, 2]);
        e.h_z = Some(series("1/(1-t^2)^3"));
        e.rank = Some(4);
        e.ozone = Some(OzoneSetting { conductor: 4, max_degree: 4, exact: true, factors: vec![2] });
        e.fixed_ring_max_degree = 4;
        let mu = cx.es(&["-x", "-y"]);
        let id = cx.es(&["x", "y"]);
        e.smash = Some(SmashExpectation {
            max_degree: 4,
            generator_degrees: vec![2, 2, 2, 2],
            generators: vec![
                SmashGenerator { name: "t1".into(), element: cx.e("x^2"), group_element: id.clone() },
                SmashGenerator { name: "t2".into(), element: cx.e("y^2"), group_element: id.clone() },
                SmashGenerator { name: "t3".into(), element: cx.e("x*y + y*x"), group_element: id },
                SmashGenerator { name: "t4".into(), element: cx.e("x*y - y*x"), group_element: mu },
            ],
            relation: vec![(vec![0, 0, 0, 2], int(1)), (vec![0, 0, 2, 0], int(-1)), (vec![1, 1, 0, 0], int(4))],
            relation_degree: 4,
            rank: Some(8),
            h_zbar: None,
        });
        e.realizations = vec![
            real("k[x][z; s2][y; s3, d3]", &["x", "x*y - y*x", "y"], &[(0, 1, w2.inv()?), (0, 2, w1.inv()?), (1, 2, w2.inv()?)])?,
            real("k[y][z; t2][x; t3, d3]", &["y", "x*y - y*x", "x"], &[(0, 1, w2.clone()), (0, 2, w1), (1, 2, w2)])?,
        ];
        e.sources = vec![
            "center generated by x^2, y^2, xy + yx; rank 4".into(),
            "ozone group {Id, mu} with mu = eta of xy - yx".into(),
            "smash center relation t4^2 = t3^2 - 4 t1 t2".into(),
        ];
    } else if alpha == zero && beta == minus {
        e.witnesses = vec![
            Witness { name: "Omega1".into(), element: cx.e("x*y - i*y*x"), kind: WitnessKind::Normal(Some(cx.es(&["-i*x", "i*y"]))) },
            Witness { name: "Omega2".into(), element: cx.e("x*y + i*y*x"), kind: WitnessKind::Normal(None) },
            Witness { name: "x^2".into(), element: cx.e("x^2"), kind: WitnessKind::Normal(Some(cx.es(&["x", "-y"]))) },
            Witness { name: "y^2".into(), element: cx.e("y^2"), kind: WitnessKind::Normal(Some(cx.es(&["-x", "y"]))) },
            Witness { name: "Omega1*Omega2".into(), element: cx.e("(x*y - i*y*x)*(x*y + i*y*x)"), kind: WitnessKind::Central },
            Witness { name: "Omega1^4".into(), element: cx.e("(x*y - i*y*x)^4"), kind: WitnessKind::Central },
        ];
        let gens: Vec<(String, FreeElt)> =
            [("X4", "x^4"), ("Y4", "y^4"), ("P", "(x*y - i*y*x)*(x*y + i*y*x)"), ("Q", "(x*y - i*y*x)^4")]
                .iter()
                .map(|(n, s)| (n.to_string(), cx.e(s)))
                .collect();
        e.relation = Some(ExpectedRelation {
            generators: gens,
            degree: 16,
            terms: vec![
                (vec![0, 0, 0, 2], int(1)),
                (vec![0, 0, 2, 1], int(-2)),
                (vec![0, 0, 4, 0], int(1)),
                (vec![1, 1, 0, 1], int(16)),
            ],
        });
        e.center_max_degree = 8;
        e.center_degrees = Some(vec![4, 4, 4, 8]);
        e.h_z = Some(series("(1-t^16)/((1-t^4)^3*(1-t^8))"));
        e.rank = Some(16);
        e.ozone = Some(OzoneSetting { conductor: 4, max_degree: 4, exact: true, factors: vec![4, 2] });
        e.sources = vec![
            "center generated by x^4, y^4, Omega1 Omega2, Omega1^4 with one relation in degree 16".into(),
            "rank over the center is 16 and the ozone group is Z_4 x Z_2".into(),
        ];
    } else if alpha == int(2) && beta == minus {
        e.witnesses =
            vec![Witness { name: "xy - yx".into(), element: cx.e("x*y - y*x"), kind: WitnessKind::Central }];
        e.realizations = vec![real("k[x][z][y; d]", &["x", "x*y - y*x", "y"], &[])?];
        e.center_max_degree = 3;
        e.sources = vec!["z = xy - yx commutes with x and y, giving an iterated Ore extension".into()];
    }
    Ok(spec)
}

/// `A (x) B`.
pub fn make_tensor(a: &FamilySpec, b: &FamilySpec) -> FamilySpec {
    FamilySpec {
        id: "tensor".into(),
        kind: FamilyKind::Tensor,
        params: Vec::new(),
        presentation: tensor_product(&a.presentation, &b.presentation),
        autos: Vec::new(),
        expected: ExpectedResults::default(),
    }
}

/// `A[t; sigma]` with `sigma` of order `n`.
pub fn make_ore(base: &FamilySpec, sigma: Vec<FreeElt>, order: u32, max_degree: u32) -> Result<FamilySpec> {
    let alg = GradedAlgebra::new(base.presentation.clone(), base.presentation.max_relation_degree().max(2))?;
    let s = verify_automorphism(&alg, sigma.clone())?;
    let pres = ore_extension(&base.presentation, &s, 1)?;
    Ok(FamilySpec {
        id: "ore".into(),
        kind: FamilyKind::Ore,
        params: Vec::new(),
        presentation: pres,
        autos: Vec::new(),
        expected: ExpectedResults {
            ore: Some(OrePrediction { base: base.presentation.clone(), sigma, order, max_degree }),
            center_max_degree: max_degree,
            sources: vec!["center of A[t; sigma] equals Z(A)^<sigma>[t^n] when no power of sigma is inner".into()],
            ..Default::default()
        },
    })
}

fn polynomial_ring(name: &str) -> Result<FamilySpec> {
    let mut s = make_skew(&[vec![CycNum::one()]])?;
    let gens = vec![Generator::new(name, 1)];
    s.presentation = AlgebraPresentation::new("polynomial ring", gens, Vec::new())?.with_hilbert(series("1/(1-t)"));
    s.expected.witnesses.clear();
    Ok(s)
}

fn with_id(mut spec: FamilySpec, id: &str) -> FamilySpec {
    spec.id = id.into();
    spec
}

/// Identifiers of the built-in corpus, in run order.
pub const CORPUS_IDS: &[&str] = &[
    "skew_q3",
    "skew_q4",
    "skew_cy3",
    "skew_comm3",
    "heisenberg_m1",
    "heisenberg_q4",
    "heisenberg_prime_q4",
    "bq_m1",
    "bq_z6",
    "sklyanin_111m1",
    "sklyanin_10m1",
    "sklyanin_10z6",
    "s3_m1",
    "downup_0_1",
    "downup_0_m1",
    "downup_2_m1",
    "tensor_skewq3_t",
    "ore_kx_neg",
    "ore_skewm1_sigma",
];

fn plane(q: CycNum) -> Result<FamilySpec> {
    make_skew(&param_matrix(2, &[(0, 1, q)])?)
}

/// A built-in corpus member by identifier.
pub fn corpus_case(id: &str) -> Result<FamilySpec> {
    let spec = match id {
        "skew_q3" | "skew_q4" => {
            let n: u32 = if id == "skew_q3" { 3 } else { 4 };
            let mut s = plane(CycNum::zeta(n))?;
            let e = &mut s.expected;
            e.center_max_degree = 2 * n;
            e.center_degrees = Some(vec![n, n]);
            e.h_z = Some(series(&format!("1/(1-t^{n})^2")));
            e.rank = Some((n * n) as u64);
            e.ozone = Some(OzoneSetting { conductor: 2 * n, max_degree: n, exact: true, factors: vec![n as u64, n as u64] });
            e.fixed_ring_max_degree = 2 * n;
            e.sources.push("Z(A) = k[x^n, y^n] and the ozone group is Z_n x Z_n".into());
            s
        }
        "skew_cy3" => {
            let w = CycNum::zeta(3);
            let mut s = make_skew(&param_matrix(3, &[(0, 1, w.clone()), (1, 2, w.clone()), (2, 0, w)])?)?;
            let e = &mut s.expected;
            e.center_max_degree = 3;
            e.center_degrees = Some(vec![3, 3, 3, 3]);
            e.h_z = Some(series("(1-t^9)/(1-t^3)^4"));
            e.rank = Some(9);
            e.ozone = Some(OzoneSetting { conductor: 6, max_degree: 3, exact: true, factors: vec![3, 3] });
            e.fixed_ring_max_degree = 3;
            e.sources.push("CY skew polynomial ring at a cube root of unity has ozone group (Z_3)^2".into());
            s
        }
        "skew_comm3" => {
            let mut s = make_skew(&param_matrix(3, &[])?)?;
            let e = &mut s.expected;
            e.center_max_degree = 2;
            e.center_degrees = Some(vec![1, 1, 1]);
            e.h_z = Some(series("1/(1-t)^3"));
            e.rank = Some(1);
            e.ozone = Some(OzoneSetting { conductor: 2, max_degree: 2, exact: true, factors: vec![] });
            e.fixed_ring_max_degree = 2;
            s
        }
        "heisenberg_m1" => {
            let mut s = make_heisenberg(-CycNum::one())?;
            let cx = Ctx::new(&["x", "y", "z"], &[]);
            let e = &mut s.expected;
            e.center_max_degree = 6;
            e.h_z = Some(series("(1-t^6)/((1-t^2)^3*(1-t^3))"));
            e.rank = Some(4);
            e.ozone = Some(OzoneSetting { conductor: 4, max_degree: 3, exact: true, factors: vec![2] });
            e.fixed_ring_series = Some(series("(1-t^4)/((1-t^2)^3*(1-t))"));
            e.fixed_ring_max_degree = 6;
            let phi = cx.es(&["-x", "-y", "z"]);
            let id = cx.es(&["x", "y", "z"]);
            e.smash = Some(SmashExpectation {
                max_degree: 4,
                generator_degrees: vec![1, 2, 2, 2],
                generators: vec![
                    SmashGenerator { name: "s1".into(), element: cx.e("x^2"), group_element: id.clone() },
                    SmashGenerator { name: "s2".into(), element: cx.e("y^2"), group_element: id },
                    SmashGenerator { name: "s3".into(), element: cx.e("z"), group_element: phi.clone() },
                    SmashGenerator { name: "s4".into(), element: cx.e("y*x - x*y"), group_element: phi },
                ],
                relation: vec![(vec![0, 0, 4, 0], int(1)), (vec![1, 1, 0, 0], int(-4)), (vec![0, 0, 0, 2], int(-1))],
                relation_degree: 4,
                rank: Some(8),
                h_zbar: Some(series("(1-t^4)/((1-t^2)^2*(1-t)*(1-t^2))")),
            });
            e.sources.push("fixed ring generated by x^2, y^2, z, yx - xy with one quartic relation".into());
            e.sources.push("smash center s3^4 - 4 s1 s2 - s4^2 and rank of the smash product over Z equals 4 * 2".into());
            s
        }
        "heisenberg_q4" => make_heisenberg(CycNum::zeta(4))?,
        "heisenberg_prime_q4" => make_heisenberg_prime(CycNum::zeta(4))?,
        "bq_m1" => {
            let mut s = make_bq(-CycNum::one())?;
            let cx = Ctx::new(&["x", "y", "z"], &[]);
            s.expected.witnesses.push(Witness { name: "2xyz + y^3 - x^3".into(), element: cx.e("2*x*y*z + y^3 - x^3"), kind: WitnessKind::Central });
            s.expected.ozone = Some(OzoneSetting { conductor: 6, max_degree: 4, exact: true, factors: vec![] });
            s.expected.center_max_degree = 4;
            s
        }
        "bq_z6" => {
            let mut s = make_bq(CycNum::zeta(6))?;
            s.expected.ozone = Some(OzoneSetting { conductor: 12, max_degree: 6, exact: true, factors: vec![3, 3] });
            s
        }
        "sklyanin_111m1" => make_sklyanin(int(1), int(1), int(-1))?,
        "sklyanin_10m1" => make_sklyanin(int(1), int(0), int(-1))?,
        "sklyanin_10z6" => make_sklyanin(int(1), int(0), CycNum::zeta(6))?,
        "s3_m1" => make_sklyanin_s3(-CycNum::one())?,
        "downup_0_1" => make_downup(int(0), int(1))?,
        "downup_0_m1" => make_downup(int(0), int(-1))?,
        "downup_2_m1" => make_downup(int(2), int(-1))?,
        "tensor_skewq3_t" => {
            let a = plane(CycNum::zeta(3))?;
            let t = polynomial_ring("t")?;
            let mut s = make_tensor(&a, &t);
            let e = &mut s.expected;
            e.center_max_degree = 3;
            e.ozone = Some(OzoneSetting { conductor: 6, max_degree: 3, exact: true, factors: vec![3, 3] });
            e.sources.push("ozone group of A[t] equals that of A".into());
            s
        }
        "ore_kx_neg" => {
            let base = polynomial_ring("x")?;
            make_ore(&base, vec![-FreeElt::gen(0)], 2, 6)?
        }
        "ore_skewm1_sigma" => {
            let base = plane(-CycNum::one())?;
            make_ore(&base, vec![-FreeElt::gen(0), -FreeElt::gen(1)], 2, 6)?
        }
        _ => return Err(Error::Invalid(format!("unknown corpus case {id}"))),
    };
    Ok(with_id(spec, id))
}

#[cfg(test)]
mod tests;
