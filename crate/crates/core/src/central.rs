//! Centers, twisted centralizers, fixed rings, and presentations of
//! commutative subalgebras, computed degree by degree.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::exactla::{combine, kernel, Matrix, Subspace, Vector};
use crate::ncalg::{FreeElt, GradedAlgebra};
use crate::ozone::{verify_automorphism, FiniteGroupTable, GradedAutomorphism};

/// Bilinear multiplication on coordinate vectors of a graded algebra.
pub trait GradedOps: Sync {
    fn dim(&self, d: u32) -> usize;
    fn max_degree(&self) -> u32;
    fn mul_vec(&self, d1: u32, a: &[CycNum], d2: u32, b: &[CycNum]) -> Result<Vector>;
    /// Human-readable form of a coordinate vector.
    fn describe(&self, d: u32, v: &[CycNum]) -> String;
}

impl GradedOps for GradedAlgebra {
    fn dim(&self, d: u32) -> usize {
        GradedAlgebra::dim(self, d)
    }

    fn max_degree(&self) -> u32 {
        GradedAlgebra::max_degree(self)
    }

    fn mul_vec(&self, d1: u32, a: &[CycNum], d2: u32, b: &[CycNum]) -> Result<Vector> {
        let f = self.from_vector(d1, a);
        let g = self.from_vector(d2, b);
        self.to_vector(&self.mul(&f, &g)?, d1 + d2)
    }

    fn describe(&self, d: u32, v: &[CycNum]) -> String {
        self.display(&self.from_vector(d, v))
    }
}

/// One subspace per degree `0..=max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    pieces: Vec<Subspace>,
}

impl GradedSubspace {
    pub fn new(pieces: Vec<Subspace>) -> GradedSubspace {
        GradedSubspace { pieces }
    }

    pub fn max_degree(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    pub fn piece(&self, d: u32) -> &Subspace {
        &self.pieces[d as usize]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }
}

fn check_budget(alg: &GradedAlgebra, d: u32) -> Result<()> {
    let top = d + alg.presentation().max_weight();
    if top > alg.max_degree() {
        return Err(Error::DegreeOutOfRange { degree: top, bound: alg.max_degree() });
    }
    Ok(())
}

/// Kernel of `f -> (L_x(f))_x` over the degree-`d` basis, where `L_x` maps
/// into degree `d + w(x)`.
fn joint_kernel(alg: &GradedAlgebra, d: u32, map: impl Fn(usize, &FreeElt) -> Result<FreeElt> + Sync) -> Result<Subspace> {
    let weights = alg.weights();
    let words = alg.basis().words(d);
    let cols: Vec<Vector> = words
        .par_iter()
        .map(|w| {
            let f = FreeElt::word(w.clone());
            let mut col = Vec::new();
            for (g, &wt) in weights.iter().enumerate() {
                col.extend(alg.to_vector(&map(g, &f)?, d + wt)?);
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let rows: usize = weights.iter().map(|&wt| alg.dim(d + wt)).sum();
    Ok(kernel(&Matrix::from_columns(rows, &cols)?))
}

/// `Z(A)_d`.
pub fn center_degree(alg: &GradedAlgebra, d: u32) -> Result<Subspace> {
    check_budget(alg, d)?;
    joint_kernel(alg, d, |g, f| {
        let x = FreeElt::gen(g);
        Ok(&alg.mul(&x, f)? - &alg.mul(f, &x)?)
    })
}

/// `Z(A)_d` for every `d` up to `max`.
pub fn center(alg: &GradedAlgebra, max: u32) -> Result<GradedSubspace> {
    Ok(GradedSubspace::new((0..=max).map(|d| center_degree(alg, d)).collect::<Result<_>>()?))
}

pub fn is_central(alg: &GradedAlgebra, f: &FreeElt) -> Result<bool> {
    let f = alg.nf(f)?;
    if let Some(top) = f.max_degree(&alg.weights()) {
        check_budget(alg, top)?;
    }
    for g in 0..alg.ngens() {
        let x = FreeElt::gen(g);
        if alg.mul(&x, &f)? != alg.mul(&f, &x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{f in A_d : x f = f phi(x) for every generator x}`.
pub fn twisted_centralizer(alg: &GradedAlgebra, phi: &GradedAutomorphism, d: u32) -> Result<Subspace> {
    if !phi.is_verified() {
        return Err(Error::UnverifiedAutomorphism);
    }
    check_budget(alg, d)?;
    joint_kernel(alg, d, |g, f| Ok(&alg.mul(&FreeElt::gen(g), f)? - &alg.mul(f, &phi.images()[g])?))
}

/// Whether `x f = f phi(x)` for every generator.
pub fn is_twisted_central(alg: &GradedAlgebra, f: &FreeElt, phi: &GradedAutomorphism) -> Result<bool> {
    for g in 0..alg.ngens() {
        let x = FreeElt::gen(g);
        if alg.mul(&x, f)? != alg.mul(f, &phi.images()[g])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The automorphism `eta_f` with `f eta_f(x) = x f`.
pub fn eta_of_normal(alg: &GradedAlgebra, f: &FreeElt) -> Result<GradedAutomorphism> {
    let weights = alg.weights();
    let names = alg.names();
    let f = alg.nf(f)?;
    let e = f
        .degree(&weights)
        .ok_or_else(|| Error::NotNormal("element must be nonzero and homogeneous".into()))?;
    let mut images = Vec::with_capacity(alg.ngens());
    for (g, &w) in weights.iter().enumerate() {
        check_budget(alg, e)?;
        let cols = alg.linear_map_columns(w, |b| alg.mul(&f, b), e + w)?;
        let m = Matrix::from_columns(alg.dim(e + w), &cols)?;
        let rhs = alg.to_vector(&alg.mul(&FreeElt::gen(g), &f)?, e + w)?;
        let u = crate::exactla::solve(&m, &rhs)?
            .ok_or_else(|| Error::NotNormal(format!("{} * {} is not in {} * A", names[g], alg.display(&f), alg.display(&f))))?;
        images.push(alg.from_vector(w, &u));
    }
    verify_automorphism(alg, images)
}

/// `(A^G)_d`, checked against the Molien average `(1/|G|) sum_g tr(g | A_d)`.
pub fn fixed_ring_degree(alg: &GradedAlgebra, group: &FiniteGroupTable, d: u32) -> Result<Subspace> {
    let n = alg.dim(d);
    let mut rows: Vec<Vector> = Vec::new();
    let mut trace_sum = CycNum::zero();
    for g in group.elements() {
        let cols = g.columns(alg, d)?;
        for (k, c) in cols.iter().enumerate() {
            trace_sum = trace_sum + &c[k];
        }
        let m = Matrix::from_columns(n, &cols)?;
        for i in 0..n {
            let mut row = m.row(i).to_vec();
            row[i] = &row[i] - &CycNum::one();
            rows.push(row);
        }
    }
    let fixed = kernel(&Matrix::from_rows(n, rows)?);
    let average = trace_sum.checked_div(&CycNum::from_int(group.order() as i64))?;
    if average != CycNum::from_int(fixed.dim() as i64) {
        return Err(Error::MolienMismatch { degree: d, dim: fixed.dim(), average: average.to_string() });
    }
    Ok(fixed)
}

/// Fixed ring of the group generated by `gens`, degree `d`.
pub fn fixed_ring_degree_of(alg: &GradedAlgebra, gens: &[GradedAutomorphism], d: u32) -> Result<Subspace> {
    let group = FiniteGroupTable::generate(alg, gens, 10_000)?;
    fixed_ring_degree(alg, &group, d)
}

pub fn fixed_ring(alg: &GradedAlgebra, group: &FiniteGroupTable, max: u32) -> Result<GradedSubspace> {
    Ok(GradedSubspace::new((0..=max).map(|d| fixed_ring_degree(alg, group, d)).collect::<Result<_>>()?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraGen {
    pub name: String,
    pub degree: u32,
    pub vector: Vector,
    /// Rendered element.
    pub text: String,
}

/// Generators of a graded subalgebra, with the dimension of the span they
/// generate in each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraGens {
    pub gens: Vec<SubalgebraGen>,
    pub closure_dims: Vec<usize>,
}

impl SubalgebraGens {
    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    /// Named elements given directly, e.g. generators stated by hand.
    pub fn from_elements(ops: &impl GradedOps, named: Vec<(String, u32, Vector)>) -> SubalgebraGens {
        let gens = named
            .into_iter()
            .map(|(name, degree, vector)| {
                let text = ops.describe(degree, &vector);
                SubalgebraGen { name, degree, vector, text }
            })
            .collect();
        SubalgebraGens { gens, closure_dims: Vec::new() }
    }

    /// Element of `alg` for generator `i`.
    pub fn element(&self, alg: &GradedAlgebra, i: usize) -> FreeElt {
        alg.from_vector(self.gens[i].degree, &self.gens[i].vector)
    }
}

/// Degree by degree, the generators needed beyond products of earlier ones.
/// `prefix` names the generators `prefix1, prefix2, ...`.
pub fn subalgebra_generators(
    ops: &impl GradedOps,
    pieces: &GradedSubspace,
    max: u32,
    prefix: &str,
) -> Result<SubalgebraGens> {
    if max > pieces.max_degree() || max > ops.max_degree() {
        return Err(Error::DegreeOutOfRange { degree: max, bound: pieces.max_degree().min(ops.max_degree()) });
    }
    let mut gens: Vec<SubalgebraGen> = Vec::new();
    // spans[d] = degree-d part of the subalgebra generated so far
    let mut one = vec![CycNum::zero(); ops.dim(0)];
    one[0] = CycNum::one();
    let mut spans: Vec<Subspace> = vec![Subspace::span(ops.dim(0), vec![one])?];
    let mut closure_dims = vec![1];
    for d in 1..=max {
        let mut products = Vec::new();
        for g in gens.iter().filter(|g| g.degree <= d) {
            let rest = &spans[(d - g.degree) as usize];
            for s in rest.basis() {
                products.push(ops.mul_vec(g.degree, &g.vector, d - g.degree, s)?);
            }
        }
        let generated = Subspace::span(ops.dim(d), products)?;
        let (full, kept) = generated.extend_with(pieces.piece(d).basis())?;
        for k in kept {
            let vector = pieces.piece(d).basis()[k].clone();
            let text = ops.describe(d, &vector);
            gens.push(SubalgebraGen { name: format!("{prefix}{}", gens.len() + 1), degree: d, vector, text });
        }
        closure_dims.push(full.dim());
        spans.push(full);
    }
    Ok(SubalgebraGens { gens, closure_dims })
}

/// A commutative polynomial in named generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommPoly {
    pub names: Vec<String>,
    /// `(exponents, coefficient)` pairs.
    pub terms: Vec<(Vec<u32>, CycNum)>,
}

impl CommPoly {
    /// Coefficient of the monomial with the given exponents.
    pub fn coefficient(&self, exps: &[u32]) -> CycNum {
        self.terms.iter().find(|(e, _)| e == exps).map_or_else(CycNum::zero, |t| t.1.clone())
    }

    /// Divides by the coefficient of `exps`.
    pub fn normalized_at(&self, exps: &[u32]) -> Option<CommPoly> {
        let c = self.coefficient(exps);
        let inv = c.inv().ok()?;
        Some(CommPoly {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * &inv)).collect(),
        })
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (exps, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = exps
                .iter()
                .zip(&self.names)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            let mono = mono.join("*");
            let full = c.to_string();
            let (neg, cs) = match full.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, full),
            };
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            let body = match (cs == "1", mono.is_empty()) {
                (_, true) => cs,
                (true, false) => mono,
                (false, false) => format!("{cs}*{mono}"),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    /// `(degree, relation)`; only relations not implied by lower ones.
    pub relations: Vec<(u32, CommPoly)>,
}

fn monomials(degrees: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn rec(degrees: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left / degrees[i]).rev() {
            cur.push(e);
            rec(degrees, i + 1, left - e * degrees[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degrees, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Relations among commuting generators, degree by degree up to `max`,
/// modulo monomial multiples of lower-degree relations.
pub fn find_relations(ops: &impl GradedOps, gens: &SubalgebraGens, max: u32) -> Result<RelationSet> {
    if max > ops.max_degree() {
        return Err(Error::DegreeOutOfRange { degree: max, bound: ops.max_degree() });
    }
    let g = &gens.gens;
    for i in 0..g.len() {
        for j in 0..i {
            if g[i].degree + g[j].degree <= ops.max_degree() {
                let ab = ops.mul_vec(g[i].degree, &g[i].vector, g[j].degree, &g[j].vector)?;
                let ba = ops.mul_vec(g[j].degree, &g[j].vector, g[i].degree, &g[i].vector)?;
                if ab != ba {
                    return Err(Error::NonCommutingGenerators(format!("{} and {}", g[i].name, g[j].name)));
                }
            }
        }
    }
    let degrees: Vec<u32> = g.iter().map(|x| x.degree).collect();
    let names: Vec<String> = g.iter().map(|x| x.name.clone()).collect();
    let mut values: HashMap<Vec<u32>, Vector> = HashMap::new();
    values.insert(vec![0; g.len()], {
        let mut one = vec![CycNum::zero(); ops.dim(0)];
        one[0] = CycNum::one();
        one
    });
    let mut found: Vec<(u32, Vec<(Vec<u32>, CycNum)>)> = Vec::new();
    let mut relations = Vec::new();
    for d in 1..=max {
        let monos = monomials(&degrees, d);
        if monos.is_empty() {
            continue;
        }
        // value of a monomial = value of (monomial minus its first letter) times that letter
        let evaluated: Vec<Vector> = monos
            .par_iter()
            .map(|m| {
                let i = m.iter().position(|&e| e > 0).expect("positive degree");
                let mut rest = m.clone();
                rest[i] -= 1;
                let prev = values.get(&rest).expect("lower degrees are evaluated first");
                ops.mul_vec(degrees[i], &g[i].vector, d - degrees[i], prev)
            })
            .collect::<Result<_>>()?;
        let index: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let ker = kernel(&Matrix::from_columns(ops.dim(d), &evaluated)?);
        let mut implied = Vec::new();
        for (e, terms) in &found {
            for shift in monomials(&degrees, d - e) {
                let mut v = vec![CycNum::zero(); monos.len()];
                for (exps, c) in terms {
                    let m: Vec<u32> = exps.iter().zip(&shift).map(|(a, b)| a + b).collect();
                    v[index[&m]] = c.clone();
                }
                implied.push(v);
            }
        }
        let lower = Subspace::span(monos.len(), implied)?;
        let (_, kept) = lower.extend_with(ker.basis())?;
        for k in kept {
            let v = &ker.basis()[k];
            let terms: Vec<(Vec<u32>, CycNum)> =
                monos.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())).collect();
            // re-evaluate the relation as a check
            let value = combine(&evaluated, v, ops.dim(d));
            if value.iter().any(|c| !c.is_zero()) {
                return Err(Error::CrossCheckFailure("relation does not vanish".into()));
            }
            relations.push((d, CommPoly { names: names.clone(), terms: terms.clone() }));
            found.push((d, terms));
        }
        for (m, v) in monos.into_iter().zip(evaluated) {
            values.insert(m, v);
        }
    }
    Ok(RelationSet { relations })
}

#[cfg(test)]
mod tests;
