use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::auto::{verify_automorphism, GradedAutomorphism};
use super::group::FiniteGroupTable;
use crate::central::{eta_of_normal, twisted_centralizer, GradedSubspace};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::exactla::{combine, rank, Matrix, Subspace, Vector};
use crate::ncalg::{FreeElt, GradedAlgebra, Word};

/// Largest number of diagonal tuples the upper-bound search will visit.
pub const DIAGONAL_SEARCH_LIMIT: u128 = 10_000_000;

/// Largest group the closures below will build.
const GROUP_LIMIT: usize = 10_000;

fn signature(w: &Word, n: usize) -> Vec<u32> {
    let mut s = vec![0u32; n];
    for g in w.letters() {
        s[g] += 1;
    }
    s
}

fn pairing(k: &[u32], s: &[u32], n: u32) -> usize {
    (k.iter().zip(s).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % n as u64) as usize
}

fn unravel(mut idx: u64, n: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (idx % n as u64) as u32;
        idx /= n as u64;
    }
    out
}

/// All diagonal maps with entries in the `n`-th roots of unity that preserve
/// the relations and fix every vector of `z` in degrees `1..=max`.
pub fn diagonal_upper_bound(alg: &GradedAlgebra, z: &GradedSubspace, n: u32, max: u32) -> Result<FiniteGroupTable> {
    let ngens = alg.ngens();
    let size = (n as u128).checked_pow(ngens as u32).unwrap_or(u128::MAX);
    if size > DIAGONAL_SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge { size, limit: DIAGONAL_SEARCH_LIMIT });
    }
    if max > z.max_degree() {
        return Err(Error::DegreeOutOfRange { degree: max, bound: z.max_degree() });
    }
    let weights = alg.weights();
    // central words: a diagonal map fixes z_d iff it fixes every word in its support
    let mut fixed_sigs: Vec<Vec<u32>> = Vec::new();
    for d in 1..=max {
        let words = alg.basis().words(d);
        for v in z.piece(d).basis() {
            for (w, c) in words.iter().zip(v) {
                if !c.is_zero() {
                    fixed_sigs.push(signature(w, ngens));
                }
            }
        }
    }
    fixed_sigs.sort();
    fixed_sigs.dedup();
    // each relation as sum over signatures of coordinate vectors of its words
    let mut rel_parts: Vec<(usize, Vec<(Vec<u32>, Vector)>)> = Vec::new();
    for r in alg.presentation().relations() {
        let deg = r.degree(&weights).expect("relations are homogeneous");
        let dim = alg.dim(deg);
        let mut parts: BTreeMap<Vec<u32>, Vector> = BTreeMap::new();
        for (w, c) in r.terms() {
            let v = alg.to_vector(&alg.nf(&FreeElt::monomial(w.clone(), c.clone()))?, deg)?;
            let slot = parts.entry(signature(w, ngens)).or_insert_with(|| vec![CycNum::zero(); dim]);
            for (a, b) in slot.iter_mut().zip(v) {
                *a = &*a + &b;
            }
        }
        rel_parts.push((dim, parts.into_iter().filter(|(_, v)| v.iter().any(|c| !c.is_zero())).collect()));
    }
    let powers: Vec<CycNum> = (0..n).map(|k| CycNum::root_power(n, k as i64)).collect();
    let tuples: Vec<Vec<u32>> = (0..size as u64)
        .into_par_iter()
        .map(|idx| unravel(idx, n, ngens))
        .filter(|k| fixed_sigs.iter().all(|s| pairing(k, s, n) == 0))
        .filter(|k| {
            rel_parts.iter().all(|(dim, parts)| {
                // group parts by the root of unity they are scaled by
                let mut by_root: BTreeMap<usize, Vector> = BTreeMap::new();
                for (s, v) in parts {
                    let slot = by_root.entry(pairing(k, s, n)).or_insert_with(|| vec![CycNum::zero(); *dim]);
                    for (a, b) in slot.iter_mut().zip(v) {
                        *a = &*a + b;
                    }
                }
                if by_root.len() <= 1 {
                    return true;
                }
                let roots: Vec<CycNum> = by_root.keys().map(|&j| powers[j].clone()).collect();
                let vecs: Vec<Vector> = by_root.into_values().collect();
                combine(&vecs, &roots, *dim).iter().all(|c| c.is_zero())
            })
        })
        .collect();
    FiniteGroupTable::from_diagonal_exponents(n, tuples)
}

/// Whether `phi` fixes every vector of `z` in degrees `1..=max`.
pub fn fixes_center(alg: &GradedAlgebra, phi: &GradedAutomorphism, z: &GradedSubspace, max: u32) -> Result<bool> {
    for d in 1..=max.min(z.max_degree()) {
        for v in z.piece(d).basis() {
            let f = alg.from_vector(d, v);
            if alg.to_vector(&phi.apply(alg, &f)?, d)? != *v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A normal element `f` with `eta_f` equal to an element of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OzoneWitness {
    /// Index in the upper bound, if the automorphism lies there.
    pub upper_index: Option<usize>,
    pub automorphism: GradedAutomorphism,
    pub degree: u32,
    pub element: FreeElt,
}

#[derive(Clone, Debug)]
pub struct OzoneReport {
    pub lower: FiniteGroupTable,
    pub upper: FiniteGroupTable,
    pub exact: bool,
    pub conductor: u32,
    /// Supplied candidates that fix the center and were added to the upper bound.
    pub candidates_kept: Vec<String>,
    pub candidates_supplied: usize,
    pub max_degree: u32,
    pub witnesses: Vec<OzoneWitness>,
}

impl OzoneReport {
    pub fn candidate_class(&self) -> String {
        format!(
            "diagonal maps with entries in mu_{}, plus {} supplied candidate(s) ({} fixing the center), degrees <= {}",
            self.conductor,
            self.candidates_supplied,
            self.candidates_kept.len(),
            self.max_degree
        )
    }

    /// The best available group: the exact one, or the lower bound.
    pub fn group(&self) -> &FiniteGroupTable {
        if self.exact {
            &self.upper
        } else {
            &self.lower
        }
    }

    /// Witnesses whose automorphism is not the identity.
    pub fn non_central_witnesses(&self) -> impl Iterator<Item = &OzoneWitness> {
        self.witnesses.iter().filter(|w| !w.automorphism.is_identity())
    }
}

fn first_witness(alg: &GradedAlgebra, phi: &GradedAutomorphism, max: u32) -> Result<Option<(u32, FreeElt)>> {
    let top = alg.max_degree().saturating_sub(alg.presentation().max_weight());
    for d in 0..=max.min(top) {
        let space = twisted_centralizer(alg, phi, d)?;
        if let Some(v) = space.basis().first() {
            return Ok(Some((d, alg.from_vector(d, v))));
        }
    }
    Ok(None)
}

/// Sandwiches the ozone group between the group generated by `eta_f` of
/// normal elements found in degrees `<= max` and the group of candidates
/// fixing the center in degrees `<= max`.
pub fn ozone_sandwich(
    alg: &GradedAlgebra,
    z: &GradedSubspace,
    candidates: &[(String, GradedAutomorphism)],
    n: u32,
    max: u32,
    rank_bound: Option<u64>,
) -> Result<OzoneReport> {
    let diag = diagonal_upper_bound(alg, z, n, max)?;
    let mut kept = Vec::new();
    let mut gens: Vec<GradedAutomorphism> = diag.elements().to_vec();
    let mut outside = Vec::new();
    for (name, c) in candidates {
        if !c.is_verified() {
            return Err(Error::UnverifiedAutomorphism);
        }
        if fixes_center(alg, c, z, max)? {
            kept.push(name.clone());
            gens.push(c.clone());
        } else {
            outside.push(c.clone());
        }
    }
    let upper = if kept.is_empty() { diag } else { FiniteGroupTable::generate(alg, &gens, GROUP_LIMIT)? };
    let mut pool: Vec<(Option<usize>, GradedAutomorphism)> =
        upper.elements().iter().cloned().enumerate().map(|(i, g)| (Some(i), g)).collect();
    pool.extend(outside.into_iter().map(|g| (None, g)));
    let found: Vec<Option<OzoneWitness>> = pool
        .into_par_iter()
        .map(|(idx, phi)| {
            let Some((degree, element)) = first_witness(alg, &phi, max)? else {
                return Ok(None);
            };
            let eta = eta_of_normal(alg, &element)?;
            if eta.images() != phi.images() {
                return Err(Error::CrossCheckFailure("eta of a twisted-central element differs from its twist".into()));
            }
            if idx.is_none() {
                return Err(Error::CrossCheckFailure("a normal element induces a map moving the center".into()));
            }
            Ok(Some(OzoneWitness { upper_index: idx, automorphism: eta, degree, element }))
        })
        .collect::<Result<_>>()?;
    let witnesses: Vec<OzoneWitness> = found.into_iter().flatten().collect();
    let etas: Vec<GradedAutomorphism> = witnesses.iter().map(|w| w.automorphism.clone()).collect();
    let lower = FiniteGroupTable::generate(alg, &etas, GROUP_LIMIT)?;
    if let Some(r) = rank_bound {
        if lower.order() as u64 > r {
            return Err(Error::ContradictsDivisibility { order: lower.order(), rank: r });
        }
    }
    if !lower.is_subgroup_of(&upper) {
        return Err(Error::CrossCheckFailure("lower bound is not inside the upper bound".into()));
    }
    let exact = lower.order() == upper.order();
    Ok(OzoneReport {
        lower,
        upper,
        exact,
        conductor: n,
        candidates_kept: kept,
        candidates_supplied: candidates.len(),
        max_degree: max,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupStructure {
    Abelian { invariant_factors: Vec<u64> },
    NonAbelian { order: usize },
}

pub fn group_structure(g: &FiniteGroupTable) -> GroupStructure {
    match g.invariant_factors() {
        Some(f) => GroupStructure::Abelian { invariant_factors: f },
        None => GroupStructure::NonAbelian { order: g.order() },
    }
}

/// Whether the order of the reported group divides `rank`.
pub fn divisibility_check(report: &OzoneReport, rank: u64) -> bool {
    rank % report.group().order() as u64 == 0
}

/// Pairwise commutation scalars `p[i][j]` with `X_j X_i = p[i][j] X_i X_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewParams {
    pub matrix: Vec<Vec<CycNum>>,
}

impl SkewParams {
    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.matrix[i][j]
    }
}

/// Recognizes `alg` as a skew polynomial ring in the given degree-one basis.
pub fn skew_recognition(alg: &GradedAlgebra, basis: &[FreeElt]) -> Result<SkewParams> {
    if alg.weights().iter().any(|&w| w != 1) {
        return Err(Error::NotDegreeOneGenerated);
    }
    let n = alg.dim(1);
    let vecs = basis.iter().map(|f| alg.to_vector(&alg.nf(f)?, 1)).collect::<Result<Vec<_>>>()?;
    if basis.len() != n || rank(&Matrix::from_columns(n, &vecs)?) != n {
        return Err(Error::NotSkew("candidates do not form a basis of the degree-one piece".into()));
    }
    for (i, f) in basis.iter().enumerate() {
        match eta_of_normal(alg, f) {
            Ok(_) => {}
            Err(Error::NotNormal(_)) | Err(Error::NotAutomorphism(_)) => {
                return Err(Error::NotSkew(format!("candidate {} ({}) is not normal", i + 1, alg.display(f))));
            }
            Err(e) => return Err(e),
        }
    }
    let mut matrix = vec![vec![CycNum::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ij = alg.to_vector(&alg.mul(&basis[i], &basis[j])?, 2)?;
            let ji = alg.to_vector(&alg.mul(&basis[j], &basis[i])?, 2)?;
            let k = ij
                .iter()
                .position(|c| !c.is_zero())
                .ok_or_else(|| Error::NotSkew("product of candidates vanishes".into()))?;
            let p = ji[k].checked_div(&ij[k])?;
            if ij.iter().zip(&ji).any(|(a, b)| &(a * &p) != b) {
                return Err(Error::NotSkew(format!("candidates {} and {} do not skew-commute", i + 1, j + 1)));
            }
            matrix[i][j] = p;
        }
    }
    let mut binom = 1u128;
    for d in 0..=alg.max_degree() {
        if d > 0 {
            binom = binom * (n as u128 + d as u128 - 1) / d as u128;
        }
        if alg.dim(d) as u128 != binom {
            return Err(Error::NotSkew(format!("dimension {} in degree {d} differs from the polynomial count", alg.dim(d))));
        }
    }
    Ok(SkewParams { matrix })
}

fn words_in(degrees: &[u32], d: u32) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &e) in degrees.iter().enumerate() {
        if e <= d {
            for mut rest in words_in(degrees, d - e) {
                rest.insert(0, i);
                out.push(rest);
            }
        }
    }
    out
}

/// Checks `t_j t_i - p[i][j] t_i t_j` lies in the subalgebra generated by
/// `t_1, ..., t_(j-1)` for all `i < j`.
pub fn filtered_realization_check(alg: &GradedAlgebra, ts: &[FreeElt], p: &[Vec<CycNum>]) -> Result<bool> {
    let weights = alg.weights();
    let ts = ts.iter().map(|t| alg.nf(t)).collect::<Result<Vec<_>>>()?;
    let degrees = ts
        .iter()
        .map(|t| t.degree(&weights).ok_or_else(|| Error::Invalid("realization generators must be homogeneous and nonzero".into())))
        .collect::<Result<Vec<_>>>()?;
    for j in 0..ts.len() {
        for i in 0..j {
            let d = degrees[i] + degrees[j];
            if d > alg.max_degree() {
                return Err(Error::DegreeOutOfRange { degree: d, bound: alg.max_degree() });
            }
            let lhs = &alg.mul(&ts[j], &ts[i])? - &alg.mul(&ts[i], &ts[j])?.scale(&p[i][j]);
            let target = alg.to_vector(&lhs, d)?;
            let span = words_in(&degrees[..j], d)
                .into_iter()
                .map(|w| {
                    let prod: Vec<FreeElt> = w.iter().map(|&k| ts[k].clone()).collect();
                    alg.to_vector(&alg.product(&prod)?, d)
                })
                .collect::<Result<Vec<_>>>()?;
            if !Subspace::span(alg.dim(d), span)?.contains(&target)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verifies maps given by images, keeping names.
pub fn verify_named(alg: &GradedAlgebra, named: Vec<(String, Vec<FreeElt>)>) -> Result<Vec<(String, GradedAutomorphism)>> {
    named.into_iter().map(|(n, imgs)| Ok((n, verify_automorphism(alg, imgs)?))).collect()
}
