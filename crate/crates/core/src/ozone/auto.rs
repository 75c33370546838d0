use serde::{Deserialize, Serialize};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::exactla::{rank, Matrix, Vector};
use crate::ncalg::{FreeElt, GradedAlgebra, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AutoKind {
    /// `x_i -> e_i x_i`.
    Diagonal,
    /// `x_i -> e_i x_{pi(i)}`.
    PermutationDiagonal,
    /// Arbitrary homogeneous images.
    Linear,
}

/// A graded algebra map given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAutomorphism {
    images: Vec<FreeElt>,
    kind: AutoKind,
    /// For the first two kinds: `(target generator, scalar)` per generator.
    monomial: Option<Vec<(usize, CycNum)>>,
    verified: bool,
}

fn classify(images: &[FreeElt]) -> (AutoKind, Option<Vec<(usize, CycNum)>>) {
    let mut mono = Vec::with_capacity(images.len());
    for img in images {
        let mut terms = img.terms();
        match (terms.next(), terms.next()) {
            (Some((w, c)), None) if w.len() == 1 => mono.push((w.raw()[0] as usize, c.clone())),
            _ => return (AutoKind::Linear, None),
        }
    }
    let mut targets: Vec<usize> = mono.iter().map(|m| m.0).collect();
    let diagonal = targets.iter().enumerate().all(|(i, &t)| i == t);
    targets.sort_unstable();
    targets.dedup();
    if targets.len() != images.len() {
        return (AutoKind::Linear, None);
    }
    (if diagonal { AutoKind::Diagonal } else { AutoKind::PermutationDiagonal }, Some(mono))
}

impl GradedAutomorphism {
    /// An unverified map; see [`crate::ozone::verify_automorphism`].
    pub fn from_images(images: Vec<FreeElt>) -> GradedAutomorphism {
        let (kind, monomial) = classify(&images);
        GradedAutomorphism { images, kind, monomial, verified: false }
    }

    pub fn identity(n: usize) -> GradedAutomorphism {
        GradedAutomorphism::diagonal(vec![CycNum::one(); n])
    }

    pub fn diagonal(scalars: Vec<CycNum>) -> GradedAutomorphism {
        let images = scalars.iter().enumerate().map(|(i, c)| FreeElt::monomial(Word::letter(i), c.clone())).collect();
        GradedAutomorphism::from_images(images)
    }

    /// `x_i -> scalars[i] * x_{perm[i]}`.
    pub fn permutation(perm: &[usize], scalars: Vec<CycNum>) -> GradedAutomorphism {
        let images = perm.iter().zip(scalars).map(|(&t, c)| FreeElt::monomial(Word::letter(t), c)).collect();
        GradedAutomorphism::from_images(images)
    }

    pub(crate) fn mark_verified(mut self) -> GradedAutomorphism {
        self.verified = true;
        self
    }

    pub fn images(&self) -> &[FreeElt] {
        &self.images
    }

    pub fn kind(&self) -> AutoKind {
        self.kind
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn ngens(&self) -> usize {
        self.images.len()
    }

    /// Scalars of a diagonal map.
    pub fn scalars(&self) -> Option<Vec<CycNum>> {
        if self.kind != AutoKind::Diagonal {
            return None;
        }
        self.monomial.as_ref().map(|m| m.iter().map(|x| x.1.clone()).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.scalars().is_some_and(|s| s.iter().all(|c| c.is_one()))
    }

    /// Image in the free algebra (not reduced).
    pub fn apply_free(&self, f: &FreeElt) -> FreeElt {
        let mut out = FreeElt::zero();
        for (w, c) in f.terms() {
            if let Some(mono) = &self.monomial {
                let mut coeff = c.clone();
                let mut img = Word::empty();
                for g in w.letters() {
                    coeff = &coeff * &mono[g].1;
                    img.push(mono[g].0);
                }
                out.add_term(img, coeff);
            } else {
                let img = w.letters().fold(FreeElt::one(), |acc, g| acc.free_mul(&self.images[g]));
                out.add_scaled(c, &img);
            }
        }
        out
    }

    /// Image in the algebra, in normal form.
    pub fn apply(&self, alg: &GradedAlgebra, f: &FreeElt) -> Result<FreeElt> {
        if self.kind == AutoKind::Diagonal {
            // diagonal maps send normal words to multiples of themselves
            return Ok(self.apply_free(f));
        }
        if self.kind == AutoKind::Linear {
            let mut out = FreeElt::zero();
            for (w, c) in f.terms() {
                let img = w.letters().try_fold(FreeElt::one(), |acc, g| alg.mul(&acc, &self.images[g]))?;
                out.add_scaled(c, &img);
            }
            return Ok(out);
        }
        alg.nf(&self.apply_free(f))
    }

    /// `self o other`.
    pub fn compose(&self, other: &GradedAutomorphism, alg: &GradedAlgebra) -> Result<GradedAutomorphism> {
        let images = other.images.iter().map(|img| self.apply(alg, img)).collect::<Result<Vec<_>>>()?;
        let mut g = GradedAutomorphism::from_images(images);
        g.verified = self.verified && other.verified;
        Ok(g)
    }

    /// Images of the degree-`d` basis as coordinate columns.
    pub fn columns(&self, alg: &GradedAlgebra, d: u32) -> Result<Vec<Vector>> {
        alg.linear_map_columns(d, |f| self.apply(alg, f), d)
    }

    pub fn trace(&self, alg: &GradedAlgebra, d: u32) -> Result<CycNum> {
        let cols = self.columns(alg, d)?;
        Ok(cols.iter().enumerate().fold(CycNum::zero(), |acc, (k, c)| acc + &c[k]))
    }

    /// Smallest `k` with `self^k = id`, searching up to `limit`.
    pub fn order(&self, alg: &GradedAlgebra, limit: usize) -> Result<Option<usize>> {
        let id = GradedAutomorphism::identity(self.ngens());
        let mut cur = self.clone();
        for k in 1..=limit {
            if cur.images == id.images {
                return Ok(Some(k));
            }
            cur = cur.compose(self, alg)?;
        }
        Ok(None)
    }

    pub fn inverse(&self, alg: &GradedAlgebra, limit: usize) -> Result<GradedAutomorphism> {
        let k = self.order(alg, limit)?.ok_or_else(|| Error::Invalid("automorphism order exceeds the search limit".into()))?;
        let mut inv = GradedAutomorphism::identity(self.ngens());
        for _ in 1..k {
            inv = inv.compose(self, alg)?;
        }
        inv.verified = self.verified;
        Ok(inv)
    }

    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<String> =
            names.iter().zip(&self.images).map(|(n, img)| format!("{n} -> {}", img.display(names))).collect();
        parts.join(", ")
    }

    /// Whether the map is invertible on every degree up to `top`.
    pub(crate) fn invertible_up_to(&self, alg: &GradedAlgebra, top: u32) -> Result<bool> {
        for d in 1..=top {
            let cols = self.columns(alg, d)?;
            let m = Matrix::from_columns(alg.dim(d), &cols)?;
            if rank(&m) != alg.dim(d) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Checks that the images respect the relations and define a bijection on
/// the low degrees; returns the verified map.
pub fn verify_automorphism(alg: &GradedAlgebra, images: Vec<FreeElt>) -> Result<GradedAutomorphism> {
    let weights = alg.weights();
    if images.len() != alg.ngens() {
        return Err(Error::DimensionMismatch { expected: alg.ngens(), got: images.len() });
    }
    let names = alg.names();
    for (g, img) in images.iter().enumerate() {
        if img.is_zero() || img.degree(&weights) != Some(weights[g]) {
            return Err(Error::NotAutomorphism(format!("image of {} is not homogeneous of its weight", names[g])));
        }
    }
    let images = images.iter().map(|f| alg.nf(f)).collect::<Result<Vec<_>>>()?;
    let phi = GradedAutomorphism::from_images(images);
    for r in alg.presentation().relations() {
        let img = alg.nf(&phi.apply_free(r))?;
        if !img.is_zero() {
            return Err(Error::NotAutomorphism(format!("relation {} is not preserved", r.display(&names))));
        }
    }
    let top = alg.presentation().max_weight().min(alg.max_degree());
    if !phi.invertible_up_to(alg, top)? {
        return Err(Error::NotAutomorphism("map is not invertible on generators".into()));
    }
    Ok(phi.mark_verified())
}
