use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::elt::{FreeElt, Word};
use super::presentation::AlgebraPresentation;
use super::rewrite::{complete, normal_words, MonomialOrder, RewriteSystem};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::exactla::Vector;
use crate::hilbert::HilbertSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certification {
    /// No declared series to compare with.
    Unchecked,
    Certified,
    Failed { degree: u32, expected: i64, got: usize },
}

/// Normal words per degree, largest first; coordinates follow this order.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    words: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
    certification: Certification,
}

impl GradedBasis {
    pub fn new(rs: &RewriteSystem, max_degree: u32, declared: Option<&HilbertSeries>) -> Result<GradedBasis> {
        if max_degree > rs.completed_to() {
            return Err(Error::DegreeOutOfRange { degree: max_degree, bound: rs.completed_to() });
        }
        let mut words: Vec<Vec<Word>> = Vec::new();
        for d in 0..=max_degree {
            let next = normal_words(rs, &words, d);
            words.push(next);
        }
        let index = words.iter().map(|ws| ws.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect()).collect();
        let mut certification = Certification::Unchecked;
        if let Some(h) = declared {
            certification = Certification::Certified;
            let expected = h.expand(max_degree as usize);
            for (d, (&e, ws)) in expected.iter().zip(&words).enumerate() {
                if e != ws.len() as i64 {
                    certification = Certification::Failed { degree: d as u32, expected: e, got: ws.len() };
                    break;
                }
            }
        }
        Ok(GradedBasis { words, index, certification })
    }

    pub fn max_degree(&self) -> u32 {
        self.words.len() as u32 - 1
    }

    pub fn dim(&self, d: u32) -> usize {
        self.words.get(d as usize).map_or(0, |w| w.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.words.iter().map(|w| w.len()).collect()
    }

    pub fn words(&self, d: u32) -> &[Word] {
        &self.words[d as usize]
    }

    pub fn certification(&self) -> &Certification {
        &self.certification
    }

    pub fn position(&self, d: u32, w: &Word) -> Option<usize> {
        self.index.get(d as usize)?.get(w).copied()
    }

    fn check(&self, d: u32) -> Result<()> {
        if d > self.max_degree() {
            Err(Error::DegreeOutOfRange { degree: d, bound: self.max_degree() })
        } else {
            Ok(())
        }
    }

    /// Coordinates of a normal-form element of degree `d`.
    pub fn to_vector(&self, f: &FreeElt, d: u32) -> Result<Vector> {
        self.check(d)?;
        let mut v = vec![CycNum::zero(); self.dim(d)];
        for (w, c) in f.terms() {
            let k = self
                .position(d, w)
                .ok_or_else(|| Error::Invalid("element is not a normal form of the requested degree".into()))?;
            v[k] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(&self, d: u32, v: &[CycNum]) -> FreeElt {
        FreeElt::from_terms(self.words[d as usize].iter().zip(v).map(|(w, c)| (w.clone(), c.clone())))
    }
}

/// A presentation together with its completed rewriting system and basis.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pres: AlgebraPresentation,
    rs: RewriteSystem,
    basis: GradedBasis,
}

impl GradedAlgebra {
    /// Completes with the declaration order and builds the basis to `max_degree`.
    pub fn new(pres: AlgebraPresentation, max_degree: u32) -> Result<GradedAlgebra> {
        let order = MonomialOrder::declaration(pres.weights());
        GradedAlgebra::with_order(pres, order, max_degree)
    }

    pub fn with_order(pres: AlgebraPresentation, order: MonomialOrder, max_degree: u32) -> Result<GradedAlgebra> {
        let rs = complete(&pres, order, max_degree)?;
        let basis = GradedBasis::new(&rs, max_degree, pres.declared_hilbert())?;
        Ok(GradedAlgebra { pres, rs, basis })
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.pres
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rs
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn max_degree(&self) -> u32 {
        self.basis.max_degree()
    }

    pub fn ngens(&self) -> usize {
        self.pres.ngens()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.pres.weights()
    }

    pub fn names(&self) -> Vec<String> {
        self.pres.names()
    }

    pub fn dim(&self, d: u32) -> usize {
        self.basis.dim(d)
    }

    pub fn gen(&self, g: usize) -> FreeElt {
        FreeElt::gen(g)
    }

    pub fn nf(&self, f: &FreeElt) -> Result<FreeElt> {
        self.rs.normal_form(f)
    }

    pub fn mul(&self, f: &FreeElt, g: &FreeElt) -> Result<FreeElt> {
        self.rs.multiply(f, g)
    }

    /// Product of a sequence of elements, reduced after every step.
    pub fn product(&self, factors: &[FreeElt]) -> Result<FreeElt> {
        factors.iter().try_fold(FreeElt::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, f: &FreeElt, k: u32) -> Result<FreeElt> {
        (0..k).try_fold(FreeElt::one(), |acc, _| self.mul(&acc, f))
    }

    pub fn degree_of(&self, f: &FreeElt) -> Option<u32> {
        f.degree(&self.weights())
    }

    pub fn to_vector(&self, f: &FreeElt, d: u32) -> Result<Vector> {
        self.basis.to_vector(f, d)
    }

    pub fn from_vector(&self, d: u32, v: &[CycNum]) -> FreeElt {
        self.basis.from_vector(d, v)
    }

    pub fn display(&self, f: &FreeElt) -> String {
        f.display(&self.names())
    }

    /// Columns are the images of the degree-`d` basis under `f`.
    pub fn linear_map_columns(&self, d: u32, f: impl Fn(&FreeElt) -> Result<FreeElt> + Sync, target: u32) -> Result<Vec<Vector>> {
        self.basis
            .words(d)
            .par_iter()
            .map(|w| self.to_vector(&f(&FreeElt::word(w.clone()))?, target))
            .collect()
    }
}
