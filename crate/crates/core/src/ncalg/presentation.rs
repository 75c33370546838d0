use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::elt::FreeElt;
use crate::cyclo::lcm;
use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, weight: u32) -> Generator {
        Generator { name: name.into(), weight }
    }
}

/// Generators with weights and homogeneous relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    label: String,
    generators: Vec<Generator>,
    relations: Vec<FreeElt>,
    declared_hilbert: Option<HilbertSeries>,
    multidegree_map: Option<Vec<Vec<i32>>>,
}

impl AlgebraPresentation {
    pub fn new(label: impl Into<String>, generators: Vec<Generator>, relations: Vec<FreeElt>) -> Result<Self> {
        if generators.len() > u8::MAX as usize {
            return Err(Error::Invalid("too many generators".into()));
        }
        let mut names = HashSet::new();
        for g in &generators {
            if g.weight == 0 {
                return Err(Error::Invalid(format!("generator {} has weight 0", g.name)));
            }
            if !names.insert(g.name.as_str()) {
                return Err(Error::Invalid(format!("duplicate generator name {}", g.name)));
            }
        }
        let weights: Vec<u32> = generators.iter().map(|g| g.weight).collect();
        for (index, r) in relations.iter().enumerate() {
            if r.words().flat_map(|w| w.letters()).any(|g| g >= generators.len()) {
                return Err(Error::Invalid(format!("relation {index} uses an undeclared generator")));
            }
            if !r.is_homogeneous(&weights) {
                return Err(Error::Inhomogeneous { index });
            }
        }
        Ok(AlgebraPresentation {
            label: label.into(),
            generators,
            relations,
            declared_hilbert: None,
            multidegree_map: None,
        })
    }

    pub fn with_hilbert(mut self, h: HilbertSeries) -> Self {
        self.declared_hilbert = Some(h);
        self
    }

    pub fn with_multidegrees(mut self, map: Vec<Vec<i32>>) -> Result<Self> {
        if map.len() != self.generators.len() {
            return Err(Error::DimensionMismatch { expected: self.generators.len(), got: map.len() });
        }
        self.multidegree_map = Some(map);
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.weight).collect()
    }

    pub fn max_weight(&self) -> u32 {
        self.generators.iter().map(|g| g.weight).max().unwrap_or(1)
    }

    pub fn relations(&self) -> &[FreeElt] {
        &self.relations
    }

    pub fn declared_hilbert(&self) -> Option<&HilbertSeries> {
        self.declared_hilbert.as_ref()
    }

    pub fn multidegree_map(&self) -> Option<&[Vec<i32>]> {
        self.multidegree_map.as_deref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn max_relation_degree(&self) -> u32 {
        let w = self.weights();
        self.relations.iter().filter_map(|r| r.degree(&w)).max().unwrap_or(0)
    }

    /// lcm of the conductors of all relation coefficients.
    pub fn conductor(&self) -> u32 {
        self.relations
            .iter()
            .flat_map(|r| r.terms().map(|(_, c)| c.conductor()).collect::<Vec<_>>())
            .fold(1, lcm)
    }
}
