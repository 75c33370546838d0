//! Smash products `A # kG` with `G` a finite group of graded automorphisms.
//! Group elements sit in degree 0.

use rayon::prelude::*;

use crate::central::{
    find_relations, subalgebra_generators, twisted_centralizer, GradedOps, GradedSubspace, RelationSet, SubalgebraGens,
};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::exactla::{kernel, Matrix, Subspace, Vector};
use crate::hilbert::{rank_at_one, HilbertSeries};
use crate::ncalg::{FreeElt, GradedAlgebra};
use crate::ozone::FiniteGroupTable;

/// `sum_g a_g # g`, one component per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashElt {
    components: Vec<FreeElt>,
}

impl SmashElt {
    pub fn zero(order: usize) -> SmashElt {
        SmashElt { components: vec![FreeElt::zero(); order] }
    }

    /// `a # g`.
    pub fn pure(order: usize, a: FreeElt, g: usize) -> SmashElt {
        let mut s = SmashElt::zero(order);
        s.components[g] = a;
        s
    }

    pub fn component(&self, g: usize) -> &FreeElt {
        &self.components[g]
    }

    pub fn components(&self) -> &[FreeElt] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &SmashElt) -> SmashElt {
        SmashElt { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &CycNum) -> SmashElt {
        SmashElt { components: self.components.iter().map(|a| a.scale(c)).collect() }
    }
}

pub struct SmashAlgebra<'a> {
    alg: &'a GradedAlgebra,
    group: FiniteGroupTable,
    /// Display names for group elements, identity first.
    group_names: Vec<String>,
}

impl<'a> SmashAlgebra<'a> {
    pub fn new(alg: &'a GradedAlgebra, group: FiniteGroupTable) -> Result<SmashAlgebra<'a>> {
        if group.elements().iter().any(|g| g.ngens() != alg.ngens() || !g.is_verified()) {
            return Err(Error::UnverifiedAutomorphism);
        }
        let group_names = (0..group.order()).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
        Ok(SmashAlgebra { alg, group, group_names })
    }

    pub fn with_group_names(mut self, names: Vec<String>) -> Result<SmashAlgebra<'a>> {
        if names.len() != self.group.order() {
            return Err(Error::DimensionMismatch { expected: self.group.order(), got: names.len() });
        }
        self.group_names = names;
        Ok(self)
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        self.alg
    }

    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn group_names(&self) -> &[String] {
        &self.group_names
    }

    pub fn pure(&self, a: FreeElt, g: usize) -> SmashElt {
        SmashElt::pure(self.order(), a, g)
    }

    /// `(a # g)(b # h) = a g(b) # gh`, extended bilinearly.
    pub fn multiply(&self, u: &SmashElt, v: &SmashElt) -> Result<SmashElt> {
        let mut out = SmashElt::zero(self.order());
        for (g, a) in u.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (h, b) in v.components.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let gb = self.group.element(g).apply(self.alg, b)?;
                let prod = self.alg.mul(a, &gb)?;
                let gh = self.group.mul(g, h);
                out.components[gh] = &out.components[gh] + &prod;
            }
        }
        Ok(out)
    }

    /// Coordinates: blocks of `A_d` coordinates, one per group element.
    pub fn to_vector(&self, u: &SmashElt, d: u32) -> Result<Vector> {
        let mut v = Vec::with_capacity(self.order() * self.alg.dim(d));
        for c in &u.components {
            v.extend(self.alg.to_vector(c, d)?);
        }
        Ok(v)
    }

    pub fn from_vector(&self, d: u32, v: &[CycNum]) -> SmashElt {
        let n = self.alg.dim(d);
        SmashElt { components: (0..self.order()).map(|g| self.alg.from_vector(d, &v[g * n..(g + 1) * n])).collect() }
    }

    pub fn display(&self, u: &SmashElt) -> String {
        let parts: Vec<String> = u
            .components
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(g, a)| {
                let s = self.alg.display(a);
                let s = if a.len() > 1 { format!("({s})") } else { s };
                format!("{s}#{}", self.group_names[g])
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    fn check_budget(&self, d: u32) -> Result<()> {
        let top = d + self.alg.presentation().max_weight();
        if top > self.alg.max_degree() {
            return Err(Error::DegreeOutOfRange { degree: top, bound: self.alg.max_degree() });
        }
        Ok(())
    }

    /// Center in degree `d` as the commutant of all `x # e` and `1 # g`.
    pub fn center_commutant(&self, d: u32) -> Result<Subspace> {
        self.check_budget(d)?;
        let weights = self.alg.weights();
        let n = self.order() * self.alg.dim(d);
        let cols: Vec<Vector> = (0..n)
            .into_par_iter()
            .map(|k| {
                let mut unit = vec![CycNum::zero(); n];
                unit[k] = CycNum::one();
                let u = self.from_vector(d, &unit);
                let mut col = Vec::new();
                for (g, &w) in weights.iter().enumerate() {
                    let x = self.pure(self.alg.gen(g), 0);
                    let c = self.multiply(&x, &u)?.add(&self.multiply(&u, &x)?.scale(&-CycNum::one()));
                    col.extend(self.to_vector(&c, d + w)?);
                }
                for h in 1..self.order() {
                    let one_h = self.pure(FreeElt::one(), h);
                    let c = self.multiply(&one_h, &u)?.add(&self.multiply(&u, &one_h)?.scale(&-CycNum::one()));
                    col.extend(self.to_vector(&c, d)?);
                }
                Ok(col)
            })
            .collect::<Result<_>>()?;
        let rows: usize =
            weights.iter().map(|&w| self.order() * self.alg.dim(d + w)).sum::<usize>() + (self.order() - 1) * n;
        Ok(kernel(&Matrix::from_columns(rows, &cols)?))
    }

    /// Span of `f # g` over `G`-invariant `f` with `x f = f g(x)`.
    pub fn center_spanning_set(&self, d: u32) -> Result<Subspace> {
        if !self.group.is_abelian() {
            return Err(Error::NonAbelianGroup);
        }
        let dim = self.alg.dim(d);
        let fixed = crate::central::fixed_ring_degree(self.alg, &self.group, d)?;
        let mut vecs = Vec::new();
        for (g, phi) in self.group.elements().iter().enumerate() {
            let tw = twisted_centralizer(self.alg, phi, d)?;
            for v in tw.intersection(&fixed)?.basis() {
                let mut full = vec![CycNum::zero(); self.order() * dim];
                full[g * dim..(g + 1) * dim].clone_from_slice(v);
                vecs.push(full);
            }
        }
        Subspace::span(self.order() * dim, vecs)
    }

    /// Degree-`d` center; for abelian groups also built from normal
    /// invariants and compared.
    pub fn center_degree(&self, d: u32) -> Result<Subspace> {
        let direct = self.center_commutant(d)?;
        if self.group.is_abelian() {
            let spanned = self.center_spanning_set(d)?;
            if spanned != direct {
                return Err(Error::CrossCheckFailure(format!(
                    "smash center in degree {d}: commutant has dimension {}, normal invariants span {}",
                    direct.dim(),
                    spanned.dim()
                )));
            }
        }
        Ok(direct)
    }

    pub fn center(&self, max: u32) -> Result<GradedSubspace> {
        Ok(GradedSubspace::new((0..=max).map(|d| self.center_degree(d)).collect::<Result<_>>()?))
    }

    /// Generators and relations of the center up to degree `max`.
    pub fn center_presentation(&self, max: u32) -> Result<(SubalgebraGens, RelationSet)> {
        let z = self.center(max)?;
        let gens = subalgebra_generators(self, &z, max, "s")?;
        let rels = find_relations(self, &gens, max)?;
        Ok((gens, rels))
    }
}

impl GradedOps for SmashAlgebra<'_> {
    fn dim(&self, d: u32) -> usize {
        self.order() * self.alg.dim(d)
    }

    fn max_degree(&self) -> u32 {
        self.alg.max_degree()
    }

    fn mul_vec(&self, d1: u32, a: &[CycNum], d2: u32, b: &[CycNum]) -> Result<Vector> {
        let u = self.from_vector(d1, a);
        let v = self.from_vector(d2, b);
        self.to_vector(&self.multiply(&u, &v)?, d1 + d2)
    }

    fn describe(&self, d: u32, v: &[CycNum]) -> String {
        self.display(&self.from_vector(d, v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCheck {
    /// `rk_Z(A # kG)` from `|G| h_A / h_Z` at `t = 1`.
    pub series_rank: u64,
    /// `rk_Z(A) |G|`.
    pub product: u64,
    /// Rank over the center of the smash product, when its series is given.
    pub rank_over_smash_center: Option<u64>,
    pub holds: bool,
}

/// Compares `rk_Z(A # kG)` computed from series with `rk_Z(A) |G|`.
pub fn rank_multiplicativity_check(
    s: &SmashAlgebra<'_>,
    rank_a: u64,
    h_a: Option<&HilbertSeries>,
    h_z: Option<&HilbertSeries>,
    h_zbar: Option<&HilbertSeries>,
) -> Result<RankCheck> {
    let h_a = h_a.ok_or_else(|| Error::SeriesUnavailable("Hilbert series of the algebra".into()))?;
    let h_z = h_z.ok_or_else(|| Error::SeriesUnavailable("Hilbert series of the center".into()))?;
    let h_abar = h_a.scale(s.order() as i64);
    let series_rank = rank_at_one(&h_abar, h_z)?.rank;
    let product = rank_a * s.order() as u64;
    let rank_over_smash_center = h_zbar.map(|h| rank_at_one(&h_abar, h)).transpose()?.map(|r| r.rank);
    Ok(RankCheck { series_rank, product, rank_over_smash_center, holds: series_rank == product })
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::central::center;
    use crate::ncalg::{parse_element, AlgebraPresentation, Generator};
    use crate::ozone::verify_automorphism;

    fn heisenberg(d: u32) -> GradedAlgebra {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let params: HashMap<String, CycNum> = [("q".to_string(), CycNum::from_int(-1))].into_iter().collect();
        let rels = ["z*x - q*x*z", "y*z - q*z*y", "x*y - q*y*x - z^2"]
            .iter()
            .map(|r| parse_element(r, &names, &params).unwrap())
            .collect();
        let gens = names.iter().map(|n| Generator::new(n.clone(), 1)).collect();
        GradedAlgebra::new(AlgebraPresentation::new("H", gens, rels).unwrap(), d).unwrap()
    }

    fn phi_group(a: &GradedAlgebra) -> FiniteGroupTable {
        let phi = verify_automorphism(a, vec![-a.gen(0), -a.gen(1), a.gen(2)]).unwrap();
        FiniteGroupTable::generate(a, &[phi], 10).unwrap()
    }

    #[test]
    fn products_and_identity() {
        let a = heisenberg(4);
        let s = SmashAlgebra::new(&a, phi_group(&a)).unwrap();
        let one = s.pure(FreeElt::one(), 0);
        let u = s.pure(a.gen(0), 1);
        assert_eq!(s.multiply(&one, &u).unwrap(), u);
        assert_eq!(s.multiply(&u, &one).unwrap(), u);
        // (1#phi)(x#e) = -x#phi
        let p = s.multiply(&s.pure(FreeElt::one(), 1), &s.pure(a.gen(0), 0)).unwrap();
        assert_eq!(p, s.pure(-a.gen(0), 1));
        let sq = s.multiply(&s.pure(FreeElt::one(), 1), &s.pure(FreeElt::one(), 1)).unwrap();
        assert_eq!(sq, one);
        assert_eq!(s.display(&s.pure(a.gen(2), 1)), "z#g1");
    }

    #[test]
    fn heisenberg_smash_center() {
        let a = heisenberg(5);
        let s = SmashAlgebra::new(&a, phi_group(&a)).unwrap();
        let z1 = s.center_degree(1).unwrap();
        assert_eq!(z1.dim(), 1);
        assert_eq!(s.from_vector(1, &z1.basis()[0]), s.pure(a.gen(2), 1));
        assert_eq!(s.center_degree(0).unwrap().dim(), 1);
        let (gens, rels) = s.center_presentation(4).unwrap();
        assert_eq!(gens.degrees(), vec![1, 2, 2, 2]);
        assert_eq!(rels.relations.len(), 1);
        assert_eq!(rels.relations[0].0, 4);
    }

    #[test]
    fn trivial_group_gives_center() {
        let a = heisenberg(4);
        let s = SmashAlgebra::new(&a, FiniteGroupTable::trivial(3)).unwrap();
        let z = center(&a, 3).unwrap();
        for d in 0..=3 {
            assert_eq!(s.center_degree(d).unwrap(), *z.piece(d));
        }
    }

    #[test]
    fn rank_products() {
        let a = heisenberg(3);
        let s = SmashAlgebra::new(&a, phi_group(&a)).unwrap();
        let h_a = HilbertSeries::parse("1/(1-t)^3").unwrap();
        let h_z = HilbertSeries::parse("(1-t^6)/((1-t^2)^3*(1-t^3))").unwrap();
        let h_zbar = HilbertSeries::parse("(1-t^4)/((1-t^2)^2*(1-t)*(1-t^2))").unwrap();
        let r = rank_multiplicativity_check(&s, 4, Some(&h_a), Some(&h_z), Some(&h_zbar)).unwrap();
        assert_eq!(r, RankCheck { series_rank: 8, product: 8, rank_over_smash_center: Some(4), holds: true });
        assert!(matches!(rank_multiplicativity_check(&s, 4, Some(&h_a), None, None), Err(Error::SeriesUnavailable(_))));
    }
}
