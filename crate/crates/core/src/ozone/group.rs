use std::collections::{BTreeMap, HashMap};

use super::auto::GradedAutomorphism;
use crate::cyclo::{divisors, CycNum};
use crate::error::{Error, Result};
use crate::ncalg::GradedAlgebra;

/// A finite group of graded automorphisms with its multiplication table.
/// Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    elements: Vec<GradedAutomorphism>,
    table: Vec<Vec<usize>>,
}

fn position(elements: &[GradedAutomorphism], g: &GradedAutomorphism) -> Option<usize> {
    elements.iter().position(|h| h.images() == g.images())
}

impl FiniteGroupTable {
    pub fn trivial(ngens: usize) -> FiniteGroupTable {
        FiniteGroupTable { elements: vec![GradedAutomorphism::identity(ngens).mark_verified()], table: vec![vec![0]] }
    }

    /// Closure of `gens` under composition; fails once `limit` is passed.
    pub fn generate(alg: &GradedAlgebra, gens: &[GradedAutomorphism], limit: usize) -> Result<FiniteGroupTable> {
        let mut elements = vec![GradedAutomorphism::identity(alg.ngens()).mark_verified()];
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in gens {
                let h = g.compose(&elements[i], alg)?;
                if position(&elements, &h).is_none() {
                    elements.push(h);
                    if elements.len() > limit {
                        return Err(Error::SearchSpaceTooLarge { size: elements.len() as u128, limit: limit as u128 });
                    }
                    frontier.push(elements.len() - 1);
                }
            }
        }
        FiniteGroupTable::from_closed(alg, elements)
    }

    /// Builds the table of a set already closed under composition.
    pub fn from_closed(alg: &GradedAlgebra, mut elements: Vec<GradedAutomorphism>) -> Result<FiniteGroupTable> {
        let id = GradedAutomorphism::identity(alg.ngens());
        let k = position(&elements, &id).ok_or_else(|| Error::Invalid("group lacks the identity".into()))?;
        elements.swap(0, k);
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let h = elements[i].compose(&elements[j], alg)?;
                table[i][j] = position(&elements, &h)
                    .ok_or_else(|| Error::CrossCheckFailure("element set is not closed under composition".into()))?;
            }
        }
        Ok(FiniteGroupTable { elements, table })
    }

    /// Diagonal maps `x_i -> zeta_n^(k_i) x_i` for a set of exponent tuples
    /// closed under addition mod `n`.
    pub fn from_diagonal_exponents(n: u32, mut tuples: Vec<Vec<u32>>) -> Result<FiniteGroupTable> {
        tuples.sort();
        tuples.dedup();
        if tuples.first().is_none_or(|t| t.iter().any(|&k| k != 0)) {
            return Err(Error::Invalid("group lacks the identity".into()));
        }
        let index: HashMap<&Vec<u32>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut table = vec![vec![0; tuples.len()]; tuples.len()];
        for (i, a) in tuples.iter().enumerate() {
            for (j, b) in tuples.iter().enumerate() {
                let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + y) % n).collect();
                table[i][j] = *index
                    .get(&sum)
                    .ok_or_else(|| Error::CrossCheckFailure("diagonal candidates are not closed".into()))?;
            }
        }
        let elements = tuples
            .iter()
            .map(|t| {
                GradedAutomorphism::diagonal(t.iter().map(|&k| CycNum::root_power(n, k as i64)).collect()).mark_verified()
            })
            .collect();
        Ok(FiniteGroupTable { elements, table })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GradedAutomorphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GradedAutomorphism {
        &self.elements[i]
    }

    /// Index of `elements[i] o elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn index_of(&self, g: &GradedAutomorphism) -> Option<usize> {
        position(&self.elements, g)
    }

    pub fn contains(&self, g: &GradedAutomorphism) -> bool {
        self.index_of(g).is_some()
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.order()).find(|&j| self.table[i][j] == 0).expect("finite groups have inverses")
    }

    pub fn element_order(&self, i: usize) -> usize {
        let (mut cur, mut k) = (i, 1);
        while cur != 0 {
            cur = self.table[i][cur];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroupTable) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// Invariant factors `n_1 >= n_2 >= ...` with `n_{i+1} | n_i`, or `None`
    /// for a nonabelian group.
    pub fn invariant_factors(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let n = self.order() as u64;
        let orders: Vec<u64> = (0..self.order()).map(|i| self.element_order(i) as u64).collect();
        let mut per_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for p in divisors(n as u32).into_iter().map(u64::from).filter(|&p| p > 1 && is_prime(p)) {
            // #{g : g^(p^k) = 1} = p^(sum_i min(k, a_i))
            let mut prev_log = 0u32;
            let mut at_least = Vec::new();
            let mut pk = 1u64;
            loop {
                pk *= p;
                let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let log = ilog(count, p);
                if log == prev_log {
                    break;
                }
                at_least.push(log - prev_log);
                prev_log = log;
            }
            // at_least[k-1] = #{i : a_i >= k}
            let parts = at_least.first().copied().unwrap_or(0) as usize;
            let mut exps = vec![0u32; parts];
            for (k, &c) in at_least.iter().enumerate() {
                for e in exps.iter_mut().take(c as usize) {
                    *e = k as u32 + 1;
                }
            }
            per_prime.insert(p, exps);
        }
        let len = per_prime.values().map(|v| v.len()).max().unwrap_or(0);
        let factors = (0..len)
            .map(|j| per_prime.iter().map(|(&p, e)| p.pow(e.get(j).copied().unwrap_or(0))).product())
            .collect();
        Some(factors)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}
