use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use smallvec::SmallVec;

use super::elt::{FreeElt, Word};
use super::presentation::AlgebraPresentation;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::exactla::{rref, Matrix};

pub const DEFAULT_RULE_CAP: usize = 10_000;

impl Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        self.raw()
    }
}

/// Weighted degree first, then letters compared from the right; a letter
/// with higher precedence counts as larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    weights: Vec<u32>,
    rank: Vec<u8>,
}

impl MonomialOrder {
    /// `precedence` lists generator indices from highest to lowest.
    pub fn new(weights: Vec<u32>, precedence: &[usize]) -> Result<MonomialOrder> {
        let n = weights.len();
        let mut seen = vec![false; n];
        if precedence.len() != n {
            return Err(Error::Invalid(format!("order must list all {n} generators")));
        }
        let mut rank = vec![0u8; n];
        for (pos, &g) in precedence.iter().enumerate() {
            if g >= n || seen[g] {
                return Err(Error::Invalid("order must be a permutation of the generators".into()));
            }
            seen[g] = true;
            rank[g] = pos as u8;
        }
        Ok(MonomialOrder { weights, rank })
    }

    pub fn declaration(weights: Vec<u32>) -> MonomialOrder {
        let n = weights.len();
        MonomialOrder { weights, rank: (0..n as u8).collect() }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn precedence(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.rank.len()).collect();
        p.sort_by_key(|&g| self.rank[g]);
        p
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        a.degree(&self.weights).cmp(&b.degree(&self.weights)).then_with(|| {
            for (x, y) in a.raw().iter().rev().zip(b.raw().iter().rev()) {
                if x != y {
                    return self.rank[*y as usize].cmp(&self.rank[*x as usize]);
                }
            }
            a.len().cmp(&b.len())
        })
    }

    /// Largest word of `f` in this order.
    pub fn leading<'a>(&self, f: &'a FreeElt) -> Option<(&'a Word, &'a CycNum)> {
        f.terms().max_by(|a, b| self.cmp(a.0, b.0))
    }

    /// Sorts words from largest to smallest.
    pub fn sort_desc(&self, words: &mut [Word]) {
        words.sort_by(|a, b| self.cmp(b, a));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    pub rhs: FreeElt,
}

/// A rewriting system whose overlaps resolve up to `completed_to`.
pub struct RewriteSystem {
    order: MonomialOrder,
    rules: Vec<Rule>,
    lead_index: HashMap<Word, usize>,
    lead_lens: Vec<usize>,
    completed_to: u32,
    cache: RwLock<HashMap<Word, Arc<FreeElt>>>,
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        RewriteSystem {
            order: self.order.clone(),
            rules: self.rules.clone(),
            lead_index: self.lead_index.clone(),
            lead_lens: self.lead_lens.clone(),
            completed_to: self.completed_to,
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RewriteSystem")
            .field("rules", &self.rules.len())
            .field("completed_to", &self.completed_to)
            .finish()
    }
}

impl RewriteSystem {
    fn empty(order: MonomialOrder) -> RewriteSystem {
        RewriteSystem {
            order,
            rules: Vec::new(),
            lead_index: HashMap::new(),
            lead_lens: Vec::new(),
            completed_to: 0,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.order.weights
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn completed_to(&self) -> u32 {
        self.completed_to
    }

    pub fn is_lead(&self, w: &[u8]) -> bool {
        self.lead_index.contains_key(w)
    }

    pub(crate) fn lead_lens(&self) -> &[usize] {
        &self.lead_lens
    }

    fn add_rule(&mut self, rule: Rule) {
        let len = rule.lead.len();
        self.lead_index.insert(rule.lead.clone(), self.rules.len());
        self.rules.push(rule);
        if let Err(pos) = self.lead_lens.binary_search(&len) {
            self.lead_lens.insert(pos, len);
        }
    }

    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let raw = w.raw();
        for start in 0..raw.len() {
            for &l in &self.lead_lens {
                if start + l > raw.len() {
                    break;
                }
                if let Some(&r) = self.lead_index.get(&raw[start..start + l]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    fn nf_word(&self, w: &Word) -> Arc<FreeElt> {
        if let Some(f) = self.cache.read().unwrap().get(w) {
            return f.clone();
        }
        let result = match self.find_redex(w) {
            None => FreeElt::word(w.clone()),
            Some((start, r)) => {
                let rule = &self.rules[r];
                let raw = w.raw();
                let u = Word::from_raw(&raw[..start]);
                let v = Word::from_raw(&raw[start + rule.lead.len()..]);
                let mut out = FreeElt::zero();
                for (m, c) in rule.rhs.terms() {
                    out.add_scaled(c, &self.nf_word(&u.concat(m).concat(&v)));
                }
                out
            }
        };
        let result = Arc::new(result);
        self.cache.write().unwrap().insert(w.clone(), result.clone());
        result
    }

    fn reduce(&self, f: &FreeElt) -> FreeElt {
        let mut out = FreeElt::zero();
        for (w, c) in f.terms() {
            out.add_scaled(c, &self.nf_word(w));
        }
        out
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.completed_to {
            Err(Error::DegreeOutOfRange { degree: d, bound: self.completed_to })
        } else {
            Ok(())
        }
    }

    pub fn normal_form(&self, f: &FreeElt) -> Result<FreeElt> {
        if let Some(d) = f.max_degree(self.weights()) {
            self.check_degree(d)?;
        }
        Ok(self.reduce(f))
    }

    /// Normal form of a single word.
    pub fn normal_word(&self, w: &Word) -> Result<Arc<FreeElt>> {
        self.check_degree(w.degree(self.weights()))?;
        Ok(self.nf_word(w))
    }

    pub fn multiply(&self, f: &FreeElt, g: &FreeElt) -> Result<FreeElt> {
        let (Some(a), Some(b)) = (f.max_degree(self.weights()), g.max_degree(self.weights())) else {
            return Ok(FreeElt::zero());
        };
        self.check_degree(a + b)?;
        let mut out = FreeElt::zero();
        for (u, x) in f.terms() {
            for (v, y) in g.terms() {
                out.add_scaled(&(x * y), &self.nf_word(&u.concat(v)));
            }
        }
        Ok(out)
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }
}

/// Overlap of rule `i`'s lead suffix with rule `j`'s lead prefix, `k` letters long.
struct Overlap {
    i: usize,
    j: usize,
    k: usize,
}

fn overlaps_between<'a>(a: &'a Word, b: &'a Word) -> impl Iterator<Item = usize> + 'a {
    let (ra, rb) = (a.raw(), b.raw());
    (1..ra.len().min(rb.len())).filter(move |&k| ra[ra.len() - k..] == rb[..k])
}

/// Truncated homogeneous completion of `pres` up to degree `max_degree`.
pub fn complete(pres: &AlgebraPresentation, order: MonomialOrder, max_degree: u32) -> Result<RewriteSystem> {
    complete_with_cap(pres, order, max_degree, DEFAULT_RULE_CAP)
}

pub fn complete_with_cap(
    pres: &AlgebraPresentation,
    order: MonomialOrder,
    max_degree: u32,
    cap: usize,
) -> Result<RewriteSystem> {
    let weights = pres.weights();
    if order.weights != weights {
        return Err(Error::Invalid("order weights differ from generator weights".into()));
    }
    let mut by_degree: BTreeMap<u32, Vec<FreeElt>> = BTreeMap::new();
    for r in pres.relations() {
        if r.is_zero() {
            continue;
        }
        let d = r.degree(&weights).expect("relations are homogeneous");
        if d == 0 {
            return Err(Error::InconsistentPresentation);
        }
        by_degree.entry(d).or_default().push(r.clone());
    }
    let mut rs = RewriteSystem::empty(order);
    let mut pending: BTreeMap<u32, Vec<Overlap>> = BTreeMap::new();
    for d in 1..=max_degree {
        let mut cands: Vec<FreeElt> = by_degree.get(&d).map(|v| v.iter().map(|r| rs.reduce(r)).collect()).unwrap_or_default();
        for ov in pending.remove(&d).unwrap_or_default() {
            let (a, b) = (&rs.rules[ov.i], &rs.rules[ov.j]);
            let u = Word::from_raw(&a.lead.raw()[..a.lead.len() - ov.k]);
            let v = Word::from_raw(&b.lead.raw()[ov.k..]);
            let s = &a.rhs.sandwich(&Word::empty(), &v) - &b.rhs.sandwich(&u, &Word::empty());
            cands.push(rs.reduce(&s));
        }
        cands.retain(|c| !c.is_zero());
        if cands.is_empty() {
            rs.completed_to = d;
            continue;
        }
        let mut cols: Vec<Word> = cands.iter().flat_map(|c| c.words().cloned()).collect();
        cols.sort();
        cols.dedup();
        rs.order.sort_desc(&mut cols);
        let index: HashMap<&Word, usize> = cols.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let rows: Vec<Vec<CycNum>> = cands
            .iter()
            .map(|c| {
                let mut row = vec![CycNum::zero(); cols.len()];
                for (w, x) in c.terms() {
                    row[index[w]] = x.clone();
                }
                row
            })
            .collect();
        let (ech, pivots) = rref(&Matrix::from_rows(cols.len(), rows)?);
        let first_new = rs.rules.len();
        for (r, &p) in pivots.iter().enumerate() {
            let rhs = FreeElt::from_terms(
                ech.row(r).iter().enumerate().filter(|&(k, _)| k != p).map(|(k, x)| (cols[k].clone(), -x)),
            );
            rs.add_rule(Rule { lead: cols[p].clone(), rhs });
        }
        if rs.rules.len() > cap {
            return Err(Error::BudgetExceeded { cap });
        }
        // cached normal forms of degree >= d predate the new rules
        rs.cache.write().unwrap().retain(|w, _| w.degree(&weights) < d);
        for i in first_new..rs.rules.len() {
            for j in (0..rs.rules.len()).filter(|&j| j < first_new || j >= i) {
                let pairs: &[(usize, usize)] = if i == j { &[(i, i)] } else { &[(i, j), (j, i)] };
                for &(a, b) in pairs {
                    let (la, lb) = (&rs.rules[a].lead, &rs.rules[b].lead);
                    for k in overlaps_between(la, lb) {
                        let deg = la.degree(&weights) + Word::from_raw(&lb.raw()[k..]).degree(&weights);
                        if deg <= max_degree {
                            pending.entry(deg).or_default().push(Overlap { i: a, j: b, k });
                        }
                    }
                }
            }
        }
        rs.completed_to = d;
    }
    rs.completed_to = max_degree;
    Ok(rs)
}

/// Normal words of degree `d`, built from those of lower degree; sorted
/// largest first.
pub(crate) fn normal_words(rs: &RewriteSystem, lower: &[Vec<Word>], d: u32) -> Vec<Word> {
    let weights = rs.weights();
    let mut out = Vec::new();
    if d == 0 {
        return vec![Word::empty()];
    }
    for (g, &w) in weights.iter().enumerate() {
        if w > d {
            continue;
        }
        for prefix in &lower[(d - w) as usize] {
            let mut raw: SmallVec<[u8; 16]> = SmallVec::from_slice(prefix.raw());
            raw.push(g as u8);
            let n = raw.len();
            let reducible = rs.lead_lens().iter().any(|&l| l <= n && rs.is_lead(&raw[n - l..]));
            if !reducible {
                out.push(Word::from_raw(&raw));
            }
        }
    }
    rs.order().sort_desc(&mut out);
    out
}
