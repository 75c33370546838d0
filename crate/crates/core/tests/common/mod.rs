//! Test oracles written independently of the rewriting machinery.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use ozonelab_core::ncalg::{AlgebraPresentation, FreeElt};
use ozonelab_core::CycNum;

/// All words of weighted degree `d`, as letter sequences.
pub fn words(weights: &[u32], d: u32) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (g, &w) in weights.iter().enumerate() {
        if w <= d {
            for mut rest in words(weights, d - w) {
                rest.insert(0, g);
                out.push(rest);
            }
        }
    }
    out
}

fn letters(f: &FreeElt) -> Vec<(Vec<usize>, CycNum)> {
    f.terms().map(|(w, c)| (w.letters().collect(), c.clone())).collect()
}

/// Incremental row echelon form over sparse rows.
struct Echelon {
    pivots: HashMap<usize, BTreeMap<usize, CycNum>>,
}

impl Echelon {
    fn insert(&mut self, mut row: BTreeMap<usize, CycNum>) {
        loop {
            let Some((&col, lead)) = row.iter().next() else { return };
            match self.pivots.get(&col) {
                Some(p) => {
                    let factor = lead.clone();
                    for (k, v) in p {
                        let e = row.entry(*k).or_insert_with(CycNum::zero);
                        *e = &*e - &(&factor * v);
                        if e.is_zero() {
                            row.remove(k);
                        }
                    }
                }
                None => {
                    let inv = lead.inv().expect("nonzero lead");
                    let row = row.into_iter().map(|(k, v)| (k, &v * &inv)).collect();
                    self.pivots.insert(col, row);
                    return;
                }
            }
        }
    }
}

/// `dim (T(V) / (R))_d` by brute force: the span of all `u r v` in degree `d`.
pub fn tensor_quotient_dim(pres: &AlgebraPresentation, d: u32) -> usize {
    let weights = pres.weights();
    let all = words(&weights, d);
    let index: HashMap<&Vec<usize>, usize> = all.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut ech = Echelon { pivots: HashMap::new() };
    for r in pres.relations() {
        let rd = r.degree(&weights).expect("homogeneous relation");
        if rd > d {
            continue;
        }
        let terms = letters(r);
        for left in 0..=(d - rd) {
            for u in words(&weights, left) {
                for v in words(&weights, d - rd - left) {
                    let mut row = BTreeMap::new();
                    for (w, c) in &terms {
                        let mut full = u.clone();
                        full.extend(w);
                        full.extend(&v);
                        let e = row.entry(index[&full]).or_insert_with(CycNum::zero);
                        *e = &*e + c;
                    }
                    row.retain(|_, c: &mut CycNum| !c.is_zero());
                    ech.insert(row);
                }
            }
        }
    }
    all.len() - ech.pivots.len()
}
