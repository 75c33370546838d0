use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::cyclo::CycNum;

/// A monomial: a sequence of generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn letter(g: usize) -> Word {
        Word(SmallVec::from_slice(&[g as u8]))
    }

    pub fn from_letters(letters: &[usize]) -> Word {
        Word(letters.iter().map(|&g| g as u8).collect())
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&g| g as usize)
    }

    pub fn raw(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn from_raw(raw: &[u8]) -> Word {
        Word(SmallVec::from_slice(raw))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().map(|&g| weights[g as usize]).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    pub fn push(&mut self, g: usize) {
        self.0.push(g as u8);
    }

    pub fn power(g: usize, k: usize) -> Word {
        Word(std::iter::repeat(g as u8).take(k).collect())
    }
}

/// A noncommutative polynomial: a sparse map from words to nonzero scalars.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeElt {
    terms: BTreeMap<Word, CycNum>,
}

impl FreeElt {
    pub fn zero() -> FreeElt {
        FreeElt::default()
    }

    pub fn one() -> FreeElt {
        FreeElt::monomial(Word::empty(), CycNum::one())
    }

    pub fn scalar(c: CycNum) -> FreeElt {
        FreeElt::monomial(Word::empty(), c)
    }

    pub fn gen(g: usize) -> FreeElt {
        FreeElt::monomial(Word::letter(g), CycNum::one())
    }

    pub fn word(w: Word) -> FreeElt {
        FreeElt::monomial(w, CycNum::one())
    }

    pub fn monomial(w: Word, c: CycNum) -> FreeElt {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreeElt { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, CycNum)>) -> FreeElt {
        let mut f = FreeElt::zero();
        for (w, c) in terms {
            f.add_term(w, c);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CycNum)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, CycNum)> {
        self.terms.into_iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coefficient(&self, w: &Word) -> CycNum {
        self.terms.get(w).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn add_term(&mut self, w: Word, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &CycNum, other: &FreeElt) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), c * v);
        }
    }

    pub fn scale(&self, c: &CycNum) -> FreeElt {
        if c.is_zero() {
            return FreeElt::zero();
        }
        FreeElt { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    /// The common degree of all terms, or `None` for zero or mixed elements.
    pub fn degree(&self, weights: &[u32]) -> Option<u32> {
        let mut it = self.terms.keys().map(|w| w.degree(weights));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn max_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|w| w.degree(weights)).max()
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        self.is_zero() || self.degree(weights).is_some()
    }

    /// Left and right multiplication by words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> FreeElt {
        FreeElt { terms: self.terms.iter().map(|(w, c)| (left.concat(w).concat(right), c.clone())).collect() }
    }

    /// Concatenation product in the free algebra.
    pub fn free_mul(&self, other: &FreeElt) -> FreeElt {
        let mut out = FreeElt::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// Maps every coefficient through `f`, dropping zeros.
    pub fn map_coefficients(&self, f: impl Fn(&CycNum) -> CycNum) -> FreeElt {
        FreeElt::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Renders with generator names, e.g. `x*y^2 - (z6 - 1)*z^3`.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (w, c) in self.terms.iter().rev() {
            let mono = word_string(w, names);
            let full = c.to_string();
            let (neg, cs) = match full.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, full),
            };
            let unit = cs == "1";
            let coeff = if cs.contains(' ') { format!("({cs})") } else { cs };
            let body = match (unit, mono.is_empty()) {
                (_, true) => coeff,
                (true, false) => mono,
                (false, false) => format!("{coeff}*{mono}"),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

pub fn word_string(w: &Word, names: &[String]) -> String {
    let mut out = String::new();
    let letters: Vec<usize> = w.letters().collect();
    let mut i = 0;
    while i < letters.len() {
        let g = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == g {
            run += 1;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(&names[g]);
        if run > 1 {
            let _ = write!(out, "^{run}");
        }
        i += run;
    }
    out
}

impl Add for &FreeElt {
    type Output = FreeElt;
    fn add(self, rhs: &FreeElt) -> FreeElt {
        let mut out = self.clone();
        out.add_scaled(&CycNum::one(), rhs);
        out
    }
}

impl Add for FreeElt {
    type Output = FreeElt;
    fn add(self, rhs: FreeElt) -> FreeElt {
        &self + &rhs
    }
}

impl Sub for &FreeElt {
    type Output = FreeElt;
    fn sub(self, rhs: &FreeElt) -> FreeElt {
        let mut out = self.clone();
        out.add_scaled(&CycNum::from_int(-1), rhs);
        out
    }
}

impl Sub for FreeElt {
    type Output = FreeElt;
    fn sub(self, rhs: FreeElt) -> FreeElt {
        &self - &rhs
    }
}

impl Neg for &FreeElt {
    type Output = FreeElt;
    fn neg(self) -> FreeElt {
        self.scale(&CycNum::from_int(-1))
    }
}

impl Neg for FreeElt {
    type Output = FreeElt;
    fn neg(self) -> FreeElt {
        -&self
    }
}

/// Free (unreduced) product.
impl Mul for &FreeElt {
    type Output = FreeElt;
    fn mul(self, rhs: &FreeElt) -> FreeElt {
        self.free_mul(rhs)
    }
}

impl Mul for FreeElt {
    type Output = FreeElt;
    fn mul(self, rhs: FreeElt) -> FreeElt {
        self.free_mul(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let x = FreeElt::gen(0);
        let y = FreeElt::gen(1);
        let f = &(&x * &y) - &(&y * &x).scale(&CycNum::zeta(3));
        assert_eq!(f.len(), 2);
        assert_eq!(f.degree(&[1, 1]), Some(2));
        assert!((&f - &f).is_zero());
        let s = f.display(&names);
        assert!(s.contains("x*y") && s.contains("z3*y*x"), "{s}");
        assert_eq!((&x * &x).display(&names), "x^2");
        assert_eq!(FreeElt::scalar(CycNum::from_int(-2)).display(&names), "-2");
        assert!(!(&x + &FreeElt::one()).is_homogeneous(&[1, 1]));
    }
}
