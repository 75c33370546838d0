use super::elt::{FreeElt, Word};
use super::presentation::{AlgebraPresentation, Generator};
use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;
use crate::ozone::{AutoKind, GradedAutomorphism};

fn shift(f: &FreeElt, by: usize) -> FreeElt {
    FreeElt::from_terms(f.terms().map(|(w, c)| {
        let letters: Vec<usize> = w.letters().map(|g| g + by).collect();
        (Word::from_letters(&letters), c.clone())
    }))
}

fn fresh_name(base: &str, taken: &[String]) -> String {
    if !taken.iter().any(|n| n == base) {
        return base.to_string();
    }
    (1..).map(|k| format!("{base}{k}")).find(|n| !taken.contains(n)).expect("infinite supply")
}

/// `A (x) B`: both generator sets, both relation sets, and `b a - a b` for
/// every pair of generators from different factors.
pub fn tensor_product(p1: &AlgebraPresentation, p2: &AlgebraPresentation) -> AlgebraPresentation {
    let n1 = p1.ngens();
    let mut gens: Vec<Generator> = p1.generators().to_vec();
    let mut taken = p1.names();
    for g in p2.generators() {
        let name = fresh_name(&g.name, &taken);
        taken.push(name.clone());
        gens.push(Generator::new(name, g.weight));
    }
    let mut rels: Vec<FreeElt> = p1.relations().to_vec();
    rels.extend(p2.relations().iter().map(|r| shift(r, n1)));
    for b in 0..p2.ngens() {
        for a in 0..n1 {
            let ba = FreeElt::word(Word::from_letters(&[n1 + b, a]));
            let ab = FreeElt::word(Word::from_letters(&[a, n1 + b]));
            rels.push(&ba - &ab);
        }
    }
    let label = format!("{} (x) {}", p1.label(), p2.label());
    let mut out = AlgebraPresentation::new(label, gens, rels).expect("factors are homogeneous");
    if let (Some(h1), Some(h2)) = (p1.declared_hilbert(), p2.declared_hilbert()) {
        out = out.with_hilbert(h1.mul(h2));
    }
    out
}

/// `A[t; sigma]` with relations `t x - sigma(x) t`.
pub fn ore_extension(p: &AlgebraPresentation, sigma: &GradedAutomorphism, t_weight: u32) -> Result<AlgebraPresentation> {
    if !sigma.is_verified() {
        return Err(Error::UnverifiedAutomorphism);
    }
    if sigma.ngens() != p.ngens() {
        return Err(Error::DimensionMismatch { expected: p.ngens(), got: sigma.ngens() });
    }
    if t_weight == 0 {
        return Err(Error::Invalid("t must have positive weight".into()));
    }
    let weights = p.weights();
    if sigma.kind() == AutoKind::Linear {
        return Err(Error::NonGradedTwist);
    }
    for (g, img) in sigma.images().iter().enumerate() {
        if img.degree(&weights) != Some(weights[g]) {
            return Err(Error::NonGradedTwist);
        }
    }
    let n = p.ngens();
    let t = fresh_name("t", &p.names());
    let mut gens = p.generators().to_vec();
    gens.push(Generator::new(t, t_weight));
    let tw = Word::letter(n);
    let mut rels = p.relations().to_vec();
    for g in 0..n {
        let tx = FreeElt::word(Word::from_letters(&[n, g]));
        rels.push(&tx - &sigma.images()[g].sandwich(&Word::empty(), &tw));
    }
    let mut out = AlgebraPresentation::new(format!("{}[t; sigma]", p.label()), gens, rels)?;
    if let Some(h) = p.declared_hilbert() {
        out = out.with_hilbert(h.mul(&HilbertSeries::polynomial_ring(&[t_weight])));
    }
    Ok(out)
}
