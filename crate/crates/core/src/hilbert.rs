//! Hilbert series of the form `p(t) / prod (1 - t^k)` and the rank formula
//! `rk = (h_A / h_Z)(1)`.
//!
//! Series literals:
//!
//! ```text
//! series  := poly ('/' denom)?
//! denom   := dfactor ('*' dfactor)*
//! dfactor := '(' '1' '-' 't' ('^' INT)? ')' ('^' INT)?
//!          | '(' denom ')' ('^' INT)?
//! poly    := the usual integer polynomial grammar in the variable t
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{Lexer, Token};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HilbertSeries {
    /// Numerator coefficients, constant term first, no trailing zeros.
    numerator: Vec<i64>,
    /// The `k` of every `(1 - t^k)` factor, sorted.
    denominator: Vec<u32>,
}

impl PartialEq for HilbertSeries {
    fn eq(&self, other: &Self) -> bool {
        // p1 / d1 = p2 / d2  <=>  p1 d2 = p2 d1
        let lhs = other.denominator.iter().fold(self.numerator.clone(), |p, &k| times_one_minus(&p, k));
        let rhs = self.denominator.iter().fold(other.numerator.clone(), |p, &k| times_one_minus(&p, k));
        lhs == rhs
    }
}

impl Eq for HilbertSeries {}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn times_one_minus(p: &[i64], k: u32) -> Vec<i64> {
    let k = k as usize;
    let mut out = vec![0; p.len() + k];
    for (i, &c) in p.iter().enumerate() {
        out[i] += c;
        out[i + k] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact quotient `p / (1 - t^k)`, if the division leaves no remainder.
fn div_one_minus(p: &[i64], k: u32) -> Option<Vec<i64>> {
    if p.is_empty() {
        return Some(Vec::new());
    }
    let k = k as usize;
    // q (1 - t^k) = p  =>  q_i = p_i + q_{i-k}
    if p.len() <= k {
        return None;
    }
    let qlen = p.len() - k;
    let mut q = vec![0; qlen];
    for i in 0..qlen {
        q[i] = p[i] + if i >= k { q[i - k] } else { 0 };
    }
    (times_one_minus(&q, k as u32) == p).then_some(q)
}

impl HilbertSeries {
    /// `numerator / prod (1 - t^k)`; the result is put in reduced form.
    pub fn new(numerator: Vec<i64>, denominator: Vec<u32>) -> Result<HilbertSeries> {
        if denominator.contains(&0) {
            return Err(Error::Invalid("denominator factor 1 - t^0 vanishes".into()));
        }
        let mut h = HilbertSeries { numerator: trim(numerator), denominator };
        h.reduce();
        Ok(h)
    }

    pub fn one() -> HilbertSeries {
        HilbertSeries { numerator: vec![1], denominator: Vec::new() }
    }

    /// Series of a commutative polynomial ring with the given generator weights.
    pub fn polynomial_ring(weights: &[u32]) -> HilbertSeries {
        HilbertSeries::new(vec![1], weights.to_vec()).expect("weights are positive")
    }

    fn reduce(&mut self) {
        self.denominator.sort_unstable();
        let mut kept = Vec::with_capacity(self.denominator.len());
        for &k in &self.denominator {
            match div_one_minus(&self.numerator, k) {
                Some(q) if !self.numerator.is_empty() => self.numerator = q,
                _ => kept.push(k),
            }
        }
        self.denominator = kept;
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    /// The first `d + 1` coefficients of the power series.
    pub fn expand(&self, d: usize) -> Vec<i64> {
        let mut c = vec![0i64; d + 1];
        for (i, &v) in self.numerator.iter().enumerate().take(d + 1) {
            c[i] = v;
        }
        for &k in &self.denominator {
            let k = k as usize;
            for i in k..=d {
                c[i] += c[i - k];
            }
        }
        c
    }

    pub fn mul(&self, other: &HilbertSeries) -> HilbertSeries {
        let mut den = self.denominator.clone();
        den.extend(&other.denominator);
        HilbertSeries::new(poly_mul(&self.numerator, &other.numerator), den).expect("factors are positive")
    }

    pub fn scale(&self, n: i64) -> HilbertSeries {
        HilbertSeries::new(self.numerator.iter().map(|c| c * n).collect(), self.denominator.clone())
            .expect("factors are positive")
    }

    /// Parses a series literal such as `"(1-t^16)/((1-t^4)^3*(1-t^8))"`.
    pub fn parse(s: &str) -> Result<HilbertSeries> {
        let mut lex = Lexer::new(s);
        let num = poly_expr(&mut lex)?;
        let mut den = Vec::new();
        if *lex.peek()? == Token::Slash {
            lex.next_token()?;
            den = denom(&mut lex)?;
        }
        let (pos, tok) = lex.next_token()?;
        if tok != Token::End {
            return Err(lex.error(pos, format!("trailing input {tok:?}")));
        }
        HilbertSeries::new(num, den)
    }
}

fn poly_to_string(p: &[i64]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        let body = match (c.abs(), mono.is_empty()) {
            (a, true) => a.to_string(),
            (1, false) => mono,
            (a, false) => format!("{a}*{mono}"),
        };
        if out.is_empty() {
            out = if c < 0 { format!("-{body}") } else { body };
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = poly_to_string(&self.numerator);
        let single = self.numerator.iter().filter(|&&c| c != 0).count() <= 1;
        if self.denominator.is_empty() {
            return write!(f, "{num}");
        }
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &k in &self.denominator {
            match groups.last_mut() {
                Some((g, n)) if *g == k => *n += 1,
                _ => groups.push((k, 1)),
            }
        }
        let factors: Vec<String> = groups
            .iter()
            .map(|&(k, n)| {
                let base = if k == 1 { "(1-t)".to_string() } else { format!("(1-t^{k})") };
                if n == 1 { base } else { format!("{base}^{n}") }
            })
            .collect();
        let num = if single { num } else { format!("({num})") };
        if factors.len() == 1 && groups[0].1 == 1 {
            write!(f, "{num}/{}", factors[0])
        } else {
            write!(f, "{num}/({})", factors.join("*"))
        }
    }
}

fn small(lex: &Lexer, pos: usize, v: &BigInt) -> Result<u32> {
    v.to_u32().ok_or_else(|| lex.error(pos, "exponent out of range"))
}

fn poly_expr(lex: &mut Lexer) -> Result<Vec<i64>> {
    let mut acc = poly_term(lex)?;
    loop {
        let sign = match lex.peek()? {
            Token::Plus => 1,
            Token::Minus => -1,
            _ => return Ok(acc),
        };
        lex.next_token()?;
        let t = poly_term(lex)?;
        let n = acc.len().max(t.len());
        acc.resize(n, 0);
        for (i, c) in t.into_iter().enumerate() {
            acc[i] += sign * c;
        }
        acc = trim(acc);
    }
}

fn poly_term(lex: &mut Lexer) -> Result<Vec<i64>> {
    let mut acc = poly_power(lex)?;
    while *lex.peek()? == Token::Star {
        lex.next_token()?;
        acc = poly_mul(&acc, &poly_power(lex)?);
    }
    Ok(acc)
}

fn poly_power(lex: &mut Lexer) -> Result<Vec<i64>> {
    let base = poly_atom(lex)?;
    if *lex.peek()? != Token::Caret {
        return Ok(base);
    }
    lex.next_token()?;
    let pos = lex.position()?;
    let e = lex.expect_int()?;
    let e = small(lex, pos, &e)?;
    Ok((0..e).fold(vec![1], |acc, _| poly_mul(&acc, &base)))
}

fn poly_atom(lex: &mut Lexer) -> Result<Vec<i64>> {
    let (pos, tok) = lex.next_token()?;
    match tok {
        Token::Int(v) => {
            let c = v.to_i64().ok_or_else(|| lex.error(pos, "coefficient out of range"))?;
            Ok(trim(vec![c]))
        }
        Token::Ident(name) if name == "t" => Ok(vec![0, 1]),
        Token::Minus => Ok(poly_power(lex)?.into_iter().map(|c| -c).collect()),
        Token::LParen => {
            let p = poly_expr(lex)?;
            lex.expect(Token::RParen)?;
            Ok(p)
        }
        other => Err(lex.error(pos, format!("unexpected {other:?} in series"))),
    }
}

fn denom(lex: &mut Lexer) -> Result<Vec<u32>> {
    let mut out = dfactor(lex)?;
    while *lex.peek()? == Token::Star {
        lex.next_token()?;
        out.extend(dfactor(lex)?);
    }
    Ok(out)
}

fn dfactor(lex: &mut Lexer) -> Result<Vec<u32>> {
    lex.expect(Token::LParen)?;
    let inner = if let Token::Int(v) = lex.peek()?.clone() {
        let pos = lex.position()?;
        if v != BigInt::from(1) {
            return Err(lex.error(pos, "denominator factors must read (1-t^k)"));
        }
        lex.next_token()?;
        lex.expect(Token::Minus)?;
        match lex.next_token()? {
            (_, Token::Ident(n)) if n == "t" => {}
            (pos, _) => return Err(lex.error(pos, "denominator factors must read (1-t^k)")),
        }
        let mut k = 1;
        if *lex.peek()? == Token::Caret {
            lex.next_token()?;
            let pos = lex.position()?;
            let e = lex.expect_int()?;
            k = small(lex, pos, &e)?;
            if k == 0 {
                return Err(lex.error(pos, "factor 1 - t^0 vanishes"));
            }
        }
        vec![k]
    } else {
        denom(lex)?
    };
    lex.expect(Token::RParen)?;
    let mut n = 1;
    if *lex.peek()? == Token::Caret {
        lex.next_token()?;
        let pos = lex.position()?;
        let e = lex.expect_int()?;
        n = small(lex, pos, &e)?;
    }
    Ok((0..n).flat_map(|_| inner.iter().copied()).collect())
}

/// Rank over a subalgebra with its PI degree when the rank is a square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: u64,
    pub pi_degree: Option<u64>,
}

/// Splits off every `(1 - t)` factor of a nonzero polynomial.
fn strip_unit_root(p: &[i64]) -> (usize, Vec<i64>) {
    let mut p = p.to_vec();
    let mut m = 0;
    while let Some(q) = div_one_minus(&p, 1) {
        p = q;
        m += 1;
    }
    (m, p)
}

/// `(h_a / h_z)` evaluated at `t = 1`.
pub fn rank_at_one(ha: &HilbertSeries, hz: &HilbertSeries) -> Result<RankReport> {
    if ha.numerator.is_empty() || hz.numerator.is_empty() {
        return Err(Error::PoleAtOne);
    }
    let (ma, pa) = strip_unit_root(&ha.numerator);
    let (mz, pz) = strip_unit_root(&hz.numerator);
    // each (1 - t^k) contributes one (1 - t) and a factor [k] with [k](1) = k
    if ma + hz.denominator.len() != mz + ha.denominator.len() {
        return Err(Error::PoleAtOne);
    }
    let prod = |ks: &[u32]| ks.iter().fold(BigInt::from(1), |acc, &k| acc * k);
    let at_one = |p: &[i64]| p.iter().fold(BigInt::zero(), |acc, &c| acc + c);
    let num = at_one(&pa) * prod(&hz.denominator);
    let den = at_one(&pz) * prod(&ha.denominator);
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() || !q.is_positive() {
        return Err(Error::NonIntegerRank(format!("{num}/{den}")));
    }
    let rank = q.to_u64().ok_or_else(|| Error::NonIntegerRank(q.to_string()))?;
    let root = num_integer::Roots::sqrt(&rank);
    Ok(RankReport { rank, pi_degree: (root * root == rank).then_some(root) })
}

/// Whether the template's coefficients reproduce `dims` term by term.
pub fn fit_series(dims: &[i64], template: &HilbertSeries) -> bool {
    if dims.is_empty() {
        return true;
    }
    template.expand(dims.len() - 1) == dims
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HilbertSeries {
        HilbertSeries::parse(s).unwrap()
    }

    #[test]
    fn expansions() {
        assert_eq!(h("1/(1-t)^3").expand(3), vec![1, 3, 6, 10]);
        assert_eq!(h("(1-t^6)/((1-t^2)^3*(1-t^3))").expand(3), vec![1, 0, 3, 1]);
        assert_eq!(h("1").expand(2), vec![1, 0, 0]);
        assert_eq!(h("1/((1-t)^2*(1-t^2))").expand(4), vec![1, 2, 4, 6, 9]);
    }

    #[test]
    fn ranks() {
        let r = rank_at_one(&h("1/((1-t)^3)"), &h("(1-t^6)/((1-t^2)^3*(1-t^3))")).unwrap();
        assert_eq!(r, RankReport { rank: 4, pi_degree: Some(2) });
        let r = rank_at_one(&h("1/((1-t)^2*(1-t^2))"), &h("(1-t^16)/((1-t^4)^3*(1-t^8))")).unwrap();
        assert_eq!(r, RankReport { rank: 16, pi_degree: Some(4) });
        let a = h("1/((1-t)^2*(1-t^2))");
        assert_eq!(rank_at_one(&a, &a).unwrap().rank, 1);
        assert_eq!(rank_at_one(&h("1/(1-t)^3"), &h("1/(1-t)^2")), Err(Error::PoleAtOne));
        assert!(matches!(rank_at_one(&h("1/(1-t)"), &h("2/(1-t)")), Err(Error::NonIntegerRank(_))));
        let r = rank_at_one(&h("1/(1-t)^2"), &h("1/(1-t^3)^2")).unwrap();
        assert_eq!(r, RankReport { rank: 9, pi_degree: Some(3) });
    }

    #[test]
    fn fit() {
        assert!(fit_series(&[1, 0, 0, 2, 0, 0, 3], &h("1/(1-t^3)^2")));
        assert!(fit_series(&[1, 0, 3, 0, 6], &h("1/(1-t^2)^3")));
        assert!(!fit_series(&[1, 0, 3, 0, 5], &h("1/(1-t^2)^3")));
    }

    #[test]
    fn parse_and_display() {
        for s in ["1/(1-t)^3", "(1-t^16)/((1-t^4)^3*(1-t^8))", "1 + t^2", "2/(1-t)", "1/((1-t)^2*(1-t^2))"] {
            let a = h(s);
            let b = h(&a.to_string());
            assert_eq!(a, b, "{s} vs {a}");
            assert_eq!(a.expand(12), b.expand(12));
        }
        assert_eq!(h("(1-t^6)/((1-t^2)^3*(1-t^3))"), h("(1+t^2+t^4)/((1-t^2)^2*(1-t^3))"));
        assert!(matches!(HilbertSeries::parse("1/(2-t)"), Err(Error::Syntax { .. })));
        assert!(matches!(HilbertSeries::parse("1/(1-t"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn product_convolves() {
        let a = h("1/(1-t)^2");
        let b = h("(1+t)/(1-t^3)");
        let p = a.mul(&b).expand(10);
        let (ea, eb) = (a.expand(10), b.expand(10));
        let conv: Vec<i64> = (0..=10).map(|n| (0..=n).map(|i| ea[i] * eb[n - i]).sum()).collect();
        assert_eq!(p, conv);
    }
}
