//! Algebra element expressions and algebra spec files.
//!
//! Element grammar (scalars as in [`crate::cyclo::parse_scalar`]):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | NAME | '(' expr ')' | '-' power
//! ```
//!
//! A `NAME` is a generator, then a parameter, then a root literal `zN`.
//! `*` is concatenation; division and negative powers need scalar operands.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::elt::FreeElt;
#[cfg(test)]
use super::elt::Word;
use super::presentation::{AlgebraPresentation, Generator};
use crate::cyclo::{lcm, parse_scalar, CycNum, Lexer, Token};
use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;

struct EltParser<'a> {
    lex: Lexer<'a>,
    names: &'a [String],
    params: &'a HashMap<String, CycNum>,
}

fn as_scalar(f: &FreeElt) -> Option<CycNum> {
    if f.is_zero() {
        return Some(CycNum::zero());
    }
    if f.len() == 1 {
        let (w, c) = f.terms().next()?;
        if w.is_empty() {
            return Some(c.clone());
        }
    }
    None
}

impl EltParser<'_> {
    fn expr(&mut self) -> Result<FreeElt> {
        let mut acc = self.term()?;
        loop {
            match self.lex.peek()? {
                Token::Plus => {
                    self.lex.next_token()?;
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.lex.next_token()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FreeElt> {
        let mut acc = self.power()?;
        loop {
            match self.lex.peek()? {
                Token::Star => {
                    self.lex.next_token()?;
                    acc = acc.free_mul(&self.power()?);
                }
                Token::Slash => {
                    self.lex.next_token()?;
                    let pos = self.lex.position()?;
                    let d = self.power()?;
                    let c = as_scalar(&d).ok_or_else(|| self.lex.error(pos, "division by a non-scalar"))?;
                    acc = acc.scale(&c.inv()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<FreeElt> {
        let base = self.atom()?;
        if *self.lex.peek()? != Token::Caret {
            return Ok(base);
        }
        self.lex.next_token()?;
        let pos = self.lex.position()?;
        let neg = if *self.lex.peek()? == Token::Minus {
            self.lex.next_token()?;
            true
        } else {
            false
        };
        let e = self.lex.expect_int()?;
        let e = e.to_i64().filter(|&e| e <= 4096).ok_or_else(|| self.lex.error(pos, "exponent out of range"))?;
        if neg {
            let c = as_scalar(&base).ok_or_else(|| self.lex.error(pos, "negative power of a non-scalar"))?;
            return Ok(FreeElt::scalar(c.pow(-e)?));
        }
        if let Some(c) = as_scalar(&base) {
            return Ok(FreeElt::scalar(c.pow(e)?));
        }
        Ok((0..e).fold(FreeElt::one(), |acc, _| acc.free_mul(&base)))
    }

    fn atom(&mut self) -> Result<FreeElt> {
        let (pos, tok) = self.lex.next_token()?;
        match tok {
            Token::Int(v) => Ok(FreeElt::scalar(CycNum::from_ratio(v, BigInt::from(1))?)),
            Token::Minus => Ok(-self.power()?),
            Token::LParen => {
                let v = self.expr()?;
                self.lex.expect(Token::RParen)?;
                Ok(v)
            }
            Token::Ident(name) => {
                if let Some(g) = self.names.iter().position(|n| *n == name) {
                    return Ok(FreeElt::gen(g));
                }
                if let Some(c) = self.params.get(&name) {
                    return Ok(FreeElt::scalar(c.clone()));
                }
                match crate::cyclo::parse::root_conductor(&name) {
                    Some(n) => Ok(FreeElt::scalar(CycNum::zeta(n))),
                    None => Err(self.lex.error(pos, format!("unknown symbol {name:?}"))),
                }
            }
            other => Err(self.lex.error(pos, format!("unexpected {other:?}"))),
        }
    }
}

/// Parses an element such as `"x*y - q*y*x - z^2"`.
pub fn parse_element(s: &str, names: &[String], params: &HashMap<String, CycNum>) -> Result<FreeElt> {
    let mut p = EltParser { lex: Lexer::new(s), names, params };
    let v = p.expr()?;
    let (pos, tok) = p.lex.next_token()?;
    if tok != Token::End {
        return Err(p.lex.error(pos, format!("trailing input {tok:?}")));
    }
    Ok(v)
}

/// A named generator map `x -> image` read from an algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoSpec {
    pub name: String,
    pub images: Vec<FreeElt>,
}

/// The contents of an algebra spec file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub presentation: AlgebraPresentation,
    pub conductor: u32,
    pub params: Vec<(String, CycNum)>,
    pub autos: Vec<AutoSpec>,
}

fn toml_error(e: toml::de::Error) -> Error {
    let pos = e.span().map_or(0, |s| s.start);
    Error::Syntax { pos, msg: e.message().to_string() }
}

fn in_field(what: &str, e: Error) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos, msg: format!("{what}: {msg}") },
        other => other,
    }
}

fn get_str<'a>(v: &'a toml::Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Invalid(format!("{what} must be a string")))
}

/// Reads an algebra spec file.
///
/// ```text
/// [field]       conductor = 6
/// [generators]  x = 1
/// [params]      q = "z6"
/// [[relations]] expr = "x*y - q*y*x"
/// [meta]        label = "...", hilbert = "1/(1-t)^2"
/// [[autos]]     name = "tau", map = { x = "y", y = "x" }
/// ```
pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile> {
    let doc: toml::Table = text.parse().map_err(toml_error)?;
    for key in doc.keys() {
        if !["field", "generators", "params", "relations", "meta", "autos"].contains(&key.as_str()) {
            return Err(Error::Invalid(format!("unknown section [{key}]")));
        }
    }
    let mut conductor = 1u32;
    if let Some(field) = doc.get("field") {
        let n = field
            .get("conductor")
            .and_then(|v| v.as_integer())
            .filter(|&n| n >= 1 && n <= u32::MAX as i64)
            .ok_or_else(|| Error::Invalid("[field] conductor must be a positive integer".into()))?;
        conductor = n as u32;
    }
    let gens_tbl = doc
        .get("generators")
        .and_then(|v| v.as_table())
        .ok_or_else(|| Error::Invalid("missing [generators] section".into()))?;
    let mut generators = Vec::new();
    for (name, w) in gens_tbl {
        let w = w
            .as_integer()
            .filter(|&w| w >= 1 && w <= u32::MAX as i64)
            .ok_or_else(|| Error::Invalid(format!("weight of {name} must be a positive integer")))?;
        generators.push(Generator::new(name.clone(), w as u32));
    }
    let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();

    let mut params = Vec::new();
    let mut param_map = HashMap::new();
    if let Some(tbl) = doc.get("params") {
        let tbl = tbl.as_table().ok_or_else(|| Error::Invalid("[params] must be a table".into()))?;
        for (name, v) in tbl {
            let c = match v {
                toml::Value::Integer(i) => CycNum::from_int(*i),
                other => parse_scalar(get_str(other, "parameter")?).map_err(|e| in_field(&format!("param {name}"), e))?,
            };
            conductor = lcm(conductor, c.conductor());
            param_map.insert(name.clone(), c.clone());
            params.push((name.clone(), c));
        }
    }

    let mut relations = Vec::new();
    if let Some(rels) = doc.get("relations") {
        let rels = rels.as_array().ok_or_else(|| Error::Invalid("relations must be [[relations]] entries".into()))?;
        for (k, r) in rels.iter().enumerate() {
            let expr = r.get("expr").ok_or_else(|| Error::Invalid(format!("relation {k} has no expr")))?;
            let f = parse_element(get_str(expr, "expr")?, &names, &param_map)
                .map_err(|e| in_field(&format!("relation {k}"), e))?;
            relations.push(f);
        }
    }

    let mut label = String::from("algebra");
    let mut hilbert = None;
    if let Some(meta) = doc.get("meta") {
        if let Some(l) = meta.get("label") {
            label = get_str(l, "label")?.to_string();
        }
        if let Some(h) = meta.get("hilbert") {
            hilbert = Some(HilbertSeries::parse(get_str(h, "hilbert")?).map_err(|e| in_field("hilbert", e))?);
        }
    }
    let mut pres = AlgebraPresentation::new(label, generators, relations)?;
    if let Some(h) = hilbert {
        pres = pres.with_hilbert(h);
    }
    conductor = lcm(conductor, pres.conductor());

    let mut autos = Vec::new();
    if let Some(list) = doc.get("autos") {
        let list = list.as_array().ok_or_else(|| Error::Invalid("autos must be [[autos]] entries".into()))?;
        for (k, a) in list.iter().enumerate() {
            let name = a.get("name").map(|v| get_str(v, "name")).transpose()?.unwrap_or("auto").to_string();
            let map = a
                .get("map")
                .and_then(|m| m.as_table())
                .ok_or_else(|| Error::Invalid(format!("auto {k} needs a map table")))?;
            let auto = parse_auto_map(&name, map, &names, &param_map)?;
            for img in &auto.images {
                for (_, c) in img.terms() {
                    conductor = lcm(conductor, c.conductor());
                }
            }
            autos.push(auto);
        }
    }
    Ok(AlgebraFile { presentation: pres, conductor, params, autos })
}

fn parse_auto_map(
    name: &str,
    map: &toml::Table,
    names: &[String],
    params: &HashMap<String, CycNum>,
) -> Result<AutoSpec> {
    let mut images: Vec<FreeElt> = names.iter().map(|n| FreeElt::gen(names.iter().position(|m| m == n).unwrap())).collect();
    for (g, img) in map {
        let idx = names
            .iter()
            .position(|n| n == g)
            .ok_or_else(|| Error::Invalid(format!("auto {name} maps unknown generator {g}")))?;
        images[idx] = parse_element(get_str(img, "image")?, names, params)
            .map_err(|e| in_field(&format!("auto {name}, image of {g}"), e))?;
    }
    Ok(AutoSpec { name: name.to_string(), images })
}

/// Reads a file holding only `[[autos]]` entries against known generators.
pub fn parse_autos_file(text: &str, names: &[String]) -> Result<Vec<AutoSpec>> {
    let doc: toml::Table = text.parse().map_err(toml_error)?;
    let mut param_map = HashMap::new();
    if let Some(tbl) = doc.get("params").and_then(|v| v.as_table()) {
        for (name, v) in tbl {
            param_map.insert(name.clone(), parse_scalar(get_str(v, "parameter")?)?);
        }
    }
    let Some(list) = doc.get("autos").and_then(|v| v.as_array()) else {
        return Ok(Vec::new());
    };
    list.iter()
        .enumerate()
        .map(|(k, a)| {
            let name = a.get("name").and_then(|v| v.as_str()).unwrap_or("auto").to_string();
            let map = a
                .get("map")
                .and_then(|m| m.as_table())
                .ok_or_else(|| Error::Invalid(format!("auto {k} needs a map table")))?;
            parse_auto_map(&name, map, names, &param_map)
        })
        .collect()
}

/// Writes an algebra file that [`parse_algebra_file`] reads back.
pub fn emit_algebra_file(file: &AlgebraFile) -> String {
    use toml::{Table, Value};
    let pres = &file.presentation;
    let names = pres.names();
    let mut doc = Table::new();
    let mut field = Table::new();
    field.insert("conductor".into(), Value::Integer(file.conductor as i64));
    doc.insert("field".into(), Value::Table(field));
    let mut gens = Table::new();
    for g in pres.generators() {
        gens.insert(g.name.clone(), Value::Integer(g.weight as i64));
    }
    doc.insert("generators".into(), Value::Table(gens));
    if !file.params.is_empty() {
        let mut params = Table::new();
        for (name, c) in &file.params {
            params.insert(name.clone(), Value::String(c.to_string()));
        }
        doc.insert("params".into(), Value::Table(params));
    }
    let rels: Vec<Value> = pres
        .relations()
        .iter()
        .map(|r| {
            let mut t = Table::new();
            t.insert("expr".into(), Value::String(r.display(&names)));
            Value::Table(t)
        })
        .collect();
    doc.insert("relations".into(), Value::Array(rels));
    let mut meta = Table::new();
    meta.insert("label".into(), Value::String(pres.label().to_string()));
    if let Some(h) = pres.declared_hilbert() {
        meta.insert("hilbert".into(), Value::String(h.to_string()));
    }
    doc.insert("meta".into(), Value::Table(meta));
    if !file.autos.is_empty() {
        let autos: Vec<Value> = file
            .autos
            .iter()
            .map(|a| {
                let mut t = Table::new();
                t.insert("name".into(), Value::String(a.name.clone()));
                let mut map = Table::new();
                for (n, img) in names.iter().zip(&a.images) {
                    map.insert(n.clone(), Value::String(img.display(&names)));
                }
                t.insert("map".into(), Value::Table(map));
                Value::Table(t)
            })
            .collect();
        doc.insert("autos".into(), Value::Array(autos));
    }
    toml::to_string(&doc).expect("tables serialize")
}

/// Convenience for building elements in code and tests.
pub fn elt(s: &str, names: &[&str]) -> Result<FreeElt> {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    parse_element(s, &names, &HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn elements() {
        let p = HashMap::from([("q".to_string(), CycNum::zeta(6))]);
        let f = parse_element("x*y - q*y*x - z^2", &names(), &p).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.coefficient(&Word::from_letters(&[1, 0])), -CycNum::zeta(6));
        assert_eq!(f.coefficient(&Word::from_letters(&[2, 2])), CycNum::from_int(-1));
        let g = parse_element("(x + y)^2/2", &names(), &p).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(parse_element("z3^3*x", &names(), &p).unwrap(), FreeElt::gen(0));
        assert!(matches!(parse_element("x/y", &names(), &p), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_element("x + w", &names(), &p), Err(Error::Syntax { pos: 4, .. })));
        assert_eq!(parse_element("x/(z4^2+1)", &names(), &p), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_round_trip() {
        let p = HashMap::new();
        for s in ["x*y - z6*y*x - z^2", "-1/2*x^3 + (z4 - 1)*y*z*x", "2*x*y*z + y^3 - x^3", "-z3*x + 1"] {
            let f = parse_element(s, &names(), &p).unwrap();
            let back = parse_element(&f.display(&names()), &names(), &p).unwrap();
            assert_eq!(f, back, "{s} -> {}", f.display(&names()));
        }
    }

    #[test]
    fn file_round_trip() {
        let text = r#"
[field]
conductor = 4

[generators]
x = 1
y = 1
z = 1

[params]
q = "-1"

[[relations]]
expr = "z*x - q*x*z"

[[relations]]
expr = "y*z - q*z*y"

[[relations]]
expr = "x*y - q*y*x - z*z"

[meta]
label = "heisenberg"
hilbert = "1/(1-t)^3"

[[autos]]
name = "phi"
map = { x = "-x", y = "-y" }
"#;
        let f = parse_algebra_file(text).unwrap();
        assert_eq!(f.presentation.ngens(), 3);
        assert_eq!(f.presentation.names(), vec!["x", "y", "z"]);
        assert_eq!(f.conductor, 4);
        assert_eq!(f.autos[0].images[2], FreeElt::gen(2));
        assert_eq!(f.autos[0].images[0], -FreeElt::gen(0));
        let again = parse_algebra_file(&emit_algebra_file(&f)).unwrap();
        assert_eq!(again.presentation, f.presentation);
        assert_eq!(again.autos, f.autos);
    }

    #[test]
    fn file_errors() {
        assert!(matches!(parse_algebra_file("[generators]\nx = 1\n[[relations]]\nexpr = \"x*x*x - x*x\"\n"), Err(Error::Inhomogeneous { index: 0 })));
        assert!(matches!(parse_algebra_file("[generators\nx = 1"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_algebra_file("[generators]\nx = 1\n[[relations]]\nexpr = \"x*x +\"\n"),
            Err(Error::Syntax { pos: 5, .. })
        ));
    }
}
