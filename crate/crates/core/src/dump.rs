//! Text dump format for crossed complexes.
//!
//! ```text
//! xres-complex v1
//! objects: 0, 1
//! coefficients: auto
//! dim 1
//! gen a : 0 -> 0
//! dim 2
//! gen r @ 0
//! d r = a^3*b^-2
//! dim 3
//! gen c3 @ 0
//! d c3 = c2 * (c2^(a))^-1
//! dim 4
//! gen c4 @ 0
//! d c4 = c3.[1 + a + a^2]
//! ```
//!
//! Generators and terms are ordered lexicographically by (dimension,
//! name), so identical complexes print byte-identically and dumps
//! round-trip through the parser.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::{CrossedComplex, Element, ModuleElement};
use crate::crossed_module::{PeifferFactor, PeifferSequence};
use crate::error::{Error, Result};
use crate::oracle::{build_finite_oracle, GroupOracle};
use crate::presentation::{parse_word, Lexer, Tok};
use crate::words::{quote_name, GeneratorSymbol, ObjectId, Word};

pub fn write_complex(c: &CrossedComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "xres-complex v1");
    let objs: Vec<String> = c.objects().iter().map(|o| o.as_str().to_string()).collect();
    let _ = writeln!(out, "objects: {}", objs.join(", "));
    let _ = writeln!(out, "coefficients: {}", coefficients_header(c));
    for dim in 1..=c.max_dim() {
        let mut gens = c.gens(dim).to_vec();
        if gens.is_empty() {
            continue;
        }
        gens.sort();
        let _ = writeln!(out, "dim {}", dim);
        for g in &gens {
            if dim == 1 {
                let _ = writeln!(
                    out,
                    "gen {} : {} -> {}",
                    quote_name(g.name()),
                    g.source(),
                    g.target()
                );
            } else {
                let _ = writeln!(out, "gen {} @ {}", quote_name(g.name()), g.basepoint());
            }
        }
        if dim >= 2 {
            for g in &gens {
                if let Ok(b) = c.boundary_of(g) {
                    let _ = writeln!(out, "d {} = {}", quote_name(g.name()), b.display());
                }
            }
        }
    }
    out
}

fn oracle_kind_word(o: &GroupOracle) -> &'static str {
    match o {
        GroupOracle::Free => "free",
        GroupOracle::InfiniteCyclic => "zpow",
        GroupOracle::Finite(_) => "auto",
        GroupOracle::Rewrite { .. } => "rewrite",
        GroupOracle::Product { .. } => "auto",
        GroupOracle::SemidirectZ { .. } | GroupOracle::Folded { .. } => "none",
    }
}

fn coefficients_header(c: &CrossedComplex) -> String {
    match c.oracle() {
        None => "none".to_string(),
        Some(GroupOracle::SemidirectZ { base, stable, twist, .. }) => {
            let twists: Vec<String> = twist
                .iter()
                .map(|(g, w)| format!("{} -> {}", quote_name(g), w.display()))
                .collect();
            format!(
                "semidirect {} {{ {} }} base {}",
                quote_name(stable.name()),
                twists.join(", "),
                oracle_kind_word(base)
            )
        }
        Some(GroupOracle::Product { .. }) if c.oracle().unwrap().is_finite() => "auto".to_string(),
        Some(GroupOracle::Product { .. }) => "none".to_string(),
        Some(o) => oracle_kind_word(o).to_string(),
    }
}

pub fn parse_complex(text: &str) -> Result<CrossedComplex> {
    parse_complex_with_bound(text, 4096)
}

pub fn parse_complex_with_bound(text: &str, bound: usize) -> Result<CrossedComplex> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let syntax = |i: usize, msg: String| Error::Syntax { pos: i + 1, msg };

    let (i, header) = lines
        .next()
        .ok_or_else(|| syntax(0, "empty dump".into()))?;
    if header.trim() != "xres-complex v1" {
        return Err(syntax(i, "expected header `xres-complex v1`".into()));
    }
    let (i, objline) = lines
        .next()
        .ok_or_else(|| syntax(i, "missing objects line".into()))?;
    let objects: Vec<ObjectId> = objline
        .trim()
        .strip_prefix("objects:")
        .ok_or_else(|| syntax(i, "expected `objects:`".into()))?
        .split(',')
        .map(|s| ObjectId::new(s.trim()))
        .collect();

    let mut coeff_spec: Option<String> = None;
    let mut complex = CrossedComplex::new(objects.clone());
    let mut dim: u32 = 0;
    let mut tables: BTreeMap<u32, BTreeMap<String, GeneratorSymbol>> = BTreeMap::new();
    let mut pending: Vec<(usize, u32, String, String)> = Vec::new();

    for (i, raw) in lines {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("coefficients:") {
            coeff_spec = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("dim ") {
            dim = rest
                .trim()
                .parse()
                .map_err(|_| syntax(i, "bad dimension".into()))?;
        } else if let Some(rest) = line.strip_prefix("gen ") {
            if dim == 0 {
                return Err(syntax(i, "generator before any `dim` line".into()));
            }
            let mut lex = Lexer::new(rest);
            let name = lex.expect_ident().map_err(|e| syntax(i, e.to_string()))?;
            let sym = if dim == 1 {
                lex.expect_sym(':').map_err(|e| syntax(i, e.to_string()))?;
                let s = lex.expect_label().map_err(|e| syntax(i, e.to_string()))?;
                match lex.next().map_err(|e| syntax(i, e.to_string()))? {
                    Some(Tok::Arrow) => {}
                    other => return Err(syntax(i, format!("expected `->`, found {:?}", other))),
                }
                let t = lex.expect_label().map_err(|e| syntax(i, e.to_string()))?;
                GeneratorSymbol::dim1(&name, ObjectId::new(&s), ObjectId::new(&t))
            } else {
                lex.expect_sym('@').map_err(|e| syntax(i, e.to_string()))?;
                let p = lex.expect_label().map_err(|e| syntax(i, e.to_string()))?;
                GeneratorSymbol::at(&name, dim, ObjectId::new(&p))
            };
            tables.entry(dim).or_default().insert(name, sym.clone());
            complex.add_gen(sym).map_err(|e| syntax(i, e.to_string()))?;
        } else if let Some(rest) = line.strip_prefix("d ") {
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| syntax(i, "expected `d <gen> = <expr>`".into()))?;
            let mut lex = Lexer::new(lhs);
            let name = lex.expect_ident().map_err(|e| syntax(i, e.to_string()))?;
            pending.push((i, dim, name, rhs.trim().to_string()));
        } else {
            return Err(syntax(i, format!("unrecognized line `{}`", line)));
        }
    }

    for (i, dim, name, expr) in pending {
        let sym = tables
            .get(&dim)
            .and_then(|t| t.get(&name))
            .cloned()
            .ok_or_else(|| syntax(i, format!("boundary for unknown generator `{}`", name)))?;
        let empty = BTreeMap::new();
        let dim1 = tables.get(&1).unwrap_or(&empty);
        let value = match dim {
            0 | 1 => return Err(syntax(i, "boundaries start at dimension 2".into())),
            2 => {
                let mut lex = Lexer::new(&expr);
                Element::Word(
                    parse_word(&mut lex, dim1, Some(sym.basepoint().clone()))
                        .map_err(|e| syntax(i, e.to_string()))?,
                )
            }
            3 => {
                let prev = tables.get(&2).unwrap_or(&empty);
                Element::Peiffer(
                    parse_peiffer(&expr, prev, dim1, sym.basepoint())
                        .map_err(|e| syntax(i, e.to_string()))?,
                )
            }
            n => {
                let prev = tables.get(&(n - 1)).unwrap_or(&empty);
                Element::Module(
                    parse_module(&expr, n - 1, prev, dim1, sym.basepoint())
                        .map_err(|e| syntax(i, e.to_string()))?,
                )
            }
        };
        complex
            .set_boundary(&sym, value)
            .map_err(|e| syntax(i, e.to_string()))?;
    }

    if let Some(spec) = coeff_spec {
        let oracle = oracle_from_spec(&spec, &complex, bound)?;
        complex.set_oracle(oracle);
    }
    Ok(complex)
}

fn parse_peiffer(
    text: &str,
    gens: &BTreeMap<String, GeneratorSymbol>,
    dim1: &BTreeMap<String, GeneratorSymbol>,
    at: &ObjectId,
) -> Result<PeifferSequence> {
    let mut lex = Lexer::new(text);
    if lex.peek()? == Some(Tok::Int(1)) {
        lex.next()?;
        return Ok(PeifferSequence::identity(at.clone()));
    }
    let mut factors = Vec::new();
    loop {
        let (name, conj) = if lex.eat_sym('(')? {
            let name = lex.expect_ident()?;
            lex.expect_sym('^')?;
            lex.expect_sym('(')?;
            let sym = gens
                .get(&name)
                .ok_or_else(|| Error::UnknownRelator(name.clone()))?;
            let w = parse_word(&mut lex, dim1, Some(sym.basepoint().clone()))?;
            lex.expect_sym(')')?;
            lex.expect_sym(')')?;
            (name, Some(w))
        } else {
            (lex.expect_ident()?, None)
        };
        let sym = gens
            .get(&name)
            .ok_or_else(|| Error::UnknownRelator(name.clone()))?
            .clone();
        let mut inverse = false;
        if lex.eat_sym('^')? {
            match lex.next()? {
                Some(Tok::Int(-1)) => inverse = true,
                Some(Tok::Int(1)) => {}
                other => {
                    return Err(Error::Syntax {
                        pos: lex.pos,
                        msg: format!("expected ^-1, found {:?}", other),
                    })
                }
            }
        }
        let conj = conj.unwrap_or_else(|| Word::identity(sym.basepoint().clone()));
        factors.push(PeifferFactor::new(sym, inverse, conj));
        if !lex.eat_sym('*')? {
            break;
        }
    }
    PeifferSequence::new(factors, at.clone())
}

fn parse_module(
    text: &str,
    dim: u32,
    gens: &BTreeMap<String, GeneratorSymbol>,
    dim1: &BTreeMap<String, GeneratorSymbol>,
    at: &ObjectId,
) -> Result<ModuleElement> {
    let mut lex = Lexer::new(text);
    let mut out = ModuleElement::zero(dim, at.clone());
    if lex.peek()? == Some(Tok::Int(0)) {
        lex.next()?;
        return Ok(out);
    }
    let mut sign = BigInt::one();
    loop {
        let name = lex.expect_ident()?;
        let sym = gens
            .get(&name)
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?
            .clone();
        if lex.eat_sym('.')? {
            lex.expect_sym('[')?;
            // ring element: signed terms `n`, `n*word`, `word`
            let mut rsign = BigInt::one();
            if lex.eat_sym('-')? {
                rsign = -rsign;
            }
            loop {
                let (coeff, word) = match lex.peek()? {
                    Some(Tok::Int(n)) => {
                        lex.next()?;
                        if lex.eat_sym('*')? {
                            let w = parse_word(&mut lex, dim1, Some(sym.basepoint().clone()))?;
                            (BigInt::from(n), w)
                        } else {
                            (BigInt::from(n), Word::identity(sym.basepoint().clone()))
                        }
                    }
                    _ => {
                        let w = parse_word(&mut lex, dim1, Some(sym.basepoint().clone()))?;
                        (BigInt::one(), w)
                    }
                };
                out.add_term(sym.clone(), word, &sign * &rsign * coeff)?;
                if lex.eat_sym('+')? {
                    rsign = BigInt::one();
                } else if lex.eat_sym('-')? {
                    rsign = -BigInt::one();
                } else {
                    break;
                }
            }
            lex.expect_sym(']')?;
        } else {
            out.add_term(
                sym.clone(),
                Word::identity(sym.basepoint().clone()),
                sign.clone(),
            )?;
        }
        if lex.eat_sym('+')? {
            sign = BigInt::one();
        } else if lex.eat_sym('-')? {
            sign = -BigInt::one();
        } else {
            break;
        }
    }
    Ok(out)
}

fn oracle_from_spec(
    spec: &str,
    complex: &CrossedComplex,
    bound: usize,
) -> Result<Option<GroupOracle>> {
    let mut lex = Lexer::new(spec);
    let kind = lex.expect_ident()?;
    match kind.as_str() {
        "none" => Ok(None),
        "free" => Ok(Some(GroupOracle::Free)),
        "zpow" => Ok(Some(GroupOracle::InfiniteCyclic)),
        "rewrite" => Ok(Some(GroupOracle::rewriting(&complex.bottom_presentation()?))),
        "auto" => {
            let p = complex.bottom_presentation()?;
            if p.is_free() {
                return Ok(Some(GroupOracle::Free));
            }
            Ok(Some(build_finite_oracle(&p, bound)?))
        }
        "semidirect" => {
            let stable_name = lex.expect_ident()?;
            let stable = complex
                .gen_named(1, &stable_name)
                .ok_or_else(|| Error::UnknownGenerator(stable_name.clone()))?
                .clone();
            lex.expect_sym('{')?;
            let dim1: BTreeMap<String, GeneratorSymbol> = complex
                .gens(1)
                .iter()
                .map(|g| (g.name().to_string(), g.clone()))
                .collect();
            let mut twist = BTreeMap::new();
            loop {
                let g = lex.expect_ident()?;
                match lex.next()? {
                    Some(Tok::Arrow) => {}
                    other => {
                        return Err(Error::Syntax {
                            pos: lex.pos,
                            msg: format!("expected `->`, found {:?}", other),
                        })
                    }
                }
                let w = parse_word(&mut lex, &dim1, None)?;
                twist.insert(g, w);
                if !lex.eat_sym(',')? {
                    break;
                }
            }
            lex.expect_sym('}')?;
            let base_kw = lex.expect_ident()?; // "base"
            if base_kw != "base" {
                return Err(Error::Syntax {
                    pos: lex.pos,
                    msg: "expected `base`".into(),
                });
            }
            let base_kind = lex.expect_ident()?;
            // sub-presentation omitting the stable letter
            let full = complex.bottom_presentation()?;
            let sub_gens: Vec<GeneratorSymbol> = full
                .generators
                .iter()
                .filter(|g| *g != &stable)
                .cloned()
                .collect();
            let sub_rels: Vec<(String, Word)> = full
                .relators
                .iter()
                .filter_map(|r| {
                    let w = full.omega(r).ok()?;
                    if w.letters().iter().any(|l| l.sym == stable) {
                        None
                    } else {
                        Some((r.name().to_string(), w.clone()))
                    }
                })
                .collect();
            let sub = crate::presentation::Presentation::new(
                complex.objects().iter().cloned().collect(),
                sub_gens,
                sub_rels,
            )?;
            let base = match base_kind.as_str() {
                "free" => GroupOracle::Free,
                "zpow" => GroupOracle::InfiniteCyclic,
                "auto" => build_finite_oracle(&sub, bound)?,
                other => {
                    return Err(Error::Syntax {
                        pos: lex.pos,
                        msg: format!("unknown semidirect base `{}`", other),
                    })
                }
            };
            Ok(crate::oracle::semidirect_z(
                base,
                stable,
                twist,
                complex.gens(1),
            )?)
        }
        other => Err(Error::Syntax {
            pos: 0,
            msg: format!("unknown coefficients spec `{}`", other),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_resolution, two_truncated};
    use crate::presentation::parse_presentation;

    fn roundtrip(c: &CrossedComplex) -> CrossedComplex {
        let text = write_complex(c);
        let back = parse_complex(&text).unwrap();
        assert_eq!(write_complex(&back), text, "dump not canonical");
        back
    }

    #[test]
    fn cyclic_resolution_roundtrips() {
        let c = cyclic_resolution(3, 5).unwrap();
        let back = roundtrip(&c);
        assert_eq!(back.max_dim(), 5);
        assert!(back.oracle().unwrap().is_finite());
        assert!(back.check_axioms(5).unwrap().passed());
    }

    #[test]
    fn trefoil_roundtrips() {
        let t = two_truncated(&parse_presentation("gp< a,b | r = a^3*b^-2 >").unwrap()).unwrap();
        let back = roundtrip(&t);
        assert_eq!(
            back.boundary_of(back.gen_named(2, "r").unwrap())
                .unwrap()
                .as_word()
                .unwrap()
                .display(),
            "a^3*b^-2"
        );
    }

    #[test]
    fn two_object_complex_roundtrips() {
        let b = cyclic_resolution(2, 3).unwrap();
        let cyl = crate::constructions::cylinder(&b, 3).unwrap();
        let back = roundtrip(&cyl);
        assert_eq!(back.objects().len(), 2);
        assert_eq!(back.gens(2).len(), cyl.gens(2).len());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_complex("not a dump").is_err());
        let bad = "xres-complex v1\nobjects: 0\ndim 2\ngen r @ 0\nd r = q^3\n";
        assert!(parse_complex(bad).is_err());
    }
}
