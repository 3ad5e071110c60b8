//! Group and groupoid presentations with a named relator function.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! gp< g1, ..., gk | n1 = w1, ..., nm = wm >
//! obj< p, q > gp< f : p -> q, a : p -> p | ... >
//! ```
//!
//! Words use `*` and `^` with integer exponents. Unnamed relators get
//! auto-names `r1, r2, ...`. Relator symbols are kept distinct even when
//! their words coincide, so the relator map is a genuine function.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::words::{quote_name, GeneratorSymbol, Letter, ObjectId, Word};

#[derive(Clone, Debug)]
pub struct Presentation {
    pub objects: Vec<ObjectId>,
    pub generators: Vec<GeneratorSymbol>,
    pub relators: Vec<GeneratorSymbol>,
    omega: BTreeMap<GeneratorSymbol, Word>,
}

impl Presentation {
    pub fn new(
        objects: Vec<ObjectId>,
        generators: Vec<GeneratorSymbol>,
        relators: Vec<(String, Word)>,
    ) -> Result<Presentation> {
        let objects = if objects.is_empty() {
            vec![ObjectId::base()]
        } else {
            objects
        };
        let mut syms = Vec::new();
        let mut omega = BTreeMap::new();
        for (name, w) in relators {
            if !w.is_loop() {
                return Err(Error::NonLoopRelator(name));
            }
            let sym = GeneratorSymbol::at(&name, 2, w.source().clone());
            if omega.contains_key(&sym) {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: format!("duplicate relator name `{}`", name),
                });
            }
            omega.insert(sym.clone(), w);
            syms.push(sym);
        }
        Ok(Presentation {
            objects,
            generators,
            relators: syms,
            omega,
        })
    }

    pub fn omega(&self, r: &GeneratorSymbol) -> Result<&Word> {
        self.omega
            .get(r)
            .ok_or_else(|| Error::UnknownRelator(r.name().to_string()))
    }

    pub fn omega_map(&self) -> &BTreeMap<GeneratorSymbol, Word> {
        &self.omega
    }

    pub fn generator(&self, name: &str) -> Option<&GeneratorSymbol> {
        self.generators.iter().find(|g| g.name() == name)
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Canonical print; `parse` of this string returns an equal presentation.
    pub fn display(&self) -> String {
        let mut s = String::new();
        let one_object = self.objects.len() == 1 && self.objects[0] == ObjectId::base();
        if !one_object {
            let objs: Vec<_> = self.objects.iter().map(|o| o.as_str().to_string()).collect();
            let _ = write!(s, "obj< {} > ", objs.join(", "));
        }
        let gens: Vec<_> = self
            .generators
            .iter()
            .map(|g| {
                if one_object {
                    quote_name(g.name())
                } else {
                    format!("{} : {} -> {}", quote_name(g.name()), g.source(), g.target())
                }
            })
            .collect();
        let rels: Vec<_> = self
            .relators
            .iter()
            .map(|r| format!("{} = {}", quote_name(r.name()), self.omega[r].display()))
            .collect();
        let _ = write!(s, "gp< {} | {} >", gens.join(", "), rels.join(", "));
        s
    }

    /// Structural report: trivial relators, duplicate relator values.
    pub fn validate(&self) -> ValidationReport {
        let mut warnings = Vec::new();
        let mut seen: BTreeMap<Word, String> = BTreeMap::new();
        for r in &self.relators {
            let w = &self.omega[r];
            if w.is_identity() {
                warnings.push(format!("relator `{}` is trivial", r.name()));
            }
            if let Some(prev) = seen.get(w) {
                warnings.push(format!(
                    "relators `{}` and `{}` have the same value {}",
                    prev,
                    r.name(),
                    w.display()
                ));
            } else {
                seen.insert(w.clone(), r.name().to_string());
            }
        }
        ValidationReport { warnings }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Tokenizer shared by the presentation and dump parsers.

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    Arrow,
}

#[derive(Clone)]
pub struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pub pos: usize,
    peeked: Option<(usize, Option<Tok>)>,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            peeked: None,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    pub fn peek(&mut self) -> Result<Option<Tok>> {
        if let Some((_, ref t)) = self.peeked {
            return Ok(t.clone());
        }
        let save = self.pos;
        let tok = self.lex()?;
        self.peeked = Some((self.pos, tok.clone()));
        self.pos = save;
        Ok(tok)
    }

    #[allow(clippy::should_implement_trait)] // fallible lexing, not iteration
    pub fn next(&mut self) -> Result<Option<Tok>> {
        if let Some((end, t)) = self.peeked.take() {
            self.pos = end;
            return Ok(t);
        }
        self.lex()
    }

    fn lex(&mut self) -> Result<Option<Tok>> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Ok(None);
        }
        let c = self.bytes[self.pos];
        if c == b'"' {
            let start = self.pos + 1;
            let mut i = start;
            let mut name = String::new();
            while i < self.bytes.len() {
                match self.bytes[i] {
                    b'\\' if i + 1 < self.bytes.len() => {
                        name.push(self.bytes[i + 1] as char);
                        i += 2;
                    }
                    b'"' => {
                        self.pos = i + 1;
                        return Ok(Some(Tok::Ident(name)));
                    }
                    _ => {
                        let ch_start = i;
                        let s = &self.src[ch_start..];
                        let ch = s.chars().next().unwrap();
                        name.push(ch);
                        i += ch.len_utf8();
                    }
                }
            }
            return Err(self.err("unterminated quoted name"));
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.bytes.len() {
                let c = self.bytes[self.pos];
                if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            return Ok(Some(Tok::Ident(self.src[start..self.pos].to_string())));
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: i64 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.err("integer out of range"))?;
            return Ok(Some(Tok::Int(n)));
        }
        if c == b'-' {
            if self.pos + 1 < self.bytes.len() && self.bytes[self.pos + 1] == b'>' {
                self.pos += 2;
                return Ok(Some(Tok::Arrow));
            }
            if self.pos + 1 < self.bytes.len() && self.bytes[self.pos + 1].is_ascii_digit() {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: i64 = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| self.err("integer out of range"))?;
                return Ok(Some(Tok::Int(-n)));
            }
            self.pos += 1;
            return Ok(Some(Tok::Sym('-')));
        }
        self.pos += 1;
        Ok(Some(Tok::Sym(c as char)))
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.next()? {
            Some(Tok::Sym(got)) if got == c => Ok(()),
            other => Err(self.err(format!("expected `{}`, found {:?}", c, other))),
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match self.next()? {
            Some(Tok::Ident(s)) => Ok(s),
            other => Err(self.err(format!("expected a name, found {:?}", other))),
        }
    }

    /// Object labels may be plain numbers (the cylinder ends 0 and 1).
    pub fn expect_label(&mut self) -> Result<String> {
        match self.next()? {
            Some(Tok::Ident(s)) => Ok(s),
            Some(Tok::Int(n)) if n >= 0 => Ok(n.to_string()),
            other => Err(self.err(format!("expected an object label, found {:?}", other))),
        }
    }

    pub fn eat_sym(&mut self, c: char) -> Result<bool> {
        if self.peek()? == Some(Tok::Sym(c)) {
            self.next()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }
}

/// Parses a word over a generator table.
///
/// word := factor (`*` factor)* | `1`
/// factor := name (`^` int)?
pub fn parse_word(
    lex: &mut Lexer<'_>,
    table: &BTreeMap<String, GeneratorSymbol>,
    at: Option<ObjectId>,
) -> Result<Word> {
    let mut letters: Vec<Letter> = Vec::new();
    loop {
        match lex.peek()? {
            Some(Tok::Int(1)) => {
                lex.next()?;
            }
            Some(Tok::Ident(name)) => {
                lex.next()?;
                let sym = table
                    .get(&name)
                    .ok_or_else(|| lex.err(format!("unknown generator `{}`", name)))?
                    .clone();
                let mut exp: i64 = 1;
                if lex.eat_sym('^')? {
                    match lex.next()? {
                        Some(Tok::Int(n)) => exp = n,
                        other => return Err(lex.err(format!("expected integer exponent, found {:?}", other))),
                    }
                }
                for _ in 0..exp.unsigned_abs() {
                    letters.push(Letter::new(sym.clone(), exp < 0));
                }
            }
            other => return Err(lex.err(format!("expected a word, found {:?}", other))),
        }
        if !lex.eat_sym('*')? {
            break;
        }
    }
    Word::reduce(letters, at).map_err(|e| lex.err(e.to_string()))
}

/// Parses the `gp< ... >` presentation grammar.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut lex = Lexer::new(text);
    let mut objects: Vec<ObjectId> = Vec::new();
    if lex.peek()? == Some(Tok::Ident("obj".into())) {
        lex.next()?;
        lex.expect_sym('<')?;
        loop {
            let name = lex.expect_label()?;
            objects.push(ObjectId::new(&name));
            if !lex.eat_sym(',')? {
                break;
            }
        }
        lex.expect_sym('>')?;
    }
    match lex.next()? {
        Some(Tok::Ident(kw)) if kw == "gp" => {}
        other => return Err(lex.err(format!("expected `gp<...>`, found {:?}", other))),
    }
    lex.expect_sym('<')?;
    let one_object = objects.is_empty();
    if one_object {
        objects.push(ObjectId::base());
    }

    let mut generators: Vec<GeneratorSymbol> = Vec::new();
    let mut table: BTreeMap<String, GeneratorSymbol> = BTreeMap::new();
    if lex.peek()? != Some(Tok::Sym('|')) && lex.peek()? != Some(Tok::Sym('>')) {
        loop {
            let name = lex.expect_ident()?;
            let (src, tgt) = if lex.eat_sym(':')? {
                let s = lex.expect_label()?;
                match lex.next()? {
                    Some(Tok::Arrow) => {}
                    other => return Err(lex.err(format!("expected `->`, found {:?}", other))),
                }
                let t = lex.expect_label()?;
                (ObjectId::new(&s), ObjectId::new(&t))
            } else {
                (objects[0].clone(), objects[0].clone())
            };
            if !objects.contains(&src) || !objects.contains(&tgt) {
                return Err(lex.err(format!("generator `{}` uses an undeclared object", name)));
            }
            if table.contains_key(&name) {
                return Err(lex.err(format!("duplicate generator `{}`", name)));
            }
            let sym = GeneratorSymbol::dim1(&name, src, tgt);
            table.insert(name, sym.clone());
            generators.push(sym);
            if !lex.eat_sym(',')? {
                break;
            }
        }
    }

    let mut relators: Vec<(String, Word)> = Vec::new();
    if lex.eat_sym('|')? {
        let mut auto = 0usize;
        if lex.peek()? != Some(Tok::Sym('>')) {
            loop {
                // `name = word` or a bare word with an auto-generated name
                let named = if matches!(lex.peek()?, Some(Tok::Ident(_))) {
                    let mut probe = lex.clone();
                    probe.next()?;
                    probe.peek()? == Some(Tok::Sym('='))
                } else {
                    false
                };
                let name = if named {
                    let n = lex.expect_ident()?;
                    lex.expect_sym('=')?;
                    n
                } else {
                    auto += 1;
                    format!("r{}", auto)
                };
                let w = parse_word(&mut lex, &table, None)?;
                if !w.is_loop() {
                    return Err(Error::NonLoopRelator(name));
                }
                relators.push((name, w));
                if !lex.eat_sym(',')? {
                    break;
                }
            }
        }
    }
    lex.expect_sym('>')?;
    Presentation::new(objects, generators, relators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trefoil() {
        let p = parse_presentation("gp< a,b | r = a^3*b^-2 >").unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.omega(&p.relators[0]).unwrap().display(), "a^3*b^-2");
    }

    #[test]
    fn parses_cyclic() {
        let p = parse_presentation("gp< c | r = c^3 >").unwrap();
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.omega(&p.relators[0]).unwrap().display(), "c^3");
    }

    #[test]
    fn unknown_generator_is_syntax_error() {
        let err = parse_presentation("gp< a | r = b >").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }), "{err:?}");
    }

    #[test]
    fn unnamed_relators_get_auto_names() {
        let p = parse_presentation("gp< a, z | z^-1*a^-1*z*a^-1 >").unwrap();
        assert_eq!(p.relators[0].name(), "r1");
    }

    #[test]
    fn groupoid_generators_carry_types() {
        let p = parse_presentation("obj< p, q > gp< f : p -> q, a : p -> p | >").unwrap();
        let f = p.generator("f").unwrap();
        assert_eq!(f.source().as_str(), "p");
        assert_eq!(f.target().as_str(), "q");
    }

    #[test]
    fn roundtrip_canonical_print() {
        for text in [
            "gp< a,b | r = a^3*b^-2 >",
            "gp< c | r = c^3 >",
            "obj< p, q > gp< f : p -> q | >",
            "gp< s, t | q1 = s^2, q2 = t^3, q3 = s*t*s*t >",
        ] {
            let p = parse_presentation(text).unwrap();
            let printed = p.display();
            let q = parse_presentation(&printed).unwrap();
            assert_eq!(printed, q.display());
        }
    }

    #[test]
    fn validate_flags_duplicates_and_trivial() {
        let p = parse_presentation("gp< a | r = a^3, s = a^3, t = 1 >").unwrap();
        let report = p.validate();
        assert_eq!(report.warnings.len(), 2);
        let clean = parse_presentation("gp< a,b | r = a^3*b^-2 >").unwrap();
        assert!(clean.validate().is_clean());
    }
}
