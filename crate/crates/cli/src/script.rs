//! Session-file parser. One statement per line, `#` starts a comment.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use dualhs_core::dualhs::ClaimId;
use dualhs_core::poly::{MonomialOrder, PolyRing};
use dualhs_core::Rational;

/// Primes with a compiled prime-field implementation.
pub const SUPPORTED_PRIMES: [u64; 3] = [32003, 65521, 2147483647];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

impl Default for FieldChoice {
    fn default() -> Self {
        FieldChoice::Prime(32003)
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "Q"),
            FieldChoice::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldChoice {
    type Err = String;

    /// Accepts `Q`, `Fp:<p>` and `Fp <p>`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldChoice::Rationals);
        }
        let rest = s
            .strip_prefix("Fp")
            .map(|r| r.trim_start_matches(':').trim())
            .ok_or_else(|| format!("unknown field `{s}`; expected Q or Fp:<prime>"))?;
        let p: u64 = rest.parse().map_err(|_| format!("invalid prime `{rest}`"))?;
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(format!("unsupported prime {p}; compiled primes are 32003, 65521, 2147483647"));
        }
        Ok(FieldChoice::Prime(p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}`; expected json, csv or text")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    DualHs,
    Hs,
    Ext1Dual,
    Delta,
}

impl Table {
    pub fn name(self) -> &'static str {
        match self {
            Table::DualHs => "dual_hs",
            Table::Hs => "hs",
            Table::Ext1Dual => "ext1_dual",
            Table::Delta => "delta",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDef {
    Free { ring: String, rank: usize },
    /// Submodule of `ring^rank` generated by the listed vectors.
    Sub { ring: String, rank: usize, gens: Vec<Vec<String>> },
    /// Cokernel of the matrix whose columns are listed.
    Coker { ring: String, rank: usize, cols: Vec<Vec<String>> },
}

impl ModuleDef {
    pub fn ring(&self) -> &str {
        match self {
            ModuleDef::Free { ring, .. } | ModuleDef::Sub { ring, .. } | ModuleDef::Coker { ring, .. } => ring,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Field(FieldChoice),
    Ring { name: String, vars: Vec<String>, relations: Vec<String>, order: MonomialOrder },
    Ideal { name: String, gens: Vec<String>, ring: String },
    Module { name: String, def: ModuleDef },
    Table { kind: Table, module: String, ideal: String, upto: usize },
    Coefficients { module: String, ideal: String },
    Reduction { ideal: String },
    Phi { module: String, ideal: String },
    ZeroDim { ring: String, module: String },
    Verify { claim: ClaimId, module: String, ideal: Option<String> },
    Report { format: Option<Format>, path: Option<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub number: usize,
    pub statement: Statement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub lines: Vec<Line>,
    /// The field named by the script, if any.
    pub field: Option<FieldChoice>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ring,
    Ideal,
    Module,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Ideal => "ideal",
            Kind::Module => "module",
        }
    }
}

/// Names seen so far, with the variables of each ring for syntax checks.
#[derive(Default)]
struct Scope {
    kinds: HashMap<String, Kind>,
    rings: HashMap<String, PolyRing<Rational>>,
}

impl Scope {
    fn expect(&self, name: &str, kind: Kind) -> Result<(), String> {
        match self.kinds.get(name) {
            Some(k) if *k == kind => Ok(()),
            Some(k) => Err(format!("`{name}` is a {}, expected a {}", k.name(), kind.name())),
            None => Err(format!("undefined {} `{name}`", kind.name())),
        }
    }

    fn define(&mut self, name: &str, kind: Kind) -> Result<(), String> {
        if !is_ident(name) {
            return Err(format!("invalid name `{name}`"));
        }
        if self.kinds.insert(name.to_string(), kind).is_some() {
            return Err(format!("`{name}` is already defined"));
        }
        Ok(())
    }

    fn check_polys<'a>(&self, ring: &str, polys: impl IntoIterator<Item = &'a String>) -> Result<(), String> {
        let r = &self.rings[ring];
        for p in polys {
            r.parse(p).map_err(|e| format!("in `{p}`: {e}"))?;
        }
        Ok(())
    }
}

/// Parse a whole session. All errors are collected, each with its line.
pub fn parse(text: &str) -> Result<Script, Vec<ParseError>> {
    let mut script = Script::default();
    let mut scope = Scope::default();
    let mut errors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match parse_statement(line, &mut scope) {
            Ok(Statement::Field(f)) => match script.field {
                Some(g) if g != f => errors.push(ParseError { line: number, message: format!("field {f} conflicts with earlier field {g}") }),
                _ => {
                    script.field = Some(f);
                    script.lines.push(Line { number, statement: Statement::Field(f) });
                }
            },
            Ok(statement) => script.lines.push(Line { number, statement }),
            Err(message) => errors.push(ParseError { line: number, message }),
        }
    }
    if errors.is_empty() {
        Ok(script)
    } else {
        Err(errors)
    }
}

fn parse_statement(line: &str, scope: &mut Scope) -> Result<Statement, String> {
    let (head, rest) = split_word(line);
    match head {
        "field" => rest.parse().map(Statement::Field),
        "ring" => parse_ring(rest, scope),
        "ideal" => parse_ideal(rest, scope),
        "module" => parse_module(rest, scope),
        "compute" => parse_compute(rest, scope),
        "verify" => parse_verify(rest, scope),
        "report" => parse_report(rest),
        _ => Err(format!("unknown statement `{head}`")),
    }
}

fn parse_ring(rest: &str, scope: &mut Scope) -> Result<Statement, String> {
    let (name, body) = split_definition(rest)?;
    let body = body.strip_prefix("poly").ok_or("expected `poly(<vars>)`")?.trim_start();
    let (vars, after) = bracketed(body, '(', ')')?;
    let vars = items(vars)?;
    let mut after = after.trim();
    let mut relations = Vec::new();
    if let Some(r) = after.strip_prefix('/') {
        let (rels, tail) = bracketed(r.trim_start(), '(', ')')?;
        relations = items(rels)?;
        after = tail.trim();
    }
    let mut order = MonomialOrder::Grevlex;
    if !after.is_empty() {
        let (kw, o) = split_word(after);
        if kw != "order" {
            return Err(format!("unexpected `{after}`"));
        }
        order = match o {
            "grevlex" => MonomialOrder::Grevlex,
            "lex" => MonomialOrder::Lex,
            "grlex" => MonomialOrder::GradedLex,
            _ => return Err(format!("unknown monomial order `{o}`")),
        };
    }
    let poly = PolyRing::<Rational>::with_vars(&vars, order).map_err(|e| e.to_string())?;
    scope.define(name, Kind::Ring)?;
    scope.rings.insert(name.to_string(), poly);
    scope.check_polys(name, &relations)?;
    Ok(Statement::Ring { name: name.to_string(), vars, relations, order })
}

fn parse_ideal(rest: &str, scope: &mut Scope) -> Result<Statement, String> {
    let (name, body) = split_definition(rest)?;
    let (gens, after) = bracketed(body, '(', ')')?;
    let ring = after.trim().strip_prefix("in").map(str::trim).ok_or("expected `in <ring>`")?;
    scope.expect(ring, Kind::Ring)?;
    let gens = items(gens)?;
    scope.check_polys(ring, &gens)?;
    scope.define(name, Kind::Ideal)?;
    Ok(Statement::Ideal { name: name.to_string(), gens, ring: ring.to_string() })
}

fn parse_module(rest: &str, scope: &mut Scope) -> Result<Statement, String> {
    let (name, body) = split_definition(rest)?;
    let (kw, _) = split_ident(body);
    let args = body[kw.len()..].trim_start();
    let (inner, after) = bracketed(args, '(', ')')?;
    if !after.trim().is_empty() {
        return Err(format!("unexpected `{}`", after.trim()));
    }
    let def = match kw {
        "free" => {
            let parts = split_top(inner);
            let [ring, rank] = parts.as_slice() else {
                return Err("expected `free(<ring>, <rank>)`".into());
            };
            scope.expect(ring, Kind::Ring)?;
            let rank = rank.parse().map_err(|_| format!("invalid rank `{rank}`"))?;
            ModuleDef::Free { ring: ring.clone(), rank }
        }
        "sub" | "coker" => {
            let (space, vectors) = inner.split_once(';').ok_or_else(|| format!("expected `{kw}(<ring>^<k>; [...], ...)`"))?;
            let (ring, rank) = match space.split_once('^') {
                Some((r, k)) => (r.trim(), k.trim().parse().map_err(|_| format!("invalid rank `{}`", k.trim()))?),
                None => (space.trim(), 1),
            };
            scope.expect(ring, Kind::Ring)?;
            let mut vecs = Vec::new();
            for v in items(vectors)? {
                let (entries, tail) = bracketed(&v, '[', ']')?;
                if !tail.trim().is_empty() {
                    return Err(format!("unexpected `{}`", tail.trim()));
                }
                let entries = items(entries)?;
                if entries.len() != rank {
                    return Err(format!("vector `{v}` has {} entries, expected {rank}", entries.len()));
                }
                scope.check_polys(ring, &entries)?;
                vecs.push(entries);
            }
            let ring = ring.to_string();
            if kw == "sub" {
                if vecs.is_empty() {
                    return Err("a submodule needs at least one generator".into());
                }
                ModuleDef::Sub { ring, rank, gens: vecs }
            } else {
                ModuleDef::Coker { ring, rank, cols: vecs }
            }
        }
        _ => return Err(format!("unknown module constructor `{kw}`; expected free, sub or coker")),
    };
    scope.define(name, Kind::Module)?;
    Ok(Statement::Module { name: name.to_string(), def })
}

fn parse_compute(rest: &str, scope: &Scope) -> Result<Statement, String> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    let Some((&what, args)) = words.split_first() else {
        return Err("expected a quantity after `compute`".into());
    };
    let table = match what {
        "dual_hs" => Some(Table::DualHs),
        "hs" => Some(Table::Hs),
        "ext1_dual" => Some(Table::Ext1Dual),
        "delta" => Some(Table::Delta),
        _ => None,
    };
    if let Some(kind) = table {
        let [module, ideal, flag, n] = args else {
            return Err(format!("expected `compute {what} <module> <ideal> --upto <N>`"));
        };
        if *flag != "--upto" {
            return Err(format!("expected `--upto`, found `{flag}`"));
        }
        scope.expect(module, Kind::Module)?;
        scope.expect(ideal, Kind::Ideal)?;
        let upto = n.parse().map_err(|_| format!("invalid bound `{n}`"))?;
        return Ok(Statement::Table { kind, module: module.to_string(), ideal: ideal.to_string(), upto });
    }
    match (what, args) {
        ("coefficients", [m, i]) | ("phi", [m, i]) => {
            scope.expect(m, Kind::Module)?;
            scope.expect(i, Kind::Ideal)?;
            let (module, ideal) = (m.to_string(), i.to_string());
            Ok(if what == "phi" { Statement::Phi { module, ideal } } else { Statement::Coefficients { module, ideal } })
        }
        ("reduction", [i]) => {
            scope.expect(i, Kind::Ideal)?;
            Ok(Statement::Reduction { ideal: i.to_string() })
        }
        ("zero_dim", [r, m]) => {
            scope.expect(r, Kind::Ring)?;
            scope.expect(m, Kind::Module)?;
            Ok(Statement::ZeroDim { ring: r.to_string(), module: m.to_string() })
        }
        ("coefficients" | "phi" | "reduction" | "zero_dim", _) => Err(format!("wrong number of arguments to `compute {what}`")),
        _ => Err(format!("unknown quantity `{what}`")),
    }
}

fn parse_verify(rest: &str, scope: &Scope) -> Result<Statement, String> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    let (claim, module, ideal) = match words.as_slice() {
        [c, m] => (c, m, None),
        [c, m, i] => (c, m, Some(i.to_string())),
        _ => return Err("expected `verify <CLAIM_ID> <module> [<ideal>]`".into()),
    };
    let claim: ClaimId = claim.parse()?;
    scope.expect(module, Kind::Module)?;
    if let Some(i) = &ideal {
        scope.expect(i, Kind::Ideal)?;
    }
    Ok(Statement::Verify { claim, module: module.to_string(), ideal })
}

fn parse_report(rest: &str) -> Result<Statement, String> {
    let mut format = None;
    let mut path = None;
    let mut words = rest.split_whitespace();
    while let Some(w) = words.next() {
        if w == "--format" {
            let f = words.next().ok_or("`--format` needs a value")?;
            format = Some(f.parse()?);
        } else if path.is_none() {
            path = Some(w.to_string());
        } else {
            return Err(format!("unexpected `{w}`"));
        }
    }
    Ok(Statement::Report { format, path })
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim_start()),
        None => (s, ""),
    }
}

fn split_ident(s: &str) -> (&str, &str) {
    let end = s.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(s.len());
    (&s[..end], &s[end..])
}

/// `<name> = <body>`
fn split_definition(rest: &str) -> Result<(&str, &str), String> {
    let (name, body) = rest.split_once('=').ok_or("expected `<name> = ...`")?;
    Ok((name.trim(), body.trim()))
}

/// Split `(inner) tail` at the matching close bracket.
fn bracketed(s: &str, open: char, close: char) -> Result<(&str, &str), String> {
    let s = s.trim_start();
    if !s.starts_with(open) {
        return Err(format!("expected `{open}`"));
    }
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        if c == '(' || c == '[' {
            depth += 1;
        } else if c == ')' || c == ']' {
            depth = depth.checked_sub(1).ok_or("unbalanced brackets")?;
            if depth == 0 {
                if c != close {
                    return Err(format!("expected `{close}`, found `{c}`"));
                }
                return Ok((&s[1..i], &s[i + 1..]));
            }
        }
    }
    Err(format!("missing `{close}`"))
}

/// Comma-separated items; empty items are errors.
fn items(s: &str) -> Result<Vec<String>, String> {
    let v = split_top(s);
    if v.iter().any(String::is_empty) {
        return Err(format!("empty item in `{}`", s.trim()));
    }
    Ok(v)
}

/// Split on commas outside brackets. An all-blank input gives no items.
fn split_top(s: &str) -> Vec<String> {
    if s.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur.trim().to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = "field Q
ring R = poly(x, y) / (x^2 + x*y + y^2)
ideal m = (x, y) in R
module M = sub(R^2; [x, -y], [x+y, x])
compute coefficients M m
compute reduction m
compute phi M m
verify THM57 M m
report --format json
";

    #[test]
    fn parses_fixture() {
        let s = parse(FIXTURE).unwrap();
        assert_eq!(s.field, Some(FieldChoice::Rationals));
        assert_eq!(s.lines.len(), 9);
        assert_eq!(
            s.lines[3].statement,
            Statement::Module {
                name: "M".into(),
                def: ModuleDef::Sub { ring: "R".into(), rank: 2, gens: vec![vec!["x".into(), "-y".into()], vec!["x+y".into(), "x".into()]] }
            }
        );
        assert_eq!(s.lines[8].statement, Statement::Report { format: Some(Format::Json), path: None });
    }

    #[test]
    fn empty_and_comments() {
        assert_eq!(parse("").unwrap(), Script::default());
        assert!(parse("# nothing\n   \n").unwrap().lines.is_empty());
    }

    #[test]
    fn polynomial_ring_forms() {
        let s = parse("ring A = poly(x, y) / ()\nring B = poly(u) order lex").unwrap();
        let Statement::Ring { relations, order, .. } = &s.lines[1].statement else { panic!() };
        assert!(relations.is_empty());
        assert_eq!(*order, MonomialOrder::Lex);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let errs = parse("field Q\nring R = poly(x) / (x^2)\n\nideal m = (x, z) in R\ncompute hs N m --upto 3\nfrobnicate").unwrap_err();
        let lines: Vec<usize> = errs.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![4, 5, 6]);
        assert!(errs[1].message.contains("undefined module `N`"));
    }

    #[test]
    fn field_rules() {
        assert_eq!("Fp:65521".parse::<FieldChoice>(), Ok(FieldChoice::Prime(65521)));
        assert_eq!("Fp 2147483647".parse::<FieldChoice>(), Ok(FieldChoice::Prime(2147483647)));
        assert!("Fp:7".parse::<FieldChoice>().is_err());
        assert!(parse("field Q\nfield Fp 32003").is_err());
        assert!(parse("field Q\nfield Q").is_ok());
    }

    #[test]
    fn rejects_bad_modules() {
        let base = "ring R = poly(x, y) / ()\n";
        for bad in ["module M = sub(R^2; [x])", "module M = free(R)", "module M = sub(R^1; [x] [y])", "module M = sum(R, 2)"] {
            assert!(parse(&format!("{base}{bad}")).is_err(), "{bad}");
        }
        assert!(parse(&format!("{base}module M = coker(R^1; [x], [y])")).is_ok());
        assert!(parse(&format!("{base}module M = coker(R^2; )")).is_ok());
    }

    #[test]
    fn duplicate_names() {
        let errs = parse("ring R = poly(x) / ()\nideal R = (x) in R").unwrap_err();
        assert_eq!(errs[0].line, 2);
    }
}
