//! Input files: declarations, the scalar functions `f`, `g1`, `g2` in the real
//! coordinates `x1, y1, x2, y2`, or a table of first-level coefficients.
//!
//! ```text
//! # comment
//! mode orbital;
//! degree 4;
//! coefficients a5, a9;
//! f = a5*x1^2 + a9*y1^2;
//! E[0,2] = 1/3;
//! subst w1 = 3/2;
//! ```
//!
//! Without `frequencies`, `coefficients` or `parameters` declarations, identifiers
//! are declared on first use: `w1` and `w2` are the frequencies, `mu`, `mu1`, ...
//! are parameters and everything else is a coefficient.

use std::collections::HashMap;
use std::fmt;

use nfc_algebra::{parse_bigrat, BigRat, GaussRat, RatFn, SymbolKind, SymbolTable};
use nfc_core::{BasisElem, Mode, PhasePoly};
use thiserror::Error;

const PHASE_VARS: [&str; 4] = ["x1", "y1", "x2", "y2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{pos}: {msg}")]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(s) => write!(f, "number {s}"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                s.push(c);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(s), pos));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                s.push(c);
                chars.next();
                col += 1;
            }
            out.push((Tok::Num(s), pos));
        } else if "+-*/^()=;,[]".contains(c) {
            chars.next();
            col += 1;
            out.push((Tok::Sym(c), pos));
        } else {
            return err(pos, format!("unexpected character `{c}`"));
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Num(BigRat),
    Var(String, Pos),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn idents<'a>(&'a self, out: &mut Vec<(&'a str, Pos)>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(s, p) => out.push((s, *p)),
            Expr::Neg(e) | Expr::Pow(e, _) => e.idents(out),
            Expr::Bin(_, a, b, _) => {
                a.idents(out);
                b.idents(out);
            }
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos(), format!("expected `{c}`, found {}", self.peek()))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.bump() {
            (Tok::Ident(s), p) => Ok((s, p)),
            (t, p) => err(p, format!("expected a name, found {t}")),
        }
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        match self.bump() {
            (Tok::Num(s), p) => s.parse().or_else(|_| err(p, format!("number {s} is too large"))),
            (Tok::Sym('-'), p) => err(p, "negative exponent"),
            (t, p) => err(p, format!("expected a non-negative integer, found {t}")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            let pos = self.pos();
            let op = match self.peek() {
                Tok::Sym(c @ ('+' | '-')) => *c,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?), pos);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let pos = self.pos();
            let op = match self.peek() {
                Tok::Sym(c @ ('*' | '/')) => *c,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.factor()?), pos);
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = if self.eat('(') {
                let e = self.nat()?;
                self.expect(')')?;
                e
            } else {
                self.nat()?
            };
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            (Tok::Num(s), p) => Ok(Expr::Num(parse_bigrat(&s).or_else(|e| err(p, e.to_string()))?)),
            (Tok::Ident(s), p) => Ok(Expr::Var(s, p)),
            (Tok::Sym('('), _) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            (Tok::Sym('-'), _) => Ok(Expr::Neg(Box::new(self.factor()?))),
            (t, p) => err(p, format!("expected an expression, found {t}")),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.expect(';')
    }
}

/// One right-hand side of an assignment.
#[derive(Clone, Debug, PartialEq)]
struct Assign {
    target: Target,
    expr: Expr,
    pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
enum Target {
    Scalar(String),
    Table(BasisElem),
    Subst(String),
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq)]
pub struct InputSpec {
    pub symbols: SymbolTable,
    /// Indices of `w1`, `w2` in `symbols`.
    pub frequencies: [usize; 2],
    /// Real Eulerian scalar, polynomial in `x1, y1, x2, y2`.
    pub f: Option<PhasePoly>,
    pub g1: Option<PhasePoly>,
    pub g2: Option<PhasePoly>,
    /// First-level coefficients given directly.
    pub table: Vec<(BasisElem, RatFn)>,
    pub mode: Option<Mode>,
    pub degree: Option<u32>,
    pub mu_degree: Option<u32>,
    pub subst: Vec<(String, BigRat)>,
}

impl InputSpec {
    pub fn parameters(&self) -> Vec<usize> {
        self.symbols.indices_of_kind(SymbolKind::Parameter)
    }
}

pub fn parse_mode(s: &str) -> Option<Mode> {
    match s {
        "state" => Some(Mode::State),
        "orbital" => Some(Mode::Orbital),
        "parametric" => Some(Mode::Parametric),
        _ => None,
    }
}

fn table_elem(name: &str) -> Option<fn(u32, u32) -> BasisElem> {
    match name {
        "E" => Some(BasisElem::E),
        "T1" => Some(BasisElem::Theta1),
        "T2" => Some(BasisElem::Theta2),
        _ => None,
    }
}

fn auto_kind(name: &str) -> SymbolKind {
    if name == "w1" || name == "w2" {
        SymbolKind::Frequency
    } else if name.strip_prefix("mu").is_some_and(|d| d.chars().all(|c| c.is_ascii_digit())) {
        SymbolKind::Parameter
    } else {
        SymbolKind::Coefficient
    }
}

/// Parses an input file.
pub fn parse_input(text: &str) -> Result<InputSpec, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, i: 0 };
    let mut declared: HashMap<SymbolKind, Vec<(String, Pos)>> = HashMap::new();
    let mut assigns = Vec::new();
    let (mut mode, mut degree, mut mu_degree) = (None, None, None);
    while *p.peek() != Tok::Eof {
        let (name, pos) = p.ident()?;
        match name.as_str() {
            "mode" => {
                let (m, mp) = p.ident()?;
                mode = Some(parse_mode(&m).map_or_else(|| err(mp, format!("unknown mode `{m}`")), Ok)?);
                p.end()?;
            }
            "degree" => {
                degree = Some(p.nat()?);
                p.end()?;
            }
            "mu_degree" => {
                mu_degree = Some(p.nat()?);
                p.end()?;
            }
            "frequencies" | "coefficients" | "parameters" => {
                let kind = match name.as_str() {
                    "frequencies" => SymbolKind::Frequency,
                    "coefficients" => SymbolKind::Coefficient,
                    _ => SymbolKind::Parameter,
                };
                let list = declared.entry(kind).or_default();
                loop {
                    list.push(p.ident()?);
                    if !p.eat(',') {
                        break;
                    }
                }
                p.end()?;
            }
            "subst" => {
                let (s, _) = p.ident()?;
                p.expect('=')?;
                let expr = p.expr()?;
                p.end()?;
                assigns.push(Assign { target: Target::Subst(s), expr, pos });
            }
            "f" | "g1" | "g2" => {
                p.expect('=')?;
                let expr = p.expr()?;
                p.end()?;
                assigns.push(Assign { target: Target::Scalar(name), expr, pos });
            }
            _ => {
                let Some(make) = table_elem(&name) else {
                    return err(pos, format!("unknown statement `{name}`"));
                };
                p.expect('[')?;
                let m = p.nat()?;
                p.expect(',')?;
                let n = p.nat()?;
                p.expect(']')?;
                p.expect('=')?;
                let expr = p.expr()?;
                p.end()?;
                assigns.push(Assign { target: Target::Table(make(m, n)), expr, pos });
            }
        }
    }
    let symbols = build_symbols(&declared, &assigns)?;
    let frequencies = {
        let f = symbols.indices_of_kind(SymbolKind::Frequency);
        [f[0], f[1]]
    };
    let mut spec = InputSpec {
        symbols,
        frequencies,
        f: None,
        g1: None,
        g2: None,
        table: Vec::new(),
        mode,
        degree,
        mu_degree,
        subst: Vec::new(),
    };
    for a in &assigns {
        let value = eval(&a.expr, &spec.symbols)?;
        match &a.target {
            Target::Scalar(name) => {
                let slot = match name.as_str() {
                    "f" => &mut spec.f,
                    "g1" => &mut spec.g1,
                    _ => &mut spec.g2,
                };
                if slot.is_some() {
                    return err(a.pos, format!("`{name}` is assigned twice"));
                }
                *slot = Some(value);
            }
            Target::Table(e) => {
                let c = constant_of(&value).map_or_else(|| err(a.pos, "table entries cannot involve x1, y1, x2, y2"), Ok)?;
                if spec.table.iter().any(|(k, _)| k == e) {
                    return err(a.pos, format!("{} is assigned twice", e.label()));
                }
                spec.table.push((*e, c));
            }
            Target::Subst(name) => {
                if spec.symbols.index_of(name).is_none() {
                    return err(a.pos, format!("unknown symbol `{name}`"));
                }
                let v = constant_of(&value)
                    .and_then(|c| c.as_constant())
                    .filter(|g| g.im == BigRat::default())
                    .map_or_else(|| err(a.pos, "substituted values must be rational numbers"), Ok)?;
                spec.subst.push((name.clone(), v.re));
            }
        }
    }
    if !spec.table.is_empty() && (spec.f.is_some() || spec.g1.is_some() || spec.g2.is_some()) {
        return err(assigns[0].pos, "give either f, g1, g2 or a coefficient table, not both");
    }
    Ok(spec)
}

fn build_symbols(declared: &HashMap<SymbolKind, Vec<(String, Pos)>>, assigns: &[Assign]) -> Result<SymbolTable, ParseError> {
    let mut used = Vec::new();
    for a in assigns {
        a.expr.idents(&mut used);
        if let Target::Subst(s) = &a.target {
            used.push((s.as_str(), a.pos));
        }
    }
    let strict = declared.contains_key(&SymbolKind::Coefficient) || declared.contains_key(&SymbolKind::Parameter);
    let mut names: HashMap<SymbolKind, Vec<String>> = HashMap::new();
    for (kind, list) in declared {
        for (name, pos) in list {
            if PHASE_VARS.contains(&name.as_str()) || name == "I" {
                return err(*pos, format!("`{name}` is reserved"));
            }
            if names.values().flatten().any(|n| n == name) {
                return err(*pos, format!("`{name}` is declared twice"));
            }
            names.entry(*kind).or_default().push(name.clone());
        }
    }
    names.entry(SymbolKind::Frequency).or_insert_with(|| vec!["w1".into(), "w2".into()]);
    if names[&SymbolKind::Frequency].len() != 2 {
        let pos = declared[&SymbolKind::Frequency][0].1;
        return err(pos, "exactly two frequencies are required");
    }
    for (name, pos) in used {
        if PHASE_VARS.contains(&name) || names.values().flatten().any(|n| n == name) {
            continue;
        }
        if name == "I" {
            return err(pos, "`I` is reserved");
        }
        let kind = auto_kind(name);
        if strict || kind == SymbolKind::Frequency {
            return err(pos, format!("unknown symbol `{name}`"));
        }
        names.entry(kind).or_default().push(name.to_string());
    }
    let mut table = SymbolTable::new();
    for kind in [SymbolKind::Frequency, SymbolKind::Coefficient, SymbolKind::Parameter] {
        for name in names.get(&kind).into_iter().flatten() {
            table.push(name, kind).expect("names are distinct");
        }
    }
    Ok(table)
}

fn constant_of(p: &PhasePoly) -> Option<RatFn> {
    if p.iter().all(|(e, _)| *e == [0; 4]) {
        Some(p.coeff(&[0; 4]))
    } else {
        None
    }
}

fn eval(e: &Expr, table: &SymbolTable) -> Result<PhasePoly, ParseError> {
    let nvars = table.len();
    Ok(match e {
        Expr::Num(r) => PhasePoly::constant(RatFn::constant(nvars, GaussRat::real(r.clone()))),
        Expr::Var(name, pos) => match PHASE_VARS.iter().position(|v| v == name) {
            Some(i) => PhasePoly::coordinate(nvars, i),
            None => match table.index_of(name) {
                Some(i) => PhasePoly::constant(RatFn::var(nvars, i)),
                None => return err(*pos, format!("unknown symbol `{name}`")),
            },
        },
        Expr::Neg(a) => eval(a, table)?.neg(),
        Expr::Pow(a, k) => {
            let base = eval(a, table)?;
            (0..*k).fold(PhasePoly::constant(RatFn::one(nvars)), |acc, _| acc.mul(&base))
        }
        Expr::Bin(op, a, b, pos) => {
            let (a, b) = (eval(a, table)?, eval(b, table)?);
            match op {
                '+' => a.add(&b),
                '-' => a.sub(&b),
                '*' => a.mul(&b),
                _ => {
                    let d = constant_of(&b).map_or_else(|| err(*pos, "division by a polynomial in x1, y1, x2, y2"), Ok)?;
                    let inv = d.inv().or_else(|_| err(*pos, "division by zero"))?;
                    a.scale(&inv)
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_scalar() {
        let spec = parse_input("f = a5*x1^2 + a9*y1^2;").unwrap();
        assert_eq!(spec.symbols.names(), ["w1", "w2", "a5", "a9"]);
        let f = spec.f.unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coeff(&[2, 0, 0, 0]), RatFn::var(4, 2));
    }

    #[test]
    fn parameters_are_recognized() {
        let spec = parse_input("mode parametric;\nf = mu1*(x1^2+y1^2);").unwrap();
        assert_eq!(spec.parameters(), vec![2]);
        assert_eq!(spec.mode, Some(Mode::Parametric));
    }

    #[test]
    fn negative_exponent_is_rejected() {
        let e = parse_input("f = x1^(-1);").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 9 });
        let e = parse_input("f = x1^-1;").unwrap_err();
        assert_eq!(e.msg, "negative exponent");
    }

    #[test]
    fn unknown_symbol_with_declarations() {
        let e = parse_input("coefficients a;\nf = a*x1^2 + b*y1^2;").unwrap_err();
        assert_eq!((e.pos, e.msg.as_str()), (Pos { line: 2, col: 14 }, "unknown symbol `b`"));
    }

    #[test]
    fn table_and_subst() {
        let spec = parse_input("E[1,0] = 1/2; T1[0,1] = c;\nsubst w1 = 3/2; subst c = -2;").unwrap();
        assert_eq!(spec.table.len(), 2);
        assert_eq!(spec.table[0], (BasisElem::E(1, 0), RatFn::from_frac(3, 1, 2)));
        assert_eq!(spec.subst[1].0, "c");
    }

    #[test]
    fn division_by_phase_variable_is_rejected() {
        assert!(parse_input("f = x1/x2;").is_err());
        assert!(parse_input("f = x1/(2*w1);").is_ok());
    }
}
