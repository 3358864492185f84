//! Text, JSON and LaTeX renderings of a report. Every emitter is a pure function
//! of the report, so output is byte-for-byte deterministic.

use std::fmt::Write;

use nfc_algebra::{BigRat, Poly, RatFn, SymbolTable};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::CliError;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "json" => Some(Format::Json),
            "latex" => Some(Format::Latex),
            _ => None,
        }
    }
}

pub fn emit(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => emit_text(report),
        Format::Json => Ok(report.to_json() + "\n"),
        Format::Latex => emit_latex(report),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Text,
    Latex,
}

/// `(re, im)` integer coefficients of a primitive polynomial.
type IntPoly = Vec<(Vec<u16>, BigInt, BigInt)>;

/// Splits `p` as `content * primitive` with a positive rational content.
fn primitive(p: &Poly) -> (BigRat, IntPoly) {
    let parts = || p.terms().iter().flat_map(|(_, c)| [&c.re, &c.im]).filter(|x| !x.is_zero());
    let g = parts().fold(BigInt::zero(), |g, x| g.gcd(x.numer()));
    let l = parts().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    if g.is_zero() {
        return (BigRat::zero(), Vec::new());
    }
    let content = BigRat::new(g, l);
    let scale = |x: &BigRat| (x / &content).to_integer();
    let terms = p.terms().iter().map(|(m, c)| (m.exps().to_vec(), scale(&c.re), scale(&c.im))).collect();
    (content, terms)
}

fn symbol(name: &str, style: Style) -> String {
    if style == Style::Text {
        return name.to_string();
    }
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (stem, digits) = name.split_at(split);
    let stem = match stem {
        "w" => "\\omega",
        "mu" => "\\mu",
        s => s,
    };
    if digits.is_empty() {
        stem.to_string()
    } else {
        format!("{stem}_{{{digits}}}")
    }
}

fn monomial(exps: &[u16], table: &SymbolTable, style: Style) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let s = symbol(table.name(i), style);
            match (e, style) {
                (1, _) => s,
                (_, Style::Text) => format!("{s}^{e}"),
                (_, Style::Latex) => format!("{s}^{{{e}}}"),
            }
        })
        .collect();
    parts.join(if style == Style::Text { "*" } else { " " })
}

/// Renders an integer Gaussian polynomial. The first term carries its own sign.
fn render_poly(p: &IntPoly, table: &SymbolTable, style: Style) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let (i, mul) = match style {
        Style::Text => ("*I", "*"),
        Style::Latex => ("i", " "),
    };
    let mut out = String::new();
    for (idx, (exps, re, im)) in p.iter().enumerate() {
        let mono = monomial(exps, table, style);
        let (neg, body) = if im.is_zero() {
            (re.is_negative(), re.abs().to_string())
        } else if re.is_zero() {
            let mag = im.abs();
            (im.is_negative(), if mag.is_one() { i.trim_start_matches('*').to_string() } else { format!("{mag}{i}") })
        } else {
            let sign = if im.is_negative() { '-' } else { '+' };
            (false, format!("({re}{sign}{}{i})", im.abs()))
        };
        if neg {
            out.push('-');
        } else if idx > 0 {
            out.push('+');
        }
        match (body == "1", mono.is_empty()) {
            (true, false) => out.push_str(&mono),
            (_, true) => out.push_str(&body),
            _ => {
                out.push_str(&body);
                out.push_str(mul);
                out.push_str(&mono);
            }
        }
    }
    out
}

fn scale_int(p: &IntPoly, k: &BigInt) -> IntPoly {
    p.iter().map(|(e, re, im)| (e.clone(), re * k, im * k)).collect()
}

/// Numerator and denominator with integer coefficients, common factors split off.
fn split_value(c: &RatFn) -> (IntPoly, IntPoly) {
    let (cn, num) = primitive(c.num());
    let (cd, den) = primitive(c.den());
    if num.is_empty() {
        return (Vec::new(), vec![(vec![0; c.nvars()], BigInt::one(), BigInt::zero())]);
    }
    let k = cn / cd;
    (scale_int(&num, k.numer()), scale_int(&den, k.denom()))
}

fn is_one(p: &IntPoly) -> bool {
    matches!(p.as_slice(), [(e, re, im)] if e.iter().all(|&x| x == 0) && re.is_one() && im.is_zero())
}

/// Compact value, e.g. `(a5+a9)/2`.
pub fn value_text(c: &RatFn, table: &SymbolTable) -> String {
    let (num, den) = split_value(c);
    let top = render_poly(&num, table, Style::Text);
    if is_one(&den) {
        return top;
    }
    let bottom = render_poly(&den, table, Style::Text);
    let top = if num.len() > 1 { format!("({top})") } else { top };
    let bottom = if den.len() > 1 || bottom.contains(['*', '^']) { format!("({bottom})") } else { bottom };
    format!("{top}/{bottom}")
}

pub fn value_latex(c: &RatFn, table: &SymbolTable) -> String {
    let (num, den) = split_value(c);
    let top = render_poly(&num, table, Style::Latex);
    if is_one(&den) {
        return top;
    }
    format!("\\frac{{{top}}}{{{}}}", render_poly(&den, table, Style::Latex))
}

fn classification_line(r: &Report) -> String {
    let c = &r.classification;
    let mut line = format!("s={}, p={}, r={}, q={}, s1={}, p1={}, s2={}, p2={}", c.s, c.p, c.r, c.q, c.s1, c.p1, c.s2, c.p2);
    if let Some(a) = c.alpha {
        let _ = write!(line, ", alpha={a}");
    }
    if !c.u.is_empty() {
        let u: Vec<String> = c.u.iter().map(|(l, u)| format!("{l}:{u}")).collect();
        let _ = write!(line, ", u={{{}}}", u.join(", "));
    }
    let _ = write!(line, ", generic gate {}", if c.generic_gate { "holds" } else { "fails" });
    line
}

fn label(basis: &str, m: u32, n: u32) -> String {
    format!("{basis}[{m},{n}]")
}

pub fn emit_text(r: &Report) -> Result<String, CliError> {
    let table = r.symbol_table()?;
    let mut out = String::new();
    let _ = writeln!(out, "{} normal form", r.format);
    let _ = writeln!(out, "mode: {}", r.mode);
    let _ = writeln!(out, "level: {}", r.level);
    let _ = writeln!(out, "truncation: N={}, M={}", r.degree, r.mu_degree);
    let names: Vec<String> = r.symbols.iter().map(|s| format!("{} ({})", s.name, s.kind)).collect();
    let _ = writeln!(out, "symbols: {}", names.join(", "));
    let _ = writeln!(out, "classification: {}", classification_line(r));
    if let Some(f) = &r.family {
        let _ = writeln!(out, "family: {f}");
        let _ = writeln!(out, "support: {}", if r.support_holds { "inside family" } else { "outside family" });
    }
    if !r.violations.is_empty() {
        let _ = writeln!(out, "outside family: {}", r.violations.join(", "));
    }
    if r.is_linear() && r.level == "infinite" {
        let _ = writeln!(out, "v0; infinite level");
    }
    let _ = writeln!(out, "normal form:");
    for (t, c) in r.terms.iter().zip(r.coefficients()?) {
        let _ = writeln!(out, "  {} = {}", label(&t.basis, t.m, t.n), value_text(&c.1, &table));
    }
    let _ = writeln!(out, "generator steps: {}", r.steps.len());
    for s in &r.steps {
        let _ = writeln!(out, "  {} grade {}: {}", s.stage, s.grade, s.eliminated.join(", "));
    }
    if !r.caveats.is_empty() {
        let _ = writeln!(out, "caveats:");
        for c in &r.caveats {
            let _ = writeln!(out, "  - {c}");
        }
    }
    Ok(out)
}

fn latex_label(basis: &str, m: u32, n: u32) -> String {
    match basis {
        "E" => format!("b_{{{m},{n}}}"),
        "T1" => format!("c^{{(1)}}_{{{m},{n}}}"),
        _ => format!("c^{{(2)}}_{{{m},{n}}}"),
    }
}

pub fn emit_latex(r: &Report) -> Result<String, CliError> {
    let table = r.symbol_table()?;
    let mut out = String::new();
    let _ = writeln!(out, "% {} normal form, mode {}, level {}, N={}, M={}", r.format, r.mode, r.level, r.degree, r.mu_degree);
    if let Some(f) = &r.family {
        let _ = writeln!(out, "% family: {f}");
    }
    let _ = writeln!(out, "\\begin{{align*}}");
    let coeffs = r.coefficients()?;
    let rows: Vec<String> =
        r.terms.iter().zip(&coeffs).map(|(t, c)| format!("{} &= {}", latex_label(&t.basis, t.m, t.n), value_latex(&c.1, &table))).collect();
    let _ = writeln!(out, "{}", rows.join(" \\\\\n"));
    let _ = writeln!(out, "\\end{{align*}}");
    Ok(out)
}

