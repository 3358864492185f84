//! The `nfc-1` report: a serializable snapshot of a normal-form run.

use std::collections::BTreeMap;

use nfc_algebra::{parse_bigrat, BigRat, Exps, GaussRat, Mono, Poly, RatFn, SymbolKind, SymbolTable};
use nfc_core::{BasisElem, ExtNat, Mode, NormalFormResult};
use serde::{Deserialize, Serialize};

use crate::emit::value_text;
use crate::error::CliError;

pub const FORMAT: &str = "nfc-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub format: String,
    pub mode: String,
    pub level: String,
    pub degree: u32,
    pub mu_degree: u32,
    pub symbols: Vec<SymbolEntry>,
    pub classification: ClassificationEntry,
    /// Name of the survivor family the support was checked against.
    pub family: Option<String>,
    pub terms: Vec<Term>,
    pub support_holds: bool,
    pub violations: Vec<String>,
    pub steps: Vec<StepEntry>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolEntry {
    pub name: String,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub s: String,
    pub p: String,
    pub r: String,
    pub q: String,
    pub s1: String,
    pub p1: String,
    pub s2: String,
    pub p2: String,
    pub alpha: Option<usize>,
    pub u: BTreeMap<u32, usize>,
    pub generic_gate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub basis: String,
    pub m: u32,
    pub n: u32,
    /// Readable form of `coeff`; informational, ignored when reading.
    pub text: String,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coeff {
    pub num: Vec<Monomial>,
    pub den: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: Vec<u16>,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEntry {
    pub stage: String,
    pub grade: u32,
    pub eliminated: Vec<String>,
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::State => "state",
        Mode::Orbital => "orbital",
        Mode::Parametric => "parametric",
    }
}

fn kind_name(kind: SymbolKind) -> &'static str {
    match kind {
        SymbolKind::Frequency => "frequency",
        SymbolKind::Coefficient => "coefficient",
        SymbolKind::Parameter => "parameter",
    }
}

fn kind_from_name(name: &str) -> Option<SymbolKind> {
    match name {
        "frequency" => Some(SymbolKind::Frequency),
        "coefficient" => Some(SymbolKind::Coefficient),
        "parameter" => Some(SymbolKind::Parameter),
        _ => None,
    }
}

fn rat_string(r: &BigRat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn poly_entry(p: &Poly) -> Vec<Monomial> {
    p.terms()
        .iter()
        .map(|(m, c)| Monomial { exps: m.exps().to_vec(), re: rat_string(&c.re), im: rat_string(&c.im) })
        .collect()
}

fn poly_from_entry(nvars: usize, entry: &[Monomial]) -> Result<Poly, CliError> {
    let bad = |e: nfc_algebra::AlgebraError| CliError::Report(e.to_string());
    let mut terms = Vec::with_capacity(entry.len());
    for m in entry {
        if m.exps.len() != nvars {
            return Err(CliError::Report(format!("monomial has {} exponents, expected {nvars}", m.exps.len())));
        }
        let c = GaussRat::new(parse_bigrat(&m.re).map_err(bad)?, parse_bigrat(&m.im).map_err(bad)?);
        terms.push((Mono::new(Exps::from_slice(&m.exps)), c));
    }
    Ok(Poly::from_terms(nvars, terms))
}

impl Coeff {
    pub fn from_ratfn(c: &RatFn) -> Self {
        Coeff { num: poly_entry(c.num()), den: poly_entry(c.den()) }
    }

    pub fn to_ratfn(&self, nvars: usize) -> Result<RatFn, CliError> {
        let num = poly_from_entry(nvars, &self.num)?;
        let den = poly_from_entry(nvars, &self.den)?;
        RatFn::new(num, den).map_err(|e| CliError::Report(e.to_string()))
    }
}

impl Term {
    pub fn elem(&self) -> Result<BasisElem, CliError> {
        match self.basis.as_str() {
            "E" => Ok(BasisElem::E(self.m, self.n)),
            "T1" => Ok(BasisElem::Theta1(self.m, self.n)),
            "T2" => Ok(BasisElem::Theta2(self.m, self.n)),
            other => Err(CliError::Report(format!("unknown basis `{other}`"))),
        }
    }
}

pub fn basis_name(e: BasisElem) -> &'static str {
    match e {
        BasisElem::E(..) => "E",
        BasisElem::Theta1(..) => "T1",
        BasisElem::Theta2(..) => "T2",
    }
}

fn ext(x: ExtNat) -> String {
    x.to_string()
}

impl Report {
    pub fn from_result(res: &NormalFormResult, symbols: &SymbolTable) -> Self {
        let c = &res.classification;
        let classification = ClassificationEntry {
            s: ext(c.s),
            p: ext(c.p),
            r: ext(c.r),
            q: ext(c.q),
            s1: ext(c.s1),
            p1: ext(c.p1),
            s2: ext(c.s2),
            p2: ext(c.p2),
            alpha: c.alpha,
            u: c.u_table.clone(),
            generic_gate: c.generic_gate,
        };
        let terms = res
            .field
            .iter()
            .map(|(e, c)| {
                let (m, n) = e.indices();
                Term { basis: basis_name(*e).to_string(), m, n, text: value_text(c, symbols), coeff: Coeff::from_ratfn(c) }
            })
            .collect();
        let steps = res
            .steps
            .iter()
            .map(|s| StepEntry { stage: s.stage.clone(), grade: s.grade, eliminated: s.eliminated.iter().map(|k| k.label()).collect() })
            .collect();
        Report {
            format: FORMAT.to_string(),
            mode: mode_name(res.mode).to_string(),
            level: res.level.to_string(),
            degree: res.truncation.n,
            mu_degree: res.truncation.m,
            symbols: symbols
                .names()
                .iter()
                .enumerate()
                .map(|(i, n)| SymbolEntry { name: n.clone(), kind: kind_name(symbols.kind(i)).to_string() })
                .collect(),
            classification,
            family: res.display.map(|d| d.name()),
            terms,
            support_holds: res.support_holds(),
            violations: res.support_violations.iter().map(|k| k.label()).collect(),
            steps,
            caveats: res.caveats.clone(),
        }
    }

    pub fn symbol_table(&self) -> Result<SymbolTable, CliError> {
        let mut t = SymbolTable::new();
        for s in &self.symbols {
            let kind = kind_from_name(&s.kind).ok_or_else(|| CliError::Report(format!("unknown symbol kind `{}`", s.kind)))?;
            t.push(&s.name, kind).map_err(|e| CliError::Report(e.to_string()))?;
        }
        Ok(t)
    }

    /// Normal-form coefficients as exact values.
    pub fn coefficients(&self) -> Result<Vec<(BasisElem, RatFn)>, CliError> {
        let nvars = self.symbols.len();
        self.terms.iter().map(|t| Ok((t.elem()?, t.coeff.to_ratfn(nvars)?))).collect()
    }

    pub fn coefficient(&self, e: BasisElem) -> Result<RatFn, CliError> {
        Ok(self.coefficients()?.into_iter().find(|(x, _)| *x == e).map(|(_, c)| c).unwrap_or_else(|| RatFn::zero(self.symbols.len())))
    }

    /// Only the linear part survives.
    pub fn is_linear(&self) -> bool {
        self.terms.iter().all(|t| t.m == 0 && t.n == 0 && t.basis != "E")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let r: Report = serde_json::from_str(text).map_err(|e| CliError::Report(e.to_string()))?;
        if r.format != FORMAT {
            return Err(CliError::Report(format!("unsupported format `{}`", r.format)));
        }
        Ok(r)
    }
}
