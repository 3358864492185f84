//! Executes an input file: substitution, first level (or a direct table), then the
//! requested level of the normal-form pipeline.

use nfc_algebra::{BigRat, GaussRat, RatFn, SymbolKind, SymbolTable};
use nfc_core::phase::is_resonant;
use nfc_core::{
    first_level, normalize, parametric_first_level, real_to_complex, BasisElem, ExtNat, Frequencies, LVec, LevelTag, Mode, NfcError,
    NormalFormResult, PhasePoly, Truncation,
};

use crate::error::CliError;
use crate::input::InputSpec;
use crate::report::{mode_name, Report};

pub const DEFAULT_DEGREE: u32 = 3;
pub const DEFAULT_MU_DEGREE: u32 = 2;

/// Command-line overrides; unset fields fall back to the input file.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOptions {
    pub mode: Option<Mode>,
    pub level: LevelTag,
    pub degree: Option<u32>,
    pub mu_degree: Option<u32>,
    pub subst: Vec<(String, BigRat)>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { mode: None, level: LevelTag::Infinite, degree: None, mu_degree: None, subst: Vec::new() }
    }
}

/// A first-level field ready for the pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct Prepared {
    pub symbols: SymbolTable,
    pub mode: Mode,
    pub v1: LVec,
    pub trunc: Truncation,
}

fn substitution(spec: &InputSpec, opts: &RunOptions) -> Result<Vec<Option<GaussRat>>, CliError> {
    let mut values = vec![None; spec.symbols.len()];
    for (name, v) in spec.subst.iter().chain(&opts.subst) {
        let i = spec.symbols.index_of(name).ok_or_else(|| CliError::Input(format!("cannot substitute unknown symbol `{name}`")))?;
        if spec.symbols.kind(i) == SymbolKind::Parameter {
            return Err(CliError::Input(format!("cannot substitute parameter `{name}`")));
        }
        values[i] = Some(GaussRat::real(v.clone()));
    }
    Ok(values)
}

fn subst_value(c: &RatFn, values: &[Option<GaussRat>]) -> Result<RatFn, CliError> {
    if values.iter().all(Option::is_none) {
        return Ok(c.clone());
    }
    c.substitute(values).map_err(|e| CliError::Input(format!("substitution: {e}")))
}

fn subst_poly(p: &PhasePoly, values: &[Option<GaussRat>]) -> Result<PhasePoly, CliError> {
    let mut out = PhasePoly::zero(p.nvars());
    for (e, c) in p.iter() {
        out.add_term(*e, &subst_value(c, values)?);
    }
    Ok(out)
}

/// Maps a torus-invariant scalar onto `family(m, n)` coefficients.
fn invariant_terms(p: &PhasePoly, n: u32, family: fn(u32, u32) -> BasisElem, out: &mut LVec) -> Result<(), CliError> {
    let z = real_to_complex(p, 2 * n + 2);
    for (e, c) in z.iter() {
        if !is_resonant(e) {
            return Err(CliError::Input(
                "rotational terms are only accepted with torus-invariant f, g1, g2; give first-level coefficients as a table instead".into(),
            ));
        }
        if e[0] + e[2] <= n {
            out.add_term(family(e[0], e[2]), c);
        }
    }
    Ok(())
}

pub fn prepare(spec: &InputSpec, opts: &RunOptions) -> Result<Prepared, CliError> {
    let params = spec.parameters();
    let mode = opts.mode.or(spec.mode).unwrap_or(if params.is_empty() { Mode::State } else { Mode::Parametric });
    if mode != Mode::Parametric && !params.is_empty() {
        return Err(CliError::Input(format!("parameters require parametric mode, mode is {}", mode_name(mode))));
    }
    let n = opts.degree.or(spec.degree).unwrap_or(DEFAULT_DEGREE);
    if n == 0 {
        return Err(CliError::Input("degree must be at least 1".into()));
    }
    let m = if mode == Mode::Parametric { opts.mu_degree.or(spec.mu_degree).unwrap_or(DEFAULT_MU_DEGREE) } else { 0 };
    let values = substitution(spec, opts)?;
    let nvars = spec.symbols.len();
    let [i1, i2] = spec.frequencies;
    let freq = Frequencies::new(subst_value(&RatFn::var(nvars, i1), &values)?, subst_value(&RatFn::var(nvars, i2), &values)?);
    let g_given = spec.g1.iter().chain(&spec.g2).any(|g| !g.is_zero());
    let f = spec.f.as_ref().map(|f| subst_poly(f, &values)).transpose()?;
    let v1 = if !spec.table.is_empty() {
        if spec.f.is_some() || g_given {
            return Err(CliError::Input("give either expressions or a coefficient table, not both".into()));
        }
        let mut v = freq.linear_part();
        for (e, c) in &spec.table {
            v.add_term(*e, &subst_value(c, &values)?);
        }
        v
    } else if g_given {
        let mut v = freq.linear_part();
        if let Some(f) = &f {
            invariant_terms(f, n, BasisElem::E, &mut v)?;
        }
        for (g, fam) in [(&spec.g1, BasisElem::Theta1 as fn(u32, u32) -> BasisElem), (&spec.g2, BasisElem::Theta2)] {
            if let Some(g) = g {
                invariant_terms(&subst_poly(g, &values)?, n, fam, &mut v)?;
            }
        }
        v
    } else if let Some(f) = &f {
        let out = if mode == Mode::Parametric {
            parametric_first_level(f, n, &params, m, &freq)
        } else {
            first_level(f, n, &freq)
        };
        out.map_err(|e| CliError::engine("first level", e))?.normal_form
    } else {
        freq.linear_part()
    };
    let trunc = if mode == Mode::Parametric { Truncation::parametric(n, m, params) } else { Truncation::new(n) };
    Ok(Prepared { symbols: spec.symbols.clone(), mode, v1, trunc })
}

fn context(mode: Mode, level: LevelTag, e: NfcError) -> CliError {
    CliError::engine(format!("{} {level} level", mode_name(mode)), e)
}

pub fn run_result(spec: &InputSpec, opts: &RunOptions) -> Result<(Prepared, NormalFormResult), CliError> {
    let p = prepare(spec, opts)?;
    let res = normalize(p.mode, opts.level, &p.v1, p.trunc.clone()).map_err(|e| context(p.mode, opts.level, e))?;
    Ok((p, res))
}

pub fn run(spec: &InputSpec, opts: &RunOptions) -> Result<Report, CliError> {
    let (p, res) = run_result(spec, opts)?;
    Ok(Report::from_result(&res, &p.symbols))
}

/// First-level report whose classification also carries `r`, `q` and the rank data
/// whenever `s` is resolved.
pub fn classify(spec: &InputSpec, opts: &RunOptions) -> Result<Report, CliError> {
    let p = prepare(spec, opts)?;
    let mut first = normalize(p.mode, LevelTag::First, &p.v1, p.trunc.clone()).map_err(|e| context(p.mode, LevelTag::First, e))?;
    if matches!(first.classification.s, ExtNat::Finite(_)) {
        let r = normalize(p.mode, LevelTag::RPlus1, &p.v1, p.trunc.clone()).map_err(|e| context(p.mode, LevelTag::RPlus1, e))?;
        first.classification = r.classification;
    }
    Ok(Report::from_result(&first, &p.symbols))
}
