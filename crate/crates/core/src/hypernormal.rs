//! Hypernormalization pipelines: state transformations only, state transformations
//! with time rescaling (orbital), and parameter-dependent (parametric) families.
//!
//! Every pipeline is a list of engine stages. The parametric pipeline first runs the
//! orbital stages with parameter-free generators on the whole field, then repeats the
//! stage list with generators carrying a parameter monomial, so its parameter-free
//! part is exactly the orbital normal form of the parameter-free input.

use std::collections::BTreeSet;
use std::fmt;

use nfc_algebra::RatFn;

use crate::classification::{
    alpha_rank, detect_r_q, detect_s_p, detect_si_pi, generic_gate, grade_coeffs, u_for_level, Classification, ExtNat,
    Mode,
};
use crate::displays::Display;
use crate::engine::{run_stage, Field, GeneratorStep, Key, MuGens, Stage, StageGrading, Truncation};
use crate::lie::{BasisElem, LVec};
use crate::NfcError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LevelTag {
    First,
    SPlus1,
    RPlus1,
    Infinite,
}

impl fmt::Display for LevelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LevelTag::First => "first",
            LevelTag::SPlus1 => "s+1",
            LevelTag::RPlus1 => "r+1",
            LevelTag::Infinite => "infinite",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormResult {
    pub mode: Mode,
    pub level: LevelTag,
    pub truncation: Truncation,
    /// The first-level input the stages started from.
    pub input: Field,
    /// The normal form with parameter monomials pulled out of the coefficients.
    pub terms: Field,
    /// The normal form as an algebra element.
    pub field: LVec,
    pub classification: Classification,
    pub steps: Vec<GeneratorStep>,
    /// The closed-form survivor family the support was checked against.
    pub display: Option<Display>,
    /// Support terms outside `display`; empty when the check holds.
    pub support_violations: Vec<Key>,
    pub caveats: Vec<String>,
}

impl NormalFormResult {
    pub fn survivors(&self) -> Vec<Key> {
        self.terms.support()
    }

    /// Support with the parameter monomials forgotten.
    pub fn survivor_elems(&self) -> BTreeSet<BasisElem> {
        self.terms.keys().map(|k| k.elem).collect()
    }

    pub fn support_holds(&self) -> bool {
        self.support_violations.is_empty()
    }

    /// Coefficient of `elem` at parameter monomial zero.
    pub fn coeff(&self, elem: BasisElem) -> RatFn {
        self.terms.coeff(&Key::new(elem, self.truncation.zero_mu()))
    }
}

/// Stage lists are assembled from the stratum found on the parameter-free part.
struct Plan {
    mode: Mode,
    trunc: Truncation,
    input: Field,
    base: LVec,
    cls: Classification,
    caveats: Vec<String>,
}

impl Plan {
    fn new(mode: Mode, v1: &LVec, trunc: Truncation) -> Result<Self, NfcError> {
        if mode != Mode::Parametric && !trunc.params.is_empty() {
            return Err(NfcError::InvalidInput("parameters are only allowed in parametric mode".into()));
        }
        let input = Field::split(v1, &trunc)?;
        let base = input.slice(&trunc.zero_mu());
        let n = trunc.n;
        let (s, p) = detect_s_p(&base, n);
        let (s1, p1) = detect_si_pi(&base, 1, n);
        let (s2, p2) = detect_si_pi(&base, 2, n);
        let mut cls = Classification::unresolved(n);
        (cls.s, cls.p, cls.s1, cls.p1, cls.s2, cls.p2) = (s, p, s1, p1, s2, p2);
        let b = |m, k| base.coeff(&BasisElem::E(m, k));
        cls.generic_gate = generic_gate(&b(1, 0), &b(0, 1), &b(1, 1), &b(2, 0), &b(0, 2));
        let mut caveats = Vec::new();
        if !s.is_finite() {
            caveats.push(format!("no Eulerian term up to index sum {n}; s treated as absent"));
        }
        Ok(Plan { mode, trunc, input, base, cls, caveats })
    }

    fn time(&self) -> bool {
        self.mode != Mode::State
    }

    fn require_s(&self) -> Result<(u32, u32), NfcError> {
        match (self.cls.s, self.cls.p) {
            (ExtNat::Finite(s), ExtNat::Finite(p)) => Ok((s, p)),
            _ => Err(NfcError::InvalidInput(format!("s is unresolved up to index sum {}", self.trunc.n))),
        }
    }

    fn stage_s_plus_1(&self, s: u32) -> Stage {
        Stage::new(format!("{} s+1", self.label()), StageGrading::uniform(s, 0), Some(s + 1), self.time())
    }

    fn stages_r(&self, s: u32, r: u32) -> [Stage; 2] {
        let offset = if self.time() { r + s } else { r };
        [
            Stage::new(format!("{} r+1", self.label()), StageGrading::uniform(offset, 0), Some(r + 1), self.time()),
            Stage::new(format!("{} infinite", self.label()), StageGrading::uniform(offset, 0), None, self.time()),
        ]
    }

    fn label(&self) -> &'static str {
        match self.mode {
            Mode::State => "state",
            Mode::Orbital | Mode::Parametric => "orbital",
        }
    }

    /// Parameter-dependent counterpart of a parameter-free stage.
    fn lifted(stage: &Stage, mu_weight: u32) -> Stage {
        let label = stage.label.replacen("orbital", "parametric", 1);
        let grading = StageGrading { mu_weight, ..stage.grading };
        Stage::new(label, grading, stage.level, true).with_mu(MuGens::Dependent)
    }

    fn run(&self, stages: &[Stage]) -> Result<(Field, Vec<GeneratorStep>), NfcError> {
        let mut field = self.input.clone();
        let mut steps = Vec::new();
        for stage in stages {
            run_stage(&mut field, stage, &self.trunc, &mut steps)?;
        }
        Ok((field, steps))
    }

    /// Detects `r, q` on the field after the s+1 stage and fills the rank data.
    fn detect_r(&mut self, after: &Field, s: u32) {
        let n = self.trunc.n;
        let at_zero = after.slice(&self.trunc.zero_mu());
        let (r, q) = detect_r_q(&at_zero, s, n);
        self.cls.r = r;
        self.cls.q = q;
        let (ExtNat::Finite(r), ExtNat::Finite(q), ExtNat::Finite(p)) = (r, q, self.cls.p) else {
            self.caveats.push(format!("no Eulerian term above grade {s} up to index sum {n}; r treated as absent"));
            return;
        };
        let nvars = self.input.nvars();
        let b_s = grade_coeffs(&at_zero, s);
        let b_r = grade_coeffs(&at_zero, r);
        self.cls.alpha = Some(alpha_rank(&b_s, &b_r, nvars));
        for l in 0..=n.saturating_sub(r) {
            if let Ok(u) = u_for_level(&b_s, &b_r, p, q, l, nvars) {
                self.cls.u_table.insert(l, u);
            }
        }
    }

    fn finish(self, level: LevelTag, terms: Field, steps: Vec<GeneratorStep>, display: Option<Display>) -> NormalFormResult {
        let mut caveats = self.caveats;
        let support_violations = match display {
            Some(d) => d.violations(&terms),
            None => {
                caveats.push("no closed survivor family for this stratum; support not checked".into());
                Vec::new()
            }
        };
        if !support_violations.is_empty() {
            let labels: Vec<String> = support_violations.iter().map(Key::label).collect();
            caveats.push(format!("terms outside the expected family: {}", labels.join(", ")));
        }
        NormalFormResult {
            mode: self.mode,
            level,
            field: terms.join(&self.trunc),
            truncation: self.trunc,
            input: self.input,
            terms,
            classification: self.cls,
            steps,
            display,
            support_violations,
            caveats,
        }
    }

    fn s_plus_1(mut self) -> Result<NormalFormResult, NfcError> {
        let (s, p) = self.require_s()?;
        let a = self.stage_s_plus_1(s);
        let mut stages = vec![a.clone()];
        if self.mode == Mode::Parametric {
            stages.push(Self::lifted(&a, s + 1));
        }
        let (field, steps) = self.run(&stages)?;
        let (free, _) = self.run(&[a])?;
        self.detect_r(&free, s);
        let display = match self.mode {
            Mode::State => Display::StateSPlus1 { s, p },
            Mode::Orbital => Display::OrbitalSPlus1 { s, p },
            Mode::Parametric => Display::ParametricSPlus1 { s, p },
        };
        Ok(self.finish(LevelTag::SPlus1, field, steps, Some(display)))
    }

    fn r_plus_1(mut self) -> Result<NormalFormResult, NfcError> {
        let (s, _) = self.require_s()?;
        let a = self.stage_s_plus_1(s);
        let (free, _) = self.run(std::slice::from_ref(&a))?;
        self.detect_r(&free, s);
        let ExtNat::Finite(r) = self.cls.r else {
            return Err(NfcError::InvalidInput(format!("r is unresolved up to index sum {}", self.trunc.n)));
        };
        let [b, _] = self.stages_r(s, r);
        let mut stages = match self.mode {
            Mode::State => vec![a, b.clone()],
            Mode::Orbital | Mode::Parametric => vec![b.clone()],
        };
        if self.mode == Mode::Parametric {
            stages.push(Self::lifted(&b, r + 1));
        }
        let (field, steps) = self.run(&stages)?;
        Ok(self.finish(LevelTag::RPlus1, field, steps, None))
    }

    fn infinite(mut self) -> Result<NormalFormResult, NfcError> {
        let n = self.trunc.n;
        let (free_stages, lifted): (Vec<Stage>, Vec<Stage>) = match (self.cls.s, self.cls.p) {
            (ExtNat::Finite(s), ExtNat::Finite(_)) => {
                let a = self.stage_s_plus_1(s);
                let (free, _) = self.run(std::slice::from_ref(&a))?;
                self.detect_r(&free, s);
                match self.cls.r {
                    ExtNat::Finite(r) => {
                        let [b, c] = self.stages_r(s, r);
                        let lifted = vec![Self::lifted(&a, s + 1), Self::lifted(&b, r + 1), Self::lifted(&c, r + 1)];
                        (vec![a, b, c], lifted)
                    }
                    ExtNat::UnresolvedBeyond(_) => {
                        let c = Stage::new(
                            format!("{} infinite", self.label()),
                            StageGrading::uniform(s, 0),
                            None,
                            self.time(),
                        );
                        let lifted = vec![Self::lifted(&c, s + 1)];
                        (vec![a, c], lifted)
                    }
                }
            }
            _ => self.rotational_stages()?,
        };
        let mut stages = free_stages;
        if self.mode == Mode::Parametric {
            stages.extend(lifted);
        }
        let (field, steps) = self.run(&stages)?;
        let display = self.infinite_display(&field);
        if let Some(alpha) = self.cls.alpha {
            if let (ExtNat::Finite(s), ExtNat::Finite(r)) = (self.cls.s, self.cls.r) {
                if alpha < (r + s + 1) as usize {
                    self.caveats.push(format!(
                        "rank of the grade r+s map is {alpha} < r+s+1; result is the full reduction up to index sum {n}"
                    ));
                }
            }
        }
        Ok(self.finish(LevelTag::Infinite, field, steps, display))
    }

    /// Stages when no Eulerian term is present at parameter zero.
    fn rotational_stages(&mut self) -> Result<(Vec<Stage>, Vec<Stage>), NfcError> {
        let label = self.label();
        match self.mode {
            Mode::State => {
                let grading = match (self.cls.s1, self.cls.s2) {
                    (ExtNat::Finite(s1), _) => StageGrading { theta: [0, s1], mu_weight: 0 },
                    (_, ExtNat::Finite(_)) => StageGrading::uniform(0, 0),
                    _ => return Ok((Vec::new(), Vec::new())),
                };
                Ok((vec![Stage::new(format!("{label} infinite"), grading, None, false)], Vec::new()))
            }
            Mode::Orbital | Mode::Parametric => {
                let free = Stage::new(format!("{label} infinite"), StageGrading::uniform(0, 0), None, true);
                let (after, _) = self.run(std::slice::from_ref(&free))?;
                let (s2, _) = detect_si_pi(&after.slice(&self.trunc.zero_mu()), 2, self.trunc.n);
                let grading = match s2 {
                    ExtNat::Finite(s2) => StageGrading::uniform(0, s2 + 1),
                    ExtNat::UnresolvedBeyond(_) => StageGrading { theta: [0, 1], mu_weight: 1 },
                };
                let lifted = Stage::new("parametric infinite", grading, None, true).with_mu(MuGens::Dependent);
                Ok((vec![free], vec![lifted]))
            }
        }
    }

    fn infinite_display(&self, field: &Field) -> Option<Display> {
        let cls = &self.cls;
        let b = |m, k| self.base.coeff(&BasisElem::E(m, k));
        let at_zero = field.slice(&self.trunc.zero_mu());
        let n = self.trunc.n;
        match (cls.s, cls.p, cls.r) {
            (ExtNat::Finite(s), ExtNat::Finite(p), ExtNat::UnresolvedBeyond(_)) => Some(match self.mode {
                Mode::State => Display::StateRInfinite { s, p },
                Mode::Orbital => Display::OrbitalRInfinite { s, p },
                Mode::Parametric => Display::ParametricSPlus1 { s, p },
            }),
            (ExtNat::Finite(1), _, ExtNat::Finite(_)) => {
                let (b10, b01, b20) = (b(1, 0), b(0, 1), b(2, 0));
                match self.mode {
                    Mode::State if cls.generic_gate && !b10.is_zero() => Some(Display::GenericB10),
                    Mode::State if cls.generic_gate && !b01.is_zero() => Some(Display::GenericB01),
                    Mode::Orbital if b10.is_zero() && !b01.is_zero() && !b20.is_zero() => Some(Display::OrbitalDegenerate),
                    Mode::Parametric if cls.generic_gate && !b10.is_zero() => Some(Display::ParametricCase1),
                    Mode::Parametric if cls.generic_gate && !b01.is_zero() => Some(Display::ParametricCase2),
                    _ => None,
                }
            }
            (ExtNat::Finite(_), _, _) => None,
            _ => match self.mode {
                Mode::State => match (cls.s1, cls.p1, cls.s2, cls.p2) {
                    (ExtNat::Finite(s1), ExtNat::Finite(p1), _, _) => Some(Display::ThetaS1 { s1, p1 }),
                    (_, _, ExtNat::Finite(s2), ExtNat::Finite(p2)) => Some(Display::ThetaS2 { s2, p2 }),
                    _ => Some(Display::LinearPart),
                },
                Mode::Orbital | Mode::Parametric => {
                    let parametric = self.mode == Mode::Parametric;
                    match detect_si_pi(&at_zero, 2, n) {
                        (ExtNat::Finite(s2), ExtNat::Finite(p2)) if parametric => Some(Display::ParametricThetaS2 { s2, p2 }),
                        (ExtNat::Finite(s2), ExtNat::Finite(p2)) => Some(Display::ThetaS2 { s2, p2 }),
                        _ if parametric => Some(Display::ParametricLinearizable),
                        _ => Some(Display::LinearPart),
                    }
                }
            },
        }
    }
}

fn state_trunc(n: u32) -> Truncation {
    Truncation::new(n)
}

/// State-only s+1 level.
pub fn level_s_plus_1(v1: &LVec, n: u32) -> Result<NormalFormResult, NfcError> {
    Plan::new(Mode::State, v1, state_trunc(n))?.s_plus_1()
}

/// State-only r+1 level, recomputed from the first-level input of `prev`.
pub fn level_r_plus_1(prev: &NormalFormResult) -> Result<NormalFormResult, NfcError> {
    Plan::new(Mode::State, &prev.input.join(&prev.truncation), prev.truncation.clone())?.r_plus_1()
}

/// State-only infinite level at index sums up to `n`.
pub fn infinite_level(v1: &LVec, n: u32) -> Result<NormalFormResult, NfcError> {
    Plan::new(Mode::State, v1, state_trunc(n))?.infinite()
}

pub fn orbital_s_plus_1(v1: &LVec, n: u32) -> Result<NormalFormResult, NfcError> {
    Plan::new(Mode::Orbital, v1, state_trunc(n))?.s_plus_1()
}

pub fn orbital_r_plus_1(prev: &NormalFormResult) -> Result<NormalFormResult, NfcError> {
    Plan::new(Mode::Orbital, &prev.input.join(&prev.truncation), prev.truncation.clone())?.r_plus_1()
}

pub fn orbital_infinite(v1: &LVec, n: u32) -> Result<NormalFormResult, NfcError> {
    Plan::new(Mode::Orbital, v1, state_trunc(n))?.infinite()
}

pub fn parametric_s_plus_1(w1: &LVec, trunc: Truncation) -> Result<NormalFormResult, NfcError> {
    Plan::new(Mode::Parametric, w1, trunc)?.s_plus_1()
}

pub fn parametric_r_plus_1(prev: &NormalFormResult) -> Result<NormalFormResult, NfcError> {
    Plan::new(Mode::Parametric, &prev.input.join(&prev.truncation), prev.truncation.clone())?.r_plus_1()
}

pub fn parametric_infinite(w1: &LVec, trunc: Truncation) -> Result<NormalFormResult, NfcError> {
    Plan::new(Mode::Parametric, w1, trunc)?.infinite()
}

/// Runs the requested level of the pipeline for `mode`.
pub fn normalize(mode: Mode, level: LevelTag, v1: &LVec, trunc: Truncation) -> Result<NormalFormResult, NfcError> {
    let plan = Plan::new(mode, v1, trunc)?;
    match level {
        LevelTag::First => {
            let terms = plan.input.clone();
            Ok(plan.finish(LevelTag::First, terms, Vec::new(), None))
        }
        LevelTag::SPlus1 => plan.s_plus_1(),
        LevelTag::RPlus1 => plan.r_plus_1(),
        LevelTag::Infinite => plan.infinite(),
    }
}

/// Generators of nonlinear symmetries of an infinite-level state normal form: every
/// returned element commutes with the normal form.
pub fn symmetry_generators(res: &NormalFormResult) -> Vec<LVec> {
    let nvars = res.field.nvars();
    let n = res.truncation.n;
    let one = || RatFn::one(nvars);
    match res.display {
        Some(Display::StateRInfinite { s, .. }) => {
            let rotational = res.field.iter().any(|(e, _)| e.is_rotational() && e.index_sum() > 0);
            if rotational {
                return Vec::new();
            }
            (0..=s).map(|j| LVec::single(nvars, BasisElem::E(s - j, j), one())).collect()
        }
        Some(Display::ThetaS1 { .. } | Display::ThetaS2 { .. } | Display::LinearPart) => (1..=n)
            .flat_map(|d| (0..=d).flat_map(move |j| [BasisElem::Theta1(d - j, j), BasisElem::Theta2(d - j, j)]))
            .map(|e| LVec::single(nvars, e, one()))
            .collect(),
        _ => Vec::new(),
    }
}
