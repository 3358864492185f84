//! Graded elimination engine shared by the state, orbital and parametric pipelines.
//!
//! A working field is a map from `(basis element, parameter monomial)` to a
//! parameter-free coefficient. A stage fixes a grading, a level window and the
//! generator families; it then walks the grades upward, and at each grade removes
//! every term that lies in the image of the admissible generators.

use std::collections::{BTreeMap, BTreeSet};

use nfc_algebra::{GaussRat, Mono, Poly, RFMatrix, RatFn};
use rayon::prelude::*;

use crate::lie::{bracket_basis, BasisElem, Family, LVec, TimeGen};
use crate::NfcError;

/// Exponent vector of a parameter monomial, one entry per parameter symbol.
pub type MuExps = Vec<u16>;

pub fn mu_degree(mu: &[u16]) -> u32 {
    mu.iter().map(|&e| e as u32).sum()
}

fn mu_add(a: &[u16], b: &[u16]) -> MuExps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All exponent vectors in `nparams` variables of total degree `lo..=hi`, ordered by
/// degree and then lexicographically.
pub fn mu_monomials(nparams: usize, lo: u32, hi: u32) -> Vec<MuExps> {
    fn rec(prefix: &mut MuExps, left: usize, budget: u32, out: &mut Vec<MuExps>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e as u16);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nparams, hi, &mut out);
    out.retain(|m| (lo..=hi).contains(&mu_degree(m)));
    out.sort_by(|a, b| mu_degree(a).cmp(&mu_degree(b)).then_with(|| b.cmp(a)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub elem: BasisElem,
    pub mu: MuExps,
}

impl Key {
    pub fn new(elem: BasisElem, mu: MuExps) -> Self {
        Key { elem, mu }
    }

    pub fn mu_degree(&self) -> u32 {
        mu_degree(&self.mu)
    }

    pub fn label(&self) -> String {
        if self.mu.iter().all(|&e| e == 0) {
            return self.elem.label();
        }
        let mu: Vec<String> = self
            .mu
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("mu{}", i + 1) } else { format!("mu{}^{}", i + 1, e) })
            .collect();
        format!("{}*{}", self.elem.label(), mu.join("*"))
    }
}

/// Truncation orders and the positions of the parameter symbols in the symbol table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    /// Maximal index sum `m + n`.
    pub n: u32,
    /// Maximal parameter degree.
    pub m: u32,
    pub params: Vec<usize>,
}

impl Truncation {
    pub fn new(n: u32) -> Self {
        Truncation { n, m: 0, params: Vec::new() }
    }

    pub fn parametric(n: u32, m: u32, params: Vec<usize>) -> Self {
        Truncation { n, m, params }
    }

    pub fn zero_mu(&self) -> MuExps {
        vec![0; self.params.len()]
    }

    pub fn keeps(&self, key: &Key) -> bool {
        key.elem.index_sum() <= self.n && key.mu_degree() <= self.m
    }

    fn param_mask(&self) -> u64 {
        self.params.iter().fold(0, |m, &i| m | (1u64 << i))
    }
}

/// Sparse field with parameter monomials pulled out of the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    nvars: usize,
    terms: BTreeMap<Key, RatFn>,
}

impl Field {
    pub fn zero(nvars: usize) -> Self {
        Field { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, key: Key, c: &RatFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                let v = slot.add(c);
                if v.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn coeff(&self, key: &Key) -> RatFn {
        self.terms.get(key).cloned().unwrap_or_else(|| RatFn::zero(self.nvars))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &RatFn)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Field) -> Field {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &RatFn) -> Field {
        if c.is_zero() {
            return Field::zero(self.nvars);
        }
        Field { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect() }
    }

    /// Splits the parameter monomials out of the coefficients of `v`. Terms beyond
    /// the truncation are dropped. Parameters may not occur in a denominator.
    pub fn split(v: &LVec, trunc: &Truncation) -> Result<Field, NfcError> {
        let nvars = v.nvars();
        let mask = trunc.param_mask();
        let mut out = Field::zero(nvars);
        for (elem, c) in v.iter() {
            if elem.index_sum() > trunc.n {
                continue;
            }
            if trunc.params.is_empty() {
                out.add_term(Key::new(*elem, Vec::new()), c);
                continue;
            }
            if c.den().var_mask() & mask != 0 {
                return Err(NfcError::InvalidInput(format!("parameter in the denominator of the {elem} coefficient")));
            }
            let mut groups: BTreeMap<MuExps, Vec<(Mono, GaussRat)>> = BTreeMap::new();
            for (mono, g) in c.num().terms() {
                let mut exps: nfc_algebra::Exps = mono.exps().iter().copied().collect();
                let mu: MuExps = trunc.params.iter().map(|&i| exps[i]).collect();
                for &i in &trunc.params {
                    exps[i] = 0;
                }
                groups.entry(mu).or_default().push((Mono::new(exps), g.clone()));
            }
            for (mu, terms) in groups {
                if mu_degree(&mu) > trunc.m {
                    continue;
                }
                let coeff = RatFn::new(Poly::from_terms(nvars, terms), c.den().clone())?;
                out.add_term(Key::new(*elem, mu), &coeff);
            }
        }
        Ok(out)
    }

    /// The inverse of [`Field::split`].
    pub fn join(&self, trunc: &Truncation) -> LVec {
        let mut out = LVec::zero(self.nvars);
        for (k, c) in &self.terms {
            out.add_term(k.elem, &c.mul(&mu_power(self.nvars, &trunc.params, &k.mu)));
        }
        out
    }

    /// Coefficients of the parameter monomial `mu`.
    pub fn slice(&self, mu: &[u16]) -> LVec {
        LVec::from_terms(self.nvars, self.terms.iter().filter(|(k, _)| k.mu == mu).map(|(k, c)| (k.elem, c.clone())))
    }

    pub fn support(&self) -> Vec<Key> {
        self.terms.keys().cloned().collect()
    }
}

/// `prod mu_i^e_i` as a rational function.
pub fn mu_power(nvars: usize, params: &[usize], mu: &[u16]) -> RatFn {
    let mut exps: nfc_algebra::Exps = std::iter::repeat_n(0, nvars).collect();
    for (&i, &e) in params.iter().zip(mu) {
        exps[i] = e;
    }
    RatFn::from_poly(Poly::monomial(Mono::new(exps), GaussRat::one()))
}

/// A transformation generator: a basis element of the algebra or a time-rescaling
/// monomial `Z(m,n)`, times a parameter monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    State(BasisElem),
    Time(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub kind: GenKind,
    pub mu: MuExps,
}

/// Action of a single generator, keeping only terms accepted by `keep`.
pub fn apply_gen(g: &Gen, field: &Field, trunc: &Truncation, keep: impl Fn(&Key) -> bool) -> Field {
    let mut out = Field::zero(field.nvars);
    for (key, c) in &field.terms {
        let (elem, factor) = match g.kind {
            GenKind::State(s) => match bracket_basis(s, key.elem) {
                Some((k, e)) => (e, Some(k)),
                None => continue,
            },
            GenKind::Time(m, n) => (key.elem.shifted(m, n), None),
        };
        let target = Key::new(elem, mu_add(&g.mu, &key.mu));
        if !trunc.keeps(&target) || !keep(&target) {
            continue;
        }
        let v = match factor {
            Some(k) => c.mul(&RatFn::from_int(field.nvars, k)),
            None => c.clone(),
        };
        out.add_term(target, &v);
    }
    out
}

/// `sum_g c_g * (g . field)`.
pub fn apply_combination(x: &[(Gen, RatFn)], field: &Field, trunc: &Truncation) -> Field {
    let mut out = Field::zero(field.nvars);
    for (g, c) in x {
        let img = apply_gen(g, field, trunc, |_| true);
        for (k, v) in img.terms {
            out.add_term(k, &v.mul(c));
        }
    }
    out
}

/// `exp(L_X) field`, summed until the series terminates under the truncation.
pub fn apply_exp(x: &[(Gen, RatFn)], field: &Field, trunc: &Truncation) -> Field {
    let mut acc = field.clone();
    let mut term = field.clone();
    let mut j = 1;
    loop {
        term = apply_combination(x, &term, trunc).scale(&RatFn::from_frac(field.nvars, 1, j));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
        j += 1;
    }
    acc
}

/// Grading of one stage: `E(m,n) mu^a` has grade `m+n+w|a|`, `Theta^i(m,n) mu^a`
/// has grade `theta[i-1]+m+n+w|a|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StageGrading {
    pub theta: [u32; 2],
    pub mu_weight: u32,
}

impl StageGrading {
    pub fn uniform(offset: u32, mu_weight: u32) -> Self {
        StageGrading { theta: [offset, offset], mu_weight }
    }

    pub fn key_grade(&self, key: &Key) -> u32 {
        self.elem_grade(key.elem) + self.mu_weight * key.mu_degree()
    }

    fn elem_grade(&self, e: BasisElem) -> u32 {
        match e {
            BasisElem::E(m, n) => m + n,
            BasisElem::Theta1(m, n) => self.theta[0] + m + n,
            BasisElem::Theta2(m, n) => self.theta[1] + m + n,
        }
    }

    /// Grade shift produced by a generator.
    pub fn raise(&self, g: &Gen) -> u32 {
        let base = match g.kind {
            GenKind::State(e) => self.elem_grade(e),
            GenKind::Time(m, n) => m + n,
        };
        base + self.mu_weight * mu_degree(&g.mu)
    }
}

/// Which parameter monomials multiply the generators of a stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MuGens {
    /// Parameter-free generators; only parameter-free terms are normalized.
    Free,
    /// Generators carrying a parameter monomial of degree at least one.
    Dependent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub label: String,
    pub grading: StageGrading,
    /// Level `R`: at grade `k` a generator of raise `rho` is admissible when
    /// `rho >= k - R + 1`. `None` is the infinite level.
    pub level: Option<u32>,
    pub time: bool,
    pub mu_gens: MuGens,
}

impl Stage {
    pub fn new(label: impl Into<String>, grading: StageGrading, level: Option<u32>, time: bool) -> Self {
        Stage { label: label.into(), grading, level, time, mu_gens: MuGens::Free }
    }

    pub fn with_mu(mut self, mu_gens: MuGens) -> Self {
        self.mu_gens = mu_gens;
        self
    }

    fn in_scope(&self, key: &Key) -> bool {
        self.mu_gens == MuGens::Dependent || key.mu_degree() == 0
    }

    fn generators(&self, trunc: &Truncation) -> Vec<(u32, Gen)> {
        let mus = match self.mu_gens {
            MuGens::Free => vec![trunc.zero_mu()],
            MuGens::Dependent => mu_monomials(trunc.params.len(), 1, trunc.m),
        };
        let mut kinds = Vec::new();
        for d in 0..=trunc.n {
            for j in 0..=d {
                kinds.push(GenKind::State(BasisElem::E(d - j, j)));
                if d > 0 {
                    kinds.push(GenKind::State(BasisElem::Theta1(d - j, j)));
                    kinds.push(GenKind::State(BasisElem::Theta2(d - j, j)));
                }
                if self.time {
                    kinds.push(GenKind::Time(d - j, j));
                }
            }
        }
        let mut out: Vec<(u32, Gen)> = mus
            .iter()
            .flat_map(|mu| kinds.iter().map(move |&kind| Gen { kind, mu: mu.clone() }))
            .map(|g| (self.grading.raise(&g), g))
            .filter(|(raise, _)| *raise > 0)
            .collect();
        out.sort();
        out
    }
}

/// One exponential applied by a stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorStep {
    pub stage: String,
    pub grade: u32,
    /// State part, parameter monomials folded into the coefficients.
    pub state: LVec,
    /// Time-rescaling part.
    pub time: TimeGen,
    /// Terms set to zero by this step.
    pub eliminated: Vec<Key>,
    /// The generator combination in engine form.
    pub combination: Vec<(Gen, RatFn)>,
}

impl GeneratorStep {
    /// A time generator paired with a state generator.
    pub fn coupled(&self) -> bool {
        !self.state.is_zero() && !self.time.is_zero()
    }

    /// Largest parameter degree among the generators.
    pub fn mu_degree(&self) -> u32 {
        self.combination.iter().map(|(g, _)| mu_degree(&g.mu)).max().unwrap_or(0)
    }
}

fn step_record(stage: &Stage, grade: u32, x: Vec<(Gen, RatFn)>, eliminated: Vec<Key>, nvars: usize, trunc: &Truncation) -> GeneratorStep {
    let mut state = LVec::zero(nvars);
    let mut time = TimeGen::zero(nvars);
    for (g, c) in &x {
        let c = c.mul(&mu_power(nvars, &trunc.params, &g.mu));
        match g.kind {
            GenKind::State(e) => state.add_term(e, &c),
            GenKind::Time(m, n) => time.add_term(m, n, &c),
        }
    }
    GeneratorStep { stage: stage.label.clone(), grade, state, time, eliminated, combination: x }
}

/// Elimination priority among keys of one grade: parameter degree, then family
/// (Eulerian, Theta1, Theta2), then ascending second index.
fn priority(key: &Key) -> (u32, Family, u32, u32, std::cmp::Reverse<MuExps>) {
    let (m, n) = key.elem.indices();
    (key.mu_degree(), key.elem.family(), n, m, std::cmp::Reverse(key.mu.clone()))
}

/// Runs one stage on `field` in place, appending the applied steps to `steps`.
pub fn run_stage(field: &mut Field, stage: &Stage, trunc: &Truncation, steps: &mut Vec<GeneratorStep>) -> Result<(), NfcError> {
    let g = stage.grading;
    let nvars = field.nvars;
    let Some(s0) = field.keys().filter(|k| stage.in_scope(k)).map(|k| g.key_grade(k)).min() else {
        return Ok(());
    };
    let gens = stage.generators(trunc);
    let top = trunc.n + g.theta[0].max(g.theta[1]) + g.mu_weight * trunc.m;
    for k in s0 + 1..=top {
        let has_target = field.keys().any(|key| stage.in_scope(key) && g.key_grade(key) == k);
        if !has_target {
            continue;
        }
        let lo = stage.level.map_or(1, |r| (k + 1).saturating_sub(r).max(1));
        let hi = k - s0;
        let window: Vec<&Gen> = gens.iter().filter(|(r, _)| (lo..=hi).contains(r)).map(|(_, g)| g).collect();
        if window.is_empty() {
            continue;
        }
        let snapshot = &*field;
        let images: Vec<Field> = window
            .par_iter()
            .map(|gen| apply_gen(gen, snapshot, trunc, |key| stage.in_scope(key) && g.key_grade(key) <= k))
            .collect();
        let mut lower = BTreeSet::new();
        let mut current = BTreeSet::new();
        for img in &images {
            for key in img.keys() {
                if g.key_grade(key) < k {
                    lower.insert(key.clone());
                } else {
                    current.insert(key.clone());
                }
            }
        }
        if !current.iter().any(|key| !field.coeff(key).is_zero()) {
            continue;
        }
        let mut current: Vec<Key> = current.into_iter().collect();
        current.sort_by_key(priority);
        let nlower = lower.len();
        let cols: Vec<Key> = lower.into_iter().chain(current).collect();
        let col_index: BTreeMap<&Key, usize> = cols.iter().enumerate().map(|(i, key)| (key, i)).collect();
        let mut m = RFMatrix::zeros(images.len(), cols.len(), nvars);
        for (i, img) in images.iter().enumerate() {
            for (key, c) in img.iter() {
                m.set(i, col_index[key], c.clone());
            }
        }
        let rref = m.rref();
        let mut coeffs: Vec<RatFn> = vec![RatFn::zero(nvars); window.len()];
        let mut eliminated = Vec::new();
        for (row, &pc) in rref.pivots.iter().enumerate() {
            if pc < nlower {
                continue;
            }
            let target = field.coeff(&cols[pc]);
            if target.is_zero() {
                continue;
            }
            eliminated.push(cols[pc].clone());
            for (j, t) in rref.transform.row(row).iter().enumerate() {
                if !t.is_zero() {
                    coeffs[j] = coeffs[j].sub(&t.mul(&target));
                }
            }
        }
        let x: Vec<(Gen, RatFn)> =
            window.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(g, c)| ((*g).clone(), c)).collect();
        if x.is_empty() {
            continue;
        }
        let next = apply_exp(&x, field, trunc);
        if let Some(key) = eliminated.iter().find(|key| !next.coeff(key).is_zero()) {
            return Err(NfcError::InvalidInput(format!("stage {} failed to remove {} at grade {k}", stage.label, key.label())));
        }
        *field = next;
        steps.push(step_record(stage, k, x, eliminated, nvars, trunc));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> RatFn {
        RatFn::from_int(0, v)
    }

    fn key(e: BasisElem) -> Key {
        Key::new(e, Vec::new())
    }

    #[test]
    fn monomial_enumeration() {
        let all = mu_monomials(2, 0, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![1, 0]);
        assert_eq!(mu_monomials(2, 1, 1), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(mu_monomials(0, 0, 3), vec![Vec::<u16>::new()]);
    }

    #[test]
    fn split_and_join_round_trip() {
        let nvars = 3;
        let mu = RatFn::var(nvars, 2);
        let b = RatFn::var(nvars, 0);
        let coeff = b.add(&mu.mul(&b)).add(&mu.mul(&mu));
        let v = LVec::single(nvars, BasisElem::E(1, 0), coeff);
        let trunc = Truncation::parametric(3, 2, vec![2]);
        let f = Field::split(&v, &trunc).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.coeff(&Key::new(BasisElem::E(1, 0), vec![1])), b);
        assert_eq!(f.join(&trunc), v);
        let cut = Field::split(&v, &Truncation::parametric(3, 1, vec![2])).unwrap();
        assert_eq!(cut.len(), 2);
    }

    #[test]
    fn parameter_in_denominator_is_rejected() {
        let mu = RatFn::var(1, 0);
        let v = LVec::single(1, BasisElem::E(1, 0), RatFn::one(1).div(&mu).unwrap());
        assert!(Field::split(&v, &Truncation::parametric(2, 1, vec![0])).is_err());
    }

    #[test]
    fn exp_of_commuting_generator_is_linear() {
        let mut f = Field::zero(0);
        f.add_term(key(BasisElem::Theta1(0, 0)), &c(1));
        let x = vec![(Gen { kind: GenKind::Time(1, 0), mu: Vec::new() }, c(3))];
        let out = apply_exp(&x, &f, &Truncation::new(2));
        assert_eq!(out.coeff(&key(BasisElem::Theta1(1, 0))), c(3));
        assert_eq!(out.coeff(&key(BasisElem::Theta1(2, 0))), RatFn::from_frac(0, 9, 2));
        assert_eq!(out.len(), 3);
    }

    #[test]
    fn single_stage_removes_grade_two_band() {
        let mut f = Field::zero(0);
        f.add_term(key(BasisElem::Theta1(0, 0)), &c(2));
        f.add_term(key(BasisElem::Theta2(0, 0)), &c(3));
        f.add_term(key(BasisElem::E(1, 0)), &c(1));
        f.add_term(key(BasisElem::E(2, 0)), &c(5));
        f.add_term(key(BasisElem::E(1, 1)), &c(7));
        let stage = Stage::new("orbital", StageGrading::uniform(1, 0), Some(2), true);
        let mut steps = Vec::new();
        run_stage(&mut f, &stage, &Truncation::new(2), &mut steps).unwrap();
        assert!(f.coeff(&key(BasisElem::E(2, 0))).is_zero());
        assert!(f.coeff(&key(BasisElem::E(1, 1))).is_zero());
        assert_eq!(f.coeff(&key(BasisElem::Theta1(1, 0))), c(-10));
        assert_eq!(f.coeff(&key(BasisElem::Theta2(0, 1))), c(-21));
        assert_eq!(f.coeff(&key(BasisElem::E(1, 0))), c(1));
        assert!(!steps.is_empty());
    }
}
