//! The graded Lie algebra spanned by Eulerian terms `E(m,n)` and rotational terms
//! `Theta1(m,n)`, `Theta2(m,n)`, together with the time-rescaling ring acting on it.

use std::collections::BTreeMap;
use std::fmt;

use nfc_algebra::{RatFn, SymbolTable};

/// Basis element of the algebra. The derived order (E before Theta1 before Theta2,
/// then first and second index) is only a storage order; elimination priority is
/// given by [`BasisElem::priority_key`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElem {
    E(u32, u32),
    Theta1(u32, u32),
    Theta2(u32, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    E,
    Theta1,
    Theta2,
}

impl BasisElem {
    pub fn new(family: Family, m: u32, n: u32) -> Self {
        match family {
            Family::E => BasisElem::E(m, n),
            Family::Theta1 => BasisElem::Theta1(m, n),
            Family::Theta2 => BasisElem::Theta2(m, n),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            BasisElem::E(..) => Family::E,
            BasisElem::Theta1(..) => Family::Theta1,
            BasisElem::Theta2(..) => Family::Theta2,
        }
    }

    pub fn indices(&self) -> (u32, u32) {
        match *self {
            BasisElem::E(m, n) | BasisElem::Theta1(m, n) | BasisElem::Theta2(m, n) => (m, n),
        }
    }

    /// `m + n`.
    pub fn index_sum(&self) -> u32 {
        let (m, n) = self.indices();
        m + n
    }

    pub fn is_rotational(&self) -> bool {
        !matches!(self, BasisElem::E(..))
    }

    /// Same family with indices shifted by `(dm, dn)`.
    pub fn shifted(&self, dm: u32, dn: u32) -> Self {
        let (m, n) = self.indices();
        BasisElem::new(self.family(), m + dm, n + dn)
    }

    /// Elimination priority among elements of equal grade: Eulerian first, then
    /// Theta1, then Theta2; inside a family by ascending second index.
    pub fn priority_key(&self) -> (Family, u32, u32) {
        let (m, n) = self.indices();
        (self.family(), n, m)
    }

    pub fn label(&self) -> String {
        let (m, n) = self.indices();
        match self.family() {
            Family::E => format!("E[{m},{n}]"),
            Family::Theta1 => format!("T1[{m},{n}]"),
            Family::Theta2 => format!("T2[{m},{n}]"),
        }
    }
}

impl fmt::Display for BasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Structure constants: `[a, b] = c * elem`, or `None` when the bracket vanishes.
pub fn bracket_basis(a: BasisElem, b: BasisElem) -> Option<(i64, BasisElem)> {
    use BasisElem::*;
    let (m, n) = a.indices();
    let (k, l) = b.indices();
    let (c, elem) = match (a, b) {
        (Theta1(..) | Theta2(..), Theta1(..) | Theta2(..)) => return None,
        (Theta1(..) | Theta2(..), E(..)) => (2 * (m + n) as i64, a.shifted(k, l)),
        (E(..), Theta1(..) | Theta2(..)) => (-2 * (k + l) as i64, b.shifted(m, n)),
        (E(..), E(..)) => (2 * ((m + n) as i64 - (k + l) as i64), E(m + k, n + l)),
    };
    (c != 0).then_some((c, elem))
}

/// Sparse element of the algebra with rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LVec {
    nvars: usize,
    terms: BTreeMap<BasisElem, RatFn>,
}

impl LVec {
    pub fn zero(nvars: usize) -> Self {
        LVec { nvars, terms: BTreeMap::new() }
    }

    pub fn single(nvars: usize, elem: BasisElem, c: RatFn) -> Self {
        let mut v = Self::zero(nvars);
        v.add_term(elem, &c);
        v
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (BasisElem, RatFn)>) -> Self {
        let mut v = Self::zero(nvars);
        for (e, c) in terms {
            v.add_term(e, &c);
        }
        v
    }

    /// The linear part `w1*Theta1(0,0) + w2*Theta2(0,0)`.
    pub fn linear_part(w1: &RatFn, w2: &RatFn) -> Self {
        Self::from_terms(w1.nvars(), [(BasisElem::Theta1(0, 0), w1.clone()), (BasisElem::Theta2(0, 0), w2.clone())])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, elem: BasisElem, c: &RatFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&elem) {
            Some(slot) => {
                let v = slot.add(c);
                if v.is_zero() {
                    self.terms.remove(&elem);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(elem, c.clone());
            }
        }
    }

    pub fn coeff(&self, elem: &BasisElem) -> RatFn {
        self.terms.get(elem).cloned().unwrap_or_else(|| RatFn::zero(self.nvars))
    }

    pub fn get(&self, elem: &BasisElem) -> Option<&RatFn> {
        self.terms.get(elem)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisElem, &RatFn)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<BasisElem> {
        self.terms.keys().copied().collect()
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

    pub fn add(&self, o: &LVec) -> LVec {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, o: &LVec) -> LVec {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> LVec {
        LVec { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn scale(&self, f: &RatFn) -> LVec {
        if f.is_zero() {
            return LVec::zero(self.nvars);
        }
        LVec { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (*e, c.mul(f))).collect() }
    }

    /// Keeps the terms with `m + n <= max_index`.
    pub fn truncate(&self, max_index: u32) -> LVec {
        LVec {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.index_sum() <= max_index).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFn) -> RatFn) -> LVec {
        let mut out = LVec::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c));
        }
        out
    }

    pub fn fmt_with(&self, table: &SymbolTable) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms.iter().map(|(e, c)| format!("({})*{}", c.fmt_with(table), e)).collect::<Vec<_>>().join(" + ")
    }
}

/// Element `sum c(m,n) Z(m,n)` of the time-rescaling ring, where `Z(m,n)` multiplies
/// by `(x1^2+y1^2)^m (x2^2+y2^2)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeGen {
    nvars: usize,
    terms: BTreeMap<(u32, u32), RatFn>,
}

impl TimeGen {
    pub fn zero(nvars: usize) -> Self {
        TimeGen { nvars, terms: BTreeMap::new() }
    }

    pub fn single(nvars: usize, m: u32, n: u32, c: RatFn) -> Self {
        let mut t = Self::zero(nvars);
        t.add_term(m, n, &c);
        t
    }

    pub fn add_term(&mut self, m: u32, n: u32, c: &RatFn) {
        if c.is_zero() {
            return;
        }
        let key = (m, n);
        let v = self.terms.get(&key).map(|x| x.add(c)).unwrap_or_else(|| c.clone());
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &RatFn)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Ring product in the time-rescaling ring.
    pub fn mul(&self, o: &TimeGen) -> TimeGen {
        let mut out = TimeGen::zero(self.nvars);
        for ((m, n), c) in &self.terms {
            for ((k, l), d) in &o.terms {
                out.add_term(m + k, n + l, &c.mul(d));
            }
        }
        out
    }

    pub fn fmt_with(&self, table: &SymbolTable) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms.iter().map(|((m, n), c)| format!("({})*Z[{m},{n}]", c.fmt_with(table))).collect::<Vec<_>>().join(" + ")
    }
}

/// Grading: `E(m,n)` has grade `m+n`, `Theta(m,n)` has grade `theta_offset+m+n`, and
/// each unit of parameter degree adds `mu_weight`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    pub theta_offset: u32,
    pub mu_weight: u32,
}

impl Grading {
    pub fn new(theta_offset: u32, mu_weight: u32) -> Self {
        Grading { theta_offset, mu_weight }
    }
}

pub fn grade_of(b: BasisElem, g: Grading, mu_degree: u32) -> u32 {
    let base = match b {
        BasisElem::E(m, n) => m + n,
        BasisElem::Theta1(m, n) | BasisElem::Theta2(m, n) => g.theta_offset + m + n,
    };
    base + g.mu_weight * mu_degree
}

/// Bilinear extension of [`bracket_basis`].
pub fn bracket(u: &LVec, w: &LVec) -> LVec {
    let mut out = LVec::zero(u.nvars);
    for (a, ca) in &u.terms {
        for (b, cb) in &w.terms {
            if let Some((k, e)) = bracket_basis(*a, *b) {
                out.add_term(e, &ca.mul(cb).mul(&RatFn::from_int(u.nvars, k)));
            }
        }
    }
    out
}

/// Action of the time-rescaling ring by index shifting.
pub fn rescale_action(t: &TimeGen, v: &LVec) -> LVec {
    let mut out = LVec::zero(v.nvars);
    for ((m, n), c) in &t.terms {
        for (e, d) in &v.terms {
            out.add_term(e.shifted(*m, *n), &c.mul(d));
        }
    }
    out
}

/// `(T, S) * v = T v + [S, v]`.
pub fn combined_action(t: &TimeGen, s: &LVec, v: &LVec) -> LVec {
    rescale_action(t, v).add(&bracket(s, v))
}

/// Rotational part (the radical ideal component).
pub fn project_radical(v: &LVec) -> LVec {
    LVec { nvars: v.nvars, terms: v.terms.iter().filter(|(e, _)| e.is_rotational()).map(|(e, c)| (*e, c.clone())).collect() }
}

/// Eulerian part.
pub fn project_quotient(v: &LVec) -> LVec {
    LVec { nvars: v.nvars, terms: v.terms.iter().filter(|(e, _)| !e.is_rotational()).map(|(e, c)| (*e, c.clone())).collect() }
}

/// Terms of grade exactly `k` (coefficients are treated as parameter-free).
pub fn graded_part(v: &LVec, k: u32, g: Grading) -> LVec {
    LVec {
        nvars: v.nvars,
        terms: v.terms.iter().filter(|(e, _)| grade_of(**e, g, 0) == k).map(|(e, c)| (*e, c.clone())).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisElem::*;

    fn one() -> RatFn {
        RatFn::one(0)
    }

    fn single(e: BasisElem) -> LVec {
        LVec::single(0, e, one())
    }

    #[test]
    fn structure_constant_examples() {
        assert!(bracket(&single(Theta1(1, 0)), &single(Theta2(0, 1))).is_zero());
        assert_eq!(bracket(&single(Theta1(1, 1)), &single(E(2, 0))), LVec::single(0, Theta1(3, 1), RatFn::from_int(0, 4)));
        assert_eq!(bracket(&single(E(2, 1)), &single(E(0, 1))), LVec::single(0, E(2, 2), RatFn::from_int(0, 4)));
        assert!(bracket(&single(E(1, 0)), &single(E(1, 0))).is_zero());
    }

    #[test]
    fn zero_index_brackets() {
        assert_eq!(bracket_basis(E(0, 0), Theta1(1, 2)), Some((-6, Theta1(1, 2))));
        assert_eq!(bracket_basis(E(2, 1), Theta2(0, 0)), None);
        assert_eq!(bracket_basis(E(0, 0), E(1, 1)), Some((-4, E(1, 1))));
    }

    #[test]
    fn rescaling_examples() {
        let t = TimeGen::single(0, 1, 0, one());
        assert_eq!(rescale_action(&t, &single(Theta2(0, 1))), single(Theta2(1, 1)));
        let id = TimeGen::single(0, 0, 0, one());
        let v = single(E(2, 3)).add(&single(Theta1(0, 0)));
        assert_eq!(rescale_action(&id, &v), v);
        let t12 = TimeGen::single(0, 1, 2, one());
        let v = single(E(2, 0)).add(&LVec::single(0, Theta1(0, 0), RatFn::from_int(0, 3)));
        let expected = single(E(3, 2)).add(&LVec::single(0, Theta1(1, 2), RatFn::from_int(0, 3)));
        assert_eq!(rescale_action(&t12, &v), expected);
    }

    #[test]
    fn combined_action_reduces_to_parts() {
        let v = single(E(1, 0)).add(&single(Theta1(0, 0)));
        let s = single(E(0, 1));
        let t = TimeGen::single(0, 1, 1, one());
        assert_eq!(combined_action(&TimeGen::zero(0), &s, &v), bracket(&s, &v));
        assert_eq!(combined_action(&t, &LVec::zero(0), &v), rescale_action(&t, &v));
    }

    #[test]
    fn grades() {
        assert_eq!(grade_of(E(2, 1), Grading::new(1, 0), 0), 3);
        assert_eq!(grade_of(Theta1(0, 0), Grading::new(1, 0), 0), 1);
        assert_eq!(grade_of(E(0, 0), Grading::new(0, 3), 2), 6);
    }

    #[test]
    fn projections_and_graded_parts() {
        let v0 = single(Theta1(0, 0)).add(&single(Theta2(0, 0)));
        assert_eq!(project_radical(&v0), v0);
        assert!(project_quotient(&v0).is_zero());
        let v = single(E(1, 0)).add(&single(Theta2(2, 2)));
        assert_eq!(project_radical(&v), single(Theta2(2, 2)));
        assert_eq!(project_quotient(&v), single(E(1, 0)));
        assert_eq!(graded_part(&v0, 0, Grading::new(0, 0)), v0);
        let w = single(E(1, 1)).add(&single(E(0, 1)));
        assert_eq!(graded_part(&w, 2, Grading::new(3, 0)), single(E(1, 1)));
    }
}
