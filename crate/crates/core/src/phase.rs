//! Polynomials in the phase variables with rational-function coefficients.
//!
//! The same container serves real coordinates `(x1, y1, x2, y2)` and complex
//! coordinates `(z1, w1, z2, w2)` with `w = conj(z)`; the caller decides which.

use std::collections::BTreeMap;

use nfc_algebra::{GaussRat, Poly, RatFn, SymbolTable};

pub type PhaseExps = [u32; 4];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasePoly {
    nvars: usize,
    terms: BTreeMap<PhaseExps, RatFn>,
}

pub fn exps_degree(e: &PhaseExps) -> u32 {
    e.iter().sum()
}

/// A monomial `z1^i1 w1^j1 z2^i2 w2^j2` is resonant when `i1 = j1` and `i2 = j2`.
pub fn is_resonant(e: &PhaseExps) -> bool {
    e[0] == e[1] && e[2] == e[3]
}

fn add_exps(a: &PhaseExps, b: &PhaseExps) -> PhaseExps {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

impl PhasePoly {
    pub fn zero(nvars: usize) -> Self {
        PhasePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: RatFn) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn monomial(exps: PhaseExps, c: RatFn) -> Self {
        let mut p = Self::zero(c.nvars());
        p.add_term(exps, &c);
        p
    }

    /// The coordinate `idx` (0..4) with coefficient 1.
    pub fn coordinate(nvars: usize, idx: usize) -> Self {
        let mut e = [0; 4];
        e[idx] = 1;
        Self::monomial(e, RatFn::one(nvars))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (PhaseExps, RatFn)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PhaseExps, &RatFn)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &PhaseExps) -> RatFn {
        self.terms.get(exps).cloned().unwrap_or_else(|| RatFn::zero(self.nvars))
    }

    pub fn add_term(&mut self, exps: PhaseExps, c: &RatFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(slot) => {
                let v = slot.add(c);
                if v.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(exps_degree).max()
    }

    pub fn add(&self, o: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, o: &PhasePoly) -> PhasePoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PhasePoly {
        PhasePoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn scale(&self, c: &RatFn) -> PhasePoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        PhasePoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (*e, v.mul(c))).collect() }
    }

    pub fn scale_gauss(&self, c: &GaussRat) -> PhasePoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        PhasePoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (*e, v.scale(c))).collect() }
    }

    /// Product with all monomials of total degree above `max_degree` dropped.
    pub fn mul_truncated(&self, o: &PhasePoly, max_degree: u32) -> PhasePoly {
        let mut acc: BTreeMap<PhaseExps, Vec<RatFn>> = BTreeMap::new();
        for (a, ca) in &self.terms {
            let da = exps_degree(a);
            for (b, cb) in &o.terms {
                if da + exps_degree(b) > max_degree {
                    continue;
                }
                acc.entry(add_exps(a, b)).or_default().push(ca.mul(cb));
            }
        }
        let mut out = Self::zero(self.nvars);
        for (e, parts) in acc {
            let sum = sum_ratfns(self.nvars, parts);
            if !sum.is_zero() {
                out.terms.insert(e, sum);
            }
        }
        out
    }

    pub fn mul(&self, o: &PhasePoly) -> PhasePoly {
        self.mul_truncated(o, u32::MAX)
    }

    pub fn homogeneous_part(&self, degree: u32) -> PhasePoly {
        self.filter(|e| exps_degree(e) == degree)
    }

    pub fn truncate(&self, max_degree: u32) -> PhasePoly {
        self.filter(|e| exps_degree(e) <= max_degree)
    }

    pub fn filter(&self, keep: impl Fn(&PhaseExps) -> bool) -> PhasePoly {
        PhasePoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&PhaseExps, &RatFn) -> RatFn) -> PhasePoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(*e, &f(e, c));
        }
        out
    }

    /// Derivative with respect to coordinate `idx`.
    pub fn derivative(&self, idx: usize) -> PhasePoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut d = *e;
            d[idx] -= 1;
            out.add_term(d, &c.scale(&GaussRat::from_int(e[idx] as i64)));
        }
        out
    }

    /// Complex conjugate under `z <-> w`, conjugating coefficients.
    pub fn conj(&self) -> PhasePoly {
        PhasePoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| ([e[1], e[0], e[3], e[2]], c.conj())).collect() }
    }

    pub fn fmt_with(&self, table: &SymbolTable, names: [&str; 4]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mono: Vec<String> = (0..4)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { names[i].to_string() } else { format!("{}^{}", names[i], e[i]) })
                .collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
            parts.push(format!("({})*{}", c.fmt_with(table), mono));
        }
        parts.join(" + ")
    }
}

/// Sums many rational functions. Terms sharing a denominator are combined on
/// their numerators first so that only one reduction per denominator is needed.
pub fn sum_ratfns(nvars: usize, parts: Vec<RatFn>) -> RatFn {
    if parts.len() <= 1 {
        return parts.into_iter().next().unwrap_or_else(|| RatFn::zero(nvars));
    }
    let mut buckets: Vec<(Poly, Poly)> = Vec::new();
    for p in parts {
        match buckets.iter_mut().find(|(d, _)| d == p.den()) {
            Some((_, n)) => *n = n.add(p.num()),
            None => buckets.push((p.den().clone(), p.num().clone())),
        }
    }
    let mut sums: Vec<RatFn> = buckets
        .into_iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|(d, n)| RatFn::new(n, d).expect("denominator of a canonical value is nonzero"))
        .collect();
    if sums.is_empty() {
        return RatFn::zero(nvars);
    }
    while sums.len() > 1 {
        let mut next = Vec::with_capacity(sums.len().div_ceil(2));
        let mut it = sums.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.add(&b)),
                None => next.push(a),
            }
        }
        sums = next;
    }
    sums.pop().expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_product_drops_high_degrees() {
        let z1 = PhasePoly::coordinate(0, 0);
        let w1 = PhasePoly::coordinate(0, 1);
        let s = z1.add(&w1);
        let sq = s.mul(&s);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&[1, 1, 0, 0]), RatFn::from_int(0, 2));
        assert!(sq.mul_truncated(&s, 2).is_zero());
        assert_eq!(s.mul_truncated(&s, 2), sq);
    }

    #[test]
    fn derivative_and_conjugate() {
        let p = PhasePoly::monomial([2, 1, 0, 3], RatFn::constant(0, GaussRat::i()));
        assert_eq!(p.derivative(0), PhasePoly::monomial([1, 1, 0, 3], RatFn::constant(0, &GaussRat::from_int(2) * &GaussRat::i())));
        assert!(p.derivative(2).is_zero());
        assert_eq!(p.conj(), PhasePoly::monomial([1, 2, 3, 0], RatFn::constant(0, GaussRat::i().conj())));
    }
}
