use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::rat::rat_to_string;
use crate::{GaussRat, SymbolTable};

pub type Exps = SmallVec<[u16; 16]>;

/// Exponent vector ordered by total degree, then lexicographically with the
/// first symbol most significant (graded lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    deg: u32,
    exps: Exps,
}

impl Mono {
    pub fn new(exps: Exps) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Mono { deg, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Mono { deg: 0, exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut exps: Exps = SmallVec::from_elem(0, nvars);
        exps[idx] = 1;
        Mono { deg: 1, exps }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let exps = self.exps.iter().zip(o.exps.iter()).map(|(a, b)| a + b).collect();
        Mono { deg: self.deg + o.deg, exps }
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        if o.deg > self.deg {
            return None;
        }
        let mut exps = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(o.exps.iter()) {
            if b > a {
                return None;
            }
            exps.push(a - b);
        }
        Some(Mono { deg: self.deg - o.deg, exps })
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        Mono::new(self.exps.iter().zip(o.exps.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn var_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }
}

/// Sparse polynomial over `Q(i)`, terms kept in strictly decreasing monomial order
/// with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Mono, GaussRat)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= 64, "at most 64 symbols are supported");
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussRat::one())
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((Mono::one(nvars), c));
        }
        p
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        Poly { nvars, terms: vec![(Mono::var(nvars, idx), GaussRat::one())] }
    }

    pub fn monomial(m: Mono, c: GaussRat) -> Self {
        let nvars = m.exps.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from unsorted terms, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, GaussRat)>) -> Self {
        let mut acc: HashMap<Mono, GaussRat> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.exps.len(), nvars);
            *acc.entry(m).or_default() += &c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Mono, GaussRat>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, GaussRat)] {
        &self.terms
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

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.as_slice() {
            [] => Some(GaussRat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, GaussRat)> {
        self.terms.first()
    }

    pub fn lc(&self) -> GaussRat {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.deg).unwrap_or(0)
    }

    pub fn var_mask(&self) -> u64 {
        self.terms.iter().fold(0, |m, (mono, _)| m | mono.var_mask())
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exps[v]).max().unwrap_or(0)
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::one(self.nvars),
            Some((first, _)) => it.fold(first.clone(), |acc, (m, _)| acc.gcd(m)),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_mono(&self, mono: &Mono, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x * c)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            match self.terms[i].0.cmp(&o.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &o.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &o.terms[j].1
                    } else {
                        &self.terms[i].1 + &o.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &o.terms[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, o.nvars);
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.nvars);
        }
        if o.terms.len() == 1 {
            return self.mul_mono(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_mono(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Mono, GaussRat> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let prod = c1 * c2;
                match acc.get_mut(&m1.mul(m2)) {
                    Some(slot) => *slot += &prod,
                    None => {
                        acc.insert(m1.mul(m2), prod);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        let (dm, dc) = &d.terms[0];
        if d.terms.len() == 1 {
            let inv = dc.inv().expect("nonzero leading coefficient");
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c * &inv));
            }
            return Some(Poly { nvars: self.nvars, terms });
        }
        let inv = dc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first() {
            if rm.deg < dm.deg {
                return None;
            }
            let qm = rm.div(dm)?;
            let qc = rc * &inv;
            rem = rem.sub(&d.mul_mono(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(Poly { nvars: self.nvars, terms: quot })
    }

    /// Coefficients with respect to variable `v`: entry `k` multiplies `v^k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, GaussRat)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exps[v] as usize;
            let mut exps = m.exps.clone();
            exps[v] = 0;
            buckets[k].push((Mono { deg: m.deg - k as u32, exps }, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly { nvars: self.nvars, terms: t }
            })
            .collect()
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(nvars: usize, v: usize, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps: Exps = SmallVec::from_elem(0, nvars);
            exps[v] = k as u16;
            acc = acc.add(&c.mul_mono(&Mono::new(exps), &GaussRat::one()));
        }
        acc
    }

    /// Groups terms by their exponents on the variables in `mask`; each group's
    /// coefficient is a polynomial in the remaining variables.
    pub fn coeffs_wrt(&self, mask: u64) -> Vec<Poly> {
        let mut groups: HashMap<Exps, Vec<(Mono, GaussRat)>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut key: Exps = SmallVec::new();
            let mut rest = m.exps.clone();
            for (i, e) in rest.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    key.push(*e);
                    *e = 0;
                }
            }
            groups.entry(key).or_default().push((Mono::new(rest), c.clone()));
        }
        let mut out: Vec<Poly> = groups
            .into_values()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly { nvars: self.nvars, terms: t }
            })
            .collect();
        out.sort_by_key(|p| p.len());
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Coefficientwise complex conjugation.
    pub fn conj(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    /// Substitutes values for the symbols given as `Some`, leaving the rest symbolic.
    pub fn substitute(&self, values: &[Option<GaussRat>]) -> Poly {
        debug_assert_eq!(values.len(), self.nvars);
        let mut pow_cache: HashMap<(usize, u16), GaussRat> = HashMap::new();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exps.clone();
            for (i, e) in exps.iter_mut().enumerate() {
                if *e == 0 {
                    continue;
                }
                if let Some(val) = &values[i] {
                    let p = pow_cache.entry((i, *e)).or_insert_with(|| val.pow(*e as u32));
                    coeff = &coeff * p;
                    *e = 0;
                }
            }
            out.push((Mono::new(exps), coeff));
        }
        Poly::from_terms(self.nvars, out)
    }

    /// Re-embeds into a table with `new_nvars` symbols, mapping symbol `i` to `map[i]`.
    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps: Exps = SmallVec::from_elem(0, new_nvars);
            for (i, &e) in m.exps.iter().enumerate() {
                exps[map[i]] += e;
            }
            (Mono::new(exps), c.clone())
        });
        Poly::from_terms(new_nvars, terms)
    }

    pub fn fmt_with(&self, table: &SymbolTable) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mono = mono_string(m, table);
            let (neg, body) = coeff_string(c);
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (body.as_str(), mono.is_empty()) {
                ("1", false) => out.push_str(&mono),
                (_, true) => out.push_str(&body),
                _ => {
                    out.push_str(&body);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

fn mono_string(m: &Mono, table: &SymbolTable) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(table.name(i).to_string()),
            _ => parts.push(format!("{}^{}", table.name(i), e)),
        }
    }
    parts.join("*")
}

fn coeff_string(c: &GaussRat) -> (bool, String) {
    use num_traits::{Signed, Zero};
    if c.im.is_zero() {
        return (c.re.is_negative(), rat_to_string(&c.re.abs()));
    }
    if c.re.is_zero() {
        let mag = c.im.abs();
        let body = if num_traits::One::is_one(&mag) { "I".to_string() } else { format!("{}*I", rat_to_string(&mag)) };
        return (c.im.is_negative(), body);
    }
    (false, c.to_string())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        let mut table = SymbolTable::new();
        for n in &names {
            table.push(n, crate::SymbolKind::Coefficient).expect("unique");
        }
        write!(f, "{}", self.fmt_with(&table))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn grlex_leading_term() {
        let p = x(1).mul(&x(1)).add(&x(0));
        assert_eq!(p.leading().unwrap().0.exps(), &[0, 2, 0]);
        let q = x(0).mul(&x(2)).add(&x(1).mul(&x(1)));
        assert_eq!(q.leading().unwrap().0.exps(), &[1, 0, 1]);
    }

    #[test]
    fn exact_division() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(1)).add(&Poly::one(3));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(x(0).div_exact(&x(1)), None);
        assert_eq!(prod.add(&Poly::one(3)).div_exact(&b), None);
    }

    #[test]
    fn coefficient_split_round_trips() {
        let p = x(0).mul(&x(0)).mul(&x(1)).add(&x(2)).add(&x(0).scale(&GaussRat::from_int(3)));
        let cs = p.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(Poly::from_coeffs_in(3, 0, &cs), p);
    }

    #[test]
    fn substitution_and_display() {
        let p = x(0).mul(&x(1)).add(&x(2).scale(&GaussRat::from_frac(-1, 2)));
        let s = p.substitute(&[Some(GaussRat::from_int(2)), None, None]);
        assert_eq!(s, x(1).scale(&GaussRat::from_int(2)).add(&x(2).scale(&GaussRat::from_frac(-1, 2))));
        assert_eq!(p.to_string(), "x1*x2 - 1/2*x3");
        assert_eq!(x(0).scale(&GaussRat::i()).to_string(), "I*x1");
    }
}
