//! First-level normalization of `v0 + E_f` by iterated generators `h_k` and the
//! closed-form Eulerian pushforward.

use nfc_algebra::{GaussRat, Poly, RatFn};

use crate::lie::{BasisElem, LVec};
use crate::phase::{exps_degree, is_resonant, PhaseExps, PhasePoly};
use crate::NfcError;

/// The linear frequencies `w1`, `w2`, symbolic or numeric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frequencies {
    pub w1: RatFn,
    pub w2: RatFn,
}

impl Frequencies {
    pub fn new(w1: RatFn, w2: RatFn) -> Self {
        Frequencies { w1, w2 }
    }

    /// `(i1-j1) w1 + (i2-j2) w2` for the monomial `z1^i1 w1^j1 z2^i2 w2^j2`.
    pub fn eigenvalue(&self, e: &PhaseExps) -> RatFn {
        let k1 = e[0] as i64 - e[1] as i64;
        let k2 = e[2] as i64 - e[3] as i64;
        let n = self.w1.nvars();
        self.w1.mul(&RatFn::from_int(n, k1)).add(&self.w2.mul(&RatFn::from_int(n, k2)))
    }

    pub fn linear_part(&self) -> LVec {
        LVec::linear_part(&self.w1, &self.w2)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstLevelOutput {
    /// `v0 + sum b(k-j,j) E(k-j,j)` for `1 <= k <= n`.
    pub normal_form: LVec,
    /// `h_1, ..., h_(2n-1)`.
    pub generators: Vec<PhasePoly>,
    /// `2n`.
    pub truncation_degree: u32,
    /// The Eulerian scalar after the last step, truncated at `2n`.
    pub field: PhasePoly,
}

/// Substitutes `x = (z+w)/2`, `y = (z-w)/(2I)` into a polynomial in `(x1, y1, x2, y2)`,
/// keeping total degree at most `max_degree`.
pub fn real_to_complex(f: &PhasePoly, max_degree: u32) -> PhasePoly {
    let n = f.nvars();
    let half = GaussRat::from_frac(1, 2);
    let half_i = &GaussRat::i() * &half;
    let lin = |zi: usize, cz: &GaussRat, cw: &GaussRat| -> PhasePoly {
        PhasePoly::coordinate(n, zi).scale_gauss(cz).add(&PhasePoly::coordinate(n, zi + 1).scale_gauss(cw))
    };
    let coords = [
        lin(0, &half, &half),
        lin(0, &-half_i.clone(), &half_i),
        lin(2, &half, &half),
        lin(2, &-half_i.clone(), &half_i),
    ];
    let max_exp = f.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
    let powers: Vec<Vec<PhasePoly>> = coords
        .iter()
        .map(|c| {
            let mut ps = vec![PhasePoly::constant(RatFn::one(n))];
            for k in 1..=max_exp {
                let next = ps[k - 1].mul_truncated(c, max_degree);
                ps.push(next);
            }
            ps
        })
        .collect();
    let mut out = PhasePoly::zero(n);
    for (e, c) in f.iter() {
        if exps_degree(e) > max_degree {
            continue;
        }
        let mut term = PhasePoly::constant(c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = term.mul_truncated(&powers[i][k as usize], max_degree);
            }
        }
        out = out.add(&term);
    }
    out
}

/// The generator that removes the non-resonant degree-`k` part of `f_prev`.
pub fn generator_h(f_prev: &PhasePoly, k: u32, freq: &Frequencies) -> Result<PhasePoly, NfcError> {
    let n = f_prev.nvars();
    let i = RatFn::constant(n, GaussRat::i());
    let mut h = PhasePoly::zero(n);
    for (e, c) in f_prev.iter() {
        if exps_degree(e) != k || is_resonant(e) {
            continue;
        }
        let den = freq.eigenvalue(e);
        if den.is_zero() {
            return Err(NfcError::ResonantDenominator { exps: *e });
        }
        h.add_term(*e, &i.mul(c).div(&den)?);
    }
    Ok(h)
}

/// Derivative of `h` along the linear rotation `v0`:
/// `I w1 (z1 dh/dz1 - w1 dh/dw1) + I w2 (z2 dh/dz2 - w2 dh/dw2)`.
pub fn rotation_derivative(h: &PhasePoly, freq: &Frequencies) -> PhasePoly {
    let i = RatFn::constant(h.nvars(), GaussRat::i());
    h.map_coeffs(|e, c| c.mul(&freq.eigenvalue(e)).mul(&i))
}

/// `f + <grad h, v0> + sum_i sum_m (1/m!) prod_{j=2}^{m+1} ((j-m)k - i) h^m f_i`,
/// truncated at total degree `max_degree`.
pub fn pushforward(f_prev: &PhasePoly, hk: &PhasePoly, k: u32, max_degree: u32, freq: &Frequencies) -> PhasePoly {
    let n = f_prev.nvars();
    let mut out = f_prev.add(&rotation_derivative(hk, freq)).truncate(max_degree);
    if hk.is_zero() || k == 0 {
        return out;
    }
    let mut h_powers = vec![PhasePoly::constant(RatFn::one(n))];
    for i in 0..=max_degree.saturating_sub(k) {
        let fi = f_prev.homogeneous_part(i);
        if fi.is_zero() {
            continue;
        }
        for m in 1..=(max_degree - i) / k {
            let factor = pushforward_factor(k as i64, i as i64, m as i64);
            if factor.is_zero() {
                continue;
            }
            while h_powers.len() <= m as usize {
                let next = h_powers.last().expect("nonempty").mul_truncated(hk, max_degree);
                h_powers.push(next);
            }
            let term = h_powers[m as usize].mul_truncated(&fi, max_degree);
            out = out.add(&term.scale_gauss(&factor));
        }
    }
    out
}

fn pushforward_factor(k: i64, i: i64, m: i64) -> GaussRat {
    let mut num: i64 = 1;
    let mut den: i64 = 1;
    for j in 2..=m + 1 {
        num *= (j - m) * k - i;
    }
    for t in 1..=m {
        den *= t;
    }
    GaussRat::from_frac(num, den)
}

/// Coefficient of `z1^(k-j) w1^(k-j) z2^j w2^j` in `f`. Every monomial of degree
/// below `2k` must already be resonant.
pub fn extract_coeff(f: &PhasePoly, k: u32, j: u32) -> Result<RatFn, NfcError> {
    if let Some((e, _)) = f.iter().find(|(e, _)| exps_degree(e) < 2 * k && !is_resonant(e)) {
        return Err(NfcError::NormalizationIncomplete { degree: exps_degree(e) });
    }
    Ok(f.coeff(&[k - j, k - j, j, j]))
}

/// Runs the normalization loop on a real Eulerian scalar `f(x1, y1, x2, y2)`.
pub fn first_level(f_real: &PhasePoly, n: u32, freq: &Frequencies) -> Result<FirstLevelOutput, NfcError> {
    if !f_real.coeff(&[0; 4]).is_zero() {
        return Err(NfcError::ConstantPart);
    }
    let degree = 2 * n;
    let f = real_to_complex(f_real, degree);
    first_level_complex(&f, n, freq)
}

/// Same as [`first_level`] for an input already in complex coordinates.
pub fn first_level_complex(f0: &PhasePoly, n: u32, freq: &Frequencies) -> Result<FirstLevelOutput, NfcError> {
    if !f0.coeff(&[0; 4]).is_zero() {
        return Err(NfcError::ConstantPart);
    }
    let degree = 2 * n;
    let mut f = f0.truncate(degree);
    let mut generators = Vec::new();
    for k in 1..degree {
        let h = generator_h(&f, k, freq)?;
        if !h.is_zero() {
            f = pushforward(&f, &h, k, degree, freq);
        }
        generators.push(h);
    }
    let mut normal_form = freq.linear_part();
    for k in 1..=n {
        for j in 0..=k {
            let b = extract_coeff(&f, k, j)?;
            normal_form.add_term(BasisElem::E(k - j, j), &b);
        }
    }
    Ok(FirstLevelOutput { normal_form, generators, truncation_degree: degree, field: f })
}

/// Drops the parts of every coefficient whose degree in the parameter symbols
/// `params` exceeds `max_mu`. Coefficients must have parameter-free denominators.
pub fn truncate_params(f: &PhasePoly, params: &[usize], max_mu: u32) -> PhasePoly {
    let keep = |c: &RatFn| -> RatFn {
        let terms = c.num().terms().iter().filter(|(mono, _)| params.iter().map(|&i| mono.exps()[i] as u32).sum::<u32>() <= max_mu).cloned();
        let num = Poly::from_terms(c.nvars(), terms);
        RatFn::new(num, c.den().clone()).expect("denominator of a canonical value is nonzero")
    };
    f.map_coeffs(|_, c| keep(c))
}

/// First level of a parameter-dependent Eulerian scalar. The parameters ride along
/// as coefficient symbols; the constant part `b00(mu)` must vanish at `mu = 0`.
/// Generators at a fixed degree re-create non-resonant terms of higher parameter
/// degree through `b00(mu)`, so the sweep is repeated `max_mu + 1` times.
pub fn parametric_first_level(f_real: &PhasePoly, n: u32, params: &[usize], max_mu: u32, freq: &Frequencies) -> Result<FirstLevelOutput, NfcError> {
    let degree = 2 * n;
    let f = truncate_params(&real_to_complex(f_real, degree), params, max_mu);
    let at_zero: Vec<Option<GaussRat>> =
        (0..f.nvars()).map(|i| params.contains(&i).then(GaussRat::zero)).collect();
    if !f.coeff(&[0; 4]).substitute(&at_zero)?.is_zero() {
        return Err(NfcError::ConstantPart);
    }
    let mut f = f.truncate(degree);
    let mut generators = Vec::new();
    for _ in 0..=max_mu {
        for k in 1..degree {
            let h = generator_h(&f, k, freq)?;
            if !h.is_zero() {
                f = truncate_params(&pushforward(&f, &h, k, degree, freq), params, max_mu);
            }
            generators.push(h);
        }
    }
    let mut normal_form = freq.linear_part();
    normal_form.add_term(BasisElem::E(0, 0), &f.coeff(&[0; 4]));
    for k in 1..=n {
        for j in 0..=k {
            let b = extract_coeff(&f, k, j)?;
            normal_form.add_term(BasisElem::E(k - j, j), &b);
        }
    }
    Ok(FirstLevelOutput { normal_form, generators, truncation_degree: degree, field: f })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn freq() -> Frequencies {
        Frequencies::new(RatFn::var(2, 0), RatFn::var(2, 1))
    }

    fn c(v: i64) -> RatFn {
        RatFn::from_int(2, v)
    }

    #[test]
    fn real_to_complex_examples() {
        let x1 = PhasePoly::monomial([1, 0, 0, 0], c(1));
        let z = real_to_complex(&x1, 4);
        assert_eq!(z.coeff(&[1, 0, 0, 0]), RatFn::from_frac(2, 1, 2));
        assert_eq!(z.coeff(&[0, 1, 0, 0]), RatFn::from_frac(2, 1, 2));
        let r = PhasePoly::from_terms(2, [([2, 0, 0, 0], c(1)), ([0, 2, 0, 0], c(1))]);
        assert_eq!(real_to_complex(&r, 4), PhasePoly::monomial([1, 1, 0, 0], c(1)));
    }

    #[test]
    fn resonant_monomials_give_no_generator() {
        let f = PhasePoly::monomial([1, 1, 0, 0], c(3));
        assert!(generator_h(&f, 2, &freq()).unwrap().is_zero());
    }

    #[test]
    fn first_generator_cancels_linear_part() {
        let f = PhasePoly::from_terms(2, [([1, 0, 0, 0], c(2)), ([0, 1, 0, 0], c(5)), ([0, 0, 1, 0], c(-1)), ([0, 0, 0, 1], c(7))]);
        let h = generator_h(&f, 1, &freq()).unwrap();
        let i = RatFn::constant(2, GaussRat::i());
        assert_eq!(h.coeff(&[1, 0, 0, 0]), i.mul(&c(2)).div(&RatFn::var(2, 0)).unwrap());
        assert_eq!(h.coeff(&[0, 1, 0, 0]), i.mul(&c(5)).div(&RatFn::var(2, 0)).unwrap().neg());
        assert_eq!(rotation_derivative(&h, &freq()), f.neg());
    }

    #[test]
    fn zero_input_stays_zero() {
        let out = first_level(&PhasePoly::zero(2), 3, &freq()).unwrap();
        assert_eq!(out.normal_form, freq().linear_part());
        assert!(out.field.is_zero());
    }

    #[test]
    fn constant_part_is_rejected() {
        let f = PhasePoly::constant(c(1));
        assert_eq!(first_level(&f, 2, &freq()), Err(NfcError::ConstantPart));
    }

    #[test]
    fn numeric_resonance_is_reported() {
        let f = PhasePoly::monomial([1, 0, 0, 1], c(1));
        let resonant = Frequencies::new(c(1), c(1));
        assert!(matches!(generator_h(&f, 2, &resonant), Err(NfcError::ResonantDenominator { .. })));
    }

    #[test]
    fn extraction_requires_lower_degrees_resonant() {
        let f = PhasePoly::monomial([1, 0, 0, 0], c(1));
        assert!(extract_coeff(&f, 1, 0).is_err());
        assert!(extract_coeff(&PhasePoly::zero(2), 2, 1).unwrap().is_zero());
    }
}
