//! Independent evaluator for conjugacy checks. Algebra elements become polynomial
//! vector fields in `(z1, w1, z2, w2)` with `w = conj(z)`; brackets come from
//! Jacobians and time rescaling is multiplication by a scalar polynomial. Nothing
//! here uses the structure constants of the algebra.

use nfc_algebra::{GaussRat, RatFn};
use nfc_core::{BasisElem, GeneratorStep, LVec, PhasePoly, TimeGen};

/// Components along `d/dz1, d/dw1, d/dz2, d/dw2`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub comps: [PhasePoly; 4],
}

/// `c (z1 w1)^m (z2 w2)^n`.
fn rho(m: u32, n: u32, c: &RatFn) -> PhasePoly {
    PhasePoly::monomial([m, m, n, n], c.clone())
}

impl VectorField {
    pub fn zero(nvars: usize) -> Self {
        VectorField { comps: std::array::from_fn(|_| PhasePoly::zero(nvars)) }
    }

    /// `c * e` as a vector field.
    pub fn basis(nvars: usize, e: BasisElem, c: &RatFn) -> Self {
        let (m, n) = e.indices();
        let r = rho(m, n, c);
        let coord = |i| r.mul(&PhasePoly::coordinate(nvars, i));
        let i = GaussRat::i();
        let mi = -GaussRat::i();
        let zero = || PhasePoly::zero(nvars);
        let comps = match e {
            BasisElem::E(..) => [coord(0), coord(1), coord(2), coord(3)],
            BasisElem::Theta1(..) => [coord(0).scale_gauss(&i), coord(1).scale_gauss(&mi), zero(), zero()],
            BasisElem::Theta2(..) => [zero(), zero(), coord(2).scale_gauss(&i), coord(3).scale_gauss(&mi)],
        };
        VectorField { comps }
    }

    pub fn from_lvec(v: &LVec) -> Self {
        v.iter().fold(VectorField::zero(v.nvars()), |acc, (e, c)| acc.add(&VectorField::basis(v.nvars(), *e, c)))
    }

    pub fn add(&self, o: &VectorField) -> Self {
        VectorField { comps: std::array::from_fn(|k| self.comps[k].add(&o.comps[k])) }
    }

    pub fn scale(&self, c: &RatFn) -> Self {
        VectorField { comps: std::array::from_fn(|k| self.comps[k].scale(c)) }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(PhasePoly::is_zero)
    }

    pub fn truncate(&self, degree: u32) -> Self {
        VectorField { comps: std::array::from_fn(|k| self.comps[k].truncate(degree)) }
    }

    /// `DX . Y - DY . X`, the sign convention of the algebra.
    pub fn bracket(&self, y: &VectorField, degree: u32) -> Self {
        let apply = |a: &VectorField, b: &VectorField, k: usize| {
            (0..4).fold(PhasePoly::zero(a.comps[0].nvars()), |acc, v| {
                acc.add(&a.comps[k].derivative(v).mul_truncated(&b.comps[v], degree))
            })
        };
        VectorField { comps: std::array::from_fn(|k| apply(self, y, k).sub(&apply(y, self, k))) }
    }

    pub fn times(&self, t: &PhasePoly, degree: u32) -> Self {
        VectorField { comps: std::array::from_fn(|k| self.comps[k].mul_truncated(t, degree)) }
    }
}

pub fn time_scalar(t: &TimeGen) -> PhasePoly {
    t.iter().fold(PhasePoly::zero(t.nvars()), |acc, (&(m, n), c)| acc.add(&rho(m, n, c)))
}

/// `exp(L) v` with `L(u) = T u + [S, u]`, truncated at polynomial degree `degree`.
pub fn exp_action(s: &VectorField, t: &PhasePoly, v: &VectorField, degree: u32) -> VectorField {
    let mut acc = v.truncate(degree);
    let mut term = acc.clone();
    let nvars = v.comps[0].nvars();
    for j in 1.. {
        let next = s.bracket(&term, degree).add(&term.times(t, degree));
        term = next.truncate(degree).scale(&RatFn::from_frac(nvars, 1, j));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    acc
}

/// Replays `steps` on `v`. Index sums up to `n` correspond to degrees up to `2n + 1`.
pub fn replay(v: &LVec, steps: &[GeneratorStep], n: u32) -> VectorField {
    let degree = 2 * n + 1;
    steps.iter().fold(VectorField::from_lvec(v).truncate(degree), |acc, step| {
        exp_action(&VectorField::from_lvec(&step.state), &time_scalar(&step.time), &acc, degree)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> RatFn {
        RatFn::from_int(0, v)
    }

    fn field(e: BasisElem) -> VectorField {
        VectorField::basis(0, e, &c(1))
    }

    #[test]
    fn eulerian_brackets_match_the_algebra() {
        let b = field(BasisElem::E(1, 0)).bracket(&field(BasisElem::E(0, 2)), 20);
        assert_eq!(b, VectorField::basis(0, BasisElem::E(1, 2), &c(2 * (1 - 2))));
        let b = field(BasisElem::Theta1(1, 0)).bracket(&field(BasisElem::E(0, 1)), 20);
        assert_eq!(b, VectorField::basis(0, BasisElem::Theta1(1, 1), &c(2)));
        let b = field(BasisElem::Theta2(2, 0)).bracket(&field(BasisElem::Theta1(0, 1)), 20);
        assert!(b.is_zero());
    }

    #[test]
    fn rescaling_multiplies() {
        let t = rho(1, 0, &c(3));
        let v = field(BasisElem::Theta2(0, 1)).times(&t, 20);
        assert_eq!(v, VectorField::basis(0, BasisElem::Theta2(1, 1), &c(3)));
    }
}
