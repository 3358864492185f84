use std::fmt;

use crate::{poly_gcd, AlgebraError, GaussRat, Poly, SymbolTable};

/// Reduced quotient of polynomials. The denominator has leading coefficient 1 and
/// shares no factor with the numerator, so equal values are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

/// Canonical representative of `num / den`.
pub fn ratfn_canonicalize(num: Poly, den: Poly) -> Result<RatFn, AlgebraError> {
    RatFn::new(num, den)
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(AlgebraError::ArityMismatch { expected: num.nvars(), found: den.nvars() });
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFn {
        let n = num.nvars();
        if num.is_zero() {
            return RatFn::zero(n);
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::normalize_lc(num, den)
    }

    fn normalize_lc(num: Poly, den: Poly) -> RatFn {
        let lc = den.lc();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.inv().expect("nonzero denominator");
            RatFn { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero(nvars: usize) -> RatFn {
        RatFn { num: Poly::zero(nvars), den: Poly::one(nvars) }
    }

    pub fn one(nvars: usize) -> RatFn {
        RatFn { num: Poly::one(nvars), den: Poly::one(nvars) }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> RatFn {
        RatFn { num: Poly::constant(nvars, c), den: Poly::one(nvars) }
    }

    pub fn from_int(nvars: usize, k: i64) -> RatFn {
        Self::constant(nvars, GaussRat::from_int(k))
    }

    pub fn from_frac(nvars: usize, p: i64, q: i64) -> RatFn {
        Self::constant(nvars, GaussRat::from_frac(p, q))
    }

    pub fn var(nvars: usize, idx: usize) -> RatFn {
        RatFn { num: Poly::var(nvars, idx), den: Poly::one(nvars) }
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let n = p.nvars();
        RatFn { num: p, den: Poly::one(n) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value if the function is a constant.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &GaussRat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.nvars());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        self.add_signed(o, false)
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add_signed(o, true)
    }

    fn add_signed(&self, o: &RatFn, negate: bool) -> RatFn {
        let on = if negate { o.num.neg() } else { o.num.clone() };
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RatFn { num: on, den: o.den.clone() };
        }
        if self.den == o.den {
            let num = self.num.add(&on);
            if self.den.is_one() {
                return RatFn { num, den: self.den.clone() };
            }
            return Self::reduce(num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFn { num: self.num.mul(&o.den).add(&on), den: o.den.clone() };
        }
        if o.den.is_one() {
            return RatFn { num: on.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = poly_gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&on.mul(&self.den));
            return Self::normalize_lc(num, self.den.mul(&o.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d1).add(&on.mul(&b1));
        if t.is_zero() {
            return RatFn::zero(self.nvars());
        }
        let g2 = poly_gcd(&t, &g);
        let (t, g) = if g2.is_one() {
            (t, g)
        } else {
            (t.div_exact(&g2).expect("gcd divides"), g.div_exact(&g2).expect("gcd divides"))
        };
        Self::normalize_lc(t, b1.mul(&d1).mul(&g))
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero(self.nvars());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFn { num: self.num.mul(&o.num), den: self.den.clone() };
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        let (a, d) = cancel(&self.num, &o.den);
        let (c, b) = cancel(&o.num, &self.den);
        Self::normalize_lc(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<RatFn, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize_lc(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFn) -> Result<RatFn, AlgebraError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> RatFn {
        RatFn { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn conj(&self) -> RatFn {
        Self::normalize_lc(self.num.conj(), self.den.conj())
    }

    /// Substitutes values for the symbols given as `Some`.
    pub fn substitute(&self, values: &[Option<GaussRat>]) -> Result<RatFn, AlgebraError> {
        RatFn::new(self.num.substitute(values), self.den.substitute(values))
    }

    /// Re-embeds into a larger symbol table (see [`Poly::remap`]).
    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> RatFn {
        Self::normalize_lc(self.num.remap(new_nvars, map), self.den.remap(new_nvars, map))
    }

    pub fn fmt_with(&self, table: &SymbolTable) -> String {
        let num = self.num.fmt_with(table);
        if self.den.is_one() {
            return num;
        }
        let wrap = |s: String, p: &Poly| if p.len() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(num, &self.num), wrap(self.den.fmt_with(table), &self.den))
    }
}

fn cancel(num: &Poly, den: &Poly) -> (Poly, Poly) {
    if den.is_one() {
        return (num.clone(), den.clone());
    }
    let g = poly_gcd(num, den);
    if g.is_one() {
        (num.clone(), den.clone())
    } else {
        (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn two_x_over_four() {
        let r = RatFn::new(x(1, 0).scale(&GaussRat::from_int(2)), Poly::constant(1, GaussRat::from_int(4))).unwrap();
        assert_eq!(r, RatFn::from_poly(x(1, 0).scale(&GaussRat::from_frac(1, 2))));
    }

    #[test]
    fn difference_of_squares_cancels() {
        let (w1, w2) = (x(2, 0), x(2, 1));
        let r = RatFn::new(w1.mul(&w1).sub(&w2.mul(&w2)), w1.sub(&w2)).unwrap();
        assert_eq!(r, RatFn::from_poly(w1.add(&w2)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFn::new(x(1, 0), Poly::zero(1)), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn field_operations() {
        let n = 2;
        let a = RatFn::new(x(n, 0), x(n, 1).add(&Poly::one(n))).unwrap();
        let b = RatFn::new(x(n, 1), x(n, 0).sub(&Poly::one(n))).unwrap();
        let s = a.add(&b);
        assert_eq!(s.sub(&b), a);
        let p = a.mul(&b);
        assert_eq!(p.div(&b).unwrap(), a);
        assert!(a.sub(&a).is_zero());
        assert!(a.div(&a).unwrap().is_one());
    }
}
