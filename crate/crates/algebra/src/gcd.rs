use crate::{GaussRat, Mono, Poly};

/// Greatest common divisor, normalized to leading coefficient 1 in graded-lex order.
/// `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_inner(a, b).monic()
}

fn gcd_inner(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    let ma = a.min_mono();
    let mb = b.min_mono();
    let mg = ma.gcd(&mb);
    let mono_part = Poly::monomial(mg, GaussRat::one());
    if a.len() == 1 || b.len() == 1 {
        return mono_part;
    }
    let a = strip_mono(a, &ma);
    let b = strip_mono(b, &mb);
    let g = gcd_no_mono(&a, &b);
    if mono_part.is_one() {
        g
    } else {
        g.mul(&mono_part)
    }
}

fn strip_mono(p: &Poly, m: &Mono) -> Poly {
    if m.is_one() {
        p.clone()
    } else {
        p.div_exact(&Poly::monomial(m.clone(), GaussRat::one())).expect("monomial content divides")
    }
}

fn gcd_no_mono(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    if a == b {
        return a.monic();
    }
    if b.total_degree() <= a.total_degree() && a.div_exact(b).is_some() {
        return b.monic();
    }
    if a.total_degree() <= b.total_degree() && b.div_exact(a).is_some() {
        return a.monic();
    }
    let mask_a = a.var_mask();
    let mask_b = b.var_mask();
    if mask_a != mask_b {
        // A variable present in only one operand cannot occur in the gcd, so that
        // operand can be replaced by its content with respect to those variables.
        let only_a = mask_a & !mask_b;
        if only_a != 0 {
            return fold_gcd(a.coeffs_wrt(only_a), b.clone());
        }
        let only_b = mask_b & !mask_a;
        return fold_gcd(b.coeffs_wrt(only_b), a.clone());
    }
    if mask_a.count_ones() == 1 {
        let v = mask_a.trailing_zeros() as usize;
        return univariate_gcd(a, b, v);
    }
    let v = (0..n)
        .filter(|&i| mask_a & (1 << i) != 0)
        .min_by_key(|&i| a.degree_in(i).max(b.degree_in(i)))
        .expect("nonconstant");
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let cont_a = content(&ca);
    let cont_b = content(&cb);
    let cont = gcd_inner(&cont_a, &cont_b);
    let pa: Vec<Poly> = ca.iter().map(|c| c.div_exact(&cont_a).expect("content divides")).collect();
    let pb: Vec<Poly> = cb.iter().map(|c| c.div_exact(&cont_b).expect("content divides")).collect();
    let g = subresultant_gcd(pa, pb);
    let g = if g.len() <= 1 {
        Poly::one(n)
    } else {
        let cg = content(&g);
        let prim: Vec<Poly> = g.iter().map(|c| c.div_exact(&cg).expect("content divides")).collect();
        Poly::from_coeffs_in(n, v, &prim)
    };
    g.mul(&cont).monic()
}

fn fold_gcd(parts: Vec<Poly>, start: Poly) -> Poly {
    let mut g = start;
    for p in parts {
        g = gcd_inner(&p, &g);
        if g.is_constant() {
            return Poly::one(g.nvars());
        }
    }
    g.monic()
}

/// Gcd of all entries, with early exit once it becomes constant.
fn content(coeffs: &[Poly]) -> Poly {
    let mut nonzero: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|p| p.len());
    let mut it = nonzero.into_iter();
    let first = it.next().expect("nonzero polynomial").monic();
    let mut g = first;
    for c in it {
        if g.is_constant() {
            break;
        }
        g = gcd_inner(c, &g);
    }
    if g.is_constant() {
        Poly::one(g.nvars())
    } else {
        g
    }
}

fn degree(p: &[Poly]) -> usize {
    p.len() - 1
}

fn trim(mut p: Vec<Poly>) -> Vec<Poly> {
    while p.len() > 1 && p.last().map(Poly::is_zero).unwrap_or(false) {
        p.pop();
    }
    p
}

fn is_zero_upoly(p: &[Poly]) -> bool {
    p.iter().all(Poly::is_zero)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = degree(b);
    let lcb = &b[db];
    let mut r = a.to_vec();
    let mut e = degree(a) as i64 - db as i64 + 1;
    while r.len() > db && !is_zero_upoly(&r) {
        let dr = degree(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lcb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&lr));
        }
        next.pop();
        r = trim(next);
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow(e as u32);
        r = r.iter().map(|c| c.mul(&f)).collect();
    }
    trim(r)
}

/// Subresultant PRS; returns the last nonzero remainder (not yet made primitive).
fn subresultant_gcd(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let n = a[0].nvars();
    let (mut a, mut b) = if degree(&a) >= degree(&b) { (a, b) } else { (b, a) };
    let mut g = Poly::one(n);
    let mut h = Poly::one(n);
    loop {
        let d = (degree(&a) - degree(&b)) as u32;
        let r = prem(&a, &b);
        if is_zero_upoly(&r) {
            return b;
        }
        if degree(&r) == 0 {
            return vec![Poly::one(n)];
        }
        let div = g.mul(&h.pow(d));
        a = b;
        b = r.iter().map(|c| c.div_exact(&div).expect("subresultant division is exact")).collect();
        g = a[degree(&a)].clone();
        h = match d {
            0 => h,
            1 => g.clone(),
            _ => g.pow(d).div_exact(&h.pow(d - 1)).expect("subresultant division is exact"),
        };
    }
}

fn univariate_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
    let n = a.nvars();
    let dense = |p: &Poly| -> Vec<GaussRat> {
        let mut out = vec![GaussRat::zero(); p.degree_in(v) as usize + 1];
        for (m, c) in p.terms() {
            out[m.exps()[v] as usize] = c.clone();
        }
        out
    };
    let mut x = dense(a);
    let mut y = dense(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !(y.len() == 1 && y[0].is_zero()) && !y.is_empty() {
        let r = urem(&x, &y);
        x = y;
        y = r;
    }
    let coeffs: Vec<Poly> = x.into_iter().map(|c| Poly::constant(n, c)).collect();
    Poly::from_coeffs_in(n, v, &coeffs).monic()
}

fn urem(a: &[GaussRat], b: &[GaussRat]) -> Vec<GaussRat> {
    let db = b.len() - 1;
    let inv = b[db].inv().expect("trimmed divisor");
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let q = &r[dr] * &inv;
        if !q.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                let t = &q * bc;
                r[i + dr - db] -= &t;
            }
        }
        r.pop();
    }
    while r.len() > 1 && r.last().map(GaussRat::is_zero).unwrap_or(false) {
        r.pop();
    }
    if r.is_empty() {
        r.push(GaussRat::zero());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn monomial_case() {
        let x = v(1, 0);
        assert_eq!(poly_gcd(&x.mul(&x), &x), x);
    }

    #[test]
    fn absorbing_zero() {
        let p = v(2, 0).scale(&GaussRat::from_int(3)).add(&Poly::one(2));
        assert_eq!(poly_gcd(&p, &Poly::zero(2)), p.monic());
        assert!(poly_gcd(&Poly::zero(2), &Poly::zero(2)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let (w1, w2) = (v(3, 0), v(3, 1));
        let q = v(3, 2).add(&w1.mul(&w2)).add(&Poly::constant(3, GaussRat::from_int(2)));
        let a = w1.mul(&w1).sub(&w2.mul(&w2)).mul(&q);
        let b = w1.sub(&w2).mul(&q);
        let g = poly_gcd(&a, &b);
        assert_eq!(g, b.monic());
    }

    #[test]
    fn coprime_multivariate() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let a = x.mul(&y).add(&z).add(&Poly::one(3));
        let b = x.mul(&x).sub(&y.mul(&z));
        assert!(poly_gcd(&a, &b).is_one());
    }

    #[test]
    fn gaussian_coefficients() {
        let x = v(1, 0);
        let i = Poly::constant(1, GaussRat::i());
        let a = x.add(&i).mul(&x.sub(&i));
        let b = x.add(&i).mul(&x.add(&Poly::one(1)));
        assert_eq!(poly_gcd(&a, &b), x.add(&i));
    }
}
