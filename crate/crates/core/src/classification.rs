//! Structural invariants of a first-level normal form and the band matrices of the
//! homological maps on Eulerian terms.

use std::collections::BTreeMap;
use std::fmt;

use nfc_algebra::{rf_rank, RFMatrix, RatFn};

use crate::lie::{BasisElem, Family, LVec};
use crate::NfcError;

/// A grade index that is either found or known to be absent up to a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(u32),
    /// No witness up to the given grade. Never read as a proven infinity.
    UnresolvedBeyond(u32),
}

impl ExtNat {
    pub fn finite(self) -> Option<u32> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::UnresolvedBeyond(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::UnresolvedBeyond(n) => write!(f, "unresolved up to {n}"),
        }
    }
}

/// Which family of transformations is available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    State,
    Orbital,
    Parametric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub s: ExtNat,
    pub p: ExtNat,
    pub r: ExtNat,
    pub q: ExtNat,
    pub s1: ExtNat,
    pub p1: ExtNat,
    pub s2: ExtNat,
    pub p2: ExtNat,
    /// `rank [M_r^s  M_s^r]` when `s` and `r` are finite.
    pub alpha: Option<usize>,
    /// Schur-complement ranks by `l`.
    pub u_table: BTreeMap<u32, usize>,
    pub generic_gate: bool,
}

impl Classification {
    pub fn unresolved(n: u32) -> Self {
        let u = ExtNat::UnresolvedBeyond(n);
        Classification { s: u, p: u, r: u, q: u, s1: u, p1: u, s2: u, p2: u, alpha: None, u_table: BTreeMap::new(), generic_gate: false }
    }
}

/// Least grade `m` in `range` having a nonzero coefficient of `family`, and the least
/// second index at that grade.
fn first_nonzero(v: &LVec, family: Family, range: impl Iterator<Item = u32>, n: u32) -> (ExtNat, ExtNat) {
    for m in range {
        if let Some(j) = (0..=m).find(|&j| !v.coeff(&BasisElem::new(family, m - j, j)).is_zero()) {
            return (ExtNat::Finite(m), ExtNat::Finite(j));
        }
    }
    (ExtNat::UnresolvedBeyond(n), ExtNat::UnresolvedBeyond(n))
}

/// `s` = least grade with a nonzero Eulerian coefficient, `p` = least second index there.
pub fn detect_s_p(v: &LVec, n: u32) -> (ExtNat, ExtNat) {
    first_nonzero(v, Family::E, 1..=n, n)
}

/// As [`detect_s_p`] restricted to grades above `s`.
pub fn detect_r_q(v: &LVec, s: u32, n: u32) -> (ExtNat, ExtNat) {
    first_nonzero(v, Family::E, s + 1..=n, n)
}

/// `s_i`, `p_i` over the coefficients of `Theta^i`, `i` in `{1, 2}`.
pub fn detect_si_pi(v: &LVec, i: u8, n: u32) -> (ExtNat, ExtNat) {
    let family = if i == 1 { Family::Theta1 } else { Family::Theta2 };
    first_nonzero(v, family, 1..=n, n)
}

/// Eulerian coefficients `(b[d,0], b[d-1,1], ..., b[0,d])` of grade `d`.
pub fn grade_coeffs(v: &LVec, d: u32) -> Vec<RatFn> {
    (0..=d).map(|j| v.coeff(&BasisElem::E(d - j, j))).collect()
}

/// Band matrix `M_d^c`: `(d + c + 1) x (c + 1)`, column `j` holds the coefficient
/// vector shifted down by `j` rows.
pub fn conv_matrix(coeffs: &[RatFn], cols: usize, nvars: usize) -> RFMatrix {
    let d = coeffs.len().saturating_sub(1);
    let mut m = RFMatrix::zeros(d + cols, cols, nvars);
    for j in 0..cols {
        for (i, c) in coeffs.iter().enumerate() {
            m.set(i + j, j, c.clone());
        }
    }
    m
}

fn scaled_band(coeffs: &[RatFn], cols: usize, nvars: usize, k: i64) -> RFMatrix {
    conv_matrix(coeffs, cols, nvars).scale(&RatFn::from_int(nvars, k))
}

/// Matrix of the Eulerian part of the grade-`r+s` homological map at level `r+1`:
/// `[2(s-r) M_r^s | 2(r-s) M_s^r]`.
pub fn assemble_d_rs(b_s: &[RatFn], b_r: &[RatFn], nvars: usize) -> RFMatrix {
    let (s, r) = ((b_s.len() - 1) as i64, (b_r.len() - 1) as i64);
    let left = scaled_band(b_r, s as usize + 1, nvars, 2 * (s - r));
    let right = scaled_band(b_s, r as usize + 1, nvars, 2 * (r - s));
    left.hstack(&right).expect("equal row counts")
}

/// The same map with the `b_s` band first and the scalar factors dropped, the layout
/// in which the matrix is usually displayed. Rank and kernel agree with
/// [`assemble_d_rs`] up to column order.
pub fn display_d_rs(b_s: &[RatFn], b_r: &[RatFn], nvars: usize) -> RFMatrix {
    let (s, r) = (b_s.len() - 1, b_r.len() - 1);
    conv_matrix(b_s, r + 1, nvars).hstack(&conv_matrix(b_r, s + 1, nvars)).expect("equal row counts")
}

/// `[2(s-r) M_r^l | M_s^(l+r-s)]`, the reduced orbital map at grade `l+r`.
pub fn assemble_block(b_s: &[RatFn], b_r: &[RatFn], l: u32, nvars: usize) -> RFMatrix {
    let (s, r) = (b_s.len() as u32 - 1, b_r.len() as u32 - 1);
    let left = scaled_band(b_r, l as usize + 1, nvars, 2 * (s as i64 - r as i64));
    let right = conv_matrix(b_s, (l + r - s) as usize + 1, nvars);
    left.hstack(&right).expect("equal row counts")
}

/// How the block matrix `[b_r band | b_s band]` is split into `A B; C D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionRecipe {
    /// `p > q`: drop the first `p` rows and the first `p-q` columns of the `b_r`
    /// band; `B` is the `b_s` band, lower triangular with diagonal `b[s-p,p]`.
    LowerPivot,
    /// `p <= q`: drop the first `q` rows and the first `q-p` columns of the `b_s`
    /// band; `B` is the `b_r` band, lower triangular with diagonal `b[r-q,q]`.
    UpperPivot,
}

/// Recipe for the relative position of `p` and `q`. The state (`l = s`), orbital and
/// parametric maps share the block layout, so the mode only fixes `l` and scalars.
pub fn recipe_for(p: u32, q: u32) -> PartitionRecipe {
    if p > q {
        PartitionRecipe::LowerPivot
    } else {
        PartitionRecipe::UpperPivot
    }
}

/// Index sets of an `A B; C D` split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub b_rows: Vec<usize>,
    pub c_rows: Vec<usize>,
    pub a_cols: Vec<usize>,
    pub b_cols: Vec<usize>,
}

/// Partition of `[b_r band (l+1 columns) | b_s band (l+r-s+1 columns)]`.
pub fn partition(recipe: PartitionRecipe, s: u32, p: u32, r: u32, q: u32, l: u32) -> Partition {
    let (rows, cr, cs) = ((l + r + 1) as usize, (l + 1) as usize, (l + r - s + 1) as usize);
    let (p, q) = (p as usize, q as usize);
    let r_band = |j: usize| j;
    let s_band = |j: usize| cr + j;
    match recipe {
        PartitionRecipe::LowerPivot => {
            let drop = (p - q).min(cr);
            let top = p;
            let b_rows: Vec<usize> = (top..(top + cs).min(rows)).collect();
            Partition {
                c_rows: ((top + cs).min(rows)..rows).collect(),
                b_rows,
                a_cols: (drop..cr).map(r_band).collect(),
                b_cols: (0..cs).map(s_band).collect(),
            }
        }
        PartitionRecipe::UpperPivot => {
            let drop = (q - p).min(cs);
            let top = q;
            Partition {
                b_rows: (top..(top + cr).min(rows)).collect(),
                c_rows: ((top + cr).min(rows)..rows).collect(),
                a_cols: (drop..cs).map(s_band).collect(),
                b_cols: (0..cr).map(r_band).collect(),
            }
        }
    }
}

/// `rank(C - D B^-1 A)` for the given split of `m`.
pub fn schur_u(m: &RFMatrix, part: &Partition, pivot_name: &str) -> Result<usize, NfcError> {
    let b = m.select(&part.b_rows, &part.b_cols);
    let b_inv = b.inverse().ok_or_else(|| NfcError::PivotVanished { name: pivot_name.to_string() })?;
    if part.c_rows.is_empty() || part.a_cols.is_empty() {
        return Ok(0);
    }
    let a = m.select(&part.b_rows, &part.a_cols);
    let c = m.select(&part.c_rows, &part.a_cols);
    let d = m.select(&part.c_rows, &part.b_cols);
    Ok(rf_rank(&schur_complement(&a, &b_inv, &c, &d)?))
}

/// `C - D B^-1 A` given `B^-1`.
pub fn schur_complement(a: &RFMatrix, b_inv: &RFMatrix, c: &RFMatrix, d: &RFMatrix) -> Result<RFMatrix, NfcError> {
    Ok(c.sub(&d.mul(b_inv)?.mul(a)?)?)
}

/// `u_l` for the block matrix `[2(s-r) M_r^l | M_s^(l+r-s)]`.
pub fn u_for_level(b_s: &[RatFn], b_r: &[RatFn], p: u32, q: u32, l: u32, nvars: usize) -> Result<usize, NfcError> {
    let (s, r) = (b_s.len() as u32 - 1, b_r.len() as u32 - 1);
    let recipe = recipe_for(p, q);
    if recipe == PartitionRecipe::LowerPivot && l < p - q {
        return Ok(0);
    }
    let m = assemble_block(b_s, b_r, l, nvars);
    let name = match recipe {
        PartitionRecipe::LowerPivot => format!("b[{},{}]", s - p, p),
        PartitionRecipe::UpperPivot => format!("b[{},{}]", r - q, q),
    };
    schur_u(&m, &partition(recipe, s, p, r, q, l), &name)
}

/// Predicted `rank [M_r^l  M_s^(l+r-s)]` given `alpha = rank [M_r^s  M_s^r]`.
pub fn rank_predict(l: u32, alpha: usize, r: u32, s: u32) -> usize {
    let (l, r, s) = (l as i64, r as i64, s as i64);
    let alpha = alpha as i64;
    let v = if l <= alpha - r - 2 { 2 * l + r - s + 2 } else { alpha + l - s };
    v as usize
}

/// Predicted `u_l` for `p > q`.
pub fn u_predict(l: u32, alpha: usize, r: u32, p: u32, q: u32) -> usize {
    let (l, r, p, q, alpha) = (l as i64, r as i64, p as i64, q as i64, alpha as i64);
    let v = if l < p - q {
        0
    } else if l <= alpha - r - 2 {
        l + 1 - p + q
    } else {
        alpha - r - 1 - p + q
    };
    v.max(0) as usize
}

/// `rank [M_r^s  M_s^r]`.
pub fn alpha_rank(b_s: &[RatFn], b_r: &[RatFn], nvars: usize) -> usize {
    let (s, r) = (b_s.len() - 1, b_r.len() - 1);
    let m = conv_matrix(b_r, s + 1, nvars).hstack(&conv_matrix(b_s, r + 1, nvars)).expect("equal row counts");
    rf_rank(&m)
}

/// The generic condition `b01^2 b20 - b01 b10 b11 + b02 b10^2 != 0`.
pub fn generic_gate(b10: &RatFn, b01: &RatFn, b11: &RatFn, b20: &RatFn, b02: &RatFn) -> bool {
    !generic_expression(b10, b01, b11, b20, b02).is_zero()
}

pub fn generic_expression(b10: &RatFn, b01: &RatFn, b11: &RatFn, b20: &RatFn, b02: &RatFn) -> RatFn {
    b01.mul(b01).mul(b20).sub(&b01.mul(b10).mul(b11)).add(&b02.mul(b10).mul(b10))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> RatFn {
        RatFn::from_int(0, v)
    }

    fn q(n: i64, d: i64) -> RatFn {
        RatFn::from_frac(0, n, d)
    }

    #[test]
    fn band_matrix_shape() {
        let m = conv_matrix(&[c(1), c(2)], 3, 0);
        assert_eq!((m.rows(), m.cols()), (4, 3));
        assert_eq!(m.get(1, 0), &c(2));
        assert_eq!(m.get(1, 1), &c(1));
        assert_eq!(m.get(3, 2), &c(2));
        assert!(m.get(3, 0).is_zero());
    }

    #[test]
    fn worked_example_partition() {
        let b_s = [c(1), c(1), q(1, 4)];
        let b_r = [c(0), c(0), c(2), c(1)];
        let m = assemble_block(&b_s, &b_r, 2, 0);
        assert_eq!(rf_rank(&m), 5);
        let part = partition(PartitionRecipe::UpperPivot, 2, 0, 3, 2, 2);
        assert_eq!(part.b_rows, vec![2, 3, 4]);
        assert_eq!(part.c_rows, vec![5]);
        assert_eq!(schur_u(&m, &part, "b").unwrap(), 0);
    }

    #[test]
    fn vanishing_pivot_is_reported() {
        let b_s = [c(0), c(1)];
        let b_r = [c(1), c(0), c(1)];
        let m = assemble_block(&b_s, &b_r, 1, 0);
        let part = partition(PartitionRecipe::LowerPivot, 1, 0, 2, 0, 1);
        assert!(matches!(schur_u(&m, &part, "b[1,0]"), Err(NfcError::PivotVanished { .. })));
    }

    #[test]
    fn gate() {
        assert!(generic_gate(&c(1), &c(0), &c(0), &c(0), &c(1)));
        assert!(!generic_gate(&c(0), &c(0), &c(0), &c(0), &c(0)));
    }

    #[test]
    fn detection() {
        let mut v = LVec::zero(0);
        v.add_term(BasisElem::E(0, 1), &c(3));
        v.add_term(BasisElem::E(2, 0), &c(1));
        assert_eq!(detect_s_p(&v, 4), (ExtNat::Finite(1), ExtNat::Finite(1)));
        assert_eq!(detect_r_q(&v, 1, 4), (ExtNat::Finite(2), ExtNat::Finite(0)));
        assert_eq!(detect_r_q(&v, 2, 4), (ExtNat::UnresolvedBeyond(4), ExtNat::UnresolvedBeyond(4)));
        v.add_term(BasisElem::Theta1(2, 1), &c(1));
        assert_eq!(detect_si_pi(&v, 1, 4), (ExtNat::Finite(3), ExtNat::Finite(1)));
    }
}
