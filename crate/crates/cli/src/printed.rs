//! First-level coefficients of the quadratic Eulerian scalar as printed, used as
//! oracles by the coefficient suites. Coefficients `b[2,0]`, `b[0,2]` read the
//! printed denominator as `8 w^2`.

use nfc_algebra::{RatFn, SymbolKind, SymbolTable};
use nfc_core::{BasisElem, PhasePoly};

/// `f = a1 x1 + a2 y1 + a3 x2 + a4 y2 + a5 x1^2 + a6 x1 y1 + a7 x1 x2 + a8 x1 y2
///  + a9 y1^2 + a10 y1 x2 + a11 y1 y2 + a12 x2^2 + a13 x2 y2 + a14 y2^2`.
pub const QUADRATIC_EXPONENTS: [[u32; 4]; 14] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [2, 0, 0, 0],
    [1, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, 0, 1],
    [0, 2, 0, 0],
    [0, 1, 1, 0],
    [0, 1, 0, 1],
    [0, 0, 2, 0],
    [0, 0, 1, 1],
    [0, 0, 0, 2],
];

/// Symbols `w1, w2, a1, ..., a14`.
pub fn quadratic_symbols() -> SymbolTable {
    let names: Vec<String> = ["w1".to_string(), "w2".to_string()].into_iter().chain((1..=14).map(|i| format!("a{i}"))).collect();
    let mut t = SymbolTable::new();
    for (i, n) in names.iter().enumerate() {
        let kind = if i < 2 { SymbolKind::Frequency } else { SymbolKind::Coefficient };
        t.push(n, kind).expect("distinct names");
    }
    t
}

/// The quadratic scalar with fully symbolic coefficients.
pub fn quadratic_input(table: &SymbolTable) -> PhasePoly {
    let n = table.len();
    PhasePoly::from_terms(n, QUADRATIC_EXPONENTS.iter().enumerate().map(|(i, e)| (*e, RatFn::var(n, 2 + i))))
}

pub const LOW_ORDER: [(BasisElem, &str); 7] = [
    (BasisElem::E(1, 0), "(a5+a9)/2"),
    (BasisElem::E(0, 1), "(a12+a14)/2"),
    (
        BasisElem::E(1, 1),
        "(a11*a1*a3-a10*a4*a1-a8*a3*a2+a7*a4*a2)/(2*w1*w2)+(a3^2+a4^2)*(a5+a9)/(4*w2^2)+(a1^2+a2^2)*(a12+a14)/(4*w1^2)",
    ),
    (BasisElem::E(2, 0), "(a5*a1^2+3*a5*a2^2-2*a6*a1*a2+3*a9*a1^2+a9*a2^2)/(8*w1^2)"),
    (BasisElem::E(0, 2), "(a12*a3^2+3*a12*a4^2-2*a13*a3*a4+3*a14*a3^2+a14*a4^2)/(8*w2^2)"),
    (
        BasisElem::E(3, 0),
        "(a5+a9)*(a1^2*a6-2*a1*a2*a5+2*a1*a2*a9-a2^2*a6)/(16*w1^3)+(a1^2+a2^2)*(a1^2*a5+5*a1^2*a9-4*a1*a2*a6+5*a2^2*a5+a2^2*a9)/(16*w1^4)",
    ),
    (
        BasisElem::E(0, 3),
        "(a12+a14)*(a3^2*a13-2*a3*a4*a12+2*a3*a4*a14-a4^2*a13)/(64*w2^3)+(a3^2*a12+5*a3^2*a14-4*a3*a4*a13+5*a4^2*a12+a4^2*a14)*(a3^2+a4^2)/(64*w2^4)",
    ),
];

pub const MIXED_CUBIC: [(BasisElem, &str); 2] = [
    (
        BasisElem::E(2, 1),
        concat!(
            "3*(a1^2*(a5+3*a9)-2*a1*a2*a6+a2^2*(3*a5+a9))*(a3^2+a4^2)/(8*w2^2*(w1^2-w2^2))",
            "+(a1*a3*a11-a1*a4*a10-a2*a3*a8+a2*a4*a7)*(a1^2+a2^2)/(4*w1*w2*(w1^2-w2^2))",
            "-3*(a1^2+a2^2)^2*(a12+a14)*w2^2/(16*w1^4*(w1^2-w2^2))",
            "+(3*(a12+a14)*(a1^2+a2^2)^2-6*(a3^2+a4^2)*(a1^2*a5+3*a1^2*a9-2*a1*a2*a6+3*a2^2*a5+a2^2*a9))/(16*w1^2*(w1^2-w2^2))",
            "-(a1*a3*a11-a1*a4*a10-a2*a3*a8+a2*a4*a7)*(a1^2+a2^2)*w2/(4*w1^3*(w1^2-w2^2))",
            "+((a3*a8-a4*a7)*(3*a1*a5+5*a1*a9-a2*a6)-(a3*a11-a4*a10)*(a1*a6-5*a2*a5-3*a2*a9))/(8*w2*w1^3*(w1^2-w2^2))",
            "-(a12+a14)*(a1^2*a6-2*a1*a2*a5+2*a1*a2*a9-a2^2*a6)*w2^2/(16*w1^3*(w1^2-w2^2))",
            "+(a1^2*a6-2*a1*a2*a5+2*a1*a2*a9-a2^2*a6)*(a12+a14)/(16*w1*(w1^2-w2^2))",
            "-(a1*a2*(a7^2+a8^2-a10^2-a11^2)-(a1^2-a2^2)*(a10*a7+a8*a11))/(4*w1*(w1^2-w2^2))",
            "+(a1*a5+3*a1*a9-a2*a6)*(a3*a10+a4*a11)/(w1*4*(w1^2-w2^2))",
            "-(a3*a7+a4*a8)*(a1*a6-3*a2*a5-a2*a9)/(4*w1*(w1^2-w2^2))",
            "-((a1*a3*a8-a1*a4*a7-a2*a3*a11+a2*a4*a10)+a3*a6*(a1*a11+a2*a8)-a4*a6*(a1*a10+a2*a7))*(a5-a9)*w2/(8*w1^2*(w1^2-w2^2))",
        ),
    ),
    (
        BasisElem::E(1, 2),
        concat!(
            "3*(a3^2+a4^2)^2*(a9+a5)*w1^2/(16*w2^4*(w1^2-w2^2))",
            "-(a13*(a4^2-a3^2)+2*a4*a3*(a12-a14))*w1^2*(a9+a5)/(16*w2^3*(w1^2-w2^2))",
            "-3*((a2*a8-a1*a11)*a3+a4*(a1*a10-a2*a7))*w1*(a3^2+a4^2)/(4*w2^3*(w1^2-w2^2))",
            "+((a12-a14)*(a1*a3*a10-a1*a4*a11-a2*a3*a7+a2*a4*a8)+a3*a13*(a1*a11-a2*a8)+a4*a13*(a1*a10-a2*a7))*w1/(8*w2^2*(w1^2-w2^2))",
            "-3*a4^2*(2*a3^2-a4^2)*(a9+a5)/(16*w2^2*(w1^2-w2^2))",
            "+(a1^2+a2^2)*(3*a3^2*a12+9*a3^2*a14+6*a13*a4*a3-3*a4^2*a12-a4^2*a14)/(8*w2^2*(w1^2-w2^2))",
            "-(3*a3^2*a12+9*a3^2*a14-6*a13*a4*a3+9*a4^2*a12+3*a4^2*a14)*(a1^2+a2^2)/(8*w1^2*(w1^2-w2^2))",
            "-((a3^2-a4^2)*(a7*a8+a10*a11)+(-a7^2+a8^2-a10^2+a11^2)*a4*a3-a13*a3*(a1*a7+a2*a10)+(8*a3*a12+a13*a4)*(a1*a8+a2*a11))/(4*w2*(w1^2-w2^2))",
            "+(2*a13*(a1*a3*a11+a1*a4*a10-a2*a3*a8-a2*a4*a7)-2*a4*(5*a12+3*a14)*(a1*a11-a2*a8))/(16*w1*(w1^2-w2^2))",
            "-a3*(3*a12+5*a14)*(a1*a10-a2*a7)/(8*w1*(w1^2-w2^2))",
            "+3*((-a1*a11+a2*a8)*a3+a4*(a1*a10-a2*a7))*(a3^2+a4^2)/(4*w1*w2*(w1^2-w2^2))",
        ),
    ),
];
