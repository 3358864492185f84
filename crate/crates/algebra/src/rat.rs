use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::AlgebraError;

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type BigRat = BigRational;

/// Parses `p`, `-p` or `p/q` into a reduced rational.
pub fn parse_bigrat(text: &str) -> Result<BigRat, AlgebraError> {
    let text = text.trim();
    let bad = |msg: &str| AlgebraError::Parse { col: 1, msg: format!("{msg}: `{text}`") };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("invalid integer"))?;
    let den: BigInt = den.parse().map_err(|_| bad("invalid integer"))?;
    if den.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(BigRat::new(num, den))
}

pub(crate) fn rat_to_string(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let r = parse_bigrat("6/-4").unwrap();
        assert_eq!(r, BigRat::new((-3).into(), 2.into()));
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(rat_to_string(&r), "-3/2");
        assert_eq!(parse_bigrat("1/0"), Err(AlgebraError::DivisionByZero));
        assert!(parse_bigrat("x").is_err());
    }
}
