//! Closed-form survivor families of the normal forms, used to check the
//! support of every engine result.

use std::collections::BTreeSet;
use std::fmt;

use crate::engine::{Field, Key};
use crate::lie::{BasisElem, Family};

/// A survivor family. Indices are the invariants that parametrize the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Display {
    /// Only the linear part.
    LinearPart,
    StateSPlus1 { s: u32, p: u32 },
    /// Eulerian part concentrated in grade `s` with nothing above it.
    StateRInfinite { s: u32, p: u32 },
    /// No Eulerian terms, first nonzero `Theta1` band at `s1`.
    ThetaS1 { s1: u32, p1: u32 },
    /// No Eulerian and no `Theta1` terms, first nonzero `Theta2` band at `s2`.
    ThetaS2 { s2: u32, p2: u32 },
    /// Generic infinite level, `b10 != 0`.
    GenericB10,
    /// Generic infinite level, `b10 = 0`, `b01 != 0`, as printed.
    GenericB01,
    OrbitalSPlus1 { s: u32, p: u32 },
    OrbitalRInfinite { s: u32, p: u32 },
    /// Orbital third level for `b10 = 0`, `b01 b20 != 0`, as printed.
    OrbitalDegenerate,
    ParametricSPlus1 { s: u32, p: u32 },
    ParametricThetaS2 { s2: u32, p2: u32 },
    /// Only parameter-dependent terms beyond the linear part.
    ParametricLinearizable,
    /// Generic parametric infinite level, `b10(0) != 0`.
    ParametricCase1,
    /// Generic parametric infinite level, `b10(0) = 0`, `b01(0) != 0`.
    ParametricCase2,
}

fn side_band(l: u32, j: u32, p: u32) -> bool {
    j < p || j > l + p
}

fn is_linear(e: BasisElem) -> bool {
    matches!(e, BasisElem::Theta1(0, 0) | BasisElem::Theta2(0, 0))
}

impl Display {
    pub fn name(&self) -> String {
        match *self {
            Display::LinearPart => "linear part only".into(),
            Display::StateSPlus1 { s, p } => format!("state s+1 level (s={s}, p={p})"),
            Display::StateRInfinite { s, p } => format!("state, r unbounded (s={s}, p={p})"),
            Display::ThetaS1 { s1, p1 } => format!("rotational only, Theta1 band (s1={s1}, p1={p1})"),
            Display::ThetaS2 { s2, p2 } => format!("rotational only, Theta2 band (s2={s2}, p2={p2})"),
            Display::GenericB10 => "generic infinite level, b10 != 0".into(),
            Display::GenericB01 => "generic infinite level, b10 = 0, b01 != 0".into(),
            Display::OrbitalSPlus1 { s, p } => format!("orbital s+1 level (s={s}, p={p})"),
            Display::OrbitalRInfinite { s, p } => format!("orbital, r unbounded (s={s}, p={p})"),
            Display::OrbitalDegenerate => "orbital third level, b10 = 0, b01 b20 != 0".into(),
            Display::ParametricSPlus1 { s, p } => format!("parametric s+1 level (s={s}, p={p})"),
            Display::ParametricThetaS2 { s2, p2 } => format!("parametric rotational only, Theta2 band (s2={s2}, p2={p2})"),
            Display::ParametricLinearizable => "parametric, linearizable at mu = 0".into(),
            Display::ParametricCase1 => "generic parametric infinite level, b10(0) != 0".into(),
            Display::ParametricCase2 => "generic parametric infinite level, b10(0) = 0, b01(0) != 0".into(),
        }
    }

    /// Whether `e` (with any parameter monomial) belongs to the family.
    pub fn allows(&self, e: BasisElem) -> bool {
        let (m, n) = e.indices();
        let (t, j) = (m + n, n);
        let fam = e.family();
        if is_linear(e) {
            return true;
        }
        match *self {
            Display::LinearPart => false,
            Display::StateSPlus1 { s, p } => match fam {
                Family::E => t == s && j >= p || t == 2 * s || t > s && side_band(t - s, j, p),
                _ => t <= s || side_band(t - s, j, p),
            },
            Display::StateRInfinite { s, p } => match fam {
                Family::E => t == s && j >= p,
                _ => t <= s || side_band(t - s, j, p),
            },
            Display::ThetaS1 { s1, p1 } => match fam {
                Family::E => false,
                Family::Theta1 => t >= s1 && side_band(t - s1, j, p1) || t == s1 && j >= p1,
                Family::Theta2 => true,
            },
            Display::ThetaS2 { s2, p2 } | Display::ParametricThetaS2 { s2, p2 } => match fam {
                Family::E => matches!(self, Display::ParametricThetaS2 { .. }),
                Family::Theta1 => false,
                Family::Theta2 => t >= s2 && side_band(t - s2, j, p2) || t == s2 && j >= p2 || {
                    matches!(self, Display::ParametricThetaS2 { .. }) && t <= s2
                },
            },
            Display::GenericB10 => match fam {
                Family::E => t == 1 || t == 2 || m == 0 && n >= 4,
                _ => t == 1 || m == 0 && n >= 2,
            },
            Display::GenericB01 => match fam {
                Family::E => e == BasisElem::E(0, 1) || n == 0 && m >= 4,
                _ => t == 1 || n == 0 && m >= 2,
            },
            Display::OrbitalSPlus1 { s, p } => match fam {
                Family::E => t == s && j >= p || t > s && side_band(t - s, j, p),
                Family::Theta1 => t == s,
                Family::Theta2 => t <= s || side_band(t - s, j, p),
            },
            Display::OrbitalRInfinite { s, p } => match fam {
                Family::E => t == s && j >= p,
                Family::Theta1 => t == s,
                Family::Theta2 => t <= s || side_band(t - s, j, p),
            },
            Display::OrbitalDegenerate => match fam {
                Family::E => e == BasisElem::E(0, 1) || e == BasisElem::E(2, 0),
                Family::Theta1 => t == 1 || n == 0 && m >= 2,
                Family::Theta2 => t == 1,
            },
            Display::ParametricSPlus1 { s, p } => match fam {
                Family::E => t <= s || side_band(t - s, j, p),
                Family::Theta1 => t == s,
                Family::Theta2 => t <= s || side_band(t - s, j, p),
            },
            Display::ParametricLinearizable => fam != Family::Theta1,
            Display::ParametricCase1 => match fam {
                Family::E => t <= 1 || e == BasisElem::E(0, 2),
                Family::Theta1 => t == 1,
                Family::Theta2 => t <= 1 || m == 0 && n >= 2,
            },
            Display::ParametricCase2 => match fam {
                Family::E => t <= 1 || e == BasisElem::E(2, 0),
                Family::Theta1 => t == 1,
                Family::Theta2 => t <= 1 || n == 0 && m >= 2,
            },
        }
    }

    /// Whether the coefficient of `e` must be parameter free.
    pub fn parameter_free(&self, e: BasisElem) -> bool {
        match *self {
            Display::ParametricSPlus1 { s, p } => e == BasisElem::Theta1(0, 0) || e == BasisElem::E(s - p, p),
            Display::ParametricThetaS2 { s2, p2 } => e == BasisElem::Theta1(0, 0) || e == BasisElem::Theta2(s2 - p2, p2),
            Display::ParametricLinearizable => e == BasisElem::Theta1(0, 0),
            Display::ParametricCase1 => e == BasisElem::Theta1(0, 0) || e == BasisElem::E(0, 2),
            Display::ParametricCase2 => e == BasisElem::Theta1(0, 0) || e == BasisElem::E(2, 0),
            _ => false,
        }
    }

    /// Whether the parameter-free part must reduce to the linear part.
    fn linear_at_zero(&self) -> bool {
        matches!(self, Display::ParametricLinearizable)
    }

    /// The family up to index sum `n`, as basis elements.
    pub fn family(&self, n: u32) -> BTreeSet<BasisElem> {
        let mut out = BTreeSet::new();
        for d in 0..=n {
            for j in 0..=d {
                for e in [BasisElem::E(d - j, j), BasisElem::Theta1(d - j, j), BasisElem::Theta2(d - j, j)] {
                    if self.allows(e) {
                        out.insert(e);
                    }
                }
            }
        }
        out
    }

    /// Keys of `field` outside the family.
    pub fn violations(&self, field: &Field) -> Vec<Key> {
        field
            .keys()
            .filter(|k| {
                let param = k.mu_degree() > 0;
                !self.allows(k.elem) || param && self.parameter_free(k.elem) || !param && self.linear_at_zero() && !is_linear(k.elem)
            })
            .cloned()
            .collect()
    }
}

impl fmt::Display for Display {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisElem::*;

    #[test]
    fn generic_family_up_to_four() {
        let fam = Display::GenericB10.family(4);
        let expected: BTreeSet<BasisElem> = [
            Theta1(0, 0), Theta2(0, 0), Theta1(1, 0), Theta1(0, 1), Theta2(1, 0), Theta2(0, 1),
            E(1, 0), E(0, 1), E(2, 0), E(1, 1), E(0, 2),
            Theta1(0, 2), Theta2(0, 2), Theta1(0, 3), Theta2(0, 3), Theta1(0, 4), Theta2(0, 4), E(0, 4),
        ]
        .into_iter()
        .collect();
        assert_eq!(fam, expected);
    }

    #[test]
    fn state_s_plus_one_bands() {
        let d = Display::StateSPlus1 { s: 2, p: 1 };
        assert!(d.allows(E(1, 1)) && d.allows(E(0, 2)) && !d.allows(E(2, 0)));
        assert!(!d.allows(E(1, 0)));
        assert!(d.allows(E(3, 1)) && d.allows(E(4, 0)));
        assert!(d.allows(E(3, 0)) && !d.allows(E(2, 1)) && !d.allows(E(1, 2)) && d.allows(E(0, 3)));
        assert!(d.allows(Theta2(1, 1)) && !d.allows(Theta2(1, 2)) && d.allows(Theta2(0, 3)));
    }

    #[test]
    fn theta_two_family() {
        let d = Display::ThetaS2 { s2: 2, p2: 0 };
        assert!(!d.allows(Theta2(1, 0)) && d.allows(Theta2(2, 0)) && d.allows(Theta2(0, 2)));
        assert!(!d.allows(Theta2(3, 0)) && d.allows(Theta2(0, 3)) && !d.allows(Theta1(2, 0)));
    }
}
