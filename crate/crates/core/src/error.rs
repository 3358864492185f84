use nfc_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NfcError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("normalization incomplete at grade {degree}")]
    NormalizationIncomplete { degree: u32 },
    #[error("resonant denominator for monomial {exps:?}: (i1-j1)w1+(i2-j2)w2 vanishes")]
    ResonantDenominator { exps: [u32; 4] },
    #[error("apply primary shift first: input has a nonzero constant part")]
    ConstantPart,
    #[error("pivot coefficient {name} vanishes")]
    PivotVanished { name: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
