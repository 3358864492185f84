//! Normal forms of non-resonant double-Hopf vector fields with Eulerian and
//! rotational structure.

pub mod classification;
pub mod displays;
pub mod engine;
mod error;
pub mod first_level;
pub mod hypernormal;
pub mod lie;
pub mod phase;

pub use classification::{
    alpha_rank, assemble_block, assemble_d_rs, conv_matrix, detect_r_q, detect_s_p, detect_si_pi, display_d_rs, generic_expression, generic_gate, grade_coeffs, partition, rank_predict, recipe_for, schur_complement, schur_u, u_for_level, u_predict, Classification, ExtNat, Mode, Partition, PartitionRecipe,
};
pub use displays::Display;
pub use engine::{Field, GeneratorStep, Key, Truncation};
pub use error::NfcError;
pub use first_level::{
    extract_coeff, first_level, first_level_complex, generator_h, pushforward, real_to_complex, rotation_derivative,
    parametric_first_level, FirstLevelOutput, Frequencies,
};
pub use hypernormal::{
    infinite_level, level_r_plus_1, level_s_plus_1, normalize, orbital_infinite, orbital_r_plus_1, orbital_s_plus_1,
    parametric_infinite, parametric_r_plus_1, parametric_s_plus_1, symmetry_generators, LevelTag, NormalFormResult,
};
pub use lie::{
    bracket, bracket_basis, combined_action, grade_of, graded_part, project_quotient, project_radical, rescale_action,
    BasisElem, Family, Grading, LVec, TimeGen,
};
pub use phase::{PhaseExps, PhasePoly};
