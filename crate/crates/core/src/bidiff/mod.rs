//! Bilinear differential operators, their invariance defect and the exact
//! null-space oracle that classifies invariant operators.

mod calibrate;
mod generators;
mod ops;
mod oracle;

pub use calibrate::{calibrate_weight_dictionary, WeightMap};
pub use generators::{
    contact_generator, contact_generators, full_generators, raising_generators, subset, Check,
    Generator,
};
pub use ops::{ansatz, Algebra, BiDiffOp, Monomial};
pub use oracle::{
    find_violation, is_invariant, minimal_degree_bound, pgl21_sectors, solve_invariant_space,
    solve_sector, ClassificationResult, Violation,
};

pub use crate::linalg::nullspace;
