//! Exact encodings of the finite identity and its proof steps, and term-level
//! transcriptions of the infinite series.

mod finite_form;
mod proof_steps;
mod report;
mod series;

pub use finite_form::{
    build_finite_form, build_finite_form_with, lhs_term, main_term, remainder, remainder_term,
    verify_finite_form, verify_finite_form_with, FiniteFormOptions, FiniteFormSides, Sabotage,
};
pub use proof_steps::{
    combination_sides, k_telescope_sides, partial_fraction_sides, s_telescope_sides,
    verify_lemma_partial_fraction, verify_step_combination, verify_step_combination_with,
    verify_step_k_telescope, verify_step_s_telescope, verify_step_s_telescope_with,
};
pub use report::{params, Status, VerificationReport};
pub use series::{series_term, Scalar, SeriesSpec};
