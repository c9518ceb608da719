//! Exact and arbitrary-precision machinery for q-analogues of accelerated
//! odd-zeta series.
//!
//! The crate is layered bottom-up:
//!
//! - [`exact`]: rationals, dense polynomials in `q`, and canonical rational
//!   functions in `q` with decidable equality.
//! - [`qobjects`]: q-integers, q-factorials, Gaussian binomials, interval
//!   products and the multiple harmonic q-sums `H_{q,k}({2}^s)`.
//! - [`identity`]: exact encodings of the finite telescoping identity and of
//!   each proof step, plus term-level transcriptions of every infinite series.
//! - [`numeric`]: binary arbitrary-precision evaluation, convergence profiling
//!   and classical (`q = 1`) limit checks.

pub mod error;
pub mod exact;
pub mod identity;
pub mod numeric;
pub mod qobjects;

pub use error::{Error, Result};
pub use exact::{ExactRational, IntPoly, QPolynomial, QRationalFunction};
pub use identity::{
    build_finite_form, series_term, verify_finite_form, verify_lemma_partial_fraction,
    verify_step_combination, verify_step_k_telescope, verify_step_s_telescope, FiniteFormOptions,
    FiniteFormSides, Sabotage, Scalar, SeriesSpec, Status, VerificationReport,
};
pub use numeric::{
    eval_exact, kl_classical_check, markov_parametric_check, remainder_decay_profile, sum_series,
    terms_to_tolerance, zeta_reference, PrecisionReal, SummationOptions, SummationResult,
};
pub use qobjects::{
    harmonic_q, harmonic_q_bruteforce, interval_product, q_binomial, q_factorial, q_int,
    HarmonicDepth,
};
