//! Arbitrary-precision evaluation, convergence profiling and classical limits.

mod classical;
mod profile;
mod real;
mod summation;

pub use classical::{
    classical_limit_check, kl_classical_check, markov_parametric_check, zeta_reference,
    MAX_DIRECT_TERMS,
};
pub use profile::{first_increase, remainder_decay_profile};
pub use real::{PrecisionReal, GUARD_DIGITS};
pub use summation::{
    series_agreement, sum_series, terms_to_tolerance, SummationOptions, SummationResult,
};

use crate::error::Result;
use crate::exact::{ExactRational, QRationalFunction};

/// Exact value of `f` at `q0`; a pole at `q0` is an error.
pub fn eval_exact(f: &QRationalFunction, q0: &ExactRational) -> Result<ExactRational> {
    f.eval(q0)
}
