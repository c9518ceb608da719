use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactRational;
use crate::identity::remainder;

/// `|remainder(N, r)|` evaluated exactly at `q0`, for `N = 1..=n_max`.
pub fn remainder_decay_profile(r: u32, q0: &ExactRational, n_max: u64) -> Result<Vec<(u64, ExactRational)>> {
    if !q0.is_positive() || *q0 >= ExactRational::one() {
        return Err(Error::Domain(format!("q must lie in (0, 1), got {q0}")));
    }
    (1..=n_max)
        .map(|n| Ok((n, remainder(n, r).eval(q0)?.abs())))
        .collect()
}

/// First `N >= from` at which the profile stops strictly decreasing, if any.
pub fn first_increase(profile: &[(u64, ExactRational)], from: u64) -> Option<u64> {
    profile
        .windows(2)
        .filter(|w| w[0].0 >= from && !w[0].1.is_zero())
        .find(|w| w[1].1 >= w[0].1)
        .map(|w| w[1].0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_shape() {
        let half = ExactRational::new(1.into(), 2.into());
        let prof = remainder_decay_profile(0, &half, 6).unwrap();
        assert_eq!(prof.len(), 6);
        assert_eq!(prof[0].1, ExactRational::new(1.into(), 6.into()));
        assert_eq!(first_increase(&prof, 1), None);
        assert!(remainder_decay_profile(0, &ExactRational::one(), 3).is_err());
    }
}
