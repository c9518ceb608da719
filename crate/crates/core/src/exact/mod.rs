//! Exact arithmetic: rationals, polynomials and rational functions in `q`.
//!
//! Nothing in this module rounds. [`QRationalFunction`] is kept in a unique
//! canonical form, so identity checks reduce to [`QRationalFunction::is_zero`].

mod intpoly;
mod modular;
mod poly;
mod ratfun;

pub use intpoly::IntPoly;
pub use poly::QPolynomial;
pub use ratfun::QRationalFunction;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type ExactRational = num_rational::BigRational;

/// Parses `"3"`, `"-2/7"` or a decimal such as `"0.333"` into an exact
/// rational (the decimal is taken literally: `0.333 = 333/1000`).
pub fn parse_rational(s: &str) -> crate::Result<ExactRational> {
    use num_bigint::BigInt;
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(ExactRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.trim_start_matches(['-', '+']).is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits == "-" || digits == "+" || digits.is_empty() {
        return Err(bad());
    } else {
        digits
    };
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        ExactRational::from_integer(n * ten.pow(shift as u32))
    } else {
        ExactRational::new(n, ten.pow(shift.unsigned_abs()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        let r = |n: i64, d: i64| ExactRational::new(n.into(), d.into());
        assert_eq!(parse_rational("0.5").unwrap(), r(1, 2));
        assert_eq!(parse_rational("0.333").unwrap(), r(333, 1000));
        assert_eq!(parse_rational("-2/6").unwrap(), r(-1, 3));
        assert_eq!(parse_rational("1e-3").unwrap(), r(1, 1000));
        assert_eq!(parse_rational(".25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        for bad in ["", "abc", "1/0", "0.5.1", "-", "1.x"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
