//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for every coefficient in the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_int(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// Parses `"p/q"`, `"-p/q"` or an integer string.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Formats as `"p/q"`, or as a bare integer when the denominator is one.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Lossy decimal rendering, only for human-facing summaries.
pub fn decimal(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6"), Some(q_frac(1, 2)));
        assert_eq!(parse_q("-4"), Some(q(-4)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
        assert_eq!(format_q(&q_frac(-2, 4)), "-1/2");
        assert_eq!(format_q(&q(7)), "7");
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [q_frac(1, 4), q_frac(1, 6), q(3)];
        assert_eq!(common_denominator(v.iter()), BigInt::from(12));
    }
}
