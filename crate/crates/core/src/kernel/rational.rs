use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use super::text::ParseError;

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses an exact rational literal: `17`, `-3/4`, or a finite decimal
/// such as `0.125`. Exponent notation, `inf` and `nan` are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let t = s.trim();
    let bad = |msg: &str| ParseError {
        pos: 0,
        msg: format!("{msg}: {s:?}"),
    };
    if t.is_empty() {
        return Err(bad("empty number"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = parse_int(n.trim()).ok_or_else(|| bad("bad numerator"))?;
        let d: BigInt = parse_int(d.trim()).ok_or_else(|| bad("bad denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("bad decimal"));
        }
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if !ip_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("bad decimal"));
        }
        let whole: BigInt = format!("{ip_digits}{fp}")
            .parse()
            .map_err(|_| bad("bad decimal"))?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rational::new(whole, den);
        return Ok(if neg { -r } else { r });
    }
    parse_int(t)
        .map(Rational::from_integer)
        .ok_or_else(|| bad("not an exact rational"))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Natural log of |x| from its bit length and leading 64 bits.
///
/// Never converts the whole integer to a float, so it works for integers
/// with millions of digits. Returns `-inf` for zero.
pub fn bigint_log(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let mag = x.magnitude();
    let bits = mag.bits();
    if bits <= 64 {
        return (mag.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_u64().unwrap();
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Nearest `f64`; saturates to ±inf for out-of-range values.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let l = bigint_log(r.numer()) - bigint_log(r.denom());
        let s = if r.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
        s * l.exp()
    })
}

/// Exact square root, if `r` is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn literals() {
        assert_eq!(parse_rational("17").unwrap(), q(17, 1));
        assert_eq!(parse_rational("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("6/-4").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-2.5").unwrap(), q(-5, 2));
        for bad in ["1e-3", "inf", "nan", "1/0", "", "1.", "x", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn log_of_huge_integer_matches_decimal_estimate() {
        let x: BigInt = num_traits::pow(BigInt::from(7), 5000) + 12345;
        let l = bigint_log(&x);
        let expect = 5000.0 * 7f64.ln();
        assert!(((l - expect) / expect).abs() < 1e-13);
        assert_eq!(bigint_log(&BigInt::from(-1)), 0.0);
    }
}
