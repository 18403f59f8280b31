//! Exact arithmetic: rationals, factorial-type products, Pochhammer symbols,
//! generalized binomials and the two cyclotomic rings `Q(ω₃)` and `Q(ω₆)`.
//!
//! Hyperfactorials of half-integers involve powers of `√π`. They are carried
//! symbolically by [`SqrtPiScaled`] so that a product of hyperfactorials can
//! be checked to be free of `π` before it is turned into a rational number.

mod cyclo;
mod value;

pub use cyclo::{CycloElement, CycloRing};
pub use value::ExactValue;

use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// The rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Decimal rendering: `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` (optionally signed) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::domain(format!("cannot parse {s:?} as a rational"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Returns `Some(2r)` as an `i64` when `r` is an integer or a half-integer.
pub fn twice_as_i64(r: &Rational) -> Option<i64> {
    let t = r * BigInt::from(2);
    if t.is_integer() {
        t.to_integer().to_i64()
    } else {
        None
    }
}

/// A rational multiple of a power of `√π`: `coefficient · π^(half_pi_exponent/2)`.
///
/// Zero is canonical: a zero coefficient always has exponent zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtPiScaled {
    pub coefficient: Rational,
    pub half_pi_exponent: i64,
}

impl SqrtPiScaled {
    pub fn new(coefficient: Rational, half_pi_exponent: i64) -> Self {
        if coefficient.is_zero() {
            SqrtPiScaled { coefficient, half_pi_exponent: 0 }
        } else {
            SqrtPiScaled { coefficient, half_pi_exponent }
        }
    }

    pub fn one() -> Self {
        SqrtPiScaled::new(Rational::one(), 0)
    }

    pub fn from_rational(r: Rational) -> Self {
        SqrtPiScaled::new(r, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// Integer power; negative exponents invert (the value must be nonzero).
    pub fn pow(&self, e: i64) -> Self {
        let mut out = SqrtPiScaled::one();
        let base = if e < 0 { SqrtPiScaled::one() / self.clone() } else { self.clone() };
        for _ in 0..e.unsigned_abs() {
            out = out * base.clone();
        }
        out
    }

    /// The rational value, provided all powers of `π` have cancelled.
    pub fn into_rational(self) -> Result<Rational> {
        if self.half_pi_exponent != 0 {
            return Err(Error::domain(format!(
                "value still carries pi^({}/2)",
                self.half_pi_exponent
            )));
        }
        Ok(self.coefficient)
    }
}

impl Mul for SqrtPiScaled {
    type Output = SqrtPiScaled;
    fn mul(self, rhs: SqrtPiScaled) -> SqrtPiScaled {
        SqrtPiScaled::new(
            self.coefficient * rhs.coefficient,
            self.half_pi_exponent + rhs.half_pi_exponent,
        )
    }
}

impl Div for SqrtPiScaled {
    type Output = SqrtPiScaled;
    /// Panics when dividing by zero.
    fn div(self, rhs: SqrtPiScaled) -> SqrtPiScaled {
        assert!(!rhs.is_zero(), "division of SqrtPiScaled by zero");
        SqrtPiScaled::new(
            self.coefficient / rhs.coefficient,
            self.half_pi_exponent - rhs.half_pi_exponent,
        )
    }
}

impl fmt::Display for SqrtPiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_pi_exponent == 0 {
            write!(f, "{}", format_rational(&self.coefficient))
        } else {
            write!(
                f,
                "{}*pi^({}/2)",
                format_rational(&self.coefficient),
                self.half_pi_exponent
            )
        }
    }
}

/// `n!` for a nonnegative machine integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `Γ(k + 1/2) / √π = (2k)! / (4^k k!)` for `k ≥ 0`.
fn gamma_half_coefficient(k: u64) -> Rational {
    Rational::new(factorial(2 * k), BigInt::from(4).pow(k as u32) * factorial(k))
}

/// The gamma function at an integer or half-integer argument.
///
/// Positive integers give `(x−1)!`; half-integers of either sign give a
/// rational multiple of `√π` (negative ones via `Γ(x) = Γ(x+1)/x`).
/// Nonpositive integers are poles and yield a domain error.
pub fn gamma(x: &Rational) -> Result<SqrtPiScaled> {
    let t = twice_as_i64(x)
        .ok_or_else(|| Error::domain(format!("gamma needs an integer or half-integer, got {x}")))?;
    if t % 2 == 0 {
        if t <= 0 {
            return Err(Error::domain(format!("gamma has a pole at {x}")));
        }
        return Ok(SqrtPiScaled::from_rational(Rational::from_integer(factorial((t / 2 - 1) as u64))));
    }
    if t > 0 {
        let k = ((t - 1) / 2) as u64;
        return Ok(SqrtPiScaled::new(gamma_half_coefficient(k), 1));
    }
    // x = -j - 1/2 with j ≥ 0: Γ(x) = Γ(1/2) / (x (x+1) ... (-1/2)).
    let steps = ((-t + 1) / 2) as u64;
    let denom = pochhammer(x, steps);
    Ok(SqrtPiScaled::new(Rational::one() / denom, 1))
}

/// `x!` for an integer or half-integer `x`, i.e. `Γ(x + 1)`.
pub fn rational_factorial(x: &Rational) -> Result<SqrtPiScaled> {
    gamma(&(x + Rational::one()))
}

/// The hyperfactorial `h(n) = Π_{k=0}^{n−1} k!` for integers and
/// `Π_{k=0}^{n−1/2} Γ(k+1/2)` for half-integers.
///
/// Requires `n ≥ 0`; see [`hyperfactorial_ext`] for the continuation to
/// negative half-integers.
pub fn hyperfactorial(n: &Rational) -> Result<SqrtPiScaled> {
    if n.is_negative() {
        return Err(Error::domain(format!("hyperfactorial of negative argument {n}")));
    }
    let t = twice_as_i64(n)
        .ok_or_else(|| Error::domain(format!("hyperfactorial needs an integer or half-integer, got {n}")))?;
    if t % 2 == 0 {
        let n = (t / 2) as u64;
        let mut acc = BigInt::one();
        let mut fact = BigInt::one();
        for k in 1..n {
            fact *= BigInt::from(k);
            acc *= &fact;
        }
        Ok(SqrtPiScaled::from_rational(Rational::from_integer(acc)))
    } else {
        let j = ((t - 1) / 2) as u64;
        let mut coeff = Rational::one();
        for k in 0..=j {
            coeff *= gamma_half_coefficient(k);
        }
        Ok(SqrtPiScaled::new(coeff, j as i64 + 1))
    }
}

/// Hyperfactorial continued to negative half-integers through the
/// functional equation `h(n+1) = h(n) Γ(n+1)`; in particular `h(−1/2) = 1`.
///
/// Negative integers are rejected since the continuation passes through a
/// pole of `Γ`.
pub fn hyperfactorial_ext(n: &Rational) -> Result<SqrtPiScaled> {
    if !n.is_negative() {
        return hyperfactorial(n);
    }
    if n.is_integer() {
        return Err(Error::domain(format!("hyperfactorial continuation has no value at {n}")));
    }
    let next = n + Rational::one();
    Ok(hyperfactorial_ext(&next)? / gamma(&next)?)
}

/// The rising factorial `(base)_k = base (base+1) ··· (base+k−1)`.
pub fn pochhammer(base: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut term = base.clone();
    for _ in 0..k {
        if term.is_zero() {
            return Rational::zero();
        }
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Generalized binomial coefficient with integer top: zero for negative
/// `bottom`, otherwise `top (top−1) ··· (top−bottom+1) / bottom!`, which also
/// covers negative `top`.
pub fn binomial(top: i64, bottom: i64) -> BigInt {
    binomial_big(&BigInt::from(top), bottom)
}

/// [`binomial`] with an arbitrary-precision top.
pub fn binomial_big(top: &BigInt, bottom: i64) -> BigInt {
    if bottom < 0 {
        return BigInt::zero();
    }
    if !top.is_negative() && *top < BigInt::from(bottom) {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut t = top.clone();
    for _ in 0..bottom {
        num *= &t;
        t -= 1;
    }
    let (q, r) = num.div_rem(&factorial(bottom as u64));
    debug_assert!(r.is_zero());
    q
}

/// Binomial coefficient with rational top, defined by the falling factorial
/// and zero for negative `bottom`.
pub fn binomial_rational(top: &Rational, bottom: i64) -> Rational {
    if bottom < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    let mut t = top.clone();
    for _ in 0..bottom {
        acc *= &t;
        t -= Rational::one();
    }
    acc / Rational::from_integer(factorial(bottom as u64))
}

/// Double factorial `(2i−1)!! = 1·3···(2i−1)` (empty product for `i = 0`).
pub fn odd_double_factorial(i: u64) -> BigInt {
    (1..=i).fold(BigInt::one(), |acc, k| acc * BigInt::from(2 * k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperfactorial_examples() {
        assert_eq!(hyperfactorial(&int(0)).unwrap(), SqrtPiScaled::one());
        assert_eq!(hyperfactorial(&int(3)).unwrap(), SqrtPiScaled::from_rational(int(2)));
        assert_eq!(hyperfactorial(&rat(3, 2)).unwrap(), SqrtPiScaled::new(rat(1, 2), 2));
        assert!(matches!(hyperfactorial(&int(-1)), Err(Error::Domain(_))));
        assert!(hyperfactorial(&rat(1, 3)).is_err());
    }

    #[test]
    fn hyperfactorial_continuation() {
        assert_eq!(hyperfactorial_ext(&rat(-1, 2)).unwrap(), SqrtPiScaled::one());
        // h(1/2) = h(-1/2) Γ(1/2)
        assert_eq!(hyperfactorial_ext(&rat(1, 2)).unwrap(), SqrtPiScaled::new(int(1), 1));
        // h(-3/2) = h(-1/2) / Γ(-1/2) = 1 / (-2√π)
        assert_eq!(hyperfactorial_ext(&rat(-3, 2)).unwrap(), SqrtPiScaled::new(rat(-1, 2), -1));
        assert!(hyperfactorial_ext(&int(-2)).is_err());
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(&int(5)).unwrap(), SqrtPiScaled::from_rational(int(24)));
        assert_eq!(gamma(&rat(5, 2)).unwrap(), SqrtPiScaled::new(rat(3, 4), 1));
        assert_eq!(gamma(&rat(-1, 2)).unwrap(), SqrtPiScaled::new(int(-2), 1));
        assert!(gamma(&int(0)).is_err());
        assert_eq!(rational_factorial(&rat(1, 2)).unwrap(), SqrtPiScaled::new(rat(1, 2), 1));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(&int(-2), 4), int(0));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(4, -1), BigInt::from(0));
        assert_eq!(binomial_rational(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-7", "3/4", "-22/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sqrt_pi_canonical_zero() {
        let z = SqrtPiScaled::new(int(0), 5);
        assert_eq!(z.half_pi_exponent, 0);
        assert!(SqrtPiScaled::new(int(1), 1).into_rational().is_err());
    }
}
