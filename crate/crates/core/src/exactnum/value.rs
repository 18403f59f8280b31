//! A tagged exact value: integer, rational or cyclotomic element.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{format_rational, parse_rational, CycloElement, CycloRing, Rational};
use crate::error::{Error, Result};

/// Result of a determinant or closed-form evaluation in whichever ring it
/// naturally lives in.
///
/// Equality is numeric: `Integer(2)`, `Rational(2/1)` and a cyclotomic
/// element `2 + 0·τ` compare equal. Use [`ExactValue::canonical`] to obtain
/// the unique representative.
#[derive(Clone, Debug)]
pub enum ExactValue {
    Integer(BigInt),
    Rational(Rational),
    Cyclo(CycloElement),
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue::Integer(BigInt::zero())
    }

    pub fn one() -> Self {
        ExactValue::Integer(BigInt::one())
    }

    /// The narrowest representation: cyclotomic values without a `τ` part
    /// become rationals, and integral rationals become integers.
    pub fn canonical(&self) -> ExactValue {
        match self {
            ExactValue::Integer(n) => ExactValue::Integer(n.clone()),
            ExactValue::Rational(r) if r.is_integer() => ExactValue::Integer(r.to_integer()),
            ExactValue::Rational(r) => ExactValue::Rational(r.clone()),
            ExactValue::Cyclo(x) => match x.as_rational() {
                Some(r) => ExactValue::Rational(r.clone()).canonical(),
                None => ExactValue::Cyclo(x.clone()),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactValue::Integer(n) => n.is_zero(),
            ExactValue::Rational(r) => r.is_zero(),
            ExactValue::Cyclo(x) => x.is_zero(),
        }
    }

    /// The value as a rational, if it has no `τ` component.
    pub fn to_rational(&self) -> Option<Rational> {
        match self.canonical() {
            ExactValue::Integer(n) => Some(Rational::from_integer(n)),
            ExactValue::Rational(r) => Some(r),
            ExactValue::Cyclo(_) => None,
        }
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self.canonical() {
            ExactValue::Integer(n) => Some(n),
            _ => None,
        }
    }

    /// Embeds the value into the given cyclotomic field.
    pub fn to_cyclo(&self, ring: CycloRing) -> Result<CycloElement> {
        match self {
            ExactValue::Cyclo(x) if x.ring == ring => Ok(x.clone()),
            ExactValue::Cyclo(x) => match x.as_rational() {
                Some(r) => Ok(CycloElement::from_rational(ring, r.clone())),
                None => Err(Error::domain(format!(
                    "value {} does not lie in the {} field",
                    self,
                    ring.name()
                ))),
            },
            other => Ok(CycloElement::from_rational(ring, other.to_rational().expect("real value"))),
        }
    }

    fn cyclo_ring(&self) -> Option<CycloRing> {
        match self {
            ExactValue::Cyclo(x) if !x.c1.is_zero() => Some(x.ring),
            _ => None,
        }
    }

    fn combine(
        &self,
        other: &Self,
        on_rational: impl Fn(&Rational, &Rational) -> Rational,
        on_cyclo: impl Fn(&CycloElement, &CycloElement) -> Result<CycloElement>,
    ) -> Result<ExactValue> {
        let ring = match (self.cyclo_ring(), other.cyclo_ring()) {
            (Some(r), Some(s)) if r != s => {
                return Err(Error::domain(format!(
                    "cyclotomic ring mismatch: {} vs {}",
                    r.name(),
                    s.name()
                )))
            }
            (Some(r), _) | (None, Some(r)) => Some(r),
            (None, None) => None,
        };
        match ring {
            Some(r) => Ok(ExactValue::Cyclo(on_cyclo(&self.to_cyclo(r)?, &other.to_cyclo(r)?)?).canonical()),
            None => {
                let x = self.to_rational().expect("real value");
                let y = other.to_rational().expect("real value");
                Ok(ExactValue::Rational(on_rational(&x, &y)).canonical())
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<ExactValue> {
        self.combine(other, |x, y| x + y, |x, y| x.checked_add(y))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<ExactValue> {
        self.combine(other, |x, y| x - y, |x, y| x.checked_sub(y))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<ExactValue> {
        self.combine(other, |x, y| x * y, |x, y| x.checked_mul(y))
    }

    pub fn neg(&self) -> ExactValue {
        match self {
            ExactValue::Integer(n) => ExactValue::Integer(-n),
            ExactValue::Rational(r) => ExactValue::Rational(-r),
            ExactValue::Cyclo(x) => ExactValue::Cyclo(-x),
        }
    }

    /// JSON form: a decimal string for real values, the `{ring, c0, c1}`
    /// record for genuinely cyclotomic ones.
    pub fn to_json(&self) -> serde_json::Value {
        match self.canonical() {
            ExactValue::Cyclo(x) => x.to_json(),
            other => serde_json::Value::String(other.to_string()),
        }
    }

    /// Inverse of the [`fmt::Display`] form.
    pub fn parse(s: &str) -> Result<ExactValue> {
        let s = s.trim();
        if s.starts_with('{') {
            let v: serde_json::Value =
                serde_json::from_str(s).map_err(|e| Error::domain(format!("bad cyclotomic value {s:?}: {e}")))?;
            let field = |k: &str| {
                v.get(k)
                    .and_then(|x| x.as_str())
                    .ok_or_else(|| Error::domain(format!("cyclotomic value {s:?} lacks field {k}")))
            };
            let ring = match field("ring")? {
                "third" => CycloRing::Third,
                "sixth" => CycloRing::Sixth,
                other => return Err(Error::domain(format!("unknown cyclotomic ring {other:?}"))),
            };
            let c0 = parse_rational(field("c0")?)?;
            let c1 = parse_rational(field("c1")?)?;
            Ok(ExactValue::Cyclo(CycloElement::new(ring, c0, c1)).canonical())
        } else {
            Ok(ExactValue::Rational(parse_rational(s)?).canonical())
        }
    }
}

impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        match (self.canonical(), other.canonical()) {
            (ExactValue::Integer(x), ExactValue::Integer(y)) => x == y,
            (ExactValue::Rational(x), ExactValue::Rational(y)) => x == y,
            (ExactValue::Cyclo(x), ExactValue::Cyclo(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for ExactValue {}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.canonical() {
            ExactValue::Integer(n) => write!(f, "{n}"),
            ExactValue::Rational(r) => write!(f, "{}", format_rational(&r)),
            ExactValue::Cyclo(x) => write!(f, "{}", x.to_json()),
        }
    }
}

impl From<BigInt> for ExactValue {
    fn from(n: BigInt) -> Self {
        ExactValue::Integer(n)
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue::Rational(r)
    }
}

impl From<CycloElement> for ExactValue {
    fn from(x: CycloElement) -> Self {
        ExactValue::Cyclo(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn numeric_equality_across_tags() {
        let a = ExactValue::Integer(BigInt::from(2));
        let b = ExactValue::Rational(int(2));
        let c = ExactValue::Cyclo(CycloElement::from_rational(CycloRing::Sixth, int(2)));
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_ne!(a, ExactValue::Rational(rat(3, 2)));
    }

    #[test]
    fn display_parse_round_trip() {
        let vals = [
            ExactValue::Integer(BigInt::from(-7)),
            ExactValue::Rational(rat(5, 3)),
            ExactValue::Cyclo(CycloElement::new(CycloRing::Third, rat(1, 2), int(-4))),
        ];
        for v in vals {
            assert_eq!(ExactValue::parse(&v.to_string()).unwrap(), v);
        }
    }

    #[test]
    fn mixed_arithmetic_promotes() {
        let t = ExactValue::Cyclo(CycloElement::tau(CycloRing::Third));
        let one = ExactValue::one();
        let s = t.checked_add(&one).unwrap();
        assert_eq!(s, ExactValue::Cyclo(CycloElement::new(CycloRing::Third, int(1), int(1))));
        let six = ExactValue::Cyclo(CycloElement::tau(CycloRing::Sixth));
        assert!(t.checked_mul(&six).is_err());
    }
}
