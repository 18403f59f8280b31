//! Closed-form right-hand sides: hyperfactorial products for the plain and
//! signed counts, the root-of-unity determinant evaluations, the lemma
//! products for the transformed determinants, the Watson-type multiple
//! sums, the two conjectural off-center formulas and the asymptotic
//! constant.
//!
//! Every product is evaluated exactly. Hyperfactorials of half-integers
//! carry powers of `√π`, which are tracked and required to cancel.

mod asymptotic;
mod cored;
mod cyclic;
mod lemmas;
mod watson;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, hyperfactorial_ext, pochhammer, Rational, SqrtPiScaled};

pub use asymptotic::{asymptotic_k, asymptotic_k_default, asymptotic_table, log_ratio, AsymptoticRow, DEFAULT_PRECISION};
pub use cored::{conjecture_rhs, count_cored_formula, macmahon_box, ConjectureId};
pub use cyclic::{rhs_andrews, rhs_case10, rhs_om3, rhs_om6, rhs_omega_det, rhs_zare1, OmegaCase};
pub use lemmas::lemma_rhs;
pub use watson::{watson_lhs, watson_lower_parameters, watson_pair, watson_rhs, WatsonVariant};

/// Names of the closed forms evaluated by this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaId {
    Box,
    Enum,
    Shifted,
    SignedEnum,
    SignedShifted,
    Andrews,
    Zare1,
    Om3,
    Om6,
    Case10,
    AsymptoticK,
    Conjecture1,
    Conjecture2,
    WatsonLHS,
    WatsonRHS,
    LemmaRHS,
}

impl FormulaId {
    pub const ALL: [FormulaId; 16] = [
        FormulaId::Box,
        FormulaId::Enum,
        FormulaId::Shifted,
        FormulaId::SignedEnum,
        FormulaId::SignedShifted,
        FormulaId::Andrews,
        FormulaId::Zare1,
        FormulaId::Om3,
        FormulaId::Om6,
        FormulaId::Case10,
        FormulaId::AsymptoticK,
        FormulaId::Conjecture1,
        FormulaId::Conjecture2,
        FormulaId::WatsonLHS,
        FormulaId::WatsonRHS,
        FormulaId::LemmaRHS,
    ];

    /// Stable kebab-case tag used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            FormulaId::Box => "box",
            FormulaId::Enum => "enum",
            FormulaId::Shifted => "shifted",
            FormulaId::SignedEnum => "signed-enum",
            FormulaId::SignedShifted => "signed-shifted",
            FormulaId::Andrews => "andrews",
            FormulaId::Zare1 => "zare1",
            FormulaId::Om3 => "om3",
            FormulaId::Om6 => "om6",
            FormulaId::Case10 => "case10",
            FormulaId::AsymptoticK => "asymptotic-k",
            FormulaId::Conjecture1 => "conjecture1",
            FormulaId::Conjecture2 => "conjecture2",
            FormulaId::WatsonLHS => "watson-lhs",
            FormulaId::WatsonRHS => "watson-rhs",
            FormulaId::LemmaRHS => "lemma-rhs",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    /// Accepts the tag from [`FormulaId::name`], case-insensitively, with
    /// `macmahon` as an alias of `box`.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        if key == "macmahon" {
            return Ok(FormulaId::Box);
        }
        FormulaId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::domain(format!("unknown formula id {s:?}")))
    }
}

/// `n/2` as a rational.
pub(crate) fn half(n: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(2))
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn floor_half(n: i64) -> i64 {
    n.div_euclid(2)
}

pub(crate) fn ceil_half(n: i64) -> i64 {
    (n + 1).div_euclid(2)
}

/// A quotient of hyperfactorials, collected first and evaluated once so the
/// powers of `√π` from half-integer arguments can be checked to cancel.
#[derive(Default)]
pub(crate) struct HyperRatio {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

impl HyperRatio {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(&mut self, x: impl Into<Rational>) -> &mut Self {
        self.num.push(x.into());
        self
    }

    pub fn den(&mut self, x: impl Into<Rational>) -> &mut Self {
        self.den.push(x.into());
        self
    }

    pub fn num2(&mut self, x: impl Into<Rational>) -> &mut Self {
        let x = x.into();
        self.num.push(x.clone());
        self.num.push(x);
        self
    }

    pub fn den2(&mut self, x: impl Into<Rational>) -> &mut Self {
        let x = x.into();
        self.den.push(x.clone());
        self.den.push(x);
        self
    }

    /// The exact rational value; fails when an argument is a negative
    /// integer or the `√π` powers do not cancel.
    pub fn eval(&self) -> Result<Rational> {
        let mut acc = SqrtPiScaled::one();
        for x in &self.num {
            acc = acc * hyperfactorial_ext(x)?;
        }
        for x in &self.den {
            acc = acc / hyperfactorial_ext(x)?;
        }
        acc.into_rational()
    }
}

/// The integer value of `r`, or a domain error naming `what`.
pub(crate) fn as_int(r: &Rational, what: &str) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::domain(format!("{what} must be an integer, got {r}")));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::domain(format!("{what} is out of range: {r}")))
}

/// Pochhammer symbol `(x)_n = Γ(x+n)/Γ(x)` for any integer `n`; negative
/// `n` gives `1/(x+n)_{−n}`.
pub(crate) fn poch(x: &Rational, n: &Rational) -> Result<Rational> {
    let n = as_int(n, "Pochhammer index")?;
    if n >= 0 {
        return Ok(pochhammer(x, n as u64));
    }
    let d = pochhammer(&(x + int(n)), n.unsigned_abs());
    if d.is_zero() {
        return Err(Error::domain(format!("Pochhammer ({x})_{n} has a pole")));
    }
    Ok(Rational::one() / d)
}

/// `1/(x)_n`; fails when `(x)_n` vanishes.
pub(crate) fn rpoch(x: &Rational, n: &Rational) -> Result<Rational> {
    let n = as_int(n, "Pochhammer index")?;
    if n < 0 {
        return Ok(pochhammer(&(x + int(n)), n.unsigned_abs()));
    }
    let d = pochhammer(x, n as u64);
    if d.is_zero() {
        return Err(Error::domain(format!("Pochhammer ({x})_{n} vanishes in a denominator")));
    }
    Ok(Rational::one() / d)
}

/// `n!` for an integer `n ≥ 0`.
pub(crate) fn fact(n: &Rational) -> Result<Rational> {
    let n = as_int(n, "factorial argument")?;
    if n < 0 {
        return Err(Error::domain(format!("factorial of negative integer {n}")));
    }
    Ok(Rational::from_integer(factorial(n as u64)))
}

/// `1/n!` for an integer `n`, read as `1/Γ(n+1)` and hence zero for `n < 0`.
pub(crate) fn rfact(n: &Rational) -> Result<Rational> {
    let n = as_int(n, "factorial argument")?;
    if n < 0 {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(BigInt::one(), factorial(n as u64)))
}

/// `2^e` for an integer `e` of either sign.
pub(crate) fn pow2(e: &Rational) -> Result<Rational> {
    let e = as_int(e, "power of 2")?;
    let p = BigInt::one() << e.unsigned_abs();
    Ok(if e >= 0 { Rational::from_integer(p) } else { Rational::new(BigInt::one(), p) })
}

/// `(−1)^e` for an integer `e`.
pub(crate) fn sign(e: &Rational) -> Result<Rational> {
    let e = as_int(e, "sign exponent")?;
    Ok(if e.rem_euclid(2) == 0 { int(1) } else { int(-1) })
}

/// `r^e` for a machine exponent; negative powers invert.
pub(crate) fn rpow(r: &Rational, e: i64) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e.unsigned_abs() {
        out *= r;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// Product of `f(i)` over `lo ≤ i ≤ hi` (empty when `hi < lo`).
pub(crate) fn prod(lo: i64, hi: i64, mut f: impl FnMut(i64) -> Result<Rational>) -> Result<Rational> {
    let mut acc = Rational::one();
    for i in lo..=hi {
        acc *= f(i)?;
    }
    Ok(acc)
}

/// Rejects values that should be integral but are not.
pub(crate) fn expect_integral(r: Rational, what: &str) -> Result<Rational> {
    if r.is_integer() {
        Ok(r)
    } else {
        Err(Error::domain(format!("{what} evaluated to the non-integer {r}")))
    }
}

/// Sign helper used where a formula's sign is fixed by parity.
pub(crate) fn is_even(n: i64) -> bool {
    n.rem_euclid(2) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_ids_round_trip() {
        for id in FormulaId::ALL {
            assert_eq!(id.name().parse::<FormulaId>().unwrap(), id);
        }
        assert_eq!("macmahon".parse::<FormulaId>().unwrap(), FormulaId::Box);
        assert!("nonsense".parse::<FormulaId>().is_err());
    }

    #[test]
    fn general_pochhammer() {
        assert_eq!(poch(&int(3), &int(2)).unwrap(), int(12));
        // (x)_{-n} = 1/(x-n)_n
        assert_eq!(poch(&int(3), &int(-2)).unwrap(), Rational::new(1.into(), 2.into()));
        assert!(poch(&int(1), &int(-2)).is_err());
        assert_eq!(rpoch(&int(1), &int(-2)).unwrap(), int(0));
        assert!(rpoch(&int(0), &int(1)).is_err());
    }

    #[test]
    fn reciprocal_factorial_vanishes_at_negative_integers() {
        assert_eq!(rfact(&int(-1)).unwrap(), int(0));
        assert_eq!(rfact(&int(3)).unwrap(), Rational::new(1.into(), 6.into()));
        assert!(fact(&int(-1)).is_err());
    }

    #[test]
    fn hyper_ratio_cancels_sqrt_pi() {
        // h(3/2)/h(1/2) = Γ(1/2) = √π is not rational.
        let mut q = HyperRatio::new();
        q.num(half(3)).den(half(1));
        assert!(q.eval().is_err());
        // h(3/2)/h(1/2)² = Γ(3/2)/Γ(1/2) = 1/2.
        let mut q = HyperRatio::new();
        q.num(half(3)).den2(half(1));
        assert_eq!(q.eval().unwrap(), half(1));
    }
}
