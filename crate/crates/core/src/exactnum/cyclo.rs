//! Elements `c0 + c1·τ` of `Q(ω₃)` and `Q(ω₆)` with rational coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, Rational};
use crate::error::{Error, Result};

/// Which cyclotomic field an element lives in.
///
/// `Third`: `τ` is a primitive third root of unity, `τ² = −1 − τ`.
/// `Sixth`: `τ` is a primitive sixth root of unity, `τ² = τ − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycloRing {
    Third,
    Sixth,
}

impl CycloRing {
    pub fn name(self) -> &'static str {
        match self {
            CycloRing::Third => "third",
            CycloRing::Sixth => "sixth",
        }
    }
}

/// The element `c0 + c1·τ` of the field selected by `ring`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElement {
    pub ring: CycloRing,
    pub c0: Rational,
    pub c1: Rational,
}

impl CycloElement {
    pub fn new(ring: CycloRing, c0: Rational, c1: Rational) -> Self {
        CycloElement { ring, c0, c1 }
    }

    pub fn from_rational(ring: CycloRing, r: Rational) -> Self {
        CycloElement::new(ring, r, Rational::zero())
    }

    pub fn zero(ring: CycloRing) -> Self {
        CycloElement::from_rational(ring, Rational::zero())
    }

    pub fn one(ring: CycloRing) -> Self {
        CycloElement::from_rational(ring, Rational::one())
    }

    /// The generator `τ` itself.
    pub fn tau(ring: CycloRing) -> Self {
        CycloElement::new(ring, Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    /// The value as a rational when it has no `τ` component.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c1.is_zero() {
            Some(&self.c0)
        } else {
            None
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "cyclotomic ring mismatch: {} vs {}",
                self.ring.name(),
                other.ring.name()
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(CycloElement::new(self.ring, &self.c0 + &other.c0, &self.c1 + &other.c1))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(CycloElement::new(self.ring, &self.c0 - &other.c0, &self.c1 - &other.c1))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let ac = &self.c0 * &other.c0;
        let bd = &self.c1 * &other.c1;
        let cross = &self.c0 * &other.c1 + &self.c1 * &other.c0;
        Ok(match self.ring {
            CycloRing::Third => CycloElement::new(self.ring, &ac - &bd, cross - bd),
            CycloRing::Sixth => CycloElement::new(self.ring, &ac - &bd, cross + bd),
        })
    }

    /// Division in the field; fails on ring mismatch or a zero divisor.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let n = other.norm();
        if n.is_zero() {
            return Err(Error::domain("cyclotomic division by zero"));
        }
        let p = self.checked_mul(&other.conjugate())?;
        Ok(CycloElement::new(self.ring, p.c0 / &n, p.c1 / n))
    }

    /// Complex conjugation: `τ ↦ −1−τ` in `Third`, `τ ↦ 1−τ` in `Sixth`.
    pub fn conjugate(&self) -> Self {
        match self.ring {
            CycloRing::Third => CycloElement::new(self.ring, &self.c0 - &self.c1, -self.c1.clone()),
            CycloRing::Sixth => CycloElement::new(self.ring, &self.c0 + &self.c1, -self.c1.clone()),
        }
    }

    /// `x · conj(x)`, a nonnegative rational.
    pub fn norm(&self) -> Rational {
        let p = self.checked_mul(&self.conjugate()).expect("same ring");
        debug_assert!(p.c1.is_zero());
        p.c0
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = CycloElement::one(self.ring);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloElement::new(self.ring, &self.c0 * r, &self.c1 * r)
    }

    /// Text form `{"ring":"sixth","c0":"p/q","c1":"r/s"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("ring".into(), self.ring.name().into());
        map.insert("c0".into(), format_rational(&self.c0).into());
        map.insert("c1".into(), format_rational(&self.c1).into());
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{} + {}*t]",
            self.ring.name(),
            format_rational(&self.c0),
            format_rational(&self.c1)
        )
    }
}

/// Operator forms panic on ring mismatch; use the `checked_*` methods when
/// the rings are not known to agree.
impl<'a> Add<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &CycloElement) -> CycloElement {
        self.checked_add(rhs).expect("cyclotomic ring mismatch")
    }
}

impl<'a> Sub<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &CycloElement) -> CycloElement {
        self.checked_sub(rhs).expect("cyclotomic ring mismatch")
    }
}

impl<'a> Mul<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &CycloElement) -> CycloElement {
        self.checked_mul(rhs).expect("cyclotomic ring mismatch")
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement::new(self.ring, -self.c0.clone(), -self.c1.clone())
    }
}
