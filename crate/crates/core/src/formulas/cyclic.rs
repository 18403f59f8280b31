//! Product evaluations of `det(ω·I + B)` with `B_{ij} = binom(m+i+j, j)` for
//! `ω ∈ {1, −1}` and primitive third and sixth roots of unity, and the
//! combined formula for the `(−1)^{n₆}`-weighted cyclic count.
//!
//! The `m` parameter is rational: the combined formula evaluates these
//! products at `m/2 ± 1` and `(m ± 1)/2`, including `m = −1`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{fact, floor_half, half, int, prod, rpow};
use crate::error::Result;
use crate::exactnum::{
    odd_double_factorial, pochhammer, rational_factorial, CycloElement, CycloRing, ExactValue, Rational,
    SqrtPiScaled,
};

/// Which scalar `ω` is added to the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OmegaCase {
    One,
    MinusOne,
    Third,
    Sixth,
}

impl OmegaCase {
    pub const ALL: [OmegaCase; 4] = [OmegaCase::One, OmegaCase::MinusOne, OmegaCase::Third, OmegaCase::Sixth];

    pub fn name(self) -> &'static str {
        match self {
            OmegaCase::One => "one",
            OmegaCase::MinusOne => "minus-one",
            OmegaCase::Third => "third",
            OmegaCase::Sixth => "sixth",
        }
    }

    /// `ω` itself, as a value in the matching ring.
    pub fn omega(self) -> ExactValue {
        match self {
            OmegaCase::One => ExactValue::one(),
            OmegaCase::MinusOne => ExactValue::one().neg(),
            OmegaCase::Third => CycloElement::tau(CycloRing::Third).into(),
            OmegaCase::Sixth => CycloElement::tau(CycloRing::Sixth).into(),
        }
    }
}

/// Closed form of `det_{0≤i,j<a}(ω δ_{ij} + binom(m+i+j, j))`.
pub fn rhs_omega_det(a: u32, m: u32, case: OmegaCase) -> Result<ExactValue> {
    let m = int(m as i64);
    Ok(match case {
        OmegaCase::One => rhs_andrews(a, &m).into(),
        OmegaCase::MinusOne => rhs_zare1(a, &m)?.into(),
        OmegaCase::Third => rhs_om3(a, &m).into(),
        OmegaCase::Sixth => rhs_om6(a, &m).into(),
    })
}

/// `⌊α⌋` for `α ≥ 0` and `0` for `α < 0`, as used in the index of the
/// third- and sixth-root products so that the product over `i ≥ 0` is finite.
fn clamped_floor_half(n: i64) -> u64 {
    if n < 0 {
        0
    } else {
        floor_half(n) as u64
    }
}

/// The `ω = 1` evaluation.
pub fn rhs_andrews(a: u32, m: &Rational) -> Rational {
    let a = a as i64;
    let mh = m / int(2);
    let ceil = |n: i64, d: i64| (n + d - 1).div_euclid(d);
    let ok = |r: Result<Rational>| r.expect("nonnegative Pochhammer indices");
    // The leading product takes ⌊(i+3)/4⌋ factors for both parities of `a`;
    // a ceiling here overshoots the determinant from a = 5 on.
    let lead = prod(1, a - 2, |i| {
        let k = (i + 3).div_euclid(4);
        Ok(pochhammer(&(&mh + int(ceil(i, 2) + 1)), k as u64))
    });
    let mut value = rpow(&int(2), ceil(a, 2)) * ok(lead);
    if a % 2 == 0 {
        let top = prod(1, a / 2, |i| {
            let base = &mh + half(3 * a) - int(ceil(3 * i, 2)) + half(3);
            Ok(pochhammer(&base, (ceil(i, 2) - 1) as u64) * pochhammer(&base, ceil(i, 2) as u64))
        });
        let bottom = prod(1, a / 2 - 1, |i| {
            Ok(Rational::from_integer(odd_double_factorial(i as u64) * odd_double_factorial(i as u64 + 1)))
        });
        value *= ok(top) / ok(bottom);
    } else {
        let top = prod(1, (a - 1) / 2, |i| {
            let b1 = &mh + half(3 * a) - int(ceil(3 * i - 1, 2)) + int(1);
            let b2 = &mh + half(3 * a) - int(ceil(3 * i, 2));
            Ok(pochhammer(&b1, ceil(i - 1, 2) as u64) * pochhammer(&b2, ceil(i, 2) as u64))
        });
        let bottom = prod(1, (a - 1) / 2, |i| {
            let d = Rational::from_integer(odd_double_factorial(i as u64));
            Ok(&d * &d)
        });
        value *= ok(top) / ok(bottom);
    }
    value
}

/// The `ω = −1` evaluation; zero for odd `a`.
pub fn rhs_zare1(a: u32, m: &Rational) -> Result<Rational> {
    if a % 2 == 1 {
        return Ok(Rational::zero());
    }
    let mh = m / int(2);
    let mut acc = SqrtPiScaled::one();
    for i in 0..(a as i64) / 2 {
        let f = |x: Rational| rational_factorial(&x);
        let sq = |x: Rational| -> Result<SqrtPiScaled> { Ok(f(x)?.pow(2)) };
        acc = acc
            * SqrtPiScaled::from_rational(fact(&int(i))?.pow(2))
            * sq(&mh + int(i))?
            * sq(&mh + int(3 * i + 1))?
            * sq(m + int(3 * i + 1))?;
        acc = acc
            / (SqrtPiScaled::from_rational(fact(&int(2 * i))? * fact(&int(2 * i + 1))?)
                * sq(&mh + int(2 * i))?
                * sq(&mh + int(2 * i + 1))?
                * f(m + int(2 * i))?
                * f(m + int(2 * i + 1))?);
    }
    let sign = if (a / 2).is_multiple_of(2) { int(1) } else { int(-1) };
    Ok(sign * acc.into_rational()?)
}

/// `Π_{i=1}^{⌊a/2⌋}(2i−1)!! · Π_{i=1}^{⌊(a−1)/2⌋}(2i−1)!!`.
fn double_factorial_block(a: i64) -> Rational {
    let p = |n: i64| (1..=n.max(0)).fold(Rational::from_integer(1.into()), |acc, i| {
        acc * Rational::from_integer(odd_double_factorial(i as u64))
    });
    p(floor_half(a)) * p(floor_half(a - 1))
}

/// The primitive third root of unity evaluation, in the ring where `τ = ω`.
pub fn rhs_om3(a: u32, m: &Rational) -> CycloElement {
    let a = a as i64;
    let mh = m / int(2);
    let mut r = rpow(&int(2), floor_half(a)) / double_factorial_block(a);
    for i in 0..=a / 4 {
        r *= pochhammer(&(&mh + int(3 * i + 1)), clamped_floor_half(a - 4 * i));
        r *= pochhammer(&(&mh + int(3 * i + 3)), clamped_floor_half(a - 4 * i - 3));
        r *= pochhammer(&(&mh + int(a - i) + half(1)), clamped_floor_half(a - 4 * i - 1));
        r *= pochhammer(&(&mh + int(a - i) - half(1)), clamped_floor_half(a - 4 * i - 2));
    }
    one_plus_tau_pow(CycloRing::Third, a).scale(&r)
}

/// The primitive sixth root of unity evaluation, in the ring where `τ = ω`.
pub fn rhs_om6(a: u32, m: &Rational) -> CycloElement {
    let a = a as i64;
    let mh = m / int(2);
    let mut r = rpow(&Rational::new(2.into(), 3.into()), floor_half(a)) / double_factorial_block(a);
    for i in 0..=a / 4 {
        r *= pochhammer(&(&mh + int(3 * i) + half(3)), clamped_floor_half(a - 4 * i - 1));
        r *= pochhammer(&(&mh + int(3 * i) + half(5)), clamped_floor_half(a - 4 * i - 2));
        r *= pochhammer(&(&mh + int(a - i)), clamped_floor_half(a - 4 * i));
        r *= pochhammer(&(&mh + int(a - i)), clamped_floor_half(a - 4 * i - 3));
    }
    one_plus_tau_pow(CycloRing::Sixth, a).scale(&r)
}

fn one_plus_tau_pow(ring: CycloRing, a: i64) -> CycloElement {
    CycloElement::new(ring, int(1), int(1)).pow(a as u32)
}

/// The `(−1)^{n₆}`-weighted count of cyclically symmetric tilings of
/// `C_a(m)`, assembled from the three evaluations above by the parities of
/// `a` and `m`.
pub fn rhs_case10(a: u32, m: u32) -> Result<Rational> {
    let (ai, mi) = (a as i64, m as i64);
    let r1 = |x: i64, y: Rational| rhs_andrews(x as u32, &y);
    let r2 = |x: i64, y: Rational| rhs_zare1(x as u32, &y);
    Ok(match (a % 2, m % 2) {
        (0, 0) => rhs_om6(a / 2, &int(mi / 2)).norm(),
        (1, 0) => r1((ai + 1) / 2, int(mi / 2 - 1)) * r1((ai - 1) / 2, int(mi / 2 + 1)),
        (0, _) => r1(ai / 2, int((mi - 1) / 2)) * r2(ai / 2, int((mi + 1) / 2))?,
        _ => r1((ai + 1) / 2, int((mi - 1) / 2)) * r2((ai - 1) / 2, int((mi + 1) / 2))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgv::{build_n6_matrix, build_omega_shift, build_B};

    fn det_omega(a: usize, m: i64, case: OmegaCase) -> ExactValue {
        let b = build_B(a, m);
        b.add_scalar_identity(&case.omega()).unwrap().det().unwrap()
    }

    #[test]
    fn andrews_small() {
        for m in 0..6 {
            assert_eq!(rhs_andrews(2, &int(m)), int(m + 5));
            assert_eq!(rhs_andrews(0, &int(m)), int(1));
            assert_eq!(rhs_andrews(1, &int(m)), int(2));
        }
    }

    #[test]
    fn zare1_odd_is_zero() {
        for a in [1, 3, 5] {
            assert!(rhs_zare1(a, &int(4)).unwrap().is_zero());
        }
    }

    #[test]
    fn om3_a1() {
        let v = rhs_om3(1, &int(3));
        assert_eq!(v, CycloElement::new(CycloRing::Third, int(1), int(1)));
    }

    #[test]
    fn all_cases_match_determinants() {
        for a in 0..=8u32 {
            for m in 0..=10u32 {
                for case in OmegaCase::ALL {
                    let lhs = det_omega(a as usize, m as i64, case);
                    let rhs = rhs_omega_det(a, m, case).unwrap();
                    assert_eq!(lhs, rhs, "a={a} m={m} {case:?}");
                }
            }
        }
    }

    #[test]
    fn omega_shift_builder_agrees() {
        let w = CycloElement::tau(CycloRing::Sixth);
        let d = build_omega_shift(3, 2, &w).det().unwrap();
        assert_eq!(d, rhs_omega_det(3, 2, OmegaCase::Sixth).unwrap());
    }

    #[test]
    fn case10_matches_n6_determinant() {
        for a in 0..=6u32 {
            for m in 0..=5u32 {
                let d = build_n6_matrix(a as usize, m).det().unwrap();
                assert_eq!(d, ExactValue::from(rhs_case10(a, m).unwrap()), "a={a} m={m}");
            }
        }
        assert_eq!(rhs_case10(1, 0).unwrap(), int(2));
    }
}
