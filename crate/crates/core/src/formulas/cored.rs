//! Hyperfactorial product formulas for tilings of cored hexagons.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{ceil_half, expect_integral, floor_half, half, int, is_even, HyperRatio};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::tilings::{CoredHexagon, Placement};

/// MacMahon's box formula `h(a)h(b)h(c)h(a+b+c) / (h(a+b)h(b+c)h(c+a))`,
/// the number of lozenge tilings of the hexagon with sides `a,b,c,a,b,c`.
pub fn macmahon_box(a: u32, b: u32, c: u32) -> BigInt {
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let mut q = HyperRatio::new();
    q.num(int(a)).num(int(b)).num(int(c)).num(int(a + b + c));
    q.den(int(a + b)).den(int(b + c)).den(int(c + a));
    let v = q.eval().expect("integer hyperfactorials");
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// The closed form for the number of tilings (`signed = false`) or the
/// `(−1)^{n(T)}`-weighted count (`signed = true`) of `C_{a,b,c}(m)`.
///
/// `h` must be normalized so that the deviant-parity side, if any, is `a`
/// (as done by [`CoredHexagon::new`]).
pub fn count_cored_formula(h: &CoredHexagon, signed: bool) -> Result<Rational> {
    h.validate()?;
    let (a, b, c, m) = (h.a as i64, h.b as i64, h.c as i64, h.m as i64);
    let value = match (h.placement, signed) {
        (Placement::Centered, false) => centered(a, b, c, m)?,
        (Placement::ShiftedTowardB, false) => shifted(a, b, c, m)?,
        (Placement::Centered, true) if a % 2 == 1 => int(0),
        (Placement::Centered, true) => signed_centered(a, b, c, m)?,
        (Placement::ShiftedTowardB, true) => signed_shifted(a, b, c, m)?,
    };
    expect_integral(value, "tiling count formula")
}

/// Common leading block `h(a+m)h(b+m)h(c+m)h(a+b+c+m) / (h(a+b+m)h(a+c+m)h(b+c+m))`.
fn outer_block(q: &mut HyperRatio, a: i64, b: i64, c: i64, m: i64) {
    q.num(int(a + m)).num(int(b + m)).num(int(c + m)).num(int(a + b + c + m));
    q.den(int(a + b + m)).den(int(a + c + m)).den(int(b + c + m));
}

/// `Π_x h(⌈x/2⌉)h(⌊x/2⌋) / (h(m/2+⌈x/2⌉)h(m/2+⌊x/2⌋))` over `x ∈ {a,b,c}`.
fn side_block(q: &mut HyperRatio, a: i64, b: i64, c: i64, m: i64) {
    for x in [a, b, c] {
        q.num(int(ceil_half(x))).num(int(floor_half(x)));
        q.den(half(m) + int(ceil_half(x))).den(half(m) + int(floor_half(x)));
    }
}

fn centered(a: i64, b: i64, c: i64, m: i64) -> Result<Rational> {
    let s = a + b + c;
    let mut q = HyperRatio::new();
    outer_block(&mut q, a, b, c, m);
    q.num(int(m + ceil_half(s))).num(int(m + floor_half(s)));
    q.den(half(a + b + 2 * m)).den(half(a + c + 2 * m)).den(half(b + c + 2 * m));
    side_block(&mut q, a, b, c, m);
    q.num2(half(m)).num2(half(a + b + m)).num2(half(a + c + m)).num2(half(b + c + m));
    q.den(half(m) + int(ceil_half(s))).den(half(m) + int(floor_half(s)));
    q.den(half(a + b)).den(half(a + c)).den(half(b + c));
    q.eval()
}

fn shifted(a: i64, b: i64, c: i64, m: i64) -> Result<Rational> {
    let s = a + b + c;
    let mut q = HyperRatio::new();
    outer_block(&mut q, a, b, c, m);
    q.num(int(m + ceil_half(s))).num(int(m + floor_half(s)));
    q.den(int(floor_half(a + c) + m)).den(half(b + c + 2 * m)).den(int(ceil_half(a + b) + m));
    q.num2(half(m));
    side_block(&mut q, a, b, c, m);
    q.num(int(ceil_half(a + b)) + half(m)).num(int(floor_half(a + b)) + half(m));
    q.num(int(floor_half(a + c)) + half(m)).num(int(ceil_half(a + c)) + half(m));
    q.num2(half(b + c + m));
    q.den(half(m) + int(ceil_half(s))).den(half(m) + int(floor_half(s)));
    q.den(int(floor_half(a + b))).den(int(ceil_half(a + c))).den(half(b + c));
    q.eval()
}

/// All of `a, b, c` even.
fn signed_centered(a: i64, b: i64, c: i64, m: i64) -> Result<Rational> {
    let (lo, hi) = (half(m - 1), half(m + 1));
    let mut q = HyperRatio::new();
    outer_block(&mut q, a, b, c, m);
    q.num2(half(a)).num2(half(b)).num2(half(c)).num(lo.clone()).num(hi.clone());
    for x in [a, b, c] {
        q.den(half(x) + &lo).den(half(x) + &hi);
    }
    for x in [a + b, a + c, b + c] {
        q.num(half(x) + &lo).num(half(x) + &hi);
        q.den(half(x)).den(half(x + 2 * m));
    }
    q.num2(half(a + b + c + 2 * m));
    q.den(half(a + b + c) + &lo).den(half(a + b + c) + &hi);
    let sign = if is_even(a / 2) { 1 } else { -1 };
    Ok(int(sign) * q.eval()?)
}

/// `a` of the other parity than `b ≡ c`.
fn signed_shifted(a: i64, b: i64, c: i64, m: i64) -> Result<Rational> {
    let (lo, hi) = (half(m - 1), half(m + 1));
    let s = a + b + c;
    let mut q = HyperRatio::new();
    outer_block(&mut q, a, b, c, m);
    q.num(int(floor_half(s) + m)).num(int(ceil_half(s) + m));
    q.den(half(a + b + 1 + 2 * m)).den(half(a + c - 1 + 2 * m)).den(half(b + c + 2 * m));
    for x in [a, b, c] {
        q.num(int(floor_half(x))).num(int(ceil_half(x)));
        q.den(int(floor_half(x + 1)) + &lo).den(int(ceil_half(x - 1)) + &hi);
    }
    q.num(lo.clone()).num(hi.clone());
    q.num2(half(a + b + m)).num2(half(a + c + m));
    q.num(half(b + c + m - 1)).num(half(b + c + m + 1));
    q.den(half(a + b - 1)).den(half(a + c + 1)).den(half(b + c));
    q.den(int(floor_half(s + 1)) + &lo).den(int(ceil_half(s - 1)) + &hi);
    let sign = if is_even(ceil_half(a)) { 1 } else { -1 };
    Ok(int(sign) * q.eval()?)
}

/// Which off-center placement a conjectural formula describes: the core
/// moved one unit (`One`, all sides of equal parity) or three half-units
/// (`ThreeHalves`, `a` of the other parity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjectureId {
    One,
    ThreeHalves,
}

impl ConjectureId {
    pub fn name(self) -> &'static str {
        match self {
            ConjectureId::One => "one",
            ConjectureId::ThreeHalves => "three-halves",
        }
    }

    /// The core displacement matching the determinant `build_cored_matrix`.
    pub fn epsilon(self) -> Rational {
        match self {
            ConjectureId::One => int(1),
            ConjectureId::ThreeHalves => half(3),
        }
    }
}

/// Conjectured count of tilings of a hexagon whose core sits one unit
/// (`One`) or three half-units (`ThreeHalves`) away from the center.
///
/// Fails with a domain error on a parity mismatch, and also when one of the
/// hyperfactorial arguments is a negative integer; that happens only for
/// degenerate tuples such as `a = b = 0`, where the displaced core leaves
/// the hexagon.
pub fn conjecture_rhs(which: ConjectureId, a: u32, b: u32, c: u32, m: u32) -> Result<Rational> {
    let (a, b, c, m) = (a as i64, b as i64, c as i64, m as i64);
    let same = a % 2 == b % 2 && b % 2 == c % 2;
    match which {
        ConjectureId::One if !same => {
            return Err(Error::domain(format!(
                "the one-unit formula needs a ≡ b ≡ c (mod 2), got ({a},{b},{c})"
            )))
        }
        ConjectureId::ThreeHalves if same || b % 2 != c % 2 => {
            return Err(Error::domain(format!(
                "the three-half-unit formula needs b ≡ c ≢ a (mod 2), got ({a},{b},{c})"
            )))
        }
        _ => {}
    }
    let s = a + b + c;
    let mut q = HyperRatio::new();
    outer_block(&mut q, a, b, c, m);
    q.num(int(m + ceil_half(s))).num(int(m + floor_half(s)));
    side_block(&mut q, a, b, c, m);
    q.num2(half(m));
    q.den(half(m) + int(ceil_half(s))).den(half(m) + int(floor_half(s)));
    let (scale, poly) = match which {
        ConjectureId::One => {
            q.den(half(a + b + 2 * m + 2)).den(half(a + c + 2 * m - 2)).den(half(b + c + 2 * m));
            q.num2(half(a + b + m)).num2(half(a + c + m)).num2(half(b + c + m));
            q.den(half(a + b - 2)).den(half(a + c + 2)).den(half(b + c));
            (Rational::new(1.into(), 4.into()), p1(a, b, c, m))
        }
        ConjectureId::ThreeHalves => {
            q.num(int(ceil_half(a + b)) + half(m)).num(int(floor_half(a + b)) + half(m));
            q.num(int(floor_half(a + c)) + half(m)).num(int(ceil_half(a + c)) + half(m));
            q.num2(half(b + c + m));
            q.den(int(floor_half(a + b) - 1)).den(int(ceil_half(a + c) + 1)).den(half(b + c));
            q.den(int(floor_half(a + c) + m - 1)).den(half(b + c + 2 * m)).den(int(ceil_half(a + b) + m + 1));
            (Rational::new(1.into(), 16.into()), p2(a, b, c, m))
        }
    };
    Ok(scale * q.eval()? * int(poly))
}

fn p1(a: i64, b: i64, c: i64, m: i64) -> i64 {
    if a % 2 == 0 {
        (a + b) * (a + c) + 2 * a * m
    } else {
        (a + b) * (a + c) + 2 * (a + b + c + m) * m
    }
}

fn p2(a: i64, b: i64, c: i64, m: i64) -> i64 {
    let base = ((a + b).pow(2) - 1) * ((a + c).pow(2) - 1);
    if a % 2 == 0 {
        base + 4
            * a
            * m
            * (a * a + 2 * a * b + b * b + 2 * a * c + 3 * b * c + c * c + 2 * a * m + 3 * b * m + 3 * c * m + 2 * m * m
                - 1)
    } else {
        base + 4 * (a + b + c + m) * m * (a * a + b * c - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_values() {
        assert_eq!(macmahon_box(0, 5, 7), BigInt::from(1));
        assert_eq!(macmahon_box(1, 1, 1), BigInt::from(2));
        assert_eq!(macmahon_box(2, 2, 2), BigInt::from(20));
        // Independent: tilings of an a×b×c box are plane partitions in an
        // a×b box with entries ≤ c; for a = 1 this is binom(b+c, b).
        assert_eq!(macmahon_box(1, 3, 4), BigInt::from(35));
    }

    #[test]
    fn empty_sides_give_one() {
        for m in 0..5 {
            let v = count_cored_formula(&CoredHexagon::new(0, 0, 0, m), false).unwrap();
            assert_eq!(v, int(1));
        }
    }

    #[test]
    fn no_core_reduces_to_box() {
        for (a, b, c) in [(1, 1, 1), (2, 2, 2), (2, 0, 4), (1, 3, 1), (3, 3, 3)] {
            let v = count_cored_formula(&CoredHexagon::new(a, b, c, 0), false).unwrap();
            assert_eq!(v, Rational::from_integer(macmahon_box(a, b, c)), "{a} {b} {c}");
        }
        for (a, b, c) in [(1, 0, 0), (1, 2, 2), (0, 1, 3), (3, 2, 4)] {
            let h = CoredHexagon::new(a, b, c, 0);
            let v = count_cored_formula(&h, false).unwrap();
            assert_eq!(v, Rational::from_integer(macmahon_box(a, b, c)), "{a} {b} {c}");
        }
    }

    #[test]
    fn signed_all_odd_vanishes() {
        for m in 0..4 {
            let v = count_cored_formula(&CoredHexagon::new(1, 3, 5, m), true).unwrap();
            assert_eq!(v, int(0));
        }
    }

    #[test]
    fn conjecture_parity_checks() {
        assert!(conjecture_rhs(ConjectureId::One, 1, 2, 2, 0).is_err());
        assert!(conjecture_rhs(ConjectureId::ThreeHalves, 2, 2, 2, 0).is_err());
        assert!(conjecture_rhs(ConjectureId::One, 0, 0, 2, 2).is_err());
    }
}
