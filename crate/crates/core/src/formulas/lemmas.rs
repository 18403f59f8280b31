//! Product formulas for the polynomial determinants produced by
//! [`crate::lgv::cored_det_transform`], one per parity class of `(a, m)`
//! and placement of the core.

use super::{half, int, pow2, prod, rpow, HyperRatio};
use crate::error::{Error, Result};
use crate::exactnum::{pochhammer, Rational};

/// Closed form of `det(D)` where `(prefactor, D) = cored_det_transform(a,b,c,m,shifted)`.
///
/// Requires `b ≡ c (mod 2)`, and `shifted` exactly when `a` has the other
/// parity. For `a` and `m` both odd in the centered case the determinant
/// vanishes.
pub fn lemma_rhs(a: u32, b: u32, c: u32, m: u32, shifted: bool) -> Result<Rational> {
    if b % 2 != c % 2 {
        return Err(Error::domain(format!("b={b} and c={c} must have the same parity")));
    }
    if ((a + b) % 2 == 1) != shifted {
        return Err(Error::domain(format!(
            "a={a}, b={b}: {} placement needs a {} b (mod 2)",
            if shifted { "shifted" } else { "centered" },
            if shifted { "≢" } else { "≡" }
        )));
    }
    let p = Params::new(a, b, c, m);
    match (shifted, a % 2, m % 2) {
        (false, 0, 0) => p.centered_even_even(),
        (false, 1, 0) => p.centered_odd_even(),
        (false, 0, _) => p.centered_even_odd(),
        (false, _, _) => Ok(int(0)),
        (true, 0, 0) => p.shifted_even_even(),
        (true, 1, 0) => p.shifted_odd_even(),
        (true, 0, _) => p.shifted_even_odd(),
        (true, _, _) => p.shifted_odd_odd(),
    }
}

struct Params {
    a: i64,
    m: i64,
    b: Rational,
    c: Rational,
    /// `b + c`.
    x: i64,
}

impl Params {
    fn new(a: u32, b: u32, c: u32, m: u32) -> Self {
        Params {
            a: a as i64,
            m: m as i64,
            b: int(b as i64),
            c: int(c as i64),
            x: (b + c) as i64,
        }
    }

    /// `2^{−m(a+m−1)/2}`, with an extra `2^{−1/2}` folded in when `extra_half`.
    fn two_power(&self, extra_half: bool) -> Result<Rational> {
        let twice = self.m * (self.a + self.m - 1) + extra_half as i64;
        pow2(&-half(twice))
    }

    /// `Π_{k=lo}^{hi} (x + s + 2k)^{e(k)}`.
    fn linear(&self, lo: i64, hi: i64, s: i64, e: impl Fn(i64) -> i64) -> Result<Rational> {
        prod(lo, hi, |k| Ok(rpow(&int(self.x + s + 2 * k), e(k))))
    }

    /// `Π_{k=1}^{hi} (y/2 + s + k)_n` for `y ∈ {b, c}` and shift `s`.
    fn side(&self, y: &Rational, s: Rational, hi: i64, n: i64) -> Result<Rational> {
        prod(1, hi, |k| Ok(pochhammer(&(y / int(2) + &s + int(k)), n as u64)))
    }

    /// Shared tail `Π_{k=m/2+1}^{m} (x+2k)^{a+m−k} Π_{k=1}^{m/2} (x+2k)^{m−k}`
    /// for even `m`.
    fn even_m_tail(&self) -> Result<Rational> {
        let (a, m) = (self.a, self.m);
        Ok(self.linear(m / 2 + 1, m, 0, |k| a + m - k)? * self.linear(1, m / 2, 0, |k| m - k)?)
    }

    /// The odd-`m` analogue `Π_{k=(m+1)/2}^{m} (x+2k)^{a+m−k} Π_{k=1}^{(m−1)/2} (x+2k)^{m−k}`.
    fn odd_m_tail(&self) -> Result<Rational> {
        let (a, m) = (self.a, self.m);
        Ok(self.linear((m + 1) / 2, m, 0, |k| a + m - k)? * self.linear(1, (m - 1) / 2, 0, |k| m - k)?)
    }

    fn centered_even_even(&self) -> Result<Rational> {
        let (a, m) = (self.a, self.m);
        let mut q = HyperRatio::new();
        q.num(int(a + m)).num2(half(a)).num2(half(m)).den2(half(a + m));
        let sides = prod(1, m / 2, |k| {
            let pb = pochhammer(&(&self.b / int(2) + int(k)), (a / 2) as u64);
            let pc = pochhammer(&(&self.c / int(2) + int(k)), (a / 2) as u64);
            Ok(&pb * &pb * &pc * &pc)
        })?;
        Ok(q.eval()?
            * self.two_power(false)?
            * sides
            * self.linear(0, a / 2 - 1, m + 1, |k| a - 2 * k - 1)?
            * self.linear(1, a / 2 - 1, 2 * m, |k| a - 2 * k)?
            * self.even_m_tail()?)
    }

    fn centered_odd_even(&self) -> Result<Rational> {
        let (a, m) = (self.a, self.m);
        let mut q = HyperRatio::new();
        q.num(int(a + m)).num(half(a - 1)).num(half(a + 1)).num2(half(m));
        q.den(half(a + m - 1)).den(half(a + m + 1));
        let (up, down) = ((a + 1) / 2, (a - 1) / 2);
        let sides = self.side(&self.b, half(-1), m / 2, up)?
            * self.side(&self.b, half(1), m / 2, down)?
            * self.side(&self.c, half(-1), m / 2, up)?
            * self.side(&self.c, half(1), m / 2, down)?;
        Ok(q.eval()?
            * self.two_power(false)?
            * sides
            * self.linear(0, (a - 1) / 2 - 1, m + 1, |k| a - 2 * k - 1)?
            * self.linear(1, (a - 1) / 2, 2 * m, |k| a - 2 * k)?
            * self.even_m_tail()?)
    }

    fn centered_even_odd(&self) -> Result<Rational> {
        let (a, m) = (self.a, self.m);
        let mut q = HyperRatio::new();
        q.num(int(a + m)).num2(half(a)).num(half(m - 1)).num(half(m + 1));
        q.den(half(a + m - 1)).den(half(a + m + 1));
        let n = (a / 2) as u64;
        let mut sides = pochhammer(&(&self.b / int(2) + half(m + 1)), n)
            * pochhammer(&(&self.c / int(2) + half(m + 1)), n);
        sides *= prod(1, (m - 1) / 2, |k| {
            let pb = pochhammer(&(&self.b / int(2) + int(k)), n);
            let pc = pochhammer(&(&self.c / int(2) + int(k)), n);
            Ok(&pb * &pb * &pc * &pc)
        })?;
        let sign = if (a / 2) % 2 == 0 { int(1) } else { int(-1) };
        Ok(sign
            * q.eval()?
            * self.two_power(false)?
            * sides
            * self.linear(1, a / 2 - 1, m, |k| a - 2 * k)?
            * self.linear(1, a / 2 - 1, 2 * m, |k| a - 2 * k)?
            * self.linear(0, (m - 1) / 2, 1 + m, |_| a)?
            * self.linear(1, m, 0, |k| m - k)?)
    }

    fn shifted_even_even(&self) -> Result<Rational> {
        let (a, m) = (self.a, self.m);
        let mut q = HyperRatio::new();
        q.num(int(a + m)).num2(half(a)).num2(half(m)).den2(half(a + m));
        let n = a / 2;
        let sides = self.side(&self.b, half(-1), m / 2, n)?
            * self.side(&self.b, half(1), m / 2, n)?
            * self.side(&self.c, half(-1), m / 2, n)?
            * self.side(&self.c, half(1), m / 2, n)?;
        Ok(q.eval()?
            * self.two_power(false)?
            * sides
            * self.linear(0, a / 2 - 1, m + 1, |k| a - 2 * k - 1)?
            * self.linear(1, a / 2 - 1, 2 * m, |k| a - 2 * k)?
            * self.even_m_tail()?)
    }

    fn shifted_odd_even(&self) -> Result<Rational> {
        let (a, m) = (self.a, self.m);
        let mut q = HyperRatio::new();
        q.num(int(a + m)).num(half(a - 1)).num(half(a + 1)).num2(half(m));
        q.den(half(a + m - 1)).den(half(a + m + 1));
        let (up, down) = ((a + 1) / 2, (a - 1) / 2);
        let zero = int(0);
        let sides = self.side(&self.b, zero.clone(), m / 2, down)?
            * self.side(&self.b, zero.clone(), m / 2, up)?
            * self.side(&self.c, zero.clone(), m / 2, down)?
            * self.side(&self.c, zero, m / 2, up)?;
        Ok(q.eval()?
            * self.two_power(false)?
            * sides
            * self.linear(0, (a - 3) / 2, m + 1, |k| a - 2 * k - 1)?
            // Starts at k = 1: a k = 0 factor (b+c+2m)^a would vanish at
            // b = c = m = 0, where the determinant is 1.
            * self.linear(1, (a - 1) / 2, 2 * m, |k| a - 2 * k)?
            * self.even_m_tail()?)
    }

    fn shifted_even_odd(&self) -> Result<Rational> {
        let (a, m) = (self.a, self.m);
        let mut q = HyperRatio::new();
        q.num(int(a + m)).num2(half(a)).num(half(m - 1)).num(half(m + 1));
        q.den(half(a + m - 1)).den(half(a + m + 1));
        let n = a / 2;
        let sides = self.side(&self.b, half(-1), (m + 1) / 2, n)?
            * self.side(&self.b, half(1), (m - 1) / 2, n)?
            * self.side(&self.c, half(-1), (m + 1) / 2, n)?
            * self.side(&self.c, half(1), (m - 1) / 2, n)?;
        let sign = if (a / 2) % 2 == 0 { int(1) } else { int(-1) };
        Ok(sign
            * q.eval()?
            * self.two_power(false)?
            * sides
            * self.linear(1, a / 2 - 1, m, |k| a - 2 * k)?
            * self.linear(1, a / 2 - 1, 2 * m, |k| a - 2 * k)?
            * self.odd_m_tail()?)
    }

    fn shifted_odd_odd(&self) -> Result<Rational> {
        let (a, m) = (self.a, self.m);
        let mut q = HyperRatio::new();
        q.num(int(a + m)).num(half(a - 1)).num(half(a + 1)).num(half(m - 1)).num(half(m + 1));
        q.den2(half(a + m));
        let (up, down) = ((a + 1) / 2, (a - 1) / 2);
        let zero = int(0);
        let sides = self.side(&self.b, zero.clone(), (m + 1) / 2, down)?
            * self.side(&self.b, zero.clone(), (m - 1) / 2, up)?
            * self.side(&self.c, zero.clone(), (m + 1) / 2, down)?
            * self.side(&self.c, zero, (m - 1) / 2, up)?;
        let sign = if ((a + 1) / 2) % 2 == 0 { int(1) } else { int(-1) };
        Ok(sign
            * q.eval()?
            * self.two_power(true)?
            * sides
            * self.linear(1, (a - 1) / 2, m, |k| a - 2 * k)?
            * self.linear(1, (a - 1) / 2, 2 * m, |k| a - 2 * k)?
            * self.odd_m_tail()?)
    }
}
