//! The constant `k` in `L(C_{an,bn,cn}(mn)) ~ e^{k n²}` for `a ≡ b ≡ c (mod 2)`.

use std::str::FromStr;

use dashu_float::DBig;
use num_bigint::{BigInt, Sign};

use super::{count_cored_formula, half, int};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::tilings::CoredHexagon;

/// Significant decimal digits used when the caller does not choose.
pub const DEFAULT_PRECISION: usize = 50;

/// Extra digits carried through the sum and dropped at the end.
const GUARD_DIGITS: usize = 10;

fn to_dbig(r: &Rational, precision: usize) -> DBig {
    let parse = |s: String| {
        DBig::from_str(&s)
            .expect("decimal integer")
            .with_precision(precision)
            .value()
    };
    parse(r.numer().to_string()) / parse(r.denom().to_string())
}

/// Accumulates `Σ coeff · s² · log(arg)` in high precision.
struct LogSum {
    precision: usize,
    total: DBig,
}

impl LogSum {
    fn new(precision: usize) -> Self {
        LogSum { precision, total: to_dbig(&int(0), precision) }
    }

    /// Adds `coeff · s² · log(arg)`. A vanishing `s` contributes zero even
    /// when `arg` is zero, matching the limit `x² log x → 0`.
    fn add(&mut self, coeff: Rational, s: Rational, arg: Rational) -> Result<()> {
        if s == int(0) || coeff == int(0) {
            return Ok(());
        }
        if arg <= int(0) {
            return Err(Error::domain(format!("logarithm of nonpositive argument {arg}")));
        }
        let log = to_dbig(&arg, self.precision).ln();
        let weight = to_dbig(&(coeff * &s * &s), self.precision);
        self.total = &self.total + weight * log;
        Ok(())
    }
}

/// The hyperfactorial arguments of the same-parity product formula with
/// `a, b, c, m` scaled by `n → ∞`, as `(exponent, argument)` pairs.
/// Floors and ceilings of `x/2` both tend to `x/2` and are merged.
fn scaled_factors(a: i64, b: i64, c: i64, m: i64) -> Vec<(i64, Rational)> {
    let s = a + b + c;
    let r = |n: i64| int(n);
    let mut out = Vec::new();
    for x in [a + m, b + m, c + m, s + m] {
        out.push((1, r(x)));
    }
    out.push((2, r(m) + half(s)));
    for x in [a + b, a + c, b + c] {
        out.push((-1, r(x + m)));
        out.push((-1, half(x) + r(m)));
        out.push((2, half(x + m)));
        out.push((-1, half(x)));
    }
    for x in [a, b, c] {
        out.push((2, half(x)));
        out.push((-2, half(m + x)));
    }
    out.push((2, half(m)));
    out.push((-2, half(m + s)));
    out
}

/// The constant `k` at the requested number of significant digits.
///
/// Uses `log h(xn) = (xn)²/2 · log(xn) − 3(xn)²/4 + O(n log n)`: the
/// quadratic and `log n` parts cancel across the product, leaving
/// `k = Σ e · x²/2 · log x` over [`scaled_factors`].
///
/// `a, b, c` must share a parity. Zero arguments contribute `0 · log 0`,
/// which is read as `0`.
pub fn asymptotic_k(a: u32, b: u32, c: u32, m: u32, precision: usize) -> Result<DBig> {
    if !(a % 2 == b % 2 && b % 2 == c % 2) {
        return Err(Error::domain(format!("a, b, c must have the same parity, got ({a},{b},{c})")));
    }
    if precision == 0 {
        return Err(Error::domain("precision must be positive"));
    }
    let mut sum = LogSum::new(precision + GUARD_DIGITS);
    for (e, x) in scaled_factors(a as i64, b as i64, c as i64, m as i64) {
        sum.add(half(e), x.clone(), x)?;
    }
    Ok(sum.total.with_precision(precision).value())
}

/// [`asymptotic_k`] at [`DEFAULT_PRECISION`].
pub fn asymptotic_k_default(a: u32, b: u32, c: u32, m: u32) -> Result<DBig> {
    asymptotic_k(a, b, c, m, DEFAULT_PRECISION)
}

/// One row of the convergence table: `log L(C_{an,bn,cn}(mn)) / n²` and
/// its difference from `k`.
#[derive(Clone, Debug)]
pub struct AsymptoticRow {
    pub n: u32,
    pub log_ratio: DBig,
    pub deviation: DBig,
}

/// `log(count) / n²` at the given precision; `count` must be positive.
pub fn log_ratio(count: &BigInt, n: u32, precision: usize) -> Result<DBig> {
    if count.sign() != Sign::Plus || n == 0 {
        return Err(Error::domain(format!("need a positive count and n, got {count} and {n}")));
    }
    let p = precision + GUARD_DIGITS;
    let log = to_dbig(&Rational::from_integer(count.clone()), p).ln();
    let r = log / to_dbig(&int(n as i64 * n as i64), p);
    Ok(r.with_precision(precision).value())
}

/// Exact counts from the product formula at each `n`, compared with `k`.
pub fn asymptotic_table(a: u32, b: u32, c: u32, m: u32, ns: &[u32], precision: usize) -> Result<(DBig, Vec<AsymptoticRow>)> {
    let k = asymptotic_k(a, b, c, m, precision)?;
    let rows = ns
        .iter()
        .map(|&n| {
            let h = CoredHexagon::new(a * n, b * n, c * n, m * n);
            let count = count_cored_formula(&h, false)?.to_integer();
            let log_ratio = log_ratio(&count, n, precision)?;
            let deviation = (&log_ratio - &k).with_precision(precision).value();
            Ok(AsymptoticRow { n, log_ratio, deviation })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((k, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precisions_agree() {
        let lo = asymptotic_k(1, 1, 1, 1, 30).unwrap();
        let hi = asymptotic_k(1, 1, 1, 1, 60).unwrap();
        let diff = (hi.with_precision(30).value() - lo.clone()).to_f64().value().abs();
        assert!(diff <= 1e-28 * lo.to_f64().value().abs().max(1.0));
    }

    #[test]
    fn box_constant() {
        // log of the hexagon count with sides n,n,n grows like (9/2 log 3 − 6 log 2) n²
        let k = asymptotic_k(1, 1, 1, 0, 40).unwrap().to_f64().value();
        let expected = 4.5 * 3f64.ln() - 6.0 * 2f64.ln();
        assert!((k - expected).abs() < 1e-12, "{k} vs {expected}");
    }

    #[test]
    fn single_tiling_regions_have_zero_constant() {
        for m in 0..4 {
            let k = asymptotic_k(2, 0, 0, 2 * m, 30).unwrap().to_f64().value();
            assert!(k.abs() < 1e-25, "m={m}: {k}");
        }
    }

    #[test]
    fn quadratic_terms_cancel() {
        for (a, b, c, m) in [(1, 1, 1, 0), (1, 3, 5, 2), (2, 0, 4, 7)] {
            let q: Rational = scaled_factors(a, b, c, m).into_iter().map(|(e, x)| int(e) * &x * &x).sum();
            assert_eq!(q, int(0));
        }
    }

    #[test]
    fn table_converges_for_unit_core() {
        let (_, rows) = asymptotic_table(1, 1, 1, 1, &[4, 8, 16], 50).unwrap();
        let dev: Vec<f64> = rows.iter().map(|r| r.deviation.to_f64().value().abs()).collect();
        assert!(dev[0] > dev[1] && dev[1] > dev[2] && dev[2] < 0.1, "{dev:?}");
    }

    #[test]
    fn parity_checked() {
        assert!(asymptotic_k(1, 2, 1, 1, 20).is_err());
    }
}
