//! Terminating hypergeometric series, the classical summation and
//! transformation formulas used in the determinant evaluations, and the
//! Gaussian binomial coefficient at `q = −1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, format_rational, int, pochhammer, rat, Rational};

/// The series `rFs[upper; lower; argument]`, required to terminate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminatingSeries {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub argument: Rational,
}

impl TerminatingSeries {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, argument: Rational) -> Self {
        TerminatingSeries { upper, lower, argument }
    }

    /// Index of the last possibly nonzero term: the smallest `n` such that
    /// `−n` is an upper parameter.
    pub fn termination_index(&self) -> Option<u64> {
        self.upper
            .iter()
            .filter(|u| u.is_integer() && !u.is_positive())
            .filter_map(|u| (-u.to_integer()).to_u64())
            .min()
    }
}

/// If `p` is a nonpositive integer `−L`, returns `L`.
fn nonpositive_integer(p: &Rational) -> Option<u64> {
    if p.is_integer() && !p.is_positive() {
        (-p.to_integer()).to_u64()
    } else {
        None
    }
}

/// Checks that `(lower)_k` is nonzero for all `k ≤ n`.
fn check_lower(lower: &[Rational], n: u64, what: &str) -> Result<()> {
    for (idx, l) in lower.iter().enumerate() {
        if let Some(zero_at) = nonpositive_integer(l) {
            if zero_at < n {
                return Err(Error::domain(format!(
                    "{what}: lower parameter #{idx} = {} makes (.)_k vanish at k = {} within the terminating range 0..={n}",
                    format_rational(l),
                    zero_at + 1
                )));
            }
        }
    }
    Ok(())
}

/// Exact value of a terminating series.
pub fn eval_terminating(s: &TerminatingSeries) -> Result<Rational> {
    let n = s.termination_index().ok_or_else(|| {
        Error::domain("series does not terminate: no upper parameter is a nonpositive integer")
    })?;
    check_lower(&s.lower, n, "series")?;
    Ok(sum_terms(&s.upper, &s.lower, &s.argument, n, |_| Rational::one()))
}

/// `Σ_{k=0}^{n} Π(upper)_k / (k! Π(lower)_k) · z^k · extra(k)`, computed by
/// term ratios.
fn sum_terms(
    upper: &[Rational],
    lower: &[Rational],
    z: &Rational,
    n: u64,
    extra: impl Fn(u64) -> Rational,
) -> Rational {
    let mut total = Rational::zero();
    let mut term = Rational::one();
    for k in 0..=n {
        if k > 0 {
            let kk = int(k as i64 - 1);
            let mut num = z.clone();
            for u in upper {
                num *= u + &kk;
            }
            let mut den = int(k as i64);
            for l in lower {
                den *= l + &kk;
            }
            if num.is_zero() {
                break;
            }
            term = term * num / den;
        }
        total += &term * extra(k);
    }
    total
}

/// The summation and transformation formulas exposed for verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    /// Parameters `[A, C, n]`.
    ChuVandermonde,
    /// Parameters `[A, B, C, n]`.
    PfaffSaalschuetz,
    /// Parameters `[A, B, D, E, n]`.
    Thomae,
    /// Parameters `[A, F, n]`.
    GesselStanton5F4,
}

impl IdentityId {
    pub const ALL: [IdentityId; 4] = [
        IdentityId::ChuVandermonde,
        IdentityId::PfaffSaalschuetz,
        IdentityId::Thomae,
        IdentityId::GesselStanton5F4,
    ];

    pub fn arity(self) -> usize {
        match self {
            IdentityId::ChuVandermonde => 3,
            IdentityId::PfaffSaalschuetz => 4,
            IdentityId::Thomae => 5,
            IdentityId::GesselStanton5F4 => 3,
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            IdentityId::ChuVandermonde => &["A", "C", "n"],
            IdentityId::PfaffSaalschuetz => &["A", "B", "C", "n"],
            IdentityId::Thomae => &["A", "B", "D", "E", "n"],
            IdentityId::GesselStanton5F4 => &["A", "F", "n"],
        }
    }
}

fn nonneg_index(p: &Rational, name: &str) -> Result<u64> {
    nonpositive_integer(&-p.clone())
        .ok_or_else(|| Error::domain(format!("{name} must be a nonnegative integer, got {}", format_rational(p))))
}

fn nonzero_ratio(num: Rational, den: Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::domain(format!("{what} vanishes")));
    }
    Ok(num / den)
}

/// Both sides of the named identity, each evaluated exactly.
pub fn identity_pair(id: IdentityId, params: &[Rational]) -> Result<(Rational, Rational)> {
    if params.len() != id.arity() {
        return Err(Error::domain(format!(
            "{id:?} takes {} parameters, got {}",
            id.arity(),
            params.len()
        )));
    }
    let one = Rational::one();
    match id {
        IdentityId::ChuVandermonde => {
            let (a, c) = (&params[0], &params[1]);
            let n = nonneg_index(&params[2], "n")?;
            let nq = int(n as i64);
            check_lower(std::slice::from_ref(c), n, "2F1")?;
            let lhs = eval_terminating(&TerminatingSeries::new(
                vec![a.clone(), -nq],
                vec![c.clone()],
                one,
            ))?;
            let rhs = nonzero_ratio(pochhammer(&(c - a), n), pochhammer(c, n), "(C)_n")?;
            Ok((lhs, rhs))
        }
        IdentityId::PfaffSaalschuetz => {
            let (a, b, c) = (&params[0], &params[1], &params[2]);
            let n = nonneg_index(&params[3], "n")?;
            let nq = int(n as i64);
            let lower2 = &one + a + b - c - &nq;
            check_lower(&[c.clone(), lower2.clone()], n, "3F2")?;
            let lhs = eval_terminating(&TerminatingSeries::new(
                vec![a.clone(), b.clone(), -nq],
                vec![c.clone(), lower2],
                one,
            ))?;
            let rhs = nonzero_ratio(
                pochhammer(&(c - a), n) * pochhammer(&(c - b), n),
                pochhammer(c, n) * pochhammer(&(c - a - b), n),
                "(C)_n (C-A-B)_n",
            )?;
            Ok((lhs, rhs))
        }
        IdentityId::Thomae => {
            let (a, b, d, e) = (&params[0], &params[1], &params[2], &params[3]);
            let n = nonneg_index(&params[4], "n")?;
            let nq = int(n as i64);
            // Both sides must be defined over the full range 0..=n: an upper
            // parameter that ends one series early can hide a pole.
            check_lower(&[d.clone(), e.clone(), &one + b - e - &nq], n, "Thomae 3F2")?;
            let lhs = eval_terminating(&TerminatingSeries::new(
                vec![a.clone(), b.clone(), -nq.clone()],
                vec![d.clone(), e.clone()],
                one.clone(),
            ))?;
            let inner = eval_terminating(&TerminatingSeries::new(
                vec![-nq.clone(), b.clone(), d - a],
                vec![d.clone(), &one + b - e - &nq],
                one,
            ))?;
            let pref = nonzero_ratio(pochhammer(&(e - b), n), pochhammer(e, n), "(E)_n")?;
            Ok((lhs, pref * inner))
        }
        IdentityId::GesselStanton5F4 => {
            let (a, f) = (&params[0], &params[1]);
            let n = nonneg_index(&params[2], "n")?;
            gessel_stanton_pair(a, f, n)
        }
    }
}

/// The 5F4 identity at argument 4. The well-poised pair
/// `(1+A/3)_k / (A/3)_k` is used in its cancelled form `(A+3k)/A`, so that
/// `A/3` may be a negative integer; `A = 0` is rejected.
fn gessel_stanton_pair(a: &Rational, f: &Rational, n: u64) -> Result<(Rational, Rational)> {
    if a.is_zero() {
        return Err(Error::domain("5F4 identity requires A != 0"));
    }
    let nq = int(n as i64);
    let half = rat(1, 2);
    let upper = vec![
        a.clone(),
        f * &half,
        &half + a - f * &half + &nq,
        -nq.clone(),
    ];
    let lower = vec![
        int(1) + a - f,
        -a.clone() + f - int(2) * &nq,
        int(1) + a + int(2) * &nq,
    ];
    check_lower(&lower, n, "5F4")?;
    let lhs = sum_terms(&upper, &lower, &int(4), n, |k| (a + int(3 * k as i64)) / a);
    let rhs = nonzero_ratio(
        pochhammer(&(int(1) + a), 2 * n),
        pochhammer(&(int(1) + a - f), 2 * n),
        "(1+A-F)_{2n}",
    )?;
    Ok((lhs, rhs))
}

/// Draws a rational with numerator in `[−20, 20]` and denominator in `{1,2,3}`.
pub fn sample_rational<R: Rng>(rng: &mut R) -> Rational {
    let p = rng.gen_range(-20i64..=20);
    let q = rng.gen_range(1i64..=3);
    rat(p, q)
}

/// Draws parameters for `id` until [`identity_pair`] accepts them, with at
/// most `budget` attempts. The terminating index `n` is drawn from `0..=8`.
pub fn sample_identity_params<R: Rng>(
    id: IdentityId,
    rng: &mut R,
    budget: usize,
) -> Option<(Vec<Rational>, (Rational, Rational))> {
    for _ in 0..budget {
        let mut params: Vec<Rational> = (0..id.arity() - 1).map(|_| sample_rational(rng)).collect();
        params.push(int(rng.gen_range(0i64..=8)));
        if let Ok(pair) = identity_pair(id, &params) {
            return Some((params, pair));
        }
    }
    None
}

/// The Gaussian binomial `[n choose k]_q` at `q = −1`: zero if `n` is even
/// and `k` odd, otherwise `binom(⌊n/2⌋, ⌊k/2⌋)`; zero for `k > n`.
pub fn qbinom_neg1(n: u64, k: u64) -> BigInt {
    if k > n || (n.is_multiple_of(2) && k % 2 == 1) {
        return BigInt::zero();
    }
    binomial((n / 2) as i64, (k / 2) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_series() {
        let s = TerminatingSeries::new(vec![int(-2), int(1)], vec![int(3)], int(1));
        assert_eq!(eval_terminating(&s).unwrap(), rat(1, 2));
        let s = TerminatingSeries::new(vec![int(0), rat(1, 2)], vec![rat(7, 3)], int(5));
        assert_eq!(eval_terminating(&s).unwrap(), int(1));
    }

    #[test]
    fn thomae_rejects_a_pole_hidden_by_early_termination() {
        let params = [int(0), rat(13, 2), int(-6), int(9), int(8)];
        assert!(matches!(identity_pair(IdentityId::Thomae, &params), Err(Error::Domain(_))));
    }

    #[test]
    fn non_terminating_rejected() {
        let s = TerminatingSeries::new(vec![rat(1, 2)], vec![int(3)], int(1));
        assert!(matches!(eval_terminating(&s), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_lower_names_parameter() {
        let s = TerminatingSeries::new(vec![int(-3)], vec![int(5), int(-1)], int(1));
        let msg = eval_terminating(&s).unwrap_err().to_string();
        assert!(msg.contains("lower parameter #1"), "{msg}");
        // a lower parameter -L with L >= n is harmless
        let s = TerminatingSeries::new(vec![int(-2)], vec![int(-2)], int(1));
        assert!(eval_terminating(&s).is_ok());
    }

    #[test]
    fn identity_examples() {
        let cv = identity_pair(IdentityId::ChuVandermonde, &[int(1), int(3), int(2)]).unwrap();
        assert_eq!(cv, (rat(1, 2), rat(1, 2)));
        let cv = identity_pair(IdentityId::ChuVandermonde, &[rat(1, 2), rat(5, 2), int(3)]).unwrap();
        assert_eq!(cv.0, cv.1);
        let ps = identity_pair(IdentityId::PfaffSaalschuetz, &[rat(1, 3), int(2), rat(7, 2), int(0)]).unwrap();
        assert_eq!(ps, (int(1), int(1)));
        let gs = identity_pair(IdentityId::GesselStanton5F4, &[int(-3), rat(1, 2), int(2)]).unwrap();
        assert_eq!(gs.0, gs.1);
        assert_eq!(gs.0, int(0));
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom_neg1(2, 1), BigInt::from(0));
        assert_eq!(qbinom_neg1(4, 2), BigInt::from(2));
        assert_eq!(qbinom_neg1(7, 0), BigInt::from(1));
        assert_eq!(qbinom_neg1(3, 4), BigInt::from(0));
    }
}
