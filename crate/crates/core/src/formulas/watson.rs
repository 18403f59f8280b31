//! Multiple Watson-type sums with a squared Vandermonde weight and their
//! closed-form evaluations.
//!
//! The sum runs over `0 ≤ k₁ < k₂ < … < k_a ≤ M` (the terms vanish for
//! `k > M` through `(−M)_k`). The closed forms hold with the zero index
//! included; for `a = 1, M = 0` the sum is the single term `1` and the closed
//! form is `1`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{fact, half, int, poch, pow2, prod, rfact, rpoch, sign};
use crate::error::{Error, Result};
use crate::exactnum::{pochhammer, Rational};

/// Which of the three summation theorems: they differ in the two lower
/// parameters of the summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WatsonVariant {
    W1,
    W2,
    W3,
}

impl WatsonVariant {
    pub const ALL: [WatsonVariant; 3] = [WatsonVariant::W1, WatsonVariant::W2, WatsonVariant::W3];

    pub fn name(self) -> &'static str {
        match self {
            WatsonVariant::W1 => "w1",
            WatsonVariant::W2 => "w2",
            WatsonVariant::W3 => "w3",
        }
    }
}

/// Smallest summation index.
const FIRST_INDEX: u32 = 0;

/// The two lower parameters `(L₁, L₂)` of the summand:
/// `W1: (a/2 − M/2 + C/2, 2B + a − 1)`,
/// `W2: (a/2 − M/2 + C/2 + 1/2, 2B + a − 2)`,
/// `W3: (a/2 − M/2 + C/2, 2B + a − 2)`.
pub fn watson_lower_parameters(
    variant: WatsonVariant,
    a: u32,
    m: u32,
    b: &Rational,
    c: &Rational,
) -> (Rational, Rational) {
    let base = half(a as i64) - half(m as i64) + c / int(2);
    let two_b = b * int(2) + int(a as i64);
    match variant {
        WatsonVariant::W1 => (base, two_b - int(1)),
        WatsonVariant::W2 => (base + half(1), two_b - int(2)),
        WatsonVariant::W3 => (base, two_b - int(2)),
    }
}

/// The multiple sum.
///
/// Fails when a lower Pochhammer symbol vanishes inside the summation range.
pub fn watson_lhs(variant: WatsonVariant, a: u32, m: u32, b: &Rational, c: &Rational) -> Result<Rational> {
    if a == 0 {
        return Err(Error::domain("the multiple sum needs a ≥ 1"));
    }
    let (l1, l2) = watson_lower_parameters(variant, a, m, b, c);
    for (name, l) in [("first lower parameter (a/2 − M/2 + C/2 + …)", &l1), ("second lower parameter (2B + a − …)", &l2)] {
        if pochhammer(l, m as u64).is_zero() {
            return Err(Error::domain(format!("{name} = {l} gives a vanishing Pochhammer symbol")));
        }
    }
    let minus_m = -int(m as i64);
    let terms: Vec<Rational> = (0..=m as u64)
        .map(|k| {
            pochhammer(&minus_m, k) * pochhammer(c, k) * pochhammer(b, k)
                / (fact(&int(k as i64)).expect("k ≥ 0") * pochhammer(&l1, k) * pochhammer(&l2, k))
        })
        .collect();
    let indices: Vec<u32> = (FIRST_INDEX..=m).collect();
    let mut total = Rational::zero();
    let mut chosen = Vec::with_capacity(a as usize);
    subsets(&indices, a as usize, 0, &mut chosen, &mut |ks| {
        let mut t = Rational::one();
        for (x, &ki) in ks.iter().enumerate() {
            t *= &terms[ki as usize];
            for &kj in &ks[x + 1..] {
                let d = int(ki as i64 - kj as i64);
                t *= &d * &d;
            }
        }
        total += t;
    });
    Ok(total)
}

fn subsets(items: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for i in start..items.len() {
        if items.len() - i < k - cur.len() {
            break;
        }
        cur.push(items[i]);
        subsets(items, k, i + 1, cur, visit);
        cur.pop();
    }
}

/// Closed-form value of the multiple sum, by the parities of `a` and `M`.
pub fn watson_rhs(variant: WatsonVariant, a: u32, m: u32, b: &Rational, c: &Rational) -> Result<Rational> {
    if a == 0 {
        return Err(Error::domain("the multiple sum needs a ≥ 1"));
    }
    let p = Params::new(a, m, b, c);
    match (variant, a % 2, m % 2) {
        (WatsonVariant::W1, 0, 0) => p.w1_even_even(),
        (WatsonVariant::W1, 0, _) => p.w1_even_odd(),
        (WatsonVariant::W1, _, 0) => p.w1_odd_even(),
        (WatsonVariant::W1, _, _) => Ok(Rational::zero()),
        (WatsonVariant::W2, 0, 0) => p.w2_even_even(),
        (WatsonVariant::W2, 0, _) => p.w2_even_odd(),
        (WatsonVariant::W2, _, 0) => p.w2_odd_even(),
        (WatsonVariant::W2, _, _) => p.w2_odd_odd(),
        (WatsonVariant::W3, 0, 0) => p.w3_even_even(),
        (WatsonVariant::W3, 0, _) => p.w3_even_odd(),
        (WatsonVariant::W3, _, 0) => p.w3_odd_even(),
        (WatsonVariant::W3, _, _) => p.w3_odd_odd(),
    }
}

/// Both sides, left first.
pub fn watson_pair(
    variant: WatsonVariant,
    a: u32,
    m: u32,
    b: &Rational,
    c: &Rational,
) -> Result<(Rational, Rational)> {
    Ok((watson_lhs(variant, a, m, b, c)?, watson_rhs(variant, a, m, b, c)?))
}

/// Parameters in the halved form the closed forms are written in.
struct Params {
    a: i64,
    b: Rational,
    /// `a/2`, `M/2`, `C/2`.
    ha: Rational,
    hm: Rational,
    hc: Rational,
    /// `2^{a²−a−aM} · M!^a · Π_{i=1}^{a} (B)_{i−1}`.
    common: Rational,
}

fn sq(r: Rational) -> Rational {
    &r * &r
}

fn pw(r: Rational, e: i64) -> Rational {
    super::rpow(&r, e)
}

impl Params {
    fn new(a: u32, m: u32, b: &Rational, c: &Rational) -> Self {
        let (ai, mi) = (a as i64, m as i64);
        let mfact = fact(&int(mi)).expect("M ≥ 0");
        let mut common = pow2(&int(ai * ai - ai - ai * mi)).expect("integer exponent") * pw(mfact, ai);
        for i in 1..=ai {
            common *= pochhammer(b, (i - 1) as u64);
        }
        Params { a: ai, b: b.clone(), ha: half(ai), hm: half(mi), hc: c / int(2), common }
    }

    fn half_a(&self) -> i64 {
        self.a / 2
    }

    fn w1_even_even(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead = sign(ha)? * &self.common * pw(rpoch(&(ha + hc - hm), &(hm - ha))?, self.a);
        let body = prod(1, self.half_a(), |i| {
            let i = int(i);
            Ok(sq(fact(&(&i - int(1)))?)
                * sq(poch(&(half(1) + hc), &(&i - int(1)))?)
                * poch(&(b - hc + &i - int(1)), &(hm - ha + int(1)))?
                * poch(&(b - hc + &i), &(hm - ha))?
                * rfact(&(hm - &i))?
                * rfact(&(hm - &i + int(1)))?
                * sq(rpoch(&(ha + b - half(1)), &(hm - &i + int(1)))?)
                * sq(rpoch(&(ha + b), &(&i - int(1)))?)
                * rpoch(&(int(1) + hc - &i + hm), &(&i * int(2) - int(1)))?)
        })?;
        Ok(lead * body)
    }

    fn w1_even_odd(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead = sign(ha)? * &self.common * pw(rpoch(&(ha + hc - hm), &(hm - ha + half(1)))?, self.a);
        let body = prod(1, self.half_a(), |i| {
            let i = int(i);
            Ok(sq(fact(&(&i - int(1)))?)
                * sq(rfact(&(hm - &i + half(1)))?)
                * poch(hc, &(&i - int(1)))?
                * poch(hc, &i)?
                * sq(poch(&(b - hc + &i - half(1)), &(hm - ha + half(1)))?)
                * rpoch(&(ha + b - half(1)), &(hm - &i + half(1)))?
                * rpoch(&(ha + b - half(1)), &(hm - &i + half(3)))?
                * sq(rpoch(&(ha + b), &(&i - int(1)))?)
                * rpoch(&(int(1) + hc - &i + hm), &(&i * int(2) - int(1)))?)
        })?;
        Ok(lead * body)
    }

    fn w1_odd_even(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead = sign(hm)?
            * &self.common
            * poch(&(b - hc + ha), &(hm - ha + half(1)))?
            * rfact(hm)?
            * rpoch(&(ha + b), hm)?
            * pw(rpoch(&(ha + hc - hm), &(hm - ha + half(1)))?, self.a);
        let body = prod(1, (self.a - 1) / 2, |i| {
            let i = int(i);
            Ok(fact(&(&i - int(1)))?
                * fact(&i)?
                * sq(poch(hc, &i)?)
                * sq(poch(&(b - hc + &i - half(1)), &(hm - ha + half(1)))?)
                * sq(rfact(&(hm - &i))?)
                * sq(rpoch(&(ha + b - half(1)), &i)?)
                * sq(rpoch(&(ha + b), &(hm - &i))?)
                * rpoch(&(half(1) + hc - &i + hm), &(&i * int(2)))?)
        })?;
        Ok(lead * body)
    }

    fn w2_even_even(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead = sign(ha)? * &self.common * pw(rpoch(&(half(1) + ha + hc - hm), &(hm - ha))?, self.a);
        let body = prod(1, self.half_a(), |i| {
            let i = int(i);
            Ok(sq(fact(&(&i - int(1)))?)
                * poch(hc, &(&i - int(1)))?
                * poch(hc, &i)?
                * rfact(&(hm - &i))?
                * rfact(&(hm - &i + int(1)))?
                * rpoch(&(ha + b - int(1)), &(&i - int(1)))?
                * rpoch(&(ha + b - int(1)), &i)?
                * poch(&(b - hc + &i - half(3)), &(hm - ha + int(1)))?
                * poch(&(b - hc + &i - half(1)), &(hm - ha))?
                * rpoch(&(ha + b - half(1)), &(hm - &i))?
                * rpoch(&(ha + b - half(1)), &(hm - &i + int(1)))?
                * rpoch(&(half(1) + hc - &i + hm), &(&i * int(2)))?)
        })?;
        Ok(lead * body)
    }

    fn w2_even_odd(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead =
            sign(ha)? * &self.common * pw(rpoch(&(half(1) + ha + hc - hm), &(hm - ha - half(1)))?, self.a);
        let body = prod(1, self.half_a(), |i| {
            let i = int(i);
            Ok(sq(fact(&(&i - int(1)))?)
                * sq(rfact(&(hm - &i + half(1)))?)
                * sq(poch(&(half(1) + hc), &(&i - int(1)))?)
                * sq(poch(&(b - hc + &i - int(1)), &(hm - ha + half(1)))?)
                * rpoch(&(ha + b - int(1)), &(&i - int(1)))?
                * rpoch(&(ha + b - int(1)), &i)?
                * sq(rpoch(&(ha + b - half(1)), &(hm - &i + half(1)))?)
                * rpoch(&(half(1) + hc - &i + hm), &(&i * int(2)))?)
        })?;
        Ok(lead * body)
    }

    fn w2_odd_even(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead = sign(hm)?
            * &self.common
            * poch(&(b - hc + ha - half(1)), &(hm - ha + half(1)))?
            * recip(&(hc + hm))?
            * rfact(hm)?
            * rpoch(&(ha + b - int(1)), &(hm - ha + half(1)))?
            * pw(rpoch(&(half(1) + ha + hc - hm), &(hm - ha - half(1)))?, self.a);
        let body = prod(1, (self.a - 1) / 2, |i| {
            let i = int(i);
            Ok(fact(&(&i - int(1)))?
                * fact(&i)?
                * poch(&(half(1) + hc), &(&i - int(1)))?
                * poch(&(half(1) + hc), &i)?
                * sq(rfact(&(hm - &i))?)
                * sq(rpoch(&(ha + b - int(1)), &(hm - &i + int(1)))?)
                * sq(poch(&(b - hc + &i - int(1)), &(hm - ha + half(1)))?)
                * rpoch(&(ha + b - half(1)), &(&i - int(1)))?
                * rpoch(&(ha + b - half(1)), &i)?
                * rpoch(&(hc - &i + hm), &(&i * int(2) + int(1)))?)
        })?;
        Ok(lead * body)
    }

    fn w2_odd_odd(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead = sign(&(hm - half(1)))?
            * &self.common
            * poch(&(b - hc - half(1)), &(hm - ha + int(1)))?
            * recip(&(hc + hm))?
            * rfact(&(hm - ha))?
            * rpoch(&(ha + b - int(1)), &(hm + half(1)))?
            * pw(rpoch(&(half(1) + ha + hc - hm), &(hm - ha))?, self.a);
        let body = prod(1, (self.a - 1) / 2, |i| {
            let i = int(i);
            Ok(fact(&(&i - int(1)))?
                * fact(&i)?
                * sq(poch(hc, &i)?)
                * sq(rfact(&(hm - &i + half(1)))?)
                * sq(rpoch(&(ha + b - int(1)), &(hm - &i + half(1)))?)
                * poch(&(b - hc + &i - half(1)), &(hm - ha))?
                * poch(&(b - hc + &i - half(1)), &(hm - ha + int(1)))?
                * rpoch(&(ha + b - half(1)), &(&i - int(1)))?
                * rpoch(&(ha + b - half(1)), &i)?
                * rpoch(&(hc - &i + hm), &(&i * int(2) + int(1)))?)
        })?;
        Ok(lead * body)
    }

    fn w3_even_even(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead = sign(ha)?
            * &self.common
            * rpoch(&(ha + b - int(1)), ha)?
            * pw(rpoch(&(ha + hc - hm), &(hm - ha))?, self.a);
        let body = prod(1, self.half_a(), |i| {
            let i = int(i);
            Ok(sq(fact(&(&i - int(1)))?)
                * rfact(&(hm - &i))?
                * rfact(&(hm - &i + int(1)))?
                * sq(poch(&(half(1) + hc), &(&i - int(1)))?)
                * poch(&(b - hc + &i - int(1)), &(hm - ha))?
                * poch(&(b - hc + &i - int(1)), &(hm - ha + int(1)))?
                * sq(rpoch(&(ha + b - int(1)), &(&i - int(1)))?)
                * rpoch(&(ha + b - half(1)), &(hm - &i))?
                * rpoch(&(ha + b - half(1)), &(hm - &i + int(1)))?
                * rpoch(&(int(1) + hc - &i + hm), &(&i * int(2) - int(1)))?)
        })?;
        Ok(lead * body)
    }

    fn w3_even_odd(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead = sign(ha)? * &self.common * pw(rpoch(&(ha + hc - hm), &(hm - ha + half(1)))?, self.a);
        let body = prod(1, self.half_a(), |i| {
            let i = int(i);
            Ok(sq(fact(&(&i - int(1)))?)
                * sq(rfact(&(hm - &i + half(1)))?)
                * poch(hc, &(&i - int(1)))?
                * poch(hc, &i)?
                * poch(&(b - hc + &i - half(3)), &(hm - ha + half(1)))?
                * poch(&(b - hc + &i - half(1)), &(hm - ha + half(1)))?
                * rpoch(&(ha + b - int(1)), &(&i - int(1)))?
                * rpoch(&(ha + b - int(1)), &i)?
                * sq(rpoch(&(ha + b - half(1)), &(hm - &i + half(1)))?)
                * rpoch(&(int(1) + hc - &i + hm), &(&i * int(2) - int(1)))?)
        })?;
        Ok(lead * body)
    }

    fn w3_odd_even(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead = sign(hm)?
            * &self.common
            * poch(&(b - hc - half(1)), &(hm - ha + half(1)))?
            * rfact(hm)?
            * rpoch(&(ha + b - int(1)), &(hm - ha + half(1)))?
            * pw(rpoch(&(ha + hc - hm), &(hm - ha + half(1)))?, self.a);
        let body = prod(1, (self.a - 1) / 2, |i| {
            let i = int(i);
            Ok(fact(&(&i - int(1)))?
                * fact(&i)?
                * sq(poch(hc, &i)?)
                * sq(rfact(&(hm - &i))?)
                * sq(rpoch(&(ha + b - int(1)), &(hm - &i + int(1)))?)
                * sq(poch(&(b - hc + &i - half(1)), &(hm - ha + half(1)))?)
                * rpoch(&(ha + b - half(1)), &(&i - int(1)))?
                * rpoch(&(ha + b - half(1)), &i)?
                * rpoch(&(half(1) + hc - &i + hm), &(&i * int(2)))?)
        })?;
        Ok(lead * body)
    }

    fn w3_odd_odd(&self) -> Result<Rational> {
        let (b, ha, hm, hc) = (&self.b, &self.ha, &self.hm, &self.hc);
        let lead = sign(&(hm + half(1)))?
            * &self.common
            * poch(&(b - hc + ha - half(1)), &(hm - ha))?
            * rfact(&(hm - ha))?
            * rpoch(&(ha + b - int(1)), &(hm + half(1)))?
            * pw(rpoch(&(ha + hc - hm), &(hm - ha))?, self.a);
        let body = prod(1, (self.a - 1) / 2, |i| {
            let i = int(i);
            Ok(fact(&(&i - int(1)))?
                * fact(&i)?
                * poch(&(half(1) + hc), &(&i - int(1)))?
                * poch(&(half(1) + hc), &i)?
                * sq(rfact(&(hm - &i + half(1)))?)
                * sq(rpoch(&(ha + b - int(1)), &(hm - &i + half(1)))?)
                * poch(&(b - hc + &i - int(1)), &(hm - ha))?
                * poch(&(b - hc + &i - int(1)), &(hm - ha + int(1)))?
                * rpoch(&(ha + b - half(1)), &(&i - int(1)))?
                * rpoch(&(ha + b - half(1)), &i)?
                * rpoch(&(half(1) + hc - &i + hm), &(&i * int(2)))?)
        })?;
        Ok(lead * body)
    }
}

fn recip(r: &Rational) -> Result<Rational> {
    if r.is_zero() {
        return Err(Error::domain("division by zero in a closed form"));
    }
    Ok(r.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn w1_odd_odd_vanishes() {
        for m in [1, 3, 5] {
            assert!(watson_rhs(WatsonVariant::W1, 3, m, &rat(7, 3), &rat(-5, 2)).unwrap().is_zero());
        }
    }

    #[test]
    fn w1_small_example() {
        let (l, r) = watson_pair(WatsonVariant::W1, 2, 2, &int(1), &int(1)).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn single_index_at_m0_is_one() {
        for v in WatsonVariant::ALL {
            let (l, r) = watson_pair(v, 1, 0, &rat(7, 3), &rat(5, 2)).unwrap();
            assert_eq!(l, int(1));
            assert_eq!(r, int(1));
        }
    }

    #[test]
    fn vanishing_lower_parameter_is_reported() {
        // W1 with a=1, M=2, C=1: first lower parameter 1/2 − 1 + 1/2 = 0.
        let e = watson_lhs(WatsonVariant::W1, 1, 2, &int(3), &int(1)).unwrap_err();
        assert!(e.to_string().contains("first lower parameter"));
    }

    #[test]
    fn fixed_parameter_grid() {
        let params = [(rat(7, 3), rat(-5, 2)), (rat(11, 2), rat(4, 3)), (rat(-13, 3), rat(17, 3))];
        for v in WatsonVariant::ALL {
            for a in 1..=3 {
                for m in 0..=6 {
                    for (b, c) in &params {
                        match watson_pair(v, a, m, b, c) {
                            Ok((l, r)) => assert_eq!(l, r, "{v:?} a={a} M={m} B={b} C={c}"),
                            Err(e) => panic!("{v:?} a={a} M={m} B={b} C={c}: {e}"),
                        }
                    }
                }
            }
        }
    }
}
