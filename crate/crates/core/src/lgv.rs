//! Exact matrices, fraction-free determinants and the matrix families whose
//! determinants count (weighted) lozenge tilings.
//!
//! Every determinant goes through one elimination kernel ([`bareiss`]),
//! instantiated over `ℤ` and over the cyclotomic fields. Rational matrices
//! have their rows scaled to integers first, so the hot loop stays in
//! integer arithmetic.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, binomial_rational, factorial, format_rational, int, parse_rational, pochhammer, CycloElement,
    CycloRing, ExactValue, Rational,
};
use crate::hypergeom::qbinom_neg1;

/// The coefficient ring of an [`ExactMatrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixRing {
    Integer,
    Rational,
    CycloThird,
    CycloSixth,
}

impl MatrixRing {
    pub fn name(self) -> &'static str {
        match self {
            MatrixRing::Integer => "integer",
            MatrixRing::Rational => "rational",
            MatrixRing::CycloThird => "cyclo-third",
            MatrixRing::CycloSixth => "cyclo-sixth",
        }
    }

    fn from_name(s: &str) -> Result<Self> {
        Ok(match s {
            "integer" => MatrixRing::Integer,
            "rational" => MatrixRing::Rational,
            "cyclo-third" => MatrixRing::CycloThird,
            "cyclo-sixth" => MatrixRing::CycloSixth,
            other => return Err(Error::domain(format!("unknown matrix ring {other:?}"))),
        })
    }

    fn cyclo(self) -> Option<CycloRing> {
        match self {
            MatrixRing::CycloThird => Some(CycloRing::Third),
            MatrixRing::CycloSixth => Some(CycloRing::Sixth),
            _ => None,
        }
    }

    fn of_cyclo(ring: CycloRing) -> Self {
        match ring {
            CycloRing::Third => MatrixRing::CycloThird,
            CycloRing::Sixth => MatrixRing::CycloSixth,
        }
    }

    /// The smallest ring containing both, if there is one.
    fn join(self, other: Self) -> Result<Self> {
        use MatrixRing::*;
        Ok(match (self, other) {
            (x, y) if x == y => x,
            (Integer, y) | (y, Integer) => y,
            (Rational, y) | (y, Rational) => y,
            _ => return Err(Error::domain("cannot combine matrices over different cyclotomic fields")),
        })
    }
}

/// Row-major entries, stored in the representation of the ring.
#[derive(Clone, Debug, PartialEq)]
enum Entries {
    Integer(Vec<BigInt>),
    Rational(Vec<Rational>),
    Cyclo(CycloRing, Vec<CycloElement>),
}

/// A dense matrix over one of the exact rings.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl ExactMatrix {
    pub fn from_integers(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        ExactMatrix { rows, cols, entries: Entries::Integer(entries) }
    }

    pub fn from_rationals(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        ExactMatrix { rows, cols, entries: Entries::Rational(entries) }
    }

    /// Builds a cyclotomic matrix; every value returned by `f` is taken to
    /// lie in `ring`, real values being embedded.
    pub fn from_cyclo(rows: usize, cols: usize, ring: CycloRing, f: impl Fn(usize, usize) -> CycloElement) -> Self {
        let entries = (0..rows * cols)
            .map(|k| {
                let x = f(k / cols.max(1), k % cols.max(1));
                assert_eq!(x.ring, ring, "entry outside the matrix ring");
                x
            })
            .collect();
        ExactMatrix { rows, cols, entries: Entries::Cyclo(ring, entries) }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix::from_integers(n, n, |i, j| BigInt::from((i == j) as i32))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> MatrixRing {
        match &self.entries {
            Entries::Integer(_) => MatrixRing::Integer,
            Entries::Rational(_) => MatrixRing::Rational,
            Entries::Cyclo(r, _) => MatrixRing::of_cyclo(*r),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> ExactValue {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match &self.entries {
            Entries::Integer(v) => ExactValue::Integer(v[k].clone()),
            Entries::Rational(v) => ExactValue::Rational(v[k].clone()),
            Entries::Cyclo(_, v) => ExactValue::Cyclo(v[k].clone()),
        }
    }

    /// The same matrix over a larger ring.
    pub fn promote(&self, target: MatrixRing) -> Result<ExactMatrix> {
        if self.ring() == target {
            return Ok(self.clone());
        }
        if self.ring().join(target)? != target {
            return Err(Error::domain(format!(
                "cannot view a {} matrix over {}",
                self.ring().name(),
                target.name()
            )));
        }
        let (r, c) = (self.rows, self.cols);
        Ok(match target {
            MatrixRing::Integer => unreachable!("integer is the smallest ring"),
            MatrixRing::Rational => ExactMatrix::from_rationals(r, c, |i, j| self.get(i, j).to_rational().unwrap()),
            cyc => {
                let ring = cyc.cyclo().unwrap();
                ExactMatrix::from_cyclo(r, c, ring, |i, j| self.get(i, j).to_cyclo(ring).unwrap())
            }
        })
    }

    fn pair_over_join(&self, other: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
        let ring = self.ring().join(other.ring())?;
        Ok((self.promote(ring)?, other.promote(ring)?))
    }

    pub fn checked_add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::domain("matrix dimensions differ"));
        }
        let (x, y) = self.pair_over_join(other)?;
        let entries = match (x.entries, y.entries) {
            (Entries::Integer(u), Entries::Integer(v)) => Entries::Integer(zip_with(&u, &v, |p, q| p + q)),
            (Entries::Rational(u), Entries::Rational(v)) => Entries::Rational(zip_with(&u, &v, |p, q| p + q)),
            (Entries::Cyclo(r, u), Entries::Cyclo(_, v)) => Entries::Cyclo(r, zip_with(&u, &v, |p, q| p + q)),
            _ => unreachable!("promoted to a common ring"),
        };
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn checked_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::domain("matrix dimensions do not chain"));
        }
        let (x, y) = self.pair_over_join(other)?;
        let (n, k, p) = (self.rows, self.cols, other.cols);
        let entries = match (&x.entries, &y.entries) {
            (Entries::Integer(u), Entries::Integer(v)) => {
                Entries::Integer(matmul(n, k, p, u, v, BigInt::zero(), |a, b| a * b, |a, b| a + b))
            }
            (Entries::Rational(u), Entries::Rational(v)) => {
                Entries::Rational(matmul(n, k, p, u, v, Rational::zero(), |a, b| a * b, |a, b| a + b))
            }
            (Entries::Cyclo(r, u), Entries::Cyclo(_, v)) => {
                Entries::Cyclo(*r, matmul(n, k, p, u, v, CycloElement::zero(*r), |a, b| a * b, |a, b| a + b))
            }
            _ => unreachable!("promoted to a common ring"),
        };
        Ok(ExactMatrix { rows: n, cols: p, entries })
    }

    /// `λ·I + self` for a square matrix.
    pub fn add_scalar_identity(&self, lambda: &ExactValue) -> Result<ExactMatrix> {
        let n = self.rows;
        let diag = match lambda.canonical() {
            ExactValue::Integer(x) => ExactMatrix::from_integers(n, n, |i, j| if i == j { x.clone() } else { BigInt::zero() }),
            ExactValue::Rational(x) => {
                ExactMatrix::from_rationals(n, n, |i, j| if i == j { x.clone() } else { Rational::zero() })
            }
            ExactValue::Cyclo(x) => ExactMatrix::from_cyclo(n, n, x.ring, |i, j| {
                if i == j {
                    x.clone()
                } else {
                    CycloElement::zero(x.ring)
                }
            }),
        };
        diag.checked_add(self)
    }

    pub fn pow(&self, e: u32) -> Result<ExactMatrix> {
        let mut out = ExactMatrix::identity(self.rows).promote(self.ring())?;
        for _ in 0..e {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// The submatrix on the given (0-based) rows and columns, in that order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let pick = |k: usize| rows[k / cols.len().max(1)] * self.cols + cols[k % cols.len().max(1)];
        let n = rows.len() * cols.len();
        let entries = match &self.entries {
            Entries::Integer(v) => Entries::Integer((0..n).map(|k| v[pick(k)].clone()).collect()),
            Entries::Rational(v) => Entries::Rational((0..n).map(|k| v[pick(k)].clone()).collect()),
            Entries::Cyclo(r, v) => Entries::Cyclo(*r, (0..n).map(|k| v[pick(k)].clone()).collect()),
        };
        ExactMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Exact determinant by fraction-free elimination; the empty matrix has
    /// determinant 1.
    pub fn det(&self) -> Result<ExactValue> {
        if self.rows != self.cols {
            return Err(Error::domain(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        Ok(match &self.entries {
            Entries::Integer(v) => ExactValue::Integer(bareiss(n, v.clone(), BigInt::one())),
            Entries::Rational(v) => {
                let mut scale = BigInt::one();
                let mut ints = Vec::with_capacity(v.len());
                for row in v.chunks(n.max(1)).take(n) {
                    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                    ints.extend(row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()));
                    scale *= l;
                }
                ExactValue::Rational(Rational::new(bareiss(n, ints, BigInt::one()), scale)).canonical()
            }
            Entries::Cyclo(r, v) => ExactValue::Cyclo(bareiss(n, v.clone(), CycloElement::one(*r))).canonical(),
        })
    }

    /// Plain-text grid: a header `<ring> <rows> <cols>` followed by one line
    /// per row. Cyclotomic entries are written `c0,c1`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.ring().name(), self.rows, self.cols);
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols)
                .map(|j| match self.get(i, j) {
                    ExactValue::Cyclo(x) => format!("{},{}", format_rational(&x.c0), format_rational(&x.c1)),
                    v => v.to_string(),
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<ExactMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::domain("empty matrix text"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::domain(format!("bad matrix header {header:?}")));
        }
        let ring = MatrixRing::from_name(parts[0])?;
        let dim = |s: &str| s.parse::<usize>().map_err(|_| Error::domain(format!("bad dimension {s:?}")));
        let (rows, cols) = (dim(parts[1])?, dim(parts[2])?);
        let mut cells = Vec::with_capacity(rows * cols);
        for line in lines {
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != cols {
                return Err(Error::domain(format!("row {line:?} does not have {cols} entries")));
            }
            cells.extend(row);
        }
        if cells.len() != rows * cols {
            return Err(Error::domain("matrix text has the wrong number of rows"));
        }
        let entries = match ring.cyclo() {
            None => {
                let vals = cells.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                if ring == MatrixRing::Integer {
                    if vals.iter().any(|v| !v.is_integer()) {
                        return Err(Error::domain("non-integer entry in an integer matrix"));
                    }
                    Entries::Integer(vals.iter().map(|v| v.to_integer()).collect())
                } else {
                    Entries::Rational(vals)
                }
            }
            Some(r) => {
                let vals = cells
                    .iter()
                    .map(|s| {
                        let (p, q) = s
                            .split_once(',')
                            .ok_or_else(|| Error::domain(format!("cyclotomic entry {s:?} lacks a comma")))?;
                        Ok(CycloElement::new(r, parse_rational(p)?, parse_rational(q)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Entries::Cyclo(r, vals)
            }
        };
        Ok(ExactMatrix { rows, cols, entries })
    }
}

fn zip_with<T>(u: &[T], v: &[T], f: impl Fn(&T, &T) -> T) -> Vec<T> {
    u.iter().zip(v).map(|(p, q)| f(p, q)).collect()
}

#[allow(clippy::too_many_arguments)]
fn matmul<T: Clone>(
    n: usize,
    k: usize,
    p: usize,
    u: &[T],
    v: &[T],
    zero: T,
    mul: impl Fn(&T, &T) -> T,
    add: impl Fn(&T, &T) -> T,
) -> Vec<T> {
    let mut out = Vec::with_capacity(n * p);
    for i in 0..n {
        for j in 0..p {
            let mut acc = zero.clone();
            for t in 0..k {
                acc = add(&acc, &mul(&u[i * k + t], &v[t * p + j]));
            }
            out.push(acc);
        }
    }
    out
}

/// Operations the elimination kernel needs from an integral domain.
pub trait EliminationRing: Clone {
    fn zero_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// Division known to be exact; implementations assert it.
    fn exact_div(&self, other: &Self) -> Self;
}

impl EliminationRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(r.is_zero(), "inexact division in fraction-free elimination");
        q
    }
}

impl EliminationRing for CycloElement {
    fn zero_like(&self) -> Self {
        CycloElement::zero(self.ring)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        self.checked_div(other).expect("nonzero pivot in fraction-free elimination")
    }
}

/// Single-step fraction-free (Bareiss) elimination on an `n×n` row-major
/// matrix. `one` supplies the unit of the ring for the empty case and the
/// initial divisor.
pub fn bareiss<T: EliminationRing>(n: usize, mut a: Vec<T>, one: T) -> T {
    if n == 0 {
        return one;
    }
    let mut negate = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if a[k * n + k].is_zero_elem() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_zero_elem()) {
                Some(i) => {
                    for j in 0..n {
                        a.swap(k * n + j, i * n + j);
                    }
                    negate = !negate;
                }
                None => return prev.zero_like(),
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = a[i * n + j].mul_elem(&pivot).sub_elem(&lead.mul_elem(&a[k * n + j]));
                a[i * n + j] = v.exact_div(&prev);
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate {
        d.neg_elem()
    } else {
        d
    }
}

/// Free-function form of [`ExactMatrix::det`].
pub fn det_fraction_free(m: &ExactMatrix) -> Result<ExactValue> {
    m.det()
}

fn check_cored_parity(a: u32, b: u32, c: u32) -> Result<()> {
    if !(b + c).is_multiple_of(2) {
        return Err(Error::domain(format!("b={b} and c={c} must have the same parity")));
    }
    let _ = a;
    Ok(())
}

/// The lattice-path matrix of size `a+m` with 1-based indices:
/// `binom(b+c+m, b−i+j)` in rows `1..=a` and
/// `binom((b+c)/2, (b+a)/2 − i + j + ε)` in rows `a+1..=a+m`.
///
/// `epsilon` must be one of `0, 1/2, 1, 3/2` with `(b+a)/2 + ε` integral.
pub fn build_cored_matrix(a: u32, b: u32, c: u32, m: u32, epsilon: &Rational) -> Result<ExactMatrix> {
    check_cored_parity(a, b, c)?;
    let allowed = [int(0), Rational::new(1.into(), 2.into()), int(1), Rational::new(3.into(), 2.into())];
    if !allowed.contains(epsilon) {
        return Err(Error::domain(format!("epsilon must be 0, 1/2, 1 or 3/2, got {}", format_rational(epsilon))));
    }
    let offset = Rational::new(BigInt::from(b + a), BigInt::from(2)) + epsilon;
    if !offset.is_integer() {
        return Err(Error::domain(format!(
            "(b+a)/2 + epsilon = {} is not an integer",
            format_rational(&offset)
        )));
    }
    let offset = offset.to_integer().to_i64().expect("small offset");
    let (a, b, c, m) = (a as i64, b as i64, c as i64, m as i64);
    let n = (a + m) as usize;
    Ok(ExactMatrix::from_integers(n, n, |i0, j0| {
        let (i, j) = (i0 as i64 + 1, j0 as i64 + 1);
        if i <= a {
            binomial(b + c + m, b - i + j)
        } else {
            binomial((b + c) / 2, offset - i + j)
        }
    }))
}

/// `B(N, m)`: the `N×N` matrix `binom(m+i+j, j)`, `0 ≤ i, j < N`.
#[allow(non_snake_case)]
pub fn build_B(n: usize, m: i64) -> ExactMatrix {
    ExactMatrix::from_integers(n, n, |i, j| binomial(m + i as i64 + j as i64, j as i64))
}

/// `ω·I + B(N, m)` over the smallest ring containing `ω`.
pub fn build_omega_shift(n: usize, m: i64, omega: &CycloElement) -> ExactMatrix {
    build_B(n, m)
        .add_scalar_identity(&ExactValue::Cyclo(omega.clone()))
        .expect("square matrix over a compatible ring")
}

/// The `a×a` matrix `δ_ij + (−1)^j [m+i+j choose j]_{q=−1}`, `0 ≤ i, j < a`.
pub fn build_n6_matrix(a: usize, m: u32) -> ExactMatrix {
    ExactMatrix::from_integers(a, a, |i, j| {
        let q = qbinom_neg1(m as u64 + i as u64 + j as u64, j as u64);
        let q = if j % 2 == 1 { -q } else { q };
        q + BigInt::from((i == j) as i32)
    })
}

fn factorial_i64(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::domain(format!("factorial of negative argument {n}")));
    }
    Ok(factorial(n as u64))
}

fn pochhammer_int(base: i64, k: i64) -> BigInt {
    debug_assert!(k >= 0);
    (0..k).fold(BigInt::one(), |acc, t| acc * BigInt::from(base + t))
}

/// Factors the row constants out of [`build_cored_matrix`] at `ε = 0`
/// (`shifted = false`) or `ε = 1/2` (`shifted = true`).
///
/// Returns `(prefactor, D)` with `prefactor · det(D)` equal to the
/// determinant of the binomial matrix. The entries of `D` are
/// `(c+m+i−j+1)_{j−1} (b−i+j+1)_{a+m−j}` for `i ≤ a` and
/// `((c−a−e)/2+i−j+1)_{j−1} ((b+a+e)/2−i+j+1)_{a+m−j}` for `i > a`,
/// with `e = 1` in the shifted case and `e = 0` otherwise; each is a
/// polynomial in `b` and `c`.
pub fn cored_det_transform(a: u32, b: u32, c: u32, m: u32, shifted: bool) -> Result<(Rational, ExactMatrix)> {
    check_cored_parity(a, b, c)?;
    if ((a + b) % 2 == 1) != shifted {
        return Err(Error::domain(format!(
            "a={a}, b={b}: the {} transform needs a {} b (mod 2)",
            if shifted { "shifted" } else { "centered" },
            if shifted { "≢" } else { "≡" }
        )));
    }
    let e = shifted as i64;
    let (a, b, c, m) = (a as i64, b as i64, c as i64, m as i64);
    let mut pre = Rational::one();
    for i in 1..=a {
        pre *= Rational::new(
            factorial_i64(b + c + m)?,
            factorial_i64(b + a + m - i)? * factorial_i64(c + m + i - 1)?,
        );
    }
    for i in a + 1..=a + m {
        pre *= Rational::new(
            factorial_i64((b + c) / 2)?,
            factorial_i64((b + 3 * a + e) / 2 + m - i)? * factorial_i64((c - a - e) / 2 + i - 1)?,
        );
    }
    let d = transformed_matrix(a, b, c, m, shifted)?;
    Ok((pre, d))
}

/// The matrix `D` of [`cored_det_transform`] at arbitrary integer `b, c`, so
/// its entries can be evaluated as polynomials, including at negative `b`.
/// Needs `b + a + ε` and `c − a − ε` even, where `ε = 1` when `shifted`.
pub fn transformed_matrix(a: i64, b: i64, c: i64, m: i64, shifted: bool) -> Result<ExactMatrix> {
    let e = shifted as i64;
    if a < 0 || m < 0 || (b + a + e).rem_euclid(2) != 0 || (c - a - e).rem_euclid(2) != 0 {
        return Err(Error::domain(format!(
            "transformed matrix needs a, m ≥ 0 and b+a+ε, c−a−ε even; got a={a}, b={b}, c={c}, m={m}, ε={e}"
        )));
    }
    let n = (a + m) as usize;
    Ok(ExactMatrix::from_integers(n, n, |i0, j0| {
        let (i, j) = (i0 as i64 + 1, j0 as i64 + 1);
        if i <= a {
            pochhammer_int(c + m + i - j + 1, j - 1) * pochhammer_int(b - i + j + 1, a + m - j)
        } else {
            pochhammer_int((c - a - e).div_euclid(2) + i - j + 1, j - 1)
                * pochhammer_int((b + a + e).div_euclid(2) - i + j + 1, a + m - j)
        }
    }))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Laplace expansion along the first `top_rows` rows:
/// `Σ_K (−1)^{s(K)} det(M^K) det(M_{K'})`, where `K` runs over the
/// `top_rows`-subsets of columns, `M^K` is the top block restricted to `K`,
/// `M_{K'}` the bottom block restricted to the complement, and
/// `s(K) = ΣK − binom(top_rows+1, 2)` with 1-based column indices.
pub fn laplace_two_block(m: &ExactMatrix, top_rows: usize) -> Result<ExactValue> {
    if m.rows() != m.cols() || top_rows > m.rows() {
        return Err(Error::domain("Laplace expansion needs a square matrix and top_rows ≤ size"));
    }
    let n = m.rows();
    let top: Vec<usize> = (0..top_rows).collect();
    let bottom: Vec<usize> = (top_rows..n).collect();
    let base = top_rows * (top_rows + 1) / 2;
    let mut total = ExactValue::zero();
    for k in combinations(n, top_rows) {
        let rest: Vec<usize> = (0..n).filter(|j| !k.contains(j)).collect();
        let upper = m.submatrix(&top, &k).det()?;
        if upper.is_zero() {
            continue;
        }
        let lower = m.submatrix(&bottom, &rest).det()?;
        let s: usize = k.iter().map(|j| j + 1).sum::<usize>() - base;
        let term = upper.checked_mul(&lower)?;
        total = if s.is_multiple_of(2) { total.checked_add(&term)? } else { total.checked_sub(&term)? };
    }
    Ok(total)
}

fn rpow(x: &Rational, e: i64) -> Rational {
    debug_assert!(e >= 0);
    let mut out = Rational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

/// The `n×n` matrix with entries
/// `−δ_ij + Σ_{t,k<n} binom(i+μ, t) binom(k, t) binom(j−k+μ−1, j−k) x^{k−t}`.
#[allow(non_snake_case)]
pub fn build_Zn(n: usize, x: &Rational, mu: &Rational) -> ExactMatrix {
    let n64 = n as i64;
    ExactMatrix::from_rationals(n, n, |i, j| {
        let (i, j) = (i as i64, j as i64);
        let mut acc = if i == j { -Rational::one() } else { Rational::zero() };
        for k in 0..n64 {
            let u = binomial_rational(&(mu + int(j - k - 1)), j - k);
            if u.is_zero() {
                continue;
            }
            for t in 0..=k.min(n64 - 1) {
                let s = binomial_rational(&(mu + int(i)), t);
                if s.is_zero() {
                    continue;
                }
                acc += s * Rational::from_integer(binomial(k, t)) * &u * rpow(x, k - t);
            }
        }
        acc
    })
}

/// `(det Z_n(x, μ), factored form)`. The factored form is `0` for odd `n`
/// and otherwise `(−1)^{n/2}` times the product of the two half-size
/// determinants
/// `Σ_t (t+1)/(j+1) binom(i+μ, t−i) binom(j+1, t−j) x^{2j+1−t}` and
/// `Σ_t (t+μ+1)/(i+μ+1) binom(i+μ+1, t−i) binom(j, t−j) x^{2j−t}`.
pub fn zn_factor_pair(n: usize, x: &Rational, mu: &Rational) -> Result<(ExactValue, ExactValue)> {
    let left = build_Zn(n, x, mu).det()?;
    if n % 2 == 1 {
        return Ok((left, ExactValue::zero()));
    }
    let h = n / 2;
    let n64 = n as i64;
    for i in 0..h as i64 {
        if (mu + int(i + 1)).is_zero() {
            return Err(Error::domain(format!("i+μ+1 vanishes at i={i}")));
        }
    }
    let first = ExactMatrix::from_rationals(h, h, |i, j| {
        let (i, j) = (i as i64, j as i64);
        let mut acc = Rational::zero();
        for t in 0..n64 {
            let b2 = binomial(j + 1, t - j);
            if b2.is_zero() {
                continue;
            }
            let b1 = binomial_rational(&(mu + int(i)), t - i);
            acc += rat_of(t + 1, j + 1) * b1 * Rational::from_integer(b2) * rpow(x, 2 * j + 1 - t);
        }
        acc
    });
    let second = ExactMatrix::from_rationals(h, h, |i, j| {
        let (i, j) = (i as i64, j as i64);
        let mut acc = Rational::zero();
        for t in 0..n64 {
            let b2 = binomial(j, t - j);
            if b2.is_zero() {
                continue;
            }
            let b1 = binomial_rational(&(mu + int(i + 1)), t - i);
            acc += (mu + int(t + 1)) / (mu + int(i + 1)) * b1 * Rational::from_integer(b2) * rpow(x, 2 * j - t);
        }
        acc
    });
    let mut right = first.det()?.checked_mul(&second.det()?)?;
    if h % 2 == 1 {
        right = right.neg();
    }
    Ok((left, right))
}

fn rat_of(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// The matrices `V` and `W` of size `n`, indexed by `(2i+r, 2j+s)` with
/// `r, s ∈ {0, 1}`:
/// `V = (−1)^{r+s} binom(i+j+r+s+m/2, s+2j−i)` and
/// `W = binom(i+j+m/2, s+2j−i−r)`.
///
/// Integer matrices for even `m`, rational ones otherwise.
#[allow(non_snake_case)]
pub fn build_VW(n: usize, m: i64) -> (ExactMatrix, ExactMatrix) {
    let split = |p: usize| ((p / 2) as i64, (p % 2) as i64);
    let v_entry = |p: usize, q: usize| {
        let ((i, r), (j, s)) = (split(p), split(q));
        let top = rat_of(2 * (i + j + r + s) + m, 2);
        let val = binomial_rational(&top, s + 2 * j - i);
        if (r + s) % 2 == 1 {
            -val
        } else {
            val
        }
    };
    let w_entry = |p: usize, q: usize| {
        let ((i, r), (j, s)) = (split(p), split(q));
        binomial_rational(&rat_of(2 * (i + j) + m, 2), s + 2 * j - i - r)
    };
    if m % 2 == 0 {
        (
            ExactMatrix::from_integers(n, n, |p, q| v_entry(p, q).to_integer()),
            ExactMatrix::from_integers(n, n, |p, q| w_entry(p, q).to_integer()),
        )
    } else {
        (ExactMatrix::from_rationals(n, n, v_entry), ExactMatrix::from_rationals(n, n, w_entry))
    }
}

/// `1/k!` with the reciprocal-Gamma convention `1/k! = 0` for negative `k`.
fn recip_factorial(k: i64) -> Rational {
    if k < 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::one(), factorial(k as u64))
    }
}

fn nonneg_integer(x: &Rational, name: &str) -> Result<i64> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::domain(format!("{name} = {} must be a nonnegative integer", format_rational(x))));
    }
    x.to_integer().to_i64().ok_or_else(|| Error::domain(format!("{name} is too large")))
}

/// `(det_{0≤i,j<n} (x+y+i+j−1)! / ((x+2i−j)! (y+2j−i)!), product formula)`.
///
/// Factorials in denominators with negative argument are read as `1/k! = 0`;
/// a factorial of a negative integer in a numerator is a domain error.
pub fn th10_pair(n: usize, x: &Rational, y: &Rational) -> Result<(Rational, Rational)> {
    let (x, y) = (nonneg_integer(x, "x")?, nonneg_integer(y, "y")?);
    let n64 = n as i64;
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n64 {
        for j in 0..n64 {
            let num = Rational::from_integer(factorial_i64(x + y + i + j - 1)?);
            cells.push(num * recip_factorial(x + 2 * i - j) * recip_factorial(y + 2 * j - i));
        }
    }
    let det = ExactMatrix::from_rationals(n, n, |i, j| cells[i * n + j].clone())
        .det()?
        .to_rational()
        .expect("rational determinant");
    let mut rhs = Rational::one();
    for i in 0..n64 {
        rhs *= Rational::from_integer(factorial_i64(i)? * factorial_i64(x + y + i - 1)?);
        rhs *= pochhammer(&int(2 * x + y + 2 * i), i as u64) * pochhammer(&int(x + 2 * y + 2 * i), i as u64);
        rhs /= Rational::from_integer(factorial_i64(x + 2 * i)? * factorial_i64(y + 2 * i)?);
    }
    Ok((det, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn ints(rows: &[&[i64]]) -> ExactMatrix {
        let n = rows.len();
        let c = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_integers(n, c, |i, j| BigInt::from(rows[i][j]))
    }

    #[test]
    fn small_determinants() {
        assert_eq!(ExactMatrix::identity(4).det().unwrap(), ExactValue::one());
        assert_eq!(ints(&[&[2, 1], &[1, 3]]).det().unwrap(), ExactValue::Integer(5.into()));
        assert_eq!(ExactMatrix::identity(0).det().unwrap(), ExactValue::one());
        assert_eq!(ints(&[&[0, 1], &[1, 0]]).det().unwrap(), ExactValue::Integer((-1).into()));
        assert!(ints(&[&[1, 2], &[2, 4]]).det().unwrap().is_zero());
        let t = CycloElement::tau(CycloRing::Third);
        let m = ExactMatrix::from_cyclo(2, 2, CycloRing::Third, |i, j| {
            if i == j {
                t.clone()
            } else {
                CycloElement::zero(CycloRing::Third)
            }
        });
        assert_eq!(m.det().unwrap(), ExactValue::Cyclo(CycloElement::new(CycloRing::Third, int(-1), int(-1))));
    }

    #[test]
    fn rational_determinant_clears_denominators() {
        let m = ExactMatrix::from_rationals(2, 2, |i, j| rat(1, (i + j + 1) as i64));
        assert_eq!(m.det().unwrap(), ExactValue::Rational(rat(1, 12)));
    }

    #[test]
    fn b_matrix_examples() {
        assert_eq!(build_B(1, 7), ints(&[&[1]]));
        assert_eq!(build_B(2, 0), ints(&[&[1, 1], &[1, 2]]));
        assert_eq!(build_B(0, 3).det().unwrap(), ExactValue::one());
    }

    #[test]
    fn omega_shift_examples() {
        let one = CycloElement::one(CycloRing::Third);
        let minus = -&one;
        assert_eq!(build_omega_shift(2, 4, &one).det().unwrap(), ExactValue::Integer(9.into()));
        assert_eq!(build_omega_shift(2, 4, &minus).det().unwrap(), ExactValue::Integer((-5).into()));
        let w = CycloElement::tau(CycloRing::Sixth);
        let m = build_omega_shift(1, 3, &w);
        assert_eq!(m.ring(), MatrixRing::CycloSixth);
        assert_eq!(m.get(0, 0), ExactValue::Cyclo(CycloElement::new(CycloRing::Sixth, int(1), int(1))));
    }

    #[test]
    fn n6_matrix_small() {
        assert_eq!(build_n6_matrix(1, 0), ints(&[&[2]]));
        assert_eq!(build_n6_matrix(1, 5).det().unwrap(), ExactValue::Integer(2.into()));
    }

    #[test]
    fn cored_matrix_pinned_values() {
        for (a, m) in [(2, 0), (2, 2), (4, 2), (3, 1), (1, 3)] {
            let eps = if a % 2 == 0 { int(0) } else { rat(1, 2) };
            assert_eq!(build_cored_matrix(a, 0, 0, m, &eps).unwrap().det().unwrap().to_integer().unwrap().abs(), BigInt::one());
        }
        for a in [1u32, 3, 5] {
            for m in [0u32, 2] {
                let k = (a - 1) / 2;
                let expect = BigInt::from(2) * binomial((m + 1 + k) as i64, k as i64);
                let d = build_cored_matrix(a, 1, 1, m, &int(0)).unwrap().det().unwrap();
                assert_eq!(d, ExactValue::Integer(expect), "a={a} m={m}");
            }
        }
        assert!(build_cored_matrix(1, 1, 0, 1, &int(0)).is_err());
        assert!(build_cored_matrix(1, 1, 1, 1, &rat(1, 2)).is_err());
    }

    #[test]
    fn transform_reproduces_determinant() {
        for (a, b, c, m) in [(2, 2, 0, 2), (3, 1, 3, 1), (1, 3, 1, 2), (2, 1, 1, 2), (3, 0, 2, 1), (0, 2, 2, 3)] {
            let shifted = (a + b) % 2 == 1;
            let eps = if shifted { rat(1, 2) } else { int(0) };
            let raw = build_cored_matrix(a, b, c, m, &eps).unwrap().det().unwrap();
            let (pre, d) = cored_det_transform(a, b, c, m, shifted).unwrap();
            let prod = ExactValue::Rational(pre).checked_mul(&d.det().unwrap()).unwrap();
            assert_eq!(prod, raw, "{a},{b},{c},{m}");
        }
        assert!(cored_det_transform(2, 1, 1, 1, false).is_err());
    }

    #[test]
    fn laplace_matches_det() {
        let m = ints(&[&[3, -1, 4], &[1, 5, -9], &[2, 6, 5]]);
        for top in 0..=3 {
            assert_eq!(laplace_two_block(&m, top).unwrap(), m.det().unwrap());
        }
        let k = build_cored_matrix(2, 2, 2, 2, &int(0)).unwrap();
        assert_eq!(laplace_two_block(&k, 2).unwrap(), k.det().unwrap());
    }

    #[test]
    fn zn_small_cases() {
        for n in [1, 3, 5] {
            let (l, r) = zn_factor_pair(n, &rat(2, 3), &rat(-1, 2)).unwrap();
            assert!(l.is_zero() && r.is_zero(), "n={n}");
        }
        let (l, r) = zn_factor_pair(2, &int(1), &int(1)).unwrap();
        assert_eq!(l, r);
        let m = 4;
        let zn = build_Zn(4, &int(1), &rat(m, 2)).det().unwrap();
        let minus = CycloElement::from_rational(CycloRing::Third, int(-1));
        assert_eq!(zn, build_omega_shift(4, m, &minus).det().unwrap());
    }

    #[test]
    fn vw_examples() {
        for m in [0, 2, 4, 3] {
            let (v, w) = build_VW(6, m);
            for p in (0..6).step_by(2) {
                for q in (0..6).step_by(2) {
                    assert_eq!(v.get(p, q), w.get(p, q));
                }
            }
        }
        let (v, w) = build_VW(2, 0);
        let lhs = v.add_scalar_identity(&ExactValue::zero()).unwrap();
        let minus_v = ExactMatrix::from_integers(2, 2, |i, j| -lhs.get(i, j).to_integer().unwrap());
        assert_eq!(minus_v.checked_add(&w).unwrap().det().unwrap(), ExactValue::Integer((-1).into()));
    }

    #[test]
    fn th10_examples() {
        assert_eq!(th10_pair(0, &int(2), &int(3)).unwrap(), (int(1), int(1)));
        let (l, r) = th10_pair(1, &int(2), &int(3)).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, rat(24, 12));
        let (l, r) = th10_pair(3, &int(2), &int(1)).unwrap();
        assert_eq!(l, r);
        assert!(th10_pair(1, &int(0), &int(0)).is_err());
        assert!(th10_pair(1, &rat(1, 2), &int(0)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let w = CycloElement::new(CycloRing::Sixth, rat(1, 2), int(-3));
        let m = build_omega_shift(3, 2, &w);
        assert_eq!(ExactMatrix::from_text(&m.to_text()).unwrap(), m);
        let r = ExactMatrix::from_rationals(2, 3, |i, j| rat(i as i64 - 1, j as i64 + 2));
        assert_eq!(ExactMatrix::from_text(&r.to_text()).unwrap(), r);
        assert_eq!(build_B(3, 1).to_text(), "integer 3 3\n1 2 3\n1 3 6\n1 4 10\n");
    }
}
