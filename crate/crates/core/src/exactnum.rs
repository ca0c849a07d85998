//! Exact scalar substrate: arbitrary-precision rationals, Pochhammer symbols,
//! zero-tracked products, factorials and harmonic sums.
//!
//! Every other module computes with [`Rational`]. Values are always kept in
//! canonical form (positive denominator, reduced), which `num-rational`
//! enforces after each operation.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed rational number.
pub type Rational = BigRational;

/// `n / d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the canonical `[-]p/q` form (or a bare integer).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical string: `-61/900`, or `-6` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Out of f64 range in one of the parts; scale both sides down together.
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `Some(k)` when `q` is the integer `-k` with `k >= 0`.
pub fn nonpositive_integer(q: &Rational) -> Option<u64> {
    if q.is_integer() && !q.is_positive() {
        (-q.to_integer()).to_u64()
    } else {
        None
    }
}

pub fn as_integer(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: i64) -> Rational {
    if k.is_even() {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Rising factorial `(a)_n` for any integer `n`.
///
/// For `n < 0`, `(a)_n = 1 / (a+n)_{-n}`; a zero factor there is a pole.
pub fn pochhammer(a: &Rational, n: i64) -> Result<Rational> {
    if n >= 0 {
        let mut acc = Rational::one();
        let mut f = a.clone();
        for _ in 0..n {
            acc *= &f;
            f += Rational::one();
        }
        Ok(acc)
    } else {
        let base = a + int(n);
        let den = pochhammer(&base, -n)?;
        if den.is_zero() {
            return Err(Error::Pole(format!(
                "({a})_{n} has a zero factor in its reciprocal"
            )));
        }
        Ok(den.recip())
    }
}

/// Product of a factor list with the zero factors counted instead of multiplied in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedProduct {
    zero_count: u32,
    nonzero_part: Rational,
}

impl Default for TrackedProduct {
    fn default() -> Self {
        Self::one()
    }
}

impl TrackedProduct {
    pub fn one() -> Self {
        Self {
            zero_count: 0,
            nonzero_part: Rational::one(),
        }
    }

    pub fn zero_count(&self) -> u32 {
        self.zero_count
    }

    pub fn nonzero_part(&self) -> &Rational {
        &self.nonzero_part
    }

    /// Multiplies in one factor; a zero factor bumps the counter.
    pub fn push(&mut self, factor: &Rational) {
        if factor.is_zero() {
            self.zero_count += 1;
        } else {
            self.nonzero_part *= factor;
        }
    }

    /// Multiplies in a factor that depends linearly on a parameter. When the
    /// factor vanishes, its slope is recorded instead, so that a ratio with
    /// equal zero counts resolves to the true limit in that parameter.
    pub fn push_linear(&mut self, value: &Rational, slope: &Rational) {
        if value.is_zero() {
            assert!(
                !slope.is_zero(),
                "a constant zero factor has no slope to record"
            );
            self.zero_count += 1;
            self.nonzero_part *= slope;
        } else {
            self.nonzero_part *= value;
        }
    }

    pub fn absorb(&mut self, other: &TrackedProduct) {
        self.zero_count += other.zero_count;
        self.nonzero_part *= &other.nonzero_part;
    }

    /// The plain value of the product (zero if any factor vanished).
    pub fn value(&self) -> Rational {
        if self.zero_count > 0 {
            Rational::zero()
        } else {
            self.nonzero_part.clone()
        }
    }
}

/// `(a)_n` for `n >= 0` with zero-factor tracking.
pub fn pochhammer_tracked(a: &Rational, n: u64) -> TrackedProduct {
    let mut p = TrackedProduct::one();
    let mut f = a.clone();
    for _ in 0..n {
        p.push(&f);
        f += Rational::one();
    }
    p
}

/// A quotient of two tracked products, resolved by comparing zero counts.
#[derive(Clone, Debug, Default)]
pub struct TrackedRatio {
    pub num: TrackedProduct,
    pub den: TrackedProduct,
}

impl TrackedRatio {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mul(&mut self, q: &Rational) -> &mut Self {
        self.num.push(q);
        self
    }

    pub fn div(&mut self, q: &Rational) -> &mut Self {
        self.den.push(q);
        self
    }

    /// Multiplies by `(a)_n`, any integer `n`.
    pub fn mul_poch(&mut self, a: &Rational, n: i64) -> &mut Self {
        self.mul_poch_linear(a, &Rational::one(), n)
    }

    /// Divides by `(a)_n`, any integer `n`.
    pub fn div_poch(&mut self, a: &Rational, n: i64) -> &mut Self {
        self.div_poch_linear(a, &Rational::one(), n)
    }

    /// Multiplies by `(a)_n` where `a` moves with the given slope in some parameter.
    pub fn mul_poch_linear(&mut self, a: &Rational, slope: &Rational, n: i64) -> &mut Self {
        if n >= 0 {
            push_poch(&mut self.num, a, slope, n as u64);
        } else {
            push_poch(&mut self.den, &(a + int(n)), slope, n.unsigned_abs());
        }
        self
    }

    pub fn div_poch_linear(&mut self, a: &Rational, slope: &Rational, n: i64) -> &mut Self {
        if n >= 0 {
            push_poch(&mut self.den, a, slope, n as u64);
        } else {
            push_poch(&mut self.num, &(a + int(n)), slope, n.unsigned_abs());
        }
        self
    }

    /// More zeros on top gives 0, more below is a pole, equal counts give the
    /// ratio of the nonzero parts.
    pub fn resolve(&self) -> Result<Rational> {
        use std::cmp::Ordering::*;
        match self.num.zero_count.cmp(&self.den.zero_count) {
            Greater => Ok(Rational::zero()),
            Less => Err(Error::Pole(format!(
                "denominator has {} vanishing factors against {} in the numerator",
                self.den.zero_count, self.num.zero_count
            ))),
            Equal => Ok(&self.num.nonzero_part / &self.den.nonzero_part),
        }
    }
}

fn push_poch(p: &mut TrackedProduct, a: &Rational, slope: &Rational, n: u64) {
    let mut f = a.clone();
    for _ in 0..n {
        p.push_linear(&f, slope);
        f += Rational::one();
    }
}

static HARMONIC: RwLock<Vec<Rational>> = RwLock::new(Vec::new());
static ODD_HARMONIC: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Fetches entry `idx` of a prefix-sum table, extending it on demand.
fn memo_prefix(
    table: &RwLock<Vec<Rational>>,
    idx: usize,
    term: impl Fn(usize) -> Rational,
) -> Rational {
    if let Some(v) = table.read().expect("harmonic table poisoned").get(idx) {
        return v.clone();
    }
    let mut t = table.write().expect("harmonic table poisoned");
    while t.len() <= idx {
        let k = t.len();
        let next = match t.last() {
            Some(prev) => prev + term(k),
            None => term(0),
        };
        t.push(next);
    }
    t[idx].clone()
}

/// `h_r = 1 + 1/2 + ... + 1/r`; `h_0 = 0`.
pub fn harmonic(r: u64) -> Rational {
    if r == 0 {
        return Rational::zero();
    }
    memo_prefix(&HARMONIC, (r - 1) as usize, |k| rat(1, k as i64 + 1))
}

/// `1 + 1/3 + ... + 1/(2n+1)`.
pub fn odd_harmonic(n: u64) -> Rational {
    memo_prefix(&ODD_HARMONIC, n as usize, |k| rat(1, 2 * k as i64 + 1))
}
