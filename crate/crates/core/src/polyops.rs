//! Dense exact polynomials and the Legendre family built on them: `P_n` on
//! `[-1, 1]`, the shifted `p_n(x) = P_n(2x - 1)` on `[0, 1]`, the integrated
//! `q_{n+1}(x) = ∫_0^x p_n`, and the averaging operators `M` and `N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, format_rational, harmonic, int, rat, sign_pow, Rational};

/// Polynomial with rational coefficients; `coeffs[k]` multiplies `x^k`.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

/// Integration interval for [`inner_product`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interval {
    /// `[0, 1]`, the home of the shifted family.
    Unit,
    /// `[-1, 1]`, the home of the standard family.
    Symmetric,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let c: Vec<f64> = self.coeffs.iter().map(crate::exactnum::to_f64).collect();
        c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, j: usize) -> Self {
        (0..j).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(Rational::zero());
        c.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a / int(k as i64 + 1)),
        );
        Self::new(c)
    }

    pub fn integrate(&self, lo: &Rational, hi: &Rational) -> Rational {
        let f = self.antiderivative();
        f.eval(hi) - f.eval(lo)
    }

    /// `p(a x + b)`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let lin = Self::new(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &lin) + &Self::constant(c.clone())
        })
    }

    /// Exact quotient by `x`; requires a zero constant term.
    pub fn div_x(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(Self::zero()),
            Some(c0) if c0.is_zero() => Ok(Self::new(self.coeffs[1..].to_vec())),
            Some(_) => Err(Error::Domain(
                "division by x needs a zero constant term".into(),
            )),
        }
    }

    /// JSON array of canonical rational strings, index = power.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(format_rational(c)))
                .collect(),
        )
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

static LEGENDRE_STD: RwLock<Vec<Poly>> = RwLock::new(Vec::new());
static LEGENDRE_SHIFTED: RwLock<Vec<Poly>> = RwLock::new(Vec::new());

/// Runs `(k+1) f_{k+1} = (2k+1) t f_k - k f_{k-1}` with `t` the given linear
/// polynomial, memoized in `table`.
fn legendre_memo(table: &RwLock<Vec<Poly>>, n: usize, t: &Poly) -> Poly {
    if let Some(p) = table.read().expect("legendre table poisoned").get(n) {
        return p.clone();
    }
    let mut tab = table.write().expect("legendre table poisoned");
    if tab.is_empty() {
        tab.push(Poly::one());
    }
    if tab.len() == 1 {
        tab.push(t.clone());
    }
    while tab.len() <= n {
        let k = tab.len() - 1;
        let a = (t * &tab[k]).scale(&int(2 * k as i64 + 1));
        let b = tab[k - 1].scale(&int(k as i64));
        tab.push((&a - &b).scale(&rat(1, k as i64 + 1)));
    }
    tab[n].clone()
}

/// `P_n` on `[-1, 1]` from the three-term recurrence.
pub fn legendre_std(n: usize) -> Poly {
    legendre_memo(&LEGENDRE_STD, n, &Poly::x())
}

/// Shifted `p_n(x) = P_n(2x - 1)`, orthogonal on `[0, 1]`.
pub fn legendre_shifted(n: usize) -> Poly {
    legendre_memo(&LEGENDRE_SHIFTED, n, &Poly::from_ints(&[-1, 2]))
}

/// Maclaurin coefficient `a_k^{(n)} = (-1)^{n-k} (n+k)! / ((n-k)! k!^2)` of `p_n`.
pub fn shifted_coeff(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let (n, k) = (n as u64, k as u64);
    let f = factorial(k);
    sign_pow((n - k) as i64) * Rational::new(factorial(n + k), factorial(n - k) * &f * &f)
}

/// `p_n` straight from its Maclaurin coefficients.
pub fn legendre_shifted_maclaurin(n: usize) -> Poly {
    Poly::new((0..=n).map(|k| shifted_coeff(n, k)).collect())
}

/// `P_n` from `(2^n n!)^{-1} d^n/dx^n (x^2 - 1)^n`.
pub fn legendre_std_rodrigues(n: usize) -> Poly {
    let w = Poly::from_ints(&[-1, 0, 1]);
    let pow = (0..n).fold(Poly::one(), |acc, _| &acc * &w);
    let scale = Rational::new(
        1.into(),
        num_bigint::BigInt::from(2).pow(n as u32) * factorial(n as u64),
    );
    pow.nth_derivative(n).scale(&scale)
}

/// `p_n` from `(n!)^{-1} d^n/dx^n (x^n (x-1)^n)`.
pub fn legendre_shifted_rodrigues(n: usize) -> Poly {
    let w = Poly::from_ints(&[0, -1, 1]);
    let pow = (0..n).fold(Poly::one(), |acc, _| &acc * &w);
    pow.nth_derivative(n)
        .scale(&Rational::new(1.into(), factorial(n as u64)))
}

/// `q_{n+1}(x) = ∫_0^x p_n(t) dt`.
pub fn q_poly(n: usize) -> Poly {
    legendre_shifted(n).antiderivative()
}

/// Exact `∫ f g` over the interval.
pub fn inner_product(f: &Poly, g: &Poly, interval: Interval) -> Rational {
    let prod = f * g;
    match interval {
        Interval::Unit => prod.integrate(&Rational::zero(), &Rational::one()),
        Interval::Symmetric => prod.integrate(&int(-1), &Rational::one()),
    }
}

/// `M f(x)`: the mean of `f` over `[0, x]`; divides coefficient `r` by `r + 1`.
pub fn op_m(u: &Poly) -> Poly {
    Poly::new(
        u.coeffs
            .iter()
            .enumerate()
            .map(|(r, c)| c / int(r as i64 + 1))
            .collect(),
    )
}

/// `N f(x) = ∫_0^x <f>_t^x dt`; sends `u_r x^r` to `u_r h_{r+1}/(r+1) x^{r+1}`.
pub fn op_n(u: &Poly) -> Poly {
    let mut c = vec![Rational::zero(); u.coeffs.len() + 1];
    for (r, ur) in u.coeffs.iter().enumerate() {
        c[r + 1] = ur * harmonic(r as u64 + 1) / int(r as i64 + 1);
    }
    Poly::new(c)
}

/// `∫_0^1 q_{n+1}(x)/x dx`, which equals `(-1)^n / (n(n+1))` for `n >= 1`.
pub fn q_over_x_integral(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain(
            "q_1/x integral is outside the n >= 1 closed form".into(),
        ));
    }
    let quotient = q_poly(n).div_x()?;
    Ok(quotient.integrate(&Rational::zero(), &Rational::one()))
}

/// `Σ_{j+k=r+1} (-1)^j p_m^{(j)}(0) p_n^{(k)}(0)`. Vanishes for
/// `r = |m-n| + 2s`, `s >= 0`.
pub fn bilinear_identity_sum(m: usize, n: usize, r: usize) -> Rational {
    let pm = legendre_shifted(m);
    let pn = legendre_shifted(n);
    let zero = Rational::zero();
    (0..=r + 1)
        .map(|j| {
            let k = r + 1 - j;
            sign_pow(j as i64) * pm.nth_derivative(j).eval(&zero) * pn.nth_derivative(k).eval(&zero)
        })
        .sum()
}

/// The same sum with the derivative order on `p_n` tied to `j` rather than `k`.
/// Kept to show that this reading does not vanish.
pub fn bilinear_identity_sum_same_index(m: usize, n: usize, r: usize) -> Rational {
    let pm = legendre_shifted(m);
    let pn = legendre_shifted(n);
    let zero = Rational::zero();
    (0..=r + 1)
        .map(|j| {
            sign_pow(j as i64) * pm.nth_derivative(j).eval(&zero) * pn.nth_derivative(j).eval(&zero)
        })
        .sum()
}

/// `r = λ^{-1} p - λ^{-2} p' + λ^{-3} p'' - ...`, so that `(r e^{λξ})' = p e^{λξ}`.
pub fn exp_poly_antiderivative(p: &Poly, lambda: &Rational) -> Result<Poly> {
    if lambda.is_zero() {
        return Err(Error::Domain("exponential rate must be nonzero".into()));
    }
    let inv = lambda.recip();
    let mut out = Poly::zero();
    let mut d = p.clone();
    let mut factor = inv.clone();
    while !d.is_zero() {
        out = &out + &d.scale(&factor);
        d = d.derivative();
        factor = -(&factor * &inv);
    }
    Ok(out)
}
