//! Brute-force exact integration on the triangle `0 < y < x < 1`.

use num_traits::Zero;

use crate::exactnum::{binomial, harmonic, int, sign_pow, Rational};
use crate::polyops::legendre_shifted;

/// `∫_0^1 x^i ∫_0^x (x-y)^a y^j dy dx`, by expanding `(x-y)^a` binomially.
pub fn power_monomial(i: u64, j: u64, a: u64) -> Rational {
    (0..=a)
        .map(|k| {
            let c = Rational::from_integer(binomial(a, k)) * sign_pow(k as i64);
            c / int(((k + j + 1) * (a + i + j + 2)) as i64)
        })
        .sum()
}

/// `∫_0^1 x^a ∫_0^x ln(x-y) y^b dy dx = -1/((b+1)(a+b+2)^2) - h_{b+1}/((b+1)(a+b+2))`.
///
/// The inner integral is `x^{b+1} (ln x - h_{b+1}) / (b+1)`, and
/// `∫_0^1 x^c ln x dx = -1/(c+1)^2`.
pub fn log_monomial(a: u64, b: u64) -> Rational {
    let s = int((a + b + 2) as i64);
    let b1 = int((b + 1) as i64);
    -(&s * &s * &b1).recip() - harmonic(b + 1) / (b1 * s)
}

fn bilinear(m: usize, n: usize, kernel: impl Fn(u64, u64) -> Rational) -> Rational {
    let pm = legendre_shifted(m);
    let pn = legendre_shifted(n);
    let mut sum = Rational::zero();
    for (i, a) in pm.coeffs().iter().enumerate() {
        for (j, b) in pn.coeffs().iter().enumerate() {
            sum += a * b * kernel(i as u64, j as u64);
        }
    }
    sum
}

/// `∫∫_{0<y<x<1} (x-y)^a p_m(x) p_n(y) dy dx` for an integer `a >= 0`.
pub fn exact_power_l(m: usize, n: usize, a: u64) -> Rational {
    bilinear(m, n, |i, j| power_monomial(i, j, a))
}

/// `∫∫_{0<y<x<1} ln(x-y) p_m(x) p_n(y) dy dx`.
pub fn exact_log_l(m: usize, n: usize) -> Rational {
    bilinear(m, n, log_monomial)
}
