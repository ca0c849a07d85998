//! Gegenbauer polynomials, the Gegenbauer-Legendre integral, the Pólya-Szegő
//! expansion of `|x-y|^α`, and the Chebyshev limit `ν → 0`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, int, pochhammer, rat, sign_pow, Rational};
use crate::hyper::dougall_5f4_f64;
use crate::hyper::gamma::{gamma_ratio_f64, poch_f64};
use crate::polyops::{inner_product, legendre_std, Interval, Poly};

/// `C_0^{(ν)}, …, C_J^{(ν)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GegenbauerFamily {
    pub order: Rational,
    pub polys: Vec<Poly>,
}

impl GegenbauerFamily {
    pub fn get(&self, j: usize) -> &Poly {
        &self.polys[j]
    }

    /// Compares every member with the `t^j` Taylor coefficient of
    /// `(1 - 2xt + t^2)^{-ν}`.
    pub fn matches_generating_function(&self) -> bool {
        self.polys
            .iter()
            .enumerate()
            .all(|(j, p)| *p == generating_coefficient(&self.order, j))
    }
}

/// Builds the family by the three-term recurrence
/// `n C_n = 2x(n+ν-1) C_{n-1} - (n+2ν-2) C_{n-2}`.
pub fn gegenbauer_family(nu: &Rational, big_j: usize) -> GegenbauerFamily {
    let x = Poly::x();
    let mut polys = vec![Poly::one()];
    if big_j >= 1 {
        polys.push(x.scale(&(int(2) * nu)));
    }
    for n in 2..=big_j {
        let nn = int(n as i64);
        let a = x.scale(&(int(2) * (&nn + nu - int(1))));
        let t1 = &a * &polys[n - 1];
        let t2 = polys[n - 2].scale(&(&nn + int(2) * nu - int(2)));
        polys.push((&t1 - &t2).scale(&nn.recip()));
    }
    GegenbauerFamily {
        order: nu.clone(),
        polys,
    }
}

/// `[t^n] (1 - t(2x - t))^{-ν} = Σ_k (ν)_k/k! · C(k, n-k) (2x)^{2k-n} (-1)^{n-k}`.
fn generating_coefficient(nu: &Rational, n: usize) -> Poly {
    let mut out = Poly::zero();
    for k in n.div_ceil(2)..=n {
        let c = pochhammer(nu, k as i64).expect("nonnegative index")
            / Rational::from_integer(factorial(k as u64))
            * Rational::from_integer(binomial(k as u64, (n - k) as u64))
            * sign_pow((n - k) as i64)
            * Rational::from_integer(num_bigint::BigInt::from(2).pow((2 * k - n) as u32));
        out = &out + &Poly::monomial(c, 2 * k - n);
    }
    out
}

/// `∫_{-1}^1 C_j^{(ν)} P_{j-2s} dx` exactly, against
/// `(ν)_{j-s} (ν-1/2)_s / (s! (1/2)_{j-s+1})`.
pub fn gegleg_integral_check(nu: &Rational, j: usize, s: usize) -> Result<(Rational, Rational)> {
    if 2 * s > j {
        return Err(Error::InvalidQuery(format!(
            "need j - 2s >= 0, got j = {j}, s = {s}"
        )));
    }
    let fam = gegenbauer_family(nu, j);
    let lhs = inner_product(fam.get(j), &legendre_std(j - 2 * s), Interval::Symmetric);
    let den =
        Rational::from_integer(factorial(s as u64)) * pochhammer(&rat(1, 2), (j - s + 1) as i64)?;
    let rhs = pochhammer(nu, (j - s) as i64)? * pochhammer(&(nu - rat(1, 2)), s as i64)? / den;
    Ok((lhs, rhs))
}

/// `M_1(α) = Γ(1/2 - ν) Γ(1 + ν) / Γ(1/2)` with `ν = -α/2`.
pub fn polya_szego_prefactor(alpha: f64) -> Result<f64> {
    let nu = -alpha / 2.0;
    gamma_ratio_f64(&[0.5 - nu, 1.0 + nu], &[0.5])
}

/// `M_1(α) Σ_{j<=J} (1 + j/ν) C_j^{(ν)}(x) C_j^{(ν)}(y)`, `ν = -α/2`; tends to `|x-y|^α`.
pub fn polya_szego_partial(alpha: f64, x: f64, y: f64, big_j: usize) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "the expansion needs alpha > 0, got {alpha}"
        )));
    }
    if !(-1.0..=1.0).contains(&x) || !(-1.0..=1.0).contains(&y) {
        return Err(Error::Domain("x and y must lie in [-1, 1]".into()));
    }
    let nu = -alpha / 2.0;
    let m1 = polya_szego_prefactor(alpha)?;
    let (mut cx0, mut cy0) = (1.0, 1.0);
    let (mut cx1, mut cy1) = (2.0 * nu * x, 2.0 * nu * y);
    let mut sum = 1.0;
    if big_j >= 1 {
        sum += (1.0 + 1.0 / nu) * cx1 * cy1;
    }
    for n in 2..=big_j {
        let nf = n as f64;
        let a = 2.0 * (nf + nu - 1.0);
        let b = nf + 2.0 * nu - 2.0;
        let cx2 = (a * x * cx1 - b * cx0) / nf;
        let cy2 = (a * y * cy1 - b * cy0) / nf;
        sum += (1.0 + nf / nu) * cx2 * cy2;
        (cx0, cx1, cy0, cy1) = (cx1, cx2, cy1, cy2);
    }
    Ok(m1 * sum)
}

/// `B_α(m, n)` assembled from the Pólya-Szegő expansion: `M_1 · M_2 · 5F4(1)`,
/// the last summed by Dougall's formula.
pub fn psint_route_b(alpha: f64, m: usize, n: usize) -> Result<f64> {
    if m < n || (m - n) % 2 == 1 {
        return Err(Error::InvalidQuery(format!(
            "need m >= n and m - n even, got ({m}, {n})"
        )));
    }
    if alpha <= 0.0 || alpha == alpha.round() {
        return Err(Error::Domain(format!(
            "this route needs a non-integer alpha > 0, got {alpha}"
        )));
    }
    let nu = -alpha / 2.0;
    let h = (m - n) / 2;
    let (mf, hf) = (m as f64, h as f64);
    let m1 = polya_szego_prefactor(alpha)?;
    let m2 = (1.0 + mf / nu)
        * poch_f64(nu, m as u64)
        * poch_f64(nu, (m - h) as u64)
        * poch_f64(nu - 0.5, h as u64)
        / (poch_f64(0.5, (m + 1) as u64)
            * poch_f64(1.0, h as u64)
            * poch_f64(0.5, (m - h + 1) as u64));
    let f = dougall_5f4_f64(nu + mf, nu - 0.5, nu + mf - hf, nu + hf - 0.5)?;
    Ok(m1 * m2 * f)
}

/// `T_n` by `T_{n+1} = 2x T_n - T_{n-1}`.
pub fn chebyshev_t(n: usize) -> Poly {
    let x = Poly::x();
    let (mut a, mut b) = (Poly::one(), x.clone());
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let c = &(&x * &b).scale(&int(2)) - &a;
        (a, b) = (b, c);
    }
    b
}

/// `(2/j) ∫_{-1}^1 T_j P_{j-2s} dx` exactly, against the printed
/// `-(s+1)_{j-2s-1} / (2 (s-1/2)_{j-2s+2})`.
pub fn cheb_leg_integral_check(j: usize, s: usize) -> Result<(Rational, Rational)> {
    if j == 0 || 2 * s > j {
        return Err(Error::InvalidQuery(format!(
            "need j >= 1 and j - 2s >= 0, got j = {j}, s = {s}"
        )));
    }
    let k = (j - 2 * s) as i64;
    let lhs = inner_product(
        &chebyshev_t(j),
        &legendre_std(j - 2 * s),
        Interval::Symmetric,
    ) * rat(2, j as i64);
    let den = int(2) * pochhammer(&(int(s as i64) - rat(1, 2)), k + 2)?;
    if den.is_zero() {
        return Err(Error::Pole(format!(
            "(s-1/2)_(j-2s+2) vanishes at j = {j}, s = {s}"
        )));
    }
    let rhs = -pochhammer(&int(s as i64 + 1), k - 1)? / den;
    Ok((lhs, rhs))
}

/// `-ln 2 - 2 Σ_{j=1}^J T_j(x) T_j(y) / j`, tending to `ln|x-y|`.
pub fn cheb_log_expansion_check(x: f64, y: f64, big_j: usize) -> Result<f64> {
    if !(-1.0 < x && x < 1.0 && -1.0 < y && y < 1.0) || x == y {
        return Err(Error::Domain("need distinct x, y in (-1, 1)".into()));
    }
    let (tx, ty) = (x.acos(), y.acos());
    let s: f64 = (1..=big_j)
        .map(|j| (j as f64 * tx).cos() * (j as f64 * ty).cos() / j as f64)
        .sum();
    Ok(-std::f64::consts::LN_2 - 2.0 * s)
}

/// `∂_ν C_n^{(ν)} |_{ν=0}`, from the exact interpolant of the coefficients
/// of `C_n^{(ν)}`, which are polynomials of degree `<= n` in `ν`.
pub fn gegenbauer_nu_derivative_at_zero(n: usize) -> Poly {
    let nodes: Vec<Rational> = (0..=n).map(|k| int(k as i64 + 1)).collect();
    let samples: Vec<Poly> = nodes
        .iter()
        .map(|nu| gegenbauer_family(nu, n).polys.pop().unwrap())
        .collect();
    // d/dν of the Lagrange basis polynomial ℓ_k at ν = 0, paired with the
    // zero value at ν = 0 (C_n^{(0)} = 0 for n >= 1) through an extra node.
    let mut all_nodes = vec![Rational::zero()];
    all_nodes.extend(nodes);
    let mut out = Poly::zero();
    for (k, sample) in samples.iter().enumerate() {
        let xk = &all_nodes[k + 1];
        let mut basis = Poly::one();
        let mut denom = Rational::one();
        for (i, xi) in all_nodes.iter().enumerate() {
            if i != k + 1 {
                basis = &basis * &Poly::new(vec![-xi.clone(), Rational::one()]);
                denom *= xk - xi;
            }
        }
        let slope = basis.derivative().eval(&Rational::zero()) / denom;
        out = &out + &sample.scale(&slope);
    }
    out
}

/// `(2/n) T_n`, the expected value of [`gegenbauer_nu_derivative_at_zero`].
pub fn chebyshev_limit(n: usize) -> Poly {
    chebyshev_t(n).scale(&rat(2, n as i64))
}

/// Float check value `B_α(0,0) = 2^{α+3}/((α+1)(α+2))`.
pub fn b_zero_zero(alpha: f64) -> f64 {
    2f64.powf(alpha + 3.0) / ((alpha + 1.0) * (alpha + 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matelem::b_power_f64;
    use proptest::prelude::*;

    #[test]
    fn family_examples() {
        let f = gegenbauer_family(&rat(2, 5), 1);
        assert_eq!(f.get(1), &Poly::monomial(rat(4, 5), 1));
        assert_eq!(
            gegenbauer_family(&int(1), 2).get(2),
            &Poly::from_ints(&[-1, 0, 4])
        );
        let half = gegenbauer_family(&rat(1, 2), 10);
        for n in 0..=10 {
            assert_eq!(half.get(n), &legendre_std(n));
        }
        assert!(half.matches_generating_function());
        assert!(gegenbauer_family(&rat(-7, 3), 12).matches_generating_function());
    }

    #[test]
    fn gegleg_examples() {
        let (l, r) = gegleg_integral_check(&rat(1, 3), 1, 0).unwrap();
        assert_eq!((l.clone(), r), (rat(4, 9), rat(4, 9)));
        let (l, r) = gegleg_integral_check(&rat(5, 7), 0, 0).unwrap();
        assert_eq!((l, r), (int(2), int(2)));
        let (l, r) = gegleg_integral_check(&rat(2, 3), 4, 1).unwrap();
        assert_eq!(l, r);
        assert!(gegleg_integral_check(&rat(2, 3), 1, 1).is_err());
    }

    #[test]
    fn polya_szego_converges() {
        let p = polya_szego_partial(1.0, 0.3, -0.4, 5000).unwrap();
        assert!((p - 0.7).abs() <= 1e-5, "{p}");
        let p0 = polya_szego_partial(1.0, 0.3, -0.4, 0).unwrap();
        assert_eq!(p0, polya_szego_prefactor(1.0).unwrap());
        let e: Vec<f64> = [100, 1000, 5000]
            .iter()
            .map(|&j| (polya_szego_partial(1.0, 0.3, -0.4, j).unwrap() - 0.7).abs())
            .collect();
        assert!(e[0] > e[1] && e[1] > e[2]);
        let far = polya_szego_partial(1.0, 1.0, -1.0, 2000).unwrap();
        assert!((far - 2.0).abs() < 1e-2, "{far}");
    }

    #[test]
    fn psint_matches_closed_form() {
        for alpha in [0.5, 1.5] {
            for (m, n) in [(0, 0), (2, 0), (2, 2), (4, 2)] {
                let a = psint_route_b(alpha, m, n).unwrap();
                let b = b_power_f64(m, n, &rat((2.0 * alpha) as i64, 2)).unwrap();
                assert!(
                    (a - b).abs() <= 1e-8 * b.abs(),
                    "{alpha} {m} {n}: {a} vs {b}"
                );
            }
        }
        assert!((psint_route_b(0.5, 0, 0).unwrap() - b_zero_zero(0.5)).abs() < 1e-12);
        assert!(psint_route_b(1.0, 0, 0).is_err());
        assert!(psint_route_b(0.5, 1, 0).is_err());
    }

    #[test]
    fn chebyshev() {
        assert_eq!(chebyshev_t(0), Poly::one());
        assert_eq!(chebyshev_t(1), Poly::x());
        assert_eq!(chebyshev_t(2), Poly::from_ints(&[-1, 0, 2]));
        assert_eq!(
            cheb_leg_integral_check(2, 1).unwrap(),
            (rat(-2, 3), rat(-2, 3))
        );
        let (l, r) = cheb_leg_integral_check(1, 0).unwrap();
        assert_eq!(l, rat(4, 3));
        assert_eq!(r, rat(4, 3));
        for j in 1..=10 {
            for s in 0..=j / 2 {
                let (l, r) = cheb_leg_integral_check(j, s).unwrap();
                assert_eq!(l, r, "j = {j}, s = {s}");
            }
        }
        for n in 1..=8 {
            assert_eq!(gegenbauer_nu_derivative_at_zero(n), chebyshev_limit(n));
        }
    }

    #[test]
    fn chebyshev_log_expansion() {
        let v = cheb_log_expansion_check(0.3, -0.4, 10_000).unwrap();
        assert!((v - 0.7f64.ln()).abs() < 1e-3);
        let v1 = cheb_log_expansion_check(0.3, -0.4, 1).unwrap();
        assert!((v1 - (-std::f64::consts::LN_2 + 0.24)).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn gegleg_exact(p in -40i64..40, q in 1i64..15, j in 0usize..=10, s in 0usize..=5) {
            prop_assume!(2 * s <= j);
            let (l, r) = gegleg_integral_check(&rat(p, q), j, s).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
