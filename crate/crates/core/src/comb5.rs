//! The elementary route to the logarithmic triangle integrals: the sums
//! `S(m,n,r)`, the double sum `K(m,n)`, its recurrence and symmetry lemmas.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{factorial, harmonic, int, odd_harmonic, rat, sign_pow, Rational};
use crate::polyops::{inner_product, legendre_shifted, op_n, q_poly, Interval, Poly};
use crate::report::Check;

/// `S(m,n,0..=m+n)`: the coefficients of `p_m q_{n+1} = Σ S(m,n,r) x^{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STable {
    pub m: usize,
    pub n: usize,
    pub values: Vec<Rational>,
}

fn fq(n: usize) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

/// The double-factorial sum for one `S(m,n,r)`.
pub fn s_explicit(m: usize, n: usize, r: usize) -> Rational {
    let lo = r.saturating_sub(n);
    let hi = m.min(r);
    let mut sum = Rational::zero();
    for j in lo..=hi {
        let k = r - j;
        sum +=
            fq(m + j) / (fq(m - j) * fq(j) * fq(j)) * fq(n + k) / (fq(n - k) * fq(k) * fq(k + 1));
    }
    sign_pow((m + n - r) as i64) * sum
}

/// Coefficients of `p_m q_{n+1}`, shifted down by one power of `x`.
pub fn s_from_product(m: usize, n: usize) -> Vec<Rational> {
    let prod = &legendre_shifted(m) * &q_poly(n);
    (0..=m + n).map(|r| prod.coeff(r + 1)).collect()
}

/// Builds the table from the explicit sum and asserts agreement with the
/// generating product.
pub fn s_table(m: usize, n: usize) -> STable {
    let values: Vec<Rational> = (0..=m + n).map(|r| s_explicit(m, n, r)).collect();
    assert_eq!(
        values,
        s_from_product(m, n),
        "S({m},{n},.) explicit sum disagrees with p_m q_(n+1)"
    );
    STable { m, n, values }
}

static K_MEMO: OnceLock<Mutex<HashMap<(usize, usize), Rational>>> = OnceLock::new();

/// `K(m,n) = Σ_r S(m,n,r)/(r+2)^2`.
pub fn k_value(m: usize, n: usize) -> Rational {
    let memo = K_MEMO.get_or_init(Default::default);
    if let Some(v) = memo.lock().unwrap().get(&(m, n)) {
        return v.clone();
    }
    let v: Rational = (0..=m + n)
        .map(|r| s_explicit(m, n, r) / int(((r + 2) * (r + 2)) as i64))
        .sum();
    memo.lock().unwrap().entry((m, n)).or_insert(v).clone()
}

/// `D(m,n,r) = (n+1) S(m,n,r) - (n-1) S(m-1,n-1,r)`, symmetric in `m, n`.
pub fn d_value(m: usize, n: usize, r: usize) -> Result<Rational> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidQuery(format!(
            "D(m,n,r) needs m, n >= 1, got ({m}, {n})"
        )));
    }
    if r > m + n {
        return Err(Error::InvalidQuery(format!(
            "r = {r} exceeds m + n = {}",
            m + n
        )));
    }
    let first = int(n as i64 + 1) * s_explicit(m, n, r);
    let second = if r <= m + n - 2 {
        int(n as i64 - 1) * s_explicit(m - 1, n - 1, r)
    } else {
        Rational::zero()
    };
    Ok(first - second)
}

/// `(n+1)K(m,n) - (m+1)K(n,m)` against `(n-1)K(m-1,n-1) - (m-1)K(n-1,m-1)`.
pub fn recurrence_check(m: usize, n: usize) -> Result<(Rational, Rational)> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidQuery(format!(
            "the recurrence needs m, n >= 1, got ({m}, {n})"
        )));
    }
    let (mi, ni) = (m as i64, n as i64);
    let lhs = int(ni + 1) * k_value(m, n) - int(mi + 1) * k_value(n, m);
    let rhs = int(ni - 1) * k_value(m - 1, n - 1) - int(mi - 1) * k_value(n - 1, m - 1);
    Ok((lhs, rhs))
}

/// `K(m,n) = (-1)^{d+1}/((m+n)(m+n+2)(d^2-1))` for `d = m - n >= 2`.
///
/// The induction from `K(m,0)` carries the sign of `K(m,0)`, which alternates
/// with `m`; without the `(-1)^{d+1}` factor the form is only right for even `d`.
pub fn k_case_one(m: usize, n: usize) -> Result<Rational> {
    Ok(sign_pow((m - n) as i64) * k_case_one_unsigned(m, n)?)
}

/// `-1/((m+n)(m+n+2)(d^2-1))`, the form as printed but with `d^2 - 1`.
pub fn k_case_one_unsigned(m: usize, n: usize) -> Result<Rational> {
    if m < n + 2 {
        return Err(Error::InvalidQuery(format!(
            "needs m - n >= 2, got ({m}, {n})"
        )));
    }
    let (s, d) = ((m + n) as i64, (m - n) as i64);
    Ok(-rat(1, s * (s + 2) * (d * d - 1)))
}

/// The symmetry lemmas for `m, n <= bound`: antisymmetry off the near
/// diagonals, the diagonal and next-diagonal values, and `K(m,0)`.
pub fn k_symmetry_suite(bound: usize) -> Vec<Check> {
    let mut anti = Check::new("double sum antisymmetry for |m-n| >= 2");
    let mut diag = Check::new("double sum diagonal value 2K(n,n)");
    let mut next = Check::new("double sum next-diagonal pair K(n+1,n)+K(n,n+1)");
    let mut first_col = Check::new("double sum first column K(m,0)");
    let mut case_one = Check::new("double sum closed form for m-n >= 2");
    for m in 0..=bound {
        for n in 0..=bound {
            if m.abs_diff(n) >= 2 {
                anti.record((k_value(m, n) + k_value(n, m)).is_zero(), || {
                    format!("({m},{n})")
                });
            }
            if m >= n + 2 {
                let expect = k_case_one(m, n).expect("m >= n + 2");
                case_one.record(k_value(m, n) == expect, || {
                    format!("({m},{n}): {} vs {expect}", k_value(m, n))
                });
            }
        }
    }
    for n in 1..=bound {
        let ni = n as i64;
        let expect = rat(1, ni * (2 * ni + 1) * (2 * ni + 2));
        diag.record(int(2) * k_value(n, n) == expect, || format!("n = {n}"));
    }
    for n in 0..bound {
        let ni = n as i64;
        let expect = -rat(1, (2 * ni + 1) * (2 * ni + 2) * (2 * ni + 3));
        next.record(k_value(n + 1, n) + k_value(n, n + 1) == expect, || {
            format!("n = {n}")
        });
    }
    for m in 2..=bound {
        let mi = m as i64;
        let expect = sign_pow(mi + 1) * rat(1, mi * (mi + 2) * (mi * mi - 1));
        first_col.record(k_value(m, 0) == expect, || format!("m = {m}"));
    }
    vec![anti, diag, next, first_col, case_one]
}

/// `μ_0 = -1/12`.
pub fn mu_zero() -> Rational {
    rat(-1, 12)
}

/// `μ_n = μ_0 - 1/6 + h^odd_{2n+1} - h_{n+1}/2 + ((2n+3)^{-1} - (2n+1)^{-1})/2`.
pub fn mu_sequence(n_max: usize) -> Vec<Rational> {
    (0..=n_max)
        .map(|n| {
            let ni = n as i64;
            mu_zero() - rat(1, 6) + odd_harmonic(n as u64) - harmonic(n as u64 + 1) / int(2)
                + (rat(1, 2 * ni + 3) - rat(1, 2 * ni + 1)) / int(2)
        })
        .collect()
}

/// `λ_n = μ_n / ((2n+1)(2n+3))`, which should equal `K(n+1,n)`.
pub fn lambda_sequence(n_max: usize) -> Vec<Rational> {
    mu_sequence(n_max)
        .into_iter()
        .enumerate()
        .map(|(n, mu)| mu / int(((2 * n + 1) * (2 * n + 3)) as i64))
        .collect()
}

/// `T(m,n,l) = Σ_p S(m,n,p)/(p+l)`, summed directly.
pub fn t_sum(m: usize, n: usize, l: i64) -> Result<Rational> {
    if l < 1 {
        return Err(Error::Domain(format!(
            "T(m,n,l) is summed for integer l >= 1, got {l}"
        )));
    }
    Ok((0..=m + n)
        .map(|p| s_explicit(m, n, p) / int(p as i64 + l))
        .sum())
}

/// `<p_m, N p_n>` on `[0, 1]`.
pub fn n_inner(m: usize, n: usize) -> Rational {
    inner_product(
        &legendre_shifted(m),
        &op_n(&legendre_shifted(n)),
        Interval::Unit,
    )
}

/// `-K(m,n) - <p_m, N p_n>`: the triangle log integral by the double sum.
pub fn log_triangle_by_double_sum(m: usize, n: usize) -> Rational {
    -k_value(m, n) - n_inner(m, n)
}

/// `(lhs, rhs)` for the integration-by-parts reduction of the log triangle
/// integral: lhs by quadrature, rhs `= -<M[p_m q_{n+1}], 1> - <p_m, N p_n>` exactly.
pub fn getridlog_check(
    m: usize,
    n: usize,
    cfg: &crate::oracle::QuadConfig,
) -> Result<(f64, Rational)> {
    if m > 8 || n > 8 {
        return Err(Error::InvalidQuery(format!(
            "the quadrature side is validated for m, n <= 8, got ({m}, {n})"
        )));
    }
    let lhs = crate::oracle::quad_log_l(m, n, cfg)?;
    let u = &legendre_shifted(m) * &q_poly(n);
    let mean = crate::polyops::op_m(&u).integrate(&Rational::zero(), &int(1));
    Ok((lhs, -mean - n_inner(m, n)))
}

/// `x^{r+1}` coefficients of the symmetric generating function for `D(m,n,.)`.
pub fn d_generating(m: usize, n: usize) -> Result<Poly> {
    let c: Vec<Rational> = (0..=m + n)
        .map(|r| d_value(m, n, r))
        .collect::<Result<_>>()?;
    Ok(&Poly::new(c) * &Poly::x())
}
