//! Generalized hypergeometric series: exact terminating sums and the classical
//! closed-form summations (Gauss, Thomae, Whipple, Dougall, Karlsson).

pub mod gamma;

use std::f64::consts::PI;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, format_rational, int, nonpositive_integer, pochhammer, rat, to_f64, Rational,
    TrackedRatio,
};

pub use gamma::{gamma_ln, gamma_ratio_f64, ln_gamma_signed, poch_f64};

/// `pFq(a_1..a_p; b_1..b_q; z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypSeries {
    pub num: Vec<Rational>,
    pub den: Vec<Rational>,
    pub z: Rational,
}

impl HypSeries {
    pub fn new(num: Vec<Rational>, den: Vec<Rational>, z: Rational) -> Self {
        Self { num, den, z }
    }

    /// Series at unit argument.
    pub fn unit(num: Vec<Rational>, den: Vec<Rational>) -> Self {
        Self::new(num, den, Rational::one())
    }

    /// Degree of the terminating polynomial: the smallest `r` with `-r` among
    /// the numerator parameters.
    pub fn termination_index(&self) -> Option<u64> {
        self.num.iter().filter_map(nonpositive_integer).min()
    }

    /// Exact `Σ_{k<=r} Π(a_i)_k / (k! Π(b_j)_k) z^k`.
    pub fn eval_terminating(&self) -> Result<Rational> {
        let r = self
            .termination_index()
            .ok_or_else(|| Error::NonTerminating(self.to_string()))?;
        for b in &self.den {
            if let Some(j) = nonpositive_integer(b) {
                if j < r {
                    return Err(Error::Pole(format!(
                        "denominator parameter {} vanishes before term {r} of {self}",
                        format_rational(b)
                    )));
                }
            }
        }
        let mut term = Rational::one();
        let mut sum = Rational::one();
        for k in 0..r {
            let kq = int(k as i64);
            for a in &self.num {
                term *= a + &kq;
            }
            for b in &self.den {
                term /= b + &kq;
            }
            term *= &self.z;
            term /= int(k as i64 + 1);
            sum += &term;
        }
        Ok(sum)
    }
}

impl std::fmt::Display for HypSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "{}F{}({}; {}; {})",
            self.num.len(),
            self.den.len(),
            join(&self.num),
            join(&self.den),
            format_rational(&self.z)
        )
    }
}

/// Partial sum of the first `terms` terms of a series with real parameters.
pub fn pfq_partial_f64(num: &[f64], den: &[f64], z: f64, terms: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 0..terms {
        sum += term;
        let kf = k as f64;
        let ratio = num.iter().map(|a| a + kf).product::<f64>()
            / den.iter().map(|b| b + kf).product::<f64>();
        term *= ratio * z / (kf + 1.0);
        if term == 0.0 {
            break;
        }
    }
    sum
}

/// `2F1(a, b; c; 1) = (c-b)_n / (c)_n` when one of `a`, `b` is `-n`.
pub fn gauss_sum(a: &Rational, b: &Rational, c: &Rational) -> Result<Rational> {
    let (n, other) = match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(n), Some(m)) if m < n => (m, a),
        (Some(n), _) => (n, b),
        (None, Some(m)) => (m, a),
        (None, None) => {
            return Err(Error::NonTerminating(format!(
                "2F1({}, {}; {}; 1)",
                format_rational(a),
                format_rational(b),
                format_rational(c)
            )))
        }
    };
    let den = pochhammer(c, n as i64)?;
    if den.is_zero() {
        return Err(Error::Pole(format!(
            "({})_{n} vanishes",
            format_rational(c)
        )));
    }
    Ok(pochhammer(&(c - other), n as i64)? / den)
}

/// `Π Γ(num) / Π Γ(den)` for arguments that pair off with integer differences,
/// each pair becoming a Pochhammer symbol. Poles on both sides cancel in the
/// sense of the common limit under a uniform shift of all arguments.
pub fn gamma_ratio(num: &[Rational], den: &[Rational]) -> Result<Rational> {
    if num.len() != den.len() {
        return Err(Error::Irreducible(format!(
            "{} Gamma factors above, {} below",
            num.len(),
            den.len()
        )));
    }
    let mut used = vec![false; den.len()];
    let mut ratio = TrackedRatio::new();
    for x in num {
        let slot = den
            .iter()
            .enumerate()
            .find(|(j, y)| !used[*j] && (x - *y).is_integer())
            .map(|(j, _)| j)
            .ok_or_else(|| {
                Error::Irreducible(format!(
                    "Γ({}) has no integer-offset partner",
                    format_rational(x)
                ))
            })?;
        used[slot] = true;
        let y = &den[slot];
        let k = crate::exactnum::as_integer(&(x - y)).expect("integer difference");
        // Γ(y + k) / Γ(y) = (y)_k
        ratio.mul_poch(y, k);
    }
    ratio.resolve()
}

/// Thomae's relation
/// `3F2(a,b,c; e,f) = Γ(e)Γ(f)Γ(s) / (Γ(a)Γ(s+b)Γ(s+c)) · 3F2(e-a, f-a, s; s+b, s+c)`,
/// `s = e + f - a - b - c`. Returns the prefactor and the transformed series.
pub fn thomae_transform(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    e: &Rational,
    f: &Rational,
) -> Result<(Rational, HypSeries)> {
    let s = e + f - a - b - c;
    let image = HypSeries::unit(vec![e - a, f - a, s.clone()], vec![&s + b, &s + c]);
    if image.termination_index().is_none() {
        return Err(Error::NonTerminating(format!(
            "transformed series {image} does not terminate"
        )));
    }
    let pre = gamma_ratio(
        &[e.clone(), f.clone(), s.clone()],
        &[a.clone(), &s + b, &s + c],
    )?;
    Ok((pre, image))
}

/// Both sides of Thomae's relation, exactly.
pub fn thomae_check(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    e: &Rational,
    f: &Rational,
) -> Result<(Rational, Rational)> {
    let lhs = HypSeries::unit(
        vec![a.clone(), b.clone(), c.clone()],
        vec![e.clone(), f.clone()],
    )
    .eval_terminating()?;
    let (pre, image) = thomae_transform(a, b, c, e, f)?;
    Ok((lhs, pre * image.eval_terminating()?))
}

/// `3F2(-n, n+1, (b+c-1)/2; b, c; 1)`.
pub fn whipple_series(n: u64, b: &Rational, c: &Rational) -> HypSeries {
    let n = n as i64;
    HypSeries::unit(
        vec![int(-n), int(n + 1), (b + c - int(1)) / int(2)],
        vec![b.clone(), c.clone()],
    )
}

/// Closed form `4^n ((b-n)/2)_n ((c-n)/2)_n / ((b)_n (c)_n)`.
pub fn whipple_terminating(n: u64, b: &Rational, c: &Rational) -> Result<Rational> {
    let ni = n as i64;
    let half = rat(1, 2);
    let mut r = TrackedRatio::new();
    r.mul(&Rational::from_integer(
        num_bigint::BigInt::from(4).pow(n as u32),
    ))
    .mul_poch(&((b - int(ni)) * &half), ni)
    .mul_poch(&((c - int(ni)) * &half), ni)
    .div_poch(b, ni)
    .div_poch(c, ni);
    r.resolve()
}

/// `3F2(a, 1-a, (b+c-1)/2; b, c; 1)` by its Gamma closed form, `b + c > 1`.
pub fn whipple_general(a: f64, b: f64, c: f64) -> Result<f64> {
    if b + c <= 1.0 {
        return Err(Error::Domain(format!("b + c = {} must exceed 1", b + c)));
    }
    let ap = 1.0 - a;
    let ratio = gamma_ratio_f64(
        &[b, c],
        &[(b + a) / 2.0, (b + ap) / 2.0, (c + a) / 2.0, (c + ap) / 2.0],
    )?;
    Ok(4.0 * PI * (-(b + c) * 2f64.ln()).exp() * ratio)
}

/// Partial sum of the series side of [`whipple_general`].
pub fn whipple_series_f64(a: f64, b: f64, c: f64, terms: usize) -> f64 {
    pfq_partial_f64(&[a, 1.0 - a, (b + c - 1.0) / 2.0], &[b, c], 1.0, terms)
}

/// The well-poised `5F4(a, 1+a/2, c, d, e; a/2, 1+a-c, 1+a-d, 1+a-e; 1)`.
pub fn dougall_series(a: &Rational, c: &Rational, d: &Rational, e: &Rational) -> HypSeries {
    let one = Rational::one();
    let half = a / int(2);
    HypSeries::unit(
        vec![a.clone(), &one + &half, c.clone(), d.clone(), e.clone()],
        vec![half, &one + a - c, &one + a - d, &one + a - e],
    )
}

/// Dougall's sum
/// `Γ(c')Γ(d')Γ(e')Γ(1+a-c-d-e) / (Γ(1+a)Γ(c'-d)Γ(d'-e)Γ(e'-c))`, `x' = 1+a-x`.
/// The sum is symmetric in `c, d, e`; with the terminating parameter moved to
/// `e = -N` it reduces to `(1+a)_N (1+a-c-d)_N / ((1+a-c)_N (1+a-d)_N)`.
pub fn dougall_5f4(a: &Rational, c: &Rational, d: &Rational, e: &Rational) -> Result<Rational> {
    let mut params = [c, d, e];
    params.sort_by_key(|x| nonpositive_integer(x).map_or(u64::MAX, |n| n));
    let [t, x, y] = params;
    let n = nonpositive_integer(t).ok_or_else(|| {
        Error::NonTerminating("Dougall sum needs c, d or e in {0, -1, ...}".into())
    })? as i64;
    let one = Rational::one();
    let mut r = TrackedRatio::new();
    r.mul_poch(&(&one + a), n)
        .mul_poch(&(&one + a - x - y), n)
        .div_poch(&(&one + a - x), n)
        .div_poch(&(&one + a - y), n);
    r.resolve()
}

/// Floating Dougall closed form for non-terminating parameters.
pub fn dougall_5f4_f64(a: f64, c: f64, d: f64, e: f64) -> Result<f64> {
    let (cp, dp, ep) = (1.0 + a - c, 1.0 + a - d, 1.0 + a - e);
    gamma_ratio_f64(
        &[cp, dp, ep, 1.0 + a - c - d - e],
        &[1.0 + a, cp - d, dp - e, ep - c],
    )
}

/// `3F2(-b-n, b+n+1, d; b, c; 1)` for a positive integer `b`.
pub fn karlsson_series(n: u64, b: &Rational, c: &Rational, d: &Rational) -> HypSeries {
    let n = int(n as i64);
    HypSeries::unit(
        vec![-(b + &n), b + &n + int(1), d.clone()],
        vec![b.clone(), c.clone()],
    )
}

/// Karlsson's reduction of [`karlsson_series`] to a sum of `n + 2` Gauss sums.
pub fn karlsson_reduce(n: u64, b: &Rational, c: &Rational, d: &Rational) -> Result<Rational> {
    match crate::exactnum::as_integer(b) {
        Some(bi) if bi >= 1 => {}
        _ => {
            return Err(Error::Domain(format!(
                "b = {} must be a positive integer",
                format_rational(b)
            )))
        }
    }
    let top = -(b + int(n as i64));
    let mut sum = Rational::zero();
    for k in 0..=n + 1 {
        let ki = k as i64;
        let kq = int(ki);
        let den = pochhammer(b, ki)? * pochhammer(c, ki)?;
        if den.is_zero() {
            return Err(Error::Pole(format!("(b)_{k} (c)_{k} vanishes")));
        }
        let coef =
            Rational::from_integer(binomial(n + 1, k)) * pochhammer(&top, ki)? * pochhammer(d, ki)?
                / den;
        if coef.is_zero() {
            continue;
        }
        sum += coef * gauss_sum(&(&top + &kq), &(d + &kq), &(c + &kq))?;
    }
    Ok(sum)
}

/// Quick float view of an exact value, for mixed comparisons.
pub fn approx(q: &Rational) -> f64 {
    to_f64(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    #[test]
    fn terminating_examples() {
        let s = HypSeries::unit(vec![int(-1), int(2)], vec![int(4)]);
        assert_eq!(s.eval_terminating().unwrap(), q(1, 2));
        let s = HypSeries::unit(vec![int(0), q(3, 7), q(1, 9)], vec![q(5, 2), int(8)]);
        assert_eq!(s.eval_terminating().unwrap(), int(1));
        let (b, c) = (int(3), int(5));
        let s = HypSeries::unit(
            vec![int(-1), int(2), (&b + &c - int(1)) / int(2)],
            vec![b, c],
        );
        assert_eq!(s.eval_terminating().unwrap(), q(8, 15));
    }

    #[test]
    fn terminating_errors() {
        let s = HypSeries::unit(vec![q(1, 2)], vec![int(3)]);
        assert!(matches!(
            s.eval_terminating(),
            Err(Error::NonTerminating(_))
        ));
        let s = HypSeries::unit(vec![int(-3), int(1)], vec![int(-1)]);
        assert!(matches!(s.eval_terminating(), Err(Error::Pole(_))));
        // a denominator zero reached only after termination is harmless
        let s = HypSeries::unit(vec![int(-1), int(1)], vec![int(-1)]);
        assert_eq!(s.eval_terminating().unwrap(), int(2));
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_sum(&int(-2), &int(1), &int(3)).unwrap(), q(1, 2));
        assert_eq!(gauss_sum(&int(0), &q(2, 3), &q(7, 5)).unwrap(), int(1));
        let (b, c) = (q(2, 3), q(7, 5));
        assert_eq!(gauss_sum(&int(-1), &b, &c).unwrap(), (&c - &b) / &c);
        assert!(gauss_sum(&q(1, 2), &q(1, 3), &int(2)).is_err());
        assert!(matches!(
            gauss_sum(&int(-3), &int(1), &int(-1)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn gamma_ratio_pairs() {
        assert_eq!(gamma_ratio(&[int(5)], &[int(2)]).unwrap(), int(24) / int(1));
        assert_eq!(gamma_ratio(&[q(1, 2)], &[q(5, 2)]).unwrap(), q(4, 3));
        assert_eq!(gamma_ratio(&[int(2)], &[int(-1)]).unwrap(), int(0));
        assert!(gamma_ratio(&[int(-1)], &[int(2)]).is_err());
        // Γ(-1+ε)/Γ(-3+ε) → (-3)(-2)
        assert_eq!(gamma_ratio(&[int(-1)], &[int(-3)]).unwrap(), int(6));
        assert!(matches!(
            gamma_ratio(&[q(1, 3)], &[q(1, 2)]),
            Err(Error::Irreducible(_))
        ));
    }

    #[test]
    fn thomae_examples() {
        let (pre, image) = thomae_transform(&int(0), &int(0), &int(2), &int(0), &q(9, 4)).unwrap();
        assert_eq!(pre, int(1));
        assert_eq!(image.eval_terminating().unwrap(), int(1));
        // (-2, 1, 1, 2, 2) has s = 4 and image 3F2(4, 4, 4; 5, 5), which never terminates
        assert!(matches!(
            thomae_transform(&int(-2), &int(1), &int(1), &int(2), &int(2)),
            Err(Error::NonTerminating(_))
        ));
    }

    #[test]
    fn thomae_family() {
        // b = -M terminates the left side, e = a - N the right side, c integer
        for (an, ad) in [(3, 10), (7, 10), (11, 10), (-9, 10)] {
            for (fnum, fden) in [(5, 14), (13, 14), (-3, 14)] {
                for m in 0..4 {
                    for nn in 0..4 {
                        for c in 1..4 {
                            let a = q(an, ad);
                            let e = &a - int(nn);
                            let f = q(fnum, fden);
                            let (l, r) = thomae_check(&a, &int(-m), &int(c), &e, &f).unwrap();
                            assert_eq!(l, r, "a={a} m={m} n={nn} c={c} f={f}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn whipple_examples() {
        assert_eq!(whipple_terminating(0, &q(1, 3), &q(2, 7)).unwrap(), int(1));
        assert_eq!(whipple_terminating(1, &int(3), &int(5)).unwrap(), q(8, 15));
        assert_eq!(whipple_terminating(2, &int(4), &int(6)).unwrap(), q(8, 35));
        assert_eq!(
            whipple_series(2, &int(4), &int(6))
                .eval_terminating()
                .unwrap(),
            q(8, 35)
        );
    }

    #[test]
    fn whipple_general_matches_terminating() {
        let (b, c) = (q(7, 2), q(9, 2));
        let exact = approx(&whipple_terminating(3, &b, &c).unwrap());
        let float = whipple_general(-3.0, 3.5, 4.5).unwrap();
        assert!((float - exact).abs() <= 1e-10 * exact.abs());
    }

    #[test]
    fn whipple_general_vanishes_on_zero_line() {
        // a = -b - 2k puts a pole of Γ((b+a)/2) in the denominator
        for k in 0..4 {
            let b = 2.5;
            assert_eq!(whipple_general(-b - 2.0 * k as f64, b, 3.25).unwrap(), 0.0);
        }
    }

    #[test]
    fn whipple_general_partial_sums() {
        let closed = whipple_general(1.0 / 3.0, 3.0, 4.0).unwrap();
        let partial = whipple_series_f64(1.0 / 3.0, 3.0, 4.0, 100_000);
        assert!((closed - partial).abs() < 1e-6, "{closed} vs {partial}");
    }

    #[test]
    fn dougall_examples() {
        let (a, c, d) = (int(2), q(1, 2), q(3, 4));
        let direct = dougall_series(&a, &c, &d, &int(-1))
            .eval_terminating()
            .unwrap();
        assert_eq!(dougall_5f4(&a, &c, &d, &int(-1)).unwrap(), direct);
        assert_eq!(dougall_5f4(&a, &c, &d, &int(0)).unwrap(), int(1));
        // the terminating parameter may sit in any of the three slots
        assert_eq!(dougall_5f4(&a, &int(-1), &c, &d).unwrap(), direct);
        assert!(dougall_5f4(&a, &c, &d, &q(1, 3)).is_err());
    }

    #[test]
    fn dougall_float_matches_exact() {
        let (a, c, d) = (q(5, 3), q(1, 7), q(2, 9));
        for e in 0..4 {
            let exact = approx(&dougall_5f4(&a, &c, &d, &int(-e)).unwrap());
            let f = dougall_5f4_f64(5.0 / 3.0, 1.0 / 7.0, 2.0 / 9.0, -e as f64).unwrap();
            assert!((exact - f).abs() < 1e-12 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn karlsson_examples() {
        let (b, c, d) = (int(2), q(7, 3), q(1, 5));
        let direct = karlsson_series(2, &b, &c, &d).eval_terminating().unwrap();
        assert_eq!(karlsson_reduce(2, &b, &c, &d).unwrap(), direct);
        assert_eq!(karlsson_reduce(3, &b, &c, &int(0)).unwrap(), int(1));
        let d = (&b + &c - int(1)) / int(2);
        assert!(karlsson_reduce(2, &b, &c, &d).unwrap().is_zero());
        assert!(karlsson_reduce(2, &q(1, 2), &c, &d).is_err());
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-80i64..80, 1i64..13).prop_map(|(n, d)| rat(n, d))
    }

    fn den_ok(b: &Rational, n: u64) -> bool {
        nonpositive_integer(b).is_none_or(|j| j >= n)
    }

    proptest! {
        #[test]
        fn whipple_closed_form_equals_series(n in 0u64..=20, b in rational(), c in rational()) {
            prop_assume!(den_ok(&b, n) && den_ok(&c, n));
            let direct = whipple_series(n, &b, &c).eval_terminating().unwrap();
            prop_assert_eq!(whipple_terminating(n, &b, &c).unwrap(), direct);
            prop_assert_eq!(whipple_terminating(n, &c, &b).unwrap(), whipple_terminating(n, &b, &c).unwrap());
        }

        #[test]
        fn whipple_zero_line(b in 1i64..=6, half_n in 0u64..=3, c in rational()) {
            let n = 2 * half_n;
            let b = int(b);
            prop_assume!(den_ok(&c, n + 1 + b.to_integer().try_into().unwrap_or(0u64)));
            let d = (&b + &c - int(1)) / int(2);
            prop_assert!(karlsson_series(n, &b, &c, &d).eval_terminating().unwrap().is_zero());
        }

        #[test]
        fn karlsson_equals_direct(n in 0u64..=6, b in 1i64..=6, c in rational(), d in rational()) {
            let b = int(b);
            let len = n + 1 + b.to_integer().try_into().unwrap_or(0u64);
            prop_assume!(den_ok(&c, len + 1));
            let direct = karlsson_series(n, &b, &c, &d).eval_terminating().unwrap();
            prop_assert_eq!(karlsson_reduce(n, &b, &c, &d).unwrap(), direct);
        }

        #[test]
        fn dougall_equals_direct(a in rational(), c in rational(), d in rational(), e in 0i64..=3) {
            let e = int(-e);
            let s = dougall_series(&a, &c, &d, &e);
            prop_assume!(s.den.iter().all(|b| nonpositive_integer(b).is_none()));
            if let Ok(direct) = s.eval_terminating() {
                match dougall_5f4(&a, &c, &d, &e) {
                    Ok(v) => prop_assert_eq!(v, direct),
                    Err(err) => prop_assert!(false, "closed form failed on a summable instance: {}", err),
                }
            }
        }
    }
}
