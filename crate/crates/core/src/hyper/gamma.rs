//! Floating Gamma support with an explicit sign channel.

use std::f64::consts::PI;

use crate::error::{Error, Result};

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `(ln |Γ(x)|, sign Γ(x))`. Reflection below 1/2.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if is_pole(x) {
        return Err(Error::Pole(format!("Gamma has a pole at {x}")));
    }
    if x >= 0.5 {
        return Ok((statrs::function::gamma::ln_gamma(x), 1.0));
    }
    let s = (PI * x).sin();
    let (lg, _) = ln_gamma_signed(1.0 - x)?;
    Ok((PI.ln() - s.abs().ln() - lg, s.signum()))
}

/// `ln |Γ(x)|`.
pub fn gamma_ln(x: f64) -> Result<f64> {
    ln_gamma_signed(x).map(|(l, _)| l)
}

pub fn gamma(x: f64) -> Result<f64> {
    ln_gamma_signed(x).map(|(l, s)| s * l.exp())
}

/// `1/Γ(x)`, entire: zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    match ln_gamma_signed(x) {
        Ok((l, s)) => s * (-l).exp(),
        Err(_) => 0.0,
    }
}

/// Rising factorial `(a)_n` in floating point.
pub fn poch_f64(a: f64, n: u64) -> f64 {
    (0..n).map(|i| a + i as f64).product()
}

/// `Π Γ(num) / Π Γ(den)` evaluated in log space. A pole among the
/// denominators makes the ratio vanish; a pole among the numerators is an error.
pub fn gamma_ratio_f64(num: &[f64], den: &[f64]) -> Result<f64> {
    if den.iter().any(|&x| is_pole(x)) {
        if let Some(&x) = num.iter().find(|&&x| is_pole(x)) {
            return Err(Error::Pole(format!("Gamma pole at {x} in numerator")));
        }
        return Ok(0.0);
    }
    let mut log = 0.0;
    let mut sign = 1.0;
    for &x in num {
        let (l, s) = ln_gamma_signed(x)?;
        log += l;
        sign *= s;
    }
    for &x in den {
        let (l, s) = ln_gamma_signed(x)?;
        log -= l;
        sign *= s;
    }
    Ok(sign * log.exp())
}
