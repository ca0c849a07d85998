//! Composite Gauss-Legendre quadrature with panels graded geometrically
//! toward the singular edges.

use crate::error::{Error, Result};
use crate::hyper::gamma::gamma_ratio_f64;
use crate::par::{map_indexed, pairwise_sum, Execution};
use crate::polyops::legendre_shifted;

/// Ratio between consecutive panel breakpoints near a singular edge.
pub const GRADING_RATIO: f64 = 0.15;

/// Largest polynomial index accepted by the quadrature referees.
pub const MAX_INDEX: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    /// Gauss points per panel, in `[8, 64]`.
    pub nodes_per_panel: usize,
    /// Upper bound on the number of graded panels toward each singular edge.
    pub max_subdivisions: usize,
    /// Requested absolute error, at least `1e-13`.
    pub target_abs_err: f64,
    pub execution: Execution,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            nodes_per_panel: 32,
            max_subdivisions: 12,
            target_abs_err: 1e-10,
            execution: Execution::default(),
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(8..=64).contains(&self.nodes_per_panel) {
            return Err(Error::InvalidQuery(format!(
                "nodes per panel {} outside [8, 64]",
                self.nodes_per_panel
            )));
        }
        if self.target_abs_err.is_nan() || self.target_abs_err < 1e-13 {
            return Err(Error::InvalidQuery(format!(
                "target error {} below 1e-13",
                self.target_abs_err
            )));
        }
        if self.max_subdivisions < 2 {
            return Err(Error::InvalidQuery(
                "at least two subdivision levels are needed".into(),
            ));
        }
        Ok(())
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Panels `[0, σ^L], [σ^L, σ^{L-1}], ..., [σ, 1]`, each carrying `nodes`
/// Gauss points; returned as one `(points, weights)` list per panel.
fn graded_panels(nodes: usize, levels: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    let (gx, gw) = gauss_legendre(nodes);
    let mut breaks = vec![0.0];
    breaks.extend((0..=levels).rev().map(|k| GRADING_RATIO.powi(k as i32)));
    breaks
        .windows(2)
        .map(|ab| {
            let (a, b) = (ab[0], ab[1]);
            let h = 0.5 * (b - a);
            let pts = gx.iter().map(|&t| a + h * (t + 1.0)).collect();
            let wts = gw.iter().map(|&v| h * v).collect();
            (pts, wts)
        })
        .collect()
}

/// `∫_0^1 ∫_0^1 f(x, u) du dx` on the tensor product of graded rules; the
/// outer panels are spread over the executor and summed pairwise.
fn tensor_quad<F>(nodes: usize, levels: usize, exec: Execution, f: &F) -> f64
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let panels = graded_panels(nodes, levels);
    let flat_u: Vec<(f64, f64)> = panels
        .iter()
        .flat_map(|(p, w)| p.iter().copied().zip(w.iter().copied()))
        .collect();
    let parts = map_indexed(exec, panels.len(), |i| {
        let (px, wx) = &panels[i];
        let terms: Vec<f64> = px
            .iter()
            .zip(wx)
            .map(|(&x, &w)| {
                let inner: Vec<f64> = flat_u.iter().map(|&(u, v)| v * f(x, u)).collect();
                w * pairwise_sum(&inner)
            })
            .collect();
        pairwise_sum(&terms)
    });
    pairwise_sum(&parts)
}

/// Refines the level count until successive levels and a lower-order rule
/// agree within the target.
fn refine(cfg: &QuadConfig, eval: impl Fn(usize, usize) -> f64) -> Result<f64> {
    cfg.validate()?;
    let check_nodes = (cfg.nodes_per_panel * 3 / 4).max(6);
    let first = 4.min(cfg.max_subdivisions - 1);
    let mut prev = eval(cfg.nodes_per_panel, first);
    let mut est = f64::INFINITY;
    for levels in first + 1..=cfg.max_subdivisions {
        let q = eval(cfg.nodes_per_panel, levels);
        let q_low = eval(check_nodes, levels);
        est = (q - prev).abs() + (q - q_low).abs();
        if est <= cfg.target_abs_err {
            return Ok(q);
        }
        prev = q;
    }
    Err(Error::NonConvergence {
        achieved: est,
        target: cfg.target_abs_err,
    })
}

fn check_indices(m: usize, n: usize) -> Result<()> {
    if m > MAX_INDEX || n > MAX_INDEX {
        return Err(Error::InvalidQuery(format!(
            "indices ({m}, {n}) exceed {MAX_INDEX}"
        )));
    }
    Ok(())
}

/// Float coefficient tables of `p_m`, `p_n` for Horner evaluation.
fn float_pair(m: usize, n: usize) -> (Vec<f64>, Vec<f64>) {
    let f = |k: usize| {
        legendre_shifted(k)
            .coeffs()
            .iter()
            .map(crate::exactnum::to_f64)
            .collect()
    };
    (f(m), f(n))
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// `∫∫_{0<y<x<1} ln(x-y) p_m(x) p_n(y)` with `y = x(1-u)`:
/// `∫_0^1 ∫_0^1 x p_m(x) p_n(x(1-u)) (ln x + ln u) du dx`.
pub fn quad_log_l(m: usize, n: usize, cfg: &QuadConfig) -> Result<f64> {
    check_indices(m, n)?;
    let (pm, pn) = float_pair(m, n);
    let f = |x: f64, u: f64| x * horner(&pm, x) * horner(&pn, x * (1.0 - u)) * (x.ln() + u.ln());
    refine(cfg, |nodes, levels| {
        tensor_quad(nodes, levels, cfg.execution, &f)
    })
}

/// `∫∫_{0<y<x<1} (x-y)^α p_m(x) p_n(y)`, as `∫∫ x^{α+1} u^α p_m(x) p_n(x(1-u))`.
/// For `α < 0` the substitution `u = v^{1/(α+1)}` absorbs `u^α` into the measure.
pub fn quad_power_l(m: usize, n: usize, alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    check_indices(m, n)?;
    if alpha.is_nan() || alpha <= -1.0 {
        return Err(Error::Domain(format!("exponent {alpha} must exceed -1")));
    }
    let (pm, pn) = float_pair(m, n);
    let core = |x: f64, u: f64| x.powf(alpha + 1.0) * horner(&pm, x) * horner(&pn, x * (1.0 - u));
    if alpha < 0.0 {
        let e = 1.0 / (alpha + 1.0);
        let f = |x: f64, v: f64| e * core(x, v.powf(e));
        refine(cfg, |nodes, levels| {
            tensor_quad(nodes, levels, cfg.execution, &f)
        })
    } else {
        let f = |x: f64, u: f64| u.powf(alpha) * core(x, u);
        refine(cfg, |nodes, levels| {
            tensor_quad(nodes, levels, cfg.execution, &f)
        })
    }
}

/// Quadrature terms for `∫_0^{1/2} s^e g(s) ds`, `e > -1`. Negative `e` is
/// removed by `s = v^{1/(e+1)}`.
fn endpoint_terms(e: f64, g: impl Fn(f64) -> f64, nodes: usize, levels: usize, out: &mut Vec<f64>) {
    let panels = graded_panels(nodes, levels);
    if e < 0.0 {
        let k = 1.0 / (e + 1.0);
        let top = 0.5f64.powf(e + 1.0);
        for (p, w) in &panels {
            for (&v, &wv) in p.iter().zip(w) {
                out.push(top * wv * k * g((top * v).powf(k)));
            }
        }
    } else {
        for (p, w) in &panels {
            for (&v, &wv) in p.iter().zip(w) {
                let s = 0.5 * v;
                out.push(0.5 * wv * s.powf(e) * g(s));
            }
        }
    }
}

/// `2F1(a, b; c; z)` from the normalized Euler integral
/// `Γ(c)/(Γ(b)Γ(c-b)) ∫_0^1 t^{b-1} (1-t)^{c-b-1} (1-tz)^{-a} dt`.
pub fn euler_integral_quad(a: f64, b: f64, c: f64, z: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(c > b && b > 0.0) {
        return Err(Error::Domain(format!(
            "Euler integral needs c > b > 0, got b = {b}, c = {c}"
        )));
    }
    if z >= 1.0 {
        return Err(Error::Domain(format!(
            "argument {z} lies on the cut [1, inf)"
        )));
    }
    // split at 1/2; each half is graded toward its endpoint, with t and 1 - t formed directly
    let eval = |nodes: usize, levels: usize| {
        let mut terms = Vec::new();
        endpoint_terms(
            b - 1.0,
            |t| (1.0 - t).powf(c - b - 1.0) * (1.0 - t * z).powf(-a),
            nodes,
            levels,
            &mut terms,
        );
        endpoint_terms(
            c - b - 1.0,
            |s| (1.0 - s).powf(b - 1.0) * (1.0 - (1.0 - s) * z).powf(-a),
            nodes,
            levels,
            &mut terms,
        );
        pairwise_sum(&terms)
    };
    let integral = refine(cfg, eval)?;
    Ok(gamma_ratio_f64(&[c], &[b, c - b])? * integral)
}
