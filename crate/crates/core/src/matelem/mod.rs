//! Matrix elements of `|x-y|^α` and `ln|x-y|` between Legendre polynomials,
//! on the square or the lower triangle, in the standard or shifted basis.

pub mod closed;

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, sign_pow, to_f64, Rational};
use crate::par::{map_indexed, Execution};

pub use closed::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kernel {
    /// `|x-y|^α`, α > -1.
    Power(Rational),
    /// `ln|x-y|`.
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// `P_n` on `[-1, 1]`.
    Standard,
    /// `p_n` on `[0, 1]`.
    Shifted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Square,
    /// `0 < y < x < 1`.
    Triangle,
}

/// Exact entries where possible, floats otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Standard => "standard",
            Basis::Shifted => "shifted",
        })
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Square => "square",
            Region::Triangle => "triangle",
        })
    }
}

/// Kernel, basis and region without the indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSpec {
    pub kernel: Kernel,
    pub basis: Basis,
    pub region: Region,
}

impl KernelSpec {
    pub fn new(kernel: Kernel, basis: Basis, region: Region) -> Result<Self> {
        if let Kernel::Power(a) = &kernel {
            if *a <= int(-1) {
                return Err(Error::InvalidQuery(format!(
                    "power kernel needs alpha > -1, got {}",
                    format_rational(a)
                )));
            }
        }
        if basis == Basis::Standard && region == Region::Triangle {
            return Err(Error::InvalidQuery(
                "the triangle region is only defined for the shifted basis".into(),
            ));
        }
        Ok(Self {
            kernel,
            basis,
            region,
        })
    }

    pub fn at(&self, m: usize, n: usize) -> KernelQuery {
        KernelQuery {
            spec: self.clone(),
            m,
            n,
        }
    }

    pub fn alpha(&self) -> Option<&Rational> {
        match &self.kernel {
            Kernel::Power(a) => Some(a),
            Kernel::Log => None,
        }
    }
}

/// One matrix element request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelQuery {
    pub spec: KernelSpec,
    pub m: usize,
    pub n: usize,
}

impl KernelQuery {
    pub fn new(kernel: Kernel, basis: Basis, region: Region, m: usize, n: usize) -> Result<Self> {
        Ok(KernelSpec::new(kernel, basis, region)?.at(m, n))
    }
}

/// `q0 + q1 ln 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogValue {
    pub q0: Rational,
    pub q1: Rational,
}

impl LogValue {
    pub fn new(q0: Rational, q1: Rational) -> Self {
        Self { q0, q1 }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.q0) + to_f64(&self.q1) * std::f64::consts::LN_2
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q1.is_zero() {
            write!(f, "{}", format_rational(&self.q0))
        } else {
            write!(
                f,
                "{}+{}*ln2",
                format_rational(&self.q0),
                format_rational(&self.q1)
            )
        }
    }
}

/// A computed matrix element.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Rational(Rational),
    Log(LogValue),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Rational(q) => to_f64(q),
            Value::Log(l) => l.to_f64(),
            Value::Float(x) => *x,
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Value::Rational(q) => json!({ "rational": format_rational(q) }),
            Value::Log(l) if l.q1.is_zero() => json!({ "rational": format_rational(&l.q0) }),
            Value::Log(l) => {
                json!({ "rational": format_rational(&l.q0), "ln2_coeff": format_rational(&l.q1) })
            }
            Value::Float(x) => json!({ "float": x }),
        }
    }

    /// CSV cell: canonical rational, `q0+q1*ln2`, or a float.
    pub fn csv_cell(&self) -> String {
        match self {
            Value::Rational(q) => format_rational(q),
            Value::Log(l) => l.to_string(),
            Value::Float(x) => format!("{x}"),
        }
    }

    fn scaled(&self, s: &Rational) -> Value {
        match self {
            Value::Rational(q) => Value::Rational(q * s),
            Value::Log(l) => Value::Log(LogValue::new(&l.q0 * s, &l.q1 * s)),
            Value::Float(x) => Value::Float(x * to_f64(s)),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Value::Rational(q) => q.is_zero(),
            Value::Log(l) => l.q0.is_zero() && l.q1.is_zero(),
            Value::Float(x) => *x == 0.0,
        }
    }
}

/// A value together with the name of the formula that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub value: Value,
    pub route: &'static str,
}

/// Power-kernel triangle value: the Whipple closed form, falling back to the
/// exact sum if the closed form cannot be resolved.
fn triangle_power(m: usize, n: usize, alpha: &Rational) -> Result<(Rational, &'static str)> {
    match tilde_l_power(m, n, alpha) {
        Ok(v) => Ok((v, "whipple-closed-form")),
        Err(Error::Pole(_)) => Ok((tilde_l_exact_sum(m, n, alpha)?, "exact-sum")),
        Err(e) => Err(e),
    }
}

/// Evaluates one matrix element.
pub fn evaluate(q: &KernelQuery, mode: Mode) -> Result<Entry> {
    let (m, n) = (q.m, q.n);
    let entry = match (&q.spec.kernel, q.spec.basis, q.spec.region) {
        (_, Basis::Standard, Region::Triangle) => {
            return Err(Error::InvalidQuery(
                "the triangle region is only defined for the shifted basis".into(),
            ))
        }
        (Kernel::Log, Basis::Shifted, Region::Triangle) => Entry {
            value: Value::Rational(tilde_l_log(m, n)?),
            route: "log-triangle-closed-form",
        },
        (Kernel::Log, Basis::Shifted, Region::Square) => Entry {
            value: Value::Rational(tilde_b_log(m, n)?),
            route: "log-square-closed-form",
        },
        (Kernel::Log, Basis::Standard, Region::Square) => Entry {
            value: Value::Log(b_log(m, n)?),
            route: "log-standard-closed-form",
        },
        (Kernel::Power(a), Basis::Shifted, Region::Triangle) => {
            let (v, route) = triangle_power(m, n, a)?;
            Entry {
                value: Value::Rational(v),
                route,
            }
        }
        (Kernel::Power(a), Basis::Shifted, Region::Square) => {
            if (m + n) % 2 == 1 {
                Entry {
                    value: Value::Rational(Rational::zero()),
                    route: "parity",
                }
            } else {
                let (v, route) = triangle_power(m, n, a)?;
                Entry {
                    value: Value::Rational(int(2) * v),
                    route,
                }
            }
        }
        (Kernel::Power(a), Basis::Standard, Region::Square) => match b_power_exact(m, n, a) {
            Ok(v) => Entry {
                value: Value::Rational(v),
                route: "power-standard-closed-form",
            },
            Err(Error::NotRational(msg)) => {
                if mode == Mode::Exact {
                    return Err(Error::NotRational(msg));
                }
                Entry {
                    value: Value::Float(b_power_f64(m, n, a)?),
                    route: "power-standard-closed-form",
                }
            }
            Err(e) => return Err(e),
        },
    };
    Ok(match mode {
        Mode::Exact => entry,
        Mode::Float => Entry {
            value: Value::Float(entry.value.to_f64()),
            route: entry.route,
        },
    })
}

/// An assembled `rows × cols` block of matrix elements.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixResult {
    pub spec: KernelSpec,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Value>>,
}

impl MatrixResult {
    pub fn get(&self, m: usize, n: usize) -> &Value {
        &self.entries[m][n]
    }

    /// Parity symmetry: triangle entries satisfy `e(m,n) = (-1)^{m-n} e(n,m)`;
    /// square entries are symmetric and vanish for odd `m - n`.
    pub fn check_symmetry(&self) -> bool {
        let n = self.rows.min(self.cols);
        (0..n).all(|i| {
            (0..n).all(|j| {
                let a = self.get(i, j);
                let b = self.get(j, i);
                match self.spec.region {
                    Region::Triangle => values_equal(a, &b.scaled(&sign_pow((i + j) as i64))),
                    Region::Square => values_equal(a, b) && ((i + j) % 2 == 0 || a.is_zero()),
                }
            })
        })
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = self
            .entries
            .iter()
            .map(|r| Json::Array(r.iter().map(Value::to_json).collect()))
            .collect();
        json!({
            "size": [self.rows, self.cols],
            "kernel": kernel_name(&self.spec.kernel),
            "alpha": self.spec.alpha().map(format_rational),
            "basis": self.spec.basis.to_string(),
            "region": self.spec.region.to_string(),
            "entries": rows,
        })
    }

    pub fn to_csv(&self) -> String {
        self.entries
            .iter()
            .map(|r| r.iter().map(Value::csv_cell).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }
}

fn values_equal(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Float(x), Value::Float(y)) => {
            (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0)
        }
        _ => a == b,
    }
}

pub fn kernel_name(k: &Kernel) -> &'static str {
    match k {
        Kernel::Power(_) => "power",
        Kernel::Log => "log",
    }
}

/// Assembles the `size × size` block of entries `(m, n)`, `0 <= m, n < size`.
pub fn assemble_matrix(
    spec: &KernelSpec,
    size: usize,
    mode: Mode,
    exec: Execution,
) -> Result<MatrixResult> {
    if size == 0 {
        return Err(Error::InvalidQuery("matrix size must be at least 1".into()));
    }
    let flat = map_indexed(exec, size * size, |k| {
        evaluate(&spec.at(k / size, k % size), mode).map(|e| e.value)
    });
    let mut it = flat.into_iter();
    let mut entries = Vec::with_capacity(size);
    for _ in 0..size {
        entries.push(it.by_ref().take(size).collect::<Result<Vec<_>>>()?);
    }
    Ok(MatrixResult {
        spec: spec.clone(),
        rows: size,
        cols: size,
        entries,
    })
}
