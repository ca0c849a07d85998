use matel_core::comb5::log_triangle_by_double_sum;
use matel_core::exactnum::{parse_rational, rat, sign_pow, to_f64, Rational};
use matel_core::matelem::{
    assemble_matrix, evaluate, tilde_b_log, tilde_b_power, tilde_l_exact_sum, tilde_l_log,
    tilde_l_power, Basis, Kernel, KernelSpec, Mode, Region, Value,
};
use matel_core::oracle::exact::exact_log_l;
use matel_core::oracle::{quad_power_l, QuadConfig};
use matel_core::par::Execution;
use proptest::prelude::*;

fn exponent() -> impl Strategy<Value = Rational> {
    (-11i64..80, 1i64..12)
        .prop_map(|(p, q)| rat(p, q))
        .prop_filter("alpha > -1", |a| *a > rat(-1, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_equals_exact_sum(a in exponent(), m in 0usize..=8, n in 0usize..=8) {
        prop_assert_eq!(tilde_l_power(m, n, &a).unwrap(), tilde_l_exact_sum(m, n, &a).unwrap());
    }

    #[test]
    fn parity_symmetry(a in exponent(), m in 0usize..=10, n in 0usize..=10) {
        let s = sign_pow((m + n) as i64);
        prop_assert_eq!(tilde_l_power(m, n, &a).unwrap(), &s * tilde_l_power(n, m, &a).unwrap());
        prop_assert_eq!(tilde_l_log(m, n).unwrap(), s * tilde_l_log(n, m).unwrap());
    }

    #[test]
    fn value_json_round_trips(p in -1000i64..1000, q in 1i64..1000) {
        let v = Value::Rational(rat(p, q));
        let text = v.to_json().to_string();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(parse_rational(back["rational"].as_str().unwrap()).unwrap(), rat(p, q));
    }
}

#[test]
fn log_is_the_exponent_derivative_of_the_power_kernel() {
    let eps = rat(1, 10_000_000);
    for m in 0..=6usize {
        for n in (0..=6usize).filter(|n| (m + n) % 2 == 0 && (m, *n) != (0, 0)) {
            let slope = to_f64(&(tilde_b_power(m, n, &eps).unwrap() / &eps));
            let log = to_f64(&tilde_b_log(m, n).unwrap());
            assert!((slope - log).abs() <= 1e-6, "({m},{n}): {slope} vs {log}");
        }
    }
}

#[test]
fn quadrature_derivative_link() {
    let cfg = QuadConfig::default();
    let eps = 1e-6;
    for m in 0..=4usize {
        for n in (0..=4usize).filter(|n| (m + n) % 2 == 0) {
            let fd = (quad_power_l(m, n, eps, &cfg).unwrap()
                - quad_power_l(m, n, 0.0, &cfg).unwrap())
                / eps;
            let exact = to_f64(&exact_log_l(m, n));
            assert!((fd - exact).abs() <= 1e-5, "({m},{n}): {fd} vs {exact}");
        }
    }
}

#[test]
fn next_diagonal_log_values_match_double_sum() {
    for n in 0..=12 {
        assert_eq!(
            tilde_l_log(n + 1, n).unwrap(),
            log_triangle_by_double_sum(n + 1, n)
        );
    }
}

#[test]
fn float_mode_tracks_exact_mode() {
    for kernel in [
        Kernel::Log,
        Kernel::Power(rat(3, 2)),
        Kernel::Power(rat(2, 1)),
    ] {
        for (basis, region) in [
            (Basis::Shifted, Region::Triangle),
            (Basis::Shifted, Region::Square),
            (Basis::Standard, Region::Square),
        ] {
            let spec = KernelSpec::new(kernel.clone(), basis, region).unwrap();
            let f = assemble_matrix(&spec, 6, Mode::Float, Execution::Parallel).unwrap();
            for m in 0..6 {
                for n in 0..6 {
                    let x = f.get(m, n).to_f64();
                    let y = match evaluate(&spec.at(m, n), Mode::Exact) {
                        Ok(e) => e.value.to_f64(),
                        Err(_) => continue,
                    };
                    assert!(
                        (x - y).abs() <= 1e-14 * y.abs().max(1e-300),
                        "{spec:?} ({m},{n})"
                    );
                }
            }
            assert!(f.check_symmetry());
        }
    }
}

#[test]
fn sequential_and_parallel_assembly_agree() {
    let spec = KernelSpec::new(Kernel::Log, Basis::Standard, Region::Square).unwrap();
    let a = assemble_matrix(&spec, 10, Mode::Exact, Execution::Sequential).unwrap();
    let b = assemble_matrix(&spec, 10, Mode::Exact, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json(), b.to_json());
}
