//! Dilogarithm evaluation and the constant and functional identities.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use clusterlab_core::builders::{build, Family, Spec};
use clusterlab_core::dilog::*;
use clusterlab_core::numeric::{run_numeric, CoefficientMode};
use clusterlab_core::tropical::count_signs;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tanh-sinh quadrature of the defining integral of `L` on `[0, x]`.
fn l_by_quadrature(x: f64) -> f64 {
    let h = 1.0 / 64.0;
    let mut sum = 0.0;
    for k in -400i32..=400 {
        let t = k as f64 * h;
        let s = PI / 2.0 * t.sinh();
        let weight = PI / 2.0 * t.cosh() / s.cosh().powi(2);
        let y = x / (1.0 + (-2.0 * s).exp());
        if y <= 0.0 || !weight.is_finite() || weight == 0.0 {
            continue;
        }
        let f = -0.5 * ((-y).ln_1p() / y + y.ln() / (1.0 - y));
        sum += weight * f;
    }
    sum * h * x / 2.0
}

#[test]
fn l_matches_quadrature() {
    for &x in &[1e-6, 0.01, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.99] {
        let a = rogers_l(x).unwrap();
        let b = l_by_quadrature(x);
        assert!((a - b).abs() < 1e-12, "x={x}: {a} vs {b}");
    }
}

#[test]
fn l_endpoint_values() {
    assert_eq!(rogers_l(0.0).unwrap(), 0.0);
    assert!((rogers_l(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-12);
    assert!((rogers_l(0.5).unwrap() - PI * PI / 12.0).abs() < 1e-12);
}

#[test]
fn l_reflection_on_a_grid() {
    for k in 0..=1000 {
        let x = k as f64 / 1000.0;
        let s = rogers_l(x).unwrap() + rogers_l(1.0 - x).unwrap();
        assert!((s - PI * PI / 6.0).abs() < 1e-12, "x={x}");
    }
}

#[test]
fn l_is_increasing() {
    let mut prev = 0.0;
    for k in 1..=1000 {
        let v = rogers_l(k as f64 / 1000.0).unwrap();
        assert!(v > prev);
        prev = v;
    }
}

/// The constant relations written out term by term.
fn explicit_numerator(spec: &Spec, a: usize, m: usize) -> Vec<((usize, usize), u32)> {
    let r = spec.r;
    let mut out: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    let mut push = |b: usize, k: usize, e: u32| {
        if b >= 1 && b <= r && k >= 1 && k <= spec.rows(b) {
            *out.entry((b, k)).or_insert(0) += e;
        }
    };
    match spec.family {
        Family::C => {
            if a + 2 <= r {
                push(a - 1, m, 1);
                push(a + 1, m, 1);
            } else if a + 1 == r {
                push(a - 1, m, 1);
                if m % 2 == 0 {
                    push(r, m / 2, 1);
                }
            } else {
                push(r - 1, 2 * m - 1, 1);
                push(r - 1, 2 * m, 2);
                push(r - 1, 2 * m + 1, 1);
            }
        }
        Family::F4 => match a {
            1 => push(2, m, 1),
            2 => {
                push(1, m, 1);
                push(3, 2 * m - 1, 1);
                push(3, 2 * m, 2);
                push(3, 2 * m + 1, 1);
            }
            3 => {
                if m % 2 == 0 {
                    push(2, m / 2, 1);
                }
                push(4, m, 1);
            }
            _ => push(3, m, 1),
        },
        Family::G2 => {
            if a == 1 {
                for (d, e) in [(-2i64, 1), (-1, 2), (0, 3), (1, 2), (2, 1)] {
                    push(2, (3 * m as i64 + d) as usize, e);
                }
            } else if m % 3 == 0 {
                push(1, m / 3, 1);
            }
        }
    }
    out.into_iter().collect()
}

fn all_cases() -> Vec<Spec> {
    let mut v = Vec::new();
    for r in 2..=4 {
        for l in 2..=5 {
            v.push(Spec::c(r, l).unwrap());
        }
    }
    for l in 2..=5 {
        v.push(Spec::f4(l).unwrap());
        v.push(Spec::g2(l).unwrap());
    }
    v
}

#[test]
fn constant_relations_match_their_transcription() {
    for spec in all_cases() {
        for a in 1..=spec.r {
            for m in 1..=spec.rows(a) {
                assert_eq!(constant_numerator(&spec, a, m), explicit_numerator(&spec, a, m), "{spec} ({a},{m})");
            }
        }
    }
}

#[test]
fn constant_identity_for_all_cases() {
    for spec in all_cases() {
        let sol = solve_constant_y(&spec, None).unwrap();
        assert!(sol.residual < 1e-12, "{spec}: residual {}", sol.residual);
        assert!(sol.values.values().all(|&y| y > 0.0));
        let rep = check_di(&sol);
        assert!(rep.abs_err < 1e-8, "{spec}: {rep:?}");
    }
}

#[test]
fn constant_solution_is_unique_from_random_starts() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in [Spec::c(3, 3).unwrap(), Spec::f4(2).unwrap(), Spec::g2(3).unwrap()] {
        let base = solve_constant_y(&spec, None).unwrap();
        let n = base.values.len();
        for _ in 0..20 {
            let start: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..100.0)).collect();
            let sol = solve_constant_y(&spec, Some(&start)).unwrap();
            for (k, v) in &sol.values {
                let w = base.values[k];
                assert!((v - w).abs() / w < 1e-10, "{spec} {k:?}: {v} vs {w}");
            }
        }
    }
}

#[test]
fn solver_rejects_bad_starts() {
    let spec = Spec::c(2, 2).unwrap();
    assert!(solve_constant_y(&spec, Some(&[1.0])).is_err());
    let n = solve_constant_y(&spec, None).unwrap().values.len();
    let mut s = vec![1.0; n];
    s[0] = 0.0;
    assert!(solve_constant_y(&spec, Some(&s)).is_err());
}

#[test]
fn functional_identity_is_a_constant_of_motion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in [Spec::c(2, 2).unwrap(), Spec::c(3, 2).unwrap(), Spec::f4(2).unwrap(), Spec::g2(2).unwrap(), Spec::g2(3).unwrap()] {
        let n = build(&spec).n();
        let full = 2 * spec.half_period_steps();
        let signs = count_signs(&spec).unwrap();
        let mut sums = Vec::new();
        for _ in 0..5 {
            let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
            let y0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
            let run = run_numeric(&spec, &x0, &y0, CoefficientMode::Tracked, full).unwrap();
            let rep = check_functional_di(&run, &signs).unwrap();
            assert!(rep.abs_err < 1e-6, "{spec}: {rep:?}");
            assert!(rep.doubled_matches, "{spec}: {rep:?}");
            assert_eq!(rep.points as i64, signs.positive + signs.negative);
            sums.push(rep.sum_y);
        }
        let spread = sums.iter().cloned().fold(f64::MIN, f64::max) - sums.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1e-6, "{spec}: spread {spread}");
    }
}

#[test]
fn functional_rhs_examples() {
    assert_eq!(functional_rhs(&Spec::c(2, 2).unwrap()).0, 40);
    assert_eq!(functional_rhs(&Spec::g2(2).unwrap()).1, 120);
}
