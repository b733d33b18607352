//! Mutation schedules, tropical sign structure and numeric T/Y dynamics.

use clusterlab_core::builders::Spec;
use clusterlab_core::error::Error;
use clusterlab_core::numeric::*;
use clusterlab_core::schedule::Schedule;
use clusterlab_core::tropical::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sign_cases() -> Vec<Spec> {
    let mut out = Vec::new();
    for r in 2..=4 {
        for l in 2..=4 {
            out.push(Spec::c(r, l).unwrap());
        }
    }
    for l in 2..=3 {
        out.push(Spec::f4(l).unwrap());
    }
    for l in 2..=4 {
        out.push(Spec::g2(l).unwrap());
    }
    out
}

#[test]
fn schedules_return_to_the_base_quiver() {
    for spec in sign_cases() {
        let sched = Schedule::new(spec);
        let full = 2 * spec.half_period_steps();
        let steps = sched.steps(-full, full).unwrap();
        assert_eq!(steps.len() as i64, 2 * full);
        assert!(steps.iter().all(|s| !s.vertex_set.is_empty()));
    }
}

#[test]
fn reversed_arrow_convention_fails_at_the_first_step() {
    for spec in sign_cases() {
        let sched = Schedule::new(spec);
        let mut q = sched.base().opposite();
        match sched.advance(&mut q, 0) {
            Err(Error::ScheduleMismatch { u_num, .. }) => assert_eq!(u_num, 1, "{spec}"),
            other => panic!("{spec}: {other:?}"),
        }
    }
}

#[test]
fn sign_counts_match_closed_forms() {
    for spec in sign_cases() {
        let c = count_signs(&spec).unwrap();
        assert_eq!((c.positive, c.negative), spec.sign_count_formula(), "{spec}");
    }
}

#[test]
fn tropical_half_and_full_periodicity() {
    for spec in sign_cases() {
        let rep = check_tropical_periodicity(&spec).unwrap();
        assert!(rep.checked > 0 && rep.ok(), "{spec}: {:?}", rep.failures.first());
    }
}

#[test]
fn tropical_sign_patterns() {
    for spec in sign_cases() {
        let rep = check_sign_patterns(&spec).unwrap();
        assert!(rep.checked > 0 && rep.ok(), "{spec}: {:?}", rep.failures.first());
    }
}

fn random_positive(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.2..5.0)).collect()
}

#[test]
fn numeric_t_and_y_systems_and_periodicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for spec in sign_cases() {
        let n = spec.vertex_count();
        let to = 2 * spec.half_period_steps() + 2 * spec.t() as i64 + 1;
        for _ in 0..5 {
            let (x0, y0) = (random_positive(&mut rng, n), random_positive(&mut rng, n));
            for mode in [CoefficientMode::Trivial, CoefficientMode::Tracked] {
                let run = run_numeric(&spec, &x0, &y0, mode, to).unwrap();
                let t = t_residuals(&run, mode);
                let y = y_residuals(&run);
                assert!(t.checked > 0 && t.max_rel < 1e-9, "{spec} {mode:?} T {t:?}");
                assert!(y.checked > 0 && y.max_rel < 1e-9, "{spec} {mode:?} Y {y:?}");
                let p = periodicity(&run);
                assert!(p.t_full.checked > 0 && p.y_full.checked > 0 && p.y_half.checked > 0);
                assert!(p.max_rel() < 1e-8, "{spec} {mode:?} {p:?}");
            }
        }
    }
}
