//! The Rogers dilogarithm, the level-restricted constant Y-system and the
//! constant and functional dilogarithm identities.
//!
//! `L(x) = −½ ∫_0^x {log(1−y)/y + log(y)/(1−y)} dy` is evaluated as
//! `Li_2(x) + ½ log(x) log(1−x)` with the power series of `Li_2` on
//! `x <= ½` and the reflection `L(x) + L(1−x) = π²/6` above.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::builders::{Family, Spec};
use crate::error::Error;
use crate::numeric::{g_transposed, NumericRun};
use crate::schedule::GridPoint;
use crate::tropical::SignCount;

/// `π²/6 = L(1)`.
pub const L_ONE: f64 = PI * PI / 6.0;

/// `L(x)` for `0 <= x <= 1`.
pub fn rogers_l(x: f64) -> Result<f64, Error> {
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(Error::Domain(format!("L(x) needs 0 <= x <= 1, got {x}")));
    }
    Ok(rogers_l_split(x, 1.0 - x))
}

/// `L(x)` given both `x` and `1 − x`, so that arguments close to 1 keep
/// full relative precision in the complement.
pub fn rogers_l_split(x: f64, xc: f64) -> f64 {
    if x <= 0.5 {
        l_small(x, xc)
    } else {
        L_ONE - l_small(xc, x)
    }
}

/// `L(x)` for `0 <= x <= ½` with `xc = 1 − x`.
fn l_small(x: f64, xc: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut term = x;
    let mut sum: f64 = 0.0;
    let mut k: f64 = 1.0;
    while term > 1e-18 * sum || k < 2.0 {
        sum += term / (k * k);
        k += 1.0;
        term *= x;
    }
    sum + 0.5 * libm::log(x) * libm::log(xc)
}

/// `(L(Y/(1+Y)), L(1/(1+Y)))` for `Y > 0`.
pub fn l_pair(y: f64) -> (f64, f64) {
    let x = y / (1.0 + y);
    let xc = 1.0 / (1.0 + y);
    (rogers_l_split(x, xc), rogers_l_split(xc, x))
}

/// A positive solution of the constant Y-system.
#[derive(Clone, Debug)]
pub struct ConstantYSolution {
    pub spec: Spec,
    /// `Y^(a)_m`.
    pub values: BTreeMap<(usize, usize), f64>,
    pub iterations: usize,
    /// Largest relative residual of the squared relations.
    pub residual: f64,
}

impl ConstantYSolution {
    pub fn get(&self, a: usize, m: usize) -> Option<f64> {
        self.values.get(&(a, m)).copied()
    }
}

/// The exponents of `(1 + Y^(b)_k)` in the numerator of the relation for
/// `(Y^(a)_m)^2`: the `G` exponents transposed and summed over time.
pub fn constant_numerator(spec: &Spec, a: usize, m: usize) -> Vec<((usize, usize), u32)> {
    let mut acc: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for (p, mult) in g_transposed(spec, &GridPoint::new(a, m, 0)) {
        *acc.entry((p.a, p.m)).or_insert(0) += mult;
    }
    acc.into_iter().collect()
}

/// The squared constant relation `RHS(Y)` at `(a, m)`.
pub fn constant_rhs(spec: &Spec, numer: &[((usize, usize), u32)], y: &BTreeMap<(usize, usize), f64>, a: usize, m: usize) -> f64 {
    let mut num = 1.0;
    for &((b, k), e) in numer {
        num *= libm::pow(1.0 + y[&(b, k)], e as f64);
    }
    let inv = |k: usize| -> f64 {
        if k == 0 || k > spec.rows(a) {
            0.0
        } else {
            1.0 / y[&(a, k)]
        }
    };
    num / ((1.0 + inv(m - 1)) * (1.0 + inv(m + 1)))
}

const MAX_ITERATIONS: usize = 1_000_000;

/// Solve the constant Y-system by the damped iteration
/// `Y ← ½ Y + ½ √RHS(Y)` from `Y ≡ 1` (or from `start`, listed in the
/// order `a = 1..r`, `m = 1..rows(a)`) until the largest relative update
/// is below `1e−13`.
pub fn solve_constant_y(spec: &Spec, start: Option<&[f64]>) -> Result<ConstantYSolution, Error> {
    let keys: Vec<(usize, usize)> = (1..=spec.r).flat_map(|a| (1..=spec.rows(a)).map(move |m| (a, m))).collect();
    let numer: Vec<Vec<((usize, usize), u32)>> = keys.iter().map(|&(a, m)| constant_numerator(spec, a, m)).collect();
    let mut y: BTreeMap<(usize, usize), f64> = match start {
        Some(s) => {
            if s.len() != keys.len() {
                return Err(Error::SizeMismatch { left: s.len(), right: keys.len() });
            }
            if let Some((k, &v)) = s.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
                return Err(Error::NonPositive { vertex: k, value: v });
            }
            keys.iter().copied().zip(s.iter().copied()).collect()
        }
        None => keys.iter().map(|&k| (k, 1.0)).collect(),
    };
    let lambda = 0.5;
    for it in 1..=MAX_ITERATIONS {
        let mut next = y.clone();
        let mut delta: f64 = 0.0;
        for (idx, &(a, m)) in keys.iter().enumerate() {
            let target = libm::sqrt(constant_rhs(spec, &numer[idx], &y, a, m));
            let old = y[&(a, m)];
            let new = (1.0 - lambda) * old + lambda * target;
            delta = delta.max(libm::fabs(new - old) / new);
            next.insert((a, m), new);
        }
        y = next;
        if delta < 1e-13 {
            let residual = keys
                .iter()
                .enumerate()
                .map(|(idx, &(a, m))| {
                    let v = y[&(a, m)];
                    let rhs = constant_rhs(spec, &numer[idx], &y, a, m);
                    libm::fabs(v * v - rhs) / rhs
                })
                .fold(0.0, f64::max);
            return Ok(ConstantYSolution { spec: *spec, values: y, iterations: it, residual });
        }
    }
    Err(Error::NoConvergence(MAX_ITERATIONS))
}

/// `r(ℓh − h∨)/(h∨ + ℓ)`.
pub fn central_charge(spec: &Spec) -> f64 {
    let (r, l) = (spec.r as f64, spec.l as f64);
    let (h, hv) = (spec.h() as f64, spec.h_dual() as f64);
    r * (l * h - hv) / (hv + l)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiReport {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
}

/// `(6/π²) Σ L(Y/(1+Y))` over a constant solution against the central
/// charge.
pub fn check_di(solution: &ConstantYSolution) -> DiReport {
    let sum: f64 = solution.values.values().map(|&y| l_pair(y).0).sum();
    let lhs = sum / L_ONE;
    let rhs = central_charge(&solution.spec);
    DiReport { lhs, rhs, abs_err: libm::fabs(lhs - rhs) }
}

/// The printed values of the functional identities summed over both
/// parity classes: `(Σ L(Y/(1+Y)), Σ L(1/(1+Y)))` in units of `π²/6`.
pub fn functional_rhs(spec: &Spec) -> (i64, i64) {
    let (r, l) = (spec.r as i64, spec.l as i64);
    match spec.family {
        Family::C => (4 * r * (2 * r * l - r - 1), 4 * l * (2 * r * l - l - 1)),
        Family::F4 => (48 * (4 * l - 3), 8 * l * (3 * l + 1)),
        Family::G2 => (24 * (3 * l - 2), 12 * l * (2 * l + 1)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalDiReport {
    /// `(6/π²) Σ L(Y/(1+Y))` over one parity class and one full period.
    pub sum_y: f64,
    /// `(6/π²) Σ L(1/(1+Y))` over the same points.
    pub sum_one: f64,
    pub points: usize,
    pub n_plus: i64,
    pub n_minus: i64,
    /// `max(|sum_y − N−|, |sum_one − N+|)`.
    pub abs_err: f64,
    /// Whether `(2N−, 2N+)` equal the printed two-class values.
    pub doubled_matches: bool,
}

/// Sum `L` over the `Y` values of one parity class in `0 <= u < 2(h∨+ℓ)`
/// and compare with the tropical sign counts.
pub fn check_functional_di(run: &NumericRun, signs: &SignCount) -> Result<FunctionalDiReport, Error> {
    let spec = &run.spec;
    let full = 2 * spec.half_period_steps();
    if run.from > 0 || run.to < full {
        return Err(Error::InvalidSpec(format!("numeric run must cover 0..{full}, got {}..{}", run.from, run.to)));
    }
    let (mut sy, mut s1, mut points) = (0.0, 0.0, 0usize);
    for (p, &y) in &run.y {
        if (0..full).contains(&p.u_num) {
            let (a, b) = l_pair(y);
            sy += a;
            s1 += b;
            points += 1;
        }
    }
    let (sum_y, sum_one) = (sy / L_ONE, s1 / L_ONE);
    let (n_plus, n_minus) = (signs.positive, signs.negative);
    let abs_err = libm::fabs(sum_y - n_minus as f64).max(libm::fabs(sum_one - n_plus as f64));
    let doubled_matches = functional_rhs(spec) == (2 * n_minus, 2 * n_plus);
    Ok(FunctionalDiReport { sum_y, sum_one, points, n_plus, n_minus, abs_err, doubled_matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert_eq!(rogers_l(0.0).unwrap(), 0.0);
        assert!((rogers_l(1.0).unwrap() - L_ONE).abs() < 1e-15);
        assert!((rogers_l(0.5).unwrap() - L_ONE / 2.0).abs() < 1e-15);
        let g = (libm::sqrt(5.0) - 1.0) / 2.0;
        assert!((rogers_l(g).unwrap() - PI * PI / 10.0).abs() < 1e-14);
        assert!((rogers_l(g * g).unwrap() - PI * PI / 15.0).abs() < 1e-14);
        assert!(rogers_l(1.5).is_err());
        assert!(rogers_l(-0.1).is_err());
    }

    #[test]
    fn central_charge_examples() {
        assert!((central_charge(&Spec::g2(2).unwrap()) - 8.0 / 3.0).abs() < 1e-15);
        assert!((central_charge(&Spec::c(2, 2).unwrap()) - 2.0).abs() < 1e-15);
        assert!((central_charge(&Spec::f4(2).unwrap()) - 60.0 / 11.0).abs() < 1e-14);
    }
}
