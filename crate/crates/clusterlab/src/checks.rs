//! Individual verification checks, each producing one report row.

use std::time::Instant;

use anyhow::Result;
use clusterlab_core::builders::Spec;
use clusterlab_core::dilog::{check_di, check_functional_di, solve_constant_y};
use clusterlab_core::dynkin::Dynkin;
use clusterlab_core::error::Error;
use clusterlab_core::mutclass::{search_equivalence, SearchConfig, SearchOutcome};
use clusterlab_core::numeric::{periodicity, run_numeric, t_residuals, y_residuals, CoefficientMode};
use clusterlab_core::roots::{check_tvectors, RootSystem, SigmaMap};
use clusterlab_core::schedule::Schedule;
use clusterlab_core::tropical::{check_sign_patterns, check_tropical_periodicity, count_signs, CheckReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::case::{CaseId, FamilyName, QuiverName};
use crate::report::{Status, VerificationReport};

/// Numeric tolerances of the suite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Relative residual of the T- and Y-system relations.
    pub residual: f64,
    /// Relative half and full periodicity error.
    pub periodicity: f64,
    /// Absolute error of the constant dilogarithm identity.
    pub dilog: f64,
    /// Absolute error and seed spread of the functional identities.
    pub functional: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { residual: 1e-9, periodicity: 1e-8, dilog: 1e-8, functional: 1e-6 }
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn error_row(row: VerificationReport, e: impl std::fmt::Display) -> VerificationReport {
    row.metric("error", e.to_string()).with_status(Status::Fail)
}

fn exact_row(row: VerificationReport, rep: Result<CheckReport, Error>, start: Instant) -> VerificationReport {
    match rep {
        Ok(rep) => row
            .metric("checked", rep.checked)
            .metric("failures", rep.failures.len())
            .metric("first_failure", rep.failures.first().cloned())
            .metric("runtime_ms", elapsed_ms(start))
            .require(rep.checked > 0 && rep.ok()),
        Err(e) => error_row(row, e),
    }
}

/// Drive the quiver across one full period and compare every step with
/// the expected relabelling.  `flip_arrows` starts from the opposite
/// quiver, emulating the reversed arrow convention.
pub fn schedule(case: &CaseId, flip_arrows: bool) -> VerificationReport {
    let start = Instant::now();
    let row = VerificationReport::for_case(case, "schedule", "mutation-schedule").metric("flip_arrows", flip_arrows);
    let spec = match case.spec() {
        Ok(s) => s,
        Err(e) => return error_row(row, e),
    };
    let sched = Schedule::new(spec);
    let mut q = sched.base().clone();
    if flip_arrows {
        q = q.opposite();
    }
    let full = 2 * spec.half_period_steps();
    for u in 0..full {
        if let Err(e) = sched.advance(&mut q, u) {
            return error_row(row.metric("failed_step", u + 1).metric("den", spec.t()), e);
        }
    }
    row.metric("steps", full).metric("den", spec.t()).metric("runtime_ms", elapsed_ms(start))
}

pub fn sign_counts(case: &CaseId) -> VerificationReport {
    let start = Instant::now();
    let row = VerificationReport::for_case(case, "sign_counts", "tropical-sign-count");
    match case.spec().and_then(|s| Ok((s, count_signs(&s)?))) {
        Ok((spec, c)) => {
            let (ep, en) = spec.sign_count_formula();
            row.metric("n_plus", c.positive)
                .metric("n_minus", c.negative)
                .metric("expected_n_plus", ep)
                .metric("expected_n_minus", en)
                .metric("unit", c.unit)
                .metric("mixed", c.mixed)
                .metric("runtime_ms", elapsed_ms(start))
                .require((c.positive, c.negative) == (ep, en))
        }
        Err(e) => error_row(row, e),
    }
}

pub fn point_count(case: &CaseId) -> VerificationReport {
    let row = VerificationReport::for_case(case, "point_count", "mutation-point-count");
    match case.spec().and_then(|s| Ok((s, count_signs(&s)?))) {
        Ok((spec, c)) => {
            let total = c.positive + c.negative;
            let expected = spec.point_count_formula();
            row.metric("n_total", total)
                .metric("expected", expected)
                .require(total == expected && c.unit == 0 && c.mixed == 0)
        }
        Err(e) => error_row(row, e),
    }
}

/// `N+(C_r, ℓ) = N−(C_ℓ, r)`.
pub fn level_rank_duality(case: &CaseId) -> Option<VerificationReport> {
    if case.family != FamilyName::C {
        return None;
    }
    let row = VerificationReport::for_case(case, "level_rank_duality", "level-rank-duality");
    let result = (|| -> Result<(i64, i64)> {
        let a = count_signs(&Spec::c(case.rank, case.level)?)?;
        let b = count_signs(&Spec::c(case.level, case.rank)?)?;
        Ok((a.positive, b.negative))
    })();
    Some(match result {
        Ok((p, n)) => row.metric("n_plus", p).metric("dual_n_minus", n).require(p == n),
        Err(e) => error_row(row, e),
    })
}

pub fn tropical_periodicity(case: &CaseId) -> VerificationReport {
    let start = Instant::now();
    let row = VerificationReport::for_case(case, "tropical_periodicity", "tropical-periodicity");
    match case.spec() {
        Ok(spec) => exact_row(row, check_tropical_periodicity(&spec), start),
        Err(e) => error_row(row, e),
    }
}

pub fn sign_patterns(case: &CaseId) -> VerificationReport {
    let start = Instant::now();
    let row = VerificationReport::for_case(case, "sign_patterns", "tropical-sign-pattern");
    match case.spec() {
        Ok(spec) => exact_row(row, check_sign_patterns(&spec), start),
        Err(e) => error_row(row, e),
    }
}

/// Only defined at level 2.
pub fn tvectors(case: &CaseId) -> Option<VerificationReport> {
    if case.level != 2 {
        return None;
    }
    let start = Instant::now();
    let row = VerificationReport::for_case(case, "tvectors", "t-vector-roots");
    Some(match case.spec() {
        Ok(spec) => exact_row(row, check_tvectors(&spec), start),
        Err(e) => error_row(row, e),
    })
}

fn random_positive(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.2..5.0)).collect()
}

/// Initial `(x, y)` for a seed.
pub fn initial_data(seed: u64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = random_positive(&mut rng, n);
    let y = random_positive(&mut rng, n);
    (x, y)
}

/// T/Y residuals and periodicity over every seed, in both coefficient
/// modes.
pub fn numeric(case: &CaseId, seeds: &[u64], tol: &Tolerances) -> VerificationReport {
    let start = Instant::now();
    let row = VerificationReport::for_case(case, "numeric", "t-y-system-periodicity");
    let result = (|| -> Result<(f64, f64, usize)> {
        let spec = case.spec()?;
        let n = spec.vertex_count();
        let to = 2 * spec.half_period_steps() + 2 * spec.t() as i64 + 1;
        let (mut res, mut per, mut checked) = (0.0f64, 0.0f64, 0usize);
        for &seed in seeds {
            let (x0, y0) = initial_data(seed, n);
            for mode in [CoefficientMode::Trivial, CoefficientMode::Tracked] {
                let run = run_numeric(&spec, &x0, &y0, mode, to)?;
                let t = t_residuals(&run, mode);
                let y = y_residuals(&run);
                let p = periodicity(&run);
                if t.checked == 0 || y.checked == 0 || p.y_half.checked == 0 {
                    anyhow::bail!("no relations were checked");
                }
                res = res.max(t.max_rel).max(y.max_rel);
                per = per.max(p.max_rel());
                checked += t.checked + y.checked + p.t_full.checked + p.y_full.checked + p.y_half.checked;
            }
        }
        Ok((res, per, checked))
    })();
    match result {
        Ok((res, per, checked)) => row
            .metric("seeds", seeds.len())
            .metric("max_residual", res)
            .metric("max_periodicity_error", per)
            .metric("checked", checked)
            .metric("runtime_ms", elapsed_ms(start))
            .require(!seeds.is_empty() && res < tol.residual && per < tol.periodicity),
        Err(e) => error_row(row, e),
    }
}

pub fn constant_di(case: &CaseId, tol: &Tolerances) -> VerificationReport {
    let start = Instant::now();
    let row = VerificationReport::for_case(case, "constant_di", "constant-dilogarithm-identity");
    match case.spec().and_then(|s| Ok(solve_constant_y(&s, None)?)) {
        Ok(sol) => {
            let di = check_di(&sol);
            row.metric("lhs", di.lhs)
                .metric("rhs", di.rhs)
                .metric("abs_err", di.abs_err)
                .metric("solver_residual", sol.residual)
                .metric("iterations", sol.iterations)
                .metric("runtime_ms", elapsed_ms(start))
                .require(di.abs_err < tol.dilog)
        }
        Err(e) => error_row(row, e),
    }
}

pub fn functional_di(case: &CaseId, seeds: &[u64], tol: &Tolerances) -> VerificationReport {
    let start = Instant::now();
    let row = VerificationReport::for_case(case, "functional_di", "functional-dilogarithm-identity");
    let result = (|| -> Result<VerificationReport> {
        let spec = case.spec()?;
        let signs = count_signs(&spec)?;
        let n = spec.vertex_count();
        let full = 2 * spec.half_period_steps();
        let (mut err, mut doubled) = (0.0f64, true);
        let mut sums: Vec<(f64, f64)> = Vec::new();
        for &seed in seeds {
            let (x0, y0) = initial_data(seed, n);
            let run = run_numeric(&spec, &x0, &y0, CoefficientMode::Tracked, full)?;
            let rep = check_functional_di(&run, &signs)?;
            err = err.max(rep.abs_err);
            doubled &= rep.doubled_matches;
            sums.push((rep.sum_y, rep.sum_one));
        }
        let spread = |f: fn(&(f64, f64)) -> f64| {
            let vals: Vec<f64> = sums.iter().map(f).collect();
            vals.iter().cloned().fold(f64::MIN, f64::max) - vals.iter().cloned().fold(f64::MAX, f64::min)
        };
        let seed_spread = if sums.is_empty() { 0.0 } else { spread(|s| s.0).max(spread(|s| s.1)) };
        let (sum_y, sum_one) = sums.first().copied().unwrap_or((f64::NAN, f64::NAN));
        Ok(row
            .clone()
            .metric("sum_y", sum_y)
            .metric("sum_one", sum_one)
            .metric("n_minus", signs.negative)
            .metric("n_plus", signs.positive)
            .metric("abs_err", err)
            .metric("seed_spread", seed_spread)
            .metric("doubled_matches", doubled)
            .metric("seeds", seeds.len())
            .metric("runtime_ms", elapsed_ms(start))
            .require(!seeds.is_empty() && err < tol.functional && seed_spread < tol.functional && doubled))
    })();
    result.unwrap_or_else(|e| error_row(row, e))
}

/// The root systems and σ maps attached to a case.
pub fn orbit_systems(case: &CaseId) -> Result<Vec<(String, RootSystem, SigmaMap)>> {
    Ok(match case.family {
        FamilyName::C => {
            let r = case.rank;
            vec![
                (format!("D{}", r + 1), RootSystem::new(Dynkin::d(r + 1)?), SigmaMap::c_family(r)),
                (format!("A{}", r - 1), RootSystem::new(Dynkin::a(r - 1)?), SigmaMap::c_a_part(r)),
            ]
        }
        FamilyName::F4 => vec![("E6".into(), RootSystem::new(Dynkin::e6()), SigmaMap::f4())],
        FamilyName::G2 => vec![("D4".into(), RootSystem::new(Dynkin::d4_central()), SigmaMap::g2())],
    })
}

/// σ-orbits partition the positive roots and each `σ_i` is an involution
/// on the almost positive roots.
pub fn orbits(case: &CaseId) -> VerificationReport {
    let start = Instant::now();
    let row = VerificationReport::for_case(case, "orbits", "root-orbit-partition");
    let result = (|| -> Result<VerificationReport> {
        let mut row = row.clone();
        let mut ok = true;
        for (name, sys, map) in orbit_systems(case)? {
            let orbits = sys.orbit_decomposition(&map)?;
            let partition = sys.is_partition(&orbits);
            let mut involution = true;
            for a in sys.almost_positive() {
                for i in 1..=sys.rank() {
                    let b = sys.sigma_i(i, &a)?;
                    involution &= sys.is_almost_positive(&b) && sys.sigma_i(i, &b)? == a;
                }
            }
            ok &= partition && involution;
            row = row.metric(
                &name,
                json!({ "orbits": orbits.len(), "positive_roots": sys.positive_roots().len(), "partition": partition, "sigma_involution": involution }),
            );
        }
        Ok(row.metric("runtime_ms", elapsed_ms(start)).require(ok))
    })();
    result.unwrap_or_else(|e| error_row(row, e))
}

/// A pair of quivers expected to be mutation equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub left: String,
    pub right: String,
}

impl PairSpec {
    pub fn new(left: &str, right: &str) -> Self {
        PairSpec { left: left.into(), right: right.into() }
    }

    /// The equivalences checked by default.
    pub fn defaults() -> Vec<PairSpec> {
        vec![
            PairSpec::new("C:3:2", "D:4:3"),
            PairSpec::new("F:4:2", "D:5:3"),
            PairSpec::new("C:2:3", "A:3:4"),
            PairSpec::new("G:2:2", "C:3:2"),
            PairSpec::new("G:2:3", "C:3:3"),
        ]
    }
}

/// Bounded search; exhausted caps give an inconclusive row.
pub fn mutation_pair(pair: &PairSpec, config: SearchConfig) -> VerificationReport {
    let start = Instant::now();
    let row = VerificationReport::named(&format!("{}~{}", pair.left, pair.right), "mutation_equivalence", "mutation-equivalence")
        .metric("depth_cap", config.depth_cap)
        .metric("node_cap", config.node_cap);
    let result = (|| -> Result<VerificationReport> {
        let left = pair.left.parse::<QuiverName>()?.spec.build()?;
        let right = pair.right.parse::<QuiverName>()?.spec.build()?;
        Ok(match search_equivalence(&left, &right, config)? {
            SearchOutcome::Found(path) => {
                let verified = path.verify(&right)?;
                row.clone()
                    .metric("moves", path.moves.clone())
                    .metric("isomorphism", path.isomorphism.images().to_vec())
                    .metric("verified", verified)
                    .metric("runtime_ms", elapsed_ms(start))
                    .require(verified)
            }
            SearchOutcome::Exhausted { depth_left, depth_right, nodes_left, nodes_right } => row
                .clone()
                .metric("depth_left", depth_left)
                .metric("depth_right", depth_right)
                .metric("nodes_left", nodes_left)
                .metric("nodes_right", nodes_right)
                .metric("runtime_ms", elapsed_ms(start))
                .with_status(Status::Inconclusive),
        })
    })();
    result.unwrap_or_else(|e| error_row(row, e))
}
