//! The declarative suite: a JSON configuration in, report rows out.
//!
//! Cases run concurrently on a rayon pool whose size is taken from the
//! `CLUSTERLAB_THREADS` environment variable (all cores when unset).
//! Rows are assembled in configuration order, so every field except
//! `runtime_ms` is a function of the configuration alone.

use anyhow::{Context, Result};
use clusterlab_core::mutclass::SearchConfig;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::case::CaseId;
use crate::checks::{self, PairSpec, Tolerances};
use crate::report::VerificationReport;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "CLUSTERLAB_THREADS";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub cases: Vec<CaseId>,
    /// Seeds of the random positive initial data.
    pub seeds: Vec<u64>,
    pub tolerances: Tolerances,
    /// Check names to run; empty means all.
    pub checks: Vec<String>,
    /// Equivalence searches; when absent the default pairs run whenever
    /// the case list is non-empty.
    pub mutation_pairs: Option<Vec<PairSpec>>,
    pub depth_cap: usize,
    pub node_cap: usize,
    /// Start every schedule from the opposite quiver (negative control).
    pub flip_arrows: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let search = SearchConfig::default();
        SuiteConfig {
            cases: CaseId::defaults(),
            seeds: vec![1, 2, 3, 4, 5],
            tolerances: Tolerances::default(),
            checks: Vec::new(),
            mutation_pairs: None,
            depth_cap: search.depth_cap,
            node_cap: search.node_cap,
            flip_arrows: false,
        }
    }
}

/// Every check name, in row order within a case.
pub const CHECKS: [&str; 12] = [
    "schedule",
    "sign_counts",
    "point_count",
    "level_rank_duality",
    "tropical_periodicity",
    "sign_patterns",
    "tvectors",
    "orbits",
    "numeric",
    "constant_di",
    "functional_di",
    "mutation_equivalence",
];

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: SuiteConfig = serde_json::from_str(text).context("parsing suite configuration")?;
        for c in &config.checks {
            anyhow::ensure!(CHECKS.contains(&c.as_str()), "unknown check {c:?}");
        }
        Ok(config)
    }

    pub fn pairs(&self) -> Vec<PairSpec> {
        match &self.mutation_pairs {
            Some(p) => p.clone(),
            None if self.cases.is_empty() => Vec::new(),
            None => PairSpec::defaults(),
        }
    }

    fn wants(&self, check: &str) -> bool {
        self.checks.is_empty() || self.checks.iter().any(|c| c == check)
    }
}

fn run_case(config: &SuiteConfig, case: &CaseId) -> Vec<VerificationReport> {
    let tol = &config.tolerances;
    let mut rows = Vec::new();
    let mut push = |name: &str, f: &dyn Fn() -> Option<VerificationReport>| {
        if config.wants(name) {
            rows.extend(f());
        }
    };
    push("schedule", &|| Some(checks::schedule(case, config.flip_arrows)));
    push("sign_counts", &|| Some(checks::sign_counts(case)));
    push("point_count", &|| Some(checks::point_count(case)));
    push("level_rank_duality", &|| checks::level_rank_duality(case));
    push("tropical_periodicity", &|| Some(checks::tropical_periodicity(case)));
    push("sign_patterns", &|| Some(checks::sign_patterns(case)));
    push("tvectors", &|| checks::tvectors(case));
    push("orbits", &|| Some(checks::orbits(case)));
    push("numeric", &|| Some(checks::numeric(case, &config.seeds, tol)));
    push("constant_di", &|| Some(checks::constant_di(case, tol)));
    push("functional_di", &|| Some(checks::functional_di(case, &config.seeds, tol)));
    rows
}

/// Run every configured check and return the rows: cases in order, then
/// the mutation pairs.
pub fn run_suite(config: &SuiteConfig) -> Vec<VerificationReport> {
    let search = SearchConfig { depth_cap: config.depth_cap, node_cap: config.node_cap };
    let work = || {
        let mut rows: Vec<VerificationReport> =
            config.cases.par_iter().map(|case| run_case(config, case)).collect::<Vec<_>>().into_iter().flatten().collect();
        if config.wants("mutation_equivalence") {
            rows.extend(config.pairs().par_iter().map(|p| checks::mutation_pair(p, search)).collect::<Vec<_>>());
        }
        rows
    };
    match build_pool() {
        Some(pool) => pool.install(work),
        None => work(),
    }
}

fn build_pool() -> Option<rayon::ThreadPool> {
    let threads: usize = std::env::var(THREADS_ENV).ok()?.trim().parse().ok()?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().ok()
}
