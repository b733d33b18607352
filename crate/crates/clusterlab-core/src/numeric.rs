//! Cluster and coefficient dynamics over the positive reals, labelled by
//! the grid `(a, m, u)`, with residual checks of the T- and Y-systems and of
//! their periodicities.
//!
//! Mutation at `k` (with `⊕` the ordinary sum):
//!
//! ```text
//! x'_k x_k = (y_k Π x_i^{[B_ik]+} + Π x_i^{[-B_ik]+}) / (1 + y_k)
//! y'_k = 1 / y_k
//! y'_j = y_j · y_k^{[B_kj]+} · (1 + y_k)^{-B_kj}      (j ≠ k)
//! ```
//!
//! In the trivial coefficient mode the `x` rule is evaluated with every
//! coefficient equal to 1 in the one-element semifield:
//! `x'_k x_k = Π x_i^{[B_ik]+} + Π x_i^{[-B_ik]+}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::builders::{build, Family, Spec};
use crate::error::Error;
use crate::quiver::Quiver;
use crate::schedule::{Flavor, GridPoint, Schedule, Seed};

/// How coefficients enter the exchange relation for cluster variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientMode {
    Trivial,
    Tracked,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericSeed {
    pub quiver: Quiver,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub mode: CoefficientMode,
}

impl NumericSeed {
    pub fn new(quiver: Quiver, x: Vec<f64>, y: Vec<f64>, mode: CoefficientMode) -> Result<Self, Error> {
        let n = quiver.n();
        if x.len() != n || y.len() != n {
            return Err(Error::SizeMismatch { left: x.len().max(y.len()), right: n });
        }
        for (v, &val) in x.iter().chain(y.iter()).enumerate() {
            if !(val > 0.0 && val.is_finite()) {
                return Err(Error::NonPositive { vertex: v % n, value: val });
            }
        }
        Ok(NumericSeed { quiver, x, y, mode })
    }

    /// Cluster variable mutation at `k` (uses the current coefficients).
    pub fn x_mutate(&mut self, k: usize) -> Result<(), Error> {
        let n = self.quiver.n();
        if k >= n {
            return Err(Error::VertexOutOfRange { vertex: k, n });
        }
        let mut plus = 1.0;
        let mut minus = 1.0;
        for i in 0..n {
            let b = self.quiver.get(i, k);
            if b > 0 {
                plus *= libm::pow(self.x[i], b as f64);
            } else if b < 0 {
                minus *= libm::pow(self.x[i], -b as f64);
            }
        }
        let new = match self.mode {
            CoefficientMode::Trivial => (plus + minus) / self.x[k],
            CoefficientMode::Tracked => {
                let yk = self.y[k];
                (yk * plus + minus) / ((1.0 + yk) * self.x[k])
            }
        };
        if !(new > 0.0 && new.is_finite()) {
            return Err(Error::NonPositive { vertex: k, value: new });
        }
        self.x[k] = new;
        Ok(())
    }

    /// Coefficient mutation at `k` (uses the current matrix).
    pub fn y_mutate(&mut self, k: usize) -> Result<(), Error> {
        let n = self.quiver.n();
        if k >= n {
            return Err(Error::VertexOutOfRange { vertex: k, n });
        }
        let yk = self.y[k];
        for j in 0..n {
            let b = self.quiver.get(k, j);
            if j == k || b == 0 {
                continue;
            }
            let f = libm::pow(yk, b.max(0) as f64) * libm::pow(1.0 + yk, -b as f64);
            self.y[j] *= f;
            if !(self.y[j] > 0.0 && self.y[j].is_finite()) {
                return Err(Error::NonPositive { vertex: j, value: self.y[j] });
            }
        }
        self.y[k] = 1.0 / yk;
        Ok(())
    }

    /// Full seed mutation: cluster variable, coefficients, then matrix.
    pub fn mutate_at(&mut self, k: usize) -> Result<(), Error> {
        self.x_mutate(k)?;
        self.y_mutate(k)?;
        self.quiver.mutate_in_place(k)
    }
}

impl Seed for NumericSeed {
    fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    fn mutate(&mut self, k: usize) {
        self.mutate_at(k).expect("positivity is preserved by mutation");
    }
}

/// The exponent function `G`: the factors of the second monomial of the
/// T-relation centred at `c`, boundary factors (which equal 1) omitted.
pub fn g_exponents(spec: &Spec, c: &GridPoint) -> Vec<(GridPoint, u32)> {
    let (a, m, u) = (c.a, c.m, c.u_num);
    let r = spec.r;
    let mut out: Vec<(GridPoint, u32)> = Vec::new();
    let mut push = |b: usize, k: usize, v: i64| {
        if b == 0 || b > spec.r || k == 0 || k > spec.rows(b) {
            return;
        }
        let p = GridPoint::new(b, k, v);
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some(e) => e.1 += 1,
            None => out.push((p, 1)),
        }
    };
    match spec.family {
        Family::C => {
            if a + 2 <= r {
                push(a - 1, m, u);
                push(a + 1, m, u);
            } else if a + 1 == r {
                push(a - 1, m, u);
                let h = m / 2;
                if m % 2 == 0 {
                    push(r, h, u - 1);
                    push(r, h, u + 1);
                } else {
                    push(r, h, u);
                    push(r, h + 1, u);
                }
            } else {
                push(r - 1, 2 * m, u);
            }
        }
        Family::F4 => match a {
            1 => push(2, m, u),
            2 => {
                push(1, m, u);
                push(3, 2 * m, u);
            }
            3 => {
                let h = m / 2;
                if m % 2 == 0 {
                    push(2, h, u - 1);
                    push(2, h, u + 1);
                } else {
                    push(2, h, u);
                    push(2, h + 1, u);
                }
                push(4, m, u);
            }
            _ => push(3, m, u),
        },
        Family::G2 => {
            if a == 1 {
                push(2, 3 * m, u);
            } else {
                let q = m / 3;
                match m % 3 {
                    0 => {
                        push(1, q, u - 2);
                        push(1, q, u);
                        push(1, q, u + 2);
                    }
                    1 => {
                        push(1, q, u - 1);
                        push(1, q, u + 1);
                        push(1, q + 1, u);
                    }
                    _ => {
                        push(1, q, u);
                        push(1, q + 1, u - 1);
                        push(1, q + 1, u + 1);
                    }
                }
            }
        }
    }
    out
}

/// Transposed exponents `ᵗG(·; p)`: the centres whose `G` list contains
/// `p`, with multiplicity.
pub fn g_transposed(spec: &Spec, p: &GridPoint) -> Vec<(GridPoint, u32)> {
    let reach = spec.t() as i64;
    let mut out = Vec::new();
    for b in 1..=spec.r {
        for k in 1..=spec.rows(b) {
            for v in p.u_num - reach..=p.u_num + reach {
                let c = GridPoint::new(b, k, v);
                for (q, mult) in g_exponents(spec, &c) {
                    if q == *p {
                        out.push((c, mult));
                    }
                }
            }
        }
    }
    out
}

/// The `G` table over a window of centres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFunction {
    pub table: BTreeMap<GridPoint, Vec<(GridPoint, u32)>>,
}

impl GFunction {
    pub fn build(spec: &Spec, from: i64, to: i64) -> Self {
        let sched = Schedule::new(*spec);
        let table = sched
            .grid_points(from, to)
            .into_iter()
            .map(|c| {
                let g = g_exponents(spec, &c);
                (c, g)
            })
            .collect();
        GFunction { table }
    }

    /// `G(b,k,v; a,m,u)`: exponent of `T(p)` in the relation centred at `c`.
    pub fn get(&self, p: &GridPoint, c: &GridPoint) -> u32 {
        self.table
            .get(c)
            .and_then(|l| l.iter().find(|(q, _)| q == p).map(|e| e.1))
            .unwrap_or(0)
    }
}

/// Labelled values of one numeric run.
#[derive(Clone, Debug)]
pub struct NumericRun {
    pub spec: Spec,
    /// `T^(a)_m(u)` from cluster variables at mutation points.
    pub t: BTreeMap<GridPoint, f64>,
    /// `Y^(a)_m(u)` from coefficients at mutation points.
    pub y: BTreeMap<GridPoint, f64>,
    /// The first and one-past-last mutation times covered.
    pub from: i64,
    pub to: i64,
}

/// Drive the numeric seed over `0 <= u < to` from the given initial data,
/// recording labelled values at every mutation point.
pub fn run_numeric(spec: &Spec, x0: &[f64], y0: &[f64], mode: CoefficientMode, to: i64) -> Result<NumericRun, Error> {
    let sched = Schedule::new(*spec);
    let mut seed = NumericSeed::new(build(spec), x0.to_vec(), y0.to_vec(), mode)?;
    let mut t = BTreeMap::new();
    let mut y = BTreeMap::new();
    for u in 0..to {
        for v in sched.mutation_set(u) {
            t.insert(sched.unlabel_g(v, u)?, seed.x[v]);
            y.insert(sched.unlabel_g_prime(v, u)?, seed.y[v]);
        }
        for k in sched.mutation_set(u) {
            seed.mutate_at(k)?;
        }
        sched_check(&sched, &seed, u + 1)?;
    }
    Ok(NumericRun { spec: *spec, t, y, from: 0, to })
}

fn sched_check(sched: &Schedule, seed: &NumericSeed, u: i64) -> Result<(), Error> {
    if seed.quiver.same_arrows(&sched.expected_quiver(u)) {
        Ok(())
    } else {
        Err(Error::ScheduleMismatch { u_num: u, den: sched.den(), detail: format!("numeric run of {}", sched.spec()) })
    }
}

/// Relative discrepancy `|a - b| / max(|a|, |b|)`.
pub fn rel_err(a: f64, b: f64) -> f64 {
    let s = libm::fabs(a).max(libm::fabs(b));
    if s == 0.0 {
        0.0
    } else {
        libm::fabs(a - b) / s
    }
}

/// Summary of a family of floating point checks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResidualReport {
    pub checked: usize,
    pub max_rel: f64,
    pub worst: Option<GridPoint>,
}

impl ResidualReport {
    fn record(&mut self, p: GridPoint, err: f64) {
        self.checked += 1;
        if err > self.max_rel || err.is_nan() {
            self.max_rel = if err.is_nan() { f64::INFINITY } else { err };
            self.worst = Some(p);
        }
    }

    pub fn merge(&mut self, other: &ResidualReport) {
        self.checked += other.checked;
        if other.max_rel > self.max_rel {
            self.max_rel = other.max_rel;
            self.worst = other.worst;
        }
    }
}

fn boundary_one(spec: &Spec, map: &BTreeMap<GridPoint, f64>, a: usize, m: usize, u: i64) -> Option<f64> {
    if m == 0 || m == spec.rows(a) + 1 {
        Some(1.0)
    } else {
        map.get(&GridPoint::new(a, m, u)).copied()
    }
}

/// Residuals of the T-system at every `P'+` centre whose factors were all
/// recorded.  In tracked mode the coefficient-weighted exchange relation
/// `T T = (Y/(1+Y)) Π G + (1/(1+Y)) T_{m-1} T_{m+1}` is checked instead.
pub fn t_residuals(run: &NumericRun, mode: CoefficientMode) -> ResidualReport {
    let spec = &run.spec;
    let sched = Schedule::new(*spec);
    let mut rep = ResidualReport::default();
    for c in sched.grid_points(run.from, run.to) {
        if !sched.parity(&c, Flavor::PPrimePlus) {
            continue;
        }
        let s = sched.step_of(c.a);
        let (Some(lo), Some(hi)) = (run.t.get(&c.shifted(-s)), run.t.get(&c.shifted(s))) else {
            continue;
        };
        let (Some(dn), Some(up)) = (
            boundary_one(spec, &run.t, c.a, c.m - 1, c.u_num),
            boundary_one(spec, &run.t, c.a, c.m + 1, c.u_num),
        ) else {
            continue;
        };
        let mut prod = 1.0;
        let mut complete = true;
        for (p, mult) in g_exponents(spec, &c) {
            match run.t.get(&p) {
                Some(v) => prod *= libm::pow(*v, mult as f64),
                None => complete = false,
            }
        }
        if !complete {
            continue;
        }
        let rhs = match mode {
            CoefficientMode::Trivial => dn * up + prod,
            CoefficientMode::Tracked => {
                let Some(&yc) = run.y.get(&c) else { continue };
                (yc * prod + dn * up) / (1.0 + yc)
            }
        };
        rep.record(c, rel_err(lo * hi, rhs));
    }
    rep
}

fn inv_boundary(spec: &Spec, map: &BTreeMap<GridPoint, f64>, a: usize, m: usize, u: i64) -> Option<f64> {
    if m == 0 || m == spec.rows(a) + 1 {
        Some(0.0)
    } else {
        map.get(&GridPoint::new(a, m, u)).map(|v| 1.0 / v)
    }
}

/// Residuals of the Y-system at every `P+` centre whose factors were all
/// recorded, with the numerator built from the transposed `G`.
pub fn y_residuals(run: &NumericRun) -> ResidualReport {
    let spec = &run.spec;
    let sched = Schedule::new(*spec);
    let mut rep = ResidualReport::default();
    for c in sched.grid_points(run.from, run.to) {
        if !sched.parity(&c, Flavor::PPlus) {
            continue;
        }
        let s = sched.step_of(c.a);
        let (Some(lo), Some(hi)) = (run.y.get(&c.shifted(-s)), run.y.get(&c.shifted(s))) else {
            continue;
        };
        let (Some(dn), Some(up)) = (
            inv_boundary(spec, &run.y, c.a, c.m - 1, c.u_num),
            inv_boundary(spec, &run.y, c.a, c.m + 1, c.u_num),
        ) else {
            continue;
        };
        let mut num = 1.0;
        let mut complete = true;
        for (p, mult) in g_transposed(spec, &c) {
            match run.y.get(&p) {
                Some(v) => num *= libm::pow(1.0 + v, mult as f64),
                None => complete = false,
            }
        }
        if !complete {
            continue;
        }
        let rhs = num / ((1.0 + dn) * (1.0 + up));
        rep.record(c, rel_err(lo * hi, rhs));
    }
    rep
}

/// Periodicity errors: `T(u + 2P) = T(u)`, `Y(u + 2P) = Y(u)` and
/// `Y^(a)_m(u + P) = Y^(a)_{t_a ℓ - m}(u)` with `P = h∨ + ℓ`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PeriodicityReport {
    pub t_full: ResidualReport,
    pub y_full: ResidualReport,
    pub y_half: ResidualReport,
}

impl PeriodicityReport {
    pub fn max_rel(&self) -> f64 {
        self.t_full.max_rel.max(self.y_full.max_rel).max(self.y_half.max_rel)
    }
}

pub fn periodicity(run: &NumericRun) -> PeriodicityReport {
    let spec = &run.spec;
    let half = spec.half_period_steps();
    let mut rep = PeriodicityReport::default();
    for (p, v) in &run.t {
        if let Some(w) = run.t.get(&p.shifted(2 * half)) {
            rep.t_full.record(*p, rel_err(*v, *w));
        }
    }
    for (p, v) in &run.y {
        if let Some(w) = run.y.get(&p.shifted(2 * half)) {
            rep.y_full.record(*p, rel_err(*v, *w));
        }
        let flipped = GridPoint::new(p.a, spec.rows(p.a) + 1 - p.m, p.u_num);
        if let Some(w) = run.y.get(&flipped.shifted(half)) {
            rep.y_half.record(*p, rel_err(*v, *w));
        }
    }
    rep
}

/// Coefficient dynamics in logarithmic coordinates, `z = ln y`, along the
/// schedule; `(1 + y)` is evaluated as `exp(softplus(z))`.  Returns
/// `z_v(u)` at every forward mutation point with `0 <= u < to`.
pub fn run_log_y(spec: &Spec, z0: &[f64], to: i64) -> Result<BTreeMap<(usize, i64), f64>, Error> {
    let sched = Schedule::new(*spec);
    let mut q = build(spec);
    let n = q.n();
    if z0.len() != n {
        return Err(Error::SizeMismatch { left: z0.len(), right: n });
    }
    let mut z = z0.to_vec();
    let mut out = BTreeMap::new();
    for u in 0..to {
        for k in sched.mutation_set(u) {
            out.insert((k, u), z[k]);
        }
        for k in sched.mutation_set(u) {
            let zk = z[k];
            let sp = softplus(zk);
            for j in 0..n {
                let b = q.get(k, j);
                if j != k && b != 0 {
                    z[j] += b.max(0) as f64 * zk - b as f64 * sp;
                }
            }
            z[k] = -zk;
            q.mutate_in_place(k)?;
        }
    }
    Ok(out)
}

/// `ln(1 + e^z)` without overflow.
pub fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + libm::log1p(libm::exp(-z))
    } else {
        libm::log1p(libm::exp(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_examples() {
        let c3 = Spec::c(3, 2).unwrap();
        assert_eq!(g_exponents(&c3, &GridPoint::new(3, 1, 0)), alloc::vec![(GridPoint::new(2, 2, 0), 1)]);
        let g2 = Spec::g2(2).unwrap();
        // T^(2)_1: m = 0 factors drop, leaving T^(1)_1(u)
        assert_eq!(g_exponents(&g2, &GridPoint::new(2, 1, 0)), alloc::vec![(GridPoint::new(1, 1, 0), 1)]);
    }

    #[test]
    fn double_mutation_restores_seed() {
        let spec = Spec::c(2, 2).unwrap();
        let q = build(&spec);
        let n = q.n();
        let x: Vec<f64> = (0..n).map(|i| 0.7 + 0.1 * i as f64).collect();
        let y: Vec<f64> = (0..n).map(|i| 1.3 - 0.1 * i as f64).collect();
        let s0 = NumericSeed::new(q, x, y, CoefficientMode::Tracked).unwrap();
        for k in 0..n {
            let mut s = s0.clone();
            s.mutate_at(k).unwrap();
            s.mutate_at(k).unwrap();
            for v in 0..n {
                assert!(rel_err(s.x[v], s0.x[v]) < 1e-12);
                assert!(rel_err(s.y[v], s0.y[v]) < 1e-12);
            }
            assert_eq!(s.quiver, s0.quiver);
        }
    }

    #[test]
    fn non_positive_initial_data_rejected() {
        let spec = Spec::c(2, 2).unwrap();
        let q = build(&spec);
        let n = q.n();
        assert!(NumericSeed::new(q, alloc::vec![1.0; n], alloc::vec![-1.0; n], CoefficientMode::Tracked).is_err());
    }

    #[test]
    fn softplus_matches_definition() {
        for z in [-30.0, -1.0, 0.0, 2.5, 40.0] {
            assert!((softplus(z) - libm::log(1.0 + libm::exp(z))).abs() < 1e-12);
        }
    }
}
