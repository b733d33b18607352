//! Coefficient dynamics in the tropical semifield `Trop(y)`.
//!
//! A tropical monomial is an integer exponent vector over the initial
//! coefficients; multiplication adds vectors and `⊕` takes the
//! componentwise minimum.  The coefficient mutation at `k` is
//!
//! ```text
//! y'_k = y_k^{-1}
//! y'_j = y_j · y_k^{[B_kj]+} · (y_k ⊕ 1)^{-B_kj}     (j ≠ k)
//! ```

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::builders::{build, involutions, Family, Spec};
use crate::error::Error;
use crate::quiver::{Fill, Quiver};
use crate::schedule::{Schedule, Seed};

/// Exponent vector of a Laurent monomial in the initial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropMonomial {
    pub exps: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
    Unit,
    Mixed,
}

impl TropMonomial {
    pub fn unit(n: usize) -> Self {
        TropMonomial { exps: vec![0; n] }
    }

    /// The `i`-th generator.
    pub fn generator(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        TropMonomial { exps }
    }

    pub fn inverse(&self) -> Self {
        TropMonomial { exps: self.exps.iter().map(|e| -e).collect() }
    }

    pub fn sign(&self) -> Sign {
        sign_of(self)
    }

    /// Zero the exponents of every vertex in `kill`.
    pub fn specialize(&self, kill: &[usize]) -> TropMonomial {
        let mut exps = self.exps.clone();
        for &k in kill {
            exps[k] = 0;
        }
        TropMonomial { exps }
    }
}

/// Classify a monomial.
pub fn sign_of(m: &TropMonomial) -> Sign {
    let any_pos = m.exps.iter().any(|&e| e > 0);
    let any_neg = m.exps.iter().any(|&e| e < 0);
    match (any_pos, any_neg) {
        (false, false) => Sign::Unit,
        (true, false) => Sign::Positive,
        (false, true) => Sign::Negative,
        (true, true) => Sign::Mixed,
    }
}

/// Exchange matrix plus tropical coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropSeed {
    pub quiver: Quiver,
    pub y: Vec<TropMonomial>,
}

impl TropSeed {
    /// Initial seed: `y_i` is the `i`-th generator.
    pub fn initial(quiver: Quiver) -> Self {
        let n = quiver.n();
        let y = (0..n).map(|i| TropMonomial::generator(n, i)).collect();
        TropSeed { quiver, y }
    }

    /// Coefficient and matrix mutation at `k`.
    pub fn mutate_at(&mut self, k: usize) -> Result<(), Error> {
        let n = self.quiver.n();
        if k >= n {
            return Err(Error::VertexOutOfRange { vertex: k, n });
        }
        let yk = self.y[k].exps.clone();
        for j in 0..n {
            if j == k {
                continue;
            }
            let b = self.quiver.get(k, j);
            if b == 0 {
                continue;
            }
            for (e, &ek) in self.y[j].exps.iter_mut().zip(&yk) {
                *e += b.max(0) * ek - b * ek.min(0);
            }
        }
        for e in self.y[k].exps.iter_mut() {
            *e = -*e;
        }
        self.quiver.mutate_in_place(k)
    }
}

impl Seed for TropSeed {
    fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    fn mutate(&mut self, k: usize) {
        self.mutate_at(k).expect("scheduled vertex in range");
    }
}

/// The coefficient tuple at every time of a window.
#[derive(Clone, Debug)]
pub struct TropRun {
    pub spec: Spec,
    pub schedule: Schedule,
    /// First recorded time (numerator).
    pub u_min: i64,
    /// `coeffs[u - u_min][v]` is `[y_v(u)]_T`.
    pub coeffs: Vec<Vec<TropMonomial>>,
}

impl TropRun {
    pub fn u_max(&self) -> i64 {
        self.u_min + self.coeffs.len() as i64 - 1
    }

    pub fn n(&self) -> usize {
        self.schedule.base().n()
    }

    pub fn at(&self, v: usize, u_num: i64) -> Option<&TropMonomial> {
        if u_num < self.u_min {
            return None;
        }
        self.coeffs.get((u_num - self.u_min) as usize).map(|c| &c[v])
    }

    /// Monomials at the forward mutation points with `from <= u < to`.
    pub fn p_plus_points(&self, from: i64, to: i64) -> Vec<(usize, i64, &TropMonomial)> {
        let mut out = Vec::new();
        for u in from.max(self.u_min)..to.min(self.u_max() + 1) {
            for v in 0..self.n() {
                if self.schedule.is_p_plus(v, u) {
                    out.push((v, u, self.at(v, u).expect("in window")));
                }
            }
        }
        out
    }
}

/// Run the tropical coefficient dynamics over `from <= u <= to`
/// (numerators), starting from the initial seed at `u = 0`.
pub fn run_tropical(spec: &Spec, from: i64, to: i64) -> Result<TropRun, Error> {
    let schedule = Schedule::new(*spec);
    let (from, to) = (from.min(0), to.max(0));
    let mut forward = Vec::new();
    let mut seed = TropSeed::initial(build(spec));
    forward.push(seed.y.clone());
    for u in 0..to {
        schedule.advance(&mut seed, u)?;
        forward.push(seed.y.clone());
    }
    let mut backward = Vec::new();
    let mut seed = TropSeed::initial(build(spec));
    for u in (from + 1..=0).rev() {
        schedule.retreat(&mut seed, u)?;
        backward.push(seed.y.clone());
    }
    backward.reverse();
    backward.extend(forward);
    Ok(TropRun { spec: *spec, schedule, u_min: from, coeffs: backward })
}

/// Sign tallies over one parity class and one full period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCount {
    pub positive: i64,
    pub negative: i64,
    pub unit: i64,
    pub mixed: i64,
}

/// Count positive and negative monomials at the mutation points with
/// `0 <= u < 2(h∨ + ℓ)`.
pub fn count_signs(spec: &Spec) -> Result<SignCount, Error> {
    let full = 2 * spec.half_period_steps();
    let run = run_tropical(spec, 0, full)?;
    Ok(count_in(&run, 0, full))
}

pub fn count_in(run: &TropRun, from: i64, to: i64) -> SignCount {
    let mut c = SignCount { positive: 0, negative: 0, unit: 0, mixed: 0 };
    for (_, _, m) in run.p_plus_points(from, to) {
        match m.sign() {
            Sign::Positive => c.positive += 1,
            Sign::Negative => c.negative += 1,
            Sign::Unit => c.unit += 1,
            Sign::Mixed => c.mixed += 1,
        }
    }
    c
}

/// Outcome of a family of exact checks: how many comparisons were made
/// and a description of each failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, good: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !good {
            self.failures.push(describe());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// Half periodicity `[y_i(u + h∨ + ℓ)] = [y_{ω(i)}(u)]` and full
/// periodicity `[y_i(u + 2(h∨ + ℓ))] = [y_i(u)]`, for every vertex and
/// every `0 <= u <= 2(h∨ + ℓ)`.
pub fn check_tropical_periodicity(spec: &Spec) -> Result<CheckReport, Error> {
    let half = spec.half_period_steps();
    let run = run_tropical(spec, 0, 3 * half)?;
    let omega = involutions(spec).omega;
    let mut rep = CheckReport::default();
    for u in 0..=2 * half {
        for v in 0..run.n() {
            let w = omega.apply(v);
            if u + half <= run.u_max() {
                rep.record(run.at(v, u + half) == run.at(w, u), || {
                    format!("{spec}: half period fails at vertex {v}, u={u}/{}", spec.t())
                });
            }
            if u + 2 * half <= run.u_max() {
                rep.record(run.at(v, u + 2 * half) == run.at(v, u), || {
                    format!("{spec}: full period fails at vertex {v}, u={u}/{}", spec.t())
                });
            }
        }
    }
    Ok(rep)
}

/// Stated sign of `[y_v(u)]_T` at a mutation point with `-h∨ <= u < ℓ`.
pub fn expected_sign(spec: &Spec, v: usize, u_num: i64) -> Option<Sign> {
    let q = build(spec);
    let m = q.meta()[v];
    if u_num >= 0 {
        return Some(Sign::Positive);
    }
    let hv = spec.h_dual() as i64;
    let listed = |pos: &[i64], neg: &[i64]| {
        if pos.contains(&u_num) {
            Some(Sign::Positive)
        } else if neg.contains(&u_num) {
            Some(Sign::Negative)
        } else {
            None
        }
    };
    match spec.family {
        Family::C => {
            if m.fill == Fill::Circle || m.row % 2 == 0 {
                Some(Sign::Negative)
            } else if u_num == -hv || u_num == -hv - 1 {
                Some(Sign::Positive)
            } else {
                Some(Sign::Negative)
            }
        }
        Family::F4 => {
            if m.fill == Fill::Circle || m.row % 2 == 0 {
                Some(Sign::Negative)
            } else {
                listed(&[-4, -5, -9, -10, -14, -15], &[-1, -2, -3, -6, -7, -8, -11, -12, -13, -16, -17, -18])
            }
        }
        Family::G2 => {
            if m.fill == Fill::Circle || m.row % 3 == 0 {
                Some(Sign::Negative)
            } else {
                listed(&[-3, -4, -5, -8, -9, -10], &[-1, -2, -6, -7, -11, -12])
            }
        }
    }
}

/// The vertex `w` with `[y_v(ℓ)]_T = y_w^{-1}`.
pub fn boundary_at_level(spec: &Spec, q: &Quiver, v: usize) -> usize {
    let m = q.meta()[v];
    let l = spec.l;
    let (col, row) = match (spec.family, m.fill) {
        (Family::G2, Fill::Bullet) => (4, 3 * l - m.row),
        (_, Fill::Bullet) => (m.col, 2 * l - m.row),
        (_, Fill::Circle) => (m.col, l - m.row),
    };
    q.vertex(col, row).expect("boundary image exists")
}

/// The vertex `w` with `[y_v(-h∨)]_T = y_w^{-1}`.
pub fn boundary_at_minus_h_dual(spec: &Spec, q: &Quiver, v: usize) -> usize {
    let m = q.meta()[v];
    let col = match (spec.family, m.fill) {
        (Family::C, Fill::Circle) if spec.r % 2 == 0 => 2 * spec.r + 1 - m.col,
        (Family::F4, Fill::Circle) => 7 - m.col,
        _ => m.col,
    };
    q.vertex(col, m.row).expect("boundary image exists")
}

/// Check the region sign classification on `-h∨ <= u < ℓ` and the
/// boundary values at `u = ℓ` and `u = -h∨`.
pub fn check_sign_patterns(spec: &Spec) -> Result<CheckReport, Error> {
    let t = spec.t() as i64;
    let lo = -(spec.h_dual() as i64) * t;
    let hi = spec.l as i64 * t;
    let run = run_tropical(spec, lo, hi)?;
    let q = build(spec);
    let n = q.n();
    let mut rep = CheckReport::default();
    for (v, u, mono) in run.p_plus_points(lo, hi) {
        let exp = expected_sign(spec, v, u);
        let got = mono.sign();
        rep.record(exp == Some(got), || {
            let m = q.meta()[v];
            format!("{spec}: ({},{}) at u={u}/{t}: expected {exp:?}, got {got:?}", m.col, m.row)
        });
    }
    for v in 0..n {
        let w = boundary_at_level(spec, &q, v);
        let exp = TropMonomial::generator(n, w).inverse();
        rep.record(run.at(v, hi) == Some(&exp), || format!("{spec}: y_{v}(l) is not y_{w}^-1"));
        let w = boundary_at_minus_h_dual(spec, &q, v);
        let exp = TropMonomial::generator(n, w).inverse();
        rep.record(run.at(v, lo) == Some(&exp), || format!("{spec}: y_{v}(-h) is not y_{w}^-1"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::VertexMeta;

    #[test]
    fn rank_two_mutation_rule() {
        let meta = alloc::vec![VertexMeta::plain(1, 1), VertexMeta::plain(2, 1)];
        let q = Quiver::from_arrows(meta, &[(0, 1)]).unwrap();
        let mut s = TropSeed::initial(q);
        s.mutate_at(0).unwrap();
        assert_eq!(s.y[1].exps, alloc::vec![1, 1]);
        assert_eq!(s.y[0].exps, alloc::vec![-1, 0]);
    }

    #[test]
    fn sign_classes() {
        assert_eq!(sign_of(&TropMonomial::unit(3)), Sign::Unit);
        assert_eq!(sign_of(&TropMonomial { exps: alloc::vec![1, 0, 2] }), Sign::Positive);
        assert_eq!(sign_of(&TropMonomial { exps: alloc::vec![-1, 0] }), Sign::Negative);
        assert_eq!(sign_of(&TropMonomial { exps: alloc::vec![-1, 1] }), Sign::Mixed);
    }

    #[test]
    fn specialize_kills_listed_generators() {
        let m = TropMonomial { exps: alloc::vec![1, -2, 3] };
        assert_eq!(m.specialize(&[]), m);
        assert_eq!(m.specialize(&[0, 2]).exps, alloc::vec![0, -2, 0]);
        assert_eq!(m.specialize(&[0, 1, 2]).sign(), Sign::Unit);
    }
}
