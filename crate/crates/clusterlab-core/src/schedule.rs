//! Time-indexed mutation sequences, parity bookkeeping and the labelling
//! bijections between grid points `(a, m, u)` and mutation points `(i, u)`.
//!
//! Time `u` is always an exact integer numerator over the family
//! denominator `t` (2 for `C`, `F4`; 3 for `G2`).  The seed at time `u`
//! becomes the seed at time `u + 1/t` by mutating at every vertex that
//! satisfies the forward parity condition `p+` at `u`.
//!
//! * `C`, `F4` (period 2 in `u`, four steps):
//!   `u ≡ 0`: circles `+` and bullets `+`; `u ≡ 1/2, 3/2`: bullets `-`;
//!   `u ≡ 1`: circles `-` and bullets `+`.  The quiver runs through
//!   `Q, Q^op, r(Q), r(Q)^op`.
//! * `G2` (period 2 in `u`, six steps): at `u ≡ k/3` bullets `+` for even
//!   `k`, bullets `-` for odd `k`, and circles of region `k + 1`.  The
//!   quiver runs through `Q, ν(23)(Q)^op, ν(312)(Q), ν(13)(Q)^op,
//!   ν(231)(Q), ν(12)(Q)^op` with `ν` given in one-line notation.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::builders::{build, involutions, nu, Family, Spec};
use crate::error::Error;
use crate::quiver::{Fill, Quiver, Tag, VertexMeta, VertexPermutation};

/// A point `(a, m, u)` of the index set, `u = u_num / t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint {
    pub a: usize,
    pub m: usize,
    pub u_num: i64,
}

impl GridPoint {
    pub fn new(a: usize, m: usize, u_num: i64) -> Self {
        GridPoint { a, m, u_num }
    }

    /// Shift in time by `k` steps of `1/t`.
    pub fn shifted(&self, k: i64) -> Self {
        GridPoint { u_num: self.u_num + k, ..*self }
    }
}

/// Display helper for a time numerator over `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Time {
    pub num: i64,
    pub den: i64,
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = gcd(self.num.unsigned_abs(), self.den.unsigned_abs()).max(1) as i64;
        let (n, d) = (self.num / g, self.den / g);
        if d == 1 {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Which parity class to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    PPlus,
    PMinus,
    PPrimePlus,
    PPrimeMinus,
}

/// A relabelling followed optionally by reversing all arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    pub perm: VertexPermutation,
    pub opposite: bool,
}

impl Transform {
    pub fn identity(n: usize) -> Self {
        Transform { perm: VertexPermutation::identity(n), opposite: false }
    }

    pub fn apply(&self, q: &Quiver) -> Quiver {
        let p = q.apply_perm(&self.perm);
        if self.opposite {
            p.opposite()
        } else {
            p
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Transform) -> Transform {
        Transform {
            perm: self.perm.compose(&other.perm),
            opposite: self.opposite != other.opposite,
        }
    }

    pub fn inverse(&self) -> Transform {
        Transform { perm: self.perm.inverse(), opposite: self.opposite }
    }
}

/// One composite mutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleStep {
    pub u_from: i64,
    pub u_to: i64,
    pub vertex_set: Vec<usize>,
    /// Quiver after the step = `expected_transform(quiver before the step)`.
    pub expected_transform: Transform,
}

/// Anything carrying an exchange matrix that can be mutated.
pub trait Seed {
    fn quiver(&self) -> &Quiver;
    fn mutate(&mut self, k: usize);
}

impl Seed for Quiver {
    fn quiver(&self) -> &Quiver {
        self
    }

    fn mutate(&mut self, k: usize) {
        self.mutate_in_place(k).expect("scheduled vertex in range");
    }
}

/// One-line notations of the `G2` relabellings along a period.
pub const G2_CYCLE: [([usize; 3], bool); 6] = [
    ([1, 2, 3], false),
    ([1, 3, 2], true),
    ([3, 1, 2], false),
    ([3, 2, 1], true),
    ([2, 3, 1], false),
    ([2, 1, 3], true),
];

/// The mutation schedule of one family quiver.
#[derive(Clone, Debug)]
pub struct Schedule {
    spec: Spec,
    base: Quiver,
    /// Transform giving the quiver at each phase from the base quiver.
    phases: Vec<Transform>,
}

impl Schedule {
    pub fn new(spec: Spec) -> Self {
        let base = build(&spec);
        let n = base.n();
        let phases = match spec.family {
            Family::C | Family::F4 => {
                let r = involutions(&spec).r.expect("reflection exists for C and F4");
                let id = VertexPermutation::identity(n);
                alloc::vec![
                    Transform { perm: id.clone(), opposite: false },
                    Transform { perm: id, opposite: true },
                    Transform { perm: r.clone(), opposite: false },
                    Transform { perm: r, opposite: true },
                ]
            }
            Family::G2 => G2_CYCLE
                .iter()
                .map(|&(s, op)| Transform { perm: nu(&spec, s).expect("G2"), opposite: op })
                .collect(),
        };
        Schedule { spec, base, phases }
    }

    pub fn spec(&self) -> &Spec {
        &self.spec
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn den(&self) -> i64 {
        self.spec.t() as i64
    }

    /// Number of steps in one period of the quiver cycle.
    pub fn period_steps(&self) -> i64 {
        self.phases.len() as i64
    }

    fn phase(&self, u_num: i64) -> usize {
        u_num.rem_euclid(self.period_steps()) as usize
    }

    /// Is vertex `v` a forward mutation point at time `u`?
    pub fn is_p_plus(&self, v: usize, u_num: i64) -> bool {
        p_plus_meta(self.spec.family, &self.base.meta()[v], u_num)
    }

    /// Is `v` a backward mutation point at `u` (forward point at `u - 1/t`)?
    pub fn is_p_minus(&self, v: usize, u_num: i64) -> bool {
        self.is_p_plus(v, u_num - 1)
    }

    /// Vertices mutated on the way from `u` to `u + 1/t`.
    pub fn mutation_set(&self, u_num: i64) -> Vec<usize> {
        (0..self.base.n()).filter(|&v| self.is_p_plus(v, u_num)).collect()
    }

    /// Quiver expected at time `u`, as a transform of the base quiver.
    pub fn expected_at(&self, u_num: i64) -> &Transform {
        &self.phases[self.phase(u_num)]
    }

    pub fn expected_quiver(&self, u_num: i64) -> Quiver {
        self.expected_at(u_num).apply(&self.base)
    }

    fn check(&self, q: &Quiver, u_num: i64) -> Result<(), Error> {
        if !q.is_simply_laced() {
            return Err(self.mismatch(u_num, "multiple arrows appeared"));
        }
        let exp = self.expected_at(u_num);
        if !q.matches_transform(&self.base, &exp.perm, exp.opposite) {
            return Err(self.mismatch(u_num, "quiver differs from the expected transform"));
        }
        Ok(())
    }

    fn mismatch(&self, u_num: i64, what: &str) -> Error {
        Error::ScheduleMismatch { u_num, den: self.den(), detail: format!("{} ({})", what, self.spec) }
    }

    /// Move a seed at time `u` to time `u + 1/t`, asserting the quiver.
    pub fn advance<S: Seed>(&self, seed: &mut S, u_num: i64) -> Result<(), Error> {
        for k in self.mutation_set(u_num) {
            seed.mutate(k);
        }
        self.check(seed.quiver(), u_num + 1)
    }

    /// Move a seed at time `u` to time `u - 1/t`, asserting the quiver.
    pub fn retreat<S: Seed>(&self, seed: &mut S, u_num: i64) -> Result<(), Error> {
        for k in self.mutation_set(u_num - 1) {
            seed.mutate(k);
        }
        self.check(seed.quiver(), u_num - 1)
    }

    /// The step list for `from <= u < to`, validated by driving the quiver
    /// from time 0 to `from` and then across the window.
    pub fn steps(&self, from: i64, to: i64) -> Result<Vec<ScheduleStep>, Error> {
        let mut q = self.base.clone();
        let mut u = 0;
        while u < from {
            self.advance(&mut q, u)?;
            u += 1;
        }
        while u > from {
            self.retreat(&mut q, u)?;
            u -= 1;
        }
        let mut out = Vec::new();
        for u in from..to {
            let set = self.mutation_set(u);
            self.advance(&mut q, u)?;
            let rel = self.expected_at(u + 1).compose(&self.expected_at(u).inverse());
            out.push(ScheduleStep { u_from: u, u_to: u + 1, vertex_set: set, expected_transform: rel });
        }
        Ok(out)
    }

    /// Parity class membership of a grid point.
    pub fn parity(&self, p: &GridPoint, flavor: Flavor) -> bool {
        parity(&self.spec, p, flavor)
    }

    /// `g`: a `P+` grid point `(a, m, u)` to the mutation point
    /// `(vertex, u + 1/t_a)`.
    pub fn label_g(&self, p: &GridPoint) -> Result<(usize, i64), Error> {
        if !self.parity(p, Flavor::PPlus) {
            return Err(Error::Parity(format!("{p:?} is not P+ for {}", self.spec)));
        }
        self.label_at(p.a, p.m, p.u_num + self.step_of(p.a))
    }

    /// `g'`: a `P'+` grid point `(a, m, u)` to the mutation point `(vertex, u)`.
    pub fn label_g_prime(&self, p: &GridPoint) -> Result<(usize, i64), Error> {
        if !self.parity(p, Flavor::PPrimePlus) {
            return Err(Error::Parity(format!("{p:?} is not P'+ for {}", self.spec)));
        }
        self.label_at(p.a, p.m, p.u_num)
    }

    /// Inverse of `g`: mutation point to the `P+` grid point.
    pub fn unlabel_g(&self, v: usize, u_num: i64) -> Result<GridPoint, Error> {
        let p = self.unlabel_g_prime(v, u_num)?;
        Ok(p.shifted(-self.step_of(p.a)))
    }

    /// Inverse of `g'`.
    pub fn unlabel_g_prime(&self, v: usize, u_num: i64) -> Result<GridPoint, Error> {
        if !self.is_p_plus(v, u_num) {
            return Err(Error::Parity(format!("vertex {v} at u={u_num}/{} is not p+", self.den())));
        }
        let m = self.base.meta()[v];
        Ok(GridPoint::new(self.spec.a_of_col(m.col), m.row, u_num))
    }

    /// `t / t_a`: the time step `1/t_a` in numerator units.
    pub fn step_of(&self, a: usize) -> i64 {
        (self.spec.t() / self.spec.t_a(a)) as i64
    }

    fn label_at(&self, a: usize, m: usize, u: i64) -> Result<(usize, i64), Error> {
        let s = &self.spec;
        let col = match s.family {
            Family::C => {
                if a < s.r {
                    a
                } else if (m as i64 + u / 2).rem_euclid(2) == 0 {
                    s.r + 1
                } else {
                    s.r
                }
            }
            Family::F4 => {
                if a >= 3 || (a as i64 + m as i64 + u / 2).rem_euclid(2) == 0 {
                    a
                } else {
                    7 - a
                }
            }
            Family::G2 => {
                if a == 2 {
                    4
                } else {
                    match (3 * m as i64 + u).rem_euclid(6) {
                        0 => 1,
                        4 => 2,
                        2 => 3,
                        _ => return Err(Error::Parity(format!("G2 a=1 m={m} u={u}/3 has odd class"))),
                    }
                }
            }
        };
        let v = self
            .base
            .vertex(col, m)
            .ok_or_else(|| Error::Parity(format!("no vertex ({col},{m}) in {}", s)))?;
        Ok((v, u))
    }

    /// All grid points `(a, m, u)` with `from <= u_num < to`.
    pub fn grid_points(&self, from: i64, to: i64) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for a in 1..=self.spec.r {
            for m in 1..=self.spec.rows(a) {
                for u in from..to {
                    out.push(GridPoint::new(a, m, u));
                }
            }
        }
        out
    }
}

/// Forward parity `p+` from the vertex record and time.
fn p_plus_meta(family: Family, m: &VertexMeta, u_num: i64) -> bool {
    match family {
        Family::C | Family::F4 => {
            let ph = u_num.rem_euclid(4);
            match (m.fill, m.tag) {
                (Fill::Bullet, Tag::Plus) => ph % 2 == 0,
                (Fill::Bullet, Tag::Minus) => ph % 2 == 1,
                (Fill::Circle, Tag::Plus) => ph == 0,
                (Fill::Circle, Tag::Minus) => ph == 2,
                _ => false,
            }
        }
        Family::G2 => {
            let ph = u_num.rem_euclid(6);
            match (m.fill, m.tag) {
                (Fill::Bullet, Tag::Plus) => ph % 2 == 0,
                (Fill::Bullet, Tag::Minus) => ph % 2 == 1,
                (Fill::Circle, Tag::Region(k)) => ph == k as i64 - 1,
                _ => false,
            }
        }
    }
}

/// Parity conditions on grid points.
pub fn parity(spec: &Spec, p: &GridPoint, flavor: Flavor) -> bool {
    let (a, m, u) = (p.a as i64, p.m as i64, p.u_num);
    let (plus, prime_plus) = match spec.family {
        Family::C => {
            if p.a == spec.r {
                (u % 2 == 0, u % 2 == 0)
            } else {
                let s = (spec.r as i64 + a + m + u).rem_euclid(2);
                (s == 1, s == 0)
            }
        }
        Family::F4 => {
            if p.a <= 2 {
                (u % 2 == 0, u % 2 == 0)
            } else {
                let s = (a + m + u).rem_euclid(2);
                (s == 1, s == 0)
            }
        }
        Family::G2 => {
            let s = (a + m + u).rem_euclid(2);
            (s == 0, s == 1)
        }
    };
    match flavor {
        Flavor::PPlus => plus,
        Flavor::PMinus => !plus,
        Flavor::PPrimePlus => prime_plus,
        Flavor::PPrimeMinus => !prime_plus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_parity_example() {
        let s = Spec::g2(2).unwrap();
        assert!(parity(&s, &GridPoint::new(1, 1, 0), Flavor::PPlus));
    }

    #[test]
    fn time_display() {
        assert_eq!(alloc::format!("{}", Time { num: -4, den: 2 }), "-2");
        assert_eq!(alloc::format!("{}", Time { num: 5, den: 3 }), "5/3");
    }
}
