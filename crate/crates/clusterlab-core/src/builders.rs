//! Constructors for the quivers `Q_ℓ(C_r)`, `Q_ℓ(F_4)`, `Q_ℓ(G_2)`, the
//! square products `X_r □ A_{ℓ-1}`, and their symmetry involutions.
//!
//! The pictures are encoded generatively.  Vertices are listed column by
//! column, rows increasing, and carry `(column, row, fill, tag)` metadata.
//!
//! * `C_r`: bullet columns `1..=r-1` with rows `1..=2ℓ-1`, sign `+` iff
//!   `r+i+i'` is even; circle columns `r` (sign `+` iff `i'` odd) and `r+1`
//!   (sign `+` iff `i'` even) with rows `1..=ℓ-1`.
//! * `F_4`: bullet columns 3, 4 with rows `1..=2ℓ-1`, sign `+` iff `i+i'` is
//!   even; circle columns 1, 5 (`+` iff `i'` odd) and 2, 6 (`+` iff `i'`
//!   even) with rows `1..=ℓ-1`.
//! * `G_2`: circle columns 1, 2, 3 with rows `1..=ℓ-1` tagged by region
//!   numerals; bullet column 4 with rows `1..=3ℓ-1`, sign `+` iff odd.
//!
//! Within a bullet grid horizontal arrows run from `-` to `+` and vertical
//! arrows from `+` to `-`.  The circle/bullet links are described at each
//! builder.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dynkin::Dynkin;
use crate::error::Error;
use crate::quiver::{Fill, Quiver, Tag, VertexMeta, VertexPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    C,
    F4,
    G2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::C => "C",
            Family::F4 => "F4",
            Family::G2 => "G2",
        })
    }
}

/// Lie-theoretic constants of a non-simply-laced type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub h: usize,
    pub h_dual: usize,
    pub t: usize,
    /// `t_a` for `a = 1..=rank`, stored at index `a - 1`.
    pub t_a: Vec<usize>,
}

/// A cluster family at a given rank and level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spec {
    pub family: Family,
    pub r: usize,
    pub l: usize,
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::C => write!(f, "C{} l={}", self.r, self.l),
            _ => write!(f, "{} l={}", self.family, self.l),
        }
    }
}

impl Spec {
    pub fn new(family: Family, r: usize, l: usize) -> Result<Self, Error> {
        if l < 2 {
            return Err(Error::InvalidSpec(format!("level must be at least 2, got {l}")));
        }
        let ok = match family {
            Family::C => r >= 2,
            Family::F4 => r == 4,
            Family::G2 => r == 2,
        };
        if !ok {
            return Err(Error::InvalidSpec(format!("rank {r} is not valid for {family}")));
        }
        Ok(Spec { family, r, l })
    }

    pub fn c(r: usize, l: usize) -> Result<Self, Error> {
        Spec::new(Family::C, r, l)
    }

    pub fn f4(l: usize) -> Result<Self, Error> {
        Spec::new(Family::F4, 4, l)
    }

    pub fn g2(l: usize) -> Result<Self, Error> {
        Spec::new(Family::G2, 2, l)
    }

    pub fn cartan(&self) -> CartanData {
        cartan_data(self.family, self.r)
    }

    pub fn h(&self) -> usize {
        self.cartan().h
    }

    pub fn h_dual(&self) -> usize {
        self.cartan().h_dual
    }

    /// The denominator `t` of the time lattice `(1/t)Z`.
    pub fn t(&self) -> usize {
        match self.family {
            Family::C | Family::F4 => 2,
            Family::G2 => 3,
        }
    }

    /// `t_a` for `1 <= a <= r`.
    pub fn t_a(&self, a: usize) -> usize {
        self.cartan().t_a[a - 1]
    }

    /// Number of rows `m = 1..=t_a ℓ - 1` for component `a`.
    pub fn rows(&self, a: usize) -> usize {
        self.t_a(a) * self.l - 1
    }

    /// `h∨ + ℓ`, the half period in units of `u`.
    pub fn half_period(&self) -> usize {
        self.h_dual() + self.l
    }

    /// Half period in time steps (numerator units of `1/t`).
    pub fn half_period_steps(&self) -> i64 {
        (self.half_period() * self.t()) as i64
    }

    /// Closed-form counts `(N+, N-)` of positive and negative tropical
    /// monomials over one parity class and one full period.
    pub fn sign_count_formula(&self) -> (i64, i64) {
        let (r, l) = (self.r as i64, self.l as i64);
        match self.family {
            Family::C => (2 * l * (2 * r * l - l - 1), 2 * r * (2 * l * r - r - 1)),
            Family::F4 => (4 * l * (3 * l + 1), 24 * (4 * l - 3)),
            Family::G2 => (6 * l * (2 * l + 1), 12 * (3 * l - 2)),
        }
    }

    /// `t (h∨ + ℓ) ((Σ t_a) ℓ - r)`: the number of mutation points in one
    /// parity class over one full period.
    pub fn point_count_formula(&self) -> i64 {
        let cd = self.cartan();
        let sum_t: usize = cd.t_a.iter().sum();
        (cd.t * (cd.h_dual + self.l)) as i64 * ((sum_t * self.l) as i64 - self.r as i64)
    }

    /// Component `a` labelling the variables carried by column `col`.
    pub fn a_of_col(&self, col: usize) -> usize {
        match self.family {
            Family::C => col.min(self.r),
            Family::F4 => match col {
                5 | 6 => 7 - col,
                _ => col,
            },
            Family::G2 => {
                if col == 4 {
                    2
                } else {
                    1
                }
            }
        }
    }

    /// Expected vertex count of `Q_ℓ`.
    pub fn vertex_count(&self) -> usize {
        let l = self.l;
        match self.family {
            Family::C => (self.r - 1) * (2 * l - 1) + 2 * (l - 1),
            Family::F4 => 2 * (2 * l - 1) + 4 * (l - 1),
            Family::G2 => 3 * (l - 1) + (3 * l - 1),
        }
    }
}

pub fn cartan_data(family: Family, r: usize) -> CartanData {
    match family {
        Family::C => {
            let mut t_a = vec![2; r];
            t_a[r - 1] = 1;
            CartanData { h: 2 * r, h_dual: r + 1, t: 2, t_a }
        }
        Family::F4 => CartanData { h: 12, h_dual: 9, t: 2, t_a: vec![1, 1, 2, 2] },
        Family::G2 => CartanData { h: 6, h_dual: 4, t: 3, t_a: vec![1, 3] },
    }
}

/// Everything `build` can construct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverFamilySpec {
    Cluster(Spec),
    /// `X □ A_{ℓ-1}` for a simply laced `X`.
    Square { dynkin: Dynkin, l: usize },
}

impl QuiverFamilySpec {
    pub fn build(&self) -> Result<Quiver, Error> {
        match self {
            QuiverFamilySpec::Cluster(s) => Ok(build(s)),
            QuiverFamilySpec::Square { dynkin, l } => square_product(dynkin, *l),
        }
    }
}

fn sign_tag(plus: bool) -> Tag {
    if plus {
        Tag::Plus
    } else {
        Tag::Minus
    }
}

fn is_plus(m: &VertexMeta) -> bool {
    m.tag == Tag::Plus
}

/// Build `Q_ℓ(X_r)` for a validated spec.
pub fn build(spec: &Spec) -> Quiver {
    let q = match spec.family {
        Family::C => build_c(spec.r, spec.l),
        Family::F4 => build_f4(spec.l),
        Family::G2 => build_g2(spec.l),
    };
    debug_assert_eq!(q.n(), spec.vertex_count());
    q
}

/// Bullet grid arrows between adjacent columns `cols` over their common rows.
fn grid_arrows(q: &mut Quiver, cols: &[usize]) {
    let meta = q.meta().to_vec();
    let find = |c: usize, r: usize| meta.iter().position(|m| m.col == c && m.row == r);
    for (idx, m) in meta.iter().enumerate() {
        if !cols.contains(&m.col) {
            continue;
        }
        // vertical: + -> -
        if let Some(up) = find(m.col, m.row + 1) {
            if is_plus(m) {
                q.add_arrow(idx, up).expect("valid");
            } else {
                q.add_arrow(up, idx).expect("valid");
            }
        }
        // horizontal: - -> +
        let right = cols.iter().position(|&c| c == m.col).and_then(|p| cols.get(p + 1));
        if let Some(&rc) = right {
            if let Some(nb) = find(rc, m.row) {
                if is_plus(m) {
                    q.add_arrow(nb, idx).expect("valid");
                } else {
                    q.add_arrow(idx, nb).expect("valid");
                }
            }
        }
    }
}

/// Circle column `col` attached to bullet column `bcol`: the bullet at
/// `2i'` points to the circle `(col, i')`, and each `-` circle points to the
/// bullets at rows `2i' ± 1`.
fn attach_circles(q: &mut Quiver, col: usize, bcol: usize, l: usize) {
    for ip in 1..l {
        let c = q.vertex(col, ip).expect("circle exists");
        let mid = q.vertex(bcol, 2 * ip).expect("bullet exists");
        q.add_arrow(mid, c).expect("valid");
        if q.meta()[c].tag == Tag::Minus {
            for row in [2 * ip - 1, 2 * ip + 1] {
                let b = q.vertex(bcol, row).expect("bullet exists");
                q.add_arrow(c, b).expect("valid");
            }
        }
    }
}

/// Vertical arrows `+ -> -` inside a circle column.
fn circle_verticals(q: &mut Quiver, col: usize, l: usize) {
    for ip in 1..l.saturating_sub(1) {
        let a = q.vertex(col, ip).expect("circle exists");
        let b = q.vertex(col, ip + 1).expect("circle exists");
        if q.meta()[a].tag == Tag::Plus {
            q.add_arrow(a, b).expect("valid");
        } else {
            q.add_arrow(b, a).expect("valid");
        }
    }
}

fn build_c(r: usize, l: usize) -> Quiver {
    let mut meta = Vec::new();
    for i in 1..r {
        for ip in 1..2 * l {
            meta.push(VertexMeta::new(i, ip, Fill::Bullet, sign_tag((r + i + ip) % 2 == 0)));
        }
    }
    for ip in 1..l {
        meta.push(VertexMeta::new(r, ip, Fill::Circle, sign_tag(ip % 2 == 1)));
    }
    for ip in 1..l {
        meta.push(VertexMeta::new(r + 1, ip, Fill::Circle, sign_tag(ip % 2 == 0)));
    }
    let mut q = Quiver::empty(meta);
    let cols: Vec<usize> = (1..r).collect();
    grid_arrows(&mut q, &cols);
    for col in [r, r + 1] {
        attach_circles(&mut q, col, r - 1, l);
        circle_verticals(&mut q, col, l);
    }
    q
}

fn build_f4(l: usize) -> Quiver {
    let mut meta = Vec::new();
    for (col, plus_odd) in [(1usize, true), (2, false)] {
        for ip in 1..l {
            meta.push(VertexMeta::new(col, ip, Fill::Circle, sign_tag((ip % 2 == 1) == plus_odd)));
        }
    }
    for col in [3usize, 4] {
        for ip in 1..2 * l {
            meta.push(VertexMeta::new(col, ip, Fill::Bullet, sign_tag((col + ip) % 2 == 0)));
        }
    }
    for (col, plus_odd) in [(5usize, true), (6, false)] {
        for ip in 1..l {
            meta.push(VertexMeta::new(col, ip, Fill::Circle, sign_tag((ip % 2 == 1) == plus_odd)));
        }
    }
    let mut q = Quiver::empty(meta);
    grid_arrows(&mut q, &[4, 3]);
    grid_arrows(&mut q, &[1, 2]);
    grid_arrows(&mut q, &[6, 5]);
    for col in [2, 5] {
        attach_circles(&mut q, col, 3, l);
    }
    q
}

/// Region numeral and link radius of the `G_2` circle `(i, i')`.
fn g2_region(i: usize, ip: usize) -> (u8, usize) {
    let odd = ip % 2 == 1;
    match (i, odd) {
        (1, true) => (4, 2),
        (1, false) => (1, 0),
        (2, true) => (2, 1),
        (2, false) => (5, 1),
        (3, true) => (6, 0),
        (3, false) => (3, 2),
        _ => unreachable!("G2 circle columns are 1, 2, 3"),
    }
}

fn build_g2(l: usize) -> Quiver {
    let mut meta = Vec::new();
    for i in 1..=3 {
        for ip in 1..l {
            meta.push(VertexMeta::new(i, ip, Fill::Circle, Tag::Region(g2_region(i, ip).0)));
        }
    }
    for j in 1..3 * l {
        meta.push(VertexMeta::new(4, j, Fill::Bullet, sign_tag(j % 2 == 1)));
    }
    let mut q = Quiver::empty(meta);
    grid_arrows(&mut q, &[4]);
    for i in 1..=3 {
        for ip in 1..l {
            let c = q.vertex(i, ip).expect("circle exists");
            let (_, k) = g2_region(i, ip);
            let centre = 3 * ip;
            for j in centre - k..=centre + k {
                let b = q.vertex(4, j).expect("bullet exists");
                if j % 2 == 1 {
                    q.add_arrow(c, b).expect("valid");
                } else {
                    q.add_arrow(b, c).expect("valid");
                }
            }
            if ip + 1 < l {
                let up = q.vertex(i, ip + 1).expect("circle exists");
                // Column 2 points from odd to even rows, columns 1 and 3
                // from even to odd rows.
                let from_odd = i == 2;
                let src_is_lower = (ip % 2 == 1) == from_odd;
                if src_is_lower {
                    q.add_arrow(c, up).expect("valid");
                } else {
                    q.add_arrow(up, c).expect("valid");
                }
            }
        }
    }
    q
}

/// `X □ A_{ℓ-1}`: vertices `(i, j)` with sign `ε_i (-1)^j`, horizontal
/// (Dynkin) arrows from `-` to `+`, vertical arrows from `+` to `-`.
pub fn square_product(dynkin: &Dynkin, l: usize) -> Result<Quiver, Error> {
    if l < 2 {
        return Err(Error::InvalidSpec(format!("level must be at least 2, got {l}")));
    }
    let eps = dynkin.bipartition();
    let mut meta = Vec::new();
    for i in 1..=dynkin.rank {
        for j in 1..l {
            let plus = eps[i - 1] == (j % 2 == 0);
            meta.push(VertexMeta::new(i, j, Fill::Bullet, sign_tag(plus)));
        }
    }
    let mut q = Quiver::empty(meta);
    for i in 1..=dynkin.rank {
        for j in 1..l {
            let v = q.vertex(i, j).expect("exists");
            let plus = is_plus(&q.meta()[v]);
            if j + 1 < l {
                let up = q.vertex(i, j + 1).expect("exists");
                if plus {
                    q.add_arrow(v, up)?;
                } else {
                    q.add_arrow(up, v)?;
                }
            }
            for &(a, b) in &dynkin.edges {
                if a == i {
                    let w = q.vertex(b, j).expect("exists");
                    if plus {
                        q.add_arrow(w, v)?;
                    } else {
                        q.add_arrow(v, w)?;
                    }
                }
            }
        }
    }
    Ok(q)
}

/// The symmetry permutations of a family quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involutions {
    /// Left-right reflection (C and F4 only).
    pub r: Option<VertexPermutation>,
    /// Up-down reflection / rotation.
    pub omega: VertexPermutation,
}

fn perm_from_map<F: Fn(&VertexMeta) -> (usize, usize)>(q: &Quiver, f: F) -> VertexPermutation {
    let images = q
        .meta()
        .iter()
        .map(|m| {
            let (c, r) = f(m);
            q.vertex(c, r).expect("image vertex exists")
        })
        .collect();
    VertexPermutation::from_images(images).expect("vertex map is a bijection")
}

pub fn involutions(spec: &Spec) -> Involutions {
    let q = build(spec);
    let l = spec.l;
    match spec.family {
        Family::C => {
            let r = spec.r;
            let refl = perm_from_map(&q, |m| match m.col {
                c if c == r => (r + 1, m.row),
                c if c == r + 1 => (r, m.row),
                c => (c, m.row),
            });
            let omega = perm_from_map(&q, |m| {
                if m.col < r {
                    (m.col, 2 * l - m.row)
                } else if r % 2 == 0 {
                    (2 * r + 1 - m.col, l - m.row)
                } else {
                    (m.col, l - m.row)
                }
            });
            Involutions { r: Some(refl), omega }
        }
        Family::F4 => {
            let refl = perm_from_map(&q, |m| match m.col {
                3 | 4 => (m.col, m.row),
                c => (7 - c, m.row),
            });
            let omega = perm_from_map(&q, |m| match m.col {
                3 | 4 => (m.col, 2 * l - m.row),
                c => (7 - c, l - m.row),
            });
            Involutions { r: Some(refl), omega }
        }
        Family::G2 => {
            let omega = perm_from_map(&q, |m| match m.col {
                4 => (4, 3 * l - m.row),
                c => (c, l - m.row),
            });
            Involutions { r: None, omega }
        }
    }
}

/// `ν_s` on a `G_2` quiver: `(i, i') ↦ (s(i), i')` for circle columns,
/// identity on column 4.  `s` is given in one-line notation
/// `[s(1), s(2), s(3)]`.
pub fn nu(spec: &Spec, s: [usize; 3]) -> Result<VertexPermutation, Error> {
    if spec.family != Family::G2 {
        return Err(Error::Unsupported(String::from("ν_s is defined for G2 only")));
    }
    let mut sorted = s;
    sorted.sort_unstable();
    if sorted != [1, 2, 3] {
        return Err(Error::NotAPermutation);
    }
    let q = build(spec);
    Ok(perm_from_map(&q, |m| match m.col {
        4 => (4, m.row),
        c => (s[c - 1], m.row),
    }))
}

/// The left-right reflection, which is undefined for `G_2`.
pub fn reflection(spec: &Spec) -> Result<VertexPermutation, Error> {
    involutions(spec)
        .r
        .ok_or_else(|| Error::Unsupported(String::from("the reflection r is not defined for G2")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_table() {
        let c3 = cartan_data(Family::C, 3);
        assert_eq!((c3.h, c3.h_dual), (6, 4));
        let f4 = cartan_data(Family::F4, 4);
        assert_eq!((f4.h, f4.h_dual), (12, 9));
        assert_eq!(cartan_data(Family::G2, 2).t, 3);
    }

    #[test]
    fn vertex_counts() {
        for r in 2..=6 {
            for l in 2..=5 {
                let s = Spec::c(r, l).unwrap();
                assert_eq!(build(&s).n(), s.vertex_count());
            }
        }
        assert_eq!(build(&Spec::g2(2).unwrap()).n(), 8);
        assert_eq!(build(&Spec::c(4, 2).unwrap()).n(), 11);
        assert_eq!(build(&Spec::f4(2).unwrap()).n(), 10);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(Spec::c(1, 3).is_err());
        assert!(Spec::c(3, 1).is_err());
        assert!(Spec::new(Family::F4, 3, 2).is_err());
        assert!(reflection(&Spec::g2(2).unwrap()).is_err());
    }

    #[test]
    fn all_built_quivers_are_simply_laced() {
        for s in [Spec::c(3, 3).unwrap(), Spec::f4(3).unwrap(), Spec::g2(4).unwrap()] {
            let q = build(&s);
            assert!(q.is_simply_laced() && q.is_skew_symmetric());
        }
    }
}
