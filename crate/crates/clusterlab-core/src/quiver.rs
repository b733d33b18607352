//! Quivers as skew-symmetric integer matrices.
//!
//! The arrow convention is fixed once for the whole crate: `B[i][j] = 1`
//! means an arrow `i -> j`.  Mutation follows the usual matrix rule
//!
//! ```text
//! B'_ij = -B_ij                                   if i = k or j = k
//! B'_ij = B_ij + sgn(B_ik) * max(B_ik * B_kj, 0)  otherwise
//! ```
//!
//! Vertices carry metadata (column, row, fill, tag) so that the parity rules
//! of the mutation schedules can be phrased in terms of the figures the
//! quivers are drawn from.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Shape of a vertex in the quiver pictures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fill {
    Circle,
    Bullet,
}

/// Label attached to a vertex: a sign, a region numeral `I..VI` (stored
/// as 1..=6), or nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Plus,
    Minus,
    Region(u8),
    None,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const ROMAN: [&str; 6] = ["I", "II", "III", "IV", "V", "VI"];
        match self {
            Tag::Plus => f.write_str("+"),
            Tag::Minus => f.write_str("-"),
            Tag::Region(k) if (1..=6).contains(k) => f.write_str(ROMAN[*k as usize - 1]),
            Tag::Region(k) => write!(f, "R{k}"),
            Tag::None => f.write_str("none"),
        }
    }
}

/// Per-vertex record: column `i`, row `i'`, fill and tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexMeta {
    pub col: usize,
    pub row: usize,
    pub fill: Fill,
    pub tag: Tag,
}

impl VertexMeta {
    pub fn new(col: usize, row: usize, fill: Fill, tag: Tag) -> Self {
        VertexMeta { col, row, fill, tag }
    }

    /// Untagged bullet at `(col, row)`; used for plain grids.
    pub fn plain(col: usize, row: usize) -> Self {
        VertexMeta::new(col, row, Fill::Bullet, Tag::None)
    }
}

/// A bijection on `0..n`.  `perm[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPermutation {
    perm: Vec<usize>,
}

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        VertexPermutation { perm: (0..n).collect() }
    }

    /// Build from an image table, checking that it is a bijection.
    pub fn from_images(perm: Vec<usize>) -> Result<Self, Error> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::NotAPermutation);
            }
            seen[p] = true;
        }
        Ok(VertexPermutation { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        VertexPermutation { perm: inv }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &VertexPermutation) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        VertexPermutation {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// A quiver without loops or 2-cycles, stored as its exchange matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    b: Vec<i32>,
    meta: Vec<VertexMeta>,
}

impl Quiver {
    /// Quiver with no arrows on the given vertices.
    pub fn empty(meta: Vec<VertexMeta>) -> Self {
        let n = meta.len();
        Quiver { n, b: vec![0; n * n], meta }
    }

    /// Build from a full matrix (row-major), checking skew-symmetry.
    pub fn from_matrix(b: Vec<i32>, meta: Vec<VertexMeta>) -> Result<Self, Error> {
        let n = meta.len();
        if b.len() != n * n {
            return Err(Error::SizeMismatch { left: b.len(), right: n * n });
        }
        let q = Quiver { n, b, meta };
        if !q.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        Ok(q)
    }

    /// Build from a list of arrows `(i, j)`, each adding one to `B_ij`.
    pub fn from_arrows(meta: Vec<VertexMeta>, arrows: &[(usize, usize)]) -> Result<Self, Error> {
        let mut q = Quiver::empty(meta);
        for &(i, j) in arrows {
            q.add_arrow(i, j)?;
        }
        Ok(q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn meta(&self) -> &[VertexMeta] {
        &self.meta
    }

    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.b[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i32) {
        self.b[i * self.n + j] = v;
    }

    /// Raw row-major matrix.
    pub fn matrix(&self) -> &[i32] {
        &self.b
    }

    /// Add one arrow `i -> j` (cancelling an opposite arrow if present).
    pub fn add_arrow(&mut self, i: usize, j: usize) -> Result<(), Error> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::Loop(i));
        }
        let v = self.get(i, j) + 1;
        self.set(i, j, v);
        self.set(j, i, -v);
        Ok(())
    }

    /// Index of the vertex at `(col, row)`, if any.
    pub fn vertex(&self, col: usize, row: usize) -> Option<usize> {
        self.meta.iter().position(|m| m.col == col && m.row == row)
    }

    /// Arrows `(i, j)` with multiplicity `B_ij > 0`, in row-major order.
    pub fn arrows(&self) -> Vec<(usize, usize, i32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.get(i, j);
                if v > 0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// True when every entry lies in `{-1, 0, 1}`.
    pub fn is_simply_laced(&self) -> bool {
        self.b.iter().all(|v| v.abs() <= 1)
    }

    fn check_index(&self, k: usize) -> Result<(), Error> {
        if k >= self.n {
            Err(Error::VertexOutOfRange { vertex: k, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Mutation at `k`.
    pub fn mutate(&self, k: usize) -> Result<Quiver, Error> {
        let mut q = self.clone();
        q.mutate_in_place(k)?;
        Ok(q)
    }

    /// Mutation at `k`, in place.
    pub fn mutate_in_place(&mut self, k: usize) -> Result<(), Error> {
        self.check_index(k)?;
        let n = self.n;
        let old = self.b.clone();
        let at = |i: usize, j: usize| old[i * n + j];
        for i in 0..n {
            for j in 0..n {
                let v = if i == k || j == k {
                    -at(i, j)
                } else {
                    let bik = at(i, k);
                    at(i, j) + bik.signum() * (bik * at(k, j)).max(0)
                };
                self.b[i * n + j] = v;
            }
        }
        Ok(())
    }

    /// Mutation at every vertex of `set`.  The vertices must be pairwise
    /// disconnected, so the order does not matter.
    pub fn composite_mutate(&self, set: &[usize]) -> Result<Quiver, Error> {
        let mut q = self.clone();
        q.composite_mutate_in_place(set)?;
        Ok(q)
    }

    pub fn composite_mutate_in_place(&mut self, set: &[usize]) -> Result<(), Error> {
        for &k in set {
            self.check_index(k)?;
        }
        for (a, &j) in set.iter().enumerate() {
            for &k in &set[a + 1..] {
                if j == k || self.get(j, k) != 0 {
                    return Err(Error::AdjacentInSet(j, k));
                }
            }
        }
        for &k in set {
            self.mutate_in_place(k)?;
        }
        Ok(())
    }

    /// The opposite quiver: every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            n: self.n,
            b: self.b.iter().map(|v| -v).collect(),
            meta: self.meta.clone(),
        }
    }

    /// Relabel vertices: `B'_{p(i) p(j)} = B_ij`.  Metadata stays attached
    /// to positions, so the result is directly comparable with quivers
    /// built on the same vertex list.
    pub fn apply_perm(&self, p: &VertexPermutation) -> Quiver {
        assert_eq!(p.len(), self.n, "permutation size does not match quiver");
        let mut q = Quiver::empty(self.meta.clone());
        for i in 0..self.n {
            for j in 0..self.n {
                q.set(p.apply(i), p.apply(j), self.get(i, j));
            }
        }
        q
    }

    /// Same arrows, ignoring metadata.
    pub fn same_arrows(&self, other: &Quiver) -> bool {
        self.n == other.n && self.b == other.b
    }

    /// Find `p` with `apply_perm(self, p)` having the same arrows as `other`.
    ///
    /// Backtracking over vertices ordered by refined colour class, with
    /// colour refinement used to restrict candidates.
    pub fn find_isomorphism(&self, other: &Quiver) -> Option<VertexPermutation> {
        if self.n != other.n {
            return None;
        }
        let n = self.n;
        let (ca, cb) = joint_refine(self, other)?;
        // Order source vertices: smallest colour class first, then
        // prefer vertices adjacent to already ordered ones.
        let mut class_size = vec![0usize; n + 1];
        for &c in &ca {
            class_size[c] += 1;
        }
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let best = (0..n)
                .filter(|&v| !placed[v])
                .min_by_key(|&v| {
                    let links = order.iter().filter(|&&w| self.get(v, w) != 0).count();
                    (class_size[ca[v]], usize::MAX - links, v)
                })
                .expect("unplaced vertex exists");
            placed[best] = true;
            order.push(best);
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if iso_backtrack(self, other, &ca, &cb, &order, 0, &mut map, &mut used) {
            Some(VertexPermutation { perm: map })
        } else {
            None
        }
    }

    /// Full-matrix comparison with the image under a transform.
    pub fn matches_transform(&self, base: &Quiver, perm: &VertexPermutation, opposite: bool) -> bool {
        let mut q = base.apply_perm(perm);
        if opposite {
            q = q.opposite();
        }
        self.same_arrows(&q)
    }
}

#[allow(clippy::too_many_arguments)]
fn iso_backtrack(
    a: &Quiver,
    b: &Quiver,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..b.n {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x| {
            let y = map[x];
            a.get(v, x) == b.get(w, y)
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if iso_backtrack(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Colour refinement run on the disjoint union of two quivers, so colours
/// are comparable across them.  Returns `None` if the colour histograms
/// differ (no isomorphism possible).
fn joint_refine(a: &Quiver, b: &Quiver) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = a.n;
    let get = |v: usize, w: usize| -> i32 {
        match (v < n, w < n) {
            (true, true) => a.get(v, w),
            (false, false) => b.get(v - n, w - n),
            _ => 0,
        }
    };
    let colors = refine_colors(2 * n, &get, vec![0; 2 * n]);
    let (ca, cb) = colors.split_at(n);
    let mut ha = ca.to_vec();
    let mut hb = cb.to_vec();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return None;
    }
    Some((ca.to_vec(), cb.to_vec()))
}

/// Iterated colour refinement on a weighted digraph given by `get`.
///
/// Each round replaces a colour by the rank of the signature
/// `(colour, sorted multiset of (neighbour colour, weight))`.  Ranks are
/// taken over the sorted list of distinct signatures, so the result depends
/// only on isomorphism-invariant data and the initial colouring.
pub(crate) fn refine_colors<F: Fn(usize, usize) -> i32>(n: usize, get: &F, mut colors: Vec<usize>) -> Vec<usize> {
    let mut classes = count_distinct(&colors);
    loop {
        let mut sigs: Vec<(usize, Vec<(usize, i32)>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, i32)> = (0..n)
                    .filter_map(|w| {
                        let x = get(v, w);
                        (x != 0).then_some((colors[w], x))
                    })
                    .collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = vec![0usize; n];
        let mut rank = 0usize;
        for idx in 0..n {
            if idx > 0 && (sigs[idx].0 != sigs[idx - 1].0 || sigs[idx].1 != sigs[idx - 1].1) {
                rank += 1;
            }
            next[sigs[idx].2] = rank;
        }
        let new_classes = if n == 0 { 0 } else { rank + 1 };
        colors = next;
        if new_classes == classes {
            return colors;
        }
        classes = new_classes;
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Quiver {
        let meta = (0..3).map(|i| VertexMeta::plain(i + 1, 1)).collect();
        Quiver::from_arrows(meta, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn mutation_at_middle_of_a3_path_creates_triangle() {
        let q = path3().mutate(1).unwrap();
        let expected = Quiver::from_arrows(q.meta().to_vec(), &[(1, 0), (2, 1), (0, 2)]).unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn mutation_is_involutive() {
        let q = path3();
        for k in 0..3 {
            assert_eq!(q.mutate(k).unwrap().mutate(k).unwrap(), q);
        }
    }

    #[test]
    fn mutation_index_out_of_range_is_an_error() {
        assert_eq!(path3().mutate(3), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
    }

    #[test]
    fn composite_mutation_rejects_adjacent_vertices() {
        assert_eq!(path3().composite_mutate(&[0, 1]), Err(Error::AdjacentInSet(0, 1)));
        assert_eq!(path3().composite_mutate(&[]).unwrap(), path3());
    }

    #[test]
    fn opposite_and_identity_relabelling_are_trivial() {
        let q = path3();
        assert_eq!(q.opposite().opposite(), q);
        assert_eq!(q.apply_perm(&VertexPermutation::identity(3)), q);
    }

    #[test]
    fn apply_perm_moves_arrows() {
        let q = path3();
        let p = VertexPermutation::from_images(alloc::vec![2, 1, 0]).unwrap();
        let r = q.apply_perm(&p);
        assert_eq!(r.get(2, 1), 1);
        assert_eq!(r.get(1, 0), 1);
    }

    #[test]
    fn isomorphism_found_and_sound() {
        let q = path3();
        let p = VertexPermutation::from_images(alloc::vec![1, 2, 0]).unwrap();
        let r = q.apply_perm(&p);
        let found = q.find_isomorphism(&r).unwrap();
        assert!(q.apply_perm(&found).same_arrows(&r));
    }

    #[test]
    fn two_cycle_free_quivers_on_two_vertices() {
        let meta: Vec<_> = (0..2).map(|i| VertexMeta::plain(i, 0)).collect();
        let single = Quiver::from_arrows(meta.clone(), &[(0, 1)]).unwrap();
        let double = Quiver::from_arrows(meta.clone(), &[(0, 1), (0, 1)]).unwrap();
        let none = Quiver::empty(meta);
        assert!(single.find_isomorphism(&double).is_none());
        assert!(single.find_isomorphism(&none).is_none());
        assert!(single.find_isomorphism(&single.opposite()).is_some());
    }

    #[test]
    fn permutation_round_trip() {
        let p = VertexPermutation::from_images(alloc::vec![3, 0, 2, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(VertexPermutation::from_images(alloc::vec![0, 0]).is_err());
    }
}
