//! Bounded search for mutation equivalences between quivers.
//!
//! Quivers are deduplicated up to isomorphism by a canonical key: colour
//! refinement followed by an individualisation search that keeps the
//! lexicographically smallest adjacency encoding.  Two bounded
//! breadth-first searches, one from each quiver, meet when they reach the
//! same key; the resulting move sequence is replayed and the final
//! isomorphism verified before it is returned.  The search never proves
//! that two quivers are inequivalent.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::Error;
use crate::quiver::{refine_colors, Quiver, VertexPermutation};

/// Largest vertex count accepted by [`canonical_key`].
pub const KEY_SIZE_CAP: usize = 24;

/// Canonical encoding of a quiver up to vertex permutation: the vertex
/// count followed by the strict upper triangle of the canonically
/// relabelled exchange matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub bytes: Vec<u8>,
}

/// The canonical key; errors above [`KEY_SIZE_CAP`] vertices or when an
/// arrow multiplicity does not fit in a byte.
pub fn canonical_key(q: &Quiver) -> Result<CanonicalKey, Error> {
    let n = q.n();
    if n > KEY_SIZE_CAP {
        return Err(Error::SizeCap { n, cap: KEY_SIZE_CAP });
    }
    if q.matrix().iter().any(|&b| !(-127..=127).contains(&b)) {
        return Err(Error::Unsupported(format!("arrow multiplicity beyond 127 on {n} vertices")));
    }
    let get = |i: usize, j: usize| q.get(i, j);
    let colors = refine_colors(n, &get, vec![0; n]);
    let mut best: Option<Vec<i8>> = None;
    search_leaves(q, colors, &mut best);
    let mut bytes = vec![n as u8];
    bytes.extend(best.unwrap_or_default().into_iter().map(|b| b as u8));
    Ok(CanonicalKey { bytes })
}

fn search_leaves(q: &Quiver, colors: Vec<usize>, best: &mut Option<Vec<i8>>) {
    let n = q.n();
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
    let Some(cell) = target else {
        let mut order = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            order[c] = v;
        }
        let mut enc = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for i in 0..n {
            for j in i + 1..n {
                enc.push(q.get(order[i], order[j]) as i8);
            }
        }
        if best.as_ref().is_none_or(|b| enc < *b) {
            *best = Some(enc);
        }
        return;
    };
    let get = |i: usize, j: usize| q.get(i, j);
    for v in (0..n).filter(|&v| colors[v] == cell) {
        let split: Vec<usize> = (0..n).map(|w| 2 * colors[w] + usize::from(w != v)).collect();
        search_leaves(q, refine_colors(n, &get, split), best);
    }
}

/// A move sequence from `start` whose result is isomorphic to the target
/// through `isomorphism` (result vertex `i` ↦ target vertex
/// `isomorphism.apply(i)`).
#[derive(Clone, Debug)]
pub struct MutationPath {
    pub start: Quiver,
    pub moves: Vec<usize>,
    pub isomorphism: VertexPermutation,
}

impl MutationPath {
    /// Replay the moves from `start`.
    pub fn replay(&self) -> Result<Quiver, Error> {
        let mut q = self.start.clone();
        for &k in &self.moves {
            q.mutate_in_place(k)?;
        }
        Ok(q)
    }

    /// Whether the replayed quiver maps onto `target` under the recorded
    /// isomorphism.
    pub fn verify(&self, target: &Quiver) -> Result<bool, Error> {
        let end = self.replay()?;
        Ok(end.n() == target.n() && end.apply_perm(&self.isomorphism).same_arrows(target))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest number of mutations explored from each side.
    pub depth_cap: usize,
    /// Largest number of distinct classes stored per side.
    pub node_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { depth_cap: 12, node_cap: 1_000_000 }
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(MutationPath),
    /// Caps reached without a meeting; says nothing about inequivalence.
    Exhausted { depth_left: usize, depth_right: usize, nodes_left: usize, nodes_right: usize },
}

struct Node {
    parent: Option<usize>,
    mv: usize,
}

struct Side {
    nodes: Vec<Node>,
    index: HashMap<CanonicalKey, usize>,
    /// Labelled quivers of the deepest explored layer with their node ids.
    frontier: Vec<(usize, Quiver)>,
    depth: usize,
}

impl Side {
    fn new(root: &Quiver, key: CanonicalKey) -> Self {
        let mut index = HashMap::new();
        index.insert(key, 0);
        Side { nodes: vec![Node { parent: None, mv: 0 }], index, frontier: vec![(0, root.clone())], depth: 0 }
    }

    fn path(&self, mut id: usize) -> Vec<usize> {
        let mut moves = Vec::new();
        while let Some(p) = self.nodes[id].parent {
            moves.push(self.nodes[id].mv);
            id = p;
        }
        moves.reverse();
        moves
    }
}

fn replay(start: &Quiver, moves: &[usize]) -> Result<Quiver, Error> {
    let mut q = start.clone();
    for &k in moves {
        q.mutate_in_place(k)?;
    }
    Ok(q)
}

/// Bidirectional breadth-first search over mutation classes.
pub fn search_equivalence(left: &Quiver, right: &Quiver, config: SearchConfig) -> Result<SearchOutcome, Error> {
    if left.n() != right.n() {
        return Err(Error::SizeMismatch { left: left.n(), right: right.n() });
    }
    let n = left.n();
    let kl = canonical_key(left)?;
    let kr = canonical_key(right)?;
    let mut sides = [Side::new(left, kl), Side::new(right, kr)];
    let roots = [left, right];
    if let Some(&id) = sides[1].index.get(&canonical_key(left)?) {
        return finish(roots, &sides, 0, id, left);
    }
    loop {
        let can = |s: &Side| s.depth < config.depth_cap && !s.frontier.is_empty() && s.nodes.len() < config.node_cap;
        let pick = match (can(&sides[0]), can(&sides[1])) {
            (false, false) => break,
            (true, false) => 0,
            (false, true) => 1,
            (true, true) => usize::from(sides[1].frontier.len() < sides[0].frontier.len()),
        };
        let other = 1 - pick;
        let frontier = core::mem::take(&mut sides[pick].frontier);
        let mut next = Vec::new();
        for (id, q) in frontier {
            let last = sides[pick].nodes[id].mv;
            let is_root = sides[pick].nodes[id].parent.is_none();
            for k in 0..n {
                if !is_root && k == last {
                    continue;
                }
                let mq = q.mutate(k)?;
                let key = match canonical_key(&mq) {
                    Ok(key) => key,
                    Err(Error::Unsupported(_)) => continue,
                    Err(e) => return Err(e),
                };
                if sides[pick].index.contains_key(&key) {
                    continue;
                }
                let new_id = sides[pick].nodes.len();
                sides[pick].nodes.push(Node { parent: Some(id), mv: k });
                if let Some(&hit) = sides[other].index.get(&key) {
                    sides[pick].index.insert(key, new_id);
                    let (lid, rid) = if pick == 0 { (new_id, hit) } else { (hit, new_id) };
                    let lq = replay(left, &sides[0].path(lid))?;
                    return finish(roots, &sides, lid, rid, &lq);
                }
                sides[pick].index.insert(key, new_id);
                next.push((new_id, mq));
                if sides[pick].nodes.len() >= config.node_cap {
                    break;
                }
            }
            if sides[pick].nodes.len() >= config.node_cap {
                break;
            }
        }
        sides[pick].frontier = next;
        sides[pick].depth += 1;
    }
    Ok(SearchOutcome::Exhausted {
        depth_left: sides[0].depth,
        depth_right: sides[1].depth,
        nodes_left: sides[0].nodes.len(),
        nodes_right: sides[1].nodes.len(),
    })
}

/// Splice the two half paths through the isomorphism of the meeting
/// quivers and verify the result.
fn finish(roots: [&Quiver; 2], sides: &[Side; 2], lid: usize, rid: usize, lq: &Quiver) -> Result<SearchOutcome, Error> {
    let rq = replay(roots[1], &sides[1].path(rid))?;
    let pi = lq
        .find_isomorphism(&rq)
        .ok_or_else(|| Error::Unsupported(String::from("canonical keys agree but no isomorphism was found")))?;
    let inv = pi.inverse();
    let mut moves = sides[0].path(lid);
    moves.extend(sides[1].path(rid).into_iter().rev().map(|k| inv.apply(k)));
    let end = replay(roots[0], &moves)?;
    let iso = end
        .find_isomorphism(roots[1])
        .ok_or_else(|| Error::Unsupported(String::from("spliced path does not reach the target")))?;
    let path = MutationPath { start: roots[0].clone(), moves, isomorphism: iso };
    if !path.verify(roots[1])? {
        return Err(Error::Unsupported(String::from("replayed path fails verification")));
    }
    Ok(SearchOutcome::Found(path))
}

/// Every quiver within `depth` mutations of `q` up to isomorphism, as
/// `(key, representative)` pairs; used to cross-check keys against
/// isomorphism tests.
pub fn neighbourhood(q: &Quiver, depth: usize) -> Result<Vec<(CanonicalKey, Quiver)>, Error> {
    let mut seen: HashMap<CanonicalKey, usize> = HashMap::new();
    let mut out = vec![(canonical_key(q)?, q.clone())];
    seen.insert(out[0].0.clone(), 0);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::from([(0usize, 0usize)]);
    while let Some((idx, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        let base = out[idx].1.clone();
        for k in 0..base.n() {
            let mq = base.mutate(k)?;
            let key = canonical_key(&mq)?;
            if !seen.contains_key(&key) {
                seen.insert(key.clone(), out.len());
                queue.push_back((out.len(), d + 1));
                out.push((key, mq));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::VertexMeta;

    fn quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
        let meta = (0..n).map(|i| VertexMeta::plain(i + 1, 1)).collect();
        Quiver::from_arrows(meta, arrows).unwrap()
    }

    #[test]
    fn key_separates_a_quiver_from_its_opposite() {
        let q = quiver(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]);
        assert_ne!(canonical_key(&q).unwrap(), canonical_key(&q.opposite()).unwrap());
    }

    #[test]
    fn identical_quivers_give_an_empty_path() {
        let q = quiver(3, &[(0, 1), (1, 2)]);
        match search_equivalence(&q, &q, SearchConfig::default()).unwrap() {
            SearchOutcome::Found(p) => assert!(p.moves.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orientations_of_a3_are_equivalent() {
        let a = quiver(3, &[(0, 1), (1, 2)]);
        let b = quiver(3, &[(1, 0), (1, 2)]);
        match search_equivalence(&a, &b, SearchConfig::default()).unwrap() {
            SearchOutcome::Found(p) => assert!(p.verify(&b).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn size_cap() {
        let q = quiver(KEY_SIZE_CAP + 1, &[]);
        assert!(matches!(canonical_key(&q), Err(Error::SizeCap { .. })));
    }
}
