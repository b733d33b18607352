//! Simply laced Dynkin diagrams with explicit node labels.
//!
//! Nodes are numbered `1..=rank` in the labelling used by the quiver
//! families: `D_n` has the chain `1 - ... - (n-2)` with `n-1` and `n`
//! attached to `n-2`; `E_6` has the chain `1 - 2 - 3 - 5 - 6` with `4`
//! attached to `3`; the `D_4` used for `G_2` has centre `4`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinKind {
    A,
    D,
    E6,
    /// `D_4` labelled with the trivalent node as 4.
    D4Central,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dynkin {
    pub kind: DynkinKind,
    pub rank: usize,
    /// Undirected edges `(i, j)` with `i < j`, 1-based.
    pub edges: Vec<(usize, usize)>,
}

impl Dynkin {
    pub fn a(n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidSpec(String::from("A_n needs n >= 1")));
        }
        Ok(Dynkin {
            kind: DynkinKind::A,
            rank: n,
            edges: (1..n).map(|i| (i, i + 1)).collect(),
        })
    }

    pub fn d(n: usize) -> Result<Self, Error> {
        if n < 3 {
            return Err(Error::InvalidSpec(format!("D_{n} needs n >= 3")));
        }
        let mut edges: Vec<(usize, usize)> = (1..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((n - 2, n - 1));
        edges.push((n - 2, n));
        Ok(Dynkin { kind: DynkinKind::D, rank: n, edges })
    }

    pub fn e6() -> Self {
        Dynkin {
            kind: DynkinKind::E6,
            rank: 6,
            edges: vec![(1, 2), (2, 3), (3, 5), (5, 6), (3, 4)],
        }
    }

    pub fn d4_central() -> Self {
        Dynkin {
            kind: DynkinKind::D4Central,
            rank: 4,
            edges: vec![(1, 4), (2, 4), (3, 4)],
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            DynkinKind::A => format!("A{}", self.rank),
            DynkinKind::D | DynkinKind::D4Central => format!("D{}", self.rank),
            DynkinKind::E6 => String::from("E6"),
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }

    /// Cartan matrix `2I - adjacency`, 0-based indices.
    pub fn cartan(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in &self.edges {
            c[a - 1][b - 1] = -1;
            c[b - 1][a - 1] = -1;
        }
        c
    }

    /// A proper 2-colouring: `true` for the class containing node 1.
    pub fn bipartition(&self) -> Vec<bool> {
        let n = self.rank;
        let mut colour: Vec<Option<bool>> = vec![None; n + 1];
        colour[1] = Some(true);
        let mut stack = vec![1usize];
        while let Some(v) = stack.pop() {
            let c = colour[v].expect("coloured before push");
            for w in 1..=n {
                if self.adjacent(v, w) && colour[w].is_none() {
                    colour[w] = Some(!c);
                    stack.push(w);
                }
            }
        }
        (1..=n).map(|v| colour[v].unwrap_or(true)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartition_is_proper() {
        for d in [Dynkin::a(5).unwrap(), Dynkin::d(6).unwrap(), Dynkin::e6(), Dynkin::d4_central()] {
            let c = d.bipartition();
            for &(a, b) in &d.edges {
                assert_ne!(c[a - 1], c[b - 1], "{}", d.name());
            }
        }
    }

    #[test]
    fn edge_counts() {
        assert_eq!(Dynkin::d(5).unwrap().edges.len(), 4);
        assert_eq!(Dynkin::e6().edges.len(), 5);
        assert!(Dynkin::a(0).is_err());
    }
}
