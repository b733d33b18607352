//! Error type shared by every module of the core crate.

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a quiver with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertices {0} and {1} of a composite mutation are adjacent")]
    AdjacentInSet(usize, usize),
    #[error("loop requested at vertex {0}")]
    Loop(usize),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("image table is not a permutation")]
    NotAPermutation,
    #[error("invalid family specification: {0}")]
    InvalidSpec(String),
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error("schedule step at u = {u_num}/{den}: {detail}")]
    ScheduleMismatch { u_num: i64, den: i64, detail: String },
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("root is not almost positive")]
    NotAlmostPositive,
    #[error("orbit did not close within {0} steps")]
    OrbitOverrun(usize),
    #[error("point outside the case table: {0}")]
    OutsideTable(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("fixed-point iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("non-positive value {value} at vertex {vertex}")]
    NonPositive { vertex: usize, value: f64 },
    #[error("quiver has {n} vertices, above the cap of {cap}")]
    SizeCap { n: usize, cap: usize },
}
