use core::fmt;

use crate::graph::Vertex;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    VertexOutOfRange { vertex: Vertex, n: usize },
    DuplicateEdge { u: Vertex, v: Vertex },
    MissingEdge { u: Vertex, v: Vertex },
    SelfLoop { v: Vertex },
    DuplicateTail { v: Vertex, tail: Vertex },
    WeightOutOfRange { weight: f64, cap: f64 },
    /// Matrix is not invertible over the field.
    Singular,
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    EntryOutOfRange { value: f64 },
    BadEpsilon { epsilon: f64 },
    RandomnessExhausted,
    DuplicateRow { row: Vertex },
    NoMark,
    CycleIntroduced { u: Vertex, v: Vertex },
    /// An answer contradicted the structure's own invariants. For randomized
    /// structures this means the random choices failed.
    InternalInconsistency(&'static str),
    NotStronglyConnected { u: Vertex, v: Vertex },
    UnknownComponent { id: usize },
    EndpointMismatch { left_end: Vertex, right_start: Vertex },
    Unsupported(&'static str),
    BadParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n = {n}")
            }
            Error::DuplicateEdge { u, v } => write!(f, "edge {u}->{v} already present"),
            Error::MissingEdge { u, v } => write!(f, "edge {u}->{v} not present"),
            Error::SelfLoop { v } => write!(f, "self-loop at {v} not allowed"),
            Error::DuplicateTail { v, tail } => {
                write!(f, "tail {tail} listed twice for incoming edges of {v}")
            }
            Error::WeightOutOfRange { weight, cap } => {
                write!(f, "weight {weight} outside [1, {cap}]")
            }
            Error::Singular => f.write_str("matrix is singular"),
            Error::DimensionMismatch { left, right } => write!(
                f,
                "dimension mismatch: {}x{} times {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::EntryOutOfRange { value } => write!(f, "matrix entry {value} out of range"),
            Error::BadEpsilon { epsilon } => write!(f, "epsilon {epsilon} not in (0, 1]"),
            Error::RandomnessExhausted => {
                f.write_str("inverse stayed singular after repeated re-randomization")
            }
            Error::DuplicateRow { row } => write!(f, "row {row} already tracked"),
            Error::NoMark => f.write_str("rollback without a matching mark"),
            Error::CycleIntroduced { u, v } => write!(f, "inserting {u}->{v} closes a cycle"),
            Error::InternalInconsistency(what) => write!(f, "internal inconsistency: {what}"),
            Error::NotStronglyConnected { u, v } => {
                write!(f, "{u} and {v} are not strongly connected")
            }
            Error::UnknownComponent { id } => write!(f, "no live component with id {id}"),
            Error::EndpointMismatch { left_end, right_start } => write!(
                f,
                "cannot concatenate a path ending at {left_end} with one starting at {right_start}"
            ),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::BadParameter(what) => write!(f, "bad parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}
