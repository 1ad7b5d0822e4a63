//! Stable graphs and the two-dimensional field theory they evaluate.
//!
//! A [`StableGraph`] is the dual graph of a nodal marked curve. Given Frobenius data, every
//! genus-`g` vertex with `n` half-edges becomes an `n`-tensor built from three-point vertices,
//! and every edge is contracted with the copairing.

mod catalog;
mod eval;
mod graph;
mod network;

use std::fmt;

use crate::frobenius::FrobError;

pub use catalog::{
    canonical_key, catalog, random_degeneration, random_pants_decomposition, random_stable_graph,
    LegMode,
};
pub use eval::{
    evaluate, vertex_tensor, Amplitude, Discrepancy, InvarianceReport, PantsProductReport, Tft,
};
pub use graph::{Degeneration, GraphVertex, HalfEdge, StableGraph};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TftError {
    #[error("type (g={g}, n={n}) is unstable: 2g - 2 + n must be positive")]
    Unstable { g: u32, n: u32 },
    #[error("cannot glue along {s} points: a curve with {n} marked points is too small")]
    TooFewPoints { s: u32, n: u32 },
    #[error("marked points {i} and {j} are not a valid pair for n = {n}")]
    BadPointPair { i: u32, j: u32, n: u32 },
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Frob(#[from] FrobError),
}

/// A genus and a number of marked points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveType {
    pub g: u32,
    pub n: u32,
}

impl CurveType {
    pub fn new(g: u32, n: u32) -> Self {
        CurveType { g, n }
    }

    /// `2g - 2 + n`, the number of pairs of pants in any decomposition.
    pub fn euler(self) -> i64 {
        2 * self.g as i64 - 2 + self.n as i64
    }

    pub fn is_stable(self) -> bool {
        self.euler() > 0
    }

    pub fn require_stable(self) -> Result<Self, TftError> {
        if self.is_stable() {
            Ok(self)
        } else {
            Err(TftError::Unstable { g: self.g, n: self.n })
        }
    }
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g, self.n)
    }
}

/// Complex dimension `3(g-1) + n` of the moduli space, also for unstable types.
pub fn dimension(t: CurveType) -> i64 {
    3 * (t.g as i64 - 1) + t.n as i64
}

/// Glues `s` points of a `(g, r+s)` curve to `s` points of an `(h, s+t)` curve, giving
/// `(g + h + s - 1, r + t)`.
pub fn glue(t1: CurveType, t2: CurveType, s: u32) -> Result<CurveType, TftError> {
    for t in [t1, t2] {
        if s == 0 || t.n < s {
            return Err(TftError::TooFewPoints { s, n: t.n });
        }
    }
    CurveType::new(t1.g + t2.g + s - 1, t1.n - s + t2.n - s).require_stable()
}

/// Glues marked points `i` and `j` of one curve together.
pub fn self_glue(t: CurveType, (i, j): (u32, u32)) -> Result<CurveType, TftError> {
    if i == j || i >= t.n || j >= t.n {
        return Err(TftError::BadPointPair { i, j, n: t.n });
    }
    CurveType::new(t.g + 1, t.n - 2).require_stable()
}
