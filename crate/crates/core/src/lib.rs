//! Constructive edge decompositions of planar graphs.
//!
//! A `(d,h)`-decomposition of a graph splits its edge set into a
//! `d`-degenerate part `D` and a part `H` of maximum degree at most `h`.
//! This crate builds such decompositions for every planar graph with
//! `(d,h)` in `{(4,1), (3,2), (2,6)}`, checks them, decides small
//! instances exactly, and generates the instance families used to
//! exercise all of the above.
//!
//! The pieces:
//!
//! * [`plane`]: rotation-system plane graphs, faces, near triangulations
//!   and the surgeries (chord split, boundary deletion, block extraction,
//!   triangulation) the recursive constructions run on.
//! * [`verify`]: degeneracy orderings, orientation conversions and the
//!   checkers every decomposition is validated against.
//! * [`decomp26`], [`decomp32`], [`decomp41`]: the three constructions.
//! * [`oracle`]: exact backtracking decision for small graphs.
//! * [`gen`]: deterministic instance generators.
//! * [`io`]: the `.rot` and `.dh` text formats.
//!
//! ```
//! use dhdecomp::{decomp41, gen, verify};
//!
//! let ico = gen::named_solid("icosahedron").unwrap();
//! let out = decomp41::decompose41(ico.graph()).unwrap();
//! let report = verify::check_dh(ico.graph(), &out.pair, 4, 1);
//! assert!(report.passed());
//! ```

pub mod decomp26;
pub mod decomp32;
pub mod decomp41;
pub mod error;
pub mod gen;
pub mod io;
pub mod oracle;
pub mod plane;
pub mod verify;

mod labeling;
mod region;

pub use error::{DecompError, GraphError, OracleError};
pub use plane::{Face, NearTriangulation, PlaneGraph};
pub use verify::{ConditionReport, DecompPair, DegeneracyOrdering};

/// Vertex identifier. Ids are positive; `0` is never a vertex.
pub type Vertex = u32;

/// Undirected edge stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

/// Normalizes an unordered pair so the smaller id comes first.
#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
