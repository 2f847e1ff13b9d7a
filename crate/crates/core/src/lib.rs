//! Graph codes over GF(2) and their homological realization.
//!
//! The crate builds Tanner-style graph codes: given a graph `G` and a small
//! linear "local" code attached to every vertex, the global code lives on the
//! edge set and consists of the edge labellings whose restriction to every
//! vertex neighborhood is a local codeword. The same data also defines a rank-1
//! chain complex with twisted coefficients on `G`, and the global code is
//! exactly the kernel of its first boundary map. Everything here is exact
//! GF(2) arithmetic (bit-packed, dense) so that the two constructions can be
//! compared as literal subspaces of `F_2^E`, not just up to isomorphism.
//!
//! Module layout:
//!
//! * [`gf2`] — bit-packed vectors and matrices with row reduction, kernels,
//!   column spaces, and a plain text serialization.
//! * [`codes`] — binary linear codes with exact rate and brute-force minimum
//!   distance, plus the small named codes used as vertex codes.
//! * [`graphs`] — undirected simple graphs with canonical edge order, spectra,
//!   girth, and seeded random generators.
//! * [`homology`] — simplicial complexes, GF(2) local systems, boundary maps,
//!   and twisted homology.
//! * [`realization`] — the bridge: build the graph code, build the matching
//!   local system, check that the code equals first homology, and evaluate the
//!   spectral rate/distance bounds.
//!
//! All randomized constructions take an explicit `u64` seed and are
//! deterministic for a fixed seed, including across processes.

use std::fmt;

pub mod codes;
pub mod gf2;
pub mod graphs;
pub mod homology;
pub mod realization;

pub(crate) mod textio;

pub use codes::LinearCode;
pub use gf2::{in_span, solve, BitMatrix, BitVector, RowEchelon};
pub use graphs::Graph;
pub use homology::{LocalSystem, SimplicialComplex, TwistedChain};
pub use realization::{GraphCodeInstance, LocalCodeAssignment, PropositionVerdict, Report};

/// Exact rational arithmetic used for rates, relative distances, and bounds.
pub type Rational = num_rational::Ratio<i64>;

/// Error raised when decoding any of the text formats (matrices, codes,
/// graphs, complexes, local systems, assignments).
///
/// `line` is 1-based and refers to the input handed to the parser.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl fmt::Display) -> Self {
        ParseError {
            line,
            message: message.to_string(),
        }
    }
}

/// Renders a rational as `p/q` (or just `p` when the denominator is 1), the
/// form used in reports and JSON output.
pub fn rational_string(r: Rational) -> String {
    r.to_string()
}
