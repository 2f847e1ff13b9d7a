//! Simplicial complexes, GF(2) local systems, and twisted homology.
//!
//! A [`SimplicialComplex`] stores its `k`-simplices as strictly increasing
//! vertex tuples, lexicographically sorted within each dimension; that order
//! fixes the coordinates of every chain group, so boundary matrices are
//! reproducible bit for bit. A [`LocalSystem`] attaches a coefficient space
//! `F(s)` (a finite-dimensional GF(2) vector space, possibly zero) to each
//! simplex and a restriction map to each codimension-1 incidence.
//!
//! The boundary of a `k`-chain sends the coefficient on a simplex through the
//! restriction maps to its `k+1` faces. The usual alternating signs are all 1
//! over GF(2), so they are omitted. When the restrictions satisfy the
//! compatibility law (both composites around every codimension-2 square
//! agree), consecutive boundary maps compose to zero and homology is defined:
//! `dim H_k = dim ker d_k - rank d_{k+1}`.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand::Rng;
use thiserror::Error;

use crate::codes::random_matrix;
use crate::gf2::{in_span, parse_matrix_body, BitMatrix, BitVector};
use crate::textio::{parse_fields, LineCursor};
use crate::{Graph, LinearCode, ParseError};

/// Cap on the total number of simplices a skeleton may store.
pub const SKELETON_SIMPLEX_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("simplex {simplex:?} has vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange {
        simplex: Vec<usize>,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("simplex {simplex:?} repeats a vertex")]
    RepeatedVertex { simplex: Vec<usize> },
    #[error("simplex with no vertices")]
    EmptySimplex,
    #[error("skeleton of the simplex on {vertex_count} vertices up to dimension {dim} stores {count} simplices, over the cap {cap}")]
    SkeletonTooLarge {
        vertex_count: usize,
        dim: usize,
        count: u128,
        cap: u128,
    },
    #[error("skeleton dimension {dim} must be less than the vertex count {vertex_count}")]
    SkeletonDimension { vertex_count: usize, dim: usize },
    #[error("dimension {requested} exceeds the complex dimension {dimension}")]
    DimensionOutOfRange { requested: usize, dimension: usize },
}

/// Violations found when checking a local system against a complex. Shape
/// problems (wrong matrix sizes or missing data) are distinct from genuine
/// compatibility failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("local system does not match the complex: dimension {k} carries data for {got} simplices, expected {want}")]
    StructureMismatch { k: usize, got: usize, want: usize },
    #[error("restriction to face {face} of {simplex:?} has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch {
        simplex: Vec<usize>,
        face: usize,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("incompatible restrictions on {simplex:?}: the composites through the faces dropping vertices {vi} and {vj} disagree")]
    Incompatible {
        simplex: Vec<usize>,
        vi: usize,
        vj: usize,
    },
}

/// A finite simplicial complex with ordered vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// `simplices[k]` lists the `k`-simplices as strictly increasing vertex
    /// tuples, sorted lexicographically. No trailing empty dimensions.
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of the given simplices. Input tuples may
    /// be unsorted; repeated vertices within a tuple are an error, and every
    /// face of every input simplex is added automatically.
    pub fn from_simplices(
        vertex_count: usize,
        simplices: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<SimplicialComplex, ComplexError> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for raw in simplices {
            if raw.is_empty() {
                return Err(ComplexError::EmptySimplex);
            }
            if let Some(&vertex) = raw.iter().find(|&&v| v >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange {
                    simplex: raw,
                    vertex,
                    vertex_count,
                });
            }
            let mut simplex = raw.clone();
            simplex.sort_unstable();
            if simplex.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::RepeatedVertex { simplex: raw });
            }
            // Downward closure: insert every nonempty subset.
            for size in 1..=simplex.len() {
                if by_dim.len() < size {
                    by_dim.resize(size, BTreeSet::new());
                }
                for face in simplex.iter().copied().combinations(size) {
                    by_dim[size - 1].insert(face);
                }
            }
        }
        while by_dim.last().is_some_and(|s| s.is_empty()) {
            by_dim.pop();
        }
        Ok(SimplicialComplex {
            vertex_count,
            simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// A graph as a 1-dimensional complex: every vertex (isolated or not) and
    /// every edge, in the graph's own canonical order.
    pub fn from_graph(graph: &Graph) -> SimplicialComplex {
        let singletons = (0..graph.vertex_count()).map(|v| vec![v]);
        let edges = graph.edges().iter().map(|&(u, v)| vec![u, v]);
        SimplicialComplex::from_simplices(graph.vertex_count(), singletons.chain(edges))
            .expect("graph simplices are valid")
    }

    /// The `n`-dimensional skeleton of the full simplex on `vertex_count`
    /// vertices: all subsets of size at most `n + 1`.
    pub fn skeleton(vertex_count: usize, n: usize) -> Result<SimplicialComplex, ComplexError> {
        if n >= vertex_count {
            return Err(ComplexError::SkeletonDimension { vertex_count, dim: n });
        }
        let mut count: u128 = 0;
        for size in 1..=n + 1 {
            count += binomial(vertex_count, size);
        }
        if count > SKELETON_SIMPLEX_CAP {
            return Err(ComplexError::SkeletonTooLarge {
                vertex_count,
                dim: n,
                count,
                cap: SKELETON_SIMPLEX_CAP,
            });
        }
        // Top-size subsets close downward to exactly the skeleton.
        SimplicialComplex::from_simplices(
            vertex_count,
            (0..vertex_count).combinations(n + 1),
        )
    }

    /// A seeded random complex for tests: every `(dim + 1)`-subset of the
    /// vertices is included independently with probability `fill`, all
    /// vertices are always present, and the result is closed downward.
    pub fn random(vertex_count: usize, dim: usize, fill: f64, seed: u64) -> SimplicialComplex {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut simplices: Vec<Vec<usize>> = (0..vertex_count).map(|v| vec![v]).collect();
        if dim < vertex_count {
            for subset in (0..vertex_count).combinations(dim + 1) {
                if rng.gen_bool(fill) {
                    simplices.push(subset);
                }
            }
        }
        SimplicialComplex::from_simplices(vertex_count, simplices)
            .expect("generated simplices are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Largest dimension with any simplex. A complex with no simplices at all
    /// reports dimension 0 (and every count 0).
    pub fn dimension(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    /// `f_k`: the number of `k`-simplices.
    pub fn face_count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    /// The `k`-simplices in canonical order (empty above the dimension).
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    /// Position of `simplex` (given as a strictly increasing tuple) among the
    /// `k`-simplices, where `k = simplex.len() - 1`.
    pub fn simplex_index(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.simplices
            .get(k)?
            .binary_search_by(|s| s.as_slice().cmp(simplex))
            .ok()
    }

    /// `sum_k (-1)^k f_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Serializes as a `dim <k_max>` header followed by one `s v0 v1 ... vk`
    /// line per simplex, dimensions ascending, lexicographic within each.
    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\n", self.dimension());
        for dim in &self.simplices {
            for simplex in dim {
                s.push('s');
                for v in simplex {
                    s.push_str(&format!(" {v}"));
                }
                s.push('\n');
            }
        }
        s
    }

    /// Parses the complex text format. Listed simplices are closed downward,
    /// so a file may list only the maximal ones. The declared dimension must
    /// match the result; the vertex count is inferred from the largest id.
    pub fn from_text(text: &str) -> Result<SimplicialComplex, ParseError> {
        let mut cursor = LineCursor::new(text);
        let header = cursor.expect_line("a `dim <k_max>` header")?;
        let Some(rest) = header.strip_prefix("dim ") else {
            return Err(ParseError::new(
                cursor.line_no(),
                format!("expected a `dim <k_max>` header, found {header:?}"),
            ));
        };
        let declared: usize = parse_fields(rest, cursor.line_no(), 1, "a `dim <k_max>` header")?[0];
        let mut simplices: Vec<Vec<usize>> = Vec::new();
        let mut max_vertex = None::<usize>;
        while let Some(line) = cursor.next_line() {
            if line.trim().is_empty() {
                continue;
            }
            let Some(rest) = line.strip_prefix("s ") else {
                return Err(ParseError::new(
                    cursor.line_no(),
                    format!("expected an `s v0 v1 ...` simplex line, found {line:?}"),
                ));
            };
            let vertices: Result<Vec<usize>, _> = rest
                .split_whitespace()
                .map(|f| {
                    f.parse::<usize>().map_err(|_| {
                        ParseError::new(cursor.line_no(), format!("invalid vertex id {f:?}"))
                    })
                })
                .collect();
            let vertices = vertices?;
            if vertices.is_empty() {
                return Err(ParseError::new(cursor.line_no(), "simplex line lists no vertices"));
            }
            max_vertex = max_vertex.max(vertices.iter().copied().max());
            simplices.push(vertices);
        }
        let vertex_count = max_vertex.map_or(0, |v| v + 1);
        let complex = SimplicialComplex::from_simplices(vertex_count, simplices)
            .map_err(|e| ParseError::new(cursor.line_no(), e))?;
        if complex.dimension() != declared || (complex.face_count(0) == 0 && declared != 0) {
            return Err(ParseError::new(
                1,
                format!(
                    "declared dimension {declared} does not match the simplices (dimension {})",
                    complex.dimension()
                ),
            ));
        }
        Ok(complex)
    }
}

/// `C(n, k)` without overflow at desk scale.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut out: u128 = 1;
    for i in 0..k.min(n - k) {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// The `i`-th face of a simplex: drop the `i`-th vertex.
fn face(simplex: &[usize], i: usize) -> Vec<usize> {
    let mut f = simplex.to_vec();
    f.remove(i);
    f
}

/// A local system of GF(2) vector spaces on a fixed complex: a dimension per
/// simplex and a restriction map per codimension-1 incidence.
///
/// The system stores data positionally in the complex's canonical simplex
/// order; it is only meaningful together with the complex it was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSystem {
    /// `dims[k][s]`: coefficient dimension of the `s`-th `k`-simplex.
    dims: Vec<Vec<usize>>,
    /// `maps[k - 1][s][i]`: the restriction from the `s`-th `k`-simplex to
    /// its `i`-th face, of shape `dim F(face) x dim F(simplex)`.
    maps: Vec<Vec<Vec<BitMatrix>>>,
}

impl LocalSystem {
    /// Builds a system and checks its data lines up with the complex: one
    /// dimension per simplex, one map per face incidence, every map of shape
    /// `dim F(face) x dim F(simplex)`. (Compatibility of composites is the
    /// separate, semantic check: [`validate_local_system`].)
    pub fn new(
        complex: &SimplicialComplex,
        dims: Vec<Vec<usize>>,
        maps: Vec<Vec<Vec<BitMatrix>>>,
    ) -> Result<LocalSystem, SystemError> {
        let system = LocalSystem { dims, maps };
        system.check_shapes(complex)?;
        Ok(system)
    }

    fn check_shapes(&self, complex: &SimplicialComplex) -> Result<(), SystemError> {
        let top = complex.dimension();
        for k in 0..=top {
            let got = self.dims.get(k).map_or(0, Vec::len);
            if got != complex.face_count(k) {
                return Err(SystemError::StructureMismatch {
                    k,
                    got,
                    want: complex.face_count(k),
                });
            }
        }
        if self.dims.len() > top + 1 && self.dims[top + 1..].iter().any(|d| !d.is_empty()) {
            return Err(SystemError::StructureMismatch {
                k: top + 1,
                got: self.dims[top + 1].len(),
                want: 0,
            });
        }
        for k in 1..=top {
            let got = self.maps.get(k - 1).map_or(0, Vec::len);
            if got != complex.face_count(k) {
                return Err(SystemError::StructureMismatch {
                    k,
                    got,
                    want: complex.face_count(k),
                });
            }
            for (s, simplex) in complex.simplices(k).iter().enumerate() {
                if self.maps[k - 1][s].len() != k + 1 {
                    return Err(SystemError::StructureMismatch {
                        k,
                        got: self.maps[k - 1][s].len(),
                        want: k + 1,
                    });
                }
                for i in 0..=k {
                    let t = complex
                        .simplex_index(&face(simplex, i))
                        .expect("complex is downward closed");
                    let m = &self.maps[k - 1][s][i];
                    let (want_rows, want_cols) = (self.dims[k - 1][t], self.dims[k][s]);
                    if m.rows() != want_rows || m.cols() != want_cols {
                        return Err(SystemError::ShapeMismatch {
                            simplex: simplex.clone(),
                            face: i,
                            got_rows: m.rows(),
                            got_cols: m.cols(),
                            want_rows,
                            want_cols,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The constant system: every `F(s) = F_2^m`, every restriction the
    /// identity.
    pub fn constant(complex: &SimplicialComplex, m: usize) -> LocalSystem {
        let top = complex.dimension();
        let dims = (0..=top)
            .map(|k| vec![m; complex.face_count(k)])
            .collect();
        let maps = (1..=top)
            .map(|k| {
                (0..complex.face_count(k))
                    .map(|_| vec![BitMatrix::identity(m); k + 1])
                    .collect()
            })
            .collect();
        LocalSystem { dims, maps }
    }

    /// Coefficient dimension at the `s`-th `k`-simplex.
    pub fn dim_at(&self, k: usize, s: usize) -> usize {
        self.dims[k][s]
    }

    /// The restriction from the `s`-th `k`-simplex to its `i`-th face.
    pub fn restriction(&self, k: usize, s: usize, i: usize) -> &BitMatrix {
        &self.maps[k - 1][s][i]
    }

    /// Total dimension of the chain group `C_k` (0 above the top dimension).
    pub fn chain_dim(&self, k: usize) -> usize {
        self.dims.get(k).map_or(0, |d| d.iter().sum())
    }

    /// Starting offset of each simplex's coefficient block within `C_k`.
    pub fn block_offsets(&self, k: usize) -> Vec<usize> {
        let mut offsets = Vec::new();
        let mut total = 0;
        for &d in self.dims.get(k).map_or(&[] as &[usize], Vec::as_slice) {
            offsets.push(total);
            total += d;
        }
        offsets
    }

    /// Serializes against the complex: `system <k_max>`, one `d <k> <dims...>`
    /// line per dimension, then every restriction as an `r <k> <s> <i>` block
    /// followed by the matrix text, all in canonical order.
    pub fn to_text(&self, complex: &SimplicialComplex) -> String {
        let top = complex.dimension();
        let mut out = format!("system {top}\n");
        for k in 0..=top {
            out.push_str(&format!("d {k}"));
            for &d in &self.dims[k] {
                out.push_str(&format!(" {d}"));
            }
            out.push('\n');
        }
        for k in 1..=top {
            for s in 0..complex.face_count(k) {
                for i in 0..=k {
                    out.push_str(&format!("r {k} {s} {i}\n"));
                    out.push_str(&self.maps[k - 1][s][i].to_text());
                }
            }
        }
        out
    }

    /// Parses the format written by [`LocalSystem::to_text`]; the blocks must
    /// appear in canonical order, and the shapes must match the complex.
    pub fn from_text(complex: &SimplicialComplex, text: &str) -> Result<LocalSystem, ParseError> {
        let mut cursor = LineCursor::new(text);
        let header = cursor.expect_line("a `system <k_max>` header")?;
        let Some(rest) = header.strip_prefix("system ") else {
            return Err(ParseError::new(
                cursor.line_no(),
                format!("expected a `system <k_max>` header, found {header:?}"),
            ));
        };
        let top: usize = parse_fields(rest, cursor.line_no(), 1, "a `system <k_max>` header")?[0];
        if top != complex.dimension() {
            return Err(ParseError::new(
                cursor.line_no(),
                format!(
                    "system dimension {top} does not match the complex dimension {}",
                    complex.dimension()
                ),
            ));
        }
        let mut dims: Vec<Vec<usize>> = Vec::new();
        for k in 0..=top {
            let line = cursor.expect_line("a `d <k> <dims...>` line")?;
            let fields: Vec<usize> = parse_fields(
                line.strip_prefix("d ").ok_or_else(|| {
                    ParseError::new(
                        cursor.line_no(),
                        format!("expected a `d <k> <dims...>` line, found {line:?}"),
                    )
                })?,
                cursor.line_no(),
                1 + complex.face_count(k),
                "a `d <k> <dims...>` line with one dimension per simplex",
            )?;
            if fields[0] != k {
                return Err(ParseError::new(
                    cursor.line_no(),
                    format!("expected dimensions for k = {k}, found k = {}", fields[0]),
                ));
            }
            dims.push(fields[1..].to_vec());
        }
        let mut maps: Vec<Vec<Vec<BitMatrix>>> = Vec::new();
        for k in 1..=top {
            let mut per_simplex = Vec::new();
            for s in 0..complex.face_count(k) {
                let mut per_face = Vec::new();
                for i in 0..=k {
                    let line = cursor.expect_line("an `r <k> <s> <i>` block")?;
                    let fields: Vec<usize> = parse_fields(
                        line.strip_prefix("r ").ok_or_else(|| {
                            ParseError::new(
                                cursor.line_no(),
                                format!("expected an `r <k> <s> <i>` line, found {line:?}"),
                            )
                        })?,
                        cursor.line_no(),
                        3,
                        "an `r <k> <s> <i>` line",
                    )?;
                    if fields != [k, s, i] {
                        return Err(ParseError::new(
                            cursor.line_no(),
                            format!("expected block `r {k} {s} {i}`, found `r {} {} {}`", fields[0], fields[1], fields[2]),
                        ));
                    }
                    per_face.push(parse_matrix_body(&mut cursor)?);
                }
                per_simplex.push(per_face);
            }
            maps.push(per_simplex);
        }
        let end = cursor.line_no();
        cursor.expect_end()?;
        LocalSystem::new(complex, dims, maps).map_err(|e| ParseError::new(end, e))
    }
}

/// Checks the compatibility law: for every simplex of dimension at least 2
/// and every pair of its codimension-1 faces, the two composites down to the
/// shared codimension-2 face agree. Shape problems surface first, as their
/// own error variants.
pub fn validate_local_system(
    complex: &SimplicialComplex,
    system: &LocalSystem,
) -> Result<(), SystemError> {
    system.check_shapes(complex)?;
    for k in 2..=complex.dimension() {
        for (s, simplex) in complex.simplices(k).iter().enumerate() {
            for j in 0..=k {
                for i in 0..j {
                    // Removing vertex i then j (or j then i) lands on the same
                    // codimension-2 face; with i < j, vertex j sits at index
                    // j - 1 after vertex i is gone.
                    let t_i = complex
                        .simplex_index(&face(simplex, i))
                        .expect("complex is downward closed");
                    let t_j = complex
                        .simplex_index(&face(simplex, j))
                        .expect("complex is downward closed");
                    let via_i = system
                        .restriction(k - 1, t_i, j - 1)
                        .mul(system.restriction(k, s, i));
                    let via_j = system
                        .restriction(k - 1, t_j, i)
                        .mul(system.restriction(k, s, j));
                    if via_i != via_j {
                        return Err(SystemError::Incompatible {
                            simplex: simplex.clone(),
                            vi: simplex[i],
                            vj: simplex[j],
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// The twisted boundary matrix `d_k : C_k -> C_{k-1}`: the block at (face
/// `s_i`, simplex `s`) is the restriction map, and the GF(2) signs are 1.
///
/// # Panics
///
/// Panics if the system's shapes do not match the complex (construct the
/// system through [`LocalSystem::new`] to rule that out).
pub fn boundary_matrix(
    complex: &SimplicialComplex,
    system: &LocalSystem,
    k: usize,
) -> Result<BitMatrix, ComplexError> {
    if k < 1 || k > complex.dimension() {
        return Err(ComplexError::DimensionOutOfRange {
            requested: k,
            dimension: complex.dimension(),
        });
    }
    let row_offsets = system.block_offsets(k - 1);
    let col_offsets = system.block_offsets(k);
    let mut m = BitMatrix::zeros(system.chain_dim(k - 1), system.chain_dim(k));
    for (s, simplex) in complex.simplices(k).iter().enumerate() {
        for i in 0..=k {
            let t = complex
                .simplex_index(&face(simplex, i))
                .expect("complex is downward closed");
            m.write_block(row_offsets[t], col_offsets[s], system.restriction(k, s, i));
        }
    }
    Ok(m)
}

/// Boundary matrix extended to every degree: the zero map below degree 1 and
/// above the top dimension, with the correct chain-group shapes.
fn boundary_or_zero(complex: &SimplicialComplex, system: &LocalSystem, k: usize) -> BitMatrix {
    if k < 1 || k > complex.dimension() {
        let rows = if k >= 1 { system.chain_dim(k - 1) } else { 0 };
        BitMatrix::zeros(rows, system.chain_dim(k))
    } else {
        boundary_matrix(complex, system, k).expect("k is within range")
    }
}

/// Homology in one degree: its dimension and a basis of representative
/// cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub dimension: usize,
    /// Cycles whose classes form a basis: kernel basis vectors of `d_k` that
    /// are independent modulo the image of `d_{k+1}`.
    pub representatives: Vec<BitVector>,
}

/// Computes `H_k = ker d_k / im d_{k+1}` after validating the system.
/// `k` above the top dimension is legal and gives the zero space.
pub fn homology(
    complex: &SimplicialComplex,
    system: &LocalSystem,
    k: usize,
) -> Result<HomologySummary, SystemError> {
    validate_local_system(complex, system)?;
    let kernel = boundary_or_zero(complex, system, k).kernel_basis();
    let image = boundary_or_zero(complex, system, k + 1).column_space_basis();
    let mut spanned = image.clone();
    let mut representatives = Vec::new();
    for z in kernel {
        if !in_span(&spanned, &z) {
            spanned.push(z.clone());
            representatives.push(z);
        }
    }
    // d d = 0 puts the image inside the kernel, so the greedy sweep finds
    // exactly dim ker - rank d_{k+1} independent classes.
    let dimension = representatives.len();
    Ok(HomologySummary {
        dimension,
        representatives,
    })
}

/// The homological code in degree `n` with constant `F_2` coefficients:
/// homology classes written out in the `f_n` simplex coordinates. In the top
/// dimension the image vanishes and the code is exactly `ker d_n`.
pub fn homology_code(
    complex: &SimplicialComplex,
    n: usize,
) -> Result<LinearCode, ComplexError> {
    if n > complex.dimension() {
        return Err(ComplexError::DimensionOutOfRange {
            requested: n,
            dimension: complex.dimension(),
        });
    }
    let system = LocalSystem::constant(complex, 1);
    let summary = homology(complex, &system, n).expect("constant system is compatible");
    Ok(LinearCode::from_generator(BitMatrix::from_rows(
        complex.face_count(n),
        &summary.representatives,
    )))
}

/// A seeded test-instance generator: every `F(s) = F_2^m` but expressed in a
/// random basis `g_s` per simplex, so the restriction from `s` up in a
/// simplex `t` is `g_s^{-1} g_t`. All composites collapse to the same form,
/// so compatibility holds by construction, and homology dimensions agree with
/// the constant system's.
pub fn gauge_local_system(complex: &SimplicialComplex, m: usize, seed: u64) -> LocalSystem {
    assert!(m >= 1, "gauge system needs coefficient dimension at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = complex.dimension();
    let mut gauges: Vec<Vec<BitMatrix>> = Vec::new();
    let mut inverses: Vec<Vec<BitMatrix>> = Vec::new();
    for k in 0..=top {
        let mut at_dim = Vec::new();
        let mut inv_at_dim = Vec::new();
        for _ in 0..complex.face_count(k) {
            let (g, inv) = loop {
                let g = random_matrix(m, m, &mut rng);
                if let Some(inv) = g.inverse() {
                    break (g, inv);
                }
            };
            at_dim.push(g);
            inv_at_dim.push(inv);
        }
        gauges.push(at_dim);
        inverses.push(inv_at_dim);
    }
    let dims = (0..=top)
        .map(|k| vec![m; complex.face_count(k)])
        .collect();
    let maps = (1..=top)
        .map(|k| {
            complex
                .simplices(k)
                .iter()
                .enumerate()
                .map(|(s, simplex)| {
                    (0..=k)
                        .map(|i| {
                            let t = complex
                                .simplex_index(&face(simplex, i))
                                .expect("complex is downward closed");
                            inverses[k - 1][t].mul(&gauges[k][s])
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    LocalSystem { dims, maps }
}

/// A chain in `C_k`: per-simplex coefficient vectors concatenated in
/// canonical simplex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedChain {
    degree: usize,
    coords: BitVector,
}

impl TwistedChain {
    /// # Panics
    ///
    /// Panics if `coords.len()` differs from the chain-group dimension.
    pub fn new(system: &LocalSystem, degree: usize, coords: BitVector) -> TwistedChain {
        assert_eq!(
            coords.len(),
            system.chain_dim(degree),
            "chain coordinates do not fill the degree-{degree} chain group"
        );
        TwistedChain { degree, coords }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &BitVector {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// The coefficient block of the `s`-th `k`-simplex.
    pub fn block(&self, system: &LocalSystem, s: usize) -> BitVector {
        let offset = system.block_offsets(self.degree)[s];
        let dim = system.dim_at(self.degree, s);
        BitVector::from_bits((offset..offset + dim).map(|i| self.coords.get(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_simplices(3, [vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn filled_triangle() -> SimplicialComplex {
        SimplicialComplex::from_simplices(3, [vec![0, 1, 2]]).unwrap()
    }

    /// Boundary of the 3-simplex: all faces of {0,1,2,3} except the solid
    /// tetrahedron itself — a triangulated 2-sphere.
    fn sphere() -> SimplicialComplex {
        SimplicialComplex::from_simplices(
            4,
            (0..4usize).combinations(3),
        )
        .unwrap()
    }

    #[test]
    fn closure_adds_faces() {
        let t = filled_triangle();
        assert_eq!(t.dimension(), 2);
        assert_eq!((t.face_count(0), t.face_count(1), t.face_count(2)), (3, 3, 1));
        assert_eq!(t.simplices(1), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(t.simplex_index(&[0, 2]), Some(1));
        assert_eq!(t.simplex_index(&[0, 3]), None);
    }

    #[test]
    fn from_simplices_rejects_bad_input() {
        assert!(matches!(
            SimplicialComplex::from_simplices(2, [vec![0, 2]]),
            Err(ComplexError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            SimplicialComplex::from_simplices(3, [vec![1, 1]]),
            Err(ComplexError::RepeatedVertex { .. })
        ));
        assert!(matches!(
            SimplicialComplex::from_simplices(3, [vec![]]),
            Err(ComplexError::EmptySimplex)
        ));
    }

    #[test]
    fn skeleton_counts() {
        let k4 = SimplicialComplex::skeleton(4, 1).unwrap();
        assert_eq!((k4.face_count(0), k4.face_count(1)), (4, 6));
        assert_eq!(SimplicialComplex::skeleton(4, 2).unwrap().face_count(2), 4);
        assert_eq!(SimplicialComplex::skeleton(5, 2).unwrap().face_count(2), 10);
        assert!(matches!(
            SimplicialComplex::skeleton(3, 3),
            Err(ComplexError::SkeletonDimension { .. })
        ));
        assert!(matches!(
            SimplicialComplex::skeleton(500, 3),
            Err(ComplexError::SkeletonTooLarge { .. })
        ));
    }

    #[test]
    fn graph_complex_preserves_edge_order() {
        let g = Graph::petersen();
        let x = SimplicialComplex::from_graph(&g);
        assert_eq!(x.dimension(), 1);
        assert_eq!(x.face_count(0), 10);
        let edges: Vec<(usize, usize)> = x.simplices(1).iter().map(|e| (e[0], e[1])).collect();
        assert_eq!(edges.as_slice(), g.edges());
        // Isolated vertices still appear as 0-simplices.
        let lonely = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(SimplicialComplex::from_graph(&lonely).face_count(0), 3);
    }

    #[test]
    fn constant_boundary_is_incidence_matrix() {
        let g = Graph::complete(4);
        let x = SimplicialComplex::from_graph(&g);
        let f = LocalSystem::constant(&x, 1);
        let d1 = boundary_matrix(&x, &f, 1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (4, 6));
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let col = d1.column(e);
            assert_eq!(col.ones().collect::<Vec<_>>(), vec![u, v]);
        }
    }

    #[test]
    fn homology_of_small_complexes() {
        let f = LocalSystem::constant(&hollow_triangle(), 1);
        let h1 = homology(&hollow_triangle(), &f, 1).unwrap();
        assert_eq!(h1.dimension, 1);
        assert_eq!(h1.representatives[0].weight(), 3);

        let f = LocalSystem::constant(&filled_triangle(), 1);
        assert_eq!(homology(&filled_triangle(), &f, 1).unwrap().dimension, 0);
        assert_eq!(homology(&filled_triangle(), &f, 0).unwrap().dimension, 1);

        let f = LocalSystem::constant(&sphere(), 1);
        assert_eq!(homology(&sphere(), &f, 2).unwrap().dimension, 1);
        assert_eq!(homology(&sphere(), &f, 1).unwrap().dimension, 0);
        // Above the top dimension the chain group is zero.
        assert_eq!(homology(&sphere(), &f, 5).unwrap().dimension, 0);
    }

    #[test]
    fn representatives_are_cycles() {
        let x = SimplicialComplex::random(8, 2, 0.4, 3);
        let f = LocalSystem::constant(&x, 2);
        for k in 0..=2 {
            let summary = homology(&x, &f, k).unwrap();
            let d = boundary_or_zero(&x, &f, k);
            for z in &summary.representatives {
                assert!(d.mul_vec(z).is_zero());
            }
        }
    }

    #[test]
    fn homology_code_examples() {
        let code = homology_code(&sphere(), 2).unwrap();
        assert_eq!((code.length(), code.dimension()), (4, 1));
        assert_eq!(code.min_distance_bruteforce(26).unwrap(), 4);

        let k4 = SimplicialComplex::from_graph(&Graph::complete(4));
        let code = homology_code(&k4, 1).unwrap();
        assert_eq!((code.length(), code.dimension()), (6, 3));

        assert!(matches!(
            homology_code(&k4, 2),
            Err(ComplexError::DimensionOutOfRange { .. })
        ));
    }

    #[test]
    fn validate_catches_flipped_map() {
        let x = filled_triangle();
        let mut f = LocalSystem::constant(&x, 1);
        assert!(validate_local_system(&x, &f).is_ok());
        // Zero out one edge-to-vertex restriction: the square through that
        // edge no longer commutes.
        f.maps[0][0][0] = BitMatrix::zeros(1, 1);
        assert!(matches!(
            validate_local_system(&x, &f),
            Err(SystemError::Incompatible { .. })
        ));
    }

    #[test]
    fn shape_mismatch_is_distinct_from_incompatibility() {
        let x = filled_triangle();
        let mut f = LocalSystem::constant(&x, 1);
        f.maps[0][0][0] = BitMatrix::zeros(2, 1);
        assert!(matches!(
            validate_local_system(&x, &f),
            Err(SystemError::ShapeMismatch { .. })
        ));
        let g = LocalSystem::constant(&hollow_triangle(), 1);
        assert!(matches!(
            validate_local_system(&x, &g),
            Err(SystemError::StructureMismatch { .. })
        ));
    }

    #[test]
    fn zero_dimensional_coefficients_are_legal() {
        let x = hollow_triangle();
        // Kill the space at vertex 0; edges keep F_2 but their restriction to
        // vertex 0 becomes the 0x1 map.
        let dims = vec![vec![0, 1, 1], vec![1, 1, 1]];
        let maps = vec![x
            .simplices(1)
            .iter()
            .map(|e| {
                (0..=1)
                    .map(|i| {
                        let rows = if face(e, i) == vec![0] { 0 } else { 1 };
                        BitMatrix::from_fn(rows, 1, |_, _| true)
                    })
                    .collect()
            })
            .collect()];
        let f = LocalSystem::new(&x, dims, maps).unwrap();
        assert_eq!(f.chain_dim(0), 2);
        let d1 = boundary_matrix(&x, &f, 1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (2, 3));
        // Two surviving constraints on three edges: the kernel is the
        // all-edges cycle, dimension 1.
        assert_eq!(homology(&x, &f, 1).unwrap().dimension, 1);
    }

    #[test]
    fn gauge_system_properties() {
        let x = SimplicialComplex::random(7, 2, 0.5, 11);
        for m in 1..=3 {
            let f = gauge_local_system(&x, m, 99 + m as u64);
            assert!(validate_local_system(&x, &f).is_ok());
            let d1 = boundary_or_zero(&x, &f, 1);
            let d2 = boundary_or_zero(&x, &f, 2);
            assert!(d1.mul(&d2).is_zero());
            let constant = LocalSystem::constant(&x, m);
            for k in 0..=2 {
                assert_eq!(
                    homology(&x, &f, k).unwrap().dimension,
                    homology(&x, &constant, k).unwrap().dimension
                );
            }
        }
        // m = 1: the only invertible 1x1 matrix is the identity, so the gauge
        // system is literally the constant one.
        let f = gauge_local_system(&x, 1, 5);
        assert_eq!(f, LocalSystem::constant(&x, 1));
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        for seed in 0..5 {
            let x = SimplicialComplex::random(7, 2, 0.45, seed);
            let f = LocalSystem::constant(&x, 1);
            let betti: i64 = (0..=x.dimension())
                .map(|k| {
                    let h = homology(&x, &f, k).unwrap().dimension as i64;
                    if k % 2 == 0 { h } else { -h }
                })
                .sum();
            assert_eq!(betti, x.euler_characteristic());
        }
    }

    #[test]
    fn boundary_matrix_rejects_out_of_range_degree() {
        let x = hollow_triangle();
        let f = LocalSystem::constant(&x, 1);
        assert!(matches!(
            boundary_matrix(&x, &f, 2),
            Err(ComplexError::DimensionOutOfRange { .. })
        ));
        assert!(boundary_matrix(&x, &f, 1).is_ok());
    }

    #[test]
    fn chain_blocks() {
        let x = hollow_triangle();
        let f = LocalSystem::constant(&x, 2);
        let chain = TwistedChain::new(&f, 1, BitVector::from_support(6, &[2, 5]));
        assert_eq!(chain.block(&f, 0), BitVector::zeros(2));
        assert_eq!(chain.block(&f, 1), BitVector::from_support(2, &[0]));
        assert_eq!(chain.block(&f, 2), BitVector::from_support(2, &[1]));
    }

    #[test]
    fn complex_text_round_trip() {
        let x = sphere();
        let text = x.to_text();
        assert!(text.starts_with("dim 2\ns 0\n"));
        assert_eq!(SimplicialComplex::from_text(&text).unwrap(), x);
        // Maximal simplices alone reconstruct the complex via closure.
        let maximal = "dim 2\ns 0 1 2\ns 0 1 3\ns 0 2 3\ns 1 2 3\n";
        assert_eq!(SimplicialComplex::from_text(maximal).unwrap(), x);
        assert!(SimplicialComplex::from_text("dim 1\ns 0 1 2\n").is_err());
        assert!(SimplicialComplex::from_text("simplices\n").is_err());
    }

    #[test]
    fn system_text_round_trip() {
        let x = SimplicialComplex::random(6, 2, 0.5, 21);
        let f = gauge_local_system(&x, 2, 22);
        let text = f.to_text(&x);
        assert_eq!(LocalSystem::from_text(&x, &text).unwrap(), f);
        // Parsing against a complex with different face counts fails.
        assert!(LocalSystem::from_text(&hollow_triangle(), &text).is_err());
    }
}
