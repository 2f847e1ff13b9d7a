//! Graph codes and their homological realization.
//!
//! Given a graph and a local code at every vertex, the graph code is the set
//! of edge labellings whose restriction to each vertex's incident edges (in
//! ascending neighbor order) is a local codeword — equivalently, the kernel
//! of a parity-check matrix stacking one block of rows per vertex.
//!
//! The same data defines a local system on the graph: vertex `u` carries the
//! column space of its parity-check matrix `A_u` (in the fixed basis of its
//! pivot columns), each edge carries `F_2`, and the restriction from edge
//! `uv` down to `u` sends the edge generator to `w_uv`, the column of `A_u`
//! for neighbor `v`. A labelling is a codeword exactly when its twisted
//! boundary vanishes, so the graph code *is* the first homology of this
//! system — [`verify_proposition`] checks that equality literally, as
//! subspaces of `F_2^E` in the same edge coordinates.
//!
//! [`report`] packages the measured parameters together with the spectral
//! rate bound `2r - 1` and distance bound `((delta - lambda/d)/(1 -
//! lambda/d))^2` for `d`-regular instances.

use serde::Serialize;
use thiserror::Error;

use crate::codes::{CodeError, DEFAULT_DISTANCE_CAP};
use crate::gf2::{in_span, solve, BitMatrix, BitVector};
use crate::homology::boundary_matrix;
use crate::textio::{parse_fields, LineCursor};
use crate::{
    rational_string, Graph, LinearCode, LocalSystem, ParseError, Rational, SimplicialComplex,
    TwistedChain,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RealizationError {
    #[error("assignment covers {got} vertices, graph has {want}")]
    VertexCountMismatch { got: usize, want: usize },
    #[error("vertex {vertex}: local code has length {got}, but the degree is {want}")]
    LengthMismatch {
        vertex: usize,
        got: usize,
        want: usize,
    },
    #[error("vertex {vertex}: {source}")]
    LocalCode { vertex: usize, source: CodeError },
    #[error("graph has no edges, so the graph code would have length 0")]
    NoEdges,
    #[error("distance bound needs lambda < d, got lambda = {lambda}, d = {degree}")]
    LambdaTooLarge { lambda: f64, degree: usize },
}

/// One parity-check matrix per vertex; columns are indexed by the neighbors
/// in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCodeAssignment {
    parity_checks: Vec<BitMatrix>,
}

impl LocalCodeAssignment {
    pub fn new(parity_checks: Vec<BitMatrix>) -> LocalCodeAssignment {
        LocalCodeAssignment { parity_checks }
    }

    pub fn vertex_count(&self) -> usize {
        self.parity_checks.len()
    }

    /// The parity-check matrix at `u`, exactly as supplied.
    pub fn parity_check(&self, u: usize) -> &BitMatrix {
        &self.parity_checks[u]
    }

    /// The local code at `u`.
    pub fn local_code(&self, u: usize) -> LinearCode {
        LinearCode::from_parity_check(self.parity_checks[u].clone())
    }

    /// The even-weight (single parity check) code at every vertex.
    pub fn uniform_parity(graph: &Graph) -> LocalCodeAssignment {
        let checks = (0..graph.vertex_count())
            .map(|u| BitMatrix::from_fn(1, graph.degree(u), |_, _| true))
            .collect();
        LocalCodeAssignment::new(checks)
    }

    /// The `[7, 4, 3]` Hamming code at every vertex; the graph must be
    /// 7-regular.
    pub fn uniform_hamming74(graph: &Graph) -> Result<LocalCodeAssignment, RealizationError> {
        let hamming = LinearCode::hamming_7_4();
        let checks = (0..graph.vertex_count())
            .map(|u| {
                if graph.degree(u) != 7 {
                    return Err(RealizationError::LengthMismatch {
                        vertex: u,
                        got: 7,
                        want: graph.degree(u),
                    });
                }
                Ok(hamming.parity_check().clone())
            })
            .collect::<Result<_, _>>()?;
        Ok(LocalCodeAssignment::new(checks))
    }

    /// An independent random code of dimension `dim` at every vertex (seeded,
    /// deterministic). Every degree must be at least `dim`.
    pub fn uniform_random(
        graph: &Graph,
        dim: usize,
        seed: u64,
    ) -> Result<LocalCodeAssignment, RealizationError> {
        use rand::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let checks = (0..graph.vertex_count())
            .map(|u| {
                let code = LinearCode::random_code(graph.degree(u), dim, rng.next_u64())
                    .map_err(|source| RealizationError::LocalCode { vertex: u, source })?;
                Ok(code.parity_check().clone())
            })
            .collect::<Result<_, _>>()?;
        Ok(LocalCodeAssignment::new(checks))
    }

    /// Serializes as one `v <u> <rows> <cols>` block per vertex followed by
    /// the parity matrix rows, vertices ascending.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (u, h) in self.parity_checks.iter().enumerate() {
            s.push_str(&format!("v {u} {}", h.to_text()));
        }
        s
    }

    /// Parses the assignment format. Every vertex `0..count` must appear
    /// exactly once (any order).
    pub fn from_text(text: &str) -> Result<LocalCodeAssignment, ParseError> {
        let mut cursor = LineCursor::new(text);
        let mut entries: Vec<(usize, BitMatrix, usize)> = Vec::new();
        while let Some(line) = cursor.next_line() {
            if line.trim().is_empty() {
                continue;
            }
            let Some(rest) = line.strip_prefix("v ") else {
                return Err(ParseError::new(
                    cursor.line_no(),
                    format!("expected a `v <u> <rows> <cols>` line, found {line:?}"),
                ));
            };
            let line_no = cursor.line_no();
            let fields: Vec<usize> =
                parse_fields(rest, line_no, 3, "a `v <u> <rows> <cols>` line")?;
            let (u, rows, cols) = (fields[0], fields[1], fields[2]);
            let mut matrix_text = format!("{rows} {cols}\n");
            for _ in 0..rows {
                matrix_text.push_str(cursor.expect_line("a parity matrix row")?);
                matrix_text.push('\n');
            }
            // Re-parse through the matrix reader for uniform error handling.
            let h = BitMatrix::from_text(&matrix_text)
                .map_err(|e| ParseError::new(line_no + e.line - 1, e.message))?;
            entries.push((u, h, line_no));
        }
        entries.sort_by_key(|&(u, _, _)| u);
        let mut checks = Vec::with_capacity(entries.len());
        for (expected, (u, h, line_no)) in entries.into_iter().enumerate() {
            if u != expected {
                return Err(ParseError::new(
                    line_no,
                    format!("vertices must cover 0..count exactly once; problem at vertex {u}"),
                ));
            }
            checks.push(h);
        }
        Ok(LocalCodeAssignment::new(checks))
    }
}

/// A graph code together with its homological realization, built eagerly so
/// that every view (stacked parity matrix, derived code, local system, first
/// boundary map) refers to the same canonical edge coordinates.
#[derive(Debug, Clone)]
pub struct GraphCodeInstance {
    graph: Graph,
    assignment: LocalCodeAssignment,
    stacked_parity: BitMatrix,
    code: LinearCode,
    complex: SimplicialComplex,
    system: LocalSystem,
    boundary_1: BitMatrix,
}

impl GraphCodeInstance {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn assignment(&self) -> &LocalCodeAssignment {
        &self.assignment
    }

    /// The global parity-check matrix: one row block per vertex (all rows of
    /// `A_u`, spread over the incident edge columns), `|E|` columns.
    pub fn stacked_parity(&self) -> &BitMatrix {
        &self.stacked_parity
    }

    /// The graph code: kernel of the stacked parity matrix.
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// The graph as a 1-dimensional complex (canonical orders shared with
    /// [`Graph::edges`]).
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// The local system realizing the code homologically.
    pub fn system(&self) -> &LocalSystem {
        &self.system
    }

    /// The twisted boundary map from edge chains to vertex chains.
    pub fn boundary_1(&self) -> &BitMatrix {
        &self.boundary_1
    }
}

fn check_lengths(graph: &Graph, assignment: &LocalCodeAssignment) -> Result<(), RealizationError> {
    if assignment.vertex_count() != graph.vertex_count() {
        return Err(RealizationError::VertexCountMismatch {
            got: assignment.vertex_count(),
            want: graph.vertex_count(),
        });
    }
    for u in 0..graph.vertex_count() {
        let got = assignment.parity_check(u).cols();
        if got != graph.degree(u) {
            return Err(RealizationError::LengthMismatch {
                vertex: u,
                got,
                want: graph.degree(u),
            });
        }
    }
    Ok(())
}

/// Builds the graph code and its homological realization.
pub fn build_graph_code(
    graph: Graph,
    assignment: LocalCodeAssignment,
) -> Result<GraphCodeInstance, RealizationError> {
    check_lengths(&graph, &assignment)?;
    let edge_count = graph.edge_count();
    let row_counts: Vec<usize> = (0..graph.vertex_count())
        .map(|u| assignment.parity_check(u).rows())
        .collect();
    let mut row_offset = vec![0usize; graph.vertex_count()];
    for u in 1..graph.vertex_count() {
        row_offset[u] = row_offset[u - 1] + row_counts[u - 1];
    }
    let total_rows: usize = row_counts.iter().sum();
    let mut stacked = BitMatrix::zeros(total_rows, edge_count);
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        for (u, v) in [(a, b), (b, a)] {
            let j = graph
                .neighbors(u)
                .binary_search(&v)
                .expect("edge endpoint is a neighbor");
            let h = assignment.parity_check(u);
            for r in 0..h.rows() {
                if h.get(r, j) {
                    stacked.set(row_offset[u] + r, e, true);
                }
            }
        }
    }
    let code = LinearCode::from_parity_check(stacked.clone());
    let (complex, system) = build_local_system(&graph, &assignment)?;
    let boundary_1 = if edge_count > 0 {
        boundary_matrix(&complex, &system, 1).expect("graph with edges has dimension 1")
    } else {
        BitMatrix::zeros(system.chain_dim(0), 0)
    };
    Ok(GraphCodeInstance {
        graph,
        assignment,
        stacked_parity: stacked,
        code,
        complex,
        system,
        boundary_1,
    })
}

/// Builds the local system of the construction: `F(u)` is the column space
/// of `A_u` in the basis of its pivot columns, `F(uv) = F_2`, and the
/// restriction from edge `uv` to `u` is the coordinate vector of the column
/// `w_uv` in that basis.
pub fn build_local_system(
    graph: &Graph,
    assignment: &LocalCodeAssignment,
) -> Result<(SimplicialComplex, LocalSystem), RealizationError> {
    check_lengths(graph, assignment)?;
    let n = graph.vertex_count();
    let complex = SimplicialComplex::from_graph(graph);
    let mut vertex_dims = Vec::with_capacity(n);
    let mut basis_matrices = Vec::with_capacity(n);
    for u in 0..n {
        let basis = assignment.parity_check(u).column_space_basis();
        let rows = assignment.parity_check(u).rows();
        let mut b = BitMatrix::zeros(rows, basis.len());
        for (c, col) in basis.iter().enumerate() {
            for r in col.ones() {
                b.set(r, c, true);
            }
        }
        vertex_dims.push(basis.len());
        basis_matrices.push(b);
    }
    let edge_maps: Vec<Vec<BitMatrix>> = graph
        .edges()
        .iter()
        .map(|&(a, b)| {
            // Edge simplex [a, b] with a < b: face 0 drops a (lands on b),
            // face 1 drops b (lands on a).
            [b, a]
                .into_iter()
                .map(|endpoint| {
                    let other = if endpoint == a { b } else { a };
                    let j = graph
                        .neighbors(endpoint)
                        .binary_search(&other)
                        .expect("edge endpoint is a neighbor");
                    let w = assignment.parity_check(endpoint).column(j);
                    let coords = solve(&basis_matrices[endpoint], &w)
                        .expect("columns of A_u lie in the column space of A_u");
                    BitMatrix::from_fn(vertex_dims[endpoint], 1, |r, _| coords.get(r))
                })
                .collect()
        })
        .collect();
    // An edgeless graph is a 0-dimensional complex: no edge layer at all.
    let (dims, maps) = if graph.edge_count() == 0 {
        (vec![vertex_dims], vec![])
    } else {
        (vec![vertex_dims, vec![1; graph.edge_count()]], vec![edge_maps])
    };
    let system = LocalSystem::new(&complex, dims, maps).expect("shapes hold by construction");
    Ok((complex, system))
}

/// The per-vertex syndromes of an edge labelling: vertex `u` receives
/// `sum_v x_uv w_uv` in the basis of `F(u)`. Zero exactly on codewords.
///
/// # Panics
///
/// Panics if `x.len()` is not the edge count.
pub fn boundary_evaluate(instance: &GraphCodeInstance, x: &BitVector) -> TwistedChain {
    assert_eq!(
        x.len(),
        instance.graph.edge_count(),
        "labelling length does not match the edge count"
    );
    TwistedChain::new(&instance.system, 0, instance.boundary_1.mul_vec(x))
}

/// The result of checking the code-equals-homology claim on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionVerdict {
    pub verdict: bool,
    pub code_dimension: usize,
    pub homology_dimension: usize,
    /// On failure, a basis vector of one space that is not in the other.
    pub witness: Option<BitVector>,
}

/// Compares the graph code with the first homology of the local system as
/// literal subspaces of `F_2^E`: dimensions must match and each kernel basis
/// must lie in the span of the other. A failure is a verdict, not an error.
pub fn verify_proposition(instance: &GraphCodeInstance) -> PropositionVerdict {
    let code_basis = instance.stacked_parity.kernel_basis();
    // Graphs have no 2-simplices, so H_1 is exactly the kernel of the
    // twisted boundary.
    let homology_basis = instance.boundary_1.kernel_basis();
    let code_dimension = code_basis.len();
    let homology_dimension = homology_basis.len();
    let mut witness = None;
    if code_dimension == homology_dimension {
        for z in code_basis.iter().chain(&homology_basis) {
            let other = if code_basis.contains(z) {
                &homology_basis
            } else {
                &code_basis
            };
            if !in_span(other, z) {
                witness = Some(z.clone());
                break;
            }
        }
    } else {
        witness = code_basis
            .iter()
            .find(|z| !in_span(&homology_basis, z))
            .or_else(|| homology_basis.iter().find(|z| !in_span(&code_basis, z)))
            .cloned();
    }
    PropositionVerdict {
        verdict: code_dimension == homology_dimension && witness.is_none(),
        code_dimension,
        homology_dimension,
        witness,
    }
}

/// The rate side of the spectral bound: a graph code whose local codes all
/// have rate at least `r` has rate at least `2r - 1`.
pub fn rate_bound(r: Rational) -> Rational {
    Rational::new(2, 1) * r - Rational::new(1, 1)
}

/// A bound value that is exact when the inputs allow it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Exact(Rational),
    Approximate(f64),
}

impl BoundValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            BoundValue::Approximate(x) => *x,
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            BoundValue::Exact(r) => serializer.serialize_str(&rational_string(*r)),
            BoundValue::Approximate(x) => serializer.serialize_f64(*x),
        }
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundValue::Exact(r) => write!(f, "{r}"),
            BoundValue::Approximate(x) => write!(f, "{x}"),
        }
    }
}

/// How close a floating second eigenvalue must be to an integer before the
/// distance bound switches to exact rational arithmetic. Matches the
/// eigensolve accuracy.
pub const LAMBDA_INTEGER_TOLERANCE: f64 = 1e-9;

/// The distance side of the spectral bound, `((delta - lambda/d)/(1 -
/// lambda/d))^2`, in exact rationals.
pub fn distance_bound_exact(
    delta: Rational,
    lambda: Rational,
    d: usize,
) -> Result<Rational, RealizationError> {
    if lambda >= Rational::from_integer(d as i64) {
        return Err(RealizationError::LambdaTooLarge {
            lambda: *lambda.numer() as f64 / *lambda.denom() as f64,
            degree: d,
        });
    }
    let ratio = lambda / Rational::from_integer(d as i64);
    let one = Rational::from_integer(1);
    let q = (delta - ratio) / (one - ratio);
    Ok(q * q)
}

/// The distance bound for a measured (floating) second eigenvalue: exact
/// rational arithmetic when `lambda` is within [`LAMBDA_INTEGER_TOLERANCE`]
/// of an integer (the common case — complete graphs, hypercubes), floating
/// point otherwise (evaluation error far below 1e-12).
pub fn distance_bound(
    delta: Rational,
    lambda: f64,
    d: usize,
) -> Result<BoundValue, RealizationError> {
    if lambda >= d as f64 {
        return Err(RealizationError::LambdaTooLarge { lambda, degree: d });
    }
    if (lambda - lambda.round()).abs() <= LAMBDA_INTEGER_TOLERANCE {
        let exact = Rational::from_integer(lambda.round() as i64);
        return distance_bound_exact(delta, exact, d).map(BoundValue::Exact);
    }
    let delta = *delta.numer() as f64 / *delta.denom() as f64;
    let ratio = lambda / d as f64;
    Ok(BoundValue::Approximate(((delta - ratio) / (1.0 - ratio)).powi(2)))
}

/// The proposition part of a report.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PropositionReport {
    pub verdict: bool,
    pub code_dimension: usize,
    pub homology_dimension: usize,
    pub witness: Option<String>,
}

/// Measured and bounded parameters of one instance. Serialized field order is
/// the declaration order; rationals appear as `"p/q"` strings and absent
/// values as `null`.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    /// Code length `|E|`.
    pub n: usize,
    pub dim: usize,
    pub rate: String,
    /// Smallest local rate `r` (degree-0 vertices carry no constraints and
    /// are skipped).
    pub min_local_rate: String,
    /// Smallest local relative distance `delta`; absent if some local code is
    /// zero-dimensional.
    pub min_local_relative_distance: Option<String>,
    /// The common degree, when the graph is regular.
    pub degree: Option<usize>,
    /// Second largest adjacency eigenvalue, by signed value.
    pub lambda: f64,
    /// Largest absolute value among non-principal eigenvalues — the |lambda2|
    /// convention, shown alongside the signed one.
    pub lambda_abs_alt: f64,
    pub rate_bound: Option<String>,
    pub distance_bound: Option<BoundValue>,
    /// Why the bound fields are absent, when they are.
    pub bounds_reason: Option<String>,
    /// Brute-force distance; absent when the dimension exceeds the cap or the
    /// code is zero.
    pub distance: Option<usize>,
    pub relative_distance: Option<String>,
    pub proposition: PropositionReport,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Measures an instance end to end. Distance fields are omitted when the
/// dimension exceeds `distance_cap`; bound fields are omitted (with a reason)
/// when the spectral hypotheses fail.
pub fn report(instance: &GraphCodeInstance, distance_cap: usize) -> Result<Report, RealizationError> {
    let graph = instance.graph();
    let n = graph.edge_count();
    if n == 0 {
        return Err(RealizationError::NoEdges);
    }
    let code = instance.code();
    let dim = code.dimension();

    let mut min_rate: Option<Rational> = None;
    let mut min_delta: Option<Rational> = None;
    let mut delta_failure: Option<String> = None;
    for u in 0..graph.vertex_count() {
        if graph.degree(u) == 0 {
            continue;
        }
        let local = instance.assignment().local_code(u);
        let rate = local.rate().expect("degree is positive");
        min_rate = Some(min_rate.map_or(rate, |m: Rational| m.min(rate)));
        match local.relative_distance(DEFAULT_DISTANCE_CAP) {
            Ok(delta) => min_delta = Some(min_delta.map_or(delta, |m: Rational| m.min(delta))),
            Err(e) => {
                delta_failure.get_or_insert_with(|| format!("local code at vertex {u}: {e}"));
            }
        }
    }
    let min_rate = min_rate.expect("graph has an edge, so some degree is positive");
    let min_delta = if delta_failure.is_some() { None } else { min_delta };

    let spectrum = graph.spectrum();
    let lambda = spectrum[1];
    let lambda_abs_alt = spectrum[1..]
        .iter()
        .fold(0.0f64, |acc, &x| acc.max(x.abs()));

    let degree = graph.is_regular();
    let (rate_bound_value, distance_bound_value, bounds_reason) = match degree {
        None => (
            None,
            None,
            Some("graph is not regular; the spectral bounds require a d-regular graph".to_string()),
        ),
        Some(d) => {
            let rb = Some(rational_string(rate_bound(min_rate)));
            match min_delta {
                None => (rb, None, delta_failure),
                Some(delta) => match distance_bound(delta, lambda, d) {
                    Ok(db) => (rb, Some(db), None),
                    Err(e) => (rb, None, Some(e.to_string())),
                },
            }
        }
    };

    let distance = match code.min_distance_bruteforce(distance_cap) {
        Ok(d) => Some(d),
        Err(CodeError::ZeroCode) | Err(CodeError::DistanceCapExceeded { .. }) => None,
        Err(e) => panic!("unexpected distance failure: {e}"),
    };
    let relative_distance = distance.map(|d| rational_string(Rational::new(d as i64, n as i64)));

    let verdict = verify_proposition(instance);
    Ok(Report {
        n,
        dim,
        rate: rational_string(Rational::new(dim as i64, n as i64)),
        min_local_rate: rational_string(min_rate),
        min_local_relative_distance: min_delta.map(rational_string),
        degree,
        lambda,
        lambda_abs_alt,
        rate_bound: rate_bound_value,
        distance_bound: distance_bound_value,
        bounds_reason,
        distance,
        relative_distance,
        proposition: PropositionReport {
            verdict: verdict.verdict,
            code_dimension: verdict.code_dimension,
            homology_dimension: verdict.homology_dimension,
            witness: verdict.witness.map(|w| w.to_string()),
        },
    })
}
