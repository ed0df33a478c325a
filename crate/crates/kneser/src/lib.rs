//! Generalized Kneser hypergraphs `KG^r(n, k, s)`: vertices are the `k`-subsets
//! of `[n]`, edges are `r` distinct vertices whose pairwise intersections have
//! at most `s` elements.
//!
//! The crate builds these hypergraphs, computes exact chromatic numbers at small
//! scale, evaluates the known lower bounds, and checks the combinatorial
//! machinery behind them: the `Z_p`-equivariant labelling used with the
//! `Z_p`-Tucker lemma, the padding homomorphism, and the composite-arity
//! reduction.

pub mod bits;
pub mod bounds;
pub mod coloring;
pub mod error;
pub mod hypergraph;
pub mod params;
pub mod reduction;
pub mod solver;
pub mod subset;
pub mod tucker;

pub use bounds::{
    afl_lower_bound, ceil_div, compare_bounds, homomorphism_lower_bound, theorem1_lower_bound,
    BoundReport, SolverStatus,
};
pub use coloring::Coloring;
pub use error::{KneserError, Result};
pub use hypergraph::{
    export_text, is_edge, pad_homomorphism, verify_homomorphism, CompatibilityGraph, Edge,
    HomomorphismCheck,
};
pub use params::{binomial, KneserParams};
pub use solver::{
    exact_chromatic, exact_chromatic_from, find_monochromatic_edge, is_proper, m_colorable,
    windowed_coloring_s0, Decision, ProperCheck, SolveBudget, SolveResult, SolveStatus,
};
pub use reduction::{
    derived_m, extract_witness, induced_color, verify_witness, ReductionPlan, ReductionWitness,
    SizeChain,
};
pub use subset::{enumerate_vertices, KSubset, VertexSet};
pub use tucker::{
    conclusion_check, omega_action, preceq, verify_all, LambdaValue, SignedVector, TuckerInstance,
    TuckerReport,
};
