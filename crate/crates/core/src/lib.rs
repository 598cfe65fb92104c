//! Symmetry and the reciprocal ideal of coloured graphs.
//!
//! The pipeline: a [`ColouredGraph`] gives a symmetric matrix of linear forms
//! `A(λ)`; its adjugate parametrizes the reciprocal variety, whose ideal is
//! computed in degrees one and two ([`ideal`]). Graph automorphisms
//! ([`symmetry`]) give linear forms that always lie in the ideal, and
//! [`classify`] compares the two. [`pencil`] covers the uniform case in closed
//! form and [`scan`] runs exhaustive searches over graph families.

pub mod algebra;
pub mod classify;
pub mod error;
pub mod forms;
pub mod graph;
pub mod ideal;
pub mod pencil;
pub mod scan;
pub mod symmetry;

pub use classify::{
    ambient_reduction, classify, derived_graph, verify_family, AmbientReduction,
    FamilyVerification, SymmetryVerdict,
};
pub use error::{Error, Result};
pub use forms::{LinearForm, PairSpace, QuadraticForm};
pub use graph::{ColouredGraph, Family, FamilySpec, GraphJson, Pair};
pub use ideal::{IdealPart, Parametrization, QuadraticPart};
pub use pencil::{pencil_properties, segre_symbol, PencilProperties, SegreSymbol};
pub use scan::{Predicate, ScanOptions, ScanResult, VertexColourings};
pub use symmetry::{automorphism_group, AutomorphismGroup, PairOrbitPartition, Permutation};

/// Resource caps shared by the exact computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count accepted by the symbolic pipeline.
    pub max_n: usize,
    /// Node budget for the automorphism backtracking search.
    pub max_search_nodes: u64,
    /// Largest group that is enumerated element by element.
    pub max_group_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 12,
            max_search_nodes: 50_000_000,
            max_group_elements: 2_000_000,
        }
    }
}
