//! Enumeration, counting and compression of all models of a 2-CNF formula,
//! via the involution poset on the strong components of its implication
//! digraph.

pub mod bitset;
pub mod compressed;
pub mod enumerator;
pub mod error;
pub mod fixtures;
pub mod formula;
pub mod harness;
pub mod horn;
pub mod implication_graph;
pub mod involution_poset;

pub use compressed::{count_models, enumerate_cubes, expand_cube, CountReport, CubeEnumerator, ModelCube};
pub use enumerator::{
    enumerate_constrained, enumerate_models, enumerate_partial, Instance, ModelEnumerator, PartialModel, Status,
    TernaryRow, UnsatReason,
};
pub use error::{Error, Result};
pub use formula::{parse_dimacs, Assignment, Clause2, Cnf2, Literal};
pub use horn::{build_sigma, enumerate_renamings, ClauseSet, RenamingSet};
pub use involution_poset::InvolutionPoset;
