//! Layered graphs, their free edge algebras, and the quotient by the path
//! relations: generators, normal forms, basis enumeration and brute-force
//! dimension checks.

pub mod error;
pub mod expr;
pub mod graph;
pub mod library;
pub mod linalg;
pub mod ncpoly;
pub mod normal_form;
pub mod relations;
pub mod verify;

pub use error::{Error, Result};
pub use expr::{parse_expr, parse_poly, Expr};
pub use graph::{validate, Edge, GraphTag, LayeredGraph, Path, RawGraph, Vertex};
pub use library::{
    boolean_lattice, chain, level_profile, load_graph, partition_lattice, save_graph,
    subspace_lattice, GeneratorSpec,
};
pub use ncpoly::{
    e_of_path, e_of_vertex, eword_to_poly, filtration_level, path_poly, scalar, EWord,
    FiltrationLevel, NcPoly, PathPoly, Scalar, Word,
};
pub use normal_form::{hat_word, hat_word_of_seq, Algebra, BVector, Pair, PairSeq};
pub use relations::{
    e_sum, e_sum_terms, h_sum, h_sum_terms, path_pair_relations, reduced_relations, s2_element,
    ECombination, Provenance, RelationGen,
};
pub use verify::{
    brute_force_dims, enumerate_basis, hilbert_series, verify_basis, verify_basis_with, DimReport,
    Failure, GeneratorChoice, Limits, VerifyOptions,
};
