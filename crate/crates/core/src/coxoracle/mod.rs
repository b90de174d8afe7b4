//! The candidate-ring side: generator verification, semi-invariance under
//! the group, graded-monomial enumeration, exact-rank Hilbert-function
//! certificates, the regularity closure and the final equality verdict.

mod enumerate;
mod gens;
mod rank;
mod regularity;
mod verdict;

pub use enumerate::{enumerate_graded_monomials, GradedMonomial};
pub use gens::{
    generator_character_classes, verify_degree_matrix, verify_semiinvariance, DegreeReport,
    GeneratorTable, SemiInvarianceReport,
};
pub use rank::{
    compile_mod_tables, exact_graded_rank, graded_rank_mod_p, rank_certificate, CompiledTables,
    DenseBi, RankCertificate,
};
pub use regularity::{regularity_closure, ClosureOutcome, Witness};
pub use verdict::{verify_bundle_cells, CellVerdict};
