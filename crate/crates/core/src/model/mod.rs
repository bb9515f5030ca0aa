//! Hamiltonians of the Fredkin chain and its colored generalization, built as
//! sums of placed local terms and exposed as sparse or matrix-free operators.

mod forms;
mod hamiltonian;
mod local;
mod operator;

pub use hamiltonian::{
    build_bulk_hamiltonian, build_bulk_term, build_colored_hamiltonian, build_hamiltonian, check_form_equivalence,
    color_transposition, colored_terms, hamiltonian_terms, magnetization_operator, translation_operator, BoundarySpec,
    ColoredParts, FormRatios, ModelForm,
};
pub use local::{magnetization_labels, LocalHamiltonian, LocalMatrix, LocalTerm, TermKind};
pub use operator::{CsrMatrix, Operator};
