//! Regular and coherent logic over a presentation: syntax, formation,
//! proof checking, and the translations to and from morphism expressions.

pub mod formation;
pub mod interpret;
pub mod proof;
pub mod syntax;
pub mod text;
pub mod translate;

pub use formation::{check_context, check_formula, check_sequent, check_term, check_theory, LogicError};
pub use interpret::{interpret, interpret_term, is_model, sequent_holds, SignatureMap};
pub use proof::{check_proof, check_proof_with, CheckOptions, ProofError, ProofReport, ProofTree, Rule};
pub use syntax::{Context, Formula, LogicType, Mode, Sequent, Term, Theory};
pub use translate::{theory_of, translate_to_logic};
