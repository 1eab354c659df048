//! Sequent calculi, Frege systems and proof translations for substructural
//! and linear logics, with generators and checkers for the proofs they use.

pub mod builder;
pub mod calculus;
pub mod chu;
pub mod cutfree;
pub mod experiment;
pub mod formula;
pub mod frege;
pub mod gen;
pub mod hard;
pub mod horn;
pub mod proof;
pub mod search;
pub mod sequent;
pub mod vass;

pub use builder::ProofBuilder;
pub use calculus::{parse_calculus, Calculus, Rule, System, Template};
pub use formula::{parse_formula, BinOp, Const, Formula, Kind, LanguageId, Multiset};
pub use proof::{check_proof, Proof, ProofMetrics, ProofNode, Violation};
pub use sequent::{interpretation, parse_sequent, Sequent};
