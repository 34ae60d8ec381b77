//! Finite ordered algebras with monotone and antitone operations, their
//! interval algebras, and the structure relating the two: centers, the
//! embeddings `ι` and `γ`, lifted homomorphisms, generated axioms, and the
//! test for whether the center and `i` generate everything.

mod axioms;
mod builtin;
mod fterm;
mod interval;
mod poalgebra;

pub use axioms::{check_quasiequation, generate_axioms, order_equation_mismatches, DEFAULT_BUDGET};
pub use builtin::{by_name, godel_chain, hilbert3, mv_chain, Theory, TheoryJson};
pub use fterm::{variables_of, FTerm, Quasiequation};
pub use interval::{
    center, check_equivalence, check_homomorphism, gamma, generate_subalgebra, iota,
    is_order_embedding, is_order_preserving, lift_homomorphism, subalgebra, Center, CheckedMap,
    ClosureOrder, EquivalenceReport, IntervalAlgebra, ReconstructionCheck,
};
pub use poalgebra::{
    AlgebraJson, BoundsJson, FinitePoalgebra, OpFn, OpJson, Operation, Polarity, Signature,
    SignatureJson, Symbol, SymbolJson, ValidationReport, Violation, RESERVED_SYMBOLS,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FunctorError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("the carrier is empty")]
    EmptyCarrier,
    #[error("`{0}` is not a usable name")]
    BadName(String),
    #[error("`{0}` is declared twice")]
    DuplicateName(String),
    #[error("`{0}` is reserved")]
    ReservedSymbol(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown operation `{0}`")]
    UnknownSymbol(String),
    #[error("`{symbol}` takes {expected} arguments, got {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("table of `{op}` has a malformed key `{key}`")]
    BadTableKey { op: String, key: String },
    #[error("table of `{op}` has no entry for `{key}`")]
    MissingTableEntry { op: String, key: String },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("variable `{0}` is not allowed here")]
    Unbound(String),
    #[error("`{0}` uses D, N or i where a term of the base signature is required")]
    NotBaseTerm(String),
    #[error("not an ordered algebra:\n{0}")]
    Invalid(ValidationReport),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("the map does not preserve the order")]
    NotOrderPreserving,
    #[error("the center is not closed under `{0}`")]
    NotClosed(String),
    #[error("enumeration needs {required} assignments, over the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("internal error: {0}")]
    Internal(String),
}
