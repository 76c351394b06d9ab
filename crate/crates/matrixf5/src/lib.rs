//! Signature-based Gröbner basis computation over prime fields.
//!
//! The crate implements the matrix variant of the F5 algorithm for
//! homogeneous systems, together with the surrounding machinery needed to
//! study its cost: exact Macaulay-matrix linear algebra, Hilbert-series
//! predictions for regular sequences, Noether-position verification, a
//! Buchberger oracle for cross-checking, and calculators for the operation
//! count `N_F5` and its asymptotic constants.
//!
//! The engine counts every field multiplication it performs, so measured
//! work can be compared against the closed-form bounds step by step.
//!
//! Most entry points live in the per-topic modules:
//!
//! * [`field`] — arithmetic in GF(p)
//! * [`monomial`] — exponent vectors, grevlex order, monomial sets `T^i_d`
//! * [`polynomial`] — sparse homogeneous polynomials, parsing, normal forms
//! * [`system`] — the on-disk system file format
//! * [`macaulay`] — Macaulay matrices, row echelon, Hilbert functions
//! * [`regularity`] — regular sequences, (simultaneous) Noether position,
//!   random system generation
//! * [`f5`] — the signature-based engine itself
//! * [`oracle`] — a small Buchberger implementation used for cross-checks
//! * [`bounds`] — every complexity formula: Macaulay bound, `b_d^(i)`
//!   series, exact `N_F5`, asymptotic constants, baseline costs
//! * [`cli`] — the command-line surface (`gb`, `bench`, `bounds`, `gen`,
//!   `verify`)

pub mod bounds;
pub mod cli;
pub mod error;
pub mod f5;
pub mod field;
pub mod macaulay;
pub mod monomial;
pub mod oracle;
pub mod polynomial;
pub mod regularity;
pub mod system;

pub use error::Error;
pub use field::PrimeField;
pub use monomial::Monomial;
pub use polynomial::Polynomial;
