//! Exact computation in finite and free nonassociative loops.
//!
//! The crate is organised around a small [`Loop`] trait. Concrete loops are
//! finite Cayley tables ([`CayleyLoop`]), the additive integers
//! ([`Integers`]) and the twisted extension loop ([`HigmanLoop`]) used to
//! certify that particular free-loop elements lie outside the third term of
//! the lower central series.
//!
//! On top of that sit:
//!
//! * [`term`]: syntactic free-loop elements, commutators, associators and
//!   associator deviations of every level, plus a parser for a small ASCII
//!   grammar;
//! * [`finite`]: Cayley tables, subloop and normal closures, `[N, L]`,
//!   quotients, the centre and a catalog of standard examples;
//! * [`series`]: the lower central series, the commutator-associator
//!   filtration and the naive filtration;
//! * [`graded`]: the associated graded abelian group with its induced
//!   bracket, associator and deviations, and checks for multilinearity and
//!   the Akivis identity;
//! * [`higman`]: the extension loop `(L, B)` and the homomorphism `δ`.
//!
//! ```
//! use loopforge::{catalog, Loop, Term};
//!
//! let q8 = catalog("Q8").unwrap();
//! let i = q8.element_by_name("i").unwrap();
//! let j = q8.element_by_name("j").unwrap();
//! assert_eq!(q8.element_name(q8.commutator(&i, &j)), "-1");
//!
//! let t: Term = "com(a,b)".parse().unwrap();
//! assert_eq!(t.to_string(), "(b*a)\\(a*b)");
//! ```

pub mod finite;
pub mod graded;
pub mod higman;
mod loops;
pub mod series;
pub mod term;

pub use finite::catalog::{catalog, catalog_entries, CatalogEntry};
pub use finite::{AxiomReport, CayleyLoop, ElementSet, LoopError, NormalSubloop, Quotient};
pub use graded::{GradedComponent, GradedElement, GradedError, GradedGroup};
pub use higman::{AbVector, BasisSymbol, HigmanElement, HigmanLoop, WitnessReport};
pub use loops::{Integers, Loop};
pub use series::{Filtration, SeriesKind, SeriesOptions};
pub use term::{enumerate_alphas, AlphaSequence, Op, ParseError, Term, TermError};
