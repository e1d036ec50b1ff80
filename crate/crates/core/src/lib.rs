//! Finitely checkable indexed posets over small categories.
//!
//! The crate implements meet-semilattice fibers indexed over a base category
//! with chosen finite products ("doctrines"), exhaustive law checkers for the
//! elementary / existential / implicational / universal structure, equivalence
//! relations and quotients inside a doctrine, and the quotient completion that
//! freely adds stable effective quotients together with its structure liftings.
//!
//! Everything is window-quantified: universal statements are checked over a
//! declared finite window of objects and every report names the window used.

pub mod builders;
pub mod cat;
pub mod completion;
pub mod doctrine;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod order;
pub mod report;
pub mod twocat;

pub use cat::{Arr, Category, Functor, Obj, Product};
pub use doctrine::{Doctrine, EquivalenceRelationWitness};
pub use error::Error;
pub use order::{Elem, MeetSemilattice, MonotoneMap};
pub use report::{Counterexample, Report};
