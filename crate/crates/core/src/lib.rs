//! Finite quantale-enriched categories, two-variable adjunctions and
//! enriched formal concept analysis.

pub mod adjunction;
pub mod completeness;
pub mod fca_io;
pub mod quantale;
pub mod representation;
pub mod vcat;

pub use adjunction::{concept_lattice, BifunctorTable, ConceptLattice, Kind, TwoVarAdjunction};
pub use completeness::{is_complete, CompleteCategory};
pub use quantale::{Quantale, QuantaleRef};
pub use vcat::{functor_category, Budget, VCategory, VFunctor};
