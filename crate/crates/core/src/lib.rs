//! Edge ideals of vertex-weighted oriented graphs, exact graded Betti
//! numbers and Castelnuovo–Mumford regularity of monomial ideals, and the
//! closed-form regularity of powers for oriented cycles, rooted forests and
//! oriented unicyclic graphs.

pub mod betti;
pub mod closed_form;
pub mod constructions;
pub mod digraph;
pub mod error;
pub mod monomial;
pub mod verify;

pub use betti::{betti_table, regularity, BettiTable, EngineConfig, Field, Regularity};
pub use constructions::{edge_ideal, CycleIdeal, OrderedPowerBasis};
pub use digraph::{make_cycle, FamilyKind, Theorem, WeightedDigraph};
pub use monomial::{Monomial, MonomialIdeal, VariableSet};
