//! Combinatorial link Floer complexes with integer coefficients.
//!
//! Signs come from the spin extension `S̃_n` of the symmetric group: a
//! rectangle from `x̃` is the right factor `τ̃_{a,b}`, and the relation
//! `z = −1` turns the group law into signed coefficients.
//!
//! * [`spin`]: normal forms, the section `s`, the cocycle `c`.
//! * [`grid`]: grid diagrams, gradings, rectangles.
//! * [`complex`]: differentials, sign assignments and their axioms.
//! * [`snf`], [`homology`], [`laurent`]: integer homology and polynomials.
//! * [`moves`]: grid moves, cyclic-permutation chain maps, invariance reports.
//! * [`io`], [`cli`]: text formats and the command-line front end.

pub mod cli;
pub mod complex;
pub mod grid;
pub mod homology;
pub mod io;
pub mod laurent;
pub mod moves;
pub mod snf;
pub mod spin;

pub use complex::{ChainElement, CocycleOrder, Flavor, GridComplex, Polynomial};
pub use grid::{Bigrading, ComponentData, GridDiagram, GridError, Rectangle};
pub use homology::{
    alexander_polynomial, bigraded_homology, hat_homology, hat_reduction, HomologySummary,
};
pub use spin::{cocycle, GeneratorWord, Label, Permutation, SpinElement};
