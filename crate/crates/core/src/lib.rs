//! Supersymmetric partner potentials seeded by nodeless half-bound states.
//!
//! A nodeless zero-energy solution ψ* = A + F(x) of a scattering well defines
//! the superpotential W = −ψ*′/ψ* and the partner pair V± = W² ± W′. The crate
//! builds those pairs, finds their bound states and scattering coefficients,
//! integrates their areas, and solves the triple Dirac-delta model whose
//! zero-energy state illustrates the nodeless case analytically.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ansatz;
pub mod area;
pub mod bound_solver;
pub mod delta_model;
pub mod error;
pub mod export;
pub mod grid;
pub mod interp;
pub mod numerov;
pub mod partner;
pub mod potential;
pub mod reproduce;
pub mod scattering;
pub mod spectrum;

pub use ansatz::{AnsatzParams, Family, HbsAnsatz};
pub use error::{Error, Result};
pub use grid::Grid;
pub use partner::{build_pair, PartnerPair, PartnerPotential, Side};
pub use potential::{Potential, PotentialTable};
pub use spectrum::{BoundState, Spectrum};
