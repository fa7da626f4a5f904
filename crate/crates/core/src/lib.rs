//! Exact linear-algebra models of perverse schobers on disks and surfaces.
//!
//! The library works at the level of K-theory / lattices: schober data is
//! stored as integer or rational matrices and every check is an exact matrix
//! identity. The modules build on each other roughly bottom-up:
//!
//! * [`arith`] — rationals, matrices, Laurent polynomials, Smith normal form;
//! * [`braid`] — braid words and the word problem via the free-group action;
//! * [`perv`] — disk presentations: monodromy data, quiver data, spherical
//!   pairs;
//! * [`localsys`] — lattice local systems on groupoid presentations,
//!   refinement and pullback along covers;
//! * [`surface`] — schobers on marked surfaces: validation, extension over
//!   punctures, restriction, compactification checks;
//! * [`gitflop`] — window matrices for Calabi-Yau wall crossings, the
//!   standard flop model and its wheel of relations;
//! * [`dot`] — Graphviz export of groupoid presentations.

pub mod arith;
pub mod braid;
pub mod dot;
pub mod error;
pub mod gitflop;
pub mod localsys;
pub mod perv;
pub mod surface;
