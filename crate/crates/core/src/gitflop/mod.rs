//! K-theory of variation of GIT for Calabi-Yau wall crossings: window
//! subcategories as lattice slices of a weight ring, transfer functors as
//! reduction between slices, the induced spherical pair, and the standard
//! flop family with its local system on the wall complement.

mod euler;
mod flop;
mod skms;
mod windows;

pub use euler::{binomial, check_euler_vanishing, chi_pn, euler_pairing_flop, EulerVanishingReport};
pub use flop::{
    build_flop_model, flop_wall_crossing, infinity_product, verify_relations, FlopModel,
    FlopRelationReport, RelationCheck,
};
pub use skms::{
    build_schober_c, build_skms, integer_loop, skms_cover, skms_pullback_refines,
    IntegerLoopCheck, RefinementReport, SchoberOnC,
};
pub use windows::{
    build_git_pair, build_windows, twist_vs_phi, KTheoryWindows, TwistComparison, WallCrossing,
    WindowReport,
};
