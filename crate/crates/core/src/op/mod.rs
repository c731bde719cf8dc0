//! Differential operators between labeled component spaces.

mod diffop;
mod jet;
mod multiindex;
mod space;
mod weyl;

pub use diffop::DiffOp;
pub use jet::{adjoint_defect, euler_divergence_test, jet_apply, weighted_pairing, JetExpr, JetVar};
pub use multiindex::MultiIndex;
pub use space::SpaceSpec;
pub use weyl::WeylPoly;
