//! Unramified Weil-Deligne representations and their L-, epsilon- and gamma-factors.

pub mod adjoint;
pub mod point;
pub mod wd;

pub use adjoint::{
    adjoint_eigenvalues, adjoint_eigenvalues_from_classes, adjoint_rep_semisimplified, finite_order_eigenvalues, root_orbit_eigenvalues,
};
pub use point::{PointRecord, TorusPoint};
pub use wd::{PsiOrder, RepRecord, Summand, UnramifiedWDRep};
