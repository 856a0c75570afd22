//! Based root data, diagram automorphisms, Weyl groups, fundamental groups and
//! orders of finite reductive groups.

pub mod cartan;
pub mod datum;
pub mod matrix;
pub mod omega;
pub mod order;
pub mod spec;
pub mod twist;
pub mod weyl;

pub use cartan::CartanType;
pub use datum::{BasedRootDatum, Isogeny, Root};
pub use omega::{fundamental_group_invariants, omega_index_ratio, FiniteAbelianGroupDesc};
pub use order::{iwahori_quotient_order, order_polynomial};
pub use spec::GroupSpec;
pub use twist::Twist;
pub use weyl::{weyl_elements, WeylElement, DEFAULT_WEYL_BOUND};
