//! Signs of roots of unity attached to Weyl group elements.

pub mod arith;
pub mod classify;
pub mod error;
pub mod linalg;
pub mod rootsys;
pub mod rtheta;
pub mod signchar;
pub mod tables;
pub mod verify;
pub mod weyl;

pub use arith::{jacobi, sgn_minus, sgn_plus, Permutation, Residue, Sign};
pub use error::{Error, ErrorKind, Result};
pub use rootsys::{Isometry, Label, RootSystem, RootVector};
pub use weyl::{OrbitSpace, Partition, SignedPermutation};
