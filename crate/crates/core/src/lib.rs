//! Exact computations around the McKay correspondence for finite subgroups
//! of SU(2): binary polyhedral groups, their character tables, affine ADE
//! graphs and the Poincare series of the associated invariant modules.

mod error;
pub mod exact;

pub use error::{Error, Result};
pub mod klein;
pub mod characters;
pub mod ade;
pub mod poincare;
pub mod forms;
pub mod verify;
pub mod cli;
