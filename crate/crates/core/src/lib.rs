//! Conjugacy search and decision in extraspecial p-groups built as central
//! products of `M(p)` and `N(p)`, plus dihedral and quaternion class
//! intersection, brute-force oracles and a command-line front end.

pub mod cli;
pub mod error;
pub mod esp;
pub mod modlin;
pub mod mp;
pub mod np;
pub mod oracle;
pub mod showcase;

pub use error::{Error, Result};
pub use modlin::Residue;
