//! Nichols algebras of Yetter-Drinfeld modules over finite abelian groups
//! twisted by 3-cocycles.
//!
//! The crate builds simple twisted YD modules, their braidings and
//! quantum symmetrizers, decides diagonality, reduces diagonal modules to
//! ordinary ones over a covering group, and decides finiteness of the
//! associated root systems with the Weyl groupoid.

pub mod classify;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod linalg;
pub mod nichols;
pub mod par;
pub mod rootsys;
pub mod scalar;
pub mod ydmod;

pub use error::Error;
pub use scalar::Cyclo;
