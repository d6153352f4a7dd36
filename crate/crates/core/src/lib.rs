//! Perfect teleportation through three-qubit channels.
//!
//! Alice holds qubits 1 and 2 of a shared channel plus the unknown input `a`;
//! Bob holds qubit 3. The crate builds the two canonical channel families and
//! their eight-element measurement bases, extracts the transformation operator
//! Bob's qubit undergoes for each measurement outcome, certifies perfect
//! teleportation (four unitary operators, four zero operators) and simulates
//! the protocol with seeded Born-rule sampling.

pub mod bases;
pub mod channels;
pub mod diagnostics;
pub mod error;
pub mod extractor;
pub mod par;
pub mod protocol;
pub mod qmath;
pub mod record;
pub mod sweep;

pub use error::{Error, Result};
pub use par::Execution;
