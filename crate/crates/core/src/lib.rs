//! Reversible GF(2) elimination circuits, an exact state-vector simulator,
//! and a desk-scale reanalysis of the Grover-meets-Simon key search with
//! all Simon measurements deferred.

pub mod circuit;
pub mod cli;
pub mod gf2;
pub mod gms;
pub mod report;
pub mod sim;
pub mod synth;
pub mod verify;
