//! Minimal A-infinity models for representations of the A2 quiver and of its
//! preprojective algebra, computed by homotopy transfer over exact fields.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, parallel scans
//! and the command-line driver live in `pia2-cli`.
#![no_std]
#![allow(clippy::type_complexity)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ainf;
pub mod complexes;
pub mod functors;
pub mod linalg;
pub mod quiver;
pub mod symbols;
pub mod transfer;
