//! A numerical laboratory for the extension operator of the hyperbolic
//! paraboloid: wave-packet decompositions, polynomial partitioning,
//! broad/bilinear decompositions, and tube geometry, with a config-driven
//! experiment runner.
//!
//! All heavy loops are data-parallel with results written to pre-assigned
//! slots and fixed-shape reductions, so output is bit-identical for any
//! thread count; the `parallel` feature (default on) selects the rayon
//! backend, and without it everything runs sequentially.

pub mod error;
pub mod num;
pub mod par;

pub mod extension;
pub mod geometry;
pub mod wavepacket;

pub use error::{Error, Result};
