//! Wave-packet decomposition.

pub mod window;
