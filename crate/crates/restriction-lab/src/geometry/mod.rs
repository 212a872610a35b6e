//! Caps, strips, tubes, normal directions, and parabolic rescaling on the
//! hyperbolic paraboloid `xi3 = xi1 xi2`.

mod caps;
mod params;
mod rescale;
mod tubes;

pub use caps::{
    build_caps, build_omega_caps, build_strips, cap_index_of, normal_at, pair_strip, slope_of,
    Cap, OmegaCap, PairFlags, Strip,
};
pub use params::Params;
pub use rescale::{parabolic_rescale, CoordinateMap, Rescaled, RescaleRegion};
pub use tubes::{build_tubes, cylinder_overlap_measure, tube_overlap_measure, Cylinder, Tube};
