//! The extension operator: surface samples, evaluation, norms, and the
//! cap-measure convolution estimate.

mod convolution;
mod eval;
mod grid;
mod norms;
mod surface;

pub use convolution::{cap_measure_convolution_sup, ConvolutionSup};
pub use eval::{
    check_resolution, evaluate_extension, evaluate_extension_at, evaluate_extension_product,
    required_spacing, RESOLUTION_C,
};
pub use grid::{EvalGrid, ProductEvalGrid, Region};
pub use norms::{lp_norm, surface_l2, Exponent, SurfaceRegion};
pub use surface::{
    bump, export, grid_size_for_spacing, import, sample, FunctionFamily, SurfaceFunction,
};
