//! Lp norms on evaluation grids and L2 masses on the surface.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extension::grid::EvalGrid;
use crate::extension::surface::SurfaceFunction;
use crate::geometry::{Cap, OmegaCap};
use crate::num;

/// Lp exponent; `Infinity` gives the max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p < 1.0 {
            return Err(Error::InvalidParameter(format!("p = {p} < 1")));
        }
        Ok(Exponent::Finite(p))
    }
}

/// `(sum |v|^p cell_volume)^(1/p)` over the grid; max for `p = infinity`.
pub fn lp_norm(values: &[Complex64], grid: &EvalGrid, p: Exponent) -> Result<f64> {
    if values.is_empty() || grid.points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    assert_eq!(values.len(), grid.points.len());
    match p {
        Exponent::Infinity => Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max)),
        Exponent::Finite(p) => {
            let f = |i: usize| values[i].norm().powf(p) * grid.cell_volume[i];
            let total: f64 = num::pairwise_map(values.len(), &f);
            Ok(total.powf(1.0 / p))
        }
    }
}

/// Surface region selector for [`surface_l2`].
pub enum SurfaceRegion<'a> {
    All,
    Cap(&'a Cap),
    Omega(&'a OmegaCap),
    /// Dilated fine cap `m * Omega`.
    DilatedOmega(&'a OmegaCap, f64),
}

/// The mass `integral over the region of |f|^2 dsigma` (not its square
/// root), discretized as `sum |f|^2 J w` over region nodes.
pub fn surface_l2(f: &SurfaceFunction, region: SurfaceRegion) -> f64 {
    match region {
        SurfaceRegion::All => f.l2_mass_where(|_| true),
        SurfaceRegion::Cap(c) => f.l2_mass_where(|xi| c.contains(xi)),
        SurfaceRegion::Omega(o) => f.l2_mass_where(|xi| o.dilated_contains(1.0, xi)),
        SurfaceRegion::DilatedOmega(o, m) => f.l2_mass_where(|xi| o.dilated_contains(m, xi)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::grid::Region;
    use crate::extension::surface::{sample, FunctionFamily};
    use crate::geometry::{build_caps, Params};

    #[test]
    fn lp_of_constants() {
        let grid = EvalGrid::ball_cloud(1.0, 4000, 1);
        let ones = vec![Complex64::new(1.0, 0.0); 4000];
        let v = lp_norm(&ones, &grid, Exponent::Finite(2.0)).unwrap();
        let want = (4.0 / 3.0 * std::f64::consts::PI).powf(0.5);
        assert!((v - want).abs() < 1e-9, "{v} vs {want}");
    }

    #[test]
    fn lp_infinity_is_max() {
        let grid = EvalGrid::from_points(
            vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            1.0,
            Region::Custom,
        );
        let vals = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, -2.0),
            Complex64::new(0.5, 0.0),
        ];
        assert_eq!(lp_norm(&vals, &grid, Exponent::Infinity).unwrap(), 2.0);
    }

    #[test]
    fn empty_grid_errors() {
        let grid = EvalGrid::from_points(vec![], 1.0, Region::Custom);
        assert!(lp_norm(&[], &grid, Exponent::Finite(2.0)).is_err());
    }

    #[test]
    fn surface_mass_closed_form() {
        // f = 1: mass = sigma(S) = (2 pi / 3)(2^{3/2} - 1).
        let f = sample(&FunctionFamily::constant_one(), 1024);
        let v = surface_l2(&f, SurfaceRegion::All);
        let want = 2.0 * std::f64::consts::PI / 3.0 * (2f64.powf(1.5) - 1.0);
        assert!((v - want).abs() < 2e-3, "{v} vs {want}");
        let zero = sample(&FunctionFamily::Constant { re: 0.0, im: 0.0 }, 64);
        assert_eq!(surface_l2(&zero, SurfaceRegion::All), 0.0);
    }

    #[test]
    fn cap_partition_additivity_is_exact() {
        let params = Params::with_delta(64.0, 0.05, 8, 1).unwrap();
        let caps = build_caps(&params).unwrap();
        let f = sample(&FunctionFamily::random_smooth(17), 256);
        let total = surface_l2(&f, SurfaceRegion::All);
        let sum: f64 = caps
            .iter()
            .map(|c| surface_l2(&f, SurfaceRegion::Cap(c)))
            .sum();
        assert!((total - sum).abs() <= 1e-12 * total, "{total} vs {sum}");
    }
}
