//! Global experiment parameters and the exponent ladder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scale and exponent parameters shared by every module.
///
/// The default ladder ties the small exponents to `epsilon`:
/// `delta = epsilon^2`, `delta1 = epsilon^4`, `delta2 = epsilon^6`,
/// and `alpha = K^(-epsilon)`. Any of them can be overridden explicitly.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Params {
    /// Spatial scale; tubes have length ~ `r` and radius `r^(1/2+delta)`.
    pub r: f64,
    pub epsilon: f64,
    /// Coarse caps per axis over `[-1, 1)`.
    pub k: u32,
    pub delta: f64,
    pub delta1: f64,
    pub delta2: f64,
    /// Lebesgue exponent for the scan target.
    pub p0: f64,
    /// Broadness threshold.
    pub alpha: f64,
    pub seed: u64,
}

impl Params {
    /// Builds parameters with the default ladder. Fails on out-of-range input.
    pub fn new(r: f64, epsilon: f64, k: u32, seed: u64) -> Result<Self> {
        let p = Params {
            r,
            epsilon,
            k,
            delta: epsilon * epsilon,
            delta1: epsilon.powi(4),
            delta2: epsilon.powi(6),
            p0: 3.25,
            alpha: (k as f64).powf(-epsilon),
            seed,
        };
        p.validate()?;
        Ok(p)
    }

    /// Convenience constructor used throughout the test suites:
    /// given `delta`, takes `epsilon = sqrt(delta)` and the default ladder.
    pub fn with_delta(r: f64, delta: f64, k: u32, seed: u64) -> Result<Self> {
        Self::new(r, delta.sqrt(), k, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r >= 4.0) {
            return Err(Error::InvalidParameter(format!("R = {} < 4", self.r)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon = {} not in (0, 1)",
                self.epsilon
            )));
        }
        if self.k < 2 {
            return Err(Error::InvalidParameter(format!("K = {} < 2", self.k)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} not in (0, 1)",
                self.alpha
            )));
        }
        if !(self.p0 >= 1.0) {
            return Err(Error::InvalidParameter(format!("p0 = {} < 1", self.p0)));
        }
        Ok(())
    }

    /// Partitioning degree `M = ceil(R^delta1) >= 1`.
    pub fn degree_m(&self) -> u32 {
        (self.r.powf(self.delta1).ceil() as u32).max(1)
    }

    /// Tube radius `R^(1/2+delta)`.
    pub fn tube_radius(&self) -> f64 {
        self.r.powf(0.5 + self.delta)
    }

    /// Fine cap side `R^(-1/2)`.
    pub fn omega_side(&self) -> f64 {
        self.r.powf(-0.5)
    }

    /// Wall thickness, identical to the tube radius.
    pub fn wall_threshold(&self) -> f64 {
        self.tube_radius()
    }

    /// Angle threshold `R^(-1/2+2delta)` separating tangential from
    /// transversal tubes.
    pub fn tangent_angle(&self) -> f64 {
        self.r.powf(-0.5 + 2.0 * self.delta)
    }

    /// Radius (and lattice spacing) of the covering balls `B_j`.
    pub fn ball_radius(&self) -> f64 {
        self.r.powf(1.0 - self.delta)
    }

    /// Coarse cap side `2/K` (K caps per axis partition `[-1, 1)`).
    pub fn cap_side(&self) -> f64 {
        2.0 / self.k as f64
    }

    /// Separation threshold `1/K` for the bilinear pair qualification.
    pub fn separation(&self) -> f64 {
        1.0 / self.k as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_ladder() {
        let p = Params::new(64.0, 0.3, 8, 1).unwrap();
        assert!((p.delta - 0.09).abs() < 1e-15);
        assert!((p.delta1 - 0.0081).abs() < 1e-15);
        assert!((p.delta2 - 0.000729).abs() < 1e-15);
        assert!((p.alpha - 8f64.powf(-0.3)).abs() < 1e-15);
        assert_eq!(p.p0, 3.25);
        assert!(p.degree_m() >= 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Params::new(2.0, 0.3, 8, 1).is_err());
        assert!(Params::new(64.0, 0.0, 8, 1).is_err());
        assert!(Params::new(64.0, 0.3, 1, 1).is_err());
    }

    #[test]
    fn acceptance_scale_quantities() {
        // delta = 0.05 is the scale used by the acceptance suite.
        let p = Params::with_delta(64.0, 0.05, 8, 1).unwrap();
        assert!((p.tube_radius() - 64f64.powf(0.55)).abs() < 1e-12);
        assert!((p.omega_side() - 0.125).abs() < 1e-15);
        assert!((p.tangent_angle() - 64f64.powf(-0.4)).abs() < 1e-12);
    }
}
