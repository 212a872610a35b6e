//! Spatial evaluation grids for extension values and Lp quadrature.

use serde::{Deserialize, Serialize};

use crate::num;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub enum Region {
    Ball { radius: f64 },
    Cube { center: [f64; 3], side: f64 },
    Custom,
}

/// A scattered list of evaluation points with per-point quadrature volume.
#[derive(Debug, Clone)]
pub struct EvalGrid {
    pub points: Vec<[f64; 3]>,
    pub cell_volume: Vec<f64>,
    pub region: Region,
}

impl EvalGrid {
    pub fn from_points(points: Vec<[f64; 3]>, cell_volume: f64, region: Region) -> Self {
        let n = points.len();
        EvalGrid {
            points,
            cell_volume: vec![cell_volume; n],
            region,
        }
    }

    /// Largest coordinate magnitude; drives the phase-resolution rule.
    pub fn max_coordinate(&self) -> f64 {
        self.points
            .iter()
            .flat_map(|p| p.iter())
            .fold(0.0f64, |m, &c| m.max(c.abs()))
    }

    /// Deterministic quasi-random cloud in the ball of the given radius
    /// (rejection sampling from a seeded stream), with the ball volume
    /// spread uniformly over the points.
    pub fn ball_cloud(radius: f64, n: usize, seed: u64) -> Self {
        use rand::Rng;
        let mut rng = num::rng(seed, 0xE0);
        let mut points = Vec::with_capacity(n);
        while points.len() < n {
            let x = [
                rng.random_range(-radius..radius),
                rng.random_range(-radius..radius),
                rng.random_range(-radius..radius),
            ];
            if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt() <= radius {
                points.push(x);
            }
        }
        let vol = 4.0 / 3.0 * std::f64::consts::PI * radius.powi(3) / n as f64;
        EvalGrid::from_points(points, vol, Region::Ball { radius })
    }
}

/// Tensor-product grid; keeps the product structure so the separable
/// evaluator can use it, plus a mask for region clipping.
#[derive(Debug, Clone)]
pub struct ProductEvalGrid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub zs: Vec<f64>,
    /// `index = (iz * ny + iy) * nx + ix`; false = excluded from quadrature.
    pub keep: Vec<bool>,
    pub cell_volume: f64,
    pub region: Region,
}

impl ProductEvalGrid {
    /// Midpoint grid over the cube circumscribing the ball, clipped to it.
    pub fn ball(radius: f64, n_per_axis: usize) -> Self {
        let n = n_per_axis;
        let h = 2.0 * radius / n as f64;
        let axis: Vec<f64> = (0..n).map(|i| -radius + (i as f64 + 0.5) * h).collect();
        let mut keep = Vec::with_capacity(n * n * n);
        for z in &axis {
            for y in &axis {
                for x in &axis {
                    keep.push((x * x + y * y + z * z).sqrt() <= radius);
                }
            }
        }
        ProductEvalGrid {
            xs: axis.clone(),
            ys: axis.clone(),
            zs: axis,
            keep,
            cell_volume: h * h * h,
            region: Region::Ball { radius },
        }
    }

    /// Full cube grid, nothing masked.
    pub fn cube(center: [f64; 3], side: f64, n_per_axis: usize) -> Self {
        let n = n_per_axis;
        let h = side / n as f64;
        let mk = |c: f64| -> Vec<f64> {
            (0..n).map(|i| c - side / 2.0 + (i as f64 + 0.5) * h).collect()
        };
        ProductEvalGrid {
            xs: mk(center[0]),
            ys: mk(center[1]),
            zs: mk(center[2]),
            keep: vec![true; n * n * n],
            cell_volume: h * h * h,
            region: Region::Cube { center, side },
        }
    }

    pub fn len(&self) -> usize {
        self.xs.len() * self.ys.len() * self.zs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn max_coordinate(&self) -> f64 {
        let m = |v: &[f64]| v.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
        m(&self.xs).max(m(&self.ys)).max(m(&self.zs))
    }

    /// Scattered view of the kept points.
    pub fn to_eval_grid(&self) -> EvalGrid {
        let mut points = Vec::new();
        for (iz, &z) in self.zs.iter().enumerate() {
            for (iy, &y) in self.ys.iter().enumerate() {
                for (ix, &x) in self.xs.iter().enumerate() {
                    if self.keep[(iz * self.ys.len() + iy) * self.xs.len() + ix] {
                        points.push([x, y, z]);
                    }
                }
            }
        }
        EvalGrid::from_points(points, self.cell_volume, self.region.clone())
    }
}
