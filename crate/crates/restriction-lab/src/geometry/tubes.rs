//! Slanted tubes, deterministic tube families, and Monte Carlo overlap
//! measure.
//!
//! A tube is a sheared cylinder: its horizontal slice at height `x3` is the
//! disc of radius `radius` centered at `base + x3 * slope`, for
//! `|x3| <= half_extent`. The axis is parallel to the surface normal of the
//! fine cap the tube belongs to.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::caps::{normal_at, slope_of};
use crate::geometry::Params;
use crate::num;

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Tube {
    /// Center of the horizontal slice at `x3 = 0`.
    pub base: [f64; 2],
    /// Center of the fine cap; determines direction and slope.
    pub omega_center: [f64; 2],
    pub radius: f64,
    /// Vertical half-extent, `|x3| <= half_extent`.
    pub half_extent: f64,
}

impl Tube {
    pub fn slope(&self) -> [f64; 2] {
        slope_of(self.omega_center)
    }

    /// Unit direction `(w, v, -1)/sqrt(v^2+w^2+1)` for `omega = (v, w)`.
    pub fn direction(&self) -> [f64; 3] {
        normal_at(self.omega_center)
    }

    pub fn axis_point(&self, x3: f64) -> [f64; 3] {
        let s = self.slope();
        [self.base[0] + x3 * s[0], self.base[1] + x3 * s[1], x3]
    }

    /// Horizontal distance from `x` to the tube axis at the slice of `x`.
    pub fn transverse_offset(&self, x: [f64; 3]) -> f64 {
        let s = self.slope();
        let dx = x[0] - self.base[0] - x[2] * s[0];
        let dy = x[1] - self.base[1] - x[2] * s[1];
        dx.hypot(dy)
    }

    pub fn contains(&self, x: [f64; 3]) -> bool {
        x[2].abs() <= self.half_extent && self.transverse_offset(x) <= self.radius
    }

    /// Euclidean distance from `x` to the solid tube (0 inside). Minimizes
    /// the slice-wise distance over the vertical extent; the profile is
    /// piecewise smooth with a single well, so a scan plus local refinement
    /// is adequate and deterministic.
    pub fn distance(&self, x: [f64; 3]) -> f64 {
        let slice = |t: f64| {
            let s = self.slope();
            let dx = x[0] - self.base[0] - t * s[0];
            let dy = x[1] - self.base[1] - t * s[1];
            let horiz = (dx.hypot(dy) - self.radius).max(0.0);
            horiz.hypot(x[2] - t)
        };
        let lo = -self.half_extent;
        let hi = self.half_extent;
        let n = 256;
        let mut best_t = lo;
        let mut best = f64::INFINITY;
        for i in 0..=n {
            let t = lo + (hi - lo) * i as f64 / n as f64;
            let d = slice(t);
            if d < best {
                best = d;
                best_t = t;
            }
        }
        let mut a = (best_t - (hi - lo) / n as f64).max(lo);
        let mut b = (best_t + (hi - lo) / n as f64).min(hi);
        for _ in 0..60 {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            if slice(m1) <= slice(m2) {
                b = m2;
            } else {
                a = m1;
            }
        }
        slice(0.5 * (a + b)).min(best)
    }
}

/// Deterministic tube family of a fine cap: bases on the square lattice of
/// spacing `R^(1/2+delta)`, extended far enough that every point of the
/// spatial cylinder `{ |x'| <= R, |x3| <= R }` lies in at least one tube.
pub fn build_tubes(omega: [f64; 2], params: &Params) -> Result<Vec<Tube>> {
    if params.r < 4.0 {
        return Err(Error::InvalidParameter(format!("R = {} < 4", params.r)));
    }
    let spacing = params.tube_radius();
    let slope = slope_of(omega);
    let slope_norm = slope[0].hypot(slope[1]);
    let extent = params.r * (1.0 + slope_norm) + 2.0 * spacing;
    let n = (extent / spacing).ceil() as i64;
    let mut tubes = Vec::new();
    for j in -n..=n {
        for i in -n..=n {
            let base = [i as f64 * spacing, j as f64 * spacing];
            if base[0].hypot(base[1]) <= extent {
                tubes.push(Tube {
                    base,
                    omega_center: omega,
                    radius: spacing,
                    half_extent: params.r,
                });
            }
        }
    }
    Ok(tubes)
}

/// A true cylinder, for the closed-form overlap cross-checks.
#[derive(Debug, Clone, Copy)]
pub struct Cylinder {
    pub point: [f64; 3],
    /// Unit axis direction.
    pub direction: [f64; 3],
    pub radius: f64,
    /// `None` means infinite.
    pub half_length: Option<f64>,
}

impl Cylinder {
    pub fn contains(&self, x: [f64; 3]) -> bool {
        let d = self.direction;
        let r = [x[0] - self.point[0], x[1] - self.point[1], x[2] - self.point[2]];
        let t = r[0] * d[0] + r[1] * d[1] + r[2] * d[2];
        if let Some(l) = self.half_length {
            if t.abs() > l {
                return false;
            }
        }
        let p = [r[0] - t * d[0], r[1] - t * d[1], r[2] - t * d[2]];
        p[0] * p[0] + p[1] * p[1] + p[2] * p[2] <= self.radius * self.radius
    }

    /// Axis-aligned bounds; infinite axes produce infinite bounds.
    fn aabb(&self) -> [[f64; 2]; 3] {
        let mut out = [[0.0; 2]; 3];
        for a in 0..3 {
            let axis_span = match self.half_length {
                Some(l) => l * self.direction[a].abs(),
                None => {
                    if self.direction[a].abs() > 1e-12 {
                        f64::INFINITY
                    } else {
                        0.0
                    }
                }
            };
            let cross = (1.0 - self.direction[a] * self.direction[a]).max(0.0).sqrt();
            let half = axis_span + self.radius * cross;
            out[a] = [self.point[a] - half, self.point[a] + half];
        }
        out
    }
}

/// Monte Carlo estimate of a membership volume over a box, with standard
/// error. Deterministic for a fixed seed; sample order is fixed.
fn mc_volume_in_box(
    bounds: [[f64; 2]; 3],
    samples: u64,
    seed: u64,
    inside: impl Fn([f64; 3]) -> bool,
) -> (f64, f64) {
    use rand::Rng;
    let vol: f64 = bounds.iter().map(|b| b[1] - b[0]).product();
    if vol <= 0.0 {
        return (0.0, 0.0);
    }
    let mut rng = num::rng(seed, 0xB0);
    let mut hits = 0u64;
    for _ in 0..samples {
        let x = [
            rng.random_range(bounds[0][0]..bounds[0][1]),
            rng.random_range(bounds[1][0]..bounds[1][1]),
            rng.random_range(bounds[2][0]..bounds[2][1]),
        ];
        if inside(x) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    let se = vol * (p * (1.0 - p) / samples as f64).sqrt();
    (vol * p, se)
}

/// Overlap volume of two cylinders by plain Monte Carlo over the
/// intersection of their bounding boxes. Errors if that box is unbounded.
pub fn cylinder_overlap_measure(
    c1: &Cylinder,
    c2: &Cylinder,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples < 1000 {
        return Err(Error::InvalidParameter("need >= 1000 samples".into()));
    }
    let (a, b) = (c1.aabb(), c2.aabb());
    let mut bounds = [[0.0; 2]; 3];
    for i in 0..3 {
        bounds[i] = [a[i][0].max(b[i][0]), a[i][1].min(b[i][1])];
        if bounds[i][0] >= bounds[i][1] {
            return Ok((0.0, 0.0));
        }
        if !bounds[i][0].is_finite() || !bounds[i][1].is_finite() {
            return Err(Error::InvalidParameter(
                "unbounded intersection box".into(),
            ));
        }
    }
    Ok(mc_volume_in_box(bounds, samples, seed, |x| {
        c1.contains(x) && c2.contains(x)
    }))
}

/// Monte Carlo measure of the intersection of two tubes, stratified over
/// horizontal slabs. Symmetric in its arguments bit-for-bit (the pair is
/// canonicalized before sampling) and reproducible under a fixed seed.
pub fn tube_overlap_measure(
    t1: &Tube,
    t2: &Tube,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    use rand::Rng;
    if samples < 1000 {
        return Err(Error::InvalidParameter("need >= 1000 samples".into()));
    }
    // Canonical order makes the sample stream identical for (t1,t2), (t2,t1).
    let key = |t: &Tube| {
        (
            t.base[0].to_bits(),
            t.base[1].to_bits(),
            t.omega_center[0].to_bits(),
            t.omega_center[1].to_bits(),
        )
    };
    let (ta, tb) = if key(t1) <= key(t2) { (t1, t2) } else { (t2, t1) };

    let lo3 = (-ta.half_extent).max(-tb.half_extent);
    let hi3 = ta.half_extent.min(tb.half_extent);
    if lo3 >= hi3 {
        return Ok((0.0, 0.0));
    }

    // Per-slab bounding boxes: intersect the two slice-disc boxes.
    let n_slabs = 64usize;
    let dz = (hi3 - lo3) / n_slabs as f64;
    let mut boxes = Vec::with_capacity(n_slabs);
    let mut total_vol = 0.0;
    for k in 0..n_slabs {
        let z0 = lo3 + k as f64 * dz;
        let z1 = z0 + dz;
        let disc_box = |t: &Tube| {
            let s = t.slope();
            let cx = [t.base[0] + z0 * s[0], t.base[0] + z1 * s[0]];
            let cy = [t.base[1] + z0 * s[1], t.base[1] + z1 * s[1]];
            [
                [cx[0].min(cx[1]) - t.radius, cx[0].max(cx[1]) + t.radius],
                [cy[0].min(cy[1]) - t.radius, cy[0].max(cy[1]) + t.radius],
            ]
        };
        let (ba, bb) = (disc_box(ta), disc_box(tb));
        let bx = [ba[0][0].max(bb[0][0]), ba[0][1].min(bb[0][1])];
        let by = [ba[1][0].max(bb[1][0]), ba[1][1].min(bb[1][1])];
        if bx[0] < bx[1] && by[0] < by[1] {
            let vol = (bx[1] - bx[0]) * (by[1] - by[0]) * dz;
            total_vol += vol;
            boxes.push((k, [bx, by, [z0, z1]], vol));
        }
    }
    if boxes.is_empty() {
        return Ok((0.0, 0.0));
    }

    let mut estimate = 0.0;
    let mut variance = 0.0;
    for (k, b, vol) in &boxes {
        let n_k = ((samples as f64 * vol / total_vol).ceil() as u64).max(32);
        let mut rng = num::rng(seed, 0xC0 + *k as u64);
        let mut hits = 0u64;
        for _ in 0..n_k {
            let x = [
                rng.random_range(b[0][0]..b[0][1]),
                rng.random_range(b[1][0]..b[1][1]),
                rng.random_range(b[2][0]..b[2][1]),
            ];
            if ta.contains(x) && tb.contains(x) {
                hits += 1;
            }
        }
        let p = hits as f64 / n_k as f64;
        estimate += vol * p;
        variance += vol * vol * p * (1.0 - p) / n_k as f64;
    }
    Ok((estimate, variance.sqrt()))
}
