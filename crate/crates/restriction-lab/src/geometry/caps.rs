//! Caps, strips, and fine caps on the parameter disk, plus the normal map
//! of the saddle surface `xi3 = xi1 * xi2`.
//!
//! Conventions: coarse caps are half-open squares of side `2/K`, `K` per
//! axis, exactly partitioning `[-1, 1)^2`; fine caps are half-open squares
//! of side `R^(-1/2)` on a lattice anchored at `-1`. "Meets the disk" is
//! always tested against the closed unit disk with a small tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Params;

/// Tolerance for closed-set membership of grid squares in the unit disk.
const DISK_TOL: f64 = 1e-12;

/// Coarse frequency cap: a half-open square of side `2/K`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Cap {
    pub index: (u32, u32),
    pub center: [f64; 2],
    /// Half the side length, `1/K`.
    pub half_width: f64,
}

/// Fine frequency cap: a half-open square of side `R^(-1/2)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct OmegaCap {
    pub index: (u32, u32),
    pub center: [f64; 2],
    /// Half the side length, `R^(-1/2) / 2`.
    pub radius: f64,
}

/// A strip of full width `2/K`; `membership |x . normal - offset| <= width/2`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Strip {
    /// Unit vector along the center line.
    pub direction: [f64; 2],
    /// Signed distance of the center line from the origin.
    pub offset: f64,
    pub width: f64,
}

/// Qualification flags of a cap pair for the bilinear operator.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct PairFlags {
    /// Set distance of the closed squares is at least `1/K`.
    pub separated: bool,
    /// Joining strip makes an angle `> (3/2) K^-1` with both axes.
    pub nonparallel: bool,
}

impl Cap {
    pub fn side(&self) -> f64 {
        2.0 * self.half_width
    }

    /// Half-open membership.
    pub fn contains(&self, xi: [f64; 2]) -> bool {
        let h = self.half_width;
        xi[0] >= self.center[0] - h
            && xi[0] < self.center[0] + h
            && xi[1] >= self.center[1] - h
            && xi[1] < self.center[1] + h
    }

    /// Euclidean set distance between the closed squares.
    pub fn set_distance(&self, other: &Cap) -> f64 {
        let gx = ((self.center[0] - other.center[0]).abs()
            - (self.half_width + other.half_width))
            .max(0.0);
        let gy = ((self.center[1] - other.center[1]).abs()
            - (self.half_width + other.half_width))
            .max(0.0);
        gx.hypot(gy)
    }

    /// Closed-square vs half-open-strip intersection test. The strip slab
    /// is `[-w/2, w/2)` in its normal coordinate, matching the half-open
    /// stacking of the axis families, so a cap meets at most two strips
    /// per family.
    pub fn meets_strip(&self, strip: &Strip) -> bool {
        let n = [-strip.direction[1], strip.direction[0]];
        let d = self.center[0] * n[0] + self.center[1] * n[1] - strip.offset;
        let support = self.half_width * (n[0].abs() + n[1].abs());
        d - support < strip.width / 2.0 && d + support >= -strip.width / 2.0 - DISK_TOL
    }
}

impl OmegaCap {
    pub fn side(&self) -> f64 {
        2.0 * self.radius
    }

    /// Half-open membership in the dilated square `m * Omega`.
    pub fn dilated_contains(&self, m: f64, xi: [f64; 2]) -> bool {
        let h = m * self.radius;
        (xi[0] - self.center[0]).abs() < h && (xi[1] - self.center[1]).abs() < h
    }
}

fn square_meets_disk(center: [f64; 2], half: f64) -> bool {
    let gx = (center[0].abs() - half).max(0.0);
    let gy = (center[1].abs() - half).max(0.0);
    gx * gx + gy * gy <= 1.0 + DISK_TOL
}

/// Coarse cap cover: the half-open squares of the `K x K` grid on
/// `[-1, 1)^2` that meet the closed unit disk, in row-major index order.
pub fn build_caps(params: &Params) -> Result<Vec<Cap>> {
    if params.k < 2 {
        return Err(Error::InvalidParameter(format!("K = {} < 2", params.k)));
    }
    let k = params.k;
    let half = 1.0 / k as f64;
    let mut caps = Vec::new();
    for j in 0..k {
        for i in 0..k {
            let center = [
                -1.0 + (2 * i + 1) as f64 / k as f64,
                -1.0 + (2 * j + 1) as f64 / k as f64,
            ];
            if square_meets_disk(center, half) {
                caps.push(Cap {
                    index: (i, j),
                    center,
                    half_width: half,
                });
            }
        }
    }
    Ok(caps)
}

/// Grid index of the unique half-open cap containing `xi`.
pub fn cap_index_of(params: &Params, xi: [f64; 2]) -> (u32, u32) {
    let k = params.k as f64;
    let f = |t: f64| (((t + 1.0) * k / 2.0).floor() as i64).clamp(0, params.k as i64 - 1) as u32;
    (f(xi[0]), f(xi[1]))
}

/// Both axis families of strips, `K` per family. Family 0 has center lines
/// parallel to `e1` (strips stacked along `xi2`), family 1 parallel to `e2`.
pub fn build_strips(params: &Params) -> Result<Vec<Strip>> {
    if params.k < 2 {
        return Err(Error::InvalidParameter(format!("K = {} < 2", params.k)));
    }
    let k = params.k;
    let width = 2.0 / k as f64;
    let mut strips = Vec::with_capacity(2 * k as usize);
    for j in 0..k {
        let offset = -1.0 + (2 * j + 1) as f64 / k as f64;
        strips.push(Strip {
            direction: [1.0, 0.0],
            offset,
            width,
        });
    }
    for j in 0..k {
        let offset = -1.0 + (2 * j + 1) as f64 / k as f64;
        strips.push(Strip {
            direction: [0.0, 1.0],
            offset: -offset,
            width,
        });
    }
    Ok(strips)
}

/// Strip through the centers of two caps, with the separation and
/// axis-parallelism flags used by the bilinear operator.
pub fn pair_strip(t1: &Cap, t2: &Cap, params: &Params) -> Result<(Strip, PairFlags)> {
    let dx = t2.center[0] - t1.center[0];
    let dy = t2.center[1] - t1.center[1];
    let len = dx.hypot(dy);
    if len == 0.0 {
        return Err(Error::DegeneratePair);
    }
    let direction = [dx / len, dy / len];
    let normal = [-direction[1], direction[0]];
    let offset = t1.center[0] * normal[0] + t1.center[1] * normal[1];
    let strip = Strip {
        direction,
        offset,
        width: params.cap_side(),
    };
    let separated = t1.set_distance(t2) >= params.separation() - DISK_TOL;
    let threshold = 1.5 * params.separation();
    // Angle between the center line and an axis is asin of the orthogonal
    // component of the unit direction.
    let angle_e1 = direction[1].abs().min(1.0).asin();
    let angle_e2 = direction[0].abs().min(1.0).asin();
    let nonparallel = angle_e1 > threshold && angle_e2 > threshold;
    Ok((strip, PairFlags { separated, nonparallel }))
}

/// Fine cap cover: half-open squares of side `R^(-1/2)` on a lattice
/// anchored at `-1`, retained when they meet the closed unit disk.
pub fn build_omega_caps(params: &Params) -> Result<Vec<OmegaCap>> {
    if params.r < 4.0 {
        return Err(Error::InvalidParameter(format!("R = {} < 4", params.r)));
    }
    let side = params.omega_side();
    let n = (2.0 / side).ceil() as u32;
    let mut caps = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let center = [
                -1.0 + (i as f64 + 0.5) * side,
                -1.0 + (j as f64 + 0.5) * side,
            ];
            if square_meets_disk(center, side / 2.0) {
                caps.push(OmegaCap {
                    index: (i, j),
                    center,
                    radius: side / 2.0,
                });
            }
        }
    }
    Ok(caps)
}

/// Unit normal of the saddle at the surface point over `omega = (v, w)`:
/// `(w, v, -1) / sqrt(v^2 + w^2 + 1)`.
pub fn normal_at(omega: [f64; 2]) -> [f64; 3] {
    let (v, w) = (omega[0], omega[1]);
    let n = (v * v + w * w + 1.0).sqrt();
    [w / n, v / n, -1.0 / n]
}

/// Horizontal drift of the tube axis per unit height: the axis through
/// base `x0` is `{ (x0 + x3 * slope, x3) }`, parallel to [`normal_at`].
pub fn slope_of(omega: [f64; 2]) -> [f64; 2] {
    [-omega[1], -omega[0]]
}
