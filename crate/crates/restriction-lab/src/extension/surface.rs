//! Complex-valued surface samples on the parameter disk, with quadrature
//! weights and the graph Jacobian `J = sqrt(1 + xi1^2 + xi2^2)`.
//!
//! The grid is a tensor midpoint grid over `[-1, 1)^2`; nodes whose center
//! falls outside the closed unit disk carry zero quadrature weight. All
//! integrals over the surface run over the weighted nodes only.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::num;

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceFunction {
    pub n1: usize,
    pub n2: usize,
    /// Node spacing per axis; equal for every function except strip
    /// rescalings, which are anisotropic.
    pub h1: f64,
    pub h2: f64,
    /// Lower-left corner of the covered rectangle; node `(i, j)` sits at
    /// `origin + ((i + 1/2) h1, (j + 1/2) h2)`.
    pub origin: [f64; 2],
    /// Row-major, `index = j * n1 + i`.
    pub values: Vec<Complex64>,
    /// Quadrature weight per node; zero outside the parameter disk.
    pub weights: Vec<f64>,
    pub jacobian: Vec<f64>,
    /// Max |value| over weighted nodes.
    pub sup_norm: f64,
}

impl SurfaceFunction {
    #[inline]
    pub fn node(&self, i: usize, j: usize) -> [f64; 2] {
        [
            self.origin[0] + (i as f64 + 0.5) * self.h1,
            self.origin[1] + (j as f64 + 0.5) * self.h2,
        ]
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.n1 + i
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Coarsest spacing, the resolution checked against phase-sampling rules.
    pub fn spacing(&self) -> f64 {
        self.h1.max(self.h2)
    }

    /// Integration density `value * J * weight` at a node.
    #[inline]
    pub fn term(&self, idx: usize) -> Complex64 {
        self.values[idx] * (self.jacobian[idx] * self.weights[idx])
    }

    pub fn recompute_sup(&mut self) {
        self.sup_norm = self
            .values
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w > 0.0)
            .map(|(v, _)| v.norm())
            .fold(0.0, f64::max);
    }

    /// Node list with nonzero weight, as `(xi, density)` pairs in index order.
    pub fn weighted_terms(&self) -> Vec<([f64; 2], Complex64)> {
        let mut out = Vec::with_capacity(self.len());
        for j in 0..self.n2 {
            for i in 0..self.n1 {
                let idx = self.idx(i, j);
                if self.weights[idx] > 0.0 {
                    out.push((self.node(i, j), self.term(idx)));
                }
            }
        }
        out
    }

    /// Surface mass `sum |f|^2 J w` over nodes selected by `pred`.
    pub fn l2_mass_where(&self, pred: impl Fn([f64; 2]) -> bool) -> f64 {
        let f = |idx: usize| {
            let (i, j) = (idx % self.n1, idx / self.n1);
            if self.weights[idx] > 0.0 && pred(self.node(i, j)) {
                num::abs2(self.values[idx]) * self.jacobian[idx] * self.weights[idx]
            } else {
                0.0
            }
        };
        num::pairwise_map(self.len(), &f)
    }

    /// Pointwise restriction to the nodes selected by `pred` (sharp cutoff).
    pub fn restrict(&self, pred: impl Fn([f64; 2]) -> bool) -> SurfaceFunction {
        let mut out = self.clone();
        for j in 0..out.n2 {
            for i in 0..out.n1 {
                let idx = out.idx(i, j);
                if !pred(out.node(i, j)) {
                    out.values[idx] = Complex64::ZERO;
                }
            }
        }
        out.recompute_sup();
        out
    }
}

/// Standard sampling over `[-1, 1)^2` with `n` nodes per axis, clipped to
/// the closed unit disk by node-center membership.
pub fn sample(family: &FunctionFamily, n: usize) -> SurfaceFunction {
    let h = 2.0 / n as f64;
    // The random-smooth family factors over the axes; sampling it through
    // per-axis mode tables avoids one complex exp per (node, mode) pair.
    let fast = family.coeff_table().map(|(modes, coeffs, scale)| {
        let m = modes as i64;
        // Same coordinates on both axes, so one power table serves both.
        let pows: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                let xi = -1.0 + (i as f64 + 0.5) * h;
                let u = Complex64::new(0.0, std::f64::consts::PI * xi / 2.0).exp();
                (-m..=m).map(|e| u.powi(e as i32)).collect()
            })
            .collect();
        (m, coeffs, scale, pows)
    });
    let mut values = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    let mut jacobian = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let xi = [-1.0 + (i as f64 + 0.5) * h, -1.0 + (j as f64 + 0.5) * h];
            let inside = xi[0] * xi[0] + xi[1] * xi[1] <= 1.0;
            let v = if !inside {
                Complex64::ZERO
            } else if let Some((m, coeffs, scale, pows)) = &fast {
                let mut acc = Complex64::ZERO;
                for &(m1, m2, c) in coeffs {
                    acc += c * pows[i][(m1 + m) as usize] * pows[j][(m2 + m) as usize];
                }
                acc * *scale
            } else {
                family.eval(xi)
            };
            values.push(v);
            weights.push(if inside { h * h } else { 0.0 });
            jacobian.push((1.0 + xi[0] * xi[0] + xi[1] * xi[1]).sqrt());
        }
    }
    let mut f = SurfaceFunction {
        n1: n,
        n2: n,
        h1: h,
        h2: h,
        origin: [-1.0, -1.0],
        values,
        weights,
        jacobian,
        sup_norm: 0.0,
    };
    f.recompute_sup();
    f
}

/// Grid size for a target spacing: the smallest even `n` with `2/n <= h`.
pub fn grid_size_for_spacing(h_max: f64) -> usize {
    let mut n = (2.0 / h_max).ceil() as usize;
    if n % 2 == 1 {
        n += 1;
    }
    n.max(2)
}

/// The function families the experiments draw from.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum FunctionFamily {
    /// `f = value` on the whole disk.
    Constant { re: f64, im: f64 },
    /// Smooth bump equal to 1 at `center`, supported in the square of
    /// half-width `radius` around it.
    SingleCap { center: [f64; 2], radius: f64 },
    /// Random trigonometric polynomial with decaying coefficients,
    /// normalized so the sup over the disk is at most 1.
    RandomSmooth { seed: u64, modes: u32, scale: f64 },
}

impl FunctionFamily {
    pub fn constant_one() -> Self {
        FunctionFamily::Constant { re: 1.0, im: 0.0 }
    }

    /// Builds the random-smooth family and computes its normalization.
    pub fn random_smooth(seed: u64) -> Self {
        let modes = 3;
        let raw = FunctionFamily::RandomSmooth {
            seed,
            modes,
            scale: 1.0,
        };
        // Probe the sup on a fixed grid; true sup can exceed the probe only
        // marginally at these frequencies, so pad by 2%.
        let mut sup: f64 = 0.0;
        let n = 257;
        for j in 0..n {
            for i in 0..n {
                let xi = [-1.0 + 2.0 * i as f64 / (n - 1) as f64, -1.0 + 2.0 * j as f64 / (n - 1) as f64];
                if xi[0] * xi[0] + xi[1] * xi[1] <= 1.0 {
                    sup = sup.max(raw.eval(xi).norm());
                }
            }
        }
        FunctionFamily::RandomSmooth {
            seed,
            modes,
            scale: 1.0 / (1.02 * sup),
        }
    }

    pub fn eval(&self, xi: [f64; 2]) -> Complex64 {
        match *self {
            FunctionFamily::Constant { re, im } => Complex64::new(re, im),
            FunctionFamily::SingleCap { center, radius } => {
                let u = (xi[0] - center[0]) / radius;
                let v = (xi[1] - center[1]) / radius;
                Complex64::new(bump(u) * bump(v), 0.0)
            }
            FunctionFamily::RandomSmooth { scale, .. } => {
                let (_, coeffs, _) = self.coeff_table().unwrap();
                let mut acc = Complex64::ZERO;
                for (m1, m2, c) in coeffs {
                    let phase =
                        std::f64::consts::PI * (m1 as f64 * xi[0] + m2 as f64 * xi[1]) / 2.0;
                    acc += c * Complex64::new(0.0, phase).exp();
                }
                acc * scale
            }
        }
    }

    /// Mode table of the random-smooth family; `None` for the other kinds.
    fn coeff_table(&self) -> Option<(u32, Vec<(i64, i64, Complex64)>, f64)> {
        let FunctionFamily::RandomSmooth { seed, modes, scale } = *self else {
            return None;
        };
        let m = modes as i64;
        let mut rng = num::rng(seed, 0xF0);
        let mut coeffs = Vec::with_capacity(((2 * m + 1) * (2 * m + 1)) as usize);
        for m1 in -m..=m {
            for m2 in -m..=m {
                let re: f64 = rng.random_range(-1.0..1.0);
                let im: f64 = rng.random_range(-1.0..1.0);
                let decay = 1.0 / (1.0 + (m1 * m1 + m2 * m2) as f64);
                coeffs.push((m1, m2, Complex64::new(re, im) * decay));
            }
        }
        Some((modes, coeffs, scale))
    }
}

/// `exp(-1 / (1 - t^2))` normalized to 1 at the origin, zero for `|t| >= 1`.
pub fn bump(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - t * t)).exp()
    }
}

// ---- binary import/export ------------------------------------------------
//
// Layout: a JSON header with the grid geometry, then the raw value array as
// little-endian f64 pairs (re, im) in row-major grid order.

#[derive(Debug, Serialize, Deserialize)]
struct BinaryHeader {
    n1: usize,
    n2: usize,
    h1: f64,
    h2: f64,
    origin: [f64; 2],
    clip: String,
    r_max: f64,
}

pub fn export(f: &SurfaceFunction, header_path: &Path, data_path: &Path, r_max: f64) -> Result<()> {
    let header = BinaryHeader {
        n1: f.n1,
        n2: f.n2,
        h1: f.h1,
        h2: f.h2,
        origin: f.origin,
        clip: "unit-disk".to_string(),
        r_max,
    };
    std::fs::write(header_path, serde_json::to_string_pretty(&header)?)?;
    let mut buf = Vec::with_capacity(f.len() * 16);
    for v in &f.values {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    let mut out = std::fs::File::create(data_path)?;
    out.write_all(&buf)?;
    Ok(())
}

pub fn import(header_path: &Path, data_path: &Path) -> Result<SurfaceFunction> {
    let header: BinaryHeader = serde_json::from_str(&std::fs::read_to_string(header_path)?)?;
    let mut buf = Vec::new();
    std::fs::File::open(data_path)?.read_to_end(&mut buf)?;
    let expect = header.n1 * header.n2 * 16;
    if buf.len() != expect {
        return Err(Error::MalformedConfig(format!(
            "binary payload is {} bytes, expected {}",
            buf.len(),
            expect
        )));
    }
    let mut values = Vec::with_capacity(header.n1 * header.n2);
    for chunk in buf.chunks_exact(16) {
        let re = f64::from_le_bytes(chunk[0..8].try_into().unwrap());
        let im = f64::from_le_bytes(chunk[8..16].try_into().unwrap());
        values.push(Complex64::new(re, im));
    }
    let mut weights = Vec::with_capacity(values.len());
    let mut jacobian = Vec::with_capacity(values.len());
    for j in 0..header.n2 {
        for i in 0..header.n1 {
            let xi = [
                header.origin[0] + (i as f64 + 0.5) * header.h1,
                header.origin[1] + (j as f64 + 0.5) * header.h2,
            ];
            let inside = xi[0] * xi[0] + xi[1] * xi[1] <= 1.0;
            weights.push(if inside { header.h1 * header.h2 } else { 0.0 });
            jacobian.push((1.0 + xi[0] * xi[0] + xi[1] * xi[1]).sqrt());
        }
    }
    let mut f = SurfaceFunction {
        n1: header.n1,
        n2: header.n2,
        h1: header.h1,
        h2: header.h2,
        origin: header.origin,
        values,
        weights,
        jacobian,
        sup_norm: 0.0,
    };
    f.recompute_sup();
    Ok(f)
}
