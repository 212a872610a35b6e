//! Parabolic rescaling of caps and axis strips back to unit scale.
//!
//! For a cap centered at `c` the substitution `xi = c + eta/K` turns the
//! extension of the restricted function into an extension of a unit-scale
//! function evaluated at an affine image of `x`:
//!
//! `E[f chi_cap](x) = e^{i(x1 c1 + x2 c2 + x3 c1 c2)} K^-2
//!                    [E f^K](K^-1(x1 + x3 c2), K^-1(x2 + x3 c1), K^-2 x3)`
//!
//! and similarly for strips with the anisotropic substitution. The rescaled
//! samples are transported node-by-node (values copied, weights carrying the
//! substitution Jacobian), so the discrete identity holds to rounding and
//! the sup-norm is preserved exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::SurfaceFunction;
use crate::geometry::{Cap, Strip};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum CoordinateMap {
    /// Cap centered at `center`, scale factor `k`.
    Cap { center: [f64; 2], k: f64 },
    /// Strip with center line `xi2 = offset`, parallel to `e1`.
    StripE1 { offset: f64, k: f64 },
    /// Strip with center line `xi1 = offset`, parallel to `e2`.
    StripE2 { offset: f64, k: f64 },
}

impl CoordinateMap {
    /// The affine image at which the rescaled extension is evaluated.
    pub fn map_point(&self, x: [f64; 3]) -> [f64; 3] {
        match *self {
            CoordinateMap::Cap { center: c, k } => [
                (x[0] + x[2] * c[1]) / k,
                (x[1] + x[2] * c[0]) / k,
                x[2] / (k * k),
            ],
            CoordinateMap::StripE1 { offset, k } => [x[0] + x[2] * offset, x[1] / k, x[2] / k],
            CoordinateMap::StripE2 { offset, k } => [x[0] / k, x[1] + x[2] * offset, x[2] / k],
        }
    }

    /// Amplitude prefactor: `K^-2` for caps, `K^-1` for strips.
    pub fn amplitude(&self) -> f64 {
        match *self {
            CoordinateMap::Cap { k, .. } => 1.0 / (k * k),
            CoordinateMap::StripE1 { k, .. } | CoordinateMap::StripE2 { k, .. } => 1.0 / k,
        }
    }

    /// Unimodular phase from translating the region to the origin.
    pub fn phase(&self, x: [f64; 3]) -> Complex64 {
        let theta = match *self {
            CoordinateMap::Cap { center: c, k: _ } => x[0] * c[0] + x[1] * c[1] + x[2] * c[0] * c[1],
            CoordinateMap::StripE1 { offset, .. } => x[1] * offset,
            CoordinateMap::StripE2 { offset, .. } => x[0] * offset,
        };
        Complex64::new(0.0, theta).exp()
    }
}

#[derive(Debug, Clone)]
pub struct Rescaled {
    pub function: SurfaceFunction,
    pub map: CoordinateMap,
}

pub enum RescaleRegion<'a> {
    Cap(&'a Cap),
    Strip(&'a Strip),
}

/// Rescales `f` restricted to `region` to unit scale. The grid of the
/// result is the image of the region's grid nodes; weights absorb the
/// substitution Jacobian and the graph-measure ratio, so that
/// `E[f restricted](x) = phase(x) * amplitude * E[f^K](map_point(x))`
/// holds term-by-term in the quadrature.
pub fn parabolic_rescale(f: &SurfaceFunction, region: RescaleRegion, k: f64) -> Result<Rescaled> {
    if k < 1.0 {
        return Err(Error::InvalidParameter(format!("scale K = {k} < 1")));
    }
    // Index ranges of nodes inside the region.
    let (i_range, j_range, map) = match region {
        RescaleRegion::Cap(cap) => {
            let lo = [cap.center[0] - cap.half_width, cap.center[1] - cap.half_width];
            let hi = [cap.center[0] + cap.half_width, cap.center[1] + cap.half_width];
            (
                node_range(f.origin[0], f.h1, f.n1, lo[0], hi[0]),
                node_range(f.origin[1], f.h2, f.n2, lo[1], hi[1]),
                CoordinateMap::Cap { center: cap.center, k },
            )
        }
        RescaleRegion::Strip(strip) => {
            if strip.direction[1] == 0.0 {
                let c = strip.offset;
                (
                    0..f.n1,
                    node_range(f.origin[1], f.h2, f.n2, c - strip.width / 2.0, c + strip.width / 2.0),
                    CoordinateMap::StripE1 { offset: c, k },
                )
            } else if strip.direction[0] == 0.0 {
                let c = -strip.offset;
                (
                    node_range(f.origin[0], f.h1, f.n1, c - strip.width / 2.0, c + strip.width / 2.0),
                    0..f.n2,
                    CoordinateMap::StripE2 { offset: c, k },
                )
            } else {
                return Err(Error::InvalidParameter(
                    "strip-mode rescale requires an axis-parallel strip".into(),
                ));
            }
        }
    };

    let (scale1, scale2, center) = match map {
        CoordinateMap::Cap { center, k } => (k, k, center),
        CoordinateMap::StripE1 { offset, k } => (1.0, k, [0.0, offset]),
        CoordinateMap::StripE2 { offset, k } => (k, 1.0, [offset, 0.0]),
    };

    let n1 = i_range.len();
    let n2 = j_range.len();
    if n1 == 0 || n2 == 0 {
        return Err(Error::EmptySelection("region contains no grid nodes".into()));
    }
    let h1 = f.h1 * scale1;
    let h2 = f.h2 * scale2;
    let origin = [
        (f.origin[0] + i_range.start as f64 * f.h1 - center[0]) * scale1,
        (f.origin[1] + j_range.start as f64 * f.h2 - center[1]) * scale2,
    ];

    let mut values = Vec::with_capacity(n1 * n2);
    let mut weights = Vec::with_capacity(n1 * n2);
    let mut jacobian = Vec::with_capacity(n1 * n2);
    for j in j_range.clone() {
        for i in i_range.clone() {
            let src = f.idx(i, j);
            let xi = f.node(i, j);
            let eta = [(xi[0] - center[0]) * scale1, (xi[1] - center[1]) * scale2];
            let j_new = (1.0 + eta[0] * eta[0] + eta[1] * eta[1]).sqrt();
            values.push(f.values[src]);
            // weight * (scale of dxi) * J_old / J_new keeps the quadrature
            // density exactly equal to the substituted integrand.
            weights.push(f.weights[src] * scale1 * scale2 * f.jacobian[src] / j_new);
            jacobian.push(j_new);
        }
    }
    let mut function = SurfaceFunction {
        n1,
        n2,
        h1,
        h2,
        origin,
        values,
        weights,
        jacobian,
        sup_norm: 0.0,
    };
    function.recompute_sup();
    Ok(Rescaled { function, map })
}

fn node_range(origin: f64, h: f64, n: usize, lo: f64, hi: f64) -> std::ops::Range<usize> {
    // Nodes at origin + (i + 1/2) h inside the half-open [lo, hi).
    let start = ((lo - origin) / h - 0.5).ceil().max(0.0) as usize;
    let mut end = (((hi - origin) / h - 0.5).ceil().max(0.0) as usize).min(n);
    if end < start {
        end = start;
    }
    start..end
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{evaluate_extension_at, sample, FunctionFamily};

    fn origin_cap(half_width: f64) -> Cap {
        Cap {
            index: (0, 0),
            center: [0.0, 0.0],
            half_width,
        }
    }

    #[test]
    fn identity_at_k_equal_one() {
        let f = sample(&FunctionFamily::random_smooth(3), 64);
        let cap = origin_cap(0.25);
        let r = parabolic_rescale(&f, RescaleRegion::Cap(&cap), 1.0).unwrap();
        assert_eq!(r.map.amplitude(), 1.0);
        let x = [1.5, -0.75, 2.0];
        assert_eq!(r.map.map_point(x), x);
        assert_eq!(r.map.phase(x), Complex64::new(1.0, 0.0));
        // Values are the restriction of f to the cap.
        let restricted = f.restrict(|xi| xi[0].abs() < 0.25 && xi[1].abs() < 0.25);
        let a = evaluate_extension_at(&restricted, x).unwrap();
        let b = evaluate_extension_at(&r.function, x).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn cap_identity_to_quadrature_tolerance() {
        let f = sample(&FunctionFamily::random_smooth(7), 128);
        let cap = origin_cap(0.25); // K = 4 cap at the origin
        let r = parabolic_rescale(&f, RescaleRegion::Cap(&cap), 4.0).unwrap();
        let cap_fn = f.restrict(|xi| cap.contains(xi));
        for x in [[3.1, -2.0, 5.5], [0.5, 0.25, -1.0], [-4.0, 2.0, 3.0]] {
            let lhs = evaluate_extension_at(&cap_fn, x).unwrap();
            let y = r.map.map_point(x);
            assert_eq!(y, [x[0] / 4.0, x[1] / 4.0, x[2] / 16.0]);
            let rhs = r.map.phase(x) * r.map.amplitude()
                * evaluate_extension_at(&r.function, y).unwrap();
            assert!(
                (lhs - rhs).norm() <= 1e-6 * f.sup_norm,
                "x = {x:?}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn off_center_cap_identity_through_full_map() {
        let f = sample(&FunctionFamily::random_smooth(11), 128);
        let cap = Cap {
            index: (2, 1),
            center: [0.25, -0.25],
            half_width: 0.25,
        };
        let r = parabolic_rescale(&f, RescaleRegion::Cap(&cap), 4.0).unwrap();
        let cap_fn = f.restrict(|xi| cap.contains(xi));
        for x in [[2.0, 1.0, -3.0], [-1.5, 0.5, 4.0]] {
            let lhs = evaluate_extension_at(&cap_fn, x).unwrap();
            let rhs = r.map.phase(x) * r.map.amplitude()
                * evaluate_extension_at(&r.function, r.map.map_point(x)).unwrap();
            assert!((lhs - rhs).norm() <= 1e-6 * f.sup_norm);
        }
    }

    #[test]
    fn strip_identity_both_families() {
        // Strip rescaling coarsens one axis by K, so start finer.
        let f = sample(&FunctionFamily::random_smooth(13), 256);
        let e1 = Strip {
            direction: [1.0, 0.0],
            offset: 0.25,
            width: 0.5,
        };
        let r = parabolic_rescale(&f, RescaleRegion::Strip(&e1), 4.0).unwrap();
        let strip_fn = f.restrict(|xi| xi[1] >= 0.0 && xi[1] < 0.5);
        for x in [[1.0, 2.0, -3.0], [-2.5, 0.75, 1.5]] {
            let lhs = evaluate_extension_at(&strip_fn, x).unwrap();
            let y = r.map.map_point(x);
            assert_eq!(y, [x[0] + 0.25 * x[2], x[1] / 4.0, x[2] / 4.0]);
            let rhs = r.map.phase(x) * r.map.amplitude()
                * evaluate_extension_at(&r.function, y).unwrap();
            assert!((lhs - rhs).norm() <= 1e-6 * f.sup_norm);
        }

        let e2 = Strip {
            direction: [0.0, 1.0],
            offset: 0.25, // center line xi1 = -0.25
            width: 0.5,
        };
        let r = parabolic_rescale(&f, RescaleRegion::Strip(&e2), 4.0).unwrap();
        let strip_fn = f.restrict(|xi| xi[0] >= -0.5 && xi[0] < 0.0);
        for x in [[1.0, 2.0, -3.0], [0.5, -1.25, 2.0]] {
            let lhs = evaluate_extension_at(&strip_fn, x).unwrap();
            let rhs = r.map.phase(x) * r.map.amplitude()
                * evaluate_extension_at(&r.function, r.map.map_point(x)).unwrap();
            assert!((lhs - rhs).norm() <= 1e-6 * f.sup_norm);
        }
    }

    #[test]
    fn sup_norm_preserved_exactly() {
        let f = sample(&FunctionFamily::random_smooth(17), 96);
        let cap = origin_cap(0.25);
        let r = parabolic_rescale(&f, RescaleRegion::Cap(&cap), 4.0).unwrap();
        let restricted_sup = f
            .weighted_terms()
            .iter()
            .filter(|(xi, _)| cap.contains(*xi))
            .map(|(xi, _)| {
                // recover the raw value at this node
                let i = ((xi[0] - f.origin[0]) / f.h1 - 0.5).round() as usize;
                let j = ((xi[1] - f.origin[1]) / f.h2 - 0.5).round() as usize;
                f.values[f.idx(i, j)].norm()
            })
            .fold(0.0, f64::max);
        assert_eq!(r.function.sup_norm.to_bits(), restricted_sup.to_bits());
    }

    #[test]
    fn continuum_identity_across_resolutions() {
        // Independent quadratures on both sides: the identity is a property
        // of the continuum objects, not of transported nodes.
        let fam = FunctionFamily::random_smooth(23);
        let f_coarse = sample(&fam, 128);
        let f_fine = sample(&fam, 192);
        let cap = origin_cap(0.25);
        let r_fine = parabolic_rescale(&f_fine, RescaleRegion::Cap(&cap), 4.0).unwrap();
        let cap_coarse = f_coarse.restrict(|xi| cap.contains(xi));
        let x = [2.0, -1.0, 3.0];
        let lhs = evaluate_extension_at(&cap_coarse, x).unwrap();
        let rhs = r_fine.map.phase(x) * r_fine.map.amplitude()
            * evaluate_extension_at(&r_fine.function, r_fine.map.map_point(x)).unwrap();
        assert!((lhs - rhs).norm() < 5e-3, "{lhs} vs {rhs}");
    }
}
