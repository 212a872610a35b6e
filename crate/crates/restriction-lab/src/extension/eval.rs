//! The extension operator: direct quadrature and a separable batched path.
//!
//! `Ef(x) = integral over D(1) of e^{i(x1 xi1 + x2 xi2 + x3 xi1 xi2)}
//! f(xi) J(xi) dxi`, discretized on the surface grid. Evaluation refuses to
//! run when the grid cannot resolve the phase at the requested points.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extension::grid::ProductEvalGrid;
use crate::extension::surface::SurfaceFunction;
use crate::num;
use crate::par;

/// Phase-sampling rule: `h <= RESOLUTION_C / max |x|`, i.e. at least
/// ~25 nodes per phase period at the worst point.
pub const RESOLUTION_C: f64 = 0.125;

pub fn required_spacing(max_coordinate: f64) -> f64 {
    if max_coordinate <= 1.0 {
        // Phase is slower than the grid everywhere; any grid resolves it.
        RESOLUTION_C
    } else {
        RESOLUTION_C / max_coordinate
    }
}

pub fn check_resolution(f: &SurfaceFunction, max_coordinate: f64, context: &'static str) -> Result<()> {
    let required = required_spacing(max_coordinate);
    if f.spacing() > required {
        return Err(Error::UnderResolved {
            context,
            h: f.spacing(),
            required_h: required,
        });
    }
    Ok(())
}

#[inline]
fn phase_at(x: [f64; 3], xi: [f64; 2]) -> f64 {
    x[0] * xi[0] + x[1] * xi[1] + x[2] * xi[0] * xi[1]
}

/// Direct evaluation at scattered points. Each point is an independent
/// slot; the node sum is a fixed-order pairwise tree, so results are
/// bit-identical for any thread count.
pub fn evaluate_extension(f: &SurfaceFunction, points: &[[f64; 3]]) -> Result<Vec<Complex64>> {
    let max_c = points
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |m, &c| m.max(c.abs()));
    check_resolution(f, max_c, "evaluate_extension")?;
    let terms = f.weighted_terms();
    Ok(par::map_indexed(points.len(), |p| {
        let x = points[p];
        let g = |i: usize| {
            let (xi, d) = terms[i];
            let (s, c) = phase_at(x, xi).sin_cos();
            d * Complex64::new(c, s)
        };
        num::pairwise_map(terms.len(), &g)
    }))
}

/// Single-point convenience wrapper.
pub fn evaluate_extension_at(f: &SurfaceFunction, x: [f64; 3]) -> Result<Complex64> {
    Ok(evaluate_extension(f, &[x])?[0])
}

/// Batched evaluation over a tensor grid, using the phase separability
/// `e^{i x1 xi1} * e^{i (x2 + x3 xi1) xi2}`. Agrees with the direct path to
/// ~1e-12 relative; the inner modulation is generated by a complex
/// recurrence renormalized every 64 steps.
///
/// Returns values for all `nx*ny*nz` grid points (masked points included),
/// indexed `(iz*ny + iy)*nx + ix`.
pub fn evaluate_extension_product(
    f: &SurfaceFunction,
    grid: &ProductEvalGrid,
) -> Result<Vec<Complex64>> {
    check_resolution(f, grid.max_coordinate(), "evaluate_extension_product")?;
    let (nx, ny, nz) = (grid.xs.len(), grid.ys.len(), grid.zs.len());

    // Column-compact density: for each xi1 column, the j-range of in-disk
    // nodes and their densities.
    struct Column {
        xi1: f64,
        j0: usize,
        dens: Vec<Complex64>,
    }
    // In-disk nodes of a fixed xi1 column form one contiguous j-interval.
    let mut columns = Vec::with_capacity(f.n1);
    for i in 0..f.n1 {
        let mut j0 = None;
        let mut dens = Vec::new();
        for j in 0..f.n2 {
            let idx = f.idx(i, j);
            if f.weights[idx] > 0.0 {
                if j0.is_none() {
                    j0 = Some(j);
                }
                dens.push(f.term(idx));
            } else if j0.is_some() {
                break;
            }
        }
        if let Some(j0) = j0 {
            columns.push(Column {
                xi1: f.node(i, 0)[0],
                j0,
                dens,
            });
        }
    }

    // Inner pass: for each (y, z) pair and each column, sum over xi2 with
    // the modulation e^{i theta xi2}, theta = y + z*xi1.
    let h2 = f.h2;
    let xi2_origin = f.origin[1];
    let inner: Vec<Vec<Complex64>> = par::map_indexed(ny * nz, |yz| {
        let (iy, iz) = (yz % ny, yz / ny);
        let (y, z) = (grid.ys[iy], grid.zs[iz]);
        columns
            .iter()
            .map(|col| {
                let theta = y + z * col.xi1;
                let xi2_start = xi2_origin + (col.j0 as f64 + 0.5) * h2;
                let step = Complex64::new(0.0, theta * h2).exp();
                let mut w = Complex64::new(0.0, theta * xi2_start).exp();
                let mut acc = Complex64::ZERO;
                for (k, d) in col.dens.iter().enumerate() {
                    if k % 64 == 0 && k > 0 {
                        let t = theta * (xi2_start + k as f64 * h2);
                        w = Complex64::new(0.0, t).exp();
                    }
                    acc += d * w;
                    w *= step;
                }
                acc
            })
            .collect()
    });

    // Outer pass: modulate by e^{i x xi1} and sum over columns.
    let out: Vec<Complex64> = par::map_indexed(nx * ny * nz, |idx| {
        let ix = idx % nx;
        let yz = idx / nx;
        let x = grid.xs[ix];
        let row = &inner[yz];
        let g = |ci: usize| {
            let (s, c) = (x * columns[ci].xi1).sin_cos();
            row[ci] * Complex64::new(c, s)
        };
        num::pairwise_map(columns.len(), &g)
    });
    Ok(out)
}
