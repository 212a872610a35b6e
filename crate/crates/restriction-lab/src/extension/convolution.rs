//! Sup of the convolution of two localized surface measures.
//!
//! The measures are the graph measure `J dxi` restricted to the dilated
//! fine caps `3*Omega_1`, `3*Omega_2` (clipped to the disk), lifted to the
//! saddle. Their convolution is an absolutely continuous measure on R^3;
//! its density is estimated by pushing a tensor quadrature of the product
//! measure through the sum map and box-averaging at a cell size tied to
//! the cap scale, so the estimate is comparable across scales.

use serde::{Deserialize, Serialize};

use crate::geometry::{OmegaCap, Params};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvolutionSup {
    /// Estimated sup of the convolution density.
    pub sup: f64,
    /// Box-averaging cell side used for the estimate.
    pub cell: f64,
    /// Nonzero-mass histogram cells, as (center, mass) pairs.
    pub occupied: Vec<([f64; 3], f64)>,
    /// Bounding interval of the lifted sumset per coordinate.
    pub support_box: [[f64; 2]; 3],
}

fn lift(xi: [f64; 2]) -> [f64; 3] {
    [xi[0], xi[1], xi[0] * xi[1]]
}

/// Quadrature nodes of `3*Omega intersect D(1)`, with `J h^2` weights.
fn cap_nodes(o: &OmegaCap, n: usize) -> Vec<([f64; 2], f64)> {
    let side = 3.0 * o.side();
    let h = side / n as f64;
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let xi = [
                o.center[0] - side / 2.0 + (i as f64 + 0.5) * h,
                o.center[1] - side / 2.0 + (j as f64 + 0.5) * h,
            ];
            if xi[0] * xi[0] + xi[1] * xi[1] <= 1.0 {
                let jac = (1.0 + xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
                out.push((xi, jac * h * h));
            }
        }
    }
    out
}

/// Direct double quadrature of `|| dsigma_{3O1} * dsigma_{3O2} ||_inf`.
pub fn cap_measure_convolution_sup(
    o1: &OmegaCap,
    o2: &OmegaCap,
    params: &Params,
    nodes_per_axis: usize,
) -> ConvolutionSup {
    let a = cap_nodes(o1, nodes_per_axis);
    let b = cap_nodes(o2, nodes_per_axis);

    // Support bounds from the sum of the per-cap lifted bounds.
    let bounds = |nodes: &[([f64; 2], f64)]| -> [[f64; 2]; 3] {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for (xi, _) in nodes {
            let p = lift(*xi);
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        [[lo[0], hi[0]], [lo[1], hi[1]], [lo[2], hi[2]]]
    };
    let (ba, bb) = (bounds(&a), bounds(&b));
    let mut support_box = [[0.0; 2]; 3];
    for k in 0..3 {
        support_box[k] = [ba[k][0] + bb[k][0], ba[k][1] + bb[k][1]];
    }

    // Histogram cells of side sigma/2, anchored at the support box corner.
    let cell = params.omega_side() / 2.0;
    let dims: Vec<usize> = (0..3)
        .map(|k| (((support_box[k][1] - support_box[k][0]) / cell).ceil() as usize + 1).max(1))
        .collect();
    let mut hist = vec![0.0f64; dims[0] * dims[1] * dims[2]];
    for (xa, wa) in &a {
        let pa = lift(*xa);
        for (xb, wb) in &b {
            let pb = lift(*xb);
            let mut id = [0usize; 3];
            for k in 0..3 {
                id[k] = ((pa[k] + pb[k] - support_box[k][0]) / cell).floor() as usize;
                id[k] = id[k].min(dims[k] - 1);
            }
            hist[(id[2] * dims[1] + id[1]) * dims[0] + id[0]] += wa * wb;
        }
    }

    let mut sup = 0.0f64;
    let mut occupied = Vec::new();
    for iz in 0..dims[2] {
        for iy in 0..dims[1] {
            for ix in 0..dims[0] {
                let m = hist[(iz * dims[1] + iy) * dims[0] + ix];
                if m > 0.0 {
                    let center = [
                        support_box[0][0] + (ix as f64 + 0.5) * cell,
                        support_box[1][0] + (iy as f64 + 0.5) * cell,
                        support_box[2][0] + (iz as f64 + 0.5) * cell,
                    ];
                    occupied.push((center, m));
                    sup = sup.max(m / cell.powi(3));
                }
            }
        }
    }
    ConvolutionSup {
        sup,
        cell,
        occupied,
        support_box,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_omega_caps;

    #[test]
    fn coincident_caps_give_finite_positive_sup() {
        let p = Params::with_delta(64.0, 0.05, 4, 1).unwrap();
        let omegas = build_omega_caps(&p).unwrap();
        let center = omegas
            .iter()
            .min_by(|a, b| {
                let na = a.center[0].hypot(a.center[1]);
                let nb = b.center[0].hypot(b.center[1]);
                na.partial_cmp(&nb).unwrap()
            })
            .unwrap();
        let out = cap_measure_convolution_sup(center, center, &p, 24);
        assert!(out.sup.is_finite() && out.sup > 0.0);
    }

    #[test]
    fn support_contained_in_lifted_sumset_box() {
        let p = Params::with_delta(64.0, 0.05, 4, 1).unwrap();
        let omegas = build_omega_caps(&p).unwrap();
        let o1 = &omegas[10];
        let o2 = &omegas[40];
        let out = cap_measure_convolution_sup(o1, o2, &p, 20);
        for (center, mass) in &out.occupied {
            assert!(*mass > 0.0);
            for k in 0..3 {
                assert!(
                    center[k] >= out.support_box[k][0] - out.cell
                        && center[k] <= out.support_box[k][1] + out.cell
                );
            }
        }
    }
}
