//! Window system for the wave-packet decomposition.
//!
//! Spatial side: tensor-product profiles `p(t1) p(t2)` on the tube-base
//! lattice, built from the compact bump `b(t) = exp(-1/(1-t^2))` normalized
//! by its own lattice sum, so that the translates sum to 1 exactly and each
//! profile is supported in a square inscribed in `(3/4) B` (B the base disc
//! of radius `R^(1/2+delta)`).
//!
//! Frequency side: the packet kernel is `kappa(u) = p^(u) / (2 pi)` per
//! axis (`^` the Fourier transform), tabulated once per scale, together
//! with the flat-top cap window `psi`, a tensor smooth step equal to 1 on
//! `2 Omega` and supported in `3 Omega`.

use crate::extension::bump;

/// Support half-width of the base profile as a fraction of the tube
/// radius: `a = PROFILE_SUPPORT * r_B`, with `a * sqrt(2) < (3/4) r_B`.
pub const PROFILE_SUPPORT: f64 = 0.52;

/// Base lattice spacing as a fraction of `a`. Must stay below 2 so the
/// lattice sum of bumps is strictly positive.
pub const LATTICE_STEP: f64 = 1.3;

/// Smooth step: 0 for `u <= 0`, 1 for `u >= 1`, infinitely flat at both
/// ends (`e^{-1/u}` against `e^{-1/(1-u)}`).
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let b = (-1.0 / u).exp();
        let c = (-1.0 / (1.0 - u)).exp();
        b / (b + c)
    }
}

/// One-dimensional window tables for a fixed scale.
#[derive(Debug, Clone)]
pub struct WindowTables {
    /// Base profile support half-width `a`.
    pub a: f64,
    /// Base lattice spacing `s`.
    pub s: f64,
    /// Fine cap side `sigma = R^(-1/2)`.
    pub sigma: f64,
    /// `kappa` table over `[0, u_max]`, uniform.
    kappa: Vec<f64>,
    kappa_du: f64,
    u_max: f64,
}

impl WindowTables {
    pub fn new(tube_radius: f64, sigma: f64) -> Self {
        let a = PROFILE_SUPPORT * tube_radius;
        let s = LATTICE_STEP * a;
        // kappa is needed for |u| up to the 3*Omega block reach plus slack.
        let u_max = 4.0 * sigma;
        let n_table = 2048;
        let kappa_du = u_max / (n_table - 1) as f64;
        let nq = 2048;
        let hq = 2.0 * a / nq as f64;
        // Profile values at quadrature nodes (midpoint rule over [-a, a]).
        let profile: Vec<(f64, f64)> = (0..nq)
            .map(|i| {
                let t = -a + (i as f64 + 0.5) * hq;
                (t, lattice_profile(t, a, s))
            })
            .collect();
        let kappa = (0..n_table)
            .map(|k| {
                let u = k as f64 * kappa_du;
                // p is even, so the transform is the cosine integral.
                let mut acc = 0.0;
                for &(t, p) in &profile {
                    acc += p * (t * u).cos();
                }
                acc * hq / (2.0 * std::f64::consts::PI)
            })
            .collect();
        WindowTables {
            a,
            s,
            sigma,
            kappa,
            kappa_du,
            u_max,
        }
    }

    /// `kappa(u) = p^(u)/(2 pi)`, cubic interpolation in the table.
    #[inline]
    pub fn kappa(&self, u: f64) -> f64 {
        let u = u.abs();
        if u >= self.u_max {
            return 0.0;
        }
        let x = u / self.kappa_du;
        let i = (x.floor() as usize).min(self.kappa.len() - 2);
        let frac = x - i as f64;
        if i == 0 || i + 2 >= self.kappa.len() {
            // linear at the ends
            return self.kappa[i] * (1.0 - frac) + self.kappa[i + 1] * frac;
        }
        // Catmull-Rom through the four surrounding samples.
        let (m0, m1, m2, m3) = (
            self.kappa[i - 1],
            self.kappa[i],
            self.kappa[i + 1],
            self.kappa[i + 2],
        );
        let t = frac;
        0.5 * ((2.0 * m1)
            + (-m0 + m2) * t
            + (2.0 * m0 - 5.0 * m1 + 4.0 * m2 - m3) * t * t
            + (-m0 + 3.0 * m1 - 3.0 * m2 + m3) * t * t * t)
    }

    /// 1D factor of the cap window: 1 for `|t| <= sigma`, 0 for
    /// `|t| >= (3/2) sigma`, smooth in between.
    #[inline]
    pub fn psi_1d(&self, t: f64) -> f64 {
        smooth_step((1.5 * self.sigma - t.abs()) / (0.5 * self.sigma))
    }

    /// Tensor cap window centered at `omega`.
    #[inline]
    pub fn psi(&self, omega: [f64; 2], xi: [f64; 2]) -> f64 {
        self.psi_1d(xi[0] - omega[0]) * self.psi_1d(xi[1] - omega[1])
    }
}

/// Normalized 1D profile `p = rho / d` where `rho(t) = b(t/a)` and `d` is
/// the lattice-periodic sum of translates of `rho`. Supported in
/// `[-a, a]`; lattice translates sum to 1.
pub fn lattice_profile(t: f64, a: f64, s: f64) -> f64 {
    let rho = bump(t / a);
    if rho == 0.0 {
        return 0.0;
    }
    let mut d = 0.0;
    let reach = (2.0 * a / s).ceil() as i64;
    let k0 = (t / s).round() as i64;
    for k in (k0 - reach)..=(k0 + reach) {
        d += bump((t - k as f64 * s) / a);
    }
    rho / d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_is_monotone_and_clamped() {
        assert_eq!(smooth_step(-1.0), 0.0);
        assert_eq!(smooth_step(2.0), 1.0);
        let mut prev = 0.0;
        for i in 0..=100 {
            let v = smooth_step(i as f64 / 100.0);
            assert!(v >= prev - 1e-15);
            assert!((0.0..=1.0).contains(&v));
            prev = v;
        }
        assert!((smooth_step(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn profile_translates_sum_to_one() {
        let a = 5.12;
        let s = LATTICE_STEP * a;
        for i in 0..500 {
            let t = -20.0 + 40.0 * i as f64 / 500.0;
            let reach = 10;
            let k0 = (t / s).round() as i64;
            let total: f64 = ((k0 - reach)..=(k0 + reach))
                .map(|k| lattice_profile(t - k as f64 * s, a, s))
                .sum();
            assert!((total - 1.0).abs() < 1e-12, "t = {t}: sum = {total}");
        }
    }

    #[test]
    fn profile_support_and_range() {
        let a = 5.12;
        let s = LATTICE_STEP * a;
        assert_eq!(lattice_profile(a, a, s), 0.0);
        assert_eq!(lattice_profile(-a - 0.1, a, s), 0.0);
        for i in 0..200 {
            let t = -a + 2.0 * a * i as f64 / 200.0;
            let p = lattice_profile(t, a, s);
            assert!((0.0..=1.0 + 1e-12).contains(&p));
        }
    }

    #[test]
    fn kappa_quasi_interpolation_reproduces_cap_supported_data() {
        // The packet-sum identity: for g supported in one cap, the
        // kappa kernel against the Dirichlet sum of the base lattice
        // reconstructs g from its own samples,
        //   sum_j kappa(xi - eta_j) D(xi - eta_j) g(eta_j) h ~= g(xi),
        // up to the spectral tail of g beyond the lattice reach. 1D check.
        let r_b = 64f64.powf(0.55);
        let sigma = 0.125;
        let w = WindowTables::new(r_b, sigma);
        let h = sigma / 8.0;
        let nk = ((64.0 * 2.0 + 6.0 * r_b) / w.s).ceil() as i64;
        let g = |t: f64| bump(t / (0.5 * sigma));
        for xi in [0.0, 0.011, -0.027, 0.05] {
            let mut acc = 0.0;
            let m = (0.5 * sigma / h).ceil() as i64 + 1;
            for j in -m..=m {
                let eta = (j as f64 + 0.5) * h;
                let gv = g(eta);
                if gv == 0.0 {
                    continue;
                }
                let u = xi - eta;
                let kap = w.kappa(u);
                let mut dir = 0.0;
                for k in -nk..=nk {
                    dir += (k as f64 * w.s * u).cos();
                }
                acc += gv * kap * dir * h;
            }
            let want = g(xi);
            assert!(
                (acc - want).abs() < 2e-3,
                "xi = {xi}: got {acc}, want {want}"
            );
        }
    }

    #[test]
    fn psi_plateau_and_support() {
        let w = WindowTables::new(64f64.powf(0.55), 0.125);
        assert_eq!(w.psi_1d(0.0), 1.0);
        assert_eq!(w.psi_1d(0.1249), 1.0);
        assert_eq!(w.psi_1d(0.1875), 0.0);
        assert_eq!(w.psi([0.5, 0.5], [0.5 + 0.2, 0.5]), 0.0);
        assert!(w.psi([0.5, 0.5], [0.5 + 0.15, 0.5]) > 0.0);
    }
}
