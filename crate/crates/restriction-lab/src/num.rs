//! Small numeric utilities: deterministic summation, seeded RNG, line fits.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Pairwise (tree) sum over a slice. Fixed association order, independent of
/// threading; more accurate than a running sum for long inputs.
pub fn pairwise<T>(xs: &[T]) -> T
where
    T: Copy + std::ops::Add<Output = T> + Default,
{
    match xs.len() {
        0 => T::default(),
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise(&xs[..mid]) + pairwise(&xs[mid..])
        }
    }
}

/// Pairwise sum of `f(i)` over `0..n` without materializing the vector.
/// Association order is the same balanced tree as [`pairwise`].
pub fn pairwise_map<T, F>(n: usize, f: &F) -> T
where
    T: Copy + std::ops::Add<Output = T> + Default,
    F: Fn(usize) -> T,
{
    fn go<T, F>(lo: usize, hi: usize, f: &F) -> T
    where
        T: Copy + std::ops::Add<Output = T> + Default,
        F: Fn(usize) -> T,
    {
        match hi - lo {
            0 => T::default(),
            1 => f(lo),
            2 => f(lo) + f(lo + 1),
            n => {
                let mid = lo + n / 2;
                go(lo, mid, f) + go(mid, hi, f)
            }
        }
    }
    go(0, n, f)
}

/// Deterministic stream RNG: one master seed, one stream id per use site.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Least-squares slope of `y` against `x` (used for log-log regressions).
pub fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    sxy / sxx
}

/// Log-log slope of `value` against `scale`.
pub fn loglog_slope(scale: &[f64], value: &[f64]) -> f64 {
    let lx: Vec<f64> = scale.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = value.iter().map(|v| v.ln()).collect();
    ls_slope(&lx, &ly)
}

/// Formats a float with 17 significant digits, the round-trip-exact width
/// for f64. Used everywhere a report file is written.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Squared modulus.
#[inline]
pub fn abs2(z: Complex64) -> f64 {
    z.re * z.re + z.im * z.im
}
