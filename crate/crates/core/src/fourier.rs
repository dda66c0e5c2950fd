//! FFT helpers: amplitude autocorrelation and trigonometric synthesis on uniform grids.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::scalar::{from_usize, Real};

/// Below this length the autocorrelation is summed directly.
const DIRECT_AUTOCORRELATION_LIMIT: usize = 1024;

/// `r_k = Σ_m c_m conj(c_{m+k})` for `k = −(n−1)..(n−1)`, stored at `k + n − 1`.
pub(crate) fn autocorrelation<T: Real>(c: &[Complex<T>]) -> Vec<Complex<T>> {
    if c.len() <= DIRECT_AUTOCORRELATION_LIMIT {
        autocorrelation_direct(c)
    } else {
        autocorrelation_fft(c)
    }
}

pub(crate) fn autocorrelation_direct<T: Real>(c: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = c.len();
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![zero; 2 * n - 1];
    for k in 0..n {
        let mut acc = zero;
        for m in 0..n - k {
            acc = acc + c[m] * c[m + k].conj();
        }
        out[n - 1 + k] = acc;
        out[n - 1 - k] = acc.conj();
    }
    out
}

pub(crate) fn autocorrelation_fft<T: Real>(c: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = c.len();
    let len = (2 * n).next_power_of_two();
    let zero = Complex::new(T::zero(), T::zero());
    let mut buf = vec![zero; len];
    buf[..n].copy_from_slice(c);
    let mut planner = FftPlanner::<T>::new();
    planner.plan_fft_forward(len).process(&mut buf);
    for v in buf.iter_mut() {
        *v = Complex::new(v.norm_sqr(), T::zero());
    }
    planner.plan_fft_inverse(len).process(&mut buf);
    let scale = from_usize::<T>(len).recip();
    // buf[k] = len · Σ_m c_{m+k} conj(c_m), the conjugate of r_k
    let mut out = vec![zero; 2 * n - 1];
    for k in 0..n {
        let r = buf[k].conj() * scale;
        out[n - 1 + k] = r;
        out[n - 1 - k] = r.conj();
    }
    out
}

/// Values of `Σ_k a_k e^{i k θ_p}` at `θ_p = offset + 2πp/points`, `p = 0..points`.
///
/// `terms` yields `(k, a_k)`; frequencies alias onto `points` bins, which is exact
/// for evaluation at the grid nodes.
pub(crate) fn synthesize<T: Real, I>(terms: I, offset: T, points: usize) -> Vec<Complex<T>>
where
    I: IntoIterator<Item = (i64, Complex<T>)>,
{
    let zero = Complex::new(T::zero(), T::zero());
    let mut bins = vec![zero; points];
    for (k, a) in terms {
        let phase = Complex::from_polar(T::one(), offset * T::from_i64(k).expect("frequency"));
        bins[k.rem_euclid(points as i64) as usize] = bins[k.rem_euclid(points as i64) as usize] + a * phase;
    }
    let mut planner = FftPlanner::<T>::new();
    planner.plan_fft_inverse(points).process(&mut bins);
    bins
}

/// `Σ_k a_k e^{ikθ}` at a single point, with the phasor re-seeded every 64 steps.
pub(crate) fn evaluate<T: Real, I>(terms: I, theta: T) -> Complex<T>
where
    I: IntoIterator<Item = (i64, Complex<T>)>,
{
    let mut acc = Complex::new(T::zero(), T::zero());
    let step = Complex::from_polar(T::one(), theta);
    let mut phasor = Complex::new(T::one(), T::zero());
    let mut last_k: Option<i64> = None;
    for (k, a) in terms {
        phasor = match last_k {
            Some(prev) if k == prev + 1 && k % 64 != 0 => phasor * step,
            _ => Complex::from_polar(T::one(), theta * T::from_i64(k).expect("frequency")),
        };
        last_k = Some(k);
        acc = acc + a * phasor;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> Vec<Complex<f64>> {
        (0..n)
            .map(|m| Complex::new((m as f64 * 0.37).sin(), (m as f64 * 1.3).cos() * 0.5))
            .collect()
    }

    #[test]
    fn fft_autocorrelation_matches_direct() {
        for n in [1, 2, 17, 300] {
            let c = sample(n);
            let a = autocorrelation_direct(&c);
            let b = autocorrelation_fft(&c);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn synthesis_matches_pointwise_evaluation() {
        let terms: Vec<(i64, Complex<f64>)> = (-20..=20)
            .map(|k| (k, Complex::new(1.0 / (1.0 + (k * k) as f64), 0.1 * k as f64)))
            .collect();
        let offset = 0.123;
        let points = 16; // fewer than the number of harmonics: aliasing must still be exact
        let grid = synthesize(terms.iter().copied(), offset, points);
        for (p, value) in grid.iter().enumerate() {
            let theta = offset + 2.0 * std::f64::consts::PI * p as f64 / points as f64;
            let direct = evaluate(terms.iter().copied(), theta);
            assert!((value - direct).norm() < 1e-12);
        }
    }
}
