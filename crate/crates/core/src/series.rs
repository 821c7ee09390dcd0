//! Periodic interpolants: trigonometric series (for analytic curvature
//! expressions and for smooth closed sample sets) and periodic cubic splines
//! (for user-supplied curvature tables).

use std::f64::consts::TAU;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

/// `mean + sum_n (cos[n-1] cos(n w x) + sin[n-1] sin(n w x))` with `w = 2 pi / period`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigSeries {
    pub period: f64,
    pub mean: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl TrigSeries {
    pub fn new(period: f64, mean: f64, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        let mut s = TrigSeries { period, mean, cos, sin };
        let n = s.cos.len().max(s.sin.len());
        s.cos.resize(n, 0.0);
        s.sin.resize(n, 0.0);
        s
    }

    pub fn constant(period: f64, value: f64) -> Self {
        TrigSeries::new(period, value, Vec::new(), Vec::new())
    }

    /// Trigonometric interpolant of equally spaced samples `values[j] = y(j period / n)`.
    /// The Nyquist mode is dropped and negligible high harmonics are trimmed.
    pub fn interpolate(values: &[f64], period: f64) -> Self {
        let n = values.len();
        let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let scale = 2.0 / n as f64;
        let harmonics = (n - 1) / 2;
        let mut cos = Vec::with_capacity(harmonics);
        let mut sin = Vec::with_capacity(harmonics);
        for z in buf.iter().skip(1).take(harmonics) {
            cos.push(z.re * scale);
            sin.push(-z.im * scale);
        }
        let mean = buf[0].re / n as f64;
        let mut s = TrigSeries::new(period, mean, cos, sin);
        s.trim(1e-14);
        s
    }

    /// Drops trailing harmonics whose amplitude is below `rel` times the largest term.
    pub fn trim(&mut self, rel: f64) {
        let scale = self
            .cos
            .iter()
            .zip(&self.sin)
            .map(|(a, b)| a.hypot(*b))
            .fold(self.mean.abs(), f64::max);
        let cutoff = rel * scale.max(f64::MIN_POSITIVE);
        while let (Some(a), Some(b)) = (self.cos.last(), self.sin.last()) {
            if a.hypot(*b) <= cutoff {
                self.cos.pop();
                self.sin.pop();
            } else {
                break;
            }
        }
    }

    pub fn harmonics(&self) -> usize {
        self.cos.len()
    }

    pub fn is_constant(&self) -> bool {
        self.cos.iter().chain(&self.sin).all(|&c| c == 0.0)
    }

    /// Value and the first three derivatives at `x`.
    pub fn derivs(&self, x: f64) -> [f64; 4] {
        let w = TAU / self.period;
        let theta = w * x;
        let step = Complex::new(theta.cos(), theta.sin());
        let mut rot = Complex::new(1.0, 0.0);
        let mut out = [self.mean, 0.0, 0.0, 0.0];
        for (n, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            rot *= step;
            // keep the recurrence on the unit circle
            if n % 64 == 63 {
                let phase = (n as f64 + 1.0) * theta;
                rot = Complex::new(phase.cos(), phase.sin());
            }
            let (c, s) = (rot.re, rot.im);
            let m = (n + 1) as f64 * w;
            out[0] += a * c + b * s;
            out[1] += m * (b * c - a * s);
            out[2] -= m * m * (a * c + b * s);
            out[3] -= m * m * m * (b * c - a * s);
        }
        out
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.derivs(x)[0]
    }

    /// `int_0^x y(u) du`.
    pub fn integral(&self, x: f64) -> f64 {
        let w = TAU / self.period;
        let mut acc = self.mean * x;
        for (n, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let m = (n + 1) as f64 * w;
            let phase = m * x;
            acc += (a * phase.sin() - b * (phase.cos() - 1.0)) / m;
        }
        acc
    }

    /// Spectral derivative samples on the interpolation grid of size `n`.
    pub fn grid_derivative(&self, n: usize) -> Vec<f64> {
        (0..n)
            .map(|j| self.derivs(j as f64 * self.period / n as f64)[1])
            .collect()
    }
}

/// Interpolating periodic cubic spline on a uniform grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicSpline {
    period: f64,
    values: Vec<f64>,
    second: Vec<f64>,
}

impl PeriodicSpline {
    /// `values[j]` is the sample at `j * period / values.len()`.
    pub fn new(values: Vec<f64>, period: f64) -> Self {
        let n = values.len();
        assert!(n >= 3, "periodic spline needs at least three samples");
        let h = period / n as f64;
        // The cyclic system M[i-1] + 4 M[i] + M[i+1] = rhs[i] is circulant,
        // so it diagonalises under the DFT.
        let mut rhs: Vec<Complex<f64>> = (0..n)
            .map(|i| {
                let prev = values[(i + n - 1) % n];
                let next = values[(i + 1) % n];
                Complex::new(6.0 * (next - 2.0 * values[i] + prev) / (h * h), 0.0)
            })
            .collect();
        let mut planner = FftPlanner::new();
        planner.plan_fft_forward(n).process(&mut rhs);
        for (j, z) in rhs.iter_mut().enumerate() {
            *z /= 4.0 + 2.0 * (TAU * j as f64 / n as f64).cos();
        }
        planner.plan_fft_inverse(n).process(&mut rhs);
        let second = rhs.iter().map(|z| z.re / n as f64).collect();
        PeriodicSpline { period, values, second }
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value and the first three derivatives; the third is piecewise constant.
    pub fn derivs(&self, x: f64) -> [f64; 4] {
        let n = self.values.len();
        let h = self.period / n as f64;
        let u = x.rem_euclid(self.period) / h;
        let i = (u.floor() as usize).min(n - 1);
        let t = (u - i as f64) * h;
        let j = (i + 1) % n;
        let (yi, yj) = (self.values[i], self.values[j]);
        let (mi, mj) = (self.second[i], self.second[j]);
        let r = h - t;
        let value = mi * r.powi(3) / (6.0 * h)
            + mj * t.powi(3) / (6.0 * h)
            + (yi / h - mi * h / 6.0) * r
            + (yj / h - mj * h / 6.0) * t;
        let d1 = -mi * r * r / (2.0 * h) + mj * t * t / (2.0 * h) - (yi / h - mi * h / 6.0) + (yj / h - mj * h / 6.0);
        let d2 = mi * r / h + mj * t / h;
        let d3 = (mj - mi) / h;
        [value, d1, d2, d3]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn interpolation_recovers_a_trig_polynomial() {
        let period = 3.0;
        let exact = TrigSeries::new(period, 2.0, vec![0.5, 0.0, -0.1], vec![0.0, 0.25, 0.0]);
        let samples: Vec<f64> = (0..64).map(|j| exact.eval(j as f64 * period / 64.0)).collect();
        let fitted = TrigSeries::interpolate(&samples, period);
        assert_eq!(fitted.harmonics(), 3);
        for &x in &[0.1, 0.77, 2.9] {
            let a = exact.derivs(x);
            let b = fitted.derivs(x);
            for d in 0..4 {
                assert_abs_diff_eq!(a[d], b[d], epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn derivatives_match_closed_form() {
        let s = TrigSeries::new(2.0, 1.0, vec![0.3], vec![0.0]);
        let w = TAU / 2.0;
        let x = 0.4;
        let d = s.derivs(x);
        assert_abs_diff_eq!(d[0], 1.0 + 0.3 * (w * x).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(d[1], -0.3 * w * (w * x).sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(d[2], -0.3 * w * w * (w * x).cos(), epsilon = 1e-13);
        assert_abs_diff_eq!(d[3], 0.3 * w.powi(3) * (w * x).sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(s.integral(2.0), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn long_series_recurrence_stays_accurate() {
        let cos: Vec<f64> = (1..=400).map(|n| 1.0 / (n * n) as f64).collect();
        let s = TrigSeries::new(1.0, 0.0, cos.clone(), vec![0.0; 400]);
        let x = 0.123;
        let direct: f64 = cos
            .iter()
            .enumerate()
            .map(|(n, a)| a * (TAU * (n + 1) as f64 * x).cos())
            .sum();
        assert_abs_diff_eq!(s.eval(x), direct, epsilon = 1e-13);
    }

    #[test]
    fn spline_interpolates_and_converges() {
        let period = TAU;
        let f = |x: f64| 2.0 + 0.5 * x.cos();
        for &n in &[64usize, 128] {
            let sp = PeriodicSpline::new((0..n).map(|j| f(j as f64 * period / n as f64)).collect(), period);
            assert_abs_diff_eq!(
                sp.derivs(period / n as f64 * 5.0)[0],
                f(period / n as f64 * 5.0),
                epsilon = 1e-14
            );
            let h = period / n as f64;
            let x = 1.2345;
            let d = sp.derivs(x);
            assert!((d[0] - f(x)).abs() < 2.0 * h.powi(4));
            assert!((d[1] + 0.5 * x.sin()).abs() < 2.0 * h.powi(3));
            assert!((d[2] + 0.5 * x.cos()).abs() < 2.0 * h.powi(2));
            // third derivative is only first order
            assert!((d[3] - 0.5 * x.sin()).abs() < 2.0 * h);
        }
    }

    #[test]
    fn spline_wraps_periodically() {
        let sp = PeriodicSpline::new(vec![1.0, 2.0, 0.5, 1.5, 1.0, 0.0], 6.0);
        let a = sp.derivs(0.3);
        let b = sp.derivs(6.3);
        let c = sp.derivs(-5.7);
        for d in 0..4 {
            assert_abs_diff_eq!(a[d], b[d], epsilon = 1e-12);
            assert_abs_diff_eq!(a[d], c[d], epsilon = 1e-12);
        }
    }
}
