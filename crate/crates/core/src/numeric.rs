//! Small scalar numerics shared by the geometry modules: sign-change root
//! bracketing with bisection, golden-section minimisation, Simpson quadrature
//! and centred finite-difference stencils.

/// Bisection on a bracket `[a, b]` with `f(a) * f(b) <= 0`.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    let fb = f(b);
    if fb == 0.0 {
        return b;
    }
    debug_assert!(fa * fb < 0.0, "bisect called without a sign change");
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= tol || m == a || m == b {
            return m;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// All sign changes of `f` on the grid `xs` (with matching `values`), each
/// refined by bisection. Exact zeros on the grid are reported as-is.
pub fn grid_roots<F: FnMut(f64) -> f64>(mut f: F, xs: &[f64], values: &[f64], tol: f64) -> Vec<f64> {
    debug_assert_eq!(xs.len(), values.len());
    let mut roots = Vec::new();
    for i in 0..xs.len() {
        if values[i] == 0.0 {
            roots.push(xs[i]);
            continue;
        }
        if i + 1 < xs.len() && values[i + 1] != 0.0 && (values[i] < 0.0) != (values[i + 1] < 0.0) {
            roots.push(bisect(&mut f, xs[i], xs[i + 1], tol));
        }
    }
    roots
}

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        if x1 >= x2 {
            break;
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Composite Simpson rule over equally spaced samples (odd count required).
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 3 && n % 2 == 1, "simpson needs an odd number of samples");
    let mut acc = values[0] + values[n - 1];
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    acc * h / 3.0
}

/// Offsets (in units of the step) used by [`derivatives`].
pub const STENCIL: [f64; 6] = [-3.0, -2.0, -1.0, 1.0, 2.0, 3.0];

/// First, second and third derivatives from samples at `x + k h` for
/// `k in STENCIL` plus the centre value. Orders 6, 4 and 4 respectively.
pub fn derivatives<T>(center: T, around: &[T; 6], h: f64) -> [T; 3]
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let [m3, m2, m1, p1, p2, p3] = *around;
    let d1 = ((p3 - m3) * (1.0 / 60.0) + (m2 - p2) * (9.0 / 60.0) + (p1 - m1) * (45.0 / 60.0)) * (1.0 / h);
    let d2 = ((p2 + m2) * (-1.0 / 12.0) + (p1 + m1) * (16.0 / 12.0) + center * (-30.0 / 12.0)) * (1.0 / (h * h));
    let d3 = ((m3 - p3) * (1.0 / 8.0) + (p2 - m2) * 1.0 + (m1 - p1) * (13.0 / 8.0)) * (1.0 / (h * h * h));
    [d1, d2, d3]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14);
        assert_abs_diff_eq!(r, 2f64.sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn grid_roots_counts_sign_changes() {
        let xs: Vec<f64> = (0..=100).map(|i| i as f64 * 0.1).collect();
        let vs: Vec<f64> = xs.iter().map(|x| x.sin()).collect();
        let roots = grid_roots(f64::sin, &xs, &vs, 1e-13);
        assert_eq!(roots.len(), 4);
        assert_eq!(roots[0], 0.0);
        assert_abs_diff_eq!(roots[3], 3.0 * std::f64::consts::PI, epsilon = 1e-12);
    }

    #[test]
    fn golden_finds_parabola_min() {
        let (x, fx) = golden_min(|x| (x - 0.3) * (x - 0.3) + 1.0, -1.0, 2.0, 1e-10);
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-7);
        assert_abs_diff_eq!(fx, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let h = 0.25;
        let vals: Vec<f64> = (0..=8).map(|i| (i as f64 * h).powi(3)).collect();
        assert_abs_diff_eq!(simpson(&vals, h), 4.0, epsilon = 1e-14);
    }

    #[test]
    fn stencil_derivatives_of_exp() {
        let x = 0.7;
        let h = 1e-2;
        let around = STENCIL.map(|k| f64::exp(x + k * h));
        let [d1, d2, d3] = derivatives(x.exp(), &around, h);
        assert_abs_diff_eq!(d1, x.exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(d2, x.exp(), epsilon = 1e-8);
        assert_abs_diff_eq!(d3, x.exp(), epsilon = 1e-5);
    }
}
