//! Slanted wavefronts `σ(s) = exp(γ(s), v_α(s), c0 - s cos α)`.
//!
//! Each front is orthogonal to the slanted geodesic field and has speed
//! `|A|` with `A = sin α cos_c(r) - k sin_c(r)`; its singular points lie on
//! the α-evolutoid.

use std::f64::consts::PI;

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::evolutoid;
use crate::numeric::{self, STENCIL};
use crate::space::{SpaceForm, Vec3};

/// Singularity threshold on `|A| / (sin α + max k)`.
pub const EPS_SING: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct WavefrontSample {
    pub s: f64,
    pub c0: f64,
    pub r: f64,
    pub point: Vec3,
    pub speed: f64,
    pub singular: bool,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-15).contains(&alpha) {
        return Err(Error::Domain {
            what: "alpha must lie in [0, pi/2]",
            value: alpha,
        });
    }
    Ok(())
}

fn a_value(curve: &SampledCurve, alpha: f64, r: f64, s: f64) -> f64 {
    let form = curve.form();
    alpha.sin() * form.cos(r) - curve.k(s) * form.sin(r)
}

fn sigma(curve: &SampledCurve, alpha: f64, c0: f64, s: f64) -> Vec3 {
    let form = curve.form();
    let f = curve.frame_at(s);
    let v = alpha.cos() * f.tangent + alpha.sin() * f.normal;
    form.normalize_point(&form.exp_raw(&f.point, &v, c0 - s * alpha.cos()))
}

fn normaliser(curve: &SampledCurve, alpha: f64) -> f64 {
    alpha.sin() + curve.curvature_model().range(curve.len()).1
}

/// Front with constant `c0` sampled at the arc lengths in `grid`.
pub fn wavefront(curve: &SampledCurve, alpha: f64, c0: f64, grid: &[f64]) -> Result<Vec<WavefrontSample>> {
    check_alpha(alpha)?;
    let scale = normaliser(curve, alpha);
    Ok(grid
        .iter()
        .map(|&s| {
            let r = c0 - s * alpha.cos();
            let a = a_value(curve, alpha, r, s);
            WavefrontSample {
                s,
                c0,
                r,
                point: sigma(curve, alpha, c0, s),
                speed: a.abs(),
                singular: a.abs() / scale < EPS_SING,
            }
        })
        .collect())
}

/// `|<σ', v_α^p>_c|` at `s`, with `σ'` from finite differences and `v_α^p`
/// the slanted direction transported to `σ(s)`.
pub fn orthogonality_residual(curve: &SampledCurve, alpha: f64, c0: f64, s: f64) -> f64 {
    let form = curve.form();
    let h = 1e-3_f64.min(curve.spacing());
    let (i, ds, steps) = curve.stencil_anchor(s, 3.0 * h);
    let at = |x: f64| {
        let f = curve.flow_from(i, ds + x, steps);
        let v = alpha.cos() * f.tangent + alpha.sin() * f.normal;
        form.exp_raw(&f.point, &v, c0 - (s + x) * alpha.cos())
    };
    let around = STENCIL.map(|k| at(k * h));
    let [d1, ..] = numeric::derivatives(at(0.0), &around, h);
    let f = curve.frame_at(s);
    let v = alpha.cos() * f.tangent + alpha.sin() * f.normal;
    let vp = form.transport_raw(&f.point, &v, c0 - s * alpha.cos());
    form.inner(&d1, &vp).abs()
}

#[derive(Clone, Debug, PartialEq)]
pub struct WavefrontSingularity {
    pub s: f64,
    pub point: Vec3,
    /// `n` with `r(s) = ρ_α(s) + nπ`; nonzero only on the sphere, where odd
    /// branches land on the antipodal evolutoid copy.
    pub branch: i64,
}

/// Singular points of the front with constant `c0` over one period.
pub fn wavefront_singular_locus(curve: &SampledCurve, alpha: f64, c0: f64) -> Result<Vec<WavefrontSingularity>> {
    check_alpha(alpha)?;
    let period = curve.period();
    let n = curve.len();
    let xs: Vec<f64> = (0..=n).map(|i| i as f64 * period / n as f64).collect();
    let f = |s: f64| a_value(curve, alpha, c0 - s * alpha.cos(), s);
    let vs: Vec<f64> = xs.iter().map(|&s| f(s)).collect();
    let roots = numeric::grid_roots(f, &xs, &vs, 1e-10 * period);
    let mut out: Vec<WavefrontSingularity> = Vec::with_capacity(roots.len());
    for s in roots {
        if out.last().is_some_and(|p| (p.s - s).abs() < 1e-9 * period) {
            continue;
        }
        let rho = evolutoid::rho_alpha(curve, s, alpha)?;
        let r = c0 - s * alpha.cos();
        let branch = if curve.form() == SpaceForm::Spherical {
            ((r - rho) / PI).round() as i64
        } else {
            0
        };
        out.push(WavefrontSingularity {
            s,
            point: sigma(curve, alpha, c0, s),
            branch,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub c0: Vec<f64>,
    pub points: Vec<WavefrontSingularity>,
    /// Largest distance from a swept singular point to the evolutoid (the
    /// antipodal copy for odd spherical branches).
    pub to_evolutoid: f64,
}

/// Evenly spaced `c0` values from `lo` to `hi` inclusive.
pub fn sweep_values(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Distance from `p` to the evolutoid: nearest sample, refined along `s`.
pub fn distance_to_evolutoid(curve: &SampledCurve, alpha: f64, samples: &[Vec3], p: &Vec3) -> Result<f64> {
    let form = curve.form();
    let (j, _) = samples
        .iter()
        .enumerate()
        .map(|(j, q)| (j, (q - p).norm_squared()))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let h = curve.spacing();
    let s = curve.arc(j);
    evolutoid::evolutoid_point(curve, s, alpha)?;
    Ok(numeric::golden_min(
        |x| {
            evolutoid::evolutoid_point(curve, x, alpha)
                .map(|q| form.distance_lenient(&q, p))
                .unwrap_or(f64::INFINITY)
        },
        s - h,
        s + h,
        1e-12 * curve.period(),
    )
    .1)
}

pub fn wavefront_sweep(curve: &SampledCurve, alpha: f64, c0: &[f64]) -> Result<SweepReport> {
    let samples: Vec<Vec3> = evolutoid::sample_evolutoid(curve, alpha)?
        .into_iter()
        .map(|e| e.point)
        .collect();
    let mut points = Vec::new();
    for &c in c0 {
        points.extend(wavefront_singular_locus(curve, alpha, c)?);
    }
    let mut to_evolutoid: f64 = 0.0;
    for p in &points {
        let q = if p.branch % 2 == 0 { p.point } else { -p.point };
        to_evolutoid = to_evolutoid.max(distance_to_evolutoid(curve, alpha, &samples, &q)?);
    }
    Ok(SweepReport {
        c0: c0.to_vec(),
        points,
        to_evolutoid,
    })
}

/// Range of `ρ_α(s) + s cos α` over one period: the `c0` values whose fronts
/// meet the principal evolutoid.
pub fn c0_range(curve: &SampledCurve, alpha: f64) -> Result<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..=curve.len() {
        let s = curve.arc(i);
        let v = evolutoid::rho_alpha(curve, s, alpha)? + s * alpha.cos();
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{build_circle, build_from_curvature, CurvatureModel};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

    #[test]
    fn parallel_curves_of_the_unit_circle() {
        let c = build_circle(SpaceForm::Euclidean, 1.0, 256).unwrap();
        let center = c.circle().unwrap().center;
        let grid: Vec<f64> = (0..256).map(|i| c.arc(i)).collect();
        let w = wavefront(&c, FRAC_PI_2, 0.5, &grid).unwrap();
        assert!(w
            .iter()
            .all(|x| !x.singular && ((x.point - center).norm() - 0.5).abs() < 1e-12));
        let w = wavefront(&c, FRAC_PI_2, 1.0, &grid).unwrap();
        assert!(w.iter().all(|x| x.singular && (x.point - center).norm() < 1e-12));
    }

    #[test]
    fn singular_point_on_the_evolutoid_circle() {
        let c = build_circle(SpaceForm::Euclidean, 1.0, 512).unwrap();
        let a = FRAC_PI_4;
        let c0 = 2.0;
        let s_star = (c0 - a.sin()) / a.cos();
        let locus = wavefront_singular_locus(&c, a, c0).unwrap();
        assert_eq!(locus.len(), 1);
        assert_abs_diff_eq!(locus[0].s, s_star, epsilon = 1e-9);
        let e = evolutoid::evolutoid_point(&c, s_star, a).unwrap();
        assert!((locus[0].point - e).norm() < 1e-9);
        let grid = [s_star];
        assert!(wavefront(&c, a, c0, &grid).unwrap()[0].singular);
        assert!(wavefront_singular_locus(&c, a, 0.5).unwrap().is_empty());
    }

    #[test]
    fn speed_matches_finite_differences() {
        for form in SpaceForm::ALL {
            let mean = if form == SpaceForm::Hyperbolic { 2.5 } else { 2.0 };
            let c = build_from_curvature(form, CurvatureModel::cosine(TAU, mean, 0.3, 1), 1024).unwrap();
            let (a, c0, s) = (0.6, 1.5, 2.0);
            let h = 1e-3;
            let at = |x: f64| sigma(&c, a, c0, x);
            let around = STENCIL.map(|k| at(s + k * h));
            let [d1, ..] = numeric::derivatives(at(s), &around, h);
            let w = wavefront(&c, a, c0, &[s]).unwrap();
            assert_abs_diff_eq!(form.norm(&d1), w[0].speed, epsilon = 1e-8);
            assert!(orthogonality_residual(&c, a, c0, s) < 1e-9);
        }
    }

    #[test]
    fn sweep_traces_the_evolutoid() {
        let c = build_from_curvature(
            SpaceForm::Euclidean,
            CurvatureModel::cosine(std::f64::consts::PI, 2.0, 0.4, 2),
            1024,
        )
        .unwrap();
        let a = 0.5;
        let (lo, hi) = c0_range(&c, a).unwrap();
        let rep = wavefront_sweep(&c, a, &sweep_values(lo, hi, 40)).unwrap();
        assert!(rep.points.len() >= 38);
        assert!(rep.to_evolutoid < 1e-8, "{}", rep.to_evolutoid);
    }

    #[test]
    fn translated_family_roots_move_consistently() {
        let c = build_from_curvature(SpaceForm::Hyperbolic, CurvatureModel::cosine(4.0, 2.5, 0.3, 1), 1024).unwrap();
        let a = 0.7;
        let (lo, hi) = c0_range(&c, a).unwrap();
        let c0 = 0.5 * (lo + hi);
        for d in [1e-3, -2e-3] {
            for p in wavefront_singular_locus(&c, a, c0 + d).unwrap() {
                let r = c0 + d - p.s * a.cos();
                assert_abs_diff_eq!(r, evolutoid::rho_alpha(&c, p.s, a).unwrap(), epsilon = 1e-9);
            }
        }
    }
}
