//! Lengths, enclosed areas and area ratios of curves and their evolutoids.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{self, build_circle, SampledCurve};
use crate::error::{Error, Result};
use crate::evolutoid::{self, EPS_REGULAR};
use crate::numeric;
use crate::space::SpaceForm;

/// Tolerance for the length-ratio identity.
pub const EPS_LENGTH: f64 = 1e-6;

/// True iff `max_s |ρ'_α(s)| < cos α`.
pub fn check_alpha_star(curve: &SampledCurve, alpha: f64) -> Result<bool> {
    // cos(pi/2) rounds to a tiny positive number
    Ok(alpha < FRAC_PI_2 && max_rho_slope(curve, alpha)? < alpha.cos())
}

/// `max_s |ρ'_α(s)|` from a dense grid refined around the largest sample.
pub fn max_rho_slope(curve: &SampledCurve, alpha: f64) -> Result<f64> {
    let n = 8 * curve.len();
    let period = curve.period();
    let h = period / n as f64;
    let mut best = (0.0, 0.0);
    for i in 0..n {
        let s = i as f64 * h;
        let v = evolutoid::slant(curve, s, alpha)?.d1.abs();
        if v > best.1 {
            best = (s, v);
        }
    }
    if best.1 == 0.0 {
        return Ok(0.0);
    }
    let (_, neg) = numeric::golden_min(
        |s| evolutoid::slant(curve, s, alpha).map(|sl| -sl.d1.abs()).unwrap_or(0.0),
        best.0 - h,
        best.0 + h,
        1e-12 * period,
    );
    Ok(best.1.max(-neg))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureReport {
    pub length_gamma: f64,
    pub length_evolutoid: f64,
    pub alpha: f64,
    pub ratio: f64,
    pub alpha_star_ok: bool,
    pub area_gamma: Option<f64>,
    pub area_evolutoid: Option<f64>,
    /// Difference between the evolutoid length on the full and halved grids.
    pub richardson_gap: f64,
    /// Set when `richardson_gap` exceeds ten times [`EPS_LENGTH`].
    pub refinement_warning: bool,
}

fn even(n: usize) -> usize {
    n + n % 2
}

fn evolutoid_length(curve: &SampledCurve, alpha: f64, n: usize) -> f64 {
    curve::path_length(
        curve.form(),
        |s| evolutoid::evolutoid_point(curve, s, alpha).expect("validated slant"),
        0.0,
        curve.period(),
        n,
    )
}

/// Lengths of the curve and its evolutoid, both from finite-difference
/// speeds, together with the enclosed areas where they are defined.
pub fn length_ratio(curve: &SampledCurve, alpha: f64) -> Result<MeasureReport> {
    let alpha_star_ok = check_alpha_star(curve, alpha)?;
    let n = even(curve.len());
    let length_gamma = curve::curve_length(curve);
    let length_evolutoid = evolutoid_length(curve, alpha, n);
    let coarse = evolutoid_length(curve, alpha, even(n / 2));
    let richardson_gap = (length_evolutoid - coarse).abs();
    let closed = curve.is_closed();
    let area_gamma = if closed { Some(enclosed_area(curve)?) } else { None };
    let area_evolutoid = if closed && alpha_star_ok {
        evolutoid_area(curve, alpha)?
    } else {
        None
    };
    Ok(MeasureReport {
        length_gamma,
        length_evolutoid,
        alpha,
        ratio: length_evolutoid / length_gamma,
        alpha_star_ok,
        area_gamma,
        area_evolutoid,
        richardson_gap,
        refinement_warning: richardson_gap > 10.0 * EPS_LENGTH * length_gamma,
    })
}

/// Area enclosed by a closed positively oriented curve: Gauss–Bonnet for
/// `c ≠ 0`, the shoelace integral for the plane.
pub fn enclosed_area(curve: &SampledCurve) -> Result<f64> {
    curve.require_closed()?;
    let n = curve.len();
    let h = curve.spacing();
    match curve.form() {
        SpaceForm::Euclidean => {
            // periodic trapezoid is spectrally accurate here
            let twice: f64 = (0..n)
                .map(|i| {
                    let f = curve.frame(i);
                    f.point.y * f.tangent.z - f.point.z * f.tangent.y
                })
                .sum();
            Ok(0.5 * twice * h)
        }
        form => {
            let total: f64 = (0..n).map(|i| curve.k(curve.arc(i))).sum::<f64>() * h;
            Ok((TAU - total) / form.c())
        }
    }
}

/// Area of the evolutoid rebuilt as a curve; `None` when it is singular.
pub fn evolutoid_area(curve: &SampledCurve, alpha: f64) -> Result<Option<f64>> {
    let (g, _) = evolutoid::min_g(curve, alpha);
    if g <= EPS_REGULAR {
        return Ok(None);
    }
    let evo = evolutoid::evolutoid_curve(curve, alpha, curve.len())?;
    Ok(Some(enclosed_area(&evo)?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaInequality {
    pub alpha: f64,
    pub area_gamma: f64,
    pub area_evolutoid: Option<f64>,
    pub ratio: Option<f64>,
    /// `cos² α`.
    pub bound: f64,
    /// `bound - ratio`; `None` when the hypothesis fails.
    pub margin: Option<f64>,
    pub hypothesis_ok: bool,
}

/// Plane evolutoid area against `cos² α` times the curve's area.
pub fn plane_area_inequality(curve: &SampledCurve, alpha: f64) -> Result<AreaInequality> {
    if curve.form() != SpaceForm::Euclidean {
        return Err(Error::InvalidInput(format!(
            "area inequality needs a plane curve, got {}",
            curve.form().name()
        )));
    }
    let area_gamma = enclosed_area(curve)?;
    let hypothesis_ok = check_alpha_star(curve, alpha)?;
    let area_evolutoid = if hypothesis_ok {
        evolutoid_area(curve, alpha)?
    } else {
        None
    };
    let ratio = area_evolutoid.map(|a| a / area_gamma);
    let bound = alpha.cos().powi(2);
    Ok(AreaInequality {
        alpha,
        area_gamma,
        area_evolutoid,
        ratio,
        bound,
        margin: ratio.map(|r| bound - r),
        hypothesis_ok: hypothesis_ok && area_evolutoid.is_some(),
    })
}

/// Area of a geodesic disc of radius `r`.
pub fn disc_area(form: SpaceForm, r: f64) -> f64 {
    match form {
        SpaceForm::Hyperbolic => TAU * (r.cosh() - 1.0),
        SpaceForm::Euclidean => PI * r * r,
        SpaceForm::Spherical => TAU * (1.0 - r.cos()),
    }
}

/// Radius of the evolutoid of a geodesic circle of radius `r`: the third
/// side of the triangle (centre, `γ(s)`, evolutoid point) whose angle at
/// `γ(s)` is `π/2 - α`.
pub fn evolutoid_circle_radius(form: SpaceForm, r: f64, alpha: f64) -> Result<f64> {
    let rho = form.arctan(alpha.sin() / form.cot(r))?;
    let b = alpha.sin();
    Ok(match form {
        SpaceForm::Euclidean => (r * r + rho * rho - 2.0 * r * rho * b).max(0.0).sqrt(),
        SpaceForm::Hyperbolic => (r.cosh() * rho.cosh() - r.sinh() * rho.sinh() * b).max(1.0).acosh(),
        SpaceForm::Spherical => (r.cos() * rho.cos() + r.sin() * rho.sin() * b).clamp(-1.0, 1.0).acos(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaRatio {
    pub radius: f64,
    pub alpha: f64,
    /// From the sampled circle and its rebuilt evolutoid.
    pub ratio: f64,
    /// From the evolutoid circle radius by trigonometry.
    pub closed_form: f64,
    pub evolutoid_radius: f64,
}

/// Default sample count for circle area ratios.
pub const AREA_RATIO_SAMPLES: usize = 1024;

/// `A_c(γ^R_α) / A_c(γ^R)` for the geodesic circle of radius `r`.
pub fn area_ratio_circle(form: SpaceForm, r: f64, alpha: f64) -> Result<AreaRatio> {
    area_ratio_circle_n(form, r, alpha, AREA_RATIO_SAMPLES)
}

pub fn area_ratio_circle_n(form: SpaceForm, r: f64, alpha: f64, n: usize) -> Result<AreaRatio> {
    if !(0.0..FRAC_PI_2_PLUS).contains(&alpha) {
        return Err(Error::Domain {
            what: "alpha must lie in [0, pi/2]",
            value: alpha,
        });
    }
    let circle = build_circle(form, r, n)?;
    let a = enclosed_area(&circle)?;
    let e = evolutoid_area(&circle, alpha)?.ok_or(Error::Singular { s: 0.0 })?;
    let d = evolutoid_circle_radius(form, r, alpha)?;
    Ok(AreaRatio {
        radius: r,
        alpha,
        ratio: e / a,
        closed_form: disc_area(form, d) / disc_area(form, r),
        evolutoid_radius: d,
    })
}

const FRAC_PI_2_PLUS: f64 = std::f64::consts::FRAC_PI_2 + 1e-15;

/// Area ratios over a range of radii, evaluated in parallel.
pub fn area_ratio_sweep(form: SpaceForm, alpha: f64, radii: &[f64], n: usize) -> Result<Vec<AreaRatio>> {
    radii
        .par_iter()
        .map(|&r| area_ratio_circle_n(form, r, alpha, n))
        .collect()
}

/// True iff the ratios are nondecreasing or nonincreasing along the sweep.
pub fn is_monotone(values: &[f64]) -> bool {
    let w = values.windows(2);
    w.clone().all(|p| p[1] >= p[0]) || w.into_iter().all(|p| p[1] <= p[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{build_from_curvature, CurvatureModel};
    use crate::space::Vec3;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    fn oval() -> SampledCurve {
        build_from_curvature(SpaceForm::Euclidean, CurvatureModel::cosine(PI, 2.0, 0.4, 2), 2048).unwrap()
    }

    /// Sum of geodesic triangle areas fanning out from `o`.
    fn fan_area(form: SpaceForm, o: &Vec3, pts: &[Vec3]) -> f64 {
        let n = pts.len();
        (0..n)
            .map(|i| {
                let (p, q) = (&pts[i], &pts[(i + 1) % n]);
                match form {
                    SpaceForm::Euclidean => 0.5 * ((p - o).y * (q - o).z - (p - o).z * (q - o).y),
                    _ => {
                        let det = o.dot(&p.cross(q));
                        let den = 1.0 + form.c() * (form.inner(o, p) + form.inner(p, q) + form.inner(q, o));
                        2.0 * det.atan2(den)
                    }
                }
            })
            .sum()
    }

    #[test]
    fn circle_areas_match_closed_forms_and_fan() {
        for (form, r) in [
            (SpaceForm::Euclidean, 2.0),
            (SpaceForm::Hyperbolic, 1.0),
            (SpaceForm::Spherical, 0.7),
        ] {
            let c = build_circle(form, r, 2048).unwrap();
            let a = enclosed_area(&c).unwrap();
            assert_abs_diff_eq!(a, disc_area(form, r), epsilon = 1e-7);
            let pts: Vec<Vec3> = c.frames()[..c.len()].iter().map(|f| f.point).collect();
            let fan = fan_area(form, &c.circle().unwrap().center, &pts);
            assert!((fan - a).abs() / a < 1e-5, "{form:?} {fan} {a}");
        }
    }

    #[test]
    fn length_ratio_on_circles() {
        let c = build_circle(SpaceForm::Euclidean, 1.0, 2048).unwrap();
        let r = length_ratio(&c, FRAC_PI_3).unwrap();
        assert!(r.alpha_star_ok);
        assert_abs_diff_eq!(r.ratio, 0.5, epsilon = 1e-7);
        assert!(!r.refinement_warning);
        let c = build_circle(SpaceForm::Hyperbolic, 1.0, 2048).unwrap();
        let r = length_ratio(&c, FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(r.ratio, FRAC_PI_4.cos(), epsilon = 1e-6);
        let r = length_ratio(&c, 0.0).unwrap();
        assert_abs_diff_eq!(r.ratio, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn alpha_star_condition() {
        let c = build_circle(SpaceForm::Spherical, 0.5, 256).unwrap();
        assert!(check_alpha_star(&c, 1.2).unwrap());
        assert!(!check_alpha_star(&c, FRAC_PI_2).unwrap());
        let o = oval();
        // dense oracle for the oval
        let slope = |a: f64| {
            (0..100_000)
                .map(|i| evolutoid::slant(&o, i as f64 * o.period() / 1e5, a).unwrap().d1.abs())
                .fold(0.0, f64::max)
        };
        for a in [0.3, 1.0, 1.3] {
            assert_eq!(check_alpha_star(&o, a).unwrap(), slope(a) < a.cos());
        }
    }

    #[test]
    fn plane_inequality() {
        let c = build_circle(SpaceForm::Euclidean, 1.0, 2048).unwrap();
        let r = plane_area_inequality(&c, FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(r.ratio.unwrap(), 0.5, epsilon = 1e-7);
        let r = plane_area_inequality(&oval(), 0.2).unwrap();
        assert!(r.margin.unwrap() > 1e-4, "{r:?}");
        let r = plane_area_inequality(&oval(), 0.0).unwrap();
        assert_abs_diff_eq!(r.ratio.unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn evolutoid_area_agrees_with_curvature_integral() {
        // Gauss–Bonnet with the evolutoid's total curvature written in terms of k
        let pts: Vec<Vec3> = (0..256)
            .map(|j| {
                let u = TAU * j as f64 / 256.0;
                let (x, y) = (0.1 * u.cos(), 0.08 * u.sin());
                let q = 1.0 - x * x - y * y;
                Vec3::new((2.0 - q) / q, 2.0 * x / q, 2.0 * y / q)
            })
            .collect();
        let c = curve::build_from_samples(SpaceForm::Hyperbolic, &pts, 2048).unwrap();
        assert!(c.is_closed());
        let a: f64 = 0.4;
        let b = a.sin();
        let h = c.spacing();
        let total: f64 = (0..c.len())
            .map(|i| {
                let k = c.k(c.arc(i));
                (k * k - b * b).sqrt()
            })
            .sum::<f64>()
            * h;
        let expected = -(TAU - total);
        assert_abs_diff_eq!(evolutoid_area(&c, a).unwrap().unwrap(), expected, epsilon = 1e-8);
    }

    #[test]
    fn area_ratio_limits() {
        let r = area_ratio_circle(SpaceForm::Hyperbolic, 1.0, FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(r.ratio, r.closed_form, epsilon = 1e-6);
        let r = area_ratio_circle(SpaceForm::Hyperbolic, 0.01, FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(r.ratio, 0.5, epsilon = 1e-3);
        let plane: Vec<f64> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&r| area_ratio_circle(SpaceForm::Euclidean, r, FRAC_PI_4).unwrap().ratio)
            .collect();
        for v in &plane {
            assert_abs_diff_eq!(*v, 0.5, epsilon = 1e-9);
        }
        let s = area_ratio_circle(SpaceForm::Spherical, 0.8, 0.5).unwrap();
        assert_abs_diff_eq!(s.ratio, s.closed_form, epsilon = 1e-6);
    }

    #[test]
    fn hyperbolic_sweep_is_monotone() {
        let radii: Vec<f64> = (0..30).map(|i| 0.05 + i as f64 * (2.95 / 29.0)).collect();
        let sweep = area_ratio_sweep(SpaceForm::Hyperbolic, FRAC_PI_4, &radii, 512).unwrap();
        let v: Vec<f64> = sweep.iter().map(|r| r.ratio).collect();
        assert!(is_monotone(&v), "{v:?}");
    }
}
