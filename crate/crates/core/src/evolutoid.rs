//! α-evolutoids: the envelope of the geodesics leaving a convex curve at a
//! fixed angle α to its tangent.
//!
//! With `a = cos α`, `b = sin α` the evolutoid point sits at distance
//! `ρ_α = arctan_c(b / k)` along the geodesic with initial direction
//! `v_α = a t + b e`. It is singular exactly where `G = ρ'_α + a` vanishes.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::curve::{self, SampledCurve, FD_STEP};
use crate::error::{Error, Result};
use crate::numeric::{self, STENCIL};
use crate::space::{SpaceForm, Vec3};

/// Relative threshold on `|γ''_α × γ'''_α| / |γ''_α|^3` below which a cusp
/// is left unclassified.
pub const EPS_CUSP: f64 = 1e-6;

/// `|G_s|` below this marks a root as degenerate.
pub const EPS_DEGENERATE: f64 = 1e-6;

/// Regularity threshold on `|G|` for sampled evolutoids.
pub const EPS_REGULAR: f64 = 1e-9;

/// `ρ_α` and its first three arc-length derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Slant {
    pub rho: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=FRAC_PI_2 + 1e-15).contains(&alpha) {
        return Err(Error::Domain {
            what: "alpha must lie in [0, pi/2]",
            value: alpha,
        });
    }
    Ok(())
}

fn check_k(form: SpaceForm, k: f64) -> Result<()> {
    let margin = k - form.convexity_bound();
    if margin <= 0.0 {
        return Err(Error::NotConvex { margin });
    }
    Ok(())
}

/// `ρ_α(s)` with derivatives, from the curvature model by the chain rule.
pub fn slant(curve: &SampledCurve, s: f64, alpha: f64) -> Result<Slant> {
    check_alpha(alpha)?;
    let form = curve.form();
    let [k, k1, k2, k3] = curve.k_derivs(s);
    check_k(form, k)?;
    let b = alpha.sin();
    let rho = form.arctan(b / k)?;
    let d = k * k + form.c() * b * b;
    let dd = 2.0 * k * k1;
    let ddd = 2.0 * k1 * k1 + 2.0 * k * k2;
    let u = k2 * d - k1 * dd;
    Ok(Slant {
        rho,
        d1: -b * k1 / d,
        d2: -b * u / (d * d),
        d3: -b * ((k3 * d - k1 * ddd) * d - 2.0 * dd * u) / (d * d * d),
    })
}

pub fn rho_alpha(curve: &SampledCurve, s: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let k = curve.k(s);
    check_k(curve.form(), k)?;
    curve.form().arctan(alpha.sin() / k)
}

/// `G(s, α) = ρ'_α(s) + cos α`; the evolutoid speed is `|G|`.
pub fn regularity_speed(curve: &SampledCurve, s: f64, alpha: f64) -> Result<f64> {
    Ok(slant(curve, s, alpha)?.d1 + alpha.cos())
}

/// Unchecked `G` for inner loops over validated curves.
fn g_value(curve: &SampledCurve, s: f64, alpha: f64) -> f64 {
    let [k, k1, ..] = curve.k_derivs(s);
    let b = alpha.sin();
    alpha.cos() - b * k1 / (k * k + curve.form().c() * b * b)
}

/// Unchecked `G_s = ρ''_α`.
fn g_slope(curve: &SampledCurve, s: f64, alpha: f64) -> f64 {
    let [k, k1, k2, _] = curve.k_derivs(s);
    let b = alpha.sin();
    let d = k * k + curve.form().c() * b * b;
    -b * (k2 * d - 2.0 * k * k1 * k1) / (d * d)
}

fn slant_direction(alpha: f64, t: &Vec3, e: &Vec3) -> Vec3 {
    alpha.cos() * t + alpha.sin() * e
}

/// `exp(γ(s), v_α(s), ρ_α(s))`.
pub fn evolutoid_point(curve: &SampledCurve, s: f64, alpha: f64) -> Result<Vec3> {
    let rho = rho_alpha(curve, s, alpha)?;
    let f = curve.frame_at(s);
    let form = curve.form();
    let p = form.exp_raw(&f.point, &slant_direction(alpha, &f.tangent, &f.normal), rho);
    Ok(form.normalize_point(&p))
}

/// Unit direction of the evolutoid tangent at a regular point: the slanted
/// geodesic direction transported to the evolutoid point.
pub fn envelope_direction(curve: &SampledCurve, s: f64, alpha: f64) -> Result<Vec3> {
    let rho = rho_alpha(curve, s, alpha)?;
    let f = curve.frame_at(s);
    let v = slant_direction(alpha, &f.tangent, &f.normal);
    Ok(curve.form().transport_raw(&f.point, &v, rho))
}

/// Geodesic curvature of the evolutoid, `None` at singular points.
pub fn evolutoid_curvature(curve: &SampledCurve, s: f64, alpha: f64) -> Result<Option<f64>> {
    check_alpha(alpha)?;
    let [k, k1, ..] = curve.k_derivs(s);
    check_k(curve.form(), k)?;
    let (a, b) = (alpha.cos(), alpha.sin());
    let d = k * k + curve.form().c() * b * b;
    let den = a * d - b * k1;
    if den.abs() <= 1e-12 * d {
        return Ok(None);
    }
    Ok(Some(d.powf(1.5) / den))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutoidSample {
    pub s: f64,
    pub alpha: f64,
    pub rho: f64,
    pub point: Vec3,
    pub speed: f64,
    pub regular: bool,
    pub curvature_alpha: Option<f64>,
}

/// Evolutoid sampled on the curve's arc-length grid.
pub fn sample_evolutoid(curve: &SampledCurve, alpha: f64) -> Result<Vec<EvolutoidSample>> {
    let form = curve.form();
    (0..curve.len())
        .map(|i| {
            let s = curve.arc(i);
            let f = curve.frame(i);
            let sl = slant(curve, s, alpha)?;
            let g = sl.d1 + alpha.cos();
            let p = form.exp_raw(&f.point, &slant_direction(alpha, &f.tangent, &f.normal), sl.rho);
            Ok(EvolutoidSample {
                s,
                alpha,
                rho: sl.rho,
                point: form.normalize_point(&p),
                speed: g.abs(),
                regular: g.abs() > EPS_REGULAR,
                curvature_alpha: evolutoid_curvature(curve, s, alpha)?,
            })
        })
        .collect()
}

/// Envelope of the geodesics leaving the curve at angle α to its tangent on
/// the outer side, i.e. the α-evolutoid of the curve traversed backwards:
/// the point at distance `ρ_α` along `-cos α t + sin α e`.
pub fn reversed_evolutoid_points(curve: &SampledCurve, alpha: f64) -> Result<Vec<Vec3>> {
    let form = curve.form();
    (0..curve.len())
        .map(|i| {
            let f = curve.frame(i);
            let rho = rho_alpha(curve, curve.arc(i), alpha)?;
            let v = -alpha.cos() * f.tangent + alpha.sin() * f.normal;
            Ok(form.normalize_point(&form.exp_raw(&f.point, &v, rho)))
        })
        .collect()
}

/// The evolutoid rebuilt as a curve in its own right (arc-length resampled).
pub fn evolutoid_curve(curve: &SampledCurve, alpha: f64, n: usize) -> Result<SampledCurve> {
    curve.require_closed()?;
    let pts: Vec<Vec3> = sample_evolutoid(curve, alpha)?.into_iter().map(|e| e.point).collect();
    curve::build_from_samples(curve.form(), &pts, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CuspType {
    /// Ordinary cusp, right-left equivalent to `(s^2, s^3, 0)`.
    #[serde(rename = "cusp_2_3_0")]
    Cusp230,
    Degenerate,
    Unclassified,
}

impl CuspType {
    pub fn name(self) -> &'static str {
        match self {
            CuspType::Cusp230 => "cusp_2_3_0",
            CuspType::Degenerate => "degenerate",
            CuspType::Unclassified => "unclassified",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CuspDiagnostics {
    pub g: f64,
    pub rho_d1: f64,
    pub rho_d2: f64,
    pub rho_d3: f64,
    /// `|γ''_α × γ'''_α| / |γ''_α|^3` from finite differences.
    pub wedge_ratio: f64,
    /// The three open-condition expressions of the cusp criterion (`c = ±1`).
    pub open_conditions: [f64; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingularPoint {
    pub s0: f64,
    pub alpha: f64,
    pub kind: CuspType,
    pub diagnostics: CuspDiagnostics,
}

/// Open-condition expressions at a singular point.
pub fn open_conditions(form: SpaceForm, k: f64, alpha: f64, sl: &Slant) -> [f64; 3] {
    let c = form.c();
    let (a, b) = (alpha.cos(), alpha.sin());
    let (sr, cr) = (form.sin(sl.rho), form.cos(sl.rho));
    let s2r = form.sin(2.0 * sl.rho);
    [
        cr * (k * sl.d2 * cr + b * sr * (a * a + c * b * b * sl.d2)),
        c * s2r * (b * sl.d3 + 2.0 * a * k * sl.d2) + 2.0 * a * b * sl.d2 * (c + sr * sr),
        c * (2.0 * b * b * sr * sr - a * a * cr * cr) + b * k * s2r * sl.d2,
    ]
}

/// Second and third derivatives of the evolutoid at `s` by finite differences.
pub fn evolutoid_higher_derivatives(curve: &SampledCurve, s: f64, alpha: f64) -> Result<[Vec3; 2]> {
    let h = FD_STEP.min(curve.spacing());
    let (i, ds, steps) = curve.stencil_anchor(s, 3.0 * h);
    let form = curve.form();
    let at = |x: f64| -> Result<Vec3> {
        let f = curve.flow_from(i, ds + x, steps);
        let rho = rho_alpha(curve, s + x, alpha)?;
        Ok(form.exp_raw(&f.point, &slant_direction(alpha, &f.tangent, &f.normal), rho))
    };
    let center = at(0.0)?;
    let mut around = [Vec3::zeros(); 6];
    for (slot, k) in around.iter_mut().zip(STENCIL) {
        *slot = at(k * h)?;
    }
    let [_, d2, d3] = numeric::derivatives(center, &around, h);
    Ok([d2, d3])
}

pub fn classify_cusp(curve: &SampledCurve, s0: f64, alpha: f64) -> Result<SingularPoint> {
    let sl = slant(curve, s0, alpha)?;
    let k = curve.k(s0);
    let [d2, d3] = evolutoid_higher_derivatives(curve, s0, alpha)?;
    let scale = d2.norm().powi(3);
    let wedge_ratio = if scale > 0.0 { d2.cross(&d3).norm() / scale } else { 0.0 };
    let diagnostics = CuspDiagnostics {
        g: sl.d1 + alpha.cos(),
        rho_d1: sl.d1,
        rho_d2: sl.d2,
        rho_d3: sl.d3,
        wedge_ratio,
        open_conditions: open_conditions(curve.form(), k, alpha, &sl),
    };
    let kind = if curve.curvature_model().is_constant() || sl.d2.abs() < EPS_DEGENERATE {
        CuspType::Degenerate
    } else if !curve.curvature_model().has_smooth_third_derivative() {
        CuspType::Unclassified
    } else if wedge_ratio > EPS_CUSP {
        CuspType::Cusp230
    } else {
        CuspType::Unclassified
    };
    Ok(SingularPoint {
        s0,
        alpha,
        kind,
        diagnostics,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SingularSet {
    /// `G` vanishes identically (evolute of a circle).
    Everywhere,
    Isolated(Vec<SingularPoint>),
}

impl SingularSet {
    pub fn points(&self) -> &[SingularPoint] {
        match self {
            SingularSet::Everywhere => &[],
            SingularSet::Isolated(p) => p,
        }
    }
}

/// Roots of `G(., α)` in `[0, ℓ)`, each classified.
pub fn singular_set(curve: &SampledCurve, alpha: f64) -> Result<SingularSet> {
    check_alpha(alpha)?;
    let (lo, _) = curve.curvature_model().range(curve.len());
    check_k(curve.form(), lo)?;
    let cos_a = alpha.cos();
    if curve.curvature_model().is_constant() {
        return Ok(if cos_a.abs() < 1e-15 {
            SingularSet::Everywhere
        } else {
            SingularSet::Isolated(Vec::new())
        });
    }
    let period = curve.period();
    let n = curve.len();
    let tol = 1e-10 * period;
    let mut roots = curve::periodic_roots(|s| g_value(curve, s, alpha), period, n, tol);

    // tangential roots: local minima of G that touch zero without crossing
    let h = period / n as f64;
    for i in 0..n {
        let s = i as f64 * h;
        let (gm, g0, gp) = (
            g_value(curve, s - h, alpha),
            g_value(curve, s, alpha),
            g_value(curve, s + h, alpha),
        );
        if !(g0 <= gm && g0 <= gp && g0 > 0.0) {
            continue;
        }
        let (sa, sb) = (s - h, s + h);
        let (fa, fb) = (g_slope(curve, sa, alpha), g_slope(curve, sb, alpha));
        let smin = if fa <= 0.0 && fb >= 0.0 {
            numeric::bisect(|x| g_slope(curve, x, alpha), sa, sb, tol)
        } else {
            numeric::golden_min(|x| g_value(curve, x, alpha), sa, sb, tol).0
        };
        if g_value(curve, smin, alpha).abs() < 1e-10 {
            let smin = smin.rem_euclid(period);
            if roots.iter().all(|r| {
                let d = (r - smin).abs();
                d.min(period - d) > 2.0 * h
            }) {
                roots.push(smin);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    let points = roots
        .into_iter()
        .map(|s| classify_cusp(curve, s, alpha))
        .collect::<Result<Vec<_>>>()?;
    Ok(SingularSet::Isolated(points))
}

/// `min_s G(s, α)` and its location, refined from the grid minimum.
pub fn min_g(curve: &SampledCurve, alpha: f64) -> (f64, f64) {
    let period = curve.period();
    let n = curve.len();
    let h = period / n as f64;
    let (i, _) = (0..n)
        .map(|i| (i, g_value(curve, i as f64 * h, alpha)))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let (sa, sb) = ((i as f64 - 1.0) * h, (i as f64 + 1.0) * h);
    let tol = 1e-13 * period;
    let s = if g_slope(curve, sa, alpha) <= 0.0 && g_slope(curve, sb, alpha) >= 0.0 {
        numeric::bisect(|x| g_slope(curve, x, alpha), sa, sb, tol)
    } else {
        numeric::golden_min(|x| g_value(curve, x, alpha), sa, sb, tol).0
    };
    (g_value(curve, s, alpha), s.rem_euclid(period))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlphaZero {
    pub alpha: f64,
    /// Tangency location (`0` for circles, where every point qualifies).
    pub s: f64,
    /// `G_s(s, α₀)`, expected to vanish.
    pub g_s: f64,
}

/// First angle at which the evolutoid becomes singular.
pub fn alpha_zero(curve: &SampledCurve) -> Result<AlphaZero> {
    let (lo, _) = curve.curvature_model().range(curve.len());
    check_k(curve.form(), lo)?;
    if curve.curvature_model().is_constant() {
        return Ok(AlphaZero {
            alpha: FRAC_PI_2,
            s: 0.0,
            g_s: 0.0,
        });
    }
    let m = |a: f64| min_g(curve, a).0;
    let scan = 256;
    let mut prev = 0.0;
    let mut hit = FRAC_PI_2;
    for j in 1..=scan {
        let a = FRAC_PI_2 * j as f64 / scan as f64;
        if m(a) <= 0.0 {
            hit = a;
            break;
        }
        prev = a;
    }
    let alpha = numeric::bisect(m, prev, hit, 1e-13);
    let (_, s) = min_g(curve, alpha);
    Ok(AlphaZero {
        alpha,
        s,
        g_s: g_slope(curve, s, alpha),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoCircularity {
    /// `|tan_c ρ_α - sin α tan_c ρ_{π/2}|`.
    pub algebraic: f64,
    /// Largest deviation of `γ(s)`, `γ_α(s)`, `γ_{π/2}(s)` from the geodesic
    /// circle of diameter `ρ_{π/2}(s)` tangent to the curve at `γ(s)`.
    pub geometric: f64,
}

pub fn cocircularity_check(curve: &SampledCurve, s: f64, alpha: f64) -> Result<CoCircularity> {
    let form = curve.form();
    let rho = rho_alpha(curve, s, alpha)?;
    let diam = rho_alpha(curve, s, FRAC_PI_2)?;
    let algebraic = if alpha == FRAC_PI_2 || alpha == 0.0 {
        0.0
    } else {
        (form.tan(rho) - alpha.sin() * form.tan(diam)).abs()
    };
    let f = curve.frame_at(s);
    let center = form.exp_raw(&f.point, &f.normal, 0.5 * diam);
    let points = [
        f.point,
        evolutoid_point(curve, s, alpha)?,
        evolutoid_point(curve, s, FRAC_PI_2)?,
    ];
    let geometric = points
        .iter()
        .map(|p| (form.distance_lenient(&center, p) - 0.5 * diam).abs())
        .fold(0.0, f64::max);
    Ok(CoCircularity { algebraic, geometric })
}
