//! Closed convex curves as arc-length tables of Frenet frames.
//!
//! Curves are built three ways: analytically (geodesic circles), by
//! integrating the unified Frenet system `γ' = t, t' = -cγ + k e, e' = -k t`
//! from a periodic curvature function, or from explicit closed samples via
//! trigonometric interpolation. Off-grid frames are obtained by integrating
//! the same system from the nearest stored sample.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{self, STENCIL};
use crate::series::{PeriodicSpline, TrigSeries};
use crate::space::{SpaceForm, Vec3};

/// Frame orthonormality tolerance.
pub const EPS_FRAME: f64 = 1e-7;

/// Relative closure tolerance: defects above `EPS_CLOSE * period` are rejected
/// by operations that need a closed curve.
pub const EPS_CLOSE: f64 = 1e-5;

/// Periodic geodesic curvature `k(s)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CurvatureModel {
    /// Analytic trigonometric expression; all derivatives exact.
    Series(TrigSeries),
    /// Interpolated table; the third derivative is piecewise constant.
    Table(PeriodicSpline),
}

impl CurvatureModel {
    pub fn constant(period: f64, k: f64) -> Self {
        CurvatureModel::Series(TrigSeries::constant(period, k))
    }

    /// `mean + amplitude * cos(2 pi harmonic s / period)`.
    pub fn cosine(period: f64, mean: f64, amplitude: f64, harmonic: usize) -> Self {
        let mut cos = vec![0.0; harmonic];
        cos[harmonic - 1] = amplitude;
        CurvatureModel::Series(TrigSeries::new(period, mean, cos, Vec::new()))
    }

    pub fn table(values: Vec<f64>, period: f64) -> Self {
        CurvatureModel::Table(PeriodicSpline::new(values, period))
    }

    pub fn period(&self) -> f64 {
        match self {
            CurvatureModel::Series(s) => s.period,
            CurvatureModel::Table(t) => t.period(),
        }
    }

    /// `[k, k', k'', k''']` at `s`.
    pub fn derivs(&self, s: f64) -> [f64; 4] {
        match self {
            CurvatureModel::Series(t) => t.derivs(s),
            CurvatureModel::Table(t) => t.derivs(s),
        }
    }

    pub fn k(&self, s: f64) -> f64 {
        self.derivs(s)[0]
    }

    pub fn is_constant(&self) -> bool {
        match self {
            CurvatureModel::Series(s) => s.is_constant(),
            CurvatureModel::Table(t) => {
                let v = t.values();
                v.iter().all(|&x| x == v[0])
            }
        }
    }

    /// Whether `k'''` is continuous (needed by the cusp classifier).
    pub fn has_smooth_third_derivative(&self) -> bool {
        matches!(self, CurvatureModel::Series(_))
    }

    /// Minimum and maximum of `k` on a uniform grid of `n` points.
    pub fn range(&self, n: usize) -> (f64, f64) {
        let p = self.period();
        (0..n)
            .map(|i| self.k(i as f64 * p / n as f64))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), k| (lo.min(k), hi.max(k)))
    }
}

/// What a curve is built from.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveKind {
    Circle { radius: f64 },
    Curvature(CurvatureModel),
    Samples(Vec<Vec3>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub form: SpaceForm,
    pub kind: CurveKind,
}

impl CurveSpec {
    pub fn circle(form: SpaceForm, radius: f64) -> Self {
        CurveSpec {
            form,
            kind: CurveKind::Circle { radius },
        }
    }

    pub fn curvature(form: SpaceForm, model: CurvatureModel) -> Self {
        CurveSpec {
            form,
            kind: CurveKind::Curvature(model),
        }
    }

    pub fn samples(form: SpaceForm, points: Vec<Vec3>) -> Self {
        CurveSpec {
            form,
            kind: CurveKind::Samples(points),
        }
    }

    pub fn build(&self, n: usize) -> Result<SampledCurve> {
        match &self.kind {
            CurveKind::Circle { radius } => build_circle(self.form, *radius, n),
            CurveKind::Curvature(model) => build_from_curvature(self.form, model.clone(), n),
            CurveKind::Samples(points) => build_from_samples(self.form, points, n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrenetFrame {
    pub point: Vec3,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub curvature: f64,
}

impl FrenetFrame {
    /// Largest deviation from orthonormality, tangency and the model surface.
    pub fn defect(&self, form: SpaceForm) -> f64 {
        let (p, t, e) = (&self.point, &self.tangent, &self.normal);
        let mut d = [
            (form.inner(t, t) - 1.0).abs(),
            (form.inner(e, e) - 1.0).abs(),
            form.inner(t, e).abs(),
            form.model_residual(p),
        ];
        if form == SpaceForm::Euclidean {
            d[3] = d[3].max(t.x.abs()).max(e.x.abs());
        } else {
            d[3] = d[3].max(form.inner(p, t).abs()).max(form.inner(p, e).abs());
        }
        d.into_iter().fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosureDefect {
    /// Distance between the start and end points after one period.
    pub position: f64,
    /// Ambient norm of the difference of the start and end tangents.
    pub tangent: f64,
}

impl ClosureDefect {
    pub fn max(&self) -> f64 {
        self.position.max(self.tangent)
    }
}

/// Analytic center and radius of a geodesic circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: Vec3,
    pub radius: f64,
}

#[derive(Clone, Debug)]
pub struct SampledCurve {
    form: SpaceForm,
    period: f64,
    frames: Vec<FrenetFrame>,
    model: CurvatureModel,
    closure: ClosureDefect,
    circle: Option<Circle>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvexityReport {
    pub convex: bool,
    /// `min k - bound`.
    pub margin: f64,
}

/// Critical points of a scalar function along the curve.
#[derive(Clone, Debug, PartialEq)]
pub enum CriticalSet {
    /// The function is constant: every `s` is critical.
    All,
    Points(Vec<f64>),
}

impl CriticalSet {
    pub fn points(&self) -> Option<&[f64]> {
        match self {
            CriticalSet::All => None,
            CriticalSet::Points(p) => Some(p),
        }
    }
}

fn check_samples(n: usize) -> Result<()> {
    if n < 64 {
        return Err(Error::InvalidInput(format!("sample count {n} must be at least 64")));
    }
    Ok(())
}

/// Canonical starting frame: basepoint `origin()`, tangent `(0,1,0)`, normal `(0,0,1)`.
pub fn canonical_frame(form: SpaceForm, k: f64) -> FrenetFrame {
    let point = form.origin();
    let tangent = Vec3::new(0.0, 1.0, 0.0);
    FrenetFrame {
        point,
        tangent,
        normal: form.normal(&point, &tangent),
        curvature: k,
    }
}

fn renormalize(form: SpaceForm, g: &Vec3, t: &Vec3) -> (Vec3, Vec3, Vec3) {
    let g = form.normalize_point(g);
    let t = form.project_tangent(&g, t);
    let t = t / form.norm(&t);
    let e = form.normal(&g, &t);
    (g, t, e)
}

/// One RK4 step of the Frenet system from `s` to `s + h`, followed by
/// re-orthonormalisation.
fn frenet_step(form: SpaceForm, model: &CurvatureModel, f: &FrenetFrame, s: f64, h: f64) -> FrenetFrame {
    let c = form.c();
    let rhs = |k: f64, g: &Vec3, t: &Vec3, e: &Vec3| (*t, -c * g + k * e, -k * t);
    let (g, t, e) = (f.point, f.tangent, f.normal);
    let k1 = model.k(s);
    let k2 = model.k(s + 0.5 * h);
    let k4 = model.k(s + h);
    let a = rhs(k1, &g, &t, &e);
    let b = rhs(k2, &(g + 0.5 * h * a.0), &(t + 0.5 * h * a.1), &(e + 0.5 * h * a.2));
    let cc = rhs(k2, &(g + 0.5 * h * b.0), &(t + 0.5 * h * b.1), &(e + 0.5 * h * b.2));
    let d = rhs(k4, &(g + h * cc.0), &(t + h * cc.1), &(e + h * cc.2));
    let g = g + h / 6.0 * (a.0 + 2.0 * b.0 + 2.0 * cc.0 + d.0);
    let t = t + h / 6.0 * (a.1 + 2.0 * b.1 + 2.0 * cc.1 + d.1);
    let (point, tangent, normal) = renormalize(form, &g, &t);
    FrenetFrame {
        point,
        tangent,
        normal,
        curvature: k4,
    }
}

/// Integrates the Frenet system over one period without checking convexity.
pub fn integrate_frenet(form: SpaceForm, model: CurvatureModel, n: usize) -> Result<SampledCurve> {
    check_samples(n)?;
    let period = model.period();
    if !(period > 0.0 && period.is_finite()) {
        return Err(Error::InvalidInput(format!("period {period} must be positive")));
    }
    let h = period / n as f64;
    let mut frames = Vec::with_capacity(n + 1);
    frames.push(canonical_frame(form, model.k(0.0)));
    for i in 0..n {
        let next = frenet_step(form, &model, &frames[i], i as f64 * h, h);
        frames.push(next);
    }
    let (first, last) = (frames[0], frames[n]);
    let closure = ClosureDefect {
        position: form.distance_lenient(&first.point, &last.point),
        tangent: (first.tangent - last.tangent).norm(),
    };
    Ok(SampledCurve {
        form,
        period,
        frames,
        model,
        closure,
        circle: None,
    })
}

/// Curve with the given periodic curvature, started from the canonical frame.
pub fn build_from_curvature(form: SpaceForm, model: CurvatureModel, n: usize) -> Result<SampledCurve> {
    let (lo, _) = model.range(8 * n.max(64));
    let margin = lo - form.convexity_bound();
    if margin <= 0.0 {
        return Err(Error::NotConvex { margin });
    }
    integrate_frenet(form, model, n)
}

/// Geodesic circle of radius `radius` centred at `form.origin()`, positively
/// oriented, parametrised by arc length with analytic frames.
pub fn build_circle(form: SpaceForm, radius: f64, n: usize) -> Result<SampledCurve> {
    check_samples(n)?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain {
            what: "circle radius",
            value: radius,
        });
    }
    if radius >= form.max_circle_radius() {
        return Err(Error::Domain {
            what: "circle radius (hemisphere bound)",
            value: radius,
        });
    }
    let (sr, cr) = (form.sin(radius), form.cos(radius));
    let k = cr / sr;
    let period = TAU * sr;
    let center = form.origin();
    let frames = (0..=n)
        .map(|i| {
            let theta = TAU * i as f64 / n as f64;
            let (st, ct) = theta.sin_cos();
            let point = cr * center + sr * Vec3::new(0.0, ct, st);
            let tangent = Vec3::new(0.0, -st, ct);
            FrenetFrame {
                point,
                tangent,
                normal: form.normal(&point, &tangent),
                curvature: k,
            }
        })
        .collect();
    Ok(SampledCurve {
        form,
        period,
        frames,
        model: CurvatureModel::constant(period, k),
        closure: ClosureDefect {
            position: 0.0,
            tangent: 0.0,
        },
        circle: Some(Circle { center, radius }),
    })
}

/// Positions, first and second derivatives of the trigonometric interpolant
/// of closed samples, parameter `u` in `[0, 1)`.
struct SampleInterpolant {
    coords: [TrigSeries; 3],
}

impl SampleInterpolant {
    fn new(points: &[Vec3]) -> Self {
        let coord = |j: usize| TrigSeries::interpolate(&points.iter().map(|p| p[j]).collect::<Vec<_>>(), 1.0);
        SampleInterpolant {
            coords: [coord(0), coord(1), coord(2)],
        }
    }

    fn eval(&self, u: f64) -> [Vec3; 3] {
        let d = self.coords.clone().map(|c| c.derivs(u));
        [
            Vec3::new(d[0][0], d[1][0], d[2][0]),
            Vec3::new(d[0][1], d[1][1], d[2][1]),
            Vec3::new(d[0][2], d[1][2], d[2][2]),
        ]
    }
}

/// Geodesic curvature of a regular curve from its point and first two
/// parameter derivatives (any parametrisation).
pub fn curvature_from_derivatives(form: SpaceForm, p: &Vec3, d1: &Vec3, d2: &Vec3) -> f64 {
    let speed = form.norm(d1);
    let num = match form {
        SpaceForm::Euclidean => d1.y * d2.z - d1.z * d2.y,
        _ => form.inner(&form.wedge(p, d1), d2),
    };
    num / speed.powi(3)
}

/// Curve through explicit closed samples (equally spaced in some parameter,
/// listed once around), resampled by arc length.
pub fn build_from_samples(form: SpaceForm, points: &[Vec3], n: usize) -> Result<SampledCurve> {
    check_samples(n)?;
    if points.len() < 8 {
        return Err(Error::InvalidInput(format!(
            "need at least 8 samples, got {}",
            points.len()
        )));
    }
    for p in points {
        form.check_point(p)?;
    }
    let interp = SampleInterpolant::new(points);
    let m = points.len().max(n).max(256);
    let grid = |j: usize| j as f64 / m as f64;

    let mut turning = 0.0;
    for j in 0..m {
        let [p, d1, d2] = interp.eval(grid(j));
        turning += curvature_from_derivatives(form, &p, &d1, &d2) * form.norm(&d1);
    }
    if turning < 0.0 {
        let mut reversed: Vec<Vec3> = points.to_vec();
        reversed.reverse();
        return build_from_samples(form, &reversed, n);
    }

    let speed = TrigSeries::interpolate(
        &(0..m).map(|j| form.norm(&interp.eval(grid(j))[1])).collect::<Vec<_>>(),
        1.0,
    );
    let period = speed.mean;
    let h = period / n as f64;
    let mut frames = Vec::with_capacity(n + 1);
    let mut ks = Vec::with_capacity(n);
    let mut u = 0.0;
    for i in 0..=n {
        let target = i as f64 * h;
        for _ in 0..50 {
            let step = (speed.integral(u) - target) / speed.eval(u);
            u -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let [p, d1, d2] = interp.eval(u);
        let k = curvature_from_derivatives(form, &p, &d1, &d2);
        let (point, tangent, normal) = renormalize(form, &p, &d1);
        frames.push(FrenetFrame {
            point,
            tangent,
            normal,
            curvature: k,
        });
        if i < n {
            ks.push(k);
        }
    }
    let mut series = TrigSeries::interpolate(&ks, period);
    series.trim(1e-13);
    let (first, last) = (frames[0], frames[n]);
    Ok(SampledCurve {
        form,
        period,
        closure: ClosureDefect {
            position: form.distance_lenient(&first.point, &last.point),
            tangent: (first.tangent - last.tangent).norm(),
        },
        frames,
        model: CurvatureModel::Series(series),
        circle: None,
    })
}

impl SampledCurve {
    pub fn form(&self) -> SpaceForm {
        self.form
    }

    /// Arc length of one period.
    pub fn period(&self) -> f64 {
        self.period
    }

    /// Number of samples per period.
    pub fn len(&self) -> usize {
        self.frames.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.len() as f64
    }

    pub fn arc(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    /// The `len()` frames of one period (the duplicate endpoint excluded).
    pub fn frames(&self) -> &[FrenetFrame] {
        &self.frames[..self.len()]
    }

    /// Frame `i` for `i` in `0..=len()`.
    pub fn frame(&self, i: usize) -> &FrenetFrame {
        &self.frames[i]
    }

    pub fn curvature_model(&self) -> &CurvatureModel {
        &self.model
    }

    pub fn k(&self, s: f64) -> f64 {
        self.model.k(s)
    }

    pub fn k_derivs(&self, s: f64) -> [f64; 4] {
        self.model.derivs(s)
    }

    pub fn circle(&self) -> Option<Circle> {
        self.circle
    }

    pub fn closure(&self) -> ClosureDefect {
        self.closure
    }

    pub fn is_closed(&self) -> bool {
        self.closure.max() < EPS_CLOSE * self.period
    }

    pub fn require_closed(&self) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(Error::NotClosed {
                defect: self.closure.max(),
                tolerance: EPS_CLOSE * self.period,
            })
        }
    }

    /// Frame at arc length `s`. Closed curves wrap `s` modulo the period;
    /// open ones continue the Frenet flow past either end.
    pub fn frame_at(&self, s: f64) -> FrenetFrame {
        let h = self.spacing();
        let s = if self.is_closed() { s.rem_euclid(self.period) } else { s };
        let i = (s / h).round().clamp(0.0, self.len() as f64) as usize;
        let ds = s - i as f64 * h;
        let steps = (ds.abs() / (0.25 * h)).ceil().max(1.0) as usize;
        self.flow_from(i, ds, steps)
    }

    pub fn point_at(&self, s: f64) -> Vec3 {
        self.frame_at(s).point
    }

    /// Integrates the Frenet system from stored sample `i` by `ds` in
    /// `steps` equal RK4 steps.
    pub fn flow_from(&self, i: usize, ds: f64, steps: usize) -> FrenetFrame {
        let mut f = self.frames[i];
        if ds == 0.0 {
            return f;
        }
        let h = ds / steps as f64;
        let s0 = self.arc(i);
        for j in 0..steps {
            f = frenet_step(self.form, &self.model, &f, s0 + j as f64 * h, h);
        }
        f
    }

    /// Anchor sample and substep count giving smooth evaluations across a
    /// finite-difference stencil of half-width `reach` around `s`.
    pub(crate) fn stencil_anchor(&self, s: f64, reach: f64) -> (usize, f64, usize) {
        let h = self.spacing();
        let s = if self.is_closed() { s.rem_euclid(self.period) } else { s };
        let i = (s / h).round().clamp(0.0, self.len() as f64) as usize;
        let ds = s - i as f64 * h;
        let steps = ((ds.abs() + reach) / (0.25 * h)).ceil().max(1.0) as usize;
        (i, ds, steps)
    }

    /// Maximum frame defect over all samples.
    pub fn max_frame_defect(&self) -> f64 {
        self.frames.iter().map(|f| f.defect(self.form)).fold(0.0, f64::max)
    }

    /// Maximum of `|e - γ ∧ t|` (zero by construction for `c = ±1`).
    pub fn max_wedge_defect(&self) -> f64 {
        self.frames
            .iter()
            .map(|f| (f.normal - self.form.wedge(&f.point, &f.tangent)).norm())
            .fold(0.0, f64::max)
    }
}

/// Step used for finite-difference curvature and speed evaluations.
pub(crate) const FD_STEP: f64 = 2e-3;

/// Stencil positions `[center, around]` of an arbitrary point map.
pub(crate) fn stencil<F: Fn(f64) -> Vec3>(f: F, s: f64, h: f64) -> (Vec3, [Vec3; 6]) {
    (f(s), STENCIL.map(|k| f(s + k * h)))
}

/// Geodesic curvature at `s` from finite differences of sampled positions.
pub fn geodesic_curvature(curve: &SampledCurve, s: f64) -> f64 {
    let h = FD_STEP.min(curve.spacing());
    let (i, ds, steps) = curve.stencil_anchor(s, 3.0 * h);
    let at = |x: f64| curve.flow_from(i, ds + x, steps).point;
    let (p, around) = stencil(at, 0.0, h);
    let [d1, d2, _] = numeric::derivatives(p, &around, h);
    curvature_from_derivatives(curve.form, &p, &d1, &d2)
}

pub fn check_convex(curve: &SampledCurve) -> ConvexityReport {
    let lo = curve.frames().iter().map(|f| f.curvature).fold(f64::INFINITY, f64::min);
    let margin = lo - curve.form.convexity_bound();
    ConvexityReport {
        convex: margin > 0.0,
        margin,
    }
}

/// Roots in `[0, period)` of a periodic function sampled on `n` grid cells,
/// refined to `tol` and de-duplicated modulo the period.
pub(crate) fn periodic_roots<F: FnMut(f64) -> f64>(mut f: F, period: f64, n: usize, tol: f64) -> Vec<f64> {
    // one extra cell before zero so a root sitting on the seam is bracketed
    let xs: Vec<f64> = (-1..=n as i64).map(|i| i as f64 * period / n as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut roots: Vec<f64> = numeric::grid_roots(&mut f, &xs, &vs, tol)
        .into_iter()
        .map(|r| {
            let r = r.rem_euclid(period);
            if r >= period - tol {
                0.0
            } else {
                r
            }
        })
        .collect();
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 10.0 * tol);
    if roots.len() > 1 && roots[0] + period - roots[roots.len() - 1] < 10.0 * tol {
        roots.pop();
    }
    roots
}

/// Critical points of the geodesic curvature in `[0, period)`.
pub fn vertices(curve: &SampledCurve) -> CriticalSet {
    if curve.model.is_constant() {
        return CriticalSet::All;
    }
    let scale = curve.frames().iter().map(|f| f.curvature.abs()).fold(0.0, f64::max);
    let floor = 1e-13 * scale / curve.period;
    let f = |s: f64| {
        let d = curve.k_derivs(s)[1];
        if d.abs() < floor {
            0.0
        } else {
            d
        }
    };
    CriticalSet::Points(periodic_roots(f, curve.period, curve.len(), 1e-10 * curve.period))
}

/// Length of `s -> f(s)` over `[a, b]` by composite Simpson on `n` cells
/// (even), with finite-difference speeds.
pub(crate) fn path_length<F: Fn(f64) -> Vec3>(form: SpaceForm, f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let fd = FD_STEP.min(h);
    let speeds: Vec<f64> = (0..=n)
        .map(|i| {
            let s = a + i as f64 * h;
            let (p, around) = stencil(&f, s, fd);
            form.norm(&numeric::derivatives(p, &around, fd)[0])
        })
        .collect();
    numeric::simpson(&speeds, h)
}

/// Arc length of one period.
pub fn curve_length(curve: &SampledCurve) -> f64 {
    let n = curve.len() + curve.len() % 2;
    path_length(curve.form, |s| curve.point_at(s), 0.0, curve.period, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn plane_unit_circle_from_curvature() {
        let c = build_from_curvature(SpaceForm::Euclidean, CurvatureModel::constant(TAU, 1.0), 1024).unwrap();
        // exact circle through the origin with centre (0,0,1)
        let center = Vec3::new(0.0, 0.0, 1.0);
        let err = c
            .frames()
            .iter()
            .map(|f| ((f.point - center).norm() - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
        for i in [0usize, 100, 517] {
            let s = c.arc(i);
            let exact = Vec3::new(0.0, s.sin(), 1.0 - s.cos());
            assert!((c.frame(i).point - exact).norm() < 1e-8);
        }
        assert!(c.is_closed());
    }

    #[test]
    fn hyperbolic_circle_closes() {
        let k = 1.0 / 1f64.tanh();
        let c = build_from_curvature(
            SpaceForm::Hyperbolic,
            CurvatureModel::constant(TAU * 1f64.sinh(), k),
            2048,
        )
        .unwrap();
        assert!(c.closure().max() < 1e-7, "{:?}", c.closure());
    }

    #[test]
    fn convexity_is_enforced_on_build() {
        let err = build_from_curvature(SpaceForm::Hyperbolic, CurvatureModel::constant(5.0, 0.9), 128).unwrap_err();
        assert_eq!(err.code(), "not_convex");
    }

    #[test]
    fn check_convex_margins() {
        let a = integrate_frenet(SpaceForm::Hyperbolic, CurvatureModel::constant(5.0, 1.2), 128).unwrap();
        let r = check_convex(&a);
        assert!(r.convex);
        assert_abs_diff_eq!(r.margin, 0.2, epsilon = 1e-12);
        let b = integrate_frenet(SpaceForm::Hyperbolic, CurvatureModel::constant(5.0, 0.9), 128).unwrap();
        assert!(!check_convex(&b).convex);
        let c = integrate_frenet(SpaceForm::Euclidean, CurvatureModel::constant(5.0, 0.5), 128).unwrap();
        assert!(check_convex(&c).convex);
    }

    #[test]
    fn circle_curvatures() {
        let c = build_circle(SpaceForm::Euclidean, 2.0, 256).unwrap();
        assert!(c.frames().iter().all(|f| f.curvature == 0.5));
        let h = build_circle(SpaceForm::Hyperbolic, 1.0, 256).unwrap();
        assert_abs_diff_eq!(h.frame(3).curvature, 1.0 / 1f64.tanh(), epsilon = 1e-12);
        let s = build_circle(SpaceForm::Spherical, PI / 4.0, 256).unwrap();
        assert_abs_diff_eq!(s.frame(3).curvature, 1.0, epsilon = 1e-12);
        assert!(build_circle(SpaceForm::Spherical, 2.0, 256).is_err());
        assert!(build_circle(SpaceForm::Euclidean, -1.0, 256).is_err());
        assert!(build_circle(SpaceForm::Euclidean, 1.0, 32).is_err());
    }

    #[test]
    fn finite_difference_curvature_matches_circles() {
        for form in SpaceForm::ALL {
            for r in [0.3, 0.7, 1.0] {
                let c = build_circle(form, r, 512).unwrap();
                let k = form.cot(r);
                for s in [0.0, 0.1, 1.234, c.period() - 1e-3] {
                    assert_abs_diff_eq!(geodesic_curvature(&c, s), k, epsilon = 1e-6);
                }
            }
        }
    }

    #[test]
    fn finite_difference_curvature_matches_a_table() {
        let l = 2.0 * PI;
        let c = build_from_curvature(SpaceForm::Euclidean, CurvatureModel::cosine(l, 1.0, 0.3, 1), 1024).unwrap();
        for s in [0.0, 0.5, 2.0, 4.4] {
            assert_abs_diff_eq!(geodesic_curvature(&c, s), c.k(s), epsilon = 1e-7);
        }
    }

    #[test]
    fn circle_frames_are_orthonormal() {
        for form in SpaceForm::ALL {
            let c = build_circle(form, 0.9, 256).unwrap();
            assert!(c.max_frame_defect() < 1e-12);
            if form != SpaceForm::Euclidean {
                assert!(c.max_wedge_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn vertices_of_cosine_families() {
        let l = PI;
        let c = build_from_curvature(SpaceForm::Euclidean, CurvatureModel::cosine(l, 2.0, 0.5, 1), 512).unwrap();
        let v = vertices(&c);
        let p = v.points().unwrap();
        assert_eq!(p.len(), 2);
        assert_abs_diff_eq!(p[0], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(p[1], l / 2.0, epsilon = 1e-9);
        let c = build_from_curvature(SpaceForm::Euclidean, CurvatureModel::cosine(l, 2.0, 0.4, 2), 512).unwrap();
        let v = vertices(&c);
        let p = v.points().unwrap();
        assert_eq!(p.len(), 4);
        for (j, x) in p.iter().enumerate() {
            assert_abs_diff_eq!(*x, j as f64 * l / 4.0, epsilon = 1e-9);
        }
        let circle = build_circle(SpaceForm::Spherical, 0.5, 128).unwrap();
        assert_eq!(vertices(&circle), CriticalSet::All);
    }

    #[test]
    fn lengths_of_circles() {
        let c = build_from_curvature(SpaceForm::Euclidean, CurvatureModel::constant(TAU, 1.0), 1024).unwrap();
        assert_abs_diff_eq!(curve_length(&c), TAU, epsilon = 1e-8);
        let h = build_circle(SpaceForm::Hyperbolic, 1.0, 2048).unwrap();
        assert_abs_diff_eq!(curve_length(&h), TAU * 1f64.sinh(), epsilon = 1e-6);
        let s = build_circle(SpaceForm::Spherical, 0.7, 2048).unwrap();
        assert_abs_diff_eq!(curve_length(&s), TAU * 0.7f64.sin(), epsilon = 1e-6);
    }

    #[test]
    fn samples_of_a_circle_rebuild_the_circle() {
        for form in SpaceForm::ALL {
            let r = 0.8;
            let pts: Vec<Vec3> = (0..64)
                .map(|j| {
                    let th = TAU * j as f64 / 64.0;
                    form.cos(r) * form.origin() + form.sin(r) * Vec3::new(0.0, th.cos(), th.sin())
                })
                .collect();
            let c = build_from_samples(form, &pts, 256).unwrap();
            assert_abs_diff_eq!(c.period(), TAU * form.sin(r), epsilon = 1e-12);
            assert!(
                c.curvature_model().is_constant() || {
                    let (lo, hi) = c.curvature_model().range(100);
                    hi - lo < 1e-10
                }
            );
            assert_abs_diff_eq!(c.k(0.3), form.cot(r), epsilon = 1e-10);
            // reversed order yields the same positively oriented curve
            let mut rev = pts.clone();
            rev.reverse();
            let c2 = build_from_samples(form, &rev, 256).unwrap();
            assert_abs_diff_eq!(c2.k(0.0), form.cot(r), epsilon = 1e-10);
        }
    }

    #[test]
    fn frame_at_interpolates_between_samples() {
        let c = build_circle(SpaceForm::Hyperbolic, 1.0, 256).unwrap();
        let s = 0.3 * c.spacing() + 10.0 * c.spacing();
        let f = c.frame_at(s);
        let theta = s / 1f64.sinh();
        let exact = Vec3::new(1f64.cosh(), 1f64.sinh() * theta.cos(), 1f64.sinh() * theta.sin());
        assert!((f.point - exact).norm() < 1e-12);
        assert!((c.frame_at(s + c.period()).point - exact).norm() < 1e-12);
    }
}
