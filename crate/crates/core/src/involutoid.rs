//! α-involutoids: curves whose α-evolutoid is a given convex curve.
//!
//! An involutoid is `η = cos_c(λ) γ + sin_c(λ) t` where `λ` solves the
//! periodic scalar equation `λ' = cot α · k(s) |sin_c λ| - 1`. Backward
//! integration contracts onto the unique periodic solution inside the
//! trapping interval `[A, B]`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::curve::{self, SampledCurve};
use crate::error::{Error, Result};
use crate::evolutoid;
use crate::space::{SpaceForm, Vec3};

/// Event location tolerance for kink crossings.
pub const EPS_EVENT: f64 = 1e-10;

/// Period-map contraction threshold.
pub const EPS_PERIOD: f64 = 1e-10;

/// Maximum number of backward periods before giving up.
pub const MAX_PERIODS: usize = 200;

fn check_open_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(Error::Domain {
            what: "alpha must lie in (0, pi/2)",
            value: alpha,
        });
    }
    Ok(())
}

/// `cot α · k · |sin_c λ| - 1`.
pub fn ode_rhs(form: SpaceForm, alpha: f64, k: f64, lambda: f64) -> Result<f64> {
    check_open_alpha(alpha)?;
    Ok(rhs(form, alpha.tan().recip(), k, lambda))
}

fn rhs(form: SpaceForm, cot: f64, k: f64, lambda: f64) -> f64 {
    cot * k * form.sin(lambda).abs() - 1.0
}

/// First zero of `sin_c` met when moving from `from` towards `to`
/// (excluding `from` itself).
fn crossed_zero(form: SpaceForm, from: f64, to: f64) -> Option<f64> {
    let z = if form == SpaceForm::Spherical {
        if to > from {
            (from / PI).floor() * PI + PI
        } else {
            (from / PI).ceil() * PI - PI
        }
    } else if (to > from && from < 0.0) || (to < from && from > 0.0) {
        0.0
    } else {
        return None;
    };
    let z = if z == from {
        if to > from {
            z + PI
        } else {
            z - PI
        }
    } else {
        z
    };
    let hit = if to > from { z <= to } else { z >= to };
    hit.then_some(z)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Status {
    Completed,
    /// `|λ|` exceeded the blow-up guard at `s`.
    Diverged {
        s: f64,
        lambda: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSolution {
    pub alpha: f64,
    pub s: Vec<f64>,
    pub lambda: Vec<f64>,
    pub status: Status,
    /// Arc lengths where `λ` crossed a zero of `sin_c`.
    pub events: Vec<f64>,
    pub periodic: bool,
    pub period_defect: f64,
    pub trap_bounds: Option<(f64, f64)>,
}

impl LambdaSolution {
    pub fn last(&self) -> f64 {
        *self.lambda.last().expect("solutions are never empty")
    }

    /// Largest `|λ' - rhs|` at step midpoints, with `λ'` from the cubic
    /// Hermite interpolant of neighbouring samples.
    pub fn midpoint_residual(&self, curve: &SampledCurve) -> f64 {
        let form = curve.form();
        let cot = self.alpha.tan().recip();
        let mut worst: f64 = 0.0;
        for i in 0..self.s.len().saturating_sub(1) {
            let (s0, s1) = (self.s[i], self.s[i + 1]);
            let (l0, l1) = (self.lambda[i], self.lambda[i + 1]);
            let h = s1 - s0;
            let crosses = self.events.iter().any(|&e| (e - s0) * (e - s1) <= 0.0);
            if crosses || h == 0.0 {
                continue;
            }
            let f0 = rhs(form, cot, curve.k(s0), l0);
            let f1 = rhs(form, cot, curve.k(s1), l1);
            let lm = 0.5 * (l0 + l1) + h * (f0 - f1) / 8.0;
            let dm = 1.5 * (l1 - l0) / h - 0.25 * (f0 + f1);
            let sm = 0.5 * (s0 + s1);
            worst = worst.max((dm - rhs(form, cot, curve.k(sm), lm)).abs());
        }
        worst
    }
}

/// Trapping interval `[A, B]`: `A = arcsin_c(1/f_max)`, `B = arcsin_c(1/f_min)`
/// with `f = cot α · k`.
pub fn trap_bounds(curve: &SampledCurve, alpha: f64) -> Result<(f64, f64)> {
    check_open_alpha(alpha)?;
    let form = curve.form();
    let cot = alpha.tan().recip();
    let (kmin, kmax) = curve.curvature_model().range(8 * curve.len());
    if kmin <= 0.0 {
        return Err(Error::NotConvex { margin: kmin });
    }
    let (fmin, fmax) = (cot * kmin, cot * kmax);
    if form == SpaceForm::Spherical && fmin < 1.0 {
        return Err(Error::NoClosedInvolutoid(format!(
            "cot(alpha) * min k = {fmin:.6} < 1, so no trapping interval exists (min k < tan alpha)"
        )));
    }
    Ok((form.arcsin(1.0 / fmax)?, form.arcsin(1.0 / fmin)?))
}

fn guard(form: SpaceForm, bounds: Option<(f64, f64)>) -> f64 {
    match bounds {
        Some((_, b)) => 10.0 * b.max(1.0),
        None if form == SpaceForm::Spherical => 10.0 * 2.0 * PI,
        None => 10.0,
    }
}

struct Stepper<'a> {
    curve: &'a SampledCurve,
    form: SpaceForm,
    cot: f64,
}

impl Stepper<'_> {
    fn f(&self, s: f64, l: f64) -> f64 {
        rhs(self.form, self.cot, self.curve.k(s), l)
    }

    fn rk4(&self, s: f64, l: f64, h: f64) -> f64 {
        let k1 = self.f(s, l);
        let k2 = self.f(s + 0.5 * h, l + 0.5 * h * k1);
        let k3 = self.f(s + 0.5 * h, l + 0.5 * h * k2);
        let k4 = self.f(s + h, l + h * k3);
        l + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    }

    /// One step with kink events resolved; pushes event locations.
    fn step(&self, mut s: f64, mut l: f64, h: f64, events: &mut Vec<f64>) -> f64 {
        let end = s + h;
        for _ in 0..16 {
            let rest = end - s;
            if rest == 0.0 {
                break;
            }
            let next = self.rk4(s, l, rest);
            let Some(z) = crossed_zero(self.form, l, next) else {
                return next;
            };
            let side = (l - z).signum();
            let (mut lo, mut hi) = (0.0, rest.abs());
            while hi - lo > EPS_EVENT {
                let mid = 0.5 * (lo + hi);
                let v = self.rk4(s, l, mid * rest.signum());
                if (v - z) * side > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            s += hi * rest.signum();
            l = z;
            events.push(s);
        }
        if end != s {
            l = self.rk4(s, l, end - s);
        }
        l
    }
}

/// RK4 trajectory of the `λ` equation from `s_start` to `s_end` (either
/// direction) with steps of at most `step`.
pub fn integrate_lambda(
    curve: &SampledCurve,
    alpha: f64,
    lambda0: f64,
    s_start: f64,
    s_end: f64,
    step: f64,
) -> Result<LambdaSolution> {
    check_open_alpha(alpha)?;
    let period = curve.period();
    if !(step > 0.0 && step <= period / 512.0 * (1.0 + 1e-12)) {
        return Err(Error::InvalidInput(format!(
            "step {step} must be positive and at most period/512 = {}",
            period / 512.0
        )));
    }
    let bounds = trap_bounds(curve, alpha).ok();
    let limit = guard(curve.form(), bounds);
    let stepper = Stepper {
        curve,
        form: curve.form(),
        cot: alpha.tan().recip(),
    };
    let n = ((s_end - s_start).abs() / step).ceil().max(1.0) as usize;
    let h = (s_end - s_start) / n as f64;
    let mut s = vec![s_start];
    let mut lambda = vec![lambda0];
    let mut events = Vec::new();
    let mut status = Status::Completed;
    let mut l = lambda0;
    for i in 0..n {
        let si = s_start + i as f64 * h;
        l = stepper.step(si, l, h, &mut events);
        let snext = if i + 1 == n {
            s_end
        } else {
            s_start + (i + 1) as f64 * h
        };
        s.push(snext);
        lambda.push(l);
        if !l.is_finite() || l.abs() > limit {
            status = Status::Diverged { s: snext, lambda: l };
            break;
        }
    }
    Ok(LambdaSolution {
        alpha,
        s,
        lambda,
        status,
        events,
        periodic: false,
        period_defect: f64::NAN,
        trap_bounds: bounds,
    })
}

/// Convergence of backward trajectories from several starting values.
#[derive(Clone, Debug, PartialEq)]
pub struct Uniqueness {
    pub starts: Vec<f64>,
    /// Periodic value `λ(0)` reached from each start.
    pub limits: Vec<f64>,
    /// Largest pointwise disagreement of the converged periods.
    pub spread: f64,
}

#[derive(Clone, Debug)]
pub struct InvolutoidCurve {
    pub alpha: f64,
    pub solution: LambdaSolution,
    /// `η(s_i)` on the solution grid.
    pub points: Vec<Vec3>,
    /// Arc-length resampled closed curve, present for closed regular `η`.
    pub curve: Option<SampledCurve>,
    pub uniqueness: Option<Uniqueness>,
}

fn steps_per_period(curve: &SampledCurve) -> usize {
    let n = curve.len();
    n * 512usize.div_ceil(n)
}

/// Backward period map iterated to convergence; returns the periodic value
/// at `s = 0`, the number of periods used and the last period's samples.
fn contract(curve: &SampledCurve, alpha: f64, start: f64, bounds: (f64, f64)) -> Result<(f64, usize, Vec<f64>)> {
    let period = curve.period();
    let step = period / steps_per_period(curve) as f64;
    let mut l = start;
    let mut prev: Option<Vec<f64>> = None;
    let mut defect = f64::INFINITY;
    let tol = 1e-12 * (1.0 + bounds.1);
    for j in 0..MAX_PERIODS {
        let sol = integrate_lambda(curve, alpha, l, period, 0.0, step)?;
        if let Status::Diverged { .. } = sol.status {
            return Err(Error::NotConverged { periods: j, defect });
        }
        if sol.lambda.iter().any(|&x| x < bounds.0 - tol || x > bounds.1 + tol) {
            return Err(Error::InvalidInput(format!(
                "trajectory left the trapping interval [{}, {}]",
                bounds.0, bounds.1
            )));
        }
        if let Some(p) = &prev {
            defect = p
                .iter()
                .zip(&sol.lambda)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if defect < EPS_PERIOD {
                return Ok((sol.last(), j + 1, sol.lambda));
            }
        }
        l = sol.last();
        prev = Some(sol.lambda);
    }
    Err(Error::NotConverged {
        periods: MAX_PERIODS,
        defect,
    })
}

/// The unique closed α-involutoid of a closed convex curve.
pub fn closed_involutoid(curve: &SampledCurve, alpha: f64) -> Result<InvolutoidCurve> {
    check_open_alpha(alpha)?;
    curve.require_closed()?;
    let bounds = trap_bounds(curve, alpha)?;
    let (a, b) = bounds;
    let starts = vec![a, 0.5 * (a + b), b];
    let mut limits = Vec::new();
    let mut periods = Vec::new();
    for &x in &starts {
        let (lim, _, last) = contract(curve, alpha, x, bounds)?;
        limits.push(lim);
        periods.push(last);
    }
    let spread = periods[1..]
        .iter()
        .flat_map(|p| p.iter().zip(&periods[0]).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);

    let period = curve.period();
    let n = steps_per_period(curve);
    let mut sol = integrate_lambda(curve, alpha, limits[1], period, 0.0, period / n as f64)?;
    sol.s.reverse();
    sol.lambda.reverse();
    sol.events.reverse();
    sol.period_defect = (sol.lambda[0] - sol.last()).abs();
    sol.periodic = sol.period_defect < 1e-8;
    let stride = n / curve.len();
    let sol = LambdaSolution {
        s: sol.s.iter().step_by(stride).copied().collect(),
        lambda: sol.lambda.iter().step_by(stride).copied().collect(),
        ..sol
    };
    let mut inv = reconstruct_involutoid(curve, &sol)?;
    inv.uniqueness = Some(Uniqueness { starts, limits, spread });
    Ok(inv)
}

/// Constant solutions on a spherical circle of curvature `k0`: the
/// representatives in `[0, 2π)` of `sin λ = ± tan α / k0`.
pub fn spherical_constant_solutions(k0: f64, alpha: f64) -> Vec<f64> {
    if !(k0 > 0.0) || k0 < alpha.tan() {
        return Vec::new();
    }
    let q = alpha.tan() / k0;
    let q = if q > 1.0 - 1e-12 { 1.0 } else { q };
    let r = q.asin();
    let mut out = vec![r, PI - r, PI + r, 2.0 * PI - r];
    out.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    out
}

/// `η = cos_c(λ) γ + sin_c(λ) t` at the solution's sample points.
pub fn reconstruct_involutoid(curve: &SampledCurve, solution: &LambdaSolution) -> Result<InvolutoidCurve> {
    let form = curve.form();
    let mut points = Vec::with_capacity(solution.s.len());
    for (&s, &l) in solution.s.iter().zip(&solution.lambda) {
        let f = curve.frame_at(s);
        let p = form.cos(l) * f.point + form.sin(l) * f.tangent;
        let residual = form.model_residual(&p);
        if residual > crate::space::EPS_MODEL * (1.0 + p.norm_squared()) {
            return Err(Error::NotOnModel { residual });
        }
        points.push(form.normalize_point(&p));
    }
    let regular = solution.lambda.iter().all(|l| *l != 0.0) && solution.events.is_empty();
    let closed_grid = solution.s.len() == curve.len() + 1
        && (solution.s[0]).abs() < 1e-12
        && (solution.s[curve.len()] - curve.period()).abs() < 1e-9 * curve.period();
    let resampled = if solution.periodic && regular && closed_grid && curve.is_closed() {
        Some(curve::build_from_samples(form, &points[..curve.len()], curve.len())?)
    } else {
        None
    };
    Ok(InvolutoidCurve {
        alpha: solution.alpha,
        solution: solution.clone(),
        points,
        curve: resampled,
        uniqueness: None,
    })
}

/// Where the involutoid meets the curve (`λ = 0`).
#[derive(Clone, Debug, PartialEq)]
pub enum InvolutoidSingularities {
    /// `λ ≡ 0`: the involutoid is the curve itself.
    All,
    Points(Vec<f64>),
}

pub fn involutoid_singularities(inv: &InvolutoidCurve) -> InvolutoidSingularities {
    let sol = &inv.solution;
    if sol.lambda.iter().all(|&l| l == 0.0) {
        return InvolutoidSingularities::All;
    }
    let mut pts = sol.events.clone();
    for (i, &l) in sol.lambda.iter().enumerate() {
        if l == 0.0 && !pts.iter().any(|&p| (p - sol.s[i]).abs() < 1e-9) {
            pts.push(sol.s[i]);
        }
    }
    // only zeros of λ itself (spherical kinks at λ = nπ, n ≠ 0 are not on γ)
    pts.retain(|&s| {
        let i = sol
            .s
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - s).abs().total_cmp(&(b.1 - s).abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        sol.lambda[i].abs() < 0.5
    });
    pts.sort_by(f64::total_cmp);
    InvolutoidSingularities::Points(pts)
}

/// Distance from `p` to the curve: nearest sample, refined along the curve.
fn nearest_on_curve(curve: &SampledCurve, p: &Vec3) -> f64 {
    let form = curve.form();
    let frames = curve.frames();
    let (j, _) = frames
        .iter()
        .enumerate()
        .map(|(j, f)| (j, (f.point - p).norm_squared()))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let h = curve.spacing();
    let s = curve.arc(j);
    crate::numeric::golden_min(
        |x| form.distance_lenient(&curve.point_at(x), p),
        s - h,
        s + h,
        1e-12 * curve.period(),
    )
    .1
}

/// Hausdorff-style distance between `gamma` and the envelope of the
/// geodesics through `eta` that make angle α with its tangent.
///
/// A positive solution `λ` places `γ(s)` behind `η(s)` on the tangent
/// geodesic, so the envelope is the α-evolutoid of `η` traversed backwards.
pub fn verify_involutoid(gamma: &SampledCurve, eta: &SampledCurve, alpha: f64) -> Result<f64> {
    let report = curve::check_convex(eta);
    if !report.convex {
        return Err(Error::NotConvex { margin: report.margin });
    }
    let evo = evolutoid::reversed_evolutoid_points(eta, alpha)?;
    let forward = evo.iter().map(|p| nearest_on_curve(gamma, p)).fold(0.0, f64::max);
    let backward = if eta.is_closed() {
        let evo_curve = curve::build_from_samples(eta.form(), &evo, eta.len())?;
        gamma
            .frames()
            .iter()
            .map(|f| nearest_on_curve(&evo_curve, &f.point))
            .fold(0.0, f64::max)
    } else {
        0.0
    };
    Ok(forward.max(backward))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{build_circle, build_from_curvature, CurvatureModel};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn rhs_examples() {
        use SpaceForm::*;
        assert_abs_diff_eq!(ode_rhs(Euclidean, FRAC_PI_4, 1.0, 1.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ode_rhs(Euclidean, FRAC_PI_4, 1.0, 0.0).unwrap(), -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            ode_rhs(Spherical, FRAC_PI_4, 2.0, FRAC_PI_2).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert!(ode_rhs(Euclidean, 0.0, 1.0, 1.0).is_err());
        assert!(ode_rhs(Euclidean, FRAC_PI_2, 1.0, 1.0).is_err());
    }

    #[test]
    fn zero_crossings() {
        use SpaceForm::*;
        assert_eq!(crossed_zero(Euclidean, 0.1, -0.1), Some(0.0));
        assert_eq!(crossed_zero(Euclidean, 0.0, -0.1), None);
        assert_eq!(crossed_zero(Euclidean, 0.2, 0.1), None);
        assert_eq!(crossed_zero(Spherical, 3.0, 3.2), Some(PI));
        assert_eq!(crossed_zero(Spherical, PI, 3.0), None);
        assert_eq!(crossed_zero(Spherical, 0.1, -0.1), Some(0.0));
    }

    #[test]
    fn plane_circle_fixed_point_and_contraction() {
        let c = build_circle(SpaceForm::Euclidean, 1.0, 512).unwrap();
        let step = c.period() / 512.0;
        let fixed = integrate_lambda(&c, FRAC_PI_4, 1.0, 0.0, 3.0 * c.period(), step).unwrap();
        assert!(fixed.lambda.iter().all(|l| (l - 1.0).abs() < 1e-14));
        // λ' = λ - 1 has solution 1 + 0.5 e^{s}
        let back = integrate_lambda(&c, FRAC_PI_4, 1.5, 0.0, -20.0 * c.period(), step).unwrap();
        assert_eq!(back.status, Status::Completed);
        assert_abs_diff_eq!(back.last(), 1.0, epsilon = 1e-8);
        let s = -1.0;
        let i = back.s.iter().position(|x| (x - s).abs() < step / 2.0).unwrap();
        assert_abs_diff_eq!(back.lambda[i], 1.0 + 0.5 * back.s[i].exp(), epsilon = 1e-10);
        let fwd = integrate_lambda(&c, FRAC_PI_4, 1.5, 0.0, 20.0 * c.period(), step).unwrap();
        assert!(matches!(fwd.status, Status::Diverged { .. }));
    }

    #[test]
    fn event_detection_finds_the_collapse() {
        // λ' = λ - 1 from λ0 = 0.5 reaches zero at s = ln 2 (then λ' = -1)
        let c = build_circle(SpaceForm::Euclidean, 1.0, 512).unwrap();
        let sol = integrate_lambda(&c, FRAC_PI_4, 0.5, 0.0, 2.0, c.period() / 512.0).unwrap();
        assert_eq!(sol.events.len(), 1);
        assert_abs_diff_eq!(sol.events[0], 2f64.ln(), epsilon = 1e-9);
        let inv = reconstruct_involutoid(&c, &sol).unwrap();
        let InvolutoidSingularities::Points(p) = involutoid_singularities(&inv) else {
            panic!()
        };
        assert_eq!(p.len(), 1);
        let f = c.frame_at(p[0]);
        let eta = SpaceForm::Euclidean.cos(0.0) * f.point;
        assert!((eta - c.point_at(p[0])).norm() < 1e-12);
    }

    #[test]
    fn trap_bounds_of_circles() {
        let c = build_circle(SpaceForm::Euclidean, 1.0, 256).unwrap();
        let (a, b) = trap_bounds(&c, FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(a, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b, 1.0, epsilon = 1e-12);
        let s = build_circle(SpaceForm::Spherical, FRAC_PI_4, 256).unwrap();
        let e = trap_bounds(&s, FRAC_PI_3).unwrap_err();
        assert_eq!(e.code(), "no_closed_involutoid");
    }

    #[test]
    fn closed_involutoid_of_circles() {
        let c = build_circle(SpaceForm::Euclidean, 1.0, 512).unwrap();
        let inv = closed_involutoid(&c, FRAC_PI_4).unwrap();
        assert!(inv.solution.lambda.iter().all(|l| (l - 1.0).abs() < 1e-10));
        let center = c.circle().unwrap().center;
        assert!(inv
            .points
            .iter()
            .all(|p| ((p - center).norm() - 2f64.sqrt()).abs() < 1e-10));
        let eta = inv.curve.as_ref().unwrap();
        assert!(verify_involutoid(&c, eta, FRAC_PI_4).unwrap() < 1e-6);

        let h = build_circle(SpaceForm::Hyperbolic, 1.0, 512).unwrap();
        let inv = closed_involutoid(&h, FRAC_PI_4).unwrap();
        let l0 = 1f64.tanh().asinh();
        assert!(inv.solution.lambda.iter().all(|l| (l - l0).abs() < 1e-9));
        // cosh r = cosh R cosh λ0
        let r = (1f64.cosh() * l0.cosh()).acosh();
        let center = h.circle().unwrap().center;
        for p in &inv.points {
            assert_abs_diff_eq!(
                SpaceForm::Hyperbolic.geodesic_distance(&center, p).unwrap(),
                r,
                epsilon = 1e-9
            );
        }
        let inv = closed_involutoid(&h, FRAC_PI_6).unwrap();
        assert!(verify_involutoid(&h, inv.curve.as_ref().unwrap(), FRAC_PI_6).unwrap() < 1e-6);
    }

    #[test]
    fn closed_involutoid_of_an_oval() {
        let c = build_from_curvature(SpaceForm::Euclidean, CurvatureModel::cosine(PI, 2.0, 0.4, 2), 1024).unwrap();
        let inv = closed_involutoid(&c, FRAC_PI_4).unwrap();
        let u = inv.uniqueness.as_ref().unwrap();
        assert!(u.spread < 1e-8, "{u:?}");
        let (a, b) = inv.solution.trap_bounds.unwrap();
        assert!(inv.solution.lambda.iter().all(|&l| l >= a - 1e-12 && l <= b + 1e-12));
        assert!(inv.solution.period_defect < 1e-9);
        assert!(inv.solution.midpoint_residual(&c) < 1e-8);
        let r = verify_involutoid(&c, inv.curve.as_ref().unwrap(), FRAC_PI_4).unwrap();
        assert!(r < 1e-5, "{r}");
    }

    #[test]
    fn a_curve_is_not_its_own_involutoid() {
        let c = build_circle(SpaceForm::Euclidean, 1.0, 256).unwrap();
        let r = verify_involutoid(&c, &c, FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(r, 1.0 - FRAC_PI_4.cos(), epsilon = 1e-9);
    }

    #[test]
    fn spherical_constants() {
        let v = spherical_constant_solutions(2.0, FRAC_PI_4);
        let expect = [PI / 6.0, 5.0 * PI / 6.0, 7.0 * PI / 6.0, 11.0 * PI / 6.0];
        assert_eq!(v.len(), 4);
        for (x, y) in v.iter().zip(expect) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-12);
            assert_abs_diff_eq!(
                ode_rhs(SpaceForm::Spherical, FRAC_PI_4, 2.0, *x).unwrap(),
                0.0,
                epsilon = 1e-12
            );
        }
        let v = spherical_constant_solutions(1.0, FRAC_PI_4);
        assert_eq!(v.len(), 2);
        assert!(spherical_constant_solutions(1.0, FRAC_PI_3).is_empty());
    }

    #[test]
    fn reconstruction_of_trivial_solutions() {
        let c = build_circle(SpaceForm::Euclidean, 1.0, 128).unwrap();
        let sol = LambdaSolution {
            alpha: FRAC_PI_4,
            s: (0..=128).map(|i| c.arc(i)).collect(),
            lambda: vec![0.0; 129],
            status: Status::Completed,
            events: vec![],
            periodic: true,
            period_defect: 0.0,
            trap_bounds: None,
        };
        let inv = reconstruct_involutoid(&c, &sol).unwrap();
        assert!(inv
            .points
            .iter()
            .zip(0..)
            .all(|(p, i)| (p - c.frame(i).point).norm() < 1e-15));
        assert_eq!(involutoid_singularities(&inv), InvolutoidSingularities::All);
    }
}
