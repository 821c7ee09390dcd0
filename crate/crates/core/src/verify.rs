//! Property suite behind `sfc verify`: the metric identities and numerical
//! invariants, each reported as a named pass/fail line.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::curve::{build_circle, vertices, CriticalSet, CurvatureModel, CurveSpec, SampledCurve};
use crate::error::Result;
use crate::evolutoid::{self, CuspType, SingularSet};
use crate::figures;
use crate::involutoid;
use crate::measures;
use crate::space::{SpaceForm, Vec3};
use crate::wavefront;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(id: u32, name: &'static str, passed: bool, detail: String) -> Self {
        Check {
            id,
            name,
            passed,
            detail,
        }
    }

    fn failed(id: u32, name: &'static str, err: crate::Error) -> Self {
        Check::new(id, name, false, format!("error: code={} {err}", err.code()))
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{:>2}] {}: {}", self.id, self.name, self.detail)
    }
}

/// `k = mean + amp cos(2π h s / π)` on a curve of length `π`.
pub fn cosine_curve(form: SpaceForm, mean: f64, amp: f64, harmonic: usize, n: usize) -> Result<SampledCurve> {
    CurveSpec::curvature(form, CurvatureModel::cosine(PI, mean, amp, harmonic)).build(n)
}

fn run(id: u32, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check::new(id, name, passed, detail),
        Err(e) => Check::failed(id, name, e),
    }
}

pub fn length_ratio(n: usize) -> Check {
    run(1, "length ratio", || {
        let start = Instant::now();
        let mut curves = Vec::new();
        for form in SpaceForm::ALL {
            for r in [0.5, 1.0] {
                curves.push(build_circle(form, r, n)?);
            }
        }
        curves.push(cosine_curve(SpaceForm::Euclidean, 2.0, 0.5, 1, n)?);
        let mut worst: f64 = 0.0;
        let mut used = 0;
        for c in &curves {
            for alpha in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
                if !measures::check_alpha_star(c, alpha)? {
                    continue;
                }
                let rep = measures::length_ratio(c, alpha)?;
                worst = worst.max((rep.ratio - alpha.cos()).abs());
                used += 1;
            }
        }
        let secs = start.elapsed().as_secs_f64();
        Ok((
            worst < 1e-6 && secs < 5.0,
            format!("{used} cases, max |ratio - cos α| = {worst:.2e}, {secs:.2} s"),
        ))
    })
}

pub fn plane_area(n: usize) -> Check {
    run(2, "plane area inequality", || {
        let circle = build_circle(SpaceForm::Euclidean, 1.0, n)?;
        let eq = measures::plane_area_inequality(&circle, FRAC_PI_4)?;
        let oval = figures::plane_oval().build(n)?;
        let ineq = measures::plane_area_inequality(&oval, 0.2)?;
        let circle_err = eq.ratio.map_or(f64::INFINITY, |r| (r - 0.5).abs());
        let margin = ineq.margin.unwrap_or(f64::NAN);
        Ok((
            circle_err < 1e-7 && margin > 0.0,
            format!("circle |ratio - 1/2| = {circle_err:.2e}, oval margin below cos²(0.2) = {margin:.4e}"),
        ))
    })
}

fn curvature_spread(c: &SampledCurve) -> f64 {
    let ks = c.frames().iter().map(|f| f.curvature);
    ks.clone().fold(f64::NEG_INFINITY, f64::max) - ks.fold(f64::INFINITY, f64::min)
}

pub fn circle_characterization(n: usize) -> Check {
    run(3, "circle characterization", || {
        let mut worst: f64 = 0.0;
        for form in SpaceForm::ALL {
            for r in [0.5, 1.0] {
                let c = build_circle(form, r, n)?;
                for alpha in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
                    worst = worst.max(curvature_spread(&evolutoid::evolutoid_curve(&c, alpha, n)?));
                }
            }
        }
        let oval = figures::plane_oval().build(n)?;
        let varied = curvature_spread(&evolutoid::evolutoid_curve(&oval, FRAC_PI_4, n)?);
        Ok((
            worst < 1e-7 && varied > 1e-3,
            format!("circles: max spread {worst:.2e}; oval: spread {varied:.3}"),
        ))
    })
}

pub fn cocircularity(n: usize) -> Check {
    run(4, "co-circularity", || {
        let mut rng = StdRng::seed_from_u64(4);
        let mut algebraic: f64 = 0.0;
        for (form, mean) in [
            (SpaceForm::Hyperbolic, 2.5),
            (SpaceForm::Euclidean, 2.0),
            (SpaceForm::Spherical, 2.0),
        ] {
            let c = cosine_curve(form, mean, 0.4, 1, n)?;
            for _ in 0..512 {
                let s = rng.gen_range(0.0..c.period());
                let alpha = rng.gen_range(1e-3..FRAC_PI_2);
                algebraic = algebraic.max(evolutoid::cocircularity_check(&c, s, alpha)?.algebraic);
            }
        }
        let hyp = build_circle(SpaceForm::Hyperbolic, 1.0, n)?;
        let geometric = evolutoid::cocircularity_check(&hyp, 0.3, FRAC_PI_3)?.geometric;
        Ok((
            algebraic < 1e-9 && geometric < 1e-7,
            format!("branch identity {algebraic:.2e}; hyperbolic circle membership residual {geometric:.3e}"),
        ))
    })
}

pub fn evolute_cusps(n: usize) -> Check {
    run(5, "evolute cusps at vertices", || {
        let c = cosine_curve(SpaceForm::Euclidean, 2.0, 0.5, 1, n)?;
        let pts = match evolutoid::singular_set(&c, FRAC_PI_2)? {
            SingularSet::Isolated(p) => p,
            SingularSet::Everywhere => Vec::new(),
        };
        let half = 0.5 * c.period();
        let located = pts.len() == 2 && pts[0].s0.min(c.period() - pts[0].s0) < 1e-6 && (pts[1].s0 - half).abs() < 1e-6;
        let cusps = pts.iter().all(|p| p.kind == CuspType::Cusp230);
        let four = evolutoid::singular_set(&figures::plane_oval().build(n)?, FRAC_PI_2)?
            .points()
            .len();
        Ok((
            located && cusps && four == 4,
            format!(
                "two-vertex curve: {} points ({}), four-vertex oval: {four} points",
                pts.len(),
                pts.iter().map(|p| p.kind.name()).collect::<Vec<_>>().join(", ")
            ),
        ))
    })
}

/// First singular angle from a dense `(s, α)` grid.
pub fn alpha_zero_grid(curve: &SampledCurve, ns: usize) -> Result<f64> {
    let m = |a: f64| -> Result<f64> {
        let mut lo = f64::INFINITY;
        for i in 0..ns {
            let s = curve.period() * i as f64 / ns as f64;
            lo = lo.min(evolutoid::regularity_speed(curve, s, a)?);
        }
        Ok(lo)
    };
    let mut step = 1e-2;
    let mut a = 0.0;
    while step > 1e-7 {
        while a + step <= FRAC_PI_2 && m(a + step)? > 0.0 {
            a += step;
        }
        step *= 0.1;
    }
    Ok(a)
}

pub fn alpha_zero(n: usize) -> Check {
    run(6, "first singular angle", || {
        let c = cosine_curve(SpaceForm::Euclidean, 2.0, 0.5, 1, n)?;
        let az = evolutoid::alpha_zero(&c)?;
        let grid = alpha_zero_grid(&c, 8192)?;
        let kind = evolutoid::classify_cusp(&c, az.s, az.alpha)?.kind;
        let mut circles_exact = true;
        for form in SpaceForm::ALL {
            circles_exact &= evolutoid::alpha_zero(&build_circle(form, 0.8, 256)?)?.alpha == FRAC_PI_2;
        }
        let gap = (az.alpha - grid).abs();
        Ok((
            gap < 1e-5 && az.g_s.abs() < 1e-4 && kind != CuspType::Cusp230 && circles_exact,
            format!(
                "α₀ = {:.10}, grid {grid:.10}, |G_s| = {:.2e}, type {}, circles at π/2: {circles_exact}",
                az.alpha,
                az.g_s.abs(),
                kind.name()
            ),
        ))
    })
}

pub fn involutoid_round_trip(n: usize) -> Check {
    run(7, "closed involutoid round trip", || {
        let start = Instant::now();
        let curves = [
            build_circle(SpaceForm::Euclidean, 1.0, n)?,
            build_circle(SpaceForm::Hyperbolic, 1.0, n)?,
            figures::plane_oval().build(n)?,
            figures::hyperbolic_oval().build(n)?,
        ];
        let mut residual: f64 = 0.0;
        let mut spread: f64 = 0.0;
        for c in &curves {
            for alpha in [FRAC_PI_6, FRAC_PI_4] {
                let inv = involutoid::closed_involutoid(c, alpha)?;
                let eta = inv.curve.as_ref().ok_or_else(|| {
                    crate::Error::NoClosedInvolutoid("periodic solution did not yield a regular curve".into())
                })?;
                residual = residual.max(involutoid::verify_involutoid(c, eta, alpha)?);
                spread = spread.max(inv.uniqueness.as_ref().map_or(f64::INFINITY, |u| u.spread));
            }
        }
        let secs = start.elapsed().as_secs_f64();
        Ok((
            residual < 1e-5 && spread < 1e-8 && secs < 30.0,
            format!("residual {residual:.2e}, uniqueness spread {spread:.2e}, {secs:.2} s"),
        ))
    })
}

pub fn spherical_existence() -> Check {
    run(8, "spherical existence boundary", || {
        let mut mismatches = 0;
        for i in 0..20 {
            for j in 0..20 {
                let k0 = 0.1 + 0.15 * i as f64;
                let alpha = 0.05 + 0.075 * j as f64;
                let found = !involutoid::spherical_constant_solutions(k0, alpha).is_empty();
                if found != (k0 >= alpha.tan()) {
                    mismatches += 1;
                }
            }
        }
        Ok((mismatches == 0, format!("{mismatches} mismatches on a 20x20 grid")))
    })
}

pub fn wavefront_locus(n: usize) -> Check {
    run(9, "wavefront singular locus", || {
        let curves = [
            figures::hyperbolic_oval().build(n)?,
            figures::plane_oval().build(n)?,
            cosine_curve(SpaceForm::Spherical, 2.0, 0.3, 1, n)?,
        ];
        let alpha = 0.6;
        let mut hausdorff: f64 = 0.0;
        let mut ortho: f64 = 0.0;
        for c in &curves {
            let (lo, hi) = wavefront::c0_range(c, alpha)?;
            let values = wavefront::sweep_values(lo, hi, 25);
            hausdorff = hausdorff.max(wavefront::wavefront_sweep(c, alpha, &values)?.to_evolutoid);
            for &c0 in values.iter().step_by(6) {
                let grid: Vec<f64> = (0..32).map(|i| c.period() * i as f64 / 32.0).collect();
                for w in wavefront::wavefront(c, alpha, c0, &grid)? {
                    if !w.singular {
                        ortho = ortho.max(wavefront::orthogonality_residual(c, alpha, c0, w.s));
                    }
                }
            }
        }
        Ok((
            hausdorff < 1e-5 && ortho < 1e-7,
            format!("distance to evolutoid {hausdorff:.2e}, orthogonality {ortho:.2e}"),
        ))
    })
}

pub fn area_ratio_limits() -> Check {
    run(10, "area ratio limits", || {
        let small = measures::area_ratio_circle(SpaceForm::Hyperbolic, 0.01, FRAC_PI_4)?.ratio;
        let plane = [0.5, 1.0, 2.0]
            .iter()
            .map(|&r| measures::area_ratio_circle(SpaceForm::Euclidean, r, FRAC_PI_4).map(|a| a.ratio))
            .collect::<Result<Vec<_>>>()?;
        let drift = plane.iter().fold(0.0_f64, |m, v| m.max((v - plane[0]).abs()));
        let radii: Vec<f64> = (0..60).map(|i| 0.05 + i as f64 * (2.95 / 59.0)).collect();
        let sweep: Vec<f64> = measures::area_ratio_sweep(SpaceForm::Hyperbolic, FRAC_PI_4, &radii, 512)?
            .iter()
            .map(|a| a.ratio)
            .collect();
        let monotone = measures::is_monotone(&sweep);
        Ok((
            (small - 0.5).abs() < 1e-3 && drift < 1e-9 && monotone,
            format!("R=0.01 ratio {small:.6}, plane drift {drift:.2e}, monotone sweep {monotone}"),
        ))
    })
}

/// Random point on the model, at distance below `reach` from the origin.
pub fn random_point(form: SpaceForm, rng: &mut StdRng, reach: f64) -> Vec3 {
    let r = rng.gen_range(0.0..reach);
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    let dir = Vec3::new(0.0, t.cos(), t.sin());
    form.normalize_point(&form.exp_raw(&form.origin(), &dir, r))
}

/// Random unit tangent vector at `p`.
pub fn random_unit_tangent(form: SpaceForm, rng: &mut StdRng, p: &Vec3) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let t = form.project_tangent(p, &v);
        let n = form.norm(&t);
        if n > 1e-3 {
            return t / n;
        }
    }
}

pub fn numerical_hygiene() -> Check {
    run(11, "numerical hygiene", || {
        let mut rng = StdRng::seed_from_u64(11);
        let (mut frame, mut model, mut transport, mut trig): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
        for form in SpaceForm::ALL {
            let reach = if form == SpaceForm::Spherical { 3.0 } else { 2.5 };
            for _ in 0..1000 {
                let p = random_point(form, &mut rng, reach);
                let t = random_unit_tangent(form, &mut rng, &p);
                let e = form.normal(&p, &t);
                frame = frame
                    .max((form.inner(&t, &t) - 1.0).abs())
                    .max((form.inner(&e, &e) - 1.0).abs())
                    .max(form.inner(&t, &e).abs());
                if form != SpaceForm::Euclidean {
                    frame = frame.max(form.inner(&p, &t).abs()).max(form.inner(&p, &e).abs());
                }
                let d = rng.gen_range(0.0..reach);
                let q = form.exp_map(&p, &t, d)?;
                model = model.max(form.model_residual(&q) / (1.0 + q.norm_squared()));
                let (_, w) = form.parallel_transport(&p, &t, d)?;
                transport = transport.max((form.norm(&w) - 1.0).abs());
                let x = rng.gen_range(-3.0..3.0);
                let id = form.cos(x).powi(2) + form.c() * form.sin(x).powi(2) - 1.0;
                trig = trig.max(id.abs() / (1.0 + form.cos(x).powi(2)));
            }
        }
        Ok((
            frame < 1e-7 && model < 1e-9 && transport < 1e-9 && trig < 1e-12,
            format!("3000 inputs: frame {frame:.1e}, model {model:.1e}, transport {transport:.1e}, trig {trig:.1e}"),
        ))
    })
}

/// Vertex count sanity: closed non-circular curves have at least four.
pub fn four_vertices(n: usize) -> Check {
    run(12, "four vertices", || {
        let c = figures::plane_oval().build(n)?;
        let count = match vertices(&c) {
            CriticalSet::Points(p) => p.len(),
            CriticalSet::All => 0,
        };
        Ok((count >= 4, format!("{count} vertices on the closed oval")))
    })
}

/// Every check, in order.
pub fn run_suite(n: usize) -> Vec<Check> {
    vec![
        length_ratio(n),
        plane_area(n),
        circle_characterization(n),
        cocircularity(n),
        evolute_cusps(n),
        alpha_zero(n),
        involutoid_round_trip(n),
        spherical_existence(),
        wavefront_locus(n),
        area_ratio_limits(),
        numerical_hygiene(),
        four_vertices(n),
    ]
}
