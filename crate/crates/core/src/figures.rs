//! Qualitative figure set: evolutoids of closed curves in the plane and the
//! hyperbolic disk, the involutoid family of the unit circle, slanted
//! wavefronts, and the hyperbolic area-ratio table.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI, TAU};
use std::path::{Path, PathBuf};

use crate::curve::{CurvatureModel, CurveSpec, SampledCurve};
use crate::error::Result;
use crate::evolutoid::{self, SingularSet};
use crate::involutoid;
use crate::io::{self, Cell, LayerKind, PlotDocument};
use crate::measures;
use crate::space::{SpaceForm, Vec3};
use crate::wavefront;

/// The plane oval `k = 2 + 0.4 cos(4s)` of length `π`.
pub fn plane_oval() -> CurveSpec {
    CurveSpec::curvature(SpaceForm::Euclidean, CurvatureModel::cosine(PI, 2.0, 0.4, 2))
}

/// A hyperbolic oval: a small Euclidean ellipse in the Poincare disk.
pub fn hyperbolic_oval() -> CurveSpec {
    let m = 256;
    let points = (0..m)
        .map(|j| {
            let u = TAU * j as f64 / m as f64;
            disk_lift(0.3 * u.cos(), 0.18 * u.sin())
        })
        .collect();
    CurveSpec::samples(SpaceForm::Hyperbolic, points)
}

/// Hyperboloid point whose Poincare disk image is `(x, y)`.
pub fn disk_lift(x: f64, y: f64) -> Vec3 {
    let q = 1.0 - x * x - y * y;
    Vec3::new((2.0 - q) / q, 2.0 * x / q, 2.0 * y / q)
}

fn spec_hash(spec: &CurveSpec) -> String {
    io::spec_hash(io::spec_to_json(spec).to_string().as_bytes())
}

fn new_doc(spec: &CurveSpec, title: &str, alpha: Option<f64>, n: usize) -> PlotDocument {
    let mut doc = PlotDocument::new(spec.form, title);
    doc.alpha = alpha;
    doc.samples = n;
    doc.spec_hash = Some(spec_hash(spec));
    doc
}

fn curve_points(curve: &SampledCurve) -> Vec<Vec3> {
    curve.frames()[..curve.len()].iter().map(|f| f.point).collect()
}

fn evolutoid_figure(spec: &CurveSpec, title: &str, n: usize) -> Result<PlotDocument> {
    let curve = spec.build(n)?;
    let mut doc = new_doc(spec, title, None, n);
    doc.add_curve(LayerKind::Curve, &curve_points(&curve), true)?;
    for alpha in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2] {
        let pts: Vec<Vec3> = evolutoid::sample_evolutoid(&curve, alpha)?
            .iter()
            .map(|e| e.point)
            .collect();
        doc.add_curve(LayerKind::Evolutoid, &pts, true)?;
        if let SingularSet::Isolated(sing) = evolutoid::singular_set(&curve, alpha)? {
            let marks = sing
                .iter()
                .map(|p| evolutoid::evolutoid_point(&curve, p.s0, alpha))
                .collect::<Result<Vec<_>>>()?;
            doc.add_markers(LayerKind::Singular, &marks)?;
        }
    }
    Ok(doc)
}

/// Closed involutoid of the unit circle at `π/4` with spirals that wind onto
/// it backwards and away from it forwards.
fn involutoid_figure(n: usize) -> Result<PlotDocument> {
    let spec = CurveSpec::circle(SpaceForm::Euclidean, 1.0);
    let curve = spec.build(n)?;
    let alpha = FRAC_PI_4;
    let mut doc = new_doc(&spec, "involutoids of the unit circle", Some(alpha), n);
    doc.add_curve(LayerKind::Curve, &curve_points(&curve), true)?;
    let closed = involutoid::closed_involutoid(&curve, alpha)?;
    doc.add_curve(LayerKind::Involutoid, &closed.points[..curve.len()], true)?;
    let period = curve.period();
    let step = period / 512.0;
    for (l0, end) in [
        (0.2, -3.0 * period),
        (0.5, -3.0 * period),
        (0.8, -3.0 * period),
        (1.05, 2.0 * period),
    ] {
        let sol = involutoid::integrate_lambda(&curve, alpha, l0, 0.0, end, step)?;
        let inv = involutoid::reconstruct_involutoid(&curve, &sol)?;
        doc.add_path_lenient(LayerKind::Involutoid, &inv.points);
    }
    Ok(doc)
}

fn wavefront_figure(n: usize) -> Result<PlotDocument> {
    let spec = plane_oval();
    let curve = spec.build(n)?;
    let alpha = FRAC_PI_4;
    let mut doc = new_doc(&spec, "slanted wavefronts of an oval", Some(alpha), n);
    doc.add_curve(LayerKind::Curve, &curve_points(&curve), true)?;
    let evo: Vec<Vec3> = evolutoid::sample_evolutoid(&curve, alpha)?
        .iter()
        .map(|e| e.point)
        .collect();
    doc.add_curve(LayerKind::Evolutoid, &evo, true)?;
    let (lo, hi) = wavefront::c0_range(&curve, alpha)?;
    let grid: Vec<f64> = (0..=curve.len()).map(|i| curve.arc(i)).collect();
    let mut marks = Vec::new();
    for c0 in wavefront::sweep_values(lo - 0.3, hi + 0.3, 9) {
        let front: Vec<Vec3> = wavefront::wavefront(&curve, alpha, c0, &grid)?
            .iter()
            .map(|w| w.point)
            .collect();
        doc.add_path_lenient(LayerKind::Wavefront, &front);
        marks.extend(
            wavefront::wavefront_singular_locus(&curve, alpha, c0)?
                .into_iter()
                .map(|p| p.point),
        );
    }
    doc.add_markers(LayerKind::Singular, &marks)?;
    Ok(doc)
}

pub const AREA_RATIO_COLUMNS: [&str; 5] = ["alpha", "radius", "ratio", "closed_form", "evolutoid_radius"];

/// Hyperbolic area ratios for three angles, starting with a near-zero
/// radius row that approximates the `R → 0` limit `cos² α`.
pub fn area_ratio_table(n: usize) -> Result<Vec<Vec<Cell>>> {
    let mut radii = vec![1e-3];
    radii.extend((0..60).map(|i| 0.05 + i as f64 * (2.95 / 59.0)));
    let mut rows = Vec::new();
    for alpha in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
        for r in measures::area_ratio_sweep(SpaceForm::Hyperbolic, alpha, &radii, n)? {
            rows.push(vec![
                r.alpha.into(),
                r.radius.into(),
                r.ratio.into(),
                r.closed_form.into(),
                r.evolutoid_radius.into(),
            ]);
        }
    }
    Ok(rows)
}

/// Writes the figure set into `dir` and returns the files written.
pub fn run_figure_suite(dir: impl AsRef<Path>, n: usize) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let docs = [
        (
            "evolutoids_plane.svg",
            evolutoid_figure(&plane_oval(), "evolutoids of a plane oval", n)?,
        ),
        (
            "evolutoids_hyperbolic.svg",
            evolutoid_figure(&hyperbolic_oval(), "evolutoids of a hyperbolic oval", n)?,
        ),
        ("involutoids.svg", involutoid_figure(n)?),
        ("wavefronts.svg", wavefront_figure(n)?),
    ];
    let mut out = Vec::new();
    for (name, doc) in &docs {
        let path = dir.join(name);
        io::emit_svg(doc, &path)?;
        out.push(path);
    }
    let path = dir.join("area_ratio.csv");
    io::emit_csv(&AREA_RATIO_COLUMNS, &area_ratio_table(n.min(1024))?, &path)?;
    out.push(path);
    Ok(out)
}
