//! Curve spec files, CSV tables and SVG plots.
//!
//! A curve spec is a JSON document:
//!
//! ```json
//! {"spec_version": 1, "space": "hyperbolic", "kind": "circle", "radius": 1.0}
//! {"space": "euclidean", "kind": "curvature", "period": 3.14159, "mean": 2.0, "cos": [0.0, 0.4]}
//! {"space": "euclidean", "kind": "curvature", "period": 6.28318, "table": [1.0, 1.1, 1.2]}
//! {"space": "spherical", "kind": "samples", "points": [[1.0, 0.0, 0.0]]}
//! ```
//!
//! `spec_version` defaults to 1. Curvature series are `mean + Σ cos[n-1]
//! cos(2πns/period) + sin[n-1] sin(2πns/period)`; tables are equally spaced
//! samples over one period, interpolated by a periodic cubic spline.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::curve::{CurvatureModel, CurveKind, CurveSpec};
use crate::error::{Error, Result};
use crate::series::TrigSeries;
use crate::space::{SpaceForm, Vec3};

pub const SPEC_VERSION: u64 = 1;

/// A parsed spec together with the SHA-256 of its source bytes.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecFile {
    pub spec: CurveSpec,
    pub hash: String,
}

pub fn spec_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn parse_spec(path: impl AsRef<Path>) -> Result<CurveSpec> {
    Ok(read_spec(path)?.spec)
}

pub fn read_spec(path: impl AsRef<Path>) -> Result<SpecFile> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Error::Spec(vec![format!("not UTF-8: {e}")]))?;
    Ok(SpecFile {
        spec: parse_spec_str(text)?,
        hash: spec_hash(&bytes),
    })
}

fn number(doc: &Value, key: &str, errors: &mut Vec<String>) -> Option<f64> {
    match doc.get(key) {
        None => {
            errors.push(format!("missing field \"{key}\""));
            None
        }
        Some(v) => match v.as_f64() {
            Some(x) if x.is_finite() => Some(x),
            _ => {
                errors.push(format!("\"{key}\" must be a finite number"));
                None
            }
        },
    }
}

fn numbers(v: &Value, key: &str, errors: &mut Vec<String>) -> Option<Vec<f64>> {
    let arr = match v.as_array() {
        Some(a) => a,
        None => {
            errors.push(format!("\"{key}\" must be an array of numbers"));
            return None;
        }
    };
    let out: Vec<f64> = arr
        .iter()
        .filter_map(|x| x.as_f64().filter(|x| x.is_finite()))
        .collect();
    if out.len() != arr.len() {
        errors.push(format!("\"{key}\" must contain only finite numbers"));
        return None;
    }
    Some(out)
}

/// Parses and validates a spec document, reporting every violated
/// constraint at once.
pub fn parse_spec_str(text: &str) -> Result<CurveSpec> {
    let doc: Value = serde_json::from_str(text)?;
    if !doc.is_object() {
        return Err(Error::Spec(vec!["document must be a JSON object".into()]));
    }
    let mut errors = Vec::new();
    match doc.get("spec_version") {
        None => {}
        Some(v) if v.as_u64() == Some(SPEC_VERSION) => {}
        Some(v) => errors.push(format!("unsupported spec_version {v}")),
    }
    let form = match doc.get("space").and_then(Value::as_str) {
        Some(name) => match SpaceForm::from_name(name) {
            Ok(f) => Some(f),
            Err(_) => {
                errors.push(format!("unknown space \"{name}\""));
                None
            }
        },
        None => {
            errors.push("missing field \"space\"".into());
            None
        }
    };
    let kind = match doc.get("kind").and_then(Value::as_str) {
        Some("circle") => parse_circle(&doc, form, &mut errors),
        Some("curvature") => parse_curvature(&doc, form, &mut errors),
        Some("samples") => parse_samples(&doc, form, &mut errors),
        Some(other) => {
            errors.push(format!("unknown kind \"{other}\""));
            None
        }
        None => {
            errors.push("missing field \"kind\"".into());
            None
        }
    };
    match (form, kind) {
        (Some(form), Some(kind)) if errors.is_empty() => Ok(CurveSpec { form, kind }),
        _ => Err(Error::Spec(errors)),
    }
}

fn parse_circle(doc: &Value, form: Option<SpaceForm>, errors: &mut Vec<String>) -> Option<CurveKind> {
    let radius = number(doc, "radius", errors)?;
    if radius <= 0.0 {
        errors.push("radius must be positive".into());
        return None;
    }
    if form == Some(SpaceForm::Spherical) && radius >= SpaceForm::Spherical.max_circle_radius() {
        errors.push("radius must be < π/2".into());
        return None;
    }
    Some(CurveKind::Circle { radius })
}

fn parse_curvature(doc: &Value, form: Option<SpaceForm>, errors: &mut Vec<String>) -> Option<CurveKind> {
    let period = number(doc, "period", errors);
    if period.is_some_and(|p| p <= 0.0) {
        errors.push("period must be positive".into());
    }
    let model = match (doc.get("table"), doc.get("mean")) {
        (Some(t), None) => {
            let values = numbers(t, "table", errors)?;
            if values.len() < 8 {
                errors.push(format!("table needs at least 8 values, got {}", values.len()));
                return None;
            }
            CurvatureModel::table(values, period?)
        }
        (None, Some(_)) => {
            let mean = number(doc, "mean", errors)?;
            let cos = match doc.get("cos") {
                Some(v) => numbers(v, "cos", errors)?,
                None => Vec::new(),
            };
            let sin = match doc.get("sin") {
                Some(v) => numbers(v, "sin", errors)?,
                None => Vec::new(),
            };
            CurvatureModel::Series(TrigSeries::new(period?, mean, cos, sin))
        }
        (Some(_), Some(_)) => {
            errors.push("give either \"table\" or \"mean\", not both".into());
            return None;
        }
        (None, None) => {
            errors.push("curvature spec needs \"table\" or \"mean\"".into());
            return None;
        }
    };
    if period.is_some_and(|p| p <= 0.0) {
        return None;
    }
    if let Some(form) = form {
        let (lo, _) = model.range(4096);
        if lo <= form.convexity_bound() {
            errors.push(format!(
                "curvature minimum {lo} violates the convexity bound k > {}",
                form.convexity_bound()
            ));
        }
    }
    Some(CurveKind::Curvature(model))
}

fn parse_samples(doc: &Value, form: Option<SpaceForm>, errors: &mut Vec<String>) -> Option<CurveKind> {
    let arr = match doc.get("points").and_then(Value::as_array) {
        Some(a) => a,
        None => {
            errors.push("\"points\" must be an array of [x1, x2, x3] triples".into());
            return None;
        }
    };
    let mut points = Vec::with_capacity(arr.len());
    for (i, p) in arr.iter().enumerate() {
        match p
            .as_array()
            .map(|a| a.iter().filter_map(Value::as_f64).collect::<Vec<_>>())
        {
            Some(v) if v.len() == 3 => points.push(Vec3::new(v[0], v[1], v[2])),
            _ => {
                errors.push(format!("point {i} is not a triple of numbers"));
                return None;
            }
        }
    }
    if points.len() < 8 {
        errors.push(format!("need at least 8 points, got {}", points.len()));
    }
    if let Some(form) = form {
        for (i, p) in points.iter().enumerate() {
            if form.check_point(p).is_err() {
                errors.push(format!("point {i} is off the {} model", form.name()));
            }
        }
    }
    Some(CurveKind::Samples(points))
}

/// The JSON document that [`parse_spec_str`] reads back to `spec`.
pub fn spec_to_json(spec: &CurveSpec) -> Value {
    let mut doc = json!({
        "spec_version": SPEC_VERSION,
        "space": spec.form.name(),
    });
    let obj = doc.as_object_mut().expect("object literal");
    match &spec.kind {
        CurveKind::Circle { radius } => {
            obj.insert("kind".into(), json!("circle"));
            obj.insert("radius".into(), json!(radius));
        }
        CurveKind::Curvature(CurvatureModel::Series(s)) => {
            obj.insert("kind".into(), json!("curvature"));
            obj.insert("period".into(), json!(s.period));
            obj.insert("mean".into(), json!(s.mean));
            obj.insert("cos".into(), json!(s.cos));
            obj.insert("sin".into(), json!(s.sin));
        }
        CurveKind::Curvature(CurvatureModel::Table(t)) => {
            obj.insert("kind".into(), json!("curvature"));
            obj.insert("period".into(), json!(t.period()));
            obj.insert("table".into(), json!(t.values()));
        }
        CurveKind::Samples(points) => {
            obj.insert("kind".into(), json!("samples"));
            let pts: Vec<[f64; 3]> = points.iter().map(|p| [p.x, p.y, p.z]).collect();
            obj.insert("points".into(), json!(pts));
        }
    }
    doc
}

/// One CSV field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Flag(bool),
    Missing,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Flag(b)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::Num)
    }
}

/// Seventeen significant digits, so values round-trip exactly.
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}").to_lowercase()
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Num(x) => format_number(*x),
        Cell::Flag(b) => (if *b { "1" } else { "0" }).into(),
        Cell::Missing => String::new(),
    }
}

pub fn csv_string(columns: &[&str], rows: &[Vec<Cell>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    w.write_record(columns).map_err(io)?;
    for (i, row) in rows.iter().enumerate() {
        if row.len() != columns.len() {
            return Err(Error::InvalidInput(format!(
                "row {i} has {} cells, schema has {}",
                row.len(),
                columns.len()
            )));
        }
        w.write_record(row.iter().map(cell_text)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn emit_csv(columns: &[&str], rows: &[Vec<Cell>], path: impl AsRef<Path>) -> Result<()> {
    write_file(path, csv_string(columns, rows)?)
}

fn write_file(path: impl AsRef<Path>, contents: String) -> Result<()> {
    let path = path.as_ref();
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Plot layers, drawn in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LayerKind {
    Boundary,
    Curve,
    Evolutoid,
    Involutoid,
    Wavefront,
    Singular,
}

impl LayerKind {
    pub fn name(self) -> &'static str {
        match self {
            LayerKind::Boundary => "boundary",
            LayerKind::Curve => "curve",
            LayerKind::Evolutoid => "evolutoid",
            LayerKind::Involutoid => "involutoid",
            LayerKind::Wavefront => "wavefront",
            LayerKind::Singular => "singular",
        }
    }

    fn stroke(self) -> &'static str {
        match self {
            LayerKind::Boundary => "#888888",
            LayerKind::Curve => "#000000",
            LayerKind::Evolutoid => "#c0392b",
            LayerKind::Involutoid => "#2471a3",
            LayerKind::Wavefront => "#239b56",
            LayerKind::Singular => "#7d3c98",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub kind: LayerKind,
    pub polylines: Vec<Polyline>,
    pub markers: Vec<[f64; 2]>,
}

/// Layered drawing in projected coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotDocument {
    pub form: SpaceForm,
    pub alpha: Option<f64>,
    pub samples: usize,
    pub spec_hash: Option<String>,
    pub title: String,
    layers: Vec<Layer>,
}

/// Human-readable description of the projection used for `form`.
pub fn projection_convention(form: SpaceForm) -> &'static str {
    match form {
        SpaceForm::Euclidean => "plane (x2, x3)",
        SpaceForm::Hyperbolic => "poincare disk (x2, x3)/(1 + x1); distance d from (1,0,0) maps to radius tanh(d/2)",
        SpaceForm::Spherical => {
            "stereographic from (-1,0,0) onto x1 = 0; distance d from (1,0,0) maps to radius tan(d/2)"
        }
    }
}

impl PlotDocument {
    pub fn new(form: SpaceForm, title: impl Into<String>) -> Self {
        let mut doc = PlotDocument {
            form,
            alpha: None,
            samples: 0,
            spec_hash: None,
            title: title.into(),
            layers: Vec::new(),
        };
        if form == SpaceForm::Hyperbolic {
            let n = 720;
            let points = (0..n)
                .map(|i| {
                    let t = std::f64::consts::TAU * i as f64 / n as f64;
                    [t.cos(), t.sin()]
                })
                .collect();
            doc.layer(LayerKind::Boundary)
                .polylines
                .push(Polyline { points, closed: true });
        }
        doc
    }

    fn layer(&mut self, kind: LayerKind) -> &mut Layer {
        let i = match self.layers.iter().position(|l| l.kind == kind) {
            Some(i) => i,
            None => {
                self.layers.push(Layer {
                    kind,
                    polylines: Vec::new(),
                    markers: Vec::new(),
                });
                self.layers.sort_by_key(|l| l.kind);
                self.layers.iter().position(|l| l.kind == kind).expect("just inserted")
            }
        };
        &mut self.layers[i]
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Projects model points and adds them as one polyline.
    pub fn add_curve(&mut self, kind: LayerKind, points: &[Vec3], closed: bool) -> Result<()> {
        let form = self.form;
        let projected = points.iter().map(|p| form.project(p)).collect::<Result<Vec<_>>>()?;
        self.layer(kind).polylines.push(Polyline {
            points: projected,
            closed,
        });
        Ok(())
    }

    /// Adds an open polyline, splitting it wherever a point cannot be projected.
    pub fn add_path_lenient(&mut self, kind: LayerKind, points: &[Vec3]) {
        let form = self.form;
        let mut run = Vec::new();
        let mut runs = Vec::new();
        for p in points {
            match form.project(p) {
                Ok(q) if q[0].is_finite() && q[1].is_finite() && q[0].hypot(q[1]) < 1e3 => run.push(q),
                _ => {
                    if run.len() > 1 {
                        runs.push(std::mem::take(&mut run));
                    }
                    run.clear();
                }
            }
        }
        if run.len() > 1 {
            runs.push(run);
        }
        let layer = self.layer(kind);
        for points in runs {
            layer.polylines.push(Polyline { points, closed: false });
        }
    }

    pub fn add_markers(&mut self, kind: LayerKind, points: &[Vec3]) -> Result<()> {
        let form = self.form;
        let projected = points.iter().map(|p| form.project(p)).collect::<Result<Vec<_>>>()?;
        self.layer(kind).markers.extend(projected);
        Ok(())
    }

    fn bounds(&self) -> [f64; 4] {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for l in &self.layers {
            for p in l.polylines.iter().flat_map(|p| &p.points).chain(&l.markers) {
                b[0] = b[0].min(p[0]);
                b[1] = b[1].min(p[1]);
                b[2] = b[2].max(p[0]);
                b[3] = b[3].max(p[1]);
            }
        }
        if !b[0].is_finite() {
            return [-1.0, -1.0, 1.0, 1.0];
        }
        b
    }

    /// Deterministic SVG text: fixed layer order and fixed number format.
    pub fn to_svg(&self) -> String {
        const SIZE: f64 = 800.0;
        let [x0, y0, x1, y1] = self.bounds();
        let span = (x1 - x0).max(y1 - y0).max(1e-12) * 1.1;
        let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
        let scale = SIZE / span;
        let map = |p: &[f64; 2]| ((p[0] - cx) * scale + 0.5 * SIZE, (cy - p[1]) * scale + 0.5 * SIZE);

        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(out, "<metadata>");
        let _ = writeln!(out, "  space: {}", self.form.name());
        if let Some(a) = self.alpha {
            let _ = writeln!(out, "  alpha: {}", format_number(a));
        }
        let _ = writeln!(out, "  samples: {}", self.samples);
        let _ = writeln!(out, "  spec_sha256: {}", self.spec_hash.as_deref().unwrap_or("none"));
        let _ = writeln!(out, "  projection: {}", projection_convention(self.form));
        let _ = writeln!(
            out,
            "  scale: {} px per unit, centre ({}, {})",
            format_number(scale),
            format_number(cx),
            format_number(cy)
        );
        let _ = writeln!(out, "</metadata>");
        let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
        for l in &self.layers {
            let _ = writeln!(
                out,
                r#"<g id="{}" fill="none" stroke="{}" stroke-width="1.2">"#,
                l.kind.name(),
                l.kind.stroke()
            );
            for p in &l.polylines {
                let pts: Vec<String> = p
                    .points
                    .iter()
                    .map(|q| {
                        let (x, y) = map(q);
                        format!("{x:.3},{y:.3}")
                    })
                    .collect();
                let tag = if p.closed { "polygon" } else { "polyline" };
                let _ = writeln!(out, r#"  <{tag} points="{}"/>"#, pts.join(" "));
            }
            for m in &l.markers {
                let (x, y) = map(m);
                let _ = writeln!(
                    out,
                    r#"  <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="{}"/>"#,
                    l.kind.stroke()
                );
            }
            let _ = writeln!(out, "</g>");
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn emit_svg(doc: &PlotDocument, path: impl AsRef<Path>) -> Result<()> {
    write_file(path, doc.to_svg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_circle;
    use crate::evolutoid::sample_evolutoid;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn parses_documented_examples() {
        let s = parse_spec_str(r#"{"space":"euclidean","kind":"circle","radius":1}"#).unwrap();
        assert_eq!(s, CurveSpec::circle(SpaceForm::Euclidean, 1.0));
        let e = parse_spec_str(r#"{"space":"hyperbolic","kind":"circle","radius":-1}"#).unwrap_err();
        assert_eq!(e.to_string(), "invalid curve spec: radius must be positive");
        let e = parse_spec_str(r#"{"space":"spherical","kind":"circle","radius":2.0}"#).unwrap_err();
        assert_eq!(e.to_string(), "invalid curve spec: radius must be < π/2");
    }

    #[test]
    fn reports_every_violation() {
        let e = parse_spec_str(r#"{"spec_version":2,"space":"flat","kind":"circle","radius":0}"#).unwrap_err();
        match e {
            Error::Spec(v) => assert_eq!(v.len(), 3, "{v:?}"),
            other => panic!("{other}"),
        }
        let e = parse_spec_str(r#"{"space":"hyperbolic","kind":"curvature","period":3,"mean":1.1,"cos":[0.3]}"#)
            .unwrap_err();
        assert!(e.to_string().contains("convexity"));
    }

    #[test]
    fn spec_json_round_trip() {
        let specs = [
            CurveSpec::circle(SpaceForm::Spherical, 0.7),
            CurveSpec::curvature(SpaceForm::Euclidean, CurvatureModel::cosine(3.0, 2.0, 0.4, 2)),
            CurveSpec::curvature(SpaceForm::Euclidean, CurvatureModel::table(vec![1.0; 16], 6.0)),
        ];
        for s in specs {
            let text = spec_to_json(&s).to_string();
            assert_eq!(parse_spec_str(&text).unwrap(), s);
        }
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(csv_string(&["s", "rho"], &[]).unwrap(), "s,rho\n");
        let t = csv_string(&["a", "b", "c"], &[vec![0.1.into(), true.into(), None.into()]]).unwrap();
        assert_eq!(t, "a,b,c\n1.0000000000000001e-1,1,\n");
        assert_eq!(format_number(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn unit_circle_evolutoid_svg() {
        let c = build_circle(SpaceForm::Euclidean, 1.0, 256).unwrap();
        let mut doc = PlotDocument::new(SpaceForm::Euclidean, "evolutoid");
        let pts: Vec<Vec3> = c.frames()[..256].iter().map(|f| f.point).collect();
        doc.add_curve(LayerKind::Curve, &pts, true).unwrap();
        let evo: Vec<Vec3> = sample_evolutoid(&c, FRAC_PI_4)
            .unwrap()
            .iter()
            .map(|e| e.point)
            .collect();
        doc.add_curve(LayerKind::Evolutoid, &evo, true).unwrap();
        let center = c.circle().unwrap().center;
        let inner = &doc.layers()[1].polylines[0];
        for q in &inner.points {
            assert!(((q[0] - center.y).hypot(q[1] - center.z) - FRAC_PI_4.cos()).abs() < 1e-9);
        }
        let svg = doc.to_svg();
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg, doc.to_svg());
    }

    #[test]
    fn hyperbolic_plot_stays_in_the_disk() {
        let c = build_circle(SpaceForm::Hyperbolic, 3.0, 256).unwrap();
        let mut doc = PlotDocument::new(SpaceForm::Hyperbolic, "disk");
        let pts: Vec<Vec3> = c.frames().iter().map(|f| f.point).collect();
        doc.add_curve(LayerKind::Curve, &pts, true).unwrap();
        assert_eq!(doc.layers()[0].kind, LayerKind::Boundary);
        for p in &doc.layers()[1].polylines[0].points {
            assert!(p[0].hypot(p[1]) < 1.0);
        }
    }
}
