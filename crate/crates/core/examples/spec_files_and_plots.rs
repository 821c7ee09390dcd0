//! Parse a curve spec, then write a CSV table and an SVG plot of its evolutoid.

use std::f64::consts::FRAC_PI_4;

use evolutoids::evolutoid;
use evolutoids::io::{self, Cell, LayerKind, PlotDocument};

fn main() -> evolutoids::Result<()> {
    let text = r#"{"space": "hyperbolic", "kind": "circle", "radius": 1.0}"#;
    let spec = io::parse_spec_str(text)?;
    let curve = spec.build(256)?;
    let samples = evolutoid::sample_evolutoid(&curve, FRAC_PI_4)?;

    let rows: Vec<Vec<Cell>> = samples
        .iter()
        .take(4)
        .map(|e| {
            vec![
                e.s.into(),
                e.rho.into(),
                e.point[0].into(),
                e.point[1].into(),
                e.point[2].into(),
            ]
        })
        .collect();
    print!("{}", io::csv_string(&["s", "rho", "x1", "x2", "x3"], &rows)?);

    let mut doc = PlotDocument::new(spec.form, "evolutoid of a hyperbolic circle");
    doc.alpha = Some(FRAC_PI_4);
    doc.samples = curve.len();
    doc.spec_hash = Some(io::spec_hash(text.as_bytes()));
    let pts: Vec<_> = curve.frames()[..curve.len()].iter().map(|f| f.point).collect();
    doc.add_curve(LayerKind::Curve, &pts, true)?;
    doc.add_curve(
        LayerKind::Evolutoid,
        &samples.iter().map(|e| e.point).collect::<Vec<_>>(),
        true,
    )?;
    let out = std::env::temp_dir().join("evolutoid_hyperbolic_circle.svg");
    io::emit_svg(&doc, &out)?;
    println!("wrote {}", out.display());

    for bad in [
        r#"{"space": "hyperbolic", "kind": "circle", "radius": -1}"#,
        r#"{"space": "spherical", "kind": "circle", "radius": 2.0}"#,
        r#"{"space": "elliptic", "kind": "spiral"}"#,
    ] {
        println!("{bad}\n  -> {}", io::parse_spec_str(bad).unwrap_err());
    }
    Ok(())
}
