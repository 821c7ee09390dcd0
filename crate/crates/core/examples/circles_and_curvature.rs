//! Building curves from curvature, from a radius and from samples.

use std::f64::consts::PI;

use evolutoids::curve::{self, build_circle, CurvatureModel, CurveSpec};
use evolutoids::figures::hyperbolic_oval;
use evolutoids::SpaceForm;

fn main() -> evolutoids::Result<()> {
    for form in SpaceForm::ALL {
        let c = build_circle(form, 0.7, 1024)?;
        println!(
            "{:>10} circle R=0.7: k = {:.12}, length = {:.12}, closure defect = {:.1e}",
            form.name(),
            c.frame(0).curvature,
            curve::curve_length(&c),
            c.closure().max()
        );
    }

    let oval = CurveSpec::curvature(SpaceForm::Euclidean, CurvatureModel::cosine(PI, 2.0, 0.4, 2)).build(2048)?;
    let conv = curve::check_convex(&oval);
    println!(
        "plane oval: closed {}, convex {} (margin {:.3})",
        oval.is_closed(),
        conv.convex,
        conv.margin
    );
    if let Some(v) = curve::vertices(&oval).points() {
        println!("  vertices at s = {v:.6?}");
    }

    let h = hyperbolic_oval().build(2048)?;
    println!(
        "hyperbolic oval from samples: length {:.9}, curvature range {:.4?}",
        h.period(),
        h.curvature_model().range(2048)
    );
    Ok(())
}
