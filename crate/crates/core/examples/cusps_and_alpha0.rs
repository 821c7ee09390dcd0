//! The first angle at which the evolutoid of a non-circular curve develops
//! singular points, and what those points look like.

use std::f64::consts::{FRAC_PI_2, PI};

use evolutoids::curve::{CurvatureModel, CurveSpec};
use evolutoids::evolutoid;
use evolutoids::SpaceForm;

fn main() -> evolutoids::Result<()> {
    for (form, mean) in [
        (SpaceForm::Euclidean, 2.0),
        (SpaceForm::Hyperbolic, 2.5),
        (SpaceForm::Spherical, 2.0),
    ] {
        let c = CurveSpec::curvature(form, CurvatureModel::cosine(PI, mean, 0.5, 1)).build(2048)?;
        let az = evolutoid::alpha_zero(&c)?;
        let p = evolutoid::classify_cusp(&c, az.s, az.alpha)?;
        println!(
            "{:>10}: α₀ = {:.10} ({:.4}°) at s = {:.6}, G_s = {:.1e}, {}",
            form.name(),
            az.alpha,
            az.alpha.to_degrees(),
            az.s,
            az.g_s,
            p.kind.name()
        );
        let after = evolutoid::singular_set(&c, (az.alpha + 0.05).min(FRAC_PI_2))?;
        println!("{:>10}  α₀ + 0.05: {} singular points", "", after.points().len());
    }
    Ok(())
}
