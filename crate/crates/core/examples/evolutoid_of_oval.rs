//! α-evolutoids of a plane oval and of a hyperbolic circle.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

use evolutoids::curve::{build_circle, CurvatureModel, CurveSpec};
use evolutoids::evolutoid;
use evolutoids::SpaceForm;

fn main() -> evolutoids::Result<()> {
    let oval = CurveSpec::curvature(SpaceForm::Euclidean, CurvatureModel::cosine(PI, 2.0, 0.4, 2)).build(2048)?;
    for alpha in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2] {
        let samples = evolutoid::sample_evolutoid(&oval, alpha)?;
        let regular = samples.iter().filter(|s| s.regular).count();
        let sing = evolutoid::singular_set(&oval, alpha)?;
        println!(
            "α = {alpha:.4}: {regular}/{} regular samples, {} singular points",
            samples.len(),
            sing.points().len()
        );
        for p in sing.points() {
            println!("    s0 = {:.9} {}", p.s0, p.kind.name());
        }
    }

    let h = build_circle(SpaceForm::Hyperbolic, 1.0, 1024)?;
    for alpha in [FRAC_PI_6, FRAC_PI_3] {
        let k = evolutoid::evolutoid_curvature(&h, 0.0, alpha)?.unwrap();
        println!("hyperbolic circle R=1, α = {alpha:.4}: evolutoid curvature {k:.12}");
    }
    Ok(())
}
