//! Length ratio `cos α`, the plane area bound `cos² α`, and hyperbolic area
//! ratios of circles.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

use evolutoids::figures::plane_oval;
use evolutoids::{measures, SpaceForm};

fn main() -> evolutoids::Result<()> {
    let oval = plane_oval().build(2048)?;
    for alpha in [0.1, 0.2, FRAC_PI_6] {
        let len = measures::length_ratio(&oval, alpha)?;
        let area = measures::plane_area_inequality(&oval, alpha)?;
        println!(
            "α = {alpha:.4}: length ratio {:.12} (cos α {:.12}); area ratio {:?} vs cos² α {:.6}",
            len.ratio,
            alpha.cos(),
            area.ratio,
            area.bound
        );
    }

    let radii: Vec<f64> = (1..=6).map(|i| 0.5 * i as f64).collect();
    for r in measures::area_ratio_sweep(SpaceForm::Hyperbolic, FRAC_PI_4, &radii, 1024)? {
        println!(
            "hyperbolic R = {:.1}: ratio {:.9} (closed form {:.9}), evolutoid radius {:.6}",
            r.radius, r.ratio, r.closed_form, r.evolutoid_radius
        );
    }
    Ok(())
}
