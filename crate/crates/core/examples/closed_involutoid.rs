//! The unique closed α-involutoid, and the spirals that approach it.

use std::f64::consts::{FRAC_PI_4, TAU};

use evolutoids::curve::build_circle;
use evolutoids::figures::plane_oval;
use evolutoids::involutoid::{self, Status};
use evolutoids::SpaceForm;

fn main() -> evolutoids::Result<()> {
    let circle = build_circle(SpaceForm::Euclidean, 1.0, 1024)?;
    let inv = involutoid::closed_involutoid(&circle, FRAC_PI_4)?;
    println!("unit circle, α = π/4: λ ≡ {:.12}", inv.solution.lambda[0]);
    for l0 in [0.2, 0.8, 1.05] {
        let back = involutoid::integrate_lambda(&circle, FRAC_PI_4, l0, 0.0, -3.0 * TAU, TAU / 1024.0)?;
        let fwd = involutoid::integrate_lambda(&circle, FRAC_PI_4, l0, 0.0, 3.0 * TAU, TAU / 1024.0)?;
        let fwd = match fwd.status {
            Status::Completed => format!("{:.6}", fwd.last()),
            Status::Diverged { s, .. } => format!("diverges at s = {s:.3}"),
        };
        println!("  λ0 = {l0}: three periods back {:.9}, forward {fwd}", back.last());
    }

    let oval = plane_oval().build(2048)?;
    let inv = involutoid::closed_involutoid(&oval, 0.5)?;
    let eta = inv.curve.as_ref().expect("regular closed involutoid");
    let u = inv.uniqueness.as_ref().unwrap();
    println!(
        "plane oval, α = 0.5: λ ∈ [{:.6}, {:.6}], starts agree to {:.1e}, round trip {:.1e}",
        inv.solution.lambda.iter().copied().fold(f64::INFINITY, f64::min),
        inv.solution.lambda.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        u.spread,
        involutoid::verify_involutoid(&oval, eta, 0.5)?
    );

    for (k0, alpha) in [(2.0, FRAC_PI_4), (0.5, FRAC_PI_4)] {
        println!(
            "sphere, k0 = {k0}, α = π/4: constant solutions {:.6?}",
            involutoid::spherical_constant_solutions(k0, alpha)
        );
    }
    Ok(())
}
