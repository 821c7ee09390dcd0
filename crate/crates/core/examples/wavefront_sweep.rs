//! Slanted wavefronts and their singular points, which trace the evolutoid.

use evolutoids::figures::plane_oval;
use evolutoids::wavefront;

fn main() -> evolutoids::Result<()> {
    let oval = plane_oval().build(2048)?;
    let alpha = 0.6;
    let (lo, hi) = wavefront::c0_range(&oval, alpha)?;
    let c0 = wavefront::sweep_values(lo, hi, 40);
    let report = wavefront::wavefront_sweep(&oval, alpha, &c0)?;
    println!(
        "{} fronts over c0 ∈ [{lo:.4}, {hi:.4}]: {} singular points, farthest from the evolutoid {:.2e}",
        c0.len(),
        report.points.len(),
        report.to_evolutoid
    );
    let mid = c0[20];
    for s in [0.3, 1.2, 2.5] {
        println!(
            "  c0 = {mid:.4}, s = {s}: orthogonality residual {:.1e}",
            wavefront::orthogonality_residual(&oval, alpha, mid, s)
        );
    }
    Ok(())
}
