//! Geodesics, parallel transport and distances in the three space forms.

use evolutoids::{SpaceForm, Vec3};

fn main() -> evolutoids::Result<()> {
    for form in SpaceForm::ALL {
        let p = form.origin();
        let v = Vec3::new(0.0, 1.0, 0.0);
        let q = form.exp_map(&p, &v, 1.0)?;
        let (_, w) = form.parallel_transport(&p, &v, 1.0)?;
        let d = form.geodesic_distance(&p, &q)?;
        let e = form.normal(&q, &w);
        println!("{:>10}: exp = {:.6?}", form.name(), q.as_slice());
        println!(
            "{:>10}  transported = {:.6?}, |w| = {:.12}",
            "",
            w.as_slice(),
            form.norm(&w)
        );
        println!("{:>10}  distance back = {d:.12}, normal = {:.6?}", "", e.as_slice());
        println!("{:>10}  disk/plane image = {:.6?}", "", form.project(&q)?);
    }
    Ok(())
}
