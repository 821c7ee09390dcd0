//! Ambient geometry of the three simply connected space forms.
//!
//! All three surfaces live in a common embedding `R^3` with the bilinear form
//! `<x, y>_c = c x1 y1 + x2 y2 + x3 y3`:
//!
//! * `c = -1`: upper sheet of the hyperboloid `<x, x> = -1`, `x1 > 0`;
//! * `c = 0`: the plane `x1 = 0`;
//! * `c = 1`: the unit sphere.
//!
//! Geodesics from `p` with unit tangent `v` are `cos_c(t) p + sin_c(t) v` in
//! every case, which is what lets the rest of the crate treat the three
//! geometries uniformly.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A triple in the embedding space: a point on a model surface or a tangent vector.
pub type Vec3 = Vector3<f64>;

/// Tolerance for model-surface and tangency checks.
pub const EPS_MODEL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceForm {
    Hyperbolic,
    Euclidean,
    Spherical,
}

impl fmt::Display for SpaceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl SpaceForm {
    pub const ALL: [SpaceForm; 3] = [SpaceForm::Hyperbolic, SpaceForm::Euclidean, SpaceForm::Spherical];

    pub fn from_tag(c: i64) -> Result<Self> {
        match c {
            -1 => Ok(SpaceForm::Hyperbolic),
            0 => Ok(SpaceForm::Euclidean),
            1 => Ok(SpaceForm::Spherical),
            other => Err(Error::InvalidCurvatureTag(other)),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "hyperbolic" => Ok(SpaceForm::Hyperbolic),
            "euclidean" => Ok(SpaceForm::Euclidean),
            "spherical" => Ok(SpaceForm::Spherical),
            other => Err(Error::InvalidInput(format!("unknown space '{other}'"))),
        }
    }

    pub fn tag(self) -> i64 {
        match self {
            SpaceForm::Hyperbolic => -1,
            SpaceForm::Euclidean => 0,
            SpaceForm::Spherical => 1,
        }
    }

    /// Gaussian curvature as a real.
    pub fn c(self) -> f64 {
        self.tag() as f64
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceForm::Hyperbolic => "hyperbolic",
            SpaceForm::Euclidean => "euclidean",
            SpaceForm::Spherical => "spherical",
        }
    }

    pub fn inner(self, x: &Vec3, y: &Vec3) -> f64 {
        self.c() * x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
    }

    /// `sqrt(<x, x>_c)`; only meaningful for vectors of non-negative square norm.
    pub fn norm(self, x: &Vec3) -> f64 {
        self.inner(x, x).max(0.0).sqrt()
    }

    /// Satisfies `<wedge(x, y), z>_c = det(x y z)`.
    pub fn wedge(self, x: &Vec3, y: &Vec3) -> Vec3 {
        Vec3::new(
            self.c() * (x[1] * y[2] - x[2] * y[1]),
            x[2] * y[0] - x[0] * y[2],
            x[0] * y[1] - x[1] * y[0],
        )
    }

    pub fn sin(self, t: f64) -> f64 {
        match self {
            SpaceForm::Hyperbolic => t.sinh(),
            SpaceForm::Euclidean => t,
            SpaceForm::Spherical => t.sin(),
        }
    }

    pub fn cos(self, t: f64) -> f64 {
        match self {
            SpaceForm::Hyperbolic => t.cosh(),
            SpaceForm::Euclidean => 1.0,
            SpaceForm::Spherical => t.cos(),
        }
    }

    pub fn tan(self, t: f64) -> f64 {
        match self {
            SpaceForm::Hyperbolic => t.tanh(),
            SpaceForm::Euclidean => t,
            SpaceForm::Spherical => t.tan(),
        }
    }

    pub fn cot(self, t: f64) -> f64 {
        1.0 / self.tan(t)
    }

    /// Inverse of `tan_c`. On the sphere this is the principal branch, so
    /// non-negative arguments land in `[0, pi/2)`.
    pub fn arctan(self, x: f64) -> Result<f64> {
        match self {
            SpaceForm::Hyperbolic => {
                if x.abs() < 1.0 {
                    Ok(x.atanh())
                } else {
                    Err(Error::Domain {
                        what: "arctanh",
                        value: x,
                    })
                }
            }
            SpaceForm::Euclidean => Ok(x),
            SpaceForm::Spherical => Ok(x.atan()),
        }
    }

    pub fn arccot(self, x: f64) -> Result<f64> {
        self.arctan(1.0 / x)
    }

    /// Inverse of `sin_c`; on the sphere restricted to `[-1, 1]`.
    pub fn arcsin(self, x: f64) -> Result<f64> {
        match self {
            SpaceForm::Hyperbolic => Ok(x.asinh()),
            SpaceForm::Euclidean => Ok(x),
            SpaceForm::Spherical => {
                if x.abs() <= 1.0 {
                    Ok(x.asin())
                } else {
                    Err(Error::Domain {
                        what: "arcsin",
                        value: x,
                    })
                }
            }
        }
    }

    /// Canonical basepoint: `(1, 0, 0)` on the curved models, the origin on the plane.
    pub fn origin(self) -> Vec3 {
        match self {
            SpaceForm::Euclidean => Vec3::zeros(),
            _ => Vec3::new(1.0, 0.0, 0.0),
        }
    }

    /// Deviation of `p` from the model surface (zero on the surface).
    pub fn model_residual(self, p: &Vec3) -> f64 {
        match self {
            SpaceForm::Hyperbolic => {
                let r = (self.inner(p, p) + 1.0).abs();
                if p[0] > 0.0 {
                    r
                } else {
                    r.max(1.0)
                }
            }
            SpaceForm::Euclidean => p[0].abs(),
            SpaceForm::Spherical => (self.inner(p, p) - 1.0).abs(),
        }
    }

    pub fn check_point(self, p: &Vec3) -> Result<()> {
        let residual = self.model_residual(p);
        let scale = match self {
            SpaceForm::Hyperbolic => 1.0 + p.norm_squared(),
            _ => 1.0,
        };
        if residual <= EPS_MODEL * scale {
            Ok(())
        } else {
            Err(Error::NotOnModel { residual })
        }
    }

    pub fn check_tangent(self, p: &Vec3, v: &Vec3) -> Result<()> {
        let residual = match self {
            SpaceForm::Euclidean => v[0].abs(),
            _ => self.inner(p, v).abs(),
        };
        if residual <= EPS_MODEL * (1.0 + p.norm() * v.norm()) {
            Ok(())
        } else {
            Err(Error::NotTangent { residual })
        }
    }

    fn check_unit_tangent(self, p: &Vec3, v: &Vec3) -> Result<()> {
        self.check_point(p)?;
        self.check_tangent(p, v)?;
        let norm = self.norm(v);
        if (norm - 1.0).abs() <= EPS_MODEL * (1.0 + v.norm()) {
            Ok(())
        } else {
            Err(Error::NotUnit { norm })
        }
    }

    /// Pulls a slightly drifted point back onto the model surface.
    pub fn normalize_point(self, p: &Vec3) -> Vec3 {
        match self {
            SpaceForm::Hyperbolic => {
                let q = -self.inner(p, p);
                let mut out = p / q.abs().sqrt();
                if out[0] < 0.0 {
                    out = -out;
                }
                out
            }
            SpaceForm::Euclidean => Vec3::new(0.0, p[1], p[2]),
            SpaceForm::Spherical => p / p.norm(),
        }
    }

    /// Removes the normal component of `v` at `p` (and, on the plane, the x1 part).
    pub fn project_tangent(self, p: &Vec3, v: &Vec3) -> Vec3 {
        match self {
            SpaceForm::Euclidean => Vec3::new(0.0, v[1], v[2]),
            _ => v - p * (self.inner(v, p) / self.inner(p, p)),
        }
    }

    /// Positive unit normal to the unit tangent `t` at `p`.
    pub fn normal(self, p: &Vec3, t: &Vec3) -> Vec3 {
        match self {
            SpaceForm::Euclidean => Vec3::new(0.0, -t[2], t[1]),
            _ => self.wedge(p, t),
        }
    }

    /// `cos_c(t) p + sin_c(t) v` without validating the inputs.
    pub(crate) fn exp_raw(self, p: &Vec3, v: &Vec3, t: f64) -> Vec3 {
        p * self.cos(t) + v * self.sin(t)
    }

    /// Velocity of the geodesic `exp_raw(p, v, .)` at time `t`.
    pub(crate) fn transport_raw(self, p: &Vec3, v: &Vec3, t: f64) -> Vec3 {
        v * self.cos(t) - p * (self.c() * self.sin(t))
    }

    /// Point reached after walking distance `t` along the geodesic leaving `p`
    /// with unit velocity `v`.
    pub fn exp_map(self, p: &Vec3, v: &Vec3, t: f64) -> Result<Vec3> {
        self.check_unit_tangent(p, v)?;
        Ok(self.normalize_point(&self.exp_raw(p, v, t)))
    }

    /// Parallel transport of `v` along its own geodesic for time `t`.
    /// Returns `(basepoint, transported vector)`.
    pub fn parallel_transport(self, p: &Vec3, v: &Vec3, t: f64) -> Result<(Vec3, Vec3)> {
        self.check_unit_tangent(p, v)?;
        let base = self.normalize_point(&self.exp_raw(p, v, t));
        Ok((base, self.transport_raw(p, v, t)))
    }

    /// Intrinsic distance between two model points.
    pub fn geodesic_distance(self, p: &Vec3, q: &Vec3) -> Result<f64> {
        match self {
            SpaceForm::Euclidean => Ok((p - q).norm()),
            SpaceForm::Hyperbolic => {
                // |p - q|_{-1} = 2 sinh(d / 2); well conditioned at small d.
                let chord = self.norm(&(p - q));
                Ok(2.0 * (0.5 * chord).asinh())
            }
            SpaceForm::Spherical => {
                if (p + q).norm() < EPS_MODEL {
                    return Err(Error::Antipodal);
                }
                Ok(p.cross(q).norm().atan2(p.dot(q).clamp(-1.0, 1.0)))
            }
        }
    }

    /// Same as [`geodesic_distance`](Self::geodesic_distance) but returns `pi`
    /// for antipodal spherical points instead of failing.
    pub(crate) fn distance_lenient(self, p: &Vec3, q: &Vec3) -> f64 {
        match self {
            SpaceForm::Spherical => p.cross(q).norm().atan2(p.dot(q)),
            _ => self.geodesic_distance(p, q).unwrap_or(f64::INFINITY),
        }
    }

    /// Projection of a model point onto a drawing plane: identity on `(x2, x3)`
    /// for the plane, the Poincare disk for the hyperboloid and stereographic
    /// projection from `(-1, 0, 0)` for the sphere.
    pub fn project(self, p: &Vec3) -> Result<[f64; 2]> {
        match self {
            SpaceForm::Euclidean => Ok([p[1], p[2]]),
            SpaceForm::Hyperbolic => project_poincare(p),
            SpaceForm::Spherical => project_stereographic(p),
        }
    }

    /// Largest admissible geodesic circle radius (a hemisphere bound on the sphere).
    pub fn max_circle_radius(self) -> f64 {
        match self {
            SpaceForm::Spherical => FRAC_PI_2,
            _ => f64::INFINITY,
        }
    }

    /// Geodesic curvature lower bound for convexity (`k > 1` on the hyperbolic plane).
    pub fn convexity_bound(self) -> f64 {
        match self {
            SpaceForm::Hyperbolic => 1.0,
            _ => 0.0,
        }
    }
}

/// Poincare disk image `(x2, x3) / (1 + x1)` of a hyperboloid point.
///
/// A point at hyperbolic distance `d` from `(1, 0, 0)` lands at Euclidean
/// radius `tanh(d / 2)`.
pub fn project_poincare(p: &Vec3) -> Result<[f64; 2]> {
    SpaceForm::Hyperbolic.check_point(p)?;
    let s = 1.0 + p[0];
    Ok([p[1] / s, p[2] / s])
}

/// Stereographic image of a sphere point from the pole `(-1, 0, 0)` onto the
/// plane `x1 = 0`. The hemisphere centre `(1, 0, 0)` maps to the origin, the
/// equator `x1 = 0` to the unit circle, and a point at spherical distance `d`
/// from `(1, 0, 0)` to radius `tan(d / 2)`.
pub fn project_stereographic(p: &Vec3) -> Result<[f64; 2]> {
    SpaceForm::Spherical.check_point(p)?;
    let s = 1.0 + p[0];
    if s < EPS_MODEL {
        return Err(Error::Domain {
            what: "stereographic projection pole",
            value: p[0],
        });
    }
    Ok([p[1] / s, p[2] / s])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    const H: SpaceForm = SpaceForm::Hyperbolic;
    const E: SpaceForm = SpaceForm::Euclidean;
    const S: SpaceForm = SpaceForm::Spherical;

    fn v(a: f64, b: f64, c: f64) -> Vec3 {
        Vec3::new(a, b, c)
    }

    #[test]
    fn rejects_unknown_tags() {
        assert!(SpaceForm::from_tag(2).is_err());
        assert!(SpaceForm::from_tag(-2).is_err());
        for form in SpaceForm::ALL {
            assert_eq!(SpaceForm::from_tag(form.tag()).unwrap(), form);
        }
    }

    #[test]
    fn inner_products() {
        assert_eq!(S.inner(&v(1., 0., 0.), &v(1., 0., 0.)), 1.0);
        assert_eq!(H.inner(&v(1., 0., 0.), &v(1., 0., 0.)), -1.0);
        let p = v(1f64.cosh(), 1f64.sinh(), 0.0);
        assert_abs_diff_eq!(H.inner(&p, &p), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(S.wedge(&v(1., 0., 0.), &v(0., 1., 0.)), v(0., 0., 1.));
        assert_eq!(H.wedge(&v(1., 0., 0.), &v(0., 1., 0.)), v(0., 0., 1.));
        assert_eq!(H.wedge(&v(0., 1., 0.), &v(0., 0., 1.)), v(-1., 0., 0.));
    }

    #[test]
    fn wedge_is_determinant() {
        let x = v(0.3, -1.2, 2.0);
        let y = v(1.1, 0.4, -0.7);
        let z = v(-0.5, 0.9, 0.25);
        let det = nalgebra::Matrix3::from_columns(&[x, y, z]).determinant();
        for form in [SpaceForm::Hyperbolic, SpaceForm::Spherical] {
            assert_abs_diff_eq!(form.inner(&form.wedge(&x, &y), &z), det, epsilon = 1e-14);
        }
        // the flat wedge only keeps the part of the determinant along x1 = 0
        let flat = SpaceForm::Euclidean.inner(&SpaceForm::Euclidean.wedge(&x, &y), &z);
        assert_abs_diff_eq!(flat, det - z.x * (x.y * y.z - x.z * y.y), epsilon = 1e-14);
    }

    #[test]
    fn unified_trig() {
        assert_eq!(E.sin(2.5), 2.5);
        assert_eq!(H.cos(0.0), 1.0);
        assert_abs_diff_eq!(S.arctan(1.0).unwrap(), FRAC_PI_4, epsilon = 1e-15);
        assert!(H.arctan(1.0).is_err());
        assert!(H.arctan(-1.5).is_err());
        assert_abs_diff_eq!(H.arctan(0.5).unwrap(), 0.5f64.atanh(), epsilon = 1e-15);
        assert!(S.arctan(1e6).unwrap() < FRAC_PI_2);
    }

    #[test]
    fn exp_map_examples() {
        let q = S.exp_map(&v(1., 0., 0.), &v(0., 1., 0.), FRAC_PI_2).unwrap();
        assert_abs_diff_eq!((q - v(0., 1., 0.)).norm(), 0.0, epsilon = 1e-15);

        let q = H.exp_map(&v(1., 0., 0.), &v(0., 1., 0.), 1.0).unwrap();
        assert_abs_diff_eq!((q - v(1f64.cosh(), 1f64.sinh(), 0.)).norm(), 0.0, epsilon = 1e-15);
        assert!(H.model_residual(&q) < 1e-15);

        let q = E.exp_map(&v(0., 1., 0.), &v(0., 0., 1.), 3.0).unwrap();
        assert_eq!(q, v(0., 1., 3.));
    }

    #[test]
    fn exp_map_rejects_bad_vectors() {
        let p = v(1., 0., 0.);
        assert!(matches!(S.exp_map(&p, &v(0., 2., 0.), 1.0), Err(Error::NotUnit { .. })));
        assert!(matches!(
            S.exp_map(&p, &v(0.6, 0.8, 0.), 1.0),
            Err(Error::NotTangent { .. })
        ));
        assert!(matches!(
            E.exp_map(&v(0., 0., 0.), &v(1., 0., 0.), 1.0),
            Err(Error::NotTangent { .. })
        ));
        assert!(matches!(
            H.exp_map(&v(2., 0., 0.), &v(0., 1., 0.), 1.0),
            Err(Error::NotOnModel { .. })
        ));
    }

    #[test]
    fn transport_examples() {
        let (b, w) = E.parallel_transport(&v(0., 1., 2.), &v(0., 0.6, 0.8), 4.0).unwrap();
        assert_eq!(w, v(0., 0.6, 0.8));
        assert_abs_diff_eq!((b - v(0., 3.4, 5.2)).norm(), 0.0, epsilon = 1e-14);

        let (b, w) = S.parallel_transport(&v(1., 0., 0.), &v(0., 1., 0.), FRAC_PI_2).unwrap();
        assert_abs_diff_eq!((b - v(0., 1., 0.)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((w - v(-1., 0., 0.)).norm(), 0.0, epsilon = 1e-15);

        let (b, w) = H.parallel_transport(&v(1., 0., 0.), &v(0., 1., 0.), 1.0).unwrap();
        assert_abs_diff_eq!((w - v(1f64.sinh(), 1f64.cosh(), 0.)).norm(), 0.0, epsilon = 1e-15);
        assert!(H.inner(&b, &w).abs() < 1e-14);
    }

    #[test]
    fn distances() {
        assert_eq!(E.geodesic_distance(&v(0., 0., 0.), &v(0., 3., 4.)).unwrap(), 5.0);
        let q = v(2f64.cosh(), 2f64.sinh(), 0.0);
        assert_abs_diff_eq!(H.geodesic_distance(&v(1., 0., 0.), &q).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            S.geodesic_distance(&v(1., 0., 0.), &v(0., 1., 0.)).unwrap(),
            FRAC_PI_2,
            epsilon = 1e-15
        );
        assert!(matches!(
            S.geodesic_distance(&v(1., 0., 0.), &v(-1., 0., 0.)),
            Err(Error::Antipodal)
        ));
        // tiny separations stay accurate
        let p = H.exp_map(&v(1., 0., 0.), &v(0., 0., 1.), 1e-9).unwrap();
        assert_abs_diff_eq!(H.geodesic_distance(&v(1., 0., 0.), &p).unwrap(), 1e-9, epsilon = 1e-20);
    }

    #[test]
    fn poincare_projection() {
        assert_eq!(project_poincare(&v(1., 0., 0.)).unwrap(), [0.0, 0.0]);
        let z = project_poincare(&v(1f64.cosh(), 1f64.sinh(), 0.)).unwrap();
        assert_abs_diff_eq!(z[0], 0.5f64.tanh(), epsilon = 1e-15);
        assert_eq!(z[1], 0.0);
        for &d in &[0.1, 1.0, 3.0, 8.0] {
            let p = H.exp_map(&v(1., 0., 0.), &v(0., 0.6, 0.8), d).unwrap();
            let z = project_poincare(&p).unwrap();
            let r = z[0].hypot(z[1]);
            assert!(r < 1.0);
            assert_abs_diff_eq!(2.0 * r.atanh(), d, epsilon = 1e-9);
        }
    }

    #[test]
    fn stereographic_projection() {
        let z = project_stereographic(&v(0., 0.6, 0.8)).unwrap();
        assert_abs_diff_eq!(z[0].hypot(z[1]), 1.0, epsilon = 1e-15);
        assert_eq!(project_stereographic(&v(1., 0., 0.)).unwrap(), [0.0, 0.0]);
        assert!(project_stereographic(&v(-1., 0., 0.)).is_err());
        for &d in &[0.2, 1.0, 2.5] {
            let p = S.exp_map(&v(1., 0., 0.), &v(0., 1., 0.), d).unwrap();
            let z = project_stereographic(&p).unwrap();
            assert_abs_diff_eq!(z[0].hypot(z[1]), (d / 2.0).tan(), epsilon = 1e-12);
        }
    }
}
