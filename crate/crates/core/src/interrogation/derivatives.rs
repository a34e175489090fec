use crate::blending::{BlendError, QuadPatch};
use crate::Vec3;

/// Default finite-difference step in parameter space.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Position and first and second partial derivatives at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivatives {
    pub s: Vec3,
    pub su: Vec3,
    pub sv: Vec3,
    pub suu: Vec3,
    pub suv: Vec3,
    pub svv: Vec3,
}

impl Derivatives {
    /// Unit normal `S_u × S_v`, or `None` where the tangents are parallel.
    pub fn normal(&self) -> Option<Vec3> {
        let n = self.su.cross(&self.sv);
        let len = n.norm();
        (len > 1e-14 * self.su.norm() * self.sv.norm() && len > 0.0).then(|| n / len)
    }
}

type Stencil = &'static [(f64, f64)];

// (offset in steps, weight) pairs. The one-sided forms are second order,
// like the central ones, and are used when a central stencil would leave
// the unit interval.
const D1_CENTRAL: Stencil = &[(-1.0, -0.5), (1.0, 0.5)];
const D1_FORWARD: Stencil = &[(0.0, -1.5), (1.0, 2.0), (2.0, -0.5)];
const D1_BACKWARD: Stencil = &[(0.0, 1.5), (-1.0, -2.0), (-2.0, 0.5)];
const D2_CENTRAL: Stencil = &[(-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)];
const D2_FORWARD: Stencil = &[(0.0, 2.0), (1.0, -5.0), (2.0, 4.0), (3.0, -1.0)];
const D2_BACKWARD: Stencil = &[(0.0, 2.0), (-1.0, -5.0), (-2.0, 4.0), (-3.0, -1.0)];

fn pick(t: f64, h: f64, central: Stencil, forward: Stencil, backward: Stencil) -> Stencil {
    if t - h >= 0.0 && t + h <= 1.0 {
        central
    } else if t + h > 1.0 {
        backward
    } else {
        forward
    }
}

/// Finite-difference derivatives of any surface over `[0,1]^2`.
pub fn derivatives_of<F, E>(f: F, u: f64, v: f64, h: f64) -> Result<Derivatives, E>
where
    F: Fn(f64, f64) -> Result<Vec3, E>,
{
    let u1 = pick(u, h, D1_CENTRAL, D1_FORWARD, D1_BACKWARD);
    let v1 = pick(v, h, D1_CENTRAL, D1_FORWARD, D1_BACKWARD);
    // one-sided second differences reach three steps out
    let u2 = pick(u, 3.0 * h, D2_CENTRAL, D2_FORWARD, D2_BACKWARD);
    let v2 = pick(v, 3.0 * h, D2_CENTRAL, D2_FORWARD, D2_BACKWARD);
    let at = |a: f64, b: f64| f((u + a * h).clamp(0.0, 1.0), (v + b * h).clamp(0.0, 1.0));

    let s = f(u, v)?;
    let along_u = |st: Stencil| -> Result<Vec3, E> {
        st.iter()
            .try_fold(Vec3::zeros(), |acc, &(o, w)| Ok(acc + at(o, 0.0)? * w))
    };
    let along_v = |st: Stencil| -> Result<Vec3, E> {
        st.iter()
            .try_fold(Vec3::zeros(), |acc, &(o, w)| Ok(acc + at(0.0, o)? * w))
    };
    let mut suv = Vec3::zeros();
    for &(a, wa) in u1 {
        for &(b, wb) in v1 {
            suv += at(a, b)? * (wa * wb);
        }
    }
    Ok(Derivatives {
        s,
        su: along_u(u1)? / h,
        sv: along_v(v1)? / h,
        suu: along_u(u2)? / (h * h),
        suv: suv / (h * h),
        svv: along_v(v2)? / (h * h),
    })
}

pub fn numeric_derivatives(
    patch: &QuadPatch,
    u: f64,
    v: f64,
    h: f64,
) -> Result<Derivatives, BlendError> {
    derivatives_of(|a, b| patch.eval(a, b), u, v, h)
}

/// Mean curvature from the fundamental forms, positive where the surface
/// bends away from its normal `S_u × S_v` (a sphere with outward normal has
/// `H = 1/ρ`). Returns NaN where the metric or the normal degenerates.
pub fn mean_curvature(d: &Derivatives) -> f64 {
    let (e_, f_, g_) = (d.su.dot(&d.su), d.su.dot(&d.sv), d.sv.dot(&d.sv));
    let det = e_ * g_ - f_ * f_;
    let Some(n) = d.normal() else {
        return f64::NAN;
    };
    if !(det > 1e-24 && det > 1e-14 * e_ * g_) {
        return f64::NAN;
    }
    let (l, m, k) = (d.suu.dot(&n), d.suv.dot(&n), d.svv.dot(&n));
    -(l * g_ - 2.0 * m * f_ + k * e_) / (2.0 * det)
}

/// Cosine between the unit normal and the unit light direction.
pub fn isophote_value(normal: Vec3, light: Vec3) -> f64 {
    normal.dot(&light)
}
