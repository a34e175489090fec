use super::kite::Kite;
use super::MapError;
use crate::Vec2;

/// Quadratic rational Bézier curve in the plane with `w[0] = w[2] = 1`.
///
/// `w[1]` may be infinite: that is the limit of the pencils at parameter 0,
/// where the curve collapses onto the polyline `points[0] -> points[1] ->
/// points[2]` and every interior parameter evaluates to `points[1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalQuadCurve {
    pub points: [Vec2; 3],
    pub weights: [f64; 3],
}

impl RationalQuadCurve {
    pub fn new(points: [Vec2; 3], weights: [f64; 3]) -> Self {
        RationalQuadCurve { points, weights }
    }

    pub fn is_degenerate(&self) -> bool {
        self.weights[1].is_infinite()
    }

    pub fn eval(&self, t: f64) -> Result<Vec2, MapError> {
        if self.is_degenerate() {
            return Ok(if t <= 0.0 {
                self.points[0]
            } else if t >= 1.0 {
                self.points[2]
            } else {
                self.points[1]
            });
        }
        let s = 1.0 - t;
        let b = [s * s, 2.0 * s * t, t * t];
        let w = [
            b[0] * self.weights[0],
            b[1] * self.weights[1],
            b[2] * self.weights[2],
        ];
        let denom = w[0] + w[1] + w[2];
        if denom.abs() < f64::MIN_POSITIVE || !denom.is_finite() {
            return Err(MapError::ZeroDenominator { t });
        }
        Ok((self.points[0] * w[0] + self.points[1] * w[1] + self.points[2] * w[2]) / denom)
    }

    /// Evaluation without the degenerate checks; for the solver's inner loop.
    #[inline]
    pub(crate) fn eval_fast(&self, t: f64) -> Vec2 {
        let s = 1.0 - t;
        let w0 = s * s * self.weights[0];
        let w1 = 2.0 * s * t * self.weights[1];
        let w2 = t * t * self.weights[2];
        (self.points[0] * w0 + self.points[1] * w1 + self.points[2] * w2) / (w0 + w1 + w2)
    }
}

fn pencil(start: Vec2, middle: Vec2, end: Vec2, param: f64) -> RationalQuadCurve {
    if param <= 0.0 {
        return RationalQuadCurve::new([start, Vec2::zeros(), end], [1.0, f64::INFINITY, 1.0]);
    }
    let scale = param * (param * param - param).exp();
    RationalQuadCurve::new([start, middle * scale, end], [1.0, 1.0 / param, 1.0])
}

/// Member `u` of the u-pencil. At `u = 1` this is the polygon side
/// `v[1] -> v[3]`; as `u -> 0` it is pulled into the origin.
pub fn u_curve(kite: &Kite, u: f64) -> RationalQuadCurve {
    let v = &kite.v;
    pencil(
        v[0] * (1.0 - u) + v[1] * u,
        v[2],
        v[4] * (1.0 - u) + v[3] * u,
        u,
    )
}

/// Mirror image of [`u_curve`] across the kite's axis.
pub fn v_curve(kite: &Kite, v: f64) -> RationalQuadCurve {
    let p = &kite.v;
    pencil(
        p[6] * (1.0 - v) + p[5] * v,
        p[4],
        p[2] * (1.0 - v) + p[3] * v,
        v,
    )
}

pub fn eval_rational(curve: &RationalQuadCurve, t: f64) -> Result<Vec2, MapError> {
    curve.eval(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Vec2, b: Vec2, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn curve_endpoints_and_midpoint() {
        let c = RationalQuadCurve::new(
            [
                Vec2::new(0.0, 0.0),
                Vec2::new(1.0, 3.0),
                Vec2::new(4.0, 1.0),
            ],
            [1.0, 1.0, 1.0],
        );
        assert!(close(c.eval(0.0).unwrap(), c.points[0], 1e-15));
        assert!(close(c.eval(1.0).unwrap(), c.points[2], 1e-15));
        let mid = (c.points[0] + c.points[1] * 2.0 + c.points[2]) / 4.0;
        assert!(close(c.eval(0.5).unwrap(), mid, 1e-15));
    }

    #[test]
    fn weighted_midpoint() {
        let c = RationalQuadCurve::new(
            [
                Vec2::new(0.0, 0.0),
                Vec2::new(1.0, 0.0),
                Vec2::new(2.0, 0.0),
            ],
            [1.0, 2.0, 1.0],
        );
        // (0*1/4 + 1*2*1/2 + 2*1/4) / (1/4 + 1 + 1/4) = 1.5 / 1.5
        assert!(close(c.eval(0.5).unwrap(), Vec2::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn zero_denominator_reported() {
        let c = RationalQuadCurve::new([Vec2::zeros(); 3], [1.0, -1.0, 1.0]);
        assert!(matches!(c.eval(0.5), Err(MapError::ZeroDenominator { .. })));
    }

    #[test]
    fn u_one_is_polygon_side() {
        for n in 3..=8 {
            let k = Kite::new(n);
            let c = u_curve(&k, 1.0);
            assert_eq!(c.weights, [1.0, 1.0, 1.0]);
            assert!(close(c.points[0], k.v[1], 1e-15));
            assert!(close(c.points[1], k.v[2], 1e-15));
            assert!(close(c.points[2], k.v[3], 1e-15));
            for i in 0..=10 {
                let t = i as f64 / 10.0;
                let line = k.v[1] * (1.0 - t) + k.v[3] * t;
                assert!(close(c.eval(t).unwrap(), line, 1e-15));
            }
            let c = v_curve(&k, 1.0);
            for i in 0..=10 {
                let t = i as f64 / 10.0;
                assert!(close(
                    c.eval(t).unwrap(),
                    k.v[5] * (1.0 - t) + k.v[3] * t,
                    1e-15
                ));
            }
        }
    }

    #[test]
    fn half_parameter_pencils() {
        let k = Kite::new(5);
        let c = u_curve(&k, 0.5);
        assert!((c.weights[1] - 2.0).abs() < 1e-15);
        assert!(close(c.points[1], k.v[2] * (0.5 * (-0.25f64).exp()), 1e-15));
        let c = v_curve(&k, 0.5);
        assert!((c.weights[1] - 2.0).abs() < 1e-15);
        assert!(close(c.points[1], k.v[4] * (0.5 * (-0.25f64).exp()), 1e-15));
    }

    #[test]
    fn limit_at_zero() {
        let k = Kite::new(5);
        for &u in &[1e-3, 1e-6, 1e-9] {
            let c = u_curve(&k, u);
            assert!(close(c.points[1] * c.weights[1], k.v[2], 2.0 * u));
        }
        let c = u_curve(&k, 0.0);
        assert!(c.is_degenerate());
        assert!(close(c.points[0], k.v[0], 1e-15));
        assert!(close(c.points[2], k.v[4], 1e-15));
        assert!(close(c.eval(0.3).unwrap(), Vec2::zeros(), 1e-300));
        let c = v_curve(&k, 0.0);
        assert!(c.is_degenerate());
        assert!(close(c.eval(1.0).unwrap(), k.v[2], 1e-15));
    }
}
