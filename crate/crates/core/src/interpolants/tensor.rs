use super::{e_hats, InterpolantError};
use crate::bernstein::quadratic;
use crate::mesh::ControlNet;
use crate::{Vec2, Vec3};

/// Biquadratic tensor-product interpolant of a valence-4 net.
///
/// Over `[0,1]^2` the corners carry `c[2]` at (0,0), `c[3]` at (1,0),
/// `c[0]` at (1,1) and `c[1]` at (0,1); `m` sits at the center.
#[derive(Debug, Clone, PartialEq)]
pub struct TpPatch {
    /// `points[i][j]` multiplies `B_i(u) B_j(v)`.
    pub points: [[Vec3; 3]; 3],
}

impl TpPatch {
    pub fn new(net: &ControlNet) -> Result<Self, InterpolantError> {
        if net.valence() != 4 {
            return Err(InterpolantError::WrongValence {
                expected: 4,
                got: net.valence(),
            });
        }
        let c = &net.c;
        let h = e_hats(net);
        let ring: Vec3 = (0..4).map(|i| c[i] + h[i] * 2.0).sum();
        let center = (net.m * 16.0 - ring) * 0.25;
        Ok(TpPatch {
            points: [[c[2], h[2], c[1]], [h[3], center, h[1]], [c[3], h[0], c[0]]],
        })
    }

    pub fn eval(&self, u: f64, v: f64) -> Result<Vec3, InterpolantError> {
        const EPS: f64 = 1e-12;
        if !(-EPS..=1.0 + EPS).contains(&u) || !(-EPS..=1.0 + EPS).contains(&v) {
            return Err(InterpolantError::OutsideSquare { u, v });
        }
        Ok(self.eval_unchecked(u, v))
    }

    pub(crate) fn eval_unchecked(&self, u: f64, v: f64) -> Vec3 {
        let bu = quadratic(u);
        let bv = quadratic(v);
        let mut acc = Vec3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                acc += self.points[i][j] * (bu[i] * bv[j]);
            }
        }
        acc
    }

    /// Affine map from the square polygon `RegularPolygon::new(4)` onto the
    /// tensor-product domain, matching vertex `k` with `c[k]`.
    pub fn square_from_polygon(p: Vec2) -> (f64, f64) {
        (0.5 + 0.5 * (p.x - p.y), 0.5 + 0.5 * (p.x + p.y))
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_nets::*;
    use super::super::{quadratic_point, RegularPolygon};
    use super::*;
    use crate::bernstein::bernstein;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_square_net() -> ControlNet {
        let p = |x: f64, y: f64| Vec3::new(x, y, 0.0);
        ControlNet::new(
            p(0.0, 0.0),
            vec![p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0), p(0.0, -1.0)],
            vec![p(1.0, 1.0), p(-1.0, 1.0), p(-1.0, -1.0), p(1.0, -1.0)],
        )
    }

    /// Brute-force Bernstein summation with the generic polynomial.
    fn brute(patch: &TpPatch, u: f64, v: f64) -> Vec3 {
        let mut acc = Vec3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                acc += patch.points[i][j] * (bernstein(2, i, u) * bernstein(2, j, v));
            }
        }
        acc
    }

    #[test]
    fn corner_assignment() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let net = random_net(&mut rng, 4);
        let t = TpPatch::new(&net).unwrap();
        assert_eq!(t.points[0][0], net.c[2]);
        assert_eq!(t.points[2][0], net.c[3]);
        assert_eq!(t.points[0][2], net.c[1]);
        assert_eq!(t.points[2][2], net.c[0]);
    }

    #[test]
    fn evaluation_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let net = random_net(&mut rng, 4);
            let t = TpPatch::new(&net).unwrap();
            assert!((t.eval(0.0, 0.0).unwrap() - net.c[2]).norm() < 1e-14);
            assert!((t.eval(1.0, 1.0).unwrap() - net.c[0]).norm() < 1e-14);
            assert!((brute(&t, 0.5, 0.5) - net.m).norm() < 1e-13);
            assert!((t.eval(0.5, 0.5).unwrap() - net.m).norm() < 1e-13);
            // v = 1 boundary is [c1, ê1, c0] in u; its midpoint is e[1]
            let h = crate::interpolants::e_hats(&net);
            for k in 0..=10 {
                let s = k as f64 / 10.0;
                let on_edge = quadratic_point(net.c[1], h[1], net.c[0], s);
                assert!((t.eval(s, 1.0).unwrap() - on_edge).norm() < 1e-14);
            }
            assert!((t.eval(0.5, 1.0).unwrap() - net.e[1]).norm() < 1e-14);
            for _ in 0..10 {
                let (u, v) = (
                    rand::Rng::gen::<f64>(&mut rng),
                    rand::Rng::gen::<f64>(&mut rng),
                );
                assert!((t.eval(u, v).unwrap() - brute(&t, u, v)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn affine_reproduction() {
        let p = Vec3::new(1.0, -2.0, 3.5);
        let t = TpPatch::new(&constant_net(4, p)).unwrap();
        assert!(t.points.iter().flatten().all(|q| (q - p).norm() < 1e-14));
        // planar ring: every control point planar
        let t = TpPatch::new(&unit_square_net()).unwrap();
        assert!(t.points.iter().flatten().all(|q| q.z == 0.0));
        // unit square ring: ê = 2e - (c+c)/2 lies on the square edge, center stays at origin
        assert_eq!(t.points[1][1], Vec3::zeros());
        assert_eq!(t.points[2][1], Vec3::new(1.0, 0.0, 0.0));
        assert!((brute(&t, 0.5, 0.5)).norm() < 1e-15);
        assert!((t.eval(0.25, 0.75).unwrap() - Vec3::new(-0.5, 0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn wrong_valence() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(matches!(
            TpPatch::new(&random_net(&mut rng, 5)),
            Err(InterpolantError::WrongValence {
                expected: 4,
                got: 5
            })
        ));
        let t = TpPatch::new(&random_net(&mut rng, 4)).unwrap();
        assert!(t.eval(1.5, 0.0).is_err());
    }

    #[test]
    fn polygon_alignment() {
        let poly = RegularPolygon::new(4);
        let expect = [(1.0, 1.0), (0.0, 1.0), (0.0, 0.0), (1.0, 0.0)];
        for (k, &(u, v)) in expect.iter().enumerate() {
            let (a, b) = TpPatch::square_from_polygon(poly.vertex(k));
            assert!((a - u).abs() < 1e-15 && (b - v).abs() < 1e-15);
        }
    }
}
