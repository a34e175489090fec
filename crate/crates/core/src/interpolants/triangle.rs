use super::wachspress::{wachspress, RegularPolygon};
use super::{e_hats, InterpolantError};
use crate::mesh::ControlNet;
use crate::{Vec2, Vec3};

/// Cubic Bézier triangle for valence-3 nets.
///
/// The quadratic boundaries are degree-elevated to cubic; the extra interior
/// control point is fixed so the patch hits `m` at the centroid.
#[derive(Debug, Clone, PartialEq)]
pub struct TriPatch {
    /// Indexed by `(i, j)` with `k = 3 - i - j`; entries with `i + j > 3` unused.
    points: [[Vec3; 4]; 4],
    domain: RegularPolygon,
}

impl TriPatch {
    pub fn new(net: &ControlNet) -> Result<Self, InterpolantError> {
        if net.valence() != 3 {
            return Err(InterpolantError::WrongValence {
                expected: 3,
                got: net.valence(),
            });
        }
        let c = &net.c;
        let h = e_hats(net);
        let third = |a: Vec3, b: Vec3| (a + b * 2.0) / 3.0;
        let mut p = [[Vec3::zeros(); 4]; 4];
        p[3][0] = c[0];
        p[0][3] = c[1];
        p[0][0] = c[2];
        p[2][1] = third(c[0], h[1]);
        p[1][2] = third(c[1], h[1]);
        p[0][2] = third(c[1], h[2]);
        p[0][1] = third(c[2], h[2]);
        p[1][0] = third(c[2], h[0]);
        p[2][0] = third(c[0], h[0]);
        let corners = c[0] + c[1] + c[2];
        let edges = p[2][1] + p[1][2] + p[0][2] + p[0][1] + p[1][0] + p[2][0];
        p[1][1] = (net.m * 27.0 - corners - edges * 3.0) / 6.0;
        Ok(TriPatch {
            points: p,
            domain: RegularPolygon::new(3),
        })
    }

    /// Control point `P_ijk` (with `k = 3 - i - j`).
    pub fn point(&self, i: usize, j: usize, k: usize) -> Vec3 {
        assert_eq!(i + j + k, 3, "cubic triangle indices must sum to 3");
        self.points[i][j]
    }

    pub fn eval_bary(&self, l: [f64; 3]) -> Result<Vec3, InterpolantError> {
        const EPS: f64 = 1e-12;
        if l.iter().any(|&x| x < -EPS) || (l.iter().sum::<f64>() - 1.0).abs() > EPS {
            return Err(InterpolantError::InvalidBarycentric(l));
        }
        let pw = |x: f64| [1.0, x, x * x, x * x * x];
        let (a, b, c) = (pw(l[0]), pw(l[1]), pw(l[2]));
        let fact = [1.0, 1.0, 2.0, 6.0];
        let mut acc = Vec3::zeros();
        for i in 0..=3 {
            for j in 0..=3 - i {
                let k = 3 - i - j;
                let coeff = 6.0 / (fact[i] * fact[j] * fact[k]);
                acc += self.points[i][j] * (coeff * a[i] * b[j] * c[k]);
            }
        }
        Ok(acc)
    }

    /// Evaluates at a point of the triangle with vertices `(cos 2kπ/3, sin 2kπ/3)`.
    pub fn eval_polygon(&self, p: Vec2) -> Result<Vec3, InterpolantError> {
        let l = wachspress(&self.domain, p)?;
        self.eval_bary([l[0], l[1], l[2]])
    }
}

#[cfg(test)]
mod tests {
    use super::super::qgb::qgb_weights;
    use super::super::test_nets::*;
    use super::super::{e_hats, quadratic_point};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Degree elevation of a quadratic `[a, b, c]` to cubic.
    fn elevate(a: Vec3, b: Vec3, c: Vec3) -> [Vec3; 4] {
        [a, (a + b * 2.0) / 3.0, (b * 2.0 + c) / 3.0, c]
    }

    #[test]
    fn corner_assignment_and_elevation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let net = random_net(&mut rng, 3);
        let t = TriPatch::new(&net).unwrap();
        assert_eq!(t.point(3, 0, 0), net.c[0]);
        assert_eq!(t.point(0, 3, 0), net.c[1]);
        assert_eq!(t.point(0, 0, 3), net.c[2]);
        let h = e_hats(&net);
        let row = elevate(net.c[0], h[1], net.c[1]);
        assert!((t.point(2, 1, 0) - row[1]).norm() < 1e-15);
        assert!((t.point(1, 2, 0) - row[2]).norm() < 1e-15);
    }

    #[test]
    fn interpolation() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let net = random_net(&mut rng, 3);
            let t = TriPatch::new(&net).unwrap();
            let third = 1.0 / 3.0;
            assert!((t.eval_bary([third, third, third]).unwrap() - net.m).norm() < 1e-13);
            assert!((t.eval_bary([1.0, 0.0, 0.0]).unwrap() - net.c[0]).norm() < 1e-15);
            assert!((t.eval_bary([0.5, 0.5, 0.0]).unwrap() - net.e[1]).norm() < 1e-14);
            assert!((t.eval_bary([0.0, 0.5, 0.5]).unwrap() - net.e[2]).norm() < 1e-14);
            assert!((t.eval_bary([0.5, 0.0, 0.5]).unwrap() - net.e[0]).norm() < 1e-14);
        }
    }

    #[test]
    fn constant_net_reproduced() {
        let p = Vec3::new(3.0, 1.0, -2.0);
        let t = TriPatch::new(&constant_net(3, p)).unwrap();
        for i in 0..=3 {
            for j in 0..=3 - i {
                assert!((t.point(i, j, 3 - i - j) - p).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn boundary_matches_quadratic_gb_form() {
        // On the boundary the quadratic GB weights describe a quadratic
        // triangle, so they must agree with the elevated cubic edges.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let net = random_net(&mut rng, 3);
        let t = TriPatch::new(&net).unwrap();
        let h = e_hats(&net);
        let poly = RegularPolygon::new(3);
        for i in 0..3 {
            for k in 0..=32 {
                let s = k as f64 / 32.0;
                let p = poly.side_point(i, s);
                let w = qgb_weights(&poly, p).unwrap();
                let mut gb = Vec3::zeros();
                for (j, sw) in w.side.iter().enumerate() {
                    gb += net.c_prev(j) * sw[0] + h[j] * sw[1] + net.c[j] * sw[2];
                }
                let curve = quadratic_point(net.c_prev(i), h[i], net.c[i], s);
                assert!((gb - curve).norm() < 1e-12);
                assert!((t.eval_polygon(p).unwrap() - curve).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        assert!(TriPatch::new(&random_net(&mut rng, 4)).is_err());
        let t = TriPatch::new(&random_net(&mut rng, 3)).unwrap();
        assert!(t.eval_bary([0.5, 0.6, -0.1]).is_err());
        assert!(t.eval_bary([0.5, 0.6, 0.1]).is_err());
    }
}
