//! Local interpolants built from one vertex's control net.
//!
//! Every interpolant passes through `M` at its domain center, through each
//! `E_i` at the midpoint of side `i` and through each `C_i` at a domain
//! corner. Valence 3 uses a cubic Bézier triangle, valence 4 a biquadratic
//! tensor-product patch and higher valences the quadratic generalized Bézier
//! patch over a regular polygon.
//!
//! Domain alignment: polygon vertex `k` carries `c[k]`, so side `i` (from
//! vertex `i-1` to `i`) carries the boundary curve `[c[i-1], ê[i], c[i]]`.

mod qgb;
mod tensor;
mod triangle;
mod wachspress;

pub use qgb::{qgb_center, qgb_weights, QgbPatch, QgbWeights};
pub use tensor::TpPatch;
pub use triangle::TriPatch;
pub use wachspress::{side_coords, wachspress, RegularPolygon};

use thiserror::Error;

use crate::mesh::ControlNet;
use crate::{Vec2, Vec3};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InterpolantError {
    #[error("expected a valence-{expected} net, got valence {got}")]
    WrongValence { expected: usize, got: usize },
    #[error("valence {0} is too small; nets need at least 3 sides")]
    TooFewSides(usize),
    #[error("the central point is undefined for valence 3; use the cubic triangle patch")]
    TriangleCenter,
    #[error("domain point ({x}, {y}) lies outside the polygon")]
    OutsideDomain { x: f64, y: f64 },
    #[error("side {side} has a vanishing coordinate denominator")]
    DegenerateSide { side: usize },
    #[error("invalid barycentric coordinates {0:?}")]
    InvalidBarycentric([f64; 3]),
    #[error("parameter ({u}, {v}) outside the unit square")]
    OutsideSquare { u: f64, v: f64 },
    #[error("{0} patches are not defined over the unit square")]
    NotSquareDomain(&'static str),
}

/// Control point of the quadratic `[c_prev, ê, c_next]` whose midpoint is `e`.
pub fn e_hat(e: Vec3, c_prev: Vec3, c_next: Vec3) -> Vec3 {
    e * 2.0 - (c_prev + c_next) * 0.5
}

/// All lifted edge points of a net.
pub fn e_hats(net: &ControlNet) -> Vec<Vec3> {
    (0..net.valence())
        .map(|i| e_hat(net.e[i], net.c_prev(i), net.c[i]))
        .collect()
}

pub(crate) fn quadratic_point(p0: Vec3, p1: Vec3, p2: Vec3, t: f64) -> Vec3 {
    let b = crate::bernstein::quadratic(t);
    p0 * b[0] + p1 * b[1] + p2 * b[2]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InterpolantKind {
    Triangle,
    TensorProduct,
    GeneralizedBezier,
}

#[derive(Debug, Clone)]
pub enum Interpolant {
    Tri(TriPatch),
    Tp(TpPatch),
    Qgb(QgbPatch),
}

impl Interpolant {
    pub fn kind(&self) -> InterpolantKind {
        match self {
            Interpolant::Tri(_) => InterpolantKind::Triangle,
            Interpolant::Tp(_) => InterpolantKind::TensorProduct,
            Interpolant::Qgb(_) => InterpolantKind::GeneralizedBezier,
        }
    }

    /// Number of sides of the domain polygon.
    pub fn valence(&self) -> usize {
        match self {
            Interpolant::Tri(_) => 3,
            Interpolant::Tp(_) => 4,
            Interpolant::Qgb(q) => q.valence(),
        }
    }

    /// Evaluates at a point of the regular-polygon domain.
    pub fn eval_polygon(&self, p: Vec2) -> Result<Vec3, InterpolantError> {
        match self {
            Interpolant::Tri(t) => t.eval_polygon(p),
            Interpolant::Tp(t) => {
                let (u, v) = TpPatch::square_from_polygon(p);
                t.eval(u, v)
            }
            Interpolant::Qgb(q) => q.eval(p),
        }
    }

    /// Evaluates a tensor-product interpolant in its own `[0,1]^2` domain.
    pub fn eval_square(&self, u: f64, v: f64) -> Result<Vec3, InterpolantError> {
        match self {
            Interpolant::Tp(t) => t.eval(u, v),
            Interpolant::Tri(_) => Err(InterpolantError::NotSquareDomain("triangle")),
            Interpolant::Qgb(_) => Err(InterpolantError::NotSquareDomain("generalized Bézier")),
        }
    }
}

/// Picks the interpolant for a net by valence: 3 -> triangle, 4 -> tensor
/// product, 5+ -> generalized Bézier.
pub fn build_interpolant(net: &ControlNet) -> Result<Interpolant, InterpolantError> {
    match net.valence() {
        n if n < 3 => Err(InterpolantError::TooFewSides(n)),
        3 => Ok(Interpolant::Tri(TriPatch::new(net)?)),
        4 => Ok(Interpolant::Tp(TpPatch::new(net)?)),
        _ => Ok(Interpolant::Qgb(QgbPatch::new(net)?)),
    }
}

#[cfg(test)]
pub(crate) mod test_nets {
    use super::*;
    use rand::Rng;

    /// Ring net around the origin with a little noise; valence `n`.
    pub fn random_net<R: Rng>(rng: &mut R, n: usize) -> ControlNet {
        let mut jitter = |s: f64| {
            Vec3::new(
                rng.gen_range(-s..s),
                rng.gen_range(-s..s),
                rng.gen_range(-s..s),
            )
        };
        let m = jitter(0.2);
        let mut e = Vec::new();
        let mut c = Vec::new();
        for i in 0..n {
            let a = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            let b = a + std::f64::consts::PI / n as f64;
            e.push(Vec3::new(a.cos(), a.sin(), 0.0) + jitter(0.3));
            c.push(Vec3::new(1.4 * b.cos(), 1.4 * b.sin(), 0.0) + jitter(0.3));
        }
        ControlNet::new(m, e, c)
    }

    pub fn constant_net(n: usize, p: Vec3) -> ControlNet {
        ControlNet::new(p, vec![p; n], vec![p; n])
    }
}

#[cfg(test)]
mod tests {
    use super::test_nets::*;
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn e_hat_examples() {
        let e = Vec3::new(1.0, 1.0, 0.0);
        let (a, b) = (Vec3::zeros(), Vec3::new(2.0, 0.0, 0.0));
        let h = e_hat(e, a, b);
        assert_eq!(h, Vec3::new(1.0, 2.0, 0.0));
        assert!((quadratic_point(a, h, b, 0.5) - e).norm() < 1e-14);
        let mid = (a + b) * 0.5;
        assert_eq!(e_hat(mid, a, b), mid);
    }

    #[test]
    fn dispatch_by_valence() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(
            build_interpolant(&random_net(&mut rng, 3)).unwrap().kind(),
            InterpolantKind::Triangle
        );
        assert_eq!(
            build_interpolant(&random_net(&mut rng, 4)).unwrap().kind(),
            InterpolantKind::TensorProduct
        );
        for n in 5..9 {
            let i = build_interpolant(&random_net(&mut rng, n)).unwrap();
            assert_eq!(i.kind(), InterpolantKind::GeneralizedBezier);
            assert_eq!(i.valence(), n);
        }
        let tiny = ControlNet::new(
            Vec3::zeros(),
            vec![Vec3::zeros(); 2],
            vec![Vec3::zeros(); 2],
        );
        assert!(matches!(
            build_interpolant(&tiny),
            Err(InterpolantError::TooFewSides(2))
        ));
    }

    #[test]
    fn interpolates_net_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 3..=8 {
            let net = random_net(&mut rng, n);
            let it = build_interpolant(&net).unwrap();
            let poly = RegularPolygon::new(n);
            assert!(
                (it.eval_polygon(Vec2::zeros()).unwrap() - net.m).norm() < 1e-12,
                "n={n}"
            );
            for i in 0..n {
                assert!((it.eval_polygon(poly.vertex(i)).unwrap() - net.c[i]).norm() < 1e-12);
                assert!(
                    (it.eval_polygon(poly.side_midpoint(i)).unwrap() - net.e[i]).norm() < 1e-12
                );
            }
        }
    }

    #[test]
    fn square_eval_only_for_tensor_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tri = build_interpolant(&random_net(&mut rng, 3)).unwrap();
        assert!(tri.eval_square(0.5, 0.5).is_err());
        let tp = build_interpolant(&random_net(&mut rng, 4)).unwrap();
        assert!(tp.eval_square(0.5, 0.5).is_ok());
    }

    fn affine(m: nalgebra::Matrix3<f64>, t: Vec3) -> impl Fn(Vec3) -> Vec3 {
        move |p| m * p + t
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn affine_invariance(seed in 0u64..10_000, n in 3usize..9, r in 0.0f64..0.95, ang in 0.0f64..6.3,
                             coeffs in prop::array::uniform9(-2.0f64..2.0), shift in prop::array::uniform3(-5.0f64..5.0)) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let net = random_net(&mut rng, n);
            let m = nalgebra::Matrix3::from_row_slice(&coeffs);
            let t = Vec3::from(shift);
            let moved = net.map_points(affine(m, t));
            let poly = RegularPolygon::new(n);
            let inner = (std::f64::consts::PI / n as f64).cos();
            let p = Vec2::new(ang.cos(), ang.sin()) * (r * inner);
            prop_assume!(poly.contains(p));
            let a = build_interpolant(&moved).unwrap().eval_polygon(p).unwrap();
            let b = affine(m, t)(build_interpolant(&net).unwrap().eval_polygon(p).unwrap());
            prop_assert!((a - b).norm() < 1e-12 * (1.0 + b.norm()), "{} vs {}", a, b);
        }
    }
}
