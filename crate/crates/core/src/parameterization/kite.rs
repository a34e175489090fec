use std::f64::consts::PI;

use crate::Vec2;

/// The kite `(0,0), (c,-s), (1,0), (c,s)` of the regular n-gon that one quad
/// corner maps onto, plus the auxiliary points `v[0..7]` spanning the curve
/// pencils.
///
/// `v[1]`, `v[2]`, `v[3]` lie on the polygon side through vertices `n-1` and
/// `0`, `v[5]`, `v[4]`, `v[3]` on the side through vertices `1` and `0`;
/// `v[0]` and `v[6]` are midpoints of the next sides out.
#[derive(Debug, Clone, PartialEq)]
pub struct Kite {
    pub n: usize,
    pub c: f64,
    pub s: f64,
    pub c_hat: f64,
    pub s_hat: f64,
    pub v: [Vec2; 7],
}

impl Kite {
    pub fn new(n: usize) -> Self {
        assert!(n >= 3, "kites need valence >= 3");
        let a = 2.0 * PI / n as f64;
        let c = 0.5 * (a.cos() + 1.0);
        let s = 0.5 * a.sin();
        let c_hat = 0.5 * ((2.0 * a).cos() - 1.0);
        let s_hat = 0.5 * (2.0 * a).sin();
        let v = [
            Vec2::new(c + c_hat, -s - s_hat),
            Vec2::new(2.0 * c - 1.0, -2.0 * s),
            Vec2::new(c, -s),
            Vec2::new(1.0, 0.0),
            Vec2::new(c, s),
            Vec2::new(2.0 * c - 1.0, 2.0 * s),
            Vec2::new(c + c_hat, s + s_hat),
        ];
        Kite {
            n,
            c,
            s,
            c_hat,
            s_hat,
            v,
        }
    }

    /// Kite corners counter-clockwise from the origin.
    pub fn corners(&self) -> [Vec2; 4] {
        [Vec2::zeros(), self.v[2], self.v[3], self.v[4]]
    }

    /// Closed point-in-kite test with a small absolute slack.
    pub fn contains(&self, p: Vec2, slack: f64) -> bool {
        let k = self.corners();
        (0..4).all(|i| {
            let a = k[i];
            let b = k[(i + 1) % 4];
            let e = b - a;
            let q = p - a;
            let cross = e.x * q.y - e.y * q.x;
            cross >= -slack * e.norm()
        })
    }

    /// Rotation by `2π k / n`, taking this kite onto the kite of corner `k`.
    pub fn rotate(&self, p: Vec2, k: usize) -> Vec2 {
        rotate(p, 2.0 * PI * (k % self.n) as f64 / self.n as f64)
    }
}

fn rotate(p: Vec2, angle: f64) -> Vec2 {
    let (s, c) = angle.sin_cos();
    Vec2::new(c * p.x - s * p.y, s * p.x + c * p.y)
}

pub fn make_kite(n: usize) -> Kite {
    Kite::new(n)
}
