use super::wachspress::{wachspress, RegularPolygon};
use super::{e_hats, quadratic_point, InterpolantError};
use crate::bernstein::quadratic;
use crate::mesh::ControlNet;
use crate::{Vec2, Vec3};

/// Quadratic generalized Bézier patch over the regular n-gon.
///
/// Each side contributes its quadratic boundary curve weighted by
/// `B_0^2(d_i)`; whatever weight is left over (the deficiency) multiplies the
/// central point, which is chosen so the patch passes through `m` at the
/// polygon center.
#[derive(Debug, Clone)]
pub struct QgbPatch {
    net: ControlNet,
    e_hat: Vec<Vec3>,
    center: Vec3,
    domain: RegularPolygon,
}

/// Blend weights at one domain point. `side[i]` holds the weights of
/// `(c[i-1], ê[i], c[i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct QgbWeights {
    pub side: Vec<[f64; 3]>,
    pub deficiency: f64,
}

/// Central control point `(n² m - Σ(c_i + 2 ê_i)) / (n (n-3))`.
pub fn qgb_center(net: &ControlNet) -> Result<Vec3, InterpolantError> {
    let n = net.valence();
    if n < 3 {
        return Err(InterpolantError::TooFewSides(n));
    }
    if n == 3 {
        return Err(InterpolantError::TriangleCenter);
    }
    let h = e_hats(net);
    let ring: Vec3 = (0..n).map(|i| net.c[i] + h[i] * 2.0).sum();
    let nf = n as f64;
    Ok((net.m * (nf * nf) - ring) / (nf * (nf - 3.0)))
}

/// Side weights and deficiency at `p`. Sides whose coordinate denominator
/// vanishes (far sides at a polygon vertex) carry zero weight, since their
/// `B_0^2(d)` factor is the square of that same denominator.
pub fn qgb_weights(domain: &RegularPolygon, p: Vec2) -> Result<QgbWeights, InterpolantError> {
    let n = domain.n();
    let lambda = wachspress(domain, p)?;
    let mut side = Vec::with_capacity(n);
    let mut total = 0.0;
    for i in 0..n {
        let prev = lambda[(i + n - 1) % n];
        let cur = lambda[i];
        let denom = prev + cur;
        if denom <= 0.0 {
            side.push([0.0; 3]);
            continue;
        }
        let s = cur / denom;
        // B_0^2(d) = (1 - d)^2 = denom^2
        let fall = denom * denom;
        let b = quadratic(s);
        let w = [0.5 * b[0] * fall, b[1] * fall, 0.5 * b[2] * fall];
        total += w[0] + w[1] + w[2];
        side.push(w);
    }
    Ok(QgbWeights {
        side,
        deficiency: 1.0 - total,
    })
}

impl QgbPatch {
    /// Builds the patch for any valence >= 4. Valence 4 is normally handled by
    /// the tensor-product patch; it is accepted here so the two can be compared.
    pub fn new(net: &ControlNet) -> Result<Self, InterpolantError> {
        let center = qgb_center(net)?;
        Ok(QgbPatch {
            net: net.clone(),
            e_hat: e_hats(net),
            center,
            domain: RegularPolygon::new(net.valence()),
        })
    }

    pub fn valence(&self) -> usize {
        self.domain.n()
    }

    pub fn net(&self) -> &ControlNet {
        &self.net
    }

    pub fn e_hat(&self) -> &[Vec3] {
        &self.e_hat
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn domain(&self) -> &RegularPolygon {
        &self.domain
    }

    /// Quadratic boundary curve of side `i` at parameter `s`.
    pub fn boundary(&self, i: usize, s: f64) -> Vec3 {
        let n = self.valence();
        quadratic_point(
            self.net.c[(i + n - 1) % n],
            self.e_hat[i % n],
            self.net.c[i % n],
            s,
        )
    }

    pub fn eval(&self, p: Vec2) -> Result<Vec3, InterpolantError> {
        if !self.domain.contains(p) {
            return Err(InterpolantError::OutsideDomain { x: p.x, y: p.y });
        }
        if let Some(i) = self.domain.boundary_side(p) {
            let a = self.domain.vertex(i + self.valence() - 1);
            let b = self.domain.vertex(i);
            let s = ((p - a).dot(&(b - a)) / (b - a).norm_squared()).clamp(0.0, 1.0);
            return Ok(self.boundary(i, s));
        }
        let w = qgb_weights(&self.domain, p)?;
        Ok(self.combine(&w))
    }

    pub(crate) fn combine(&self, w: &QgbWeights) -> Vec3 {
        let n = self.valence();
        let mut acc = self.center * w.deficiency;
        for (i, sw) in w.side.iter().enumerate() {
            acc +=
                self.net.c[(i + n - 1) % n] * sw[0] + self.e_hat[i] * sw[1] + self.net.c[i] * sw[2];
        }
        acc
    }
}
