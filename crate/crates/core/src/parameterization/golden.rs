//! Golden-section search for the minimum of a unimodal function.

/// `1/φ`, the fraction of the bracket kept each iteration.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenMin {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Shrinks `[lo, hi]` until it is narrower than `tol` or `max_iter` is hit
/// and returns the best point seen. Endpoints are never evaluated, so the
/// minimizer of a function decreasing towards `hi` is returned within `tol`
/// of `hi`, not at it.
pub fn golden_section_min<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> GoldenMin
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while b - a > tol && iterations < max_iter {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        iterations += 1;
    }
    let (x, fx) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    GoldenMin {
        x,
        fx,
        iterations,
        converged: b - a <= tol,
    }
}
