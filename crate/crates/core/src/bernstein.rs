//! Bernstein polynomials.

/// Binomial coefficient for the small degrees used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `B_k^d(t)`, the k-th Bernstein polynomial of degree `d`.
pub fn bernstein(d: usize, k: usize, t: f64) -> f64 {
    if k > d {
        return 0.0;
    }
    binomial(d, k) * t.powi(k as i32) * (1.0 - t).powi((d - k) as i32)
}

/// All three quadratic Bernstein values at `t`.
#[inline]
pub fn quadratic(t: f64) -> [f64; 3] {
    let s = 1.0 - t;
    [s * s, 2.0 * s * t, t * t]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_of_unity() {
        for d in 0..8 {
            for &t in &[0.0, 0.1, 0.5, 0.77, 1.0] {
                let sum: f64 = (0..=d).map(|k| bernstein(d, k, t)).sum();
                assert!((sum - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn quadratic_matches_general() {
        let q = quadratic(0.3);
        for k in 0..3 {
            assert!((q[k] - bernstein(2, k, 0.3)).abs() < 1e-15);
        }
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(3, 4), 0.0);
    }
}
