//! Thin wrappers over `libm` so results are identical with and without std.

pub use core::f64::consts::{PI, TAU};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

/// Eigenvalues `(λ_min, λ_max)` of the symmetric matrix `[[a, b], [b, d]]`.
///
/// The small eigenvalue is recovered as `det / λ_max` to avoid cancellation.
pub fn sym2_eigenvalues(a: f64, b: f64, d: f64) -> (f64, f64) {
    sym2_eigenvalues_with_det(a, b, d, a * d - b * b)
}

/// As [`sym2_eigenvalues`] with a determinant the caller computed more
/// accurately than `ad − b²`.
pub fn sym2_eigenvalues_with_det(a: f64, b: f64, d: f64, det: f64) -> (f64, f64) {
    let half_tr = 0.5 * (a + d);
    let disc = hypot(0.5 * (a - d), b);
    let max = half_tr + disc;
    if max <= 0.0 {
        return (half_tr - disc, max);
    }
    (det / max, max)
}

/// Complete elliptic integrals `(K(m), E(m))` of parameter `m = k²`,
/// given `m` and its complement `m1 = 1 − m` computed independently.
pub fn ellipke(m: f64, m1: f64) -> (f64, f64) {
    let mut a = 1.0;
    let mut b = sqrt(m1.max(0.0));
    let mut c = sqrt(m.max(0.0));
    let mut weight = 0.5;
    let mut sum = weight * c * c;
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        // c_{n+1} = (a_n − b_n)/2 = c_n² / (4 a_{n+1}), without cancellation
        c = c * c / (4.0 * an);
        b = sqrt(a * b);
        a = an;
        weight *= 2.0;
        sum += weight * c * c;
        if c <= 1e-18 * a {
            break;
        }
    }
    let k = PI / (2.0 * a);
    (k, k * (1.0 - sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    #[test]
    fn elliptic_known_values() {
        let (k, e) = ellipke(0.0, 1.0);
        assert!((k - FRAC_PI_2).abs() < 1e-15 && (e - FRAC_PI_2).abs() < 1e-15);
        // K(1/2), E(1/2)
        let (k, e) = ellipke(0.5, 0.5);
        assert!((k - 1.854_074_677_301_372).abs() < 1e-14);
        assert!((e - 1.350_643_881_047_675_5).abs() < 1e-14);
        let (_, e) = ellipke(1.0, 0.0);
        assert!(e.is_finite());
    }

    #[test]
    fn small_eigenvalue_without_cancellation() {
        let (lo, hi) = sym2_eigenvalues(1.0, 1.0 - 1e-12, 1.0);
        assert!((hi - 2.0).abs() < 1e-11);
        assert!((lo - 1e-12).abs() < 1e-15);
    }
}
