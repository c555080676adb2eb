//! Hemisphere fibrations of great circle link complements.
//!
//! Move a base component `c` to the z-axis `{(z, 0)}`. Its complement is
//! fibred by the open half-spheres `H_θ = {(z, r·e^{iθ}) : r > 0}`, and
//! `(z, w) ↦ arg w` is the fibration map. Every other component, written in
//! the moved frame as `γ(t) = A cos t + B sin t`, has `w(t) = a cos t + b sin t`
//! with `a = A₃ + iA₄`, `b = B₃ + iB₄`, and
//!
//! ```text
//! d/dt arg w(t) = Im(conj(w)·w′) / |w|² = Im(conj(a)·b) / |w(t)|²
//! ```
//!
//! so the component meets each `H_θ` exactly once as soon as the constant
//! `Im(conj(a)·b)` is nonzero. `Im(conj(a)·b)` is also the determinant
//! `det[e₁ e₂ A B]`, which makes its sign the linking number.

use alloc::vec::Vec;

use crate::geom4::{circle_relation, move_to_standard, CircleRelation, GreatCircle, Isometry, Vec4};
use crate::greatlink::GreatCircleLink;
use crate::math::{self, TAU};
use crate::{Error, Result, DEFAULT_TOLERANCE};

/// Rates below this are treated as a failed certificate.
pub const MIN_WINDING_RATE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingRecord {
    pub component: usize,
    /// `Im(conj(a)·b)` in the frame produced by [`move_to_standard`].
    pub winding_rate: f64,
    /// `min_t |w(t)|²`.
    pub clearance: f64,
    pub winding_sign: i8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FibrationCertificate {
    pub base_index: usize,
    pub records: Vec<WindingRecord>,
    pub fiber_punctures: usize,
    pub fiber_euler_characteristic: i64,
}

fn w_coords(r: &Isometry, c: &GreatCircle) -> ((f64, f64), (f64, f64)) {
    (r.apply_vec(c.u()).w(), r.apply_vec(c.v()).w())
}

fn winding_record(r: &Isometry, index: usize, c: &GreatCircle) -> WindingRecord {
    let (a, b) = w_coords(r, c);
    let rate = a.0 * b.1 - a.1 * b.0;
    // |w(t)|² = (cos t, sin t) G (cos t, sin t)ᵀ with det G = rate².
    let g11 = a.0 * a.0 + a.1 * a.1;
    let g22 = b.0 * b.0 + b.1 * b.1;
    let g12 = a.0 * b.0 + a.1 * b.1;
    let (clearance, _) = math::sym2_eigenvalues_with_det(g11, g12, g22, rate * rate);
    WindingRecord { component: index, winding_rate: rate, clearance, winding_sign: if rate > 0.0 { 1 } else { -1 } }
}

pub fn fibration_certificate(link: &GreatCircleLink, base_index: usize) -> Result<FibrationCertificate> {
    let comps = link.components();
    let base = comps.get(base_index).ok_or_else(|| Error::invalid(alloc::format!("no component {base_index}")))?;
    let r = move_to_standard(base);
    let mut records = Vec::with_capacity(comps.len().saturating_sub(1));
    for (j, c) in comps.iter().enumerate() {
        if j == base_index {
            continue;
        }
        if circle_relation(base, c, DEFAULT_TOLERANCE) != CircleRelation::Disjoint {
            return Err(Error::LinkDegenerate { base: base_index, other: j });
        }
        let record = winding_record(&r, j, c);
        if !(libm::fabs(record.winding_rate) >= MIN_WINDING_RATE && record.clearance > 0.0) {
            return Err(Error::CertificateFailed(alloc::format!(
                "component {j} winds at rate {} around base {base_index}",
                record.winding_rate
            )));
        }
        records.push(record);
    }
    let fiber_punctures = comps.len() - 1;
    Ok(FibrationCertificate { base_index, records, fiber_punctures, fiber_euler_characteristic: 1 - fiber_punctures as i64 })
}

/// One certificate per component.
pub fn all_fibrations(link: &GreatCircleLink) -> Result<Vec<FibrationCertificate>> {
    (0..link.len()).map(|i| fibration_certificate(link, i)).collect()
}

/// Points of `(link − base) ∩ H_θ`, one per non-base component, in the
/// original coordinates.
pub fn fiber_points(link: &GreatCircleLink, base_index: usize, theta: f64) -> Result<Vec<Vec4>> {
    let cert = fibration_certificate(link, base_index)?;
    let comps = link.components();
    let r = move_to_standard(&comps[base_index]);
    let (ct, st) = (math::cos(theta), math::sin(theta));
    Ok(cert
        .records
        .iter()
        .map(|rec| {
            let c = &comps[rec.component];
            let (a, b) = w_coords(&r, c);
            // Rotate by −θ; we need Im(α cos t + β sin t) = 0 with positive real part.
            let rot = |x: (f64, f64)| (x.0 * ct + x.1 * st, x.1 * ct - x.0 * st);
            let (alpha, beta) = (rot(a), rot(b));
            let mut t = math::atan2(-alpha.1, beta.1);
            if alpha.0 * math::cos(t) + beta.0 * math::sin(t) < 0.0 {
                t += core::f64::consts::PI;
            }
            c.point(t)
        })
        .collect())
}

/// Angle of `x` around the z-axis after moving `base` there, i.e. the
/// `θ` of the hemisphere containing `x`.
pub fn hemisphere_angle(base: &GreatCircle, x: Vec4) -> f64 {
    let w = move_to_standard(base).apply_vec(x).w();
    math::atan2(w.1, w.0)
}

/// Sampled behaviour of `arg w(t)` for one component around a base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledWinding {
    /// Every increment nonzero and of one sign.
    pub strictly_monotone: bool,
    /// Unwrapped change of `arg w` over one traversal.
    pub total: f64,
}

/// Sampling cross-check of a certificate record.
pub fn sampled_winding(base: &GreatCircle, component: &GreatCircle, samples: usize) -> SampledWinding {
    let r = move_to_standard(base);
    let (a, b) = w_coords(&r, component);
    let w = |t: f64| {
        let (c, s) = (math::cos(t), math::sin(t));
        (a.0 * c + b.0 * s, a.1 * c + b.1 * s)
    };
    let mut total = 0.0;
    let mut signs = (0usize, 0usize);
    let mut prev = w(0.0);
    for i in 1..=samples {
        let cur = w(TAU * i as f64 / samples as f64);
        // arg(conj(prev)·cur)
        let step = math::atan2(prev.0 * cur.1 - prev.1 * cur.0, prev.0 * cur.0 + prev.1 * cur.1);
        if step > 0.0 {
            signs.0 += 1;
        } else if step < 0.0 {
            signs.1 += 1;
        }
        total += step;
        prev = cur;
    }
    SampledWinding { strictly_monotone: signs.0 == samples || signs.1 == samples, total }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom4::{circle_distance, linking_number, RationalAngle};
    use crate::greatlink::construct_dpq;

    #[test]
    fn hopf_pair() {
        let link = GreatCircleLink::new(alloc::vec![GreatCircle::z_axis(), GreatCircle::w_axis()]).unwrap();
        let cert = fibration_certificate(&link, 0).unwrap();
        assert_eq!(cert.records.len(), 1);
        let rec = cert.records[0];
        assert_eq!(rec.winding_rate, 1.0);
        assert!((rec.clearance - 1.0).abs() < 1e-15);
        assert_eq!(cert.fiber_punctures, 1);
        assert_eq!(cert.fiber_euler_characteristic, 0);
        let pts = fiber_points(&link, 0, 0.0).unwrap();
        assert!(pts[0].max_abs_diff(Vec4::new(0.0, 0.0, 1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn d25_certificates() {
        let link = construct_dpq(2, 5).unwrap();
        let certs = all_fibrations(&link).unwrap();
        assert_eq!(certs.len(), 5);
        for cert in &certs {
            assert_eq!(cert.records.len(), 4);
            assert_eq!(cert.fiber_punctures, 4);
            assert_eq!(cert.fiber_euler_characteristic, -3);
            let base = &link.components()[cert.base_index];
            for rec in &cert.records {
                let other = &link.components()[rec.component];
                assert_eq!(rec.winding_sign, linking_number(base, other).unwrap());
                let s = libm::sin(circle_distance(base, other));
                assert!((rec.clearance - s * s).abs() < 1e-9);
                let sampled = sampled_winding(base, other, 1000);
                assert!(sampled.strictly_monotone);
                assert!((sampled.total - f64::from(rec.winding_sign) * TAU).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn fiber_points_lie_on_hemisphere() {
        let link = construct_dpq(2, 5).unwrap();
        let theta = core::f64::consts::FRAC_PI_3;
        let pts = fiber_points(&link, 0, theta).unwrap();
        assert_eq!(pts.len(), 4);
        let base = &link.components()[0];
        let r = move_to_standard(base);
        for (p, rec) in pts.iter().zip(&fibration_certificate(&link, 0).unwrap().records) {
            let w = r.apply_vec(*p).w();
            let radius = libm::hypot(w.0, w.1);
            assert!(radius > 0.0);
            assert!((w.0 - radius * libm::cos(theta)).abs() < 1e-9 && (w.1 - radius * libm::sin(theta)).abs() < 1e-9);
            // The point is on its component.
            assert!((link.components()[rec.component].projection_norm(*p) - 1.0).abs() < 1e-12);
        }
        let again = fiber_points(&link, 0, theta + TAU).unwrap();
        for (p, q) in pts.iter().zip(&again) {
            assert!(p.max_abs_diff(*q) < 1e-12);
        }
    }

    #[test]
    fn single_circle_and_degenerate_links() {
        let link = GreatCircleLink::new(alloc::vec![GreatCircle::z_axis()]).unwrap();
        let certs = all_fibrations(&link).unwrap();
        assert_eq!(certs.len(), 1);
        assert!(certs[0].records.is_empty());
        assert_eq!(certs[0].fiber_euler_characteristic, 1);
        assert!(fibration_certificate(&link, 3).is_err());

        // GreatCircleLink refuses intersecting circles outright, so go through
        // the certificate's own check with a tolerance-relaxed link.
        let g = GreatCircle::from_axes(RationalAngle::ZERO, RationalAngle::ZERO);
        let h = GreatCircle::new(Vec4::basis(0), Vec4::new(0.0, 0.0, 0.0, 1.0)).unwrap();
        let bad = GreatCircleLink::with_tolerance(alloc::vec![g, h], -1.0).unwrap();
        assert_eq!(fibration_certificate(&bad, 0), Err(Error::LinkDegenerate { base: 0, other: 1 }));
    }
}
