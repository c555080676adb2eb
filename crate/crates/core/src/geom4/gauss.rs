//! Numerical Gauss linking integral, an oracle for the determinant sign.
//!
//! Both circles are pushed to R³ by stereographic projection. The image of
//! the second circle is a round circle, so the inner integral of the Gauss
//! kernel over it is its Biot–Savart field, evaluated in closed form with
//! complete elliptic integrals. The outer integral over the first circle is
//! a periodic trapezoid rule on `samples` nodes, checked against the rule on
//! every other node and replaced by adaptive Gauss–Kronrod panels when the
//! two disagree (circles passing close to each other).

use alloc::vec::Vec;

use super::stereo::{dot, scale, sub, ImageCircle};
use super::{circle_relation, CircleRelation, GreatCircle, Stereographic, Vec4};
use crate::math::{self, PI, TAU};
use crate::{Error, Result, DEFAULT_TOLERANCE};

const MIN_SAMPLES: usize = 64;

/// Candidate projection poles: the 24-cell vertices and those of its dual.
pub fn pole_candidates() -> Vec<Vec4> {
    let mut out = Vec::with_capacity(48);
    for i in 0..4 {
        out.push(Vec4::basis(i));
        out.push(-Vec4::basis(i));
    }
    for mask in 0..16u32 {
        let s = |bit: u32| if mask & (1 << bit) == 0 { 0.5 } else { -0.5 };
        out.push(Vec4::new(s(0), s(1), s(2), s(3)));
    }
    let h = core::f64::consts::FRAC_1_SQRT_2;
    for i in 0..4 {
        for j in i + 1..4 {
            for (si, sj) in [(h, h), (h, -h), (-h, h), (-h, -h)] {
                let mut v = [0.0; 4];
                v[i] = si;
                v[j] = sj;
                out.push(Vec4(v));
            }
        }
    }
    out
}

/// Pole farthest from both circles among [`pole_candidates`].
fn choose_pole(c1: &GreatCircle, c2: &GreatCircle) -> Vec4 {
    let mut best = (f64::NEG_INFINITY, Vec4::ZERO);
    for p in pole_candidates() {
        let closeness = c1.projection_norm(p).max(c2.projection_norm(p));
        if -closeness > best.0 {
            best = (-closeness, p);
        }
    }
    best.1
}

/// Gauss linking integral of two disjoint great circles.
pub fn gauss_linking_integral(c1: &GreatCircle, c2: &GreatCircle, samples: usize) -> Result<f64> {
    gauss_linking_integral_with_pole(c1, c2, samples, choose_pole(c1, c2))
}

/// As [`gauss_linking_integral`] with an explicit projection pole. A pole
/// lying on either circle is perturbed until it clears both.
pub fn gauss_linking_integral_with_pole(c1: &GreatCircle, c2: &GreatCircle, samples: usize, pole: Vec4) -> Result<f64> {
    if samples < MIN_SAMPLES {
        return Err(Error::invalid("at least 64 samples are required"));
    }
    if circle_relation(c1, c2, DEFAULT_TOLERANCE) != CircleRelation::Disjoint {
        return Err(Error::NotDisjoint);
    }
    let mut pole = pole.normalized();
    let mut nudge = 0;
    while c1.projection_norm(pole) > 1.0 - 1e-6 || c2.projection_norm(pole) > 1.0 - 1e-6 {
        nudge += 1;
        if nudge > 32 {
            return Err(Error::invalid("could not find a projection pole off both circles"));
        }
        let k = nudge as f64;
        pole = (pole + Vec4::new(0.013 * k, -0.007 * k, 0.011 * k, 0.017 * k)).normalized();
    }
    let st = Stereographic::new(pole)?;
    let image = st.image_circle(c2);
    let integrand = |t: f64| {
        let (y, dy) = st.project_with_derivative(c1.point(t), c1.tangent(t));
        dot(biot_savart(&image, y), dy)
    };

    let values: Vec<f64> = (0..samples).map(|i| integrand(TAU * i as f64 / samples as f64)).collect();
    let full = TAU / samples as f64 * values.iter().sum::<f64>();
    let coarse_n = samples / 2;
    let coarse = TAU / coarse_n as f64 * values.iter().step_by(2).take(coarse_n).sum::<f64>();
    if samples % 2 == 0 && libm::fabs(full - coarse) < 1e-10 {
        return Ok(full);
    }
    let width = TAU / samples as f64;
    let mut budget = ADAPTIVE_BUDGET;
    Ok((0..samples)
        .map(|i| {
            let a = width * i as f64;
            adaptive_gk15(&integrand, a, a + width, 1e-13, &mut budget)
        })
        .sum())
}

/// Field `(1/4π) ∮ dr' × (r − r') / |r − r'|³` of a unit current on `circle`.
fn biot_savart(circle: &ImageCircle, r: [f64; 3]) -> [f64; 3] {
    let a = circle.radius;
    let n = circle.normal;
    let d = sub(r, circle.center);
    let z = dot(d, n);
    let radial = sub(d, scale(n, z));
    let rho = libm::sqrt(dot(radial, radial));
    let z2 = z * z;
    let beta2 = (a + rho) * (a + rho) + z2;
    let alpha2 = (a - rho) * (a - rho) + z2;
    let beta = math::sqrt(beta2);
    let s = a * a + z2;
    if rho * rho < 1e-6 * s {
        // Off-axis series of the on-axis field f(z) = a²/(2 s^{3/2}):
        // B_z = f − ρ²f''/4, B_ρ = −ρf'/2 + ρ³f'''/16.
        let root = math::sqrt(s);
        let s52 = s * s * root;
        let f = a * a / (2.0 * s * root);
        let f1 = -1.5 * a * a * z / s52;
        let f2 = 1.5 * a * a * (4.0 * z2 - a * a) / (s52 * s);
        let f3 = 7.5 * a * a * z * (3.0 * a * a - 4.0 * z2) / (s52 * s * s);
        let bz = f - 0.25 * rho * rho * f2;
        // B_ρ / ρ, multiplying the (non-unit) radial vector
        let coeff = -0.5 * f1 + rho * rho * f3 / 16.0;
        return [coeff * radial[0] + bz * n[0], coeff * radial[1] + bz * n[1], coeff * radial[2] + bz * n[2]];
    }
    let m = 4.0 * a * rho / beta2;
    let (k, e) = math::ellipke(m, alpha2 / beta2);
    let bz = (k + (a * a - rho * rho - z2) / alpha2 * e) / (2.0 * PI * beta);
    let brho = z / (2.0 * PI * rho * beta) * (-k + (a * a + rho * rho + z2) / alpha2 * e);
    let rhat = scale(radial, 1.0 / rho);
    [brho * rhat[0] + bz * n[0], brho * rhat[1] + bz * n[1], brho * rhat[2] + bz * n[2]]
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, gauss * h)
}

/// Maximum number of GK15 panels per adaptive integration.
const ADAPTIVE_BUDGET: usize = 1 << 18;

fn adaptive_gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, budget: &mut usize) -> f64 {
    let (k, g) = gk15(f, a, b);
    *budget = budget.saturating_sub(1);
    if *budget == 0 || libm::fabs(k - g) <= tol.max(1e-14 * libm::fabs(k)) {
        return k;
    }
    let m = 0.5 * (a + b);
    adaptive_gk15(f, a, m, tol, budget) + adaptive_gk15(f, m, b, tol, budget)
}
