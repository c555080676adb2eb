//! Linear geometry of the unit three-sphere in R⁴ = C².
//!
//! Coordinates are `(x₁, x₂, x₃, x₄)` with `z = x₁ + i·x₂` and
//! `w = x₃ + i·x₄`. A great circle is stored as an ordered orthonormal frame
//! `(u, v)` and traversed as `γ(t) = u·cos t + v·sin t`.
//!
//! Circles built from exact axis angles keep a [`RationalAngle`] tag, and
//! every equality, intersection and distance question between two tagged
//! circles is answered with integer arithmetic.

mod angle;
mod gauss;
mod stereo;

use core::fmt;
use core::ops::{Add, Index, Mul, Neg, Sub};

pub use angle::RationalAngle;
pub use gauss::{gauss_linking_integral, gauss_linking_integral_with_pole, pole_candidates};
pub use stereo::Stereographic;

use crate::math;
use crate::{Error, Result, DEFAULT_TOLERANCE};

/// Frames whose norms or inner product are off by more than this are
/// rejected at construction.
pub const FRAME_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Vec4([x1, x2, x3, x4])
    }

    /// Standard basis vector `e_{i+1}`.
    pub const fn basis(i: usize) -> Self {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        Vec4(v)
    }

    /// The point `(z, w)` given as `(re z, im z, re w, im w)`.
    pub fn from_complex(z: (f64, f64), w: (f64, f64)) -> Self {
        Vec4([z.0, z.1, w.0, w.1])
    }

    pub fn dot(self, o: Self) -> f64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2] + self.0[3] * o.0[3]
    }

    pub fn norm(self) -> f64 {
        math::sqrt(self.dot(self))
    }

    pub fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    /// `z` as `(re, im)`.
    pub fn z(self) -> (f64, f64) {
        (self.0[0], self.0[1])
    }

    /// `w` as `(re, im)`.
    pub fn w(self) -> (f64, f64) {
        (self.0[2], self.0[3])
    }

    pub fn max_abs_diff(self, o: Self) -> f64 {
        (0..4).map(|i| libm::fabs(self.0[i] - o.0[i])).fold(0.0, f64::max)
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4(core::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4(core::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4(self.0.map(|x| -x))
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, s: f64) -> Vec4 {
        Vec4(self.0.map(|x| x * s))
    }
}

/// Determinant of the 4×4 matrix with the given columns.
pub fn det4(c: [Vec4; 4]) -> f64 {
    // Laplace expansion along the first two columns.
    let minor = |a: Vec4, b: Vec4, i: usize, j: usize| a.0[i] * b.0[j] - a.0[j] * b.0[i];
    let pairs = [(0, 1, 2, 3, 1.0), (0, 2, 1, 3, -1.0), (0, 3, 1, 2, 1.0), (1, 2, 0, 3, 1.0), (1, 3, 0, 2, -1.0), (2, 3, 0, 1, 1.0)];
    pairs
        .iter()
        .map(|&(i, j, k, l, s)| s * minor(c[0], c[1], i, j) * minor(c[2], c[3], k, l))
        .sum()
}

/// Exact axis angles `(a, b)` of a circle `g_{a,b}`.
pub type AxisTag = (RationalAngle, RationalAngle);

/// An oriented great circle of S³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatCircle {
    u: Vec4,
    v: Vec4,
    axis_tag: Option<AxisTag>,
}

impl GreatCircle {
    /// Circle spanned by the orthonormal frame `(u, v)`.
    pub fn new(u: Vec4, v: Vec4) -> Result<Self> {
        if libm::fabs(u.dot(u) - 1.0) > FRAME_TOLERANCE || libm::fabs(v.dot(v) - 1.0) > FRAME_TOLERANCE {
            return Err(Error::DegenerateFrame("frame vectors must have unit length"));
        }
        if libm::fabs(u.dot(v)) > FRAME_TOLERANCE {
            return Err(Error::DegenerateFrame("frame vectors must be orthogonal"));
        }
        Ok(GreatCircle { u, v, axis_tag: None })
    }

    /// `g_{a,b}`: the circle through `(±e^{ia}, 0)` and `(0, ±e^{ib})`,
    /// with `γ(0) = (e^{ia}, 0)` and `γ(π/2) = (0, e^{ib})`.
    pub fn from_axes(a: RationalAngle, b: RationalAngle) -> Self {
        let (ca, sa) = a.cos_sin();
        let (cb, sb) = b.cos_sin();
        GreatCircle { u: Vec4::new(ca, sa, 0.0, 0.0), v: Vec4::new(0.0, 0.0, cb, sb), axis_tag: Some((a, b)) }
    }

    /// The z-axis `{(z, 0)}` oriented from `e₁` to `e₂`.
    pub fn z_axis() -> Self {
        GreatCircle { u: Vec4::basis(0), v: Vec4::basis(1), axis_tag: None }
    }

    /// The w-axis `{(0, w)}` oriented from `e₃` to `e₄`.
    pub fn w_axis() -> Self {
        GreatCircle { u: Vec4::basis(2), v: Vec4::basis(3), axis_tag: None }
    }

    pub fn u(&self) -> Vec4 {
        self.u
    }

    pub fn v(&self) -> Vec4 {
        self.v
    }

    pub fn axis_tag(&self) -> Option<AxisTag> {
        self.axis_tag
    }

    pub fn point(&self, t: f64) -> Vec4 {
        self.u * math::cos(t) + self.v * math::sin(t)
    }

    pub fn tangent(&self, t: f64) -> Vec4 {
        self.v * math::cos(t) - self.u * math::sin(t)
    }

    /// Same point set, opposite orientation.
    pub fn reversed(&self) -> Self {
        GreatCircle { u: self.u, v: -self.v, axis_tag: self.axis_tag.map(|(a, b)| (a, b + RationalAngle::PI)) }
    }

    /// Largest deviation of the frame from orthonormality.
    pub fn frame_residual(&self) -> f64 {
        let a = libm::fabs(self.u.dot(self.u) - 1.0);
        let b = libm::fabs(self.v.dot(self.v) - 1.0);
        let c = libm::fabs(self.u.dot(self.v));
        a.max(b).max(c)
    }

    /// `|Π x|`, the length of the projection of `x` onto the circle's plane;
    /// the spherical distance from a unit `x` to the circle is its arccosine.
    pub fn projection_norm(&self, x: Vec4) -> f64 {
        math::hypot(self.u.dot(x), self.v.dot(x))
    }
}

/// A rotation of R⁴ acting on C² by `(z, w) ↦ (e^{iα} z, e^{iβ} w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockRotation {
    pub z: RationalAngle,
    pub w: RationalAngle,
}

impl BlockRotation {
    pub fn order(self) -> i64 {
        num_integer::lcm(self.z.rotation_order(), self.w.rotation_order())
    }
}

/// An orientation-preserving isometry of R⁴, with an exact descriptor when
/// it is a [`BlockRotation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: [[f64; 4]; 4],
    exact: Option<BlockRotation>,
}

impl Isometry {
    pub fn identity() -> Self {
        Self::block_rotation(RationalAngle::ZERO, RationalAngle::ZERO)
    }

    pub fn block_rotation(z: RationalAngle, w: RationalAngle) -> Self {
        let (cz, sz) = z.cos_sin();
        let (cw, sw) = w.cos_sin();
        let m = [[cz, -sz, 0.0, 0.0], [sz, cz, 0.0, 0.0], [0.0, 0.0, cw, -sw], [0.0, 0.0, sw, cw]];
        Isometry { m, exact: Some(BlockRotation { z, w }) }
    }

    /// Accepts `m` if `mᵀm = I` and `det m = 1` within `tol`.
    pub fn from_matrix(m: [[f64; 4]; 4], tol: f64) -> Result<Self> {
        let iso = Isometry { m, exact: None };
        if iso.orthogonality_residual() > tol {
            return Err(Error::invalid("matrix is not orthogonal"));
        }
        if libm::fabs(iso.determinant() - 1.0) > tol {
            return Err(Error::invalid("matrix does not preserve orientation"));
        }
        Ok(iso)
    }

    pub fn matrix(&self) -> [[f64; 4]; 4] {
        self.m
    }

    pub fn exact(&self) -> Option<BlockRotation> {
        self.exact
    }

    pub fn row(&self, i: usize) -> Vec4 {
        Vec4(self.m[i])
    }

    pub fn determinant(&self) -> f64 {
        let cols: [Vec4; 4] = core::array::from_fn(|j| Vec4(core::array::from_fn(|i| self.m[i][j])));
        det4(cols)
    }

    /// `max |(mᵀm − I)_{ij}|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let s: f64 = (0..4).map(|k| self.m[k][i] * self.m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(libm::fabs(s - target));
            }
        }
        worst
    }

    pub fn apply_vec(&self, x: Vec4) -> Vec4 {
        Vec4(core::array::from_fn(|i| self.row(i).dot(x)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let m = core::array::from_fn(|i| core::array::from_fn(|j| (0..4).map(|k| self.m[i][k] * other.m[k][j]).sum()));
        let exact = match (self.exact, other.exact) {
            (Some(a), Some(b)) => Some(BlockRotation { z: a.z + b.z, w: a.w + b.w }),
            _ => None,
        };
        match exact {
            Some(r) => Self::block_rotation(r.z, r.w),
            None => Isometry { m, exact: None },
        }
    }

    /// `selfᵏ` for `k ≥ 0`.
    pub fn power(&self, k: u64) -> Isometry {
        if let Some(r) = self.exact {
            return Self::block_rotation(r.z.scale(k as i64), r.w.scale(k as i64));
        }
        (0..k).fold(Isometry::identity(), |acc, _| self.compose(&acc))
    }

    /// Order of an exact block rotation.
    pub fn order(&self) -> Option<i64> {
        self.exact.map(BlockRotation::order)
    }
}

/// `φ_{p/q}: (z, w) ↦ (e^{2πi/q} z, e^{2πip/q} w)`.
pub fn phi_isometry(p: i64, q: i64) -> Result<Isometry> {
    if q < 1 {
        return Err(Error::invalid("q must be at least 1"));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(Error::invalid(alloc::format!("gcd({p}, {q}) != 1")));
    }
    Ok(Isometry::block_rotation(RationalAngle::new(2, q)?, RationalAngle::new(2 * p, q)?))
}

/// Image of `c` under `r`. Exact block rotations shift the axis tag.
pub fn apply_isometry(r: &Isometry, c: &GreatCircle) -> GreatCircle {
    if let (Some(rot), Some((a, b))) = (r.exact, c.axis_tag) {
        return GreatCircle::from_axes(a + rot.z, b + rot.w);
    }
    GreatCircle { u: r.apply_vec(c.u), v: r.apply_vec(c.v), axis_tag: None }
}

/// Principal angles of two tagged circles as exact angles.
pub fn principal_angles_exact(c1: &GreatCircle, c2: &GreatCircle) -> Option<(RationalAngle, RationalAngle)> {
    let ((a1, b1), (a2, b2)) = (c1.axis_tag?, c2.axis_tag?);
    // The planes are span{(e^{ia},0), (0,e^{ib})}; their Gram matrix is
    // diag(cos(a1−a2), cos(b1−b2)).
    let x = (a1 - a2).fold_to_half_pi();
    let y = (b1 - b2).fold_to_half_pi();
    Some(if x <= y { (x, y) } else { (y, x) })
}

/// Jordan angles `0 ≤ θ₁ ≤ θ₂ ≤ π/2` between the planes of two circles.
///
/// Cosines come from the singular values of the 2×2 frame Gram matrix and
/// sines from the residual of the second frame after projecting onto the
/// first plane, so both small and near-right angles keep full precision.
pub fn principal_angles(c1: &GreatCircle, c2: &GreatCircle) -> (f64, f64) {
    if let Some((x, y)) = principal_angles_exact(c1, c2) {
        return (x.radians(), y.radians());
    }
    let (u1, v1, u2, v2) = (c1.u, c1.v, c2.u, c2.v);
    let m = [[u1.dot(u2), u1.dot(v2)], [v1.dot(u2), v1.dot(v2)]];
    // MᵀM
    let a = m[0][0] * m[0][0] + m[1][0] * m[1][0];
    let b = m[0][0] * m[0][1] + m[1][0] * m[1][1];
    let d = m[0][1] * m[0][1] + m[1][1] * m[1][1];
    let det_m = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let (cos2_lo, cos2_hi) = math::sym2_eigenvalues_with_det(a, b, d, det_m * det_m);

    let ru = u2 - u1 * u1.dot(u2) - v1 * v1.dot(u2);
    let rv = v2 - u1 * u1.dot(v2) - v1 * v1.dot(v2);
    let (sin2_lo, sin2_hi) = math::sym2_eigenvalues(ru.dot(ru), ru.dot(rv), rv.dot(rv));

    let small = math::atan2(math::sqrt(sin2_lo.max(0.0)), math::sqrt(cos2_hi.max(0.0)));
    let large = math::atan2(math::sqrt(sin2_hi.max(0.0)), math::sqrt(cos2_lo.max(0.0)));
    (small.min(large), small.max(large))
}

/// Minimal spherical distance between the two point sets.
pub fn circle_distance(c1: &GreatCircle, c2: &GreatCircle) -> f64 {
    principal_angles(c1, c2).0
}

/// How two great circles sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CircleRelation {
    Equal,
    /// Two antipodal common points.
    Intersecting,
    Disjoint,
}

/// Exact for two tagged circles, otherwise decided with `tol` on the
/// principal angles.
pub fn circle_relation(c1: &GreatCircle, c2: &GreatCircle, tol: f64) -> CircleRelation {
    if let (Some((a1, b1)), Some((a2, b2))) = (c1.axis_tag, c2.axis_tag) {
        return match (a1.congruent_mod_pi(a2), b1.congruent_mod_pi(b2)) {
            (true, true) => CircleRelation::Equal,
            (false, false) => CircleRelation::Disjoint,
            _ => CircleRelation::Intersecting,
        };
    }
    let (t1, t2) = principal_angles(c1, c2);
    if t1 > tol {
        CircleRelation::Disjoint
    } else if t2 > tol {
        CircleRelation::Intersecting
    } else {
        CircleRelation::Equal
    }
}

pub fn circles_equal(c1: &GreatCircle, c2: &GreatCircle) -> bool {
    circle_relation(c1, c2, DEFAULT_TOLERANCE) == CircleRelation::Equal
}

pub fn circles_intersect(c1: &GreatCircle, c2: &GreatCircle) -> bool {
    circle_relation(c1, c2, DEFAULT_TOLERANCE) == CircleRelation::Intersecting
}

/// Linking number of two disjoint oriented great circles:
/// `sign det[u₁ v₁ u₂ v₂]`.
///
/// With this convention the z-axis (`e₁ → e₂`) and the w-axis (`e₃ → e₄`)
/// link with `+1`.
pub fn linking_number(c1: &GreatCircle, c2: &GreatCircle) -> Result<i8> {
    if circle_relation(c1, c2, DEFAULT_TOLERANCE) != CircleRelation::Disjoint {
        return Err(Error::NotDisjoint);
    }
    let det = det4([c1.u, c1.v, c2.u, c2.v]);
    Ok(if det > 0.0 { 1 } else { -1 })
}

/// Completes an orthonormal pair to an orthonormal basis of R⁴.
///
/// Candidates are the standard basis vectors. At each step the one with the
/// largest residual against the current span is taken, ties going to the
/// lower index. The last vector is negated if needed so the basis is
/// positively oriented.
pub(crate) fn complete_frame(u: Vec4, v: Vec4) -> [Vec4; 4] {
    let mut basis = [u, v, Vec4::ZERO, Vec4::ZERO];
    for slot in 2..4 {
        let mut best = (f64::NEG_INFINITY, Vec4::ZERO);
        for i in 0..4 {
            let mut r = Vec4::basis(i);
            for b in &basis[..slot] {
                r = r - *b * b.dot(r);
            }
            // Second Gram–Schmidt pass for orthogonality at the 1e-16 level.
            for b in &basis[..slot] {
                r = r - *b * b.dot(r);
            }
            let n = r.norm();
            if n > best.0 {
                best = (n, r);
            }
        }
        basis[slot] = best.1 * (1.0 / best.0);
    }
    if det4(basis) < 0.0 {
        basis[3] = -basis[3];
    }
    basis
}

/// Rotation `R` with `R·u = e₁`, `R·v = e₂` and `det R = +1`.
pub fn move_to_standard(c: &GreatCircle) -> Isometry {
    let basis = complete_frame(c.u, c.v);
    Isometry { m: basis.map(|b| b.0), exact: None }
}

impl fmt::Display for GreatCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axis_tag {
            Some((a, b)) => write!(f, "g[{a}π, {b}π]"),
            None => write!(f, "circle(u={:?}, v={:?})", self.u.0, self.v.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::PI;
    use core::f64::consts::FRAC_PI_2;

    fn ang(n: i64, d: i64) -> RationalAngle {
        RationalAngle::new(n, d).unwrap()
    }

    #[test]
    fn axes_circles() {
        let g = GreatCircle::from_axes(RationalAngle::ZERO, RationalAngle::ZERO);
        assert_eq!(g.u(), Vec4::basis(0));
        assert_eq!(g.v(), Vec4::basis(2));
        let h = GreatCircle::from_axes(RationalAngle::HALF_PI, RationalAngle::HALF_PI);
        assert_eq!(h.u(), Vec4::basis(1));
        assert_eq!(h.v(), Vec4::basis(3));
        let c = GreatCircle::from_axes(ang(1, 5), ang(2, 5));
        assert_eq!(c.axis_tag(), Some((ang(1, 5), ang(2, 5))));
        let p = c.point(FRAC_PI_2);
        assert!(p.max_abs_diff(Vec4::new(0.0, 0.0, libm::cos(2.0 * PI / 5.0), libm::sin(2.0 * PI / 5.0))) < 1e-15);
        assert!(c.frame_residual() < 1e-12);
    }

    #[test]
    fn degenerate_frames_rejected() {
        assert!(GreatCircle::new(Vec4::basis(0), Vec4::basis(0)).is_err());
        assert!(GreatCircle::new(Vec4::basis(0) * 1.1, Vec4::basis(1)).is_err());
        assert!(GreatCircle::new(Vec4::basis(0), Vec4::basis(1) * (1.0 + 1e-8)).is_ok());
    }

    #[test]
    fn phi_examples() {
        let antipodal = phi_isometry(1, 2).unwrap();
        for i in 0..4 {
            let x = Vec4::basis(i);
            assert_eq!(antipodal.apply_vec(x), -x);
        }
        let phi = phi_isometry(2, 5).unwrap();
        assert_eq!(phi.exact(), Some(BlockRotation { z: ang(2, 5), w: ang(4, 5) }));
        assert_eq!(phi.order(), Some(5));
        assert_eq!(phi.power(5).exact(), Some(BlockRotation { z: RationalAngle::ZERO, w: RationalAngle::ZERO }));
        let mut m = Isometry::identity();
        for _ in 0..5 {
            m = Isometry { m: phi.compose(&m).m, exact: None };
        }
        for i in 0..4 {
            assert!(m.apply_vec(Vec4::basis(i)).max_abs_diff(Vec4::basis(i)) < 1e-14);
        }
        assert_eq!(phi_isometry(1, 1).unwrap().matrix(), Isometry::identity().matrix());
        assert!(phi_isometry(2, 4).is_err());
        assert!(phi_isometry(1, 0).is_err());
        assert!((phi.determinant() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn apply_examples() {
        let g = GreatCircle::from_axes(RationalAngle::ZERO, RationalAngle::ZERO);
        let img = apply_isometry(&phi_isometry(2, 5).unwrap(), &g);
        assert_eq!(img.axis_tag(), Some((ang(2, 5), ang(4, 5))));
        assert_eq!(apply_isometry(&Isometry::identity(), &g), g);
        let anti = apply_isometry(&phi_isometry(1, 2).unwrap(), &g);
        assert_eq!(anti.axis_tag(), Some((RationalAngle::PI, RationalAngle::PI)));
        assert!(circles_equal(&anti, &g));
        // Same map through the matrix path.
        let untagged = GreatCircle::new(g.u(), g.v()).unwrap();
        let m = Isometry::from_matrix(phi_isometry(2, 5).unwrap().matrix(), 1e-12).unwrap();
        let img2 = apply_isometry(&m, &untagged);
        assert!(img2.u().max_abs_diff(img.u()) < 1e-15 && img2.v().max_abs_diff(img.v()) < 1e-15);
    }

    #[test]
    fn principal_angle_examples() {
        let g = GreatCircle::from_axes(RationalAngle::ZERO, RationalAngle::ZERO);
        assert_eq!(principal_angles(&g, &g), (0.0, 0.0));
        let (a, b) = principal_angles(&GreatCircle::z_axis(), &GreatCircle::w_axis());
        assert!((a - FRAC_PI_2).abs() < 1e-15 && (b - FRAC_PI_2).abs() < 1e-15);
        let h = GreatCircle::from_axes(RationalAngle::HALF_PI, RationalAngle::HALF_PI);
        assert_eq!(principal_angles(&g, &h), (FRAC_PI_2, FRAC_PI_2));
        // Floating path agrees with the exact one.
        let c1 = GreatCircle::from_axes(ang(1, 7), ang(3, 7));
        let c2 = GreatCircle::from_axes(ang(4, 7), ang(6, 5));
        let (e1, e2) = principal_angles(&c1, &c2);
        let f1 = GreatCircle::new(c1.u(), c1.v()).unwrap();
        let f2 = GreatCircle::new(c2.u(), c2.v()).unwrap();
        let (n1, n2) = principal_angles(&f1, &f2);
        assert!((e1 - n1).abs() < 1e-12 && (e2 - n2).abs() < 1e-12, "{e1} {n1} {e2} {n2}");
    }

    #[test]
    fn small_principal_angle_precision() {
        let eps = 1e-10;
        let c1 = GreatCircle::z_axis();
        let c2 = GreatCircle::new(Vec4::new(libm::cos(eps), 0.0, libm::sin(eps), 0.0), Vec4::new(0.0, libm::cos(0.3), 0.0, libm::sin(0.3))).unwrap();
        let (a, b) = principal_angles(&c1, &c2);
        assert!((a - eps).abs() < 1e-20, "{a}");
        assert!((b - 0.3).abs() < 1e-14);
    }

    #[test]
    fn relations() {
        let g = GreatCircle::from_axes(RationalAngle::ZERO, RationalAngle::ZERO);
        let d = GreatCircle::from_axes(ang(1, 5), ang(2, 5));
        assert!(circle_distance(&g, &d) > 0.0);
        let a = ang(3, 7);
        let b = ang(1, 3);
        assert!(circles_equal(&GreatCircle::from_axes(a, b), &GreatCircle::from_axes(a + RationalAngle::PI, b + RationalAngle::PI)));
        assert!(circles_intersect(&g, &GreatCircle::from_axes(RationalAngle::ZERO, RationalAngle::HALF_PI)));
        let gu = GreatCircle::new(g.u(), g.v()).unwrap();
        let hu = GreatCircle::new(Vec4::basis(0), Vec4::basis(3)).unwrap();
        assert_eq!(circle_relation(&gu, &hu, 1e-9), CircleRelation::Intersecting);
        assert_eq!(circle_relation(&gu, &gu.reversed(), 1e-9), CircleRelation::Equal);
        assert_eq!(circle_distance(&gu, &hu), 0.0);
    }

    #[test]
    fn linking_convention() {
        let z = GreatCircle::z_axis();
        let w = GreatCircle::w_axis();
        assert_eq!(linking_number(&z, &w), Ok(1));
        assert_eq!(linking_number(&w, &z), Ok(1));
        assert_eq!(linking_number(&z, &w.reversed()), Ok(-1));
        assert_eq!(linking_number(&z.reversed(), &w), Ok(-1));
        assert_eq!(linking_number(&z, &z), Err(Error::NotDisjoint));
        let g = GreatCircle::from_axes(RationalAngle::ZERO, RationalAngle::ZERO);
        let h = GreatCircle::from_axes(RationalAngle::ZERO, RationalAngle::HALF_PI);
        assert_eq!(linking_number(&g, &h), Err(Error::NotDisjoint));
    }

    #[test]
    fn standard_position() {
        let r = move_to_standard(&GreatCircle::z_axis());
        assert_eq!(r.matrix(), Isometry::identity().matrix());
        let r = move_to_standard(&GreatCircle::w_axis());
        assert_eq!(r.apply_vec(Vec4::basis(2)), Vec4::basis(0));
        assert_eq!(r.apply_vec(Vec4::basis(3)), Vec4::basis(1));
        assert!((r.determinant() - 1.0).abs() < 1e-15);
        let c = GreatCircle::from_axes(ang(2, 7), ang(5, 9));
        let r = move_to_standard(&c);
        let img = apply_isometry(&r, &c);
        assert!(img.u().max_abs_diff(Vec4::basis(0)) < 1e-12);
        assert!(img.v().max_abs_diff(Vec4::basis(1)) < 1e-12);
        assert!(r.orthogonality_residual() < 1e-14);
    }
}
