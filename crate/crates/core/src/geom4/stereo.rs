use super::{det4, GreatCircle, Vec4};
use crate::{Error, Result};

/// Stereographic projection of S³ minus a pole onto R³.
///
/// `y = (b₁·x, b₂·x, b₃·x) / (1 − N·x)` where `(b₁, b₂, b₃)` is an
/// orthonormal basis of `N^⊥` with `det[b₁ b₂ b₃ N] = +1`. Under this
/// orientation the Gauss linking integral of two great circles agrees with
/// [`linking_number`](super::linking_number).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stereographic {
    pole: Vec4,
    basis: [Vec4; 3],
}

/// A round circle in R³ traversed counterclockwise about `normal`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageCircle {
    pub center: [f64; 3],
    pub radius: f64,
    pub normal: [f64; 3],
}

impl Stereographic {
    /// Projection from `pole` with a basis chosen by pivoted Gram–Schmidt.
    pub fn new(pole: Vec4) -> Result<Self> {
        if libm::fabs(pole.norm() - 1.0) > 1e-9 {
            return Err(Error::invalid("pole must be a unit vector"));
        }
        let mut basis = [Vec4::ZERO; 3];
        let mut chosen = 0;
        let mut span = [pole, Vec4::ZERO, Vec4::ZERO, Vec4::ZERO];
        while chosen < 3 {
            let mut best = (f64::NEG_INFINITY, Vec4::ZERO);
            for i in 0..4 {
                let mut r = Vec4::basis(i);
                for _ in 0..2 {
                    for b in &span[..=chosen] {
                        r = r - *b * b.dot(r);
                    }
                }
                let n = r.norm();
                if n > best.0 {
                    best = (n, r);
                }
            }
            let b = best.1 * (1.0 / best.0);
            basis[chosen] = b;
            span[chosen + 1] = b;
            chosen += 1;
        }
        Self::with_basis(pole, basis, true)
    }

    /// Projection with a caller-chosen basis of `pole^⊥`. When `fix_orientation`
    /// is set the last basis vector is negated if needed; otherwise a
    /// wrongly oriented basis is an error.
    pub fn with_basis(pole: Vec4, mut basis: [Vec4; 3], fix_orientation: bool) -> Result<Self> {
        for (i, b) in basis.iter().enumerate() {
            if libm::fabs(b.dot(*b) - 1.0) > 1e-9 || libm::fabs(b.dot(pole)) > 1e-9 {
                return Err(Error::invalid("basis must be orthonormal and orthogonal to the pole"));
            }
            for c in &basis[i + 1..] {
                if libm::fabs(b.dot(*c)) > 1e-9 {
                    return Err(Error::invalid("basis must be orthonormal"));
                }
            }
        }
        if det4([basis[0], basis[1], basis[2], pole]) < 0.0 {
            if !fix_orientation {
                return Err(Error::invalid("basis has the wrong orientation"));
            }
            basis[2] = -basis[2];
        }
        Ok(Stereographic { pole, basis })
    }

    pub fn pole(&self) -> Vec4 {
        self.pole
    }

    pub fn basis(&self) -> [Vec4; 3] {
        self.basis
    }

    pub fn project(&self, x: Vec4) -> [f64; 3] {
        let s = 1.0 - self.pole.dot(x);
        self.basis.map(|b| b.dot(x) / s)
    }

    /// Image point and the pushed-forward tangent `dx`.
    pub fn project_with_derivative(&self, x: Vec4, dx: Vec4) -> ([f64; 3], [f64; 3]) {
        let s = 1.0 - self.pole.dot(x);
        let ds = self.pole.dot(dx);
        let y = self.basis.map(|b| b.dot(x) / s);
        let dy = core::array::from_fn(|i| self.basis[i].dot(dx) / s + y[i] * ds / s);
        (y, dy)
    }

    /// Image of a great circle that avoids the pole.
    pub fn image_circle(&self, c: &GreatCircle) -> ImageCircle {
        let third = core::f64::consts::TAU / 3.0;
        let a = self.project(c.point(0.0));
        let b = self.project(c.point(third));
        let p = self.project(c.point(2.0 * third));
        // Circumcircle of (a, b, p), center = p + ((|x|²y − |y|²x) × (x × y)) / (2|x × y|²)
        let x = sub(a, p);
        let y = sub(b, p);
        let xy = cross(x, y);
        let nxy = dot(xy, xy);
        let w = sub(scale(y, dot(x, x)), scale(x, dot(y, y)));
        let off = scale(cross(w, xy), 0.5 / nxy);
        let center = add(p, off);
        let radius = libm::sqrt(dot(off, off));
        let n = cross(sub(b, a), sub(p, a));
        let normal = scale(n, 1.0 / libm::sqrt(dot(n, n)));
        ImageCircle { center, radius, normal }
    }
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub(crate) fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}
