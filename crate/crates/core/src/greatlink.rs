//! The great circle links `D_{p/q}`.
//!
//! For odd `q`, `D_{p/q}` is the orbit of the real great circle
//! `g_{0,0} = {(z, w) ∈ R²}` under `φ_{p/q}`. For even `q` the orbit only has
//! `q/2` distinct circles (`φ^{q/2}` is the antipodal map on each of them),
//! and the orbit of `g_{π/q, pπ/q}` supplies the other `q/2` components.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::geom4::{
    apply_isometry, circle_distance, circle_relation, linking_number, phi_isometry, CircleRelation, GreatCircle, Isometry,
    RationalAngle,
};
use crate::{Error, Result, DEFAULT_TOLERANCE};

/// Which generator a component of `D_{p/q}` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orbit {
    /// Orbit of `g_{0,0}`.
    Real,
    /// Orbit of `g_{π/q, pπ/q}` (even `q` only).
    Shifted,
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orbit::Real => "REAL",
            Orbit::Shifted => "SHIFTED",
        })
    }
}

/// Component `φ^index(generator)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitLabel {
    pub orbit: Orbit,
    pub index: usize,
}

/// A finite set of pairwise disjoint great circles.
#[derive(Debug, Clone, PartialEq)]
pub struct GreatCircleLink {
    components: Vec<GreatCircle>,
    labels: Vec<Option<OrbitLabel>>,
    provenance: Option<(i64, i64)>,
}

impl GreatCircleLink {
    /// Fails with [`Error::ComponentsNotDisjoint`] on the first pair of
    /// components that meet or coincide.
    pub fn new(components: Vec<GreatCircle>) -> Result<Self> {
        let labels = alloc::vec![None; components.len()];
        Self::assemble(components, labels, None, DEFAULT_TOLERANCE)
    }

    /// As [`new`](Self::new) with a caller-chosen floating tolerance for
    /// untagged circles.
    pub fn with_tolerance(components: Vec<GreatCircle>, tol: f64) -> Result<Self> {
        let labels = alloc::vec![None; components.len()];
        Self::assemble(components, labels, None, tol)
    }

    fn assemble(components: Vec<GreatCircle>, labels: Vec<Option<OrbitLabel>>, provenance: Option<(i64, i64)>, tol: f64) -> Result<Self> {
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                if circle_relation(&components[i], &components[j], tol) != CircleRelation::Disjoint {
                    return Err(Error::ComponentsNotDisjoint(i, j));
                }
            }
        }
        Ok(GreatCircleLink { components, labels, provenance })
    }

    pub fn components(&self) -> &[GreatCircle] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn labels(&self) -> &[Option<OrbitLabel>] {
        &self.labels
    }

    /// `(p, q)` for links built by [`construct_dpq`].
    pub fn provenance(&self) -> Option<(i64, i64)> {
        self.provenance
    }

    /// Image of every component under `r`, keeping labels and provenance.
    pub fn transformed(&self, r: &Isometry) -> Self {
        GreatCircleLink {
            components: self.components.iter().map(|c| apply_isometry(r, c)).collect(),
            labels: self.labels.clone(),
            provenance: self.provenance,
        }
    }
}

/// Checks `q ≥ 2`, `gcd(p, q) = 1` and returns `p mod q`.
pub(crate) fn normalize_pq(p: i64, q: i64) -> Result<i64> {
    if q < 2 {
        return Err(Error::invalid(alloc::format!("q must be at least 2, got {q}")));
    }
    let p = p.rem_euclid(q);
    if p.gcd(&q) != 1 {
        return Err(Error::invalid(alloc::format!("gcd({p}, {q}) != 1")));
    }
    Ok(p)
}

/// Builds `D_{p/q}` with exact axis tags, components ordered REAL first and
/// then by orbit index.
pub fn construct_dpq(p: i64, q: i64) -> Result<GreatCircleLink> {
    let p = normalize_pq(p, q)?;
    let phi = phi_isometry(p, q)?;
    let mut generators = alloc::vec![(Orbit::Real, GreatCircle::from_axes(RationalAngle::ZERO, RationalAngle::ZERO))];
    if q % 2 == 0 {
        generators.push((Orbit::Shifted, GreatCircle::from_axes(RationalAngle::new(1, q)?, RationalAngle::new(p, q)?)));
    }
    let mut components: Vec<GreatCircle> = Vec::with_capacity(q as usize);
    let mut labels = Vec::with_capacity(q as usize);
    for (orbit, generator) in generators {
        let mut current = generator;
        for index in 0..q as usize {
            // φ^k and φ^{k+q/2} give the same circle when q is even.
            if !components.iter().any(|c| circle_relation(c, &current, DEFAULT_TOLERANCE) == CircleRelation::Equal) {
                components.push(current);
                labels.push(Some(OrbitLabel { orbit, index }));
            }
            current = apply_isometry(&phi, &current);
        }
    }
    let link = GreatCircleLink::assemble(components, labels, Some((p, q)), DEFAULT_TOLERANCE)?;
    if link.len() != q as usize {
        return Err(Error::CertificateFailed(alloc::format!("D_{p}/{q} has {} components, expected {q}", link.len())));
    }
    Ok(link)
}

/// Where one component of a tagged link crosses the two axes, in units of
/// `π/q`. The first entry of each pair is the component's own tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxisHits {
    pub component: usize,
    pub z: [i64; 2],
    pub w: [i64; 2],
}

pub fn axis_intersections(link: &GreatCircleLink) -> Result<Vec<AxisHits>> {
    let (_, q) = link.provenance.ok_or_else(|| Error::invalid("link has no (p, q) provenance"))?;
    link.components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (a, b) = c.axis_tag().ok_or(Error::Untagged(i))?;
            let k = a.units_of(q).ok_or(Error::Untagged(i))?;
            let l = b.units_of(q).ok_or(Error::Untagged(i))?;
            Ok(AxisHits { component: i, z: [k, (k + q) % (2 * q)], w: [l, (l + q) % (2 * q)] })
        })
        .collect()
}

/// `true` when every component's tag satisfies `l ≡ p·k (mod 2q)`.
pub fn axis_pairing_holds(link: &GreatCircleLink) -> Result<bool> {
    let (p, q) = link.provenance.ok_or_else(|| Error::invalid("link has no (p, q) provenance"))?;
    Ok(axis_intersections(link)?.iter().all(|h| (h.w[0] - p * h.z[0]).rem_euclid(2 * q) == 0))
}

/// The permutation `σ` with `r(component_i) = component_σ(i)` as point sets.
pub fn verify_invariance(link: &GreatCircleLink, r: &Isometry) -> Result<Vec<usize>> {
    verify_invariance_with_tolerance(link, r, DEFAULT_TOLERANCE)
}

pub fn verify_invariance_with_tolerance(link: &GreatCircleLink, r: &Isometry, tol: f64) -> Result<Vec<usize>> {
    let mut sigma = Vec::with_capacity(link.len());
    let mut used = alloc::vec![false; link.len()];
    for (i, c) in link.components.iter().enumerate() {
        let image = apply_isometry(r, c);
        let j = link
            .components
            .iter()
            .position(|d| circle_relation(&image, d, tol) == CircleRelation::Equal)
            .ok_or(Error::NotInvariant(i))?;
        if used[j] {
            return Err(Error::NotInvariant(i));
        }
        used[j] = true;
        sigma.push(j);
    }
    Ok(sigma)
}

/// Cycle decomposition, each cycle starting at its smallest element.
pub fn cycles(permutation: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = alloc::vec![false; permutation.len()];
    let mut out = Vec::new();
    for start in 0..permutation.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = permutation[i];
        }
        out.push(cycle);
    }
    out
}

/// Symmetric matrix of pairwise linking numbers, zero on the diagonal.
pub fn linking_matrix(link: &GreatCircleLink) -> Result<Vec<Vec<i8>>> {
    let n = link.len();
    let mut m = alloc::vec![alloc::vec![0i8; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let lk = linking_number(&link.components[i], &link.components[j]).map_err(|_| Error::ComponentsNotDisjoint(i, j))?;
            m[i][j] = lk;
            m[j][i] = lk;
        }
    }
    Ok(m)
}

/// Closest pair of components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisjointnessReport {
    pub min_distance: f64,
    pub pair: Option<(usize, usize)>,
}

pub fn disjointness_report(link: &GreatCircleLink) -> Result<DisjointnessReport> {
    let mut report = DisjointnessReport { min_distance: f64::INFINITY, pair: None };
    for i in 0..link.len() {
        for j in i + 1..link.len() {
            let d = circle_distance(&link.components[i], &link.components[j]);
            if !(d > 0.0) {
                return Err(Error::ComponentsNotDisjoint(i, j));
            }
            if d < report.min_distance {
                report = DisjointnessReport { min_distance: d, pair: Some((i, j)) };
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom4::{Isometry, Vec4};
    use crate::math::PI;

    fn tag_units(link: &GreatCircleLink) -> Vec<(i64, i64)> {
        axis_intersections(link).unwrap().iter().map(|h| (h.z[0], h.w[0])).collect()
    }

    #[test]
    fn d25() {
        let link = construct_dpq(2, 5).unwrap();
        assert_eq!(link.len(), 5);
        assert_eq!(link.provenance(), Some((2, 5)));
        assert_eq!(tag_units(&link), [(0, 0), (2, 4), (4, 8), (6, 2), (8, 6)]);
        let mut zs: Vec<i64> = axis_intersections(&link).unwrap().iter().flat_map(|h| h.z).collect();
        zs.sort();
        assert_eq!(zs, (0..10).collect::<Vec<_>>());
        let sigma = verify_invariance(&link, &phi_isometry(2, 5).unwrap()).unwrap();
        assert_eq!(cycles(&sigma), [[0, 1, 2, 3, 4]]);
        assert!(axis_pairing_holds(&link).unwrap());
    }

    #[test]
    fn d12() {
        let link = construct_dpq(1, 2).unwrap();
        assert_eq!(tag_units(&link), [(0, 0), (1, 1)]);
        assert_eq!(link.labels()[1], Some(OrbitLabel { orbit: Orbit::Shifted, index: 0 }));
        let mut ws: Vec<i64> = axis_intersections(&link).unwrap().iter().flat_map(|h| h.w).collect();
        ws.sort();
        assert_eq!(ws, [0, 1, 2, 3]);
        let m = linking_matrix(&link).unwrap();
        assert_eq!(m[0][0], 0);
        assert_eq!(m[0][1].abs(), 1);
        assert_eq!(m[0][1], m[1][0]);
    }

    #[test]
    fn d13_and_even_orbits() {
        assert_eq!(construct_dpq(1, 3).unwrap().len(), 3);
        let link = construct_dpq(3, 8).unwrap();
        assert_eq!(link.len(), 8);
        let sigma = verify_invariance(&link, &phi_isometry(3, 8).unwrap()).unwrap();
        let cyc = cycles(&sigma);
        assert_eq!(cyc.len(), 2);
        for c in &cyc {
            assert_eq!(c.len(), 4);
            let orbit = link.labels()[c[0]].unwrap().orbit;
            assert!(c.iter().all(|&i| link.labels()[i].unwrap().orbit == orbit));
        }
    }

    #[test]
    fn rejects_bad_fractions() {
        assert!(construct_dpq(2, 4).is_err());
        assert!(construct_dpq(1, 1).is_err());
        assert!(construct_dpq(0, 5).is_err());
        assert_eq!(construct_dpq(7, 5).unwrap(), construct_dpq(2, 5).unwrap());
        assert_eq!(construct_dpq(-3, 5).unwrap(), construct_dpq(2, 5).unwrap());
    }

    #[test]
    fn identity_and_foreign_isometries() {
        let link = construct_dpq(3, 7).unwrap();
        assert_eq!(verify_invariance(&link, &Isometry::identity()).unwrap(), (0..7).collect::<Vec<_>>());
        let twist = Isometry::block_rotation(RationalAngle::new(1, 7).unwrap(), RationalAngle::ZERO);
        assert_eq!(verify_invariance(&link, &twist), Err(Error::NotInvariant(0)));
    }

    #[test]
    fn distances_are_exact() {
        let link = construct_dpq(2, 5).unwrap();
        let report = disjointness_report(&link).unwrap();
        // Closest pairs differ by π/5 on one axis and 2π/5 on the other.
        assert!((report.min_distance - PI / 5.0).abs() < 1e-12);
        let links = linking_matrix(&link).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(links[i][j].abs(), i8::from(i != j));
            }
        }
    }

    #[test]
    fn untagged_links() {
        let a = GreatCircle::z_axis();
        let b = GreatCircle::w_axis();
        let link = GreatCircleLink::new(alloc::vec![a, b]).unwrap();
        assert!(axis_intersections(&link).is_err());
        let c = GreatCircle::new(Vec4::basis(0), Vec4::basis(2)).unwrap();
        assert_eq!(GreatCircleLink::new(alloc::vec![a, b, c]), Err(Error::ComponentsNotDisjoint(0, 2)));
    }
}
