//! Covering data for `S³ − D_{p/q} → L(q,p) − K̃ → S³ − K_{p/q}`.
//!
//! The first map is the quotient by `φ_{p/q}`. The checks here are finite:
//! freeness of the action by modular arithmetic, invariance of the link, the
//! orbit structure, the axis pairing, and the arc pattern inside the two
//! wedges `{0 ≤ arg z ≤ 2π/q, |w| ≤ √2/2}` and `{0 ≤ arg w ≤ 2π/q, |z| ≤ √2/2}`
//! that together form a fundamental domain.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::geom4::{phi_isometry, RationalAngle};
use crate::greatlink::{axis_pairing_holds, construct_dpq, cycles, normalize_pq, verify_invariance, GreatCircleLink, OrbitLabel};
use crate::{Error, Result};

/// The lens space `L(q, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LensSpace {
    pub q: i64,
    pub p: i64,
}

impl LensSpace {
    pub fn new(q: i64, p: i64) -> Result<Self> {
        if q < 1 {
            return Err(Error::invalid(alloc::format!("q must be at least 1, got {q}")));
        }
        let p = p.rem_euclid(q);
        if p.gcd(&q) != 1 {
            return Err(Error::invalid(alloc::format!("gcd({p}, {q}) != 1")));
        }
        Ok(LensSpace { q, p })
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.q, self.p)
    }
}

/// Circle of fixed points of some `φ^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedCircle {
    /// `{(z, 0)}`, fixed when `k ≡ 0 (mod q)`.
    ZAxis,
    /// `{(0, w)}`, fixed when `k·p ≡ 0 (mod q)`.
    WAxis,
}

impl fmt::Display for FixedCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixedCircle::ZAxis => "z-axis",
            FixedCircle::WAxis => "w-axis",
        })
    }
}

/// One row of the witness table: `φ^k` rotates `z` by `2π·z_residue/q` and
/// `w` by `2π·w_residue/q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeActionRow {
    pub k: i64,
    pub z_residue: i64,
    pub w_residue: i64,
    pub fixed: Option<FixedCircle>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeActionReport {
    pub p: i64,
    pub q: i64,
    pub free: bool,
    pub table: Vec<FreeActionRow>,
}

impl FreeActionReport {
    /// First `(k, circle)` with a fixed point.
    pub fn first_fixed(&self) -> Option<(i64, FixedCircle)> {
        self.table.iter().find_map(|r| r.fixed.map(|c| (r.k, c)))
    }
}

/// Symbolic fixed point check for `φ^k`, `0 < k < q`.
///
/// A point `(z, w)` is fixed iff the z-rotation is trivial or `z = 0`, and the
/// w-rotation is trivial or `w = 0`. Non-coprime input is reported, not
/// rejected.
pub fn verify_free_action(p: i64, q: i64) -> Result<FreeActionReport> {
    if q < 1 {
        return Err(Error::invalid(alloc::format!("q must be at least 1, got {q}")));
    }
    let table: Vec<FreeActionRow> = (1..q)
        .map(|k| {
            let z_residue = k.rem_euclid(q);
            let w_residue = (k * p).rem_euclid(q);
            let fixed = if z_residue == 0 {
                Some(FixedCircle::ZAxis)
            } else if w_residue == 0 {
                Some(FixedCircle::WAxis)
            } else {
                None
            };
            FreeActionRow { k, z_residue, w_residue, fixed }
        })
        .collect();
    let free = table.iter().all(|r| r.fixed.is_none());
    Ok(FreeActionReport { p, q, free, table })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wedge {
    Z,
    W,
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Wedge::Z => "Z",
            Wedge::W => "W",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WedgeArc {
    pub component: usize,
    pub label: Option<OrbitLabel>,
    /// `arg z` (Z wedge) or `arg w` (W wedge) along the arc.
    pub level: RationalAngle,
    /// Rotation of the other coordinate, in `[0, π)`.
    pub rotation: RationalAngle,
}

/// Integers behind the rotation of the level `π/q` arc in the W wedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceWitness {
    /// `q` odd: `2p·x = 1 + q·y`, so `φ^x` carries `g_{0,0}` to the circle
    /// at w-level `π/q (mod π)`, whose z-rotation is `2x·π/q`.
    Odd { x: i64, y: i64 },
    /// `q` even: odd `n` with `n·p ≡ 1 (mod q)`; the arc lies on the shifted
    /// orbit and has z-rotation `n·π/q`.
    Even { n: i64 },
}

impl CongruenceWitness {
    /// Predicted z-rotation of the level `π/q` arc, in units of `π/q`, mod `q`.
    pub fn rotation_units(&self, q: i64) -> i64 {
        match *self {
            CongruenceWitness::Odd { x, .. } => (2 * x).rem_euclid(q),
            CongruenceWitness::Even { n } => n.rem_euclid(q),
        }
    }
}

fn congruence_witness(p: i64, q: i64) -> Option<CongruenceWitness> {
    if q % 2 == 1 {
        (0..q).find(|x| (2 * p * x - 1).rem_euclid(q) == 0).map(|x| CongruenceWitness::Odd { x, y: (2 * p * x - 1) / q })
    } else {
        (1..q).step_by(2).find(|n| (n * p - 1).rem_euclid(q) == 0).map(|n| CongruenceWitness::Even { n })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeArcReport {
    pub wedge: Wedge,
    pub arcs: Vec<WedgeArc>,
    pub witness: Option<CongruenceWitness>,
}

impl WedgeArcReport {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_levels(&self) -> Vec<RationalAngle> {
        self.arcs.iter().map(|a| a.level).collect()
    }

    pub fn arc_rotations(&self) -> Vec<RationalAngle> {
        self.arcs.iter().map(|a| a.rotation).collect()
    }
}

/// Arcs of a tagged `D_{p/q}` inside one wedge, sorted by level.
///
/// On `g_{a,b}` we have `z = cos t·e^{ia}`, `w = sin t·e^{ib}`, so the part
/// with `|w| ≤ √2/2` is two arcs with constant `arg z ∈ {a, a + π}` and w
/// sweeping the line through `e^{ib}`. The W wedge is the same with the
/// coordinates swapped.
pub fn wedge_arcs(link: &GreatCircleLink, wedge: Wedge) -> Result<Vec<WedgeArc>> {
    let (_, q) = link.provenance().ok_or_else(|| Error::invalid("link has no (p, q) provenance"))?;
    let mut arcs = Vec::new();
    for (i, c) in link.components().iter().enumerate() {
        let (a, b) = c.axis_tag().ok_or(Error::Untagged(i))?;
        let (level_angle, other) = match wedge {
            Wedge::Z => (a, b),
            Wedge::W => (b, a),
        };
        let base = level_angle.units_of(q).ok_or(Error::Untagged(i))?;
        for units in [base, (base + q) % (2 * q)] {
            if units <= 2 {
                arcs.push(WedgeArc {
                    component: i,
                    label: link.labels()[i],
                    level: RationalAngle::from_units(units, q)?,
                    rotation: other.mod_pi(),
                });
            }
        }
    }
    arcs.sort_by_key(|a| a.level);
    Ok(arcs)
}

pub fn wedge_arc_report(p: i64, q: i64, wedge: Wedge) -> Result<WedgeArcReport> {
    let link = construct_dpq(p, q)?;
    wedge_arc_report_for(&link, wedge)
}

fn wedge_arc_report_for(link: &GreatCircleLink, wedge: Wedge) -> Result<WedgeArcReport> {
    let (p, q) = link.provenance().ok_or_else(|| Error::invalid("link has no (p, q) provenance"))?;
    let witness = match wedge {
        Wedge::Z => None,
        Wedge::W => congruence_witness(p, q),
    };
    Ok(WedgeArcReport { wedge, arcs: wedge_arcs(link, wedge)?, witness })
}

/// Expected rotations, in units of `π/q`, of the arcs at levels 0, 1, 2.
fn expected_rotation_units(p: i64, q: i64, wedge: Wedge) -> [i64; 3] {
    let step = match wedge {
        Wedge::Z => p,
        Wedge::W => modular_inverse(p, q).unwrap_or(0),
    };
    [0, step.rem_euclid(q), (2 * step).rem_euclid(q)]
}

pub(crate) fn modular_inverse(p: i64, q: i64) -> Option<i64> {
    let e = p.rem_euclid(q).extended_gcd(&q);
    (e.gcd == 1).then(|| e.x.rem_euclid(q))
}

fn check_wedge(report: &WedgeArcReport, p: i64, q: i64) -> core::result::Result<(), alloc::string::String> {
    let levels: Vec<Option<i64>> = report.arcs.iter().map(|a| a.level.units_of(q)).collect();
    if levels != [Some(0), Some(1), Some(2)] {
        return Err(alloc::format!("{} wedge arc levels {:?} (units of pi/{q})", report.wedge, levels));
    }
    let rotations: Vec<Option<i64>> = report.arcs.iter().map(|a| a.rotation.units_of(q)).collect();
    let expected = expected_rotation_units(p, q, report.wedge).map(Some);
    if rotations != expected {
        return Err(alloc::format!("{} wedge arc rotations {:?}, expected {:?}", report.wedge, rotations, expected));
    }
    if let Some(w) = report.witness {
        if Some(w.rotation_units(q)) != rotations[1] {
            return Err(alloc::format!("congruence witness {w:?} disagrees with the level pi/{q} arc"));
        }
    }
    if q % 2 == 0 {
        let middle = report.arcs[1].label.map(|l| l.orbit);
        if middle != Some(crate::greatlink::Orbit::Shifted) {
            return Err(alloc::format!("{} wedge middle arc is on {:?}", report.wedge, middle));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitStructure {
    /// `q` odd: `φ` permutes all components cyclically.
    OneCycle(Vec<usize>),
    /// `q` even: the REAL and SHIFTED orbits.
    TwoCycles(Vec<usize>, Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringCertificate {
    pub source: (i64, i64),
    pub free_action: FreeActionReport,
    pub invariance_permutation: Vec<usize>,
    pub orbit_structure: OrbitStructure,
    pub axis_pairing_verified: bool,
    pub wedge_reports: [WedgeArcReport; 2],
    pub intermediate_quotient: LensSpace,
    /// Order `q` of the group times the 2-fold branched cover.
    pub total_degree: i64,
}

pub fn covering_certificate(p: i64, q: i64) -> Result<CoveringCertificate> {
    if q == 0 && p.abs() == 1 {
        return Err(Error::TrivialLink);
    }
    let p = normalize_pq(p, q)?;
    let link = construct_dpq(p, q)?;
    covering_certificate_for(&link)
}

/// Certificate for an already constructed `D_{p/q}`.
pub fn covering_certificate_for(link: &GreatCircleLink) -> Result<CoveringCertificate> {
    let fail = |msg: alloc::string::String| Err(Error::CertificateFailed(msg));
    let (p, q) = link.provenance().ok_or_else(|| Error::invalid("link has no (p, q) provenance"))?;
    let free_action = verify_free_action(p, q)?;
    if !free_action.free {
        return fail(alloc::format!("free action: {:?}", free_action.first_fixed()));
    }
    let sigma = verify_invariance(link, &phi_isometry(p, q)?)?;
    let mut cs = cycles(&sigma);
    let orbit_structure = match (q % 2, cs.len()) {
        (1, 1) if cs[0].len() as i64 == q => OrbitStructure::OneCycle(cs.remove(0)),
        (0, 2) if cs.iter().all(|c| 2 * c.len() as i64 == q) => {
            let second = cs.remove(1);
            OrbitStructure::TwoCycles(cs.remove(0), second)
        }
        _ => return fail(alloc::format!("orbit structure: cycle lengths {:?}", cs.iter().map(Vec::len).collect::<Vec<_>>())),
    };
    if !axis_pairing_holds(link)? {
        return fail(alloc::format!("axis pairing l = {p}k (mod {})", 2 * q));
    }
    let z = wedge_arc_report_for(link, Wedge::Z)?;
    let w = wedge_arc_report_for(link, Wedge::W)?;
    for report in [&z, &w] {
        if let Err(msg) = check_wedge(report, p, q) {
            return fail(msg);
        }
    }
    Ok(CoveringCertificate {
        source: (p, q),
        free_action,
        invariance_permutation: sigma,
        orbit_structure,
        axis_pairing_verified: true,
        wedge_reports: [z, w],
        intermediate_quotient: LensSpace::new(q, p)?,
        total_degree: 2 * q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greatlink::Orbit;
    use alloc::string::ToString;

    fn units(v: &[RationalAngle], q: i64) -> Vec<i64> {
        v.iter().map(|a| a.units_of(q).unwrap()).collect()
    }

    #[test]
    fn free_action_examples() {
        let r = verify_free_action(2, 5).unwrap();
        assert!(r.free);
        assert_eq!(r.table.len(), 4);
        let trivial = verify_free_action(1, 1).unwrap();
        assert!(trivial.free && trivial.table.is_empty());
        let bad = verify_free_action(2, 4).unwrap();
        assert!(!bad.free);
        assert_eq!(bad.first_fixed(), Some((2, FixedCircle::WAxis)));
        assert!(verify_free_action(1, 0).is_err());
    }

    #[test]
    fn wedges_of_d25() {
        let z = wedge_arc_report(2, 5, Wedge::Z).unwrap();
        assert_eq!(z.arc_count(), 3);
        assert_eq!(units(&z.arc_levels(), 5), [0, 1, 2]);
        assert_eq!(units(&z.arc_rotations(), 5), [0, 2, 4]);
        let w = wedge_arc_report(2, 5, Wedge::W).unwrap();
        assert_eq!(units(&w.arc_levels(), 5), [0, 1, 2]);
        // 2·2·4 = 1 + 5·3, and the level π/5 arc sits on φ⁴(g_{0,0}).
        assert_eq!(w.witness, Some(CongruenceWitness::Odd { x: 4, y: 3 }));
        assert_eq!(units(&w.arc_rotations(), 5), [0, 3, 1]);
    }

    #[test]
    fn even_middle_arc_is_shifted() {
        let z = wedge_arc_report(3, 8, Wedge::Z).unwrap();
        assert_eq!(z.arcs[1].label.unwrap().orbit, Orbit::Shifted);
        assert_eq!(z.arcs[1].rotation, RationalAngle::new(3, 8).unwrap());
        let w = wedge_arc_report(3, 8, Wedge::W).unwrap();
        assert_eq!(w.witness, Some(CongruenceWitness::Even { n: 3 }));
    }

    #[test]
    fn certificates() {
        let c = covering_certificate(2, 5).unwrap();
        assert_eq!(c.total_degree, 10);
        assert_eq!(c.intermediate_quotient, LensSpace { q: 5, p: 2 });
        assert_eq!(c.intermediate_quotient.to_string(), "L(5,2)");
        assert!(matches!(c.orbit_structure, OrbitStructure::OneCycle(ref v) if v.len() == 5));
        assert_eq!(covering_certificate(1, 3).unwrap().total_degree, 6);
        let even = covering_certificate(1, 4).unwrap();
        assert!(matches!(even.orbit_structure, OrbitStructure::TwoCycles(ref a, ref b) if a.len() == 2 && b.len() == 2));
        assert_eq!(covering_certificate(1, 0), Err(Error::TrivialLink));
        assert!(covering_certificate(2, 4).is_err());
    }

    #[test]
    fn all_small_fractions_certify() {
        for q in 2..=50i64 {
            for p in 1..q {
                if p.gcd(&q) == 1 {
                    let c = covering_certificate(p, q).unwrap_or_else(|e| panic!("{p}/{q}: {e}"));
                    assert_eq!(c.total_degree, 2 * q);
                }
            }
        }
    }
}
