//! JSON certificate documents.
//!
//! Floats are written as decimal strings with 17 significant digits so that
//! they parse back to the same `f64`. Angles are strings `"num/den"` meaning
//! `num/den · π`; axis tags are integers in units of `π/q`.

use std::collections::BTreeMap;
use std::fmt;

use gclink_core::covering::{CongruenceWitness, CoveringCertificate, FreeActionReport, OrbitStructure, WedgeArcReport};
use gclink_core::fibration::FibrationCertificate;
use gclink_core::geom4::RationalAngle;
use gclink_core::greatlink::{AxisHits, GreatCircleLink};
use gclink_core::verdict::{Evidence, VirtualFibrationVerdict};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

pub const CERTIFICATE_SCHEMA: &str = "gclink.certificate/1";
pub const VERDICT_SCHEMA: &str = "gclink.verdict/1";

/// An `f64` that serializes as a round-trip exact decimal string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e}", self.0)
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Real;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a decimal string")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Real, E> {
                v.parse().map(Real).map_err(|_| E::custom(format!("not a float: {v:?}")))
            }
        }
        d.deserialize_str(V)
    }
}

fn angle(a: RationalAngle) -> String {
    a.to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub fraction: String,
    pub p: i64,
    pub q: i64,
    pub tolerance: Real,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub index: usize,
    pub orbit: String,
    pub orbit_index: usize,
    /// `(a, b)` of `g_{a,b}` in units of `π/q`.
    pub axis_tag: [i64; 2],
    pub u: [Real; 4],
    pub v: [Real; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisHitsDoc {
    pub component: usize,
    pub z: [i64; 2],
    pub w: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeActionRowDoc {
    pub k: i64,
    pub z_residue: i64,
    pub w_residue: i64,
    pub fixed: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeActionDoc {
    pub free: bool,
    pub table: Vec<FreeActionRowDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcDoc {
    pub component: usize,
    pub orbit: Option<String>,
    pub level_pi: String,
    pub rotation_pi: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessDoc {
    Odd { x: i64, y: i64 },
    Even { n: i64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WedgeDoc {
    pub wedge: String,
    pub arc_count: usize,
    pub arcs: Vec<ArcDoc>,
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringDoc {
    pub lens_space: String,
    pub total_degree: i64,
    pub free_action: FreeActionDoc,
    pub invariance_permutation: Vec<usize>,
    pub orbit_cycles: Vec<Vec<usize>>,
    pub axis_pairing_verified: bool,
    pub wedges: Vec<WedgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindingDoc {
    pub component: usize,
    pub winding_rate: Real,
    pub clearance: Real,
    pub winding_sign: i8,
    /// Unwrapped change of `arg w` from the sampled cross-check.
    pub sampled_total: Real,
    pub sampled_monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FibrationDoc {
    pub base: usize,
    pub fiber_punctures: usize,
    pub fiber_euler_characteristic: i64,
    pub records: Vec<WindingDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub schema: String,
    pub input: String,
    pub status: String,
    pub evidence: String,
    pub metadata: BTreeMap<String, String>,
}

impl From<&VirtualFibrationVerdict> for VerdictDoc {
    fn from(v: &VirtualFibrationVerdict) -> Self {
        let mut metadata: BTreeMap<String, String> = v.metadata.iter().cloned().collect();
        if let Evidence::EvenExpansion(e) = &v.evidence {
            let signs: Vec<&str> = e.signs.iter().map(|s| if *s > 0 { "+" } else { "-" }).collect();
            metadata.insert("expansion_signs".into(), signs.join(""));
            if let Some(value) = e.evaluate() {
                metadata.insert("expansion_value".into(), value.to_string());
            }
        }
        VerdictDoc {
            schema: VERDICT_SCHEMA.into(),
            input: v.input.clone(),
            status: v.status.to_string(),
            evidence: v.evidence.to_string(),
            metadata,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema: String,
    pub tool_version: String,
    pub input: InputEcho,
    pub components: Vec<ComponentDoc>,
    pub min_distance: Real,
    pub linking_matrix: Vec<Vec<i8>>,
    pub axis_pairing: Vec<AxisHitsDoc>,
    pub covering: CoveringDoc,
    pub fibrations: Vec<FibrationDoc>,
    pub verdict: VerdictDoc,
    /// Seconds per stage; only present when asked for, so that documents
    /// are otherwise byte-identical across runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, Real>>,
}

impl CertificateDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

pub(crate) fn component_docs(link: &GreatCircleLink, q: i64) -> Vec<ComponentDoc> {
    link.components()
        .iter()
        .zip(link.labels())
        .enumerate()
        .map(|(index, (c, label))| {
            let tag = c.axis_tag().map(|(a, b)| [a.units_of(q).unwrap_or(-1), b.units_of(q).unwrap_or(-1)]).unwrap_or([-1, -1]);
            ComponentDoc {
                index,
                orbit: label.map(|l| l.orbit.to_string()).unwrap_or_default(),
                orbit_index: label.map(|l| l.index).unwrap_or(0),
                axis_tag: tag,
                u: c.u().0.map(Real),
                v: c.v().0.map(Real),
            }
        })
        .collect()
}

pub(crate) fn axis_docs(hits: &[AxisHits]) -> Vec<AxisHitsDoc> {
    hits.iter().map(|h| AxisHitsDoc { component: h.component, z: h.z, w: h.w }).collect()
}

fn free_action_doc(r: &FreeActionReport) -> FreeActionDoc {
    FreeActionDoc {
        free: r.free,
        table: r
            .table
            .iter()
            .map(|row| FreeActionRowDoc {
                k: row.k,
                z_residue: row.z_residue,
                w_residue: row.w_residue,
                fixed: row.fixed.map(|c| c.to_string()),
            })
            .collect(),
    }
}

fn wedge_doc(r: &WedgeArcReport) -> WedgeDoc {
    WedgeDoc {
        wedge: r.wedge.to_string(),
        arc_count: r.arc_count(),
        arcs: r
            .arcs
            .iter()
            .map(|a| ArcDoc {
                component: a.component,
                orbit: a.label.map(|l| l.orbit.to_string()),
                level_pi: angle(a.level),
                rotation_pi: angle(a.rotation),
            })
            .collect(),
        witness: r.witness.map(|w| match w {
            CongruenceWitness::Odd { x, y } => WitnessDoc::Odd { x, y },
            CongruenceWitness::Even { n } => WitnessDoc::Even { n },
        }),
    }
}

pub(crate) fn covering_doc(c: &CoveringCertificate) -> CoveringDoc {
    let orbit_cycles = match &c.orbit_structure {
        OrbitStructure::OneCycle(a) => vec![a.clone()],
        OrbitStructure::TwoCycles(a, b) => vec![a.clone(), b.clone()],
    };
    CoveringDoc {
        lens_space: c.intermediate_quotient.to_string(),
        total_degree: c.total_degree,
        free_action: free_action_doc(&c.free_action),
        invariance_permutation: c.invariance_permutation.clone(),
        orbit_cycles,
        axis_pairing_verified: c.axis_pairing_verified,
        wedges: c.wedge_reports.iter().map(wedge_doc).collect(),
    }
}

pub(crate) fn fibration_doc(c: &FibrationCertificate, sampled: &[(f64, bool)]) -> FibrationDoc {
    FibrationDoc {
        base: c.base_index,
        fiber_punctures: c.fiber_punctures,
        fiber_euler_characteristic: c.fiber_euler_characteristic,
        records: c
            .records
            .iter()
            .zip(sampled)
            .map(|(r, &(total, monotone))| WindingDoc {
                component: r.component,
                winding_rate: Real(r.winding_rate),
                clearance: Real(r.clearance),
                winding_sign: r.winding_sign,
                sampled_total: Real(total),
                sampled_monotone: monotone,
            })
            .collect(),
    }
}
