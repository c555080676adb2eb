//! The `certify` pipeline: build `D_{p/q}`, run every check and assemble a
//! [`CertificateDocument`].

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::time::Instant;

use gclink_core::covering::covering_certificate_for;
use gclink_core::fibration::{all_fibrations, sampled_winding};
use gclink_core::greatlink::{axis_intersections, construct_dpq, disjointness_report, linking_matrix};
use gclink_core::twobridge::{verdict, TwoBridgeFraction};
use gclink_core::Error;

use crate::document::{
    axis_docs, component_docs, covering_doc, fibration_doc, CertificateDocument, InputEcho, Real, VerdictDoc, CERTIFICATE_SCHEMA,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    pub tolerance: f64,
    /// Samples per component for the monotonicity cross-check.
    pub samples: usize,
    pub timings: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { tolerance: gclink_core::DEFAULT_TOLERANCE, samples: 1000, timings: false }
    }
}

/// Why a command did not certify. Maps onto exit codes 2 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Invalid(String),
    Falsified(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Falsified(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Falsified(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::TrivialLink => Failure::Invalid(e.to_string()),
            _ => Failure::Falsified(e.to_string()),
        }
    }
}

pub fn certify(f: TwoBridgeFraction, opts: &CertifyOptions) -> Result<CertificateDocument, Failure> {
    if f.is_trivial() {
        return Err(Error::TrivialLink.into());
    }
    if !(opts.samples >= 3) {
        return Err(Failure::Invalid(format!("--samples must be at least 3, got {}", opts.samples)));
    }
    let (p, q) = (f.p(), f.q());
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, Real>| {
        timings.insert(name.to_string(), Real(clock.elapsed().as_secs_f64()));
        clock = Instant::now();
    };

    let link = construct_dpq(p, q)?;
    let distance = disjointness_report(&link)?;
    if !(distance.min_distance > opts.tolerance) {
        return Err(Failure::Falsified(format!(
            "components {:?} are {:e} apart, not above tolerance {:e}",
            distance.pair, distance.min_distance, opts.tolerance
        )));
    }
    let lk = linking_matrix(&link)?;
    let hits = axis_intersections(&link)?;
    lap("construct", &mut timings);

    let covering = covering_certificate_for(&link)?;
    lap("covering", &mut timings);

    let fibrations = all_fibrations(&link)?;
    let mut fibration_docs = Vec::with_capacity(fibrations.len());
    for cert in &fibrations {
        let base = &link.components()[cert.base_index];
        let mut sampled = Vec::with_capacity(cert.records.len());
        for rec in &cert.records {
            let s = sampled_winding(base, &link.components()[rec.component], opts.samples);
            let expected = f64::from(rec.winding_sign) * TAU;
            if !s.strictly_monotone || !((s.total - expected).abs() < 1e-6) {
                return Err(Failure::Falsified(format!(
                    "sampled winding of component {} around {} is {} (monotone: {})",
                    rec.component, cert.base_index, s.total, s.strictly_monotone
                )));
            }
            sampled.push((s.total, s.strictly_monotone));
        }
        fibration_docs.push(fibration_doc(cert, &sampled));
    }
    lap("fibration", &mut timings);

    let v = verdict(f)?;
    lap("verdict", &mut timings);

    Ok(CertificateDocument {
        schema: CERTIFICATE_SCHEMA.into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        input: InputEcho { fraction: f.to_string(), p, q, tolerance: Real(opts.tolerance), samples: opts.samples },
        components: component_docs(&link, q),
        min_distance: Real(distance.min_distance),
        linking_matrix: lk,
        axis_pairing: axis_docs(&hits),
        covering: covering_doc(&covering),
        fibrations: fibration_docs,
        verdict: VerdictDoc::from(&v),
        timings: opts.timings.then_some(timings),
    })
}
