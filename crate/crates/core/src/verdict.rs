//! Fibration verdicts shared by the two-bridge and Montesinos pipelines.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::covering::CoveringCertificate;
use crate::montesinos::OrbifoldBase;
use crate::twobridge::EvenContinuedFraction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictStatus {
    Fibered,
    VirtuallyFibered,
    OutOfScope,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Fibered => "FIBERED",
            VerdictStatus::VirtuallyFibered => "VIRTUALLY_FIBERED",
            VerdictStatus::OutOfScope => "OUT_OF_SCOPE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    /// A `±2` expansion of some fraction in the Schubert class.
    EvenExpansion(EvenContinuedFraction),
    /// The complement is covered, with the given total degree, by the
    /// complement of `D_{p/q}`.
    GreatCircleCover { p: i64, q: i64, degree: i64, certificate: Box<CoveringCertificate> },
    /// Double branched cover is spherical; the great circle cover exists but
    /// is not constructed.
    SphericalDoubleCover { base: OrbifoldBase, euler_number: Ratio<i64> },
    Reason(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VirtualFibrationVerdict {
    pub input: String,
    pub status: VerdictStatus,
    pub evidence: Evidence,
    /// Conventions and search limits that the verdict depends on.
    pub metadata: Vec<(String, String)>,
}

impl VirtualFibrationVerdict {
    pub(crate) fn new(input: impl Into<String>, status: VerdictStatus, evidence: Evidence) -> Self {
        VirtualFibrationVerdict { input: input.into(), status, evidence, metadata: Vec::new() }
    }

    pub(crate) fn with(mut self, key: &str, value: impl Into<String>) -> Self {
        self.metadata.push((key.into(), value.into()));
        self
    }

    pub fn metadata_value(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::EvenExpansion(e) => write!(f, "{e}"),
            Evidence::GreatCircleCover { p, q, degree, .. } => write!(f, "covered by S^3 - D_{p}/{q}, degree {degree}"),
            Evidence::SphericalDoubleCover { base, euler_number } => {
                write!(f, "spherical double branched cover: base {base}, Euler number {euler_number}")
            }
            Evidence::Reason(r) => f.write_str(r),
        }
    }
}
