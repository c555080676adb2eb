//! Argument parsing and the subcommands behind the `gclink` binary.
//!
//! Exit codes: 0 certified (or a verdict was produced), 1 a check was
//! falsified, 2 invalid input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use gclink_core::greatlink::{construct_dpq, linking_matrix};
use gclink_core::montesinos::{self, orbifold_euler_char, MontesinosLink, Tangle};
use gclink_core::twobridge::{self, default_max_depth, equivalence_class, schubert_equivalent, TwoBridgeFraction};

use crate::document::{CertificateDocument, VerdictDoc};
use crate::pipeline::{certify, CertifyOptions, Failure};
use crate::projection::{render_projection, ProjectionOptions};
use crate::recheck::recheck;
use crate::svg::to_svg;

#[derive(Debug, Parser)]
#[command(name = "gclink", version, about = "Great circle links covering two-bridge link complements")]
pub struct Cli {
    /// Numerical tolerance for disjointness and re-checks.
    #[arg(long, global = true, default_value_t = gclink_core::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build D_{p/q}, certify fibrations and covering data, emit JSON.
    Certify {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Samples per component for the winding cross-check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Record per-stage timings in the document.
        #[arg(long)]
        timings: bool,
    },
    /// Fiberedness verdict for the two-bridge link K_{p/q}.
    Twobridge {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
        /// Depth cap for the ±2 continued fraction search (default 2q).
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Spherical test and verdict for a Montesinos link.
    Montesinos {
        /// Rational tangle beta/alpha; repeat for each tangle.
        #[arg(short = 't', long = "tangle", required = true)]
        tangles: Vec<String>,
        /// Integral twist e0.
        #[arg(short = 'e', long = "e0", default_value_t = 0, allow_negative_numbers = true)]
        e0: i64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Schubert classes of fractions, and whether they agree.
    Equiv {
        #[arg(required = true, allow_hyphen_values = true)]
        fractions: Vec<String>,
    },
    /// Draw the standard projection of D_{p/q} as SVG.
    Project {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Polyline samples per component.
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
    /// Re-validate a certificate document from its serialized frames.
    Recheck { file: PathBuf },
}

fn parse_fraction(s: &str) -> Result<TwoBridgeFraction, Failure> {
    s.parse().map_err(Failure::from)
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let tolerance = cli.tolerance;
    let result = match cli.command {
        Command::Certify { fraction, json, samples, timings } => cmd_certify(&fraction, json.as_deref(), samples, timings, tolerance, out),
        Command::Twobridge { fraction, max_depth, json } => cmd_twobridge(&fraction, max_depth, json.as_deref(), out),
        Command::Montesinos { tangles, e0, json } => cmd_montesinos(&tangles, e0, json.as_deref(), out),
        Command::Equiv { fractions } => cmd_equiv(&fractions, out),
        Command::Project { fraction, svg, samples } => cmd_project(&fraction, svg.as_deref(), samples, out, err),
        Command::Recheck { file } => cmd_recheck(&file, tolerance, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "gclink: {}", f.message());
            f.exit_code()
        }
    }
}

fn cmd_certify(
    fraction: &str,
    json: Option<&Path>,
    samples: usize,
    timings: bool,
    tolerance: f64,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    if !(tolerance > 0.0) {
        return Err(Failure::Invalid(format!("tolerance must be positive, got {tolerance}")));
    }
    let f = parse_fraction(fraction)?;
    let doc = certify(f, &CertifyOptions { tolerance, samples, timings })?;
    let text = doc.to_json();
    match json {
        Some(path) => {
            write_output(path, &(text + "\n"))?;
            let _ = writeln!(out, "D_{f}: {} components, min distance {}", doc.components.len(), doc.min_distance);
            let _ = writeln!(
                out,
                "covering: {}, degree {}, orbits {:?}",
                doc.covering.lens_space,
                doc.covering.total_degree,
                doc.covering.orbit_cycles.iter().map(Vec::len).collect::<Vec<_>>()
            );
            let chi = doc.fibrations.first().map_or(1, |f| f.fiber_euler_characteristic);
            let _ = writeln!(out, "fibrations: {} certified, fiber Euler characteristic {chi}", doc.fibrations.len());
            let _ = writeln!(out, "verdict: {} ({})", doc.verdict.status, doc.verdict.evidence);
            let _ = writeln!(out, "wrote {}", path.display());
        }
        None => {
            let _ = writeln!(out, "{text}");
        }
    }
    Ok(0)
}

fn emit_verdict(doc: &VerdictDoc, json: Option<&Path>) -> Result<(), Failure> {
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(doc).expect("verdicts always serialize");
        write_output(path, &(text + "\n"))?;
    }
    Ok(())
}

fn cmd_twobridge(fraction: &str, max_depth: Option<usize>, json: Option<&Path>, out: &mut dyn Write) -> Result<u8, Failure> {
    let f = parse_fraction(fraction)?;
    let depth = max_depth.unwrap_or_else(|| default_max_depth(f));
    let v = twobridge::verdict_with_depth(f, depth)?;
    let _ = writeln!(out, "{}", v.input);
    if !f.is_trivial() {
        let class: Vec<String> = equivalence_class(f).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "kind: {}", if f.is_knot() { "knot" } else { "link" });
        let _ = writeln!(out, "class: {}", class.join(", "));
    }
    let _ = writeln!(out, "status: {}", v.status);
    let _ = writeln!(out, "evidence: {}", v.evidence);
    emit_verdict(&VerdictDoc::from(&v), json)?;
    Ok(0)
}

fn cmd_montesinos(tangles: &[String], e0: i64, json: Option<&Path>, out: &mut dyn Write) -> Result<u8, Failure> {
    let tangles = tangles.iter().map(|t| t.parse::<Tangle>()).collect::<Result<Vec<_>, _>>()?;
    let link = MontesinosLink::new(e0, tangles)?;
    let c = montesinos::classify(&link)?;
    let v = montesinos::verdict(&link)?;
    let _ = writeln!(out, "{link}");
    let _ = writeln!(out, "base: {}, orbifold Euler characteristic {}", c.base, orbifold_euler_char(&c.base));
    let _ = writeln!(out, "euler number: {}", c.euler_number);
    let _ = writeln!(out, "geometry: {} ({})", c.geometry, c.reason);
    let _ = writeln!(out, "status: {}", v.status);
    let _ = writeln!(out, "evidence: {}", v.evidence);
    if let Some(t) = v.metadata_value("two_bridge") {
        let _ = writeln!(out, "two-bridge: {t}");
    }
    emit_verdict(&VerdictDoc::from(&v), json)?;
    Ok(0)
}

fn cmd_equiv(fractions: &[String], out: &mut dyn Write) -> Result<u8, Failure> {
    let fs = fractions.iter().map(|s| parse_fraction(s)).collect::<Result<Vec<_>, _>>()?;
    for f in &fs {
        let class: Vec<String> = equivalence_class(*f).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "class of {f}: {}", class.join(", "));
    }
    if let Some((first, rest)) = fs.split_first() {
        for g in rest {
            let word = if schubert_equivalent(*first, *g) { "equivalent" } else { "not equivalent" };
            let _ = writeln!(out, "{first} and {g}: {word}");
        }
    }
    Ok(0)
}

fn cmd_project(fraction: &str, svg: Option<&Path>, samples: usize, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    let f = parse_fraction(fraction)?;
    if f.is_trivial() {
        return Err(gclink_core::Error::TrivialLink.into());
    }
    let link = construct_dpq(f.p(), f.q())?;
    let scene = render_projection(&link, &ProjectionOptions { samples, ..Default::default() }).map_err(|e| match e {
        crate::projection::ProjectionError::UnresolvedCrossing { .. } => Failure::Falsified(e.to_string()),
        _ => Failure::Invalid(e.to_string()),
    })?;
    for w in &scene.warnings {
        let _ = writeln!(err, "gclink: warning: {w}");
    }
    let text = to_svg(&scene);
    match svg {
        Some(path) => write_output(path, &text)?,
        None => {
            let _ = write!(out, "{text}");
        }
    }
    let _ = writeln!(err, "D_{f}: {} components, {} crossings", scene.curves.len(), scene.crossings.len());
    scene.check_linking(&linking_matrix(&link)?).map_err(Failure::Falsified)?;
    Ok(0)
}

fn cmd_recheck(file: &Path, tolerance: f64, out: &mut dyn Write) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", file.display())))?;
    let doc = CertificateDocument::from_json(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", file.display())))?;
    let report = recheck(&doc, tolerance);
    let _ = write!(out, "{report}");
    if report.passed() {
        let _ = writeln!(out, "certificate for {} re-validated", doc.input.fraction);
        Ok(0)
    } else {
        Ok(1)
    }
}
