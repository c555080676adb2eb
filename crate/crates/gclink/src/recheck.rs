//! Re-validates a [`CertificateDocument`] from its serialized frames.
//!
//! Nothing here calls into the geometry of `gclink-core`: determinants,
//! principal angles and the rotation `φ_{p/q}` are recomputed with plain
//! floating point and integer arithmetic.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::document::{CertificateDocument, ComponentDoc, WitnessDoc, CERTIFICATE_SCHEMA};

type V4 = [f64; 4];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RecheckReport {
    pub checks: Vec<Check>,
}

impl RecheckReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &'static str, failures: Vec<String>) {
        let passed = failures.is_empty();
        let detail = if passed {
            "ok".to_string()
        } else {
            let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
            format!("{} problem(s): {}", failures.len(), shown.join("; "))
        };
        self.checks.push(Check { name, passed, detail });
    }
}

impl fmt::Display for RecheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {:<22} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

fn dot(a: V4, b: V4) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn det4(m: [V4; 4]) -> f64 {
    // Columns m[0..4]; expand with 2×2 minors of the first two columns.
    let minor = |a: V4, b: V4, i: usize, j: usize| a[i] * b[j] - a[j] * b[i];
    let (a, b, c, d) = (m[0], m[1], m[2], m[3]);
    minor(a, b, 0, 1) * minor(c, d, 2, 3) - minor(a, b, 0, 2) * minor(c, d, 1, 3) + minor(a, b, 0, 3) * minor(c, d, 1, 2)
        + minor(a, b, 1, 2) * minor(c, d, 0, 3)
        - minor(a, b, 1, 3) * minor(c, d, 0, 2)
        + minor(a, b, 2, 3) * minor(c, d, 0, 1)
}

/// Largest singular value of the 2×2 matrix of inner products, `cos θ₁`.
fn cos_min_angle(u1: V4, v1: V4, u2: V4, v2: V4) -> f64 {
    let (a, b, c, d) = (dot(u1, u2), dot(u1, v2), dot(v1, u2), dot(v1, v2));
    let s = a * a + b * b + c * c + d * d;
    let det = a * d - b * c;
    let disc = (s * s - 4.0 * det * det).max(0.0).sqrt();
    ((s + disc) / 2.0).sqrt()
}

fn frame(c: &ComponentDoc) -> (V4, V4) {
    (c.u.map(|r| r.0), c.v.map(|r| r.0))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn inverse_mod(p: i64, q: i64) -> Option<i64> {
    (1..q).find(|x| (p * x).rem_euclid(q) == 1)
}

fn units_to_string(units: i64, q: i64) -> String {
    let g = gcd(units, q).max(1);
    if units == 0 {
        "0/1".into()
    } else {
        format!("{}/{}", units / g, q / g)
    }
}

pub fn recheck(doc: &CertificateDocument, tol: f64) -> RecheckReport {
    let mut report = RecheckReport::default();
    let (p, q) = (doc.input.p, doc.input.q);
    let n = doc.components.len();

    let mut bad = Vec::new();
    if doc.schema != CERTIFICATE_SCHEMA {
        bad.push(format!("schema {:?}", doc.schema));
    }
    if q < 2 || !(0 < p && p < q) || gcd(p, q) != 1 {
        bad.push(format!("fraction {p}/{q} is not normalized and coprime"));
    }
    if doc.input.fraction != format!("{p}/{q}") {
        bad.push(format!("input echo {:?}", doc.input.fraction));
    }
    let header_ok = bad.is_empty();
    report.record("input", bad);
    if !header_ok {
        return report;
    }

    report.record(
        "component count",
        if n as i64 == q { vec![] } else { vec![format!("{n} components for q = {q}")] },
    );

    let mut bad = Vec::new();
    for c in &doc.components {
        let (u, v) = frame(c);
        let r = (dot(u, u) - 1.0).abs().max((dot(v, v) - 1.0).abs()).max(dot(u, v).abs());
        if !(r < 1e-12) {
            bad.push(format!("component {} frame residual {r:e}", c.index));
        }
    }
    report.record("orthonormal frames", bad);

    let mut bad = Vec::new();
    for c in &doc.components {
        let (u, v) = frame(c);
        let (a, b) = (c.axis_tag[0] as f64 * PI / q as f64, c.axis_tag[1] as f64 * PI / q as f64);
        let eu = [a.cos(), a.sin(), 0.0, 0.0];
        let ev = [0.0, 0.0, b.cos(), b.sin()];
        let err = u.iter().zip(eu).chain(v.iter().zip(ev)).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        if !(err < 1e-12) {
            bad.push(format!("component {} differs from its tag by {err:e}", c.index));
        }
    }
    report.record("axis tags", bad);

    let mut bad = Vec::new();
    for c in &doc.components {
        let [k, l] = c.axis_tag;
        if (l - p * k).rem_euclid(2 * q) != 0 {
            bad.push(format!("component {}: {l} != {p}*{k} mod {}", c.index, 2 * q));
        }
    }
    for (h, c) in doc.axis_pairing.iter().zip(&doc.components) {
        let [k, l] = c.axis_tag;
        if h.component != c.index || h.z != [k, (k + q) % (2 * q)] || h.w != [l, (l + q) % (2 * q)] {
            bad.push(format!("axis pairing row {} disagrees with tag", h.component));
        }
    }
    if doc.axis_pairing.len() != n || !doc.covering.axis_pairing_verified {
        bad.push("axis pairing table incomplete or not verified".into());
    }
    report.record("axis pairing", bad);

    // Pairwise disjointness and linking numbers.
    let mut bad = Vec::new();
    let mut min_angle = f64::INFINITY;
    if doc.linking_matrix.len() != n || doc.linking_matrix.iter().any(|r| r.len() != n) {
        bad.push("linking matrix has the wrong shape".into());
    } else {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    if doc.linking_matrix[i][i] != 0 {
                        bad.push(format!("diagonal entry {i}"));
                    }
                    continue;
                }
                let (u1, v1) = frame(&doc.components[i]);
                let (u2, v2) = frame(&doc.components[j]);
                let d = det4([u1, v1, u2, v2]);
                let theta = cos_min_angle(u1, v1, u2, v2).min(1.0).acos();
                min_angle = min_angle.min(theta);
                if !(d.abs() > tol) {
                    bad.push(format!("components {i}, {j} meet (det {d:e})"));
                } else if doc.linking_matrix[i][j] != d.signum() as i8 {
                    bad.push(format!("linking ({i}, {j}) is {} but det is {d:e}", doc.linking_matrix[i][j]));
                }
            }
        }
    }
    if !((min_angle - doc.min_distance.0).abs() < 1e-6) || !(doc.min_distance.0 > tol) {
        bad.push(format!("min distance {} recomputed as {min_angle}", doc.min_distance));
    }
    report.record("disjoint and linked", bad);

    // φ_{p/q} acting on the frames.
    let mut bad = Vec::new();
    let (cz, sz) = ((TAU / q as f64).cos(), (TAU / q as f64).sin());
    let (cw, sw) = ((TAU * p as f64 / q as f64).cos(), (TAU * p as f64 / q as f64).sin());
    let phi = |x: V4| [cz * x[0] - sz * x[1], sz * x[0] + cz * x[1], cw * x[2] - sw * x[3], sw * x[2] + cw * x[3]];
    let mut sigma = Vec::with_capacity(n);
    for c in &doc.components {
        let (u, v) = frame(c);
        let (iu, iv) = (phi(u), phi(v));
        let hit = doc.components.iter().position(|d| {
            let (du, dv) = frame(d);
            let proj = |x: V4| dot(x, du).powi(2) + dot(x, dv).powi(2);
            (proj(iu) - 1.0).abs() < 1e-9 && (proj(iv) - 1.0).abs() < 1e-9
        });
        match hit {
            Some(j) => sigma.push(j),
            None => {
                bad.push(format!("image of component {} is not a component", c.index));
                sigma.push(usize::MAX);
            }
        }
    }
    if sigma != doc.covering.invariance_permutation {
        bad.push(format!("permutation {:?} recomputed as {sigma:?}", doc.covering.invariance_permutation));
    }
    if bad.is_empty() {
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        let mut cycles = Vec::new();
        for s in 0..n {
            let mut cycle = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = sigma[i];
            }
            if !cycle.is_empty() {
                lengths.push(cycle.len() as i64);
                cycles.push(cycle);
            }
        }
        let expected = if q % 2 == 1 { vec![q] } else { vec![q / 2, q / 2] };
        if lengths != expected {
            bad.push(format!("cycle lengths {lengths:?}, expected {expected:?}"));
        }
        if cycles != doc.covering.orbit_cycles {
            bad.push("orbit cycles differ from the permutation".into());
        }
    }
    report.record("phi invariance", bad);

    let mut bad = Vec::new();
    let fa = &doc.covering.free_action;
    if fa.table.len() as i64 != q - 1 || !fa.free {
        bad.push(format!("{} rows, free = {}", fa.table.len(), fa.free));
    }
    for (row, k) in fa.table.iter().zip(1..) {
        let (zr, wr) = (k % q, (k * p).rem_euclid(q));
        if row.k != k || row.z_residue != zr || row.w_residue != wr || zr == 0 || wr == 0 || row.fixed.is_some() {
            bad.push(format!("row k = {k}"));
        }
    }
    report.record("free action", bad);

    let mut bad = Vec::new();
    let p_inv = inverse_mod(p, q).unwrap_or(0);
    if doc.covering.wedges.len() != 2 {
        bad.push(format!("{} wedges", doc.covering.wedges.len()));
    }
    for w in &doc.covering.wedges {
        let (level_of, rotation_of, step): (fn(&ComponentDoc) -> i64, fn(&ComponentDoc) -> i64, i64) = match w.wedge.as_str() {
            "Z" => (|c| c.axis_tag[0], |c| c.axis_tag[1], p),
            "W" => (|c| c.axis_tag[1], |c| c.axis_tag[0], p_inv),
            other => {
                bad.push(format!("unknown wedge {other:?}"));
                continue;
            }
        };
        let mut arcs: Vec<(i64, usize, i64)> = Vec::new();
        for c in &doc.components {
            let base = level_of(c);
            for level in [base, (base + q) % (2 * q)] {
                if level <= 2 {
                    arcs.push((level, c.index, rotation_of(c).rem_euclid(q)));
                }
            }
        }
        arcs.sort();
        let levels: Vec<i64> = arcs.iter().map(|a| a.0).collect();
        let rotations: Vec<i64> = arcs.iter().map(|a| a.2).collect();
        let expected = vec![0, step.rem_euclid(q), (2 * step).rem_euclid(q)];
        if levels != [0, 1, 2] || w.arc_count != 3 || w.arcs.len() != 3 {
            bad.push(format!("{} wedge levels {levels:?}", w.wedge));
        }
        if rotations != expected {
            bad.push(format!("{} wedge rotations {rotations:?}, expected {expected:?}", w.wedge));
        }
        for (doc_arc, (level, component, rot)) in w.arcs.iter().zip(&arcs) {
            if doc_arc.component != *component
                || doc_arc.level_pi != units_to_string(*level, q)
                || doc_arc.rotation_pi != units_to_string(*rot, q)
            {
                bad.push(format!("{} wedge arc on component {component} serialized differently", w.wedge));
            }
        }
        match (&w.witness, w.wedge.as_str()) {
            (None, "Z") => {}
            (Some(WitnessDoc::Odd { x, y }), "W") if q % 2 == 1 => {
                if 2 * p * x != 1 + q * y || (2 * x).rem_euclid(q) != rotations.get(1).copied().unwrap_or(-1) {
                    bad.push(format!("odd witness x = {x}, y = {y}"));
                }
            }
            (Some(WitnessDoc::Even { n: m }), "W") if q % 2 == 0 => {
                if m % 2 == 0 || (m * p - 1).rem_euclid(q) != 0 || m.rem_euclid(q) != rotations.get(1).copied().unwrap_or(-1) {
                    bad.push(format!("even witness n = {m}"));
                }
            }
            (w_, name) => bad.push(format!("{name} wedge witness {w_:?}")),
        }
    }
    report.record("wedge arcs", bad);

    let mut bad = Vec::new();
    if doc.covering.total_degree != 2 * q {
        bad.push(format!("degree {}", doc.covering.total_degree));
    }
    if doc.covering.lens_space != format!("L({q},{p})") {
        bad.push(format!("quotient {}", doc.covering.lens_space));
    }
    report.record("covering degree", bad);

    let mut bad = Vec::new();
    let bases: BTreeSet<usize> = doc.fibrations.iter().map(|f| f.base).collect();
    if doc.fibrations.len() != n || bases.len() != n {
        bad.push(format!("{} fibrations for {n} components", doc.fibrations.len()));
    }
    for f in &doc.fibrations {
        if f.base >= n {
            bad.push(format!("base {}", f.base));
            continue;
        }
        if f.fiber_punctures + 1 != n || f.fiber_euler_characteristic != 1 - f.fiber_punctures as i64 || f.records.len() + 1 != n {
            bad.push(format!("base {}: fiber data", f.base));
        }
        let (ub, vb) = frame(&doc.components[f.base]);
        for r in &f.records {
            if r.component >= n || r.component == f.base {
                bad.push(format!("base {}: record for {}", f.base, r.component));
                continue;
            }
            let (uc, vc) = frame(&doc.components[r.component]);
            let det = det4([ub, vb, uc, vc]);
            let cos1 = cos_min_angle(ub, vb, uc, vc);
            let sin2 = 1.0 - cos1 * cos1;
            let rate = r.winding_rate.0;
            let sign_ok = r.winding_sign == rate.signum() as i8 && r.winding_sign == det.signum() as i8;
            if !sign_ok || !((rate - det).abs() < 1e-9) || !(rate.abs() >= 1e-9) {
                bad.push(format!("base {} -> {}: rate {rate} vs det {det}", f.base, r.component));
            }
            if !((r.clearance.0 - sin2).abs() < 1e-9) || !(r.clearance.0 > 0.0) {
                bad.push(format!("base {} -> {}: clearance {} vs {sin2}", f.base, r.component, r.clearance));
            }
            if !r.sampled_monotone || !((r.sampled_total.0 - f64::from(r.winding_sign) * TAU).abs() < 1e-6) {
                bad.push(format!("base {} -> {}: sampled winding {}", f.base, r.component, r.sampled_total));
            }
        }
    }
    report.record("fibrations", bad);

    let mut bad = Vec::new();
    let v = &doc.verdict;
    match v.status.as_str() {
        "FIBERED" => {
            let signs = v.metadata.get("expansion_signs").map(String::as_str).unwrap_or("");
            let mut class = vec![p, q - p];
            if let Some(i) = inverse_mod(p, q) {
                class.extend([i, q - i]);
            }
            match evaluate_signs(signs) {
                Some((num, den)) if den == q && class.contains(&num) => {}
                other => bad.push(format!("expansion {signs:?} evaluates to {other:?}")),
            }
        }
        "VIRTUALLY_FIBERED" => {
            if !v.evidence.contains(&format!("degree {}", 2 * q)) {
                bad.push(format!("evidence {:?}", v.evidence));
            }
        }
        other => bad.push(format!("status {other}")),
    }
    report.record("verdict", bad);
    report
}

/// `1/(2s₁ + 1/(2s₂ + ⋯))` as a reduced fraction with positive denominator.
fn evaluate_signs(signs: &str) -> Option<(i64, i64)> {
    if signs.is_empty() {
        return None;
    }
    let (mut num, mut den) = (0i64, 1i64);
    for c in signs.chars().rev() {
        let s = match c {
            '+' => 2,
            '-' => -2,
            _ => return None,
        };
        // 1/(s + num/den) = den/(s·den + num)
        (num, den) = (den, s * den + num);
    }
    if den < 0 {
        (num, den) = (-num, -den);
    }
    let g = gcd(num, den).max(1);
    Some((num / g, den / g))
}
