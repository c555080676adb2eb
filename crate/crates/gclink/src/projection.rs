//! Standard projections of great circle links.
//!
//! S³ is projected stereographically from a pole on the z-axis circle, with
//! the z-axis direction at the pole as depth. The z-axis then becomes the
//! line through the origin pointing at the viewer and the w-axis becomes the
//! unit circle in the page. Every component meets the z-axis, so in this
//! exact view each one is seen edge on; a small fixed tilt of the viewing
//! direction puts the diagram in general position.

use std::f64::consts::{PI, TAU};
use std::fmt;

use gclink_core::geom4::{GreatCircle, Stereographic, Vec4};
use gclink_core::greatlink::GreatCircleLink;

/// Default view tilt.
pub const VIEW_TILT: (f64, f64) = (1.2, 0.4);

/// Smallest depth separation accepted at a crossing.
pub const MIN_DEPTH_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionOptions {
    /// Polyline samples per component, at least 100.
    pub samples: usize,
    /// Defaults to [`default_pole`] for the link's `q`.
    pub pole: Option<Vec4>,
    /// Rotation of the view about the page x- and y-axes, in radians.
    pub tilt: (f64, f64),
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions { samples: 400, pole: None, tilt: VIEW_TILT }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProjectionError {
    TooFewSamples(usize),
    BadPole(String),
    /// Two strands cross at nearly the same depth.
    UnresolvedCrossing { components: (usize, usize), position: [f64; 2], depth_gap: f64 },
}

impl fmt::Display for ProjectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectionError::TooFewSamples(n) => write!(f, "need at least 100 samples per component, got {n}"),
            ProjectionError::BadPole(m) => write!(f, "bad pole: {m}"),
            ProjectionError::UnresolvedCrossing { components, position, depth_gap } => write!(
                f,
                "unresolved crossing of components {} and {} at ({:.6}, {:.6}): depth gap {depth_gap:e}",
                components.0, components.1, position[0], position[1]
            ),
        }
    }
}

impl std::error::Error for ProjectionError {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub position: [f64; 2],
    pub over: usize,
    pub under: usize,
    /// Curve parameters of the two strands.
    pub over_t: f64,
    pub under_t: f64,
    /// Page speed of the under strand, used to size its gap.
    pub under_speed: f64,
    pub depth_gap: f64,
    /// `+1` when the over strand turns counterclockwise onto the under strand.
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionScene {
    /// Closed polylines in page coordinates; sample `i` is at `t = 2πi/n`.
    pub curves: Vec<Vec<[f64; 2]>>,
    pub crossings: Vec<Crossing>,
    /// The w-axis circle, drawn dotted.
    pub axis: Vec<[f64; 2]>,
    pub pole: Vec4,
    pub warnings: Vec<String>,
}

impl ProjectionScene {
    /// `crossings[i][j]` counts crossings between components `i ≠ j`;
    /// `signed[i][j]` sums their signs.
    pub fn crossing_tables(&self) -> (Vec<Vec<usize>>, Vec<Vec<i64>>) {
        let n = self.curves.len();
        let mut count = vec![vec![0; n]; n];
        let mut signed = vec![vec![0; n]; n];
        for c in &self.crossings {
            if c.over != c.under {
                for (i, j) in [(c.over, c.under), (c.under, c.over)] {
                    count[i][j] += 1;
                    signed[i][j] += i64::from(c.sign);
                }
            }
        }
        (count, signed)
    }

    /// Checks that every pair crosses an even number of times and that half
    /// the signed count is the given linking number.
    pub fn check_linking(&self, linking: &[Vec<i8>]) -> Result<(), String> {
        let (count, signed) = self.crossing_tables();
        for i in 0..self.curves.len() {
            for j in i + 1..self.curves.len() {
                if count[i][j] % 2 != 0 {
                    return Err(format!("components {i} and {j} cross {} times", count[i][j]));
                }
                if signed[i][j] != 2 * i64::from(linking[i][j]) {
                    return Err(format!("components {i} and {j}: signed crossings {} but linking {}", signed[i][j], linking[i][j]));
                }
            }
        }
        Ok(())
    }
}

/// `(cos α, sin α, 0, 0)` with `α` a fixed irrational fraction of the gap
/// between consecutive z-axis hits `kπ/q`.
pub fn default_pole(q: usize) -> Vec4 {
    let alpha = PI / q.max(1) as f64 * (0.5 + 0.1 * std::f64::consts::FRAC_1_SQRT_2);
    Vec4::new(alpha.cos(), alpha.sin(), 0.0, 0.0)
}

struct View {
    stereo: Stereographic,
    rot: [[f64; 3]; 3],
}

impl View {
    fn new(pole: Vec4, tilt: (f64, f64)) -> Result<Self, ProjectionError> {
        let bad = |e: gclink_core::Error| ProjectionError::BadPole(e.to_string());
        let on_z_axis = (pole.z().0.hypot(pole.z().1) - 1.0).abs() < 1e-12;
        let stereo = if on_z_axis {
            let depth = Vec4::new(-pole[1], pole[0], 0.0, 0.0);
            Stereographic::with_basis(pole, [depth, Vec4::basis(2), Vec4::basis(3)], true).map_err(bad)?
        } else {
            Stereographic::new(pole).map_err(bad)?
        };
        // Stereographic coordinates are (depth, x, y); tilt about x, then y.
        let (a, b) = tilt;
        let (ca, sa, cb, sb) = (a.cos(), a.sin(), b.cos(), b.sin());
        let rx = [[ca, 0.0, sa], [0.0, 1.0, 0.0], [-sa, 0.0, ca]];
        let ry = [[cb, sb, 0.0], [-sb, cb, 0.0], [0.0, 0.0, 1.0]];
        let mut rot = [[0.0; 3]; 3];
        for (i, row) in rot.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..3).map(|k| ry[i][k] * rx[k][j]).sum();
            }
        }
        Ok(View { stereo, rot })
    }

    fn apply(&self, y: [f64; 3]) -> [f64; 3] {
        self.rot.map(|r| r[0] * y[0] + r[1] * y[1] + r[2] * y[2])
    }

    /// `(page x, page y, depth)` and its derivative along `c` at `t`.
    fn point(&self, c: &GreatCircle, t: f64) -> ([f64; 3], [f64; 3]) {
        let (y, dy) = self.stereo.project_with_derivative(c.point(t), c.tangent(t));
        let (y, dy) = (self.apply(y), self.apply(dy));
        ([y[1], y[2], y[0]], [dy[1], dy[2], dy[0]])
    }
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub2(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Parameters `(s, r) ∈ [0,1)²` where segments `a0a1` and `b0b1` meet.
fn segment_hit(a0: [f64; 2], a1: [f64; 2], b0: [f64; 2], b1: [f64; 2]) -> Option<(f64, f64)> {
    let da = sub2(a1, a0);
    let db = sub2(b1, b0);
    let den = cross2(da, db);
    if den == 0.0 {
        return None;
    }
    let w = sub2(b0, a0);
    let s = cross2(w, db) / den;
    let r = cross2(w, da) / den;
    ((0.0..1.0).contains(&s) && (0.0..1.0).contains(&r)).then_some((s, r))
}

/// Newton iteration on `page(γ_a(s)) = page(γ_b(t))`.
fn refine(view: &View, a: &GreatCircle, b: &GreatCircle, mut s: f64, mut t: f64) -> Option<(f64, f64)> {
    for _ in 0..50 {
        let (pa, da) = view.point(a, s);
        let (pb, db) = view.point(b, t);
        let f = [pa[0] - pb[0], pa[1] - pb[1]];
        if f[0].hypot(f[1]) < 1e-13 {
            return Some((s, t));
        }
        // J = [da | −db]
        let det = -da[0] * db[1] + da[1] * db[0];
        if det == 0.0 {
            return None;
        }
        let ds = (-f[0] * db[1] + f[1] * db[0]) / det;
        let dt = (da[0] * f[1] - da[1] * f[0]) / det;
        s -= ds;
        t -= dt;
    }
    None
}

pub fn render_projection(link: &GreatCircleLink, opts: &ProjectionOptions) -> Result<ProjectionScene, ProjectionError> {
    if opts.samples < 100 {
        return Err(ProjectionError::TooFewSamples(opts.samples));
    }
    let n = opts.samples;
    let comps = link.components();
    let q = link.provenance().map_or(comps.len(), |(_, q)| q as usize);
    let mut pole = opts.pole.unwrap_or_else(|| default_pole(q));
    if (pole.norm() - 1.0).abs() > 1e-9 {
        return Err(ProjectionError::BadPole("pole must be a unit vector".into()));
    }
    let mut warnings = Vec::new();
    for _ in 0..64 {
        let Some(i) = comps.iter().position(|c| c.projection_norm(pole) > 1.0 - 1e-12) else { break };
        let (z, w) = (pole.z(), pole.w());
        let (c, s) = (1e-3f64.cos(), 1e-3f64.sin());
        pole = Vec4::from_complex((z.0 * c - z.1 * s, z.0 * s + z.1 * c), (w.0 * c - w.1 * s, w.0 * s + w.1 * c)).normalized();
        warnings.push(format!("pole lies on component {i}; perturbed"));
    }
    let view = View::new(pole, opts.tilt)?;

    let ts: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
    let curves: Vec<Vec<[f64; 2]>> = comps
        .iter()
        .map(|c| {
            ts.iter()
                .map(|&t| {
                    let (p, _) = view.point(c, t);
                    [p[0], p[1]]
                })
                .collect()
        })
        .collect();
    let bboxes: Vec<[f64; 4]> = curves
        .iter()
        .map(|pts| {
            pts.iter().fold([f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY], |b, p| {
                [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])]
            })
        })
        .collect();

    let mut crossings: Vec<Crossing> = Vec::new();
    for a in 0..comps.len() {
        for b in a..comps.len() {
            let (ba, bb) = (bboxes[a], bboxes[b]);
            if ba[2] < bb[0] || bb[2] < ba[0] || ba[3] < bb[1] || bb[3] < ba[1] {
                continue;
            }
            for i in 0..n {
                let (a0, a1) = (curves[a][i], curves[a][(i + 1) % n]);
                let j_start = if a == b { i + 2 } else { 0 };
                for j in j_start..n {
                    if a == b && (j + 1) % n == i {
                        continue;
                    }
                    let (b0, b1) = (curves[b][j], curves[b][(j + 1) % n]);
                    let Some((s, r)) = segment_hit(a0, a1, b0, b1) else { continue };
                    let step = TAU / n as f64;
                    let (s0, t0) = (ts[i] + s * step, ts[j] + r * step);
                    let (sa, tb) = refine(&view, &comps[a], &comps[b], s0, t0).unwrap_or((s0, t0));
                    let (pa, da) = view.point(&comps[a], sa);
                    let (pb, db) = view.point(&comps[b], tb);
                    let gap = pa[2] - pb[2];
                    let position = [pa[0], pa[1]];
                    if gap.abs() < MIN_DEPTH_GAP {
                        return Err(ProjectionError::UnresolvedCrossing { components: (a, b), position, depth_gap: gap.abs() });
                    }
                    let (over, under, t_over, t_under, d_over, d_under) =
                        if gap > 0.0 { (a, b, sa, tb, da, db) } else { (b, a, tb, sa, db, da) };
                    let sign = if cross2([d_over[0], d_over[1]], [d_under[0], d_under[1]]) > 0.0 { 1 } else { -1 };
                    let crossing = Crossing {
                        position,
                        over,
                        under,
                        over_t: t_over.rem_euclid(TAU),
                        under_t: t_under.rem_euclid(TAU),
                        under_speed: d_under[0].hypot(d_under[1]),
                        depth_gap: gap.abs(),
                        sign,
                    };
                    let duplicate = crossings.iter().any(|c| {
                        c.over == crossing.over && c.under == crossing.under && {
                            let d = (c.over_t - crossing.over_t).rem_euclid(TAU);
                            d.min(TAU - d) < 1e-9
                        } && {
                            let d = (c.under_t - crossing.under_t).rem_euclid(TAU);
                            d.min(TAU - d) < 1e-9
                        }
                    });
                    if !duplicate {
                        crossings.push(crossing);
                    }
                }
            }
        }
    }

    let w_axis = GreatCircle::w_axis();
    let axis = (0..256)
        .map(|i| {
            let (p, _) = view.point(&w_axis, TAU * i as f64 / 256.0);
            [p[0], p[1]]
        })
        .collect();
    Ok(ProjectionScene { curves, crossings, axis, pole, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gclink_core::greatlink::{construct_dpq, linking_matrix};

    #[test]
    fn segment_intersection() {
        assert_eq!(segment_hit([0.0, 0.0], [2.0, 0.0], [1.0, -1.0], [1.0, 1.0]), Some((0.5, 0.5)));
        assert_eq!(segment_hit([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]), None);
        assert_eq!(segment_hit([0.0, 0.0], [1.0, 0.0], [2.0, -1.0], [2.0, 1.0]), None);
    }

    #[test]
    fn hopf_link_has_two_crossings() {
        let link = construct_dpq(1, 2).unwrap();
        let scene = render_projection(&link, &ProjectionOptions::default()).unwrap();
        assert_eq!(scene.curves.len(), 2);
        assert_eq!(scene.crossings.len(), 2);
        scene.check_linking(&linking_matrix(&link).unwrap()).unwrap();
    }

    #[test]
    fn single_circle() {
        let link = GreatCircleLink::new(vec![GreatCircle::z_axis()]).unwrap();
        let scene = render_projection(&link, &ProjectionOptions { samples: 200, pole: Some(Vec4::basis(2)), ..Default::default() }).unwrap();
        assert_eq!(scene.curves.len(), 1);
        assert!(scene.crossings.is_empty());
    }

    #[test]
    fn pole_on_link_is_perturbed() {
        let link = construct_dpq(2, 5).unwrap();
        let scene = render_projection(&link, &ProjectionOptions { samples: 200, pole: Some(Vec4::basis(0)), ..Default::default() }).unwrap();
        assert!(!scene.warnings.is_empty());
        scene.check_linking(&linking_matrix(&link).unwrap()).unwrap();
    }

    #[test]
    fn rejects_few_samples() {
        let link = construct_dpq(2, 5).unwrap();
        assert_eq!(
            render_projection(&link, &ProjectionOptions { samples: 50, ..Default::default() }),
            Err(ProjectionError::TooFewSamples(50))
        );
    }
}
