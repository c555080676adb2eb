//! Two-bridge fractions, Schubert equivalence and the `±2` continued
//! fraction test for fiberedness.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;

use crate::covering::{covering_certificate, modular_inverse};
use crate::verdict::{Evidence, VerdictStatus, VirtualFibrationVerdict};
use crate::{Error, Result};

/// `p/q` with `gcd(p, q) = 1` and `0 < p < q`, or `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoBridgeFraction {
    p: i64,
    q: i64,
}

impl TwoBridgeFraction {
    /// The trivial two component link.
    pub const TRIVIAL: TwoBridgeFraction = TwoBridgeFraction { p: 1, q: 0 };

    /// Reduces `p` mod `q`. `q = 1` (the unknot) is rejected, as is any
    /// non-coprime pair; `±1/0` maps to [`Self::TRIVIAL`].
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        if q == 0 {
            return if p.abs() == 1 { Ok(Self::TRIVIAL) } else { Err(Error::invalid(alloc::format!("{p}/0 is not a fraction"))) };
        }
        if q == 1 {
            return Err(Error::invalid("q = 1 gives the unknot, which has no two-bridge presentation here"));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::invalid(alloc::format!("gcd({p}, {q}) != 1")));
        }
        Ok(TwoBridgeFraction { p: p.rem_euclid(q), q })
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    pub fn is_trivial(self) -> bool {
        self.q == 0
    }

    /// `K_{p/q}` is a knot iff `q` is odd.
    pub fn is_knot(self) -> bool {
        self.q % 2 == 1
    }

    pub fn value(self) -> Option<Ratio<i64>> {
        (self.q != 0).then(|| Ratio::new(self.p, self.q))
    }
}

impl fmt::Display for TwoBridgeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for TwoBridgeFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s.split_once('/').ok_or_else(|| Error::invalid(alloc::format!("expected p/q, got {s:?}")))?;
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::invalid(alloc::format!("bad integer {t:?} in {s:?}")));
        TwoBridgeFraction::new(parse(p)?, parse(q)?)
    }
}

/// Same `q` and `p′ ≡ ±p^{±1} (mod q)`.
pub fn schubert_equivalent(f1: TwoBridgeFraction, f2: TwoBridgeFraction) -> bool {
    if f1.q != f2.q {
        return false;
    }
    if f1.q == 0 {
        return true;
    }
    let q = f1.q;
    let same = |a: i64| (f2.p - a).rem_euclid(q) == 0 || (f2.p + a).rem_euclid(q) == 0;
    same(f1.p) || ((f1.p * f2.p - 1).rem_euclid(q) == 0 || (f1.p * f2.p + 1).rem_euclid(q) == 0)
}

/// `{p, q − p, p⁻¹, q − p⁻¹}` over `q`, without repeats, in that order.
pub fn equivalence_class(f: TwoBridgeFraction) -> Vec<TwoBridgeFraction> {
    if f.is_trivial() {
        return alloc::vec![f];
    }
    let q = f.q;
    let inv = modular_inverse(f.p, q).expect("normalized fractions are coprime");
    let mut out: Vec<TwoBridgeFraction> = Vec::with_capacity(4);
    for p in [f.p, q - f.p, inv, q - inv] {
        let g = TwoBridgeFraction { p, q };
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Signs `s₁, …, s_n` of `1/(2s₁ + 1/(2s₂ + ⋯ + 1/(2s_n)))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvenContinuedFraction {
    pub signs: Vec<i8>,
}

impl EvenContinuedFraction {
    /// Exact value, innermost term first. `None` on overflow or for an empty
    /// or malformed sign list.
    pub fn evaluate(&self) -> Option<Ratio<i64>> {
        if self.signs.is_empty() {
            return None;
        }
        // Tail value n/d; prepending s gives d/(2s·d + n).
        let (mut n, mut d) = (0i64, 1i64);
        for &s in self.signs.iter().rev() {
            if s != 1 && s != -1 {
                return None;
            }
            let next = i64::from(2 * s).checked_mul(d)?.checked_add(n)?;
            (n, d) = (d, next);
        }
        Some(Ratio::new(n, d))
    }
}

impl fmt::Display for EvenContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.signs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(if *s > 0 { "1/(2" } else { "1/(-2" })?;
        }
        for _ in &self.signs {
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionSearch {
    Found(EvenContinuedFraction),
    /// Every branch was followed to its end.
    Exhausted,
    /// Some branch was cut at the depth limit.
    DepthLimited,
}

pub fn default_max_depth(f: TwoBridgeFraction) -> usize {
    2 * f.q.max(1) as usize
}

/// Depth-first search for a `±2` expansion of exactly `p/q`, with no class
/// sweep.
///
/// From a residual `r = n/d` with `0 < |n| < d`, the next residual is
/// `1/r − 2s`. Only a branch with `|1/r − 2s| < 1` can continue, and its
/// denominator `|n|` is smaller than `d`, so the search ends within `q`
/// levels.
pub fn search_exact(p: i64, q: i64, max_depth: usize) -> ExpansionSearch {
    fn go(n: i64, d: i64, depth: usize, max_depth: usize, signs: &mut Vec<i8>) -> ExpansionSearch {
        if depth == max_depth {
            return ExpansionSearch::DepthLimited;
        }
        let mut limited = false;
        for s in [1i8, -1] {
            // 1/r − 2s = (d − 2s·n)/n
            let (mut nn, mut dd) = (d - 2 * i64::from(s) * n, n);
            if dd < 0 {
                (nn, dd) = (-nn, -dd);
            }
            signs.push(s);
            if nn == 0 {
                return ExpansionSearch::Found(EvenContinuedFraction { signs: signs.clone() });
            }
            if nn.abs() < dd {
                match go(nn, dd, depth + 1, max_depth, signs) {
                    ExpansionSearch::Found(e) => return ExpansionSearch::Found(e),
                    ExpansionSearch::DepthLimited => limited = true,
                    ExpansionSearch::Exhausted => {}
                }
            }
            signs.pop();
        }
        if limited {
            ExpansionSearch::DepthLimited
        } else {
            ExpansionSearch::Exhausted
        }
    }
    if q < 2 || p == 0 || p.abs() >= q || p.gcd(&q) != 1 {
        return ExpansionSearch::Exhausted;
    }
    go(p, q, 0, max_depth, &mut Vec::new())
}

/// Searches the whole Schubert class of `f`.
pub fn search_pm2_expansion(f: TwoBridgeFraction, max_depth: usize) -> ExpansionSearch {
    let mut limited = false;
    for g in equivalence_class(f) {
        match search_exact(g.p, g.q, max_depth) {
            ExpansionSearch::Found(e) => return ExpansionSearch::Found(e),
            ExpansionSearch::DepthLimited => limited = true,
            ExpansionSearch::Exhausted => {}
        }
    }
    if limited {
        ExpansionSearch::DepthLimited
    } else {
        ExpansionSearch::Exhausted
    }
}

pub fn find_pm2_expansion(f: TwoBridgeFraction, max_depth: usize) -> Option<EvenContinuedFraction> {
    match search_pm2_expansion(f, max_depth) {
        ExpansionSearch::Found(e) => Some(e),
        _ => None,
    }
}

pub fn verdict(f: TwoBridgeFraction) -> Result<VirtualFibrationVerdict> {
    verdict_with_depth(f, default_max_depth(f))
}

pub fn verdict_with_depth(f: TwoBridgeFraction, max_depth: usize) -> Result<VirtualFibrationVerdict> {
    let input = alloc::format!("K_{f}");
    if f.is_trivial() {
        return Ok(VirtualFibrationVerdict::new(
            input,
            VerdictStatus::OutOfScope,
            Evidence::Reason("trivial two component link".to_string()),
        ));
    }
    let class: Vec<String> = equivalence_class(f).iter().map(ToString::to_string).collect();
    let search = search_pm2_expansion(f, max_depth);
    let verdict = match search {
        ExpansionSearch::Found(e) => VirtualFibrationVerdict::new(input, VerdictStatus::Fibered, Evidence::EvenExpansion(e)),
        _ => {
            let certificate = covering_certificate(f.p, f.q)?;
            let degree = certificate.total_degree;
            let outcome = if search == ExpansionSearch::DepthLimited {
                alloc::format!("inconclusive: depth limit {max_depth} reached")
            } else {
                "none exists".to_string()
            };
            VirtualFibrationVerdict::new(
                input,
                VerdictStatus::VirtuallyFibered,
                Evidence::GreatCircleCover { p: f.p, q: f.q, degree, certificate: alloc::boxed::Box::new(certificate) },
            )
            .with("pm2_expansion", outcome)
        }
    };
    Ok(verdict
        .with("kind", if f.is_knot() { "knot" } else { "link" })
        .with("schubert_class", class.join(","))
        .with("expansion_convention", "1/(2s1 + 1/(2s2 + ...)), innermost first, any class member")
        .with("max_depth", alloc::format!("{max_depth}")))
}
