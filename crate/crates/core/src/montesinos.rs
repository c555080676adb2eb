//! Montesinos links `M(e₀; β₁/α₁, …, β_n/α_n)` and the spherical test on
//! their double branched covers.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, One, Zero};

use crate::twobridge::TwoBridgeFraction;
use crate::verdict::{Evidence, VerdictStatus, VirtualFibrationVerdict};
use crate::{Error, Result};

/// Rational tangle `β/α` with `0 < β < α`, `gcd(β, α) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tangle {
    beta: i64,
    alpha: i64,
}

impl Tangle {
    pub fn new(beta: i64, alpha: i64) -> Result<Self> {
        if alpha < 2 {
            return Err(Error::invalid(alloc::format!("tangle {beta}/{alpha}: alpha must be at least 2")));
        }
        if !(0 < beta && beta < alpha) {
            return Err(Error::invalid(alloc::format!("tangle {beta}/{alpha}: need 0 < beta < alpha")));
        }
        if beta.gcd(&alpha) != 1 {
            return Err(Error::invalid(alloc::format!("tangle {beta}/{alpha}: gcd != 1")));
        }
        Ok(Tangle { beta, alpha })
    }

    pub fn beta(self) -> i64 {
        self.beta
    }

    pub fn alpha(self) -> i64 {
        self.alpha
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.beta, self.alpha)
    }
}

impl FromStr for Tangle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (b, a) = s.split_once('/').ok_or_else(|| Error::invalid(alloc::format!("expected beta/alpha, got {s:?}")))?;
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::invalid(alloc::format!("bad integer {t:?} in {s:?}")));
        Tangle::new(parse(b)?, parse(a)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MontesinosLink {
    pub e0: i64,
    tangles: Vec<Tangle>,
}

impl MontesinosLink {
    pub fn new(e0: i64, tangles: Vec<Tangle>) -> Result<Self> {
        if tangles.is_empty() {
            return Err(Error::invalid("a Montesinos link needs at least one tangle"));
        }
        Ok(MontesinosLink { e0, tangles })
    }

    pub fn tangles(&self) -> &[Tangle] {
        &self.tangles
    }

    pub fn base(&self) -> OrbifoldBase {
        OrbifoldBase::from_sorted(self.tangles.iter().map(|t| t.alpha).collect())
    }

    /// `−(e₀ + Σ βᵢ/αᵢ)`.
    pub fn euler_number(&self) -> Result<Ratio<i64>> {
        let mut sum = Ratio::from_integer(self.e0);
        for t in &self.tangles {
            sum = sum.checked_add(&Ratio::new(t.beta, t.alpha)).ok_or_else(|| Error::invalid("Euler number overflows i64"))?;
        }
        Ok(-sum)
    }

    /// With one tangle the link is two-bridge; `e₀` only shifts `β` by a
    /// multiple of `α`.
    pub fn two_bridge_candidate(&self) -> Option<TwoBridgeFraction> {
        match self.tangles.as_slice() {
            [t] => TwoBridgeFraction::new(t.beta, t.alpha).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for MontesinosLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({};", self.e0)?;
        for (i, t) in self.tangles.iter().enumerate() {
            write!(f, "{}{t}", if i == 0 { " " } else { ", " })?;
        }
        f.write_str(")")
    }
}

/// `S²(α₁, …, α_n)`, cone orders ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbifoldBase {
    cone_orders: Vec<i64>,
}

impl OrbifoldBase {
    pub fn new(cone_orders: Vec<i64>) -> Result<Self> {
        if let Some(a) = cone_orders.iter().find(|&&a| a < 2) {
            return Err(Error::invalid(alloc::format!("cone order {a} is below 2")));
        }
        Ok(Self::from_sorted(cone_orders))
    }

    fn from_sorted(mut cone_orders: Vec<i64>) -> Self {
        cone_orders.sort_unstable();
        OrbifoldBase { cone_orders }
    }

    pub fn cone_orders(&self) -> &[i64] {
        &self.cone_orders
    }
}

impl fmt::Display for OrbifoldBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cone_orders.is_empty() {
            return f.write_str("S^2");
        }
        f.write_str("S(")?;
        for (i, a) in self.cone_orders.iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { "" } else { "," })?;
        }
        f.write_str(")")
    }
}

/// `2 − Σ (1 − 1/αᵢ)`.
pub fn orbifold_euler_char(base: &OrbifoldBase) -> Ratio<i64> {
    base.cone_orders.iter().fold(Ratio::from_integer(2), |acc, &a| acc - (Ratio::one() - Ratio::new(1, a)))
}

/// Spherical 2-orbifolds with cone points: at most two, or one of
/// `(2,2,n)`, `(2,3,3)`, `(2,3,4)`, `(2,3,5)`.
pub fn is_spherical_by_list(base: &OrbifoldBase) -> bool {
    match base.cone_orders.as_slice() {
        [] | [_] | [_, _] => true,
        [2, 2, _] | [2, 3, 3] | [2, 3, 4] | [2, 3, 5] => true,
        _ => false,
    }
}

pub fn is_spherical_by_euler_char(base: &OrbifoldBase) -> bool {
    base.cone_orders.len() <= 3 && orbifold_euler_char(base) > Ratio::zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Spherical,
    NotSpherical,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Spherical => "SPHERICAL",
            Geometry::NotSpherical => "NOT_SPHERICAL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertClassification {
    pub base: OrbifoldBase,
    pub euler_number: Ratio<i64>,
    pub geometry: Geometry,
    pub reason: String,
}

pub fn classify(link: &MontesinosLink) -> Result<SeifertClassification> {
    let base = link.base();
    let euler_number = link.euler_number()?;
    let chi = orbifold_euler_char(&base);
    let (geometry, reason) = if !is_spherical_by_list(&base) {
        (Geometry::NotSpherical, alloc::format!("base {base} is not spherical (orbifold Euler characteristic {chi})"))
    } else if euler_number.is_zero() {
        (Geometry::NotSpherical, "Euler number is 0".to_string())
    } else {
        (Geometry::Spherical, alloc::format!("base {base} is spherical (orbifold Euler characteristic {chi}) and Euler number {euler_number} is nonzero"))
    };
    Ok(SeifertClassification { base, euler_number, geometry, reason })
}

pub fn verdict(link: &MontesinosLink) -> Result<VirtualFibrationVerdict> {
    let c = classify(link)?;
    let v = match c.geometry {
        Geometry::Spherical => VirtualFibrationVerdict::new(
            link.to_string(),
            VerdictStatus::VirtuallyFibered,
            Evidence::SphericalDoubleCover { base: c.base.clone(), euler_number: c.euler_number },
        ),
        Geometry::NotSpherical => VirtualFibrationVerdict::new(link.to_string(), VerdictStatus::OutOfScope, Evidence::Reason(c.reason.clone())),
    };
    let mut v = v.with("euler_number_convention", "-(e0 + sum beta_i/alpha_i)").with("geometry", c.geometry.to_string());
    if let Some(f) = link.two_bridge_candidate() {
        v = v.with("two_bridge", alloc::format!("K_{f}"));
    }
    Ok(v)
}
