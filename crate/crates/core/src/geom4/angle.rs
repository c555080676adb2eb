use core::fmt;
use core::ops::{Add, Neg, Sub};
use core::str::FromStr;

use num_integer::Integer;

use crate::math::{self, PI};
use crate::{Error, Result};

/// An exact angle `(numerator / denominator)·π`, kept in lowest terms with
/// `0 ≤ numerator < 2·denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalAngle {
    num: i64,
    den: i64,
}

impl RationalAngle {
    pub const ZERO: RationalAngle = RationalAngle { num: 0, den: 1 };
    pub const PI: RationalAngle = RationalAngle { num: 1, den: 1 };
    pub const HALF_PI: RationalAngle = RationalAngle { num: 1, den: 2 };

    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator <= 0 {
            return Err(Error::invalid("angle denominator must be positive"));
        }
        Ok(Self::normalized(numerator as i128, denominator as i128))
    }

    /// `k·π/q`.
    pub fn from_units(k: i64, q: i64) -> Result<Self> {
        Self::new(k, q)
    }

    fn normalized(num: i128, den: i128) -> Self {
        let num = num.rem_euclid(2 * den);
        if num == 0 {
            return Self::ZERO;
        }
        let g = num.gcd(&den);
        RationalAngle { num: (num / g) as i64, den: (den / g) as i64 }
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    pub fn radians(self) -> f64 {
        self.num as f64 * PI / self.den as f64
    }

    /// `(cos, sin)` of the angle, exact at multiples of π/2.
    pub fn cos_sin(self) -> (f64, f64) {
        if (2 * self.num) % self.den == 0 {
            return match (2 * self.num / self.den).rem_euclid(4) {
                0 => (1.0, 0.0),
                1 => (0.0, 1.0),
                2 => (-1.0, 0.0),
                _ => (0.0, -1.0),
            };
        }
        let r = self.radians();
        (math::cos(r), math::sin(r))
    }

    /// The angle in units of `π/q`, if it is a multiple of `π/q`.
    /// Result lies in `0..2q`.
    pub fn units_of(self, q: i64) -> Option<i64> {
        if q <= 0 || q % self.den != 0 {
            return None;
        }
        Some(self.num * (q / self.den))
    }

    /// Representative modulo π, in `[0, π)`.
    pub fn mod_pi(self) -> Self {
        if self.num >= self.den {
            RationalAngle { num: self.num - self.den, den: self.den }
        } else {
            self
        }
    }

    pub fn congruent_mod_pi(self, other: Self) -> bool {
        self.mod_pi() == other.mod_pi()
    }

    /// Distance from the nearest multiple of π, in `[0, π/2]`. This is the
    /// angle between the lines through `e^{ia}` and `e^{ib}` when applied to
    /// `a − b`.
    pub fn fold_to_half_pi(self) -> Self {
        let r = self.mod_pi();
        if 2 * r.num > r.den {
            RationalAngle { num: r.den - r.num, den: r.den }
        } else {
            r
        }
    }

    /// Smallest `n ≥ 1` with `n·angle ≡ 0 (mod 2π)`.
    pub fn rotation_order(self) -> i64 {
        let two_den = 2 * self.den;
        two_den / self.num.gcd(&two_den)
    }

    pub fn scale(self, k: i64) -> Self {
        Self::normalized(self.num as i128 * k as i128, self.den as i128)
    }
}

impl Ord for RationalAngle {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for RationalAngle {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for RationalAngle {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let den = (self.den as i128).lcm(&(rhs.den as i128));
        let num = self.num as i128 * (den / self.den as i128) + rhs.num as i128 * (den / rhs.den as i128);
        Self::normalized(num, den)
    }
}

impl Neg for RationalAngle {
    type Output = Self;
    fn neg(self) -> Self {
        Self::normalized(-(self.num as i128), self.den as i128)
    }
}

impl Sub for RationalAngle {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Formats as `num/den`, the angle being that multiple of π.
impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n = n.parse::<i64>().map_err(|_| Error::invalid("angle numerator"))?;
        let d = d.parse::<i64>().map_err(|_| Error::invalid("angle denominator"))?;
        Self::new(n, d)
    }
}
