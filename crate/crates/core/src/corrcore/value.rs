use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Relative zero tolerance for the floating path; the absolute bound is this times `L`.
pub const FLOAT_ZERO_TOL: f64 = 1e-9;

/// Gaussian integer `re + i·im`. Every entry of a binary or quaternary
/// sequence is a Gaussian unit, so their correlation sums stay exact.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: i64,
    pub im: i64,
}

impl Gaussian {
    pub const ZERO: Gaussian = Gaussian { re: 0, im: 0 };
    pub const ONE: Gaussian = Gaussian { re: 1, im: 0 };

    pub const fn new(re: i64, im: i64) -> Self {
        Gaussian { re, im }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Gaussian::new(1, 0),
            1 => Gaussian::new(0, 1),
            2 => Gaussian::new(-1, 0),
            _ => Gaussian::new(0, -1),
        }
    }

    pub fn conj(self) -> Self {
        Gaussian::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// Exponent `e` with `self == i^e`, if `self` is a unit.
    pub fn unit_exponent(self) -> Option<u32> {
        match (self.re, self.im) {
            (1, 0) => Some(0),
            (0, 1) => Some(1),
            (-1, 0) => Some(2),
            (0, -1) => Some(3),
            _ => None,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for Gaussian {
    fn add_assign(&mut self, rhs: Gaussian) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl From<i64> for Gaussian {
    fn from(v: i64) -> Self {
        Gaussian::new(v, 0)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}-{}i", -im),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

/// A complex correlation sum.
///
/// Binary and quaternary inputs produce [`CorrelationValue::Exact`]; any other
/// even modulus produces [`CorrelationValue::Approx`], whose zero test uses the
/// tolerance `1e-9 · scale` with `scale` the sequence length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorrelationValue {
    Exact(Gaussian),
    Approx { value: Complex64, scale: usize },
}

impl CorrelationValue {
    pub fn exact(re: i64, im: i64) -> Self {
        CorrelationValue::Exact(Gaussian::new(re, im))
    }

    pub fn zero(exact: bool, scale: usize) -> Self {
        if exact {
            CorrelationValue::Exact(Gaussian::ZERO)
        } else {
            CorrelationValue::Approx {
                value: Complex64::new(0.0, 0.0),
                scale,
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CorrelationValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<Gaussian> {
        match self {
            CorrelationValue::Exact(g) => Some(*g),
            CorrelationValue::Approx { .. } => None,
        }
    }

    pub fn re(&self) -> f64 {
        self.to_complex().re
    }

    pub fn im(&self) -> f64 {
        self.to_complex().im
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            CorrelationValue::Exact(g) => g.to_complex(),
            CorrelationValue::Approx { value, .. } => *value,
        }
    }

    fn tolerance(&self) -> f64 {
        match self {
            CorrelationValue::Exact(_) => 0.0,
            CorrelationValue::Approx { scale, .. } => FLOAT_ZERO_TOL * (*scale).max(1) as f64,
        }
    }

    /// `|re| + |im| ≤ ε`, with `ε = 0` on the exact path.
    pub fn is_zero(&self) -> bool {
        match self {
            CorrelationValue::Exact(g) => g.is_zero(),
            CorrelationValue::Approx { value, .. } => {
                value.re.abs() + value.im.abs() <= self.tolerance()
            }
        }
    }

    /// Compares against a Gaussian integer target under the same tolerance rule.
    pub fn equals(&self, target: Gaussian) -> bool {
        match self {
            CorrelationValue::Exact(g) => *g == target,
            CorrelationValue::Approx { value, .. } => {
                let d = *value - target.to_complex();
                d.re.abs() + d.im.abs() <= self.tolerance()
            }
        }
    }

    pub fn conj(self) -> Self {
        match self {
            CorrelationValue::Exact(g) => CorrelationValue::Exact(g.conj()),
            CorrelationValue::Approx { value, scale } => CorrelationValue::Approx {
                value: value.conj(),
                scale,
            },
        }
    }

    /// Multiplies by a (possibly negative) integer count.
    pub fn scale_by(self, k: i64) -> Self {
        match self {
            CorrelationValue::Exact(g) => CorrelationValue::Exact(g * Gaussian::from(k)),
            CorrelationValue::Approx { value, scale } => CorrelationValue::Approx {
                value: value * k as f64,
                scale,
            },
        }
    }
}

impl Add for CorrelationValue {
    type Output = CorrelationValue;
    fn add(self, rhs: CorrelationValue) -> CorrelationValue {
        match (self, rhs) {
            (CorrelationValue::Exact(a), CorrelationValue::Exact(b)) => {
                CorrelationValue::Exact(a + b)
            }
            (a, b) => CorrelationValue::Approx {
                value: a.to_complex() + b.to_complex(),
                scale: a.scale().max(b.scale()),
            },
        }
    }
}

impl Sub for CorrelationValue {
    type Output = CorrelationValue;
    fn sub(self, rhs: CorrelationValue) -> CorrelationValue {
        self + rhs.scale_by(-1)
    }
}

impl AddAssign for CorrelationValue {
    fn add_assign(&mut self, rhs: CorrelationValue) {
        *self = *self + rhs;
    }
}

impl CorrelationValue {
    fn scale(&self) -> usize {
        match self {
            CorrelationValue::Exact(_) => 0,
            CorrelationValue::Approx { scale, .. } => *scale,
        }
    }
}

impl fmt::Display for CorrelationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrelationValue::Exact(g) => write!(f, "{g}"),
            CorrelationValue::Approx { value, .. } => {
                write!(f, "{:.12}{:+.12}i", value.re, value.im)
            }
        }
    }
}

impl Serialize for CorrelationValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CorrelationValue", 3)?;
        match self {
            CorrelationValue::Exact(g) => {
                s.serialize_field("re", &g.re)?;
                s.serialize_field("im", &g.im)?;
                s.serialize_field("exact", &true)?;
            }
            CorrelationValue::Approx { value, .. } => {
                s.serialize_field("re", &value.re)?;
                s.serialize_field("im", &value.im)?;
                s.serialize_field("exact", &false)?;
            }
        }
        s.end()
    }
}
