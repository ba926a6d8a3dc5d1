use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Largest absolute wavenumber accepted on any axis.
///
/// Keeps `|k|²` and convolution boxes well inside machine integers; the
/// desk-scale families never come near it.
pub const MAX_WAVENUMBER: i32 = 4096;

/// An integer wavevector `k ∈ ℤ³` on the 2π-periodic torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Wavevector(pub [i32; 3]);

impl Wavevector {
    pub const ZERO: Wavevector = Wavevector([0, 0, 0]);

    pub const fn new(k1: i32, k2: i32, k3: i32) -> Self {
        Wavevector([k1, k2, k3])
    }

    pub fn component(self, axis: usize) -> i32 {
        self.0[axis]
    }

    pub fn norm_sq(self) -> i64 {
        self.0.iter().map(|&c| i64::from(c) * i64::from(c)).sum()
    }

    pub fn norm(self) -> f64 {
        (self.norm_sq() as f64).sqrt()
    }

    pub fn max_abs(self) -> i32 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == [0, 0, 0]
    }

    /// True for exactly one of `k`, `-k` when `k ≠ 0` (lexicographic half space).
    pub fn is_upper_half(self) -> bool {
        self > -self
    }

    pub fn within_cap(self) -> bool {
        self.max_abs() <= MAX_WAVENUMBER
    }

    pub fn as_f64(self) -> [f64; 3] {
        [f64::from(self.0[0]), f64::from(self.0[1]), f64::from(self.0[2])]
    }
}

impl Neg for Wavevector {
    type Output = Wavevector;
    fn neg(self) -> Wavevector {
        Wavevector([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Add for Wavevector {
    type Output = Wavevector;
    fn add(self, rhs: Wavevector) -> Wavevector {
        Wavevector([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for Wavevector {
    type Output = Wavevector;
    fn sub(self, rhs: Wavevector) -> Wavevector {
        self + (-rhs)
    }
}

impl From<[i32; 3]> for Wavevector {
    fn from(k: [i32; 3]) -> Self {
        Wavevector(k)
    }
}

impl fmt::Display for Wavevector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}
