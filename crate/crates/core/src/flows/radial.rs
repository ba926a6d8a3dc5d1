//! Compactly supported rotating disc flows `u = (−∂₂φ(r), ∂₁φ(r))` with the
//! polynomial bump `φ(r) = a(R² − r²)^m` inside `B_R` and zero outside.
//!
//! Everything is evaluated from closed-form radial derivatives. With
//! `s = R² − r²`:
//!
//! ```text
//! g = φ'(r)/r      = −2ma s^{m−1}
//! q = g'(r)/r      =  4m(m−1)a s^{m−2}
//! w = q'(r)/r      = −8m(m−1)(m−2)a s^{m−3}
//! u = g (−x₂, x₁),  ω = Δφ = 2g + q r²,  ∇ω = (4q + w r²) x
//! P = −2m²a²/(2m−1) s^{2m−1},  ∇P = g² x
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cap on the smoothness exponent; keeps `s^{2m−1}` representable.
pub const MAX_RADIAL_EXPONENT: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialProfile {
    pub radius: f64,
    #[serde(default = "default_exponent")]
    pub exponent: u32,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
}

fn default_exponent() -> u32 {
    3
}

fn default_amplitude() -> f64 {
    1.0
}

/// Pointwise kinematics of a radial flow at one point of the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RadialJet {
    pub velocity: [f64; 2],
    /// `grad[i][j] = ∂_j u_i`
    pub velocity_gradient: [[f64; 2]; 2],
    pub vorticity: f64,
    pub vorticity_gradient: [f64; 2],
    pub pressure: f64,
    pub pressure_gradient: [f64; 2],
    /// `∂₁φ, ∂₂φ`
    pub potential_gradient: [f64; 2],
}

impl RadialProfile {
    pub fn new(radius: f64, exponent: u32, amplitude: f64) -> Result<Self> {
        let p = RadialProfile { radius, exponent, amplitude };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidRadialProfile(format!("radius must be positive, got {}", self.radius)));
        }
        if self.exponent < 3 || self.exponent > MAX_RADIAL_EXPONENT {
            return Err(Error::InvalidRadialProfile(format!(
                "exponent must lie in 3..={MAX_RADIAL_EXPONENT}, got {}",
                self.exponent
            )));
        }
        if !self.amplitude.is_finite() {
            return Err(Error::InvalidRadialProfile("non-finite amplitude".into()));
        }
        Ok(())
    }

    pub fn potential(&self, r: f64) -> f64 {
        let s = self.radius * self.radius - r * r;
        if s <= 0.0 {
            return 0.0;
        }
        self.amplitude * s.powi(self.exponent as i32)
    }

    /// Azimuthal speed `u_θ = φ'(r)`.
    pub fn swirl(&self, r: f64) -> f64 {
        let s = self.radius * self.radius - r * r;
        if s <= 0.0 {
            return 0.0;
        }
        let m = f64::from(self.exponent);
        -2.0 * m * self.amplitude * r * s.powi(self.exponent as i32 - 1)
    }

    pub fn jet(&self, x: [f64; 2]) -> RadialJet {
        let r2 = x[0] * x[0] + x[1] * x[1];
        let s = self.radius * self.radius - r2;
        if s <= 0.0 {
            return RadialJet::default();
        }
        let m = f64::from(self.exponent);
        let e = self.exponent as i32;
        let a = self.amplitude;
        let g = -2.0 * m * a * s.powi(e - 1);
        let q = 4.0 * m * (m - 1.0) * a * s.powi(e - 2);
        let w = -8.0 * m * (m - 1.0) * (m - 2.0) * a * s.powi(e - 3);
        let [x1, x2] = x;
        let dvort = 4.0 * q + w * r2;
        RadialJet {
            velocity: [-g * x2, g * x1],
            velocity_gradient: [[-q * x1 * x2, -q * x2 * x2 - g], [q * x1 * x1 + g, q * x1 * x2]],
            vorticity: 2.0 * g + q * r2,
            vorticity_gradient: [dvort * x1, dvort * x2],
            pressure: -2.0 * m * m * a * a / (2.0 * m - 1.0) * s.powi(2 * e - 1),
            pressure_gradient: [g * g * x1, g * g * x2],
            potential_gradient: [g * x1, g * x2],
        }
    }

    /// `2π ∫₀^R u_θ(r)² r dr` by composite Simpson, the squared `L²(B_R)` norm.
    pub fn energy_integral<F: Fn(f64) -> f64>(speed: F, radius: f64) -> f64 {
        let n = 4000;
        let h = radius / n as f64;
        let f = |r: f64| speed(r).powi(2) * r;
        let mut acc = f(0.0) + f(radius);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        2.0 * std::f64::consts::PI * acc * h / 3.0
    }
}
