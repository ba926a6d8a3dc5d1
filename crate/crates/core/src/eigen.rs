//! Helmholtz eigenfunctions: periodic lattice shells, Dirichlet sine products
//! on the box `(0,π)³`, and the closed-form heat modes of the pipeline slab.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{ScalarField, Trig};
use crate::wavevector::Wavevector;

/// All `k ∈ ℤ³` with `|k|² = lambda_sq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenShell {
    lambda_sq: u32,
    points: Vec<Wavevector>,
}

impl EigenShell {
    pub fn lambda_sq(&self) -> u32 {
        self.lambda_sq
    }

    pub fn points(&self) -> &[Wavevector] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, k: Wavevector) -> bool {
        self.points.binary_search(&k).is_ok()
    }

    /// Random Hermitian coefficients on every shell point, entries uniform in
    /// the unit square.
    pub fn random_coefficients<R: Rng>(&self, rng: &mut R) -> BTreeMap<Wavevector, Complex64> {
        let mut out = BTreeMap::new();
        for &k in &self.points {
            if k.is_zero() {
                out.insert(k, Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
            } else if k.is_upper_half() {
                let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                out.insert(k, c);
                out.insert(-k, c.conj());
            }
        }
        out
    }
}

/// Exhaustive search over the cube `|k_j| ≤ ⌈√λ²⌉`.
pub fn enumerate_shell(lambda_sq: u32) -> EigenShell {
    let r = (f64::from(lambda_sq)).sqrt().ceil() as i32;
    let target = i64::from(lambda_sq);
    let mut points = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let k = Wavevector::new(a, b, c);
                if k.norm_sq() == target {
                    points.push(k);
                }
            }
        }
    }
    points.sort();
    EigenShell { lambda_sq, points }
}

/// A periodic eigenfunction of `−Δ` with eigenvalue `λ²`, built from shell
/// coefficients. Rejects coefficients off the shell or without exact
/// Hermitian symmetry.
pub fn periodic_eigenfunction(shell: &EigenShell, coeffs: &BTreeMap<Wavevector, Complex64>) -> Result<ScalarField> {
    for &k in coeffs.keys() {
        if !shell.contains(k) {
            return Err(Error::OffShell { k, lambda_sq: shell.lambda_sq });
        }
    }
    ScalarField::from_modes(coeffs.clone())
}

/// One member of the basis `E_n*`: a product of sines and cosines with
/// non-negative integer frequencies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigTerm {
    pub k: [u32; 3],
    pub factors: [Trig; 3],
    #[serde(default = "unit")]
    pub amplitude: f64,
}

fn unit() -> f64 {
    1.0
}

impl TrigTerm {
    pub fn lambda_sq(&self) -> u64 {
        self.k.iter().map(|&c| u64::from(c) * u64::from(c)).sum()
    }

    pub fn field(&self) -> ScalarField {
        ScalarField::trig_product(self.k, self.factors, self.amplitude)
    }
}

/// A linear combination of `E_n*` basis functions sharing one eigenvalue.
pub fn basis_eigenfunction(terms: &[TrigTerm]) -> Result<(u32, ScalarField)> {
    let first = terms.first().ok_or_else(|| Error::InvalidArgument("empty E_n* combination".into()))?;
    let lambda_sq = first.lambda_sq();
    if let Some(t) = terms.iter().find(|t| t.lambda_sq() != lambda_sq) {
        return Err(Error::EigenMismatch(format!("term {:?} has |k|² = {}, expected {lambda_sq}", t.k, t.lambda_sq())));
    }
    for t in terms {
        if t.k.iter().any(|&c| c as i32 > crate::wavevector::MAX_WAVENUMBER) {
            return Err(Error::WavenumberTooLarge(Wavevector([t.k[0] as i32, t.k[1] as i32, t.k[2] as i32])));
        }
        if !t.amplitude.is_finite() {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
    }
    let lambda_sq = u32::try_from(lambda_sq).map_err(|_| Error::InvalidArgument("eigenvalue overflow".into()))?;
    let field = terms.iter().fold(ScalarField::zero(), |acc, t| &acc + &t.field());
    Ok((lambda_sq, field))
}

/// Mode `sin(k₁x₁) sin(k₂x₂) sin(k₃x₃)` of the Dirichlet problem on `(0,π)³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[u32; 3]", into = "[u32; 3]")]
pub struct DirichletMode {
    k: [u32; 3],
}

impl DirichletMode {
    pub fn new(k: [u32; 3]) -> Result<Self> {
        if k.contains(&0) {
            return Err(Error::ZeroDirichletIndex(k));
        }
        if k.iter().any(|&c| c as i32 > crate::wavevector::MAX_WAVENUMBER) {
            return Err(Error::WavenumberTooLarge(Wavevector([k[0] as i32, k[1] as i32, k[2] as i32])));
        }
        Ok(DirichletMode { k })
    }

    pub fn k(&self) -> [u32; 3] {
        self.k
    }

    pub fn lambda_sq(&self) -> u32 {
        self.k.iter().map(|c| c * c).sum()
    }
}

impl TryFrom<[u32; 3]> for DirichletMode {
    type Error = Error;
    fn try_from(k: [u32; 3]) -> Result<Self> {
        DirichletMode::new(k)
    }
}

impl From<DirichletMode> for [u32; 3] {
    fn from(m: DirichletMode) -> [u32; 3] {
        m.k
    }
}

/// The odd 2π-periodic extension of the box eigenfunction, as a torus field.
pub fn dirichlet_eigenfunction(mode: DirichletMode) -> ScalarField {
    ScalarField::trig_product(mode.k, [Trig::Sin; 3], 1.0)
}

/// One term `(α sin jξ + β cos jξ) · sin(πk(η−L₁)/(L₂−L₁))` of a pipeline profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineTerm {
    pub j: u32,
    pub k: u32,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
}

/// A finite sine-series potential on the slab `L₁ < η < L₂`, periodic in ξ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineProfile {
    #[serde(default)]
    pub l1: f64,
    #[serde(default = "default_l2")]
    pub l2: f64,
    pub terms: Vec<PipelineTerm>,
}

fn default_l2() -> f64 {
    PI
}

impl PipelineProfile {
    pub fn new(l1: f64, l2: f64, terms: Vec<PipelineTerm>) -> Result<Self> {
        let p = PipelineProfile { l1, l2, terms };
        p.validate()?;
        Ok(p)
    }

    /// Slab `(0, π)`.
    pub fn on_default_slab(terms: Vec<PipelineTerm>) -> Result<Self> {
        Self::new(0.0, PI, terms)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.l1.is_finite() && self.l2.is_finite() && self.l1 < self.l2) {
            return Err(Error::InvalidProfile(format!("need finite L1 < L2, got ({}, {})", self.l1, self.l2)));
        }
        if self.terms.is_empty() {
            return Err(Error::InvalidProfile("term list is empty".into()));
        }
        for t in &self.terms {
            if t.j == 0 || t.k == 0 {
                return Err(Error::InvalidProfile(format!("indices must be positive, got j={} k={}", t.j, t.k)));
            }
            if t.j as i32 > crate::wavevector::MAX_WAVENUMBER || t.k as i32 > crate::wavevector::MAX_WAVENUMBER {
                return Err(Error::InvalidProfile(format!("indices too large: j={} k={}", t.j, t.k)));
            }
            if !(t.alpha.is_finite() && t.beta.is_finite()) {
                return Err(Error::InvalidProfile("non-finite amplitude".into()));
            }
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.l2 - self.l1
    }

    /// Vertical angular frequency `πk/(L₂−L₁)` of term index `k`.
    pub fn vertical_frequency(&self, k: u32) -> f64 {
        PI * f64::from(k) / self.width()
    }

    /// Heat decay rate `2j² + π²k²/(L₂−L₁)²` of one term.
    pub fn decay_rate(&self, term: &PipelineTerm) -> f64 {
        let m = self.vertical_frequency(term.k);
        2.0 * f64::from(term.j).powi(2) + m * m
    }

    /// Integer `s` with `L₂ − L₁ = π/s`, when it exists.
    pub fn torus_multiplier(&self) -> Option<i32> {
        let s = PI / self.width();
        let r = s.round();
        (r >= 1.0 && (s - r).abs() <= 1e-9 * r && r <= f64::from(crate::wavevector::MAX_WAVENUMBER)).then_some(r as i32)
    }

    /// Each term scaled by `factor(term)`.
    pub fn scaled_by<F: Fn(&PipelineTerm) -> f64>(&self, factor: F) -> PipelineProfile {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let f = factor(t);
                PipelineTerm { alpha: t.alpha * f, beta: t.beta * f, ..*t }
            })
            .collect();
        PipelineProfile { l1: self.l1, l2: self.l2, terms }
    }

    /// `φ₀(x₁+x₂, x₃)` as a torus field. Requires `L₂ − L₁ = π/s` so that the
    /// vertical sines are 2π-periodic.
    pub fn lifted_field(&self) -> Result<ScalarField> {
        let s = self.torus_multiplier().ok_or(Error::SlabIncommensurate { width: self.width() })?;
        let mut half: BTreeMap<Wavevector, Complex64> = BTreeMap::new();
        for t in &self.terms {
            let j = t.j as i32;
            let m = s * t.k as i32;
            if m > crate::wavevector::MAX_WAVENUMBER {
                return Err(Error::InvalidProfile(format!("vertical frequency {m} too large")));
            }
            // α sin jξ + β cos jξ = A e^{ijξ} + c.c.,  sin(m(η−L₁)) = B e^{imη} + c.c.
            let a = Complex64::new(t.beta / 2.0, -t.alpha / 2.0);
            let b = Complex64::from_polar(1.0, -f64::from(m) * self.l1) / Complex64::new(0.0, 2.0);
            for (kv, c) in [(Wavevector::new(j, j, m), a * b), (Wavevector::new(j, j, -m), a * b.conj())] {
                *half.entry(kv).or_default() += c;
            }
        }
        Ok(ScalarField::from_upper_half(half))
    }
}

/// `φ(t, ξ, η)`, the closed-form heat evolution of a pipeline profile under
/// `φ_t = ν(2∂_ξ² + ∂_η²)φ`, evaluated pointwise with analytic derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct HeatMode {
    profile: PipelineProfile,
    nu: f64,
    t: f64,
}

/// Value and derivatives of `φ` at one point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HeatJet {
    pub value: f64,
    pub d_t: f64,
    pub d_xi: f64,
    pub d_xixi: f64,
    pub d_eta: f64,
    pub d_etaeta: f64,
    pub d_xieta: f64,
}

impl HeatJet {
    /// `φ_t − ν(2φ_ξξ + φ_ηη)`.
    pub fn heat_residual(&self, nu: f64) -> f64 {
        self.d_t - nu * (2.0 * self.d_xixi + self.d_etaeta)
    }
}

pub fn pipeline_heat_mode(profile: &PipelineProfile, nu: f64, t: f64) -> Result<HeatMode> {
    profile.validate()?;
    if !(nu.is_finite() && nu >= 0.0 && t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidArgument(format!("need ν ≥ 0 and t ≥ 0, got ν={nu}, t={t}")));
    }
    Ok(HeatMode { profile: profile.clone(), nu, t })
}

impl HeatMode {
    pub fn profile(&self) -> &PipelineProfile {
        &self.profile
    }

    pub fn eval(&self, xi: f64, eta: f64) -> f64 {
        self.jet(xi, eta).value
    }

    pub fn jet(&self, xi: f64, eta: f64) -> HeatJet {
        let p = &self.profile;
        let mut out = HeatJet::default();
        for term in &p.terms {
            let rate = p.decay_rate(term);
            let decay = (-rate * (self.nu * self.t)).exp();
            let j = f64::from(term.j);
            let m = p.vertical_frequency(term.k);
            let (sj, cj) = (j * xi).sin_cos();
            let (sm, cm) = (m * (eta - p.l1)).sin_cos();
            let h = term.alpha * sj + term.beta * cj;
            let h_xi = j * (term.alpha * cj - term.beta * sj);
            let v = decay * h * sm;
            out.value += v;
            out.d_t += -rate * self.nu * v;
            out.d_xi += decay * h_xi * sm;
            out.d_xixi += -j * j * v;
            out.d_eta += decay * h * m * cm;
            out.d_etaeta += -m * m * v;
            out.d_xieta += decay * h_xi * m * cm;
        }
        out
    }
}
