//! Closed-form solution families of the static Euler and Navier-Stokes
//! equations.
//!
//! * Beltrami: `u = λA(∇)ψ + {A(∇)×∇}ψ` with `−Δψ = λ²ψ`, so that
//!   `curl u = −λu`; viscous evolution is the scalar decay `e^{−νλ²t}`.
//! * Pipeline: `u = (−∂₂φ, ∂₁φ, 0)` with `φ = φ(x₁+x₂, x₃)`; viscous
//!   evolution is the heat flow of `φ`, mode by mode.
//! * Radial: planar swirl `u = (−∂₂φ(r), ∂₁φ(r))` supported in a disc.

mod radial;
mod spec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigen::PipelineProfile;
use crate::error::{Error, Result};
use crate::polyalg::{eval_symbol, PolyVec};
use crate::spectral::{
    self, advection, apply_operator, cross_nabla_operator, cross_nabla_symbol, curl, divergence, grid, ScalarField,
    VectorField,
};
use crate::wavevector::Wavevector;

pub use radial::{RadialJet, RadialProfile, MAX_RADIAL_EXPONENT};
pub use spec::{PlaneModeRecord, SolutionSpec};

/// Relative mismatch allowed between `λ²` and the integer shell radius.
pub const EIGEN_RELATIVE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    BeltramiEuler,
    BeltramiNs,
    PipelineEuler,
    PipelineNs,
    Radial2d,
}

impl Family {
    pub fn is_viscous(self) -> bool {
        matches!(self, Family::BeltramiNs | Family::PipelineNs)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::BeltramiEuler => "beltrami_euler",
            Family::BeltramiNs => "beltrami_ns",
            Family::PipelineEuler => "pipeline_euler",
            Family::PipelineNs => "pipeline_ns",
            Family::Radial2d => "radial_2d",
        }
    }
}

/// Which boundary condition a solution is claimed to satisfy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryClass {
    /// 2π-periodic in every direction.
    #[default]
    Periodic,
    /// Normal trace prescribed on the faces of `(0,π)³`.
    DirichletBox,
    /// Periodic horizontally, `u₃ = 0` on the slab faces.
    PipelineSlab,
    /// `σ·u = 0` on a circle.
    Disc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BeltramiFlow {
    operator: PolyVec,
    lambda: f64,
    lambda_sq: u32,
    psi: ScalarField,
    nu: Option<f64>,
    decay_rate: f64,
    boundary: BoundaryClass,
    u0: VectorField,
}

impl BeltramiFlow {
    pub fn operator(&self) -> &PolyVec {
        &self.operator
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn lambda_sq(&self) -> u32 {
        self.lambda_sq
    }

    pub fn psi(&self) -> &ScalarField {
        &self.psi
    }

    pub fn nu(&self) -> Option<f64> {
        self.nu
    }

    /// Coefficient `r` of the time law `e^{−rνt}`; `λ²` for a genuine solution.
    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    pub fn boundary(&self) -> BoundaryClass {
        self.boundary
    }

    pub fn u0(&self) -> &VectorField {
        &self.u0
    }
}

/// The stream potential of a pipeline flow.
#[derive(Clone, Debug, PartialEq)]
pub enum PipelinePotential {
    /// Sine series on the slab, as used for the viscous family.
    Profile(PipelineProfile),
    /// Arbitrary Hermitian modes `c_{j,m} e^{i(jξ + mη)}`.
    Modes(Vec<PlaneModeRecord>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineFlow {
    potential: PipelinePotential,
    slab: (f64, f64),
    nu: Option<f64>,
    phi0: ScalarField,
    u0: VectorField,
}

impl PipelineFlow {
    pub fn potential(&self) -> &PipelinePotential {
        &self.potential
    }

    pub fn profile(&self) -> Option<&PipelineProfile> {
        match &self.potential {
            PipelinePotential::Profile(p) => Some(p),
            PipelinePotential::Modes(_) => None,
        }
    }

    pub fn slab(&self) -> (f64, f64) {
        self.slab
    }

    pub fn nu(&self) -> Option<f64> {
        self.nu
    }

    /// `φ₀(x₁+x₂, x₃)` on the torus.
    pub fn phi0(&self) -> &ScalarField {
        &self.phi0
    }

    pub fn u0(&self) -> &VectorField {
        &self.u0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialFlow {
    profile: RadialProfile,
}

impl RadialFlow {
    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    pub fn jet(&self, x: [f64; 2]) -> RadialJet {
        self.profile.jet(x)
    }
}

/// A closed-form solution with its parameters and analytic time law.
#[derive(Clone, Debug, PartialEq)]
pub enum FlowSolution {
    Beltrami(BeltramiFlow),
    Pipeline(PipelineFlow),
    Radial(RadialFlow),
}

/// Velocity and its analytic time derivative at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSlice {
    pub t: f64,
    pub u: VectorField,
    pub du_dt: VectorField,
}

/// Pressure recovered from the momentum equation.
#[derive(Clone, Debug, PartialEq)]
pub enum Pressure {
    Field(ScalarField),
    /// Closed-form radial pressure, evaluated through [`RadialFlow::jet`].
    Radial(RadialProfile),
}

impl FlowSolution {
    pub fn family(&self) -> Family {
        match self {
            FlowSolution::Beltrami(b) if b.nu.is_some() => Family::BeltramiNs,
            FlowSolution::Beltrami(_) => Family::BeltramiEuler,
            FlowSolution::Pipeline(p) if p.nu.is_some() => Family::PipelineNs,
            FlowSolution::Pipeline(_) => Family::PipelineEuler,
            FlowSolution::Radial(_) => Family::Radial2d,
        }
    }

    pub fn boundary(&self) -> BoundaryClass {
        match self {
            FlowSolution::Beltrami(b) => b.boundary,
            FlowSolution::Pipeline(_) => BoundaryClass::PipelineSlab,
            FlowSolution::Radial(_) => BoundaryClass::Disc,
        }
    }

    pub fn nu(&self) -> Option<f64> {
        match self {
            FlowSolution::Beltrami(b) => b.nu,
            FlowSolution::Pipeline(p) => p.nu,
            FlowSolution::Radial(_) => None,
        }
    }

    /// The cached initial velocity of the spectral families.
    pub fn u0(&self) -> Option<&VectorField> {
        match self {
            FlowSolution::Beltrami(b) => Some(&b.u0),
            FlowSolution::Pipeline(p) => Some(&p.u0),
            FlowSolution::Radial(_) => None,
        }
    }

    pub fn as_beltrami(&self) -> Option<&BeltramiFlow> {
        match self {
            FlowSolution::Beltrami(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_pipeline(&self) -> Option<&PipelineFlow> {
        match self {
            FlowSolution::Pipeline(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_radial(&self) -> Option<&RadialFlow> {
        match self {
            FlowSolution::Radial(r) => Some(r),
            _ => None,
        }
    }

    /// The same viscous solution with a different viscosity.
    pub fn with_viscosity(&self, nu: f64) -> Result<Self> {
        match self {
            FlowSolution::Beltrami(b) if b.nu.is_some() => {
                if !(nu.is_finite() && nu > 0.0) {
                    return Err(Error::InvalidArgument(format!("viscosity must be positive, got {nu}")));
                }
                Ok(FlowSolution::Beltrami(BeltramiFlow { nu: Some(nu), ..b.clone() }))
            }
            FlowSolution::Pipeline(p) if p.nu.is_some() => {
                if !(nu.is_finite() && nu >= 0.0) {
                    return Err(Error::InvalidArgument(format!("viscosity must be non-negative, got {nu}")));
                }
                Ok(FlowSolution::Pipeline(PipelineFlow { nu: Some(nu), ..p.clone() }))
            }
            _ => Err(Error::InvalidArgument(format!("{} has no viscosity", self.family().name()))),
        }
    }

    /// Marks a Beltrami solution as living on the box `(0,π)³`. The seed
    /// `ψ` must vanish on all six faces.
    pub fn on_dirichlet_box(self) -> Result<Self> {
        match self {
            FlowSolution::Beltrami(mut b) => {
                let trace = dirichlet_face_trace(&b.psi);
                let sup = grid::sup_norm_scalar(&b.psi, grid::minimal_resolution(b.psi.max_wavenumber()) + 15)?;
                if trace > 1e-13 * sup {
                    return Err(Error::EigenMismatch(format!(
                        "ψ does not vanish on the box faces (trace {trace:e}, sup {sup:e})"
                    )));
                }
                b.boundary = BoundaryClass::DirichletBox;
                Ok(FlowSolution::Beltrami(b))
            }
            _ => Err(Error::InvalidArgument("only Beltrami solutions live on the Dirichlet box".into())),
        }
    }
}

/// Points per face edge used for box-face sampling.
pub const FACE_SAMPLES: usize = 32;

/// `[0, π]` sampled at `n` points, endpoints included.
pub fn box_axis(n: usize) -> Vec<f64> {
    (0..n).map(|i| std::f64::consts::PI * i as f64 / (n - 1) as f64).collect()
}

/// Largest `|f|` over the six faces of `(0,π)³`.
pub fn dirichlet_face_trace(f: &ScalarField) -> f64 {
    let xs = box_axis(FACE_SAMPLES);
    let mut worst = 0.0f64;
    for axis in 0..3 {
        for face in [0.0, std::f64::consts::PI] {
            let pinned = [face];
            let mut sets: [&[f64]; 3] = [&xs, &xs, &xs];
            sets[axis] = &pinned;
            worst = grid::eval_tensor_grid(f, sets).iter().fold(worst, |m, v| m.max(v.abs()));
        }
    }
    worst
}

fn beltrami_velocity(a: &PolyVec, lambda: f64, psi: &ScalarField) -> VectorField {
    &apply_operator(a, psi).scale(lambda) + &cross_nabla_operator(a, psi)
}

/// Confirms `−Δψ = λ²ψ` on the coefficients: every mode shares one integer
/// `|k|²` equal to `λ²`.
fn eigen_shell_of(lambda: f64, psi: &ScalarField) -> Result<u32> {
    if !lambda.is_finite() {
        return Err(Error::EigenMismatch(format!("λ = {lambda} is not finite")));
    }
    let target = lambda * lambda;
    let n = match psi.modes().keys().next() {
        Some(k) => k.norm_sq(),
        None => target.round() as i64,
    };
    if let Some(k) = psi.modes().keys().find(|k| k.norm_sq() != n) {
        return Err(Error::EigenMismatch(format!("modes {} and |k|² = {n} lie on different shells", k)));
    }
    if (target - n as f64).abs() > EIGEN_RELATIVE * (n as f64).max(1.0) {
        return Err(Error::EigenMismatch(format!("λ² = {target} but ψ lies on the shell |k|² = {n}")));
    }
    u32::try_from(n).map_err(|_| Error::EigenMismatch("shell radius overflow".into()))
}

/// `u_e = λA(∇)ψ + {A(∇)×∇}ψ` with `φ = λψ` fixed internally.
pub fn make_beltrami_euler(a: &PolyVec, lambda: f64, psi: ScalarField) -> Result<FlowSolution> {
    let lambda_sq = eigen_shell_of(lambda, &psi)?;
    let u0 = beltrami_velocity(a, lambda, &psi);
    Ok(FlowSolution::Beltrami(BeltramiFlow {
        operator: a.clone(),
        lambda,
        lambda_sq,
        psi,
        nu: None,
        decay_rate: f64::from(lambda_sq),
        boundary: BoundaryClass::Periodic,
        u0,
    }))
}

/// `u_ns(t) = e^{−νλ²t} u_e`.
pub fn make_beltrami_ns(a: &PolyVec, lambda: f64, psi: ScalarField, nu: f64) -> Result<FlowSolution> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(Error::InvalidArgument(format!("viscosity must be positive, got {nu}")));
    }
    match make_beltrami_euler(a, lambda, psi)? {
        FlowSolution::Beltrami(mut b) => {
            b.nu = Some(nu);
            Ok(FlowSolution::Beltrami(b))
        }
        _ => unreachable!(),
    }
}

impl BeltramiFlow {
    /// Replaces the time law `e^{−λ²νt}` by `e^{−rate·νt}`. Only a genuine
    /// solution when `rate = λ²`; used to exercise the verifier.
    pub fn with_decay_rate(mut self, rate: f64) -> Self {
        self.decay_rate = rate;
        self
    }
}

fn lift_plane_modes(modes: &[PlaneModeRecord]) -> Result<ScalarField> {
    let mut map = std::collections::BTreeMap::new();
    for r in modes {
        let k = Wavevector::new(r.k[0], r.k[0], r.k[1]);
        if !k.within_cap() {
            return Err(Error::WavenumberTooLarge(k));
        }
        if map.insert(k, Complex64::new(r.re, r.im)).is_some() {
            return Err(Error::InvalidArgument(format!("duplicate plane mode {:?}", r.k)));
        }
    }
    ScalarField::from_modes(map)
}

fn pipeline_velocity(phi: &ScalarField) -> VectorField {
    apply_operator(&PolyVec::unit_cross_nabla(2), phi)
}

/// `u_e^{pp} = (−∂₂φ(x₁+x₂,x₃), ∂₁φ(x₁+x₂,x₃), 0)`.
pub fn make_pipeline_euler(potential: PipelinePotential) -> Result<FlowSolution> {
    let (phi0, slab) = match &potential {
        PipelinePotential::Profile(p) => {
            p.validate()?;
            (p.lifted_field()?, (p.l1, p.l2))
        }
        PipelinePotential::Modes(m) => (lift_plane_modes(m)?, (0.0, std::f64::consts::PI)),
    };
    let u0 = pipeline_velocity(&phi0);
    Ok(FlowSolution::Pipeline(PipelineFlow { potential, slab, nu: None, phi0, u0 }))
}

/// Viscous pipeline flow driven by the heat evolution of the profile.
pub fn make_pipeline_ns(profile: PipelineProfile, nu: f64) -> Result<FlowSolution> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::InvalidArgument(format!("viscosity must be non-negative, got {nu}")));
    }
    match make_pipeline_euler(PipelinePotential::Profile(profile))? {
        FlowSolution::Pipeline(mut p) => {
            p.nu = Some(nu);
            Ok(FlowSolution::Pipeline(p))
        }
        _ => unreachable!(),
    }
}

pub fn make_radial_2d(profile: RadialProfile) -> Result<FlowSolution> {
    profile.validate()?;
    Ok(FlowSolution::Radial(RadialFlow { profile }))
}

/// Heat-semigroup factor for mode `k` after viscous time `tau = νt`.
fn heat_factor(k: Wavevector, tau: f64) -> f64 {
    (-(k.norm_sq() as f64) * tau).exp()
}

/// The closed-form velocity at time `t` and its analytic time derivative.
pub fn eval_at_time(s: &FlowSolution, t: f64) -> Result<TimeSlice> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time must be finite, got {t}")));
    }
    match s {
        FlowSolution::Beltrami(b) => match b.nu {
            None => Ok(TimeSlice { t, u: b.u0.clone(), du_dt: VectorField::zero() }),
            Some(nu) => {
                require_forward_time(t)?;
                let factor = (-b.decay_rate * (nu * t)).exp();
                Ok(TimeSlice { t, u: b.u0.scale(factor), du_dt: b.u0.scale(-b.decay_rate * nu * factor) })
            }
        },
        FlowSolution::Pipeline(p) => match p.nu {
            None => Ok(TimeSlice { t, u: p.u0.clone(), du_dt: VectorField::zero() }),
            Some(nu) => {
                require_forward_time(t)?;
                let tau = nu * t;
                let u = p.u0.map(|c| c.apply_multiplier(|k| Complex64::new(heat_factor(k, tau), 0.0)));
                let du_dt = p.u0.map(|c| {
                    c.apply_multiplier(|k| Complex64::new(-nu * k.norm_sq() as f64 * heat_factor(k, tau), 0.0))
                });
                Ok(TimeSlice { t, u, du_dt })
            }
        },
        FlowSolution::Radial(_) => Err(Error::NotSpectral("radial_2d")),
    }
}

fn require_forward_time(t: f64) -> Result<()> {
    if t < 0.0 {
        return Err(Error::InvalidArgument(format!("viscous families need t ≥ 0, got {t}")));
    }
    Ok(())
}

/// `P = −|u|²/2` with zero mean, valid whenever `u × curl u = 0`.
pub fn beltrami_pressure(u: &VectorField) -> ScalarField {
    spectral::dot(u, u).scale(-0.5).without_mean()
}

/// Pressure from `∇P = −(u·∇)u` by projection: `P̂ = (ik·Ĝ)/|k|²` for
/// `G = (u·∇)u`. Fails when `G` has a curl beyond `tolerance` (relative to
/// `max|k|²·‖u‖²`).
pub fn pressure_by_projection(u: &VectorField, tolerance: f64) -> Result<ScalarField> {
    let g = advection(u, u);
    let kmax = u.max_k_norm();
    let scale = (kmax * u.l2_norm()).powi(2);
    let rot = curl(&g).l2_norm();
    let norm = if scale > 0.0 { rot / scale } else { rot };
    if norm > tolerance {
        return Err(Error::NonGradient { norm, tolerance });
    }
    Ok(divergence(&g).apply_multiplier(|k| {
        if k.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(1.0 / k.norm_sq() as f64, 0.0)
        }
    }))
}

/// Default curl tolerance for [`pressure_by_projection`].
pub const PRESSURE_CURL_TOLERANCE: f64 = 1e-11;

/// Pressure at time `t`, normalized to zero mean.
///
/// Beltrami families use `−|u|²/2`: `(u·∇)u = ∇|u|²/2 − u×ω` and `ω ∥ u`.
/// For the viscous Beltrami flow `u_t = νΔu`, so the same formula holds.
pub fn recover_pressure(s: &FlowSolution, t: f64) -> Result<Pressure> {
    match s {
        FlowSolution::Beltrami(_) => Ok(Pressure::Field(beltrami_pressure(&eval_at_time(s, t)?.u))),
        FlowSolution::Pipeline(_) => {
            Ok(Pressure::Field(pressure_by_projection(&eval_at_time(s, t)?.u, PRESSURE_CURL_TOLERANCE)?))
        }
        FlowSolution::Radial(r) => Ok(Pressure::Radial(r.profile)),
    }
}

/// A constructed member of the set `B` matching a given field.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipWitness {
    pub candidate: usize,
    pub lambda: f64,
    pub psi: ScalarField,
    pub relative_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub witness: Option<MembershipWitness>,
    pub reason: String,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.witness.is_some()
    }
}

/// Relative agreement required for membership.
pub const MEMBERSHIP_RELATIVE: f64 = 1e-12;

/// Searches the candidate list `(A, λ²)` for `ψ ∈ E_n*` with
/// `u = λA(∇)ψ + {A(∇)×∇}ψ`, trying `λ = +√λ²` then `−√λ²`.
///
/// Per mode the construction is the rank-one map `ψ̂(k) ↦ M(k)ψ̂(k)` with
/// `M(k) = λP(ik) + P(ik)×ik`, so `ψ̂` is the least-squares coefficient and
/// the reconstructed field is compared against `u`.
pub fn membership_in_b(u: &VectorField, candidates: &[(PolyVec, u32)]) -> Membership {
    let div = divergence(u);
    let div_scale = u.l2_norm() * u.max_k_norm();
    if div.l2_norm() > 1e-13 * div_scale.max(f64::MIN_POSITIVE) {
        return Membership { witness: None, reason: "field is not divergence-free".into() };
    }
    let support = u.support();
    let norm = u.l2_norm();
    for (idx, (a, lambda_sq)) in candidates.iter().enumerate() {
        if support.iter().any(|k| k.norm_sq() != i64::from(*lambda_sq)) {
            continue;
        }
        let root = f64::from(*lambda_sq).sqrt();
        for lambda in [root, -root] {
            let mut half = Vec::new();
            let mut feasible = true;
            for &k in support.iter().filter(|k| k.is_zero() || k.is_upper_half()) {
                let p = eval_symbol(a, k);
                let c = cross_nabla_symbol(a, k);
                let m: [Complex64; 3] = std::array::from_fn(|j| p[j] * lambda + c[j]);
                let mm: f64 = m.iter().map(|z| z.norm_sqr()).sum();
                let uk = u.coefficient(k);
                if mm == 0.0 {
                    if uk.iter().any(|z| z.norm() > MEMBERSHIP_RELATIVE * norm) {
                        feasible = false;
                        break;
                    }
                    continue;
                }
                let num: Complex64 = (0..3).map(|j| m[j].conj() * uk[j]).sum();
                half.push((k, num / mm));
            }
            if !feasible {
                continue;
            }
            let psi = ScalarField::from_upper_half(half);
            let rebuilt = beltrami_velocity(a, lambda, &psi);
            let residual = (u - &rebuilt).l2_norm();
            let rel = if norm > 0.0 { residual / norm } else { residual };
            if rel <= MEMBERSHIP_RELATIVE {
                return Membership {
                    witness: Some(MembershipWitness { candidate: idx, lambda, psi, relative_residual: rel }),
                    reason: format!("matches candidate {idx} with λ = {lambda}"),
                };
            }
        }
    }
    Membership { witness: None, reason: "no candidate reproduces the field".into() }
}
