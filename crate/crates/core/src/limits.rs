//! Vanishing-viscosity limits of the viscous families.
//!
//! Along the curve `Γ_μ = {(ν, t) : νt = μ}` every viscous solution here is
//! constant, so `ν → 0, t → ∞` along `Γ_μ` has the static limit
//! [`path_limit`]`(s, μ)`. Different `μ` give different limits, which
//! [`double_limit_certificate`] turns into a certified lack of a double limit.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::{
    box_axis, eval_at_time, make_beltrami_euler, make_pipeline_euler, BoundaryClass, FlowSolution, PipelinePotential,
    RadialProfile, FACE_SAMPLES,
};
use crate::spectral::{grid, VectorField};
use crate::verify::{verify_solution, Tolerances, VerificationReport, DEFAULT_TIMES};

/// The path `tν = μ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    pub mu: f64,
}

/// One `(ν, t)` pair on a path. `exact` records whether `fl(ν·t) = μ`; `nu`
/// may differ from the requested viscosity by a few ulps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathPoint {
    pub nu: f64,
    pub t: f64,
    pub exact: bool,
}

/// How far [`PathSpec::point`] searches around `μ/ν` for an exact product.
const T_ULP_SEARCH: usize = 64;
const NU_ULP_SEARCH: usize = 8;

impl PathSpec {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu.is_finite() && mu >= 0.0) {
            return Err(Error::InvalidArgument(format!("path constant must be finite and ≥ 0, got {mu}")));
        }
        Ok(PathSpec { mu })
    }

    /// The point of the path at viscosity `ν`.
    ///
    /// Starting from `t = μ/ν`, walks `t` outward a few ulps until the
    /// floating product `ν·t` reproduces `μ` bit for bit. When `μ` has a
    /// larger mantissa than `t` one ulp of `t` can step over `μ`; `ν` is then
    /// moved by an ulp and the search repeated.
    pub fn point(&self, nu: f64) -> Result<PathPoint> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::InvalidArgument(format!("path viscosity must be positive, got {nu}")));
        }
        if !(self.mu / nu).is_finite() {
            return Err(Error::InvalidArgument(format!("μ/ν overflows for ν = {nu}")));
        }
        let (mut nu_up, mut nu_down) = (nu, nu);
        for _ in 0..=NU_ULP_SEARCH {
            for v in [nu_up, nu_down] {
                if let Some(t) = self.exact_time(v) {
                    return Ok(PathPoint { nu: v, t, exact: true });
                }
            }
            nu_up = nu_up.next_up();
            nu_down = nu_down.next_down();
        }
        Ok(PathPoint { nu, t: self.mu / nu, exact: false })
    }

    fn exact_time(&self, nu: f64) -> Option<f64> {
        let t0 = self.mu / nu;
        let (mut up, mut down) = (t0, t0);
        for _ in 0..=T_ULP_SEARCH {
            for t in [up, down] {
                if nu * t == self.mu {
                    return Some(t);
                }
            }
            up = up.next_up();
            down = down.next_down();
        }
        None
    }
}

/// The static solution reached along `tν = μ`.
///
/// Beltrami: `ψ ↦ e^{−μλ²}ψ`, still on the same shell. Pipeline: each term
/// of the profile is damped by `e^{−μ|k|²}` with `|k|²` its lifted lattice
/// rate `2j² + (sk)²`.
pub fn path_limit(s: &FlowSolution, mu: f64) -> Result<FlowSolution> {
    PathSpec::new(mu)?;
    match s {
        FlowSolution::Beltrami(b) if b.nu().is_some() => {
            let factor = (-b.decay_rate() * mu).exp();
            let limit = make_beltrami_euler(b.operator(), b.lambda(), b.psi().scale(factor))?;
            match b.boundary() {
                BoundaryClass::DirichletBox => limit.on_dirichlet_box(),
                _ => Ok(limit),
            }
        }
        FlowSolution::Pipeline(p) if p.nu().is_some() => {
            let profile = p.profile().expect("viscous pipelines carry a profile");
            let m = profile.torus_multiplier().ok_or(Error::SlabIncommensurate { width: profile.width() })?;
            let damped = profile.scaled_by(|t| {
                let rate = 2.0 * f64::from(t.j).powi(2) + f64::from(m * t.k as i32).powi(2);
                (-rate * mu).exp()
            });
            make_pipeline_euler(PipelinePotential::Profile(damped))
        }
        _ => Err(Error::InvalidArgument(format!("{} is not a viscous family", s.family().name()))),
    }
}

/// Grid sup norm, fine enough to resolve the field.
fn sup(u: &VectorField) -> f64 {
    let n = grid::minimal_resolution(u.max_wavenumber()).max(16);
    grid::sup_norm_vector(u, n).expect("resolution above band limit")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathRow {
    pub nu: f64,
    pub t: f64,
    pub exact_product: bool,
    pub sup_difference: f64,
}

/// `‖u(μ/ν) − u_limit‖∞` along a sequence of viscosities.
pub fn empirical_path_convergence(s: &FlowSolution, mu: f64, nus: &[f64]) -> Result<Vec<PathRow>> {
    let path = PathSpec::new(mu)?;
    let limit = path_limit(s, mu)?;
    let target = limit.u0().expect("spectral limit");
    nus.iter()
        .map(|&nu| {
            let p = path.point(nu)?;
            let u = eval_at_time(&s.with_viscosity(p.nu)?, p.t)?.u;
            Ok(PathRow { nu: p.nu, t: p.t, exact_product: p.exact, sup_difference: sup(&(&u - target)) })
        })
        .collect()
}

pub fn path_rows_csv(rows: &[PathRow]) -> String {
    let mut out = String::from("nu,t,exact_product,sup_difference\n");
    for r in rows {
        out += &format!("{:.16e},{:.16e},{},{:.16e}\n", r.nu, r.t, r.exact_product, r.sup_difference);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitCertificate {
    pub mu1: f64,
    pub mu2: f64,
    /// Grid sup norm of the difference of the two path limits.
    pub distance: f64,
    /// `|e^{−μ₁r} − e^{−μ₂r}|·‖u₀‖∞` when the limits are multiples of `u₀`
    /// with a single decay rate `r`.
    pub lower_bound: Option<f64>,
    pub limit_reports: [VerificationReport; 2],
    pub certified: bool,
}

/// Single decay rate of the time law, when there is one.
fn single_rate(s: &FlowSolution) -> Option<f64> {
    match s {
        FlowSolution::Beltrami(b) => Some(b.decay_rate()),
        FlowSolution::Pipeline(p) => {
            let profile = p.profile()?;
            let m = profile.torus_multiplier()?;
            let mut rates =
                profile.terms.iter().map(|t| 2.0 * f64::from(t.j).powi(2) + f64::from(m * t.k as i32).powi(2));
            let first = rates.next()?;
            rates.all(|r| r == first).then_some(first)
        }
        FlowSolution::Radial(_) => None,
    }
}

/// Two path limits that differ certify that `lim_{(ν,1/t)→(0,0)}` does not
/// exist.
pub fn double_limit_certificate(s: &FlowSolution, mu1: f64, mu2: f64, tol: &Tolerances) -> Result<LimitCertificate> {
    if mu1 == mu2 {
        return Err(Error::InvalidArgument(format!("path constants must differ, both are {mu1}")));
    }
    let a = path_limit(s, mu1)?;
    let b = path_limit(s, mu2)?;
    let ua = a.u0().expect("spectral limit");
    let ub = b.u0().expect("spectral limit");
    let distance = sup(&(ua - ub));
    let lower_bound =
        single_rate(s).map(|r| ((-mu1 * r).exp() - (-mu2 * r).exp()).abs() * sup(s.u0().expect("spectral")));
    let ra = verify_solution(&a, &DEFAULT_TIMES, tol)?;
    let rb = verify_solution(&b, &DEFAULT_TIMES, tol)?;
    let certified = ra.overall && rb.overall && distance > 0.0;
    Ok(LimitCertificate { mu1, mu2, distance, lower_bound, limit_reports: [ra, rb], certified })
}

/// Identifier of the generator behind [`sample_random_solutions`].
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.3), seed_from_u64, uniform f64 via rand 0.8 gen_range";

pub const DEFAULT_MU_MAX: f64 = 2.0;

#[derive(Clone, Debug, PartialEq)]
pub struct RandomSample {
    pub algorithm: &'static str,
    pub seed: u64,
    pub mu_max: f64,
    pub mus: Vec<f64>,
    pub solutions: Vec<FlowSolution>,
    pub reports: Vec<VerificationReport>,
}

impl RandomSample {
    pub fn all_verified(&self) -> bool {
        self.reports.iter().all(|r| r.overall)
    }
}

/// Path limits at `count` values of `μ` drawn uniformly from `[0, mu_max]`.
/// All draws happen before any solution is built.
pub fn sample_random_solutions(
    s: &FlowSolution,
    mu_max: f64,
    count: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<RandomSample> {
    if !(mu_max.is_finite() && mu_max > 0.0) {
        return Err(Error::InvalidArgument(format!("mu_max must be positive, got {mu_max}")));
    }
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mus: Vec<f64> = (0..count).map(|_| rng.gen_range(0.0..=mu_max)).collect();
    let solutions = mus.iter().map(|&mu| path_limit(s, mu)).collect::<Result<Vec<_>>>()?;
    let reports = solutions.iter().map(|sol| verify_solution(sol, &DEFAULT_TIMES, tol)).collect::<Result<Vec<_>>>()?;
    Ok(RandomSample { algorithm: RNG_ALGORITHM, seed, mu_max, mus, solutions, reports })
}

/// Relative distance below which two solutions count as the same.
pub const NONUNIQUENESS_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonuniquenessCertificate {
    pub family: String,
    pub boundary: BoundaryClass,
    pub norm_a: f64,
    pub norm_b: f64,
    /// `‖a − b‖` in the family's L² norm (mean square on the torus,
    /// integral on the disc).
    pub distance: f64,
    pub threshold: f64,
    pub reports: [VerificationReport; 2],
    pub certified: bool,
}

fn family_class(s: &FlowSolution) -> &'static str {
    match s {
        FlowSolution::Beltrami(_) => "beltrami",
        FlowSolution::Pipeline(_) => "pipeline",
        FlowSolution::Radial(_) => "radial",
    }
}

fn radial_l2(p: &RadialProfile) -> f64 {
    RadialProfile::energy_integral(|r| p.swirl(r), p.radius).sqrt()
}

/// Two distinct static solutions sharing one boundary condition.
pub fn nonuniqueness_certificate(
    a: &FlowSolution,
    b: &FlowSolution,
    tol: &Tolerances,
) -> Result<NonuniquenessCertificate> {
    if a.nu().is_some() || b.nu().is_some() {
        return Err(Error::Incomparable("non-uniqueness is certified for static solutions".into()));
    }
    if family_class(a) != family_class(b) || a.boundary() != b.boundary() {
        return Err(Error::Incomparable(format!(
            "{} ({:?}) vs {} ({:?})",
            a.family().name(),
            a.boundary(),
            b.family().name(),
            b.boundary()
        )));
    }
    let (norm_a, norm_b, distance) = match (a, b) {
        (FlowSolution::Radial(ra), FlowSolution::Radial(rb)) => {
            let (pa, pb) = (*ra.profile(), *rb.profile());
            let radius = pa.radius.max(pb.radius);
            let d = RadialProfile::energy_integral(|r| pa.swirl(r) - pb.swirl(r), radius).sqrt();
            (radial_l2(&pa), radial_l2(&pb), d)
        }
        _ => {
            let (ua, ub) = (a.u0().expect("spectral"), b.u0().expect("spectral"));
            (ua.l2_norm(), ub.l2_norm(), (ua - ub).l2_norm())
        }
    };
    let threshold = NONUNIQUENESS_THRESHOLD * (norm_a + norm_b);
    if distance <= threshold {
        return Err(Error::SameSolution { distance, threshold });
    }
    let ra = verify_solution(a, &DEFAULT_TIMES, tol)?;
    let rb = verify_solution(b, &DEFAULT_TIMES, tol)?;
    let certified = ra.overall && rb.overall;
    Ok(NonuniquenessCertificate {
        family: a.family().name().to_string(),
        boundary: a.boundary(),
        norm_a,
        norm_b,
        distance,
        threshold,
        reports: [ra, rb],
        certified,
    })
}

/// Points per axis in the Prandtl study.
pub const PRANDTL_SAMPLES: usize = FACE_SAMPLES;

/// Relative width of the boundary strip.
pub const DEFAULT_STRIP_FRACTION: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrandtlRow {
    pub nu: f64,
    pub t: f64,
    pub sup_difference: f64,
    pub strip_difference: f64,
    /// `sup_difference / (1 − e^{−rνt})` for single-rate time laws.
    pub profile_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrandtlStudy {
    pub delta: f64,
    pub rows: Vec<PrandtlRow>,
    /// `d(ν)` decreases strictly along the sequence.
    pub converges: bool,
    /// The strip never exceeds the whole domain.
    pub no_amplification: bool,
    pub verdict: bool,
}

impl PrandtlStudy {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("nu,t,sup_difference,strip_difference\n");
        for r in &self.rows {
            out += &format!("{:.16e},{:.16e},{:.16e},{:.16e}\n", r.nu, r.t, r.sup_difference, r.strip_difference);
        }
        out
    }
}

/// Per-axis sample coordinates, distance to the wall, and domain width.
type DomainSamples = ([Vec<f64>; 3], Box<dyn Fn([f64; 3]) -> f64>, f64);

/// Sample points of the physical domain and each point's distance to the wall.
fn domain_samples(s: &FlowSolution) -> Result<DomainSamples> {
    match s {
        FlowSolution::Beltrami(b) if b.boundary() == BoundaryClass::DirichletBox => {
            let xs = box_axis(PRANDTL_SAMPLES);
            let wall = |x: [f64; 3]| x.iter().map(|&c| c.min(PI - c)).fold(f64::INFINITY, f64::min);
            Ok(([xs.clone(), xs.clone(), xs], Box::new(wall), PI))
        }
        FlowSolution::Pipeline(p) => {
            let (l1, l2) = p.slab();
            let n = PRANDTL_SAMPLES;
            let periodic: Vec<f64> = (0..n).map(|i| 2.0 * PI * i as f64 / n as f64).collect();
            let vertical: Vec<f64> = (0..n).map(|i| l1 + (l2 - l1) * i as f64 / (n - 1) as f64).collect();
            let wall = move |x: [f64; 3]| (x[2] - l1).min(l2 - x[2]);
            Ok(([periodic.clone(), periodic, vertical], Box::new(wall), l2 - l1))
        }
        _ => Err(Error::InvalidArgument(format!(
            "{} on a {:?} domain has no wall to study",
            s.family().name(),
            s.boundary()
        ))),
    }
}

/// `d(ν) = sup |u_ns(t) − u_e|` over the domain and over the strip of width
/// `δ` along the wall, for each `ν`.
pub fn prandtl_study(s: &FlowSolution, t: f64, nus: &[f64], delta: Option<f64>) -> Result<PrandtlStudy> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(format!("study time must be positive, got {t}")));
    }
    if nus.is_empty() {
        return Err(Error::InvalidArgument("empty viscosity sequence".into()));
    }
    let (axes, wall, width) = domain_samples(s)?;
    let delta = delta.unwrap_or(DEFAULT_STRIP_FRACTION * width);
    let u_e = s.u0().expect("spectral family");
    let rate = single_rate(s);
    let mut points = Vec::with_capacity(axes[0].len() * axes[1].len() * axes[2].len());
    for &a in &axes[0] {
        for &b in &axes[1] {
            for &c in &axes[2] {
                points.push([a, b, c]);
            }
        }
    }
    let mut rows = Vec::with_capacity(nus.len());
    for &nu in nus {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::InvalidArgument(format!("viscosities must be positive, got {nu}")));
        }
        let u = eval_at_time(&s.with_viscosity(nu)?, t)?.u;
        let diff = &u - u_e;
        let mags = grid::vector_magnitudes(&diff, [&axes[0], &axes[1], &axes[2]]);
        let (mut all, mut strip) = (0.0f64, 0.0f64);
        for (x, m) in points.iter().zip(mags) {
            all = all.max(m);
            if wall(*x) <= delta {
                strip = strip.max(m);
            }
        }
        let profile_ratio = rate.map(|r| all / (-(-r * (nu * t)).exp_m1()));
        rows.push(PrandtlRow { nu, t, sup_difference: all, strip_difference: strip, profile_ratio });
    }
    let converges = rows.windows(2).all(|w| w[1].nu < w[0].nu && w[1].sup_difference < w[0].sup_difference);
    let no_amplification = rows.iter().all(|r| r.strip_difference <= r.sup_difference);
    Ok(PrandtlStudy { delta, rows, converges, no_amplification, verdict: converges && no_amplification })
}

#[cfg(test)]
mod tests;
