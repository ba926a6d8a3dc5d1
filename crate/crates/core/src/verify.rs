//! Residual certification. Every identity a solution family is supposed to
//! satisfy is reduced to one [`CheckRecord`]: a scale-free residual norm, the
//! tolerance it is held to, and the verdict.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::{
    box_axis, eval_at_time, recover_pressure, BoundaryClass, FlowSolution, Pressure, RadialFlow, FACE_SAMPLES,
};
use crate::spectral::{
    advection, commutator, curl, derivative, gradient, grid, laplacian, product, ScalarField, VectorField,
};
use crate::wavevector::Wavevector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    #[serde(rename = "check")]
    pub name: String,
    pub norm: f64,
    pub tolerance: f64,
    pub normalization: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, norm: f64, tolerance: f64, normalization: impl Into<String>) -> Self {
        CheckRecord { name: name.into(), norm, tolerance, normalization: normalization.into(), pass: norm <= tolerance }
    }

    fn at_time(mut self, t: f64) -> Self {
        self.name = format!("{}@t={t}", self.name);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub checks: Vec<CheckRecord>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn new(family: impl Into<String>) -> Self {
        VerificationReport { family: family.into(), checks: Vec::new(), overall: true }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.overall &= record.pass;
        self.checks.push(record);
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Fixed-width table, one check per line.
    pub fn render_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let mut out = format!("{:<width$}  {:>12}  {:>9}  result\n", "check", "norm", "tolerance");
        for c in &self.checks {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            out += &format!("{:<width$}  {:>12.3e}  {:>9.1e}  {verdict}\n", c.name, c.norm, c.tolerance);
        }
        out += &format!("overall: {}\n", if self.overall { "pass" } else { "FAIL" });
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub divergence: f64,
    pub beltrami: f64,
    pub static_euler: f64,
    pub ns_vorticity: f64,
    pub momentum: f64,
    pub boundary: f64,
    pub orthogonality: f64,
    pub oracle: f64,
    pub radial: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            divergence: 1e-13,
            beltrami: 1e-12,
            static_euler: 1e-11,
            ns_vorticity: 1e-11,
            momentum: 1e-11,
            boundary: 1e-12,
            orthogonality: 1e-12,
            oracle: 1e-12,
            radial: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn scaled(&self, factor: f64) -> Self {
        Tolerances {
            divergence: self.divergence * factor,
            beltrami: self.beltrami * factor,
            static_euler: self.static_euler * factor,
            ns_vorticity: self.ns_vorticity * factor,
            momentum: self.momentum * factor,
            boundary: self.boundary * factor,
            orthogonality: self.orthogonality * factor,
            oracle: self.oracle * factor,
            radial: self.radial * factor,
        }
    }
}

/// `num/den`, with `0/0 = 0` and `x/0 = ∞`.
fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Mean-square norm of a per-mode vector residual, evaluated directly on the
/// coefficients so nothing is dropped by canonicalization.
fn mode_residual<F: Fn(Wavevector, [Complex64; 3]) -> [Complex64; 3]>(u: &VectorField, r: F) -> f64 {
    u.support()
        .into_iter()
        .map(|k| r(k, u.coefficient(k)).iter().map(|z| z.norm_sqr()).sum::<f64>())
        .sum::<f64>()
        .sqrt()
}

/// `sup_k |k·û(k)| / (‖u‖·max|k|)`.
pub fn check_divergence(u: &VectorField, tolerance: f64) -> CheckRecord {
    let worst = u
        .support()
        .into_iter()
        .map(|k| {
            let c = u.coefficient(k);
            (0..3).map(|j| c[j] * f64::from(k.0[j])).sum::<Complex64>().norm()
        })
        .fold(0.0, f64::max);
    CheckRecord::new("divergence", ratio(worst, u.l2_norm() * u.max_k_norm()), tolerance, "sup_k |k·û| / (‖u‖·max|k|)")
}

/// `‖curl u + λu‖ / (|λ|‖u‖ + ‖curl u‖)`.
pub fn check_beltrami(u: &VectorField, lambda: f64, tolerance: f64) -> CheckRecord {
    let res = mode_residual(u, |k, c| {
        let [a, b, d] = k.as_f64();
        let ik = [Complex64::new(0.0, a), Complex64::new(0.0, b), Complex64::new(0.0, d)];
        [
            ik[1] * c[2] - ik[2] * c[1] + c[0] * lambda,
            ik[2] * c[0] - ik[0] * c[2] + c[1] * lambda,
            ik[0] * c[1] - ik[1] * c[0] + c[2] * lambda,
        ]
    });
    let den = lambda.abs() * u.l2_norm() + curl(u).l2_norm();
    CheckRecord::new("beltrami", ratio(res, den), tolerance, "‖curl u + λu‖ / (|λ|‖u‖ + ‖curl u‖)")
}

/// `‖(u·∇)ω − (ω·∇)u‖ / (max|k|·‖u‖·‖ω‖)` with `ω = curl u`.
pub fn check_static_euler(u: &VectorField, tolerance: f64) -> CheckRecord {
    let w = curl(u);
    let q = commutator(u, &w);
    let den = u.max_k_norm() * u.l2_norm() * w.l2_norm();
    CheckRecord::new("static_euler", ratio(q.l2_norm(), den), tolerance, "‖(u·∇)ω − (ω·∇)u‖ / (max|k|·‖u‖·‖ω‖)")
}

fn require_viscous(s: &FlowSolution) -> Result<f64> {
    s.nu().ok_or_else(|| Error::InvalidArgument(format!("{} is not a Navier-Stokes family", s.family().name())))
}

/// `ω_t − νΔω + (u·∇)ω − (ω·∇)u` at each time, relative to the sum of the
/// magnitudes of its terms.
pub fn check_ns_vorticity(s: &FlowSolution, times: &[f64], tolerance: f64) -> Result<Vec<CheckRecord>> {
    let nu = require_viscous(s)?;
    times
        .iter()
        .map(|&t| {
            let slice = eval_at_time(s, t)?;
            let w = curl(&slice.u);
            let w_t = curl(&slice.du_dt);
            let visc = w.map(laplacian).scale(nu);
            let q = commutator(&slice.u, &w);
            let res = &(&w_t - &visc) + &q;
            let den = w_t.l2_norm() + visc.l2_norm() + slice.u.max_k_norm() * slice.u.l2_norm() * w.l2_norm();
            Ok(CheckRecord::new(
                "ns_vorticity",
                ratio(res.l2_norm(), den),
                tolerance,
                "‖ω_t − νΔω + (u·∇)ω − (ω·∇)u‖ / (‖ω_t‖ + ν‖Δω‖ + max|k|·‖u‖·‖ω‖)",
            )
            .at_time(t))
        })
        .collect()
}

/// Full momentum balance `u_t − νΔu + (u·∇)u + ∇P` with the recovered
/// pressure. Radial flows are checked pointwise through [`radial_checks`].
pub fn check_momentum(s: &FlowSolution, t: f64, tolerance: f64) -> Result<CheckRecord> {
    let label = "‖u_t − νΔu + (u·∇)u + ∇P‖ / (‖u_t‖ + ν‖Δu‖ + max|k|·‖u‖²)";
    let slice = eval_at_time(s, t)?;
    let nu = s.nu().unwrap_or(0.0);
    let u = &slice.u;
    let pressure = match recover_pressure(s, t) {
        Ok(Pressure::Field(p)) => p,
        Ok(Pressure::Radial(_)) => return Err(Error::NotSpectral("radial_2d")),
        Err(Error::NonGradient { norm, .. }) => {
            let label = format!("no pressure exists: relative curl of (u·∇)u is {norm:.3e}");
            return Ok(CheckRecord::new("momentum", f64::INFINITY, tolerance, label));
        }
        Err(e) => return Err(e),
    };
    let visc = u.map(laplacian).scale(nu);
    let res = &(&(&slice.du_dt - &visc) + &advection(u, u)) + &gradient(&pressure);
    let den = slice.du_dt.l2_norm() + visc.l2_norm() + u.max_k_norm() * u.l2_norm().powi(2);
    let mut rec = CheckRecord::new("momentum", ratio(res.l2_norm(), den), tolerance, label);
    if s.nu().is_some() {
        rec = rec.at_time(t);
    }
    Ok(rec)
}

/// Pointwise `ω·u` on a uniform grid relative to `‖ω‖∞‖u‖∞`.
pub fn check_orthogonality_omega_u(u: &VectorField, tolerance: f64) -> CheckRecord {
    let label = "max |ω·u| / (‖ω‖∞·‖u‖∞) on a uniform grid";
    if u.is_zero() {
        return CheckRecord::new("omega_perp_u", 0.0, tolerance, label);
    }
    let w = curl(u);
    let n = grid::minimal_resolution(u.max_wavenumber()).max(16);
    let su = grid::sample_vector(u, n).expect("resolution chosen above the band limit");
    let sw = grid::sample_vector(&w, n).expect("curl keeps the band limit");
    let worst = (0..su.points())
        .map(|i| (0..3).map(|j| su.values[j][i] * sw.values[j][i]).sum::<f64>().abs())
        .fold(0.0, f64::max);
    CheckRecord::new("omega_perp_u", ratio(worst, su.sup_norm() * sw.sup_norm()), tolerance, label)
}

/// Which boundary condition to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    Periodic,
    DirichletNormal,
    Pipeline,
    DiscTangent,
}

impl BoundaryKind {
    pub fn for_class(class: BoundaryClass) -> Self {
        match class {
            BoundaryClass::Periodic => BoundaryKind::Periodic,
            BoundaryClass::DirichletBox => BoundaryKind::DirichletNormal,
            BoundaryClass::PipelineSlab => BoundaryKind::Pipeline,
            BoundaryClass::Disc => BoundaryKind::DiscTangent,
        }
    }
}

/// Seed shared by every randomized sampling inside the verifier.
pub const SAMPLING_SEED: u64 = 0x5eed_f10e;

/// Largest `|u(x + 2πe_j) − u(x)|` over 64 random points, relative to the
/// largest `|u(x)|` seen.
fn periodic_defect(u: &VectorField) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for _ in 0..64 {
        let x: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.0..2.0 * PI));
        let base = u.eval_at(x);
        scale = scale.max(norm3(base));
        for j in 0..3 {
            let mut y = x;
            y[j] += 2.0 * PI;
            let shifted = u.eval_at(y);
            worst = worst.max(norm3([shifted[0] - base[0], shifted[1] - base[1], shifted[2] - base[2]]));
        }
    }
    ratio(worst, scale)
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub fn check_boundary(s: &FlowSolution, t: f64, kind: BoundaryKind, tolerance: f64) -> Result<CheckRecord> {
    let rec = match (kind, s) {
        (BoundaryKind::Periodic, FlowSolution::Radial(_))
        | (BoundaryKind::DiscTangent, FlowSolution::Beltrami(_) | FlowSolution::Pipeline(_)) => {
            return Err(Error::InvalidArgument(format!("{kind:?} does not apply to {}", s.family().name())))
        }
        (BoundaryKind::Periodic, _) => {
            let u = eval_at_time(s, t)?.u;
            CheckRecord::new("boundary_periodic", periodic_defect(&u), tolerance, "max |u(x+2πe_j) − u(x)| / max |u|")
        }
        (BoundaryKind::DirichletNormal, FlowSolution::Beltrami(b)) => {
            let u = eval_at_time(s, t)?.u;
            // Prescribed trace: the Euler field scaled by the exact law e^{−νλ²t}.
            let law = b.nu().map_or(1.0, |nu| (-f64::from(b.lambda_sq()) * (nu * t)).exp());
            let normal_only = b.nu().is_none();
            let xs = box_axis(FACE_SAMPLES);
            let (mut worst, mut scale) = (0.0f64, 0.0f64);
            for axis in 0..3 {
                for (face, sign) in [(0.0, -1.0), (PI, 1.0)] {
                    let pinned = [face];
                    let mut sets: [&[f64]; 3] = [&xs, &xs, &xs];
                    sets[axis] = &pinned;
                    let vals: Vec<Vec<f64>> = u.components().iter().map(|c| grid::eval_tensor_grid(c, sets)).collect();
                    let mut idx = 0;
                    for &a in sets[0] {
                        for &bb in sets[1] {
                            for &c in sets[2] {
                                let target = b.u0().eval_at([a, bb, c]).map(|v| v * law);
                                let got = [vals[0][idx], vals[1][idx], vals[2][idx]];
                                let d = if normal_only {
                                    (sign * (got[axis] - target[axis])).abs()
                                } else {
                                    norm3([got[0] - target[0], got[1] - target[1], got[2] - target[2]])
                                };
                                worst = worst.max(d);
                                scale = scale.max(norm3(target));
                                idx += 1;
                            }
                        }
                    }
                }
            }
            let (name, label) = if normal_only {
                ("boundary_dirichlet_normal", "max_faces |σ·(u − u_b)| / max |u_b|")
            } else {
                ("boundary_dirichlet_full", "max_faces |u − u_b| / max |u_b|")
            };
            CheckRecord::new(name, ratio(worst, scale), tolerance, label)
        }
        (BoundaryKind::DirichletNormal, _) => {
            return Err(Error::InvalidArgument("Dirichlet box traces apply to Beltrami solutions".into()))
        }
        (BoundaryKind::Pipeline, FlowSolution::Pipeline(p)) => {
            let u = eval_at_time(s, t)?.u;
            let n = grid::minimal_resolution(u.max_wavenumber()).max(16);
            let sup = grid::sup_norm_vector(&u, n)?;
            let vertical = grid::sup_norm_scalar(u.component(2), n)?;
            let mut worst = vertical.max(periodic_defect(&u) * sup);
            if p.nu().is_some() {
                // Viscous flows satisfy the full no-slip condition on the slab faces.
                let xs: Vec<f64> =
                    (0..2 * FACE_SAMPLES).map(|i| 2.0 * PI * i as f64 / (2 * FACE_SAMPLES) as f64).collect();
                let (l1, l2) = p.slab();
                for face in [l1, l2] {
                    let pinned = [face];
                    let trace = grid::vector_magnitudes(&u, [&xs, &xs, &pinned]);
                    worst = trace.into_iter().fold(worst, f64::max);
                }
            }
            let label = if p.nu().is_some() {
                "max(|u₃|, |u| on x₃ ∈ {L₁,L₂}, periodicity defect) / ‖u‖∞"
            } else {
                "max(|u₃|, periodicity defect) / ‖u‖∞"
            };
            CheckRecord::new("boundary_pipeline", ratio(worst, sup), tolerance, label)
        }
        (BoundaryKind::Pipeline, _) => {
            return Err(Error::InvalidArgument("slab traces apply to pipeline solutions".into()))
        }
        (BoundaryKind::DiscTangent, FlowSolution::Radial(r)) => radial_tangency(r, tolerance),
    };
    let viscous = s.nu().is_some();
    Ok(if viscous { rec.at_time(t) } else { rec })
}

/// Points used by the pointwise radial checks.
pub const RADIAL_INTERIOR_SAMPLES: usize = 1000;
pub const RADIAL_BOUNDARY_SAMPLES: usize = 256;

/// Uniform samples of the open disc, reproducible through [`SAMPLING_SEED`].
pub fn disc_samples(radius: f64, count: usize) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
    (0..count)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            let theta = rng.gen_range(0.0..2.0 * PI);
            [r * theta.cos(), r * theta.sin()]
        })
        .collect()
}

fn radial_speed_scale(r: &RadialFlow) -> f64 {
    disc_samples(r.profile().radius, RADIAL_INTERIOR_SAMPLES)
        .into_iter()
        .map(|x| {
            let v = r.jet(x).velocity;
            v[0].hypot(v[1])
        })
        .fold(0.0, f64::max)
}

fn radial_tangency(r: &RadialFlow, tolerance: f64) -> CheckRecord {
    let radius = r.profile().radius;
    let worst = (0..RADIAL_BOUNDARY_SAMPLES)
        .map(|i| {
            let theta = 2.0 * PI * i as f64 / RADIAL_BOUNDARY_SAMPLES as f64;
            let x = [radius * theta.cos(), radius * theta.sin()];
            let v = r.jet(x).velocity;
            ((x[0] * v[0] + x[1] * v[1]) / radius).abs()
        })
        .fold(0.0, f64::max);
    CheckRecord::new(
        "boundary_disc_tangent",
        ratio(worst, radial_speed_scale(r)),
        tolerance,
        "max_∂B |σ·u| / max_B |u|",
    )
}

/// Pointwise identities of a radial flow at [`RADIAL_INTERIOR_SAMPLES`]
/// points of the disc: incompressibility, the planar vorticity equation
/// `(u·∇)ω = 0`, and the momentum balance `(u·∇)u + ∇P = 0`.
pub fn radial_checks(r: &RadialFlow, tol: &Tolerances) -> Vec<CheckRecord> {
    let (mut div, mut div_scale) = (0.0f64, 0.0f64);
    let (mut vort, mut vort_scale) = (0.0f64, 0.0f64);
    let (mut mom, mut mom_scale) = (0.0f64, 0.0f64);
    for x in disc_samples(r.profile().radius, RADIAL_INTERIOR_SAMPLES) {
        let j = r.jet(x);
        let g = j.velocity_gradient;
        let speed = j.velocity[0].hypot(j.velocity[1]);
        let grad_norm = g.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
        div = div.max((g[0][0] + g[1][1]).abs());
        div_scale = div_scale.max(grad_norm);
        let uw = j.velocity[0] * j.vorticity_gradient[0] + j.velocity[1] * j.vorticity_gradient[1];
        vort = vort.max(uw.abs());
        vort_scale = vort_scale.max(speed * j.vorticity_gradient[0].hypot(j.vorticity_gradient[1]));
        let adv =
            [j.velocity[0] * g[0][0] + j.velocity[1] * g[0][1], j.velocity[0] * g[1][0] + j.velocity[1] * g[1][1]];
        let res = [adv[0] + j.pressure_gradient[0], adv[1] + j.pressure_gradient[1]];
        mom = mom.max(res[0].hypot(res[1]));
        mom_scale = mom_scale.max(speed * grad_norm + j.pressure_gradient[0].hypot(j.pressure_gradient[1]));
    }
    vec![
        CheckRecord::new("radial_divergence", ratio(div, div_scale), tol.radial, "max |∇·u| / max |∇u|"),
        CheckRecord::new("radial_vorticity", ratio(vort, vort_scale), tol.radial, "max |(u·∇)ω| / max |u||∇ω|"),
        CheckRecord::new(
            "radial_momentum",
            ratio(mom, mom_scale),
            tol.radial,
            "max |(u·∇)u + ∇P| / max (|u||∇u| + |∇P|)",
        ),
    ]
}

/// The three expanded components of `(u·∇)ω − (ω·∇)u` for
/// `u = (−∂₂φ, ∂₁φ, 0)`, each built term by term from products of
/// derivatives of `φ`.
pub fn section2_expansion(phi: &ScalarField) -> VectorField {
    let d = |f: &ScalarField, axis: usize| derivative(f, axis);
    let p1 = d(phi, 0);
    let p2 = d(phi, 1);
    let p11 = d(&p1, 0);
    let p12 = d(&p1, 1);
    let p13 = d(&p1, 2);
    let p22 = d(&p2, 1);
    let p23 = d(&p2, 2);
    let p113 = d(&p11, 2);
    let p123 = d(&p12, 2);
    let p223 = d(&p22, 2);
    let lap_h = &p11 + &p22;
    let c1 = &(&(&product(&p23, &p11) + &product(&p2, &p113)) - &product(&p12, &p13)) - &product(&p1, &p123);
    let c2 = &(&(&product(&p12, &p23) + &product(&p2, &p123)) - &product(&p13, &p22)) - &product(&p1, &p223);
    let c3 = &product(&p1, &d(&lap_h, 1)) - &product(&p2, &d(&lap_h, 0));
    VectorField::new([c1, c2, c3])
}

/// Compares [`section2_expansion`] against the generic commutator of
/// `u = (−∂₂φ, ∂₁φ, 0)` and `ω = curl u`.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleComparison {
    pub expansion: VectorField,
    pub generic: VectorField,
    pub record: CheckRecord,
}

pub fn section2_oracle(phi: &ScalarField, tolerance: f64) -> OracleComparison {
    let u = VectorField::new([derivative(phi, 1).scale(-1.0), derivative(phi, 0), ScalarField::zero()]);
    let w = curl(&u);
    let generic = commutator(&u, &w);
    let expansion = section2_expansion(phi);
    let scale = expansion.l2_norm().max(generic.l2_norm());
    let norm = ratio((&expansion - &generic).l2_norm(), scale);
    let record =
        CheckRecord::new("commutator_oracle", norm, tolerance, "‖expanded − generic‖ / max(‖expanded‖, ‖generic‖)");
    OracleComparison { expansion, generic, record }
}

/// Default times for viscous families.
pub const DEFAULT_TIMES: [f64; 3] = [0.0, 0.5, 1.0];

/// Every check that applies to the solution's family.
pub fn verify_solution(s: &FlowSolution, times: &[f64], tol: &Tolerances) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(s.family().name());
    let boundary = BoundaryKind::for_class(s.boundary());
    match s {
        FlowSolution::Radial(r) => {
            for rec in radial_checks(r, tol) {
                report.push(rec);
            }
            report.push(check_boundary(s, 0.0, boundary, tol.boundary)?);
        }
        _ if s.nu().is_none() => {
            let u = s.u0().expect("spectral family");
            report.push(check_divergence(u, tol.divergence));
            if let Some(b) = s.as_beltrami() {
                report.push(check_beltrami(u, b.lambda(), tol.beltrami));
            }
            report.push(check_static_euler(u, tol.static_euler));
            report.push(check_momentum(s, 0.0, tol.momentum)?);
            if let Some(p) = s.as_pipeline() {
                report.push(check_orthogonality_omega_u(u, tol.orthogonality));
                report.push(section2_oracle(p.phi0(), tol.oracle).record);
            }
            report.push(check_boundary(s, 0.0, boundary, tol.boundary)?);
        }
        _ => {
            let vort = check_ns_vorticity(s, times, tol.ns_vorticity)?;
            for (&t, v) in times.iter().zip(vort) {
                let u = eval_at_time(s, t)?.u;
                report.push(check_divergence(&u, tol.divergence).at_time(t));
                if let Some(b) = s.as_beltrami() {
                    report.push(check_beltrami(&u, b.lambda(), tol.beltrami).at_time(t));
                }
                if s.as_pipeline().is_some() {
                    report.push(check_orthogonality_omega_u(&u, tol.orthogonality).at_time(t));
                }
                report.push(v);
                report.push(check_momentum(s, t, tol.momentum)?);
                report.push(check_boundary(s, t, boundary, tol.boundary)?);
            }
        }
    }
    Ok(report)
}
