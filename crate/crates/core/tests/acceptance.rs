//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.
//!
//! Oracles here are written from closed forms or from pointwise evaluation,
//! not from the library's own spectral products, so a shared bug cannot make
//! both sides agree.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use flowcert::eigen::{
    dirichlet_eigenfunction, enumerate_shell, periodic_eigenfunction, DirichletMode, PipelineProfile, PipelineTerm,
};
use flowcert::flows::{
    box_axis, eval_at_time, make_beltrami_euler, make_beltrami_ns, make_pipeline_euler, make_pipeline_ns,
    make_radial_2d, BoundaryClass, Family, FlowSolution, PipelinePotential, RadialProfile, FACE_SAMPLES,
};
use flowcert::limits::{
    double_limit_certificate, nonuniqueness_certificate, path_limit, prandtl_study, sample_random_solutions, PathSpec,
};
use flowcert::polyalg::PolyVec;
use flowcert::spectral::grid::{eval_tensor_grid, sample_vector};
use flowcert::spectral::{derivative, ScalarField, Trig, VectorField};
use flowcert::verify::{
    check_beltrami, check_boundary, check_divergence, check_ns_vorticity, check_orthogonality_omega_u,
    check_static_euler, disc_samples, radial_checks, section2_expansion, verify_solution, BoundaryKind, Tolerances,
    DEFAULT_TIMES,
};
use flowcert::Wavevector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn k(a: i32, b: i32, c: i32) -> Wavevector {
    Wavevector::new(a, b, c)
}

fn operators() -> [(&'static str, PolyVec); 3] {
    [("e3×∇", PolyVec::unit_cross_nabla(2)), ("e1×∇", PolyVec::unit_cross_nabla(0)), ("saddle", PolyVec::saddle())]
}

/// Mean-square norm straight from coefficients.
fn coeff_norm(modes: impl Iterator<Item = [Complex64; 3]>) -> f64 {
    modes.map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>()).sum::<f64>().sqrt()
}

/// `‖curl u + λu‖ / ‖u‖` with the curl taken mode by mode as `ik × û`.
fn beltrami_defect(u: &VectorField, lambda: f64) -> f64 {
    let i = Complex64::i();
    let res = coeff_norm(u.support().into_iter().map(|kv| {
        let c = u.coefficient(kv);
        let [a, b, d] = kv.as_f64();
        [
            i * (b * c[2] - d * c[1]) + c[0] * lambda,
            i * (d * c[0] - a * c[2]) + c[1] * lambda,
            i * (a * c[1] - b * c[0]) + c[2] * lambda,
        ]
    }));
    let norm = u.l2_norm();
    if norm == 0.0 {
        0.0
    } else {
        res / norm
    }
}

fn random_shell_field(lambda_sq: u32, rng: &mut ChaCha8Rng) -> Option<ScalarField> {
    let shell = enumerate_shell(lambda_sq);
    if shell.is_empty() {
        return None;
    }
    let coeffs = shell.random_coefficients(rng);
    Some(periodic_eigenfunction(&shell, &coeffs).expect("coefficients on the shell"))
}

fn beltrami_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst_b, mut worst_div, mut cases) = (0.0f64, 0.0f64, 0);
    for lambda_sq in 1..=50 {
        let Some(psi) = random_shell_field(lambda_sq, &mut rng) else { continue };
        let lambda = f64::from(lambda_sq).sqrt();
        for (name, a) in operators() {
            let s = make_beltrami_euler(&a, lambda, psi.clone()).map_err(|e| format!("λ²={lambda_sq} {name}: {e}"))?;
            let u = s.u0().unwrap();
            let b = beltrami_defect(u, lambda);
            let div = check_divergence(u, 1e-13);
            ensure(b <= 1e-12, || format!("λ²={lambda_sq} {name}: ‖curl u + λu‖/‖u‖ = {b:e}"))?;
            ensure(div.pass, || format!("λ²={lambda_sq} {name}: divergence {:e}", div.norm))?;
            worst_b = worst_b.max(b);
            worst_div = worst_div.max(div.norm);
            cases += 1;
        }
    }
    Ok(format!("{cases} shell/operator cases, worst curl defect {worst_b:.1e}, worst divergence {worst_div:.1e}"))
}

/// `(A sin x₃ + C cos x₂, B sin x₁ + A cos x₃, C sin x₂ + B cos x₁)`.
fn abc(a: f64, b: f64, c: f64) -> VectorField {
    let e = |i| {
        let mut v = [0; 3];
        v[i] = 1;
        k(v[0], v[1], v[2])
    };
    VectorField::new([
        &ScalarField::sin(e(2), a) + &ScalarField::cos(e(1), c),
        &ScalarField::sin(e(0), b) + &ScalarField::cos(e(2), a),
        &ScalarField::sin(e(1), c) + &ScalarField::cos(e(0), b),
    ])
}

fn static_euler() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for lambda_sq in 1..=50 {
        let Some(psi) = random_shell_field(lambda_sq, &mut rng) else { continue };
        for (name, a) in operators() {
            let s = make_beltrami_euler(&a, f64::from(lambda_sq).sqrt(), psi.clone()).unwrap();
            let r = check_static_euler(s.u0().unwrap(), 1e-11);
            ensure(r.pass, || format!("λ²={lambda_sq} {name}: static Euler residual {:e}", r.norm))?;
            worst = worst.max(r.norm);
        }
    }
    let u = abc(1.0, 0.7, 0.3);
    let r = check_beltrami(&u, -1.0, 1e-14);
    ensure(r.pass, || format!("ABC: beltrami residual {:e}", r.norm))?;
    let oracle = beltrami_defect(&u, -1.0);
    ensure(oracle <= 1e-14, || format!("ABC: curl u ≠ u, defect {oracle:e}"))?;
    Ok(format!("worst static Euler residual {worst:.1e}; ABC beltrami residual {:.1e}", r.norm))
}

fn ns_evolution() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let lambda_sq = 6u32;
    let psi = random_shell_field(lambda_sq, &mut rng).unwrap();
    let a = PolyVec::unit_cross_nabla(2);
    let mut worst_energy = 0.0f64;
    for nu in [1.0, 0.01] {
        let s = make_beltrami_ns(&a, f64::from(lambda_sq).sqrt(), psi.clone(), nu).unwrap();
        let u0 = s.u0().unwrap();
        for t in DEFAULT_TIMES {
            let u = eval_at_time(&s, t).unwrap().u;
            let factor = (-f64::from(lambda_sq) * (nu * t)).exp();
            ensure(u == u0.scale(factor), || format!("ν={nu} t={t}: field is not e^(-νλ²t)·u0"))?;
            let ratio = (u.l2_norm() / u0.l2_norm()).powi(2);
            let expect = (-2.0 * nu * f64::from(lambda_sq) * t).exp();
            let err = (ratio - expect).abs();
            ensure(err <= 1e-10, || format!("ν={nu} t={t}: energy ratio {ratio} vs {expect}"))?;
            worst_energy = worst_energy.max(err);
        }
        for r in check_ns_vorticity(&s, &DEFAULT_TIMES, 1e-11).unwrap() {
            ensure(r.pass, || format!("ν={nu}: {} = {:e}", r.name, r.norm))?;
        }
    }
    Ok(format!("coefficient-exact decay, worst energy ratio error {worst_energy:.1e}"))
}

fn random_profile(rng: &mut ChaCha8Rng) -> PipelineProfile {
    let mut terms = Vec::new();
    for j in 1..=2 {
        for kk in 1..=2 {
            terms.push(PipelineTerm { j, k: kk, alpha: rng.gen_range(-1.0..1.0), beta: rng.gen_range(-1.0..1.0) });
        }
    }
    PipelineProfile::on_default_slab(terms).unwrap()
}

/// `φ(x₁+x₂, x₃)` written out directly from the profile.
fn profile_value(p: &PipelineProfile, x: [f64; 3]) -> f64 {
    let xi = x[0] + x[1];
    p.terms
        .iter()
        .map(|t| {
            let j = f64::from(t.j);
            (t.alpha * (j * xi).sin() + t.beta * (j * xi).cos()) * (f64::from(t.k) * (x[2] - p.l1)).sin()
        })
        .sum()
}

fn pipeline_family() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let profile = random_profile(&mut rng);
    let nu = 0.1;
    let s = make_pipeline_ns(profile.clone(), nu).unwrap();
    let euler = make_pipeline_euler(PipelinePotential::Profile(profile.clone())).unwrap();
    let phi0 = euler.as_pipeline().unwrap().phi0();

    for x in [[0.3, 1.1, 0.7], [2.0, -0.4, 2.9], [5.5, 4.1, 1.6]] {
        let d = (phi0.eval_at(x) - profile_value(&profile, x)).abs();
        ensure(d <= 1e-13, || format!("lifted potential differs from the profile by {d:e} at {x:?}"))?;
    }

    let mut worst_heat = 0.0f64;
    for t in DEFAULT_TIMES {
        let slice = eval_at_time(&s, t).unwrap();
        // u is linear in φ, so it obeys the same heat equation u_t = νΔu.
        let lap = slice.u.map(flowcert::spectral::laplacian).scale(nu);
        let res = (&slice.du_dt - &lap).l2_norm() / (slice.du_dt.l2_norm() + lap.l2_norm());
        ensure(res <= 1e-12, || format!("t={t}: heat residual {res:e}"))?;
        worst_heat = worst_heat.max(res);
        ensure(slice.u.component(2).is_zero(), || format!("t={t}: u₃ is not identically zero"))?;

        let xs: Vec<f64> = (0..32).map(|i| 2.0 * PI * i as f64 / 32.0).collect();
        let sup = sample_vector(&slice.u, 32).unwrap().sup_norm();
        let mut trace = 0.0f64;
        for face in [profile.l1, profile.l2] {
            for c in 0..2 {
                let vals = eval_tensor_grid(slice.u.component(c), [&xs, &xs, &[face]]);
                trace = vals.iter().fold(trace, |m, v| m.max(v.abs()));
            }
        }
        ensure(trace <= 1e-13 * sup, || format!("t={t}: slab-face trace {trace:e} vs sup {sup:e}"))?;

        let orth = check_orthogonality_omega_u(&slice.u, 1e-12);
        ensure(orth.pass, || format!("t={t}: ω·u = {:e}", orth.norm))?;
    }

    let u_e = euler.u0().unwrap();
    let comm = check_static_euler(u_e, 1e-12);
    ensure(comm.pass, || format!("Euler commutator residual {:e}", comm.norm))?;
    let pointwise = pointwise_commutator(u_e, 24);
    ensure(pointwise <= 1e-12, || format!("pointwise commutator {pointwise:e}"))?;
    Ok(format!("heat residual {worst_heat:.1e}, commutator {:.1e} (pointwise {pointwise:.1e})", comm.norm))
}

/// Samples of `u` and all nine `∂_j u_i` on an `n³` grid.
fn jets(u: &VectorField, n: usize) -> (Vec<Vec<f64>>, Vec<Vec<Vec<f64>>>) {
    let vals = sample_vector(u, n).unwrap().values;
    let grads = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    flowcert::spectral::grid::sample_scalar(&derivative(u.component(i), j), n).unwrap().values.remove(0)
                })
                .collect()
        })
        .collect();
    (vals, grads)
}

/// Pointwise `(u·∇)ω − (ω·∇)u` from sampled derivatives, and the scale
/// `max|u|·max|∇ω| + max|ω|·max|∇u|` that bounds each product term.
fn pointwise_commutator_samples(u: &VectorField, n: usize) -> ([Vec<f64>; 3], f64) {
    let w = flowcert::spectral::curl(u);
    let (uv, ug) = jets(u, n);
    let (wv, wg) = jets(&w, n);
    let mut out = [vec![0.0; n * n * n], vec![0.0; n * n * n], vec![0.0; n * n * n]];
    let (mut su, mut sgu, mut sw, mut sgw) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in 0..n * n * n {
        for i in 0..3 {
            let a: f64 = (0..3).map(|j| uv[j][p] * wg[i][j][p]).sum();
            let b: f64 = (0..3).map(|j| wv[j][p] * ug[i][j][p]).sum();
            out[i][p] = a - b;
            su = su.max(uv[i][p].abs());
            sw = sw.max(wv[i][p].abs());
            for j in 0..3 {
                sgu = sgu.max(ug[i][j][p].abs());
                sgw = sgw.max(wg[i][j][p].abs());
            }
        }
    }
    (out, su * sgw + sw * sgu)
}

fn pointwise_commutator(u: &VectorField, n: usize) -> f64 {
    let (q, scale) = pointwise_commutator_samples(u, n);
    let worst = q.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        0.0
    } else {
        worst / scale
    }
}

fn random_trig(rng: &mut ChaCha8Rng, plane: bool) -> ScalarField {
    let mut half = BTreeMap::new();
    let terms = rng.gen_range(1..=6);
    while half.len() < terms {
        let kv = if plane {
            let j = rng.gen_range(-4..=4);
            k(j, j, rng.gen_range(-4..=4))
        } else {
            k(rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(-4..=4))
        };
        if kv.is_zero() || !kv.is_upper_half() {
            continue;
        }
        half.insert(kv, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    }
    ScalarField::from_upper_half(half)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for case in 0..50 {
        let phi = random_trig(&mut rng, false);
        let expansion = section2_expansion(&phi);
        let u = VectorField::new([derivative(&phi, 1).scale(-1.0), derivative(&phi, 0), ScalarField::zero()]);
        // Pointwise (u·∇)ω − (ω·∇)u against the expansion evaluated on the same grid.
        let n = 20;
        let (q, scale) = pointwise_commutator_samples(&u, n);
        let ev = sample_vector(&expansion, n).unwrap().values;
        let diff = (0..3)
            .flat_map(|i| (0..n * n * n).map(move |p| (i, p)))
            .fold(0.0f64, |m, (i, p)| m.max((q[i][p] - ev[i][p]).abs()));
        let rel = diff / scale;
        ensure(rel <= 1e-12, || format!("case {case}: expansion vs pointwise commutator {rel:e}"))?;
        worst = worst.max(rel);
    }
    let mut worst_plane = 0.0f64;
    for case in 0..20 {
        let phi = random_trig(&mut rng, true);
        let expansion = section2_expansion(&phi);
        let u = VectorField::new([derivative(&phi, 1).scale(-1.0), derivative(&phi, 0), ScalarField::zero()]);
        let w = flowcert::spectral::curl(&u);
        let rel = expansion.l2_norm() / (u.max_k_norm() * u.l2_norm() * w.l2_norm());
        ensure(rel <= 1e-12, || format!("plane profile {case}: expansion does not vanish ({rel:e})"))?;
        worst_plane = worst_plane.max(rel);
    }
    Ok(format!("50 generic cases agree to {worst:.1e}; 20 plane profiles vanish to {worst_plane:.1e}"))
}

fn trkal(nu: Option<f64>) -> FlowSolution {
    let a = PolyVec::unit_cross_nabla(2);
    let psi = ScalarField::sin(k(1, 0, 0), 1.0);
    match nu {
        None => make_beltrami_euler(&a, 1.0, psi).unwrap(),
        Some(nu) => make_beltrami_ns(&a, 1.0, psi, nu).unwrap(),
    }
}

fn path_limits() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let psi = random_shell_field(1, &mut rng).unwrap();
    let s = make_beltrami_ns(&PolyVec::unit_cross_nabla(2), 1.0, psi, 1.0).unwrap();
    let tol = Tolerances::default();
    for mu in [0.5, 1.3] {
        let path = PathSpec::new(mu).unwrap();
        let mut fields = Vec::new();
        for nu in [1.0, 0.1, 0.01, 0.001] {
            let p = path.point(nu).unwrap();
            ensure(p.exact && p.nu * p.t == mu, || format!("μ={mu} ν={nu}: ν·t = {} ≠ μ", p.nu * p.t))?;
            fields.push(eval_at_time(&s.with_viscosity(p.nu).unwrap(), p.t).unwrap().u);
        }
        ensure(fields.windows(2).all(|w| w[0] == w[1]), || format!("μ={mu}: field changes along the path"))?;
        let limit = path_limit(&s, mu).unwrap();
        ensure(limit.family() == Family::BeltramiEuler, || "path limit is not a static flow".into())?;
        let report = verify_solution(&limit, &DEFAULT_TIMES, &tol).unwrap();
        ensure(report.overall, || {
            format!("μ={mu}: path limit fails {:?}", report.failures().map(|f| &f.name).collect::<Vec<_>>())
        })?;
    }
    // |u₀| ≡ 1 for the Trkal field, so ‖u₀‖∞ = 1.
    let cert = double_limit_certificate(&trkal(Some(1.0)), 0.1, 1.0, &tol).unwrap();
    let expect = (-0.1f64).exp() - (-1.0f64).exp();
    let rel = (cert.distance - expect).abs() / expect;
    ensure(rel <= 1e-12, || format!("double-limit distance {} vs {expect} (rel {rel:e})", cert.distance))?;
    ensure(cert.certified, || "double-limit certificate not certified".into())?;
    Ok(format!("exact along 2 paths × 4 viscosities; double-limit distance rel. error {rel:.1e}"))
}

fn random_solutions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let psi = random_shell_field(3, &mut rng).unwrap();
    let s = make_beltrami_ns(&PolyVec::saddle(), 3f64.sqrt(), psi, 0.5).unwrap();
    let tol = Tolerances::default();
    let a = sample_random_solutions(&s, 2.0, 10, 0x5eed, &tol).unwrap();
    let b = sample_random_solutions(&s, 2.0, 10, 0x5eed, &tol).unwrap();
    ensure(a.mus.len() == 10 && a.mus.iter().all(|m| (0.0..=2.0).contains(m)), || format!("bad draws {:?}", a.mus))?;
    ensure(a.all_verified(), || "a drawn solution failed verification".into())?;
    for sol in &a.solutions {
        ensure(sol.family() == Family::BeltramiEuler && sol.boundary() == BoundaryClass::Periodic, || {
            format!("drawn solution is {:?} on {:?}", sol.family(), sol.boundary())
        })?;
    }
    let bytes = |r: &flowcert::limits::RandomSample| {
        let mut out: Vec<u8> = r.mus.iter().flat_map(|m| m.to_bits().to_le_bytes()).collect();
        for s in &r.solutions {
            out.extend(s.to_json().into_bytes());
        }
        out
    };
    ensure(bytes(&a) == bytes(&b), || "replay with the same seed differs".into())?;
    let c = sample_random_solutions(&s, 2.0, 10, 0x5eef, &tol).unwrap();
    ensure(c.mus != a.mus, || "a different seed gave the same draws".into())?;
    Ok("10 draws verified, replay byte-identical".into())
}

fn nonuniqueness() -> Outcome {
    let tol = Tolerances::default();
    let a = PolyVec::unit_cross_nabla(2);
    let s1 = make_beltrami_euler(&a, 1.0, ScalarField::sin(k(1, 0, 0), 1.0)).unwrap();
    let s2 = make_beltrami_euler(&a, 1.0, ScalarField::sin(k(0, 1, 0), 1.0)).unwrap();
    let cert = nonuniqueness_certificate(&s1, &s2, &tol).unwrap();
    let (u1, u2) = (s1.u0().unwrap(), s2.u0().unwrap());
    ensure(u1.support().iter().all(|kv| !u2.support().contains(kv)), || "supports overlap".into())?;
    // Disjoint supports: ‖a − b‖² = ‖a‖² + ‖b‖².
    let oracle = (u1.l2_norm().powi(2) + u2.l2_norm().powi(2)).sqrt();
    let rel = cert.distance / cert.norm_a.max(cert.norm_b);
    ensure((cert.distance - oracle).abs() <= 1e-14 * oracle, || format!("distance {} vs {oracle}", cert.distance))?;
    ensure(cert.certified && rel >= 0.5, || format!("Beltrami pair: relative distance {rel}"))?;

    let prof =
        |kk| PipelineProfile::on_default_slab(vec![PipelineTerm { j: 1, k: kk, alpha: 1.0, beta: 0.0 }]).unwrap();
    let p1 = make_pipeline_euler(PipelinePotential::Profile(prof(1))).unwrap();
    let p2 = make_pipeline_euler(PipelinePotential::Profile(prof(2))).unwrap();
    let pc = nonuniqueness_certificate(&p1, &p2, &tol).unwrap();
    ensure(pc.certified, || format!("pipeline pair not certified: distance {}", pc.distance))?;

    let r1 = make_radial_2d(RadialProfile::new(1.0, 3, 1.0).unwrap()).unwrap();
    let r2 = make_radial_2d(RadialProfile::new(2.0, 3, 1.0).unwrap()).unwrap();
    let rc = nonuniqueness_certificate(&r1, &r2, &tol).unwrap();
    ensure(rc.certified, || format!("radial pair not certified: distance {}", rc.distance))?;
    Ok(format!(
        "relative distances: Beltrami {rel:.3}, pipeline {:.3}, radial {:.3}",
        pc.distance / pc.norm_a.max(pc.norm_b),
        rc.distance / rc.norm_a.max(rc.norm_b)
    ))
}

/// `u₀` for `A = e₃×∇`, `ψ = sin x₁ sin x₂ sin x₃`, `λ = √3`, written out.
fn dirichlet_u0(x: [f64; 3]) -> [f64; 3] {
    let l = 3f64.sqrt();
    let (s, c) = (x.map(f64::sin), x.map(f64::cos));
    [
        -l * s[0] * c[1] * s[2] + c[0] * s[1] * c[2],
        l * c[0] * s[1] * s[2] + s[0] * c[1] * c[2],
        2.0 * s[0] * s[1] * s[2],
    ]
}

fn no_prandtl_layer() -> Outcome {
    let a = PolyVec::unit_cross_nabla(2);
    let psi = dirichlet_eigenfunction(DirichletMode::new([1, 1, 1]).unwrap());
    let s = make_beltrami_ns(&a, 3f64.sqrt(), psi, 0.1).unwrap().on_dirichlet_box().unwrap();
    let u0 = s.u0().unwrap();
    let xs = box_axis(FACE_SAMPLES);
    let mut sup = 0.0f64;
    for &x1 in &xs {
        for &x2 in &xs {
            for &x3 in &xs {
                let x = [x1, x2, x3];
                let closed = dirichlet_u0(x);
                let lib = u0.eval_at(x);
                let d = (0..3).map(|i| (closed[i] - lib[i]).abs()).fold(0.0, f64::max);
                ensure(d <= 1e-14, || format!("u0 differs from its closed form by {d:e} at {x:?}"))?;
                sup = sup.max(closed.iter().map(|v| v * v).sum::<f64>().sqrt());
            }
        }
    }
    let study = prandtl_study(&s, 1.0, &[0.1, 0.01, 0.001], None).unwrap();
    let mut worst = 0.0f64;
    for row in &study.rows {
        let expect = -(-3.0 * row.nu).exp_m1() * sup;
        let rel = (row.sup_difference - expect).abs() / expect;
        ensure(rel <= 1e-12, || format!("ν={}: d = {} vs {expect} (rel {rel:e})", row.nu, row.sup_difference))?;
        ensure(row.strip_difference <= row.sup_difference, || format!("ν={}: strip exceeds domain", row.nu))?;
        worst = worst.max(rel);
    }
    ensure(study.verdict, || "study verdict is negative".into())?;
    let d: Vec<String> = study.rows.iter().map(|r| format!("{:.4}", r.sup_difference / sup)).collect();
    Ok(format!("d(ν)/‖u0‖∞ = [{}], rel. error {worst:.1e}", d.join(", ")))
}

fn radial_flows() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut summary = Vec::new();
    for (radius, m) in [(1.0, 3), (2.0, 4)] {
        let s = make_radial_2d(RadialProfile::new(radius, m, 1.0).unwrap()).unwrap();
        let r = s.as_radial().unwrap();
        for rec in radial_checks(r, &tol) {
            ensure(rec.pass, || format!("(R,m)=({radius},{m}): {} = {:e}", rec.name, rec.norm))?;
        }
        // Swirl u = g(r)(−x₂, x₁) needs ∇P = g²x; check it pointwise.
        let (mut worst, mut scale) = (0.0f64, 0.0f64);
        for _ in 0..1000 {
            let rr = radius * rng.gen_range(0.0f64..1.0).sqrt();
            let th = rng.gen_range(0.0..2.0 * PI);
            let x = [rr * th.cos(), rr * th.sin()];
            let jet = r.jet(x);
            let g2 = if rr > 0.0 { (jet.velocity[0].powi(2) + jet.velocity[1].powi(2)) / (rr * rr) } else { 0.0 };
            let res = (jet.pressure_gradient[0] - g2 * x[0]).hypot(jet.pressure_gradient[1] - g2 * x[1]);
            worst = worst.max(res);
            scale = scale.max(g2 * rr);
        }
        ensure(worst <= 1e-10 * scale, || format!("(R,m)=({radius},{m}): ∇P ≠ g²x by {worst:e}"))?;

        let b = check_boundary(&s, 0.0, BoundaryKind::DiscTangent, 1e-12).unwrap();
        ensure(b.pass, || format!("(R,m)=({radius},{m}): tangency {:e}", b.norm))?;
        let mut normal = 0.0f64;
        for i in 0..256 {
            let th = 2.0 * PI * i as f64 / 256.0;
            let x = [radius * th.cos(), radius * th.sin()];
            let v = r.jet(x).velocity;
            normal = normal.max((x[0] * v[0] + x[1] * v[1]).abs());
        }
        ensure(normal <= 1e-12, || format!("(R,m)=({radius},{m}): |x·u| = {normal:e} on the circle"))?;
        ensure(disc_samples(radius, 1000).len() == 1000, || "interior sample count".into())?;
        summary.push(format!("(R,m)=({radius},{m}) ∇P residual {:.1e}", worst / scale));
    }
    Ok(summary.join("; "))
}

fn dirichlet_construction() -> Outcome {
    let tol = Tolerances::default();
    let xs = box_axis(FACE_SAMPLES);
    let mut cases = 0;
    let mut worst_trace = 0.0f64;
    for k1 in 1..=3u32 {
        for k2 in 1..=3u32 {
            for k3 in 1..=3u32 {
                let mode = DirichletMode::new([k1, k2, k3]).unwrap();
                let psi = dirichlet_eigenfunction(mode);
                let expect = ScalarField::trig_product([k1, k2, k3], [Trig::Sin; 3], 1.0);
                ensure(psi == expect, || format!("k=({k1},{k2},{k3}): ψ is not the sine product"))?;
                // ‖ψ‖∞ = 1 for a product of unit sines.
                let mut trace = 0.0f64;
                for axis in 0..3 {
                    for face in [0.0, PI] {
                        for &a in &xs {
                            for &b in &xs {
                                let mut x = [a, b, a];
                                x[axis] = face;
                                let (p, q) = ((axis + 1) % 3, (axis + 2) % 3);
                                x[p] = a;
                                x[q] = b;
                                let v = (f64::from(k1) * x[0]).sin()
                                    * (f64::from(k2) * x[1]).sin()
                                    * (f64::from(k3) * x[2]).sin();
                                trace = trace.max(v.abs().max(psi.eval_at(x).abs()));
                            }
                        }
                    }
                }
                ensure(trace <= 1e-13, || format!("k=({k1},{k2},{k3}): face trace {trace:e}"))?;
                worst_trace = worst_trace.max(trace);
                let lambda = f64::from(mode.lambda_sq()).sqrt();
                let s = make_beltrami_euler(&PolyVec::unit_cross_nabla(2), lambda, psi)
                    .and_then(FlowSolution::on_dirichlet_box)
                    .map_err(|e| format!("k=({k1},{k2},{k3}): {e}"))?;
                let report = verify_solution(&s, &DEFAULT_TIMES, &tol).unwrap();
                for name in ["beltrami", "static_euler"] {
                    let r = report.get(name).ok_or_else(|| format!("report lacks {name}"))?;
                    ensure(r.pass, || format!("k=({k1},{k2},{k3}): {name} = {:e}", r.norm))?;
                }
                ensure(report.overall, || {
                    format!("k=({k1},{k2},{k3}) fails {:?}", report.failures().map(|f| &f.name).collect::<Vec<_>>())
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} modes, worst face trace {worst_trace:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Beltrami identity", beltrami_identity),
        ("static Euler residual", static_euler),
        ("NS evolution", ns_evolution),
        ("pipeline family", pipeline_family),
        ("commutator expansion oracle", oracle_equivalence),
        ("path limits", path_limits),
        ("random solutions", random_solutions),
        ("non-uniqueness", nonuniqueness),
        ("no boundary layer", no_prandtl_layer),
        ("2-D radial flows", radial_flows),
        ("Dirichlet construction", dirichlet_construction),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    let total = start.elapsed().as_secs_f64();
    println!("acceptance: {} of {} criteria pass in {total:.1}s", criteria.len() - failed, criteria.len());
    if total > 60.0 {
        println!("FAIL runtime budget: {total:.1}s exceeds 60s");
        failed += 1;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
