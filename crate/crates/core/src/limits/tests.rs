use std::f64::consts::LN_2;

use approx::assert_relative_eq;
use proptest::prelude::*;

use super::*;
use crate::eigen::{dirichlet_eigenfunction, DirichletMode, PipelineProfile, PipelineTerm};
use crate::flows::{make_beltrami_ns, make_pipeline_ns, make_radial_2d};
use crate::polyalg::PolyVec;
use crate::spectral::{ScalarField, Trig};
use crate::verify::check_static_euler;
use crate::wavevector::Wavevector;

fn sin_x1_ns(nu: f64) -> FlowSolution {
    make_beltrami_ns(&PolyVec::unit_cross_nabla(2), 1.0, ScalarField::sin(Wavevector::new(1, 0, 0), 1.0), nu).unwrap()
}

fn single_term_pipeline(nu: f64) -> FlowSolution {
    let p = PipelineProfile::on_default_slab(vec![PipelineTerm { j: 1, k: 1, alpha: 1.0, beta: 0.0 }]).unwrap();
    make_pipeline_ns(p, nu).unwrap()
}

fn multi_term_pipeline(nu: f64) -> FlowSolution {
    let p = PipelineProfile::new(
        0.2,
        0.2 + PI / 2.0,
        vec![PipelineTerm { j: 1, k: 1, alpha: 1.0, beta: 0.5 }, PipelineTerm { j: 3, k: 2, alpha: -0.4, beta: 0.0 }],
    )
    .unwrap();
    make_pipeline_ns(p, nu).unwrap()
}

fn dirichlet_ns(nu: f64) -> FlowSolution {
    let mode = DirichletMode::new([1, 1, 1]).unwrap();
    make_beltrami_ns(&PolyVec::unit_cross_nabla(2), 3f64.sqrt(), dirichlet_eigenfunction(mode), nu)
        .unwrap()
        .on_dirichlet_box()
        .unwrap()
}

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn path_limit_examples() {
    let s = sin_x1_ns(0.01);
    let u0 = s.u0().unwrap().clone();
    let lim = path_limit(&s, 0.7).unwrap();
    assert!((lim.u0().unwrap() - &u0.scale((-0.7f64).exp())).max_coefficient() <= 1e-16);
    assert_relative_eq!((-0.7f64).exp(), 0.4966, max_relative = 1e-4);
    assert_eq!(path_limit(&s, 0.0).unwrap().u0().unwrap(), &u0);
    assert!(check_static_euler(lim.u0().unwrap(), 1e-11).pass);

    let p = single_term_pipeline(0.3);
    let half = path_limit(&p, LN_2 / 3.0).unwrap();
    assert!((half.u0().unwrap() - &p.u0().unwrap().scale(0.5)).max_coefficient() <= 1e-16);
    assert!(path_limit(&s, -1.0).is_err());
}

#[test]
fn path_limit_keeps_the_box() {
    let lim = path_limit(&dirichlet_ns(0.1), 0.4).unwrap();
    assert_eq!(lim.boundary(), BoundaryClass::DirichletBox);
    assert!(verify_solution(&lim, &DEFAULT_TIMES, &tol()).unwrap().overall);
}

#[test]
fn path_points_are_exact_for_common_viscosities() {
    let path = PathSpec::new(0.7).unwrap();
    for nu in [1.0, 0.5, 0.1, 0.03, 0.01, 1e-3, 1e-4, 1e-6, 3.7e-5] {
        let p = path.point(nu).unwrap();
        assert!(p.exact, "ν = {nu}");
        assert_eq!(p.nu * p.t, 0.7);
        assert!((p.nu - nu).abs() <= 8.0 * f64::EPSILON * nu);
    }
    assert!(path.point(0.0).is_err());
    assert!(PathSpec::new(f64::NAN).is_err());
}

#[test]
fn empirical_convergence_is_flat() {
    let nus = [0.1, 0.01, 0.001, 1e-4];
    for s in [sin_x1_ns(0.5), single_term_pipeline(0.5), multi_term_pipeline(0.5), dirichlet_ns(0.5)] {
        let rows = empirical_path_convergence(&s, 0.9, &nus).unwrap();
        assert_eq!(rows.len(), 4);
        for r in &rows {
            assert!(r.exact_product);
            assert!(r.sup_difference <= 1e-13, "{r:?}");
        }
        for r in empirical_path_convergence(&s, 0.0, &nus).unwrap() {
            assert_eq!(r.sup_difference, 0.0);
        }
    }
    assert!(empirical_path_convergence(&sin_x1_ns(0.5), 0.9, &[0.0]).is_err());
    let csv = path_rows_csv(&empirical_path_convergence(&sin_x1_ns(0.5), 0.9, &nus).unwrap());
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn fields_along_a_path_are_identical() {
    let path = PathSpec::new(1.3).unwrap();
    for s in [sin_x1_ns(1.0), multi_term_pipeline(1.0)] {
        let fields: Vec<_> = [0.2, 0.02, 0.002, 2e-5]
            .iter()
            .map(|&nu| {
                let p = path.point(nu).unwrap();
                eval_at_time(&s.with_viscosity(p.nu).unwrap(), p.t).unwrap().u
            })
            .collect();
        for f in &fields[1..] {
            assert_eq!(f, &fields[0]);
        }
    }
}

#[test]
fn double_limit_examples() {
    let s = sin_x1_ns(0.1);
    let cert = double_limit_certificate(&s, 0.1, 1.0, &tol()).unwrap();
    assert!(cert.certified);
    let sup0 = sup(s.u0().unwrap());
    let expect = ((-0.1f64).exp() - (-1f64).exp()) * sup0;
    assert_relative_eq!(cert.distance, expect, max_relative = 1e-12);
    assert_relative_eq!(cert.lower_bound.unwrap(), expect, max_relative = 1e-12);
    assert_relative_eq!(expect / sup0, 0.5369, max_relative = 2e-4);
    assert!(double_limit_certificate(&s, 0.4, 0.4, &tol()).is_err());

    let p = single_term_pipeline(0.2);
    let cert = double_limit_certificate(&p, 0.0, LN_2 / 3.0, &tol()).unwrap();
    assert!(cert.certified);
    assert_relative_eq!(cert.distance, sup(p.u0().unwrap()) / 2.0, max_relative = 1e-12);

    let multi = double_limit_certificate(&multi_term_pipeline(0.2), 0.1, 0.2, &tol()).unwrap();
    assert!(multi.certified && multi.lower_bound.is_none());
}

#[test]
fn random_sampling_examples() {
    let s = sin_x1_ns(0.05);
    let a = sample_random_solutions(&s, DEFAULT_MU_MAX, 3, 42, &tol()).unwrap();
    assert!(a.all_verified());
    assert_eq!(a.mus.len(), 3);
    assert!(a.mus.iter().all(|&m| (0.0..=2.0).contains(&m)));
    assert!(a.mus[0] != a.mus[1] && a.mus[1] != a.mus[2]);
    let u0 = s.u0().unwrap();
    for (mu, sol) in a.mus.iter().zip(&a.solutions) {
        assert!((sol.u0().unwrap() - &u0.scale((-mu).exp())).max_coefficient() <= 1e-16);
    }
    let b = sample_random_solutions(&s, DEFAULT_MU_MAX, 3, 42, &tol()).unwrap();
    assert_eq!(a, b);
    let tiny = sample_random_solutions(&s, 1e-12, 2, 7, &tol()).unwrap();
    for sol in &tiny.solutions {
        assert!((sol.u0().unwrap() - u0).max_coefficient() <= 1e-11);
    }
    assert!(sample_random_solutions(&s, 0.0, 3, 1, &tol()).is_err());
    assert!(sample_random_solutions(&s, 1.0, 0, 1, &tol()).is_err());
    assert!(sample_random_solutions(&single_term_pipeline(0.1), 1.0, 4, 9, &tol()).unwrap().all_verified());
}

#[test]
fn nonuniqueness_examples() {
    let a = make_beltrami_euler(&PolyVec::unit_cross_nabla(2), 1.0, ScalarField::sin(Wavevector::new(1, 0, 0), 1.0))
        .unwrap();
    let b = make_beltrami_euler(&PolyVec::unit_cross_nabla(2), 1.0, ScalarField::sin(Wavevector::new(0, 1, 0), 1.0))
        .unwrap();
    let cert = nonuniqueness_certificate(&a, &b, &tol()).unwrap();
    assert!(cert.certified);
    // a = (0, cos x₁, sin x₁), b = (−cos x₂, 0, sin x₂): each has mean-square
    // norm 1 and their modes are disjoint, so ‖a − b‖² = 2.
    assert_relative_eq!(cert.norm_a, 1.0, max_relative = 1e-15);
    assert_relative_eq!(cert.norm_b, 1.0, max_relative = 1e-15);
    assert_relative_eq!(cert.distance, 2f64.sqrt(), max_relative = 1e-15);
    assert!(matches!(nonuniqueness_certificate(&a, &a, &tol()), Err(Error::SameSolution { .. })));

    let profile = |j| PipelineProfile::on_default_slab(vec![PipelineTerm { j, k: 1, alpha: 1.0, beta: 0.0 }]).unwrap();
    let pa = make_pipeline_euler(PipelinePotential::Profile(profile(1))).unwrap();
    let pb = make_pipeline_euler(PipelinePotential::Profile(profile(2))).unwrap();
    assert!(nonuniqueness_certificate(&pa, &pb, &tol()).unwrap().certified);
    assert!(matches!(nonuniqueness_certificate(&a, &pa, &tol()), Err(Error::Incomparable(_))));

    let ra = make_radial_2d(RadialProfile::new(1.0, 3, 1.0).unwrap()).unwrap();
    let rb = make_radial_2d(RadialProfile::new(1.0, 4, 1.0).unwrap()).unwrap();
    let cert = nonuniqueness_certificate(&ra, &rb, &tol()).unwrap();
    assert!(cert.certified && cert.distance > 0.0);
    assert!(nonuniqueness_certificate(&sin_x1_ns(0.1), &a, &tol()).is_err());
}

#[test]
fn radial_l2_norm_matches_closed_form() {
    // φ = (1 − r²)³: u_θ = −6r(1 − r²)², ‖u‖² = 2π·36·∫ r³(1−r²)⁴ dr = 2π·36/60.
    let p = RadialProfile::new(1.0, 3, 1.0).unwrap();
    assert_relative_eq!(radial_l2(&p).powi(2), 2.0 * PI * 36.0 / 60.0, max_relative = 1e-12);
}

#[test]
fn prandtl_examples() {
    let s = dirichlet_ns(0.1);
    let study = prandtl_study(&s, 1.0, &[0.1, 0.01, 0.001], None).unwrap();
    assert!(study.verdict);
    assert_relative_eq!(study.delta, 0.05 * PI);
    let sup0 = {
        let xs = box_axis(PRANDTL_SAMPLES);
        grid::vector_magnitudes(s.u0().unwrap(), [&xs, &xs, &xs]).into_iter().fold(0.0, f64::max)
    };
    for (row, expect) in study.rows.iter().zip([0.2592, 0.02955, 0.002996]) {
        let exact = -(-3.0 * row.nu).exp_m1() * sup0;
        assert_relative_eq!(row.sup_difference, exact, max_relative = 1e-12);
        assert_relative_eq!(row.sup_difference / sup0, expect, max_relative = 2e-3);
        assert_relative_eq!(row.profile_ratio.unwrap(), sup0, max_relative = 1e-12);
        assert!(row.strip_difference <= row.sup_difference);
    }
    assert_eq!(study.to_csv().lines().count(), 4);

    let p = prandtl_study(&multi_term_pipeline(0.1), 0.5, &[0.1, 0.01, 0.001], Some(0.1)).unwrap();
    assert!(p.verdict);
    assert!(p.rows.iter().all(|r| r.profile_ratio.is_none()));

    assert!(prandtl_study(&sin_x1_ns(0.1), 1.0, &[0.1], None).is_err());
    assert!(prandtl_study(&s, 0.0, &[0.1], None).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn path_limits_are_static_solutions(mu in 0.0f64..3.0, terms in prop::collection::vec((1u32..3, 1u32..3, -1.0f64..1.0), 1..3)) {
        let sol = make_beltrami_ns(
            &PolyVec::saddle(),
            3f64.sqrt(),
            ScalarField::trig_product([1, 1, 1], [Trig::Sin, Trig::Cos, Trig::Sin], 1.0),
            0.3,
        ).unwrap();
        prop_assert!(verify_solution(&path_limit(&sol, mu).unwrap(), &DEFAULT_TIMES, &tol()).unwrap().overall);

        let profile = PipelineProfile::on_default_slab(
            terms.into_iter().map(|(j, k, alpha)| PipelineTerm { j, k, alpha, beta: 0.25 }).collect(),
        ).unwrap();
        let pipe = make_pipeline_ns(profile, 0.3).unwrap();
        prop_assert!(verify_solution(&path_limit(&pipe, mu).unwrap(), &DEFAULT_TIMES, &tol()).unwrap().overall);
    }

    #[test]
    fn certificate_distance_matches_bound(mu1 in 0.0f64..2.0, gap in 0.01f64..2.0) {
        let s = sin_x1_ns(0.1);
        let cert = double_limit_certificate(&s, mu1, mu1 + gap, &tol()).unwrap();
        prop_assert!(cert.distance > 0.0);
        let bound = cert.lower_bound.unwrap();
        prop_assert!((cert.distance - bound).abs() <= 1e-12 * bound);
    }

    #[test]
    fn path_points_multiply_back(mu in 0.0f64..10.0, nu in 1e-8f64..10.0) {
        let p = PathSpec::new(mu).unwrap().point(nu).unwrap();
        prop_assert!(p.exact);
        prop_assert_eq!(p.nu * p.t, mu);
    }
}
