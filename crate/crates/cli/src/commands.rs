use std::fs;
use std::path::{Path, PathBuf};

use flowcert::flows::{eval_at_time, recover_pressure, FlowSolution, Pressure, SolutionSpec};
use flowcert::limits::{
    double_limit_certificate, empirical_path_convergence, nonuniqueness_certificate, prandtl_study,
    sample_random_solutions, LimitCertificate,
};
use flowcert::polyalg::PolyVec;
use flowcert::spectral::grid::{minimal_resolution, sample_scalar, sample_vector, sup_norm_vector};
use flowcert::spectral::{curl, VectorField};
use flowcert::verify::{verify_solution, Tolerances, VerificationReport, DEFAULT_TIMES};
use flowcert::Error;
use serde::Serialize;

use crate::config::{check_resolution, parse_config, RunConfig, MAX_DEGREE};
use crate::{json, CliError, Common, Outcome};

const DEFAULT_OUT: &str = "flowcert-out";
const DEFAULT_GRID: usize = 16;
const RADIAL_GRID: usize = 64;

/// Everything a command needs once flags and config are merged.
pub struct Context {
    pub config: RunConfig,
    pub solution_file: Option<PathBuf>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub resolution: Option<usize>,
    pub out: PathBuf,
}

impl Context {
    pub fn new(common: &Common) -> Result<Self, CliError> {
        let config = match &common.config {
            Some(path) => parse_config(&read(path)?)?,
            None => RunConfig::default(),
        };
        let scale = common.tolerance_scale.unwrap_or(1.0);
        if !(scale.is_finite() && scale > 0.0) {
            return Err(CliError::Config(format!("--tolerance-scale must be positive, got {scale}")));
        }
        let resolution = common.resolution.or(config.resolution);
        if let Some(n) = resolution {
            check_resolution(n)?;
        }
        let out = common.out.clone().or_else(|| config.output.clone()).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
        Ok(Context {
            seed: common.seed.or(config.seed).unwrap_or(0),
            tolerances: config.tolerances.unwrap_or_default().scaled(scale),
            solution_file: common.solution.clone(),
            resolution,
            out,
            config,
        })
    }

    fn solution(&self) -> Result<FlowSolution, CliError> {
        if let Some(path) = &self.solution_file {
            return load_solution(&read(path)?);
        }
        let flow = self.config.flow.as_ref().ok_or_else(|| CliError::Config("config has no `flow` section".into()))?;
        flow.build(self.seed)
    }

    fn times(&self) -> Vec<f64> {
        self.config.times.clone().unwrap_or_else(|| DEFAULT_TIMES.to_vec())
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        fs::create_dir_all(&self.out).map_err(|e| CliError::Io(self.out.clone(), e))?;
        let path = self.out.join(name);
        fs::write(&path, contents).map_err(|e| CliError::Io(path.clone(), e))?;
        Ok(path)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// Parses a solution file with field-level diagnostics, then rebuilds it
/// through the constructors.
pub fn load_solution(text: &str) -> Result<FlowSolution, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: SolutionSpec = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Config(format!("solution field `{path}`: {inner}"))
    })?;
    Ok(spec.build(Some(MAX_DEGREE))?)
}

#[derive(Serialize)]
struct SymbolReport {
    symbol: Option<String>,
    orthogonal: bool,
    residual: Option<String>,
}

pub fn validate_symbol(ctx: &Context) -> Result<Outcome, CliError> {
    let op = ctx.config.symbol().ok_or_else(|| CliError::Config("config has no operator to validate".into()))?;
    let (report, summary) = match PolyVec::from_records(&op.records(), Some(MAX_DEGREE)) {
        Ok(p) => {
            let summary = format!("orthogonal: {p}");
            (SymbolReport { symbol: Some(p.to_string()), orthogonal: true, residual: None }, summary)
        }
        Err(Error::NotOrthogonal { residual }) => {
            let summary = format!("not orthogonal: x·P(x) keeps the monomial {residual}");
            (SymbolReport { symbol: None, orthogonal: false, residual: Some(residual) }, summary)
        }
        Err(e) => return Err(e.into()),
    };
    let file = ctx.write("symbol.json", &json::to_string(&report))?;
    Ok(Outcome { passed: report.orthogonal, summary, files: vec![file] })
}

pub fn construct(ctx: &Context) -> Result<Outcome, CliError> {
    let s = ctx.solution()?;
    let file = ctx.write("solution.json", &json::to_string(&s.to_spec()))?;
    let summary = format!("constructed {} solution", s.family().name());
    Ok(Outcome { passed: true, summary, files: vec![file] })
}

fn report_summary(r: &VerificationReport) -> String {
    let mut out = r.render_table();
    for f in r.failures() {
        out += &format!("FAILED {}\n", f.name);
    }
    out
}

pub fn verify(ctx: &Context) -> Result<Outcome, CliError> {
    let s = ctx.solution()?;
    let report = verify_solution(&s, &ctx.times(), &ctx.tolerances)?;
    let file = ctx.write("report.json", &json::to_string(&report))?;
    Ok(Outcome { passed: report.overall, summary: report_summary(&report), files: vec![file] })
}

fn grid_size(ctx: &Context, u: &VectorField) -> usize {
    ctx.resolution.unwrap_or_else(|| minimal_resolution(u.max_wavenumber()).max(DEFAULT_GRID))
}

pub fn sample(ctx: &Context) -> Result<Outcome, CliError> {
    let s = ctx.solution()?;
    let t = ctx.config.sample.as_ref().map_or(0.0, |c| c.t);
    let (u, omega, p) = match &s {
        FlowSolution::Radial(r) => return sample_radial(ctx, r),
        _ => {
            let u = eval_at_time(&s, t)?.u;
            let Pressure::Field(p) = recover_pressure(&s, t)? else {
                unreachable!("spectral families have field pressure")
            };
            let w = curl(&u);
            (u, w, p)
        }
    };
    let n = grid_size(ctx, &u);
    let mut files = Vec::new();
    for (name, sample) in [
        ("u.csv", sample_vector(&u, n)?),
        ("omega.csv", sample_vector(&omega, n)?),
        ("pressure.csv", sample_scalar(&p, n)?),
    ] {
        let mut buf = Vec::new();
        sample.write_csv(&mut buf).expect("writing to memory");
        files.push(ctx.write(name, &String::from_utf8(buf).expect("ASCII CSV"))?);
    }
    Ok(Outcome { passed: true, summary: format!("sampled {}³ grid at t = {t}", n), files })
}

fn sample_radial(ctx: &Context, r: &flowcert::flows::RadialFlow) -> Result<Outcome, CliError> {
    let n = ctx.resolution.unwrap_or(RADIAL_GRID);
    let radius = r.profile().radius;
    let axis: Vec<f64> = (0..n).map(|i| -radius + 2.0 * radius * i as f64 / (n - 1) as f64).collect();
    let (mut u, mut w, mut p) = (String::from("x1,x2,v1,v2\n"), String::from("x1,x2,v1\n"), String::from("x1,x2,v1\n"));
    let f = json::fixed17;
    for &x1 in &axis {
        for &x2 in &axis {
            let jet = r.jet([x1, x2]);
            let at = format!("{},{}", f(x1), f(x2));
            u += &format!("{at},{},{}\n", f(jet.velocity[0]), f(jet.velocity[1]));
            w += &format!("{at},{}\n", f(jet.vorticity));
            p += &format!("{at},{}\n", f(jet.pressure));
        }
    }
    let files = vec![ctx.write("u.csv", &u)?, ctx.write("omega.csv", &w)?, ctx.write("pressure.csv", &p)?];
    Ok(Outcome { passed: true, summary: format!("sampled {n}² grid on [-{radius}, {radius}]²"), files })
}

#[derive(Serialize)]
struct RandomOutput<'a> {
    algorithm: &'a str,
    seed: u64,
    mu_max: f64,
    mus: &'a [f64],
    solutions: Vec<SolutionSpec>,
    reports: &'a [VerificationReport],
    all_verified: bool,
}

pub fn limit_study(ctx: &Context) -> Result<Outcome, CliError> {
    let s = ctx.solution()?;
    let limits = ctx.config.limits.as_ref().ok_or_else(|| CliError::Config("config has no `limits` section".into()))?;
    let mut passed = true;
    let mut summary = String::new();
    let mut files = Vec::new();

    if !limits.mus.is_empty() {
        if limits.nus.is_empty() {
            return Err(CliError::Config("`limits.mus` needs a nonempty `limits.nus`".into()));
        }
        let u0 = s.u0().ok_or(Error::NotSpectral("radial_2d"))?;
        let scale = sup_norm_vector(u0, minimal_resolution(u0.max_wavenumber()).max(DEFAULT_GRID))?;
        let mut csv = String::from("mu,nu,t,exact_product,sup_difference\n");
        for &mu in &limits.mus {
            for row in empirical_path_convergence(&s, mu, &limits.nus)? {
                let ok = row.exact_product && row.sup_difference <= ctx.tolerances.oracle * scale;
                passed &= ok;
                csv += &format!(
                    "{},{},{},{},{}\n",
                    json::fixed17(mu),
                    json::fixed17(row.nu),
                    json::fixed17(row.t),
                    row.exact_product,
                    json::fixed17(row.sup_difference)
                );
            }
        }
        summary += &format!("path table: {} rows\n", limits.mus.len() * limits.nus.len());
        files.push(ctx.write("path.csv", &csv)?);
    }

    if let Some([mu1, mu2]) = limits.double {
        let cert: LimitCertificate = double_limit_certificate(&s, mu1, mu2, &ctx.tolerances)?;
        passed &= cert.certified;
        summary += &format!("double limit: distance {:e}, certified {}\n", cert.distance, cert.certified);
        files.push(ctx.write("double_limit.json", &json::to_string(&cert))?);
    }

    if let Some(r) = &limits.random {
        let sample = sample_random_solutions(&s, r.mu_max, r.count, ctx.seed, &ctx.tolerances)?;
        let verified = sample.all_verified();
        passed &= verified;
        let out = RandomOutput {
            algorithm: sample.algorithm,
            seed: sample.seed,
            mu_max: sample.mu_max,
            mus: &sample.mus,
            solutions: sample.solutions.iter().map(FlowSolution::to_spec).collect(),
            reports: &sample.reports,
            all_verified: verified,
        };
        summary += &format!("random solutions: {} draws, all verified {verified}\n", sample.mus.len());
        files.push(ctx.write("random.json", &json::to_string(&out))?);
    }

    if files.is_empty() {
        return Err(CliError::Config("`limits` requests nothing: give `mus`, `double` or `random`".into()));
    }
    Ok(Outcome { passed, summary, files })
}

pub fn prandtl(ctx: &Context) -> Result<Outcome, CliError> {
    let s = ctx.solution()?;
    let p = ctx.config.prandtl.as_ref().ok_or_else(|| CliError::Config("config has no `prandtl` section".into()))?;
    let study = prandtl_study(&s, p.t, &p.nus, p.delta)?;
    let mut csv = String::from("nu,t,sup_difference,strip_difference\n");
    for r in &study.rows {
        csv += &format!(
            "{},{},{},{}\n",
            json::fixed17(r.nu),
            json::fixed17(r.t),
            json::fixed17(r.sup_difference),
            json::fixed17(r.strip_difference)
        );
    }
    let files = vec![ctx.write("prandtl.csv", &csv)?, ctx.write("prandtl.json", &json::to_string(&study))?];
    let summary = format!(
        "strip width {:e}: converges {}, no amplification {}, no boundary layer {}",
        study.delta, study.converges, study.no_amplification, study.verdict
    );
    Ok(Outcome { passed: study.verdict, summary, files })
}

pub fn nonuniqueness(ctx: &Context) -> Result<Outcome, CliError> {
    let a = ctx.solution()?;
    let partner = ctx.config.partner.as_ref().ok_or_else(|| CliError::Config("config has no `partner` flow".into()))?;
    let b = partner.build(ctx.seed)?;
    match nonuniqueness_certificate(&a, &b, &ctx.tolerances) {
        Ok(cert) => {
            let summary = format!(
                "distance {:e} (norms {:e}, {:e}), certified {}",
                cert.distance, cert.norm_a, cert.norm_b, cert.certified
            );
            let file = ctx.write("nonuniqueness.json", &json::to_string(&cert))?;
            Ok(Outcome { passed: cert.certified, summary, files: vec![file] })
        }
        Err(e @ Error::SameSolution { .. }) => Ok(Outcome { passed: false, summary: e.to_string(), files: vec![] }),
        Err(e) => Err(e.into()),
    }
}
