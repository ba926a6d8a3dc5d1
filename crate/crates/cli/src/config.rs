//! The run configuration: one JSON document, unknown keys rejected.

use std::fmt;
use std::path::PathBuf;

use flowcert::eigen::{
    basis_eigenfunction, dirichlet_eigenfunction, enumerate_shell, periodic_eigenfunction, DirichletMode,
    PipelineProfile, TrigTerm,
};
use flowcert::flows::{
    make_beltrami_euler, make_beltrami_ns, make_pipeline_euler, make_pipeline_ns, make_radial_2d, BoundaryClass,
    FlowSolution, PipelinePotential, PlaneModeRecord, RadialProfile,
};
use flowcert::polyalg::{PolyVec, SymbolTerm};
use flowcert::spectral::io::{scalar_from_records, ModeRecord};
use flowcert::spectral::ScalarField;
use flowcert::verify::Tolerances;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::value::MapAccessDeserializer;
use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::CliError;

pub const MAX_DEGREE: u32 = 6;
pub const MAX_LAMBDA_SQ: u32 = 200;
pub const MAX_MODES: usize = 4096;
/// Upper bound on list-valued settings (times, ν lists, sample counts).
pub const MAX_LIST: usize = 1024;
pub const MAX_RESOLUTION: usize = 256;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flow: Option<FlowConfig>,
    /// Standalone symbol for `validate-symbol` when no flow is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<OperatorConfig>,
    /// Second solution for `nonuniqueness`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<FlowConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Option<LimitsConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prandtl: Option<PrandtlConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

/// One flow, selected by its `family` key.
///
/// `family` must come first in the object. The variant's fields are then
/// read straight from the source, so errors keep their path and position.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FlowConfig {
    BeltramiEuler(BeltramiEulerFlow),
    BeltramiNs(BeltramiNsFlow),
    PipelineEuler(PipelineEulerFlow),
    PipelineNs(PipelineNsFlow),
    #[serde(rename = "radial_2d")]
    Radial2d(Radial2dFlow),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeltramiEulerFlow {
    pub operator: OperatorConfig,
    pub psi: PsiConfig,
    #[serde(default)]
    pub negative_lambda: bool,
    #[serde(default)]
    pub boundary: BoundaryClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeltramiNsFlow {
    pub operator: OperatorConfig,
    pub psi: PsiConfig,
    #[serde(default)]
    pub negative_lambda: bool,
    pub nu: f64,
    /// Replaces `λ²` in the time law; only useful for building broken fixtures.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decay_rate: Option<f64>,
    #[serde(default)]
    pub boundary: BoundaryClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineEulerFlow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<PipelineProfile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes: Option<Vec<PlaneModeRecord>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineNsFlow {
    pub profile: PipelineProfile,
    pub nu: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Radial2dFlow {
    pub radial: RadialProfile,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum FamilyTag {
    BeltramiEuler,
    BeltramiNs,
    PipelineEuler,
    PipelineNs,
    #[serde(rename = "radial_2d")]
    Radial2d,
}

impl<'de> Deserialize<'de> for FlowConfig {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_map(FlowVisitor)
    }
}

struct FlowVisitor;

impl<'de> Visitor<'de> for FlowVisitor {
    type Value = FlowConfig;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a flow object whose first key is `family`")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<FlowConfig, A::Error> {
        match map.next_key::<String>()?.as_deref() {
            Some("family") => {}
            Some(other) => return Err(de::Error::custom(format!("`family` must be the first key, found `{other}`"))),
            None => return Err(de::Error::missing_field("family")),
        }
        let family: FamilyTag = map.next_value()?;
        let rest = MapAccessDeserializer::new(map);
        Ok(match family {
            FamilyTag::BeltramiEuler => FlowConfig::BeltramiEuler(Deserialize::deserialize(rest)?),
            FamilyTag::BeltramiNs => FlowConfig::BeltramiNs(Deserialize::deserialize(rest)?),
            FamilyTag::PipelineEuler => FlowConfig::PipelineEuler(Deserialize::deserialize(rest)?),
            FamilyTag::PipelineNs => FlowConfig::PipelineNs(Deserialize::deserialize(rest)?),
            FamilyTag::Radial2d => FlowConfig::Radial2d(Deserialize::deserialize(rest)?),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedOperator {
    E1CrossNabla,
    E2CrossNabla,
    E3CrossNabla,
    Saddle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorConfig {
    Named(NamedOperator),
    Terms([Vec<SymbolTerm>; 3]),
}

impl OperatorConfig {
    pub fn records(&self) -> [Vec<SymbolTerm>; 3] {
        match self {
            OperatorConfig::Named(n) => named(*n).to_records(),
            OperatorConfig::Terms(t) => t.clone(),
        }
    }

    pub fn build(&self) -> flowcert::Result<PolyVec> {
        match self {
            OperatorConfig::Named(n) => Ok(named(*n)),
            OperatorConfig::Terms(t) => PolyVec::from_records(t, Some(MAX_DEGREE)),
        }
    }
}

fn named(n: NamedOperator) -> PolyVec {
    match n {
        NamedOperator::E1CrossNabla => PolyVec::unit_cross_nabla(0),
        NamedOperator::E2CrossNabla => PolyVec::unit_cross_nabla(1),
        NamedOperator::E3CrossNabla => PolyVec::unit_cross_nabla(2),
        NamedOperator::Saddle => PolyVec::saddle(),
    }
}

/// How the scalar seed ψ is given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PsiConfig {
    /// Explicit Fourier coefficients on one shell.
    Modes(Vec<ModeRecord>),
    /// Real sine/cosine products with a common `|k|²`.
    Basis(Vec<TrigTerm>),
    /// `sin k₁x₁ sin k₂x₂ sin k₃x₃`.
    Dirichlet(DirichletMode),
    /// Random Hermitian coefficients on the whole shell, drawn from the run seed.
    Shell { lambda_sq: u32 },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsConfig {
    /// Path constants μ for the empirical convergence table.
    #[serde(default)]
    pub mus: Vec<f64>,
    /// Viscosities visited along each path.
    #[serde(default)]
    pub nus: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomConfig>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomConfig {
    pub count: usize,
    #[serde(default = "default_mu_max")]
    pub mu_max: f64,
}

fn default_mu_max() -> f64 {
    flowcert::limits::DEFAULT_MU_MAX
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrandtlConfig {
    pub t: f64,
    pub nus: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleConfig {
    #[serde(default)]
    pub t: f64,
}

/// Parses a config, reporting the failing field path and source position.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Config(format!("field `{path}`: {inner}"))
    })?;
    cfg.check_caps()?;
    Ok(cfg)
}

fn cap_err(msg: String) -> CliError {
    CliError::Config(msg)
}

fn finite_list(name: &str, xs: &[f64], positive: bool) -> Result<(), CliError> {
    if xs.len() > MAX_LIST {
        return Err(cap_err(format!("`{name}` has {} entries, cap is {MAX_LIST}", xs.len())));
    }
    for &x in xs {
        let ok = x.is_finite() && if positive { x > 0.0 } else { x >= 0.0 };
        if !ok {
            let want = if positive { "positive" } else { "non-negative" };
            return Err(cap_err(format!("`{name}` entries must be finite and {want}, got {x}")));
        }
    }
    Ok(())
}

impl RunConfig {
    fn check_caps(&self) -> Result<(), CliError> {
        for f in self.flow.iter().chain(self.partner.iter()) {
            f.check_caps()?;
        }
        if let Some(op) = &self.operator {
            check_operator_degree(op)?;
        }
        if let Some(t) = &self.times {
            finite_list("times", t, false)?;
        }
        if let Some(l) = &self.limits {
            finite_list("limits.mus", &l.mus, false)?;
            finite_list("limits.nus", &l.nus, true)?;
            if let Some(r) = &l.random {
                if r.count == 0 || r.count > MAX_LIST {
                    return Err(cap_err(format!("`limits.random.count` must lie in 1..={MAX_LIST}, got {}", r.count)));
                }
            }
        }
        if let Some(p) = &self.prandtl {
            finite_list("prandtl.nus", &p.nus, true)?;
        }
        if let Some(n) = self.resolution {
            check_resolution(n)?;
        }
        Ok(())
    }

    /// The symbol for `validate-symbol`: the top-level operator, else the flow's.
    pub fn symbol(&self) -> Option<&OperatorConfig> {
        self.operator.as_ref().or(match &self.flow {
            Some(
                FlowConfig::BeltramiEuler(BeltramiEulerFlow { operator, .. })
                | FlowConfig::BeltramiNs(BeltramiNsFlow { operator, .. }),
            ) => Some(operator),
            _ => None,
        })
    }
}

pub fn check_resolution(n: usize) -> Result<(), CliError> {
    if !(2..=MAX_RESOLUTION).contains(&n) {
        return Err(cap_err(format!("resolution must lie in 2..={MAX_RESOLUTION}, got {n}")));
    }
    Ok(())
}

fn check_operator_degree(op: &OperatorConfig) -> Result<(), CliError> {
    if let OperatorConfig::Terms(t) = op {
        for term in t.iter().flatten() {
            let d: u64 = term.exponents.iter().map(|&e| u64::from(e)).sum();
            if d > u64::from(MAX_DEGREE) {
                return Err(cap_err(format!("operator degree {d} exceeds cap {MAX_DEGREE}")));
            }
        }
    }
    Ok(())
}

impl FlowConfig {
    fn check_caps(&self) -> Result<(), CliError> {
        match self {
            FlowConfig::BeltramiEuler(BeltramiEulerFlow { operator, psi, .. })
            | FlowConfig::BeltramiNs(BeltramiNsFlow { operator, psi, .. }) => {
                check_operator_degree(operator)?;
                let (lambda_sq, count) = match psi {
                    PsiConfig::Modes(m) => {
                        (m.first().map(|r| r.k.iter().map(|&c| i64::from(c).pow(2)).sum::<i64>()).unwrap_or(0), m.len())
                    }
                    PsiConfig::Basis(b) => (b.first().map(|t| t.lambda_sq() as i64).unwrap_or(0), b.len()),
                    PsiConfig::Dirichlet(d) => (i64::from(d.lambda_sq()), 1),
                    PsiConfig::Shell { lambda_sq } => (i64::from(*lambda_sq), 0),
                };
                if lambda_sq > i64::from(MAX_LAMBDA_SQ) {
                    return Err(cap_err(format!("λ² = {lambda_sq} exceeds cap {MAX_LAMBDA_SQ}")));
                }
                if count > MAX_MODES {
                    return Err(cap_err(format!("{count} modes exceed cap {MAX_MODES}")));
                }
            }
            FlowConfig::PipelineEuler(PipelineEulerFlow { profile, modes }) => {
                if let Some(p) = profile {
                    check_profile_caps(p)?;
                }
                if let Some(m) = modes {
                    if m.len() > MAX_MODES {
                        return Err(cap_err(format!("{} modes exceed cap {MAX_MODES}", m.len())));
                    }
                }
            }
            FlowConfig::PipelineNs(PipelineNsFlow { profile, .. }) => check_profile_caps(profile)?,
            FlowConfig::Radial2d(_) => {}
        }
        Ok(())
    }

    /// Runs the flows constructor. `seed` feeds random shell coefficients.
    pub fn build(&self, seed: u64) -> Result<FlowSolution, CliError> {
        let built = match self {
            FlowConfig::BeltramiEuler(BeltramiEulerFlow { operator, psi, negative_lambda, boundary }) => {
                let a = operator.build()?;
                let (lambda, psi) = seed_field(psi, *negative_lambda, seed)?;
                with_boundary(make_beltrami_euler(&a, lambda, psi)?, *boundary)?
            }
            FlowConfig::BeltramiNs(BeltramiNsFlow { operator, psi, negative_lambda, nu, decay_rate, boundary }) => {
                let a = operator.build()?;
                let (lambda, psi) = seed_field(psi, *negative_lambda, seed)?;
                let mut s = make_beltrami_ns(&a, lambda, psi, *nu)?;
                if let (Some(rate), FlowSolution::Beltrami(b)) = (decay_rate, &mut s) {
                    if !rate.is_finite() {
                        return Err(cap_err(format!("decay_rate must be finite, got {rate}")));
                    }
                    *b = b.clone().with_decay_rate(*rate);
                }
                with_boundary(s, *boundary)?
            }
            FlowConfig::PipelineEuler(PipelineEulerFlow { profile, modes }) => match (profile, modes) {
                (Some(p), None) => make_pipeline_euler(PipelinePotential::Profile(p.clone()))?,
                (None, Some(m)) => make_pipeline_euler(PipelinePotential::Modes(m.clone()))?,
                _ => return Err(cap_err("pipeline_euler needs exactly one of `profile` or `modes`".into())),
            },
            FlowConfig::PipelineNs(PipelineNsFlow { profile, nu }) => make_pipeline_ns(profile.clone(), *nu)?,
            FlowConfig::Radial2d(Radial2dFlow { radial }) => make_radial_2d(*radial)?,
        };
        Ok(built)
    }
}

fn check_profile_caps(p: &PipelineProfile) -> Result<(), CliError> {
    if p.terms.len() > MAX_MODES {
        return Err(cap_err(format!("{} profile terms exceed cap {MAX_MODES}", p.terms.len())));
    }
    Ok(())
}

fn with_boundary(s: FlowSolution, boundary: BoundaryClass) -> Result<FlowSolution, CliError> {
    match boundary {
        BoundaryClass::Periodic => Ok(s),
        BoundaryClass::DirichletBox => Ok(s.on_dirichlet_box()?),
        other => Err(cap_err(format!("Beltrami flows cannot carry boundary {other:?}"))),
    }
}

fn seed_field(psi: &PsiConfig, negative: bool, seed: u64) -> Result<(f64, ScalarField), CliError> {
    let (lambda_sq, field) = match psi {
        PsiConfig::Modes(m) => {
            let f = scalar_from_records(m)?;
            let lsq = f.modes().keys().next().map(|k| k.norm_sq()).unwrap_or(0);
            (lsq as f64, f)
        }
        PsiConfig::Basis(b) => {
            let (lsq, f) = basis_eigenfunction(b)?;
            (f64::from(lsq), f)
        }
        PsiConfig::Dirichlet(d) => (f64::from(d.lambda_sq()), dirichlet_eigenfunction(*d)),
        PsiConfig::Shell { lambda_sq } => {
            let shell = enumerate_shell(*lambda_sq);
            if shell.is_empty() {
                return Err(cap_err(format!("no integer wavevectors with |k|² = {lambda_sq}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let coeffs = shell.random_coefficients(&mut rng);
            (f64::from(*lambda_sq), periodic_eigenfunction(&shell, &coeffs)?)
        }
    };
    if lambda_sq == 0.0 {
        return Err(cap_err("ψ must be a nonzero field off the zero mode".into()));
    }
    let lambda = lambda_sq.sqrt();
    Ok((if negative { -lambda } else { lambda }, field))
}
