//! Serialized form of a [`FlowSolution`]. Loading re-runs every constructor
//! check, so a decoded solution is as trustworthy as a freshly built one.

use serde::{Deserialize, Serialize};

use super::{
    make_beltrami_euler, make_beltrami_ns, make_pipeline_euler, make_pipeline_ns, make_radial_2d, BoundaryClass,
    FlowSolution, PipelinePotential, RadialProfile,
};
use crate::eigen::PipelineProfile;
use crate::error::{Error, Result};
use crate::polyalg::{PolyVec, SymbolTerm};
use crate::spectral::io::{scalar_from_records, scalar_to_records, ModeRecord};

/// Coefficient of `e^{i(jξ + mη)}` in a pipeline potential; `k = [j, m]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneModeRecord {
    pub k: [i32; 2],
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum SolutionSpec {
    BeltramiEuler {
        operator: [Vec<SymbolTerm>; 3],
        lambda: f64,
        psi: Vec<ModeRecord>,
        #[serde(default)]
        boundary: BoundaryClass,
    },
    BeltramiNs {
        operator: [Vec<SymbolTerm>; 3],
        lambda: f64,
        psi: Vec<ModeRecord>,
        nu: f64,
        /// Overrides the `λ²` in the time law. Absent for genuine solutions.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decay_rate: Option<f64>,
        #[serde(default)]
        boundary: BoundaryClass,
    },
    PipelineEuler {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        profile: Option<PipelineProfile>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modes: Option<Vec<PlaneModeRecord>>,
    },
    PipelineNs {
        profile: PipelineProfile,
        nu: f64,
    },
    #[serde(rename = "radial_2d")]
    Radial2d {
        radial: RadialProfile,
    },
}

fn beltrami_boundary(s: FlowSolution, boundary: BoundaryClass) -> Result<FlowSolution> {
    match boundary {
        BoundaryClass::Periodic => Ok(s),
        BoundaryClass::DirichletBox => s.on_dirichlet_box(),
        other => Err(Error::InvalidArgument(format!("Beltrami solutions cannot carry boundary {other:?}"))),
    }
}

impl SolutionSpec {
    /// Rebuilds the solution. `max_degree` caps the operator degree.
    pub fn build(&self, max_degree: Option<u32>) -> Result<FlowSolution> {
        match self {
            SolutionSpec::BeltramiEuler { operator, lambda, psi, boundary } => {
                let a = PolyVec::from_records(operator, max_degree)?;
                let s = make_beltrami_euler(&a, *lambda, scalar_from_records(psi)?)?;
                beltrami_boundary(s, *boundary)
            }
            SolutionSpec::BeltramiNs { operator, lambda, psi, nu, decay_rate, boundary } => {
                let a = PolyVec::from_records(operator, max_degree)?;
                let mut s = make_beltrami_ns(&a, *lambda, scalar_from_records(psi)?, *nu)?;
                if let (Some(rate), FlowSolution::Beltrami(b)) = (decay_rate, &mut s) {
                    if !rate.is_finite() {
                        return Err(Error::InvalidArgument(format!("decay rate must be finite, got {rate}")));
                    }
                    *b = b.clone().with_decay_rate(*rate);
                }
                beltrami_boundary(s, *boundary)
            }
            SolutionSpec::PipelineEuler { profile, modes } => match (profile, modes) {
                (Some(p), None) => make_pipeline_euler(PipelinePotential::Profile(p.clone())),
                (None, Some(m)) => make_pipeline_euler(PipelinePotential::Modes(m.clone())),
                _ => Err(Error::InvalidArgument("pipeline_euler needs exactly one of `profile` or `modes`".into())),
            },
            SolutionSpec::PipelineNs { profile, nu } => make_pipeline_ns(profile.clone(), *nu),
            SolutionSpec::Radial2d { radial } => make_radial_2d(*radial),
        }
    }

    pub fn from_solution(s: &FlowSolution) -> Self {
        match s {
            FlowSolution::Beltrami(b) => {
                let operator = b.operator.to_records();
                let psi = scalar_to_records(&b.psi);
                match b.nu {
                    None => SolutionSpec::BeltramiEuler { operator, lambda: b.lambda, psi, boundary: b.boundary },
                    Some(nu) => SolutionSpec::BeltramiNs {
                        operator,
                        lambda: b.lambda,
                        psi,
                        nu,
                        decay_rate: (b.decay_rate != f64::from(b.lambda_sq)).then_some(b.decay_rate),
                        boundary: b.boundary,
                    },
                }
            }
            FlowSolution::Pipeline(p) => match (&p.potential, p.nu) {
                (PipelinePotential::Profile(prof), Some(nu)) => SolutionSpec::PipelineNs { profile: prof.clone(), nu },
                (PipelinePotential::Profile(prof), None) => {
                    SolutionSpec::PipelineEuler { profile: Some(prof.clone()), modes: None }
                }
                (PipelinePotential::Modes(m), _) => {
                    SolutionSpec::PipelineEuler { profile: None, modes: Some(m.clone()) }
                }
            },
            FlowSolution::Radial(r) => SolutionSpec::Radial2d { radial: r.profile },
        }
    }
}

impl FlowSolution {
    pub fn to_spec(&self) -> SolutionSpec {
        SolutionSpec::from_solution(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("solution specs always serialize")
    }

    /// Parses and re-validates a solution.
    pub fn from_json(text: &str, max_degree: Option<u32>) -> Result<Self> {
        let spec: SolutionSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("solution JSON: {e}")))?;
        spec.build(max_degree)
    }
}
