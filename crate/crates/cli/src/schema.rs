//! JSON schema of the command-line interface: input specs as a tagged union
//! keyed by `family`, and the report objects emitted by each subcommand.
//!
//! Field order in the structs below is the serialization order, which keeps
//! repeated runs byte-identical.

use realsym::abelian::{FinAbGroup, GroupElement, Homomorphism, Subgroup};
use realsym::engine::{Decision, EngineInput, SweepRecord};
use realsym::factor_graph::{FactorGraph, FactorKind, InvolutionLabel, RealFormLabel};
use realsym::families::{
    build_generic, build_sl_pair, build_sl_symplectic, CompatSpec, GenericSpec, SlPairSpec,
    SlSymplecticSpec,
};
use realsym::gamma::{CohClass, CohDegree, GammaModule};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Input record for `decide` and `count`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InputSpec {
    SlSymplectic {
        n: i64,
        r: i64,
        s: i64,
    },
    SlPair {
        n: i64,
        h_gens: Vec<[i64; 2]>,
    },
    Generic {
        #[serde(rename = "Q")]
        q: Box<ModuleDto>,
        h_gens: Vec<Vec<i64>>,
        #[serde(rename = "Z")]
        z: Box<ModuleDto>,
        chi: Vec<Vec<i64>>,
        delta: Vec<i64>,
        compat: CompatDto,
    },
}

impl InputSpec {
    /// Builds the validated engine input this spec describes.
    pub fn build(&self) -> realsym::Result<EngineInput> {
        match self {
            InputSpec::SlSymplectic { n, r, s } => build_sl_symplectic(&SlSymplecticSpec {
                n: *n,
                r: *r,
                s: *s,
            }),
            InputSpec::SlPair { n, h_gens } => build_sl_pair(&SlPairSpec {
                n: *n,
                h_gens: h_gens.clone(),
            }),
            InputSpec::Generic {
                q,
                h_gens,
                z,
                chi,
                delta,
                compat,
            } => {
                let q = q.to_module()?;
                let z = z.to_module()?;
                let gens = h_gens
                    .iter()
                    .map(|coords| q.group().element(coords))
                    .collect::<realsym::Result<Vec<GroupElement>>>()?;
                let chi = Homomorphism::new(z.group().clone(), q.group().clone(), chi.clone())?;
                let delta_rep = z.group().element(delta)?;
                let delta = CohClass::new(CohDegree::Two, z.clone(), delta_rep)?;
                let compat = match compat {
                    CompatDto::Flag(flag) => CompatSpec::Asserted(*flag),
                    CompatDto::Graph(dto) => CompatSpec::Graph(dto.to_factor_graph()?),
                };
                build_generic(GenericSpec {
                    q,
                    h_gens: gens,
                    z,
                    chi,
                    delta,
                    compat,
                })
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            InputSpec::SlSymplectic { n, r, s } => {
                format!("sl-symplectic family, n={n} r={r} s={s}")
            }
            InputSpec::SlPair { n, h_gens } => {
                format!("sl-pair family, n={n}, {} generator(s)", h_gens.len())
            }
            InputSpec::Generic { .. } => "generic datum".into(),
        }
    }
}

/// A finite abelian group with an involutive action, in presentation
/// coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDto {
    pub orders: Vec<i64>,
    pub action: Vec<Vec<i64>>,
}

impl ModuleDto {
    pub fn to_module(&self) -> realsym::Result<GammaModule> {
        let group = FinAbGroup::new(&self.orders)?;
        let action = Homomorphism::new(group.clone(), group.clone(), self.action.clone())?;
        GammaModule::new(group, action)
    }
}

/// Compatibility field: a plain flag or a factor graph to check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CompatDto {
    Flag(bool),
    Graph(FactorGraphDto),
}

/// Label maps are keyed by the factor index, written as a JSON object key
/// (so a string).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorGraphDto {
    pub factors: Vec<FactorKindDto>,
    pub sigma_perm: Vec<usize>,
    pub sigma_labels: BTreeMap<String, RealFormLabelDto>,
    pub theta_perm: Vec<usize>,
    pub theta_labels: BTreeMap<String, InvolutionLabelDto>,
}

impl FactorGraphDto {
    pub fn to_factor_graph(&self) -> realsym::Result<FactorGraph> {
        let parse_key = |key: &String| -> realsym::Result<usize> {
            key.parse().map_err(|_| {
                realsym::Error::InvalidFamilySpec(format!(
                    "label key '{key}' is not a factor index"
                ))
            })
        };
        let mut sigma_labels = BTreeMap::new();
        for (key, label) in &self.sigma_labels {
            sigma_labels.insert(parse_key(key)?, label.to_core());
        }
        let mut theta_labels = BTreeMap::new();
        for (key, label) in &self.theta_labels {
            theta_labels.insert(parse_key(key)?, label.to_core());
        }
        FactorGraph::new(
            self.factors.iter().map(FactorKindDto::to_core).collect(),
            self.sigma_perm.clone(),
            sigma_labels,
            self.theta_perm.clone(),
            theta_labels,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FactorKindDto {
    Sl { n: i64 },
    Custom { tag: String },
}

impl FactorKindDto {
    fn to_core(&self) -> FactorKind {
        match self {
            FactorKindDto::Sl { n } => FactorKind::Sl { n: *n },
            FactorKindDto::Custom { tag } => FactorKind::Custom { tag: tag.clone() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "label", rename_all = "snake_case", deny_unknown_fields)]
pub enum RealFormLabelDto {
    Split,
    QuasiSplitSu,
    SuInnerTwist { s: i64 },
    Custom { tag: String },
}

impl RealFormLabelDto {
    fn to_core(&self) -> RealFormLabel {
        match self {
            RealFormLabelDto::Split => RealFormLabel::Split,
            RealFormLabelDto::QuasiSplitSu => RealFormLabel::QuasiSplitSu,
            RealFormLabelDto::SuInnerTwist { s } => RealFormLabel::SuInnerTwist { s: *s },
            RealFormLabelDto::Custom { tag } => RealFormLabel::Custom { tag: tag.clone() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "label", rename_all = "snake_case", deny_unknown_fields)]
pub enum InvolutionLabelDto {
    TransposeInverse,
    Symplectic,
    InnerPq { p: i64, q: i64 },
    Custom { tag: String },
}

impl InvolutionLabelDto {
    fn to_core(&self) -> InvolutionLabel {
        match self {
            InvolutionLabelDto::TransposeInverse => InvolutionLabel::TransposeInverse,
            InvolutionLabelDto::Symplectic => InvolutionLabel::Symplectic,
            InvolutionLabelDto::InnerPq { p, q } => InvolutionLabel::InnerPq { p: *p, q: *q },
            InvolutionLabelDto::Custom { tag } => InvolutionLabel::Custom { tag: tag.clone() },
        }
    }
}

/// Verdict with stable field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionDto {
    pub exists: bool,
    pub failed_condition: Option<String>,
    pub num_classes: Option<u128>,
    #[serde(rename = "A_canonical")]
    pub a_canonical: Option<Vec<i64>>,
}

impl DecisionDto {
    pub fn from_decision(decision: &Decision) -> Self {
        DecisionDto {
            exists: decision.exists,
            failed_condition: decision.failed_condition.map(|c| c.as_str().to_string()),
            num_classes: decision.num_classes,
            a_canonical: decision.a_canonical(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecideReport {
    pub input: InputSpec,
    pub decision: DecisionDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub input: InputSpec,
    pub num_classes: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohomReport {
    pub orders: Vec<i64>,
    pub action: Vec<Vec<i64>>,
    pub h1_rank: usize,
    pub h1_representatives: Vec<Vec<i64>>,
    pub h2: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecordDto {
    pub n: i64,
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub exists: bool,
    pub failed_condition: Option<String>,
    pub num_classes: Option<u128>,
}

impl SweepRecordDto {
    pub fn from_record(record: &SweepRecord) -> Self {
        SweepRecordDto {
            n: record.n,
            r: record.r,
            s: record.s,
            t: record.t,
            exists: record.exists,
            failed_condition: record.failed_condition.map(|c| c.as_str().to_string()),
            num_classes: record.num_classes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub records: Vec<SweepRecordDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgroupDto {
    pub order: u128,
    pub generators: Vec<Vec<i64>>,
}

impl SubgroupDto {
    pub fn from_subgroup(sub: &Subgroup) -> Self {
        SubgroupDto {
            order: sub.order(),
            generators: sub
                .generators()
                .iter()
                .map(|g| g.coords().to_vec())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub orders: Vec<i64>,
    pub action: Vec<Vec<i64>>,
    pub h1_enumerated: u128,
    pub h1_formula: u128,
    pub h1_rank: usize,
    pub h2_enumerated: u128,
    pub h2: Vec<i64>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroups: Option<Vec<SubgroupDto>>,
}

/// Machine-readable failure object, printed to stderr in JSON mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub exit_code: i32,
    pub kind: String,
    pub message: String,
}
