//! Structured output records. Field order is fixed by struct declaration
//! order, scalar rendering is canonical, and no timing data is included, so
//! identical inputs always produce byte-identical records.

use serde::Serialize;

use curvelift_core::{CensusReport, DimensionKind, LiftedMorphism, StratumDimension, StratumLabel};

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StratumJson {
    Interior { d: usize, m: Vec<usize> },
    Exceptional { i: usize, e: usize },
    Constant,
}

impl From<&StratumLabel> for StratumJson {
    fn from(label: &StratumLabel) -> StratumJson {
        match label {
            StratumLabel::Interior { d, m } => StratumJson::Interior {
                d: *d,
                m: m.clone(),
            },
            StratumLabel::Exceptional { i, e } => StratumJson::Exceptional { i: *i, e: *e },
            StratumLabel::Constant => StratumJson::Constant,
        }
    }
}

#[derive(Serialize)]
pub struct MultiplicityJson {
    pub map: String,
    pub point: String,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct ClassifyJson {
    pub stratum: StratumJson,
    pub components: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct LiftJson {
    pub base: String,
    pub stratum: StratumJson,
    pub components: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct GeometricDegreeJson {
    pub map: String,
    pub deg_g: usize,
    pub deg_image: usize,
}

#[derive(Serialize)]
pub struct DimensionJson {
    pub kind: &'static str,
    pub value: usize,
}

impl From<&StratumDimension> for DimensionJson {
    fn from(dim: &StratumDimension) -> DimensionJson {
        DimensionJson {
            kind: match dim.kind {
                DimensionKind::Exact => "exact",
                DimensionKind::UpperBound => "upper_bound",
            },
            value: dim.value,
        }
    }
}

#[derive(Serialize)]
pub struct ParamsJson {
    pub field: String,
    pub n: usize,
    pub d: usize,
    pub points: Vec<String>,
    pub max_exceptional_degree: usize,
    pub budget: u64,
    pub shards: usize,
}

#[derive(Serialize)]
pub struct StratumCountJson {
    pub d: usize,
    pub m: Vec<usize>,
    pub count: u64,
}

#[derive(Serialize)]
pub struct ExceptionalCountJson {
    pub i: usize,
    pub e: usize,
    pub count: u64,
}

#[derive(Serialize)]
pub struct VerdictsJson {
    pub disjoint: bool,
    pub exhaustive: bool,
    pub lift_unique: bool,
    pub round_trip: bool,
}

#[derive(Serialize)]
pub struct CounterexampleJson {
    pub index: u128,
    pub morphism: String,
    pub detail: String,
}

#[derive(Serialize)]
pub struct CensusJson {
    pub params: ParamsJson,
    pub total: u64,
    pub strata: Vec<StratumCountJson>,
    pub exceptional: Vec<ExceptionalCountJson>,
    pub verdicts: VerdictsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleJson>,
}

/// Renders the component tuples of a lift for output.
pub fn component_strings(lifted: &LiftedMorphism) -> Vec<Vec<String>> {
    lifted
        .components()
        .iter()
        .map(|tuple| tuple.iter().map(ToString::to_string).collect())
        .collect()
}

/// Assembles the census record (strata and exceptional tables in the
/// report's deterministic order; timing deliberately excluded).
pub fn census_json(report: &CensusReport) -> CensusJson {
    let strata = report
        .strata
        .iter()
        .filter_map(|(label, &count)| match label {
            StratumLabel::Interior { d, m } => Some(StratumCountJson {
                d: *d,
                m: m.clone(),
                count,
            }),
            _ => None,
        })
        .collect();
    let exceptional = report
        .exceptional
        .iter()
        .filter_map(|(label, &count)| match label {
            StratumLabel::Exceptional { i, e } => Some(ExceptionalCountJson {
                i: *i,
                e: *e,
                count,
            }),
            _ => None,
        })
        .collect();
    CensusJson {
        params: ParamsJson {
            field: format!("F{}", report.params.q),
            n: report.params.n,
            d: report.params.d,
            points: report.params.points.iter().map(ToString::to_string).collect(),
            max_exceptional_degree: report.params.max_exceptional_degree,
            budget: report.params.budget,
            shards: report.params.shards,
        },
        total: report.total,
        strata,
        exceptional,
        verdicts: VerdictsJson {
            disjoint: report.verdicts.disjoint,
            exhaustive: report.verdicts.exhaustive,
            lift_unique: report.verdicts.lift_unique,
            round_trip: report.verdicts.round_trip,
        },
        counterexample: report.counterexample.as_ref().map(|c| CounterexampleJson {
            index: c.index,
            morphism: c.morphism.clone(),
            detail: c.detail.clone(),
        }),
    }
}
