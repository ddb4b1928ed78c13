//! JSON dataset format and loader.
//!
//! The document has `version`, `groups`, `thresholds` and
//! `exceptional_pairs`. Big integers may be JSON numbers or decimal strings;
//! factorizations are arrays of `[prime, exponent]` pairs. Unknown fields are
//! rejected.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use codegree_core::arith::{ArithError, BigNat, FactoredNat};
use codegree_core::codegrees::{CodegreeError, DegreeMultiset};
use codegree_core::dataset::{
    CoverWitness, Dataset, DatasetError, ExceptionalPair, ProductExpr, SporadicRecord, Thresholds,
};
use codegree_core::groups::{SimpleGroupId, Sporadic};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

/// The dataset shipped with the binary.
pub const EMBEDDED: &str = include_str!("../data/sporadic.json");

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read dataset: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed dataset: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported dataset version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("{group}: bad {field}: {source}")]
    Factorization {
        group: String,
        field: &'static str,
        #[source]
        source: ArithError,
    },
    #[error("{group}: bad degrees: {source}")]
    Degrees {
        group: String,
        #[source]
        source: CodegreeError,
    },
    #[error("{group}: min_faithful_degree key `{key}` is not a prime")]
    PrimeKey { group: String, key: String },
    #[error("exceptional pair ({group}, {candidate}): {reason}")]
    Pair {
        group: String,
        candidate: String,
        reason: String,
    },
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDataset {
    pub version: u32,
    pub groups: Vec<RawRecord>,
    pub thresholds: RawThresholds,
    pub exceptional_pairs: Vec<RawPair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRecord {
    pub name: String,
    pub order_factored: Vec<(u64, u32)>,
    pub degrees: Vec<BigNat>,
    pub schur_multiplier_factored: Vec<(u64, u32)>,
    pub cover_witnesses: Vec<RawWitness>,
    pub min_faithful_degree: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawWitness {
    pub divisor: u64,
    pub degree: BigNat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_codegree: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawThresholds {
    pub generic_min_codegrees: u32,
    pub exceptional_min_codegrees: u32,
}

/// Either `["Suz", "O8+(2)"]` or an object with optional extras.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawPair {
    Short(String, String),
    Full(RawPairObject),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPairObject {
    pub group: String,
    pub candidate: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_codegrees: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_degrees: Option<Vec<BigNat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RawPair {
    fn into_object(self) -> RawPairObject {
        match self {
            RawPair::Short(group, candidate) => RawPairObject {
                group,
                candidate,
                min_codegrees: None,
                candidate_degrees: None,
                note: None,
            },
            RawPair::Full(o) => o,
        }
    }
}

fn sporadic(name: &str) -> Result<Sporadic, LoadError> {
    Sporadic::from_name(name).ok_or_else(|| DatasetError::UnknownGroup(name.into()).into())
}

fn convert_record(raw: RawRecord) -> Result<SporadicRecord, LoadError> {
    let group = sporadic(&raw.name)?;
    let name = group.name().to_string();
    let factored = |field, pairs: Vec<(u64, u32)>| {
        FactoredNat::from_pairs(pairs).map_err(|source| LoadError::Factorization {
            group: name.clone(),
            field,
            source,
        })
    };
    let order = factored("order_factored", raw.order_factored)?;
    let schur = factored("schur_multiplier_factored", raw.schur_multiplier_factored)?;
    let degrees = DegreeMultiset::new(raw.degrees).map_err(|source| LoadError::Degrees {
        group: name.clone(),
        source,
    })?;
    let mut witnesses = Vec::with_capacity(raw.cover_witnesses.len());
    for w in raw.cover_witnesses {
        let reference_codegree = match w.reference_codegree {
            Some(text) => Some(ProductExpr::parse(&text).ok_or_else(|| DatasetError::BadReference {
                group: name.clone(),
                divisor: w.divisor,
                text,
            })?),
            None => None,
        };
        witnesses.push(CoverWitness {
            divisor: w.divisor,
            degree: w.degree,
            reference_codegree,
        });
    }
    let mut min_faithful = BTreeMap::new();
    for (key, degree) in raw.min_faithful_degree {
        let p: u64 = key.parse().map_err(|_| LoadError::PrimeKey {
            group: name.clone(),
            key: key.clone(),
        })?;
        min_faithful.insert(p, degree);
    }
    Ok(SporadicRecord::new(group, order, degrees, schur, witnesses, min_faithful)?)
}

fn convert_pair(raw: RawPair) -> Result<ExceptionalPair, LoadError> {
    let raw = raw.into_object();
    let fail = |reason: String| LoadError::Pair {
        group: raw.group.clone(),
        candidate: raw.candidate.clone(),
        reason,
    };
    let group = sporadic(&raw.group)?;
    let candidate: SimpleGroupId = raw.candidate.parse().map_err(|e| fail(format!("{e}")))?;
    let candidate_degrees = match raw.candidate_degrees.clone() {
        Some(d) => Some(DegreeMultiset::new(d).map_err(|e| fail(e.to_string()))?),
        None => None,
    };
    Ok(ExceptionalPair {
        group,
        candidate,
        min_codegrees: raw.min_codegrees,
        candidate_degrees,
        note: raw.note,
    })
}

impl RawDataset {
    pub fn into_dataset(self) -> Result<Dataset, LoadError> {
        if self.version != FORMAT_VERSION {
            return Err(LoadError::Version(self.version));
        }
        let records = self.groups.into_iter().map(convert_record).collect::<Result<Vec<_>, _>>()?;
        let pairs = self.exceptional_pairs.into_iter().map(convert_pair).collect::<Result<Vec<_>, _>>()?;
        let thresholds = Thresholds {
            generic_min_codegrees: self.thresholds.generic_min_codegrees,
            exceptional_min_codegrees: self.thresholds.exceptional_min_codegrees,
        };
        Ok(Dataset::new(records, thresholds, pairs)?)
    }
}

pub fn parse_raw(text: &str) -> Result<RawDataset, LoadError> {
    Ok(serde_json::from_str(text)?)
}

pub fn load_str(text: &str) -> Result<Dataset, LoadError> {
    parse_raw(text)?.into_dataset()
}

pub fn load_dataset<R: Read>(mut source: R) -> Result<Dataset, LoadError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    load_str(&text)
}

pub fn load_path(path: &Path) -> Result<Dataset, LoadError> {
    load_dataset(std::fs::File::open(path)?)
}

pub fn embedded() -> Dataset {
    load_str(EMBEDDED).expect("embedded dataset is valid")
}
