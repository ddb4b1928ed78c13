//! Validated sporadic-group data: orders, character degrees, Schur
//! multipliers, cover witnesses and minimal faithful degrees, plus the
//! elimination thresholds and exceptional quotient pairs.
//!
//! Parsing a concrete file format is left to the caller; this module takes
//! already-decoded values and enforces every integrity rule.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::arith::{divides, is_prime_u64, BigNat, FactoredNat};
use crate::codegrees::{codegree_set_simple, CodegreeError, CodegreeSet, DegreeMultiset};
use crate::groups::{is_valid_simple, order_of, SimpleGroupId, Sporadic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatasetError {
    #[error("unknown sporadic group `{0}`")]
    UnknownGroup(String),
    #[error("{0}: record appears more than once")]
    DuplicateRecord(String),
    #[error("dataset is missing records for: {}", .0.join(", "))]
    MissingRecords(Vec<String>),
    #[error("{group}: order {found} differs from the known order {expected}")]
    OrderMismatch {
        group: String,
        found: String,
        expected: String,
    },
    #[error("{group}: sum of squared degrees is {sum}, but the order is {order}")]
    SumOfSquares {
        group: String,
        sum: BigNat,
        order: BigNat,
    },
    #[error("{group}: expected exactly one trivial character, found {count}")]
    TrivialCharacterCount { group: String, count: usize },
    #[error("{group}: bad degree data: {source}")]
    Degrees {
        group: String,
        #[source]
        source: CodegreeError,
    },
    #[error("{group}: cover divisor {divisor} does not divide the Schur multiplier {multiplier}")]
    WitnessDivisor {
        group: String,
        divisor: u64,
        multiplier: String,
    },
    #[error("{group}: witness degree {degree} does not divide |{divisor}.{group}|")]
    WitnessDegree {
        group: String,
        divisor: u64,
        degree: BigNat,
    },
    #[error("{group}: cannot read reference codegree `{text}` for divisor {divisor}")]
    BadReference {
        group: String,
        divisor: u64,
        text: String,
    },
    #[error("{group}: bad minimal faithful degree for p = {p}: {reason}")]
    MinFaithful { group: String, p: u64, reason: String },
    #[error("thresholds must be positive")]
    Threshold,
    #[error("exceptional pair ({group}, {candidate}): {reason}")]
    ExceptionalPair {
        group: String,
        candidate: String,
        reason: String,
    },
}

/// A faithful irreducible degree of the cover `divisor.H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverWitness {
    pub divisor: u64,
    pub degree: BigNat,
    /// A printed form of the expected codegree, kept for comparison.
    pub reference_codegree: Option<ProductExpr>,
}

/// A product of powers such as `2^17*3^7*5^2*7*11`. Bases need not be prime,
/// which lets malformed printed factorizations be carried and flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductExpr {
    pub text: String,
    pub terms: Vec<(BigNat, u32)>,
}

impl ProductExpr {
    /// Accepts `*` or `·` as separators and `^` for exponents.
    pub fn parse(text: &str) -> Option<ProductExpr> {
        let mut terms = Vec::new();
        let normalized = text.replace('·', "*");
        for part in normalized.split('*') {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<u32>().ok()?),
                None => (part, 1),
            };
            let base: BigNat = base.parse().ok()?;
            if base.is_zero() || exp == 0 {
                return None;
            }
            terms.push((base, exp));
        }
        Some(ProductExpr {
            text: text.into(),
            terms,
        })
    }

    pub fn value(&self) -> BigNat {
        self.terms.iter().map(|(b, e)| b.pow(*e)).product()
    }

    /// Bases that are not prime, which no prime factorization may contain.
    pub fn composite_bases(&self) -> Vec<BigNat> {
        self.terms
            .iter()
            .filter(|(b, _)| !b.to_u64().is_some_and(is_prime_u64))
            .map(|(b, _)| b.clone())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SporadicRecord {
    pub group: Sporadic,
    pub order: FactoredNat,
    pub degrees: DegreeMultiset,
    pub schur_multiplier: FactoredNat,
    pub cover_witnesses: Vec<CoverWitness>,
    /// Minimal faithful degree in characteristic `p`.
    pub min_faithful_degree: BTreeMap<u64, u64>,
    order_value: BigNat,
    codegrees: CodegreeSet,
}

impl SporadicRecord {
    /// Validates the record. `order` must match the built-in order table and
    /// the squared degrees must sum to it.
    pub fn new(
        group: Sporadic,
        order: FactoredNat,
        degrees: DegreeMultiset,
        schur_multiplier: FactoredNat,
        cover_witnesses: Vec<CoverWitness>,
        min_faithful_degree: BTreeMap<u64, u64>,
    ) -> Result<Self, DatasetError> {
        let name = group.name().to_string();
        let expected = group.order();
        if order != expected {
            return Err(DatasetError::OrderMismatch {
                group: name,
                found: order.to_string(),
                expected: expected.to_string(),
            });
        }
        let order_value = order.to_bignat();

        let trivial = degrees.linear_count();
        if trivial != 1 {
            return Err(DatasetError::TrivialCharacterCount { group: name, count: trivial });
        }
        let sum = degrees.sum_of_squares();
        if sum != order_value {
            return Err(DatasetError::SumOfSquares {
                group: name,
                sum,
                order: order_value,
            });
        }
        let codegrees = codegree_set_simple(&order_value, &degrees).map_err(|source| {
            DatasetError::Degrees {
                group: name.clone(),
                source,
            }
        })?;

        let multiplier = schur_multiplier.to_bignat();
        for w in &cover_witnesses {
            let c = BigNat::from(w.divisor);
            if w.divisor < 2 || !divides(&c, &multiplier).expect("divisor is positive") {
                return Err(DatasetError::WitnessDivisor {
                    group: name,
                    divisor: w.divisor,
                    multiplier: schur_multiplier.to_string(),
                });
            }
            let cover = &order_value * w.divisor;
            if w.degree.is_zero() || !divides(&w.degree, &cover).expect("nonzero") {
                return Err(DatasetError::WitnessDegree {
                    group: name,
                    divisor: w.divisor,
                    degree: w.degree.clone(),
                });
            }
        }

        for (&p, &d) in &min_faithful_degree {
            let reason = if !is_prime_u64(p) {
                Some("not a prime")
            } else if order.exponent(p) == 0 {
                Some("p does not divide the order")
            } else if d == 0 {
                Some("degree must be positive")
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(DatasetError::MinFaithful {
                    group: name,
                    p,
                    reason: reason.into(),
                });
            }
        }

        Ok(SporadicRecord {
            group,
            order,
            degrees,
            schur_multiplier,
            cover_witnesses,
            min_faithful_degree,
            order_value,
            codegrees,
        })
    }

    pub fn name(&self) -> &'static str {
        self.group.name()
    }

    pub fn order_value(&self) -> &BigNat {
        &self.order_value
    }

    pub fn codegrees(&self) -> &CodegreeSet {
        &self.codegrees
    }

    /// Prime divisors of the Schur multiplier: the possible orders of a
    /// central subgroup of prime order in a cover.
    pub fn cover_primes(&self) -> Vec<u64> {
        self.schur_multiplier.primes().collect()
    }

    pub fn witness_for(&self, divisor: u64) -> Option<&CoverWitness> {
        self.cover_witnesses.iter().find(|w| w.divisor == divisor)
    }
}

/// Elimination thresholds: a simple quotient `K` is ruled out when the
/// number of codegrees of `H` dividing `|K|` is at most the threshold, since
/// `|cod(K)|` is known to exceed it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    pub generic_min_codegrees: u32,
    pub exceptional_min_codegrees: u32,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            generic_min_codegrees: 3,
            exceptional_min_codegrees: 20,
        }
    }
}

/// A (sporadic group, simple quotient) pair whose dividing count exceeds the
/// generic threshold and needs a stronger lower bound on `|cod(K)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalPair {
    pub group: Sporadic,
    pub candidate: SimpleGroupId,
    /// Overrides the exceptional threshold for this pair.
    pub min_codegrees: Option<u32>,
    /// Character degrees of the candidate, when supplied, so the bound on
    /// `|cod(K)|` can be checked directly.
    pub candidate_degrees: Option<DegreeMultiset>,
    pub note: Option<String>,
}

impl ExceptionalPair {
    pub fn threshold(&self, thresholds: &Thresholds) -> u32 {
        self.min_codegrees.unwrap_or(thresholds.exceptional_min_codegrees)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    records: BTreeMap<Sporadic, SporadicRecord>,
    pub thresholds: Thresholds,
    pub exceptional_pairs: Vec<ExceptionalPair>,
}

impl Dataset {
    /// Requires one record for each of the 26 groups.
    pub fn new(
        records: Vec<SporadicRecord>,
        thresholds: Thresholds,
        exceptional_pairs: Vec<ExceptionalPair>,
    ) -> Result<Self, DatasetError> {
        let mut map = BTreeMap::new();
        for r in records {
            let name = r.name();
            if map.insert(r.group, r).is_some() {
                return Err(DatasetError::DuplicateRecord(name.into()));
            }
        }
        let missing: Vec<String> = Sporadic::ALL
            .iter()
            .filter(|s| !map.contains_key(s))
            .map(|s| s.name().to_string())
            .collect();
        if !missing.is_empty() {
            return Err(DatasetError::MissingRecords(missing));
        }
        if thresholds.generic_min_codegrees == 0 || thresholds.exceptional_min_codegrees == 0 {
            return Err(DatasetError::Threshold);
        }
        for pair in &exceptional_pairs {
            validate_pair(pair, &thresholds)?;
        }
        Ok(Dataset {
            records: map,
            thresholds,
            exceptional_pairs,
        })
    }

    pub fn record(&self, group: Sporadic) -> &SporadicRecord {
        &self.records[&group]
    }

    pub fn records(&self) -> impl Iterator<Item = &SporadicRecord> + '_ {
        self.records.values()
    }

    pub fn exceptional_pair(&self, group: Sporadic, candidate: &SimpleGroupId) -> Option<&ExceptionalPair> {
        self.exceptional_pairs
            .iter()
            .find(|p| p.group == group && &p.candidate == candidate)
    }
}

fn validate_pair(pair: &ExceptionalPair, thresholds: &Thresholds) -> Result<(), DatasetError> {
    let fail = |reason: String| DatasetError::ExceptionalPair {
        group: pair.group.name().into(),
        candidate: pair.candidate.to_string(),
        reason,
    };
    if !is_valid_simple(&pair.candidate) || pair.candidate.as_sporadic().is_some() {
        return Err(fail("candidate must be a non-sporadic simple group".into()));
    }
    if pair.min_codegrees == Some(0) {
        return Err(fail("threshold must be positive".into()));
    }
    if let Some(degrees) = &pair.candidate_degrees {
        let order = order_of(&pair.candidate).expect("validated above");
        if degrees.linear_count() != 1 {
            return Err(fail("candidate degrees need exactly one trivial character".into()));
        }
        let sum = degrees.sum_of_squares();
        if sum != order {
            return Err(fail(format!("sum of squared degrees {sum} differs from the order {order}")));
        }
        let cod = codegree_set_simple(&order, degrees).map_err(|e| fail(e.to_string()))?;
        let t = pair.threshold(thresholds) as usize;
        if cod.len() <= t {
            return Err(fail(format!(
                "candidate has {} codegrees, not more than the threshold {t}",
                cod.len()
            )));
        }
    }
    Ok(())
}

/// Groups whose Schur multiplier a reference list records as trivial.
pub const REFERENCE_TRIVIAL_MULTIPLIER: [Sporadic; 14] = [
    Sporadic::M11,
    Sporadic::M23,
    Sporadic::M24,
    Sporadic::J1,
    Sporadic::J4,
    Sporadic::Co2,
    Sporadic::Co3,
    Sporadic::Fi22,
    Sporadic::Fi23,
    Sporadic::He,
    Sporadic::HN,
    Sporadic::Ly,
    Sporadic::Th,
    Sporadic::M,
];

/// A report-only disagreement between the dataset and a reference value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyNote {
    pub group: Sporadic,
    pub message: String,
}

/// Compares each group's Schur multiplier with the reference trivial list.
/// Mismatches are reported, never fatal.
pub fn check_reference_multipliers(ds: &Dataset) -> Vec<DiscrepancyNote> {
    let mut notes = Vec::new();
    for r in ds.records() {
        let listed = REFERENCE_TRIVIAL_MULTIPLIER.contains(&r.group);
        let trivial = r.schur_multiplier.is_one();
        if listed && !trivial {
            notes.push(DiscrepancyNote {
                group: r.group,
                message: format!(
                    "Schur multiplier of {} has order {}, but the reference list records it as trivial",
                    r.name(),
                    r.schur_multiplier.to_bignat()
                ),
            });
        } else if !listed && trivial {
            notes.push(DiscrepancyNote {
                group: r.group,
                message: format!(
                    "Schur multiplier of {} is trivial, but the reference list omits it",
                    r.name()
                ),
            });
        }
    }
    notes
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn m11_record() -> SporadicRecord {
        SporadicRecord::new(
            Sporadic::M11,
            Sporadic::M11.order(),
            DegreeMultiset::new([1u64, 10, 10, 10, 11, 16, 16, 44, 45, 55]).unwrap(),
            FactoredNat::one(),
            vec![],
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn m11_loads() {
        let r = m11_record();
        assert_eq!(r.order_value(), &BigNat::from(7920u64));
        assert_eq!(r.codegrees().len(), 7);
        assert!(r.cover_primes().is_empty());
    }

    #[test]
    fn sum_of_squares_mismatch() {
        let err = SporadicRecord::new(
            Sporadic::M11,
            Sporadic::M11.order(),
            DegreeMultiset::new([1u64, 2]).unwrap(),
            FactoredNat::one(),
            vec![],
            BTreeMap::new(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            DatasetError::SumOfSquares {
                group: "M11".into(),
                sum: BigNat::from(5u64),
                order: BigNat::from(7920u64),
            }
        );
    }

    #[test]
    fn wrong_order() {
        let err = SporadicRecord::new(
            Sporadic::M11,
            FactoredNat::from_pairs([(2, 4)]).unwrap(),
            DegreeMultiset::new([1u64, 10, 10, 10, 11, 16, 16, 44, 45, 55]).unwrap(),
            FactoredNat::one(),
            vec![],
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, DatasetError::OrderMismatch { .. }));
    }

    #[test]
    fn witness_checks() {
        let base = |w: CoverWitness, mult: FactoredNat| {
            SporadicRecord::new(
                Sporadic::M11,
                Sporadic::M11.order(),
                DegreeMultiset::new([1u64, 10, 10, 10, 11, 16, 16, 44, 45, 55]).unwrap(),
                mult,
                vec![w],
                BTreeMap::new(),
            )
        };
        let two = FactoredNat::from_pairs([(2, 1)]).unwrap();
        let w = |divisor, degree: u64| CoverWitness {
            divisor,
            degree: BigNat::from(degree),
            reference_codegree: None,
        };
        assert!(base(w(2, 10), two.clone()).is_ok());
        assert!(matches!(base(w(3, 10), two.clone()), Err(DatasetError::WitnessDivisor { .. })));
        assert!(matches!(base(w(2, 10), FactoredNat::one()), Err(DatasetError::WitnessDivisor { .. })));
        assert!(matches!(base(w(2, 7), two), Err(DatasetError::WitnessDegree { .. })));
    }

    #[test]
    fn min_faithful_checks() {
        let with = |p, d| {
            SporadicRecord::new(
                Sporadic::M11,
                Sporadic::M11.order(),
                DegreeMultiset::new([1u64, 10, 10, 10, 11, 16, 16, 44, 45, 55]).unwrap(),
                FactoredNat::one(),
                vec![],
                BTreeMap::from([(p, d)]),
            )
        };
        assert!(with(2, 5).is_ok());
        assert!(with(4, 5).is_err());
        assert!(with(7, 5).is_err());
        assert!(with(3, 0).is_err());
    }

    #[test]
    fn incomplete_dataset() {
        let err = Dataset::new(vec![m11_record()], Thresholds::default(), vec![]).unwrap_err();
        match err {
            DatasetError::MissingRecords(names) => {
                assert_eq!(names.len(), 25);
                assert!(names.contains(&"J4".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = Dataset::new(vec![m11_record(), m11_record()], Thresholds::default(), vec![]).unwrap_err();
        assert_eq!(err, DatasetError::DuplicateRecord("M11".into()));
    }

    #[test]
    fn product_expressions() {
        let e = ProductExpr::parse("2^17*3^7*5^2*6*11").unwrap();
        assert_eq!(e.composite_bases(), vec![BigNat::from(6u64)]);
        assert_eq!(
            e.value(),
            BigNat::from(2u64).pow(17) * BigNat::from(3u64).pow(7) * BigNat::from(25u64 * 6 * 11)
        );
        let ok = ProductExpr::parse("2^13·3^9·5^2·7·13").unwrap();
        assert!(ok.composite_bases().is_empty());
        assert!(ProductExpr::parse("2^").is_none());
        assert!(ProductExpr::parse("").is_none());
        assert!(ProductExpr::parse("0^2").is_none());
    }

    #[test]
    fn pair_validation() {
        let t = Thresholds::default();
        let pair = |cand: &str, degs: Option<Vec<u64>>, min| ExceptionalPair {
            group: Sporadic::Suz,
            candidate: cand.parse().unwrap(),
            min_codegrees: min,
            candidate_degrees: degs.map(|d| DegreeMultiset::new(d).unwrap()),
            note: None,
        };
        assert!(validate_pair(&pair("O8+(2)", None, None), &t).is_ok());
        assert!(validate_pair(&pair("Sz(4)", None, None), &t).is_err());
        assert!(validate_pair(&pair("M11", None, None), &t).is_err());
        // A5 has 4 codegrees: passes threshold 3, fails threshold 20
        let a5 = Some(vec![1, 3, 3, 4, 5]);
        assert!(validate_pair(&pair("L2(4)", a5.clone(), Some(3)), &t).is_ok());
        assert!(validate_pair(&pair("L2(4)", a5, None), &t).is_err());
        assert!(validate_pair(&pair("L2(4)", Some(vec![1, 3, 4, 5]), Some(3)), &t).is_err());
    }
}
