//! Codegree sets built from character degrees, with the divisibility and
//! containment filters the verification stages use.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{divides, BigNat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodegreeError {
    #[error("character degrees must be positive")]
    ZeroDegree,
    #[error("degree list lacks the trivial character (degree 1)")]
    MissingTrivial,
    #[error("degree {degree} does not divide the order {order}")]
    DegreeNotDividing { degree: BigNat, order: BigNat },
    #[error("the group order must be positive")]
    ZeroOrder,
}

/// Character degrees with multiplicity, sorted ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct DegreeMultiset {
    degrees: Vec<BigNat>,
}

impl DegreeMultiset {
    pub fn new<I>(degrees: I) -> Result<Self, CodegreeError>
    where
        I: IntoIterator,
        I::Item: Into<BigNat>,
    {
        let mut degrees: Vec<BigNat> = degrees.into_iter().map(Into::into).collect();
        if degrees.iter().any(BigNat::is_zero) {
            return Err(CodegreeError::ZeroDegree);
        }
        degrees.sort();
        if !degrees.first().is_some_and(BigNat::is_one) {
            return Err(CodegreeError::MissingTrivial);
        }
        Ok(DegreeMultiset { degrees })
    }

    pub fn as_slice(&self) -> &[BigNat] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Number of entries equal to 1.
    pub fn linear_count(&self) -> usize {
        self.degrees.iter().take_while(|d| d.is_one()).count()
    }

    /// `Σ d²`, which equals the group order for a complete list.
    pub fn sum_of_squares(&self) -> BigNat {
        self.degrees
            .iter()
            .fold(BigNat::zero(), |acc, d| acc + d * d)
    }

    /// The degrees with one occurrence of the trivial degree removed.
    pub fn nontrivial(&self) -> &[BigNat] {
        &self.degrees[1..]
    }

    /// Distinct degrees, ascending.
    pub fn distinct(&self) -> Vec<BigNat> {
        let mut out = self.degrees.clone();
        out.dedup();
        out
    }
}

impl fmt::Debug for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.degrees).finish()
    }
}

/// A codegree set: duplicate-free, ascending, always containing 1.
#[derive(Clone, PartialEq, Eq)]
pub struct CodegreeSet {
    values: BTreeSet<BigNat>,
}

impl CodegreeSet {
    /// The set `{1}`.
    pub fn trivial() -> Self {
        let mut values = BTreeSet::new();
        values.insert(BigNat::one());
        CodegreeSet { values }
    }

    /// Builds a set from arbitrary values, adding 1.
    pub fn from_values<I>(values: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigNat>,
    {
        let mut set = CodegreeSet::trivial();
        set.values.extend(values.into_iter().map(Into::into));
        set
    }

    pub fn contains(&self, c: &BigNat) -> bool {
        self.values.contains(c)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigNat> + '_ {
        self.values.iter()
    }

    pub fn max(&self) -> &BigNat {
        self.values.last().expect("contains 1")
    }

    /// Values of `self` missing from `other`.
    pub fn difference<'a>(&'a self, other: &'a CodegreeSet) -> impl Iterator<Item = &'a BigNat> + 'a {
        self.values.difference(&other.values)
    }
}

impl fmt::Debug for CodegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.values).finish()
    }
}

/// Codegree set of a nonabelian simple group of the given order: every
/// nontrivial irreducible character is faithful, so its codegree is
/// `order / degree`, and the trivial character contributes 1.
pub fn codegree_set_simple(order: &BigNat, degrees: &DegreeMultiset) -> Result<CodegreeSet, CodegreeError> {
    if order.is_zero() {
        return Err(CodegreeError::ZeroOrder);
    }
    let mut set = CodegreeSet::trivial();
    for d in degrees.nontrivial() {
        let c = order
            .exact_div(d)
            .ok_or_else(|| CodegreeError::DegreeNotDividing {
                degree: d.clone(),
                order: order.clone(),
            })?;
        set.values.insert(c);
    }
    Ok(set)
}

/// Number of codegrees dividing `m`, the codegree 1 included.
pub fn count_dividing(cod: &CodegreeSet, m: &BigNat) -> usize {
    dividing(cod, m).count()
}

/// The codegrees dividing `m`, ascending.
pub fn dividing<'a>(cod: &'a CodegreeSet, m: &'a BigNat) -> impl Iterator<Item = &'a BigNat> + 'a {
    cod.iter()
        .filter(move |c| divides(c, m).expect("codegrees are positive"))
}

pub fn is_subset(a: &CodegreeSet, b: &CodegreeSet) -> bool {
    a.values.is_subset(&b.values)
}

/// Codegree `cover_order / degree` of a faithful character of a cover.
pub fn witness_codegree(cover_order: &BigNat, faithful_degree: &BigNat) -> Result<BigNat, CodegreeError> {
    if faithful_degree.is_zero() {
        return Err(CodegreeError::ZeroDegree);
    }
    cover_order
        .exact_div(faithful_degree)
        .ok_or_else(|| CodegreeError::DegreeNotDividing {
            degree: faithful_degree.clone(),
            order: cover_order.clone(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn n(v: u64) -> BigNat {
        BigNat::from(v)
    }

    fn set(vals: &[u64]) -> CodegreeSet {
        CodegreeSet::from_values(vals.iter().copied())
    }

    const M11_DEGREES: [u64; 10] = [1, 10, 10, 10, 11, 16, 16, 44, 45, 55];
    const M12_DEGREES: [u64; 15] = [1, 11, 11, 16, 16, 45, 54, 55, 55, 55, 66, 99, 120, 144, 176];

    fn cod_of(order: u64, degs: &[u64]) -> CodegreeSet {
        codegree_set_simple(&n(order), &DegreeMultiset::new(degs.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn a5_codegrees() {
        assert_eq!(cod_of(60, &[1, 3, 3, 4, 5]), set(&[1, 12, 15, 20]));
    }

    #[test]
    fn m11_codegrees() {
        let cod = cod_of(7920, &M11_DEGREES);
        assert_eq!(cod, set(&[1, 144, 176, 180, 495, 720, 792]));
        assert_eq!(cod.len(), 7);
        assert_eq!(cod.max(), &n(792));
    }

    #[test]
    fn trivial_only() {
        assert_eq!(cod_of(7920, &[1]), CodegreeSet::trivial());
    }

    #[test]
    fn rejects_bad_degrees() {
        assert_eq!(DegreeMultiset::new([0u64, 1]), Err(CodegreeError::ZeroDegree));
        assert_eq!(DegreeMultiset::new([3u64, 4]), Err(CodegreeError::MissingTrivial));
        let bad = DegreeMultiset::new([1u64, 7]).unwrap();
        assert!(matches!(
            codegree_set_simple(&n(60), &bad),
            Err(CodegreeError::DegreeNotDividing { .. })
        ));
    }

    #[test]
    fn counting() {
        let cod = cod_of(60, &[1, 3, 3, 4, 5]);
        assert_eq!(count_dividing(&cod, &n(1)), 1);
        assert_eq!(count_dividing(&cod, &n(60)), 4);
        assert_eq!(count_dividing(&cod, &n(12)), 2);
        assert_eq!(dividing(&cod, &n(120)).cloned().collect::<Vec<_>>(), vec![n(1), n(12), n(15), n(20)]);
    }

    #[test]
    fn subsets() {
        let m11 = cod_of(7920, &M11_DEGREES);
        let m12 = cod_of(95040, &M12_DEGREES);
        assert!(!is_subset(&m11, &m12));
        assert!(!is_subset(&m12, &m11));
        assert!(is_subset(&m11, &m11));
        assert!(is_subset(&CodegreeSet::trivial(), &m12));
    }

    #[test]
    fn witnesses() {
        assert_eq!(witness_codegree(&n(2 * 7920), &n(2)).unwrap(), n(7920));
        assert!(witness_codegree(&n(15840), &n(7)).is_err());
        assert!(witness_codegree(&n(15840), &n(0)).is_err());
    }

    #[test]
    fn sum_of_squares_m11() {
        let d = DegreeMultiset::new(M11_DEGREES).unwrap();
        assert_eq!(d.sum_of_squares(), n(7920));
        assert_eq!(d.linear_count(), 1);
        assert_eq!(d.distinct().len(), 7);
    }

    proptest! {
        // Every divisor list of a number gives a set whose size is one more
        // than the number of distinct nontrivial degrees.
        #[test]
        fn size_and_divisibility(order in 2u64..200_000, picks in proptest::collection::vec(2u64..1000, 0..12)) {
            let degs: Vec<u64> = core::iter::once(1)
                .chain(picks.into_iter().filter(|d| order % d == 0))
                .collect();
            let ms = DegreeMultiset::new(degs.iter().copied()).unwrap();
            let cod = codegree_set_simple(&n(order), &ms).unwrap();
            let mut distinct: Vec<u64> = degs[1..].to_vec();
            distinct.sort();
            distinct.dedup();
            // d -> order / d is injective, and 1 is added once
            prop_assert_eq!(cod.len(), distinct.len() + 1);
            for c in cod.iter() {
                prop_assert!(divides(c, &n(order)).unwrap());
            }
            if !distinct.is_empty() {
                prop_assert!(cod.max() <= &n(order / 2));
            }
            prop_assert_eq!(count_dividing(&cod, &n(order)), cod.len());
        }
    }
}
