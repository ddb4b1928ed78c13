//! Summary tables derived from verification output: the possible simple
//! quotients of a group grouped by family and rank, and the GL(n, p)
//! embedding ranges with the minimal faithful degrees that rule them out.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{prime_powers_upto, PrimePower};
use crate::groups::{
    is_low_rank_duplicate, is_valid_simple, ClassicalFamily, ExceptionalFamily, Family, SimpleGroupId, Sporadic,
};

/// Field sizes present in one (family, rank) row.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum Table1Entry {
    /// Alternating degrees `min..=max`, all present.
    Range { min: u32, max: u32 },
    /// Every valid `q` up to `max` except those listed.
    MaxQ { max: PrimePower, excluded: Vec<PrimePower> },
    /// An explicit list, for families whose characteristic is fixed.
    QList { values: Vec<PrimePower> },
    /// A single group without parameters.
    Present,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Table1Row {
    pub family: Family,
    /// Rank for classical families; absent for the others.
    pub n: Option<u32>,
    pub entry: Table1Entry,
}

impl fmt::Display for Table1Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, qs: &[PrimePower]| -> fmt::Result {
            for (i, q) in qs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{q}")?;
            }
            Ok(())
        };
        match self {
            Table1Entry::Range { min, max } => write!(f, "{min}-{max}"),
            Table1Entry::MaxQ { max, excluded } => {
                write!(f, "{max}")?;
                if !excluded.is_empty() {
                    f.write_str(", excl. ")?;
                    join(f, excluded)?;
                }
                Ok(())
            }
            Table1Entry::QList { values } => {
                f.write_str("q=")?;
                join(f, values)
            }
            Table1Entry::Present => f.write_str("n/a"),
        }
    }
}

fn valid_at(family: Family, n: Option<u32>, q: &PrimePower) -> bool {
    let id = match family_kind(family) {
        Kind::Classical(c) => SimpleGroupId::Classical {
            family: c,
            rank: n.expect("classical rows carry a rank"),
            q: q.clone(),
        },
        Kind::Exceptional(e) => SimpleGroupId::Exceptional { family: e, q: q.clone() },
        Kind::Other => return false,
    };
    is_valid_simple(&id)
}

enum Kind {
    Classical(ClassicalFamily),
    Exceptional(ExceptionalFamily),
    Other,
}

fn family_kind(family: Family) -> Kind {
    if let Some(c) = ClassicalFamily::ALL.into_iter().find(|c| c.family() == family) {
        return Kind::Classical(c);
    }
    if let Some(e) = ExceptionalFamily::ALL.into_iter().find(|e| e.family() == family) {
        return Kind::Exceptional(e);
    }
    Kind::Other
}

/// Groups non-sporadic candidates into rows. Classical ranks below the
/// canonical start (C_2, D_3, ²D_3) duplicate other rows and are skipped.
pub fn table1_rows<'a, I>(candidates: I) -> Vec<Table1Row>
where
    I: IntoIterator<Item = &'a SimpleGroupId>,
{
    let mut alternating: Vec<u32> = Vec::new();
    let mut by_row: BTreeMap<(Family, Option<u32>), Vec<PrimePower>> = BTreeMap::new();
    let mut tits = false;
    for c in candidates {
        match c {
            SimpleGroupId::Alternating(n) => alternating.push(*n),
            SimpleGroupId::Tits => tits = true,
            SimpleGroupId::Sporadic(_) => {}
            id if is_low_rank_duplicate(id) => {}
            SimpleGroupId::Classical { family, rank, q } => {
                by_row.entry((family.family(), Some(*rank))).or_default().push(q.clone());
            }
            SimpleGroupId::Exceptional { family, q } => {
                by_row.entry((family.family(), None)).or_default().push(q.clone());
            }
        }
    }

    let mut rows = Vec::new();
    if let (Some(&min), Some(&max)) = (alternating.iter().min(), alternating.iter().max()) {
        debug_assert_eq!(alternating.len() as u32, max - min + 1, "alternating degrees form a range");
        rows.push(Table1Row {
            family: Family::Alternating,
            n: None,
            entry: Table1Entry::Range { min, max },
        });
    }
    for ((family, n), mut qs) in by_row {
        qs.sort();
        qs.dedup();
        let forced = matches!(family_kind(family), Kind::Exceptional(e) if e.forced_prime().is_some());
        let entry = if forced {
            Table1Entry::QList { values: qs }
        } else {
            let max = qs.last().expect("rows are nonempty").clone();
            let limit = max.value().expect("field sizes in a row fit in 64 bits");
            let excluded = prime_powers_upto(limit)
                .expect("limit is at least 2")
                .into_iter()
                .filter(|q| valid_at(family, n, q) && qs.binary_search(q).is_err())
                .collect();
            Table1Entry::MaxQ { max, excluded }
        };
        rows.push(Table1Row { family, n, entry });
    }
    if tits {
        rows.push(Table1Row {
            family: Family::Tits,
            n: None,
            entry: Table1Entry::Present,
        });
    }
    rows
}

/// One group and prime whose GL(n, p) embedding survives the order test for
/// a range of `n`, with the minimal faithful degree that rules it out.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Table2Row {
    pub group: Sporadic,
    pub p: u64,
    pub n_min: u32,
    pub n_max: u32,
    pub min_faithful: Option<u64>,
}

impl fmt::Display for Table2Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ", self.group, self.p)?;
        if self.n_min == self.n_max {
            write!(f, "{}", self.n_min)?;
        } else {
            write!(f, "{}-{}", self.n_min, self.n_max)?;
        }
        match self.min_faithful {
            Some(d) => write!(f, " {d}"),
            None => f.write_str(" ?"),
        }
    }
}
