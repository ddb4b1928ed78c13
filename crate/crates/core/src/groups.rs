//! Finite simple group identifiers, validity rules, and exact order formulas.
//!
//! Lie-type ranks follow the root-system convention: `Linear` rank `n` is
//! `L_{n+1}(q)`, `OddOrthogonal` rank `n` is `O_{2n+1}(q)`, `Symplectic` rank
//! `n` is `S_{2n}(q)`, the plus/minus orthogonal families of rank `n` are
//! `O^±_{2n}(q)` and `Unitary` rank `n` is `U_{n+1}(q)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{ArithError, BigNat, FactoredNat, PrimePower};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("cannot parse group `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0} is not simple")]
    NotSimple(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Family tag. The declaration order is the report sort order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Family {
    Alternating,
    Linear,
    OddOrthogonal,
    Symplectic,
    PlusOrthogonal,
    Unitary,
    MinusOrthogonal,
    G2,
    F4,
    E6,
    E7,
    E8,
    TwistedE6,
    TrialityD4,
    Suzuki,
    Ree,
    TwistedF4,
    Tits,
    Sporadic,
}

impl Family {
    /// Label in ATLAS notation, with `n` standing for the rank.
    pub fn label(self) -> &'static str {
        match self {
            Family::Alternating => "A_n",
            Family::Linear => "L_{n+1}(q)",
            Family::OddOrthogonal => "O_{2n+1}(q)",
            Family::Symplectic => "S_{2n}(q)",
            Family::PlusOrthogonal => "O+_{2n}(q)",
            Family::Unitary => "U_{n+1}(q)",
            Family::MinusOrthogonal => "O-_{2n}(q)",
            Family::G2 => "G2(q)",
            Family::F4 => "F4(q)",
            Family::E6 => "E6(q)",
            Family::E7 => "E7(q)",
            Family::E8 => "E8(q)",
            Family::TwistedE6 => "2E6(q)",
            Family::TrialityD4 => "3D4(q)",
            Family::Suzuki => "Sz(q)",
            Family::Ree => "2G2(q)",
            Family::TwistedF4 => "2F4(q)",
            Family::Tits => "2F4(2)'",
            Family::Sporadic => "sporadic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassicalFamily {
    Linear,
    OddOrthogonal,
    Symplectic,
    PlusOrthogonal,
    Unitary,
    MinusOrthogonal,
}

impl ClassicalFamily {
    pub const ALL: [ClassicalFamily; 6] = [
        ClassicalFamily::Linear,
        ClassicalFamily::OddOrthogonal,
        ClassicalFamily::Symplectic,
        ClassicalFamily::PlusOrthogonal,
        ClassicalFamily::Unitary,
        ClassicalFamily::MinusOrthogonal,
    ];

    pub fn family(self) -> Family {
        match self {
            ClassicalFamily::Linear => Family::Linear,
            ClassicalFamily::OddOrthogonal => Family::OddOrthogonal,
            ClassicalFamily::Symplectic => Family::Symplectic,
            ClassicalFamily::PlusOrthogonal => Family::PlusOrthogonal,
            ClassicalFamily::Unitary => Family::Unitary,
            ClassicalFamily::MinusOrthogonal => Family::MinusOrthogonal,
        }
    }

    /// Smallest rank at which the family yields simple groups.
    pub fn min_rank(self) -> u32 {
        match self {
            ClassicalFamily::Linear => 1,
            ClassicalFamily::OddOrthogonal
            | ClassicalFamily::Symplectic
            | ClassicalFamily::Unitary => 2,
            ClassicalFamily::PlusOrthogonal | ClassicalFamily::MinusOrthogonal => 3,
        }
    }

    /// Smallest rank not isomorphic to a member of another family
    /// (C_2 = B_2, D_3 = A_3, ²D_3 = ²A_3).
    pub fn canonical_min_rank(self) -> u32 {
        match self {
            ClassicalFamily::Symplectic => 3,
            ClassicalFamily::PlusOrthogonal | ClassicalFamily::MinusOrthogonal => 4,
            other => other.min_rank(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExceptionalFamily {
    G2,
    F4,
    E6,
    E7,
    E8,
    TwistedE6,
    TrialityD4,
    Suzuki,
    Ree,
    TwistedF4,
}

impl ExceptionalFamily {
    pub const ALL: [ExceptionalFamily; 10] = [
        ExceptionalFamily::G2,
        ExceptionalFamily::F4,
        ExceptionalFamily::E6,
        ExceptionalFamily::E7,
        ExceptionalFamily::E8,
        ExceptionalFamily::TwistedE6,
        ExceptionalFamily::TrialityD4,
        ExceptionalFamily::Suzuki,
        ExceptionalFamily::Ree,
        ExceptionalFamily::TwistedF4,
    ];

    pub fn family(self) -> Family {
        match self {
            ExceptionalFamily::G2 => Family::G2,
            ExceptionalFamily::F4 => Family::F4,
            ExceptionalFamily::E6 => Family::E6,
            ExceptionalFamily::E7 => Family::E7,
            ExceptionalFamily::E8 => Family::E8,
            ExceptionalFamily::TwistedE6 => Family::TwistedE6,
            ExceptionalFamily::TrialityD4 => Family::TrialityD4,
            ExceptionalFamily::Suzuki => Family::Suzuki,
            ExceptionalFamily::Ree => Family::Ree,
            ExceptionalFamily::TwistedF4 => Family::TwistedF4,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            ExceptionalFamily::G2 => "G2",
            ExceptionalFamily::F4 => "F4",
            ExceptionalFamily::E6 => "E6",
            ExceptionalFamily::E7 => "E7",
            ExceptionalFamily::E8 => "E8",
            ExceptionalFamily::TwistedE6 => "2E6",
            ExceptionalFamily::TrialityD4 => "3D4",
            ExceptionalFamily::Suzuki => "Sz",
            ExceptionalFamily::Ree => "2G2",
            ExceptionalFamily::TwistedF4 => "2F4",
        }
    }

    /// The field characteristic forced by the family, if any.
    pub fn forced_prime(self) -> Option<u64> {
        match self {
            ExceptionalFamily::Suzuki | ExceptionalFamily::TwistedF4 => Some(2),
            ExceptionalFamily::Ree => Some(3),
            _ => None,
        }
    }
}

/// The 26 sporadic simple groups, in ascending order of group order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sporadic {
    M11,
    M12,
    J1,
    M22,
    J2,
    M23,
    HS,
    J3,
    M24,
    McL,
    He,
    Ru,
    Suz,
    ON,
    Co3,
    Co2,
    Fi22,
    HN,
    Ly,
    Th,
    Fi23,
    Co1,
    J4,
    Fi24,
    B,
    M,
}

// (name, order factorization)
const SPORADIC_DATA: [(&str, &[(u64, u32)]); 26] = [
    ("M11", &[(2, 4), (3, 2), (5, 1), (11, 1)]),
    ("M12", &[(2, 6), (3, 3), (5, 1), (11, 1)]),
    ("J1", &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)]),
    ("M22", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)]),
    ("J2", &[(2, 7), (3, 3), (5, 2), (7, 1)]),
    ("M23", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)]),
    ("HS", &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)]),
    ("J3", &[(2, 7), (3, 5), (5, 1), (17, 1), (19, 1)]),
    ("M24", &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)]),
    ("McL", &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)]),
    ("He", &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)]),
    ("Ru", &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)]),
    ("Suz", &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)]),
    ("ON", &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)]),
    ("Co3", &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)]),
    ("Co2", &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)]),
    ("Fi22", &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)]),
    ("HN", &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)]),
    ("Ly", &[(2, 8), (3, 7), (5, 6), (7, 1), (11, 1), (31, 1), (37, 1), (67, 1)]),
    ("Th", &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)]),
    ("Fi23", &[(2, 18), (3, 13), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (23, 1)]),
    ("Co1", &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)]),
    ("J4", &[(2, 21), (3, 3), (5, 1), (7, 1), (11, 3), (23, 1), (29, 1), (31, 1), (37, 1), (43, 1)]),
    ("Fi24'", &[(2, 21), (3, 16), (5, 2), (7, 3), (11, 1), (13, 1), (17, 1), (23, 1), (29, 1)]),
    ("B", &[(2, 41), (3, 13), (5, 6), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (31, 1), (47, 1)]),
    ("M", &[(2, 46), (3, 20), (5, 9), (7, 6), (11, 2), (13, 3), (17, 1), (19, 1), (23, 1), (29, 1), (31, 1), (41, 1), (47, 1), (59, 1), (71, 1)]),
];

impl Sporadic {
    pub const ALL: [Sporadic; 26] = [
        Sporadic::M11,
        Sporadic::M12,
        Sporadic::J1,
        Sporadic::M22,
        Sporadic::J2,
        Sporadic::M23,
        Sporadic::HS,
        Sporadic::J3,
        Sporadic::M24,
        Sporadic::McL,
        Sporadic::He,
        Sporadic::Ru,
        Sporadic::Suz,
        Sporadic::ON,
        Sporadic::Co3,
        Sporadic::Co2,
        Sporadic::Fi22,
        Sporadic::HN,
        Sporadic::Ly,
        Sporadic::Th,
        Sporadic::Fi23,
        Sporadic::Co1,
        Sporadic::J4,
        Sporadic::Fi24,
        Sporadic::B,
        Sporadic::M,
    ];

    /// ATLAS name.
    pub fn name(self) -> &'static str {
        SPORADIC_DATA[self as usize].0
    }

    /// Accepts ATLAS names plus the common spellings `O'N`, `F3+`, `Fi24`.
    pub fn from_name(name: &str) -> Option<Sporadic> {
        let canonical = match name {
            "O'N" => "ON",
            "F3+" | "Fi24" => "Fi24'",
            other => other,
        };
        Sporadic::ALL.into_iter().find(|s| s.name() == canonical)
    }

    /// Order as its prime factorization.
    pub fn order(self) -> FactoredNat {
        FactoredNat::from_pairs(SPORADIC_DATA[self as usize].1.iter().copied())
            .expect("sporadic order table holds prime factorizations")
    }
}

impl fmt::Display for Sporadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Identifier of a finite simple group (or of a parameter choice that
/// `is_valid_simple` may reject).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleGroupId {
    Alternating(u32),
    Classical {
        family: ClassicalFamily,
        rank: u32,
        q: PrimePower,
    },
    Exceptional {
        family: ExceptionalFamily,
        q: PrimePower,
    },
    Tits,
    Sporadic(Sporadic),
}

impl SimpleGroupId {
    pub fn classical(family: ClassicalFamily, rank: u32, q: u64) -> Result<Self, GroupError> {
        let q = PrimePower::from_value(q).ok_or(GroupError::NotPrimePower(q))?;
        Ok(SimpleGroupId::Classical { family, rank, q })
    }

    pub fn exceptional(family: ExceptionalFamily, q: u64) -> Result<Self, GroupError> {
        let q = PrimePower::from_value(q).ok_or(GroupError::NotPrimePower(q))?;
        Ok(SimpleGroupId::Exceptional { family, q })
    }

    pub fn family(&self) -> Family {
        match self {
            SimpleGroupId::Alternating(_) => Family::Alternating,
            SimpleGroupId::Classical { family, .. } => family.family(),
            SimpleGroupId::Exceptional { family, .. } => family.family(),
            SimpleGroupId::Tits => Family::Tits,
            SimpleGroupId::Sporadic(_) => Family::Sporadic,
        }
    }

    /// Rank for Lie families, degree for alternating groups.
    pub fn rank(&self) -> Option<u32> {
        match self {
            SimpleGroupId::Alternating(n) => Some(*n),
            SimpleGroupId::Classical { rank, .. } => Some(*rank),
            _ => None,
        }
    }

    pub fn field_size(&self) -> Option<&PrimePower> {
        match self {
            SimpleGroupId::Classical { q, .. } | SimpleGroupId::Exceptional { q, .. } => Some(q),
            _ => None,
        }
    }

    pub fn as_sporadic(&self) -> Option<Sporadic> {
        match self {
            SimpleGroupId::Sporadic(s) => Some(*s),
            _ => None,
        }
    }
}

impl From<Sporadic> for SimpleGroupId {
    fn from(s: Sporadic) -> Self {
        SimpleGroupId::Sporadic(s)
    }
}

impl fmt::Display for SimpleGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleGroupId::Alternating(n) => write!(f, "A{n}"),
            SimpleGroupId::Classical { family, rank, q } => {
                let q = q.q();
                match family {
                    ClassicalFamily::Linear => write!(f, "L{}({q})", rank + 1),
                    ClassicalFamily::OddOrthogonal => write!(f, "O{}({q})", 2 * rank + 1),
                    ClassicalFamily::Symplectic => write!(f, "S{}({q})", 2 * rank),
                    ClassicalFamily::PlusOrthogonal => write!(f, "O{}+({q})", 2 * rank),
                    ClassicalFamily::Unitary => write!(f, "U{}({q})", rank + 1),
                    ClassicalFamily::MinusOrthogonal => write!(f, "O{}-({q})", 2 * rank),
                }
            }
            SimpleGroupId::Exceptional { family, q } => write!(f, "{}({})", family.prefix(), q.q()),
            SimpleGroupId::Tits => f.write_str("2F4(2)'"),
            SimpleGroupId::Sporadic(s) => f.write_str(s.name()),
        }
    }
}

fn parse_error(input: &str, reason: impl Into<String>) -> GroupError {
    GroupError::Parse {
        input: input.into(),
        reason: reason.into(),
    }
}

fn parse_u32(input: &str, digits: &str, what: &str) -> Result<u32, GroupError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(input, format!("expected a {what}, found `{digits}`")));
    }
    digits
        .parse()
        .map_err(|_| parse_error(input, format!("{what} `{digits}` is too large")))
}

impl FromStr for SimpleGroupId {
    type Err = GroupError;

    /// Grammar: `A<n>`, `L<n>(<q>)`, `U<n>(<q>)`, `S<2n>(<q>)`, `O<2n+1>(<q>)`,
    /// `O<2n>+(<q>)`, `O<2n>-(<q>)`, `Sz(<q>)`/`2B2(<q>)`, `2G2(<q>)`,
    /// `2F4(<q>)`, `3D4(<q>)`, `2E6(<q>)`, `G2|F4|E6|E7|E8(<q>)`, `2F4(2)'`,
    /// and the sporadic names.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let input = s.trim();
        if let Some(sp) = Sporadic::from_name(input) {
            return Ok(SimpleGroupId::Sporadic(sp));
        }
        if input == "2F4(2)'" || input == "Tits" {
            return Ok(SimpleGroupId::Tits);
        }
        let Some(open) = input.find('(') else {
            if let Some(deg) = input.strip_prefix('A') {
                return Ok(SimpleGroupId::Alternating(parse_u32(input, deg, "degree")?));
            }
            return Err(parse_error(input, "unknown group name"));
        };
        let Some(inner) = input[open + 1..].strip_suffix(')') else {
            return Err(parse_error(input, "expected `(<q>)` at the end"));
        };
        let head = &input[..open];
        let q_val = parse_u32(input, inner, "field size")? as u64;
        let q = PrimePower::from_value(q_val)
            .ok_or_else(|| parse_error(input, format!("field size {q_val} is not a prime power")))?;

        for fam in ExceptionalFamily::ALL {
            if head == fam.prefix() {
                return Ok(SimpleGroupId::Exceptional { family: fam, q });
            }
        }
        if head == "2B2" {
            return Ok(SimpleGroupId::Exceptional {
                family: ExceptionalFamily::Suzuki,
                q,
            });
        }

        let (letter, rest) = head.split_at(head.chars().next().map_or(0, |c| c.len_utf8()));
        let classical = |family, rank| Ok(SimpleGroupId::Classical { family, rank, q: q.clone() });
        match letter {
            "L" | "U" => {
                let dim = parse_u32(input, rest, "dimension")?;
                if dim < 2 {
                    return Err(parse_error(input, "dimension must be at least 2"));
                }
                let fam = if letter == "L" {
                    ClassicalFamily::Linear
                } else {
                    ClassicalFamily::Unitary
                };
                classical(fam, dim - 1)
            }
            "S" => {
                let dim = parse_u32(input, rest, "dimension")?;
                if dim < 2 || dim % 2 == 1 {
                    return Err(parse_error(input, "symplectic dimension must be even"));
                }
                classical(ClassicalFamily::Symplectic, dim / 2)
            }
            "O" => {
                if let Some(d) = rest.strip_suffix('+') {
                    let dim = parse_u32(input, d, "dimension")?;
                    if dim < 2 || dim % 2 == 1 {
                        return Err(parse_error(input, "O+ dimension must be even"));
                    }
                    classical(ClassicalFamily::PlusOrthogonal, dim / 2)
                } else if let Some(d) = rest.strip_suffix('-') {
                    let dim = parse_u32(input, d, "dimension")?;
                    if dim < 2 || dim % 2 == 1 {
                        return Err(parse_error(input, "O- dimension must be even"));
                    }
                    classical(ClassicalFamily::MinusOrthogonal, dim / 2)
                } else {
                    let dim = parse_u32(input, rest, "dimension")?;
                    if dim % 2 == 0 {
                        return Err(parse_error(input, "even-dimensional orthogonal groups need a + or - sign"));
                    }
                    classical(ClassicalFamily::OddOrthogonal, dim / 2)
                }
            }
            _ => Err(parse_error(input, "unknown family")),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for SimpleGroupId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for SimpleGroupId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Sporadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Sporadic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Sporadic::from_name(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown sporadic group `{s}`")))
    }
}

/// `q = p^k` with `p` fixed and `k` odd, `k >= 3`.
fn is_odd_power_at_least_cube(q: &PrimePower, p: u64) -> bool {
    q.p() == p && q.k() % 2 == 1 && q.k() >= 3
}

/// Whether the parameters name a finite simple group.
pub fn is_valid_simple(id: &SimpleGroupId) -> bool {
    match id {
        SimpleGroupId::Alternating(n) => *n >= 5,
        SimpleGroupId::Classical { family, rank, q } => {
            let n = *rank;
            let q2 = q.value() == Some(2);
            let q3 = q.value() == Some(3);
            if n < family.min_rank() {
                return false;
            }
            match family {
                // L2(2), L2(3) are solvable
                ClassicalFamily::Linear => !(n == 1 && (q2 || q3)),
                // O5(2) = S4(2) is S6
                ClassicalFamily::OddOrthogonal | ClassicalFamily::Symplectic => !(n == 2 && q2),
                // U3(2) is solvable
                ClassicalFamily::Unitary => !(n == 2 && q2),
                ClassicalFamily::PlusOrthogonal | ClassicalFamily::MinusOrthogonal => true,
            }
        }
        SimpleGroupId::Exceptional { family, q } => match family {
            ExceptionalFamily::G2 => q.value() != Some(2),
            ExceptionalFamily::Suzuki | ExceptionalFamily::TwistedF4 => {
                is_odd_power_at_least_cube(q, 2)
            }
            ExceptionalFamily::Ree => is_odd_power_at_least_cube(q, 3),
            _ => true,
        },
        SimpleGroupId::Tits | SimpleGroupId::Sporadic(_) => true,
    }
}

fn q_pow_minus_one(q: &BigNat, i: u32) -> BigNat {
    q.pow(i).checked_sub(&BigNat::one()).expect("q >= 2")
}

fn q_pow_plus_one(q: &BigNat, i: u32) -> BigNat {
    &q.pow(i) + &BigNat::one()
}

fn small_gcd(a: u64, b: &BigNat) -> BigNat {
    BigNat::from(a).gcd(b)
}

/// The order formula before dividing by its gcd term, and the gcd term.
/// `None` for ids without a parametric formula (Tits, sporadic, alternating).
fn lie_order_parts(id: &SimpleGroupId) -> Option<(BigNat, BigNat)> {
    let one = BigNat::one();
    match id {
        SimpleGroupId::Classical { family, rank, q } => {
            let n = *rank;
            let q = q.q();
            let parts = match family {
                ClassicalFamily::Linear => {
                    let prod: BigNat = (2..=n + 1).map(|i| q_pow_minus_one(q, i)).product();
                    let d = small_gcd(n as u64 + 1, &q.checked_sub(&one).unwrap());
                    (&q.pow(n * (n + 1) / 2) * &prod, d)
                }
                ClassicalFamily::OddOrthogonal | ClassicalFamily::Symplectic => {
                    let prod: BigNat = (1..=n).map(|i| q_pow_minus_one(q, 2 * i)).product();
                    let d = small_gcd(2, &q.checked_sub(&one).unwrap());
                    (&q.pow(n * n) * &prod, d)
                }
                ClassicalFamily::PlusOrthogonal => {
                    let prod: BigNat = (1..n).map(|i| q_pow_minus_one(q, 2 * i)).product();
                    let qn1 = q_pow_minus_one(q, n);
                    let d = small_gcd(4, &qn1);
                    (&(&q.pow(n * (n - 1)) * &qn1) * &prod, d)
                }
                ClassicalFamily::Unitary => {
                    let prod: BigNat = (2..=n + 1)
                        .map(|i| {
                            if i % 2 == 0 {
                                q_pow_minus_one(q, i)
                            } else {
                                q_pow_plus_one(q, i)
                            }
                        })
                        .product();
                    let d = small_gcd(n as u64 + 1, &(q + &one));
                    (&q.pow(n * (n + 1) / 2) * &prod, d)
                }
                ClassicalFamily::MinusOrthogonal => {
                    let prod: BigNat = (1..n).map(|i| q_pow_minus_one(q, 2 * i)).product();
                    let qn1 = q_pow_plus_one(q, n);
                    let d = small_gcd(4, &qn1);
                    (&(&q.pow(n * (n - 1)) * &qn1) * &prod, d)
                }
            };
            Some(parts)
        }
        SimpleGroupId::Exceptional { family, q } => {
            let q = q.q();
            let m = |i| q_pow_minus_one(q, i);
            let p = |i| q_pow_plus_one(q, i);
            let parts = match family {
                ExceptionalFamily::G2 => (q.pow(6) * m(6) * m(2), one),
                ExceptionalFamily::F4 => (q.pow(24) * m(12) * m(8) * m(6) * m(2), one),
                ExceptionalFamily::E6 => (
                    q.pow(36) * m(12) * m(9) * m(8) * m(6) * m(5) * m(2),
                    small_gcd(3, &q.checked_sub(&one).unwrap()),
                ),
                ExceptionalFamily::E7 => {
                    let prod: BigNat = [2, 6, 8, 10, 12, 14, 18].into_iter().map(m).product();
                    (q.pow(63) * prod, small_gcd(2, &q.checked_sub(&one).unwrap()))
                }
                ExceptionalFamily::E8 => {
                    let prod: BigNat = [2, 8, 12, 14, 18, 20, 24, 30].into_iter().map(m).product();
                    (q.pow(120) * prod, one)
                }
                ExceptionalFamily::TwistedE6 => (
                    q.pow(36) * m(12) * p(9) * m(8) * m(6) * p(5) * m(2),
                    small_gcd(3, &(q + &one)),
                ),
                ExceptionalFamily::TrialityD4 => {
                    let phi12 = &(&q.pow(8) + &q.pow(4)) + &one;
                    (q.pow(12) * phi12 * m(6) * m(2), one)
                }
                ExceptionalFamily::Suzuki => (q.pow(2) * p(2) * m(1), one),
                ExceptionalFamily::Ree => (q.pow(3) * p(3) * m(1), one),
                ExceptionalFamily::TwistedF4 => (q.pow(12) * p(6) * m(4) * p(3) * m(1), one),
            };
            Some(parts)
        }
        _ => None,
    }
}

/// Largest value the gcd term of a family can take at the given rank.
fn max_gcd(id: &SimpleGroupId) -> u64 {
    match id {
        SimpleGroupId::Classical { family, rank, .. } => match family {
            ClassicalFamily::Linear | ClassicalFamily::Unitary => *rank as u64 + 1,
            ClassicalFamily::OddOrthogonal | ClassicalFamily::Symplectic => 2,
            ClassicalFamily::PlusOrthogonal | ClassicalFamily::MinusOrthogonal => 4,
        },
        SimpleGroupId::Exceptional { family, .. } => match family {
            ExceptionalFamily::E6 | ExceptionalFamily::TwistedE6 => 3,
            ExceptionalFamily::E7 => 2,
            _ => 1,
        },
        _ => 1,
    }
}

/// A lower bound on the order of a Lie-type id that is strictly increasing in
/// `q` for fixed family and rank. Used for enumeration cutoffs.
pub fn order_lower_bound(id: &SimpleGroupId) -> Option<BigNat> {
    let (raw, _) = lie_order_parts(id)?;
    raw.div_rem(&BigNat::from(max_gcd(id))).ok().map(|(q, _)| q)
}

fn factorial_half(n: u32) -> BigNat {
    let f: BigNat = (2..=n as u64).map(BigNat::from).product();
    f.div_rem(&BigNat::from(2u64)).expect("nonzero").0
}

/// Order of `²F4(2)'`, half of `|²F4(2)|`.
pub fn tits_order() -> BigNat {
    let full = SimpleGroupId::Exceptional {
        family: ExceptionalFamily::TwistedF4,
        q: PrimePower::new(2, 1).expect("2 is prime"),
    };
    let (raw, _) = lie_order_parts(&full).expect("2F4 has a formula");
    raw.div_rem(&BigNat::from(2u64)).expect("nonzero").0
}

/// Order given by the family formula, without checking simplicity.
pub fn formula_order(id: &SimpleGroupId) -> BigNat {
    match id {
        SimpleGroupId::Alternating(n) => {
            if *n < 2 {
                BigNat::one()
            } else {
                factorial_half(*n)
            }
        }
        SimpleGroupId::Tits => tits_order(),
        SimpleGroupId::Sporadic(s) => s.order().to_bignat(),
        lie => {
            let (raw, d) = lie_order_parts(lie).expect("Lie-type id");
            raw.exact_div(&d).expect("gcd term divides the order formula")
        }
    }
}

/// Exact order of a finite simple group.
pub fn order_of(id: &SimpleGroupId) -> Result<BigNat, GroupError> {
    if !is_valid_simple(id) {
        return Err(GroupError::NotSimple(id.to_string()));
    }
    Ok(formula_order(id))
}

/// `|GL(n, p)| = ∏_{i=0}^{n-1} (p^n - p^i)`.
pub fn gl_order(n: u32, p: u64) -> BigNat {
    let p = BigNat::from(p);
    let pn = p.pow(n);
    (0..n)
        .map(|i| pn.checked_sub(&p.pow(i)).expect("p^n > p^i"))
        .product()
}

/// Canonical representative for ids that name the same abstract group as
/// another id the enumeration also emits.
pub fn duplicate_of(id: &SimpleGroupId) -> Option<SimpleGroupId> {
    let SimpleGroupId::Classical { family, rank, q } = id else {
        return None;
    };
    let q_val = q.value();
    let same_q = |family, rank| SimpleGroupId::Classical {
        family,
        rank,
        q: q.clone(),
    };
    let with_q = |family, rank, v: u64| SimpleGroupId::classical(family, rank, v).ok();
    match (family, rank, q_val) {
        (ClassicalFamily::Linear, 1, Some(4 | 5)) => Some(SimpleGroupId::Alternating(5)),
        (ClassicalFamily::Linear, 1, Some(9)) => Some(SimpleGroupId::Alternating(6)),
        (ClassicalFamily::Linear, 2, Some(2)) => with_q(ClassicalFamily::Linear, 1, 7),
        (ClassicalFamily::Linear, 3, Some(2)) => Some(SimpleGroupId::Alternating(8)),
        (ClassicalFamily::Unitary, 3, Some(2)) => with_q(ClassicalFamily::OddOrthogonal, 2, 3),
        (ClassicalFamily::Symplectic, 2, _) => Some(same_q(ClassicalFamily::OddOrthogonal, 2)),
        (ClassicalFamily::Symplectic, n, _) if q.p() == 2 => {
            Some(same_q(ClassicalFamily::OddOrthogonal, *n))
        }
        (ClassicalFamily::PlusOrthogonal, 3, _) => Some(same_q(ClassicalFamily::Linear, 3)),
        (ClassicalFamily::MinusOrthogonal, 3, _) => Some(same_q(ClassicalFamily::Unitary, 3)),
        _ => None,
    }
}

/// Whether an id lies outside the canonical rank ranges (C_2, D_3, ²D_3).
pub fn is_low_rank_duplicate(id: &SimpleGroupId) -> bool {
    matches!(id, SimpleGroupId::Classical { family, rank, .. } if *rank < family.canonical_min_rank())
}

/// Every non-sporadic simple group (alternating, Lie type, Tits) whose order
/// divides `bound`, sorted by family, rank and field size.
///
/// Each order is divisible by its field size `q = p^k`, so only primes
/// dividing the bound are tried, with `k` up to the prime's exponent.
pub fn enumerate_candidates(bound: &FactoredNat) -> Vec<SimpleGroupId> {
    let bound_value = bound.to_bignat();
    let divides_bound = |id: &SimpleGroupId| {
        crate::arith::divides(&formula_order(id), &bound_value).expect("orders are nonzero")
    };
    let mut out = Vec::new();

    let mut n = 5;
    loop {
        let order = factorial_half(n);
        if order > bound_value {
            break;
        }
        if crate::arith::divides(&order, &bound_value).expect("nonzero") {
            out.push(SimpleGroupId::Alternating(n));
        }
        n += 1;
    }

    let field_sizes = |cap_k: &dyn Fn(u64) -> u32| -> Vec<Vec<PrimePower>> {
        bound
            .iter()
            .map(|(p, e)| {
                (1..=e.min(cap_k(p)))
                    .map(|k| PrimePower::new(p, k).expect("bound primes are prime"))
                    .collect()
            })
            .collect()
    };
    let per_prime = field_sizes(&|_| u32::MAX);

    for family in ClassicalFamily::ALL {
        let mut rank = family.min_rank();
        loop {
            let mut any_small = false;
            for powers in &per_prime {
                for q in powers {
                    let id = SimpleGroupId::Classical {
                        family,
                        rank,
                        q: q.clone(),
                    };
                    if order_lower_bound(&id).expect("Lie type") > bound_value {
                        break;
                    }
                    any_small = true;
                    if is_valid_simple(&id) && divides_bound(&id) {
                        out.push(id);
                    }
                }
            }
            if !any_small {
                break;
            }
            rank += 1;
        }
    }

    for family in ExceptionalFamily::ALL {
        for powers in &per_prime {
            for q in powers {
                if family.forced_prime().is_some_and(|p| p != q.p()) {
                    break;
                }
                let id = SimpleGroupId::Exceptional {
                    family,
                    q: q.clone(),
                };
                if order_lower_bound(&id).expect("Lie type") > bound_value {
                    break;
                }
                if is_valid_simple(&id) && divides_bound(&id) {
                    out.push(id);
                }
            }
        }
    }

    if divides_bound(&SimpleGroupId::Tits) {
        out.push(SimpleGroupId::Tits);
    }

    out.sort();
    out
}

/// [`enumerate_candidates`] for a bound given as a plain number, factored by
/// trial division up to `10^6`.
pub fn enumerate_candidates_for(bound: &BigNat) -> Result<Vec<SimpleGroupId>, ArithError> {
    match crate::arith::factor_by_trial_division(bound, 1_000_000)? {
        crate::arith::Factorization::Complete(f) => Ok(enumerate_candidates(&f)),
        crate::arith::Factorization::Partial { cofactor, .. } => {
            Err(ArithError::InvalidDecimal(format!("unfactored cofactor {cofactor}")))
        }
    }
}
