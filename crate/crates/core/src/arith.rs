//! Exact arithmetic: arbitrary-precision naturals, factored naturals, prime
//! powers and divisibility.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::iter::Product;
use core::ops::{Add, Mul};
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    ZeroDivisor,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent of {0} must be at least 1")]
    ZeroExponent(u64),
    #[error("prime {0} listed twice")]
    DuplicatePrime(u64),
    #[error("prime basis is empty")]
    EmptyBasis,
    #[error("cannot factor zero")]
    ZeroInput,
    #[error("no prime power is at most {0}")]
    BelowSmallestPrimePower(u64),
    #[error("invalid decimal natural number {0:?}")]
    InvalidDecimal(String),
}

/// Arbitrary-precision natural number.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigNat(BigUint);

impl BigNat {
    pub fn zero() -> Self {
        BigNat(BigUint::zero())
    }

    pub fn one() -> Self {
        BigNat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn pow(&self, exp: u32) -> Self {
        BigNat(self.0.pow(exp))
    }

    /// `self - rhs`, or `None` when the result would be negative.
    pub fn checked_sub(&self, rhs: &BigNat) -> Option<BigNat> {
        (self.0 >= rhs.0).then(|| BigNat(&self.0 - &rhs.0))
    }

    pub fn div_rem(&self, divisor: &BigNat) -> Result<(BigNat, BigNat), ArithError> {
        if divisor.is_zero() {
            return Err(ArithError::ZeroDivisor);
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        Ok((BigNat(q), BigNat(r)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &BigNat) -> Option<BigNat> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn gcd(&self, other: &BigNat) -> BigNat {
        BigNat(self.0.gcd(&other.0))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    /// Number of decimal digits (1 for zero).
    pub fn decimal_digits(&self) -> usize {
        self.0.to_str_radix(10).len()
    }
}

impl From<u64> for BigNat {
    fn from(v: u64) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<u32> for BigNat {
    fn from(v: u32) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<u128> for BigNat {
    fn from(v: u128) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<BigUint> for BigNat {
    fn from(v: BigUint) -> Self {
        BigNat(v)
    }
}

impl FromStr for BigNat {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ArithError::InvalidDecimal(s.into()));
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(BigNat)
            .ok_or_else(|| ArithError::InvalidDecimal(s.into()))
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Add for BigNat {
    type Output = BigNat;
    fn add(self, rhs: BigNat) -> BigNat {
        BigNat(self.0 + rhs.0)
    }
}

impl Add<&BigNat> for &BigNat {
    type Output = BigNat;
    fn add(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 + &rhs.0)
    }
}

impl Mul for BigNat {
    type Output = BigNat;
    fn mul(self, rhs: BigNat) -> BigNat {
        BigNat(self.0 * rhs.0)
    }
}

impl Mul<&BigNat> for &BigNat {
    type Output = BigNat;
    fn mul(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 * &rhs.0)
    }
}

impl Mul<u64> for &BigNat {
    type Output = BigNat;
    fn mul(self, rhs: u64) -> BigNat {
        BigNat(&self.0 * rhs)
    }
}

impl Product for BigNat {
    fn product<I: Iterator<Item = BigNat>>(iter: I) -> BigNat {
        iter.fold(BigNat::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a BigNat> for BigNat {
    fn product<I: Iterator<Item = &'a BigNat>>(iter: I) -> BigNat {
        iter.fold(BigNat::one(), |acc, x| &acc * x)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for BigNat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for BigNat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = BigNat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a natural number or a decimal string")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<BigNat, E> {
                Ok(BigNat::from(v))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<BigNat, E> {
                u64::try_from(v)
                    .map(BigNat::from)
                    .map_err(|_| E::custom("negative number"))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<BigNat, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(Visitor)
    }
}

/// `a | b`. Rejects `a = 0`.
pub fn divides(a: &BigNat, b: &BigNat) -> Result<bool, ArithError> {
    let (_, r) = b.div_rem(a)?;
    Ok(r.is_zero())
}

// Strong-pseudoprime bases: deterministic for every n < 3.3 * 10^24, which
// covers all u64 inputs.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality test. Exact for every input below 3.3 * 10^24; above that it is
/// a strong-probable-prime test to the twelve smallest prime bases.
pub fn is_prime(n: &BigNat) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n = n.as_biguint();
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sieve of Eratosthenes.
pub fn primes_upto(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// A prime power `q = p^k` with `k >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    k: u32,
    q: BigNat,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<Self, ArithError> {
        if !is_prime_u64(p) {
            return Err(ArithError::NotPrime(p));
        }
        if k == 0 {
            return Err(ArithError::ZeroExponent(p));
        }
        Ok(PrimePower {
            p,
            k,
            q: BigNat::from(p).pow(k),
        })
    }

    /// Recognizes `q` as `p^k`.
    pub fn from_value(q: u64) -> Option<Self> {
        if q < 2 {
            return None;
        }
        let p = smallest_prime_factor(q);
        let mut rest = q;
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        (rest == 1).then(|| PrimePower {
            p,
            k,
            q: BigNat::from(q),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> &BigNat {
        &self.q
    }

    /// `q` as a machine integer, when it fits.
    pub fn value(&self) -> Option<u64> {
        self.q.to_u64()
    }
}

// Ordered by q; equal q forces equal (p, k).
impl Ord for PrimePower {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.q.cmp(&other.q)
    }
}

impl PartialOrd for PrimePower {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Written `p^k`, or just `p` when `k = 1`.
impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.k)
        }
    }
}

impl fmt::Debug for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (= {})", self, self.q)
    }
}

impl FromStr for PrimePower {
    type Err = ArithError;

    /// Parses `p^k` or a plain prime `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::InvalidDecimal(s.into());
        let (p, k) = match s.split_once('^') {
            Some((p, k)) => (p, k.parse::<u32>().map_err(|_| bad())?),
            None => (s, 1),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        PrimePower::new(p, k)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for PrimePower {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for PrimePower {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// All prime powers `2 <= q <= limit`, ascending by `q`.
pub fn prime_powers_upto(limit: u64) -> Result<Vec<PrimePower>, ArithError> {
    if limit < 2 {
        return Err(ArithError::BelowSmallestPrimePower(limit));
    }
    let mut out = Vec::new();
    for p in primes_upto(limit) {
        let mut q = p;
        let mut k = 1;
        loop {
            out.push(PrimePower {
                p,
                k,
                q: BigNat::from(q),
            });
            match q.checked_mul(p) {
                Some(next) if next <= limit => {
                    q = next;
                    k += 1;
                }
                _ => break,
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A natural number held as its prime factorization. The empty map is 1.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FactoredNat {
    factors: BTreeMap<u64, u32>,
}

impl FactoredNat {
    pub fn one() -> Self {
        FactoredNat::default()
    }

    /// Builds from `(prime, exponent)` pairs; every prime must be prime,
    /// every exponent positive, and no prime may repeat.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, ArithError>
    where
        I: IntoIterator<Item = (u64, u32)>,
    {
        let mut factors = BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime_u64(p) {
                return Err(ArithError::NotPrime(p));
            }
            if e == 0 {
                return Err(ArithError::ZeroExponent(p));
            }
            if factors.insert(p, e).is_some() {
                return Err(ArithError::DuplicatePrime(p));
            }
        }
        Ok(FactoredNat { factors })
    }

    pub fn prime_power(p: u64, n: u32) -> Result<Self, ArithError> {
        FactoredNat::from_pairs([(p, n)])
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` (0 when absent).
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn to_bignat(&self) -> BigNat {
        self.iter().map(|(p, e)| BigNat::from(p).pow(e)).product()
    }

    /// Divisibility by exponent comparison.
    pub fn divides(&self, other: &FactoredNat) -> bool {
        self.iter().all(|(p, e)| other.exponent(p) >= e)
    }

    /// Number of positive divisors.
    pub fn divisor_count(&self) -> u64 {
        self.iter().map(|(_, e)| e as u64 + 1).product()
    }
}

impl Mul<&FactoredNat> for &FactoredNat {
    type Output = FactoredNat;
    fn mul(self, rhs: &FactoredNat) -> FactoredNat {
        let mut factors = self.factors.clone();
        for (p, e) in rhs.iter() {
            *factors.entry(p).or_insert(0) += e;
        }
        FactoredNat { factors }
    }
}

impl fmt::Display for FactoredNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `[[p, e], ...]` in ascending prime order.
#[cfg(feature = "serde")]
impl serde::Serialize for FactoredNat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|(p, e)| (p, e)))
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for FactoredNat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(u64, u32)>::deserialize(d)?;
        FactoredNat::from_pairs(pairs).map_err(serde::de::Error::custom)
    }
}

/// Outcome of factoring over a fixed prime basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    Complete(FactoredNat),
    /// The basis did not exhaust `n`; `cofactor > 1` is what remains.
    Partial {
        factored: FactoredNat,
        cofactor: BigNat,
    },
}

impl Factorization {
    pub fn complete(self) -> Option<FactoredNat> {
        match self {
            Factorization::Complete(f) => Some(f),
            Factorization::Partial { .. } => None,
        }
    }
}

/// Divides out every prime of `basis` from `n`.
pub fn factorize_known(n: &BigNat, basis: &[u64]) -> Result<Factorization, ArithError> {
    if basis.is_empty() {
        return Err(ArithError::EmptyBasis);
    }
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut rest = n.clone();
    let mut pairs = Vec::new();
    let mut seen = BTreeSet::new();
    for &p in basis {
        if !seen.insert(p) {
            continue;
        }
        if !is_prime_u64(p) {
            return Err(ArithError::NotPrime(p));
        }
        let prime = BigNat::from(p);
        let mut e = 0;
        while let Some(q) = rest.exact_div(&prime) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    }
    let factored = FactoredNat::from_pairs(pairs)?;
    Ok(if rest.is_one() {
        Factorization::Complete(factored)
    } else {
        Factorization::Partial {
            factored,
            cofactor: rest,
        }
    })
}

/// Trial division by every prime up to `limit`. A leftover cofactor below
/// `limit^2` is necessarily prime and is absorbed.
pub fn factor_by_trial_division(n: &BigNat, limit: u64) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut rest = n.0.clone();
    let mut pairs = Vec::new();
    let mut stopped_early = false;
    for p in primes_upto(limit.max(2)) {
        let prime = BigUint::from(p);
        if &prime * &prime > rest {
            stopped_early = true;
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&prime);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    }
    // a cofactor with no prime factor up to sqrt(cofactor) is prime, and so
    // is one below limit^2 once every prime up to `limit` has been tried
    if !rest.is_one() {
        let is_prime = stopped_early || rest < BigUint::from(limit.max(2)).pow(2);
        match rest.to_u64() {
            Some(c) if is_prime => pairs.push((c, 1)),
            _ => {
                return Ok(Factorization::Partial {
                    factored: FactoredNat::from_pairs(pairs)?,
                    cofactor: BigNat(rest),
                })
            }
        }
    }
    Ok(Factorization::Complete(FactoredNat::from_pairs(pairs)?))
}
