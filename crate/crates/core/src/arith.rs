//! Exact arithmetic over factored integers.
//!
//! Every quantity downstream is a function of the canonical factorization
//! `n = p_1^{n_1} ... p_r^{n_r}` with `p_1 < ... < p_r`. Prime indices in the
//! public API are 1-based, matching the descriptor syntax `Z:a:s`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigRational = Ratio<BigInt>;

/// Upper bound on the number of divisors materialized by [`FactoredInteger::divisors`].
pub const MAX_DIVISORS: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub prime: BigUint,
    pub exponent: u32,
}

/// A positive integer `n >= 2` held as its sorted prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    factors: Vec<PrimePower>,
}

/// A divisor of a [`FactoredInteger`], held as its exponent vector.
///
/// The derived ordering is lexicographic on the exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    exps: Vec<u32>,
}

impl Divisor {
    pub fn new(exps: Vec<u32>) -> Self {
        Divisor { exps }
    }

    pub fn one(r: usize) -> Self {
        Divisor { exps: vec![0; r] }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Componentwise `<=` on exponent vectors.
    pub fn divides(&self, other: &Divisor) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn value(&self, f: &FactoredInteger) -> BigUint {
        f.factors
            .iter()
            .zip(&self.exps)
            .fold(BigUint::one(), |acc, (pp, &e)| acc * pp.prime.pow(e))
    }
}

impl FactoredInteger {
    /// Builds a factorization from `(prime, exponent)` pairs in any order.
    /// Repeated primes are merged; zero exponents are rejected.
    pub fn from_prime_powers<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        let mut factors: Vec<PrimePower> = Vec::new();
        for (prime, exponent) in pairs {
            if exponent == 0 {
                return Err(Error::Domain(format!("exponent of {prime} must be positive")));
            }
            if !is_probable_prime(&prime) {
                return Err(Error::Domain(format!("{prime} is not prime")));
            }
            factors.push(PrimePower { prime, exponent });
        }
        if factors.is_empty() {
            return Err(Error::Domain("n must be at least 2".into()));
        }
        factors.sort_by(|x, y| x.prime.cmp(&y.prime));
        let mut merged: Vec<PrimePower> = Vec::with_capacity(factors.len());
        for pp in factors {
            match merged.last_mut() {
                Some(last) if last.prime == pp.prime => last.exponent += pp.exponent,
                _ => merged.push(pp),
            }
        }
        Ok(FactoredInteger { factors: merged })
    }

    pub fn from_u64_pairs(pairs: &[(u64, u32)]) -> Result<Self> {
        Self::from_prime_powers(pairs.iter().map(|&(p, e)| (BigUint::from(p), e)))
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Number of distinct prime divisors.
    pub fn r(&self) -> usize {
        self.factors.len()
    }

    /// `p_a` for a 1-based index. Panics on an invalid index; use
    /// [`check_index`](Self::check_index) first for untrusted input.
    pub fn prime(&self, a: usize) -> &BigUint {
        &self.factors[a - 1].prime
    }

    /// `n_a` for a 1-based index.
    pub fn exponent(&self, a: usize) -> u32 {
        self.factors[a - 1].exponent
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a == 0 || a > self.r() {
            Err(Error::IndexOutOfRange { index: a, r: self.r() })
        } else {
            Ok(())
        }
    }

    /// Checks `a` in `[r]` and `s` in `[n_a]`.
    pub fn check_level(&self, a: usize, s: u32) -> Result<()> {
        self.check_index(a)?;
        let max = self.exponent(a);
        if s == 0 || s > max {
            return Err(Error::LevelOutOfRange { index: a, level: s, min: 1, max });
        }
        Ok(())
    }

    pub fn value(&self) -> BigUint {
        self.top().value(self)
    }

    /// The divisor `n` itself.
    pub fn top(&self) -> Divisor {
        Divisor::new(self.factors.iter().map(|pp| pp.exponent).collect())
    }

    /// Validates an exponent vector against this factorization.
    pub fn divisor(&self, exps: Vec<u32>) -> Result<Divisor> {
        if exps.len() != self.r() {
            return Err(Error::Domain(format!(
                "exponent vector has length {}, expected {}",
                exps.len(),
                self.r()
            )));
        }
        for (i, (&e, pp)) in exps.iter().zip(&self.factors).enumerate() {
            if e > pp.exponent {
                return Err(Error::LevelOutOfRange {
                    index: i + 1,
                    level: e,
                    min: 0,
                    max: pp.exponent,
                });
            }
        }
        Ok(Divisor::new(exps))
    }

    /// Returns the divisor with the given value, if it divides `n`.
    pub fn divisor_of(&self, value: &BigUint) -> Option<Divisor> {
        if value.is_zero() {
            return None;
        }
        let mut rest = value.clone();
        let mut exps = Vec::with_capacity(self.r());
        for pp in &self.factors {
            let mut e = 0;
            while e < pp.exponent && (&rest % &pp.prime).is_zero() {
                rest /= &pp.prime;
                e += 1;
            }
            exps.push(e);
        }
        rest.is_one().then(|| Divisor::new(exps))
    }

    pub fn is_prime_power(&self) -> bool {
        self.r() == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|pp| pp.exponent == 1)
    }

    /// `p_1 p_2 ... p_r`.
    pub fn radical(&self) -> BigUint {
        self.radical_excluding(&[])
    }

    /// `n / (p_1 p_2 ... p_r)`.
    pub fn cofactor(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, pp| acc * pp.prime.pow(pp.exponent - 1))
    }

    /// Product of the primes whose 1-based indices are not in `exclude`.
    pub fn radical_excluding(&self, exclude: &[usize]) -> BigUint {
        self.factors
            .iter()
            .enumerate()
            .filter(|(i, _)| !exclude.contains(&(i + 1)))
            .fold(BigUint::one(), |acc, (_, pp)| acc * &pp.prime)
    }

    /// `phi` of [`radical_excluding`](Self::radical_excluding), i.e. the product of `p - 1`.
    pub fn radical_totient_excluding(&self, exclude: &[usize]) -> BigUint {
        self.factors
            .iter()
            .enumerate()
            .filter(|(i, _)| !exclude.contains(&(i + 1)))
            .fold(BigUint::one(), |acc, (_, pp)| acc * (&pp.prime - 1u32))
    }

    pub fn totient(&self) -> BigUint {
        self.totient_of_divisor(&self.top())
    }

    /// `phi(d) = prod p^{e-1} (p - 1)` over the nonzero exponents of `d`.
    pub fn totient_of_divisor(&self, d: &Divisor) -> BigUint {
        self.factors
            .iter()
            .zip(d.exponents())
            .filter(|(_, &e)| e > 0)
            .fold(BigUint::one(), |acc, (pp, &e)| {
                acc * pp.prime.pow(e - 1) * (&pp.prime - 1u32)
            })
    }

    pub fn divisor_count(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, pp| acc * (pp.exponent + 1))
    }

    /// Number of divisors as a `usize`, if it is at most [`MAX_DIVISORS`].
    pub fn divisor_count_checked(&self) -> Result<usize> {
        let count = self.divisor_count();
        match count.to_usize() {
            Some(c) if c <= MAX_DIVISORS => Ok(c),
            _ => Err(Error::limit("divisor enumeration", count, MAX_DIVISORS)),
        }
    }

    /// All divisors, lexicographic on exponent vectors (last prime varies fastest).
    pub fn divisors(&self) -> Result<Vec<Divisor>> {
        let count = self.divisor_count_checked()?;
        let bounds: Vec<u32> = self.factors.iter().map(|pp| pp.exponent).collect();
        let mut out = Vec::with_capacity(count);
        let mut cur = vec![0u32; bounds.len()];
        loop {
            out.push(Divisor::new(cur.clone()));
            let mut i = bounds.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < bounds[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

impl fmt::Display for FactoredInteger {
    /// Factored-literal form, e.g. `2^3*3*5^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pp) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if pp.exponent == 1 {
                write!(f, "{}", pp.prime)?;
            } else {
                write!(f, "{}^{}", pp.prime, pp.exponent)?;
            }
        }
        Ok(())
    }
}

impl FromStr for FactoredInteger {
    type Err = Error;

    /// Accepts a decimal integer (`4290`) or a product literal
    /// (`2^3*3*5^2`, `15015*11`). Bases in a product need not be prime.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut pairs: Vec<(BigUint, u32)> = Vec::new();
        for term in s.split('*') {
            let term = term.trim();
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => {
                    let e = e.trim();
                    let exp: u32 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?;
                    if exp == 0 {
                        return Err(Error::Parse(format!("zero exponent in `{term}`")));
                    }
                    (parse_decimal(b.trim())?, exp)
                }
                None => (parse_decimal(term)?, 1),
            };
            if base < BigUint::from(2u32) {
                return Err(Error::Parse(format!("base `{term}` must be at least 2")));
            }
            if is_probable_prime(&base) {
                pairs.push((base, exp));
            } else {
                let inner = factor(&base)?;
                for pp in inner.factors {
                    pairs.push((pp.prime, pp.exponent * exp));
                }
            }
        }
        FactoredInteger::from_prime_powers(pairs)
    }
}

fn parse_decimal(s: &str) -> Result<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("`{s}` is not a decimal integer")));
    }
    BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| Error::Parse(format!("`{s}`")))
}

pub fn is_probable_prime(p: &BigUint) -> bool {
    match p.to_u64() {
        Some(small) => num_prime::nt_funcs::is_prime64(small),
        None => num_prime::nt_funcs::is_prime(p, None).probably(),
    }
}

/// Canonical factorization of `n >= 2`.
pub fn factor(n: &BigUint) -> Result<FactoredInteger> {
    if *n < BigUint::from(2u32) {
        return Err(Error::Domain(format!("cannot factor {n}: n must be at least 2")));
    }
    let pairs: Vec<(BigUint, u32)> = match n.to_u128() {
        Some(small) => num_prime::nt_funcs::factorize128(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e as u32))
            .collect(),
        None => {
            let (found, rest) = num_prime::nt_funcs::factors(n.clone(), None);
            if let Some(rest) = rest {
                let rest: Vec<String> = rest.iter().map(|x| x.to_string()).collect();
                return Err(Error::Domain(format!(
                    "could not completely factor {n}; unresolved cofactors {}; supply a factored literal",
                    rest.join(", ")
                )));
            }
            found.into_iter().map(|(p, e)| (p, e as u32)).collect()
        }
    };
    FactoredInteger::from_prime_powers(pairs)
}

pub(crate) fn rat(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

pub(crate) fn rat_i(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Converts an exact rational to a nonnegative integer, failing if it is not one.
pub(crate) fn into_natural(q: BigRational, what: impl Into<String>) -> Result<BigUint> {
    if !q.is_integer() {
        return Err(Error::NotIntegral(what.into()));
    }
    q.to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Domain("closed form evaluated to a negative value".into()))
}

/// `sum_{l=k}^{s} phi(n / p_a^l)` by its closed form, for `0 <= k <= s <= n_a`.
pub fn partial_totient_sum(f: &FactoredInteger, a: usize, k: u32, s: u32) -> Result<BigUint> {
    f.check_index(a)?;
    let na = f.exponent(a);
    if s > na {
        return Err(Error::LevelOutOfRange { index: a, level: s, min: k, max: na });
    }
    if k > s {
        return Err(Error::Domain(format!("lower limit {k} exceeds upper limit {s}")));
    }
    let p = rat(f.prime(a));
    let base = rat(&f.cofactor()) * rat(&f.radical_totient_excluding(&[a])) * p.clone()
        / pow(&p, k);
    let sum = if s == na {
        base
    } else {
        base * (rat_i(1) - rat_i(1) / pow(&p, s - k + 1))
    };
    into_natural(sum, format!("partial totient sum (a={a}, k={k}, s={s})"))
}

/// `sum_{k=1}^{s} sum_{l=1}^{t} phi(n / (p_a^k p_b^l))` by its four-branch closed form.
pub fn double_totient_sum(f: &FactoredInteger, a: usize, b: usize, s: u32, t: u32) -> Result<BigUint> {
    if a == b {
        return Err(Error::Domain("indices a and b must differ".into()));
    }
    f.check_level(a, s)?;
    f.check_level(b, t)?;
    let pa = rat(f.prime(a));
    let pb = rat(f.prime(b));
    let mut sum = rat(&f.cofactor()) * rat(&f.radical_totient_excluding(&[a, b]));
    if s < f.exponent(a) {
        sum *= rat_i(1) - rat_i(1) / pow(&pa, s);
    }
    if t < f.exponent(b) {
        sum *= rat_i(1) - rat_i(1) / pow(&pb, t);
    }
    into_natural(sum, format!("double totient sum (a={a}, b={b}, s={s}, t={t})"))
}

pub(crate) fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}
