//! Decision procedure for `kappa(P(C_n))`.
//!
//! Dispatch order: prime power, `r = 2`, `r = 3`, the large-totient case,
//! squarefree `r >= 4`, `n_r >= 2`, the two `n_r = 1` cases with `r in {4, 5}`,
//! and finally a minimum over the full candidate table. Each rule lists the
//! cut-sets it allows; `kappa` is the smallest size among them and every
//! listed cut-set attaining it is reported.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::arith::FactoredInteger;
use crate::bounds::{beta, bound, omega_set, two_phi_deficient, BoundValue};
use crate::cutset::CutSetDescriptor;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `r = 1`: complete graph, `kappa = n - 1`.
    PrimePower,
    /// `r = 2`: `kappa = beta_2^1`.
    R2,
    /// `r = 3`, `p_1 >= 3`: `kappa = beta_3^1`.
    R3SmallPrime3,
    /// `r = 3`, `p_1 = 2`: `kappa = beta_3^{n_3}`.
    R3Prime2,
    /// `r >= 4`, `2 phi(p_1 ... p_{r-1}) > p_1 ... p_{r-1}`: `kappa = beta_r^1`.
    LargePhi,
    /// Squarefree `r >= 4`: `min(beta_r^1, theta_{r-1,r}^{1,1})`.
    SquarefreeR4,
    /// `r >= 4`, `n_r >= 2`.
    NrGe2,
    /// `r = 4`, `n_4 = 1`.
    R4Nr1,
    /// `r = 5`, `n_5 = 1`, `p_1 = 3`.
    R5Nr1P3,
    /// Minimum over the candidate table.
    CandidateEnum,
}

impl Rule {
    pub const ALL: [Rule; 10] = [
        Rule::PrimePower,
        Rule::R2,
        Rule::R3SmallPrime3,
        Rule::R3Prime2,
        Rule::LargePhi,
        Rule::SquarefreeR4,
        Rule::NrGe2,
        Rule::R4Nr1,
        Rule::R5Nr1P3,
        Rule::CandidateEnum,
    ];

    /// Stable identifier used in machine-readable output.
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::PrimePower => "PrimePower",
            Rule::R2 => "R2",
            Rule::R3SmallPrime3 => "R3_SmallPrime3",
            Rule::R3Prime2 => "R3_Prime2",
            Rule::LargePhi => "LargePhi",
            Rule::SquarefreeR4 => "SquarefreeR4",
            Rule::NrGe2 => "NrGe2",
            Rule::R4Nr1 => "R4_Nr1",
            Rule::R5Nr1P3 => "R5_Nr1_P3",
            Rule::CandidateEnum => "CandidateEnum",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown rule id `{s}`")))
    }
}

/// How much is known about the set of all minimum cut-sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Uniqueness {
    /// Exactly one minimum cut-set.
    Unique,
    /// The minimizers are exactly the listed cut-sets (`0` for prime powers).
    ExactFamily(usize),
    /// The minimizers are the smallest candidates; no completeness claim.
    CandidatesOnly,
}

impl fmt::Display for Uniqueness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Uniqueness::Unique => f.write_str("Unique"),
            Uniqueness::ExactFamily(k) => write!(f, "ExactFamily({k})"),
            Uniqueness::CandidatesOnly => f.write_str("CandidatesOnly"),
        }
    }
}

impl std::str::FromStr for Uniqueness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Unique" => Ok(Uniqueness::Unique),
            "CandidatesOnly" => Ok(Uniqueness::CandidatesOnly),
            _ => s
                .strip_prefix("ExactFamily(")
                .and_then(|x| x.strip_suffix(')'))
                .and_then(|x| x.parse().ok())
                .map(Uniqueness::ExactFamily)
                .ok_or_else(|| Error::Parse(format!("unknown uniqueness tag `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaResult {
    pub n: FactoredInteger,
    pub kappa: BigUint,
    pub rule: Rule,
    pub minimizers: Vec<CutSetDescriptor>,
    pub uniqueness: Uniqueness,
    /// Every candidate with its exact size, sorted by descriptor.
    pub candidates: Vec<BoundValue>,
}

impl KappaResult {
    /// Smallest size in the candidate table.
    pub fn table_minimum(&self) -> Option<&BigUint> {
        self.candidates.iter().map(|c| &c.value).min()
    }

    /// Table entries attaining the table minimum.
    pub fn table_minimizers(&self) -> Vec<CutSetDescriptor> {
        match self.table_minimum() {
            None => vec![],
            Some(m) => self
                .candidates
                .iter()
                .filter(|c| &c.value == m)
                .map(|c| c.descriptor)
                .collect(),
        }
    }
}

/// Candidate cut-sets with their sizes.
///
/// For `r >= 4` this is `{Z_r^1} ∪ {Z_a^{n_a} : n_a >= 2} ∪ {X_{a,b}^{s,t}}`;
/// any minimum cut-set is one of these. For `r in {2, 3}` every `Z_a^s` (and,
/// for `r = 3`, every `X`) is listed so the dedicated rules can be cross-checked.
pub fn candidates(f: &FactoredInteger) -> Result<Vec<BoundValue>> {
    let r = f.r();
    if r < 2 {
        return Err(Error::Domain(format!("{f} is a prime power and has no cut-sets")));
    }
    let mut descs: BTreeSet<CutSetDescriptor> = BTreeSet::new();
    if r >= 4 {
        descs.insert(CutSetDescriptor::z(r, 1));
        descs.extend(
            (1..=r)
                .filter(|&a| f.exponent(a) >= 2)
                .map(|a| CutSetDescriptor::z(a, f.exponent(a))),
        );
    } else {
        for a in 1..=r {
            descs.extend((1..=f.exponent(a)).map(|s| CutSetDescriptor::z(a, s)));
        }
    }
    if r >= 3 {
        descs.extend(all_x(f));
    }
    descs.par_iter().map(|d| bound(f, d)).collect()
}

/// Every valid `Z_a^s` descriptor.
pub fn all_z(f: &FactoredInteger) -> Vec<CutSetDescriptor> {
    if f.r() < 2 {
        return vec![];
    }
    (1..=f.r())
        .flat_map(|a| (1..=f.exponent(a)).map(move |s| CutSetDescriptor::z(a, s)))
        .collect()
}

/// Every valid canonical `X_{a,b}^{s,t}` descriptor.
pub fn all_x(f: &FactoredInteger) -> Vec<CutSetDescriptor> {
    let r = f.r();
    if r < 3 {
        return vec![];
    }
    let mut out = Vec::new();
    for a in 1..=r {
        for b in a + 1..=r {
            for s in 1..=f.exponent(a) {
                for t in 1..=f.exponent(b) {
                    out.push(CutSetDescriptor::x(a, b, s, t));
                }
            }
        }
    }
    out
}

/// Rule, the cut-sets it allows, and whether those are known to include every
/// minimum cut-set.
fn dispatch(f: &FactoredInteger, table: &[BoundValue]) -> Result<(Rule, Vec<CutSetDescriptor>, bool)> {
    let r = f.r();
    let z = CutSetDescriptor::z;
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    let p1 = f.prime(1);

    match r {
        2 if *p1 >= three => return Ok((Rule::R2, vec![z(2, 1)], true)),
        2 => return Ok((Rule::R2, (1..=f.exponent(2)).map(|s| z(2, s)).collect(), true)),
        3 if *p1 >= three => return Ok((Rule::R3SmallPrime3, vec![z(3, 1)], true)),
        3 => return Ok((Rule::R3Prime2, vec![z(3, f.exponent(3))], true)),
        _ => {}
    }

    if !two_phi_deficient(f, &[r])? {
        return Ok((Rule::LargePhi, vec![z(r, 1)], true));
    }
    if f.is_squarefree() {
        return Ok((
            Rule::SquarefreeR4,
            vec![z(r, 1), CutSetDescriptor::x(r - 1, r, 1, 1)],
            true,
        ));
    }
    let nr = f.exponent(r);
    if nr >= 2 {
        let omega = omega_set(f)?;
        let family = match omega.last() {
            Some(&b) if nr == 2 => vec![z(b, f.exponent(b)), z(r, 2)],
            _ => vec![z(r, nr)],
        };
        return Ok((Rule::NrGe2, family, true));
    }
    // n_r = 1 from here on; the deficiency hypothesis forces p_1 in {2, 3}
    if r == 4 {
        debug_assert!(*p1 <= three);
        let family = match f.exponent(3) {
            1 => vec![z(4, 1)],
            n3 => vec![z(3, n3), z(4, 1)],
        };
        return Ok((Rule::R4Nr1, family, true));
    }
    if r == 5 && *p1 == three {
        let family = match f.exponent(4) {
            1 => vec![z(5, 1)],
            n4 => vec![z(4, n4), z(5, 1)],
        };
        return Ok((Rule::R5Nr1P3, family, true));
    }
    debug_assert!(r != 5 || *p1 == two);
    Ok((
        Rule::CandidateEnum,
        table.iter().map(|c| c.descriptor).collect(),
        false,
    ))
}

/// Exact vertex connectivity of `P(C_n)` with the rule used and the
/// minimizing cut-sets.
pub fn kappa(f: &FactoredInteger) -> Result<KappaResult> {
    if f.is_prime_power() {
        return Ok(KappaResult {
            n: f.clone(),
            kappa: f.value() - BigUint::one(),
            rule: Rule::PrimePower,
            minimizers: vec![],
            uniqueness: Uniqueness::ExactFamily(0),
            candidates: vec![],
        });
    }
    let table = candidates(f)?;
    let (rule, family, exact) = dispatch(f, &table)?;
    let sizes: Vec<BoundValue> = family.iter().map(|d| bound(f, d)).collect::<Result<_>>()?;
    let kappa = sizes
        .iter()
        .map(|b| b.value.clone())
        .min()
        .expect("every rule allows at least one cut-set");
    let minimizers: Vec<CutSetDescriptor> = sizes
        .iter()
        .filter(|b| b.value == kappa)
        .map(|b| b.descriptor)
        .collect();
    let uniqueness = match (exact, minimizers.len()) {
        (false, _) => Uniqueness::CandidatesOnly,
        (true, 1) => Uniqueness::Unique,
        (true, k) => Uniqueness::ExactFamily(k),
    };
    let result = KappaResult {
        n: f.clone(),
        kappa,
        rule,
        minimizers,
        uniqueness,
        candidates: table,
    };
    if cfg!(debug_assertions) {
        self_check(f, &result)?;
    }
    Ok(result)
}

/// Consistency checks run in debug builds: the rule's value equals the table
/// minimum, and the `n_r >= 2` and squarefree rules agree with their
/// unrefined forms.
fn self_check(f: &FactoredInteger, res: &KappaResult) -> Result<()> {
    assert_eq!(
        Some(&res.kappa),
        res.table_minimum(),
        "rule {} disagrees with the candidate table for {f}",
        res.rule
    );
    let r = f.r();
    match res.rule {
        Rule::NrGe2 => {
            let mut best = beta(f, r, 1)?.value;
            for a in (1..=r).filter(|&a| f.exponent(a) >= 2) {
                best = best.min(beta(f, a, f.exponent(a))?.value);
            }
            assert_eq!(best, res.kappa, "n_r >= 2 minimum disagrees for {f}");
        }
        Rule::SquarefreeR4 => {
            let x_wins = res.minimizers.contains(&CutSetDescriptor::x(r - 1, r, 1, 1));
            assert_eq!(crate::bounds::squarefree_tiebreak(f)?, x_wins);
        }
        _ => {}
    }
    Ok(())
}

/// The minimum cut-sets, with how completely they are known.
pub fn minimum_cutset_family(f: &FactoredInteger) -> Result<(Vec<CutSetDescriptor>, Uniqueness)> {
    if f.is_prime_power() {
        return Err(Error::Domain(format!(
            "{f} is a prime power; P(C_n) is complete and has no cut-sets"
        )));
    }
    let res = kappa(f)?;
    Ok((res.minimizers, res.uniqueness))
}
