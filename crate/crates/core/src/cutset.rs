//! The two families of candidate cut-sets, stored as unions of whole order
//! classes `E_d`.
//!
//! `Z_a^s = E_n ∪ E_{n/p_a} ∪ ... ∪ E_{n/p_a^{s-1}} ∪ Q_a^s`, where `Q_a^s` is the
//! union of the subgroups `S_{n/(p_i p_a^s)}` for `i != a`.
//!
//! `X_{a,b}^{s,t} = H ∪ K`, where `H` is the union of `E_{n/(p_a^i p_b^j)}` for
//! `0 <= i <= s`, `0 <= j <= t`, `(i, j) != (s, t)` and `K` is the set of
//! non-generators of `S_{n/(p_a^s p_b^t)}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{Divisor, FactoredInteger};
use crate::error::{Error, Result};

/// Default cap on the number of group elements produced by [`expand`].
pub const DEFAULT_EXPAND_LIMIT: u64 = 100_000;

/// Symbolic name of a candidate cut-set. Indices are 1-based into the sorted
/// prime list. `X` is kept canonical with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CutSetDescriptor {
    Z { a: usize, s: u32 },
    X { a: usize, b: usize, s: u32, t: u32 },
}

impl CutSetDescriptor {
    pub fn z(a: usize, s: u32) -> Self {
        CutSetDescriptor::Z { a, s }
    }

    /// `X_{a,b}^{s,t}`, canonicalized so that `X(b,a,t,s)` gives the same value.
    pub fn x(a: usize, b: usize, s: u32, t: u32) -> Self {
        if a <= b {
            CutSetDescriptor::X { a, b, s, t }
        } else {
            CutSetDescriptor::X { a: b, b: a, s: t, t: s }
        }
    }

    /// Checks the descriptor against `f`: `Z` needs `r >= 2`, `X` needs `r >= 3`
    /// and distinct indices, and every level must lie in `1..=n_i`.
    pub fn validate(&self, f: &FactoredInteger) -> Result<()> {
        match *self {
            CutSetDescriptor::Z { a, s } => {
                if f.r() < 2 {
                    return Err(Error::Domain(format!(
                        "Z cut-sets need at least two distinct primes, {} has {}",
                        f,
                        f.r()
                    )));
                }
                f.check_level(a, s)
            }
            CutSetDescriptor::X { a, b, s, t } => {
                if f.r() < 3 {
                    return Err(Error::Domain(format!(
                        "X cut-sets need at least three distinct primes, {} has {}",
                        f,
                        f.r()
                    )));
                }
                if a == b {
                    return Err(Error::Domain("X cut-set indices must differ".into()));
                }
                f.check_level(a, s)?;
                f.check_level(b, t)
            }
        }
    }

    /// Indices `i` for which the cut-set contains `E_{n/p_i}`.
    pub fn top_classes(&self) -> Vec<usize> {
        match *self {
            CutSetDescriptor::Z { s: 1, .. } => vec![],
            CutSetDescriptor::Z { a, .. } => vec![a],
            CutSetDescriptor::X { a, b, .. } => vec![a, b],
        }
    }
}

impl fmt::Display for CutSetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutSetDescriptor::Z { a, s } => write!(f, "Z:{a}:{s}"),
            CutSetDescriptor::X { a, b, s, t } => write!(f, "X:{a}:{b}:{s}:{t}"),
        }
    }
}

impl FromStr for CutSetDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |x: &str| -> Result<u32> {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad number `{x}` in descriptor `{s}`")))
        };
        match parts.as_slice() {
            [kind, a, lvl] if kind.eq_ignore_ascii_case("Z") => {
                Ok(CutSetDescriptor::z(num(a)? as usize, num(lvl)?))
            }
            [kind, a, b, s1, t1] if kind.eq_ignore_ascii_case("X") => Ok(CutSetDescriptor::x(
                num(a)? as usize,
                num(b)? as usize,
                num(s1)?,
                num(t1)?,
            )),
            _ => Err(Error::Parse(format!(
                "descriptor `{s}` must look like Z:a:s or X:a:b:s:t"
            ))),
        }
    }
}

/// A union of order classes `E_d`, keyed by divisor `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSet {
    parent: FactoredInteger,
    members: BTreeSet<Divisor>,
    cardinality: BigUint,
}

impl DivisorSet {
    /// Collects `members` (each must divide `n`) and caches `sum phi(d)`.
    pub fn new(parent: &FactoredInteger, members: impl IntoIterator<Item = Divisor>) -> Self {
        let members: BTreeSet<Divisor> = members.into_iter().collect();
        let cardinality = members
            .iter()
            .map(|d| parent.totient_of_divisor(d))
            .sum();
        DivisorSet {
            parent: parent.clone(),
            members,
            cardinality,
        }
    }

    pub fn parent(&self) -> &FactoredInteger {
        &self.parent
    }

    pub fn members(&self) -> &BTreeSet<Divisor> {
        &self.members
    }

    pub fn contains(&self, d: &Divisor) -> bool {
        self.members.contains(d)
    }

    /// Number of group elements in the union.
    pub fn cardinality(&self) -> &BigUint {
        &self.cardinality
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member divisors as integers, ascending.
    pub fn values(&self) -> Vec<BigUint> {
        let mut v: Vec<BigUint> = self.members.iter().map(|d| d.value(&self.parent)).collect();
        v.sort();
        v
    }

    /// Indices `i` with `E_{n/p_i}` inside the set.
    pub fn top_classes(&self) -> Vec<usize> {
        let top = self.parent.top();
        (1..=self.parent.r())
            .filter(|&i| {
                let mut d = top.clone();
                let mut exps = d.exponents().to_vec();
                exps[i - 1] -= 1;
                d = Divisor::new(exps);
                self.members.contains(&d)
            })
            .collect()
    }
}

/// Order of the residue `x` in `C_n`, i.e. `n / gcd(n, x)`.
pub fn element_order(x: &BigUint, f: &FactoredInteger) -> Result<Divisor> {
    let n = f.value();
    if *x >= n {
        return Err(Error::Domain(format!("residue {x} is not in [0, {n})")));
    }
    let g = n.gcd(x);
    let order = &n / &g;
    Ok(f.divisor_of(&order).expect("n / gcd(n, x) divides n"))
}

/// `Z_a^s` as a set of order classes.
pub fn build_z(f: &FactoredInteger, a: usize, s: u32) -> Result<DivisorSet> {
    CutSetDescriptor::z(a, s).validate(f)?;
    let top = f.top();
    let na = top.exponents()[a - 1];
    let members = f.divisors()?.into_iter().filter(|d| {
        let e = d.exponents();
        // E_{n/p_a^l}, 0 <= l < s
        let chain = e
            .iter()
            .zip(top.exponents())
            .enumerate()
            .all(|(j, (&x, &m))| if j == a - 1 { x + s > m } else { x == m });
        // S_{n/(p_i p_a^s)}, i != a
        let in_q = e[a - 1] + s <= na
            && (0..e.len()).any(|i| i != a - 1 && e[i] < top.exponents()[i]);
        chain || in_q
    });
    Ok(DivisorSet::new(f, members))
}

/// `X_{a,b}^{s,t}` as a set of order classes.
pub fn build_x(f: &FactoredInteger, a: usize, b: usize, s: u32, t: u32) -> Result<DivisorSet> {
    CutSetDescriptor::x(a, b, s, t).validate(f)?;
    let top = f.top();
    let (ia, ib) = (a - 1, b - 1);
    let (na, nb) = (top.exponents()[ia], top.exponents()[ib]);
    let members = f.divisors()?.into_iter().filter(|d| {
        let e = d.exponents();
        let others_full = (0..e.len())
            .filter(|&j| j != ia && j != ib)
            .all(|j| e[j] == top.exponents()[j]);
        // H: n / (p_a^i p_b^j) with i <= s, j <= t, (i, j) != (s, t)
        let (i, j) = (na - e[ia], nb - e[ib]);
        let in_h = others_full && i <= s && j <= t && (i, j) != (s, t);
        // K: proper divisors of n / (p_a^s p_b^t)
        let in_k = e[ia] + s <= na && e[ib] + t <= nb && !(others_full && i == s && j == t);
        in_h || in_k
    });
    Ok(DivisorSet::new(f, members))
}

pub fn build(f: &FactoredInteger, desc: &CutSetDescriptor) -> Result<DivisorSet> {
    match *desc {
        CutSetDescriptor::Z { a, s } => build_z(f, a, s),
        CutSetDescriptor::X { a, b, s, t } => build_x(f, a, b, s, t),
    }
}

/// The explicit residues `x in [0, n)` whose order lies in `set`, ascending.
///
/// Fails when the set has more than `limit` elements. Elements of order `d`
/// are the multiples `k n / d` with `gcd(k, d) = 1`, so the work is
/// proportional to the sum of the orders in the set, not to `n`.
pub fn expand(set: &DivisorSet, limit: u64) -> Result<Vec<u64>> {
    let f = set.parent();
    if set.cardinality() > &BigUint::from(limit) {
        return Err(Error::limit("element expansion", set.cardinality(), limit));
    }
    let n = f
        .value()
        .to_u64()
        .ok_or_else(|| Error::limit("element expansion", f.value(), u64::MAX))?;
    let mut out = Vec::with_capacity(set.cardinality().to_usize().unwrap_or(0));
    for d in set.members() {
        let d = d.value(f).to_u64().expect("divisor of a u64 fits in u64");
        let step = n / d;
        if d == 1 {
            out.push(0);
            continue;
        }
        out.extend((1..d).filter(|k| k.gcd(&d) == 1).map(|k| k * step));
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor;

    fn fi(n: u64) -> FactoredInteger {
        factor(&BigUint::from(n)).unwrap()
    }

    fn vals(set: &DivisorSet) -> Vec<u64> {
        set.values().iter().map(|v| v.to_u64().unwrap()).collect()
    }

    #[test]
    fn descriptor_syntax() {
        let d: CutSetDescriptor = "X:5:4:1:2".parse().unwrap();
        assert_eq!(d, CutSetDescriptor::x(4, 5, 2, 1));
        assert_eq!(d.to_string(), "X:4:5:2:1");
        assert_eq!("Z:3:1".parse::<CutSetDescriptor>().unwrap(), CutSetDescriptor::z(3, 1));
        for bad in ["Z:1", "Y:1:1", "X:1:2:3", "Z:a:1", ""] {
            assert!(bad.parse::<CutSetDescriptor>().is_err(), "{bad}");
        }
    }

    #[test]
    fn descriptor_validation() {
        let f = fi(30);
        assert!(CutSetDescriptor::z(3, 1).validate(&f).is_ok());
        assert!(CutSetDescriptor::z(3, 2).validate(&f).is_err());
        assert!(CutSetDescriptor::z(4, 1).validate(&f).is_err());
        assert!(CutSetDescriptor::x(2, 2, 1, 1).validate(&f).is_err());
        assert!(CutSetDescriptor::x(1, 2, 1, 1).validate(&fi(12)).is_err());
        assert!(CutSetDescriptor::z(1, 1).validate(&fi(8)).is_err());
    }

    #[test]
    fn orders() {
        let f = fi(12);
        let ord = |x: u64| element_order(&BigUint::from(x), &f).unwrap().value(&f);
        assert_eq!(ord(0), BigUint::from(1u32));
        assert_eq!(ord(1), BigUint::from(12u32));
        assert_eq!(ord(6), BigUint::from(2u32));
        assert!(element_order(&BigUint::from(12u32), &f).is_err());
    }

    #[test]
    fn z_examples() {
        let z = build_z(&fi(30), 3, 1).unwrap();
        assert_eq!(vals(&z), vec![1, 2, 3, 30]);
        assert_eq!(*z.cardinality(), BigUint::from(12u32));

        let z = build_z(&fi(12), 2, 1).unwrap();
        assert_eq!(vals(&z), vec![1, 2, 12]);
        assert_eq!(*z.cardinality(), BigUint::from(6u32));

        assert_eq!(*build_z(&fi(4290), 5, 1).unwrap().cardinality(), BigUint::from(1210u32));
    }

    #[test]
    fn x_examples() {
        let x = build_x(&fi(30), 2, 3, 1, 1).unwrap();
        // H = {30, 10, 6}, K = non-generators of S_2 = {E_1}
        assert_eq!(vals(&x), vec![1, 6, 10, 30]);
        assert_eq!(*x.cardinality(), BigUint::from(15u32));
        assert_eq!(*build_x(&fi(210), 3, 4, 1, 1).unwrap().cardinality(), BigUint::from(72u32));
        assert_eq!(*build_x(&fi(4290), 4, 5, 1, 1).unwrap().cardinality(), BigUint::from(1158u32));
        assert_eq!(build_x(&fi(210), 3, 4, 1, 1), build_x(&fi(210), 4, 3, 1, 1));
    }

    #[test]
    fn top_class_membership() {
        let f = fi(2 * 9 * 25 * 7);
        assert!(build_z(&f, 2, 1).unwrap().top_classes().is_empty());
        assert_eq!(build_z(&f, 2, 2).unwrap().top_classes(), vec![2]);
        assert_eq!(build_x(&f, 3, 1, 2, 1).unwrap().top_classes(), vec![1, 3]);
        assert_eq!(CutSetDescriptor::z(3, 2).top_classes(), vec![3]);
    }

    #[test]
    fn expansion() {
        let f = fi(12);
        let z = build_z(&f, 2, 1).unwrap();
        assert_eq!(expand(&z, DEFAULT_EXPAND_LIMIT).unwrap(), vec![0, 1, 5, 6, 7, 11]);
        assert!(expand(&DivisorSet::new(&f, []), 100).unwrap().is_empty());
        let all = DivisorSet::new(&f, f.divisors().unwrap());
        assert_eq!(expand(&all, 100).unwrap(), (0..12).collect::<Vec<_>>());
        assert!(matches!(expand(&z, 5), Err(Error::LimitExceeded { .. })));
    }
}
