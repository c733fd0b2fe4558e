//! Closed-form sizes of the candidate cut-sets and the predicates that decide
//! between them.
//!
//! All values are exact. Every size is written as `phi(n) + (n / rad(n)) * inner`
//! and the rational `inner` term is kept so callers can print it.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::arith::{rat, rat_i, BigRational, FactoredInteger};
use crate::cutset::CutSetDescriptor;
use crate::error::{Error, Result};

/// Exact size of a candidate cut-set with its decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub descriptor: CutSetDescriptor,
    pub value: BigUint,
    /// `phi(n)`.
    pub totient: BigUint,
    /// `n / (p_1 ... p_r)`.
    pub cofactor: BigUint,
    /// The inner term multiplying the cofactor (`u_a` for `Z`, `v_i` for `X`).
    pub inner: BigRational,
}

impl BoundValue {
    /// Builds the value from `inner = num / den`, where `den` divides `cofactor * num`.
    fn assemble(f: &FactoredInteger, descriptor: CutSetDescriptor, num: BigInt, den: BigUint) -> Result<Self> {
        let totient = f.totient();
        let cofactor = f.cofactor();
        let den = BigInt::from(den);
        let scaled = BigInt::from(cofactor.clone()) * &num;
        if !(&scaled % &den).is_zero() {
            return Err(Error::NotIntegral(descriptor.to_string()));
        }
        let value = (BigInt::from(totient.clone()) + scaled / &den)
            .to_biguint()
            .ok_or_else(|| Error::Domain("closed form evaluated to a negative value".into()))?;
        Ok(BoundValue {
            descriptor,
            value,
            totient,
            cofactor,
            inner: BigRational::new(num, den),
        })
    }
}

fn int(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

/// `beta_a^s`, the size of `Z_a^s`:
/// `phi(n) + (n/rad) * p_a^{-(s-1)} * [rad/p_a + phi(rad/p_a) (p_a^{s-1} - 2)]`.
pub fn beta(f: &FactoredInteger, a: usize, s: u32) -> Result<BoundValue> {
    let desc = CutSetDescriptor::z(a, s);
    desc.validate(f)?;
    let m = int(&f.radical_excluding(&[a]));
    let phi_m = int(&f.radical_totient_excluding(&[a]));
    let ps = f.prime(a).pow(s - 1);
    let num = m + phi_m * (int(&ps) - 2);
    BoundValue::assemble(f, desc, num, ps)
}

/// `theta_{a,b}^{s,t}`, the size of `X_{a,b}^{s,t}`. The branch `v_1..v_4` is
/// chosen by whether `s = n_a` and `t = n_b`.
///
/// Each branch is evaluated as an integer numerator over `p_a^{n_a} p_b^{n_b}`.
pub fn theta(f: &FactoredInteger, a: usize, b: usize, s: u32, t: u32) -> Result<BoundValue> {
    let desc = CutSetDescriptor::x(a, b, s, t);
    desc.validate(f)?;
    let (na, nb) = (f.exponent(a), f.exponent(b));
    let (pa, pb) = (f.prime(a), f.prime(b));
    let big_a = int(&pa.pow(na));
    let big_b = int(&pb.pow(nb));
    let den = &big_a * &big_b;
    // D / p_a^s and D / p_b^t, up to the other full power
    let g = int(&pa.pow(na - s));
    let e = int(&pb.pow(nb - t));
    let rad = int(&f.radical());
    let phi_ab = int(&f.radical_totient_excluding(&[a, b]));
    let phi_a = int(&f.radical_totient_excluding(&[a]));
    let phi_b = int(&f.radical_totient_excluding(&[b]));

    let num = match (s == na, t == nb) {
        (true, true) => {
            let papb = int(pa) * int(pb);
            phi_ab * (&den - 2 * papb) + (phi_a + phi_b) * &den + rad
        }
        (true, false) => {
            (phi_ab + phi_b) * (&den - &big_a * &e) + phi_a * (&den - 2 * int(pa) * &e) + rad * &e
        }
        (false, true) => {
            (phi_ab + phi_a) * (&den - &big_b * &g) + phi_b * (&den - 2 * int(pb) * &g) + rad * &g
        }
        (false, false) => {
            let phi_rad = int(&f.radical_totient_excluding(&[]));
            let ge = &g * &e;
            phi_ab * (&big_a - &g) * (&big_b - &e)
                + phi_a * &big_b * (&big_a - &g)
                + phi_b * &big_a * (&big_b - &e)
                + (rad - 2 * phi_rad) * ge
        }
    };
    BoundValue::assemble(f, desc, num, den.to_biguint().expect("positive"))
}

/// Size of any descriptor.
pub fn bound(f: &FactoredInteger, desc: &CutSetDescriptor) -> Result<BoundValue> {
    match *desc {
        CutSetDescriptor::Z { a, s } => beta(f, a, s),
        CutSetDescriptor::X { a, b, s, t } => theta(f, a, b, s, t),
    }
}

fn check_exclusion(f: &FactoredInteger, exclude: &[usize]) -> Result<Vec<usize>> {
    let mut ex = exclude.to_vec();
    ex.sort_unstable();
    ex.dedup();
    for &j in &ex {
        f.check_index(j)?;
    }
    if ex.len() >= f.r() {
        return Err(Error::Domain("exclusion set must be a proper subset of [r]".into()));
    }
    Ok(ex)
}

/// `2 phi(m) < m` for `m = rad(n) / prod_{j in exclude} p_j`.
pub fn two_phi_deficient(f: &FactoredInteger, exclude: &[usize]) -> Result<bool> {
    let ex = check_exclusion(f, exclude)?;
    let m = f.radical_excluding(&ex);
    let phi = f.radical_totient_excluding(&ex);
    Ok(phi * 2u32 < m)
}

/// `j in [r-1]` with `n_j >= 3`, `p_r - p_j <= r - 4` and `2 phi(rad/p_j) < rad/p_j`.
/// Defined for `r >= 4` with `n_r >= 2`.
pub fn omega_set(f: &FactoredInteger) -> Result<Vec<usize>> {
    let r = f.r();
    if r < 4 || f.exponent(r) < 2 {
        return Err(Error::Domain(format!(
            "the Omega set needs r >= 4 and n_r >= 2; {f} has r = {r}, n_r = {}",
            f.exponent(r)
        )));
    }
    let pr = f.prime(r);
    let gap = BigUint::from(r - 4);
    let mut out = Vec::new();
    for j in 1..r {
        if f.exponent(j) >= 3 && pr - f.prime(j) <= gap && two_phi_deficient(f, &[j])? {
            out.push(j);
        }
    }
    Ok(out)
}

/// `alpha = (2 + (p_a^{n_a} - 2)/p_b) phi(rad/(p_a p_b)) - rad/(p_a p_b)`.
/// Its sign orders `beta_a^{n_a}` against `theta_{a,b}^{n_a,t}` as `t` varies.
pub fn alpha(f: &FactoredInteger, a: usize, b: usize) -> Result<BigRational> {
    if f.r() < 3 {
        return Err(Error::Domain(format!("alpha is used only for r >= 3; {f} has r = {}", f.r())));
    }
    if a == b {
        return Err(Error::Domain("indices a and b must differ".into()));
    }
    f.check_index(a)?;
    f.check_index(b)?;
    let pa_n = BigInt::from(f.prime(a).pow(f.exponent(a)));
    let pb = BigInt::from(f.prime(b).clone());
    let m = rat(&f.radical_excluding(&[a, b]));
    let phi_m = rat(&f.radical_totient_excluding(&[a, b]));
    let coeff = rat_i(2) + BigRational::new(pa_n - 2, pb);
    Ok(coeff * phi_m - m)
}

/// For squarefree `n` with `r >= 4`:
/// `(2 + (p_r - 2)/(p_{r-1} - 1)) phi(p_1 ... p_{r-2}) <= p_1 ... p_{r-2}`,
/// evaluated with denominators cleared.
pub fn squarefree_tiebreak(f: &FactoredInteger) -> Result<bool> {
    let r = f.r();
    if r < 4 || !f.is_squarefree() {
        return Err(Error::Domain(format!(
            "the squarefree tie condition needs squarefree n with r >= 4; got {f}"
        )));
    }
    let pr = f.prime(r);
    let pr1 = f.prime(r - 1);
    let m = f.radical_excluding(&[r - 1, r]);
    let phi_m = f.radical_totient_excluding(&[r - 1, r]);
    let d = pr1 - 1u32;
    let lhs = (&d * 2u32 + pr - 2u32) * phi_m;
    Ok(lhs <= m * d)
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
