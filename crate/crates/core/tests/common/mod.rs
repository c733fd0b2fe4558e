//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here calls the set builders, the quotient graph or the max-flow
//! oracle of the library; sizes and connectivity are recomputed from first
//! principles with plain `u64` arithmetic.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use powerconn::bounds::{alpha, beta, theta};
use powerconn::FactoredInteger;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Trial-division factorisation.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient by counting units.
pub fn phi_count(n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    (1..=n).filter(|&x| gcd(x, n) == 1).count() as u64
}

/// Euler's totient by the product formula.
pub fn phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn order(x: u64, n: u64) -> u64 {
    n / gcd(x, n)
}

pub fn adjacent(x: u64, y: u64, n: u64) -> bool {
    let (a, b) = (order(x, n), order(y, n));
    x != y && (a % b == 0 || b % a == 0)
}

/// Orders making up `Z_a^s`, straight from the definition: `n / p_a^l` for
/// `0 <= l < s`, plus every order dividing some `n / (p_i p_a^s)`, `i != a`.
pub fn naive_z(n: u64, a: usize, s: u32) -> BTreeSet<u64> {
    let fs = factor_u64(n);
    let pa = fs[a - 1].0;
    let mut out: BTreeSet<u64> = (0..s).map(|l| n / pa.pow(l)).collect();
    for (i, &(pi, _)) in fs.iter().enumerate() {
        if i + 1 == a {
            continue;
        }
        let m = n / (pi * pa.pow(s));
        out.extend(divisors(m));
    }
    out
}

/// Orders making up `X_{a,b}^{s,t} = H ∪ K`.
pub fn naive_x(n: u64, a: usize, b: usize, s: u32, t: u32) -> BTreeSet<u64> {
    let fs = factor_u64(n);
    let (pa, pb) = (fs[a - 1].0, fs[b - 1].0);
    let mut out = BTreeSet::new();
    for i in 0..=s {
        for j in 0..=t {
            if (i, j) != (s, t) {
                out.insert(n / (pa.pow(i) * pb.pow(j)));
            }
        }
    }
    let m = n / (pa.pow(s) * pb.pow(t));
    out.extend(divisors(m).into_iter().filter(|&d| d != m));
    out
}

pub fn class_size(orders: &BTreeSet<u64>) -> u64 {
    orders.iter().map(|&d| phi(d)).sum()
}

/// Residues whose order lies in `orders`.
pub fn residues(n: u64, orders: &BTreeSet<u64>) -> Vec<u64> {
    (0..n).filter(|&x| orders.contains(&order(x, n))).collect()
}

/// Whether deleting `removed` from `P(C_n)` leaves a disconnected graph.
pub fn disconnects(n: u64, removed: &[bool]) -> bool {
    let alive: Vec<u64> = (0..n).filter(|&x| !removed[x as usize]).collect();
    let Some(&start) = alive.first() else {
        return false;
    };
    let mut seen = vec![false; n as usize];
    seen[start as usize] = true;
    let mut queue = VecDeque::from([start]);
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &alive {
            if !seen[v as usize] && adjacent(u, v, n) {
                seen[v as usize] = true;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    reached < alive.len()
}

/// Vertex connectivity by exhausting vertex subsets in order of size.
/// Only for very small `n`.
pub fn kappa_exhaustive(n: u64) -> u64 {
    assert!(n <= 20);
    for k in 0..n {
        let mut found = false;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as u64 != k {
                continue;
            }
            let removed: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            if disconnects(n, &removed) {
                found = true;
                break;
            }
        }
        if found {
            return k;
        }
    }
    n - 1
}

/// Vertex connectivity by Edmonds-Karp on the split digraph, trying every
/// non-adjacent pair with the first endpoint among the first `best + 1`
/// vertices.
pub fn kappa_edmonds_karp(n: u64) -> u64 {
    let n = n as usize;
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| adjacent(u as u64, v as u64, n as u64)).collect())
        .collect();
    let mut best = n - 1;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !adj[i][j] {
                best = best.min(local_ek(&adj, i, j, best));
            }
        }
        i += 1;
    }
    best as u64
}

fn local_ek(adj: &[Vec<bool>], s: usize, t: usize, cap: usize) -> usize {
    let n = adj.len();
    let m = 2 * n;
    // residual capacities on an adjacency matrix of the split graph
    let mut res = vec![vec![0i32; m]; m];
    for v in 0..n {
        res[2 * v][2 * v + 1] = 1;
        for w in 0..n {
            if adj[v][w] {
                res[2 * v + 1][2 * w] = 1;
            }
        }
    }
    let (src, dst) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < cap {
        let mut prev = vec![usize::MAX; m];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            if u == dst {
                break;
            }
            for v in 0..m {
                if res[u][v] > 0 && prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[dst] == usize::MAX {
            break;
        }
        let mut v = dst;
        while v != src {
            let u = prev[v];
            res[u][v] -= 1;
            res[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
    flow
}

// ---------------------------------------------------------------------------
// Inequality suite
// ---------------------------------------------------------------------------

type Q = Ratio<BigInt>;

#[derive(Debug, Default, Clone)]
pub struct Tally {
    pub checked: usize,
    pub fired: usize,
    pub equality_cases: usize,
    pub violations: Vec<String>,
}

pub type Tallies = BTreeMap<&'static str, Tally>;

struct Ctx<'a> {
    f: &'a FactoredInteger,
    r: usize,
    p: Vec<BigUint>,
    e: Vec<u32>,
}

impl Ctx<'_> {
    fn phi_of(&self, exps: &[u32]) -> BigUint {
        let mut acc = BigUint::one();
        for (p, &k) in self.p.iter().zip(exps) {
            if k > 0 {
                acc *= p.pow(k - 1) * (p - 1u32);
            }
        }
        acc
    }

    /// `phi(n / prod_j p_j^{drop_j})`.
    fn phi_div(&self, drop: &[(usize, u32)]) -> BigUint {
        let mut exps = self.e.clone();
        for &(j, k) in drop {
            exps[j - 1] -= k;
        }
        self.phi_of(&exps)
    }

    /// Product and totient of the primes indexed by `set` (1-based).
    fn rad_of(&self, set: &[usize]) -> (BigUint, BigUint) {
        let mut m = BigUint::one();
        let mut phi = BigUint::one();
        for &j in set {
            m *= &self.p[j - 1];
            phi *= &self.p[j - 1] - 1u32;
        }
        (m, phi)
    }

    fn all_but(&self, skip: &[usize]) -> Vec<usize> {
        (1..=self.r).filter(|j| !skip.contains(j)).collect()
    }

    fn prime(&self, j: usize) -> &BigUint {
        &self.p[j - 1]
    }

    fn n(&self, j: usize) -> u32 {
        self.e[j - 1]
    }

    fn beta(&self, a: usize, s: u32) -> BigUint {
        beta(self.f, a, s).unwrap().value
    }

    fn theta(&self, a: usize, b: usize, s: u32, t: u32) -> BigUint {
        theta(self.f, a, b, s, t).unwrap().value
    }

    fn deficient(&self, skip: &[usize]) -> bool {
        let (m, phi) = self.rad_of(&self.all_but(skip));
        phi * 2u32 < m
    }
}

fn record(
    t: &mut Tallies,
    name: &'static str,
    fired: bool,
    equality: bool,
    ok: bool,
    what: impl FnOnce() -> String,
) {
    let e = t.entry(name).or_default();
    e.checked += 1;
    if fired {
        e.fired += 1;
        if equality {
            e.equality_cases += 1;
        }
        if !ok {
            e.violations.push(what());
        }
    }
}

/// Runs every comparison and inequality check on one integer, recording
/// premise hits, equality cases and violations.
pub fn inequality_suite(f: &FactoredInteger, t: &mut Tallies) {
    let ctx = Ctx {
        f,
        r: f.r(),
        p: f.factors().iter().map(|pp| pp.prime.clone()).collect(),
        e: f.factors().iter().map(|pp| pp.exponent).collect(),
    };
    preliminaries(&ctx, t);
    if ctx.r >= 3 {
        beta_comparisons(&ctx, t);
        theta_ordering(&ctx, t);
    }
}

fn preliminaries(c: &Ctx, t: &mut Tallies) {
    let r = c.r;
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    let f = c.f;

    // partial sums of phi(n / p_a^l)
    for a in 1..=r {
        for s in 0..=c.n(a) {
            for k in 0..=s {
                let direct: BigUint = (k..=s).map(|l| c.phi_div(&[(a, l)])).sum();
                let closed = powerconn::arith::partial_totient_sum(f, a, k, s).unwrap();
                record(t, "partial totient sums", true, false, closed == direct, || {
                    format!("{f}: a={a} k={k} s={s}: {closed} vs {direct}")
                });
            }
        }
    }

    // double sums of phi(n / p_a^k p_b^l)
    for a in 1..=r {
        for b in 1..=r {
            if a == b {
                continue;
            }
            for s in 1..=c.n(a) {
                for u in 1..=c.n(b) {
                    let mut direct = BigUint::zero();
                    for k in 1..=s {
                        for l in 1..=u {
                            direct += c.phi_div(&[(a, k), (b, l)]);
                        }
                    }
                    let closed = powerconn::arith::double_totient_sum(f, a, b, s, u).unwrap();
                    record(t, "double totient sums", true, false, closed == direct, || {
                        format!("{f}: a={a} b={b} s={s} t={u}: {closed} vs {direct}")
                    });
                }
            }
        }
    }

    // mu-transfer between rad/p_a and rad/p_b
    let mus: [Q; 4] = [
        Q::from_integer(2.into()),
        Q::from_integer(3.into()),
        Q::new(5.into(), 2.into()),
        Q::new(7.into(), 3.into()),
    ];
    for a in 1..=r {
        for b in a + 1..=r {
            let (ma, pa) = c.rad_of(&c.all_but(&[a]));
            let (mb, pb) = c.rad_of(&c.all_but(&[b]));
            let (ma, pa, mb, pb) = (q(&ma), q(&pa), q(&mb), q(&pb));
            for mu in &mus {
                let prem = mu * &pa < ma;
                let concl = mu * &pb < mb;
                record(t, "mu transfer downward", prem, false, concl, || {
                    format!("{f}: a={a} b={b} mu={mu}")
                });
                let prem = mu * &pb > mb;
                let concl = mu * &pa > ma;
                record(t, "mu transfer upward", prem, false, concl, || {
                    format!("{f}: a={a} b={b} mu={mu}")
                });
            }
        }
    }

    // 3 phi(rad) >= rad when 2 p_1 >= r + 2
    {
        let (m, phi) = c.rad_of(&c.all_but(&[]));
        let prem = c.prime(1) * 2u32 >= BigUint::from(r + 2);
        let lhs = &phi * 3u32;
        let eq_case = r == 2 && *c.prime(1) == two && *c.prime(2) == three;
        let ok = lhs >= m && ((lhs == m) == eq_case);
        record(t, "3 phi(rad) >= rad for large p_1", prem, lhs == m, ok, || {
            format!("{f}: 3*{phi} vs {m}")
        });
    }

    let special12 = r >= 2 && *c.prime(1) == two && *c.prime(2) == three && c.n(1) >= 2;
    for i in 1..=r {
        for k in i + 1..=r {
            let lhs = c.phi_div(&[(i, 1)]);
            let rhs = c.prime(k).pow(c.n(k) - 1) * c.phi_div(&[(k, c.n(k))]);
            let eq_case = (i, k) == (1, 2) && special12;
            let ok = lhs >= rhs && ((lhs == rhs) == eq_case);
            record(t, "phi(n/p_i) >= p_k^(n_k-1) phi(n/p_k^n_k)", true, lhs == rhs, ok, || {
                format!("{f}: i={i} k={k}: {lhs} vs {rhs}")
            });

            let rhs = c.phi_div(&[(k, 1)]);
            let eq_case = eq_case && c.n(2) == 1;
            let ok = lhs >= rhs && ((lhs == rhs) == eq_case);
            record(t, "phi(n/p_i) >= phi(n/p_k)", true, lhs == rhs, ok, || {
                format!("{f}: i={i} k={k}: {lhs} vs {rhs}")
            });
        }
    }

    // half-totient bound on p_1 ... p_{r-1}
    {
        let (m, phi) = c.rad_of(&c.all_but(&[r]));
        let prem = *c.prime(1) >= BigUint::from(r);
        let lhs = &phi * 2u32;
        let eq_case = r == 2 && *c.prime(1) == two;
        let ok = lhs >= m && ((lhs == m) == eq_case);
        record(t, "2 phi(p_1..p_(r-1)) >= p_1..p_(r-1) for p_1 >= r", prem, lhs == m, ok, || format!("{f}: 2*{phi} vs {m}"));
    }

    // (|I| + 1) phi bound over every non-empty index set
    for mask in 1u32..(1 << r) {
        let set: Vec<usize> = (1..=r).filter(|j| mask >> (j - 1) & 1 == 1).collect();
        let size = set.len();
        let (m, phi) = c.rad_of(&set);
        let lhs = &phi * (size as u32 + 1);
        let eq_case = (set == [1] && *c.prime(1) == two)
            || (set == [1, 2] && *c.prime(1) == two && *c.prime(2) == three);
        let mut ok = lhs >= m && ((lhs == m) == eq_case);
        // k phi = prod only in the two equality cases
        if (&m % &phi).is_zero() {
            let k = &m / &phi;
            ok &= (set == [1] && k == two && *c.prime(1) == two)
                || (set == [1, 2] && k == three && *c.prime(1) == two && *c.prime(2) == three);
        }
        record(t, "(|I|+1) phi(prod_I) >= prod_I", true, lhs == m, ok, || {
            format!("{f}: I={set:?}: {lhs} vs {m}")
        });
    }
}

fn beta_comparisons(c: &Ctx, t: &mut Tallies) {
    let r = c.r;
    let f = c.f;

    // strict monotonicity of beta_a^s in s
    for a in 1..=r {
        if c.n(a) < 2 {
            continue;
        }
        let seq: Vec<BigUint> = (1..=c.n(a)).map(|s| c.beta(a, s)).collect();
        let up = seq.windows(2).all(|w| w[0] < w[1]);
        let down = seq.windows(2).all(|w| w[0] > w[1]);
        let ok = if c.deficient(&[a]) { down } else { up };
        record(t, "beta_a^s monotone in s", true, false, ok, || {
            format!("{f}: a={a}: {seq:?}")
        });
    }

    // p_a^s < p_b => beta_a^s > beta_b^1
    for a in 1..=r {
        for b in a + 1..=r {
            for s in 1..=c.n(a) {
                let prem = c.prime(a).pow(s) < *c.prime(b);
                let ok = c.beta(a, s) > c.beta(b, 1);
                record(t, "p_a^s < p_b implies beta_a^s > beta_b^1", prem, false, ok, || format!("{f}: a={a} b={b} s={s}"));
            }
        }
    }

    let chain: Vec<BigUint> = (1..=r).map(|a| c.beta(a, 1)).collect();
    record(t, "beta_a^1 decreasing in a", true, false, chain.windows(2).all(|w| w[0] > w[1]), || {
        format!("{f}: {chain:?}")
    });

    record(t, "beta_r^1 < beta_1^n_1", true, false, c.beta(r, 1) < c.beta(1, c.n(1)), || {
        format!("{f}")
    });

    for a in 1..=r {
        let def_a = c.deficient(&[a]);
        for b in a + 1..=r {
            for s in 1..=c.n(a) {
                for u in 1..=c.n(b) {
                    let prem = def_a && c.prime(a).pow(s - 1) <= c.prime(b).pow(u - 1);
                    let ok = c.beta(a, s) > c.beta(b, u);
                    record(t, "p_a^(s-1) <= p_b^(t-1) implies beta_a^s > beta_b^t", prem, false, ok, || {
                        format!("{f}: a={a} b={b} s={s} t={u}")
                    });
                }
            }

            // beta_a^{n_a} against beta_b^{n_b}
            let pa = BigInt::from(c.prime(a).clone());
            let pb = BigInt::from(c.prime(b).clone());
            let rhs = BigInt::from(r as u64 - 1) * &pa;
            let twophi = (&pa - 1) * 2;
            let wins = c.beta(a, c.n(a)) > c.beta(b, c.n(b));
            let h1 = &pb * &pb * (&pb - &pa) + &twophi >= rhs;
            let h2 = &pb * (&pb - &pa) + &twophi >= rhs;
            record(t, "beta_a^n_a > beta_b^n_b, n_b >= 3", def_a && c.n(b) >= 3 && h1, false, wins, || {
                format!("{f}: a={a} b={b}")
            });
            record(t, "beta_a^n_a > beta_b^n_b, n_b = 2", def_a && c.n(b) == 2 && h2, false, wins, || {
                format!("{f}: a={a} b={b}")
            });
        }
    }

    for a in 1..r {
        let def_a = c.deficient(&[a]);
        let wins = c.beta(a, c.n(a)) > c.beta(r, c.n(r));
        record(t, "beta_a^n_a > beta_r^n_r, n_r >= 3", def_a && c.n(r) >= 3, false, wins, || format!("{f}: a={a}"));
        let gap = c.prime(r) - c.prime(a) >= BigUint::from(r - 3);
        record(t, "beta_a^n_a > beta_r^n_r, n_r = 2", def_a && c.n(r) == 2 && gap, false, wins, || {
            format!("{f}: a={a}")
        });
    }
}

fn theta_ordering(c: &Ctx, t: &mut Tallies) {
    let r = c.r;
    let f = c.f;
    for a in 1..=r {
        for b in 1..=r {
            if a == b || c.n(b) < 2 {
                continue;
            }
            let al = alpha(f, a, b).unwrap();
            let na = c.n(a);
            let mut seq = vec![c.beta(a, na)];
            seq.extend((1..c.n(b)).map(|u| c.theta(a, b, na, u)));
            let ok = if al.is_zero() {
                seq.windows(2).all(|w| w[0] == w[1])
            } else if al.is_negative() {
                seq.windows(2).all(|w| w[0] > w[1])
            } else {
                seq.windows(2).all(|w| w[0] < w[1])
            };
            record(t, "sign of alpha orders theta_(a,b)^(n_a,t)", true, al.is_zero(), ok, || {
                format!("{f}: a={a} b={b} alpha={al}: {seq:?}")
            });
        }
    }
}

fn q(x: &BigUint) -> Q {
    Q::from_integer(BigInt::from(x.clone()))
}
