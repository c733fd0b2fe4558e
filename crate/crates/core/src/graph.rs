//! The power graph `P(C_n)` in two forms.
//!
//! Two distinct elements are adjacent iff the order of one divides the order
//! of the other. [`OrderClassGraph`] collapses each order class `E_d` to one
//! weighted vertex; [`ExplicitGraph`] keeps every residue as a vertex and is
//! what the brute-force oracle runs on.

use std::collections::VecDeque;
use std::io::{self, Write};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{Divisor, FactoredInteger};
use crate::cutset::DivisorSet;
use crate::error::{Error, Result};

/// Default size limit for explicit graphs handed to the oracle.
pub const DEFAULT_ORACLE_LIMIT: u64 = 600;

/// Minimal adjacency interface used by the connectivity oracle.
pub trait SimpleGraph {
    fn vertex_count(&self) -> usize;
    /// Adjacency between distinct vertices. Must be symmetric and irreflexive.
    fn adjacent(&self, u: usize, v: usize) -> bool;
}

/// Quotient of `P(C_n)` by order classes.
#[derive(Debug, Clone)]
pub struct OrderClassGraph {
    f: FactoredInteger,
    divisors: Vec<Divisor>,
    weights: Vec<BigUint>,
    strides: Vec<usize>,
}

impl OrderClassGraph {
    pub fn new(f: &FactoredInteger) -> Result<Self> {
        let divisors = f.divisors()?;
        let weights = divisors.iter().map(|d| f.totient_of_divisor(d)).collect();
        let mut strides = vec![1usize; f.r()];
        for i in (0..f.r().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (f.exponent(i + 2) as usize + 1);
        }
        Ok(OrderClassGraph {
            f: f.clone(),
            divisors,
            weights,
            strides,
        })
    }

    pub fn parent(&self) -> &FactoredInteger {
        &self.f
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.divisors
    }

    /// `phi(d)` for each class, in divisor order.
    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn index_of(&self, d: &Divisor) -> usize {
        d.exponents()
            .iter()
            .zip(&self.strides)
            .map(|(&e, &s)| e as usize * s)
            .sum()
    }

    /// Classes `i != j` are joined iff one divisor divides the other.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && {
            let (a, b) = (&self.divisors[i], &self.divisors[j]);
            a.divides(b) || b.divides(a)
        }
    }

    /// Connected components of the classes with `alive[i]` set, each sorted,
    /// ordered by smallest member.
    pub fn components(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if !alive[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in 0..self.len() {
                    if alive[v] && !seen[v] && self.adjacent(u, v) {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Removes every class in `set` and reports whether the rest falls apart.
    pub fn is_cutset(&self, set: &DivisorSet) -> Result<CutCheck> {
        if set.parent() != &self.f {
            return Err(Error::Domain("divisor set belongs to a different n".into()));
        }
        let mut alive = vec![true; self.len()];
        for d in set.members() {
            alive[self.index_of(d)] = false;
        }
        if !alive.iter().any(|&a| a) {
            return Err(Error::Domain("the set covers the whole group".into()));
        }
        let components: Vec<Vec<Divisor>> = self
            .components(&alive)
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.divisors[i].clone()).collect())
            .collect();
        Ok(CutCheck {
            disconnected: components.len() > 1,
            components,
        })
    }
}

/// Outcome of [`OrderClassGraph::is_cutset`]: the surviving classes grouped by
/// component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCheck {
    pub disconnected: bool,
    pub components: Vec<Vec<Divisor>>,
}

/// Convenience wrapper building the quotient first.
pub fn is_cutset(f: &FactoredInteger, set: &DivisorSet) -> Result<CutCheck> {
    OrderClassGraph::new(f)?.is_cutset(set)
}

/// `P(C_n)` on the residues `0..n`. Adjacency is looked up through the class
/// of each residue, so memory stays linear in `n`.
#[derive(Debug, Clone)]
pub struct ExplicitGraph {
    n: usize,
    class_of: Vec<usize>,
    class_adj: Vec<Vec<bool>>,
    quotient: OrderClassGraph,
    edge_count: u64,
}

impl ExplicitGraph {
    pub fn new(f: &FactoredInteger, limit: u64) -> Result<Self> {
        let n_big = f.value();
        let n = match n_big.to_u64() {
            Some(v) if v <= limit => v as usize,
            _ => return Err(Error::limit("explicit power graph", &n_big, limit)),
        };
        let quotient = OrderClassGraph::new(f)?;
        let k = quotient.len();
        let class_adj: Vec<Vec<bool>> = (0..k)
            .map(|i| (0..k).map(|j| i == j || quotient.adjacent(i, j)).collect())
            .collect();
        let class_of: Vec<usize> = (0..n)
            .map(|x| {
                let g = if x == 0 { n } else { n.gcd(&x) };
                let d = f
                    .divisor_of(&BigUint::from(n / g))
                    .expect("order divides n");
                quotient.index_of(&d)
            })
            .collect();
        let w: Vec<u64> = quotient
            .weights()
            .iter()
            .map(|x| x.to_u64().expect("small n"))
            .collect();
        let mut edge_count = 0u64;
        for i in 0..k {
            edge_count += w[i] * (w[i] - 1) / 2;
            for j in i + 1..k {
                if class_adj[i][j] {
                    edge_count += w[i] * w[j];
                }
            }
        }
        Ok(ExplicitGraph {
            n,
            class_of,
            class_adj,
            quotient,
            edge_count,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// Index of the order class of residue `x` in the quotient.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn quotient(&self) -> &OrderClassGraph {
        &self.quotient
    }

    /// Whether deleting `removed` leaves at least two components.
    pub fn disconnects(&self, removed: &[bool]) -> bool {
        let Some(start) = (0..self.n).find(|&v| !removed[v]) else {
            return false;
        };
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for v in 0..self.n {
                if !removed[v] && !seen[v] && self.adjacent(u, v) {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached < removed.iter().filter(|&&r| !r).count()
    }

    /// Writes one `u v` line per edge, `u < v`, 0-based residues.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    writeln!(out, "{u} {v}")?;
                }
            }
        }
        Ok(())
    }
}

impl SimpleGraph for ExplicitGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.class_adj[self.class_of[u]][self.class_of[v]]
    }
}
