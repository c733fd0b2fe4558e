//! Brute-force references for the closed forms.
//!
//! [`vertex_connectivity`] is an exact Menger computation: unit-capacity
//! max-flow on the vertex-split digraph, with endpoints chosen by the
//! minimum-degree reduction. It only uses the adjacency relation of the graph.
//! [`min_cutsets_brute`] enumerates class unions on the quotient and
//! [`min_cutsets_unrestricted`] enumerates arbitrary vertex subsets.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cutset::DivisorSet;
use crate::error::{Error, Result};
use crate::graph::{ExplicitGraph, OrderClassGraph, SimpleGraph};

/// Default cap on the number of order classes for [`min_cutsets_brute`].
pub const DEFAULT_CLASS_LIMIT: usize = 16;

/// Default cap on subsets tried by [`min_cutsets_unrestricted`].
pub const DEFAULT_SUBSET_LIMIT: u64 = 5_000_000;

/// Unit-capacity residual network; arcs are stored in pairs `(e, e ^ 1)`.
#[derive(Clone)]
struct FlowNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    next: Vec<usize>,
    cap: Vec<u8>,
}

const NIL: usize = usize::MAX;

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: vec![NIL; nodes],
            to: Vec::new(),
            next: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_arc(&mut self, u: usize, v: usize) {
        for (a, b, c) in [(u, v, 1u8), (v, u, 0u8)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    /// Dinic's algorithm, stopping once the flow reaches `cap`.
    fn max_flow(&mut self, s: usize, t: usize, cap: usize) -> usize {
        let n = self.head.len();
        let mut flow = 0;
        let mut level = vec![usize::MAX; n];
        let mut iter = vec![NIL; n];
        while flow < cap {
            level.iter_mut().for_each(|l| *l = usize::MAX);
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let mut e = self.head[u];
                while e != NIL {
                    let v = self.to[e];
                    if self.cap[e] > 0 && level[v] == usize::MAX {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                    e = self.next[e];
                }
            }
            if level[t] == usize::MAX {
                break;
            }
            iter.copy_from_slice(&self.head);
            while flow < cap && self.augment(s, t, &level, &mut iter) {
                flow += 1;
            }
        }
        flow
    }

    /// One unit along a shortest augmenting path, iteratively.
    fn augment(&mut self, s: usize, t: usize, level: &[usize], iter: &mut [usize]) -> bool {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                for &e in &path {
                    self.cap[e] -= 1;
                    self.cap[e ^ 1] += 1;
                }
                return true;
            }
            let mut advanced = false;
            while iter[u] != NIL {
                let e = iter[u];
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                iter[u] = self.next[e];
            }
            if !advanced {
                // dead end: retreat and discard the arc that led here
                match path.pop() {
                    None => return false,
                    Some(e) => {
                        u = self.to[e ^ 1];
                        iter[u] = self.next[iter[u]];
                    }
                }
            }
        }
    }
}

/// Vertex-split network: `v_in = 2v`, `v_out = 2v + 1`.
fn split_network<G: SimpleGraph + ?Sized>(g: &G, adj: &[Vec<usize>]) -> FlowNetwork {
    let n = g.vertex_count();
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        net.add_arc(2 * v, 2 * v + 1);
    }
    for (u, nbrs) in adj.iter().enumerate() {
        for &v in nbrs {
            net.add_arc(2 * u + 1, 2 * v);
        }
    }
    net
}

/// Maximum number of internally vertex-disjoint `x`-`y` paths for
/// non-adjacent `x != y`, capped at `cap`.
pub fn local_connectivity<G: SimpleGraph + ?Sized>(g: &G, x: usize, y: usize, cap: usize) -> usize {
    let adj = adjacency_lists(g);
    let mut net = split_network(g, &adj);
    net.max_flow(2 * x + 1, 2 * y, cap)
}

fn adjacency_lists<G: SimpleGraph + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    (0..n)
        .map(|u| (0..n).filter(|&v| g.adjacent(u, v)).collect())
        .collect()
}

/// Exact vertex connectivity. Returns `n - 1` for complete graphs.
///
/// With `v` of minimum degree, `kappa` is the minimum local connectivity over
/// pairs `(v, w)` with `w` outside `N[v]` and non-adjacent pairs inside `N(v)`.
/// Swapping true twins is an automorphism, so pairs are deduplicated by the
/// twin classes of their endpoints.
pub fn vertex_connectivity<G: SimpleGraph + Sync + ?Sized>(g: &G) -> usize {
    let n = g.vertex_count();
    if n <= 1 {
        return 0;
    }
    let adj = adjacency_lists(g);
    let (v, min_degree) = adj
        .iter()
        .enumerate()
        .map(|(i, a)| (i, a.len()))
        .min_by_key(|&(i, d)| (d, i))
        .expect("nonempty graph");
    if min_degree == n - 1 {
        return n - 1;
    }

    // true-twin classes: identical closed neighbourhoods
    let words = n.div_ceil(64);
    let mut twin_ids: HashMap<Vec<u64>, usize> = HashMap::new();
    let twin: Vec<usize> = (0..n)
        .map(|u| {
            let mut row = vec![0u64; words];
            row[u / 64] |= 1 << (u % 64);
            for &w in &adj[u] {
                row[w / 64] |= 1 << (w % 64);
            }
            let next = twin_ids.len();
            *twin_ids.entry(row).or_insert(next)
        })
        .collect();

    let in_nv: Vec<bool> = {
        let mut m = vec![false; n];
        for &w in &adj[v] {
            m[w] = true;
        }
        m
    };
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    let mut push = |x: usize, y: usize, reps: &mut Vec<(usize, usize)>| {
        let key = (twin[x].min(twin[y]), twin[x].max(twin[y]));
        if pairs.insert(key) {
            reps.push((x, y));
        }
    };
    for w in 0..n {
        if w != v && !in_nv[w] {
            push(v, w, &mut reps);
        }
    }
    let nv = &adj[v];
    for (i, &x) in nv.iter().enumerate() {
        for &y in &nv[i + 1..] {
            if !g.adjacent(x, y) {
                push(x, y, &mut reps);
            }
        }
    }

    let base = split_network(g, &adj);
    reps.par_iter()
        .map(|&(x, y)| {
            let mut net = base.clone();
            net.max_flow(2 * x + 1, 2 * y, min_degree)
        })
        .min()
        .unwrap_or(min_degree)
        .min(min_degree)
}

/// Every union of order classes of total weight `kappa` whose removal
/// disconnects the quotient. Classes adjacent to all others are forced in.
pub fn min_cutsets_brute(
    q: &OrderClassGraph,
    kappa: &BigUint,
    class_limit: usize,
) -> Result<Vec<DivisorSet>> {
    let k = q.len();
    if k > class_limit {
        return Err(Error::limit("class-union enumeration", k, class_limit));
    }
    let budget = kappa
        .to_u64()
        .ok_or_else(|| Error::limit("class-union enumeration", kappa, u64::MAX))?;
    let weights: Vec<u64> = q
        .weights()
        .iter()
        .map(|w| w.to_u64().expect("weight below kappa-sized n"))
        .collect();
    let universal: Vec<bool> = (0..k)
        .map(|i| (0..k).all(|j| j == i || q.adjacent(i, j)))
        .collect();
    let forced: u64 = (0..k).filter(|&i| universal[i]).map(|i| weights[i]).sum();
    if forced > budget {
        return Ok(Vec::new());
    }
    let free: Vec<usize> = (0..k).filter(|&i| !universal[i]).collect();
    let mut removed = universal.clone();
    let mut found = Vec::new();
    search_classes(q, &free, &weights, 0, budget - forced, &mut removed, &mut found);
    Ok(found
        .into_iter()
        .map(|rem| {
            DivisorSet::new(
                q.parent(),
                (0..k).filter(|&i| rem[i]).map(|i| q.divisors()[i].clone()),
            )
        })
        .collect())
}

fn search_classes(
    q: &OrderClassGraph,
    free: &[usize],
    weights: &[u64],
    pos: usize,
    left: u64,
    removed: &mut Vec<bool>,
    found: &mut Vec<Vec<bool>>,
) {
    if left == 0 {
        let alive: Vec<bool> = removed.iter().map(|r| !r).collect();
        if alive.iter().any(|&a| a) && q.components(&alive).len() > 1 {
            found.push(removed.clone());
        }
        return;
    }
    if pos == free.len() {
        return;
    }
    let c = free[pos];
    if weights[c] <= left {
        removed[c] = true;
        search_classes(q, free, weights, pos + 1, left - weights[c], removed, found);
        removed[c] = false;
    }
    search_classes(q, free, weights, pos + 1, left, removed, found);
}

/// Every vertex subset of size `kappa` whose removal disconnects `g`, with no
/// class-union assumption. Universal vertices are forced in; the remaining
/// choices are enumerated outright, guarded by `subset_limit`.
pub fn min_cutsets_unrestricted(
    g: &ExplicitGraph,
    kappa: usize,
    subset_limit: u64,
) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    let universal: Vec<usize> = (0..n)
        .filter(|&u| (0..n).all(|v| v == u || g.adjacent(u, v)))
        .collect();
    if universal.len() > kappa {
        return Ok(Vec::new());
    }
    let rest: Vec<usize> = (0..n).filter(|u| !universal.contains(u)).collect();
    let pick = kappa - universal.len();
    if pick > rest.len() {
        return Ok(Vec::new());
    }
    let combos = binomial(rest.len() as u64, pick as u64);
    if combos > subset_limit as u128 {
        return Err(Error::limit("unrestricted cut-set search", combos, subset_limit));
    }
    let mut found = Vec::new();
    let mut idx: Vec<usize> = (0..pick).collect();
    let mut removed = vec![false; n];
    loop {
        removed.iter_mut().for_each(|r| *r = false);
        for &u in &universal {
            removed[u] = true;
        }
        for &i in &idx {
            removed[rest[i]] = true;
        }
        if g.disconnects(&removed) {
            found.push((0..n).filter(|&u| removed[u]).collect());
        }
        // next combination in lexicographic order
        let mut i = pick;
        loop {
            if i == 0 {
                return Ok(found);
            }
            i -= 1;
            if idx[i] < rest.len() - pick + i {
                idx[i] += 1;
                for j in i + 1..pick {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
