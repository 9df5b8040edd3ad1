//! Exact invariants: clique counts, chromatic number, matching number and
//! Tutte–Berge certificates.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, Graph, VertexSet};

/// Number of `r`-vertex cliques. `r = 0` counts the empty clique once.
pub fn count_cliques(g: &Graph, r: usize) -> u64 {
    fn count(rows: &[u64], cand: u64, r: usize) -> u64 {
        match r {
            0 => 1,
            1 => cand.count_ones() as u64,
            _ if (cand.count_ones() as usize) < r => 0,
            _ => {
                let mut total = 0;
                let mut rest = cand;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    // only higher-indexed partners, so each clique is counted once
                    total += count(rows, rest & rows[v], r - 1);
                }
                total
            }
        }
    }
    count(g.rows(), g.vertices().0, r)
}

pub fn clique_number(g: &Graph) -> usize {
    fn grow(rows: &[u64], cand: u64, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow(rows, rest & rows[v], size + 1, best);
        }
    }
    let mut best = 0;
    grow(g.rows(), g.vertices().0, 0, &mut best);
    best
}

/// Largest-first greedy colouring; returns the number of colours used.
fn greedy_colors(g: &Graph, order: &[usize]) -> usize {
    let mut classes: Vec<u64> = Vec::new();
    for &v in order {
        match classes.iter_mut().find(|c| **c & g.rows()[v] == 0) {
            Some(c) => *c |= bit(v),
            None => classes.push(bit(v)),
        }
    }
    classes.len()
}

fn colorable(g: &Graph, order: &[usize], k: usize) -> bool {
    fn assign(g: &Graph, order: &[usize], i: usize, classes: &mut Vec<u64>, k: usize) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        for c in 0..classes.len() {
            if classes[c] & g.rows()[v] == 0 {
                classes[c] |= bit(v);
                if assign(g, order, i + 1, classes, k) {
                    return true;
                }
                classes[c] &= !bit(v);
            }
        }
        // a fresh colour is interchangeable with any other unused one
        if classes.len() < k {
            classes.push(bit(v));
            if assign(g, order, i + 1, classes, k) {
                return true;
            }
            classes.pop();
        }
        false
    }
    assign(g, order, 0, &mut Vec::with_capacity(k), k)
}

/// Exact chromatic number by branch and bound between the clique number and a
/// greedy colouring.
pub fn chromatic_number(g: &Graph) -> usize {
    if g.order() == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let upper = greedy_colors(g, &order);
    let lower = clique_number(g);
    (lower..upper).find(|&k| colorable(g, &order, k)).unwrap_or(upper)
}

/// Size of a maximum matching.
///
/// Any non-isolated vertex is covered by some maximum matching, so the search
/// branches only over the partner of one minimum-degree vertex.
pub fn matching_number(g: &Graph) -> usize {
    fn solve(rows: &[u64], set: u64, memo: &mut HashMap<u64, usize>) -> usize {
        let mut s = set;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if rows[v] & s == 0 {
                s &= !bit(v);
            }
        }
        if s == 0 {
            return 0;
        }
        if let Some(&known) = memo.get(&s) {
            return known;
        }
        let v = VertexSet(s)
            .iter()
            .min_by_key(|&v| (rows[v] & s).count_ones())
            .expect("non-empty");
        let ceiling = s.count_ones() as usize / 2;
        let mut best = 0;
        for u in VertexSet(rows[v] & s) {
            best = best.max(1 + solve(rows, s & !bit(v) & !bit(u), memo));
            if best == ceiling {
                break;
            }
        }
        memo.insert(s, best);
        best
    }
    solve(g.rows(), g.vertices().0, &mut HashMap::new())
}

/// True iff `g` has no matching with `s + 1` edges.
pub fn is_matching_free(g: &Graph, s: usize) -> bool {
    matching_number(g) <= s
}

/// A set `B` together with the component sizes of `G - B`, certifying the
/// matching number through `|B| + sum floor(|G_i| / 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteBergeCertificate {
    pub barrier: Vec<usize>,
    /// Sizes of the components of `G - B`, largest first.
    pub component_sizes: Vec<usize>,
    pub value: usize,
}

impl TutteBergeCertificate {
    /// Recompute the bound from scratch for `barrier` in `g`.
    pub fn evaluate(g: &Graph, barrier: VertexSet) -> Self {
        let rest = g.vertices().difference(barrier);
        let mut component_sizes: Vec<usize> = g.components_within(rest).iter().map(|c| c.len()).collect();
        component_sizes.sort_unstable_by(|a, b| b.cmp(a));
        let value = barrier.len() + component_sizes.iter().map(|c| c / 2).sum::<usize>();
        TutteBergeCertificate {
            barrier: barrier.to_vec(),
            component_sizes,
            value,
        }
    }

    pub fn barrier_set(&self) -> VertexSet {
        self.barrier.iter().copied().collect()
    }
}

/// Visit every `k`-subset of `0..n` in lexicographic order of sorted lists.
/// Stops early when `visit` returns `false`.
pub(crate) fn for_each_subset(n: usize, k: usize, visit: &mut impl FnMut(VertexSet) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, acc: u64, visit: &mut impl FnMut(VertexSet) -> bool) -> bool {
        if k == 0 {
            return visit(VertexSet(acc));
        }
        for v in start..=(n - k) {
            if !rec(v + 1, n, k - 1, acc | bit(v), visit) {
                return false;
            }
        }
        true
    }
    k > n || rec(0, n, k, 0, visit)
}

/// The barrier minimising `|B| + sum floor(|G_i| / 2)` over all vertex sets.
/// Ties go to the smallest `|B|`, then the lexicographically least set.
pub fn tutte_berge_certificate(g: &Graph) -> TutteBergeCertificate {
    let n = g.order();
    let mut best = TutteBergeCertificate::evaluate(g, VertexSet::EMPTY);
    let mut k = 1;
    // value >= |B|, so no barrier of size >= best.value can improve
    while k < best.value && k <= n {
        for_each_subset(n, k, &mut |b| {
            let cert = TutteBergeCertificate::evaluate(g, b);
            if cert.value < best.value {
                best = cert;
            }
            true
        });
        k += 1;
    }
    best
}
