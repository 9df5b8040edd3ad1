//! Vertex coverings of a forbidden graph and the families built from them.
//!
//! A covering of `F` is a vertex set `S` whose removal leaves no edge. The
//! covering family `F[p]` collects the induced graphs `F[S]` over coverings of
//! size at most `p`, and falls back to `{K_{p+1}}` when no such covering
//! exists. If some `H`-free graph on `p` vertices is completely joined to a
//! large independent set, the result stays `F`-free exactly when `H` avoids
//! every member of `F[p]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::containment::GraphFamily;
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::invariants::{chromatic_number, for_each_subset, matching_number};

/// Is `set` a covering of `f`, i.e. is `f - set` edgeless?
pub fn is_covering(f: &Graph, set: VertexSet) -> bool {
    let rest = f.vertices().difference(set).0;
    f.rows()
        .iter()
        .enumerate()
        .all(|(v, &row)| rest & (1 << v) == 0 || row & rest == 0)
}

/// Every covering of size at most `p`, ordered by size and then
/// lexicographically. `V(F)` itself qualifies when `|V(F)| <= p`.
pub fn all_coverings(f: &Graph, p: usize) -> Vec<VertexSet> {
    let n = f.order();
    let mut out = Vec::new();
    for k in 0..=p.min(n) {
        for_each_subset(n, k, &mut |s| {
            if is_covering(f, s) {
                out.push(s);
            }
            true
        });
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoveringReport {
    pub graph: Graph,
    pub p: usize,
    pub covers: Vec<VertexSet>,
    /// `F[p]`, deduplicated up to isomorphism but not minimalized.
    pub family: GraphFamily,
    /// True iff `F` has no covering of size at most `p` and `F[p] = {K_{p+1}}`.
    pub fallback_used: bool,
}

/// The covering family `F[p]` together with the coverings that produced it.
pub fn covering_report(f: &Graph, p: usize) -> Result<CoveringReport> {
    let covers = all_coverings(f, p);
    let label = format!("F[{p}] of {}", f.to_graph6());
    let (family, fallback_used) = if covers.is_empty() {
        (GraphFamily::from_members(label, [Graph::complete(p + 1)?]), true)
    } else {
        let mut fam = GraphFamily::new(label);
        for &s in &covers {
            fam.insert(f.induced(s)?);
        }
        (fam, false)
    };
    Ok(CoveringReport {
        graph: *f,
        p,
        covers,
        family,
        fallback_used,
    })
}

pub fn family_fp(f: &Graph, p: usize) -> Result<GraphFamily> {
    Ok(covering_report(f, p)?.family)
}

/// Minimum size of an independent covering; infinite unless `F` is bipartite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CoverNumber {
    Finite(usize),
    Infinite,
}

impl CoverNumber {
    pub fn finite(self) -> Option<usize> {
        match self {
            CoverNumber::Finite(p) => Some(p),
            CoverNumber::Infinite => None,
        }
    }

    /// Exclusive upper bound `min(s + 1, p(F))` for covering sizes in the
    /// profile of `ex(p, K_{r-1}, F[p])`.
    pub fn profile_bound(self, s: usize) -> usize {
        match self {
            CoverNumber::Finite(p) => p.min(s + 1),
            CoverNumber::Infinite => s + 1,
        }
    }
}

impl fmt::Display for CoverNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverNumber::Finite(p) => write!(f, "{p}"),
            CoverNumber::Infinite => f.write_str("inf"),
        }
    }
}

pub fn is_independent(f: &Graph, set: VertexSet) -> bool {
    set.iter().all(|v| f.neighbors(v).intersection(set).is_empty())
}

pub fn independent_cover_number(f: &Graph) -> CoverNumber {
    if !f.is_bipartite() {
        return CoverNumber::Infinite;
    }
    let n = f.order();
    for k in 0..=n {
        let mut found = false;
        for_each_subset(n, k, &mut |s| {
            found = is_covering(f, s) && is_independent(f, s);
            !found
        });
        if found {
            return CoverNumber::Finite(k);
        }
    }
    unreachable!("one side of a bipartition is an independent covering")
}

/// Some single edge deletion lowers the chromatic number.
pub fn is_color_critical(f: &Graph) -> bool {
    let chi = chromatic_number(f);
    f.edges().any(|(u, v)| {
        let mut h = *f;
        h.remove_edge_unchecked(u, v);
        chromatic_number(&h) < chi
    })
}

/// Every component is a tree whose two colour classes have equal size.
pub fn is_balanced_forest(f: &Graph) -> bool {
    if !f.is_forest() {
        return false;
    }
    let Some(side) = f.bipartition() else {
        return false;
    };
    f.components().iter().all(|c| 2 * c.intersection(side).len() == c.len())
}

pub fn has_perfect_matching(f: &Graph) -> bool {
    2 * matching_number(f) == f.order()
}
