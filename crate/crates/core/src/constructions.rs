//! Extremal candidate graphs.
//!
//! `G(n, s, F)` is `K_{s, n-s}` with a best `F`-free graph placed inside the
//! part of size `s`. Since the other part is independent, every `r`-clique
//! uses at most one vertex outside the `s`-part, so
//! `N_r(G(n, s, Q)) = N_{r-1}(Q) (n - s) + N_r(Q)` for the filling `Q`.

use serde::{Deserialize, Serialize};

use crate::canon::canonical_graph;
use crate::containment::GraphFamily;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::count_cliques;
use crate::solver::{enumerate_free, SolverConfig};

/// What the filling of the `s`-part maximises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Total edge count.
    Edges,
    /// Total number of `K_r` in the whole graph.
    Cliques { r: usize },
}

impl Objective {
    pub fn clique_order(self) -> usize {
        match self {
            Objective::Edges => 2,
            Objective::Cliques { r } => r,
        }
    }
}

/// `N_r` of `G(n, s, filling)` without building it.
pub fn filling_value(filling: &Graph, n: usize, r: usize) -> u64 {
    let s = filling.order();
    let outside = (n - s) as u64;
    let lower = if r == 0 { 0 } else { count_cliques(filling, r - 1) };
    lower * outside + count_cliques(filling, r)
}

/// `filling` joined completely to an independent set of `n - |filling|` vertices.
pub fn g_n_s_with_filling(n: usize, filling: &Graph) -> Result<Graph> {
    let s = filling.order();
    if s > n {
        return Err(Error::InvalidParameter(format!("s = {s} exceeds n = {n}")));
    }
    filling.join_all(&Graph::empty(n - s)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub graph: Graph,
    pub filling: Graph,
    /// Objective value of `graph`.
    pub value: u64,
}

/// Every `fam`-free filling on `s` vertices attaining the best objective,
/// sorted in canonical form, with that best value.
pub fn optimal_fillings(
    n: usize,
    s: usize,
    fam: &GraphFamily,
    objective: Objective,
    cfg: &SolverConfig,
) -> Result<(u64, Vec<Graph>)> {
    if s > n {
        return Err(Error::InvalidParameter(format!("s = {s} exceeds n = {n}")));
    }
    Graph::empty(n)?;
    let r = objective.clique_order();
    let mut best: Option<u64> = None;
    let mut fillings = Vec::new();
    for q in enumerate_free(s, fam, cfg)? {
        let v = filling_value(&q, n, r);
        match best {
            Some(b) if b > v => {}
            Some(b) if b == v => fillings.push(q),
            _ => {
                best = Some(v);
                fillings = vec![q];
            }
        }
    }
    match best {
        Some(b) => Ok((b, fillings)),
        None => Err(Error::NoAdmissibleGraph {
            n: s,
            family: fam.label().to_string(),
        }),
    }
}

/// `(ex(s, K_{r-1}, fam), ex(s, K_r, fam))`, each maximised on its own.
pub fn separate_maxima(s: usize, fam: &GraphFamily, r: usize, cfg: &SolverConfig) -> Result<(u64, u64)> {
    if r == 0 {
        return Err(Error::InvalidParameter("clique order r must be at least 1".into()));
    }
    let mut best: Option<(u64, u64)> = None;
    for q in enumerate_free(s, fam, cfg)? {
        let (a, b) = (count_cliques(&q, r - 1), count_cliques(&q, r));
        best = Some(best.map_or((a, b), |(x, y)| (x.max(a), y.max(b))));
    }
    best.ok_or_else(|| Error::NoAdmissibleGraph {
        n: s,
        family: fam.label().to_string(),
    })
}

/// `G(n, s, fam)` with the first optimal filling in canonical order.
pub fn build_g_n_s(
    n: usize,
    s: usize,
    fam: &GraphFamily,
    objective: Objective,
    cfg: &SolverConfig,
) -> Result<Construction> {
    let (value, fillings) = optimal_fillings(n, s, fam, objective, cfg)?;
    let filling = fillings[0];
    Ok(Construction {
        graph: g_n_s_with_filling(n, &filling)?,
        filling,
        value,
    })
}

/// Every optimal `G(n, s, fam)` up to isomorphism, canonical and sorted.
pub fn all_g_n_s(
    n: usize,
    s: usize,
    fam: &GraphFamily,
    objective: Objective,
    cfg: &SolverConfig,
) -> Result<(u64, Vec<Graph>)> {
    let (value, fillings) = optimal_fillings(n, s, fam, objective, cfg)?;
    let mut graphs = fillings
        .iter()
        .map(|q| g_n_s_with_filling(n, q).map(|g| canonical_graph(&g)))
        .collect::<Result<Vec<_>>>()?;
    graphs.sort();
    graphs.dedup();
    Ok((value, graphs))
}

/// `K_{2s+1}`.
pub fn build_clique_candidate(s: usize) -> Result<Graph> {
    Graph::complete(2 * s + 1)
}

/// `T_k(2s+1)`: the densest `K_{k+1}`-free graph with matching number `s`.
pub fn build_turan_candidate(s: usize, k: usize) -> Result<Graph> {
    Graph::turan(2 * s + 1, k)
}

/// `G(n - t(2p-1), p-1, fam) ∪ t K_{2p-1}`.
pub fn build_forest_extremal(n: usize, p: usize, t: usize, fam: &GraphFamily, cfg: &SolverConfig) -> Result<Graph> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    let block = 2 * p - 1;
    let used = t * block;
    if n < used + (p - 1) {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is below (p-1) + t(2p-1) = {}",
            used + p - 1
        )));
    }
    let mut g = build_g_n_s(n - used, p - 1, fam, Objective::Edges, cfg)?.graph;
    let clique = Graph::complete(block)?;
    for _ in 0..t {
        g = g.disjoint_union(&clique)?;
    }
    Ok(g)
}

/// A construction request as it appears in configuration files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionSpec {
    GNSFamily {
        n: usize,
        s: usize,
        family: Vec<Graph>,
        objective: Objective,
    },
    Clique2s1 {
        s: usize,
    },
    ForestExtremal {
        n: usize,
        p: usize,
        t: usize,
        family: Vec<Graph>,
    },
    Turan {
        p: usize,
        parts: usize,
    },
}

impl ConstructionSpec {
    pub fn build(&self, cfg: &SolverConfig) -> Result<Graph> {
        match self {
            ConstructionSpec::GNSFamily {
                n,
                s,
                family,
                objective,
            } => {
                let fam = GraphFamily::from_members("filling", family.iter().copied());
                Ok(build_g_n_s(*n, *s, &fam, *objective, cfg)?.graph)
            }
            ConstructionSpec::Clique2s1 { s } => build_clique_candidate(*s),
            ConstructionSpec::ForestExtremal { n, p, t, family } => {
                let fam = GraphFamily::from_members("filling", family.iter().copied());
                build_forest_extremal(*n, *p, *t, &fam, cfg)
            }
            ConstructionSpec::Turan { p, parts } => Graph::turan(*p, *parts),
        }
    }
}
