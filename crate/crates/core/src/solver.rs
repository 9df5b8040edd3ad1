//! Isomorph-free enumeration of family-free graphs and exact `ex(n, K_r, F)`.
//!
//! Graphs on a fixed vertex set are generated by canonical edge augmentation:
//! the stream holds graphs in canonical labelling, and a child `G + e` is
//! accepted only when deleting its canonical edge (the last edge of its
//! canonical form) gives back a graph isomorphic to `G`. Every free graph has
//! exactly one accepted parent class, so no global seen-set is needed; a small
//! per-parent set removes duplicates among siblings. Children containing a
//! forbidden member are cut immediately, which is exact because containment is
//! preserved by adding edges.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_graph;
use crate::containment::{contains_subgraph, is_family_free, minimalize, GraphFamily};
use crate::covering::{family_fp, independent_cover_number, CoverNumber};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::count_cliques;

/// Hard upper limit for exhaustive enumeration.
pub const MAX_CEILING: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Largest vertex count accepted; `None` picks a default per family.
    pub ceiling: Option<usize>,
    pub workers: usize,
    /// Edge count at which the search tree is cut into parallel jobs.
    pub split_depth: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            ceiling: None,
            workers: 1,
            split_depth: 3,
        }
    }
}

impl SolverConfig {
    pub fn with_workers(workers: usize) -> Self {
        SolverConfig {
            workers: workers.max(1),
            ..SolverConfig::default()
        }
    }

    /// The same limits with a single worker, for use inside a job that
    /// already runs on a pool.
    pub fn single(&self) -> Self {
        SolverConfig { workers: 1, ..*self }
    }

    fn check(&self, n: usize, fam: &GraphFamily) -> Result<()> {
        let ceiling = self.ceiling.unwrap_or_else(|| default_ceiling(fam)).min(MAX_CEILING);
        if n > ceiling {
            return Err(Error::CeilingExceeded { n, ceiling });
        }
        Ok(())
    }
}

/// 10 when some member sits inside `K_3` or `M_2` (such families prune hard),
/// otherwise 9.
pub fn default_ceiling(fam: &GraphFamily) -> usize {
    let k3 = Graph::complete(3).expect("small");
    let m2 = Graph::matching(2).expect("small");
    let hard = fam
        .members()
        .iter()
        .any(|h| contains_subgraph(&k3, h) || contains_subgraph(&m2, h));
    if hard {
        10
    } else {
        9
    }
}

struct Augmenter {
    n: usize,
    family: GraphFamily,
}

impl Augmenter {
    fn new(n: usize, fam: &GraphFamily) -> Self {
        Augmenter {
            n,
            family: minimalize(fam),
        }
    }

    fn root(&self) -> Option<Graph> {
        let g = Graph::empty(self.n).expect("ceiling is below capacity");
        is_family_free(&g, &self.family).then_some(g)
    }

    /// Accepted children of a canonically labelled parent, in canonical form.
    fn children(&self, parent: &Graph) -> Vec<Graph> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if parent.has_edge(u, v) {
                    continue;
                }
                let mut child = *parent;
                child.add_edge_unchecked(u, v);
                let key = canonical_graph(&child);
                if !seen.insert(key) {
                    continue;
                }
                let (a, b) = key.edges().last().expect("child has an edge");
                let mut reduced = key;
                reduced.remove_edge_unchecked(a, b);
                if canonical_graph(&reduced) != *parent {
                    continue;
                }
                if !is_family_free(&key, &self.family) {
                    debug_assert!(self.pruning_is_monotone(&key));
                    continue;
                }
                out.push(key);
            }
        }
        out
    }

    /// A non-free graph stays non-free after adding any single edge.
    fn pruning_is_monotone(&self, bad: &Graph) -> bool {
        let n = self.n;
        let extra = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .find(|&(u, v)| !bad.has_edge(u, v));
        match extra {
            None => true,
            Some((u, v)) => {
                let mut more = *bad;
                more.add_edge_unchecked(u, v);
                !is_family_free(&more, &self.family)
            }
        }
    }

    fn walk(&self, g: &Graph, visit: &mut impl FnMut(&Graph)) {
        visit(g);
        for child in self.children(g) {
            self.walk(&child, visit);
        }
    }

    /// Split the tree at `depth` edges: nodes strictly above are visited here,
    /// the returned frontier roots independent subtrees.
    fn frontier(&self, root: Graph, depth: usize, visit: &mut impl FnMut(&Graph)) -> Vec<Graph> {
        let mut level = vec![root];
        for _ in 0..depth {
            let mut next = Vec::new();
            for g in &level {
                visit(g);
                next.extend(self.children(g));
            }
            level = next;
        }
        level
    }
}

/// Visit one representative of every isomorphism class of `fam`-free graphs
/// on `n` vertices, sequentially in depth-first order.
pub fn for_each_free(n: usize, fam: &GraphFamily, cfg: &SolverConfig, mut visit: impl FnMut(&Graph)) -> Result<()> {
    cfg.check(n, fam)?;
    let aug = Augmenter::new(n, fam);
    if let Some(root) = aug.root() {
        aug.walk(&root, &mut visit);
    }
    Ok(())
}

/// Run `job` over every subtree, in parallel when `cfg.workers > 1`, and fold
/// the partial results with `merge`. `merge` must be order-insensitive.
fn fold_tree<T, J, M>(n: usize, fam: &GraphFamily, cfg: &SolverConfig, job: J, merge: M) -> Result<Option<T>>
where
    T: Send,
    J: Fn(&Augmenter, &Graph, bool) -> T + Sync,
    M: Fn(T, T) -> T + Sync,
{
    cfg.check(n, fam)?;
    let aug = Augmenter::new(n, fam);
    let Some(root) = aug.root() else {
        return Ok(None);
    };
    if cfg.workers <= 1 {
        return Ok(Some(job(&aug, &root, true)));
    }
    let mut upper = Vec::new();
    let frontier = aug.frontier(root, cfg.split_depth, &mut |g| upper.push(*g));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let parts: Vec<T> = pool.install(|| {
        let mut parts: Vec<T> = frontier.par_iter().map(|g| job(&aug, g, true)).collect();
        parts.extend(upper.iter().map(|g| job(&aug, g, false)));
        parts
    });
    Ok(parts.into_iter().reduce(merge))
}

/// Apply `f` to every job on a pool of `workers` threads; results keep the
/// order of `jobs`.
pub fn run_jobs<J, R, F>(workers: usize, jobs: &[J], f: F) -> Result<Vec<R>>
where
    J: Sync,
    R: Send,
    F: Fn(&J) -> R + Sync + Send,
{
    if workers <= 1 {
        return Ok(jobs.iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    Ok(pool.install(|| jobs.par_iter().map(f).collect()))
}

/// All isomorphism classes of `fam`-free graphs on `n` vertices, in canonical
/// labelling and sorted, so the result is independent of the worker count.
pub fn enumerate_free(n: usize, fam: &GraphFamily, cfg: &SolverConfig) -> Result<Vec<Graph>> {
    let found = fold_tree(
        n,
        fam,
        cfg,
        |aug, g, deep| {
            let mut out = Vec::new();
            if deep {
                aug.walk(g, &mut |h| out.push(*h));
            } else {
                out.push(*g);
            }
            out
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    let mut graphs = found.unwrap_or_default();
    graphs.sort();
    Ok(graphs)
}

pub fn count_free(n: usize, fam: &GraphFamily, cfg: &SolverConfig) -> Result<u64> {
    Ok(fold_tree(
        n,
        fam,
        cfg,
        |aug, g, deep| {
            if deep {
                let mut k = 0u64;
                aug.walk(g, &mut |_| k += 1);
                k
            } else {
                1
            }
        },
        |a, b| a + b,
    )?
    .unwrap_or(0))
}

/// Exact `ex(n, K_r, F)` with every extremal graph up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExResult {
    pub n: usize,
    pub r: usize,
    pub family: String,
    /// `None` when no `F`-free graph on `n` vertices exists.
    pub value: Option<u64>,
    /// Extremal graphs in canonical labelling, sorted.
    pub witnesses: Vec<Graph>,
    pub enumerated_count: u64,
    /// Wall time; not part of the serialized payload.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Default)]
struct Best {
    value: Option<u64>,
    witnesses: BTreeSet<Graph>,
    count: u64,
}

impl Best {
    fn offer(&mut self, g: &Graph, value: u64) {
        self.count += 1;
        match self.value {
            Some(v) if v > value => {}
            Some(v) if v == value => {
                self.witnesses.insert(*g);
            }
            _ => {
                self.value = Some(value);
                self.witnesses.clear();
                self.witnesses.insert(*g);
            }
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.count += other.count;
        match (self.value, other.value) {
            (_, None) => self,
            (None, Some(_)) => Best {
                count: self.count,
                ..other
            },
            (Some(a), Some(b)) if a > b => self,
            (Some(a), Some(b)) if a < b => Best {
                count: self.count,
                ..other
            },
            _ => {
                self.witnesses.extend(other.witnesses);
                self
            }
        }
    }
}

pub fn ex_general(n: usize, r: usize, fam: &GraphFamily, cfg: &SolverConfig) -> Result<ExResult> {
    if r == 0 {
        return Err(Error::InvalidParameter("clique order r must be at least 1".into()));
    }
    let start = Instant::now();
    let best = fold_tree(
        n,
        fam,
        cfg,
        |aug, g, deep| {
            let mut best = Best::default();
            if deep {
                aug.walk(g, &mut |h| best.offer(h, count_cliques(h, r)));
            } else {
                best.offer(g, count_cliques(g, r));
            }
            best
        },
        Best::merge,
    )?
    .unwrap_or_default();
    Ok(ExResult {
        n,
        r,
        family: fam.label().to_string(),
        value: best.value,
        witnesses: best.witnesses.into_iter().collect(),
        enumerated_count: best.count,
        elapsed: start.elapsed(),
    })
}

/// `ex(p, K_{r-1}, F[p])` for `1 <= p < min(s + 1, p(F))` and the smallest
/// maximising `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExProfile {
    pub graph: Graph,
    pub r: usize,
    pub s: usize,
    pub cover_number: CoverNumber,
    pub points: Vec<(usize, Option<u64>)>,
    pub argmax: Option<usize>,
}

impl ExProfile {
    pub fn value_at(&self, p: usize) -> Option<u64> {
        self.points.iter().find(|(q, _)| *q == p).and_then(|(_, v)| *v)
    }

    pub fn max_value(&self) -> Option<u64> {
        self.argmax.and_then(|t| self.value_at(t))
    }
}

pub fn ex_profile(f: &Graph, r: usize, s: usize, cfg: &SolverConfig) -> Result<ExProfile> {
    if r < 2 {
        return Err(Error::InvalidParameter("profile needs r >= 2".into()));
    }
    let cover_number = independent_cover_number(f);
    let mut points = Vec::new();
    for p in 1..cover_number.profile_bound(s) {
        let fam = family_fp(f, p)?;
        let value = ex_general(p, r - 1, &fam, cfg)?.value;
        points.push((p, value));
    }
    let mut argmax: Option<(usize, u64)> = None;
    for &(p, v) in &points {
        if let Some(v) = v {
            if argmax.is_none_or(|(_, best)| v > best) {
                argmax = Some((p, v));
            }
        }
    }
    Ok(ExProfile {
        graph: *f,
        r,
        s,
        cover_number,
        points,
        argmax: argmax.map(|(p, _)| p),
    })
}
