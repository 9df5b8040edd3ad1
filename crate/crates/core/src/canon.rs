//! Canonical labelling by colour refinement plus a search tree over
//! individualised vertices.
//!
//! Each tree node is an ordered partition refined to an equitable one. The
//! refinement trace is an isomorphism invariant; only leaves whose trace
//! sequence is maximal compete, and among those the relabelled adjacency
//! matrix that compares greatest wins. Automorphisms discovered at leaves prune
//! sibling subtrees through stabiliser orbits and backjumps.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::graph::{bit, Graph, VertexSet, MAX_VERTICES};

/// Canonical relabelling of a graph.
///
/// Equality, hashing and ordering consider only the canonical graph, so two
/// forms are equal exactly when their source graphs are isomorphic.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    labeling: Vec<usize>,
    graph: Graph,
}

impl CanonicalForm {
    /// `labeling()[v]` is the canonical label of input vertex `v`.
    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl Eq for CanonicalForm {}

impl Hash for CanonicalForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.graph.hash(state);
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.graph.cmp(&other.graph)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let labeling = canonical_labeling(g);
    CanonicalForm {
        graph: g.permuted(&labeling),
        labeling,
    }
}

pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_graph(a) == canonical_graph(b)
}

const AUTOMORPHISM_CAP: usize = 48;

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x0000_0100_0000_01b3).rotate_left(29) ^ 0x9e37_79b9_7f4a_7c15
}

/// Refine `cells` to an equitable partition, starting from `splitters`.
/// Returns a hash of the split history, which is label-independent.
fn refine(g: &Graph, cells: &mut Vec<u64>, mut splitters: Vec<u64>) -> u64 {
    let mut trace = 0xcbf2_9ce4_8422_2325u64;
    let mut head = 0;
    let mut buckets = [0u64; MAX_VERTICES + 1];
    while head < splitters.len() && cells.len() < g.order() {
        let w = splitters[head];
        head += 1;
        let mut i = 0;
        while i < cells.len() {
            let x = cells[i];
            if x & (x - 1) == 0 {
                i += 1;
                continue;
            }
            let (mut lo, mut hi) = (usize::MAX, 0);
            for v in VertexSet(x) {
                let c = (g.rows()[v] & w).count_ones() as usize;
                lo = lo.min(c);
                hi = hi.max(c);
            }
            if lo == hi {
                i += 1;
                continue;
            }
            for v in VertexSet(x) {
                let c = (g.rows()[v] & w).count_ones() as usize;
                buckets[c] |= bit(v);
            }
            let mut frags = Vec::new();
            for (c, bucket) in buckets.iter_mut().enumerate().take(hi + 1).skip(lo) {
                if *bucket != 0 {
                    trace = mix(
                        trace,
                        ((i as u64) << 32) | ((c as u64) << 16) | bucket.count_ones() as u64,
                    );
                    frags.push(*bucket);
                    *bucket = 0;
                }
            }
            let k = frags.len();
            splitters.extend_from_slice(&frags);
            cells.splice(i..=i, frags);
            i += k;
        }
    }
    mix(trace, cells.len() as u64)
}

struct Leaf {
    path: Vec<usize>,
    traces: Vec<u64>,
    position: Vec<usize>,
    rows: Vec<u64>,
}

struct Search<'a> {
    g: &'a Graph,
    path: Vec<usize>,
    traces: Vec<u64>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

enum Flow {
    Continue,
    /// Abandon everything below the node whose path has this length.
    Jump(usize),
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'a> Search<'a> {
    fn trace_cmp(&self) -> Ordering {
        match &self.best {
            None => Ordering::Equal,
            Some(best) => {
                let k = self.traces.len().min(best.traces.len());
                self.traces[..k].cmp(&best.traces[..k])
            }
        }
    }

    fn relabelled(&self, cells: &[u64]) -> (Vec<usize>, Vec<u64>) {
        let n = self.g.order();
        let mut position = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            position[c.trailing_zeros() as usize] = i;
        }
        let mut rows = vec![0u64; n];
        for v in 0..n {
            let mut row = 0u64;
            for u in self.g.neighbors(v) {
                row |= bit(position[u]);
            }
            rows[position[v]] = row;
        }
        (position, rows)
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        // Vertex v maps to the vertex holding the same position in `to`.
        if self.automorphisms.len() >= AUTOMORPHISM_CAP {
            return;
        }
        let n = from.len();
        let mut inv_to = vec![0; n];
        for (v, &p) in to.iter().enumerate() {
            inv_to[p] = v;
        }
        let gamma: Vec<usize> = from.iter().map(|&p| inv_to[p]).collect();
        if gamma.iter().enumerate().any(|(v, &w)| v != w) {
            self.automorphisms.push(gamma);
        }
    }

    fn leaf(&mut self, cells: &[u64]) -> Flow {
        let (position, rows) = self.relabelled(cells);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                path: self.path.clone(),
                traces: self.traces.clone(),
                position,
                rows,
            };
            self.best = Some(Leaf {
                path: leaf.path.clone(),
                traces: leaf.traces.clone(),
                position: leaf.position.clone(),
                rows: leaf.rows.clone(),
            });
            self.first = Some(leaf);
            return Flow::Continue;
        };
        if rows == first.rows {
            let jump = common_prefix(&first.path, &self.path);
            let first_pos = first.position.clone();
            self.record_automorphism(&first_pos, &position);
            return Flow::Jump(jump);
        }
        let best = self.best.as_ref().expect("best exists once first does");
        let better = match self.trace_cmp_full(best) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match rows.cmp(&best.rows) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    let jump = common_prefix(&best.path, &self.path);
                    let best_pos = best.position.clone();
                    self.record_automorphism(&best_pos, &position);
                    return Flow::Jump(jump);
                }
            },
        };
        if better {
            self.best = Some(Leaf {
                path: self.path.clone(),
                traces: self.traces.clone(),
                position,
                rows,
            });
        }
        Flow::Continue
    }

    fn trace_cmp_full(&self, best: &Leaf) -> Ordering {
        self.traces.cmp(&best.traces)
    }

    /// Is `v` in the orbit of some already-explored sibling under the
    /// automorphisms found so far that fix the current path pointwise?
    fn pruned_by_orbit(&self, v: usize, tried: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if self.path.iter().all(|&p| gamma[p] == p) {
                any = true;
                for (x, &y) in gamma.iter().enumerate() {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }

    fn search(&mut self, cells: Vec<u64>) -> Flow {
        let depth = self.path.len();
        if cells.len() == self.g.order() {
            return self.leaf(&cells);
        }
        let (target, cell) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-singleton cell");
        let mut tried = Vec::new();
        for v in VertexSet(cell) {
            if !tried.is_empty() && self.pruned_by_orbit(v, &tried) {
                continue;
            }
            tried.push(v);
            let mut child = cells.clone();
            child[target] = bit(v);
            child.insert(target + 1, cell & !bit(v));
            let trace = refine(self.g, &mut child, vec![bit(v)]);
            self.traces.push(trace);
            if self.trace_cmp() == Ordering::Less {
                self.traces.pop();
                continue;
            }
            self.path.push(v);
            let flow = self.search(child);
            self.path.pop();
            self.traces.pop();
            if let Flow::Jump(level) = flow {
                if level < depth {
                    return flow;
                }
            }
        }
        Flow::Continue
    }
}

/// `result[v]` is the canonical position of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n <= 1 {
        return (0..n).collect();
    }
    let all = g.vertices().0;
    let mut cells = vec![all];
    let root_trace = refine(g, &mut cells, vec![all]);
    let mut search = Search {
        g,
        path: Vec::new(),
        traces: vec![root_trace],
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    search.search(cells);
    search.best.expect("search reaches at least one leaf").position
}
