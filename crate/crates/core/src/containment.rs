//! Subgraph containment (not necessarily induced) and forbidden families.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::canon::canonical_graph;
use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexSet};
use crate::graph6;
use crate::invariants::{clique_number, matching_number};

/// Is there an injection `V(pattern) -> V(host)` carrying every pattern edge
/// onto a host edge?
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    if pattern.order() > host.order() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    // isolated pattern vertices only need distinct spare host vertices, and
    // |host| >= |pattern| already holds
    let core = pattern.vertices().difference(pattern.isolated_vertices());
    if core.is_empty() {
        return true;
    }
    let max_deg = pattern.max_degree();
    if max_deg == 1 {
        return matching_number(host) >= pattern.edge_count();
    }
    let k = core.len();
    if pattern.edge_count() == k * (k - 1) / 2 {
        return clique_number(host) >= k;
    }
    Embedder::new(host, pattern, core).run()
}

/// Backtracking embedder for the non-isolated part of a pattern.
struct Embedder<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    /// Host vertices whose degree is at least the pattern degree, per step.
    degree_ok: Vec<u64>,
    image: Vec<usize>,
}

impl<'a> Embedder<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, core: VertexSet) -> Self {
        // Highest degree first, then greedily the vertex with most already
        // placed neighbours so adjacency constraints bite early.
        let mut order = Vec::with_capacity(core.len());
        let mut placed = 0u64;
        let mut left = core;
        while !left.is_empty() {
            let next = left
                .iter()
                .max_by_key(|&v| {
                    (
                        (pattern.rows()[v] & placed).count_ones(),
                        pattern.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("non-empty");
            order.push(next);
            placed |= bit(next);
            left.remove(next);
        }
        let degree_ok = order
            .iter()
            .map(|&u| {
                let d = pattern.degree(u);
                (0..host.order())
                    .filter(|&h| host.degree(h) >= d)
                    .fold(0u64, |acc, h| acc | bit(h))
            })
            .collect();
        Embedder {
            host,
            pattern,
            order,
            degree_ok,
            image: vec![usize::MAX; pattern.order()],
        }
    }

    fn run(&mut self) -> bool {
        self.extend(0, 0)
    }

    fn extend(&mut self, step: usize, used: u64) -> bool {
        let Some(&u) = self.order.get(step) else {
            return true;
        };
        let mut cand = self.degree_ok[step] & !used;
        for w in VertexSet(self.pattern.rows()[u]) {
            let img = self.image[w];
            if img != usize::MAX {
                cand &= self.host.rows()[img];
            }
        }
        while cand != 0 {
            let h = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.image[u] = h;
            if self.extend(step + 1, used | bit(h)) {
                return true;
            }
        }
        self.image[u] = usize::MAX;
        false
    }
}

/// A set of graphs up to isomorphism with a free-text label.
#[derive(Clone, Default)]
pub struct GraphFamily {
    label: String,
    members: Vec<Graph>,
    keys: HashSet<Graph>,
}

impl GraphFamily {
    pub fn new(label: impl Into<String>) -> Self {
        GraphFamily {
            label: label.into(),
            members: Vec::new(),
            keys: HashSet::new(),
        }
    }

    pub fn from_members<I: IntoIterator<Item = Graph>>(label: impl Into<String>, members: I) -> Self {
        let mut fam = GraphFamily::new(label);
        for g in members {
            fam.insert(g);
        }
        fam
    }

    /// Adds `g` unless an isomorphic member is already present.
    pub fn insert(&mut self, g: Graph) -> bool {
        if self.keys.insert(canonical_graph(&g)) {
            self.members.push(g);
            true
        } else {
            false
        }
    }

    pub fn contains_isomorph(&self, g: &Graph) -> bool {
        self.keys.contains(&canonical_graph(g))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Union of two families, deduplicated.
    pub fn union(&self, other: &GraphFamily, label: impl Into<String>) -> GraphFamily {
        GraphFamily::from_members(label, self.members.iter().chain(&other.members).copied())
    }

    /// Members in canonical form, sorted; identifies the family up to
    /// isomorphism regardless of label and insertion order.
    pub fn canonical_members(&self) -> Vec<Graph> {
        let mut keys: Vec<Graph> = self.keys.iter().copied().collect();
        keys.sort();
        keys
    }

    /// Same members up to isomorphism.
    pub fn same_members(&self, other: &GraphFamily) -> bool {
        self.keys == other.keys
    }

    /// `# family: <label>` followed by one graph6 line per member.
    pub fn to_lines(&self) -> String {
        let mut out = format!("# family: {}\n", self.label);
        for g in &self.members {
            out.push_str(&g.to_graph6());
            out.push('\n');
        }
        out
    }

    pub fn from_lines(text: &str) -> Result<Self> {
        let mut fam = GraphFamily::new("");
        for line in text.lines().map(str::trim) {
            if let Some(label) = line.strip_prefix("# family:") {
                fam.label = label.trim().to_string();
            } else if line.is_empty() || line.starts_with('#') {
                continue;
            } else {
                fam.insert(graph6::decode(line)?);
            }
        }
        if fam.label.is_empty() && fam.is_empty() {
            return Err(Error::InvalidParameter("empty family file".into()));
        }
        Ok(fam)
    }
}

impl fmt::Debug for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphFamily")
            .field("label", &self.label)
            .field("members", &self.members)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    label: String,
    members: Vec<Graph>,
}

/// Families serialize as `{label, members}` with members in insertion order.
impl Serialize for GraphFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyRepr {
            label: self.label.clone(),
            members: self.members.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GraphFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = FamilyRepr::deserialize(deserializer)?;
        Ok(GraphFamily::from_members(repr.label, repr.members))
    }
}

/// No member of `fam` is a subgraph of `g`. The empty family excludes nothing.
pub fn is_family_free(g: &Graph, fam: &GraphFamily) -> bool {
    fam.members().iter().all(|h| !contains_subgraph(g, h))
}

/// Drop every member that contains another member; freeness is unchanged.
pub fn minimalize(fam: &GraphFamily) -> GraphFamily {
    let mut sorted: Vec<Graph> = fam.members().to_vec();
    sorted.sort_by_key(|g| (g.order(), g.edge_count()));
    let mut kept: Vec<Graph> = Vec::new();
    for g in sorted {
        if !kept.iter().any(|h| contains_subgraph(&g, h)) {
            kept.push(g);
        }
    }
    GraphFamily::from_members(format!("min {}", fam.label()), kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_k1() -> Graph {
        Graph::complete(2)
            .unwrap()
            .disjoint_union(&Graph::empty(1).unwrap())
            .unwrap()
    }

    #[test]
    fn containment_examples() {
        let k3 = Graph::complete(3).unwrap();
        let k4 = Graph::complete(4).unwrap();
        assert!(contains_subgraph(&k4, &k3));
        assert!(!contains_subgraph(&k3, &k4));
        assert!(contains_subgraph(
            &Graph::path(4).unwrap(),
            &Graph::matching(2).unwrap()
        ));
        assert!(!contains_subgraph(
            &Graph::path(3).unwrap(),
            &Graph::matching(2).unwrap()
        ));
        assert!(contains_subgraph(&k3, &k2_k1()));
        assert!(!contains_subgraph(&Graph::complete(2).unwrap(), &k2_k1()));
        assert!(contains_subgraph(&Graph::cycle(6).unwrap(), &Graph::path(6).unwrap()));
        assert!(!contains_subgraph(&Graph::cycle(6).unwrap(), &Graph::cycle(5).unwrap()));
        assert!(contains_subgraph(&Graph::wheel(5).unwrap(), &Graph::cycle(5).unwrap()));
        assert!(!contains_subgraph(
            &Graph::wheel(5).unwrap(),
            &Graph::complete(4).unwrap()
        ));
        assert!(contains_subgraph(&Graph::wheel(4).unwrap(), &Graph::path(5).unwrap()));
        assert!(contains_subgraph(&Graph::empty(3).unwrap(), &Graph::empty(3).unwrap()));
        assert!(!contains_subgraph(&Graph::empty(2).unwrap(), &Graph::empty(3).unwrap()));
    }

    #[test]
    fn family_freeness() {
        let m3 = GraphFamily::from_members("M3", [Graph::matching(3).unwrap()]);
        assert!(is_family_free(&Graph::complete(5).unwrap(), &m3));
        let k3 = GraphFamily::from_members("K3", [Graph::complete(3).unwrap()]);
        assert!(is_family_free(&Graph::cycle(5).unwrap(), &k3));
        let mut g = Graph::complete_bipartite(2, 3).unwrap();
        g.add_edge(0, 1).unwrap();
        assert!(!is_family_free(&g, &k3));
        assert!(is_family_free(&g, &GraphFamily::new("none")));
    }

    #[test]
    fn family_dedups_isomorphs() {
        let mut fam = GraphFamily::new("paths");
        assert!(fam.insert(Graph::path(3).unwrap()));
        assert!(!fam.insert(Graph::star(3).unwrap()));
        assert!(fam.contains_isomorph(&Graph::from_edges(3, &[(0, 2), (2, 1)]).unwrap()));
        assert_eq!(fam.len(), 1);
    }

    #[test]
    fn minimalize_examples() {
        let fam = GraphFamily::from_members("K", [Graph::complete(3).unwrap(), Graph::complete(4).unwrap()]);
        let min = minimalize(&fam);
        assert_eq!(min.len(), 1);
        assert!(min.contains_isomorph(&Graph::complete(3).unwrap()));

        let fam = GraphFamily::from_members("inc", [Graph::path(3).unwrap(), Graph::matching(2).unwrap()]);
        assert_eq!(minimalize(&fam).len(), 2);
    }

    #[test]
    fn family_json_round_trip() {
        let fam = GraphFamily::from_members(
            "pair",
            [
                Graph::path(3).unwrap(),
                Graph::star(3).unwrap(),
                Graph::complete(3).unwrap(),
            ],
        );
        let text = serde_json::to_string(&fam).unwrap();
        assert_eq!(text, r#"{"label":"pair","members":["Bg","Bw"]}"#);
        let back: GraphFamily = serde_json::from_str(&text).unwrap();
        assert!(back.same_members(&fam));
    }

    #[test]
    fn family_lines_round_trip() {
        let fam = GraphFamily::from_members("M3 and K4", [Graph::matching(3).unwrap(), Graph::complete(4).unwrap()]);
        let text = fam.to_lines();
        assert!(text.starts_with("# family: M3 and K4\n"));
        let back = GraphFamily::from_lines(&text).unwrap();
        assert_eq!(back.label(), "M3 and K4");
        assert!(back.same_members(&fam));
    }
}
