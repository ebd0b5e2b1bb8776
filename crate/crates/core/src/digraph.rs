//! Vertex-weighted oriented graphs and their classification into oriented
//! cycles, rooted forests and oriented unicyclic graphs.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::monomial::is_valid_name;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    pub weight: u32,
}

/// On-disk graph format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(String, String)>,
}

/// A source weight that was rewritten to 1 while loading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightRewrite {
    pub vertex: String,
    pub from: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub rewrites: Vec<WeightRewrite>,
}

impl fmt::Display for LoadReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rewrites {
            writeln!(f, "note: source vertex `{}` had weight {}; normalized to 1", r.vertex, r.from)?;
        }
        Ok(())
    }
}

/// A simple digraph with positive vertex weights. Sources always carry
/// weight 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
}

impl WeightedDigraph {
    /// Validates and builds a graph, normalizing source weights to 1.
    pub fn new(vertices: Vec<Vertex>, edges: &[(String, String)]) -> Result<(Self, LoadReport), GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !is_valid_name(&v.name) {
                return Err(GraphError::InvalidName(v.name.clone()));
            }
            if v.weight == 0 {
                return Err(GraphError::NonPositiveWeight(v.name.clone()));
            }
            if index.insert(v.name.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.name.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (tail, head) in edges {
            let t = *index.get(tail).ok_or_else(|| GraphError::UnknownVertex(tail.clone()))?;
            let h = *index.get(head).ok_or_else(|| GraphError::UnknownVertex(head.clone()))?;
            if t == h {
                return Err(GraphError::SelfLoop(tail.clone()));
            }
            if !seen.insert((t, h)) {
                return Err(GraphError::DuplicateEdge(tail.clone(), head.clone()));
            }
            idx_edges.push((t, h));
        }
        let mut graph = Self { vertices, edges: idx_edges, index };
        let report = graph.normalize_sources();
        Ok((graph, report))
    }

    /// Builds from `(name, weight)` pairs and index edges.
    pub fn from_parts(vertices: &[(&str, u32)], edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let verts = vertices
            .iter()
            .map(|&(n, w)| Vertex { name: n.to_string(), weight: w })
            .collect::<Vec<_>>();
        let named = edges
            .iter()
            .map(|&(t, h)| {
                let name = |i: usize| {
                    verts
                        .get(i)
                        .map(|v| v.name.clone())
                        .ok_or_else(|| GraphError::UnknownVertex(format!("#{i}")))
                };
                Ok((name(t)?, name(h)?))
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        Ok(Self::new(verts, &named)?.0)
    }

    /// Vertices `x1..xn` with the given weights.
    pub fn indexed(weights: &[u32], edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let names: Vec<String> = (1..=weights.len()).map(|i| format!("x{i}")).collect();
        let pairs: Vec<(&str, u32)> = names.iter().map(String::as_str).zip(weights.iter().copied()).collect();
        Self::from_parts(&pairs, edges)
    }

    pub fn from_json(text: &str) -> Result<(Self, LoadReport), GraphError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Format(e.to_string()))?;
        Self::new(file.vertices, &file.edges)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(t, h)| (self.vertices[t].name.clone(), self.vertices[h].name.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    fn normalize_sources(&mut self) -> LoadReport {
        let mut report = LoadReport::default();
        for v in 0..self.vertices.len() {
            if self.in_degree(v) == 0 && self.vertices[v].weight != 1 {
                report.rewrites.push(WeightRewrite { vertex: self.vertices[v].name.clone(), from: self.vertices[v].weight });
                self.vertices[v].weight = 1;
            }
        }
        report
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v].name
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.vertices[v].weight
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(_, h)| h == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(t, _)| t == v).count()
    }

    /// Degree in the underlying graph.
    pub fn degree(&self, v: usize) -> usize {
        self.in_degree(v) + self.out_degree(v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_degree(v) == 0
    }

    pub fn weight_sum(&self) -> u64 {
        self.vertices.iter().map(|v| v.weight as u64).sum()
    }

    pub fn max_weight(&self) -> u32 {
        self.vertices.iter().map(|v| v.weight).max().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.degree(v) == 0).collect()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(t, h) in &self.edges {
            adj[t].push(h);
            adj[h].push(t);
        }
        adj
    }

    fn has_antiparallel(&self) -> bool {
        let set: BTreeSet<_> = self.edges.iter().copied().collect();
        self.edges.iter().any(|&(t, h)| set.contains(&(h, t)))
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Shape of the underlying undirected graph.
    pub fn shape(&self) -> Shape {
        if self.has_antiparallel() {
            return Shape::Other;
        }
        let comps = self.components();
        let (n, e) = (self.len(), self.edges.len());
        if e + comps.len() == n {
            Shape::Forest
        } else if comps.len() == 1 && e == n {
            if (0..n).all(|v| self.degree(v) == 2) {
                Shape::Cycle
            } else {
                Shape::Unicyclic
            }
        } else {
            Shape::Other
        }
    }

    /// Sorts the graph into one of the families with a replayable witness.
    pub fn classify(&self) -> Result<FamilyTag, GraphError> {
        if self.is_empty() {
            return Err(GraphError::Empty);
        }
        let other = |reason: &str| FamilyTag { kind: FamilyKind::Other, witness: Witness::Other { reason: reason.to_string() } };
        Ok(match self.shape() {
            Shape::Other => other("underlying graph is not a cycle, forest or unicyclic graph"),
            Shape::Forest => match self.rooted_parents() {
                Some((roots, parent)) => FamilyTag { kind: FamilyKind::RootedForest, witness: Witness::Forest { roots, parent } },
                None => other("a tree component is not oriented away from a single root"),
            },
            Shape::Cycle => match self.oriented_cycle_order(&(0..self.len()).collect::<Vec<_>>()) {
                Some(order) => FamilyTag { kind: FamilyKind::OrientedCycle, witness: Witness::Cycle { order } },
                None => other("cycle is not oriented head-to-tail"),
            },
            Shape::Unicyclic => match self.unicyclic_witness() {
                Some(w) => FamilyTag { kind: FamilyKind::Unicyclic, witness: w },
                None => other("cycle or attached trees are not oriented as required"),
            },
        })
    }

    /// Each component must have exactly one vertex of in-degree 0 and all
    /// other vertices in-degree 1.
    fn rooted_parents(&self) -> Option<(Vec<usize>, Vec<Option<usize>>)> {
        let mut parent = vec![None; self.len()];
        for &(t, h) in &self.edges {
            if parent[h].is_some() {
                return None;
            }
            parent[h] = Some(t);
        }
        let mut roots = Vec::new();
        for comp in self.components() {
            let rs: Vec<usize> = comp.iter().copied().filter(|&v| parent[v].is_none()).collect();
            if rs.len() != 1 {
                return None;
            }
            roots.push(rs[0]);
        }
        Some((roots, parent))
    }

    /// Follows out-edges inside `members` from the smallest vertex, returning
    /// the cycle order if it is oriented head-to-tail.
    fn oriented_cycle_order(&self, members: &[usize]) -> Option<Vec<usize>> {
        let on: BTreeSet<usize> = members.iter().copied().collect();
        let mut next = HashMap::new();
        let mut indeg = HashMap::new();
        for &(t, h) in &self.edges {
            if on.contains(&t) && on.contains(&h) {
                if next.insert(t, h).is_some() {
                    return None;
                }
                *indeg.entry(h).or_insert(0) += 1;
            }
        }
        if members.iter().any(|v| indeg.get(v) != Some(&1) || !next.contains_key(v)) {
            return None;
        }
        let start = *on.iter().next()?;
        let mut order = vec![start];
        let mut cur = next[&start];
        while cur != start {
            order.push(cur);
            cur = next[&cur];
            if order.len() > members.len() {
                return None;
            }
        }
        (order.len() == members.len()).then_some(order)
    }

    fn unicyclic_witness(&self) -> Option<Witness> {
        let adj = self.neighbours();
        let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; self.len()];
        let mut queue: VecDeque<usize> = (0..self.len()).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = queue.pop_front() {
            removed[v] = true;
            for &w in &adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        queue.push_back(w);
                    }
                }
            }
        }
        let cycle_members: Vec<usize> = (0..self.len()).filter(|&v| !removed[v]).collect();
        let cycle = self.oriented_cycle_order(&cycle_members)?;

        // every vertex, cycle or tree, has exactly one in-edge
        let mut parent = vec![None; self.len()];
        for &(t, h) in &self.edges {
            if parent[h].is_some() {
                return None;
            }
            parent[h] = Some(t);
        }
        for &c in &cycle {
            if parent[c].is_none_or(|p| removed[p]) {
                return None;
            }
        }
        let mut trees = Vec::new();
        let mut tree_parent = vec![None; self.len()];
        for &c in &cycle {
            for &child in &adj[c] {
                if !removed[child] {
                    continue;
                }
                let mut vertices = vec![child];
                let mut stack = vec![(c, child)];
                while let Some((from, v)) = stack.pop() {
                    if parent[v] != Some(from) {
                        return None;
                    }
                    tree_parent[v] = Some(from);
                    for &w in &adj[v] {
                        if w != from {
                            vertices.push(w);
                            stack.push((v, w));
                        }
                    }
                }
                vertices.sort_unstable();
                trees.push(AttachedTree { root: c, vertices });
            }
        }
        Some(Witness::Unicyclic { cycle, trees, parent: tree_parent })
    }

    /// Lists every violated hypothesis of `theorem`. Errors when the
    /// underlying graph does not have the theorem's shape.
    pub fn check_hypotheses(&self, theorem: Theorem) -> Result<HypothesisReport, GraphError> {
        let tag = self.classify()?;
        let shape = self.shape();
        let shape_ok = match theorem {
            Theorem::Cycle => shape == Shape::Cycle,
            Theorem::Forest => shape == Shape::Forest,
            Theorem::Unicyclic => matches!(shape, Shape::Cycle | Shape::Unicyclic),
        };
        if !shape_ok {
            return Err(GraphError::FamilyMismatch { expected: theorem.family_name(), actual: tag.kind.to_string() });
        }
        let mut violations = Vec::new();
        let orientation_ok = match theorem {
            Theorem::Cycle => tag.kind == FamilyKind::OrientedCycle,
            Theorem::Forest => tag.kind == FamilyKind::RootedForest,
            Theorem::Unicyclic => matches!(tag.kind, FamilyKind::OrientedCycle | FamilyKind::Unicyclic),
        };
        if !orientation_ok {
            let reason = match &tag.witness {
                Witness::Other { reason } => reason.clone(),
                _ => String::new(),
            };
            violations.push(Violation::Orientation { reason });
        }
        for v in self.isolated_vertices() {
            violations.push(Violation::IsolatedVertex { vertex: self.name(v).to_string() });
        }
        for v in 0..self.len() {
            let (w, d) = (self.weight(v), self.degree(v));
            let needs_two = match theorem {
                Theorem::Cycle => true,
                // sources carry weight 1 by normalization and are exempt
                Theorem::Forest | Theorem::Unicyclic => d >= 2 && !self.is_source(v),
            };
            if needs_two && w < 2 {
                violations.push(Violation::Weight { vertex: self.name(v).to_string(), weight: w, degree: d });
            }
        }
        Ok(HypothesisReport { theorem, family: tag.kind, violations })
    }
}

/// `x1 .. xn` with edges `x_{i-1} -> x_i` (indices mod n), so the first
/// edge is `x_n -> x_1`.
pub fn make_cycle(weights: &[u32]) -> Result<WeightedDigraph, GraphError> {
    let n = weights.len();
    if n < 3 {
        return Err(GraphError::CycleTooShort(n));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| ((i + n - 1) % n, i)).collect();
    WeightedDigraph::indexed(weights, &edges)
}

/// Underlying undirected shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Cycle,
    Forest,
    Unicyclic,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    OrientedCycle,
    RootedForest,
    Unicyclic,
    Other,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::OrientedCycle => "OrientedCycle",
            FamilyKind::RootedForest => "RootedForest",
            FamilyKind::Unicyclic => "Unicyclic",
            FamilyKind::Other => "Other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttachedTree {
    /// Attachment vertex on the cycle.
    pub root: usize,
    /// Tree vertices other than the root.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    Cycle { order: Vec<usize> },
    Forest { roots: Vec<usize>, parent: Vec<Option<usize>> },
    Unicyclic { cycle: Vec<usize>, trees: Vec<AttachedTree>, parent: Vec<Option<usize>> },
    Other { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyTag {
    pub kind: FamilyKind,
    pub witness: Witness,
}

impl FamilyTag {
    /// Edge set implied by the witness, sorted.
    pub fn rebuild_edges(&self) -> Option<Vec<(usize, usize)>> {
        let cycle_edges = |order: &[usize]| -> Vec<(usize, usize)> {
            (0..order.len()).map(|i| (order[i], order[(i + 1) % order.len()])).collect()
        };
        let tree_edges =
            |parent: &[Option<usize>]| parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v))).collect::<Vec<_>>();
        let mut edges = match &self.witness {
            Witness::Cycle { order } => cycle_edges(order),
            Witness::Forest { parent, .. } => tree_edges(parent),
            Witness::Unicyclic { cycle, parent, .. } => {
                let mut e = cycle_edges(cycle);
                e.extend(tree_edges(parent));
                e
            }
            Witness::Other { .. } => return None,
        };
        edges.sort_unstable();
        Some(edges)
    }

    /// True when the witness reproduces the edge set of `graph` exactly.
    pub fn replays(&self, graph: &WeightedDigraph) -> bool {
        let mut actual = graph.edges().to_vec();
        actual.sort_unstable();
        match self.rebuild_edges() {
            Some(edges) => edges == actual,
            None => self.kind == FamilyKind::Other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// Regularity of powers of an oriented cycle's edge ideal.
    Cycle,
    /// Regularity of powers of a rooted forest's edge ideal.
    Forest,
    /// Regularity of powers of an oriented unicyclic graph's edge ideal.
    Unicyclic,
}

impl Theorem {
    pub fn family_name(self) -> &'static str {
        match self {
            Theorem::Cycle => "OrientedCycle",
            Theorem::Forest => "RootedForest",
            Theorem::Unicyclic => "Unicyclic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Weight { vertex: String, weight: u32, degree: usize },
    Orientation { reason: String },
    IsolatedVertex { vertex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Weight { vertex, weight, degree } => write!(f, "w({vertex})={weight} with d({vertex})={degree}"),
            Violation::Orientation { reason } => write!(f, "orientation: {reason}"),
            Violation::IsolatedVertex { vertex } => write!(f, "isolated vertex {vertex}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub theorem: Theorem,
    pub family: FamilyKind,
    pub violations: Vec<Violation>,
}

impl HypothesisReport {
    pub fn admissible(&self) -> bool {
        self.violations.is_empty()
    }
}
