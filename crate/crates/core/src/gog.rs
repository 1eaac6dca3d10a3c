//! Graphs of groups with finite vertex groups.
//!
//! Edge groups are stored once per pair `{y, ȳ}`; for a directed edge `e`
//! the injection `a ↦ aᵉ` lands in the vertex group of `s(e)`. The
//! generator alphabet Δ consists of the non-identity elements of each
//! vertex group (rendered `P.g3`) followed by the edge names.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::fingroup::{FiniteGroupTable, GroupError, GroupInjection};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GogError {
    #[error("graph of groups has no vertices")]
    NoVertices,
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("edge `{0}`: inverse pairing is not a fixed-point-free involution")]
    BadInvolution(String),
    #[error("edge `{0}`: source of the edge must be the target of its inverse")]
    BadEndpoints(String),
    #[error("edge `{0}` has no edge group")]
    MissingEdgeGroup(String),
    #[error("edge pair of `{0}` has more than one edge group")]
    DuplicateEdgeGroup(String),
    #[error("graph is not connected: `{0}` is unreachable")]
    Disconnected(String),
    #[error("group of {what}: {source}")]
    Group { what: String, source: GroupError },
    #[error("word is not a closed path at the base vertex (position {position})")]
    NotBasedAtP { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub group: FiniteGroupTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub inv: usize,
    pub src: usize,
    pub tgt: usize,
}

/// Edge group of the pair `(y, ȳ)`: `into_src` maps into `G_{s(y)}` and
/// `into_tgt` into `G_{t(y)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGroup {
    pub pair: (usize, usize),
    pub group: FiniteGroupTable,
    pub into_src: GroupInjection,
    pub into_tgt: GroupInjection,
}

/// A letter of Δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaSym {
    Elem { vertex: usize, elem: usize },
    Edge(usize),
}

#[derive(Debug, Clone)]
pub struct GraphOfGroups {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    edge_groups: Vec<EdgeGroup>,
    /// `pair_of[e]` = index into `edge_groups`.
    pair_of: Vec<usize>,
    delta: Alphabet,
    delta_syms: Vec<DeltaSym>,
    elem_letter: Vec<Vec<Option<Letter>>>,
    tree: Vec<bool>,
    root: usize,
    /// Tree edges from the root to each vertex.
    root_path: Vec<Vec<usize>>,
}

impl PartialEq for GraphOfGroups {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.edge_groups == other.edge_groups
    }
}

/// Name of a vertex-group element as a Δ symbol.
pub fn elem_name(vertex: &str, elem: usize) -> String {
    format!("{vertex}.g{elem}")
}

impl GraphOfGroups {
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        edge_groups: Vec<EdgeGroup>,
    ) -> Result<Self, GogError> {
        if vertices.is_empty() {
            return Err(GogError::NoVertices);
        }
        let mut delta = Alphabet::new();
        let mut delta_syms = Vec::new();
        let mut elem_letter = Vec::new();
        let mut vnames = std::collections::HashSet::new();
        for (v, vx) in vertices.iter().enumerate() {
            if !vnames.insert(vx.name.as_str()) {
                return Err(GogError::DuplicateName(vx.name.clone()));
            }
            let mut row = vec![None];
            for g in 1..vx.group.order() {
                let l = delta
                    .insert(elem_name(&vx.name, g))
                    .map_err(|_| GogError::DuplicateName(elem_name(&vx.name, g)))?;
                delta_syms.push(DeltaSym::Elem { vertex: v, elem: g });
                row.push(Some(l));
            }
            elem_letter.push(row);
        }
        for (e, ed) in edges.iter().enumerate() {
            if vnames.contains(ed.name.as_str()) {
                return Err(GogError::DuplicateName(ed.name.clone()));
            }
            delta
                .insert(ed.name.clone())
                .map_err(|_| GogError::DuplicateName(ed.name.clone()))?;
            delta_syms.push(DeltaSym::Edge(e));
            if ed.src >= vertices.len() || ed.tgt >= vertices.len() {
                return Err(GogError::UnknownVertex(format!("endpoint of {}", ed.name)));
            }
            if ed.inv >= edges.len() || ed.inv == e || edges[ed.inv].inv != e {
                return Err(GogError::BadInvolution(ed.name.clone()));
            }
            if edges[ed.inv].tgt != ed.src {
                return Err(GogError::BadEndpoints(ed.name.clone()));
            }
        }
        let mut pair_of = vec![usize::MAX; edges.len()];
        for (i, eg) in edge_groups.iter().enumerate() {
            let (y, yb) = eg.pair;
            if y >= edges.len() || yb >= edges.len() || edges[y].inv != yb {
                return Err(GogError::BadInvolution(format!("edge group {i}")));
            }
            if pair_of[y] != usize::MAX {
                return Err(GogError::DuplicateEdgeGroup(edges[y].name.clone()));
            }
            pair_of[y] = i;
            pair_of[yb] = i;
            let what = format!("edge pair ({}, {})", edges[y].name, edges[yb].name);
            GroupInjection::new(
                &eg.group,
                &vertices[edges[y].src].group,
                eg.into_src.map().to_vec(),
            )
            .map_err(|source| GogError::Group {
                what: what.clone(),
                source,
            })?;
            GroupInjection::new(
                &eg.group,
                &vertices[edges[y].tgt].group,
                eg.into_tgt.map().to_vec(),
            )
            .map_err(|source| GogError::Group { what, source })?;
        }
        if let Some(e) = pair_of.iter().position(|&p| p == usize::MAX) {
            return Err(GogError::MissingEdgeGroup(edges[e].name.clone()));
        }
        let mut g = GraphOfGroups {
            vertices,
            edges,
            edge_groups,
            pair_of,
            delta,
            delta_syms,
            elem_letter,
            tree: Vec::new(),
            root: 0,
            root_path: Vec::new(),
        };
        g.compute_tree()?;
        Ok(g)
    }

    /// Breadth-first spanning tree from the lexicographically least vertex,
    /// scanning outgoing edges in name order.
    fn compute_tree(&mut self) -> Result<(), GogError> {
        let n = self.vertices.len();
        let root = (0..n)
            .min_by(|&a, &b| self.vertices[a].name.cmp(&self.vertices[b].name))
            .unwrap();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, ed) in self.edges.iter().enumerate() {
            out[ed.src].push(e);
        }
        for list in &mut out {
            list.sort_by(|&a, &b| self.edges[a].name.cmp(&self.edges[b].name));
        }
        let mut tree = vec![false; self.edges.len()];
        let mut root_path: Vec<Option<Vec<usize>>> = vec![None; n];
        root_path[root] = Some(Vec::new());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &out[v] {
                let t = self.edges[e].tgt;
                if root_path[t].is_none() {
                    tree[e] = true;
                    tree[self.edges[e].inv] = true;
                    let mut p = root_path[v].clone().unwrap();
                    p.push(e);
                    root_path[t] = Some(p);
                    queue.push_back(t);
                }
            }
        }
        if let Some(v) = root_path.iter().position(Option::is_none) {
            return Err(GogError::Disconnected(self.vertices[v].name.clone()));
        }
        self.tree = tree;
        self.root = root;
        self.root_path = root_path.into_iter().map(Option::unwrap).collect();
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_groups(&self) -> &[EdgeGroup] {
        &self.edge_groups
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn delta(&self) -> &Alphabet {
        &self.delta
    }

    pub fn sym(&self, l: Letter) -> DeltaSym {
        self.delta_syms[l]
    }

    pub fn letter_of(&self, s: DeltaSym) -> Option<Letter> {
        match s {
            DeltaSym::Elem { vertex, elem } => self.elem_letter[vertex][elem],
            DeltaSym::Edge(e) => Some(self.edge_letter(e)),
        }
    }

    pub fn edge_letter(&self, e: usize) -> Letter {
        self.delta.get(&self.edges[e].name).expect("edge letter")
    }

    pub fn edge_group_of(&self, e: usize) -> &EdgeGroup {
        &self.edge_groups[self.pair_of[e]]
    }

    /// `G_e` for a directed edge (shared with its inverse).
    pub fn edge_group(&self, e: usize) -> &FiniteGroupTable {
        &self.edge_group_of(e).group
    }

    /// `a ↦ aᵉ` into `G_{s(e)}`.
    pub fn injection(&self, e: usize) -> &GroupInjection {
        let eg = self.edge_group_of(e);
        if eg.pair.0 == e {
            &eg.into_src
        } else {
            &eg.into_tgt
        }
    }

    /// Number of undirected edges.
    pub fn num_edge_pairs(&self) -> usize {
        self.edge_groups.len()
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree[e]
    }

    /// The spanning tree as edge names, closed under inversion, in name order.
    pub fn spanning_tree(&self) -> Vec<String> {
        let mut names: Vec<String> = (0..self.edges.len())
            .filter(|&e| self.tree[e])
            .map(|e| self.edges[e].name.clone())
            .collect();
        names.sort();
        names
    }

    /// Edges of the tree path from `u` to `v`.
    pub fn tree_path(&self, u: usize, v: usize) -> Vec<usize> {
        let pu = &self.root_path[u];
        let pv = &self.root_path[v];
        let k = pu.iter().zip(pv).take_while(|(a, b)| a == b).count();
        let mut out: Vec<usize> = pu[k..].iter().rev().map(|&e| self.edges[e].inv).collect();
        out.extend_from_slice(&pv[k..]);
        out
    }

    /// An edge `y` with `s(y) ≠ t(y)` whose edge group maps onto `G_{s(y)}`.
    pub fn non_reduced_witness(&self) -> Option<usize> {
        (0..self.edges.len()).find(|&e| {
            let ed = &self.edges[e];
            ed.src != ed.tgt && self.edge_group(e).order() == self.vertices[ed.src].group.order()
        })
    }

    pub fn is_reduced(&self) -> bool {
        self.non_reduced_witness().is_none()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, GogError> {
        text.split_whitespace()
            .map(|s| {
                self.delta
                    .get(s)
                    .ok_or_else(|| GogError::UnknownSymbol(s.to_string()))
            })
            .collect()
    }

    pub fn render(&self, w: &[Letter]) -> String {
        self.delta.render(w)
    }

    pub fn inverse_letter(&self, l: Letter) -> Letter {
        match self.delta_syms[l] {
            DeltaSym::Elem { vertex, elem } => {
                let inv = self.vertices[vertex].group.inv(elem);
                self.elem_letter[vertex][inv].expect("non-identity")
            }
            DeltaSym::Edge(e) => self.edge_letter(self.edges[e].inv),
        }
    }

    /// Reverses `w` and inverts every letter.
    pub fn inverse_word(&self, w: &[Letter]) -> Word {
        w.iter().rev().map(|&l| self.inverse_letter(l)).collect()
    }

    /// Rewrites `w` to a reduced word equal to it in F(𝒢): adjacent letters
    /// of one vertex group are multiplied (identities dropped) and
    /// `ȳ aʸ y` becomes `a^ȳ`, including `ȳ y → 1`.
    pub fn reduce_word(&self, w: &[Letter]) -> Word {
        let mut stack: Vec<DeltaSym> = Vec::with_capacity(w.len());
        for &l in w {
            self.push_reduced(&mut stack, self.delta_syms[l]);
        }
        stack
            .into_iter()
            .map(|s| self.letter_of(s).expect("non-identity"))
            .collect()
    }

    fn push_reduced(&self, stack: &mut Vec<DeltaSym>, sym: DeltaSym) {
        match sym {
            DeltaSym::Elem { elem: 0, .. } => {}
            DeltaSym::Elem { vertex, elem } => {
                if let Some(&DeltaSym::Elem {
                    vertex: v2,
                    elem: h,
                }) = stack.last()
                {
                    if v2 == vertex {
                        stack.pop();
                        let prod = self.vertices[vertex].group.mul(h, elem);
                        self.push_reduced(stack, DeltaSym::Elem { vertex, elem: prod });
                        return;
                    }
                }
                stack.push(sym);
            }
            DeltaSym::Edge(y) => {
                let yb = self.edges[y].inv;
                let n = stack.len();
                if stack.last() == Some(&DeltaSym::Edge(yb)) {
                    stack.pop();
                    return;
                }
                if n >= 2 && stack[n - 2] == DeltaSym::Edge(yb) {
                    if let DeltaSym::Elem { vertex, elem } = stack[n - 1] {
                        if vertex == self.edges[y].src {
                            if let Some(a) = self.injection(y).preimage(elem) {
                                stack.truncate(n - 2);
                                let image = self.injection(yb).apply(a);
                                let target = self.edges[y].tgt;
                                self.push_reduced(
                                    stack,
                                    DeltaSym::Elem {
                                        vertex: target,
                                        elem: image,
                                    },
                                );
                                return;
                            }
                        }
                    }
                }
                stack.push(sym);
            }
        }
    }

    /// Checks that `w` reads a closed path at `base`.
    pub fn check_based(&self, base: usize, w: &[Letter]) -> Result<(), GogError> {
        let mut cur = base;
        for (i, &l) in w.iter().enumerate() {
            match self.delta_syms[l] {
                DeltaSym::Elem { vertex, .. } => {
                    if vertex != cur {
                        return Err(GogError::NotBasedAtP { position: i });
                    }
                }
                DeltaSym::Edge(e) => {
                    if self.edges[e].src != cur {
                        return Err(GogError::NotBasedAtP { position: i });
                    }
                    cur = self.edges[e].tgt;
                }
            }
        }
        if cur != base {
            return Err(GogError::NotBasedAtP { position: w.len() });
        }
        Ok(())
    }

    /// Word problem in π₁(𝒢, P) for closed-path words.
    pub fn gog_wp(&self, base: usize, w: &[Letter]) -> Result<bool, GogError> {
        self.check_based(base, w)?;
        Ok(self.reduce_word(w).is_empty())
    }

    /// Inserts spanning-tree paths so that `w` becomes a closed path at
    /// `base` with the same value in π₁(𝒢, T).
    pub fn to_based_form(&self, base: usize, w: &[Letter]) -> Word {
        let mut out = Vec::new();
        let mut cur = base;
        let go = |to: usize, cur: &mut usize, out: &mut Word| {
            for e in self.tree_path(*cur, to) {
                out.push(self.edge_letter(e));
            }
            *cur = to;
        };
        for &l in w {
            match self.delta_syms[l] {
                DeltaSym::Elem { vertex, .. } => {
                    go(vertex, &mut cur, &mut out);
                    out.push(l);
                }
                DeltaSym::Edge(e) => {
                    go(self.edges[e].src, &mut cur, &mut out);
                    out.push(l);
                    cur = self.edges[e].tgt;
                }
            }
        }
        go(base, &mut cur, &mut out);
        out
    }

    /// Multiset of vertex-group orders, sorted.
    pub fn vertex_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.vertices.iter().map(|v| v.group.order()).collect();
        v.sort_unstable();
        v
    }

    /// Multiset of edge-group orders (one per undirected edge), sorted.
    pub fn edge_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edge_groups.iter().map(|e| e.group.order()).collect();
        v.sort_unstable();
        v
    }

    pub fn to_file(&self) -> GogFile {
        GogFile {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexFile {
                    id: v.name.clone(),
                    table: v.group.table().to_vec(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeFile {
                    id: e.name.clone(),
                    inv: self.edges[e.inv].name.clone(),
                    src: self.vertices[e.src].name.clone(),
                    tgt: self.vertices[e.tgt].name.clone(),
                })
                .collect(),
            edge_groups: self
                .edge_groups
                .iter()
                .map(|eg| EdgeGroupFile {
                    pair: (
                        self.edges[eg.pair.0].name.clone(),
                        self.edges[eg.pair.1].name.clone(),
                    ),
                    table: eg.group.table().to_vec(),
                    into_src: eg.into_src.map().to_vec(),
                    into_tgt: eg.into_tgt.map().to_vec(),
                })
                .collect(),
        }
    }

    /// Short human description.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {} order {}\n", v.name, v.group.order()));
        }
        for eg in &self.edge_groups {
            let y = &self.edges[eg.pair.0];
            out.push_str(&format!(
                "edge {} / {}: {} -> {}, edge group order {}\n",
                y.name,
                self.edges[eg.pair.1].name,
                self.vertices[y.src].name,
                self.vertices[y.tgt].name,
                eg.group.order()
            ));
        }
        out
    }
}

/// On-disk graph of groups.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GogFile {
    pub vertices: Vec<VertexFile>,
    pub edges: Vec<EdgeFile>,
    pub edge_groups: Vec<EdgeGroupFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexFile {
    pub id: String,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeFile {
    pub id: String,
    pub inv: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeGroupFile {
    pub pair: (String, String),
    pub table: Vec<Vec<usize>>,
    pub into_src: Vec<usize>,
    pub into_tgt: Vec<usize>,
}

impl GogFile {
    pub fn build(&self) -> Result<GraphOfGroups, GogError> {
        let mut vertices = Vec::new();
        let mut vidx: BTreeMap<&str, usize> = BTreeMap::new();
        for v in &self.vertices {
            let group =
                FiniteGroupTable::validate(v.table.clone()).map_err(|source| GogError::Group {
                    what: format!("vertex {}", v.id),
                    source,
                })?;
            if vidx.insert(v.id.as_str(), vertices.len()).is_some() {
                return Err(GogError::DuplicateName(v.id.clone()));
            }
            vertices.push(Vertex {
                name: v.id.clone(),
                group,
            });
        }
        let mut eidx: HashMap<&str, usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if eidx.insert(e.id.as_str(), i).is_some() {
                return Err(GogError::DuplicateName(e.id.clone()));
            }
        }
        let vertex = |n: &str| {
            vidx.get(n)
                .copied()
                .ok_or_else(|| GogError::UnknownVertex(n.into()))
        };
        let edge = |n: &str| {
            eidx.get(n)
                .copied()
                .ok_or_else(|| GogError::UnknownEdge(n.into()))
        };
        let mut edges = Vec::new();
        for e in &self.edges {
            edges.push(Edge {
                name: e.id.clone(),
                inv: edge(&e.inv)?,
                src: vertex(&e.src)?,
                tgt: vertex(&e.tgt)?,
            });
        }
        let mut edge_groups = Vec::new();
        for eg in &self.edge_groups {
            let y = edge(&eg.pair.0)?;
            let yb = edge(&eg.pair.1)?;
            let what = format!("edge pair ({}, {})", eg.pair.0, eg.pair.1);
            let group =
                FiniteGroupTable::validate(eg.table.clone()).map_err(|source| GogError::Group {
                    what: what.clone(),
                    source,
                })?;
            if edges[y].inv != yb {
                return Err(GogError::BadInvolution(eg.pair.0.clone()));
            }
            let src = &vertices[edges[y].src].group;
            let tgt = &vertices[edges[y].tgt].group;
            let into_src =
                GroupInjection::new(&group, src, eg.into_src.clone()).map_err(|source| {
                    GogError::Group {
                        what: what.clone(),
                        source,
                    }
                })?;
            let into_tgt = GroupInjection::new(&group, tgt, eg.into_tgt.clone())
                .map_err(|source| GogError::Group { what, source })?;
            edge_groups.push(EdgeGroup {
                pair: (y, yb),
                group,
                into_src,
                into_tgt,
            });
        }
        GraphOfGroups::new(vertices, edges, edge_groups)
    }
}

/// Builders for small test and example graphs of groups.
pub mod build {
    use super::*;

    /// A path of vertices with the given groups and trivial edge groups;
    /// vertex `i` is named `names[i]`, edges `y{i}` / `y{i}b` point from
    /// vertex `i` to `i + 1`.
    pub fn path(names: &[&str], groups: &[FiniteGroupTable]) -> GraphOfGroups {
        let vertices: Vec<Vertex> = names
            .iter()
            .zip(groups)
            .map(|(n, g)| Vertex {
                name: n.to_string(),
                group: g.clone(),
            })
            .collect();
        let mut edges = Vec::new();
        let mut egs = Vec::new();
        for i in 0..names.len().saturating_sub(1) {
            let y = edges.len();
            edges.push(Edge {
                name: format!("y{i}"),
                inv: y + 1,
                src: i,
                tgt: i + 1,
            });
            edges.push(Edge {
                name: format!("y{i}b"),
                inv: y,
                src: i + 1,
                tgt: i,
            });
            egs.push(EdgeGroup {
                pair: (y, y + 1),
                group: FiniteGroupTable::trivial(),
                into_src: GroupInjection::identity(1),
                into_tgt: GroupInjection::identity(1),
            });
        }
        GraphOfGroups::new(vertices, edges, egs).expect("valid path")
    }

    /// One vertex, no edges.
    pub fn single(name: &str, group: FiniteGroupTable) -> GraphOfGroups {
        GraphOfGroups::new(
            vec![Vertex {
                name: name.into(),
                group,
            }],
            vec![],
            vec![],
        )
        .expect("valid vertex")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::build::path;
    use super::*;
    use crate::alphabet::words_up_to;

    pub(crate) fn dinf_gog() -> GraphOfGroups {
        path(
            &["P", "Q"],
            &[FiniteGroupTable::cyclic(2), FiniteGroupTable::cyclic(2)],
        )
    }

    #[test]
    fn delta_layout() {
        let g = dinf_gog();
        assert_eq!(g.delta().names(), &["P.g1", "Q.g1", "y0", "y0b"]);
        assert_eq!(g.spanning_tree(), vec!["y0".to_string(), "y0b".to_string()]);
    }

    #[test]
    fn reduction_examples() {
        let g = dinf_gog();
        let w = |s: &str| g.parse_word(s).unwrap();
        assert!(g.reduce_word(&w("y0b y0")).is_empty());
        assert!(g.reduce_word(&w("P.g1 P.g1")).is_empty());
        assert_eq!(g.reduce_word(&w("y0b P.g1 y0")), w("y0b P.g1 y0"));
        assert!(g.parse_word("zz").is_err());
    }

    #[test]
    fn based_words() {
        let g = dinf_gog();
        let w = |s: &str| g.parse_word(s).unwrap();
        assert_eq!(g.gog_wp(0, &[]), Ok(true));
        assert_eq!(g.gog_wp(0, &w("P.g1 y0 Q.g1 y0b")), Ok(false));
        assert_eq!(g.gog_wp(0, &w("y0 y0b")), Ok(true));
        assert_eq!(
            g.gog_wp(0, &w("Q.g1")),
            Err(GogError::NotBasedAtP { position: 0 })
        );
        assert_eq!(
            g.gog_wp(0, &w("y0")),
            Err(GogError::NotBasedAtP { position: 1 })
        );
        assert_eq!(g.to_based_form(0, &w("Q.g1")), w("y0 Q.g1 y0b"));
        assert_eq!(g.to_based_form(0, &w("P.g1 Q.g1")), w("P.g1 y0 Q.g1 y0b"));
        assert!(g.to_based_form(0, &[]).is_empty());
    }

    #[test]
    fn reduction_is_idempotent_and_preserves_value() {
        let g = dinf_gog();
        for u in words_up_to(g.delta().len(), 5) {
            let r = g.reduce_word(&u);
            assert_eq!(g.reduce_word(&r), r);
            let mut check = g.to_based_form(0, &u);
            check.extend(g.inverse_word(&g.to_based_form(0, &r)));
            assert_eq!(g.gog_wp(0, &check), Ok(true), "{}", g.render(&u));
        }
    }

    fn segment_with_edge_group(iso: bool) -> GraphOfGroups {
        let z2 = FiniteGroupTable::cyclic(2);
        let group = if iso {
            z2.clone()
        } else {
            FiniteGroupTable::trivial()
        };
        let n = group.order();
        GraphOfGroups::new(
            vec![
                Vertex {
                    name: "P".into(),
                    group: z2.clone(),
                },
                Vertex {
                    name: "Q".into(),
                    group: z2,
                },
            ],
            vec![
                Edge {
                    name: "y".into(),
                    inv: 1,
                    src: 0,
                    tgt: 1,
                },
                Edge {
                    name: "yb".into(),
                    inv: 0,
                    src: 1,
                    tgt: 0,
                },
            ],
            vec![EdgeGroup {
                pair: (0, 1),
                group,
                into_src: GroupInjection::identity(n),
                into_tgt: GroupInjection::identity(n),
            }],
        )
        .unwrap()
    }

    #[test]
    fn reducedness() {
        assert!(segment_with_edge_group(false).is_reduced());
        let g = segment_with_edge_group(true);
        assert_eq!(g.non_reduced_witness(), Some(0));
        assert!(build::single("P", FiniteGroupTable::cyclic(3)).is_reduced());
    }

    #[test]
    fn triangle_tree_and_paths() {
        let t = FiniteGroupTable::trivial();
        let vs: Vec<Vertex> = ["A", "B", "C"]
            .iter()
            .map(|n| Vertex {
                name: n.to_string(),
                group: t.clone(),
            })
            .collect();
        let mk = |name: &str, inv, src, tgt| Edge {
            name: name.into(),
            inv,
            src,
            tgt,
        };
        let edges = vec![
            mk("ab", 1, 0, 1),
            mk("ba", 0, 1, 0),
            mk("bc", 3, 1, 2),
            mk("cb", 2, 2, 1),
            mk("ac", 5, 0, 2),
            mk("ca", 4, 2, 0),
        ];
        let egs = [(0, 1), (2, 3), (4, 5)]
            .iter()
            .map(|&pair| EdgeGroup {
                pair,
                group: t.clone(),
                into_src: GroupInjection::identity(1),
                into_tgt: GroupInjection::identity(1),
            })
            .collect();
        let g = GraphOfGroups::new(vs, edges, egs).unwrap();
        assert_eq!(g.spanning_tree(), vec!["ab", "ac", "ba", "ca"]);
        assert_eq!(g.tree_path(1, 2), vec![1, 4]);
        let again = g.clone();
        assert_eq!(again.spanning_tree(), g.spanning_tree());
    }

    #[test]
    fn file_round_trip_and_errors() {
        let g = dinf_gog();
        let f = g.to_file();
        let json = serde_json::to_string(&f).unwrap();
        let back: GogFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), g);
        let mut bad = f.clone();
        bad.edge_groups.clear();
        assert!(matches!(bad.build(), Err(GogError::MissingEdgeGroup(_))));
        let mut bad = f.clone();
        bad.edges[0].inv = "y0".into();
        assert!(bad.build().is_err());
        let mut bad = f;
        bad.edges.clear();
        bad.edge_groups.clear();
        assert!(matches!(bad.build(), Err(GogError::Disconnected(_))));
    }
}
