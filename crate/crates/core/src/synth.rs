//! Bounded search for a graph-of-groups decomposition of a group.
//!
//! Candidates are graphs of groups with vertex and edge groups drawn from a
//! catalog of finite tables, together with images of Δ over Σ. The first
//! candidate accepted by [`verify`] is returned. Running out of candidates
//! says nothing about whether a decomposition exists.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::alphabet::{words_of_length, Alphabet, Word};
use crate::backend::GroupBackend;
use crate::fingroup::{injections, FiniteGroupTable, GroupError};
use crate::gog::{Edge, EdgeGroup, GraphOfGroups, Vertex};
use crate::verify::{verify, GogHom};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error("budget exhausted after {candidates} candidates without a verified decomposition")]
    BudgetExhausted { candidates: usize },
    #[error("invalid budget: {0}")]
    BadBudget(String),
    #[error("catalog entry `{name}`: {source}")]
    Catalog { name: String, source: GroupError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthBudget {
    pub max_vertices: usize,
    pub max_group_order: usize,
    pub max_edges: usize,
    pub max_image_length: usize,
    pub catalog: Vec<FiniteGroupTable>,
}

/// A catalog entry as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub table: Vec<Vec<usize>>,
}

pub fn load_catalog(entries: &[CatalogEntry]) -> Result<Vec<FiniteGroupTable>, SynthError> {
    entries
        .iter()
        .map(|e| {
            FiniteGroupTable::validate(e.table.clone()).map_err(|source| SynthError::Catalog {
                name: e.name.clone(),
                source,
            })
        })
        .collect()
}

/// Cyclic groups of order up to `max_order` and dihedral groups `D_n` with
/// `2n ≤ max_order`.
pub fn default_catalog(max_order: usize) -> Vec<FiniteGroupTable> {
    let mut cat: Vec<FiniteGroupTable> = (1..=max_order).map(FiniteGroupTable::cyclic).collect();
    cat.extend(
        (3..)
            .take_while(|n| 2 * n <= max_order)
            .map(FiniteGroupTable::dihedral),
    );
    cat
}

impl SynthBudget {
    pub fn new(
        max_vertices: usize,
        max_group_order: usize,
        max_edges: usize,
        max_image_length: usize,
    ) -> Self {
        SynthBudget {
            max_vertices,
            max_group_order,
            max_edges,
            max_image_length,
            catalog: default_catalog(max_group_order),
        }
    }

    pub fn with_catalog(mut self, catalog: Vec<FiniteGroupTable>) -> Self {
        self.catalog = catalog;
        self
    }

    fn check(&self) -> Result<(), SynthError> {
        if self.max_vertices == 0 {
            return Err(SynthError::BadBudget(
                "max_vertices must be at least 1".into(),
            ));
        }
        if self.max_group_order == 0 {
            return Err(SynthError::BadBudget(
                "max_group_order must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Catalog groups of admissible order, without repeated tables.
    fn vertex_groups(&self) -> Vec<FiniteGroupTable> {
        let mut out: Vec<FiniteGroupTable> = Vec::new();
        for g in &self.catalog {
            if g.order() <= self.max_group_order && !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    fn edge_groups(&self) -> Vec<FiniteGroupTable> {
        let mut out = vec![FiniteGroupTable::trivial()];
        for g in self.vertex_groups() {
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out
    }
}

/// Vertex names in index order; the first is also the least, so the
/// spanning-tree root and the base vertex coincide with vertex 0.
pub fn vertex_name(i: usize) -> String {
    const NAMES: [&str; 8] = ["P", "Q", "R", "S", "T", "U", "V", "W"];
    match NAMES.get(i) {
        Some(n) => n.to_string(),
        None => format!("W{i:03}"),
    }
}

/// Undirected edge lists `u ≤ v` on `n` vertices with `m` edges, as sorted
/// multisets, that connect all vertices.
fn connected_edge_lists(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        pairs: &[(usize, usize)],
        start: usize,
        m: usize,
        n: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == m {
            if connected(n, cur) {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..pairs.len() {
            cur.push(pairs[i]);
            rec(pairs, i, m, n, cur, out);
            cur.pop();
        }
    }
    rec(&pairs, 0, m, n, &mut cur, &mut out);
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let r = find(&mut parent, 0);
    (0..n).all(|x| find(&mut parent, x) == r)
}

/// Odometer over a list of option counts.
fn product_indices(counts: &[usize]) -> Vec<Vec<usize>> {
    if counts.contains(&0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0; counts.len()];
    loop {
        out.push(idx.clone());
        let mut i = counts.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < counts[i] {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Every reduced graph of groups with `n` vertices and `m` undirected edges
/// within the budget, sorted by the sum of vertex-group orders and then the
/// sum of edge-group orders.
fn structures(b: &SynthBudget, n: usize, m: usize) -> Vec<GraphOfGroups> {
    let vgroups = b.vertex_groups();
    let egroups = b.edge_groups();
    let mut out: Vec<(usize, usize, GraphOfGroups)> = Vec::new();
    let edge_lists = connected_edge_lists(n, m);
    for assign in product_indices(&vec![vgroups.len(); n]) {
        let vertices: Vec<Vertex> = assign
            .iter()
            .enumerate()
            .map(|(i, &gi)| Vertex {
                name: vertex_name(i),
                group: vgroups[gi].clone(),
            })
            .collect();
        let vorder: usize = vertices.iter().map(|v| v.group.order()).sum();
        for list in &edge_lists {
            // per edge: every (edge group, injection into src, injection into tgt)
            let options: Vec<Vec<EdgeGroup>> = list
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| {
                    let mut opts = Vec::new();
                    for e in &egroups {
                        for a in injections(e, &vertices[u].group) {
                            for c in injections(e, &vertices[v].group) {
                                opts.push(EdgeGroup {
                                    pair: (2 * i, 2 * i + 1),
                                    group: e.clone(),
                                    into_src: a.clone(),
                                    into_tgt: c,
                                });
                            }
                        }
                    }
                    opts
                })
                .collect();
            let edges: Vec<Edge> = list
                .iter()
                .enumerate()
                .flat_map(|(i, &(u, v))| {
                    [
                        Edge {
                            name: format!("y{i}"),
                            inv: 2 * i + 1,
                            src: u,
                            tgt: v,
                        },
                        Edge {
                            name: format!("y{i}b"),
                            inv: 2 * i,
                            src: v,
                            tgt: u,
                        },
                    ]
                })
                .collect();
            let counts: Vec<usize> = options.iter().map(Vec::len).collect();
            for choice in product_indices(&counts) {
                let egs: Vec<EdgeGroup> = choice
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| options[i][c].clone())
                    .collect();
                let eorder = egs.iter().map(|e| e.group.order()).sum();
                if let Ok(g) = GraphOfGroups::new(vertices.clone(), edges.clone(), egs) {
                    if g.is_reduced() {
                        out.push((vorder, eorder, g));
                    }
                }
            }
        }
    }
    out.sort_by_key(|(v, e, _)| (*v, *e));
    out.into_iter().map(|(_, _, g)| g).collect()
}

/// Tuples of `k` words over `sigma_len` letters, each of length at most
/// `max_len`, ordered by total length and then lexicographically by
/// position.
fn image_tuples(k: usize, sigma_len: usize, max_len: usize) -> Box<dyn Iterator<Item = Vec<Word>>> {
    let words_by_len: Vec<Vec<Word>> = (0..=max_len)
        .map(|l| words_of_length(sigma_len, l).collect())
        .collect();
    Box::new((0..=k * max_len).flat_map(move |total| {
        let words_by_len = words_by_len.clone();
        compositions(k, total, max_len)
            .into_iter()
            .flat_map(move |lens| {
                let choices: Vec<&Vec<Word>> = lens.iter().map(|&l| &words_by_len[l]).collect();
                let counts: Vec<usize> = choices.iter().map(|c| c.len()).collect();
                product_indices(&counts)
                    .into_iter()
                    .map(|idx| {
                        idx.iter()
                            .enumerate()
                            .map(|(i, &j)| choices[i][j].clone())
                            .collect()
                    })
                    .collect::<Vec<Vec<Word>>>()
            })
    }))
}

/// Ordered length vectors of `k` parts in `0..=max` summing to `total`.
fn compositions(k: usize, total: usize, max: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=max.min(total)).rev() {
        for mut rest in compositions(k - 1, total - first, max) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    // shorter images first in earlier positions
    out.reverse();
    out
}

/// All candidates `(𝒢, φ)` within the budget: reduced graphs of groups over
/// the catalog, with every Δ letter mapped to any word of length at most
/// `max_image_length`. Ordered by vertex count, edge count, group orders and
/// total image length.
pub fn enumerate_candidates(
    b: &SynthBudget,
    sigma: &Alphabet,
) -> Box<dyn Iterator<Item = (GraphOfGroups, GogHom)>> {
    let b = b.clone();
    let sigma_len = sigma.len();
    Box::new((1..=b.max_vertices).flat_map(move |n| {
        let b = b.clone();
        (n - 1..=b.max_edges.max(n - 1))
            .filter(move |&m| m <= b.max_edges)
            .flat_map(move |m| {
                let max_len = b.max_image_length;
                structures(&b, n, m).into_iter().flat_map(move |g| {
                    let k = g.delta().len();
                    image_tuples(k, sigma_len, max_len)
                        .map(move |images| (g.clone(), GogHom { base: 0, images }))
                })
            })
    }))
}

/// Distinct group elements represented by words of length at most `max_len`,
/// each by its shortlex-least word; the identity is index 0.
struct Ball<'a> {
    group: &'a dyn GroupBackend,
    reps: Vec<Word>,
    products: HashMap<(usize, usize), Option<usize>>,
}

impl<'a> Ball<'a> {
    fn new(group: &'a dyn GroupBackend, max_len: usize) -> Self {
        let n = group.sigma().len();
        let mut reps: Vec<Word> = Vec::new();
        for l in 0..=max_len {
            for w in words_of_length(n, l) {
                if !reps.iter().any(|r| group.equal(r, &w)) {
                    reps.push(w);
                }
            }
        }
        Ball {
            group,
            reps,
            products: HashMap::new(),
        }
    }

    fn find(&self, w: &[usize]) -> Option<usize> {
        self.reps.iter().position(|r| self.group.equal(r, w))
    }

    fn mul(&mut self, i: usize, j: usize) -> Option<usize> {
        if let Some(&k) = self.products.get(&(i, j)) {
            return k;
        }
        let mut w = self.reps[i].clone();
        w.extend_from_slice(&self.reps[j]);
        let k = self.find(&w);
        self.products.insert((i, j), k);
        k
    }

    fn inverse(&self, i: usize) -> usize {
        self.find(&self.group.inverse_word(&self.reps[i]))
            .expect("ball is closed under inverses")
    }

    /// Homomorphisms `table → G` whose every value lies in the ball, as
    /// maps from elements to ball indices.
    fn homs(&mut self, table: &FiniteGroupTable) -> Vec<Vec<usize>> {
        let gens = table.generating_set();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for imgs in product_indices(&vec![self.reps.len(); gens.len()]) {
            if let Some(map) = self.extend(table, &gens, &imgs) {
                if !out.contains(&map) {
                    out.push(map);
                }
            }
        }
        out.sort_by_key(|m| m.iter().map(|&i| self.reps[i].len()).sum::<usize>());
        out
    }

    fn extend(
        &mut self,
        table: &FiniteGroupTable,
        gens: &[usize],
        imgs: &[usize],
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; table.order()];
        map[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(imgs) {
                let y = table.mul(x, g);
                let fy = self.mul(map[x], img)?;
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }
}

/// A verified decomposition together with search statistics.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub gog: GraphOfGroups,
    pub hom: GogHom,
    pub structures: usize,
    pub candidates: usize,
}

/// Searches the budget for a graph of groups and a map verified to be an
/// isomorphism onto `group`.
///
/// Images are considered only up to equality in the group, each element
/// being represented by its shortlex-least word; spanning-tree edges map
/// to the empty word and `φ(ȳ)` is the inverse of `φ(y)`. Each of these
/// choices is forced by the homomorphism relations, so nothing verifiable
/// within the budget is skipped.
pub fn synthesize(group: &dyn GroupBackend, b: &SynthBudget) -> Result<Synthesis, SynthError> {
    b.check()?;
    let mut ball = Ball::new(group, b.max_image_length);
    let mut structures_seen = 0;
    let mut candidates = 0;
    for n in 1..=b.max_vertices {
        for m in n - 1..=b.max_edges {
            for g in structures(b, n, m) {
                structures_seen += 1;
                for hom in structure_homs(&g, &mut ball) {
                    candidates += 1;
                    if verify(&g, &hom, group).isomorphism {
                        return Ok(Synthesis {
                            gog: g,
                            hom,
                            structures: structures_seen,
                            candidates,
                        });
                    }
                }
            }
        }
    }
    Err(SynthError::BudgetExhausted { candidates })
}

/// Maps for one graph of groups: a homomorphism per vertex group and a
/// ball element per non-tree edge pair, ordered by total image length.
fn structure_homs(g: &GraphOfGroups, ball: &mut Ball<'_>) -> Vec<GogHom> {
    let mut slots: Vec<Vec<Vec<usize>>> = Vec::new();
    for v in g.vertices() {
        slots.push(ball.homs(&v.group));
    }
    let free_edges: Vec<usize> = (0..g.edges().len())
        .filter(|&e| !g.is_tree_edge(e) && e < g.edges()[e].inv)
        .collect();
    for _ in &free_edges {
        slots.push((0..ball.reps.len()).map(|i| vec![i]).collect());
    }
    let counts: Vec<usize> = slots.iter().map(Vec::len).collect();
    let nv = g.vertices().len();
    let mut out: Vec<(usize, GogHom)> = Vec::new();
    for choice in product_indices(&counts) {
        let mut images: Vec<Word> = vec![Vec::new(); g.delta().len()];
        for (v, &c) in choice[..nv].iter().enumerate() {
            let map = &slots[v][c];
            for elem in 1..map.len() {
                let l = g
                    .letter_of(crate::gog::DeltaSym::Elem { vertex: v, elem })
                    .expect("non-identity element");
                images[l] = ball.reps[map[elem]].clone();
            }
        }
        for (i, &e) in free_edges.iter().enumerate() {
            let r = slots[nv + i][choice[nv + i]][0];
            images[g.edge_letter(e)] = ball.reps[r].clone();
            images[g.edge_letter(g.edges()[e].inv)] = ball.reps[ball.inverse(r)].clone();
        }
        let total = images.iter().map(Vec::len).sum();
        out.push((total, GogHom { base: 0, images }));
    }
    out.sort_by_key(|(t, _)| *t);
    out.into_iter().map(|(_, h)| h).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vfpres::tests::{dinf, z2};
    use crate::vfpres::{RawPresentation, VfPresentation};

    fn sigma(n: usize) -> Alphabet {
        Alphabet::from_names((0..n).map(|i| format!("a{i}"))).unwrap()
    }

    #[test]
    fn smallest_budget_has_one_candidate() {
        let b = SynthBudget::new(1, 1, 0, 0);
        let all: Vec<_> = enumerate_candidates(&b, &sigma(2)).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].0.vertices()[0].group.order(), 1);
        assert!(all[0].1.images.is_empty());
    }

    #[test]
    fn candidate_count_matches_closed_form() {
        // Σ over vertex groups G of (Σ_{ℓ ≤ L} |Σ|^ℓ)^{|G|-1}
        let b = SynthBudget::new(1, 2, 0, 1).with_catalog(vec![
            FiniteGroupTable::trivial(),
            FiniteGroupTable::cyclic(2),
        ]);
        let counted = enumerate_candidates(&b, &sigma(2)).count();
        let per_letter: usize = (0..=1).map(|l| 2usize.pow(l)).sum();
        let expected: usize = [1usize, 2]
            .iter()
            .map(|&o| per_letter.pow(o as u32 - 1))
            .sum();
        assert_eq!(counted, expected);
        assert_eq!(counted, 4);
    }

    #[test]
    fn candidate_order_is_by_size() {
        let b = SynthBudget::new(2, 2, 1, 1);
        let keys: Vec<(usize, usize, usize, usize)> = enumerate_candidates(&b, &sigma(2))
            .map(|(g, h)| {
                (
                    g.vertices().len(),
                    g.num_edge_pairs(),
                    g.vertex_orders().iter().sum(),
                    h.images.iter().map(Vec::len).sum(),
                )
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_by_key(|k| (k.0, k.1, k.2));
        assert_eq!(
            keys.iter().map(|k| (k.0, k.1, k.2)).collect::<Vec<_>>(),
            sorted.iter().map(|k| (k.0, k.1, k.2)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn two_vertices_one_edge_gives_segments() {
        let b = SynthBudget::new(2, 2, 1, 0);
        let mut seen = 0;
        for (g, _) in enumerate_candidates(&b, &sigma(1)).filter(|(g, _)| g.vertices().len() == 2) {
            assert_eq!(g.num_edge_pairs(), 1);
            let e = &g.edges()[0];
            assert_ne!(e.src, e.tgt);
            seen += 1;
        }
        assert!(seen > 0);
    }

    #[test]
    fn trivial_group() {
        let raw = RawPresentation {
            x: vec![],
            s: vec!["1".into()],
            rules: vec![],
        };
        let p = VfPresentation::validate(&raw).unwrap();
        let r = synthesize(&p, &SynthBudget::new(1, 1, 0, 0)).unwrap();
        assert_eq!(r.gog.vertices().len(), 1);
        assert_eq!(r.gog.vertices()[0].group.order(), 1);
        assert!(r.hom.images.is_empty());
    }

    #[test]
    fn z2_is_a_single_vertex() {
        let p = z2();
        let r = synthesize(&p, &SynthBudget::new(2, 2, 1, 1)).unwrap();
        assert_eq!(r.gog.vertices().len(), 1);
        assert_eq!(r.gog.vertices()[0].group.order(), 2);
        let l = r.gog.delta().get("P.g1").unwrap();
        assert_eq!(p.sigma().render(&r.hom.images[l]), "s");
    }

    #[test]
    fn dinf_is_a_segment() {
        let p = dinf();
        let r = synthesize(&p, &SynthBudget::new(2, 2, 1, 2)).unwrap();
        assert_eq!(r.gog.vertices().len(), 2);
        assert_eq!(r.gog.vertex_orders(), vec![2, 2]);
        let img = |s: &str| {
            p.sigma()
                .render(&r.hom.images[r.gog.delta().get(s).unwrap()])
        };
        assert_eq!(img("P.g1"), "s");
        assert_eq!(img("Q.g1"), "t s");
        assert!(verify(&r.gog, &r.hom, &p).isomorphism);
        // deterministic
        let again = synthesize(&p, &SynthBudget::new(2, 2, 1, 2)).unwrap();
        assert_eq!(again.hom, r.hom);
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let p = dinf();
        let err = synthesize(&p, &SynthBudget::new(1, 2, 0, 2)).unwrap_err();
        assert!(matches!(err, SynthError::BudgetExhausted { .. }));
    }
}
