//! Slide moves and the isomorphism search built on them.
//!
//! An edge `x` with `s(x) = P` can be slid along another edge `y` with
//! `s(y) = P` (and `x ∉ {y, ȳ}`) using a conjugator `g ∈ G_P` whenever
//! `g⁻¹ G_xˣ g ⊆ G_yʸ`. Afterwards `s(x) = t(y)` and the injection of `G_x`
//! becomes `ι_ȳ ∘ ι_y⁻¹ ∘ c_g ∘ ι_x`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::Word;
use crate::backend::GroupBackend;
use crate::fingroup::{isomorphisms, FiniteGroupTable, GroupInjection};
use crate::gog::{DeltaSym, GogError, GraphOfGroups};
use crate::verify::{free_reduce, rebase_to_tree, GogHom};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SlideError {
    #[error("invalid slide move: {0}")]
    InvalidMove(String),
    #[error("sliding `{x}` along `{y}` gives a graph of groups that is not reduced")]
    ResultNotReduced { x: String, y: String },
    #[error("input {0} is not reduced")]
    NotReduced(usize),
    #[error(transparent)]
    Gog(#[from] GogError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlideMove {
    pub x: usize,
    pub y: usize,
    pub g: usize,
}

/// A move described by names, stable across slides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMove {
    pub x: String,
    pub y: String,
    pub g: usize,
}

impl fmt::Display for NamedMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "slide {} along {} (g = {})", self.x, self.y, self.g)
    }
}

impl SlideMove {
    pub fn named(&self, g: &GraphOfGroups) -> NamedMove {
        NamedMove {
            x: g.edges()[self.x].name.clone(),
            y: g.edges()[self.y].name.clone(),
            g: self.g,
        }
    }

    pub fn from_names(
        g: &GraphOfGroups,
        x: &str,
        y: &str,
        elem: usize,
    ) -> Result<Self, SlideError> {
        let x = g
            .edge_index(x)
            .ok_or_else(|| SlideError::InvalidMove(format!("unknown edge `{x}`")))?;
        let y = g
            .edge_index(y)
            .ok_or_else(|| SlideError::InvalidMove(format!("unknown edge `{y}`")))?;
        Ok(SlideMove { x, y, g: elem })
    }
}

fn image_set(g: &GraphOfGroups, e: usize) -> BTreeSet<usize> {
    g.injection(e).image()
}

/// Checks the conditions of a slide move.
pub fn check_move(g: &GraphOfGroups, m: &SlideMove) -> Result<(), SlideError> {
    let edges = g.edges();
    if m.x >= edges.len() || m.y >= edges.len() {
        return Err(SlideError::InvalidMove("edge out of range".into()));
    }
    let (x, y) = (&edges[m.x], &edges[m.y]);
    if x.src != y.src {
        return Err(SlideError::InvalidMove(format!(
            "`{}` and `{}` do not share a source",
            x.name, y.name
        )));
    }
    if m.x == m.y || m.x == y.inv {
        return Err(SlideError::InvalidMove(format!(
            "cannot slide `{}` along itself",
            x.name
        )));
    }
    let group = &g.vertices()[x.src].group;
    if m.g >= group.order() {
        return Err(SlideError::InvalidMove(format!(
            "element {} out of range",
            m.g
        )));
    }
    let target = image_set(g, m.y);
    if !image_set(g, m.x)
        .iter()
        .all(|&h| target.contains(&group.conjugate(h, m.g)))
    {
        return Err(SlideError::InvalidMove(format!(
            "element {} does not conjugate the image of `{}` into that of `{}`",
            m.g, x.name, y.name
        )));
    }
    Ok(())
}

/// Every valid `(x, y, g)`.
pub fn enumerate_slides(g: &GraphOfGroups) -> Vec<SlideMove> {
    let mut out = Vec::new();
    for x in 0..g.edges().len() {
        for y in 0..g.edges().len() {
            if g.edges()[x].src != g.edges()[y].src || x == y || x == g.edges()[y].inv {
                continue;
            }
            let order = g.vertices()[g.edges()[x].src].group.order();
            for elem in 0..order {
                let m = SlideMove { x, y, g: elem };
                if check_move(g, &m).is_ok() {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Applies a move; results that are not reduced are rejected.
pub fn apply_slide(g: &GraphOfGroups, m: &SlideMove) -> Result<GraphOfGroups, SlideError> {
    let result = apply_slide_unchecked(g, m)?;
    if !result.is_reduced() {
        return Err(SlideError::ResultNotReduced {
            x: g.edges()[m.x].name.clone(),
            y: g.edges()[m.y].name.clone(),
        });
    }
    Ok(result)
}

/// Applies a move without the reducedness requirement on the result.
pub fn apply_slide_unchecked(
    g: &GraphOfGroups,
    m: &SlideMove,
) -> Result<GraphOfGroups, SlideError> {
    check_move(g, m)?;
    let p = g.edges()[m.x].src;
    let q = g.edges()[m.y].tgt;
    let gp = &g.vertices()[p].group;
    let iota_x = g.injection(m.x);
    let iota_y = g.injection(m.y);
    let iota_yb = g.injection(g.edges()[m.y].inv);
    let new_map: Vec<usize> = (0..g.edge_group(m.x).order())
        .map(|a| {
            let c = gp.conjugate(iota_x.apply(a), m.g);
            let b = iota_y.preimage(c).expect("checked conjugation condition");
            iota_yb.apply(b)
        })
        .collect();
    let mut edges = g.edges().to_vec();
    let xb = edges[m.x].inv;
    edges[m.x].src = q;
    edges[xb].tgt = q;
    let mut egs = g.edge_groups().to_vec();
    let idx = egs
        .iter()
        .position(|eg| eg.pair.0 == m.x || eg.pair.1 == m.x)
        .expect("edge group");
    let q_group = &g.vertices()[q].group;
    let inj = GroupInjection::new(&egs[idx].group, q_group, new_map)
        .map_err(|e| SlideError::InvalidMove(e.to_string()))?;
    if egs[idx].pair.0 == m.x {
        egs[idx].into_src = inj;
    } else {
        egs[idx].into_tgt = inj;
    }
    Ok(GraphOfGroups::new(g.vertices().to_vec(), edges, egs)?)
}

/// Images in the new Δ of the old Δ letters: `x ↦ g y x`, `x̄ ↦ x̄ ȳ g⁻¹`,
/// every other letter fixed. The result defines an isomorphism between the
/// groups of the two graphs of groups.
pub fn induced_map(old: &GraphOfGroups, new: &GraphOfGroups, m: &SlideMove) -> Vec<Word> {
    let p = old.edges()[m.x].src;
    let xb = old.edges()[m.x].inv;
    let yb = old.edges()[m.y].inv;
    let g_letter = new.letter_of(DeltaSym::Elem {
        vertex: p,
        elem: m.g,
    });
    let ginv = old.vertices()[p].group.inv(m.g);
    let ginv_letter = new.letter_of(DeltaSym::Elem {
        vertex: p,
        elem: ginv,
    });
    old.delta()
        .letters()
        .map(|l| match old.sym(l) {
            DeltaSym::Edge(e) if e == m.x => {
                let mut w: Word = g_letter.into_iter().collect();
                w.push(new.edge_letter(m.y));
                w.push(new.edge_letter(m.x));
                w
            }
            DeltaSym::Edge(e) if e == xb => {
                let mut w = vec![new.edge_letter(xb), new.edge_letter(yb)];
                w.extend(ginv_letter);
                w
            }
            s => vec![new.letter_of(s).expect("same Δ")],
        })
        .collect()
}

/// Carries a homomorphism on the old graph of groups across the move and
/// adapts it to the new spanning tree.
pub fn transport_hom(
    old: &GraphOfGroups,
    new: &GraphOfGroups,
    m: &SlideMove,
    h: &GogHom,
    group: &dyn GroupBackend,
) -> GogHom {
    let p = old.edges()[m.x].src;
    let xb = old.edges()[m.x].inv;
    let yb = old.edges()[m.y].inv;
    let img_elem = |elem: usize| -> Word {
        old.letter_of(DeltaSym::Elem { vertex: p, elem })
            .map(|l| h.images[l].clone())
            .unwrap_or_default()
    };
    let gp = &old.vertices()[p].group;
    let x_l = old.edge_letter(m.x);
    let xb_l = old.edge_letter(xb);
    let mut images = h.images.clone();
    // x_new = ȳ g⁻¹ x_old, x̄_new = x̄_old g y
    let mut wx = h.images[old.edge_letter(yb)].clone();
    wx.extend(img_elem(gp.inv(m.g)));
    wx.extend_from_slice(&h.images[x_l]);
    let mut wxb = h.images[xb_l].clone();
    wxb.extend(img_elem(m.g));
    wxb.extend_from_slice(&h.images[old.edge_letter(m.y)]);
    images[x_l] = free_reduce(&wx, group);
    images[xb_l] = free_reduce(&wxb, group);
    let moved = GogHom {
        base: h.base,
        images,
    };
    rebase_to_tree(new, &moved, group)
}

/// Slide invariants: vertex-group orders, edge-group orders, edge count.
pub fn invariants(g: &GraphOfGroups) -> (Vec<usize>, Vec<usize>, usize) {
    (g.vertex_orders(), g.edge_orders(), g.num_edge_pairs())
}

/// A witness that two graphs of groups are equivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub vertex_map: Vec<usize>,
    /// Directed edge map, compatible with inversion.
    pub edge_map: Vec<usize>,
    pub vertex_isos: Vec<GroupInjection>,
}

/// Isomorphism of graphs of groups up to inner automorphisms of the vertex
/// groups at each edge end.
pub fn gog_equivalent(g1: &GraphOfGroups, g2: &GraphOfGroups) -> bool {
    find_equivalence(g1, g2).is_some()
}

pub fn find_equivalence(g1: &GraphOfGroups, g2: &GraphOfGroups) -> Option<Equivalence> {
    if invariants(g1) != invariants(g2) || signature(g1) != signature(g2) {
        return None;
    }
    let n = g1.vertices().len();
    let vsig1: Vec<_> = (0..n).map(|v| vertex_signature(g1, v)).collect();
    let vsig2: Vec<_> = (0..n).map(|v| vertex_signature(g2, v)).collect();
    let mut search = EquivSearch {
        g1,
        g2,
        vsig1,
        vsig2,
        vertex_map: vec![usize::MAX; n],
        used: vec![false; n],
        isos: Vec::new(),
    };
    search.vertices(0)
}

struct EquivSearch<'a> {
    g1: &'a GraphOfGroups,
    g2: &'a GraphOfGroups,
    vsig1: Vec<VertexSig>,
    vsig2: Vec<VertexSig>,
    vertex_map: Vec<usize>,
    used: Vec<bool>,
    isos: Vec<GroupInjection>,
}

impl EquivSearch<'_> {
    fn vertices(&mut self, v: usize) -> Option<Equivalence> {
        let n = self.g1.vertices().len();
        if v == n {
            let mut edge_map = vec![usize::MAX; self.g1.edges().len()];
            let mut used = vec![false; self.g2.edges().len()];
            if self.edges(0, &mut edge_map, &mut used) {
                return Some(Equivalence {
                    vertex_map: self.vertex_map.clone(),
                    edge_map,
                    vertex_isos: self.isos.clone(),
                });
            }
            return None;
        }
        for w in 0..n {
            if self.used[w] || self.vsig1[v] != self.vsig2[w] {
                continue;
            }
            if !self.adjacency_consistent(v, w) {
                continue;
            }
            let candidates =
                isomorphisms(&self.g1.vertices()[v].group, &self.g2.vertices()[w].group);
            for alpha in candidates {
                self.vertex_map[v] = w;
                self.used[w] = true;
                self.isos.push(alpha);
                if let Some(e) = self.vertices(v + 1) {
                    return Some(e);
                }
                self.isos.pop();
                self.used[w] = false;
                self.vertex_map[v] = usize::MAX;
            }
        }
        None
    }

    /// Edge multiplicities between already mapped vertices agree.
    fn adjacency_consistent(&self, v: usize, w: usize) -> bool {
        let count = |g: &GraphOfGroups, a: usize, b: usize| {
            g.edges()
                .iter()
                .filter(|e| e.src == a && e.tgt == b)
                .count()
        };
        (0..v).all(|u| {
            let mu = self.vertex_map[u];
            count(self.g1, u, v) == count(self.g2, mu, w)
        }) && count(self.g1, v, v) == count(self.g2, w, w)
    }

    /// Assigns undirected edges of `g1` in index order.
    fn edges(&self, e: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if e == map.len() {
            return true;
        }
        if map[e] != usize::MAX {
            return self.edges(e + 1, map, used);
        }
        let ed = &self.g1.edges()[e];
        let (s2, t2) = (self.vertex_map[ed.src], self.vertex_map[ed.tgt]);
        for f in 0..self.g2.edges().len() {
            let fd = &self.g2.edges()[f];
            if used[f] || fd.src != s2 || fd.tgt != t2 {
                continue;
            }
            if self.g1.edge_group(e).order() != self.g2.edge_group(f).order() {
                continue;
            }
            if !self.edge_compatible(e, f) {
                continue;
            }
            map[e] = f;
            map[ed.inv] = fd.inv;
            used[f] = true;
            used[fd.inv] = true;
            if self.edges(e + 1, map, used) {
                return true;
            }
            used[f] = false;
            used[fd.inv] = false;
            map[e] = usize::MAX;
            map[ed.inv] = usize::MAX;
        }
        false
    }

    /// Some edge-group isomorphism `β` makes both ends commute up to
    /// conjugation in the target vertex groups.
    fn edge_compatible(&self, e: usize, f: usize) -> bool {
        let (g1, g2) = (self.g1, self.g2);
        let eb = g1.edges()[e].inv;
        let fb = g2.edges()[f].inv;
        isomorphisms(g1.edge_group(e), g2.edge_group(f))
            .iter()
            .any(|beta| {
                [(e, f), (eb, fb)].iter().all(|&(d1, d2)| {
                    let v1 = g1.edges()[d1].src;
                    let alpha = &self.isos[v1];
                    let target = &g2.vertices()[g2.edges()[d2].src].group;
                    target.elements().any(|h| {
                        g1.edge_group(d1).elements().all(|a| {
                            let lhs = alpha.apply(g1.injection(d1).apply(a));
                            let rhs = target.conjugate(g2.injection(d2).apply(beta.apply(a)), h);
                            lhs == rhs
                        })
                    })
                })
            })
    }
}

type VertexSig = (usize, Vec<usize>, Vec<(usize, usize, bool)>);

/// Vertex-group order profile plus incident (edge order, far-end order, loop).
fn vertex_signature(g: &GraphOfGroups, v: usize) -> VertexSig {
    let group = &g.vertices()[v].group;
    let mut inc: Vec<(usize, usize, bool)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.src == v)
        .map(|(i, e)| {
            (
                g.edge_group(i).order(),
                g.vertices()[e.tgt].group.order(),
                e.tgt == v,
            )
        })
        .collect();
    inc.sort_unstable();
    (group.order(), crate::fingroup::order_profile(group), inc)
}

fn signature(g: &GraphOfGroups) -> Vec<VertexSig> {
    let mut s: Vec<_> = (0..g.vertices().len())
        .map(|v| vertex_signature(g, v))
        .collect();
    s.sort();
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IsoVerdict {
    Iso { moves: Vec<NamedMove> },
    NotIso { reason: String },
    Inconclusive { depth: usize, states: usize },
}

/// Search statistics returned alongside the verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub states: usize,
    pub rejected_not_reduced: usize,
}

/// Breadth-first search over slide sequences from `g1`, identifying states
/// up to [`gog_equivalent`]. `max_depth = None` searches to exhaustion.
pub fn iso_decide(
    g1: &GraphOfGroups,
    g2: &GraphOfGroups,
    max_depth: Option<usize>,
) -> Result<(IsoVerdict, SearchStats), SlideError> {
    if !g1.is_reduced() {
        return Err(SlideError::NotReduced(1));
    }
    if !g2.is_reduced() {
        return Err(SlideError::NotReduced(2));
    }
    let mut stats = SearchStats::default();
    let (i1, i2) = (invariants(g1), invariants(g2));
    if i1 != i2 {
        let reason = if i1.0 != i2.0 {
            format!("vertex group orders differ: {:?} vs {:?}", i1.0, i2.0)
        } else if i1.1 != i2.1 {
            format!("edge group orders differ: {:?} vs {:?}", i1.1, i2.1)
        } else {
            format!("edge counts differ: {} vs {}", i1.2, i2.2)
        };
        return Ok((IsoVerdict::NotIso { reason }, stats));
    }
    if gog_equivalent(g1, g2) {
        stats.states = 1;
        return Ok((IsoVerdict::Iso { moves: vec![] }, stats));
    }
    let mut visited: HashMap<Vec<VertexSig>, Vec<usize>> = HashMap::new();
    let mut states: Vec<(GraphOfGroups, Vec<NamedMove>)> = vec![(g1.clone(), vec![])];
    visited.entry(signature(g1)).or_default().push(0);
    let mut frontier = vec![0usize];
    let mut depth = 0;
    while !frontier.is_empty() {
        if max_depth.is_some_and(|d| depth >= d) {
            stats.states = states.len();
            return Ok((
                IsoVerdict::Inconclusive {
                    depth,
                    states: states.len(),
                },
                stats,
            ));
        }
        let mut next = Vec::new();
        for &id in &frontier {
            let (cur, path) = states[id].clone();
            for m in enumerate_slides(&cur) {
                let new = match apply_slide(&cur, &m) {
                    Ok(n) => n,
                    Err(SlideError::ResultNotReduced { .. }) => {
                        stats.rejected_not_reduced += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let sig = signature(&new);
                let bucket = visited.entry(sig).or_default();
                if bucket.iter().any(|&j| gog_equivalent(&states[j].0, &new)) {
                    continue;
                }
                let mut p = path.clone();
                p.push(m.named(&cur));
                if gog_equivalent(&new, g2) {
                    stats.states = states.len() + 1;
                    return Ok((IsoVerdict::Iso { moves: p }, stats));
                }
                bucket.push(states.len());
                next.push(states.len());
                states.push((new, p));
            }
        }
        frontier = next;
        depth += 1;
    }
    stats.states = states.len();
    Ok((
        IsoVerdict::NotIso {
            reason: format!("all {} reachable states explored", states.len()),
        },
        stats,
    ))
}

/// Replays named moves from `g`.
pub fn replay(g: &GraphOfGroups, moves: &[NamedMove]) -> Result<GraphOfGroups, SlideError> {
    let mut cur = g.clone();
    for m in moves {
        let mv = SlideMove::from_names(&cur, &m.x, &m.y, m.g)?;
        cur = apply_slide(&cur, &mv)?;
    }
    Ok(cur)
}

/// A trivial-edge-group path with groups `Z/orders[i]`, used in examples.
pub fn cyclic_path(names: &[&str], orders: &[usize]) -> GraphOfGroups {
    let groups: Vec<FiniteGroupTable> = orders
        .iter()
        .map(|&n| FiniteGroupTable::cyclic(n))
        .collect();
    crate::gog::build::path(names, &groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::tests::dinf_gog;

    /// P(Z/2) - Q(Z/3) - R(Z/5), centred at Q.
    fn path_q() -> GraphOfGroups {
        cyclic_path(&["P", "Q", "R"], &[2, 3, 5])
    }

    /// Same vertex groups, centred at R: P - R - Q.
    fn path_r() -> GraphOfGroups {
        cyclic_path(&["P", "R", "Q"], &[2, 5, 3])
    }

    #[test]
    fn single_edge_has_no_moves() {
        assert!(enumerate_slides(&dinf_gog()).is_empty());
    }

    #[test]
    fn moves_at_the_centre() {
        let g = path_q();
        let moves = enumerate_slides(&g);
        // at Q: y0b (Q→P) along y1 (Q→R) and y1 along y0b, each for 3 conjugators
        let y0b = g.edge_index("y0b").unwrap();
        let y1 = g.edge_index("y1").unwrap();
        assert!(moves.contains(&SlideMove {
            x: y0b,
            y: y1,
            g: 0
        }));
        assert!(moves.contains(&SlideMove {
            x: y1,
            y: y0b,
            g: 0
        }));
        assert_eq!(moves.len(), 2 * 3);
    }

    #[test]
    fn slide_recentres_the_path() {
        let g = path_q();
        let m = SlideMove::from_names(&g, "y0b", "y1", 0).unwrap();
        let h = apply_slide(&g, &m).unwrap();
        let r = h.vertex_index("R").unwrap();
        let y0b = h.edge_index("y0b").unwrap();
        assert_eq!(h.edges()[y0b].src, r);
        assert_eq!(invariants(&g), invariants(&h));
        assert!(gog_equivalent(&h, &path_r()));
        assert!(!gog_equivalent(&g, &path_r()));
        // sliding back along the reversed edge restores an equivalent graph
        let back = SlideMove::from_names(&h, "y0b", "y1b", 0).unwrap();
        assert!(gog_equivalent(&apply_slide(&h, &back).unwrap(), &g));
    }

    #[test]
    fn invalid_moves() {
        let g = path_q();
        assert!(matches!(
            apply_slide(&g, &SlideMove::from_names(&g, "y0", "y1", 0).unwrap()),
            Err(SlideError::InvalidMove(_))
        ));
        // non-conjugating element: needs a nontrivial edge group
        let z2 = FiniteGroupTable::cyclic(2);
        let z4 = FiniteGroupTable::cyclic(4);
        let file = crate::gog::GogFile {
            vertices: vec![
                crate::gog::VertexFile {
                    id: "A".into(),
                    table: z4.table().to_vec(),
                },
                crate::gog::VertexFile {
                    id: "B".into(),
                    table: z4.table().to_vec(),
                },
                crate::gog::VertexFile {
                    id: "C".into(),
                    table: z4.table().to_vec(),
                },
            ],
            edges: vec![
                crate::gog::EdgeFile {
                    id: "u".into(),
                    inv: "ub".into(),
                    src: "A".into(),
                    tgt: "B".into(),
                },
                crate::gog::EdgeFile {
                    id: "ub".into(),
                    inv: "u".into(),
                    src: "B".into(),
                    tgt: "A".into(),
                },
                crate::gog::EdgeFile {
                    id: "v".into(),
                    inv: "vb".into(),
                    src: "A".into(),
                    tgt: "C".into(),
                },
                crate::gog::EdgeFile {
                    id: "vb".into(),
                    inv: "v".into(),
                    src: "C".into(),
                    tgt: "A".into(),
                },
            ],
            edge_groups: vec![
                crate::gog::EdgeGroupFile {
                    pair: ("u".into(), "ub".into()),
                    table: z2.table().to_vec(),
                    into_src: vec![0, 2],
                    into_tgt: vec![0, 2],
                },
                crate::gog::EdgeGroupFile {
                    pair: ("v".into(), "vb".into()),
                    table: FiniteGroupTable::trivial().table().to_vec(),
                    into_src: vec![0],
                    into_tgt: vec![0],
                },
            ],
        };
        let g = file.build().unwrap();
        // Z/2 image of u cannot be conjugated into the trivial image of v
        let m = SlideMove::from_names(&g, "u", "v", 1).unwrap();
        assert!(matches!(
            check_move(&g, &m),
            Err(SlideError::InvalidMove(_))
        ));
        // the other way round works for every conjugator
        assert!(check_move(&g, &SlideMove::from_names(&g, "v", "u", 3).unwrap()).is_ok());
    }

    #[test]
    fn equivalence_is_reflexive_and_respects_renaming() {
        let g = path_q();
        assert!(gog_equivalent(&g, &g));
        let renamed = cyclic_path(&["A", "B", "C"], &[2, 3, 5]);
        assert!(gog_equivalent(&g, &renamed));
        assert!(gog_equivalent(&renamed, &g));
        let s22 = cyclic_path(&["P", "Q"], &[2, 2]);
        let s23 = cyclic_path(&["P", "Q"], &[2, 3]);
        assert!(!gog_equivalent(&s22, &s23));
    }

    #[test]
    fn iso_search() {
        let (v, _) = iso_decide(&path_q(), &path_q(), None).unwrap();
        assert_eq!(v, IsoVerdict::Iso { moves: vec![] });
        let (v, _) = iso_decide(&path_q(), &path_r(), None).unwrap();
        match v {
            IsoVerdict::Iso { moves } => {
                assert_eq!(moves.len(), 1);
                assert!(gog_equivalent(
                    &replay(&path_q(), &moves).unwrap(),
                    &path_r()
                ));
            }
            other => panic!("unexpected {other:?}"),
        }
        let s22 = cyclic_path(&["P", "Q"], &[2, 2]);
        let s23 = cyclic_path(&["P", "Q"], &[2, 3]);
        assert!(matches!(
            iso_decide(&s22, &s23, None).unwrap().0,
            IsoVerdict::NotIso { .. }
        ));
        // depth 0 cannot reach a different centre
        assert!(matches!(
            iso_decide(&path_q(), &path_r(), Some(0)).unwrap().0,
            IsoVerdict::Inconclusive { .. }
        ));
    }

    #[test]
    fn permuted_paths_are_related_by_slides() {
        let a = cyclic_path(&["P", "Q", "R"], &[2, 3, 3]);
        let b = cyclic_path(&["P", "Q", "R"], &[3, 2, 3]);
        let (v, stats) = iso_decide(&a, &b, None).unwrap();
        let IsoVerdict::Iso { moves } = v else {
            panic!("{v:?} {stats:?}")
        };
        assert!(gog_equivalent(&replay(&a, &moves).unwrap(), &b));
    }
}
