//! Deciding whether a map `φ: Δ → Σ*` induces an isomorphism from the
//! fundamental group of a graph of groups onto a target group.
//!
//! The three stages are the homomorphism check (finitely many defining
//! relations), surjectivity (rational subset membership of every letter of
//! Σ in the submonoid generated by the images) and injectivity (emptiness
//! of the set of nonempty reduced closed-path words mapped to 1).

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::backend::GroupBackend;
use crate::gog::{DeltaSym, GraphOfGroups};
use crate::lang::{intersect_pda_nfa, inverse_hom, pda_empty, rational_member, Nfa};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown Δ symbol `{0}`")]
    UnknownSymbol(String),
    #[error("no image given for `{0}`")]
    MissingImage(String),
    #[error("image of `{0}` given twice")]
    DuplicateImage(String),
    #[error("image of `{sym}`: unknown letter `{letter}`")]
    UnknownLetter { sym: String, letter: String },
}

/// Images of the letters of Δ, indexed by Δ letter, plus the base vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GogHom {
    pub base: usize,
    pub images: Vec<Word>,
}

impl GogHom {
    /// `φ(u)` as a word over Σ.
    pub fn apply(&self, u: &[Letter]) -> Word {
        u.iter()
            .flat_map(|&l| self.images[l].iter().copied())
            .collect()
    }

    fn elem_image<'a>(&'a self, g: &GraphOfGroups, vertex: usize, elem: usize) -> &'a [Letter] {
        match g.letter_of(DeltaSym::Elem { vertex, elem }) {
            Some(l) => &self.images[l],
            None => &[],
        }
    }

    pub fn to_file(&self, g: &GraphOfGroups, sigma: &Alphabet) -> HomFile {
        HomFile {
            base: g.vertices()[self.base].name.clone(),
            images: self
                .images
                .iter()
                .enumerate()
                .map(|(l, w)| ImageFile {
                    sym: g.delta().name(l).to_string(),
                    word: w.iter().map(|&a| sigma.name(a).to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomFile {
    pub base: String,
    pub images: Vec<ImageFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ImageFile {
    pub sym: String,
    pub word: Vec<String>,
}

impl HomFile {
    pub fn resolve(&self, g: &GraphOfGroups, sigma: &Alphabet) -> Result<GogHom, HomError> {
        let base = g
            .vertex_index(&self.base)
            .ok_or_else(|| HomError::UnknownVertex(self.base.clone()))?;
        let mut images: Vec<Option<Word>> = vec![None; g.delta().len()];
        for im in &self.images {
            let l = g
                .delta()
                .get(&im.sym)
                .ok_or_else(|| HomError::UnknownSymbol(im.sym.clone()))?;
            let word = im
                .word
                .iter()
                .map(|a| {
                    sigma.get(a).ok_or_else(|| HomError::UnknownLetter {
                        sym: im.sym.clone(),
                        letter: a.clone(),
                    })
                })
                .collect::<Result<Word, _>>()?;
            if images[l].replace(word).is_some() {
                return Err(HomError::DuplicateImage(im.sym.clone()));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(l, w)| w.ok_or_else(|| HomError::MissingImage(g.delta().name(l).to_string())))
            .collect::<Result<_, _>>()?;
        Ok(GogHom { base, images })
    }
}

/// A defining relation of π₁(𝒢, T) that `φ` does not respect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationFailure {
    /// `φ(g)φ(h) ≠ φ(gh)` in the vertex group.
    VertexTable { vertex: String, g: usize, h: usize },
    /// `φ(ȳ)φ(aʸ)φ(y) ≠ φ(a^ȳ)`.
    EdgeConjugation { edge: String, a: usize },
    /// `φ(ȳ)φ(y) ≠ 1`.
    EdgeInverse { edge: String },
    /// `φ(y) ≠ 1` for a spanning-tree edge.
    TreeEdge { edge: String },
}

impl fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationFailure::VertexTable { vertex, g, h } => {
                write!(f, "relation {vertex}.g{g} * {vertex}.g{h} fails")
            }
            RelationFailure::EdgeConjugation { edge, a } => {
                write!(
                    f,
                    "edge relation for `{edge}` fails at edge-group element {a}"
                )
            }
            RelationFailure::EdgeInverse { edge } => {
                write!(f, "`{edge}` times its inverse is not 1")
            }
            RelationFailure::TreeEdge { edge } => {
                write!(f, "tree edge `{edge}` is not mapped to 1")
            }
        }
    }
}

/// Checks the relations (a) vertex tables, (b) edge conjugations,
/// (c) edge inverses, (d) spanning-tree edges.
pub fn check_homomorphism(
    g: &GraphOfGroups,
    h: &GogHom,
    group: &dyn GroupBackend,
) -> Result<(), RelationFailure> {
    for (v, vx) in g.vertices().iter().enumerate() {
        for a in vx.group.elements().skip(1) {
            for b in vx.group.elements().skip(1) {
                let mut lhs = h.elem_image(g, v, a).to_vec();
                lhs.extend_from_slice(h.elem_image(g, v, b));
                let rhs = h.elem_image(g, v, vx.group.mul(a, b));
                if !group.equal(&lhs, rhs) {
                    return Err(RelationFailure::VertexTable {
                        vertex: vx.name.clone(),
                        g: a,
                        h: b,
                    });
                }
            }
        }
    }
    for (y, edge) in g.edges().iter().enumerate() {
        let yb = edge.inv;
        let img_y = &h.images[g.edge_letter(y)];
        let img_yb = &h.images[g.edge_letter(yb)];
        for a in g.edge_group(y).elements() {
            let mut lhs = img_yb.clone();
            lhs.extend_from_slice(h.elem_image(g, edge.src, g.injection(y).apply(a)));
            lhs.extend_from_slice(img_y);
            let rhs = h.elem_image(g, edge.tgt, g.injection(yb).apply(a));
            if !group.equal(&lhs, rhs) {
                let failure = if a == 0 {
                    RelationFailure::EdgeInverse {
                        edge: edge.name.clone(),
                    }
                } else {
                    RelationFailure::EdgeConjugation {
                        edge: edge.name.clone(),
                        a,
                    }
                };
                return Err(failure);
            }
        }
    }
    for (y, edge) in g.edges().iter().enumerate() {
        if g.is_tree_edge(y) && !group.is_identity(&h.images[g.edge_letter(y)]) {
            return Err(RelationFailure::TreeEdge {
                edge: edge.name.clone(),
            });
        }
    }
    Ok(())
}

/// Returns the first letter of Σ not in the subgroup generated by the
/// images, if any. Assumes the homomorphism check passed, so the submonoid
/// generated by the images is a subgroup.
pub fn check_surjectivity(
    _g: &GraphOfGroups,
    h: &GogHom,
    group: &dyn GroupBackend,
) -> Result<(), Letter> {
    let sigma = group.sigma().clone();
    let flower = Nfa::flower(sigma.clone(), &h.images);
    let wp = group.wp_pda();
    let inv = group.involution();
    for a in sigma.letters() {
        if !rational_member(&wp, &inv, &[a], &flower).expect("same alphabet") {
            return Err(a);
        }
    }
    Ok(())
}

/// NFA over Δ for closed paths at `base`.
pub fn closed_path_nfa(g: &GraphOfGroups, base: usize) -> Nfa {
    let mut n = Nfa::new(g.delta().clone(), g.vertices().len());
    for l in g.delta().letters() {
        match g.sym(l) {
            DeltaSym::Elem { vertex, .. } => n.add(vertex, Some(l), vertex),
            DeltaSym::Edge(e) => n.add(g.edges()[e].src, Some(l), g.edges()[e].tgt),
        }
    }
    n.initials.push(base);
    n.set_final(base);
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum FactorState {
    Start,
    AfterEdge(usize),
    /// Last letter an element of `vertex`, directly after edge `edge`.
    AfterEdgeElem {
        edge: usize,
        vertex: usize,
        elem: usize,
    },
    AfterElem(usize),
}

/// DFA over Δ for words without a forbidden factor `gh` (both letters in
/// one vertex group) or `ȳ aʸ y` (including `ȳ y`).
pub fn reduced_words_nfa(g: &GraphOfGroups) -> Nfa {
    let mut ids: HashMap<FactorState, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    let mut trans = Vec::new();
    let mut intern =
        |s: FactorState, states: &mut Vec<FactorState>, queue: &mut VecDeque<usize>| {
            *ids.entry(s).or_insert_with(|| {
                states.push(s);
                queue.push_back(states.len() - 1);
                states.len() - 1
            })
        };
    intern(FactorState::Start, &mut states, &mut queue);
    while let Some(id) = queue.pop_front() {
        let st = states[id];
        for l in g.delta().letters() {
            let next = match (g.sym(l), st) {
                (DeltaSym::Edge(y), FactorState::AfterEdge(e)) if e == g.edges()[y].inv => None,
                (DeltaSym::Edge(y), FactorState::AfterEdgeElem { edge, vertex, elem })
                    if edge == g.edges()[y].inv
                        && vertex == g.edges()[y].src
                        && g.injection(y).preimage(elem).is_some() =>
                {
                    None
                }
                (DeltaSym::Edge(y), _) => Some(FactorState::AfterEdge(y)),
                (DeltaSym::Elem { vertex, .. }, FactorState::AfterElem(v)) if v == vertex => None,
                (DeltaSym::Elem { vertex, .. }, FactorState::AfterEdgeElem { vertex: v, .. })
                    if v == vertex =>
                {
                    None
                }
                (DeltaSym::Elem { vertex, elem }, FactorState::AfterEdge(e)) => {
                    Some(FactorState::AfterEdgeElem {
                        edge: e,
                        vertex,
                        elem,
                    })
                }
                (DeltaSym::Elem { vertex, .. }, _) => Some(FactorState::AfterElem(vertex)),
            };
            if let Some(s) = next {
                let t = intern(s, &mut states, &mut queue);
                trans.push((id, Some(l), t));
            }
        }
    }
    let mut n = Nfa::new(g.delta().clone(), states.len());
    n.transitions = trans;
    n.initials.push(0);
    n.finals = vec![true; states.len()];
    n
}

/// Two states: nothing read yet / something read; only the latter accepts.
pub fn nonempty_nfa(delta: &Alphabet) -> Nfa {
    let mut n = Nfa::new(delta.clone(), 2);
    for l in delta.letters() {
        n.add(0, Some(l), 1);
        n.add(1, Some(l), 1);
    }
    n.initials.push(0);
    n.set_final(1);
    n
}

/// Outcome of the injectivity stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InjectivityFailure {
    /// A nonempty reduced closed-path word mapped to 1.
    Kernel(Word),
    /// The kernel is nontrivial but no witness was extracted in the bound.
    NoWitness,
}

/// Regular part of the injectivity check: nonempty reduced closed paths.
pub fn reduced_loops_nfa(g: &GraphOfGroups, base: usize) -> Nfa {
    closed_path_nfa(g, base)
        .intersect(&reduced_words_nfa(g))
        .and_then(|n| n.intersect(&nonempty_nfa(g.delta())))
        .expect("same alphabet")
}

pub fn check_injectivity(
    g: &GraphOfGroups,
    h: &GogHom,
    group: &dyn GroupBackend,
) -> Result<(), InjectivityFailure> {
    let regular = reduced_loops_nfa(g, h.base);
    if regular.is_empty() {
        return Ok(());
    }
    let a1 = inverse_hom(&group.wp_pda(), g.delta(), &h.images);
    let product = intersect_pda_nfa(&a1, &regular).expect("same alphabet");
    if pda_empty(&product) {
        return Ok(());
    }
    let bound = (regular.num_states * 4).clamp(4, 10);
    if let Some(w) = shortest_kernel_word(&regular, h, group, bound, 200_000) {
        return Err(InjectivityFailure::Kernel(w));
    }
    match product.witness(10_000) {
        Some(w) => Err(InjectivityFailure::Kernel(w)),
        None => Err(InjectivityFailure::NoWitness),
    }
}

/// Shortlex search through `L(regular)` for a word mapped to 1.
fn shortest_kernel_word(
    regular: &Nfa,
    h: &GogHom,
    group: &dyn GroupBackend,
    max_len: usize,
    max_words: usize,
) -> Option<Word> {
    regular
        .enumerate(max_len, max_words)
        .into_iter()
        .find(|u| group.is_identity(&h.apply(u)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Homomorphism,
    Surjectivity,
    Injectivity,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Homomorphism => "homomorphism",
            Stage::Surjectivity => "surjectivity",
            Stage::Injectivity => "injectivity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub isomorphism: bool,
    pub failed_stage: Option<Stage>,
    pub detail: String,
}

/// All three stages, stopping at the first failure.
pub fn verify(g: &GraphOfGroups, h: &GogHom, group: &dyn GroupBackend) -> Verdict {
    let fail = |stage, detail| Verdict {
        isomorphism: false,
        failed_stage: Some(stage),
        detail,
    };
    if let Err(r) = check_homomorphism(g, h, group) {
        return fail(Stage::Homomorphism, r.to_string());
    }
    if let Err(a) = check_surjectivity(g, h, group) {
        return fail(
            Stage::Surjectivity,
            format!("letter `{}` is not in the image", group.sigma().name(a)),
        );
    }
    match check_injectivity(g, h, group) {
        Err(InjectivityFailure::Kernel(w)) => fail(
            Stage::Injectivity,
            format!("nontrivial reduced word `{}` maps to 1", g.render(&w)),
        ),
        Err(InjectivityFailure::NoWitness) => fail(
            Stage::Injectivity,
            "kernel is nontrivial (no short witness found)".into(),
        ),
        Ok(()) => Verdict {
            isomorphism: true,
            failed_stage: None,
            detail: "isomorphism".into(),
        },
    }
}

/// Adjusts `h` (valid for `old`'s spanning tree) to `new`, which has the
/// same Δ and relations but possibly another spanning tree: picks tree
/// representatives `τ(v)` so that every new tree edge maps to 1.
///
/// With `c(v)` the old image of the new tree path from the base to `v`,
/// the letters of `v` are conjugated by `c(v)` and an edge `e` becomes
/// `c(s(e)) φ(e) c(t(e))⁻¹`.
pub fn rebase_to_tree(new: &GraphOfGroups, h: &GogHom, group: &dyn GroupBackend) -> GogHom {
    let n = new.vertices().len();
    let c: Vec<Word> = (0..n)
        .map(|v| {
            new.tree_path(h.base, v)
                .into_iter()
                .flat_map(|e| h.images[new.edge_letter(e)].clone())
                .collect()
        })
        .collect();
    let images = new
        .delta()
        .letters()
        .map(|l| {
            let (left, right) = match new.sym(l) {
                DeltaSym::Elem { vertex, .. } => (vertex, vertex),
                DeltaSym::Edge(e) => (new.edges()[e].src, new.edges()[e].tgt),
            };
            let mut w = c[left].clone();
            w.extend_from_slice(&h.images[l]);
            w.extend(group.inverse_word(&c[right]));
            free_reduce(&w, group)
        })
        .collect();
    GogHom {
        base: h.base,
        images,
    }
}

/// Cancels adjacent letter pairs `a inv(a)`.
pub fn free_reduce(w: &[Letter], group: &dyn GroupBackend) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &a in w {
        if out.last() == Some(&group.inverse_letter(a)) && group.inverse_letter(a) != a {
            out.pop();
        } else {
            out.push(a);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::words_up_to;
    use crate::fingroup::FiniteGroupTable;
    use crate::gog::build;
    use crate::gog::tests::dinf_gog;
    use crate::vfpres::tests::{dinf, z2};

    fn hom(g: &GraphOfGroups, sigma: &Alphabet, pairs: &[(&str, &str)]) -> GogHom {
        let file = HomFile {
            base: g.vertices()[0].name.clone(),
            images: pairs
                .iter()
                .map(|(s, w)| ImageFile {
                    sym: s.to_string(),
                    word: w.split_whitespace().map(String::from).collect(),
                })
                .collect(),
        };
        file.resolve(g, sigma).unwrap()
    }

    fn dinf_hom(b: &str) -> GogHom {
        let g = dinf_gog();
        let p = dinf();
        hom(
            &g,
            p.sigma(),
            &[("P.g1", "s"), ("Q.g1", b), ("y0", ""), ("y0b", "")],
        )
    }

    #[test]
    fn dinf_decomposition_verifies() {
        let g = dinf_gog();
        let p = dinf();
        let h = dinf_hom("t s");
        assert_eq!(check_homomorphism(&g, &h, &p), Ok(()));
        assert_eq!(check_surjectivity(&g, &h, &p), Ok(()));
        assert_eq!(check_injectivity(&g, &h, &p), Ok(()));
        assert!(verify(&g, &h, &p).isomorphism);
        // exhaustive cross-check of injectivity on short words
        for u in words_up_to(g.delta().len(), 5) {
            let based = g.to_based_form(0, &u);
            assert_eq!(g.gog_wp(0, &based).unwrap(), p.word_problem(&h.apply(&u)));
        }
    }

    #[test]
    fn wrong_image_fails_homomorphism() {
        let g = dinf_gog();
        let p = dinf();
        let h = dinf_hom("t");
        assert_eq!(
            check_homomorphism(&g, &h, &p),
            Err(RelationFailure::VertexTable {
                vertex: "Q".into(),
                g: 1,
                h: 1
            })
        );
        assert_eq!(verify(&g, &h, &p).failed_stage, Some(Stage::Homomorphism));
    }

    #[test]
    fn collapsed_image_fails_surjectivity_and_injectivity() {
        let g = dinf_gog();
        let p = dinf();
        let h = dinf_hom("s");
        assert_eq!(check_homomorphism(&g, &h, &p), Ok(()));
        assert_eq!(check_surjectivity(&g, &h, &p), Err(0));
        match check_injectivity(&g, &h, &p) {
            Err(InjectivityFailure::Kernel(w)) => {
                assert_eq!(g.render(&w), "P.g1 y0 Q.g1 y0b");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(verify(&g, &h, &p).failed_stage, Some(Stage::Surjectivity));
    }

    #[test]
    fn trivial_images_fail_surjectivity() {
        let g = dinf_gog();
        let p = dinf();
        let h = dinf_hom("");
        let h = GogHom {
            images: vec![vec![]; 4],
            ..h
        };
        assert_eq!(check_surjectivity(&g, &h, &p), Err(0));
    }

    #[test]
    fn single_vertex_cases() {
        let p = z2();
        let g = build::single("P", FiniteGroupTable::cyclic(2));
        let h = hom(&g, p.sigma(), &[("P.g1", "s")]);
        assert!(verify(&g, &h, &p).isomorphism);

        let trivial = crate::vfpres::VfPresentation::validate(&crate::vfpres::RawPresentation {
            x: vec![],
            s: vec!["1".into()],
            rules: vec![],
        })
        .unwrap();
        let g = build::single("P", FiniteGroupTable::trivial());
        let h = GogHom {
            base: 0,
            images: vec![],
        };
        assert!(verify(&g, &h, &trivial).isomorphism);
    }

    #[test]
    fn reduced_word_automaton() {
        let g = dinf_gog();
        let n = reduced_words_nfa(&g);
        for u in words_up_to(g.delta().len(), 5) {
            assert_eq!(n.accepts(&u), g.reduce_word(&u) == u, "{}", g.render(&u));
        }
        // quadratic size
        let d = g.delta().len();
        assert!(n.transitions.len() <= (1 + d * d) * d);
    }

    #[test]
    fn hom_file_errors() {
        let g = dinf_gog();
        let p = dinf();
        let mut f = dinf_hom("t s").to_file(&g, p.sigma());
        f.images.pop();
        assert!(matches!(
            f.resolve(&g, p.sigma()),
            Err(HomError::MissingImage(_))
        ));
        f.images.push(ImageFile {
            sym: "nope".into(),
            word: vec![],
        });
        assert!(matches!(
            f.resolve(&g, p.sigma()),
            Err(HomError::UnknownSymbol(_))
        ));
    }
}
