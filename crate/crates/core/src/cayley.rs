//! Finite windows onto the Cayley graph of a virtually free presentation:
//! balls, prefix cuts and their boundaries, components outside a ball and
//! triangulations of closed vertex sequences.
//!
//! Vertices are group elements in normal form. The graph has an edge
//! `g → ga` for every `a ∈ Σ`, so parallel edges occur whenever two letters
//! represent the same element.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::alphabet::{Letter, Word};
use crate::vfpres::{NormalForm, VfPresentation};

/// Default vertex cap for ball construction.
pub const DEFAULT_CAP: usize = 200_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("ball exceeds {cap} vertices")]
    ExplosionGuard { cap: usize },
    #[error("cut boundary has not stabilized at radius {0}; increase the radius")]
    NotStabilized(usize),
    #[error("prefix must be a nonempty freely reduced word over X and its inverses")]
    BadPrefix,
    #[error("the Cayley graph is not a tree")]
    NotATree,
    #[error("step {0} of the sequence is longer than k")]
    StepTooLong(usize),
    #[error("vertex {0} of the sequence lies outside the ball")]
    VertexOutsideBall(usize),
    #[error("sequence is not closed")]
    NotClosed,
}

/// The ball `B(r)` around 1.
#[derive(Debug, Clone)]
pub struct Ball {
    pub radius: usize,
    pub vertices: Vec<NormalForm>,
    pub dist: Vec<usize>,
    /// `adj[v]` lists `(a, w)` with `v·a = w`, for targets inside the ball.
    pub adj: Vec<Vec<(Letter, usize)>>,
    index: HashMap<NormalForm, usize>,
}

pub fn build_ball(p: &VfPresentation, r: usize, cap: usize) -> Result<Ball, CayleyError> {
    let sigma = p.sigma().len();
    let mut vertices = vec![NormalForm::identity()];
    let mut dist = vec![0];
    let mut index = HashMap::from([(NormalForm::identity(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if dist[v] == r {
            continue;
        }
        let base = p.nf_word(&vertices[v]);
        for a in 0..sigma {
            let mut w = base.clone();
            w.push(a);
            let nf = p.normal_form(&w);
            if !index.contains_key(&nf) {
                if vertices.len() == cap {
                    return Err(CayleyError::ExplosionGuard { cap });
                }
                index.insert(nf.clone(), vertices.len());
                queue.push_back(vertices.len());
                vertices.push(nf);
                dist.push(dist[v] + 1);
            }
        }
    }
    let mut adj = vec![Vec::new(); vertices.len()];
    for (v, nf) in vertices.iter().enumerate() {
        let base = p.nf_word(nf);
        for a in 0..sigma {
            let mut w = base.clone();
            w.push(a);
            if let Some(&t) = index.get(&p.normal_form(&w)) {
                adj[v].push((a, t));
            }
        }
    }
    Ok(Ball {
        radius: r,
        vertices,
        dist,
        adj,
        index,
    })
}

impl Ball {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn locate(&self, nf: &NormalForm) -> Option<usize> {
        self.index.get(nf).copied()
    }

    pub fn locate_word(&self, p: &VfPresentation, w: &[Letter]) -> Option<usize> {
        self.locate(&p.normal_form(w))
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// `d(u, v)`: exact when `u⁻¹v` lies in the ball, otherwise the length
    /// of a shortest path inside the ball, which is an upper bound.
    pub fn distance(&self, p: &VfPresentation, u: usize, v: usize) -> usize {
        let mut w = p.inverse_word(&p.nf_word(&self.vertices[u]));
        w.extend(p.nf_word(&self.vertices[v]));
        match self.locate(&p.normal_form(&w)) {
            Some(i) => self.dist[i],
            None => self.path_distance(u, v).unwrap_or(usize::MAX),
        }
    }

    fn path_distance(&self, u: usize, v: usize) -> Option<usize> {
        let mut d = vec![usize::MAX; self.len()];
        d[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return Some(d[x]);
            }
            for &(_, y) in &self.adj[x] {
                if d[y] == usize::MAX {
                    d[y] = d[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Largest pairwise distance in `set`.
    pub fn diameter(&self, p: &VfPresentation, set: &[usize]) -> usize {
        let mut best = 0;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                best = best.max(self.distance(p, u, v));
            }
        }
        best
    }

    /// The undirected graph underlying the ball is a tree: no parallel
    /// edges, no loops and exactly one edge pair per non-root vertex.
    pub fn is_tree(&self) -> bool {
        let mut pairs = BTreeSet::new();
        for (v, out) in self.adj.iter().enumerate() {
            for &(_, w) in out {
                if v == w || !pairs.insert((v, w)) {
                    return false;
                }
            }
        }
        pairs.len() == 2 * (self.len() - 1)
    }

    pub fn to_dot(&self, p: &VfPresentation) -> String {
        let mut s = String::from("digraph ball {\n");
        for (v, nf) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  n{v} [label=\"{}\"];", p.render_nf(nf));
        }
        for (v, out) in self.adj.iter().enumerate() {
            for &(a, w) in out {
                let _ = writeln!(s, "  n{v} -> n{w} [label=\"{}\"];", p.sigma().name(a));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// `C_x`: elements whose normal form has free part starting with `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCut {
    x: Word,
}

impl PrefixCut {
    pub fn new(p: &VfPresentation, x: Word) -> Result<Self, CayleyError> {
        let reduced = x.windows(2).all(|w| w[1] != p.inverse_letter(w[0]));
        if x.is_empty() || !reduced || !x.iter().all(|&a| p.is_free_letter(a)) {
            return Err(CayleyError::BadPrefix);
        }
        Ok(PrefixCut { x })
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.x
    }

    pub fn contains(&self, nf: &NormalForm) -> bool {
        nf.free_part.starts_with(&self.x)
    }
}

/// Every freely reduced nonempty prefix of length at most `max_len`.
pub fn prefix_cuts(p: &VfPresentation, max_len: usize) -> Vec<PrefixCut> {
    let free: Vec<Letter> = p
        .sigma()
        .letters()
        .filter(|&a| p.is_free_letter(a))
        .collect();
    let mut out = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &a in &free {
                if w.last().is_some_and(|&b| p.inverse_letter(b) == a) {
                    continue;
                }
                let mut u = w.clone();
                u.push(a);
                next.push(u);
            }
        }
        out.extend(next.iter().map(|x| PrefixCut { x: x.clone() }));
        layer = next;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutBoundary {
    pub radius: usize,
    /// Directed boundary edges `(u, a, v)` with `u ∈ C`, `v ∉ C`, as ball
    /// indices.
    pub edges: Vec<(usize, Letter, usize)>,
    pub weight: usize,
    /// `∂C`, the sources of boundary edges.
    pub inner: Vec<usize>,
    /// `βC`, all endpoints of boundary edges.
    pub beta: Vec<usize>,
    pub diam_beta: usize,
}

fn boundary_edges(ball: &Ball, c: &PrefixCut, within: usize) -> Vec<(usize, Letter, usize)> {
    let mut out = Vec::new();
    for (u, out_edges) in ball.adj.iter().enumerate() {
        if ball.dist[u] > within || !c.contains(&ball.vertices[u]) {
            continue;
        }
        for &(a, v) in out_edges {
            if ball.dist[v] <= within && !c.contains(&ball.vertices[v]) {
                out.push((u, a, v));
            }
        }
    }
    out
}

/// `δ⃗C_x` within `B(r)`, certified complete: `r` must exceed
/// `|x| + max|x_{r,a}| + 1` and the boundary inside `B(r-1)` must already
/// equal the boundary inside `B(r)`.
pub fn cut_boundary(
    p: &VfPresentation,
    c: &PrefixCut,
    r: usize,
    cap: usize,
) -> Result<CutBoundary, CayleyError> {
    let horizon = c.x.len() + p.max_rule_len() + 1;
    if r <= horizon {
        return Err(CayleyError::NotStabilized(r));
    }
    let ball = build_ball(p, r, cap)?;
    let edges = boundary_edges(&ball, c, r);
    if boundary_edges(&ball, c, r - 1) != edges {
        return Err(CayleyError::NotStabilized(r));
    }
    let inner: BTreeSet<usize> = edges.iter().map(|e| e.0).collect();
    let beta: BTreeSet<usize> = edges.iter().flat_map(|e| [e.0, e.2]).collect();
    let beta: Vec<usize> = beta.into_iter().collect();
    // distances between boundary vertices need a ball of twice their radius
    let far = beta.iter().map(|&v| ball.dist[v]).max().unwrap_or(0);
    let diam_beta = if 2 * far <= r {
        ball.diameter(p, &beta)
    } else {
        let big = build_ball(p, 2 * far, cap)?;
        let mapped: Vec<usize> = beta
            .iter()
            .map(|&v| big.locate(&ball.vertices[v]).expect("nested balls"))
            .collect();
        big.diameter(p, &mapped)
    };
    Ok(CutBoundary {
        radius: r,
        weight: edges.len(),
        edges,
        inner: inner.into_iter().collect(),
        beta,
        diam_beta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Nesting {
    Equal,
    /// `C₁ ⊆ C₂`
    FirstInSecond,
    /// `C₂ ⊆ C₁`
    SecondInFirst,
    /// `C₁ ⊆ ∁C₂`
    Disjoint,
}

/// Prefix cuts are always nested.
pub fn cuts_nested(c1: &PrefixCut, c2: &PrefixCut) -> Nesting {
    if c1.x == c2.x {
        Nesting::Equal
    } else if c1.x.starts_with(&c2.x) {
        Nesting::FirstInSecond
    } else if c2.x.starts_with(&c1.x) {
        Nesting::SecondInFirst
    } else {
        Nesting::Disjoint
    }
}

/// The nesting relations that hold on the vertices of `ball`; a pair of
/// cuts is nested on the ball when the result is nonempty.
pub fn nesting_in_ball(ball: &Ball, c1: &PrefixCut, c2: &PrefixCut) -> Vec<Nesting> {
    let (mut sub12, mut sub21, mut disjoint) = (true, true, true);
    for nf in &ball.vertices {
        let (a, b) = (c1.contains(nf), c2.contains(nf));
        sub12 &= !a || b;
        sub21 &= !b || a;
        disjoint &= !(a && b);
    }
    let mut out = Vec::new();
    if sub12 && sub21 {
        out.push(Nesting::Equal);
    }
    if sub12 {
        out.push(Nesting::FirstInSecond);
    }
    if sub21 {
        out.push(Nesting::SecondInFirst);
    }
    if disjoint {
        out.push(Nesting::Disjoint);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Ball indices of the component's vertices within `B(r + probe)`.
    pub vertices: Vec<usize>,
    /// Reaches the sphere of radius `r + probe`.
    pub unbounded: bool,
    /// `∂C`: vertices of the component adjacent to `B(r)`.
    pub boundary: Vec<usize>,
    pub diam_boundary: usize,
}

/// Connected components of `B(r + probe) ∖ B(r)`. Components reaching the
/// outer sphere are flagged as candidates for infinite components.
pub fn component_cuts(
    p: &VfPresentation,
    r: usize,
    probe: usize,
    cap: usize,
) -> Result<(Ball, Vec<Component>), CayleyError> {
    let outer = r + probe;
    let ball = build_ball(p, outer.max(2 * r + 2), cap)?;
    let inside = |v: usize| ball.dist[v] > r && ball.dist[v] <= outer;
    let mut comp = vec![usize::MAX; ball.len()];
    let mut out = Vec::new();
    for s in 0..ball.len() {
        if !inside(s) || comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(_, y) in &ball.adj[x] {
                if inside(y) && comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        let unbounded = members.iter().any(|&v| ball.dist[v] == outer);
        let boundary: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&v| ball.adj[v].iter().any(|&(_, w)| ball.dist[w] <= r))
            .collect();
        let diam_boundary = ball.diameter(p, &boundary);
        out.push(Component {
            vertices: members,
            unbounded,
            boundary,
            diam_boundary,
        });
    }
    Ok((ball, out))
}

/// Resolves a closed sequence of words to ball vertices; the last entry
/// must equal the first and is dropped.
pub fn resolve_sequence(
    p: &VfPresentation,
    ball: &Ball,
    seq: &[Word],
) -> Result<Vec<usize>, CayleyError> {
    let ids = seq
        .iter()
        .enumerate()
        .map(|(i, w)| {
            ball.locate_word(p, w)
                .ok_or(CayleyError::VertexOutsideBall(i))
        })
        .collect::<Result<Vec<_>, _>>()?;
    match ids.split_last() {
        Some((last, rest)) if !rest.is_empty() && *last == rest[0] => Ok(rest.to_vec()),
        Some((_, [])) => Ok(ids),
        _ => Err(CayleyError::NotClosed),
    }
}

/// Chords, as pairs of positions in the polygon `v₀, …, v_{n-1}`, that
/// triangulate a closed sequence in the Cayley graph of a free group.
///
/// Repeatedly removes a vertex farthest from `v₀` and joins its two
/// neighbours; in a tree the new chord is no longer than the longer of the
/// two sides it replaces.
pub fn triangulate_tree_sequence(
    p: &VfPresentation,
    ball: &Ball,
    seq: &[Word],
    k: usize,
) -> Result<Vec<(usize, usize)>, CayleyError> {
    if !ball.is_tree() {
        return Err(CayleyError::NotATree);
    }
    let vs = resolve_sequence(p, ball, seq)?;
    let n = vs.len();
    for i in 0..n {
        if ball.distance(p, vs[i], vs[(i + 1) % n]) > k {
            return Err(CayleyError::StepTooLong(i));
        }
    }
    let mut poly: Vec<usize> = (0..n).collect();
    let mut chords = Vec::new();
    while poly.len() > 3 {
        let d0 = |i: usize| ball.distance(p, vs[0], vs[poly[i]]);
        let far = (1..poly.len())
            .max_by_key(|&i| (d0(i), std::cmp::Reverse(i)))
            .unwrap();
        let m = poly.len();
        let (a, b) = (poly[far - 1], poly[(far + 1) % m]);
        chords.push((a.min(b), a.max(b)));
        poly.remove(far);
    }
    Ok(chords)
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// A valid `k`-triangulation of the polygon: `n - 3` distinct,
/// pairwise non-crossing diagonals, with all sides and diagonals of length
/// at most `k`.
pub fn check_triangulation(
    p: &VfPresentation,
    ball: &Ball,
    seq: &[Word],
    chords: &[(usize, usize)],
    k: usize,
) -> Result<bool, CayleyError> {
    let vs = resolve_sequence(p, ball, seq)?;
    let n = vs.len();
    if n < 3 {
        return Ok(chords.is_empty());
    }
    if chords.len() != n - 3 {
        return Ok(false);
    }
    let mut seen = BTreeSet::new();
    for &(a, b) in chords {
        let (a, b) = (a.min(b), a.max(b));
        let side = b - a == 1 || (a == 0 && b == n - 1);
        if b >= n || side || !seen.insert((a, b)) {
            return Ok(false);
        }
    }
    let list: Vec<_> = seen.iter().copied().collect();
    for (i, &c) in list.iter().enumerate() {
        if list[i + 1..].iter().any(|&d| crosses(c, d)) {
            return Ok(false);
        }
    }
    let sides = (0..n).map(|i| (i, (i + 1) % n));
    for (a, b) in sides.chain(list.iter().copied()) {
        if ball.distance(p, vs[a], vs[b]) > k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact search for a `k`-triangulation by dynamic programming over
/// polygon intervals. Works on any Cayley graph.
pub fn search_triangulation(
    p: &VfPresentation,
    ball: &Ball,
    seq: &[Word],
    k: usize,
) -> Result<Option<Vec<(usize, usize)>>, CayleyError> {
    let vs = resolve_sequence(p, ball, seq)?;
    let n = vs.len();
    if n < 3 {
        return Ok(Some(Vec::new()));
    }
    let ok = |a: usize, b: usize| ball.distance(p, vs[a], vs[b]) <= k;
    if (0..n).any(|i| !ok(i, (i + 1) % n)) {
        return Ok(None);
    }
    // split[i][j]: apex m of the triangle on side (i, j) in a triangulation of i..=j
    let mut split = vec![vec![None::<usize>; n]; n];
    for len in 2..n {
        for i in 0..n - len {
            let j = i + len;
            if len < n - 1 && !ok(i, j) {
                continue;
            }
            split[i][j] = (i + 1..j).find(|&m| {
                (m == i + 1 || split[i][m].is_some()) && (j == m + 1 || split[m][j].is_some())
            });
        }
    }
    if split[0][n - 1].is_none() {
        return Ok(None);
    }
    let mut chords = Vec::new();
    let mut stack = vec![(0, n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j - i < 2 {
            continue;
        }
        if (i, j) != (0, n - 1) {
            chords.push((i, j));
        }
        let m = split[i][j].expect("interval was solved");
        stack.push((i, m));
        stack.push((m, j));
    }
    chords.sort_unstable();
    Ok(Some(chords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vfpres::tests::dinf;
    use crate::vfpres::RawPresentation;

    fn free(gens: &[&str]) -> VfPresentation {
        VfPresentation::validate(&RawPresentation {
            x: gens.iter().map(|s| s.to_string()).collect(),
            s: vec!["1".into()],
            rules: vec![],
        })
        .unwrap()
    }

    fn words(p: &VfPresentation, text: &[&str]) -> Vec<Word> {
        text.iter()
            .map(|t| {
                if *t == "1" {
                    vec![]
                } else {
                    p.parse_word(t).unwrap()
                }
            })
            .collect()
    }

    #[test]
    fn balls() {
        let p = dinf();
        assert_eq!(build_ball(&p, 0, DEFAULT_CAP).unwrap().len(), 1);
        let b1 = build_ball(&p, 1, DEFAULT_CAP).unwrap();
        let names: BTreeSet<String> = b1.vertices.iter().map(|v| p.render_nf(v)).collect();
        assert_eq!(names.len(), 4);
        let z = free(&["t"]);
        assert_eq!(build_ball(&z, 3, DEFAULT_CAP).unwrap().len(), 7);
        assert!(matches!(
            build_ball(&free(&["t", "u"]), 10, 100),
            Err(CayleyError::ExplosionGuard { cap: 100 })
        ));
    }

    #[test]
    fn prefix_cut_weights() {
        let z = free(&["t"]);
        let c = PrefixCut::new(&z, z.parse_word("t").unwrap()).unwrap();
        assert_eq!(cut_boundary(&z, &c, 4, DEFAULT_CAP).unwrap().weight, 1);
        let p = dinf();
        let c = PrefixCut::new(&p, p.parse_word("t").unwrap()).unwrap();
        let b = cut_boundary(&p, &c, 4, DEFAULT_CAP).unwrap();
        assert_eq!(b.weight, 2);
        let ball = build_ball(&p, 4, DEFAULT_CAP).unwrap();
        let named: BTreeSet<(String, String, String)> = b
            .edges
            .iter()
            .map(|&(u, a, v)| {
                (
                    p.render_nf(&ball.vertices[u]),
                    p.sigma().name(a).to_string(),
                    p.render_nf(&ball.vertices[v]),
                )
            })
            .collect();
        let t = p.render_nf(&p.normal_form(&p.parse_word("t").unwrap()));
        let ts = p.render_nf(&p.normal_form(&p.parse_word("t s").unwrap()));
        let s = p.render_nf(&p.normal_form(&p.parse_word("s").unwrap()));
        let one = p.render_nf(&NormalForm::identity());
        assert!(named.contains(&(t, "t^-".into(), one)));
        assert!(named.contains(&(ts, "t".into(), s)));
        assert!(matches!(
            cut_boundary(&p, &c, 2, DEFAULT_CAP),
            Err(CayleyError::NotStabilized(2))
        ));
    }

    #[test]
    fn nesting() {
        let p = dinf();
        let cut = |s: &str| PrefixCut::new(&p, p.parse_word(s).unwrap()).unwrap();
        assert_eq!(cuts_nested(&cut("t t"), &cut("t")), Nesting::FirstInSecond);
        assert_eq!(cuts_nested(&cut("t"), &cut("t^-")), Nesting::Disjoint);
        assert_eq!(cuts_nested(&cut("t"), &cut("t")), Nesting::Equal);
        let ball = build_ball(&p, 4, DEFAULT_CAP).unwrap();
        assert!(nesting_in_ball(&ball, &cut("t"), &cut("t^-")).contains(&Nesting::Disjoint));
        assert!(PrefixCut::new(&p, p.parse_word("t t^-").unwrap()).is_err());
        assert!(PrefixCut::new(&p, p.parse_word("s").unwrap()).is_err());
    }

    #[test]
    fn components() {
        let (_, cs) = component_cuts(&free(&["t"]), 2, 3, DEFAULT_CAP).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs
            .iter()
            .all(|c| c.unbounded && c.boundary.len() == 1 && c.diam_boundary == 0));
        let (_, cs) = component_cuts(&dinf(), 2, 3, DEFAULT_CAP).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.diam_boundary <= 2));
        // removing the closed ball B(1) from the 4-regular tree leaves 4·3 branches
        let (_, cs) = component_cuts(&free(&["t", "u"]), 1, 3, DEFAULT_CAP).unwrap();
        assert_eq!(cs.len(), 12);
        let (_, cs) = component_cuts(&free(&["t", "u"]), 0, 3, DEFAULT_CAP).unwrap();
        assert_eq!(cs.len(), 4);
    }

    #[test]
    fn tree_triangulations() {
        let z = free(&["t"]);
        let ball = build_ball(&z, 5, DEFAULT_CAP).unwrap();
        let seq = words(&z, &["1", "t t", "t t t t", "t t", "1"]);
        let chords = triangulate_tree_sequence(&z, &ball, &seq, 2).unwrap();
        assert_eq!(chords.len(), 1);
        assert!(check_triangulation(&z, &ball, &seq, &chords, 2).unwrap());

        let f = free(&["t", "u"]);
        let ball = build_ball(&f, 4, DEFAULT_CAP).unwrap();
        let seq = words(&f, &["1", "t t", "t u", "1"]);
        let chords = triangulate_tree_sequence(&f, &ball, &seq, 3).unwrap();
        assert!(chords.is_empty());
        assert!(check_triangulation(&f, &ball, &seq, &chords, 3).unwrap());
        let long = words(&f, &["1", "t t t t", "1"]);
        assert_eq!(
            triangulate_tree_sequence(&f, &ball, &long, 3),
            Err(CayleyError::StepTooLong(0))
        );
        let d = build_ball(&dinf(), 3, DEFAULT_CAP).unwrap();
        assert_eq!(
            triangulate_tree_sequence(&dinf(), &d, &[vec![]], 1),
            Err(CayleyError::NotATree)
        );
    }

    #[test]
    fn bad_triangulations() {
        let f = free(&["t", "u"]);
        let ball = build_ball(&f, 4, DEFAULT_CAP).unwrap();
        let seq = words(&f, &["1", "t", "t u", "t", "1"]);
        // both diagonals of a quadrilateral cross
        assert!(!check_triangulation(&f, &ball, &seq, &[(0, 2), (1, 3)], 2).unwrap());
        assert!(check_triangulation(&f, &ball, &seq, &[(1, 3)], 2).unwrap());
        // diagonal 1 – t u has length 2
        assert!(!check_triangulation(&f, &ball, &seq, &[(0, 2)], 1).unwrap());
        let outside = words(&f, &["1", "t t t t t", "1"]);
        assert_eq!(
            check_triangulation(&f, &ball, &outside, &[], 5),
            Err(CayleyError::VertexOutsideBall(1))
        );
    }

    #[test]
    fn dp_search_agrees() {
        let f = free(&["t", "u"]);
        let ball = build_ball(&f, 4, DEFAULT_CAP).unwrap();
        let seq = words(&f, &["1", "t", "t u", "t u t", "t u", "t", "1"]);
        let chords = search_triangulation(&f, &ball, &seq, 2).unwrap().unwrap();
        assert!(check_triangulation(&f, &ball, &seq, &chords, 2).unwrap());
        assert_eq!(search_triangulation(&f, &ball, &seq, 0).unwrap(), None);
    }

    #[test]
    fn dot_output() {
        let z = free(&["t"]);
        let dot = build_ball(&z, 1, DEFAULT_CAP).unwrap().to_dot(&z);
        assert!(dot.starts_with("digraph ball {"));
        assert_eq!(dot.matches("->").count(), 4);
    }
}
