//! Finite groups given by multiplication tables.
//!
//! Element `0` is always the identity. Subgroups are plain element subsets
//! whose closure is checked on use. All searches are exhaustive; tables are
//! expected to stay small (orders up to roughly a hundred).

use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is empty")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("element 0 is not an identity: fails at element {0}")]
    NoIdentity(usize),
    #[error("{kind} {index} is not a permutation")]
    NotCancellative { kind: &'static str, index: usize },
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("{0} is not a subgroup")]
    NotASubgroup(&'static str),
    #[error("map is not an injective homomorphism: {0}")]
    BadInjection(String),
}

/// A validated multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroupTable {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl std::fmt::Debug for FiniteGroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group(order {})", self.order())
    }
}

impl FiniteGroupTable {
    /// Checks every group axiom exhaustively and returns the table.
    pub fn validate(candidate: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = candidate.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in candidate.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::OutOfRange { row, col, value });
            }
        }
        for g in 0..n {
            if candidate[0][g] != g || candidate[g][0] != g {
                return Err(GroupError::NoIdentity(g));
            }
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = candidate[i][j];
                if seen[v] {
                    return Err(GroupError::NotCancellative {
                        kind: "row",
                        index: i,
                    });
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for row in candidate.iter() {
                let v = row[j];
                if seen[v] {
                    return Err(GroupError::NotCancellative {
                        kind: "column",
                        index: j,
                    });
                }
                seen[v] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = candidate[a][b];
                for c in 0..n {
                    if candidate[ab][c] != candidate[a][candidate[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| candidate[g][h] == 0)
                    .expect("latin square")
            })
            .collect();
        Ok(FiniteGroupTable {
            table: candidate,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with element i meaning i mod n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::validate(table).expect("cyclic table is a group")
    }

    /// Dihedral group of order 2n: element r^i is `i`, element r^i s is `n + i`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let decode = |e: usize| (e % n, e >= n);
        let encode = |(i, refl): (usize, bool)| if refl { n + i } else { i };
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (i, sa) = decode(a);
                        let (j, sb) = decode(b);
                        // r^i s^sa * r^j s^sb = r^(i ± j) s^(sa xor sb)
                        let k = if sa { (i + n - j) % n } else { (i + j) % n };
                        encode((k, sa ^ sb))
                    })
                    .collect()
            })
            .collect();
        Self::validate(table).expect("dihedral table is a group")
    }

    /// Direct product; element (a, b) is encoded as a * |h| + b.
    pub fn product(g: &Self, h: &Self) -> Self {
        let m = h.order();
        let n = g.order() * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::validate(table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// g^-1 h g
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), h), g)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_subgroup(&self, set: &BTreeSet<usize>) -> bool {
        set.contains(&0)
            && set.iter().all(|&a| a < self.order())
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Subgroup generated by a set of elements.
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Every subgroup, as sorted element sets (exhaustive over generating pairs closure).
    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<BTreeSet<usize>> = vec![BTreeSet::from([0])];
        found.insert(vec![0]);
        while let Some(h) = frontier.pop() {
            for g in self.elements() {
                if h.contains(&g) {
                    continue;
                }
                let mut gens: Vec<usize> = h.iter().copied().collect();
                gens.push(g);
                let k = self.generated(&gens);
                if found.insert(k.iter().copied().collect()) {
                    frontier.push(k);
                }
            }
        }
        found.into_iter().map(|v| v.into_iter().collect()).collect()
    }

    /// A small generating set, greedily picking elements of large order first.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().skip(1).collect();
        by_order.sort_by_key(|&g| (std::cmp::Reverse(self.element_order(g)), g));
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([0]);
        for g in by_order {
            if !span.contains(&g) {
                gens.push(g);
                span = self.generated(&gens);
            }
        }
        gens
    }
}

/// Returns some `g` with `g^-1 A g ⊆ B`, or `None` when no element works.
pub fn is_subgroup_conjugate_into(
    group: &FiniteGroupTable,
    a_set: &BTreeSet<usize>,
    b_set: &BTreeSet<usize>,
) -> Result<Option<usize>, GroupError> {
    if !group.is_subgroup(a_set) {
        return Err(GroupError::NotASubgroup("first set"));
    }
    if !group.is_subgroup(b_set) {
        return Err(GroupError::NotASubgroup("second set"));
    }
    if a_set.len() > b_set.len() {
        return Ok(None);
    }
    Ok(group.elements().find(|&g| {
        a_set
            .iter()
            .all(|&h| b_set.contains(&group.conjugate(h, g)))
    }))
}

/// An injective homomorphism between two tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupInjection {
    map: Vec<usize>,
}

impl GroupInjection {
    pub fn new(
        source: &FiniteGroupTable,
        target: &FiniteGroupTable,
        map: Vec<usize>,
    ) -> Result<Self, GroupError> {
        check_injection(source, target, &map).map_err(GroupError::BadInjection)?;
        Ok(GroupInjection { map })
    }

    pub fn identity(order: usize) -> Self {
        GroupInjection {
            map: (0..order).collect(),
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.map.iter().copied().collect()
    }

    /// Preimage of `b`, if it lies in the image.
    pub fn preimage(&self, b: usize) -> Option<usize> {
        self.map.iter().position(|&x| x == b)
    }

    pub fn is_bijective(&self, target: &FiniteGroupTable) -> bool {
        self.map.len() == target.order()
    }
}

fn check_injection(
    source: &FiniteGroupTable,
    target: &FiniteGroupTable,
    map: &[usize],
) -> Result<(), String> {
    if map.len() != source.order() {
        return Err(format!(
            "map has {} entries, source order is {}",
            map.len(),
            source.order()
        ));
    }
    if map.iter().any(|&x| x >= target.order()) {
        return Err("image out of range".into());
    }
    if map[0] != 0 {
        return Err("identity not mapped to identity".into());
    }
    let distinct: BTreeSet<_> = map.iter().collect();
    if distinct.len() != map.len() {
        return Err("map is not injective".into());
    }
    for a in source.elements() {
        for b in source.elements() {
            if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                return Err(format!("fails on ({a}, {b})"));
            }
        }
    }
    Ok(())
}

/// All injective homomorphisms `source -> target`, found by assigning images
/// to a generating set and extending multiplicatively.
pub fn injections(source: &FiniteGroupTable, target: &FiniteGroupTable) -> Vec<GroupInjection> {
    if !target.order().is_multiple_of(source.order()) {
        return Vec::new();
    }
    let gens = source.generating_set();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    extend_images(source, target, &gens, &mut images, &mut out);
    out
}

fn extend_images(
    source: &FiniteGroupTable,
    target: &FiniteGroupTable,
    gens: &[usize],
    images: &mut Vec<usize>,
    out: &mut Vec<GroupInjection>,
) {
    if images.len() == gens.len() {
        if let Some(map) = extend_to_map(source, target, gens, images) {
            if check_injection(source, target, &map).is_ok() {
                out.push(GroupInjection { map });
            }
        }
        return;
    }
    let g = gens[images.len()];
    let ord = source.element_order(g);
    for cand in target.elements() {
        if target.element_order(cand) != ord {
            continue;
        }
        images.push(cand);
        extend_images(source, target, gens, images, out);
        images.pop();
    }
}

/// Extends generator images to a full map along a BFS over words; `None` on conflict.
fn extend_to_map(
    source: &FiniteGroupTable,
    target: &FiniteGroupTable,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = source.mul(x, g);
            let fy = target.mul(map[x], img);
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

/// Every isomorphism `g1 -> g2`.
pub fn isomorphisms(g1: &FiniteGroupTable, g2: &FiniteGroupTable) -> Vec<GroupInjection> {
    if g1.order() != g2.order() || order_profile(g1) != order_profile(g2) {
        return Vec::new();
    }
    injections(g1, g2)
}

/// Some isomorphism `g1 -> g2`, if the groups are isomorphic.
pub fn find_isomorphism(g1: &FiniteGroupTable, g2: &FiniteGroupTable) -> Option<GroupInjection> {
    if g1.order() != g2.order() || order_profile(g1) != order_profile(g2) {
        return None;
    }
    let gens = g1.generating_set();
    let mut images = Vec::new();
    first_iso(g1, g2, &gens, &mut images)
}

fn first_iso(
    g1: &FiniteGroupTable,
    g2: &FiniteGroupTable,
    gens: &[usize],
    images: &mut Vec<usize>,
) -> Option<GroupInjection> {
    if images.len() == gens.len() {
        let map = extend_to_map(g1, g2, gens, images)?;
        return check_injection(g1, g2, &map)
            .ok()
            .map(|_| GroupInjection { map });
    }
    let ord = g1.element_order(gens[images.len()]);
    for cand in g2.elements() {
        if g2.element_order(cand) != ord {
            continue;
        }
        images.push(cand);
        if let Some(iso) = first_iso(g1, g2, gens, images) {
            return Some(iso);
        }
        images.pop();
    }
    None
}

/// Sorted multiset of element orders.
pub fn order_profile(g: &FiniteGroupTable) -> Vec<usize> {
    let mut v: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroupTable {
        FiniteGroupTable::dihedral(3)
    }

    #[test]
    fn trivial_and_z2_validate() {
        assert_eq!(
            FiniteGroupTable::validate(vec![vec![0]]).unwrap().order(),
            1
        );
        let z2 = FiniteGroupTable::validate(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn bad_row_is_rejected() {
        let err = FiniteGroupTable::validate(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(
            err,
            GroupError::NotCancellative {
                kind: "row",
                index: 1
            }
        );
    }

    #[test]
    fn identity_must_be_zero() {
        let err = FiniteGroupTable::validate(vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoIdentity(0));
    }

    #[test]
    fn non_associative_latin_square() {
        // A loop of order 5 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroupTable::validate(t),
            Err(GroupError::NotAssociative(..))
        ));
    }

    #[test]
    fn dihedral_is_nonabelian() {
        let d = s3();
        assert_eq!(d.order(), 6);
        assert!(!d.is_abelian());
        assert_eq!(order_profile(&d), vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn trivial_subgroup_conjugates_anywhere() {
        let d = s3();
        let triv = BTreeSet::from([0]);
        let b = BTreeSet::from([0, 3]);
        assert_eq!(is_subgroup_conjugate_into(&d, &triv, &b).unwrap(), Some(0));
    }

    #[test]
    fn order_obstruction_in_z2() {
        let z2 = FiniteGroupTable::cyclic(2);
        let all = BTreeSet::from([0, 1]);
        let triv = BTreeSet::from([0]);
        assert_eq!(is_subgroup_conjugate_into(&z2, &all, &triv).unwrap(), None);
    }

    #[test]
    fn transpositions_are_conjugate_in_s3() {
        let d = s3();
        let a = BTreeSet::from([0, 3]);
        let b = BTreeSet::from([0, 4]);
        let g = is_subgroup_conjugate_into(&d, &a, &b)
            .unwrap()
            .expect("conjugate");
        assert!(a.iter().all(|&h| b.contains(&d.conjugate(h, g))));
    }

    #[test]
    fn non_subgroup_is_an_error() {
        let d = s3();
        let bad = BTreeSet::from([0, 1]);
        let ok = BTreeSet::from([0]);
        assert_eq!(
            is_subgroup_conjugate_into(&d, &bad, &ok),
            Err(GroupError::NotASubgroup("first set"))
        );
    }

    #[test]
    fn isomorphism_search() {
        let z2 = FiniteGroupTable::cyclic(2);
        assert_eq!(find_isomorphism(&z2, &z2).unwrap().map(), &[0, 1]);
        let z4 = FiniteGroupTable::cyclic(4);
        let v4 = FiniteGroupTable::product(&z2, &z2);
        assert!(find_isomorphism(&z4, &v4).is_none());
        assert!(injections(&z4, &v4).is_empty());
    }

    #[test]
    fn relabeled_z6_is_isomorphic() {
        let z6 = FiniteGroupTable::cyclic(6);
        let perm = [0, 5, 3, 1, 4, 2];
        let mut inv = [0; 6];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let relabeled: Vec<Vec<usize>> = (0..6)
            .map(|a| (0..6).map(|b| perm[z6.mul(inv[a], inv[b])]).collect())
            .collect();
        let g2 = FiniteGroupTable::validate(relabeled).unwrap();
        let iso = find_isomorphism(&z6, &g2).unwrap();
        assert!(GroupInjection::new(&z6, &g2, iso.map().to_vec()).is_ok());
        assert!(iso.is_bijective(&g2));
        // Z/6 has two automorphisms.
        assert_eq!(isomorphisms(&z6, &g2).len(), 2);
        // Z/2 x Z/3 is cyclic too.
        let z2z3 =
            FiniteGroupTable::product(&FiniteGroupTable::cyclic(2), &FiniteGroupTable::cyclic(3));
        assert!(find_isomorphism(&z6, &z2z3).is_some());
    }

    #[test]
    fn s3_automorphisms_and_subgroups() {
        let d = s3();
        assert_eq!(isomorphisms(&d, &d).len(), 6);
        // trivial, three of order 2, one of order 3, whole group
        assert_eq!(d.subgroups().len(), 6);
        assert_eq!(injections(&FiniteGroupTable::cyclic(2), &d).len(), 3);
    }
}
