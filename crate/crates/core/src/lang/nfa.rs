//! Nondeterministic finite automata with ε-moves.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};

use super::LangError;

pub type NfaState = usize;

#[derive(Debug, Clone)]
pub struct Nfa {
    pub alphabet: Alphabet,
    pub num_states: usize,
    /// `(from, letter or ε, to)`
    pub transitions: Vec<(NfaState, Option<Letter>, NfaState)>,
    pub initials: Vec<NfaState>,
    pub finals: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet, num_states: usize) -> Self {
        Nfa {
            alphabet,
            num_states,
            transitions: Vec::new(),
            initials: Vec::new(),
            finals: vec![false; num_states],
        }
    }

    pub fn add_state(&mut self) -> NfaState {
        self.num_states += 1;
        self.finals.push(false);
        self.num_states - 1
    }

    pub fn add(&mut self, from: NfaState, letter: Option<Letter>, to: NfaState) {
        self.transitions.push((from, letter, to));
    }

    pub fn set_final(&mut self, s: NfaState) {
        self.finals[s] = true;
    }

    /// Accepts every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut n = Nfa::new(alphabet, 1);
        for a in n.alphabet.letters().collect::<Vec<_>>() {
            n.add(0, Some(a), 0);
        }
        n.initials.push(0);
        n.finals[0] = true;
        n
    }

    /// Accepts nothing.
    pub fn empty(alphabet: Alphabet) -> Self {
        let mut n = Nfa::new(alphabet, 1);
        n.initials.push(0);
        n
    }

    /// Accepts exactly `w`.
    pub fn word(alphabet: Alphabet, w: &[Letter]) -> Self {
        let mut n = Nfa::new(alphabet, w.len() + 1);
        for (i, &a) in w.iter().enumerate() {
            n.add(i, Some(a), i + 1);
        }
        n.initials.push(0);
        n.finals[w.len()] = true;
        n
    }

    /// Accepts `L*` for the finite set of words `L` (a "flower" automaton).
    pub fn flower(alphabet: Alphabet, petals: &[Word]) -> Self {
        let mut n = Nfa::new(alphabet, 1);
        n.initials.push(0);
        n.finals[0] = true;
        for w in petals {
            if w.is_empty() {
                continue;
            }
            let mut cur = 0;
            for (i, &a) in w.iter().enumerate() {
                let next = if i + 1 == w.len() { 0 } else { n.add_state() };
                n.add(cur, Some(a), next);
                cur = next;
            }
        }
        n
    }

    /// Automaton for `prefix · L(self)`: a chain of new states reading `prefix`.
    pub fn with_prefix(&self, prefix: &[Letter]) -> Nfa {
        let offset = prefix.len();
        let mut n = Nfa::new(self.alphabet.clone(), self.num_states + offset);
        for (i, &a) in prefix.iter().enumerate() {
            n.add(i, Some(a), i + 1);
        }
        for &(p, a, q) in &self.transitions {
            n.add(p + offset, a, q + offset);
        }
        for &i in &self.initials {
            n.add(offset, None, i + offset);
        }
        n.initials.push(0);
        for (s, &f) in self.finals.iter().enumerate() {
            n.finals[s + offset] = f;
        }
        n
    }

    pub fn epsilon_closure(&self, set: &BTreeSet<NfaState>) -> BTreeSet<NfaState> {
        let mut out = set.clone();
        let mut stack: Vec<_> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &(p, a, q) in &self.transitions {
                if p == s && a.is_none() && out.insert(q) {
                    stack.push(q);
                }
            }
        }
        out
    }

    pub fn step(&self, set: &BTreeSet<NfaState>, letter: Letter) -> BTreeSet<NfaState> {
        let moved: BTreeSet<_> = self
            .transitions
            .iter()
            .filter(|(p, a, _)| *a == Some(letter) && set.contains(p))
            .map(|&(_, _, q)| q)
            .collect();
        self.epsilon_closure(&moved)
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = self.epsilon_closure(&self.initials.iter().copied().collect());
        for &a in w {
            cur = self.step(&cur, a);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&s| self.finals[s])
    }

    /// Product automaton restricted to reachable pairs, then trimmed to
    /// states that can still reach a final pair.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa, LangError> {
        if !self.alphabet.same_letters(&other.alphabet) {
            return Err(LangError::AlphabetMismatch);
        }
        let other = other.relabel_to(&self.alphabet);
        let mut out_a: HashMap<NfaState, Vec<(Option<Letter>, NfaState)>> = HashMap::new();
        for &(p, a, q) in &self.transitions {
            out_a.entry(p).or_default().push((a, q));
        }
        let mut out_b: HashMap<NfaState, Vec<(Option<Letter>, NfaState)>> = HashMap::new();
        for &(p, a, q) in &other.transitions {
            out_b.entry(p).or_default().push((a, q));
        }
        let mut ids: HashMap<(NfaState, NfaState), NfaState> = HashMap::new();
        let mut pairs = Vec::new();
        let mut queue = VecDeque::new();
        let mut transitions = Vec::new();
        let mut intern = |pair: (NfaState, NfaState),
                          pairs: &mut Vec<(NfaState, NfaState)>,
                          queue: &mut VecDeque<NfaState>| {
            *ids.entry(pair).or_insert_with(|| {
                pairs.push(pair);
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            })
        };
        let mut initials = Vec::new();
        for &i in &self.initials {
            for &j in &other.initials {
                initials.push(intern((i, j), &mut pairs, &mut queue));
            }
        }
        let empty = Vec::new();
        while let Some(id) = queue.pop_front() {
            let (p, q) = pairs[id];
            let ta = out_a.get(&p).unwrap_or(&empty);
            let tb = out_b.get(&q).unwrap_or(&empty);
            for &(a, p2) in ta {
                match a {
                    None => {
                        let t = intern((p2, q), &mut pairs, &mut queue);
                        transitions.push((id, None, t));
                    }
                    Some(x) => {
                        for &(b, q2) in tb {
                            if b == Some(x) {
                                let t = intern((p2, q2), &mut pairs, &mut queue);
                                transitions.push((id, Some(x), t));
                            }
                        }
                    }
                }
            }
            for &(b, q2) in tb {
                if b.is_none() {
                    let t = intern((p, q2), &mut pairs, &mut queue);
                    transitions.push((id, None, t));
                }
            }
        }
        let mut n = Nfa::new(self.alphabet.clone(), pairs.len());
        n.transitions = transitions;
        n.initials = initials;
        for (id, &(p, q)) in pairs.iter().enumerate() {
            n.finals[id] = self.finals[p] && other.finals[q];
        }
        Ok(n.trim())
    }

    /// Same language over `target` (which must carry the same letter names).
    pub fn relabel_to(&self, target: &Alphabet) -> Nfa {
        if self.alphabet == *target {
            return self.clone();
        }
        let map: Vec<Letter> = self
            .alphabet
            .names()
            .iter()
            .map(|n| target.get(n).expect("same letters"))
            .collect();
        let mut n = self.clone();
        n.alphabet = target.clone();
        for t in &mut n.transitions {
            t.1 = t.1.map(|a| map[a]);
        }
        n
    }

    /// Removes states that are unreachable or cannot reach a final state.
    pub fn trim(&self) -> Nfa {
        let mut fwd = vec![false; self.num_states];
        let mut stack: Vec<_> = self.initials.clone();
        for &s in &stack {
            fwd[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &(p, _, q) in &self.transitions {
                if p == s && !fwd[q] {
                    fwd[q] = true;
                    stack.push(q);
                }
            }
        }
        let mut bwd = self.finals.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for &(p, _, q) in &self.transitions {
                if bwd[q] && !bwd[p] {
                    bwd[p] = true;
                    changed = true;
                }
            }
        }
        let keep: Vec<bool> = (0..self.num_states).map(|s| fwd[s] && bwd[s]).collect();
        let mut remap = vec![usize::MAX; self.num_states];
        let mut count = 0;
        for s in 0..self.num_states {
            if keep[s] {
                remap[s] = count;
                count += 1;
            }
        }
        let mut n = Nfa::new(self.alphabet.clone(), count.max(1));
        if count == 0 {
            // Language is empty; keep a single non-final initial state.
            n.initials.push(0);
            return n;
        }
        n.transitions = self
            .transitions
            .iter()
            .filter(|(p, _, q)| keep[*p] && keep[*q])
            .map(|&(p, a, q)| (remap[p], a, remap[q]))
            .collect();
        n.initials = self
            .initials
            .iter()
            .filter(|&&s| keep[s])
            .map(|&s| remap[s])
            .collect();
        for s in 0..self.num_states {
            if keep[s] {
                n.finals[remap[s]] = self.finals[s];
            }
        }
        n
    }

    pub fn is_empty(&self) -> bool {
        let t = self.trim();
        !t.finals.iter().any(|&f| f) || t.initials.is_empty()
    }

    /// Accepted words of length at most `max_len`, in shortlex order.
    pub fn enumerate(&self, max_len: usize, limit: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let start = self.epsilon_closure(&self.initials.iter().copied().collect());
        let mut layer: Vec<(Word, BTreeSet<NfaState>)> = vec![(Vec::new(), start)];
        for len in 0..=max_len {
            for (w, set) in &layer {
                if set.iter().any(|&s| self.finals[s]) {
                    out.push(w.clone());
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, set) in &layer {
                for a in self.alphabet.letters() {
                    let s2 = self.step(set, a);
                    if !s2.is_empty() {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((w2, s2));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        out
    }
}

/// On-disk NFA description; letters are resolved against the group alphabet.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NfaFile {
    pub states: Vec<String>,
    pub transitions: Vec<NfaFileTransition>,
    pub initials: Vec<String>,
    pub finals: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NfaFileTransition {
    pub from: String,
    /// `null` for an ε-move.
    #[serde(default)]
    pub letter: Option<String>,
    pub to: String,
}

impl NfaFile {
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Result<Nfa, LangError> {
        let idx: HashMap<&str, usize> = self
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let state = |name: &str| {
            idx.get(name)
                .copied()
                .ok_or_else(|| LangError::UnknownSymbol(name.to_string()))
        };
        let mut n = Nfa::new(alphabet.clone(), self.states.len());
        for t in &self.transitions {
            let letter = match &t.letter {
                None => None,
                Some(l) => Some(
                    alphabet
                        .get(l)
                        .ok_or_else(|| LangError::UnknownSymbol(l.clone()))?,
                ),
            };
            n.add(state(&t.from)?, letter, state(&t.to)?);
        }
        for s in &self.initials {
            n.initials.push(state(s)?);
        }
        for s in &self.finals {
            n.finals[state(s)?] = true;
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::words_up_to;

    fn ab() -> Alphabet {
        Alphabet::from_names(["a", "b"]).unwrap()
    }

    #[test]
    fn flower_accepts_products_of_petals() {
        let n = Nfa::flower(ab(), &[vec![0, 1], vec![1]]);
        assert!(n.accepts(&[]));
        assert!(n.accepts(&[0, 1, 1, 0, 1]));
        assert!(!n.accepts(&[0]));
        assert!(!n.accepts(&[1, 0]));
    }

    #[test]
    fn prefix_chain() {
        let n = Nfa::flower(ab(), &[vec![0]]).with_prefix(&[1, 1]);
        assert!(n.accepts(&[1, 1]));
        assert!(n.accepts(&[1, 1, 0, 0]));
        assert!(!n.accepts(&[1, 0]));
    }

    #[test]
    fn intersection_matches_conjunction() {
        let even_a = {
            let mut n = Nfa::new(ab(), 2);
            n.add(0, Some(0), 1);
            n.add(1, Some(0), 0);
            n.add(0, Some(1), 0);
            n.add(1, Some(1), 1);
            n.initials.push(0);
            n.set_final(0);
            n
        };
        let ends_b = {
            let mut n = Nfa::new(ab(), 2);
            n.add(0, Some(0), 0);
            n.add(0, Some(1), 0);
            n.add(0, Some(1), 1);
            n.initials.push(0);
            n.set_final(1);
            n
        };
        let both = even_a.intersect(&ends_b).unwrap();
        for w in words_up_to(2, 6) {
            assert_eq!(
                both.accepts(&w),
                even_a.accepts(&w) && ends_b.accepts(&w),
                "{w:?}"
            );
        }
    }

    #[test]
    fn emptiness_and_enumeration() {
        assert!(Nfa::empty(ab()).is_empty());
        assert!(!Nfa::universal(ab()).is_empty());
        let words = Nfa::flower(ab(), &[vec![0, 1]]).enumerate(4, 100);
        assert_eq!(words, vec![vec![], vec![0, 1], vec![0, 1, 0, 1]]);
    }

    #[test]
    fn mismatched_alphabets() {
        let other = Alphabet::from_names(["x"]).unwrap();
        assert!(matches!(
            Nfa::universal(ab()).intersect(&Nfa::universal(other)),
            Err(LangError::AlphabetMismatch)
        ));
    }
}
