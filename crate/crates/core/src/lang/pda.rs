//! Pushdown automata accepting by final state.
//!
//! Every transition pops exactly one stack symbol and pushes at most two;
//! longer pushes are split through fresh states when added via
//! [`Pda::add_transition`]. In a push word the first symbol becomes the new
//! top of the stack.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Letter, Word};

use super::grammar::{Grammar, Sym};
use super::nfa::Nfa;
use super::LangError;

pub type State = usize;
pub type StackSym = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub from: State,
    pub input: Option<Letter>,
    pub pop: StackSym,
    pub to: State,
    pub push: Vec<StackSym>,
}

#[derive(Debug, Clone)]
pub struct Pda {
    pub input: Alphabet,
    pub num_states: usize,
    pub stack_names: Vec<String>,
    pub bottom: StackSym,
    pub initial: State,
    pub finals: Vec<bool>,
    pub transitions: Vec<Transition>,
}

impl Pda {
    /// A PDA with a single state and only the bottom marker on the stack.
    pub fn new(input: Alphabet) -> Self {
        Pda {
            input,
            num_states: 1,
            stack_names: vec!["#".to_string()],
            bottom: 0,
            initial: 0,
            finals: vec![false],
            transitions: Vec::new(),
        }
    }

    pub fn add_state(&mut self) -> State {
        self.num_states += 1;
        self.finals.push(false);
        self.num_states - 1
    }

    pub fn add_stack_symbol(&mut self, name: impl Into<String>) -> StackSym {
        self.stack_names.push(name.into());
        self.stack_names.len() - 1
    }

    pub fn set_final(&mut self, s: State) {
        self.finals[s] = true;
    }

    pub fn num_stack_symbols(&self) -> usize {
        self.stack_names.len()
    }

    /// Adds a transition, splitting pushes longer than two symbols.
    pub fn add_transition(
        &mut self,
        from: State,
        input: Option<Letter>,
        pop: StackSym,
        to: State,
        push: &[StackSym],
    ) {
        if push.len() <= 2 {
            self.transitions.push(Transition {
                from,
                input,
                pop,
                to,
                push: push.to_vec(),
            });
            return;
        }
        // Build the pushed word bottom-up: replace `pop` by the last two
        // symbols, then repeatedly replace the current top by one more symbol
        // on top of itself.
        let k = push.len();
        let mut cur = self.add_state();
        self.transitions.push(Transition {
            from,
            input,
            pop,
            to: cur,
            push: vec![push[k - 2], push[k - 1]],
        });
        for i in (0..k - 2).rev() {
            let next = if i == 0 { to } else { self.add_state() };
            self.transitions.push(Transition {
                from: cur,
                input: None,
                pop: push[i + 1],
                to: next,
                push: vec![push[i], push[i + 1]],
            });
            cur = next;
        }
    }

    pub fn size(&self) -> usize {
        self.num_states + self.stack_names.len() + self.transitions.len()
    }

    /// At most one applicable move in every configuration.
    pub fn is_deterministic(&self) -> bool {
        let mut seen: HashMap<(State, StackSym), (bool, Vec<Letter>)> = HashMap::new();
        for t in &self.transitions {
            let e = seen.entry((t.from, t.pop)).or_default();
            match t.input {
                None => {
                    if e.0 || !e.1.is_empty() {
                        return false;
                    }
                    e.0 = true;
                }
                Some(a) => {
                    if e.0 || e.1.contains(&a) {
                        return false;
                    }
                    e.1.push(a);
                }
            }
        }
        true
    }

    /// Exact membership: intersect with the one-word automaton and test
    /// emptiness.
    pub fn accepts(&self, w: &[Letter]) -> bool {
        let n = Nfa::word(self.input.clone(), w);
        !pda_empty(&intersect_pda_nfa(self, &n).expect("same alphabet"))
    }

    /// Direct simulation of a deterministic PDA. `max_eps` bounds the
    /// number of consecutive ε-moves; `None` is returned if it is exceeded.
    pub fn run_deterministic(&self, w: &[Letter], max_eps: usize) -> Option<bool> {
        let run = self.runner(max_eps);
        let mut config = run.start();
        for &a in w {
            match run.step(&config, a)? {
                Some(c) => config = c,
                None => return Some(false),
            }
        }
        run.accepting(&config)
    }

    /// Step-by-step simulation of a deterministic PDA.
    pub fn runner(&self, max_eps: usize) -> DpdaRunner<'_> {
        let mut index: HashMap<(State, StackSym, Option<Letter>), usize> = HashMap::new();
        for (i, t) in self.transitions.iter().enumerate() {
            index.insert((t.from, t.pop, t.input), i);
        }
        DpdaRunner {
            pda: self,
            index,
            max_eps,
        }
    }

    /// Triple construction: variable `[p,A,q]` derives the words read while
    /// moving from `p` to `q` and popping `A`; `[p,A,*]` derives words that
    /// lead from `p` with `A` on top (and nothing else relevant) to a final
    /// state. The start variable is `[initial,bottom,*]`.
    pub fn to_grammar(&self) -> Grammar {
        let n = self.num_states;
        let g = self.stack_names.len();
        let pop_var = |p: State, a: StackSym, q: State| (p * g + a) * n + q;
        let reach_var = |p: State, a: StackSym| n * g * n + p * g + a;
        let mut variables = Vec::with_capacity(n * g * n + n * g);
        for p in 0..n {
            for a in 0..g {
                for q in 0..n {
                    variables.push(format!("[{p},{},{q}]", self.stack_names[a]));
                }
            }
        }
        for p in 0..n {
            for a in 0..g {
                variables.push(format!("[{p},{},*]", self.stack_names[a]));
            }
        }
        let mut prods: Vec<(usize, Vec<Sym>)> = Vec::new();
        let lead = |t: &Transition| -> Vec<Sym> { t.input.map(Sym::T).into_iter().collect() };
        for p in 0..n {
            if self.finals[p] {
                for a in 0..g {
                    prods.push((reach_var(p, a), vec![]));
                }
            }
        }
        for t in &self.transitions {
            match t.push.as_slice() {
                [] => {
                    prods.push((pop_var(t.from, t.pop, t.to), lead(t)));
                    if self.finals[t.to] {
                        prods.push((reach_var(t.from, t.pop), lead(t)));
                    }
                }
                [b] => {
                    for q in 0..n {
                        let mut rhs = lead(t);
                        rhs.push(Sym::V(pop_var(t.to, *b, q)));
                        prods.push((pop_var(t.from, t.pop, q), rhs));
                    }
                    let mut rhs = lead(t);
                    rhs.push(Sym::V(reach_var(t.to, *b)));
                    prods.push((reach_var(t.from, t.pop), rhs));
                }
                [b, c] => {
                    for r in 0..n {
                        for q in 0..n {
                            let mut rhs = lead(t);
                            rhs.push(Sym::V(pop_var(t.to, *b, r)));
                            rhs.push(Sym::V(pop_var(r, *c, q)));
                            prods.push((pop_var(t.from, t.pop, q), rhs));
                        }
                        let mut rhs = lead(t);
                        rhs.push(Sym::V(pop_var(t.to, *b, r)));
                        rhs.push(Sym::V(reach_var(r, *c)));
                        prods.push((reach_var(t.from, t.pop), rhs));
                    }
                    let mut rhs = lead(t);
                    rhs.push(Sym::V(reach_var(t.to, *b)));
                    prods.push((reach_var(t.from, t.pop), rhs));
                }
                _ => unreachable!("push words have length at most two"),
            }
        }
        Grammar {
            variables,
            terminals: self.input.clone(),
            prods,
            start: reach_var(self.initial, self.bottom),
        }
    }

    /// Some accepted word, if the language is nonempty and a witness of
    /// length at most `max_len` is found by the saturation.
    pub fn witness(&self, max_len: usize) -> Option<Word> {
        Saturation::run(self).witness(max_len)
    }
}

/// Emptiness test by saturating the facts of [`Pda::to_grammar`] without
/// materialising the grammar.
pub fn pda_empty(m: &Pda) -> bool {
    !Saturation::run(m).nonempty()
}

#[derive(Debug, Clone, Copy)]
enum PopReason {
    Direct(usize),
    One(usize, usize),
    Two(usize, usize, usize),
}

#[derive(Debug, Clone, Copy)]
enum ReachReason {
    Final,
    Direct(usize),
    One(usize),
    Two(usize, usize),
}

struct Saturation<'a> {
    m: &'a Pda,
    pop_facts: Vec<((State, StackSym, State), PopReason)>,
    reach: HashMap<(State, StackSym), ReachReason>,
}

impl<'a> Saturation<'a> {
    fn run(m: &'a Pda) -> Self {
        // Transitions indexed by (target, first pushed symbol).
        let mut by_push1: HashMap<(State, StackSym), Vec<usize>> = HashMap::new();
        let mut by_push2: HashMap<(State, StackSym), Vec<usize>> = HashMap::new();
        let mut pop_facts: Vec<((State, StackSym, State), PopReason)> = Vec::new();
        let mut known: HashMap<(State, StackSym, State), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut add = |fact: (State, StackSym, State),
                       reason: PopReason,
                       pop_facts: &mut Vec<_>,
                       queue: &mut VecDeque<usize>| {
            if let std::collections::hash_map::Entry::Vacant(e) = known.entry(fact) {
                e.insert(pop_facts.len());
                queue.push_back(pop_facts.len());
                pop_facts.push((fact, reason));
            }
        };
        for (i, t) in m.transitions.iter().enumerate() {
            match t.push.len() {
                0 => add(
                    (t.from, t.pop, t.to),
                    PopReason::Direct(i),
                    &mut pop_facts,
                    &mut queue,
                ),
                1 => by_push1.entry((t.to, t.push[0])).or_default().push(i),
                _ => by_push2.entry((t.to, t.push[0])).or_default().push(i),
            }
        }
        // processed[(p, A)] = ids of processed facts (p, A, _).
        let mut processed: HashMap<(State, StackSym), Vec<usize>> = HashMap::new();
        // waiting[(r, C)] = (transition, fact id of the first half ending in r).
        let mut waiting: HashMap<(State, StackSym), Vec<(usize, usize)>> = HashMap::new();
        while let Some(id) = queue.pop_front() {
            let ((x, y, z), _) = pop_facts[id];
            processed.entry((x, y)).or_default().push(id);
            if let Some(ts) = by_push1.get(&(x, y)) {
                for &ti in ts {
                    let t = &m.transitions[ti];
                    add(
                        (t.from, t.pop, z),
                        PopReason::One(ti, id),
                        &mut pop_facts,
                        &mut queue,
                    );
                }
            }
            if let Some(ts) = by_push2.get(&(x, y)) {
                for &ti in ts {
                    let c = m.transitions[ti].push[1];
                    waiting.entry((z, c)).or_default().push((ti, id));
                    let seconds: Vec<usize> = processed.get(&(z, c)).cloned().unwrap_or_default();
                    for sid in seconds {
                        let q = pop_facts[sid].0 .2;
                        let t = &m.transitions[ti];
                        add(
                            (t.from, t.pop, q),
                            PopReason::Two(ti, id, sid),
                            &mut pop_facts,
                            &mut queue,
                        );
                    }
                }
            }
            if let Some(ws) = waiting.get(&(x, y)).cloned() {
                for (ti, first) in ws {
                    let t = &m.transitions[ti];
                    add(
                        (t.from, t.pop, z),
                        PopReason::Two(ti, first, id),
                        &mut pop_facts,
                        &mut queue,
                    );
                }
            }
        }

        let mut reach: HashMap<(State, StackSym), ReachReason> = HashMap::new();
        let symbols: Vec<StackSym> = (0..m.stack_names.len()).collect();
        for p in 0..m.num_states {
            if m.finals[p] {
                for &a in &symbols {
                    reach.insert((p, a), ReachReason::Final);
                }
            }
        }
        let mut pops_from: HashMap<(State, StackSym), Vec<usize>> = HashMap::new();
        for (id, ((p, a, _), _)) in pop_facts.iter().enumerate() {
            pops_from.entry((*p, *a)).or_default().push(id);
        }
        let mut changed = true;
        while changed {
            changed = false;
            for (ti, t) in m.transitions.iter().enumerate() {
                if reach.contains_key(&(t.from, t.pop)) {
                    continue;
                }
                let reason = match t.push.as_slice() {
                    [] => m.finals[t.to].then_some(ReachReason::Direct(ti)),
                    [b] => reach
                        .contains_key(&(t.to, *b))
                        .then_some(ReachReason::One(ti)),
                    [b, c] => {
                        if reach.contains_key(&(t.to, *b)) {
                            Some(ReachReason::One(ti))
                        } else {
                            pops_from.get(&(t.to, *b)).and_then(|ids| {
                                ids.iter()
                                    .find(|&&id| reach.contains_key(&(pop_facts[id].0 .2, *c)))
                                    .map(|&id| ReachReason::Two(ti, id))
                            })
                        }
                    }
                    _ => unreachable!(),
                };
                if let Some(r) = reason {
                    reach.insert((t.from, t.pop), r);
                    changed = true;
                }
            }
        }
        Saturation {
            m,
            pop_facts,
            reach,
        }
    }

    fn nonempty(&self) -> bool {
        self.reach.contains_key(&(self.m.initial, self.m.bottom))
    }

    fn witness(&self, max_len: usize) -> Option<Word> {
        if !self.nonempty() {
            return None;
        }
        let mut pop_len: Vec<u128> = vec![0; self.pop_facts.len()];
        for (id, (_, reason)) in self.pop_facts.iter().enumerate() {
            let lead = |ti: usize| u128::from(self.m.transitions[ti].input.is_some());
            pop_len[id] = match *reason {
                PopReason::Direct(ti) => lead(ti),
                PopReason::One(ti, a) => lead(ti).saturating_add(pop_len[a]),
                PopReason::Two(ti, a, b) => lead(ti)
                    .saturating_add(pop_len[a])
                    .saturating_add(pop_len[b]),
            };
        }
        let mut out = Vec::new();
        let mut budget = max_len as u128;
        if self.emit_reach(
            self.m.initial,
            self.m.bottom,
            &pop_len,
            &mut budget,
            &mut out,
            0,
        ) {
            Some(out)
        } else {
            None
        }
    }

    fn emit_pop(&self, id: usize, out: &mut Word) {
        let lead = |ti: usize, out: &mut Word| {
            if let Some(a) = self.m.transitions[ti].input {
                out.push(a);
            }
        };
        match self.pop_facts[id].1 {
            PopReason::Direct(ti) => lead(ti, out),
            PopReason::One(ti, a) => {
                lead(ti, out);
                self.emit_pop(a, out);
            }
            PopReason::Two(ti, a, b) => {
                lead(ti, out);
                self.emit_pop(a, out);
                self.emit_pop(b, out);
            }
        }
    }

    fn emit_reach(
        &self,
        p: State,
        a: StackSym,
        pop_len: &[u128],
        budget: &mut u128,
        out: &mut Word,
        depth: usize,
    ) -> bool {
        if depth > self.reach.len() + 1 {
            return false;
        }
        let Some(&reason) = self.reach.get(&(p, a)) else {
            return false;
        };
        let lead = |ti: usize, out: &mut Word, budget: &mut u128| -> bool {
            if let Some(x) = self.m.transitions[ti].input {
                if *budget == 0 {
                    return false;
                }
                *budget -= 1;
                out.push(x);
            }
            true
        };
        match reason {
            ReachReason::Final => true,
            ReachReason::Direct(ti) => lead(ti, out, budget),
            ReachReason::One(ti) => {
                let t = &self.m.transitions[ti];
                lead(ti, out, budget)
                    && self.emit_reach(t.to, t.push[0], pop_len, budget, out, depth + 1)
            }
            ReachReason::Two(ti, first) => {
                let t = &self.m.transitions[ti];
                if !lead(ti, out, budget) || pop_len[first] > *budget {
                    return false;
                }
                *budget -= pop_len[first];
                self.emit_pop(first, out);
                let r = self.pop_facts[first].0 .2;
                self.emit_reach(r, t.push[1], pop_len, budget, out, depth + 1)
            }
        }
    }
}

/// Product of a PDA with an NFA over the same letters.
pub fn intersect_pda_nfa(m: &Pda, n: &Nfa) -> Result<Pda, LangError> {
    if !m.input.same_letters(&n.alphabet) {
        return Err(LangError::AlphabetMismatch);
    }
    let n = n.relabel_to(&m.input);
    let mut nfa_out: Vec<Vec<(Option<Letter>, usize)>> = vec![Vec::new(); n.num_states];
    for &(p, a, q) in &n.transitions {
        nfa_out[p].push((a, q));
    }
    let mut pda_out: Vec<Vec<usize>> = vec![Vec::new(); m.num_states];
    for (i, t) in m.transitions.iter().enumerate() {
        pda_out[t.from].push(i);
    }
    let mut out = Pda {
        input: m.input.clone(),
        num_states: 1,
        stack_names: m.stack_names.clone(),
        bottom: m.bottom,
        initial: 0,
        finals: vec![false],
        transitions: Vec::new(),
    };
    let mut ids: HashMap<(State, usize), State> = HashMap::new();
    let mut pairs = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern =
        |pair: (State, usize), out: &mut Pda, pairs: &mut Vec<_>, queue: &mut VecDeque<_>| {
            *ids.entry(pair).or_insert_with(|| {
                let s = out.add_state();
                out.finals[s] = m.finals[pair.0] && n.finals[pair.1];
                pairs.push(pair);
                queue.push_back(s);
                s
            })
        };
    for &i in &n.initials {
        let s = intern((m.initial, i), &mut out, &mut pairs, &mut queue);
        out.transitions.push(Transition {
            from: 0,
            input: None,
            pop: m.bottom,
            to: s,
            push: vec![m.bottom],
        });
    }
    let symbols = m.stack_names.len();
    while let Some(s) = queue.pop_front() {
        let (p, q) = pairs[s - 1];
        for &ti in &pda_out[p] {
            let t = &m.transitions[ti];
            match t.input {
                None => {
                    let to = intern((t.to, q), &mut out, &mut pairs, &mut queue);
                    out.transitions.push(Transition {
                        from: s,
                        input: None,
                        pop: t.pop,
                        to,
                        push: t.push.clone(),
                    });
                }
                Some(a) => {
                    for &(b, q2) in &nfa_out[q] {
                        if b == Some(a) {
                            let to = intern((t.to, q2), &mut out, &mut pairs, &mut queue);
                            out.transitions.push(Transition {
                                from: s,
                                input: Some(a),
                                pop: t.pop,
                                to,
                                push: t.push.clone(),
                            });
                        }
                    }
                }
            }
        }
        for &(b, q2) in &nfa_out[q] {
            if b.is_none() {
                let to = intern((p, q2), &mut out, &mut pairs, &mut queue);
                for z in 0..symbols {
                    out.transitions.push(Transition {
                        from: s,
                        input: None,
                        pop: z,
                        to,
                        push: vec![z],
                    });
                }
            }
        }
    }
    Ok(out)
}

/// PDA over `delta` accepting `{u : h(u) ∈ L(m)}`, where `h[a]` is the image
/// of letter `a` of `delta` as a word over the input alphabet of `m`.
pub fn inverse_hom(m: &Pda, delta: &Alphabet, h: &[Word]) -> Pda {
    assert_eq!(
        h.len(),
        delta.len(),
        "homomorphism must be total on the alphabet"
    );
    let mut pda_out: Vec<Vec<usize>> = vec![Vec::new(); m.num_states];
    for (i, t) in m.transitions.iter().enumerate() {
        pda_out[t.from].push(i);
    }
    // Buffer: None, or Some((a, i)) meaning h(a)[i..] is still to be fed.
    type Ctl = (State, Option<(Letter, usize)>);
    let mut out = Pda {
        input: delta.clone(),
        num_states: 0,
        stack_names: m.stack_names.clone(),
        bottom: m.bottom,
        initial: 0,
        finals: Vec::new(),
        transitions: Vec::new(),
    };
    let mut ids: HashMap<Ctl, State> = HashMap::new();
    let mut ctls: Vec<Ctl> = Vec::new();
    let mut queue = VecDeque::new();
    let normalize = |c: Ctl| -> Ctl {
        match c {
            (q, Some((a, i))) if i >= h[a].len() => (q, None),
            c => c,
        }
    };
    let mut intern = |c: Ctl, out: &mut Pda, ctls: &mut Vec<Ctl>, queue: &mut VecDeque<State>| {
        let c = normalize(c);
        *ids.entry(c).or_insert_with(|| {
            let s = out.add_state();
            out.finals[s] = c.1.is_none() && m.finals[c.0];
            ctls.push(c);
            queue.push_back(s);
            s
        })
    };
    intern((m.initial, None), &mut out, &mut ctls, &mut queue);
    let symbols = m.stack_names.len();
    while let Some(s) = queue.pop_front() {
        let (q, buf) = ctls[s];
        match buf {
            None => {
                for a in delta.letters() {
                    let to = intern((q, Some((a, 0))), &mut out, &mut ctls, &mut queue);
                    for z in 0..symbols {
                        out.transitions.push(Transition {
                            from: s,
                            input: Some(a),
                            pop: z,
                            to,
                            push: vec![z],
                        });
                    }
                }
            }
            Some((a, i)) => {
                let next = h[a][i];
                for &ti in &pda_out[q] {
                    let t = &m.transitions[ti];
                    if t.input == Some(next) {
                        let to = intern((t.to, Some((a, i + 1))), &mut out, &mut ctls, &mut queue);
                        out.transitions.push(Transition {
                            from: s,
                            input: None,
                            pop: t.pop,
                            to,
                            push: t.push.clone(),
                        });
                    }
                }
            }
        }
        for &ti in &pda_out[q] {
            let t = &m.transitions[ti];
            if t.input.is_none() {
                let to = intern((t.to, buf), &mut out, &mut ctls, &mut queue);
                out.transitions.push(Transition {
                    from: s,
                    input: None,
                    pop: t.pop,
                    to,
                    push: t.push.clone(),
                });
            }
        }
    }
    out
}

/// Decides whether the group element of `w` lies in the image of `L(n)`,
/// given a PDA for the word problem and the letter involution `inv`.
pub fn rational_member(wp: &Pda, inv: &[Letter], w: &[Letter], n: &Nfa) -> Result<bool, LangError> {
    if !wp.input.same_letters(&n.alphabet) {
        return Err(LangError::AlphabetMismatch);
    }
    let n = n.relabel_to(&wp.input);
    let w_inv: Word = w.iter().rev().map(|&a| inv[a]).collect();
    let shifted = n.with_prefix(&w_inv).trim();
    if shifted.is_empty() {
        return Ok(false);
    }
    Ok(!pda_empty(&intersect_pda_nfa(wp, &shifted)?))
}

/// Configuration of a PDA: control state and stack, top last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: State,
    pub stack: Vec<StackSym>,
}

pub struct DpdaRunner<'a> {
    pda: &'a Pda,
    index: HashMap<(State, StackSym, Option<Letter>), usize>,
    max_eps: usize,
}

impl DpdaRunner<'_> {
    pub fn start(&self) -> Config {
        Config {
            state: self.pda.initial,
            stack: vec![self.pda.bottom],
        }
    }

    fn apply(&self, t: usize, c: &mut Config) {
        let t = &self.pda.transitions[t];
        c.stack.pop();
        c.stack.extend(t.push.iter().rev());
        c.state = t.to;
    }

    /// Follows ε-moves; `None` when more than `max_eps` are taken, else
    /// whether a final state was visited.
    fn eps_closure(&self, c: &mut Config) -> Option<bool> {
        let mut hit_final = self.pda.finals[c.state];
        let mut steps = 0;
        while let Some(&top) = c.stack.last() {
            let Some(&i) = self.index.get(&(c.state, top, None)) else {
                break;
            };
            steps += 1;
            if steps > self.max_eps {
                return None;
            }
            self.apply(i, c);
            hit_final |= self.pda.finals[c.state];
        }
        Some(hit_final)
    }

    /// ε-closure then one input letter. `None` if the ε bound is hit,
    /// `Some(None)` if the run dies.
    pub fn step(&self, c: &Config, a: Letter) -> Option<Option<Config>> {
        let mut c = c.clone();
        self.eps_closure(&mut c)?;
        let Some(&top) = c.stack.last() else {
            return Some(None);
        };
        match self.index.get(&(c.state, top, Some(a))) {
            Some(&i) => {
                self.apply(i, &mut c);
                Some(Some(c))
            }
            None => Some(None),
        }
    }

    /// Whether the input read so far is accepted.
    pub fn accepting(&self, c: &Config) -> Option<bool> {
        self.eps_closure(&mut c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::words_up_to;

    /// Deterministic PDA for the word problem of Z over {a, a^-}: the
    /// stack holds a unary counter of one sign.
    pub(crate) fn wp_z() -> Pda {
        let input = Alphabet::from_names(["a", "a^-"]).unwrap();
        let mut m = Pda::new(input);
        let p = m.add_stack_symbol("P");
        let n = m.add_stack_symbol("N");
        let b = m.bottom;
        m.set_final(0);
        let q = m.add_state();
        // state 0: stack empty; state 1: nonempty counter
        m.add_transition(0, Some(0), b, q, &[p, b]);
        m.add_transition(0, Some(1), b, q, &[n, b]);
        m.add_transition(q, Some(0), p, q, &[p, p]);
        m.add_transition(q, Some(1), n, q, &[n, n]);
        m.add_transition(q, Some(1), p, q, &[]);
        m.add_transition(q, Some(0), n, q, &[]);
        m.add_transition(q, None, b, 0, &[b]);
        m
    }

    fn sum(w: &[Letter]) -> i64 {
        w.iter().map(|&a| if a == 0 { 1 } else { -1 }).sum()
    }

    #[test]
    fn z_word_problem_by_simulation_and_emptiness() {
        let m = wp_z();
        assert!(m.is_deterministic());
        for w in words_up_to(2, 6) {
            let expect = sum(&w) == 0;
            assert_eq!(m.run_deterministic(&w, 100), Some(expect), "{w:?}");
            assert_eq!(m.accepts(&w), expect, "{w:?}");
        }
    }

    #[test]
    fn long_push_is_split() {
        let input = Alphabet::from_names(["a"]).unwrap();
        let mut m = Pda::new(input);
        let x = m.add_stack_symbol("X");
        let y = m.add_stack_symbol("Y");
        let z = m.add_stack_symbol("Z");
        let b = m.bottom;
        let q = m.add_state();
        let f = m.add_state();
        m.set_final(f);
        m.add_transition(0, None, b, q, &[x, y, z, b]);
        m.add_transition(q, Some(0), x, q, &[]);
        m.add_transition(q, Some(0), y, q, &[]);
        m.add_transition(q, Some(0), z, q, &[]);
        m.add_transition(q, None, b, f, &[b]);
        assert!(m.transitions.iter().all(|t| t.push.len() <= 2));
        assert_eq!(m.run_deterministic(&[0, 0, 0], 100), Some(true));
        assert_eq!(m.run_deterministic(&[0, 0], 100), Some(false));
        assert!(m.accepts(&[0, 0, 0]));
        assert!(!m.accepts(&[0, 0]));
        assert_eq!(m.witness(10), Some(vec![0, 0, 0]));
    }

    #[test]
    fn empty_cases() {
        let mut m = wp_z();
        assert!(!pda_empty(&m));
        m.finals = vec![false; m.num_states];
        assert!(pda_empty(&m));
    }

    #[test]
    fn saturation_agrees_with_explicit_grammar() {
        let m = wp_z();
        assert_eq!(m.to_grammar().is_empty(), pda_empty(&m));
        let a_plus = {
            let mut n = Nfa::new(m.input.clone(), 2);
            n.add(0, Some(0), 1);
            n.add(1, Some(0), 1);
            n.initials.push(0);
            n.set_final(1);
            n
        };
        let prod = intersect_pda_nfa(&m, &a_plus).unwrap();
        assert!(pda_empty(&prod));
        assert!(prod.to_grammar().is_empty());
    }

    #[test]
    fn intersection_with_regular() {
        let m = wp_z();
        let abar = Nfa::flower(m.input.clone(), &[vec![0, 1]]);
        let prod = intersect_pda_nfa(&m, &abar).unwrap();
        assert!(prod.accepts(&[0, 1]));
        assert!(!prod.accepts(&[1, 0]));
        let all = intersect_pda_nfa(&m, &Nfa::universal(m.input.clone())).unwrap();
        for w in words_up_to(2, 6) {
            assert_eq!(all.accepts(&w), sum(&w) == 0);
        }
        assert!(pda_empty(
            &intersect_pda_nfa(&m, &Nfa::empty(m.input.clone())).unwrap()
        ));
    }

    #[test]
    fn inverse_homomorphism() {
        let m = wp_z();
        let delta = Alphabet::from_names(["p", "q"]).unwrap();
        let h = vec![vec![0, 0], vec![1, 1]];
        let inv = inverse_hom(&m, &delta, &h);
        assert!(inv.accepts(&[0, 1]));
        assert!(!inv.accepts(&[0, 0]));
        for u in words_up_to(2, 4) {
            let image: Word = u.iter().flat_map(|&a| h[a].clone()).collect();
            assert_eq!(inv.accepts(&u), m.accepts(&image));
        }
        let delta1 = Alphabet::from_names(["e"]).unwrap();
        let eps = inverse_hom(&m, &delta1, &[vec![]]);
        for k in 0..4 {
            assert!(eps.accepts(&vec![0; k]));
        }
    }

    #[test]
    fn rational_membership_parity() {
        let m = wp_z();
        let inv = vec![1, 0];
        let even = Nfa::flower(m.input.clone(), &[vec![0, 0]]);
        assert!(!rational_member(&m, &inv, &[0, 1, 0], &even).unwrap());
        assert!(rational_member(&m, &inv, &[0, 0], &even).unwrap());
        assert!(rational_member(&m, &inv, &[], &even).unwrap());
    }
}
