//! Virtually free presentations.
//!
//! A presentation lists free generators `X`, coset representatives `S`
//! (containing `"1"`) and, for every `r ∈ S∖{1}` and letter
//! `a ∈ X ∪ X̄ ∪ S∖{1}`, a rule `r a = x s` with `x` a freely reduced word
//! over `X ∪ X̄` and `s ∈ S`. Inverse letters for `S` are derived.
//!
//! Letters of Σ are numbered: `X`, then `X̄`, then `S∖{1}`, then `S̄∖{1}`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alphabet::{inverse_name, Alphabet, AlphabetError, Letter, Word, INVERSE_MARK};
use crate::lang::Pda;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("S must contain the representative \"1\"")]
    MissingOne,
    #[error("name `{0}` is used twice or clashes with a derived inverse")]
    NameClash(String),
    #[error("no rule for ({r}, {a})")]
    MissingRule { r: String, a: String },
    #[error("more than one rule for ({r}, {a})")]
    DuplicateRule { r: String, a: String },
    #[error("rule ({r}, {a}) is not allowed: {reason}")]
    BadRule {
        r: String,
        a: String,
        reason: String,
    },
    #[error("rule word for ({r}, {a}) is not freely reduced")]
    NonReducedRuleWord { r: String, a: String },
    #[error("not a group: representative `{0}` has no inverse")]
    NotAGroup(String),
    #[error("not confluent: `{word}` rewrites to both `{left}` and `{right}`")]
    NotConfluent {
        word: String,
        left: String,
        right: String,
    },
}

/// Presentation as written in a file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RawPresentation {
    #[serde(rename = "X")]
    pub x: Vec<String>,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    pub rules: Vec<RawRule>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RawRule {
    pub r: String,
    pub a: String,
    pub word: Vec<String>,
    pub rep: String,
}

/// `(x, s)` with `x` freely reduced over `X ∪ X̄` and `s` an index into `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub free_part: Word,
    pub rep: usize,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm {
            free_part: Vec::new(),
            rep: 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.free_part.is_empty() && self.rep == 0
    }
}

#[derive(Debug, Clone)]
pub struct VfPresentation {
    x: Vec<String>,
    s: Vec<String>,
    sigma: Alphabet,
    /// `table[r][a]` for every `r ∈ S` (including 1) and `a ∈ Σ`.
    table: Vec<Vec<(Word, usize)>>,
    raw: RawPresentation,
}

/// Letter kinds of Σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LetterKind {
    Gen(usize),
    GenInv(usize),
    Rep(usize),
    RepInv(usize),
}

impl VfPresentation {
    pub fn validate(raw: &RawPresentation) -> Result<Self, PresentationError> {
        let nx = raw.x.len();
        let one = raw
            .s
            .iter()
            .position(|s| s == "1")
            .ok_or(PresentationError::MissingOne)?;
        // Representative 1 gets index 0; the others keep their order.
        let mut s: Vec<String> = vec!["1".to_string()];
        s.extend(
            raw.s
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != one)
                .map(|(_, n)| n.clone()),
        );
        let ns = s.len();

        let mut sigma = Alphabet::new();
        let mut names: Vec<String> = raw.x.clone();
        names.extend(raw.x.iter().map(|n| inverse_name(n)));
        names.extend(s[1..].iter().cloned());
        names.extend(s[1..].iter().map(|n| inverse_name(n)));
        for n in raw.x.iter().chain(raw.s.iter()) {
            if n.ends_with(INVERSE_MARK) || n.is_empty() {
                return Err(PresentationError::NameClash(n.clone()));
            }
        }
        for n in &names {
            if n == "1" {
                return Err(PresentationError::NameClash(n.clone()));
            }
            sigma
                .insert(n.clone())
                .map_err(|_| PresentationError::NameClash(n.clone()))?;
        }
        if raw.s.iter().filter(|n| *n == "1").count() > 1 {
            return Err(PresentationError::NameClash("1".into()));
        }

        let rep_index: HashMap<&str, usize> =
            s.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let sym_rep = |i: usize| 2 * nx + i - 1;
        let sym_rep_inv = |i: usize| 2 * nx + (ns - 1) + i - 1;

        // Explicit rules: a ranges over X ∪ X̄ ∪ S∖1 (letters 0..2nx+ns-1).
        let explicit = 2 * nx + ns - 1;
        let mut given: Vec<Vec<Option<(Word, usize)>>> = vec![vec![None; explicit]; ns];
        for rule in &raw.rules {
            let bad = |reason: &str| PresentationError::BadRule {
                r: rule.r.clone(),
                a: rule.a.clone(),
                reason: reason.to_string(),
            };
            let r = *rep_index
                .get(rule.r.as_str())
                .ok_or_else(|| bad("left representative is not in S"))?;
            if r == 0 {
                return Err(bad("rules for 1 are implicit"));
            }
            let a = sigma.lookup(&rule.a)?;
            if a >= explicit {
                return Err(bad("inverse representatives are derived, not given"));
            }
            let word = sigma.parse_symbols(&rule.word)?;
            if word.iter().any(|&l| l >= 2 * nx) {
                return Err(bad("rule word must use only X and its inverses"));
            }
            if word.windows(2).any(|p| free_inverse(nx, p[0]) == p[1]) {
                return Err(PresentationError::NonReducedRuleWord {
                    r: rule.r.clone(),
                    a: rule.a.clone(),
                });
            }
            let rep = *rep_index
                .get(rule.rep.as_str())
                .ok_or_else(|| bad("right representative is not in S"))?;
            if given[r][a].is_some() {
                return Err(PresentationError::DuplicateRule {
                    r: rule.r.clone(),
                    a: rule.a.clone(),
                });
            }
            given[r][a] = Some((word, rep));
        }

        let mut table: Vec<Vec<(Word, usize)>> = vec![Vec::with_capacity(sigma.len()); ns];
        for a in 0..explicit {
            table[0].push(if a < 2 * nx {
                (vec![a], 0)
            } else {
                (Vec::new(), a - 2 * nx + 1)
            });
        }
        for r in 1..ns {
            for a in 0..explicit {
                match given[r][a].take() {
                    Some(rule) => table[r].push(rule),
                    None => {
                        return Err(PresentationError::MissingRule {
                            r: s[r].clone(),
                            a: sigma.name(a).to_string(),
                        })
                    }
                }
            }
        }

        // Property (i).
        for t in 1..ns {
            let a = sym_rep(t);
            if !(1..ns).any(|r| table[r][a].1 == 0) {
                return Err(PresentationError::NotAGroup(s[t].clone()));
            }
        }

        let mut p = VfPresentation {
            x: raw.x.clone(),
            s,
            sigma,
            table,
            raw: raw.clone(),
        };
        p.check_confluence()?;

        // Derived rules for S̄: x_{r,t̄} = x_{q,t}⁻¹, s_{r,t̄} = q where s_{q,t} = r.
        for t in 1..ns {
            let a = sym_rep(t);
            let mut pre = vec![None; ns];
            for q in 0..ns {
                let r = p.table[q][a].1;
                if pre[r].is_some() {
                    return Err(PresentationError::NotAGroup(p.s[t].clone()));
                }
                pre[r] = Some(q);
            }
            let derived: Vec<(Word, usize)> = (0..ns)
                .map(|r| {
                    let q = pre[r].expect("bijective");
                    (p.free_word_inverse(&p.table[q][a].0), q)
                })
                .collect();
            debug_assert_eq!(p.table[0].len(), sym_rep_inv(t));
            for (r, rule) in derived.into_iter().enumerate() {
                p.table[r].push(rule);
            }
        }
        Ok(p)
    }

    /// Critical pairs `(r, t, b)` and `(r, a, ā)` of the rewriting system on
    /// `X ∪ X̄ ∪ S∖1`, each joined by normalising both one-step reducts.
    fn check_confluence(&self) -> Result<(), PresentationError> {
        let nx = self.x.len();
        let ns = self.s.len();
        let explicit = 2 * nx + ns - 1;
        let cap = self.confluence_step_cap();
        for r in 1..ns {
            let rl = 2 * nx + r - 1;
            // (r, a, ā) for a ∈ X ∪ X̄
            for a in 0..2 * nx {
                let word = vec![rl, a, free_inverse(nx, a)];
                self.join(&word, 0, 1, cap)?;
            }
            // (r, t, b) for t ∈ S∖1
            for t in 1..ns {
                let tl = 2 * nx + t - 1;
                for b in 0..explicit {
                    let word = vec![rl, tl, b];
                    self.join(&word, 0, 1, cap)?;
                }
            }
        }
        Ok(())
    }

    fn confluence_step_cap(&self) -> usize {
        let l = self.max_rule_len();
        2 * (l + 2) * (l + 2) * self.s.len() + 64
    }

    fn join(
        &self,
        word: &[Letter],
        i: usize,
        j: usize,
        cap: usize,
    ) -> Result<(), PresentationError> {
        let left = self.rewrite_at(word, i).expect("redex");
        let right = self.rewrite_at(word, j).expect("redex");
        let nl = self.rewrite_to_normal(&left, &mut Leftmost, cap);
        let nr = self.rewrite_to_normal(&right, &mut Leftmost, cap);
        match (nl, nr) {
            (Some(a), Some(b)) if a == b => Ok(()),
            (a, b) => {
                let show = |w: Option<Word>| match w {
                    Some(w) if w.is_empty() => "1".to_string(),
                    Some(w) => self.sigma.render(&w),
                    None => "(no normal form within the step bound)".to_string(),
                };
                Err(PresentationError::NotConfluent {
                    word: self.sigma.render(word),
                    left: show(a),
                    right: show(b),
                })
            }
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.x
    }

    pub fn representatives(&self) -> &[String] {
        &self.s
    }

    pub fn raw(&self) -> &RawPresentation {
        &self.raw
    }

    /// Σ = X ∪ X̄ ∪ S∖1 ∪ S̄∖1.
    pub fn sigma(&self) -> &Alphabet {
        &self.sigma
    }

    pub fn kind(&self, a: Letter) -> LetterKind {
        let nx = self.x.len();
        let ns1 = self.s.len() - 1;
        if a < nx {
            LetterKind::Gen(a)
        } else if a < 2 * nx {
            LetterKind::GenInv(a - nx)
        } else if a < 2 * nx + ns1 {
            LetterKind::Rep(a - 2 * nx + 1)
        } else {
            LetterKind::RepInv(a - 2 * nx - ns1 + 1)
        }
    }

    pub fn is_free_letter(&self, a: Letter) -> bool {
        a < 2 * self.x.len()
    }

    /// Letter of Σ for representative index `r ≥ 1`.
    pub fn rep_letter(&self, r: usize) -> Option<Letter> {
        (r >= 1 && r < self.s.len()).then(|| 2 * self.x.len() + r - 1)
    }

    pub fn inverse_letter(&self, a: Letter) -> Letter {
        let nx = self.x.len();
        let ns1 = self.s.len() - 1;
        match self.kind(a) {
            LetterKind::Gen(i) => nx + i,
            LetterKind::GenInv(i) => i,
            LetterKind::Rep(i) => 2 * nx + ns1 + i - 1,
            LetterKind::RepInv(i) => 2 * nx + i - 1,
        }
    }

    /// Reverses `w` and inverts every letter.
    pub fn inverse_word(&self, w: &[Letter]) -> Word {
        w.iter().rev().map(|&a| self.inverse_letter(a)).collect()
    }

    fn free_word_inverse(&self, w: &[Letter]) -> Word {
        let nx = self.x.len();
        w.iter().rev().map(|&a| free_inverse(nx, a)).collect()
    }

    /// `(x_{r,a}, s_{r,a})` for any `r ∈ S` and `a ∈ Σ`.
    pub fn rule(&self, r: usize, a: Letter) -> (&[Letter], usize) {
        let (w, s) = &self.table[r][a];
        (w, *s)
    }

    pub fn max_rule_len(&self) -> usize {
        self.explicit_rules()
            .map(|(_, _, w, _)| w.len())
            .max()
            .unwrap_or(0)
    }

    /// Rules with `r ∈ S∖1` and `a ∈ X ∪ X̄ ∪ S∖1`.
    pub fn explicit_rules(&self) -> impl Iterator<Item = (usize, Letter, &[Letter], usize)> {
        let explicit = 2 * self.x.len() + self.s.len() - 1;
        (1..self.s.len()).flat_map(move |r| {
            (0..explicit).map(move |a| (r, a, self.table[r][a].0.as_slice(), self.table[r][a].1))
        })
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        Ok(self.sigma.parse_word(text)?)
    }

    /// Left-to-right normal form computation.
    pub fn normal_form(&self, w: &[Letter]) -> NormalForm {
        let mut nf = NormalForm::identity();
        for &a in w {
            self.push_letter(&mut nf, a);
        }
        nf
    }

    /// One step of the normal form computation: `nf ← nf(nf · a)`.
    pub fn push_letter(&self, nf: &mut NormalForm, a: Letter) {
        let nx = self.x.len();
        let (x, s) = &self.table[nf.rep][a];
        for &y in x {
            if nf.free_part.last() == Some(&free_inverse(nx, y)) {
                nf.free_part.pop();
            } else {
                nf.free_part.push(y);
            }
        }
        nf.rep = *s;
    }

    pub fn word_problem(&self, w: &[Letter]) -> bool {
        self.normal_form(w).is_identity()
    }

    /// Normal form written as a word over Σ.
    pub fn nf_word(&self, nf: &NormalForm) -> Word {
        let mut w = nf.free_part.clone();
        if let Some(l) = self.rep_letter(nf.rep) {
            w.push(l);
        }
        w
    }

    pub fn render_nf(&self, nf: &NormalForm) -> String {
        let x = if nf.free_part.is_empty() {
            "1".to_string()
        } else {
            self.sigma.render(&nf.free_part)
        };
        format!("({x}, {})", self.s[nf.rep])
    }

    /// `‖V‖ = |S| (2|X| + 2|S|) · max{|x_{r,a}| + 1}` over the explicit rule
    /// table; the maximum over an empty table is 1.
    pub fn size(&self) -> u64 {
        let ns = self.s.len() as u64;
        let nx = self.x.len() as u64;
        let m = self
            .explicit_rules()
            .map(|(_, _, w, _)| w.len() as u64 + 1)
            .max()
            .unwrap_or(1);
        ns * (2 * nx + 2 * ns) * m
    }

    /// Redex positions of the full rewriting system on Σ: `x x̄ → 1`,
    /// `r a → x_{r,a} s_{r,a}` for `r ∈ S∖1` and `a ∈ X ∪ X̄ ∪ S∖1`, and
    /// `s̄ → x_{1,s̄} s_{1,s̄}`. Each position is the start of a left side.
    pub fn redexes(&self, w: &[Letter]) -> Vec<usize> {
        let nx = self.x.len();
        let mut out = Vec::new();
        for i in 0..w.len() {
            match self.kind(w[i]) {
                LetterKind::RepInv(_) => out.push(i),
                LetterKind::Rep(_) => {
                    if let Some(&b) = w.get(i + 1) {
                        if !matches!(self.kind(b), LetterKind::RepInv(_)) {
                            out.push(i);
                        }
                    }
                }
                _ => {
                    if let Some(&b) = w.get(i + 1) {
                        if self.is_free_letter(b) && free_inverse(nx, w[i]) == b {
                            out.push(i);
                        }
                    }
                }
            }
        }
        out
    }

    /// Applies the rule whose left side starts at position `i`.
    pub fn rewrite_at(&self, w: &[Letter], i: usize) -> Option<Word> {
        let nx = self.x.len();
        let mut out = w[..i].to_vec();
        let rest = match self.kind(w[i]) {
            LetterKind::RepInv(_) => {
                let (x, s) = &self.table[0][w[i]];
                out.extend_from_slice(x);
                out.extend(self.rep_letter(*s));
                i + 1
            }
            LetterKind::Rep(r) => {
                let b = *w.get(i + 1)?;
                if matches!(self.kind(b), LetterKind::RepInv(_)) {
                    return None;
                }
                let (x, s) = &self.table[r][b];
                out.extend_from_slice(x);
                out.extend(self.rep_letter(*s));
                i + 2
            }
            _ => {
                let b = *w.get(i + 1)?;
                if !(self.is_free_letter(b) && free_inverse(nx, w[i]) == b) {
                    return None;
                }
                i + 2
            }
        };
        out.extend_from_slice(&w[rest..]);
        Some(out)
    }

    /// Rewrites until irreducible, choosing redexes with `strategy`.
    /// Returns `None` if `cap` steps do not suffice.
    pub fn rewrite_to_normal(
        &self,
        w: &[Letter],
        strategy: &mut dyn RewriteStrategy,
        cap: usize,
    ) -> Option<Word> {
        let mut cur = w.to_vec();
        for _ in 0..=cap {
            let red = self.redexes(&cur);
            if red.is_empty() {
                return Some(cur);
            }
            let i = red[strategy.choose(&red)];
            cur = self.rewrite_at(&cur, i).expect("listed redex applies");
        }
        None
    }

    /// Deterministic PDA for the word problem. The stack holds the freely
    /// reduced free part; symbols directly above the bottom are marked so
    /// that emptiness is known after a pop. The state holds the current
    /// representative and an "empty stack" flag.
    pub fn wp_pda(&self) -> Pda {
        let nx = self.x.len();
        let ns = self.s.len();
        let mut m = Pda::new(self.sigma.clone());
        // stack symbol for (free letter y, marked)
        let mut sym = vec![[0usize; 2]; 2 * nx];
        for (y, pair) in sym.iter_mut().enumerate() {
            pair[0] = m.add_stack_symbol(self.sigma.name(y).to_string());
            pair[1] = m.add_stack_symbol(format!("{}*", self.sigma.name(y)));
        }
        let bottom = m.bottom;
        let mut all_syms = vec![bottom];
        all_syms.extend(sym.iter().flat_map(|p| p.iter().copied()));
        // main[r][empty]
        let mut main = vec![[0usize; 2]; ns];
        for (r, pair) in main.iter_mut().enumerate() {
            for e in 0..2 {
                pair[e] = if r == 0 && e == 1 { 0 } else { m.add_state() };
            }
        }
        m.set_final(main[0][1]);
        m.initial = main[0][1];

        // Moves that push-reduce `y` from `from` with the given top symbol.
        // Returns (pop, push, resulting empty flag).
        let push_reduce = |y: Letter, top: usize| -> (Vec<usize>, bool) {
            let inv = free_inverse(nx, y);
            if top == bottom {
                (vec![sym[y][1], bottom], false)
            } else if top == sym[inv][1] {
                (vec![], true)
            } else if top == sym[inv][0] {
                (vec![], false)
            } else {
                (vec![sym[y][0], top], false)
            }
        };

        for r in 0..ns {
            for a in self.sigma.letters() {
                let (x, s) = &self.table[r][a];
                for e in 0..2 {
                    let tops: Vec<usize> = if e == 1 {
                        vec![bottom]
                    } else {
                        all_syms.iter().copied().filter(|&z| z != bottom).collect()
                    };
                    if x.is_empty() {
                        for &z in &tops {
                            m.add_transition(main[r][e], Some(a), z, main[*s][e], &[z]);
                        }
                        continue;
                    }
                    // intermediate[i][e']: after feeding x[..i]
                    let mut inter: Vec<[usize; 2]> = Vec::new();
                    for _ in 1..x.len() {
                        inter.push([m.add_state(), m.add_state()]);
                    }
                    let target = |i: usize, e2: bool| -> usize {
                        if i == x.len() {
                            main[*s][usize::from(e2)]
                        } else {
                            inter[i - 1][usize::from(e2)]
                        }
                    };
                    for &z in &tops {
                        let (push, e2) = push_reduce(x[0], z);
                        m.add_transition(main[r][e], Some(a), z, target(1, e2), &push);
                    }
                    for i in 1..x.len() {
                        for e1 in 0..2 {
                            let tops: Vec<usize> = if e1 == 1 {
                                vec![bottom]
                            } else {
                                all_syms.iter().copied().filter(|&z| z != bottom).collect()
                            };
                            for &z in &tops {
                                let (push, e2) = push_reduce(x[i], z);
                                m.add_transition(
                                    inter[i - 1][e1],
                                    None,
                                    z,
                                    target(i + 1, e2),
                                    &push,
                                );
                            }
                        }
                    }
                }
            }
        }
        m
    }
}

fn free_inverse(nx: usize, a: Letter) -> Letter {
    if a < nx {
        a + nx
    } else {
        a - nx
    }
}

/// Chooses which redex to rewrite next.
pub trait RewriteStrategy {
    fn name(&self) -> &'static str;
    /// Index into `redexes` (positions in increasing order, never empty).
    fn choose(&mut self, redexes: &[usize]) -> usize;
}

pub struct Leftmost;

impl RewriteStrategy for Leftmost {
    fn name(&self) -> &'static str {
        "leftmost"
    }
    fn choose(&mut self, _: &[usize]) -> usize {
        0
    }
}

pub struct Rightmost;

impl RewriteStrategy for Rightmost {
    fn name(&self) -> &'static str {
        "rightmost"
    }
    fn choose(&mut self, redexes: &[usize]) -> usize {
        redexes.len() - 1
    }
}

pub struct RandomChoice(pub ChaCha8Rng);

impl RandomChoice {
    pub fn seeded(seed: u64) -> Self {
        RandomChoice(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl RewriteStrategy for RandomChoice {
    fn name(&self) -> &'static str {
        "random"
    }
    fn choose(&mut self, redexes: &[usize]) -> usize {
        self.0.gen_range(0..redexes.len())
    }
}

/// Names accepted by [`strategy_by_name`].
pub const STRATEGIES: [&str; 3] = ["leftmost", "rightmost", "random"];

pub fn strategy_by_name(name: &str, seed: u64) -> Option<Box<dyn RewriteStrategy>> {
    match name {
        "leftmost" => Some(Box::new(Leftmost)),
        "rightmost" => Some(Box::new(Rightmost)),
        "random" => Some(Box::new(RandomChoice::seeded(seed))),
        _ => None,
    }
}
