//! Context-free grammars, Chomsky normal form and CYK.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter};

use super::pda::Pda;
use super::LangError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    T(Letter),
    V(usize),
}

#[derive(Debug, Clone)]
pub struct Grammar {
    pub variables: Vec<String>,
    pub terminals: Alphabet,
    pub prods: Vec<(usize, Vec<Sym>)>,
    pub start: usize,
}

impl Grammar {
    /// `|V| + |Σ| + Σ |rhs|`
    pub fn size(&self) -> usize {
        self.variables.len()
            + self.terminals.len()
            + self.prods.iter().map(|(_, r)| r.len()).sum::<usize>()
    }

    pub fn is_cnf(&self) -> bool {
        let start_in_rhs = self
            .prods
            .iter()
            .any(|(_, r)| r.contains(&Sym::V(self.start)));
        self.prods.iter().all(|(lhs, rhs)| match rhs.as_slice() {
            [] => *lhs == self.start && !start_in_rhs,
            [Sym::T(_)] => true,
            [Sym::V(_), Sym::V(_)] => true,
            _ => false,
        })
    }

    pub fn nullable(&self) -> Vec<bool> {
        let mut null = vec![false; self.variables.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for (lhs, rhs) in &self.prods {
                if !null[*lhs] && rhs.iter().all(|s| matches!(s, Sym::V(v) if null[*v])) {
                    null[*lhs] = true;
                    changed = true;
                }
            }
        }
        null
    }

    /// Variables deriving at least one terminal word.
    pub fn generating(&self) -> Vec<bool> {
        let mut gen = vec![false; self.variables.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for (lhs, rhs) in &self.prods {
                if !gen[*lhs]
                    && rhs.iter().all(|s| match s {
                        Sym::T(_) => true,
                        Sym::V(v) => gen[*v],
                    })
                {
                    gen[*lhs] = true;
                    changed = true;
                }
            }
        }
        gen
    }

    pub fn is_empty(&self) -> bool {
        !self.generating()[self.start]
    }

    fn fresh(&mut self, base: &str) -> usize {
        let mut name = base.to_string();
        let mut i = 0;
        let taken: HashSet<&str> = self.variables.iter().map(String::as_str).collect();
        while taken.contains(name.as_str()) {
            i += 1;
            name = format!("{base}{i}");
        }
        self.variables.push(name);
        self.variables.len() - 1
    }

    /// Chomsky normal form: START, TERM, BIN, DEL, UNIT, then removal of
    /// useless variables.
    pub fn to_cnf(&self) -> Grammar {
        let mut g = self.clone();
        // START
        if g.prods.iter().any(|(_, r)| r.contains(&Sym::V(g.start))) {
            let s0 = g.fresh("S0");
            g.prods.push((s0, vec![Sym::V(g.start)]));
            g.start = s0;
        }
        // TERM
        let mut term_var: HashMap<Letter, usize> = HashMap::new();
        let mut prods = std::mem::take(&mut g.prods);
        for (_, rhs) in prods.iter_mut() {
            if rhs.len() >= 2 {
                for s in rhs.iter_mut() {
                    if let Sym::T(a) = *s {
                        let v = match term_var.get(&a) {
                            Some(&v) => v,
                            None => {
                                let name = format!("T_{}", g.terminals.name(a));
                                let v = g.fresh(&name);
                                term_var.insert(a, v);
                                v
                            }
                        };
                        *s = Sym::V(v);
                    }
                }
            }
        }
        let mut term_prods: Vec<_> = term_var
            .iter()
            .map(|(&a, &v)| (v, vec![Sym::T(a)]))
            .collect();
        term_prods.sort();
        prods.extend(term_prods);
        // BIN
        let mut binned = Vec::new();
        for (lhs, rhs) in prods {
            if rhs.len() <= 2 {
                binned.push((lhs, rhs));
                continue;
            }
            let mut cur = lhs;
            for i in 0..rhs.len() - 2 {
                let base = format!("{}_{}", g.variables[lhs], i + 1);
                let next = g.fresh(&base);
                binned.push((cur, vec![rhs[i], Sym::V(next)]));
                cur = next;
            }
            binned.push((cur, rhs[rhs.len() - 2..].to_vec()));
        }
        g.prods = binned;
        // DEL
        let null = g.nullable();
        let mut del: BTreeSet<(usize, Vec<Sym>)> = BTreeSet::new();
        for (lhs, rhs) in &g.prods {
            let opts: Vec<usize> = rhs
                .iter()
                .enumerate()
                .filter(|(_, s)| matches!(s, Sym::V(v) if null[*v]))
                .map(|(i, _)| i)
                .collect();
            for mask in 0..(1usize << opts.len()) {
                let drop: HashSet<usize> = opts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask & (1 << j) != 0)
                    .map(|(_, &i)| i)
                    .collect();
                let body: Vec<Sym> = rhs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !drop.contains(i))
                    .map(|(_, &s)| s)
                    .collect();
                if !body.is_empty() {
                    del.insert((*lhs, body));
                }
            }
        }
        if null[g.start] {
            del.insert((g.start, vec![]));
        }
        // UNIT
        let n = g.variables.len();
        let mut unit = vec![vec![false; n]; n];
        for (a, row) in unit.iter_mut().enumerate() {
            row[a] = true;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for (lhs, rhs) in &del {
                if let [Sym::V(b)] = rhs.as_slice() {
                    for a in 0..n {
                        if unit[a][*lhs] && !unit[a][*b] {
                            unit[a][*b] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        let mut final_prods: BTreeSet<(usize, Vec<Sym>)> = BTreeSet::new();
        for (a, row) in unit.iter().enumerate() {
            for (lhs, rhs) in &del {
                if row[*lhs] && !matches!(rhs.as_slice(), [Sym::V(_)]) {
                    if rhs.is_empty() && a != g.start {
                        continue;
                    }
                    final_prods.insert((a, rhs.clone()));
                }
            }
        }
        g.prods = final_prods.into_iter().collect();
        g.remove_useless()
    }

    /// Drops non-generating and unreachable variables, renumbering the rest.
    pub fn remove_useless(&self) -> Grammar {
        let gen = self.generating();
        let prods: Vec<_> = self
            .prods
            .iter()
            .filter(|(l, r)| gen[*l] && r.iter().all(|s| !matches!(s, Sym::V(v) if !gen[*v])))
            .cloned()
            .collect();
        let mut reach = vec![false; self.variables.len()];
        reach[self.start] = true;
        let mut stack = vec![self.start];
        while let Some(v) = stack.pop() {
            for (l, r) in &prods {
                if *l == v {
                    for s in r {
                        if let Sym::V(u) = s {
                            if !reach[*u] {
                                reach[*u] = true;
                                stack.push(*u);
                            }
                        }
                    }
                }
            }
        }
        let mut remap = vec![usize::MAX; self.variables.len()];
        let mut variables = Vec::new();
        for (v, name) in self.variables.iter().enumerate() {
            if reach[v] {
                remap[v] = variables.len();
                variables.push(name.clone());
            }
        }
        let prods = prods
            .into_iter()
            .filter(|(l, _)| reach[*l])
            .map(|(l, r)| {
                let r = r
                    .into_iter()
                    .map(|s| match s {
                        Sym::V(v) => Sym::V(remap[v]),
                        t => t,
                    })
                    .collect();
                (remap[l], r)
            })
            .collect();
        Grammar {
            variables,
            terminals: self.terminals.clone(),
            prods,
            start: remap[self.start],
        }
    }

    /// CYK membership for a grammar in Chomsky normal form.
    pub fn cyk_member(&self, w: &[Letter]) -> Result<bool, LangError> {
        if !self.is_cnf() {
            return Err(LangError::NotCnf);
        }
        let n = w.len();
        if n == 0 {
            return Ok(self
                .prods
                .iter()
                .any(|(l, r)| *l == self.start && r.is_empty()));
        }
        let nv = self.variables.len();
        let mut unary: HashMap<Letter, Vec<usize>> = HashMap::new();
        let mut binary: Vec<(usize, usize, usize)> = Vec::new();
        for (l, r) in &self.prods {
            match r.as_slice() {
                [Sym::T(a)] => unary.entry(*a).or_default().push(*l),
                [Sym::V(b), Sym::V(c)] => binary.push((*l, *b, *c)),
                _ => {}
            }
        }
        // table[i][len-1][v]: w[i..i+len] derivable from v
        let mut table = vec![vec![vec![false; nv]; n]; n];
        for (i, a) in w.iter().enumerate() {
            for &v in unary.get(a).into_iter().flatten() {
                table[i][0][v] = true;
            }
        }
        for len in 2..=n {
            for i in 0..=n - len {
                for split in 1..len {
                    for &(l, b, c) in &binary {
                        if !table[i][len - 1][l]
                            && table[i][split - 1][b]
                            && table[i + split][len - split - 1][c]
                        {
                            table[i][len - 1][l] = true;
                        }
                    }
                }
            }
        }
        Ok(table[0][n - 1][self.start])
    }

    /// Standard expand/match PDA: `q0` pushes the start symbol, `q` expands
    /// variables and matches terminals, and seeing the bottom marker moves
    /// to the accepting state.
    pub fn to_pda(&self) -> Pda {
        let mut m = Pda::new(self.terminals.clone());
        let var_sym: Vec<usize> = self
            .variables
            .iter()
            .map(|v| m.add_stack_symbol(v.clone()))
            .collect();
        let term_sym: Vec<usize> = self
            .terminals
            .names()
            .to_vec()
            .into_iter()
            .map(|t| m.add_stack_symbol(format!("'{t}'")))
            .collect();
        let q = m.add_state();
        let acc = m.add_state();
        m.set_final(acc);
        let b = m.bottom;
        m.add_transition(0, None, b, q, &[var_sym[self.start], b]);
        for (lhs, rhs) in &self.prods {
            let push: Vec<usize> = rhs
                .iter()
                .map(|s| match s {
                    Sym::T(a) => term_sym[*a],
                    Sym::V(v) => var_sym[*v],
                })
                .collect();
            m.add_transition(q, None, var_sym[*lhs], q, &push);
        }
        for a in self.terminals.letters() {
            m.add_transition(q, Some(a), term_sym[a], q, &[]);
        }
        m.add_transition(q, None, b, acc, &[b]);
        m
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (l, r) in &self.prods {
            let body: Vec<&str> = r
                .iter()
                .map(|s| match s {
                    Sym::T(a) => self.terminals.name(*a),
                    Sym::V(v) => self.variables[*v].as_str(),
                })
                .collect();
            let body = if body.is_empty() {
                "1".to_string()
            } else {
                body.join(" ")
            };
            out.push_str(&format!("{} -> {}\n", self.variables[*l], body));
        }
        out
    }
}

/// On-disk grammar description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrammarFile {
    #[serde(rename = "V")]
    pub variables: Vec<String>,
    #[serde(rename = "Sigma")]
    pub terminals: Vec<String>,
    pub start: String,
    pub prods: Vec<ProdFile>,
    #[serde(default)]
    pub involution: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProdFile {
    pub lhs: String,
    pub rhs: Vec<String>,
}

impl GrammarFile {
    pub fn to_grammar(&self) -> Result<Grammar, LangError> {
        let terminals = Alphabet::from_names(self.terminals.iter().cloned())?;
        let vars: HashMap<&str, usize> = self
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        if vars.len() != self.variables.len() {
            return Err(LangError::Malformed("duplicate variable".into()));
        }
        if let Some(v) = self.variables.iter().find(|v| terminals.get(v).is_some()) {
            return Err(LangError::Malformed(format!(
                "`{v}` is both variable and terminal"
            )));
        }
        let var = |name: &str| {
            vars.get(name)
                .copied()
                .ok_or_else(|| LangError::UnknownSymbol(name.to_string()))
        };
        let mut prods = Vec::new();
        for p in &self.prods {
            let lhs = var(&p.lhs)?;
            let mut rhs = Vec::new();
            for s in &p.rhs {
                if let Some(v) = vars.get(s.as_str()) {
                    rhs.push(Sym::V(*v));
                } else if let Some(a) = terminals.get(s) {
                    rhs.push(Sym::T(a));
                } else if s != "1" {
                    return Err(LangError::UnknownSymbol(s.clone()));
                }
            }
            prods.push((lhs, rhs));
        }
        Ok(Grammar {
            variables: self.variables.clone(),
            terminals,
            prods,
            start: var(&self.start)?,
        })
    }

    pub fn from_grammar(g: &Grammar, involution: Vec<(String, String)>) -> Self {
        GrammarFile {
            variables: g.variables.clone(),
            terminals: g.terminals.names().to_vec(),
            start: g.variables[g.start].clone(),
            prods: g
                .prods
                .iter()
                .map(|(l, r)| ProdFile {
                    lhs: g.variables[*l].clone(),
                    rhs: r
                        .iter()
                        .map(|s| match s {
                            Sym::T(a) => g.terminals.name(*a).to_string(),
                            Sym::V(v) => g.variables[*v].clone(),
                        })
                        .collect(),
                })
                .collect(),
            involution,
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::alphabet::words_up_to;

    /// S → SS | a S a^- | a^- S a | 1
    pub(crate) fn wp_z_grammar() -> Grammar {
        let terminals = Alphabet::from_names(["a", "a^-"]).unwrap();
        let s = Sym::V(0);
        Grammar {
            variables: vec!["S".into()],
            terminals,
            prods: vec![
                (0, vec![s, s]),
                (0, vec![Sym::T(0), s, Sym::T(1)]),
                (0, vec![Sym::T(1), s, Sym::T(0)]),
                (0, vec![]),
            ],
            start: 0,
        }
    }

    fn balanced(w: &[Letter]) -> bool {
        w.iter()
            .map(|&a| if a == 0 { 1i64 } else { -1 })
            .sum::<i64>()
            == 0
    }

    #[test]
    fn trivial_grammar_is_cnf() {
        let g = Grammar {
            variables: vec!["S".into()],
            terminals: Alphabet::from_names(["a"]).unwrap(),
            prods: vec![(0, vec![])],
            start: 0,
        };
        assert!(g.is_cnf());
        let c = g.to_cnf();
        assert_eq!(c.prods, vec![(0, vec![])]);
        assert!(c.cyk_member(&[]).unwrap());
        assert!(!c.cyk_member(&[0]).unwrap());
    }

    #[test]
    fn unit_elimination() {
        let g = Grammar {
            variables: vec!["S".into(), "A".into()],
            terminals: Alphabet::from_names(["a"]).unwrap(),
            prods: vec![(0, vec![Sym::V(1)]), (1, vec![Sym::T(0)])],
            start: 0,
        };
        let c = g.to_cnf();
        assert_eq!(c.variables, vec!["S".to_string()]);
        assert_eq!(c.prods, vec![(0, vec![Sym::T(0)])]);
    }

    #[test]
    fn wp_z_cnf_matches_count_oracle() {
        let g = wp_z_grammar();
        assert!(!g.is_cnf());
        assert_eq!(g.cyk_member(&[0, 1]), Err(LangError::NotCnf));
        let c = g.to_cnf();
        assert!(c.is_cnf());
        assert!(c.cyk_member(&[0, 1]).unwrap());
        assert!(!c.cyk_member(&[0, 0]).unwrap());
        for w in words_up_to(2, 8) {
            assert_eq!(c.cyk_member(&w).unwrap(), balanced(&w), "{w:?}");
        }
    }

    #[test]
    fn grammar_pda_matches_cyk() {
        let g = wp_z_grammar();
        let c = g.to_cnf();
        let m = g.to_pda();
        for w in words_up_to(2, 6) {
            assert_eq!(m.accepts(&w), c.cyk_member(&w).unwrap(), "{w:?}");
        }
        assert!(m.accepts(&[0, 1, 0, 1]));
    }

    #[test]
    fn file_round_trip() {
        let g = wp_z_grammar();
        let f = GrammarFile::from_grammar(&g, vec![("a".into(), "a^-".into())]);
        let json = serde_json::to_string(&f).unwrap();
        let back: GrammarFile = serde_json::from_str(&json).unwrap();
        let g2 = back.to_grammar().unwrap();
        assert_eq!(g2.prods, g.prods);
    }
}
