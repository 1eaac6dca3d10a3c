//! Word-problem backends and the registry of named solvers.
//!
//! A group enters the library either as a virtually free presentation or
//! as a context-free grammar for its word problem together with the letter
//! involution. Both are exposed through [`GroupBackend`]. Word-problem
//! solvers are registered by name in a [`SolverRegistry`] and selected at
//! runtime.

use crate::alphabet::{Alphabet, Letter, Word};
use crate::lang::{Grammar, GrammarFile, LangError, Pda};
use crate::vfpres::{strategy_by_name, VfPresentation};

/// What the verification and synthesis procedures need from a group.
pub trait GroupBackend: Send + Sync {
    fn kind(&self) -> &'static str;
    /// The generating alphabet Σ.
    fn sigma(&self) -> &Alphabet;
    /// A letter representing the inverse of `a`.
    fn inverse_letter(&self, a: Letter) -> Letter;
    fn is_identity(&self, w: &[Letter]) -> bool;
    /// A PDA accepting exactly the words equal to 1.
    fn wp_pda(&self) -> Pda;

    fn involution(&self) -> Vec<Letter> {
        self.sigma()
            .letters()
            .map(|a| self.inverse_letter(a))
            .collect()
    }

    fn inverse_word(&self, w: &[Letter]) -> Word {
        w.iter().rev().map(|&a| self.inverse_letter(a)).collect()
    }

    /// `u =_G v`
    fn equal(&self, u: &[Letter], v: &[Letter]) -> bool {
        let mut w = u.to_vec();
        w.extend(self.inverse_word(v));
        self.is_identity(&w)
    }
}

impl GroupBackend for VfPresentation {
    fn kind(&self) -> &'static str {
        "presentation"
    }
    fn sigma(&self) -> &Alphabet {
        VfPresentation::sigma(self)
    }
    fn inverse_letter(&self, a: Letter) -> Letter {
        VfPresentation::inverse_letter(self, a)
    }
    fn is_identity(&self, w: &[Letter]) -> bool {
        self.word_problem(w)
    }
    fn wp_pda(&self) -> Pda {
        VfPresentation::wp_pda(self)
    }
}

/// A group given by a grammar for its word problem.
#[derive(Debug, Clone)]
pub struct GrammarGroup {
    grammar: Grammar,
    cnf: Grammar,
    involution: Vec<Letter>,
}

impl GrammarGroup {
    /// The involution must be total and self-inverse on the terminals.
    pub fn new(grammar: Grammar, pairs: &[(String, String)]) -> Result<Self, LangError> {
        let sigma = &grammar.terminals;
        let mut inv: Vec<Option<Letter>> = vec![None; sigma.len()];
        for (a, b) in pairs {
            let a = sigma.lookup(a)?;
            let b = sigma.lookup(b)?;
            for (x, y) in [(a, b), (b, a)] {
                match inv[x] {
                    Some(z) if z != y => {
                        return Err(LangError::Malformed(format!(
                            "involution maps `{}` twice",
                            sigma.name(x)
                        )))
                    }
                    _ => inv[x] = Some(y),
                }
            }
        }
        let involution = inv
            .iter()
            .enumerate()
            .map(|(a, i)| {
                i.ok_or_else(|| {
                    LangError::Malformed(format!("involution misses `{}`", sigma.name(a)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cnf = grammar.to_cnf();
        Ok(GrammarGroup {
            grammar,
            cnf,
            involution,
        })
    }

    pub fn from_file(file: &GrammarFile) -> Result<Self, LangError> {
        GrammarGroup::new(file.to_grammar()?, &file.involution)
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn cnf(&self) -> &Grammar {
        &self.cnf
    }
}

impl GroupBackend for GrammarGroup {
    fn kind(&self) -> &'static str {
        "grammar"
    }
    fn sigma(&self) -> &Alphabet {
        &self.grammar.terminals
    }
    fn inverse_letter(&self, a: Letter) -> Letter {
        self.involution[a]
    }
    fn is_identity(&self, w: &[Letter]) -> bool {
        self.cnf.cyk_member(w).expect("cnf")
    }
    fn wp_pda(&self) -> Pda {
        self.grammar.to_pda()
    }
}

/// A loaded group of either kind.
#[derive(Debug, Clone)]
pub enum GroupSource {
    Presentation(VfPresentation),
    Grammar(GrammarGroup),
}

impl GroupSource {
    pub fn backend(&self) -> &dyn GroupBackend {
        match self {
            GroupSource::Presentation(p) => p,
            GroupSource::Grammar(g) => g,
        }
    }

    pub fn presentation(&self) -> Option<&VfPresentation> {
        match self {
            GroupSource::Presentation(p) => Some(p),
            GroupSource::Grammar(_) => None,
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("solver `{solver}` does not support {kind} input")]
    Unsupported { solver: String, kind: &'static str },
    #[error("solver `{0}` gave up within its step bound")]
    GaveUp(String),
}

/// One way of deciding the word problem.
pub trait WpSolver: Send + Sync {
    fn name(&self) -> &str;
    fn supports(&self, group: &GroupSource) -> bool;
    fn solve(&self, group: &GroupSource, w: &[Letter]) -> Result<bool, SolveError>;
}

fn unsupported(solver: &str, group: &GroupSource) -> SolveError {
    SolveError::Unsupported {
        solver: solver.to_string(),
        kind: group.backend().kind(),
    }
}

/// Left-to-right normal form computation.
pub struct NormalFormSolver;

impl WpSolver for NormalFormSolver {
    fn name(&self) -> &str {
        "normal-form"
    }
    fn supports(&self, group: &GroupSource) -> bool {
        group.presentation().is_some()
    }
    fn solve(&self, group: &GroupSource, w: &[Letter]) -> Result<bool, SolveError> {
        let p = group
            .presentation()
            .ok_or_else(|| unsupported(self.name(), group))?;
        Ok(p.word_problem(w))
    }
}

/// Runs the deterministic word-problem PDA.
pub struct DpdaSolver;

impl WpSolver for DpdaSolver {
    fn name(&self) -> &str {
        "dpda"
    }
    fn supports(&self, group: &GroupSource) -> bool {
        group.presentation().is_some()
    }
    fn solve(&self, group: &GroupSource, w: &[Letter]) -> Result<bool, SolveError> {
        let p = group
            .presentation()
            .ok_or_else(|| unsupported(self.name(), group))?;
        let bound = (w.len() + 1) * (p.max_rule_len() + 2) + 16;
        p.wp_pda()
            .run_deterministic(w, bound)
            .ok_or_else(|| SolveError::GaveUp(self.name().to_string()))
    }
}

/// Rewriting with a named redex-selection strategy.
pub struct RewriteSolver {
    name: String,
    strategy: &'static str,
    seed: u64,
}

impl WpSolver for RewriteSolver {
    fn name(&self) -> &str {
        &self.name
    }
    fn supports(&self, group: &GroupSource) -> bool {
        group.presentation().is_some()
    }
    fn solve(&self, group: &GroupSource, w: &[Letter]) -> Result<bool, SolveError> {
        let p = group
            .presentation()
            .ok_or_else(|| unsupported(self.name(), group))?;
        let mut strategy = strategy_by_name(self.strategy, self.seed).expect("registered strategy");
        let cap = 64 + 8 * (w.len() + 1) * (w.len() + 1) * (p.max_rule_len() + 1);
        p.rewrite_to_normal(w, strategy.as_mut(), cap)
            .map(|nf| nf.is_empty())
            .ok_or_else(|| SolveError::GaveUp(self.name.clone()))
    }
}

/// CYK on the Chomsky normal form of a word-problem grammar.
pub struct CykSolver;

impl WpSolver for CykSolver {
    fn name(&self) -> &str {
        "cyk"
    }
    fn supports(&self, group: &GroupSource) -> bool {
        matches!(group, GroupSource::Grammar(_))
    }
    fn solve(&self, group: &GroupSource, w: &[Letter]) -> Result<bool, SolveError> {
        match group {
            GroupSource::Grammar(g) => Ok(g.is_identity(w)),
            _ => Err(unsupported(self.name(), group)),
        }
    }
}

/// Exact membership in the language of the word-problem PDA via emptiness
/// of its product with a one-word automaton. Works for both input kinds.
pub struct PdaSolver;

impl WpSolver for PdaSolver {
    fn name(&self) -> &str {
        "pda"
    }
    fn supports(&self, _: &GroupSource) -> bool {
        true
    }
    fn solve(&self, group: &GroupSource, w: &[Letter]) -> Result<bool, SolveError> {
        Ok(group.backend().wp_pda().accepts(w))
    }
}

type Factory = Box<dyn Fn(u64) -> Box<dyn WpSolver> + Send + Sync>;

/// Word-problem solvers by name.
pub struct SolverRegistry {
    entries: Vec<(String, Factory)>,
}

impl Default for SolverRegistry {
    fn default() -> Self {
        let mut r = SolverRegistry {
            entries: Vec::new(),
        };
        r.register("normal-form", Box::new(|_| Box::new(NormalFormSolver)));
        r.register("dpda", Box::new(|_| Box::new(DpdaSolver)));
        for strategy in crate::vfpres::STRATEGIES {
            r.register(
                &format!("rewrite-{strategy}"),
                Box::new(move |seed| {
                    Box::new(RewriteSolver {
                        name: format!("rewrite-{strategy}"),
                        strategy,
                        seed,
                    })
                }),
            );
        }
        r.register("cyk", Box::new(|_| Box::new(CykSolver)));
        r.register("pda", Box::new(|_| Box::new(PdaSolver)));
        r
    }
}

impl SolverRegistry {
    /// Registers a solver; a later registration under the same name wins.
    pub fn register(&mut self, name: &str, factory: Factory) {
        self.entries.retain(|(n, _)| n != name);
        self.entries.push((name.to_string(), factory));
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn get(&self, name: &str, seed: u64) -> Option<Box<dyn WpSolver>> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f(seed))
    }

    /// The first registered solver that supports `group`.
    pub fn default_for(&self, group: &GroupSource, seed: u64) -> Option<Box<dyn WpSolver>> {
        self.entries
            .iter()
            .map(|(_, f)| f(seed))
            .find(|s| s.supports(group))
    }
}

/// Whether `inv` is a self-inverse permutation of the letters.
pub fn check_involution(inv: &[Letter]) -> bool {
    inv.iter()
        .enumerate()
        .all(|(a, &b)| b < inv.len() && inv[b] == a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::words_up_to;
    use crate::lang::grammar::tests::wp_z_grammar;
    use crate::vfpres::tests::dinf;

    #[test]
    fn registry_solvers_agree_on_dinf() {
        let g = GroupSource::Presentation(dinf());
        let reg = SolverRegistry::default();
        for name in reg.names() {
            let s = reg.get(name, 3).unwrap();
            if !s.supports(&g) {
                assert!(s.solve(&g, &[]).is_err());
                continue;
            }
            let words: Vec<_> = words_up_to(4, if name == "pda" { 3 } else { 5 }).collect();
            for w in words {
                assert_eq!(
                    s.solve(&g, &w).unwrap(),
                    dinf().word_problem(&w),
                    "{name} {w:?}"
                );
            }
        }
    }

    #[test]
    fn grammar_group() {
        let g = GrammarGroup::new(wp_z_grammar(), &[("a".into(), "a^-".into())]).unwrap();
        assert!(check_involution(&g.involution()));
        assert!(g.is_identity(&[0, 1, 1, 0]));
        assert!(!g.is_identity(&[0]));
        assert!(g.equal(&[0, 0, 1], &[0]));
        let src = GroupSource::Grammar(g);
        let reg = SolverRegistry::default();
        assert_eq!(reg.default_for(&src, 0).unwrap().name(), "cyk");
        assert!(reg.get("pda", 0).unwrap().solve(&src, &[1, 0]).unwrap());
        assert!(GrammarGroup::new(wp_z_grammar(), &[]).is_err());
    }
}
