//! Formal-language machinery: finite automata, pushdown automata and
//! context-free grammars, plus the closure constructions used by the word
//! problem and verification procedures.

pub mod grammar;
pub mod nfa;
pub mod pda;

pub use grammar::{Grammar, GrammarFile, Sym};
pub use nfa::{Nfa, NfaFile};
pub use pda::{
    intersect_pda_nfa, inverse_hom, pda_empty, rational_member, Config, DpdaRunner, Pda, Transition,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error("alphabets of the operands differ")]
    AlphabetMismatch,
    #[error("grammar is not in Chomsky normal form")]
    NotCnf,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl From<crate::alphabet::AlphabetError> for LangError {
    fn from(e: crate::alphabet::AlphabetError) -> Self {
        match e {
            crate::alphabet::AlphabetError::UnknownSymbol(s) => LangError::UnknownSymbol(s),
            crate::alphabet::AlphabetError::Duplicate(s) => {
                LangError::Malformed(format!("duplicate symbol `{s}`"))
            }
        }
    }
}
