//! Named alphabets and words over them.

use std::collections::HashMap;
use std::fmt;

/// Index of a letter inside an [`Alphabet`].
pub type Letter = usize;

/// A word is a sequence of letter indices; the alphabet is kept alongside.
pub type Word = Vec<Letter>;

/// Suffix marking a formal inverse letter (`t^-` is the inverse of `t`).
pub const INVERSE_MARK: &str = "^-";

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate symbol `{0}`")]
    Duplicate(String),
}

/// An ordered finite alphabet with name lookup.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut a = Alphabet::new();
        for n in names {
            a.insert(n)?;
        }
        Ok(a)
    }

    pub fn insert(&mut self, name: impl Into<String>) -> Result<Letter, AlphabetError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(AlphabetError::Duplicate(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<Letter, AlphabetError> {
        self.get(name)
            .ok_or_else(|| AlphabetError::UnknownSymbol(name.to_string()))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.names.len()
    }

    /// Parses a whitespace separated word.
    pub fn parse_word(&self, text: &str) -> Result<Word, AlphabetError> {
        text.split_whitespace().map(|s| self.lookup(s)).collect()
    }

    pub fn parse_symbols<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Word, AlphabetError> {
        symbols.iter().map(|s| self.lookup(s.as_ref())).collect()
    }

    pub fn render(&self, w: &[Letter]) -> String {
        w.iter()
            .map(|&l| self.names[l].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Same set of names, regardless of order.
    pub fn same_letters(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.names.iter().all(|n| other.get(n).is_some())
    }
}

/// Formal inverse name of a generator name.
pub fn inverse_name(name: &str) -> String {
    match name.strip_suffix(INVERSE_MARK) {
        Some(base) => base.to_string(),
        None => format!("{name}{INVERSE_MARK}"),
    }
}

/// All words over `k` letters of length exactly `n`, in lexicographic order.
pub fn words_of_length(k: usize, n: usize) -> impl Iterator<Item = Word> {
    let total = if k == 0 {
        usize::from(n == 0)
    } else {
        k.pow(n as u32)
    };
    (0..total).map(move |mut code| {
        let mut w = vec![0; n];
        for slot in w.iter_mut().rev() {
            *slot = code % k.max(1);
            code /= k.max(1);
        }
        w
    })
}

/// All words of length at most `n`, shortlex order.
pub fn words_up_to(k: usize, n: usize) -> impl Iterator<Item = Word> {
    (0..=n).flat_map(move |len| words_of_length(k, len))
}
