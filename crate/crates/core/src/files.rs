//! Loading inputs from JSON files.
//!
//! A group file holds either a presentation (keys `X`, `S`, `rules`) or a
//! grammar for the word problem (keys `V`, `Sigma`, `start`, `prods`,
//! `involution`); the kind is detected from the keys.

use std::path::{Path, PathBuf};

use crate::alphabet::Alphabet;
use crate::backend::{GrammarGroup, GroupSource};
use crate::fingroup::FiniteGroupTable;
use crate::gog::{GogError, GogFile, GraphOfGroups};
use crate::lang::{GrammarFile, LangError, Nfa, NfaFile};
use crate::synth::{load_catalog, CatalogEntry, SynthError};
use crate::verify::{GogHom, HomError, HomFile};
use crate::vfpres::{PresentationError, RawPresentation, VfPresentation};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: neither a presentation (X, S, rules) nor a grammar (V, Sigma, start, prods)")]
    UnknownKind { path: PathBuf },
    #[error("{path}: {source}")]
    Presentation {
        path: PathBuf,
        source: PresentationError,
    },
    #[error("{path}: {source}")]
    Lang { path: PathBuf, source: LangError },
    #[error("{path}: {source}")]
    Gog { path: PathBuf, source: GogError },
    #[error("{path}: {source}")]
    Hom { path: PathBuf, source: HomError },
    #[error("{path}: {source}")]
    Catalog { path: PathBuf, source: SynthError },
}

fn read_json(path: &Path) -> Result<serde_json::Value, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| LoadError::Json {
        path: path.into(),
        source,
    })
}

fn parse<T: serde::de::DeserializeOwned>(
    path: &Path,
    v: serde_json::Value,
) -> Result<T, LoadError> {
    serde_json::from_value(v).map_err(|source| LoadError::Json {
        path: path.into(),
        source,
    })
}

pub fn group_from_value(path: &Path, v: serde_json::Value) -> Result<GroupSource, LoadError> {
    let has = |k: &str| v.get(k).is_some();
    if has("X") || has("S") {
        let raw: RawPresentation = parse(path, v)?;
        let p = VfPresentation::validate(&raw).map_err(|source| LoadError::Presentation {
            path: path.into(),
            source,
        })?;
        Ok(GroupSource::Presentation(p))
    } else if has("V") {
        let file: GrammarFile = parse(path, v)?;
        let g = GrammarGroup::from_file(&file).map_err(|source| LoadError::Lang {
            path: path.into(),
            source,
        })?;
        Ok(GroupSource::Grammar(g))
    } else {
        Err(LoadError::UnknownKind { path: path.into() })
    }
}

pub fn load_group(path: &Path) -> Result<GroupSource, LoadError> {
    group_from_value(path, read_json(path)?)
}

/// Loads a file that must hold a presentation.
pub fn load_presentation(path: &Path) -> Result<VfPresentation, LoadError> {
    match load_group(path)? {
        GroupSource::Presentation(p) => Ok(p),
        GroupSource::Grammar(_) => Err(LoadError::UnknownKind { path: path.into() }),
    }
}

pub fn load_grammar_file(path: &Path) -> Result<GrammarFile, LoadError> {
    parse(path, read_json(path)?)
}

pub fn load_gog(path: &Path) -> Result<GraphOfGroups, LoadError> {
    let file: GogFile = parse(path, read_json(path)?)?;
    file.build().map_err(|source| LoadError::Gog {
        path: path.into(),
        source,
    })
}

pub fn load_hom(path: &Path, g: &GraphOfGroups, sigma: &Alphabet) -> Result<GogHom, LoadError> {
    let file: HomFile = parse(path, read_json(path)?)?;
    file.resolve(g, sigma).map_err(|source| LoadError::Hom {
        path: path.into(),
        source,
    })
}

pub fn load_nfa(path: &Path, sigma: &Alphabet) -> Result<Nfa, LoadError> {
    let file: NfaFile = parse(path, read_json(path)?)?;
    file.to_nfa(sigma).map_err(|source| LoadError::Lang {
        path: path.into(),
        source,
    })
}

pub fn load_catalog_file(path: &Path) -> Result<Vec<FiniteGroupTable>, LoadError> {
    let entries: Vec<CatalogEntry> = parse(path, read_json(path)?)?;
    load_catalog(&entries).map_err(|source| LoadError::Catalog {
        path: path.into(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../data")
            .join(name)
    }

    #[test]
    fn shipped_groups_load() {
        for name in ["trivial", "z", "f2", "z2", "dinf", "z2z2z2", "z2z3"] {
            let g = load_group(&data(&format!("{name}.json"))).unwrap();
            assert!(g.presentation().is_some(), "{name}");
        }
        let g = load_group(&data("wpz-grammar.json")).unwrap();
        assert_eq!(g.backend().kind(), "grammar");
    }

    #[test]
    fn sizes() {
        let size = |n: &str| load_presentation(&data(n)).unwrap().size();
        assert_eq!(size("dinf.json"), 24);
        assert_eq!(size("z2.json"), 8);
        assert_eq!(size("z2z2z2.json"), 32);
    }

    #[test]
    fn unknown_kind() {
        let err = group_from_value(Path::new("x"), serde_json::json!({"foo": 1})).unwrap_err();
        assert!(matches!(err, LoadError::UnknownKind { .. }));
    }
}
