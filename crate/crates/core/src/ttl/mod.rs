//! Task Temporal Logic: atoms, formulas, concrete syntax and finite-trace
//! satisfaction.

mod atom;
mod formula;
mod generate;
mod parse;
mod semantics;
mod trace;

use std::collections::BTreeSet;

use thiserror::Error;

pub use atom::AtomName;
pub use formula::{FormulaKind, TtlFormula};
pub use generate::{random_formula, random_singleton_trace, random_trace, FormulaGenerator};
pub use parse::{parse_ttl, ParseError, ParseErrorKind};
pub use semantics::ttl_satisfies;
pub use trace::{LabelSet, Trace};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TtlError {
    #[error("invalid atom name {0:?}")]
    InvalidAtom(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("formula contains a concurrent node; expand it first")]
    ConcurrentNotExpanded,
    #[error("trace line {line}: {message}")]
    TraceFormat { line: usize, message: String },
}

/// All atoms of a formula.
pub fn atoms_of(f: &TtlFormula) -> BTreeSet<AtomName> {
    f.atoms()
}

/// An ordered set of proposition names.
///
/// Order matters where a disjunction over the set is spelled out.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<AtomName>);

impl Alphabet {
    pub fn new(atoms: impl IntoIterator<Item = AtomName>) -> Self {
        let mut out: Vec<AtomName> = Vec::new();
        for atom in atoms {
            if !out.contains(&atom) {
                out.push(atom);
            }
        }
        Alphabet(out)
    }

    /// `a`, `b`, `c`, ... (then `p26`, `p27`, ... past `z`).
    pub fn letters(n: usize) -> Self {
        Alphabet(
            (0..n)
                .map(|i| {
                    let name = if i < 26 {
                        ((b'a' + i as u8) as char).to_string()
                    } else {
                        format!("p{i}")
                    };
                    AtomName::new(name).expect("generated names are identifiers")
                })
                .collect(),
        )
    }

    pub fn parse_list(names: &[&str]) -> Result<Self, TtlError> {
        names
            .iter()
            .map(|n| AtomName::new(*n))
            .collect::<Result<Vec<_>, _>>()
            .map(Alphabet::new)
    }

    pub fn as_slice(&self) -> &[AtomName] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, AtomName> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, atom: &AtomName) -> bool {
        self.0.contains(atom)
    }

    /// Extends with atoms not yet present, keeping existing order.
    pub fn union(mut self, atoms: impl IntoIterator<Item = AtomName>) -> Self {
        for atom in atoms {
            if !self.0.contains(&atom) {
                self.0.push(atom);
            }
        }
        self
    }
}

impl FromIterator<AtomName> for Alphabet {
    fn from_iter<I: IntoIterator<Item = AtomName>>(iter: I) -> Self {
        Alphabet::new(iter)
    }
}

impl<'a> IntoIterator for &'a Alphabet {
    type Item = &'a AtomName;
    type IntoIter = std::slice::Iter<'a, AtomName>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
