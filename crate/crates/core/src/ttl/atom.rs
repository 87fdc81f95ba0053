use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TtlError;

/// Name of an atomic task.
///
/// The same string also names the fulfilment proposition of the task, so the
/// labelling of a trace is expressed directly in terms of atom names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AtomName(String);

impl AtomName {
    pub fn new(name: impl Into<String>) -> Result<Self, TtlError> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(AtomName(name))
        } else {
            Err(TtlError::InvalidAtom(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// `[a-z_][a-z0-9_]*`
pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl fmt::Display for AtomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for AtomName {
    type Err = TtlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AtomName::new(s)
    }
}

impl TryFrom<String> for AtomName {
    type Error = TtlError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        AtomName::new(value)
    }
}

impl From<AtomName> for String {
    fn from(value: AtomName) -> Self {
        value.0
    }
}

impl AsRef<str> for AtomName {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_identifiers() {
        for ok in ["wood", "use_workbench", "_x", "a1_2"] {
            assert!(AtomName::new(ok).is_ok(), "{ok}");
        }
    }

    #[test]
    fn rejects_non_identifiers() {
        for bad in ["", "Wood", "1a", "a-b", "a b", "wood~", "∪"] {
            assert!(AtomName::new(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn equality_is_string_equality() {
        assert_eq!(AtomName::new("wood").unwrap(), "wood".parse().unwrap());
        assert_ne!(
            AtomName::new("wood").unwrap(),
            AtomName::new("iron").unwrap()
        );
    }
}
