use std::collections::BTreeSet;
use std::fmt;

use super::{AtomName, TtlError};

/// Propositions true at one instant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet(BTreeSet<AtomName>);

impl LabelSet {
    pub fn empty() -> Self {
        LabelSet(BTreeSet::new())
    }

    pub fn singleton(atom: AtomName) -> Self {
        let mut set = BTreeSet::new();
        set.insert(atom);
        LabelSet(set)
    }

    pub fn contains(&self, atom: &AtomName) -> bool {
        self.0.contains(atom)
    }

    pub fn insert(&mut self, atom: AtomName) -> bool {
        self.0.insert(atom)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &AtomName> {
        self.0.iter()
    }

    /// The only label of a set with at most one element.
    pub fn single(&self) -> Option<&AtomName> {
        if self.0.len() == 1 {
            self.0.iter().next()
        } else {
            None
        }
    }

    /// True when some label other than `atom` holds and `atom` does not.
    pub fn witnesses_negation_of(&self, atom: &AtomName) -> bool {
        !self.0.contains(atom) && !self.0.is_empty()
    }
}

impl FromIterator<AtomName> for LabelSet {
    fn from_iter<I: IntoIterator<Item = AtomName>>(iter: I) -> Self {
        LabelSet(iter.into_iter().collect())
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for atom in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            f.write_str(atom.as_str())?;
        }
        Ok(())
    }
}

/// A finite path: one label set per instant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Trace {
    steps: Vec<LabelSet>,
}

impl Trace {
    pub fn new(steps: Vec<LabelSet>) -> Self {
        Trace { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[LabelSet] {
        &self.steps
    }

    pub fn get(&self, j: usize) -> Option<&LabelSet> {
        self.steps.get(j)
    }

    pub fn push(&mut self, labels: LabelSet) {
        self.steps.push(labels);
    }

    /// Instants `i..=j`; empty when `i > j`. `j` is clamped to the last instant.
    pub fn subpath(&self, i: usize, j: usize) -> &[LabelSet] {
        if i > j || i >= self.steps.len() {
            return &[];
        }
        let end = j.min(self.steps.len() - 1);
        &self.steps[i..=end]
    }

    /// Reads the line format: one instant per line, comma-separated atoms or
    /// `-` for the empty set. Blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<Trace, TtlError> {
        let mut steps = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == "-" {
                steps.push(LabelSet::empty());
                continue;
            }
            let mut set = LabelSet::empty();
            for item in line.split(',') {
                let item = item.trim();
                let atom = AtomName::new(item).map_err(|_| TtlError::TraceFormat {
                    line: lineno + 1,
                    message: format!("invalid atom name {item:?}"),
                })?;
                set.insert(atom);
            }
            steps.push(set);
        }
        Ok(Trace { steps })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&step.to_string());
            out.push('\n');
        }
        out
    }
}

impl FromIterator<LabelSet> for Trace {
    fn from_iter<I: IntoIterator<Item = LabelSet>>(iter: I) -> Self {
        Trace {
            steps: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> LabelSet {
        names.iter().map(|n| AtomName::new(*n).unwrap()).collect()
    }

    #[test]
    fn subpath_bounds() {
        let t = Trace::new(vec![labels(&["a"]), labels(&["b"]), labels(&["c"])]);
        assert_eq!(t.subpath(0, 1), &[labels(&["a"]), labels(&["b"])]);
        assert_eq!(t.subpath(2, 2), &[labels(&["c"])]);
        assert!(t.subpath(2, 1).is_empty());
        assert!(t.subpath(3, 5).is_empty());
        assert_eq!(t.subpath(1, 9).len(), 2);
    }

    #[test]
    fn text_format() {
        let t = Trace::parse_text("wood\n-\niron, grass\n\n# done\n").unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.get(1).unwrap().is_empty());
        assert_eq!(t.get(2).unwrap(), &labels(&["grass", "iron"]));
        assert_eq!(t.to_text(), "wood\n-\ngrass,iron\n");
    }

    #[test]
    fn text_format_errors_carry_line() {
        let err = Trace::parse_text("wood\nIron\n").unwrap_err();
        assert!(matches!(err, TtlError::TraceFormat { line: 2, .. }));
    }
}
