use std::fmt;
use std::str::FromStr;

use super::GridError;
use crate::ttl::AtomName;

/// Index of an object in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId(u8);

pub const OBJECT_COUNT: usize = 26;

// Name and map-file glyph of every object, in catalog order. The six objects
// used by the complex instructions come first so that every test split
// contains them.
const OBJECTS: [(&str, char); OBJECT_COUNT] = [
    ("wood", 'w'),
    ("iron", 'i'),
    ("grass", 'g'),
    ("axe", 'a'),
    ("workbench", 'b'),
    ("toolshed", 't'),
    ("coal", 'c'),
    ("diamond", 'd'),
    ("emerald", 'e'),
    ("feather", 'f'),
    ("hay", 'h'),
    ("jade", 'j'),
    ("kelp", 'k'),
    ("leather", 'l'),
    ("mushroom", 'm'),
    ("nail", 'n'),
    ("obsidian", 'o'),
    ("plank", 'p'),
    ("quartz", 'q'),
    ("rope", 'r'),
    ("stone", 's'),
    ("urn", 'u'),
    ("vine", 'v'),
    ("xylem", 'x'),
    ("yarn", 'y'),
    ("zinc", 'z'),
];

impl ObjectId {
    pub fn new(index: usize) -> Option<Self> {
        (index < OBJECT_COUNT).then_some(ObjectId(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> &'static str {
        OBJECTS[self.index()].0
    }

    pub fn atom(self) -> AtomName {
        AtomName::new(self.name()).expect("catalog names are identifiers")
    }

    pub fn glyph(self) -> char {
        OBJECTS[self.index()].1
    }

    pub fn from_glyph(c: char) -> Option<Self> {
        OBJECTS
            .iter()
            .position(|(_, g)| *g == c)
            .map(|i| ObjectId(i as u8))
    }

    pub fn from_name(name: &str) -> Option<Self> {
        OBJECTS
            .iter()
            .position(|(n, _)| *n == name)
            .map(|i| ObjectId(i as u8))
    }

    pub fn from_atom(atom: &AtomName) -> Result<Self, GridError> {
        ObjectId::from_name(atom.as_str()).ok_or_else(|| GridError::UnknownObject(atom.clone()))
    }

    pub fn all() -> impl Iterator<Item = ObjectId> {
        (0..OBJECT_COUNT as u8).map(ObjectId)
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Training-set size presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitPreset {
    Small,
    Medium,
    Large,
}

impl SplitPreset {
    pub fn train_size(self) -> usize {
        match self {
            SplitPreset::Small => 6,
            SplitPreset::Medium => 10,
            SplitPreset::Large => 20,
        }
    }
}

impl FromStr for SplitPreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "small" => Ok(SplitPreset::Small),
            "medium" => Ok(SplitPreset::Medium),
            "large" => Ok(SplitPreset::Large),
            other => Err(format!(
                "unknown split {other:?} (expected small, medium or large)"
            )),
        }
    }
}

impl fmt::Display for SplitPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitPreset::Small => "small",
            SplitPreset::Medium => "medium",
            SplitPreset::Large => "large",
        })
    }
}

/// Partition of the catalog into training and test objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectCatalog {
    pub train: Vec<ObjectId>,
    pub test: Vec<ObjectId>,
}

impl ObjectCatalog {
    /// The last `train_size` objects train; the rest are held out.
    pub fn with_train_size(train_size: usize) -> Result<Self, GridError> {
        if train_size == 0 || train_size >= OBJECT_COUNT {
            return Err(GridError::InvalidSplit(train_size));
        }
        let cut = OBJECT_COUNT - train_size;
        Ok(ObjectCatalog {
            test: ObjectId::all().take(cut).collect(),
            train: ObjectId::all().skip(cut).collect(),
        })
    }

    pub fn preset(preset: SplitPreset) -> Self {
        ObjectCatalog::with_train_size(preset.train_size()).expect("presets are valid")
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        ObjectId::all()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn catalog_is_consistent() {
        let names: HashSet<_> = OBJECTS.iter().map(|(n, _)| *n).collect();
        let glyphs: HashSet<_> = OBJECTS.iter().map(|(_, g)| *g).collect();
        assert_eq!(names.len(), OBJECT_COUNT);
        assert_eq!(glyphs.len(), OBJECT_COUNT);
        for id in ObjectId::all() {
            assert!(AtomName::new(id.name()).is_ok());
            assert!(!matches!(id.glyph(), '0' | '1' | '@'));
            assert_eq!(ObjectId::from_glyph(id.glyph()), Some(id));
            assert_eq!(ObjectId::from_name(id.name()), Some(id));
        }
    }

    #[test]
    fn splits_partition_the_catalog() {
        for preset in [SplitPreset::Small, SplitPreset::Medium, SplitPreset::Large] {
            let cat = ObjectCatalog::preset(preset);
            assert_eq!(cat.train.len(), preset.train_size());
            let train: HashSet<_> = cat.train.iter().collect();
            let test: HashSet<_> = cat.test.iter().collect();
            assert!(train.is_disjoint(&test));
            assert_eq!(train.len() + test.len(), OBJECT_COUNT);
            for name in ["wood", "iron", "grass", "axe", "workbench", "toolshed"] {
                assert!(cat.test.contains(&ObjectId::from_name(name).unwrap()));
            }
        }
        assert!(ObjectCatalog::with_train_size(26).is_err());
        assert!(ObjectCatalog::with_train_size(0).is_err());
    }
}
