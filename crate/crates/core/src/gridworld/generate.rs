//! Seeded map generators.

use std::collections::VecDeque;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Action, Cell, GridError, GridMap, ObjectId, Tile, MAP_SIZE};
use crate::symbolic::{SubTask, TaskMatrix};
use crate::ttl::AtomName;

pub const MIN_OBJECTS: usize = 2;
pub const MAX_OBJECTS: usize = 8;
const INTERIOR_CELLS: usize = (MAP_SIZE - 2) * (MAP_SIZE - 2);
const MAX_LAYOUT_ATTEMPTS: usize = 500;

/// Objects a map must hold for one list of sub-tasks to be completed by an
/// agent that fulfils every negated step with whatever object is nearest.
///
/// Each positive atom gets one copy per occurrence, plus one per negated step
/// before its last occurrence (such a step may consume a copy). Negated steps
/// are counted in `witnesses`; they need one object each that is none of the
/// matrix atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Requirements {
    pub positives: Vec<(AtomName, usize)>,
    pub witnesses: usize,
}

impl Requirements {
    pub fn of_list(list: &[SubTask]) -> Self {
        let mut positives: Vec<(AtomName, usize)> = Vec::new();
        let mut witnesses = 0;
        for (i, st) in list.iter().enumerate() {
            match st {
                SubTask::Pos(a) => {
                    if !positives.iter().any(|(p, _)| p == a) {
                        let occurrences = list.iter().filter(|s| *s == st).count();
                        let last = list.iter().rposition(|s| s == st).unwrap_or(i);
                        let negs_before = list[..last]
                            .iter()
                            .filter(|s| matches!(s, SubTask::Neg(_)))
                            .count();
                        positives.push((a.clone(), occurrences + negs_before));
                    }
                }
                SubTask::Neg(_) => witnesses += 1,
                SubTask::PosChoice(..) => {}
            }
        }
        Requirements {
            positives,
            witnesses,
        }
    }

    pub fn total(&self) -> usize {
        self.positives.iter().map(|(_, n)| n).sum::<usize>() + self.witnesses
    }
}

/// A map on which some list of `matrix` can be completed.
///
/// One list is picked at random and its [`Requirements`] are placed; the
/// remaining slots up to `n_objects` hold distractors from `split` that are
/// not positive atoms of the matrix, so no alternative list can be started
/// without being finishable. Every object is reachable from the agent
/// without crossing another object.
pub fn generate_map(
    split: &[ObjectId],
    matrix: &TaskMatrix,
    n_objects: usize,
    seed: u64,
) -> Result<GridMap, GridError> {
    if !(MIN_OBJECTS..=MAX_OBJECTS).contains(&n_objects) {
        return Err(GridError::Infeasible(format!(
            "object count {n_objects} outside {MIN_OBJECTS}..={MAX_OBJECTS}"
        )));
    }
    if split.is_empty() {
        return Err(GridError::Infeasible("empty object split".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Some(list) = matrix.lists().choose(&mut rng) else {
        return Err(GridError::Infeasible("empty task matrix".into()));
    };
    let req = Requirements::of_list(list);
    if req.total() > n_objects {
        return Err(GridError::Infeasible(format!(
            "list needs {} objects, only {n_objects} allowed",
            req.total()
        )));
    }

    let matrix_atoms = matrix.atoms();
    let positive = matrix.positive_atoms();
    let witness_pool = pool(split, |o| !matrix_atoms.contains(&o.atom()));
    let distractor_pool = pool(split, |o| !positive.contains(&o.atom()));

    let mut objects = Vec::with_capacity(n_objects);
    for (atom, count) in &req.positives {
        let id = ObjectId::from_atom(atom)?;
        objects.extend(std::iter::repeat_n(id, *count));
    }
    for _ in 0..req.witnesses {
        let id = witness_pool
            .choose(&mut rng)
            .ok_or_else(|| GridError::Infeasible("no object can witness a negation".into()))?;
        objects.push(*id);
    }
    while objects.len() < n_objects {
        let id = distractor_pool
            .choose(&mut rng)
            .ok_or_else(|| GridError::Infeasible("no distractor objects available".into()))?;
        objects.push(*id);
    }
    layout(&mut rng, &objects)
}

// Prefers `split`, falling back to the whole catalog.
fn pool(split: &[ObjectId], keep: impl Fn(ObjectId) -> bool) -> Vec<ObjectId> {
    let from_split: Vec<ObjectId> = split.iter().copied().filter(|o| keep(*o)).collect();
    if !from_split.is_empty() {
        return from_split;
    }
    ObjectId::all().filter(|o| keep(*o)).collect()
}

/// Binary choice map: one valid and one decoy object.
pub fn generate_bcm(valid: ObjectId, decoy: ObjectId, seed: u64) -> Result<GridMap, GridError> {
    if valid == decoy {
        return Err(GridError::Infeasible(
            "valid and decoy objects must differ".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    layout(&mut rng, &[valid, decoy])
}

/// Which disjuncts of a two-way choice a training map contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChoiceVariant {
    FirstOnly,
    SecondOnly,
    Both,
}

impl ChoiceVariant {
    /// Rotation used while training on choices.
    pub fn rotation(index: usize) -> Self {
        [
            ChoiceVariant::FirstOnly,
            ChoiceVariant::SecondOnly,
            ChoiceVariant::Both,
        ][index % 3]
    }
}

/// Training map for the choice `first | second` holding one or both
/// disjuncts, topped up with distractors that are neither.
pub fn generate_choice_map(
    split: &[ObjectId],
    first: ObjectId,
    second: ObjectId,
    variant: ChoiceVariant,
    n_objects: usize,
    seed: u64,
) -> Result<GridMap, GridError> {
    if !(MIN_OBJECTS..=MAX_OBJECTS).contains(&n_objects) {
        return Err(GridError::Infeasible(format!(
            "object count {n_objects} out of range"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut objects = match variant {
        ChoiceVariant::FirstOnly => vec![first],
        ChoiceVariant::SecondOnly => vec![second],
        ChoiceVariant::Both => vec![first, second],
    };
    let distractors = pool(split, |o| o != first && o != second);
    while objects.len() < n_objects {
        objects.push(
            *distractors
                .choose(&mut rng)
                .expect("catalog has more than two objects"),
        );
    }
    layout(&mut rng, &objects)
}

/// Places the agent and `objects` on distinct interior cells, resampling
/// until every object borders the region the agent reaches through empty
/// cells.
fn layout<R: Rng + ?Sized>(rng: &mut R, objects: &[ObjectId]) -> Result<GridMap, GridError> {
    if objects.len() + 1 > INTERIOR_CELLS {
        return Err(GridError::Infeasible(format!(
            "{} objects do not fit",
            objects.len()
        )));
    }
    let mut cells: Vec<Cell> = Cell::interior().collect();
    let mut shuffled = objects.to_vec();
    for _ in 0..MAX_LAYOUT_ATTEMPTS {
        cells.shuffle(rng);
        shuffled.shuffle(rng);
        let mut map = GridMap::empty(cells[0])?;
        for (cell, object) in cells[1..].iter().zip(&shuffled) {
            map.place(*cell, *object)?;
        }
        if all_objects_reachable(&map) {
            return Ok(map);
        }
    }
    Err(GridError::Infeasible(
        "could not lay out a map with every object reachable".into(),
    ))
}

/// Whether every object is adjacent to a cell the agent can reach through
/// empty cells.
pub fn all_objects_reachable(map: &GridMap) -> bool {
    let mut seen = [[false; MAP_SIZE]; MAP_SIZE];
    let mut touched = [[false; MAP_SIZE]; MAP_SIZE];
    let mut queue = VecDeque::from([map.agent()]);
    seen[map.agent().row][map.agent().col] = true;
    while let Some(cell) = queue.pop_front() {
        for a in Action::ALL {
            let Some(next) = cell.moved(a) else { continue };
            match map.tile(next) {
                Tile::Empty if !seen[next.row][next.col] => {
                    seen[next.row][next.col] = true;
                    queue.push_back(next);
                }
                Tile::Object(_) => touched[next.row][next.col] = true,
                _ => {}
            }
        }
    }
    map.objects().iter().all(|(c, _)| touched[c.row][c.col])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridworld::{ObjectCatalog, SplitPreset};
    use crate::symbolic::extract;
    use crate::ttl::parse_ttl;

    fn id(n: &str) -> ObjectId {
        ObjectId::from_name(n).unwrap()
    }

    fn matrix(text: &str) -> TaskMatrix {
        extract(&parse_ttl(text).unwrap().expand_concurrent()).unwrap()
    }

    #[test]
    fn requirements_count_negated_steps() {
        let m = matrix("(workbench~ ; toolshed~) ; toolshed");
        let req = Requirements::of_list(&m.lists()[0]);
        assert_eq!(req.positives, vec![(AtomName::new("toolshed").unwrap(), 3)]);
        assert_eq!(req.witnesses, 2);
        let m = matrix("wood ; grass ; toolshed~");
        let req = Requirements::of_list(&m.lists()[0]);
        assert_eq!(req.total(), 3);
    }

    #[test]
    fn single_target_present() {
        let split = ObjectCatalog::preset(SplitPreset::Medium).train;
        let m = TaskMatrix::new(vec![vec![SubTask::Pos(AtomName::new("wood").unwrap())]]).unwrap();
        for seed in 0..100 {
            let map = generate_map(&split, &m, 2, seed).unwrap();
            assert_eq!(map.object_count(), 2);
            assert!(map.count_of(id("wood")) >= 1);
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let split = ObjectCatalog::preset(SplitPreset::Medium).test;
        let m = matrix("((wood ; grass) | (iron ; axe)) ; workbench ; toolshed~");
        assert_eq!(
            generate_map(&split, &m, 8, 5).unwrap(),
            generate_map(&split, &m, 8, 5).unwrap()
        );
        assert_eq!(
            generate_bcm(id("wood"), id("iron"), 3).unwrap(),
            generate_bcm(id("wood"), id("iron"), 3).unwrap()
        );
    }

    #[test]
    fn running_example_maps_support_a_branch() {
        let split = ObjectCatalog::preset(SplitPreset::Medium).test;
        let m = matrix("((wood ; grass) | (iron ; axe)) ; workbench ; toolshed~");
        for seed in 0..100 {
            let map = generate_map(&split, &m, 8, seed).unwrap();
            let has = |n: &str| map.count_of(id(n)) > 0;
            assert!((has("wood") && has("grass")) || (has("iron") && has("axe")));
            assert!(has("workbench"));
            assert!(map.objects().iter().any(|(_, o)| *o != id("toolshed")));
            assert!(all_objects_reachable(&map));
        }
    }

    #[test]
    fn infeasible_requests() {
        let split = ObjectCatalog::preset(SplitPreset::Medium).test;
        let m = matrix("a_missing");
        assert!(matches!(
            generate_map(&split, &m, 2, 0),
            Err(GridError::UnknownObject(_))
        ));
        let m = matrix("wood ; wood ; wood");
        assert!(matches!(
            generate_map(&split, &m, 2, 0),
            Err(GridError::Infeasible(_))
        ));
        assert!(matches!(
            generate_map(&split, &m, 9, 0),
            Err(GridError::Infeasible(_))
        ));
        assert!(matches!(
            generate_map(&split, &m, 1, 0),
            Err(GridError::Infeasible(_))
        ));
    }

    #[test]
    fn bcm_has_exactly_two_objects() {
        for seed in 0..50 {
            let map = generate_bcm(id("wood"), id("iron"), seed).unwrap();
            assert_eq!(map.object_count(), 2);
            assert_eq!(map.count_of(id("wood")), 1);
            assert_eq!(map.count_of(id("iron")), 1);
        }
        assert!(generate_bcm(id("wood"), id("wood"), 0).is_err());
    }

    #[test]
    fn choice_variants() {
        let split = ObjectCatalog::preset(SplitPreset::Medium).train;
        let (a, b) = (split[0], split[1]);
        let only_a = generate_choice_map(&split, a, b, ChoiceVariant::FirstOnly, 4, 1).unwrap();
        assert!(only_a.count_of(a) == 1 && only_a.count_of(b) == 0);
        let only_b = generate_choice_map(&split, a, b, ChoiceVariant::SecondOnly, 4, 1).unwrap();
        assert!(only_b.count_of(a) == 0 && only_b.count_of(b) == 1);
        let both = generate_choice_map(&split, a, b, ChoiceVariant::Both, 4, 1).unwrap();
        assert!(both.count_of(a) == 1 && both.count_of(b) == 1);
    }
}
